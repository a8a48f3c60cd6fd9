//! C interface to `smallgen`.
//!
//! Every fallible function returns a [`SmallgenStatus`] and writes results
//! through out-pointers. Objects cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Strings returned
//! to the caller are released with [`smallgen_string_free`]. The message for
//! the last failure on the calling thread is available from
//! [`smallgen_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use smallgen::cli::parse_field_spec;
use smallgen::exactalg::{IntPoly, RealEnclosure};
use smallgen::heights::{height_algebraic, LogHeight};
use smallgen::northcott::{delta, EnumerationBudget};
use smallgen::numfield::{field_discriminant, splits_completely, NumberField};
use smallgen::primes::{pi_qa, APSpec};
use smallgen::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmallgenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    DegreeTooSmall = 10,
    ZeroPolynomial = 11,
    NotPrime = 12,
    NotSquarefree = 13,
    Reducible = 14,
    VanishesModP = 15,
    DivisionByZero = 16,
    FieldMismatch = 17,
    PrecisionExhausted = 18,
    AmbiguousFactor = 19,
    Undecided = 20,
    InvalidArgument = 21,
    NotSquarefreeInteger = 22,
    NotCoprime = 23,
    Precondition = 24,
    Consistency = 25,
    Parse = 26,
    Io = 27,
}

impl From<&Error> for SmallgenStatus {
    fn from(e: &Error) -> Self {
        use SmallgenStatus::*;
        match e.code() {
            10 => DegreeTooSmall,
            11 => ZeroPolynomial,
            12 => NotPrime,
            13 => NotSquarefree,
            14 => Reducible,
            15 => VanishesModP,
            16 => DivisionByZero,
            17 => FieldMismatch,
            18 => PrecisionExhausted,
            19 => AmbiguousFactor,
            20 => Undecided,
            21 => InvalidArgument,
            22 => NotSquarefreeInteger,
            23 => NotCoprime,
            24 => Precondition,
            25 => Consistency,
            26 => Parse,
            _ => Io,
        }
    }
}

/// A number field.
pub struct SmallgenField {
    inner: Arc<NumberField>,
}

/// The height of an algebraic number.
pub struct SmallgenHeight {
    inner: LogHeight,
    exhaustive: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), SmallgenStatus>) -> SmallgenStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SmallgenStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            SmallgenStatus::Panic
        }
    }
}

fn fail(e: Error) -> SmallgenStatus {
    let s = SmallgenStatus::from(&e);
    set_error(e.to_string());
    s
}

fn null() -> SmallgenStatus {
    set_error("null pointer argument".into());
    SmallgenStatus::NullPointer
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

unsafe fn coeff_poly(coeffs: *const i64, len: usize) -> Result<IntPoly, SmallgenStatus> {
    if coeffs.is_null() {
        return Err(null());
    }
    let c = std::slice::from_raw_parts(coeffs, len);
    let f = IntPoly::from_i64s(c);
    if f.is_zero() {
        return Err(fail(Error::ZeroPolynomial));
    }
    Ok(f)
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn smallgen_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the last failure on this thread, or NULL. The pointer stays
/// valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn smallgen_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn smallgen_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Field defined by an irreducible polynomial with `len` coefficients,
/// constant term first.
///
/// # Safety
/// `coeffs` must point to `len` integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_field_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut SmallgenField,
) -> SmallgenStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let f = coeff_poly(coeffs, len)?;
        let k = NumberField::new(&f).map_err(fail)?;
        *out = Box::into_raw(Box::new(SmallgenField { inner: k }));
        Ok(())
    })
}

/// Field described by a JSON spec document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_field_from_spec(
    json: *const c_char,
    out: *mut *mut SmallgenField,
) -> SmallgenStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| {
            set_error("spec is not valid UTF-8".into());
            SmallgenStatus::InvalidUtf8
        })?;
        let spec = parse_field_spec(text).map_err(fail)?;
        let f = spec.polynomial().map_err(fail)?;
        let k = NumberField::new(&f).map_err(fail)?;
        *out = Box::into_raw(Box::new(SmallgenField { inner: k }));
        Ok(())
    })
}

/// # Safety
/// `field` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn smallgen_field_free(field: *mut SmallgenField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_field_degree(
    field: *const SmallgenField,
    out: *mut usize,
) -> SmallgenStatus {
    guard(|| {
        let (Some(k), false) = (field.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = k.inner.degree();
        Ok(())
    })
}

/// Field discriminant as a decimal string. `exact` is false when only the
/// value up to squares of some primes could be certified.
///
/// # Safety
/// `field` must be a live handle; `out` and `exact` must be writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_field_discriminant(
    field: *const SmallgenField,
    out: *mut *mut c_char,
    exact: *mut bool,
) -> SmallgenStatus {
    guard(|| {
        let (Some(k), false, false) = (field.as_ref(), out.is_null(), exact.is_null()) else {
            return Err(null());
        };
        let d = field_discriminant(&k.inner);
        *exact = d.is_exact();
        *out = into_c_string(d.value.to_string());
        Ok(())
    })
}

/// Whether the prime `p` splits completely in the field.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_splits_completely(
    field: *const SmallgenField,
    p: u64,
    out: *mut bool,
) -> SmallgenStatus {
    guard(|| {
        let (Some(k), false) = (field.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = splits_completely(&k.inner, p).map_err(fail)?;
        Ok(())
    })
}

/// Smallest height of a generator of the field, searched within the given
/// candidate and time budget.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_delta(
    field: *const SmallgenField,
    max_candidates: u64,
    max_seconds: f64,
    out: *mut *mut SmallgenHeight,
) -> SmallgenStatus {
    guard(|| {
        let (Some(k), false) = (field.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let budget = EnumerationBudget {
            max_candidates,
            max_seconds,
            ..EnumerationBudget::default()
        };
        let cert = delta(&k.inner, &budget).map_err(fail)?;
        *out = Box::into_raw(Box::new(SmallgenHeight {
            inner: cert.height,
            exhaustive: cert.exhaustive,
        }));
        Ok(())
    })
}

/// Height of a root of an irreducible polynomial.
///
/// # Safety
/// `coeffs` must point to `len` integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_height_from_coeffs(
    coeffs: *const i64,
    len: usize,
    out: *mut *mut SmallgenHeight,
) -> SmallgenStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let f = coeff_poly(coeffs, len)?;
        let h = height_algebraic(&f).map_err(fail)?;
        *out = Box::into_raw(Box::new(SmallgenHeight {
            inner: h,
            exhaustive: true,
        }));
        Ok(())
    })
}

/// # Safety
/// `height` must be NULL or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn smallgen_height_free(height: *mut SmallgenHeight) {
    if !height.is_null() {
        drop(Box::from_raw(height));
    }
}

/// Lower and upper bounds on the height, certified to `bits` bits and
/// rounded outward to doubles.
///
/// # Safety
/// `height` must be a live handle; `lo` and `hi` must be writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_height_bounds(
    height: *const SmallgenHeight,
    bits: u32,
    lo: *mut f64,
    hi: *mut f64,
) -> SmallgenStatus {
    guard(|| {
        let (Some(h), false, false) = (height.as_ref(), lo.is_null(), hi.is_null()) else {
            return Err(null());
        };
        let v = h.inner.refined(bits).map_err(fail)?.value(bits);
        let l = RealEnclosure::exact(v.lo().clone()).to_f64();
        let u = RealEnclosure::exact(v.hi().clone()).to_f64();
        *lo = l.next_down();
        *hi = u.next_up();
        Ok(())
    })
}

/// Exact form of the height such as `5^(1/2)`, or a decimal.
///
/// # Safety
/// `height` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_height_to_string(
    height: *const SmallgenHeight,
    out: *mut *mut c_char,
) -> SmallgenStatus {
    guard(|| {
        let (Some(h), false) = (height.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = into_c_string(h.inner.to_string());
        Ok(())
    })
}

/// Whether the search that produced this height ran to completion.
///
/// # Safety
/// `height` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn smallgen_height_is_exhaustive(height: *const SmallgenHeight) -> bool {
    height.as_ref().is_some_and(|h| h.exhaustive)
}

/// Number of primes `p ≤ x` with `p ≡ a (mod q)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn smallgen_pi_qa(x: u64, q: u64, a: u64, out: *mut u64) -> SmallgenStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let spec = APSpec::new(q, a).map_err(fail)?;
        *out = pi_qa(x, &spec);
        Ok(())
    })
}
