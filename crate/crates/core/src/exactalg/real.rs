//! Rigorous real enclosures with rational endpoints, and outward-rounded
//! logarithms, exponentials and roots.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default working precision in bits for transcendental functions.
pub const DEFAULT_BITS: u32 = 96;

/// Closed interval `[lo, hi]` known to contain a real number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealEnclosure {
    lo: BigRational,
    hi: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn pow2(k: u32) -> BigInt {
    BigInt::one() << k
}

/// `floor(q * 2^w)`
fn floor_scaled(q: &BigRational, w: u32) -> BigInt {
    (q.numer() << w).div_floor(q.denom())
}

/// `ceil(q * 2^w)`
fn ceil_scaled(q: &BigRational, w: u32) -> BigInt {
    -((-(q.numer() << w)).div_floor(q.denom()))
}

fn from_scaled(a: BigInt, w: u32) -> BigRational {
    BigRational::new(a, pow2(w))
}

/// Integer interval `[lo, hi] / 2^W` used inside the transcendental kernels.
#[derive(Clone, Debug)]
struct Fx {
    lo: BigInt,
    hi: BigInt,
}

impl Fx {
    fn point(a: BigInt) -> Fx {
        Fx {
            lo: a.clone(),
            hi: a,
        }
    }

    fn from_rational(q: &BigRational, w: u32) -> Fx {
        Fx {
            lo: floor_scaled(q, w),
            hi: ceil_scaled(q, w),
        }
    }

    fn add(&self, o: &Fx) -> Fx {
        Fx {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn sub(&self, o: &Fx) -> Fx {
        Fx {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    fn mul(&self, o: &Fx, w: u32) -> Fx {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = c.iter().min().unwrap();
        let max = c.iter().max().unwrap();
        let d = pow2(w);
        Fx {
            lo: min.div_floor(&d),
            hi: -((-max).div_floor(&d)),
        }
    }

    fn div_int(&self, k: &BigInt) -> Fx {
        debug_assert!(k.is_positive());
        Fx {
            lo: self.lo.div_floor(k),
            hi: -((-&self.hi).div_floor(k)),
        }
    }

    fn widen(&self, ulps: i64) -> Fx {
        Fx {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
        }
    }

    fn shl(&self, k: i64) -> Fx {
        if k >= 0 {
            Fx {
                lo: &self.lo << k as usize,
                hi: &self.hi << k as usize,
            }
        } else {
            let d = pow2((-k) as u32);
            Fx {
                lo: self.lo.div_floor(&d),
                hi: -((-&self.hi).div_floor(&d)),
            }
        }
    }

    fn to_enclosure(&self, w: u32) -> RealEnclosure {
        RealEnclosure {
            lo: from_scaled(self.lo.clone(), w),
            hi: from_scaled(self.hi.clone(), w),
        }
    }
}

/// `atanh(z)` for `|z| ≤ 1/3` by the odd power series with a tail bound.
fn atanh_fx(z: &BigRational, w: u32) -> Fx {
    let zf = Fx::from_rational(z, w);
    let z2 = zf.mul(&zf, w);
    let terms = w / 3 + 4;
    let mut power = zf.clone();
    let mut sum = zf.clone();
    for k in 1..terms {
        power = power.mul(&z2, w);
        sum = sum.add(&power.div_int(&BigInt::from(2 * k + 1)));
    }
    // |tail| ≤ |z|^(2N+1) / (1 - z^2) < 2^-W
    sum.widen(2)
}

fn ln2_fx(w: u32) -> Fx {
    let t = atanh_fx(&BigRational::new(BigInt::one(), BigInt::from(3)), w);
    t.add(&t)
}

/// `ln(x)` for rational `x > 0`.
fn ln_fx(x: &BigRational, w: u32) -> Fx {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    // x = m 2^e with m in [3/4, 3/2)
    let mut e = x.numer().bits() as i64 - x.denom().bits() as i64;
    let scale = |e: i64| -> BigRational {
        if e >= 0 {
            x / BigRational::from_integer(pow2(e as u32))
        } else {
            x * BigRational::from_integer(pow2((-e) as u32))
        }
    };
    let three_quarters = BigRational::new(BigInt::from(3), BigInt::from(4));
    let three_halves = BigRational::new(BigInt::from(3), BigInt::from(2));
    let mut m = scale(e);
    while m < three_quarters {
        e -= 1;
        m = scale(e);
    }
    while m >= three_halves {
        e += 1;
        m = scale(e);
    }
    let one = BigRational::one();
    let z = (&m - &one) / (&m + &one);
    let a = atanh_fx(&z, w);
    let mut out = a.add(&a);
    if e != 0 {
        let l2 = ln2_fx(w);
        let eb = BigInt::from(e);
        let l2e = if e > 0 {
            Fx {
                lo: &l2.lo * &eb,
                hi: &l2.hi * &eb,
            }
        } else {
            Fx {
                lo: &l2.hi * &eb,
                hi: &l2.lo * &eb,
            }
        };
        out = out.add(&l2e);
    }
    out
}

/// `exp(x)` for rational `x`.
fn exp_fx(x: &BigRational, w: u32) -> Fx {
    let approx = x.to_f64().unwrap_or(0.0);
    let k = (approx / std::f64::consts::LN_2).round() as i64;
    let s: u32 = 10;
    let guard = w + s + 16 + (k.unsigned_abs().min(1 << 20) as u32).max(1).ilog2() + 4;
    let l2 = ln2_fx(guard);
    let kb = BigInt::from(k);
    let l2k = if k >= 0 {
        Fx {
            lo: &l2.lo * &kb,
            hi: &l2.hi * &kb,
        }
    } else {
        Fx {
            lo: &l2.hi * &kb,
            hi: &l2.lo * &kb,
        }
    };
    let r = Fx::from_rational(x, guard).sub(&l2k).shl(-(s as i64));
    // Taylor series of exp(r), |r| < 2^-9
    let mut term = Fx::point(pow2(guard));
    let mut sum = term.clone();
    let terms = guard / 9 + 4;
    for j in 1..=terms {
        term = term.mul(&r, guard).div_int(&BigInt::from(j));
        sum = sum.add(&term);
    }
    let mut y = sum.widen(2);
    for _ in 0..s {
        y = y.mul(&y, guard);
    }
    y.shl(k).shl(-((guard - w) as i64))
}

impl RealEnclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty enclosure");
        RealEnclosure { lo, hi }
    }

    pub fn exact(q: BigRational) -> Self {
        RealEnclosure {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn from_int(n: i64) -> Self {
        RealEnclosure::exact(rat(n))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        RealEnclosure::exact(BigRational::from_integer(n.clone()))
    }

    pub fn zero() -> Self {
        RealEnclosure::from_int(0)
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_enclosure(&self, o: &RealEnclosure) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn overlaps(&self, o: &RealEnclosure) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// `Some(ordering)` when the enclosures separate (or are equal points).
    pub fn try_cmp(&self, o: &RealEnclosure) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.is_exact() && o.is_exact() && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// True when the whole enclosure is `≤ q`.
    pub fn certainly_le(&self, q: &BigRational) -> bool {
        &self.hi <= q
    }

    pub fn certainly_ge(&self, q: &BigRational) -> bool {
        &self.lo >= q
    }

    pub fn intersect(&self, o: &RealEnclosure) -> Option<RealEnclosure> {
        let lo = (&self.lo).max(&o.lo).clone();
        let hi = (&self.hi).min(&o.hi).clone();
        (lo <= hi).then_some(RealEnclosure { lo, hi })
    }

    pub fn scale(&self, k: &BigRational) -> RealEnclosure {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            RealEnclosure { lo: b, hi: a }
        } else {
            RealEnclosure { lo: a, hi: b }
        }
    }

    pub fn div_int(&self, k: i64) -> RealEnclosure {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))
    }

    /// `1 / self` for an enclosure not containing zero.
    pub fn recip(&self) -> RealEnclosure {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing 0"
        );
        RealEnclosure {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        }
    }

    /// `max(self, other)` pointwise.
    pub fn max(&self, o: &RealEnclosure) -> RealEnclosure {
        RealEnclosure {
            lo: (&self.lo).max(&o.lo).clone(),
            hi: (&self.hi).max(&o.hi).clone(),
        }
    }

    pub fn abs(&self) -> RealEnclosure {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            RealEnclosure {
                lo: BigRational::zero(),
                hi: (-&self.lo).max(self.hi.clone()),
            }
        }
    }

    /// Rounds endpoints outward to dyadics with `bits` fractional bits.
    pub fn round_outward(&self, bits: u32) -> RealEnclosure {
        RealEnclosure {
            lo: from_scaled(floor_scaled(&self.lo, bits), bits),
            hi: from_scaled(ceil_scaled(&self.hi, bits), bits),
        }
    }

    /// Natural logarithm; requires a positive lower endpoint.
    pub fn ln(&self, bits: u32) -> RealEnclosure {
        let w = bits + 8;
        let lo = if self.lo.is_one() {
            Fx::point(BigInt::zero())
        } else {
            ln_fx(&self.lo, w)
        };
        let hi = if self.hi == self.lo {
            lo.clone()
        } else if self.hi.is_one() {
            Fx::point(BigInt::zero())
        } else {
            ln_fx(&self.hi, w)
        };
        RealEnclosure {
            lo: from_scaled(lo.lo, w),
            hi: from_scaled(hi.hi, w),
        }
    }

    pub fn exp(&self, bits: u32) -> RealEnclosure {
        let w = bits + 8;
        let lo = if self.lo.is_zero() {
            Fx::point(pow2(w))
        } else {
            exp_fx(&self.lo, w)
        };
        let hi = if self.hi == self.lo {
            lo.clone()
        } else if self.hi.is_zero() {
            Fx::point(pow2(w))
        } else {
            exp_fx(&self.hi, w)
        };
        RealEnclosure {
            lo: from_scaled(lo.lo, w),
            hi: from_scaled(hi.hi, w),
        }
    }

    /// `self^(1/n)` for a non-negative enclosure.
    pub fn nth_root(&self, n: u32, bits: u32) -> RealEnclosure {
        assert!(!self.lo.is_negative(), "root of a negative number");
        let w = bits + 2;
        let lo = floor_scaled(&self.lo, w * n).nth_root(n);
        let hc = ceil_scaled(&self.hi, w * n);
        let mut hi = hc.nth_root(n);
        if hi.pow(n) < hc {
            hi += 1;
        }
        let out = Fx { lo, hi }.to_enclosure(w);
        // exact roots stay exact
        if self.is_exact() && out.lo.pow(n as i32) == self.lo {
            return RealEnclosure::exact(out.lo);
        }
        out
    }

    pub fn sqrt(&self, bits: u32) -> RealEnclosure {
        self.nth_root(2, bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// `"mid ± rad"` with `digits` fractional decimal digits; the radius is
    /// rounded up so the printed interval contains the enclosure.
    pub fn to_decimal(&self, digits: usize) -> String {
        let mid = self.mid();
        let ten = BigInt::from(10).pow(digits as u32);
        let scaled = &mid * BigRational::from_integer(ten.clone());
        let m_int = scaled.round().to_integer();
        let printed = BigRational::new(m_int.clone(), ten.clone());
        let rad = (&self.hi - &printed).max(&printed - &self.lo);
        let sign = if m_int.is_negative() { "-" } else { "" };
        let (q, r) = m_int.abs().div_rem(&ten);
        let mid_str = if digits == 0 {
            format!("{sign}{q}")
        } else {
            format!("{sign}{q}.{:0>width$}", r.to_string(), width = digits)
        };
        if rad.is_zero() {
            return mid_str;
        }
        format!("{mid_str} ± {}", format_upper(&rad))
    }
}

/// One-significant-digit decimal upper bound of a positive rational.
fn format_upper(r: &BigRational) -> String {
    let mut e: i64 = 0;
    let ten = rat(10);
    let mut x = r.clone();
    while x >= ten {
        x /= &ten;
        e += 1;
    }
    while x < BigRational::one() {
        x *= &ten;
        e -= 1;
    }
    let mut d = x.ceil().to_integer().to_i64().unwrap();
    if d == 10 {
        d = 1;
        e += 1;
    }
    format!("{d}e{e}")
}

impl fmt::Display for RealEnclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(20))
    }
}

impl Add for &RealEnclosure {
    type Output = RealEnclosure;
    fn add(self, o: &RealEnclosure) -> RealEnclosure {
        RealEnclosure {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &RealEnclosure {
    type Output = RealEnclosure;
    fn sub(self, o: &RealEnclosure) -> RealEnclosure {
        RealEnclosure {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Mul for &RealEnclosure {
    type Output = RealEnclosure;
    fn mul(self, o: &RealEnclosure) -> RealEnclosure {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        RealEnclosure {
            lo: c.iter().min().unwrap().clone(),
            hi: c.iter().max().unwrap().clone(),
        }
    }
}

impl Neg for &RealEnclosure {
    type Output = RealEnclosure;
    fn neg(self) -> RealEnclosure {
        RealEnclosure {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EnclosureRepr {
    lo: String,
    hi: String,
    decimal: String,
}

impl Serialize for RealEnclosure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        EnclosureRepr {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
            decimal: self.to_decimal(20),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealEnclosure {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = EnclosureRepr::deserialize(d)?;
        let lo: BigRational = r.lo.parse().map_err(serde::de::Error::custom)?;
        let hi: BigRational = r.hi.parse().map_err(serde::de::Error::custom)?;
        if lo > hi {
            return Err(serde::de::Error::custom("empty enclosure"));
        }
        Ok(RealEnclosure { lo, hi })
    }
}

/// Enclosure of `ln(n)` for a positive integer.
pub fn ln_int(n: &BigInt, bits: u32) -> RealEnclosure {
    RealEnclosure::from_bigint(n).ln(bits)
}

/// Enclosure of `ln(q)` for a positive rational.
pub fn ln_rational(q: &BigRational, bits: u32) -> RealEnclosure {
    RealEnclosure::exact(q.clone()).ln(bits)
}

/// Enclosure of a rational given by `num / den` of signed integers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
