//! Evaluators for the constants `L_U`, `ν` and `η` built from the zero-free
//! region parameters `c, c_1, c_2, c_3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::real::RealEnclosure;

/// Parameters with `c, c_2 > 1 > c_1`, `c_3 > 0` and `U > 0`.
#[derive(Clone, Debug, Serialize)]
pub struct LinnikParameters {
    #[serde(serialize_with = "crate::exactalg::decimal::display")]
    pub c: BigRational,
    #[serde(serialize_with = "crate::exactalg::decimal::display")]
    pub c1: BigRational,
    #[serde(serialize_with = "crate::exactalg::decimal::display")]
    pub c2: BigRational,
    #[serde(serialize_with = "crate::exactalg::decimal::display")]
    pub c3: BigRational,
    #[serde(serialize_with = "crate::exactalg::decimal::display")]
    pub u: BigRational,
    /// `1 - β_1` for an exceptional zero `β_1`.
    pub delta1: Option<RealEnclosure>,
}

impl LinnikParameters {
    pub fn new(
        c: BigRational,
        c1: BigRational,
        c2: BigRational,
        c3: BigRational,
        u: BigRational,
    ) -> Result<Self> {
        let one = BigRational::one();
        if c < one
            || c2 <= one
            || !c1.is_positive()
            || c1 >= one
            || !c3.is_positive()
            || !u.is_positive()
        {
            return Err(Error::InvalidArgument(
                "need c >= 1, c2 > 1 > c1 > 0, c3 > 0 and U > 0".into(),
            ));
        }
        Ok(LinnikParameters {
            c,
            c1,
            c2,
            c3,
            u,
            delta1: None,
        })
    }

    pub fn with_delta1(mut self, delta1: RealEnclosure) -> Result<Self> {
        if !delta1.lo().is_positive() {
            return Err(Error::InvalidArgument("delta1 must be positive".into()));
        }
        self.delta1 = Some(delta1);
        Ok(self)
    }

    fn exact(q: &BigRational) -> RealEnclosure {
        RealEnclosure::exact(q.clone())
    }

    /// `4 log(2Uc)`
    fn log_term(&self, bits: u32) -> RealEnclosure {
        let two = BigRational::from_integer(BigInt::from(2));
        let arg = &two * &self.u * &self.c;
        Self::exact(&arg)
            .ln(bits)
            .scale(&BigRational::from_integer(4.into()))
    }

    /// `|log c_1|`
    fn abs_log_c1(&self, bits: u32) -> RealEnclosure {
        Self::exact(&self.c1).ln(bits).abs()
    }

    fn four_over(&self, x: &BigRational) -> RealEnclosure {
        Self::exact(&(BigRational::from_integer(4.into()) / x))
    }

    /// The four terms `4c_2, 4/c_3, 4 log(2Uc)/c_1, 4 log(2Uc)/(c_3 |log c_1|)`.
    pub fn l_u_terms(&self, bits: u32) -> [RealEnclosure; 4] {
        let b = bits + 16;
        let lt = self.log_term(b);
        [
            Self::exact(&(BigRational::from_integer(4.into()) * &self.c2)),
            self.four_over(&self.c3),
            lt.scale(&self.c1.recip()),
            &lt * &(&Self::exact(&self.c3) * &self.abs_log_c1(b)).recip(),
        ]
    }

    /// The four terms `4c_2, 4/c_1, 4/c_3, 4 log(2Uc)/(c_3 |log c_1|)`.
    pub fn nu_terms(&self, bits: u32) -> [RealEnclosure; 4] {
        let b = bits + 16;
        let lt = self.log_term(b);
        [
            Self::exact(&(BigRational::from_integer(4.into()) * &self.c2)),
            self.four_over(&self.c1),
            self.four_over(&self.c3),
            &lt * &(&Self::exact(&self.c3) * &self.abs_log_c1(b)).recip(),
        ]
    }
}

fn max_of(terms: &[RealEnclosure]) -> RealEnclosure {
    terms.iter().skip(1).fold(terms[0].clone(), |m, t| m.max(t))
}

/// `L_U = max{4c_2, 4/c_3, 4 log(2Uc)/c_1, 4 log(2Uc)/(c_3 |log c_1|)}`.
pub fn evaluate_l_u(params: &LinnikParameters, bits: u32) -> RealEnclosure {
    max_of(&params.l_u_terms(bits))
}

/// Warns when `U ≤ 3(γ+3)/(γ−3)`, outside the range where `L_U` is used.
pub fn check_u_against_gamma(params: &LinnikParameters, gamma: &BigRational) -> bool {
    let three = BigRational::from_integer(3.into());
    if gamma <= &three {
        log::warn!("gamma = {gamma} must exceed 3");
        return false;
    }
    let threshold = &three * (gamma + &three) / (gamma - &three);
    let ok = params.u > threshold;
    if !ok {
        log::warn!(
            "U = {} does not exceed 3(gamma+3)/(gamma-3) = {threshold}",
            params.u
        );
    }
    ok
}

/// `ν = max{4c_2, 4/c_1, 4/c_3, 4 log(2Uc)/(c_3 |log c_1|)}`.
pub fn evaluate_nu(params: &LinnikParameters, bits: u32) -> RealEnclosure {
    max_of(&params.nu_terms(bits))
}

/// `η = c_1 / (2 log q)`, or `c_3 |log(2 δ_1 log q)| / (2 log q)` when an
/// exceptional zero is given. Takes `log q` directly.
pub fn evaluate_eta(
    params: &LinnikParameters,
    log_q: &RealEnclosure,
    bits: u32,
) -> Result<RealEnclosure> {
    if !log_q.lo().is_positive() {
        return Err(Error::InvalidArgument("eta needs q > 1".into()));
    }
    let two_log_q = log_q.scale(&BigRational::from_integer(2.into()));
    let numerator = match &params.delta1 {
        None => RealEnclosure::exact(params.c1.clone()),
        Some(d1) => {
            let arg = d1 * &two_log_q;
            arg.ln(bits + 16).abs().scale(&params.c3)
        }
    };
    Ok(&numerator * &two_log_q.recip())
}

/// `η` for an integer modulus `q ≥ 2`.
pub fn evaluate_eta_for_modulus(
    params: &LinnikParameters,
    q: u64,
    bits: u32,
) -> Result<RealEnclosure> {
    if q <= 1 {
        return Err(Error::InvalidArgument("eta needs q > 1".into()));
    }
    let log_q = RealEnclosure::from_bigint(&BigInt::from(q)).ln(bits + 16);
    evaluate_eta(params, &log_q, bits)
}
