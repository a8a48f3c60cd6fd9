//! Rectangular complex interval arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::real::RealEnclosure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: RealEnclosure,
    pub im: RealEnclosure,
}

impl ComplexBox {
    pub fn new(re: RealEnclosure, im: RealEnclosure) -> Self {
        ComplexBox { re, im }
    }

    pub fn real(q: BigRational) -> Self {
        ComplexBox {
            re: RealEnclosure::exact(q),
            im: RealEnclosure::zero(),
        }
    }

    pub fn add(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn mul(&self, o: &ComplexBox) -> ComplexBox {
        ComplexBox {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    pub fn scale(&self, k: &BigRational) -> ComplexBox {
        ComplexBox {
            re: self.re.scale(k),
            im: self.im.scale(k),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> ComplexBox {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    pub fn overlaps(&self, o: &ComplexBox) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn round_outward(&self, bits: u32) -> ComplexBox {
        ComplexBox {
            re: self.re.round_outward(bits),
            im: self.im.round_outward(bits),
        }
    }

    /// Horner evaluation of `Σ c_i z^i`.
    pub fn eval_rational_poly(&self, coeffs: &[BigRational]) -> ComplexBox {
        let mut acc = ComplexBox::real(BigRational::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add(&ComplexBox::real(c.clone()));
        }
        acc
    }

    pub fn width(&self) -> BigRational {
        self.re.width().max(self.im.width())
    }
}
