//! Integer and rational polynomial algebra, factorization, certified roots
//! and Mahler measures.

pub mod cxbox;
pub mod decimal;
pub mod mahler;
pub mod modp;
pub mod poly;
pub mod qpoly;
pub mod real;
pub mod resultant;
pub mod roots;
pub mod zfactor;

pub use mahler::{mahler_measure, MahlerMeasure};
pub use modp::{factor_mod_p, PolyFp};
pub use poly::IntPoly;
pub use qpoly::QPoly;
pub use real::RealEnclosure;
pub use resultant::{poly_discriminant, resultant};
pub use roots::{complex_roots, ComplexEnclosure};
pub use zfactor::{factor_over_q, is_irreducible, Factorization};
