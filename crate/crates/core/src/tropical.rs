//! Tropical (max-plus) evaluation of polynomials and subtraction-free
//! fractions.
//!
//! For a nonzero polynomial `F = sum c_v y^v` and an integer vector `r`,
//! the tropical value is `F[r] = max { v . r : c_v != 0 }`. The map
//! extends to subtraction-free fractions as the difference of the two
//! parts, which is exactly the image under the unique semifield
//! homomorphism into `(Z, +, max)` sending generator `i` to `r_i`.

use core::fmt;

use crate::error::{Error, Result};
use crate::fraction::SubtractionFreeFraction;
use crate::poly::LaurentPoly;

/// An element of the tropical semifield `(Z, +, max)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TropicalValue(pub i64);

impl fmt::Display for TropicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `F[r] = max { v . r }` over the support of `F`.
///
/// Callers are expected to pass a polynomial with positive coefficients
/// and nonnegative exponents (the paper defines `F[-]` for those); the
/// max over the support is computed for any nonzero input.
pub fn tropical_eval(f: &LaurentPoly, r: &[i64]) -> Result<TropicalValue> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if r.len() != f.nvars() {
        return Err(Error::LengthMismatch { expected: f.nvars(), got: r.len() });
    }
    let max = f.terms().map(|(e, _)| e.dot(r)).max().expect("nonzero polynomial");
    Ok(TropicalValue(max))
}

/// Tropical value of a subtraction-free fraction:
/// `trop(P)[r] - trop(Q)[r]`.
pub fn sff_eval_tropical(f: &SubtractionFreeFraction, r: &[i64]) -> Result<TropicalValue> {
    let num = tropical_eval(f.numerator(), r)?;
    let den = tropical_eval(f.denominator(), r)?;
    Ok(TropicalValue(num.0 - den.0))
}
