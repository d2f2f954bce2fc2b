//! Subtraction-free fractions: elements of the universal semifield
//! witnessed syntactically.
//!
//! Both parts are nonzero Laurent polynomials whose coefficients are all
//! strictly positive, so membership in the semifield is visible on the
//! representation. Fractions are deliberately never reduced to lowest
//! terms: tropical evaluation is reduction-invariant, and reduction would
//! destroy the positivity witness.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

#[derive(Clone, Eq, Debug)]
pub struct SubtractionFreeFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl SubtractionFreeFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::VarCountMismatch { left: num.nvars(), right: den.nvars() });
        }
        if num.is_zero() || den.is_zero() {
            return Err(Error::BadInput("subtraction-free fraction parts must be nonzero".into()));
        }
        if !num.has_positive_coeffs() || !den.has_positive_coeffs() {
            return Err(Error::BadInput(
                "subtraction-free fraction parts must have positive coefficients".into(),
            ));
        }
        Ok(SubtractionFreeFraction { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Result<Self> {
        let one = LaurentPoly::one(p.nvars());
        Self::new(p, one)
    }

    /// The generator `y_i` as a fraction.
    pub fn variable(nvars: usize, i: usize) -> Self {
        SubtractionFreeFraction {
            num: LaurentPoly::variable(nvars, i),
            den: LaurentPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        SubtractionFreeFraction { num: LaurentPoly::one(nvars), den: LaurentPoly::one(nvars) }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn mul(&self, other: &Self) -> Self {
        SubtractionFreeFraction {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    /// Multiplicative inverse: swap the parts.
    pub fn inverted(&self) -> Self {
        SubtractionFreeFraction { num: self.den.clone(), den: self.num.clone() }
    }

    /// `self^exp` for any integer exponent.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.inverted() } else { self.clone() };
        SubtractionFreeFraction {
            num: base.num.pow(exp.unsigned_abs()),
            den: base.den.pow(exp.unsigned_abs()),
        }
    }

    /// `1 + self`, still subtraction-free: `(den + num) / den`.
    pub fn one_plus(&self) -> Self {
        SubtractionFreeFraction { num: &self.den + &self.num, den: self.den.clone() }
    }

    /// Evaluate a polynomial with positive coefficients and nonnegative
    /// exponents at fraction values, over one common denominator:
    /// `F(p_1/q_1, ...) = sum_v c_v prod p_i^{v_i} q_i^{M_i - v_i} / prod q_i^{M_i}`
    /// where `M_i` is the largest exponent of variable `i` in `F`.
    pub fn eval_poly(f: &LaurentPoly, values: &[Self]) -> Result<Self> {
        if values.len() != f.nvars() {
            return Err(Error::LengthMismatch { expected: f.nvars(), got: values.len() });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.has_nonneg_exponents() || !f.has_positive_coeffs() {
            return Err(Error::BadInput(
                "fraction evaluation needs a positive polynomial with nonnegative exponents".into(),
            ));
        }
        let m = values.first().map(|v| v.nvars()).unwrap_or(0);
        let maxdeg: Vec<i64> = (0..f.nvars()).map(|i| f.max_degree_in(i)).collect();
        let mut num = LaurentPoly::zero(m);
        for (e, c) in f.terms() {
            let mut term = LaurentPoly::constant(m, c.clone());
            for (i, &ei) in e.entries().iter().enumerate() {
                term = &term * &values[i].num.pow(ei as u64);
                term = &term * &values[i].den.pow((maxdeg[i] - ei) as u64);
            }
            num = &num + &term;
        }
        let mut den = LaurentPoly::one(m);
        for (i, &mi) in maxdeg.iter().enumerate() {
            den = &den * &values[i].den.pow(mi as u64);
        }
        Self::new(num, den)
    }

    pub fn to_string_with(&self, name: impl Fn(usize) -> String + Copy) -> String {
        let mut s = String::from("(");
        s.push_str(&self.num.to_string_with(name));
        s.push_str(") / (");
        s.push_str(&self.den.to_string_with(name));
        s.push(')');
        s
    }
}

/// Equality as semifield values: cross-multiplication. Representations
/// are unreduced, so structural comparison would be wrong.
impl PartialEq for SubtractionFreeFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for SubtractionFreeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(|i| alloc::format!("y{}", i + 1)))
    }
}
