//! Sparse multivariate Laurent polynomials with arbitrary-precision
//! integer coefficients.
//!
//! `LaurentPoly` keeps its terms in a `BTreeMap` keyed by exponent vector,
//! so iteration order is the canonical graded-lexicographic term order and
//! two polynomials are equal iff their term maps are equal. The canonical
//! form never stores a zero coefficient; the zero polynomial is the empty
//! map.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use alloc::{collections::BTreeMap, format};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact integer coefficient. Arithmetic never overflows silently.
pub type Coeff = BigInt;

/// Exponent vector of a Laurent monomial. Entries may be negative.
///
/// Ordered by graded lex: total degree first, then lexicographic. This is
/// the canonical term order used for serialization and for leading terms
/// in exact division.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    /// The all-zero vector of length `m` (the constant monomial).
    pub fn zeros(m: usize) -> Self {
        ExponentVector(vec![0; m])
    }

    /// The `i`-th unit vector of length `m` (the variable `x_i`).
    pub fn unit(m: usize, i: usize) -> Self {
        let mut e = vec![0; m];
        e[i] = 1;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn total_degree(&self) -> i64 {
        self.0
            .iter()
            .fold(0i64, |acc, &e| acc.checked_add(e).expect("exponent degree overflow"))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    fn checked_add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Dot product with an integer vector of the same length.
    pub fn dot(&self, r: &[i64]) -> i64 {
        debug_assert_eq!(self.0.len(), r.len());
        let wide: i128 = self
            .0
            .iter()
            .zip(r)
            .map(|(&v, &ri)| v as i128 * ri as i128)
            .sum();
        i64::try_from(wide).expect("tropical dot product overflow")
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// A Laurent polynomial in `nvars` variables over the integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, Coeff>,
}

impl LaurentPoly {
    // ---- Constructors ----

    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Coeff::one())
    }

    pub fn constant(nvars: usize, c: impl Into<Coeff>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::zeros(nvars), c.into());
        p
    }

    /// The variable `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(ExponentVector::unit(nvars, i), Coeff::one())
    }

    pub fn monomial(exps: ExponentVector, coeff: impl Into<Coeff>) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff.into());
        p
    }

    /// Build from an arbitrary term list; like terms merge, zeros drop.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (ExponentVector, Coeff)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::LengthMismatch { expected: nvars, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    // ---- Queries ----

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded-lex ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &ExponentVector) -> Coeff {
        self.terms.get(e).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&ExponentVector::zeros(self.nvars))
    }

    /// True if every stored coefficient is strictly positive.
    pub fn has_positive_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// True if every exponent of every term is nonnegative.
    pub fn has_nonneg_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_nonnegative())
    }

    /// The largest exponent of variable `i` over the support (0 for zero).
    pub fn max_degree_in(&self, i: usize) -> i64 {
        self.terms.keys().map(|e| e.entries()[i]).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over the support (0 for zero).
    fn min_exponents(&self) -> Vec<i64> {
        let mut m = vec![i64::MAX; self.nvars];
        for e in self.terms.keys() {
            for (mi, &ei) in m.iter_mut().zip(e.entries()) {
                *mi = (*mi).min(ei);
            }
        }
        if self.terms.is_empty() {
            m.fill(0);
        }
        m
    }

    // ---- Arithmetic ----

    fn add_term(&mut self, e: ExponentVector, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn require_same_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    /// Termwise sum in canonical form.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.require_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// Convolution product in canonical form.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.require_same_vars(other)?;
        let mut out = Self::zero(self.nvars);
        // Iterate the smaller operand outside; products accumulate in place.
        let (small, big) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        for (ea, ca) in &small.terms {
            for (eb, cb) in &big.terms {
                out.add_term(ea.checked_add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negated(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    /// `self^exp` by binary exponentiation. `pow(0)` is 1.
    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base).expect("same nvars");
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same nvars");
            }
        }
        result
    }

    /// Multiply by the monomial `x^delta`.
    fn shifted(&self, delta: &[i64]) -> Self {
        let d = ExponentVector(delta.to_owned());
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.checked_add(&d), c.clone()))
                .collect(),
        }
    }

    /// Exact division: returns `q` with `q * divisor == self`, or
    /// `Err(InexactDivision)` when no such Laurent polynomial exists over
    /// the integers.
    pub fn try_div_exact(&self, divisor: &Self) -> Result<Self> {
        self.require_same_vars(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        // Shift both operands into ordinary polynomials (min exponent 0 per
        // variable). If the quotient is Laurent, the shifted quotient is an
        // ordinary polynomial, so leading-term elimination in graded lex
        // terminates.
        let ma = self.min_exponents();
        let mb = divisor.min_exponents();
        let neg = |v: &[i64]| v.iter().map(|&x| -x).collect::<Vec<_>>();
        let a = self.shifted(&neg(&ma));
        let b = divisor.shifted(&neg(&mb));

        let (lead_b, lc_b) = {
            let (e, c) = b.terms.last_key_value().expect("nonzero divisor");
            (e.clone(), c.clone())
        };
        let mut rem = a;
        let mut quot = Self::zero(self.nvars);
        while !rem.is_zero() {
            let (lead_r, lc_r) = {
                let (e, c) = rem.terms.last_key_value().expect("nonzero remainder");
                (e.clone(), c.clone())
            };
            let e = lead_r
                .entries()
                .iter()
                .zip(lead_b.entries())
                .map(|(&r, &d)| r - d)
                .collect::<Vec<_>>();
            if e.iter().any(|&x| x < 0) {
                return Err(Error::InexactDivision);
            }
            let (qc, rc) = num_integer_div_rem(&lc_r, &lc_b);
            if !rc.is_zero() {
                return Err(Error::InexactDivision);
            }
            let t_exp = ExponentVector(e);
            // rem -= t * b
            for (eb, cb) in &b.terms {
                rem.add_term(t_exp.checked_add(eb), -(&qc * cb));
            }
            quot.add_term(t_exp, qc);
        }
        let delta: Vec<i64> = ma.iter().zip(&mb).map(|(&x, &y)| x - y).collect();
        Ok(quot.shifted(&delta))
    }

    // ---- Substitution ----

    /// Keep the listed variables (in the given order) and set every other
    /// variable to 1. The result lives in `vars.len()` variables.
    pub fn project_to_vars(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(vars.len());
        for (e, c) in &self.terms {
            let proj = ExponentVector(vars.iter().map(|&i| e.entries()[i]).collect());
            out.add_term(proj, c.clone());
        }
        out
    }

    /// Evaluate at Laurent-polynomial values, one per variable. Requires
    /// every exponent of `self` to be nonnegative.
    pub fn eval_at_polys(&self, values: &[LaurentPoly]) -> Result<Self> {
        if values.len() != self.nvars {
            return Err(Error::LengthMismatch { expected: self.nvars, got: values.len() });
        }
        let m = match values.first() {
            Some(v) => v.nvars(),
            None => return Err(Error::BadInput("evaluation needs at least one variable".into())),
        };
        let mut out = Self::zero(m);
        for (e, c) in &self.terms {
            if !e.is_nonnegative() {
                return Err(Error::BadInput("eval_at_polys needs nonnegative exponents".into()));
            }
            let mut term = Self::constant(m, c.clone());
            for (i, &ei) in e.entries().iter().enumerate() {
                if ei != 0 {
                    term = term.try_mul(&values[i].pow(ei as u64))?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    // ---- Display ----

    /// Render with a caller-chosen variable namer, terms in canonical order.
    pub fn to_string_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &ei) in e.entries().iter().enumerate() {
                match ei {
                    0 => {}
                    1 => factors.push(name(i)),
                    _ => factors.push(format!("{}^{}", name(i), ei)),
                }
            }
            let body = factors.join("*");
            let part = if body.is_empty() {
                format!("{c}")
            } else if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{body}")
            } else {
                format!("{c}*{body}")
            };
            parts.push(part);
        }
        let mut s = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                s.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(p);
            }
        }
        s
    }
}

fn num_integer_div_rem(a: &Coeff, b: &Coeff) -> (Coeff, Coeff) {
    (a / b, a % b)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(|i| format!("x{}", i + 1)))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.try_add(rhs).expect("variable counts must match")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self.try_add(&rhs.negated()).expect("variable counts must match")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        self.try_mul(rhs).expect("variable counts must match")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negated()
    }
}
