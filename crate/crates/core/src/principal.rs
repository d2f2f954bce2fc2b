//! The principal-coefficient pattern: g-vectors and F-polynomials of
//! cluster monomials with respect to any rooted vertex, plus the
//! separation-formula check.
//!
//! A principal seed carries the 2n x n extended matrix (top block: the
//! exchange matrix, bottom block: the coefficient rows, initially the
//! identity) and n cluster entries living in
//! `Z[y_1..y_n][x_1^{pm 1}..x_n^{pm 1}]`. Variables `0..n` are the x's,
//! `n..2n` the y's.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::matrix::{mutate_rows, ExchangeMatrix};
use crate::poly::{Coeff, ExponentVector, LaurentPoly};
use crate::seed::{ClusterMonomialRef, MutationSequence, Seed};
use crate::tropical::tropical_eval;

/// The 2n x n matrix of a pattern with principal coefficients. Rows
/// `0..n` form the exchange matrix at the current vertex, rows `n..2n`
/// the coefficient block (the identity at the root).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtendedMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl ExtendedMatrix {
    pub fn with_principal(b0: &ExchangeMatrix) -> Self {
        let n = b0.rank();
        let mut rows = b0.rows().to_vec();
        for i in 0..n {
            let mut row = vec![0i64; n];
            row[i] = 1;
            rows.push(row);
        }
        ExtendedMatrix { n, rows }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    /// The top block as an exchange matrix (skew-symmetrizable at every
    /// vertex).
    pub fn top(&self) -> ExchangeMatrix {
        ExchangeMatrix::new(self.rows[..self.n].to_vec())
            .expect("mutation preserves skew-symmetrizability")
    }

    /// Mutation at an unfrozen direction `k < n`: the usual formula with
    /// `i` ranging over all 2n rows and `j` over the n columns.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::DirectionOutOfRange { direction: k, rank: self.n });
        }
        Ok(ExtendedMatrix { n: self.n, rows: mutate_rows(&self.rows, self.n, k) })
    }
}

/// The g-vector of a cluster monomial: the common multidegree of its
/// principal expansion under `deg(x_i) = e_i`, `deg(y_i) = -B_t0 e_i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GVector(Vec<i64>);

impl GVector {
    pub fn new(g: Vec<i64>) -> Self {
        GVector(g)
    }

    pub fn zeros(n: usize) -> Self {
        GVector(vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn add_scaled(&mut self, other: &[i64], v: u64) {
        for (a, &b) in self.0.iter_mut().zip(other) {
            *a = a
                .checked_add(b.checked_mul(v as i64).expect("g-vector overflow"))
                .expect("g-vector overflow");
        }
    }
}

impl fmt::Display for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An F-polynomial: all exponents nonnegative, all coefficients
/// nonnegative, constant term exactly 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct FPolynomial(LaurentPoly);

impl FPolynomial {
    /// Validate the GHKK shape; a violation is a theorem-check failure,
    /// never expected on genuine pattern output.
    pub fn new(p: LaurentPoly) -> Result<Self> {
        if !p.has_nonneg_exponents() {
            return Err(Error::GhkkViolation("negative exponent in F-polynomial".into()));
        }
        if !p.constant_term().is_one() {
            return Err(Error::GhkkViolation(format!(
                "constant term {} != 1",
                p.constant_term()
            )));
        }
        if p.terms().any(|(_, c)| c.is_negative()) {
            return Err(Error::GhkkViolation("negative coefficient in F-polynomial".into()));
        }
        Ok(FPolynomial(p))
    }

    pub fn one(nvars: usize) -> Self {
        FPolynomial(LaurentPoly::one(nvars))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars()
    }

    /// Product of F-polynomials is again an F-polynomial.
    pub fn mul(&self, other: &Self) -> Self {
        FPolynomial(&self.0 * &other.0)
    }

    pub fn pow(&self, exp: u64) -> Self {
        FPolynomial(self.0.pow(exp))
    }

    /// Tropical evaluation `F[r]`; total by the constant-term-1 invariant.
    pub fn tropical(&self, r: &[i64]) -> i64 {
        tropical_eval(&self.0, r).expect("F-polynomials are nonzero").0
    }

    /// The largest degree of `y_i` over the support.
    pub fn max_degree_in(&self, i: usize) -> i64 {
        self.0.max_degree_in(i)
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_with(|i| format!("y{}", i + 1)))
    }
}

/// The (g-vector, F-polynomial) pair of a cluster monomial with respect
/// to a rooted vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GFData {
    pub g: GVector,
    pub f: FPolynomial,
}

/// A seed of the pattern with principal coefficients at the root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrincipalSeed {
    root: ExchangeMatrix,
    ext: ExtendedMatrix,
    cluster: Vec<LaurentPoly>,
    path: MutationSequence,
}

impl PrincipalSeed {
    pub fn root_seed(b0: &ExchangeMatrix) -> Self {
        let n = b0.rank();
        PrincipalSeed {
            root: b0.clone(),
            ext: ExtendedMatrix::with_principal(b0),
            cluster: (0..n).map(|i| LaurentPoly::variable(2 * n, i)).collect(),
            path: MutationSequence::empty(),
        }
    }

    pub fn rank(&self) -> usize {
        self.ext.rank()
    }

    pub fn extended(&self) -> &ExtendedMatrix {
        &self.ext
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn path(&self) -> &MutationSequence {
        &self.path
    }

    /// Exchange relation over the 2n-variable products: row `j < n` of the
    /// extended column contributes `cluster[j]`, row `n+i` the frozen
    /// variable `y_i`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::DirectionOutOfRange { direction: k, rank: n });
        }
        let mut pos = LaurentPoly::one(2 * n);
        let mut neg = LaurentPoly::one(2 * n);
        for j in 0..2 * n {
            let bjk = self.ext.entry(j, k);
            let factor = if j < n {
                self.cluster[j].clone()
            } else {
                LaurentPoly::variable(2 * n, n + (j - n))
            };
            if bjk > 0 {
                pos = pos.try_mul(&factor.pow(bjk as u64))?;
            } else if bjk < 0 {
                neg = neg.try_mul(&factor.pow((-bjk) as u64))?;
            }
        }
        let binomial = pos.try_add(&neg)?;
        let new_entry = binomial.try_div_exact(&self.cluster[k])?;

        let mut cluster = self.cluster.clone();
        cluster[k] = new_entry;
        Ok(PrincipalSeed {
            root: self.root.clone(),
            ext: self.ext.mutate(k)?,
            cluster,
            path: self.path.extended(k),
        })
    }

    /// The multidegree of cluster entry `k`: each term must have the same
    /// degree `a - B_t0 c` (x-exponents `a`, y-exponents `c`), else the
    /// homogeneity of principal cluster variables is violated.
    pub fn g_vector(&self, k: usize) -> Result<GVector> {
        let n = self.rank();
        let entry = &self.cluster[k];
        if entry.is_zero() {
            return Err(Error::NotHomogeneous("zero cluster entry".into()));
        }
        let mut common: Option<Vec<i64>> = None;
        for (e, _) in entry.terms() {
            let exps = e.entries();
            let mut deg: Vec<i64> = exps[..n].to_vec();
            for (i, &ci) in exps[n..].iter().enumerate() {
                if ci != 0 {
                    for (r, d) in deg.iter_mut().enumerate() {
                        *d -= self.root.entry(r, i) * ci;
                    }
                }
            }
            match &common {
                None => common = Some(deg),
                Some(c) if *c == deg => {}
                Some(c) => {
                    return Err(Error::NotHomogeneous(format!(
                        "terms of entry {k} have degrees {c:?} and {deg:?}"
                    )));
                }
            }
        }
        Ok(GVector(common.expect("nonzero entry")))
    }

    /// Specialize `x_1 = ... = x_n = 1` in cluster entry `k` and validate
    /// the GHKK shape.
    pub fn f_polynomial(&self, k: usize) -> Result<FPolynomial> {
        let n = self.rank();
        let yvars: Vec<usize> = (n..2 * n).collect();
        FPolynomial::new(self.cluster[k].project_to_vars(&yvars))
    }

    pub fn gf(&self, k: usize) -> Result<GFData> {
        Ok(GFData { g: self.g_vector(k)?, f: self.f_polynomial(k)? })
    }

    /// Left-to-right composition of single-step mutations.
    pub fn apply_sequence(&self, seq: &MutationSequence) -> Result<Self> {
        let mut s = self.clone();
        for &k in seq.steps() {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// Specialize `y_1 = ... = y_n = 1`: recovers the trivial-coefficient
    /// cluster variable at the same address.
    pub fn specialize_y_one(&self, k: usize) -> LaurentPoly {
        let n = self.rank();
        let xvars: Vec<usize> = (0..n).collect();
        self.cluster[k].project_to_vars(&xvars)
    }

    /// Row sign-coherence of the g-vector matrix at this vertex: for each
    /// row `j`, the `j`-th components of `g_1, ..., g_n` all `>= 0` or all
    /// `<= 0`.
    pub fn g_matrix_row_sign_coherent(&self) -> Result<bool> {
        let n = self.rank();
        let gs: Vec<GVector> = (0..n).map(|k| self.g_vector(k)).collect::<Result<_>>()?;
        Ok((0..n).all(|j| {
            let row: Vec<i64> = gs.iter().map(|g| g.get(j)).collect();
            row.iter().all(|&x| x >= 0) || row.iter().all(|&x| x <= 0)
        }))
    }
}

/// Memoizes principal seeds keyed by (root matrix, path). Same key always
/// maps to an equal value; cloning the cache hands an equivalent oracle to
/// another thread.
#[derive(Clone, Default, Debug)]
pub struct PatternCache {
    seeds: BTreeMap<(ExchangeMatrix, MutationSequence), PrincipalSeed>,
}

impl PatternCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }

    /// The principal seed at `path` in the pattern rooted at `b0`,
    /// computing and caching every prefix on the way.
    pub fn seed_at(&mut self, b0: &ExchangeMatrix, path: &MutationSequence) -> Result<&PrincipalSeed> {
        for len in 0..=path.len() {
            let key = (b0.clone(), path.prefix(len));
            if self.seeds.contains_key(&key) {
                continue;
            }
            let seed = if len == 0 {
                PrincipalSeed::root_seed(b0)
            } else {
                let prev = self
                    .seeds
                    .get(&(b0.clone(), path.prefix(len - 1)))
                    .expect("prefix just ensured");
                prev.mutate(path.steps()[len - 1])?
            };
            self.seeds.insert(key, seed);
        }
        Ok(self
            .seeds
            .get(&(b0.clone(), path.clone()))
            .expect("just ensured"))
    }

    /// g-vector and F-polynomial of the cluster monomial `u` with respect
    /// to the root of the pattern: `g = sum v_k g_k`, `F = prod F_k^{v_k}`.
    pub fn gf_of_monomial(&mut self, b0: &ExchangeMatrix, u: &ClusterMonomialRef) -> Result<GFData> {
        let n = b0.rank();
        if u.exponents.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: u.exponents.len() });
        }
        let seed = self.seed_at(b0, &u.path)?.clone();
        let mut g = GVector::zeros(n);
        let mut f = FPolynomial::one(n);
        for (k, &v) in u.exponents.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let gk = seed.g_vector(k)?;
            g.add_scaled(gk.entries(), v);
            f = f.mul(&seed.f_polynomial(k)?.pow(v));
        }
        Ok(GFData { g, f })
    }

    /// g-vector and F-polynomial of `u` with respect to the vertex
    /// addressed by `w`: the pattern is re-rooted at `B_w`, and the vertex
    /// of `u` sits at `reverse(w)` followed by `u.path` relative to `w`.
    pub fn gf_with_respect_to(
        &mut self,
        b0: &ExchangeMatrix,
        u: &ClusterMonomialRef,
        w: &MutationSequence,
    ) -> Result<GFData> {
        let mut bw = b0.clone();
        for &k in w.steps() {
            bw = bw.mutate(k)?;
        }
        let relative = ClusterMonomialRef::new(w.reversed().then(&u.path), u.exponents.clone());
        self.gf_of_monomial(&bw, &relative)
    }

    /// The separation formula: the trivial-coefficient expansion of `u`
    /// equals `x^g * F(hat y_1, ..., hat y_n)` exactly.
    pub fn separation_check(&mut self, b0: &ExchangeMatrix, u: &ClusterMonomialRef) -> Result<bool> {
        let n = b0.rank();
        let root = Seed::root(b0);
        let lhs = root.apply_sequence(&u.path)?.expand_monomial(&u.exponents)?;

        let GFData { g, f } = self.gf_of_monomial(b0, u)?;
        let hat: Vec<LaurentPoly> = (0..n).map(|k| root.hat_y(k)).collect::<Result<_>>()?;
        let substituted = f.poly().eval_at_polys(&hat)?;
        let xg = LaurentPoly::monomial(ExponentVector::new(g.entries().to_vec()), Coeff::one());
        let rhs = &xg * &substituted;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gallery;

    fn poly(nvars: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (ExponentVector::new(e.to_vec()), Coeff::from(*c))),
        )
        .unwrap()
    }

    fn seq(steps: &[usize]) -> MutationSequence {
        MutationSequence::from_one_based(steps).unwrap()
    }

    #[test]
    fn extended_matrix_root_shape() {
        let ext = ExtendedMatrix::with_principal(&gallery::a2());
        assert_eq!(ext.entry(0, 1), 1);
        assert_eq!(ext.entry(2, 0), 1);
        assert_eq!(ext.entry(2, 1), 0);
        assert_eq!(ext.entry(3, 1), 1);
    }

    #[test]
    fn a2_principal_first_mutation() {
        // Variables: x1 x2 y1 y2. mu_1: x1' = (y1 + x2)/x1.
        let s = PrincipalSeed::root_seed(&gallery::a2()).mutate(0).unwrap();
        let expect = poly(4, &[(&[-1, 0, 1, 0], 1), (&[-1, 1, 0, 0], 1)]);
        assert_eq!(s.cluster()[0], expect);
    }

    #[test]
    fn principal_mutation_is_an_involution() {
        let root = PrincipalSeed::root_seed(&gallery::a3());
        for k in 0..3 {
            let back = root.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(back.cluster(), root.cluster());
            assert_eq!(back.extended(), root.extended());
        }
    }

    #[test]
    fn a2_two_step_entry() {
        // After [1,2], entry 2 is (x1 y1 y2 + y1 + x2)/(x1 x2).
        let s = PrincipalSeed::root_seed(&gallery::a2())
            .mutate(0)
            .unwrap()
            .mutate(1)
            .unwrap();
        let expect = poly(
            4,
            &[
                (&[0, -1, 1, 1], 1),  // y1 y2 / x2
                (&[-1, -1, 1, 0], 1), // y1 / (x1 x2)
                (&[-1, 0, 0, 0], 1),  // 1/x1
            ],
        );
        assert_eq!(s.cluster()[1], expect);
    }

    #[test]
    fn a2_g_vectors() {
        let mut cache = PatternCache::new();
        let b = gallery::a2();
        let root = cache.seed_at(&b, &MutationSequence::empty()).unwrap().clone();
        assert_eq!(root.g_vector(0).unwrap(), GVector::new(vec![1, 0]));
        assert_eq!(root.g_vector(1).unwrap(), GVector::new(vec![0, 1]));

        let t1 = cache.seed_at(&b, &seq(&[1])).unwrap().clone();
        assert_eq!(t1.g_vector(0).unwrap(), GVector::new(vec![-1, 1]));

        let t2 = cache.seed_at(&b, &seq(&[1, 2])).unwrap().clone();
        assert_eq!(t2.g_vector(1).unwrap(), GVector::new(vec![-1, 0]));
    }

    #[test]
    fn a2_f_polynomials() {
        let mut cache = PatternCache::new();
        let b = gallery::a2();
        let root = cache.seed_at(&b, &MutationSequence::empty()).unwrap().clone();
        assert_eq!(root.f_polynomial(0).unwrap(), FPolynomial::one(2));

        let t1 = cache.seed_at(&b, &seq(&[1])).unwrap().clone();
        let f1 = poly(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        assert_eq!(t1.f_polynomial(0).unwrap().poly(), &f1);

        let t2 = cache.seed_at(&b, &seq(&[1, 2])).unwrap().clone();
        let f2 = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(t2.f_polynomial(1).unwrap().poly(), &f2);
    }

    #[test]
    fn gf_of_monomial_combines_multiplicatively() {
        let mut cache = PatternCache::new();
        let b = gallery::a2();

        // empty monomial
        let empty = ClusterMonomialRef::new(seq(&[1, 2]), vec![0, 0]);
        let gf = cache.gf_of_monomial(&b, &empty).unwrap();
        assert_eq!(gf.g, GVector::zeros(2));
        assert_eq!(gf.f, FPolynomial::one(2));

        // unit vector at the root
        let e2 = ClusterMonomialRef::variable(MutationSequence::empty(), 2, 1);
        let gf = cache.gf_of_monomial(&b, &e2).unwrap();
        assert_eq!(gf.g, GVector::new(vec![0, 1]));
        assert_eq!(gf.f, FPolynomial::one(2));

        // v = (1,1) at [1,2]: g = (-1,1)+(-1,0), F = (1+y1)(1+y1+y1y2)
        let both = ClusterMonomialRef::new(seq(&[1, 2]), vec![1, 1]);
        let gf = cache.gf_of_monomial(&b, &both).unwrap();
        assert_eq!(gf.g, GVector::new(vec![-2, 1]));
        let f_a = poly(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let f_b = poly(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(gf.f.poly(), &(&f_a * &f_b));
    }

    #[test]
    fn gf_with_respect_to_reroots() {
        let mut cache = PatternCache::new();
        let b = gallery::a2();
        let u = ClusterMonomialRef::new(seq(&[1, 2]), vec![0, 1]);

        // w = u.path: the monomial lives in its own cluster
        let gf = cache.gf_with_respect_to(&b, &u, &seq(&[1, 2])).unwrap();
        assert_eq!(gf.g, GVector::new(vec![0, 1]));
        assert_eq!(gf.f, FPolynomial::one(2));

        // w empty: same as gf_of_monomial
        let gf0 = cache.gf_with_respect_to(&b, &u, &MutationSequence::empty()).unwrap();
        assert_eq!(gf0, cache.gf_of_monomial(&b, &u).unwrap());
        assert_eq!(gf0.g, GVector::new(vec![-1, 0]));

        // w = [1]: g with respect to t1 is (1,-1)
        let gf1 = cache.gf_with_respect_to(&b, &u, &seq(&[1])).unwrap();
        assert_eq!(gf1.g, GVector::new(vec![1, -1]));
    }

    #[test]
    fn separation_formula_examples() {
        let mut cache = PatternCache::new();
        let b = gallery::a2();

        let in_root = ClusterMonomialRef::new(MutationSequence::empty(), vec![2, 1]);
        assert!(cache.separation_check(&b, &in_root).unwrap());

        let e1_t1 = ClusterMonomialRef::variable(seq(&[1]), 2, 0);
        assert!(cache.separation_check(&b, &e1_t1).unwrap());

        let deep = ClusterMonomialRef::new(seq(&[1, 2, 1]), vec![1, 2]);
        assert!(cache.separation_check(&b, &deep).unwrap());
    }

    #[test]
    fn y_one_specialization_matches_trivial_pattern() {
        let b = gallery::a3();
        let path = seq(&[1, 2, 3, 2]);
        let principal = PrincipalSeed::root_seed(&b).apply_sequence(&path).unwrap();
        let trivial = Seed::root(&b).apply_sequence(&path).unwrap();
        for k in 0..3 {
            assert_eq!(principal.specialize_y_one(k), trivial.cluster()[k]);
        }
    }

    #[test]
    fn row_sign_coherence_on_a_sample() {
        let b = gallery::a2();
        let mut s = PrincipalSeed::root_seed(&b);
        for k in [0usize, 1, 0, 1] {
            s = s.mutate(k).unwrap();
            assert!(s.g_matrix_row_sign_coherent().unwrap());
        }
    }
}
