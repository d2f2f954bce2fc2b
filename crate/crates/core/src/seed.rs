//! Seeds, Y-seeds and mutation along labeled edges of the n-regular tree.
//!
//! Cluster entries are stored as their Laurent expansions in the root
//! cluster, so equality of cluster variables across vertices is literal
//! polynomial equality. Directions are 0-based throughout the crate; the
//! CLI converts from the 1-based convention used in files.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fraction::SubtractionFreeFraction;
use crate::matrix::{plus, ExchangeMatrix};
use crate::poly::LaurentPoly;

/// A finite walk in the n-regular tree, addressing a vertex relative to
/// the root. Steps are 0-based directions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct MutationSequence(Vec<usize>);

impl MutationSequence {
    pub fn new(steps: Vec<usize>) -> Self {
        MutationSequence(steps)
    }

    pub fn empty() -> Self {
        MutationSequence(Vec::new())
    }

    /// Convert from the 1-based convention of the paper and the CLI.
    pub fn from_one_based(steps: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(steps.len());
        for &s in steps {
            if s == 0 {
                return Err(Error::BadInput("mutation directions are 1-based in input".into()));
            }
            out.push(s - 1);
        }
        Ok(MutationSequence(out))
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix(&self, len: usize) -> Self {
        MutationSequence(self.0[..len].to_vec())
    }

    pub fn extended(&self, k: usize) -> Self {
        let mut steps = self.0.clone();
        steps.push(k);
        MutationSequence(steps)
    }

    pub fn reversed(&self) -> Self {
        MutationSequence(self.0.iter().rev().copied().collect())
    }

    /// Concatenation: this walk followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        let mut steps = self.0.clone();
        steps.extend_from_slice(&other.0);
        MutationSequence(steps)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&s| s + 1).collect()
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s + 1)?;
        }
        write!(f, "]")
    }
}

/// Names a cluster monomial intrinsically: the product of the cluster
/// variables at the vertex addressed by `path`, with nonnegative
/// exponents `v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ClusterMonomialRef {
    pub path: MutationSequence,
    pub exponents: Vec<u64>,
}

impl ClusterMonomialRef {
    pub fn new(path: MutationSequence, exponents: Vec<u64>) -> Self {
        ClusterMonomialRef { path, exponents }
    }

    /// The single variable `x_{k;path}`.
    pub fn variable(path: MutationSequence, n: usize, k: usize) -> Self {
        let mut exponents = vec![0; n];
        exponents[k] = 1;
        ClusterMonomialRef { path, exponents }
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }
}

impl fmt::Display for ClusterMonomialRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{path: {}, exponents: {:?}}}", self.path, self.exponents)
    }
}

/// A seed with trivial coefficients: exchange matrix plus the cluster,
/// each entry expanded in the root cluster.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Seed {
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
    path: MutationSequence,
}

impl Seed {
    /// The root seed: cluster `(x_1, ..., x_n)`, empty path.
    pub fn root(b0: &ExchangeMatrix) -> Self {
        let n = b0.rank();
        Seed {
            matrix: b0.clone(),
            cluster: (0..n).map(|i| LaurentPoly::variable(n, i)).collect(),
            path: MutationSequence::empty(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn path(&self) -> &MutationSequence {
        &self.path
    }

    /// Seed mutation in direction `k`:
    /// `x_k' = x_k^{-1} (prod_j x_j^{[b_jk]_+} + prod_j x_j^{[-b_jk]_+})`.
    ///
    /// The division is exact by the Laurent phenomenon; `InexactDivision`
    /// here would signal an implementation bug.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::DirectionOutOfRange { direction: k, rank: n });
        }
        let mut pos = LaurentPoly::one(n);
        let mut neg = LaurentPoly::one(n);
        for j in 0..n {
            let bjk = self.matrix.entry(j, k);
            if bjk > 0 {
                pos = pos.try_mul(&self.cluster[j].pow(bjk as u64))?;
            } else if bjk < 0 {
                neg = neg.try_mul(&self.cluster[j].pow((-bjk) as u64))?;
            }
        }
        let binomial = pos.try_add(&neg)?;
        let new_entry = binomial.try_div_exact(&self.cluster[k])?;

        let mut cluster = self.cluster.clone();
        cluster[k] = new_entry;
        Ok(Seed {
            matrix: self.matrix.mutate(k)?,
            cluster,
            path: self.path.extended(k),
        })
    }

    /// Left-to-right composition of single-step mutations.
    pub fn apply_sequence(&self, seq: &MutationSequence) -> Result<Self> {
        let mut seed = self.clone();
        for &k in seq.steps() {
            seed = seed.mutate(k)?;
        }
        Ok(seed)
    }

    /// `prod_i cluster[i]^{v_i}`, the expansion of a cluster monomial.
    pub fn expand_monomial(&self, exponents: &[u64]) -> Result<LaurentPoly> {
        if exponents.len() != self.rank() {
            return Err(Error::LengthMismatch { expected: self.rank(), got: exponents.len() });
        }
        let mut out = LaurentPoly::one(self.rank());
        for (entry, &v) in self.cluster.iter().zip(exponents) {
            if v > 0 {
                out = out.try_mul(&entry.pow(v))?;
            }
        }
        Ok(out)
    }

    /// `hat y_k = prod_j cluster[j]^{b_jk}`, the monomial with exponent
    /// vector equal to column `k` of the seed's matrix evaluated in the
    /// seed's cluster values. A Laurent monomial at the root; at other
    /// vertices the product is formed by exact division and may fail.
    pub fn hat_y(&self, k: usize) -> Result<LaurentPoly> {
        let n = self.rank();
        if k >= n {
            return Err(Error::DirectionOutOfRange { direction: k, rank: n });
        }
        let mut pos = LaurentPoly::one(n);
        let mut neg = LaurentPoly::one(n);
        for j in 0..n {
            let bjk = self.matrix.entry(j, k);
            if bjk > 0 {
                pos = pos.try_mul(&self.cluster[j].pow(bjk as u64))?;
            } else if bjk < 0 {
                neg = neg.try_mul(&self.cluster[j].pow((-bjk) as u64))?;
            }
        }
        pos.try_div_exact(&neg)
    }

    /// Same matrix and same cluster values; the walk taken is ignored.
    pub fn same_seed_as(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.cluster == other.cluster
    }
}

/// A Y-seed: exchange matrix plus subtraction-free y-variables expressed
/// in the root y-variables.
#[derive(Clone, PartialEq, Debug)]
pub struct YSeed {
    matrix: ExchangeMatrix,
    yvars: Vec<SubtractionFreeFraction>,
}

impl YSeed {
    pub fn root(b0: &ExchangeMatrix) -> Self {
        let n = b0.rank();
        YSeed {
            matrix: b0.clone(),
            yvars: (0..n).map(|i| SubtractionFreeFraction::variable(n, i)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn yvars(&self) -> &[SubtractionFreeFraction] {
        &self.yvars
    }

    /// Y-seed mutation in direction `k`:
    /// `y_k' = y_k^{-1}`, and for `i != k`
    /// `y_i' = y_i y_k^{[b_ki]_+} (1 + y_k)^{-b_ki}`.
    ///
    /// The `(1+y_k)` power multiplies the denominator when `b_ki > 0` and
    /// the numerator when `b_ki < 0`, keeping the subtraction-free witness.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::DirectionOutOfRange { direction: k, rank: n });
        }
        let yk = &self.yvars[k];
        let one_plus_yk = yk.one_plus();
        let mut yvars = Vec::with_capacity(n);
        for i in 0..n {
            if i == k {
                yvars.push(yk.inverted());
            } else {
                let bki = self.matrix.entry(k, i);
                let mut v = self.yvars[i].mul(&yk.pow(plus(bki)));
                v = v.mul(&one_plus_yk.pow(-bki));
                yvars.push(v);
            }
        }
        Ok(YSeed { matrix: self.matrix.mutate(k)?, yvars })
    }

    pub fn apply_sequence(&self, seq: &MutationSequence) -> Result<Self> {
        let mut seed = self.clone();
        for &k in seq.steps() {
            seed = seed.mutate(k)?;
        }
        Ok(seed)
    }

    /// All y-variables subtraction-free: positive parts, syntactically.
    pub fn is_subtraction_free(&self) -> bool {
        self.yvars.iter().all(|y| {
            y.numerator().has_positive_coeffs()
                && y.denominator().has_positive_coeffs()
                && !y.numerator().is_zero()
                && !y.denominator().is_zero()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gallery;
    use crate::poly::{Coeff, ExponentVector};

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
    fn a2_first_mutation() {
        let s = Seed::root(&gallery::a2()).mutate(0).unwrap();
        // x1' = (1 + x2)/x1 = x1^{-1} + x1^{-1} x2
        let expect = poly(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]);
        assert_eq!(s.cluster()[0], expect);
        assert_eq!(s.cluster()[1], LaurentPoly::variable(2, 1));
        assert_eq!(s.path(), &seq(&[1]));
    }

    #[test]
    fn seed_mutation_is_an_involution() {
        let root = Seed::root(&gallery::a3());
        for k in 0..3 {
            let back = root.mutate(k).unwrap().mutate(k).unwrap();
            assert!(back.same_seed_as(&root));
            assert_eq!(back.path(), &MutationSequence::new(vec![k, k]));
        }
    }

    #[test]
    fn rank_one_mutation() {
        let b = ExchangeMatrix::new(vec![vec![0]]).unwrap();
        let s = Seed::root(&b).mutate(0).unwrap();
        // both exchange products are empty: x1' = (1+1)/x1 = 2 x1^{-1}
        assert_eq!(s.cluster()[0], poly(1, &[(&[-1], 2)]));
    }

    #[test]
    fn empty_sequence_is_identity() {
        let root = Seed::root(&gallery::a2());
        assert_eq!(root.apply_sequence(&MutationSequence::empty()).unwrap(), root);
    }

    #[test]
    fn a2_pentagon_periodicity() {
        // mu_1 mu_2 mu_1 mu_2 mu_1 swaps the two initial variables.
        let root = Seed::root(&gallery::a2());
        let s = root.apply_sequence(&seq(&[1, 2, 1, 2, 1])).unwrap();
        assert_eq!(s.cluster()[0], LaurentPoly::variable(2, 1));
        assert_eq!(s.cluster()[1], LaurentPoly::variable(2, 0));
        assert_eq!(s.matrix(), &gallery::a2().mutate(0).unwrap());
    }

    #[test]
    fn laurent_phenomenon_along_random_walks() {
        // depth-8 walks in rank <= 4 never hit InexactDivision
        let b = ExchangeMatrix::new(vec![
            vec![0, 1, 0, -1],
            vec![-1, 0, 2, 0],
            vec![0, -2, 0, 1],
            vec![1, 0, -1, 0],
        ])
        .unwrap();
        let mut seed = Seed::root(&b);
        for step in [0usize, 1, 2, 3, 2, 1, 0, 3] {
            seed = seed.mutate(step).expect("Laurent phenomenon");
        }
        assert!(seed.cluster().iter().all(|p| !p.is_zero()));
    }

    #[test]
    fn a2_y_seed_mutation() {
        let y = YSeed::root(&gallery::a2()).mutate(0).unwrap();
        // y1' = y1^{-1}
        assert_eq!(y.yvars()[0], SubtractionFreeFraction::variable(2, 0).inverted());
        // y2' = y2 y1 / (1 + y1)   (b_12 = 1)
        let expect = SubtractionFreeFraction::new(
            poly(2, &[(&[1, 1], 1)]),
            poly(2, &[(&[0, 0], 1), (&[1, 0], 1)]),
        )
        .unwrap();
        assert_eq!(y.yvars()[1], expect);
        assert!(y.is_subtraction_free());
    }

    #[test]
    fn y_seed_mutation_is_an_involution_up_to_value() {
        for b in [gallery::a2(), gallery::b2(), gallery::g2(), gallery::c3()] {
            let root = YSeed::root(&b);
            for k in 0..b.rank() {
                let back = root.mutate(k).unwrap().mutate(k).unwrap();
                assert_eq!(back, root);
            }
        }
    }

    #[test]
    fn rank_one_y_mutation() {
        let b = ExchangeMatrix::new(vec![vec![0]]).unwrap();
        let y = YSeed::root(&b).mutate(0).unwrap();
        assert_eq!(y.yvars()[0], SubtractionFreeFraction::variable(1, 0).inverted());
    }

    #[test]
    fn y_walk_stays_subtraction_free() {
        let mut y = YSeed::root(&gallery::c3());
        for step in [0usize, 1, 2, 1, 0] {
            y = y.mutate(step).unwrap();
            assert!(y.is_subtraction_free());
        }
    }

    #[test]
    fn hat_y_examples() {
        let root = Seed::root(&gallery::a2());
        // column 1 of B is (0,-1): hat y_1 = x2^{-1}
        assert_eq!(root.hat_y(0).unwrap(), poly(2, &[(&[0, -1], 1)]));
        // column 2 is (1,0): hat y_2 = x1
        assert_eq!(root.hat_y(1).unwrap(), LaurentPoly::variable(2, 0));
        // zero matrix: hat y_k = 1
        let z = ExchangeMatrix::new(vec![vec![0, 0], vec![0, 0]]).unwrap();
        let zr = Seed::root(&z);
        assert_eq!(zr.hat_y(0).unwrap(), LaurentPoly::one(2));
        assert_eq!(zr.hat_y(1).unwrap(), LaurentPoly::one(2));
    }

    #[test]
    fn expand_monomial_multiplies_entries() {
        let s = Seed::root(&gallery::a2()).apply_sequence(&seq(&[1])).unwrap();
        let got = s.expand_monomial(&[1, 2]).unwrap();
        let expect = &s.cluster()[0] * &(&s.cluster()[1] * &s.cluster()[1]);
        assert_eq!(got, expect);
        assert_eq!(s.expand_monomial(&[0, 0]).unwrap(), LaurentPoly::one(2));
    }

    #[test]
    fn one_based_conversion() {
        assert!(MutationSequence::from_one_based(&[0]).is_err());
        assert_eq!(seq(&[1, 2]).steps(), &[0, 1]);
        assert_eq!(seq(&[1, 2]).one_based(), vec![1, 2]);
        assert_eq!(seq(&[1, 2]).reversed().steps(), &[1, 0]);
        assert_eq!(seq(&[1, 2]).then(&seq(&[2, 1])).steps(), &[0, 1, 1, 0]);
    }
}
