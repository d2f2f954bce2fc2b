//! Skew-symmetrizable exchange matrices, their mutation, and
//! skew-symmetrizer computation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// `[a]_+ = max(a, 0)` on exact integers.
pub fn plus(a: i64) -> i64 {
    a.max(0)
}

/// An `n x n` skew-symmetrizable integer matrix. Checked at construction:
/// some positive integer diagonal `S` makes `S·B` skew-symmetric.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ExchangeMatrix {
    n: usize,
    b: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self> {
        let n = b.len();
        if n == 0 {
            return Err(Error::BadInput("exchange matrix must have positive rank".into()));
        }
        if b.iter().any(|row| row.len() != n) {
            return Err(Error::BadInput("exchange matrix must be square".into()));
        }
        find_skew_symmetrizer(&b)?;
        Ok(ExchangeMatrix { n, b })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.b[i][k]).collect()
    }

    /// Matrix mutation in direction `k` (0-based):
    /// `b'_ij = -b_ij` if `i == k` or `j == k`, else
    /// `b_ij + [b_ik]_+ [b_kj]_+ - [-b_ik]_+ [-b_kj]_+`.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::DirectionOutOfRange { direction: k, rank: self.n });
        }
        let b = mutate_rows(&self.b, self.n, k);
        Ok(ExchangeMatrix { n: self.n, b })
    }

    /// The componentwise-minimal positive symmetrizer.
    pub fn symmetrizer(&self) -> SkewSymmetrizer {
        find_skew_symmetrizer(&self.b).expect("validated at construction")
    }

    /// Rows and columns permuted simultaneously: `b'[i][j] = b[p[i]][p[j]]`.
    pub fn permuted(&self, p: &[usize]) -> Self {
        let b = p
            .iter()
            .map(|&i| p.iter().map(|&j| self.b[i][j]).collect())
            .collect();
        ExchangeMatrix { n: self.n, b }
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.b[i][j] == -self.b[j][i]))
    }
}

/// The shared mutation kernel: mutates `rows x n` entries at direction
/// `k < n`. Extended (2n x n) matrices reuse it with all rows in play.
pub(crate) fn mutate_rows(b: &[Vec<i64>], ncols: usize, k: usize) -> Vec<Vec<i64>> {
    let nrows = b.len();
    let mut out = vec![vec![0i64; ncols]; nrows];
    for i in 0..nrows {
        for j in 0..ncols {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                let pp = plus(b[i][k]).checked_mul(plus(b[k][j])).expect("entry overflow");
                let mm = plus(-b[i][k]).checked_mul(plus(-b[k][j])).expect("entry overflow");
                b[i][j]
                    .checked_add(pp)
                    .and_then(|x| x.checked_sub(mm))
                    .expect("entry overflow")
            };
        }
    }
    out
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.b {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

/// A positive integer diagonal `S` with `S·B` skew-symmetric,
/// componentwise minimal per connected component of the dependency graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewSymmetrizer {
    s: Vec<i64>,
}

impl SkewSymmetrizer {
    /// Wrap a caller-supplied diagonal, validating positivity only.
    /// Use [`SkewSymmetrizer::validated_for`] to also check it against a
    /// matrix.
    pub fn new(s: Vec<i64>) -> Result<Self> {
        if s.is_empty() || s.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidSymmetrizer);
        }
        Ok(SkewSymmetrizer { s })
    }

    pub fn validated_for(s: Vec<i64>, b: &ExchangeMatrix) -> Result<Self> {
        let sym = Self::new(s)?;
        if !sym.is_valid_for(b) {
            return Err(Error::InvalidSymmetrizer);
        }
        Ok(sym)
    }

    pub fn identity(n: usize) -> Self {
        SkewSymmetrizer { s: vec![1; n] }
    }

    pub fn diagonal(&self) -> &[i64] {
        &self.s
    }

    pub fn get(&self, i: usize) -> i64 {
        self.s[i]
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `s_i·b_ij == -s_j·b_ji` for all i, j.
    pub fn is_valid_for(&self, b: &ExchangeMatrix) -> bool {
        let n = b.rank();
        self.s.len() == n
            && (0..n).all(|i| {
                (0..n).all(|j| self.s[i] * b.entry(i, j) == -self.s[j] * b.entry(j, i))
            })
    }

    /// Scale a g-vector-like integer vector componentwise.
    pub fn scale(&self, v: &[i64]) -> Vec<i64> {
        self.s.iter().zip(v).map(|(&si, &vi)| si * vi).collect()
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i64, b: i64) -> i64 {
    a / gcd(a, b) * b
}

/// Find the componentwise-minimal positive integer `S` with `S·B`
/// skew-symmetric, or explain why none exists.
///
/// Ratios `s_i·|b_ij| = s_j·|b_ji|` propagate over a spanning tree of each
/// connected component of the graph with edges `{i, j : b_ij != 0}`; the
/// component is then scaled to the least positive integer solution.
/// Isolated vertices get `s_i = 1`.
pub fn find_skew_symmetrizer(b: &[Vec<i64>]) -> Result<SkewSymmetrizer> {
    let n = b.len();
    if n == 0 || b.iter().any(|row| row.len() != n) {
        return Err(Error::BadInput("symmetrizer needs a nonempty square matrix".into()));
    }
    for i in 0..n {
        if b[i][i] != 0 {
            return Err(Error::NotSkewSymmetrizable(format!("b[{i}][{i}] != 0")));
        }
        for j in 0..n {
            let (x, y) = (b[i][j], b[j][i]);
            if (x == 0) != (y == 0) || x.signum() == y.signum() && x != 0 {
                return Err(Error::NotSkewSymmetrizable(sign_complaint(i, j)));
            }
        }
    }

    // Rational weights per component: s_i = num_i / den_i relative to the
    // component root, reduced at every step.
    let mut weight: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut queue: Vec<usize> = Vec::new();
    for root in 0..n {
        if weight[root].is_some() {
            continue;
        }
        weight[root] = Some((1, 1));
        queue.push(root);
        let mut component = vec![root];
        while let Some(i) = queue.pop() {
            let (ni, di) = weight[i].expect("visited");
            for j in 0..n {
                if b[i][j] == 0 {
                    continue;
                }
                // s_i |b_ij| = s_j |b_ji|  =>  s_j = s_i |b_ij| / |b_ji|
                let num = ni.checked_mul(b[i][j].abs()).expect("symmetrizer overflow");
                let den = di.checked_mul(b[j][i].abs()).expect("symmetrizer overflow");
                let g = gcd(num, den);
                let cand = (num / g, den / g);
                match weight[j] {
                    None => {
                        weight[j] = Some(cand);
                        component.push(j);
                        queue.push(j);
                    }
                    Some(existing) => {
                        if existing != cand {
                            return Err(Error::NotSkewSymmetrizable(format!(
                                "inconsistent ratio constraints at ({i},{j})"
                            )));
                        }
                    }
                }
            }
        }
        // Scale the component to the least positive integer solution.
        let denom_lcm = component
            .iter()
            .fold(1i64, |acc, &i| lcm(acc, weight[i].expect("component").1));
        let mut ints: Vec<i64> = component
            .iter()
            .map(|&i| {
                let (ni, di) = weight[i].expect("component");
                ni * (denom_lcm / di)
            })
            .collect();
        let g = ints.iter().fold(0i64, |acc, &x| gcd(acc, x));
        for x in &mut ints {
            *x /= g;
        }
        for (&i, &si) in component.iter().zip(&ints) {
            weight[i] = Some((si, 1));
        }
    }

    let s: Vec<i64> = weight.into_iter().map(|w| w.expect("all visited").0).collect();
    // Final check; the ratio propagation plus the sign screen implies it,
    // but it is cheap and guards the construction end to end.
    for i in 0..n {
        for j in 0..n {
            if s[i] * b[i][j] != -s[j] * b[j][i] {
                return Err(Error::NotSkewSymmetrizable(sign_complaint(i, j)));
            }
        }
    }
    SkewSymmetrizer::new(s)
}

fn sign_complaint(i: usize, j: usize) -> String {
    format!("sign pattern violated at ({i},{j})")
}

/// Named matrices used across the test suites.
pub mod gallery {
    use super::ExchangeMatrix;
    use alloc::vec;

    pub fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).expect("A2")
    }

    pub fn a3() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).expect("A3")
    }

    pub fn b2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 2], vec![-1, 0]]).expect("B2")
    }

    pub fn c3() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -2, 0]]).expect("C3")
    }

    pub fn g2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1], vec![-3, 0]]).expect("G2")
    }

    /// The Markov quiver: mutation-infinite, the classic stress test.
    pub fn markov() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).expect("Markov")
    }
}
