//! Direct g-/q-vector recurrences, the tropical semifield homomorphism,
//! and the F-invariant of a pair of cluster monomials.
//!
//! The F-invariant is the symmetrized tropical pairing
//! `(u || u')_F = F_u^t[S g_{u'}^t] + F_{u'}^t[S g_u^t]`; it does not
//! depend on the vertex `t`, and it vanishes exactly when `u u'` is again
//! a cluster monomial.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::{plus, ExchangeMatrix, SkewSymmetrizer};
use crate::principal::{GVector, PatternCache};
use crate::seed::{ClusterMonomialRef, MutationSequence, YSeed};
use crate::tropical::sff_eval_tropical;

/// `q = S g`, the symmetrizer-scaled g-vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QVector(Vec<i64>);

impl QVector {
    pub fn new(q: Vec<i64>) -> Self {
        QVector(q)
    }

    pub fn from_g(s: &SkewSymmetrizer, g: &GVector) -> Self {
        QVector(s.scale(g.entries()))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }
}

/// One step of the g-vector recurrence along the edge `t --k-- t'`:
/// `g_k' = -g_k` and `g_i' = g_i + [-b_ik]_+ g_k + b_ik [g_k]_+` for
/// `i != k`, where `B_t` is the exchange matrix at `t`.
pub fn g_recurrence_step(g: &GVector, b_t: &ExchangeMatrix, k: usize) -> Result<GVector> {
    let n = b_t.rank();
    if k >= n {
        return Err(Error::DirectionOutOfRange { direction: k, rank: n });
    }
    if g.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: g.len() });
    }
    let gk = g.get(k);
    let out = (0..n)
        .map(|i| {
            if i == k {
                -gk
            } else {
                let bik = b_t.entry(i, k);
                g.get(i) + plus(-bik) * gk + bik * plus(gk)
            }
        })
        .collect();
    Ok(GVector::new(out))
}

/// One step of the q-vector recurrence:
/// `q_k' = -q_k` and `q_i' = q_i + [b_ki]_+ q_k - b_ki [q_k]_+` for
/// `i != k`. Note the transposed entry `b_ki` relative to the g-step.
pub fn q_recurrence_step(q: &QVector, b_t: &ExchangeMatrix, k: usize) -> Result<QVector> {
    let n = b_t.rank();
    if k >= n {
        return Err(Error::DirectionOutOfRange { direction: k, rank: n });
    }
    if q.entries().len() != n {
        return Err(Error::LengthMismatch { expected: n, got: q.entries().len() });
    }
    let qk = q.get(k);
    let out = (0..n)
        .map(|i| {
            if i == k {
                -qk
            } else {
                let bki = b_t.entry(k, i);
                q.get(i) + plus(bki) * qk - bki * plus(qk)
            }
        })
        .collect();
    Ok(QVector::new(out))
}

fn validated<'s>(b0: &ExchangeMatrix, s: &'s SkewSymmetrizer) -> Result<&'s SkewSymmetrizer> {
    if !s.is_valid_for(b0) {
        return Err(Error::InvalidSymmetrizer);
    }
    Ok(s)
}

/// The semifield homomorphism `rho_u` applied to `y_{i;target}`: the
/// y-variable at vertex `target` (as a subtraction-free fraction in the
/// root y-variables) evaluated tropically at `r = S g_u^{t0}`.
///
/// By the homomorphism property this equals `s_i g_{i;u}^{target}`.
pub fn rho_eval(
    cache: &mut PatternCache,
    b0: &ExchangeMatrix,
    u: &ClusterMonomialRef,
    target: &MutationSequence,
    i: usize,
    s: &SkewSymmetrizer,
) -> Result<i64> {
    validated(b0, s)?;
    if i >= b0.rank() {
        return Err(Error::DirectionOutOfRange { direction: i, rank: b0.rank() });
    }
    let g_root = cache.gf_of_monomial(b0, u)?.g;
    let r = s.scale(g_root.entries());
    let yseed = YSeed::root(b0).apply_sequence(target)?;
    Ok(sff_eval_tropical(&yseed.yvars()[i], &r)?.0)
}

/// The one-sided tropical pairing `F_u^w[S g_{u'}^w] >= 0`.
pub fn f_inj(
    cache: &mut PatternCache,
    b0: &ExchangeMatrix,
    u: &ClusterMonomialRef,
    u2: &ClusterMonomialRef,
    w: &MutationSequence,
    s: &SkewSymmetrizer,
) -> Result<i64> {
    validated(b0, s)?;
    let f_u = cache.gf_with_respect_to(b0, u, w)?.f;
    let g_u2 = cache.gf_with_respect_to(b0, u2, w)?.g;
    Ok(f_u.tropical(&s.scale(g_u2.entries())))
}

/// The F-invariant evaluated at a vertex, with both one-sided pairings
/// kept for reporting. `value` is vertex-independent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FInvariantResult {
    pub value: i64,
    pub left: i64,
    pub right: i64,
    pub vertex: MutationSequence,
}

impl fmt::Display for FInvariantResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(u||u')_F = {} (left {} + right {} at vertex {})",
            self.value, self.left, self.right, self.vertex
        )
    }
}

/// `(u || u')_F = F_u^w[S g_{u'}^w] + F_{u'}^w[S g_u^w]`, computed at the
/// vertex addressed by `w`.
pub fn f_invariant(
    cache: &mut PatternCache,
    b0: &ExchangeMatrix,
    u: &ClusterMonomialRef,
    u2: &ClusterMonomialRef,
    w: &MutationSequence,
    s: &SkewSymmetrizer,
) -> Result<FInvariantResult> {
    let left = f_inj(cache, b0, u, u2, w, s)?;
    let right = f_inj(cache, b0, u2, u, w, s)?;
    // Constant term 1 puts the zero vector in every support, so each
    // pairing is nonnegative.
    debug_assert!(left >= 0 && right >= 0);
    Ok(FInvariantResult { value: left + right, left, right, vertex: w.clone() })
}

/// The exchange step of the one-sided pairing along `t --k-- t'` with
/// `t` at `w`:
/// `F_u^{t'}[S g_{u'}^{t'}] - F_u^t[S g_{u'}^t]
///    = s_k ([-g_{k;u}^{t'}]_+ [-g_{k;u'}^t]_+ - [-g_{k;u}^t]_+ [-g_{k;u'}^{t'}]_+)`.
/// Returns true iff both sides agree exactly.
pub fn check_finv_recurrence(
    cache: &mut PatternCache,
    b0: &ExchangeMatrix,
    u: &ClusterMonomialRef,
    u2: &ClusterMonomialRef,
    w: &MutationSequence,
    k: usize,
    s: &SkewSymmetrizer,
) -> Result<bool> {
    validated(b0, s)?;
    if k >= b0.rank() {
        return Err(Error::DirectionOutOfRange { direction: k, rank: b0.rank() });
    }
    let w2 = w.extended(k);
    let u_at_t = cache.gf_with_respect_to(b0, u, w)?;
    let u_at_t2 = cache.gf_with_respect_to(b0, u, &w2)?;
    let u2_at_t = cache.gf_with_respect_to(b0, u2, w)?;
    let u2_at_t2 = cache.gf_with_respect_to(b0, u2, &w2)?;

    let lhs = u_at_t2.f.tropical(&s.scale(u2_at_t2.g.entries()))
        - u_at_t.f.tropical(&s.scale(u2_at_t.g.entries()));
    let rhs = s.get(k)
        * (plus(-u_at_t2.g.get(k)) * plus(-u2_at_t.g.get(k))
            - plus(-u_at_t.g.get(k)) * plus(-u2_at_t2.g.get(k)));
    Ok(lhs == rhs)
}

/// Bounded sign-coherence of a pair: `g_{k;u}^t g_{k;u'}^t >= 0` for every
/// vertex in `vertex_set` and every component `k`. The exact (all of the
/// tree) predicate is `f_invariant == 0`.
pub fn sign_coherent_pair(
    cache: &mut PatternCache,
    b0: &ExchangeMatrix,
    u: &ClusterMonomialRef,
    u2: &ClusterMonomialRef,
    vertex_set: &[MutationSequence],
) -> Result<bool> {
    for t in vertex_set {
        let g_u = cache.gf_with_respect_to(b0, u, t)?.g;
        let g_u2 = cache.gf_with_respect_to(b0, u2, t)?.g;
        for k in 0..b0.rank() {
            if g_u.get(k) * g_u2.get(k) < 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
