//! Named, configurable theorem-check suites binding the other modules
//! into executable statements: involutivity, the Laurent phenomenon,
//! F-polynomial positivity and sign-coherence, the g-vector recurrence,
//! the tropical homomorphism, the F-polynomial exchange identity, the
//! F-invariant recurrence and its vertex-independence, and the
//! separation theorem.
//!
//! Every suite is deterministic given the configured RNG seed, and a
//! failing report carries a replayable counterexample: the inputs plus
//! both sides of the violated equality.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::explore::{check_separation_theorem, DEFAULT_NODE_CAP};
use crate::fraction::SubtractionFreeFraction;
use crate::invariant::{
    check_finv_recurrence, f_invariant, g_recurrence_step, q_recurrence_step, rho_eval, QVector,
};
use crate::matrix::{gallery, plus, ExchangeMatrix, SkewSymmetrizer};
use crate::poly::LaurentPoly;
use crate::principal::{PatternCache, PrincipalSeed};
use crate::seed::{ClusterMonomialRef, MutationSequence, Seed, YSeed};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SuiteName {
    Involution,
    Laurent,
    Ghkk,
    GRecurrence,
    Rho,
    FExchange,
    FinvRecurrence,
    FinvInvariance,
    Separation,
}

impl SuiteName {
    pub const ALL: [SuiteName; 9] = [
        SuiteName::Involution,
        SuiteName::Laurent,
        SuiteName::Ghkk,
        SuiteName::GRecurrence,
        SuiteName::Rho,
        SuiteName::FExchange,
        SuiteName::FinvRecurrence,
        SuiteName::FinvInvariance,
        SuiteName::Separation,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Involution => "involution",
            SuiteName::Laurent => "laurent",
            SuiteName::Ghkk => "ghkk",
            SuiteName::GRecurrence => "g-recurrence",
            SuiteName::Rho => "rho",
            SuiteName::FExchange => "f-exchange",
            SuiteName::FinvRecurrence => "finv-recurrence",
            SuiteName::FinvInvariance => "finv-invariance",
            SuiteName::Separation => "separation",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::BadInput(format!("unknown suite name: {s}")))
    }
}

/// What a suite runs against: the matrix, walk depth, randomized sample
/// count, RNG seed, and an optional symmetrizer override (validated).
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub matrix: ExchangeMatrix,
    pub depth: usize,
    pub trials: usize,
    pub seed: u64,
    pub symmetrizer: Option<SkewSymmetrizer>,
}

impl SuiteConfig {
    pub fn new(matrix: ExchangeMatrix) -> Self {
        SuiteConfig { matrix, depth: 4, trials: 100, seed: 0, symmetrizer: None }
    }

    pub fn with_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_symmetrizer(mut self, s: SkewSymmetrizer) -> Self {
        self.symmetrizer = Some(s);
        self
    }

    fn resolve_symmetrizer(&self) -> Result<SkewSymmetrizer> {
        match &self.symmetrizer {
            Some(s) => {
                if !s.is_valid_for(&self.matrix) {
                    return Err(Error::InvalidSymmetrizer);
                }
                Ok(s.clone())
            }
            None => Ok(self.matrix.symmetrizer()),
        }
    }
}

/// Replayable failure: inputs plus both sides of the violated equality.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub pass: bool,
    pub assertions: u64,
    pub counterexample: Option<Counterexample>,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "suite {}: {} ({} assertions)",
            self.suite,
            if self.pass { "pass" } else { "FAIL" },
            self.assertions
        )?;
        if let Some(ce) = &self.counterexample {
            write!(f, "\n  inputs: {}\n  lhs: {}\n  rhs: {}", ce.inputs, ce.lhs, ce.rhs)?;
        }
        Ok(())
    }
}

struct Tally {
    suite: SuiteName,
    assertions: u64,
    failure: Option<Counterexample>,
}

impl Tally {
    fn new(suite: SuiteName) -> Self {
        Tally { suite, assertions: 0, failure: None }
    }

    /// Record one assertion; keeps the first counterexample.
    fn check(&mut self, ok: bool, mk: impl FnOnce() -> Counterexample) -> bool {
        self.assertions += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(mk());
        }
        ok
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn report(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            pass: self.failure.is_none(),
            assertions: self.assertions,
            counterexample: self.failure,
        }
    }
}

/// Run the named suite deterministically under `cfg.seed`.
pub fn run_suite(name: SuiteName, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.trials == 0 {
        return Err(Error::BadInput("trials must be at least 1".into()));
    }
    match name {
        SuiteName::Involution => suite_involution(cfg),
        SuiteName::Laurent => suite_laurent(cfg),
        SuiteName::Ghkk => suite_ghkk(cfg),
        SuiteName::GRecurrence => suite_g_recurrence(cfg),
        SuiteName::Rho => suite_rho(cfg),
        SuiteName::FExchange => suite_f_exchange(cfg),
        SuiteName::FinvRecurrence => suite_finv_recurrence(cfg),
        SuiteName::FinvInvariance => suite_finv_invariance(cfg),
        SuiteName::Separation => suite_separation(cfg),
    }
}

// ---- Shared enumeration helpers ----

/// All non-backtracking walks of length at most `depth`, in breadth-first
/// order. These address pairwise distinct vertices of the n-regular tree.
pub fn tree_vertices(n: usize, depth: usize) -> Vec<MutationSequence> {
    let mut out = vec![MutationSequence::empty()];
    let mut frontier = vec![MutationSequence::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for path in &frontier {
            let last = path.steps().last().copied();
            for k in 0..n {
                if Some(k) == last {
                    continue;
                }
                let ext = path.extended(k);
                out.push(ext.clone());
                next.push(ext);
            }
        }
        frontier = next;
    }
    out
}

/// Cluster variables discoverable within `depth` mutations of the root,
/// deduplicated by root expansion, each with a representative reference.
pub fn variables_within_depth(
    b0: &ExchangeMatrix,
    depth: usize,
) -> Result<Vec<ClusterMonomialRef>> {
    let mut seen: alloc::collections::BTreeMap<LaurentPoly, ClusterMonomialRef> =
        alloc::collections::BTreeMap::new();
    for path in tree_vertices(b0.rank(), depth) {
        let seed = Seed::root(b0).apply_sequence(&path)?;
        for (k, entry) in seed.cluster().iter().enumerate() {
            seen.entry(entry.clone()).or_insert_with(|| {
                ClusterMonomialRef::variable(path.clone(), b0.rank(), k)
            });
        }
    }
    Ok(seen.into_values().collect())
}

fn matrix_at(b0: &ExchangeMatrix, path: &MutationSequence) -> Result<ExchangeMatrix> {
    let mut b = b0.clone();
    for &k in path.steps() {
        b = b.mutate(k)?;
    }
    Ok(b)
}

fn random_skew_symmetric(rng: &mut ChaCha8Rng) -> ExchangeMatrix {
    let n = rng.gen_range(1..=4usize);
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let e = rng.gen_range(-3..=3i64);
            b[i][j] = e;
            b[j][i] = -e;
        }
    }
    ExchangeMatrix::new(b).expect("skew-symmetric matrices are skew-symmetrizable")
}

fn random_vertex(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> MutationSequence {
    let len = rng.gen_range(0..=depth);
    let mut path = MutationSequence::empty();
    let mut last: Option<usize> = None;
    for _ in 0..len {
        if n == 1 {
            break;
        }
        let mut k = rng.gen_range(0..n);
        while Some(k) == last {
            k = rng.gen_range(0..n);
        }
        path = path.extended(k);
        last = Some(k);
    }
    path
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, depth: usize) -> ClusterMonomialRef {
    let path = random_vertex(rng, n, depth);
    let exponents = (0..n).map(|_| rng.gen_range(0..=2u64)).collect();
    ClusterMonomialRef::new(path, exponents)
}

fn matrix_display(b: &ExchangeMatrix) -> String {
    format!("{:?}", b.rows())
}

/// One step of the depth-bounded tree walk, handed to the visitor.
enum WalkEvent<'a> {
    /// A vertex was reached, with both pattern seeds.
    Vertex(&'a Seed, &'a PrincipalSeed),
    /// A mutation failed; carries the vertex, direction and error.
    MutationError(&'a MutationSequence, usize, &'a Error),
}

/// Walk the non-backtracking tree to `depth`, carrying both the
/// trivial-coefficient and the principal seed. The visitor returns false
/// to stop the walk.
fn walk_patterns(
    b0: &ExchangeMatrix,
    depth: usize,
    visit: &mut dyn FnMut(WalkEvent<'_>) -> bool,
) {
    fn rec(
        trivial: &Seed,
        principal: &PrincipalSeed,
        depth_left: usize,
        last: Option<usize>,
        visit: &mut dyn FnMut(WalkEvent<'_>) -> bool,
    ) -> bool {
        if !visit(WalkEvent::Vertex(trivial, principal)) {
            return false;
        }
        if depth_left == 0 {
            return true;
        }
        for k in 0..trivial.rank() {
            if Some(k) == last {
                continue;
            }
            let children = trivial.mutate(k).and_then(|t| Ok((t, principal.mutate(k)?)));
            match children {
                Ok((child_t, child_p)) => {
                    if !rec(&child_t, &child_p, depth_left - 1, Some(k), visit) {
                        return false;
                    }
                }
                Err(e) => {
                    if !visit(WalkEvent::MutationError(trivial.path(), k, &e)) {
                        return false;
                    }
                }
            }
        }
        true
    }
    rec(&Seed::root(b0), &PrincipalSeed::root_seed(b0), depth, None, visit);
}

// ---- Suites ----

/// mu_k^2 = id on matrices, seeds and Y-seeds, over the configured
/// matrix, the gallery {B2, C3, G2} and `trials` random skew-symmetric
/// matrices (n <= 4, entries in [-3,3]).
fn suite_involution(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::Involution);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut matrices = vec![cfg.matrix.clone(), gallery::b2(), gallery::c3(), gallery::g2()];
    for _ in 0..cfg.trials {
        matrices.push(random_skew_symmetric(&mut rng));
    }
    for b in &matrices {
        let root = Seed::root(b);
        let yroot = YSeed::root(b);
        for k in 0..b.rank() {
            let twice = b.mutate(k)?.mutate(k)?;
            tally.check(twice == *b, || Counterexample {
                inputs: format!("matrix {}, k={}", matrix_display(b), k + 1),
                lhs: matrix_display(&twice),
                rhs: matrix_display(b),
            });
            let seed_back = root.mutate(k)?.mutate(k)?;
            tally.check(seed_back.same_seed_as(&root), || Counterexample {
                inputs: format!("seed of {}, k={}", matrix_display(b), k + 1),
                lhs: format!("{:?}", seed_back.cluster()),
                rhs: format!("{:?}", root.cluster()),
            });
            let y_back = yroot.mutate(k)?.mutate(k)?;
            tally.check(y_back == yroot, || Counterexample {
                inputs: format!("Y-seed of {}, k={}", matrix_display(b), k + 1),
                lhs: format!("{:?}", y_back.yvars()),
                rhs: format!("{:?}", yroot.yvars()),
            });
            if tally.failed() {
                return Ok(tally.report());
            }
        }
        // matrix involutions away from the root
        let walk = random_vertex(&mut rng, b.rank(), cfg.depth);
        let bw = matrix_at(b, &walk)?;
        for k in 0..b.rank() {
            let twice = bw.mutate(k)?.mutate(k)?;
            tally.check(twice == bw, || Counterexample {
                inputs: format!("matrix {} at {}, k={}", matrix_display(b), walk, k + 1),
                lhs: matrix_display(&twice),
                rhs: matrix_display(&bw),
            });
        }
        if tally.failed() {
            return Ok(tally.report());
        }
    }
    Ok(tally.report())
}

/// The Laurent phenomenon witnessed operationally: no mutation along the
/// depth-bounded tree (trivial and principal patterns both) ever hits
/// InexactDivision, and Y-seeds stay subtraction-free.
fn suite_laurent(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::Laurent);
    walk_patterns(&cfg.matrix, cfg.depth, &mut |event| match event {
        WalkEvent::Vertex(trivial, principal) => tally.check(
            trivial.cluster().iter().all(|p| !p.is_zero())
                && principal.cluster().iter().all(|p| !p.is_zero()),
            || Counterexample {
                inputs: format!("vertex {}", trivial.path()),
                lhs: "zero cluster entry".into(),
                rhs: "nonzero Laurent polynomial".into(),
            },
        ),
        WalkEvent::MutationError(path, k, err) => tally.check(false, || Counterexample {
            inputs: format!("mutation at vertex {path}, k={}", k + 1),
            lhs: err.to_string(),
            rhs: "exact division (Laurent phenomenon)".into(),
        }),
    });
    // Y-pattern walks stay subtraction-free. Unreduced fractions grow
    // double-exponentially on wild inputs, so branches are pruned once a
    // seed outgrows a fixed term budget; the property is still checked on
    // everything visited.
    const Y_TERM_BUDGET: usize = 500;
    fn y_rec(
        y: &YSeed,
        depth_left: usize,
        last: Option<usize>,
        path: &MutationSequence,
        tally: &mut Tally,
    ) -> Result<()> {
        tally.check(y.is_subtraction_free(), || Counterexample {
            inputs: format!("Y-seed at {path}"),
            lhs: "subtraction appeared".into(),
            rhs: "subtraction-free".into(),
        });
        if tally.failed() || depth_left == 0 {
            return Ok(());
        }
        let size: usize = y
            .yvars()
            .iter()
            .map(|f| f.numerator().num_terms() + f.denominator().num_terms())
            .sum();
        if size > Y_TERM_BUDGET {
            return Ok(());
        }
        for k in 0..y.rank() {
            if Some(k) == last {
                continue;
            }
            y_rec(&y.mutate(k)?, depth_left - 1, Some(k), &path.extended(k), tally)?;
        }
        Ok(())
    }
    y_rec(
        &YSeed::root(&cfg.matrix),
        cfg.depth,
        None,
        &MutationSequence::empty(),
        &mut tally,
    )?;
    Ok(tally.report())
}

/// Theorem checks on the principal pattern: every F-polynomial has
/// constant term 1 and nonnegative coefficients, every cluster variable
/// is homogeneous, and the g-vector matrix is row sign-coherent at every
/// vertex.
fn suite_ghkk(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::Ghkk);
    walk_patterns(&cfg.matrix, cfg.depth, &mut |event| match event {
        WalkEvent::Vertex(_trivial, principal) => {
            for k in 0..principal.rank() {
                let f_ok = principal.f_polynomial(k);
                if !tally.check(f_ok.is_ok(), || Counterexample {
                    inputs: format!("vertex {}, entry {}", principal.path(), k + 1),
                    lhs: format!("{:?}", f_ok.as_ref().err()),
                    rhs: "constant term 1, coefficients >= 0".into(),
                }) {
                    return false;
                }
                let g_ok = principal.g_vector(k);
                if !tally.check(g_ok.is_ok(), || Counterexample {
                    inputs: format!("vertex {}, entry {}", principal.path(), k + 1),
                    lhs: format!("{:?}", g_ok.as_ref().err()),
                    rhs: "homogeneous multidegree".into(),
                }) {
                    return false;
                }
            }
            let coherent = principal.g_matrix_row_sign_coherent().unwrap_or(false);
            tally.check(coherent, || Counterexample {
                inputs: format!("vertex {}", principal.path()),
                lhs: "mixed signs in a g-vector row".into(),
                rhs: "row sign-coherence".into(),
            })
        }
        WalkEvent::MutationError(path, k, err) => tally.check(false, || Counterexample {
            inputs: format!("mutation at vertex {path}, k={}", k + 1),
            lhs: err.to_string(),
            rhs: "mutation succeeds".into(),
        }),
    });
    Ok(tally.report())
}

/// The g-vector recurrence agrees with the principal-pattern oracle on
/// every edge within depth, and the q-recurrence is its symmetrizer
/// scaling.
fn suite_g_recurrence(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::GRecurrence);
    let s = cfg.resolve_symmetrizer()?;
    let vars = variables_within_depth(&cfg.matrix, cfg.depth)?;
    let mut cache = PatternCache::new();
    for t in tree_vertices(cfg.matrix.rank(), cfg.depth) {
        let b_t = matrix_at(&cfg.matrix, &t)?;
        for u in &vars {
            let g_t = cache.gf_with_respect_to(&cfg.matrix, u, &t)?.g;
            for k in 0..cfg.matrix.rank() {
                let stepped = g_recurrence_step(&g_t, &b_t, k)?;
                let direct = cache.gf_with_respect_to(&cfg.matrix, u, &t.extended(k))?.g;
                if !tally.check(stepped == direct, || Counterexample {
                    inputs: format!("u={u}, t={t}, k={}", k + 1),
                    lhs: format!("recurrence {stepped}"),
                    rhs: format!("pattern {direct}"),
                }) {
                    return Ok(tally.report());
                }
                let q_stepped = q_recurrence_step(&QVector::from_g(&s, &g_t), &b_t, k)?;
                let q_direct = QVector::from_g(&s, &stepped);
                if !tally.check(q_stepped == q_direct, || Counterexample {
                    inputs: format!("u={u}, t={t}, k={} (q-vectors)", k + 1),
                    lhs: format!("{:?}", q_stepped.entries()),
                    rhs: format!("{:?}", q_direct.entries()),
                }) {
                    return Ok(tally.report());
                }
            }
        }
    }
    Ok(tally.report())
}

/// The tropical homomorphism: `rho_u(y_{i;t}) == s_i g_{i;u}^t` for every
/// variable, vertex and index within depth.
fn suite_rho(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::Rho);
    let s = cfg.resolve_symmetrizer()?;
    let vars = variables_within_depth(&cfg.matrix, cfg.depth)?;
    let mut cache = PatternCache::new();
    for t in tree_vertices(cfg.matrix.rank(), cfg.depth) {
        for u in &vars {
            let g_t = cache.gf_with_respect_to(&cfg.matrix, u, &t)?.g;
            for i in 0..cfg.matrix.rank() {
                let lhs = rho_eval(&mut cache, &cfg.matrix, u, &t, i, &s)?;
                let rhs = s.get(i) * g_t.get(i);
                if !tally.check(lhs == rhs, || Counterexample {
                    inputs: format!("u={u}, t={t}, i={}", i + 1),
                    lhs: format!("rho {lhs}"),
                    rhs: format!("s_i g_i {rhs}"),
                }) {
                    return Ok(tally.report());
                }
            }
        }
    }
    Ok(tally.report())
}

/// Lemma-level exchange identity for F-polynomials, as an exact rational
/// identity, for every variable and every edge within depth.
fn suite_f_exchange(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::FExchange);
    let vars = variables_within_depth(&cfg.matrix, cfg.depth)?;
    let mut cache = PatternCache::new();
    for w in tree_vertices(cfg.matrix.rank(), cfg.depth) {
        for u in &vars {
            for k in 0..cfg.matrix.rank() {
                let ok = verify_f_exchange(&mut cache, &cfg.matrix, u, &w, k)?;
                if !tally.check(ok, || Counterexample {
                    inputs: format!("u={u}, w={w}, k={}", k + 1),
                    lhs: "(1+y_k;t')^(-[-g']_+) F^t'(y_t')".into(),
                    rhs: "(1+y_k;t)^(-[-g]_+) F^t(y_t)".into(),
                }) {
                    return Ok(tally.report());
                }
            }
        }
    }
    Ok(tally.report())
}

/// The F-invariant exchange recurrence on random (u, u', w, k) tuples.
fn suite_finv_recurrence(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::FinvRecurrence);
    let s = cfg.resolve_symmetrizer()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut cache = PatternCache::new();
    let n = cfg.matrix.rank();
    for _ in 0..cfg.trials {
        let u = random_monomial(&mut rng, n, cfg.depth);
        let u2 = random_monomial(&mut rng, n, cfg.depth);
        let w = random_vertex(&mut rng, n, cfg.depth);
        let k = rng.gen_range(0..n);
        let ok = check_finv_recurrence(&mut cache, &cfg.matrix, &u, &u2, &w, k, &s)?;
        if !tally.check(ok, || Counterexample {
            inputs: format!("u={u}, u'={u2}, w={w}, k={}", k + 1),
            lhs: "F_u^t'[S g'] - F_u^t[S g]".into(),
            rhs: "s_k([-g_k;u^t']_+[-g_k;u'^t]_+ - [-g_k;u^t]_+[-g_k;u'^t']_+)".into(),
        }) {
            return Ok(tally.report());
        }
    }
    Ok(tally.report())
}

/// Vertex-independence and symmetry of the F-invariant for every pair of
/// variables within depth, over all tree vertices within depth.
fn suite_finv_invariance(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::FinvInvariance);
    let s = cfg.resolve_symmetrizer()?;
    let vars = variables_within_depth(&cfg.matrix, cfg.depth)?;
    let vertices = tree_vertices(cfg.matrix.rank(), cfg.depth);
    let mut cache = PatternCache::new();
    for i in 0..vars.len() {
        for j in i..vars.len() {
            let u = &vars[i];
            let u2 = &vars[j];
            let reference =
                f_invariant(&mut cache, &cfg.matrix, u, u2, &MutationSequence::empty(), &s)?;
            for w in &vertices {
                let at_w = f_invariant(&mut cache, &cfg.matrix, u, u2, w, &s)?;
                if !tally.check(at_w.value == reference.value, || Counterexample {
                    inputs: format!("u={u}, u'={u2}, w={w}"),
                    lhs: format!("{}", at_w.value),
                    rhs: format!("{} (at the root)", reference.value),
                }) {
                    return Ok(tally.report());
                }
                let swapped = f_invariant(&mut cache, &cfg.matrix, u2, u, w, &s)?;
                if !tally.check(swapped.value == at_w.value, || Counterexample {
                    inputs: format!("u={u}, u'={u2}, w={w} (symmetry)"),
                    lhs: format!("{}", swapped.value),
                    rhs: format!("{}", at_w.value),
                }) {
                    return Ok(tally.report());
                }
            }
        }
    }
    Ok(tally.report())
}

/// The separation theorem, exhaustively over the full exchange graph.
fn suite_separation(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut tally = Tally::new(SuiteName::Separation);
    let s = cfg.resolve_symmetrizer()?;
    let report = check_separation_theorem(&cfg.matrix, DEFAULT_NODE_CAP, Some(&s))?;
    tally.assertions += report.pairs_checked as u64;
    if let Some(ce) = report.counterexamples.first() {
        tally.check(false, || Counterexample {
            inputs: format!("u={}, u'={}", ce.u, ce.u2),
            lhs: format!(
                "compatible={}, sign-coherent={}",
                ce.compatible, ce.sign_coherent
            ),
            rhs: format!("f-invariant={}", ce.f_invariant),
        });
    }
    Ok(tally.report())
}

/// The F-polynomial exchange identity along the edge `w --k-- w'`:
///
/// `(1+y_{k;t'})^{-[-g_{k;u}^{t'}]_+} F_u^{t'}(y_{1;t'},...) ==
///  (1+y_{k;t})^{-[-g_{k;u}^{t}]_+} F_u^{t}(y_{1;t},...)`
///
/// The identity lives in the universal semifield on the free generators
/// `y_{1;t}, ..., y_{n;t}`: the variables at `t'` are substituted by
/// their one-step mutation expressions in the variables at `t`, both
/// sides become subtraction-free fractions with cleared denominators,
/// and the comparison is exact polynomial equality after
/// cross-multiplication.
pub fn verify_f_exchange(
    cache: &mut PatternCache,
    b0: &ExchangeMatrix,
    u: &ClusterMonomialRef,
    w: &MutationSequence,
    k: usize,
) -> Result<bool> {
    if k >= b0.rank() {
        return Err(Error::DirectionOutOfRange { direction: k, rank: b0.rank() });
    }
    let w2 = w.extended(k);
    let at_t = cache.gf_with_respect_to(b0, u, w)?;
    let at_t2 = cache.gf_with_respect_to(b0, u, &w2)?;

    // Free generators at t, and the t'-variables expressed in them.
    let y_t = YSeed::root(&matrix_at(b0, w)?);
    let y_t2 = y_t.mutate(k)?;

    let side = |gf: &crate::principal::GFData, y: &YSeed| -> Result<SubtractionFreeFraction> {
        let eval = SubtractionFreeFraction::eval_poly(gf.f.poly(), y.yvars())?;
        let m = plus(-gf.g.get(k));
        Ok(eval.mul(&y.yvars()[k].one_plus().pow(-m)))
    };
    Ok(side(&at_t2, &y_t2)? == side(&at_t, &y_t)?)
}
