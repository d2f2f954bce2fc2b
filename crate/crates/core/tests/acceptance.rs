//! Acceptance suite: each test pins one exactly-reproducible criterion at
//! its stated runtime budget and prints a pass line. Run with
//! `cargo test -p finv-core --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::time::{Duration, Instant};

use finv_core::matrix::gallery;
use finv_core::verify::{run_suite, tree_vertices, variables_within_depth, SuiteConfig, SuiteName};
use finv_core::{
    check_separation_theorem, explore, invariant, tropical_eval, ClusterMonomialRef, Coeff,
    ExchangeMatrix, ExponentVector, GVector, LaurentPoly, MutationSequence, PatternCache,
    SkewSymmetrizer,
};

const EXPLORE_CAP: usize = 10_000;

fn assert_budget(label: &str, elapsed: Duration, budget: Duration) {
    println!("criterion {label}: PASS in {elapsed:?} (budget {budget:?})");
    assert!(
        elapsed < budget,
        "criterion {label} exceeded its budget: {elapsed:?} >= {budget:?}"
    );
}

fn suite(name: SuiteName, cfg: &SuiteConfig) {
    let report = run_suite(name, cfg).expect("suite runs");
    assert!(report.pass, "{report}");
}

/// Depth that covers the whole (finite) exchange graph from the root.
fn covering_depth(b: &ExchangeMatrix) -> usize {
    let graph = explore(b, EXPLORE_CAP).expect("finite type");
    assert!(graph.is_complete());
    graph.node_paths().iter().map(|p| p.len()).max().unwrap_or(0)
}

/// 1. The intro tropical example: F = 1 + y1 + y1y2, r = (-2, 1) gives 0.
#[test]
fn criterion_01_tropical_worked_example() {
    let f = LaurentPoly::from_terms(
        2,
        [
            (ExponentVector::new(vec![0, 0]), Coeff::from(1)),
            (ExponentVector::new(vec![1, 0]), Coeff::from(1)),
            (ExponentVector::new(vec![1, 1]), Coeff::from(1)),
        ],
    )
    .unwrap();
    let t0 = Instant::now();
    let value = tropical_eval(&f, &[-2, 1]).unwrap();
    let elapsed = t0.elapsed();
    assert_eq!(value.0, 0);
    assert_budget("01 tropical example", elapsed, Duration::from_millis(1));
}

/// 2. Involutivity of mutation on matrices, seeds and Y-seeds over 200
/// seeded random skew-symmetric matrices (n <= 4, entries in [-3,3])
/// plus {B2, C3, G2}.
#[test]
fn criterion_02_involution_suite() {
    let t0 = Instant::now();
    let cfg = SuiteConfig::new(gallery::a2())
        .with_trials(200)
        .with_depth(6)
        .with_seed(0xF1);
    let report = run_suite(SuiteName::Involution, &cfg).unwrap();
    assert!(report.pass, "{report}");
    // 200 random + A2 + B2 + C3 + G2, three objects per direction plus a
    // walked matrix check per direction
    assert!(report.assertions >= 200 * 4, "got {}", report.assertions);
    assert_budget("02 involution", t0.elapsed(), Duration::from_secs(5));
}

/// 3. Laurent phenomenon plus GHKK positivity and row sign-coherence:
/// full exchange graphs of A2, A3, B2, G2, and the Markov quiver to
/// depth 6.
#[test]
fn criterion_03_laurent_and_ghkk() {
    let t0 = Instant::now();
    for b in [gallery::a2(), gallery::a3(), gallery::b2(), gallery::g2()] {
        let depth = covering_depth(&b);
        let cfg = SuiteConfig::new(b).with_depth(depth);
        suite(SuiteName::Laurent, &cfg);
        suite(SuiteName::Ghkk, &cfg);
    }
    let markov = SuiteConfig::new(gallery::markov()).with_depth(6);
    suite(SuiteName::Laurent, &markov);
    suite(SuiteName::Ghkk, &markov);
    assert_budget("03 laurent+ghkk", t0.elapsed(), Duration::from_secs(60));
}

/// 4. The g-vector recurrence agrees with the principal-pattern oracle on
/// every edge to depth 5 across the rank <= 3 gallery.
#[test]
fn criterion_04_g_recurrence_oracle_agreement() {
    let t0 = Instant::now();
    for b in [gallery::a2(), gallery::b2(), gallery::c3(), gallery::g2(), gallery::a3()] {
        suite(SuiteName::GRecurrence, &SuiteConfig::new(b).with_depth(5));
    }
    assert_budget("04 g-recurrence", t0.elapsed(), Duration::from_secs(60));
}

/// 5. The tropical homomorphism: rho_u(y_{i;t}) = s_i g_{i;u}^t over
/// depth-4 vertex sets in A2, B2, A3.
#[test]
fn criterion_05_rho_homomorphism() {
    let t0 = Instant::now();
    for b in [gallery::a2(), gallery::b2(), gallery::a3()] {
        suite(SuiteName::Rho, &SuiteConfig::new(b).with_depth(4));
    }
    assert_budget("05 rho", t0.elapsed(), Duration::from_secs(60));
}

/// 6. The F-invariant exchange recurrence on >= 200 sampled
/// (u, u', t, k) tuples across the gallery.
#[test]
fn criterion_06_finv_recurrence_sampled() {
    let t0 = Instant::now();
    let mut total = 0;
    for (i, b) in [gallery::a2(), gallery::b2(), gallery::c3(), gallery::g2()]
        .into_iter()
        .enumerate()
    {
        let cfg = SuiteConfig::new(b)
            .with_depth(5)
            .with_trials(50)
            .with_seed(0xABC + i as u64);
        let report = run_suite(SuiteName::FinvRecurrence, &cfg).unwrap();
        assert!(report.pass, "{report}");
        total += report.assertions;
    }
    assert!(total >= 200, "sampled only {total} tuples");
    assert_budget("06 finv-recurrence", t0.elapsed(), Duration::from_secs(60));
}

/// 7. Vertex-independence of the F-invariant for every pair of cluster
/// variables in A2, B2, G2 over >= 10 distinct vertices each.
#[test]
fn criterion_07_finv_vertex_independence() {
    let t0 = Instant::now();
    assert!(tree_vertices(2, 5).len() >= 10);
    for b in [gallery::a2(), gallery::b2(), gallery::g2()] {
        suite(SuiteName::FinvInvariance, &SuiteConfig::new(b).with_depth(5));
    }
    assert_budget("07 finv-invariance", t0.elapsed(), Duration::from_secs(60));
}

/// 8. The A2 F-invariant table with S = I: the five pentagon-adjacent
/// pairs give 0, the five non-adjacent pairs give exactly 1, and
/// (x_1 || the g=(-1,0) variable) = 1.
#[test]
fn criterion_08_a2_f_invariant_table() {
    let t0 = Instant::now();
    let b = gallery::a2();
    let s = SkewSymmetrizer::identity(2);
    let graph = explore(&b, EXPLORE_CAP).unwrap();
    assert_eq!(graph.variable_count(), 5);

    let mut cache = PatternCache::new();
    let refs: Vec<ClusterMonomialRef> =
        (0..5).map(|i| graph.variable_ref(i).clone()).collect();
    let g_of = |cache: &mut PatternCache, u: &ClusterMonomialRef| {
        cache.gf_of_monomial(&b, u).unwrap().g
    };

    let mut zero_pairs = 0;
    let mut one_pairs = 0;
    for i in 0..5 {
        for j in (i + 1)..5 {
            let value = invariant::f_invariant(
                &mut cache,
                &b,
                &refs[i],
                &refs[j],
                &MutationSequence::empty(),
                &s,
            )
            .unwrap()
            .value;
            let compatible = graph.compatible(&refs[i], &refs[j]).unwrap();
            match (compatible, value) {
                (true, 0) => zero_pairs += 1,
                (false, 1) => one_pairs += 1,
                other => panic!("unexpected pair outcome {other:?} for ({i},{j})"),
            }
        }
    }
    assert_eq!(zero_pairs, 5, "the pentagon has five adjacent pairs");
    assert_eq!(one_pairs, 5, "and five non-adjacent pairs, each with value 1");

    // the named pair: x_1 at the root against the g = (-1,0) variable
    let x1 = refs
        .iter()
        .find(|u| g_of(&mut cache, u) == GVector::new(vec![1, 0]))
        .expect("x1 is a cluster variable")
        .clone();
    let far = refs
        .iter()
        .find(|u| g_of(&mut cache, u) == GVector::new(vec![-1, 0]))
        .expect("the (-1,0)-variable exists")
        .clone();
    let named = invariant::f_invariant(&mut cache, &b, &x1, &far, &MutationSequence::empty(), &s)
        .unwrap();
    assert_eq!(named.value, 1);
    assert_budget("08 A2 table", t0.elapsed(), Duration::from_secs(60));
}

/// 9. The separation theorem, exhaustively: compatibility <=> bounded
/// sign-coherence over the full graph <=> F-invariant zero, on A2, A3,
/// B2, G2, with the expected graph sizes.
#[test]
fn criterion_09_separation_theorem() {
    let t0 = Instant::now();
    let expected = [
        (gallery::a2(), 5usize, 5usize),
        (gallery::b2(), 6, 6),
        (gallery::g2(), 8, 8),
        (gallery::a3(), 9, 14),
    ];
    for (b, nvars, nclusters) in expected {
        let report = check_separation_theorem(&b, EXPLORE_CAP, None).unwrap();
        assert!(report.pass(), "counterexamples: {:?}", report.counterexamples);
        assert_eq!(report.variables, nvars);
        assert_eq!(report.clusters, nclusters);
        assert_eq!(report.pairs_checked, nvars * (nvars - 1) / 2);
    }
    assert_budget("09 separation", t0.elapsed(), Duration::from_secs(120));
}

/// 10. The F-polynomial exchange identity as an exact rational identity
/// for every cluster variable and every edge within depth 4 in A2 and B2.
#[test]
fn criterion_10_f_exchange_identity() {
    let t0 = Instant::now();
    for b in [gallery::a2(), gallery::b2()] {
        suite(SuiteName::FExchange, &SuiteConfig::new(b).with_depth(4));
    }
    assert_budget("10 f-exchange", t0.elapsed(), Duration::from_secs(60));
}

/// 11. Skew-symmetrizable scaling on B2 with S = diag(1,2): the
/// max-degree identity f_inj(u, x_{k;w}, w) = s_k f_k holds for all
/// variables, and the invariance suites pass with this S.
#[test]
fn criterion_11_b2_scaled_symmetrizer() {
    let t0 = Instant::now();
    let b = gallery::b2();
    let s = SkewSymmetrizer::validated_for(vec![1, 2], &b).unwrap();

    // Remark-level identity: the pairing against a cluster variable is
    // s_k times the top y_k-degree of the F-polynomial.
    let mut cache = PatternCache::new();
    let vars = variables_within_depth(&b, 4).unwrap();
    assert_eq!(vars.len(), 6);
    for u in &vars {
        for w in tree_vertices(2, 3) {
            let f_u = cache.gf_with_respect_to(&b, u, &w).unwrap().f;
            for k in 0..2 {
                let xk = ClusterMonomialRef::variable(w.clone(), 2, k);
                let pairing = invariant::f_inj(&mut cache, &b, u, &xk, &w, &s).unwrap();
                assert_eq!(pairing, s.get(k) * f_u.max_degree_in(k));
            }
        }
    }

    // invariance criteria with the explicit override
    let base = SuiteConfig::new(b).with_symmetrizer(s).with_depth(5).with_trials(60);
    suite(SuiteName::FinvRecurrence, &base);
    suite(SuiteName::FinvInvariance, &base);
    suite(SuiteName::Separation, &base);
    suite(SuiteName::GRecurrence, &base);
    suite(SuiteName::Rho, &base);
    assert_budget("11 B2 scaled", t0.elapsed(), Duration::from_secs(60));
}
