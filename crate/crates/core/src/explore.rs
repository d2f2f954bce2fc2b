//! Breadth-first enumeration of the exchange graph up to seed
//! equivalence, and the ground-truth compatibility oracle for the
//! separation theorem.
//!
//! Seeds are deduplicated by unordered cluster with the matrix permuted
//! by the same sort. Reflection (global `B <-> -B`) is not quotiented:
//! conservative dedup can only enlarge the graph, never merge distinct
//! clusters, so the compatibility oracle stays sound.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::invariant::{f_invariant, sign_coherent_pair};
use crate::matrix::{ExchangeMatrix, SkewSymmetrizer};
use crate::poly::LaurentPoly;
use crate::principal::PatternCache;
use crate::seed::{ClusterMonomialRef, MutationSequence, Seed};

pub const DEFAULT_NODE_CAP: usize = 10_000;

/// Identifies a seed up to simultaneous relabeling of cluster entries and
/// matrix rows/columns.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CanonicalSeedKey {
    cluster: Vec<LaurentPoly>,
    matrix: ExchangeMatrix,
}

impl CanonicalSeedKey {
    pub fn of(seed: &Seed) -> Self {
        let n = seed.rank();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| seed.cluster()[a].cmp(&seed.cluster()[b]));
        CanonicalSeedKey {
            cluster: order.iter().map(|&i| seed.cluster()[i].clone()).collect(),
            matrix: seed.matrix().permuted(&order),
        }
    }
}

/// The deduplicated seed graph of a cluster pattern, with the set of
/// cluster variables found along the way.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    root_matrix: ExchangeMatrix,
    nodes: Vec<Seed>,
    keys: BTreeMap<CanonicalSeedKey, usize>,
    edges: BTreeSet<(usize, usize)>,
    variables: Vec<LaurentPoly>,
    var_index: BTreeMap<LaurentPoly, usize>,
    var_refs: Vec<ClusterMonomialRef>,
    complete: bool,
}

impl ExchangeGraph {
    pub fn root_matrix(&self) -> &ExchangeMatrix {
        &self.root_matrix
    }

    /// Representative seeds, indexed by discovery order (node 0 is the
    /// root).
    pub fn nodes(&self) -> &[Seed] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Deduplicated cluster variables as root-cluster expansions.
    pub fn variables(&self) -> &[LaurentPoly] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// A representative reference for variable `i`: the first seed that
    /// contained it, with a unit exponent vector.
    pub fn variable_ref(&self, i: usize) -> &ClusterMonomialRef {
        &self.var_refs[i]
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// BFS paths of the representatives, usable as a vertex set.
    pub fn node_paths(&self) -> Vec<MutationSequence> {
        self.nodes.iter().map(|s| s.path().clone()).collect()
    }

    fn expand_support(&self, u: &ClusterMonomialRef) -> Result<Vec<LaurentPoly>> {
        let seed = Seed::root(&self.root_matrix).apply_sequence(&u.path)?;
        if u.exponents.len() != seed.rank() {
            return Err(Error::LengthMismatch { expected: seed.rank(), got: u.exponents.len() });
        }
        Ok(seed
            .cluster()
            .iter()
            .zip(&u.exponents)
            .filter(|(_, &v)| v > 0)
            .map(|(p, _)| p.clone())
            .collect())
    }

    /// True iff some cluster contains the support variables of both
    /// monomials, i.e. iff `u u'` is a monomial in one cluster.
    pub fn compatible(&self, u: &ClusterMonomialRef, u2: &ClusterMonomialRef) -> Result<bool> {
        if !self.complete {
            return Err(Error::IncompleteGraph);
        }
        let mut support = self.expand_support(u)?;
        support.extend(self.expand_support(u2)?);
        support.sort();
        support.dedup();
        Ok(self.nodes.iter().any(|node| {
            let cluster: BTreeSet<&LaurentPoly> = node.cluster().iter().collect();
            support.iter().all(|p| cluster.contains(p))
        }))
    }
}

/// Breadth-first closure of the root seed under all mutations with
/// deterministic direction order, deduplicated by [`CanonicalSeedKey`].
/// Exploration halts at `cap` stored nodes with `complete = false`;
/// hitting the cap is not an error.
pub fn explore(b0: &ExchangeMatrix, cap: usize) -> Result<ExchangeGraph> {
    if cap == 0 {
        return Err(Error::BadInput("node cap must be at least 1".into()));
    }
    let root = Seed::root(b0);
    let mut graph = ExchangeGraph {
        root_matrix: b0.clone(),
        nodes: Vec::new(),
        keys: BTreeMap::new(),
        edges: BTreeSet::new(),
        variables: Vec::new(),
        var_index: BTreeMap::new(),
        var_refs: Vec::new(),
        complete: true,
    };
    let mut queue = VecDeque::new();
    let root_key = CanonicalSeedKey::of(&root);
    let root_idx = insert_node(&mut graph, root);
    graph.keys.insert(root_key, root_idx);
    queue.push_back(root_idx);

    'bfs: while let Some(idx) = queue.pop_front() {
        for k in 0..b0.rank() {
            let child = graph.nodes[idx].mutate(k)?;
            let key = CanonicalSeedKey::of(&child);
            match graph.keys.get(&key) {
                Some(&j) => {
                    graph.edges.insert(ordered(idx, j));
                }
                None => {
                    if graph.nodes.len() >= cap {
                        graph.complete = false;
                        break 'bfs;
                    }
                    let j = insert_node(&mut graph, child);
                    graph.keys.insert(key, j);
                    graph.edges.insert(ordered(idx, j));
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(graph)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn insert_node(graph: &mut ExchangeGraph, seed: Seed) -> usize {
    let idx = graph.nodes.len();
    for (k, entry) in seed.cluster().iter().enumerate() {
        if !graph.var_index.contains_key(entry) {
            let vid = graph.variables.len();
            graph.var_index.insert(entry.clone(), vid);
            graph.variables.push(entry.clone());
            graph
                .var_refs
                .push(ClusterMonomialRef::variable(seed.path().clone(), seed.rank(), k));
        }
    }
    graph.nodes.push(seed);
    idx
}

/// One failing pair of the three-way equivalence, with all three verdicts.
#[derive(Clone, Debug)]
pub struct SeparationCounterexample {
    pub u: ClusterMonomialRef,
    pub u2: ClusterMonomialRef,
    pub compatible: bool,
    pub sign_coherent: bool,
    pub f_invariant: i64,
}

/// Outcome of the exhaustive separation check on a complete graph.
#[derive(Clone, Debug)]
pub struct SeparationReport {
    pub variables: usize,
    pub clusters: usize,
    pub pairs_checked: usize,
    pub compatible_pairs: usize,
    pub counterexamples: Vec<SeparationCounterexample>,
}

impl SeparationReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every unordered pair of cluster variables, verify the three-way
/// equivalence: compatible <=> sign-coherent over all graph vertices <=>
/// F-invariant zero. `symmetrizer` defaults to the minimal one.
pub fn check_separation_theorem(
    b0: &ExchangeMatrix,
    cap: usize,
    symmetrizer: Option<&SkewSymmetrizer>,
) -> Result<SeparationReport> {
    let graph = explore(b0, cap)?;
    if !graph.is_complete() {
        return Err(Error::IncompleteGraph);
    }
    let minimal = b0.symmetrizer();
    let s = match symmetrizer {
        Some(s) => {
            if !s.is_valid_for(b0) {
                return Err(Error::InvalidSymmetrizer);
            }
            s
        }
        None => &minimal,
    };

    let vertex_set = graph.node_paths();
    let mut cache = PatternCache::new();
    let nv = graph.variable_count();
    let mut report = SeparationReport {
        variables: nv,
        clusters: graph.node_count(),
        pairs_checked: 0,
        compatible_pairs: 0,
        counterexamples: Vec::new(),
    };
    for i in 0..nv {
        for j in (i + 1)..nv {
            let u = graph.variable_ref(i).clone();
            let u2 = graph.variable_ref(j).clone();
            let compatible = graph.compatible(&u, &u2)?;
            let sign_coherent = sign_coherent_pair(&mut cache, b0, &u, &u2, &vertex_set)?;
            let finv = f_invariant(&mut cache, b0, &u, &u2, &MutationSequence::empty(), s)?.value;
            report.pairs_checked += 1;
            if compatible {
                report.compatible_pairs += 1;
            }
            if compatible != sign_coherent || compatible != (finv == 0) {
                report.counterexamples.push(SeparationCounterexample {
                    u,
                    u2,
                    compatible,
                    sign_coherent,
                    f_invariant: finv,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gallery;

    #[test]
    fn a2_is_the_pentagon() {
        let g = explore(&gallery::a2(), DEFAULT_NODE_CAP).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.variable_count(), 5);
        assert_eq!(g.edge_count(), 5);
        // every node of a complete graph has exactly n incident edges
        for i in 0..5 {
            let deg = g.edges().filter(|&(a, b)| a == i || b == i).count();
            assert_eq!(deg, 2);
        }
    }

    #[test]
    fn b2_counts() {
        let g = explore(&gallery::b2(), DEFAULT_NODE_CAP).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.node_count(), 6);
        assert_eq!(g.variable_count(), 6);
    }

    #[test]
    fn g2_counts() {
        let g = explore(&gallery::g2(), DEFAULT_NODE_CAP).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.node_count(), 8);
        assert_eq!(g.variable_count(), 8);
    }

    #[test]
    fn a3_counts() {
        let g = explore(&gallery::a3(), DEFAULT_NODE_CAP).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.node_count(), 14);
        assert_eq!(g.variable_count(), 9);
    }

    #[test]
    fn markov_hits_the_cap() {
        let g = explore(&gallery::markov(), 50).unwrap();
        assert!(!g.is_complete());
        assert_eq!(g.node_count(), 50);
    }

    #[test]
    fn re_exploring_from_a_representative_gives_the_same_node_set() {
        let g = explore(&gallery::a2(), DEFAULT_NODE_CAP).unwrap();
        // mutate the root along some representative's path, re-explore,
        // and compare canonical key sets after re-expanding in that root
        let seed = &g.nodes()[2];
        let b_new = seed.matrix().clone();
        let g2 = explore(&b_new, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(g2.node_count(), g.node_count());
        assert_eq!(g2.variable_count(), g.variable_count());
    }

    #[test]
    fn compatibility_oracle() {
        let g = explore(&gallery::a2(), DEFAULT_NODE_CAP).unwrap();
        let seq = |s: &[usize]| MutationSequence::from_one_based(s).unwrap();

        // two variables of one seed
        let e1 = ClusterMonomialRef::variable(MutationSequence::empty(), 2, 0);
        let e2 = ClusterMonomialRef::variable(MutationSequence::empty(), 2, 1);
        assert!(g.compatible(&e1, &e2).unwrap());

        // x1 vs the (-1,0)-variable: opposite in the pentagon
        let far = ClusterMonomialRef::variable(seq(&[1, 2]), 2, 1);
        assert!(!g.compatible(&e1, &far).unwrap());

        // anything vs the empty monomial
        let empty = ClusterMonomialRef::new(MutationSequence::empty(), alloc::vec![0, 0]);
        assert!(g.compatible(&far, &empty).unwrap());
    }

    #[test]
    fn incomplete_graph_refuses_compatibility() {
        let g = explore(&gallery::markov(), 10).unwrap();
        let e1 = ClusterMonomialRef::variable(MutationSequence::empty(), 3, 0);
        assert!(matches!(g.compatible(&e1, &e1), Err(Error::IncompleteGraph)));
    }

    #[test]
    fn separation_theorem_on_a2() {
        let report = check_separation_theorem(&gallery::a2(), DEFAULT_NODE_CAP, None).unwrap();
        assert!(report.pass());
        assert_eq!(report.pairs_checked, 10);
        assert_eq!(report.compatible_pairs, 5);
    }
}
