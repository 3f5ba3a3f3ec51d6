//! Series-parallel machinery: the contraction `H'`, a reduction-based
//! recognizer for treewidth <= 2, and the two-terminal contraction `c(F)`.
//!
//! `H'` contracts every big vertex of an induced subgraph together with its
//! medium neighbors. The recognizer decides series-parallelness by
//! exhaustive reduction (delete isolated and pendant vertices, suppress
//! degree-2 vertices, merge parallel edges); the input graph is simple but
//! the reduction runs on an internal multigraph since suppression creates
//! parallel edges transiently.

use thiserror::Error;

use crate::construction::VertexClass;
use crate::graph::Graph;
use crate::model::{contract_model, Contraction};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpError {
    #[error("classification has {got} entries for a graph on {expected} vertices")]
    ClassificationMismatch { got: usize, expected: usize },
    #[error("terminal {v} out of range")]
    BadTerminal { v: usize },
    #[error("source and sink must be distinct")]
    EqualTerminals,
}

/// A graph with designated source and sink.
#[derive(Clone, Debug)]
pub struct TwoTerminalGraph {
    pub graph: Graph,
    pub source: usize,
    pub sink: usize,
}

impl TwoTerminalGraph {
    pub fn new(graph: Graph, source: usize, sink: usize) -> Result<Self, SpError> {
        if source >= graph.n() {
            return Err(SpError::BadTerminal { v: source });
        }
        if sink >= graph.n() {
            return Err(SpError::BadTerminal { v: sink });
        }
        if source == sink {
            return Err(SpError::EqualTerminals);
        }
        Ok(TwoTerminalGraph { graph, source, sink })
    }
}

/// Result of contracting big vertices with their medium neighbors.
#[derive(Clone, Debug)]
pub struct HPrime {
    pub graph: Graph,
    /// Branch set behind each contracted vertex, sorted.
    pub branch_sets: Vec<Vec<usize>>,
    /// The big vertex behind a contracted star, if the set is one.
    pub big_of: Vec<Option<usize>>,
    /// Original vertex -> contracted id.
    pub owner: Vec<usize>,
}

/// Contracts, for every big vertex `b` of `H`, the set {b} together with
/// its medium neighbors; every other vertex stays a singleton.
///
/// Distinct big vertices have disjoint star sets: a medium vertex has
/// exactly one big neighbor, and big vertices are never adjacent.
pub fn contract_to_h_prime(h: &Graph, class_of: &[VertexClass]) -> Result<HPrime, SpError> {
    if class_of.len() != h.n() {
        return Err(SpError::ClassificationMismatch { got: class_of.len(), expected: h.n() });
    }
    let mut sets: Vec<(Vec<usize>, Option<usize>)> = Vec::new();
    let mut claimed = vec![false; h.n()];
    for b in 0..h.n() {
        if class_of[b] == VertexClass::Big {
            let mut set = vec![b];
            for &m in h.neighbors(b) {
                if class_of[m] == VertexClass::Medium {
                    set.push(m);
                }
            }
            set.sort_unstable();
            for &v in &set {
                debug_assert!(!claimed[v], "star sets must be disjoint");
                claimed[v] = true;
            }
            sets.push((set, Some(b)));
        }
    }
    for v in 0..h.n() {
        if !claimed[v] {
            sets.push((vec![v], None));
        }
    }
    sets.sort_by_key(|(s, _)| s[0]);
    let branch_sets: Vec<Vec<usize>> = sets.iter().map(|(s, _)| s.clone()).collect();
    let Contraction { graph, branch_sets, owner } = contract_model(h, &branch_sets, false)
        .expect("star sets are disjoint and connected");
    // contract_model orders sets by smallest member, same as ours
    let mut big_of = vec![None; branch_sets.len()];
    for (set, big) in sets {
        if let Some(b) = big {
            let id = owner[set[0]].unwrap();
            big_of[id] = Some(b);
        }
    }
    let owner = owner.into_iter().map(Option::unwrap).collect();
    Ok(HPrime { graph, branch_sets, big_of, owner })
}

/// One step of the series-parallel reduction, for certificate traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    DeleteIsolated(usize),
    DeletePendant(usize),
    /// Suppressed `v`, joining `u` and `w`.
    Suppress { v: usize, u: usize, w: usize },
    /// Suppressed `v` whose both edges led to `u` (drops the arising loop).
    SuppressParallel { v: usize, u: usize },
    MergeParallel { u: usize, w: usize },
}

#[derive(Clone, Debug)]
pub enum SpOutcome {
    /// Reduced to the empty graph; the trace replays the reduction.
    SeriesParallel(Vec<ReductionStep>),
    /// Irreducible core remains; its vertices witness a K4 minor.
    NotSeriesParallel { core: Vec<usize> },
}

impl SpOutcome {
    pub fn is_series_parallel(&self) -> bool {
        matches!(self, SpOutcome::SeriesParallel(_))
    }
}

/// Decides treewidth <= 2 by exhaustive reduction. The answer concerns the
/// simple input graph; parallel edges only appear internally.
pub fn is_series_parallel(g: &Graph) -> SpOutcome {
    let n = g.n();
    // multigraph adjacency with multiplicities (capped at 2: a double edge
    // reduces to a single one without changing treewidth)
    let mut mult: Vec<std::collections::BTreeMap<usize, u8>> = vec![Default::default(); n];
    for (u, v) in g.edges() {
        mult[u].insert(v, 1);
        mult[v].insert(u, 1);
    }
    let mut alive = vec![true; n];
    let mut trace = Vec::new();
    let degree = |mult: &Vec<std::collections::BTreeMap<usize, u8>>, v: usize| -> usize {
        mult[v].values().map(|&c| c as usize).sum()
    };
    let mut queue: std::collections::VecDeque<usize> = (0..n).collect();
    let mut enqueued = vec![true; n];
    while let Some(v) = queue.pop_front() {
        enqueued[v] = false;
        if !alive[v] {
            continue;
        }
        // merge parallel edges at v first
        let parallels: Vec<usize> = mult[v].iter().filter(|&(_, &c)| c > 1).map(|(&w, _)| w).collect();
        for w in parallels {
            mult[v].insert(w, 1);
            mult[w].insert(v, 1);
            trace.push(ReductionStep::MergeParallel { u: v.min(w), w: v.max(w) });
            if !enqueued[w] {
                queue.push_back(w);
                enqueued[w] = true;
            }
        }
        match degree(&mult, v) {
            0 => {
                alive[v] = false;
                trace.push(ReductionStep::DeleteIsolated(v));
            }
            1 => {
                let (&u, _) = mult[v].iter().next().unwrap();
                mult[u].remove(&v);
                mult[v].clear();
                alive[v] = false;
                trace.push(ReductionStep::DeletePendant(v));
                if !enqueued[u] {
                    queue.push_back(u);
                    enqueued[u] = true;
                }
            }
            2 => {
                let nbrs: Vec<(usize, u8)> = mult[v].iter().map(|(&w, &c)| (w, c)).collect();
                if nbrs.len() == 1 {
                    // double edge to one neighbor: suppression makes a loop,
                    // which is irrelevant to treewidth; drop v entirely
                    let u = nbrs[0].0;
                    mult[u].remove(&v);
                    mult[v].clear();
                    alive[v] = false;
                    trace.push(ReductionStep::SuppressParallel { v, u });
                    if !enqueued[u] {
                        queue.push_back(u);
                        enqueued[u] = true;
                    }
                } else {
                    let (u, w) = (nbrs[0].0, nbrs[1].0);
                    mult[u].remove(&v);
                    mult[w].remove(&v);
                    mult[v].clear();
                    alive[v] = false;
                    *mult[u].entry(w).or_insert(0) += 1;
                    *mult[w].entry(u).or_insert(0) += 1;
                    if mult[u][&w] > 2 {
                        mult[u].insert(w, 2);
                        mult[w].insert(u, 2);
                    }
                    trace.push(ReductionStep::Suppress { v, u, w });
                    for x in [u, w] {
                        if !enqueued[x] {
                            queue.push_back(x);
                            enqueued[x] = true;
                        }
                    }
                }
            }
            _ => {}
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if core.is_empty() {
        SpOutcome::SeriesParallel(trace)
    } else {
        SpOutcome::NotSeriesParallel { core }
    }
}

/// Which hypothesis of the two-terminal contraction failed, with a witness.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypothesisViolation {
    /// (i): the given paths must run from source to sink, cover every
    /// vertex, and be internally disjoint.
    #[error("path cover hypothesis failed: {reason}")]
    PathCover { reason: String },
    /// (ii): some internal vertex fits none or several of the three
    /// neighbor cases.
    #[error("neighbor-case hypothesis failed at vertex {v}: {reason}")]
    NeighborCase { v: usize, reason: String },
    /// (iii): two cross vertices on one path whose neighbors appear in the
    /// opposite order on a later path.
    #[error("order-consistency hypothesis failed on paths {i} and {j}: vertices {v1} < {v2} map to {u1} > {u2}")]
    OrderConsistency { i: usize, j: usize, v1: usize, v2: usize, u1: usize, u2: usize },
}

/// Result of the two-terminal contraction `c(F)`.
#[derive(Clone, Debug)]
pub struct COfF {
    pub contracted: TwoTerminalGraph,
    pub branch_sets: Vec<Vec<usize>>,
    /// Vertices whose closed cross-neighborhood was contracted.
    pub b_prime: Vec<usize>,
    /// Vertices with no neighbors off their own path.
    pub s_prime: Vec<usize>,
    pub sp: SpOutcome,
}

/// Checks the hypotheses of the two-terminal contraction on `(F, paths)` and
/// performs it: every vertex of the cross class is contracted with its one
/// neighbor on each later path; everything else stays a singleton. The
/// series-parallel recognizer runs on the result and its outcome is part of
/// the return value.
///
/// `paths` lists each covering path as a vertex sequence from source to sink.
pub fn c_of_f(f: &TwoTerminalGraph, paths: &[Vec<usize>]) -> Result<COfF, HypothesisViolation> {
    let g = &f.graph;
    let k = paths.len();
    // hypothesis (i): source-to-sink paths covering V, internally disjoint
    let mut on_path = vec![usize::MAX; g.n()];
    let mut pos_on_path = vec![usize::MAX; g.n()];
    for (i, p) in paths.iter().enumerate() {
        if p.first() != Some(&f.source) || p.last() != Some(&f.sink) {
            return Err(HypothesisViolation::PathCover { reason: format!("path {i} does not run from source to sink") });
        }
        for w in p.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(HypothesisViolation::PathCover { reason: format!("path {i} uses the non-edge ({},{})", w[0], w[1]) });
            }
        }
        for (idx, &v) in p.iter().enumerate() {
            if idx > 0 && idx + 1 < p.len() {
                if on_path[v] != usize::MAX {
                    return Err(HypothesisViolation::PathCover { reason: format!("vertex {v} is internal to paths {} and {i}", on_path[v]) });
                }
                on_path[v] = i;
            }
            pos_on_path[v] = idx;
        }
    }
    for v in 0..g.n() {
        if v != f.source && v != f.sink && on_path[v] == usize::MAX {
            return Err(HypothesisViolation::PathCover { reason: format!("vertex {v} is not covered by any path") });
        }
    }

    // hypothesis (ii): classify each internal vertex into exactly one case
    let mut b_prime = Vec::new();
    let mut s_prime = Vec::new();
    for v in 0..g.n() {
        if v == f.source || v == f.sink {
            continue;
        }
        let i = on_path[v];
        let off_path: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| w != f.source && w != f.sink && on_path[w] != i)
            .collect();
        let on_own_path = g.neighbors(v).len() - off_path.len();
        if on_own_path > 2 {
            return Err(HypothesisViolation::NeighborCase { v, reason: "more than two neighbors on its own path".into() });
        }
        if off_path.is_empty() {
            s_prime.push(v);
            continue;
        }
        // exactly one neighbor on every later path?
        let mut per_path = vec![0usize; k];
        for &w in &off_path {
            per_path[on_path[w]] += 1;
        }
        let all_later = (i + 1..k).all(|j| per_path[j] == 1)
            && per_path[..i].iter().all(|&c| c == 0)
            && off_path.len() == k - 1 - i;
        let single_earlier = off_path.len() == 1 && on_path[off_path[0]] < i && i > 0;
        match (all_later, single_earlier) {
            (true, false) => b_prime.push(v),
            (false, true) => {} // earlier-neighbor case: stays a singleton
            (true, true) => {
                return Err(HypothesisViolation::NeighborCase { v, reason: "fits several neighbor cases".into() });
            }
            (false, false) => {
                return Err(HypothesisViolation::NeighborCase { v, reason: format!("off-path neighbors {:?} fit no case", off_path) });
            }
        }
    }

    // hypothesis (iii): order consistency of cross vertices per path
    for i in 0..k {
        // b_prime is sorted: it was filled in ascending vertex order
        let on_i: Vec<usize> = paths[i][1..paths[i].len() - 1]
            .iter()
            .copied()
            .filter(|v| b_prime.binary_search(v).is_ok())
            .collect();
        for a in 0..on_i.len() {
            for b in a + 1..on_i.len() {
                let (v1, v2) = (on_i[a], on_i[b]);
                for j in i + 1..k {
                    let u1 = g.neighbors(v1).iter().copied().find(|&w| on_path[w] == j).unwrap();
                    let u2 = g.neighbors(v2).iter().copied().find(|&w| on_path[w] == j).unwrap();
                    if pos_on_path[u1] >= pos_on_path[u2] {
                        return Err(HypothesisViolation::OrderConsistency { i, j, v1, v2, u1, u2 });
                    }
                }
            }
        }
    }

    // contraction: closed cross-neighborhoods of b_prime, singletons else
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut claimed = vec![false; g.n()];
    for &v in &b_prime {
        let mut set = vec![v];
        for &w in g.neighbors(v) {
            if w != f.source && w != f.sink && on_path[w] != on_path[v] {
                set.push(w);
            }
        }
        set.sort_unstable();
        for &x in &set {
            claimed[x] = true;
        }
        sets.push(set);
    }
    for v in 0..g.n() {
        if !claimed[v] {
            sets.push(vec![v]);
        }
    }
    let c = contract_model(g, &sets, false).expect("contraction sets are disjoint and connected");
    let source = c.owner[f.source].unwrap();
    let sink = c.owner[f.sink].unwrap();
    let sp = is_series_parallel(&c.graph);
    Ok(COfF {
        contracted: TwoTerminalGraph { graph: c.graph, source, sink },
        branch_sets: c.branch_sets,
        b_prime,
        s_prime,
        sp,
    })
}
