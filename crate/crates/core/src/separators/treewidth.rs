//! Tree decompositions and exact treewidth at desk scale.
//!
//! The exact solver runs a decision search over elimination orderings per
//! width target, with memoized failed states, a simplicial-vertex reduction,
//! and the remaining-count shortcut. Bounds come from degeneracy (below) and
//! min-fill (above). Everything is deterministic: candidate vertices are
//! tried in ascending id order.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::Graph;
use crate::separators::weights::WeightFunction;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwError {
    #[error("graph has {n} vertices, above the exact-solver cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("exact solver handles at most 63 vertices, got {n}")]
    TooLarge { n: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdError {
    #[error("decomposition tree is not connected")]
    TreeNotConnected,
    #[error("decomposition tree has a cycle")]
    TreeNotAcyclic,
    #[error("bag count {bags} does not match tree order {nodes}")]
    BagCountMismatch { bags: usize, nodes: usize },
    #[error("vertex {v} appears in no bag")]
    VertexUncovered { v: usize },
    #[error("edge ({u},{v}) is inside no bag")]
    EdgeUncovered { u: usize, v: usize },
    #[error("bags containing vertex {v} do not form a subtree")]
    NotSubtree { v: usize },
    #[error("bag {bag} contains out-of-range vertex {v}")]
    BagOutOfRange { bag: usize, v: usize },
    #[error("no bag is a balanced separator")]
    NoBalancedBag,
}

/// A tree of bags over a host graph.
#[derive(Clone, Debug)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Width: maximum bag size minus one (-1 for the all-empty decomposition).
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    /// Checks all decomposition invariants against the host.
    pub fn validate(&self, host: &Graph) -> Result<(), TdError> {
        let t = self.tree.n();
        if self.bags.len() != t {
            return Err(TdError::BagCountMismatch { bags: self.bags.len(), nodes: t });
        }
        if t == 0 {
            return if host.n() == 0 {
                Ok(())
            } else {
                Err(TdError::VertexUncovered { v: 0 })
            };
        }
        if !self.tree.is_connected() {
            return Err(TdError::TreeNotConnected);
        }
        if self.tree.m() != t - 1 {
            return Err(TdError::TreeNotAcyclic);
        }
        for (i, bag) in self.bags.iter().enumerate() {
            if let Some(&v) = bag.iter().find(|&&v| v >= host.n()) {
                return Err(TdError::BagOutOfRange { bag: i, v });
            }
        }
        let mut nodes_of: Vec<Vec<usize>> = vec![Vec::new(); host.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                nodes_of[v].push(i);
            }
        }
        for v in 0..host.n() {
            if nodes_of[v].is_empty() {
                return Err(TdError::VertexUncovered { v });
            }
        }
        for (u, v) in host.edges() {
            let together = self
                .bags
                .iter()
                .any(|bag| bag.contains(&u) && bag.contains(&v));
            if !together {
                return Err(TdError::EdgeUncovered { u, v });
            }
        }
        // subtree condition: the nodes holding v induce a connected subtree
        for v in 0..host.n() {
            let nodes = &nodes_of[v];
            if !self.tree.is_connected_set(nodes) {
                return Err(TdError::NotSubtree { v });
            }
        }
        Ok(())
    }
}

/// Degeneracy of the graph: a treewidth lower bound.
pub fn degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        best = best.max(deg[v]);
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    best
}

/// Min-fill elimination order: repeatedly eliminates the vertex whose
/// neighborhood needs the fewest fill edges (ties by smallest id).
fn min_fill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None; // (fill, v)
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for i in 0..nbrs.len() {
                for j in i + 1..nbrs.len() {
                    if !adj[nbrs[i]].contains(&nbrs[j]) {
                        fill += 1;
                    }
                }
            }
            if best.is_none_or(|(bf, bv)| (fill, v) < (bf, bv)) {
                best = Some((fill, v));
            }
        }
        let (_, v) = best.unwrap();
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for i in 0..nbrs.len() {
            for j in i + 1..nbrs.len() {
                adj[nbrs[i]].insert(nbrs[j]);
                adj[nbrs[j]].insert(nbrs[i]);
            }
        }
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Builds the tree decomposition induced by an elimination order: the bag of
/// `v` is `v` plus its neighborhood in the fill graph when eliminated; each
/// bag hangs off the bag of its earliest-eliminated later neighbor.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n);
    if n == 0 {
        return TreeDecomposition { tree: Graph::empty(1), bags: vec![Vec::new()] };
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag = nbrs.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        if let Some(&p) = nbrs.iter().min_by_key(|&&w| pos[w]) {
            edges.push((i, pos[p]));
        }
        for a in 0..nbrs.len() {
            for b in a + 1..nbrs.len() {
                adj[nbrs[a]].insert(nbrs[b]);
                adj[nbrs[b]].insert(nbrs[a]);
            }
        }
        for &w in &nbrs {
            adj[w].remove(&v);
        }
        adj[v].clear();
    }
    // roots (bags with no later neighbor) get chained to keep the tree whole
    let mut tree = Graph::from_edges(n, &edges).unwrap();
    let comps = tree.components();
    if comps.len() > 1 {
        let mut extra = edges;
        for pair in comps.windows(2) {
            extra.push((pair[0][0], pair[1][0]));
        }
        tree = Graph::from_edges(n, &extra).unwrap();
    }
    TreeDecomposition { tree, bags }
}

/// Min-fill heuristic decomposition: an upper bound, never usable for
/// lower-bound claims.
pub fn min_fill_decomposition(g: &Graph) -> (i64, TreeDecomposition) {
    let order = min_fill_order(g);
    let td = decomposition_from_order(g, &order);
    debug_assert!(td.validate(g).is_ok());
    (td.width(), td)
}

/// Exact treewidth with a witnessing decomposition, for graphs of at most
/// `cap` vertices. The decomposition is re-validated before returning.
pub fn exact_treewidth(g: &Graph, cap: usize) -> Result<(i64, TreeDecomposition), TwError> {
    if g.n() > cap {
        return Err(TwError::CapExceeded { n: g.n(), cap });
    }
    if g.n() > 63 {
        return Err(TwError::TooLarge { n: g.n() });
    }
    if g.n() == 0 {
        let td = TreeDecomposition { tree: Graph::empty(1), bags: vec![Vec::new()] };
        return Ok((-1, td));
    }
    let order = exact_elimination_order(g);
    let td = decomposition_from_order(g, &order);
    td.validate(g).expect("exact decomposition must validate");
    Ok((td.width(), td))
}

/// Optimal elimination order, found per component and concatenated.
fn exact_elimination_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        let (sub, map) = g.induced_subgraph(&comp).unwrap();
        let local = component_order(&sub);
        order.extend(local.into_iter().map(|v| map.to_old(v)));
    }
    order
}

fn component_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let masks: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let lb = degeneracy(g);
    let ub_order = min_fill_order(g);
    let ub = order_width(&masks, n, &ub_order);
    if lb == ub {
        return ub_order;
    }
    for target in lb..ub {
        let mut failed: HashSet<u64> = HashSet::new();
        let mut order = Vec::with_capacity(n);
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if decide(&masks, full, target, &mut failed, &mut order) {
            debug_assert!(order_width(&masks, n, &order) <= target);
            return order;
        }
    }
    ub_order
}

/// Maximum elimination degree along an order (the width it certifies).
fn order_width(masks: &[u64], n: usize, order: &[usize]) -> usize {
    let mut adj = masks.to_vec();
    let mut width = 0;
    let mut alive = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for &v in order {
        let nbrs = adj[v] & alive & !(1 << v);
        width = width.max(nbrs.count_ones() as usize);
        let mut m = nbrs;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            adj[w] |= nbrs & !(1 << w);
        }
        alive &= !(1 << v);
    }
    width
}

/// Is there an elimination order of the vertices in `remaining` whose
/// elimination degrees all stay at most `target`?
fn decide(masks: &[u64], remaining: u64, target: usize, failed: &mut HashSet<u64>, order: &mut Vec<usize>) -> bool {
    let count = remaining.count_ones() as usize;
    if count <= target + 1 {
        let mut m = remaining;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            order.push(v);
        }
        return true;
    }
    if failed.contains(&remaining) {
        return false;
    }
    // simplicial vertices are safe forced moves
    let mut m = remaining;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let nbrs = masks[v] & remaining;
        let deg = nbrs.count_ones() as usize;
        let simplicial = {
            let mut clique = true;
            let mut a = nbrs;
            while a != 0 {
                let x = a.trailing_zeros() as usize;
                a &= a - 1;
                if nbrs & !(1 << x) & !masks[x] != 0 {
                    clique = false;
                    break;
                }
            }
            clique
        };
        if simplicial {
            if deg > target {
                failed.insert(remaining);
                return false;
            }
            order.push(v);
            // neighborhood already a clique: no fill needed
            if decide(masks, remaining & !(1 << v), target, failed, order) {
                return true;
            }
            order.pop();
            failed.insert(remaining);
            return false;
        }
    }
    let mut m = remaining;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let nbrs = masks[v] & remaining & !(1 << v);
        if nbrs.count_ones() as usize > target {
            continue;
        }
        // eliminate v: its current neighborhood becomes a clique
        let mut filled = masks.to_vec();
        let mut a = nbrs;
        while a != 0 {
            let x = a.trailing_zeros() as usize;
            a &= a - 1;
            filled[x] |= nbrs & !(1 << x);
        }
        order.push(v);
        if decide(&filled, remaining & !(1 << v), target, failed, order) {
            return true;
        }
        order.pop();
    }
    failed.insert(remaining);
    false
}

/// Picks a bag of the decomposition that is a balanced separator. Some bag
/// always works (the centroid argument); the first in node order is
/// returned, so the answer is deterministic. Its size is at most width+1.
pub fn separator_from_decomposition(
    g: &Graph,
    w: &WeightFunction,
    td: &TreeDecomposition,
) -> Result<Vec<usize>, TdError> {
    td.validate(g)?;
    for bag in &td.bags {
        if crate::separators::is_balanced_separator(g, w, bag) {
            return Ok(bag.clone());
        }
    }
    Err(TdError::NoBalancedBag)
}
