//! Brute-force reference oracles.
//!
//! Everything here is written for independence from the main crate, not for
//! speed: different algorithms, different representations (bitmask graphs).
//! The test suites compare the production implementations against these on
//! small inputs. Nothing in this crate is part of the shipped library.


#![allow(clippy::needless_range_loop)]
use num::BigUint;

/// Tiny bitmask graph on at most 64 vertices: `adj[v]` has bit `w` set iff
/// `vw` is an edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    pub n: usize,
    pub adj: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64);
        BitGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = BitGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Connected component of `seed` inside `allowed` (seed must be in it).
    pub fn component_of(&self, seed: usize, allowed: u64) -> u64 {
        let mut comp = 1u64 << seed;
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v] & allowed & !comp;
            }
            comp |= next;
            frontier = next;
        }
        comp
    }

    /// Components of the subgraph induced by `allowed`, as masks.
    pub fn components_in(&self, allowed: u64) -> Vec<u64> {
        let mut left = allowed;
        let mut out = Vec::new();
        while left != 0 {
            let seed = left.trailing_zeros() as usize;
            let comp = self.component_of(seed, left);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected_mask(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let seed = mask.trailing_zeros() as usize;
        self.component_of(seed, mask) == mask
    }
}

/// Exhaustive shortest-cycle search by DFS path enumeration anchored at the
/// minimum vertex of the cycle. Returns `None` for forests.
pub fn girth_exhaustive(g: &BitGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    fn dfs(g: &BitGraph, anchor: usize, last: usize, onpath: u64, len: usize, best: &mut Option<usize>) {
        if let Some(b) = *best {
            if len + 1 >= b {
                // cannot improve: closing now costs len+1 edges at least
            }
        }
        let mut nbrs = g.adj[last];
        while nbrs != 0 {
            let w = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            if w == anchor && len >= 2 {
                let cycle = len + 1;
                if best.is_none_or(|b| cycle < b) {
                    *best = Some(cycle);
                }
            } else if w > anchor && onpath >> w & 1 == 0
                && best.is_none_or(|b| len + 2 < b + 1) {
                    dfs(g, anchor, w, onpath | 1 << w, len + 1, best);
                }
        }
    }
    for a in 0..g.n {
        dfs(g, a, a, 1 << a, 0, &mut best);
    }
    best
}

/// Exact treewidth by dynamic programming over vertex subsets. `n <= 20`
/// is comfortable. Returns -1 for the empty graph.
pub fn treewidth_dp(g: &BitGraph) -> i64 {
    let n = g.n;
    if n == 0 {
        return -1;
    }
    assert!(n <= 20, "subset DP oracle is limited to 20 vertices");
    let full: usize = (1 << n) - 1;
    // q(s, v): number of vertices outside s+{v} reachable from v through s
    let q = |s: usize, v: usize| -> u32 {
        let comp = g.component_of(v, (s as u64) | (1 << v));
        let mut out = 0u64;
        let mut m = comp;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            out |= g.adj[u];
        }
        out &= !((s as u64) | (1 << v));
        out.count_ones()
    };
    let mut tw = vec![u32::MAX; full + 1];
    tw[0] = 0;
    for s in 1..=full {
        let mut best = u32::MAX;
        let mut m = s;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let sv = s & !(1 << v);
            let val = tw[sv].max(q(sv, v));
            if val < best {
                best = val;
            }
        }
        tw[s] = best;
    }
    tw[full] as i64
}

/// Exhaustive minimum balanced separator: scans all vertex subsets by
/// (size, lexicographic) order and returns the first whose removal leaves
/// every component with weight at most half the total denominator.
///
/// `num` are per-vertex numerators over the common denominator `den`.
pub fn min_balanced_separator_bruteforce(
    g: &BitGraph,
    num: &[BigUint],
    den: &BigUint,
    cap: usize,
) -> Option<Vec<usize>> {
    let half_ok = |mask: u64| -> bool {
        let mut sum = BigUint::ZERO;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            sum += &num[v];
        }
        &sum * 2u32 <= *den
    };
    let balanced = |sep: &[usize]| -> bool {
        let mut removed = 0u64;
        for &v in sep {
            removed |= 1 << v;
        }
        g.components_in(g.full_mask() & !removed).into_iter().all(half_ok)
    };
    for size in 0..=cap.min(g.n) {
        let mut found = None;
        combinations(g.n, size, &mut |sep| {
            if found.is_none() && balanced(sep) {
                found = Some(sep.to_vec());
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Visits all `size`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        let remaining = size - cur.len();
        for v in start..=n.saturating_sub(remaining) {
            cur.push(v);
            rec(n, size, v + 1, cur, f);
            cur.pop();
        }
    }
    if size > n {
        return;
    }
    rec(n, size, 0, &mut Vec::new(), f);
}

/// All 4^-vertex-or-fewer induced minors of `g`, as canonical codes, found by
/// exhaustive enumeration of connected partitions of every vertex subset.
pub fn induced_minor_codes(g: &BitGraph, max_pattern: usize) -> std::collections::HashSet<(usize, u64)> {
    let mut out = std::collections::HashSet::new();
    let full = g.full_mask();
    let mut subset = full;
    loop {
        // enumerate connected partitions of `subset` into <= max_pattern blocks
        let mut blocks: Vec<u64> = Vec::new();
        enumerate_partitions(g, subset, max_pattern, &mut blocks, &mut out);
        if subset == 0 {
            break;
        }
        subset = (subset - 1) & full;
    }
    out
}

fn enumerate_partitions(
    g: &BitGraph,
    rest: u64,
    max_blocks: usize,
    blocks: &mut Vec<u64>,
    out: &mut std::collections::HashSet<(usize, u64)>,
) {
    if rest == 0 {
        if !blocks.is_empty() {
            out.insert(contracted_code(g, blocks));
        }
        return;
    }
    if blocks.len() == max_blocks {
        return;
    }
    let anchor = rest.trailing_zeros() as usize;
    // all connected subsets of `rest` containing `anchor`
    let mut subs = Vec::new();
    connected_subsets_containing(g, anchor, rest, &mut subs);
    for s in subs {
        blocks.push(s);
        enumerate_partitions(g, rest & !s, max_blocks, blocks, out);
        blocks.pop();
    }
}

fn connected_subsets_containing(g: &BitGraph, anchor: usize, allowed: u64, out: &mut Vec<u64>) {
    fn extend(g: &BitGraph, cur: u64, ext: u64, allowed: u64, out: &mut Vec<u64>) {
        out.push(cur);
        let mut e = ext;
        let mut banned = 0u64;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let newcur = cur | 1 << v;
            let newext = (e | (g.adj[v] & allowed & !newcur)) & !banned & !newcur;
            extend(g, newcur, newext, allowed, out);
            banned |= 1 << v;
        }
    }
    let ext = g.adj[anchor] & allowed;
    extend(g, 1 << anchor, ext, allowed, out);
}

/// Canonical code of the contraction of `blocks` (which must be disjoint
/// connected sets): graph on `p` vertices with an edge where blocks touch,
/// canonized over all p! labelings (p <= 8).
pub fn contracted_code(g: &BitGraph, blocks: &[u64]) -> (usize, u64) {
    let p = blocks.len();
    let mut adj = vec![0u64; p];
    for i in 0..p {
        for j in i + 1..p {
            if blocks_touch(g, blocks[i], blocks[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    (p, canonical_code(p, &adj))
}

fn blocks_touch(g: &BitGraph, a: u64, b: u64) -> bool {
    let mut m = a;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if g.adj[v] & b != 0 {
            return true;
        }
    }
    false
}

/// Minimum edge-code over all vertex permutations. Usable up to ~8 vertices.
pub fn canonical_code(n: usize, adj: &[u64]) -> u64 {
    assert!(n <= 8);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    permute(&mut perm, 0, &mut |p| {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                if adj[p[i]] >> p[j] & 1 == 1 {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        if code < best {
            best = code;
        }
    });
    best
}

fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// All connected graphs on exactly `n` labeled vertices, one representative
/// per isomorphism class, generated by vertex augmentation: every class on
/// `s` vertices extends each class on `s-1` vertices by one new vertex with
/// every possible neighborhood, deduplicated by canonical code.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<BitGraph> {
    assert!((1..=7).contains(&n));
    let mut classes: Vec<BitGraph> = vec![BitGraph::new(1)];
    for size in 2..=n {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for g in &classes {
            for nb in 0..(1u64 << (size - 1)) {
                let mut h = BitGraph::new(size);
                for (u, v) in g.edges() {
                    h.add_edge(u, v);
                }
                for w in 0..size - 1 {
                    if nb >> w & 1 == 1 {
                        h.add_edge(w, size - 1);
                    }
                }
                if seen.insert(canonical_code(size, &h.adj)) {
                    next.push(h);
                }
            }
        }
        classes = next;
    }
    classes.into_iter().filter(|g| g.is_connected_mask(g.full_mask())).collect()
}

/// All graphs (connected or not) on exactly `n` labeled vertices up to
/// isomorphism. Intended for small `n` (patterns).
pub fn graphs_up_to_iso(n: usize) -> Vec<BitGraph> {
    assert!(n <= 5);
    let pairs: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                v.push((i, j));
            }
        }
        v
    };
    let nbits = pairs.len();
    let mut out: Vec<BitGraph> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for mask in 0u64..(1u64 << nbits) {
        let mut g = BitGraph::new(n);
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        let code = canonical_code(n, &g.adj);
        if seen.insert(code) {
            out.push(g);
        }
    }
    out
}

/// Brute-force graph isomorphism for graphs on the same small vertex count.
pub fn isomorphic(a: &BitGraph, b: &BitGraph) -> bool {
    if a.n != b.n {
        return false;
    }
    if a.n > 8 {
        panic!("oracle isomorphism limited to 8 vertices");
    }
    canonical_code(a.n, &a.adj) == canonical_code(b.n, &b.adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> BitGraph {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((0, n - 1));
        BitGraph::from_edges(n, &e)
    }

    #[test]
    fn girth_oracle_basics() {
        assert_eq!(girth_exhaustive(&cycle(5)), Some(5));
        assert_eq!(girth_exhaustive(&BitGraph::from_edges(4, &[(0, 1), (1, 2)])), None);
        let mut g = cycle(6);
        g.add_edge(0, 3);
        assert_eq!(girth_exhaustive(&g), Some(4));
    }

    #[test]
    fn treewidth_oracle_basics() {
        let k4 = BitGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(treewidth_dp(&k4), 3);
        assert_eq!(treewidth_dp(&cycle(6)), 2);
        assert_eq!(treewidth_dp(&BitGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])), 1);
    }

    #[test]
    fn connected_graph_counts_match_known_values() {
        assert_eq!(connected_graphs_up_to_iso(1).len(), 1);
        assert_eq!(connected_graphs_up_to_iso(2).len(), 1);
        assert_eq!(connected_graphs_up_to_iso(3).len(), 2);
        assert_eq!(connected_graphs_up_to_iso(4).len(), 6);
        assert_eq!(connected_graphs_up_to_iso(5).len(), 21);
    }

    #[test]
    fn pattern_counts_match_known_values() {
        assert_eq!(graphs_up_to_iso(1).len(), 1);
        assert_eq!(graphs_up_to_iso(2).len(), 2);
        assert_eq!(graphs_up_to_iso(3).len(), 4);
        assert_eq!(graphs_up_to_iso(4).len(), 11);
    }

    #[test]
    fn induced_minors_of_c5() {
        let codes = induced_minor_codes(&cycle(5), 4);
        let c4 = cycle(4);
        let c3 = cycle(3);
        assert!(codes.contains(&(4, canonical_code(4, &c4.adj))));
        assert!(codes.contains(&(3, canonical_code(3, &c3.adj))));
        // K4 is not an induced minor of C5
        let k4 = BitGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(!codes.contains(&(4, canonical_code(4, &k4.adj))));
    }

    #[test]
    fn bruteforce_separator_on_path() {
        let p3 = BitGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let num: Vec<BigUint> = vec![1u32.into(), 1u32.into(), 1u32.into()];
        let den: BigUint = 3u32.into();
        assert_eq!(min_balanced_separator_bruteforce(&p3, &num, &den, 3), Some(vec![1]));
    }
}
