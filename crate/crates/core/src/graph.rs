//! Immutable simple undirected graphs over dense integer vertex ids.
//!
//! All algorithms in this crate work on [`Graph`]. Graphs are immutable after
//! construction: operations that "modify" a graph (such as taking an induced
//! subgraph) return a new graph together with an id map, so certificates can
//! always reference stable vertex ids.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {v} out of range for graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate vertex {v} in vertex set")]
    DuplicateVertex { v: usize },
}

/// Simple undirected graph with sorted adjacency lists.
///
/// Invariants: no self-loops, no parallel edges, adjacency symmetric, each
/// neighbor list strictly ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n(), self.m(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged;
    /// self-loops and out-of-range endpoints are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Edge count; half the sum of neighbor-list lengths.
    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { v, n: self.n() })
        }
    }

    /// Induced subgraph `G[X]` plus the id map. `xs` must be sorted
    /// ascending with no duplicates; the new id of `xs[i]` is `i`.
    pub fn induced_subgraph(&self, xs: &[usize]) -> Result<(Graph, IdMap), GraphError> {
        for w in xs.windows(2) {
            if w[0] >= w[1] {
                return Err(GraphError::DuplicateVertex { v: w[1] });
            }
        }
        if let Some(&last) = xs.last() {
            self.check_vertex(last)?;
        }
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in xs.iter().enumerate() {
            new_id[v] = i;
        }
        let mut adj = vec![Vec::new(); xs.len()];
        for (i, &v) in xs.iter().enumerate() {
            for &w in &self.adj[v] {
                if new_id[w] != usize::MAX {
                    adj[i].push(new_id[w]);
                }
            }
            // neighbor ids are visited in ascending old order, and the map is
            // monotone, so the list is already sorted
        }
        Ok((Graph { adj }, IdMap { old_ids: xs.to_vec() }))
    }

    /// BFS distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path distance, or `None` if `v` is unreachable from `u`.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[u] = 0;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            for &w in &self.adj[x] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    if w == v {
                        return Some(dist[w]);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Length of a shortest cycle, or `None` for forests.
    ///
    /// Uses the per-edge formulation: for each edge `uv`, a shortest cycle
    /// through `uv` has length `1 + dist(u, v)` in the graph without `uv`.
    /// This avoids the even-cycle pitfall of per-vertex BFS.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (u, v) in self.edges() {
            if let Some(d) = self.distance_avoiding_edge(u, v) {
                let cycle = d + 1;
                if best.is_none_or(|b| cycle < b) {
                    best = Some(cycle);
                }
            }
        }
        best
    }

    /// BFS distance from `u` to `v` that never crosses the edge `uv`.
    fn distance_avoiding_edge(&self, u: usize, v: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[u] = 0;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            for &w in &self.adj[x] {
                if x == u && w == v {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    if w == v {
                        return Some(dist[w]);
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Connected components, each as a sorted vertex list, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks whether a vertex set `xs` induces a connected subgraph.
    /// The empty set counts as connected.
    pub fn is_connected_set(&self, xs: &[usize]) -> bool {
        if xs.len() <= 1 {
            return true;
        }
        let inset = |v: usize| xs.binary_search(&v).is_ok();
        let mut seen = vec![false; xs.len()];
        seen[0] = true;
        let mut stack = vec![xs[0]];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if inset(w) {
                    let i = xs.binary_search(&w).unwrap();
                    if !seen[i] {
                        seen[i] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
        }
        count == xs.len()
    }

    /// Returns a triangle as a sorted triple, if one exists.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for (u, v) in self.edges() {
            // intersect the two sorted neighbor lists
            let (mut i, mut j) = (0, 0);
            let (a, b) = (&self.adj[u], &self.adj[v]);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let w = a[i];
                        let mut t = [u, v, w];
                        t.sort_unstable();
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    // --- standard constructions used across tests and suites ---

    /// Path on `n` vertices: 0 - 1 - ... - n-1.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in 0..b {
                edges.push((u, a + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    /// The k-by-k wall: k rows of bricks over 2k columns with alternating
    /// vertical edges. Row 1 holds the even columns, interior rows all 2k
    /// columns, and row k the columns of parity `k mod 2`. The wall is planar
    /// with maximum degree 3 and treewidth k.
    pub fn wall(k: usize) -> Self {
        assert!(k >= 2);
        let mut id_of = std::collections::BTreeMap::new();
        let mut row_cols: Vec<Vec<usize>> = Vec::new();
        for r in 1..=k {
            let cols: Vec<usize> = if r == 1 {
                (0..2 * k).filter(|c| c % 2 == 0).collect()
            } else if r == k {
                (0..2 * k).filter(|c| c % 2 == k % 2).collect()
            } else {
                (0..2 * k).collect()
            };
            for &c in &cols {
                let next = id_of.len();
                id_of.insert((r, c), next);
            }
            row_cols.push(cols);
        }
        let mut edges = Vec::new();
        for (r, cols) in row_cols.iter().enumerate() {
            for w in cols.windows(2) {
                edges.push((id_of[&(r + 1, w[0])], id_of[&(r + 1, w[1])]));
            }
        }
        for r in 1..k {
            for c in 0..2 * k {
                if c % 2 == (r + 1) % 2 {
                    if let (Some(&x), Some(&y)) = (id_of.get(&(r, c)), id_of.get(&(r + 1, c))) {
                        edges.push((x, y));
                    }
                }
            }
        }
        Graph::from_edges(id_of.len(), &edges).unwrap()
    }
}

/// Id map returned by [`Graph::induced_subgraph`]: a bijection between the
/// kept old ids and `0..len`.
#[derive(Clone, Debug)]
pub struct IdMap {
    old_ids: Vec<usize>,
}

impl IdMap {
    pub fn len(&self) -> usize {
        self.old_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.old_ids.is_empty()
    }

    pub fn to_old(&self, new: usize) -> usize {
        self.old_ids[new]
    }

    pub fn to_new(&self, old: usize) -> Option<usize> {
        self.old_ids.binary_search(&old).ok()
    }

    pub fn old_ids(&self) -> &[usize] {
        &self.old_ids
    }
}

/// Validates a vertex set: sorted ascending, no duplicates, all in range.
pub fn validate_vertex_set(g: &Graph, xs: &[usize]) -> Result<(), GraphError> {
    for w in xs.windows(2) {
        if w[0] >= w[1] {
            return Err(GraphError::DuplicateVertex { v: w[1] });
        }
    }
    if let Some(&last) = xs.last() {
        if last >= g.n() {
            return Err(GraphError::VertexOutOfRange { v: last, n: g.n() });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_edges_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop { v: 1 }));
        // duplicate edges merge
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn induced_subgraph_identity_on_c5() {
        let c5 = Graph::cycle(5);
        let (h, map) = c5.induced_subgraph(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(h, c5);
        assert_eq!(map.to_old(3), 3);
    }

    #[test]
    fn induced_subgraph_of_c5_consecutive_is_path() {
        let c5 = Graph::cycle(5);
        let (h, _) = c5.induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(h, Graph::path(3));
    }

    #[test]
    fn induced_subgraph_composes() {
        // G[X][Y'] = G[Y] for Y ⊆ X
        let g = Graph::wall(3);
        let x: Vec<usize> = (0..10).collect();
        let (gx, mx) = g.induced_subgraph(&x).unwrap();
        let y = [0usize, 2, 4, 5, 7, 9];
        let y_in_x: Vec<usize> = y.iter().map(|&v| mx.to_new(v).unwrap()).collect();
        let (gxy, _) = gx.induced_subgraph(&y_in_x).unwrap();
        let (gy, _) = g.induced_subgraph(&y).unwrap();
        assert_eq!(gxy, gy);
    }

    #[test]
    fn distance_basics() {
        let p3 = Graph::path(3);
        assert_eq!(p3.distance(0, 0), Some(0));
        assert_eq!(p3.distance(0, 2), Some(2));
        let two_edges = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_edges.distance(0, 3), None);
    }

    #[test]
    fn girth_of_cycles_and_trees() {
        assert_eq!(Graph::cycle(7).girth(), Some(7));
        assert_eq!(Graph::path(6).girth(), None);
        assert_eq!(Graph::empty(4).girth(), None);
        assert_eq!(Graph::complete(4).girth(), Some(3));
        // even cycle with a chord: shortest cycle is 4
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        assert_eq!(g.girth(), Some(4));
    }

    #[test]
    fn triangle_detection() {
        assert!(!Graph::complete(3).is_triangle_free());
        assert!(Graph::cycle(4).is_triangle_free());
        assert_eq!(Graph::complete(3).find_triangle(), Some([0, 1, 2]));
    }

    #[test]
    fn components_sorted() {
        let g = Graph::from_edges(5, &[(3, 4), (0, 1)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert!(Graph::path(4).is_connected());
    }

    #[test]
    fn wall_shape() {
        let w2 = Graph::wall(2);
        assert_eq!((w2.n(), w2.m()), (4, 4)); // the 4-cycle
        let w3 = Graph::wall(3);
        assert_eq!((w3.n(), w3.m()), (12, 15));
        assert!(w3.max_degree() <= 3);
        let w5 = Graph::wall(5);
        assert_eq!(w5.n(), 40);
        assert!(w5.max_degree() <= 3);
    }

    #[test]
    fn connected_set_checks() {
        let p5 = Graph::path(5);
        assert!(p5.is_connected_set(&[1, 2, 3]));
        assert!(!p5.is_connected_set(&[0, 2]));
        assert!(p5.is_connected_set(&[]));
    }
}

#[cfg(test)]
mod oracle_tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn girth_matches_cycle_enumeration_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for n in 3..=12usize {
            for _ in 0..25 {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(0.25) {
                            edges.push((u, v));
                        }
                    }
                }
                let g = Graph::from_edges(n, &edges).unwrap();
                let oracle = lw_oracles::girth_exhaustive(&lw_oracles::BitGraph::from_edges(n, &edges));
                assert_eq!(g.girth(), oracle, "n={n} edges={edges:?}");
            }
        }
    }

    #[test]
    fn distance_satisfies_triangle_inequality() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let g = Graph::wall(4);
        for _ in 0..200 {
            let a = rng.gen_range(0..g.n());
            let b = rng.gen_range(0..g.n());
            let c = rng.gen_range(0..g.n());
            if let (Some(ab), Some(bc), Some(ac)) = (g.distance(a, b), g.distance(b, c), g.distance(a, c)) {
                assert!(ac <= ab + bc, "triangle inequality on ({a},{b},{c})");
            }
        }
    }
}
