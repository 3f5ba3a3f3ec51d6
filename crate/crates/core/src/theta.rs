//! Theta machinery: long and wide thetas, anticomplete path families, the
//! order-constrained crossing pattern, and the three-vertex connector.
//!
//! A theta is two non-adjacent ends joined by three pairwise internally
//! anticomplete induced paths, each of length at least two, with no other
//! vertices or edges; its length is the distance between the ends inside it.
//! Thetas of length at least four admit, for every linear order on their
//! vertices, a 4-subset inducing exactly the crossing pair {x1x3, x2x4},
//! which rules out order-constrained outerstring representations. Absence of
//! that witness for some order is reported as a falsification, a first-class
//! result.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::search::{Budget, SearchResult};
use crate::separators::pipeline::PipelineState;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThetaViolation {
    #[error("ends must be distinct")]
    EqualEnds,
    #[error("ends are adjacent in the host")]
    AdjacentEnds,
    #[error("path {path} does not run between the ends")]
    WrongEnds { path: usize },
    #[error("path {path} is too short (length {len} < 2)")]
    PathTooShort { path: usize, len: usize },
    #[error("path {path} uses non-edge ({u},{v})")]
    NotAPath { path: usize, u: usize, v: usize },
    #[error("path {path} repeats vertex {v}")]
    RepeatedVertex { path: usize, v: usize },
    #[error("path {path} has chord ({u},{v})")]
    Chord { path: usize, u: usize, v: usize },
    #[error("interiors of paths {a} and {b} are not anticomplete: ({u},{v})")]
    InteriorsTouch { a: usize, b: usize, u: usize, v: usize },
    #[error("claimed length {claimed} but the shortest path has length {actual}")]
    WrongLength { claimed: usize, actual: usize },
}

/// An induced theta in a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaCertificate {
    pub a: usize,
    pub b: usize,
    /// Three full vertex sequences from `a` to `b`.
    pub paths: [Vec<usize>; 3],
    /// Distance between the ends inside the theta: the minimum path length.
    pub length: usize,
}

impl ThetaCertificate {
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.paths.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// The theta as a standalone graph over `self.vertices()` (ids are
    /// positions in that sorted list).
    pub fn as_graph(&self) -> Graph {
        let vs = self.vertices();
        let idx = |v: usize| vs.binary_search(&v).unwrap();
        let mut edges = Vec::new();
        for p in &self.paths {
            for w in p.windows(2) {
                edges.push((idx(w[0]), idx(w[1])));
            }
        }
        Graph::from_edges(vs.len(), &edges).unwrap()
    }
}

/// Independent validation of every certificate invariant: three induced
/// paths with pairwise anticomplete interiors, non-adjacent ends, chordless
/// union, and the recomputed length.
pub fn validate_theta(host: &Graph, cert: &ThetaCertificate) -> Result<(), ThetaViolation> {
    if cert.a == cert.b {
        return Err(ThetaViolation::EqualEnds);
    }
    if host.has_edge(cert.a, cert.b) {
        return Err(ThetaViolation::AdjacentEnds);
    }
    for (i, p) in cert.paths.iter().enumerate() {
        if p.first() != Some(&cert.a) || p.last() != Some(&cert.b) {
            return Err(ThetaViolation::WrongEnds { path: i });
        }
        if p.len() < 3 {
            return Err(ThetaViolation::PathTooShort { path: i, len: p.len().saturating_sub(1) });
        }
        let mut seen = std::collections::HashSet::new();
        for &v in p {
            if !seen.insert(v) {
                return Err(ThetaViolation::RepeatedVertex { path: i, v });
            }
        }
        for w in p.windows(2) {
            if !host.has_edge(w[0], w[1]) {
                return Err(ThetaViolation::NotAPath { path: i, u: w[0], v: w[1] });
            }
        }
        // induced: non-consecutive vertices of a path are non-adjacent
        for x in 0..p.len() {
            for y in x + 2..p.len() {
                if host.has_edge(p[x], p[y]) {
                    return Err(ThetaViolation::Chord { path: i, u: p[x], v: p[y] });
                }
            }
        }
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let pi = &cert.paths[i][1..cert.paths[i].len() - 1];
            let pj = &cert.paths[j][1..cert.paths[j].len() - 1];
            for &x in pi {
                for &y in pj {
                    if x == y || host.has_edge(x, y) {
                        return Err(ThetaViolation::InteriorsTouch { a: i, b: j, u: x, v: y });
                    }
                }
            }
        }
    }
    let actual = cert.paths.iter().map(|p| p.len() - 1).min().unwrap();
    if actual != cert.length {
        return Err(ThetaViolation::WrongLength { claimed: cert.length, actual });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// induced path enumeration
// ---------------------------------------------------------------------------

/// Finds the lexicographically smallest induced `u`-`v` path whose interior
/// lies in `allowed` and which is strictly greater than `lower` (another
/// such path), if any. `Err(())` reports budget exhaustion.
///
/// Paths compare as vertex-id sequences. Candidates extend in ascending
/// neighbor order, so the first completed path is the smallest.
fn next_induced_path(
    g: &Graph,
    u: usize,
    v: usize,
    allowed: &[bool],
    lower: Option<&[usize]>,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, ()> {
    // blocked[w] > 0: w is a non-tip path vertex or adjacent to one
    let mut blocked = vec![0u32; g.n()];
    let mut path = vec![u];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        g: &Graph,
        v: usize,
        allowed: &[bool],
        lower: Option<&[usize]>,
        tight: bool,
        path: &mut Vec<usize>,
        blocked: &mut Vec<u32>,
        budget: &mut Budget,
    ) -> Result<Option<Vec<usize>>, ()> {
        if !budget.tick() {
            return Err(());
        }
        let tip = *path.last().unwrap();
        let depth = path.len();
        let floor = if tight { lower.and_then(|l| l.get(depth).copied()) } else { None };
        for &w in g.neighbors(tip) {
            if let Some(fl) = floor {
                if w < fl {
                    continue;
                }
            }
            let still_tight = tight && floor == Some(w);
            if w == v {
                if blocked[v] == 0 && !still_tight {
                    let mut found = path.clone();
                    found.push(v);
                    return Ok(Some(found));
                }
                continue;
            }
            if !allowed[w] || blocked[w] > 0 {
                continue;
            }
            path.push(w);
            for &x in g.neighbors(tip) {
                blocked[x] += 1;
            }
            blocked[tip] += 1;
            let out = rec(g, v, allowed, lower, still_tight, path, blocked, budget)?;
            blocked[tip] -= 1;
            for &x in g.neighbors(tip) {
                blocked[x] -= 1;
            }
            path.pop();
            if out.is_some() {
                return Ok(out);
            }
        }
        Ok(None)
    }
    rec(g, v, allowed, lower, lower.is_some(), &mut path, &mut blocked, budget)
}

/// Removes a path interior and its neighborhood from `allowed`, returning
/// the flipped vertices for undo.
fn block_interior(g: &Graph, p: &[usize], allowed: &mut [bool]) -> Vec<usize> {
    let mut flipped = Vec::new();
    for &x in &p[1..p.len() - 1] {
        if allowed[x] {
            allowed[x] = false;
            flipped.push(x);
        }
        for &y in g.neighbors(x) {
            if allowed[y] {
                allowed[y] = false;
                flipped.push(y);
            }
        }
    }
    flipped
}

/// Finds exactly `count` pairwise internally anticomplete induced `a`-`b`
/// paths, taken in increasing lexicographic order. Requires non-adjacent
/// ends, so every path has length at least 2.
fn anticomplete_paths(
    g: &Graph,
    a: usize,
    b: usize,
    count: usize,
    budget: &mut Budget,
) -> Result<Option<Vec<Vec<usize>>>, ()> {
    debug_assert!(!g.has_edge(a, b));
    fn rec(
        g: &Graph,
        a: usize,
        b: usize,
        count: usize,
        allowed: &mut Vec<bool>,
        chosen: &mut Vec<Vec<usize>>,
        budget: &mut Budget,
    ) -> Result<bool, ()> {
        if chosen.len() == count {
            return Ok(true);
        }
        // every further path leaves a and enters b by distinct usable exits
        let exits = |x: usize| g.neighbors(x).iter().filter(|&&w| allowed[w]).count();
        if exits(a) < count - chosen.len() || exits(b) < count - chosen.len() {
            return Ok(false);
        }
        let mut lower = chosen.last().cloned();
        loop {
            let next = next_induced_path(g, a, b, allowed, lower.as_deref(), budget)?;
            let Some(p) = next else { return Ok(false) };
            let flipped = block_interior(g, &p, allowed);
            chosen.push(p.clone());
            if rec(g, a, b, count, allowed, chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
            for x in flipped {
                allowed[x] = true;
            }
            lower = Some(p);
        }
    }
    let mut allowed: Vec<bool> = (0..g.n()).map(|x| x != a && x != b).collect();
    let mut chosen = Vec::new();
    let ok = rec(g, a, b, count, &mut allowed, &mut chosen, budget)?;
    Ok(if ok { Some(chosen) } else { None })
}

// ---------------------------------------------------------------------------
// long theta search
// ---------------------------------------------------------------------------

/// Searches for an induced theta of length at least `min_length`:
/// non-adjacent seed pairs at distance >= min_length, three pairwise
/// internally anticomplete induced paths grown in lexicographic order.
/// The returned certificate is re-validated independently.
pub fn find_long_theta(g: &Graph, min_length: usize, budget: &mut Budget) -> SearchResult<ThetaCertificate> {
    assert!(min_length >= 2);
    for a in 0..g.n() {
        let dist = g.bfs_distances(a);
        for b in a + 1..g.n() {
            match dist[b] {
                Some(d) if d >= min_length => {}
                _ => continue,
            }
            match anticomplete_paths(g, a, b, 3, budget) {
                Ok(Some(ps)) => {
                    let length = ps.iter().map(|p| p.len() - 1).min().unwrap();
                    let cert =
                        ThetaCertificate { a, b, paths: [ps[0].clone(), ps[1].clone(), ps[2].clone()], length };
                    validate_theta(g, &cert).expect("search result must validate");
                    return SearchResult::Found(cert);
                }
                Ok(None) => {}
                Err(()) => return SearchResult::BudgetExceeded,
            }
        }
    }
    SearchResult::NotFound
}

// ---------------------------------------------------------------------------
// crossing pattern
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CrossingError {
    #[error("theta has length {len} < 4; the crossing pattern needs length >= 4")]
    TooShort { len: usize },
    #[error("order is not a permutation of the theta's vertices")]
    BadOrder,
}

/// Four vertices `x1 < x2 < x3 < x4` in the given order whose induced edge
/// set inside the theta is exactly {x1x3, x2x4}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingWitness {
    pub x: [usize; 4],
}

/// Searches the given vertex order (host ids, ascending in the order) for a
/// crossing 4-subset. `Ok(None)` means no witness exists for this order,
/// which falsifies the non-outerstring claim and is a first-class result.
pub fn crossing_witness(cert: &ThetaCertificate, order: &[usize]) -> Result<Option<CrossingWitness>, CrossingError> {
    if cert.length < 4 {
        return Err(CrossingError::TooShort { len: cert.length });
    }
    let vs = cert.vertices();
    if order.len() != vs.len() {
        return Err(CrossingError::BadOrder);
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != vs {
        return Err(CrossingError::BadOrder);
    }
    let tg = cert.as_graph();
    let pos_of_host: std::collections::HashMap<usize, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // local index -> position in the order
    let pos: Vec<usize> = vs.iter().map(|v| pos_of_host[v]).collect();
    for &((a, b), (c, d)) in &crossing_candidate_pairs(&tg) {
        if let Some(w) = interleaved(&pos, a, b, c, d) {
            return Ok(Some(CrossingWitness { x: w.map(|i| order[i]) }));
        }
    }
    Ok(None)
}

/// Edge pairs that are vertex-disjoint with no further edges among their
/// four endpoints; order-independent, so computed once per theta.
fn crossing_candidate_pairs(tg: &Graph) -> Vec<((usize, usize), (usize, usize))> {
    let edges: Vec<(usize, usize)> = tg.edges().collect();
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if tg.has_edge(a, c) || tg.has_edge(a, d) || tg.has_edge(b, c) || tg.has_edge(b, d) {
                continue;
            }
            out.push(((a, b), (c, d)));
        }
    }
    out
}

/// If the two disjoint edges interleave under `pos`, returns their four
/// endpoints as positions in ascending order.
fn interleaved(pos: &[usize], a: usize, b: usize, c: usize, d: usize) -> Option<[usize; 4]> {
    let (p1, p2) = if pos[a] < pos[b] { (pos[a], pos[b]) } else { (pos[b], pos[a]) };
    let (q1, q2) = if pos[c] < pos[d] { (pos[c], pos[d]) } else { (pos[d], pos[c]) };
    if p1 < q1 && q1 < p2 && p2 < q2 {
        Some([p1, q1, p2, q2])
    } else if q1 < p1 && p1 < q2 && q2 < p2 {
        Some([q1, p1, q2, p2])
    } else {
        None
    }
}

/// Outcome of checking every permutation of the theta's vertices.
#[derive(Clone, Debug)]
pub struct AllOrdersOutcome {
    pub orders_checked: u64,
    /// Orders (as host-id sequences) with no crossing witness; empty means
    /// the claim held for every order. At most 5 are recorded.
    pub falsified_orders: Vec<Vec<usize>>,
}

/// Exhaustively checks all |V(T)|! vertex orders for the crossing witness,
/// using Heap's algorithm over local indices. Feasible to 11-12 vertices.
pub fn crossing_witness_all_orders(cert: &ThetaCertificate) -> Result<AllOrdersOutcome, CrossingError> {
    if cert.length < 4 {
        return Err(CrossingError::TooShort { len: cert.length });
    }
    let vs = cert.vertices();
    let n = vs.len();
    assert!(n <= 12, "full factorial enumeration is limited to 12 vertices");
    let tg = cert.as_graph();
    let pairs = crossing_candidate_pairs(&tg);
    // perm[i] = local vertex at position i; pos[v] = position of v
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut counters = vec![0usize; n];
    let mut checked = 0u64;
    let mut falsified: Vec<Vec<usize>> = Vec::new();
    let check = |perm: &[usize], pos: &[usize], falsified: &mut Vec<Vec<usize>>| {
        let ok = pairs.iter().any(|&((a, b), (c, d))| interleaved(pos, a, b, c, d).is_some());
        if !ok && falsified.len() < 5 {
            falsified.push(perm.iter().map(|&i| vs[i]).collect());
        }
    };
    check(&perm, &pos, &mut falsified);
    checked += 1;
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            perm.swap(j, i);
            pos[perm[j]] = j;
            pos[perm[i]] = i;
            check(&perm, &pos, &mut falsified);
            checked += 1;
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(AllOrdersOutcome { orders_checked: checked, falsified_orders: falsified })
}

/// Builds the standalone theta with the three given path lengths.
pub fn theta_graph(lens: [usize; 3]) -> (Graph, ThetaCertificate) {
    assert!(lens.iter().all(|&l| l >= 2));
    let a = 0usize;
    let b = 1usize;
    let mut next = 2usize;
    let mut paths: [Vec<usize>; 3] = [vec![], vec![], vec![]];
    let mut edges = Vec::new();
    for (i, &len) in lens.iter().enumerate() {
        let mut p = vec![a];
        for _ in 0..len - 1 {
            p.push(next);
            next += 1;
        }
        p.push(b);
        for w in p.windows(2) {
            edges.push((w[0], w[1]));
        }
        paths[i] = p;
    }
    let g = Graph::from_edges(next, &edges).unwrap();
    let length = *lens.iter().min().unwrap();
    let cert = ThetaCertificate { a, b, paths, length };
    validate_theta(&g, &cert).unwrap();
    (g, cert)
}

// ---------------------------------------------------------------------------
// anticomplete path families and wide thetas
// ---------------------------------------------------------------------------

/// A family of induced `u`-`v` paths with pairwise anticomplete interiors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathFamily {
    pub u: usize,
    pub v: usize,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct FamilySearch {
    pub family: PathFamily,
    /// True iff the whole search space was exhausted within the budget and
    /// below the cap, so the family size is the true maximum.
    pub exhaustive: bool,
    pub hit_cap: bool,
    pub out_of_budget: bool,
}

/// Branch-and-bound maximum family of pairwise internally anticomplete
/// induced `u`-`v` paths. Stops early once `cap` paths are found.
pub fn max_anticomplete_path_family(
    g: &Graph,
    u: usize,
    v: usize,
    cap: usize,
    budget: &mut Budget,
) -> FamilySearch {
    assert!(u != v);
    struct Ctx<'a> {
        g: &'a Graph,
        u: usize,
        v: usize,
        cap: usize,
        best: Vec<Vec<usize>>,
        hit_cap: bool,
        out_of_budget: bool,
        budget: &'a mut Budget,
    }
    fn rec(ctx: &mut Ctx, allowed: &mut Vec<bool>, chosen: &mut Vec<Vec<usize>>) {
        if chosen.len() > ctx.best.len() {
            ctx.best = chosen.clone();
        }
        if ctx.best.len() >= ctx.cap {
            ctx.hit_cap = true;
            return;
        }
        // each new path uses a distinct usable exit at u and at v
        let exits = |x: usize, other: usize| {
            ctx.g.neighbors(x).iter().filter(|&&w| w == other || allowed[w]).count()
        };
        if chosen.len() + exits(ctx.u, ctx.v).min(exits(ctx.v, ctx.u)) <= ctx.best.len() {
            return;
        }
        let mut lower = chosen.last().cloned();
        loop {
            let next = match next_induced_path(ctx.g, ctx.u, ctx.v, allowed, lower.as_deref(), ctx.budget) {
                Ok(n) => n,
                Err(()) => {
                    ctx.out_of_budget = true;
                    return;
                }
            };
            let Some(p) = next else { return };
            let flipped = block_interior(ctx.g, &p, allowed);
            chosen.push(p.clone());
            rec(ctx, allowed, chosen);
            chosen.pop();
            for x in flipped {
                allowed[x] = true;
            }
            if ctx.hit_cap || ctx.out_of_budget {
                return;
            }
            lower = Some(p);
        }
    }
    let mut ctx = Ctx { g, u, v, cap, best: Vec::new(), hit_cap: false, out_of_budget: false, budget };
    let mut allowed: Vec<bool> = (0..g.n()).map(|x| x != u && x != v).collect();
    let mut chosen = Vec::new();
    rec(&mut ctx, &mut allowed, &mut chosen);
    let exhaustive = !ctx.hit_cap && !ctx.out_of_budget;
    FamilySearch {
        family: PathFamily { u, v, paths: ctx.best },
        exhaustive,
        hit_cap: ctx.hit_cap,
        out_of_budget: ctx.out_of_budget,
    }
}

/// A wide theta: `width` pairwise internally anticomplete induced paths of
/// length >= 2 between two non-adjacent ends, inducing nothing else.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WideTheta {
    pub a: usize,
    pub b: usize,
    pub paths: Vec<Vec<usize>>,
}

/// Searches for an induced wide theta of the given width.
pub fn find_wide_theta(g: &Graph, width: usize, budget: &mut Budget) -> SearchResult<WideTheta> {
    assert!(width >= 2);
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            if g.has_edge(a, b) || g.degree(a) < width || g.degree(b) < width {
                continue;
            }
            match anticomplete_paths(g, a, b, width, budget) {
                Ok(Some(paths)) => return SearchResult::Found(WideTheta { a, b, paths }),
                Ok(None) => {}
                Err(()) => return SearchResult::BudgetExceeded,
            }
        }
    }
    SearchResult::NotFound
}

// ---------------------------------------------------------------------------
// minimal three-vertex connector
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectorError {
    #[error("graph contains triangle {0:?}")]
    NotTriangleFree([usize; 3]),
    #[error("the three vertices must be distinct")]
    NotDistinct,
    #[error("no component of the graph minus the three vertices neighbors all of them")]
    NoConnector,
    /// The minimal connector fits neither outcome. This falsifies the
    /// classification and is reported with the connector as witness.
    #[error("minimal connector {f:?} fits neither outcome")]
    ClassificationFailed { f: Vec<usize> },
}

/// Classification of a minimal connector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConnectorOutcome {
    /// The connector is the interior of a path between two of the terminals
    /// (or of a hole through their edge), and the third terminal has two
    /// non-adjacent neighbors inside it.
    PathForm {
        /// Indices into the terminal triple: the path ends, then the
        /// spectator.
        ends: (usize, usize),
        spectator: usize,
        /// Full path: end terminal, connector vertices, other end terminal.
        path: Vec<usize>,
        is_hole: bool,
        /// Two non-adjacent connector neighbors of the spectator.
        witness: (usize, usize),
    },
    /// The connector is a tripod: a center with three internally disjoint
    /// paths to the terminals.
    Tripod {
        center: usize,
        /// Full paths center..terminal, one per terminal in input order.
        paths: [Vec<usize>; 3],
    },
}

#[derive(Clone, Debug)]
pub struct MinimalConnector {
    /// The inclusion-minimal connector, sorted.
    pub f: Vec<usize>,
    pub outcome: ConnectorOutcome,
}

/// Finds an inclusion-minimal connected set seeing all three terminals and
/// classifies it. Minimality is reached by deletion passes to a fixpoint and
/// then re-certified: deleting any single vertex breaks the property.
pub fn minimal_connector(t: &Graph, v1: usize, v2: usize, v3: usize) -> Result<MinimalConnector, ConnectorError> {
    if v1 == v2 || v1 == v3 || v2 == v3 {
        return Err(ConnectorError::NotDistinct);
    }
    if let Some(tri) = t.find_triangle() {
        return Err(ConnectorError::NotTriangleFree(tri));
    }
    let terms = [v1, v2, v3];
    let mut removed = vec![false; t.n()];
    for &x in &terms {
        removed[x] = true;
    }
    let sees_all = |set: &[usize]| -> bool {
        terms.iter().all(|&x| t.neighbors(x).iter().any(|w| set.binary_search(w).is_ok()))
    };
    // smallest component (by least vertex) that neighbors all three
    let mut f: Option<Vec<usize>> = None;
    let mut seen = vec![false; t.n()];
    for s in 0..t.n() {
        if seen[s] || removed[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in t.neighbors(x) {
                if !seen[y] && !removed[y] {
                    seen[y] = true;
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        if sees_all(&comp) {
            f = Some(comp);
            break;
        }
    }
    let mut f = f.ok_or(ConnectorError::NoConnector)?;
    // deletion passes to a fixpoint, smallest id first
    loop {
        let mut shrunk = false;
        let snapshot = f.clone();
        for &v in &snapshot {
            if f.len() == 1 {
                break;
            }
            let candidate: Vec<usize> = f.iter().copied().filter(|&x| x != v).collect();
            if t.is_connected_set(&candidate) && sees_all(&candidate) {
                f = candidate;
                shrunk = true;
            }
        }
        if !shrunk {
            break;
        }
    }
    // certify single-deletion stability
    for &v in &f {
        let candidate: Vec<usize> = f.iter().copied().filter(|&x| x != v).collect();
        assert!(
            candidate.is_empty() || !(t.is_connected_set(&candidate) && sees_all(&candidate)),
            "connector not minimal at {v}"
        );
    }

    if let Some(outcome) = classify_path_form(t, &terms, &f) {
        return Ok(MinimalConnector { f, outcome });
    }
    if let Some(outcome) = classify_tripod(t, &terms, &f) {
        return Ok(MinimalConnector { f, outcome });
    }
    Err(ConnectorError::ClassificationFailed { f })
}

/// Does the sorted set induce a path in `g`? Returns its vertex sequence
/// (starting from the smaller end).
fn path_sequence(g: &Graph, set: &[usize]) -> Option<Vec<usize>> {
    if set.is_empty() {
        return None;
    }
    if set.len() == 1 {
        return Some(vec![set[0]]);
    }
    let deg_in = |v: usize| g.neighbors(v).iter().filter(|w| set.binary_search(w).is_ok()).count();
    let mut ends: Vec<usize> = Vec::new();
    for &v in set {
        match deg_in(v) {
            1 => ends.push(v),
            2 => {}
            _ => return None,
        }
    }
    if ends.len() != 2 {
        return None;
    }
    let start = *ends.iter().min().unwrap();
    let mut seq = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while seq.len() < set.len() {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev && set.binary_search(&w).is_ok())?;
        seq.push(next);
        prev = cur;
        cur = next;
    }
    Some(seq)
}

fn classify_path_form(t: &Graph, terms: &[usize; 3], f: &[usize]) -> Option<ConnectorOutcome> {
    let seq = path_sequence(t, f)?;
    let nbrs_in_f = |x: usize| -> Vec<usize> {
        t.neighbors(x).iter().copied().filter(|w| f.binary_search(w).is_ok()).collect()
    };
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            let (xi, xj, xk) = (terms[i], terms[j], terms[k]);
            let (first, last) = (seq[0], *seq.last().unwrap());
            let ni = nbrs_in_f(xi);
            let nj = nbrs_in_f(xj);
            if ni.len() != 1 || nj.len() != 1 || ni[0] != first || nj[0] != last {
                continue;
            }
            // with first == last (single-vertex connector) the path form
            // needs distinct attachment points
            if first == last && xi != xj {
                continue;
            }
            let is_hole = t.has_edge(xi, xj);
            // spectator needs two non-adjacent neighbors in F
            let nk = nbrs_in_f(xk);
            let mut witness = None;
            'w: for a in 0..nk.len() {
                for b in a + 1..nk.len() {
                    if !t.has_edge(nk[a], nk[b]) {
                        witness = Some((nk[a], nk[b]));
                        break 'w;
                    }
                }
            }
            let witness = witness?;
            let mut path = vec![xi];
            path.extend(&seq);
            path.push(xj);
            return Some(ConnectorOutcome::PathForm { ends: (i, j), spectator: k, path, is_hole, witness });
        }
    }
    None
}

fn classify_tripod(t: &Graph, terms: &[usize; 3], f: &[usize]) -> Option<ConnectorOutcome> {
    let in_f = |v: usize| f.binary_search(&v).is_ok();
    'centers: for &center in f {
        // legs: components of F minus the center, each must induce a path
        // hanging off the center at one end
        let mut legs: Vec<Vec<usize>> = Vec::new();
        let mut seen: std::collections::HashSet<usize> = Default::default();
        for &s in f.iter().filter(|&&v| v != center) {
            if seen.contains(&s) {
                continue;
            }
            let mut comp = vec![s];
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in t.neighbors(x) {
                    if y != center && in_f(y) && !seen.contains(&y) {
                        seen.insert(y);
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            legs.push(comp);
        }
        if legs.len() > 3 {
            continue;
        }
        let mut oriented: Vec<Vec<usize>> = Vec::new();
        for leg in &legs {
            let seq = match path_sequence(t, leg) {
                Some(s) => s,
                None => continue 'centers,
            };
            let seq = if t.has_edge(center, seq[0]) {
                seq
            } else if t.has_edge(center, *seq.last().unwrap()) {
                seq.into_iter().rev().collect()
            } else {
                continue 'centers;
            };
            // the center touches the leg only at its first vertex
            if seq[1..].iter().any(|&v| t.has_edge(center, v)) {
                continue 'centers;
            }
            oriented.push(seq);
        }
        // assign each terminal a leg (far end adjacent to it) or the center
        fn assign(
            t: &Graph,
            terms: &[usize; 3],
            center: usize,
            oriented: &[Vec<usize>],
            idx: usize,
            used: &mut Vec<bool>,
            assignment: &mut Vec<Option<usize>>,
        ) -> bool {
            if idx == 3 {
                return used.iter().all(|&u| u);
            }
            let x = terms[idx];
            for l in 0..oriented.len() {
                if used[l] || !t.has_edge(x, *oriented[l].last().unwrap()) {
                    continue;
                }
                used[l] = true;
                assignment[idx] = Some(l);
                if assign(t, terms, center, oriented, idx + 1, used, assignment) {
                    return true;
                }
                used[l] = false;
                assignment[idx] = None;
            }
            if t.has_edge(x, center) && assign(t, terms, center, oriented, idx + 1, used, assignment) {
                return true;
            }
            false
        }
        let mut assignment: Vec<Option<usize>> = vec![None; 3];
        let mut used = vec![false; oriented.len()];
        if !assign(t, terms, center, &oriented, 0, &mut used, &mut assignment) {
            continue;
        }
        let mut paths: [Vec<usize>; 3] = [vec![], vec![], vec![]];
        for i in 0..3 {
            let mut p = vec![center];
            if let Some(l) = assignment[i] {
                p.extend(&oriented[l]);
            }
            p.push(terms[i]);
            paths[i] = p;
        }
        // each path induced; between two paths (past the shared center) the
        // only permitted edge is between the two terminals
        let induced_ok = paths.iter().all(|p| induced_path_ok(t, p));
        let cross_ok = (0..3).all(|i| {
            (i + 1..3).all(|j| {
                paths[i][1..].iter().all(|&x| {
                    paths[j][1..].iter().all(|&y| {
                        let terminal_pair = (x == terms[i] && y == terms[j]) || (x == terms[j] && y == terms[i]);
                        !t.has_edge(x, y) || terminal_pair
                    })
                })
            })
        });
        if induced_ok && cross_ok {
            return Some(ConnectorOutcome::Tripod { center, paths });
        }
    }
    None
}

fn induced_path_ok(g: &Graph, p: &[usize]) -> bool {
    for w in p.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return false;
        }
    }
    for i in 0..p.len() {
        for j in i + 2..p.len() {
            if g.has_edge(p[i], p[j]) {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// theta extraction from the pipeline
// ---------------------------------------------------------------------------

/// Outcome of the degree-9 dichotomy on the pipeline state.
#[derive(Clone, Debug)]
pub enum ExtractOutcome {
    /// Every H'' vertex has degree below 9.
    DegreeBoundHolds { max_degree: usize },
    /// A validated long theta extracted through the minimal connector.
    Theta(ThetaCertificate),
    /// The connector classified into the path form (which would contradict
    /// the degree-3 neighbor property) or failed validation.
    Falsified { reason: String },
}

/// If some H'' component vertex has degree at least 9, extracts an induced
/// theta between a connector center and a troublesome big vertex; otherwise
/// reports that the degree bound holds.
pub fn extract_long_theta(state: &PipelineState) -> ExtractOutcome {
    let hd = &state.h_dprime.graph;
    let max_degree = hd.max_degree();
    if max_degree < 9 {
        return ExtractOutcome::DegreeBoundHolds { max_degree };
    }
    // the high-degree vertex sits on the component side: mediums have
    // degree at most 3 in H, hence at most 3 in H''
    let d_id = (0..hd.n())
        .find(|&x| !state.n_side[x] && hd.degree(x) >= 9)
        .expect("a degree-9 vertex must sit on the component side");
    let d_set = &state.h_dprime.branch_sets[d_id];

    // smallest troublesome big with three H''-edges into this component
    let mut pick: Option<(usize, Vec<usize>)> = None;
    let mut y_sorted = state.y_b_gt3.clone();
    y_sorted.sort_unstable();
    for &b in &y_sorted {
        let mut ns: Vec<usize> = Vec::new();
        for &m in state.host.neighbors(b) {
            if state.classes[m] == crate::construction::VertexClass::Medium {
                if let Some(mid) = state.h_dprime.owner[m] {
                    if state.n_side[mid] && hd.has_edge(mid, d_id) {
                        ns.push(m);
                    }
                }
            }
        }
        ns.sort_unstable();
        if ns.len() >= 3 {
            pick = Some((b, ns[..3].to_vec()));
            break;
        }
    }
    let (b, ns) = match pick {
        Some(p) => p,
        None => {
            return ExtractOutcome::Falsified {
                reason: "degree-9 component with no big vertex contributing three edges".into(),
            }
        }
    };

    // minimal connector inside the component, seen from the three mediums
    let mut tv: Vec<usize> = d_set.clone();
    tv.extend(&ns);
    tv.sort_unstable();
    let (t, map) = state.host.induced_subgraph(&tv).unwrap();
    let local: Vec<usize> = ns.iter().map(|&n| map.to_new(n).unwrap()).collect();
    let conn = match minimal_connector(&t, local[0], local[1], local[2]) {
        Ok(c) => c,
        Err(e) => return ExtractOutcome::Falsified { reason: format!("connector failed: {e}") },
    };
    match conn.outcome {
        ConnectorOutcome::PathForm { .. } => ExtractOutcome::Falsified {
            reason: "connector took the path form, contradicting the degree-3 neighbor property".into(),
        },
        ConnectorOutcome::Tripod { paths, .. } => {
            // theta: center -> medium -> b on each branch, mapped back to H
            let mut full: [Vec<usize>; 3] = [vec![], vec![], vec![]];
            for (i, p) in paths.iter().enumerate() {
                let mut hp: Vec<usize> = p.iter().map(|&x| map.to_old(x)).collect();
                hp.push(b);
                full[i] = hp;
            }
            let length = full.iter().map(|p| p.len() - 1).min().unwrap();
            let a_host = full[0][0];
            let cert = ThetaCertificate { a: a_host, b, paths: full, length };
            match validate_theta(&state.host, &cert) {
                Ok(()) => ExtractOutcome::Theta(cert),
                Err(e) => ExtractOutcome::Falsified { reason: format!("extracted theta invalid: {e}") },
            }
        }
    }
}
