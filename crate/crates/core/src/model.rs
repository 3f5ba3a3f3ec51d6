//! Branch-set models, contractions, and induced-minor search.
//!
//! A model realizes a pattern graph inside a host by a family of disjoint
//! connected branch sets, one per pattern vertex, with a host edge behind
//! every pattern edge. A linear model additionally requires each branch set
//! to induce a path; an induced model requires pattern non-edges to be
//! anticomplete in the host. Contracting a family of branch sets yields the
//! unique induced model on that family, which is the one contraction
//! primitive every other module builds on.

use thiserror::Error;

use crate::construction::LayeredWheel;
use crate::graph::Graph;
use crate::search::{Budget, SearchResult};

/// A pattern realized in a host by branch sets (sorted vertex lists).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub host: Graph,
    pub branch_sets: Vec<Vec<usize>>,
    pub pattern: Graph,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelViolation {
    #[error("branch set {set} is empty")]
    EmptyBranchSet { set: usize },
    #[error("branch set {set} contains out-of-range vertex {v}")]
    OutOfRange { set: usize, v: usize },
    #[error("branch set count {sets} does not match pattern order {pattern}")]
    SizeMismatch { sets: usize, pattern: usize },
    #[error("branch set {set} does not induce a connected subgraph")]
    NotConnected { set: usize },
    #[error("branch sets {a} and {b} share vertex {v}")]
    Overlap { a: usize, b: usize, v: usize },
    #[error("pattern edge ({a},{b}) has no host edge between the branch sets")]
    MissingEdge { a: usize, b: usize },
    #[error("branch set {set} does not induce a path")]
    NotPath { set: usize },
    #[error("pattern non-edge ({a},{b}) violated by host edge ({u},{v})")]
    NotAnticomplete { a: usize, b: usize, u: usize, v: usize },
}

/// Checks the three model conditions, and optionally linearity and
/// inducedness. Reports the first violated condition with a witness.
pub fn validate_model(m: &Model, require_linear: bool, require_induced: bool) -> Result<(), ModelViolation> {
    let n = m.branch_sets.len();
    if n != m.pattern.n() {
        return Err(ModelViolation::SizeMismatch { sets: n, pattern: m.pattern.n() });
    }
    for (i, set) in m.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return Err(ModelViolation::EmptyBranchSet { set: i });
        }
        if let Some(&v) = set.iter().find(|&&v| v >= m.host.n()) {
            return Err(ModelViolation::OutOfRange { set: i, v });
        }
        if !m.host.is_connected_set(set) {
            return Err(ModelViolation::NotConnected { set: i });
        }
    }
    let mut owner: Vec<Option<usize>> = vec![None; m.host.n()];
    for (i, set) in m.branch_sets.iter().enumerate() {
        for &v in set {
            if let Some(j) = owner[v] {
                return Err(ModelViolation::Overlap { a: j, b: i, v });
            }
            owner[v] = Some(i);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            let touching = touching_edge(&m.host, &m.branch_sets[a], &m.branch_sets[b]);
            if m.pattern.has_edge(a, b) {
                if touching.is_none() {
                    return Err(ModelViolation::MissingEdge { a, b });
                }
            } else if require_induced {
                if let Some((u, v)) = touching {
                    return Err(ModelViolation::NotAnticomplete { a, b, u, v });
                }
            }
        }
    }
    if require_linear {
        for (i, set) in m.branch_sets.iter().enumerate() {
            if !induces_path(&m.host, set) {
                return Err(ModelViolation::NotPath { set: i });
            }
        }
    }
    Ok(())
}

/// First host edge between two disjoint sorted sets, if any.
fn touching_edge(host: &Graph, a: &[usize], b: &[usize]) -> Option<(usize, usize)> {
    for &u in a {
        for &w in host.neighbors(u) {
            if b.binary_search(&w).is_ok() {
                return Some((u, w));
            }
        }
    }
    None
}

/// Does the sorted set induce a path (including single vertices)?
fn induces_path(host: &Graph, set: &[usize]) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let mut ends = 0;
    for &v in set {
        let d = host.neighbors(v).iter().filter(|w| set.binary_search(w).is_ok()).count();
        match d {
            1 => ends += 1,
            2 => {}
            _ => return false,
        }
    }
    ends == 2 && host.is_connected_set(set)
}

/// The linear clique witness: layer paths as branch sets, complete pattern.
/// Validating it linearly certifies that the treewidth is at least k-1.
pub fn linear_clique_model(lw: &LayeredWheel) -> Model {
    let k = lw.params.k as usize;
    let branch_sets: Vec<Vec<usize>> = (1..=lw.params.k).map(|l| lw.layer_path(l)).collect();
    Model { host: lw.graph.clone(), branch_sets, pattern: Graph::complete(k) }
}

/// Result of contracting a family of branch sets in a host.
#[derive(Clone, Debug)]
pub struct Contraction {
    /// The induced model graph on the branch sets.
    pub graph: Graph,
    /// Branch sets in contracted-id order (sorted by smallest member).
    pub branch_sets: Vec<Vec<usize>>,
    /// Host vertex -> contracted id; `None` for uncovered vertices.
    pub owner: Vec<Option<usize>>,
}

/// Contracts each branch set to a single vertex; an edge joins two
/// contracted vertices iff some host edge joins the sets. With
/// `complete_cover`, uncovered host vertices become singleton sets.
/// Branch sets are renumbered by their smallest member, so the result is
/// independent of input order.
pub fn contract_model(host: &Graph, branch_sets: &[Vec<usize>], complete_cover: bool) -> Result<Contraction, ModelViolation> {
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(branch_sets.len());
    for (i, s) in branch_sets.iter().enumerate() {
        if s.is_empty() {
            return Err(ModelViolation::EmptyBranchSet { set: i });
        }
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        if let Some(&v) = s.iter().find(|&&v| v >= host.n()) {
            return Err(ModelViolation::OutOfRange { set: i, v });
        }
        if !host.is_connected_set(&s) {
            return Err(ModelViolation::NotConnected { set: i });
        }
        sets.push(s);
    }
    let mut covered = vec![false; host.n()];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            if covered[v] {
                let a = sets.iter().take(i).position(|t| t.binary_search(&v).is_ok()).unwrap_or(i);
                return Err(ModelViolation::Overlap { a, b: i, v });
            }
            covered[v] = true;
        }
    }
    if complete_cover {
        for v in 0..host.n() {
            if !covered[v] {
                sets.push(vec![v]);
            }
        }
    }
    sets.sort_by_key(|s| s[0]);
    let mut owner = vec![None; host.n()];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            owner[v] = Some(i);
        }
    }
    let mut edges = Vec::new();
    for (u, v) in host.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    let graph = Graph::from_edges(sets.len(), &edges).expect("contraction edges are valid");
    Ok(Contraction { graph, branch_sets: sets, owner })
}

/// Backtracking induced-minor search: brute force over partial branch-set
/// assignments with connectivity and anticompleteness pruning.
///
/// Pattern vertices are processed by decreasing degree (ties by id), and
/// candidate branch sets grow by frontier extension from each possible root.
/// Exhaustive within the budget; on success the returned model is validated
/// as an induced model before being handed back.
pub fn contains_induced_minor(host: &Graph, pattern: &Graph, budget: &mut Budget) -> SearchResult<Model> {
    let p = pattern.n();
    if p == 0 {
        return SearchResult::Found(Model { host: host.clone(), branch_sets: Vec::new(), pattern: pattern.clone() });
    }
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));

    struct Ctx<'a> {
        host: &'a Graph,
        pattern: &'a Graph,
        order: Vec<usize>,
        assigned: Vec<Vec<usize>>, // by order position
        used: Vec<bool>,
        budget: &'a mut Budget,
    }

    enum Step {
        Found(Vec<Vec<usize>>),
        Exhausted,
        OutOfBudget,
    }

    fn assign(ctx: &mut Ctx, pos: usize) -> Step {
        if pos == ctx.order.len() {
            return Step::Found(ctx.assigned.clone());
        }
        if !ctx.budget.tick() {
            return Step::OutOfBudget;
        }
        let pv = ctx.order[pos];
        // Domain: unused vertices not adjacent to any earlier set with a
        // pattern non-edge to pv (anticompleteness pruning).
        let mut blocked = vec![false; ctx.host.n()];
        for (epos, set) in ctx.assigned.iter().enumerate().take(pos) {
            let pu = ctx.order[epos];
            if !ctx.pattern.has_edge(pu, pv) {
                for &x in set {
                    blocked[x] = true;
                    for &w in ctx.host.neighbors(x) {
                        blocked[w] = true;
                    }
                }
            }
        }
        let domain: Vec<usize> = (0..ctx.host.n()).filter(|&v| !ctx.used[v] && !blocked[v]).collect();
        // canonical connected-subset enumeration from each root in the domain
        for (ri, &root) in domain.iter().enumerate() {
            let forbidden_roots: Vec<usize> = domain[..ri].to_vec();
            let mut cur = vec![root];
            ctx.used[root] = true;
            let ext: Vec<usize> = ctx
                .host
                .neighbors(root)
                .iter()
                .copied()
                .filter(|&w| !ctx.used[w] && !blocked[w] && forbidden_roots.binary_search(&w).is_err())
                .collect();
            let out = grow(ctx, pos, &mut cur, ext, &forbidden_roots, &blocked);
            ctx.used[root] = false;
            match out {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }

    // Enumerate all connected supersets of `cur` inside the domain, avoiding
    // `forbidden` (roots already tried). At each set, check the edge
    // constraints to earlier sets and recurse to the next pattern vertex.
    fn grow(
        ctx: &mut Ctx,
        pos: usize,
        cur: &mut Vec<usize>,
        ext: Vec<usize>,
        forbidden: &[usize],
        blocked: &[bool],
    ) -> Step {
        if !ctx.budget.tick() {
            return Step::OutOfBudget;
        }
        let pv = ctx.order[pos];
        // edge constraints: every earlier pattern neighbor needs a host edge
        let ok = (0..pos).all(|epos| {
            let pu = ctx.order[epos];
            if !ctx.pattern.has_edge(pu, pv) {
                return true; // anticompleteness is enforced by the domain
            }
            let mut sorted = cur.clone();
            sorted.sort_unstable();
            touching_edge(ctx.host, &ctx.assigned[epos], &sorted).is_some()
        });
        if ok {
            let mut sorted = cur.clone();
            sorted.sort_unstable();
            ctx.assigned.push(sorted);
            let out = assign(ctx, pos + 1);
            ctx.assigned.pop();
            match out {
                Step::Exhausted => {}
                other => return other,
            }
        }
        let mut banned: Vec<usize> = Vec::new();
        for (i, &v) in ext.iter().enumerate() {
            cur.push(v);
            ctx.used[v] = true;
            let mut next_ext: Vec<usize> = ext[i + 1..].to_vec();
            for &w in ctx.host.neighbors(v) {
                if !ctx.used[w]
                    && !blocked[w]
                    && forbidden.binary_search(&w).is_err()
                    && !banned.contains(&w)
                    && !next_ext.contains(&w)
                {
                    next_ext.push(w);
                }
            }
            let out = grow(ctx, pos, cur, next_ext, forbidden, blocked);
            ctx.used[v] = false;
            cur.pop();
            match out {
                Step::Exhausted => {}
                other => return other,
            }
            banned.push(v);
        }
        Step::Exhausted
    }

    let mut ctx = Ctx {
        host,
        pattern,
        order: order.clone(),
        assigned: Vec::new(),
        used: vec![false; host.n()],
        budget,
    };
    match assign(&mut ctx, 0) {
        Step::Found(by_pos) => {
            let mut branch_sets = vec![Vec::new(); p];
            for (pos, set) in by_pos.into_iter().enumerate() {
                branch_sets[order[pos]] = set;
            }
            let model = Model { host: host.clone(), branch_sets, pattern: pattern.clone() };
            validate_model(&model, false, true).expect("search result must be a valid induced model");
            SearchResult::Found(model)
        }
        Step::Exhausted => SearchResult::NotFound,
        Step::OutOfBudget => SearchResult::BudgetExceeded,
    }
}
