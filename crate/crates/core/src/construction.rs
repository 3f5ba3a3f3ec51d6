//! The layered-wheel family `G_k^g` and its construction invariants.
//!
//! The graph consists of k layer paths P_1..P_k, each of length 2^(k+g),
//! with a cross edge between `P_i^x` and `P_j^x` (i < j) exactly when
//! `x = b * 2^(k-i+g)` for an odd `b`. Vertices are classified by the 2-adic
//! valuation of their index: at layer l, valuation `k-l+g` makes a vertex
//! big, larger valuations (up to `k-1+g`) make it medium, everything else
//! (including both path endpoints) is small.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("parameters must satisfy g >= 1 and k >= 1, got g={g}, k={k}")]
    InvalidParams { g: u32, k: u32 },
    #[error("instance has {vertices} vertices, exceeding the cap of {cap}")]
    CapExceeded { vertices: u128, cap: usize },
}

/// Parameters of the construction: girth parameter `g` and layer count `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LayeredWheelParams {
    pub g: u32,
    pub k: u32,
}

impl LayeredWheelParams {
    pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

    pub fn new(g: u32, k: u32) -> Result<Self, BuildError> {
        if g < 1 || k < 1 {
            return Err(BuildError::InvalidParams { g, k });
        }
        Ok(LayeredWheelParams { g, k })
    }

    /// Length of each layer path: 2^(k+g). Each path has one more vertex.
    pub fn path_length(&self) -> u128 {
        1u128 << (self.k + self.g)
    }

    pub fn vertex_count(&self) -> u128 {
        self.k as u128 * (self.path_length() + 1)
    }

    /// Closed form for the edge count:
    /// k * 2^(k+g) path edges plus sum_i 2^(i-1) * (k-i) cross edges.
    pub fn edge_count(&self) -> u128 {
        let path_edges = self.k as u128 * self.path_length();
        let cross: u128 = (1..self.k as u128).map(|i| (1u128 << (i - 1)) * (self.k as u128 - i)).sum();
        path_edges + cross
    }
}

/// Coordinates of a vertex: layer in `1..=k`, index in `0..=2^(k+g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LayeredVertex {
    pub layer: u32,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    Big,
    Medium,
    Small,
}

/// Classifies `(layer, index)` under the given parameters.
///
/// Both endpoints (index 0 and 2^(k+g)) are small: the big and medium
/// conditions require an odd factor, which neither endpoint admits.
pub fn classify(params: LayeredWheelParams, v: LayeredVertex) -> VertexClass {
    let (g, k, l) = (params.g as i64, params.k as i64, v.layer as i64);
    debug_assert!(v.layer >= 1 && v.layer <= params.k);
    if v.index == 0 || v.index as u128 == params.path_length() {
        return VertexClass::Small;
    }
    let val = v.index.trailing_zeros() as i64;
    if val == k - l + g {
        VertexClass::Big
    } else if val > k - l + g && val <= k - 1 + g {
        VertexClass::Medium
    } else {
        VertexClass::Small
    }
}

/// A built instance: the graph plus the layer/index labeling.
#[derive(Clone, Debug)]
pub struct LayeredWheel {
    pub params: LayeredWheelParams,
    pub graph: Graph,
}

impl LayeredWheel {
    pub fn build(params: LayeredWheelParams) -> Result<Self, BuildError> {
        Self::build_with_cap(params, LayeredWheelParams::DEFAULT_VERTEX_CAP)
    }

    pub fn build_with_cap(params: LayeredWheelParams, cap: usize) -> Result<Self, BuildError> {
        if params.g < 1 || params.k < 1 {
            return Err(BuildError::InvalidParams { g: params.g, k: params.k });
        }
        let vertices = params.vertex_count();
        if vertices > cap as u128 {
            return Err(BuildError::CapExceeded { vertices, cap });
        }
        let len = params.path_length() as usize;
        let n = vertices as usize;
        let per_layer = len + 1;
        let mut edges = Vec::with_capacity(params.edge_count() as usize);
        for layer in 0..params.k as usize {
            let base = layer * per_layer;
            for x in 0..len {
                edges.push((base + x, base + x + 1));
            }
        }
        // cross edges from each layer's big-index set; b odd keeps x interior
        for i in 1..params.k {
            let step = 1usize << (params.k - i + params.g);
            let mut b = 1usize;
            while b < (1usize << i) {
                let x = b * step;
                let lo = (i as usize - 1) * per_layer + x;
                for j in i + 1..=params.k {
                    edges.push((lo, (j as usize - 1) * per_layer + x));
                }
                b += 2;
            }
        }
        let graph = Graph::from_edges(n, &edges).expect("construction produces valid edges");
        Ok(LayeredWheel { params, graph })
    }

    fn per_layer(&self) -> usize {
        self.params.path_length() as usize + 1
    }

    /// Dense id of `(layer, index)`: `(layer-1) * (2^(k+g)+1) + index`.
    pub fn vertex_id(&self, v: LayeredVertex) -> usize {
        debug_assert!(v.layer >= 1 && v.layer <= self.params.k);
        debug_assert!(v.index < self.per_layer());
        (v.layer as usize - 1) * self.per_layer() + v.index
    }

    pub fn label(&self, id: usize) -> LayeredVertex {
        LayeredVertex { layer: (id / self.per_layer()) as u32 + 1, index: id % self.per_layer() }
    }

    pub fn class_of_id(&self, id: usize) -> VertexClass {
        classify(self.params, self.label(id))
    }

    /// Classification of every vertex, indexed by id.
    pub fn classes(&self) -> Vec<VertexClass> {
        (0..self.graph.n()).map(|v| self.class_of_id(v)).collect()
    }

    pub fn big_vertices(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.class_of_id(v) == VertexClass::Big).collect()
    }

    /// Vertex ids of layer path P_l, in index order.
    pub fn layer_path(&self, layer: u32) -> Vec<usize> {
        let base = (layer as usize - 1) * self.per_layer();
        (base..base + self.per_layer()).collect()
    }
}

/// One named check with an optional human-readable witness on failure.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub claim: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn pass(name: &str, claim: &str) -> Self {
        Check { name: name.into(), claim: claim.into(), passed: true, witness: None }
    }

    fn fail(name: &str, claim: &str, witness: String) -> Self {
        Check { name: name.into(), claim: claim.into(), passed: false, witness: Some(witness) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub checks: Vec<Check>,
}

impl InvariantReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Runs every structural check on a built instance: counts, triangle-freeness,
/// girth, the adjacent-degree condition, big-vertex spacing, the degree-3
/// neighborhood condition, and the per-class degree formulas.
pub fn verify_construction_invariants(lw: &LayeredWheel) -> InvariantReport {
    let g = &lw.graph;
    let params = lw.params;
    let classes = lw.classes();
    let mut checks = Vec::new();

    let expect_n = params.vertex_count();
    checks.push(if g.n() as u128 == expect_n {
        Check::pass("vertex_count", "vertex count matches the closed form k*(2^(k+g)+1)")
    } else {
        Check::fail("vertex_count", "vertex count matches the closed form k*(2^(k+g)+1)", format!("got {}, expected {}", g.n(), expect_n))
    });
    let expect_m = params.edge_count();
    checks.push(if g.m() as u128 == expect_m {
        Check::pass("edge_count", "edge count matches the closed form")
    } else {
        Check::fail("edge_count", "edge count matches the closed form", format!("got {}, expected {}", g.m(), expect_m))
    });

    checks.push(match g.find_triangle() {
        None => Check::pass("triangle_free", "the graph contains no triangle"),
        Some(t) => Check::fail("triangle_free", "the graph contains no triangle", format!("triangle {:?}", t)),
    });

    let girth_claim = "girth is at least g";
    checks.push(match g.girth() {
        None => Check::pass("girth_lower_bound", girth_claim),
        Some(c) if c as u32 >= params.g => Check::pass("girth_lower_bound", girth_claim),
        Some(c) => Check::fail("girth_lower_bound", girth_claim, format!("girth {} < g = {}", c, params.g)),
    });

    // adjacent vertices: one endpoint has degree <= 3, and not both big
    let mut adjacency_witness = None;
    'outer: for (u, v) in g.edges() {
        if g.degree(u) > 3 && g.degree(v) > 3 {
            adjacency_witness = Some(format!("edge ({u},{v}) with degrees {} and {}", g.degree(u), g.degree(v)));
            break 'outer;
        }
        if classes[u] == VertexClass::Big && classes[v] == VertexClass::Big {
            adjacency_witness = Some(format!("edge ({u},{v}) joins two big vertices"));
            break 'outer;
        }
    }
    checks.push(match adjacency_witness {
        None => Check::pass("adjacent_degree_condition", "every edge has an endpoint of degree <= 3 and never joins two big vertices"),
        Some(w) => Check::fail("adjacent_degree_condition", "every edge has an endpoint of degree <= 3 and never joins two big vertices", w),
    });

    // big vertices pairwise at distance >= 2^g; degree-4 vertices are big
    let bigs = lw.big_vertices();
    let min_dist = 1usize << params.g;
    let mut spacing_witness = None;
    for (idx, &b) in bigs.iter().enumerate() {
        let dist = g.bfs_distances(b);
        for &c in &bigs[idx + 1..] {
            match dist[c] {
                Some(d) if d < min_dist => {
                    spacing_witness = Some(format!("big vertices {b} and {c} at distance {d} < 2^g = {min_dist}"));
                    break;
                }
                _ => {}
            }
        }
        if spacing_witness.is_some() {
            break;
        }
    }
    checks.push(match spacing_witness {
        None => Check::pass("big_pair_distance", "distinct big vertices lie at distance >= 2^g"),
        Some(w) => Check::fail("big_pair_distance", "distinct big vertices lie at distance >= 2^g", w),
    });
    checks.push(
        match (0..g.n()).find(|&v| g.degree(v) >= 4 && classes[v] != VertexClass::Big) {
            None => Check::pass("degree_four_is_big", "every vertex of degree >= 4 is big"),
            Some(v) => Check::fail("degree_four_is_big", "every vertex of degree >= 4 is big", format!("vertex {v} has degree {} but class {:?}", g.degree(v), classes[v])),
        },
    );

    // degree-3 vertices have at most one neighbor of degree >= 3
    let mut deg3_witness = None;
    for v in 0..g.n() {
        if g.degree(v) == 3 {
            let heavy = g.neighbors(v).iter().filter(|&&w| g.degree(w) >= 3).count();
            if heavy > 1 {
                deg3_witness = Some(format!("vertex {v} has {heavy} neighbors of degree >= 3"));
                break;
            }
        }
    }
    checks.push(match deg3_witness {
        None => Check::pass("degree_three_neighbors", "a degree-3 vertex has at most one neighbor of degree >= 3"),
        Some(w) => Check::fail("degree_three_neighbors", "a degree-3 vertex has at most one neighbor of degree >= 3", w),
    });

    // degree formulas per class
    let len = params.path_length() as usize;
    let mut formula_witness = None;
    for v in 0..g.n() {
        let lv = lw.label(v);
        let interior = lv.index > 0 && lv.index < len;
        let expected: Option<usize> = match classes[v] {
            VertexClass::Big if lv.layer < params.k && interior => {
                Some((params.k - lv.layer + 2) as usize)
            }
            VertexClass::Medium => Some(3),
            _ => None,
        };
        if let Some(e) = expected {
            if g.degree(v) != e {
                formula_witness = Some(format!("vertex {v} ({:?}, {:?}) has degree {}, expected {e}", lv, classes[v], g.degree(v)));
                break;
            }
        }
        if classes[v] == VertexClass::Small && g.degree(v) > 2 {
            formula_witness = Some(format!("small vertex {v} has degree {}", g.degree(v)));
            break;
        }
    }
    checks.push(match formula_witness {
        None => Check::pass(
            "degree_formulas",
            "interior bigs below the last layer have degree k-l+2, mediums exactly 3, smalls at most 2",
        ),
        Some(w) => Check::fail(
            "degree_formulas",
            "interior bigs below the last layer have degree k-l+2, mediums exactly 3, smalls at most 2",
            w,
        ),
    });

    // cross edges join equal indices, lower endpoint big
    let mut cross_witness = None;
    for (u, v) in g.edges() {
        let (lu, lv) = (lw.label(u), lw.label(v));
        if lu.layer == lv.layer {
            continue;
        }
        if lu.index != lv.index {
            cross_witness = Some(format!("cross edge ({u},{v}) joins different indices"));
            break;
        }
        let lower = if lu.layer < lv.layer { u } else { v };
        if classes[lower] != VertexClass::Big {
            cross_witness = Some(format!("cross edge ({u},{v}): lower-layer endpoint is {:?}", classes[lower]));
            break;
        }
    }
    checks.push(match cross_witness {
        None => Check::pass("cross_edge_shape", "cross edges join equal indices with a big lower-layer endpoint"),
        Some(w) => Check::fail("cross_edge_shape", "cross edges join equal indices with a big lower-layer endpoint", w),
    });

    InvariantReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(g: u32, k: u32) -> LayeredWheel {
        LayeredWheel::build(LayeredWheelParams::new(g, k).unwrap()).unwrap()
    }

    #[test]
    fn counts_for_g1_k5() {
        let lw = build(1, 5);
        assert_eq!(lw.graph.n(), 325);
        assert_eq!(lw.graph.m(), 346);
    }

    #[test]
    fn counts_for_g1_k3_and_big_columns() {
        let lw = build(1, 3);
        assert_eq!(lw.graph.n(), 51);
        assert_eq!(lw.graph.m(), 52);
        let bigs_by_layer: Vec<Vec<usize>> = (1..=3)
            .map(|l| {
                (0..=16)
                    .filter(|&x| classify(lw.params, LayeredVertex { layer: l, index: x }) == VertexClass::Big)
                    .collect()
            })
            .collect();
        assert_eq!(bigs_by_layer, vec![vec![8], vec![4, 12], vec![2, 6, 10, 14]]);
    }

    #[test]
    fn center_column_star_in_g1_k5() {
        let lw = build(1, 5);
        let center = lw.vertex_id(LayeredVertex { layer: 1, index: 32 });
        for j in 2..=5 {
            let v = lw.vertex_id(LayeredVertex { layer: j, index: 32 });
            assert!(lw.graph.has_edge(center, v), "P_1^32 must be adjacent to P_{j}^32");
        }
    }

    #[test]
    fn classification_examples_g1_k5() {
        let params = LayeredWheelParams::new(1, 5).unwrap();
        assert_eq!(classify(params, LayeredVertex { layer: 2, index: 16 }), VertexClass::Big);
        assert_eq!(classify(params, LayeredVertex { layer: 3, index: 16 }), VertexClass::Medium);
        assert_eq!(classify(params, LayeredVertex { layer: 1, index: 8 }), VertexClass::Small);
        // endpoints are small on every layer
        assert_eq!(classify(params, LayeredVertex { layer: 4, index: 0 }), VertexClass::Small);
        assert_eq!(classify(params, LayeredVertex { layer: 4, index: 64 }), VertexClass::Small);
    }

    #[test]
    fn invariants_pass_on_small_instances() {
        for (g, k) in [(1, 3), (2, 4), (1, 1)] {
            let lw = build(g, k);
            let report = verify_construction_invariants(&lw);
            assert!(report.all_passed(), "({g},{k}): {:?}", report.failed());
        }
    }

    #[test]
    fn degenerate_single_layer_is_a_path() {
        let lw = build(1, 1);
        assert_eq!(lw.graph.n(), 5);
        assert_eq!(lw.graph.m(), 4);
        assert!(lw.big_vertices().iter().all(|&v| lw.graph.degree(v) <= 2));
    }

    #[test]
    fn cap_is_a_hard_error() {
        let params = LayeredWheelParams::new(9, 9).unwrap();
        assert!(matches!(LayeredWheel::build(params), Err(BuildError::CapExceeded { .. })));
    }

    #[test]
    fn id_label_roundtrip_and_adjacency() {
        let lw = build(2, 3);
        for v in 0..lw.graph.n() {
            assert_eq!(lw.vertex_id(lw.label(v)), v);
        }
        // adjacency agrees with the construction rule under the bijection
        for (u, v) in lw.graph.edges() {
            let (a, b) = (lw.label(u), lw.label(v));
            if a.layer == b.layer {
                assert_eq!(a.index.abs_diff(b.index), 1);
            } else {
                assert_eq!(a.index, b.index);
            }
        }
    }

    #[test]
    fn layer_path_is_induced_path() {
        let lw = build(1, 3);
        let p1 = lw.layer_path(1);
        let (h, _) = lw.graph.induced_subgraph(&p1).unwrap();
        assert_eq!(h, Graph::path(17));
    }

    #[test]
    fn girth_of_g1_k3_is_eleven() {
        // frozen from the exhaustive cycle-enumeration oracle
        let lw = build(1, 3);
        assert_eq!(lw.graph.girth(), Some(11));
    }
}
