//! Seeded sampling of induced subgraphs and rational weight functions.
//!
//! Every suite that samples does so through a ChaCha stream keyed by the
//! report seed, so runs are reproducible bit for bit.

use layered_wheel::construction::VertexClass;
use layered_wheel::separators::WeightFunction;
use layered_wheel::Graph;
use num::BigUint;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deletion rates cycled through by the subgraph samplers.
pub const DELETION_RATES: [f64; 3] = [0.1, 0.3, 0.5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Induced subgraph by independent vertex deletion at the given rate.
/// Returns the subgraph together with the kept classification.
pub fn sample_subgraph(
    g: &Graph,
    classes: &[VertexClass],
    rate: f64,
    rng: &mut ChaCha8Rng,
) -> (Graph, Vec<VertexClass>) {
    let keep: Vec<usize> = (0..g.n()).filter(|_| !rng.gen_bool(rate)).collect();
    let (h, map) = g.induced_subgraph(&keep).unwrap();
    let sub_classes = (0..h.n()).map(|v| classes[map.to_old(v)]).collect();
    (h, sub_classes)
}

/// A proper rational weight function with uniform random numerators.
pub fn sample_weights(n: usize, rng: &mut ChaCha8Rng) -> WeightFunction {
    assert!(n > 0);
    let mut raw: Vec<u64> = (0..n).map(|_| rng.gen_range(0..1u64 << 20)).collect();
    if raw.iter().all(|&x| x == 0) {
        raw[0] = 1;
    }
    let den: u64 = raw.iter().sum();
    let nums: Vec<BigUint> = raw.into_iter().map(BigUint::from).collect();
    WeightFunction::new(nums, BigUint::from(den)).expect("numerators sum to the denominator")
}
