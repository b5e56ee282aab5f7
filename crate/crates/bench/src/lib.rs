//! Fixtures shared by the benchmarks.

use frechet_embed::dataset::{generate, Family, GenerateParams};
use frechet_embed::Curve;

/// Random-walk curves with fixed seeds.
pub fn random_walks(n: usize, m: usize, d: usize, seed: u64) -> Vec<Curve> {
    let params = GenerateParams {
        n,
        m,
        d,
        ..GenerateParams::default()
    };
    generate(Family::RandomWalk, &params, seed)
        .expect("valid generator parameters")
        .curves
}
