use frechet_embed::frechet::{critical_values, decide_frechet, decide_weak_frechet, discrete_frechet, frechet_distance};
use frechet_embed::oracle::{
    brute_discrete_frechet, enumerate_valid_sequences, predicate_oracle_decision, resampled_frechet_band,
};
use frechet_embed::simplify::{build_simplification_graph, min_bottleneck_path};
use frechet_embed::{Curve, Error, Point};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_curve(rng: &mut ChaCha8Rng, m: impl rand::distr::uniform::SampleRange<usize>, d: usize) -> Curve {
    let m = rng.random_range(m);
    let pts = (0..m)
        .map(|_| Point::new((0..d).map(|_| rng.random_range(-3.0..3.0)).collect()).unwrap())
        .collect();
    Curve::new("", pts, false).unwrap()
}

fn curve(pts: &[&[f64]]) -> Curve {
    Curve::new("", pts.iter().map(|c| Point::new(c.to_vec()).unwrap()).collect(), false).unwrap()
}

#[test]
fn discrete_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let d = rng.random_range(1..=3);
        let a = random_curve(&mut rng, 2..=6, d);
        let b = random_curve(&mut rng, 2..=6, d);
        let fast = discrete_frechet(&a, &b).unwrap();
        let slow = brute_discrete_frechet(&a, &b).unwrap();
        assert!((fast - slow).abs() <= 1e-12, "{fast} vs {slow}");
    }
}

#[test]
fn brute_discrete_cap_and_single_edges() {
    let a = curve(&[&[0., 0.], &[1., 0.]]);
    let b = curve(&[&[0., 2.], &[3., 0.]]);
    assert_eq!(brute_discrete_frechet(&a, &b).unwrap(), 2.0);
    assert_eq!(brute_discrete_frechet(&a, &a).unwrap(), 0.0);
    let long = Curve::new("", (0..8).map(|k| Point::new(vec![k as f64]).unwrap()).collect(), false).unwrap();
    assert!(matches!(brute_discrete_frechet(&long, &long), Err(Error::CapExceeded(_))));
}

#[test]
fn resampled_band_contains_continuous_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let a = random_curve(&mut rng, 2..=4, 2);
        let b = random_curve(&mut rng, 2..=4, 2);
        let v = frechet_distance(&a, &b).unwrap();
        let band = resampled_frechet_band(&a, &b, 0.05).unwrap();
        assert!(band.contains(v, 1e-9), "{v} not in {band:?}");
    }
}

#[test]
fn resampled_band_parallel_segments_and_shrinking() {
    let a = curve(&[&[0., 0.], &[1., 0.]]);
    let b = curve(&[&[0., 1.], &[1., 1.]]);
    let band = resampled_frechet_band(&a, &b, 0.01).unwrap();
    assert!(band.contains(1.0, 0.0) && band.width() <= 0.02 + 1e-12);
    let same = resampled_frechet_band(&a, &a, 0.1).unwrap();
    assert_eq!((same.lower, same.upper), (0.0, 0.0));

    let p = curve(&[&[0., 0.], &[2., 1.5], &[4., 0.]]);
    let q = curve(&[&[0., 1.], &[1., -1.], &[3., 2.], &[4., 1.]]);
    let widths: Vec<f64> = [0.1, 0.05, 0.01]
        .iter()
        .map(|&d| resampled_frechet_band(&p, &q, d).unwrap().width())
        .collect();
    assert!(widths[2] <= 0.02 + 1e-12 && widths[2] <= widths[0]);
}

#[test]
fn monotone_sequence_counts() {
    assert_eq!(enumerate_valid_sequences(2, 2, true).unwrap().len(), 1);
    assert_eq!(enumerate_valid_sequences(3, 3, true).unwrap().len(), 2);
    for p in 2..=6 {
        for q in 2..=6 {
            let cells_p = p - 1;
            let cells_q = q - 1;
            let expected = (1..cells_q).fold(1u64, |acc, k| acc * (cells_p + k - 1) as u64 / k as u64);
            // C(cells_p + cells_q - 2, cells_q - 1)
            let n = enumerate_valid_sequences(p, q, true).unwrap().len() as u64;
            assert_eq!(n, expected, "{p}x{q}");
        }
    }
}

#[test]
fn predicate_oracle_agrees_at_critical_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..25 {
        let a = random_curve(&mut rng, 2..=4, 2);
        let b = random_curve(&mut rng, 2..=4, 2);
        for v in critical_values(&a, &b).unwrap() {
            for r in [v - 1e-6, v + 1e-6] {
                if r < 0.0 {
                    continue;
                }
                assert_eq!(
                    decide_frechet(&a, &b, r).unwrap(),
                    predicate_oracle_decision(&a, &b, r, true).unwrap()
                );
                assert_eq!(
                    decide_weak_frechet(&a, &b, r).unwrap(),
                    predicate_oracle_decision(&a, &b, r, false).unwrap()
                );
            }
        }
    }
}

#[test]
fn predicate_oracle_trivial_radii() {
    let a = curve(&[&[0., 0.], &[1., 0.], &[2., 1.]]);
    let b = curve(&[&[0., 1.], &[2., 0.]]);
    assert!(predicate_oracle_decision(&a, &b, 1e6, true).unwrap());
    assert!(!predicate_oracle_decision(&a, &b, 0.0, true).unwrap());
    assert!(!predicate_oracle_decision(&a, &b, 0.0, false).unwrap());
}

fn exhaustive_bottleneck(c: &Curve, ell: usize) -> f64 {
    let g = build_simplification_graph(c).unwrap();
    let n = c.len();
    let mut best = f64::INFINITY;
    for inner in 0..=ell.min(n) - 2 {
        for mid in (1..n - 1).combinations(inner) {
            let mut idx = vec![0];
            idx.extend(mid);
            idx.push(n - 1);
            let cost = idx.windows(2).map(|w| g.weight(w[0], w[1])).fold(0.0, f64::max);
            best = best.min(cost);
        }
    }
    best
}

#[test]
fn bottleneck_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..30 {
        let c = random_curve(&mut rng, 3..=8, 2);
        let g = build_simplification_graph(&c).unwrap();
        for ell in 2..=c.len() {
            let (path, cost) = min_bottleneck_path(&g, ell).unwrap();
            assert!(path.len() <= ell);
            assert_eq!(cost, exhaustive_bottleneck(&c, ell));
        }
    }
}
