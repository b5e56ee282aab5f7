//! Brute-force ground truth used by the test suites.
//!
//! Everything here is exponential on purpose and guarded by hard caps. The
//! routines only share the closed-ball primitives of [`crate::curve`] with
//! the code they check; predicate evaluation and sequence walking are
//! re-derived from scratch.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cluster::Objective;
use crate::curve::{ball_segment_intersection, Curve, Interval, Point, SLACK};
use crate::error::{Error, Result};
use crate::frechet::{discrete_frechet, frechet_distance, ValidSequence};
use crate::simplify::simplify_curve;

/// Largest `|a| + |b|` accepted by [`brute_discrete_frechet`].
pub const BRUTE_DISCRETE_CAP: usize = 14;
/// Largest vertex count per curve for monotone sequence enumeration.
pub const MONOTONE_ENUM_CAP: usize = 7;
/// Largest vertex count per curve for non-monotone sequence enumeration.
pub const WEAK_ENUM_CAP: usize = 5;
/// Largest number of k-subsets [`brute_kl_center_candidate`] will try.
pub const CENTER_SUBSET_CAP: usize = 100_000;

/// A closed range guaranteed to contain the quantity being checked.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleBand {
    pub lower: f64,
    pub upper: f64,
}

impl OracleBand {
    pub fn contains(&self, v: f64, tol: f64) -> bool {
        self.lower - tol <= v && v <= self.upper + tol
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Min-max over every monotone vertex coupling, enumerated without memoization.
pub fn brute_discrete_frechet(a: &Curve, b: &Curve) -> Result<f64> {
    if a.len() + b.len() > BRUTE_DISCRETE_CAP {
        return Err(Error::CapExceeded(format!(
            "|a| + |b| = {} > {BRUTE_DISCRETE_CAP}",
            a.len() + b.len()
        )));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    fn walk(a: &[Point], b: &[Point], i: usize, j: usize) -> f64 {
        let here = a[i].distance(&b[j]);
        if i + 1 == a.len() && j + 1 == b.len() {
            return here;
        }
        let mut best = f64::INFINITY;
        if i + 1 < a.len() {
            best = best.min(walk(a, b, i + 1, j));
        }
        if j + 1 < b.len() {
            best = best.min(walk(a, b, i, j + 1));
        }
        if i + 1 < a.len() && j + 1 < b.len() {
            best = best.min(walk(a, b, i + 1, j + 1));
        }
        here.max(best)
    }
    Ok(walk(a.vertices(), b.vertices(), 0, 0))
}

/// Inserts vertices so that no edge is longer than `delta`.
pub fn resample(c: &Curve, delta: f64) -> Curve {
    let mut pts = vec![c.first().clone()];
    for e in c.edges() {
        let pieces = (e.length() / delta).ceil().max(1.0) as usize;
        for s in 1..=pieces {
            pts.push(e.point_at(s as f64 / pieces as f64));
        }
    }
    // the last sample of each edge is the next vertex itself
    Curve::from_vertices_unchecked(c.id(), pts)
}

/// Band `[U - 2δ, U]` with `U` the discrete Fréchet distance of the
/// δ-resampled curves.
pub fn resampled_frechet_band(a: &Curve, b: &Curve, delta: f64) -> Result<OracleBand> {
    if delta <= 0.0 || !delta.is_finite() {
        return Err(Error::ParamOutOfRange(format!("delta = {delta}")));
    }
    let upper = discrete_frechet(&resample(a, delta), &resample(b, delta))?;
    Ok(OracleBand {
        lower: (upper - 2.0 * delta).max(0.0),
        upper,
    })
}

/// Every valid sequence over the cell grid of curves with `na` and `nb`
/// vertices, in depth-first order (right, up, left, down).
pub fn enumerate_valid_sequences(na: usize, nb: usize, monotone: bool) -> Result<Vec<ValidSequence>> {
    let cap = if monotone {
        MONOTONE_ENUM_CAP
    } else {
        WEAK_ENUM_CAP
    };
    if na < 2 || nb < 2 {
        return Err(Error::ParamOutOfRange(format!("grid for {na}x{nb} vertices")));
    }
    if na > cap || nb > cap {
        return Err(Error::CapExceeded(format!(
            "{na}x{nb} vertices, cap {cap} (monotone: {monotone})"
        )));
    }
    let (cols, rows) = (na - 1, nb - 1);
    let mut out = Vec::new();
    let mut path = vec![(1usize, 1usize)];
    let mut used = vec![vec![false; rows + 1]; cols + 1];
    used[1][1] = true;

    fn dfs(
        cols: usize,
        rows: usize,
        monotone: bool,
        path: &mut Vec<(usize, usize)>,
        used: &mut Vec<Vec<bool>>,
        out: &mut Vec<ValidSequence>,
    ) {
        let (i, j) = *path.last().unwrap();
        if (i, j) == (cols, rows) {
            out.push(ValidSequence::new(path.clone()));
            return;
        }
        let steps: &[(isize, isize)] = if monotone {
            &[(1, 0), (0, 1)]
        } else {
            &[(1, 0), (0, 1), (-1, 0), (0, -1)]
        };
        for &(di, dj) in steps {
            let ni = i as isize + di;
            let nj = j as isize + dj;
            if ni < 1 || nj < 1 || ni > cols as isize || nj > rows as isize {
                continue;
            }
            let (ni, nj) = (ni as usize, nj as usize);
            if used[ni][nj] {
                continue;
            }
            used[ni][nj] = true;
            path.push((ni, nj));
            dfs(cols, rows, monotone, path, used, out);
            path.pop();
            used[ni][nj] = false;
        }
    }
    dfs(cols, rows, monotone, &mut path, &mut used, &mut out);
    Ok(out)
}

fn closed_ball_interval(on: &Curve, edge: usize, center: &Point, r: f64) -> Interval {
    ball_segment_intersection(&on.edge(edge), center, r)
}

/// Independent evaluation of `P1 ∧ P2 ∧ Ψ` (or `Ψ_w`) along `cells`.
fn system_holds(a: &Curve, b: &Curve, r: f64, cells: &[(usize, usize)], monotone: bool) -> bool {
    if a.first().distance(b.first()) > r + SLACK || a.last().distance(b.last()) > r + SLACK {
        return false;
    }
    // column -> intervals of the crossed second-curve vertices, in order
    let mut column_hits: Vec<Vec<Interval>> = vec![Vec::new(); a.len()];
    let mut row_hits: Vec<Vec<Interval>> = vec![Vec::new(); b.len()];
    for w in cells.windows(2) {
        let ((i0, j0), (i1, j1)) = (w[0], w[1]);
        if i0 == i1 {
            // crossing second-curve vertex max(j0, j1) (1-based) along edge i0
            let v = j0.max(j1) - 1;
            let iv = closed_ball_interval(a, i0 - 1, b.vertex(v), r);
            if iv.is_empty() {
                return false;
            }
            column_hits[i0 - 1].push(iv);
        } else {
            let v = i0.max(i1) - 1;
            let iv = closed_ball_interval(b, j0 - 1, a.vertex(v), r);
            if iv.is_empty() {
                return false;
            }
            row_hits[j0 - 1].push(iv);
        }
    }
    if monotone {
        for hits in column_hits.iter().chain(row_hits.iter()) {
            for (x, first) in hits.iter().enumerate() {
                for second in &hits[x + 1..] {
                    if first.lo > second.hi + SLACK {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `true` iff some enumerated (monotone) valid sequence satisfies its
/// predicate system at radius `r`.
pub fn predicate_oracle_decision(a: &Curve, b: &Curve, r: f64, monotone: bool) -> Result<bool> {
    let seqs = enumerate_valid_sequences(a.len(), b.len(), monotone)?;
    Ok(seqs
        .iter()
        .any(|s| system_holds(a, b, r, &s.cells, monotone)))
}

/// Smallest center-objective value over all `k`-subsets of the per-curve
/// `ell`-simplifications. An upper bound on the optimal `(k, ℓ)`-center cost.
pub fn brute_kl_center_candidate(curves: &[Curve], k: usize, ell: usize) -> Result<f64> {
    brute_candidate_cost(curves, k, ell, Objective::Center)
}

/// As [`brute_kl_center_candidate`] for either objective.
pub fn brute_candidate_cost(curves: &[Curve], k: usize, ell: usize, objective: Objective) -> Result<f64> {
    let n = curves.len();
    if k == 0 || k > n {
        return Err(Error::TooFewCurves { k, n });
    }
    let subsets = binomial(n, k);
    if subsets > CENTER_SUBSET_CAP as u128 {
        return Err(Error::CapExceeded(format!("C({n}, {k}) = {subsets} subsets")));
    }
    let candidates: Vec<Curve> = curves
        .iter()
        .map(|c| simplify_curve(c, ell).map(|s| s.curve))
        .collect::<Result<_>>()?;
    let mut dist = vec![vec![0.0; n]; n];
    for (t, curve) in curves.iter().enumerate() {
        for (c, cand) in candidates.iter().enumerate() {
            dist[t][c] = frechet_distance(curve, cand)?;
        }
    }
    let mut best = f64::INFINITY;
    for subset in (0..n).combinations(k) {
        let per_curve = dist
            .iter()
            .map(|row| subset.iter().map(|&c| row[c]).fold(f64::INFINITY, f64::min));
        let cost = match objective {
            Objective::Center => per_curve.fold(0.0, f64::max),
            Objective::Median => per_curve.sum(),
        };
        best = best.min(cost);
    }
    Ok(best)
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(pts: &[&[f64]]) -> Curve {
        Curve::new(
            "",
            pts.iter().map(|c| Point::new(c.to_vec()).unwrap()).collect(),
            false,
        )
        .unwrap()
    }

    #[test]
    fn brute_discrete_examples() {
        let a = curve(&[&[0., 0.], &[1., 2.], &[3., 1.]]);
        assert_eq!(brute_discrete_frechet(&a, &a).unwrap(), 0.0);
        let s = curve(&[&[0., 0.], &[5., 0.]]);
        let t = curve(&[&[0., 1.], &[5., 3.]]);
        assert_eq!(brute_discrete_frechet(&s, &t).unwrap(), 3.0);
        let long = curve(&[
            &[0., 0.],
            &[1., 0.],
            &[2., 1.],
            &[3., 0.],
            &[4., 1.],
            &[5., 0.],
            &[6., 1.],
            &[7., 0.],
        ]);
        assert!(matches!(
            brute_discrete_frechet(&long, &long),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn band_examples() {
        let a = curve(&[&[0., 0.], &[1., 2.], &[3., 1.]]);
        let band = resampled_frechet_band(&a, &a, 0.1).unwrap();
        assert_eq!((band.lower, band.upper), (0.0, 0.0));
        let s = curve(&[&[0., 0.], &[1., 0.]]);
        let t = curve(&[&[0., 1.], &[1., 1.]]);
        let band = resampled_frechet_band(&s, &t, 0.01).unwrap();
        assert!(band.contains(1.0, 0.0));
        assert!(band.width() <= 0.02 + 1e-15);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_valid_sequences(2, 2, true).unwrap(),
            vec![ValidSequence::new(vec![(1, 1)])]
        );
        assert_eq!(enumerate_valid_sequences(3, 3, true).unwrap().len(), 2);
        for p in 2..=6 {
            for q in 2..=6 {
                let n = enumerate_valid_sequences(p, q, true).unwrap().len() as u128;
                // lattice paths through a (p-1)x(q-1) cell grid
                assert_eq!(n, binomial(p + q - 4, p - 2), "{p}x{q}");
            }
        }
        // self-avoiding corner-to-corner walks on a 3x3 grid graph
        assert_eq!(enumerate_valid_sequences(4, 4, false).unwrap().len(), 12);
        for s in enumerate_valid_sequences(5, 4, false).unwrap() {
            s.validate(4, 3, false).unwrap();
        }
        assert!(matches!(
            enumerate_valid_sequences(6, 2, false),
            Err(Error::CapExceeded(_))
        ));
        assert!(matches!(
            enumerate_valid_sequences(8, 2, true),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn oracle_decision_extremes() {
        let a = curve(&[&[0., 0.], &[1., 2.], &[3., 1.]]);
        let b = curve(&[&[1., 0.], &[2., 2.], &[3., 0.]]);
        assert!(predicate_oracle_decision(&a, &b, 1e6, true).unwrap());
        assert!(predicate_oracle_decision(&a, &b, 1e6, false).unwrap());
        assert!(!predicate_oracle_decision(&a, &b, 0.0, true).unwrap());
        assert!(!predicate_oracle_decision(&a, &b, 0.0, false).unwrap());
    }

    #[test]
    fn brute_center_small() {
        let s = curve(&[&[0., 0.], &[1., 0.]]).with_id("a");
        let t = curve(&[&[0., 2.], &[1., 2.]]).with_id("b");
        let pair = [s, t];
        assert_eq!(brute_kl_center_candidate(&pair, 2, 2).unwrap(), 0.0);
        assert_eq!(brute_kl_center_candidate(&pair, 1, 2).unwrap(), 2.0);
    }
}
