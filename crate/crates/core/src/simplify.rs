//! Vertex-restricted curve simplification through a shortcut graph.
//!
//! Every pair of vertices `i < j` is joined by a shortcut whose weight is the
//! Fréchet distance between the sub-curve `c[i..=j]` and the segment
//! `v_i v_j`. A simplification with at most `ℓ` vertices is a path from the
//! first to the last vertex with at most `ℓ − 1` shortcuts; we pick the one
//! whose heaviest shortcut is lightest.
//!
//! Vertex indices in this module are 0-based.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::frechet::frechet_distance;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplificationGraph {
    pub n_vertices: usize,
    /// Row-major `n × n`; only entries with `i < j` are meaningful.
    weights: Vec<f64>,
}

impl SimplificationGraph {
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < j && j < self.n_vertices);
        self.weights[i * self.n_vertices + j]
    }

    /// Builds a graph from explicit weights, for tests and external callers.
    pub fn from_fn(n_vertices: usize, mut w: impl FnMut(usize, usize) -> f64) -> Self {
        let mut weights = vec![0.0; n_vertices * n_vertices];
        for i in 0..n_vertices {
            for j in i + 1..n_vertices {
                weights[i * n_vertices + j] = w(i, j);
            }
        }
        SimplificationGraph { n_vertices, weights }
    }
}

fn segment_curve(a: &Point, b: &Point) -> Curve {
    Curve::from_vertices_unchecked("", vec![a.clone(), b.clone()])
}

pub fn build_simplification_graph(c: &Curve) -> Result<SimplificationGraph> {
    let n = c.len();
    if n < 2 {
        return Err(Error::DegenerateCurve(n));
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0.0; n];
            for j in i + 2..n {
                let sub = Curve::from_vertices_unchecked("", c.vertices()[i..=j].to_vec());
                row[j] = frechet_distance(&sub, &segment_curve(c.vertex(i), c.vertex(j)))?;
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    Ok(SimplificationGraph {
        n_vertices: n,
        weights: rows.into_iter().flatten().collect(),
    })
}

/// Fewest shortcuts from each vertex to the last one using only shortcuts of
/// weight at most `cap`; `usize::MAX` when unreachable.
fn hops_to_end(g: &SimplificationGraph, cap: f64) -> Vec<usize> {
    let n = g.n_vertices;
    let mut hops = vec![usize::MAX; n];
    hops[n - 1] = 0;
    for i in (0..n - 1).rev() {
        for j in i + 1..n {
            if hops[j] != usize::MAX && g.weight(i, j) <= cap {
                hops[i] = hops[i].min(hops[j] + 1);
            }
        }
    }
    hops
}

/// Path from vertex `0` to vertex `n − 1` with at most `ell` vertices whose
/// maximum shortcut weight is minimal. Among optimal paths the one with the
/// fewest vertices wins, then the lexicographically smallest; when
/// `ell ≥ n` every vertex is kept.
pub fn min_bottleneck_path(g: &SimplificationGraph, ell: usize) -> Result<(Vec<usize>, f64)> {
    if ell < 2 {
        return Err(Error::ParamOutOfRange(format!("ell = {ell} < 2")));
    }
    let n = g.n_vertices;
    if n < 2 {
        return Err(Error::DegenerateCurve(n));
    }
    if ell >= n {
        let path: Vec<usize> = (0..n).collect();
        let cost = path.windows(2).map(|w| g.weight(w[0], w[1])).fold(0.0, f64::max);
        return Ok((path, cost));
    }

    let mut candidates: Vec<f64> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| g.weight(i, j))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let max_hops = ell - 1;
    let feasible = |cap: f64| hops_to_end(g, cap)[0] <= max_hops;
    // The largest weight admits the single shortcut 0 -> n-1.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let cap = candidates[lo];

    let hops = hops_to_end(g, cap);
    let mut path = vec![0];
    let mut at = 0;
    while at != n - 1 {
        at = (at + 1..n)
            .find(|&j| g.weight(at, j) <= cap && hops[j] != usize::MAX && hops[j] + 1 == hops[at])
            .expect("hop counts are consistent");
        path.push(at);
    }
    let cost = path.windows(2).map(|w| g.weight(w[0], w[1])).fold(0.0, f64::max);
    Ok((path, cost))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Simplification {
    pub curve: Curve,
    /// Kept vertex indices, 0-based.
    pub indices: Vec<usize>,
    /// Heaviest shortcut on the chosen path.
    pub bottleneck: f64,
    /// `d_F(c, curve)`, computed explicitly.
    pub error: f64,
}

pub fn simplify_curve(c: &Curve, ell: usize) -> Result<Simplification> {
    if ell < 2 {
        return Err(Error::ParamOutOfRange(format!("ell = {ell} < 2")));
    }
    if ell >= c.len() {
        return Ok(Simplification {
            curve: c.clone(),
            indices: (0..c.len()).collect(),
            bottleneck: 0.0,
            error: 0.0,
        });
    }
    let g = build_simplification_graph(c)?;
    let (indices, bottleneck) = min_bottleneck_path(&g, ell)?;
    let curve = c.pick(&indices);
    let error = frechet_distance(c, &curve)?;
    Ok(Simplification {
        curve,
        indices,
        bottleneck,
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(pts: &[[f64; 2]]) -> Curve {
        Curve::new(
            "s",
            pts.iter().map(|c| Point::new(c.to_vec()).unwrap()).collect(),
            false,
        )
        .unwrap()
    }

    fn spike(h: f64) -> Curve {
        curve(&[[0., 0.], [2., 0.], [3., h], [4., 0.], [6., 0.]])
    }

    #[test]
    fn spike_weights() {
        let g = build_simplification_graph(&spike(2.0)).unwrap();
        assert!((g.weight(1, 3) - 2.0).abs() < 1e-12);
        for i in 0..4 {
            assert_eq!(g.weight(i, i + 1), 0.0);
        }
    }

    #[test]
    fn collinear_weights_vanish() {
        let c = curve(&[[0., 0.], [1., 0.], [2., 0.], [3., 0.]]);
        let g = build_simplification_graph(&c).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                assert!(g.weight(i, j) < 1e-12);
            }
        }
        let s = simplify_curve(&c, 2).unwrap();
        assert_eq!(s.indices, vec![0, 3]);
        assert!(s.error < 1e-12);
    }

    #[test]
    fn bottleneck_edge_cases() {
        let c = spike(1.0);
        let g = build_simplification_graph(&c).unwrap();
        assert_eq!(min_bottleneck_path(&g, 5).unwrap(), (vec![0, 1, 2, 3, 4], 0.0));
        assert_eq!(min_bottleneck_path(&g, 9).unwrap().0.len(), 5);
        let (p, cost) = min_bottleneck_path(&g, 2).unwrap();
        assert_eq!(p, vec![0, 4]);
        assert_eq!(cost, g.weight(0, 4));
        assert!(matches!(min_bottleneck_path(&g, 1), Err(Error::ParamOutOfRange(_))));
    }

    #[test]
    fn tie_break_prefers_fewer_then_lexicographic() {
        // every shortcut free: the single hop wins
        let g = SimplificationGraph::from_fn(5, |_, _| 0.0);
        assert_eq!(min_bottleneck_path(&g, 4).unwrap().0, vec![0, 4]);
        // only 0->1->4 and 0->2->4 cheap; the smaller middle vertex wins
        let g = SimplificationGraph::from_fn(5, |i, j| match (i, j) {
            (0, 1) | (1, 4) | (0, 2) | (2, 4) => 1.0,
            (a, b) if b == a + 1 => 0.0,
            _ => 5.0,
        });
        assert_eq!(min_bottleneck_path(&g, 3).unwrap(), (vec![0, 1, 4], 1.0));
    }

    #[test]
    fn simplify_keeps_curve_when_ell_large() {
        let c = spike(3.0);
        let s = simplify_curve(&c, 5).unwrap();
        assert_eq!(s.curve, c);
        assert_eq!(s.error, 0.0);
    }
}
