//! `(k, ℓ)`-center and `(k, ℓ)`-median clustering of curves.
//!
//! Both solvers restrict centers to simplifications of input curves and are
//! meant to run on already embedded (low-dimensional) curves. Inputs are
//! processed in id order so results do not depend on the order the caller
//! passes curves in.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::error::{Error, Result};
use crate::frechet::frechet_distance;
use crate::oracle::binomial;
use crate::simplify::simplify_curve;

/// Largest number of `k`-subsets the exhaustive median solver will scan.
pub const MEDIAN_SUBSET_BUDGET: u128 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Center,
    Median,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MedianMode {
    Exhaustive,
    LocalSearch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    pub objective: Objective,
    pub k: usize,
    pub ell: usize,
    pub centers: Vec<Curve>,
    /// Curve id to index into `centers`.
    pub assignment: BTreeMap<String, usize>,
    pub cost: f64,
}

fn check_params(curves: &[Curve], k: usize, ell: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::ParamOutOfRange("k = 0".into()));
    }
    if ell < 2 {
        return Err(Error::ParamOutOfRange(format!("ell = {ell} < 2")));
    }
    if curves.len() < k {
        return Err(Error::TooFewCurves { k, n: curves.len() });
    }
    Ok(())
}

fn id_order(curves: &[Curve]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..curves.len()).collect();
    order.sort_by(|&a, &b| curves[a].id().cmp(curves[b].id()).then(a.cmp(&b)));
    order
}

/// `dist[t][c] = d_F(curves[t], centers[c])`.
fn distance_table(curves: &[Curve], centers: &[Curve]) -> Result<Vec<Vec<f64>>> {
    curves
        .par_iter()
        .map(|t| centers.iter().map(|c| frechet_distance(t, c)).collect())
        .collect()
}

fn nearest(row: &[f64]) -> (usize, f64) {
    row.iter()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (c, &d)| if d < best.1 { (c, d) } else { best })
}

fn aggregate(values: impl Iterator<Item = f64>, objective: Objective) -> f64 {
    match objective {
        Objective::Center => values.fold(0.0, f64::max),
        Objective::Median => values.sum(),
    }
}

fn finish(
    curves: &[Curve],
    centers: Vec<Curve>,
    objective: Objective,
    k: usize,
    ell: usize,
) -> Result<ClusteringResult> {
    let table = distance_table(curves, &centers)?;
    let order = id_order(curves);
    let mut assignment = BTreeMap::new();
    let mut nearest_dist = Vec::with_capacity(curves.len());
    for &t in &order {
        let (c, d) = nearest(&table[t]);
        assignment.insert(curves[t].id().to_string(), c);
        nearest_dist.push(d);
    }
    Ok(ClusteringResult {
        objective,
        k,
        ell,
        centers,
        assignment,
        cost: aggregate(nearest_dist.into_iter(), objective),
    })
}

/// Farthest-first traversal with simplified centers: start from the
/// simplification of the lowest-id curve, then repeatedly add the
/// simplification of the curve farthest from the current centers (ties to the
/// lowest id).
pub fn kl_center(curves: &[Curve], k: usize, ell: usize) -> Result<ClusteringResult> {
    check_params(curves, k, ell)?;
    let order = id_order(curves);
    let mut centers = vec![simplify_curve(&curves[order[0]], ell)?.curve];
    let mut dmin: Vec<f64> = distance_table(curves, &centers)?
        .into_iter()
        .map(|r| r[0])
        .collect();
    while centers.len() < k {
        let mut far = order[0];
        for &t in &order {
            if dmin[t] > dmin[far] {
                far = t;
            }
        }
        let next = simplify_curve(&curves[far], ell)?.curve;
        let col: Vec<f64> = curves
            .par_iter()
            .map(|t| frechet_distance(t, &next))
            .collect::<Result<_>>()?;
        for (d, c) in dmin.iter_mut().zip(col) {
            *d = d.min(c);
        }
        centers.push(next);
    }
    finish(curves, centers, Objective::Center, k, ell)
}

/// Max-min (center) or sum-min (median) Fréchet distance to `centers`.
pub fn clustering_cost(curves: &[Curve], centers: &[Curve], objective: Objective) -> Result<f64> {
    if centers.is_empty() {
        return Err(Error::ParamOutOfRange("no centers".into()));
    }
    let table = distance_table(curves, centers)?;
    let order = id_order(curves);
    Ok(aggregate(order.iter().map(|&t| nearest(&table[t]).1), objective))
}

/// Median candidates: the inputs themselves when `ell` covers every curve,
/// their `ell`-simplifications otherwise. Returned in id order.
pub fn median_candidates(curves: &[Curve], ell: usize) -> Result<Vec<Curve>> {
    let order = id_order(curves);
    let m = curves.iter().map(Curve::len).max().unwrap_or(0);
    order
        .iter()
        .map(|&t| {
            if ell >= m {
                Ok(curves[t].clone())
            } else {
                simplify_curve(&curves[t], ell).map(|s| s.curve)
            }
        })
        .collect()
}

fn subset_cost(table: &[Vec<f64>], subset: &[usize]) -> f64 {
    table
        .iter()
        .map(|row| subset.iter().map(|&c| row[c]).fold(f64::INFINITY, f64::min))
        .sum()
}

fn exhaustive_median(table: &[Vec<f64>], n_cand: usize, k: usize) -> Result<Vec<usize>> {
    let count = binomial(n_cand, k);
    if count > MEDIAN_SUBSET_BUDGET {
        return Err(Error::CandidateBudgetExceeded(count));
    }
    let mut best = (f64::INFINITY, Vec::new());
    for subset in (0..n_cand).combinations(k) {
        let cost = subset_cost(table, &subset);
        if cost < best.0 {
            best = (cost, subset);
        }
    }
    Ok(best.1)
}

fn local_search_median(table: &[Vec<f64>], n_cand: usize, k: usize) -> Vec<usize> {
    let mut singles: Vec<(f64, usize)> = (0..n_cand).map(|c| (subset_cost(table, &[c]), c)).collect();
    singles.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut current: Vec<usize> = singles[..k].iter().map(|s| s.1).sorted().collect();
    let mut cost = subset_cost(table, &current);
    loop {
        let mut best: Option<(f64, Vec<usize>)> = None;
        for pos in 0..k {
            for cand in 0..n_cand {
                if current.contains(&cand) {
                    continue;
                }
                let mut trial = current.clone();
                trial[pos] = cand;
                trial.sort_unstable();
                let c = subset_cost(table, &trial);
                if best.as_ref().is_none_or(|b| c < b.0) {
                    best = Some((c, trial));
                }
            }
        }
        match best {
            Some((c, trial)) if c < cost - 1e-12 * (1.0 + cost.abs()) => {
                current = trial;
                cost = c;
            }
            _ => return current,
        }
    }
}

/// Candidate-restricted `(k, ℓ)`-median.
pub fn kl_median(curves: &[Curve], k: usize, ell: usize, mode: MedianMode) -> Result<ClusteringResult> {
    check_params(curves, k, ell)?;
    let candidates = median_candidates(curves, ell)?;
    let table = distance_table(curves, &candidates)?;
    let chosen = match mode {
        MedianMode::Exhaustive => exhaustive_median(&table, candidates.len(), k)?,
        MedianMode::LocalSearch => local_search_median(&table, candidates.len(), k),
    };
    let centers = chosen.iter().map(|&c| candidates[c].clone()).collect();
    finish(curves, centers, Objective::Median, k, ell)
}

pub fn kl_median_cost(curves: &[Curve], k: usize, ell: usize, mode: MedianMode) -> Result<f64> {
    kl_median(curves, k, ell, mode).map(|r| r.cost)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub epsilon: f64,
    /// Median optimum over candidates in the original space.
    pub r_hat: f64,
    /// Median optimum over candidates in the embedded space.
    pub r_hat_embedded: f64,
    pub c_ell: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    /// `r̂_f ≤ (1 + ε) r̂`, checked only when `ell` covers every curve.
    pub direct_upper: Option<bool>,
    pub holds: bool,
}

/// Compares exhaustive median optima before and after an embedding against
/// `(1−ε)/c_ℓ · r̂/2 ≤ r̂_f ≤ 2(1+ε) r̂`, where `c_ℓ = 2` when `ell` is at
/// least the largest curve complexity and `6(1+ε)` otherwise.
pub fn median_sandwich_check(
    original: &[Curve],
    embedded: &[Curve],
    k: usize,
    ell: usize,
    eps: f64,
) -> Result<SandwichReport> {
    if original.len() != embedded.len() {
        return Err(Error::ParamOutOfRange(format!(
            "{} originals vs {} images",
            original.len(),
            embedded.len()
        )));
    }
    let r_hat = kl_median_cost(original, k, ell, MedianMode::Exhaustive)?;
    let r_hat_embedded = kl_median_cost(embedded, k, ell, MedianMode::Exhaustive)?;
    let m = original.iter().map(Curve::len).max().unwrap_or(0);
    let full = ell >= m;
    let c_ell = if full { 2.0 } else { 6.0 * (1.0 + eps) };
    let lower_bound = (1.0 - eps) / c_ell * r_hat / 2.0;
    let upper_bound = 2.0 * (1.0 + eps) * r_hat;
    let tol = 1e-9 * (1.0 + r_hat);
    let direct_upper = full.then(|| r_hat_embedded <= (1.0 + eps) * r_hat + tol);
    let holds = r_hat_embedded >= lower_bound - tol
        && r_hat_embedded <= upper_bound + tol
        && direct_upper.unwrap_or(true);
    Ok(SandwichReport {
        epsilon: eps,
        r_hat,
        r_hat_embedded,
        c_ell,
        lower_bound,
        upper_bound,
        direct_upper,
        holds,
    })
}

/// Curves whose geometry a clustering certificate should cover: the inputs,
/// all their sub-curves, all vertex-pair segments and, with
/// `all_simplifications`, every vertex-restricted simplification with at most
/// `ell` vertices (exponential in `ell`; capped at 10 vertices per curve).
pub fn certificate_curve_set(curves: &[Curve], ell: usize, all_simplifications: bool) -> Result<Vec<Curve>> {
    let mut out: Vec<Curve> = Vec::new();
    for c in curves {
        let m = c.len();
        if all_simplifications && m > 10 {
            return Err(Error::CapExceeded(format!("curve {} has {m} > 10 vertices", c.id())));
        }
        out.push(c.clone());
        for i in 0..m {
            for j in i + 1..m {
                out.push(c.pick(&(i..=j).collect::<Vec<_>>()));
                out.push(c.pick(&[i, j]));
            }
        }
        if all_simplifications {
            for inner in 0..=ell.saturating_sub(2).min(m - 2) {
                for mid in (1..m - 1).combinations(inner) {
                    let mut idx = vec![0];
                    idx.extend(mid);
                    idx.push(m - 1);
                    out.push(c.pick(&idx));
                }
            }
        } else {
            out.push(simplify_curve(c, ell)?.curve);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Point;

    fn seg(id: &str, y: f64) -> Curve {
        Curve::new(
            id,
            vec![Point::new(vec![0., y]).unwrap(), Point::new(vec![1., y]).unwrap()],
            false,
        )
        .unwrap()
    }

    #[test]
    fn k1_parallel_segments() {
        let curves = [seg("b", 2.0), seg("a", 0.0)];
        let r = kl_center(&curves, 1, 2).unwrap();
        assert_eq!(r.centers[0], seg("a", 0.0));
        assert!((r.cost - 2.0).abs() < 1e-12);
        assert_eq!(r.assignment["a"], 0);
        assert_eq!(r.assignment["b"], 0);
    }

    #[test]
    fn k_equals_n_costs_zero() {
        let curves = [seg("a", 0.0), seg("b", 1.0), seg("c", 5.0)];
        assert_eq!(kl_center(&curves, 3, 2).unwrap().cost, 0.0);
        assert_eq!(kl_median_cost(&curves, 3, 2, MedianMode::Exhaustive).unwrap(), 0.0);
        assert_eq!(kl_median_cost(&curves, 3, 2, MedianMode::LocalSearch).unwrap(), 0.0);
    }

    #[test]
    fn too_few_curves() {
        assert_eq!(
            kl_center(&[seg("a", 0.0)], 2, 2),
            Err(Error::TooFewCurves { k: 2, n: 1 })
        );
    }

    #[test]
    fn cost_objectives() {
        let curves = [seg("a", 0.0), seg("b", 3.0)];
        let centers = [seg("x", 0.0)];
        assert!((clustering_cost(&curves, &centers, Objective::Center).unwrap() - 3.0).abs() < 1e-12);
        assert!((clustering_cost(&curves, &centers, Objective::Median).unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(clustering_cost(&curves, &curves, Objective::Median).unwrap(), 0.0);
    }

    #[test]
    fn identical_curves_median_zero() {
        let curves = [seg("a", 1.0), seg("b", 1.0), seg("c", 1.0)];
        assert_eq!(kl_median_cost(&curves, 1, 2, MedianMode::Exhaustive).unwrap(), 0.0);
    }

    #[test]
    fn sandwich_identity() {
        let curves = [seg("a", 0.0), seg("b", 1.0), seg("c", 4.0)];
        let rep = median_sandwich_check(&curves, &curves, 1, 2, 0.0).unwrap();
        assert_eq!(rep.r_hat, rep.r_hat_embedded);
        assert!(rep.holds);
        assert_eq!(rep.direct_upper, Some(true));
    }

    #[test]
    fn certificate_set_counts() {
        let c = Curve::new(
            "c",
            (0..4).map(|k| Point::new(vec![k as f64, (k % 2) as f64]).unwrap()).collect(),
            false,
        )
        .unwrap();
        // 1 + 6 subcurves + 6 segments + simplifications with <= 3 vertices (1 + 2)
        assert_eq!(certificate_curve_set(&[c.clone()], 3, true).unwrap().len(), 1 + 6 + 6 + 3);
        assert_eq!(certificate_curve_set(&[c], 3, false).unwrap().len(), 1 + 6 + 6 + 1);
    }
}
