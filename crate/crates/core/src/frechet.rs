//! Discrete, weak and continuous Fréchet distances.
//!
//! The continuous decision procedure is the classical free-space
//! reachability sweep. Distances are found by binary search over the exact
//! list of critical radii, so the returned value is one of those radii rather
//! than the end of a bisection.
//!
//! The predicate layer ([`PredicateId`], [`ValidSequence`],
//! [`eval_predicate_system`]) expresses the same decision as a conjunction of
//! closed per-vertex/per-edge conditions along a walk over free-space cells.
//! Cell `(i, j)` pairs edge `i` of the first curve with edge `j` of the
//! second; all predicate and sequence indices are 1-based.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::curve::{ball_segment_raw, dist, lerp, Curve, Interval, Point, SLACK};
use crate::error::{Error, Result};

/// Dedup tolerance for critical values.
pub const CRITICAL_DEDUP_TOL: f64 = 1e-12;

/// Feasible boundary pieces of every free-space cell at a fixed radius.
#[derive(Debug, Clone)]
pub struct FreeSpaceDiagram {
    pub radius: f64,
    /// `left[i][j]`: parameters on edge `j` of the second curve within
    /// `radius` of vertex `i` of the first curve. Rows `0..|a|`, the last row
    /// being the right boundary of the final column.
    pub left: Vec<Vec<Interval>>,
    /// `bottom[i][j]`: parameters on edge `i` of the first curve within
    /// `radius` of vertex `j` of the second curve. Columns `0..|b|`.
    pub bottom: Vec<Vec<Interval>>,
}

impl FreeSpaceDiagram {
    /// Number of cell columns (edges of the first curve).
    pub fn columns(&self) -> usize {
        self.bottom.len()
    }

    /// Number of cell rows (edges of the second curve).
    pub fn rows(&self) -> usize {
        self.left[0].len()
    }
}

pub fn build_free_space(a: &Curve, b: &Curve, r: f64) -> Result<FreeSpaceDiagram> {
    a.check_same_dim(b)?;
    let (p, q) = (a.len(), b.len());
    let av = a.vertices();
    let bv = b.vertices();
    let left = (0..p)
        .map(|i| {
            (0..q - 1)
                .map(|j| ball_segment_raw(bv[j].coords(), bv[j + 1].coords(), av[i].coords(), r))
                .collect()
        })
        .collect();
    let bottom = (0..p - 1)
        .map(|i| {
            (0..q)
                .map(|j| ball_segment_raw(av[i].coords(), av[i + 1].coords(), bv[j].coords(), r))
                .collect()
        })
        .collect();
    Ok(FreeSpaceDiagram {
        radius: r,
        left,
        bottom,
    })
}

fn endpoints_ok(a: &Curve, b: &Curve, r: f64) -> bool {
    a.first().distance(b.first()) <= r + SLACK && a.last().distance(b.last()) <= r + SLACK
}

/// Monotonically reachable parts of each cell boundary.
struct Reach {
    left: Vec<Vec<Interval>>,
    bottom: Vec<Vec<Interval>>,
}

fn reach(fs: &FreeSpaceDiagram) -> Reach {
    let cols = fs.columns();
    let rows = fs.rows();
    let mut left = vec![vec![Interval::EMPTY; rows]; cols + 1];
    let mut bottom = vec![vec![Interval::EMPTY; rows + 1]; cols];

    for j in 0..rows {
        let f = fs.left[0][j];
        let chained = j == 0 || (!left[0][j - 1].empty && left[0][j - 1].hi == 1.0);
        if chained && !f.empty && f.lo == 0.0 {
            left[0][j] = f;
        } else {
            break;
        }
    }
    for i in 0..cols {
        let f = fs.bottom[i][0];
        let chained = i == 0 || (!bottom[i - 1][0].empty && bottom[i - 1][0].hi == 1.0);
        if chained && !f.empty && f.lo == 0.0 {
            bottom[i][0] = f;
        } else {
            break;
        }
    }

    for i in 0..cols {
        for j in 0..rows {
            let l = left[i][j];
            let b = bottom[i][j];
            left[i + 1][j] = if !b.empty {
                fs.left[i + 1][j]
            } else if !l.empty {
                fs.left[i + 1][j].clip_below(l.lo)
            } else {
                Interval::EMPTY
            };
            bottom[i][j + 1] = if !l.empty {
                fs.bottom[i][j + 1]
            } else if !b.empty {
                fs.bottom[i][j + 1].clip_below(b.lo)
            } else {
                Interval::EMPTY
            };
        }
    }
    Reach { left, bottom }
}

fn end_reached(reach: &Reach, cols: usize, rows: usize) -> bool {
    let right = reach.left[cols][rows - 1];
    let top = reach.bottom[cols - 1][rows];
    (!right.empty && right.hi == 1.0) || (!top.empty && top.hi == 1.0)
}

/// `true` iff `d_F(a, b) <= r`.
pub fn decide_frechet(a: &Curve, b: &Curve, r: f64) -> Result<bool> {
    a.check_same_dim(b)?;
    if !endpoints_ok(a, b, r) {
        return Ok(false);
    }
    let fs = build_free_space(a, b, r)?;
    let reach = reach(&fs);
    Ok(end_reached(&reach, fs.columns(), fs.rows()))
}

/// Breadth-first search over cells through non-empty shared boundaries.
/// Returns the cell path (0-based) from the first to the last cell.
fn weak_cell_path(fs: &FreeSpaceDiagram) -> Option<Vec<(usize, usize)>> {
    let cols = fs.columns();
    let rows = fs.rows();
    let idx = |i: usize, j: usize| i * rows + j;
    let mut parent: Vec<Option<usize>> = vec![None; cols * rows];
    let mut seen = vec![false; cols * rows];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back((0usize, 0usize));
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == (cols - 1, rows - 1) {
            let mut path = vec![(i, j)];
            let mut cur = idx(i, j);
            while let Some(prev) = parent[cur] {
                path.push((prev / rows, prev % rows));
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        let mut nbrs = Vec::with_capacity(4);
        if i + 1 < cols && !fs.left[i + 1][j].empty {
            nbrs.push((i + 1, j));
        }
        if j + 1 < rows && !fs.bottom[i][j + 1].empty {
            nbrs.push((i, j + 1));
        }
        if i > 0 && !fs.left[i][j].empty {
            nbrs.push((i - 1, j));
        }
        if j > 0 && !fs.bottom[i][j].empty {
            nbrs.push((i, j - 1));
        }
        for (ni, nj) in nbrs {
            let n = idx(ni, nj);
            if !seen[n] {
                seen[n] = true;
                parent[n] = Some(idx(i, j));
                queue.push_back((ni, nj));
            }
        }
    }
    None
}

/// `true` iff `d_wF(a, b) <= r`.
pub fn decide_weak_frechet(a: &Curve, b: &Curve, r: f64) -> Result<bool> {
    a.check_same_dim(b)?;
    if !endpoints_ok(a, b, r) {
        return Ok(false);
    }
    let fs = build_free_space(a, b, r)?;
    Ok(weak_cell_path(&fs).is_some())
}

/// Discrete Fréchet distance by the standard coupling dynamic program.
pub fn discrete_frechet(a: &Curve, b: &Curve) -> Result<f64> {
    a.check_same_dim(b)?;
    let av = a.vertices();
    let bv = b.vertices();
    let q = bv.len();
    let mut prev = vec![0.0f64; q];
    let mut cur = vec![0.0f64; q];
    for (i, pa) in av.iter().enumerate() {
        for j in 0..q {
            let d = pa.distance(&bv[j]);
            cur[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => cur[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[q - 1])
}

/// Parameter on line `(a, b)` equidistant from `u` and `w`, if the bisector
/// hyperplane crosses the segment.
fn bisector_parameter(a: &[f64], b: &[f64], u: &[f64], w: &[f64]) -> Option<f64> {
    let mut num = 0.0;
    let mut den = 0.0;
    for k in 0..a.len() {
        let wu = w[k] - u[k];
        num += (w[k] * w[k] - u[k] * u[k]) - 2.0 * a[k] * wu;
        den += 2.0 * (b[k] - a[k]) * wu;
    }
    if den.abs() <= f64::EPSILON * num.abs().max(1.0) {
        return None;
    }
    let lambda = num / den;
    (0.0..=1.0).contains(&lambda).then_some(lambda)
}

/// Candidate radii at which free-space connectivity can change, sorted and
/// deduplicated within [`CRITICAL_DEDUP_TOL`].
pub fn critical_values(a: &Curve, b: &Curve) -> Result<Vec<f64>> {
    a.check_same_dim(b)?;
    let mut out = vec![a.first().distance(b.first()), a.last().distance(b.last())];
    let add_pair = |x: &Curve, y: &Curve, out: &mut Vec<f64>| {
        let xv = x.vertices();
        let yv = y.vertices();
        for e in yv.windows(2) {
            let (s, t) = (e[0].coords(), e[1].coords());
            for v in xv {
                out.push(crate::curve::point_segment_distance_raw(v.coords(), s, t));
            }
            for (k, u) in xv.iter().enumerate() {
                for w in &xv[k + 1..] {
                    if let Some(lambda) = bisector_parameter(s, t, u.coords(), w.coords()) {
                        out.push(dist(u.coords(), &lerp(s, t, lambda)));
                    }
                }
            }
        }
    };
    add_pair(a, b, &mut out);
    add_pair(b, a, &mut out);
    out.sort_by(f64::total_cmp);
    let mut dedup: Vec<f64> = Vec::with_capacity(out.len());
    for v in out {
        match dedup.last() {
            Some(&last) if v - last <= CRITICAL_DEDUP_TOL => {}
            _ => dedup.push(v),
        }
    }
    Ok(dedup)
}

fn smallest_feasible(
    a: &Curve,
    b: &Curve,
    decide: impl Fn(&Curve, &Curve, f64) -> Result<bool>,
) -> Result<f64> {
    let crit = critical_values(a, b)?;
    let (mut lo, mut hi) = (0usize, crit.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if decide(a, b, crit[mid])? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if lo < crit.len() {
        return Ok(crit[lo]);
    }
    // Unreachable in exact arithmetic; the largest vertex-pair distance is
    // always feasible.
    let mut far: f64 = 0.0;
    for u in a.vertices() {
        for v in b.vertices() {
            far = far.max(u.distance(v));
        }
    }
    Ok(far)
}

/// Continuous Fréchet distance.
pub fn frechet_distance(a: &Curve, b: &Curve) -> Result<f64> {
    smallest_feasible(a, b, decide_frechet)
}

/// Weak Fréchet distance.
pub fn weak_frechet_distance(a: &Curve, b: &Curve) -> Result<f64> {
    smallest_feasible(a, b, decide_weak_frechet)
}

/// One of the closed distance predicates on a pair of curves `(σ, τ)`.
///
/// * `P3 { i, j }`: some point of edge `i` of σ lies within `r` of vertex `j` of τ.
/// * `P4 { i, j }`: some point of edge `j` of τ lies within `r` of vertex `i` of σ.
/// * `P5 { i, j, k }`: on edge `j` of σ there are parameters `t1 <= t2` with
///   `σ_j(t1)` within `r` of τ-vertex `i` and `σ_j(t2)` within `r` of τ-vertex `k`.
/// * `P6 { i, j, k }`: the same on edge `i` of τ for σ-vertices `j` then `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PredicateId {
    P1,
    P2,
    P3 { i: usize, j: usize },
    P4 { i: usize, j: usize },
    P5 { i: usize, j: usize, k: usize },
    P6 { i: usize, j: usize, k: usize },
}

fn vertex_in(c: &Curve, i: usize, what: &str) -> Result<usize> {
    if i == 0 || i > c.len() {
        return Err(Error::BadIndices(format!(
            "{what} vertex {i} outside 1..={}",
            c.len()
        )));
    }
    Ok(i - 1)
}

fn edge_in(c: &Curve, i: usize, what: &str) -> Result<usize> {
    if i == 0 || i >= c.len() {
        return Err(Error::BadIndices(format!(
            "{what} edge {i} outside 1..={}",
            c.len() - 1
        )));
    }
    Ok(i - 1)
}

/// Feasible parameters on (0-based) edge `e` of `on` around vertex `v` of `of`.
fn edge_interval(on: &Curve, e: usize, of: &Curve, v: usize, r: f64) -> Interval {
    ball_segment_raw(
        on.vertex(e).coords(),
        on.vertex(e + 1).coords(),
        of.vertex(v).coords(),
        r,
    )
}

pub fn eval_predicate(id: PredicateId, a: &Curve, b: &Curve, r: f64) -> Result<bool> {
    a.check_same_dim(b)?;
    Ok(match id {
        PredicateId::P1 => a.first().distance(b.first()) <= r + SLACK,
        PredicateId::P2 => a.last().distance(b.last()) <= r + SLACK,
        PredicateId::P3 { i, j } => {
            let e = edge_in(a, i, "first-curve")?;
            let v = vertex_in(b, j, "second-curve")?;
            !edge_interval(a, e, b, v, r).empty
        }
        PredicateId::P4 { i, j } => {
            let v = vertex_in(a, i, "first-curve")?;
            let e = edge_in(b, j, "second-curve")?;
            !edge_interval(b, e, a, v, r).empty
        }
        PredicateId::P5 { i, j, k } => {
            let v1 = vertex_in(b, i, "second-curve")?;
            let e = edge_in(a, j, "first-curve")?;
            let v2 = vertex_in(b, k, "second-curve")?;
            edge_interval(a, e, b, v1, r).precedes(&edge_interval(a, e, b, v2, r))
        }
        PredicateId::P6 { i, j, k } => {
            let e = edge_in(b, i, "second-curve")?;
            let v1 = vertex_in(a, j, "first-curve")?;
            let v2 = vertex_in(a, k, "first-curve")?;
            edge_interval(b, e, a, v1, r).precedes(&edge_interval(b, e, a, v2, r))
        }
    })
}

/// A walk over free-space cells, 1-based `(edge of σ, edge of τ)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidSequence {
    pub cells: Vec<(usize, usize)>,
}

impl ValidSequence {
    pub fn new(cells: Vec<(usize, usize)>) -> Self {
        ValidSequence { cells }
    }

    /// Checks the walk against a `cols × rows` cell grid.
    pub fn validate(&self, cols: usize, rows: usize, monotone: bool) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSequence(m));
        let Some(&first) = self.cells.first() else {
            return bad("empty sequence".into());
        };
        if first != (1, 1) {
            return bad(format!("starts at {first:?}, not (1, 1)"));
        }
        let last = *self.cells.last().unwrap();
        if last != (cols, rows) {
            return bad(format!("ends at {last:?}, not ({cols}, {rows})"));
        }
        let mut seen = HashSet::with_capacity(self.cells.len());
        for &(i, j) in &self.cells {
            if i == 0 || j == 0 || i > cols || j > rows {
                return bad(format!("cell ({i}, {j}) outside the {cols}x{rows} grid"));
            }
            if !seen.insert((i, j)) {
                return bad(format!("cell ({i}, {j}) repeated"));
            }
        }
        for w in self.cells.windows(2) {
            let di = w[1].0 as isize - w[0].0 as isize;
            let dj = w[1].1 as isize - w[0].1 as isize;
            let ok = if monotone {
                matches!((di, dj), (1, 0) | (0, 1))
            } else {
                matches!((di, dj), (1, 0) | (0, 1) | (-1, 0) | (0, -1))
            };
            if !ok {
                return bad(format!("illegal step {:?} -> {:?}", w[0], w[1]));
            }
        }
        Ok(())
    }

    /// Predicates whose conjunction (with `P1`, `P2`) certifies the walk.
    ///
    /// Every step across a horizontal cell boundary contributes a `P3`,
    /// every step across a vertical one a `P4`. Monotone walks additionally
    /// contribute ordering predicates (`P5` within a column, `P6` within a
    /// row) for every pair of crossings on the same edge.
    pub fn predicates(&self, monotone: bool) -> Vec<PredicateId> {
        let mut out = vec![PredicateId::P1, PredicateId::P2];
        for w in self.cells.windows(2) {
            let ((i0, j0), (i1, j1)) = (w[0], w[1]);
            if i0 == i1 {
                out.push(PredicateId::P3 {
                    i: i0,
                    j: j0.max(j1),
                });
            } else {
                out.push(PredicateId::P4 {
                    i: i0.max(i1),
                    j: j0,
                });
            }
        }
        if monotone {
            let (columns, rows) = self.crossings();
            for (edge, verts) in columns {
                for (x, &v1) in verts.iter().enumerate() {
                    for &v2 in &verts[x + 1..] {
                        out.push(PredicateId::P5 {
                            i: v1,
                            j: edge,
                            k: v2,
                        });
                    }
                }
            }
            for (edge, verts) in rows {
                for (x, &v1) in verts.iter().enumerate() {
                    for &v2 in &verts[x + 1..] {
                        out.push(PredicateId::P6 {
                            i: edge,
                            j: v1,
                            k: v2,
                        });
                    }
                }
            }
        }
        out
    }

    /// For a monotone walk: per σ-edge, the τ-vertices crossed in order, and
    /// per τ-edge, the σ-vertices crossed in order.
    #[allow(clippy::type_complexity)]
    fn crossings(&self) -> (Vec<(usize, Vec<usize>)>, Vec<(usize, Vec<usize>)>) {
        let mut columns: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
        for w in self.cells.windows(2) {
            let ((i0, j0), (i1, j1)) = (w[0], w[1]);
            if i0 == i1 {
                let v = j0.max(j1);
                match columns.iter_mut().find(|(e, _)| *e == i0) {
                    Some((_, vs)) => vs.push(v),
                    None => columns.push((i0, vec![v])),
                }
            } else {
                let v = i0.max(i1);
                match rows.iter_mut().find(|(e, _)| *e == j0) {
                    Some((_, vs)) => vs.push(v),
                    None => rows.push((j0, vec![v])),
                }
            }
        }
        (columns, rows)
    }
}

/// `P1 ∧ P2 ∧ Ψ(F)` (or `Ψ_w(F)` when `monotone` is false).
pub fn eval_predicate_system(
    a: &Curve,
    b: &Curve,
    r: f64,
    seq: &ValidSequence,
    monotone: bool,
) -> Result<bool> {
    a.check_same_dim(b)?;
    seq.validate(a.edge_count(), b.edge_count(), monotone)?;
    for id in seq.predicates(monotone) {
        if !eval_predicate(id, a, b, r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A satisfied predicate together with the concrete points that satisfy it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub predicate: PredicateId,
    /// Parameters along the witnessing edge (empty for `P1`/`P2`).
    pub params: Vec<f64>,
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Realization {
    pub sequence: ValidSequence,
    pub witnesses: Vec<Witness>,
}

impl Realization {
    /// Points witnessing `P3`–`P6`.
    pub fn witness_points(&self) -> impl Iterator<Item = &Point> {
        self.witnesses
            .iter()
            .filter(|w| !matches!(w.predicate, PredicateId::P1 | PredicateId::P2))
            .flat_map(|w| w.points.iter())
    }
}

fn point_at(c: &Curve, e: usize, t: f64) -> Point {
    Point::from_vec(lerp(c.vertex(e).coords(), c.vertex(e + 1).coords(), t))
}

fn witnesses_for(
    a: &Curve,
    b: &Curve,
    r: f64,
    seq: &ValidSequence,
    monotone: bool,
) -> Result<Vec<Witness>> {
    let mut out = Vec::new();
    for id in seq.predicates(monotone) {
        let (params, points) = match id {
            PredicateId::P1 => (vec![], vec![a.first().clone(), b.first().clone()]),
            PredicateId::P2 => (vec![], vec![a.last().clone(), b.last().clone()]),
            PredicateId::P3 { i, j } => {
                let iv = edge_interval(a, i - 1, b, j - 1, r);
                (vec![iv.lo], vec![point_at(a, i - 1, iv.lo)])
            }
            PredicateId::P4 { i, j } => {
                let iv = edge_interval(b, j - 1, a, i - 1, r);
                (vec![iv.lo], vec![point_at(b, j - 1, iv.lo)])
            }
            PredicateId::P5 { i, j, k } => {
                let first = edge_interval(a, j - 1, b, i - 1, r);
                let second = edge_interval(a, j - 1, b, k - 1, r);
                let t2 = second.lo.max(first.lo).min(second.hi);
                (
                    vec![first.lo, t2],
                    vec![point_at(a, j - 1, first.lo), point_at(a, j - 1, t2)],
                )
            }
            PredicateId::P6 { i, j, k } => {
                let first = edge_interval(b, i - 1, a, j - 1, r);
                let second = edge_interval(b, i - 1, a, k - 1, r);
                let t2 = second.lo.max(first.lo).min(second.hi);
                (
                    vec![first.lo, t2],
                    vec![point_at(b, i - 1, first.lo), point_at(b, i - 1, t2)],
                )
            }
        };
        if !matches!(id, PredicateId::P1 | PredicateId::P2) && params.is_empty() {
            continue;
        }
        out.push(Witness {
            predicate: id,
            params,
            points,
        });
    }
    Ok(out)
}

/// A monotone valid sequence whose predicate system holds at `r`, plus one
/// witness per predicate (interval lower ends).
pub fn extract_realizing_sequence(a: &Curve, b: &Curve, r: f64) -> Result<Realization> {
    a.check_same_dim(b)?;
    if !endpoints_ok(a, b, r) {
        return Err(Error::Infeasible(r));
    }
    let fs = build_free_space(a, b, r)?;
    let reach = reach(&fs);
    let (cols, rows) = (fs.columns(), fs.rows());
    if !end_reached(&reach, cols, rows) {
        return Err(Error::Infeasible(r));
    }
    // Walk back from the end corner, always entering through the lowest
    // reachable point that is still below/left of the current exit.
    let (mut i, mut j) = (cols - 1, rows - 1);
    let (mut s, mut t) = (cols as f64, rows as f64);
    let mut cells = vec![(i, j)];
    while (i, j) != (0, 0) {
        let l = reach.left[i][j];
        let bo = reach.bottom[i][j];
        if i > 0 && !l.empty && j as f64 + l.lo <= t + SLACK {
            s = i as f64;
            t = j as f64 + l.lo;
            i -= 1;
        } else if j > 0 && !bo.empty && i as f64 + bo.lo <= s + SLACK {
            s = i as f64 + bo.lo;
            t = j as f64;
            j -= 1;
        } else {
            return Err(Error::Infeasible(r));
        }
        cells.push((i, j));
    }
    cells.reverse();
    let sequence = ValidSequence::new(cells.into_iter().map(|(i, j)| (i + 1, j + 1)).collect());
    let witnesses = witnesses_for(a, b, r, &sequence, true)?;
    Ok(Realization {
        sequence,
        witnesses,
    })
}

/// Weak counterpart of [`extract_realizing_sequence`]: a (generally
/// non-monotone) valid sequence with `P3`/`P4` witnesses.
pub fn extract_realizing_weak_sequence(a: &Curve, b: &Curve, r: f64) -> Result<Realization> {
    a.check_same_dim(b)?;
    if !endpoints_ok(a, b, r) {
        return Err(Error::Infeasible(r));
    }
    let fs = build_free_space(a, b, r)?;
    let path = weak_cell_path(&fs).ok_or(Error::Infeasible(r))?;
    let sequence = ValidSequence::new(path.into_iter().map(|(i, j)| (i + 1, j + 1)).collect());
    let witnesses = witnesses_for(a, b, r, &sequence, false)?;
    Ok(Realization {
        sequence,
        witnesses,
    })
}

/// Which Fréchet variant a pairwise computation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Discrete,
    Weak,
    Continuous,
}

impl Metric {
    pub fn distance(self, a: &Curve, b: &Curve) -> Result<f64> {
        match self {
            Metric::Discrete => discrete_frechet(a, b),
            Metric::Weak => weak_frechet_distance(a, b),
            Metric::Continuous => frechet_distance(a, b),
        }
    }
}

/// Symmetric pairwise matrix of `metric` over `curves`, computed in parallel.
pub fn distance_matrix(
    curves: &[Curve],
    metric: impl Fn(&Curve, &Curve) -> Result<f64> + Sync,
) -> Result<Vec<Vec<f64>>> {
    use rayon::prelude::*;
    let n = curves.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| metric(&curves[i], &curves[j]))
        .collect::<Result<_>>()?;
    let mut m = vec![vec![0.0; n]; n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        m[i][j] = v;
        m[j][i] = v;
    }
    Ok(m)
}
