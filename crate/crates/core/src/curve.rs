//! Points, segments, polygonal curves and the ball/segment primitive that the
//! free-space machinery is built on.
//!
//! All geometry is plain `f64`. Closed-ball tests share one absolute slack,
//! [`SLACK`], so that every decision derived from them is monotone in the
//! radius.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute slack applied to every `distance <= r` and interval-order test.
pub const SLACK: f64 = 1e-12;

/// Relative factor for the collinearity tolerance used by curve normalization.
pub const COLLINEAR_REL_TOL: f64 = 1e-12;

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

/// A point in `R^d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Point(coords))
    }

    /// Builds a point without validating finiteness. Used for images of
    /// already-validated points under finite linear maps.
    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn distance(&self, other: &Point) -> f64 {
        dist(&self.0, &other.0)
    }

    pub fn dot(&self, other: &Point) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn norm(&self) -> f64 {
        dot(&self.0, &self.0).sqrt()
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: f64) -> Point {
        Point(self.0.iter().map(|a| a * s).collect())
    }

    /// `self + s * dir`
    pub fn add_scaled(&self, dir: &Point, s: f64) -> Point {
        Point(self.0.iter().zip(&dir.0).map(|(a, b)| a + s * b).collect())
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl From<&[f64]> for Point {
    fn from(c: &[f64]) -> Self {
        Point(c.to_vec())
    }
}

/// The segment `{(1-λ)a + λb : λ ∈ [0,1]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        a.check_dim(&b)?;
        Ok(Segment { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `(1-λ)a + λb`; any real λ addresses the supporting line.
    pub fn point_at(&self, lambda: f64) -> Point {
        Point(lerp(self.a.coords(), self.b.coords(), lambda))
    }

    pub fn length(&self) -> f64 {
        self.a.distance(&self.b)
    }
}

#[inline]
pub(crate) fn lerp(a: &[f64], b: &[f64], lambda: f64) -> Vec<f64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (1.0 - lambda) * x + lambda * y)
        .collect()
}

/// `(1-λ)a + λb` for a segment given by its endpoints.
pub fn point_on_segment(s: &Segment, lambda: f64) -> Point {
    s.point_at(lambda)
}

/// A closed sub-interval of `[0,1]`, or the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub empty: bool,
}

impl Interval {
    pub const EMPTY: Interval = Interval {
        lo: 1.0,
        hi: 0.0,
        empty: true,
    };
    pub const FULL: Interval = Interval {
        lo: 0.0,
        hi: 1.0,
        empty: false,
    };

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(0.0 <= lo && lo <= hi && hi <= 1.0, "bad interval [{lo}, {hi}]");
        Interval {
            lo,
            hi,
            empty: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// True when some `t1` in `self` and `t2` in `later` satisfy `t1 <= t2`.
    pub fn precedes(&self, later: &Interval) -> bool {
        !self.empty && !later.empty && self.lo <= later.hi + SLACK
    }

    /// `self ∩ [from, 1]`, with the shared order slack.
    pub fn clip_below(&self, from: f64) -> Interval {
        if self.empty || from > self.hi + SLACK {
            return Interval::EMPTY;
        }
        Interval::new(from.max(self.lo).min(self.hi), self.hi)
    }

    pub fn contains(&self, t: f64) -> bool {
        !self.empty && self.lo - SLACK <= t && t <= self.hi + SLACK
    }
}

/// Exact distance from `p` to the closest point of segment `[a, b]`.
/// Zero-length segments are treated as the single point `a`.
pub(crate) fn point_segment_distance_raw(p: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let ab2 = dist_sq(a, b);
    let da = dist(p, a);
    if ab2 == 0.0 {
        return da;
    }
    let db = dist(p, b);
    let t: f64 = p
        .iter()
        .zip(a)
        .zip(b)
        .map(|((p, a), b)| (p - a) * (b - a))
        .sum::<f64>()
        / ab2;
    let t = t.clamp(0.0, 1.0);
    let foot: f64 = p
        .iter()
        .zip(a)
        .zip(b)
        .map(|((p, a), b)| {
            let q = a + t * (b - a);
            (p - q) * (p - q)
        })
        .sum::<f64>()
        .sqrt();
    foot.min(da).min(db)
}

pub fn point_segment_distance(p: &Point, s: &Segment) -> Result<f64> {
    p.check_dim(&s.a)?;
    Ok(point_segment_distance_raw(
        p.coords(),
        s.a.coords(),
        s.b.coords(),
    ))
}

/// `{λ ∈ [0,1] : ‖center − ((1-λ)a + λb)‖ ≤ r}` on raw coordinates.
pub(crate) fn ball_segment_raw(a: &[f64], b: &[f64], center: &[f64], r: f64) -> Interval {
    let reach = r + SLACK;
    let d = point_segment_distance_raw(center, a, b);
    if d > reach {
        return Interval::EMPTY;
    }
    let len2 = dist_sq(a, b);
    if len2 == 0.0 {
        return Interval::FULL;
    }
    let mut proj = 0.0;
    for ((c, a), b) in center.iter().zip(a).zip(b) {
        proj += (c - a) * (b - a);
    }
    let lambda0 = proj / len2;
    let mut h2 = 0.0;
    for ((c, a), b) in center.iter().zip(a).zip(b) {
        let q = a + lambda0 * (b - a);
        h2 += (c - q) * (c - q);
    }
    let w = ((r * r - h2).max(0.0) / len2).sqrt();
    let mut lo = (lambda0 - w).max(0.0);
    let mut hi = (lambda0 + w).min(1.0);
    if dist(center, a) <= reach {
        lo = 0.0;
    }
    if dist(center, b) <= reach {
        hi = 1.0;
    }
    if lo > hi {
        // tangency resolved within the slack: collapse to the nearest point
        let t = lambda0.clamp(0.0, 1.0);
        lo = t;
        hi = t;
    }
    Interval::new(lo, hi)
}

/// Parameters of the segment points inside the closed ball `B(center, r)`.
pub fn ball_segment_intersection(s: &Segment, center: &Point, r: f64) -> Interval {
    ball_segment_raw(s.a.coords(), s.b.coords(), center.coords(), r)
}

/// An ordered polygonal curve with a string label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    id: String,
    vertices: Vec<Point>,
}

impl Curve {
    /// Validating constructor: drops consecutive duplicates and, when
    /// `normalize` is set, interior vertices lying on the segment joining
    /// their neighbours (within `1e-12 × bounding-box diameter`).
    pub fn new(id: impl Into<String>, points: Vec<Point>, normalize: bool) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::DegenerateCurve(0));
        };
        let dim = first.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if p.coords().iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let mut vertices: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if vertices.last() != Some(&p) {
                vertices.push(p);
            }
        }
        if vertices.len() < 2 {
            return Err(Error::DegenerateCurve(vertices.len()));
        }
        if normalize {
            vertices = remove_collinear(vertices);
        }
        Ok(Curve {
            id: id.into(),
            vertices,
        })
    }

    /// Builds a curve without any validation. Images of curves under linear
    /// maps can legitimately contain repeated or collinear vertices.
    pub fn from_vertices_unchecked(id: impl Into<String>, vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.len() >= 2);
        Curve {
            id: id.into(),
            vertices,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i]
    }

    /// Number of vertices, `|τ|`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Edge `i` (0-based) joins vertices `i` and `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment {
            a: self.vertices[i].clone(),
            b: self.vertices[i + 1].clone(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment {
            a: w[0].clone(),
            b: w[1].clone(),
        })
    }

    pub fn first(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    /// True when two consecutive vertices coincide.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.windows(2).any(|w| w[0] == w[1])
    }

    pub fn arc_length(&self) -> f64 {
        self.vertices.windows(2).map(|w| w[0].distance(&w[1])).sum()
    }

    /// Sub-curve on vertices `i..=j`, 1-based and inclusive.
    pub fn subcurve(&self, i: usize, j: usize) -> Result<Curve> {
        if i < 1 || j > self.len() || i >= j {
            return Err(Error::Index(format!(
                "subcurve({i}, {j}) on a curve with {} vertices",
                self.len()
            )));
        }
        Ok(Curve {
            id: format!("{}[{i},{j}]", self.id),
            vertices: self.vertices[i - 1..j].to_vec(),
        })
    }

    /// Curve on the given 0-based vertex indices.
    pub fn pick(&self, indices: &[usize]) -> Curve {
        Curve {
            id: self.id.clone(),
            vertices: indices.iter().map(|&i| self.vertices[i].clone()).collect(),
        }
    }

    pub(crate) fn check_same_dim(&self, other: &Curve) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// Convenience wrapper with an empty id.
pub fn make_curve(points: Vec<Point>, normalize: bool) -> Result<Curve> {
    Curve::new("", points, normalize)
}

fn bbox_diameter(points: &[Point]) -> f64 {
    let dim = points[0].dim();
    let mut lo = vec![f64::INFINITY; dim];
    let mut hi = vec![f64::NEG_INFINITY; dim];
    for p in points {
        for (k, &c) in p.coords().iter().enumerate() {
            lo[k] = lo[k].min(c);
            hi[k] = hi[k].max(c);
        }
    }
    dist(&lo, &hi)
}

fn remove_collinear(vertices: Vec<Point>) -> Vec<Point> {
    let tol = COLLINEAR_REL_TOL * bbox_diameter(&vertices);
    let mut kept: Vec<Point> = Vec::with_capacity(vertices.len());
    for v in vertices {
        while kept.len() >= 2 {
            let mid = &kept[kept.len() - 1];
            let prev = &kept[kept.len() - 2];
            if point_segment_distance_raw(mid.coords(), prev.coords(), v.coords()) <= tol {
                kept.pop();
            } else {
                break;
            }
        }
        if kept.last() != Some(&v) {
            kept.push(v);
        }
    }
    kept
}
