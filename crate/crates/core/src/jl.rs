//! Random linear maps and the checks that turn their probabilistic
//! guarantees into verified preconditions.
//!
//! A curve is embedded by mapping its vertices. Whether distances between
//! curves survive depends only on how the map treats a finite set of points
//! derived from the curves: the vertices, the direction vectors and
//! line residuals of [`augmentation_lower`] (non-contraction), and the
//! predicate witnesses of [`augmentation_upper`] (non-expansion).
//! [`certify_embedding`] checks the pairwise distortion on such a set
//! exactly.

use std::collections::HashSet;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{dot, Curve, Point};
use crate::error::{Error, Result};
use crate::frechet::{
    extract_realizing_sequence, extract_realizing_weak_sequence, frechet_distance,
    weak_frechet_distance, Metric,
};

/// Default failure exponent: success probability at least `1 - n^-β`.
pub const DEFAULT_BETA: f64 = 2.0;
/// Default number of resamples after a failed certificate.
pub const DEFAULT_MAX_RETRIES: usize = 16;
/// Point-level budget for curve-level distortion `ε`.
pub const POINT_BUDGET_DIVISOR: f64 = 48.0;
/// Radius slack used when extracting non-expansion witnesses.
pub const WITNESS_SLACK: f64 = 1e-9;
/// Failing pairs kept verbatim in a [`CertReport`].
pub const MAX_REPORTED_FAILURES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapScheme {
    /// i.i.d. `N(0, 1/d')` entries.
    Gaussian,
    /// Haar-random orthogonal `d × d` matrix; used when no reduction is
    /// possible at the requested accuracy.
    Orthogonal,
    Identity,
}

/// A `d' × d` real matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearMap {
    pub scheme: MapScheme,
    pub seed: u64,
    pub d: usize,
    pub d_prime: usize,
    pub entries: Vec<f64>,
}

impl LinearMap {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let d_prime = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        if d_prime == 0 || d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::ParamOutOfRange("matrix must be non-empty and rectangular".into()));
        }
        let entries: Vec<f64> = rows.into_iter().flatten().collect();
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(LinearMap {
            scheme: MapScheme::Gaussian,
            seed: 0,
            d,
            d_prime,
            entries,
        })
    }

    pub fn identity(d: usize) -> Self {
        let mut entries = vec![0.0; d * d];
        for i in 0..d {
            entries[i * d + i] = 1.0;
        }
        LinearMap {
            scheme: MapScheme::Identity,
            seed: 0,
            d,
            d_prime: d,
            entries,
        }
    }

    pub fn zero(d: usize, d_prime: usize) -> Self {
        LinearMap {
            scheme: MapScheme::Gaussian,
            seed: 0,
            d,
            d_prime,
            entries: vec![0.0; d * d_prime],
        }
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.d..(i + 1) * self.d]
    }

    pub(crate) fn apply_raw(&self, x: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(self.row(i), x);
        }
    }

    pub fn apply_point(&self, p: &Point) -> Result<Point> {
        if p.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: p.dim(),
            });
        }
        let mut out = vec![0.0; self.d_prime];
        self.apply_raw(p.coords(), &mut out);
        Ok(Point::from_vec(out))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("map serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let map: LinearMap =
            serde_json::from_str(s).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        if map.entries.len() != map.d * map.d_prime {
            return Err(Error::Parse {
                line: 1,
                msg: format!(
                    "{} entries for a {}x{} matrix",
                    map.entries.len(),
                    map.d_prime,
                    map.d
                ),
            });
        }
        Ok(map)
    }
}

/// `⌈(4 + 2β) ln n / (ε²/2 − ε³/3)⌉`.
pub fn target_dimension(eps: f64, n_points: usize, beta: f64) -> Result<usize> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::ParamOutOfRange(format!("eps = {eps} not in (0, 1)")));
    }
    if n_points < 2 {
        return Err(Error::ParamOutOfRange(format!("n_points = {n_points} < 2")));
    }
    if !(beta >= 1.0) || !beta.is_finite() {
        return Err(Error::ParamOutOfRange(format!("beta = {beta} < 1")));
    }
    let denom = eps * eps / 2.0 - eps * eps * eps / 3.0;
    Ok(((4.0 + 2.0 * beta) * (n_points as f64).ln() / denom).ceil() as usize)
}

/// Gaussian map `R^d -> R^d'` with entries `N(0, 1/d')`, determined by `seed`.
pub fn sample_map(d: usize, d_prime: usize, seed: u64) -> LinearMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = 1.0 / (d_prime as f64).sqrt();
    let entries = (0..d * d_prime)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            z * scale
        })
        .collect();
    LinearMap {
        scheme: MapScheme::Gaussian,
        seed,
        d,
        d_prime,
        entries,
    }
}

/// Haar-random rotation of `R^d` from the QR factorization of a Gaussian
/// matrix, with the sign of each column fixed by `R`'s diagonal.
pub fn sample_orthogonal(d: usize, seed: u64) -> LinearMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DMatrix::<f64>::from_fn(d, d, |_, _| StandardNormal.sample(&mut rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    let mut entries = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            entries.push(q[(i, j)]);
        }
    }
    LinearMap {
        scheme: MapScheme::Orthogonal,
        seed,
        d,
        d_prime: d,
        entries,
    }
}

/// Vertex-wise image. No re-normalization: images may contain repeated or
/// collinear vertices.
pub fn apply_map(f: &LinearMap, c: &Curve) -> Result<Curve> {
    let vertices = c
        .vertices()
        .iter()
        .map(|v| f.apply_point(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve::from_vertices_unchecked(c.id(), vertices))
}

/// Drops exact duplicates, keeping first occurrences.
pub fn dedup_points(points: Vec<Point>) -> Vec<Point> {
    let mut seen: HashSet<Vec<u64>> = HashSet::with_capacity(points.len());
    points
        .into_iter()
        .filter(|p| {
            // normalize -0.0 so it collides with 0.0
            let key = p.coords().iter().map(|c| (c + 0.0).to_bits()).collect();
            seen.insert(key)
        })
        .collect()
}

/// The origin, `±u` for every edge direction, and the residual of every
/// vertex against every edge-supporting line.
///
/// For a line through `a` with unit direction `u`, the residual of `x` is
/// `x − (t + ⟨x,u⟩u)` with `t` the projection of the origin onto the line,
/// computed as `(x − a) − ⟨x − a, u⟩u`. Zero-length edges are skipped.
pub fn augmentation_lower(curves: &[Curve]) -> Vec<Point> {
    let Some(first) = curves.first() else {
        return Vec::new();
    };
    let mut lines: Vec<(Point, Point)> = Vec::new();
    for c in curves {
        for e in c.edges() {
            let len = e.length();
            if len == 0.0 {
                continue;
            }
            lines.push((e.a.clone(), e.b.sub(&e.a).scale(1.0 / len)));
        }
    }
    let mut out = vec![Point::origin(first.dim())];
    for (_, u) in &lines {
        out.push(u.clone());
        out.push(u.scale(-1.0));
    }
    for c in curves {
        for x in c.vertices() {
            for (a, u) in &lines {
                let rel = x.sub(a);
                out.push(rel.add_scaled(u, -rel.dot(u)));
            }
        }
    }
    dedup_points(out)
}

/// Witness points for the predicate systems realizing `d_F(a, b)` and
/// `d_wF(a, b)`, each extracted at the distance plus [`WITNESS_SLACK`].
pub fn augmentation_upper(a: &Curve, b: &Curve) -> Result<Vec<Point>> {
    let strong = frechet_distance(a, b)? + WITNESS_SLACK;
    let weak = weak_frechet_distance(a, b)? + WITNESS_SLACK;
    let mut out: Vec<Point> = Vec::new();
    out.extend(extract_realizing_sequence(a, b, strong)?.witness_points().cloned());
    out.extend(
        extract_realizing_weak_sequence(a, b, weak)?
            .witness_points()
            .cloned(),
    );
    Ok(dedup_points(out))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertFailure {
    pub i: usize,
    pub j: usize,
    pub ratio: f64,
}

/// Outcome of an exact all-pairs distortion check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub epsilon: f64,
    pub point_count: usize,
    pub pair_count: u64,
    /// Largest `‖f(p) − f(q)‖ / ‖p − q‖`.
    pub max_expansion: f64,
    /// Smallest `‖f(p) − f(q)‖ / ‖p − q‖`.
    pub max_contraction: f64,
    pub failure_count: u64,
    /// The first failing pairs in `(i, j)` order, at most
    /// [`MAX_REPORTED_FAILURES`].
    pub failures: Vec<CertFailure>,
    pub passed: bool,
}

/// Squared distance with eight independent partial sums so the loop
/// vectorizes; the summation order is fixed, so results are reproducible.
#[inline]
fn dist_sq_lanes(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 8];
    let ca = a.chunks_exact(8);
    let cb = b.chunks_exact(8);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        for k in 0..8 {
            let t = x[k] - y[k];
            acc[k] += t * t;
        }
    }
    let mut tail = 0.0;
    for (x, y) in ra.iter().zip(rb) {
        tail += (x - y) * (x - y);
    }
    ((acc[0] + acc[4]) + (acc[1] + acc[5])) + ((acc[2] + acc[6]) + (acc[3] + acc[7])) + tail
}

struct RowStats {
    pairs: u64,
    max_sq: f64,
    min_sq: f64,
    fails: u64,
    first_fails: Vec<CertFailure>,
}

/// Checks `(1−ε)‖p−q‖ ≤ ‖f(p)−f(q)‖ ≤ (1+ε)‖p−q‖` over all pairs of `pts`,
/// skipping coincident pairs.
pub fn certify_embedding(f: &LinearMap, pts: &[Point], eps: f64) -> Result<CertReport> {
    let n = pts.len();
    let d = f.d;
    let dp = f.d_prime;
    let mut src = Vec::with_capacity(n * d);
    for p in pts {
        if p.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.dim(),
            });
        }
        src.extend_from_slice(p.coords());
    }
    let mut img = vec![0.0; n * dp];
    img.par_chunks_mut(dp)
        .zip(src.par_chunks(d))
        .for_each(|(out, x)| f.apply_raw(x, out));

    let lo_sq = (1.0 - eps) * (1.0 - eps);
    let hi_sq = (1.0 + eps) * (1.0 + eps);
    let rows: Vec<RowStats> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = &src[i * d..(i + 1) * d];
            let yi = &img[i * dp..(i + 1) * dp];
            let mut st = RowStats {
                pairs: 0,
                max_sq: f64::NEG_INFINITY,
                min_sq: f64::INFINITY,
                fails: 0,
                first_fails: Vec::new(),
            };
            for j in i + 1..n {
                let orig = dist_sq_lanes(xi, &src[j * d..(j + 1) * d]);
                if orig == 0.0 {
                    continue;
                }
                let ratio_sq = dist_sq_lanes(yi, &img[j * dp..(j + 1) * dp]) / orig;
                st.pairs += 1;
                st.max_sq = st.max_sq.max(ratio_sq);
                st.min_sq = st.min_sq.min(ratio_sq);
                if !(lo_sq..=hi_sq).contains(&ratio_sq) {
                    st.fails += 1;
                    if st.first_fails.len() < MAX_REPORTED_FAILURES {
                        st.first_fails.push(CertFailure {
                            i,
                            j,
                            ratio: ratio_sq.sqrt(),
                        });
                    }
                }
            }
            st
        })
        .collect();

    let mut report = CertReport {
        epsilon: eps,
        point_count: n,
        pair_count: 0,
        max_expansion: 1.0,
        max_contraction: 1.0,
        failure_count: 0,
        failures: Vec::new(),
        passed: true,
    };
    let mut max_sq = f64::NEG_INFINITY;
    let mut min_sq = f64::INFINITY;
    for st in rows {
        report.pair_count += st.pairs;
        report.failure_count += st.fails;
        max_sq = max_sq.max(st.max_sq);
        min_sq = min_sq.min(st.min_sq);
        for fail in st.first_fails {
            if report.failures.len() < MAX_REPORTED_FAILURES {
                report.failures.push(fail);
            }
        }
    }
    if report.pair_count > 0 {
        report.max_expansion = max_sq.sqrt();
        report.max_contraction = min_sq.sqrt();
    }
    report.passed = report.failure_count == 0;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerProductReport {
    pub epsilon: f64,
    pub pair_count: u64,
    pub violations: u64,
    /// Smallest distance to either bound, in units of `ε‖p‖‖q‖`.
    pub min_margin: f64,
    pub passed: bool,
}

/// Checks `⟨p,q⟩ − 16ε‖p‖‖q‖ ≤ ⟨f(p),f(q)⟩ ≤ ⟨p,q⟩ + 14ε‖p‖‖q‖` for all
/// pairs (including `p = q`), after certifying `f` as a `(1 ± ε)`-embedding of
/// `pts ∪ {0} ∪ {p/‖p‖}`.
pub fn certify_inner_products(f: &LinearMap, pts: &[Point], eps: f64) -> Result<InnerProductReport> {
    let Some(first) = pts.first() else {
        return Err(Error::ParamOutOfRange("no points".into()));
    };
    let mut pre: Vec<Point> = pts.to_vec();
    pre.push(Point::origin(first.dim()));
    for p in pts {
        let n = p.norm();
        if n > 0.0 {
            pre.push(p.scale(1.0 / n));
        }
    }
    let cert = certify_embedding(f, &dedup_points(pre), eps)?;
    if !cert.passed {
        return Err(Error::PreconditionFailed(format!(
            "map is not a (1 ± {eps})-embedding of the point set (ratios {}..{})",
            cert.max_contraction, cert.max_expansion
        )));
    }
    let images: Vec<Point> = pts.iter().map(|p| f.apply_point(p)).collect::<Result<_>>()?;
    let mut report = InnerProductReport {
        epsilon: eps,
        pair_count: 0,
        violations: 0,
        min_margin: f64::INFINITY,
        passed: true,
    };
    for i in 0..pts.len() {
        for j in i..pts.len() {
            let nn = pts[i].norm() * pts[j].norm();
            let ip = pts[i].dot(&pts[j]);
            let fip = images[i].dot(&images[j]);
            report.pair_count += 1;
            if nn == 0.0 {
                continue;
            }
            let tol = 1e-12 * nn;
            let lower = ip - 16.0 * eps * nn;
            let upper = ip + 14.0 * eps * nn;
            if fip < lower - tol || fip > upper + tol {
                report.violations += 1;
            }
            let margin = (fip - lower).min(upper - fip) / (eps * nn);
            report.min_margin = report.min_margin.min(margin);
        }
    }
    report.passed = report.violations == 0;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointLineReport {
    pub epsilon: f64,
    pub checked: usize,
    pub violations: usize,
    /// Smallest `‖f(x) − f(t+λu)‖ / ‖x − (t+λu)‖` over the checked λ.
    pub min_ratio: f64,
    pub holds: bool,
}

/// Checks `‖f(x) − f(t+λu)‖ ≥ (1 − 3ε)‖x − (t+λu)‖` at each λ in `lambdas`
/// plus the projection parameter `⟨x,u⟩` and `⟨x,u⟩ ± ‖x'‖`, where
/// `x' = x − (t + ⟨x,u⟩u)`. Requires `‖u‖ = 1`, `⟨u,t⟩ = 0` and `f` to be a
/// `(1 ± ε/16)`-embedding of `{0, u, −u, x'}`.
pub fn certify_point_line(
    f: &LinearMap,
    x: &Point,
    t: &Point,
    u: &Point,
    eps: f64,
    lambdas: &[f64],
) -> Result<PointLineReport> {
    if (u.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::PreconditionFailed(format!("‖u‖ = {} != 1", u.norm())));
    }
    if u.dot(t).abs() > 1e-9 * t.norm().max(1.0) {
        return Err(Error::PreconditionFailed(format!("⟨u,t⟩ = {} != 0", u.dot(t))));
    }
    let proj = x.dot(u);
    let residual = x.sub(&t.add_scaled(u, proj));
    let four = vec![
        Point::origin(x.dim()),
        u.clone(),
        u.scale(-1.0),
        residual.clone(),
    ];
    let cert = certify_embedding(f, &four, eps / 16.0)?;
    if !cert.passed {
        return Err(Error::PreconditionFailed(format!(
            "map is not a (1 ± {})-embedding of {{0, u, -u, x'}}",
            eps / 16.0
        )));
    }
    let fx = f.apply_point(x)?;
    let ft = f.apply_point(t)?;
    let fu = f.apply_point(u)?;
    let rn = residual.norm();
    let mut report = PointLineReport {
        epsilon: eps,
        checked: 0,
        violations: 0,
        min_ratio: f64::INFINITY,
        holds: true,
    };
    let extra = [proj, proj - rn, proj + rn];
    for &lambda in lambdas.iter().chain(extra.iter()) {
        let orig = x.distance(&t.add_scaled(u, lambda));
        let img = fx.distance(&ft.add_scaled(&fu, lambda));
        report.checked += 1;
        if img < (1.0 - 3.0 * eps) * orig - 1e-12 * (1.0 + orig) {
            report.violations += 1;
        }
        if orig > 0.0 {
            report.min_ratio = report.min_ratio.min(img / orig);
        }
    }
    report.holds = report.violations == 0;
    Ok(report)
}

/// Which augmented point set the certificate covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertifyLevel {
    /// No certificate; the map is used as sampled.
    Off,
    /// Vertices and [`augmentation_lower`]: certifies non-contraction.
    Lower,
    /// Additionally the pairwise [`augmentation_upper`] witnesses:
    /// certifies both directions.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedOptions {
    pub eps: f64,
    pub seed: u64,
    pub beta: f64,
    pub certify: CertifyLevel,
    pub max_retries: usize,
    /// Overrides the computed target dimension.
    pub target_dim: Option<usize>,
}

impl EmbedOptions {
    pub fn new(eps: f64, seed: u64) -> Self {
        EmbedOptions {
            eps,
            seed,
            beta: DEFAULT_BETA,
            certify: CertifyLevel::Lower,
            max_retries: DEFAULT_MAX_RETRIES,
            target_dim: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: LinearMap,
    pub curves: Vec<Curve>,
    pub epsilon: f64,
    pub epsilon_point: f64,
    pub point_count: usize,
    /// Dimension requested by the bound (before capping at `d`).
    pub target_dim: usize,
    /// True when the bound is at least `d` and a rotation was used instead.
    pub no_reduction: bool,
    pub attempts: usize,
    pub report: Option<CertReport>,
}

/// The point set a certificate at `level` must cover.
pub fn certified_point_set(curves: &[Curve], level: CertifyLevel) -> Result<Vec<Point>> {
    let mut pts: Vec<Point> = curves.iter().flat_map(|c| c.vertices().iter().cloned()).collect();
    pts.extend(augmentation_lower(curves));
    if level == CertifyLevel::Full {
        for (i, a) in curves.iter().enumerate() {
            for b in &curves[i + 1..] {
                pts.extend(augmentation_upper(a, b)?);
            }
        }
    }
    Ok(dedup_points(pts))
}

/// Embeds all curves with one linear map whose point-level quality is
/// certified at `ε/48`, resampling with `seed + 1, seed + 2, ...` on failure.
pub fn embed_curve_set(curves: &[Curve], opts: &EmbedOptions) -> Result<Embedding> {
    let eps = opts.eps;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::ParamOutOfRange(format!("eps = {eps} not in (0, 1)")));
    }
    if curves.len() < 2 {
        return Err(Error::ParamOutOfRange(format!(
            "need at least 2 curves, got {}",
            curves.len()
        )));
    }
    let d = curves[0].dim();
    for c in curves {
        if c.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: c.dim(),
            });
        }
    }
    let eps_pt = eps / POINT_BUDGET_DIVISOR;
    let pts = certified_point_set(curves, opts.certify)?;
    let target_dim = match opts.target_dim {
        Some(t) if t >= 1 => t,
        Some(t) => return Err(Error::ParamOutOfRange(format!("target_dim = {t}"))),
        None => target_dimension(eps_pt, pts.len().max(2), opts.beta)?,
    };
    let no_reduction = target_dim >= d;

    let mut attempts = 0;
    let mut last: Option<CertReport> = None;
    for attempt in 0..=opts.max_retries {
        let seed = opts.seed.wrapping_add(attempt as u64);
        let map = if no_reduction {
            sample_orthogonal(d, seed)
        } else {
            sample_map(d, target_dim, seed)
        };
        attempts += 1;
        let report = match opts.certify {
            CertifyLevel::Off => None,
            _ => Some(certify_embedding(&map, &pts, eps_pt)?),
        };
        if report.as_ref().is_none_or(|r| r.passed) {
            let embedded = curves.iter().map(|c| apply_map(&map, c)).collect::<Result<_>>()?;
            return Ok(Embedding {
                map,
                curves: embedded,
                epsilon: eps,
                epsilon_point: eps_pt,
                point_count: pts.len(),
                target_dim,
                no_reduction,
                attempts,
                report,
            });
        }
        last = report;
    }
    let last = last.expect("certification ran");
    Err(Error::RetriesExhausted {
        attempts,
        max_expansion: last.max_expansion,
        max_contraction: last.max_contraction,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairDistortion {
    pub i: usize,
    pub j: usize,
    pub before: f64,
    pub after: f64,
    /// `|after − before| / before`; zero when both vanish.
    pub distortion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionReport {
    pub metric: Metric,
    pub pairs: Vec<PairDistortion>,
    pub max_distortion: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

fn relative_distortion(before: f64, after: f64) -> f64 {
    if before == 0.0 {
        if after == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (after - before).abs() / before
    }
}

/// Pairwise distances before and after embedding, with their relative change.
pub fn frechet_distortion(original: &[Curve], embedded: &[Curve], metric: Metric) -> Result<DistortionReport> {
    if original.len() != embedded.len() {
        return Err(Error::ParamOutOfRange(format!(
            "{} originals vs {} images",
            original.len(),
            embedded.len()
        )));
    }
    let before = crate::frechet::distance_matrix(original, |a, b| metric.distance(a, b))?;
    let after = crate::frechet::distance_matrix(embedded, |a, b| metric.distance(a, b))?;
    Ok(distortion_from_matrices(&before, &after, metric))
}

pub fn distortion_from_matrices(before: &[Vec<f64>], after: &[Vec<f64>], metric: Metric) -> DistortionReport {
    let mut pairs = Vec::new();
    let mut max_distortion: f64 = 0.0;
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    for i in 0..before.len() {
        for j in i + 1..before.len() {
            let (b, a) = (before[i][j], after[i][j]);
            let distortion = relative_distortion(b, a);
            max_distortion = max_distortion.max(distortion);
            if b > 0.0 {
                min_ratio = min_ratio.min(a / b);
                max_ratio = max_ratio.max(a / b);
            }
            pairs.push(PairDistortion {
                i,
                j,
                before: b,
                after: a,
                distortion,
            });
        }
    }
    if !min_ratio.is_finite() {
        min_ratio = 1.0;
        max_ratio = 1.0;
    }
    DistortionReport {
        metric,
        pairs,
        max_distortion,
        min_ratio,
        max_ratio,
    }
}
