//! Curve collections: loading, writing and synthetic generation.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Jsonl,
    Csv,
}

/// Curves with unique ids and a common dimension, sorted by id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub curves: Vec<Curve>,
    pub source_path: String,
    pub dimension: usize,
}

impl Dataset {
    pub fn new(mut curves: Vec<Curve>, source_path: impl Into<String>) -> Result<Self> {
        curves.sort_by(|a, b| a.id().cmp(b.id()));
        let dimension = curves.first().map_or(0, Curve::dim);
        for c in &curves {
            if c.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: c.dim(),
                });
            }
        }
        if let Some(w) = curves.windows(2).find(|w| w[0].id() == w[1].id()) {
            return Err(Error::Parse {
                line: 0,
                msg: format!("duplicate curve id {:?}", w[0].id()),
            });
        }
        Ok(Dataset {
            curves,
            source_path: source_path.into(),
            dimension,
        })
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// Largest vertex count.
    pub fn max_complexity(&self) -> usize {
        self.curves.iter().map(Curve::len).max().unwrap_or(0)
    }

    pub fn to_jsonl(&self) -> String {
        to_jsonl(&self.curves)
    }
}

#[derive(Deserialize)]
struct Record {
    id: String,
    vertices: Vec<Vec<f64>>,
}

fn parse_err(line: usize, msg: impl ToString) -> Error {
    Error::Parse {
        line,
        msg: msg.to_string(),
    }
}

fn build_curve(id: String, rows: Vec<Vec<f64>>, line: usize) -> Result<Curve> {
    let dim = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
        return Err(parse_err(
            line,
            format!("ragged vertices in {id:?}: {} vs {dim} coordinates", bad.len()),
        ));
    }
    let points = rows
        .into_iter()
        .map(Point::new)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| parse_err(line, e))?;
    Curve::new(id, points, false).map_err(|e| parse_err(line, e))
}

/// One `{"id": ..., "vertices": [[...], ...]}` object per non-blank line.
pub fn parse_jsonl(text: &str, source: &str) -> Result<Dataset> {
    let mut curves = Vec::new();
    let mut seen = BTreeSet::new();
    let mut dim = None;
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        if line.trim().is_empty() {
            continue;
        }
        let rec: Record = serde_json::from_str(line).map_err(|e| parse_err(line_no, e))?;
        if !seen.insert(rec.id.clone()) {
            return Err(parse_err(line_no, format!("duplicate curve id {:?}", rec.id)));
        }
        let c = build_curve(rec.id, rec.vertices, line_no)?;
        match dim {
            None => dim = Some(c.dim()),
            Some(d) if d != c.dim() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: c.dim(),
                })
            }
            _ => {}
        }
        curves.push(c);
    }
    Dataset::new(curves, source)
}

/// Header `id,vertex_index,x0,...`, one vertex per row in any order.
pub fn parse_csv(text: &str, source: &str) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| parse_err(1, e))?.clone();
    if header.len() < 3 || &header[0] != "id" || &header[1] != "vertex_index" {
        return Err(parse_err(1, "expected header id,vertex_index,x0,..."));
    }
    let dim = header.len() - 2;
    let mut groups: BTreeMap<String, (usize, BTreeMap<usize, Vec<f64>>)> = BTreeMap::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e)
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let index: usize = rec[1]
            .parse()
            .map_err(|e| parse_err(line, format!("vertex_index {:?}: {e}", &rec[1])))?;
        let coords = (0..dim)
            .map(|c| {
                rec[c + 2]
                    .parse::<f64>()
                    .map_err(|e| parse_err(line, format!("coordinate {:?}: {e}", &rec[c + 2])))
            })
            .collect::<Result<Vec<_>>>()?;
        let entry = groups.entry(rec[0].to_string()).or_insert((line, BTreeMap::new()));
        if entry.1.insert(index, coords).is_some() {
            return Err(parse_err(line, format!("repeated vertex_index {index} for {:?}", &rec[0])));
        }
    }
    let curves = groups
        .into_iter()
        .map(|(id, (line, rows))| build_curve(id, rows.into_values().collect(), line))
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(curves, source)
}

pub fn load_dataset(path: impl AsRef<Path>, format: Format) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let source = path.display().to_string();
    match format {
        Format::Jsonl => parse_jsonl(&text, &source),
        Format::Csv => parse_csv(&text, &source),
    }
}

#[derive(Serialize)]
struct RecordRef<'a> {
    id: &'a str,
    vertices: Vec<&'a [f64]>,
}

pub fn to_jsonl(curves: &[Curve]) -> String {
    let mut out = String::new();
    for c in curves {
        let rec = RecordRef {
            id: c.id(),
            vertices: c.vertices().iter().map(Point::coords).collect(),
        };
        out.push_str(&serde_json::to_string(&rec).expect("curve serializes"));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Zigzag,
    RandomWalk,
    Spike,
    PerturbedCopies,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerateParams {
    pub n: usize,
    pub m: usize,
    pub d: usize,
    /// Group count for `PerturbedCopies`.
    pub k: usize,
    /// Zigzag height, random-walk step length, spike height or perturbation
    /// diameter, depending on the family.
    pub amplitude: f64,
    /// Spread of per-curve offsets, or distance between copy groups.
    pub separation: f64,
}

impl Default for GenerateParams {
    fn default() -> Self {
        GenerateParams {
            n: 10,
            m: 8,
            d: 2,
            k: 2,
            amplitude: 1.0,
            separation: 10.0,
        }
    }
}

fn gaussian_vec(rng: &mut ChaCha8Rng, d: usize, scale: f64) -> Vec<f64> {
    (0..d)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            z * scale
        })
        .collect()
}

fn uniform_vec(rng: &mut ChaCha8Rng, d: usize, half_width: f64) -> Vec<f64> {
    (0..d).map(|_| rng.random_range(-1.0..=1.0) * half_width).collect()
}

fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn random_walk(rng: &mut ChaCha8Rng, m: usize, d: usize, step: f64, start: Vec<f64>) -> Vec<Vec<f64>> {
    let mut pts = vec![start];
    while pts.len() < m {
        let s = gaussian_vec(rng, d, step / (d as f64).sqrt());
        pts.push(add(pts.last().expect("non-empty"), &s));
    }
    pts
}

/// Deterministic synthetic curves with ids `c0000`, `c0001`, ...
///
/// `PerturbedCopies` builds `k` random-walk base curves whose offsets along
/// the first axis are `separation` apart and assigns curve `i` to group
/// `i mod k`, moving each vertex by at most `amplitude / 2`; curves in one
/// group are therefore within Fréchet distance `amplitude` of each other.
pub fn generate(family: Family, params: &GenerateParams, seed: u64) -> Result<Dataset> {
    let GenerateParams {
        n,
        m,
        d,
        k,
        amplitude,
        separation,
    } = *params;
    if n == 0 {
        return Err(Error::ParamOutOfRange("n = 0".into()));
    }
    if d == 0 {
        return Err(Error::ParamOutOfRange("d = 0".into()));
    }
    let min_m = if family == Family::Spike { 3 } else { 2 };
    if m < min_m {
        return Err(Error::ParamOutOfRange(format!("m = {m} < {min_m}")));
    }
    if family == Family::Spike && d < 2 {
        return Err(Error::ParamOutOfRange("spike curves need d >= 2".into()));
    }
    if family == Family::PerturbedCopies && (k == 0 || k > n) {
        return Err(Error::ParamOutOfRange(format!("k = {k} with n = {n}")));
    }
    if !(amplitude.is_finite() && amplitude > 0.0) || !(separation.is_finite() && separation >= 0.0) {
        return Err(Error::ParamOutOfRange(format!(
            "amplitude = {amplitude}, separation = {separation}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<Vec<Vec<f64>>> = if family == Family::PerturbedCopies {
        (0..k)
            .map(|g| {
                let mut start = vec![0.0; d];
                start[0] = g as f64 * separation;
                random_walk(&mut rng, m, d, 1.0, start)
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut curves = Vec::with_capacity(n);
    for i in 0..n {
        let offset = uniform_vec(&mut rng, d, separation / 2.0);
        let rows: Vec<Vec<f64>> = match family {
            Family::Zigzag => (0..m)
                .map(|v| {
                    let mut p = vec![0.0; d];
                    p[0] = v as f64;
                    if d > 1 {
                        p[1] = if v % 2 == 0 { 0.0 } else { amplitude };
                    }
                    add(&p, &offset)
                })
                .collect(),
            Family::RandomWalk => random_walk(&mut rng, m, d, amplitude, offset),
            Family::Spike => {
                let h = amplitude * rng.random_range(0.5..=1.5);
                let peak = rng.random_range(1..m - 1);
                (0..m)
                    .map(|v| {
                        let mut p = vec![0.0; d];
                        p[0] = 2.0 * v as f64;
                        if v == peak {
                            p[1] = h;
                        }
                        add(&p, &offset)
                    })
                    .collect()
            }
            Family::PerturbedCopies => {
                let radius = amplitude / 2.0 / (d as f64).sqrt();
                bases[i % k]
                    .iter()
                    .map(|b| add(b, &uniform_vec(&mut rng, d, radius)))
                    .collect()
            }
        };
        let points = rows.into_iter().map(Point::new).collect::<Result<Vec<_>>>()?;
        curves.push(Curve::new(format!("c{i:04}"), points, false)?);
    }
    Dataset::new(curves, format!("generated:{family:?}:{seed}"))
}
