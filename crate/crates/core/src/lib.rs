//! Random linear embeddings of polygonal curves that preserve Fréchet
//! distances, with vertex-restricted simplification and `(k, ℓ)` clustering
//! built on top.
//!
//! ```
//! use frechet_embed::{frechet_distance, Curve, Point};
//!
//! let a = Curve::new("a", vec![Point::new(vec![0.0, 0.0])?, Point::new(vec![1.0, 0.0])?], false)?;
//! let b = Curve::new("b", vec![Point::new(vec![0.0, 1.0])?, Point::new(vec![1.0, 1.0])?], false)?;
//! assert_eq!(frechet_distance(&a, &b)?, 1.0);
//! # Ok::<(), frechet_embed::Error>(())
//! ```

pub mod cluster;
pub mod curve;
pub mod dataset;
pub mod error;
pub mod frechet;
pub mod jl;
pub mod oracle;
pub mod simplify;

pub use cluster::{
    clustering_cost, kl_center, kl_median, kl_median_cost, median_sandwich_check, ClusteringResult,
    MedianMode, Objective, SandwichReport,
};
pub use curve::{
    ball_segment_intersection, make_curve, point_on_segment, point_segment_distance, Curve, Interval,
    Point, Segment,
};
pub use dataset::{generate, load_dataset, Dataset, Family, Format, GenerateParams};
pub use error::{Error, Result};
pub use frechet::{
    critical_values, decide_frechet, decide_weak_frechet, discrete_frechet, frechet_distance,
    weak_frechet_distance, Metric, PredicateId, ValidSequence,
};
pub use jl::{
    apply_map, certify_embedding, embed_curve_set, sample_map, target_dimension, CertReport,
    CertifyLevel, EmbedOptions, Embedding, LinearMap,
};
pub use simplify::{simplify_curve, Simplification};
