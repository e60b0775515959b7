//! File formats: orbit and quotient-curve CSV, orbit JSON documents, SVG
//! scenes and run manifests.

mod csv_io;
mod manifest;
pub mod svg;

pub use csv_io::{
    read_orbit_csv, read_quotient_csv, write_orbit_csv, write_quotient_csv, QuotientRow,
    ORBIT_COLUMNS, QUOTIENT_COLUMNS,
};
pub use manifest::RunManifest;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orbit::{OrbitSet, RandomWalkConfig};
use crate::NormalizedTriangle;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("no data rows")]
    Empty,
    #[error("row {row}: {message}")]
    BadRow { row: usize, message: String },
}

/// JSON form of a simulated orbit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitDocument {
    pub seed: u64,
    pub walkers: u64,
    pub steps: u64,
    pub root: [f64; 2],
    pub points: Vec<[f64; 2]>,
}

impl OrbitDocument {
    pub fn new(root: NormalizedTriangle, cfg: &RandomWalkConfig, orbit: &OrbitSet) -> Self {
        Self {
            seed: cfg.seed,
            walkers: cfg.walkers,
            steps: cfg.steps,
            root: root.into(),
            points: orbit.iter().map(Into::into).collect(),
        }
    }
}
