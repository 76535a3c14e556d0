//! JSON verification reports.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::modforms::ModularPoint;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub z: [f64; 2],
    pub w: [f64; 2],
    pub tau: [f64; 2],
    pub residual: f64,
    pub flags: Vec<String>,
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

impl PointRecord {
    pub fn new(p: &ModularPoint, residual: f64, flags: Vec<String>) -> Self {
        Self { z: pair(p.z), w: pair(p.w), tau: pair(p.tau), residual, flags }
    }
}

/// {check, level, L, q_terms, seed, points, max_residual, pass}
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub level: u32,
    #[serde(rename = "L")]
    pub len: usize,
    pub q_terms: usize,
    pub seed: u64,
    pub points: Vec<PointRecord>,
    pub max_residual: f64,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl VerificationReport {
    /// Passes when every residual is finite and below `threshold` (or above it, for negative controls).
    pub fn from_points(
        check: &str,
        level: u32,
        len: usize,
        q_terms: usize,
        seed: u64,
        points: Vec<PointRecord>,
        threshold: f64,
        expect_failure: bool,
    ) -> Self {
        let max_residual = points.iter().map(|p| p.residual).fold(0.0, f64::max);
        let finite = points.iter().all(|p| p.residual.is_finite());
        let pass = if expect_failure {
            finite && points.iter().all(|p| p.residual > threshold)
        } else {
            finite && max_residual < threshold
        };
        Self { check: check.into(), level, len, q_terms, seed, points, max_residual, threshold, pass, note: None }
    }

    /// A report for an exact (pointless) check.
    pub fn exact(check: &str, level: u32, len: usize, seed: u64, defect: f64, note: Option<String>) -> Self {
        Self {
            check: check.into(),
            level,
            len,
            q_terms: 0,
            seed,
            points: Vec::new(),
            max_residual: defect,
            threshold: 0.0,
            pass: defect == 0.0,
            note,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
