//! Path specification: line and arc segments in the z-plane at fixed τ, with a rule for w.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kzb::puncture_distance;
use crate::modforms::{check_tau, TWO_PI_I};

type C = Complex64;

fn c(v: [f64; 2]) -> C {
    C::new(v[0], v[1])
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WRule {
    /// w fixed along the path.
    #[default]
    Constant,
    /// w = w_0 + 2πi (Im z − Im z_start)/Im τ, following the lattice identification.
    Lattice,
    /// w = 2πi Im z / Im τ.
    BrownLevin,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Segment {
    Line { from: [f64; 2], to: [f64; 2] },
    Arc { center: [f64; 2], radius: f64, from_angle: f64, to_angle: f64 },
}

impl Segment {
    pub fn line(from: C, to: C) -> Self {
        Segment::Line { from: [from.re, from.im], to: [to.re, to.im] }
    }

    pub fn arc(center: C, radius: f64, from_angle: f64, to_angle: f64) -> Self {
        Segment::Arc { center: [center.re, center.im], radius, from_angle, to_angle }
    }

    /// Point at parameter t ∈ [0, 1].
    pub fn point(&self, t: f64) -> C {
        match self {
            Segment::Line { from, to } => c(*from) + (c(*to) - c(*from)) * t,
            Segment::Arc { center, radius, from_angle, to_angle } => {
                let th = from_angle + (to_angle - from_angle) * t;
                c(*center) + C::from_polar(*radius, th)
            }
        }
    }

    /// dz/dt.
    pub fn velocity(&self, t: f64) -> C {
        match self {
            Segment::Line { from, to } => c(*to) - c(*from),
            Segment::Arc { radius, from_angle, to_angle, .. } => {
                let th = from_angle + (to_angle - from_angle) * t;
                C::i() * C::from_polar(*radius, th) * (to_angle - from_angle)
            }
        }
    }

    pub fn reversed(&self) -> Self {
        match self {
            Segment::Line { from, to } => Segment::Line { from: *to, to: *from },
            Segment::Arc { center, radius, from_angle, to_angle } => {
                Segment::Arc { center: *center, radius: *radius, from_angle: *to_angle, to_angle: *from_angle }
            }
        }
    }

    fn length(&self) -> f64 {
        match self {
            Segment::Line { from, to } => (c(*to) - c(*from)).norm(),
            Segment::Arc { radius, from_angle, to_angle, .. } => radius * (to_angle - from_angle).abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub tau: [f64; 2],
    /// w at the start (constant and lattice rules).
    #[serde(default)]
    pub w: [f64; 2],
    #[serde(default)]
    pub w_rule: WRule,
    pub segments: Vec<Segment>,
    /// Requested puncture clearance; never below the minimum 0.05·min(1, Im τ).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clearance: Option<f64>,
}

impl PathSpec {
    pub fn new(tau: C, w: C, segments: Vec<Segment>) -> Self {
        Self { tau: [tau.re, tau.im], w: [w.re, w.im], w_rule: WRule::Constant, segments, clearance: None }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn tau(&self) -> C {
        c(self.tau)
    }

    pub fn start(&self) -> Option<C> {
        self.segments.first().map(|s| s.point(0.0))
    }

    pub fn end(&self) -> Option<C> {
        self.segments.last().map(|s| s.point(1.0))
    }

    pub fn is_closed(&self) -> bool {
        match (self.start(), self.end()) {
            (Some(a), Some(b)) => (a - b).norm() < 1e-12,
            _ => true,
        }
    }

    pub fn min_clearance(&self) -> f64 {
        let floor = 0.05 * self.tau[1].min(1.0);
        self.clearance.map_or(floor, |c| c.max(floor))
    }

    /// w and dw/dt at a point with velocity dz/dt.
    pub fn w_at(&self, z: C, dz: C) -> (C, C) {
        let im_tau = self.tau[1];
        match self.w_rule {
            WRule::Constant => (c(self.w), C::new(0.0, 0.0)),
            WRule::Lattice => {
                let z0 = self.start().unwrap_or(z);
                (c(self.w) + TWO_PI_I * ((z.im - z0.im) / im_tau), TWO_PI_I * (dz.im / im_tau))
            }
            WRule::BrownLevin => (TWO_PI_I * (z.im / im_tau), TWO_PI_I * (dz.im / im_tau)),
        }
    }

    /// Checks τ, continuity, and the puncture clearance by dense sampling.
    pub fn validate(&self, level: u32) -> Result<()> {
        check_tau(self.tau())?;
        for pair in self.segments.windows(2) {
            let gap = (pair[0].point(1.0) - pair[1].point(0.0)).norm();
            if gap > 1e-12 {
                return Err(Error::Invalid(format!("segments are not contiguous (gap {gap:.3e})")));
            }
        }
        let need = self.min_clearance();
        let mut worst = f64::INFINITY;
        for s in &self.segments {
            let samples = ((s.length() / (0.1 * need)).ceil() as usize).clamp(16, 100_000);
            for k in 0..=samples {
                worst = worst.min(puncture_distance(s.point(k as f64 / samples as f64), self.tau(), level));
            }
        }
        if worst < need {
            return Err(Error::Clearance(worst, need));
        }
        Ok(())
    }

    /// The same path run backwards. Only meaningful for w rules that depend on z alone
    /// or on a constant w; the lattice rule is re-anchored at the new start.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.segments = self.segments.iter().rev().map(Segment::reversed).collect();
        if self.w_rule == WRule::Lattice {
            if let Some(z1) = self.end() {
                let (w1, _) = self.w_at(z1, C::new(0.0, 0.0));
                out.w = [w1.re, w1.im];
            }
        }
        out
    }

    /// `self` followed by `next` (same τ and w rule).
    pub fn then(&self, next: &PathSpec) -> Self {
        let mut out = self.clone();
        out.segments.extend(next.segments.iter().cloned());
        out
    }

    /// Counterclockwise circle of the given radius around `center`, starting at angle 0.
    pub fn circle(tau: C, w: C, center: C, radius: f64) -> Self {
        Self::new(tau, w, vec![Segment::arc(center, radius, 0.0, 2.0 * PI)])
    }

    /// Polygon through the given vertices.
    pub fn polyline(tau: C, w: C, vertices: &[C]) -> Self {
        Self::new(tau, w, vertices.windows(2).map(|p| Segment::line(p[0], p[1])).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_dsl() {
        let s = r#"{"tau":[0.1,1.2],"w_rule":"brown-levin","segments":[
            {"type":"line","from":[0.3,0.2],"to":[0.4,0.5]},
            {"type":"arc","center":[0.4,0.3],"radius":0.2,"from_angle":1.5707963267948966,"to_angle":3.0}]}"#;
        let p = PathSpec::from_json(s).unwrap();
        assert_eq!(p.w_rule, WRule::BrownLevin);
        assert_eq!(p.segments.len(), 2);
        assert!(p.validate(1).is_ok());
    }

    #[test]
    fn clearance_is_enforced() {
        let p = PathSpec::polyline(C::new(0.0, 1.0), C::new(0.0, 0.0), &[C::new(-0.5, 0.01), C::new(0.5, 0.01)]);
        assert!(matches!(p.validate(1), Err(Error::Clearance(..))));
        let q = PathSpec::polyline(C::new(0.0, 1.0), C::new(0.0, 0.0), &[C::new(-0.5, 0.3), C::new(0.5, 0.3)]);
        assert!(q.validate(1).is_ok());
        assert!(q.validate(2).is_ok());
    }

    #[test]
    fn arc_velocity_is_derivative() {
        let s = Segment::arc(C::new(0.1, 0.2), 0.3, 0.4, 2.0);
        let h = 1e-6;
        let fd = (s.point(0.5 + h) - s.point(0.5 - h)) / (2.0 * h);
        assert!((fd - s.velocity(0.5)).norm() < 1e-8);
    }
}
