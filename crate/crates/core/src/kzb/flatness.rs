//! Curvature dω̃ + ω̃∧ω̃ + Φ(ω̃) of the lifted connection.

use num_complex::Complex64;

use super::connection::KZBConnection;
use super::points::PUNCTURE_RADIUS;
use crate::error::Result;
use crate::forms::{ext_deriv, DerivScheme, Form2Value};
use crate::modforms::{ModularPoint, TWO_PI_I};
use crate::report::PointRecord;

/// Evaluates the curvature; Φ contributes (1/2πi)·D(coefficient) to the dz∧dτ and dw∧dτ slots.
pub fn curvature(conn: &KZBConnection, p: &ModularPoint, include_phi: bool, scheme: DerivScheme) -> Result<Form2Value> {
    let form = conn.omega_tilde();
    let (d, _) = ext_deriv(form, p, scheme)?;
    let v = form.eval(p)?;
    let mut out = d.add(&v.wedge(&v)?)?;
    if include_phi {
        let der = conn.phi(p.tau)?;
        let s: Complex64 = TWO_PI_I.inv();
        out.dzdtau.add_scaled(&der.apply(&v.dz)?, &s);
        out.dwdtau.add_scaled(&der.apply(&v.dw)?, &s);
    }
    Ok(out)
}

fn flags_for(conn: &KZBConnection, p: &ModularPoint) -> Vec<String> {
    let dist = conn.puncture_distance(p);
    if dist < PUNCTURE_RADIUS {
        vec![format!("near-puncture:{dist:.3e}")]
    } else {
        Vec::new()
    }
}

/// Max-modulus norm of the curvature at p.
pub fn flatness_residual(conn: &KZBConnection, p: &ModularPoint) -> Result<PointRecord> {
    let r = curvature(conn, p, true, DerivScheme::ClosedForm)?.max_norm();
    Ok(PointRecord::new(p, r, flags_for(conn, p)))
}

/// Curvature without Φ (negative control).
pub fn flatness_residual_without_phi(conn: &KZBConnection, p: &ModularPoint) -> Result<PointRecord> {
    let r = curvature(conn, p, false, DerivScheme::ClosedForm)?.max_norm();
    Ok(PointRecord::new(p, r, flags_for(conn, p)))
}
