//! Scalar-valued forms, used for the canonical lifts and their triple wedges.

use num_complex::Complex64;
use std::ops::{Add, Mul};

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarForm1 {
    pub dz: C,
    pub dw: C,
    pub dtau: C,
}

/// Basis (dz∧dw, dz∧dτ, dw∧dτ).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarForm2 {
    pub dzdw: C,
    pub dzdtau: C,
    pub dwdtau: C,
}

impl ScalarForm1 {
    pub fn new(dz: C, dw: C, dtau: C) -> Self {
        Self { dz, dw, dtau }
    }

    pub fn wedge(&self, g: &Self) -> ScalarForm2 {
        ScalarForm2 {
            dzdw: self.dz * g.dw - self.dw * g.dz,
            dzdtau: self.dz * g.dtau - self.dtau * g.dz,
            dwdtau: self.dw * g.dtau - self.dtau * g.dw,
        }
    }

    /// Coefficient of dz∧dw∧dτ in self ∧ g ∧ h.
    pub fn triple(&self, g: &Self, h: &Self) -> C {
        self.wedge(g).wedge1(h)
    }
}

impl ScalarForm2 {
    /// Coefficient of dz∧dw∧dτ in self ∧ h.
    pub fn wedge1(&self, h: &ScalarForm1) -> C {
        self.dzdw * h.dtau - self.dzdtau * h.dw + self.dwdtau * h.dz
    }
}

impl Add for ScalarForm1 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.dz + o.dz, self.dw + o.dw, self.dtau + o.dtau)
    }
}

impl Mul<C> for ScalarForm1 {
    type Output = Self;
    fn mul(self, c: C) -> Self {
        Self::new(self.dz * c, self.dw * c, self.dtau * c)
    }
}
