use num_complex::Complex64;
use std::sync::Arc;

use crate::error::Result;
use crate::ncalg::{Alphabet, NCElement};

pub type CElem = NCElement<Complex64>;

/// Coefficients of a 1-form in the basis (dz, dw, dτ) at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct Form1Value {
    pub dz: CElem,
    pub dw: CElem,
    pub dtau: CElem,
}

/// Coefficients of a 2-form in the fixed basis (dz∧dw, dz∧dτ, dw∧dτ).
#[derive(Clone, Debug, PartialEq)]
pub struct Form2Value {
    pub dzdw: CElem,
    pub dzdtau: CElem,
    pub dwdtau: CElem,
}

impl Form1Value {
    pub fn zero(alphabet: &Arc<Alphabet>, max_len: usize) -> Self {
        let z = CElem::zero(alphabet, max_len);
        Self { dz: z.clone(), dw: z.clone(), dtau: z }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            dz: self.dz.checked_add(&other.dz)?,
            dw: self.dw.checked_add(&other.dw)?,
            dtau: self.dtau.checked_add(&other.dtau)?,
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { dz: self.dz.scale(&c), dw: self.dw.scale(&c), dtau: self.dtau.scale(&c) }
    }

    /// f ∧ g; the only place where the 2-form basis signs are fixed.
    pub fn wedge(&self, g: &Self) -> Result<Form2Value> {
        let m = |x: &CElem, y: &CElem| x.checked_mul(y);
        Ok(Form2Value {
            dzdw: m(&self.dz, &g.dw)?.checked_add(&-m(&self.dw, &g.dz)?)?,
            dzdtau: m(&self.dz, &g.dtau)?.checked_add(&-m(&self.dtau, &g.dz)?)?,
            dwdtau: m(&self.dw, &g.dtau)?.checked_add(&-m(&self.dtau, &g.dw)?)?,
        })
    }

    pub fn max_norm(&self) -> f64 {
        self.dz.max_norm().max(self.dw.max_norm()).max(self.dtau.max_norm())
    }
}

impl Form2Value {
    pub fn zero(alphabet: &Arc<Alphabet>, max_len: usize) -> Self {
        let z = CElem::zero(alphabet, max_len);
        Self { dzdw: z.clone(), dzdtau: z.clone(), dwdtau: z }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            dzdw: self.dzdw.checked_add(&other.dzdw)?,
            dzdtau: self.dzdtau.checked_add(&other.dzdtau)?,
            dwdtau: self.dwdtau.checked_add(&other.dwdtau)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { dzdw: self.dzdw.scale(&c), dzdtau: self.dzdtau.scale(&c), dwdtau: self.dwdtau.scale(&c) }
    }

    pub fn max_norm(&self) -> f64 {
        self.dzdw.max_norm().max(self.dzdtau.max_norm()).max(self.dwdtau.max_norm())
    }
}

/// Value of a 1-form together with the partial derivatives of its coefficients.
#[derive(Clone, Debug)]
pub struct Form1Jet {
    pub value: Form1Value,
    pub d_z: Form1Value,
    pub d_w: Form1Value,
    pub d_tau: Form1Value,
}

impl Form1Jet {
    /// d of the form from the coefficient partials.
    pub fn exterior(&self) -> Result<Form2Value> {
        Ok(Form2Value {
            dzdw: self.d_z.dw.checked_add(&-&self.d_w.dz)?,
            dzdtau: self.d_z.dtau.checked_add(&-&self.d_tau.dz)?,
            dwdtau: self.d_w.dtau.checked_add(&-&self.d_tau.dw)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{GEN_A, GEN_B};

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn wedge_basis_bookkeeping() {
        let al = Alphabet::new(1).unwrap();
        let a = CElem::gen(&al, 3, GEN_A);
        let b = CElem::gen(&al, 3, GEN_B);
        let mut f = Form1Value::zero(&al, 3);
        f.dz = a.clone();
        let mut g = Form1Value::zero(&al, 3);
        g.dw = b.clone();
        let fg = f.wedge(&g).unwrap();
        assert_eq!(fg.dzdw, &a * &b);
        assert!(fg.dzdtau.is_zero() && fg.dwdtau.is_zero());
        let mut h = Form1Value::zero(&al, 3);
        h.dz = b.clone();
        assert!(f.wedge(&h).unwrap().max_norm() == 0.0);
        // (dw⊗a + dz⊗b)∧itself = dz∧dw⊗(ba − ab)
        let mut s = Form1Value::zero(&al, 3);
        s.dw = a.clone();
        s.dz = b.clone();
        let ss = s.wedge(&s).unwrap();
        assert_eq!(ss.dzdw, &(&b * &a) - &(&a * &b));
        assert!(ss.dzdw.coeff(&[GEN_B, GEN_A]) == one());
    }
}
