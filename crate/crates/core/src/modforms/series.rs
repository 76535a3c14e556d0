//! Truncated Laurent jets in one variable and power series in two.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

type C = Complex64;

/// Σ_{k=order_min}^{order_max} c_k x^k.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentJet {
    pub order_min: i32,
    pub coeffs: Vec<C>,
}

impl LaurentJet {
    pub fn new(order_min: i32, coeffs: Vec<C>) -> Self {
        Self { order_min, coeffs }
    }

    pub fn zero(order_min: i32, order_max: i32) -> Self {
        let n = (order_max - order_min + 1).max(0) as usize;
        Self { order_min, coeffs: vec![C::zero(); n] }
    }

    pub fn monomial(k: i32, c: C, order_max: i32) -> Self {
        let mut j = Self::zero(k, order_max.max(k));
        j.coeffs[0] = c;
        j
    }

    /// e^{c x} up to x^order_max.
    pub fn exp_linear(c: C, order_max: i32) -> Self {
        let mut out = Vec::with_capacity(order_max.max(0) as usize + 1);
        let mut t = C::new(1.0, 0.0);
        for k in 0..=order_max.max(0) {
            out.push(t);
            t = t * c / (k as f64 + 1.0);
        }
        Self::new(0, out)
    }

    pub fn order_max(&self) -> i32 {
        self.order_min + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, k: i32) -> C {
        let i = k - self.order_min;
        if i < 0 {
            return C::zero();
        }
        self.coeffs.get(i as usize).copied().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order_max: i32) -> Self {
        let n = (order_max - self.order_min + 1).max(0) as usize;
        Self::new(self.order_min, self.coeffs.iter().take(n).copied().collect())
    }

    pub fn scale(&self, c: C) -> Self {
        Self::new(self.order_min, self.coeffs.iter().map(|v| v * c).collect())
    }

    /// Multiplies by x^s.
    pub fn shift(&self, s: i32) -> Self {
        Self::new(self.order_min + s, self.coeffs.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.order_min.min(other.order_min);
        let hi = self.order_max().min(other.order_max());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(lo, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C::new(-1.0, 0.0)))
    }

    /// Product, valid through the smaller of the two precision limits.
    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.order_min + other.order_min;
        let hi = (self.order_max() + other.order_min).min(other.order_max() + self.order_min);
        let mut out = Self::zero(lo, hi);
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                if let Some(slot) = out.coeffs.get_mut(i + j) {
                    *slot += a * b;
                }
            }
        }
        out
    }

    /// 1/f with the same relative precision; the leading coefficient must be nonzero.
    pub fn recip(&self) -> Self {
        let c0 = self.coeffs[0];
        let n = self.coeffs.len();
        let mut out = vec![C::zero(); n];
        out[0] = c0.inv();
        for k in 1..n {
            let mut s = C::zero();
            for j in 1..=k {
                s += self.coeffs[j] * out[k - j];
            }
            out[k] = -s / c0;
        }
        Self::new(-self.order_min, out)
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// d/dx.
    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, c)| c * (self.order_min + i as i32) as f64).collect();
        let mut out = Self::new(self.order_min - 1, coeffs);
        if out.order_min == -1 && self.order_min == 0 {
            // the constant term differentiates to zero; drop the placeholder
            out = Self::new(0, out.coeffs.into_iter().skip(1).collect());
        }
        out
    }

    /// f(-x).
    pub fn reflect(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.order_min + i as i32).rem_euclid(2) == 1 { -c } else { *c })
            .collect();
        Self::new(self.order_min, coeffs)
    }

    /// Drops the negative-power part.
    pub fn regular_part(&self) -> Self {
        if self.order_min >= 0 {
            return self.clone();
        }
        let skip = (-self.order_min) as usize;
        Self::new(0, self.coeffs.iter().skip(skip).copied().collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        let lo = self.order_min.min(other.order_min);
        let hi = self.order_max().min(other.order_max());
        (lo..=hi).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, x: C) -> C {
        let mut acc = C::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * x.powi(self.order_min)
    }
}

/// Σ c_{ij} x^i y^j with i + j ≤ degree.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries {
    degree: usize,
    coeffs: Vec<Vec<C>>,
}

impl BiSeries {
    pub fn zero(degree: usize) -> Self {
        Self { degree, coeffs: (0..=degree).map(|i| vec![C::zero(); degree + 1 - i]).collect() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, i: usize, j: usize) -> C {
        if i + j > self.degree {
            return C::zero();
        }
        self.coeffs[i][j]
    }

    pub fn add_coeff(&mut self, i: usize, j: usize, c: C) {
        if i + j <= self.degree {
            self.coeffs[i][j] += c;
        }
    }

    /// Power series f (order_min ≥ 0) in x.
    pub fn in_x(f: &LaurentJet, degree: usize) -> Self {
        let mut out = Self::zero(degree);
        for i in 0..=degree {
            out.add_coeff(i, 0, f.coeff(i as i32));
        }
        out
    }

    pub fn in_y(f: &LaurentJet, degree: usize) -> Self {
        let mut out = Self::zero(degree);
        for j in 0..=degree {
            out.add_coeff(0, j, f.coeff(j as i32));
        }
        out
    }

    /// f(x + y).
    pub fn in_sum(f: &LaurentJet, degree: usize) -> Self {
        let mut out = Self::zero(degree);
        for k in 0..=degree {
            let c = f.coeff(k as i32);
            let mut binom = 1.0;
            for i in 0..=k {
                out.add_coeff(i, k - i, c * binom);
                binom = binom * (k - i) as f64 / (i + 1) as f64;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.degree.min(other.degree);
        let mut out = Self::zero(d);
        for i1 in 0..=d {
            for j1 in 0..=d - i1 {
                let a = self.coeffs[i1][j1];
                if a == C::zero() {
                    continue;
                }
                for i2 in 0..=d - i1 - j1 {
                    for j2 in 0..=d - i1 - j1 - i2 {
                        out.coeffs[i1 + i2][j1 + j2] += a * other.coeffs[i2][j2];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.degree.min(other.degree);
        let mut out = Self::zero(d);
        for i in 0..=d {
            for j in 0..=d - i {
                out.coeffs[i][j] = self.coeffs[i][j] + other.coeffs[i][j];
            }
        }
        out
    }

    pub fn scale(&self, c: C) -> Self {
        let mut out = self.clone();
        for row in &mut out.coeffs {
            for v in row {
                *v *= c;
            }
        }
        out
    }

    /// Multiplies by x^a y^b, dropping what falls past the degree.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        let mut out = Self::zero(self.degree);
        for i in 0..=self.degree {
            for j in 0..=self.degree - i {
                out.add_coeff(i + a, j + b, self.coeffs[i][j]);
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().flatten().map(|c| c.norm()).fold(0.0, f64::max)
    }
}
