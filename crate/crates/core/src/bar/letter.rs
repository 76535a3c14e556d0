//! Basis monomials of the model algebras.
//!
//! Fibre forms 𝒜: ν, ω^(0), ω^(n)_P in degree 1 and ν∧(ω) in degree 2, with ω∧ω = 0.
//! Total forms 𝒞 add T := dτ/2πi; there the lifted Kronecker forms multiply to
//! T∧(Σ A_{m,Q}-weighted letters), see [`kronecker_product`].

use std::fmt;
use std::sync::Arc;

use num_integer::binomial;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ncalg::{Coeff, SymPoly};
use crate::torsion::{torsion_points, TorsionPoint};

/// ω^(n)_P; n = 0 is ω^(0), whose point index is normalised to 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Kron {
    pub point: u16,
    pub n: u16,
}

impl Kron {
    pub const OMEGA0: Kron = Kron { point: 0, n: 0 };

    pub fn new(point: u16, n: u16) -> Self {
        if n == 0 {
            Self::OMEGA0
        } else {
            Self { point, n }
        }
    }

    /// ω^(n−1)_P (ω^(0) for n = 1); `None` for ω^(0).
    pub fn lower(&self) -> Option<Kron> {
        (self.n > 0).then(|| Kron::new(self.point, self.n - 1))
    }
}

/// T^t ∧ ν^nu ∧ x in this factor order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub t: bool,
    pub nu: bool,
    pub x: Option<Kron>,
}

impl Mono {
    pub const NU: Mono = Mono { t: false, nu: true, x: None };
    pub const T: Mono = Mono { t: true, nu: false, x: None };

    pub fn kron(k: Kron) -> Self {
        Self { t: false, nu: false, x: Some(k) }
    }

    pub fn omega0() -> Self {
        Self::kron(Kron::OMEGA0)
    }

    pub fn degree(&self) -> usize {
        self.t as usize + self.nu as usize + self.x.is_some() as usize
    }

    /// (−1)^degree, the involution J.
    pub fn j_sign(&self) -> i64 {
        if self.degree().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn without_t(&self) -> Self {
        Self { t: false, ..*self }
    }

    /// Weight: ν counts 1, ω^(n) counts n, T counts 0.
    pub fn weight(&self) -> usize {
        self.nu as usize + self.x.map_or(0, |k| k.n as usize)
    }

    fn factors(&self) -> Vec<Factor> {
        let mut v = Vec::with_capacity(3);
        if self.t {
            v.push(Factor::T);
        }
        if self.nu {
            v.push(Factor::Nu);
        }
        if let Some(k) = self.x {
            v.push(Factor::X(k));
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    T,
    Nu,
    X(Kron),
}

impl Factor {
    fn rank(&self) -> u8 {
        match self {
            Factor::T => 0,
            Factor::Nu => 1,
            Factor::X(_) => 2,
        }
    }
}

/// Model presentation at level N, with ω^(n)_P for n ≤ n_max admitted in bar words.
#[derive(Debug, PartialEq, Eq)]
pub struct Presentation {
    level: u32,
    n_max: u16,
    points: Vec<TorsionPoint>,
}

impl Presentation {
    pub fn new(level: u32, n_max: u16) -> Result<Arc<Self>> {
        if level == 0 {
            return Err(Error::Invalid("level must be positive".into()));
        }
        Ok(Arc::new(Self { level, n_max, points: torsion_points(level) }))
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn n_max(&self) -> u16 {
        self.n_max
    }

    /// Γ_N, origin first.
    pub fn points(&self) -> &[TorsionPoint] {
        &self.points
    }

    pub fn point_index(&self, p: &TorsionPoint) -> Result<u16> {
        self.points
            .iter()
            .position(|q| q == p)
            .map(|i| i as u16)
            .ok_or_else(|| Error::NotTorsion(p.to_string(), self.level))
    }

    /// Degree-1 letters of 𝒜 with n ≤ n_max: ν, ω^(0), then ω^(n)_P by n, then P.
    pub fn letters(&self) -> Vec<Mono> {
        let mut v = vec![Mono::NU, Mono::omega0()];
        for n in 1..=self.n_max {
            for p in 0..self.points.len() as u16 {
                v.push(Mono::kron(Kron::new(p, n)));
            }
        }
        v
    }

    /// Letters of the tensor-coalgebra model: ν, ω^(0), ω^(1)_P for P ≠ O
    /// (the last standing for the class of ω^(1)_P − ω^(1)_O).
    pub fn pure_letters(&self) -> Vec<Mono> {
        let mut v = vec![Mono::NU, Mono::omega0()];
        for p in 1..self.points.len() as u16 {
            v.push(Mono::kron(Kron::new(p, 1)));
        }
        v
    }

    pub fn is_pure(&self, m: &Mono) -> bool {
        !m.t && (*m == Mono::NU || m.x.is_some_and(|k| !m.nu && (k.n == 0 || (k.n == 1 && k.point != 0))))
    }

    /// Product in 𝒜 (`total = false`) or 𝒞 (`total = true`).
    pub fn wedge(&self, a: &Mono, b: &Mono, total: bool) -> Vec<(Mono, SymPoly)> {
        let mut fs = a.factors();
        fs.extend(b.factors());
        // stable sort to T, ν, x order; every factor has degree 1
        let mut sign = 1i64;
        for i in 1..fs.len() {
            let mut j = i;
            while j > 0 && fs[j - 1].rank() > fs[j].rank() {
                fs.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        let count = |r: u8| fs.iter().filter(|f| f.rank() == r).count();
        if count(0) > 1 || count(1) > 1 {
            return Vec::new();
        }
        let has_t = count(0) == 1;
        let has_nu = count(1) == 1;
        let xs: Vec<Kron> = fs.iter().filter_map(|f| if let Factor::X(k) = f { Some(*k) } else { None }).collect();
        let scalar = SymPoly::from_i64(sign);
        match xs.len() {
            0 | 1 => vec![(Mono { t: has_t, nu: has_nu, x: xs.first().copied() }, scalar)],
            _ => {
                if !total || has_t {
                    return Vec::new();
                }
                // x1∧x2 = T∧μ, and T moves in front of ν
                let s = if has_nu { -scalar } else { scalar };
                kronecker_product(&self.points, xs[0], xs[1])
                    .into_iter()
                    .map(|(k, c)| (Mono { t: true, nu: has_nu, x: Some(k) }, c * s.clone()))
                    .collect()
            }
        }
    }

    /// d on 𝒜 or 𝒞: dω^(n)_P = ν∧ω^(n−1)_P, and in 𝒞 also dω^(0) = T∧ν.
    pub fn d(&self, m: &Mono, total: bool) -> Vec<(Mono, SymPoly)> {
        let fs = m.factors();
        let mut out: Vec<(Mono, SymPoly)> = Vec::new();
        for (i, f) in fs.iter().enumerate() {
            let Factor::X(k) = f else { continue };
            let image: Vec<Factor> = match k.lower() {
                Some(l) => vec![Factor::Nu, Factor::X(l)],
                None if total => vec![Factor::T, Factor::Nu],
                None => continue,
            };
            // Leibniz sign (−1)^i for degree-1 factors before position i
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let mut seq: Vec<Mono> = fs[..i].iter().map(factor_mono).collect();
            seq.push(mono_of(&image));
            seq.extend(fs[i + 1..].iter().map(factor_mono));
            let mut acc = vec![(seq[0], SymPoly::from_i64(sign))];
            for next in &seq[1..] {
                let mut step = Vec::new();
                for (mono, c) in &acc {
                    for (p, cp) in self.wedge(mono, next, total) {
                        step.push((p, c.clone() * cp));
                    }
                }
                acc = step;
            }
            out.extend(acc);
        }
        out
    }
}

fn factor_mono(f: &Factor) -> Mono {
    mono_of(&[*f])
}

fn mono_of(fs: &[Factor]) -> Mono {
    let mut m = Mono { t: false, nu: false, x: None };
    for f in fs {
        match f {
            Factor::T => m.t = true,
            Factor::Nu => m.nu = true,
            Factor::X(k) => m.x = Some(*k),
        }
    }
    m
}

fn a_sym(m: usize, q: TorsionPoint) -> SymPoly {
    SymPoly::eisenstein(m as u16, q)
}

fn binom(n: usize, k: usize) -> SymPoly {
    SymPoly::from_i64(binomial(n as i64, k as i64))
}

/// ω̃^(n)_P ∧ ω̃^(m)_Q = T ∧ μ with μ a finite combination of ω^(0), ω^(k)_P, ω^(k)_Q.
///
/// μ is the x^{n−1}y^{m−1} coefficient of
/// e_{P−Q}(x)K_Q(x+y) − e_{Q−P}(y)K_P(x+y) + (K_Q(y) − K_Q(x+y))/x² − (K_P(x) − K_P(x+y))/y²,
/// K_R(u) = Σ_k ω^(k)_R u^{k−1}, e_R(u) = k′_R(0,0,u) = Σ_a A_{a,−R} u^a.
pub fn kronecker_product(points: &[TorsionPoint], x: Kron, y: Kron) -> Vec<(Kron, SymPoly)> {
    let (n, m) = (x.n as usize, y.n as usize);
    let (p, q) = (points[x.point as usize], points[y.point as usize]);
    let mut out: Vec<(Kron, SymPoly)> = Vec::new();
    let mut push = |k: Kron, c: SymPoly| {
        if !c.is_zero() {
            out.push((k, c));
        }
    };
    if n >= 1 && m >= 1 {
        let sign = SymPoly::from_i64(if (m - 1) % 2 == 0 { 1 } else { -1 });
        push(Kron::OMEGA0, sign * a_sym(n + m - 1, q.sub(&p)));
    }
    if m >= 1 {
        for a in 0..n {
            push(Kron::new(y.point, (n + m - 1 - a) as u16), a_sym(a, q.sub(&p)) * binom(n + m - 2 - a, m - 1));
        }
        push(Kron::new(y.point, (n + m + 1) as u16), -binom(n + m, n + 1));
    }
    if n >= 1 {
        for a in 0..m {
            push(Kron::new(x.point, (n + m - 1 - a) as u16), -(a_sym(a, p.sub(&q)) * binom(n + m - 2 - a, n - 1)));
        }
        push(Kron::new(x.point, (n + m + 1) as u16), binom(n + m, m + 1));
    }
    merge(out)
}

fn merge(terms: Vec<(Kron, SymPoly)>) -> Vec<(Kron, SymPoly)> {
    let mut map: std::collections::BTreeMap<Kron, SymPoly> = std::collections::BTreeMap::new();
    for (k, c) in terms {
        let e = map.entry(k).or_insert_with(SymPoly::zero);
        *e = e.clone() + c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub struct MonoDisplay<'a>(pub &'a Presentation, pub &'a Mono);

impl fmt::Display for MonoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (pres, m) = (self.0, self.1);
        let mut parts: Vec<String> = Vec::new();
        if m.t {
            parts.push("T".into());
        }
        if m.nu {
            parts.push("nu".into());
        }
        if let Some(k) = m.x {
            if k.n == 0 {
                parts.push("w0".into());
            } else {
                parts.push(format!("w{}{}", k.n, pres.points[k.point as usize]));
            }
        }
        write!(f, "{}", parts.join("^"))
    }
}
