use num_complex::Complex64;
use std::sync::Arc;

use super::value::{CElem, Form1Jet, Form1Value, Form2Value};
use crate::error::{Error, Result};
use crate::modforms::ModularPoint;
use crate::ncalg::Alphabet;

type C = Complex64;
type ValueFn = Arc<dyn Fn(&ModularPoint) -> Result<Form1Value> + Send + Sync>;
type JetFn = Arc<dyn Fn(&ModularPoint) -> Result<Form1Jet> + Send + Sync>;
type Value2Fn = Arc<dyn Fn(&ModularPoint) -> Result<Form2Value> + Send + Sync>;

/// A 1-form given by coefficient functions, optionally with closed-form partials.
#[derive(Clone)]
pub struct NCForm1 {
    alphabet: Arc<Alphabet>,
    max_len: usize,
    value: ValueFn,
    jet: Option<JetFn>,
}

#[derive(Clone)]
pub struct NCForm2 {
    alphabet: Arc<Alphabet>,
    max_len: usize,
    value: Value2Fn,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivScheme {
    ClosedForm,
    FiniteDiff,
}

#[derive(Clone, Copy, Debug)]
enum Var {
    Z,
    W,
    Tau,
}

fn shifted(p: &ModularPoint, v: Var, h: f64) -> ModularPoint {
    let mut q = *p;
    match v {
        Var::Z => q.z += h,
        Var::W => q.w += h,
        Var::Tau => q.tau += h,
    }
    q
}

/// Central difference with one Richardson step; returns (derivative, error estimate).
fn richardson<T, F>(f: F, p: &ModularPoint, v: Var, h: f64) -> Result<(T, f64)>
where
    F: Fn(&ModularPoint) -> Result<T>,
    T: Lincomb,
{
    let d = |step: f64| -> Result<T> {
        let plus = f(&shifted(p, v, step))?;
        let minus = f(&shifted(p, v, -step))?;
        Ok(plus.axpy(&minus, C::new(-1.0, 0.0)).scaled(C::new(0.5 / step, 0.0)))
    };
    let coarse = d(h)?;
    let fine = d(h / 2.0)?;
    let extrap = fine.scaled(C::new(4.0 / 3.0, 0.0)).axpy(&coarse, C::new(-1.0 / 3.0, 0.0));
    let err = extrap.axpy(&fine, C::new(-1.0, 0.0)).norm();
    Ok((extrap, err))
}

/// Linear combinations needed by the difference quotients.
trait Lincomb: Sized {
    fn axpy(&self, other: &Self, c: C) -> Self;
    fn scaled(&self, c: C) -> Self;
    fn norm(&self) -> f64;
}

impl Lincomb for CElem {
    fn axpy(&self, other: &Self, c: C) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &c);
        out
    }
    fn scaled(&self, c: C) -> Self {
        self.scale(&c)
    }
    fn norm(&self) -> f64 {
        self.max_norm()
    }
}

impl Lincomb for Form1Value {
    fn axpy(&self, other: &Self, c: C) -> Self {
        Form1Value {
            dz: self.dz.axpy(&other.dz, c),
            dw: self.dw.axpy(&other.dw, c),
            dtau: self.dtau.axpy(&other.dtau, c),
        }
    }
    fn scaled(&self, c: C) -> Self {
        self.scale(c)
    }
    fn norm(&self) -> f64 {
        self.max_norm()
    }
}

impl Lincomb for Form2Value {
    fn axpy(&self, other: &Self, c: C) -> Self {
        Form2Value {
            dzdw: self.dzdw.axpy(&other.dzdw, c),
            dzdtau: self.dzdtau.axpy(&other.dzdtau, c),
            dwdtau: self.dwdtau.axpy(&other.dwdtau, c),
        }
    }
    fn scaled(&self, c: C) -> Self {
        self.scale(c)
    }
    fn norm(&self) -> f64 {
        self.max_norm()
    }
}

pub const FD_STEP: f64 = 1e-3;

impl NCForm1 {
    pub fn from_values(alphabet: &Arc<Alphabet>, max_len: usize, value: ValueFn) -> Self {
        Self { alphabet: alphabet.clone(), max_len, value, jet: None }
    }

    /// Form with registered closed-form partials; values come from the jet.
    pub fn from_jets(alphabet: &Arc<Alphabet>, max_len: usize, jet: JetFn) -> Self {
        let j = jet.clone();
        let value: ValueFn = Arc::new(move |p| Ok(j(p)?.value));
        Self { alphabet: alphabet.clone(), max_len, value, jet: Some(jet) }
    }

    pub fn constant(value: Form1Value) -> Self {
        let al = value.dz.alphabet().clone();
        let len = value.dz.max_len();
        let zero = Form1Value::zero(&al, len);
        let v = value.clone();
        let jet: JetFn = Arc::new(move |_| {
            Ok(Form1Jet { value: v.clone(), d_z: zero.clone(), d_w: zero.clone(), d_tau: zero.clone() })
        });
        Self::from_jets(&al, len, jet)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn eval(&self, p: &ModularPoint) -> Result<Form1Value> {
        (self.value)(p)
    }

    pub fn eval_jet(&self, p: &ModularPoint) -> Result<Form1Jet> {
        match &self.jet {
            Some(j) => j(p),
            None => Err(Error::Invalid("form has no closed-form derivative".into())),
        }
    }

    pub fn has_closed_form(&self) -> bool {
        self.jet.is_some()
    }

    pub fn wedge(&self, other: &NCForm1) -> Result<NCForm2> {
        if self.alphabet.level() != other.alphabet.level() {
            return Err(Error::AlphabetMismatch(self.alphabet.level(), other.alphabet.level()));
        }
        let (f, g) = (self.value.clone(), other.value.clone());
        Ok(NCForm2 {
            alphabet: self.alphabet.clone(),
            max_len: self.max_len.min(other.max_len),
            value: Arc::new(move |p| f(p)?.wedge(&g(p)?)),
        })
    }
}

impl NCForm2 {
    pub fn new(alphabet: &Arc<Alphabet>, max_len: usize, value: Value2Fn) -> Self {
        Self { alphabet: alphabet.clone(), max_len, value }
    }

    pub fn eval(&self, p: &ModularPoint) -> Result<Form2Value> {
        (self.value)(p)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }
}

/// dω at p and an error estimate (0 for the closed form).
pub fn ext_deriv(f: &NCForm1, p: &ModularPoint, scheme: DerivScheme) -> Result<(Form2Value, f64)> {
    match scheme {
        DerivScheme::ClosedForm => Ok((f.eval_jet(p)?.exterior()?, 0.0)),
        DerivScheme::FiniteDiff => {
            let val = |q: &ModularPoint| f.eval(q);
            let (dz, ez) = richardson(val, p, Var::Z, FD_STEP)?;
            let (dw, ew) = richardson(val, p, Var::W, FD_STEP)?;
            let (dt, et) = richardson(val, p, Var::Tau, FD_STEP)?;
            let jet = Form1Jet { value: f.eval(p)?, d_z: dz, d_w: dw, d_tau: dt };
            Ok((jet.exterior()?, ez.max(ew).max(et)))
        }
    }
}

/// dz∧dw∧dτ coefficient of dη by finite differences: ∂_τ η_{zw} − ∂_w η_{zτ} + ∂_z η_{wτ}.
pub fn ext_deriv2_fd(f: &NCForm2, p: &ModularPoint) -> Result<(CElem, f64)> {
    let val = |q: &ModularPoint| f.eval(q);
    let (dz, ez) = richardson(val, p, Var::Z, FD_STEP)?;
    let (dw, ew) = richardson(val, p, Var::W, FD_STEP)?;
    let (dt, et) = richardson(val, p, Var::Tau, FD_STEP)?;
    let out = &(&dt.dzdw - &dw.dzdtau) + &dz.dwdtau;
    Ok((out, ez.max(ew).max(et)))
}
