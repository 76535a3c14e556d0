use anyhow::{anyhow, bail, Result};
use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use elliptic_kzb::modforms::{
    eisenstein_a, eisenstein_g, eisenstein_g2, kp_jets, kronecker_f, lattice_sum_g, phi_coeffs, theta_derivs,
    LaurentJet, Precision,
};
use elliptic_kzb::TorsionPoint;

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Theta,
    #[value(name = "F")]
    F,
    Phi,
    #[value(name = "G")]
    G,
    #[value(name = "A")]
    A,
    #[value(name = "kP")]
    Kp,
    #[value(name = "gP")]
    Gp,
}

#[derive(Args, Clone, Debug)]
pub struct EvalArgs {
    pub kind: Kind,
    /// Modular parameter, e.g. `0.1+1.1i`
    #[arg(long, default_value = "0+1i", value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: C,
    #[arg(long, default_value = "0.31+0.17i", value_parser = parse_complex, allow_hyphen_values = true)]
    pub z: C,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub w: C,
    /// Highest coefficient index (theta derivatives, F and phi)
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Even weight 2k of G
    #[arg(long, default_value_t = 4)]
    pub weight: i64,
    /// Index m of A_{m,Q}
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Torsion point Q of A_{m,Q}, e.g. `O` or `(1/2,0)`
    #[arg(long = "Q", default_value = "O", value_parser = parse_point)]
    pub q: TorsionPoint,
    /// Torsion point P of k_P and g_P
    #[arg(long = "P", default_value = "O", value_parser = parse_point)]
    pub p: TorsionPoint,
    /// Jet degree for kP and gP
    #[arg(long, default_value_t = 4)]
    pub deg: usize,
    /// Shell radius of the lattice-sum cross-check for G
    #[arg(long, default_value_t = 200)]
    pub lattice_radius: i64,
}

fn parse_point(s: &str) -> Result<TorsionPoint, String> {
    TorsionPoint::parse(s).map_err(|e| e.to_string())
}

/// Accepts `a`, `bi`, `a+bi`, `a-bi` (with optional exponents and `j` for `i`).
pub fn parse_complex(s: &str) -> Result<C, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('j', "i");
    let bad = || format!("bad complex number `{s}`");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| C::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        x => x,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(C::new(re, im))
}

pub struct EvalOutput {
    pub index_name: &'static str,
    pub rows: Vec<(i64, C)>,
    pub body: Value,
}

fn pair(c: C) -> Value {
    json!([c.re, c.im])
}

fn coefficient_list(index_name: &str, rows: &[(i64, C)]) -> Value {
    Value::Array(rows.iter().map(|(k, c)| json!({ index_name: k, "re": c.re, "im": c.im })).collect())
}

fn jet_rows(j: &LaurentJet, from: i32, to: i32) -> Vec<(i64, C)> {
    (from..=to).map(|k| (k as i64, j.coeff(k))).collect()
}

pub fn run(args: &EvalArgs, prec: &Precision) -> Result<EvalOutput> {
    let (tau, z, w) = (args.tau, args.z, args.w);
    let (index_name, rows, mut body) = match args.kind {
        Kind::Theta => {
            let d = theta_derivs(z, tau, args.n, prec)?;
            let rows: Vec<(i64, C)> = d.iter().enumerate().map(|(k, c)| (k as i64, *c)).collect();
            ("derivative", rows, json!({ "z": pair(z), "tau": pair(tau), "value": pair(d[0]) }))
        }
        Kind::F => {
            let jets = kronecker_f(z, tau, args.n, prec)?;
            let rows = jet_rows(&jets.f, -1, args.n as i32);
            ("power", rows, json!({ "z": pair(z), "tau": pair(tau) }))
        }
        Kind::Phi => {
            let phis = phi_coeffs(z, w, tau, args.n, prec)?;
            let rows: Vec<(i64, C)> = phis.iter().enumerate().map(|(k, c)| (k as i64, *c)).collect();
            let value = phis[args.n];
            ("n", rows, json!({ "z": pair(z), "w": pair(w), "tau": pair(tau), "value": pair(value) }))
        }
        Kind::G => {
            let value = match args.weight {
                2 => eisenstein_g2(tau, prec)?,
                k => eisenstein_g(k, tau, prec)?,
            };
            let mut body = json!({ "weight": args.weight, "tau": pair(tau), "value": pair(value) });
            if args.weight >= 4 {
                let weight = i32::try_from(args.weight).map_err(|_| anyhow!("weight too large"))?;
                let oracle = lattice_sum_g(weight, tau, args.lattice_radius);
                body["lattice_oracle"] = json!({
                    "radius": args.lattice_radius,
                    "value": pair(oracle),
                    "delta": (oracle - value).norm(),
                });
            }
            ("weight", vec![(args.weight, value)], body)
        }
        Kind::A => {
            let value = eisenstein_a(args.m, &args.q, tau, prec)?;
            let body = json!({ "m": args.m, "Q": args.q.to_string(), "tau": pair(tau), "value": pair(value) });
            ("m", vec![(args.m as i64, value)], body)
        }
        Kind::Kp | Kind::Gp => {
            let jets = kp_jets(z, w, tau, &args.p, args.deg, prec)?;
            let jet = if args.kind == Kind::Kp { &jets.k } else { &jets.g };
            let rows = jet_rows(jet, 0, args.deg as i32);
            ("power", rows, json!({ "z": pair(z), "w": pair(w), "tau": pair(tau), "P": args.p.to_string() }))
        }
    };
    if rows.is_empty() {
        bail!("nothing to evaluate");
    }
    body["kind"] = json!(format!("{:?}", args.kind));
    body["coefficients"] = coefficient_list(index_name, &rows);
    Ok(EvalOutput { index_name, rows, body })
}
