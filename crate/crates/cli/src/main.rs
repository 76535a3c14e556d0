mod config;
mod eval;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use elliptic_kzb::bar::{delta_table, write_delta_csv, H0Basis, Presentation};
use elliptic_kzb::forms::CElem;
use elliptic_kzb::kzb::KZBConnection;
use elliptic_kzb::modforms::{write_coeff_table, Precision, TWO_PI_I};
use elliptic_kzb::ncalg::{c_gen, NCElement, GEN_A};
use elliptic_kzb::report::VerificationReport;
use elliptic_kzb::suites::{run_suite, Suite, SuiteConfig};
use elliptic_kzb::transport::{monodromy, transport, PathSpec, TransportOptions};
use elliptic_kzb::TorsionPoint;

use config::{Format, GlobalArgs, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "ekzb", version, about = "Elliptic KZB connections: series, verifiers and transport")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate theta, F, phi, G, A, kP or gP
    Eval(eval::EvalArgs),
    /// Run a verification suite; exit code 0 iff it passes
    Verify {
        /// flatness, fay, main-identity, gauge, lifts, residue, bar-hopf, antipode-kzb, delta-vs-phi or transport
        suite: String,
        /// Number of seeded sample points
        #[arg(long)]
        points: Option<usize>,
        /// Run the deliberately broken variant (flatness, fay)
        #[arg(long)]
        negative_control: bool,
    },
    /// Parallel transport along a JSON path description
    Transport {
        path_file: PathBuf,
        /// Also transport the reversed path and report |T(reversed)·T − 1|
        #[arg(long)]
        reverse_check: bool,
        /// Compare the single-integral part with the residue formula for one loop around O
        #[arg(long)]
        residue_check: bool,
    },
    /// Dump bar-construction data
    Bar {
        #[arg(value_enum)]
        what: BarDump,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BarDump {
    /// Basis of H0 as closed bar elements
    H0,
    /// Gauss-Manin derivative in that basis
    Delta,
}

/// Outcome of a command: the JSON result, an optional CSV rendering and a verdict.
struct Output {
    result: Value,
    csv: Option<Vec<u8>>,
    pass: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let name = match &cli.command {
        Command::Eval(_) => "eval",
        Command::Verify { .. } => "verify",
        Command::Transport { .. } => "transport",
        Command::Bar { .. } => "bar",
    };
    let cfg = RunConfig::resolve(name, &cli.global)?;
    let prec = Precision::with_q_order(cfg.q_order);
    let out = match &cli.command {
        Command::Eval(args) => {
            let o = eval::run(args, &prec)?;
            let mut buf = Vec::new();
            write_coeff_table(&mut buf, o.index_name, &o.rows, &prec)?;
            Output { result: o.body, csv: Some(buf), pass: true }
        }
        Command::Verify { suite, points, negative_control } => {
            let suite: Suite = suite.parse()?;
            let sc = SuiteConfig {
                level: cfg.level,
                len: cfg.len,
                tol: cfg.tol,
                q_order: cfg.q_order,
                seed: cfg.seed,
                points: *points,
                negative_control: *negative_control,
            };
            let report = run_suite(suite, &sc)?;
            Output { csv: Some(report_csv(&report)?), pass: report.pass, result: serde_json::to_value(&report)? }
        }
        Command::Transport { path_file, reverse_check, residue_check } => {
            transport_command(&cfg, &prec, path_file, *reverse_check, *residue_check)?
        }
        Command::Bar { what } => bar_command(&cfg, *what)?,
    };
    emit(&cfg, out.result, out.csv)?;
    Ok(out.pass)
}

fn emit(cfg: &RunConfig, result: Value, csv: Option<Vec<u8>>) -> Result<()> {
    let bytes = match cfg.format {
        Format::Json => {
            let doc = json!({ "version": elliptic_kzb::VERSION, "config": cfg, "result": result });
            let mut s = serde_json::to_vec_pretty(&doc)?;
            s.push(b'\n');
            s
        }
        Format::Csv => csv.ok_or_else(|| anyhow!("`{}` has no CSV form", cfg.command))?,
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn report_csv(r: &VerificationReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "check",
        "level",
        "L",
        "q_terms",
        "seed",
        "z_re",
        "z_im",
        "w_re",
        "w_im",
        "tau_re",
        "tau_im",
        "residual",
        "threshold",
        "pass",
        "flags",
    ])?;
    let head = [r.check.clone(), r.level.to_string(), r.len.to_string(), r.q_terms.to_string(), r.seed.to_string()];
    let tail = |residual: f64| [format!("{residual:e}"), format!("{:e}", r.threshold), r.pass.to_string()];
    if r.points.is_empty() {
        let mut row: Vec<String> = head.to_vec();
        row.extend(std::iter::repeat_n(String::new(), 6));
        row.extend(tail(r.max_residual));
        row.push(r.note.clone().unwrap_or_default());
        w.write_record(&row)?;
    }
    for p in &r.points {
        let mut row: Vec<String> = head.to_vec();
        row.extend([p.z[0], p.z[1], p.w[0], p.w[1], p.tau[0], p.tau[1]].map(|x| format!("{x:e}")));
        row.extend(tail(p.residual));
        row.push(p.flags.join(";"));
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| anyhow!("{e}"))
}

fn element_csv(e: &CElem) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["word", "re", "im"])?;
    for (word, c) in e.terms() {
        w.write_record([e.word_to_string(word), format!("{:e}", c.re), format!("{:e}", c.im)])?;
    }
    w.into_inner().map_err(|e| anyhow!("{e}"))
}

/// Σ_n 2πi w^{n−1}/(n−1)! ad_a^{n−1} c_O: the single integral once around O.
fn origin_residue(conn: &KZBConnection, w: Complex64) -> Result<CElem> {
    let (al, len) = (conn.alphabet(), conn.max_len());
    let co = c_gen::<Complex64>(al, len, &TorsionPoint::origin())?;
    let mut out = NCElement::zero(al, len);
    let mut fact = 1.0;
    for n in 1..=len {
        if n > 1 {
            fact *= (n - 1) as f64;
        }
        out.add_scaled(&NCElement::ad_pow(GEN_A, n - 1, &co), &(TWO_PI_I * w.powu(n as u32 - 1) / fact));
    }
    Ok(out)
}

fn transport_command(
    cfg: &RunConfig,
    prec: &Precision,
    path_file: &PathBuf,
    reverse_check: bool,
    residue_check: bool,
) -> Result<Output> {
    let text = std::fs::read_to_string(path_file).with_context(|| format!("reading {}", path_file.display()))?;
    let path = PathSpec::from_json(&text).with_context(|| format!("parsing {}", path_file.display()))?;
    let conn = KZBConnection::new(cfg.level, cfg.len, *prec)?;
    let opts = TransportOptions::default();
    let res = if path.is_closed() {
        monodromy(&path, &conn, cfg.len, cfg.tol, &opts)?
    } else {
        transport(&path, &conn, cfg.len, cfg.tol, &opts)?
    };
    let threshold = 10.0 * cfg.tol;
    let mut checks = serde_json::Map::new();
    let mut pass = true;
    if reverse_check {
        let back = transport(&path.reversed(), &conn, cfg.len, cfg.tol, &opts)?;
        let defect = (&(&back.element * &res.element) - &CElem::one(conn.alphabet(), cfg.len)).max_norm();
        pass &= defect < threshold;
        checks
            .insert("reversal".into(), json!({ "defect": defect, "threshold": threshold, "pass": defect < threshold }));
    }
    if residue_check {
        if !path.is_closed() {
            bail!("--residue-check needs a closed path");
        }
        let w = Complex64::new(path.w[0], path.w[1]);
        let defect = (&res.first_order - &origin_residue(&conn, w)?).max_norm();
        pass &= defect < threshold;
        checks
            .insert("residue".into(), json!({ "defect": defect, "threshold": threshold, "pass": defect < threshold }));
    }
    let result = json!({ "path": path, "transport": res.to_json(), "checks": checks, "pass": pass });
    Ok(Output { result, csv: Some(element_csv(&res.element)?), pass })
}

fn bar_command(cfg: &RunConfig, what: BarDump) -> Result<Output> {
    let n_max = u16::try_from(cfg.len).map_err(|_| anyhow!("length {} too large", cfg.len))?;
    let h = H0Basis::compute(&Presentation::new(cfg.level, n_max)?, cfg.len)?;
    Ok(match what {
        BarDump::H0 => Output { result: h.to_json(), csv: None, pass: true },
        BarDump::Delta => {
            let rows: Vec<Value> = delta_table(&h)?
                .into_iter()
                .map(|(n, s, t, c)| json!({ "length": n, "source": s, "target": t, "coefficient": c }))
                .collect();
            let mut buf = Vec::new();
            write_delta_csv(&h, &mut buf)?;
            Output { result: Value::Array(rows), csv: Some(buf), pass: true }
        }
    })
}
