use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use elliptic_kzb::kzb::DEFAULT_SEED;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand.
#[derive(Args, Clone, Debug, Default)]
pub struct GlobalArgs {
    /// Level N of the torsion subgroup
    #[arg(short = 'N', long, global = true)]
    pub level: Option<u32>,
    /// Truncation length L
    #[arg(short = 'L', long, global = true)]
    pub len: Option<usize>,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Number of q-expansion terms
    #[arg(long, global = true)]
    pub q_order: Option<usize>,
    /// RNG seed (decimal or 0x-prefixed hex)
    #[arg(long, global = true, value_parser = parse_seed)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file with any of: level, len, tol, q_order, seed, format
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

pub fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => t.parse(),
    };
    parsed.map_err(|e| format!("bad seed `{s}`: {e}"))
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    level: Option<u32>,
    len: Option<usize>,
    tol: Option<f64>,
    q_order: Option<usize>,
    #[serde(default, deserialize_with = "seed_field")]
    seed: Option<u64>,
    format: Option<Format>,
}

fn seed_field<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<u64>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(u64),
        Text(String),
    }
    match Option::<Raw>::deserialize(d)? {
        None => Ok(None),
        Some(Raw::Int(v)) => Ok(Some(v)),
        Some(Raw::Text(s)) => parse_seed(&s).map(Some).map_err(serde::de::Error::custom),
    }
}

/// Effective settings: flags override the config file, which overrides the defaults.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub level: u32,
    #[serde(rename = "L")]
    pub len: usize,
    pub tol: f64,
    pub q_order: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config_file: Option<serde_json::Value>,
}

impl RunConfig {
    pub fn resolve(command: &str, args: &GlobalArgs) -> Result<Self> {
        let (file, echo) = match &args.config {
            Some(path) => read_config(path)?,
            None => (FileConfig::default(), None),
        };
        let cfg = Self {
            command: command.to_string(),
            level: args.level.or(file.level).unwrap_or(1),
            len: args.len.or(file.len).unwrap_or(3),
            tol: args.tol.or(file.tol).unwrap_or(1e-9),
            q_order: args.q_order.or(file.q_order).unwrap_or(40),
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            out: args.out.clone(),
            format: args.format.or(file.format).unwrap_or(Format::Json),
            config_file: echo,
        };
        if cfg.level == 0 || cfg.len == 0 || !(cfg.tol > 0.0) || cfg.q_order == 0 {
            bail!("need level >= 1, len >= 1, tol > 0 and q_order >= 1");
        }
        Ok(cfg)
    }
}

fn read_config(path: &Path) -> Result<(FileConfig, Option<serde_json::Value>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let table: toml::Table = text.parse().with_context(|| format!("parsing {}", path.display()))?;
    let echo = serde_json::to_value(&table)?;
    let file: FileConfig = table.try_into().with_context(|| format!("config keys in {}", path.display()))?;
    Ok((file, Some(echo)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_accept_hex() {
        assert_eq!(parse_seed("0xE11B").unwrap(), 0xE11B);
        assert_eq!(parse_seed("17").unwrap(), 17);
        assert!(parse_seed("x").is_err());
    }

    #[test]
    fn defaults() {
        let c = RunConfig::resolve("verify", &GlobalArgs::default()).unwrap();
        assert_eq!((c.level, c.len, c.tol, c.q_order, c.seed), (1, 3, 1e-9, 40, 0xE11B));
        assert_eq!(c.format, Format::Json);
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(&path, "level = 2\nlen = 4\nseed = \"0x10\"\n").unwrap();
        let args = GlobalArgs { len: Some(5), config: Some(path), ..Default::default() };
        let c = RunConfig::resolve("verify", &args).unwrap();
        assert_eq!((c.level, c.len, c.seed), (2, 5, 16));
        assert_eq!(c.config_file.unwrap()["level"], 2);
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "levle = 2\n").unwrap();
        let args = GlobalArgs { config: Some(path), ..Default::default() };
        assert!(RunConfig::resolve("verify", &args).is_err());
    }
}
