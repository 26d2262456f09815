//! Command-line front end: `invariants`, `verify`, `walls`, `hilb2`.
//!
//! All numeric output is exact. A flat key-value config file can supply
//! any long flag (`--config PATH`, lines `key = value`, `#` comments);
//! explicit flags override the file. Exit codes: 0 success, 1 hard-check
//! failure, 2 usage error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::hilb2::{quartic, Hilb2Divisor};
use crate::lattice::{LatticeClass, SurfaceParams, RANK};
use crate::output;
use crate::rational::{parse_rat, Rat};
use crate::verify::{run_verify, VerifyDepth, VerifyOptions};
use crate::walls::{walls_on_segment, PeriodPoint};

#[derive(Debug, Parser)]
#[command(
    name = "dolgachev",
    about = "Exact Spin-polynomial invariant coefficients for Dolgachev surfaces",
    version
)]
struct Cli {
    /// Flat key-value config file supplying defaults for long flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Depth {
    Fast,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tables of a(n), b(n) with closed-form cross-checks.
    Invariants {
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long = "n-max", value_name = "N")]
        n_max: Option<i64>,
        /// Sweep all pairs with p <= PMAX, q <= QMAX instead of one pair.
        #[arg(long, num_args = 2, value_names = ["PMAX", "QMAX"])]
        sweep: Option<Vec<i64>>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the identity suite and emit the errata ledger.
    Verify {
        #[arg(long, value_enum)]
        depth: Option<Depth>,
        /// Seed for the randomized samples; identical seeds give
        /// byte-identical reports.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Walls crossed by the segment between two period points, with
    /// effectiveness verdicts (c1 = K_S + 2n k).
    Walls {
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
        /// Start period point: ten comma-separated rationals.
        #[arg(long, value_name = "c0,...,c9", allow_hyphen_values = true)]
        w0: Option<String>,
        /// End period point: ten comma-separated rationals.
        #[arg(long, value_name = "c0,...,c9", allow_hyphen_values = true)]
        w1: Option<String>,
    },
    /// Evaluate a quartic intersection product of four divisor literals
    /// (e.g. "T.T.T.T" or "[3,0,0,0,0,0,0,0,0,0].F.T.T").
    Hilb2 {
        expr: String,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long)]
        q: Option<i64>,
    },
}

/// Entry point used by the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(map) => map,
        Err(msg) => {
            eprintln!("{msg}");
            return 2;
        }
    };
    match dispatch(cli.command, &config) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{msg}");
            2
        }
    }
}

fn dispatch(command: Command, config: &ConfigMap) -> Result<i32, String> {
    match command {
        Command::Invariants { p, q, n_max, sweep, format, out } => {
            let format = resolve_format(format, config)?;
            let out = out.or_else(|| config.get_path("out"));
            let sweep = match sweep {
                Some(v) => Some((v[0], v[1])),
                None => config.get_pair("sweep")?,
            };
            let n_max = resolve(n_max, config, "n-max")?
                .ok_or("invariants needs --n-max (or n-max in the config file)")?;
            if n_max < 1 {
                return Err(format!("--n-max must be >= 1, got {n_max}"));
            }
            let mut rows = Vec::new();
            let meta;
            match sweep {
                Some((pmax, qmax)) => {
                    if pmax < 1 || qmax < 1 {
                        return Err("sweep bounds must be >= 1".to_string());
                    }
                    for p in 1..=pmax {
                        for q in 1..=qmax {
                            rows.extend(output::invariant_rows(p, q, n_max));
                        }
                    }
                    meta = output::Meta { p: None, q: None, n_max: Some(n_max), seed: None };
                }
                None => {
                    let p = resolve(p, config, "p")?.ok_or("invariants needs --p and --q (or a --sweep)")?;
                    let q = resolve(q, config, "q")?.ok_or("invariants needs --p and --q (or a --sweep)")?;
                    rows = output::invariant_rows(p, q, n_max);
                    meta = output::Meta { p: Some(p), q: Some(q), n_max: Some(n_max), seed: None };
                }
            }
            let report = output::InvariantsReport { meta, rows, ledger: Vec::new() };
            let rendered = match format {
                Format::Json => output::to_json(&report),
                Format::Csv => output::invariants_csv(&report),
            };
            emit(&rendered, out.as_deref())?;
            Ok(if report.any_mismatch() { 1 } else { 0 })
        }
        Command::Verify { depth, seed, format, out } => {
            let format = resolve_format(format, config)?;
            let out = out.or_else(|| config.get_path("out"));
            let depth = match depth {
                Some(Depth::Fast) => VerifyDepth::Fast,
                Some(Depth::Full) => VerifyDepth::Full,
                None => match config.get("depth") {
                    Some("fast") => VerifyDepth::Fast,
                    Some("full") => VerifyDepth::Full,
                    Some(other) => return Err(format!("unknown depth '{other}' in config")),
                    None => VerifyDepth::Fast,
                },
            };
            let seed = match seed {
                Some(s) => s,
                None => config.get_u64("seed")?.unwrap_or(0),
            };
            let report = run_verify(&VerifyOptions { depth, seed });
            let doc = output::verify_report_doc(&report);
            let rendered = match format {
                Format::Json => output::to_json(&doc),
                Format::Csv => output::verify_csv(&doc),
            };
            emit(&rendered, out.as_deref())?;
            Ok(report.exit_code())
        }
        Command::Walls { p, q, n, w0, w1 } => {
            let p = resolve(p, config, "p")?.unwrap_or(3);
            let q = resolve(q, config, "q")?.unwrap_or(2);
            let n = resolve(n, config, "n")?.ok_or("walls needs --n")?;
            let w0 = w0.or_else(|| config.get("w0").map(str::to_string)).ok_or("walls needs --w0")?;
            let w1 = w1.or_else(|| config.get("w1").map(str::to_string)).ok_or("walls needs --w1")?;
            let params = SurfaceParams::new(p, q).map_err(|e| e.to_string())?;
            let omega0 = parse_class(&w0).map_err(|e| format!("--w0: {e}"))?;
            let omega1 = parse_class(&w1).map_err(|e| format!("--w1: {e}"))?;
            let w0 = PeriodPoint::new(omega0).map_err(|e| format!("--w0: {e}"))?;
            let w1 = PeriodPoint::new(omega1).map_err(|e| format!("--w1: {e}"))?;
            let c1 = params.classes().c1(n);
            let walls = walls_on_segment(&w0, &w1, &c1, &params).map_err(|e| e.to_string())?;
            for wall in walls {
                println!(
                    "zeta = {}  zeta^2 = {}  M = {}  effective = {}",
                    wall.zeta, wall.square, wall.reduction, wall.effective
                );
            }
            Ok(0)
        }
        Command::Hilb2 { expr, p, q } => {
            let p = resolve(p, config, "p")?.unwrap_or(3);
            let q = resolve(q, config, "q")?.unwrap_or(2);
            let params = SurfaceParams::new(p, q).map_err(|e| e.to_string())?;
            let factors = parse_product(&expr, &params)?;
            let cl = params.classes();
            let value = quartic(&factors[0], &factors[1], &factors[2], &factors[3], &cl.canonical, cl.c2());
            println!("{value}");
            Ok(0)
        }
    }
}

fn resolve(flag: Option<i64>, config: &ConfigMap, key: &str) -> Result<Option<i64>, String> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => config.get_i64(key),
    }
}

fn resolve_format(flag: Option<Format>, config: &ConfigMap) -> Result<Format, String> {
    match flag {
        Some(f) => Ok(f),
        None => match config.get("format") {
            Some("json") => Ok(Format::Json),
            Some("csv") => Ok(Format::Csv),
            Some(other) => Err(format!("unknown format '{other}' in config")),
            None => Ok(Format::Json),
        },
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Flat key-value configuration.
#[derive(Debug, Default)]
struct ConfigMap {
    values: BTreeMap<String, String>,
}

const KNOWN_KEYS: &[&str] =
    &["p", "q", "n-max", "sweep", "format", "out", "depth", "seed", "n", "w0", "w1"];

fn load_config(path: Option<&Path>) -> Result<ConfigMap, String> {
    let mut map = ConfigMap::default();
    let Some(path) = path else { return Ok(map) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("{}:{}: expected 'key = value'", path.display(), lineno + 1))?;
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(format!("{}:{}: unknown key '{key}'", path.display(), lineno + 1));
        }
        map.values.insert(key, value.trim().to_string());
    }
    Ok(map)
}

impl ConfigMap {
    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn get_i64(&self, key: &str) -> Result<Option<i64>, String> {
        self.get(key)
            .map(|v| v.parse::<i64>().map_err(|_| format!("config key '{key}': invalid integer '{v}'")))
            .transpose()
    }

    fn get_u64(&self, key: &str) -> Result<Option<u64>, String> {
        self.get(key)
            .map(|v| v.parse::<u64>().map_err(|_| format!("config key '{key}': invalid integer '{v}'")))
            .transpose()
    }

    fn get_path(&self, key: &str) -> Option<PathBuf> {
        self.get(key).map(PathBuf::from)
    }

    fn get_pair(&self, key: &str) -> Result<Option<(i64, i64)>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => {
                let parts: Vec<&str> = v.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(format!("config key '{key}': expected two integers, got '{v}'"));
                }
                let a = parts[0]
                    .parse::<i64>()
                    .map_err(|_| format!("config key '{key}': invalid integer '{}'", parts[0]))?;
                let b = parts[1]
                    .parse::<i64>()
                    .map_err(|_| format!("config key '{key}': invalid integer '{}'", parts[1]))?;
                Ok(Some((a, b)))
            }
        }
    }
}

/// Parse ten comma-separated exact rationals.
fn parse_class(text: &str) -> Result<LatticeClass, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != RANK {
        return Err(format!("expected {RANK} comma-separated rationals, got {}", parts.len()));
    }
    let mut coords: Vec<Rat> = Vec::with_capacity(RANK);
    for (i, part) in parts.iter().enumerate() {
        let r = parse_rat(part)
            .ok_or_else(|| format!("coordinate {i}: '{}' is not an exact rational", part.trim()))?;
        coords.push(r);
    }
    Ok(LatticeClass::new(coords.try_into().unwrap()))
}

/// Parse a product of exactly four divisor literals separated by '.'.
///
/// Literals: `T` (the exceptional class), a named surface class
/// (`F`, `Fp`, `Fq`, `K`, `k`, `f`, `e0`..`e9`), or an explicit bracket
/// vector `[r0,...,r9]` of exact rationals. Errors carry the byte
/// position of the offending token.
fn parse_product(expr: &str, params: &SurfaceParams) -> Result<[Hilb2Divisor; 4], String> {
    let mut factors = Vec::new();
    let bytes = expr.as_bytes();
    let mut pos = 0usize;
    let mut start = 0usize;
    let mut depth = 0i32;
    let mut boundaries = Vec::new();
    while pos < bytes.len() {
        match bytes[pos] {
            b'[' => depth += 1,
            b']' => depth -= 1,
            b'.' if depth == 0 => {
                boundaries.push((start, pos));
                start = pos + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(format!("parse error at byte {pos}: unmatched ']'"));
        }
        pos += 1;
    }
    if depth != 0 {
        return Err(format!("parse error at byte {pos}: unclosed '['"));
    }
    boundaries.push((start, bytes.len()));
    for (from, to) in boundaries {
        factors.push(parse_factor(expr, from, to, params)?);
    }
    let n = factors.len();
    factors
        .try_into()
        .map_err(|_| format!("expected a product of exactly four factors, got {n}"))
}

fn parse_factor(
    expr: &str,
    from: usize,
    to: usize,
    params: &SurfaceParams,
) -> Result<Hilb2Divisor, String> {
    let token = expr[from..to].trim();
    let at = from + (expr[from..to].len() - expr[from..to].trim_start().len());
    if token.is_empty() {
        return Err(format!("parse error at byte {from}: empty factor"));
    }
    let cl = params.classes();
    let surface = match token {
        "T" => return Ok(Hilb2Divisor::exceptional()),
        "F" => cl.fiber.clone(),
        "Fp" => cl.fiber_p.clone(),
        "Fq" => cl.fiber_q.clone(),
        "K" => cl.canonical.clone(),
        "k" | "f" => cl.k.clone(),
        _ => {
            if let Some(rest) = token.strip_prefix('e') {
                let idx: usize = rest
                    .parse()
                    .map_err(|_| format!("parse error at byte {at}: unknown name '{token}'"))?;
                if idx >= RANK {
                    return Err(format!("parse error at byte {at}: basis index {idx} out of range"));
                }
                LatticeClass::basis(idx)
            } else if token.starts_with('[') && token.ends_with(']') {
                parse_class(&token[1..token.len() - 1])
                    .map_err(|e| format!("parse error at byte {at}: {e}"))?
            } else {
                return Err(format!("parse error at byte {at}: unknown factor '{token}'"));
            }
        }
    };
    Ok(Hilb2Divisor::from_surface(surface))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn product_parsing() {
        let params = SurfaceParams::new(3, 2).unwrap();
        let cl = params.classes();
        let factors = parse_product("T.T.T.T", &params).unwrap();
        let v = quartic(&factors[0], &factors[1], &factors[2], &factors[3], &cl.canonical, cl.c2());
        assert_eq!(v, rat(-96));

        let factors =
            parse_product("[3,0,0,0,0,0,0,0,0,0].[1,0,0,0,0,0,0,0,0,0].T.T", &params).unwrap();
        let v = quartic(&factors[0], &factors[1], &factors[2], &factors[3], &cl.canonical, cl.c2());
        assert_eq!(v, rat(-24));

        let factors = parse_product("e0 . e1 . e2 . T", &params).unwrap();
        let v = quartic(&factors[0], &factors[1], &factors[2], &factors[3], &cl.canonical, cl.c2());
        assert_eq!(v, rat(0));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let params = SurfaceParams::new(3, 2).unwrap();
        let err = parse_product("T.T.T", &params).unwrap_err();
        assert!(err.contains("four factors"));
        let err = parse_product("T.T.T.X", &params).unwrap_err();
        assert!(err.contains("byte 6"), "got: {err}");
        let err = parse_product("T.T.T.[1,2", &params).unwrap_err();
        assert!(err.contains("unclosed"));
    }

    #[test]
    fn class_parsing() {
        assert!(parse_class("1,2,3").is_err());
        let c = parse_class("3, -1, -1, -1, -1, -1, -1, -1, -1, -1").unwrap();
        assert_eq!(c, crate::lattice::fiber_ray_generator());
        let c = parse_class("1/2,0,0,0,0,0,0,0,0,-3/4").unwrap();
        assert_eq!(c.coord(9), &crate::rational::ratio(-3, 4));
        assert!(parse_class("x,0,0,0,0,0,0,0,0,0").is_err());
    }
}
