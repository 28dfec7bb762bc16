//! Command-line front end. Model settings come from an optional TOML file
//! (`--config`) overlaid with flags; every subcommand prints one JSON value
//! or a CSV table on stdout and diagnostics on stderr.
//!
//! Exit codes: `0` success, `2` bad configuration or usage, `3` numerical
//! failure, `1` I/O failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::copula::{equivalence_check, AmoCopula, Equivalence, JointModel};
use crate::dependence::{empirical_tau, kendall_function, kendall_tau_detail_with, tail_parameters, TailValue};
use crate::distortions::{make_distortion, DistortionFamily, Hazard};
use crate::error::{Error, Result};
use crate::generators::{kendall_function_base, make_generator, GeneratorFamily};
use crate::numerics::{unit_grid, Tolerance};
use crate::sampling::{sample_batch, sample_batch_parallel, tie_frequency, write_csv, RngStream};

#[derive(Debug, Parser)]
#[command(name = "amo", version, about = "Archimedean-based Marshall-Olkin copulas")]
struct Cli {
    #[command(flatten)]
    model: ModelArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Default, Args)]
struct ModelArgs {
    /// TOML file with model settings; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// exponential, clayton, gumbel or frank.
    #[arg(long, global = true)]
    generator: Option<String>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Use G(scale * x) in place of the family's base generator.
    #[arg(long, global = true)]
    scale: Option<f64>,
    /// linear, logshift, sqrtcomplement, sqrtsimple or table1 (optionally name:alpha).
    #[arg(long, global = true)]
    d1: Option<String>,
    #[arg(long, global = true)]
    alpha1: Option<f64>,
    #[arg(long, global = true)]
    d2: Option<String>,
    #[arg(long, global = true)]
    alpha2: Option<f64>,
    /// Systemic hazard: identity or a rate λ for H3(t) = λ t.
    #[arg(long, global = true)]
    hazard3: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// json or csv.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[arg(long, global = true)]
    max_iter: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// C(u, v).
    Eval {
        #[arg(long)]
        u: f64,
        #[arg(long)]
        v: f64,
    },
    /// The frontier curve (u, h(u)).
    Frontier {
        #[arg(long, default_value_t = 99)]
        points: usize,
    },
    /// Kendall's tau of the base and the AMO copula.
    Tau,
    /// Kendall's function of the base and the AMO copula.
    Kendall {
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Tail dependence parameters.
    Tail,
    /// Mass of the singular component, optionally its distribution over time.
    Singular {
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
    },
    /// Distribution-scale survival and distribution values.
    Joint {
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        t2: f64,
    },
    /// Exact samples as CSV plus a summary.
    Sample {
        #[arg(long)]
        n: Option<usize>,
        /// Write the CSV here and the summary to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Split the draw over this many seeded streams.
        #[arg(long, default_value_t = 1)]
        streams: usize,
    },
    /// Whether two configurations describe the same copula.
    Equiv {
        #[arg(long)]
        config_a: PathBuf,
        #[arg(long)]
        config_b: PathBuf,
        #[arg(long, default_value_t = 40)]
        grid: usize,
    },
    /// Kendall's tau for Clayton 2 (standard scaling), Gumbel 1.8 and Frank 4
    /// with D(x) = 1 + x - sqrt(1 + 2x).
    Table1,
}

/// Settings read from a config file.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub generator: Option<String>,
    pub theta: Option<f64>,
    pub scale: Option<f64>,
    pub d1: Option<String>,
    pub alpha1: Option<f64>,
    pub d2: Option<String>,
    pub alpha2: Option<f64>,
    pub hazard3: Option<Hazard3>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub format: Option<String>,
    pub tolerance: Option<ToleranceConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Hazard3 {
    Rate(f64),
    Name(String),
}

#[derive(Debug, Default, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    pub abs_tol: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    fn overlay(mut self, a: &ModelArgs) -> Self {
        macro_rules! take {
            ($($f:ident),*) => { $( if a.$f.is_some() { self.$f = a.$f.clone(); } )* };
        }
        take!(generator, theta, scale, d1, alpha1, d2, alpha2, seed, samples, format);
        if let Some(h) = &a.hazard3 {
            self.hazard3 = Some(match h.parse::<f64>() {
                Ok(r) => Hazard3::Rate(r),
                Err(_) => Hazard3::Name(h.clone()),
            });
        }
        if a.abs_tol.is_some() || a.rel_tol.is_some() || a.max_iter.is_some() {
            let mut t = self.tolerance.unwrap_or_default();
            t.abs_tol = a.abs_tol.or(t.abs_tol);
            t.rel_tol = a.rel_tol.or(t.rel_tol);
            t.max_iter = a.max_iter.or(t.max_iter);
            self.tolerance = Some(t);
        }
        self
    }

    /// The copula described by the generator and distortion settings.
    pub fn copula(&self) -> Result<AmoCopula> {
        let name = self.generator.as_deref().ok_or_else(|| Error::Config("generator: missing".into()))?;
        let family = GeneratorFamily::parse(name, self.theta).map_err(|e| field("generator", e))?;
        let mut g = make_generator(family).map_err(|e| field("theta", e))?;
        if let Some(m) = self.scale {
            g = g.scaled(m).map_err(|e| field("scale", e))?;
        }
        let x_g = g.x_g();
        let dist = |spec: &Option<String>, alpha: Option<f64>, key: &str| {
            let spec = spec.as_deref().ok_or_else(|| Error::Config(format!("{key}: missing")))?;
            let fam = DistortionFamily::parse(spec, alpha).map_err(|e| field(key, e))?;
            make_distortion(fam, x_g).map_err(|e| field(key, e))
        };
        let d1 = dist(&self.d1, self.alpha1, "d1")?;
        let d2 = dist(&self.d2, self.alpha2, "d2")?;
        AmoCopula::new(g, d1, d2)
    }

    pub fn hazard3(&self) -> Result<Hazard> {
        match &self.hazard3 {
            None => Ok(Hazard::identity()),
            Some(Hazard3::Rate(r)) => Hazard::linear(*r).map_err(|e| field("hazard3", e)),
            Some(Hazard3::Name(n)) => {
                let n = n.trim();
                if n.eq_ignore_ascii_case("identity") || n.eq_ignore_ascii_case("id") {
                    return Ok(Hazard::identity());
                }
                let rate = n
                    .strip_prefix("scaled:")
                    .and_then(|r| r.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::Config(format!("hazard3: expected 'identity', a rate or 'scaled:<rate>', got '{n}'")))?;
                Hazard::linear(rate).map_err(|e| field("hazard3", e))
            }
        }
    }

    pub fn joint_model(&self) -> Result<JointModel> {
        self.copula()?.joint_model_with(self.hazard3()?)
    }

    pub fn tolerance(&self) -> Result<Tolerance> {
        let base = Tolerance::quadrature();
        match self.tolerance {
            None => Ok(base),
            Some(t) => Tolerance::new(
                t.abs_tol.unwrap_or(base.abs_tol),
                t.rel_tol.unwrap_or(base.rel_tol),
                t.max_iter.unwrap_or(base.max_iter),
            )
            .map_err(|e| field("tolerance", e)),
        }
    }

    fn output_format(&self, default: Format) -> Result<Format> {
        match self.format.as_deref() {
            None => Ok(default),
            Some(f) if f.eq_ignore_ascii_case("json") => Ok(Format::Json),
            Some(f) if f.eq_ignore_ascii_case("csv") => Ok(Format::Csv),
            Some(f) => Err(Error::Config(format!("format: expected json or csv, got '{f}'"))),
        }
    }
}

fn field(name: &str, e: Error) -> Error {
    match e {
        Error::Config(m) | Error::BadParameter(m) | Error::DomainMismatch(m) => Error::Config(format!("{name}: {m}")),
        other => other,
    }
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn num(x: f64) -> Value {
    let r = round12(x);
    if r.is_finite() {
        json!(r)
    } else if r.is_nan() {
        Value::Null
    } else {
        Value::String(if r > 0.0 { "inf".into() } else { "-inf".into() })
    }
}

/// A rectangular result: rendered as a JSON array of objects or as CSV.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn render(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for r in &self.rows {
                    let cells: Vec<String> = r.iter().map(|x| round12(*x).to_string()).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(())
            }
            Format::Json => {
                let arr: Vec<Value> = self.rows.iter().map(|r| self.object(r)).collect();
                writeln!(out, "{}", Value::Array(arr))
            }
        }
    }

    fn object(&self, r: &[f64]) -> Value {
        let mut m = Map::new();
        for (c, x) in self.columns.iter().zip(r) {
            m.insert((*c).to_string(), num(*x));
        }
        Value::Object(m)
    }
}

fn emit_object(obj: Value, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match (format, &obj) {
        (Format::Csv, Value::Object(m)) => {
            let keys: Vec<&str> = m.keys().map(|k| k.as_str()).collect();
            let vals: Vec<String> = m
                .values()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    Value::Null => String::new(),
                    other => other.to_string(),
                })
                .collect();
            writeln!(out, "{}\n{}", keys.join(","), vals.join(","))
        }
        _ => writeln!(out, "{obj}"),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_numerical() => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let to_out = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let _ = if to_out { write!(out, "{e}") } else { write!(err, "{e}") };
            return if to_out { 0 } else { 2 };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load(args: &ModelArgs) -> Result<RunConfig> {
    let base = match &args.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    Ok(base.overlay(args))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let cfg = load(&cli.model)?;
    match &cli.command {
        Command::Eval { u, v } => {
            let c = cfg.copula()?;
            for (name, x) in [("u", u), ("v", v)] {
                if !(0.0..=1.0).contains(x) {
                    return Err(Error::Config(format!("{name}: {x} not in [0, 1]")));
                }
            }
            let obj = json!({ "u": num(*u), "v": num(*v), "C": num(c.evaluate(*u, *v)), "frontier": num(c.frontier(*u)) });
            emit_object(obj, cfg.output_format(Format::Json)?, out)?;
        }
        Command::Frontier { points } => {
            let c = cfg.copula()?;
            let rows = unit_grid(*points).into_iter().map(|u| vec![u, c.frontier(u)]).collect();
            Table { columns: vec!["u", "h"], rows }.render(cfg.output_format(Format::Csv)?, out)?;
        }
        Command::Tau => {
            let c = cfg.copula()?;
            let t = kendall_tau_detail_with(&c, cfg.tolerance()?)?;
            let obj = json!({ "tau_G": num(t.tau_g), "tau_AMO": num(t.tau_amo), "method": t.method.to_string() });
            emit_object(obj, cfg.output_format(Format::Json)?, out)?;
        }
        Command::Kendall { t, grid } => {
            let c = cfg.copula()?;
            let ts: Vec<f64> = match (t, grid) {
                (Some(t), None) => vec![*t],
                (None, Some(n)) => unit_grid(*n),
                (None, None) => vec![0.5],
                (Some(_), Some(_)) => return Err(Error::Config("kendall: give either --t or --grid".into())),
            };
            let mut rows = Vec::with_capacity(ts.len());
            for t in ts {
                if !(0.0..=1.0).contains(&t) {
                    return Err(Error::Config(format!("t: {t} not in [0, 1]")));
                }
                rows.push(vec![t, kendall_function_base(c.generator(), t)?, kendall_function(&c, t)?]);
            }
            let table = Table { columns: vec!["t", "K_G", "K_AMO"], rows };
            match (cfg.output_format(Format::Json)?, t) {
                (Format::Json, Some(_)) => writeln!(out, "{}", table.object(&table.rows[0]))?,
                (f, _) => table.render(f, out)?,
            }
        }
        Command::Tail => {
            let c = cfg.copula()?;
            let r = tail_parameters(&c);
            let val = |t: TailValue| t.value().map(num).unwrap_or(Value::String("undetermined".into()));
            let obj = json!({
                "lambda_L": val(r.lambda_lower),
                "lambda_U": val(r.lambda_upper),
                "lower_branch": r.lower_branch,
                "upper_branch": r.upper_branch,
                "lower_dominating": r.lower_dominating,
                "upper_dominating": r.upper_dominating,
                "beta_lower": r.beta_lower.map(num),
                "beta_upper": r.beta_upper.map(num),
            });
            emit_object(obj, cfg.output_format(Format::Json)?, out)?;
        }
        Command::Singular { grid, t_max } => {
            let c = cfg.copula()?;
            let tol = cfg.tolerance()?;
            let mass = c.singular_mass_with(tol)?;
            let mut obj = json!({ "mass": num(mass) });
            if let Some(n) = grid {
                if !(*t_max > 0.0) {
                    return Err(Error::Config(format!("t-max: must be positive, got {t_max}")));
                }
                let m = c.joint_model_with(cfg.hazard3()?)?;
                let mut curve = Vec::new();
                for i in 1..=*n {
                    let t = t_max * i as f64 / *n as f64;
                    curve.push(json!({
                        "t": num(t),
                        "singular": num(m.singular_component_with(t, tol)?),
                        "both_failed": num(m.both_failed_by(t)),
                    }));
                }
                obj["curve"] = Value::Array(curve);
            }
            writeln!(out, "{obj}")?;
        }
        Command::Joint { t1, t2 } => {
            if !(*t1 >= 0.0 && *t2 >= 0.0) {
                return Err(Error::Config("t1, t2: must be non-negative".into()));
            }
            let m = cfg.joint_model()?;
            let s = m.joint_survival(*t1, *t2);
            let (s1, s2) = (m.margin_survival(1, *t1)?, m.margin_survival(2, *t2)?);
            let obj = json!({
                "t1": num(*t1),
                "t2": num(*t2),
                "survival": num(s),
                "margin1": num(s1),
                "margin2": num(s2),
                "cdf": num((1.0 - s1 - s2 + s).clamp(0.0, 1.0)),
                "both_failed_by_max": num(m.both_failed_by(t1.max(*t2))),
            });
            emit_object(obj, cfg.output_format(Format::Json)?, out)?;
        }
        Command::Sample { n, out: path, streams } => {
            let m = cfg.joint_model()?;
            let n = n.or(cfg.samples).unwrap_or(10_000);
            let seed = cfg.seed.unwrap_or(0);
            let s = if *streams > 1 {
                sample_batch_parallel(&m, n, seed, *streams)?
            } else {
                sample_batch(&m, n, &mut RngStream::new(seed))?
            };
            let summary = json!({
                "n": n,
                "seed": seed,
                "empirical_tau": if n >= 2 { num(empirical_tau(&s)?) } else { Value::Null },
                "tie_frequency": num(tie_frequency(&s)),
            });
            match path {
                Some(p) => {
                    let f = fs::File::create(p)?;
                    let mut w = std::io::BufWriter::new(f);
                    write_csv(&mut w, &s)?;
                    w.flush()?;
                    writeln!(out, "{summary}")?;
                }
                None => {
                    write_csv(&mut *out, &s)?;
                    eprintln!("{summary}");
                }
            }
        }
        Command::Equiv { config_a, config_b, grid } => {
            let a = RunConfig::from_file(config_a)?.copula()?;
            let b = RunConfig::from_file(config_b)?.copula()?;
            let obj = match equivalence_check(&a, &b, *grid) {
                Equivalence::Equivalent { m } => json!({ "result": "equivalent", "m": num(m) }),
                Equivalence::Distinct { u, v, gap } => {
                    json!({ "result": "distinct", "u": num(u), "v": num(v), "gap": num(gap) })
                }
            };
            writeln!(out, "{obj}")?;
        }
        Command::Table1 => {
            let tol = cfg.tolerance()?;
            let mut rows = Vec::new();
            for (family, scale) in
                [(GeneratorFamily::Clayton(2.0), 2.0), (GeneratorFamily::Gumbel(1.8), 1.0), (GeneratorFamily::Frank(4.0), 1.0)]
            {
                let g = make_generator(family)?.scaled(scale)?;
                let d = make_distortion(DistortionFamily::Table1, g.x_g())?;
                let c = AmoCopula::new(g, d.clone(), d)?;
                let t = kendall_tau_detail_with(&c, tol)?;
                rows.push(json!({
                    "generator": family.name(),
                    "theta": family.parameter().map(num),
                    "tau_G": num(t.tau_g),
                    "tau_AMO": num(t.tau_amo),
                    "method": t.method.to_string(),
                }));
            }
            writeln!(out, "{}", Value::Array(rows))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["amo"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rounding() {
        assert_eq!(round12(0.1234567890123456), 0.123456789012);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn eval_margin() {
        let (code, out, _) = run_str(&["eval", "--u", "0.5", "--v", "1", "--generator", "clayton", "--theta", "2", "--d1", "table1", "--d2", "table1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["C"], json!(0.5));
    }

    #[test]
    fn config_errors_exit_two() {
        let (code, _, err) = run_str(&["tau", "--generator", "clayton", "--d1", "table1", "--d2", "table1"]);
        assert_eq!(code, 2);
        assert!(err.contains("generator"), "{err}");
        let (code, _, err) = run_str(&["tau", "--generator", "clayton", "--theta", "2", "--d1", "linear", "--d2", "table1"]);
        assert_eq!(code, 2);
        assert!(err.contains("d1"), "{err}");
        let (code, _, _) = run_str(&["nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn numerical_failure_exits_three() {
        let (code, _, _) = run_str(&["tau", "--generator", "frank", "--theta", "4", "--d1", "table1", "--d2", "table1", "--max-iter", "1"]);
        assert_eq!(code, 3);
    }
}
