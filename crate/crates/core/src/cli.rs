//! Command-line front end. Argument parsing lives here so the binary stays a
//! thin wrapper and the commands can be exercised from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Complex, Float, Integer};
use serde_json::{json, Value};

use crate::conjugates::{build_extended_classes, cartan_order, run, ClassFieldJob, JobResult};
use crate::error::{invalid, Error, Result};
use crate::modfunc::{
    catalog, check_icosahedral, check_klein_relation, ModularFunction, PrecisionConfig,
};
use crate::modgroup::{cached_cosets, default_cache_dir, CosetTable};
use crate::quadforms::{enumerate_reduced, CMOrder, QuadraticForm};

#[derive(Debug, Parser)]
#[command(
    name = "cmconj",
    version,
    about = "Galois conjugates and class polynomials of modular function values at CM points"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the irreducible polynomial of f(tau_O) over Q.
    Compute(ComputeArgs),
    /// Check the icosahedral and Klein-form identities at a point.
    Validate(ValidateArgs),
    /// Dump reduced forms, coset representatives and the extended class grid.
    Table(TableArgs),
    /// List the available modular functions.
    Catalog(CatalogArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    /// Directory for cached coset tables (default: $CMCONJ_CACHE_DIR or ~/.cache/cmconj).
    #[arg(long, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Do not read or write cached coset tables.
    #[arg(long, conflicts_with = "cache_dir")]
    pub no_cache: bool,
}

impl CacheArgs {
    fn dir(&self) -> Option<PathBuf> {
        if self.no_cache {
            None
        } else {
            self.cache_dir.clone().or_else(default_cache_dir)
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Discriminant D of the order (negative, 0 or 1 mod 4, not -3 or -4).
    #[arg(long, allow_hyphen_values = true)]
    pub disc: String,
    /// Level N.
    #[arg(long)]
    pub level: u64,
    /// Function name, see `catalog`.
    #[arg(long, default_value = "rogers-ramanujan")]
    pub function: String,
    /// Target precision in bits.
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    /// Include the conjugate values.
    #[arg(long)]
    pub conjugates: bool,
    /// Include the extended class grid.
    #[arg(long)]
    pub table: bool,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Point of the upper half-plane, e.g. `i`, `2i`, `0.3+1.7i`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: String,
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub disc: String,
    #[arg(long)]
    pub level: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub cache: CacheArgs,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

/// What a command prints and how the process should exit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn failure(e: &Error) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

/// A fully parsed `compute` request.
#[derive(Clone, Debug)]
pub struct JobRequest {
    pub discriminant: Integer,
    pub level: u64,
    pub function: ModularFunction,
    pub precision_bits: u32,
    pub output_format: OutputFormat,
    pub emit_conjugates: bool,
    pub emit_table: bool,
    pub cache_dir: Option<PathBuf>,
}

impl JobRequest {
    pub fn from_args(args: &ComputeArgs) -> Result<Self> {
        Ok(JobRequest {
            discriminant: parse_disc(&args.disc)?,
            level: args.level,
            function: ModularFunction::parse(&args.function)?,
            precision_bits: args.precision,
            output_format: args.format,
            emit_conjugates: args.conjugates,
            emit_table: args.table,
            cache_dir: args.cache.dir(),
        })
    }

    pub fn job(&self) -> Result<ClassFieldJob> {
        if self.precision_bits < 16 {
            return Err(invalid("precision must be at least 16 bits"));
        }
        let job = ClassFieldJob::new(
            self.discriminant.clone(),
            self.level,
            self.function,
            PrecisionConfig::with_target(self.precision_bits),
        )?;
        Ok(job.with_cache_dir(self.cache_dir.clone()))
    }
}

fn parse_disc(s: &str) -> Result<Integer> {
    Integer::from_str_radix(s.trim(), 10)
        .map_err(|_| invalid(format!("malformed discriminant '{s}'")))
}

pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Compute(a) => JobRequest::from_args(a).and_then(|req| cmd_compute(&req)),
        Command::Validate(a) => return cmd_validate(&a.point, a.precision, a.format),
        Command::Table(a) => parse_disc(&a.disc)
            .and_then(|d| cmd_table(&d, a.level, a.format, a.cache.dir().as_deref())),
        Command::Catalog(a) => Ok(cmd_catalog(a.format)),
    };
    match result {
        Ok(stdout) => Outcome::ok(stdout),
        Err(e) => Outcome::failure(&e),
    }
}

/// Parses and runs a command line; `args` includes the program name.
pub fn run_cli<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

fn decimal_digits(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 1
}

fn decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(digits))
}

fn residual_string(x: &Float) -> String {
    decimal(x, 6)
}

fn form_strings(q: &QuadraticForm) -> Value {
    json!([q.a().to_string(), q.b().to_string(), q.c().to_string()])
}

pub fn compute_json(res: &JobResult, emit_conjugates: bool, emit_table: bool) -> Value {
    let digits = decimal_digits(res.precision.target_bits);
    let mut root = json!({
        "input": {
            "disc": res.discriminant.to_string(),
            "level": res.level,
            "function": res.function.name(),
            "precision_bits": res.requested_bits,
        },
        "class_data": {
            "h": res.forms.len(),
            "m": res.coset_count,
            "class_count": res.class_count,
            "forms": res.forms.iter().map(form_strings).collect::<Vec<_>>(),
            "cartan": { "W": res.cartan.w, "T": res.cartan.t, "quotient": res.cartan.quotient },
        },
        "polynomial": {
            "p": res.p,
            "irr": res.irr,
            "ell": res.ell,
            "degree": res.irr.degree().unwrap_or(0),
            "max_rounding_residual": residual_string(&res.max_rounding_residual),
        },
        "verification": {
            "irr_at_tau_residual": residual_string(&res.irr_at_tau_residual),
            "irr_at_conjugates_residual": residual_string(&res.max_irr_at_conjugates_residual),
            "reality_shortcut": res.reality_shortcut,
            "precision_bits_used": res.precision.target_bits,
            "power_check": "passed",
        },
    });
    let obj = root.as_object_mut().expect("object");
    if emit_conjugates {
        let list: Vec<Value> = res
            .conjugates
            .iter()
            .map(|d| {
                json!({
                    "i": d.rep.i + 1,
                    "k": d.rep.k + 1,
                    "form": form_strings(&d.rep.form),
                    "matrix": d.lifted.entries().map(|x| x.to_string()),
                    "value": { "re": decimal(d.value.real(), digits), "im": decimal(d.value.imag(), digits) },
                })
            })
            .collect();
        obj.insert("conjugates".into(), Value::Array(list));
    }
    if emit_table {
        let grid: Vec<Value> = res
            .conjugates
            .iter()
            .map(|d| json!({"i": d.rep.i + 1, "k": d.rep.k + 1, "form": form_strings(&d.rep.form)}))
            .collect();
        obj.insert("table".into(), Value::Array(grid));
    }
    root
}

pub fn compute_text(res: &JobResult, emit_conjugates: bool, emit_table: bool) -> String {
    let digits = decimal_digits(res.precision.target_bits).min(40);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "D = {}, N = {}, f = {}, precision = {} bits",
        res.discriminant, res.level, res.function, res.requested_bits
    );
    let _ = writeln!(s, "tau_O = {}", res.tau);
    let _ = writeln!(s, "reduced forms (h = {}):", res.forms.len());
    for (i, q) in res.forms.iter().enumerate() {
        let _ = writeln!(s, "  Q{} = {q}", i + 1);
    }
    let _ = writeln!(s, "coset representatives: m = {}", res.coset_count);
    let _ = writeln!(s, "extended classes: |S| = {}", res.class_count);
    let _ = writeln!(
        s,
        "cartan check: |W| = {}, |T| = {}, h * |W/T| = {} (ok)",
        res.cartan.w,
        res.cartan.t,
        res.forms.len() as u64 * res.cartan.quotient
    );
    if emit_table {
        let _ = writeln!(s, "extended class grid:");
        for d in &res.conjugates {
            let _ = writeln!(
                s,
                "  (i={}, k={})  {}",
                d.rep.i + 1,
                d.rep.k + 1,
                d.rep.form
            );
        }
    }
    if emit_conjugates {
        let _ = writeln!(s, "conjugates:");
        for d in &res.conjugates {
            let _ = writeln!(
                s,
                "  (i={}, k={})  f({} applied to {}) = {} + {}i",
                d.rep.i + 1,
                d.rep.k + 1,
                d.lifted,
                d.eval_point,
                decimal(d.value.real(), digits),
                decimal(d.value.imag(), digits)
            );
        }
    }
    let _ = writeln!(
        s,
        "f(tau_O) = {} + {}i",
        decimal(res.tau_value.real(), digits),
        decimal(res.tau_value.imag(), digits)
    );
    let _ = writeln!(s, "p(x) = {}", res.p);
    let _ = writeln!(
        s,
        "p coefficients (ascending): [{}]",
        res.p.to_decimal_strings().join(", ")
    );
    let _ = writeln!(s, "irr(x) = {}", res.irr);
    let _ = writeln!(
        s,
        "irr coefficients (ascending): [{}]",
        res.irr.to_decimal_strings().join(", ")
    );
    let _ = writeln!(
        s,
        "degree = {}, ell = {} (power check passed)",
        res.irr.degree().unwrap_or(0),
        res.ell
    );
    let _ = writeln!(
        s,
        "max rounding residual = {}",
        residual_string(&res.max_rounding_residual)
    );
    let _ = writeln!(
        s,
        "|irr(f(tau_O))| = {}",
        residual_string(&res.irr_at_tau_residual)
    );
    let _ = writeln!(
        s,
        "max |irr(conjugate)| = {}",
        residual_string(&res.max_irr_at_conjugates_residual)
    );
    let _ = writeln!(s, "reality shortcut = {}", res.reality_shortcut);
    let _ = writeln!(s, "precision used = {} bits", res.precision.target_bits);
    s
}

pub fn cmd_compute(req: &JobRequest) -> Result<String> {
    let res = run(&req.job()?)?;
    Ok(match req.output_format {
        OutputFormat::Text => compute_text(&res, req.emit_conjugates, req.emit_table),
        OutputFormat::Json => {
            to_json_string(&compute_json(&res, req.emit_conjugates, req.emit_table))
        }
    })
}

fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Parses `i`, `2i`, `-0.4+0.9i`, `1.5e-3i`, `0.25` and similar.
pub fn parse_point(s: &str, prec: u32) -> Result<Complex> {
    let bad = || invalid(format!("malformed point '{s}'"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let parse = |x: &str| -> Result<Float> {
        let v = Float::parse(x).map_err(|_| bad())?;
        Ok(Float::with_val(prec, v))
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::with_val(prec, (parse(&t)?, 0)));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("", body),
    };
    let im = match im {
        "" | "+" => Float::with_val(prec, 1),
        "-" => Float::with_val(prec, -1),
        x => parse(x)?,
    };
    let re = if re.is_empty() {
        Float::new(prec)
    } else {
        parse(re)?
    };
    Ok(Complex::with_val(prec, (re, im)))
}

pub fn cmd_validate(point: &str, precision: u32, format: OutputFormat) -> Outcome {
    let cfg = PrecisionConfig::with_target(precision);
    let checked = cfg.validate().and_then(|_| {
        let tau = parse_point(point, cfg.working_bits())?;
        if !tau.imag().is_finite() || *tau.imag() <= 0 {
            return Err(invalid(format!(
                "point '{point}' is not in the upper half-plane"
            )));
        }
        Ok((
            check_icosahedral(&tau, &cfg)?,
            check_klein_relation(&tau, &cfg)?,
        ))
    });
    let (ico, klein) = match checked {
        Ok(v) => v,
        Err(e) => return Outcome::failure(&e),
    };
    let threshold = 2f64.powf(-(precision as f64) / 2.0);
    let pass = ico < threshold && klein < threshold;
    let stdout = match format {
        OutputFormat::Text => format!(
            "point = {point}\nicosahedral residual = {ico:.3e}\nklein relation residual = {klein:.3e}\nthreshold = {threshold:.3e}\nresult = {}\n",
            if pass { "pass" } else { "FAIL" }
        ),
        OutputFormat::Json => to_json_string(&json!({
            "point": point,
            "precision_bits": precision,
            "icosahedral_residual": format!("{ico:.6e}"),
            "klein_relation_residual": format!("{klein:.6e}"),
            "threshold": format!("{threshold:.6e}"),
            "pass": pass,
        })),
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if pass { 0 } else { 4 },
    }
}

/// Reduced forms, coset table and the extended class grid for `(D, N)`.
pub struct TableData {
    pub forms: Vec<QuadraticForm>,
    pub cosets: CosetTable,
    /// `(i, k, Q_i^(γ_k), passes the gcd filter)`.
    pub grid: Vec<(usize, usize, QuadraticForm, bool)>,
    pub class_count: usize,
    pub cartan: crate::conjugates::CartanOrder,
}

pub fn table_data(
    disc: &Integer,
    level: u64,
    cache_dir: Option<&std::path::Path>,
) -> Result<TableData> {
    if level == 0 {
        return Err(invalid("level must be positive"));
    }
    let order = CMOrder::new(disc.clone())?;
    let forms = enumerate_reduced(disc)?;
    let cosets = cached_cosets(level, cache_dir);
    let classes = build_extended_classes(&order, &cosets)?;
    let cartan = cartan_order(&order, level)?;
    let n = Integer::from(level);
    let mut grid = Vec::new();
    for (i, q) in forms.iter().enumerate() {
        for (k, g) in cosets.reps().iter().enumerate() {
            let f = q.act(g);
            let pass = Integer::from(f.a().gcd_ref(&n)) == 1;
            grid.push((i, k, f, pass));
        }
    }
    Ok(TableData {
        forms,
        cosets,
        grid,
        class_count: classes.len(),
        cartan,
    })
}

pub fn cmd_table(
    disc: &Integer,
    level: u64,
    format: OutputFormat,
    cache_dir: Option<&std::path::Path>,
) -> Result<String> {
    let t = table_data(disc, level, cache_dir)?;
    Ok(match format {
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "D = {disc}, N = {level}");
            let _ = writeln!(s, "reduced forms (h = {}):", t.forms.len());
            for (i, q) in t.forms.iter().enumerate() {
                let _ = writeln!(s, "  Q{} = {q}", i + 1);
            }
            let _ = writeln!(s, "coset representatives (m = {}):", t.cosets.len());
            for (k, g) in t.cosets.reps().iter().enumerate() {
                let _ = writeln!(s, "  gamma{} = {g}", k + 1);
            }
            let _ = writeln!(s, "transformed forms:");
            for (i, k, f, pass) in &t.grid {
                let _ = writeln!(
                    s,
                    "  Q{}^gamma{} = {f}  {}",
                    i + 1,
                    k + 1,
                    if *pass { "in S" } else { "excluded" }
                );
            }
            let _ = writeln!(s, "|S| = {}", t.class_count);
            let _ = writeln!(
                s,
                "cartan: |W| = {}, |T| = {}, h * |W/T| = {}",
                t.cartan.w,
                t.cartan.t,
                t.forms.len() as u64 * t.cartan.quotient
            );
            s
        }
        OutputFormat::Json => to_json_string(&json!({
            "disc": disc.to_string(),
            "level": level,
            "forms": t.forms.iter().map(form_strings).collect::<Vec<_>>(),
            "cosets": t.cosets.reps().iter().map(|g| g.entries().map(|x| x.to_string())).collect::<Vec<_>>(),
            "grid": t.grid.iter().map(|(i, k, f, pass)| json!({"i": i + 1, "k": k + 1, "form": form_strings(f), "in_s": pass})).collect::<Vec<_>>(),
            "class_count": t.class_count,
            "cartan": { "W": t.cartan.w, "T": t.cartan.t, "quotient": t.cartan.quotient },
        })),
    })
}

pub fn cmd_catalog(format: OutputFormat) -> String {
    let entries = catalog();
    match format {
        OutputFormat::Text => {
            let mut s = String::new();
            for e in &entries {
                let _ = writeln!(s, "{:<34} level {:<3} rational coefficients: {:<20} {}", e.name, e.level, e.rational_coefficients, e.description);
            }
            s
        }
        OutputFormat::Json => to_json_string(&Value::Array(
            entries
                .iter()
                .map(|e| json!({"name": e.name, "level": e.level, "rational_coefficients": e.rational_coefficients, "description": e.description}))
                .collect(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> (f64, f64) {
        let z = parse_point(s, 64).unwrap();
        (z.real().to_f64(), z.imag().to_f64())
    }

    #[test]
    fn point_parser() {
        assert_eq!(pt("i"), (0.0, 1.0));
        assert_eq!(pt("2i"), (0.0, 2.0));
        assert_eq!(pt("0.3+1.7i"), (0.3, 1.7));
        assert_eq!(pt("-0.4+0.9i"), (-0.4, 0.9));
        assert_eq!(pt("0.5-i"), (0.5, -1.0));
        assert_eq!(pt("1e-3+2e-3i"), (1e-3, 2e-3));
        assert_eq!(pt(" 1 + i "), (1.0, 1.0));
        assert_eq!(pt("0.25"), (0.25, 0.0));
        assert!(parse_point("", 64).is_err());
        assert!(parse_point("x+i", 64).is_err());
        assert!(parse_point("1+2j", 64).is_err());
    }

    #[test]
    fn catalog_lists_functions() {
        let text = cmd_catalog(OutputFormat::Text);
        assert!(text.contains("rogers-ramanujan") && text.contains("klein-quotient"));
        let v: Value = serde_json::from_str(&cmd_catalog(OutputFormat::Json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
    }

    #[test]
    fn excluded_discriminant_exits_2() {
        let out = run_cli([
            "cmconj",
            "compute",
            "--disc",
            "-3",
            "--level",
            "5",
            "--function",
            "rogers-ramanujan",
            "--no-cache",
        ]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("-3, -4"));
    }
}
