//! Command-line front end.
//!
//! Exit codes: `0` success, `1` an identity check failed, `2` usage or
//! input error, `3` internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use crate::characters::{weyl_character, weyl_dimension, CharacterCache};
use crate::error::{Error, Result};
use crate::euler::{factorization_check, synthetic_unitary_data, EulerInput};
use crate::rootdata::{root_datum, CartanType, Weight};
use crate::symalg::{rat, UniPoly};
use crate::whittaker::{cs_whittaker_value, Group};
use crate::zeta::{
    abelian_lfactor_poly, standard_lfactor_poly, verify_gln_identity, verify_sl2_identity,
    verify_sp2n_identity_with, VerificationReport, DEFAULT_ORDER,
};

pub const CACHE_ENV: &str = "SP2N_ZETA_CACHE_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "sp2n-zeta", version, about = "Exact checks of the unramified Sp(2n) x GL(1) zeta integral")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,

    /// Character cache root (defaults to $SP2N_ZETA_CACHE_DIR, then ~/.cache/sp2n-zeta).
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,

    /// Keep computed characters in memory only.
    #[arg(long, global = true)]
    pub no_cache: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify a local generating-function identity exactly.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Print the Weyl character of an irreducible representation.
    Character {
        #[arg(long = "type", value_parser = parse_cartan)]
        cartan_type: CartanType,
        #[arg(long, visible_alias = "n")]
        rank: usize,
        /// Highest weight in epsilon-coordinates, e.g. `2,0` (halves as `1/2`).
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Spherical Whittaker value on a torus cocharacter.
    Whittaker {
        #[arg(long, value_parser = parse_group, default_value = "sp2n")]
        group: Group,
        #[arg(long, visible_alias = "rank")]
        n: usize,
        #[arg(long, value_parser = parse_weight, allow_hyphen_values = true)]
        weight: Weight,
    },
    /// Print a local L-factor denominator as a polynomial in y.
    Lfactor {
        #[arg(long, value_enum, default_value = "standard")]
        kind: LfactorKind,
        #[arg(long, visible_alias = "rank", default_value_t = 1)]
        n: usize,
    },
    /// Numeric Euler-product factorization check.
    Euler(EulerArgs),
    /// Inspect or clear the character cache.
    Cache {
        #[command(subcommand)]
        action: CacheCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Sp(2n) x GL(1) local unramified integral.
    Sp2n {
        #[arg(long, visible_alias = "rank")]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// Also fail (exit 1) unless the denominator matches L(4s-1, chi).
        #[arg(long)]
        paper_claim: bool,
        /// Specialize chi(varpi) = 1 before comparing the second factor.
        #[arg(long)]
        trivial_chi: bool,
    },
    /// GL(n) x GL(1) Hecke integral.
    Gln {
        #[arg(long, visible_alias = "rank")]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// SL(2) x GL(1) integral (the n = 1 case).
    Sl2 {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LfactorKind {
    /// det(1 - A y)
    Standard,
    /// 1 - chi(varpi) y
    Chi,
    /// 1 - chi(varpi)^2 y
    Chi2,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    /// Input file with per-prime Satake data.
    #[arg(long, required_unless_present = "generate")]
    pub input: Option<PathBuf>,
    /// Complex point as `re[,im]`.
    #[arg(long, value_parser = parse_complex, default_value = "2.0")]
    pub s: Complex64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Exit 1 if |lhs - rhs| under the chi^2 reading exceeds this.
    #[arg(long, default_value_t = 1e-9)]
    pub max_err: f64,
    /// Print a seeded synthetic input file instead of running the check.
    #[arg(long)]
    pub generate: bool,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
    pub primes: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CacheCommand {
    Clear,
    Stats,
}

fn parse_cartan(s: &str) -> std::result::Result<CartanType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group(s: &str) -> std::result::Result<Group, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Comma-separated coordinates; integers or halves (`k/2`). Returned doubled.
pub fn parse_weight(s: &str) -> std::result::Result<Weight, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.split_once('/') {
                Some((num, "2")) => num.trim().parse::<i64>().map_err(|e| e.to_string()),
                Some(_) => Err(format!("only halves are allowed, got `{t}`")),
                None => t.parse::<i64>().map(|k| 2 * k).map_err(|e| e.to_string()),
            }
        })
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Weight)
}

/// `re` or `re,im`.
pub fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let mut parts = s.split(',');
    let re = parts
        .next()
        .unwrap_or_default()
        .trim()
        .parse::<f64>()
        .map_err(|e| e.to_string())?;
    let im = match parts.next() {
        Some(t) => t.trim().parse::<f64>().map_err(|e| e.to_string())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err("expected `re[,im]`".into());
    }
    Ok(Complex64::new(re, im))
}

fn default_cache_root() -> Option<PathBuf> {
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("sp2n-zeta"))
}

fn weight_coords(w: &Weight) -> Vec<String> {
    w.0.iter()
        .map(|&c| if c % 2 == 0 { (c / 2).to_string() } else { format!("{c}/2") })
        .collect()
}

fn poly_json(p: &UniPoly) -> serde_json::Value {
    json!({
        "var": p.var(),
        "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn poly_text(p: &UniPoly) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.push_str(&format!("{}^{k}: {c}\n", p.var()));
        }
    }
    out
}

/// Result of one command: rendered output and exit code.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

fn render<T: Serialize>(format: OutputFormat, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable report");
            s.push('\n');
            s
        }
        OutputFormat::Text => text(),
    }
}

fn report_outcome(format: OutputFormat, report: &VerificationReport, extra_fail: bool) -> Outcome {
    let code = if report.passed && !extra_fail {
        EXIT_OK
    } else {
        EXIT_IDENTITY_FAILED
    };
    Outcome {
        text: render(format, report, || report.to_text()),
        code,
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let cache = if cli.no_cache {
        CharacterCache::in_memory()
    } else {
        match cli.cache_dir.clone().or_else(default_cache_root) {
            Some(root) => CharacterCache::on_disk(root),
            None => CharacterCache::in_memory(),
        }
    };
    let format = cli.format;

    match &cli.command {
        Command::Verify { which } => match which {
            VerifyCommand::Sp2n {
                n,
                order,
                paper_claim,
                trivial_chi,
            } => {
                let one = rat(1);
                let chi = trivial_chi.then_some(&one);
                let mut report = verify_sp2n_identity_with(*n, *order, &cache, chi)?;
                let mismatch = *paper_claim
                    && !report.chi_power_comparison.is_some_and(|c| c.matches_chi());
                if *paper_claim {
                    report.notes.push(format!(
                        "denominator L(4s-1, chi) reading: {}",
                        if mismatch { "mismatch" } else { "match" }
                    ));
                }
                Ok(report_outcome(format, &report, mismatch))
            }
            VerifyCommand::Gln { n, order } => {
                let report = verify_gln_identity(*n, *order, &cache)?;
                Ok(report_outcome(format, &report, false))
            }
            VerifyCommand::Sl2 { order } => {
                let report = verify_sl2_identity(*order, &cache)?;
                Ok(report_outcome(format, &report, false))
            }
        },
        Command::Character {
            cartan_type,
            rank,
            weight,
        } => {
            let datum = root_datum(*cartan_type, *rank)?;
            datum.check_len(weight)?;
            let chi = if cli.no_cache {
                weyl_character(&datum, weight)?
            } else {
                cache.character(&datum, weight)?.as_ref().clone()
            };
            let dim = weyl_dimension(&datum, weight)?;
            let value = json!({
                "type": cartan_type.to_string(),
                "rank": rank,
                "weight": weight_coords(weight),
                "dimension": dim.to_string(),
                "character": chi.to_string(),
                "record": chi.to_record(),
            });
            Ok(Outcome::ok(render(format, &value, || format!("{chi}\n"))))
        }
        Command::Whittaker { group, n, weight } => {
            let w = cs_whittaker_value(*group, *n, weight, &cache)?;
            let value = json!({
                "group": group.to_string(),
                "n": n,
                "weight": weight_coords(weight),
                "is_zero": w.is_zero,
                "q_exponent2": w.q_exponent2,
                "char_part": w.char_part.to_string(),
            });
            let text = || {
                if w.is_zero {
                    "0\n".to_string()
                } else {
                    format!("q^({}/2) * ({})\n", w.q_exponent2, w.char_part)
                }
            };
            Ok(Outcome::ok(render(format, &value, text)))
        }
        Command::Lfactor { kind, n } => {
            let p = match kind {
                LfactorKind::Standard => standard_lfactor_poly(*n)?,
                LfactorKind::Chi => abelian_lfactor_poly(1)?,
                LfactorKind::Chi2 => abelian_lfactor_poly(2)?,
            };
            let mut value = poly_json(&p);
            value["kind"] = json!(format!("{kind:?}").to_lowercase());
            Ok(Outcome::ok(render(format, &value, || poly_text(&p))))
        }
        Command::Euler(args) => run_euler(args, format, &cache),
        Command::Cache { action } => match action {
            CacheCommand::Clear => {
                cache.clear()?;
                let value = json!({ "cleared": cache.root().map(|p| p.display().to_string()) });
                Ok(Outcome::ok(render(format, &value, || "cache cleared\n".into())))
            }
            CacheCommand::Stats => {
                let stats = cache.stats()?;
                let groups: Vec<_> = stats
                    .groups
                    .iter()
                    .map(|(g, files, bytes)| json!({ "group": g, "files": files, "bytes": bytes }))
                    .collect();
                let value = json!({
                    "root": cache.root().map(|p| p.display().to_string()),
                    "files": stats.files(),
                    "bytes": stats.bytes(),
                    "groups": groups,
                });
                let text = || {
                    let mut t = format!("files: {}\nbytes: {}\n", stats.files(), stats.bytes());
                    for (g, files, bytes) in &stats.groups {
                        t.push_str(&format!("{g}: {files} files, {bytes} bytes\n"));
                    }
                    t
                };
                Ok(Outcome::ok(render(format, &value, text)))
            }
        },
    }
}

fn run_euler(args: &EulerArgs, format: OutputFormat, cache: &CharacterCache) -> Result<Outcome> {
    if args.generate {
        let data = synthetic_unitary_data(args.n, &args.primes, args.seed)?;
        let input = EulerInput::from_data(args.n, &data);
        let mut text = serde_json::to_string_pretty(&input).expect("serializable input");
        text.push('\n');
        return Ok(Outcome::ok(text));
    }
    if !(args.tol > 0.0) {
        return Err(Error::Usage("--tol must be positive".into()));
    }
    let path = args.input.as_ref().expect("clap enforces --input");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
    let input = EulerInput::from_json(&text)?;
    let data = input.to_data()?;
    let result = factorization_check(&data, args.s, args.tol, cache)?;
    let passed = result.abs_err_chi2 < args.max_err;
    let mut value = serde_json::to_value(&result).expect("serializable result");
    value["passed"] = json!(passed);
    value["n"] = json!(input.n);
    let text = || {
        format!(
            "lhs: {} {:+}i\nrhs_chi2: {} {:+}i\nrhs_chi: {} {:+}i\nabs_err_chi2: {:e}\nabs_err_chi: {:e}\npassed: {passed}\n",
            result.lhs.re,
            result.lhs.im,
            result.rhs_chi2.re,
            result.rhs_chi2.im,
            result.rhs_chi.re,
            result.rhs_chi.im,
            result.abs_err_chi2,
            result.abs_err_chi,
        )
    };
    Ok(Outcome {
        text: render(format, &value, text),
        code: if passed { EXIT_OK } else { EXIT_IDENTITY_FAILED },
    })
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.text.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                EXIT_INTERNAL
            } else {
                EXIT_USAGE
            }
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
