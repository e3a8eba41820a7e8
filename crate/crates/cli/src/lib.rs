//! Argument parsing and dispatch for the `metabelian` binary.
//!
//! [`run`] never prints; it returns the exit code and both output streams so
//! that the whole output is written once, after the computation finished.

use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use metabelian::algebra::{AlgebraContext, ContextKind};
use metabelian::codim::{
    self, brute_force_codimension_with, codim_table, codimension_intersection_with,
    codimension_join_with, codimension_with, hwv_check, multiplicity_report, ComputeOptions,
    OracleLimits,
};
use metabelian::variety::{classify_intersection_with, nilpotency_certificate_with};
use metabelian::words::{self, FiniteWord, WordSpec};
use metabelian::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "metabelian",
    version,
    about = "Word-indexed metabelian algebras: words, codimensions, growth"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format; csv is only available for codim-table.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// Largest degree an algebra product may reach.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_degree: usize,
    /// Intercept for every mechanical spec, overriding the one in the spec.
    #[arg(long, global = true, value_parser = parse_rho)]
    pub rho: Option<Ratio<i64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A word spec, or `free` for the algebra without word relations.
#[derive(Debug, Clone)]
pub enum CtxArg {
    Free,
    Word(WordSpec),
}

impl FromStr for CtxArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "free" {
            Ok(CtxArg::Free)
        } else {
            parse_spec(s).map(CtxArg::Word)
        }
    }
}

fn parse_spec(s: &str) -> Result<WordSpec, String> {
    words::parse_spec(s).map_err(|e| e.to_string())
}

fn parse_rho(s: &str) -> Result<Ratio<i64>, String> {
    Ratio::from_str(s).map_err(|e| format!("not a rational number: {e}"))
}

fn parse_word(s: &str) -> Result<FiniteWord, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First n letters of a word.
    WordPrefix {
        #[arg(long, value_parser = parse_spec)]
        spec: WordSpec,
        #[arg(long)]
        n: usize,
    },
    /// Number of distinct factors of length n.
    WordComplexity {
        #[arg(long, value_parser = parse_spec)]
        spec: WordSpec,
        #[arg(long)]
        n: usize,
    },
    /// Slope of the word, and of its length-n prefix when --n is given.
    WordSlope {
        #[arg(long, value_parser = parse_spec)]
        spec: WordSpec,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Balance constant over factors of length up to n, and the slope
    /// deviation check with that constant.
    WordBalance {
        #[arg(long, value_parser = parse_spec)]
        spec: WordSpec,
        #[arg(long)]
        n: usize,
    },
    /// Least length at which two words share no factor.
    WordDisjoint {
        #[arg(long, value_parser = parse_spec)]
        a: WordSpec,
        #[arg(long, value_parser = parse_spec)]
        b: WordSpec,
        #[arg(long)]
        maxn: usize,
    },
    /// Dimension of the degree-n component of an algebra.
    AlgebraDim {
        #[arg(long)]
        ctx: CtxArg,
        #[arg(long)]
        n: usize,
    },
    /// Codimension c_n.
    Codim {
        #[arg(long)]
        ctx: CtxArg,
        #[arg(long)]
        n: usize,
        /// Use the unreduced matrix over all monomials.
        #[arg(long)]
        oracle: bool,
        /// Longest tail substituted by the oracle.
        #[arg(long, default_value_t = 2, requires = "oracle")]
        tail_bound: usize,
    },
    /// Codimensions c_1, ..., c_nmax.
    CodimTable {
        /// Repeat for the intersection of several varieties.
        #[arg(long, required = true)]
        ctx: Vec<CtxArg>,
        #[arg(long)]
        nmax: usize,
    },
    /// c_n of the intersection of several varieties.
    CodimIntersect {
        #[arg(long, num_args = 1.., required = true)]
        ctx: Vec<CtxArg>,
        #[arg(long)]
        n: usize,
        /// Report the variety generated by the direct sum instead.
        #[arg(long)]
        join: bool,
    },
    /// Evaluates a highest weight vector (index 0 is g0).
    Hwv {
        #[arg(long)]
        ctx: CtxArg,
        #[arg(long)]
        n: usize,
        /// Comb spine of length n - 2, as a bit string.
        #[arg(long, value_parser = parse_word, default_value = "")]
        spine: FiniteWord,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, default_value_t = codim::hwv::DEFAULT_PROBE_LEN)]
        probe_len: usize,
    },
    /// Multiplicities of (n) and (n-1,1) per comb spine.
    Multiplicity {
        #[arg(long)]
        ctx: CtxArg,
        #[arg(long)]
        n: usize,
        /// Only this spine; default: every admitted spine.
        #[arg(long, value_parser = parse_word)]
        spine: Option<FiniteWord>,
    },
    /// Growth classification over 3 <= n <= nmax.
    Classify {
        #[arg(long, required = true)]
        ctx: Vec<CtxArg>,
        #[arg(long)]
        nmax: usize,
    },
    /// Nilpotency certificate for the intersection of two word varieties.
    Certify {
        #[arg(long, value_parser = parse_spec)]
        a: WordSpec,
        #[arg(long, value_parser = parse_spec)]
        b: WordSpec,
        #[arg(long)]
        maxn: usize,
        #[arg(long)]
        check_rank: bool,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Run<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => Outcome::ok(text),
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(out) => Outcome::ok(out),
        Err(Failure::Usage(msg)) => Outcome::fail(EXIT_USAGE, msg),
        Err(Failure::Domain(e)) => Outcome::fail(EXIT_DOMAIN, e),
    }
}

fn with_rho(spec: &WordSpec, g: &Global) -> Run<WordSpec> {
    match (spec, g.rho) {
        (_, None) => Ok(spec.clone()),
        (WordSpec::Mechanical { alpha, .. }, Some(rho)) => Ok(WordSpec::mechanical(*alpha, rho)?),
        (WordSpec::ExplicitPeriodic(_), Some(_)) => {
            Err(Failure::Usage(format!("--rho does not apply to {spec}")))
        }
    }
}

fn context(arg: &CtxArg, g: &Global) -> Run<AlgebraContext> {
    Ok(match arg {
        CtxArg::Free => AlgebraContext::free(g.max_degree)?,
        CtxArg::Word(spec) => AlgebraContext::quotient(with_rho(spec, g)?, g.max_degree)?,
    })
}

fn contexts(args: &[CtxArg], g: &Global) -> Run<Vec<AlgebraContext>> {
    args.iter().map(|a| context(a, g)).collect()
}

fn ctx_name(ctx: &AlgebraContext) -> String {
    match ctx.kind() {
        ContextKind::FreeA => "free".into(),
        ContextKind::Quotient(spec) => spec.to_string(),
    }
}

fn json_out(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Run<String> {
    let g = &cli.global;
    let opts = ComputeOptions {
        threads: g.threads.into(),
    };
    let csv_ok = matches!(cli.command, Command::CodimTable { .. });
    if g.format == Format::Csv && !csv_ok {
        return Err(Failure::Usage(
            "--format csv is only available for codim-table".into(),
        ));
    }

    let value: Value = match &cli.command {
        Command::WordPrefix { spec, n } => {
            let spec = with_rho(spec, g)?;
            json!({ "spec": spec.to_string(), "n": n, "prefix": words::prefix(&spec, *n).to_string() })
        }
        Command::WordComplexity { spec, n } => {
            let spec = with_rho(spec, g)?;
            let factors = words::factors(&spec, *n)?;
            json!({
                "spec": spec.to_string(),
                "n": n,
                "complexity": factors.len(),
                "factors": factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        }
        Command::WordSlope { spec, n } => {
            let spec = with_rho(spec, g)?;
            let mut v = json!({
                "spec": spec.to_string(),
                "slope": words::slope_limit(&spec).to_string(),
                "irrational": spec.is_sturmian(),
            });
            if let Some(n) = n {
                let p = words::prefix(&spec, *n);
                v["n"] = json!(n);
                v["prefix_height"] = json!(p.height());
                v["prefix_slope"] = json!(words::slope_finite(&p)?.to_string());
            }
            v
        }
        Command::WordBalance { spec, n } => {
            let spec = with_rho(spec, g)?;
            let c = words::balance_constant(&spec, *n)?;
            json!({
                "spec": spec.to_string(),
                "n": n,
                "balance_constant": c,
                "slope_deviation_within_constant": words::slope_deviation_check(&spec, *n, c)?,
            })
        }
        Command::WordDisjoint { a, b, maxn } => {
            let (a, b) = (with_rho(a, g)?, with_rho(b, g)?);
            json!({
                "a": a.to_string(),
                "b": b.to_string(),
                "maxn": maxn,
                "m": words::disjointness_degree(&a, &b, *maxn)?,
            })
        }
        Command::AlgebraDim { ctx, n } => {
            let ctx = context(ctx, g)?;
            let dim = ctx.graded_dimension(*n)?;
            let dim = u64::try_from(&dim).map_or_else(|_| json!(dim.to_string()), |d| json!(d));
            json!({ "ctx": ctx_name(&ctx), "n": n, "dimension": dim })
        }
        Command::Codim {
            ctx,
            n,
            oracle,
            tail_bound,
        } => {
            let ctx = context(ctx, g)?;
            let r = if *oracle {
                brute_force_codimension_with(&ctx, *n, *tail_bound, OracleLimits::default(), opts)?
            } else {
                codimension_with(&ctx, *n, opts)?
            };
            serde_json::to_value(r).expect("serializable")
        }
        Command::CodimTable { ctx, nmax } => {
            let table = codim_table(&contexts(ctx, g)?, *nmax, opts)?;
            if g.format == Format::Csv {
                return Ok(codim::render_csv(&table));
            }
            serde_json::to_value(table).expect("serializable")
        }
        Command::CodimIntersect { ctx, n, join } => {
            let ctxs = contexts(ctx, g)?;
            let r = if *join {
                codimension_join_with(&ctxs, *n, opts)?
            } else {
                codimension_intersection_with(&ctxs, *n, opts)?
            };
            serde_json::to_value(r).expect("serializable")
        }
        Command::Hwv {
            ctx,
            n,
            spine,
            index,
            probe_len,
        } => {
            let ctx = context(ctx, g)?;
            serde_json::to_value(hwv_check(&ctx, *n, spine, *index, *probe_len)?)
                .expect("serializable")
        }
        Command::Multiplicity { ctx, n, spine } => {
            let ctx = context(ctx, g)?;
            let spines = match spine {
                Some(s) => vec![s.clone()],
                None => ctx.admitted_words(n.saturating_sub(2))?,
            };
            let rows = spines
                .iter()
                .map(|s| {
                    let m = multiplicity_report(&ctx, *n, s)?;
                    Ok(json!({ "spine": s.to_string(), "m_row": m.m_row, "m_hook": m.m_hook }))
                })
                .collect::<Run<Vec<_>>>()?;
            json!({ "ctx": ctx_name(&ctx), "n": n, "spines": rows })
        }
        Command::Classify { ctx, nmax } => {
            let ctxs = contexts(ctx, g)?;
            let report = classify_intersection_with(&ctxs, *nmax, opts)?;
            let mut v = serde_json::to_value(report).expect("serializable");
            v["contexts"] = json!(ctxs.iter().map(ctx_name).collect::<Vec<_>>());
            v
        }
        Command::Certify {
            a,
            b,
            maxn,
            check_rank,
        } => {
            let (a, b) = (with_rho(a, g)?, with_rho(b, g)?);
            serde_json::to_value(nilpotency_certificate_with(
                &a,
                &b,
                *maxn,
                *check_rank,
                opts,
            )?)
            .expect("serializable")
        }
    };
    Ok(json_out(&value))
}
