//! The `polyterm` command line: parse polynomials, run the Diophantine
//! reduction, build and serialize gadget rewrite systems, check
//! interpretations, and run the bounded searches.
//!
//! Every command is a pure function of its arguments and input files.
//! Exit codes: 0 when the command succeeds (a witness, certificate, or
//! requested output was produced), 1 for an honest negative (nothing
//! found up to the bound, or an interpretation that fails to orient),
//! 2 for malformed input. `--json` switches the report to a stable
//! machine-readable schema. The environment variable `POLYTERM_SEED` is
//! reserved and currently unused: all searches are exhaustive and
//! deterministic, so there is nothing to seed.

use std::fmt::Display;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use polyterm::interp::{InterpError, OrientError};
use polyterm::poly::parse_polynomial;
use polyterm::trs::TrsError;
use polyterm::{
    build_qr_trs, build_single_rule_trs, extract_witness, hilbert_pipeline, linear_interp_search,
    minimal_h, serialize_trs, trs_from_json_str, witness_search, EncodingSig, Interpretation,
    MinimalHError, Polynomial, Rat, SearchConfig, Trs, TrsFormat, VarNames, Verdict, Witness,
};

const EXIT_OK: i32 = 0;
const EXIT_NONE: i32 = 1;
const EXIT_INPUT: i32 = 2;

#[derive(Parser)]
#[command(
    name = "polyterm",
    version,
    about = "Polynomial termination gadgets: reductions, encodings, searches",
    after_help = "Polynomials use ordinary text such as \"x^2 + 2*x - 6\" or \"3*x1*x2^2\"; \
any identifier is an indeterminate, and -P/-Q share one indeterminate space per invocation.\n\
POLYTERM_SEED is reserved and unused: searches are exhaustive, not randomized."
)]
struct Cli {
    /// Emit machine-readable JSON instead of the human report.
    #[arg(long, global = true)]
    json: bool,
    /// TOML file with default bounds (bound, coeff-bound, hmax, threads,
    /// delta); explicit flags win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduce root-finding for -R to witness searches, one per sign vector.
    Reduce(ReduceArgs),
    /// Encode a positive-coefficient polynomial as a term.
    Encode(EncodeArgs),
    /// Build a gadget rewrite system for a (P, Q) comparison.
    Build(BuildArgs),
    /// Check an interpretation file against a rewrite system file.
    Check(CheckArgs),
    /// Run one of the bounded searches directly.
    Search(SearchArgs),
    /// Smallest integer h orienting the eight-rule system for (P, Q, v).
    #[command(name = "minimal-h")]
    MinimalH(MinimalHArgs),
}

#[derive(Args)]
struct ReduceArgs {
    /// Integer polynomial whose roots are sought.
    #[arg(short = 'R', value_name = "POLY")]
    r: String,
    /// Largest witness entry to try (default 10).
    #[arg(long)]
    bound: Option<u64>,
    /// Worker threads; the output is identical for every value.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct EncodeArgs {
    /// Positive-coefficient polynomial to encode.
    #[arg(short = 'P', value_name = "POLY")]
    p: String,
    /// Name of the spine variable in the printed term.
    #[arg(long, default_value = "y")]
    var: String,
}

#[derive(Args)]
struct BuildArgs {
    /// Which gadget to build.
    #[arg(value_enum)]
    kind: BuildKind,
    #[arg(short = 'P', value_name = "POLY")]
    p: String,
    #[arg(short = 'Q', value_name = "POLY")]
    q: String,
    /// Serialization format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    /// One rule; linear ℕ interpretations decide P(v⃗) ≥ Q(v⃗).
    Single,
    /// Eight rules for interpretations over the nonnegative rationals.
    Qr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tpdb,
}

#[derive(Args)]
struct CheckArgs {
    /// Rewrite system, in the JSON schema `build` emits.
    #[arg(long, value_name = "FILE")]
    trs: String,
    /// Interpretation, in the JSON schema `search linear --json` emits.
    #[arg(long, value_name = "FILE")]
    interp: String,
}

#[derive(Args)]
struct SearchArgs {
    #[command(subcommand)]
    kind: SearchCmd,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Smallest point of {1..bound}ⁿ with P ≥ Q.
    Witness(WitnessArgs),
    /// First bounded linear monotone ℕ interpretation orienting a system.
    Linear(LinearArgs),
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(short = 'P', value_name = "POLY")]
    p: String,
    #[arg(short = 'Q', value_name = "POLY")]
    q: String,
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Args)]
struct LinearArgs {
    /// Rewrite system file; alternatively give -P and -Q to search the
    /// single-rule gadget for that comparison.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["p", "q"])]
    trs: Option<String>,
    #[arg(short = 'P', value_name = "POLY", requires = "q")]
    p: Option<String>,
    #[arg(short = 'Q', value_name = "POLY", requires = "p")]
    q: Option<String>,
    /// Largest interpretation coefficient to try (default 2).
    #[arg(long = "coeff-bound")]
    coeff_bound: Option<u64>,
}

#[derive(Args)]
struct MinimalHArgs {
    #[arg(short = 'P', value_name = "POLY")]
    p: String,
    #[arg(short = 'Q', value_name = "POLY")]
    q: String,
    /// Comma-separated witness entries, e.g. "1" or "2,3".
    #[arg(long, value_name = "LIST")]
    witness: String,
    /// Margin of the strict order (default 1).
    #[arg(long)]
    delta: Option<String>,
    /// Largest h to try (default 64).
    #[arg(long)]
    hmax: Option<u64>,
}

/// Defaults file: same keys as the flags; flags win.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    bound: Option<u64>,
    #[serde(alias = "coeff-bound")]
    coeff_bound: Option<u64>,
    hmax: Option<u64>,
    threads: Option<usize>,
    delta: Option<String>,
}

/// Everything a command needs beyond its own flags.
struct Ctx {
    json: bool,
    defaults: FileConfig,
}

impl Ctx {
    fn bound(&self, flag: Option<u64>) -> u64 {
        flag.or(self.defaults.bound).unwrap_or(10)
    }

    fn coeff_bound(&self, flag: Option<u64>) -> u64 {
        flag.or(self.defaults.coeff_bound).unwrap_or(2)
    }

    fn hmax(&self, flag: Option<u64>) -> u64 {
        flag.or(self.defaults.hmax).unwrap_or(64)
    }

    fn threads(&self, flag: Option<usize>) -> usize {
        flag.or(self.defaults.threads).unwrap_or(1)
    }

    fn delta(&self, flag: Option<&str>) -> Result<Rat, Failure> {
        let text = flag
            .map(str::to_string)
            .or_else(|| self.defaults.delta.clone())
            .unwrap_or_else(|| "1".to_string());
        let poly = parse_named(&text, &mut VarNames::new())?;
        let constant = poly
            .terms()
            .iter()
            .all(|m| m.is_constant())
            .then(|| poly.constant_term());
        constant.ok_or_else(|| input_error(format!("delta must be a constant, got `{}`", text)))
    }
}

/// A command aborted with this exit code after printing `message`.
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: String) -> Failure {
    Failure { code: EXIT_INPUT, message }
}

/// Runs the command line against the given output streams and returns
/// the process exit code. Panics anywhere below are caught and reported
/// as internal errors with exit code 2.
pub fn run(args: &[&str], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = catch_unwind(AssertUnwindSafe(|| run_inner(args, &mut *out, &mut *err)));
    match result {
        Ok(code) => code,
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            let _ = writeln!(err, "internal error: {}", message);
            EXIT_INPUT
        }
    }
}

fn run_inner(args: &[&str], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", rendered);
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", rendered);
                    EXIT_INPUT
                }
            };
        }
    };

    let defaults = match load_config(cli.config.as_deref()) {
        Ok(defaults) => defaults,
        Err(failure) => {
            let _ = writeln!(err, "{}", failure.message);
            return failure.code;
        }
    };
    let ctx = Ctx { json: cli.json, defaults };

    let outcome = match &cli.command {
        Cmd::Reduce(args) => cmd_reduce(&ctx, args, out),
        Cmd::Encode(args) => cmd_encode(&ctx, args, out),
        Cmd::Build(args) => cmd_build(args, out),
        Cmd::Check(args) => cmd_check(&ctx, args, out),
        Cmd::Search(args) => match &args.kind {
            SearchCmd::Witness(args) => cmd_search_witness(&ctx, args, out),
            SearchCmd::Linear(args) => cmd_search_linear(&ctx, args, out),
        },
        Cmd::MinimalH(args) => cmd_minimal_h(&ctx, args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "{}", failure.message);
            failure.code
        }
    }
}

fn load_config(path: Option<&str>) -> Result<FileConfig, Failure> {
    let Some(path) = path else { return Ok(FileConfig::default()) };
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("cannot read config `{}`: {}", path, e)))?;
    toml::from_str(&text).map_err(|e| input_error(format!("bad config `{}`: {}", path, e)))
}

fn parse_named(text: &str, names: &mut VarNames) -> Result<Polynomial, Failure> {
    parse_polynomial(text, names)
        .map_err(|e| input_error(format!("bad polynomial `{}`: {}", text, e)))
}

fn emit(out: &mut dyn Write, value: impl Display) {
    let _ = writeln!(out, "{}", value);
}

fn signs_text(signs: &[i8]) -> String {
    let parts: Vec<String> = signs
        .iter()
        .map(|&s| if s > 0 { "+1".to_string() } else { s.to_string() })
        .collect();
    format!("({})", parts.join(","))
}

fn cmd_reduce(ctx: &Ctx, args: &ReduceArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut names = VarNames::new();
    let r = parse_named(&args.r, &mut names)?;
    let cfg = SearchConfig {
        witness_bound: ctx.bound(args.bound),
        threads: ctx.threads(args.threads),
        ..SearchConfig::default()
    };
    let report = hilbert_pipeline(&r, &cfg).map_err(|e| input_error(e.to_string()))?;

    if ctx.json {
        let branches: Vec<serde_json::Value> = report
            .branches
            .iter()
            .map(|b| {
                json!({
                    "signs": b.signs.entries(),
                    "p": b.p.to_text(&names),
                    "q": b.q.to_text(&names),
                    "witness": b.witness.as_ref().map(Witness::values),
                })
            })
            .collect();
        let doc = json!({
            "r": r.to_text(&names),
            "bound": report.bound,
            "verdict": match report.verdict {
                Verdict::WitnessFound => "witness-found",
                Verdict::NoneUpToBound => "none-up-to-bound",
            },
            "branches": branches,
        });
        emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        emit(
            out,
            format!(
                "R = {} over {} indeterminate(s), entries 1..{}",
                r.to_text(&names),
                r.arity(),
                report.bound
            ),
        );
        for branch in &report.branches {
            let label = signs_text(branch.signs.entries());
            match &branch.witness {
                Some(w) => emit(out, format!("branch {}: witness v = {}", label, w)),
                None => emit(out, format!("branch {}: none up to bound", label)),
            }
        }
        emit(out, format!("verdict: {}", report.verdict));
    }
    Ok(match report.verdict {
        Verdict::WitnessFound => EXIT_OK,
        Verdict::NoneUpToBound => EXIT_NONE,
    })
}

fn cmd_encode(ctx: &Ctx, args: &EncodeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut names = VarNames::new();
    let p = parse_named(&args.p, &mut names)?;
    let vhat_names: Vec<String> = (0..p.arity()).map(|v| names.name(v)).collect();
    let enc = EncodingSig::new(&vhat_names)
        .map_err(|e: TrsError| input_error(e.to_string()))?;
    let term = enc
        .encode_poly(&p, 0)
        .map_err(|e| input_error(e.to_string()))?;
    let shell = Trs::new(enc.signature().clone(), Vec::new(), vec![args.var.clone()])
        .expect("no rules to validate");
    let text = shell.display_term(&term);

    if ctx.json {
        let doc = json!({
            "polynomial": p.to_text(&names),
            "variable": args.var,
            "term": text,
        });
        emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        emit(out, text);
    }
    Ok(EXIT_OK)
}

fn cmd_build(args: &BuildArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut names = VarNames::new();
    let p = parse_named(&args.p, &mut names)?;
    let q = parse_named(&args.q, &mut names)?;
    let trs = match args.kind {
        BuildKind::Single => build_single_rule_trs(&p, &q),
        BuildKind::Qr => build_qr_trs(&p, &q),
    }
    .map_err(|e| input_error(e.to_string()))?;
    let format = match args.format {
        Format::Json => TrsFormat::Json,
        Format::Tpdb => TrsFormat::Tpdb,
    };
    emit(out, serialize_trs(&trs, format));
    Ok(EXIT_OK)
}

fn cmd_check(ctx: &Ctx, args: &CheckArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let trs_text = std::fs::read_to_string(&args.trs)
        .map_err(|e| input_error(format!("cannot read `{}`: {}", args.trs, e)))?;
    let interp_text = std::fs::read_to_string(&args.interp)
        .map_err(|e| input_error(format!("cannot read `{}`: {}", args.interp, e)))?;
    let trs = trs_from_json_str(&trs_text)
        .map_err(|e| input_error(format!("bad rewrite system `{}`: {}", args.trs, e)))?;
    let interp = Interpretation::from_json_str(&interp_text)
        .map_err(|e| input_error(format!("bad interpretation `{}`: {}", args.interp, e)))?;

    interp
        .validate(trs.signature())
        .map_err(|e: InterpError| input_error(e.to_string()))?;

    let rule_names = VarNames::from_names(trs.var_names());
    if !interp.is_monotone(trs.signature()) {
        let message = "interpretation is not monotone in every argument";
        if ctx.json {
            let doc = json!({ "oriented": false, "monotone": false, "failure": message });
            emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
        } else {
            emit(out, message);
        }
        return Ok(EXIT_NONE);
    }

    match interp.orients_all(&trs) {
        Ok(certs) => {
            if ctx.json {
                let rules: Vec<serde_json::Value> = certs
                    .iter()
                    .map(|c| {
                        json!({
                            "rule": c.rule_index,
                            "difference": c.difference.to_text(&rule_names),
                            "delta": c.delta.to_string(),
                        })
                    })
                    .collect();
                let doc = json!({ "oriented": true, "monotone": true, "rules": rules });
                emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                emit(out, format!("orients all {} rule(s)", certs.len()));
                for cert in &certs {
                    emit(
                        out,
                        format!(
                            "  rule {}: difference {} (margin {})",
                            cert.rule_index,
                            cert.difference.to_text(&rule_names),
                            cert.delta
                        ),
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Err(OrientError::NotOriented(fail)) => {
            if ctx.json {
                let doc = json!({
                    "oriented": false,
                    "monotone": true,
                    "failure": fail.to_string(),
                });
                emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                emit(out, format!("does not orient: {}", fail));
            }
            Ok(EXIT_NONE)
        }
        Err(OrientError::Eval(e)) => Err(input_error(e.to_string())),
    }
}

fn cmd_search_witness(ctx: &Ctx, args: &WitnessArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut names = VarNames::new();
    let p = parse_named(&args.p, &mut names)?;
    let q = parse_named(&args.q, &mut names)?;
    let bound = ctx.bound(args.bound);
    let witness = witness_search(&p, &q, bound).map_err(|e| input_error(e.to_string()))?;

    if ctx.json {
        let doc = json!({
            "bound": bound,
            "witness": witness.as_ref().map(Witness::values),
        });
        emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        match &witness {
            Some(w) => emit(out, format!("witness v = {} with P(v) >= Q(v)", w)),
            None => emit(out, format!("none up to bound {}", bound)),
        }
    }
    Ok(if witness.is_some() { EXIT_OK } else { EXIT_NONE })
}

fn cmd_search_linear(ctx: &Ctx, args: &LinearArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let trs = match (&args.trs, &args.p, &args.q) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| input_error(format!("cannot read `{}`: {}", path, e)))?;
            trs_from_json_str(&text)
                .map_err(|e| input_error(format!("bad rewrite system `{}`: {}", path, e)))?
        }
        (None, Some(p_text), Some(q_text)) => {
            let mut names = VarNames::new();
            let p = parse_named(p_text, &mut names)?;
            let q = parse_named(q_text, &mut names)?;
            build_single_rule_trs(&p, &q).map_err(|e| input_error(e.to_string()))?
        }
        _ => {
            return Err(input_error(
                "give either --trs FILE or both -P and -Q".to_string(),
            ))
        }
    };
    let cfg = SearchConfig {
        coeff_bound: ctx.coeff_bound(args.coeff_bound),
        ..SearchConfig::default()
    };
    let found = linear_interp_search(&trs, &cfg);

    if ctx.json {
        let doc = json!({
            "coeff_bound": cfg.coeff_bound,
            "interpretation": found.as_ref().map(|i| {
                serde_json::from_str::<serde_json::Value>(&i.to_json_string())
                    .expect("interpretation serializes to valid JSON")
            }),
        });
        emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        match &found {
            Some(interp) => {
                emit(out, format!("orienting interpretation found over {}", interp.domain()));
                for (name, poly) in interp.iter() {
                    emit(out, format!("  [{}] = {}", name, poly));
                }
                if let Ok(w) = extract_witness(interp) {
                    emit(out, format!("extracted witness v = {}", w));
                }
            }
            None => emit(
                out,
                format!("no interpretation with coefficients <= {}", cfg.coeff_bound),
            ),
        }
    }
    Ok(if found.is_some() { EXIT_OK } else { EXIT_NONE })
}

fn cmd_minimal_h(ctx: &Ctx, args: &MinimalHArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut names = VarNames::new();
    let p = parse_named(&args.p, &mut names)?;
    let q = parse_named(&args.q, &mut names)?;
    let entries: Result<Vec<u64>, _> = args
        .witness
        .split(',')
        .map(|part| part.trim().parse::<u64>())
        .collect();
    let entries =
        entries.map_err(|e| input_error(format!("bad witness `{}`: {}", args.witness, e)))?;
    let witness =
        Witness::new(entries).map_err(|e: InterpError| input_error(e.to_string()))?;
    let delta = ctx.delta(args.delta.as_deref())?;
    let hmax = ctx.hmax(args.hmax);

    match minimal_h(&p, &q, &witness, delta, hmax) {
        Ok(h) => {
            if ctx.json {
                let doc = json!({ "h": h, "hmax": hmax });
                emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                emit(out, format!("h = {} orients all eight rules", h));
            }
            Ok(EXIT_OK)
        }
        Err(MinimalHError::Exhausted { hmax }) => {
            if ctx.json {
                let doc = json!({ "h": serde_json::Value::Null, "hmax": hmax });
                emit(out, serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                emit(out, format!("no h up to {}", hmax));
            }
            Ok(EXIT_NONE)
        }
        Err(MinimalHError::Precondition { reason }) => Err(input_error(reason)),
    }
}
