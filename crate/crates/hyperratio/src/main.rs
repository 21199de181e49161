//! Command-line front end: certified series evaluation, section/remainder
//! tables, Ramanujan theta verdicts, grid verification, and exact
//! coefficient-ratio certificates.
//!
//! Exit codes: 0 verified, 1 certified violation, 2 bad input (domain,
//! precondition, parse, length, division-by-zero), 3 precision exhausted.
//! Identical invocations produce byte-identical output.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperratio::error::{Error, Result};
use hyperratio::grid::{parse_points, GridSpec};
use hyperratio::kernel::{
    cauchy_product, certify_coeff_monotone, coeff_ratio_sequence, prefix_ratio_monotone,
    shift_weight, shift_weight_ratio_multi, CoeffMonotoneCertificate, CoeffSeq, ConditionReport,
};
use hyperratio::rat::{decimal_string, parse_rat, rat, rat_string, Rat};
use hyperratio::sections::{
    e_power_bounds, ramanujan_theta, ramanujan_theta_literal, ratio_f, remainder, section,
    EPowerBounds, ThetaResult,
};
use hyperratio::series::{
    coeff, eval_1f1, eval_pfq, pochhammer, term_ratio, HyperParams, Precision, SeriesValue,
};
use hyperratio::turan::{
    check_kummer_conditions, check_pfq_conditions, h_kummer, h_pfq, run_checks, AbcParams,
    AbcVecParams, BoundsSpec, CheckSet, CheckTarget, MonotoneReport, MAX_ESCALATIONS,
};
use num_traits::{One, Signed, Zero};

#[derive(Parser)]
#[command(
    name = "hyperratio",
    version,
    about = "Certified evaluation and monotonicity verification of hypergeometric series ratios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Binary working precision in bits (>= 53). Falls back to the
    /// HYPERRATIO_PRECISION_BITS environment variable, then to 128.
    #[arg(long, global = true)]
    precision_bits: Option<u32>,

    /// Relative truncation target in (0, 1), as a rational or decimal
    /// literal (default 1e-30).
    #[arg(long, global = true)]
    target_rel_error: Option<String>,

    /// Output format. Defaults to plain for eval/sections/theta and json for
    /// verify/certify.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Significant digits in rendered decimals.
    #[arg(long, global = true, default_value_t = 30)]
    digits: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a series with a certified error enclosure.
    Eval {
        #[command(subcommand)]
        target: EvalTarget,
    },
    /// Tabulate exponential sections S_n, remainders R_n, and the
    /// adjacent-remainder ratio f_n over a grid.
    Sections {
        /// Section index n.
        #[arg(long)]
        n: u32,
        /// Grid: min:max:points (optionally @log) or explicit comma list.
        #[arg(long)]
        grid: String,
    },
    /// Ramanujan theta values with (1/3, 1/2) bounds verdicts. Exits 1 if
    /// any value is certified out of bounds.
    Theta {
        /// Index or inclusive range, e.g. 7 or 1..500.
        #[arg(long)]
        n: String,
        /// Subtract the remainder R_{n-1}(n) instead of the section
        /// S_{n-1}(n); the classical bounds then fail by design.
        #[arg(long)]
        literal_remainder: bool,
    },
    /// Exact rational brackets 2n^n/(3 n!) + 2 S_{n-1}(n) < e^n <
    /// n^n/n! + 2 S_{n-1}(n), verified against an e^n enclosure. Exits 1 if
    /// any bracket is certified to fail.
    Ebounds {
        /// Index or inclusive range, e.g. 2 or 1..100.
        #[arg(long)]
        n: String,
    },
    /// Exact-rational kernel computations: shift weights, weight ratios,
    /// prefix-sum ratio certificates, and Cauchy product coefficients.
    Kernel {
        #[command(subcommand)]
        op: KernelOp,
    },
    /// Verify monotonicity (plus Turán or bound checks) of a ratio target
    /// over a grid of certified enclosures.
    Verify(VerifyArgs),
    /// Produce an exact coefficient-ratio monotonicity certificate.
    Certify(CertifyArgs),
}

#[derive(Subcommand)]
enum EvalTarget {
    /// Confluent series 1F1(a; b; x).
    #[command(name = "1f1")]
    OneF1 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        x: String,
    },
    /// Generalized series pFq(a; b; x); a and b are comma-separated
    /// rationals (b may be empty).
    Pfq {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "")]
        b: String,
        #[arg(long)]
        x: String,
    },
    /// Exponential section S_n(x), exact.
    Section {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: String,
    },
    /// Exponential remainder R_n(x) = e^x - S_n(x).
    Remainder {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: String,
    },
    /// Rising factorial (z)_n = z (z+1) ... (z+n-1), exact.
    Poch {
        #[arg(long)]
        z: String,
        #[arg(long)]
        n: u32,
    },
    /// Series coefficient prod (a_i)_n / (prod (b_j)_n n!), exact.
    Coeff {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "")]
        b: String,
        #[arg(long)]
        n: u32,
    },
    /// Adjacent-term ratio t_{n+1}/t_n of the series at x, exact for
    /// rational x.
    TermRatio {
        #[arg(long)]
        a: String,
        #[arg(long, default_value = "")]
        b: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: u32,
    },
    /// Shifted-parameter ratio
    /// 1F1(a;b-c;x) 1F1(a;b+c;x) / [1F1(a;b;x)]^2 at a single point.
    H {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        x: String,
    },
    /// Vector-shift ratio pFq(a;b-c;x) pFq(a;b+c;x) / [pFq(a;b;x)]^2 at a
    /// single point; a, b, c are comma-separated rationals.
    Hpq {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        x: String,
    },
}

#[derive(Subcommand)]
enum KernelOp {
    /// Exact shift weight w_{n,k} = (b)_k (b)_{n-k} / ((b-c)_k (b+c)_{n-k}).
    W {
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: u32,
        /// Row position, 0 <= k <= n.
        #[arg(long)]
        k: u32,
    },
    /// Exact adjacent-weight ratio w_{n,k+1}/w_{n,k} in closed form; with
    /// comma-separated b and c the per-coordinate factors are multiplied.
    Wratio {
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        n: u32,
        /// Row position, 0 <= k < n.
        #[arg(long)]
        k: u32,
    },
    /// Certifies, exactly, the monotonicity of the prefix-sum ratios
    /// (num_0 + ... + num_n) / (den_0 + ... + den_n) of two explicit
    /// comma-separated sequences. Exits 1 when the sequence is not monotone.
    Prefix {
        #[arg(long)]
        num: String,
        #[arg(long)]
        den: String,
    },
    /// Exact Cauchy product coefficients of two explicit comma-separated
    /// coefficient sequences (up to the shorter length).
    Cauchy {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: f, g, h, hpq.
    #[arg(long)]
    target: String,
    /// Ratio index for targets f and g.
    #[arg(long)]
    n: Option<u32>,
    /// Upper parameter(s): a rational for h, a comma-separated list for hpq.
    #[arg(long)]
    a: Option<String>,
    /// Lower parameter(s).
    #[arg(long)]
    b: Option<String>,
    /// Shift parameter(s).
    #[arg(long)]
    c: Option<String>,
    /// Grid: min:max:points (optionally @log) or explicit comma list.
    #[arg(long)]
    grid: Option<String>,
    /// Shorthand for a default 129-point logarithmic grid on [0, X].
    #[arg(long)]
    x_max: Option<String>,
    /// Run the checks even when the hypothesis clauses fail.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct CertifyArgs {
    /// Upper parameters, comma-separated rationals.
    #[arg(long)]
    a: String,
    /// Lower parameters, comma-separated rationals.
    #[arg(long)]
    b: String,
    /// Shift parameters, comma-separated rationals (same length as --b).
    #[arg(long)]
    c: String,
    /// Certificate depth: coefficients 0..=N are compared.
    #[arg(long = "N", default_value_t = 64)]
    depth: u32,
    /// Certify even when the hypothesis clauses fail (recorded as forced).
    #[arg(long)]
    force: bool,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Precision { .. } => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: &Cli) -> Result<i32> {
    if cli.digits == 0 {
        return Err(Error::precondition("--digits must be at least 1"));
    }
    let prec = resolve_precision(cli)?;
    let digits = cli.digits;
    match &cli.command {
        Command::Eval { target } => {
            cmd_eval(target, &prec, cli.format.unwrap_or(Format::Plain), digits)
        }
        Command::Sections { n, grid } => {
            cmd_sections(*n, grid, &prec, cli.format.unwrap_or(Format::Plain), digits)
        }
        Command::Theta { n, literal_remainder } => cmd_theta(
            n,
            *literal_remainder,
            &prec,
            cli.format.unwrap_or(Format::Plain),
            digits,
        ),
        Command::Ebounds { n } => {
            cmd_ebounds(n, &prec, cli.format.unwrap_or(Format::Plain))
        }
        Command::Kernel { op } => cmd_kernel(op, cli.format.unwrap_or(Format::Plain)),
        Command::Verify(args) => {
            cmd_verify(args, &prec, cli.format.unwrap_or(Format::Json), digits)
        }
        Command::Certify(args) => {
            cmd_certify(args, cli.format.unwrap_or(Format::Json), digits)
        }
    }
}

/// Precision from `--precision-bits`, else `HYPERRATIO_PRECISION_BITS`, else
/// 128 bits, combined with the `--target-rel-error` (default 1e-30).
fn resolve_precision(cli: &Cli) -> Result<Precision> {
    let bits = match cli.precision_bits {
        Some(bits) => bits,
        None => match std::env::var("HYPERRATIO_PRECISION_BITS") {
            Ok(text) => text.trim().parse::<u32>().map_err(|_| {
                Error::parse(text.clone(), "HYPERRATIO_PRECISION_BITS must be an unsigned integer")
            })?,
            Err(std::env::VarError::NotPresent) => 128,
            Err(std::env::VarError::NotUnicode(_)) => {
                return Err(Error::parse(
                    "HYPERRATIO_PRECISION_BITS",
                    "environment variable is not valid unicode",
                ))
            }
        },
    };
    let target = match &cli.target_rel_error {
        Some(text) => parse_rat(text)?,
        None => Precision::default_target(),
    };
    Precision::new(bits, target)
}

fn emit(text: &str) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    lock.write_all(text.as_bytes()).expect("stdout write failed");
    lock.flush().expect("stdout flush failed");
}

fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("JSON serialization cannot fail");
    text.push('\n');
    text
}

/// Comma-separated rational list; empty or blank input is an empty list.
fn parse_rat_list(text: &str) -> Result<Vec<Rat>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(vec![]);
    }
    trimmed.split(',').map(parse_rat).collect()
}

fn required<'a>(value: &'a Option<String>, flag: &str, target: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::precondition(format!("target {target} requires {flag}")))
}

/// Prints a single exact rational result.
fn emit_exact(value: &Rat, fmt: Format) -> i32 {
    let out = match fmt {
        Format::Plain => format!("value = {value}\n"),
        Format::Json => pretty(&json!({ "value": rat_string(value), "exact": true })),
        Format::Csv => format!("value\n{}\n", rat_string(value)),
    };
    emit(&out);
    0
}

fn cmd_eval(target: &EvalTarget, prec: &Precision, fmt: Format, digits: usize) -> Result<i32> {
    let (x, value) = match target {
        EvalTarget::OneF1 { a, b, x } => {
            let (a, b, x) = (parse_rat(a)?, parse_rat(b)?, parse_rat(x)?);
            let v = eval_1f1(&a, &b, &x, prec)?;
            (x, v)
        }
        EvalTarget::Pfq { a, b, x } => {
            let params = HyperParams::new(parse_rat_list(a)?, parse_rat_list(b)?)?;
            let x = parse_rat(x)?;
            let v = eval_pfq(&params, &x, prec)?;
            (x, v)
        }
        EvalTarget::Section { n, x } => {
            let x = parse_rat(x)?;
            let v = section(*n, &x);
            (x, v)
        }
        EvalTarget::Remainder { n, x } => {
            let x = parse_rat(x)?;
            let v = remainder(*n, &x, prec)?;
            (x, v)
        }
        EvalTarget::Poch { z, n } => {
            let z = parse_rat(z)?;
            return Ok(emit_exact(&pochhammer(&z, *n), fmt));
        }
        EvalTarget::Coeff { a, b, n } => {
            let params = HyperParams::new(parse_rat_list(a)?, parse_rat_list(b)?)?;
            return Ok(emit_exact(&coeff(&params, *n), fmt));
        }
        EvalTarget::TermRatio { a, b, x, n } => {
            let params = HyperParams::new(parse_rat_list(a)?, parse_rat_list(b)?)?;
            let x = parse_rat(x)?;
            if x.is_negative() {
                return Err(Error::domain("argument x must be nonnegative"));
            }
            return Ok(emit_exact(&term_ratio(&params, &x, *n), fmt));
        }
        EvalTarget::H { a, b, c, x } => {
            let params = AbcParams::new(parse_rat(a)?, parse_rat(b)?, parse_rat(c)?)?;
            let x = parse_rat(x)?;
            let v = h_kummer(&params, &x, prec)?;
            (x, v)
        }
        EvalTarget::Hpq { a, b, c, x } => {
            let params =
                AbcVecParams::new(parse_rat_list(a)?, parse_rat_list(b)?, parse_rat_list(c)?)?;
            let x = parse_rat(x)?;
            let v = h_pfq(&params, &x, prec)?;
            (x, v)
        }
    };
    let out = match fmt {
        Format::Plain => format!(
            "value = {}\nerror_radius = {}\nterms_used = {}\n",
            decimal_string(&value.value, digits),
            decimal_string(&value.error_radius, digits),
            value.terms_used
        ),
        Format::Json => pretty(&json!({
            "value": decimal_string(&value.value, digits),
            "error_radius": decimal_string(&value.error_radius, digits),
            "terms_used": value.terms_used,
        })),
        Format::Csv => format!(
            "x,value,error_radius\n{},{},{}\n",
            decimal_string(&x, digits),
            decimal_string(&value.value, digits),
            decimal_string(&value.error_radius, digits)
        ),
    };
    emit(&out);
    Ok(0)
}

fn cmd_sections(n: u32, grid: &str, prec: &Precision, fmt: Format, digits: usize) -> Result<i32> {
    let xs = parse_points(grid)?;
    let with_ratio = n >= 1;
    let mut rows: Vec<(Rat, SeriesValue, SeriesValue, Option<SeriesValue>)> = Vec::new();
    for x in xs {
        let s = section(n, &x);
        let r = remainder(n, &x, prec)?;
        let f = if with_ratio { Some(ratio_f(n, &x, prec)?) } else { None };
        rows.push((x, s, r, f));
    }
    let dec = |q: &Rat| decimal_string(q, digits);
    let out = match fmt {
        Format::Plain => {
            let mut text = if with_ratio {
                format!("x\tS_{n}\tR_{n}\tf_{n}\n")
            } else {
                format!("x\tS_{n}\tR_{n}\n")
            };
            for (x, s, r, f) in &rows {
                write!(text, "{}\t{}\t{}", dec(x), dec(&s.value), dec(&r.value)).unwrap();
                if let Some(f) = f {
                    write!(text, "\t{}", dec(&f.value)).unwrap();
                }
                text.push('\n');
            }
            text
        }
        Format::Csv => {
            let mut text = if with_ratio {
                "x,section,remainder,remainder_error_radius,f,f_error_radius\n".to_string()
            } else {
                "x,section,remainder,remainder_error_radius\n".to_string()
            };
            for (x, s, r, f) in &rows {
                write!(
                    text,
                    "{},{},{},{}",
                    dec(x),
                    dec(&s.value),
                    dec(&r.value),
                    dec(&r.error_radius)
                )
                .unwrap();
                if let Some(f) = f {
                    write!(text, ",{},{}", dec(&f.value), dec(&f.error_radius)).unwrap();
                }
                text.push('\n');
            }
            text
        }
        Format::Json => pretty(&json!({
            "n": n,
            "rows": rows.iter().map(|(x, s, r, f)| json!({
                "x": dec(x),
                "section": dec(&s.value),
                "remainder": dec(&r.value),
                "remainder_error_radius": dec(&r.error_radius),
                "f": f.as_ref().map(|f| dec(&f.value)),
                "f_error_radius": f.as_ref().map(|f| dec(&f.error_radius)),
            })).collect::<Vec<_>>(),
        })),
    };
    emit(&out);
    Ok(0)
}

/// Inclusive index range `lo..hi` or a single index.
fn parse_n_range(text: &str) -> Result<(u32, u32)> {
    let trimmed = text.trim();
    let (lo, hi) = match trimmed.split_once("..") {
        Some((lo, hi)) => {
            let lo: u32 = lo
                .trim()
                .parse()
                .map_err(|_| Error::parse(text, "range start must be an unsigned integer"))?;
            let hi: u32 = hi
                .trim()
                .parse()
                .map_err(|_| Error::parse(text, "range end must be an unsigned integer"))?;
            (lo, hi)
        }
        None => {
            let n: u32 = trimmed
                .parse()
                .map_err(|_| Error::parse(text, "index must be an unsigned integer"))?;
            (n, n)
        }
    };
    if lo < 1 {
        return Err(Error::precondition("index n must be at least 1"));
    }
    if hi < lo {
        return Err(Error::parse(text, "range end must not be below range start"));
    }
    Ok((lo, hi))
}

/// Evaluates theta, escalating precision on straddling enclosures.
fn theta_with_escalation(n: u32, literal: bool, prec: &Precision) -> Result<ThetaResult> {
    let mut level = prec.clone();
    for _ in 0..=MAX_ESCALATIONS {
        let attempt =
            if literal { ramanujan_theta_literal(n, &level) } else { ramanujan_theta(n, &level) };
        match attempt {
            Err(Error::Precision { .. }) => level = level.escalated(),
            other => return other,
        }
    }
    Err(Error::precision(format!(
        "theta({n}) enclosure still straddles a bound after {MAX_ESCALATIONS} escalations"
    )))
}

fn cmd_theta(
    range: &str,
    literal: bool,
    prec: &Precision,
    fmt: Format,
    digits: usize,
) -> Result<i32> {
    let (lo, hi) = parse_n_range(range)?;
    if literal {
        eprintln!(
            "warning: --literal-remainder subtracts the remainder R_{{n-1}}(n) instead of the \
             section S_{{n-1}}(n); the (1/3, 1/2) bounds are expected to fail under this reading"
        );
    }
    let mut rows = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        rows.push(theta_with_escalation(n, literal, prec)?);
    }
    let all_in_bounds = rows.iter().all(|r| r.in_bounds);
    let dec = |q: &Rat| decimal_string(q, digits);
    let out = match fmt {
        Format::Plain => {
            let mut text = String::new();
            for r in &rows {
                writeln!(
                    text,
                    "n = {}: theta = {}, error_radius = {}, in_bounds = {}",
                    r.n,
                    dec(&r.theta),
                    dec(&r.error_radius),
                    r.in_bounds
                )
                .unwrap();
            }
            writeln!(text, "all_in_bounds = {all_in_bounds}").unwrap();
            text
        }
        Format::Csv => {
            let mut text = "n,theta,error_radius,in_bounds\n".to_string();
            for r in &rows {
                writeln!(text, "{},{},{},{}", r.n, dec(&r.theta), dec(&r.error_radius), r.in_bounds)
                    .unwrap();
            }
            text
        }
        Format::Json => pretty(&json!({
            "rows": rows.iter().map(|r| json!({
                "n": r.n,
                "theta": dec(&r.theta),
                "error_radius": dec(&r.error_radius),
                "in_bounds": r.in_bounds,
            })).collect::<Vec<_>>(),
            "all_in_bounds": all_in_bounds,
        })),
    };
    emit(&out);
    Ok(if all_in_bounds { 0 } else { 1 })
}

/// Evaluates the e^n bracket, escalating precision on straddling enclosures.
fn ebounds_with_escalation(n: u32, prec: &Precision) -> Result<EPowerBounds> {
    let mut level = prec.clone();
    for _ in 0..=MAX_ESCALATIONS {
        match e_power_bounds(n, &level) {
            Err(Error::Precision { .. }) => level = level.escalated(),
            other => return other,
        }
    }
    Err(Error::precision(format!(
        "e^{n} enclosure still straddles a bound after {MAX_ESCALATIONS} escalations"
    )))
}

fn cmd_ebounds(range: &str, prec: &Precision, fmt: Format) -> Result<i32> {
    let (lo, hi) = parse_n_range(range)?;
    let mut rows = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        rows.push(ebounds_with_escalation(n, prec)?);
    }
    let all_verified = rows.iter().all(|r| r.verified);
    let out = match fmt {
        Format::Plain => {
            let mut text = String::new();
            for r in &rows {
                writeln!(
                    text,
                    "n = {}: lower = {}, upper = {}, verified = {}",
                    r.n, r.lower, r.upper, r.verified
                )
                .unwrap();
            }
            writeln!(text, "all_verified = {all_verified}").unwrap();
            text
        }
        Format::Csv => {
            let mut text = "n,lower,upper,verified\n".to_string();
            for r in &rows {
                writeln!(
                    text,
                    "{},{},{},{}",
                    r.n,
                    rat_string(&r.lower),
                    rat_string(&r.upper),
                    r.verified
                )
                .unwrap();
            }
            text
        }
        Format::Json => pretty(&json!({
            "rows": rows.iter().map(|r| json!({
                "n": r.n,
                "lower": rat_string(&r.lower),
                "upper": rat_string(&r.upper),
                "verified": r.verified,
            })).collect::<Vec<_>>(),
            "all_verified": all_verified,
        })),
    };
    emit(&out);
    Ok(if all_verified { 0 } else { 1 })
}

fn cmd_kernel(op: &KernelOp, fmt: Format) -> Result<i32> {
    match op {
        KernelOp::W { b, c, n, k } => {
            if *k > *n {
                return Err(Error::precondition("weight position requires k <= n"));
            }
            let (b, c) = (parse_rat(b)?, parse_rat(c)?);
            Ok(emit_exact(&shift_weight(&b, &c, *n, *k)?, fmt))
        }
        KernelOp::Wratio { b, c, n, k } => {
            if *k >= *n {
                return Err(Error::precondition("weight ratio requires k < n"));
            }
            let (b, c) = (parse_rat_list(b)?, parse_rat_list(c)?);
            Ok(emit_exact(&shift_weight_ratio_multi(&b, &c, *n, *k)?, fmt))
        }
        KernelOp::Prefix { num, den } => {
            let num = parse_rat_list(num)?;
            let den = parse_rat_list(den)?;
            if num.len() != den.len() || num.is_empty() {
                return Err(Error::precondition(
                    "--num and --den must be nonempty lists of equal length",
                ));
            }
            let n_max = (num.len() - 1) as u32;
            let mut ratios = Vec::with_capacity(num.len());
            let mut acc_num = Rat::zero();
            let mut acc_den = Rat::zero();
            for (a, b) in num.iter().zip(&den) {
                acc_num += a;
                acc_den += b;
                if acc_den.is_zero() {
                    return Err(Error::precondition("prefix sums of --den must be nonzero"));
                }
                ratios.push(&acc_num / &acc_den);
            }
            let num_seq = CoeffSeq::new("numerator sequence", move |i| num[i as usize].clone());
            let den_seq = CoeffSeq::new("denominator sequence", move |i| den[i as usize].clone());
            let cert = prefix_ratio_monotone(&num_seq, &den_seq, n_max)?;
            let out = match fmt {
                Format::Plain => {
                    let mut text = format!(
                        "prefix_ratios = {}\n",
                        ratios.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                    );
                    writeln!(text, "direction = {}", cert.direction.as_str()).unwrap();
                    writeln!(text, "holds = {}", cert.holds).unwrap();
                    writeln!(text, "strict = {}", cert.strict).unwrap();
                    if let Some(v) = &cert.first_violation {
                        writeln!(
                            text,
                            "violation: index = {}, lhs = {}, rhs = {}",
                            v.index,
                            rat_string(&v.lhs),
                            rat_string(&v.rhs)
                        )
                        .unwrap();
                    }
                    text
                }
                Format::Csv => {
                    let mut text = "n,prefix_ratio\n".to_string();
                    for (i, r) in ratios.iter().enumerate() {
                        writeln!(text, "{},{}", i, rat_string(r)).unwrap();
                    }
                    text
                }
                Format::Json => pretty(&json!({
                    "prefix_ratios": ratios.iter().map(rat_string).collect::<Vec<_>>(),
                    "certificate": cert.to_json(),
                })),
            };
            emit(&out);
            Ok(if cert.holds { 0 } else { 1 })
        }
        KernelOp::Cauchy { c1, c2 } => {
            let c1 = parse_rat_list(c1)?;
            let c2 = parse_rat_list(c2)?;
            if c1.is_empty() || c2.is_empty() {
                return Err(Error::precondition("--c1 and --c2 must be nonempty lists"));
            }
            let product = cauchy_product(&c1, &c2);
            let out = match fmt {
                Format::Plain => {
                    let mut text = String::new();
                    for (n, v) in product.iter().enumerate() {
                        writeln!(text, "n = {n}: {v}").unwrap();
                    }
                    text
                }
                Format::Csv => {
                    let mut text = "n,coefficient\n".to_string();
                    for (n, v) in product.iter().enumerate() {
                        writeln!(text, "{},{}", n, rat_string(v)).unwrap();
                    }
                    text
                }
                Format::Json => pretty(&json!({
                    "coefficients": product.iter().map(rat_string).collect::<Vec<_>>(),
                })),
            };
            emit(&out);
            Ok(0)
        }
    }
}

struct VerifySetup {
    target: CheckTarget,
    checks: CheckSet,
    conditions: Option<ConditionReport>,
    default_max: Rat,
    /// Vector target whose stated domain is [0, 1) although the series is
    /// entire; grids beyond 1 get labeled.
    beyond_domain_eligible: bool,
}

fn verify_setup(args: &VerifyArgs) -> Result<VerifySetup> {
    let reject_params = |target: &str| -> Result<()> {
        if args.a.is_some() || args.b.is_some() || args.c.is_some() {
            return Err(Error::precondition(format!(
                "target {target} takes --n, not --a/--b/--c"
            )));
        }
        Ok(())
    };
    match args.target.as_str() {
        "f" => {
            reject_params("f")?;
            let n = args
                .n
                .ok_or_else(|| Error::precondition("target f requires --n"))?;
            let lower = rat(i64::from(n) + 1, i64::from(n) + 2);
            Ok(VerifySetup {
                target: CheckTarget::RatioF(n),
                checks: CheckSet {
                    monotone: true,
                    turan: false,
                    bounds: Some(BoundsSpec { lower, upper: Rat::one() }),
                },
                conditions: None,
                default_max: rat(100, 1),
                beyond_domain_eligible: false,
            })
        }
        "g" => {
            reject_params("g")?;
            let n = args
                .n
                .ok_or_else(|| Error::precondition("target g requires --n"))?;
            Ok(VerifySetup {
                target: CheckTarget::RatioG(n),
                checks: CheckSet { monotone: true, turan: true, bounds: None },
                conditions: None,
                default_max: rat(100, 1),
                beyond_domain_eligible: false,
            })
        }
        "h" => {
            if args.n.is_some() {
                return Err(Error::precondition("target h takes --a/--b/--c, not --n"));
            }
            let a = parse_rat(required(&args.a, "--a", "h")?)?;
            let b = parse_rat(required(&args.b, "--b", "h")?)?;
            let c = parse_rat(required(&args.c, "--c", "h")?)?;
            let params = AbcParams::new(a, b, c)?;
            let conditions = Some(check_kummer_conditions(&params));
            Ok(VerifySetup {
                target: CheckTarget::HKummer(params),
                checks: CheckSet { monotone: true, turan: true, bounds: None },
                conditions,
                default_max: rat(100, 1),
                beyond_domain_eligible: false,
            })
        }
        "hpq" => {
            if args.n.is_some() {
                return Err(Error::precondition("target hpq takes --a/--b/--c, not --n"));
            }
            let a = parse_rat_list(required(&args.a, "--a", "hpq")?)?;
            let b = parse_rat_list(required(&args.b, "--b", "hpq")?)?;
            let c = parse_rat_list(required(&args.c, "--c", "hpq")?)?;
            let params = AbcVecParams::new(a, b, c)?;
            let conditions = Some(check_pfq_conditions(&params));
            let unit = params.needs_unit_interval();
            Ok(VerifySetup {
                target: CheckTarget::HPfq(params),
                checks: CheckSet { monotone: true, turan: true, bounds: None },
                conditions,
                default_max: if unit { rat(99, 100) } else { rat(100, 1) },
                beyond_domain_eligible: !unit,
            })
        }
        other => Err(Error::parse(other, "target must be one of f, g, h, hpq")),
    }
}

fn conditions_plain(report: &ConditionReport) -> String {
    let mut text = format!("conditions ({}):\n", report.hypotheses);
    for check in &report.checks {
        writeln!(text, "  {}: {}", check.clause, if check.satisfied { "pass" } else { "FAIL" })
            .unwrap();
    }
    writeln!(text, "all_satisfied = {}", report.all_satisfied).unwrap();
    text
}

fn report_plain(
    report: &MonotoneReport,
    conditions: Option<&ConditionReport>,
    note: Option<&str>,
    passed: bool,
    digits: usize,
) -> String {
    let dec = |q: &Rat| decimal_string(q, digits);
    let mut text = String::new();
    if let Some(rep) = conditions {
        text.push_str(&conditions_plain(rep));
    }
    writeln!(text, "target = {}", report.target).unwrap();
    writeln!(text, "points = {}", report.grid.len()).unwrap();
    writeln!(text, "verdict = {}", report.verdict.as_str()).unwrap();
    writeln!(text, "nondecreasing = {}", report.nondecreasing).unwrap();
    match &report.worst_margin {
        Some(m) => writeln!(text, "worst_margin = {}", dec(m)).unwrap(),
        None => writeln!(text, "worst_margin = n/a").unwrap(),
    }
    match &report.worst_location {
        Some((from, to)) => {
            writeln!(text, "worst_location = [{}, {}]", dec(from), dec(to)).unwrap()
        }
        None => writeln!(text, "worst_location = n/a").unwrap(),
    }
    writeln!(text, "turan_min = {}", dec(&report.turan_min)).unwrap();
    match report.turan_holds {
        Some(h) => writeln!(text, "turan_holds = {h}").unwrap(),
        None => writeln!(text, "turan_holds = n/a").unwrap(),
    }
    if let Some(b) = &report.bounds {
        writeln!(
            text,
            "lower_bound = {}, holds = {}, worst_margin = {}",
            dec(&b.lower),
            b.lower_holds,
            dec(&b.worst_lower_margin)
        )
        .unwrap();
        writeln!(
            text,
            "upper_bound = {}, holds = {}, worst_margin = {}",
            dec(&b.upper),
            b.upper_holds,
            dec(&b.worst_upper_margin)
        )
        .unwrap();
    }
    writeln!(text, "escalations_used = {}", report.escalations_used).unwrap();
    if let Some(note) = note {
        writeln!(text, "note = {note}").unwrap();
    }
    if passed {
        writeln!(text, "RESULT: verified").unwrap();
    } else {
        writeln!(text, "RESULT: CERTIFIED VIOLATION").unwrap();
    }
    text
}

fn cmd_verify(args: &VerifyArgs, prec: &Precision, fmt: Format, digits: usize) -> Result<i32> {
    let setup = verify_setup(args)?;
    let xs = match (&args.grid, &args.x_max) {
        (Some(_), Some(_)) => {
            return Err(Error::precondition("pass either --grid or --x-max, not both"))
        }
        (Some(spec), None) => parse_points(spec)?,
        (None, Some(max)) => GridSpec::new(Rat::zero(), parse_rat(max)?, 129, true)?.build(),
        (None, None) => {
            GridSpec::new(Rat::zero(), setup.default_max.clone(), 129, true)?.build()
        }
    };
    let note = if setup.beyond_domain_eligible && xs.last().is_some_and(|x| *x >= Rat::one()) {
        Some("beyond stated theorem domain")
    } else {
        None
    };

    if let Some(conds) = &setup.conditions {
        if !conds.all_satisfied && !args.force {
            let out = match fmt {
                Format::Json => pretty(&json!({
                    "conditions": conds.to_json(),
                    "note": note,
                    "passed": false,
                    "report": Value::Null,
                })),
                Format::Plain | Format::Csv => {
                    let mut text = conditions_plain(conds);
                    text.push_str(
                        "RESULT: conditions not satisfied; rerun with --force to verify anyway\n",
                    );
                    text
                }
            };
            emit(&out);
            return Ok(2);
        }
    }

    let report = run_checks(&setup.target, &xs, prec, &setup.checks)?;
    let monotone_ok = !setup.checks.monotone || report.nondecreasing;
    let turan_ok = !setup.checks.turan || report.turan_holds == Some(true);
    let bounds_ok = report.bounds.as_ref().map_or(true, |b| b.lower_holds && b.upper_holds);
    let passed = monotone_ok && turan_ok && bounds_ok;

    let out = match fmt {
        Format::Json => pretty(&json!({
            "conditions": setup.conditions.as_ref().map(|c| c.to_json()),
            "note": note,
            "passed": passed,
            "report": report.to_json(digits),
        })),
        Format::Plain => {
            report_plain(&report, setup.conditions.as_ref(), note, passed, digits)
        }
        Format::Csv => report.to_csv(digits),
    };
    emit(&out);
    Ok(if passed { 0 } else { 1 })
}

fn certificate_plain(cert: &CoeffMonotoneCertificate, digits: usize) -> String {
    let _ = digits;
    let list = |v: &[Rat]| {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    };
    let mut text = format!(
        "a = [{}], b = [{}], c = [{}]\n",
        list(&cert.a),
        list(&cert.b),
        list(&cert.c)
    );
    writeln!(text, "depth = {}", cert.depth).unwrap();
    text.push_str(&conditions_plain(&cert.conditions));
    writeln!(text, "forced = {}", cert.forced).unwrap();
    writeln!(
        text,
        "coefficient_ratio: direction = {}, holds = {}, strict = {}",
        cert.coeff_ratio_cert.direction.as_str(),
        cert.coeff_ratio_cert.holds,
        cert.coeff_ratio_cert.strict
    )
    .unwrap();
    if let Some(v) = &cert.coeff_ratio_cert.first_violation {
        writeln!(
            text,
            "coefficient_ratio violation: index = {}, lhs = {}, rhs = {}",
            v.index,
            rat_string(&v.lhs),
            rat_string(&v.rhs)
        )
        .unwrap();
    }
    let failing = cert.weight_certs.iter().position(|w| !w.holds);
    match failing {
        None => writeln!(text, "weight_rows: count = {}, all hold", cert.weight_certs.len())
            .unwrap(),
        Some(i) => writeln!(
            text,
            "weight_rows: count = {}, first failing row = {}",
            cert.weight_certs.len(),
            i
        )
        .unwrap(),
    }
    writeln!(text, "holds = {}", cert.holds).unwrap();
    writeln!(text, "strict = {}", cert.strict).unwrap();
    if cert.holds {
        writeln!(text, "RESULT: certified").unwrap();
    } else {
        writeln!(text, "RESULT: NOT CERTIFIED").unwrap();
    }
    text
}

fn cmd_certify(args: &CertifyArgs, fmt: Format, digits: usize) -> Result<i32> {
    let a = parse_rat_list(&args.a)?;
    let b = parse_rat_list(&args.b)?;
    let c = parse_rat_list(&args.c)?;
    let cert = certify_coeff_monotone(&a, &b, &c, args.depth, args.force)?;
    let out = match fmt {
        Format::Json => pretty(&cert.to_json()),
        Format::Plain => certificate_plain(&cert, digits),
        Format::Csv => {
            // Exact coefficient-ratio sequence, replayable row by row.
            let ratios = coeff_ratio_sequence(&a, &b, &c, args.depth)?;
            let mut text = "n,coefficient_ratio\n".to_string();
            for (n, r) in ratios.iter().enumerate() {
                writeln!(text, "{},{}", n, rat_string(r)).unwrap();
            }
            text
        }
    };
    emit(&out);
    Ok(if cert.holds { 0 } else { 1 })
}
