//! The `permutiple` command line.
//!
//! Exit codes: 0 success, 1 a "no" answer (not a permutiple, no witness,
//! counterexample found, inconsistent probe), 2 usage or input errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use permutiple_core::classify::{classify_relaxed, find_witnesses_relaxed, multiplier_of_strings};
use permutiple_core::concat::{concat_witness, palindromic_concat};
use permutiple_core::construct::{
    enumerate_three_digit_reverse, perfect_cyclic, perfect_from_parameters, perfect_reverse,
    three_digit_reverse, two_digit, PerfectParameters,
};
use permutiple_core::surd::{
    asymptotic_continuant_gap, infinite_perfect_stream, verify_surd_permutiple, Alignment,
    ParamSequence, PeriodicExpansion, ProbeVerdict,
};
use permutiple_core::{ContinuedFraction, Error as CoreError, Permutation, QuadraticSurd, Witness};
use serde_json::json;

use crate::conjectures::{scan, ConjectureId, ConjectureReport};
use crate::export::{export, json_line, Format};
use crate::search::{default_workers, SearchConfig, SearchStream};

#[derive(Debug, Parser)]
#[command(
    name = "permutiple",
    version,
    about = "Exact arithmetic for continued-fraction permutiples"
)]
struct Cli {
    /// Machine-readable output, one JSON object per line.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a continued fraction exactly.
    Eval {
        #[arg(long)]
        cf: ContinuedFraction,
    },
    /// Test whether a digit permutation makes the fraction a permutiple.
    Classify {
        #[arg(long)]
        cf: ContinuedFraction,
        #[arg(long)]
        sigma: Permutation,
        /// Required multiplier; by default it is computed.
        #[arg(long)]
        k: Option<BigUint>,
    },
    /// List every permutation and multiplier that works for a fraction.
    Witnesses {
        #[arg(long)]
        cf: ContinuedFraction,
    },
    /// Exhaustive search within digit and length bounds.
    Search(SearchArgs),
    /// Generate a constructible family.
    #[command(subcommand)]
    Enumerate(Family),
    /// Concatenate witnesses.
    Concat(ConcatArgs),
    /// Scan for counterexamples to a conjecture.
    Conjecture(ConjectureArgs),
    /// Expand a quadratic surd (a + sqrt b)/c and probe it as an infinite permutiple.
    Surd {
        #[arg(long, allow_hyphen_values = true)]
        a: BigInt,
        #[arg(long)]
        b: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        c: BigInt,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
    /// Print an infinite perfect digit stream and its continuant gaps.
    Stream {
        #[arg(long)]
        k: BigUint,
        /// `const:<v>`, `pow:<base>`, or a comma list repeated forever.
        #[arg(long)]
        params: ParamSequence,
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// A length `n` or an inclusive range `lo..hi`.
    #[arg(long, value_parser = parse_lengths)]
    len: RangeInclusive<usize>,
    #[arg(long)]
    max_digit: u64,
    #[arg(long)]
    k_min: Option<u64>,
    #[arg(long)]
    k_max: Option<u64>,
    #[arg(long, env = "PERMUTIPLE_JOBS")]
    jobs: Option<usize>,
    /// Output file, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: PathBuf,
    #[arg(long, default_value = "jsonl")]
    format: Format,
    /// Admit strings ending in 1.
    #[arg(long)]
    relaxed: bool,
    /// Emit every realizing permutation, not one per permuted string.
    #[arg(long)]
    no_dedupe: bool,
    #[arg(long)]
    no_prune: bool,
    /// Stop after this many witnesses.
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Family {
    /// `[k s; s]`, for one `s` or for `s = 2..=s-max`.
    TwoDigit {
        #[arg(long)]
        k: BigUint,
        #[arg(long)]
        s: Option<BigUint>,
        #[arg(long, default_value_t = 10)]
        s_max: u64,
    },
    /// Three-digit reverse multiples, for one `a0` or all `a0 <= a0-max`.
    ThreeDigitReverse {
        #[arg(long)]
        k: BigUint,
        #[arg(long)]
        a0: Option<BigUint>,
        #[arg(long, default_value_t = 30)]
        a0_max: u64,
    },
    /// Perfect permutiple from a permutation and one parameter per cycle.
    Perfect {
        #[arg(long)]
        sigma: Permutation,
        #[arg(long)]
        k: BigUint,
        #[arg(long, value_delimiter = ',')]
        params: Vec<BigUint>,
    },
    /// Perfect reverse multiple from its first-half parameters.
    PerfectReverse {
        #[arg(long)]
        k: BigUint,
        #[arg(long, value_delimiter = ',')]
        params: Vec<BigUint>,
    },
    /// Perfect permutiple under rotation by an odd shift.
    PerfectCyclic {
        #[arg(long)]
        k: BigUint,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_delimiter = ',')]
        params: Vec<BigUint>,
    },
}

#[derive(Debug, Args)]
struct ConcatArgs {
    /// Fractions to join, in order.
    #[arg(long = "cf", required = true)]
    cfs: Vec<ContinuedFraction>,
    /// One permutation per fraction (not used with --palindromic).
    #[arg(long = "sigma")]
    sigmas: Vec<Permutation>,
    #[arg(long)]
    k: Option<BigUint>,
    /// Join a palindromic list of reverse multiples.
    #[arg(long)]
    palindromic: bool,
}

#[derive(Debug, Args)]
struct ConjectureArgs {
    id: ConjectureId,
    #[arg(long)]
    len_min: Option<usize>,
    #[arg(long)]
    len_max: Option<usize>,
    #[arg(long)]
    max_digit: Option<u64>,
    #[arg(long)]
    k_min: Option<u64>,
    #[arg(long)]
    k_max: Option<u64>,
    #[arg(long, env = "PERMUTIPLE_JOBS")]
    jobs: Option<usize>,
}

fn parse_lengths(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a length or lo..hi, got {s:?}");
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((lo, hi)) => Ok(num(lo)?..=num(hi.trim_start_matches('='))?),
        None => {
            let n = num(s)?;
            Ok(n..=n)
        }
    }
}

const SUCCESS: i32 = 0;
const NO: i32 = 1;
const USAGE: i32 = 2;

/// Outcome of a subcommand that did not fail on input.
type Outcome = Result<i32, Failure>;

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { SUCCESS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Eval { cf } => eval(&cf, json, out),
        Command::Classify { cf, sigma, k } => classify_cmd(&cf, &sigma, k.as_ref(), json, out),
        Command::Witnesses { cf } => witnesses(&cf, json, out),
        Command::Search(args) => search(args, out, err),
        Command::Enumerate(family) => enumerate(family, json, out),
        Command::Concat(args) => concat(args, json, out),
        Command::Conjecture(args) => conjecture(args, json, out),
        Command::Surd { a, b, c, depth } => surd(a, b, c, depth, json, out),
        Command::Stream { k, params, digits } => stream(&k, params, digits, json, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            USAGE
        }
    }
}

fn flag_names(w: &Witness) -> String {
    let f = w.flags();
    let names: Vec<&str> = [
        (f.continuant_preserving, "continuant_preserving"),
        (f.perfect, "perfect"),
        (f.symmetric, "symmetric"),
        (f.landess, "landess"),
        (f.reverse_multiple, "reverse_multiple"),
    ]
    .into_iter()
    .filter_map(|(on, name)| on.then_some(name))
    .collect();
    if names.is_empty() {
        "-".to_string()
    } else {
        names.join(",")
    }
}

fn witness_line(w: &Witness) -> String {
    format!(
        "[{}] = {} * [{}]  sigma {}  flags {}",
        w.cf(),
        w.k(),
        w.permuted(),
        w.sigma(),
        flag_names(w)
    )
}

fn write_witnesses<'a>(
    ws: impl IntoIterator<Item = &'a Witness>,
    json: bool,
    out: &mut dyn Write,
) -> io::Result<usize> {
    let mut n = 0;
    for w in ws {
        let line = if json { json_line(w) } else { witness_line(w) };
        writeln!(out, "{line}")?;
        n += 1;
    }
    Ok(n)
}

fn eval(cf: &ContinuedFraction, json: bool, out: &mut dyn Write) -> Outcome {
    let v = cf.evaluate();
    if json {
        let convergents: Vec<_> = cf
            .convergents()
            .pairs()
            .iter()
            .map(|(p, q)| json!({"p": p.to_string(), "q": q.to_string()}))
            .collect();
        let line = json!({
            "digits": cf.to_string(),
            "value": {"p": v.numer().to_string(), "q": v.denom().to_string()},
            "canonical": cf.is_canonical(),
            "convergents": convergents,
        });
        writeln!(out, "{line}")?;
    } else {
        writeln!(out, "[{cf}] = {v}")?;
        if !cf.is_canonical() {
            writeln!(out, "canonical form [{}]", cf.canonicalize())?;
        }
    }
    Ok(SUCCESS)
}

fn classify_cmd(
    cf: &ContinuedFraction,
    sigma: &Permutation,
    k: Option<&BigUint>,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let permuted = sigma.permute(cf.digits()).map_err(usage)?;
    let found = multiplier_of_strings(cf.digits(), &permuted).filter(|k| *k >= BigUint::from(2u32));
    let k = match (found, k) {
        (Some(found), Some(want)) if &found != want => None,
        (found, _) => found,
    };
    let Some(k) = k else {
        if json {
            writeln!(
                out,
                "{}",
                json!({"digits": cf.to_string(), "sigma": sigma.to_string(), "permutiple": false})
            )?;
        } else {
            writeln!(out, "not a permutiple")?;
        }
        return Ok(NO);
    };
    let w = classify_relaxed(cf, sigma, &k).map_err(usage)?;
    if json {
        writeln!(out, "{}", json_line(&w))?;
    } else {
        writeln!(out, "[{}] = {} * [{}]", w.cf(), w.k(), w.permuted())?;
        writeln!(
            out,
            "value {} = {} * {}",
            w.value(),
            w.k(),
            w.permuted_value()
        )?;
        writeln!(out, "k {}", w.k())?;
        writeln!(out, "sigma {}", w.sigma())?;
        writeln!(out, "canonical {}", w.is_canonical())?;
        let f = w.flags();
        writeln!(out, "continuant_preserving {}", f.continuant_preserving)?;
        writeln!(out, "perfect {}", f.perfect)?;
        writeln!(out, "symmetric {}", f.symmetric)?;
        writeln!(out, "landess {}", f.landess)?;
        writeln!(out, "reverse_multiple {}", f.reverse_multiple)?;
    }
    Ok(SUCCESS)
}

fn witnesses(cf: &ContinuedFraction, json: bool, out: &mut dyn Write) -> Outcome {
    let ws = find_witnesses_relaxed(cf).map_err(usage)?;
    if write_witnesses(&ws, json, out)? == 0 {
        if !json {
            writeln!(out, "no witnesses")?;
        }
        return Ok(NO);
    }
    Ok(SUCCESS)
}

fn search(args: SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let mut config = SearchConfig::new(args.len, args.max_digit);
    config.k_min = args.k_min;
    config.k_max = args.k_max;
    config.workers = args.jobs.unwrap_or_else(default_workers);
    config.canonical_only = !args.relaxed;
    config.dedupe = !args.no_dedupe;
    config.prune = !args.no_prune;
    config.limit = args.limit;
    let mut stream = SearchStream::new(config).map_err(usage)?;
    let written = if args.out.as_os_str() == "-" {
        export(&mut *out, args.format, stream.by_ref())
    } else {
        let file =
            File::create(&args.out).map_err(|e| usage(format!("{}: {e}", args.out.display())))?;
        export(BufWriter::new(file), args.format, stream.by_ref())
    }
    .map_err(usage)?;
    writeln!(err, "{written} witnesses")?;
    if stream.truncated() {
        writeln!(
            err,
            "truncated: stopped at the limit of {written} witnesses"
        )?;
    }
    Ok(SUCCESS)
}

fn enumerate(family: Family, json: bool, out: &mut dyn Write) -> Outcome {
    let ws: Vec<Witness> = match family {
        Family::TwoDigit { k, s: Some(s), .. } => vec![two_digit(&k, &s).map_err(usage)?],
        Family::TwoDigit { k, s: None, s_max } => (2..=s_max)
            .map(|s| two_digit(&k, &BigUint::from(s)))
            .collect::<Result<_, _>>()
            .map_err(usage)?,
        Family::ThreeDigitReverse {
            k, a0: Some(a0), ..
        } => match three_digit_reverse(&k, &a0).map_err(usage)? {
            Some(w) => vec![w],
            None => {
                if !json {
                    writeln!(out, "no three-digit {k}-reverse multiple starts with {a0}")?;
                }
                return Ok(NO);
            }
        },
        Family::ThreeDigitReverse {
            k,
            a0: None,
            a0_max,
        } => {
            if k < BigUint::from(2u32) {
                return Err(usage(CoreError::MultiplierTooSmall));
            }
            enumerate_three_digit_reverse(&k, &BigUint::from(a0_max))
        }
        Family::Perfect { sigma, k, params } => {
            vec![perfect_from_parameters(&PerfectParameters {
                sigma,
                k,
                orbit_params: params,
            })
            .map_err(usage)?]
        }
        Family::PerfectReverse { k, params } => vec![perfect_reverse(&k, &params).map_err(usage)?],
        Family::PerfectCyclic {
            k,
            len,
            ell,
            params,
        } => vec![perfect_cyclic(&k, len, ell, &params).map_err(usage)?],
    };
    write_witnesses(&ws, json, out)?;
    Ok(SUCCESS)
}

fn concat(args: ConcatArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let w = if args.palindromic {
        let first = &args.cfs[0];
        let k = match args.k {
            Some(k) => k,
            None => multiplier_of_strings(first.digits(), first.reversed().digits())
                .ok_or_else(|| usage(format!("[{first}] is not a reverse multiple")))?,
        };
        let ws = args
            .cfs
            .iter()
            .map(|cf| classify_relaxed(cf, &Permutation::reversal(cf.len()), &k))
            .collect::<Result<Vec<_>, _>>()
            .map_err(usage)?;
        palindromic_concat(&ws, &k).map_err(usage)?
    } else {
        if args.cfs.len() != 2 || args.sigmas.len() != 2 {
            return Err(usage(
                "concat needs exactly two --cf and two --sigma (or --palindromic)",
            ));
        }
        let mut parts = Vec::with_capacity(2);
        for (cf, sigma) in args.cfs.iter().zip(&args.sigmas) {
            let permuted = sigma.permute(cf.digits()).map_err(usage)?;
            let k = match &args.k {
                Some(k) => k.clone(),
                None => multiplier_of_strings(cf.digits(), &permuted)
                    .ok_or_else(|| usage(format!("[{cf}] is not a permutiple under {sigma}")))?,
            };
            parts.push(classify_relaxed(cf, sigma, &k).map_err(usage)?);
        }
        concat_witness(&parts[0], &parts[1]).map_err(usage)?
    };
    write_witnesses([&w], json, out)?;
    Ok(SUCCESS)
}

fn report_json(r: &ConjectureReport) -> serde_json::Value {
    let counterexamples: Vec<serde_json::Value> = r
        .counterexamples
        .iter()
        .map(|w| serde_json::from_str(&json_line(w)).expect("valid json"))
        .collect();
    json!({
        "conjecture": r.id.to_string(),
        "statement": r.id.statement(),
        "len_min": r.bounds.lengths.start(),
        "len_max": r.bounds.lengths.end(),
        "max_digit": r.bounds.max_digit,
        "examined": r.examined,
        "counterexamples": counterexamples,
        "truncated": r.truncated,
        "seconds": r.elapsed.as_secs_f64(),
    })
}

fn conjecture(args: ConjectureArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let defaults = args.id.default_bounds();
    let lo = args.len_min.unwrap_or(*defaults.lengths.start());
    let hi = args.len_max.unwrap_or(*defaults.lengths.end());
    let mut config = SearchConfig::new(lo..=hi, args.max_digit.unwrap_or(defaults.max_digit));
    config.k_min = args.k_min;
    config.k_max = args.k_max;
    config.workers = args.jobs.unwrap_or_else(default_workers);
    let report = scan(&config, &[args.id]).map_err(usage)?.remove(0);
    if json {
        writeln!(out, "{}", report_json(&report))?;
    } else {
        writeln!(out, "{}: {}", report.id, report.id.statement())?;
        writeln!(out, "bounds: {}", report.bounds)?;
        writeln!(out, "witnesses examined: {}", report.examined)?;
        writeln!(out, "counterexamples: {}", report.counterexamples.len())?;
        write_witnesses(&report.counterexamples, false, out)?;
        writeln!(out, "time: {:.3}s", report.elapsed.as_secs_f64())?;
        if !report.holds() {
            writeln!(out, "COUNTEREXAMPLE FOUND")?;
        }
    }
    Ok(if report.holds() { SUCCESS } else { NO })
}

fn expansion_text(e: &PeriodicExpansion) -> String {
    let join = |xs: &[BigInt]| {
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    format!(
        "preperiod [{}] period [{}]",
        join(&e.preperiod),
        join(&e.period)
    )
}

fn expansion_json(e: &PeriodicExpansion) -> serde_json::Value {
    let strs = |xs: &[BigInt]| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
    json!({"preperiod": strs(&e.preperiod), "period": strs(&e.period)})
}

fn verdict_text(v: &ProbeVerdict) -> String {
    match v {
        ProbeVerdict::Consistent(Alignment::PairSwap) => {
            "consistent (adjacent pairs swapped)".to_string()
        }
        ProbeVerdict::Consistent(Alignment::BlockRotation { block, shift }) => {
            format!("consistent (rotation by {shift} within blocks of {block})")
        }
        ProbeVerdict::Inconsistent { position } => {
            format!("inconsistent (digit {position} of r/k never occurs in r)")
        }
        ProbeVerdict::Undetermined => "undetermined".to_string(),
    }
}

fn surd(a: BigInt, b: BigInt, c: BigInt, depth: usize, json: bool, out: &mut dyn Write) -> Outcome {
    let s = QuadraticSurd::new(a, b, c).map_err(usage)?;
    let probe = match verify_surd_permutiple(&s, depth) {
        Ok(p) => p,
        Err(CoreError::NoSurdMultiplier) => {
            if json {
                writeln!(
                    out,
                    "{}",
                    json!({"a": s.a().to_string(), "b": s.b().to_string(), "c": s.c().to_string(), "k": null})
                )?;
            } else {
                writeln!(out, "(b - a^2)/c is not an integer >= 2")?;
            }
            return Ok(NO);
        }
        Err(e) => return Err(usage(e)),
    };
    let verdict_kind = match probe.verdict {
        ProbeVerdict::Consistent(_) => "consistent",
        ProbeVerdict::Inconsistent { .. } => "inconsistent",
        ProbeVerdict::Undetermined => "undetermined",
    };
    if json {
        let line = json!({
            "a": s.a().to_string(), "b": s.b().to_string(), "c": s.c().to_string(),
            "k": probe.k.to_string(),
            "reduced": s.is_reduced(),
            "depth": depth,
            "expansion": expansion_json(&probe.expansion),
            "scaled_expansion": expansion_json(&probe.scaled_expansion),
            "window_multisets_agree": probe.window_multisets_agree,
            "verdict": verdict_kind,
        });
        writeln!(out, "{line}")?;
    } else {
        writeln!(out, "r = ({} + sqrt {})/{}", s.a(), s.b(), s.c())?;
        writeln!(out, "k {}", probe.k)?;
        writeln!(out, "reduced {}", s.is_reduced())?;
        writeln!(out, "r   {}", expansion_text(&probe.expansion))?;
        writeln!(out, "r/k {}", expansion_text(&probe.scaled_expansion))?;
        writeln!(
            out,
            "first {depth} digits agree as multisets: {}",
            probe.window_multisets_agree
        )?;
        writeln!(out, "verdict {}", verdict_text(&probe.verdict))?;
    }
    Ok(
        if matches!(probe.verdict, ProbeVerdict::Inconsistent { .. }) {
            NO
        } else {
            SUCCESS
        },
    )
}

fn stream(
    k: &BigUint,
    params: ParamSequence,
    digits: usize,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let st = infinite_perfect_stream(k, params).map_err(usage)?;
    let strs = |xs: Vec<BigUint>| xs.iter().map(ToString::to_string).collect::<Vec<_>>();
    let gaps = strs(asymptotic_continuant_gap(&st, digits.saturating_sub(1)));
    let a = strs(st.prefix(digits));
    let b = strs(st.permuted_prefix(digits));
    if json {
        writeln!(
            out,
            "{}",
            json!({"k": k.to_string(), "digits": a, "permuted": b, "gaps": gaps})
        )?;
    } else {
        let show = |xs: &[String]| match xs.split_first() {
            Some((x0, rest)) => format!("[{x0};{}, ...]", rest.join(",")),
            None => "[]".to_string(),
        };
        writeln!(out, "r  {}", show(&a))?;
        writeln!(out, "r' {}", show(&b))?;
        writeln!(out, "gaps {}", gaps.join(","))?;
    }
    Ok(SUCCESS)
}
