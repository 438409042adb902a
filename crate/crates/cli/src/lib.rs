//! Command-line front end. [`run`] is the whole program; `main` only wires it
//! to the process arguments and exit code.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use coinage::bench::{scaling_run, CSV_HEADER};
use coinage::gen::{self, CorpusEntry, Family};
use coinage::oracle::{is_tight, smallest_counterexample};
use coinage::props::{sweep_one, Predicate, SweepReport};
use coinage::{check, CoinSystem, Counterexample, Error, Method, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "coinage", version, about = "Decide whether coin systems are canonical")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide canonicity with a chosen method.
    Check {
        /// Comma-separated denominations, e.g. 1,5,10,25
        coins: String,
        #[arg(long, default_value = "oracle")]
        method: Method,
        /// Do not verify tightness before running a tight-* method.
        #[arg(long)]
        skip_tight_check: bool,
    },
    /// Print the smallest counterexample, or "canonical".
    Witness { coins: String },
    /// Report whether no counterexample lies below the largest coin.
    Tight { coins: String },
    /// Emit corpus lines.
    Gen(GenArgs),
    /// Run the theorem predicates over a corpus file.
    Verify {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value = "all")]
        predicate: String,
    },
    /// Time canonicity methods on growing arithmetic systems and print CSV.
    Bench {
        /// Comma-separated coin counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, value_delimiter = ',', default_value = "pearson,tight-extended")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct GenSource {
    /// Named family: arithmetic[:STEP], geometric[:RATIO] or fibonacci.
    #[arg(long)]
    family: Option<Family>,
    /// Uniform random systems.
    #[arg(long)]
    random: bool,
    /// Every system in lexicographic order.
    #[arg(long)]
    enumerate: bool,
    /// Random systems filtered to tight ones.
    #[arg(long)]
    tight: bool,
    /// Tight systems derived from arithmetic runs with coins removed.
    #[arg(long)]
    mutation: bool,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    source: GenSource,
    /// Number of coins.
    #[arg(short, long, default_value_t = 4)]
    m: usize,
    /// Largest allowed coin (random, enumerate, tight); run length bound for mutation.
    #[arg(long, default_value_t = 100)]
    cmax: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Append oracle verdict and tightness after `#`.
    #[arg(long)]
    annotate: bool,
}

/// Witness fields of the JSON schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub x: u64,
    pub greedy_counts: Vec<u64>,
    pub greedy_size: u64,
    pub optimal_counts: Vec<u64>,
    pub optimal_size: u64,
}

impl From<&Counterexample> for WitnessJson {
    fn from(c: &Counterexample) -> Self {
        Self {
            x: c.x,
            greedy_counts: c.greedy.counts.clone(),
            greedy_size: c.greedy.size,
            optimal_counts: c.optimal.counts.clone(),
            optimal_size: c.optimal.size,
        }
    }
}

/// Output of `check`, `witness` and `tight` with `--json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub system: Vec<u64>,
    /// `canonical` / `non-canonical`, or `tight` / `not-tight`.
    pub verdict: String,
    pub witness: Option<WitnessJson>,
    pub method: String,
    pub elapsed_ns: u64,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } | Error::BudgetExhausted(_) => EXIT_RESOURCE,
            Error::TheoremViolation(_) => EXIT_FOUND,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
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
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_system(coins: &str) -> std::result::Result<CoinSystem, Failure> {
    coins.parse::<CoinSystem>().map_err(Failure::from)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Check {
            coins,
            method,
            skip_tight_check,
        } => cmd_check(&parse_system(&coins)?, method, skip_tight_check, json, out),
        Command::Witness { coins } => cmd_witness(&parse_system(&coins)?, json, out),
        Command::Tight { coins } => cmd_tight(&parse_system(&coins)?, json, out),
        Command::Gen(args) => cmd_gen(args, json, out),
        Command::Verify { corpus, predicate } => cmd_verify(&corpus, &predicate, json, out),
        Command::Bench {
            sizes,
            trials,
            methods,
            seed,
        } => cmd_bench(&sizes, trials, &methods, seed, json, out),
    }
}

fn describe(cex: &Counterexample, smallest: bool) -> String {
    format!(
        "non-canonical; {}counterexample {}: greedy {} size {}, optimal {} size {}",
        if smallest { "smallest " } else { "" },
        cex.x,
        cex.greedy,
        cex.greedy.size,
        cex.optimal,
        cex.optimal.size
    )
}

fn emit_verdict(
    sys: &CoinSystem,
    verdict: &Verdict,
    method: &str,
    smallest: bool,
    elapsed_ns: u64,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    if json {
        let doc = VerdictJson {
            system: sys.denoms().to_vec(),
            verdict: if verdict.is_canonical() { "canonical" } else { "non-canonical" }.into(),
            witness: verdict.witness().map(WitnessJson::from),
            method: method.into(),
            elapsed_ns,
        };
        writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"))?;
    } else {
        match verdict.witness() {
            None => writeln!(out, "canonical")?,
            Some(cex) => writeln!(out, "{}", describe(cex, smallest))?,
        }
    }
    Ok(if verdict.is_canonical() { EXIT_OK } else { EXIT_FOUND })
}

fn cmd_check(sys: &CoinSystem, method: Method, skip_tight_check: bool, json: bool, out: &mut dyn Write) -> Outcome {
    if sys.m() < method.min_coins() {
        return Err(usage(format!(
            "method {method} needs at least {} denominations, got {}",
            method.min_coins(),
            sys.m()
        )));
    }
    if method.is_tight_method() && !skip_tight_check {
        if let (false, Some(cex)) = is_tight(sys)? {
            return Err(usage(format!(
                "method {method} requires a tight system, but {} < {} is a counterexample",
                cex.x,
                sys.largest()
            )));
        }
    }
    let start = Instant::now();
    let verdict = check(sys, method)?;
    let elapsed = start.elapsed().as_nanos() as u64;
    // Oracle and candidate search always report the smallest counterexample.
    let smallest = matches!(method, Method::Oracle | Method::Pearson) || (method == Method::Auto && sys.m() != 4 && sys.m() != 5);
    emit_verdict(sys, &verdict, method.name(), smallest, elapsed, json, out)
}

fn cmd_witness(sys: &CoinSystem, json: bool, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let verdict = Verdict::from(smallest_counterexample(sys)?);
    let elapsed = start.elapsed().as_nanos() as u64;
    if json {
        return emit_verdict(sys, &verdict, "oracle", true, elapsed, json, out);
    }
    match verdict.witness() {
        None => writeln!(out, "canonical")?,
        Some(cex) => writeln!(
            out,
            "{}: greedy {} size {}, optimal {} size {}",
            cex.x, cex.greedy, cex.greedy.size, cex.optimal, cex.optimal.size
        )?,
    }
    Ok(if verdict.is_canonical() { EXIT_OK } else { EXIT_FOUND })
}

fn cmd_tight(sys: &CoinSystem, json: bool, out: &mut dyn Write) -> Outcome {
    let start = Instant::now();
    let (tight, cex) = is_tight(sys)?;
    let elapsed = start.elapsed().as_nanos() as u64;
    if json {
        let doc = VerdictJson {
            system: sys.denoms().to_vec(),
            verdict: if tight { "tight" } else { "not-tight" }.into(),
            witness: cex.as_ref().map(WitnessJson::from),
            method: "oracle".into(),
            elapsed_ns: elapsed,
        };
        writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"))?;
    } else {
        match &cex {
            None => writeln!(out, "tight")?,
            Some(c) => writeln!(
                out,
                "not tight; counterexample {} < {}: greedy {} size {}, optimal {} size {}",
                c.x,
                sys.largest(),
                c.greedy,
                c.greedy.size,
                c.optimal,
                c.optimal.size
            )?,
        }
    }
    Ok(if tight { EXIT_OK } else { EXIT_FOUND })
}

#[derive(Serialize)]
struct CorpusJson<'a> {
    system: &'a [u64],
    canonical: Option<bool>,
    tight: Option<bool>,
}

fn cmd_gen(args: GenArgs, json: bool, out: &mut dyn Write) -> Outcome {
    let GenArgs {
        source,
        m,
        cmax,
        count,
        seed,
        annotate,
    } = args;
    let needs_range = source.random || source.enumerate || source.tight;
    if needs_range && (m == 0 || cmax < m as u64) {
        return Err(usage(format!("need cmax >= m >= 1 (m={m}, cmax={cmax})")));
    }
    let entries: Vec<CorpusEntry> = if let Some(family) = source.family {
        vec![CorpusEntry::bare(gen::family(family, m)?)]
    } else if source.random {
        (0..count as u64)
            .map(|i| CorpusEntry::bare(gen::random_system(m, cmax, seed.wrapping_add(i))))
            .collect()
    } else if source.enumerate {
        gen::enumerate_all(m, cmax).map(CorpusEntry::bare).collect()
    } else if source.tight {
        gen::tight_corpus(m, cmax, seed, count)?
    } else {
        if cmax < 10 {
            return Err(usage("--mutation needs --cmax >= 10"));
        }
        gen::tight_mutation_corpus(seed, count, cmax)?
    };
    for entry in entries {
        let entry = if annotate && entry.canonical.is_none() {
            CorpusEntry::annotated(entry.system)?
        } else {
            entry
        };
        if json {
            let doc = CorpusJson {
                system: entry.system.denoms(),
                canonical: entry.canonical,
                tight: entry.tight,
            };
            writeln!(out, "{}", serde_json::to_string(&doc).expect("serializable"))?;
        } else {
            writeln!(out, "{entry}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(corpus: &PathBuf, predicate: &str, json: bool, out: &mut dyn Write) -> Outcome {
    let predicates: Vec<Predicate> = if predicate == "all" {
        Predicate::ALL.to_vec()
    } else {
        vec![predicate.parse().map_err(usage)?]
    };
    let text = std::fs::read_to_string(corpus)
        .map_err(|e| usage(format!("cannot read {}: {e}", corpus.display())))?;
    let entries = gen::parse_corpus(&text)?;
    let partials: Vec<coinage::Result<SweepReport>> = entries
        .par_iter()
        .map(|e| {
            let mut r = SweepReport::default();
            sweep_one(&e.system, &predicates, &mut r).map(|_| r)
        })
        .collect();
    let mut report = SweepReport::default();
    for p in partials {
        report.merge(p?);
    }
    if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
    } else {
        for (p, t) in &report.tallies {
            writeln!(
                out,
                "{p}: holds={} fails={} not-applicable={}",
                t.holds, t.fails, t.not_applicable
            )?;
        }
        if report.skipped > 0 {
            writeln!(out, "skipped (budget): {}", report.skipped)?;
        }
        for f in &report.failures {
            writeln!(out, "FAIL {} <{}>: {}", f.predicate, f.system, f.detail)?;
        }
    }
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_FOUND })
}

fn cmd_bench(sizes: &[usize], trials: usize, methods: &[Method], seed: u64, json: bool, out: &mut dyn Write) -> Outcome {
    let rows = scaling_run(methods, sizes, trials, seed).map_err(|e| match e {
        Error::WrongArity { .. } => usage(format!("{e}")),
        other => Failure::from(other),
    })?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&rows).expect("serializable"))?;
    } else {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &rows {
            writeln!(out, "{}", r.csv())?;
        }
    }
    Ok(EXIT_OK)
}
