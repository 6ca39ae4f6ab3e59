//! `catalan`: exact values, identity sweeps and conjecture scans.
//!
//! Exit status: 0 when every check passes, 1 on a mismatch or
//! counterexample, 2 on bad input, 3 on an internal integrity failure.

mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use catalan_core::{
    a_number, b_number, binomial, c_number, catalan, find_identity, gen_catalan, generate,
    harmonic, list_identities, load_checkpoint, run_scan, seq_a, seq_b, verify_identity,
    Conjecture, Error, IntRange, Ranges, ScanDomain, ScanOptions, ScanState, SequenceKind,
    SequenceSpec, SweepOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::{Format, Outcome};

#[derive(Parser)]
#[command(name = "catalan", version, about = "Exact arithmetic on Catalan triangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one exact value
    Value {
        #[arg(value_enum)]
        name: ValueName,
        /// Indices, e.g. `m k` for c or `n` for catalan
        #[arg(required = true, allow_negative_numbers = true)]
        indices: Vec<i64>,
    },
    /// Sweep a registered identity, or all of them, over a finite domain
    Verify(VerifyArgs),
    /// Search a conjecture for counterexamples
    Scan(ScanArgs),
    /// Print a slice of a sequence or triangle row
    Seq(SeqArgs),
    /// List registered identities and their domains
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum ValueName {
    C,
    B,
    A,
    Catalan,
    GenCatalan,
    SeqA,
    SeqB,
    Binomial,
    Harmonic,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads; defaults to the number of CPUs
    #[arg(long, env = "CATALAN_JOBS")]
    jobs: Option<usize>,
}

impl Jobs {
    fn get(&self) -> Result<usize, Error> {
        match self.jobs {
            Some(0) => Err(Error::Usage("--jobs must be at least 1".into())),
            Some(j) => Ok(j),
            None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id, or `all`
    id: String,
    #[arg(long, value_parser = parse_range)]
    m: Option<IntRange>,
    #[arg(long, value_parser = parse_range)]
    n: Option<IntRange>,
    #[arg(long, value_parser = parse_range)]
    k: Option<IntRange>,
    #[arg(long, value_parser = parse_range)]
    i: Option<IntRange>,
    /// Range for any parameter, as `name=a..b`
    #[arg(long = "range", value_parser = parse_named_range)]
    ranges: Vec<(String, IntRange)>,
    /// Upper bound for parameters given no range; identities with costly
    /// cells keep their own lower cap
    #[arg(long, default_value_t = 25)]
    max: i64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(flatten)]
    jobs: Jobs,
    /// Stop at the first mismatch
    #[arg(long)]
    fail_fast: bool,
    /// Use the given ranges as-is, ignoring the identity's hypotheses
    #[arg(long)]
    allow_outside_domain: bool,
    /// Omit elapsed times
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// c-powers, b-powers, a-powers or mixed (aliases: c, b, a, *-cubes)
    conjecture: String,
    /// Odd exponent for the divisibility conjectures
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, value_parser = parse_range)]
    m: Option<IntRange>,
    #[arg(long, value_parser = parse_range)]
    n: Option<IntRange>,
    /// Resume from and save progress to this file
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    #[command(flatten)]
    jobs: Jobs,
    /// Cells per batch between checkpoint writes
    #[arg(long, default_value_t = 64)]
    batch: usize,
    /// Stop after this many cells
    #[arg(long)]
    max_cells: Option<u64>,
    /// Add this to every divisor (a negative control)
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    perturb_divisor: i64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct SeqArgs {
    /// catalan, a, b, gen-catalan, c-row, b-row or a-row
    name: String,
    #[arg(allow_negative_numbers = true)]
    start: i64,
    count: usize,
    /// k for gen-catalan, the row for c-row, b-row and a-row
    #[arg(long, allow_negative_numbers = true)]
    param: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

fn parse_range(s: &str) -> Result<IntRange, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_named_range(s: &str) -> Result<(String, IntRange), String> {
    let (name, range) = s.split_once('=').ok_or_else(|| format!("expected name=a..b, got `{s}`"))?;
    Ok((name.trim().to_string(), parse_range(range.trim())?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Value { name, indices } => cmd_value(name, &indices),
        Command::Verify(args) => cmd_verify(&args),
        Command::Scan(args) => cmd_scan(&args),
        Command::Seq(args) => cmd_seq(&args),
        Command::List => cmd_list(),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::UnknownIdentity { .. } = e {
                let ids: Vec<_> = list_identities().iter().map(|d| d.id).collect();
                eprintln!("valid ids: all, {}", ids.join(", "));
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_usage() => 2,
        Error::Io(_) | Error::Json(_) => 2,
        _ => 3,
    }
}

fn cmd_value(name: ValueName, idx: &[i64]) -> Result<Outcome, Error> {
    let want = |n: usize| {
        if idx.len() == n {
            Ok(())
        } else {
            Err(Error::Usage(format!("expected {n} indices, got {}", idx.len())))
        }
    };
    let text = match name {
        ValueName::C => want(2).and_then(|_| c_number(idx[0], idx[1]))?.to_string(),
        ValueName::B => want(2).and_then(|_| b_number(idx[0], idx[1]))?.to_string(),
        ValueName::A => want(2).and_then(|_| a_number(idx[0], idx[1]))?.to_string(),
        ValueName::GenCatalan => want(2).and_then(|_| gen_catalan(idx[0], idx[1]))?.to_string(),
        ValueName::Binomial => want(2).and_then(|_| binomial(idx[0], idx[1]))?.to_string(),
        ValueName::Catalan => want(1).and_then(|_| catalan(idx[0]))?.to_string(),
        ValueName::SeqA => want(1).and_then(|_| seq_a(idx[0]))?.to_string(),
        ValueName::SeqB => want(1).and_then(|_| seq_b(idx[0]))?.to_string(),
        ValueName::Harmonic => want(1).and_then(|_| harmonic(idx[0]))?.to_string(),
    };
    println!("{text}");
    Ok(Outcome::Pass)
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Error> {
    let mut explicit: BTreeMap<String, IntRange> = BTreeMap::new();
    for (name, r) in [("m", args.m), ("n", args.n), ("k", args.k), ("i", args.i)] {
        if let Some(r) = r {
            explicit.insert(name.to_string(), r);
        }
    }
    for (name, r) in &args.ranges {
        if explicit.insert(name.clone(), *r).is_some() {
            return Err(Error::Usage(format!("parameter `{name}` given twice")));
        }
    }
    let all = args.id == "all";
    let targets = if all { list_identities().iter().collect() } else { vec![find_identity(&args.id)?] };
    if !all {
        let desc = targets[0];
        if let Some(name) = explicit.keys().find(|n| !desc.params.iter().any(|p| &p.name == n)) {
            return Err(Error::Usage(format!(
                "{} has no parameter `{name}` (parameters: {})",
                desc.id,
                desc.param_names().join(", ")
            )));
        }
    }
    let opts = SweepOptions {
        jobs: args.jobs.get()?,
        fail_fast: args.fail_fast,
        outside_domain: args.allow_outside_domain,
    };
    let mut reports = Vec::with_capacity(targets.len());
    for desc in targets {
        let mut ranges: Ranges = desc.capped_ranges(args.max.min(desc.sweep_cap));
        ranges.retain(|name, _| !explicit.contains_key(name));
        for (name, r) in &explicit {
            if desc.params.iter().any(|p| p.name == name) {
                ranges.insert(name.clone(), *r);
            }
        }
        let report = verify_identity(desc, &ranges, opts)?;
        reports.push(if args.no_timing { report.without_timing() } else { report });
        if args.fail_fast && !reports.last().is_some_and(|r| r.passed()) {
            break;
        }
    }
    output::reports(&reports, all, args.format)?;
    Ok(if reports.iter().all(|r| r.passed()) { Outcome::Pass } else { Outcome::Fail })
}

fn cmd_scan(args: &ScanArgs) -> Result<Outcome, Error> {
    let conjecture: Conjecture = args.conjecture.parse()?;
    let domain = ScanDomain { m: args.m, n: args.n };
    let fresh = ScanState::new(conjecture, args.p, domain)?.with_divisor_offset(args.perturb_divisor);
    let state = match &args.checkpoint {
        Some(path) if path.exists() => {
            let saved = load_checkpoint(path)?;
            let same = saved.conjecture == fresh.conjecture
                && saved.p == fresh.p
                && saved.domain == fresh.domain
                && saved.divisor_offset == fresh.divisor_offset;
            if !same {
                return Err(Error::Usage(format!(
                    "{} holds a different scan ({}); remove it or match its arguments",
                    path.display(),
                    saved.summary()
                )));
            }
            saved
        }
        _ => fresh,
    };
    let opts = ScanOptions {
        jobs: args.jobs.get()?,
        batch: args.batch,
        max_cells: args.max_cells,
        checkpoint: args.checkpoint.clone(),
    };
    let state = run_scan(state, &opts)?;
    let state = if args.no_timing { state.without_timing() } else { state };
    output::scan(&state, args.format, !args.no_timing)?;
    Ok(if state.counterexamples.is_empty() { Outcome::Pass } else { Outcome::Fail })
}

fn sequence_kind(name: &str, param: Option<i64>) -> Result<SequenceKind, Error> {
    let need = |what: &str| param.ok_or_else(|| Error::Usage(format!("{name} needs --param {what}")));
    let kind = match name {
        "catalan" => SequenceKind::Catalan,
        "a" | "seq-a" => SequenceKind::SeqA,
        "b" | "seq-b" => SequenceKind::SeqB,
        "gen-catalan" => SequenceKind::GenCatalan(need("k")?),
        "c-row" => SequenceKind::CRow(need("m")?),
        "b-row" => SequenceKind::BRow(need("n")?),
        "a-row" => SequenceKind::ARow(need("n")?),
        other => {
            return Err(Error::Usage(format!(
                "unknown sequence `{other}` (expected catalan, a, b, gen-catalan, c-row, b-row or a-row)"
            )))
        }
    };
    let takes_param = !matches!(kind, SequenceKind::Catalan | SequenceKind::SeqA | SequenceKind::SeqB);
    if param.is_some() && !takes_param {
        return Err(Error::Usage(format!("{name} takes no --param")));
    }
    Ok(kind)
}

fn cmd_seq(args: &SeqArgs) -> Result<Outcome, Error> {
    let spec = SequenceSpec::new(sequence_kind(&args.name, args.param)?, args.start, args.count);
    let terms = generate(&spec)?;
    output::sequence(&spec, &terms, args.format)?;
    Ok(Outcome::Pass)
}

fn cmd_list() -> Result<Outcome, Error> {
    for d in list_identities() {
        println!("{:<26} {:<32} {}", d.id, d.constraints(), d.statement);
    }
    Ok(Outcome::Pass)
}
