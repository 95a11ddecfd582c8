use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use radlab::conjectures::{run_predicate, PointClass, Predicate};
use radlab::enumerate::{distribution, tail_counts_norm_auto};
use radlab::exact::parse_rational;
use radlab::ledger::{self, RunLedgerEntry};
use radlab::search::verify::{verify_paper, VerifyConfig};
use radlab::search::{
    exhaustive_search_resumable, hunt, local_descent, random_search, Checkpoint, ExhaustiveConfig,
    ExhaustiveOutcome, HuntPredicate, RunControl, SearchMode, SearchTarget, DEFAULT_MAX_VECTORS,
};
use radlab::{CoeffVec, Error, Result};

/// Exact tail probabilities of Rademacher sign sums.
#[derive(Parser)]
#[command(name = "radlab", version)]
struct Cli {
    /// Ledger file appended to whenever a report is written with --out
    /// (default: ledger.jsonl next to the report).
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stats {
    Tails,
    Distribution,
}

#[derive(Subcommand)]
enum Command {
    /// Tail counts and probabilities of one vector.
    Eval {
        #[arg(long)]
        vector: String,
        #[arg(long, value_enum, default_value = "tails")]
        stats: Stats,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one predicate; exit 1 when it is violated.
    Check {
        /// tomaszewski, tails, delta, delta-alt, pairing, comb, hk or gprime
        predicate: String,
        #[arg(long)]
        vector: String,
        /// Fixed delta as p/q.
        #[arg(long)]
        delta: Option<String>,
        /// Sweep every critical delta instead of a fixed one.
        #[arg(long)]
        delta_sweep: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize T, G or Gprime; prints one JSON record.
    Search {
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        /// Entry-sum bound (exhaustive) or entry bound (random).
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Starting vector for descent.
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 1000)]
        steps: u64,
        /// Refuse exhaustive runs visiting more raw vectors than this.
        #[arg(long)]
        max_vectors: Option<u128>,
        /// Continue an interrupted exhaustive run.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Where to write checkpoints (default: radlab-checkpoint.json).
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Checkpoint every this many batches of 2048 vectors.
        #[arg(long, default_value_t = 64)]
        checkpoint_every: u64,
        /// Interrupt after this many vectors (as if signalled).
        #[arg(long)]
        stop_after: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random counterexample hunt; JSONL, one line per violation then a summary.
    Hunt {
        #[arg(long)]
        predicate: String,
        /// Dimension range such as 2..9 (inclusive) or a single n.
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        entry_bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the fixed claims suite; exit 0 iff every row passes.
    VerifyPaper {
        /// Small budgets for a fast smoke run.
        #[arg(long)]
        quick: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Exit status plus the text printed to standard output.
struct Outcome {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("RADLAB_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: RADLAB_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, &args) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_vector(text: &str) -> Result<CoeffVec> {
    let a: CoeffVec = text.parse()?;
    if a.is_zero() {
        return Err(Error::ZeroNorm);
    }
    Ok(a)
}

fn write_report(cli: &Cli, command: &str, args: &[String], out: &Path, body: &str) -> Result<()> {
    fs::write(out, body)?;
    let ledger_path = cli.ledger.clone().unwrap_or_else(|| {
        out.parent()
            .unwrap_or_else(|| Path::new("."))
            .join("ledger.jsonl")
    });
    ledger::append(
        &ledger_path,
        &RunLedgerEntry::for_report(command, args, out)?,
    )
}

fn run(cli: &Cli, args: &[String]) -> Result<Outcome> {
    match &cli.command {
        Command::Eval { vector, stats, out } => {
            let a = parse_vector(vector)?;
            let t = tail_counts_norm_auto(&a)?;
            let mut report = json!({
                "vector": a,
                "n": a.n(),
                "norm_sq": a.norm_sq().to_string(),
                "counts": t,
                "p_lt_norm": t.p_lt(),
                "p_le_norm": t.p_le(),
                "p_eq_norm": t.p_eq(),
                "p_ge_norm": t.p_ge(),
                "p_gt_norm": t.p_gt(),
                "class": if t.at > 0 { PointClass::B } else { PointClass::A },
            });
            if let Stats::Distribution = stats {
                let dist = distribution(&a)?;
                report["distribution"] = json!(dist
                    .values
                    .iter()
                    .map(|(v, c)| json!([v, c]))
                    .collect::<Vec<_>>());
            }
            let text = serde_json::to_string_pretty(&report)? + "\n";
            if let Some(out) = out {
                write_report(cli, "eval", args, out, &text)?;
            }
            Ok(Outcome { text, code: 0 })
        }
        Command::Check {
            predicate,
            vector,
            delta,
            delta_sweep,
            out,
        } => {
            let mut pred: Predicate = predicate.parse()?;
            if *delta_sweep {
                if pred != Predicate::Delta && pred != Predicate::DeltaSweep {
                    return Err(Error::InvalidArgument(
                        "--delta-sweep applies to the delta predicate".into(),
                    ));
                }
                pred = Predicate::DeltaSweep;
            }
            let a = parse_vector(vector)?;
            let delta = delta.as_deref().map(parse_rational).transpose()?;
            let report = run_predicate(pred, &a, delta.as_ref())?;
            let text = report.to_json()? + "\n";
            if let Some(out) = out {
                write_report(cli, "check", args, out, &text)?;
            }
            let code = if report.is_violation() { 1 } else { 0 };
            Ok(Outcome { text, code })
        }
        Command::Search {
            target,
            n,
            mode,
            bound,
            trials,
            seed,
            start,
            steps,
            max_vectors,
            resume,
            checkpoint,
            checkpoint_every,
            stop_after,
            out,
        } => {
            let mode: SearchMode = mode.parse()?;
            let resume: Option<Checkpoint> = match resume {
                Some(p) => Some(serde_json::from_str(&fs::read_to_string(p)?)?),
                None => None,
            };
            let target: SearchTarget = match (target, &resume) {
                (Some(t), _) => t.parse()?,
                (None, Some(ck)) => ck.target,
                (None, None) => return Err(Error::InvalidArgument("--target is required".into())),
            };
            let record = match mode {
                SearchMode::Exhaustive => {
                    let n = n
                        .or(resume.as_ref().map(|c| c.n))
                        .ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
                    let bound = bound.or(resume.as_ref().map(|c| c.bound)).unwrap_or(24);
                    let mut cfg = ExhaustiveConfig::new(n, target, bound);
                    cfg.max_vectors = max_vectors.unwrap_or(DEFAULT_MAX_VECTORS);
                    let stop = Arc::new(AtomicBool::new(false));
                    {
                        let stop = Arc::clone(&stop);
                        let _ = ctrlc::set_handler(move || stop.store(true, Ordering::SeqCst));
                    }
                    let ck_path = checkpoint
                        .clone()
                        .unwrap_or_else(|| PathBuf::from("radlab-checkpoint.json"));
                    let control = RunControl {
                        stop: Some(&stop),
                        stop_after: *stop_after,
                        checkpoint_every: if checkpoint.is_some() {
                            *checkpoint_every
                        } else {
                            0
                        },
                    };
                    let write_ck = |ck: &Checkpoint| -> Result<()> {
                        fs::write(&ck_path, serde_json::to_string_pretty(ck)? + "\n")?;
                        Ok(())
                    };
                    match exhaustive_search_resumable(&cfg, resume.as_ref(), &control, write_ck)? {
                        ExhaustiveOutcome::Finished(r) => r,
                        ExhaustiveOutcome::Interrupted(ck) => {
                            eprintln!("interrupted; checkpoint written to {}", ck_path.display());
                            let text = serde_json::to_string(&json!({ "checkpoint": ck }))? + "\n";
                            let code = if stop.load(Ordering::SeqCst) { 130 } else { 0 };
                            return Ok(Outcome { text, code });
                        }
                    }
                }
                SearchMode::Random => {
                    let n = n.ok_or_else(|| Error::InvalidArgument("--n is required".into()))?;
                    random_search(n, target, *trials, *seed, bound.unwrap_or(20))?
                }
                SearchMode::Descent => {
                    let start = start
                        .as_deref()
                        .ok_or_else(|| Error::InvalidArgument("--start is required".into()))?;
                    local_descent(&parse_vector(start)?, target, *steps)?
                }
            };
            let text = serde_json::to_string(&record)? + "\n";
            if let Some(out) = out {
                write_report(cli, "search", args, out, &text)?;
            }
            let code = if record.floor_violated { 1 } else { 0 };
            Ok(Outcome { text, code })
        }
        Command::Hunt {
            predicate,
            n,
            trials,
            seed,
            entry_bound,
            out,
        } => {
            let predicate: HuntPredicate = predicate.parse()?;
            let (lo, hi) = parse_range(n)?;
            let outcome = hunt(predicate, lo..=hi, *trials, *seed, *entry_bound)?;
            let mut text = String::new();
            for v in &outcome.violations {
                text += &(serde_json::to_string(v)? + "\n");
            }
            let summary = json!({
                "predicate": outcome.predicate,
                "n_min": outcome.n_min,
                "n_max": outcome.n_max,
                "trials": outcome.trials,
                "seed": outcome.seed,
                "entry_bound": outcome.entry_bound,
                "examined": outcome.examined,
                "violations": outcome.violations.len(),
            });
            text += &(serde_json::to_string(&json!({ "summary": summary }))? + "\n");
            if let Some(out) = out {
                write_report(cli, "hunt", args, out, &text)?;
            }
            let code = if outcome.clean() { 0 } else { 1 };
            Ok(Outcome { text, code })
        }
        Command::VerifyPaper { quick, out } => {
            let cfg = if *quick {
                VerifyConfig::quick()
            } else {
                VerifyConfig::full()
            };
            let report = verify_paper(&cfg);
            if let Some(out) = out {
                let body = serde_json::to_string_pretty(&report)? + "\n";
                write_report(cli, "verify-paper", args, out, &body)?;
            }
            let passed = report.rows.iter().filter(|r| r.pass).count();
            let text = format!(
                "{}\n{passed}/{} claims pass\n",
                report.table(),
                report.rows.len()
            );
            Ok(Outcome {
                text,
                code: if report.all_pass() { 0 } else { 1 },
            })
        }
    }
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse {
        input: text.to_string(),
        reason: "expected N or LO..HI".into(),
    };
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match text.split_once("..") {
        Some((lo, hi)) => Ok((num(lo)?, num(hi.trim_start_matches('='))?)),
        None => {
            let n = num(text)?;
            Ok((n, n))
        }
    }
}
