use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use dualities::harness::{self, CheckReport, Corruption, Params, Summary, Verdict};
use dualities::signs::{default_assignment, verify_table, Symbol};
use dualities::witt::witt_classify;

/// Exact checker for closed monoidal dualities over F_p.
#[derive(Parser, Debug)]
#[command(name = "dualities", version, about)]
struct Cli {
    /// Negate the global sign of a symbol (repeatable), e.g. `--flip tp1`.
    #[arg(long, global = true, value_name = "SYMBOL")]
    flip: Vec<String>,
    /// Replace a symbol by a constant sign (repeatable), e.g. `--set tp1=+1`.
    #[arg(long = "set", global = true, value_name = "SYMBOL=SIGN")]
    set: Vec<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one registered diagram.
    Check {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check every registered diagram.
    CheckAll {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        size: SizeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Verify the sign compatibility table for the (a, b) assignments.
    VerifySigns {
        /// Only this value of a (default: both).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i8>,
        /// Only this value of b (default: both).
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i8>,
    },
    /// Classify the Witt group of F_p by brute force.
    Witt {
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 4)]
        maxdim: usize,
    },
    /// Re-evaluate a saved report or summary.
    Replay { report: PathBuf },
    /// List the registry and audit it against the coverage map.
    List,
}

#[derive(Args, Debug)]
struct SizeArgs {
    #[arg(long, default_value_t = 3)]
    p: u32,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    #[arg(long, default_value_t = 3)]
    max_len: usize,
    #[arg(long, default_value_t = 3)]
    max_set: usize,
    #[arg(long, default_value_t = 25)]
    trials: usize,
}

impl SizeArgs {
    fn params(&self) -> Params {
        Params { p: self.p, max_dim: self.max_dim, max_len: self.max_len, max_set: self.max_set, trials: self.trials }
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

impl OutArgs {
    fn emit(&self, json: String, text: impl FnOnce() -> String) -> Result<()> {
        if let Some(path) = &self.out {
            std::fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
        }
        if self.json {
            println!("{json}");
        } else {
            print!("{}", text());
        }
        Ok(())
    }
}

fn corruption(cli: &Cli) -> Result<Corruption> {
    let mut c = Corruption::none();
    for name in &cli.flip {
        c.flips.push(Symbol::from_name(name)?);
    }
    for item in &cli.set {
        let (name, sign) = item.split_once('=').with_context(|| format!("expected SYMBOL=SIGN, got {item:?}"))?;
        let v: i8 = match sign.trim() {
            "+1" | "1" | "+" => 1,
            "-1" | "-" => -1,
            other => bail!("sign must be +1 or -1, got {other:?}"),
        };
        c.constants.push((Symbol::from_name(name.trim())?, v));
    }
    Ok(c)
}

fn report_line(r: &CheckReport) -> String {
    let verdict = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
    };
    let mut line = format!("{verdict}  {:<16} {:>3} trials {:>9.1} ms  {}", r.id, r.trials_run, r.elapsed_ms, r.instance);
    if let Some(n) = &r.note {
        line.push_str(&format!("  ({n})"));
    }
    if let Some(f) = &r.failure {
        line.push_str(&format!("\n      first failure at trial {}", f.trial));
        if let Some(e) = &f.error {
            line.push_str(&format!(": {e}"));
        }
        if let harness::Counterexample::Indices(x) = &f.counterexample {
            line.push_str(&format!(" at indices {x:?}"));
        }
    }
    line.push('\n');
    line
}

fn summary_text(s: &Summary) -> String {
    let mut out: String = s.reports.iter().map(report_line).collect();
    out.push_str(&format!(
        "{} passed, {} failed, signs {}, seed {}, {:.1} s\n",
        s.passed,
        s.failed,
        s.corruption.describe(),
        s.seed,
        s.elapsed_ms / 1e3
    ));
    out
}

fn status(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Check { id, seed, size, out } => {
            let r = harness::run_diagram_with(id, *seed, &size.params(), &corruption(cli)?)?;
            out.emit(serde_json::to_string_pretty(&r)?, || report_line(&r))?;
            Ok(status(r.verdict == Verdict::Pass))
        }
        Command::CheckAll { seed, size, out } => {
            let s = harness::run_all_with(*seed, &size.params(), &corruption(cli)?)?;
            out.emit(serde_json::to_string_pretty(&s)?, || summary_text(&s))?;
            Ok(status(s.all_pass()))
        }
        Command::VerifySigns { a, b } => {
            let c = corruption(cli)?;
            let pick = |v: Option<i8>| -> Result<Vec<i8>> {
                match v {
                    None => Ok(vec![1, -1]),
                    Some(x) if x == 1 || x == -1 => Ok(vec![x]),
                    Some(x) => bail!("sign must be 1 or -1, got {x}"),
                }
            };
            let mut all = true;
            for a in pick(*a)? {
                for b in pick(*b)? {
                    let rows = verify_table(&c.apply(default_assignment(a, b)));
                    let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
                    all &= bad.is_empty();
                    println!("a = {a:+}, b = {b:+}: {}/{} rows hold", rows.len() - bad.len(), rows.len());
                    for r in bad {
                        println!("  FAIL {:<6} {}  at {:?}  ({})", r.id, r.equation, r.counterexample.clone().unwrap_or_default(), r.reason);
                    }
                }
            }
            Ok(status(all))
        }
        Command::Witt { p, maxdim } => {
            let w = witt_classify(*p, *maxdim)?;
            print!("{}", w.render());
            println!("cyclic: {}", w.is_cyclic());
            Ok(ExitCode::SUCCESS)
        }
        Command::Replay { report } => {
            let text = std::fs::read_to_string(report).with_context(|| format!("reading {}", report.display()))?;
            let reports: Vec<CheckReport> = match serde_json::from_str::<Summary>(&text) {
                Ok(s) => s.reports.into_iter().filter(|r| r.verdict == Verdict::Fail).collect(),
                Err(_) => vec![serde_json::from_str::<CheckReport>(&text).context("not a report or summary")?],
            };
            let mut all = true;
            for r in &reports {
                let out = harness::replay(r)?;
                all &= out.reproduced;
                let verdict = if out.verdict == Verdict::Pass { "PASS" } else { "FAIL" };
                let tag = if out.reproduced { "reproduced" } else { "NOT reproduced" };
                println!("{verdict}  {:<16} {tag}", out.id);
            }
            Ok(status(all))
        }
        Command::List => {
            for s in harness::registry() {
                println!("{:<16} {:<10} {}", s.id, format!("{:?}", s.family).to_lowercase(), s.anchor);
            }
            let a = harness::audit();
            if a.is_clean() {
                println!("registry matches the coverage map");
            } else {
                println!("coverage drift: missing {:?}, unlisted {:?}, duplicated {:?}", a.missing, a.unlisted, a.duplicates);
            }
            Ok(status(a.is_clean()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
