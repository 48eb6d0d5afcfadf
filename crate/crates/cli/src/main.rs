//! `zx`: evaluate, rewrite and verify ZX diagrams from the command line.
//!
//! Exit status is 0 on success, 1 when a check fails and 2 on usage, parse or
//! resource errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zx_core::protocols::{
    qkd_check_lemmas, qkd_simulate, sdc_n_ghz_verify, sdc_verify_all, ProtocolReport,
};
use zx_core::rewrite::{
    apply_in, check_soundness, find_matches_in, replay_derivation, simplify, Rule, RuleName,
    ScalarMode, Strategy, Trace, DERIVATIONS,
};
use zx_core::semantics::{equal_up_to_scalar, evaluate_with, format_sig, EvalOptions, Matrix};
use zx_core::{zxg, Diagram, ZxError};

#[derive(Parser)]
#[command(
    name = "zx",
    version,
    about = "ZX-calculus evaluation, rewriting and protocol checks"
)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Tolerance for equality up to scalar.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    tol: f64,
    /// Largest tensor (in wires) the evaluator may build.
    #[arg(long, global = true, default_value_t = 14, value_parser = clap::value_parser!(u32).range(1..))]
    max_qubits: u32,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Step limit for simplification.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
    steps: u32,
    /// Keep scalars exact by adding or removing √2 diamonds.
    #[arg(long, global = true)]
    strict_scalars: bool,
    /// Write rewrite traces to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    trace: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the matrix of a diagram.
    Eval { file: PathBuf },
    /// Compare two diagrams up to a nonzero scalar.
    Equal { a: PathBuf, b: PathBuf },
    /// Apply a rule (e.g. `S1`, `C^-1`) at its first match.
    Rewrite {
        file: PathBuf,
        rule: String,
        /// Use the n-th match instead of the first.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Simplify with a bounded strategy.
    Simplify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Safe)]
        strategy: StrategyArg,
    },
    /// Check rule soundness on random instances.
    Soundness {
        /// Rules to check; all of them when omitted.
        rules: Vec<String>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Number of consecutive seeds, starting at --seed.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
    },
    /// Replay scripted derivations and print their traces.
    Derivations {
        /// Derivations to replay; all of them when omitted.
        names: Vec<String>,
    },
    /// Verify a protocol.
    #[command(subcommand)]
    Verify(Verify),
    /// Export a diagram as Graphviz DOT.
    Render {
        file: PathBuf,
        /// Output file; standard output when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Superdense coding with GHZ states.
    SdcGhz {
        /// Check the n-qubit scheme instead of the eight three-qubit states.
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=6))]
        n: Option<u32>,
    },
    /// Pairwise key distribution with W states.
    QkdW3 {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u32).range(1..))]
        rounds: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Safe,
    Full,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

/// Failures that end the run with status 2.
#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Zx(Option<PathBuf>, ZxError),
}

impl From<ZxError> for CliError {
    fn from(e: ZxError) -> CliError {
        CliError::Zx(None, e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Zx(Some(p), e) => write!(f, "{}: {e}", p.display()),
            CliError::Zx(None, e) => write!(f, "{e}"),
        }
    }
}

/// Text for standard output and whether every check passed.
struct Output {
    text: String,
    pass: bool,
}

impl Output {
    fn pass(text: String) -> Output {
        Output { text, pass: true }
    }
}

struct Ctx<'a> {
    cfg: &'a Config,
}

impl Ctx<'_> {
    fn mode(&self) -> ScalarMode {
        if self.cfg.strict_scalars {
            ScalarMode::Strict
        } else {
            ScalarMode::UpToScalar
        }
    }

    fn eval_opts(&self) -> EvalOptions {
        EvalOptions {
            max_wires: self.cfg.max_qubits as usize,
            ..EvalOptions::default()
        }
    }

    fn load(&self, path: &Path) -> Result<Diagram, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        zxg::parse(&text).map_err(|e| CliError::Zx(Some(path.to_path_buf()), e))
    }

    fn evaluate(&self, d: &Diagram) -> Result<Matrix, CliError> {
        Ok(evaluate_with(d, &self.eval_opts())?)
    }

    /// Sends a trace to `--trace` if given, otherwise appends it to `out`.
    fn emit_trace(&self, out: &mut String, trace: &str) -> Result<(), CliError> {
        match &self.cfg.trace {
            Some(p) => fs::write(p, trace).map_err(|e| CliError::Io(p.clone(), e)),
            None => {
                out.push_str(trace);
                Ok(())
            }
        }
    }
}

fn complex(z: zx_core::semantics::C) -> String {
    format!("({},{})", format_sig(z.re), format_sig(z.im))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Ctx { cfg: &cli.config };
    match &cli.command {
        Command::Eval { file } => {
            let d = ctx.load(file)?;
            let m = ctx.evaluate(&d)?;
            Ok(Output::pass(format!(
                "{}x{} matrix\n{m}",
                m.rows(),
                m.cols()
            )))
        }
        Command::Equal { a, b } => {
            let (da, db) = (ctx.load(a)?, ctx.load(b)?);
            let (ma, mb) = (ctx.evaluate(&da)?, ctx.evaluate(&db)?);
            if (ma.rows(), ma.cols()) != (mb.rows(), mb.cols()) {
                return Ok(Output {
                    text: format!(
                        "not equal (shapes {}x{} and {}x{})\n",
                        ma.rows(),
                        ma.cols(),
                        mb.rows(),
                        mb.cols()
                    ),
                    pass: false,
                });
            }
            let v = equal_up_to_scalar(&ma, &mb, cli.config.tol)?;
            let text = match (v.equal, v.scalar) {
                (true, Some(l)) => format!("equal up to scalar λ={}\n", complex(l)),
                (true, None) => "equal (both zero)\n".to_string(),
                (false, _) => format!("not equal (residual {})\n", format_sig(v.max_residual)),
            };
            Ok(Output {
                text,
                pass: v.equal,
            })
        }
        Command::Rewrite { file, rule, index } => {
            let d = ctx.load(file)?;
            let rule: Rule = rule.parse()?;
            let ms = find_matches_in(rule, &d, ctx.mode());
            let Some(m) = ms.get(*index) else {
                return Ok(Output {
                    text: format!("{rule}: {} matches, none at index {index}\n", ms.len()),
                    pass: false,
                });
            };
            let next = apply_in(&d, m, ctx.mode())?;
            let mut trace = Trace::new(&d);
            trace.push(m, &next);
            let mut text = format!("{m}\n");
            ctx.emit_trace(&mut text, &trace.to_string())?;
            if cli.config.trace.is_some() {
                text.push_str(&zxg::serialize(&next));
            }
            Ok(Output::pass(text))
        }
        Command::Simplify { file, strategy } => {
            let d = ctx.load(file)?;
            let strategy = match strategy {
                StrategyArg::Safe => Strategy::Safe,
                StrategyArg::Full => Strategy::Full,
            };
            let s = simplify(&d, strategy, cli.config.steps as usize, ctx.mode());
            let mut text = format!(
                "{} steps, size {} -> {}{}\n",
                s.trace.len(),
                d.size(),
                s.diagram.size(),
                if s.hit_limit {
                    " (step limit reached)"
                } else {
                    ""
                }
            );
            if let Some(p) = &cli.config.trace {
                fs::write(p, s.trace.to_string()).map_err(|e| CliError::Io(p.clone(), e))?;
            }
            text.push_str(&zxg::serialize(&s.diagram));
            Ok(Output::pass(text))
        }
        Command::Soundness {
            rules,
            samples,
            seeds,
        } => {
            let names: Vec<RuleName> = if rules.is_empty() {
                RuleName::ALL.to_vec()
            } else {
                rules.iter().map(|r| r.parse()).collect::<Result<_, _>>()?
            };
            let mut text = String::new();
            let (mut checks, mut failures) = (0, 0);
            for name in names {
                for seed in cli.config.seed..cli.config.seed + seeds {
                    let r = check_soundness(name, *samples, seed);
                    checks += r.checks;
                    failures += r.failures.len();
                    writeln!(
                        text,
                        "{name} seed {seed}: {} samples, {} checks ({} strict), {} failures",
                        r.samples,
                        r.checks,
                        r.strict_checks,
                        r.failures.len()
                    )
                    .unwrap();
                    for f in &r.failures {
                        writeln!(
                            text,
                            "  sample {} {} {}: {}",
                            f.sample, f.rule, f.summary, f.reason
                        )
                        .unwrap();
                        for line in f.repro.lines() {
                            writeln!(text, "    {line}").unwrap();
                        }
                    }
                }
            }
            writeln!(text, "total: {checks} checks, {failures} failures").unwrap();
            Ok(Output {
                text,
                pass: failures == 0,
            })
        }
        Command::Derivations { names } => {
            let names: Vec<&str> = if names.is_empty() {
                DERIVATIONS.to_vec()
            } else {
                names.iter().map(String::as_str).collect()
            };
            let mut text = String::new();
            let mut traces = String::new();
            let mut pass = true;
            for name in names {
                let d = replay_derivation(name)?;
                pass &= d.passed();
                writeln!(
                    text,
                    "{name}: {} steps, {}{}",
                    d.trace.len(),
                    if d.passed() {
                        "matches the stated result"
                    } else {
                        "DIFFERS from the stated result"
                    },
                    d.verdict
                        .scalar
                        .map(|l| format!(" (λ={})", complex(l)))
                        .unwrap_or_default()
                )
                .unwrap();
                writeln!(traces, "== {name}").unwrap();
                traces.push_str(&d.trace.to_string());
            }
            ctx.emit_trace(&mut text, &traces)?;
            Ok(Output { text, pass })
        }
        Command::Verify(Verify::SdcGhz { n }) => {
            let report = match n {
                None => sdc_verify_all()?,
                Some(n) => sdc_n_ghz_verify(*n as usize)?,
            };
            Ok(report_output(&[report]))
        }
        Command::Verify(Verify::QkdW3 { rounds }) => {
            let lemmas = qkd_check_lemmas()?;
            let (sim, _) = qkd_simulate(*rounds as usize, cli.config.seed)?;
            Ok(report_output(&[lemmas, sim]))
        }
        Command::Render { file, output } => {
            let d = ctx.load(file)?;
            let dot = zxg::to_dot(&d);
            match output {
                Some(p) => {
                    fs::write(p, dot).map_err(|e| CliError::Io(p.clone(), e))?;
                    Ok(Output::pass(String::new()))
                }
                None => Ok(Output::pass(dot)),
            }
        }
    }
}

fn report_output(reports: &[ProtocolReport]) -> Output {
    let mut text = String::new();
    for r in reports {
        text.push_str(&r.to_string());
    }
    Output {
        text,
        pass: reports.iter().all(ProtocolReport::passed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let line = msg
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("usage error");
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
