use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use delaykit::io::{export_vcd, write_atomic, WaveFile};
use delaykit::lab::{
    check_constancy, check_determinism, check_inclusion, check_symmetry, check_time_invariance,
    generate_corpus, run_theorem_suite, CorpusConfig, Verdict,
};
use delaykit::sim::{simulate, Netlist, Stimulus};
use delaykit::{parse_dc, parse_rational, rat, transmission_delay, Budget, DelayCondition, Rational};

/// Exact delay conditions and asynchronous circuit simulation.
#[derive(Parser)]
#[command(name = "delaykit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a netlist driven by the signals of a wavefile.
    Sim {
        netlist: PathBuf,
        wavefile: PathBuf,
        #[arg(long, value_parser = rational)]
        horizon: Rational,
        /// Also write all signals as a VCD dump.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the transmission delay from one wavefile signal to another.
    Tdelay {
        wavefile: PathBuf,
        input: String,
        output: String,
    },
    /// Test a property of a delay condition on a random input corpus.
    Check {
        property: Property,
        #[arg(long)]
        dc: String,
        /// Right-hand side for `inclusion`.
        #[arg(long)]
        dc2: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of corpus inputs.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Members enumerated per input.
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Run the algebraic law suite.
    Theorems {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Determinism,
    Inclusion,
    TimeInvariance,
    Constancy,
    Symmetry,
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

type Result<T> = std::result::Result<T, Box<dyn Error>>;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn read_wavefile(path: &Path) -> Result<WaveFile> {
    read(path)?
        .parse()
        .map_err(|e| format!("{}: {e}", path.display()).into())
}

fn dc(text: &str) -> Result<DelayCondition> {
    parse_dc(text).map_err(|e| format!("`{text}`: {e}").into())
}

fn verdict_code(v: &Verdict) -> ExitCode {
    match v {
        Verdict::Holds => ExitCode::SUCCESS,
        Verdict::Fails { .. } => ExitCode::from(1),
        Verdict::Unknown { .. } => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sim {
            netlist,
            wavefile,
            horizon,
            output,
        } => {
            let net: Netlist = read(&netlist)?
                .parse()
                .map_err(|e| format!("{}: {e}", netlist.display()))?;
            let waves = read_wavefile(&wavefile)?;
            let stimulus: Stimulus = waves.iter().map(|(n, s)| (n, s.clone())).collect();
            let sim = simulate(&net, &stimulus, &horizon)?;
            let result: WaveFile = sim.iter().map(|(n, s)| (n, s.clone())).collect();
            print!("{result}");
            if let Some(p) = &sim.pending {
                eprintln!(
                    "warning: not settled at horizon {}: `{}` changes at {}",
                    sim.horizon, p.node, p.time
                );
            }
            if let Some(path) = output {
                export_vcd(sim.iter(), &path)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tdelay {
            wavefile,
            input,
            output,
        } => {
            let waves = read_wavefile(&wavefile)?;
            let get = |n: &str| {
                waves
                    .get(n)
                    .ok_or_else(|| format!("{}: no signal `{n}`", wavefile.display()))
            };
            println!("{}", transmission_delay(get(&input)?, get(&output)?)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            property,
            dc: text,
            dc2,
            seed,
            count,
            budget,
        } => {
            let i = dc(&text)?;
            let j = match (property, dc2) {
                (Property::Inclusion, Some(t)) => Some(dc(&t)?),
                (Property::Inclusion, None) => return Err("inclusion needs --dc2".into()),
                (_, Some(_)) => return Err("--dc2 is only used by inclusion".into()),
                (_, None) => None,
            };
            let corpus = generate_corpus(&CorpusConfig {
                seed,
                count,
                ..CorpusConfig::default()
            });
            let budget = Budget {
                members: budget,
                seed,
                ..Budget::default()
            };
            let verdict = match property {
                Property::Determinism => check_determinism(&i, &corpus, &budget)?,
                Property::Inclusion => check_inclusion(&i, j.as_ref().unwrap(), &corpus, &budget)?,
                Property::TimeInvariance => {
                    let shifts: Vec<Rational> = [(-2, 1), (-1, 1), (-1, 2), (1, 2), (1, 1), (3, 1)]
                        .into_iter()
                        .map(|(n, d)| rat(n, d))
                        .collect();
                    check_time_invariance(&i, &corpus, &shifts, &budget)?
                }
                Property::Constancy => {
                    let (verdict, witness) = check_constancy(&i, &corpus, &budget)?;
                    if verdict.holds() {
                        println!("witness: {witness}");
                    }
                    verdict
                }
                Property::Symmetry => check_symmetry(&i, &corpus, &budget)?,
            };
            println!("{verdict}");
            Ok(verdict_code(&verdict))
        }
        Command::Theorems { seed, json } => {
            let report = run_theorem_suite(seed);
            print!("{}", report.to_text());
            if let Some(path) = json {
                write_atomic(&path, report.to_json().as_bytes())?;
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
