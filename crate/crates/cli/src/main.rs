use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{ArgAction, Parser, Subcommand};
use qrobot_core::brain::{self, Brain, BrainKind, SensorInput, MEASURED};
use qrobot_core::circuit::{export_qasm, lower};
use qrobot_core::game::{write_jsonl, GameConfig};
use qrobot_core::qsim::outcome_distribution;
use qrobot_core::sweep::{run_sweep, SweepSummary};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_COLLISION: u8 = 3;

#[derive(Parser)]
#[command(name = "qrobot", version, about = "Quantum-controlled Braitenberg vehicle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the brain circuit on one sensor input and print all motor outcomes.
    CircuitRun {
        /// Sensor bits s1 s2, one of 00, 01, 10, 11.
        #[arg(long, value_parser = parse_sensor)]
        input: SensorInput,
        /// Use the Clifford+T form of the circuit.
        #[arg(long)]
        lowered: bool,
    },
    /// Write the lowered brain circuit as OpenQASM 2.0.
    CircuitExport {
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the motor command for one sensor reading.
    Drive {
        #[arg(long, action = ArgAction::Set, value_parser = parse_bit)]
        s1: bool,
        #[arg(long, action = ArgAction::Set, value_parser = parse_bit)]
        s2: bool,
        #[arg(long, default_value = "quantum", value_parser = parse_brain)]
        brain: BrainKind,
    },
    /// Play seeded episodes of the lane game.
    GameRun {
        /// First seed; episode i uses seed + i. Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        episodes: u64,
        /// JSON game config; missing fields take defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "quantum", value_parser = parse_brain)]
        brain: BrainKind,
        /// Write every tick of every episode as JSON lines, in seed order.
        #[arg(long)]
        trace_out: Option<PathBuf>,
    },
}

fn parse_sensor(s: &str) -> Result<SensorInput, String> {
    s.parse().map_err(|e: qrobot_core::Error| e.to_string())
}

fn parse_bit(s: &str) -> Result<bool, String> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

fn parse_brain(s: &str) -> Result<BrainKind, String> {
    s.parse().map_err(|_| format!("expected one of quantum, quantum-lowered, classical; got {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::CircuitRun { input, lowered } => {
            let kind = if lowered { BrainKind::QuantumLowered } else { BrainKind::Quantum };
            let state = Brain::new(kind)?.evolve(input)?;
            let dist = outcome_distribution(&state, &MEASURED)?;
            writeln!(out, "input={input} circuit={kind}")?;
            writeln!(out, "m1m2m3 probability")?;
            for (bits, p) in dist.probabilities() {
                writeln!(out, "{bits} {p:.6}")?;
            }
        }
        Command::CircuitExport { out: path } => {
            let text = export_qasm(&lower(&brain::build_robot_circuit())?, &MEASURED)?;
            match path {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Drive { s1, s2, brain } => {
            let motors = Brain::new(brain)?.drive(SensorInput::new(s1, s2))?;
            let label = motors.behavior().map_or("Unknown", |b| b.label());
            let b = u8::from;
            writeln!(out, "{} {} {} {label}", b(motors.m1), b(motors.m2), b(motors.m3))?;
        }
        Command::GameRun { seed, episodes, config, brain, trace_out } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    match GameConfig::from_json(&text) {
                        Ok(cfg) => cfg,
                        Err(err) => {
                            eprintln!("error: {}: {err}", path.display());
                            return Ok(ExitCode::from(EXIT_USAGE));
                        }
                    }
                }
                None => GameConfig::default(),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let results = run_sweep(&cfg, episodes, brain)?;
            if let Some(path) = trace_out {
                let file = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                let mut w = BufWriter::new(file);
                for r in &results {
                    write_jsonl(r, &mut w)?;
                }
                w.flush().with_context(|| format!("writing {}", path.display()))?;
            }
            for r in &results {
                writeln!(out, "seed={} status={} ticks={}", r.seed, r.status.name(), r.ticks_elapsed)?;
            }
            let summary = SweepSummary::of(&results);
            writeln!(out, "{}", summary.line())?;
            if summary.collisions > 0 {
                return Ok(ExitCode::from(EXIT_COLLISION));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
