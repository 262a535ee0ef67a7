use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use netmate::compiler::{compile, ScenarioManifest, Theorem};
use netmate::harness::{
    self, format_ledger, parse_instance, parse_state, parse_witness, random_playout, render,
    replay, to_canonical_json, HarnessError, StateFile, WitnessFile,
};
use netmate::solver::{solve, MateMode, SolverConfig, DEFAULT_MAX_ACTIONS_PER_TURN};

const EXIT_USAGE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_DISAGREE: u8 = 3;

/// Compile 2-Partition instances into Netrunner positions and decide the
/// resulting mate problems by exhaustive search.
#[derive(Parser)]
#[command(name = "netmate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile an instance file into a position (JSON).
    Compile {
        instance: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        /// Write the position here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide Runner mate-in-1 or Corp mate-in-2 for a position.
    Solve {
        state: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        mate: u8,
        /// Write the witness here when the position is winnable.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Disable the transposition table.
        #[arg(long)]
        no_memo: bool,
        /// Cap on actions within one turn.
        #[arg(long, default_value_t = DEFAULT_MAX_ACTIONS_PER_TURN)]
        max_actions: usize,
    },
    /// Replay a witness and print the resource ledger.
    Replay { state: PathBuf, witness: PathBuf },
    /// Compare solver and oracle over every small instance.
    Verify {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        max_value: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        mate: u8,
        #[arg(long)]
        no_memo: bool,
        /// Also run a seeded random playout per instance and check the
        /// state invariants along it.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Draw a position as text.
    Render { state: PathBuf },
}

enum Failure {
    Usage(String),
    Domain(String),
    Disagree(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn mate_mode(n: u8) -> MateMode {
    if n == 1 {
        MateMode::RunnerMate1
    } else {
        MateMode::CorpMate2
    }
}

fn manifest_summary(m: &ScenarioManifest) -> String {
    let mut s = format!(
        "theorem {}: n={} 2t={} target={}",
        m.theorem.number(),
        m.instance.len(),
        m.t_times_2,
        m.per_server_target
    );
    if let Some(c) = m.c {
        s.push_str(&format!(" c={c}"));
    }
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compile {
            instance,
            theorem,
            out,
        } => {
            let inst = parse_instance(&read(&instance)?)?;
            let theorem = Theorem::from_number(theorem).expect("range-checked");
            let (state, manifest) =
                compile(theorem, &inst).map_err(|e| Failure::Domain(format!("rejected: {e}")))?;
            let summary = manifest_summary(&manifest);
            let json = to_canonical_json(&StateFile::new(state, Some(manifest)));
            match out {
                Some(path) => {
                    write(&path, &json)?;
                    println!("{summary}");
                }
                None => {
                    print!("{json}");
                    eprintln!("{summary}");
                }
            }
        }
        Command::Solve {
            state,
            mate,
            out,
            no_memo,
            max_actions,
        } => {
            let file = parse_state(&read(&state)?)?;
            let mode = mate_mode(mate);
            let config = SolverConfig {
                memo: !no_memo,
                max_actions_per_turn: max_actions,
                ..SolverConfig::default()
            };
            let result = solve(&file.state, mode, &config).map_err(HarnessError::from)?;
            if result.winnable {
                println!("WINNABLE (mate in {mate})");
                let witness = result.witness.clone().unwrap_or_default();
                if let Some(path) = &out {
                    let file = WitnessFile::new(mode, witness.clone());
                    write(path, &to_canonical_json(&file))?;
                }
                println!("witness ({} actions):", witness.len());
                for (i, a) in witness.iter().enumerate() {
                    println!("  {:>3}. {a}", i + 1);
                }
            } else {
                println!("NOT WINNABLE");
                if let Some(note) = &result.refutation_note {
                    println!("{note}");
                }
            }
            println!("nodes explored: {}", result.nodes_explored);
            println!("elapsed: {:.3}s", result.elapsed.as_secs_f64());
        }
        Command::Replay { state, witness } => {
            let file = parse_state(&read(&state)?)?;
            let w = parse_witness(&read(&witness)?)?;
            let report = replay(&file.state, &w.actions)?;
            print!("{}", format_ledger(&report.rows));
            println!("final status: {}", report.status());
        }
        Command::Verify {
            max_n,
            max_value,
            mate,
            no_memo,
            seed,
        } => {
            let mode = mate_mode(mate);
            let config = SolverConfig {
                memo: !no_memo,
                ..SolverConfig::default()
            };
            let rows = harness::verify(max_n, max_value, mode, &config)?;
            println!(
                "{:<24} {:>7} {:>7} {:>8} {:>10}",
                "instance", "oracle", "solver", "witness", "nodes"
            );
            let mut agree = 0;
            for row in &rows {
                let values = row
                    .values
                    .iter()
                    .map(u64::to_string)
                    .collect::<Vec<_>>()
                    .join(" ");
                let witness = match row.witness_replays {
                    Some(true) => "ok",
                    Some(false) => "BAD",
                    None => "-",
                };
                println!(
                    "{:<24} {:>7} {:>7} {:>8} {:>10}{}",
                    values,
                    row.oracle,
                    row.solver,
                    witness,
                    row.nodes,
                    if row.agrees() { "" } else { "  DISAGREE" }
                );
                agree += usize::from(row.agrees());
            }
            if let Some(seed) = seed {
                playout_checks(max_n, max_value, mode, seed)?;
            }
            println!("{agree}/{} agree", rows.len());
            if agree != rows.len() {
                return Err(Failure::Disagree(format!(
                    "{} disagreement(s)",
                    rows.len() - agree
                )));
            }
        }
        Command::Render { state } => {
            let file = parse_state(&read(&state)?)?;
            if let Some(m) = &file.manifest {
                println!("{}", manifest_summary(m));
            }
            print!("{}", render(&file.state));
        }
    }
    Ok(())
}

/// One random playout of at most 40 actions per instance; every visited
/// state must satisfy the structural invariants.
fn playout_checks(max_n: usize, max_value: u64, mode: MateMode, seed: u64) -> Result<(), Failure> {
    let instances = harness::campaign_instances(max_n, max_value)?;
    for (i, inst) in instances.iter().enumerate() {
        let (state, _) = compile(harness::theorem_for(mode), inst)
            .map_err(|e| Failure::Domain(e.to_string()))?;
        let steps = random_playout(&state, seed.wrapping_add(i as u64), 40)?;
        for step in &steps {
            if let Err(e) = step.outcome.next_state.check_invariants() {
                return Err(Failure::Disagree(format!(
                    "playout invariant broken on {:?}: {e}",
                    inst.values()
                )));
            }
        }
    }
    println!(
        "random playouts: {} instances, invariants hold",
        instances.len()
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Disagree(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DISAGREE)
        }
    }
}
