//! `occupy`: solve occupation games, check the pile closed forms, run the
//! subset-sum reduction, play against the engine, or serve the HTTP API.
//!
//! Exit codes: 0 success or a true verdict, 1 a false verdict, 2 usage
//! error, 3 invalid data, 4 solvers disagreeing under `--verify`.

mod play;

use std::fs;
use std::io;
use std::net::{IpAddr, Ipv4Addr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use occupation_core::classical::{closed_form, embed_variant, PileSolver, PileVariant, DEFAULT_PILE_CAP};
use occupation_core::format::{parse_game, serialize_game};
use occupation_core::game::{DEFAULT_SOLVE_CAP, MAX_ELEMENTS};
use occupation_core::reduction::{
    build_gadget, extract_witness, gadget_to_explicit, gadget_truth, subset_sum_oracle, SubsetSumInstance,
};
use occupation_core::{SolveConfig, Solver, TruthValue};
use occupation_service::wire::{CreateRequest, GameSpec, Mover};
use occupation_service::{Limits, Session, SessionStore, DEFAULT_IDLE_TTL};

const EXIT_FALSE: u8 = 1;
const EXIT_DATA: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "occupy", version, about = "Occupation games: solver, reduction and engine")]
struct Cli {
    /// Largest ground set the explicit solver expects to expand (at most 64).
    #[arg(long, global = true, env = "OCCUPY_SOLVE_CAP", default_value_t = DEFAULT_SOLVE_CAP, value_parser = parse_cap)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the game in a JSON game file from its start position.
    Solve { file: PathBuf },
    /// Nim value of the given pile sizes (closed form).
    Nim {
        sizes: Vec<usize>,
        /// Cross-check the closed form, the pile recursion and the explicit game.
        #[arg(long)]
        verify: bool,
    },
    /// Value of the take-one-or-two game on the given pile sizes (closed form).
    Subtraction {
        sizes: Vec<usize>,
        #[arg(long)]
        verify: bool,
    },
    /// Decide subset sum by solving the gadget game.
    Reduce {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Print the subset read off optimal play (1-based indices).
        #[arg(long)]
        witness: bool,
        /// Write the element-level gadget as a JSON game file.
        #[arg(long, value_name = "FILE")]
        emit_game: Option<PathBuf>,
    },
    /// Decide subset sum directly by tabulating reachable sums.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Play against the engine in the terminal.
    Play {
        #[command(subcommand)]
        game: PlayGame,
    },
    /// Serve the HTTP engine API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value_t = IpAddr::V4(Ipv4Addr::LOCALHOST))]
        host: IpAddr,
    },
}

#[derive(Debug, clap::Args)]
struct InstanceArgs {
    /// Comma-separated positive integers.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1)]
    weights: Vec<u64>,
    #[arg(long)]
    target: u64,
}

#[derive(Debug, Subcommand)]
enum PlayGame {
    Nim {
        sizes: Vec<usize>,
        #[arg(long)]
        engine_first: bool,
    },
    Subtraction {
        sizes: Vec<usize>,
        #[arg(long)]
        engine_first: bool,
    },
    Gadget {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        engine_first: bool,
    },
}

fn parse_cap(s: &str) -> Result<usize, String> {
    let cap: usize = s.parse().map_err(|e| format!("{e}"))?;
    if cap > MAX_ELEMENTS {
        return Err(format!("at most {MAX_ELEMENTS}"));
    }
    Ok(cap)
}

fn verdict(truth: TruthValue) -> ExitCode {
    println!("Truth={truth}");
    exit_for(truth.is_win())
}

fn exit_for(value: bool) -> ExitCode {
    if value {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FALSE)
    }
}

fn instance(args: &InstanceArgs) -> Result<SubsetSumInstance> {
    Ok(SubsetSumInstance::new(args.weights.clone(), args.target)?)
}

fn solve(file: &PathBuf, cap: usize) -> Result<ExitCode> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let game = parse_game(&text).with_context(|| format!("parsing {}", file.display()))?;
    let mut solver = Solver::new(&game, SolveConfig::with_cap(cap))?;
    let truth = solver.truth(game.start)?;
    let best = solver.best_move(game.start)?;
    let code = verdict(truth);
    if let Some(m) = best {
        println!("winning move {{{}}}", game.ground.labels_of(m).join(","));
    }
    Ok(code)
}

fn piles(variant: PileVariant, sizes: &[usize], verify: bool, cap: usize) -> Result<ExitCode> {
    let truth = closed_form(variant, sizes);
    if !verify {
        return Ok(verdict(truth));
    }
    let recursion = PileSolver::new(variant, DEFAULT_PILE_CAP).truth(sizes)?;
    let game = embed_variant(variant, sizes, cap)?;
    let explicit = Solver::new(&game, SolveConfig::with_cap(cap))?.truth(game.start)?;
    let code = verdict(truth);
    println!("closed form {truth}");
    println!("pile recursion {recursion}");
    println!("explicit game {explicit}");
    if recursion != truth || explicit != truth {
        println!("verify: solvers disagree");
        return Ok(ExitCode::from(EXIT_MISMATCH));
    }
    Ok(code)
}

fn reduce(args: &InstanceArgs, witness: bool, emit: Option<&PathBuf>) -> Result<ExitCode> {
    let instance = instance(args)?;
    let gadget = build_gadget(&instance)?;
    if let Some(warning) = gadget.size_warning() {
        eprintln!("warning: {warning}");
    }
    if let Some(path) = emit {
        let game = gadget_to_explicit(&gadget, MAX_ELEMENTS)?;
        fs::write(path, serialize_game(&game)? + "\n").with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {} ({} elements)", path.display(), game.ground.len());
    }
    let truth = gadget_truth(&gadget, &gadget.start())?;
    let code = verdict(truth);
    if witness {
        match extract_witness(&gadget)? {
            Some(w) => {
                let indices: Vec<String> = w.subset.iter().map(|i| (i + 1).to_string()).collect();
                let weights: Vec<String> = w.subset.iter().map(|&i| instance.weights()[i].to_string()).collect();
                println!("witness {{{}}}", indices.join(","));
                println!("sum {}={}", weights.join("+"), w.sum(&instance));
            }
            None => println!("witness none"),
        }
    }
    Ok(code)
}

fn play(game: PlayGame, cap: usize) -> Result<ExitCode> {
    let (game, engine_first) = match game {
        PlayGame::Nim { sizes, engine_first } => (GameSpec::Nim { piles: sizes }, engine_first),
        PlayGame::Subtraction { sizes, engine_first } => (GameSpec::Subtraction { piles: sizes }, engine_first),
        PlayGame::Gadget { instance, engine_first } => (
            GameSpec::Gadget {
                weights: instance.weights,
                target: instance.target,
            },
            engine_first,
        ),
    };
    let first = if engine_first { Mover::Engine } else { Mover::Human };
    let limits = Limits {
        explicit_cap: cap,
        ..Limits::default()
    };
    let session = Session::create("terminal", &CreateRequest { game, first }, &limits)?;
    play::run(session, io::stdin().lock(), io::stdout().lock())?;
    Ok(ExitCode::SUCCESS)
}

fn serve(host: IpAddr, port: u16, cap: usize) -> Result<ExitCode> {
    let limits = Limits {
        explicit_cap: cap,
        ..Limits::default()
    };
    let store = Arc::new(SessionStore::new(limits, DEFAULT_IDLE_TTL));
    let addr = SocketAddr::new(host, port);
    let runtime = tokio::runtime::Runtime::new()?;
    eprintln!("listening on http://{addr}");
    runtime
        .block_on(occupation_service::serve(addr, store))
        .with_context(|| format!("serving on {addr}"))?;
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve { file } => solve(&file, cli.cap),
        Command::Nim { sizes, verify } => piles(PileVariant::Nim, &sizes, verify, cli.cap),
        Command::Subtraction { sizes, verify } => piles(PileVariant::Subtraction, &sizes, verify, cli.cap),
        Command::Reduce {
            instance,
            witness,
            emit_game,
        } => reduce(&instance, witness, emit_game.as_ref()),
        Command::Oracle { instance: args } => {
            let answer = subset_sum_oracle(&instance(&args)?);
            println!("{answer}");
            Ok(exit_for(answer))
        }
        Command::Play { game } => play(game, cli.cap),
        Command::Serve { host, port } => serve(host, port, cli.cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
