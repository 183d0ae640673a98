use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use ctrs_core::analysis::{check_level_confluence, conditional_overlaps, dispose, property_reports, OverlapReport};
use ctrs_core::engine::ground_terms;
use ctrs_core::report::{self, Reachable};
use ctrs_core::{diamond_fuzz, parse, Bounds, Engine, SourceSpec};

/// Level-confluence checker for oriented conditional rewrite systems.
#[derive(Parser)]
#[command(name = "ctrs", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Highest rewrite level evaluated
    #[arg(long, global = true, default_value_t = Bounds::default().max_level)]
    max_level: usize,
    /// Longest rewrite sequence explored per search
    #[arg(long, global = true, default_value_t = Bounds::default().max_depth)]
    max_depth: usize,
    /// Largest term set collected per search
    #[arg(long, global = true, default_value_t = Bounds::default().max_terms)]
    max_terms: usize,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when the criterion does not apply
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the level-confluence criterion applies
    Check { file: PathBuf },
    /// Report the syntactic properties of the system
    Props { file: PathBuf },
    /// List conditional overlaps and how each is dispatched
    Overlaps { file: PathBuf },
    /// Enumerate terms reachable at a level within a step budget
    Rewrite {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value_t = 8)]
        steps: usize,
    },
    /// Enumerate extended parallel successors at a level
    Epar {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        level: usize,
    },
    /// Look for a non-commuting peak of extended parallel steps
    Diamond {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Seeds are all ground terms up to this size
        #[arg(long, default_value_t = 5)]
        seed_size: usize,
    },
}

enum Outcome {
    Done,
    NotApplicable,
}

fn load(file: &PathBuf) -> Result<SourceSpec, String> {
    let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", file.display()))
}

fn emit(g: &Global, json: Value, text: String) {
    if g.json {
        println!("{}", serde_json::to_string_pretty(&json).expect("JSON values serialize"));
    } else {
        print!("{text}");
    }
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let g = &cli.global;
    let bounds = Bounds { max_level: g.max_level, max_depth: g.max_depth, max_terms: g.max_terms };
    match &cli.command {
        Command::Check { file } => {
            let spec = load(file)?;
            let v = check_level_confluence(&spec.ctrs, &bounds);
            emit(g, report::verdict_json(&v), report::render_verdict(&v));
            if !v.is_level_confluent() {
                return Ok(Outcome::NotApplicable);
            }
        }
        Command::Props { file } => {
            let spec = load(file)?;
            let (props, _) = property_reports(&spec.ctrs, &bounds);
            let ty = spec.ctrs.classify_type();
            emit(g, report::properties_json(&props, ty), format!("type {ty}\n{}", report::render_properties(&props)));
        }
        Command::Overlaps { file } => {
            let spec = load(file)?;
            let listed: Vec<_> = conditional_overlaps(&spec.ctrs)
                .into_iter()
                .map(|o| {
                    let r = OverlapReport {
                        rules: [o.rule1_index + 1, o.rule2_index + 1],
                        pos: o.pos.clone(),
                        disposition: dispose(&o, &spec.ctrs, &bounds),
                    };
                    (o, r)
                })
                .collect();
            emit(g, report::overlaps_json(&listed), report::render_overlaps(&listed));
        }
        Command::Rewrite { file, term, level, steps } => {
            let spec = load(file)?;
            let t = spec.parse_term(term).map_err(|e| format!("--term: {e}"))?;
            let engine = Engine::new(&spec.ctrs, bounds);
            let r = Reachable::compute(&engine, &t, *level, *steps).map_err(|e| e.to_string())?;
            emit(g, report::reach_json(&r, &bounds), report::render_reach(&r));
        }
        Command::Epar { file, term, level } => {
            let spec = load(file)?;
            let t = spec.parse_term(term).map_err(|e| format!("--term: {e}"))?;
            let engine = Engine::new(&spec.ctrs, bounds);
            let succ = engine.epar_successors(&t, *level).map_err(|e| e.to_string())?;
            emit(g, report::epar_json(&t, *level, &succ, &bounds), report::render_epar(&t, *level, &succ));
        }
        Command::Diamond { file, m, n, seed_size } => {
            let spec = load(file)?;
            let engine = Engine::new(&spec.ctrs, bounds);
            let seeds = ground_terms(spec.ctrs.signature(), *seed_size);
            let r = diamond_fuzz(&engine, &seeds, *m, *n).map_err(|e| e.to_string())?;
            emit(g, report::diamond_json(&r, &bounds), report::render_diamond(&r));
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let strict = cli.global.strict;
    match run(cli) {
        Ok(Outcome::NotApplicable) if strict => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
