//! Command line front end. Exit codes: 0 success, 1 property or claim
//! violated, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::audit::{audit, ModelSource, SourceMode, CLAIMS};
use crate::axioms::FrameProperty;
use crate::dsl::{parse_event, parse_model_spec, serialize, validate, Validated};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::report::{self, Report};
use crate::signal::{certain_of, commonly_certain_of};
use crate::space::StateSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "beliefcheck", version, about = "Check belief operators, certainty and games on finite models")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every axiom and compatibility with informativeness, per player.
    Axioms {
        file: PathBuf,
        #[arg(long)]
        player: Option<String>,
    },
    /// Mutual, common and iterated belief of one event.
    CommonBelief {
        file: PathBuf,
        #[arg(long)]
        event: String,
    },
    /// Certainty of a declared signal for one player or in common.
    Certainty {
        file: PathBuf,
        #[arg(long)]
        signal: String,
        #[arg(long, conflicts_with = "common")]
        player: Option<String>,
        #[arg(long)]
        common: bool,
    },
    /// Certainty of the type profile and the introspection conditions.
    Meta { file: PathBuf },
    /// Rationality, strategy certainty, IESDA and the epistemic verdict.
    Game {
        file: PathBuf,
        #[arg(long)]
        state: Option<String>,
    },
    /// Audit one claim over generated or given instances.
    Audit {
        #[arg(long)]
        claim: String,
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = 2)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        players: usize,
        #[arg(long, default_value_t = 2)]
        actions: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: u64,
        /// Model documents for the from-files mode.
        #[arg(long = "file")]
        files: Vec<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
    /// List the claims known to `audit`.
    Claims,
    /// Print a model document in canonical form.
    Fmt { file: PathBuf },
    /// Possibility correspondences on N states with the given frame properties.
    Enumerate {
        #[arg(long)]
        states: usize,
        #[arg(long = "filter")]
        filters: Vec<String>,
    },
}

pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(rep) => {
            let text = match cli.format {
                _ if rep.check == "fmt" => rep.verdict.clone(),
                Format::Text => rep.to_text(),
                Format::Json => rep.to_json(),
            };
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => i32::from(rep.violated),
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn load(path: &Path) -> Result<Validated> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let doc = parse_model_spec(&text).map_err(|e| Error::Input(format!("{}:{e}", path.display())))?;
    validate(&doc).map_err(|e| Error::Input(format!("{}:{e}", path.display())))
}

fn state_of(space: &StateSpace, name: &str) -> Result<usize> {
    space.index_of(name)
}

fn execute(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Axioms { file, player } => {
            let v = load(file)?;
            let players: Vec<usize> = match player {
                Some(p) => vec![v.model.player_index(p)?],
                None => (0..v.model.player_count()).collect(),
            };
            report::axioms_report(&v.model, &players)
        }
        Command::CommonBelief { file, event } => {
            let v = load(file)?;
            let e = parse_event(v.model.space(), event).map_err(|e| Error::Input(format!("--event: {e}")))?;
            Ok(report::common_belief_report(&v.model, e))
        }
        Command::Certainty {
            file,
            signal,
            player,
            common,
        } => {
            let v = load(file)?;
            let x = v
                .signal(signal)
                .ok_or_else(|| Error::Input(format!("no signal named `{signal}`")))?;
            let (who, r) = match (player, common) {
                (_, true) => ("common".to_string(), commonly_certain_of(&v.model, x)?),
                (Some(p), false) => {
                    let i = v.model.player_index(p)?;
                    (p.clone(), certain_of(&v.model, i, x)?)
                }
                (None, false) => return Err(Error::Input("give --player P or --common".into())),
            };
            Ok(report::certainty_report(&v.model, signal, x, &who, &r))
        }
        Command::Meta { file } => report::meta_report(&load(file)?.model),
        Command::Game { file, state } => {
            let v = load(file)?;
            let gm = v
                .game
                .as_ref()
                .ok_or_else(|| Error::Input(format!("{} declares no game", file.display())))?;
            let space = gm.belief().space();
            let states: Vec<usize> = match state {
                Some(s) => vec![state_of(space, s)?],
                None => (0..space.len()).collect(),
            };
            report::game_report(gm, &states)
        }
        Command::Audit {
            claim,
            mode,
            states,
            players,
            actions,
            seed,
            count,
            files,
            sequential,
        } => {
            let source = match mode.parse::<SourceMode>()? {
                SourceMode::ExhaustiveKripke => ModelSource::ExhaustiveKripke {
                    states: *states,
                    players: *players,
                },
                SourceMode::SampledMonotone => ModelSource::SampledMonotone {
                    states: *states,
                    players: *players,
                    seed: *seed,
                    count: *count,
                },
                SourceMode::ExhaustiveGames => ModelSource::ExhaustiveGames {
                    states: *states,
                    actions: *actions,
                },
                SourceMode::SampledGames => ModelSource::SampledGames {
                    states: *states,
                    actions: *actions,
                    seed: *seed,
                    count: *count,
                },
                SourceMode::FromFiles => {
                    if files.is_empty() {
                        return Err(Error::Input("from-files mode needs at least one --file".into()));
                    }
                    ModelSource::FromFiles(files.iter().map(|f| load(f)).collect::<Result<_>>()?)
                }
            };
            let exec = if *sequential { Execution::Sequential } else { Execution::Parallel };
            Ok(report::audit_report(&audit(claim, &source, exec)?))
        }
        Command::Claims => {
            let mut rep = Report {
                tool_version: report::TOOL_VERSION,
                check: "claims".into(),
                verdict: format!("{} claims", CLAIMS.len()),
                witnesses: Vec::new(),
                details: serde_json::Value::Null,
                text: Vec::new(),
                violated: false,
            };
            rep.text = CLAIMS.iter().map(|c| format!("  {:32} {}", c.id, c.statement)).collect();
            rep.details = CLAIMS
                .iter()
                .map(|c| serde_json::json!({"claim": c.id, "statement": c.statement, "expectation": c.expectation.name()}))
                .collect();
            Ok(rep)
        }
        Command::Fmt { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Input(format!("{}: {e}", file.display())))?;
            load(file)?;
            let doc = parse_model_spec(&text).map_err(|e| Error::Input(format!("{}:{e}", file.display())))?;
            Ok(Report::canonical(serialize(&doc)))
        }
        Command::Enumerate { states, filters } => {
            let filters = filters
                .iter()
                .map(|f| f.parse::<FrameProperty>())
                .collect::<Result<Vec<_>>>()?;
            let space = StateSpace::with_size(*states)?;
            let found: Vec<_> = crate::audit::enumerate_correspondences(*states, &filters)?.collect();
            Ok(report::enumerate_report(&space, &filters, &found))
        }
    }
}
