//! Machine audit of the implications and characterisations checked by this
//! crate, over exhaustively enumerated or sampled instances.

mod claims;
pub mod generate;

use std::fmt;
use std::str::FromStr;

pub use claims::{claim_info, ClaimInfo, Expectation, Scope, CLAIMS};
pub use generate::{enumerate_correspondences, sample_monotone_operators};

use crate::dsl::Validated;
use crate::error::{Error, Result};
use crate::exec::{fold_indices, Execution};
use crate::space::MAX_TABLE_STATES;

/// Findings kept per audit; counts are always complete.
pub const FINDINGS_KEPT: usize = 10;

pub const MAX_SAMPLED_GAME_STATES: usize = 8;
pub const MAX_SAMPLED_ACTIONS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceMode {
    ExhaustiveKripke,
    SampledMonotone,
    ExhaustiveGames,
    SampledGames,
    FromFiles,
}

impl SourceMode {
    pub fn name(self) -> &'static str {
        match self {
            SourceMode::ExhaustiveKripke => "exhaustive-kripke",
            SourceMode::SampledMonotone => "sampled-monotone",
            SourceMode::ExhaustiveGames => "exhaustive-games",
            SourceMode::SampledGames => "sampled-games",
            SourceMode::FromFiles => "from-files",
        }
    }
}

impl fmt::Display for SourceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SourceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" | "exhaustive-kripke" => Ok(SourceMode::ExhaustiveKripke),
            "sampled" | "sampled-monotone" => Ok(SourceMode::SampledMonotone),
            "exhaustive-games" => Ok(SourceMode::ExhaustiveGames),
            "sampled-games" => Ok(SourceMode::SampledGames),
            "from-files" | "files" => Ok(SourceMode::FromFiles),
            _ => Err(Error::Input(format!("unknown source mode `{s}`"))),
        }
    }
}

/// Where audit instances come from.
#[derive(Clone, Debug)]
pub enum ModelSource {
    /// Every Kripke model with exactly `states` states and `players` players.
    ExhaustiveKripke { states: usize, players: usize },
    /// `count` models with 1 to `states` states, half Kripke and half
    /// monotone closures of random partial tables.
    SampledMonotone {
        states: usize,
        players: usize,
        seed: u64,
        count: u64,
    },
    /// Two players with Kripke beliefs on exactly `states` states, every
    /// strategy profile, every game with `actions` actions per player.
    ExhaustiveGames { states: usize, actions: usize },
    /// Two-player game models with sampled beliefs, games and strategies.
    SampledGames {
        states: usize,
        actions: usize,
        seed: u64,
        count: u64,
    },
    FromFiles(Vec<Validated>),
}

impl ModelSource {
    pub fn mode(&self) -> SourceMode {
        match self {
            ModelSource::ExhaustiveKripke { .. } => SourceMode::ExhaustiveKripke,
            ModelSource::SampledMonotone { .. } => SourceMode::SampledMonotone,
            ModelSource::ExhaustiveGames { .. } => SourceMode::ExhaustiveGames,
            ModelSource::SampledGames { .. } => SourceMode::SampledGames,
            ModelSource::FromFiles(_) => SourceMode::FromFiles,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ModelSource::ExhaustiveKripke { states, players } => {
                format!("exhaustive-kripke states={states} players={players}")
            }
            ModelSource::SampledMonotone {
                states,
                players,
                seed,
                count,
            } => format!("sampled-monotone states<={states} players={players} seed={seed} count={count}"),
            ModelSource::ExhaustiveGames { states, actions } => {
                format!("exhaustive-games states={states} actions={actions}")
            }
            ModelSource::SampledGames {
                states,
                actions,
                seed,
                count,
            } => format!("sampled-games states<={states} actions<={actions} seed={seed} count={count}"),
            ModelSource::FromFiles(docs) => format!("from-files documents={}", docs.len()),
        }
    }

    pub fn check_bounds(&self) -> Result<()> {
        let bound = |ok: bool, what: &'static str, detail: String| {
            if ok {
                Ok(())
            } else {
                Err(Error::BoundExceeded { what, detail })
            }
        };
        match *self {
            ModelSource::ExhaustiveKripke { states, players } => {
                bound(
                    (1..=generate::MAX_EXHAUSTIVE_STATES).contains(&states),
                    "states",
                    format!("exhaustive mode needs 1 to {} states, got {states}", generate::MAX_EXHAUSTIVE_STATES),
                )?;
                bound(
                    (1..=generate::MAX_EXHAUSTIVE_PLAYERS).contains(&players),
                    "players",
                    format!("exhaustive mode needs 1 to {} players, got {players}", generate::MAX_EXHAUSTIVE_PLAYERS),
                )
            }
            ModelSource::SampledMonotone { states, players, .. } => {
                bound(
                    (1..=MAX_TABLE_STATES).contains(&states),
                    "states",
                    format!("sampled mode needs 1 to {MAX_TABLE_STATES} states, got {states}"),
                )?;
                bound((1..=8).contains(&players), "players", format!("sampled mode needs 1 to 8 players, got {players}"))
            }
            ModelSource::ExhaustiveGames { states, actions } => {
                bound((1..=2).contains(&states), "states", format!("exhaustive games need 1 or 2 states, got {states}"))?;
                bound((1..=2).contains(&actions), "actions", format!("exhaustive games need 1 or 2 actions, got {actions}"))
            }
            ModelSource::SampledGames { states, actions, .. } => {
                bound(
                    (1..=MAX_SAMPLED_GAME_STATES).contains(&states),
                    "states",
                    format!("sampled games need 1 to {MAX_SAMPLED_GAME_STATES} states, got {states}"),
                )?;
                bound(
                    (1..=MAX_SAMPLED_ACTIONS).contains(&actions),
                    "actions",
                    format!("sampled games need 1 to {MAX_SAMPLED_ACTIONS} actions, got {actions}"),
                )
            }
            ModelSource::FromFiles(_) => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionTally {
    pub name: &'static str,
    pub vacuous: u64,
    pub confirmed: u64,
    pub violated: u64,
}

/// A violation or a counterexample: where it was found and the instance
/// as a model document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub instance: u64,
    pub direction: Option<&'static str>,
    pub detail: String,
    pub document: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditResult {
    pub claim: &'static str,
    pub statement: &'static str,
    pub expectation: Expectation,
    pub source: String,
    pub instances: u64,
    pub directions: Vec<DirectionTally>,
    pub violations: Vec<Finding>,
    pub counterexample_count: u64,
    pub counterexamples: Vec<Finding>,
}

impl AuditResult {
    pub fn violation_count(&self) -> u64 {
        self.directions.iter().map(|d| d.violated).sum()
    }

    /// No violations, and a counterexample if one is expected.
    pub fn passed(&self) -> bool {
        match self.expectation {
            Expectation::NoViolations => self.violation_count() == 0,
            Expectation::CounterexampleExists => self.counterexample_count > 0,
            Expectation::Exploratory => true,
        }
    }
}

/// Per-partition accumulator; merged left to right.
#[derive(Clone, Debug, Default)]
pub(crate) struct Acc {
    instances: u64,
    dirs: Vec<[u64; 3]>,
    violations: Vec<Finding>,
    counterexamples: Vec<Finding>,
    counterexample_count: u64,
}

impl Acc {
    fn new(directions: usize) -> Self {
        Acc {
            dirs: vec![[0; 3]; directions],
            ..Default::default()
        }
    }

    fn merge(mut self, other: Acc) -> Acc {
        self.instances += other.instances;
        for (a, b) in self.dirs.iter_mut().zip(other.dirs) {
            for k in 0..3 {
                a[k] += b[k];
            }
        }
        self.violations.extend(other.violations);
        self.violations.truncate(FINDINGS_KEPT);
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples.truncate(FINDINGS_KEPT);
        self.counterexample_count += other.counterexample_count;
        self
    }
}

/// Records outcomes for one instance.
pub(crate) struct Rec<'a> {
    acc: &'a mut Acc,
    names: &'static [&'static str],
    instance: u64,
    document: &'a dyn Fn() -> String,
}

impl Rec<'_> {
    pub fn check(&mut self, dir: usize, premise: bool, conclusion: bool, detail: impl FnOnce() -> String) {
        let slot = match (premise, conclusion) {
            (false, _) => 0,
            (true, true) => 1,
            (true, false) => 2,
        };
        self.acc.dirs[dir][slot] += 1;
        if slot == 2 && self.acc.violations.len() < FINDINGS_KEPT {
            self.acc.violations.push(Finding {
                instance: self.instance,
                direction: Some(self.names[dir]),
                detail: detail(),
                document: (self.document)(),
            });
        }
    }

    pub fn found(&mut self, detail: impl FnOnce() -> String) {
        self.acc.counterexample_count += 1;
        if self.acc.counterexamples.len() < FINDINGS_KEPT {
            self.acc.counterexamples.push(Finding {
                instance: self.instance,
                direction: None,
                detail: detail(),
                document: (self.document)(),
            });
        }
    }
}

/// Audits one claim over every instance of the source.
///
/// The result does not depend on `exec`: instances are generated from
/// their index and partial results are merged in index order.
pub fn audit(claim: &str, source: &ModelSource, exec: Execution) -> Result<AuditResult> {
    let info = claim_info(claim).ok_or_else(|| Error::UnknownClaim(claim.to_string()))?;
    source.check_bounds()?;
    let acc = claims::run(info, source, exec)?;
    Ok(AuditResult {
        claim: info.id,
        statement: info.statement,
        expectation: info.expectation,
        source: source.describe(),
        instances: acc.instances,
        directions: info
            .directions
            .iter()
            .zip(&acc.dirs)
            .map(|(&name, d)| DirectionTally {
                name,
                vacuous: d[0],
                confirmed: d[1],
                violated: d[2],
            })
            .collect(),
        violations: acc.violations,
        counterexample_count: acc.counterexample_count,
        counterexamples: acc.counterexamples,
    })
}

pub(crate) fn sweep<F>(count: u64, exec: Execution, info: &ClaimInfo, per_unit: F) -> Acc
where
    F: Fn(&mut Acc, u64) + Sync + Send,
{
    let dirs = info.directions.len();
    fold_indices(
        count,
        exec,
        || Acc::new(dirs),
        |mut acc, i| {
            per_unit(&mut acc, i);
            acc
        },
        Acc::merge,
    )
}

impl<'a> Rec<'a> {
    pub(crate) fn new(
        acc: &'a mut Acc,
        info: &ClaimInfo,
        instance: u64,
        document: &'a dyn Fn() -> String,
    ) -> Self {
        acc.instances += 1;
        Rec {
            acc,
            names: info.directions,
            instance,
            document,
        }
    }
}
