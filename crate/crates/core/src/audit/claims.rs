use super::generate::{self, all_games, all_strategy_profiles, kripke_model_at, sampled_game_at, sampled_model_at};
use super::{sweep, Acc, ModelSource, Rec};
use crate::axioms::{check_axiom, correspondence_property, holds, Axiom, FrameProperty};
use crate::dsl::{document_of, document_of_game, serialize};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::game::{iesda, EliminationOrder, EliminationTrace, Game, GameModel, GameView};
use crate::informativeness::{check_prop5, compatible_with_informativeness};
use crate::model::BeliefModel;
use crate::report::format_witness;
use crate::signal::{certainty_under, family, Signal};
use crate::space::Event;
use crate::types::{check_type_axiom, meta_certainty_report, FamilyKind, QualitativeTypeMapping};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    /// The implication must hold on every instance.
    NoViolations,
    /// At least one instance must exhibit the described situation.
    CounterexampleExists,
    /// Findings are recorded but nothing is asserted.
    Exploratory,
}

impl Expectation {
    pub fn name(self) -> &'static str {
        match self {
            Expectation::NoViolations => "no-violations",
            Expectation::CounterexampleExists => "counterexample-exists",
            Expectation::Exploratory => "exploratory",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// One instance per belief model.
    Model,
    /// One instance per game model.
    Game,
    /// One instance per game, beliefs irrelevant.
    GameStructure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimInfo {
    pub id: &'static str,
    pub statement: &'static str,
    pub expectation: Expectation,
    pub scope: Scope,
    pub directions: &'static [&'static str],
}

const fn claim(
    id: &'static str,
    statement: &'static str,
    expectation: Expectation,
    scope: Scope,
    directions: &'static [&'static str],
) -> ClaimInfo {
    ClaimInfo {
        id,
        statement,
        expectation,
        scope,
        directions,
    }
}

use Expectation::{CounterexampleExists, Exploratory, NoViolations};
use Scope::{Game as G, GameStructure, Model as M};

const IFF: &[&str] = &["forward", "backward"];
const IMPLIES: &[&str] = &["implication"];

pub const CLAIMS: &[ClaimInfo] = &[
    claim("prop1-1a", "i is certain of t_i w.r.t. {β_E} iff B_i satisfies Positive Introspection", NoViolations, M, IFF),
    claim("prop1-1b", "i is certain of t_i w.r.t. {¬β_E} iff B_i satisfies Negative Introspection", NoViolations, M, IFF),
    claim("prop1-1c", "i is certain of t_i w.r.t. D_M implies Positive and Negative Introspection", NoViolations, M, IMPLIES),
    claim("prop1-2a", "under Truth Axiom, i is certain of t_i w.r.t. D_M iff Negative Introspection", NoViolations, M, IFF),
    claim(
        "prop1-2b",
        "under Consistency and Countable Conjunction, i is certain of t_i w.r.t. D_M iff Positive and Negative Introspection",
        NoViolations,
        M,
        IFF,
    ),
    claim("rmk1-1a", "i is certain of t_j w.r.t. {β_E} iff B_j ⊆ B_i B_j", NoViolations, M, IFF),
    claim("rmk1-1b", "i is certain of t_j w.r.t. {¬β_E} iff ¬B_j ⊆ B_i ¬B_j", NoViolations, M, IFF),
    claim("rmk1-1c", "i is certain of t_j w.r.t. D_M implies B_j ⊆ B_i B_j and ¬B_j ⊆ B_i ¬B_j", NoViolations, M, IMPLIES),
    claim(
        "rmk1-2a",
        "under Truth Axiom for B_i, i is certain of t_j w.r.t. D_M iff B_j ⊆ B_i B_j and ¬B_j ⊆ B_i ¬B_j",
        NoViolations,
        M,
        IFF,
    ),
    claim(
        "rmk1-2b",
        "under Consistency and Countable Conjunction for B_i, i is certain of t_j w.r.t. D_M iff B_j ⊆ B_i B_j and ¬B_j ⊆ B_i ¬B_j",
        NoViolations,
        M,
        IFF,
    ),
    claim(
        "thm1-1",
        "under Truth Axiom for all, the type profile is commonly certain iff all B_i coincide and satisfy Negative Introspection; then B_i = C",
        NoViolations,
        M,
        &["forward", "backward", "consequence"],
    ),
    claim(
        "thm1-2",
        "under Consistency and Countable Conjunction for all, the type profile is commonly certain iff B_i ⊆ C B_i and ¬B_i ⊆ C ¬B_i for all i; then C = B_I",
        NoViolations,
        M,
        &["forward", "backward", "consequence"],
    ),
    claim(
        "thm1-2-converse-fails",
        "Consistency, Countable Conjunction and C = B_I hold but the type profile is not commonly certain",
        CounterexampleExists,
        M,
        &[],
    ),
    claim(
        "prop4-1a",
        "under Consistency, for families whose complements are unions of members: i certain of x and j certain of t_i imply j certain of x",
        NoViolations,
        M,
        IMPLIES,
    ),
    claim(
        "prop4-1b",
        "under Consistency and common certainty of the type profile, for families whose complements are unions of members: i certain of x iff j certain of x",
        NoViolations,
        M,
        IFF,
    ),
    claim(
        "prop4-side-condition",
        "signal transfer for families violating the complement condition (recorded only)",
        Exploratory,
        M,
        &[],
    ),
    claim(
        "prop5",
        "Consistency, Finite Conjunction and certainty of t_i w.r.t. upward sets imply compatibility with informativeness",
        NoViolations,
        M,
        IMPLIES,
    ),
    claim("compatibility-from-kripke", "Kripke, Consistency and Positive Introspection imply compatibility with informativeness", NoViolations, M, IMPLIES),
    claim("compatibility-empty-belief", "compatibility with informativeness implies B_i(∅) = ∅", NoViolations, M, IMPLIES),
    claim("compatibility-consistency", "compatibility with informativeness and Finite Conjunction imply Consistency", NoViolations, M, IMPLIES),
    claim("truth-and-ni-imply-pi", "Truth Axiom and Negative Introspection imply Positive Introspection", NoViolations, M, IMPLIES),
    claim("truth-implies-consistency", "Truth Axiom implies Consistency", NoViolations, M, IMPLIES),
    claim(
        "kripke-implies-logical",
        "the Kripke property implies Monotonicity, Necessitation, Finite and Countable Conjunction",
        NoViolations,
        M,
        IMPLIES,
    ),
    claim(
        "truth-ni-kripke-imply-all",
        "Truth Axiom, Negative Introspection and the Kripke property imply every other property",
        NoViolations,
        M,
        IMPLIES,
    ),
    claim("frame-serial", "under the Kripke property, Consistency iff the correspondence is serial", NoViolations, M, IFF),
    claim("frame-reflexive", "under the Kripke property, Truth Axiom iff the correspondence is reflexive", NoViolations, M, IFF),
    claim("frame-transitive", "under the Kripke property, Positive Introspection iff the correspondence is transitive", NoViolations, M, IFF),
    claim("frame-euclidean", "under the Kripke property, Negative Introspection iff the correspondence is Euclidean", NoViolations, M, IFF),
    claim(
        "type-axioms-agree",
        "every axiom has the same verdict on B_i and on t_i, and the operator of t_i is B_i",
        NoViolations,
        M,
        &["axioms", "round trip"],
    ),
    claim(
        "common-belief-fixpoint",
        "C(E) ⊆ ⋂_k B_I^k(E), with equality when every B_i satisfies Finite Conjunction",
        NoViolations,
        M,
        &["inclusion", "equality"],
    ),
    claim(
        "common-belief-strict-inclusion",
        "C(E) is strictly smaller than ⋂_k B_I^k(E)",
        CounterexampleExists,
        M,
        &[],
    ),
    claim(
        "pi-without-ni-beta-only",
        "B_i satisfies Positive but not Negative Introspection; i is certain of t_i w.r.t. {β_E} but not {¬β_E}",
        CounterexampleExists,
        M,
        &[],
    ),
    claim(
        "thm2",
        "certainty of own strategy, compatibility with informativeness and Finite Conjunction imply B_i(RAT_i) ⊆ RAT_i",
        NoViolations,
        G,
        IMPLIES,
    ),
    claim(
        "thm2-consistency-pi-kripke",
        "Consistency, Positive Introspection, the Kripke property and certainty of own strategy imply B_i(RAT_i) ⊆ RAT_i",
        NoViolations,
        G,
        IMPLIES,
    ),
    claim(
        "thm2-ni-kripke",
        "Negative Introspection, the Kripke property and certainty of own strategy imply RAT_i ⊆ B_i(RAT_i)",
        NoViolations,
        G,
        IMPLIES,
    ),
    claim(
        "thm2-conjunction-needed",
        "certainty of own strategy and compatibility hold, Finite Conjunction fails, and B_i(RAT_i) ⊄ RAT_i",
        CounterexampleExists,
        G,
        &[],
    ),
    claim(
        "epistemic-iesda",
        "if ω ∈ ⋂_i C(RAT_i) and every player correctly believes her rationality, σ(ω) survives IESDA",
        NoViolations,
        G,
        &["direct", "via sufficient conditions"],
    ),
    claim("rat-restatement", "both definitions of RAT_i coincide", NoViolations, G, IMPLIES),
    claim(
        "strategy-certainty-consistency",
        "under Consistency, certainty of own strategy gives B_i([σ_i]) = [σ_i], B_i([σ_i]^c) = [σ_i]^c and B_i(Ω) = Ω",
        NoViolations,
        G,
        IMPLIES,
    ),
    claim(
        "rationality-monotonicity",
        "B_i(RAT_I) ⊆ B_i(RAT_i) and C(RAT_I) ⊆ ⋂_i C(RAT_i)",
        NoViolations,
        G,
        &["belief", "common belief"],
    ),
    claim(
        "iesda-order-independence",
        "IESDA survivors agree across the maximal order and 50 seeded orders",
        NoViolations,
        GameStructure,
        IMPLIES,
    ),
];

pub const SEEDED_ORDERS: u64 = 50;

/// States up to which signal families are generated for the transfer audits.
const SIGNAL_STATES: usize = 4;

pub fn claim_info(id: &str) -> Option<&'static ClaimInfo> {
    CLAIMS.iter().find(|c| c.id == id)
}

struct ModelCtx<'a> {
    model: &'a BeliefModel,
    side: &'a [Signal],
    adversarial: &'a [Signal],
}

#[derive(Clone, Copy, Debug)]
struct Flags {
    consistency: bool,
    fc: bool,
    pi: bool,
    ni: bool,
    kripke: bool,
    compatible: bool,
    strategy_certain: bool,
}

struct GameCtx<'a> {
    view: GameView<'a>,
    trace: &'a EliminationTrace,
    flags: &'a [Flags],
}

fn unsupported(info: &ClaimInfo, source: &ModelSource) -> Error {
    Error::UnsupportedSource {
        claim: info.id.to_string(),
        mode: source.mode().name().to_string(),
    }
}

fn belief_flags(model: &BeliefModel) -> Vec<Flags> {
    model
        .operators()
        .iter()
        .map(|op| Flags {
            consistency: holds(op, Axiom::Consistency),
            fc: holds(op, Axiom::FiniteConjunction),
            pi: holds(op, Axiom::PositiveIntrospection),
            ni: holds(op, Axiom::NegativeIntrospection),
            kripke: holds(op, Axiom::Kripke),
            compatible: compatible_with_informativeness(model.space(), op)
                .map(|r| r.holds)
                .unwrap_or(false),
            strategy_certain: false,
        })
        .collect()
}

fn with_strategies(mut flags: Vec<Flags>, view: &GameView) -> Vec<Flags> {
    for (i, f) in flags.iter_mut().enumerate() {
        f.strategy_certain = view.strategy_certain(i);
    }
    flags
}

pub(super) fn run(info: &'static ClaimInfo, source: &ModelSource, exec: Execution) -> Result<Acc> {
    match info.scope {
        Scope::Model => run_models(info, source, exec),
        Scope::Game => run_games(info, source, exec),
        Scope::GameStructure => run_structures(info, source, exec),
    }
}

fn signal_tables(max_states: usize) -> (Vec<Vec<Signal>>, Vec<Vec<Signal>>) {
    let top = max_states.min(SIGNAL_STATES);
    let side = (0..=top)
        .map(|n| if n == 0 { Vec::new() } else { generate::side_condition_signals(n) })
        .collect();
    let adv = (0..=top)
        .map(|n| if n == 0 { Vec::new() } else { generate::adversarial_signals(n) })
        .collect();
    (side, adv)
}

fn run_models(info: &'static ClaimInfo, source: &ModelSource, exec: Execution) -> Result<Acc> {
    let eval = model_eval(info.id);
    let needs_signals = matches!(info.id, "prop4-1a" | "prop4-1b" | "prop4-side-condition");
    let pick = |tables: &'_ [Vec<Signal>], n: usize| -> usize { if n < tables.len() { n } else { 0 } };
    match source {
        ModelSource::ExhaustiveKripke { states, players } => {
            let (side, adv) = if needs_signals { signal_tables(*states) } else { (vec![vec![]], vec![vec![]]) };
            let count = generate::correspondence_count(*states).pow(*players as u32);
            Ok(sweep(count, exec, info, |acc, i| {
                let model = kripke_model_at(*states, *players, i);
                let doc = || serialize(&document_of(&model, &[]));
                let ctx = ModelCtx {
                    model: &model,
                    side: &side[pick(&side, *states)],
                    adversarial: &adv[pick(&adv, *states)],
                };
                eval(&ctx, &mut Rec::new(acc, info, i, &doc));
            }))
        }
        ModelSource::SampledMonotone {
            states,
            players,
            seed,
            count,
        } => {
            let (side, adv) = if needs_signals { signal_tables(*states) } else { (vec![vec![]], vec![vec![]]) };
            Ok(sweep(*count, exec, info, |acc, i| {
                let model = sampled_model_at(*states, *players, *seed, i);
                let n = model.space().len();
                let doc = || serialize(&document_of(&model, &[]));
                let ctx = ModelCtx {
                    model: &model,
                    side: &side[pick(&side, n)],
                    adversarial: &adv[pick(&adv, n)],
                };
                eval(&ctx, &mut Rec::new(acc, info, i, &doc));
            }))
        }
        ModelSource::FromFiles(docs) => Ok(sweep(docs.len() as u64, exec, info, |acc, i| {
            let v = &docs[i as usize];
            let (side, adv): (Vec<Signal>, Vec<Signal>) = v
                .signals
                .iter()
                .map(|(_, x)| x.clone())
                .partition(|x| family::complements_are_unions(x.codomain().len(), x.family()));
            let doc = || serialize(&document_of(&v.model, &v.signals));
            let ctx = ModelCtx {
                model: &v.model,
                side: &side,
                adversarial: &adv,
            };
            eval(&ctx, &mut Rec::new(acc, info, i, &doc));
        })),
        _ => Err(unsupported(info, source)),
    }
}

fn run_games(info: &'static ClaimInfo, source: &ModelSource, exec: Execution) -> Result<Acc> {
    let eval = game_eval(info.id);
    match source {
        ModelSource::ExhaustiveGames { states, actions } => {
            let games = all_games(*actions);
            let traces: Vec<EliminationTrace> = games.iter().map(|g| iesda(g, EliminationOrder::Maximal)).collect();
            let profiles = all_strategy_profiles(*states, *actions);
            let models = generate::correspondence_count(*states).pow(2);
            let per_model = profiles.len() as u64;
            let g_count = games.len() as u64;
            Ok(sweep(models * per_model, exec, info, |acc, unit| {
                let model = kripke_model_at(*states, 2, unit / per_model);
                let strategies = &profiles[(unit % per_model) as usize];
                let base = belief_flags(&model);
                for (g, game) in games.iter().enumerate() {
                    let view = GameView {
                        belief: &model,
                        game,
                        strategies,
                    };
                    let flags = with_strategies(base.clone(), &view);
                    let doc = || game_document(&view);
                    let ctx = GameCtx {
                        view,
                        trace: &traces[g],
                        flags: &flags,
                    };
                    eval(&ctx, &mut Rec::new(acc, info, unit * g_count + g as u64, &doc));
                }
            }))
        }
        ModelSource::SampledGames {
            states,
            actions,
            seed,
            count,
        } => Ok(sweep(*count, exec, info, |acc, i| {
            let (model, game, strategies) = sampled_game_at(*states, *actions, *seed, i);
            let trace = iesda(&game, EliminationOrder::Maximal);
            let view = GameView {
                belief: &model,
                game: &game,
                strategies: &strategies,
            };
            let flags = with_strategies(belief_flags(&model), &view);
            let doc = || game_document(&view);
            let ctx = GameCtx {
                view,
                trace: &trace,
                flags: &flags,
            };
            eval(&ctx, &mut Rec::new(acc, info, i, &doc));
        })),
        ModelSource::FromFiles(docs) => {
            let games: Vec<&GameModel> = docs.iter().filter_map(|d| d.game.as_ref()).collect();
            Ok(sweep(games.len() as u64, exec, info, |acc, i| {
                let gm = games[i as usize];
                let trace = iesda(gm.game(), EliminationOrder::Maximal);
                let view = gm.view();
                let flags = with_strategies(belief_flags(gm.belief()), &view);
                let doc = || game_document(&view);
                let ctx = GameCtx {
                    view,
                    trace: &trace,
                    flags: &flags,
                };
                eval(&ctx, &mut Rec::new(acc, info, i, &doc));
            }))
        }
        _ => Err(unsupported(info, source)),
    }
}

fn game_document(view: &GameView) -> String {
    let gm = GameModel::new(view.belief.clone(), view.game.clone(), view.strategies.to_vec()).expect("consistent view");
    serialize(&document_of_game(&gm))
}

fn run_structures(info: &'static ClaimInfo, source: &ModelSource, exec: Execution) -> Result<Acc> {
    let check = |acc: &mut Acc, game: &Game, i: u64| {
        let doc = || format!("{game:?}");
        let mut rec = Rec::new(acc, info, i, &doc);
        let maximal = iesda(game, EliminationOrder::Maximal);
        for k in 0..SEEDED_ORDERS {
            let seed = i.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ k;
            let seeded = iesda(game, EliminationOrder::Seeded(seed));
            rec.check(0, true, seeded.survivors == maximal.survivors, || {
                format!("seed {seed}: survivors {:?} vs maximal {:?}", seeded.survivors, maximal.survivors)
            });
        }
    };
    match source {
        ModelSource::ExhaustiveGames { actions, .. } => {
            let games = all_games(*actions);
            Ok(sweep(games.len() as u64, exec, info, |acc, i| check(acc, &games[i as usize], i)))
        }
        ModelSource::SampledGames {
            states,
            actions,
            seed,
            count,
        } => Ok(sweep(*count, exec, info, |acc, i| {
            let (_, game, _) = sampled_game_at(*states, *actions, *seed, i);
            check(acc, &game, i)
        })),
        ModelSource::FromFiles(docs) => {
            let games: Vec<&Game> = docs.iter().filter_map(|d| d.game.as_ref().map(GameModel::game)).collect();
            Ok(sweep(games.len() as u64, exec, info, |acc, i| check(acc, games[i as usize], i)))
        }
        _ => Err(unsupported(info, source)),
    }
}

type ModelEval = fn(&ModelCtx, &mut Rec);
type GameEval = fn(&GameCtx, &mut Rec);

fn owner(m: &BeliefModel, i: usize) -> &str {
    m.operators()[i].owner()
}

/// Certainty of `observer` about `subject`'s type mapping for one family.
fn type_certain(m: &BeliefModel, types: &[QualitativeTypeMapping], observer: usize, subject: usize, kind: FamilyKind) -> bool {
    let op = &m.operators()[observer];
    certainty_under(|e| op.apply(e), &types[subject].as_signal(kind)).holds
}

fn types_of(m: &BeliefModel) -> Vec<QualitativeTypeMapping> {
    m.operators()
        .iter()
        .map(|op| QualitativeTypeMapping::of(m.space(), op).expect("table-sized model"))
        .collect()
}

/// `B_j ⊆ B_i B_j` and `¬B_j ⊆ B_i ¬B_j`.
fn introspection_pair(m: &BeliefModel, i: usize, j: usize) -> (bool, bool) {
    let (bi, bj) = (&m.operators()[i], &m.operators()[j]);
    let pos = m.space().events().all(|e| bj.apply(e).is_subset(bi.apply(bj.apply(e))));
    let neg = m.space().events().all(|e| bj.disbelief(e).is_subset(bi.apply(bj.disbelief(e))));
    (pos, neg)
}

fn prop1(ctx: &ModelCtx, rec: &mut Rec, kind: FamilyKind, part: &str) {
    let m = ctx.model;
    let types = types_of(m);
    for i in 0..m.player_count() {
        let op = &m.operators()[i];
        let certain = type_certain(m, &types, i, i, kind);
        let pi = holds(op, Axiom::PositiveIntrospection);
        let ni = holds(op, Axiom::NegativeIntrospection);
        let who = owner(m, i);
        let msg = |s: &str| format!("player {who}: {s}");
        match part {
            "1a" => {
                rec.check(0, certain, pi, || msg("certain w.r.t. beta, Positive Introspection fails"));
                rec.check(1, pi, certain, || msg("Positive Introspection holds, not certain w.r.t. beta"));
            }
            "1b" => {
                rec.check(0, certain, ni, || msg("certain w.r.t. negBeta, Negative Introspection fails"));
                rec.check(1, ni, certain, || msg("Negative Introspection holds, not certain w.r.t. negBeta"));
            }
            "1c" => rec.check(0, certain, pi && ni, || msg("certain w.r.t. atoms, introspection fails")),
            "2a" => {
                let t = holds(op, Axiom::TruthAxiom);
                rec.check(0, t && certain, ni, || msg("Truth Axiom, certain, Negative Introspection fails"));
                rec.check(1, t && ni, certain, || msg("Truth Axiom and Negative Introspection, not certain"));
            }
            _ => {
                let logical = holds(op, Axiom::Consistency) && holds(op, Axiom::CountableConjunction);
                rec.check(0, logical && certain, pi && ni, || msg("certain, introspection fails"));
                rec.check(1, logical && pi && ni, certain, || msg("introspective, not certain"));
            }
        }
    }
}

fn rmk1(ctx: &ModelCtx, rec: &mut Rec, kind: FamilyKind, part: &str) {
    let m = ctx.model;
    let types = types_of(m);
    for i in 0..m.player_count() {
        for j in 0..m.player_count() {
            let certain = type_certain(m, &types, i, j, kind);
            let (pos, neg) = introspection_pair(m, i, j);
            let bi = &m.operators()[i];
            let msg = |s: &str| format!("observer {}, subject {}: {s}", owner(m, i), owner(m, j));
            match part {
                "1a" => {
                    rec.check(0, certain, pos, || msg("certain w.r.t. beta, B_j ⊄ B_i B_j"));
                    rec.check(1, pos, certain, || msg("B_j ⊆ B_i B_j, not certain w.r.t. beta"));
                }
                "1b" => {
                    rec.check(0, certain, neg, || msg("certain w.r.t. negBeta, ¬B_j ⊄ B_i ¬B_j"));
                    rec.check(1, neg, certain, || msg("¬B_j ⊆ B_i ¬B_j, not certain w.r.t. negBeta"));
                }
                "1c" => rec.check(0, certain, pos && neg, || msg("certain w.r.t. atoms, an inclusion fails")),
                "2a" => {
                    let t = holds(bi, Axiom::TruthAxiom);
                    rec.check(0, t && certain, pos && neg, || msg("Truth Axiom, certain, an inclusion fails"));
                    rec.check(1, t && pos && neg, certain, || msg("Truth Axiom and both inclusions, not certain"));
                }
                _ => {
                    let logical = holds(bi, Axiom::Consistency) && holds(bi, Axiom::CountableConjunction);
                    rec.check(0, logical && certain, pos && neg, || msg("certain, an inclusion fails"));
                    rec.check(1, logical && pos && neg, certain, || msg("both inclusions, not certain"));
                }
            }
        }
    }
}

fn all_ops(m: &BeliefModel, axioms: &[Axiom]) -> bool {
    m.operators().iter().all(|op| axioms.iter().all(|&a| holds(op, a)))
}

fn thm1_1(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    let premise = all_ops(m, &[Axiom::TruthAxiom]);
    let r = meta_certainty_report(m).expect("table-sized model");
    let certain = r.commonly_certain();
    let rhs = r.operators_equal() && all_ops(m, &[Axiom::NegativeIntrospection]);
    let equal_c = (0..m.player_count()).all(|i| r.player_equals_common(i));
    rec.check(0, premise && certain, rhs, || "commonly certain, operators differ or NI fails".into());
    rec.check(1, premise && rhs, certain, || "equal NI operators, not commonly certain".into());
    rec.check(2, premise && certain, equal_c, || "commonly certain, some B_i ≠ C".into());
}

fn thm1_2(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    let premise = all_ops(m, &[Axiom::Consistency, Axiom::CountableConjunction]);
    let r = meta_certainty_report(m).expect("table-sized model");
    let certain = r.commonly_certain();
    let rhs = r.common_introspection.iter().all(|c| c.positive.is_none() && c.negative.is_none());
    rec.check(0, premise && certain, rhs, || "commonly certain, a common introspection inclusion fails".into());
    rec.check(1, premise && rhs, certain, || "common introspection holds, not commonly certain".into());
    rec.check(2, premise && certain, r.common_equals_mutual(), || "commonly certain, C ≠ B_I".into());
}

fn thm1_2_converse(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    if !all_ops(m, &[Axiom::Consistency, Axiom::CountableConjunction]) {
        return;
    }
    let r = meta_certainty_report(m).expect("table-sized model");
    if r.common_equals_mutual() && !r.commonly_certain() {
        let (j, s) = r.common_certainty_failures[0];
        rec.found(|| format!("C = B_I; t of player {} not commonly certain at {}", owner(m, j), m.space().name(s)));
    }
}

fn certain_under(m: &BeliefModel, i: usize, x: &Signal) -> bool {
    let op = &m.operators()[i];
    certainty_under(|e| op.apply(e), x).holds
}

fn pairs(p: usize) -> Vec<(usize, usize)> {
    if p == 1 {
        return vec![(0, 0)];
    }
    (0..p).flat_map(|i| (0..p).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

fn prop4_1a(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    let consistent = all_ops(m, &[Axiom::Consistency]);
    let types = types_of(m);
    for (i, j) in pairs(m.player_count()) {
        let j_certain_of_ti = type_certain(m, &types, j, i, FamilyKind::SigmaAtoms);
        for x in ctx.side {
            let premise = consistent && j_certain_of_ti && certain_under(m, i, x);
            rec.check(0, premise, certain_under(m, j, x), || {
                format!("i={}, j={}, signal {:?} family {:?}", owner(m, i), owner(m, j), x.assignment(), x.family())
            });
        }
    }
}

fn prop4_1b(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    let premise = all_ops(m, &[Axiom::Consistency]) && meta_certainty_report(m).expect("table-sized").commonly_certain();
    for (i, j) in pairs(m.player_count()).into_iter().filter(|(i, j)| i <= j || m.player_count() == 1) {
        for x in ctx.side {
            let (ci, cj) = (certain_under(m, i, x), certain_under(m, j, x));
            let msg = || format!("i={}, j={}, signal {:?} family {:?}", owner(m, i), owner(m, j), x.assignment(), x.family());
            rec.check(0, premise && ci, cj, msg);
            rec.check(1, premise && cj, ci, msg);
        }
    }
}

fn prop4_side(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    if !all_ops(m, &[Axiom::Consistency]) {
        return;
    }
    let types = types_of(m);
    for (i, j) in pairs(m.player_count()) {
        if !type_certain(m, &types, j, i, FamilyKind::SigmaAtoms) {
            continue;
        }
        for x in ctx.adversarial {
            if certain_under(m, i, x) && !certain_under(m, j, x) {
                rec.found(|| {
                    format!("i={}, j={}, signal {:?} family {:?}", owner(m, i), owner(m, j), x.assignment(), x.family())
                });
            }
        }
    }
}

fn per_player(ctx: &ModelCtx, rec: &mut Rec, premise: &[Axiom], conclusion: &[Axiom]) {
    for op in ctx.model.operators() {
        let p = premise.iter().all(|&a| holds(op, a));
        let failing = conclusion.iter().find(|&&a| !holds(op, a));
        rec.check(0, p, failing.is_none(), || format!("player {}: {} fails", op.owner(), failing.unwrap()));
    }
}

fn frame(ctx: &ModelCtx, rec: &mut Rec, prop: FrameProperty) {
    for op in ctx.model.operators() {
        let kripke = holds(op, Axiom::Kripke);
        let ax = holds(op, prop.matching_axiom());
        let fr = correspondence_property(&op.derive_correspondence(), prop).holds;
        rec.check(0, kripke && ax, fr, || format!("player {}: {} holds, correspondence not {}", op.owner(), prop.matching_axiom(), prop));
        rec.check(1, kripke && fr, ax, || format!("player {}: correspondence {}, {} fails", op.owner(), prop, prop.matching_axiom()));
    }
}

fn compatibility(ctx: &ModelCtx, rec: &mut Rec, which: u8) {
    let m = ctx.model;
    for op in m.operators() {
        let compatible = compatible_with_informativeness(m.space(), op).expect("table-sized").holds;
        let who = op.owner();
        match which {
            0 => {
                let p = holds(op, Axiom::Kripke) && holds(op, Axiom::Consistency) && holds(op, Axiom::PositiveIntrospection);
                rec.check(0, p, compatible, || format!("player {who}: not compatible"));
            }
            1 => rec.check(0, compatible, op.apply(Event::EMPTY).is_empty(), || format!("player {who}: B(∅) ≠ ∅")),
            _ => rec.check(0, compatible && holds(op, Axiom::FiniteConjunction), holds(op, Axiom::Consistency), || {
                format!("player {who}: Consistency fails")
            }),
        }
    }
}

fn prop5(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    for i in 0..m.player_count() {
        let v = check_prop5(m, i).expect("valid player");
        rec.check(0, v.consistency_and_conjunction && v.upward_certainty.holds, v.conclusion.holds, || {
            let w = v.conclusion.witness.as_ref().map(|w| format_witness(m.space(), w));
            format!("player {}: premises hold, compatibility fails at {}", owner(m, i), w.unwrap_or_default())
        });
    }
}

fn type_axioms(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    for op in m.operators() {
        let t = QualitativeTypeMapping::of(m.space(), op).expect("table-sized");
        for ax in Axiom::ALL {
            rec.check(0, true, check_type_axiom(&t, ax) == check_axiom(op, ax), || {
                format!("player {}: verdicts differ on {ax}", op.owner())
            });
        }
        let back = t.operator_of();
        rec.check(1, true, back.as_ref() == Ok(op), || format!("player {}: operator of type mapping differs", op.owner()));
    }
}

fn common_fixpoint(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    let depth = 1usize << m.space().len();
    let conjunctive = all_ops(m, &[Axiom::FiniteConjunction]);
    for e in m.space().events() {
        let c = m.common_belief(e);
        let it = m.common_belief_iterated(e, depth);
        let fe = m.space().format_event(e);
        rec.check(0, true, c.is_subset(it), || format!("E = {fe}: C(E) ⊄ iterated"));
        rec.check(1, conjunctive, c == it, || format!("E = {fe}: C(E) ≠ iterated"));
    }
}

fn common_strict(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    let depth = 1usize << m.space().len();
    if let Some(e) = m.space().events().find(|&e| m.common_belief(e) != m.common_belief_iterated(e, depth)) {
        rec.found(|| {
            format!(
                "E = {}: C(E) = {}, iterated = {}",
                m.space().format_event(e),
                m.space().format_event(m.common_belief(e)),
                m.space().format_event(m.common_belief_iterated(e, depth))
            )
        });
    }
}

fn pi_without_ni(ctx: &ModelCtx, rec: &mut Rec) {
    let m = ctx.model;
    let types = types_of(m);
    for (i, op) in m.operators().iter().enumerate() {
        if holds(op, Axiom::PositiveIntrospection)
            && !holds(op, Axiom::NegativeIntrospection)
            && type_certain(m, &types, i, i, FamilyKind::Beta)
            && !type_certain(m, &types, i, i, FamilyKind::NegBeta)
        {
            rec.found(|| format!("player {}", op.owner()));
            return;
        }
    }
}

fn model_eval(id: &str) -> ModelEval {
    match id {
        "prop1-1a" => |c, r| prop1(c, r, FamilyKind::Beta, "1a"),
        "prop1-1b" => |c, r| prop1(c, r, FamilyKind::NegBeta, "1b"),
        "prop1-1c" => |c, r| prop1(c, r, FamilyKind::SigmaAtoms, "1c"),
        "prop1-2a" => |c, r| prop1(c, r, FamilyKind::SigmaAtoms, "2a"),
        "prop1-2b" => |c, r| prop1(c, r, FamilyKind::SigmaAtoms, "2b"),
        "rmk1-1a" => |c, r| rmk1(c, r, FamilyKind::Beta, "1a"),
        "rmk1-1b" => |c, r| rmk1(c, r, FamilyKind::NegBeta, "1b"),
        "rmk1-1c" => |c, r| rmk1(c, r, FamilyKind::SigmaAtoms, "1c"),
        "rmk1-2a" => |c, r| rmk1(c, r, FamilyKind::SigmaAtoms, "2a"),
        "rmk1-2b" => |c, r| rmk1(c, r, FamilyKind::SigmaAtoms, "2b"),
        "thm1-1" => thm1_1,
        "thm1-2" => thm1_2,
        "thm1-2-converse-fails" => thm1_2_converse,
        "prop4-1a" => prop4_1a,
        "prop4-1b" => prop4_1b,
        "prop4-side-condition" => prop4_side,
        "prop5" => prop5,
        "compatibility-from-kripke" => |c, r| compatibility(c, r, 0),
        "compatibility-empty-belief" => |c, r| compatibility(c, r, 1),
        "compatibility-consistency" => |c, r| compatibility(c, r, 2),
        "truth-and-ni-imply-pi" => {
            |c, r| per_player(c, r, &[Axiom::TruthAxiom, Axiom::NegativeIntrospection], &[Axiom::PositiveIntrospection])
        }
        "truth-implies-consistency" => |c, r| per_player(c, r, &[Axiom::TruthAxiom], &[Axiom::Consistency]),
        "kripke-implies-logical" => |c, r| {
            per_player(
                c,
                r,
                &[Axiom::Kripke],
                &[Axiom::Monotonicity, Axiom::Necessitation, Axiom::FiniteConjunction, Axiom::CountableConjunction],
            )
        },
        "truth-ni-kripke-imply-all" => {
            |c, r| per_player(c, r, &[Axiom::TruthAxiom, Axiom::NegativeIntrospection, Axiom::Kripke], &Axiom::ALL)
        }
        "frame-serial" => |c, r| frame(c, r, FrameProperty::Serial),
        "frame-reflexive" => |c, r| frame(c, r, FrameProperty::Reflexive),
        "frame-transitive" => |c, r| frame(c, r, FrameProperty::Transitive),
        "frame-euclidean" => |c, r| frame(c, r, FrameProperty::Euclidean),
        "type-axioms-agree" => type_axioms,
        "common-belief-fixpoint" => common_fixpoint,
        "common-belief-strict-inclusion" => common_strict,
        "pi-without-ni-beta-only" => pi_without_ni,
        _ => unreachable!("model claim {id}"),
    }
}

fn state_name(view: &GameView, s: Option<usize>) -> String {
    s.map_or_else(|| "?".into(), |s| view.belief.space().name(s).to_string())
}

fn thm2(ctx: &GameCtx, rec: &mut Rec) {
    for (i, f) in ctx.flags.iter().enumerate() {
        let c = ctx.view.correct_belief(i);
        rec.check(0, f.strategy_certain && f.compatible && f.fc, c.holds, || {
            format!("player {}: B_i(RAT_i) ⊄ RAT_i at {}", i + 1, state_name(&ctx.view, c.witness))
        });
    }
}

fn thm2_cpk(ctx: &GameCtx, rec: &mut Rec) {
    for (i, f) in ctx.flags.iter().enumerate() {
        let c = ctx.view.correct_belief(i);
        rec.check(0, f.consistency && f.pi && f.kripke && f.strategy_certain, c.holds, || {
            format!("player {}: B_i(RAT_i) ⊄ RAT_i at {}", i + 1, state_name(&ctx.view, c.witness))
        });
    }
}

fn thm2_nk(ctx: &GameCtx, rec: &mut Rec) {
    for (i, f) in ctx.flags.iter().enumerate() {
        let c = ctx.view.believes_own_rationality(i);
        rec.check(0, f.ni && f.kripke && f.strategy_certain, c.holds, || {
            format!("player {}: RAT_i ⊄ B_i(RAT_i) at {}", i + 1, state_name(&ctx.view, c.witness))
        });
    }
}

fn thm2_conj(ctx: &GameCtx, rec: &mut Rec) {
    for (i, f) in ctx.flags.iter().enumerate() {
        if f.strategy_certain && f.compatible && !f.fc {
            let c = ctx.view.correct_belief(i);
            if !c.holds {
                rec.found(|| format!("player {}: B_i(RAT_i) ⊄ RAT_i at {}", i + 1, state_name(&ctx.view, c.witness)));
                return;
            }
        }
    }
}

fn epistemic(ctx: &GameCtx, rec: &mut Rec) {
    let v = &ctx.view;
    let players = v.game.player_count();
    let cbr = v.common_belief_in_rationality();
    let correct = (0..players).all(|i| v.correct_belief(i).holds);
    let chain = ctx.flags.iter().all(|f| f.strategy_certain && f.compatible && f.fc);
    for s in 0..v.belief.space().len() {
        let survives = ctx.trace.survives(&v.profile_at(s));
        let msg = || format!("state {}: profile {:?} eliminated", v.belief.space().name(s), v.profile_at(s));
        rec.check(0, cbr.contains(s) && correct, survives, msg);
        rec.check(1, cbr.contains(s) && chain, survives, msg);
    }
}

fn rat_restatement(ctx: &GameCtx, rec: &mut Rec) {
    for i in 0..ctx.view.game.player_count() {
        let (a, b) = (ctx.view.rationality(i), ctx.view.rationality_restated(i));
        rec.check(0, true, a == b, || format!("player {}: {a:?} vs {b:?}", i + 1));
    }
}

fn strategy_consistency(ctx: &GameCtx, rec: &mut Rec) {
    let v = &ctx.view;
    let full = v.belief.space().full();
    for (i, f) in ctx.flags.iter().enumerate() {
        let op = &v.belief.operators()[i];
        let ok = (0..v.game.actions(i).len())
            .map(|a| v.cell(i, a))
            .filter(|c| !c.is_empty())
            .all(|c| op.apply(c) == c && op.apply(full - c) == full - c)
            && op.apply(full) == full;
        rec.check(0, f.consistency && f.strategy_certain, ok, || format!("player {}: identities fail", i + 1));
    }
}

fn rat_monotonicity(ctx: &GameCtx, rec: &mut Rec) {
    let v = &ctx.view;
    let players = v.game.player_count();
    let rats: Vec<Event> = (0..players).map(|i| v.rationality(i)).collect();
    let all = rats.iter().fold(v.belief.space().full(), |acc, &r| acc & r);
    for (i, &r) in rats.iter().enumerate() {
        let op = &v.belief.operators()[i];
        rec.check(0, true, op.apply(all).is_subset(op.apply(r)), || format!("player {}", i + 1));
    }
    let each = rats.iter().fold(v.belief.space().full(), |acc, &r| acc & v.belief.common_belief(r));
    rec.check(1, true, v.belief.common_belief(all).is_subset(each), || "C(RAT_I) ⊄ ⋂ C(RAT_i)".into());
}

fn game_eval(id: &str) -> GameEval {
    match id {
        "thm2" => thm2,
        "thm2-consistency-pi-kripke" => thm2_cpk,
        "thm2-ni-kripke" => thm2_nk,
        "thm2-conjunction-needed" => thm2_conj,
        "epistemic-iesda" => epistemic,
        "rat-restatement" => rat_restatement,
        "strategy-certainty-consistency" => strategy_consistency,
        "rationality-monotonicity" => rat_monotonicity,
        _ => unreachable!("game claim {id}"),
    }
}
