use std::collections::BTreeMap;

use super::*;
use crate::error::Error;
use crate::game::{Game, GameModel};
use crate::model::BeliefModel;
use crate::operator::{BeliefOperator, PossibilityCorrespondence};
use crate::signal::{Signal, ValueSet};
use crate::space::{Event, StateSpace, MAX_TABLE_STATES};

/// A document turned into checked core values.
#[derive(Clone, Debug)]
pub struct Validated {
    pub model: BeliefModel,
    pub signals: Vec<(String, Signal)>,
    pub game: Option<GameModel>,
}

impl Validated {
    pub fn signal(&self, name: &str) -> Option<&Signal> {
        self.signals.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }
}

type VResult<T> = Result<T, DslError>;

fn state_of(space: &StateSpace, n: &Name) -> VResult<usize> {
    space
        .index_of(&n.text)
        .map_err(|_| DslError::semantic(n.loc, format!("unknown state `{}`", n.text)))
}

pub(crate) fn event_of(space: &StateSpace, set: &SetLit) -> VResult<Event> {
    let mut e = Event::EMPTY;
    for item in &set.items {
        let s = state_of(space, item)?;
        if e.contains(s) {
            return Err(DslError::semantic(item.loc, format!("state `{}` listed twice", item.text)));
        }
        e = e.with(s);
    }
    Ok(e)
}

fn unique<'a>(names: impl IntoIterator<Item = &'a Name>, what: &str) -> VResult<()> {
    let mut seen: Vec<&str> = Vec::new();
    for n in names {
        if seen.contains(&n.text.as_str()) {
            return Err(DslError::semantic(n.loc, format!("duplicate {what} `{}`", n.text)));
        }
        seen.push(&n.text);
    }
    Ok(())
}

fn operator(space: &StateSpace, p: &PlayerDecl) -> VResult<BeliefOperator> {
    let owner = p.name.text.clone();
    let who = format!("player {}", p.name.text);
    let core_err = |e: Error| DslError::semantic(p.loc, format!("{who}: {e}"));
    match &p.spec {
        OperatorSpec::Kripke(rows) => {
            let mut possible: Vec<Option<Event>> = vec![None; space.len()];
            for (s, set) in rows {
                let i = state_of(space, s)?;
                if possible[i].is_some() {
                    return Err(DslError::semantic(s.loc, format!("state `{}` listed twice in the kripke block of {who}", s.text)));
                }
                possible[i] = Some(event_of(space, set)?);
            }
            if let Some(missing) = possible.iter().position(Option::is_none) {
                return Err(DslError::semantic(
                    p.loc,
                    format!("kripke block of {who} does not list state `{}`", space.name(missing)),
                ));
            }
            let b = PossibilityCorrespondence::new(space, possible.into_iter().flatten().collect()).map_err(core_err)?;
            BeliefOperator::from_correspondence(space, owner, &b).map_err(core_err)
        }
        OperatorSpec::Table(rows) | OperatorSpec::Core(rows) => {
            if space.len() > MAX_TABLE_STATES {
                return Err(DslError::semantic(
                    p.loc,
                    format!("{who}: tables support at most {MAX_TABLE_STATES} states; use a kripke block"),
                ));
            }
            let mut map = BTreeMap::new();
            for (e, f) in rows {
                let ev = event_of(space, e)?;
                let img = event_of(space, f)?;
                if map.insert(ev, img).is_some() {
                    return Err(DslError::semantic(
                        e.loc,
                        format!("event {} listed twice for {who}", space.format_event(ev)),
                    ));
                }
            }
            if matches!(p.spec, OperatorSpec::Core(_)) {
                return BeliefOperator::monotone_closure(space, owner, &map).map_err(core_err);
            }
            if let Some(missing) = space.events().find(|e| !map.contains_key(e)) {
                return Err(DslError::semantic(
                    p.loc,
                    format!(
                        "table of {who} is missing event {}; use `core` for a partial table",
                        space.format_event(missing)
                    ),
                ));
            }
            BeliefOperator::from_table(space, owner, map.into_values().collect()).map_err(|e| match e {
                Error::NonMonotone { smaller, larger } => {
                    let (a, b) = (Event::from_bits(smaller), Event::from_bits(larger));
                    DslError::semantic(
                        p.loc,
                        format!(
                            "table of {who} is not monotone: {} ⊆ {} but B({}) ⊄ B({})",
                            space.format_event(a),
                            space.format_event(b),
                            space.format_event(a),
                            space.format_event(b)
                        ),
                    )
                }
                other => core_err(other),
            })
        }
    }
}

fn value_of(codomain: &SetLit, v: &Name, signal: &str) -> VResult<usize> {
    codomain
        .items
        .iter()
        .position(|c| c.text == v.text)
        .ok_or_else(|| DslError::semantic(v.loc, format!("`{}` is not a value of signal {signal}", v.text)))
}

fn signal(space: &StateSpace, s: &SignalDecl) -> VResult<Signal> {
    let name = &s.name.text;
    unique(&s.codomain.items, "value")?;
    let mut assignment: Vec<Option<usize>> = vec![None; space.len()];
    for (st, v) in &s.assignment {
        let i = state_of(space, st)?;
        if assignment[i].is_some() {
            return Err(DslError::semantic(st.loc, format!("state `{}` assigned twice in signal {name}", st.text)));
        }
        assignment[i] = Some(value_of(&s.codomain, v, name)?);
    }
    if let Some(missing) = assignment.iter().position(Option::is_none) {
        return Err(DslError::semantic(
            s.loc,
            format!("signal {name} does not assign state `{}`", space.name(missing)),
        ));
    }
    let mut family = Vec::new();
    for set in &s.family {
        let mut f: ValueSet = 0;
        for v in &set.items {
            f |= 1 << value_of(&s.codomain, v, name)?;
        }
        family.push(f);
    }
    Signal::new(
        space,
        s.codomain.items.iter().map(|n| n.text.clone()).collect(),
        assignment.into_iter().flatten().collect(),
        family,
    )
    .map_err(|e| DslError::semantic(s.loc, format!("signal {name}: {e}")))
}

fn game(model: BeliefModel, g: &GameDecl) -> VResult<GameModel> {
    let space = model.space().clone();
    let players: Vec<String> = model.players().map(String::from).collect();
    let player_of = |n: &Name| {
        players
            .iter()
            .position(|p| *p == n.text)
            .ok_or_else(|| DslError::semantic(n.loc, format!("unknown player `{}`", n.text)))
    };

    let mut actions: Vec<Option<Vec<String>>> = vec![None; players.len()];
    for (p, acts) in &g.actions {
        let i = player_of(p)?;
        if actions[i].is_some() {
            return Err(DslError::semantic(p.loc, format!("actions of player {} given twice", p.text)));
        }
        if acts.is_empty() {
            return Err(DslError::semantic(p.loc, format!("player {} has no actions", p.text)));
        }
        unique(acts, "action")?;
        actions[i] = Some(acts.iter().map(|a| a.text.clone()).collect());
    }
    if let Some(missing) = actions.iter().position(Option::is_none) {
        return Err(DslError::semantic(g.loc, format!("game does not list actions of player {}", players[missing])));
    }
    let actions: Vec<Vec<String>> = actions.into_iter().flatten().collect();
    let action_of = |i: usize, a: &Name| {
        actions[i]
            .iter()
            .position(|x| *x == a.text)
            .ok_or_else(|| DslError::semantic(a.loc, format!("`{}` is not an action of player {}", a.text, players[i])))
    };

    let strides: Vec<usize> = (0..actions.len())
        .map(|i| actions[i + 1..].iter().map(Vec::len).product())
        .collect();
    let profiles = strides[0] * actions[0].len();
    let mut ranks: Vec<Vec<Option<i64>>> = vec![vec![None; profiles]; players.len()];
    for r in &g.ranks {
        let i = player_of(&r.player)?;
        if r.profile.len() != players.len() {
            return Err(DslError::semantic(
                r.loc,
                format!("profile has {} actions, the game has {} players", r.profile.len(), players.len()),
            ));
        }
        let mut idx = 0;
        for (j, a) in r.profile.iter().enumerate() {
            idx += action_of(j, a)? * strides[j];
        }
        if ranks[i][idx].replace(r.rank).is_some() {
            return Err(DslError::semantic(r.loc, format!("rank of player {} for this profile given twice", players[i])));
        }
    }
    for (i, row) in ranks.iter().enumerate() {
        if let Some(p) = row.iter().position(Option::is_none) {
            let prof: Vec<&str> = (0..players.len())
                .map(|j| actions[j][p / strides[j] % actions[j].len()].as_str())
                .collect();
            return Err(DslError::semantic(
                g.loc,
                format!("no rank of player {} for profile ({})", players[i], prof.join(", ")),
            ));
        }
    }

    let mut strategies: Vec<Option<Vec<usize>>> = vec![None; players.len()];
    for s in &g.strategies {
        let i = player_of(&s.player)?;
        if strategies[i].is_some() {
            return Err(DslError::semantic(s.loc, format!("strategy of player {} given twice", s.player.text)));
        }
        let mut moves: Vec<Option<usize>> = vec![None; space.len()];
        for (st, a) in &s.moves {
            let k = state_of(&space, st)?;
            if moves[k].is_some() {
                return Err(DslError::semantic(st.loc, format!("state `{}` assigned twice", st.text)));
            }
            moves[k] = Some(action_of(i, a)?);
        }
        if let Some(missing) = moves.iter().position(Option::is_none) {
            return Err(DslError::semantic(
                s.loc,
                format!("strategy of player {} does not assign state `{}`", s.player.text, space.name(missing)),
            ));
        }
        strategies[i] = Some(moves.into_iter().flatten().collect());
    }
    if let Some(missing) = strategies.iter().position(Option::is_none) {
        return Err(DslError::semantic(g.loc, format!("game has no strategy for player {}", players[missing])));
    }

    let ranks = ranks.into_iter().map(|r| r.into_iter().flatten().collect()).collect();
    let gm = Game::new(players, actions, ranks).map_err(|e| DslError::semantic(g.loc, e.to_string()))?;
    GameModel::new(model, gm, strategies.into_iter().flatten().collect())
        .map_err(|e| DslError::semantic(g.loc, e.to_string()))
}

/// Checks a document and builds the model, its signals and its game.
/// Fails with the first semantic error in document order.
pub fn validate(doc: &ModelSpecDocument) -> Result<Validated, DslError> {
    unique(&doc.states, "state")?;
    let space = StateSpace::new(doc.states.iter().map(|n| n.text.clone()))
        .map_err(|e| DslError::semantic(doc.states[0].loc, e.to_string()))?;
    if doc.players.is_empty() {
        return Err(DslError::semantic(doc.states[0].loc, "document declares no players"));
    }
    unique(doc.players.iter().map(|p| &p.name), "player")?;
    let ops = doc
        .players
        .iter()
        .map(|p| operator(&space, p))
        .collect::<VResult<Vec<_>>>()?;
    let model = BeliefModel::new(space.clone(), ops).map_err(|e| DslError::semantic(doc.players[0].loc, e.to_string()))?;
    unique(doc.signals.iter().map(|s| &s.name), "signal")?;
    let signals = doc
        .signals
        .iter()
        .map(|s| Ok((s.name.text.clone(), signal(&space, s)?)))
        .collect::<VResult<Vec<_>>>()?;
    let game = doc.game.as_ref().map(|g| game(model.clone(), g)).transpose()?;
    Ok(Validated { model, signals, game })
}

fn set_of(space: &StateSpace, e: Event) -> SetLit {
    SetLit::of(e.states().map(|s| space.name(s).to_string()))
}

/// The document describing a model (and optionally signals over it).
/// Operators built from a correspondence are written as `kripke` blocks,
/// all others as full tables.
pub fn document_of(model: &BeliefModel, signals: &[(String, Signal)]) -> ModelSpecDocument {
    let space = model.space();
    let players = model
        .operators()
        .iter()
        .map(|op| {
            let spec = match op.kripke_source() {
                Some(b) => OperatorSpec::Kripke(
                    (0..space.len())
                        .map(|s| (Name::new(space.name(s)), set_of(space, b.at(s))))
                        .collect(),
                ),
                None => OperatorSpec::Table(
                    space
                        .events()
                        .map(|e| (set_of(space, e), set_of(space, op.apply(e))))
                        .collect(),
                ),
            };
            PlayerDecl {
                name: Name::new(op.owner()),
                spec,
                loc: Loc(None),
            }
        })
        .collect();
    let signals = signals
        .iter()
        .map(|(name, x)| {
            let values = |f: ValueSet| SetLit::of((0..x.codomain().len()).filter(|v| f >> v & 1 == 1).map(|v| x.codomain()[v].clone()));
            SignalDecl {
                name: Name::new(name.clone()),
                codomain: SetLit::of(x.codomain().iter().cloned()),
                assignment: (0..space.len())
                    .map(|s| (Name::new(space.name(s)), Name::new(x.codomain()[x.value_at(s)].clone())))
                    .collect(),
                family: x.family().iter().map(|&f| values(f)).collect(),
                loc: Loc(None),
            }
        })
        .collect();
    ModelSpecDocument {
        states: space.names().iter().map(Name::new).collect(),
        players,
        signals,
        game: None,
    }
}

pub fn document_of_game(gm: &GameModel) -> ModelSpecDocument {
    let mut doc = document_of(gm.belief(), &[]);
    let g = gm.game();
    let space = gm.belief().space();
    let players = g.players();
    let name = |i: usize, a: usize| Name::new(g.actions(i)[a].clone());
    doc.game = Some(GameDecl {
        actions: (0..players.len())
            .map(|i| (Name::new(players[i].clone()), (0..g.actions(i).len()).map(|a| name(i, a)).collect()))
            .collect(),
        ranks: (0..players.len())
            .flat_map(|i| {
                (0..g.profile_count()).map(move |p| RankDecl {
                    player: Name::new(players[i].clone()),
                    profile: g.profile(p).into_iter().enumerate().map(|(j, a)| name(j, a)).collect(),
                    rank: g.rank(i, p),
                    loc: Loc(None),
                })
            })
            .collect(),
        strategies: (0..players.len())
            .map(|i| StrategyDecl {
                player: Name::new(players[i].clone()),
                moves: (0..space.len())
                    .map(|s| (Name::new(space.name(s)), name(i, gm.strategies()[i][s])))
                    .collect(),
                loc: Loc(None),
            })
            .collect(),
        loc: Loc(None),
    });
    doc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> DslError {
        validate(&parse_model_spec(text).unwrap()).unwrap_err()
    }

    #[test]
    fn kripke_missing_state_is_named() {
        let e = err("states w1 w2 w3;\nplayer 1 { kripke { w1: {w1}; w3: {w3}; } }");
        assert_eq!(e.kind, ErrorKind::Semantic);
        assert!(e.message.contains("`w2`"), "{}", e.message);
        assert_eq!(e.pos.line, 2);
    }

    #[test]
    fn semantic_errors() {
        assert!(err("states a a;\nplayer 1 { kripke { a: {a} } }").message.contains("duplicate state"));
        assert!(err("states a;\nplayer 1 { kripke { a: {b} } }").message.contains("unknown state `b`"));
        assert!(err("states a b;\nplayer 1 { table { {}: {} } }").message.contains("use `core`"));
        let e = err("states a;\nplayer 1 { table { {}: {a}; {a}: {} } }");
        assert!(e.message.contains("not monotone"), "{}", e.message);
        assert!(err("states a;\nplayer 1 { kripke { a: {a} } }\nplayer 1 { kripke { a: {a} } }")
            .message
            .contains("duplicate player"));
        assert!(err("states a;").message.contains("no players"));
        assert!(err("states a;\nplayer 1 { kripke { a: {a} } }\nsignal x : {u} { } family { {u} }")
            .message
            .contains("does not assign"));
        let e = err("states a;\nplayer 1 { kripke { a: {a} } }\ngame { actions 1: x y; rank 1 (x) = 1; strategy 1 { a -> x } }");
        assert!(e.message.contains("profile (y)"), "{}", e.message);
    }

    #[test]
    fn core_block_closes_upward() {
        let v = validate(&parse_model_spec("states a b;\nplayer 1 { core { {a}: {a} } }").unwrap()).unwrap();
        let op = &v.model.operators()[0];
        assert_eq!(op.apply(Event::from_states([0, 1])), Event::singleton(0));
        assert_eq!(op.apply(Event::singleton(1)), Event::EMPTY);
    }

    #[test]
    fn document_round_trip_through_model() {
        let text = "states a b;\nplayer 1 { core { {a}: {a} } }\nplayer 2 { kripke { a: {a, b}; b: {b} } }\n\
                    signal x : {u, v} { a -> u; b -> v } family { {u} {v} }";
        let v = validate(&parse_model_spec(text).unwrap()).unwrap();
        let doc = document_of(&v.model, &v.signals);
        let again = validate(&doc).unwrap();
        for (p, q) in v.model.operators().iter().zip(again.model.operators()) {
            assert_eq!(p, q);
        }
        assert_eq!(again.signals, v.signals);
        let text = serialize(&doc);
        assert_eq!(parse_model_spec(&text).unwrap(), doc);
        assert_eq!(serialize(&parse_model_spec(&text).unwrap()), text);
    }
}
