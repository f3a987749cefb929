//! Strategic games, belief models of games, rationality, and iterated
//! elimination of strictly dominated actions.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::{holds, Axiom, ImplicationStatus};
use crate::error::{Error, Result};
use crate::informativeness::compatible_with_informativeness;
use crate::model::BeliefModel;
use crate::signal::{certainty_under, family, CertaintyReport, Signal};
use crate::space::Event;

/// A finite game. Preferences are total preorders encoded as an integer
/// rank per action profile; higher is strictly better, equal is indifferent.
///
/// Profiles are indexed in mixed radix with the first player most
/// significant, so the index order is the lexicographic order of profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    players: Vec<String>,
    actions: Vec<Vec<String>>,
    ranks: Vec<Vec<i64>>,
    strides: Vec<usize>,
}

impl Game {
    pub fn new(players: Vec<String>, actions: Vec<Vec<String>>, ranks: Vec<Vec<i64>>) -> Result<Self> {
        if players.is_empty() {
            return Err(Error::NoPlayers);
        }
        if actions.len() != players.len() || ranks.len() != players.len() {
            return Err(Error::InvalidGame("every player needs actions and ranks".into()));
        }
        for (i, p) in players.iter().enumerate() {
            if players[..i].contains(p) {
                return Err(Error::DuplicatePlayer(p.clone()));
            }
            let acts = &actions[i];
            if acts.is_empty() {
                return Err(Error::InvalidGame(format!("player {p} has no actions")));
            }
            if let Some(dup) = acts.iter().enumerate().find(|(j, a)| acts[..*j].contains(a)) {
                return Err(Error::InvalidGame(format!("player {p} lists action {} twice", dup.1)));
            }
        }
        let mut strides = vec![1; players.len()];
        for i in (0..players.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * actions[i + 1].len();
        }
        let profiles = strides[0] * actions[0].len();
        for (i, r) in ranks.iter().enumerate() {
            if r.len() != profiles {
                return Err(Error::InvalidGame(format!(
                    "player {} ranks {} profiles, the game has {profiles}",
                    players[i],
                    r.len()
                )));
            }
        }
        Ok(Game {
            players,
            actions,
            ranks,
            strides,
        })
    }

    /// Two-player prisoner's dilemma with actions `C`, `D`.
    pub fn prisoners_dilemma() -> Self {
        let acts = vec!["C".to_string(), "D".to_string()];
        // profiles CC, CD, DC, DD
        Game::new(
            vec!["1".into(), "2".into()],
            vec![acts.clone(), acts],
            vec![vec![3, 1, 4, 2], vec![3, 4, 1, 2]],
        )
        .expect("well-formed")
    }

    pub fn player_count(&self) -> usize {
        self.players.len()
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn actions(&self, player: usize) -> &[String] {
        &self.actions[player]
    }

    pub fn action_index(&self, player: usize, name: &str) -> Result<usize> {
        self.actions[player]
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAction(name.to_string()))
    }

    pub fn profile_count(&self) -> usize {
        self.strides[0] * self.actions[0].len()
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn profile(&self, index: usize) -> Vec<usize> {
        (0..self.players.len())
            .map(|i| index / self.strides[i] % self.actions[i].len())
            .collect()
    }

    pub fn rank(&self, player: usize, profile: usize) -> i64 {
        self.ranks[player][profile]
    }

    pub fn ranks(&self, player: usize) -> &[i64] {
        &self.ranks[player]
    }

    /// Replaces the player's coordinate of a profile index.
    #[inline]
    fn deviate(&self, player: usize, profile: usize, action: usize) -> usize {
        let own = profile / self.strides[player] % self.actions[player].len();
        profile - own * self.strides[player] + action * self.strides[player]
    }

    /// Does `better` strictly dominate `worse` for the player against every
    /// opponent profile drawn from `alive`?
    fn dominates(&self, player: usize, better: usize, worse: usize, alive: &[Vec<bool>]) -> bool {
        let ranks = &self.ranks[player];
        (0..self.profile_count()).all(|p| {
            let prof = self.profile(p);
            if prof[player] != worse || prof.iter().enumerate().any(|(j, &a)| j != player && !alive[j][a]) {
                return true;
            }
            ranks[self.deviate(player, p, better)] > ranks[p]
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PreferenceRelation {
    /// `≽`
    AtLeastAsGood,
    /// `≻`
    Strict,
    /// `~`
    Indifferent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EliminationOrder {
    /// Remove every dominated action each round.
    Maximal,
    /// Remove one dominated action per round, chosen by a seeded generator.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTrace {
    /// Removals grouped by round, as `(player, action)`.
    pub rounds: Vec<Vec<(usize, usize)>>,
    /// Surviving actions per player, in action order.
    pub survivors: Vec<Vec<usize>>,
}

impl EliminationTrace {
    pub fn survives(&self, profile: &[usize]) -> bool {
        profile.iter().zip(&self.survivors).all(|(a, s)| s.contains(a))
    }

    pub fn removals(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rounds.iter().flatten().copied()
    }
}

pub fn iesda(game: &Game, order: EliminationOrder) -> EliminationTrace {
    let mut alive: Vec<Vec<bool>> = game.actions.iter().map(|a| vec![true; a.len()]).collect();
    let mut rng = match order {
        EliminationOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        EliminationOrder::Maximal => None,
    };
    let mut rounds = Vec::new();
    loop {
        let mut dominated = Vec::new();
        for i in 0..game.player_count() {
            for a in 0..alive[i].len() {
                if alive[i][a] && (0..alive[i].len()).any(|b| b != a && alive[i][b] && game.dominates(i, b, a, &alive)) {
                    dominated.push((i, a));
                }
            }
        }
        if dominated.is_empty() {
            break;
        }
        let removed = match rng.as_mut() {
            Some(rng) => vec![*dominated.choose(rng).expect("non-empty")],
            None => dominated,
        };
        for &(i, a) in &removed {
            alive[i][a] = false;
        }
        rounds.push(removed);
    }
    let survivors = alive
        .iter()
        .map(|al| (0..al.len()).filter(|&a| al[a]).collect())
        .collect();
    EliminationTrace { rounds, survivors }
}

/// A belief model of a game: the belief model's players are the game's
/// players, in the same order, and each has a strategy (state → action).
#[derive(Clone, Debug)]
pub struct GameModel {
    belief: BeliefModel,
    game: Game,
    strategies: Vec<Vec<usize>>,
}

#[derive(Clone, Copy)]
pub(crate) struct GameView<'a> {
    pub belief: &'a BeliefModel,
    pub game: &'a Game,
    pub strategies: &'a [Vec<usize>],
}

/// Containment `B_i(RAT_i) ⊆ RAT_i`, with the first state where it fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl Containment {
    fn of(lhs: Event, rhs: Event) -> Self {
        let witness = (lhs - rhs).first();
        Containment {
            holds: witness.is_none(),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyCertainty {
    pub report: CertaintyReport,
    /// Present when the operator satisfies Consistency:
    /// `B_i([σ_i(·)]) = [σ_i(·)]`, `B_i([σ_i(·)]^c) = [σ_i(·)]^c`, `B_i(Ω) = Ω`.
    pub derived: Option<[bool; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpistemicIesdaVerdict {
    pub state: usize,
    /// `ω ∈ ⋂_i C(RAT_i)`
    pub common_belief_in_rationality: bool,
    /// `B_i(RAT_i) ⊆ RAT_i` for every player, checked directly.
    pub correct_beliefs: bool,
    /// Strategy certainty, compatibility and Finite Conjunction for every player.
    pub sufficient_conditions: bool,
    pub survives: bool,
    pub status: ImplicationStatus,
}

impl GameModel {
    pub fn new(belief: BeliefModel, game: Game, strategies: Vec<Vec<usize>>) -> Result<Self> {
        if !belief.players().eq(game.players().iter().map(String::as_str)) {
            return Err(Error::InvalidGame("game players differ from model players".into()));
        }
        if strategies.len() != game.player_count() {
            return Err(Error::InvalidGame("every player needs a strategy".into()));
        }
        for (i, s) in strategies.iter().enumerate() {
            if s.len() != belief.space().len() {
                return Err(Error::InvalidGame(format!(
                    "strategy of player {} covers {} states, space has {}",
                    game.players()[i],
                    s.len(),
                    belief.space().len()
                )));
            }
            if s.iter().any(|&a| a >= game.actions(i).len()) {
                return Err(Error::InvalidGame(format!("strategy of player {} uses an unknown action", game.players()[i])));
            }
        }
        Ok(GameModel {
            belief,
            game,
            strategies,
        })
    }

    pub fn belief(&self) -> &BeliefModel {
        &self.belief
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn strategies(&self) -> &[Vec<usize>] {
        &self.strategies
    }

    pub(crate) fn view(&self) -> GameView<'_> {
        GameView {
            belief: &self.belief,
            game: &self.game,
            strategies: &self.strategies,
        }
    }

    fn check_player(&self, player: usize) -> Result<()> {
        if player < self.game.player_count() {
            Ok(())
        } else {
            Err(Error::PlayerOutOfRange(player))
        }
    }

    pub fn preference_event(
        &self,
        player: usize,
        better: usize,
        worse: usize,
        relation: PreferenceRelation,
    ) -> Result<Event> {
        self.check_player(player)?;
        let k = self.game.actions(player).len();
        if better >= k || worse >= k {
            return Err(Error::UnknownAction(format!("index {}", better.max(worse))));
        }
        Ok(self.view().preference_event(player, better, worse, relation))
    }

    /// `[σ_i(ω)] = σ_i⁻¹(σ_i(ω))`.
    pub fn strategy_cell(&self, player: usize, state: usize) -> Event {
        self.view().cell(player, self.strategies[player][state])
    }

    pub fn strategy_signal(&self, player: usize) -> Signal {
        let k = self.game.actions(player).len();
        Signal::from_parts(
            self.game.actions(player).to_vec(),
            self.strategies[player].clone(),
            family::singletons(k),
        )
    }

    pub fn rationality_event(&self, player: usize) -> Result<Event> {
        self.check_player(player)?;
        Ok(self.view().rationality(player))
    }

    /// `{ω : ∀a' : ω ∈ ¬B_i(¬[σ_i(ω) ≽ a'])}`
    pub fn rationality_event_restated(&self, player: usize) -> Result<Event> {
        self.check_player(player)?;
        Ok(self.view().rationality_restated(player))
    }

    pub fn strategy_certainty(&self, player: usize) -> Result<StrategyCertainty> {
        let op = self.belief.operator(player)?;
        let report = certainty_under(|e| op.apply(e), &self.strategy_signal(player));
        let derived = holds(op, Axiom::Consistency).then(|| {
            let full = self.belief.space().full();
            let cells: Vec<Event> = (0..self.game.actions(player).len())
                .map(|a| self.view().cell(player, a))
                .filter(|c| !c.is_empty())
                .collect();
            [
                cells.iter().all(|&c| op.apply(c) == c),
                cells.iter().all(|&c| op.apply(full - c) == full - c),
                op.apply(full) == full,
            ]
        });
        Ok(StrategyCertainty { report, derived })
    }

    pub fn correct_belief_in_own_rationality(&self, player: usize) -> Result<Containment> {
        self.check_player(player)?;
        Ok(self.view().correct_belief(player))
    }

    /// Premises of the sufficient condition for correct belief in one's own
    /// rationality: strategy certainty, compatibility, Finite Conjunction.
    pub fn sufficient_conditions(&self, player: usize) -> Result<bool> {
        let op = self.belief.operator(player)?;
        Ok(self.view().strategy_certain(player)
            && holds(op, Axiom::FiniteConjunction)
            && compatible_with_informativeness(self.belief.space(), op)?.holds)
    }

    pub fn epistemic_iesda_verdict(&self, state: usize) -> Result<EpistemicIesdaVerdict> {
        self.belief.space().check_state(state)?;
        let trace = iesda(&self.game, EliminationOrder::Maximal);
        let players = 0..self.game.player_count();
        let sufficient_conditions = players
            .clone()
            .map(|i| self.sufficient_conditions(i))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b);
        let view = self.view();
        let common_belief_in_rationality = view.common_belief_in_rationality().contains(state);
        let correct_beliefs = players.clone().all(|i| view.correct_belief(i).holds);
        let survives = trace.survives(&view.profile_at(state));
        Ok(EpistemicIesdaVerdict {
            state,
            common_belief_in_rationality,
            correct_beliefs,
            sufficient_conditions,
            survives,
            status: ImplicationStatus::of(common_belief_in_rationality && correct_beliefs, survives),
        })
    }
}

impl GameView<'_> {
    pub fn cell(&self, player: usize, action: usize) -> Event {
        Event::from_states(
            self.strategies[player]
                .iter()
                .enumerate()
                .filter(|&(_, &a)| a == action)
                .map(|(s, _)| s),
        )
    }

    pub fn profile_at(&self, state: usize) -> Vec<usize> {
        self.strategies.iter().map(|s| s[state]).collect()
    }

    fn profile_index_at(&self, state: usize) -> usize {
        self.strategies
            .iter()
            .zip(&self.game.strides)
            .map(|(s, stride)| s[state] * stride)
            .sum()
    }

    pub fn preference_event(&self, player: usize, better: usize, worse: usize, relation: PreferenceRelation) -> Event {
        let g = self.game;
        let ranks = &g.ranks[player];
        let n = self.belief.space().len();
        Event::from_states((0..n).filter(|&s| {
            let p = self.profile_index_at(s);
            let (hi, lo) = (ranks[g.deviate(player, p, better)], ranks[g.deviate(player, p, worse)]);
            match relation {
                PreferenceRelation::AtLeastAsGood => hi >= lo,
                PreferenceRelation::Strict => hi > lo,
                PreferenceRelation::Indifferent => hi == lo,
            }
        }))
    }

    pub fn rationality(&self, player: usize) -> Event {
        let op = &self.belief.operators()[player];
        let n = self.belief.space().len();
        let k = self.game.actions(player).len();
        Event::from_states((0..n).filter(|&s| {
            let own = self.strategies[player][s];
            (0..k).all(|alt| !op.apply(self.preference_event(player, alt, own, PreferenceRelation::Strict)).contains(s))
        }))
    }

    pub fn rationality_restated(&self, player: usize) -> Event {
        let op = &self.belief.operators()[player];
        let space = self.belief.space();
        let k = self.game.actions(player).len();
        Event::from_states((0..space.len()).filter(|&s| {
            let own = self.strategies[player][s];
            (0..k).all(|alt| {
                let weakly = self.preference_event(player, own, alt, PreferenceRelation::AtLeastAsGood);
                op.disbelief(space.complement(weakly)).contains(s)
            })
        }))
    }

    pub fn strategy_certain(&self, player: usize) -> bool {
        let op = &self.belief.operators()[player];
        (0..self.game.actions(player).len()).all(|a| {
            let c = self.cell(player, a);
            c.is_subset(op.apply(c))
        })
    }

    pub fn correct_belief(&self, player: usize) -> Containment {
        let rat = self.rationality(player);
        Containment::of(self.belief.operators()[player].apply(rat), rat)
    }

    /// Converse inclusion `RAT_i ⊆ B_i(RAT_i)`.
    pub fn believes_own_rationality(&self, player: usize) -> Containment {
        let rat = self.rationality(player);
        Containment::of(rat, self.belief.operators()[player].apply(rat))
    }

    /// `⋂_i C(RAT_i)`
    pub fn common_belief_in_rationality(&self) -> Event {
        (0..self.game.player_count()).fold(self.belief.space().full(), |acc, i| {
            acc & self.belief.common_belief(self.rationality(i))
        })
    }
}

impl fmt::Display for PreferenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PreferenceRelation::AtLeastAsGood => "≽",
            PreferenceRelation::Strict => "≻",
            PreferenceRelation::Indifferent => "~",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::BeliefOperator;
    use crate::space::StateSpace;

    fn pd_model(op: BeliefOperator, n: usize, sigma: [Vec<usize>; 2]) -> GameModel {
        let sp = StateSpace::with_size(n).unwrap();
        let belief = BeliefModel::new(sp, vec![op.clone().with_owner("1"), op.with_owner("2")]).unwrap();
        GameModel::new(belief, Game::prisoners_dilemma(), sigma.to_vec()).unwrap()
    }

    #[test]
    fn pd_profiles_and_dominance() {
        let g = Game::prisoners_dilemma();
        assert_eq!(g.profile(2), vec![1, 0]);
        assert_eq!(g.rank(0, g.profile_index(&[1, 0])), 4);
        let t = iesda(&g, EliminationOrder::Maximal);
        assert_eq!(t.survivors, vec![vec![1], vec![1]]);
        assert_eq!(t.rounds, vec![vec![(0, 0), (1, 0)]]);
        for seed in 0..10 {
            let t = iesda(&g, EliminationOrder::Seeded(seed));
            assert_eq!(t.survivors, vec![vec![1], vec![1]]);
            assert_eq!(t.rounds.len(), 2);
        }
    }

    #[test]
    fn no_dominated_action_keeps_everything() {
        let acts = vec!["a".to_string(), "b".to_string()];
        let g = Game::new(
            vec!["1".into(), "2".into()],
            vec![acts.clone(), acts],
            vec![vec![1, 0, 0, 1], vec![1, 0, 0, 1]],
        )
        .unwrap();
        let t = iesda(&g, EliminationOrder::Maximal);
        assert!(t.rounds.is_empty());
        assert_eq!(t.survivors, vec![vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn pd_preference_events() {
        let sp = StateSpace::with_size(2).unwrap();
        let gm = pd_model(BeliefOperator::identity(&sp, "x"), 2, [vec![0, 1], vec![1, 0]]);
        let full = sp.full();
        assert_eq!(gm.preference_event(0, 1, 0, PreferenceRelation::Strict).unwrap(), full);
        assert_eq!(gm.preference_event(0, 0, 0, PreferenceRelation::Indifferent).unwrap(), full);
        assert_eq!(gm.preference_event(0, 0, 0, PreferenceRelation::Strict).unwrap(), Event::EMPTY);
        assert!(gm.preference_event(0, 2, 0, PreferenceRelation::Strict).is_err());
    }

    #[test]
    fn pd_rationality() {
        let sp = StateSpace::with_size(2).unwrap();
        let defect = pd_model(BeliefOperator::identity(&sp, "x"), 2, [vec![1, 1], vec![1, 1]]);
        assert_eq!(defect.rationality_event(0).unwrap(), sp.full());
        let cooperate = pd_model(BeliefOperator::identity(&sp, "x"), 2, [vec![0, 0], vec![1, 1]]);
        assert_eq!(cooperate.rationality_event(0).unwrap(), Event::EMPTY);
        assert_eq!(cooperate.rationality_event_restated(0).unwrap(), Event::EMPTY);

        let v = defect.epistemic_iesda_verdict(0).unwrap();
        assert!(v.common_belief_in_rationality && v.correct_beliefs && v.survives);
        assert_eq!(v.status, ImplicationStatus::Confirmed);
        let v = cooperate.epistemic_iesda_verdict(0).unwrap();
        assert_eq!(v.status, ImplicationStatus::Vacuous);
    }

    #[test]
    fn strategy_certainty_on_three_state_operator() {
        let sp = StateSpace::with_size(3).unwrap();
        let table = sp.events().map(|e| if e == sp.full() { e } else { e.without(2) }).collect();
        let op = BeliefOperator::from_table(&sp, "x", table).unwrap();
        let gm = pd_model(op, 3, [vec![0, 1, 0], vec![1, 1, 1]]);
        let c = gm.strategy_certainty(0).unwrap();
        assert!(!c.report.holds);
        assert_eq!(c.report.failures[0].state, 2);
        assert!(gm.strategy_certainty(1).unwrap().report.holds);
        assert_eq!(gm.strategy_certainty(1).unwrap().derived, Some([true, true, true]));
    }

    #[test]
    fn game_validation() {
        let acts = vec!["a".to_string()];
        assert!(Game::new(vec!["1".into()], vec![vec![]], vec![vec![]]).is_err());
        assert!(Game::new(vec!["1".into()], vec![acts.clone()], vec![vec![1, 2]]).is_err());
        assert!(Game::new(vec!["1".into(), "1".into()], vec![acts.clone(), acts.clone()], vec![vec![1], vec![1]]).is_err());
        assert!(Game::new(vec!["1".into()], vec![acts], vec![vec![0]]).is_ok());
    }
}
