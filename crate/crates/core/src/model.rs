//! Belief models: a state space with one monotone operator per player, and
//! the mutual and common belief operators derived from them.

use crate::error::{Error, Result};
use crate::operator::BeliefOperator;
use crate::space::{Event, StateSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct BeliefModel {
    space: StateSpace,
    operators: Vec<BeliefOperator>,
}

impl BeliefModel {
    pub fn new(space: StateSpace, operators: Vec<BeliefOperator>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::NoPlayers);
        }
        for (i, op) in operators.iter().enumerate() {
            if op.state_count() != space.len() {
                return Err(Error::SpaceMismatch {
                    expected: space.len(),
                    got: op.state_count(),
                });
            }
            if operators[..i].iter().any(|o| o.owner() == op.owner()) {
                return Err(Error::DuplicatePlayer(op.owner().to_string()));
            }
        }
        Ok(BeliefModel { space, operators })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn operators(&self) -> &[BeliefOperator] {
        &self.operators
    }

    pub fn player_count(&self) -> usize {
        self.operators.len()
    }

    pub fn players(&self) -> impl Iterator<Item = &str> {
        self.operators.iter().map(|o| o.owner())
    }

    pub fn player_index(&self, name: &str) -> Result<usize> {
        self.operators
            .iter()
            .position(|o| o.owner() == name)
            .ok_or_else(|| Error::UnknownPlayer(name.to_string()))
    }

    pub fn operator(&self, player: usize) -> Result<&BeliefOperator> {
        self.operators.get(player).ok_or(Error::PlayerOutOfRange(player))
    }

    /// `B_I(E) = ⋂_i B_i(E)`.
    #[inline]
    pub fn mutual_belief(&self, e: Event) -> Event {
        self.operators
            .iter()
            .fold(self.space.full(), |acc, op| acc & op.apply(e))
    }

    /// Union of all publicly evident events contained in `B_I(E)`.
    ///
    /// This is the greatest fixed point of `H(X) = B_I(E) ∩ B_I(X)`.
    /// Any publicly evident `F ⊆ B_I(E)` satisfies `F ⊆ H(F)`, so it lies
    /// below the greatest fixed point; conversely the fixed point `G = H(G)`
    /// is itself publicly evident (`G ⊆ B_I(G)`) and inside `B_I(E)`. `H` is
    /// monotone, so iterating from `Ω` yields a decreasing chain that reaches
    /// the fixed point after at most `n + 1` steps.
    pub fn common_belief(&self, e: Event) -> Event {
        let mutual = self.mutual_belief(e);
        let mut x = self.space.full();
        loop {
            let next = mutual & self.mutual_belief(x);
            if next == x {
                return x;
            }
            x = next;
        }
    }

    /// `⋂_{k=1..depth} B_I^k(E)`, the iterated mutual belief.
    pub fn common_belief_iterated(&self, e: Event, depth: usize) -> Event {
        assert!(depth >= 1, "depth must be positive");
        let mut level = e;
        let mut acc = self.space.full();
        for _ in 0..depth {
            level = self.mutual_belief(level);
            acc = acc & level;
        }
        acc
    }

    pub fn is_publicly_evident(&self, e: Event) -> bool {
        e.is_subset(self.mutual_belief(e))
    }

    /// `C(E)` for every event, indexed by event bits.
    pub fn common_belief_table(&self) -> Vec<Event> {
        self.space.events().map(|e| self.common_belief(e)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::PossibilityCorrespondence;

    fn three_state_model() -> BeliefModel {
        let sp = StateSpace::with_size(3).unwrap();
        let b = PossibilityCorrespondence::new(&sp, vec![Event::singleton(0), Event::singleton(1), sp.full()]).unwrap();
        let ops = ["1", "2"]
            .iter()
            .map(|p| BeliefOperator::from_correspondence(&sp, *p, &b).unwrap())
            .collect();
        BeliefModel::new(sp, ops).unwrap()
    }

    #[test]
    fn three_state_common_belief_is_individual_belief() {
        let m = three_state_model();
        let e = Event::from_states([0, 1]);
        assert_eq!(m.mutual_belief(e), e);
        assert_eq!(m.common_belief(e), e);
        assert_eq!(m.common_belief_iterated(e, 3), e);
        let op = &m.operators()[0];
        for e in m.space().events() {
            assert_eq!(m.common_belief(e), op.apply(e));
        }
    }

    #[test]
    fn disjoint_beliefs_have_empty_mutual_belief() {
        let sp = StateSpace::with_size(2).unwrap();
        let b1 = PossibilityCorrespondence::new(&sp, vec![Event::singleton(0), sp.full()]).unwrap();
        let b2 = PossibilityCorrespondence::new(&sp, vec![sp.full(), Event::singleton(1)]).unwrap();
        let m = BeliefModel::new(
            sp.clone(),
            vec![
                BeliefOperator::from_correspondence(&sp, "1", &b1).unwrap(),
                BeliefOperator::from_correspondence(&sp, "2", &b2).unwrap(),
            ],
        )
        .unwrap();
        let w1 = Event::singleton(0);
        assert_eq!(m.operators()[0].apply(w1), w1);
        assert_eq!(m.operators()[1].apply(w1), Event::EMPTY);
        assert_eq!(m.mutual_belief(w1), Event::EMPTY);
        assert_eq!(m.common_belief(sp.full()), sp.full());
    }

    #[test]
    fn model_validation() {
        let sp = StateSpace::with_size(2).unwrap();
        assert_eq!(BeliefModel::new(sp.clone(), vec![]).unwrap_err(), Error::NoPlayers);
        let op = BeliefOperator::identity(&sp, "1");
        assert!(matches!(
            BeliefModel::new(sp.clone(), vec![op.clone(), op.clone()]),
            Err(Error::DuplicatePlayer(_))
        ));
        let other = BeliefOperator::identity(&StateSpace::with_size(3).unwrap(), "2");
        assert!(matches!(
            BeliefModel::new(sp, vec![op, other]),
            Err(Error::SpaceMismatch { .. })
        ));
    }
}
