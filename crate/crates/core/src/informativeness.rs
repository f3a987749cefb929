//! The informativeness order induced by a type mapping, and compatibility of
//! beliefs with it.

use crate::axioms::{holds, Axiom, AxiomReport, ImplicationStatus, Property, Witness};
use crate::error::Result;
use crate::model::BeliefModel;
use crate::operator::BeliefOperator;
use crate::signal::{certainty_under, CertaintyReport};
use crate::space::{Event, StateSpace};
use crate::types::{FamilyKind, QualitativeTypeMapping};

/// `↑t(ω) = {ω' : t(ω)(·) ≤ t(ω')(·)}`.
pub fn upward_set(t: &QualitativeTypeMapping, state: usize) -> Event {
    let own = t.type_at(state);
    Event::from_states((0..t.space().len()).filter(|&s| own.le(t.type_at(s))))
}

/// "At least as informative as", stored as the upward set of every state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InformativenessRelation {
    upward: Vec<Event>,
}

impl InformativenessRelation {
    pub fn of(t: &QualitativeTypeMapping) -> Self {
        InformativenessRelation {
            upward: (0..t.space().len()).map(|s| upward_set(t, s)).collect(),
        }
    }

    /// Is `a` at least as informative as `b`?
    pub fn at_least_as_informative(&self, a: usize, b: usize) -> bool {
        self.upward[b].contains(a)
    }

    pub fn upward(&self, state: usize) -> Event {
        self.upward[state]
    }

    pub fn is_preorder(&self) -> bool {
        let n = self.upward.len();
        let reflexive = (0..n).all(|s| self.upward[s].contains(s));
        // a ≥ b ≥ c ⇒ a ≥ c, i.e. ↑(b) ⊆ ↑(c) whenever b ∈ ↑(c)
        let transitive = (0..n).all(|c| self.upward[c].states().all(|b| self.upward[b].is_subset(self.upward[c])));
        reflexive && transitive
    }
}

/// Every believed event meets the upward set of the believing state.
/// The witness is the first `(E, ω)` in event order with `ω ∈ B(E)` and
/// `↑t(ω) ∩ E = ∅`.
pub fn compatible_with_informativeness(space: &StateSpace, op: &BeliefOperator) -> Result<AxiomReport> {
    let t = QualitativeTypeMapping::of(space, op)?;
    let rel = InformativenessRelation::of(&t);
    let w = space.events().find_map(|e| {
        op.apply(e)
            .states()
            .find(|&s| (rel.upward(s) & e).is_empty())
            .map(|s| Witness {
                events: vec![e],
                states: vec![s],
            })
    });
    Ok(AxiomReport::from_witness(Property::CompatibleWithInformativeness, w))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop5Verdict {
    /// Always true: every subset is an event here.
    pub upward_sets_are_events: bool,
    pub consistency_and_conjunction: bool,
    pub upward_certainty: CertaintyReport,
    pub conclusion: AxiomReport,
    pub status: ImplicationStatus,
}

pub fn check_prop5(model: &BeliefModel, player: usize) -> Result<Prop5Verdict> {
    let op = model.operator(player)?;
    let t = QualitativeTypeMapping::of(model.space(), op)?;
    let upward_certainty = certainty_under(|e| op.apply(e), &t.as_signal(FamilyKind::Upward));
    let consistency_and_conjunction = holds(op, Axiom::Consistency) && holds(op, Axiom::FiniteConjunction);
    let conclusion = compatible_with_informativeness(model.space(), op)?;
    let premise = consistency_and_conjunction && upward_certainty.holds;
    Ok(Prop5Verdict {
        upward_sets_are_events: true,
        consistency_and_conjunction,
        status: ImplicationStatus::of(premise, conclusion.holds),
        upward_certainty,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::PossibilityCorrespondence;

    fn three_state_op(sp: &StateSpace) -> BeliefOperator {
        let b = PossibilityCorrespondence::new(sp, vec![Event::singleton(0), Event::singleton(1), sp.full()]).unwrap();
        BeliefOperator::from_correspondence(sp, "1", &b).unwrap()
    }

    #[test]
    fn upward_sets_of_three_state_operator() {
        let sp = StateSpace::with_size(3).unwrap();
        let t = QualitativeTypeMapping::of(&sp, &three_state_op(&sp)).unwrap();
        assert_eq!(upward_set(&t, 2), sp.full());
        assert_eq!(upward_set(&t, 0), Event::singleton(0));
        assert_eq!(upward_set(&t, 1), Event::singleton(1));
        assert!(InformativenessRelation::of(&t).is_preorder());
    }

    #[test]
    fn identity_upward_sets_are_singletons() {
        let sp = StateSpace::with_size(3).unwrap();
        let t = QualitativeTypeMapping::of(&sp, &BeliefOperator::identity(&sp, "1")).unwrap();
        for s in 0..3 {
            assert_eq!(upward_set(&t, s), Event::singleton(s));
        }
    }

    #[test]
    fn compatibility_examples() {
        let sp = StateSpace::with_size(3).unwrap();
        assert!(compatible_with_informativeness(&sp, &BeliefOperator::identity(&sp, "1")).unwrap().holds);
        assert!(compatible_with_informativeness(&sp, &three_state_op(&sp)).unwrap().holds);

        let everything = BeliefOperator::from_table(&sp, "1", vec![sp.full(); 8]).unwrap();
        let r = compatible_with_informativeness(&sp, &everything).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().events, vec![Event::EMPTY]);
    }

    #[test]
    fn prop5_verdicts() {
        let sp = StateSpace::with_size(3).unwrap();
        let m = BeliefModel::new(sp.clone(), vec![BeliefOperator::identity(&sp, "1")]).unwrap();
        let v = check_prop5(&m, 0).unwrap();
        assert!(v.consistency_and_conjunction && v.upward_certainty.holds && v.conclusion.holds);
        assert_eq!(v.status, ImplicationStatus::Confirmed);

        let everything = BeliefOperator::from_table(&sp, "1", vec![sp.full(); 8]).unwrap();
        let m = BeliefModel::new(sp, vec![everything]).unwrap();
        assert_eq!(check_prop5(&m, 0).unwrap().status, ImplicationStatus::Vacuous);
    }
}
