//! Qualitative types and type mappings.
//!
//! A qualitative type is a binary set function on events: which events are
//! believed. The type mapping of an operator sends each state to the type
//! realised there. Only realised types are ever materialised; the full type
//! space has `2^(2^n)` elements and is never needed, because certainty only
//! looks at preimages of observations and those depend on realised values.


use crate::axioms::{Axiom, AxiomReport, Property, Witness};
use crate::error::{Error, Result};
use crate::model::BeliefModel;
use crate::operator::BeliefOperator;
use crate::signal::{certainty_under, CertaintyReport, Signal, ValueSet};
use crate::space::{Event, StateSpace, MAX_TABLE_STATES};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QualitativeType {
    n: usize,
    bits: Vec<u64>,
}

impl QualitativeType {
    pub fn from_fn(n: usize, f: impl Fn(Event) -> bool) -> Self {
        let count = 1usize << n;
        let mut bits = vec![0u64; count.div_ceil(64)];
        for e in 0..count {
            if f(Event::from_bits(e as u32)) {
                bits[e / 64] |= 1 << (e % 64);
            }
        }
        QualitativeType { n, bits }
    }

    #[inline]
    pub fn believes(&self, e: Event) -> bool {
        let i = e.bits() as usize;
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Pointwise `self(·) ≤ other(·)`.
    pub fn le(&self, other: &QualitativeType) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn believed_events(&self) -> impl Iterator<Item = Event> + '_ {
        (0..1u32 << self.n).map(Event::from_bits).filter(|&e| self.believes(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QualitativeTypeMapping {
    space: StateSpace,
    owner: String,
    types: Vec<QualitativeType>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Beta,
    NegBeta,
    BetaAndNeg,
    SigmaAtoms,
    Upward,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Beta => "beta",
            FamilyKind::NegBeta => "negBeta",
            FamilyKind::BetaAndNeg => "betaAndNeg",
            FamilyKind::SigmaAtoms => "sigmaAtoms",
            FamilyKind::Upward => "upward",
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "beta" => Ok(FamilyKind::Beta),
            "negbeta" => Ok(FamilyKind::NegBeta),
            "betaandneg" => Ok(FamilyKind::BetaAndNeg),
            "sigmaatoms" | "sigma" | "atoms" => Ok(FamilyKind::SigmaAtoms),
            "upward" => Ok(FamilyKind::Upward),
            _ => Err(Error::Input(format!("unknown observation family `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberLabel {
    /// `β_E`
    Beta(Event),
    /// `¬β_E`
    NegBeta(Event),
    /// The singleton of a realised type (index into the realised list).
    Atom(usize),
    /// `{μ : μ ≥ t(ω)}` for the given state.
    Upward(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub label: MemberLabel,
    /// Members restricted to realised types, one bit per realised type.
    pub types: ValueSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeObservationFamily {
    pub kind: FamilyKind,
    pub realized: Vec<QualitativeType>,
    /// Realised-type index at each state.
    pub assignment: Vec<usize>,
    pub members: Vec<FamilyMember>,
}

impl TypeObservationFamily {
    /// The type mapping as a signal into realised types, observed through this family.
    pub fn to_signal(&self) -> Signal {
        let codomain = (0..self.realized.len()).map(|i| format!("t{}", i + 1)).collect();
        Signal::from_parts(
            codomain,
            self.assignment.clone(),
            self.members.iter().map(|m| m.types).collect(),
        )
    }
}

impl QualitativeTypeMapping {
    /// `t(ω)(E) = 1 ⇔ ω ∈ B(E)`.
    pub fn of(space: &StateSpace, op: &BeliefOperator) -> Result<Self> {
        let n = space.len();
        if n > MAX_TABLE_STATES {
            return Err(Error::TableTooLarge(n));
        }
        if op.state_count() != n {
            return Err(Error::SpaceMismatch {
                expected: n,
                got: op.state_count(),
            });
        }
        let table = op.table()?;
        let types = (0..n)
            .map(|s| QualitativeType::from_fn(n, |e| table[e.bits() as usize].contains(s)))
            .collect();
        Ok(QualitativeTypeMapping {
            space: space.clone(),
            owner: op.owner().to_string(),
            types,
        })
    }

    /// A mapping given directly by its types (no operator required).
    pub fn from_types(space: &StateSpace, owner: impl Into<String>, types: Vec<QualitativeType>) -> Result<Self> {
        let n = space.len();
        if types.len() != n || types.iter().any(|t| t.n != n) {
            return Err(Error::Input("type mapping does not match the state space".into()));
        }
        Ok(QualitativeTypeMapping {
            space: space.clone(),
            owner: owner.into(),
            types,
        })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn owner(&self) -> &str {
        &self.owner
    }

    pub fn type_at(&self, state: usize) -> &QualitativeType {
        &self.types[state]
    }

    pub fn types(&self) -> &[QualitativeType] {
        &self.types
    }

    /// `t⁻¹(β_E) = {ω : t(ω)(E) = 1}`
    pub fn believers(&self, e: Event) -> Event {
        Event::from_states((0..self.types.len()).filter(|&s| self.types[s].believes(e)))
    }

    /// `B(E) = t⁻¹(β_E)`; rejected if the induced operator is not monotone.
    pub fn operator_of(&self) -> Result<BeliefOperator> {
        let table = self.space.events().map(|e| self.believers(e)).collect();
        BeliefOperator::from_table(&self.space, self.owner.clone(), table)
    }

    /// Distinct realised types in order of first appearance, and the
    /// realised-type index at each state.
    pub fn realized(&self) -> (Vec<QualitativeType>, Vec<usize>) {
        let mut realized: Vec<QualitativeType> = Vec::new();
        let mut assignment = Vec::with_capacity(self.types.len());
        for t in &self.types {
            let idx = match realized.iter().position(|r| r == t) {
                Some(i) => i,
                None => {
                    realized.push(t.clone());
                    realized.len() - 1
                }
            };
            assignment.push(idx);
        }
        (realized, assignment)
    }

    pub fn observation_family(&self, kind: FamilyKind) -> TypeObservationFamily {
        let (realized, assignment) = self.realized();
        let k = realized.len();
        let all: ValueSet = (1u64 << k) - 1;
        let beta = |e: Event| {
            realized
                .iter()
                .enumerate()
                .filter(|(_, t)| t.believes(e))
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        };
        let mut members = Vec::new();
        if matches!(kind, FamilyKind::Beta | FamilyKind::BetaAndNeg) {
            members.extend(self.space.events().map(|e| FamilyMember {
                label: MemberLabel::Beta(e),
                types: beta(e),
            }));
        }
        if matches!(kind, FamilyKind::NegBeta | FamilyKind::BetaAndNeg) {
            members.extend(self.space.events().map(|e| FamilyMember {
                label: MemberLabel::NegBeta(e),
                types: all & !beta(e),
            }));
        }
        if kind == FamilyKind::SigmaAtoms {
            // Realised types are pairwise distinct functions, so some β_E
            // separates any two of them: every atom is a singleton.
            members.extend((0..k).map(|i| FamilyMember {
                label: MemberLabel::Atom(i),
                types: 1 << i,
            }));
        }
        if kind == FamilyKind::Upward {
            members.extend((0..self.types.len()).map(|s| {
                let own = &realized[assignment[s]];
                FamilyMember {
                    label: MemberLabel::Upward(s),
                    types: realized
                        .iter()
                        .enumerate()
                        .filter(|(_, mu)| own.le(mu))
                        .fold(0u64, |acc, (i, _)| acc | 1 << i),
                }
            }));
        }
        TypeObservationFamily {
            kind,
            realized,
            assignment,
            members,
        }
    }

    pub fn as_signal(&self, kind: FamilyKind) -> Signal {
        self.observation_family(kind).to_signal()
    }
}

/// Decides an axiom in its type form, directly from the realised types.
pub fn check_type_axiom(t: &QualitativeTypeMapping, axiom: Axiom) -> AxiomReport {
    let n = t.space.len();
    let full = t.space.full();
    let states = 0..n;
    let mu = |s: usize, e: Event| t.types[s].believes(e);
    let events = || t.space.events();
    let witness = |e: Vec<Event>, s: usize| Some(Witness { events: e, states: vec![s] });

    // b_t(ω) = ⋂ {E : t(ω)(E) = 1}
    let possible = |s: usize| t.types[s].believed_events().fold(full, |acc, e| acc & e);

    let w = match axiom {
        Axiom::Monotonicity => events().find_map(|e| {
            (full - e).subsets().find_map(|extra| {
                let f = e | extra;
                states.clone().find(|&s| mu(s, e) && !mu(s, f)).and_then(|s| witness(vec![e, f], s))
            })
        }),
        Axiom::Necessitation => states.clone().find(|&s| !mu(s, full)).and_then(|s| witness(vec![full], s)),
        Axiom::FiniteConjunction => {
            // same principal-filter criterion as the operator form; pairs only for the witness
            let fails = states.clone().any(|s| mu(s, full) && !mu(s, possible(s)));
            if !fails {
                None
            } else {
                events().find_map(|e| {
                    events().filter(|f| f.bits() >= e.bits()).find_map(|f| {
                        states
                            .clone()
                            .find(|&s| mu(s, e) && mu(s, f) && !mu(s, e & f))
                            .and_then(|s| witness(vec![e, f], s))
                    })
                })
            }
        }
        Axiom::CountableConjunction => states
            .clone()
            .find(|&s| mu(s, full) && !mu(s, possible(s)))
            .and_then(|s| witness(vec![possible(s)], s)),
        Axiom::Kripke => events().find_map(|e| {
            states
                .clone()
                .find(|&s| mu(s, e) != possible(s).is_subset(e))
                .and_then(|s| witness(vec![e], s))
        }),
        Axiom::Consistency => events().find_map(|e| {
            states
                .clone()
                .find(|&s| mu(s, e) && mu(s, full - e))
                .and_then(|s| witness(vec![e], s))
        }),
        Axiom::TruthAxiom => events().find_map(|e| {
            states
                .clone()
                .find(|&s| mu(s, e) && !e.contains(s))
                .and_then(|s| witness(vec![e], s))
        }),
        Axiom::PositiveIntrospection => events().find_map(|e| {
            let believers = t.believers(e);
            states
                .clone()
                .find(|&s| mu(s, e) && !mu(s, believers))
                .and_then(|s| witness(vec![e], s))
        }),
        Axiom::NegativeIntrospection => events().find_map(|e| {
            let non_believers = full - t.believers(e);
            states
                .clone()
                .find(|&s| !mu(s, e) && !mu(s, non_believers))
                .and_then(|s| witness(vec![e], s))
        }),
    };
    AxiomReport::from_witness(Property::Axiom(axiom), w)
}

/// Is `observer` certain of `subject`'s type mapping with respect to `kind`?
pub fn certain_of_type_mapping(
    model: &BeliefModel,
    observer: usize,
    subject: usize,
    kind: FamilyKind,
) -> Result<CertaintyReport> {
    let t = QualitativeTypeMapping::of(model.space(), model.operator(subject)?)?;
    let op = model.operator(observer)?;
    Ok(certainty_under(|e| op.apply(e), &t.as_signal(kind)))
}

/// `E` and state where an inclusion `lhs(E) ⊆ rhs(E)` fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EventWitness {
    pub event: Event,
    pub state: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairIntrospection {
    pub observer: usize,
    pub subject: usize,
    /// Failure of `B_j(·) ⊆ B_i B_j(·)`.
    pub positive: Option<EventWitness>,
    /// Failure of `¬B_j(·) ⊆ B_i ¬B_j(·)`.
    pub negative: Option<EventWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonIntrospection {
    pub player: usize,
    /// Failure of `B_i(·) ⊆ C B_i(·)`.
    pub positive: Option<EventWitness>,
    /// Failure of `¬B_i(·) ⊆ C ¬B_i(·)`.
    pub negative: Option<EventWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaCertaintyReport {
    /// `(subject, state)` pairs where common certainty of the subject's type fails.
    pub common_certainty_failures: Vec<(usize, usize)>,
    pub pairs: Vec<PairIntrospection>,
    pub common_introspection: Vec<CommonIntrospection>,
    /// `(i, j, E)` with `B_i(E) ≠ B_j(E)`, if any.
    pub operators_differ: Option<(usize, usize, Event)>,
    /// Event with `C(E) ≠ B_I(E)`, if any.
    pub common_differs_from_mutual: Option<Event>,
    /// Per player, an event with `B_i(E) ≠ C(E)`, if any.
    pub player_differs_from_common: Vec<Option<Event>>,
}

impl MetaCertaintyReport {
    pub fn commonly_certain(&self) -> bool {
        self.common_certainty_failures.is_empty()
    }

    pub fn operators_equal(&self) -> bool {
        self.operators_differ.is_none()
    }

    pub fn common_equals_mutual(&self) -> bool {
        self.common_differs_from_mutual.is_none()
    }

    pub fn player_equals_common(&self, player: usize) -> bool {
        self.player_differs_from_common[player].is_none()
    }

    pub fn pair(&self, observer: usize, subject: usize) -> &PairIntrospection {
        self.pairs
            .iter()
            .find(|p| p.observer == observer && p.subject == subject)
            .expect("every ordered pair is reported")
    }
}

fn inclusion_failure(
    space: &StateSpace,
    lhs: impl Fn(Event) -> Event,
    rhs: impl Fn(Event) -> Event,
) -> Option<EventWitness> {
    space.events().find_map(|e| {
        (lhs(e) - rhs(e))
            .first()
            .map(|state| EventWitness { event: e, state })
    })
}

/// Common certainty of the profile of type mappings and the introspection
/// conditions that characterise it.
pub fn meta_certainty_report(model: &BeliefModel) -> Result<MetaCertaintyReport> {
    let space = model.space();
    let ops = model.operators();
    let common = model.common_belief_table();
    let c = |e: Event| common[e.bits() as usize];

    let mut common_certainty_failures = Vec::new();
    for (j, op) in ops.iter().enumerate() {
        let t = QualitativeTypeMapping::of(space, op)?;
        let report = certainty_under(c, &t.as_signal(FamilyKind::SigmaAtoms));
        let mut states: Vec<usize> = report.failures.iter().map(|f| f.state).collect();
        states.dedup();
        common_certainty_failures.extend(states.into_iter().map(|s| (j, s)));
    }

    let mut pairs = Vec::new();
    for (i, bi) in ops.iter().enumerate() {
        for (j, bj) in ops.iter().enumerate() {
            pairs.push(PairIntrospection {
                observer: i,
                subject: j,
                positive: inclusion_failure(space, |e| bj.apply(e), |e| bi.apply(bj.apply(e))),
                negative: inclusion_failure(space, |e| bj.disbelief(e), |e| bi.apply(bj.disbelief(e))),
            });
        }
    }

    let common_introspection = ops
        .iter()
        .enumerate()
        .map(|(i, bi)| CommonIntrospection {
            player: i,
            positive: inclusion_failure(space, |e| bi.apply(e), |e| model.common_belief(bi.apply(e))),
            negative: inclusion_failure(space, |e| bi.disbelief(e), |e| model.common_belief(bi.disbelief(e))),
        })
        .collect();

    let mut operators_differ = None;
    'outer: for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if let Some(e) = space.events().find(|&e| ops[i].apply(e) != ops[j].apply(e)) {
                operators_differ = Some((i, j, e));
                break 'outer;
            }
        }
    }

    Ok(MetaCertaintyReport {
        common_certainty_failures,
        pairs,
        common_introspection,
        operators_differ,
        common_differs_from_mutual: space.events().find(|&e| c(e) != model.mutual_belief(e)),
        player_differs_from_common: ops
            .iter()
            .map(|op| space.events().find(|&e| op.apply(e) != c(e)))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::check_axiom;

    fn three_state_op() -> (StateSpace, BeliefOperator) {
        let sp = StateSpace::with_size(3).unwrap();
        let table = sp
            .events()
            .map(|e| if e == sp.full() { e } else { e.without(2) })
            .collect();
        let op = BeliefOperator::from_table(&sp, "1", table).unwrap();
        (sp, op)
    }

    fn model_of(sp: &StateSpace, op: &BeliefOperator, players: &[&str]) -> BeliefModel {
        BeliefModel::new(sp.clone(), players.iter().map(|p| op.clone().with_owner(*p)).collect()).unwrap()
    }

    #[test]
    fn type_at_w3_believes_only_omega() {
        let (sp, op) = three_state_op();
        let t = QualitativeTypeMapping::of(&sp, &op).unwrap();
        for e in sp.events() {
            assert_eq!(t.type_at(2).believes(e), e == sp.full());
        }
        assert_eq!(t.operator_of().unwrap(), op);
    }

    #[test]
    fn identity_types_believe_true_events() {
        let sp = StateSpace::with_size(3).unwrap();
        let t = QualitativeTypeMapping::of(&sp, &BeliefOperator::identity(&sp, "1")).unwrap();
        for s in 0..3 {
            for e in sp.events() {
                assert_eq!(t.type_at(s).believes(e), e.contains(s));
            }
        }
    }

    #[test]
    fn operator_of_constant_and_non_necessitating_types() {
        let sp = StateSpace::with_size(2).unwrap();
        let top = QualitativeType::from_fn(2, |_| true);
        let t = QualitativeTypeMapping::from_types(&sp, "1", vec![top.clone(), top]).unwrap();
        let op = t.operator_of().unwrap();
        assert!(sp.events().all(|e| op.apply(e) == sp.full()));

        let nothing = QualitativeType::from_fn(2, |_| false);
        let id1 = QualitativeType::from_fn(2, |e| e.contains(1));
        let t = QualitativeTypeMapping::from_types(&sp, "1", vec![nothing, id1]).unwrap();
        let op = t.operator_of().unwrap();
        assert!(!check_axiom(&op, Axiom::Necessitation).holds);

        let bad = QualitativeType::from_fn(2, |e| e == Event::singleton(0));
        let t = QualitativeTypeMapping::from_types(&sp, "1", vec![bad.clone(), bad]).unwrap();
        assert!(matches!(t.operator_of(), Err(Error::NonMonotone { .. })));
    }

    #[test]
    fn type_axioms_match_operator_axioms_on_three_state_operator() {
        let (sp, op) = three_state_op();
        let t = QualitativeTypeMapping::of(&sp, &op).unwrap();
        for ax in Axiom::ALL {
            assert_eq!(check_type_axiom(&t, ax), check_axiom(&op, ax), "{ax}");
        }
        let ni = check_type_axiom(&t, Axiom::NegativeIntrospection);
        assert_eq!(ni.witness.unwrap().states, vec![2]);
    }

    #[test]
    fn families_of_three_state_operator() {
        let (sp, op) = three_state_op();
        let t = QualitativeTypeMapping::of(&sp, &op).unwrap();
        let atoms = t.observation_family(FamilyKind::SigmaAtoms);
        assert_eq!(atoms.realized.len(), 3);
        assert_eq!(atoms.members.iter().map(|m| m.types).collect::<Vec<_>>(), vec![1, 2, 4]);
        let up = t.observation_family(FamilyKind::Upward);
        assert_eq!(up.members[2].types, 0b111);
        assert_eq!(up.members[0].types, 0b001);
        assert_eq!(t.observation_family(FamilyKind::Beta).members.len(), 8);
        assert_eq!(t.observation_family(FamilyKind::BetaAndNeg).members.len(), 16);
    }

    #[test]
    fn one_state_beta_family_has_two_members() {
        let sp = StateSpace::with_size(1).unwrap();
        let t = QualitativeTypeMapping::of(&sp, &BeliefOperator::identity(&sp, "1")).unwrap();
        let fam = t.observation_family(FamilyKind::Beta);
        assert_eq!(fam.members.len(), 2);
        assert_eq!(fam.members[0].label, MemberLabel::Beta(Event::EMPTY));
    }

    #[test]
    fn certainty_of_own_type_on_three_state_model() {
        let (sp, op) = three_state_op();
        let m = model_of(&sp, &op, &["1", "2"]);
        assert!(certain_of_type_mapping(&m, 0, 0, FamilyKind::Beta).unwrap().holds);
        assert!(!certain_of_type_mapping(&m, 0, 0, FamilyKind::NegBeta).unwrap().holds);
        assert!(!certain_of_type_mapping(&m, 0, 0, FamilyKind::SigmaAtoms).unwrap().holds);

        let id = model_of(&sp, &BeliefOperator::identity(&sp, "x"), &["1", "2"]);
        assert!(certain_of_type_mapping(&id, 0, 1, FamilyKind::SigmaAtoms).unwrap().holds);
    }

    #[test]
    fn meta_report_three_state_and_identity() {
        let (sp, op) = three_state_op();
        let r = meta_certainty_report(&model_of(&sp, &op, &["1", "2"])).unwrap();
        assert!(!r.commonly_certain());
        assert!(r.common_equals_mutual());
        assert!(r.operators_equal());
        assert!(r.pair(0, 1).positive.is_none());
        assert!(r.pair(0, 1).negative.is_some());

        let r = meta_certainty_report(&model_of(&sp, &BeliefOperator::identity(&sp, "x"), &["1", "2"])).unwrap();
        assert!(r.commonly_certain());
        assert!(r.operators_equal() && r.player_equals_common(0) && r.player_equals_common(1));
    }
}
