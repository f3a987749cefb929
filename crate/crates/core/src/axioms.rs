//! Deciding belief axioms and frame properties by exhaustive quantification.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::operator::{first_monotonicity_violation, BeliefOperator, PossibilityCorrespondence};
use crate::space::Event;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    Monotonicity,
    Necessitation,
    FiniteConjunction,
    CountableConjunction,
    Kripke,
    Consistency,
    TruthAxiom,
    PositiveIntrospection,
    NegativeIntrospection,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::Monotonicity,
        Axiom::Necessitation,
        Axiom::FiniteConjunction,
        Axiom::CountableConjunction,
        Axiom::Kripke,
        Axiom::Consistency,
        Axiom::TruthAxiom,
        Axiom::PositiveIntrospection,
        Axiom::NegativeIntrospection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Monotonicity => "Monotonicity",
            Axiom::Necessitation => "Necessitation",
            Axiom::FiniteConjunction => "FiniteConjunction",
            Axiom::CountableConjunction => "CountableConjunction",
            Axiom::Kripke => "Kripke",
            Axiom::Consistency => "Consistency",
            Axiom::TruthAxiom => "TruthAxiom",
            Axiom::PositiveIntrospection => "PositiveIntrospection",
            Axiom::NegativeIntrospection => "NegativeIntrospection",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    /// Accepts the canonical names case-insensitively, plus kebab-case
    /// (`truth-axiom`) and the usual abbreviations (`PI`, `NI`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let key: String = s.chars().filter(|c| c.is_alphanumeric()).collect::<String>().to_lowercase();
        let ax = match key.as_str() {
            "monotonicity" | "mono" => Axiom::Monotonicity,
            "necessitation" | "nec" => Axiom::Necessitation,
            "finiteconjunction" | "fc" => Axiom::FiniteConjunction,
            "countableconjunction" | "cc" => Axiom::CountableConjunction,
            "kripke" | "kripkeproperty" => Axiom::Kripke,
            "consistency" | "d" => Axiom::Consistency,
            "truthaxiom" | "truth" | "t" => Axiom::TruthAxiom,
            "positiveintrospection" | "pi" => Axiom::PositiveIntrospection,
            "negativeintrospection" | "ni" => Axiom::NegativeIntrospection,
            _ => return Err(Error::UnknownAxiom(s.to_string())),
        };
        Ok(ax)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FrameProperty {
    Serial,
    Reflexive,
    Transitive,
    Euclidean,
}

impl FrameProperty {
    pub const ALL: [FrameProperty; 4] = [
        FrameProperty::Serial,
        FrameProperty::Reflexive,
        FrameProperty::Transitive,
        FrameProperty::Euclidean,
    ];

    /// The operator axiom this frame property characterises under the Kripke property.
    pub fn matching_axiom(self) -> Axiom {
        match self {
            FrameProperty::Serial => Axiom::Consistency,
            FrameProperty::Reflexive => Axiom::TruthAxiom,
            FrameProperty::Transitive => Axiom::PositiveIntrospection,
            FrameProperty::Euclidean => Axiom::NegativeIntrospection,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameProperty::Serial => "serial",
            FrameProperty::Reflexive => "reflexive",
            FrameProperty::Transitive => "transitive",
            FrameProperty::Euclidean => "euclidean",
        }
    }
}

impl fmt::Display for FrameProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FrameProperty {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "serial" => Ok(FrameProperty::Serial),
            "reflexive" => Ok(FrameProperty::Reflexive),
            "transitive" => Ok(FrameProperty::Transitive),
            "euclidean" => Ok(FrameProperty::Euclidean),
            _ => Err(Error::UnknownFrameProperty(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    Axiom(Axiom),
    Frame(FrameProperty),
    CompatibleWithInformativeness,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Axiom(a) => a.fmt(f),
            Property::Frame(p) => p.fmt(f),
            Property::CompatibleWithInformativeness => f.write_str("CompatibleWithInformativeness"),
        }
    }
}

/// Falsifying events and states, smallest first in enumeration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    pub events: Vec<Event>,
    pub states: Vec<usize>,
}

impl Witness {
    fn new(events: Vec<Event>, states: Vec<usize>) -> Self {
        Witness { events, states }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl AxiomReport {
    pub(crate) fn from_witness(property: Property, witness: Option<Witness>) -> Self {
        AxiomReport {
            property,
            holds: witness.is_none(),
            witness,
        }
    }
}

pub fn check_axiom(op: &BeliefOperator, axiom: Axiom) -> AxiomReport {
    AxiomReport::from_witness(Property::Axiom(axiom), axiom_witness(op, axiom))
}

pub fn holds(op: &BeliefOperator, axiom: Axiom) -> bool {
    axiom_witness(op, axiom).is_none()
}

fn first_state(e: Event) -> Vec<usize> {
    e.first().into_iter().collect()
}

fn axiom_witness(op: &BeliefOperator, axiom: Axiom) -> Option<Witness> {
    let n = op.state_count();
    let full = op.full();
    let find_event = |bad: &dyn Fn(Event) -> Event| {
        op.events().find_map(|e| {
            let failing = bad(e);
            (!failing.is_empty()).then(|| Witness::new(vec![e], first_state(failing)))
        })
    };
    match axiom {
        Axiom::Monotonicity => monotonicity_witness(n, |e| op.apply(e)),
        Axiom::Necessitation => {
            let failing = full - op.apply(full);
            (!failing.is_empty()).then(|| Witness::new(vec![full], first_state(failing)))
        }
        Axiom::FiniteConjunction => conjunction_witness(n, |e| op.apply(e), false),
        Axiom::CountableConjunction => conjunction_witness(n, |e| op.apply(e), true),
        Axiom::Kripke => {
            let b = op.derive_correspondence();
            find_event(&|e| {
                let img = op.apply(e);
                let kripke = b.believed(e);
                (img - kripke) | (kripke - img)
            })
        }
        Axiom::Consistency => find_event(&|e| op.apply(e) & op.apply(full - e)),
        Axiom::TruthAxiom => find_event(&|e| op.apply(e) - e),
        Axiom::PositiveIntrospection => find_event(&|e| {
            let img = op.apply(e);
            img - op.apply(img)
        }),
        Axiom::NegativeIntrospection => find_event(&|e| {
            let not_believed = full - op.apply(e);
            not_believed - op.apply(not_believed)
        }),
    }
}

/// Smallest pair `E ⊆ F` (lexicographic) with `B(E) ⊄ B(F)`.
fn monotonicity_witness(n: usize, apply: impl Fn(Event) -> Event) -> Option<Witness> {
    // a violation exists iff some covering pair violates; only then search all pairs
    first_monotonicity_violation(n, &apply)?;
    let full = crate::space::full_event(n);
    for bits in 0..1u32 << n {
        let e = Event::from_bits(bits);
        let img = apply(e);
        let rest = full - e;
        for extra in rest.subsets() {
            let f = e | extra;
            let failing = img - apply(f);
            if !failing.is_empty() {
                return Some(Witness::new(vec![e, f], first_state(failing)));
            }
        }
    }
    unreachable!("covering violation implies a pair violation")
}

/// Conjunction for a monotone operator on a finite algebra.
///
/// The events believed at `ω` form an up-set; it is closed under pairwise
/// (equivalently, arbitrary non-empty) intersections iff either it is empty
/// (`ω ∉ B(Ω)`) or it contains its own intersection `b(ω)`. That settles the
/// verdict in `O(n·2^n)`; the pair search below only runs to produce the
/// smallest witness once a failure is known.
///
/// For the countable (arbitrary-family) form the witness is the failing
/// state together with `b(ω)`, the intersection of everything believed there.
fn conjunction_witness(n: usize, apply: impl Fn(Event) -> Event, arbitrary: bool) -> Option<Witness> {
    let full = crate::space::full_event(n);
    let mut possible = vec![full; n];
    for bits in 0..1u32 << n {
        let e = Event::from_bits(bits);
        for s in apply(e).states() {
            possible[s] = possible[s] & e;
        }
    }
    let believes_something = apply(full);
    let failing: Vec<usize> = believes_something
        .states()
        .filter(|&s| !apply(possible[s]).contains(s))
        .collect();
    let &first = failing.first()?;
    if arbitrary {
        return Some(Witness::new(vec![possible[first]], vec![first]));
    }
    for eb in 0..1u32 << n {
        let e = Event::from_bits(eb);
        let be = apply(e);
        if be.is_empty() {
            continue;
        }
        for fb in eb..1u32 << n {
            let f = Event::from_bits(fb);
            let bad = (be & apply(f)) - apply(e & f);
            if !bad.is_empty() {
                return Some(Witness::new(vec![e, f], first_state(bad)));
            }
        }
    }
    unreachable!("non-principal belief filter has a failing pair")
}

/// Re-evaluates a reported witness directly from the axiom's definition.
pub fn witness_falsifies(op: &BeliefOperator, axiom: Axiom, w: &Witness) -> bool {
    let full = op.full();
    let b = |e| op.apply(e);
    match (axiom, w.events.as_slice(), w.states.as_slice()) {
        (Axiom::Monotonicity, [e, f], [s]) => e.is_subset(*f) && b(*e).contains(*s) && !b(*f).contains(*s),
        (Axiom::Necessitation, [e], [s]) => *e == full && !b(full).contains(*s),
        (Axiom::FiniteConjunction, [e, f], [s]) => (b(*e) & b(*f)).contains(*s) && !b(*e & *f).contains(*s),
        (Axiom::CountableConjunction, [e], [s]) => {
            // every event believed at s contains e, yet e itself is not believed
            b(full).contains(*s)
                && op.events().filter(|f| b(*f).contains(*s)).all(|f| e.is_subset(f))
                && !b(*e).contains(*s)
        }
        (Axiom::Kripke, [e], [s]) => {
            let corr = op.derive_correspondence();
            b(*e).contains(*s) != corr.believed(*e).contains(*s)
        }
        (Axiom::Consistency, [e], [s]) => (b(*e) & b(full - *e)).contains(*s),
        (Axiom::TruthAxiom, [e], [s]) => b(*e).contains(*s) && !e.contains(*s),
        (Axiom::PositiveIntrospection, [e], [s]) => b(*e).contains(*s) && !b(b(*e)).contains(*s),
        (Axiom::NegativeIntrospection, [e], [s]) => {
            let nb = full - b(*e);
            nb.contains(*s) && !b(nb).contains(*s)
        }
        _ => false,
    }
}

/// Decides a frame property of a correspondence by quantifying over states.
pub fn correspondence_property(b: &PossibilityCorrespondence, prop: FrameProperty) -> AxiomReport {
    let n = b.len();
    let witness = match prop {
        FrameProperty::Serial => (0..n).find(|&w| b.at(w).is_empty()).map(|w| Witness::new(vec![], vec![w])),
        FrameProperty::Reflexive => (0..n).find(|&w| !b.at(w).contains(w)).map(|w| Witness::new(vec![], vec![w])),
        FrameProperty::Transitive => (0..n).find_map(|w| {
            b.at(w)
                .states()
                .find(|&v| !b.at(v).is_subset(b.at(w)))
                .map(|v| Witness::new(vec![], vec![w, v]))
        }),
        FrameProperty::Euclidean => (0..n).find_map(|w| {
            b.at(w)
                .states()
                .find(|&v| !b.at(w).is_subset(b.at(v)))
                .map(|v| Witness::new(vec![], vec![w, v]))
        }),
    };
    AxiomReport::from_witness(Property::Frame(prop), witness)
}

pub fn is_partition(b: &PossibilityCorrespondence) -> bool {
    [FrameProperty::Reflexive, FrameProperty::Transitive, FrameProperty::Euclidean]
        .into_iter()
        .all(|p| correspondence_property(b, p).holds)
}

/// Outcome of checking an implication on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ImplicationStatus {
    Vacuous,
    Confirmed,
    Violated,
}

impl ImplicationStatus {
    pub fn of(premise: bool, conclusion: bool) -> Self {
        match (premise, conclusion) {
            (false, _) => ImplicationStatus::Vacuous,
            (true, true) => ImplicationStatus::Confirmed,
            (true, false) => ImplicationStatus::Violated,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ImplicationStatus::Vacuous => "vacuous",
            ImplicationStatus::Confirmed => "confirmed",
            ImplicationStatus::Violated => "VIOLATED",
        }
    }
}

impl fmt::Display for ImplicationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::StateSpace;
    use std::collections::BTreeMap;

    fn three_state_operator() -> BeliefOperator {
        let sp = StateSpace::with_size(3).unwrap();
        let table = sp
            .events()
            .map(|e| if e == sp.full() { e } else { e.without(2) })
            .collect();
        BeliefOperator::from_table(&sp, "1", table).unwrap()
    }

    #[test]
    fn three_state_operator_verdicts() {
        let op = three_state_operator();
        for ax in Axiom::ALL {
            let r = check_axiom(&op, ax);
            let expected = ax != Axiom::NegativeIntrospection;
            assert_eq!(r.holds, expected, "{ax}");
        }
        let ni = check_axiom(&op, Axiom::NegativeIntrospection);
        assert_eq!(
            ni.witness,
            Some(Witness {
                events: vec![Event::singleton(0)],
                states: vec![2]
            })
        );
        assert!(witness_falsifies(&op, Axiom::NegativeIntrospection, ni.witness.as_ref().unwrap()));
    }

    #[test]
    fn identity_satisfies_everything() {
        let sp = StateSpace::with_size(4).unwrap();
        let op = BeliefOperator::identity(&sp, "1");
        for ax in Axiom::ALL {
            assert!(check_axiom(&op, ax).holds, "{ax}");
        }
    }

    #[test]
    fn non_conjunctive_operator_witnesses() {
        // B(E) = {w1} iff E ⊇ {w1,w2} or E ⊇ {w1,w3}, else ∅
        let sp = StateSpace::with_size(3).unwrap();
        let w1 = Event::singleton(0);
        let core = BTreeMap::from([(Event::from_states([0, 1]), w1), (Event::from_states([0, 2]), w1)]);
        let op = BeliefOperator::monotone_closure(&sp, "1", &core).unwrap();
        let fc = check_axiom(&op, Axiom::FiniteConjunction);
        assert!(!fc.holds);
        let w = fc.witness.unwrap();
        assert_eq!(w.events, vec![Event::from_states([0, 1]), Event::from_states([0, 2])]);
        assert_eq!(w.states, vec![0]);
        assert!(witness_falsifies(&op, Axiom::FiniteConjunction, &w));

        let cc = check_axiom(&op, Axiom::CountableConjunction);
        assert_eq!(cc.witness.as_ref().unwrap().events, vec![w1]);
        assert!(witness_falsifies(&op, Axiom::CountableConjunction, cc.witness.as_ref().unwrap()));
        assert!(!check_axiom(&op, Axiom::Kripke).holds);
    }

    #[test]
    fn axiom_names_parse() {
        assert_eq!("TruthAxiom".parse::<Axiom>().unwrap(), Axiom::TruthAxiom);
        assert_eq!("negative-introspection".parse::<Axiom>().unwrap(), Axiom::NegativeIntrospection);
        assert_eq!("PI".parse::<Axiom>().unwrap(), Axiom::PositiveIntrospection);
        assert!(matches!("Foo".parse::<Axiom>(), Err(Error::UnknownAxiom(_))));
        assert!("sym".parse::<FrameProperty>().is_err());
    }

    #[test]
    fn frame_properties() {
        let sp = StateSpace::with_size(2).unwrap();
        let id = PossibilityCorrespondence::new(&sp, vec![Event::singleton(0), Event::singleton(1)]).unwrap();
        for p in FrameProperty::ALL {
            assert!(correspondence_property(&id, p).holds);
        }
        let b = PossibilityCorrespondence::new(&sp, vec![Event::singleton(1), Event::EMPTY]).unwrap();
        let r = correspondence_property(&b, FrameProperty::Serial);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().states, vec![1]);
    }
}
