//! Signals: state-indexed functions whose observation family turns value
//! sets into events, and (common) certainty of a signal.

use serde::Serialize;

use crate::axioms::is_partition;
use crate::error::{Error, Result};
use crate::model::BeliefModel;
use crate::operator::BeliefOperator;
use crate::space::{Event, StateSpace};

/// A set of codomain values, one bit per value index.
pub type ValueSet = u64;

pub const MAX_CODOMAIN: usize = 64;

/// Observation-family constructors over a codomain of `k` values.
pub mod family {
    use super::ValueSet;

    fn all(k: usize) -> ValueSet {
        if k >= 64 {
            u64::MAX
        } else {
            (1u64 << k) - 1
        }
    }

    pub fn singletons(k: usize) -> Vec<ValueSet> {
        (0..k).map(|v| 1 << v).collect()
    }

    /// Every singleton and its complement.
    pub fn singletons_and_complements(k: usize) -> Vec<ValueSet> {
        let mut out = singletons(k);
        out.extend((0..k).map(|v| all(k) & !(1 << v)));
        out
    }

    /// All subsets of the codomain (only sensible for small `k`).
    pub fn powerset(k: usize) -> Vec<ValueSet> {
        assert!(k <= 20, "powerset family over {k} values is too large");
        (0..1u64 << k).collect()
    }

    /// Just the whole codomain.
    pub fn whole(k: usize) -> Vec<ValueSet> {
        vec![all(k)]
    }

    /// For each value `v`, the set `{u : le(v, u)}`.
    pub fn upward_closures(k: usize, le: impl Fn(usize, usize) -> bool) -> Vec<ValueSet> {
        (0..k)
            .map(|v| (0..k).filter(|&u| le(v, u)).fold(0, |acc, u| acc | 1 << u))
            .collect()
    }

    /// True if every member's complement is a union of members.
    pub fn complements_are_unions(k: usize, fam: &[ValueSet]) -> bool {
        fam.iter().all(|&f| {
            let comp = all(k) & !f;
            let covered = fam.iter().filter(|&&g| g & !comp == 0).fold(0, |acc, g| acc | g);
            covered == comp
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signal {
    codomain: Vec<String>,
    assignment: Vec<usize>,
    family: Vec<ValueSet>,
}

impl Signal {
    pub fn new(
        space: &StateSpace,
        codomain: Vec<String>,
        assignment: Vec<usize>,
        family: Vec<ValueSet>,
    ) -> Result<Self> {
        let k = codomain.len();
        if k == 0 {
            return Err(Error::InvalidSignal("codomain is empty".into()));
        }
        if k > MAX_CODOMAIN {
            return Err(Error::InvalidSignal(format!("codomain has {k} values, at most {MAX_CODOMAIN} supported")));
        }
        for (i, v) in codomain.iter().enumerate() {
            if codomain[..i].contains(v) {
                return Err(Error::InvalidSignal(format!("duplicate value `{v}`")));
            }
        }
        if assignment.len() != space.len() {
            return Err(Error::InvalidSignal(format!(
                "assignment covers {} states, space has {}",
                assignment.len(),
                space.len()
            )));
        }
        if let Some(&v) = assignment.iter().find(|&&v| v >= k) {
            return Err(Error::InvalidSignal(format!("value index {v} outside codomain")));
        }
        if family.is_empty() {
            return Err(Error::InvalidSignal("observation family is empty".into()));
        }
        let all = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        if family.iter().any(|f| f & !all != 0) {
            return Err(Error::InvalidSignal("observation is not a subset of the codomain".into()));
        }
        Ok(Signal {
            codomain,
            assignment,
            family,
        })
    }

    /// Convenience constructor from value names; the codomain is the set of
    /// distinct names in order of first appearance.
    pub fn from_values<S: AsRef<str>>(
        space: &StateSpace,
        values: &[S],
        make_family: impl FnOnce(usize) -> Vec<ValueSet>,
    ) -> Result<Self> {
        let mut codomain: Vec<String> = Vec::new();
        let mut assignment = Vec::with_capacity(values.len());
        for v in values {
            let v = v.as_ref();
            let idx = match codomain.iter().position(|c| c == v) {
                Some(i) => i,
                None => {
                    codomain.push(v.to_string());
                    codomain.len() - 1
                }
            };
            assignment.push(idx);
        }
        let fam = make_family(codomain.len());
        Self::new(space, codomain, assignment, fam)
    }

    /// A constant signal with observation family `{X}`.
    pub fn constant(space: &StateSpace, value: &str) -> Self {
        Signal {
            codomain: vec![value.to_string()],
            assignment: vec![0; space.len()],
            family: vec![1],
        }
    }

    /// Indicator of an event, observed through `{{0}, {1}}`.
    pub fn indicator(space: &StateSpace, e: Event) -> Self {
        Signal {
            codomain: vec!["0".into(), "1".into()],
            assignment: (0..space.len()).map(|s| usize::from(e.contains(s))).collect(),
            family: family::singletons(2),
        }
    }

    pub(crate) fn from_parts(codomain: Vec<String>, assignment: Vec<usize>, family: Vec<ValueSet>) -> Self {
        Signal {
            codomain,
            assignment,
            family,
        }
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn family(&self) -> &[ValueSet] {
        &self.family
    }

    pub fn value_at(&self, state: usize) -> usize {
        self.assignment[state]
    }

    pub fn state_count(&self) -> usize {
        self.assignment.len()
    }

    /// `x⁻¹(F)`
    pub fn preimage(&self, f: ValueSet) -> Event {
        Event::from_states(
            self.assignment
                .iter()
                .enumerate()
                .filter(|(_, &v)| f >> v & 1 == 1)
                .map(|(s, _)| s),
        )
    }

    /// `[x(ω)] = x⁻¹({x(ω)})`
    pub fn cell(&self, state: usize) -> Event {
        self.preimage(1 << self.assignment[state])
    }

    pub fn format_values(&self, f: ValueSet) -> String {
        let names: Vec<&str> = (0..self.codomain.len())
            .filter(|v| f >> v & 1 == 1)
            .map(|v| self.codomain[v].as_str())
            .collect();
        format!("{{{}}}", names.join(", "))
    }

    /// The profile signal `ω ↦ (x_1(ω), …, x_k(ω))`.
    ///
    /// The codomain is restricted to realised tuples (unrealised values have
    /// empty preimages and never enter a certainty condition), and the
    /// observation family consists of one-coordinate cylinders.
    pub fn product(xs: &[Signal]) -> Result<Self> {
        let n = xs
            .first()
            .map(Signal::state_count)
            .ok_or_else(|| Error::InvalidSignal("empty signal profile".into()))?;
        if xs.iter().any(|x| x.state_count() != n) {
            return Err(Error::InvalidSignal("profile signals disagree on the state space".into()));
        }
        let mut tuples: Vec<Vec<usize>> = Vec::new();
        let mut assignment = Vec::with_capacity(n);
        for s in 0..n {
            let t: Vec<usize> = xs.iter().map(|x| x.value_at(s)).collect();
            let idx = match tuples.iter().position(|u| *u == t) {
                Some(i) => i,
                None => {
                    tuples.push(t);
                    tuples.len() - 1
                }
            };
            assignment.push(idx);
        }
        let codomain = tuples
            .iter()
            .map(|t| {
                let parts: Vec<&str> = t.iter().zip(xs).map(|(&v, x)| x.codomain[v].as_str()).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let mut fam = Vec::new();
        for (c, x) in xs.iter().enumerate() {
            for &f in &x.family {
                let cyl = tuples
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| f >> t[c] & 1 == 1)
                    .fold(0u64, |acc, (i, _)| acc | 1 << i);
                fam.push(cyl);
            }
        }
        Ok(Signal {
            codomain,
            assignment,
            family: fam,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CertaintyFailure {
    pub state: usize,
    /// Index into the signal's observation family.
    pub observation: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertaintyReport {
    pub holds: bool,
    pub failures: Vec<CertaintyFailure>,
}

/// Certainty of `x` relative to an arbitrary belief map (an individual
/// operator or the common belief operator): every `x⁻¹(F)` must be
/// contained in its own image.
pub fn certainty_under(believe: impl Fn(Event) -> Event, x: &Signal) -> CertaintyReport {
    let mut failures = Vec::new();
    for (i, &f) in x.family.iter().enumerate() {
        let pre = x.preimage(f);
        for state in (pre - believe(pre)).states() {
            failures.push(CertaintyFailure { state, observation: i });
        }
    }
    failures.sort_by_key(|f| (f.state, f.observation));
    CertaintyReport {
        holds: failures.is_empty(),
        failures,
    }
}

/// Pointwise form: `ω ∈ B(x⁻¹(F))` for every observation `F ∋ x(ω)`.
pub fn value_certain_under(believe: impl Fn(Event) -> Event, x: &Signal, state: usize) -> bool {
    let v = x.value_at(state);
    x.family
        .iter()
        .filter(|&&f| f >> v & 1 == 1)
        .all(|&f| believe(x.preimage(f)).contains(state))
}

fn check_signal(model: &BeliefModel, x: &Signal) -> Result<()> {
    if x.state_count() != model.space().len() {
        return Err(Error::InvalidSignal(format!(
            "signal covers {} states, model has {}",
            x.state_count(),
            model.space().len()
        )));
    }
    Ok(())
}

pub fn operator_certain_of(op: &BeliefOperator, x: &Signal) -> CertaintyReport {
    certainty_under(|e| op.apply(e), x)
}

pub fn certain_of_value_at(model: &BeliefModel, player: usize, x: &Signal, state: usize) -> Result<bool> {
    check_signal(model, x)?;
    model.space().check_state(state)?;
    let op = model.operator(player)?;
    Ok(value_certain_under(|e| op.apply(e), x, state))
}

pub fn certain_of(model: &BeliefModel, player: usize, x: &Signal) -> Result<CertaintyReport> {
    check_signal(model, x)?;
    Ok(operator_certain_of(model.operator(player)?, x))
}

pub fn commonly_certain_of_value_at(model: &BeliefModel, x: &Signal, state: usize) -> Result<bool> {
    check_signal(model, x)?;
    model.space().check_state(state)?;
    Ok(value_certain_under(|e| model.common_belief(e), x, state))
}

pub fn commonly_certain_of(model: &BeliefModel, x: &Signal) -> Result<CertaintyReport> {
    check_signal(model, x)?;
    Ok(certainty_under(|e| model.common_belief(e), x))
}

/// Certainty of the profile signal built by [`Signal::product`].
pub fn certain_of_profile(model: &BeliefModel, player: usize, xs: &[Signal]) -> Result<bool> {
    for x in xs {
        check_signal(model, x)?;
    }
    let product = Signal::product(xs)?;
    Ok(certain_of(model, player, &product)?.holds)
}

/// For a partitional player: is `x` measurable with respect to the
/// partition, i.e. `b(ω) ⊆ [x(ω)]` everywhere?
pub fn partition_measurability_check(model: &BeliefModel, player: usize, x: &Signal) -> Result<bool> {
    check_signal(model, x)?;
    let op = model.operator(player)?;
    let b = op.derive_correspondence();
    if !is_partition(&b) {
        return Err(Error::NotPartitional(op.owner().to_string()));
    }
    Ok((0..x.state_count()).all(|s| b.at(s).is_subset(x.cell(s))))
}

/// The event `(B_j(E) ↔ F)`.
pub fn belief_equivalence_event(op_j: &BeliefOperator, e: Event, f: Event) -> Event {
    let bj = op_j.apply(e);
    (op_j.complement(bj) | f) & (op_j.complement(f) | bj)
}

/// Is player `i` certain that `B_j(E)` is the event `F`? Decided as
/// certainty of the indicator of `(B_j(E) ↔ F)`.
pub fn certain_that_belief_is(
    model: &BeliefModel,
    observer: usize,
    subject: usize,
    e: Event,
    f: Event,
) -> Result<CertaintyReport> {
    let ev = belief_equivalence_event(model.operator(subject)?, e, f);
    certain_of(model, observer, &Signal::indicator(model.space(), ev))
}
