//! Belief operators and possibility correspondences.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::space::{full_event, Event, StateSpace, MAX_STATES, MAX_TABLE_STATES};

/// The set of states a player considers possible at each state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PossibilityCorrespondence {
    possible: Vec<Event>,
}

impl PossibilityCorrespondence {
    pub fn new(space: &StateSpace, possible: Vec<Event>) -> Result<Self> {
        if possible.len() != space.len() {
            return Err(Error::CorrespondenceSize {
                expected: space.len(),
                got: possible.len(),
            });
        }
        for &p in &possible {
            space.check_event(p)?;
        }
        Ok(PossibilityCorrespondence { possible })
    }

    pub(crate) fn new_unchecked(possible: Vec<Event>) -> Self {
        PossibilityCorrespondence { possible }
    }

    pub fn len(&self) -> usize {
        self.possible.len()
    }

    pub fn is_empty(&self) -> bool {
        self.possible.is_empty()
    }

    #[inline]
    pub fn at(&self, state: usize) -> Event {
        self.possible[state]
    }

    pub fn as_slice(&self) -> &[Event] {
        &self.possible
    }

    /// `{ω : b(ω) ⊆ e}`
    #[inline]
    pub fn believed(&self, e: Event) -> Event {
        let mut out = 0u32;
        for (s, &p) in self.possible.iter().enumerate() {
            if p.is_subset(e) {
                out |= 1 << s;
            }
        }
        Event::from_bits(out)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Table(Vec<Event>),
    Kripke {
        table: Option<Vec<Event>>,
        correspondence: PossibilityCorrespondence,
    },
}

/// A monotone map from events to events, owned by one player.
///
/// Operators are stored as an explicit table over all `2^n` events. Operators
/// built from a possibility correspondence also keep the correspondence, and
/// above [`MAX_TABLE_STATES`] states they keep only the correspondence.
#[derive(Clone, Debug)]
pub struct BeliefOperator {
    owner: String,
    n: usize,
    repr: Repr,
}

impl PartialEq for BeliefOperator {
    /// Extensional equality: same owner-independent image for every event.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.events().all(|e| self.apply(e) == other.apply(e))
    }
}

impl BeliefOperator {
    /// Build an operator from an explicit table indexed by event bits.
    ///
    /// Monotonicity is enforced; the error names a violating covering pair.
    pub fn from_table(space: &StateSpace, owner: impl Into<String>, table: Vec<Event>) -> Result<Self> {
        let n = space.len();
        if n > MAX_TABLE_STATES {
            return Err(Error::TableTooLarge(n));
        }
        if table.len() != 1 << n {
            return Err(Error::TableSize {
                expected: 1 << n,
                got: table.len(),
            });
        }
        let full = space.full();
        if table.iter().any(|e| !e.is_subset(full)) {
            return Err(Error::EventOutOfRange);
        }
        if let Some((smaller, larger)) = first_monotonicity_violation(n, |e| table[e.bits() as usize]) {
            return Err(Error::NonMonotone {
                smaller: smaller.bits(),
                larger: larger.bits(),
            });
        }
        Ok(BeliefOperator {
            owner: owner.into(),
            n,
            repr: Repr::Table(table),
        })
    }

    /// `B(E) = {ω : b(ω) ⊆ E}`.
    pub fn from_correspondence(
        space: &StateSpace,
        owner: impl Into<String>,
        possible: &PossibilityCorrespondence,
    ) -> Result<Self> {
        if possible.len() != space.len() {
            return Err(Error::CorrespondenceSize {
                expected: space.len(),
                got: possible.len(),
            });
        }
        for &p in possible.as_slice() {
            space.check_event(p)?;
        }
        let n = space.len();
        if n > MAX_STATES {
            return Err(Error::TooManyStates(n));
        }
        let table = (n <= MAX_TABLE_STATES).then(|| {
            (0..1u32 << n)
                .map(|bits| possible.believed(Event::from_bits(bits)))
                .collect()
        });
        Ok(BeliefOperator {
            owner: owner.into(),
            n,
            repr: Repr::Kripke {
                table,
                correspondence: possible.clone(),
            },
        })
    }

    /// The pointwise-smallest monotone operator extending a partial table:
    /// `B(F) = ⋃ {core(E) : E ⊆ F}`.
    pub fn monotone_closure(
        space: &StateSpace,
        owner: impl Into<String>,
        core: &BTreeMap<Event, Event>,
    ) -> Result<Self> {
        let n = space.len();
        if n > MAX_TABLE_STATES {
            return Err(Error::TableTooLarge(n));
        }
        let full = space.full();
        let mut table = vec![Event::EMPTY; 1 << n];
        for (&e, &img) in core {
            if !e.is_subset(full) || !img.is_subset(full) {
                return Err(Error::EventOutOfRange);
            }
            table[e.bits() as usize] = table[e.bits() as usize] | img;
        }
        // superset OR-transform: afterwards table[F] = OR of core images below F
        for bit in 0..n {
            for f in 0..table.len() {
                if f >> bit & 1 == 1 {
                    let below = table[f & !(1 << bit)];
                    table[f] = table[f] | below;
                }
            }
        }
        Ok(BeliefOperator {
            owner: owner.into(),
            n,
            repr: Repr::Table(table),
        })
    }

    pub fn owner(&self) -> &str {
        &self.owner
    }

    pub fn with_owner(mut self, owner: impl Into<String>) -> Self {
        self.owner = owner.into();
        self
    }

    pub fn state_count(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> Event {
        full_event(self.n)
    }

    pub fn complement(&self, e: Event) -> Event {
        self.full() - e
    }

    pub fn events(&self) -> impl Iterator<Item = Event> {
        (0..1u32 << self.n).map(Event::from_bits)
    }

    #[inline]
    pub fn apply(&self, e: Event) -> Event {
        match &self.repr {
            Repr::Table(t) => t[e.bits() as usize],
            Repr::Kripke { table: Some(t), .. } => t[e.bits() as usize],
            Repr::Kripke { correspondence, .. } => correspondence.believed(e),
        }
    }

    /// `¬B(E)`: the event that the player does not believe `E`.
    pub fn disbelief(&self, e: Event) -> Event {
        self.complement(self.apply(e))
    }

    pub fn has_table(&self) -> bool {
        matches!(
            self.repr,
            Repr::Table(_) | Repr::Kripke { table: Some(_), .. }
        )
    }

    /// The retained correspondence, if the operator was built from one.
    pub fn kripke_source(&self) -> Option<&PossibilityCorrespondence> {
        match &self.repr {
            Repr::Kripke { correspondence, .. } => Some(correspondence),
            Repr::Table(_) => None,
        }
    }

    /// The explicit table, materialising it if necessary.
    pub fn table(&self) -> Result<Vec<Event>> {
        if self.n > MAX_TABLE_STATES {
            return Err(Error::TableTooLarge(self.n));
        }
        Ok(self.events().map(|e| self.apply(e)).collect())
    }

    /// `b(ω) = ⋂ {E : ω ∈ B(E)}`; the empty intersection is the whole space.
    pub fn derive_correspondence(&self) -> PossibilityCorrespondence {
        if let Some(c) = self.kripke_source() {
            return c.clone();
        }
        let mut possible = vec![self.full(); self.n];
        for e in self.events() {
            for s in self.apply(e).states() {
                possible[s] = possible[s] & e;
            }
        }
        PossibilityCorrespondence::new_unchecked(possible)
    }

    /// The identity operator `B(E) = E` (full, truthful knowledge).
    pub fn identity(space: &StateSpace, owner: impl Into<String>) -> Self {
        let possible = (0..space.len()).map(Event::singleton).collect();
        Self::from_correspondence(space, owner, &PossibilityCorrespondence::new_unchecked(possible))
            .expect("singleton correspondence is valid")
    }
}

/// Smallest covering pair `(E, E ∪ {s})` with `B(E) ⊄ B(E ∪ {s})`.
pub(crate) fn first_monotonicity_violation(
    n: usize,
    apply: impl Fn(Event) -> Event,
) -> Option<(Event, Event)> {
    for bits in 0..1u32 << n {
        let e = Event::from_bits(bits);
        let img = apply(e);
        for s in 0..n {
            if !e.contains(s) {
                let f = e.with(s);
                if !img.is_subset(apply(f)) {
                    return Some((e, f));
                }
            }
        }
    }
    None
}
