//! Finite state spaces and events.
//!
//! The event algebra is always the full power set of the state space, so an
//! event is just a bitmask with one bit per state (bit `i` is state `i`).
//! Events are enumerated in increasing bitmask order; every "smallest
//! witness" in this crate refers to that order.

use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Largest state space for which explicit `2^n` event tables are built.
pub const MAX_TABLE_STATES: usize = 16;
/// Largest state space representable at all (correspondence-only operators).
pub const MAX_STATES: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Event(u32);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub const fn from_bits(bits: u32) -> Self {
        Event(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn singleton(state: usize) -> Self {
        Event(1 << state)
    }

    pub fn from_states<I: IntoIterator<Item = usize>>(states: I) -> Self {
        states.into_iter().fold(Event::EMPTY, |e, s| e | Event::singleton(s))
    }

    #[inline]
    pub fn contains(self, state: usize) -> bool {
        self.0 >> state & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: Event) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn with(self, state: usize) -> Event {
        Event(self.0 | 1 << state)
    }

    pub fn without(self, state: usize) -> Event {
        Event(self.0 & !(1 << state))
    }

    /// Smallest state in the event.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn states(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let s = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(s)
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Event> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Event(cur))
        })
    }
}

impl BitOr for Event {
    type Output = Event;
    fn bitor(self, rhs: Event) -> Event {
        Event(self.0 | rhs.0)
    }
}

impl BitAnd for Event {
    type Output = Event;
    fn bitand(self, rhs: Event) -> Event {
        Event(self.0 & rhs.0)
    }
}

impl Sub for Event {
    type Output = Event;
    fn sub(self, rhs: Event) -> Event {
        Event(self.0 & !rhs.0)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, s) in self.states().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    names: Vec<String>,
}

impl StateSpace {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyStateSpace);
        }
        if names.len() > MAX_STATES {
            return Err(Error::TooManyStates(names.len()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateState(name.clone()));
            }
        }
        Ok(StateSpace { names })
    }

    /// A space of `n` states named `w1 .. wn`.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("w{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, state: usize) -> &str {
        &self.names[state]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn check_state(&self, state: usize) -> Result<()> {
        if state < self.len() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange(state))
        }
    }

    pub fn check_event(&self, e: Event) -> Result<()> {
        if e.is_subset(self.full()) {
            Ok(())
        } else {
            Err(Error::EventOutOfRange)
        }
    }

    pub fn full(&self) -> Event {
        full_event(self.len())
    }

    pub fn complement(&self, e: Event) -> Event {
        self.full() - e
    }

    pub fn event_count(&self) -> usize {
        1 << self.len()
    }

    /// Every event, in increasing bitmask order.
    pub fn events(&self) -> impl Iterator<Item = Event> {
        (0..self.event_count() as u32).map(Event::from_bits)
    }

    pub fn event_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Event> {
        names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .try_fold(Event::EMPTY, |e, s| Ok(e.with(s?)))
    }

    /// Brace notation used by the DSL and the reports, e.g. `{w1, w3}`.
    pub fn format_event(&self, e: Event) -> String {
        let inner: Vec<&str> = e.states().map(|s| self.name(s)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

pub(crate) fn full_event(n: usize) -> Event {
    if n >= 32 {
        Event(u32::MAX)
    } else {
        Event((1u32 << n) - 1)
    }
}
