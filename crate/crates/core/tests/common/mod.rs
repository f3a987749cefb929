//! Brute-force oracles written directly from the definitions, on raw
//! bitmask tables. Nothing here calls into the library's algorithms.
#![allow(dead_code)]

use beliefcheck::axioms::{Axiom, FrameProperty};
use beliefcheck::game::Game;
use beliefcheck::operator::BeliefOperator;
use beliefcheck::space::Event;

pub fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

pub fn table_of(op: &BeliefOperator) -> Vec<u32> {
    (0..1u32 << op.state_count())
        .map(|e| op.apply(Event::from_bits(e)).bits())
        .collect()
}

/// `{ω : b(ω) ⊆ E}`
pub fn kripke_apply(b: &[u32], e: u32) -> u32 {
    (0..b.len()).filter(|&s| b[s] & !e == 0).fold(0, |acc, s| acc | 1 << s)
}

pub fn kripke_table(b: &[u32]) -> Vec<u32> {
    (0..1u32 << b.len()).map(|e| kripke_apply(b, e)).collect()
}

/// `b(ω)`: intersection of every event believed at ω.
pub fn possibility(t: &[u32], n: usize) -> Vec<u32> {
    (0..n)
        .map(|s| {
            (0..1u32 << n)
                .filter(|&e| t[e as usize] >> s & 1 == 1)
                .fold(full(n), |acc, e| acc & e)
        })
        .collect()
}

fn subset(a: u32, b: u32) -> bool {
    a & !b == 0
}

pub fn axiom_holds(t: &[u32], n: usize, axiom: Axiom) -> bool {
    let all = full(n);
    let events = || 0..1u32 << n;
    let b = |e: u32| t[e as usize];
    match axiom {
        Axiom::Monotonicity => events().all(|e| events().all(|f| !subset(e, f) || subset(b(e), b(f)))),
        Axiom::Necessitation => b(all) == all,
        // on a finite algebra every non-empty family is finite, and
        // closure under pairs gives closure under finite families
        Axiom::FiniteConjunction | Axiom::CountableConjunction => {
            events().all(|e| events().all(|f| subset(b(e) & b(f), b(e & f))))
        }
        Axiom::Kripke => {
            let p = possibility(t, n);
            events().all(|e| b(e) == kripke_apply(&p, e))
        }
        Axiom::Consistency => events().all(|e| b(e) & b(all & !e) == 0),
        Axiom::TruthAxiom => events().all(|e| subset(b(e), e)),
        Axiom::PositiveIntrospection => events().all(|e| subset(b(e), b(b(e)))),
        Axiom::NegativeIntrospection => events().all(|e| {
            let nb = all & !b(e);
            subset(nb, b(nb))
        }),
    }
}

pub fn frame_holds(b: &[u32], prop: FrameProperty) -> bool {
    let n = b.len();
    let r = |s: usize, t: usize| b[s] >> t & 1 == 1;
    let states = || 0..n;
    match prop {
        FrameProperty::Serial => b.iter().all(|&x| x != 0),
        FrameProperty::Reflexive => states().all(|s| r(s, s)),
        FrameProperty::Transitive => {
            states().all(|s| states().all(|t| states().all(|u| !(r(s, t) && r(t, u)) || r(s, u))))
        }
        FrameProperty::Euclidean => {
            states().all(|s| states().all(|t| states().all(|u| !(r(s, t) && r(s, u)) || r(t, u))))
        }
    }
}

pub fn mutual(tables: &[Vec<u32>], n: usize, e: u32) -> u32 {
    tables.iter().fold(full(n), |acc, t| acc & t[e as usize])
}

/// Union of every `F` with `F ⊆ B_I(E) ∩ B_I(F)`: the largest such event.
pub fn common_by_evident_events(tables: &[Vec<u32>], n: usize, e: u32) -> u32 {
    let be = mutual(tables, n, e);
    (0..1u32 << n)
        .filter(|&f| subset(f, be & mutual(tables, n, f)))
        .fold(0, |acc, f| acc | f)
}

/// `⋂_{k=1..depth} B_I^k(E)`
pub fn iterated(tables: &[Vec<u32>], n: usize, e: u32, depth: usize) -> u32 {
    let mut cur = e;
    let mut acc = full(n);
    for _ in 0..depth {
        cur = mutual(tables, n, cur);
        acc &= cur;
    }
    acc
}

/// Certainty of a signal given as per-state values and observations as
/// value bitmasks: `x⁻¹(F) ⊆ B(x⁻¹(F))` for each observation.
pub fn signal_certain(t: &[u32], values: &[usize], family: &[u64]) -> bool {
    family.iter().all(|&f| {
        let pre = (0..values.len())
            .filter(|&s| f >> values[s] & 1 == 1)
            .fold(0u32, |acc, s| acc | 1 << s);
        subset(pre, t[pre as usize])
    })
}

/// Type of a state: the set of believed events, as a 2^n-bit vector.
pub fn type_at(t: &[u32], n: usize, s: usize) -> Vec<bool> {
    (0..1usize << n).map(|e| t[e] >> s & 1 == 1).collect()
}

/// Certainty of the type mapping of `subject` by `observer` with respect
/// to every union of realised types.
pub fn type_certain_all_unions(observer: &[u32], subject: &[u32], n: usize) -> bool {
    let mut realized: Vec<Vec<bool>> = Vec::new();
    let values: Vec<usize> = (0..n)
        .map(|s| {
            let ty = type_at(subject, n, s);
            match realized.iter().position(|r| *r == ty) {
                Some(i) => i,
                None => {
                    realized.push(ty);
                    realized.len() - 1
                }
            }
        })
        .collect();
    let family: Vec<u64> = (1..1u64 << realized.len()).collect();
    signal_certain(observer, &values, &family)
}

/// Simultaneous elimination of every strictly dominated action until
/// nothing changes; two players.
pub fn iesda_survivors(g: &Game) -> Vec<Vec<usize>> {
    let k = [g.actions(0).len(), g.actions(1).len()];
    let mut alive: Vec<Vec<usize>> = vec![(0..k[0]).collect(), (0..k[1]).collect()];
    let rank = |i: usize, own: usize, other: usize| {
        let profile = if i == 0 { [own, other] } else { [other, own] };
        g.rank(i, g.profile_index(&profile))
    };
    loop {
        let mut next = alive.clone();
        for i in 0..2 {
            next[i] = alive[i]
                .iter()
                .copied()
                .filter(|&a| {
                    !alive[i]
                        .iter()
                        .any(|&d| alive[1 - i].iter().all(|&o| rank(i, d, o) > rank(i, a, o)))
                })
                .collect();
        }
        if next == alive {
            return alive;
        }
        alive = next;
    }
}
