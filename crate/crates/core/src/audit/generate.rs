//! Deterministic instance generation. Every instance is a pure function of
//! its index (and the seed), so any partition of the index range yields the
//! same instances.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::axioms::{correspondence_property, FrameProperty};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::model::BeliefModel;
use crate::operator::{BeliefOperator, PossibilityCorrespondence};
use crate::signal::{family, Signal, ValueSet};
use crate::space::{Event, StateSpace};

pub const MAX_EXHAUSTIVE_STATES: usize = 3;
pub const MAX_EXHAUSTIVE_PLAYERS: usize = 2;

/// Generator for instance `index` of the stream identified by `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn correspondence_count(n: usize) -> u64 {
    1u64 << (n * n)
}

/// Correspondence number `index`: `b(ω_s)` is the `s`-th group of `n` bits.
pub fn correspondence_at(n: usize, index: u64) -> PossibilityCorrespondence {
    let mask = (1u64 << n) - 1;
    PossibilityCorrespondence::new_unchecked(
        (0..n)
            .map(|s| Event::from_bits((index >> (s * n) & mask) as u32))
            .collect(),
    )
}

/// All `(2^n)^n` correspondences on `n` states satisfying every filter, in
/// index order.
pub fn enumerate_correspondences(
    n: usize,
    filters: &[FrameProperty],
) -> Result<impl Iterator<Item = PossibilityCorrespondence> + '_> {
    if n == 0 || n > MAX_EXHAUSTIVE_STATES {
        return Err(Error::BoundExceeded {
            what: "states",
            detail: format!("exhaustive enumeration needs 1 to {MAX_EXHAUSTIVE_STATES} states, got {n}"),
        });
    }
    Ok((0..correspondence_count(n))
        .map(move |i| correspondence_at(n, i))
        .filter(move |b| filters.iter().all(|&f| correspondence_property(b, f).holds)))
}

pub fn player_names(p: usize) -> Vec<String> {
    (1..=p).map(|i| i.to_string()).collect()
}

/// Kripke model number `index` with `p` players on `n` states; player 1
/// varies slowest.
pub fn kripke_model_at(n: usize, p: usize, index: u64) -> BeliefModel {
    let space = StateSpace::with_size(n).expect("bounded");
    let c = correspondence_count(n);
    let ops = player_names(p)
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let digit = index / c.pow((p - 1 - i) as u32) % c;
            BeliefOperator::from_correspondence(&space, name, &correspondence_at(n, digit)).expect("valid")
        })
        .collect();
    BeliefModel::new(space, ops).expect("valid")
}

/// With probability ½ the Kripke operator of a uniform correspondence,
/// otherwise the monotone closure of a random partial table.
pub fn sample_operator(space: &StateSpace, owner: &str, rng: &mut ChaCha8Rng) -> BeliefOperator {
    let n = space.len();
    let full = space.full().bits();
    if rng.gen_bool(0.5) {
        let possible = (0..n).map(|_| Event::from_bits(rng.gen::<u32>() & full)).collect();
        BeliefOperator::from_correspondence(space, owner, &PossibilityCorrespondence::new_unchecked(possible))
            .expect("valid")
    } else {
        let entries = rng.gen_range(1..=(1usize << n).min(6));
        let mut core = BTreeMap::new();
        for _ in 0..entries {
            let e = rng.gen::<u32>() & full;
            let scope = if rng.gen_bool(0.5) { e } else { full };
            let img = rng.gen::<u32>() & scope;
            let slot = core.entry(Event::from_bits(e)).or_insert(Event::EMPTY);
            *slot = *slot | Event::from_bits(img);
        }
        BeliefOperator::monotone_closure(space, owner, &core).expect("valid")
    }
}

/// `count` operators on `n` states, reproducible from `seed`.
pub fn sample_monotone_operators(n: usize, seed: u64, count: u64) -> Result<impl Iterator<Item = BeliefOperator>> {
    let space = StateSpace::with_size(n)?;
    if n > crate::space::MAX_TABLE_STATES {
        return Err(Error::TableTooLarge(n));
    }
    Ok((0..count).map(move |i| sample_operator(&space, "1", &mut rng_for(seed, i))))
}

/// Sampled model number `index`: `1..=max_states` states, `p` players.
pub fn sampled_model_at(max_states: usize, p: usize, seed: u64, index: u64) -> BeliefModel {
    let mut rng = rng_for(seed, index);
    let n = rng.gen_range(1..=max_states);
    let space = StateSpace::with_size(n).expect("bounded");
    let ops = player_names(p)
        .iter()
        .map(|name| sample_operator(&space, name, &mut rng))
        .collect();
    BeliefModel::new(space, ops).expect("valid")
}

/// Every weak order on `m` items as dense ranks (0 = worst), in
/// lexicographic order of the rank vectors.
pub fn weak_orders(m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; m];
    fn rec(pos: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if pos == cur.len() {
            let max = cur.iter().copied().max().unwrap_or(-1);
            if (0..=max).all(|r| cur.contains(&r)) {
                out.push(cur.clone());
            }
            return;
        }
        for r in 0..cur.len() as i64 {
            cur[pos] = r;
            rec(pos + 1, cur, out);
        }
    }
    rec(0, &mut cur, &mut out);
    out
}

/// All two-player games with `k` actions each and arbitrary weak orders as
/// preferences.
pub fn all_games(k: usize) -> Vec<Game> {
    let acts: Vec<String> = (0..k).map(|a| ((b'a' + a as u8) as char).to_string()).collect();
    let orders = weak_orders(k * k);
    let mut out = Vec::with_capacity(orders.len() * orders.len());
    for r1 in &orders {
        for r2 in &orders {
            out.push(
                Game::new(player_names(2), vec![acts.clone(), acts.clone()], vec![r1.clone(), r2.clone()])
                    .expect("valid"),
            );
        }
    }
    out
}

/// All strategy profiles (2 players, `k` actions, `n` states), player 1's
/// strategy varying slowest.
pub fn all_strategy_profiles(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let per = k.pow(n as u32);
    let strategy = |mut i: usize| {
        (0..n)
            .map(|_| {
                let a = i % k;
                i /= k;
                a
            })
            .collect::<Vec<_>>()
    };
    (0..per * per)
        .map(|i| vec![strategy(i / per), strategy(i % per)])
        .collect()
}

/// Sampled game model parts: a belief model on `1..=max_states` states, a
/// two-player game with `1..=max_actions` actions per player and random
/// (possibly tied) ranks, and random strategies.
pub fn sampled_game_at(
    max_states: usize,
    max_actions: usize,
    seed: u64,
    index: u64,
) -> (BeliefModel, Game, Vec<Vec<usize>>) {
    let mut rng = rng_for(seed, index);
    let n = rng.gen_range(1..=max_states);
    let space = StateSpace::with_size(n).expect("bounded");
    let names = player_names(2);
    let ops = names.iter().map(|p| sample_operator(&space, p, &mut rng)).collect();
    let model = BeliefModel::new(space, ops).expect("valid");
    let sizes: Vec<usize> = (0..2).map(|_| rng.gen_range(1..=max_actions)).collect();
    let actions: Vec<Vec<String>> = sizes
        .iter()
        .map(|&k| (0..k).map(|a| ((b'a' + a as u8) as char).to_string()).collect())
        .collect();
    let profiles = sizes[0] * sizes[1];
    let ranks = (0..2)
        .map(|_| (0..profiles).map(|_| rng.gen_range(0..profiles as i64)).collect())
        .collect();
    let game = Game::new(names, actions, ranks).expect("valid");
    let strategies = sizes
        .iter()
        .map(|&k| (0..n).map(|_| rng.gen_range(0..k)).collect())
        .collect();
    (model, game, strategies)
}

/// Signals for the signal-transfer audit: every assignment into a codomain
/// of 1 to 3 values, observed through singletons and their complements.
pub fn side_condition_signals(n: usize) -> Vec<Signal> {
    let mut out = Vec::new();
    for k in 1..=3usize {
        for assignment in assignments(n, k) {
            out.push(signal(k, assignment, family::singletons_and_complements(k)));
        }
    }
    out
}

/// Signals whose family violates the complement-cover condition: one or two
/// non-trivial observations over 2 or 3 values.
pub fn adversarial_signals(n: usize) -> Vec<Signal> {
    let mut out = Vec::new();
    for k in 2..=3usize {
        let all: ValueSet = (1 << k) - 1;
        let proper: Vec<ValueSet> = (1..all).collect();
        let mut families: Vec<Vec<ValueSet>> = proper.iter().map(|&f| vec![f]).collect();
        for (i, &f) in proper.iter().enumerate() {
            for &g in &proper[i + 1..] {
                families.push(vec![f, g]);
            }
        }
        families.retain(|fam| !family::complements_are_unions(k, fam));
        for assignment in assignments(n, k) {
            for fam in &families {
                out.push(signal(k, assignment.clone(), fam.clone()));
            }
        }
    }
    out
}

fn assignments(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k.pow(n as u32)).map(move |mut i| {
        (0..n)
            .map(|_| {
                let v = i % k;
                i /= k;
                v
            })
            .collect()
    })
}

fn signal(k: usize, assignment: Vec<usize>, fam: Vec<ValueSet>) -> Signal {
    let codomain = (0..k).map(|v| ((b'a' + v as u8) as char).to_string()).collect();
    Signal::from_parts(codomain, assignment, fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{holds, Axiom};

    #[test]
    fn correspondence_counts() {
        assert_eq!(enumerate_correspondences(1, &[]).unwrap().count(), 2);
        assert_eq!(enumerate_correspondences(2, &[]).unwrap().count(), 16);
        assert_eq!(enumerate_correspondences(3, &[]).unwrap().count(), 512);
        assert_eq!(enumerate_correspondences(2, &[FrameProperty::Reflexive]).unwrap().count(), 4);
        assert!(enumerate_correspondences(4, &[]).is_err());
    }

    #[test]
    fn weak_order_counts() {
        assert_eq!(weak_orders(1).len(), 1);
        assert_eq!(weak_orders(2).len(), 3);
        assert_eq!(weak_orders(3).len(), 13);
        assert_eq!(weak_orders(4).len(), 75);
        assert_eq!(all_strategy_profiles(2, 2).len(), 16);
    }

    #[test]
    fn samples_are_reproducible_and_monotone() {
        let a: Vec<_> = sample_monotone_operators(3, 7, 200).unwrap().collect();
        let b: Vec<_> = sample_monotone_operators(3, 7, 200).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|op| holds(op, Axiom::Monotonicity)));
        assert!(a.iter().any(|op| !holds(op, Axiom::Kripke)));
        assert!(a.iter().any(|op| holds(op, Axiom::Kripke)));
        let n2: Vec<_> = sample_monotone_operators(2, 1, 200).unwrap().collect();
        assert!(n2.iter().any(|op| !holds(op, Axiom::Kripke)));
    }

    #[test]
    fn signal_families() {
        assert!(side_condition_signals(2)
            .iter()
            .all(|x| family::complements_are_unions(x.codomain().len(), x.family())));
        assert!(adversarial_signals(2)
            .iter()
            .all(|x| !family::complements_are_unions(x.codomain().len(), x.family())));
    }
}
