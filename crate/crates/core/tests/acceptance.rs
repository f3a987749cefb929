//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use beliefcheck::audit::generate::{
    all_games, correspondence_at, correspondence_count, kripke_model_at, sampled_model_at,
};
use beliefcheck::audit::{audit, AuditResult, ModelSource};
use beliefcheck::axioms::{check_axiom, correspondence_property, Axiom, FrameProperty};
use beliefcheck::dsl::{document_of, document_of_game, parse_model_spec, serialize, validate};
use beliefcheck::exec::{fold_indices, Execution};
use beliefcheck::game::{iesda, EliminationOrder, Game};
use beliefcheck::model::BeliefModel;
use beliefcheck::operator::BeliefOperator;
use beliefcheck::report::audit_report;
use beliefcheck::signal::{certain_of, commonly_certain_of, CertaintyFailure};
use beliefcheck::space::{Event, StateSpace};
use beliefcheck::types::QualitativeTypeMapping;

const THREE_STATE: &str = include_str!("golden/three_state.bm");
const PRISONERS: &str = include_str!("golden/prisoners_dilemma.bm");

const SAMPLE_SEED: u64 = 20_240_917;

#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 20 {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    fn audit(&mut self, claim: &str, source: &ModelSource) -> Option<AuditResult> {
        match audit(claim, source, Execution::Parallel) {
            Ok(r) => {
                self.check(r.passed(), || {
                    let first = r.violations.first().map(|f| f.detail.clone()).unwrap_or_default();
                    format!(
                        "{claim} on {}: {} violations, {} counterexamples {first}",
                        r.source,
                        r.violation_count(),
                        r.counterexample_count
                    )
                });
                Some(r)
            }
            Err(e) => {
                self.check(false, || format!("{claim}: {e}"));
                None
            }
        }
    }
}

fn criterion(number: u32, title: &str, limit: Duration, body: fn(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut out = Outcome::default();
    body(&mut out);
    let elapsed = start.elapsed();
    out.check(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"));
    let pass = out.failures.is_empty();
    println!(
        "acceptance criterion {number} ({title}): {} in {:.2?} (limit {:?}){}",
        if pass { "PASS" } else { "FAIL" },
        elapsed,
        limit,
        if out.notes.is_empty() { String::new() } else { format!("; {}", out.notes.join("; ")) }
    );
    for f in &out.failures {
        println!("    {f}");
    }
    pass
}

fn load(text: &str) -> beliefcheck::dsl::Validated {
    validate(&parse_model_spec(text).expect("golden file parses")).expect("golden file validates")
}

fn three_state_example(out: &mut Outcome) {
    let v = load(THREE_STATE);
    let m = &v.model;
    let n = 3;
    let all = common::full(n);
    let expected = |e: u32| if e == all { all } else { e & !0b100 };
    let op = &m.operators()[0];
    for e in 0..=all {
        let got = op.apply(Event::from_bits(e)).bits();
        out.check(got == expected(e), || format!("B({e:03b}) = {got:03b}, expected {:03b}", expected(e)));
    }
    let constant = v.signal("constant").unwrap();
    let alternating = v.signal("alternating").unwrap();
    let t = common::table_of(op);
    out.check(certain_of(m, 0, constant).unwrap().holds, || "player 1 not certain of (a,a,a)".into());
    out.check(common::signal_certain(&t, constant.assignment(), constant.family()), || {
        "oracle: player 1 not certain of (a,a,a)".into()
    });
    let r = certain_of(m, 0, alternating).unwrap();
    out.check(
        !r.holds && r.failures == vec![CertaintyFailure { state: 2, observation: 0 }],
        || format!("(a,b,a): {r:?}"),
    );
    out.check(alternating.format_values(alternating.family()[0]) == "{a}", || "failing observation is not {a}".into());
    out.check(!common::signal_certain(&t, alternating.assignment(), alternating.family()), || {
        "oracle: player 1 certain of (a,b,a)".into()
    });
    out.check(commonly_certain_of(m, constant).unwrap().holds, || "(a,a,a) not commonly certain".into());
    let tables: Vec<Vec<u32>> = m.operators().iter().map(common::table_of).collect();
    for e in 0..=all {
        let c = m.common_belief(Event::from_bits(e)).bits();
        out.check(c == expected(e), || format!("C({e:03b}) = {c:03b} differs from B_1"));
        out.check(common::common_by_evident_events(&tables, n, e) == expected(e), || {
            format!("oracle C({e:03b}) differs from B_1")
        });
    }
    let b = op.derive_correspondence();
    let want = [0b001, 0b010, 0b111];
    out.check((0..3).all(|s| b.at(s).bits() == want[s]), || format!("derived correspondence {b:?}"));
}

fn axiom_correspondence(out: &mut Outcome) {
    let mut checked = 0;
    for n in 2..=3 {
        let space = StateSpace::with_size(n).unwrap();
        for i in 0..correspondence_count(n) {
            let b = correspondence_at(n, i);
            let op = BeliefOperator::from_correspondence(&space, "1", &b).unwrap();
            let raw: Vec<u32> = (0..n).map(|s| b.at(s).bits()).collect();
            let oracle_table = common::kripke_table(&raw);
            out.check(common::table_of(&op) == oracle_table, || format!("n={n} #{i}: Kripke table differs from oracle"));
            for prop in FrameProperty::ALL {
                let ax = check_axiom(&op, prop.matching_axiom()).holds;
                let fr = correspondence_property(&b, prop).holds;
                let oracle_fr = common::frame_holds(&raw, prop);
                let oracle_ax = common::axiom_holds(&oracle_table, n, prop.matching_axiom());
                out.check(ax == fr && fr == oracle_fr && ax == oracle_ax, || {
                    format!("n={n} #{i} {prop}: axiom {ax}, frame {fr}, oracle frame {oracle_fr}, oracle axiom {oracle_ax}")
                });
                checked += 1;
            }
        }
    }
    out.note(format!("{checked} comparisons, 0 mismatches allowed"));
}

fn common_belief_agreement(out: &mut Outcome) {
    let mismatches = fold_indices(
        correspondence_count(3).pow(2),
        Execution::Parallel,
        || 0u64,
        |acc, i| {
            let m = kripke_model_at(3, 2, i);
            acc + model_mismatches(&m)
        },
        |a, b| a + b,
    );
    let small: u64 = (1..=2)
        .flat_map(|n| (0..correspondence_count(n).pow(2)).map(move |i| kripke_model_at(n, 2, i)))
        .map(|m| model_mismatches(&m))
        .sum();
    out.check(mismatches + small == 0, || format!("{} Kripke models disagree", mismatches + small));

    let (mut non_conjunctive, mut strict) = (0u64, 0u64);
    for i in 0..20_000 {
        let m = sampled_model_at(3, 2, SAMPLE_SEED, i);
        if m.operators().iter().all(|op| beliefcheck::axioms::holds(op, Axiom::FiniteConjunction)) {
            continue;
        }
        non_conjunctive += 1;
        let n = m.space().len();
        let tables: Vec<Vec<u32>> = m.operators().iter().map(common::table_of).collect();
        for e in m.space().events() {
            let c = m.common_belief(e);
            let it = m.common_belief_iterated(e, 1 << n);
            out.check(c.is_subset(it), || format!("sample {i}: C(E) ⊄ iterated"));
            out.check(it.bits() == common::iterated(&tables, n, e.bits(), 1 << n), || {
                format!("sample {i}: iterated differs from oracle")
            });
            out.check(c.bits() == common::common_by_evident_events(&tables, n, e.bits()), || {
                format!("sample {i}: C differs from oracle")
            });
            if c != it {
                strict += 1;
            }
        }
    }
    out.check(strict >= 1, || "no strict inclusion found".into());
    out.note(format!("{non_conjunctive} non-conjunctive models, {strict} strict inclusions"));
}

fn model_mismatches(m: &BeliefModel) -> u64 {
    let n = m.space().len();
    let tables: Vec<Vec<u32>> = m.operators().iter().map(common::table_of).collect();
    m.space()
        .events()
        .filter(|&e| {
            let c = m.common_belief(e).bits();
            c != m.common_belief_iterated(e, 1 << n).bits()
                || c != common::iterated(&tables, n, e.bits(), 1 << n)
                || c != common::common_by_evident_events(&tables, n, e.bits())
        })
        .count() as u64
}

const CRITERION4_CLAIMS: &[&str] = &[
    "prop1-1a", "prop1-1b", "prop1-1c", "prop1-2a", "prop1-2b", "rmk1-1a", "rmk1-1b", "rmk1-1c", "rmk1-2a",
    "rmk1-2b", "thm1-1", "thm1-2", "prop4-1a", "prop4-1b",
];

fn characterizations(out: &mut Outcome) {
    let mut sources: Vec<ModelSource> = (1..=3)
        .flat_map(|states| (1..=2).map(move |players| ModelSource::ExhaustiveKripke { states, players }))
        .collect();
    sources.push(ModelSource::SampledMonotone {
        states: 4,
        players: 2,
        seed: SAMPLE_SEED,
        count: 10_000,
    });
    let mut instances = 0;
    let mut confirmed = 0;
    for claim in CRITERION4_CLAIMS {
        for source in &sources {
            if let Some(r) = out.audit(claim, source) {
                instances += r.instances;
                confirmed += r.directions.iter().map(|d| d.confirmed).sum::<u64>();
                // every direction must be exercised somewhere
                if matches!(source, ModelSource::SampledMonotone { .. }) {
                    out.check(r.directions.iter().all(|d| d.confirmed > 0), || format!("{claim}: a direction is never exercised"));
                }
            }
        }
    }
    // the atoms decision: certainty w.r.t. singletons of realised types
    // equals certainty w.r.t. all their unions
    for i in 0..correspondence_count(3).pow(2) {
        let m = kripke_model_at(3, 2, i);
        let tables: Vec<Vec<u32>> = m.operators().iter().map(common::table_of).collect();
        let types: Vec<QualitativeTypeMapping> =
            m.operators().iter().map(|op| QualitativeTypeMapping::of(m.space(), op).unwrap()).collect();
        for a in 0..2 {
            for b in 0..2 {
                let op = &m.operators()[a];
                let lib = beliefcheck::signal::operator_certain_of(
                    op,
                    &types[b].as_signal(beliefcheck::types::FamilyKind::SigmaAtoms),
                )
                .holds;
                let oracle = common::type_certain_all_unions(&tables[a], &tables[b], 3);
                out.check(lib == oracle, || format!("model {i}: atoms {lib}, all unions {oracle}"));
            }
        }
    }
    out.note(format!("{instances} instances, {confirmed} confirmed implications"));
}

fn counterexamples(out: &mut Outcome) {
    let exhaustive = ModelSource::ExhaustiveKripke { states: 3, players: 2 };
    for claim in ["thm1-2-converse-fails", "pi-without-ni-beta-only"] {
        let Some(r) = out.audit(claim, &exhaustive) else { continue };
        out.note(format!("{claim}: {} instances", r.counterexample_count));
        // re-check the first one from its document alone
        let Some(f) = r.counterexamples.first() else { continue };
        let v = load(&f.document);
        let m = &v.model;
        let n = m.space().len();
        let tables: Vec<Vec<u32>> = m.operators().iter().map(common::table_of).collect();
        if claim == "thm1-2-converse-fails" {
            let logical = tables.iter().all(|t| {
                common::axiom_holds(t, n, Axiom::Consistency) && common::axiom_holds(t, n, Axiom::CountableConjunction)
            });
            let c_is_mutual = (0..1u32 << n).all(|e| {
                common::common_by_evident_events(&tables, n, e) == common::mutual(&tables, n, e)
            });
            // common certainty of the profile: each t_j certain under C
            let common_table: Vec<u32> = (0..1u32 << n).map(|e| common::common_by_evident_events(&tables, n, e)).collect();
            let commonly_certain = tables.iter().all(|t| common::type_certain_all_unions(&common_table, t, n));
            out.check(logical && c_is_mutual && !commonly_certain, || {
                format!("oracle rejects converse counterexample: {logical} {c_is_mutual} {commonly_certain}")
            });
        } else {
            let found = tables.iter().any(|t| {
                let beta_certain = (0..1usize << n).all(|e| {
                    let pre = t[e];
                    pre & !t[pre as usize] == 0
                });
                let neg_certain = (0..1usize << n).all(|e| {
                    let pre = common::full(n) & !t[e];
                    pre & !t[pre as usize] == 0
                });
                common::axiom_holds(t, n, Axiom::PositiveIntrospection)
                    && !common::axiom_holds(t, n, Axiom::NegativeIntrospection)
                    && beta_certain
                    && !neg_certain
            });
            out.check(found, || "oracle rejects the PI-without-NI counterexample".into());
        }
    }
}

fn games(out: &mut Outcome) {
    let exhaustive = ModelSource::ExhaustiveGames { states: 2, actions: 2 };
    let sampled = ModelSource::SampledGames {
        states: 4,
        actions: 3,
        seed: SAMPLE_SEED,
        count: 5_000,
    };
    for claim in ["thm2", "epistemic-iesda", "iesda-order-independence"] {
        for source in [&exhaustive, &sampled] {
            if let Some(r) = out.audit(claim, source) {
                if claim == "epistemic-iesda" {
                    out.note(format!("{}: {} instances", r.source, r.instances));
                }
            }
        }
    }
    for source in [
        ModelSource::ExhaustiveKripke { states: 2, players: 2 },
        ModelSource::SampledMonotone {
            states: 4,
            players: 2,
            seed: SAMPLE_SEED,
            count: 5_000,
        },
    ] {
        out.audit("prop5", &source);
    }
    let pd = Game::prisoners_dilemma();
    let d = pd.action_index(0, "D").unwrap();
    let want = vec![vec![d], vec![pd.action_index(1, "D").unwrap()]];
    out.check(iesda(&pd, EliminationOrder::Maximal).survivors == want, || "PD maximal survivors".into());
    for seed in 0..50 {
        out.check(iesda(&pd, EliminationOrder::Seeded(seed)).survivors == want, || format!("PD seed {seed}"));
    }
    out.check(common::iesda_survivors(&pd) == want, || "PD oracle survivors".into());
    let gm = load(PRISONERS).game.unwrap();
    out.check(gm.epistemic_iesda_verdict(0).unwrap().survives, || "PD model: (D,D) at w1 does not survive".into());
    for (i, g) in all_games(2).iter().enumerate() {
        let lib = iesda(g, EliminationOrder::Maximal).survivors;
        out.check(lib == common::iesda_survivors(g), || format!("game {i}: survivors differ from oracle"));
    }
}

fn round_trips(out: &mut Outcome) {
    for n in 1..=3 {
        let space = StateSpace::with_size(n).unwrap();
        for i in 0..correspondence_count(n) {
            let op = BeliefOperator::from_correspondence(&space, "1", &correspondence_at(n, i)).unwrap();
            let t = QualitativeTypeMapping::of(&space, &op).unwrap();
            out.check(t.operator_of().as_ref() == Ok(&op), || format!("n={n} #{i}: operator round trip"));
            let again = QualitativeTypeMapping::from_types(&space, "1", t.types().to_vec()).unwrap();
            out.check(again == t, || format!("n={n} #{i}: type mapping round trip"));
        }
    }
    for i in 0..2_000 {
        let m = sampled_model_at(4, 2, SAMPLE_SEED, i);
        for op in m.operators() {
            let t = QualitativeTypeMapping::of(m.space(), op).unwrap();
            out.check(t.operator_of().as_ref() == Ok(op), || format!("sample {i}: operator round trip"));
        }
        let text = serialize(&document_of(&m, &[]));
        let doc = parse_model_spec(&text).unwrap();
        out.check(serialize(&doc) == text, || format!("sample {i}: serialization not byte-stable"));
        out.check(validate(&doc).map(|v| v.model == m).unwrap_or(false), || format!("sample {i}: model changed"));
    }
    for golden in [THREE_STATE, PRISONERS] {
        let doc = parse_model_spec(golden).unwrap();
        out.check(serialize(&doc) == golden, || "golden file does not round-trip byte-identically".into());
    }
    let gm = load(PRISONERS).game.unwrap();
    out.check(serialize(&document_of_game(&gm)) == PRISONERS, || "game document differs from golden file".into());

    let audits = [
        ("prop1-2b", ModelSource::SampledMonotone { states: 4, players: 2, seed: 7, count: 3_000 }),
        ("common-belief-strict-inclusion", ModelSource::SampledMonotone { states: 3, players: 2, seed: 7, count: 3_000 }),
        ("epistemic-iesda", ModelSource::SampledGames { states: 4, actions: 3, seed: 7, count: 2_000 }),
        ("thm2-conjunction-needed", ModelSource::SampledGames { states: 4, actions: 2, seed: 7, count: 2_000 }),
    ];
    for (claim, source) in &audits {
        let json = |exec| audit(claim, source, exec).map(|r| audit_report(&r).to_json()).unwrap();
        let first = json(Execution::Parallel);
        out.check(first == json(Execution::Parallel), || format!("{claim}: repeated run differs"));
        out.check(first == json(Execution::Sequential), || format!("{claim}: sequential run differs"));
    }
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "three-state example", Duration::from_secs(5), three_state_example),
        criterion(2, "axiom and frame correspondence", Duration::from_secs(10), axiom_correspondence),
        criterion(3, "common belief and its iterated form", Duration::from_secs(60), common_belief_agreement),
        criterion(4, "characterisation audits", Duration::from_secs(300), characterizations),
        criterion(5, "counterexamples", Duration::from_secs(60), counterexamples),
        criterion(6, "game audits", Duration::from_secs(300), games),
        criterion(7, "round trips and determinism", Duration::from_secs(120), round_trips),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
