//! Reports emitted by the command line tool, as text or JSON.
//!
//! Every report carries the same four top-level fields followed by a
//! check-specific `details` tree. Field order is fixed.

use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::{AuditResult, Expectation, Finding};
use crate::axioms::{check_axiom, correspondence_property, Axiom, AxiomReport, FrameProperty, Witness};
use crate::error::Result;
use crate::game::{iesda, EliminationOrder, GameModel};
use crate::informativeness::compatible_with_informativeness;
use crate::model::BeliefModel;
use crate::operator::PossibilityCorrespondence;
use crate::signal::{CertaintyReport, Signal};
use crate::space::{Event, StateSpace};
use crate::types::{meta_certainty_report, EventWitness};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    #[serde(rename = "tool-version")]
    pub tool_version: &'static str,
    pub check: String,
    pub verdict: String,
    pub witnesses: Vec<Value>,
    pub details: Value,
    #[serde(skip)]
    pub text: Vec<String>,
    /// Whether the checked property or claim was violated (exit code 1).
    #[serde(skip)]
    pub violated: bool,
}

impl Report {
    fn new(check: impl Into<String>, verdict: impl Into<String>) -> Self {
        Report {
            tool_version: TOOL_VERSION,
            check: check.into(),
            verdict: verdict.into(),
            witnesses: Vec::new(),
            details: Value::Null,
            text: Vec::new(),
            violated: false,
        }
    }

    /// A formatted document; printed verbatim in either format.
    pub(crate) fn canonical(document: String) -> Self {
        Report::new("fmt", document)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.check, self.verdict);
        for line in &self.text {
            s.push_str(line);
            s.push('\n');
        }
        s
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn events_json(space: &StateSpace, es: &[Event]) -> Value {
    es.iter().map(|&e| Value::from(space.format_event(e))).collect()
}

fn witness_json(space: &StateSpace, w: &Witness) -> Value {
    json!({
        "states": w.states.iter().map(|&s| space.name(s)).collect::<Vec<_>>(),
        "events": events_json(space, &w.events),
    })
}

/// `w3/{w1}`: states, then events.
pub fn format_witness(space: &StateSpace, w: &Witness) -> String {
    let states: Vec<&str> = w.states.iter().map(|&s| space.name(s)).collect();
    let events: Vec<String> = w.events.iter().map(|&e| space.format_event(e)).collect();
    match (states.is_empty(), events.is_empty()) {
        (true, _) => events.join(", "),
        (false, true) => states.join(", "),
        (false, false) => format!("{}/{}", states.join(", "), events.join(", ")),
    }
}

fn property_lines(space: &StateSpace, reports: &[AxiomReport], out: &mut Vec<String>) {
    for r in reports {
        let mut line = format!("  {} {}", r.property, mark(r.holds));
        if let Some(w) = &r.witness {
            line.push_str(&format!(" witness {}", format_witness(space, w)));
        }
        out.push(line);
    }
}

pub fn axioms_report(model: &BeliefModel, players: &[usize]) -> Result<Report> {
    let space = model.space();
    let mut rep = Report::new("axioms", "checked");
    let mut entries = Vec::new();
    for &i in players {
        let op = model.operator(i)?;
        let mut reports: Vec<AxiomReport> = Axiom::ALL.iter().map(|&a| check_axiom(op, a)).collect();
        reports.push(compatible_with_informativeness(space, op)?);
        rep.text.push(format!("player {}", op.owner()));
        property_lines(space, &reports, &mut rep.text);
        let mut props = Vec::new();
        for r in &reports {
            let w = r.witness.as_ref().map(|w| witness_json(space, w));
            if let Some(w) = &w {
                rep.witnesses.push(json!({
                    "player": op.owner(),
                    "property": r.property.to_string(),
                    "witness": w,
                }));
            }
            props.push(json!({"property": r.property.to_string(), "holds": r.holds, "witness": w}));
        }
        let mut entry = json!({"player": op.owner(), "properties": props});
        if op.kripke_source().is_some() || crate::axioms::holds(op, Axiom::Kripke) {
            let b = op.derive_correspondence();
            entry["correspondence"] = correspondence_json(space, &b);
        }
        entries.push(entry);
    }
    rep.details = json!({ "players": entries });
    Ok(rep)
}

fn correspondence_json(space: &StateSpace, b: &PossibilityCorrespondence) -> Value {
    let frames: Vec<Value> = FrameProperty::ALL
        .iter()
        .map(|&p| json!({"property": p.name(), "holds": correspondence_property(b, p).holds}))
        .collect();
    json!({
        "possible": (0..space.len()).map(|s| json!({"state": space.name(s), "possible": space.format_event(b.at(s))})).collect::<Vec<_>>(),
        "frame": frames,
    })
}

pub fn common_belief_report(model: &BeliefModel, e: Event) -> Report {
    let space = model.space();
    let depth = 1usize << space.len();
    let c = model.common_belief(e);
    let mutual = model.mutual_belief(e);
    let iterated = model.common_belief_iterated(e, depth);
    let mut rep = Report::new("common-belief", space.format_event(c));
    let individual: Vec<Value> = model
        .operators()
        .iter()
        .map(|op| json!({"player": op.owner(), "belief": space.format_event(op.apply(e))}))
        .collect();
    rep.text.push(format!("  E = {}", space.format_event(e)));
    for op in model.operators() {
        rep.text.push(format!("  B_{}(E) = {}", op.owner(), space.format_event(op.apply(e))));
    }
    rep.text.push(format!("  B_I(E) = {}", space.format_event(mutual)));
    rep.text.push(format!("  C(E) = {}", space.format_event(c)));
    rep.text.push(format!("  iterated = {}", space.format_event(iterated)));
    rep.text.push(format!("  C(E) publicly evident: {}", mark(model.is_publicly_evident(c))));
    rep.details = json!({
        "event": space.format_event(e),
        "individual": individual,
        "mutual": space.format_event(mutual),
        "common": space.format_event(c),
        "iterated": space.format_event(iterated),
        "iterated_equals_common": iterated == c,
        "publicly_evident": model.is_publicly_evident(c),
    });
    rep
}

fn certainty_witnesses(space: &StateSpace, x: &Signal, r: &CertaintyReport) -> Vec<Value> {
    r.failures
        .iter()
        .map(|f| {
            json!({
                "state": space.name(f.state),
                "observation": x.format_values(x.family()[f.observation]),
            })
        })
        .collect()
}

/// `who` is a player name or `common`.
pub fn certainty_report(model: &BeliefModel, name: &str, x: &Signal, who: &str, r: &CertaintyReport) -> Report {
    let space = model.space();
    let mut rep = Report::new("certainty", if r.holds { "certain" } else { "not certain" });
    rep.violated = !r.holds;
    rep.witnesses = certainty_witnesses(space, x, r);
    rep.text.push(format!("  signal {name}, believer {who}"));
    for f in &r.failures {
        rep.text.push(format!(
            "  fails at {} for observation {}",
            space.name(f.state),
            x.format_values(x.family()[f.observation])
        ));
    }
    rep.details = json!({
        "signal": name,
        "believer": who,
        "family": x.family().iter().map(|&f| x.format_values(f)).collect::<Vec<_>>(),
    });
    rep
}

fn event_witness(space: &StateSpace, w: &Option<EventWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({"event": space.format_event(w.event), "state": space.name(w.state)}),
    }
}

pub fn meta_report(model: &BeliefModel) -> Result<Report> {
    let space = model.space();
    let r = meta_certainty_report(model)?;
    let owner = |i: usize| model.operators()[i].owner();
    let verdict = if r.commonly_certain() {
        "commonly certain"
    } else {
        "not commonly certain"
    };
    let mut rep = Report::new("meta", verdict);
    for &(j, s) in &r.common_certainty_failures {
        rep.witnesses.push(json!({"subject": owner(j), "state": space.name(s)}));
        rep.text.push(format!("  type of {} not commonly certain at {}", owner(j), space.name(s)));
    }
    let pairs: Vec<Value> = r
        .pairs
        .iter()
        .map(|p| {
            json!({
                "observer": owner(p.observer),
                "subject": owner(p.subject),
                "positive": event_witness(space, &p.positive),
                "negative": event_witness(space, &p.negative),
            })
        })
        .collect();
    for p in &r.pairs {
        rep.text.push(format!(
            "  B_{j} ⊆ B_{i} B_{j} {}  ¬B_{j} ⊆ B_{i} ¬B_{j} {}",
            mark(p.positive.is_none()),
            mark(p.negative.is_none()),
            i = owner(p.observer),
            j = owner(p.subject),
        ));
    }
    let common: Vec<Value> = r
        .common_introspection
        .iter()
        .map(|c| {
            json!({
                "player": owner(c.player),
                "positive": event_witness(space, &c.positive),
                "negative": event_witness(space, &c.negative),
            })
        })
        .collect();
    for c in &r.common_introspection {
        rep.text.push(format!(
            "  B_{i} ⊆ C B_{i} {}  ¬B_{i} ⊆ C ¬B_{i} {}",
            mark(c.positive.is_none()),
            mark(c.negative.is_none()),
            i = owner(c.player),
        ));
    }
    rep.text.push(format!("  operators equal {}", mark(r.operators_equal())));
    rep.text.push(format!("  C = B_I {}", mark(r.common_equals_mutual())));
    rep.details = json!({
        "pairs": pairs,
        "common_introspection": common,
        "operators_differ": r.operators_differ.map(|(i, j, e)| json!({"first": owner(i), "second": owner(j), "event": space.format_event(e)})),
        "common_differs_from_mutual": r.common_differs_from_mutual.map(|e| space.format_event(e)),
        "player_differs_from_common": r.player_differs_from_common.iter().enumerate().map(|(i, d)| {
            json!({"player": owner(i), "event": d.map(|e| space.format_event(e))})
        }).collect::<Vec<_>>(),
    });
    Ok(rep)
}

pub fn game_report(gm: &GameModel, states: &[usize]) -> Result<Report> {
    let model = gm.belief();
    let game = gm.game();
    let space = model.space();
    let mut players = Vec::new();
    let mut text = Vec::new();
    for i in 0..game.player_count() {
        let name = &game.players()[i];
        let rat = gm.rationality_event(i)?;
        let sc = gm.strategy_certainty(i)?;
        let correct = gm.correct_belief_in_own_rationality(i)?;
        let premises = gm.sufficient_conditions(i)?;
        text.push(format!("player {name}"));
        text.push(format!("  RAT = {}", space.format_event(rat)));
        text.push(format!("  certain of own strategy {}", mark(sc.report.holds)));
        text.push(format!("  B(RAT) ⊆ RAT {}", mark(correct.holds)));
        text.push(format!("  sufficient conditions {}", mark(premises)));
        players.push(json!({
            "player": name,
            "rationality": space.format_event(rat),
            "rationality_restated": space.format_event(gm.rationality_event_restated(i)?),
            "strategy_certain": sc.report.holds,
            "strategy_identities": sc.derived,
            "correct_belief": correct.holds,
            "correct_belief_witness": correct.witness.map(|s| space.name(s)),
            "sufficient_conditions": premises,
        }));
    }
    let trace = iesda(game, EliminationOrder::Maximal);
    let action = |i: usize, a: usize| game.actions(i)[a].as_str();
    let rounds: Vec<Value> = trace
        .rounds
        .iter()
        .map(|r| r.iter().map(|&(i, a)| json!({"player": game.players()[i], "action": action(i, a)})).collect())
        .collect();
    let survivors: Vec<Value> = trace
        .survivors
        .iter()
        .enumerate()
        .map(|(i, s)| json!({"player": game.players()[i], "actions": s.iter().map(|&a| action(i, a)).collect::<Vec<_>>()}))
        .collect();
    for (i, s) in trace.survivors.iter().enumerate() {
        let names: Vec<&str> = s.iter().map(|&a| action(i, a)).collect();
        text.push(format!("surviving actions of {}: {}", game.players()[i], names.join(" ")));
    }
    let mut verdicts = Vec::new();
    let mut violated = false;
    let mut rep_witnesses = Vec::new();
    for &s in states {
        let v = gm.epistemic_iesda_verdict(s)?;
        let profile: Vec<&str> = (0..game.player_count()).map(|i| action(i, gm.strategies()[i][s])).collect();
        text.push(format!("state {} profile ({}) {}", space.name(s), profile.join(", "), v.status));
        let j = json!({
            "state": space.name(s),
            "profile": profile,
            "common_belief_in_rationality": v.common_belief_in_rationality,
            "correct_beliefs": v.correct_beliefs,
            "sufficient_conditions": v.sufficient_conditions,
            "survives": v.survives,
            "status": v.status.name(),
        });
        if v.status == crate::axioms::ImplicationStatus::Violated {
            violated = true;
            rep_witnesses.push(j.clone());
        }
        verdicts.push(j);
    }
    let mut rep = Report::new("game", if violated { "VIOLATED" } else { "consistent" });
    rep.violated = violated;
    rep.witnesses = rep_witnesses;
    rep.text = text;
    rep.details = json!({
        "players": players,
        "iesda": {"rounds": rounds, "survivors": survivors},
        "epistemic": verdicts,
    });
    Ok(rep)
}

fn finding_json(f: &Finding) -> Value {
    json!({
        "instance": f.instance,
        "direction": f.direction,
        "detail": f.detail,
        "document": f.document,
    })
}

pub fn audit_report(r: &AuditResult) -> Report {
    let mut rep = Report::new(format!("audit:{}", r.claim), if r.passed() { "passed" } else { "failed" });
    rep.violated = !r.passed();
    rep.witnesses = r.violations.iter().chain(&r.counterexamples).map(finding_json).collect();
    rep.text.push(format!("  {}", r.statement));
    rep.text.push(format!("  source {}, {} instances", r.source, r.instances));
    for d in &r.directions {
        rep.text.push(format!(
            "  {}: {} confirmed, {} vacuous, {} violated",
            d.name, d.confirmed, d.vacuous, d.violated
        ));
    }
    if r.expectation != Expectation::NoViolations {
        rep.text.push(format!("  {} counterexamples", r.counterexample_count));
    }
    for f in r.violations.iter().chain(&r.counterexamples) {
        rep.text.push(format!("  instance {}: {}", f.instance, f.detail));
        for line in f.document.lines() {
            rep.text.push(format!("    {line}"));
        }
    }
    rep.details = json!({
        "claim": r.claim,
        "statement": r.statement,
        "expectation": r.expectation.name(),
        "source": r.source,
        "instances": r.instances,
        "directions": r.directions.iter().map(|d| json!({
            "direction": d.name,
            "vacuous": d.vacuous,
            "confirmed": d.confirmed,
            "violated": d.violated,
        })).collect::<Vec<_>>(),
        "violations": r.violation_count(),
        "counterexamples": r.counterexample_count,
    });
    rep
}

pub fn enumerate_report(space: &StateSpace, filters: &[FrameProperty], found: &[PossibilityCorrespondence]) -> Report {
    let mut rep = Report::new("enumerate", format!("{} correspondences", found.len()));
    let row = |b: &PossibilityCorrespondence| {
        (0..space.len())
            .map(|s| format!("{}: {}", space.name(s), space.format_event(b.at(s))))
            .collect::<Vec<_>>()
            .join("; ")
    };
    rep.text = found.iter().map(|b| format!("  {}", row(b))).collect();
    rep.details = json!({
        "states": space.len(),
        "filters": filters.iter().map(|f| f.name()).collect::<Vec<_>>(),
        "correspondences": found.iter().map(row).collect::<Vec<_>>(),
    });
    rep
}
