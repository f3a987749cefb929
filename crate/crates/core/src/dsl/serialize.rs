use std::fmt::Write;

use super::*;

fn names(items: &[Name], sep: &str) -> String {
    items.iter().map(|n| n.text.as_str()).collect::<Vec<_>>().join(sep)
}

fn set(s: &SetLit) -> String {
    format!("{{{}}}", names(&s.items, ", "))
}

/// Canonical text of a document. Parsing the output yields an equal
/// document, and serialising that again yields the same bytes.
pub fn serialize(doc: &ModelSpecDocument) -> String {
    let mut out = String::new();
    writeln!(out, "states {};", names(&doc.states, " ")).unwrap();
    for p in &doc.players {
        out.push('\n');
        writeln!(out, "player {} {{", p.name.text).unwrap();
        match &p.spec {
            OperatorSpec::Kripke(rows) => {
                out.push_str("  kripke {\n");
                for (s, b) in rows {
                    writeln!(out, "    {}: {};", s.text, set(b)).unwrap();
                }
            }
            OperatorSpec::Table(rows) | OperatorSpec::Core(rows) => {
                let kw = if matches!(p.spec, OperatorSpec::Table(_)) { "table" } else { "core" };
                writeln!(out, "  {kw} {{").unwrap();
                for (e, f) in rows {
                    writeln!(out, "    {}: {};", set(e), set(f)).unwrap();
                }
            }
        }
        out.push_str("  }\n}\n");
    }
    for s in &doc.signals {
        out.push('\n');
        writeln!(out, "signal {} : {} {{", s.name.text, set(&s.codomain)).unwrap();
        for (st, v) in &s.assignment {
            writeln!(out, "  {} -> {};", st.text, v.text).unwrap();
        }
        let fam: Vec<String> = s.family.iter().map(set).collect();
        writeln!(out, "}} family {{ {} }}", fam.join(" ")).unwrap();
    }
    if let Some(g) = &doc.game {
        out.push_str("\ngame {\n");
        for (p, acts) in &g.actions {
            writeln!(out, "  actions {}: {};", p.text, names(acts, " ")).unwrap();
        }
        for r in &g.ranks {
            writeln!(out, "  rank {} ({}) = {};", r.player.text, names(&r.profile, ", "), r.rank).unwrap();
        }
        for s in &g.strategies {
            writeln!(out, "  strategy {} {{", s.player.text).unwrap();
            for (st, a) in &s.moves {
                writeln!(out, "    {} -> {};", st.text, a.text).unwrap();
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
    }
    out
}
