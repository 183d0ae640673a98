//! Human-readable and JSON renderings of analysis results.

use std::fmt::Write;

use indexmap::IndexMap;
use serde_json::{json, Value};

use crate::analysis::{DiamondReport, Overlap, OverlapReport, Verdict};
use crate::ctrs::PropertyReport;
use crate::engine::{Bounded, Bounds, Engine, EngineError, EparStep};
use crate::term::Term;

pub const VERDICT_YES: &str = "YES (level-confluent)";
pub const VERDICT_MAYBE: &str = "MAYBE (level-confluence criterion does not apply)";

/// The machine-readable report for `check`:
/// `{verdict, properties, overlaps, bounds, truncated}`.
pub fn verdict_json(v: &Verdict) -> Value {
    let e = v.evidence();
    json!({
        "verdict": if v.is_level_confluent() { "LEVEL_CONFLUENT" } else { "NOT_APPLICABLE" },
        "properties": e.properties,
        "overlaps": e.overlaps,
        "bounds": e.bounds,
        "truncated": e.truncated,
    })
}

pub fn render_verdict(v: &Verdict) -> String {
    let e = v.evidence();
    let mut out = String::new();
    out.push_str(if v.is_level_confluent() { VERDICT_YES } else { VERDICT_MAYBE });
    out.push('\n');
    out.push_str(&render_properties(&e.properties));
    out.push_str(&render_overlap_reports(&e.overlaps));
    out
}

pub fn render_properties(props: &IndexMap<&'static str, PropertyReport>) -> String {
    let mut out = String::new();
    for (name, r) in props {
        let _ = writeln!(out, "  {name}: {}", if r.holds { "holds" } else { "fails" });
        for w in &r.witnesses {
            let _ = writeln!(out, "    rule {}: {}", w.rule, w.reason);
        }
    }
    out
}

pub fn properties_json(props: &IndexMap<&'static str, PropertyReport>, ctrs_type: u8) -> Value {
    json!({ "type": ctrs_type, "properties": props })
}

fn render_overlap_reports(overlaps: &[OverlapReport]) -> String {
    let mut out = String::new();
    if overlaps.is_empty() {
        out.push_str("  overlaps: none\n");
        return out;
    }
    out.push_str("  overlaps:\n");
    for o in overlaps {
        let pos = if o.pos.is_root() { "ε".to_string() } else { o.pos.to_string() };
        let _ = writeln!(out, "    rules {} and {} at {pos}: {}", o.rules[0], o.rules[1], o.disposition.as_str());
    }
    out
}

/// Detailed overlap listing for the `overlaps` command.
pub fn overlaps_json(overlaps: &[(Overlap, OverlapReport)]) -> Value {
    Value::Array(
        overlaps
            .iter()
            .map(|(o, r)| {
                json!({
                    "rules": r.rules,
                    "pos": r.pos,
                    "disposition": r.disposition,
                    "rule1": o.rule1.to_string(),
                    "rule2": o.rule2.to_string(),
                    "mgu": o.mgu,
                    "conditions": o.conditions().iter().map(|c| format!("{} == {}", c.lhs, c.rhs)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn render_overlaps(overlaps: &[(Overlap, OverlapReport)]) -> String {
    let mut out = String::new();
    if overlaps.is_empty() {
        out.push_str("no overlaps\n");
    }
    for (o, r) in overlaps {
        let _ = writeln!(out, "{o}: {}", r.disposition.as_str());
        let _ = writeln!(out, "  {}", o.rule1);
        let _ = writeln!(out, "  {}", o.rule2);
    }
    out
}

pub fn diamond_json(r: &DiamondReport, bounds: &Bounds) -> Value {
    json!({
        "counterexample": r.counterexample,
        "peaks_checked": r.peaks_checked,
        "bounds": bounds,
        "truncated": r.truncated,
    })
}

pub fn render_diamond(r: &DiamondReport) -> String {
    match &r.counterexample {
        None => format!(
            "no counterexample ({} peaks checked{})\n",
            r.peaks_checked,
            if r.truncated { ", some searches truncated" } else { "" }
        ),
        Some(p) => format!(
            "counterexample: {p}\n  no common reduct found{}\n",
            if p.truncated { " (search truncated: bounds may be too tight)" } else { " (all searches complete)" }
        ),
    }
}

/// Terms reachable by `→_level` within a step budget, with those among them
/// that have no `→_level` successor.
pub struct Reachable {
    pub term: Term,
    pub level: usize,
    pub steps: usize,
    pub terms: Bounded<Vec<Term>>,
    pub normal_forms: Vec<Term>,
}

impl Reachable {
    pub fn compute(engine: &Engine<'_>, term: &Term, level: usize, steps: usize) -> Result<Self, EngineError> {
        let found = engine.reach(term, level, steps)?;
        let mut normal_forms = Vec::new();
        let mut truncated = found.truncated;
        for t in &found.value {
            let succ = engine.cstep_n(t, level)?;
            truncated |= succ.truncated;
            if succ.value.is_empty() {
                normal_forms.push(t.clone());
            }
        }
        Ok(Reachable {
            term: term.clone(),
            level,
            steps,
            terms: Bounded { value: found.value.into_iter().collect(), truncated },
            normal_forms,
        })
    }
}

pub fn reach_json(r: &Reachable, bounds: &Bounds) -> Value {
    json!({
        "term": r.term,
        "level": r.level,
        "steps": r.steps,
        "reachable": r.terms.value,
        "normal_forms": r.normal_forms,
        "bounds": bounds,
        "truncated": r.terms.truncated,
    })
}

pub fn render_reach(r: &Reachable) -> String {
    let mut out = format!("{} term(s) reachable from {} at level {} in at most {} step(s)", r.terms.value.len(), r.term, r.level, r.steps);
    out.push_str(if r.terms.truncated { " (truncated)\n" } else { "\n" });
    for t in &r.terms.value {
        let mark = if r.normal_forms.contains(t) { "  [normal form]" } else { "" };
        let _ = writeln!(out, "  {t}{mark}");
    }
    out
}

fn epar_step_json(w: &EparStep) -> Value {
    let holes: Vec<Value> = w
        .sources
        .iter()
        .zip(&w.targets)
        .zip(&w.kinds)
        .map(|((s, t), k)| json!({ "source": s, "target": t, "kind": k }))
        .collect();
    json!({ "context": w.ctx.to_string(), "holes": holes })
}

pub fn epar_json(term: &Term, level: usize, succ: &Bounded<IndexMap<Term, EparStep>>, bounds: &Bounds) -> Value {
    let list: Vec<Value> = succ.value.iter().map(|(u, w)| json!({ "term": u, "witness": epar_step_json(w) })).collect();
    json!({
        "term": term,
        "level": level,
        "successors": list,
        "bounds": bounds,
        "truncated": succ.truncated,
    })
}

pub fn render_epar(term: &Term, level: usize, succ: &Bounded<IndexMap<Term, EparStep>>) -> String {
    let mut out = format!("{} extended parallel successor(s) of {term} at level {level}", succ.value.len());
    out.push_str(if succ.truncated { " (truncated)\n" } else { "\n" });
    for (u, w) in &succ.value {
        let _ = writeln!(out, "  {u}");
        let _ = writeln!(out, "    via {w}");
    }
    out
}
