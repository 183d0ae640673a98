//! Conditional overlaps, infeasibility, and the level-confluence verdict.
//!
//! A system is reported level-confluent when it is a 3-CTRS that is
//! properly oriented, right-stable, and almost orthogonal modulo
//! infeasibility. `NotApplicable` only says the criterion does not apply.

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexMap;
use serde::Serialize;

use crate::ctrs::{Condition, Ctrs, PropertyReport, Rule, Witness};
use crate::engine::{Bounds, Engine, EngineError};
use crate::term::{Position, Substitution, Term, Var};
use crate::unify::{is_variant, mgu, rename_apart, RenamingScope};

/// Two renamed-apart rules whose left-hand sides unify at a function
/// position of the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    /// 0-based indices into the system's rule list.
    pub rule1_index: usize,
    pub rule2_index: usize,
    pub rule1: Rule,
    pub rule2: Rule,
    pub pos: Position,
    pub mgu: Substitution,
}

impl Overlap {
    pub fn is_root(&self) -> bool {
        self.pos.is_root()
    }

    /// The combined instantiated conditions `c₁μ, c₂μ`.
    pub fn conditions(&self) -> Vec<Condition> {
        self.rule1
            .conds
            .iter()
            .chain(&self.rule2.conds)
            .map(|c| Condition::new(c.lhs.apply(&self.mgu), c.rhs.apply(&self.mgu)))
            .collect()
    }

    /// Variables of the instantiated overlap (lhs and conditions).
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut vs = self.rule1.lhs.apply(&self.mgu).vars();
        for c in self.conditions() {
            vs.extend(c.lhs.vars());
            vs.extend(c.rhs.vars());
        }
        vs
    }
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rules {} and {} at position {} with mgu {}",
            self.rule1_index + 1,
            self.rule2_index + 1,
            self.pos,
            self.mgu
        )
    }
}

/// Every conditional overlap of `ctrs`, ordered by rule pair and then by
/// position.
///
/// Root overlaps are symmetric, so for `i > j` the root overlap of rule `i`
/// with rule `j` is left out; its mirror `(j, i)` is listed. The root
/// overlap of a rule with its own variant is kept.
pub fn conditional_overlaps(ctrs: &Ctrs) -> Vec<Overlap> {
    let all_vars: BTreeSet<Var> = ctrs.rules().iter().flat_map(Rule::vars).collect();
    let base = RenamingScope::above(&all_vars);
    let mut out = Vec::new();
    for (i, r1) in ctrs.rules().iter().enumerate() {
        for (j, r2) in ctrs.rules().iter().enumerate() {
            let (rule1, scope) = rename_apart(r1, base);
            let (rule2, _) = rename_apart(r2, scope);
            for pos in rule1.lhs.function_positions() {
                if pos.is_root() && j < i {
                    continue;
                }
                let sub = rule1.lhs.subterm_at(&pos).expect("function position is valid");
                if let Some(mu) = mgu(sub, &rule2.lhs) {
                    out.push(Overlap {
                        rule1_index: i,
                        rule2_index: j,
                        rule1: rule1.clone(),
                        rule2: rule2.clone(),
                        pos,
                        mgu: mu,
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InfeasibilityReason {
    /// Some condition's right-hand side is incompatible with every reduct
    /// of its left-hand side, judged by the constructor skeleton.
    IF1,
    /// Two conditions share their left-hand side but demand distinct
    /// ground normal forms.
    IF2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Infeasible { reason: InfeasibilityReason, conditions: Vec<Condition> },
    Unknown,
}

impl Feasibility {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Feasibility::Infeasible { .. })
    }
}

/// Semi-decides infeasibility of an overlap; never claims feasibility.
///
/// Both tests are purely syntactic relative to the underlying TRS, so the
/// outcome does not depend on `_bounds`.
pub fn infeasible(o: &Overlap, ctrs: &Ctrs, _bounds: &Bounds) -> Feasibility {
    let conds = o.conditions();
    let mut known = o.vars();
    known.extend(ctrs.rules().iter().flat_map(Rule::vars));
    let mut scope = RenamingScope::above(&known);
    let ru: Vec<Term> = ctrs.rules().iter().map(|r| r.lhs.clone()).collect();
    for c in &conds {
        let (cap, next) = cap(&c.lhs, &ru, scope);
        scope = next;
        if mgu(&cap, &c.rhs).is_none() {
            return Feasibility::Infeasible { reason: InfeasibilityReason::IF1, conditions: vec![c.clone()] };
        }
    }
    for (i, c1) in conds.iter().enumerate() {
        for c2 in &conds[i + 1..] {
            if c1.lhs == c2.lhs
                && c1.rhs != c2.rhs
                && ctrs.is_ground_normal_form_ru(&c1.rhs)
                && ctrs.is_ground_normal_form_ru(&c2.rhs)
            {
                return Feasibility::Infeasible {
                    reason: InfeasibilityReason::IF2,
                    conditions: vec![c1.clone(), c2.clone()],
                };
            }
        }
    }
    Feasibility::Unknown
}

/// Constructor skeleton of `t`: every subterm that might be rewritten by
/// the underlying TRS, and every variable, becomes a fresh variable. Every
/// reduct of every instance of `t` is an instance of the result.
pub fn cap(t: &Term, lhss: &[Term], scope: RenamingScope) -> (Term, RenamingScope) {
    fn fresh(scope: &mut RenamingScope) -> Term {
        let v = Var::indexed("_", scope.next_index);
        scope.next_index += 1;
        Term::Var(v)
    }
    fn go(t: &Term, lhss: &[Term], scope: &mut RenamingScope) -> Term {
        match t {
            Term::Var(_) => fresh(scope),
            Term::Fun(f, args) => {
                let u = Term::Fun(f.clone(), args.iter().map(|a| go(a, lhss, scope)).collect());
                let may_rewrite = lhss.iter().any(|l| {
                    let (l, next) = crate::unify::rename_term(l, *scope);
                    *scope = next;
                    mgu(&u, &l).is_some()
                });
                if may_rewrite {
                    fresh(scope)
                } else {
                    u
                }
            }
        }
    }
    let mut scope = scope;
    let out = go(t, lhss, &mut scope);
    (out, scope)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Disposition {
    #[serde(rename = "root-variant")]
    RootVariant,
    #[serde(rename = "equal-rhs")]
    EqualRhs,
    #[serde(rename = "infeasible-IF1")]
    InfeasibleIF1,
    #[serde(rename = "infeasible-IF2")]
    InfeasibleIF2,
    #[serde(rename = "unknown")]
    Unknown,
}

impl Disposition {
    pub fn is_dispatched(self) -> bool {
        self != Disposition::Unknown
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Disposition::RootVariant => "root-variant",
            Disposition::EqualRhs => "equal-rhs",
            Disposition::InfeasibleIF1 => "infeasible-IF1",
            Disposition::InfeasibleIF2 => "infeasible-IF2",
            Disposition::Unknown => "unknown",
        }
    }
}

/// One overlap as it appears in a report. Rule numbers are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapReport {
    pub rules: [usize; 2],
    pub pos: Position,
    pub disposition: Disposition,
}

pub fn dispose(o: &Overlap, ctrs: &Ctrs, bounds: &Bounds) -> Disposition {
    if o.is_root() {
        if is_variant(&o.rule1, &o.rule2) {
            return Disposition::RootVariant;
        }
        if o.rule1.rhs.apply(&o.mgu) == o.rule2.rhs.apply(&o.mgu) {
            return Disposition::EqualRhs;
        }
    }
    match infeasible(o, ctrs, bounds) {
        Feasibility::Infeasible { reason: InfeasibilityReason::IF1, .. } => Disposition::InfeasibleIF1,
        Feasibility::Infeasible { reason: InfeasibilityReason::IF2, .. } => Disposition::InfeasibleIF2,
        Feasibility::Unknown => Disposition::Unknown,
    }
}

/// Left-linear, and every overlap infeasible or a harmless root overlap.
pub fn check_almost_orthogonal(ctrs: &Ctrs, bounds: &Bounds) -> (PropertyReport, Vec<OverlapReport>) {
    let mut witnesses = ctrs.check_left_linear().witnesses;
    let mut reports = Vec::new();
    for o in conditional_overlaps(ctrs) {
        let d = dispose(&o, ctrs, bounds);
        if !d.is_dispatched() {
            let kind = if o.is_root() { "root overlap with distinct right-hand sides" } else { "non-root overlap" };
            witnesses.push(Witness::new(
                o.rule1_index,
                format!("{kind} with rule {} at position {} (mgu {}) is not shown infeasible", o.rule2_index + 1, o.pos, o.mgu),
            ));
        }
        reports.push(OverlapReport { rules: [o.rule1_index + 1, o.rule2_index + 1], pos: o.pos, disposition: d });
    }
    (PropertyReport::from_witnesses(witnesses), reports)
}

pub const THREE_CTRS: &str = "three_ctrs";
pub const LEFT_LINEAR: &str = "left_linear";
pub const PROPERLY_ORIENTED: &str = "properly_oriented";
pub const RIGHT_STABLE: &str = "right_stable";
pub const ALMOST_ORTHOGONAL: &str = "almost_orthogonal";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub properties: IndexMap<&'static str, PropertyReport>,
    pub overlaps: Vec<OverlapReport>,
    pub bounds: Bounds,
    pub truncated: bool,
}

impl Evidence {
    /// Names of the properties that fail.
    pub fn failing(&self) -> Vec<&'static str> {
        self.properties.iter().filter(|(_, r)| !r.holds).map(|(k, _)| *k).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    LevelConfluent(Evidence),
    NotApplicable(Evidence),
}

impl Verdict {
    pub fn evidence(&self) -> &Evidence {
        match self {
            Verdict::LevelConfluent(e) | Verdict::NotApplicable(e) => e,
        }
    }

    pub fn is_level_confluent(&self) -> bool {
        matches!(self, Verdict::LevelConfluent(_))
    }
}

/// Every property the verdict depends on, in report order.
pub fn property_reports(ctrs: &Ctrs, bounds: &Bounds) -> (IndexMap<&'static str, PropertyReport>, Vec<OverlapReport>) {
    let (ao, overlaps) = check_almost_orthogonal(ctrs, bounds);
    let properties = IndexMap::from([
        (THREE_CTRS, ctrs.check_three_ctrs()),
        (LEFT_LINEAR, ctrs.check_left_linear()),
        (PROPERLY_ORIENTED, ctrs.check_properly_oriented()),
        (RIGHT_STABLE, ctrs.check_right_stable()),
        (ALMOST_ORTHOGONAL, ao),
    ]);
    (properties, overlaps)
}

pub fn check_level_confluence(ctrs: &Ctrs, bounds: &Bounds) -> Verdict {
    let (properties, overlaps) = property_reports(ctrs, bounds);
    let all_hold = properties.values().all(|r| r.holds);
    let evidence = Evidence { properties, overlaps, bounds: *bounds, truncated: false };
    if all_hold {
        Verdict::LevelConfluent(evidence)
    } else {
        Verdict::NotApplicable(evidence)
    }
}

/// A peak `left ⇐_m seed ⇒_n right` for which no common reduct
/// `left ⇒_n v ⇐_m right` was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Peak {
    pub seed: Term,
    pub left: Term,
    pub right: Term,
    pub m: usize,
    pub n: usize,
    /// Set when some search involved in this peak hit a bound, so the
    /// missing join may be an artefact of the bounds.
    pub truncated: bool,
}

impl fmt::Display for Peak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⇐{} {} ⇒{} {}", self.left, self.m, self.seed, self.n, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiamondReport {
    pub counterexample: Option<Peak>,
    pub peaks_checked: usize,
    pub truncated: bool,
}

/// Searches for a peak of extended parallel steps at levels `m` and `n`
/// that does not close in one step on each side.
pub fn diamond_fuzz(engine: &Engine<'_>, seeds: &[Term], m: usize, n: usize) -> Result<DiamondReport, EngineError> {
    let mut peaks = 0;
    let mut truncated = false;
    for s in seeds {
        let lefts = engine.epar_successors(s, m)?;
        let rights = engine.epar_successors(s, n)?;
        truncated |= lefts.truncated || rights.truncated;
        for t in lefts.value.keys() {
            let from_t = engine.epar_successors(t, n)?;
            for u in rights.value.keys() {
                peaks += 1;
                if t == u {
                    continue;
                }
                let from_u = engine.epar_successors(u, m)?;
                let (small, large) = if from_t.value.len() <= from_u.value.len() {
                    (&from_t.value, &from_u.value)
                } else {
                    (&from_u.value, &from_t.value)
                };
                let joined = small.keys().any(|v| large.contains_key(v));
                let peak_truncated = lefts.truncated || rights.truncated || from_t.truncated || from_u.truncated;
                truncated |= peak_truncated;
                if !joined {
                    return Ok(DiamondReport {
                        counterexample: Some(Peak {
                            seed: s.clone(),
                            left: t.clone(),
                            right: u.clone(),
                            m,
                            n,
                            truncated: peak_truncated,
                        }),
                        peaks_checked: peaks,
                        truncated,
                    });
                }
            }
        }
    }
    Ok(DiamondReport { counterexample: None, peaks_checked: peaks, truncated })
}
