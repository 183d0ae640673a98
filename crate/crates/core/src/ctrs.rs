//! Oriented conditional rewrite systems and their syntactic properties.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::term::{match_term, Symbol, Term, Var};

/// An oriented condition `lhs ≈ rhs`, read as `lhs σ →* rhs σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Condition {
    pub lhs: Term,
    pub rhs: Term,
}

impl Condition {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Condition { lhs, rhs }
    }
}

/// `lhs → rhs ⇐ s₁ ≈ t₁, …, s_k ≈ t_k`; the condition order matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rule {
    pub lhs: Term,
    pub rhs: Term,
    pub conds: Vec<Condition>,
}

impl Rule {
    pub fn new(lhs: Term, rhs: Term, conds: Vec<Condition>) -> Self {
        Rule { lhs, rhs, conds }
    }

    pub fn unconditional(lhs: Term, rhs: Term) -> Self {
        Rule::new(lhs, rhs, Vec::new())
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.lhs.collect_vars(&mut out);
        self.rhs.collect_vars(&mut out);
        for c in &self.conds {
            c.lhs.collect_vars(&mut out);
            c.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn cond_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for c in &self.conds {
            c.lhs.collect_vars(&mut out);
            c.rhs.collect_vars(&mut out);
        }
        out
    }

    pub fn map_vars(&self, f: &impl Fn(&Var) -> Var) -> Rule {
        Rule {
            lhs: self.lhs.map_vars(f),
            rhs: self.rhs.map_vars(f),
            conds: self.conds.iter().map(|c| Condition::new(c.lhs.map_vars(f), c.rhs.map_vars(f))).collect(),
        }
    }

    /// Every term of the rule in a fixed order: lhs, rhs, then each
    /// condition's two sides.
    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        [&self.lhs, &self.rhs].into_iter().chain(self.conds.iter().flat_map(|c| [&c.lhs, &c.rhs]))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)?;
        for (i, c) in self.conds.iter().enumerate() {
            f.write_str(if i == 0 { " | " } else { ", " })?;
            write!(f, "{} == {}", c.lhs, c.rhs)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CtrsError {
    #[error("rule {rule}: left-hand side is a variable")]
    VariableLhs { rule: usize },
    #[error("symbol {name} used with arity {found}, previously {expected}")]
    ArityConflict { name: String, expected: usize, found: usize },
}

/// A conditional term rewrite system with oriented conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ctrs {
    signature: BTreeSet<Symbol>,
    rules: Vec<Rule>,
}

impl Ctrs {
    pub fn new(rules: Vec<Rule>) -> Result<Self, CtrsError> {
        Self::with_signature(BTreeSet::new(), rules)
    }

    /// Builds a system over `extra` plus every symbol occurring in `rules`.
    pub fn with_signature(extra: BTreeSet<Symbol>, rules: Vec<Rule>) -> Result<Self, CtrsError> {
        let mut arities: BTreeMap<String, usize> = BTreeMap::new();
        let mut signature = BTreeSet::new();
        let all = extra.into_iter().chain(rules.iter().flat_map(|r| r.terms().flat_map(Term::symbols)));
        for sym in all {
            match arities.get(sym.name()) {
                Some(&expected) if expected != sym.arity() => {
                    return Err(CtrsError::ArityConflict {
                        name: sym.name().to_string(),
                        expected,
                        found: sym.arity(),
                    })
                }
                Some(_) => {}
                None => {
                    arities.insert(sym.name().to_string(), sym.arity());
                    signature.insert(sym);
                }
            }
        }
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.as_var().is_some() {
                return Err(CtrsError::VariableLhs { rule: i + 1 });
            }
        }
        Ok(Ctrs { signature, rules })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn signature(&self) -> &BTreeSet<Symbol> {
        &self.signature
    }

    pub fn symbol(&self, name: &str) -> Option<&Symbol> {
        self.signature.iter().find(|s| s.name() == name)
    }

    /// Root symbols of rule left-hand sides.
    pub fn defined_symbols(&self) -> BTreeSet<Symbol> {
        self.rules.iter().filter_map(|r| r.lhs.root_symbol().cloned()).collect()
    }

    pub fn constructors(&self) -> BTreeSet<Symbol> {
        let defined = self.defined_symbols();
        self.signature.iter().filter(|s| !defined.contains(*s)).cloned().collect()
    }

    /// The rules with their conditions erased.
    pub fn underlying_trs(&self) -> Vec<(Term, Term)> {
        self.rules.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect()
    }

    /// Smallest `k` such that this is a k-CTRS.
    pub fn classify_type(&self) -> u8 {
        self.rules.iter().map(rule_type).max().unwrap_or(1)
    }

    pub fn is_ground_normal_form_ru(&self, t: &Term) -> bool {
        t.is_ground() && !self.has_ru_redex(t)
    }

    fn has_ru_redex(&self, t: &Term) -> bool {
        match t {
            Term::Var(_) => false,
            Term::Fun(_, args) => {
                self.rules.iter().any(|r| match_term(&r.lhs, t).is_some()) || args.iter().any(|a| self.has_ru_redex(a))
            }
        }
    }

    pub fn check_three_ctrs(&self) -> PropertyReport {
        PropertyReport::from_witnesses(
            self.rules
                .iter()
                .enumerate()
                .filter(|(_, r)| rule_type(r) == 4)
                .map(|(i, r)| {
                    let lhs_conds: BTreeSet<Var> = r.lhs.vars().union(&r.cond_vars()).cloned().collect();
                    let extra: Vec<String> = r.rhs.vars().difference(&lhs_conds).map(|v| v.to_string()).collect();
                    Witness::new(i, format!("right-hand side variables {{{}}} occur neither in the left-hand side nor in the conditions", extra.join(", ")))
                }),
        )
    }

    pub fn check_left_linear(&self) -> PropertyReport {
        PropertyReport::from_witnesses(
            self.rules
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.lhs.is_linear())
                .map(|(i, r)| Witness::new(i, format!("left-hand side {} is not linear", r.lhs))),
        )
    }

    /// Rules whose right-hand side has extra variables must bind every
    /// variable of `s_i` through `ℓ` or an earlier `t_j`.
    pub fn check_properly_oriented(&self) -> PropertyReport {
        let mut witnesses = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let mut bound = r.lhs.vars();
            if r.rhs.vars().is_subset(&bound) {
                continue;
            }
            for (k, c) in r.conds.iter().enumerate() {
                let unbound: Vec<String> = c.lhs.vars().difference(&bound).map(|v| v.to_string()).collect();
                if !unbound.is_empty() {
                    witnesses.push(Witness::new(
                        i,
                        format!("condition {}: variables {{{}}} of {} are not bound by the left-hand side or earlier condition right-hand sides", k + 1, unbound.join(", "), c.lhs),
                    ));
                }
                c.rhs.collect_vars(&mut bound);
            }
        }
        PropertyReport::from_witnesses(witnesses)
    }

    /// Each `t_i` shares no variable with `ℓ, s₁…s_i, t₁…t_{i−1}`, and is a
    /// linear constructor term or a ground normal form of the underlying TRS.
    pub fn check_right_stable(&self) -> PropertyReport {
        let defined = self.defined_symbols();
        let mut witnesses = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let mut seen = r.lhs.vars();
            for (k, c) in r.conds.iter().enumerate() {
                c.lhs.collect_vars(&mut seen);
                let rhs_vars = c.rhs.vars();
                let shared: Vec<String> = rhs_vars.intersection(&seen).map(|v| v.to_string()).collect();
                if !shared.is_empty() {
                    witnesses.push(Witness::new(
                        i,
                        format!("condition {}: {} shares variables {{{}}} with earlier parts of the rule", k + 1, c.rhs, shared.join(", ")),
                    ));
                }
                let linear_constructor = c.rhs.is_linear() && c.rhs.is_constructor_term(&defined);
                if !linear_constructor && !self.is_ground_normal_form_ru(&c.rhs) {
                    witnesses.push(Witness::new(
                        i,
                        format!("condition {}: {} is neither a linear constructor term nor a ground normal form", k + 1, c.rhs),
                    ));
                }
                seen.extend(rhs_vars);
            }
        }
        PropertyReport::from_witnesses(witnesses)
    }
}

fn rule_type(r: &Rule) -> u8 {
    let lhs = r.lhs.vars();
    let rhs = r.rhs.vars();
    let conds = r.cond_vars();
    if rhs.is_subset(&lhs) && conds.is_subset(&lhs) {
        1
    } else if rhs.is_subset(&lhs) {
        2
    } else if rhs.iter().all(|v| lhs.contains(v) || conds.contains(v)) {
        3
    } else {
        4
    }
}

impl fmt::Display for Ctrs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// A failure explanation tied to a rule (1-based number).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub rule: usize,
    pub reason: String,
}

impl Witness {
    /// `index` is 0-based; the stored rule number is 1-based.
    pub fn new(index: usize, reason: String) -> Self {
        Witness { rule: index + 1, reason }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl PropertyReport {
    pub fn from_witnesses(witnesses: impl IntoIterator<Item = Witness>) -> Self {
        let witnesses: Vec<Witness> = witnesses.into_iter().collect();
        PropertyReport { holds: witnesses.is_empty(), witnesses }
    }
}
