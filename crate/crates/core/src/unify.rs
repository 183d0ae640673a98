//! Syntactic unification, renaming apart, and variant detection.

use std::collections::BTreeSet;

use crate::ctrs::Rule;
use crate::term::{match_term, Substitution, Symbol, Term, Var};

/// Most general unifier of `s` and `t`, or `None` on clash or occurs-check
/// failure. The result is idempotent.
pub fn mgu(s: &Term, t: &Term) -> Option<Substitution> {
    mgu_pairs(std::iter::once((s, t)))
}

/// Simultaneous unifier of every pair.
pub fn mgu_pairs<'a>(pairs: impl IntoIterator<Item = (&'a Term, &'a Term)>) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    for (s, t) in pairs {
        unify_into(s, t, &mut sigma)?;
    }
    Some(sigma)
}

fn unify_into(s: &Term, t: &Term, sigma: &mut Substitution) -> Option<()> {
    let s = s.apply(sigma);
    let t = t.apply(sigma);
    match (&s, &t) {
        _ if s == t => Some(()),
        (Term::Var(v), u) | (u, Term::Var(v)) => {
            if u.contains_var(v) {
                return None;
            }
            *sigma = sigma.compose(&Substitution::from_pairs([(v.clone(), u.clone())]));
            Some(())
        }
        (Term::Fun(f, xs), Term::Fun(g, ys)) => {
            if f != g {
                return None;
            }
            for (x, y) in xs.iter().zip(ys) {
                unify_into(x, y, sigma)?;
            }
            Some(())
        }
    }
}

/// Source of fresh variable indices. Each renaming consumes a block of
/// indices and returns the advanced scope.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenamingScope {
    pub next_index: u32,
}

impl RenamingScope {
    pub fn new() -> Self {
        RenamingScope::default()
    }

    /// A scope whose indices lie above every index used by `vars`.
    pub fn above<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Self {
        let next_index = vars.into_iter().filter_map(Var::index).max().map_or(0, |i| i + 1);
        RenamingScope { next_index }
    }

    fn renaming(self, vars: &[Var]) -> (impl Fn(&Var) -> Var + '_, RenamingScope) {
        let base = self.next_index;
        let f = move |v: &Var| {
            let k = vars.iter().position(|w| w == v).expect("renaming covers all variables");
            v.with_index(base + k as u32)
        };
        (f, RenamingScope { next_index: base + vars.len() as u32 })
    }
}

/// Injectively renames all variables of `rule` to fresh indexed ones.
pub fn rename_apart(rule: &Rule, scope: RenamingScope) -> (Rule, RenamingScope) {
    let vars = rule_vars_ordered(rule);
    let (f, next) = scope.renaming(&vars);
    (rule.map_vars(&f), next)
}

pub fn rename_term(t: &Term, scope: RenamingScope) -> (Term, RenamingScope) {
    let vars = t.vars_ordered();
    let (f, next) = scope.renaming(&vars);
    (t.map_vars(&f), next)
}

fn rule_vars_ordered(rule: &Rule) -> Vec<Var> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in rule.terms() {
        t.visit_vars(&mut |v| {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        });
    }
    out
}

/// Packs a rule into a single term so that matching covers lhs, rhs and the
/// ordered condition list at once.
fn rule_as_term(rule: &Rule) -> Term {
    let args: Vec<Term> = rule.terms().cloned().collect();
    Term::Fun(Symbol::new("\u{0}rule", args.len()), args)
}

/// True when some injective renaming maps `r1` onto `r2`.
pub fn is_variant(r1: &Rule, r2: &Rule) -> bool {
    if r1.conds.len() != r2.conds.len() {
        return false;
    }
    let Some(sigma) = match_term(&rule_as_term(r1), &rule_as_term(r2)) else {
        return false;
    };
    let mut images = BTreeSet::new();
    // unchanged variables are absent from sigma; collect them as self-images
    let r1_vars = r1.vars();
    for v in &r1_vars {
        match sigma.get(v) {
            None => {
                if !images.insert(v.clone()) {
                    return false;
                }
            }
            Some(Term::Var(w)) => {
                if !images.insert(w.clone()) {
                    return false;
                }
            }
            Some(_) => return false,
        }
    }
    true
}

/// Variant check on plain terms.
pub fn is_term_variant(s: &Term, t: &Term) -> bool {
    is_variant(&Rule::unconditional(s.clone(), s.clone()), &Rule::unconditional(t.clone(), t.clone()))
}
