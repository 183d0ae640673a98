//! Bounded executable semantics of level-indexed conditional rewriting.
//!
//! `R_0` is empty and `R_{n+1}` holds the instances `ℓσ → rσ` of rules whose
//! conditions `sσ →* tσ` hold in `R_n`. On top of the root relation the
//! engine provides one-step rewriting `→_n`, bounded reachability `→*_n`,
//! and extended parallel steps `⇻_n`: a multihole context whose holes each
//! carry either an `R_n` root step or an `→*_{n−1}` sequence.
//!
//! Every search is capped by [`Bounds`]. Answers are sound; whenever a cap
//! cut a search short the result carries `truncated = true`.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::rc::Rc;

use indexmap::{IndexMap, IndexSet};
use serde::Serialize;
use thiserror::Error;

use crate::ctrs::{Condition, Ctrs};
use crate::mctxt::{Mctxt, MctxtError};
use crate::term::{match_extend, match_term, Substitution, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    /// Highest level computed; deeper levels are answered at this level and
    /// flagged as truncated.
    pub max_level: usize,
    /// Longest rewrite sequence explored by a reachability search.
    pub max_depth: usize,
    /// Largest set of terms (or successors) a single search may collect.
    pub max_terms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_level: 4, max_depth: 16, max_terms: 10_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("rule {rule}: condition {condition} uses unbound variables {{{vars}}}; conditions must be solvable left to right")]
    UnboundConditionVars { rule: usize, condition: usize, vars: String },
    #[error("rule {rule}: right-hand side variables {{{vars}}} are not bound by the left-hand side or the conditions")]
    UnboundRhsVars { rule: usize, vars: String },
    #[error(transparent)]
    Context(#[from] MctxtError),
}

/// A search result together with a flag telling whether a bound was hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounded<T> {
    pub value: T,
    pub truncated: bool,
}

impl<T> Bounded<T> {
    pub fn exact(value: T) -> Self {
        Bounded { value, truncated: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HoleKind {
    /// `(source, target) ∈ R_n`.
    RootStep,
    /// `source →*_{n−1} target`.
    BelowLevel,
}

/// Witness for `fill(ctx, sources) ⇻_level fill(ctx, targets)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EparStep {
    pub level: usize,
    pub ctx: Mctxt,
    pub sources: Vec<Term>,
    pub targets: Vec<Term>,
    pub kinds: Vec<HoleKind>,
}

impl EparStep {
    /// The zero-hole step `t ⇻ t`.
    pub fn trivial(t: &Term, level: usize) -> Self {
        EparStep { level, ctx: Mctxt::of_term(t), sources: Vec::new(), targets: Vec::new(), kinds: Vec::new() }
    }

    pub fn source(&self) -> Result<Term, MctxtError> {
        self.ctx.fill(&self.sources)
    }

    pub fn target(&self) -> Result<Term, MctxtError> {
        self.ctx.fill(&self.targets)
    }

    pub fn hole_count(&self) -> usize {
        self.kinds.len()
    }
}

impl fmt::Display for EparStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx)?;
        for ((s, t), k) in self.sources.iter().zip(&self.targets).zip(&self.kinds) {
            let arrow = match k {
                HoleKind::RootStep => format!("→R{}", self.level),
                HoleKind::BelowLevel => format!("→*{}", self.level.saturating_sub(1)),
            };
            write!(f, " [{s} {arrow} {t}]")?;
        }
        Ok(())
    }
}

type Successors = IndexMap<Term, EparStep>;
type Cache<T> = RefCell<HashMap<(Term, usize), Rc<Bounded<T>>>>;

/// Caching evaluator for one system under fixed bounds.
pub struct Engine<'a> {
    ctrs: &'a Ctrs,
    bounds: Bounds,
    root_cache: Cache<IndexSet<Term>>,
    star_cache: Cache<IndexSet<Term>>,
    epar_cache: Cache<Successors>,
}

impl<'a> Engine<'a> {
    pub fn new(ctrs: &'a Ctrs, bounds: Bounds) -> Self {
        Engine {
            ctrs,
            bounds,
            root_cache: RefCell::default(),
            star_cache: RefCell::default(),
            epar_cache: RefCell::default(),
        }
    }

    pub fn ctrs(&self) -> &Ctrs {
        self.ctrs
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    fn clamp(&self, n: usize) -> (usize, bool) {
        if n > self.bounds.max_level {
            (self.bounds.max_level, true)
        } else {
            (n, false)
        }
    }

    /// All `u` with `(t, u) ∈ R_n`.
    pub fn root_steps(&self, t: &Term, n: usize) -> Result<Rc<Bounded<IndexSet<Term>>>, EngineError> {
        let (n, clamped) = self.clamp(n);
        let key = (t.clone(), n);
        if let Some(hit) = self.root_cache.borrow().get(&key) {
            return Ok(mark(hit.clone(), clamped));
        }
        let mut out = Bounded::exact(IndexSet::new());
        if n > 0 {
            for (i, rule) in self.ctrs.rules().iter().enumerate() {
                let Some(sigma) = match_term(&rule.lhs, t) else { continue };
                let sols = self.solve(Some(i), &rule.conds, &sigma, n - 1)?;
                out.truncated |= sols.truncated;
                for s in &sols.value {
                    let unbound: Vec<String> = rule.rhs.vars().into_iter().filter(|v| !s.contains(v)).map(|v| v.to_string()).collect();
                    if !unbound.is_empty() {
                        return Err(EngineError::UnboundRhsVars { rule: i + 1, vars: unbound.join(", ") });
                    }
                    out.value.insert(rule.rhs.apply(s));
                }
            }
        }
        let out = Rc::new(out);
        self.root_cache.borrow_mut().insert(key, out.clone());
        Ok(mark(out, clamped))
    }

    /// Extensions of `sigma` satisfying `conds` left to right at level `n`:
    /// each instantiated condition lhs is reduced within bounds and the rhs
    /// is matched against every reduct.
    pub fn solve_conditions(
        &self,
        conds: &[Condition],
        sigma: &Substitution,
        n: usize,
    ) -> Result<Bounded<Vec<Substitution>>, EngineError> {
        self.solve(None, conds, sigma, n)
    }

    fn solve(
        &self,
        rule: Option<usize>,
        conds: &[Condition],
        sigma: &Substitution,
        n: usize,
    ) -> Result<Bounded<Vec<Substitution>>, EngineError> {
        let mut current = vec![sigma.clone()];
        let mut truncated = false;
        let mut bound: BTreeSet<Var> = sigma.domain().cloned().collect();
        for (k, cond) in conds.iter().enumerate() {
            let unbound: Vec<String> = cond.lhs.vars().difference(&bound).map(|v| v.to_string()).collect();
            if !unbound.is_empty() {
                return Err(EngineError::UnboundConditionVars {
                    rule: rule.map_or(0, |i| i + 1),
                    condition: k + 1,
                    vars: unbound.join(", "),
                });
            }
            cond.rhs.collect_vars(&mut bound);
            if current.is_empty() {
                continue;
            }
            let mut next: IndexSet<Substitution> = IndexSet::new();
            for s in &current {
                let reach = self.cstep_star(&cond.lhs.apply(s), n)?;
                truncated |= reach.truncated;
                for u in &reach.value {
                    if let Some(ext) = match_extend(&cond.rhs, u, s) {
                        next.insert(ext);
                    }
                }
            }
            current = next.into_iter().collect();
        }
        Ok(Bounded { value: current, truncated })
    }

    /// One-step reducts `t →_n u`, rewriting at every function position.
    pub fn cstep_n(&self, t: &Term, n: usize) -> Result<Bounded<IndexSet<Term>>, EngineError> {
        let mut out = Bounded::exact(IndexSet::new());
        for p in t.function_positions() {
            let sub = t.subterm_at(&p).expect("function position is valid");
            let roots = self.root_steps(sub, n)?;
            out.truncated |= roots.truncated;
            for u in &roots.value {
                out.value.insert(t.replace_at(&p, u.clone()).expect("function position is valid"));
            }
        }
        Ok(out)
    }

    /// Terms reachable from `t` in at most `max_depth` steps of `→_n`,
    /// breadth first; always contains `t`.
    pub fn cstep_star(&self, t: &Term, n: usize) -> Result<Rc<Bounded<IndexSet<Term>>>, EngineError> {
        let (n, clamped) = self.clamp(n);
        let key = (t.clone(), n);
        if let Some(hit) = self.star_cache.borrow().get(&key) {
            return Ok(mark(hit.clone(), clamped));
        }
        let out = Rc::new(self.bfs(t, n, self.bounds.max_depth)?);
        self.star_cache.borrow_mut().insert(key, out.clone());
        Ok(mark(out, clamped))
    }

    /// Breadth-first `→_n` search from `t` with an explicit depth cap.
    pub fn reach(&self, t: &Term, n: usize, max_depth: usize) -> Result<Bounded<IndexSet<Term>>, EngineError> {
        let (n, clamped) = self.clamp(n);
        let mut r = self.bfs(t, n, max_depth)?;
        r.truncated |= clamped;
        Ok(r)
    }

    fn bfs(&self, t: &Term, n: usize, max_depth: usize) -> Result<Bounded<IndexSet<Term>>, EngineError> {
        let mut visited = IndexSet::from([t.clone()]);
        let mut truncated = false;
        if n == 0 {
            return Ok(Bounded { value: visited, truncated });
        }
        let mut frontier = vec![t.clone()];
        let mut depth = 0;
        while !frontier.is_empty() {
            if depth == max_depth {
                // anything new beyond the depth cap means the answer is partial
                for u in &frontier {
                    let succ = self.cstep_n(u, n)?;
                    if succ.truncated || succ.value.iter().any(|v| !visited.contains(v)) {
                        truncated = true;
                        break;
                    }
                }
                break;
            }
            let mut next = Vec::new();
            'outer: for u in &frontier {
                let succ = self.cstep_n(u, n)?;
                truncated |= succ.truncated;
                for v in succ.value {
                    if visited.contains(&v) {
                        continue;
                    }
                    if visited.len() >= self.bounds.max_terms {
                        truncated = true;
                        next.clear();
                        break 'outer;
                    }
                    visited.insert(v.clone());
                    next.push(v);
                }
            }
            frontier = next;
            depth += 1;
        }
        Ok(Bounded { value: visited, truncated })
    }

    /// Every `u` with `t ⇻_n u`, each with one witnessing step.
    pub fn epar_successors(&self, t: &Term, n: usize) -> Result<Rc<Bounded<Successors>>, EngineError> {
        let (n, clamped) = self.clamp(n);
        let key = (t.clone(), n);
        if let Some(hit) = self.epar_cache.borrow().get(&key) {
            return Ok(mark(hit.clone(), clamped));
        }
        let out = if n == 0 {
            Bounded::exact(IndexMap::from([(t.clone(), EparStep::trivial(t, 0))]))
        } else {
            self.epar_enumerate(t, n)?
        };
        let out = Rc::new(out);
        self.epar_cache.borrow_mut().insert(key, out.clone());
        Ok(mark(out, clamped))
    }

    fn epar_enumerate(&self, t: &Term, n: usize) -> Result<Bounded<Successors>, EngineError> {
        let cap = self.bounds.max_terms;
        let mut truncated = false;
        let mut out: Successors = IndexMap::new();
        match t {
            Term::Var(_) => {
                out.insert(t.clone(), EparStep::trivial(t, n));
            }
            Term::Fun(f, args) => {
                // steps strictly below the root: combine argument steps
                let mut partial: Vec<(Vec<Term>, EparStep)> = vec![(Vec::new(), EparStep::trivial(t, n))];
                let mut arg_ctxs: Vec<Vec<Mctxt>> = vec![Vec::new()];
                for a in args {
                    let succ = self.epar_successors(a, n)?;
                    truncated |= succ.truncated;
                    let mut next = Vec::new();
                    let mut next_ctxs = Vec::new();
                    'combine: for ((done, step), ctxs) in partial.iter().zip(&arg_ctxs) {
                        for (u, s) in &succ.value {
                            if next.len() >= cap {
                                truncated = true;
                                break 'combine;
                            }
                            let mut done = done.clone();
                            done.push(u.clone());
                            let mut step = step.clone();
                            step.sources.extend(s.sources.iter().cloned());
                            step.targets.extend(s.targets.iter().cloned());
                            step.kinds.extend(s.kinds.iter().copied());
                            let mut ctxs = ctxs.clone();
                            ctxs.push(s.ctx.clone());
                            next.push((done, step));
                            next_ctxs.push(ctxs);
                        }
                    }
                    partial = next;
                    arg_ctxs = next_ctxs;
                }
                for ((done, mut step), ctxs) in partial.into_iter().zip(arg_ctxs) {
                    step.ctx = Mctxt::Fun(f.clone(), ctxs);
                    out.entry(Term::Fun(f.clone(), done)).or_insert(step);
                }
                // a single hole at the root
                let roots = self.root_steps(t, n)?;
                truncated |= roots.truncated;
                for u in &roots.value {
                    out.entry(u.clone()).or_insert_with(|| root_hole(t, u, n, HoleKind::RootStep));
                }
                let below = self.cstep_star(t, n - 1)?;
                truncated |= below.truncated;
                for u in &below.value {
                    out.entry(u.clone()).or_insert_with(|| root_hole(t, u, n, HoleKind::BelowLevel));
                }
                if out.len() > cap {
                    out.truncate(cap);
                    truncated = true;
                }
            }
        }
        Ok(Bounded { value: out, truncated })
    }

    /// A witness for `s ⇻_n u`, searched hole by hole instead of by
    /// enumerating all successors of `s`.
    pub fn epar_check(&self, s: &Term, u: &Term, n: usize) -> Result<Bounded<Option<EparStep>>, EngineError> {
        let (n, clamped) = self.clamp(n);
        let mut r = self.check_at(s, u, n)?;
        r.truncated |= clamped;
        Ok(r)
    }

    fn check_at(&self, s: &Term, u: &Term, n: usize) -> Result<Bounded<Option<EparStep>>, EngineError> {
        if s == u {
            return Ok(Bounded::exact(Some(EparStep::trivial(s, n))));
        }
        if n == 0 {
            return Ok(Bounded::exact(None));
        }
        let mut truncated = false;
        if let (Term::Fun(f, xs), Term::Fun(g, ys)) = (s, u) {
            if f == g {
                let mut step = EparStep::trivial(s, n);
                let mut ctxs = Vec::with_capacity(xs.len());
                let mut all = true;
                for (x, y) in xs.iter().zip(ys) {
                    let sub = self.check_at(x, y, n)?;
                    truncated |= sub.truncated;
                    match sub.value {
                        Some(w) => {
                            ctxs.push(w.ctx);
                            step.sources.extend(w.sources);
                            step.targets.extend(w.targets);
                            step.kinds.extend(w.kinds);
                        }
                        None => {
                            all = false;
                            break;
                        }
                    }
                }
                if all {
                    step.ctx = Mctxt::Fun(f.clone(), ctxs);
                    return Ok(Bounded { value: Some(step), truncated });
                }
            }
        }
        let roots = self.root_steps(s, n)?;
        truncated |= roots.truncated;
        if roots.value.contains(u) {
            return Ok(Bounded { value: Some(root_hole(s, u, n, HoleKind::RootStep)), truncated });
        }
        let below = self.cstep_star(s, n - 1)?;
        truncated |= below.truncated;
        if below.value.contains(u) {
            return Ok(Bounded { value: Some(root_hole(s, u, n, HoleKind::BelowLevel)), truncated });
        }
        Ok(Bounded { value: None, truncated })
    }

    /// Re-checks a witness from scratch: the endpoints are refilled and
    /// every hole is re-verified against `R_n` or `→*_{n−1}`.
    pub fn replay(&self, step: &EparStep, from: &Term, to: &Term) -> Result<bool, EngineError> {
        let holes = step.ctx.hole_count();
        if holes != step.sources.len() || holes != step.targets.len() || holes != step.kinds.len() {
            return Ok(false);
        }
        if step.source()? != *from || step.target()? != *to {
            return Ok(false);
        }
        for ((s, t), k) in step.sources.iter().zip(&step.targets).zip(&step.kinds) {
            let ok = match k {
                HoleKind::RootStep => step.level > 0 && self.root_steps(s, step.level)?.value.contains(t),
                HoleKind::BelowLevel => step.level > 0 && self.cstep_star(s, step.level - 1)?.value.contains(t),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn root_hole(s: &Term, u: &Term, n: usize, kind: HoleKind) -> EparStep {
    EparStep { level: n, ctx: Mctxt::Hole, sources: vec![s.clone()], targets: vec![u.clone()], kinds: vec![kind] }
}

fn mark<T: Clone>(r: Rc<Bounded<T>>, clamped: bool) -> Rc<Bounded<T>> {
    if clamped && !r.truncated {
        Rc::new(Bounded { value: r.value.clone(), truncated: true })
    } else {
        r
    }
}

/// All ground terms over `signature` with at most `max_size` symbols,
/// ordered by size and then structurally.
pub fn ground_terms(signature: &BTreeSet<crate::term::Symbol>, max_size: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for size in 1..=max_size {
        let mut terms = Vec::new();
        for f in signature {
            if f.arity() == 0 {
                if size == 1 {
                    terms.push(Term::Fun(f.clone(), Vec::new()));
                }
                continue;
            }
            if size < 1 + f.arity() {
                continue;
            }
            for args in tuples(&by_size, f.arity(), size - 1) {
                terms.push(Term::Fun(f.clone(), args));
            }
        }
        terms.sort();
        by_size[size] = terms;
    }
    by_size.into_iter().flatten().collect()
}

/// Tuples of `k` terms whose sizes sum to exactly `total`.
fn tuples(by_size: &[Vec<Term>], k: usize, total: usize) -> Vec<Vec<Term>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(k - 1) {
        for t in &by_size[first] {
            for mut rest in tuples(by_size, k - 1, total - first) {
                rest.insert(0, t.clone());
                out.push(rest);
            }
        }
    }
    out
}
