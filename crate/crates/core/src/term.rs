//! First-order terms, positions, substitutions and syntactic matching.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// A function symbol. Arity is fixed per name within a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<Arc<str>>, arity: usize) -> Self {
        let name = name.into();
        assert!(!name.is_empty(), "symbol names must be non-empty");
        Symbol { name, arity }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A variable identifier: a base name plus an optional renaming index.
///
/// Variables read from input carry no index. Renaming apart only ever
/// assigns indices, so renamed copies never clash with index-free input
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    name: Arc<str>,
    index: Option<u32>,
}

impl Var {
    pub fn new(name: impl Into<Arc<str>>) -> Self {
        Var { name: name.into(), index: None }
    }

    pub fn indexed(name: impl Into<Arc<str>>, index: u32) -> Self {
        Var { name: name.into(), index: Some(index) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }

    /// Same base name, different index.
    pub fn with_index(&self, index: u32) -> Self {
        Var { name: self.name.clone(), index: Some(index) }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            None => f.write_str(&self.name),
            Some(i) => write!(f, "{}#{}", self.name, i),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Fun(Symbol, Vec<Term>),
}

/// A path from the root; indices are 1-based, the root is the empty path.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Self {
        let mut path = self.0.clone();
        path.push(i);
        Position(path)
    }
}

impl From<Vec<usize>> for Position {
    fn from(path: Vec<usize>) -> Self {
        Position(path)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("position {position} is not valid in {term}")]
pub struct InvalidPosition {
    pub position: Position,
    pub term: String,
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Var::new(name))
    }

    /// Builds `f(args)` with the arity taken from `args`.
    pub fn app(name: &str, args: Vec<Term>) -> Self {
        Term::Fun(Symbol::new(name, args.len()), args)
    }

    pub fn constant(name: &str) -> Self {
        Term::app(name, Vec::new())
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::Fun(..) => None,
        }
    }

    pub fn root_symbol(&self) -> Option<&Symbol> {
        match self {
            Term::Var(_) => None,
            Term::Fun(f, _) => Some(f),
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Fun(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Fun(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Variables in left-to-right order of first occurrence.
    pub fn vars_ordered(&self) -> Vec<Var> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.visit_vars(&mut |v| {
            if seen.insert(v.clone()) {
                out.push(v.clone());
            }
        });
        out
    }

    pub(crate) fn visit_vars(&self, f: &mut impl FnMut(&Var)) {
        match self {
            Term::Var(v) => f(v),
            Term::Fun(_, args) => args.iter().for_each(|a| a.visit_vars(f)),
        }
    }

    pub fn is_linear(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut linear = true;
        self.visit_vars(&mut |v| linear &= seen.insert(v.clone()));
        linear
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Fun(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// True when no function symbol of the term is in `defined`.
    pub fn is_constructor_term(&self, defined: &BTreeSet<Symbol>) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Fun(f, args) => {
                !defined.contains(f) && args.iter().all(|a| a.is_constructor_term(defined))
            }
        }
    }

    pub fn subterm_at(&self, pos: &Position) -> Result<&Term, InvalidPosition> {
        let mut cur = self;
        for &i in &pos.0 {
            cur = match cur {
                Term::Fun(_, args) if i >= 1 && i <= args.len() => &args[i - 1],
                _ => return Err(self.invalid(pos)),
            };
        }
        Ok(cur)
    }

    pub fn replace_at(&self, pos: &Position, replacement: Term) -> Result<Term, InvalidPosition> {
        fn go(t: &Term, path: &[usize], u: Term) -> Option<Term> {
            let Some((&i, rest)) = path.split_first() else {
                return Some(u);
            };
            match t {
                Term::Fun(f, args) if i >= 1 && i <= args.len() => {
                    let mut args = args.clone();
                    args[i - 1] = go(&args[i - 1], rest, u)?;
                    Some(Term::Fun(f.clone(), args))
                }
                _ => None,
            }
        }
        go(self, &pos.0, replacement).ok_or_else(|| self.invalid(pos))
    }

    fn invalid(&self, pos: &Position) -> InvalidPosition {
        InvalidPosition { position: pos.clone(), term: self.to_string() }
    }

    /// Positions of all function-symbol nodes, in pre-order (left-outer).
    pub fn function_positions(&self) -> Vec<Position> {
        fn go(t: &Term, here: &mut Vec<usize>, out: &mut Vec<Position>) {
            if let Term::Fun(_, args) = t {
                out.push(Position(here.clone()));
                for (i, a) in args.iter().enumerate() {
                    here.push(i + 1);
                    go(a, here, out);
                    here.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// All symbols occurring in the term.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        fn go(t: &Term, out: &mut BTreeSet<Symbol>) {
            if let Term::Fun(f, args) = t {
                out.insert(f.clone());
                args.iter().for_each(|a| go(a, out));
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    pub fn apply(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(v) => sigma.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Fun(f, args) => Term::Fun(f.clone(), args.iter().map(|a| a.apply(sigma)).collect()),
        }
    }

    /// Renames every variable through `f`.
    pub fn map_vars(&self, f: &impl Fn(&Var) -> Var) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(v)),
            Term::Fun(g, args) => Term::Fun(g.clone(), args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::Fun(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Fun(g, args) if args.is_empty() => write!(f, "{g}"),
            Term::Fun(g, args) => {
                write!(f, "{g}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Finite map from variables to terms; unmapped variables are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Self {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.insert(v, t);
        }
        s
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.map.get(v)
    }

    /// True when `v` has a binding, including an explicit identity one.
    pub fn contains(&self, v: &Var) -> bool {
        self.map.contains_key(v)
    }

    /// Adds `v ↦ t`. Identity bindings are dropped.
    pub fn insert(&mut self, v: Var, t: Term) {
        if t.as_var() == Some(&v) {
            self.map.remove(&v);
        } else {
            self.map.insert(v, t);
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Var> {
        self.map.keys()
    }

    /// `self` followed by `other`: applying the result equals applying
    /// `self` and then `other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.map {
            out.insert(v.clone(), t.apply(other));
        }
        for (v, t) in &other.map {
            if !self.map.contains_key(v) {
                out.insert(v.clone(), t.clone());
            }
        }
        out
    }

    pub fn restrict(&self, keep: &BTreeSet<Var>) -> Substitution {
        Substitution {
            map: self.map.iter().filter(|(v, _)| keep.contains(*v)).map(|(v, t)| (v.clone(), t.clone())).collect(),
        }
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} ↦ {t}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for Substitution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.map.iter().map(|(v, t)| (v.to_string(), t.to_string())))
    }
}

/// Syntactic matching: the substitution `σ` with `pattern σ = subject`.
pub fn match_term(pattern: &Term, subject: &Term) -> Option<Substitution> {
    match_extend(pattern, subject, &Substitution::new())
}

/// Matching that extends `base`. Variables already bound in `base` must
/// map to exactly the corresponding subterm of `subject`; the others are
/// bound freshly.
pub fn match_extend(pattern: &Term, subject: &Term, base: &Substitution) -> Option<Substitution> {
    fn go(p: &Term, t: &Term, acc: &mut Substitution) -> bool {
        match p {
            Term::Var(v) => match acc.get(v) {
                Some(bound) => bound == t,
                None => {
                    acc.map.insert(v.clone(), t.clone());
                    true
                }
            },
            Term::Fun(f, ps) => match t {
                Term::Fun(g, ts) if f == g => ps.iter().zip(ts).all(|(p, t)| go(p, t, acc)),
                _ => false,
            },
        }
    }
    // identity bindings are kept: they record that a variable is bound
    let mut acc = base.clone();
    go(pattern, subject, &mut acc).then_some(acc)
}
