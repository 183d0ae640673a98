//! Multihole contexts.
//!
//! Contexts are ordered by refinement (`leq`): `C ≤ D` when `D` is obtained
//! from `C` by plugging contexts into its holes. Under this order contexts
//! over a fixed signature form a meet-semilattice with `Hole` as least
//! element. An extended parallel step is described by a context plus one
//! source/target pair per hole; the meet of two such contexts is their
//! common part.

use std::fmt;

use thiserror::Error;

use crate::term::{Symbol, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mctxt {
    Hole,
    Var(Var),
    Fun(Symbol, Vec<Mctxt>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MctxtError {
    #[error("context has {holes} holes but {given} fillers were given")]
    ArityMismatch { holes: usize, given: usize },
    #[error("{prefix} is not a prefix of {context}")]
    NotAPrefix { prefix: String, context: String },
    #[error("expected {expected} items in total, got {given}")]
    LengthMismatch { expected: usize, given: usize },
}

impl Mctxt {
    /// Embeds a term as a context without holes.
    pub fn of_term(t: &Term) -> Mctxt {
        match t {
            Term::Var(v) => Mctxt::Var(v.clone()),
            Term::Fun(f, args) => Mctxt::Fun(f.clone(), args.iter().map(Mctxt::of_term).collect()),
        }
    }

    pub fn hole_count(&self) -> usize {
        match self {
            Mctxt::Hole => 1,
            Mctxt::Var(_) => 0,
            Mctxt::Fun(_, args) => args.iter().map(Mctxt::hole_count).sum(),
        }
    }

    /// Replaces the holes left to right by `fillers`.
    pub fn fill(&self, fillers: &[Term]) -> Result<Term, MctxtError> {
        self.check_holes(fillers.len())?;
        let mut it = fillers.iter();
        Ok(self.fill_iter(&mut it))
    }

    fn fill_iter<'a>(&self, it: &mut impl Iterator<Item = &'a Term>) -> Term {
        match self {
            Mctxt::Hole => it.next().expect("hole count checked").clone(),
            Mctxt::Var(v) => Term::Var(v.clone()),
            Mctxt::Fun(f, args) => Term::Fun(f.clone(), args.iter().map(|a| a.fill_iter(it)).collect()),
        }
    }

    /// Replaces the holes left to right by contexts.
    pub fn fill_ctxt(&self, fillers: &[Mctxt]) -> Result<Mctxt, MctxtError> {
        self.check_holes(fillers.len())?;
        let mut it = fillers.iter();
        Ok(self.fill_ctxt_iter(&mut it))
    }

    fn fill_ctxt_iter<'a>(&self, it: &mut impl Iterator<Item = &'a Mctxt>) -> Mctxt {
        match self {
            Mctxt::Hole => it.next().expect("hole count checked").clone(),
            Mctxt::Var(v) => Mctxt::Var(v.clone()),
            Mctxt::Fun(f, args) => Mctxt::Fun(f.clone(), args.iter().map(|a| a.fill_ctxt_iter(it)).collect()),
        }
    }

    fn check_holes(&self, given: usize) -> Result<(), MctxtError> {
        let holes = self.hole_count();
        if holes == given {
            Ok(())
        } else {
            Err(MctxtError::ArityMismatch { holes, given })
        }
    }

    /// Refinement order: `self` can be turned into `other` by filling holes.
    pub fn leq(&self, other: &Mctxt) -> bool {
        match (self, other) {
            (Mctxt::Hole, _) => true,
            (Mctxt::Var(v), Mctxt::Var(w)) => v == w,
            (Mctxt::Fun(f, xs), Mctxt::Fun(g, ys)) => f == g && xs.iter().zip(ys).all(|(x, y)| x.leq(y)),
            _ => false,
        }
    }

    /// Greatest lower bound: the common prefix, with a hole wherever the
    /// two contexts disagree or either has a hole.
    pub fn meet(&self, other: &Mctxt) -> Mctxt {
        match (self, other) {
            (Mctxt::Var(v), Mctxt::Var(w)) if v == w => Mctxt::Var(v.clone()),
            (Mctxt::Fun(f, xs), Mctxt::Fun(g, ys)) if f == g => {
                Mctxt::Fun(f.clone(), xs.iter().zip(ys).map(|(x, y)| x.meet(y)).collect())
            }
            _ => Mctxt::Hole,
        }
    }

    /// For a prefix `self` of `context`, the contexts `C₁…C_e` such that
    /// filling the holes of `self` with them yields `context`.
    pub fn decompose(&self, context: &Mctxt) -> Result<Vec<Mctxt>, MctxtError> {
        fn go(e: &Mctxt, c: &Mctxt, out: &mut Vec<Mctxt>) -> bool {
            match (e, c) {
                (Mctxt::Hole, _) => {
                    out.push(c.clone());
                    true
                }
                (Mctxt::Var(v), Mctxt::Var(w)) => v == w,
                (Mctxt::Fun(f, es), Mctxt::Fun(g, cs)) => f == g && es.iter().zip(cs).all(|(e, c)| go(e, c, out)),
                _ => false,
            }
        }
        let mut out = Vec::with_capacity(self.hole_count());
        if go(self, context, &mut out) {
            Ok(out)
        } else {
            Err(MctxtError::NotAPrefix { prefix: self.to_string(), context: context.to_string() })
        }
    }

    pub fn is_hole(&self) -> bool {
        matches!(self, Mctxt::Hole)
    }
}

/// Splits `items` into consecutive blocks whose sizes are the hole counts
/// of `contexts`.
pub fn partition_by<T: Clone>(items: &[T], contexts: &[Mctxt]) -> Result<Vec<Vec<T>>, MctxtError> {
    let sizes: Vec<usize> = contexts.iter().map(Mctxt::hole_count).collect();
    let expected: usize = sizes.iter().sum();
    if expected != items.len() {
        return Err(MctxtError::LengthMismatch { expected, given: items.len() });
    }
    let mut rest = items;
    Ok(sizes
        .into_iter()
        .map(|n| {
            let (block, tail) = rest.split_at(n);
            rest = tail;
            block.to_vec()
        })
        .collect())
}

impl fmt::Display for Mctxt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mctxt::Hole => f.write_str("□"),
            Mctxt::Var(v) => write!(f, "{v}"),
            Mctxt::Fun(g, args) if args.is_empty() => write!(f, "{g}"),
            Mctxt::Fun(g, args) => {
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
