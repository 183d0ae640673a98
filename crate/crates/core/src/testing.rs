//! Shared fixtures for unit tests.

use crate::corpus;
use crate::ctrs::Ctrs;
use crate::parse::parse;
use crate::term::Term;

pub fn fib() -> Ctrs {
    parse(corpus::FIB).expect("fib corpus parses").ctrs
}

pub fn parse_sys(text: &str) -> Ctrs {
    parse(text).expect("test system parses").ctrs
}

/// Parses a term over the symbols of `ctrs`; `x`, `y`, `z` are variables.
pub fn term(ctrs: &Ctrs, text: &str) -> Term {
    let spec = crate::parse::SourceSpec {
        text: String::new(),
        ctrs: ctrs.clone(),
        vars: ["x", "y", "z"].iter().map(|s| s.to_string()).collect(),
        condition_type: "ORIENTED".into(),
    };
    spec.parse_term(text).expect("test term parses")
}
