//! Reader and printer for the COPS-style conditional format:
//!
//! ```text
//! (CONDITIONTYPE ORIENTED)
//! (VAR x y)
//! (RULES
//!   f(x) -> y | g(x) == y
//! )
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::ctrs::{Condition, Ctrs, CtrsError, Rule};
use crate::term::{Symbol, Term, Var};

const MAX_NESTING: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: Span, message: String },
    #[error("{span}: symbol {name} used with arity {found}, previously {expected}")]
    ArityConflict { span: Span, name: String, expected: usize, found: usize },
    #[error("unknown condition type {found}: only ORIENTED supported")]
    UnknownConditionType { found: String },
    #[error("{span}: rule {rule} has a variable as left-hand side")]
    VariableLhs { span: Span, rule: usize },
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSpec {
    pub text: String,
    pub ctrs: Ctrs,
    pub vars: BTreeSet<String>,
    pub condition_type: String,
}

impl SourceSpec {
    /// Parses a single term over this file's variables and signature.
    pub fn parse_term(&self, text: &str) -> Result<Term, ParseError> {
        let mut arities: BTreeMap<String, usize> =
            self.ctrs.signature().iter().map(|s| (s.name().to_string(), s.arity())).collect();
        let mut lexer = Lexer::new(text);
        let raw = parse_raw_term(&mut lexer, 0)?;
        let tok = lexer.next()?;
        if tok.kind != Tok::Eof {
            return Err(syntax(tok.span, format!("unexpected {} after term", tok.kind)));
        }
        resolve(&raw, &self.vars, &mut arities)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Arrow,
    EqEq,
    Bar,
    Ident(String),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::EqEq => f.write_str("'=='"),
            Tok::Bar => f.write_str("'|'"),
            Tok::Ident(s) => write!(f, "identifier {s}"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    span: Span,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '+' | '*' | '-')
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: usize,
    col: usize,
    peeked: Option<Token>,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { chars: src.char_indices().peekable(), src, line: 1, col: 1, peeked: None }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn here(&self) -> Span {
        Span { line: self.line, col: self.col }
    }

    fn rest_starts_with(&mut self, s: &str) -> bool {
        match self.chars.peek() {
            Some(&(i, _)) => self.src[i..].starts_with(s),
            None => false,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|&(_, c)| c.is_whitespace()) {
            self.bump();
        }
    }

    fn peek(&mut self) -> Result<&Token, ParseError> {
        if self.peeked.is_none() {
            let t = self.lex()?;
            self.peeked = Some(t);
        }
        Ok(self.peeked.as_ref().expect("just filled"))
    }

    fn next(&mut self) -> Result<Token, ParseError> {
        match self.peeked.take() {
            Some(t) => Ok(t),
            None => self.lex(),
        }
    }

    fn lex(&mut self) -> Result<Token, ParseError> {
        self.skip_ws();
        let span = self.here();
        let Some(&(_, c)) = self.chars.peek() else {
            return Ok(Token { kind: Tok::Eof, span });
        };
        let kind = match c {
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '|' => {
                self.bump();
                Tok::Bar
            }
            _ if self.rest_starts_with("->") => {
                self.bump();
                self.bump();
                Tok::Arrow
            }
            _ if self.rest_starts_with("==") => {
                self.bump();
                self.bump();
                Tok::EqEq
            }
            _ if is_ident_char(c) => {
                let mut name = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if !is_ident_char(c) || self.rest_starts_with("->") {
                        break;
                    }
                    name.push(c);
                    self.bump();
                }
                Tok::Ident(name)
            }
            _ => return Err(syntax(span, format!("unexpected character {c:?}"))),
        };
        Ok(Token { kind, span })
    }

    /// Skips free text up to the `)` closing the current block.
    fn skip_balanced(&mut self) -> Result<(), ParseError> {
        let start = self.here();
        let mut depth = 0usize;
        loop {
            match self.bump() {
                None => return Err(syntax(start, "unterminated COMMENT block".into())),
                Some('(') => depth += 1,
                Some(')') if depth == 0 => return Ok(()),
                Some(')') => depth -= 1,
                Some(_) => {}
            }
        }
    }
}

fn syntax(span: Span, message: String) -> ParseError {
    ParseError::Syntax { span, message }
}

#[derive(Debug)]
struct RawTerm {
    name: String,
    args: Option<Vec<RawTerm>>,
    span: Span,
}

#[derive(Debug)]
struct RawRule {
    lhs: RawTerm,
    rhs: RawTerm,
    conds: Vec<(RawTerm, RawTerm)>,
}

fn parse_raw_term(lx: &mut Lexer<'_>, depth: usize) -> Result<RawTerm, ParseError> {
    let tok = lx.next()?;
    let Tok::Ident(name) = tok.kind else {
        return Err(syntax(tok.span, format!("expected a term, found {}", tok.kind)));
    };
    if depth > MAX_NESTING {
        return Err(syntax(tok.span, "terms nested too deeply".into()));
    }
    if lx.peek()?.kind != Tok::LParen {
        return Ok(RawTerm { name, args: None, span: tok.span });
    }
    lx.next()?;
    let mut args = vec![parse_raw_term(lx, depth + 1)?];
    loop {
        let t = lx.next()?;
        match t.kind {
            Tok::Comma => args.push(parse_raw_term(lx, depth + 1)?),
            Tok::RParen => break,
            other => return Err(syntax(t.span, format!("expected ',' or ')', found {other}"))),
        }
    }
    Ok(RawTerm { name, args: Some(args), span: tok.span })
}

fn expect(lx: &mut Lexer<'_>, want: Tok) -> Result<Token, ParseError> {
    let t = lx.next()?;
    if t.kind == want {
        Ok(t)
    } else {
        Err(syntax(t.span, format!("expected {want}, found {}", t.kind)))
    }
}

fn parse_rules(lx: &mut Lexer<'_>, out: &mut Vec<RawRule>) -> Result<(), ParseError> {
    loop {
        if lx.peek()?.kind == Tok::RParen {
            lx.next()?;
            return Ok(());
        }
        let lhs = parse_raw_term(lx, 0)?;
        expect(lx, Tok::Arrow)?;
        let rhs = parse_raw_term(lx, 0)?;
        let mut conds = Vec::new();
        if lx.peek()?.kind == Tok::Bar {
            lx.next()?;
            loop {
                let s = parse_raw_term(lx, 0)?;
                expect(lx, Tok::EqEq)?;
                let t = parse_raw_term(lx, 0)?;
                conds.push((s, t));
                if lx.peek()?.kind != Tok::Comma {
                    break;
                }
                lx.next()?;
            }
        }
        out.push(RawRule { lhs, rhs, conds });
    }
}

fn resolve(raw: &RawTerm, vars: &BTreeSet<String>, arities: &mut BTreeMap<String, usize>) -> Result<Term, ParseError> {
    if vars.contains(&raw.name) {
        return match raw.args {
            None => Ok(Term::Var(Var::new(raw.name.as_str()))),
            Some(_) => Err(syntax(raw.span, format!("variable {} applied to arguments", raw.name))),
        };
    }
    let args = match &raw.args {
        None => Vec::new(),
        Some(args) => args.iter().map(|a| resolve(a, vars, arities)).collect::<Result<_, _>>()?,
    };
    let found = args.len();
    match arities.get(&raw.name) {
        Some(&expected) if expected != found => {
            return Err(ParseError::ArityConflict { span: raw.span, name: raw.name.clone(), expected, found })
        }
        Some(_) => {}
        None => {
            arities.insert(raw.name.clone(), found);
        }
    }
    Ok(Term::Fun(Symbol::new(raw.name.as_str(), found), args))
}

/// Parses a complete input file.
pub fn parse(text: &str) -> Result<SourceSpec, ParseError> {
    let mut lx = Lexer::new(text);
    let mut vars = BTreeSet::new();
    let mut condition_type: Option<String> = None;
    let mut raw_rules = Vec::new();
    let mut saw_block = false;
    loop {
        let t = lx.next()?;
        match t.kind {
            Tok::Eof if saw_block => break,
            Tok::Eof => return Err(syntax(t.span, "empty input".into())),
            Tok::LParen => {}
            other => return Err(syntax(t.span, format!("expected '(', found {other}"))),
        }
        saw_block = true;
        let kw = lx.next()?;
        match &kw.kind {
            Tok::Ident(k) if k == "CONDITIONTYPE" => {
                let v = lx.next()?;
                let Tok::Ident(ty) = v.kind else {
                    return Err(syntax(v.span, format!("expected a condition type, found {}", v.kind)));
                };
                if ty != "ORIENTED" {
                    return Err(ParseError::UnknownConditionType { found: ty });
                }
                condition_type = Some(ty);
                expect(&mut lx, Tok::RParen)?;
            }
            Tok::Ident(k) if k == "VAR" => loop {
                let v = lx.next()?;
                match v.kind {
                    Tok::Ident(name) => {
                        vars.insert(name);
                    }
                    Tok::RParen => break,
                    other => return Err(syntax(v.span, format!("expected a variable name, found {other}"))),
                }
            },
            Tok::Ident(k) if k == "RULES" => parse_rules(&mut lx, &mut raw_rules)?,
            Tok::Ident(k) if k == "COMMENT" => {
                // the lexer may hold a lookahead token; COMMENT bodies are
                // skipped from the raw character stream
                if lx.peeked.is_some() {
                    return Err(syntax(kw.span, "malformed COMMENT block".into()));
                }
                lx.skip_balanced()?;
            }
            other => return Err(syntax(kw.span, format!("unknown block {other}"))),
        }
    }

    let mut arities = BTreeMap::new();
    let mut rules = Vec::with_capacity(raw_rules.len());
    for (i, r) in raw_rules.iter().enumerate() {
        let lhs = resolve(&r.lhs, &vars, &mut arities)?;
        if lhs.as_var().is_some() {
            return Err(ParseError::VariableLhs { span: r.lhs.span, rule: i + 1 });
        }
        let rhs = resolve(&r.rhs, &vars, &mut arities)?;
        let conds = r
            .conds
            .iter()
            .map(|(s, t)| Ok(Condition::new(resolve(s, &vars, &mut arities)?, resolve(t, &vars, &mut arities)?)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        rules.push(Rule::new(lhs, rhs, conds));
    }
    let ctrs = Ctrs::new(rules).map_err(|e| match e {
        CtrsError::VariableLhs { rule } => ParseError::VariableLhs { span: Span::default(), rule },
        CtrsError::ArityConflict { name, expected, found } => {
            ParseError::ArityConflict { span: Span::default(), name, expected, found }
        }
    })?;
    Ok(SourceSpec {
        text: text.to_string(),
        ctrs,
        vars,
        condition_type: condition_type.unwrap_or_else(|| "ORIENTED".to_string()),
    })
}

/// Prints a system in the input format. Re-parsing the output yields the
/// same system.
pub fn render_system(ctrs: &Ctrs) -> String {
    let mut vars = BTreeSet::new();
    for r in ctrs.rules() {
        vars.extend(r.vars().into_iter().map(|v| v.to_string()));
    }
    let mut out = String::from("(CONDITIONTYPE ORIENTED)\n(VAR");
    for v in &vars {
        out.push(' ');
        out.push_str(v);
    }
    out.push_str(")\n(RULES\n");
    for r in ctrs.rules() {
        out.push_str("  ");
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out.push_str(")\n");
    out
}
