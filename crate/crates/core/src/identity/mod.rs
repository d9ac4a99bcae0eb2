//! Quasigroup terms over product, left division `\` and right division `/`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! variable = letter digit*
//! factor   = variable | '(' expr ')'
//! expr     = factor factor | factor '\' factor | factor '/' factor | factor
//! identity = expr '=' expr
//! ```
//!
//! A bare chain of three or more factors such as `xyz` is rejected rather than
//! given an implicit association.

mod catalog;
mod check;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::linalg;

pub use catalog::{catalog, catalog_entry, catalog_list, generate_pn_identity, CatalogEntry, FAMILIES};
pub use check::{
    check_exact_multilinear, check_sampled, CheckMode, CheckReport, Verdict, Witness, FAIL_THRESHOLD,
    HOLD_THRESHOLD, MAX_CONDITION,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Mul(Box<Term>, Box<Term>),
    LeftDiv(Box<Term>, Box<Term>),
    RightDiv(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn left_div(a: Term, b: Term) -> Term {
        Term::LeftDiv(Box::new(a), Box::new(b))
    }

    pub fn right_div(a: Term, b: Term) -> Term {
        Term::RightDiv(Box::new(a), Box::new(b))
    }

    /// Variable names in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Mul(a, b) | Term::LeftDiv(a, b) | Term::RightDiv(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Number of occurrences of each variable.
    pub fn degrees(&self) -> HashMap<String, usize> {
        let mut out = HashMap::new();
        self.count(&mut out);
        out
    }

    fn count(&self, out: &mut HashMap<String, usize>) {
        match self {
            Term::Var(v) => *out.entry(v.clone()).or_default() += 1,
            Term::Mul(a, b) | Term::LeftDiv(a, b) | Term::RightDiv(a, b) => {
                a.count(out);
                b.count(out);
            }
        }
    }

    pub fn has_division(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Mul(a, b) => a.has_division() || b.has_division(),
            Term::LeftDiv(..) | Term::RightDiv(..) => true,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Mul(a, b) | Term::LeftDiv(a, b) | Term::RightDiv(a, b) => 1 + a.size() + b.size(),
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            _ => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Mul(a, b) => {
                a.fmt_factor(f)?;
                b.fmt_factor(f)
            }
            Term::LeftDiv(a, b) => {
                a.fmt_factor(f)?;
                f.write_str("\\")?;
                b.fmt_factor(f)
            }
            Term::RightDiv(a, b) => {
                a.fmt_factor(f)?;
                f.write_str("/")?;
                b.fmt_factor(f)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    /// Variables in order of first occurrence, left side first.
    pub variables: Vec<String>,
}

impl Identity {
    /// Reject structurally trivial identities `t = t`.
    pub fn new(lhs: Term, rhs: Term) -> std::result::Result<Self, ParseError> {
        if lhs == rhs {
            return Err(ParseError::Trivial);
        }
        Ok(Self::new_unchecked(lhs, rhs))
    }

    pub fn new_unchecked(lhs: Term, rhs: Term) -> Self {
        let mut variables = lhs.variables();
        for v in rhs.variables() {
            if !variables.contains(&v) {
                variables.push(v);
            }
        }
        Self { lhs, rhs, variables }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at {pos}")]
    Lexical { pos: usize, ch: char },
    #[error("ambiguous product of three or more factors at {pos}; add parentheses")]
    Ambiguous { pos: usize },
    #[error("unbalanced parentheses at {pos}")]
    Unbalanced { pos: usize },
    #[error("missing '=' between the two sides")]
    MissingEquals,
    #[error("expected a variable or '(' at {pos}")]
    ExpectedFactor { pos: usize },
    #[error("unexpected {found} at {pos}")]
    Unexpected { pos: usize, found: String },
    #[error("both sides are identical")]
    Trivial,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Var(String),
    Open,
    Close,
    Back,
    Slash,
    Eq,
}

fn lex(src: &str) -> std::result::Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        i += 1;
        let tok = match ch {
            c if c.is_whitespace() => continue,
            '(' => Tok::Open,
            ')' => Tok::Close,
            '\\' => Tok::Back,
            '/' => Tok::Slash,
            '=' => Tok::Eq,
            c if c.is_ascii_alphabetic() => {
                let mut name = c.to_string();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    name.push(chars[i].1);
                    i += 1;
                }
                Tok::Var(name)
            }
            c => return Err(ParseError::Lexical { pos, ch: c }),
        };
        out.push((pos, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Var(_)) | Some(Tok::Open))
    }

    fn factor(&mut self) -> std::result::Result<Term, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.at += 1;
                Ok(Term::Var(v))
            }
            Some(Tok::Open) => {
                self.at += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Close) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(ParseError::Unbalanced { pos }),
                }
            }
            Some(Tok::Close) => Err(ParseError::Unbalanced { pos }),
            _ => Err(ParseError::ExpectedFactor { pos }),
        }
    }

    fn expr(&mut self) -> std::result::Result<Term, ParseError> {
        let first = self.factor()?;
        let term = match self.peek() {
            Some(Tok::Back) => {
                self.at += 1;
                Term::left_div(first, self.factor()?)
            }
            Some(Tok::Slash) => {
                self.at += 1;
                Term::right_div(first, self.factor()?)
            }
            _ if self.starts_factor() => {
                let second = self.factor()?;
                Term::mul(first, second)
            }
            _ => return Ok(first),
        };
        if self.starts_factor() || matches!(self.peek(), Some(Tok::Back) | Some(Tok::Slash)) {
            return Err(ParseError::Ambiguous { pos: self.pos() });
        }
        Ok(term)
    }

    fn top_expr(&mut self) -> std::result::Result<Term, ParseError> {
        let t = self.expr()?;
        if let Some(Tok::Close) = self.peek() {
            return Err(ParseError::Unbalanced { pos: self.pos() });
        }
        Ok(t)
    }
}

/// Parse a single term such as `x\(xy)`.
pub fn parse_term(src: &str) -> std::result::Result<Term, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let t = p.top_expr()?;
    match p.peek() {
        None => Ok(t),
        Some(tok) => Err(ParseError::Unexpected { pos: p.pos(), found: format!("{tok:?}") }),
    }
}

/// Parse `lhs = rhs`.
pub fn parse_identity(src: &str) -> std::result::Result<Identity, ParseError> {
    let toks = lex(src)?;
    if !toks.iter().any(|(_, t)| *t == Tok::Eq) {
        // still surface parenthesis and ambiguity errors first
        let mut p = Parser { toks, at: 0, end: src.len() };
        p.top_expr()?;
        return Err(ParseError::MissingEquals);
    }
    let mut p = Parser { toks, at: 0, end: src.len() };
    let lhs = p.top_expr()?;
    match p.peek() {
        Some(Tok::Eq) => p.at += 1,
        Some(tok) => return Err(ParseError::Unexpected { pos: p.pos(), found: format!("{tok:?}") }),
        None => return Err(ParseError::MissingEquals),
    }
    let rhs = p.top_expr()?;
    if let Some(tok) = p.peek() {
        return Err(ParseError::Unexpected { pos: p.pos(), found: format!("{tok:?}") });
    }
    Identity::new(lhs, rhs)
}

/// Product-only identity in which every variable occurs exactly once on each side.
pub fn is_balanced(id: &Identity) -> bool {
    if id.lhs.has_division() || id.rhs.has_division() {
        return false;
    }
    let l = id.lhs.degrees();
    let r = id.rhs.degrees();
    l.len() == r.len() && l.iter().all(|(v, &d)| d == 1 && r.get(v) == Some(&1))
}

/// Term compiled against a fixed variable order.
#[derive(Clone, Debug)]
pub(crate) enum Compiled {
    Var(usize),
    Mul(Box<Compiled>, Box<Compiled>),
    LeftDiv(Box<Compiled>, Box<Compiled>),
    RightDiv(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub(crate) fn new(t: &Term, vars: &[String]) -> Result<Self> {
        Ok(match t {
            Term::Var(v) => Compiled::Var(
                vars.iter().position(|w| w == v).ok_or_else(|| Error::Unassigned(v.clone()))?,
            ),
            Term::Mul(a, b) => Compiled::Mul(Box::new(Self::new(a, vars)?), Box::new(Self::new(b, vars)?)),
            Term::LeftDiv(a, b) => Compiled::LeftDiv(Box::new(Self::new(a, vars)?), Box::new(Self::new(b, vars)?)),
            Term::RightDiv(a, b) => Compiled::RightDiv(Box::new(Self::new(a, vars)?), Box::new(Self::new(b, vars)?)),
        })
    }

    /// Evaluate, recording the smallest inverse condition number of any division.
    pub(crate) fn eval(&self, a: &Algebra, vals: &[Element], min_cond: &mut f64) -> Result<Element> {
        match self {
            Compiled::Var(i) => Ok(vals[*i].clone()),
            Compiled::Mul(x, y) => Ok(a.mul(&x.eval(a, vals, min_cond)?, &y.eval(a, vals, min_cond)?)),
            Compiled::LeftDiv(x, y) => {
                let d = x.eval(a, vals, min_cond)?;
                let v = y.eval(a, vals, min_cond)?;
                let op = a.left_mul(&d);
                *min_cond = min_cond.min(linalg::inverse_condition(&op));
                linalg::solve(&op, &v, a.tol(), "L_a")
            }
            Compiled::RightDiv(x, y) => {
                let v = x.eval(a, vals, min_cond)?;
                let d = y.eval(a, vals, min_cond)?;
                let op = a.right_mul(&d);
                *min_cond = min_cond.min(linalg::inverse_condition(&op));
                linalg::solve(&op, &v, a.tol(), "R_b")
            }
        }
    }
}

/// Evaluate `t` in `a` under `assignment`.
pub fn eval_term(a: &Algebra, t: &Term, assignment: &HashMap<String, Element>) -> Result<Element> {
    let vars = t.variables();
    let mut vals = Vec::with_capacity(vars.len());
    for v in &vars {
        let x = assignment.get(v).ok_or_else(|| Error::Unassigned(v.clone()))?;
        if x.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: x.len() });
        }
        vals.push(x.clone());
    }
    let mut cond = f64::INFINITY;
    Compiled::new(t, &vars)?.eval(a, &vals, &mut cond)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::hurwitz;

    #[test]
    fn parses_four_variable_identity() {
        let id = parse_identity("x((yz)(xt)) = ((xy)(zx))t").unwrap();
        assert_eq!(id.variables, ["x", "y", "z", "t"]);
        assert_eq!(id.to_string(), "x((yz)(xt))=((xy)(zx))t");
    }

    #[test]
    fn parses_left_division_structure() {
        let id = parse_identity("x(x(yz)) = (x(xy))z").unwrap();
        let x = || Term::var("x");
        let expected_lhs = Term::mul(x(), Term::mul(x(), Term::mul(Term::var("y"), Term::var("z"))));
        assert_eq!(id.lhs, expected_lhs);
    }

    #[test]
    fn divisions_and_indexed_variables() {
        let t = parse_term("x1\\(x1 x2)").unwrap();
        assert_eq!(
            t,
            Term::left_div(Term::var("x1"), Term::mul(Term::var("x1"), Term::var("x2")))
        );
        assert_eq!(t.to_string(), "x1\\(x1x2)");
        assert_eq!(parse_term("(xy)/y").unwrap().to_string(), "(xy)/y");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_identity("xyz = x(yz)"), Err(ParseError::Ambiguous { .. })));
        assert!(matches!(parse_identity("x\\y z = x"), Err(ParseError::Ambiguous { .. })));
        assert!(matches!(parse_identity("(xy = x"), Err(ParseError::Unbalanced { .. })));
        assert!(matches!(parse_identity("(xy)) = x"), Err(ParseError::Unbalanced { .. })));
        assert!(matches!(parse_identity("x(yz)"), Err(ParseError::MissingEquals)));
        assert!(matches!(parse_identity("x+y = z"), Err(ParseError::Lexical { ch: '+', .. })));
        assert!(matches!(parse_identity("xy = xy"), Err(ParseError::Trivial)));
        assert!(matches!(parse_identity("x = y = z"), Err(ParseError::Unexpected { .. })));
        assert!(matches!(parse_identity("= x"), Err(ParseError::ExpectedFactor { .. })));
        assert!(parse_identity("1x = x").is_err());
    }

    #[test]
    fn balanced_detection() {
        let b = |s| is_balanced(&parse_identity(s).unwrap());
        assert!(b("((x1x2)x3)x4 = x3((x2x1)x4)"));
        assert!(!b("x(x(yz)) = (x(xy))z"));
        assert!(b("(xy)z = x(yz)"));
        assert!(!b("x\\(xy) = y"));
        assert!(!b("(xy)z = x(yt)"));
    }

    #[test]
    fn eval_round_trips() {
        let o = hurwitz(8).unwrap();
        let x = Element::from_fn(8, |i, _| (i as f64 * 0.7).sin() + 0.3);
        let y = Element::from_fn(8, |i, _| (i as f64 * 1.3).cos());
        let asg: HashMap<String, Element> = [("x".to_string(), x.clone()), ("y".to_string(), y.clone())].into();
        let t = parse_term("x\\(xy)").unwrap();
        assert!((eval_term(&o, &t, &asg).unwrap() - &y).norm() < 1e-12);
        let t = parse_term("(xy)/y").unwrap();
        assert!((eval_term(&o, &t, &asg).unwrap() - &x).norm() < 1e-12);
        assert_eq!(eval_term(&o, &Term::var("x"), &asg).unwrap(), x);
        assert!(matches!(eval_term(&o, &Term::var("z"), &asg), Err(Error::Unassigned(_))));
    }

    #[test]
    fn singular_division_propagates() {
        let o = hurwitz(8).unwrap();
        let asg: HashMap<String, Element> =
            [("x".to_string(), Element::zeros(8)), ("y".to_string(), o.basis(1))].into();
        let t = parse_term("x\\y").unwrap();
        assert!(matches!(eval_term(&o, &t, &asg), Err(Error::Singular { .. })));
    }
}
