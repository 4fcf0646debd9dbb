//! Ideal expressions.
//!
//! ```text
//! expr    := term (('&' | '∩' | 'cap') term)*
//! term    := factor ('+' factor)*
//! factor  := '(' monlist ')' | 'V(' varlist ')' | '(' expr ')' | '(0)' | '(1)'
//! monlist := mon (',' mon)*
//! mon     := var ('*' var)*
//! var     := 'x' digits
//! ```
//!
//! `V(x1,x2)` is the prime `(x1, x2)`; `+` binds tighter than `&`.

use std::fmt;

use gradedlc_core::combinatorics::MAX_VARIABLES;
use gradedlc_core::{Error as CoreError, SquarefreeMonomialIdeal, VarSet};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealExpr {
    /// Generators, each a list of 1-based variable indices.
    Generators(Vec<Vec<usize>>),
    Prime(Vec<usize>),
    Zero,
    Unit,
    Sum(Box<IdealExpr>, Box<IdealExpr>),
    Intersection(Box<IdealExpr>, Box<IdealExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("squarefree only: x{var} repeated in a monomial at column {column}")]
    NotSquarefree { column: usize, var: usize },
    #[error(transparent)]
    Ideal(#[from] CoreError),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { chars: src.char_indices().collect(), pos: 0, src }
    }

    /// 1-based column in characters.
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn rest(&self) -> &str {
        self.chars.get(self.pos).map_or("", |&(i, _)| &self.src[i..])
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { column: self.column(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.error(format!("expected '{c}', found '{d}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        }
    }

    fn intersection_op(&mut self) -> bool {
        match self.peek() {
            Some('&') | Some('∩') => {
                self.pos += 1;
                true
            }
            Some('c') if self.rest().starts_with("cap") => {
                self.pos += 3;
                true
            }
            _ => false,
        }
    }

    fn expr(&mut self) -> Result<IdealExpr, ParseError> {
        let mut left = self.term()?;
        while self.intersection_op() {
            let right = self.term()?;
            left = IdealExpr::Intersection(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<IdealExpr, ParseError> {
        let mut left = self.factor()?;
        while self.peek() == Some('+') {
            self.pos += 1;
            let right = self.factor()?;
            left = IdealExpr::Sum(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn factor(&mut self) -> Result<IdealExpr, ParseError> {
        match self.peek() {
            Some('V') => {
                self.pos += 1;
                if self.chars.get(self.pos).map(|&(_, c)| c) != Some('(') {
                    return self.error("expected '(' directly after 'V'");
                }
                self.pos += 1;
                let mut vars = vec![self.var()?.0];
                while self.peek() == Some(',') {
                    self.pos += 1;
                    vars.push(self.var()?.0);
                }
                self.expect(')')?;
                Ok(IdealExpr::Prime(vars))
            }
            Some('(') => {
                self.pos += 1;
                let inner = match self.peek() {
                    Some('x') => IdealExpr::Generators(self.monlist()?),
                    Some('0') => {
                        self.pos += 1;
                        IdealExpr::Zero
                    }
                    Some('1') => {
                        self.pos += 1;
                        IdealExpr::Unit
                    }
                    Some(_) => self.expr()?,
                    None => return self.error("unexpected end of input"),
                };
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) => self.error(format!("expected '(' or 'V(', found '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }

    fn monlist(&mut self) -> Result<Vec<Vec<usize>>, ParseError> {
        let mut gens = vec![self.monomial()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            gens.push(self.monomial()?);
        }
        Ok(gens)
    }

    fn monomial(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut vars: Vec<usize> = Vec::new();
        loop {
            let (v, column) = self.var()?;
            if vars.contains(&v) {
                return Err(ParseError::NotSquarefree { column, var: v });
            }
            vars.push(v);
            if self.peek() != Some('*') {
                return Ok(vars);
            }
            self.pos += 1;
        }
    }

    fn var(&mut self) -> Result<(usize, usize), ParseError> {
        if self.peek() != Some('x') {
            return self.error("expected a variable such as x1");
        }
        let column = self.column();
        self.pos += 1;
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected digits after 'x'");
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        match digits.parse::<usize>() {
            Ok(v) if v >= 1 => Ok((v, column)),
            _ => Err(ParseError::Syntax { column, message: format!("invalid variable x{digits}") }),
        }
    }
}

pub fn parse_ideal(text: &str) -> Result<IdealExpr, ParseError> {
    let mut p = Parser::new(text);
    let expr = p.expr()?;
    if let Some(c) = p.peek() {
        return p.error(format!("unexpected '{c}'"));
    }
    Ok(expr)
}

fn vars_to_set(vars: &[usize], n: usize) -> Result<VarSet, CoreError> {
    if n == 0 || n > MAX_VARIABLES {
        return Err(CoreError::UnsupportedVariableCount(n));
    }
    if let Some(&bad) = vars.iter().find(|&&v| v > n) {
        return Err(CoreError::VariableOutOfRange { index: bad, n });
    }
    Ok(VarSet::from_vars(vars))
}

impl IdealExpr {
    pub fn evaluate(&self, n: usize) -> Result<SquarefreeMonomialIdeal, CoreError> {
        match self {
            IdealExpr::Generators(gens) => {
                let sets = gens.iter().map(|g| vars_to_set(g, n)).collect::<Result<Vec<_>, _>>()?;
                SquarefreeMonomialIdeal::normalize(n, sets)
            }
            IdealExpr::Prime(vars) => {
                let s = vars_to_set(vars, n)?;
                SquarefreeMonomialIdeal::normalize(n, s.iter().map(VarSet::single))
            }
            IdealExpr::Zero => SquarefreeMonomialIdeal::normalize(n, []),
            IdealExpr::Unit => SquarefreeMonomialIdeal::normalize(n, [VarSet::EMPTY]),
            IdealExpr::Sum(a, b) => a.evaluate(n)?.sum(&b.evaluate(n)?),
            IdealExpr::Intersection(a, b) => a.evaluate(n)?.intersect(&b.evaluate(n)?),
        }
    }
}

fn join_vars(vars: &[usize], sep: &str) -> String {
    vars.iter().map(|v| format!("x{v}")).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Generators(gens) => {
                let mons: Vec<String> = gens.iter().map(|g| join_vars(g, "*")).collect();
                write!(f, "({})", mons.join(", "))
            }
            IdealExpr::Prime(vars) => write!(f, "V({})", join_vars(vars, ",")),
            IdealExpr::Zero => f.write_str("(0)"),
            IdealExpr::Unit => f.write_str("(1)"),
            IdealExpr::Sum(a, b) => {
                write!(f, "{} + {}", Paren(a, false), Paren(b, true))
            }
            IdealExpr::Intersection(a, b) => write!(f, "{a} & {}", Paren(b, false)),
        }
    }
}

/// Parenthesizes children so printing keeps the tree: intersections under
/// a sum, and right-nested sums or intersections.
struct Paren<'a>(&'a IdealExpr, bool);

impl fmt::Display for Paren<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            IdealExpr::Intersection(..) => write!(f, "({})", self.0),
            IdealExpr::Sum(..) if self.1 => write!(f, "({})", self.0),
            other => write!(f, "{other}"),
        }
    }
}

/// Parses and evaluates in one step.
pub fn parse_and_evaluate(text: &str, n: usize) -> Result<SquarefreeMonomialIdeal, ParseError> {
    Ok(parse_ideal(text)?.evaluate(n)?)
}
