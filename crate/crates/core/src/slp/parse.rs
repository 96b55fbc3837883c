//! Text front end: one polynomial per line, `#` starts a comment.
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := var | int | '(' expr ')'
//! ```

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::algebra::field::Field;
use crate::error::{Error, Result};
use crate::slp::mpoly::MPoly;
use crate::slp::program::{monomial, Slp, SlpBuilder};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Expr {
    Var(usize),
    Int(BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn degree(&self) -> u32 {
        match self {
            Expr::Var(_) => 1,
            Expr::Int(_) => 0,
            Expr::Neg(a) => a.degree(),
            Expr::Add(a, b) | Expr::Sub(a, b) => a.degree().max(b.degree()),
            Expr::Mul(a, b) => a.degree() + b.degree(),
            Expr::Pow(a, e) => a.degree() * e,
        }
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> Error {
        Error::SyntaxError {
            line: self.line,
            column: self.pos + 1,
            expected: expected.to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = digits.parse().map_err(|_| {
                self.pos = start;
                self.error("exponent (unsigned integer)")
            })?;
            return Ok(match e {
                0 => Expr::Int(BigInt::from(1)),
                1 => base,
                _ => Expr::Pow(Box::new(base), e),
            });
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                Ok(Expr::Int(digits.parse().expect("ascii digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Expr::Var(i)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some('/') => Err(self.error("operand (division is not supported)")),
            _ => Err(self.error("variable, integer or '('")),
        }
    }
}

fn parse_lines(text: &str, vars: &[&str]) -> Result<Vec<Expr>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut p = Parser {
            chars: line.chars().collect(),
            pos: 0,
            line: k + 1,
            vars,
        };
        let e = p.expr()?;
        if p.peek().is_some() {
            let expected = if p.peek() == Some('/') {
                "operator (division is not supported)"
            } else {
                "'+', '-', '*', '^' or end of line"
            };
            return Err(p.error(expected));
        }
        out.push(e);
    }
    Ok(out)
}

fn flatten_product<'a>(e: &'a Expr, out: &mut Vec<&'a Expr>) {
    match e {
        Expr::Mul(x, y) => {
            flatten_product(x, out);
            flatten_product(y, out);
        }
        _ => out.push(e),
    }
}

/// Exponent vector of a product of variable powers.
fn as_monomial(e: &Expr, out: &mut [u32]) -> bool {
    match e {
        Expr::Var(i) => {
            out[*i] += 1;
            true
        }
        Expr::Mul(x, y) => as_monomial(x, out) && as_monomial(y, out),
        Expr::Pow(a, k) => {
            let mut inner = vec![0; out.len()];
            if !as_monomial(a, &mut inner) {
                return false;
            }
            for (o, i) in out.iter_mut().zip(inner) {
                *o += i * k;
            }
            true
        }
        _ => false,
    }
}

fn lower<F: Field>(e: &Expr, b: &mut SlpBuilder<F::Elem>, monos: &mut HashMap<Vec<u32>, usize>, f: &F) -> usize {
    if matches!(e, Expr::Mul(..) | Expr::Pow(..)) {
        let mut exps = vec![0; b.n_inputs()];
        if as_monomial(e, &mut exps) {
            if let Some(k) = monomial(b, monos, &exps) {
                return k;
            }
        }
    }
    match e {
        Expr::Var(i) => b.input(*i),
        Expr::Int(n) => b.constant(f.from_bigint(n)),
        Expr::Neg(a) => {
            let x = lower(a, b, monos, f);
            b.scale(f.neg(&f.one()), x)
        }
        Expr::Add(x, y) => {
            let (x, y) = (lower(x, b, monos, f), lower(y, b, monos, f));
            b.add(x, y)
        }
        Expr::Sub(x, y) => {
            let (x, y) = (lower(x, b, monos, f), lower(y, b, monos, f));
            b.sub(x, y)
        }
        Expr::Mul(..) => {
            let mut factors = Vec::new();
            flatten_product(e, &mut factors);
            let mut coeff = f.one();
            let mut exps = vec![0; b.n_inputs()];
            let mut rest = Vec::new();
            for x in factors {
                match x {
                    Expr::Int(n) => coeff = f.mul(&coeff, &f.from_bigint(n)),
                    _ if as_monomial(x, &mut exps) => {}
                    _ => rest.push(x),
                }
            }
            let mut acc = monomial(b, monos, &exps);
            for x in rest {
                let z = lower(x, b, monos, f);
                acc = Some(match acc {
                    Some(a) => b.mul(a, z),
                    None => z,
                });
            }
            match acc {
                None => b.constant(coeff),
                Some(a) if coeff == f.one() => a,
                Some(a) => b.scale(coeff, a),
            }
        }
        Expr::Pow(a, k) => {
            let x = lower(a, b, monos, f);
            b.pow(x, *k)
        }
    }
}

fn expand<F: Field>(e: &Expr, n: usize, f: &F) -> MPoly<F::Elem> {
    match e {
        Expr::Var(i) => MPoly::var(n, *i, f),
        Expr::Int(c) => MPoly::constant(n, f.from_bigint(c), f),
        Expr::Neg(a) => expand(a, n, f).neg(f),
        Expr::Add(x, y) => expand(x, n, f).add(&expand(y, n, f), f),
        Expr::Sub(x, y) => expand(x, n, f).sub(&expand(y, n, f), f),
        Expr::Mul(x, y) => expand(x, n, f).mul(&expand(y, n, f), f),
        Expr::Pow(a, k) => expand(a, n, f).pow(*k, f),
    }
}

/// Parses a system into a straight-line program over `vars`.
pub fn parse_poly_system<F: Field>(text: &str, vars: &[&str], f: &F) -> Result<Slp<F::Elem>> {
    let exprs = parse_lines(text, vars)?;
    let mut b = SlpBuilder::new(vars.len());
    let mut monos = HashMap::new();
    let outs = exprs.iter().map(|e| lower(e, &mut b, &mut monos, f)).collect();
    Ok(b.finish(outs, exprs.iter().map(Expr::degree).collect()))
}

/// Dense expansion straight from the parse tree, independent of the
/// straight-line program path.
pub fn parse_poly_system_dense<F: Field>(text: &str, vars: &[&str], f: &F) -> Result<Vec<MPoly<F::Elem>>> {
    Ok(parse_lines(text, vars)?
        .iter()
        .map(|e| expand(e, vars.len(), f))
        .collect())
}

/// Default variable names `X1, ..., Xn`.
pub fn default_vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}
