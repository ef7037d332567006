//! Point-count laws `f(n)` written as tiny arithmetic expressions.
//!
//! Grammar (whitespace ignored, `log` is the natural logarithm):
//!
//! ```text
//! sum   := prod ('+' prod)*
//! prod  := pow ('*' pow)*
//! pow   := atom ('^' pow)?
//! atom  := number | 'n' | 'log' '(' sum ')' | '(' sum ')'
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const DEFAULT_LAW: &str = "8*n^2*log(n)";

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(f64),
    N,
    Log(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn eval(&self, n: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::N => n,
            Expr::Log(e) => e.eval(n).ln(),
            Expr::Add(a, b) => a.eval(n) + b.eval(n),
            Expr::Mul(a, b) => a.eval(n) * b.eval(n),
            Expr::Pow(a, b) => a.eval(n).powf(b.eval(n)),
        }
    }
}

/// A parsed density law; `count(n)` is `ceil(expr(n))`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityLaw {
    source: String,
    expr: Expr,
}

impl DensityLaw {
    pub fn parse(src: &str) -> Result<Self> {
        let tokens = tokenize(src)?;
        let mut parser = Parser { tokens: &tokens, pos: 0 };
        let expr = parser.sum()?;
        if parser.pos != tokens.len() {
            return Err(Error::Density(format!("unexpected trailing input in {src:?}")));
        }
        Ok(DensityLaw { source: src.to_string(), expr })
    }

    pub fn value(&self, n: f64) -> f64 {
        self.expr.eval(n)
    }

    /// Number of points for disc radius `n`.
    pub fn count(&self, n: f64) -> Result<usize> {
        let v = self.value(n);
        if !v.is_finite() || v < 0.0 {
            return Err(Error::Density(format!("{} evaluates to {v} at n = {n}", self.source)));
        }
        Ok(v.ceil() as usize)
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}

impl Default for DensityLaw {
    fn default() -> Self {
        DensityLaw::parse(DEFAULT_LAW).expect("default law parses")
    }
}

impl FromStr for DensityLaw {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DensityLaw::parse(s)
    }
}

impl fmt::Display for DensityLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    N,
    Log,
    Plus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Token::Plus),
            '*' => out.push(Token::Star),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::Open),
            ')' => out.push(Token::Close),
            'n' => out.push(Token::N),
            'l' if chars[i..].starts_with(&['l', 'o', 'g']) => {
                out.push(Token::Log);
                i += 2;
            }
            d if d.is_ascii_digit() || d == '.' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '.') {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                let v = text.parse::<f64>().map_err(|_| Error::Density(format!("bad number {text:?}")))?;
                out.push(Token::Num(v));
            }
            other => return Err(Error::Density(format!("unexpected character {other:?} in {src:?}"))),
        }
        i += 1;
    }
    if out.is_empty() {
        return Err(Error::Density("empty expression".into()));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Density(format!("expected {t:?} at token {}", self.pos)))
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.prod()?;
        while self.peek() == Some(&Token::Plus) {
            self.pos += 1;
            lhs = Expr::Add(Box::new(lhs), Box::new(self.prod()?));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Expr> {
        let mut lhs = self.pow()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.pow()?));
        }
        Ok(lhs)
    }

    fn pow(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            return Ok(Expr::Pow(Box::new(base), Box::new(self.pow()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Token::Num(v)) => Ok(Expr::Num(v)),
            Some(Token::N) => Ok(Expr::N),
            Some(Token::Log) => {
                self.expect(Token::Open)?;
                let inner = self.sum()?;
                self.expect(Token::Close)?;
                Ok(Expr::Log(Box::new(inner)))
            }
            Some(Token::Open) => {
                let inner = self.sum()?;
                self.expect(Token::Close)?;
                Ok(inner)
            }
            other => Err(Error::Density(format!("unexpected token {other:?}"))),
        }
    }
}
