//! Polynomial expressions: rationals, `pi`, `t1..t9`, `s1..s9`,
//! `+ - * / ^` and parentheses.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-' | '+'] int | '^' '(' ['-'] int ')')?
//! atom   := int | 'pi' | var | '(' expr ')'
//! ```
//!
//! Division and negative powers need an invertible (monomial) operand.

use std::fmt;

use kahler::{BaseFieldModel, LaurentPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Available variables: `t1..tT` map to indices `0..T`, `s1..sS` follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vars {
    pub t: usize,
    pub s: usize,
}

impl Vars {
    pub fn t_only(n: usize) -> Self {
        Vars { t: n, s: 0 }
    }

    pub fn s_only(n: usize) -> Self {
        Vars { t: 0, s: n }
    }

    pub fn count(&self) -> usize {
        self.t + self.s
    }

    pub fn name(&self, i: usize) -> String {
        if i < self.t {
            format!("t{}", i + 1)
        } else {
            format!("s{}", i - self.t + 1)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Pi,
    Var(char, usize),
    Op(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "number {n}"),
            Tok::Pi => write!(f, "'pi'"),
            Tok::Var(c, i) => write!(f, "variable {c}{i}"),
            Tok::Op(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let err = |msg: String| ParseError { line: l0, col: c0, msg };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "pi" => Tok::Pi,
                w => {
                    let (head, rest) = w.split_at(1);
                    match (head, rest.parse::<usize>()) {
                        ("t" | "s", Ok(k)) if (1..=9).contains(&k) && rest.len() == 1 => {
                            Tok::Var(head.chars().next().unwrap(), k)
                        }
                        _ => return Err(err(format!("unknown symbol '{w}'"))),
                    }
                }
            }
        } else if "+-*/^()".contains(c) {
            i += 1;
            Tok::Op(c)
        } else {
            return Err(err(format!("unexpected character '{c}'")));
        };
        col += i - start;
        out.push(Spanned { tok, line: l0, col: c0 });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    model: BaseFieldModel,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error_here(&self, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, msg: msg.into() }
    }

    fn error_at(&self, pos: usize, msg: impl Into<String>) -> ParseError {
        let t = &self.toks[pos];
        ParseError { line: t.line, col: t.col, msg: msg.into() }
    }

    fn eat(&mut self, op: char) -> bool {
        if *self.peek() == Tok::Op(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if *self.peek() == Tok::Op('/') {
                self.pos += 1;
                let at = self.pos;
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(self.error_at(at, "division by zero"));
                }
                let inv = d
                    .monomial_inverse()
                    .ok_or_else(|| self.error_at(at, "divisor must be a single term"))?;
                acc = acc.mul(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<LaurentPoly, ParseError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<LaurentPoly, ParseError> {
        let base_at = self.pos;
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let Tok::Int(n) = self.peek().clone() else {
            return Err(self.error_here(format!("expected an integer exponent, found {}", self.peek())));
        };
        let n = n
            .to_i64()
            .filter(|&n| n <= MAX_EXPONENT)
            .ok_or_else(|| self.error_here(format!("exponent larger than {MAX_EXPONENT}")))?;
        self.pos += 1;
        if paren && !self.eat(')') {
            return Err(self.error_here(format!("expected ')', found {}", self.peek())));
        }
        let k = if negative { -n } else { n };
        if k < 0 && base.is_zero() {
            return Err(self.error_at(base_at, "negative power of zero"));
        }
        base.pow_signed(k).map_err(|_| self.error_at(base_at, "negative power of a sum"))
    }

    fn atom(&mut self) -> Result<LaurentPoly, ParseError> {
        let n = self.vars.count();
        let model = self.model;
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(LaurentPoly::constant(model, n, model.from_bigint(&v)))
            }
            Tok::Pi => {
                let pi = model
                    .pi()
                    .map_err(|_| self.error_here(format!("'pi' is not available over {model}")))?;
                self.pos += 1;
                Ok(LaurentPoly::constant(model, n, pi))
            }
            Tok::Var(c, k) => {
                let (avail, offset) = if c == 't' { (self.vars.t, 0) } else { (self.vars.s, self.vars.t) };
                if k > avail {
                    return Err(self.error_here(format!("{c}{k} is not available here ({avail} {c}-variables)")));
                }
                self.pos += 1;
                Ok(LaurentPoly::var(model, n, offset + k - 1).expect("index checked"))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error_here(format!("expected ')', found {}", self.peek())));
                }
                Ok(e)
            }
            other => Err(self.error_here(format!("unexpected {other}"))),
        }
    }
}

pub fn parse_poly(src: &str, model: BaseFieldModel, vars: &Vars) -> Result<LaurentPoly, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, model, vars };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here(format!("unexpected {}", p.peek())));
    }
    Ok(e)
}

/// Prints a polynomial in the grammar accepted by [`parse_poly`].
pub fn format_poly(p: &LaurentPoly, vars: &Vars) -> String {
    let names = |i: usize| vars.name(i);
    let text = p.display_with(&names).to_string();
    text
}
