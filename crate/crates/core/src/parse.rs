//! Text syntax for polynomials: `3/2 * x^2 p + hbar * x`.
//!
//! Juxtaposition multiplies, `^` takes a nonnegative integer exponent, and
//! `/` divides by a numeric literal. Products keep the written order, so the
//! same tree evaluates in commutative and noncommutative rings.

use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rat),
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for ch in src[..offset].chars() {
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

fn parse_error(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = position(src, offset);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Self> {
        let mut toks = Vec::new();
        let bytes: Vec<(usize, char)> = src.char_indices().collect();
        let mut i = 0;
        while i < bytes.len() {
            let (off, ch) = bytes[i];
            if ch.is_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() {
                while i < bytes.len() && bytes[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = bytes.get(i).map_or(src.len(), |b| b.0);
                toks.push((Tok::Int(src[off..end].to_string()), off));
            } else if ch.is_alphabetic() || ch == '_' {
                while i < bytes.len() && (bytes[i].1.is_alphanumeric() || bytes[i].1 == '_') {
                    i += 1;
                }
                let end = bytes.get(i).map_or(src.len(), |b| b.0);
                toks.push((Tok::Ident(src[off..end].to_string()), off));
            } else if "+-*/^()".contains(ch) {
                toks.push((Tok::Sym(ch), off));
                i += 1;
            } else {
                return Err(parse_error(src, off, format!("unexpected character `{ch}`")));
            }
        }
        Ok(Lexer { src, toks })
    }
}

struct Parser<'a, 'n> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'n [String],
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.src.len(), |t| t.1)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        parse_error(self.src, self.offset(), msg)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('+')) => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Sym('-')) => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))
        )
    }

    fn term(&mut self) -> Result<Expr> {
        if let Some(Tok::Sym('-')) = self.peek() {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut lhs = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Sym('*')) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                Some(Tok::Sym('/')) => {
                    self.pos += 1;
                    let at = self.offset();
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) => {
                            self.pos += 1;
                            let d: Rat = d.parse().map_err(|_| self.err("bad integer"))?;
                            if d.is_zero() {
                                return Err(parse_error(self.src, at, "division by zero"));
                            }
                            lhs = Expr::Mul(Box::new(lhs), Box::new(Expr::Num(d.recip())));
                        }
                        _ => return Err(self.err("only division by an integer literal is allowed")),
                    }
                }
                _ if self.starts_factor() => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Some(Tok::Sym('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    self.pos += 1;
                    let k: u32 = k.parse().map_err(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(s)) => {
                self.pos += 1;
                Ok(Expr::Num(s.parse().map_err(|_| self.err("bad integer"))?))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                match self.names.iter().position(|n| *n == name) {
                    Some(i) => Ok(Expr::Var(i)),
                    None => Err(parse_error(self.src, at, format!("unknown variable `{name}`"))),
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(_) => Err(self.err("expected a number, variable or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses `src` with variables resolved against `names`.
pub fn parse_expr(src: &str, names: &[String]) -> Result<Expr> {
    let lex = Lexer::run(src)?;
    let mut p = Parser {
        src: lex.src,
        toks: lex.toks,
        pos: 0,
        names,
    };
    if p.toks.is_empty() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Evaluates an expression tree in any ring given by closures.
pub fn eval_expr<T: Clone>(
    e: &Expr,
    num: &dyn Fn(&Rat) -> T,
    var: &dyn Fn(usize) -> T,
    add: &dyn Fn(&T, &T) -> T,
    mul: &dyn Fn(&T, &T) -> T,
) -> T {
    let go = |x: &Expr| eval_expr(x, num, var, add, mul);
    match e {
        Expr::Num(r) => num(r),
        Expr::Var(i) => var(*i),
        Expr::Add(a, b) => add(&go(a), &go(b)),
        Expr::Sub(a, b) => add(&go(a), &mul(&num(&Rat::from(-1)), &go(b))),
        Expr::Mul(a, b) => mul(&go(a), &go(b)),
        Expr::Neg(a) => mul(&num(&Rat::from(-1)), &go(a)),
        Expr::Pow(a, k) => {
            let base = go(a);
            let mut acc = num(&Rat::one());
            for _ in 0..*k {
                acc = mul(&acc, &base);
            }
            acc
        }
    }
}
