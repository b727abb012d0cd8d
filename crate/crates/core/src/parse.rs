//! Text grammar for polynomials.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' exponent)?
//! exponent:= INT ('^' exponent)?          right-associative
//! atom    := INT | INT '/' INT | IDENT | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected: `2x` and `x y` are syntax errors, write `2*x`.
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{GermError, Result};
use crate::poly::{Exponent, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ratio(BigInt, BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> GermError {
    GermError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let num: BigInt = num.parse().expect("digits");
            let tok = if i < chars.len() && chars[i] == '/' {
                let dstart = i + 1;
                let mut j = dstart;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == dstart {
                    return Err(syntax(
                        l0,
                        c0 + (i - start) + 1,
                        "expected an integer denominator after '/'",
                    ));
                }
                let den: String = chars[dstart..j].iter().collect();
                let den: BigInt = den.parse().expect("digits");
                if den.is_zero() {
                    return Err(syntax(l0, c0, "zero denominator"));
                }
                i = j;
                Tok::Ratio(num, den)
            } else {
                Tok::Int(num)
            };
            column += i - start;
            out.push(Spanned {
                tok,
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Spanned {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(syntax(l0, c0, format!("unexpected character '{c}'")));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let k = self.exponent()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<u32> {
        let t = self.bump();
        let value = match t.tok {
            Tok::Int(v) => v,
            _ => {
                return Err(syntax(
                    t.line,
                    t.column,
                    "exponent must be a nonnegative integer literal",
                ))
            }
        };
        let value = if self.peek().tok == Tok::Caret {
            self.bump();
            let inner = self.exponent()?;
            num_traits::pow::checked_pow(value, inner as usize)
                .ok_or_else(|| syntax(t.line, t.column, "exponent too large"))?
        } else {
            value
        };
        value
            .to_u32()
            .filter(|&k| k <= 10_000)
            .ok_or_else(|| syntax(t.line, t.column, "exponent too large"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let t = self.bump();
        let n = self.n();
        match t.tok {
            Tok::Int(v) => Ok(Polynomial::constant(n, Rational::from_integer(v))),
            Tok::Ratio(a, b) => Ok(Polynomial::constant(n, Rational::new(a, b))),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Polynomial::var(n, i),
                None => Err(GermError::UnknownVariable {
                    name,
                    line: t.line,
                    column: t.column,
                }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(syntax(close.line, close.column, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(syntax(t.line, t.column, "unexpected end of input")),
            other => Err(syntax(
                t.line,
                t.column,
                format!("unexpected token {}", describe(&other)),
            )),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(v) => format!("'{v}'"),
        Tok::Ratio(a, b) => format!("'{a}/{b}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

/// Checks that a variable list is nonempty, distinct and made of identifiers.
pub fn validate_vars(vars: &[String]) -> Result<()> {
    if vars.is_empty() {
        return Err(GermError::InvalidInput("variable list is empty".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && chars.all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(GermError::InvalidInput(format!(
                "invalid variable name `{v}`"
            )));
        }
        if vars[..i].contains(v) {
            return Err(GermError::InvalidInput(format!(
                "duplicate variable name `{v}`"
            )));
        }
    }
    Ok(())
}

/// Parses `src` as a polynomial in the given variables and fully expands it.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<Polynomial> {
    validate_vars(vars)?;
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, vars };
    let poly = p.expr()?;
    let rest = p.peek().clone();
    if rest.tok != Tok::End {
        let message = match rest.tok {
            Tok::Ident(_) | Tok::Int(_) | Tok::Ratio(..) | Tok::LParen => format!(
                "unexpected token {}; implicit multiplication is not allowed, use '*'",
                describe(&rest.tok)
            ),
            ref other => format!("unexpected token {}", describe(other)),
        };
        return Err(syntax(rest.line, rest.column, message));
    }
    Ok(poly)
}

fn format_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_monomial(e: &Exponent, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.as_slice().iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], a)),
        }
    }
    parts.join("*")
}

/// Canonical text form; terms in descending global degrevlex order.
pub fn format_poly(p: &Polynomial, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono = format_monomial(e, vars);
        if mono.is_empty() {
            out.push_str(&format_rational(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_rational(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}
