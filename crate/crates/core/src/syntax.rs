//! Text syntax for points, tuples and maps.
//!
//! Points: `a`, `a/b`, `inf`, or `[a:b]`.
//!
//! Maps: either an expression in `z` or explicit forms `[f_0,...,f_d : g_0,...,g_d]`
//! with coefficients of `x^d, x^(d-1) y, ..., y^d`. Expressions follow
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/")? unary)*      juxtaposition multiplies
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" "-"? integer)?
//! atom   := integer | "z" | "(" expr ")"
//! ```
//!
//! and are reduced to lowest terms before homogenizing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::projline::ProjPoint;
use crate::ratmap::{AffineRationalFunction, HomogMap};
use crate::sarith::Rational;

fn parse_error(position: usize, token: &str, message: &str) -> Error {
    Error::Parse {
        position,
        token: token.to_string(),
        message: message.to_string(),
    }
}

fn parse_int(text: &str, position: usize) -> Result<BigInt> {
    let t = text.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(position, text, "expected an integer"));
    }
    t.parse().map_err(|_| parse_error(position, text, "expected an integer"))
}

pub fn parse_point(text: &str) -> Result<ProjPoint> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") || t == "∞" {
        return Ok(ProjPoint::infinity());
    }
    let bad = || parse_error(0, t, "expected a, a/b, inf or [a:b]");
    if let Some(inner) = t.strip_prefix('[') {
        let inner = inner.strip_suffix(']').ok_or_else(bad)?;
        let (x, y) = inner.split_once(':').ok_or_else(bad)?;
        let x = parse_int(x, 1)?;
        let y = parse_int(y, 2 + inner.find(':').unwrap_or(0))?;
        return ProjPoint::new(x, y).map_err(|_| parse_error(0, t, "[0:0] is not a point"));
    }
    match t.split_once('/') {
        Some((a, b)) => {
            let a = parse_int(a, 0)?;
            let b = parse_int(b, t.find('/').unwrap_or(0) + 1)?;
            if b.is_zero() {
                return Err(parse_error(0, t, "zero denominator"));
            }
            ProjPoint::new(a, b)
        }
        None => ProjPoint::new(parse_int(t, 0)?, BigInt::one()),
    }
}

/// Points separated by whitespace or commas.
pub fn parse_tuple(text: &str) -> Result<Vec<ProjPoint>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(parse_point)
        .collect()
}

/// Canonical bracket form, space separated.
pub fn format_tuple(points: &[ProjPoint]) -> String {
    points.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

// Polynomials over Q, coefficient of z^i at index i, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
struct QPoly(Vec<Rational>);

impl QPoly {
    fn constant(c: Rational) -> Self {
        QPoly(vec![c]).trimmed()
    }

    fn z() -> Self {
        QPoly(vec![Rational::zero(), Rational::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let get = |p: &QPoly, i: usize| p.0.get(i).cloned().unwrap_or_else(Rational::zero);
        QPoly((0..n).map(|i| get(self, i) + get(o, i)).collect()).trimmed()
    }

    fn neg(&self) -> QPoly {
        QPoly(self.0.iter().map(|c| -c).collect())
    }

    fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly(vec![]);
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly(out).trimmed()
    }

    fn rem(&self, d: &QPoly) -> QPoly {
        let mut r = self.0.clone();
        let lead = d.0.last().expect("nonzero divisor");
        while r.len() >= d.0.len() && !r.is_empty() {
            let shift = r.len() - d.0.len();
            let f = r.last().unwrap() / lead;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        QPoly(r)
    }

    fn div_exact(&self, d: &QPoly) -> QPoly {
        let mut r = self.0.clone();
        let lead = d.0.last().expect("nonzero divisor");
        let mut q = vec![Rational::zero(); (r.len() + 1).saturating_sub(d.0.len())];
        while r.len() >= d.0.len() && !r.is_empty() {
            let shift = r.len() - d.0.len();
            let f = r.last().unwrap() / lead;
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            q[shift] = f;
            r.pop();
        }
        QPoly(q).trimmed()
    }

    fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

}

// Common integer multiple of a numerator and denominator.
fn clear_denominators(num: &QPoly, den: &QPoly) -> (Vec<BigInt>, Vec<BigInt>) {
    let l = num.0.iter().chain(&den.0).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scale = |p: &QPoly| -> Vec<BigInt> {
        p.0.iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect()
    };
    (scale(num), scale(den))
}

#[derive(Debug, Clone)]
struct Frac {
    num: QPoly,
    den: QPoly,
}

impl Frac {
    fn poly(p: QPoly) -> Frac {
        Frac {
            num: p,
            den: QPoly::constant(Rational::one()),
        }
    }

    fn reduced(self) -> Frac {
        let g = self.num.gcd(&self.den);
        if g.degree() == 0 {
            return self;
        }
        Frac {
            num: self.num.div_exact(&g),
            den: self.den.div_exact(&g),
        }
    }

    fn add(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
        .reduced()
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
        .reduced()
    }

    fn inv(&self) -> Option<Frac> {
        (!self.num.is_zero()).then(|| Frac {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let tok = match c {
            ' ' | '\t' => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(text[start..i].parse().expect("digits"))));
                continue;
            }
            'z' | 'x' => Tok::Z,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => {
                let end = text[i..].chars().next().map_or(i + 1, |ch| i + ch.len_utf8());
                return Err(parse_error(i, &text[i..end], "unexpected character"));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |(p, _)| *p)
    }

    fn error(&self, message: &str) -> Error {
        let at = self.here();
        let token = self.text[at..].split_whitespace().next().unwrap_or("end of input");
        parse_error(at, token, message)
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&Frac { num: t.num.neg(), den: t.den });
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.here();
                    let d = self.unary()?;
                    let inv = d
                        .inv()
                        .ok_or_else(|| parse_error(at, &self.text[at..], "division by zero"))?;
                    acc = acc.mul(&inv);
                }
                Some(Tok::Int(_)) | Some(Tok::Z) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let t = self.unary()?;
                Ok(Frac { num: t.num.neg(), den: t.den })
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.pos += 1;
        }
        let e = match self.peek() {
            Some(Tok::Int(n)) => u32::try_from(n).map_err(|_| self.error("exponent too large"))?,
            _ => return Err(self.error("expected an integer exponent")),
        };
        let at = self.here();
        self.pos += 1;
        let mut out = Frac::poly(QPoly::constant(Rational::one()));
        for _ in 0..e {
            out = out.mul(&base);
        }
        if negative {
            out = out
                .inv()
                .ok_or_else(|| parse_error(at, "^", "zero to a negative power"))?;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Frac::poly(QPoly::constant(Rational::from_integer(n))))
            }
            Some(Tok::Z) => {
                self.pos += 1;
                Ok(Frac::poly(QPoly::z()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("expected a number, z or '('")),
        }
    }
}

fn parse_forms(text: &str) -> Result<HomogMap> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| parse_error(0, text, "expected [f_0,...:g_0,...]"))?;
    let (f, g) = inner
        .split_once(':')
        .ok_or_else(|| parse_error(0, text, "missing ':' between the two forms"))?;
    let list = |part: &str, offset: usize| -> Result<Vec<BigInt>> {
        part.split(',')
            .map(|c| parse_int(c, offset))
            .collect()
    };
    HomogMap::from_forms(list(f, 1)?, list(g, 2 + f.len())?)
}

/// Parses a map from an expression in `z` or an explicit pair of forms.
pub fn parse_map(text: &str) -> Result<HomogMap> {
    let t = text.trim();
    if t.starts_with('[') {
        return parse_forms(t);
    }
    let mut p = Parser {
        text: t,
        toks: tokenize(t)?,
        pos: 0,
    };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.error("unexpected token"));
    }
    let f = f.reduced();
    let (num, den) = clear_denominators(&f.num, &f.den);
    HomogMap::from_affine(&AffineRationalFunction::new(num, den))
}

fn format_poly(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push(if c.is_negative() { '-' } else { '+' });
        }
        let a = c.abs();
        let mono = match k {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{k}"),
        };
        match (a.is_one(), mono.is_empty()) {
            (true, false) => out.push_str(&mono),
            (_, true) => out.push_str(&a.to_string()),
            (false, false) => out.push_str(&format!("{a}*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn is_single_term(coeffs: &[BigInt]) -> bool {
    coeffs.iter().filter(|c| !c.is_zero()).count() <= 1
}

/// Affine expression for a map, parseable by [`parse_map`].
pub fn format_map(phi: &HomogMap) -> String {
    let a = phi.to_affine();
    let num = format_poly(&a.num);
    let den = format_poly(&a.den);
    if den == "1" {
        return num;
    }
    let wrap = |s: String, single: bool| if single && !s.starts_with('-') { s } else { format!("({s})") };
    format!(
        "{}/{}",
        wrap(num, is_single_term(&a.num)),
        wrap(den, is_single_term(&a.den) && !a.den.iter().skip(1).any(|c| !c.is_zero()))
    )
}

/// Explicit form pair `[f_0,...:g_0,...]`.
pub fn format_forms(phi: &HomogMap) -> String {
    let join = |v: &[BigInt]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    format!("[{}:{}]", join(phi.f()), join(phi.g()))
}
