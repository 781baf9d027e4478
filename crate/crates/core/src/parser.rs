//! Textual equation format: parsing and canonical rendering.
//!
//! Grammar (whitespace-insensitive, ASCII):
//!
//! ```text
//! equation := expr "=" expr ;
//! expr     := ["+"|"-"] term { ("+"|"-") term } ;
//! term     := factor { "*" factor } ;
//! factor   := primary [ "^" natural ] ;
//! primary  := rational | "i" | "z" | deriv | "(" expr ")" ;
//! deriv    := "w" ( { "'" } | "[" natural "]" ) ;
//! rational := natural [ "/" natural ] ;
//! ```
//!
//! `w[k]` is the k-th derivative; `w'`, `w''`, `w'''` are sugar for k <= 3.
//! Multiplication is always explicit and `/` only occurs inside rational
//! literals. After parsing, the equation is normalized to
//! `w^(n) = sum a_chi(z) * prod (w^(j))^chi_j` with the highest derivative's
//! constant coefficient divided out and identical terms merged.

use crate::gauss::GaussRational;
use crate::ode::{CoeffPoly, MultiIndex, PolynomialODE};
use crate::poly::Poly;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

const MAX_TERMS: usize = 4096;
const MAX_EXPONENT: u32 = 512;
const MAX_DERIV_ORDER: u32 = 100;
const MAX_Z_DEGREE: usize = 4096;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseDiagnostic {
    pub byte_offset: usize,
    pub message: String,
    pub severity: Severity,
}

impl ParseDiagnostic {
    fn error(byte_offset: usize, message: impl Into<String>) -> Self {
        ParseDiagnostic { byte_offset, message: message.into(), severity: Severity::Error }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseError {
    /// Input does not conform to the grammar.
    Syntax(ParseDiagnostic),
    /// Division by a non-constant or a fractional power.
    NonPolynomial(ParseDiagnostic),
    /// The highest-order derivative does not appear linearly with a nonzero
    /// constant coefficient.
    NonMonicLeading(ParseDiagnostic),
    /// No derivative of `w` occurs.
    MissingDerivative(ParseDiagnostic),
}

impl ParseError {
    pub fn diagnostic(&self) -> &ParseDiagnostic {
        match self {
            ParseError::Syntax(d)
            | ParseError::NonPolynomial(d)
            | ParseError::NonMonicLeading(d)
            | ParseError::MissingDerivative(d) => d,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (label, d) = match self {
            ParseError::Syntax(d) => ("syntax error", d),
            ParseError::NonPolynomial(d) => ("non-polynomial input", d),
            ParseError::NonMonicLeading(d) => ("non-monic leading derivative", d),
            ParseError::MissingDerivative(d) => ("missing derivative", d),
        };
        write!(f, "{label} at byte {}: {}", d.byte_offset, d.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Equals,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Prime,
    W,
    Z,
    I,
    Nat(BigUint),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        let start = pos;
        let tok = match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'=' => Tok::Equals,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b'\'' => Tok::Prime,
            b'w' => Tok::W,
            b'z' => Tok::Z,
            b'i' => Tok::I,
            b'0'..=b'9' => {
                let mut end = pos;
                while end < bytes.len() && bytes[end].is_ascii_digit() {
                    end += 1;
                }
                let tok = Tok::Nat(src[pos..end].parse().expect("digits"));
                pos = end;
                toks.push(Token { tok, offset: start });
                continue;
            }
            _ => {
                return Err(ParseError::Syntax(ParseDiagnostic::error(
                    pos,
                    format!("unexpected character {:?}", src[pos..].chars().next().unwrap()),
                )));
            }
        };
        pos += 1;
        toks.push(Token { tok, offset: start });
    }
    toks.push(Token { tok: Tok::Eof, offset: bytes.len() });
    Ok(toks)
}

/// Multivariate monomial in the derivatives: derivative order -> exponent,
/// with no zero exponents stored.
type DerivMono = BTreeMap<u32, u32>;

/// Intermediate expanded form: derivative monomial -> coefficient
/// polynomial in `z`.
#[derive(Clone, Debug)]
struct PolyForm {
    terms: BTreeMap<DerivMono, CoeffPoly>,
}

impl PolyForm {
    fn constant(c: GaussRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(DerivMono::new(), Poly::constant(c));
        }
        PolyForm { terms }
    }

    fn var_z() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(DerivMono::new(), Poly::x());
        PolyForm { terms }
    }

    fn var_w(order: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert([(order, 1u32)].into(), Poly::one());
        PolyForm { terms }
    }

    fn neg(&self) -> Self {
        PolyForm { terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect() }
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, a) in &rhs.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Poly::zero);
            *entry = &*entry + a;
        }
        terms.retain(|_, a| !a.is_zero());
        PolyForm { terms }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self, offset: usize) -> Result<Self, ParseError> {
        let mut terms: BTreeMap<DerivMono, CoeffPoly> = BTreeMap::new();
        for (m1, a1) in &self.terms {
            for (m2, a2) in &rhs.terms {
                let mut m = m1.clone();
                for (&ord, &e) in m2 {
                    let slot = m.entry(ord).or_insert(0);
                    *slot = slot.checked_add(e).ok_or_else(|| {
                        ParseError::Syntax(ParseDiagnostic::error(offset, "exponent overflow"))
                    })?;
                    if *slot > MAX_EXPONENT {
                        return Err(ParseError::Syntax(ParseDiagnostic::error(
                            offset,
                            format!("exponent exceeds the supported limit {MAX_EXPONENT}"),
                        )));
                    }
                }
                let prod = a1 * a2;
                if prod.degree().unwrap_or(0) > MAX_Z_DEGREE {
                    return Err(ParseError::Syntax(ParseDiagnostic::error(
                        offset,
                        format!("degree in z exceeds the supported limit {MAX_Z_DEGREE}"),
                    )));
                }
                let entry = terms.entry(m).or_insert_with(Poly::zero);
                *entry = &*entry + &prod;
                if terms.len() > MAX_TERMS {
                    return Err(ParseError::Syntax(ParseDiagnostic::error(
                        offset,
                        format!("expression exceeds the supported limit of {MAX_TERMS} terms"),
                    )));
                }
            }
        }
        terms.retain(|_, a| !a.is_zero());
        Ok(PolyForm { terms })
    }

    fn pow(&self, e: u32, offset: usize) -> Result<Self, ParseError> {
        let mut acc = PolyForm::constant(GaussRational::one());
        for _ in 0..e {
            acc = acc.mul(self, offset)?;
        }
        Ok(acc)
    }
}

struct Parser {
    toks: Vec<Token>,
    k: usize,
    /// First occurrence of the highest derivative order seen so far, for
    /// diagnostics after expansion has erased source positions.
    max_deriv: Option<(u32, usize)>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.k]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.k].clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }

    fn err(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax(ParseDiagnostic::error(offset, msg))
    }

    fn expect_nat(&mut self, what: &str) -> Result<(BigUint, usize), ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Nat(n) => Ok((n, t.offset)),
            _ => Err(self.err(t.offset, format!("expected {what}"))),
        }
    }

    fn nat_to_u32(&self, n: &BigUint, offset: usize, limit: u32, what: &str) -> Result<u32, ParseError> {
        match n.to_u32() {
            Some(v) if v <= limit => Ok(v),
            _ => Err(self.err(offset, format!("{what} exceeds the supported limit {limit}"))),
        }
    }

    fn parse_expr(&mut self) -> Result<PolyForm, ParseError> {
        let mut acc = match self.peek().tok {
            Tok::Plus => {
                self.bump();
                self.parse_term()?
            }
            Tok::Minus => {
                self.bump();
                self.parse_term()?.neg()
            }
            _ => self.parse_term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.parse_term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.parse_term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_term(&mut self) -> Result<PolyForm, ParseError> {
        let mut acc = self.parse_factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    let offset = self.bump().offset;
                    let f = self.parse_factor()?;
                    acc = acc.mul(&f, offset)?;
                }
                Tok::Slash => {
                    let offset = self.peek().offset;
                    return Err(ParseError::NonPolynomial(ParseDiagnostic::error(
                        offset,
                        "division is only allowed inside a rational literal like 3/4",
                    )));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<PolyForm, ParseError> {
        let base = self.parse_primary()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        let caret = self.bump();
        match self.peek().tok.clone() {
            Tok::Nat(n) => {
                let t = self.bump();
                if self.peek().tok == Tok::Slash {
                    return Err(ParseError::NonPolynomial(ParseDiagnostic::error(
                        self.peek().offset,
                        "fractional powers are not supported",
                    )));
                }
                let e = self.nat_to_u32(&n, t.offset, MAX_EXPONENT, "exponent")?;
                base.pow(e, t.offset)
            }
            Tok::LParen => Err(ParseError::NonPolynomial(ParseDiagnostic::error(
                self.peek().offset,
                "exponents must be natural number literals",
            ))),
            _ => Err(self.err(caret.offset, "expected a natural number after '^'")),
        }
    }

    fn parse_primary(&mut self) -> Result<PolyForm, ParseError> {
        let t = self.bump();
        match t.tok {
            Tok::Nat(n) => {
                // rational := natural [ "/" natural ]
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    match self.peek().tok.clone() {
                        Tok::Nat(d) => {
                            let dt = self.bump();
                            if d.is_zero() {
                                return Err(self.err(dt.offset, "zero denominator"));
                            }
                            let value = BigRational::new(n.into(), d.into());
                            Ok(PolyForm::constant(GaussRational::from_rational(value)))
                        }
                        _ => Err(ParseError::NonPolynomial(ParseDiagnostic::error(
                            self.peek().offset,
                            "division by a non-constant is not polynomial",
                        ))),
                    }
                } else {
                    let value = BigRational::from_integer(n.into());
                    Ok(PolyForm::constant(GaussRational::from_rational(value)))
                }
            }
            Tok::I => Ok(PolyForm::constant(GaussRational::i())),
            Tok::Z => Ok(PolyForm::var_z()),
            Tok::W => {
                let order = self.parse_deriv_suffix(t.offset)?;
                if self
                    .max_deriv
                    .map_or(true, |(cur, _)| order > cur)
                {
                    self.max_deriv = Some((order, t.offset));
                }
                Ok(PolyForm::var_w(order))
            }
            Tok::LParen => {
                let inner = self.parse_expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(self.err(close.offset, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::Eof => Err(self.err(t.offset, "unexpected end of input")),
            _ => Err(self.err(t.offset, "expected a number, 'i', 'z', 'w', or '('")),
        }
    }

    fn parse_deriv_suffix(&mut self, w_offset: usize) -> Result<u32, ParseError> {
        match self.peek().tok {
            Tok::Prime => {
                let mut count = 0u32;
                while self.peek().tok == Tok::Prime {
                    self.bump();
                    count += 1;
                }
                if count > 3 {
                    return Err(self.err(
                        w_offset,
                        "at most three primes are supported; write w[k] instead",
                    ));
                }
                Ok(count)
            }
            Tok::LBracket => {
                self.bump();
                let (n, off) = self.expect_nat("a derivative order")?;
                let order = self.nat_to_u32(&n, off, MAX_DERIV_ORDER, "derivative order")?;
                let close = self.bump();
                if close.tok != Tok::RBracket {
                    return Err(self.err(close.offset, "expected ']'"));
                }
                Ok(order)
            }
            _ => Ok(0),
        }
    }
}

/// Parses an equation and normalizes it to
/// `w^(n) = sum a_chi(z) * prod (w^(j))^chi_j`.
pub fn parse_equation(text: &str) -> Result<PolynomialODE, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, k: 0, max_deriv: None };
    let lhs = p.parse_expr()?;
    let eq = p.bump();
    if eq.tok != Tok::Equals {
        return Err(ParseError::Syntax(ParseDiagnostic::error(eq.offset, "expected '='")));
    }
    let rhs = p.parse_expr()?;
    let end = p.bump();
    if end.tok != Tok::Eof {
        let msg = if end.tok == Tok::Equals {
            "only one '=' is allowed"
        } else {
            "unexpected trailing input"
        };
        return Err(ParseError::Syntax(ParseDiagnostic::error(end.offset, msg)));
    }

    let f = lhs.sub(&rhs);
    let n = f
        .terms
        .keys()
        .flat_map(|m| m.keys().copied())
        .max()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            ParseError::MissingDerivative(ParseDiagnostic::error(
                p.max_deriv.map_or(0, |(_, off)| off),
                "no derivative of w occurs in the equation",
            ))
        })?;
    let lead_offset = p
        .max_deriv
        .filter(|&(ord, _)| ord == n)
        .map_or(0, |(_, off)| off);

    // the leading monomial must be exactly w^(n) to the first power, alone
    let lead_key: DerivMono = [(n, 1u32)].into();
    let lead_coeff = match f.terms.get(&lead_key) {
        Some(c) => c.clone(),
        None => {
            return Err(ParseError::NonMonicLeading(ParseDiagnostic::error(
                lead_offset,
                "the highest-order derivative must appear linearly in a term of its own",
            )));
        }
    };
    if !lead_coeff.is_constant() {
        return Err(ParseError::NonMonicLeading(ParseDiagnostic::error(
            lead_offset,
            "the coefficient of the highest-order derivative must be a nonzero constant",
        )));
    }
    for m in f.terms.keys() {
        if m != &lead_key && m.contains_key(&n) {
            return Err(ParseError::NonMonicLeading(ParseDiagnostic::error(
                lead_offset,
                "the highest-order derivative must appear linearly in a term of its own",
            )));
        }
    }

    let c = lead_coeff.coeff(0);
    let mut terms: BTreeMap<MultiIndex, CoeffPoly> = BTreeMap::new();
    for (m, a) in &f.terms {
        if m == &lead_key {
            continue;
        }
        let mut exps = vec![0u32; n as usize];
        for (&ord, &e) in m {
            exps[ord as usize] = e;
        }
        // move to the right-hand side and divide out the leading constant
        let coeff = a.scaled(&(-c.recip()));
        terms.insert(MultiIndex::new(exps), coeff);
    }
    Ok(PolynomialODE::new(n as usize, terms).expect("normalized terms are well-formed"))
}

/// Renders a `GaussRational` as a grammar-conform factor, splitting off a
/// leading sign when the value lies on one axis.
fn gauss_atom(c: &GaussRational) -> (bool, String) {
    fn rat_str(r: &BigRational) -> String {
        r.to_string()
    }
    if c.im.is_zero() {
        (c.re.is_negative(), rat_str(&c.re.abs()))
    } else if c.re.is_zero() {
        let mag = c.im.abs();
        let body = if mag.is_one() { "i".to_string() } else { format!("{}*i", mag) };
        (c.im.is_negative(), body)
    } else {
        let (_, im_body) = gauss_atom(&GaussRational::new(BigRational::zero(), c.im.clone()));
        let sign = if c.im.is_negative() { "-" } else { "+" };
        (false, format!("({}{}{})", c.re, sign, im_body))
    }
}

/// Renders a coefficient polynomial in `z` as a grammar-conform factor
/// (possibly parenthesized), splitting off a leading sign when possible.
fn coeff_atom(a: &CoeffPoly) -> (bool, Vec<String>) {
    let nonzero: Vec<(usize, &GaussRational)> =
        a.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    assert!(!nonzero.is_empty(), "zero coefficient term");
    if nonzero.len() == 1 {
        let (k, c) = nonzero[0];
        let (neg, body) = gauss_atom(c);
        let mut factors = Vec::new();
        if body != "1" || k == 0 {
            factors.push(body);
        }
        match k {
            0 => {}
            1 => factors.push("z".to_string()),
            _ => factors.push(format!("z^{k}")),
        }
        // drop a leading "1" kept only as a placeholder
        if factors.len() > 1 && factors[0] == "1" {
            factors.remove(0);
        }
        (neg, factors)
    } else {
        let mut out = String::from("(");
        for (pos, (k, c)) in nonzero.iter().rev().enumerate() {
            let (neg, body) = gauss_atom(c);
            if pos == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mut factors = Vec::new();
            if body != "1" || *k == 0 {
                factors.push(body);
            }
            match k {
                0 => {}
                1 => factors.push("z".to_string()),
                _ => factors.push(format!("z^{k}")),
            }
            if factors.len() > 1 && factors[0] == "1" {
                factors.remove(0);
            }
            out.push_str(&factors.join("*"));
        }
        out.push(')');
        (false, vec![out])
    }
}

/// Deterministic canonical text: highest derivative alone on the left,
/// terms ordered by descending (degree, exponent vector).
pub fn render_canonical(ode: &PolynomialODE) -> String {
    let mut out = format!("w[{}] = ", ode.order());
    if ode.terms().is_empty() {
        out.push('0');
        return out;
    }
    for (pos, (chi, a)) in ode.terms().iter().rev().enumerate() {
        let (neg, mut factors) = coeff_atom(a);
        let mut vars: Vec<String> = Vec::new();
        for (j, &e) in chi.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let var = if j == 0 { "w".to_string() } else { format!("w[{j}]") };
            vars.push(if e == 1 { var } else { format!("{var}^{e}") });
        }
        if !vars.is_empty() && factors.len() == 1 && factors[0] == "1" {
            factors.clear();
        }
        factors.extend(vars);
        if pos == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&factors.join("*"));
    }
    out
}
