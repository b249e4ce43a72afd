//! The map-expression language: scalar literals over the exact field,
//! polynomials in `z`/`w` (or `t` for the inner polynomial of a non-flow
//! map), pair maps, `henon(p=…, a=…)`, `elem_nonflow(…)`, `tau`, composition
//! with `o`, and iteration with `^`.
//!
//! Scalar subexpressions are folded during parsing, so the AST carries
//! canonical values; printing and reparsing round-trips.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::elementary::{ElemError, ElementaryNonFlow};
use crate::henon::{HenonComposition, HenonError, HenonFactor};
use crate::poly::{Axis, BiPoly, PolyError, PolyMap2, UniPoly};
use crate::scalar::{ExactScalar, Scalar};

type Q = ExactScalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("p must be monic of degree at least 2: generalized Hénon maps require it")]
    NotMonic,
    #[error("the parameter a must be nonzero")]
    ZeroA,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Henon(#[from] HenonError),
    #[error(transparent)]
    Elem(#[from] ElemError),
}

/// Parsed map expression with folded scalar constants. The composition
/// structure is preserved so Hénon compositions stay recognizable.
#[derive(Debug, Clone, PartialEq)]
pub enum MapExpr {
    Pair(BiPoly<Q>, BiPoly<Q>),
    Henon { p: UniPoly<Q>, a: Q },
    ElemNonflow(ElementaryNonFlow),
    Tau,
    Compose(Box<MapExpr>, Box<MapExpr>),
    Power(Box<MapExpr>, u32),
}

/// Result of parsing: the expression and the working conductor after lifting
/// by every root-of-unity literal (the session default is 12).
#[derive(Debug, Clone)]
pub struct Parsed {
    pub expr: MapExpr,
    pub conductor: u32,
}

impl MapExpr {
    /// The expression as an explicit plane map.
    pub fn to_poly_map(&self) -> Result<PolyMap2<Q>, CliError> {
        match self {
            MapExpr::Pair(f, s) => Ok(PolyMap2::new(f.clone(), s.clone())),
            MapExpr::Henon { p, a } => Ok(HenonFactor::new(p.clone(), a.clone())?.as_map()),
            MapExpr::ElemNonflow(e) => Ok(e.as_map()),
            MapExpr::Tau => Ok(PolyMap2::swap()),
            MapExpr::Compose(a, b) => Ok(a.to_poly_map()?.compose(&b.to_poly_map()?)?),
            MapExpr::Power(m, n) => Ok(m.to_poly_map()?.iterate(*n)?),
        }
    }

    /// The expression as a Hénon composition, when it is built purely from
    /// `henon(...)` factors under composition and positive powers.
    pub fn to_henon_composition(&self) -> Option<HenonComposition<Q>> {
        match self {
            MapExpr::Henon { p, a } => {
                let factor = HenonFactor::new(p.clone(), a.clone()).ok()?;
                Some(HenonComposition::single(factor))
            }
            MapExpr::Compose(a, b) => {
                let left = a.to_henon_composition()?;
                let right = b.to_henon_composition()?;
                Some(left.then_inner(&right))
            }
            MapExpr::Power(m, n) => m.to_henon_composition()?.power(*n).ok(),
            _ => None,
        }
    }

    pub fn to_elem_nonflow(&self) -> Option<&ElementaryNonFlow> {
        match self {
            MapExpr::ElemNonflow(e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Pair(a, b) => write!(f, "({a}, {b})"),
            MapExpr::Henon { p, a } => write!(f, "henon(p={p}, a={a})"),
            MapExpr::ElemNonflow(e) => write!(f, "{e}"),
            MapExpr::Tau => write!(f, "tau"),
            MapExpr::Compose(a, b) => {
                write!(f, "{a} o ")?;
                if matches!(**b, MapExpr::Compose(_, _)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            MapExpr::Power(m, n) => {
                if matches!(**m, MapExpr::Compose(_, _) | MapExpr::Power(_, _)) {
                    write!(f, "({m})^{n}")
                } else {
                    write!(f, "{m}^{n}")
                }
            }
        }
    }
}

/// Parse a map expression.
pub fn parse_map(input: &str) -> Result<Parsed, CliError> {
    let mut p = Parser::new(input)?;
    let expr = p.map_expr()?;
    p.expect_end()?;
    Ok(Parsed {
        expr,
        conductor: p.conductor,
    })
}

/// Parse a constant scalar expression.
pub fn parse_scalar(input: &str) -> Result<Q, CliError> {
    let mut p = Parser::new(input)?;
    let v = p.scalar()?;
    p.expect_end()?;
    Ok(v)
}

/// Parse a point `"<scalar>,<scalar>"`.
pub fn parse_point(input: &str) -> Result<(Q, Q), CliError> {
    let mut p = Parser::new(input)?;
    let z = p.scalar()?;
    p.expect_tok(&Tok::Comma, "','")?;
    let w = p.scalar()?;
    p.expect_end()?;
    Ok((z, w))
}

// ---------------------------------------------------------------------------
// lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(BigRational),
    LPar,
    RPar,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eq,
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let bytes: Vec<char> = input.chars().collect();
    let mut toks = vec![];
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '(' => {
                toks.push((Tok::LPar, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RPar, start));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, start));
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, start));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, start));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, start));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, start));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, start));
                i += 1;
            }
            '=' => {
                toks.push((Tok::Eq, start));
                i += 1;
            }
            '0'..='9' | '.' => {
                let mut intpart = String::new();
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    intpart.push(bytes[i]);
                    i += 1;
                }
                let mut fracpart = String::new();
                if i < bytes.len() && bytes[i] == '.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        fracpart.push(bytes[i]);
                        i += 1;
                    }
                }
                if intpart.is_empty() && fracpart.is_empty() {
                    return Err(syntax_at(input, start, "bare '.' is not a number"));
                }
                // exponent suffix: e or E followed by optional sign + digits
                let mut exponent: i64 = 0;
                if i < bytes.len() && (bytes[i] == 'e' || bytes[i] == 'E') {
                    let mut j = i + 1;
                    let mut sign = 1i64;
                    if j < bytes.len() && (bytes[j] == '+' || bytes[j] == '-') {
                        if bytes[j] == '-' {
                            sign = -1;
                        }
                        j += 1;
                    }
                    let mut digits = String::new();
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        digits.push(bytes[j]);
                        j += 1;
                    }
                    if !digits.is_empty() {
                        exponent = sign * digits.parse::<i64>().unwrap_or(0);
                        i = j;
                    }
                }
                let digits = format!(
                    "{}{}",
                    if intpart.is_empty() { "0" } else { &intpart },
                    fracpart
                );
                let numer: BigInt = digits.parse().unwrap();
                let mut value = BigRational::new(
                    numer,
                    num_traits::pow::pow(BigInt::from(10), fracpart.len()),
                );
                if exponent > 0 {
                    value *= BigRational::from_integer(num_traits::pow::pow(
                        BigInt::from(10),
                        exponent as usize,
                    ));
                } else if exponent < 0 {
                    value /= BigRational::from_integer(num_traits::pow::pow(
                        BigInt::from(10),
                        (-exponent) as usize,
                    ));
                }
                toks.push((Tok::Number(value), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    ident.push(bytes[i]);
                    i += 1;
                }
                toks.push((Tok::Ident(ident), start));
            }
            other => {
                return Err(syntax_at(
                    input,
                    start,
                    &format!("unexpected character '{other}'"),
                ));
            }
        }
    }
    Ok(toks)
}

fn syntax_at(input: &str, offset: usize, message: &str) -> CliError {
    let mut line = 1;
    let mut col = 1;
    for (k, c) in input.chars().enumerate() {
        if k == offset {
            break;
        }
        if c == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    CliError::Syntax {
        line,
        col,
        message: message.to_string(),
    }
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

/// The session starts at conductor 12 (covering i, the cube roots of unity
/// and -1); parsing `zeta(m)` lifts it by least common multiple.
const DEFAULT_CONDUCTOR: u32 = 12;

struct Parser<'a> {
    input: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    conductor: u32,
}

const PAIR_VARS: &[(char, Axis)] = &[('z', Axis::Z), ('w', Axis::W)];
const W_VARS: &[(char, Axis)] = &[('w', Axis::W)];
const T_VARS: &[(char, Axis)] = &[('t', Axis::W)];

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Result<Self, CliError> {
        Ok(Parser {
            input,
            toks: lex(input)?,
            pos: 0,
            conductor: DEFAULT_CONDUCTOR,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, o)| *o)
            .unwrap_or(self.input.len())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: &str) -> CliError {
        syntax_at(self.input, self.offset(), message)
    }

    fn expect_tok(&mut self, tok: &Tok, what: &str) -> Result<(), CliError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {what}")))
        }
    }

    fn expect_end(&self) -> Result<(), CliError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), CliError> {
        match self.peek() {
            Some(Tok::Ident(id)) if id == name => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(&format!("expected '{name}'"))),
        }
    }

    fn uint(&mut self) -> Result<u32, CliError> {
        use num_traits::{Signed, ToPrimitive};
        let err = self.error("expected a nonnegative integer");
        match self.bump() {
            Some(Tok::Number(n)) if n.is_integer() && !n.is_negative() => {
                n.to_integer().to_u32().ok_or(err)
            }
            _ => Err(err),
        }
    }

    // map_expr := map_term ('o' map_term)*
    fn map_expr(&mut self) -> Result<MapExpr, CliError> {
        let mut acc = self.map_term()?;
        while let Some(Tok::Ident(id)) = self.peek() {
            if id == "o" {
                self.pos += 1;
                let rhs = self.map_term()?;
                acc = MapExpr::Compose(Box::new(acc), Box::new(rhs));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    // map_term := map_atom ('^' uint)?
    fn map_term(&mut self) -> Result<MapExpr, CliError> {
        let atom = self.map_atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let n = self.uint()?;
            Ok(MapExpr::Power(Box::new(atom), n))
        } else {
            Ok(atom)
        }
    }

    fn map_atom(&mut self) -> Result<MapExpr, CliError> {
        match self.peek() {
            Some(Tok::Ident(id)) if id == "tau" => {
                self.pos += 1;
                Ok(MapExpr::Tau)
            }
            Some(Tok::Ident(id)) if id == "henon" => self.henon(),
            Some(Tok::Ident(id)) if id == "elem_nonflow" => self.elem_nonflow(),
            Some(Tok::LPar) => {
                if self.paren_has_top_level_comma() {
                    self.pair()
                } else {
                    self.expect_tok(&Tok::LPar, "'('")?;
                    let inner = self.map_expr()?;
                    self.expect_tok(&Tok::RPar, "')'")?;
                    Ok(inner)
                }
            }
            _ => Err(self.error(
                "expected a map: tau, henon(...), elem_nonflow(...), a pair, \
                 or a parenthesized expression",
            )),
        }
    }

    /// Looking at '(' — does the group contain a comma at depth 1?
    fn paren_has_top_level_comma(&self) -> bool {
        let mut depth = 0usize;
        for (tok, _) in &self.toks[self.pos..] {
            match tok {
                Tok::LPar => depth += 1,
                Tok::RPar => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 {
                        return false;
                    }
                }
                Tok::Comma if depth == 1 => return true,
                _ => {}
            }
        }
        false
    }

    fn pair(&mut self) -> Result<MapExpr, CliError> {
        self.expect_tok(&Tok::LPar, "'('")?;
        let first = self.poly(PAIR_VARS)?;
        self.expect_tok(&Tok::Comma, "','")?;
        let second = self.poly(PAIR_VARS)?;
        self.expect_tok(&Tok::RPar, "')'")?;
        Ok(MapExpr::Pair(first, second))
    }

    fn henon(&mut self) -> Result<MapExpr, CliError> {
        self.expect_ident("henon")?;
        self.expect_tok(&Tok::LPar, "'('")?;
        self.expect_ident("p")?;
        self.expect_tok(&Tok::Eq, "'='")?;
        let p_poly = self.poly(W_VARS)?;
        self.expect_tok(&Tok::Comma, "','")?;
        self.expect_ident("a")?;
        self.expect_tok(&Tok::Eq, "'='")?;
        let a = self.scalar()?;
        self.expect_tok(&Tok::RPar, "')'")?;

        let p = bipoly_to_uni(&p_poly, 'w')
            .ok_or_else(|| CliError::Domain("p must be a polynomial in w alone".into()))?;
        if !p.is_monic() || p.degree().unwrap_or(0) < 2 {
            return Err(CliError::NotMonic);
        }
        if a.is_zero() {
            return Err(CliError::ZeroA);
        }
        Ok(MapExpr::Henon { p, a })
    }

    fn elem_nonflow(&mut self) -> Result<MapExpr, CliError> {
        self.expect_ident("elem_nonflow")?;
        self.expect_tok(&Tok::LPar, "'('")?;
        self.expect_ident("r")?;
        self.expect_tok(&Tok::Eq, "'='")?;
        let r = self.uint()?;
        self.expect_tok(&Tok::Comma, "','")?;
        self.expect_ident("mu")?;
        self.expect_tok(&Tok::Eq, "'='")?;
        let mu = self.uint()?;
        self.expect_tok(&Tok::Comma, "','")?;
        self.expect_ident("q")?;
        self.expect_tok(&Tok::Eq, "'='")?;
        let q_poly = self.poly(T_VARS)?;
        self.expect_tok(&Tok::Comma, "','")?;
        self.expect_ident("beta")?;
        self.expect_tok(&Tok::Eq, "'='")?;
        let beta = self.scalar()?;
        self.expect_tok(&Tok::RPar, "')'")?;

        let q = bipoly_to_uni(&q_poly, 't')
            .ok_or_else(|| CliError::Domain("q must be a polynomial in t alone".into()))?;
        let e = ElementaryNonFlow::new(r, mu, q, beta)?;
        Ok(MapExpr::ElemNonflow(e))
    }

    // poly := ('-')? pterm (('+'|'-') pterm)*
    fn poly(&mut self, vars: &[(char, Axis)]) -> Result<BiPoly<Q>, CliError> {
        let mut acc = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            self.pterm(vars)?.neg()
        } else {
            self.pterm(vars)?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.pterm(vars)?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.pterm(vars)?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // pterm := pfactor (('*'|'/') pfactor)*
    fn pterm(&mut self, vars: &[(char, Axis)]) -> Result<BiPoly<Q>, CliError> {
        let mut acc = self.pfactor(vars)?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.pfactor(vars)?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.pfactor(vars)?;
                    if !rhs.is_constant() {
                        return Err(CliError::Domain(
                            "division is only defined by nonzero constants".into(),
                        ));
                    }
                    let inv = rhs
                        .constant_term()
                        .invert()
                        .ok_or_else(|| CliError::Domain("division by zero".into()))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    // pfactor := patom ('^' uint)?
    fn pfactor(&mut self, vars: &[(char, Axis)]) -> Result<BiPoly<Q>, CliError> {
        let atom = self.patom(vars)?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let n = self.uint()?;
            Ok(atom.pow(n))
        } else {
            Ok(atom)
        }
    }

    fn patom(&mut self, vars: &[(char, Axis)]) -> Result<BiPoly<Q>, CliError> {
        match self.peek().cloned() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.patom(vars)?.neg())
            }
            Some(Tok::Number(n)) => {
                self.pos += 1;
                Ok(BiPoly::constant(Q::from_rational(n)))
            }
            Some(Tok::Ident(id)) if id == "i" => {
                self.pos += 1;
                self.conductor = lcm_u32(self.conductor, 4);
                Ok(BiPoly::constant(Q::i()))
            }
            Some(Tok::Ident(id)) if id == "zeta" => {
                self.pos += 1;
                self.expect_tok(&Tok::LPar, "'('")?;
                let n = self.uint()?;
                self.expect_tok(&Tok::RPar, "')'")?;
                if n == 0 {
                    return Err(CliError::Domain("zeta(0) is not defined".into()));
                }
                self.conductor = lcm_u32(self.conductor, n);
                Ok(BiPoly::constant(Q::primitive_root(n)))
            }
            Some(Tok::Ident(id)) if id.len() == 1 => {
                let c = id.chars().next().unwrap();
                match vars.iter().find(|(v, _)| *v == c) {
                    Some((_, Axis::Z)) => {
                        self.pos += 1;
                        Ok(BiPoly::var_z())
                    }
                    Some((_, Axis::W)) => {
                        self.pos += 1;
                        Ok(BiPoly::var_w())
                    }
                    None => Err(self.error(&format!(
                        "unknown identifier '{id}' (allowed variables here: {})",
                        vars.iter().map(|(v, _)| *v).collect::<String>()
                    ))),
                }
            }
            Some(Tok::LPar) => {
                self.pos += 1;
                let inner = self.poly(vars)?;
                self.expect_tok(&Tok::RPar, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable, zeta(N), i, or '('")),
        }
    }

    fn scalar(&mut self) -> Result<Q, CliError> {
        let p = self.poly(&[])?;
        if !p.is_constant() {
            return Err(CliError::Domain("expected a constant scalar".into()));
        }
        Ok(p.constant_term())
    }
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    num_integer::Integer::lcm(&(a as u64), &(b as u64)) as u32
}

/// Extract a univariate polynomial from a bivariate one supported on a
/// single axis.
fn bipoly_to_uni(p: &BiPoly<Q>, var: char) -> Option<UniPoly<Q>> {
    let mut coeffs: Vec<Q> = vec![];
    for ((i, j), c) in p.terms() {
        if *i != 0 {
            return None;
        }
        let exp = *j as usize;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, Q::zero());
        }
        coeffs[exp] = c.clone();
    }
    Some(UniPoly::new(coeffs, var))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn parses_pair() {
        let parsed = parse_map("(w, w^2 - z)").unwrap();
        let expected = MapExpr::Pair(
            BiPoly::var_w(),
            BiPoly::from_terms([((0, 2), int(1)), ((1, 0), int(-1))]),
        );
        assert_eq!(parsed.expr, expected);
    }

    #[test]
    fn parses_henon_composition_with_degree() {
        let parsed = parse_map("henon(p=w^2, a=1) o henon(p=w^3 - w, a=2)").unwrap();
        let comp = parsed.expr.to_henon_composition().unwrap();
        assert_eq!(comp.degree(), 6);
        assert_eq!(comp.factors().len(), 2);
    }

    #[test]
    fn rejects_non_monic_p() {
        let err = parse_map("henon(p=2*w^2, a=1)").unwrap_err();
        assert_eq!(err, CliError::NotMonic);
    }

    #[test]
    fn rejects_zero_a() {
        let err = parse_map("henon(p=w^2, a=0)").unwrap_err();
        assert_eq!(err, CliError::ZeroA);
    }

    #[test]
    fn rejects_unknown_identifier_with_position() {
        let err = parse_map("(w, q^2)").unwrap_err();
        match err {
            CliError::Syntax { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 5);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn scalar_literals() {
        assert_eq!(parse_scalar("3/2").unwrap(), Q::from_ratio(3, 2));
        assert_eq!(parse_scalar("1.5").unwrap(), Q::from_ratio(3, 2));
        assert_eq!(parse_scalar("1e6").unwrap(), Q::from_int(1_000_000));
        assert_eq!(parse_scalar("i").unwrap(), Q::i());
        assert_eq!(
            parse_scalar("zeta(3)^2").unwrap(),
            Q::primitive_root(3).pow_int(2).unwrap()
        );
        assert_eq!(
            parse_scalar("1/2 + zeta(12)").unwrap(),
            Q::from_ratio(1, 2).add(&Q::primitive_root(12))
        );
    }

    #[test]
    fn conductor_lifts_with_literals() {
        let parsed = parse_map("(w, w^2 - zeta(5)*z)").unwrap();
        assert_eq!(parsed.conductor, 60);
        let parsed2 = parse_map("(w, w^2 - z)").unwrap();
        assert_eq!(parsed2.conductor, 12);
    }

    #[test]
    fn parses_elem_nonflow() {
        let parsed = parse_map("elem_nonflow(r=2, mu=1, q=t^2 + 1, beta=-1)").unwrap();
        let e = parsed.expr.to_elem_nonflow().unwrap();
        assert_eq!(e.r(), 2);
        assert_eq!(e.mu(), 1);
        assert_eq!(e.k(), 2);
    }

    #[test]
    fn composition_and_power_structure() {
        let parsed = parse_map("(henon(p=w^2, a=1) o tau)^2").unwrap();
        match &parsed.expr {
            MapExpr::Power(inner, 2) => {
                assert!(matches!(**inner, MapExpr::Compose(_, _)));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        // a power of a Hénon expression is still a Hénon composition
        let sq = parse_map("henon(p=w^2, a=1)^3").unwrap();
        let comp = sq.expr.to_henon_composition().unwrap();
        assert_eq!(comp.factors().len(), 3);
    }

    #[test]
    fn print_parse_round_trip() {
        let sources = [
            "(w, w^2 - z)",
            "henon(p=w^2, a=1)",
            "henon(p=w^3 - 1/2*w + 3, a=zeta(3))",
            "henon(p=w^2, a=1) o henon(p=w^2, a=-1)",
            "(henon(p=w^2, a=1) o tau)^2",
            "elem_nonflow(r=2, mu=1, q=t^2 + 1, beta=-1)",
            "tau",
            "(z + w^3, w)",
            "(-w^5 - z - w, -w)",
        ];
        for src in sources {
            let parsed = parse_map(src).unwrap();
            let printed = format!("{}", parsed.expr);
            let reparsed = parse_map(&printed)
                .unwrap_or_else(|e| panic!("reparse of '{printed}' failed: {e}"));
            assert_eq!(parsed.expr, reparsed.expr, "round trip through '{printed}'");
        }
    }

    #[test]
    fn point_parsing() {
        let (z, w) = parse_point("0,1e6").unwrap();
        assert!(z.is_zero());
        assert_eq!(w, Q::from_int(1_000_000));
        let (z, w) = parse_point("1/2 + i, -3").unwrap();
        assert_eq!(z, Q::from_ratio(1, 2).add(&Q::i()));
        assert_eq!(w, Q::from_int(-3));
    }
}
