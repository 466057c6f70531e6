//! Textual ring specifications.
//!
//! ```text
//! expr := factor ("x" factor)*
//! factor := ctor "(" args ")" | "(" expr ")"
//! ctor := Z | GF | M | T | P | Nil2 | TD | MT | Op | Quot | Table
//! ```
//!
//! `#` starts a comment running to the end of the line. Products are
//! flattened, so `Z(2) x (Z(2) x Z(2))` and `Z(2) x Z(2) x Z(2)` parse to the
//! same expression.

use std::fmt;

use thiserror::Error;

use crate::arith::{is_prime, prime_power, prime_power_parts};
use crate::constructors::{
    gf, matrix_ring, mixed_tri, nil2, product, trunc_poly, twisted_dual, upper_tri, zmod,
    FieldSpec,
};
use crate::elemset::ElementSet;
use crate::error::{Result, RingError};
use crate::ideal::{ideal_closure, quotient_ring};
use crate::ring::RingTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingExpr {
    Zmod(u64),
    GF(u64),
    Prod(Vec<RingExpr>),
    Mat(usize, Box<RingExpr>),
    Tri(usize, Box<RingExpr>),
    TruncPoly(u64, usize),
    Nil2(u64),
    TwistedDual(u64),
    MixedTri,
    Opp(Box<RingExpr>),
    Quot(Box<RingExpr>, Vec<Vec<u64>>),
    Table {
        shape: Vec<u64>,
        consts: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("range error at {line}:{col}: {msg}")]
    Range { line: usize, col: usize, msg: String },
}

impl RingExpr {
    /// Number of basis generators of the evaluated ring, when it can be
    /// read off the expression without evaluating a quotient.
    pub fn basis_len(&self) -> Option<usize> {
        match self {
            RingExpr::Zmod(n) => Some(prime_power_parts(*n).len()),
            RingExpr::GF(q) => prime_power(*q).map(|(_, e)| e as usize),
            RingExpr::Prod(fs) => fs.iter().map(RingExpr::basis_len).sum(),
            RingExpr::Mat(k, e) => e.basis_len().map(|b| k * k * b),
            RingExpr::Tri(k, e) => e.basis_len().map(|b| k * (k + 1) / 2 * b),
            RingExpr::TruncPoly(_, n) => Some(*n),
            RingExpr::Nil2(_) => Some(3),
            RingExpr::TwistedDual(q) => prime_power(*q).map(|(_, e)| 2 * e as usize),
            RingExpr::MixedTri => Some(5),
            RingExpr::Opp(e) => e.basis_len(),
            RingExpr::Quot(..) => None,
            RingExpr::Table { shape, .. } => Some(shape.len()),
        }
    }

    /// Product of two expressions, flattened.
    pub fn times(self, other: RingExpr) -> RingExpr {
        let mut factors = match self {
            RingExpr::Prod(fs) => fs,
            e => vec![e],
        };
        match other {
            RingExpr::Prod(fs) => factors.extend(fs),
            e => factors.push(e),
        }
        RingExpr::Prod(factors)
    }
}

pub fn parse(text: &str) -> std::result::Result<RingExpr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(t) => Err(p.syntax(t, format!("unexpected {} after expression", t.kind))),
    }
}

pub fn eval(expr: &RingExpr) -> Result<RingTable> {
    match expr {
        RingExpr::Zmod(n) => zmod(*n),
        RingExpr::GF(q) => gf(*q),
        RingExpr::Prod(fs) => product(&fs.iter().map(eval).collect::<Result<Vec<_>>>()?),
        RingExpr::Mat(k, e) => matrix_ring(*k, &eval(e)?),
        RingExpr::Tri(k, e) => upper_tri(*k, &eval(e)?),
        RingExpr::TruncPoly(p, n) => trunc_poly(*p, *n),
        RingExpr::Nil2(p) => nil2(*p),
        RingExpr::TwistedDual(q) => twisted_dual(*q),
        RingExpr::MixedTri => mixed_tri(),
        RingExpr::Opp(e) => Ok(eval(e)?.opposite()),
        RingExpr::Quot(e, gens) => {
            let base = eval(e)?;
            let mut set = base.empty_set();
            for g in gens {
                if g.len() != base.rank() {
                    return Err(RingError::MalformedCoords(format!(
                        "generator {g:?} has length {}, ring has {} basis elements",
                        g.len(),
                        base.rank()
                    )));
                }
                set.insert(base.elem(g)?);
            }
            let ideal: ElementSet = ideal_closure(&base, &set);
            Ok(quotient_ring(&base, &ideal)?.quotient)
        }
        RingExpr::Table {
            shape,
            consts,
            unit,
        } => RingTable::new(shape.clone(), consts.clone(), unit.clone()),
    }
}

/// Parses and evaluates in one step.
pub fn eval_str(text: &str) -> std::result::Result<RingTable, SpecError> {
    Ok(eval(&parse(text)?)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub fn canonical_print(expr: &RingExpr) -> String {
    expr.to_string()
}

struct List<'a, T>(&'a [T]);

impl<T: fmt::Display> fmt::Display for List<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

struct Vecs<'a>(&'a [Vec<u64>]);

impl fmt::Display for Vecs<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", List(v))?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zmod(n) => write!(f, "Z({n})"),
            RingExpr::GF(q) => write!(f, "GF({q})"),
            RingExpr::Prod(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    if matches!(x, RingExpr::Prod(_)) {
                        write!(f, "({x})")?;
                    } else {
                        write!(f, "{x}")?;
                    }
                }
                Ok(())
            }
            RingExpr::Mat(k, e) => write!(f, "M({k}, {e})"),
            RingExpr::Tri(k, e) => write!(f, "T({k}, {e})"),
            RingExpr::TruncPoly(p, n) => write!(f, "P({p}, {n})"),
            RingExpr::Nil2(p) => write!(f, "Nil2({p})"),
            RingExpr::TwistedDual(q) => write!(f, "TD({q})"),
            RingExpr::MixedTri => f.write_str("MT()"),
            RingExpr::Opp(e) => write!(f, "Op({e})"),
            RingExpr::Quot(e, gens) => write!(f, "Quot({e}, {})", Vecs(gens)),
            RingExpr::Table {
                shape,
                consts,
                unit,
            } => {
                write!(f, "Table({}, [", List(shape))?;
                for (i, row) in consts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", Vecs(row))?;
                }
                write!(f, "], {})", List(unit))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Ident(s) => write!(f, "'{s}'"),
            Kind::Int(n) => write!(f, "integer {n}"),
            Kind::LParen => f.write_str("'('"),
            Kind::RParen => f.write_str("')'"),
            Kind::LBracket => f.write_str("'['"),
            Kind::RBracket => f.write_str("']'"),
            Kind::Comma => f.write_str("','"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> std::result::Result<(Vec<Token>, (usize, usize)), ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        };
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let kind = match c {
            '(' => Some(Kind::LParen),
            ')' => Some(Kind::RParen),
            '[' => Some(Kind::LBracket),
            ']' => Some(Kind::RBracket),
            ',' => Some(Kind::Comma),
            _ => None,
        };
        if let Some(kind) = kind {
            bump(&mut chars);
            tokens.push(Token {
                kind,
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                bump(&mut chars);
            }
            let n = s.parse().map_err(|_| ParseError::Range {
                line: tl,
                col: tc,
                msg: format!("integer {s} is too large"),
            })?;
            tokens.push(Token {
                kind: Kind::Int(n),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c == 'x' {
            bump(&mut chars);
            tokens.push(Token {
                kind: Kind::Ident("x".into()),
                line: tl,
                col: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                s.push(d);
                bump(&mut chars);
            }
            tokens.push(Token {
                kind: Kind::Ident(s),
                line: tl,
                col: tc,
            });
            continue;
        }
        return Err(ParseError::Syntax {
            line: tl,
            col: tc,
            msg: format!("unexpected character {c:?}"),
        });
    }
    Ok((tokens, (line, col)))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

type PResult<T> = std::result::Result<T, ParseError>;

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        let (tokens, end) = tokenize(text)?;
        Ok(Parser {
            tokens,
            pos: 0,
            end,
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.col))
    }

    fn syntax(&self, t: &Token, msg: String) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            msg,
        }
    }

    fn range_at(&self, at: (usize, usize), msg: String) -> ParseError {
        ParseError::Range {
            line: at.0,
            col: at.1,
            msg,
        }
    }

    fn next(&mut self, what: &str) -> PResult<Token> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(ParseError::Syntax {
                line: self.end.0,
                col: self.end.1,
                msg: format!("expected {what}, found end of input"),
            }),
        }
    }

    fn expect(&mut self, kind: Kind) -> PResult<()> {
        let t = self.next(&kind.to_string())?;
        if t.kind == kind {
            Ok(())
        } else {
            Err(self.syntax(&t, format!("expected {kind}, found {}", t.kind)))
        }
    }

    fn eat(&mut self, kind: &Kind) -> bool {
        if self.peek().is_some_and(|t| &t.kind == kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<RingExpr> {
        let mut e = self.factor()?;
        while self.eat(&Kind::Ident("x".into())) {
            let rhs = self.factor()?;
            e = e.times(rhs);
        }
        Ok(e)
    }

    fn int(&mut self) -> PResult<(u64, (usize, usize))> {
        let t = self.next("integer")?;
        match t.kind {
            Kind::Int(n) => Ok((n, (t.line, t.col))),
            ref k => Err(self.syntax(&t, format!("expected integer, found {k}"))),
        }
    }

    fn size(&mut self) -> PResult<usize> {
        let (k, at) = self.int()?;
        if k == 0 || k > 32 {
            return Err(self.range_at(at, format!("matrix size {k} out of range 1..=32")));
        }
        Ok(k as usize)
    }

    fn prime(&mut self) -> PResult<u64> {
        let (p, at) = self.int()?;
        if !is_prime(p) {
            return Err(self.range_at(at, format!("{p} is not prime")));
        }
        Ok(p)
    }

    fn vector(&mut self) -> PResult<(Vec<u64>, (usize, usize))> {
        let at = self.here();
        self.expect(Kind::LBracket)?;
        let mut v = Vec::new();
        if !self.eat(&Kind::RBracket) {
            loop {
                v.push(self.int()?.0);
                if self.eat(&Kind::RBracket) {
                    break;
                }
                self.expect(Kind::Comma)?;
            }
        }
        Ok((v, at))
    }

    fn list_of<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect(Kind::LBracket)?;
        let mut v = Vec::new();
        if !self.eat(&Kind::RBracket) {
            loop {
                v.push(item(self)?);
                if self.eat(&Kind::RBracket) {
                    break;
                }
                self.expect(Kind::Comma)?;
            }
        }
        Ok(v)
    }

    fn factor(&mut self) -> PResult<RingExpr> {
        let t = self.next("ring expression")?;
        let name = match &t.kind {
            Kind::LParen => {
                let e = self.expr()?;
                self.expect(Kind::RParen)?;
                return Ok(e);
            }
            Kind::Ident(s) => s.clone(),
            k => return Err(self.syntax(&t, format!("expected ring constructor, found {k}"))),
        };
        if name == "MT" && !self.peek().is_some_and(|t| t.kind == Kind::LParen) {
            return Ok(RingExpr::MixedTri);
        }
        self.expect(Kind::LParen)?;
        let e = match name.as_str() {
            "Z" => {
                let (n, at) = self.int()?;
                if n < 2 {
                    return Err(self.range_at(at, format!("Z({n}) needs n >= 2")));
                }
                RingExpr::Zmod(n)
            }
            "GF" => {
                let (q, at) = self.int()?;
                if FieldSpec::standard(q).is_err() {
                    return Err(self.range_at(at, format!("unsupported field order {q}")));
                }
                RingExpr::GF(q)
            }
            "M" | "T" => {
                let k = self.size()?;
                self.expect(Kind::Comma)?;
                let e = Box::new(self.expr()?);
                if name == "M" {
                    RingExpr::Mat(k, e)
                } else {
                    RingExpr::Tri(k, e)
                }
            }
            "P" => {
                let p = self.prime()?;
                self.expect(Kind::Comma)?;
                let (n, at) = self.int()?;
                if n == 0 || n > 64 {
                    return Err(self.range_at(at, format!("truncation degree {n} out of range 1..=64")));
                }
                RingExpr::TruncPoly(p, n as usize)
            }
            "Nil2" => RingExpr::Nil2(self.prime()?),
            "TD" => {
                let (q, at) = self.int()?;
                if q != 4 && q != 9 {
                    return Err(self.range_at(at, format!("TD({q}) needs q = 4 or 9")));
                }
                RingExpr::TwistedDual(q)
            }
            "MT" => RingExpr::MixedTri,
            "Op" => RingExpr::Opp(Box::new(self.expr()?)),
            "Quot" => {
                let base = self.expr()?;
                self.expect(Kind::Comma)?;
                let at = self.here();
                let gens = self.list_of(|p| Ok(p.vector()?.0))?;
                if let Some(b) = base.basis_len() {
                    if let Some(g) = gens.iter().find(|g| g.len() != b) {
                        return Err(self.range_at(
                            at,
                            format!("generator of length {} for a ring with {b} basis elements", g.len()),
                        ));
                    }
                }
                RingExpr::Quot(Box::new(base), gens)
            }
            "Table" => self.table()?,
            other => {
                return Err(self.syntax(&t, format!("unknown constructor '{other}'")));
            }
        };
        self.expect(Kind::RParen)?;
        Ok(e)
    }

    fn table(&mut self) -> PResult<RingExpr> {
        let (shape, shape_at) = self.vector()?;
        if let Some(&d) = shape.iter().find(|&&d| prime_power(d).is_none()) {
            return Err(self.range_at(shape_at, format!("shape entry {d} is not a prime power")));
        }
        let k = shape.len();
        self.expect(Kind::Comma)?;
        let consts_at = self.here();
        let consts = self.list_of(|p| p.list_of(|p| Ok(p.vector()?.0)))?;
        let well_formed = consts.len() == k
            && consts.iter().all(|row| {
                row.len() == k
                    && row
                        .iter()
                        .all(|v| v.len() == k && v.iter().zip(&shape).all(|(c, d)| c < d))
            });
        if !well_formed {
            return Err(self.range_at(
                consts_at,
                format!("structure constants must be {k} x {k} vectors of length {k} within the shape"),
            ));
        }
        self.expect(Kind::Comma)?;
        let (unit, unit_at) = self.vector()?;
        if unit.len() != k || unit.iter().zip(&shape).any(|(c, d)| c >= d) {
            return Err(self.range_at(unit_at, format!("unit must be a length-{k} vector within the shape")));
        }
        Ok(RingExpr::Table {
            shape,
            consts,
            unit,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;
    use proptest::prelude::*;

    #[test]
    fn products_flatten() {
        let e = parse("GF(4) x GF(4)").unwrap();
        assert_eq!(e, RingExpr::Prod(vec![RingExpr::GF(4), RingExpr::GF(4)]));
        assert_eq!(canonical_print(&e), "GF(4) x GF(4)");
        let e = parse("Z(2) x (Z(2) x Z(2))").unwrap();
        assert_eq!(canonical_print(&e), "Z(2) x Z(2) x Z(2)");
        assert_eq!(e, parse("(Z(2) x Z(2)) x Z(2)").unwrap());
        assert_eq!(e, parse("Z(2)xZ(2)xZ(2)").unwrap());
    }

    #[test]
    fn constructors_parse() {
        assert_eq!(
            parse("T(2, GF(3))").unwrap(),
            RingExpr::Tri(2, Box::new(RingExpr::GF(3)))
        );
        assert_eq!(parse("MT").unwrap(), RingExpr::MixedTri);
        assert_eq!(parse(" MT ( ) # comment").unwrap(), RingExpr::MixedTri);
        assert_eq!(eval(&parse("M(2,GF(2))").unwrap()).unwrap().order(), 16);
        assert_eq!(eval(&parse("Nil2(3)").unwrap()).unwrap().order(), 27);
        let e = parse("M(2, Z(2) x Z(2))").unwrap();
        assert_eq!(parse(&canonical_print(&e)).unwrap(), e);
    }

    #[test]
    fn quotient_of_upper_triangular() {
        let q = eval_str("Quot(T(2,GF(3)), [[0,1,0]])").unwrap();
        assert_eq!(q.order(), 9);
        let f3 = gf(3).unwrap();
        assert!(is_isomorphic(&q, &product(&[f3.clone(), f3]).unwrap()).unwrap());
    }

    #[test]
    fn table_round_trip() {
        let text = "Table([2,2], [[[1,0],[0,1]],[[0,1],[1,1]]], [1,0])";
        let e = parse(text).unwrap();
        assert_eq!(canonical_print(&e), text);
        let r = eval(&e).unwrap();
        assert_eq!(r, gf(4).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse("GF(4) x\n  GF(6)") {
            Err(ParseError::Range { line: 2, col: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("Z(4) Z(2)") {
            Err(ParseError::Syntax { line: 1, col: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("Foo(2)"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("Z(1)"), Err(ParseError::Range { .. })));
        assert!(matches!(parse("TD(8)"), Err(ParseError::Range { .. })));
        assert!(matches!(parse("Nil2(4)"), Err(ParseError::Range { .. })));
        assert!(matches!(parse("Quot(GF(4), [[1]])"), Err(ParseError::Range { .. })));
        assert!(matches!(parse("Table([6], [[[1]]], [1])"), Err(ParseError::Range { .. })));
        assert!(matches!(parse("Table([2], [[[1]]], [2])"), Err(ParseError::Range { .. })));
        assert!(matches!(parse("Z(2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn eval_is_deterministic() {
        let e = parse("Op(T(2, GF(2))) x Nil2(2)").unwrap();
        assert_eq!(eval(&e).unwrap().canonical_bytes(), eval(&e).unwrap().canonical_bytes());
    }

    fn leaf() -> impl Strategy<Value = RingExpr> {
        let table = (0usize..3)
            .prop_flat_map(|k| prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 8, 9]), k))
            .prop_flat_map(|shape| {
                let k = shape.len();
                let vecs = |shape: Vec<u64>| {
                    shape
                        .into_iter()
                        .map(|d| 0..d)
                        .collect::<Vec<_>>()
                };
                let consts = prop::collection::vec(
                    prop::collection::vec(vecs(shape.clone()), k),
                    k,
                );
                (Just(shape.clone()), consts, vecs(shape))
            })
            .prop_map(|(shape, consts, unit)| RingExpr::Table {
                shape,
                consts,
                unit,
            });
        prop_oneof![
            (2u64..2000).prop_map(RingExpr::Zmod),
            prop::sample::select(vec![2u64, 3, 4, 8, 9, 16, 27, 32]).prop_map(RingExpr::GF),
            (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..6)
                .prop_map(|(p, n)| RingExpr::TruncPoly(p, n)),
            prop::sample::select(vec![2u64, 3, 5]).prop_map(RingExpr::Nil2),
            prop::sample::select(vec![4u64, 9]).prop_map(RingExpr::TwistedDual),
            Just(RingExpr::MixedTri),
            table,
        ]
    }

    fn quot_of(inner: RingExpr) -> impl Strategy<Value = RingExpr> {
        let len = inner.basis_len();
        let gen_len = match len {
            Some(b) => (b..=b).boxed(),
            None => (0usize..4).boxed(),
        };
        gen_len
            .prop_flat_map(|b| prop::collection::vec(prop::collection::vec(0u64..10, b), 0..3))
            .prop_map(move |gens| RingExpr::Quot(Box::new(inner.clone()), gens))
    }

    fn expr() -> impl Strategy<Value = RingExpr> {
        leaf().prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 2..4)
                    .prop_map(|fs| fs.into_iter().reduce(RingExpr::times).unwrap()),
                (1usize..4, inner.clone()).prop_map(|(k, e)| RingExpr::Mat(k, Box::new(e))),
                (1usize..4, inner.clone()).prop_map(|(k, e)| RingExpr::Tri(k, Box::new(e))),
                inner.clone().prop_map(|e| RingExpr::Opp(Box::new(e))),
                inner.prop_flat_map(quot_of),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn print_then_parse_is_identity(e in expr()) {
            let text = canonical_print(&e);
            prop_assert_eq!(parse(&text).unwrap(), e);
        }
    }
}
