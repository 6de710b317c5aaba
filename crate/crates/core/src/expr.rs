//! Ideal expressions.
//!
//! ```text
//! ideal := "(" gen ("," gen)* ")"
//!        | "[[" int "," int ";" int "," int "]]"
//!        | "P(" int "," int ")"
//! gen   := ["-"] term (("+" | "-") term)*
//! term  := int | [int ["*"]] ("w" | "sqrt(" int ")")
//! ```
//!
//! Whitespace is ignored. `w` is the generator ω of the maximal order,
//! `P(p,k)` the k-th prime above p (counting from 1, ordered by root).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::IntLattice;
use crate::quad::{QuadError, QuadField};
use crate::ring::{Element, IdealHandle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    /// byte offset into the source
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("sqrt({0}) is not in this field")]
    NotInField(BigInt),
    #[error("matrix {0} does not span an ideal")]
    NotAnIdeal(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    One,
    W,
    Sqrt(BigInt),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigInt,
    pub atom: Atom,
}

/// A sum of terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gen(pub Vec<Term>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealExpr {
    Generators(Vec<Gen>),
    Matrix([[BigInt; 2]; 2]),
    Prime { p: u64, k: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(got) => self.err(format!("expected `{}`, found `{}`", c as char, got as char)),
                None => self.err(format!("expected `{}`, found end of input", c as char)),
            }
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Some(text.parse().expect("digits parse"))
    }

    /// optionally signed integer
    fn int(&mut self) -> Result<BigInt, ParseError> {
        let neg = self.eat(b'-');
        match self.digits() {
            Some(n) => Ok(if neg { -n } else { n }),
            None => self.err("expected an integer"),
        }
    }

    fn small(&mut self, what: &str) -> Result<u64, ParseError> {
        let at = self.pos;
        let n = self.int()?;
        n.to_u64().ok_or(ParseError {
            offset: at,
            message: format!("{what} out of range: {n}"),
        })
    }

    fn atom(&mut self) -> Result<Option<Atom>, ParseError> {
        if self.keyword("sqrt") {
            self.expect(b'(')?;
            let n = self.int()?;
            self.expect(b')')?;
            return Ok(Some(Atom::Sqrt(n)));
        }
        if self.eat(b'w') {
            return Ok(Some(Atom::W));
        }
        Ok(None)
    }

    fn term(&mut self, sign: i8) -> Result<Term, ParseError> {
        let coeff = self.digits();
        let star = coeff.is_some() && self.eat(b'*');
        let atom = match self.atom()? {
            Some(a) => a,
            None if coeff.is_some() && !star => Atom::One,
            None => return self.err("expected an integer, `w` or `sqrt(`"),
        };
        let coeff = coeff.unwrap_or_else(BigInt::one);
        Ok(Term {
            coeff: if sign < 0 { -coeff } else { coeff },
            atom,
        })
    }

    fn gen(&mut self) -> Result<Gen, ParseError> {
        let mut sign = if self.eat(b'-') { -1 } else { 1 };
        let mut terms = vec![self.term(sign)?];
        loop {
            sign = if self.eat(b'+') {
                1
            } else if self.eat(b'-') {
                -1
            } else {
                break;
            };
            terms.push(self.term(sign)?);
        }
        Ok(Gen(terms))
    }

    fn ideal(&mut self) -> Result<IdealExpr, ParseError> {
        let expr = if self.eat(b'[') {
            self.expect(b'[')?;
            let a = self.int()?;
            self.expect(b',')?;
            let b = self.int()?;
            self.expect(b';')?;
            let c = self.int()?;
            self.expect(b',')?;
            let d = self.int()?;
            self.expect(b']')?;
            self.expect(b']')?;
            IdealExpr::Matrix([[a, b], [c, d]])
        } else if self.keyword("P") {
            self.expect(b'(')?;
            let p = self.small("prime")?;
            self.expect(b',')?;
            let at = self.pos;
            let k = self.small("prime number")?;
            self.expect(b')')?;
            let k = usize::try_from(k)
                .ok()
                .filter(|&k| k > 0)
                .ok_or(ParseError {
                    offset: at,
                    message: "prime number k counts from 1".to_string(),
                })?;
            IdealExpr::Prime { p, k }
        } else if self.eat(b'(') {
            let mut gens = vec![self.gen()?];
            while self.eat(b',') {
                gens.push(self.gen()?);
            }
            self.expect(b')')?;
            IdealExpr::Generators(gens)
        } else {
            return self.err("expected `(`, `[[` or `P(`");
        };
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected `{}` after ideal", c as char));
        }
        Ok(expr)
    }
}

pub fn parse(src: &str) -> Result<IdealExpr, ParseError> {
    Parser {
        src: src.as_bytes(),
        pos: 0,
    }
    .ideal()
}

/// Parse and lower in one step.
pub fn parse_ideal(src: &str, field: &QuadField) -> Result<IdealHandle, ExprError> {
    parse(src)?.lower(field)
}

impl Term {
    fn value(&self, field: &QuadField) -> Result<Element, ExprError> {
        let base = match &self.atom {
            Atom::One => Element(vec![BigInt::one(), BigInt::zero()]),
            Atom::W => field.omega(),
            Atom::Sqrt(n) => sqrt_in_field(field, n)?,
        };
        Ok(Element(base.0.iter().map(|x| x * &self.coeff).collect()))
    }
}

/// `√n` as an element of `S`, for `n = k²` or `n = d·k²`.
fn sqrt_in_field(field: &QuadField, n: &BigInt) -> Result<Element, ExprError> {
    let exact_root = |m: &BigInt| -> Option<BigInt> {
        if m.is_negative() {
            return None;
        }
        let r = m.sqrt();
        (&r * &r == *m).then_some(r)
    };
    if let Some(k) = exact_root(n) {
        return Ok(Element(vec![k, BigInt::zero()]));
    }
    let d = BigInt::from(field.d());
    if (n % &d).is_zero() {
        if let Some(k) = exact_root(&(n / &d)) {
            return Ok(Element(field.sqrt_d().0.iter().map(|x| x * &k).collect()));
        }
    }
    Err(ExprError::NotInField(n.clone()))
}

impl Gen {
    pub fn value(&self, field: &QuadField) -> Result<Element, ExprError> {
        let mut acc = vec![BigInt::zero(), BigInt::zero()];
        for t in &self.0 {
            let v = t.value(field)?;
            for (a, b) in acc.iter_mut().zip(v.0) {
                *a += b;
            }
        }
        Ok(Element(acc))
    }
}

impl IdealExpr {
    pub fn lower(&self, field: &QuadField) -> Result<IdealHandle, ExprError> {
        match self {
            IdealExpr::Generators(gens) => {
                let elems = gens
                    .iter()
                    .map(|g| g.value(field))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(field.ideal(&elems)?)
            }
            IdealExpr::Matrix(m) => {
                let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.to_vec()).collect();
                let lattice = IntLattice::span(2, rows);
                if !lattice.is_full_rank() {
                    return Err(ExprError::NotAnIdeal(self.to_string()));
                }
                field
                    .ring()
                    .ideal(lattice)
                    .map_err(|_| ExprError::NotAnIdeal(self.to_string()))
            }
            IdealExpr::Prime { p, k } => Ok(field.prime(*p, *k)?.ideal),
        }
    }

    /// The HNF matrix form of an ideal, which parses back to it.
    pub fn from_ideal(i: &IdealHandle) -> Self {
        let b = i.lattice().basis();
        IdealExpr::Matrix([
            [b[0][0].clone(), b[0][1].clone()],
            [b[1][0].clone(), b[1][1].clone()],
        ])
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeff.abs();
        match &self.atom {
            Atom::One => write!(f, "{c}"),
            atom => {
                if !c.is_one() {
                    write!(f, "{c}")?;
                }
                match atom {
                    Atom::W => f.write_str("w"),
                    Atom::Sqrt(n) => write!(f, "sqrt({n})"),
                    Atom::One => unreachable!(),
                }
            }
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Display for IdealExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealExpr::Generators(gens) => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            IdealExpr::Matrix([[a, b], [c, d]]) => write!(f, "[[{a},{b};{c},{d}]]"),
            IdealExpr::Prime { p, k } => write!(f, "P({p},{k})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> QuadField {
        QuadField::new(-1).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = gaussian();
        let two = parse_ideal("(2)", &g).unwrap();
        assert_eq!(two, g.scalar_ideal(2));
        assert_eq!(two.index(), BigInt::from(4));
        let p = parse_ideal("(5, w-2)", &g).unwrap();
        assert_eq!(p, g.primes_above(5).unwrap()[0].ideal);
        assert_eq!(parse("(4").unwrap_err().offset, 2);
    }

    #[test]
    fn forms() {
        let g = gaussian();
        let m = g.prime(2, 1).unwrap().ideal;
        assert_eq!(parse_ideal("P(2,1)", &g).unwrap(), m);
        assert_eq!(parse_ideal("(1 + w)", &g).unwrap(), m);
        assert_eq!(parse_ideal("( -1 - w )", &g).unwrap(), m);
        assert_eq!(parse_ideal("[[1,1;0,2]]", &g).unwrap(), m);
        assert_eq!(parse_ideal(" [ [ 1 , 1 ; 0 , 2 ] ] ", &g).unwrap(), m);
        assert_eq!(parse_ideal("(1 + sqrt(-1))", &g).unwrap(), m);
        assert_eq!(parse_ideal("(2*w)", &g).unwrap(), g.scalar_ideal(2));
        assert_eq!(parse_ideal("(sqrt(4))", &g).unwrap(), g.scalar_ideal(2));

        let k = QuadField::new(5).unwrap();
        let root5 = parse_ideal("(sqrt(5))", &k).unwrap();
        assert_eq!(root5, parse_ideal("(2w - 1)", &k).unwrap());
        assert_eq!(root5.index(), BigInt::from(5));
        assert_eq!(
            parse_ideal("(sqrt(20))", &k).unwrap(),
            parse_ideal("(4w-2)", &k).unwrap()
        );
    }

    #[test]
    fn errors() {
        let g = gaussian();
        assert!(matches!(
            parse_ideal("(sqrt(3))", &g),
            Err(ExprError::NotInField(_))
        ));
        assert!(matches!(
            parse_ideal("[[1,0;0,2]]", &g),
            Err(ExprError::NotAnIdeal(_))
        ));
        assert!(matches!(parse_ideal("(0)", &g), Err(ExprError::Quad(_))));
        assert!(matches!(
            parse_ideal("P(4,1)", &g),
            Err(ExprError::Quad(QuadError::NotPrime(4)))
        ));
        assert!(matches!(
            parse_ideal("P(5,3)", &g),
            Err(ExprError::Quad(QuadError::NoSuchPrime { .. }))
        ));
        assert_eq!(parse("P(5,0)").unwrap_err().offset, 4);
        assert_eq!(parse("(2) x").unwrap_err().offset, 4);
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("(2,)").unwrap_err().offset, 3);
        assert_eq!(parse("(2*)").unwrap_err().offset, 3);
        assert_eq!(parse("(w w)").unwrap_err().offset, 3);
    }

    #[test]
    fn round_trip() {
        for src in [
            "(5, w-2)",
            "( -3 + 2w , 7)",
            "P(13,2)",
            "[[2,0;0,2]]",
            "(sqrt(-1) - 4, 2*w)",
            "(12)",
        ] {
            let e = parse(src).unwrap();
            let printed = e.to_string();
            assert_eq!(parse(&printed).unwrap(), e, "{src} -> {printed}");
        }
        let g = gaussian();
        for i in g.ring().enumerate_ideals(30) {
            let e = IdealExpr::from_ideal(&i);
            assert_eq!(parse_ideal(&e.to_string(), &g).unwrap(), i);
        }
    }
}
