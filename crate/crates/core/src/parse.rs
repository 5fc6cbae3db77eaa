//! Recursive-descent parser for class expressions and polynomial literals.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := ["-"] factor ("*" factor)*
//! factor  := atom ("^" NAT)?
//! atom    := RATIONAL | VAR | "(" expr ")" | "c(" NAT "," bundle ")"
//!          | "euler(" bundle ")" | "schur(" partition "," bundle ")"
//! bundle  := "S" | "Q" | "dual(" bundle ")" | "sym(" NAT "," bundle ")"
//!          | "tensor(" bundle "," bundle ")" | "wedge(" NAT "," bundle ")"
//! VAR     := "x" NAT | "y" NAT | "z"
//! RATIONAL:= NAT ("/" NAT)?
//! partition := "[" NAT ("," NAT)* "]"
//! ```
//!
//! Whitespace between tokens is ignored and `*` is never implied.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::integrals::{BundleExpr, ClassExpr};
use crate::poly::{Monomial, MultiPoly, Rational, VarId};
use crate::symmetric::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// 1-based byte offset of the offending token.
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [] => f.write_str("nothing")?,
            [one] => f.write_str(one)?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        write!(f, ", found {}", self.found)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Word(String),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Punct(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("ascii digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Word(text[start..i].to_string())));
        } else if b"+-*^/(),[]".contains(&c) {
            out.push((i, Tok::Punct(c as char)));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(ParseError {
                offset: i + 1,
                expected: vec!["a token".into()],
                found: format!("'{ch}'"),
            });
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    allow_classes: bool,
}

impl Parser {
    fn new(text: &str, allow_classes: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            allow_classes,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.toks[self.pos].0 + 1,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Punct(c) {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error(&["'+'", "'-'", "'*'", "'^'", "end of input"]))
        }
    }

    fn nat_u32(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Num(n) => match u32::try_from(&n) {
                Ok(v) => {
                    self.advance();
                    Ok(v)
                }
                Err(_) => Err(self.error(&["a natural number below 2^32"])),
            },
            _ => Err(self.error(&["natural number"])),
        }
    }

    fn positive_u32(&mut self) -> Result<u32, ParseError> {
        if let Tok::Num(n) = self.peek() {
            if n.is_zero() {
                return Err(self.error(&["positive integer"]));
            }
        }
        self.nat_u32()
    }

    fn expr(&mut self) -> Result<ClassExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = ClassExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = ClassExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<ClassExpr, ParseError> {
        let negate = self.eat('-');
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = ClassExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(if negate {
            ClassExpr::Neg(Box::new(lhs))
        } else {
            lhs
        })
    }

    fn factor(&mut self) -> Result<ClassExpr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.nat_u32()?;
            return Ok(ClassExpr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom_expected(&self) -> &'static [&'static str] {
        if self.allow_classes {
            &["number", "variable", "'('", "'c('", "'euler('", "'schur('"]
        } else {
            &["number", "variable", "'('"]
        }
    }

    fn atom(&mut self) -> Result<ClassExpr, ParseError> {
        match self.peek().clone() {
            Tok::Num(numer) => {
                self.advance();
                if self.eat('/') {
                    match self.peek().clone() {
                        Tok::Num(d) if !d.is_zero() => {
                            self.advance();
                            Ok(ClassExpr::Const(Rational::new(numer, d)))
                        }
                        _ => Err(self.error(&["nonzero denominator"])),
                    }
                } else {
                    Ok(ClassExpr::Const(Rational::from_integer(numer)))
                }
            }
            Tok::Punct('(') => {
                self.advance();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Word(w) => {
                if let Some(v) = self.variable(&w)? {
                    self.advance();
                    return Ok(ClassExpr::Root(v));
                }
                if !self.allow_classes || !matches!(w.as_str(), "c" | "euler" | "schur") {
                    return Err(self.error(self.atom_expected()));
                }
                self.advance();
                self.expect('(')?;
                let out = match w.as_str() {
                    "c" => {
                        let i = self.nat_u32()?;
                        self.expect(',')?;
                        ClassExpr::Chern(i, self.bundle()?)
                    }
                    "euler" => ClassExpr::Euler(self.bundle()?),
                    _ => {
                        let l = self.partition()?;
                        self.expect(',')?;
                        ClassExpr::Schur(l, self.bundle()?)
                    }
                };
                self.expect(')')?;
                Ok(out)
            }
            _ => Err(self.error(self.atom_expected())),
        }
    }

    fn variable(&self, w: &str) -> Result<Option<VarId>, ParseError> {
        if w == "z" {
            return Ok(Some(VarId::z()));
        }
        let (head, digits) = w.split_at(1);
        if !matches!(head, "x" | "y")
            || digits.is_empty()
            || !digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Ok(None);
        }
        match digits.parse::<u32>() {
            Ok(i) if i >= 1 => Ok(Some(if head == "x" {
                VarId::x(i)
            } else {
                VarId::y(i)
            })),
            _ => Err(self.error(&["variable index in 1..2^32"])),
        }
    }

    fn partition(&mut self) -> Result<Partition, ParseError> {
        let at = self.pos;
        self.expect('[')?;
        let mut parts = vec![self.nat_u32()?];
        while self.eat(',') {
            parts.push(self.nat_u32()?);
        }
        self.expect(']')?;
        Partition::new(parts).map_err(|_| {
            let mut e = self.error(&["weakly decreasing parts"]);
            e.offset = self.toks[at].0 + 1;
            e.found = "increasing parts".into();
            e
        })
    }

    fn bundle(&mut self) -> Result<BundleExpr, ParseError> {
        const EXPECTED: &[&str] = &["'S'", "'Q'", "'dual('", "'sym('", "'tensor('", "'wedge('"];
        let Tok::Word(w) = self.peek().clone() else {
            return Err(self.error(EXPECTED));
        };
        match w.as_str() {
            "S" => {
                self.advance();
                Ok(BundleExpr::Sub)
            }
            "Q" => {
                self.advance();
                Ok(BundleExpr::Quotient)
            }
            "dual" | "sym" | "tensor" | "wedge" => {
                self.advance();
                self.expect('(')?;
                let b = match w.as_str() {
                    "dual" => self.bundle()?.dual(),
                    "tensor" => {
                        let a = self.bundle()?;
                        self.expect(',')?;
                        BundleExpr::tensor(a, self.bundle()?)
                    }
                    _ => {
                        let m = self.positive_u32()?;
                        self.expect(',')?;
                        let inner = self.bundle()?;
                        if w == "sym" {
                            BundleExpr::sym(m, inner)
                        } else {
                            BundleExpr::wedge(m, inner)
                        }
                    }
                };
                self.expect(')')?;
                Ok(b)
            }
            _ => Err(self.error(EXPECTED)),
        }
    }
}

/// Parses a class expression (which may also be a plain polynomial).
pub fn parse_expression(text: &str) -> Result<ClassExpr, ParseError> {
    let mut p = Parser::new(text, true)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses a bundle-free polynomial literal.
pub fn parse_polynomial(text: &str) -> Result<MultiPoly, ParseError> {
    let mut p = Parser::new(text, false)?;
    let e = p.expr()?;
    p.finish()?;
    e.to_polynomial().map_err(|err| ParseError {
        offset: 1,
        expected: vec!["a polynomial of manageable degree".into()],
        found: err.to_string(),
    })
}

/// Parses a single monomial such as `x1^2*y1` (or `1`).
pub fn parse_monomial(text: &str) -> Result<Monomial, ParseError> {
    let p = parse_polynomial(text)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if *c == Rational::from_integer(1.into()) => Ok(m.clone()),
        _ => Err(ParseError {
            offset: 1,
            expected: vec!["a monomial with coefficient 1".into()],
            found: format!("'{p}'"),
        }),
    }
}

pub fn parse_partition(text: &str) -> Result<Partition, ParseError> {
    let mut p = Parser::new(text, false)?;
    let l = p.partition()?;
    p.finish()?;
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::frac;

    #[test]
    fn chern_power() {
        let e = parse_expression("c(1,Q)^4").unwrap();
        assert_eq!(e, ClassExpr::chern(1, BundleExpr::Quotient).pow(4));
    }

    #[test]
    fn nested_bundle() {
        let e = parse_expression("euler(sym(3,dual(S)))").unwrap();
        assert_eq!(
            e,
            ClassExpr::euler(BundleExpr::sym(3, BundleExpr::Sub.dual()))
        );
        let e = parse_expression(" euler ( tensor ( Q , dual(S) ) ) ").unwrap();
        assert_eq!(
            e,
            ClassExpr::euler(BundleExpr::tensor(
                BundleExpr::Quotient,
                BundleExpr::Sub.dual()
            ))
        );
    }

    #[test]
    fn polynomial_literal() {
        let p = parse_polynomial("x1*x2 + 3/2").unwrap();
        let x1x2 = &MultiPoly::var(VarId::x(1)) * &MultiPoly::var(VarId::x(2));
        assert_eq!(p, &x1x2 + &MultiPoly::constant(frac(3, 2)));
        assert!(parse_expression("x1*x2 + 3/2")
            .unwrap()
            .is_polynomial_literal());
    }

    #[test]
    fn unary_minus_and_precedence() {
        let p = parse_polynomial("-x1^2 + 2*x1*x2 - x2^2").unwrap();
        let d = &MultiPoly::var(VarId::x(1)) - &MultiPoly::var(VarId::x(2));
        assert_eq!(p, -(&d * &d));
        assert_eq!(
            parse_polynomial("2*3^2").unwrap(),
            MultiPoly::constant(frac(18, 1))
        );
        assert_eq!(
            parse_polynomial("1 - 2 - 3").unwrap(),
            MultiPoly::constant(frac(-4, 1))
        );
        assert_eq!(
            parse_polynomial("1/2^2").unwrap(),
            MultiPoly::constant(frac(1, 4))
        );
    }

    #[test]
    fn schur_atom() {
        let e = parse_expression("schur([2,1,0],Q)").unwrap();
        assert_eq!(
            e,
            ClassExpr::schur(Partition::new(vec![2, 1]).unwrap(), BundleExpr::Quotient)
        );
        assert_eq!(
            parse_partition("[2,1]").unwrap(),
            Partition::new(vec![2, 1]).unwrap()
        );
    }

    #[test]
    fn errors_carry_offset_and_expectation() {
        let e = parse_expression("x1 x2").unwrap_err();
        assert_eq!(e.offset, 4);
        assert!(e.expected.contains(&"'*'".to_string()));

        let e = parse_expression("c(1,R)").unwrap_err();
        assert_eq!(e.offset, 5);
        assert!(e.expected.contains(&"'S'".to_string()));

        let e = parse_expression("3/0").unwrap_err();
        assert_eq!(e.offset, 3);

        let e = parse_expression("(x1 + 1").unwrap_err();
        assert_eq!(e.offset, 8);
        assert_eq!(e.expected, vec!["')'".to_string()]);

        let e = parse_expression("x1 # 2").unwrap_err();
        assert_eq!(e.offset, 4);

        assert!(parse_expression("schur([1,2],Q)").is_err());
        assert!(parse_expression("sym(0,S)").is_err());
        assert!(parse_expression("x0").is_err());
        assert!(parse_expression("x1^99999999999").is_err());
        assert!(parse_expression("").is_err());
        assert!(parse_expression("--x1").is_err());
        assert!(parse_polynomial("c(1,Q)").is_err());
    }

    #[test]
    fn monomials() {
        let m = parse_monomial("x1^2*y1").unwrap();
        assert_eq!(
            m,
            Monomial::from_powers([(VarId::x(1), 2), (VarId::y(1), 1)]).unwrap()
        );
        assert_eq!(parse_monomial("1").unwrap(), Monomial::one());
        assert!(parse_monomial("2*x1").is_err());
        assert!(parse_monomial("x1 + x2").is_err());
    }

    #[test]
    fn rendering_round_trips() {
        let corpus = [
            "c(1,Q)^4",
            "euler(sym(3,dual(S)))",
            "x1*x2 + 3/2",
            "-x1^2 + 2*x1*x2 - x2^2",
            "(c(1,S) + c(1,Q))^2 - -c(2,Q)",
            "schur([2,1],Q)*schur([1],Q) + 1/3*z",
            "euler(tensor(Q,dual(S))) - (x1 - x2)*(y1 + 2)",
            "c(2,wedge(2,sym(2,Q)))",
            "-(x1 + x2)^3*(-2)",
        ];
        for text in corpus {
            let first = parse_expression(text).unwrap();
            let rendered = first.to_string();
            let second = parse_expression(&rendered).unwrap();
            assert_eq!(first, second, "{text} -> {rendered}");
            assert_eq!(second.to_string(), rendered);
        }
    }
}
