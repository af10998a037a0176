//! Ring expressions such as `Z(200){C3}` or `Z(8)[x]/(x^2+x+1){C5xC5}`, and
//! element literals such as `3 + 3g + 3g^2`.
//!
//! ```text
//! ring      := "Z(" int ")" [polyLayer] [groupLayer]
//! polyLayer := "[i]" | "[x]/(" poly ")"
//! groupLayer:= "{" "C" int ("x" "C" int)* "}"
//! ```

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, DEFAULT_GROUP_CAP};
use crate::group_ring::GroupRing;
use crate::poly::Polynomial;
use crate::quotient::PolyQuotientRing;
use crate::residue::ResidueRing;
use crate::ring::NamedGenerators;
use std::fmt;

/// Longest accepted ring expression or element literal.
pub const MAX_INPUT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyLayer {
    /// `[i]`, i.e. `[x]/(x^2 + 1)` printed with `i`.
    Gaussian,
    /// `[x]/(q)` with integer coefficients of the monic `q`, lowest first.
    Quotient(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingExpression {
    pub modulus: u64,
    pub poly: Option<PolyLayer>,
    pub group: Option<Vec<u64>>,
}

impl fmt::Display for RingExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z({})", self.modulus)?;
        match &self.poly {
            None => {}
            Some(PolyLayer::Gaussian) => f.write_str("[i]")?,
            Some(PolyLayer::Quotient(c)) => {
                write!(f, "[x]/({})", Polynomial::new(c.clone(), u64::MAX).to_text('x'))?
            }
        }
        if let Some(g) = &self.group {
            let parts: Vec<String> = g.iter().map(|n| format!("C{n}")).collect();
            write!(f, "{{{}}}", parts.join("x"))?;
        }
        Ok(())
    }
}

/// A ring built from a [`RingExpression`].
#[derive(Debug, Clone)]
pub enum AnyRing {
    Residue(ResidueRing),
    Quotient(PolyQuotientRing),
    GroupResidue(GroupRing<ResidueRing>),
    GroupQuotient(GroupRing<PolyQuotientRing>),
}

/// Runs `$body` with `$r` bound to the concrete ring inside an [`AnyRing`].
#[macro_export]
macro_rules! with_ring {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::expr::AnyRing::Residue($r) => $body,
            $crate::expr::AnyRing::Quotient($r) => $body,
            $crate::expr::AnyRing::GroupResidue($r) => $body,
            $crate::expr::AnyRing::GroupQuotient($r) => $body,
        }
    };
}

impl RingExpression {
    pub fn parse(text: &str) -> Result<Self> {
        if text.len() > MAX_INPUT {
            return Err(Error::Parse {
                pos: MAX_INPUT,
                message: format!("input longer than {MAX_INPUT} bytes"),
            });
        }
        Parser::new(text).ring()
    }

    pub fn build(&self) -> Result<AnyRing> {
        self.build_with_cap(DEFAULT_GROUP_CAP)
    }

    pub fn build_with_cap(&self, group_cap: u64) -> Result<AnyRing> {
        let base = ResidueRing::new(self.modulus)?;
        let quotient = match &self.poly {
            None => None,
            Some(PolyLayer::Gaussian) => Some(PolyQuotientRing::gaussian(self.modulus)?),
            Some(PolyLayer::Quotient(c)) => Some(PolyQuotientRing::new(
                self.modulus,
                &Polynomial::new(c.clone(), u64::MAX),
            )?),
        };
        let group = match &self.group {
            None => None,
            Some(f) => Some(AbelianGroup::with_cap(f, group_cap)?),
        };
        Ok(match (quotient, group) {
            (None, None) => AnyRing::Residue(base),
            (Some(q), None) => AnyRing::Quotient(q),
            (None, Some(g)) => AnyRing::GroupResidue(GroupRing::new(base, g)),
            (Some(q), Some(g)) => AnyRing::GroupQuotient(GroupRing::new(q, g)),
        })
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(|c: char| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected '{token}'")))
        }
    }

    fn unexpected(&mut self, what: &str) -> Error {
        match self.peek() {
            Some(c) => self.err(format!("{what}, found '{c}'")),
            None => self.err(format!("{what}, found end of input")),
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.s[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.s.len() - start);
        if digits == 0 {
            return Err(self.unexpected("expected an integer"));
        }
        let value = self.s[start..start + digits]
            .parse::<u64>()
            .map_err(|_| self.err("integer too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn ring(mut self) -> Result<RingExpression> {
        self.expect("Z(")?;
        let at = self.pos;
        let modulus = self.int()?;
        if modulus < 1 {
            self.pos = at;
            return Err(self.err("modulus must be at least 1"));
        }
        self.expect(")")?;
        let mut expr = RingExpression {
            modulus,
            poly: None,
            group: None,
        };
        loop {
            match self.peek() {
                None => return Ok(expr),
                Some('[') => {
                    if expr.poly.is_some() {
                        return Err(self.err("duplicate polynomial layer"));
                    }
                    if expr.group.is_some() {
                        return Err(self.err("polynomial layer must come before the group layer"));
                    }
                    expr.poly = Some(self.poly_layer()?);
                }
                Some('{') => {
                    if expr.group.is_some() {
                        return Err(self.err("duplicate group layer"));
                    }
                    expr.group = Some(self.group_layer()?);
                }
                Some(c) => return Err(self.err(format!("unknown token '{c}'"))),
            }
        }
    }

    fn poly_layer(&mut self) -> Result<PolyLayer> {
        if self.eat("[i]") {
            return Ok(PolyLayer::Gaussian);
        }
        self.expect("[x]")?;
        self.expect("/")?;
        self.expect("(")?;
        let start = self.pos;
        let Some(len) = self.s[start..].find(')') else {
            return Err(self.err("unclosed '('"));
        };
        let q = Polynomial::parse_at(&self.s[start..start + len], 'x', u64::MAX, start)?;
        if q.degree().unwrap_or(0) == 0 || q.leading() != 1 {
            return Err(Error::Parse {
                pos: start,
                message: format!("modulus polynomial {q} must be monic of degree at least 1"),
            });
        }
        self.pos = start + len + 1;
        Ok(PolyLayer::Quotient(q.coeffs().to_vec()))
    }

    fn group_layer(&mut self) -> Result<Vec<u64>> {
        self.expect("{")?;
        let mut factors = Vec::new();
        loop {
            self.expect("C")?;
            let at = self.pos;
            let n = self.int()?;
            if n < 2 {
                self.pos = at;
                return Err(self.err("cyclic factor must have order at least 2"));
            }
            factors.push(n);
            if self.eat("}") {
                return Ok(factors);
            }
            if !self.eat("x") {
                return Err(self.unexpected("expected 'x' or '}'"));
            }
        }
    }
}

/// Evaluates an element literal in `ring`: integers, generator letters,
/// `+`, `-`, `*` (optional between factors), `^` with integer exponents and
/// parentheses.
pub fn parse_element<R: NamedGenerators>(ring: &R, text: &str) -> Result<R::Element> {
    if text.len() > MAX_INPUT {
        return Err(Error::Parse {
            pos: MAX_INPUT,
            message: format!("input longer than {MAX_INPUT} bytes"),
        });
    }
    let mut p = ElementParser {
        inner: Parser::new(text),
        ring,
    };
    let x = p.sum()?;
    match p.inner.peek() {
        None => Ok(x),
        Some(c) => Err(p.inner.err(format!("unexpected '{c}'"))),
    }
}

struct ElementParser<'a, R> {
    inner: Parser<'a>,
    ring: &'a R,
}

impl<R: NamedGenerators> ElementParser<'_, R> {
    fn sum(&mut self) -> Result<R::Element> {
        let r = self.ring;
        let mut acc = if self.inner.eat("-") {
            r.neg(&self.term()?)
        } else {
            self.inner.eat("+");
            self.term()?
        };
        loop {
            if self.inner.eat("+") {
                acc = r.add(&acc, &self.term()?);
            } else if self.inner.eat("-") {
                acc = r.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<R::Element> {
        let mut acc = self.factor()?;
        loop {
            // `*` or juxtaposition
            if self.inner.eat("*")
                || matches!(self.inner.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '(')
            {
                acc = self.ring.mul(&acc, &self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<R::Element> {
        let base = self.atom()?;
        if self.inner.eat("^") {
            let e = self.inner.int()?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<R::Element> {
        match self.inner.peek() {
            Some('(') => {
                self.inner.pos += 1;
                let x = self.sum()?;
                self.inner.expect(")")?;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.inner.int()?;
                Ok(self.ring.from_int(n as i128))
            }
            Some(c) if c.is_ascii_alphabetic() => match self.ring.generator(c) {
                Some(g) => {
                    self.inner.pos += 1;
                    Ok(g)
                }
                None => Err(self.inner.err(format!(
                    "unknown generator '{c}' in {}",
                    self.ring.describe()
                ))),
            },
            _ => Err(self.inner.unexpected("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{CommutativeRing, ZmAlgebra};

    #[test]
    fn parses_the_documented_rings() {
        let e = RingExpression::parse("Z(200){C3}").unwrap();
        assert_eq!(e, RingExpression { modulus: 200, poly: None, group: Some(vec![3]) });
        let e = RingExpression::parse("Z(25)[i]").unwrap();
        assert_eq!(e.poly, Some(PolyLayer::Gaussian));
        let e = RingExpression::parse("Z(8)[x]/(x^2+x+1){C5xC5}").unwrap();
        assert_eq!(e.poly, Some(PolyLayer::Quotient(vec![1, 1, 1])));
        assert_eq!(e.group, Some(vec![5, 5]));
        assert!(matches!(e.build().unwrap(), AnyRing::GroupQuotient(_)));
        assert!(matches!(RingExpression::parse(" Z( 12 ) ").unwrap().build().unwrap(), AnyRing::Residue(_)));
    }

    #[test]
    fn round_trip() {
        for s in [
            "Z(200){C3}",
            "Z(25)[i]",
            "Z(8)[x]/(1 + x + x^2){C5xC5}",
            "Z(1)",
            "Z(936){C5xC5}",
            "Z(4)[x]/(3 + x^3){C2xC4xC6}",
        ] {
            let e = RingExpression::parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(RingExpression::parse(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn errors_are_positioned() {
        let pos = |s: &str| match RingExpression::parse(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("Y(3)"), 0);
        assert_eq!(pos("Z(0)"), 2);
        assert_eq!(pos("Z(5)[i][i]"), 7);
        assert_eq!(pos("Z(5){C3}{C3}"), 8);
        assert_eq!(pos("Z(5){C3}[i]"), 8);
        assert_eq!(pos("Z(5)[x]/(2x^2+1)"), 9);
        assert_eq!(pos("Z(5)[x]/(x^2+?)"), 13);
        assert_eq!(pos("Z(5){C1}"), 6);
        assert_eq!(pos("Z(5){C3 C3}"), 8);
        assert_eq!(pos("Z(5)#"), 4);
        assert_eq!(pos(&format!("Z(5){}", " ".repeat(2000))), MAX_INPUT);
    }

    #[test]
    fn element_literals() {
        let AnyRing::GroupResidue(r) = RingExpression::parse("Z(125){C7}").unwrap().build().unwrap() else {
            panic!()
        };
        let x = parse_element(&r, "3+3g+3g^2+3g^3+3g^4+3g^5+3g^6").unwrap();
        assert_eq!(r.coefficients(&x), vec![3; 7]);
        let y = parse_element(&r, "3*(e + g)^2 - 1").unwrap();
        assert_eq!(r.coefficients(&y), vec![2, 6, 3, 0, 0, 0, 0]);
        assert!(matches!(parse_element(&r, "3a"), Err(Error::Parse { pos: 1, .. })));

        let AnyRing::GroupQuotient(q) =
            RingExpression::parse("Z(5)[i]{C5xC5}").unwrap().build().unwrap()
        else {
            panic!()
        };
        let z = parse_element(&q, "(3 + i)*(a b^2)").unwrap();
        assert_eq!(q.format_element(&z), "(3 + i)*(a b^2)");
        assert_eq!(parse_element(&q, &q.format_element(&z)).unwrap(), z);
    }

    #[test]
    fn formatted_elements_parse_back() {
        let AnyRing::GroupResidue(r) = RingExpression::parse("Z(12){C2xC3}").unwrap().build().unwrap() else {
            panic!()
        };
        for i in [0u128, 1, 77, 12345, 2_985_983] {
            let x = r.element_at(i).unwrap();
            assert_eq!(parse_element(&r, &r.format_element(&x)).unwrap(), x);
        }
    }
}
