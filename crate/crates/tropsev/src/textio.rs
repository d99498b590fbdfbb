//! Canonical text form for rationals, `Q[y]` polynomials and Puiseux
//! series, with parsers that round-trip the printers. The CLI speaks this
//! grammar for witness JSON payloads and matrix files.
//!
//! Series grammar:
//!   series := term (('+'|'-') term)* [('+') 'O(t^' rat ')'] | 'O(t^' rat ')' | '0'
//!   term   := coeff ['*t^' rat] | 't^' rat
//!   coeff  := rat | '(' ypoly ')'
//!   ypoly  := yterm (('+'|'-') yterm)*
//!   yterm  := rat ['*y' ['^' int]] | 'y' ['^' int]

use crate::error::{Error, Result};
use crate::intpoly::RatPoly;
use crate::puiseux::{PuiseuxTrunc, Trunc};
use crate::ring::{RingElem, RingRef};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::invalid(format!("bad rational {:?}: {}", s, e)))
}

/// Ascending form `c0 + c1*y + c2*y^2`, zero coefficients omitted.
pub fn format_ratpoly(p: &RatPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = vec![];
    for (e, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let piece = match e {
            0 => format_rational(c),
            1 => format!("{}*y", format_rational(c)),
            _ => format!("{}*y^{}", format_rational(c), e),
        };
        parts.push(piece);
    }
    join_signed(parts)
}

/// Join "+"-separated parts, folding leading minus signs into " - ".
fn join_signed(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

pub fn format_ring_elem(c: &RingElem) -> String {
    match c.as_rational() {
        Some(q) => format_rational(&q),
        None => format!("({})", format_ratpoly(c.rep())),
    }
}

pub fn format_series(p: &PuiseuxTrunc) -> String {
    let mut parts: Vec<String> = vec![];
    for (e, c) in p.terms() {
        let coeff = format_ring_elem(c);
        let piece = if e.is_zero() {
            coeff
        } else {
            format!("{}*t^{}", coeff, format_rational(e))
        };
        parts.push(piece);
    }
    let mut out = if parts.is_empty() {
        String::new()
    } else {
        join_signed(parts)
    };
    if let Trunc::Order(t) = p.trunc() {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&format!("O(t^{})", format_rational(t)));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            s: s.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, expected: char) -> Result<()> {
        if self.eat(expected) {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "expected '{}' at position {}",
                expected, self.pos
            )))
        }
    }

    fn eat_str(&mut self, expected: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(expected.as_bytes()) {
            self.pos += expected.len();
            true
        } else {
            false
        }
    }

    /// Parse a rational literal: optional sign, digits, optional /digits.
    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos < self.s.len() && self.s[self.pos] == b'/' {
            self.pos += 1;
            while self.pos < self.s.len() && (self.s[self.pos] as char).is_ascii_digit() {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        if text.is_empty() || text == "-" || text == "+" {
            return Err(Error::invalid(format!(
                "expected a rational at position {}",
                start
            )));
        }
        parse_rational(text)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.s.len()
    }
}

/// Parse `c0 + c1*y + ...`; accepts bare `y`, `-y^2`, etc.
pub fn parse_ratpoly(s: &str) -> Result<RatPoly> {
    let mut cur = Cursor::new(s);
    let p = parse_ypoly_inner(&mut cur)?;
    if !cur.at_end() {
        return Err(Error::invalid(format!("trailing input in {:?}", s)));
    }
    Ok(p)
}

fn parse_ypoly_inner(cur: &mut Cursor) -> Result<RatPoly> {
    let mut acc = RatPoly::zero();
    let mut sign = BigRational::one();
    if cur.eat('-') {
        sign = -sign;
    } else {
        let _ = cur.eat('+');
    }
    loop {
        let term = parse_yterm(cur)?;
        acc = acc.add(&term.scale(&sign));
        match cur.peek() {
            Some('+') => {
                cur.bump();
                sign = BigRational::one();
            }
            Some('-') => {
                cur.bump();
                sign = -BigRational::one();
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_yterm(cur: &mut Cursor) -> Result<RatPoly> {
    let coeff = if cur.peek() == Some('y') {
        BigRational::one()
    } else {
        let c = cur.rational()?;
        if cur.eat('*') {
            // fall through to the y part
        } else {
            return Ok(RatPoly::constant(c));
        }
        c
    };
    if !cur.eat('y') {
        return Err(Error::invalid("expected 'y' in polynomial term"));
    }
    let exp = if cur.eat('^') {
        let e = cur.rational()?;
        if !e.is_integer() || e.is_negative() {
            return Err(Error::invalid("polynomial exponent must be a nonnegative integer"));
        }
        e.to_integer()
    } else {
        BigInt::one()
    };
    let e = usize::try_from(exp).map_err(|_| Error::invalid("exponent too large"))?;
    let mut coeffs = vec![BigRational::zero(); e + 1];
    coeffs[e] = coeff;
    Ok(RatPoly::from_coeffs(coeffs))
}

/// Parse a series literal over the given coefficient ring.
pub fn parse_series(s: &str, ring: &RingRef) -> Result<PuiseuxTrunc> {
    let mut cur = Cursor::new(s);
    let mut terms: Vec<(BigRational, RingElem)> = vec![];
    let mut trunc = Trunc::Exact;
    let mut sign = BigRational::one();
    if cur.eat('-') {
        sign = -sign;
    }
    if cur.at_end() {
        return Err(Error::invalid("empty series literal"));
    }
    loop {
        if cur.eat_str("O(t^") {
            let t = cur.rational()?;
            cur.expect(')')?;
            trunc = Trunc::Order(t);
            break;
        }
        let (e, c) = parse_series_term(&mut cur, ring)?;
        terms.push((e, c.scale(&sign)));
        match cur.peek() {
            Some('+') => {
                cur.bump();
                sign = BigRational::one();
            }
            Some('-') => {
                cur.bump();
                sign = -BigRational::one();
            }
            _ => break,
        }
    }
    if !cur.at_end() {
        return Err(Error::invalid(format!("trailing input in series {:?}", s)));
    }
    // "0" parses as the zero constant: drop explicit zero coefficients
    Ok(PuiseuxTrunc::from_terms(ring, terms, trunc))
}

fn parse_series_term(cur: &mut Cursor, ring: &RingRef) -> Result<(BigRational, RingElem)> {
    let coeff = if cur.eat('(') {
        let p = parse_ypoly_inner(cur)?;
        cur.expect(')')?;
        RingElem::new(ring.clone(), p)
    } else if cur.peek() == Some('t') {
        crate::ring::ring_one(ring)
    } else {
        let q = cur.rational()?;
        crate::ring::ring_from_rational(ring, q)
    };
    if cur.eat('*') || cur.peek() == Some('t') {
        if !cur.eat('t') {
            return Err(Error::invalid("expected 't' after '*'"));
        }
        cur.expect('^')?;
        let e = cur.rational()?;
        Ok((e, coeff))
    } else {
        Ok((BigRational::zero(), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{ring_from_i64, ring_generator, CoeffRing};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn series_round_trip_rational_ring() {
        let ring = CoeffRing::rationals();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let nterms = rng.gen_range(0..4usize);
            let mut terms = vec![];
            for _ in 0..nterms {
                let c = rng.gen_range(-6..7);
                if c == 0 {
                    continue;
                }
                terms.push((
                    q(rng.gen_range(-6..7), rng.gen_range(1..5)),
                    ring_from_i64(&ring, c),
                ));
            }
            let trunc = if rng.gen_bool(0.5) {
                Trunc::Order(q(rng.gen_range(5..9), 1))
            } else {
                Trunc::Exact
            };
            let p = PuiseuxTrunc::from_terms(&ring, terms, trunc);
            let text = format_series(&p);
            let back = parse_series(&text, &ring).unwrap();
            assert_eq!(p, back, "round trip failed for {:?}", text);
        }
    }

    #[test]
    fn series_round_trip_cyclotomic_ring() {
        let ring = CoeffRing::cyclotomic(4);
        let z = ring_generator(&ring);
        let c = z.scale(&q(-3, 2)).add(&ring_from_i64(&ring, 2));
        let p = PuiseuxTrunc::from_terms(
            &ring,
            vec![(q(-1, 2), c), (q(1, 3), z)],
            Trunc::Order(q(7, 3)),
        );
        let text = format_series(&p);
        let back = parse_series(&text, &ring).unwrap();
        assert_eq!(p, back, "round trip failed for {:?}", text);
    }

    #[test]
    fn poly_round_trip() {
        let p = RatPoly::from_coeffs(vec![q(-1, 2), q(0, 1), q(3, 1)]);
        let s = format_ratpoly(&p);
        assert_eq!(parse_ratpoly(&s).unwrap(), p);
        assert_eq!(parse_ratpoly("y^2 - 4").unwrap().coeff(2), q(1, 1));
        assert_eq!(format_ratpoly(&RatPoly::zero()), "0");
        assert_eq!(parse_ratpoly("0").unwrap(), RatPoly::zero());
    }

    #[test]
    fn parse_plain_forms() {
        let ring = CoeffRing::rationals();
        let p = parse_series("0", &ring).unwrap();
        assert!(p.is_exact_zero());
        let p = parse_series("O(t^5)", &ring).unwrap();
        assert!(p.is_zero_up_to_trunc());
        assert_eq!(p.trunc(), &Trunc::Order(q(5, 1)));
        let p = parse_series("1 - t^2 + O(t^3)", &ring).unwrap();
        assert_eq!(p.terms().len(), 2);
        let p = parse_series("-3/2*t^-1 + 2", &ring).unwrap();
        assert_eq!(p.valuation().unwrap(), q(-1, 1));
    }
}
