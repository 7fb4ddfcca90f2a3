//! Text syntax for polynomials: `3*U^2*V - 1/2*W`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::kernel::monomial::{Exps, Monomial};
use crate::kernel::poly::{Polynomial, Term};
use crate::kernel::ring::Ring;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.pos + 1,
            message: msg.into(),
        })
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() || *c == b'_' => self.pos += 1,
            _ => return None,
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident"))
    }
}

/// Parses a polynomial over `ring`. Unknown variables and malformed input
/// are reported with a 1-based column.
pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let field = ring.field();
    let n = ring.nvars();
    let mut terms: Vec<Term> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        let mut signs = 0;
        while let Some(c @ (b'+' | b'-')) = lx.peek() {
            negative ^= c == b'-';
            signs += 1;
            lx.pos += 1;
        }
        match lx.peek() {
            None if first && signs == 0 => return lx.err("empty polynomial"),
            None if signs == 0 => break,
            None => return lx.err("dangling sign"),
            Some(c) if !first && signs == 0 => {
                return lx.err(format!("unexpected `{}`", c as char))
            }
            _ => {}
        }
        first = false;
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut exps: Exps = smallvec::smallvec![0; n];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    num *= lx.number()?;
                    if lx.peek() == Some(b'/') {
                        lx.pos += 1;
                        let d = lx.number()?;
                        if d == BigInt::from(0) {
                            return lx.err("zero denominator");
                        }
                        den *= d;
                    }
                }
                Some(_) => {
                    let col = lx.pos;
                    let Some(name) = lx.ident() else {
                        return lx.err("expected a coefficient or variable");
                    };
                    let Some(i) = ring.var_index(name) else {
                        lx.pos = col;
                        return lx.err(format!("unknown variable `{name}`"));
                    };
                    let mut e: u32 = 1;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let v = lx.number()?;
                        e = match u32::try_from(v) {
                            Ok(v) if v <= u16::MAX as u32 => v,
                            _ => return lx.err("exponent too large"),
                        };
                    }
                    let s = exps[i] as u32 + e;
                    if s > u16::MAX as u32 {
                        return lx.err("exponent too large");
                    }
                    exps[i] = s as u16;
                }
                None => return lx.err("expected a factor"),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        if negative {
            num = -num;
        }
        let c = field.from_ratio(&num, &den).or_else(|_| {
            lx.err("denominator is not invertible in the coefficient field")
        })?;
        if !c.is_zero() {
            terms.push((c, Monomial::new(exps, ring.weights())));
        }
        match lx.peek() {
            None => break,
            Some(b'+') | Some(b'-') => continue,
            Some(c) => return lx.err(format!("unexpected `{}`", c as char)),
        }
    }
    Ok(Polynomial::from_terms(ring.clone(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::coeff::FieldMode;
    use proptest::prelude::*;

    #[test]
    fn errors_carry_columns() {
        let r = Ring::rational(&["U", "V", "W"]);
        match parse_polynomial(&r, "U + X") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial(&r, "").is_err());
        assert!(parse_polynomial(&r, "U +").is_err());
        assert!(parse_polynomial(&r, "U V").is_err());
        assert!(parse_polynomial(&r, "1/0").is_err());
    }

    #[test]
    fn rational_coefficients() {
        let r = Ring::rational(&["U", "V", "W"]);
        let p = parse_polynomial(&r, "3*U^2*V - 1/2*W").unwrap();
        assert_eq!(p.to_string(), "3*U^2*V - 1/2*W");
        let q = parse_polynomial(&r, "2*U*3 + U^1*U - 6*U").unwrap();
        assert_eq!(q.to_string(), "U^2");
    }

    #[test]
    fn prime_field_fractions() {
        let r = Ring::new(&["U"], &[1], FieldMode::Prime(7)).unwrap();
        let p = parse_polynomial(&r, "1/2*U").unwrap();
        assert_eq!(p.to_string(), "4*U");
        assert!(parse_polynomial(&r, "1/7*U").is_err());
    }

    fn poly_text() -> impl Strategy<Value = String> {
        let term = (-20i64..20, 1i64..5, 0u16..4, 0u16..4, 0u16..3).prop_map(|(n, d, a, b, c)| {
            format!("{n}/{d}*U^{a}*V^{b}*W^{c}")
        });
        prop::collection::vec(term, 0..6).prop_map(|ts| {
            if ts.is_empty() {
                "0".to_string()
            } else {
                ts.join(" + ")
            }
        })
    }

    proptest! {
        #[test]
        fn print_parse_print_is_identity(text in poly_text()) {
            let r = Ring::rational(&["U", "V", "W"]);
            let p = parse_polynomial(&r, &text).unwrap();
            let s = p.to_string();
            let q = parse_polynomial(&r, &s).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), s);
        }
    }
}
