//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication; `2x` is a syntax error.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::poly::HomogPoly;
use super::scalar::{Field, Scalar};
use super::uni::UniPoly;
use crate::error::{Error, Result};

/// A sparse polynomial over Q in an arbitrary list of variables, indexed by
/// exponent vectors.
type Sparse = BTreeMap<Vec<u32>, BigRational>;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [char],
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
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

    fn constant(&self, c: BigRational) -> Sparse {
        let mut s = Sparse::new();
        if !c.is_zero() {
            s.insert(vec![0; self.vars.len()], c);
        }
        s
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            for (m, c) in t {
                let c = if sign < 0 { -c } else { c };
                add_into(&mut acc, m, c);
            }
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = mul_sparse(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return err(start, "expected a non-negative integer exponent");
            }
            let e: u32 = digits
                .parse()
                .or_else(|_| err(start, "exponent too large"))?;
            let mut acc = self.constant(BigRational::one());
            for _ in 0..e {
                acc = mul_sparse(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Sparse> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return err(self.pos, "unexpected end of input"),
        };
        let ch = self.src[start];
        if ch.is_ascii_digit() {
            let num: BigInt = self.digits().parse().unwrap();
            let mut value = BigRational::from_integer(num);
            if self.peek() == Some(b'/') {
                self.pos += 1;
                self.skip_ws();
                let dpos = self.pos;
                let den = self.digits();
                if den.is_empty() {
                    return err(dpos, "expected an integer denominator");
                }
                let den: BigInt = den.parse().unwrap();
                if den.is_zero() {
                    return err(dpos, "zero denominator");
                }
                value /= BigRational::from_integer(den);
            }
            return Ok(self.constant(value));
        }
        if ch == b'(' {
            self.pos += 1;
            let inner = self.expr()?;
            if self.peek() != Some(b')') {
                return err(self.pos, "expected ')'");
            }
            self.pos += 1;
            return Ok(inner);
        }
        if let Some(v) = self.vars.iter().position(|&c| c as u32 == ch as u32) {
            self.pos += 1;
            let mut e = vec![0; self.vars.len()];
            e[v] = 1;
            let mut s = Sparse::new();
            s.insert(e, BigRational::one());
            return Ok(s);
        }
        err(start, format!("unexpected character '{}'", ch as char))
    }
}

fn add_into(acc: &mut Sparse, m: Vec<u32>, c: BigRational) {
    let entry = acc.entry(m.clone()).or_insert_with(BigRational::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&m);
    }
}

fn mul_sparse(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            add_into(&mut out, m, ca * cb);
        }
    }
    out
}

fn parse_sparse(text: &str, vars: &[char]) -> Result<Sparse> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return err(p.pos, format!("unexpected '{}'", p.src[p.pos] as char));
    }
    Ok(out)
}

fn to_field(field: Field, c: &BigRational) -> Result<Scalar> {
    Scalar::from_rational(field, c)
}

/// Parses a homogeneous form in x, y, z. Coefficients are read as rationals
/// and then mapped into `field`.
pub fn parse_poly(text: &str, field: Field) -> Result<HomogPoly> {
    let sparse = parse_sparse(text, &['x', 'y', 'z'])?;
    let degrees: Vec<u32> = sparse.keys().map(|e| e.iter().sum()).collect();
    let high = degrees.iter().copied().max().unwrap_or(0);
    let low = degrees.iter().copied().min().unwrap_or(0);
    if high != low {
        return Err(Error::Homogeneity {
            expected: high,
            found: low,
        });
    }
    let terms = sparse
        .iter()
        .map(|(e, c)| Ok((Monomial::new(e[0], e[1], e[2]), to_field(field, c)?)))
        .collect::<Result<Vec<_>>>()?;
    HomogPoly::from_terms(field, high, terms)
}

/// Parses a univariate polynomial in the given variable.
pub fn parse_uni(text: &str, var: char, field: Field) -> Result<UniPoly> {
    let sparse = parse_sparse(text, &[var])?;
    let deg = sparse.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![field.zero(); deg + 1];
    for (e, c) in &sparse {
        coeffs[e[0] as usize] = to_field(field, c)?;
    }
    Ok(UniPoly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_monomial() {
        let p = parse_poly("x*y*z", Field::Rational).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.num_terms(), 1);
        assert!(p.coeff(&Monomial::new(1, 1, 1)).is_one());
    }

    #[test]
    fn non_homogeneous_input_names_both_degrees() {
        match parse_poly("x^2*y - 3*z^2", Field::Rational) {
            Err(Error::Homogeneity { expected, found }) => {
                assert_eq!((expected, found), (3, 2));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_poly("x^2*y - 3*z^3", Field::Rational).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_poly("x + * y", Field::Rational) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_poly("2x", Field::Rational), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_poly("(x+y", Field::Rational), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x/0", Field::Rational), Err(Error::Parse { .. })));
    }

    #[test]
    fn expands_products_of_cubic_differences() {
        let p = parse_poly("(x^3-y^3)*(y^3-z^3)*(x^3-z^3)", Field::Rational).unwrap();
        assert_eq!(p.degree(), 9);
        // (a - b)(b - c)(a - c) with a=x^3, b=y^3, c=z^3 has six terms.
        assert_eq!(p.num_terms(), 6);
        let pt = [Field::Rational.int(2), Field::Rational.int(1), Field::Rational.int(1)];
        assert!(p.eval(&pt).is_zero());
        let pt = [Field::Rational.int(3), Field::Rational.int(2), Field::Rational.int(1)];
        assert_eq!(p.eval(&pt), Field::Rational.int(19 * 7 * 26));
    }

    #[test]
    fn print_parse_round_trip() {
        for text in ["3/4*x^2*y - z^3", "x^5 - y^5", "-x*y + 7*z^2", "0"] {
            let p = parse_poly(text, Field::Rational).unwrap();
            let again = parse_poly(&p.to_string(), Field::Rational).unwrap();
            assert_eq!(p, again);
        }
        let p = parse_poly("3/4*x^2*y - z^3", Field::Rational).unwrap();
        assert_eq!(p.to_string(), "3/4*x^2*y - z^3");
    }

    #[test]
    fn modular_coefficients() {
        let p = 1073741827;
        let f = parse_poly("1/2*x - y", Field::Prime(p)).unwrap();
        assert_eq!(f.to_string(), format!("{}*x + {}*y", (p + 1) / 2, p - 1));
        assert!(matches!(
            parse_poly(&format!("1/{p}*x"), Field::Prime(p)),
            Err(Error::UnluckyPrime(_))
        ));
    }

    #[test]
    fn univariate() {
        let u = parse_uni("t^3 + 27", 't', Field::Rational).unwrap();
        assert_eq!(u.degree(), Some(3));
        assert!(parse_uni("t*x", 't', Field::Rational).is_err());
    }
}
