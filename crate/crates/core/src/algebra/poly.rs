//! Homogeneous ternary forms with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::monomial::{self, Monomial};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Index of a variable of S = k[x, y, z].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A homogeneous polynomial of fixed degree. Only nonzero coefficients are
/// stored; the zero form keeps the degree it was created with so that it can
/// serve as a component of a syzygy triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    field: Field,
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl HomogPoly {
    pub fn zero(field: Field, degree: u32) -> Self {
        HomogPoly {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = HomogPoly::zero(c.field(), 0);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(field: Field) -> Self {
        HomogPoly::constant(field.one())
    }

    pub fn var(field: Field, v: Var) -> Self {
        HomogPoly::monomial(field.one(), Monomial::var(v.index()))
    }

    pub fn monomial(c: Scalar, m: Monomial) -> Self {
        let mut p = HomogPoly::zero(c.field(), m.degree());
        p.add_term(m, c);
        p
    }

    /// The linear form a·x + b·y + c·z.
    pub fn linear(coeffs: &[Scalar; 3]) -> Self {
        let field = coeffs[0].field();
        let mut p = HomogPoly::zero(field, 1);
        for (v, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(v), c.clone());
        }
        p
    }

    /// Builds a form from terms; all monomials must have the same degree.
    pub fn from_terms(
        field: Field,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = HomogPoly::zero(field, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::Homogeneity {
                    expected: degree,
                    found: m.degree(),
                });
            }
            field.check_same(c.field())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Dense coefficient vector in the basis of [`monomial::monomials`].
    pub fn from_coefficients(field: Field, degree: u32, coeffs: &[Scalar]) -> Self {
        assert_eq!(coeffs.len(), monomial::dim(degree));
        let mut p = HomogPoly::zero(field, degree);
        for (m, c) in monomial::monomials(degree).into_iter().zip(coeffs) {
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn coefficients(&self) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); monomial::dim(self.degree)];
        for (m, c) in &self.terms {
            out[m.index()] = c.clone();
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 0 && !self.is_zero()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn try_add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.field.check_same(other.field)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.field.check_same(other.field)?;
        let mut out = HomogPoly::zero(self.field, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> HomogPoly {
        let mut out = HomogPoly::zero(self.field, self.degree);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.terms {
            out.terms.insert(*m, v * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> HomogPoly {
        HomogPoly {
            field: self.field,
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> HomogPoly {
        let mut acc = HomogPoly::one(self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn product<'a>(field: Field, factors: impl IntoIterator<Item = &'a HomogPoly>) -> HomogPoly {
        factors
            .into_iter()
            .fold(HomogPoly::one(field), |acc, f| &acc * f)
    }

    pub fn diff(&self, v: Var) -> HomogPoly {
        let mut out = HomogPoly::zero(self.field, self.degree.saturating_sub(1));
        let i = v.index();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[i] -= 1;
            out.add_term(dm, c * &self.field.int(e as i64));
        }
        out
    }

    /// (f_x, f_y, f_z).
    pub fn gradient(&self) -> [HomogPoly; 3] {
        [self.diff(Var::X), self.diff(Var::Y), self.diff(Var::Z)]
    }

    pub fn eval(&self, point: &[Scalar; 3]) -> Scalar {
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in 0..3 {
                if m.0[v] > 0 {
                    t = &t * &point[v].pow(m.0[v] as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes x_i ↦ Σ_j a[i][j] x_j, i.e. returns f∘A.
    pub fn substitute_linear(&self, a: &[[Scalar; 3]; 3]) -> HomogPoly {
        let forms: Vec<HomogPoly> = a.iter().map(HomogPoly::linear).collect();
        self.compose(&forms)
    }

    /// Substitutes x, y, z by the given forms (all of one degree).
    pub fn compose(&self, forms: &[HomogPoly]) -> HomogPoly {
        assert_eq!(forms.len(), 3);
        let e = forms[0].degree();
        let mut powers: Vec<Vec<HomogPoly>> = Vec::with_capacity(3);
        for form in forms {
            let mut row = vec![HomogPoly::one(self.field)];
            for k in 1..=self.degree as usize {
                let next = &row[k - 1] * form;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = HomogPoly::zero(self.field, self.degree * e);
        for (m, c) in &self.terms {
            let [i, j, k] = m.0;
            let t = &(&powers[0][i as usize] * &powers[1][j as usize]) * &powers[2][k as usize];
            for (tm, tc) in t.terms {
                out.add_term(tm, &tc * c);
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &HomogPoly) -> Option<HomogPoly> {
        let (lm, lc) = divisor.leading_term()?;
        if divisor.degree > self.degree && !self.is_zero() {
            return None;
        }
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = HomogPoly::zero(self.field, self.degree.saturating_sub(divisor.degree));
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &HomogPoly) -> bool {
        other.div_exact(self).is_some()
    }

    /// Scales so that the leading (graded-lex largest) coefficient is one.
    pub fn monic(&self) -> HomogPoly {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.inv().unwrap()),
            None => self.clone(),
        }
    }

    /// Over Q: integer coefficients with gcd 1 and positive leading
    /// coefficient. Over GF(p): monic.
    pub fn primitive(&self) -> HomogPoly {
        if self.is_zero() {
            return self.clone();
        }
        match self.field {
            Field::Prime(_) => self.monic(),
            Field::Rational => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for c in self.terms.values() {
                    let q = c.as_rational().unwrap();
                    den = den.lcm(q.denom());
                    num = num.gcd(q.numer());
                }
                let mut factor = BigRational::new(den, num);
                if self.leading_term().unwrap().1.is_negative() {
                    factor = -factor;
                }
                self.scale(&Scalar::Rat(factor))
            }
        }
    }

    /// Image of this form in GF(p).
    pub fn reduce_mod(&self, p: u64) -> Result<HomogPoly> {
        let field = Field::Prime(p);
        let mut out = HomogPoly::zero(field, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, Scalar::residue(c.reduce_mod(p)?, p));
        }
        Ok(out)
    }

    /// Reinterprets the form over another field (rationals may be reduced
    /// modulo a prime; residues cannot be lifted).
    pub fn to_field(&self, field: Field) -> Result<HomogPoly> {
        match (self.field, field) {
            (a, b) if a == b => Ok(self.clone()),
            (Field::Rational, Field::Prime(p)) => self.reduce_mod(p),
            (a, b) => Err(Error::FieldMismatch(a.to_string(), b.to_string())),
        }
    }

    /// Largest power of `v` dividing every term.
    pub fn var_valuation(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.0[v.index()]).min().unwrap_or(0)
    }

    /// Divides by `v^e`; every term must be divisible.
    pub fn div_var_power(&self, v: Var, e: u32) -> HomogPoly {
        let mut out = HomogPoly::zero(self.field, self.degree - e);
        for (m, c) in &self.terms {
            let mut nm = *m;
            nm.0[v.index()] -= e;
            out.terms.insert(nm, c.clone());
        }
        out
    }

    /// A form is reduced exactly when its partials have no common factor
    /// (Euler's identity puts any such factor inside f itself).
    pub fn is_square_free(&self) -> bool {
        if self.degree <= 1 {
            return !self.is_zero();
        }
        let g = self.gradient();
        let common = super::gcd::homog_gcd(&super::gcd::homog_gcd(&g[0], &g[1]), &g[2]);
        common.degree() == 0
    }
}

impl Serialize for HomogPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add<&HomogPoly> for &HomogPoly {
    type Output = HomogPoly;
    /// Panics on field or degree mismatch; see [`HomogPoly::try_add`].
    fn add(self, rhs: &HomogPoly) -> HomogPoly {
        self.try_add(rhs).expect("HomogPoly addition")
    }
}

impl Sub<&HomogPoly> for &HomogPoly {
    type Output = HomogPoly;
    fn sub(self, rhs: &HomogPoly) -> HomogPoly {
        self.try_add(&-rhs).expect("HomogPoly subtraction")
    }
}

impl Mul<&HomogPoly> for &HomogPoly {
    type Output = HomogPoly;
    /// Panics on field mismatch; see [`HomogPoly::try_mul`].
    fn mul(self, rhs: &HomogPoly) -> HomogPoly {
        self.try_mul(rhs).expect("HomogPoly multiplication")
    }
}

impl Neg for &HomogPoly {
    type Output = HomogPoly;
    fn neg(self) -> HomogPoly {
        HomogPoly {
            field: self.field,
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn q(s: &str) -> HomogPoly {
        parse_poly(s, Field::Rational).unwrap()
    }

    #[test]
    fn derivatives() {
        assert_eq!(q("x^3").diff(Var::X), q("3*x^2"));
        let cone = q("x^5 - y^5").diff(Var::Z);
        assert!(cone.is_zero());
        assert_eq!(cone.degree(), 4);
    }

    #[test]
    fn euler_identity_for_xyz() {
        let f = q("x*y*z");
        let [fx, fy, fz] = f.gradient();
        let x = HomogPoly::var(Field::Rational, Var::X);
        let y = HomogPoly::var(Field::Rational, Var::Y);
        let z = HomogPoly::var(Field::Rational, Var::Z);
        let lhs = &(&(&x * &fx) + &(&y * &fy)) + &(&z * &fz);
        assert_eq!(lhs, f.scale(&Field::Rational.int(3)));
    }

    #[test]
    fn products() {
        assert_eq!(&q("x") * &q("y"), q("x*y"));
        assert_eq!(&q("x - y") * &q("x + y"), q("x^2 - y^2"));
        let lines = ["x", "y", "z", "x - z", "x + z", "x - y"].map(q);
        let f = HomogPoly::product(Field::Rational, lines.iter());
        assert_eq!(f, q("x*y*z*(x-z)*(x+z)*(x-y)"));
        assert_eq!(f.degree(), 6);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = q("x");
        let b = a.reduce_mod(1073741827).unwrap();
        assert!(matches!(a.try_mul(&b), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn exact_division() {
        let f = q("x^3 - y^3");
        assert_eq!(f.div_exact(&q("x - y")).unwrap(), q("x^2 + x*y + y^2"));
        assert!(f.div_exact(&q("x + y")).is_none());
        assert!(q("x^2").div_exact(&q("x^3")).is_none());
    }

    #[test]
    fn linear_substitution_composes() {
        let f = q("x^2*y - z^3 + 2*x*y*z");
        let a = [
            [Field::Rational.int(1), Field::Rational.int(2), Field::Rational.int(0)],
            [Field::Rational.int(0), Field::Rational.int(1), Field::Rational.int(-1)],
            [Field::Rational.int(3), Field::Rational.int(0), Field::Rational.int(1)],
        ];
        let g = f.substitute_linear(&a);
        let pt = [Field::Rational.int(2), Field::Rational.int(-1), Field::Rational.int(5)];
        let image = [
            &(&a[0][0] * &pt[0]) + &(&(&a[0][1] * &pt[1]) + &(&a[0][2] * &pt[2])),
            &(&a[1][0] * &pt[0]) + &(&(&a[1][1] * &pt[1]) + &(&a[1][2] * &pt[2])),
            &(&a[2][0] * &pt[0]) + &(&(&a[2][1] * &pt[1]) + &(&a[2][2] * &pt[2])),
        ];
        assert_eq!(g.eval(&pt), f.eval(&image));
    }

    #[test]
    fn primitive_normalization() {
        assert_eq!(q("-6*x^2 + 3/2*y^2").primitive(), q("4*x^2 - y^2"));
    }
}
