//! Dense univariate polynomials over an exact field.

use std::fmt;

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Coefficients are stored from the constant term upwards; the leading
/// coefficient is nonzero except for the zero polynomial, which has no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        UniPoly::new(field, Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::new(c.field(), vec![c])
    }

    pub fn one(field: Field) -> Self {
        UniPoly::constant(field.one())
    }

    /// The polynomial `t`.
    pub fn t(field: Field) -> Self {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    /// `t - a`.
    pub fn linear_root(a: &Scalar) -> Self {
        let field = a.field();
        UniPoly::new(field, vec![-a, field.one()])
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        UniPoly::new(field, coeffs.iter().map(|&c| field.int(c)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg 0 = 0 (useful for counting).
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            self.field,
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        (0..n).fold(UniPoly::one(self.field), |acc, _| acc.mul(self))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; fails on a zero divisor.
    pub fn divrem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dl = divisor.lead().ok_or(Error::DivisionByZero)?;
        let dl_inv = dl.inv().unwrap();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &dl_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dc);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(self.field, quot), UniPoly::new(self.field, rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.divrem(divisor).expect("nonzero divisor").1
    }

    /// Exact quotient, `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(divisor).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(self.field).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Yun's squarefree decomposition: monic, pairwise coprime, squarefree
    /// factors with their multiplicities, in increasing multiplicity. The
    /// product of `factor^multiplicity` equals `self` up to a scalar.
    ///
    /// Valid in characteristic zero or when the characteristic exceeds the
    /// degree.
    pub fn squarefree(&self) -> Result<Vec<(UniPoly, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if let Some(p) = self.field.modulus() {
            if self.deg() as u64 >= p {
                return Err(Error::Precondition(format!(
                    "squarefree decomposition needs characteristic above the degree {}",
                    self.deg()
                )));
            }
        }
        let mut out = Vec::new();
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = df.div_exact(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            b = b.div_exact(&a).unwrap();
            c = d.div_exact(&a).unwrap();
            d = c.sub(&b.derivative());
            if !a.is_constant() {
                out.push((a, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// Newton interpolation through the given samples.
    pub fn interpolate(field: Field, points: &[(Scalar, Scalar)]) -> Result<UniPoly> {
        let n = points.len();
        for i in 0..n {
            for j in 0..i {
                if points[i].0 == points[j].0 {
                    return Err(Error::RepeatedAbscissa);
                }
            }
        }
        // Divided differences, in place.
        let mut dd: Vec<Scalar> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - level].0;
                dd[i] = num.checked_div(&den)?;
            }
        }
        let mut acc = UniPoly::zero(field);
        for i in (0..n).rev() {
            acc = acc
                .mul(&UniPoly::linear_root(&points[i].0))
                .add(&UniPoly::constant(dd[i].clone()));
        }
        Ok(acc)
    }

    /// Distinct roots in GF(p) of a polynomial over GF(p), sorted.
    pub fn roots_mod_p(&self) -> Result<Vec<u64>> {
        let p = self.field.modulus().ok_or_else(|| {
            Error::Precondition("root extraction needs a prime field".into())
        })?;
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let t = UniPoly::t(self.field);
        let tp = t.powmod(p, &f);
        let split = f.gcd(&tp.sub(&t));
        let mut roots = Vec::new();
        split_linear(&split, p, &mut roots);
        roots.sort_unstable();
        Ok(roots)
    }

    /// Renders with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

/// Equal-degree splitting of a product of distinct linear factors over GF(p).
/// The shifts `a = 0, 1, 2, ...` are tried in order, so the output is
/// deterministic.
fn split_linear(f: &UniPoly, p: u64, out: &mut Vec<u64>) {
    match f.degree() {
        None | Some(0) => {}
        Some(1) => {
            let f = f.monic();
            let r = (-&f.coeff(0)).to_i64().unwrap() as u64;
            out.push(r);
        }
        Some(_) => {
            let field = f.field();
            for a in 0u64.. {
                let shifted = UniPoly::new(field, vec![Scalar::residue(a, p), field.one()]);
                let h = shifted
                    .powmod((p - 1) / 2, f)
                    .sub(&UniPoly::one(field));
                let g = f.gcd(&h);
                if !g.is_constant() && g.deg() < f.deg() {
                    split_linear(&g, p, out);
                    split_linear(&f.div_exact(&g).unwrap(), p, out);
                    return;
                }
            }
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_uni;
    use proptest::prelude::*;

    const P: u64 = 1073741827;

    fn q(s: &str) -> UniPoly {
        parse_uni(s, 't', Field::Rational).unwrap()
    }

    #[test]
    fn squarefree_of_simple_products() {
        let sf = q("(t-1)^2*(t+2)").squarefree().unwrap();
        assert_eq!(sf, vec![(q("t+2"), 1), (q("t-1"), 2)]);
        let sf = q("t^3+27").squarefree().unwrap();
        assert_eq!(sf, vec![(q("t^3+27"), 1)]);
        assert!(matches!(UniPoly::zero(Field::Rational).squarefree(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn interpolation() {
        let r = Field::Rational;
        let pts = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| (r.int(a), r.int(b))).collect::<Vec<_>>();
        assert_eq!(UniPoly::interpolate(r, &pts(&[(0, 1), (1, 2)])).unwrap(), q("t+1"));
        assert_eq!(UniPoly::interpolate(r, &pts(&[(0, 0), (1, 1), (2, 4)])).unwrap(), q("t^2"));
        assert!(matches!(
            UniPoly::interpolate(r, &pts(&[(0, 0), (0, 1)])),
            Err(Error::RepeatedAbscissa)
        ));
    }

    #[test]
    fn finds_roots_mod_p() {
        let f = parse_uni("(t-3)*(t-5)*(t+7)*(t^2+1)", 't', Field::Prime(P)).unwrap();
        // P = 3 mod 4, so t^2 + 1 has no roots.
        assert_eq!(P % 4, 3);
        assert_eq!(f.roots_mod_p().unwrap(), vec![3, 5, P - 7]);
    }

    #[test]
    fn display() {
        assert_eq!(q("t^3 - 3*t + 9").to_string(), "t^3 - 3*t + 9");
        assert_eq!(q("-1/2*t").display_in("u"), "-1/2*u");
    }

    proptest! {
        #[test]
        fn squarefree_reassembles(roots in prop::collection::vec((-5i64..5, 1u32..4), 1..5)) {
            let r = Field::Rational;
            let mut f = UniPoly::one(r);
            for (a, e) in &roots {
                f = f.mul(&UniPoly::linear_root(&r.int(*a)).pow(*e));
            }
            let sf = f.squarefree().unwrap();
            let mut g = UniPoly::one(r);
            for (i, (a, e)) in sf.iter().enumerate() {
                g = g.mul(&a.pow(*e));
                prop_assert!(a.gcd(&a.derivative()).is_constant());
                for (b, _) in &sf[i + 1..] {
                    prop_assert!(a.gcd(b).is_constant());
                }
            }
            prop_assert_eq!(g, f.monic());
        }

        #[test]
        fn divrem_identity(a in prop::collection::vec(-9i64..9, 0..7), b in prop::collection::vec(-9i64..9, 1..5)) {
            let r = Field::Rational;
            let a = UniPoly::from_i64s(r, &a);
            let b = UniPoly::from_i64s(r, &b);
            prop_assume!(!b.is_zero());
            let (qq, rr) = a.divrem(&b).unwrap();
            prop_assert!(rr.is_zero() || rr.deg() < b.deg());
            prop_assert_eq!(qq.mul(&b).add(&rr), a);
        }
    }
}
