//! Resultants: the Macaulay resultant of three ternary forms and Sylvester
//! resultants used to eliminate one variable from two forms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::monomial::{self, Monomial};
use crate::algebra::{ExactMatrix, HomogPoly, Scalar, UniPoly, Unimodular, Var};
use crate::error::{Error, Result};

/// Coordinate changes tried before a degenerate denominator becomes an error.
pub const MACAULAY_RETRIES: usize = 8;

/// Which form a critical-degree monomial is assigned to, and whether it is
/// divisible by two or more of x^e₁, y^e₂, z^e₃.
fn assign(m: &Monomial, e: [u32; 3]) -> (usize, bool) {
    let hits: Vec<usize> = (0..3).filter(|&i| m.0[i] >= e[i]).collect();
    (hits[0], hits.len() > 1)
}

/// det M / det M' for the Macaulay matrix M in critical degree, or None when
/// the extraneous minor M' is singular.
fn macaulay_quotient(f: [&HomogPoly; 3]) -> Option<Scalar> {
    let field = f[0].field();
    let e = [f[0].degree(), f[1].degree(), f[2].degree()];
    let top = e[0] + e[1] + e[2] - 2;
    let basis = monomial::monomials(top);
    let n = basis.len();
    let mut mat = ExactMatrix::zeros(field, n, n);
    let mut extraneous = Vec::new();
    for (row, m) in basis.iter().enumerate() {
        let (i, non_reduced) = assign(m, e);
        if non_reduced {
            extraneous.push(row);
        }
        let mut pure = [0u32; 3];
        pure[i] = e[i];
        let shift = m.div(&Monomial::new(pure[0], pure[1], pure[2])).unwrap();
        for (t, c) in f[i].terms() {
            mat.set(row, t.mul(&shift).index(), c.clone());
        }
    }
    let minor_det = if extraneous.is_empty() {
        field.one()
    } else {
        let rows = extraneous
            .iter()
            .map(|&r| extraneous.iter().map(|&c| mat.get(r, c).clone()).collect())
            .collect();
        ExactMatrix::from_rows(field, extraneous.len(), rows).determinant()
    };
    if minor_det.is_zero() {
        return None;
    }
    Some(&mat.determinant() * &minor_det.inv().unwrap())
}

/// The resultant of three ternary forms of positive degree, normalized by
/// Res(x^a, y^b, z^c) = 1. It vanishes exactly when the forms share a zero
/// over the algebraic closure.
///
/// Computed as det M / det M' from the Macaulay matrix in degree
/// e₁ + e₂ + e₃ − 2. When M' is singular the forms are moved by a random
/// determinant-one integer change of coordinates, which leaves the resultant
/// unchanged, and the quotient is retried.
pub fn macaulay_resultant(p1: &HomogPoly, p2: &HomogPoly, p3: &HomogPoly) -> Result<Scalar> {
    let field = p1.field();
    field.check_same(p2.field())?;
    field.check_same(p3.field())?;
    for p in [p1, p2, p3] {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if p.degree() == 0 {
            return Err(Error::Precondition("Macaulay resultant needs forms of positive degree".into()));
        }
    }
    if let Some(r) = macaulay_quotient([p1, p2, p3]) {
        return Ok(r);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 1..=MACAULAY_RETRIES {
        let u = Unimodular::random(&mut rng, 6 + attempt);
        let moved = [u.apply(p1), u.apply(p2), u.apply(p3)];
        if let Some(r) = macaulay_quotient([&moved[0], &moved[1], &moved[2]]) {
            log::debug!("Macaulay denominator degenerate; succeeded after {attempt} coordinate change(s)");
            return Ok(r);
        }
    }
    Err(Error::DegenerateDenominator(MACAULAY_RETRIES))
}

/// Sylvester resultant of two univariate polynomials taken with the given
/// formal degrees.
pub fn sylvester(f: &UniPoly, m: usize, g: &UniPoly, n: usize) -> Scalar {
    let field = f.field();
    let size = m + n;
    if size == 0 {
        return field.one();
    }
    let mut mat = ExactMatrix::zeros(field, size, size);
    for r in 0..n {
        for i in 0..=m {
            mat.set(r, r + m - i, f.coeff(i));
        }
    }
    for r in 0..m {
        for i in 0..=n {
            mat.set(n + r, r + n - i, g.coeff(i));
        }
    }
    mat.determinant()
}

/// Restricts a form to the affine line where `var` is free, `along` equals s
/// and the remaining variable is 1; the result is a polynomial in `var`.
pub fn specialize(f: &HomogPoly, var: Var, along: Var, s: &Scalar) -> UniPoly {
    let field = f.field();
    let mut coeffs = vec![field.zero(); f.degree() as usize + 1];
    for (m, c) in f.terms() {
        let e = m.0[var.index()] as usize;
        let w = s.pow(m.0[along.index()] as u64);
        coeffs[e] = &coeffs[e] + &(c * &w);
    }
    UniPoly::new(field, coeffs)
}

/// Res_var(f, g) as a binary form in the two other variables, returned
/// dehomogenized (along = s, third variable = 1) together with its formal
/// degree deg f · deg g. Both forms must have a nonzero constant coefficient
/// at var^deg.
pub fn eliminate(f: &HomogPoly, g: &HomogPoly, var: Var, along: Var) -> Result<(UniPoly, usize)> {
    let field = f.field();
    let (m, n) = (f.degree() as usize, g.degree() as usize);
    let top = |p: &HomogPoly| {
        let mut e = [0u32; 3];
        e[var.index()] = p.degree();
        p.coeff(&Monomial::new(e[0], e[1], e[2]))
    };
    if top(f).is_zero() || top(g).is_zero() {
        return Err(Error::Precondition(format!(
            "elimination needs both forms monic up to scalar in {var:?}"
        )));
    }
    let total = m * n;
    let samples: Vec<(Scalar, Scalar)> = (0..=total)
        .map(|s| {
            let s = field.int(s as i64);
            let r = sylvester(&specialize(f, var, along, &s), m, &specialize(g, var, along, &s), n);
            (s, r)
        })
        .collect();
    Ok((UniPoly::interpolate(field, &samples)?, total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};

    fn q(s: &str) -> HomogPoly {
        parse_poly(s, Field::Rational).unwrap()
    }

    #[test]
    fn coordinate_forms() {
        assert!(macaulay_resultant(&q("x"), &q("y"), &q("z")).unwrap().is_one());
        assert!(macaulay_resultant(&q("x^2"), &q("y^3"), &q("z^2")).unwrap().is_one());
        assert!(macaulay_resultant(&q("x"), &q("y"), &q("x+y")).unwrap().is_zero());
    }

    #[test]
    fn linear_forms_give_the_determinant() {
        let r = macaulay_resultant(&q("2*x + y"), &q("x - y + 3*z"), &q("x + z")).unwrap();
        let m = ExactMatrix::from_i64(Field::Rational, &[vec![2, 1, 0], vec![1, -1, 3], vec![1, 0, 1]]);
        assert_eq!(r, m.determinant());
    }

    #[test]
    fn smooth_and_singular_cubics() {
        let smooth = q("x^3 + y^3 + z^3");
        let [a, b, c] = smooth.gradient();
        assert!(!macaulay_resultant(&a, &b, &c).unwrap().is_zero());
        let nodal = q("y^2*z - x^2*(x + z)");
        let [a, b, c] = nodal.gradient();
        assert!(macaulay_resultant(&a, &b, &c).unwrap().is_zero());
    }

    #[test]
    fn sylvester_of_linear_factors() {
        // Res(t - 1, t - 3) = 1 - 3 up to the usual sign.
        let f = UniPoly::from_i64s(Field::Rational, &[-1, 1]);
        let g = UniPoly::from_i64s(Field::Rational, &[-3, 1]);
        assert_eq!(sylvester(&f, 1, &g, 1), Field::Rational.int(-2));
    }
}
