//! Greatest common divisors of ternary forms by evaluation and
//! interpolation.
//!
//! The common power of z is split off first; what remains is dehomogenized
//! at z = 1. A shear y ↦ y + s·x makes both inputs contain a pure power of x,
//! so every factor is monic in x up to a constant. The bivariate gcd is then
//! recovered from univariate gcds at y = 0, 1, 2, … and checked by exact
//! division.

use super::monomial::Monomial;
use super::poly::{HomogPoly, Var};
use super::scalar::{Field, Scalar};
use super::uni::UniPoly;

pub fn homog_gcd(p: &HomogPoly, q: &HomogPoly) -> HomogPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let field = p.field();
    let vp = p.var_valuation(Var::Z);
    let vq = q.var_valuation(Var::Z);
    let common_z = vp.min(vq);
    let p1 = p.div_var_power(Var::Z, vp);
    let q1 = q.div_var_power(Var::Z, vq);

    let z_part = HomogPoly::var(field, Var::Z).pow(common_z);
    let g = if p1.degree() == 0 || q1.degree() == 0 {
        HomogPoly::one(field)
    } else {
        coprime_to_z_gcd(&p1, &q1)
    };
    (&g * &z_part).monic()
}

/// The ternary form x ↦ x, y ↦ y + s·x, z ↦ z applied to `f`.
fn shear(f: &HomogPoly, s: &Scalar) -> HomogPoly {
    let field = f.field();
    let (zero, one) = (field.zero(), field.one());
    f.substitute_linear(&[
        [one.clone(), zero.clone(), zero.clone()],
        [s.clone(), one.clone(), zero.clone()],
        [zero.clone(), zero, one],
    ])
}

fn coprime_to_z_gcd(p: &HomogPoly, q: &HomogPoly) -> HomogPoly {
    let field = p.field();
    let mut s_int = 0i64;
    let s = loop {
        let s = field.int(s_int);
        let probe = [field.one(), s.clone(), field.zero()];
        if !p.eval(&probe).is_zero() && !q.eval(&probe).is_zero() {
            break s;
        }
        s_int += 1;
    };
    let ps = shear(p, &s);
    let qs = shear(q, &s);

    let mut samples: Vec<(Scalar, UniPoly)> = Vec::new();
    let mut next_y = 0i64;
    let mut wanted = 0usize;
    loop {
        // Collect until we have `wanted` more samples of the least degree seen.
        let mut added = 0;
        while added < wanted.max(1) || samples.is_empty() {
            let y0 = field.int(next_y);
            next_y += 1;
            let a = restrict_x(&ps, &y0);
            let b = restrict_x(&qs, &y0);
            samples.push((y0, a.gcd(&b)));
            added += 1;
        }
        let n = samples.iter().map(|(_, g)| g.deg()).min().unwrap();
        let good: Vec<&(Scalar, UniPoly)> = samples.iter().filter(|(_, g)| g.deg() == n).collect();
        if n == 0 {
            // A lucky constant gcd at some abscissa certifies coprimality.
            return HomogPoly::one(field);
        }
        if good.len() < n + 1 {
            wanted = n + 1 - good.len();
            continue;
        }
        if let Some(g) = assemble(field, n, &good) {
            let candidate = shear(&g, &-&s);
            if candidate.divides(p) && candidate.divides(q) {
                return candidate;
            }
        }
        wanted = 2;
    }
}

/// f(x, y0, 1) as a polynomial in x.
fn restrict_x(f: &HomogPoly, y0: &Scalar) -> UniPoly {
    let field = f.field();
    let mut coeffs = vec![field.zero(); f.degree() as usize + 1];
    for (m, c) in f.terms() {
        let [i, j, _] = m.0;
        coeffs[i as usize] = &coeffs[i as usize] + &(c * &y0.pow(j as u64));
    }
    UniPoly::new(field, coeffs)
}

/// Interpolates the y-dependence of each x-coefficient and homogenizes.
fn assemble(field: Field, n: usize, good: &[&(Scalar, UniPoly)]) -> Option<HomogPoly> {
    let mut terms = Vec::new();
    for i in 0..=n {
        let pts: Vec<(Scalar, Scalar)> = good.iter().map(|(y, g)| (y.clone(), g.coeff(i))).collect();
        let ci = UniPoly::interpolate(field, &pts).ok()?;
        for (j, c) in ci.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + j > n {
                return None;
            }
            terms.push((Monomial::new(i as u32, j as u32, (n - i - j) as u32), c.clone()));
        }
    }
    HomogPoly::from_terms(field, n as u32, terms).ok()
}
