use super::{macaulay_resultant, PencilSpec};
use crate::algebra::HomogPoly;
use crate::error::{Error, Result};
use crate::syzygy::{verify_syzygy, SyzygyTriple};

/// ∇u × ∇v: the coefficient triple of du ∧ dv, which annihilates ∇g for any
/// g that is a function of u and v.
fn cross_grad(u: &HomogPoly, v: &HomogPoly) -> [HomogPoly; 3] {
    let [ux, uy, uz] = u.gradient();
    let [vx, vy, vz] = v.gradient();
    [
        &(&uy * &vz) - &(&uz * &vy),
        &(&uz * &vx) - &(&ux * &vz),
        &(&ux * &vy) - &(&uy * &vx),
    ]
}

fn checked(f: &HomogPoly, parts: [HomogPoly; 3], what: &str) -> Result<SyzygyTriple> {
    let [a, b, c] = parts;
    let s = SyzygyTriple::new(a, b, c, f.degree())?;
    if s.is_zero() {
        return Err(Error::Validation(format!("{what}: the triple vanishes identically")));
    }
    if !verify_syzygy(f, &s)? {
        return Err(Error::Validation(format!(
            "{what}: the triple is not a syzygy of f, so f is not a function of the pencil"
        )));
    }
    Ok(s)
}

/// The syzygy of degree 2k − 2 given by dq₁ ∧ dq₂, for f a product of
/// members of the pencil.
pub fn wedge_syzygy(p: &PencilSpec, f: &HomogPoly) -> Result<SyzygyTriple> {
    checked(f, cross_grad(&p.q1, &p.q2), "wedge syzygy")
}

/// The syzygy of degree 2k − 2 + deg h for f = (m members)·h, from the
/// 2-form −m·h dq₁∧dq₂ − q₂ dq₁∧dh + q₁ dq₂∧dh. Requires q₁, q₂ and h to
/// have no common zero.
pub fn residual_syzygy(p: &PencilSpec, h: &HomogPoly, m: u32, f: &HomogPoly) -> Result<SyzygyTriple> {
    if h.degree() == 0 {
        return Err(Error::Precondition("h must have positive degree".into()));
    }
    if macaulay_resultant(&p.q1, &p.q2, h)?.is_zero() {
        return Err(Error::Precondition(
            "q1, q2 and h have a common zero, so (q1, q2, h) is not primary to the irrelevant ideal".into(),
        ));
    }
    let field = p.field();
    let w12 = cross_grad(&p.q1, &p.q2);
    let w1h = cross_grad(&p.q1, h);
    let w2h = cross_grad(&p.q2, h);
    let mh = h.scale(&field.int(m as i64));
    let parts: Vec<HomogPoly> = (0..3)
        .map(|i| &(&(&p.q1 * &w2h[i]) - &(&p.q2 * &w1h[i])) - &(&mh * &w12[i]))
        .collect();
    let [a, b, c]: [HomogPoly; 3] = parts.try_into().unwrap();
    checked(f, [a, b, c], "residual syzygy")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};
    use crate::syzygy::is_primitive;

    fn q(s: &str) -> HomogPoly {
        parse_poly(s, Field::Rational).unwrap()
    }

    #[test]
    fn fermat_conics() {
        let p = PencilSpec::fermat(2, Field::Rational);
        let f = q("(x^2 - y^2)*(y^2 - z^2)*(x^2 - z^2)");
        let s = wedge_syzygy(&p, &f).unwrap();
        assert_eq!(s.degree, 2);
        assert!(wedge_syzygy(&p, &q("x^6 + y^6 + z^6")).is_err());
    }

    #[test]
    fn coordinate_residual_case() {
        let p = PencilSpec::parse("x", "y", Field::Rational).unwrap();
        let s = residual_syzygy(&p, &q("z"), 2, &q("x*y*z")).unwrap();
        assert_eq!(s.degree, 1);
        assert!(is_primitive(&s));
        assert!(residual_syzygy(&p, &q("x + y"), 2, &q("x*y*(x + y)")).is_err());
    }
}
