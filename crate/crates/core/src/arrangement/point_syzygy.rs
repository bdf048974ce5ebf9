use super::{LineArrangement, ProjPoint};
use crate::algebra::{HomogPoly, Monomial, Scalar, Var};
use crate::error::{Error, Result};
use crate::syzygy::{verify_syzygy, SyzygyTriple};

/// Columns (p, e_j, e_k) where p_i = 1 is the first nonzero coordinate and
/// j < k are the other two indices. Sends (1:0:0) to p and has det ±1.
pub(crate) fn frame(p: &ProjPoint) -> ([[Scalar; 3]; 3], [[Scalar; 3]; 3]) {
    let c = p.coords();
    let field = p.field();
    let i = c.iter().position(|v| !v.is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&t| t != i).collect();
    let mut m: [[Scalar; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| field.zero()));
    let mut inv = m.clone();
    for r in 0..3 {
        m[r][0] = c[r].clone();
    }
    m[others[0]][1] = field.one();
    m[others[1]][2] = field.one();
    // x₁ = y_i, x₂ = y_j − p_j·y_i, x₃ = y_k − p_k·y_i
    inv[0][i] = field.one();
    for (row, &t) in [1usize, 2].iter().zip(&others) {
        inv[*row][t] = field.one();
        inv[*row][i] = -&c[t];
    }
    (m, inv)
}

/// The syzygy of degree d − m attached to a point p of multiplicity m.
///
/// After moving p to (1:0:0), the lines through p lose their x-term and the
/// others keep x-coefficient a_L = L(p). With h the product of the lines
/// avoiding p and P = h·Σ a_L/L, Euler's identity gives
/// (xP − d·h, yP, zP) as a relation among the partials; it is then moved back.
pub fn point_syzygy(a: &LineArrangement, p: &ProjPoint) -> Result<SyzygyTriple> {
    let field = a.field();
    field.check_same(p.field())?;
    let through = a.lines().iter().filter(|l| l.contains(p)).count();
    if through < 2 {
        return Err(Error::NotALatticePoint(p.to_string()));
    }
    let d = a.degree();
    let (m, inv) = frame(p);
    let moved: Vec<HomogPoly> = a
        .lines()
        .iter()
        .filter(|l| !l.contains(p))
        .map(|l| l.form().substitute_linear(&m))
        .collect();
    let h = HomogPoly::product(field, moved.iter());
    let mut big_p = HomogPoly::zero(field, h.degree().saturating_sub(1));
    for (idx, l) in moved.iter().enumerate() {
        let a_l = l.coeff(&Monomial::new(1, 0, 0));
        let rest = HomogPoly::product(
            field,
            moved.iter().enumerate().filter(|&(t, _)| t != idx).map(|(_, q)| q),
        );
        big_p = &big_p + &rest.scale(&a_l);
    }
    let dh = h.scale(&field.int(d as i64));
    // For a pencil P is empty and the relation is (−d, 0, 0).
    let times_p = |v: Var| {
        if moved.is_empty() {
            HomogPoly::zero(field, 0)
        } else {
            &HomogPoly::var(field, v) * &big_p
        }
    };
    let local = [&times_p(Var::X) - &dh, times_p(Var::Y), times_p(Var::Z)];
    let pulled: Vec<HomogPoly> = local.iter().map(|c| c.substitute_linear(&inv)).collect();
    let comps: Vec<HomogPoly> = (0..3)
        .map(|r| {
            (0..3).fold(HomogPoly::zero(field, d - through as u32), |acc, j| {
                &acc + &pulled[j].scale(&m[r][j])
            })
        })
        .collect();
    let [c0, c1, c2]: [HomogPoly; 3] = comps.try_into().unwrap();
    let s = SyzygyTriple::new(c0, c1, c2, d)?;
    if s.degree != d - through as u32 || !verify_syzygy(&a.polynomial(), &s)? {
        return Err(Error::Inconsistency(format!(
            "point syzygy at {p} fails verification"
        )));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::arrangement::lattice;

    #[test]
    fn frame_is_inverse_pair() {
        let q = Field::Rational;
        let p = ProjPoint::from_i64(q, [0, 3, -2]).unwrap();
        let (m, inv) = frame(&p);
        for i in 0..3 {
            for j in 0..3 {
                let e = (0..3).fold(q.zero(), |acc, k| &acc + &(&m[i][k] * &inv[k][j]));
                assert_eq!(e, q.int((i == j) as i64));
            }
        }
    }

    #[test]
    fn every_lattice_point_gives_a_verified_triple() {
        let q = Field::Rational;
        let a = LineArrangement::from_i64(
            q,
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, -1], [1, 0, 1], [1, -1, 0], [2, 3, 5]],
        )
        .unwrap();
        for pt in lattice(&a).unwrap().points {
            let s = point_syzygy(&a, &pt.point).unwrap();
            assert_eq!(s.degree as usize, 7 - pt.multiplicity);
        }
        let pencil = LineArrangement::from_i64(q, &[[1, 0, -1], [0, 1, -1], [1, 1, -2]]).unwrap();
        let apex = ProjPoint::from_i64(q, [1, 1, 1]).unwrap();
        assert_eq!(point_syzygy(&pencil, &apex).unwrap().degree, 0);
        let off = ProjPoint::from_i64(q, [1, 7, 11]).unwrap();
        assert!(matches!(point_syzygy(&a, &off), Err(Error::NotALatticePoint(_))));
    }
}
