use serde::Serialize;

use super::{lattice, LineArrangement, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::tjurina::Classification;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeConstruction {
    pub arrangement: LineArrangement,
    pub apex: ProjPoint,
    /// |A|.
    pub e: u32,
    /// Number of lines added through the apex, after removing repeats.
    pub added: u32,
    pub expected_tau: i64,
    /// {e, m − 1} in ascending order.
    pub expected_exponents: (u32, u32),
    pub expected_class: Classification,
}

/// B(A, p): A together with the lines joining p to every multiple point of
/// A. A line through p and several multiple points is added once.
pub fn cone_construction(a: &LineArrangement, p: &ProjPoint) -> Result<ConeConstruction> {
    a.field().check_same(p.field())?;
    if let Some(l) = a.lines().iter().find(|l| l.contains(p)) {
        return Err(Error::PointOnArrangement(format!("{p} lies on {l}")));
    }
    let lat = lattice(a)?;
    if lat.points.is_empty() {
        return Err(Error::Precondition("the arrangement has no multiple point".into()));
    }
    let mut lines: Vec<ProjLine> = a.lines().to_vec();
    let mut added = 0u32;
    for q in &lat.points {
        let l = p.join(&q.point)?;
        if !lines.contains(&l) {
            lines.push(l);
            added += 1;
        }
    }
    let e = a.degree();
    let d = e + added;
    let expected_tau = ((d - 1) * (d - 1)) as i64 - (e * (added - 1)) as i64;
    let lo = e.min(added - 1);
    Ok(ConeConstruction {
        arrangement: LineArrangement::new(a.field(), lines)?,
        apex: p.clone(),
        e,
        added,
        expected_tau,
        expected_exponents: (lo, e + added - 1 - lo),
        expected_class: if added == 1 {
            Classification::Cone
        } else {
            Classification::Free
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn triangle_with_generic_apex() {
        let q = Field::Rational;
        let a = LineArrangement::from_i64(q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let on = ProjPoint::from_i64(q, [1, 2, 0]).unwrap();
        assert!(matches!(cone_construction(&a, &on), Err(Error::PointOnArrangement(_))));
        let b = cone_construction(&a, &ProjPoint::from_i64(q, [1, 1, 1]).unwrap()).unwrap();
        assert_eq!(b.added, 3);
        assert_eq!(b.expected_tau, 19);
        assert_eq!(b.expected_exponents, (2, 3));
    }

    #[test]
    fn collinear_multiple_points_share_an_added_line() {
        let q = Field::Rational;
        // (0:0:1) and (1:-1:0) are multiple points of A and the apex lies on
        // the line x + y joining them.
        let a = LineArrangement::from_i64(q, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]).unwrap();
        let b = cone_construction(&a, &ProjPoint::from_i64(q, [1, -1, 2]).unwrap()).unwrap();
        assert_eq!(b.added, 5);
        assert_eq!(b.arrangement.degree(), 9);
        assert_eq!(b.expected_tau, 48);
        assert_eq!(b.expected_exponents, (4, 4));
        assert!(b.arrangement.polynomial().is_square_free());
    }
}
