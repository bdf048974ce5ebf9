use std::collections::HashMap;

use serde::Serialize;

use super::{LineArrangement, ProjPoint};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub point: ProjPoint,
    pub multiplicity: usize,
    /// Indices into the arrangement's line list, ascending.
    pub lines: Vec<usize>,
}

/// The multiple points of an arrangement. Points appear in the order they
/// are first met when scanning pairs (i, j) with i < j lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionLattice {
    pub num_lines: usize,
    pub points: Vec<LatticePoint>,
}

impl IntersectionLattice {
    /// m(A); 0 for fewer than two lines.
    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).max().unwrap_or(0)
    }

    pub fn find(&self, p: &ProjPoint) -> Option<&LatticePoint> {
        self.points.iter().find(|q| &q.point == p)
    }

    /// A point of maximal multiplicity (the first one in lattice order).
    pub fn max_point(&self) -> Option<&LatticePoint> {
        let m = self.max_multiplicity();
        self.points.iter().find(|q| q.multiplicity == m)
    }

    /// Multiplicities in descending order.
    pub fn multiplicity_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.points.iter().map(|p| p.multiplicity).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Number of points of each multiplicity, keyed by multiplicity.
    pub fn counts(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut out = std::collections::BTreeMap::new();
        for p in &self.points {
            *out.entry(p.multiplicity).or_insert(0) += 1;
        }
        out
    }

    /// Σ_p C(m_p, 2), which equals C(d, 2) for any arrangement.
    pub fn pair_count(&self) -> usize {
        self.points
            .iter()
            .map(|p| p.multiplicity * (p.multiplicity - 1) / 2)
            .sum()
    }
}

pub fn lattice(a: &LineArrangement) -> Result<IntersectionLattice> {
    let lines = a.lines();
    let mut index: HashMap<ProjPoint, usize> = HashMap::new();
    let mut points: Vec<LatticePoint> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let p = lines[i].meet(&lines[j])?;
            let k = *index.entry(p.clone()).or_insert_with(|| {
                points.push(LatticePoint {
                    point: p,
                    multiplicity: 0,
                    lines: Vec::new(),
                });
                points.len() - 1
            });
            let entry = &mut points[k];
            for l in [i, j] {
                if !entry.lines.contains(&l) {
                    entry.lines.push(l);
                }
            }
        }
    }
    for p in &mut points {
        p.lines.sort_unstable();
        p.multiplicity = p.lines.len();
    }
    let lat = IntersectionLattice {
        num_lines: lines.len(),
        points,
    };
    let d = lines.len();
    if lat.pair_count() != d * (d.saturating_sub(1)) / 2 {
        return Err(Error::Inconsistency("pair count of the lattice is off".into()));
    }
    Ok(lat)
}

/// Σ_p (m_p − 1)²: every multiple point of a line arrangement is an ordinary
/// m-fold point, whose Tjurina number is (m − 1)².
pub fn tau_combinatorial(lat: &IntersectionLattice) -> u64 {
    lat.points
        .iter()
        .map(|p| ((p.multiplicity - 1) * (p.multiplicity - 1)) as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    #[test]
    fn triangle() {
        let a = LineArrangement::from_i64(Field::Rational, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let lat = lattice(&a).unwrap();
        assert_eq!(lat.multiplicity_profile(), vec![2, 2, 2]);
        assert_eq!(tau_combinatorial(&lat), 3);
        assert_eq!(lat.points[0].point, ProjPoint::from_i64(Field::Rational, [0, 0, 1]).unwrap());
    }

    #[test]
    fn pencil_is_one_point() {
        let a = LineArrangement::from_i64(Field::Rational, &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0]]).unwrap();
        let lat = lattice(&a).unwrap();
        assert_eq!(lat.points.len(), 1);
        assert_eq!(lat.points[0].lines, vec![0, 1, 2, 3]);
        assert_eq!(tau_combinatorial(&lat), 9);
    }
}
