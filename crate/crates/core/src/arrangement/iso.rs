use super::{lattice, IntersectionLattice, LineArrangement};
use crate::error::{Error, Result};

/// Beyond this many lines the search refuses instead of running for hours.
pub const ISO_MAX_LINES: usize = 20;

struct Side {
    /// meet[i][j] = index of the lattice point on lines i and j.
    meet: Vec<Vec<usize>>,
    mult: Vec<usize>,
    /// Sorted multiplicities of the points on each line.
    profile: Vec<Vec<usize>>,
}

impl Side {
    fn new(lat: &IntersectionLattice) -> Side {
        let n = lat.num_lines;
        let mut meet = vec![vec![usize::MAX; n]; n];
        let mut profile = vec![Vec::new(); n];
        for (k, p) in lat.points.iter().enumerate() {
            for &i in &p.lines {
                profile[i].push(p.multiplicity);
                for &j in &p.lines {
                    meet[i][j] = k;
                }
            }
        }
        for pr in &mut profile {
            pr.sort_unstable();
        }
        Side {
            meet,
            mult: lat.points.iter().map(|p| p.multiplicity).collect(),
            profile,
        }
    }
}

struct Search<'a> {
    a: &'a Side,
    b: &'a Side,
    sigma: Vec<usize>,
    used: Vec<bool>,
    fwd: Vec<Option<usize>>,
    back: Vec<Option<usize>>,
}

impl Search<'_> {
    fn extend(&mut self, i: usize) -> bool {
        let n = self.a.meet.len();
        if i == n {
            return true;
        }
        for c in 0..n {
            if self.used[c] || self.a.profile[i] != self.b.profile[c] {
                continue;
            }
            let mut touched = Vec::new();
            let mut ok = true;
            for j in 0..i {
                let (pa, pb) = (self.a.meet[i][j], self.b.meet[c][self.sigma[j]]);
                if self.a.mult[pa] != self.b.mult[pb] {
                    ok = false;
                    break;
                }
                match (self.fwd[pa], self.back[pb]) {
                    (None, None) => {
                        self.fwd[pa] = Some(pb);
                        self.back[pb] = Some(pa);
                        touched.push((pa, pb));
                    }
                    (Some(x), Some(y)) if x == pb && y == pa => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                self.sigma.push(c);
                self.used[c] = true;
                if self.extend(i + 1) {
                    return true;
                }
                self.sigma.pop();
                self.used[c] = false;
            }
            for (pa, pb) in touched {
                self.fwd[pa] = None;
                self.back[pb] = None;
            }
        }
        false
    }
}

/// Whether some bijection of lines carries the multiple points of A onto
/// those of B, preserving incidence. Exact backtracking over line bijections,
/// pruned by the multiplicities met along each line.
pub fn lattice_isomorphic(a: &LineArrangement, b: &LineArrangement) -> Result<bool> {
    let n = a.lines().len();
    if n > ISO_MAX_LINES || b.lines().len() > ISO_MAX_LINES {
        return Err(Error::TooLarge(format!(
            "lattice isomorphism is limited to {ISO_MAX_LINES} lines"
        )));
    }
    if n != b.lines().len() {
        return Ok(false);
    }
    let (la, lb) = (lattice(a)?, lattice(b)?);
    if la.multiplicity_profile() != lb.multiplicity_profile() {
        return Ok(false);
    }
    let (sa, sb) = (Side::new(&la), Side::new(&lb));
    let mut pa = sa.profile.clone();
    let mut pb = sb.profile.clone();
    pa.sort();
    pb.sort();
    if pa != pb {
        return Ok(false);
    }
    let mut search = Search {
        a: &sa,
        b: &sb,
        sigma: Vec::with_capacity(n),
        used: vec![false; n],
        fwd: vec![None; la.points.len()],
        back: vec![None; lb.points.len()],
    };
    Ok(search.extend(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn arr(v: &[[i64; 3]]) -> LineArrangement {
        LineArrangement::from_i64(Field::Rational, v).unwrap()
    }

    #[test]
    fn triangle_is_not_a_pencil() {
        let t = arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let p = arr(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        assert!(!lattice_isomorphic(&t, &p).unwrap());
        assert!(lattice_isomorphic(&t, &t).unwrap());
    }

    #[test]
    fn equal_counts_but_different_incidence() {
        // Two triple points sharing a line versus two disjoint triple points.
        let shared = arr(&[[1, 0, 0], [1, -1, 0], [0, 1, 0], [0, 0, 1], [0, 1, -1], [1, 2, 3]]);
        let apart = arr(&[[1, 0, 0], [0, 1, 0], [1, -1, 0], [3, 0, -1], [0, 3, -2], [1, 1, -1]]);
        assert_eq!(lattice(&shared).unwrap().counts(), lattice(&apart).unwrap().counts());
        assert!(!lattice_isomorphic(&shared, &apart).unwrap());
        let relabeled = arr(&[[0, 0, 1], [1, 2, 3], [0, 1, 0], [1, 0, 0], [0, 1, -1], [1, -1, 0]]);
        assert!(lattice_isomorphic(&shared, &relabeled).unwrap());
    }

    #[test]
    fn refuses_large_inputs() {
        let lines: Vec<[i64; 3]> = (1..=21).map(|i| [1, i, i * i]).collect();
        let a = arr(&lines);
        assert!(matches!(lattice_isomorphic(&a, &a), Err(Error::TooLarge(_))));
    }
}
