//! Line arrangements in the projective plane: lines as covectors, the
//! intersection lattice, the multiple-point syzygy and related checks.

mod checks;
mod cone;
mod iso;
mod lattice;
mod point_syzygy;

pub use checks::{
    exponent_gap_check, faenzi_valles_check, multiplicity_bound_check, trichotomy, BoundCheck,
    FvVerdict, TrichotomyCase, TrichotomyReport,
};
pub(crate) use checks::{bound_check_from, trichotomy_from};
pub use cone::{cone_construction, ConeConstruction};
pub use iso::{lattice_isomorphic, ISO_MAX_LINES};
pub use lattice::{lattice, tau_combinatorial, IntersectionLattice, LatticePoint};
pub use point_syzygy::point_syzygy;
pub(crate) use point_syzygy::frame;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::scalar::parse_rational;
use crate::algebra::{Field, HomogPoly, Scalar};
use crate::error::{Error, Result};

/// Scales a nonzero triple so that its first nonzero entry is 1.
fn normalize(v: &[Scalar; 3]) -> Option<[Scalar; 3]> {
    let lead = v.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv()?;
    Some(std::array::from_fn(|i| &v[i] * &inv))
}

fn fmt_triple(v: &[Scalar; 3], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "({}:{}:{})", v[0], v[1], v[2])
}

/// A point of P², normalized so its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Scalar; 3],
}

impl ProjPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        normalize(&coords)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| Error::Precondition("(0:0:0) is not a projective point".into()))
    }

    pub fn from_i64(field: Field, v: [i64; 3]) -> Result<Self> {
        ProjPoint::new(v.map(|c| field.int(c)))
    }

    pub fn coords(&self) -> &[Scalar; 3] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// The line through two distinct points.
    pub fn join(&self, other: &ProjPoint) -> Result<ProjLine> {
        ProjLine::new(cross(&self.coords, &other.coords))
            .map_err(|_| Error::Precondition(format!("{self} and {other} coincide")))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.coords, f)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A line αx + βy + γz = 0, stored as its normalized covector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLine {
    covector: [Scalar; 3],
}

impl ProjLine {
    pub fn new(covector: [Scalar; 3]) -> Result<Self> {
        normalize(&covector)
            .map(|covector| ProjLine { covector })
            .ok_or_else(|| Error::Precondition("zero covector does not define a line".into()))
    }

    pub fn from_i64(field: Field, v: [i64; 3]) -> Result<Self> {
        ProjLine::new(v.map(|c| field.int(c)))
    }

    pub fn covector(&self) -> &[Scalar; 3] {
        &self.covector
    }

    pub fn field(&self) -> Field {
        self.covector[0].field()
    }

    pub fn form(&self) -> HomogPoly {
        HomogPoly::linear(&self.covector)
    }

    pub fn eval(&self, p: &ProjPoint) -> Scalar {
        let field = self.field();
        (0..3).fold(field.zero(), |acc, i| &acc + &(&self.covector[i] * &p.coords[i]))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    /// Intersection point with another, distinct, line.
    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint> {
        ProjPoint::new(cross(&self.covector, &other.covector))
            .map_err(|_| Error::DuplicateLine(self.to_string()))
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.form())
    }
}

impl Serialize for ProjLine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

pub fn cross(u: &[Scalar; 3], v: &[Scalar; 3]) -> [Scalar; 3] {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

/// Pairwise distinct lines over one field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineArrangement {
    #[serde(skip)]
    field: Field,
    lines: Vec<ProjLine>,
}

impl LineArrangement {
    pub fn new(field: Field, lines: Vec<ProjLine>) -> Result<Self> {
        for (i, l) in lines.iter().enumerate() {
            field.check_same(l.field())?;
            if lines[..i].contains(l) {
                return Err(Error::DuplicateLine(l.to_string()));
            }
        }
        Ok(LineArrangement { field, lines })
    }

    pub fn from_i64(field: Field, lines: &[[i64; 3]]) -> Result<Self> {
        let lines = lines
            .iter()
            .map(|&v| ProjLine::from_i64(field, v))
            .collect::<Result<_>>()?;
        LineArrangement::new(field, lines)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lines(&self) -> &[ProjLine] {
        &self.lines
    }

    pub fn degree(&self) -> u32 {
        self.lines.len() as u32
    }

    /// f = product of the linear forms.
    pub fn polynomial(&self) -> HomogPoly {
        let forms: Vec<HomogPoly> = self.lines.iter().map(ProjLine::form).collect();
        HomogPoly::product(self.field, forms.iter())
    }

    /// Parses one line per text line, three rationals each; `#` starts a
    /// comment.
    pub fn parse(text: &str, field: Field) -> Result<Self> {
        let mut lines = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let parts: Vec<&str> = content.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(Error::Parse {
                    position: n + 1,
                    message: format!("line {}: expected three coefficients, found {}", n + 1, parts.len()),
                });
            }
            let mut cov = Vec::with_capacity(3);
            for part in parts {
                let q = parse_rational(part).ok_or_else(|| Error::Parse {
                    position: n + 1,
                    message: format!("line {}: `{part}` is not a rational number", n + 1),
                })?;
                cov.push(Scalar::from_rational(field, &q)?);
            }
            lines.push(ProjLine::new([cov[0].clone(), cov[1].clone(), cov[2].clone()])?);
        }
        LineArrangement::new(field, lines)
    }

    /// The text format read by [`LineArrangement::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let c = l.covector();
            out.push_str(&format!("{} {} {}\n", c[0], c[1], c[2]));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn lines_are_normalized() {
        let q = Field::Rational;
        let a = ProjLine::from_i64(q, [0, -2, 4]).unwrap();
        let b = ProjLine::from_i64(q, [0, 1, -2]).unwrap();
        assert_eq!(a, b);
        assert!(ProjLine::from_i64(q, [0, 0, 0]).is_err());
        assert!(LineArrangement::new(q, vec![a, b]).is_err());
    }

    #[test]
    fn arrangement_text_round_trip() {
        let text = "# ex1\n1 0 0\n0 1 0\n0 0 1\n1 0 -1\n1 0 1   # x + z\n1 -1 0\n";
        let a = LineArrangement::parse(text, Field::Rational).unwrap();
        assert_eq!(a.degree(), 6);
        assert_eq!(
            a.polynomial(),
            parse_poly("x*y*z*(x-z)*(x+z)*(x-y)", Field::Rational).unwrap()
        );
        assert_eq!(LineArrangement::parse(&a.to_text(), Field::Rational).unwrap(), a);
        assert!(LineArrangement::parse("1 2\n", Field::Rational).is_err());
        assert!(LineArrangement::parse("1 2 z\n", Field::Rational).is_err());
    }

    #[test]
    fn meet_and_join() {
        let q = Field::Rational;
        let x = ProjLine::from_i64(q, [1, 0, 0]).unwrap();
        let y = ProjLine::from_i64(q, [0, 1, 0]).unwrap();
        let p = x.meet(&y).unwrap();
        assert_eq!(p, ProjPoint::from_i64(q, [0, 0, 1]).unwrap());
        let r = ProjPoint::from_i64(q, [1, 1, 1]).unwrap();
        let l = p.join(&r).unwrap();
        assert!(l.contains(&p) && l.contains(&r));
        assert_eq!(l.to_string(), "x - y");
    }
}
