//! Jacobian syzygies: the graded pieces AR(f)_r, the invariant mdr(f) and
//! certificate checking.

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::algebra::backend::{mult_map_matrix, mult_map_rank, Backend};
use crate::algebra::{homog_gcd, monomial, parse_poly, Field, HomogPoly};
use crate::error::{Error, Result};

/// A triple (a, b, c) of forms of degree r with a·f_x + b·f_y + c·f_z = 0
/// for the curve f it was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyTriple {
    pub degree: u32,
    pub a: HomogPoly,
    pub b: HomogPoly,
    pub c: HomogPoly,
    /// Degree of the curve the relation belongs to.
    pub f_degree: u32,
}

/// Canonical JSON shape of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub degree: u32,
    pub a: String,
    pub b: String,
    pub c: String,
}

impl SyzygyTriple {
    pub fn new(a: HomogPoly, b: HomogPoly, c: HomogPoly, f_degree: u32) -> Result<Self> {
        let degs: Vec<u32> = [&a, &b, &c]
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| p.degree())
            .collect();
        let degree = match degs.first() {
            Some(&d) => d,
            None => a.degree(),
        };
        if degs.iter().any(|&d| d != degree) {
            return Err(Error::DegreeMismatch(format!(
                "syzygy components have degrees {degs:?}"
            )));
        }
        let fix = |p: HomogPoly| {
            if p.is_zero() {
                HomogPoly::zero(p.field(), degree)
            } else {
                p
            }
        };
        Ok(SyzygyTriple {
            degree,
            a: fix(a),
            b: fix(b),
            c: fix(c),
            f_degree,
        })
    }

    /// The Koszul relation (f_y, −f_x, 0).
    pub fn koszul(f: &HomogPoly) -> Self {
        let [fx, fy, _] = f.gradient();
        SyzygyTriple::new(fy, -&fx, HomogPoly::zero(f.field(), f.degree() - 1), f.degree())
            .expect("Koszul components share a degree")
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn components(&self) -> [&HomogPoly; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Multiplies every component by the same form.
    pub fn scale_by(&self, g: &HomogPoly) -> SyzygyTriple {
        SyzygyTriple {
            degree: self.degree + g.degree(),
            a: &self.a * g,
            b: &self.b * g,
            c: &self.c * g,
            f_degree: self.f_degree,
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            degree: self.degree,
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
        }
    }

    pub fn from_json(json: &CertificateJson, field: Field, f_degree: u32) -> Result<Self> {
        let parse = |text: &str| -> Result<HomogPoly> {
            let p = parse_poly(text, field)?;
            Ok(if p.is_zero() {
                HomogPoly::zero(field, json.degree)
            } else {
                p
            })
        };
        let s = SyzygyTriple::new(parse(&json.a)?, parse(&json.b)?, parse(&json.c)?, f_degree)?;
        if s.degree != json.degree {
            return Err(Error::DegreeMismatch(format!(
                "certificate declares degree {} but components have degree {}",
                json.degree, s.degree
            )));
        }
        Ok(s)
    }
}

impl Serialize for SyzygyTriple {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Recomputes a·f_x + b·f_y + c·f_z from scratch. A zero triple is not a
/// certificate and is rejected.
pub fn verify_syzygy(f: &HomogPoly, s: &SyzygyTriple) -> Result<bool> {
    for comp in s.components() {
        if !comp.is_zero() && comp.degree() != s.degree {
            return Err(Error::DegreeMismatch(format!(
                "component of degree {} in a degree-{} triple",
                comp.degree(),
                s.degree
            )));
        }
        f.field().check_same(comp.field())?;
    }
    if s.is_zero() {
        return Ok(false);
    }
    let [fx, fy, fz] = f.gradient();
    let total = (&s.a * &fx).try_add(&(&s.b * &fy))?.try_add(&(&s.c * &fz))?;
    Ok(total.is_zero())
}

/// True iff gcd(a, b, c) is a nonzero constant.
pub fn is_primitive(s: &SyzygyTriple) -> bool {
    let g = homog_gcd(&s.a, &homog_gcd(&s.b, &s.c));
    !g.is_zero() && g.degree() == 0
}

/// A basis of AR(f)_r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ARSlice {
    pub degree: u32,
    pub basis: Vec<SyzygyTriple>,
}

impl ARSlice {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// AR(f)_r as the kernel of S_r³ → S_{r+d−1}. The basis is the reduced
/// echelon form of the kernel with coordinates ordered (a, b, c) and each
/// block in descending graded-lex order; every element is re-verified.
pub fn ar_slice(f: &HomogPoly, r: u32) -> Result<ARSlice> {
    let d = f.degree();
    if d == 0 {
        return Err(Error::Precondition("curve of degree 0".into()));
    }
    let grad = f.gradient();
    let m = mult_map_matrix(&grad, r + d - 1);
    let n = monomial::dim(r);
    let field = f.field();
    let mut basis = Vec::new();
    for v in m.canonical_kernel() {
        let a = HomogPoly::from_coefficients(field, r, &v[..n]);
        let b = HomogPoly::from_coefficients(field, r, &v[n..2 * n]);
        let c = HomogPoly::from_coefficients(field, r, &v[2 * n..]);
        let s = SyzygyTriple::new(a, b, c, d)?;
        if !verify_syzygy(f, &s)? {
            return Err(Error::Inconsistency(format!(
                "kernel vector in degree {r} fails re-verification"
            )));
        }
        basis.push(s);
    }
    Ok(ARSlice { degree: r, basis })
}

/// dim AR(f)_r from a rank computation with the given backend. Never smaller
/// than the true dimension for a modular backend (modular ranks can only
/// drop), so a zero here is a proof that AR(f)_r = 0.
pub fn ar_dimension(f: &HomogPoly, r: u32, backend: &Backend) -> Result<usize> {
    let d = f.degree();
    let grad = f.gradient();
    let rank = mult_map_rank(&grad, r + d - 1, backend)?;
    Ok(3 * monomial::dim(r) - rank)
}

/// Result of the mdr search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MdrResult {
    pub mdr: u32,
    /// The first piece AR(f)_mdr, computed exactly.
    pub slice: ARSlice,
    /// f_z ≡ 0 after a linear change, i.e. (0, 0, 1)-type relation in degree 0.
    pub cone: bool,
    pub reduced: bool,
}

impl MdrResult {
    /// The canonical minimal-degree certificate (first basis element).
    pub fn certificate(&self) -> &SyzygyTriple {
        &self.slice.basis[0]
    }
}

/// Checks reducedness and logs a warning if f is not reduced.
pub fn check_reduced(f: &HomogPoly) -> bool {
    let reduced = f.is_square_free();
    if !reduced {
        warn!("input curve of degree {} is not reduced; results describe the non-reduced scheme", f.degree());
    }
    reduced
}

/// Smallest r with AR(f)_r ≠ 0, scanning r = 0, 1, … . Vanishing below mdr
/// is established by full rank modulo the backend primes (which implies full
/// rank over Q); the slice at mdr is computed exactly.
pub fn mdr(f: &HomogPoly, backend: &Backend) -> Result<MdrResult> {
    let d = f.degree();
    if d == 0 {
        return Err(Error::Precondition("mdr needs a curve of degree at least 1".into()));
    }
    let reduced = check_reduced(f);
    for r in 0..d {
        let dim = ar_dimension(f, r, backend)?;
        debug!("dim AR(f)_{r} = {dim} (backend)");
        if dim == 0 {
            continue;
        }
        let slice = ar_slice(f, r)?;
        if slice.dimension() != dim {
            return Err(Error::Inconsistency(format!(
                "AR(f)_{r}: backend dimension {dim} but exact dimension {}",
                slice.dimension()
            )));
        }
        return Ok(MdrResult {
            mdr: r,
            slice,
            cone: r == 0,
            reduced,
        });
    }
    Err(Error::Inconsistency(format!(
        "no syzygy found up to degree {} although the Koszul relation lives there",
        d - 1
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn q(s: &str) -> HomogPoly {
        parse_poly(s, Field::Rational).unwrap()
    }

    #[test]
    fn cone_has_constant_syzygy() {
        let f = q("x^5 - y^5");
        let s = ar_slice(&f, 0).unwrap();
        assert_eq!(s.dimension(), 1);
        assert_eq!(s.basis[0].c, q("1"));
        assert!(s.basis[0].a.is_zero() && s.basis[0].b.is_zero());
        let m = mdr(&f, &Backend::default()).unwrap();
        assert!(m.cone);
        assert_eq!(m.mdr, 0);
    }

    #[test]
    fn smooth_quartic_has_no_quadratic_syzygy() {
        let f = q("x^4 + y^4 + z^4");
        assert_eq!(ar_slice(&f, 2).unwrap().dimension(), 0);
        assert_eq!(mdr(&f, &Backend::Exact).unwrap().mdr, 3);
    }

    #[test]
    fn xyz_has_linear_relation() {
        let f = q("x*y*z");
        assert_eq!(ar_slice(&f, 0).unwrap().dimension(), 0);
        let s = ar_slice(&f, 1).unwrap();
        // (x, -y, 0), (x, 0, -z) and (0, y, -z) span AR(f)_1, of dimension 2.
        assert_eq!(s.dimension(), 2);
        let m = mdr(&f, &Backend::default()).unwrap();
        assert_eq!(m.mdr, 1);
        assert!(!m.cone);
    }

    #[test]
    fn koszul_verifies_and_constant_triple_does_not() {
        let f = q("x^4 + y^4 + z^4");
        assert!(verify_syzygy(&f, &SyzygyTriple::koszul(&f)).unwrap());
        let one = SyzygyTriple::new(
            HomogPoly::zero(Field::Rational, 0),
            HomogPoly::zero(Field::Rational, 0),
            q("1"),
            4,
        )
        .unwrap();
        assert!(!verify_syzygy(&f, &one).unwrap());
    }

    #[test]
    fn mismatched_degrees_are_rejected() {
        assert!(SyzygyTriple::new(q("x"), q("y^2"), q("0"), 3).is_err());
    }

    #[test]
    fn primitivity() {
        let s = SyzygyTriple::new(q("x"), q("-y"), q("0"), 3).unwrap();
        assert!(is_primitive(&s));
        let t = s.scale_by(&q("x"));
        assert!(verify_syzygy(&q("x*y*z"), &t).unwrap());
        assert!(!is_primitive(&t));
    }

    #[test]
    fn json_round_trip() {
        let f = q("x*y*z*(x-z)*(x+z)*(x-y)");
        let m = mdr(&f, &Backend::default()).unwrap();
        let cert = m.certificate();
        let text = serde_json::to_string(cert).unwrap();
        let back: CertificateJson = serde_json::from_str(&text).unwrap();
        let reloaded = SyzygyTriple::from_json(&back, Field::Rational, 6).unwrap();
        assert_eq!(&reloaded, cert);
        assert!(verify_syzygy(&f, &reloaded).unwrap());
    }
}
