use serde::Serialize;

use super::{
    build_product, discriminant, genericity_check, macaulay_resultant, singular_members,
    PencilProductSpec, SingularMemberRecord,
};
use crate::algebra::{homog_gcd, Backend};
use crate::error::{Error, Result};
use crate::syzygy::mdr;
use crate::tjurina::{classify, freeness_gate, global_tjurina, Classification, GateVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilFreeness {
    pub k: u32,
    pub m: u32,
    pub d: u32,
    pub sum_mu: usize,
    /// Every singular member of the pencil is a factor of f.
    pub members_included: bool,
    /// Σ τ over singular members equals Σ μ, so every singularity of every
    /// singular member is weighted homogeneous.
    pub tau_equals_mu: bool,
    pub condition: bool,
    pub tau_members: Option<usize>,
    pub expected_exponents: (u32, u32),
    pub tau_target: usize,
    pub class: Classification,
    pub exponents: Option<(u32, u32)>,
    pub mdr: u32,
    pub tau: usize,
    pub singular_members: Vec<SingularMemberRecord>,
}

/// For a generic pencil and f a product of m ≥ 3 members: f is free with
/// exponents (2k − 2, mk − 2k + 1) exactly when all singular members are
/// factors of f and all their singularities are weighted homogeneous. Both
/// sides are computed independently; disagreement is an inconsistency.
pub fn generic_pencil_freeness(spec: &PencilProductSpec, backend: &Backend) -> Result<PencilFreeness> {
    let (k, m) = (spec.k(), spec.m());
    if spec.h.is_some() {
        return Err(Error::Precondition("the criterion applies to products of members only".into()));
    }
    if k < 2 || m < 3 {
        return Err(Error::Precondition(format!("need k >= 2 and m >= 3, got k = {k}, m = {m}")));
    }
    if !genericity_check(&spec.pencil)?.generic() {
        return Err(Error::Precondition(
            "the pencil is not generic: its base locus is not k^2 transverse points".into(),
        ));
    }
    let disc = discriminant(&spec.pencil)?;
    let members = singular_members(&spec.pencil, &disc, backend)?;
    let params = spec.finite_parameters();
    let members_included = disc.records.iter().all(|r| match &r.factor {
        None => spec.base[1],
        Some(g) => params.rem(g).is_zero(),
    });
    let tau_members: Option<usize> = members
        .iter()
        .map(|r| r.tau.map(|t| t * r.count))
        .sum();
    let tau_equals_mu = tau_members == Some(disc.sum_mu());
    let condition = members_included && tau_equals_mu;

    let f = build_product(spec)?;
    let d = f.degree();
    let report = classify(&f, backend)?;
    let expected_exponents = (2 * k - 2, m * k - 2 * k + 1);
    let tau_target = (3 * (k - 1) * (k - 1) + k * k * (m - 1) * (m - 1)) as usize;
    let free_with = report.class == Classification::Free && report.exponents == Some(expected_exponents);
    if condition != free_with {
        return Err(Error::Inconsistency(format!(
            "singular-member condition is {condition} but f is {} with exponents {:?}",
            report.class, report.exponents
        )));
    }
    if condition && report.tau != tau_target {
        return Err(Error::Inconsistency(format!(
            "free pencil product has tau = {} instead of {tau_target}",
            report.tau
        )));
    }
    Ok(PencilFreeness {
        k,
        m,
        d,
        sum_mu: disc.sum_mu(),
        members_included,
        tau_equals_mu,
        condition,
        tau_members,
        expected_exponents,
        tau_target,
        class: report.class,
        exponents: report.exponents,
        mdr: report.mdr,
        tau: report.tau,
        singular_members: members,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PencilCase {
    /// mdr equals the degree of the explicit syzygy (2k − 2 + deg h).
    Explicit,
    /// The low free case.
    FreeLow,
    /// mdr strictly between.
    Middle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilTrichotomy {
    pub k: u32,
    pub m: u32,
    pub deg_h: u32,
    pub d: u32,
    pub mdr: u32,
    pub case: PencilCase,
    pub exponents: Option<(u32, u32)>,
}

fn free_low(d: u32, r: u32, f: &crate::algebra::HomogPoly, backend: &Backend, expected: (u32, u32)) -> Result<(u32, u32)> {
    let tau = global_tjurina(f, backend)?.tau;
    match freeness_gate(d, r, tau)? {
        GateVerdict::Attained { exponents } if exponents == expected => Ok(exponents),
        other => Err(Error::Inconsistency(format!(
            "mdr = {r} should force freeness with exponents {expected:?}, found {other:?}"
        ))),
    }
}

/// f a product of m ≥ 3 members of a pencil of degree-k curves with
/// zero-dimensional base locus: either mdr = 2k − 2, or m = 3 and
/// mdr = k + 1 with f free of exponents (k + 1, 2k − 2) (k ≥ 4), or m = 3 and
/// k + 2 ≤ mdr ≤ 2k − 3 (k ≥ 5).
pub fn product_trichotomy(spec: &PencilProductSpec, backend: &Backend) -> Result<PencilTrichotomy> {
    let (k, m) = (spec.k(), spec.m());
    if spec.h.is_some() {
        return Err(Error::Precondition("expected a product of members without extra factor".into()));
    }
    if k < 2 || m < 3 {
        return Err(Error::Precondition(format!("need k >= 2 and m >= 3, got k = {k}, m = {m}")));
    }
    if homog_gcd(&spec.pencil.q1, &spec.pencil.q2).degree() > 0 {
        return Err(Error::Precondition("the base locus of the pencil is not zero-dimensional".into()));
    }
    let f = build_product(spec)?;
    let d = f.degree();
    let r = mdr(&f, backend)?.mdr;
    let out = |case, exponents| PencilTrichotomy {
        k,
        m,
        deg_h: 0,
        d,
        mdr: r,
        case,
        exponents,
    };
    if r == 2 * k - 2 {
        return Ok(out(PencilCase::Explicit, None));
    }
    if m == 3 && r + 3 <= 2 * k {
        if r == k + 1 && k >= 4 {
            let e = free_low(d, r, &f, backend, (k + 1, 2 * k - 2))?;
            return Ok(out(PencilCase::FreeLow, Some(e)));
        }
        if k >= 5 && r >= k + 2 {
            return Ok(out(PencilCase::Middle, None));
        }
    }
    Err(Error::Inconsistency(format!(
        "mdr = {r} fits no case for k = {k}, m = {m}"
    )))
}

/// f = (m members)·h where q₁, q₂, h have no common zero and h is
/// irreducible (or merely reduced when k = 1; irreducibility is the
/// caller's claim): either mdr = 2k − 2 + deg h, or mdr = (m − 2)k + 1 with
/// f free, or (m − 2)k + 2 ≤ mdr ≤ d − (m − 2)k − 3.
pub fn residual_trichotomy(spec: &PencilProductSpec, backend: &Backend) -> Result<PencilTrichotomy> {
    let (k, m) = (spec.k(), spec.m());
    let h = spec
        .h
        .as_ref()
        .ok_or_else(|| Error::Precondition("expected an extra factor h".into()))?;
    let e = h.degree();
    if e == 0 || m < 2 {
        return Err(Error::Precondition(format!("need deg h >= 1 and m >= 2, got {e} and {m}")));
    }
    if !h.is_square_free() {
        return Err(Error::Precondition("h is not reduced".into()));
    }
    if macaulay_resultant(&spec.pencil.q1, &spec.pencil.q2, h)?.is_zero() {
        return Err(Error::Precondition("q1, q2 and h have a common point".into()));
    }
    let f = build_product(spec)?;
    let d = f.degree();
    let r = mdr(&f, backend)?.mdr;
    let out = |case, exponents| PencilTrichotomy {
        k,
        m,
        deg_h: e,
        d,
        mdr: r,
        case,
        exponents,
    };
    if r == 2 * k - 2 + e {
        return Ok(out(PencilCase::Explicit, None));
    }
    let low = (m - 2) * k + 1;
    if r == low {
        let ex = free_low(d, r, &f, backend, (low, d - low - 1))?;
        return Ok(out(PencilCase::FreeLow, Some(ex)));
    }
    if r > low && r + low + 2 <= d {
        return Ok(out(PencilCase::Middle, None));
    }
    Err(Error::Inconsistency(format!(
        "mdr = {r} fits no case for k = {k}, m = {m}, deg h = {e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::tjurina::phi1;

    fn spec(name: &str) -> PencilProductSpec {
        fixture(name).unwrap().pencil.unwrap()
    }

    #[test]
    fn extended_hesse_is_free() {
        let v = generic_pencil_freeness(&spec("ex12ii"), &Backend::default()).unwrap();
        assert!(v.members_included && v.tau_equals_mu && v.condition);
        assert_eq!((v.d, v.mdr, v.tau), (15, 4, 156));
        assert_eq!(v.exponents, Some((4, 10)));
        assert_eq!(v.singular_members.len(), 2);
    }

    #[test]
    fn hesse_missing_a_singular_member() {
        let v = generic_pencil_freeness(&spec("hesse-m4"), &Backend::default()).unwrap();
        assert!(!v.members_included && !v.condition);
        assert_eq!((v.d, v.mdr), (12, 4));
        assert_ne!(v.tau as i64, phi1(12, 4));
        assert_ne!(v.class, Classification::Free);
    }

    #[test]
    fn fermat_cubic_product() {
        let v = generic_pencil_freeness(&spec("ex5"), &Backend::default()).unwrap();
        assert!(v.condition);
        assert_eq!((v.exponents, v.tau), (Some((4, 4)), 48));
    }

    #[test]
    fn trichotomy_cases() {
        let b = Backend::default();
        let t = product_trichotomy(&spec("ex12ii"), &b).unwrap();
        assert_eq!((t.case, t.mdr), (PencilCase::Explicit, 4));
        let t = product_trichotomy(&spec("ex12i:4"), &b).unwrap();
        assert_eq!((t.case, t.exponents), (PencilCase::FreeLow, Some((5, 6))));
        let t = residual_trichotomy(&spec("ex14ii:5"), &b).unwrap();
        assert_eq!((t.case, t.mdr), (PencilCase::Explicit, 2));
        let t = residual_trichotomy(&spec("ex14i:3"), &b).unwrap();
        assert_eq!((t.case, t.exponents), (PencilCase::FreeLow, Some((4, 5))));
        assert!(product_trichotomy(&spec("ex14ii:5"), &b).is_err());
    }
}
