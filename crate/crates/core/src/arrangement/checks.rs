use log::{info, warn};
use serde::Serialize;

use super::{lattice, tau_combinatorial, LineArrangement, ProjPoint};
use crate::algebra::Backend;
use crate::error::{Error, Result};
use crate::syzygy::mdr;
use crate::tjurina::{classify, freeness_gate, Classification, FreenessReport, GateVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrichotomyCase {
    /// mdr = d − m.
    MaximalDegree,
    /// mdr = m − 1 ≤ d − m − 1, and the arrangement is free.
    FreeLow,
    /// m ≤ mdr ≤ d − m − 1.
    Middle,
}

impl TrichotomyCase {
    pub fn label(self) -> &'static str {
        match self {
            TrichotomyCase::MaximalDegree => "0",
            TrichotomyCase::FreeLow => "1",
            TrichotomyCase::Middle => "2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrichotomyReport {
    pub point: ProjPoint,
    pub multiplicity: u32,
    pub d: u32,
    pub mdr: u32,
    pub case: TrichotomyCase,
    /// Set in the free case.
    pub exponents: Option<(u32, u32)>,
}

/// Places mdr(f) relative to the multiplicity m of a lattice point p: either
/// mdr = d − m, or mdr = m − 1 with f free, or m ≤ mdr ≤ d − m − 1. Any
/// other value is reported as an inconsistency.
pub fn trichotomy(a: &LineArrangement, p: &ProjPoint, backend: &Backend) -> Result<TrichotomyReport> {
    let lat = lattice(a)?;
    let m = lat
        .find(p)
        .ok_or_else(|| Error::NotALatticePoint(p.to_string()))?
        .multiplicity as u32;
    let d = a.degree();
    let r = mdr(&a.polynomial(), backend)?.mdr;
    trichotomy_from(p.clone(), d, m, r, tau_combinatorial(&lat) as usize)
}

pub(crate) fn trichotomy_from(point: ProjPoint, d: u32, m: u32, r: u32, tau: usize) -> Result<TrichotomyReport> {
    let report = |case, exponents| TrichotomyReport {
        point: point.clone(),
        multiplicity: m,
        d,
        mdr: r,
        case,
        exponents,
    };
    if r == d - m {
        return Ok(report(TrichotomyCase::MaximalDegree, None));
    }
    if r + 1 == m && r + m < d {
        if 2 * m >= d + 1 {
            warn!("low case with 2m = {} >= d + 1 = {}", 2 * m, d + 1);
        }
        return match freeness_gate(d, r, tau)? {
            GateVerdict::Attained { exponents } => Ok(report(TrichotomyCase::FreeLow, Some(exponents))),
            GateVerdict::Undershoot { deficit } => Err(Error::Inconsistency(format!(
                "mdr = m - 1 = {r} but tau falls {deficit} short of the free value"
            ))),
        };
    }
    if m <= r && r + m < d {
        return Ok(report(TrichotomyCase::Middle, None));
    }
    Err(Error::Inconsistency(format!(
        "mdr = {r} fits none of the three cases for d = {d}, m = {m}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub m: u32,
    pub d: u32,
    pub mdr: u32,
    /// 2d/(mdr + 2) in lowest terms.
    pub rhs: String,
    pub ok: bool,
    pub equality: bool,
}

pub(crate) fn bound_check_from(m: u32, d: u32, r: u32) -> BoundCheck {
    let (lhs, rhs) = (m as u64 * (r as u64 + 2), 2 * d as u64);
    let g = num_integer::gcd(2 * d as u64, r as u64 + 2);
    BoundCheck {
        m,
        d,
        mdr: r,
        rhs: if g == r as u64 + 2 {
            format!("{}", rhs / g)
        } else {
            format!("{}/{}", rhs / g, (r as u64 + 2) / g)
        },
        ok: lhs >= rhs,
        equality: lhs == rhs,
    }
}

/// m(A) ≥ 2d/(mdr(f) + 2), compared exactly as m·(mdr + 2) ≥ 2d.
pub fn multiplicity_bound_check(a: &LineArrangement, backend: &Backend) -> Result<BoundCheck> {
    let m = lattice(a)?.max_multiplicity() as u32;
    let r = mdr(&a.polynomial(), backend)?.mdr;
    Ok(bound_check_from(m, a.degree(), r))
}

/// For a free arrangement with exponents (d₁, d₂): m = d₂ + 1 or m ≤ d₁ + 1.
/// For a nearly free one: m = d₂ or m ≤ d₁.
pub fn exponent_gap_check(report: &FreenessReport, m: u32) -> Result<bool> {
    let (d1, d2) = report.exponents.ok_or_else(|| {
        Error::Precondition(format!("exponent gap needs a free or nearly free curve, got {}", report.class))
    })?;
    match report.class {
        Classification::Free => Ok(m == d2 + 1 || m <= d1 + 1),
        Classification::NearlyFree => Ok(m == d2 || m <= d1),
        other => Err(Error::Precondition(format!(
            "exponent gap needs a free or nearly free curve, got {other}"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FvVerdict {
    pub k: u32,
    pub l: u32,
    /// Multiplicity of the point used for the hypothesis.
    pub e: u32,
    pub tau: u64,
    pub target: i64,
    pub free: bool,
    pub exponents: Option<(u32, u32)>,
    pub classified: Classification,
}

/// With d = 2k + ℓ + 1 and a point of multiplicity e ∈ [k, k + ℓ + 1], A is
/// free with exponents (k, k + ℓ) exactly when τ = (d − 1)² − k(k + ℓ). The
/// verdict is cross-checked against a direct classification of f.
pub fn faenzi_valles_check(a: &LineArrangement, k: u32, l: u32, backend: &Backend) -> Result<FvVerdict> {
    let d = a.degree();
    if k == 0 || d != 2 * k + l + 1 {
        return Err(Error::Precondition(format!(
            "need k >= 1 and d = 2k + l + 1, got d = {d}, k = {k}, l = {l}"
        )));
    }
    let lat = lattice(a)?;
    let e = lat
        .points
        .iter()
        .map(|p| p.multiplicity as u32)
        .filter(|&e| k <= e && e <= k + l + 1)
        .max()
        .ok_or_else(|| {
            Error::Precondition(format!("no point of multiplicity in [{k}, {}]", k + l + 1))
        })?;
    let tau = tau_combinatorial(&lat);
    let target = ((d - 1) * (d - 1)) as i64 - (k * (k + l)) as i64;
    let free = tau as i64 == target;
    let report = classify(&a.polynomial(), backend)?;
    let confirmed = report.class == Classification::Free && report.exponents == Some((k, k + l));
    if free != confirmed {
        return Err(Error::Inconsistency(format!(
            "tau test says free = {free} but classification gives {} {:?}",
            report.class, report.exponents
        )));
    }
    info!("k = {k}, l = {l}, e = {e}: tau = {tau}, target = {target}");
    Ok(FvVerdict {
        k,
        l,
        e,
        tau,
        target,
        free,
        exponents: free.then_some((k, k + l)),
        classified: report.class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt() -> ProjPoint {
        ProjPoint::from_i64(crate::algebra::Field::Rational, [0, 1, 0]).unwrap()
    }

    #[test]
    fn case_selection() {
        assert_eq!(trichotomy_from(pt(), 6, 4, 2, 19).unwrap().case, TrichotomyCase::MaximalDegree);
        let low = trichotomy_from(pt(), 8, 4, 3, 37).unwrap();
        assert_eq!((low.case, low.exponents), (TrichotomyCase::FreeLow, Some((3, 4))));
        assert!(trichotomy_from(pt(), 8, 4, 3, 36).unwrap_err().is_inconsistency());
        assert_eq!(trichotomy_from(pt(), 19, 6, 9, 243).unwrap().case, TrichotomyCase::Middle);
        // mdr below m − 1 is impossible.
        assert!(trichotomy_from(pt(), 19, 6, 4, 0).unwrap_err().is_inconsistency());
    }

    #[test]
    fn bound_arithmetic() {
        let b = bound_check_from(3, 9, 4);
        assert!(b.ok && b.equality);
        assert_eq!(b.rhs, "3");
        let b = bound_check_from(6, 19, 9);
        assert!(b.ok && !b.equality);
        assert_eq!(b.rhs, "38/11");
        assert!(!bound_check_from(2, 9, 4).ok);
    }
}
