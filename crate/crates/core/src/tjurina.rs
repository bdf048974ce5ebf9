//! Global Tjurina numbers from the Hilbert function of the Milnor algebra,
//! the du Plessis–Wall bounds, and the free / nearly free classification.

use std::collections::BTreeSet;

use log::info;
use serde::Serialize;

use crate::algebra::backend::{mult_map_rank, Backend};
use crate::algebra::{monomial, HomogPoly};
use crate::error::{Error, Result};
use crate::syzygy::{mdr, SyzygyTriple};

/// Largest degree for which the exact rational backend is allowed to compute
/// Hilbert functions; beyond it the modular backend is required.
pub const EXACT_HILBERT_MAX_DEGREE: u32 = 12;

/// Sampled Hilbert function of S/(f_x, f_y, f_z).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorProfile {
    pub d: u32,
    /// (k, dim (S/J_f)_k) in increasing k.
    pub samples: Vec<(u32, usize)>,
    pub tau: usize,
    /// The k of the witness pair: the values at k and k + 1 agree.
    pub stabilization: u32,
}

/// dim (S/J_f)_k = dim S_k − rank of (a, b, c) ↦ a f_x + b f_y + c f_z.
pub fn milnor_hilbert(f: &HomogPoly, k: u32, backend: &Backend) -> Result<usize> {
    let grad = f.gradient();
    Ok(monomial::dim(k) - mult_map_rank(&grad, k, backend)?)
}

fn check_backend(f: &HomogPoly, backend: &Backend) -> Result<()> {
    if *backend == Backend::Exact
        && f.field() == crate::algebra::Field::Rational
        && f.degree() > EXACT_HILBERT_MAX_DEGREE
    {
        return Err(Error::TooLarge(format!(
            "exact Hilbert sampling is limited to degree {EXACT_HILBERT_MAX_DEGREE}; use the modular backend for degree {}",
            f.degree()
        )));
    }
    Ok(())
}

/// τ(f) as the stable value of the Milnor algebra's Hilbert function.
///
/// Sampling starts at k = 3d − 6 and looks for two equal consecutive
/// values; if the first pair differs the window is extended (and logged) up
/// to k = 3d − 3, after which the profile is reported as an error.
pub fn global_tjurina(f: &HomogPoly, backend: &Backend) -> Result<MilnorProfile> {
    check_backend(f, backend)?;
    let d = f.degree();
    let start = (3 * d).saturating_sub(6);
    let stop = 3 * d - 3;
    let (h0, h1) = std::thread::scope(|s| {
        let a = s.spawn(|| milnor_hilbert(f, start, backend));
        let b = s.spawn(|| milnor_hilbert(f, start + 1, backend));
        (a.join().unwrap(), b.join().unwrap())
    });
    let mut samples = vec![(start, h0?), (start + 1, h1?)];
    loop {
        let n = samples.len();
        let (k, v) = samples[n - 2];
        if samples[n - 1].1 == v {
            if k > start {
                info!("Hilbert function of degree-{d} curve stabilized late, at k = {k} (sampling started at {start})");
            }
            return Ok(MilnorProfile {
                d,
                tau: v,
                stabilization: k,
                samples,
            });
        }
        let next = samples[n - 1].0 + 1;
        if next > stop {
            return Err(Error::NonStabilization(samples));
        }
        samples.push((next, milnor_hilbert(f, next, backend)?));
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DpwBranch {
    Phi1,
    Phi2,
}

/// The du Plessis–Wall upper bound for τ given d and r = mdr(f).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DpwBound {
    pub value: i64,
    pub branch: DpwBranch,
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// φ₁(r) = (d−1)² − r(d−1−r).
pub fn phi1(d: u32, r: u32) -> i64 {
    let (d, r) = (d as i64, r as i64);
    (d - 1) * (d - 1) - r * (d - 1 - r)
}

/// φ₂(r) = (d−1)² − r(d−r−1) − C(2r+2−d, 2).
pub fn phi2(d: u32, r: u32) -> i64 {
    let (di, ri) = (d as i64, r as i64);
    phi1(d, r) - binom2(2 * ri + 2 - di)
}

/// φ₁ when 2r ≤ d − 1, φ₂ otherwise.
pub fn dpw_bounds(d: u32, r: u32) -> DpwBound {
    if 2 * r + 1 <= d {
        DpwBound {
            value: phi1(d, r),
            branch: DpwBranch::Phi1,
        }
    } else {
        DpwBound {
            value: phi2(d, r),
            branch: DpwBranch::Phi2,
        }
    }
}

/// Drops every candidate value of mdr whose du Plessis–Wall bound is below τ.
pub fn refine_mdr_candidates(d: u32, tau: usize, candidates: &BTreeSet<u32>) -> BTreeSet<u32> {
    candidates
        .iter()
        .copied()
        .filter(|&r| dpw_bounds(d, r).value >= tau as i64)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum GateVerdict {
    /// τ equals the bound: free with exponents (r₀, d − r₀ − 1).
    Attained { exponents: (u32, u32) },
    /// τ is below the bound by `deficit`.
    Undershoot { deficit: i64 },
}

/// Compares τ with (d−1)² − r₀(d−r₀−1) for a lower bound r₀ ≤ mdr(f).
pub fn freeness_gate(d: u32, r0: u32, tau: usize) -> Result<GateVerdict> {
    if r0 < 1 {
        return Err(Error::Precondition("the freeness gate needs r0 >= 1".into()));
    }
    if r0 + 1 > d {
        return Err(Error::Precondition(format!("r0 = {r0} exceeds d - 1 = {}", d - 1)));
    }
    let bound = phi1(d, r0);
    let tau = tau as i64;
    if tau > bound {
        return Err(Error::Inconsistency(format!(
            "tau = {tau} exceeds (d-1)^2 - r0(d-r0-1) = {bound} for d = {d}, r0 = {r0}"
        )));
    }
    Ok(if tau == bound {
        GateVerdict::Attained {
            exponents: (r0, d - r0 - 1),
        }
    } else {
        GateVerdict::Undershoot {
            deficit: bound - tau,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Free,
    NearlyFree,
    Neither,
    Cone,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Free => "free",
            Classification::NearlyFree => "nearly-free",
            Classification::Neither => "neither",
            Classification::Cone => "cone",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundDiagnostics {
    pub phi1: i64,
    pub phi2: i64,
    pub branch: DpwBranch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub d: u32,
    pub mdr: u32,
    pub tau: usize,
    pub class: Classification,
    pub exponents: Option<(u32, u32)>,
    pub certificate: SyzygyTriple,
    pub bounds: BoundDiagnostics,
    pub backend: String,
    pub primes: Vec<u64>,
    pub reduced: bool,
}

/// The free / nearly free / neither / cone decision from r = mdr(f) and τ.
/// Errors if τ exceeds the du Plessis–Wall bound.
pub fn classify_invariants(d: u32, r: u32, tau: usize) -> Result<(Classification, Option<(u32, u32)>)> {
    let bound = dpw_bounds(d, r);
    let t = tau as i64;
    if t > bound.value {
        return Err(Error::Inconsistency(format!(
            "tau = {tau} exceeds the du Plessis-Wall bound {} for d = {d}, mdr = {r}",
            bound.value
        )));
    }
    if r == 0 {
        return Ok((Classification::Cone, None));
    }
    if 2 * r < d && t == phi1(d, r) {
        return Ok((Classification::Free, Some((r, d - 1 - r))));
    }
    if 2 * r <= d && t == phi1(d, r) - 1 {
        return Ok((Classification::NearlyFree, Some((r, d - r))));
    }
    Ok((Classification::Neither, None))
}

/// Computes mdr(f), τ(f) and the classification.
pub fn classify(f: &HomogPoly, backend: &Backend) -> Result<FreenessReport> {
    let d = f.degree();
    if d < 1 {
        return Err(Error::Precondition("classification needs a curve of degree >= 1".into()));
    }
    check_backend(f, backend)?;
    let (m, profile) = std::thread::scope(|s| {
        let m = s.spawn(|| mdr(f, backend));
        let p = s.spawn(|| global_tjurina(f, backend));
        (m.join().unwrap(), p.join().unwrap())
    });
    let m = m?;
    let profile = profile?;
    let (class, exponents) = classify_invariants(d, m.mdr, profile.tau)?;
    let bound = dpw_bounds(d, m.mdr);
    let primes = match f.field() {
        crate::algebra::Field::Prime(p) => vec![p],
        crate::algebra::Field::Rational => backend.primes().to_vec(),
    };
    Ok(FreenessReport {
        d,
        mdr: m.mdr,
        tau: profile.tau,
        class,
        exponents,
        certificate: m.certificate().clone(),
        bounds: BoundDiagnostics {
            phi1: phi1(d, m.mdr),
            phi2: phi2(d, m.mdr),
            branch: bound.branch,
        },
        backend: match f.field() {
            crate::algebra::Field::Prime(_) => "prime-field".into(),
            crate::algebra::Field::Rational => backend.name().into(),
        },
        primes,
        reduced: m.reduced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, Field};

    fn q(s: &str) -> HomogPoly {
        parse_poly(s, Field::Rational).unwrap()
    }

    #[test]
    fn hilbert_values() {
        let b = Backend::default();
        assert_eq!(milnor_hilbert(&q("x^2 + y*z"), 0, &b).unwrap(), 1);
        // The Milnor algebra of the Fermat quartic is a complete intersection
        // of three cubics with socle in degree 6.
        let fermat = q("x^4 + y^4 + z^4");
        assert_eq!(milnor_hilbert(&fermat, 6, &b).unwrap(), 1);
        assert_eq!(milnor_hilbert(&fermat, 7, &b).unwrap(), 0);
        assert_eq!(milnor_hilbert(&q("x*y*z"), 10, &b).unwrap(), 3);
    }

    #[test]
    fn tjurina_of_simple_curves() {
        let b = Backend::default();
        assert_eq!(global_tjurina(&q("x^4 + y^4 + z^4"), &b).unwrap().tau, 0);
        assert_eq!(global_tjurina(&q("x*y*z"), &b).unwrap().tau, 3);
        // A smooth conic stabilizes only from k = 1 on.
        let conic = global_tjurina(&q("x^2 + y*z"), &b).unwrap();
        assert_eq!((conic.tau, conic.stabilization), (0, 1));
    }

    #[test]
    fn non_reduced_input_does_not_stabilize() {
        match global_tjurina(&q("x^2*y"), &Backend::default()) {
            Err(Error::NonStabilization(profile)) => assert!(!profile.is_empty()),
            other => panic!("expected non-stabilization, got {other:?}"),
        }
    }

    /// The bounds written out by hand: φ₂ subtracts the number of pairs in
    /// a set of size 2r + 2 − d, counted by enumeration.
    fn dpw_oracle(d: i64, r: i64) -> i64 {
        let phi1 = (d - 1) * (d - r - 1) + r * r;
        if 2 * r < d {
            return phi1;
        }
        let n = 2 * r + 2 - d;
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).count() as i64;
        phi1 - pairs
    }

    #[test]
    fn du_plessis_wall_arithmetic() {
        for d in 2..25u32 {
            for r in 1..d {
                let b = dpw_bounds(d, r);
                assert_eq!(b.value, dpw_oracle(d as i64, r as i64), "d = {d}, r = {r}");
                let branch = if 2 * r < d { DpwBranch::Phi1 } else { DpwBranch::Phi2 };
                assert_eq!(b.branch, branch);
            }
        }
        // d = 6, r = 4 is the φ₂ worked case.
        assert_eq!(dpw_bounds(6, 4).value, dpw_oracle(6, 4));
    }

    #[test]
    fn candidate_refinement() {
        let set = |v: &[u32]| v.iter().copied().collect::<BTreeSet<u32>>();
        assert_eq!(refine_mdr_candidates(6, 19, &set(&[2, 4])), set(&[2]));
        assert_eq!(refine_mdr_candidates(6, 0, &set(&[1, 2, 4, 5])), set(&[1, 2, 4, 5]));
        assert_eq!(refine_mdr_candidates(15, 156, &(4..=10).collect()), set(&[4]));
    }

    #[test]
    fn gate_verdicts() {
        assert_eq!(freeness_gate(15, 4, 156).unwrap(), GateVerdict::Attained { exponents: (4, 10) });
        assert_eq!(freeness_gate(6, 2, 19).unwrap(), GateVerdict::Attained { exponents: (2, 3) });
        assert_eq!(freeness_gate(6, 2, 18).unwrap(), GateVerdict::Undershoot { deficit: 1 });
        assert!(freeness_gate(6, 2, 20).unwrap_err().is_inconsistency());
        assert!(matches!(freeness_gate(6, 0, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn smooth_quartic_is_neither() {
        let r = classify(&q("x^4 + y^4 + z^4"), &Backend::default()).unwrap();
        assert_eq!((r.class, r.mdr, r.tau), (Classification::Neither, 3, 0));
    }

    #[test]
    fn exact_backend_refuses_large_degree() {
        let f = q("x^13 + y^13 + z^13");
        assert!(matches!(global_tjurina(&f, &Backend::Exact), Err(Error::TooLarge(_))));
    }

    #[test]
    fn report_serializes_with_contract_keys() {
        let r = classify(&q("x*y*z"), &Backend::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["d", "mdr", "tau", "class", "exponents", "certificate", "bounds", "backend", "primes"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["class"], "free");
        assert_eq!(v["certificate"]["degree"], 1);
    }
}
