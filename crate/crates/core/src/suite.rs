//! The verification suite: each criterion rebuilds its fixtures, runs the
//! engine and compares against independently known values.

use std::collections::VecDeque;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::transform::mat_vec;
use crate::algebra::{parse_poly, Backend, Field, HomogPoly, Scalar, Unimodular, Var};
use crate::arrangement::{
    bound_check_from, cone_construction, lattice, point_syzygy, tau_combinatorial, trichotomy, trichotomy_from,
    lattice_isomorphic, LineArrangement, ProjLine, ProjPoint, TrichotomyCase,
};
use crate::fixtures::{fixture, Fixture};
use crate::pencils::{
    discriminant, find_tangent_instance, generic_pencil_freeness, residual_syzygy, singular_members,
    tangent_arrangement, total_mu_check, wedge_syzygy, PencilSpec,
};
use crate::syzygy::{ar_slice, is_primitive, verify_syzygy};
use crate::tjurina::{classify, dpw_bounds, global_tjurina, Classification, FreenessReport};

type Outcome = std::result::Result<String, String>;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub backend: Backend,
    pub seed: u64,
    /// A criterion id, or text found in criterion names or tags.
    pub filter: Option<String>,
    /// Runs this criterion on damaged fixtures.
    pub corrupt: Option<u32>,
    /// Worker threads; defaults to the available parallelism.
    pub jobs: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            backend: Backend::default(),
            seed: 0,
            filter: None,
            corrupt: None,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
    pub limit_ms: u64,
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub tags: &'static [&'static str],
    pub limit: Duration,
    run: fn(&Ctx) -> Outcome,
}

impl Criterion {
    fn matches(&self, filter: &str) -> bool {
        if let Ok(id) = filter.trim().parse::<u32>() {
            return self.id == id;
        }
        let filter = filter.to_lowercase();
        self.name.to_lowercase().contains(&filter)
            || self.tags.iter().any(|t| t.contains(&filter))
    }
}

struct Ctx {
    backend: Backend,
    seed: u64,
    corrupt: bool,
}

impl Ctx {
    fn fx(&self, name: &str) -> std::result::Result<Fixture, String> {
        let f = fixture(name).map_err(|e| e.to_string())?;
        Ok(if self.corrupt { f.corrupted() } else { f })
    }

    /// A pencil, with its first generator disturbed when corrupting.
    fn pencil(&self, p: PencilSpec) -> std::result::Result<PencilSpec, String> {
        if !self.corrupt {
            return Ok(p);
        }
        let k = p.k();
        let extra = parse_poly(&format!("2*z^{k}"), p.field()).map_err(|e| e.to_string())?;
        PencilSpec::new(&p.q1 + &extra, p.q2).map_err(|e| e.to_string())
    }

    fn classify(&self, f: &HomogPoly) -> std::result::Result<FreenessReport, String> {
        classify(f, &self.backend).map_err(|e| e.to_string())
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::error::Error) -> String {
    e.to_string()
}

fn arrangement(fx: &Fixture) -> std::result::Result<&LineArrangement, String> {
    fx.arrangement
        .as_ref()
        .ok_or_else(|| format!("{} has no line arrangement", fx.name))
}

fn expect_free(r: &FreenessReport, what: &str, exps: (u32, u32), tau: Option<usize>) -> std::result::Result<(), String> {
    ensure(r.class == Classification::Free && r.exponents == Some(exps), || {
        format!("{what}: expected free {exps:?}, got {} {:?}", r.class, r.exponents)
    })?;
    if let Some(t) = tau {
        ensure(r.tau == t, || format!("{what}: expected tau {t}, got {}", r.tau))?;
    }
    Ok(())
}

fn sorted(a: u32, b: u32) -> (u32, u32) {
    (a.min(b), a.max(b))
}

fn c1_ex1(ctx: &Ctx) -> Outcome {
    let fx = ctx.fx("ex1")?;
    let r = ctx.classify(&fx.f)?;
    ensure(r.mdr == 2, || format!("mdr = {}, expected 2", r.mdr))?;
    expect_free(&r, "ex1", (2, 3), Some(19))?;
    let comb = tau_combinatorial(&lattice(arrangement(&fx)?).map_err(err)?);
    ensure(comb == 19, || format!("sum (m_p - 1)^2 = {comb}, expected 19"))?;
    Ok(format!("mdr 2, free (2,3), tau {} = {comb}", r.tau))
}

fn c2_ex2(ctx: &Ctx) -> Outcome {
    let mut out = Vec::new();
    for (name, exps, tau) in [("ex2a", (3, 4), 37), ("ex2b", (3, 5), 49)] {
        let fx = ctx.fx(name)?;
        let a = arrangement(&fx)?;
        let r = ctx.classify(&fx.f)?;
        expect_free(&r, name, exps, Some(tau))?;
        let lat = lattice(a).map_err(err)?;
        let comb = tau_combinatorial(&lat) as usize;
        ensure(comb == r.tau, || format!("{name}: lattice tau {comb} vs {}", r.tau))?;
        let p = lat.max_point().ok_or("no lattice point")?;
        let t = trichotomy_from(p.point.clone(), r.d, p.multiplicity as u32, r.mdr, r.tau).map_err(err)?;
        ensure(t.case == TrichotomyCase::FreeLow && t.mdr == 3 && t.multiplicity == 4, || {
            format!("{name}: case {} with mdr {} and m {}", t.case.label(), t.mdr, t.multiplicity)
        })?;
        out.push(format!("{name} free {exps:?} tau {tau} case 1"));
    }
    Ok(out.join("; "))
}

fn c3_ex3(ctx: &Ctx) -> Outcome {
    let fx = ctx.fx("ex3")?;
    let a = arrangement(&fx)?;
    let r = ctx.classify(&fx.f)?;
    expect_free(&r, "ex3", (9, 9), Some(243))?;
    let lat = lattice(a).map_err(err)?;
    let comb = tau_combinatorial(&lat) as usize;
    ensure(comb == 243, || format!("lattice tau {comb}"))?;
    let p = lat.max_point().ok_or("no lattice point")?;
    let t = trichotomy_from(p.point.clone(), r.d, p.multiplicity as u32, r.mdr, r.tau).map_err(err)?;
    ensure(t.case == TrichotomyCase::Middle && t.multiplicity == 6, || {
        format!("case {} at multiplicity {}", t.case.label(), t.multiplicity)
    })?;
    Ok(format!("free (9,9), tau 243, case 2 with 6 <= {} <= {}", t.mdr, t.d - 7))
}

fn c4_ex5(ctx: &Ctx) -> Outcome {
    let fx = ctx.fx("ex5")?;
    let r = ctx.classify(&fx.f)?;
    expect_free(&r, "ex5", (4, 4), None)?;
    let lat = lattice(arrangement(&fx)?).map_err(err)?;
    let m = lat.max_multiplicity() as u32;
    let b = bound_check_from(m, r.d, r.mdr);
    ensure(m == 3 && b.ok && b.equality && b.rhs == "3", || {
        format!("m = {m}, bound {b:?}")
    })?;
    Ok(format!("free (4,4), m = 3 = 2d/(d1 + 2) = {}", b.rhs))
}

fn c5_ex12i(ctx: &Ctx) -> Outcome {
    for k in 2..=5u32 {
        let f = ctx.fx(&format!("ex12i:{k}"))?;
        expect_free(&ctx.classify(&f.f)?, &f.name, sorted(k + 1, 2 * k - 2), None)?;
        let g = ctx.fx(&format!("ex12i-xyz:{k}"))?;
        expect_free(&ctx.classify(&g.f)?, &g.name, sorted(k + 1, 2 * k + 1), None)?;
    }
    Ok("k = 2..5: free (k+1, 2k-2), with xyz free (k+1, 2k+1)".into())
}

fn c6_ex12ii(ctx: &Ctx) -> Outcome {
    let fx = ctx.fx("ex12ii")?;
    let r = ctx.classify(&fx.f)?;
    ensure(r.mdr == 4, || format!("mdr = {}", r.mdr))?;
    expect_free(&r, "ex12ii", (4, 10), Some(156))?;
    let spec = fx.pencil.as_ref().ok_or("no pencil")?;
    let w = wedge_syzygy(&spec.pencil, &fx.f).map_err(err)?;
    ensure(w.degree == 4 && is_primitive(&w), || format!("wedge degree {}", w.degree))?;
    let slice = ar_slice(&fx.f, 4).map_err(err)?;
    ensure(slice.dimension() == 1, || format!("dim AR(f)_4 = {}", slice.dimension()))?;
    Ok("mdr 4, tau 156, free (4,10); wedge syzygy primitive and spans AR(f)_4".into())
}

fn c7_ex14ii(ctx: &Ctx) -> Outcome {
    for m in 3..=6u32 {
        let fx = ctx.fx(&format!("ex14ii:{m}"))?;
        let r = ctx.classify(&fx.f)?;
        ensure(
            r.class == Classification::NearlyFree && r.exponents == Some((2, m)) && r.tau == (m * m + 2) as usize,
            || format!("ex14ii:{m}: {} {:?} tau {}", r.class, r.exponents, r.tau),
        )?;
        let spec = fx.pencil.as_ref().ok_or("no pencil")?;
        let h = spec.h.as_ref().ok_or("no h")?;
        let s = residual_syzygy(&spec.pencil, h, spec.m(), &fx.f).map_err(err)?;
        ensure(s.degree == r.mdr, || format!("syzygy degree {} vs mdr {}", s.degree, r.mdr))?;
        let g = ctx.fx(&format!("ex14ii-prime:{m}"))?;
        expect_free(&ctx.classify(&g.f)?, &g.name, (2, m - 1), None)?;
    }
    Ok("m = 3..6: nearly free (2,m) with tau m^2 + 2; primed free (2,m-1)".into())
}

fn c8_discriminant(ctx: &Ctx) -> Outcome {
    let hesse = ctx.pencil(PencilSpec::hesse(Field::Rational))?;
    let d = discriminant(&hesse).map_err(err)?;
    ensure(d.degree == 12 && d.multiplicities() == vec![3, 3, 3, 3], || {
        format!("Hesse: degree {}, multiplicities {:?}", d.degree, d.multiplicities())
    })?;
    let t = total_mu_check(&hesse).map_err(err)?;
    ensure(t.ok && t.sum_mu == 12 && t.distinct_roots == 4, || format!("Hesse: {t:?}"))?;
    let fermat = ctx.pencil(PencilSpec::fermat(3, Field::Rational))?;
    let t = total_mu_check(&fermat).map_err(err)?;
    ensure(t.ok && t.distinct_roots == 3, || format!("Fermat: {t:?}"))?;
    let df = discriminant(&fermat).map_err(err)?;
    let members = singular_members(&fermat, &df, &ctx.backend).map_err(err)?;
    let count: usize = members.iter().map(|r| r.count).sum();
    ensure(
        count == 3 && members.iter().all(|r| r.concurrent_lines == Some(true)),
        || format!("Fermat singular members: {members:?}"),
    )?;
    Ok("Hesse: degree 12, {3,3,3,3}, 4 roots; Fermat k=3: 3 roots, each 3 concurrent lines".into())
}

fn c9_pencil_freeness(ctx: &Ctx) -> Outcome {
    let full = ctx.fx("ex12ii")?;
    let v = generic_pencil_freeness(full.pencil.as_ref().ok_or("no pencil")?, &ctx.backend).map_err(err)?;
    ensure(v.condition && v.exponents == Some((4, 10)), || {
        format!("m = 5: condition {} with {} {:?}", v.condition, v.class, v.exponents)
    })?;
    let part = ctx.fx("hesse-m4")?;
    let v = generic_pencil_freeness(part.pencil.as_ref().ok_or("no pencil")?, &ctx.backend).map_err(err)?;
    let target = crate::tjurina::phi1(v.d, 4);
    ensure(
        !v.condition && v.mdr == 4 && v.tau as i64 != target && v.class != Classification::Free,
        || format!("m = 4: condition {}, mdr {}, tau {} vs {target}, {}", v.condition, v.mdr, v.tau, v.class),
    )?;
    Ok(format!("m = 5 free (4,10); m = 4 tau {} != {target}, {}", v.tau, v.class))
}

fn random_arrangement(rng: &mut ChaCha8Rng, d: usize, range: i64) -> LineArrangement {
    let q = Field::Rational;
    let mut lines: Vec<ProjLine> = Vec::new();
    while lines.len() < d {
        let c = [0; 3].map(|_| rng.gen_range(-range..=range));
        if let Ok(l) = ProjLine::from_i64(q, c) {
            if !lines.contains(&l) {
                lines.push(l);
            }
        }
    }
    LineArrangement::new(q, lines).unwrap()
}

fn c10_cone(ctx: &Ctx) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0xc0e);
    let mut sizes = Vec::new();
    while sizes.len() < 5 {
        let d = rng.gen_range(3..=6);
        let a = random_arrangement(&mut rng, d, 3);
        if lattice(&a).map_err(err)?.points.len() < 2 {
            continue;
        }
        let apex = [0; 3].map(|_| rng.gen_range(-5..=5i64));
        let Ok(p) = ProjPoint::from_i64(Field::Rational, apex) else { continue };
        if a.lines().iter().any(|l| l.contains(&p)) {
            continue;
        }
        let b = cone_construction(&a, &p).map_err(err)?;
        let mut lines = b.arrangement.lines().to_vec();
        if ctx.corrupt {
            lines.pop();
        }
        let f = LineArrangement::new(Field::Rational, lines).map_err(err)?.polynomial();
        let r = ctx.classify(&f)?;
        let what = format!("B(A,p) with |A| = {d}, apex {p}");
        expect_free(&r, &what, b.expected_exponents, Some(b.expected_tau as usize))?;
        sizes.push(format!("{}+{}", b.e, b.added));
    }
    Ok(format!("5/5 free with {{e, m-1}}; sizes {}", sizes.join(" ")))
}

/// The arrangement checks that must hold on every input.
fn arrangement_properties(name: &str, a: &LineArrangement, backend: &Backend) -> std::result::Result<(), String> {
    let f = a.polynomial();
    let d = a.degree();
    let field = a.field();
    let g = f.gradient();
    let euler = [Var::X, Var::Y, Var::Z]
        .iter()
        .zip(&g)
        .fold(HomogPoly::zero(field, d), |acc, (v, p)| &acc + &(&HomogPoly::var(field, *v) * p));
    ensure(euler == f.scale(&field.int(d as i64)), || format!("{name}: Euler relation fails"))?;
    let lat = lattice(a).map_err(err)?;
    let pairs = (d * (d - 1) / 2) as usize;
    ensure(lat.pair_count() == pairs, || format!("{name}: pair count {} vs {pairs}", lat.pair_count()))?;
    let r = classify(&f, backend).map_err(err)?;
    let comb = tau_combinatorial(&lat) as usize;
    ensure(r.tau == comb, || format!("{name}: tau {} vs lattice {comb}", r.tau))?;
    let bound = dpw_bounds(d, r.mdr).value;
    ensure(r.tau as i64 <= bound, || format!("{name}: tau {} above {bound}", r.tau))?;
    let m = lat.max_multiplicity() as u32;
    ensure(bound_check_from(m, d, r.mdr).ok, || format!("{name}: mdr {} below 2d/m - 2", r.mdr))?;
    for p in &lat.points {
        let s = point_syzygy(a, &p.point).map_err(err)?;
        let want = d - p.multiplicity as u32;
        ensure(s.degree == want && verify_syzygy(&f, &s).map_err(err)?, || {
            format!("{name}: point syzygy at {} has degree {}", p.point, s.degree)
        })?;
        trichotomy_from(p.point.clone(), d, p.multiplicity as u32, r.mdr, r.tau)
            .map_err(|e| format!("{name}: {e}"))?;
    }
    if field == Field::Rational && d <= 8 {
        let exact = classify(&f, &Backend::Exact).map_err(err)?;
        ensure(
            (exact.mdr, exact.tau, exact.class) == (r.mdr, r.tau, r.class),
            || format!("{name}: exact and modular backends disagree"),
        )?;
    }
    Ok(())
}

/// The image of A under f ↦ f∘m, with its lines shuffled.
fn moved(rng: &mut ChaCha8Rng, a: &LineArrangement) -> std::result::Result<LineArrangement, String> {
    let u = Unimodular::random(rng, 6);
    let field = a.field();
    let mt: [[Scalar; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| field.int(u.m[j][i])));
    let mut lines = a
        .lines()
        .iter()
        .map(|l| ProjLine::new(mat_vec(&mt, l.covector())))
        .collect::<crate::error::Result<Vec<_>>>()
        .map_err(err)?;
    for i in (1..lines.len()).rev() {
        lines.swap(i, rng.gen_range(0..=i));
    }
    LineArrangement::new(field, lines).map_err(err)
}

/// Freeness data is unchanged under a coordinate change, and the lattice
/// test agrees; a perturbed arrangement with another lattice is told apart.
fn lattice_invariance(
    rng: &mut ChaCha8Rng,
    name: &str,
    a: &LineArrangement,
    backend: &Backend,
) -> std::result::Result<bool, String> {
    let b = moved(rng, a)?;
    ensure(lattice_isomorphic(a, &b).map_err(err)?, || format!("{name}: moved copy not isomorphic"))?;
    let (ra, rb) = (classify(&a.polynomial(), backend).map_err(err)?, classify(&b.polynomial(), backend).map_err(err)?);
    ensure((ra.class, ra.exponents, ra.tau) == (rb.class, rb.exponents, rb.tau), || {
        format!("{name}: {} {:?} tau {} vs moved {} {:?} tau {}", ra.class, ra.exponents, ra.tau, rb.class, rb.exponents, rb.tau)
    })?;
    let mut lines = a.lines().to_vec();
    lines.pop();
    let extra = random_arrangement(rng, 1, 7).lines()[0].clone();
    if lines.contains(&extra) {
        return Ok(false);
    }
    lines.push(extra);
    let c = LineArrangement::new(a.field(), lines).map_err(err)?;
    let (la, lc) = (lattice(a).map_err(err)?, lattice(&c).map_err(err)?);
    if la.counts() == lc.counts() {
        return Ok(false);
    }
    ensure(!lattice_isomorphic(a, &c).map_err(err)?, || format!("{name}: perturbed copy reported isomorphic"))?;
    Ok(true)
}

fn c11_properties(ctx: &Ctx) -> Outcome {
    let mut names: Vec<String> = ["ex1", "ex2a", "ex2b", "ex3", "ex5", "hesse"].map(String::from).to_vec();
    for k in 2..=5 {
        names.push(format!("ex12i:{k}"));
    }
    for k in 2..=4 {
        names.push(format!("ex12i-xyz:{k}"));
        names.push(format!("ex14i:{k}"));
    }
    for name in &names {
        let fx = ctx.fx(name)?;
        arrangement_properties(name, arrangement(&fx)?, &ctx.backend)?;
        if fx.arrangement.as_ref().is_some_and(|a| a.field() != Field::Rational) {
            // The split realization and the rational polynomial agree on τ.
            let t = global_tjurina(&fx.f, &ctx.backend).map_err(err)?.tau;
            let comb = tau_combinatorial(&lattice(arrangement(&fx)?).map_err(err)?) as usize;
            ensure(t == comb, || format!("{name}: tau over Q {t} vs lattice {comb}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ 0x5eed);
    let mut invariance = 0;
    let mut separated = 0;
    for name in ["ex1", "ex2a", "ex2b"] {
        let fx = ctx.fx(name)?;
        separated += lattice_invariance(&mut rng, name, arrangement(&fx)?, &ctx.backend)? as usize;
        invariance += 1;
    }
    for i in 0..50 {
        let d = rng.gen_range(3..=10);
        let a = random_arrangement(&mut rng, d, 2);
        arrangement_properties(&format!("random #{i}"), &a, &ctx.backend)?;
        if i % 5 == 0 {
            separated += lattice_invariance(&mut rng, &format!("random #{i}"), &a, &ctx.backend)? as usize;
            invariance += 1;
        }
        let p = lattice(&a).map_err(err)?.max_point().map(|p| p.point.clone());
        if let Some(p) = p {
            trichotomy(&a, &p, &ctx.backend).map_err(|e| format!("random #{i}: {e}"))?;
        }
    }
    Ok(format!(
        "{} fixtures and 50 random arrangements; {invariance} coordinate changes keep lattice and freeness, {separated} perturbations separated",
        names.len()
    ))
}

fn c12_tangent(ctx: &Ctx) -> Outcome {
    let h = parse_poly("z*y^2 - x^2*(x + z)", Field::Rational).map_err(err)?;
    let found = find_tangent_instance(&h, ctx.seed, 20_000).map_err(err)?;
    let mut spec = found.spec;
    if ctx.corrupt {
        spec.tangents.pop();
    }
    let r = tangent_arrangement(&spec, &ctx.backend).map_err(err)?;
    ensure(r.exponents == Some((3, 4)) && r.tau == r.tau_ledger && r.d == 8, || format!("{r:?}"))?;
    Ok(format!(
        "GF({}) apex {} after {} tries: free (3,4), tau {} = 16 + 4*4 + 1*5",
        found.prime, spec.apex, found.attempts, r.tau
    ))
}

const ARR: &[&str] = &["arrangement"];
const ARR_EXAMPLE: &[&str] = &["arrangement", "example"];
const PEN: &[&str] = &["pencil", "example"];
const PEN_ONLY: &[&str] = &["pencil"];

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, tags, limit, run| Criterion { id, name, tags, limit, run };
    vec![
        c(1, "ex1 free (2,3), tau 19", ARR_EXAMPLE, secs(1), c1_ex1 as fn(&Ctx) -> Outcome),
        c(2, "ex2 free (3,4) and (3,5), low case", ARR_EXAMPLE, secs(2), c2_ex2),
        c(3, "ex3 free (9,9), middle case", ARR_EXAMPLE, secs(60), c3_ex3),
        c(4, "ex5 free (4,4), bound equality", ARR_EXAMPLE, secs(2), c4_ex5),
        c(5, "ex12(i) families", PEN, secs(30), c5_ex12i),
        c(6, "ex12(ii) free (4,10), tau 156", PEN, secs(10), c6_ex12ii),
        c(7, "ex14(ii) nearly free (2,m)", PEN, secs(10), c7_ex14ii),
        c(8, "discriminants of Hesse and Fermat pencils", PEN_ONLY, secs(10), c8_discriminant),
        c(9, "generic pencil freeness both ways", PEN_ONLY, secs(15), c9_pencil_freeness),
        c(10, "cone construction on random arrangements", ARR, secs(60), c10_cone),
        c(11, "arrangement property suite", ARR, secs(90), c11_properties),
        c(12, "tangent lines of a nodal cubic over GF(p)", PEN_ONLY, secs(60), c12_tangent),
    ]
}

fn run_one(c: &Criterion, config: &SuiteConfig) -> CriterionResult {
    let ctx = Ctx {
        backend: config.backend.clone(),
        seed: config.seed,
        corrupt: config.corrupt == Some(c.id),
    };
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (c.run)(&ctx)))
        .unwrap_or_else(|_| Err("panicked".into()));
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    if passed && elapsed > c.limit {
        passed = false;
        detail = format!("over the time limit: {detail}");
    }
    CriterionResult {
        id: c.id,
        name: c.name,
        tags: c.tags,
        passed,
        detail,
        elapsed_ms: elapsed.as_millis() as u64,
        limit_ms: c.limit.as_millis() as u64,
    }
}

/// Runs the selected criteria on a pool of worker threads and returns the
/// results in id order.
pub fn run_suite(config: &SuiteConfig) -> Vec<CriterionResult> {
    let all = criteria();
    let selected: VecDeque<&Criterion> = all
        .iter()
        .filter(|c| config.filter.as_deref().is_none_or(|f| c.matches(f)))
        .collect();
    let jobs = config
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, selected.len().max(1));
    let queue = Mutex::new(selected);
    let results = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let Some(c) = queue.lock().unwrap().pop_front() else { break };
                let r = run_one(c, config);
                results.lock().unwrap().push(r);
            });
        }
    });
    let mut out = results.into_inner().unwrap();
    out.sort_by_key(|r| r.id);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filters() {
        let all = criteria();
        assert_eq!(all.len(), 12);
        let pencil: Vec<u32> = all.iter().filter(|c| c.matches("pencil")).map(|c| c.id).collect();
        assert_eq!(pencil, vec![5, 6, 7, 8, 9, 12]);
        assert_eq!(all.iter().filter(|c| c.matches("3")).count(), 1);
    }

    #[test]
    fn corrupted_fixture_fails_by_name() {
        let config = SuiteConfig {
            filter: Some("1".into()),
            corrupt: Some(1),
            ..SuiteConfig::default()
        };
        let r = run_suite(&config);
        assert_eq!(r.len(), 1);
        assert!(!r[0].passed);
        assert_eq!(r[0].id, 1);
    }
}
