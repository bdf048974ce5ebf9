use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::resultant::eliminate;
use crate::algebra::modp::random_primes;
use crate::algebra::{ExactMatrix, Field, HomogPoly, Scalar, UniPoly, Var};
use crate::arrangement::{cross, frame, LineArrangement, ProjLine, ProjPoint};
use crate::error::{Error, Result};
use crate::tjurina::{classify, global_tjurina, Classification};
use crate::algebra::Backend;

/// Apexes tried per prime before drawing a new prime.
const APEXES_PER_PRIME: usize = 8;

/// A curve H of degree e with δ nodes and κ cusps, a point a off H, and the
/// lines through a that are tangent to H or pass through a singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentConeSpec {
    pub h: HomogPoly,
    pub apex: ProjPoint,
    pub tangents: Vec<ProjLine>,
    pub node_lines: Vec<ProjLine>,
    pub cusp_lines: Vec<ProjLine>,
}

impl TangentConeSpec {
    pub fn lines(&self) -> Vec<ProjLine> {
        let mut out = self.tangents.clone();
        out.extend(self.node_lines.iter().cloned());
        out.extend(self.cusp_lines.iter().cloned());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentReport {
    pub field: String,
    pub e: u32,
    pub delta: u32,
    pub kappa: u32,
    /// Number of tangent lines through the apex.
    pub m0: u32,
    pub m: u32,
    pub d: u32,
    pub expected_exponents: (u32, u32),
    /// (m − 1)² + m₀(e + 1) + δ(e + 2) + κ(e + 3).
    pub tau_ledger: usize,
    pub tau: usize,
    pub class: Classification,
    pub exponents: Option<(u32, u32)>,
    pub mdr: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Contact {
    Tangent,
    Node,
    Cusp,
}

fn coord(field: Field, i: usize) -> [Scalar; 3] {
    std::array::from_fn(|j| if i == j { field.one() } else { field.zero() })
}

/// How the line through a meets H: exactly one double root of the
/// restriction, all other roots simple. The double point is a smooth point
/// (tangency), a node or a cusp, told apart by the rank of the Hessian.
fn contact(h: &HomogPoly, a: &ProjPoint, line: &ProjLine) -> Result<Contact> {
    let field = h.field();
    let e = h.degree() as usize;
    let a = a.coords();
    for i in (0..3).filter(|&i| !a[i].is_zero()) {
        let b = cross(line.covector(), &coord(field, i));
        let along = |mu: &Scalar| -> [Scalar; 3] { std::array::from_fn(|j| &a[j] + &(mu * &b[j])) };
        let samples: Vec<(Scalar, Scalar)> = (0..=e)
            .map(|s| {
                let mu = field.int(s as i64);
                let v = h.eval(&along(&mu));
                (mu, v)
            })
            .collect();
        let r = UniPoly::interpolate(field, &samples)?;
        if r.deg() != e || r.is_zero() {
            continue;
        }
        let parts = r.squarefree()?;
        let doubles: Vec<&UniPoly> = parts.iter().filter(|(_, k)| *k == 2).map(|(g, _)| g).collect();
        if doubles.len() != 1 || doubles[0].deg() != 1 || parts.iter().any(|(_, k)| *k > 2) {
            return Err(Error::Validation(format!(
                "line {line} does not meet the curve in exactly one double point"
            )));
        }
        let mu0 = -&doubles[0].monic().coeff(0);
        let q = along(&mu0);
        if h.gradient().iter().any(|g| !g.eval(&q).is_zero()) {
            return Ok(Contact::Tangent);
        }
        let rows: Vec<Vec<Scalar>> = h
            .gradient()
            .iter()
            .map(|g| g.gradient().iter().map(|gg| gg.eval(&q)).collect())
            .collect();
        return match ExactMatrix::from_rows(field, 3, rows).rank() {
            2 => Ok(Contact::Node),
            1 => Ok(Contact::Cusp),
            r => Err(Error::Validation(format!(
                "line {line} passes through a singular point with Hessian rank {r}"
            ))),
        };
    }
    Err(Error::Validation(format!("no usable parametrization of line {line}")))
}

/// f = H · (the lines of the spec), with d = e + m: free with exponents
/// (e, e² − e − 1 − δ − 2κ) and τ(f) = (m − 1)² + m₀(e + 1) + δ(e + 2) + κ(e + 3).
/// The input is validated first; a disagreement of the classification with
/// either prediction is an inconsistency.
pub fn tangent_arrangement(spec: &TangentConeSpec, backend: &Backend) -> Result<TangentReport> {
    let h = &spec.h;
    let field = h.field();
    field.check_same(spec.apex.field())?;
    let e = h.degree();
    if e < 3 {
        return Err(Error::Precondition(format!("the curve must have degree >= 3, got {e}")));
    }
    if h.eval(spec.apex.coords()).is_zero() {
        return Err(Error::Precondition(format!("the apex {} lies on the curve", spec.apex)));
    }
    let lines = spec.lines();
    let arrangement = LineArrangement::new(field, lines.clone())?;
    if let Some(l) = lines.iter().find(|l| !l.contains(&spec.apex)) {
        return Err(Error::Validation(format!("line {l} misses the apex {}", spec.apex)));
    }
    for (group, want) in [
        (&spec.tangents, Contact::Tangent),
        (&spec.node_lines, Contact::Node),
        (&spec.cusp_lines, Contact::Cusp),
    ] {
        for l in group {
            let got = contact(h, &spec.apex, l)?;
            if got != want {
                return Err(Error::Validation(format!("line {l} is a {got:?} line, listed as {want:?}")));
            }
        }
    }
    let (m0, delta, kappa) = (
        spec.tangents.len() as u32,
        spec.node_lines.len() as u32,
        spec.cusp_lines.len() as u32,
    );
    let tau_h = global_tjurina(h, backend)?.tau;
    if tau_h != (delta + 2 * kappa) as usize {
        return Err(Error::Validation(format!(
            "tau(H) = {tau_h}, but {delta} nodes and {kappa} cusps account for {}",
            delta + 2 * kappa
        )));
    }
    let class_number = e * (e - 1) - 2 * delta - 3 * kappa;
    if m0 != class_number {
        return Err(Error::Validation(format!(
            "{m0} tangent lines given, the apex has {class_number}"
        )));
    }

    let m = m0 + delta + kappa;
    let d = e + m;
    let f = h * &arrangement.polynomial();
    let (a, b) = (e, e * e - e - 1 - delta - 2 * kappa);
    let expected_exponents = (a.min(b), a.max(b));
    let (m_u, e_u) = (m as usize, e as usize);
    let tau_ledger = (m_u - 1) * (m_u - 1)
        + m0 as usize * (e_u + 1)
        + delta as usize * (e_u + 2)
        + kappa as usize * (e_u + 3);
    let report = classify(&f, backend)?;
    if report.class != Classification::Free || report.exponents != Some(expected_exponents) {
        return Err(Error::Inconsistency(format!(
            "expected free with exponents {expected_exponents:?}, found {} {:?}",
            report.class, report.exponents
        )));
    }
    if report.tau != tau_ledger {
        return Err(Error::Inconsistency(format!(
            "tau(f) = {} but the local count gives {tau_ledger}",
            report.tau
        )));
    }
    Ok(TangentReport {
        field: field.to_string(),
        e,
        delta,
        kappa,
        m0,
        m,
        d,
        expected_exponents,
        tau_ledger,
        tau: report.tau,
        class: report.class,
        exponents: report.exponents,
        mdr: report.mdr,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentSearch {
    pub prime: u64,
    pub attempts: usize,
    pub spec: TangentConeSpec,
}

/// Lines through a, found from the roots of Res_x(g, ∂g/∂x) where g is H
/// with a moved to (1:0:0). None unless that binary form splits into linear
/// factors with multiplicities matching the contact of each line.
fn lines_from_apex(h: &HomogPoly, apex: &ProjPoint) -> Result<Option<TangentConeSpec>> {
    let field = h.field();
    let p = field.modulus().expect("the search runs over a prime field");
    let (m, inv) = frame(apex);
    let g = h.substitute_linear(&m);
    let gx = g.diff(Var::X);
    let (r, total) = eliminate(&g, &gx, Var::X, Var::Y)?;
    if r.is_zero() {
        return Ok(None);
    }
    // (line in moved coordinates, multiplicity as a root)
    let mut moved: Vec<([Scalar; 3], u32)> = Vec::new();
    let deficit = total - r.deg();
    if deficit > 0 {
        moved.push((coord(field, 2), deficit as u32));
    }
    for (factor, k) in r.squarefree()? {
        let roots = factor.roots_mod_p()?;
        if roots.len() != factor.deg() {
            return Ok(None);
        }
        for s in roots {
            let s = Scalar::residue(s, p);
            moved.push(([field.zero(), field.one(), -&s], k));
        }
    }
    let mut spec = TangentConeSpec {
        h: h.clone(),
        apex: apex.clone(),
        tangents: Vec::new(),
        node_lines: Vec::new(),
        cusp_lines: Vec::new(),
    };
    for (c, k) in moved {
        let back: [Scalar; 3] = std::array::from_fn(|j| {
            (0..3).fold(field.zero(), |acc, i| &acc + &(&c[i] * &inv[i][j]))
        });
        let line = ProjLine::new(back)?;
        let Ok(kind) = contact(h, apex, &line) else {
            return Ok(None);
        };
        match (kind, k) {
            (Contact::Tangent, 1) => spec.tangents.push(line),
            (Contact::Node, 2) => spec.node_lines.push(line),
            (Contact::Cusp, 3) => spec.cusp_lines.push(line),
            _ => return Ok(None),
        }
    }
    Ok(Some(spec))
}

/// Searches seeded primes and apexes for a prime field over which every
/// line of the construction is defined. H must have integer coefficients.
pub fn find_tangent_instance(h: &HomogPoly, seed: u64, max_attempts: usize) -> Result<TangentSearch> {
    if h.field() != Field::Rational {
        return Err(Error::Precondition("the search starts from a rational curve".into()));
    }
    if h.degree() < 3 {
        return Err(Error::Precondition(format!("the curve must have degree >= 3, got {}", h.degree())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while attempts < max_attempts {
        let p = random_primes(1, &mut rng)[0];
        let field = Field::Prime(p);
        let hp = h.reduce_mod(p)?;
        if hp.degree() != h.degree() || hp.is_zero() {
            continue;
        }
        for _ in 0..APEXES_PER_PRIME {
            if attempts >= max_attempts {
                break;
            }
            attempts += 1;
            let coords = [
                field.one(),
                Scalar::residue(rng.gen_range(0..p), p),
                Scalar::residue(rng.gen_range(0..p), p),
            ];
            if hp.eval(&coords).is_zero() {
                continue;
            }
            let apex = ProjPoint::new(coords)?;
            if let Some(spec) = lines_from_apex(&hp, &apex)? {
                return Ok(TangentSearch {
                    prime: p,
                    attempts,
                    spec,
                });
            }
        }
    }
    Err(Error::Validation(format!(
        "no prime field and apex splitting all lines within {max_attempts} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn instance(h: &str, seed: u64) -> TangentSearch {
        let h = parse_poly(h, Field::Rational).unwrap();
        find_tangent_instance(&h, seed, 20_000).unwrap()
    }

    #[test]
    fn nodal_cubic() {
        let found = instance("y^2*z - x^2*(x + z)", 1);
        let s = &found.spec;
        assert_eq!((s.tangents.len(), s.node_lines.len(), s.cusp_lines.len()), (4, 1, 0));
        let report = tangent_arrangement(s, &Backend::Exact).unwrap();
        assert_eq!((report.d, report.tau), (8, 37));
        assert_eq!(report.exponents, Some((3, 4)));
    }

    #[test]
    fn cuspidal_cubic() {
        let found = instance("y^2*z - x^3", 2);
        let s = &found.spec;
        assert_eq!((s.tangents.len(), s.node_lines.len(), s.cusp_lines.len()), (3, 0, 1));
        let report = tangent_arrangement(s, &Backend::Exact).unwrap();
        assert_eq!((report.d, report.tau), (7, 27));
        assert_eq!(report.exponents, Some((3, 3)));
    }

    #[test]
    fn wrong_role_is_rejected() {
        let found = instance("y^2*z - x^2*(x + z)", 3);
        let mut s = found.spec.clone();
        let node = s.node_lines.pop().unwrap();
        s.tangents.push(node);
        assert!(tangent_arrangement(&s, &Backend::Exact).is_err());
        let mut s = found.spec;
        s.tangents.pop();
        assert!(tangent_arrangement(&s, &Backend::Exact).is_err());
    }
}
