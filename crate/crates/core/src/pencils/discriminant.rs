use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::resultant::{eliminate, macaulay_resultant};
use super::{build_member, Param, PencilSpec};
use crate::algebra::matrix::descending_primes;
use crate::algebra::{homog_gcd, Backend, Field, HomogPoly, Scalar, UniPoly, Unimodular, Var};
use crate::error::{Error, Result};
use crate::syzygy::ar_slice;
use crate::tjurina::global_tjurina;

/// Coordinate changes tried by the transversality test.
const GENERICITY_ATTEMPTS: usize = 6;
/// Primes tried when looking for one that splits a parameter polynomial.
const SPLIT_PRIME_ATTEMPTS: usize = 4000;

/// One squarefree piece of the discriminant: the roots of `factor` (or the
/// point (0:1) when `factor` is None) each occur with `multiplicity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootRecord {
    /// Monic in t = v/u; None for the root (u:v) = (0:1).
    pub factor: Option<UniPoly>,
    pub multiplicity: u32,
}

impl RootRecord {
    pub fn degree(&self) -> usize {
        self.factor.as_ref().map_or(1, UniPoly::deg)
    }

    /// The factor as a binary form in u, v.
    pub fn binary_form(&self) -> String {
        match &self.factor {
            None => "u".into(),
            Some(g) => binary_form(g, g.deg()),
        }
    }
}

/// Renders Σ c_j t^j as the binary form Σ c_j u^{n−j} v^j.
fn binary_form(g: &UniPoly, n: usize) -> String {
    let field = g.field();
    let terms = (0..=n).filter_map(|j| {
        let c = g.coeff(j);
        (!c.is_zero()).then(|| {
            let m = crate::algebra::Monomial::new((n - j) as u32, j as u32, 0);
            (m, c)
        })
    });
    let form = HomogPoly::from_terms(field, n as u32, terms).unwrap();
    form.to_string().replace('x', "u").replace('y', "v")
}

/// D(u, v): the resultant of the partials of u·q₁ + v·q₂, up to a nonzero
/// scalar, stored through its dehomogenization D(1, t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantForm {
    pub k: u32,
    /// 3(k − 1)².
    pub degree: usize,
    /// D(1, t), scaled so its lowest nonzero coefficient is 1.
    pub poly: UniPoly,
    /// Multiplicity of the root (0:1), i.e. of the member q₂.
    pub infinity_multiplicity: usize,
    pub records: Vec<RootRecord>,
}

#[derive(Serialize)]
struct FactorJson {
    poly: String,
    multiplicity: u32,
}

#[derive(Serialize)]
struct DiscriminantJson {
    degree: usize,
    form: String,
    factors: Vec<FactorJson>,
    sum_mu: usize,
    distinct_roots: usize,
    multiplicities: Vec<u32>,
}

impl DiscriminantForm {
    pub fn sum_mu(&self) -> usize {
        self.records
            .iter()
            .map(|r| r.degree() * r.multiplicity as usize)
            .sum()
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        self.records.iter().map(RootRecord::degree).sum()
    }

    /// Root multiplicities over the closure, in descending order.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .records
            .iter()
            .flat_map(|r| std::iter::repeat(r.multiplicity).take(r.degree()))
            .collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn binary_form(&self) -> String {
        binary_form(&self.poly, self.degree)
    }
}

impl Serialize for DiscriminantForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiscriminantJson {
            degree: self.degree,
            form: self.binary_form(),
            factors: self
                .records
                .iter()
                .map(|r| FactorJson {
                    poly: r.binary_form(),
                    multiplicity: r.multiplicity,
                })
                .collect(),
            sum_mu: self.sum_mu(),
            distinct_roots: self.distinct_roots(),
            multiplicities: self.multiplicities(),
        }
        .serialize(s)
    }
}

fn gradient_resultant(g: &HomogPoly) -> Result<Scalar> {
    let [a, b, c] = g.gradient();
    if a.is_zero() || b.is_zero() || c.is_zero() {
        // A vanishing partial means g is a cone over a point, hence singular.
        return Ok(g.field().zero());
    }
    macaulay_resultant(&a, &b, &c)
}

/// The discriminant of the pencil, interpolated from 3(k−1)² + 1 values of
/// t; the samples are computed concurrently.
pub fn discriminant(p: &PencilSpec) -> Result<DiscriminantForm> {
    let k = p.k();
    if k < 2 {
        return Err(Error::Precondition("the discriminant needs k >= 2".into()));
    }
    let field = p.field();
    let n = 3 * (k as usize - 1) * (k as usize - 1);
    let ts: Vec<Scalar> = (0..=n).map(|i| field.int(i as i64)).collect();
    let workers = std::thread::available_parallelism().map_or(4, |c| c.get()).min(ts.len());
    let chunk = ts.len().div_ceil(workers);
    let values: Vec<Result<Scalar>> = std::thread::scope(|s| {
        let handles: Vec<_> = ts
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|t| gradient_resultant(&build_member(p, &Param::Finite(t.clone()))))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    let samples = ts
        .into_iter()
        .zip(values)
        .map(|(t, v)| Ok((t, v?)))
        .collect::<Result<Vec<_>>>()?;
    let poly = UniPoly::interpolate(field, &samples)?;
    if poly.is_zero() {
        return Err(Error::Precondition(
            "every member of the pencil is singular; a reduced pencil with zero-dimensional base locus is required"
                .into(),
        ));
    }
    let low = poly.coeffs().iter().find(|c| !c.is_zero()).unwrap().clone();
    let poly = poly.scale(&low.inv().unwrap());
    let infinity_multiplicity = n - poly.deg();
    let at_infinity = gradient_resultant(&p.q2)?;
    if at_infinity.is_zero() != (infinity_multiplicity > 0) {
        return Err(Error::Inconsistency(format!(
            "degree drop {infinity_multiplicity} at (0:1) disagrees with the singularity of q2"
        )));
    }
    let mut records: Vec<RootRecord> = poly
        .squarefree()?
        .into_iter()
        .map(|(factor, multiplicity)| RootRecord {
            factor: Some(factor),
            multiplicity,
        })
        .collect();
    if infinity_multiplicity > 0 {
        records.push(RootRecord {
            factor: None,
            multiplicity: infinity_multiplicity as u32,
        });
    }
    Ok(DiscriminantForm {
        k,
        degree: n,
        poly,
        infinity_multiplicity,
        records,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Genericity {
    /// gcd(q₁, q₂) is constant.
    pub zero_dimensional: bool,
    /// The base locus consists of k² distinct points.
    pub transverse: bool,
}

impl Genericity {
    pub fn generic(&self) -> bool {
        self.zero_dimensional && self.transverse
    }
}

/// The pencil is generic when q₁ and q₂ meet transversally in k² points:
/// after a random change of coordinates the resultant in z is a squarefree
/// binary form of degree k². Several changes are tried, since an unlucky
/// projection can merge two base points.
pub fn genericity_check(p: &PencilSpec) -> Result<Genericity> {
    let g = homog_gcd(&p.q1, &p.q2);
    if g.degree() > 0 {
        return Ok(Genericity {
            zero_dimensional: false,
            transverse: false,
        });
    }
    let k = p.k() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e7e);
    for attempt in 0..GENERICITY_ATTEMPTS {
        let u = if attempt == 0 {
            Unimodular::identity()
        } else {
            Unimodular::random(&mut rng, 6 + attempt)
        };
        let (a, b) = (u.apply(&p.q1), u.apply(&p.q2));
        let Ok((r, total)) = eliminate(&a, &b, Var::Z, Var::X) else {
            continue;
        };
        if r.is_zero() {
            continue;
        }
        let deficit = total - r.deg();
        if deficit <= 1 && r.gcd(&r.derivative()).deg() == 0 && total == k * k {
            return Ok(Genericity {
                zero_dimensional: true,
                transverse: true,
            });
        }
    }
    Ok(Genericity {
        zero_dimensional: true,
        transverse: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TotalMu {
    pub sum_mu: usize,
    pub expected: usize,
    pub ok: bool,
    pub distinct_roots: usize,
    /// At least three singular members.
    pub at_least_three: bool,
}

/// Σμ over the singular members against 3(k − 1)², with the count of
/// distinct singular members.
pub fn total_mu_check(p: &PencilSpec) -> Result<TotalMu> {
    let d = discriminant(p)?;
    let sum_mu = d.sum_mu();
    Ok(TotalMu {
        sum_mu,
        expected: d.degree,
        ok: sum_mu == d.degree,
        distinct_roots: d.distinct_roots(),
        at_least_three: d.distinct_roots() >= 3,
    })
}

/// A reduced form whose partials are linearly dependent depends on two
/// variables only after a change of coordinates, i.e. it is a union of
/// distinct lines through one point.
pub fn is_concurrent_lines(g: &HomogPoly) -> Result<bool> {
    if g.degree() < 2 || !g.is_square_free() {
        return Ok(false);
    }
    Ok(ar_slice(g, 0)?.dimension() > 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularMemberRecord {
    /// "(0:1)", a rational t, or "root of φ" for conjugate members.
    pub parameter: String,
    pub mu: u32,
    /// The member polynomial, when its parameter lies in the base field.
    pub member: Option<String>,
    /// τ of one member (all conjugates share it).
    pub tau: Option<usize>,
    /// Field in which τ was computed.
    pub tau_field: Option<String>,
    /// How many members the record stands for.
    pub count: usize,
    pub concurrent_lines: Option<bool>,
}

/// A prime p for which `g` (over Q) has deg g distinct roots mod p.
fn split_prime(g: &UniPoly) -> Option<(u64, Vec<u64>)> {
    for p in descending_primes().take(SPLIT_PRIME_ATTEMPTS) {
        let coeffs: Option<Vec<Scalar>> = g
            .coeffs()
            .iter()
            .map(|c| c.as_rational().and_then(|r| Scalar::from_rational(Field::Prime(p), r).ok()))
            .collect();
        let Some(coeffs) = coeffs else { continue };
        let gp = UniPoly::new(Field::Prime(p), coeffs);
        if gp.deg() != g.deg() {
            continue;
        }
        if let Ok(roots) = gp.roots_mod_p() {
            if roots.len() == g.deg() {
                return Some((p, roots));
            }
        }
    }
    None
}

/// τ and the shape of each singular member. Members whose parameter is not
/// in the base field are examined over a prime field in which the
/// parameter polynomial splits.
pub fn singular_members(p: &PencilSpec, disc: &DiscriminantForm, backend: &Backend) -> Result<Vec<SingularMemberRecord>> {
    let mut out = Vec::new();
    for r in &disc.records {
        match &r.factor {
            None => out.push(rational_member(&p.q2, "(0:1)".into(), r.multiplicity, backend)?),
            Some(g) if g.deg() == 1 => {
                let t = -&g.coeff(0);
                let member = build_member(p, &Param::Finite(t.clone()));
                out.push(rational_member(&member, t.to_string(), r.multiplicity, backend)?);
            }
            Some(g) => {
                let label = format!("root of {}", g.display_in("t"));
                let roots = match p.field() {
                    Field::Rational => split_prime(g),
                    Field::Prime(q) => g
                        .roots_mod_p()
                        .ok()
                        .filter(|roots| roots.len() == g.deg())
                        .map(|roots| (q, roots)),
                };
                let Some((prime, roots)) = roots else {
                    out.push(SingularMemberRecord {
                        parameter: label,
                        mu: r.multiplicity,
                        member: None,
                        tau: None,
                        tau_field: None,
                        count: g.deg(),
                        concurrent_lines: None,
                    });
                    continue;
                };
                let fp = Field::Prime(prime);
                let pencil_p = PencilSpec::new(p.q1.to_field(fp)?, p.q2.to_field(fp)?)?;
                let mut taus = Vec::new();
                let mut concurrent = true;
                for root in roots {
                    let member = build_member(&pencil_p, &Param::Finite(Scalar::residue(root, prime)));
                    taus.push(global_tjurina(&member, backend)?.tau);
                    concurrent &= is_concurrent_lines(&member)?;
                }
                if taus.iter().any(|&t| t != taus[0]) {
                    return Err(Error::Inconsistency(format!(
                        "conjugate members {label} have different Tjurina numbers {taus:?}"
                    )));
                }
                out.push(SingularMemberRecord {
                    parameter: label,
                    mu: r.multiplicity,
                    member: None,
                    tau: Some(taus[0]),
                    tau_field: Some(fp.to_string()),
                    count: g.deg(),
                    concurrent_lines: Some(concurrent),
                });
            }
        }
    }
    Ok(out)
}

fn rational_member(member: &HomogPoly, parameter: String, mu: u32, backend: &Backend) -> Result<SingularMemberRecord> {
    Ok(SingularMemberRecord {
        parameter,
        mu,
        member: Some(member.to_string()),
        tau: Some(global_tjurina(member, backend)?.tau),
        tau_field: Some(member.field().to_string()),
        count: 1,
        concurrent_lines: Some(is_concurrent_lines(member)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn fermat_conic_pencil() {
        let p = PencilSpec::fermat(2, Field::Rational);
        let d = discriminant(&p).unwrap();
        assert_eq!(d.degree, 3);
        assert_eq!(d.multiplicities(), vec![1, 1, 1]);
        assert_eq!(d.distinct_roots(), 3);
    }

    #[test]
    fn generic_conic_pencil_has_three_simple_roots() {
        let p = PencilSpec::parse("x^2 + y^2 + z^2", "x^2 + 2*x*y - 3*y^2 + 5*y*z - z^2 + 7*x*z", Field::Rational).unwrap();
        let d = discriminant(&p).unwrap();
        assert_eq!(d.sum_mu(), 3);
        assert_eq!(d.distinct_roots(), 3);
    }

    #[test]
    fn common_component_is_not_generic() {
        let p = PencilSpec::parse("x*(x + y)", "x*(y - z)", Field::Rational).unwrap();
        let g = genericity_check(&p).unwrap();
        assert!(!g.zero_dimensional && !g.generic());
        assert!(genericity_check(&PencilSpec::hesse(Field::Rational)).unwrap().generic());
        // Two conics tangent at (0:0:1).
        let tangent = PencilSpec::parse("x*z - y^2", "x*z - y^2 + x^2", Field::Rational).unwrap();
        let g = genericity_check(&tangent).unwrap();
        assert!(g.zero_dimensional && !g.transverse);
    }

    #[test]
    fn concurrent_lines() {
        let q = |s| parse_poly(s, Field::Rational).unwrap();
        assert!(is_concurrent_lines(&q("x^3 - y^3")).unwrap());
        assert!(!is_concurrent_lines(&q("x*y*z")).unwrap());
        assert!(!is_concurrent_lines(&q("x^2*y")).unwrap());
    }

    #[test]
    fn hesse_pencil() {
        let p = PencilSpec::hesse(Field::Rational);
        let d = discriminant(&p).unwrap();
        assert_eq!(d.degree, 12);
        assert_eq!(d.multiplicities(), vec![3, 3, 3, 3]);
        assert_eq!(d.infinity_multiplicity, 3);
        let t = total_mu_check(&p).unwrap();
        assert!(t.ok && t.at_least_three);
        assert_eq!((t.sum_mu, t.distinct_roots), (12, 4));
        // Each singular member is a triangle: three nodes, τ = 3 = μ.
        let members = singular_members(&p, &d, &Backend::default()).unwrap();
        assert!(members.iter().all(|r| r.tau == Some(3)));
        assert_eq!(members.iter().map(|r| r.count).sum::<usize>(), 4);
    }

    #[test]
    fn fermat_cubic_pencil_has_three_concurrent_members() {
        let p = PencilSpec::fermat(3, Field::Rational);
        let d = discriminant(&p).unwrap();
        assert_eq!((d.sum_mu(), d.distinct_roots()), (12, 3));
        let members = singular_members(&p, &d, &Backend::default()).unwrap();
        // t = 0 and t = 1 share one record; (0:1) has its own.
        assert_eq!(members.iter().map(|r| r.count).sum::<usize>(), 3);
        for r in &members {
            assert_eq!(r.concurrent_lines, Some(true));
            assert_eq!((r.mu, r.tau), (4, Some(4)));
        }
    }
}
