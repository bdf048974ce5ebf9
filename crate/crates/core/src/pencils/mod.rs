//! Pencils u·q₁ + v·q₂ of plane curves: products of members, the explicit
//! syzygies they carry, discriminants, genericity and the classifiers built
//! on them.

mod classify;
mod discriminant;
pub mod resultant;
mod syzygies;
mod tangent;

pub use classify::{
    product_trichotomy, residual_trichotomy, generic_pencil_freeness, PencilCase, PencilTrichotomy, PencilFreeness,
};
pub use discriminant::{
    discriminant, genericity_check, is_concurrent_lines, singular_members, total_mu_check,
    DiscriminantForm, Genericity, RootRecord, SingularMemberRecord, TotalMu,
};
pub use resultant::macaulay_resultant;
pub use syzygies::{residual_syzygy, wedge_syzygy};
pub use tangent::{
    find_tangent_instance, tangent_arrangement, TangentConeSpec, TangentReport, TangentSearch,
};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{parse_poly, parse_uni, Field, HomogPoly, Scalar, UniPoly};
use crate::algebra::scalar::parse_rational;
use crate::error::{Error, Result};

/// The pencil spanned by two forms of one degree k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilSpec {
    pub q1: HomogPoly,
    pub q2: HomogPoly,
}

/// A member parameter: q₁ + t·q₂, or q₂ itself at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Finite(Scalar),
    Infinity,
}

impl PencilSpec {
    pub fn new(q1: HomogPoly, q2: HomogPoly) -> Result<Self> {
        q1.field().check_same(q2.field())?;
        if q1.is_zero() || q2.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if q1.degree() != q2.degree() || q1.degree() == 0 {
            return Err(Error::DegreeMismatch(format!(
                "pencil generators of degrees {} and {}",
                q1.degree(),
                q2.degree()
            )));
        }
        if q1.monic() == q2.monic() {
            return Err(Error::Precondition("pencil generators are proportional".into()));
        }
        Ok(PencilSpec { q1, q2 })
    }

    pub fn parse(q1: &str, q2: &str, field: Field) -> Result<Self> {
        PencilSpec::new(parse_poly(q1, field)?, parse_poly(q2, field)?)
    }

    pub fn k(&self) -> u32 {
        self.q1.degree()
    }

    pub fn field(&self) -> Field {
        self.q1.field()
    }

    /// The Hesse pencil x³ + y³ + z³, xyz.
    pub fn hesse(field: Field) -> Self {
        PencilSpec::parse("x^3 + y^3 + z^3", "x*y*z", field).unwrap()
    }

    /// x^k − y^k, y^k − z^k.
    pub fn fermat(k: u32, field: Field) -> Self {
        PencilSpec::parse(&format!("x^{k} - y^{k}"), &format!("y^{k} - z^{k}"), field).unwrap()
    }
}

/// q₁ + t·q₂, or q₂ at infinity.
pub fn build_member(p: &PencilSpec, t: &Param) -> HomogPoly {
    match t {
        Param::Finite(t) => &p.q1 + &p.q2.scale(t),
        Param::Infinity => p.q2.clone(),
    }
}

/// Members of a product, beyond q₁ and q₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MemberGroup {
    /// The member q₁ + t·q₂.
    Single(Scalar),
    /// The members q₁ + θ·q₂ over all roots θ of a squarefree φ; their
    /// product is defined over the base field even when the roots are not.
    Conjugates(UniPoly),
}

impl MemberGroup {
    pub fn size(&self) -> u32 {
        match self {
            MemberGroup::Single(_) => 1,
            MemberGroup::Conjugates(phi) => phi.deg() as u32,
        }
    }

    /// Monic polynomial whose roots are the parameters of the group.
    pub fn parameter_poly(&self) -> UniPoly {
        match self {
            MemberGroup::Single(t) => UniPoly::linear_root(t),
            MemberGroup::Conjugates(phi) => phi.monic(),
        }
    }

    /// Product of the members of the group:
    /// Π (q₁ + θ q₂) = Σ_j φ_j (−1)^{s−j} q₁^j q₂^{s−j} for monic φ of degree s.
    pub fn product(&self, p: &PencilSpec) -> HomogPoly {
        match self {
            MemberGroup::Single(t) => build_member(p, &Param::Finite(t.clone())),
            MemberGroup::Conjugates(phi) => {
                let phi = phi.monic();
                let s = phi.deg() as u32;
                let mut acc = HomogPoly::zero(p.field(), s * p.k());
                for j in 0..=s {
                    let c = phi.coeff(j as usize);
                    if c.is_zero() {
                        continue;
                    }
                    let c = if (s - j) % 2 == 1 { -&c } else { c };
                    let term = &p.q1.pow(j) * &p.q2.pow(s - j);
                    acc = &acc + &term.scale(&c);
                }
                acc
            }
        }
    }

    fn describe(&self) -> String {
        match self {
            MemberGroup::Single(t) => t.to_string(),
            MemberGroup::Conjugates(phi) => phi.display_in("t"),
        }
    }
}

/// f = (q₁) (q₂) Π members · h. By default q₁ and q₂ are members; either can
/// be left out through `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilProductSpec {
    pub pencil: PencilSpec,
    pub groups: Vec<MemberGroup>,
    pub h: Option<HomogPoly>,
    /// Whether q₁ and q₂ themselves are factors.
    pub base: [bool; 2],
}

/// File form: `{"q1": .., "q2": .., "t": [..], "h": .., "field": .., "base": ..}`.
/// Entries of `t` are rationals, or polynomials in t standing for all their
/// roots at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilProductJson {
    pub q1: String,
    pub q2: String,
    #[serde(default)]
    pub t: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<Vec<String>>,
}

impl PencilProductSpec {
    pub fn new(pencil: PencilSpec, groups: Vec<MemberGroup>, h: Option<HomogPoly>) -> Result<Self> {
        PencilProductSpec::with_base(pencil, groups, h, [true, true])
    }

    pub fn with_base(
        pencil: PencilSpec,
        groups: Vec<MemberGroup>,
        h: Option<HomogPoly>,
        base: [bool; 2],
    ) -> Result<Self> {
        let field = pencil.field();
        if let Some(h) = &h {
            field.check_same(h.field())?;
        }
        let mut seen = if base[0] { UniPoly::t(field) } else { UniPoly::one(field) };
        for g in &groups {
            let phi = g.parameter_poly();
            if phi.deg() == 0 {
                return Err(Error::Precondition("a member group needs a parameter".into()));
            }
            if phi.derivative().gcd(&phi).deg() > 0 {
                return Err(Error::Precondition(format!("repeated parameter in {}", g.describe())));
            }
            if seen.gcd(&phi).deg() > 0 {
                return Err(Error::Precondition(format!(
                    "parameter {} repeats an earlier member",
                    g.describe()
                )));
            }
            seen = seen.mul(&phi);
        }
        Ok(PencilProductSpec {
            pencil,
            groups,
            h,
            base,
        })
    }

    /// Number of pencil members in the product.
    pub fn m(&self) -> u32 {
        self.base.iter().filter(|&&b| b).count() as u32 + self.groups.iter().map(MemberGroup::size).sum::<u32>()
    }

    pub fn k(&self) -> u32 {
        self.pencil.k()
    }

    pub fn field(&self) -> Field {
        self.pencil.field()
    }

    pub fn degree(&self) -> u32 {
        self.m() * self.k() + self.h.as_ref().map_or(0, HomogPoly::degree)
    }

    /// Monic polynomial vanishing exactly at the finite parameters of the
    /// members (t = 0 for q₁).
    pub fn finite_parameters(&self) -> UniPoly {
        let field = self.field();
        let mut acc = if self.base[0] { UniPoly::t(field) } else { UniPoly::one(field) };
        for g in &self.groups {
            acc = acc.mul(&g.parameter_poly());
        }
        acc
    }

    /// Products of the individual groups, in the order q₁, q₂, groups.
    pub fn factors(&self) -> Vec<HomogPoly> {
        let mut out = Vec::new();
        if self.base[0] {
            out.push(self.pencil.q1.clone());
        }
        if self.base[1] {
            out.push(self.pencil.q2.clone());
        }
        out.extend(self.groups.iter().map(|g| g.product(&self.pencil)));
        out
    }

    pub fn from_json(json: &PencilProductJson, field: Option<Field>) -> Result<Self> {
        let field = match (field, &json.field) {
            (Some(f), _) => f,
            (None, Some(tag)) => tag.parse()?,
            (None, None) => Field::Rational,
        };
        let pencil = PencilSpec::parse(&json.q1, &json.q2, field)?;
        let groups = json
            .t
            .iter()
            .map(|v| parse_group(v, field))
            .collect::<Result<Vec<_>>>()?;
        let h = json.h.as_deref().map(|s| parse_poly(s, field)).transpose()?;
        let base = match &json.base {
            None => [true, true],
            Some(names) => {
                let mut b = [false, false];
                for n in names {
                    match n.as_str() {
                        "q1" => b[0] = true,
                        "q2" => b[1] = true,
                        other => {
                            return Err(Error::Validation(format!("unknown base member `{other}`")))
                        }
                    }
                }
                b
            }
        };
        PencilProductSpec::with_base(pencil, groups, h, base)
    }

    pub fn to_json(&self) -> PencilProductJson {
        PencilProductJson {
            q1: self.pencil.q1.to_string(),
            q2: self.pencil.q2.to_string(),
            t: self.groups.iter().map(|g| Value::String(g.describe())).collect(),
            h: self.h.as_ref().map(|h| h.to_string()),
            field: Some(self.field().to_string()),
            base: (self.base != [true, true]).then(|| {
                [("q1", self.base[0]), ("q2", self.base[1])]
                    .iter()
                    .filter(|(_, b)| *b)
                    .map(|(n, _)| n.to_string())
                    .collect()
            }),
        }
    }
}

fn parse_group(v: &Value, field: Field) -> Result<MemberGroup> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(Error::Validation(format!("bad parameter {other}"))),
    };
    if text.contains('t') {
        let phi = parse_uni(&text, 't', field)?;
        return match phi.deg() {
            0 => Err(Error::Validation(format!("parameter polynomial `{text}` is constant"))),
            1 => {
                let m = phi.monic();
                Ok(MemberGroup::Single(-&m.coeff(0)))
            }
            _ => Ok(MemberGroup::Conjugates(phi)),
        };
    }
    let q = parse_rational(&text)
        .ok_or_else(|| Error::Validation(format!("`{text}` is neither a rational nor a polynomial in t")))?;
    Ok(MemberGroup::Single(Scalar::from_rational(field, &q)?))
}

/// The product of all members, times h. Every member must be reduced and the
/// product as a whole must be reduced.
pub fn build_product(spec: &PencilProductSpec) -> Result<HomogPoly> {
    let field = spec.field();
    let factors = spec.factors();
    for f in &factors {
        if !f.is_square_free() {
            return Err(Error::Precondition(format!("member {f} is not reduced")));
        }
    }
    let mut f = HomogPoly::product(field, factors.iter());
    if let Some(h) = &spec.h {
        f = &f * h;
    }
    if !f.is_square_free() {
        return Err(Error::Precondition("the product has a repeated component".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> HomogPoly {
        parse_poly(s, Field::Rational).unwrap()
    }

    #[test]
    fn members() {
        let hesse = PencilSpec::hesse(Field::Rational);
        assert_eq!(build_member(&hesse, &Param::Infinity), q("x*y*z"));
        let t = Param::Finite(Field::Rational.int(-3));
        assert_eq!(build_member(&hesse, &t), q("x^3 + y^3 + z^3 - 3*x*y*z"));
        let fermat = PencilSpec::fermat(2, Field::Rational);
        assert_eq!(build_member(&fermat, &Param::Finite(Field::Rational.one())), q("x^2 - z^2"));
        assert!(PencilSpec::parse("x^2", "2*x^2", Field::Rational).is_err());
    }

    #[test]
    fn conjugate_group_product() {
        let p = PencilSpec::hesse(Field::Rational);
        let g = MemberGroup::Conjugates(parse_uni("t^3 + 27", 't', Field::Rational).unwrap());
        assert_eq!(
            g.product(&p),
            q("(x^3 + y^3 + z^3)^3 - 27*x^3*y^3*z^3")
        );
    }

    #[test]
    fn json_spec_and_product() {
        let text = r#"{"q1": "x^3 - y^3", "q2": "y^3 - z^3", "t": [1]}"#;
        let json: PencilProductJson = serde_json::from_str(text).unwrap();
        let spec = PencilProductSpec::from_json(&json, None).unwrap();
        assert_eq!((spec.m(), spec.degree()), (3, 9));
        assert_eq!(
            build_product(&spec).unwrap(),
            q("(x^3 - y^3)*(y^3 - z^3)*(x^3 - z^3)")
        );
        let back = PencilProductSpec::from_json(&spec.to_json(), None).unwrap();
        assert_eq!(back, spec);
        let dup = r#"{"q1": "x", "q2": "y", "t": ["1", "t - 1"]}"#;
        let json: PencilProductJson = serde_json::from_str(dup).unwrap();
        assert!(PencilProductSpec::from_json(&json, None).is_err());
    }

    #[test]
    fn product_with_only_one_base_member() {
        let text = r#"{"q1": "x", "q2": "y", "t": ["t^4 - 1"], "h": "x*y + z^2", "base": ["q1"]}"#;
        let json: PencilProductJson = serde_json::from_str(text).unwrap();
        let spec = PencilProductSpec::from_json(&json, None).unwrap();
        assert_eq!(spec.m(), 5);
        let f = build_product(&spec).unwrap();
        assert_eq!(f.monic(), q("x*(x^4 - y^4)*(x*y + z^2)").monic());
    }
}
