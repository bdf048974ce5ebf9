//! The worked examples, built by name so that checks need no input files.
//!
//! Arrangements whose lines need k-th roots of unity are realized over a
//! prime field p ≡ 1 (mod k); their defining polynomial is also kept over Q
//! as a product of pencil members.

use crate::algebra::modp::{prime_congruent_one, root_of_unity};
use crate::algebra::{parse_poly, parse_uni, Field, HomogPoly, Scalar, UniPoly};
use crate::arrangement::{LineArrangement, ProjLine};
use crate::error::{Error, Result};
use crate::pencils::{build_product, MemberGroup, PencilProductSpec, PencilSpec};

/// Names accepted by [`fixture`]; `k` and `m` are integer parameters.
pub const FIXTURE_NAMES: &[&str] = &[
    "ex1",
    "ex2a",
    "ex2b",
    "ex3",
    "ex5",
    "ex12i:k",
    "ex12i-xyz:k",
    "ex12ii",
    "ex14i:k",
    "ex14ii:m",
    "ex14ii-prime:m",
    "hesse",
    "hesse-m4",
    "fermat:k",
    "smooth-quartic",
];

/// Lower end of the search for split primes.
const SPLIT_PRIME_START: u64 = 1 << 30;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    /// The defining polynomial over Q.
    pub f: HomogPoly,
    /// The lines, over Q or over a split prime field.
    pub arrangement: Option<LineArrangement>,
    pub pencil: Option<PencilProductSpec>,
}

impl Fixture {
    fn curve(name: &str, f: HomogPoly) -> Self {
        Fixture {
            name: name.into(),
            f,
            arrangement: None,
            pencil: None,
        }
    }

    fn lines(name: &str, a: LineArrangement) -> Self {
        Fixture {
            name: name.into(),
            f: a.polynomial(),
            arrangement: Some(a),
            pencil: None,
        }
    }

    fn pencil(name: &str, spec: PencilProductSpec, lines: Option<LineArrangement>) -> Result<Self> {
        Ok(Fixture {
            name: name.into(),
            f: build_product(&spec)?,
            arrangement: lines,
            pencil: Some(spec),
        })
    }

    /// A damaged copy: the last line (or last member group, or a factor of
    /// the polynomial) is dropped. Used to show that checks can fail.
    pub fn corrupted(&self) -> Fixture {
        let mut out = self.clone();
        out.name = format!("{} (corrupted)", self.name);
        if let Some(a) = &self.arrangement {
            let mut lines = a.lines().to_vec();
            lines.pop();
            out.arrangement = LineArrangement::new(a.field(), lines).ok();
        }
        if let Some(spec) = &self.pencil {
            let mut spec = spec.clone();
            if spec.groups.pop().is_none() {
                spec.base[1] = false;
            }
            if let Ok(f) = build_product(&spec) {
                out.f = f;
            }
            out.pencil = Some(spec);
        } else if let Some(a) = &out.arrangement {
            if a.field() == Field::Rational {
                out.f = a.polynomial();
            }
        }
        if out.f == self.f {
            let x = parse_poly("x + 2*y + 3*z", Field::Rational).unwrap();
            out.f = &self.f * &x;
        }
        out
    }
}

fn rational(lines: &[[i64; 3]]) -> LineArrangement {
    LineArrangement::from_i64(Field::Rational, lines).unwrap()
}

const EX1: &[[i64; 3]] = &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, -1], [1, 0, 1], [1, -1, 0]];

fn ex2a() -> Vec<[i64; 3]> {
    let mut l = EX1.to_vec();
    l.extend([[1, 1, 0], [0, 1, -1]]);
    l
}

fn ex2b() -> Vec<[i64; 3]> {
    let mut l = ex2a();
    l.push([0, 1, 1]);
    l
}

fn ex3() -> Vec<[i64; 3]> {
    let mut l = ex2b();
    l.extend([
        [1, 2, 0],
        [1, -2, 0],
        [1, 0, 2],
        [1, 0, -2],
        [0, 1, -2],
        [0, 1, 2],
        [1, 1, -1],
        [1, -1, 1],
        [-1, 1, 1],
        [1, 1, 1],
    ]);
    l
}

/// Field and primitive k-th root of unity used to split x^k − y^k.
fn split_field(k: u32) -> (Field, Scalar) {
    if k <= 2 {
        let f = Field::Rational;
        return (f, f.int(if k == 2 { -1 } else { 1 }));
    }
    let p = prime_congruent_one(k as u64, SPLIT_PRIME_START);
    let w = root_of_unity(k as u64, p).expect("p is 1 mod k");
    (Field::Prime(p), Scalar::residue(w, p))
}

fn line(c: [Scalar; 3]) -> ProjLine {
    ProjLine::new(c).unwrap()
}

/// The 3k lines of (x^k − y^k)(y^k − z^k)(x^k − z^k).
fn fermat_lines(k: u32) -> (Field, Vec<ProjLine>) {
    let (field, w) = split_field(k);
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        for i in 0..k {
            let mut c = [zero.clone(), zero.clone(), zero.clone()];
            c[a] = one.clone();
            c[b] = -&w.pow(i as u64);
            out.push(line(c));
        }
    }
    (field, out)
}

fn coordinate_lines(field: Field) -> Vec<ProjLine> {
    (0..3)
        .map(|i| line(std::array::from_fn(|j| if i == j { field.one() } else { field.zero() })))
        .collect()
}

/// The 12 lines of xyz·Π over θ³ = −27 of (x³ + y³ + z³ + θxyz).
fn hesse_lines() -> LineArrangement {
    let (field, w) = split_field(3);
    let mut lines = coordinate_lines(field);
    for i in 0..3u64 {
        for j in 0..3u64 {
            lines.push(line([field.one(), w.pow(i), w.pow(2 * i + j)]));
        }
    }
    LineArrangement::new(field, lines).unwrap()
}

fn fermat_product(k: u32, h: Option<&str>) -> Result<PencilProductSpec> {
    let q = Field::Rational;
    let h = h.map(|s| parse_poly(s, q)).transpose()?;
    PencilProductSpec::new(PencilSpec::fermat(k, q), vec![MemberGroup::Single(q.one())], h)
}

/// Members x + t·y with t^n = (−1)^n, whose product is ±(x^n − y^n).
fn power_group(n: u32) -> MemberGroup {
    let q = Field::Rational;
    let sign = if n % 2 == 0 { -1 } else { 1 };
    let mut c = vec![0i64; n as usize + 1];
    c[0] = sign;
    c[n as usize] = 1;
    let phi = UniPoly::from_i64s(q, &c);
    if n == 1 {
        MemberGroup::Single(-&phi.coeff(0))
    } else {
        MemberGroup::Conjugates(phi)
    }
}

fn param(name: &str, arg: Option<&str>, min: u32) -> Result<u32> {
    let arg = arg.ok_or_else(|| Error::Validation(format!("fixture `{name}` needs a parameter, as in `{name}:{min}`")))?;
    let v: u32 = arg
        .parse()
        .map_err(|_| Error::Validation(format!("bad parameter `{arg}` for fixture `{name}`")))?;
    if v < min || v > 12 {
        return Err(Error::Validation(format!("fixture `{name}` takes a parameter in [{min}, 12], got {v}")));
    }
    Ok(v)
}

/// Builds a fixture by name, as listed in [`FIXTURE_NAMES`].
pub fn fixture(name: &str) -> Result<Fixture> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let q = Field::Rational;
    match base {
        "ex1" => Ok(Fixture::lines(name, rational(EX1))),
        "ex2a" => Ok(Fixture::lines(name, rational(&ex2a()))),
        "ex2b" => Ok(Fixture::lines(name, rational(&ex2b()))),
        "ex3" => Ok(Fixture::lines(name, rational(&ex3()))),
        "ex5" | "ex12i" => {
            let k = if base == "ex5" { 3 } else { param(base, arg, 2)? };
            let (field, lines) = fermat_lines(k);
            Fixture::pencil(name, fermat_product(k, None)?, Some(LineArrangement::new(field, lines)?))
        }
        "ex12i-xyz" => {
            let k = param(base, arg, 2)?;
            let (field, mut lines) = fermat_lines(k);
            lines.extend(coordinate_lines(field));
            let spec = fermat_product(k, Some("x*y*z"))?;
            Fixture::pencil(name, spec, Some(LineArrangement::new(field, lines)?))
        }
        "ex14i" => {
            let k = param(base, arg, 2)?;
            let (field, mut lines) = fermat_lines(k);
            lines.push(coordinate_lines(field).remove(0));
            let spec = fermat_product(k, Some("x"))?;
            Fixture::pencil(name, spec, Some(LineArrangement::new(field, lines)?))
        }
        "ex12ii" | "hesse" | "hesse-m4" => {
            let pencil = PencilSpec::hesse(q);
            let (phi, base_members, lines) = match base {
                "ex12ii" => ("t^3 + 27", [true, true], None),
                "hesse" => ("t^3 + 27", [false, true], Some(hesse_lines())),
                _ => ("t^2 - 3*t + 9", [true, true], None),
            };
            let group = MemberGroup::Conjugates(parse_uni(phi, 't', q)?);
            let spec = PencilProductSpec::with_base(pencil, vec![group], None, base_members)?;
            Fixture::pencil(name, spec, lines)
        }
        "ex14ii" | "ex14ii-prime" => {
            let m = param(base, arg, 3)?;
            let pencil = PencilSpec::parse("x", "y", q)?;
            let h = parse_poly("x*y + z^2", q)?;
            let (group, base_members) = if base == "ex14ii" {
                (power_group(m - 1), [true, false])
            } else {
                (power_group(m - 2), [true, true])
            };
            let spec = PencilProductSpec::with_base(pencil, vec![group], Some(h), base_members)?;
            Fixture::pencil(name, spec, None)
        }
        "fermat" => {
            let k = param(base, arg, 1)?;
            let spec = PencilProductSpec::new(PencilSpec::fermat(k, q), Vec::new(), None)?;
            Fixture::pencil(name, spec, None)
        }
        "smooth-quartic" => Ok(Fixture::curve(name, parse_poly("x^4 + y^4 + z^4", q)?)),
        _ => Err(Error::Validation(format!(
            "unknown fixture `{name}`; known: {}",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Compares a polynomial over Q with one over GF(p), up to a scalar.
    fn same_curve(f: &HomogPoly, g: &HomogPoly) -> bool {
        let fp = f.reduce_mod(g.field().modulus().unwrap()).unwrap();
        fp.monic() == g.monic()
    }

    #[test]
    fn split_arrangements_match_their_polynomials() {
        for name in ["ex5", "ex12i:4", "ex12i-xyz:3", "ex14i:3", "hesse"] {
            let fx = fixture(name).unwrap();
            let a = fx.arrangement.as_ref().unwrap();
            assert!(same_curve(&fx.f, &a.polynomial()), "{name}");
        }
        let fx = fixture("ex12i:2").unwrap();
        let a = fx.arrangement.unwrap();
        assert_eq!(a.field(), Field::Rational);
        assert_eq!(a.polynomial().monic(), fx.f.monic());
    }

    #[test]
    fn degrees() {
        let cases = [
            ("ex1", 6),
            ("ex2a", 8),
            ("ex2b", 9),
            ("ex3", 19),
            ("ex5", 9),
            ("ex12ii", 15),
            ("hesse", 12),
            ("hesse-m4", 12),
            ("ex14ii:5", 7),
            ("ex14ii-prime:5", 7),
            ("ex14i:3", 10),
            ("fermat:5", 10),
        ];
        for (name, d) in cases {
            assert_eq!(fixture(name).unwrap().f.degree(), d, "{name}");
        }
    }

    #[test]
    fn power_group_products() {
        let q = Field::Rational;
        let p = PencilSpec::parse("x", "y", q).unwrap();
        for n in 1..6 {
            let g = power_group(n).product(&p);
            let want = parse_poly(&format!("x^{n} - y^{n}"), q).unwrap();
            assert_eq!(g.monic(), want.monic(), "n = {n}");
        }
    }

    #[test]
    fn bad_names() {
        assert!(fixture("ex12i").is_err());
        assert!(fixture("ex12i:x").is_err());
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn corruption_changes_the_curve() {
        for name in ["ex1", "ex5", "ex12ii", "fermat:3"] {
            let fx = fixture(name).unwrap();
            assert_ne!(fx.corrupted().f, fx.f, "{name}");
        }
    }
}
