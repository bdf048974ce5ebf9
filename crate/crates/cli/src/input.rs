use std::path::Path;

use freecurve_core::{
    build_product, fixture, parse_poly, Error, Field, Fixture, LineArrangement, PencilProductJson,
    PencilProductSpec, ProjLine, Result,
};

/// Reads an input given as a file path, a fixture name or an inline
/// polynomial, in that order of preference.
pub fn load(input: &str, field: Option<Field>) -> Result<Fixture> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return from_text(input, &text, field.unwrap_or(Field::Rational), field.is_some());
    }
    match fixture(input) {
        Ok(fx) => match field {
            Some(f) if f != Field::Rational => reduce(fx, f),
            _ => Ok(fx),
        },
        Err(Error::Validation(msg)) if msg.starts_with("unknown fixture") => {
            let f = parse_poly(input, field.unwrap_or(Field::Rational)).map_err(|e| {
                Error::Validation(format!("`{input}` is not a file, a fixture name or a polynomial ({e})"))
            })?;
            Ok(curve(input, f))
        }
        Err(e) => Err(e),
    }
}

fn curve(name: &str, f: freecurve_core::HomogPoly) -> Fixture {
    Fixture {
        name: name.into(),
        f,
        arrangement: None,
        pencil: None,
    }
}

fn looks_like_lines(text: &str) -> bool {
    let mut any = false;
    for raw in text.lines() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        if parts.len() != 3 || parts.iter().any(|p| p.contains(['x', 'y', 'z'])) {
            return false;
        }
        any = true;
    }
    any
}

fn from_text(name: &str, text: &str, field: Field, forced: bool) -> Result<Fixture> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let json: PencilProductJson = serde_json::from_str(trimmed)?;
        let spec = PencilProductSpec::from_json(&json, forced.then_some(field))?;
        return Ok(Fixture {
            name: name.into(),
            f: build_product(&spec)?,
            arrangement: None,
            pencil: Some(spec),
        });
    }
    if looks_like_lines(trimmed) {
        let a = LineArrangement::parse(trimmed, field)?;
        return Ok(Fixture {
            name: name.into(),
            f: a.polynomial(),
            arrangement: Some(a),
            pencil: None,
        });
    }
    let body: String = trimmed
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(curve(name, parse_poly(&body, field)?))
}

/// Moves a rational fixture to GF(p).
fn reduce(fx: Fixture, field: Field) -> Result<Fixture> {
    let p = field.modulus().expect("prime field");
    let arrangement = match fx.arrangement {
        Some(a) if a.field() == Field::Rational => {
            let lines = a
                .lines()
                .iter()
                .map(|l| {
                    let c = l.covector();
                    let r = |i: usize| -> Result<freecurve_core::Scalar> {
                        let q = c[i].as_rational().expect("rational line");
                        freecurve_core::Scalar::from_rational(field, q)
                    };
                    ProjLine::new([r(0)?, r(1)?, r(2)?])
                })
                .collect::<Result<Vec<_>>>()?;
            Some(LineArrangement::new(field, lines)?)
        }
        Some(a) if a.field() == field => Some(a),
        _ => None,
    };
    let pencil = fx
        .pencil
        .map(|s| PencilProductSpec::from_json(&s.to_json(), Some(field)))
        .transpose()?;
    Ok(Fixture {
        name: fx.name,
        f: fx.f.reduce_mod(p)?,
        arrangement,
        pencil,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_kinds() {
        let q = Field::Rational;
        let a = from_text("t", "1 0 0\n0 1 0 # y\n0 0 1\n", q, false).unwrap();
        assert_eq!(a.arrangement.unwrap().degree(), 3);
        let c = from_text("t", "x^2 + y*z", q, false).unwrap();
        assert!(c.arrangement.is_none() && c.pencil.is_none());
        let p = from_text("t", r#"{"q1": "x", "q2": "y", "t": [1]}"#, q, false).unwrap();
        assert_eq!(p.f.degree(), 3);
    }

    #[test]
    fn fixture_over_a_prime_field() {
        let p = freecurve_core::algebra::modp::prime_congruent_one(2, 1 << 30);
        let fx = load("ex1", Some(Field::prime(p).unwrap())).unwrap();
        assert!(fx.arrangement.unwrap().field() != Field::Rational);
        assert!(load("ex1", None).unwrap().arrangement.is_some());
        assert_eq!(load("x*y*z", None).unwrap().f.degree(), 3);
    }
}
