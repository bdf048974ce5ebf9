//! Integer coordinate changes of the projective plane with determinant 1.

use rand::Rng;

use super::poly::HomogPoly;
use super::scalar::{Field, Scalar};

/// An integer 3×3 matrix `m` with det 1, together with its inverse.
/// Acting on forms by f ↦ f∘m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unimodular {
    pub m: [[i64; 3]; 3],
    pub inv: [[i64; 3]; 3],
}

fn mat_mul(a: &[[i64; 3]; 3], b: &[[i64; 3]; 3]) -> [[i64; 3]; 3] {
    let mut c = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

const IDENTITY: [[i64; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

impl Unimodular {
    pub fn identity() -> Self {
        Unimodular {
            m: IDENTITY,
            inv: IDENTITY,
        }
    }

    /// A product of `steps` random elementary transvections with small
    /// multipliers, so entries stay small.
    pub fn random(rng: &mut impl Rng, steps: usize) -> Self {
        let mut m = IDENTITY;
        let mut inv = IDENTITY;
        for _ in 0..steps {
            let i = rng.gen_range(0..3);
            let j = (i + rng.gen_range(1..3)) % 3;
            let c = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..3);
            let mut e = IDENTITY;
            e[i][j] = c;
            let mut e_inv = IDENTITY;
            e_inv[i][j] = -c;
            m = mat_mul(&m, &e);
            inv = mat_mul(&e_inv, &inv);
        }
        Unimodular { m, inv }
    }

    pub fn inverse(&self) -> Self {
        Unimodular {
            m: self.inv,
            inv: self.m,
        }
    }

    fn scalars(field: Field, m: &[[i64; 3]; 3]) -> [[Scalar; 3]; 3] {
        m.map(|row| row.map(|v| field.int(v)))
    }

    /// f ↦ f∘m.
    pub fn apply(&self, f: &HomogPoly) -> HomogPoly {
        f.substitute_linear(&Self::scalars(f.field(), &self.m))
    }

    /// The point q with m·q = p, so that (f∘m)(q) = f(p).
    pub fn pull_point(&self, p: &[Scalar; 3]) -> [Scalar; 3] {
        mat_vec(&Self::scalars(p[0].field(), &self.inv), p)
    }

    /// m·p.
    pub fn push_point(&self, p: &[Scalar; 3]) -> [Scalar; 3] {
        mat_vec(&Self::scalars(p[0].field(), &self.m), p)
    }
}

pub fn mat_vec(m: &[[Scalar; 3]; 3], v: &[Scalar; 3]) -> [Scalar; 3] {
    let field = v[0].field();
    std::array::from_fn(|i| {
        (0..3).fold(field.zero(), |acc, k| &acc + &(&m[i][k] * &v[k]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_undoes_change() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = parse_poly("x^3 + 2*y^2*z - x*y*z", Field::Rational).unwrap();
        for _ in 0..10 {
            let t = Unimodular::random(&mut rng, 6);
            assert_eq!(mat_mul(&t.m, &t.inv), IDENTITY);
            assert_eq!(t.inverse().apply(&t.apply(&f)), f);
            let p = [Field::Rational.int(1), Field::Rational.int(-2), Field::Rational.int(5)];
            assert_eq!(t.apply(&f).eval(&t.pull_point(&p)), f.eval(&p));
        }
    }
}
