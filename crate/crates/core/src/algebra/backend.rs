//! Rank computations for graded multiplication maps, with an exact path and
//! a multi-prime modular path that cross-checks itself.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::matrix::{ExactMatrix, ModEchelon};
use super::modp::random_primes;
use super::monomial::{self, Monomial};
use super::poly::HomogPoly;
use super::scalar::Field;
use crate::error::{Error, Result};

/// How ranks of rational matrices are computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Backend {
    /// Fraction-free elimination over Z.
    Exact,
    /// Elimination modulo each prime; all ranks must agree.
    Modular { primes: Vec<u64> },
}

impl Backend {
    pub const DEFAULT_PRIMES: usize = 3;

    /// `count` random admissible primes drawn from a seeded generator.
    pub fn modular(count: usize, seed: u64) -> Backend {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Backend::Modular {
            primes: random_primes(count.max(1), &mut rng),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Modular { .. } => "modular",
        }
    }

    pub fn primes(&self) -> &[u64] {
        match self {
            Backend::Exact => &[],
            Backend::Modular { primes } => primes,
        }
    }
}

impl Default for Backend {
    fn default() -> Self {
        Backend::modular(Backend::DEFAULT_PRIMES, 0)
    }
}

/// Rank of the map ⊕_i S_{k - deg g_i} → S_k, (a_i) ↦ Σ a_i g_i.
///
/// Forms over GF(p) are handled exactly in GF(p) whatever the backend;
/// rational forms follow `backend`.
pub fn mult_map_rank(gens: &[HomogPoly], k: u32, backend: &Backend) -> Result<usize> {
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let field = first.field();
    for g in gens {
        field.check_same(g.field())?;
    }
    match (field, backend) {
        (Field::Prime(p), _) => rank_mod_p(gens, k, p),
        (Field::Rational, Backend::Exact) => Ok(mult_map_matrix(gens, k).rank()),
        (Field::Rational, Backend::Modular { primes }) => {
            let ranks: Vec<Result<usize>> = std::thread::scope(|s| {
                let handles: Vec<_> = primes
                    .iter()
                    .map(|&p| {
                        s.spawn(move || {
                            let reduced = gens
                                .iter()
                                .map(|g| g.reduce_mod(p))
                                .collect::<Result<Vec<_>>>()?;
                            rank_mod_p(&reduced, k, p)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            let ranks = ranks.into_iter().collect::<Result<Vec<usize>>>()?;
            if ranks.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::BackendDisagreement(ranks, primes.clone()));
            }
            Ok(ranks[0])
        }
    }
}

/// Matrix of the multiplication map: rows are indexed by the monomials of
/// S_k, columns by the pairs (i, monomial of S_{k - deg g_i}) in order.
pub fn mult_map_matrix(gens: &[HomogPoly], k: u32) -> ExactMatrix {
    let field = gens[0].field();
    let rows = monomial::dim(k);
    let shifts: Vec<Vec<Monomial>> = gens.iter().map(|g| shift_monomials(g, k)).collect();
    let cols: usize = shifts.iter().map(Vec::len).sum();
    let mut m = ExactMatrix::zeros(field, rows, cols);
    let mut col = 0;
    for (g, sh) in gens.iter().zip(&shifts) {
        for s in sh {
            for (mono, c) in g.terms() {
                m.set(mono.mul(s).index(), col, c.clone());
            }
            col += 1;
        }
    }
    m
}

/// Number of columns of [`mult_map_matrix`].
pub fn source_dim(gens: &[HomogPoly], k: u32) -> usize {
    gens.iter().map(|g| shift_monomials(g, k).len()).sum()
}

fn shift_monomials(g: &HomogPoly, k: u32) -> Vec<Monomial> {
    if g.degree() > k {
        Vec::new()
    } else {
        monomial::monomials(k - g.degree())
    }
}

fn rank_mod_p(gens: &[HomogPoly], k: u32, p: u64) -> Result<usize> {
    let cols = monomial::dim(k);
    let sparse: Vec<Vec<(Monomial, u32)>> = gens
        .iter()
        .map(|g| {
            g.terms()
                .map(|(m, c)| Ok((*m, c.reduce_mod(p)? as u32)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // Order the generator rows by their leading column so that most of the
    // reduction happens against pivots that already exist.
    let mut order: Vec<(usize, usize, Monomial)> = Vec::new();
    for (i, g) in sparse.iter().enumerate() {
        let Some(&(lead, _)) = g.first() else {
            continue;
        };
        for s in shift_monomials(&gens[i], k) {
            order.push((lead.mul(&s).index(), i, s));
        }
    }
    order.sort_by_key(|&(lead, i, _)| (lead, i));
    let mut ech = ModEchelon::new(p, cols);
    for (_, i, s) in order {
        if ech.is_full() {
            break;
        }
        let mut row = vec![0u32; cols];
        for &(m, c) in &sparse[i] {
            row[m.mul(&s).index()] = c;
        }
        ech.insert(row);
    }
    Ok(ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    #[test]
    fn backends_agree_on_jacobian_maps() {
        let f = parse_poly("x*y*z*(x-z)*(x+z)*(x-y)", Field::Rational).unwrap();
        let grad = f.gradient();
        let modular = Backend::modular(3, 11);
        for k in 0..12 {
            let exact = mult_map_rank(&grad, k, &Backend::Exact).unwrap();
            assert_eq!(mult_map_rank(&grad, k, &modular).unwrap(), exact, "k = {k}");
            assert_eq!(mult_map_matrix(&grad, k).rank(), exact);
        }
    }

    #[test]
    fn seeds_determine_primes() {
        assert_eq!(Backend::modular(3, 5), Backend::modular(3, 5));
        assert_ne!(Backend::modular(3, 5), Backend::modular(3, 6));
        assert_eq!(Backend::modular(3, 5).primes().len(), 3);
    }
}
