//! Exact linear algebra: fraction-free elimination over Z (for rational
//! matrices) and plain row reduction over GF(p).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{axpy_mod, inv_mod, is_admissible_prime, scale_mod, PRIME_LOWER, PRIME_UPPER};
use super::scalar::{Field, Scalar};

/// A dense matrix over one of the exact fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            entries.extend(row);
        }
        ExactMatrix {
            rows: nrows,
            cols,
            field,
            entries,
        }
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        ExactMatrix::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.int(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Rational => bareiss(self.integer_rows(), self.cols).pivots.len(),
            Field::Prime(p) => rref_mod(self.residue_rows(p), self.cols, p).1.len(),
        }
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return self.field.one();
        }
        match self.field {
            Field::Rational => {
                let scale: BigInt = self.row_denominators().iter().product();
                let e = bareiss(self.integer_rows(), self.cols);
                if e.pivots.len() < self.rows {
                    return self.field.zero();
                }
                let det = e.rows[self.rows - 1][self.cols - 1].clone();
                let det = if e.swaps % 2 == 1 { -det } else { det };
                Scalar::Rat(BigRational::new(det, scale))
            }
            Field::Prime(p) => {
                let mut rows = self.residue_rows(p);
                let n = self.rows;
                let mut det = 1u64;
                for c in 0..n {
                    let Some(piv) = (c..n).find(|&r| rows[r][c] != 0) else {
                        return self.field.zero();
                    };
                    if piv != c {
                        rows.swap(piv, c);
                        det = (p - det) % p;
                    }
                    let pv = rows[c][c] as u64;
                    det = det * pv % p;
                    let inv = inv_mod(pv, p).unwrap() as u32;
                    let (top, bottom) = rows.split_at_mut(c + 1);
                    let prow = &top[c];
                    for row in bottom.iter_mut() {
                        let v = row[c];
                        if v != 0 {
                            let w = (p - (v as u64 * inv as u64) % p) % p;
                            axpy_mod(&mut row[c..], &prow[c..], w as u32, p as u32);
                        }
                    }
                }
                Scalar::residue(det, p)
            }
        }
    }

    /// A basis of {v : M v = 0}. Every vector is re-checked by substitution.
    /// Over Q the vectors are primitive integer vectors.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let basis = match self.field {
            Field::Rational => {
                let e = bareiss(self.integer_rows(), self.cols);
                integer_kernel(&e.rows, &e.pivots, self.cols)
                    .into_iter()
                    .map(|v| {
                        v.into_iter()
                            .map(|x| Scalar::Rat(BigRational::from_integer(x)))
                            .collect()
                    })
                    .collect::<Vec<Vec<Scalar>>>()
            }
            Field::Prime(p) => {
                let (rref, pivots) = rref_mod(self.residue_rows(p), self.cols, p);
                kernel_mod(&rref, &pivots, self.cols, p)
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| Scalar::residue(x as u64, p)).collect())
                    .collect()
            }
        };
        for v in &basis {
            assert!(
                self.mul_vec(v).iter().all(Scalar::is_zero),
                "nullspace vector failed re-substitution"
            );
        }
        basis
    }

    /// Reduced row echelon form (nonzero rows only) and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        match self.field {
            Field::Rational => {
                let e = bareiss(self.integer_rows(), self.cols);
                let mut out: Vec<Vec<BigRational>> = e
                    .rows
                    .iter()
                    .take(e.pivots.len())
                    .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
                    .collect();
                for (i, &c) in e.pivots.iter().enumerate().rev() {
                    let inv = out[i][c].recip();
                    for x in out[i].iter_mut() {
                        *x *= &inv;
                    }
                    let pivot_row = out[i].clone();
                    for row in out.iter_mut().take(i) {
                        let f = row[c].clone();
                        if !f.is_zero() {
                            for (x, y) in row.iter_mut().zip(&pivot_row) {
                                *x -= &f * y;
                            }
                        }
                    }
                }
                let rows = out
                    .into_iter()
                    .map(|r| r.into_iter().map(Scalar::Rat).collect())
                    .collect();
                (ExactMatrix::from_rows(self.field, self.cols, rows), e.pivots)
            }
            Field::Prime(p) => {
                let (rref, pivots) = rref_mod(self.residue_rows(p), self.cols, p);
                let rows = rref
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| Scalar::residue(x as u64, p)).collect())
                    .collect();
                (ExactMatrix::from_rows(self.field, self.cols, rows), pivots)
            }
        }
    }

    /// The kernel in reduced row echelon form: a canonical basis, with the
    /// leading entry of each vector equal to 1.
    ///
    /// Over Q the kernel is computed modulo a sequence of primes, lifted by
    /// Chinese remaindering and rational reconstruction, and accepted only
    /// once every lifted vector satisfies M·v = 0 exactly. Since the nullity
    /// modulo p never undershoots the rational nullity, a verified lift of
    /// full modular dimension is the whole rational kernel.
    pub fn canonical_kernel(&self) -> Vec<Vec<Scalar>> {
        match self.field {
            Field::Prime(p) => {
                let k = kernel_rref_mod(self.residue_rows(p), self.cols, p);
                k.into_iter()
                    .map(|v| v.into_iter().map(|x| Scalar::residue(x as u64, p)).collect())
                    .collect()
            }
            Field::Rational => self.rational_kernel_multimodular(),
        }
    }

    fn rational_kernel_multimodular(&self) -> Vec<Vec<Scalar>> {
        let rows = self.integer_rows();
        let mut modulus = BigInt::one();
        let mut lifted: Vec<Vec<BigInt>> = Vec::new();
        let mut pattern: Option<Vec<usize>> = None;
        for p in descending_primes() {
            let residue_rows: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| r.iter().map(|v| bigint_residue(v, p)).collect())
                .collect();
            let k = kernel_rref_mod(residue_rows, self.cols, p);
            let leads: Vec<usize> = k
                .iter()
                .map(|v| v.iter().position(|&x| x != 0).unwrap())
                .collect();
            match &pattern {
                // Fewer kernel vectors or an earlier leading pattern means the
                // previous primes were unlucky: start over.
                Some(prev) if (leads.len(), &leads) >= (prev.len(), prev) && &leads != prev => {
                    continue;
                }
                Some(prev) if &leads == prev => {
                    let pb = BigInt::from(p);
                    for (acc, v) in lifted.iter_mut().zip(&k) {
                        for (a, &x) in acc.iter_mut().zip(v) {
                            *a = crt(a, &modulus, x, p);
                        }
                    }
                    modulus *= pb;
                }
                _ => {
                    pattern = Some(leads);
                    modulus = BigInt::from(p);
                    lifted = k
                        .iter()
                        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
                        .collect();
                }
            }
            if let Some(candidate) = self.reconstruct_and_check(&lifted, &modulus) {
                return candidate;
            }
        }
        unreachable!("prime sequence is infinite")
    }

    fn reconstruct_and_check(&self, lifted: &[Vec<BigInt>], modulus: &BigInt) -> Option<Vec<Vec<Scalar>>> {
        let mut out = Vec::with_capacity(lifted.len());
        for v in lifted {
            let vec: Vec<Scalar> = v
                .iter()
                .map(|a| rational_reconstruction(a, modulus).map(Scalar::Rat))
                .collect::<Option<_>>()?;
            if !self.mul_vec(&vec).iter().all(Scalar::is_zero) {
                return None;
            }
            out.push(vec);
        }
        Some(out)
    }

    fn row_denominators(&self) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().fold(BigInt::one(), |acc, s| {
                    acc.lcm(s.as_rational().expect("rational entry").denom())
                })
            })
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        let dens = self.row_denominators();
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|s| {
                        let q = s.as_rational().unwrap();
                        q.numer() * (&dens[i] / q.denom())
                    })
                    .collect()
            })
            .collect()
    }

    fn residue_rows(&self, p: u64) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|s| s.reduce_mod(p).unwrap() as u32)
                    .collect()
            })
            .collect()
    }
}

struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

/// Fraction-free (Bareiss) elimination. After the call the first
/// `pivots.len()` rows form an integer row echelon form whose entries are
/// minors of the input, so coefficient growth stays polynomial.
fn bareiss(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut swaps = 0;
    let mut k = 0;
    for c in 0..cols {
        if k == n {
            break;
        }
        // Prefer the smallest nonzero pivot to limit growth.
        let Some(piv) = (k..n)
            .filter(|&r| !rows[r][c].is_zero())
            .min_by_key(|&r| rows[r][c].bits())
        else {
            continue;
        };
        if piv != k {
            rows.swap(piv, k);
            swaps += 1;
        }
        let (top, bottom) = rows.split_at_mut(k + 1);
        let prow = &top[k];
        let pv = &prow[c];
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = pv * &row[j] - &f * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pv.clone();
        pivots.push(c);
        k += 1;
    }
    Echelon {
        rows,
        pivots,
        swaps,
    }
}

fn integer_kernel(rows: &[Vec<BigInt>], pivots: &[usize], cols: usize) -> Vec<Vec<BigInt>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x: Vec<BigRational> = vec![BigRational::zero(); cols];
        x[free] = BigRational::one();
        for (i, &c) in pivots.iter().enumerate().rev() {
            let mut s = BigRational::zero();
            for j in c + 1..cols {
                if !rows[i][j].is_zero() && !x[j].is_zero() {
                    s += &x[j] * BigRational::from_integer(rows[i][j].clone());
                }
            }
            x[c] = -s / BigRational::from_integer(rows[i][c].clone());
        }
        out.push(primitive_integer_vector(&x));
    }
    out
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
pub fn primitive_integer_vector(x: &[BigRational]) -> Vec<BigInt> {
    let den = x.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() {
        let neg = ints.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
        let g = if neg { -g } else { g };
        for v in ints.iter_mut() {
            *v = &*v / &g;
        }
    }
    ints
}

/// Reduced row echelon form over GF(p). Returns the nonzero rows and the
/// pivot columns.
pub fn rref_mod(mut rows: Vec<Vec<u32>>, cols: usize, p: u64) -> (Vec<Vec<u32>>, Vec<usize>) {
    let p32 = p as u32;
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..cols {
        if k == n {
            break;
        }
        let Some(piv) = (k..n).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(piv, k);
        let inv = inv_mod(rows[k][c] as u64, p).unwrap() as u32;
        scale_mod(&mut rows[k][c..], inv, p32);
        let prow = rows[k].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == k || row[c] == 0 {
                continue;
            }
            let w = p32 - row[c];
            axpy_mod(&mut row[c..], &prow[c..], w, p32);
        }
        pivots.push(c);
        k += 1;
    }
    rows.truncate(k);
    (rows, pivots)
}

fn kernel_mod(rref: &[Vec<u32>], pivots: &[usize], cols: usize, p: u64) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![0u32; cols];
            x[free] = 1;
            for (i, &c) in pivots.iter().enumerate() {
                let v = rref[i][free];
                x[c] = ((p - v as u64) % p) as u32;
            }
            x
        })
        .collect()
}

/// Kernel basis of the matrix, itself brought to reduced row echelon form.
fn kernel_rref_mod(rows: Vec<Vec<u32>>, cols: usize, p: u64) -> Vec<Vec<u32>> {
    let (rref, pivots) = rref_mod(rows, cols, p);
    let kernel = kernel_mod(&rref, &pivots, cols, p);
    rref_mod(kernel, cols, p).0
}

/// Admissible primes in decreasing order, starting just below 2^31.
pub fn descending_primes() -> impl Iterator<Item = u64> {
    (PRIME_LOWER + 1..PRIME_UPPER)
        .rev()
        .filter(|&p| is_admissible_prime(p))
}

/// x ≡ a (mod m), x ≡ b (mod p), with 0 ≤ x < m·p.
fn crt(a: &BigInt, m: &BigInt, b: u32, p: u64) -> BigInt {
    let a_mod = bigint_residue(a, p) as u64;
    let m_mod = bigint_residue(m, p) as u64;
    let diff = (b as u64 + p - a_mod) % p;
    let t = diff * inv_mod(m_mod, p).unwrap() % p;
    a + m * BigInt::from(t)
}

/// The fraction n/d with |n|, |d| ≤ sqrt(m/2) congruent to `a` modulo `m`,
/// if one exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Incremental row echelon form over GF(p), used to compute ranks of large
/// sparse-ish matrices one row at a time. Pivot rows are stored from their
/// pivot column onwards with a leading 1.
pub struct ModEchelon {
    p: u32,
    cols: usize,
    pivots: Vec<Option<Vec<u32>>>,
    rank: usize,
}

impl ModEchelon {
    pub fn new(p: u64, cols: usize) -> Self {
        ModEchelon {
            p: p as u32,
            cols,
            pivots: vec![None; cols],
            rank: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_full(&self) -> bool {
        self.rank == self.cols
    }

    /// Reduces `row` against the stored pivots; keeps it if independent.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u32>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let p = self.p;
        for c in 0..self.cols {
            let v = row[c];
            if v == 0 {
                continue;
            }
            match &self.pivots[c] {
                Some(piv) => axpy_mod(&mut row[c..], piv, p - v, p),
                None => {
                    let inv = inv_mod(v as u64, p as u64).unwrap() as u32;
                    let mut tail = row.split_off(c);
                    scale_mod(&mut tail, inv, p);
                    self.pivots[c] = Some(tail);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Converts a big integer to a residue.
pub fn bigint_residue(n: &BigInt, p: u64) -> u32 {
    n.mod_floor(&BigInt::from(p)).to_u32().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: u64 = 1073741827;

    #[test]
    fn identity_has_trivial_kernel() {
        for field in [Field::Rational, Field::Prime(P)] {
            let m = ExactMatrix::identity(field, 3);
            assert!(m.nullspace().is_empty());
            assert_eq!(m.rank(), 3);
            assert!(m.determinant().is_one());
        }
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        for field in [Field::Rational, Field::Prime(P)] {
            let m = ExactMatrix::zeros(field, 2, 5);
            assert_eq!(m.nullspace().len(), 5);
            assert_eq!(m.rank(), 0);
        }
    }

    #[test]
    fn determinants_match_cofactor_expansion() {
        let rows = vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]];
        // 2(-6-20) + 1(-2-0) = -54
        let q = ExactMatrix::from_i64(Field::Rational, &rows);
        assert_eq!(q.determinant(), Field::Rational.int(-54));
        let fp = ExactMatrix::from_i64(Field::Prime(P), &rows);
        assert_eq!(fp.determinant(), Field::Prime(P).int(-54));
        let singular = ExactMatrix::from_i64(Field::Rational, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.determinant().is_zero());
    }

    #[test]
    fn rational_entries() {
        let half = Scalar::Rat(BigRational::new(1.into(), 2.into()));
        let q = Field::Rational;
        let m = ExactMatrix::from_rows(q, 2, vec![vec![half.clone(), q.one()], vec![q.one(), q.int(2)]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace(), vec![vec![q.int(2), q.int(-1)]]);
        let m = ExactMatrix::from_rows(q, 2, vec![vec![half.clone(), q.zero()], vec![q.zero(), half]]);
        assert_eq!(m.determinant(), Scalar::Rat(BigRational::new(1.into(), 4.into())));
    }

    /// Builds a random 50x80 integer matrix of prescribed rank as a product
    /// of random 50xr and rx80 factors, then compares the rank found by
    /// elimination on the original against elimination on a row- and
    /// column-shuffled copy.
    #[test]
    fn nullity_is_stable_under_shuffled_pivoting() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for target in [17usize, 35, 50] {
            let a: Vec<Vec<i64>> = (0..50).map(|_| (0..target).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..target).map(|_| (0..80).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let m: Vec<Vec<i64>> = (0..50)
                .map(|i| (0..80).map(|j| (0..target).map(|k| a[i][k] * b[k][j]).sum()).collect())
                .collect();
            let mut row_perm: Vec<usize> = (0..50).collect();
            let mut col_perm: Vec<usize> = (0..80).collect();
            row_perm.shuffle(&mut rng);
            col_perm.shuffle(&mut rng);
            let shuffled: Vec<Vec<i64>> = row_perm
                .iter()
                .map(|&i| col_perm.iter().map(|&j| m[i][j]).collect())
                .collect();
            for field in [Field::Rational, Field::Prime(P)] {
                let m1 = ExactMatrix::from_i64(field, &m);
                let m2 = ExactMatrix::from_i64(field, &shuffled);
                let k1 = m1.nullspace();
                let k2 = m2.nullspace();
                assert_eq!(k1.len(), k2.len());
                assert_eq!(k1.len() + m1.rank(), 80);
                let mut inc = ModEchelon::new(P, 80);
                for row in &m {
                    inc.insert(row.iter().map(|&v| v.rem_euclid(P as i64) as u32).collect());
                }
                assert_eq!(inc.rank(), m1.rank());
            }
        }
    }

    #[test]
    fn multimodular_kernel_matches_fraction_free_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let q = Field::Rational;
        for _ in 0..5 {
            let a: Vec<Vec<i64>> = (0..12).map(|_| (0..6).map(|_| rng.gen_range(-40..40)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..6).map(|_| (0..15).map(|_| rng.gen_range(-40..40)).collect()).collect();
            let m: Vec<Vec<i64>> = (0..12)
                .map(|i| (0..15).map(|j| (0..6).map(|k| a[i][k] * b[k][j]).sum()).collect())
                .collect();
            let m = ExactMatrix::from_i64(q, &m);
            let kernel = m.canonical_kernel();
            let reference = ExactMatrix::from_rows(q, 15, m.nullspace()).rref().0;
            assert_eq!(ExactMatrix::from_rows(q, 15, kernel), reference);
        }
    }

    #[test]
    fn reconstructs_small_fractions() {
        let m = BigInt::from(1000003u64) * BigInt::from(1000033u64);
        let target = BigRational::new(BigInt::from(-355), BigInt::from(113));
        // Build the residue through CRT of the two prime images.
        let image = |p: u64| -> u32 {
            let n = Scalar::from_rational(Field::Prime(p), &target);
            n.unwrap().to_i64().unwrap() as u32
        };
        let a = crt(&BigInt::from(image(1000003)), &BigInt::from(1000003u64), image(1000033), 1000033);
        assert_eq!(rational_reconstruction(&a, &m), Some(target));
    }

    #[test]
    fn rref_is_canonical() {
        let q = Field::Rational;
        let a = ExactMatrix::from_i64(q, &[vec![2, 4, 6], vec![1, 1, 1]]);
        let b = ExactMatrix::from_i64(q, &[vec![3, 5, 7], vec![0, 2, 4]]);
        assert_eq!(a.rref(), b.rref());
        let (r, piv) = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(r, ExactMatrix::from_i64(q, &[vec![1, 0, -1], vec![0, 1, 2]]));
    }
}
