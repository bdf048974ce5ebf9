//! Word-sized prime field arithmetic and prime selection.
//!
//! All primes used by the engine lie strictly between 2^30 and 2^31, so a
//! residue fits in a `u32` and products of two residues fit in a `u64`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const PRIME_LOWER: u64 = 1 << 30;
pub const PRIME_UPPER: u64 = 1 << 31;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime; `None` for zero.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    Some(pow_mod(a, p - 2, p))
}

/// Deterministic Miller-Rabin, exact for all n < 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    assert!(n < (1 << 32), "primality test only valid below 2^32");
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// True if `p` is usable as the modulus of a prime-field backend.
pub fn is_admissible_prime(p: u64) -> bool {
    p > PRIME_LOWER && p < PRIME_UPPER && is_prime(p)
}

/// Draws `count` distinct admissible primes.
pub fn random_primes(count: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range(PRIME_LOWER + 1..PRIME_UPPER) | 1;
        if is_admissible_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

/// Smallest admissible prime `p > start` with `p ≡ 1 (mod modulus)`.
pub fn prime_congruent_one(modulus: u64, start: u64) -> u64 {
    let modulus = modulus.max(1);
    let mut p = start.max(PRIME_LOWER) + 1;
    p += (modulus + 1 - p % modulus) % modulus;
    loop {
        if is_admissible_prime(p) {
            return p;
        }
        p += modulus;
    }
}

/// A primitive `order`-th root of unity modulo `p`; requires `order | p - 1`.
pub fn root_of_unity(order: u64, p: u64) -> Option<u64> {
    if order == 0 || (p - 1) % order != 0 {
        return None;
    }
    let cofactor = (p - 1) / order;
    let prime_factors = small_prime_factors(order);
    (2..p).map(|g| pow_mod(g, cofactor, p)).find(|&w| {
        prime_factors
            .iter()
            .all(|&q| pow_mod(w, order / q, p) != 1)
    })
}

fn small_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Fixed multiplier for repeated `x * w mod p` (Shoup's trick).
#[derive(Clone, Copy, Debug)]
pub struct ShoupMul {
    w: u64,
    w_shoup: u64,
    p: u64,
}

impl ShoupMul {
    pub fn new(w: u32, p: u32) -> Self {
        debug_assert!(w < p);
        let w = w as u64;
        let p = p as u64;
        ShoupMul {
            w,
            w_shoup: (w << 32) / p,
            p,
        }
    }

    /// `x * w mod p`, lazily reduced into `[0, 2p)`.
    #[inline(always)]
    pub fn mul_lazy(&self, x: u32) -> u64 {
        let x = x as u64;
        let q = (x * self.w_shoup) >> 32;
        x * self.w - q * self.p
    }
}

/// `row[j] += w * pivot[j] (mod p)` over the common length.
#[inline]
pub fn axpy_mod(row: &mut [u32], pivot: &[u32], w: u32, p: u32) {
    let mul = ShoupMul::new(w, p);
    let p64 = p as u64;
    for (r, &v) in row.iter_mut().zip(pivot) {
        let mut s = *r as u64 + mul.mul_lazy(v);
        if s >= 2 * p64 {
            s -= 2 * p64;
        }
        if s >= p64 {
            s -= p64;
        }
        *r = s as u32;
    }
}

/// `row[j] *= w (mod p)`.
pub fn scale_mod(row: &mut [u32], w: u32, p: u32) {
    let mul = ShoupMul::new(w, p);
    let p64 = p as u64;
    for r in row.iter_mut() {
        let mut s = mul.mul_lazy(*r);
        if s >= p64 {
            s -= p64;
        }
        *r = s as u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primality_agrees_with_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|q| q * q <= n).all(|q| n % q != 0);
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        for n in (PRIME_LOWER + 1..PRIME_LOWER + 400).step_by(1) {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
    }

    #[test]
    fn random_primes_are_distinct_and_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let primes = random_primes(3, &mut rng);
        assert_eq!(primes.len(), 3);
        assert!(primes.iter().all(|&p| is_admissible_prime(p)));
        assert!(primes[0] != primes[1] && primes[1] != primes[2] && primes[0] != primes[2]);
    }

    #[test]
    fn shoup_matches_plain_reduction() {
        let p = 2147483629u32;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let w = rng.gen_range(0..p);
            let x = rng.gen_range(0..p);
            let lazy = ShoupMul::new(w, p).mul_lazy(x);
            assert!(lazy < 2 * p as u64);
            assert_eq!(lazy % p as u64, (w as u64 * x as u64) % p as u64);
        }
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        let p = prime_congruent_one(12, PRIME_LOWER);
        assert_eq!((p - 1) % 12, 0);
        let w = root_of_unity(12, p).unwrap();
        assert_eq!(pow_mod(w, 12, p), 1);
        assert!((1..12).all(|j| pow_mod(w, j, p) != 1));
    }
}
