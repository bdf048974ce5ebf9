use std::cmp::Ordering;
use std::fmt;

/// Exponent triple of x^i y^j z^k.
///
/// Ordered graded-lexicographically with x > y > z; this order is used
/// everywhere (printing, basis enumeration, echelon forms).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(i: u32, j: u32, k: u32) -> Self {
        Monomial([i, j, k])
    }

    pub fn var(index: usize) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|v| self.0[v] <= other.0[v])
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial([
                self.0[0] - other.0[0],
                self.0[1] - other.0[1],
                self.0[2] - other.0[2],
            ]))
        } else {
            None
        }
    }

    /// Position of this monomial in the degree-`deg` basis listed by
    /// [`monomials`] (descending graded-lex order).
    pub fn index(&self) -> usize {
        let r = self.degree() as usize;
        let [i, j, _] = self.0;
        let rest = r - i as usize;
        rest * (rest + 1) / 2 + (rest - j as usize)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, name) in self.0.iter().zip(["x", "y", "z"]) {
            if *e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// dim S_r = (r+1)(r+2)/2.
pub fn dim(r: u32) -> usize {
    let r = r as usize;
    (r + 1) * (r + 2) / 2
}

/// All monomials of degree `r`, in descending graded-lex order.
pub fn monomials(r: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(dim(r));
    for i in (0..=r).rev() {
        for j in (0..=r - i).rev() {
            out.push(Monomial::new(i, j, r - i - j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_has_expected_dimension_and_order() {
        for r in 0..12 {
            let basis = monomials(r);
            assert_eq!(basis.len(), dim(r));
            for (pos, m) in basis.iter().enumerate() {
                assert_eq!(m.degree(), r);
                assert_eq!(m.index(), pos);
            }
            assert!(basis.windows(2).all(|w| w[0] > w[1]));
        }
        assert_eq!(monomials(1), vec![Monomial::var(0), Monomial::var(1), Monomial::var(2)]);
    }

    proptest! {
        #[test]
        fn grlex_is_multiplicative(a in prop::array::uniform3(0u32..6),
                                   b in prop::array::uniform3(0u32..6),
                                   c in prop::array::uniform3(0u32..6)) {
            let (a, b, c) = (Monomial(a), Monomial(b), Monomial(c));
            prop_assert_eq!(a.cmp(&b), a.mul(&c).cmp(&b.mul(&c)));
            prop_assert_eq!(a.mul(&c).div(&c), Some(a));
        }
    }
}
