use std::collections::BTreeMap;

use freecurve_core::{classify, lattice, tau_combinatorial, Backend, Classification, Field, LineArrangement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Intersection points of integer lines, found by brute force, with the
/// number of lines through each.
fn points_oracle(lines: &[[i64; 3]]) -> BTreeMap<[i64; 3], usize> {
    let mut out = BTreeMap::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (lines[i], lines[j]);
            let mut p = [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ];
            let g = gcd(gcd(p[0], p[1]), p[2]);
            p = p.map(|v| v / g);
            if p.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
                p = p.map(|v| -v);
            }
            let m = lines
                .iter()
                .filter(|l| l[0] * p[0] + l[1] * p[1] + l[2] * p[2] == 0)
                .count();
            out.insert(p, m);
        }
    }
    out
}

fn tau_oracle(lines: &[[i64; 3]]) -> usize {
    points_oracle(lines).values().map(|m| (m - 1) * (m - 1)).sum()
}

fn random_lines(rng: &mut ChaCha8Rng, d: usize) -> Vec<[i64; 3]> {
    let mut out: Vec<[i64; 3]> = Vec::new();
    while out.len() < d {
        let l = [0; 3].map(|_| rng.gen_range(-2..=2i64));
        if l == [0; 3] {
            continue;
        }
        // Skip multiples of a line already chosen.
        let parallel = |o: &[i64; 3]| {
            o[0] * l[1] == o[1] * l[0] && o[0] * l[2] == o[2] * l[0] && o[1] * l[2] == o[2] * l[1]
        };
        if !out.iter().any(parallel) {
            out.push(l);
        }
    }
    out
}

#[test]
fn near_pencil_is_free() {
    let lines = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [0, 0, 1]];
    let want = tau_oracle(&lines);
    let a = LineArrangement::from_i64(Field::Rational, &lines).unwrap();
    assert_eq!(tau_combinatorial(&lattice(&a).unwrap()) as usize, want);
    let r = classify(&a.polynomial(), &Backend::default()).unwrap();
    assert_eq!(r.tau, want);
    // A near-pencil of d lines has a syzygy of degree 1 from its point of
    // multiplicity d - 1; freeness then fixes the other exponent.
    assert_eq!(r.class, Classification::Free);
    assert_eq!(r.exponents, Some((1, 3)));
    assert_eq!((4 * 4 - 1 * 3) as usize, want);
}

#[test]
fn random_lattices_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let backend = Backend::default();
    for _ in 0..15 {
        let d = rng.gen_range(3..=8);
        let lines = random_lines(&mut rng, d);
        let a = LineArrangement::from_i64(Field::Rational, &lines).unwrap();
        let lat = lattice(&a).unwrap();
        let oracle = points_oracle(&lines);
        let mut counts = BTreeMap::new();
        for m in oracle.values() {
            *counts.entry(*m).or_insert(0usize) += 1;
        }
        assert_eq!(lat.counts(), counts, "{lines:?}");
        let tau = tau_oracle(&lines);
        assert_eq!(tau_combinatorial(&lat) as usize, tau);
        assert_eq!(classify(&a.polynomial(), &backend).unwrap().tau, tau, "{lines:?}");
    }
}
