//! Seeded random corpora shared by the integration suites.

#![allow(dead_code)]

use binfind::groebner::IdealHandle;
use binfind::intlat::{IntMatrix, LatticeBasis};
use binfind::poly::{ratio, Exponent, LaurentPoly};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Generators `x^{u+} - λ x^{u-}` of a random partial character.
pub struct LatticeIdeal {
    pub ideal: IdealHandle,
    /// The input rows, in the order matching `lambdas`.
    pub lattice: LatticeBasis,
    pub rows: Vec<Vec<i64>>,
    pub lambdas: Vec<BigRational>,
}

pub fn random_lattice_ideal(rng: &mut ChaCha8Rng) -> LatticeIdeal {
    let n = rng.gen_range(2..=4usize);
    let r = rng.gen_range(1..=2usize);
    loop {
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        if LatticeBasis::from_i64_generators(n, &rows).rank() != r {
            continue;
        }
        let lattice = LatticeBasis::from_independent_rows(IntMatrix::from_i64_rows(n, &rows));
        let lambdas: Vec<BigRational> = (0..r)
            .map(|_| {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                ratio(sign * rng.gen_range(1..=5), rng.gen_range(1..=4))
            })
            .collect();
        let gens = rows
            .iter()
            .zip(&lambdas)
            .map(|(u, l)| {
                LaurentPoly::from_terms(
                    n,
                    vec![(ratio(1, 1), Exponent::new(u.clone())), (-l.clone(), Exponent::zero(n))],
                )
                .monomial_normalize()
            })
            .collect();
        return LatticeIdeal { ideal: IdealHandle::new(n, gens), lattice, rows, lambdas };
    }
}

/// A sparse random ideal: at most three generators of degree at most
/// three, each with two or three terms and small coefficients.
pub fn random_ideal(rng: &mut ChaCha8Rng) -> IdealHandle {
    let n = rng.gen_range(1..=3usize);
    let k = rng.gen_range(1..=3usize);
    let gens = (0..k)
        .map(|_| {
            let terms = rng.gen_range(2..=3usize);
            LaurentPoly::from_terms(
                n,
                (0..terms).map(|_| {
                    let deg = rng.gen_range(0..=3i64);
                    let mut e = vec![0i64; n];
                    for _ in 0..deg {
                        e[rng.gen_range(0..n)] += 1;
                    }
                    let mut c = 0;
                    while c == 0 {
                        c = rng.gen_range(-3..=3);
                    }
                    (ratio(c, 1), Exponent::new(e))
                }),
            )
        })
        .collect();
    IdealHandle::new(n, gens)
}
