//! Randomized invariants of the lattice, polynomial and pipeline layers.

mod common;

use binfind::groebner::{reduced_gb, saturate_by_variables, IdealHandle};
use binfind::intlat::{
    hnf, is_lll_reduced, is_unimodular, kernel_lattice, lll, unimodular_extension_i64, IntMatrix, LatticeBasis,
};
use binfind::linalg::QMatrix;
use binfind::pipeline::{binomial_part_laurent, character, PipelineConfig};
use binfind::poly::{parse_poly, rat, LaurentPoly, MonomialOrder, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

/// Elementary row operations `(kind, a, b, k)` to apply to an `r`-row matrix.
fn row_ops() -> impl Strategy<Value = Vec<(u8, usize, usize, i64)>> {
    prop::collection::vec((0u8..3, 0usize..8, 0usize..8, -3i64..=3), 0..12)
}

fn apply_ops(m: &mut IntMatrix, ops: &[(u8, usize, usize, i64)]) {
    let r = m.rows();
    for &(kind, a, b, k) in ops {
        let (a, b) = (a % r, b % r);
        match kind {
            0 if a != b => m.add_row_multiple(a, b, &BigInt::from(k)),
            1 => m.swap_rows(a, b),
            _ => m.negate_row(a),
        }
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hnf_is_canonical(rows in matrix(4, 4, 9), ops in row_ops()) {
        let cols = rows[0].len();
        let a = IntMatrix::from_i64_rows(cols, &rows);
        let (h, u) = hnf(&a);
        prop_assert!(is_unimodular(&u));
        prop_assert_eq!(u.mul(&a), h.clone());
        let mut moved = a.clone();
        apply_ops(&mut moved, &ops);
        prop_assert_eq!(hnf(&moved).0, h.clone());
        // echelon with positive pivots and reduced entries above them
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            let Some(p) = (0..cols).find(|&j| !h[(i, j)].is_zero()) else {
                prop_assert!((i..h.rows()).all(|k| h.is_zero_row(k)));
                break;
            };
            prop_assert!(last.map_or(true, |q| p > q));
            prop_assert!(h[(i, p)] > BigInt::zero());
            for k in 0..i {
                prop_assert!(h[(k, p)] >= BigInt::zero() && h[(k, p)] < h[(i, p)]);
            }
            last = Some(p);
        }
    }

    #[test]
    fn lll_reduces_and_preserves(rows in matrix(4, 5, 40)) {
        let cols = rows[0].len();
        let basis = LatticeBasis::from_generators(&IntMatrix::from_i64_rows(cols, &rows));
        prop_assume!(!basis.is_zero());
        let delta = BigRational::new(3.into(), 4.into());
        let red = lll(&basis, &delta);
        prop_assert!(is_lll_reduced(red.basis(), &delta));
        prop_assert!(red.same_lattice(&basis));
        prop_assert_eq!(red.rank(), basis.rank());
    }

    #[test]
    fn kernel_is_saturated_and_complete(rows in matrix(3, 4, 5)) {
        let cols = rows[0].len();
        let a = QMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect());
        let k = kernel_lattice(&a);
        let ai = IntMatrix::from_i64_rows(cols, &rows);
        for row in k.basis().to_rows() {
            prop_assert!(ai.mul_vec(&row).iter().all(Zero::is_zero));
        }
        prop_assert!(k.is_saturated());
        prop_assert_eq!(k.rank(), cols - a.rank());
        // every kernel vector in a small box is a lattice member
        let mut v = vec![-2i64; cols];
        loop {
            if ai.mul_vec(&big(&v)).iter().all(Zero::is_zero) {
                prop_assert!(k.contains(&big(&v)));
            }
            let Some(i) = v.iter().position(|&x| x < 2) else { break };
            v[i] += 1;
            for x in &mut v[..i] {
                *x = -2;
            }
        }
    }

    #[test]
    fn unimodular_extension_maps_to_last_axis(v in prop::collection::vec(-30i64..=30, 1..5)) {
        let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
        prop_assume!(g == 1);
        let m = unimodular_extension_i64(&v).unwrap();
        prop_assert!(is_unimodular(&m));
        let mut e = vec![BigInt::zero(); v.len()];
        *e.last_mut().unwrap() = BigInt::one();
        prop_assert_eq!(m.mul_vec(&big(&v)), e);
    }

    #[test]
    fn groebner_basis_ignores_generator_order(seed in any::<u64>(), rot in 0usize..3) {
        let i = common::random_ideal(&mut ChaCha8Rng::seed_from_u64(seed));
        let mut gens = i.generators().to_vec();
        let shift = rot % gens.len().max(1);
        gens.rotate_left(shift);
        gens.reverse();
        let j = IdealHandle::new(i.nvars(), gens);
        for ord in [MonomialOrder::Lex, MonomialOrder::Grevlex] {
            prop_assert_eq!(reduced_gb(&i, &ord), reduced_gb(&j, &ord));
        }
        for g in i.generators() {
            prop_assert!(i.reduce(g).is_zero());
        }
    }

    #[test]
    fn display_reparses(seed in any::<u64>()) {
        let i = common::random_ideal(&mut ChaCha8Rng::seed_from_u64(seed));
        let ring = Ring::generic(i.nvars(), false);
        for g in i.generators() {
            let text = g.display(&ring).to_string();
            prop_assert_eq!(&parse_poly(&text, &ring).unwrap(), g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn character_is_multiplicative(seed in any::<u64>(), a in -2i64..=2, b in -2i64..=2) {
        let c = common::random_lattice_ideal(&mut ChaCha8Rng::seed_from_u64(seed));
        let res = binomial_part_laurent(&c.ideal, &PipelineConfig::default()).unwrap();
        let rows = res.lattice.basis().to_rows();
        let u = &rows[0];
        let v = rows.last().unwrap();
        let comb: Vec<BigInt> = u.iter().zip(v).map(|(x, y)| x * a + y * b).collect();
        let phi = |e: &[BigInt]| character(&res.lattice, &res.lambdas, e).unwrap();
        let expected = num_traits::Pow::pow(&phi(u), a as i32) * num_traits::Pow::pow(&phi(v), b as i32);
        prop_assert_eq!(phi(&comb), expected);
    }

    #[test]
    fn cleared_generators_extend_to_the_same_ideal(seed in any::<u64>()) {
        let c = common::random_lattice_ideal(&mut ChaCha8Rng::seed_from_u64(seed));
        let n = c.ideal.nvars();
        let res = binomial_part_laurent(&c.ideal, &PipelineConfig::default()).unwrap();
        let cleared: Vec<LaurentPoly> = res.generators.iter().map(LaurentPoly::clear_denominators).collect();
        let a = saturate_by_variables(&IdealHandle::new(n, cleared));
        let b = saturate_by_variables(&c.ideal);
        prop_assert!(a.same_ideal(&b));
        // the input binomials themselves are explained by the character
        for (row, lam) in c.rows.iter().zip(&c.lambdas) {
            prop_assert_eq!(character(&res.lattice, &res.lambdas, &big(row)), Some(lam.clone()));
        }
    }
}
