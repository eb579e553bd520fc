use num_bigint::BigInt;
use num_rational::BigRational;

use crate::intlat::{kernel_lattice, IntMatrix, LatticeBasis};
use crate::linalg::QMatrix;

use super::MulMatrices;

/// `Some(λ)` when `p` has the single eigenvalue `λ`, i.e. `p - λ` is nilpotent.
pub(crate) fn single_eigenvalue(p: &QMatrix) -> Option<BigRational> {
    let l = p.rows();
    let lambda = p.trace() / BigRational::from_integer(l.into());
    let mut n = p.sub(&QMatrix::scalar(l, &lambda));
    let mut k = 1;
    while k < l && !n.is_zero() {
        n = n.mul(&n);
        k *= 2;
    }
    n.is_zero().then_some(lambda)
}

/// Logarithm of a unipotent matrix; the series is finite.
pub(crate) fn log_unipotent(u: &QMatrix) -> QMatrix {
    let l = u.rows();
    let n = u.sub(&QMatrix::identity(l));
    let mut acc = QMatrix::zeros(l, l);
    let mut pow = n.clone();
    let mut k = 1i64;
    while !pow.is_zero() {
        let c = BigRational::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, k.into());
        acc = acc.add(&pow.scale(&c));
        pow = pow.mul(&n);
        k += 1;
    }
    acc
}

/// Scalar sublattice of a single-eigenvalue lattice, found exactly: `e ↦ log(P_e/λ_e)`
/// is additive on commuting unipotent parts, so the answer is its kernel.
pub(crate) fn scalar_sublattice(mm: &MulMatrices, radical: &LatticeBasis) -> LatticeBasis {
    let m = mm.count();
    if radical.is_zero() {
        return LatticeBasis::zero(m);
    }
    let l = mm.dim();
    let logs: Vec<QMatrix> = (0..radical.rank())
        .map(|j| {
            let p = mm.product(radical.basis().row(j));
            let lambda = single_eigenvalue(&p).expect("radical lattice rows have a single eigenvalue");
            log_unipotent(&p.scale(&lambda.recip()))
        })
        .collect();
    if logs.iter().all(QMatrix::is_zero) {
        return radical.clone();
    }
    // Columns are the flattened logarithms.
    let mut a = QMatrix::zeros(l * l, logs.len());
    for (j, lg) in logs.iter().enumerate() {
        for r in 0..l {
            for c in 0..l {
                a[(r * l + c, j)] = lg[(r, c)].clone();
            }
        }
    }
    let coords = kernel_lattice(&a);
    if coords.is_zero() {
        return LatticeBasis::zero(m);
    }
    LatticeBasis::from_generators(&coords.basis().mul(radical.basis()))
}

/// λ for each basis row, checking the defining property exactly.
pub(crate) fn lambdas(mm: &MulMatrices, lattice: &LatticeBasis, scalar: bool) -> Vec<BigRational> {
    (0..lattice.rank())
        .map(|j| {
            let p = mm.product(lattice.basis().row(j));
            let v = if scalar { p.scalar_value() } else { single_eigenvalue(&p) };
            v.expect("lattice row failed exact verification")
        })
        .collect()
}

/// Every `e` with `|e_i| <= radius` passing `test`.
pub(crate) fn box_search<F>(mm: &MulMatrices, radius: i64, mut test: F) -> Vec<Vec<i64>>
where
    F: FnMut(&QMatrix) -> bool,
{
    let m = mm.count();
    let l = mm.dim();
    let powers: Vec<Vec<QMatrix>> =
        (0..m).map(|i| (-radius..=radius).map(|k| mm.power(i, k)).collect()).collect();
    let mut out = Vec::new();
    let mut e = vec![-radius; m];
    if m == 0 {
        return out;
    }
    loop {
        if e.iter().any(|&x| x != 0) {
            let mut p = QMatrix::identity(l);
            for i in 0..m {
                if e[i] != 0 {
                    p = p.mul(&powers[i][(e[i] + radius) as usize]);
                }
            }
            if test(&p) {
                out.push(e.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            if e[i] < radius {
                e[i] += 1;
                break;
            }
            e[i] = -radius;
            i += 1;
        }
    }
}

pub(crate) fn lattice_from_i64(m: usize, rows: &[Vec<i64>]) -> LatticeBasis {
    if rows.is_empty() {
        return LatticeBasis::zero(m);
    }
    LatticeBasis::from_generators(&IntMatrix::from_i64_rows(m, rows))
}

/// Checks every basis row of `cand` and keeps the lattice spanned by those that pass.
pub(crate) fn verified_radical(mm: &MulMatrices, cand: &LatticeBasis) -> LatticeBasis {
    let keep: Vec<Vec<BigInt>> = (0..cand.rank())
        .map(|j| cand.basis().row_vec(j))
        .filter(|row| single_eigenvalue(&mm.product(row)).is_some())
        .collect();
    if keep.is_empty() {
        return LatticeBasis::zero(mm.count());
    }
    LatticeBasis::from_generators(&IntMatrix::from_rows(mm.count(), keep))
}

/// Exhaustive list of nonzero `e` with `|e_i| <= radius` whose product is
/// scalar (`scalar = true`) or has a single eigenvalue.
pub fn box_relations(mm: &MulMatrices, radius: i64, scalar: bool) -> Vec<Vec<i64>> {
    box_search(mm, radius, |p| if scalar { p.scalar_value().is_some() } else { single_eigenvalue(p).is_some() })
}
