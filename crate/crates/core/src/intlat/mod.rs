//! Exact integer lattices: Hermite normal form, kernels, unimodular
//! extension and LLL reduction.

mod hnf;
mod lll;
mod matrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub use hnf::{hnf, hnf_basis, is_unimodular};
pub use lll::{gram_schmidt, is_lll_reduced, lll};
pub use matrix::IntMatrix;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;

/// A sublattice of `Z^n` given by linearly independent generator rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    basis: IntMatrix,
}

impl LatticeBasis {
    /// Trusts the caller that the rows are independent.
    pub fn from_independent_rows(basis: IntMatrix) -> Self {
        debug_assert_eq!(QMatrix::from_int(&basis).rank(), basis.rows(), "dependent lattice rows");
        LatticeBasis { basis }
    }

    /// Lattice generated by arbitrary rows, returned in HNF.
    pub fn from_generators(gens: &IntMatrix) -> Self {
        LatticeBasis { basis: hnf_basis(gens) }
    }

    pub fn from_i64_generators(ambient: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_generators(&IntMatrix::from_i64_rows(ambient, rows))
    }

    pub fn zero(ambient: usize) -> Self {
        LatticeBasis { basis: IntMatrix::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        LatticeBasis { basis: IntMatrix::identity(ambient) }
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Canonical HNF basis of the same lattice.
    pub fn hnf(&self) -> LatticeBasis {
        Self::from_generators(&self.basis)
    }

    pub fn same_lattice(&self, other: &LatticeBasis) -> bool {
        self.ambient_dim() == other.ambient_dim() && self.hnf().basis == other.hnf().basis
    }

    /// Integer coordinates of `v` in this basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let (h, u) = hnf(&self.basis);
        let x = hnf::hnf_coordinates(&h.select_rows(&(0..self.rank()).collect::<Vec<_>>()), v)?;
        Some((0..self.rank()).map(|j| (0..self.rank()).map(|i| &x[i] * &u[(i, j)]).sum()).collect())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `Z^n ∩ (Q-span of the lattice)`.
    pub fn saturation(&self) -> LatticeBasis {
        if self.is_zero() {
            return self.clone();
        }
        let perp = kernel_lattice(&QMatrix::from_int(&self.basis));
        kernel_lattice(&QMatrix::from_int(perp.basis()))
    }

    pub fn is_saturated(&self) -> bool {
        self.same_lattice(&self.saturation())
    }

    /// Integer vectors orthogonal to every basis row.
    pub fn orthogonal_complement(&self) -> LatticeBasis {
        if self.is_zero() {
            return LatticeBasis::full(self.ambient_dim());
        }
        kernel_lattice(&QMatrix::from_int(&self.basis))
    }

    /// Image under `v ↦ v·M`, with `M` of full row rank on this lattice.
    pub fn map_rows(&self, m: &IntMatrix) -> LatticeBasis {
        LatticeBasis::from_generators(&self.basis.mul(m))
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.basis.to_i64_rows()
    }
}

impl std::fmt::Debug for LatticeBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LatticeBasis({:?})", self.basis)
    }
}

/// Saturated basis of `{v ∈ Z^n : A·v = 0}`, in HNF.
pub fn kernel_lattice(a: &QMatrix) -> LatticeBasis {
    let n = a.cols();
    let rows: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|i| {
            let den = a.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            a.row(i).iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    let ai = IntMatrix::from_rows(n, rows);
    // U·Aᵀ = H; rows of U beyond the rank annihilate A and span a saturated lattice.
    let (h, u) = hnf(&ai.transpose());
    let rank = (0..h.rows()).filter(|&i| !h.is_zero_row(i)).count();
    let kernel = u.select_rows(&(rank..n).collect::<Vec<_>>());
    LatticeBasis::from_generators(&kernel)
}

/// Unimodular `M` with `M·v = e_n`.
pub fn unimodular_extension(v: &[BigInt]) -> Result<IntMatrix> {
    let n = v.len();
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_one() {
        return Err(Error::NotPrimitive(format!("{:?}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>())));
    }
    if v[..n - 1].iter().all(Zero::is_zero) && v[n - 1].is_one() {
        return Ok(IntMatrix::identity(n));
    }
    let col = IntMatrix::from_rows(1, v.iter().map(|x| vec![x.clone()]).collect());
    // U·v = e_1; rotate the first row to the bottom.
    let (_, u) = hnf(&col);
    let order: Vec<usize> = (1..n).chain(std::iter::once(0)).collect();
    Ok(u.select_rows(&order))
}

pub fn unimodular_extension_i64(v: &[i64]) -> Result<IntMatrix> {
    unimodular_extension(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_sum() {
        let k = kernel_lattice(&QMatrix::from_rows(2, vec![vec![rat(1), rat(1)]]));
        assert_eq!(k.rows_i64(), vec![vec![1, -1]]);
    }

    #[test]
    fn kernel_trivial_and_full() {
        assert!(kernel_lattice(&QMatrix::identity(2)).is_zero());
        let full = kernel_lattice(&QMatrix::from_rows(2, vec![vec![rat(0), rat(0)]]));
        assert_eq!(full.rows_i64(), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel spanned by (2, 1), not (4, 2).
        let k = kernel_lattice(&QMatrix::from_rows(2, vec![vec![rat(2), rat(-4)]]));
        assert_eq!(k.rows_i64(), vec![vec![2, 1]]);
        let k = kernel_lattice(&QMatrix::from_rows(3, vec![vec![crate::poly::ratio(1, 2), rat(1), rat(3)]]));
        assert_eq!(k.rank(), 2);
        assert!(k.is_saturated());
    }

    #[test]
    fn extension_examples() {
        let m = unimodular_extension_i64(&[0, 0, 1]).unwrap();
        assert_eq!(m, IntMatrix::identity(3));
        let m = unimodular_extension_i64(&[1, 1]).unwrap();
        assert_eq!(m.mul_vec(&big(&[1, 1])), big(&[0, 1]));
        assert!(hnf::is_unimodular(&m));
        assert!(matches!(unimodular_extension_i64(&[2, 2]), Err(Error::NotPrimitive(_))));
        let v = big(&[6, 10, 15]);
        let m = unimodular_extension(&v).unwrap();
        assert_eq!(m.mul_vec(&v), big(&[0, 0, 1]));
        assert!(hnf::is_unimodular(&m));
    }

    #[test]
    fn saturation_and_coordinates() {
        let l = LatticeBasis::from_i64_generators(2, &[vec![2, 2]]);
        assert!(!l.is_saturated());
        assert_eq!(l.saturation().rows_i64(), vec![vec![1, 1]]);
        let l = LatticeBasis::from_independent_rows(IntMatrix::from_i64_rows(2, &[vec![3, 1], vec![1, 1]]));
        let c = l.coordinates(&big(&[5, 3])).unwrap();
        assert_eq!(c, big(&[1, 2]));
        assert!(!l.contains(&big(&[1, 0])));
    }
}
