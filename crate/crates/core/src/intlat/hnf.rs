use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U·A`, `U` unimodular, `H` in row echelon form
/// with positive pivots, entries above each pivot reduced into `[0, pivot)`,
/// and zero rows at the bottom.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        for i in r + 1..a.rows() {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            // [s t; -b/g a/g] is unimodular and clears the entry below the pivot.
            let (pa, pb) = (h[(r, c)].clone(), h[(i, c)].clone());
            let eg = pa.extended_gcd(&pb);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (qa, qb) = (&pa / &g, &pb / &g);
            combine_rows(&mut h, r, i, &s, &t, &qa, &qb);
            combine_rows(&mut u, r, i, &s, &t, &qa, &qb);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for k in 0..r {
            let q = h[(k, c)].div_floor(&p);
            if !q.is_zero() {
                let nq = -q;
                h.add_row_multiple(k, r, &nq);
                u.add_row_multiple(k, r, &nq);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Replaces rows `(r, i)` by `(s·r + t·i, -qb·r + qa·i)`.
fn combine_rows(m: &mut IntMatrix, r: usize, i: usize, s: &BigInt, t: &BigInt, qa: &BigInt, qb: &BigInt) {
    for c in 0..m.cols() {
        let (x, y) = (m[(r, c)].clone(), m[(i, c)].clone());
        m[(r, c)] = s * &x + t * &y;
        m[(i, c)] = qa * &y - qb * &x;
    }
}

/// HNF with the zero rows dropped: the canonical basis of the row lattice.
pub fn hnf_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf(a);
    let keep: Vec<usize> = (0..h.rows()).filter(|&i| !h.is_zero_row(i)).collect();
    h.select_rows(&keep)
}

/// Solves `xᵀ·H = v` over the integers for `H` in HNF without zero rows.
pub(crate) fn hnf_coordinates(h: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rest = v.to_vec();
    let mut x = Vec::with_capacity(h.rows());
    for i in 0..h.rows() {
        let c = (0..h.cols()).find(|&c| !h[(i, c)].is_zero())?;
        if rest[..c].iter().any(|a| !a.is_zero()) {
            return None;
        }
        let (q, rem) = rest[c].div_rem(&h[(i, c)]);
        if !rem.is_zero() {
            return None;
        }
        for (j, r) in rest.iter_mut().enumerate().skip(c) {
            *r -= &q * &h[(i, j)];
        }
        x.push(q);
    }
    if rest.iter().all(Zero::is_zero) {
        Some(x)
    } else {
        None
    }
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && m.det().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(cols, rows)
    }

    #[test]
    fn identity_is_fixed() {
        let (h, u) = hnf(&IntMatrix::identity(2));
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
    }

    #[test]
    fn two_by_two() {
        let a = m(2, &[vec![2, 0], vec![1, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, m(2, &[vec![1, 1], vec![0, 2]]));
        assert_eq!(u.mul(&a), h);
        assert!(is_unimodular(&u));
    }

    #[test]
    fn zero_row() {
        let (h, _) = hnf(&m(2, &[vec![0, 0]]));
        assert_eq!(h, m(2, &[vec![0, 0]]));
        assert_eq!(hnf_basis(&m(2, &[vec![0, 0]])).rows(), 0);
    }

    #[test]
    fn rank_deficient_rows_sink() {
        let a = m(3, &[vec![2, 4, 6], vec![1, 2, 3], vec![0, 0, 5]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, m(3, &[vec![1, 2, 3], vec![0, 0, 5], vec![0, 0, 0]]));
        assert_eq!(u.mul(&a), h);
    }

    #[test]
    fn coordinates_in_hnf() {
        let h = hnf_basis(&m(2, &[vec![2, 0], vec![1, 1]]));
        let v: Vec<BigInt> = vec![3.into(), 5.into()];
        let x = hnf_coordinates(&h, &v).unwrap();
        let back: Vec<BigInt> = (0..2).map(|j| (0..2).map(|i| &x[i] * &h[(i, j)]).sum()).collect();
        assert_eq!(back, v);
        assert!(hnf_coordinates(&h, &[1.into(), 0.into()]).is_none());
    }
}
