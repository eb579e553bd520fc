//! Dense matrices and univariate polynomials over Q.

mod modular;
mod upoly;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use upoly::UPoly;

use crate::intlat::IntMatrix;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &BigRational::one())
    }

    pub fn scalar(n: usize, c: &BigRational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        QMatrix { rows: r, cols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_rows(
            m.cols(),
            (0..m.rows()).map(|i| m.row(i).iter().map(|a| BigRational::from_integer(a.clone())).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut out = QMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn add(&self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// `Some(c)` when the matrix equals `c·I`.
    pub fn scalar_value(&self) -> Option<BigRational> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(BigRational::one());
        }
        let c = self[(0, 0)].clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { &c } else { &BigRational::zero() };
                if self[(i, j)] != *expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let v = &f * &a[(r, j)];
                    a[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let mut a = self.clone();
        let n = self.rows;
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
                return BigRational::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            det *= &a[(c, c)];
            let inv = a[(c, c)].recip();
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = &a[(i, c)] * &inv;
                for j in c..n {
                    let v = &f * &a[(c, j)];
                    a[(i, j)] -= v;
                }
            }
        }
        det
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow(&self, e: i64) -> Option<QMatrix> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = QMatrix::identity(self.rows);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    /// Basis of the right null space `{v : A·v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in piv.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(tI - A)`. With `A = B/d` for an
    /// integer matrix `B`, the coefficient of `t^k` is `b_k d^{k-n}`.
    pub fn charpoly(&self) -> UPoly {
        assert!(self.is_square());
        let n = self.rows;
        let d = self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let b: Vec<BigInt> = self.data.iter().map(|x| x.numer() * (&d / x.denom())).collect();
        let coeffs = modular::charpoly_integer(&b, n);
        let mut scale = BigInt::one();
        let mut out = vec![BigRational::zero(); n + 1];
        for k in (0..=n).rev() {
            out[k] = BigRational::new(coeffs[k].clone(), scale.clone());
            scale *= &d;
        }
        UPoly::new(out)
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &UPoly) -> QMatrix {
        let n = self.rows;
        let mut acc = QMatrix::zeros(n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self).add(&QMatrix::scalar(n, c));
        }
        acc
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|a| a.to_string()).collect()).collect();
        write!(f, "QMatrix{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    /// Hessenberg reduction over Q, the reference for the modular version.
    fn charpoly_rational(a: &QMatrix) -> UPoly {
        assert!(a.is_square());
        let n = a.rows;
        let mut h = a.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t = h[(m, m - 1)].recip();
            for i in m + 1..n {
                let u = &h[(i, m - 1)] * &t;
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &u * &h[(m, j)];
                    h[(i, j)] -= v;
                }
                for r in 0..n {
                    let v = &u * &h[(r, i)];
                    h[(r, m)] += v;
                }
            }
        }
        // p[k] is the characteristic polynomial of the leading k×k block.
        let mut p = vec![UPoly::one()];
        for k in 1..=n {
            let mut pk = &UPoly::linear(&h[(k - 1, k - 1)]) * &p[k - 1];
            let mut prod = BigRational::one();
            for i in 1..k {
                prod *= &h[(k - i, k - i - 1)];
                let c = &h[(k - i - 1, k - 1)] * &prod;
                pk = &pk - &p[k - i - 1].scale(&c);
            }
            p.push(pk);
        }
        p.pop().unwrap()
    }

    fn q(cols: usize, rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&a| rat(a)).collect()).collect())
    }

    #[test]
    fn charpoly_small() {
        let a = q(2, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.charpoly(), UPoly::new(vec![rat(-2), rat(-5), rat(1)]));
        let a = q(3, &[vec![2, 1, 0], vec![0, 2, 0], vec![1, 0, 3]]);
        assert_eq!(a.charpoly(), UPoly::new(vec![rat(-12), rat(16), rat(-7), rat(1)]));
    }

    #[test]
    fn charpoly_matches_rational_hessenberg() {
        let a = q(4, &[vec![0, 1, 2, -1], vec![3, 0, 0, 1], vec![1, 1, 1, 1], vec![2, -3, 0, 5]]);
        assert_eq!(a.charpoly(), charpoly_rational(&a));
        let b = a.scale(&ratio(-7, 6)).add(&QMatrix::scalar(4, &ratio(1, 5)));
        assert_eq!(b.charpoly(), charpoly_rational(&b));
        assert_eq!(QMatrix::zeros(0, 0).charpoly(), UPoly::one());
    }

    #[test]
    fn cayley_hamilton() {
        let a = q(4, &[vec![0, 1, 2, -1], vec![3, 0, 0, 1], vec![1, 1, 1, 1], vec![2, -3, 0, 5]]);
        let p = a.charpoly();
        assert_eq!(p.degree(), 4);
        assert!(a.eval_poly(&p).is_zero());
        assert_eq!(p.coeffs()[0], a.det());
        assert_eq!(-p.coeffs()[3].clone(), a.trace());
    }

    #[test]
    fn inverse_and_powers() {
        let a = q(2, &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(2));
        assert_eq!(a.pow(-2).unwrap().mul(&a.pow(2).unwrap()), QMatrix::identity(2));
        assert!(q(2, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
        assert_eq!(QMatrix::scalar(3, &ratio(1, 2)).scalar_value(), Some(ratio(1, 2)));
        assert_eq!(a.scalar_value(), None);
    }

    #[test]
    fn nullspace_and_rank() {
        let a = q(3, &[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }
}
