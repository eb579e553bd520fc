use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LatticeBasis};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `n/d` for `d > 0`, ties rounded up.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    (BigInt::from(2) * n + d).div_floor(&(BigInt::from(2) * d))
}

/// δ-LLL reduction in exact integer arithmetic.
///
/// Works with the integral Gram–Schmidt data `d_i` (Gram determinants) and
/// `λ_{i,j} = d_{j+1} μ_{i,j}` so that no rationals appear in the loop.
pub fn lll(basis: &LatticeBasis, delta: &BigRational) -> LatticeBasis {
    assert!(
        *delta > BigRational::new(1.into(), 4.into()) && *delta <= BigRational::one(),
        "LLL parameter must lie in (1/4, 1]"
    );
    let n = basis.rank();
    if n <= 1 {
        return basis.clone();
    }
    let (p, q) = (delta.numer().clone(), delta.denom().clone());
    let mut b = basis.basis().to_rows();
    // 1-based bookkeeping: d[0] = 1, d[i] = Gram determinant of b_1..b_i.
    let mut d = vec![BigInt::zero(); n + 1];
    let mut lam = vec![vec![BigInt::zero(); n + 1]; n + 1];
    d[0] = BigInt::one();
    d[1] = dot(&b[0], &b[0]);
    let mut k = 2;
    let mut kmax = 1;

    let red = |b: &mut Vec<Vec<BigInt>>, lam: &mut Vec<Vec<BigInt>>, d: &[BigInt], k: usize, l: usize| {
        if BigInt::from(2) * lam[k][l].abs() <= d[l] {
            return;
        }
        let r = round_div(&lam[k][l], &d[l]);
        let bl = b[l - 1].clone();
        for (x, y) in b[k - 1].iter_mut().zip(&bl) {
            *x -= &r * y;
        }
        lam[k][l] -= &r * &d[l];
        for i in 1..l {
            let v = &r * &lam[l][i];
            lam[k][i] -= v;
        }
    };

    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&b[k - 1], &b[j - 1]);
                for i in 1..j {
                    u = (&d[i] * &u - &lam[k][i] * &lam[j][i]) / &d[i - 1];
                }
                if j < k {
                    lam[k][j] = u;
                } else {
                    assert!(!u.is_zero(), "LLL input rows are dependent");
                    d[k] = u;
                }
            }
        }
        red(&mut b, &mut lam, &d, k, k - 1);
        let lhs = &q * &d[k] * &d[k - 2];
        let rhs = &p * &d[k - 1] * &d[k - 1] - &q * &lam[k][k - 1] * &lam[k][k - 1];
        if lhs < rhs {
            swap(&mut b, &mut lam, &mut d, k, kmax);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                red(&mut b, &mut lam, &d, k, l);
            }
            k += 1;
        }
    }
    LatticeBasis::from_independent_rows(IntMatrix::from_rows(basis.ambient_dim(), b))
}

fn swap(b: &mut [Vec<BigInt>], lam: &mut [Vec<BigInt>], d: &mut [BigInt], k: usize, kmax: usize) {
    b.swap(k - 1, k - 2);
    for j in 1..k - 1 {
        let t = lam[k][j].clone();
        lam[k][j] = lam[k - 1][j].clone();
        lam[k - 1][j] = t;
    }
    let l = lam[k][k - 1].clone();
    let bb = (&d[k - 2] * &d[k] + &l * &l) / &d[k - 1];
    for i in k + 1..=kmax {
        let t = lam[i][k].clone();
        lam[i][k] = (&d[k] * &lam[i][k - 1] - &l * &t) / &d[k - 1];
        lam[i][k - 1] = (&bb * &t + &l * &lam[i][k]) / &d[k];
    }
    d[k - 1] = bb;
}

/// Exact Gram–Schmidt data: `(μ, |b*_i|²)`.
pub fn gram_schmidt(b: &IntMatrix) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.rows();
    let rows: Vec<Vec<BigRational>> =
        (0..n).map(|i| b.row(i).iter().map(|a| BigRational::from_integer(a.clone())).collect()).collect();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            let num: BigRational = rows[i].iter().zip(&star[j]).map(|(a, b)| a * b).sum();
            mu[i][j] = num / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        norms.push(v.iter().map(|a| a * a).sum());
        star.push(v);
    }
    (mu, norms)
}

/// Checks size reduction and the Lovász condition exactly.
pub fn is_lll_reduced(b: &IntMatrix, delta: &BigRational) -> bool {
    let (mu, norms) = gram_schmidt(b);
    let half = BigRational::new(1.into(), 2.into());
    for i in 0..b.rows() {
        for j in 0..i {
            if mu[i][j].abs() > half {
                return false;
            }
        }
        if i > 0 {
            let m = &mu[i][i - 1];
            if norms[i] < (delta - m * m) * &norms[i - 1] {
                return false;
            }
        }
    }
    true
}
