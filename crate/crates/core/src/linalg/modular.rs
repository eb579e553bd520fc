//! Characteristic polynomials of integer matrices by reduction modulo
//! word-sized primes and Chinese remaindering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
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

/// Coefficients (low to high) of `det(tI - A) mod p` for a row-major `n×n` matrix.
fn charpoly_mod(mut h: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    let sub = |a: u64, b: u64| if a >= b { a - b } else { a + p - b };
    let add = |a: u64, b: u64| {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    };
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i * n + m - 1] != 0) else {
            continue;
        };
        if i != m {
            for c in 0..n {
                h.swap(i * n + c, m * n + c);
            }
            for r in 0..n {
                h.swap(r * n + i, r * n + m);
            }
        }
        let t = pow_mod(h[m * n + m - 1], p - 2, p);
        for i in m + 1..n {
            let u = mul_mod(h[i * n + m - 1], t, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i * n + j] = sub(h[i * n + j], mul_mod(u, h[m * n + j], p));
            }
            for r in 0..n {
                h[r * n + m] = add(h[r * n + m], mul_mod(u, h[r * n + i], p));
            }
        }
    }
    // same recurrence as over Q, on coefficient vectors
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let a = h[(k - 1) * n + k - 1];
        let mut pk = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            pk[d + 1] = add(pk[d + 1], c);
            pk[d] = sub(pk[d], mul_mod(a, c, p));
        }
        let mut prod = 1u64;
        for i in 1..k {
            prod = mul_mod(prod, h[(k - i) * n + k - i - 1], p);
            let c = mul_mod(h[(k - i - 1) * n + k - 1], prod, p);
            for (d, &q) in polys[k - i - 1].iter().enumerate() {
                pk[d] = sub(pk[d], mul_mod(c, q, p));
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// `log2` of a bound on the absolute values of the coefficients of the
/// characteristic polynomial: the coefficient of `t^{n-k}` is a sum of
/// `C(n,k)` principal minors, each at most `(√k B)^k` by Hadamard.
fn coefficient_bits(n: usize, max_entry: &BigInt) -> f64 {
    let b = max_entry.bits().max(1) as f64;
    let mut best = 0.0f64;
    let mut log_binom = 0.0f64;
    for k in 1..=n {
        log_binom += ((n - k + 1) as f64).log2() - (k as f64).log2();
        best = best.max(log_binom + k as f64 * (b + 0.5 * (k as f64).log2()));
    }
    best
}

/// Characteristic polynomial of a square integer matrix (row-major),
/// coefficients from low to high degree.
pub(crate) fn charpoly_integer(a: &[BigInt], n: usize) -> Vec<BigInt> {
    if n == 0 {
        return vec![BigInt::one()];
    }
    let max_entry = a.iter().map(|x| x.abs()).max().unwrap_or_default();
    let need = coefficient_bits(n, &max_entry) + 2.0;
    let mut modulus = BigInt::one();
    let mut acc = vec![BigInt::zero(); n + 1];
    let mut p = (1u64 << 62) - 1;
    while (modulus.bits() as f64) < need {
        while !is_prime(p) {
            p -= 2;
        }
        let pb = BigInt::from(p);
        let reduced: Vec<u64> = a.iter().map(|x| x.mod_floor(&pb).to_u64().expect("residue fits")).collect();
        let r = charpoly_mod(reduced, n, p);
        // x ≡ acc mod M, x ≡ r mod p
        let m_inv = BigInt::from(pow_mod((&modulus % &pb).to_u64().unwrap(), p - 2, p));
        for (c, &rc) in acc.iter_mut().zip(&r) {
            let diff = (BigInt::from(rc) - &*c).mod_floor(&pb);
            let k = (diff * &m_inv).mod_floor(&pb);
            *c += &modulus * k;
        }
        modulus *= &pb;
        p -= 2;
    }
    let half = &modulus >> 1;
    acc.into_iter().map(|c| if c > half { c - &modulus } else { c }).collect()
}

fn poly_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().expect("residue fits")).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Degree of `gcd(f, g)` over `F_p`; `f`, `g` nonzero mod `p`, coefficients low to high.
fn gcd_degree_mod(f: &[BigInt], g: &[BigInt], p: u64) -> usize {
    let (mut a, mut b) = (poly_mod(f, p), poly_mod(g, p));
    while !b.is_empty() {
        // a mod b
        let inv = pow_mod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let c = mul_mod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                let t = mul_mod(c, bi, p);
                a[shift + i] = if a[shift + i] >= t { a[shift + i] - t } else { a[shift + i] + p - t };
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// True when `f` and `g` are certainly coprime over Q: their reductions
/// modulo a prime not dividing either leading coefficient are coprime.
/// False means "unknown".
pub(crate) fn certainly_coprime(f: &[BigInt], g: &[BigInt]) -> bool {
    let (Some(lf), Some(lg)) = (f.last(), g.last()) else {
        return false;
    };
    let mut p = (1u64 << 62) - 57;
    for _ in 0..4 {
        while !is_prime(p) {
            p -= 2;
        }
        let pb = BigInt::from(p);
        if !(lf % &pb).is_zero() && !(lg % &pb).is_zero() {
            return gcd_degree_mod(f, g, p) == 0;
        }
        p -= 2;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(97) && is_prime((1 << 61) - 1));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(3215031751));
    }

    #[test]
    fn coprimality() {
        let v = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        // t^2 - 2 and its derivative
        assert!(certainly_coprime(&v(&[-2, 0, 1]), &v(&[0, 2])));
        // (t - 1)^2 and its derivative share t - 1
        assert!(!certainly_coprime(&v(&[1, -2, 1]), &v(&[-2, 2])));
    }

    #[test]
    fn small_charpoly() {
        // [[2, 1], [1, 3]]: t^2 - 5t + 5
        let a: Vec<BigInt> = [2, 1, 1, 3].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(charpoly_integer(&a, 2), [5, -5, 1].map(BigInt::from).to_vec());
        // negative and large coefficients survive the symmetric lift
        let big = BigInt::from(10).pow(30);
        let a = vec![-big.clone(), BigInt::zero(), BigInt::zero(), big.clone()];
        assert_eq!(charpoly_integer(&a, 2), vec![-&big * &big, BigInt::zero(), BigInt::one()]);
    }
}
