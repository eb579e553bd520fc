//! Numeric discovery of the single-eigenvalue lattice.
//!
//! The joint eigenvalues `p_k = (y_1(ζ_k), ..., y_m(ζ_k))` of the commuting
//! matrices are read off a rational univariate representation built from
//! exact traces. An exponent `e` gives a single eigenvalue exactly when
//! `p_k^e` is the same for all points, i.e. when
//! `Σ_i e_i log(p_{k,i}/p_{1,i}) ∈ 2πiZ` for every `k`; integer solutions of
//! these linear forms are searched for with LLL.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::intlat::{lll, IntMatrix, LatticeBasis};
use crate::linalg::{QMatrix, UPoly};
use crate::numeric::{Cx, Mp};

use super::exact::verified_radical;
use super::{Completeness, MulMatrices, RelationConfig};

/// Exact data describing the points of the spectrum.
pub(crate) struct Spectrum {
    /// Monic squarefree minimal polynomial of a separating element.
    q: UPoly,
    g1: UPoly,
    gy: Vec<UPoly>,
}

impl Spectrum {
    pub(crate) fn points(&self) -> usize {
        self.q.degree() as usize
    }
}

/// Number of distinct joint eigenvalues: the rank of the trace form on the
/// algebra generated by the matrices.
fn trace_form_rank(mm: &MulMatrices) -> usize {
    let l = mm.dim();
    let mut span: Vec<QMatrix> = Vec::new();
    // Row-reduced flattened copies of `span`, with their pivot columns.
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let mut queue = vec![QMatrix::identity(l)];
    while let Some(p) = queue.pop() {
        let mut v: Vec<BigRational> = (0..l * l).map(|i| p[(i / l, i % l)].clone()).collect();
        for (piv, row) in &echelon {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone() / &row[*piv];
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        let Some(piv) = v.iter().position(|a| !a.is_zero()) else {
            continue;
        };
        echelon.push((piv, v));
        for m in mm.mats() {
            queue.push(m.mul(&p));
        }
        span.push(p);
    }
    let d = span.len();
    let mut t = QMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = trace_of_product(&span[i], &span[j]);
            t[(i, j)] = v.clone();
            t[(j, i)] = v;
        }
    }
    t.rank()
}

fn trace_of_product(a: &QMatrix, b: &QMatrix) -> BigRational {
    let l = a.rows();
    let mut s = BigRational::zero();
    for i in 0..l {
        for j in 0..l {
            s += &a[(i, j)] * &b[(j, i)];
        }
    }
    s
}

/// Finds a separating linear form and its univariate representation.
pub(crate) fn spectrum(mm: &MulMatrices) -> Option<Spectrum> {
    let l = mm.dim();
    let m = mm.count();
    let mut target: Option<usize> = None;
    for t in 1..=(4 * l as i64 + 8) {
        let coeffs: Vec<BigRational> = (0..m).map(|i| BigRational::from_integer(BigInt::from(t).pow(i as u32))).collect();
        let mut g = QMatrix::zeros(l, l);
        for (c, mat) in coeffs.iter().zip(mm.mats()) {
            g = g.add(&mat.scale(c));
        }
        let q = g.charpoly().squarefree();
        let r = q.degree() as usize;
        if r < l && target.is_none() {
            target = Some(trace_form_rank(mm));
        }
        if r == target.unwrap_or(l) {
            return Some(rur(mm, &g, q));
        }
    }
    None
}

/// `g_v(t) = Σ_i t^i Σ_{j>i} q_j Tr(M_v G^{j-i-1})`, so that `v(ζ_k) = g_v(θ_k)/g_1(θ_k)`.
fn rur(mm: &MulMatrices, g: &QMatrix, q: UPoly) -> Spectrum {
    let r = q.degree() as usize;
    // powers of G = A/d over the integers, avoiding a gcd per operation
    let (a, d) = integral(g);
    let mut powers = vec![IntMatrix::identity(mm.dim())];
    for _ in 1..r {
        let next = powers.last().unwrap().mul(&a);
        powers.push(next);
    }
    let traces = |c: Option<&IntMatrix>, e: &BigInt| -> Vec<BigRational> {
        let mut scale = e.clone();
        powers
            .iter()
            .map(|p| {
                let t = match c {
                    None => (0..p.rows()).map(|i| p[(i, i)].clone()).sum(),
                    Some(c) => trace_of_int_product(c, p),
                };
                let v = BigRational::new(t, scale.clone());
                scale *= &d;
                v
            })
            .collect()
    };
    let build = |traces: &[BigRational]| {
        let qc = q.coeffs();
        UPoly::new(
            (0..r)
                .map(|i| ((i + 1)..=r).map(|j| &qc[j] * &traces[j - i - 1]).sum())
                .collect(),
        )
    };
    let g1 = build(&traces(None, &BigInt::one()));
    let gy = mm
        .mats()
        .iter()
        .map(|mat| {
            let (c, e) = integral(mat);
            build(&traces(Some(&c), &e))
        })
        .collect();
    Spectrum { q, g1, gy }
}

/// `(A, d)` with `M = A/d` and `A` integral.
fn integral(m: &QMatrix) -> (IntMatrix, BigInt) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = BigInt::one();
    for i in 0..rows {
        for j in 0..cols {
            d = d.lcm(m[(i, j)].denom());
        }
    }
    let a = (0..rows)
        .map(|i| (0..cols).map(|j| m[(i, j)].numer() * (&d / m[(i, j)].denom())).collect())
        .collect();
    (IntMatrix::from_rows(cols, a), d)
}

fn trace_of_int_product(a: &IntMatrix, b: &IntMatrix) -> BigInt {
    let l = a.rows();
    let mut s = BigInt::zero();
    for i in 0..l {
        for j in 0..l {
            s += &a[(i, j)] * &b[(j, i)];
        }
    }
    s
}

/// Joint eigenvalues at working precision, one row per point.
fn joint_eigenvalues(spec: &Spectrum, mp: &mut Mp) -> Option<Vec<Vec<Cx>>> {
    let roots = mp.roots(&spec.q)?;
    Some(
        roots
            .iter()
            .map(|theta| {
                let den = mp.eval(&spec.g1, theta);
                spec.gy.iter().map(|gv| mp.cdiv(&mp.eval(gv, theta), &den)).collect()
            })
            .collect(),
    )
}

/// Candidate single-eigenvalue exponents at `bits` of precision.
fn candidates(spec: &Spectrum, m: usize, bits: usize, delta: &BigRational) -> Option<LatticeBasis> {
    let r = spec.points();
    // Evaluate with a generous guard so the linear forms are good to `bits`.
    let mut mp = Mp::new(2 * bits);
    let pts = joint_eigenvalues(spec, &mut mp)?;
    let scale = mp.pow2((3 * bits / 4) as i64);
    let accept = BigInt::one() << (bits / 8);
    let d = m + r - 1;
    let cols = d + 2 * (r - 1);
    let mut rows = vec![vec![BigInt::zero(); cols]; d];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    let two_pi = {
        let pi = mp.pi();
        mp.mul(&pi, &mp.small(2))
    };
    for k in 1..r {
        let (re_col, im_col) = (d + 2 * (k - 1), d + 2 * (k - 1) + 1);
        for i in 0..m {
            let q = mp.cdiv(&pts[k][i], &pts[0][i]);
            let ln = mp.ln_abs(&q);
            let arg = mp.arg(&q);
            rows[i][re_col] = mp.round(&mp.mul(&ln, &scale));
            rows[i][im_col] = mp.round(&mp.mul(&arg, &scale));
        }
        rows[m + k - 1][im_col] = -mp.round(&mp.mul(&two_pi, &scale));
    }
    let basis = LatticeBasis::from_independent_rows(IntMatrix::from_rows(cols, rows));
    let reduced = lll(&basis, delta);
    let found: Vec<Vec<BigInt>> = (0..reduced.rank())
        .map(|j| reduced.basis().row_vec(j))
        .filter(|row| row.iter().all(|a| a.abs() <= accept))
        .map(|row| row[..m].to_vec())
        .filter(|e| e.iter().any(|a| !a.is_zero()))
        .collect();
    if found.is_empty() {
        return Some(LatticeBasis::zero(m));
    }
    Some(LatticeBasis::from_generators(&IntMatrix::from_rows(m, found)))
}

/// Precision-escalating search for the single-eigenvalue lattice.
pub(crate) fn radical_lattice(
    mm: &MulMatrices,
    spec: &Spectrum,
    cfg: &RelationConfig,
) -> (LatticeBasis, Completeness) {
    let m = mm.count();
    let mut total = LatticeBasis::zero(m);
    let mut previous: Option<LatticeBasis> = None;
    let mut bits = cfg.start_bits.max(64);
    while bits <= cfg.max_bits {
        let round = candidates(spec, m, bits, &cfg.delta).map(|c| verified_radical(mm, &c));
        if let Some(found) = round {
            let mut gens = total.basis().clone();
            gens = gens.stack(found.basis());
            total = LatticeBasis::from_generators(&gens);
            if previous.as_ref().is_some_and(|p| p.same_lattice(&found)) {
                return (total, Completeness::HeuristicComplete);
            }
            previous = Some(found);
        } else {
            previous = None;
        }
        bits *= 2;
    }
    (total, Completeness::FallbackExhausted)
}
