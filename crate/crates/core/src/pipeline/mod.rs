//! The binomial part of an ideal: Laurent extension, tropical reduction to
//! an Artinian ideal, relation lattice, and back-substitution. Also the
//! containment decisions built on it and a brute-force oracle.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::artinian::{
    multiplication_matrices, quotient_basis, scalar_relation_lattice, Completeness, RelationConfig,
};
use crate::error::{Error, Result};
use crate::groebner::{eliminate_to_subring, krull_dimension, saturate_by_variables, IdealHandle};
use crate::intlat::{hnf, kernel_lattice, IntMatrix, LatticeBasis};
use crate::poly::{grevlex, rat, Binomial, Coeff, Exponent, LaurentPoly, MonomialOrder};
use crate::tropical::{tropical_span, TropicalConfig};

#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub tropical: TropicalConfig,
    pub relations: RelationConfig,
    /// Largest degree tried when searching for a witness in an ideal whose
    /// Laurent extension is the unit ideal.
    pub witness_degree_cap: Option<u32>,
}

impl PipelineConfig {
    pub const DEFAULT_WITNESS_CAP: u32 = 8;

    fn witness_cap(&self) -> u32 {
        self.witness_degree_cap.unwrap_or(Self::DEFAULT_WITNESS_CAP)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// The Laurent extension is everything.
    UnitLaurent,
    /// No binomials were found.
    Trivial,
    Lattice,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::UnitLaurent => "UNIT_LAURENT",
            Status::Trivial => "TRIVIAL",
            Status::Lattice => "LATTICE",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Generators `x^c - λ` of the binomial part of `I Q[x^±]`, with the
/// partial character they define.
#[derive(Debug, Clone)]
pub struct BinomialPartResult {
    pub status: Status,
    /// HNF basis of the lattice, in the original variables.
    pub lattice: LatticeBasis,
    pub lambdas: Vec<BigRational>,
    pub generators: Vec<LaurentPoly>,
    pub completeness: Completeness,
    /// Whether each generator reduced to zero modulo the Laurent extension.
    pub certificates: Vec<bool>,
}

impl BinomialPartResult {
    fn without_lattice(n: usize, status: Status, completeness: Completeness) -> Self {
        BinomialPartResult {
            status,
            lattice: LatticeBasis::zero(n),
            lambdas: vec![],
            generators: vec![],
            completeness,
            certificates: vec![],
        }
    }

    /// Whether `x^u - λ x^v` lies in the Laurent extension according to this result.
    pub fn explains(&self, b: &Binomial) -> bool {
        match self.status {
            Status::UnitLaurent => true,
            Status::Trivial => false,
            Status::Lattice => {
                let d: Vec<BigInt> = b.direction().iter().map(|&a| BigInt::from(a)).collect();
                character(&self.lattice, &self.lambdas, &d).is_some_and(|l| l == b.lambda)
            }
        }
    }
}

/// `φ(e)` for `e` in the lattice, `None` outside it.
pub fn character(lattice: &LatticeBasis, lambdas: &[BigRational], e: &[BigInt]) -> Option<BigRational> {
    let coords = lattice.coordinates(e)?;
    let mut acc = BigRational::one();
    for (a, l) in coords.iter().zip(lambdas) {
        acc *= Pow::pow(l, i32::try_from(a).ok()?);
    }
    Some(acc)
}

/// Answer to "does `I` contain a binomial?".
#[derive(Debug, Clone)]
pub struct Decision {
    pub contains: bool,
    /// A binomial of `I` itself, checked by normal form.
    pub witness: Option<LaurentPoly>,
    pub status: Status,
    pub completeness: Completeness,
}

fn to_i64(a: &BigInt) -> i64 {
    i64::try_from(a).expect("exponent exceeds i64")
}

pub fn binomial_part_laurent(ideal: &IdealHandle, cfg: &PipelineConfig) -> Result<BinomialPartResult> {
    let n = ideal.nvars();
    let j = saturate_by_variables(ideal);
    if j.is_unit() {
        return Ok(BinomialPartResult::without_lattice(n, Status::UnitLaurent, Completeness::CertifiedTrivial));
    }
    // negative verdicts are never better than heuristic
    let trivial = || BinomialPartResult::without_lattice(n, Status::Trivial, Completeness::HeuristicComplete);
    let span = tropical_span(&j, &cfg.tropical)?;
    let l = if span.rank() == 0 { LatticeBasis::full(n) } else { kernel_lattice(&span.as_qmatrix()) };
    let m = l.rank();
    if m == 0 {
        return Ok(trivial());
    }
    let b = l.basis().clone();

    // U·Bᵀ = [I; 0], so W = U^{-T} is unimodular with B as its first rows,
    // and y = x^W turns x^a into y^{U a}.
    let (_, u) = hnf(&b.transpose());
    let k = if m == n && b == IntMatrix::identity(n) {
        j.clone()
    } else {
        let to_y = |e: &Exponent| {
            Exponent::new((0..n).map(|r| (0..n).map(|c| to_i64(&u[(r, c)]) * e[c]).sum()).collect())
        };
        let moved = j.reduced_gb(&MonomialOrder::Grevlex).iter().map(|g| g.map_exponents(n, to_y)).collect();
        let moved = saturate_by_variables(&IdealHandle::from_laurent(n, moved));
        let keep: Vec<usize> = (0..m).collect();
        saturate_by_variables(&eliminate_to_subring(&moved, &keep))
    };
    let dim = krull_dimension(&k);
    if dim != 0 {
        return Err(Error::ContractViolation(format!(
            "restriction to the binomial lattice has dimension {dim}; the tropical span was incomplete"
        )));
    }

    let qb = quotient_basis(&k)?;
    let mm = multiplication_matrices(&qb)?;
    let rel = scalar_relation_lattice(&mm, &cfg.relations)?;
    if rel.basis.is_zero() {
        return Ok(trivial());
    }

    // back to x: y^c = x^{c B}
    let (h, v) = hnf(&rel.basis.basis().mul(&b));
    let rank = rel.basis.rank();
    let lattice = LatticeBasis::from_independent_rows(h.select_rows(&(0..rank).collect::<Vec<_>>()));
    let lambdas: Vec<BigRational> = (0..rank)
        .map(|i| {
            let mut acc = BigRational::one();
            for (c, lam) in v.row(i).iter().zip(&rel.lambdas) {
                acc *= Pow::pow(lam, i32::try_from(c).expect("basis change exceeds i32"));
            }
            acc
        })
        .collect();

    let mut generators = Vec::with_capacity(rank);
    let mut certificates = Vec::with_capacity(rank);
    for (row, lam) in lattice.rows_i64().into_iter().zip(&lambdas) {
        let g = LaurentPoly::from_terms(n, vec![(rat(1), Exponent::new(row)), (-lam.clone(), Exponent::zero(n))]);
        let ok = j.contains(&g.monomial_normalize());
        if !ok {
            return Err(Error::ContractViolation(format!("generator {g:?} does not reduce to zero")));
        }
        generators.push(g);
        certificates.push(ok);
    }
    Ok(BinomialPartResult {
        status: Status::Lattice,
        lattice,
        lambdas,
        generators,
        completeness: rel.completeness,
        certificates,
    })
}

/// Smallest-looking monomial multiple of `g` lying in `ideal`: start from a
/// power of `x_1 ... x_n` and drop variables one at a time while possible.
fn monomial_multiple_in(ideal: &IdealHandle, g: &LaurentPoly) -> Option<LaurentPoly> {
    let n = ideal.nvars();
    let g = g.monomial_normalize();
    let mut w = (0..=64).map(|k| Exponent::new(vec![k; n])).find(|w| ideal.contains(&g.shift(w)))?;
    for i in 0..n {
        while w[i] > 0 {
            let mut smaller = w.clone().into_vec();
            smaller[i] -= 1;
            let smaller = Exponent::new(smaller);
            if !ideal.contains(&g.shift(&smaller)) {
                break;
            }
            w = smaller;
        }
    }
    Some(g.shift(&w))
}

/// Decides whether `I` contains a binomial, producing a witness in `I`
/// when it does.
pub fn contains_binomial(ideal: &IdealHandle, cfg: &PipelineConfig) -> Result<Decision> {
    let res = binomial_part_laurent(ideal, cfg)?;
    match res.status {
        Status::Trivial => {
            Ok(Decision { contains: false, witness: None, status: res.status, completeness: res.completeness })
        }
        Status::Lattice => {
            let witness = res
                .generators
                .iter()
                .filter_map(|g| monomial_multiple_in(ideal, g))
                .min_by(|a, b| a.total_degree().cmp(&b.total_degree()).then_with(|| compare_polys(a, b)))
                .ok_or_else(|| Error::ContractViolation("no monomial multiple of a generator lies in the ideal".into()))?;
            Ok(Decision { contains: true, witness: Some(witness), status: res.status, completeness: res.completeness })
        }
        Status::UnitLaurent => {
            let cap = cfg.witness_cap();
            for d in 1..=cap {
                if let Some(w) = witness_of_degree(ideal, d) {
                    return Ok(Decision {
                        contains: true,
                        witness: Some(w),
                        status: res.status,
                        completeness: res.completeness,
                    });
                }
            }
            Err(Error::WitnessCapExceeded(cap))
        }
    }
}

fn compare_polys(a: &LaurentPoly, b: &LaurentPoly) -> std::cmp::Ordering {
    let ea: Vec<&Exponent> = a.terms().iter().map(|(_, e)| e).collect();
    let eb: Vec<&Exponent> = b.terms().iter().map(|(_, e)| e).collect();
    ea.cmp(&eb)
}

/// A binomial of `I` of degree at most `d`, including differences of two
/// monomials that both lie in `I`.
fn witness_of_degree(ideal: &IdealHandle, d: u32) -> Option<LaurentPoly> {
    let n = ideal.nvars();
    let low = |b: &Binomial| b.u.degree().max(b.v.degree());
    if let Some(b) = brute_force_binomials(ideal, d).into_iter().min_by_key(low) {
        return Some(b.to_poly());
    }
    let inside: Vec<Exponent> =
        monomials_up_to(n, d).into_iter().filter(|e| ideal.contains(&LaurentPoly::monomial(n, rat(1), e.clone()))).collect();
    match inside.as_slice() {
        [a, b, ..] => Some(Binomial { u: a.clone(), v: b.clone(), lambda: rat(1) }.to_poly()),
        _ => None,
    }
}

/// Generators of `Bin(I)` in the polynomial ring, for `I` saturated by the
/// product of the variables.
pub fn binomial_part_contract(ideal: &IdealHandle, cfg: &PipelineConfig) -> Result<Vec<LaurentPoly>> {
    let n = ideal.nvars();
    if !saturate_by_variables(ideal).same_ideal(ideal) {
        return Err(Error::NotSaturated);
    }
    let res = binomial_part_laurent(ideal, cfg)?;
    Ok(match res.status {
        Status::UnitLaurent => vec![LaurentPoly::one(n)],
        Status::Trivial => vec![],
        Status::Lattice => res.generators.iter().map(LaurentPoly::monomial_normalize).collect(),
    })
}

/// Whether `I` contains a monomial, i.e. `(I : (x_1 ... x_n)^∞) = <1>`.
pub fn contains_monomial(ideal: &IdealHandle) -> bool {
    saturate_by_variables(ideal).is_unit()
}

/// Monomials of total degree at most `d`, in increasing grevlex order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Exponent>) {
        if i == cur.len() {
            out.push(Exponent::new(cur.clone()));
            return;
        }
        for a in 0..=left {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d as i64, &mut cur, &mut out);
    out.sort_by(|a, b| grevlex(a, b));
    out
}

/// Every binomial `x^u - λ x^v` in `I` with `u ≠ v` of degree at most `d`
/// whose monomials are not themselves in `I`; `x^u` is the grevlex-larger term.
pub fn brute_force_binomials(ideal: &IdealHandle, d: u32) -> Vec<Binomial> {
    let n = ideal.nvars();
    // monomials grouped by the monic normal form, with the leading coefficient
    let mut groups: Vec<(LaurentPoly, Vec<(Exponent, Coeff)>)> = Vec::new();
    let mut index: HashMap<LaurentPoly, usize> = HashMap::new();
    for e in monomials_up_to(n, d) {
        let nf = ideal.reduce(&LaurentPoly::monomial(n, rat(1), e.clone()));
        if nf.is_zero() {
            continue;
        }
        let lead = nf.terms()[0].0.clone();
        let key = nf.monic();
        let slot = *index.entry(key.clone()).or_insert_with(|| {
            groups.push((key, Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push((e, lead));
    }
    let mut out = Vec::new();
    for (_, members) in groups {
        // members are in increasing grevlex order
        for (a, (u, cu)) in members.iter().enumerate().rev() {
            for (v, cv) in members[..a].iter().rev() {
                debug_assert!(!cv.is_zero());
                out.push(Binomial { u: u.clone(), v: v.clone(), lambda: cu / cv });
            }
        }
    }
    out.sort_by(|x, y| grevlex(&y.u, &x.u).then_with(|| grevlex(&y.v, &x.v)));
    out
}
