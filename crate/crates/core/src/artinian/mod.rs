//! Zero-dimensional Laurent ideals: quotient bases, multiplication matrices
//! and the lattice of exponents whose matrix products are scalar.

mod discover;
mod exact;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::groebner::{saturate_by_variables, standard_monomials, IdealHandle};
use crate::intlat::LatticeBasis;
use crate::linalg::QMatrix;
use crate::poly::{Exponent, LaurentPoly};

pub use exact::box_relations;

/// How much trust a negative part of a relation lattice deserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Completeness {
    /// Found without any numeric search: the lattice is exactly right.
    CertifiedTrivial,
    /// Numeric discovery settled across two precision rounds.
    HeuristicComplete,
    /// The precision or search budget ran out; the lattice is a verified sublattice.
    FallbackExhausted,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::CertifiedTrivial => "certified-trivial",
            Completeness::HeuristicComplete => "heuristic-complete",
            Completeness::FallbackExhausted => "fallback-exhausted",
        }
    }

    /// The weaker of two flags.
    pub fn meet(self, other: Completeness) -> Completeness {
        use Completeness::*;
        match (self, other) {
            (FallbackExhausted, _) | (_, FallbackExhausted) => FallbackExhausted,
            (HeuristicComplete, _) | (_, HeuristicComplete) => HeuristicComplete,
            _ => CertifiedTrivial,
        }
    }
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Standard monomials of the variable-saturated ideal.
#[derive(Debug, Clone)]
pub struct QuotientBasis {
    ideal: IdealHandle,
    monomials: Vec<Exponent>,
}

impl QuotientBasis {
    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// The saturated ideal the basis belongs to.
    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }
}

pub fn quotient_basis(k: &IdealHandle) -> Result<QuotientBasis> {
    let ideal = saturate_by_variables(k);
    let monomials = standard_monomials(&ideal)?;
    Ok(QuotientBasis { ideal, monomials })
}

/// Commuting invertible matrices `M_1..M_m`, with determinants and inverses.
#[derive(Debug, Clone)]
pub struct MulMatrices {
    mats: Vec<QMatrix>,
    inverses: Vec<QMatrix>,
    dets: Vec<BigRational>,
    dim: usize,
}

impl MulMatrices {
    /// Checks invertibility and pairwise commutation exactly.
    pub fn new(dim: usize, mats: Vec<QMatrix>) -> Result<Self> {
        let mut inverses = Vec::with_capacity(mats.len());
        let mut dets = Vec::with_capacity(mats.len());
        for (i, m) in mats.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: m.rows() });
            }
            let det = m.det();
            if det.is_zero() {
                return Err(Error::ContractViolation(format!(
                    "multiplication by variable {} is not invertible; the ideal is not saturated",
                    i + 1
                )));
            }
            dets.push(det);
            inverses.push(m.inverse().expect("nonzero determinant"));
        }
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                if mats[i].mul(&mats[j]) != mats[j].mul(&mats[i]) {
                    return Err(Error::ContractViolation(format!(
                        "multiplication matrices {} and {} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(MulMatrices { mats, inverses, dets, dim })
    }

    pub fn mats(&self) -> &[QMatrix] {
        &self.mats
    }

    pub fn dets(&self) -> &[BigRational] {
        &self.dets
    }

    /// `ℓ`, the size of each matrix.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `m`, the number of matrices.
    pub fn count(&self) -> usize {
        self.mats.len()
    }

    pub fn power(&self, i: usize, k: i64) -> QMatrix {
        let base = if k < 0 { &self.inverses[i] } else { &self.mats[i] };
        base.pow(k.abs()).expect("nonnegative power")
    }

    /// `∏ M_i^{e_i}`
    pub fn product(&self, e: &[BigInt]) -> QMatrix {
        let mut p = QMatrix::identity(self.dim);
        for (i, k) in e.iter().enumerate() {
            if !k.is_zero() {
                let k = i64::try_from(k).expect("exponent exceeds i64");
                p = p.mul(&self.power(i, k));
            }
        }
        p
    }
}

/// Column `k` of `M_i` holds the normal form of `y_i` times the `k`-th standard monomial.
pub fn multiplication_matrices(basis: &QuotientBasis) -> Result<MulMatrices> {
    let n = basis.ideal.nvars();
    let l = basis.len();
    let index: HashMap<&Exponent, usize> = basis.monomials.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut mats = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = QMatrix::zeros(l, l);
        for (k, b) in basis.monomials.iter().enumerate() {
            let f = LaurentPoly::monomial(n, crate::poly::rat(1), b.add(&Exponent::unit(n, i)));
            let nf = basis.ideal.reduce(&f);
            for (c, e) in nf.terms() {
                let row = *index.get(e).ok_or_else(|| {
                    Error::ContractViolation("normal form contains a non-standard monomial".into())
                })?;
                m[(row, k)] = c.clone();
            }
        }
        mats.push(m);
    }
    MulMatrices::new(l, mats)
}

/// A lattice of exponents with one rational value per basis row.
#[derive(Debug, Clone)]
pub struct ScalarRelationLattice {
    pub basis: LatticeBasis,
    pub lambdas: Vec<BigRational>,
    pub completeness: Completeness,
}

impl ScalarRelationLattice {
    /// λ of an arbitrary lattice element, from its coordinates.
    pub fn lambda_of(&self, e: &[BigInt]) -> Option<BigRational> {
        let coords = self.basis.coordinates(e)?;
        let mut acc = BigRational::from_integer(1.into());
        for (a, l) in coords.iter().zip(&self.lambdas) {
            let k = i32::try_from(a).ok()?;
            acc *= num_traits::pow::Pow::pow(l, k);
        }
        Some(acc)
    }
}

/// Search parameters for relation discovery.
#[derive(Debug, Clone)]
pub struct RelationConfig {
    /// Registered name of the discovery strategy.
    pub strategy: String,
    pub start_bits: usize,
    pub max_bits: usize,
    /// LLL parameter used in discovery.
    pub delta: BigRational,
    /// Half-width of the exhaustive box for `box-search`.
    pub box_radius: i64,
}

impl Default for RelationConfig {
    fn default() -> Self {
        RelationConfig {
            strategy: "eigen-lll".into(),
            start_bits: 128,
            max_bits: 4096,
            delta: BigRational::new(99.into(), 100.into()),
            box_radius: 8,
        }
    }
}

/// A way of finding the lattice of exponents whose products have a single eigenvalue.
pub trait RelationFinder: Send + Sync {
    fn name(&self) -> &'static str;
    fn radical(&self, mm: &MulMatrices, cfg: &RelationConfig) -> Result<(LatticeBasis, Completeness)>;
}

/// Eigenvalue logarithms plus LLL, checked exactly.
pub struct EigenLll;

impl RelationFinder for EigenLll {
    fn name(&self) -> &'static str {
        "eigen-lll"
    }

    fn radical(&self, mm: &MulMatrices, cfg: &RelationConfig) -> Result<(LatticeBasis, Completeness)> {
        let m = mm.count();
        if m == 0 {
            return Ok((LatticeBasis::zero(0), Completeness::CertifiedTrivial));
        }
        let spec = discover::spectrum(mm)
            .ok_or_else(|| Error::Precondition("no separating linear form found".into()))?;
        if spec.points() == 1 {
            return Ok((LatticeBasis::full(m), Completeness::CertifiedTrivial));
        }
        Ok(discover::radical_lattice(mm, &spec, cfg))
    }
}

/// Exhaustive search over a box of exponents.
pub struct BoxSearch;

impl RelationFinder for BoxSearch {
    fn name(&self) -> &'static str {
        "box-search"
    }

    fn radical(&self, mm: &MulMatrices, cfg: &RelationConfig) -> Result<(LatticeBasis, Completeness)> {
        let rows = exact::box_search(mm, cfg.box_radius, |p| exact::single_eigenvalue(p).is_some());
        Ok((exact::lattice_from_i64(mm.count(), &rows), Completeness::HeuristicComplete))
    }
}

static FINDERS: [&dyn RelationFinder; 2] = [&EigenLll, &BoxSearch];

pub fn relation_finders() -> impl Iterator<Item = &'static str> {
    FINDERS.iter().map(|f| f.name())
}

pub fn relation_finder(name: &str) -> Result<&'static dyn RelationFinder> {
    FINDERS.iter().copied().find(|f| f.name() == name).ok_or_else(|| Error::UnknownStrategy {
        kind: "relation finder".into(),
        name: name.into(),
        known: relation_finders().collect::<Vec<_>>().join(", "),
    })
}

/// Exponents `e` for which `∏ M_i^{e_i}` has a single eigenvalue, with that eigenvalue.
pub fn radical_binomial_lattice(mm: &MulMatrices, cfg: &RelationConfig) -> Result<ScalarRelationLattice> {
    let (basis, completeness) = relation_finder(&cfg.strategy)?.radical(mm, cfg)?;
    let lambdas = exact::lambdas(mm, &basis, false);
    Ok(ScalarRelationLattice { basis, lambdas, completeness })
}

/// Exponents `e` for which `∏ M_i^{e_i}` is a scalar matrix, with the scalar.
pub fn scalar_relation_lattice(mm: &MulMatrices, cfg: &RelationConfig) -> Result<ScalarRelationLattice> {
    let (radical, completeness) = relation_finder(&cfg.strategy)?.radical(mm, cfg)?;
    let basis = exact::scalar_sublattice(mm, &radical);
    let lambdas = exact::lambdas(mm, &basis, true);
    Ok(ScalarRelationLattice { basis, lambdas, completeness })
}

#[cfg(test)]
mod tests;
