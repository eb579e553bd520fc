use super::*;
use crate::groebner::IdealHandle;
use crate::poly::{parse_poly, rat, Ring};

fn ideal(vars: &[&str], gens: &[&str]) -> IdealHandle {
    let ring = Ring::polynomial(vars).unwrap();
    IdealHandle::new(vars.len(), gens.iter().map(|g| parse_poly(g, &ring).unwrap()).collect())
}

fn q(rows: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_rows(rows.len(), rows.iter().map(|r| r.iter().map(|&a| rat(a)).collect()).collect())
}

fn mats(k: &IdealHandle) -> MulMatrices {
    multiplication_matrices(&quotient_basis(k).unwrap()).unwrap()
}

#[test]
fn quotient_bases() {
    let b = quotient_basis(&ideal(&["y"], &["y^2 - 2"])).unwrap();
    assert_eq!(b.monomials(), &[Exponent::new(vec![0]), Exponent::new(vec![1])]);
    assert_eq!(quotient_basis(&ideal(&["y"], &["y - 1"])).unwrap().len(), 1);
    assert_eq!(quotient_basis(&ideal(&["a", "b"], &["a - 2", "b - 3"])).unwrap().len(), 1);
    assert!(matches!(quotient_basis(&ideal(&["a", "b"], &["a - b"])), Err(Error::NotArtinian(1))));
    assert!(matches!(quotient_basis(&ideal(&["a"], &["a"])), Err(Error::UnitIdeal)));
}

#[test]
fn matrices_from_ideals() {
    let m = mats(&ideal(&["y"], &["y^2 - 2"]));
    assert_eq!(m.mats()[0], q(&[vec![0, 2], vec![1, 0]]));
    assert_eq!(m.mats()[0].pow(2).unwrap(), QMatrix::scalar(2, &rat(2)));
    let m = mats(&ideal(&["y"], &["y^2 + y + 1"]));
    assert_eq!(m.mats()[0], q(&[vec![0, -1], vec![1, -1]]));
    assert_eq!(m.mats()[0].pow(3).unwrap(), QMatrix::identity(2));
    let m = mats(&ideal(&["y"], &["y - 1"]));
    assert_eq!(m.mats()[0], q(&[vec![1]]));
}

#[test]
fn non_invertible_is_contract_violation() {
    let r = MulMatrices::new(2, vec![q(&[vec![0, 0], vec![1, 0]])]);
    assert!(matches!(r, Err(Error::ContractViolation(_))));
    let r = MulMatrices::new(2, vec![q(&[vec![1, 1], vec![0, 1]]), q(&[vec![1, 0], vec![1, 1]])]);
    assert!(matches!(r, Err(Error::ContractViolation(_))));
}

fn scalar(rows: &[Vec<i64>]) -> ScalarRelationLattice {
    let m = MulMatrices::new(rows.len(), vec![q(rows)]).unwrap();
    scalar_relation_lattice(&m, &RelationConfig::default()).unwrap()
}

#[test]
fn scalar_lattice_examples() {
    let s = scalar(&[vec![1]]);
    assert_eq!(s.basis.rows_i64(), vec![vec![1]]);
    assert_eq!(s.lambdas, vec![rat(1)]);
    assert_eq!(s.completeness, Completeness::CertifiedTrivial);

    let s = scalar(&[vec![0, -1], vec![1, -1]]);
    assert_eq!(s.basis.rows_i64(), vec![vec![3]]);
    assert_eq!(s.lambdas, vec![rat(1)]);

    let s = scalar(&[vec![0, 2], vec![1, 0]]);
    assert_eq!(s.basis.rows_i64(), vec![vec![2]]);
    assert_eq!(s.lambdas, vec![rat(2)]);

    let m = mats(&ideal(&["y"], &["(y - 1)*(y - 2)"]));
    let s = scalar_relation_lattice(&m, &RelationConfig::default()).unwrap();
    assert!(s.basis.is_zero());
    assert_eq!(s.completeness, Completeness::HeuristicComplete);
}

#[test]
fn radical_lattice_examples() {
    let m = MulMatrices::new(2, vec![q(&[vec![0, -1], vec![1, 2]])]).unwrap();
    let r = radical_binomial_lattice(&m, &RelationConfig::default()).unwrap();
    assert_eq!(r.basis.rows_i64(), vec![vec![1]]);
    assert_eq!(r.lambdas, vec![rat(1)]);
    let s = scalar_relation_lattice(&m, &RelationConfig::default()).unwrap();
    assert!(s.basis.is_zero());

    let m = MulMatrices::new(2, vec![q(&[vec![0, 2], vec![1, 0]])]).unwrap();
    let r = radical_binomial_lattice(&m, &RelationConfig::default()).unwrap();
    assert_eq!(r.basis.rows_i64(), vec![vec![2]]);
    assert_eq!(r.lambdas, vec![rat(2)]);
}

#[test]
fn two_variable_lattice() {
    // y1^2 = 2, y2 = y1^3: binomials y2^2 - 8, y2 - 2*y1, y1^2 - 2
    let k = ideal(&["a", "b"], &["a^2 - 2", "b - a^3"]);
    let m = mats(&k);
    let s = scalar_relation_lattice(&m, &RelationConfig::default()).unwrap();
    let expect = LatticeBasis::from_i64_generators(2, &[vec![2, 0], vec![-1, 1]]);
    assert!(s.basis.same_lattice(&expect), "{:?}", s.basis);
    for row in s.basis.rows_i64() {
        let lam = s.lambda_of(&to_big(&row)).unwrap();
        let p = m.product(&to_big(&row));
        assert_eq!(p.scalar_value(), Some(lam));
    }
}

#[test]
fn agrees_with_box_search() {
    let cases: &[(&[&str], &[&str])] = &[
        (&["a"], &["a^2 + a + 1"]),
        (&["a"], &["a^4 - 1"]),
        (&["a", "b"], &["a^2 - 2", "b^2 - 3"]),
        (&["a", "b"], &["a^2 + 1", "b - a"]),
        (&["a", "b"], &["(a - 1)^2", "b - 2"]),
        (&["a", "b"], &["a^2 - a - 1", "a*b - 1"]),
        (&["a", "b", "c"], &["a + 1", "b^2 + b + 1", "c - 4"]),
    ];
    for (vars, gens) in cases {
        let m = mats(&ideal(vars, gens));
        let s = scalar_relation_lattice(&m, &RelationConfig::default()).unwrap();
        let radius = if m.count() == 3 { 4 } else { 8 };
        let brute = box_relations(&m, radius, true);
        for e in &brute {
            assert!(s.basis.contains(&to_big(e)), "{gens:?}: missing {e:?}");
        }
        let via_box =
            scalar_relation_lattice(&m, &RelationConfig { strategy: "box-search".into(), box_radius: radius, ..Default::default() })
                .unwrap();
        assert!(via_box.basis.same_lattice(&s.basis), "{gens:?}");
        // determinant consistency: λ^ℓ = ∏ det(M_i)^{e_i}
        for (row, lam) in s.basis.rows_i64().iter().zip(&s.lambdas) {
            let mut rhs = rat(1);
            for (e, d) in row.iter().zip(m.dets()) {
                rhs *= num_traits::pow::Pow::pow(d, *e as i32);
            }
            assert_eq!(num_traits::pow::Pow::pow(lam, m.dim() as i32), rhs);
        }
    }
}

#[test]
fn unknown_strategy() {
    let m = MulMatrices::new(1, vec![q(&[vec![1]])]).unwrap();
    let cfg = RelationConfig { strategy: "nope".into(), ..Default::default() };
    assert!(matches!(scalar_relation_lattice(&m, &cfg), Err(Error::UnknownStrategy { .. })));
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
