use std::cmp::Ordering;
use std::fmt;

/// Total orders on the monomials of a polynomial ring.
///
/// Every variant compares raw exponent vectors, so the same comparator also
/// gives a deterministic (translation invariant) order on Laurent monomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Block order: the first `k` variables are compared first (grevlex on the
    /// block), ties are broken by grevlex on the remaining variables. Any
    /// polynomial whose leading monomial avoids the first block lies entirely
    /// in the subring of the remaining variables.
    Elimination(usize),
    /// Compare `<w, v>` first, break ties with grevlex. This is a well-order
    /// only when every weight is positive; callers working with arbitrary
    /// weights shift them on homogeneous input first.
    Weight(Vec<i64>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &[i64], b: &[i64]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
            MonomialOrder::Weight(w) => {
                let wa: i128 = w.iter().zip(a).map(|(&x, &y)| x as i128 * y as i128).sum();
                let wb: i128 = w.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum();
                wa.cmp(&wb).then_with(|| grevlex(a, b))
            }
        }
    }

    /// Whether the order is degree compatible, which makes homogenizing a
    /// Gröbner basis yield a basis of the homogenized ideal.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Elimination(k) => write!(f, "elim({k})"),
            MonomialOrder::Weight(w) => write!(f, "weight{w:?}"),
        }
    }
}

pub fn lex(a: &[i64], b: &[i64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub fn grevlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            // a smaller exponent in the last differing variable is larger
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
