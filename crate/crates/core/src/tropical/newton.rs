use num_integer::Integer;

use crate::poly::LaurentPoly;

/// Primitive directions spanning the tropical curve of a polynomial in two
/// variables: the outer normals of the edges of its Newton polygon (max
/// convention). Empty for monomials.
pub fn newton_normals(f: &LaurentPoly) -> Vec<(i64, i64)> {
    assert_eq!(f.nvars(), 2, "Newton polygon of a non-planar polynomial");
    let mut pts: Vec<(i64, i64)> = f.terms().iter().map(|(_, e)| (e[0], e[1])).collect();
    pts.sort();
    pts.dedup();
    if pts.len() < 2 {
        return vec![];
    }
    let hull = convex_hull(&pts);
    let mut out = Vec::new();
    if hull.len() == 2 {
        let (dx, dy) = (hull[1].0 - hull[0].0, hull[1].1 - hull[0].1);
        out.push(primitive(dy, -dx));
        out.push(primitive(-dy, dx));
    } else {
        for k in 0..hull.len() {
            let (p, q) = (hull[k], hull[(k + 1) % hull.len()]);
            // counter-clockwise edge (dx, dy) has outer normal (dy, -dx)
            out.push(primitive(q.1 - p.1, -(q.0 - p.0)));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn primitive(a: i64, b: i64) -> (i64, i64) {
    let g = a.gcd(&b);
    (a / g, b / g)
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Counter-clockwise hull without collinear points; two points if all are collinear.
fn convex_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
