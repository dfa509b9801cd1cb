//! Exact convex polygons and intervals for plotting decompositions of
//! dimension one or two.

use crate::rational::RationalExt;

use super::hyperplane::HalfSpace;
use crate::rational::{dot, Rational};

/// Vertices (counter-clockwise) of `{x in [lo,hi] : every constraint holds}`.
pub fn convex_polygon(
    constraints: &[HalfSpace],
    lo: &[Rational],
    hi: &[Rational],
) -> Vec<Vec<Rational>> {
    assert_eq!(lo.len(), 2, "polygons need two coordinates");
    let mut poly = vec![
        vec![lo[0].clone(), lo[1].clone()],
        vec![hi[0].clone(), lo[1].clone()],
        vec![hi[0].clone(), hi[1].clone()],
        vec![lo[0].clone(), hi[1].clone()],
    ];
    for c in constraints {
        if poly.is_empty() {
            break;
        }
        let mut out = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let cur = &poly[i];
            let next = &poly[(i + 1) % poly.len()];
            let sc = c.slack(cur);
            let sn = c.slack(next);
            if !sc.is_negative() {
                out.push(cur.clone());
            }
            if (sc.is_negative() && sn.is_positive()) || (sc.is_positive() && sn.is_negative()) {
                let t = &sc / (&sc - &sn);
                out.push(
                    cur.iter()
                        .zip(next)
                        .map(|(a, b)| a + &t * (b - a))
                        .collect(),
                );
            }
        }
        out.dedup();
        if out.len() > 1 && out.first() == out.last() {
            out.pop();
        }
        poly = out;
    }
    poly
}

/// `[a, b]` with `a < b` for a one-dimensional region, `None` if degenerate.
pub fn interval(
    constraints: &[HalfSpace],
    lo: &Rational,
    hi: &Rational,
) -> Option<(Rational, Rational)> {
    let mut a = lo.clone();
    let mut b = hi.clone();
    for c in constraints {
        let n = &c.normal[0];
        if n.is_zero() {
            if c.offset.is_negative() {
                return None;
            }
            continue;
        }
        let bound = &c.offset / n;
        if n.is_positive() {
            b = b.min(bound);
        } else {
            a = a.max(bound);
        }
    }
    (a < b).then_some((a, b))
}

/// Index of the first constraint tight along the whole segment `p..q`.
pub fn supporting_constraint(
    constraints: &[HalfSpace],
    p: &[Rational],
    q: &[Rational],
) -> Option<usize> {
    constraints
        .iter()
        .position(|c| dot(&c.normal, p) == c.offset && dot(&c.normal, q) == c.offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn triangle_from_box() {
        let c = vec![HalfSpace {
            normal: vec![int(1), int(1)],
            offset: int(1),
        }];
        let poly = convex_polygon(&c, &[int(0), int(0)], &[int(1), int(1)]);
        assert_eq!(
            poly,
            vec![
                vec![int(0), int(0)],
                vec![int(1), int(0)],
                vec![int(0), int(1)]
            ]
        );
        assert_eq!(supporting_constraint(&c, &poly[1], &poly[2]), Some(0));
    }

    #[test]
    fn intervals() {
        let c = vec![
            HalfSpace {
                normal: vec![int(2)],
                offset: int(1),
            },
            HalfSpace {
                normal: vec![int(-1)],
                offset: int(0),
            },
        ];
        assert_eq!(
            interval(&c, &int(-5), &int(5)),
            Some((int(0), crate::rational::ratio(1, 2)))
        );
    }
}
