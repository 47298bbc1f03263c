//! Exact planar predicates over rational points.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Self { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Self::new(q(x), q(y))
    }

    pub fn origin() -> Self {
        Self::ints(0, 0)
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, t: &Q) -> Point {
        Point::new(&self.x * t, &self.y * t)
    }

    pub fn norm2(&self) -> Q {
        &self.x * &self.x + &self.y * &self.y
    }

    /// Lies on the positive horizontal axis.
    pub fn on_ray(&self) -> bool {
        self.y.is_zero() && self.x.is_positive()
    }
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn cross(a: &Point, b: &Point) -> Q {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Q {
    &a.x * &b.x + &a.y * &b.y
}

/// Sign of the turn `a -> b -> c`: +1 left, -1 right, 0 collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    sign(&cross(&b.sub(a), &c.sub(a)))
}

pub fn sign(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

#[derive(Debug, Clone, PartialEq)]
pub enum Contact {
    Disjoint,
    /// Interiors cross transversally at the point.
    Proper(Point),
    /// The segments meet in finitely many points, some of them endpoints.
    Touch(Vec<Point>),
    /// Collinear with an intersection of positive length.
    Overlap,
}

pub fn segment_contact(a: &Point, b: &Point, c: &Point, d: &Point) -> Contact {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Contact::Proper(line_intersection(a, b, c, d));
    }
    if o1 == 0 && o2 == 0 {
        // Collinear: compare along the dominant axis.
        let key = |p: &Point| if a.x != b.x { p.x.clone() } else { p.y.clone() };
        let (s0, s1) = minmax(key(a), key(b));
        let (t0, t1) = minmax(key(c), key(d));
        let lo = if s0 > t0 { s0 } else { t0 };
        let hi = if s1 < t1 { s1 } else { t1 };
        if lo > hi {
            return Contact::Disjoint;
        }
        if lo < hi {
            return Contact::Overlap;
        }
        let p = [a, b, c, d].into_iter().find(|p| key(p) == lo).unwrap().clone();
        return Contact::Touch(vec![p]);
    }
    let mut pts = Vec::new();
    for (p, s, t) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
        if on_segment(p, s, t) && !pts.contains(p) {
            pts.push(p.clone());
        }
    }
    if pts.is_empty() {
        Contact::Disjoint
    } else {
        Contact::Touch(pts)
    }
}

fn minmax(a: Q, b: Q) -> (Q, Q) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Intersection of the lines through `ab` and `cd` (assumed non-parallel).
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Point {
    let r = b.sub(a);
    let s = d.sub(c);
    let t = cross(&c.sub(a), &s) / cross(&r, &s);
    a.add(&r.scale(&t))
}

/// Parameter of the intersection along `ab` (assumed non-parallel).
pub fn intersection_param(a: &Point, b: &Point, c: &Point, d: &Point) -> Q {
    let r = b.sub(a);
    let s = d.sub(c);
    cross(&c.sub(a), &s) / cross(&r, &s)
}

pub fn dist2_point_segment(p: &Point, a: &Point, b: &Point) -> Q {
    let ab = b.sub(a);
    let len2 = ab.norm2();
    if len2.is_zero() {
        return p.sub(a).norm2();
    }
    let mut t = dot(&p.sub(a), &ab) / &len2;
    if t.is_negative() {
        t = Q::zero();
    } else if t > Q::one() {
        t = Q::one();
    }
    p.sub(&a.add(&ab.scale(&t))).norm2()
}

/// Squared distance from `p` to the closed positive horizontal ray.
pub fn dist2_to_ray(p: &Point) -> Q {
    if p.x.is_positive() {
        &p.y * &p.y
    } else {
        p.norm2()
    }
}

/// Segment crossing with the positive horizontal ray: `(x, +1)` when
/// crossing upwards (counterclockwise), `(x, -1)` downwards.
/// Endpoints are assumed off the ray.
pub fn ray_crossing(a: &Point, b: &Point) -> Option<(Q, i32)> {
    let up = a.y.is_negative() && b.y.is_positive();
    let down = a.y.is_positive() && b.y.is_negative();
    if !up && !down {
        return None;
    }
    let x = &a.x + (&b.x - &a.x) * (-&a.y) / (&b.y - &a.y);
    if x.is_positive() {
        Some((x, if up { 1 } else { -1 }))
    } else {
        None
    }
}

/// Winding number of the closed polygon around `p` (`p` off the polygon).
pub fn winding_number(poly: &[Point], p: &Point) -> i32 {
    let n = poly.len();
    let mut w = 0;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                w += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            w -= 1;
        }
    }
    w
}

/// Twice the signed area; positive for counterclockwise polygons.
pub fn signed_area2(poly: &[Point]) -> Q {
    let n = poly.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += cross(&poly[i], &poly[(i + 1) % n]);
    }
    s
}

/// Rational rotation by the angle with tangent-half-angle `t`.
pub fn rotation(t: &Q) -> (Q, Q) {
    let t2 = t * t;
    let den = Q::one() + &t2;
    ((Q::one() - &t2) / &den, (t * q(2)) / den)
}

pub fn rotate(p: &Point, cs: &(Q, Q)) -> Point {
    let (c, s) = cs;
    Point::new(&p.x * c - &p.y * s, &p.x * s + &p.y * c)
}

pub fn parse_rational(s: &str) -> Option<Q> {
    crate::ring::parse_rational(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::ints(x, y)
    }

    #[test]
    fn contacts() {
        assert!(matches!(segment_contact(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)), Contact::Proper(p) if p == pt(1, 1)));
        assert_eq!(segment_contact(&pt(0, 0), &pt(1, 0), &pt(1, 0), &pt(2, 3)), Contact::Touch(vec![pt(1, 0)]));
        assert_eq!(segment_contact(&pt(0, 0), &pt(2, 0), &pt(1, 0), &pt(3, 0)), Contact::Overlap);
        assert_eq!(segment_contact(&pt(0, 0), &pt(1, 0), &pt(1, 0), &pt(3, 0)), Contact::Touch(vec![pt(1, 0)]));
        assert_eq!(segment_contact(&pt(0, 0), &pt(1, 0), &pt(2, 0), &pt(3, 0)), Contact::Disjoint);
        assert_eq!(segment_contact(&pt(0, 0), &pt(1, 1), &pt(0, 1), &pt(-1, 5)), Contact::Disjoint);
        assert_eq!(segment_contact(&pt(0, 0), &pt(4, 0), &pt(2, 0), &pt(2, 5)), Contact::Touch(vec![pt(2, 0)]));
    }

    #[test]
    fn windings() {
        let sq = vec![pt(-1, -1), pt(1, -1), pt(1, 1), pt(-1, 1)];
        assert_eq!(winding_number(&sq, &pt(0, 0)), 1);
        let rev: Vec<Point> = sq.iter().rev().cloned().collect();
        assert_eq!(winding_number(&rev, &pt(0, 0)), -1);
        assert_eq!(winding_number(&sq, &pt(3, 0)), 0);
        assert!(signed_area2(&sq) > Q::zero());
        let stations: Vec<_> = (0..4).filter_map(|i| ray_crossing(&sq[i], &sq[(i + 1) % 4])).collect();
        assert_eq!(stations, vec![(q(1), 1)]);
    }

    #[test]
    fn distances() {
        assert_eq!(dist2_point_segment(&pt(0, 1), &pt(-1, 0), &pt(1, 0)), q(1));
        assert_eq!(dist2_point_segment(&pt(3, 0), &pt(-1, 0), &pt(1, 0)), q(4));
        assert_eq!(dist2_to_ray(&pt(-3, 4)), q(25));
        assert_eq!(dist2_to_ray(&pt(3, 4)), q(16));
    }

    #[test]
    fn rotation_is_orthogonal() {
        let cs = rotation(&qr(1, 8));
        assert_eq!(&cs.0 * &cs.0 + &cs.1 * &cs.1, q(1));
        assert_eq!(rotate(&pt(1, 0), &cs).norm2(), q(1));
    }
}
