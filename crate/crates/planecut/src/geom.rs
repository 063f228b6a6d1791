//! Exact planar primitives: integer vectors, rational points, lines and
//! half-planes with canonical integer representations.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Integer vector in the plane. Doubles as a facet normal and as a
/// lattice direction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec {
    pub x: Int,
    pub y: Int,
}

impl IntVec {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        IntVec { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        IntVec { x: Int::zero(), y: Int::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, other: &IntVec) -> Int {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &IntVec) -> Int {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot_point(&self, p: &Point) -> Rat {
        Rat::from_integer(self.x.clone()) * &p.x + Rat::from_integer(self.y.clone()) * &p.y
    }

    /// Rotation by 90 degrees clockwise: (x, y) -> (y, -x).
    pub fn rot_cw(&self) -> IntVec {
        IntVec { x: self.y.clone(), y: -self.x.clone() }
    }

    /// Rotation by 90 degrees counterclockwise: (x, y) -> (-y, x).
    pub fn rot_ccw(&self) -> IntVec {
        IntVec { x: -self.y.clone(), y: self.x.clone() }
    }

    pub fn neg(&self) -> IntVec {
        IntVec { x: -self.x.clone(), y: -self.y.clone() }
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec { x: &self.x + &other.x, y: &self.y + &other.y }
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec { x: &self.x - &other.x, y: &self.y - &other.y }
    }

    pub fn scale(&self, k: &Int) -> IntVec {
        IntVec { x: &self.x * k, y: &self.y * k }
    }

    pub fn content(&self) -> Int {
        self.x.gcd(&self.y)
    }

    /// Divides out the gcd of the coordinates. The zero vector is
    /// returned unchanged.
    pub fn primitive(&self) -> IntVec {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        IntVec { x: &self.x / &g, y: &self.y / &g }
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn norm_inf(&self) -> Int {
        self.x.abs().max(self.y.abs())
    }

    pub fn to_point(&self) -> Point {
        Point {
            x: Rat::from_integer(self.x.clone()),
            y: Rat::from_integer(self.y.clone()),
        }
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Rational point in the plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        Point {
            x: Rat::from_integer(x.into()),
            y: Rat::from_integer(y.into()),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_int_vec(&self) -> Option<IntVec> {
        if self.is_integral() {
            Some(IntVec { x: self.x.to_integer(), y: self.y.to_integer() })
        } else {
            None
        }
    }

    pub fn sub(&self, other: &Point) -> (Rat, Rat) {
        (&self.x - &other.x, &self.y - &other.y)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Angle class of a nonzero vector, counterclockwise from the positive
/// x axis: 0 on the axis itself, 1 strictly above, 2 on the negative
/// x axis, 3 strictly below.
fn angle_class(v: &IntVec) -> u8 {
    debug_assert!(!v.is_zero());
    if v.y.is_zero() {
        if v.x.is_positive() {
            0
        } else {
            2
        }
    } else if v.y.is_positive() {
        1
    } else {
        3
    }
}

/// Total order on nonzero directions by counterclockwise angle from the
/// positive x axis. Vectors with the same direction compare equal
/// regardless of length.
pub fn ccw_cmp(u: &IntVec, v: &IntVec) -> Ordering {
    let (cu, cv) = (angle_class(u), angle_class(v));
    if cu != cv {
        return cu.cmp(&cv);
    }
    let c = u.cross(v);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Order matching a clockwise walk of facet normals: descending
/// counterclockwise angle.
pub fn cw_cmp(u: &IntVec, v: &IntVec) -> Ordering {
    ccw_cmp(v, u)
}

/// Line a.x = b with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Line {
    pub a: IntVec,
    pub b: Int,
}

impl Line {
    pub fn new(a: IntVec, b: Int) -> Self {
        Line { a, b }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.a.dot_point(p) == Rat::from_integer(self.b.clone())
    }

    /// Intersection point of two lines, None when the normals are
    /// parallel.
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let det = self.a.cross(&other.a);
        if det.is_zero() {
            return None;
        }
        let det = Rat::from_integer(det);
        let x = Rat::from_integer(&self.b * &other.a.y - &other.b * &self.a.y) / det.clone();
        let y = Rat::from_integer(&self.a.x * &other.b - &other.a.x * &self.b) / det;
        Some(Point { x, y })
    }
}

/// Closed half-plane a.x <= b with integer data.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPlane {
    pub a: IntVec,
    pub b: Int,
}

impl HalfPlane {
    pub fn new(a1: impl Into<Int>, a2: impl Into<Int>, b: impl Into<Int>) -> Self {
        HalfPlane { a: IntVec::new(a1, a2), b: b.into() }
    }

    pub fn from_parts(a: IntVec, b: Int) -> Self {
        HalfPlane { a, b }
    }

    pub fn eval(&self, p: &Point) -> Rat {
        self.a.dot_point(p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p) <= Rat::from_integer(self.b.clone())
    }

    pub fn contains_strict(&self, p: &Point) -> bool {
        self.eval(p) < Rat::from_integer(self.b.clone())
    }

    pub fn is_tight(&self, p: &Point) -> bool {
        self.eval(p) == Rat::from_integer(self.b.clone())
    }

    pub fn violates(&self, p: &Point) -> bool {
        !self.contains(p)
    }

    pub fn boundary(&self) -> Line {
        Line { a: self.a.clone(), b: self.b.clone() }
    }

    /// Canonical representative of the half-plane as a point set:
    /// coefficients divided by gcd(a1, a2, b).
    pub fn reduced(&self) -> HalfPlane {
        let g = self.a.content().gcd(&self.b);
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        HalfPlane {
            a: IntVec { x: &self.a.x / &g, y: &self.a.y / &g },
            b: &self.b / &g,
        }
    }

    /// True when the normal is primitive after reduction, so the
    /// boundary line carries lattice points.
    pub fn is_strengthened(&self) -> bool {
        let g = self.a.content();
        !g.is_zero() && self.b.is_multiple_of(&g)
    }
}

impl fmt::Debug for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x1 + {}x2 <= {}", self.a.x, self.a.y, self.b)
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x1 + {}x2 <= {}", self.a.x, self.a.y, self.b)
    }
}

pub fn rat_floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

pub fn rat_ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> IntVec {
        IntVec::new(x, y)
    }

    #[test]
    fn cross_and_dot() {
        assert_eq!(v(1, 0).cross(&v(0, 1)), int(1));
        assert_eq!(v(0, 1).cross(&v(1, 0)), int(-1));
        assert_eq!(v(3, 4).dot(&v(2, -1)), int(2));
    }

    #[test]
    fn rotations() {
        assert_eq!(v(1, 0).rot_cw(), v(0, -1));
        assert_eq!(v(1, 0).rot_ccw(), v(0, 1));
        assert_eq!(v(2, 5).rot_cw().rot_ccw(), v(2, 5));
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(v(4, -6).primitive(), v(2, -3));
        assert_eq!(v(0, -8).primitive(), v(0, -1));
        assert_eq!(v(0, 0).primitive(), v(0, 0));
        assert!(v(3, 5).is_primitive());
        assert!(!v(2, 4).is_primitive());
    }

    #[test]
    fn ccw_order_classes() {
        // Strictly increasing counterclockwise angle.
        let order = [
            v(1, 0),
            v(2, 1),
            v(0, 1),
            v(-1, 2),
            v(-1, 0),
            v(-1, -1),
            v(0, -1),
            v(3, -1),
        ];
        for i in 0..order.len() {
            for j in 0..order.len() {
                let expect = i.cmp(&j);
                assert_eq!(ccw_cmp(&order[i], &order[j]), expect, "{:?} vs {:?}", order[i], order[j]);
            }
        }
        assert_eq!(ccw_cmp(&v(2, 3), &v(4, 6)), Ordering::Equal);
    }

    #[test]
    fn clockwise_sort_of_square_normals() {
        let mut normals = vec![v(0, 1), v(1, 0), v(0, -1), v(-1, 0)];
        normals.sort_by(cw_cmp);
        assert_eq!(normals, vec![v(0, -1), v(-1, 0), v(0, 1), v(1, 0)]);
    }

    #[test]
    fn halfplane_reduce_keeps_point_set() {
        let h = HalfPlane::new(4, 0, 6);
        assert_eq!(h.reduced(), HalfPlane::new(2, 0, 3));
        // gcd(2, 0, 3) = 1, nothing to divide out.
        let h2 = HalfPlane::new(2, 0, 3);
        assert_eq!(h2.reduced(), h2);
    }

    #[test]
    fn strengthened_flag() {
        assert!(HalfPlane::new(2, 4, 6).is_strengthened());
        assert!(!HalfPlane::new(2, 4, 7).is_strengthened());
        assert!(HalfPlane::new(3, 5, 7).is_strengthened());
    }

    #[test]
    fn line_intersection() {
        let l1 = Line::new(v(5, -8), int(0));
        let l2 = Line::new(v(1, 0), int(4));
        let p = l1.intersect(&l2).unwrap();
        assert_eq!(p, Point::new(rat_int(4), rat(5, 2)));
        let l3 = Line::new(v(10, -16), int(3));
        assert!(l1.intersect(&l3).is_none());
    }

    #[test]
    fn halfplane_membership() {
        let h = HalfPlane::new(-3, 5, 0);
        assert!(h.contains(&Point::from_ints(4, 2)));
        assert!(h.is_tight(&Point::new(rat_int(5), rat_int(3))));
        assert!(h.violates(&Point::new(rat_int(4), rat(5, 2))));
    }
}
