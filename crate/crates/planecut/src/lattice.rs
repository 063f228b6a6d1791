//! Lattice primitives: Bezout coefficients, Chvatal strengthening, and
//! the parameterization of integer points on rational lines.

use crate::geom::{rat_ceil, rat_floor, HalfPlane, Int, IntVec, Rat};
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum LatticeError {
    #[error("line is parallel to the reference boundary")]
    LineParallel,
    #[error("no unit interval meets the range")]
    NoMeet,
    #[error("more than one unit interval meets the range")]
    NotUnique,
    #[error("basis is not unimodular")]
    NotAdjacent,
}

/// Euclidean extended gcd with truncated division: returns (g, u, v)
/// with g = gcd(a, b) >= 0 and u*a + v*b = g. The coefficient pair is
/// the one produced by the plain recursion, e.g. (5, -8) -> (-3, -2).
pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
    if b.is_zero() {
        if a.is_negative() {
            return (-a.clone(), -Int::from(1), Int::zero());
        }
        return (a.clone(), Int::from(if a.is_zero() { 0 } else { 1 }), Int::zero());
    }
    let (q, r) = (a / b, a % b);
    let (g, x, y) = ext_gcd(b, &r);
    let v = x - &q * &y;
    (g, y, v)
}

/// Divides the normal by its content and floors the right-hand side.
pub fn chvatal_strengthen(h: &HalfPlane) -> HalfPlane {
    let g = h.a.content();
    if g.is_zero() {
        return h.clone();
    }
    HalfPlane::from_parts(
        IntVec::new(&h.a.x / &g, &h.a.y / &g),
        h.b.div_floor(&g),
    )
}

/// Base point and step generating all integer solutions of a.x = b for
/// primitive a: z(k) = base + k*step with step = (-a2, a1).
pub fn lattice_line(a: &IntVec, b: &Int) -> (IntVec, IntVec) {
    let (g, u, v) = ext_gcd(&a.x, &a.y);
    assert!(g.is_one(), "normal must be primitive");
    (IntVec::new(&u * b, &v * b), a.rot_ccw())
}

/// Parameter of a lattice point z on the line generated by (base, step):
/// the k with z = base + k*step.
pub fn line_param(base: &IntVec, step: &IntVec, z: &IntVec) -> Int {
    let d = z.sub(base);
    let k = if !step.x.is_zero() { &d.x / &step.x } else { &d.y / &step.y };
    debug_assert_eq!(&base.add(&step.scale(&k)), z);
    k
}

/// Adjacent lattice points on the line a.x = b (a primitive) around the
/// boundary of `inside`: p satisfies the half-plane, q is the next
/// lattice point beyond its boundary.
pub fn straddling_pair(
    a: &IntVec,
    b: &Int,
    inside: &HalfPlane,
) -> Result<(IntVec, IntVec), LatticeError> {
    let (base, step) = lattice_line(a, b);
    let s = inside.a.dot(&step);
    if s.is_zero() {
        return Err(LatticeError::LineParallel);
    }
    // inside.a . z(k) <= inside.b  <=>  k*s <= inside.b - inside.a . base
    let margin = Rat::new(&inside.b - inside.a.dot(&base), s.clone());
    if s.is_positive() {
        let k = rat_floor(&margin);
        Ok((base.add(&step.scale(&k)), base.add(&step.scale(&(&k + 1)))))
    } else {
        let k = rat_ceil(&margin);
        Ok((base.add(&step.scale(&k)), base.add(&step.scale(&(&k - 1)))))
    }
}

/// Index k of the single unit interval [k, k+1] meeting the closed
/// parameter range [t_lo, t_hi].
pub fn unit_interval_meeting(t_lo: &Rat, t_hi: &Rat) -> Result<Int, LatticeError> {
    if t_lo > t_hi {
        return Err(LatticeError::NoMeet);
    }
    let k_min = rat_ceil(&(t_lo - Rat::from_integer(Int::from(1))));
    let k_max = rat_floor(t_hi);
    match k_min.cmp(&k_max) {
        std::cmp::Ordering::Greater => Err(LatticeError::NoMeet),
        std::cmp::Ordering::Equal => Ok(k_min),
        std::cmp::Ordering::Less => Err(LatticeError::NotUnique),
    }
}

/// Integer 2x2 matrix, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2 {
    pub m11: Int,
    pub m12: Int,
    pub m21: Int,
    pub m22: Int,
}

impl Mat2 {
    pub fn apply(&self, v: &IntVec) -> IntVec {
        IntVec::new(
            &self.m11 * &v.x + &self.m12 * &v.y,
            &self.m21 * &v.x + &self.m22 * &v.y,
        )
    }
}

/// Inverse of the column matrix [e f], defined when |det| = 1. The
/// result maps e to (1,0) and f to (0,1), carrying the lattice onto
/// itself.
pub fn unimodular_to_standard(e: &IntVec, f: &IntVec) -> Result<Mat2, LatticeError> {
    let det = e.cross(f);
    if det.abs() != Int::from(1) {
        return Err(LatticeError::NotAdjacent);
    }
    Ok(Mat2 {
        m11: &f.y / &det,
        m12: -&f.x / &det,
        m21: -&e.y / &det,
        m22: &e.x / &det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, rat};

    #[test]
    fn ext_gcd_pinned_coefficients() {
        let run = |a: i64, b: i64| {
            let (ia, ib) = (int(a), int(b));
            let (g, u, v) = ext_gcd(&ia, &ib);
            assert_eq!(&u * &ia + &v * &ib, g, "bezout identity for ({a}, {b})");
            (g, u, v)
        };
        assert_eq!(run(5, -8), (int(1), int(-3), int(-2)));
        assert_eq!(run(0, 5), (int(5), int(0), int(1)));
        assert_eq!(run(-8, 0), (int(8), int(-1), int(0)));
        assert_eq!(run(0, 0), (int(0), int(0), int(0)));
        assert_eq!(run(12, 18).0, int(6));
        for a in -9..=9i64 {
            for b in -9..=9i64 {
                run(a, b);
            }
        }
    }

    #[test]
    fn strengthen_floors_rhs() {
        let h = HalfPlane::new(2, 4, 7);
        assert_eq!(chvatal_strengthen(&h), HalfPlane::new(1, 2, 3));
        let g = HalfPlane::new(2, 4, -7);
        assert_eq!(chvatal_strengthen(&g), HalfPlane::new(1, 2, -4));
        let id = HalfPlane::new(-3, 5, 0);
        assert_eq!(chvatal_strengthen(&id), id);
    }

    #[test]
    fn lattice_line_parameterization() {
        let (base, step) = lattice_line(&IntVec::new(5, -8), &int(0));
        assert_eq!(base, IntVec::new(0, 0));
        assert_eq!(step, IntVec::new(8, 5));
        let (base, step) = lattice_line(&IntVec::new(5, -8), &int(1));
        assert_eq!(base, IntVec::new(-3, -2));
        assert_eq!(step, IntVec::new(8, 5));
        assert_eq!(line_param(&base, &step, &IntVec::new(5, 3)), int(1));
    }

    #[test]
    fn straddling_pair_examples() {
        let inside = HalfPlane::new(1, 0, 4);
        let (p, q) = straddling_pair(&IntVec::new(5, -8), &int(0), &inside).unwrap();
        assert_eq!(p, IntVec::new(0, 0));
        assert_eq!(q, IntVec::new(8, 5));

        // Step against the half-plane normal: walk indices downward.
        let (p, q) = straddling_pair(&IntVec::new(-5, 8), &int(0), &inside).unwrap();
        assert_eq!(p, IntVec::new(0, 0));
        assert_eq!(q, IntVec::new(8, 5));

        let err = straddling_pair(&IntVec::new(1, 0), &int(2), &inside);
        assert_eq!(err, Err(LatticeError::LineParallel));
    }

    #[test]
    fn straddling_pair_tight_boundary() {
        // Lattice point exactly on the boundary counts as inside.
        let inside = HalfPlane::new(1, 0, 8);
        let (p, q) = straddling_pair(&IntVec::new(5, -8), &int(0), &inside).unwrap();
        assert_eq!(p, IntVec::new(8, 5));
        assert_eq!(q, IntVec::new(16, 10));
    }

    #[test]
    fn unit_interval_location() {
        assert_eq!(unit_interval_meeting(&rat(1, 3), &rat(2, 3)), Ok(int(0)));
        assert_eq!(unit_interval_meeting(&rat(5, 2), &rat(11, 4)), Ok(int(2)));
        assert_eq!(
            unit_interval_meeting(&rat(1, 2), &rat(3, 2)),
            Err(LatticeError::NotUnique)
        );
        assert_eq!(
            unit_interval_meeting(&rat(2, 1), &rat(1, 1)),
            Err(LatticeError::NoMeet)
        );
        assert_eq!(unit_interval_meeting(&rat(3, 1), &rat(3, 1)), Err(LatticeError::NotUnique));
    }

    #[test]
    fn unimodular_inverse() {
        let m = unimodular_to_standard(&IntVec::new(8, 5), &IntVec::new(3, 2)).unwrap();
        assert_eq!(m.apply(&IntVec::new(8, 5)), IntVec::new(1, 0));
        assert_eq!(m.apply(&IntVec::new(3, 2)), IntVec::new(0, 1));
        let m = unimodular_to_standard(&IntVec::new(1, 0), &IntVec::new(4, -1)).unwrap();
        assert_eq!(m.apply(&IntVec::new(4, -1)), IntVec::new(0, 1));
        assert_eq!(
            unimodular_to_standard(&IntVec::new(2, 0), &IntVec::new(0, 2)),
            Err(LatticeError::NotAdjacent)
        );
    }
}
