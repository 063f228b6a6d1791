//! Tilting the late facet of a translated cone about a lattice pivot.
//!
//! The construction reads off an area-1 parallelogram spanned by two
//! consecutive lattice points of the late facet's boundary line and two
//! consecutive points of the adjacent inward lattice line. The strip
//! between the parallelogram's cross sides is a split set. When the cone
//! does not reach the far side of the strip the rounding cut through the
//! near side is already the strongest conclusion; otherwise the cut is
//! tilted through the pivot and the last lattice point of the far side
//! still satisfying the early row.

use crate::geom::{HalfPlane, Int, IntVec, Line, Point};
use crate::poly::{canonicalize, disjunction_hull, TranslatedCone};
use num::{One, Signed};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum TiltError {
    #[error("the cone's apex is a lattice point")]
    IntegralApex,
    #[error("the late row is not Chvatal strengthened")]
    NotStrengthened,
    #[error("the split set does not contain the apex in its interior")]
    NotEffective,
}

/// Corners of the area-1 parallelogram and the split disjunction it
/// spans: p, q are consecutive lattice points on the late boundary,
/// x, y consecutive on the adjacent inward line; p, x satisfy the early
/// row, q, y violate it. pi is primitive with pi.p = pi.x = pi0 and
/// pi.q = pi.y = pi0 + 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitFrame {
    pub p: IntVec,
    pub q: IntVec,
    pub x: IntVec,
    pub y: IntVec,
    pub pi: IntVec,
    pub pi0: Int,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TiltOutcome {
    /// The cone misses the far side of the strip; the cut rounds the
    /// late row down to the near side.
    Chvatal { cut: HalfPlane, frame: SplitFrame },
    /// The cut pivots on p and passes through the last lattice point of
    /// the far strip boundary satisfying the early row.
    Split {
        cut: HalfPlane,
        frame: SplitFrame,
        far_in: IntVec,
        far_out: IntVec,
        far_meet: Point,
    },
}

impl TiltOutcome {
    pub fn cut(&self) -> &HalfPlane {
        match self {
            TiltOutcome::Chvatal { cut, .. } | TiltOutcome::Split { cut, .. } => cut,
        }
    }

    pub fn frame(&self) -> &SplitFrame {
        match self {
            TiltOutcome::Chvatal { frame, .. } | TiltOutcome::Split { frame, .. } => frame,
        }
    }

    pub fn is_chvatal(&self) -> bool {
        matches!(self, TiltOutcome::Chvatal { .. })
    }
}

fn straddle(a: &IntVec, b: &Int, inside: &HalfPlane) -> (IntVec, IntVec) {
    crate::lattice::straddling_pair(a, b, inside)
        .expect("cone rows are not parallel, so the boundary is crossed")
}

/// Extreme ray directions of the cone, primitive, as (late ray, early
/// ray): each runs along one boundary away from the apex.
pub fn cone_rays(c: &TranslatedCone) -> (IntVec, IntVec) {
    let mut r1 = c.late.a.rot_ccw().primitive();
    if c.early.a.dot(&r1).is_positive() {
        r1 = r1.neg();
    }
    let mut r2 = c.early.a.rot_ccw().primitive();
    if c.late.a.dot(&r2).is_positive() {
        r2 = r2.neg();
    }
    (r1, r2)
}

pub fn parallelogram_disjunction(c: &TranslatedCone) -> Result<SplitFrame, TiltError> {
    if c.apex.is_integral() {
        return Err(TiltError::IntegralApex);
    }
    if !c.late.is_strengthened() {
        return Err(TiltError::NotStrengthened);
    }
    let a = &c.late.a;
    let (p, q) = straddle(a, &c.late.b, &c.early);
    let inward = &c.late.b - 1;
    let (x, y) = straddle(a, &inward, &c.early);

    // q - p is a primitive line direction and a.(x - p) = -1, which
    // forces |det(q - p, x - p)| = 1: the parallelogram has area 1.
    let dir = x.sub(&p);
    assert!(dir.is_primitive(), "area-1 parallelogram has primitive sides");
    let n = dir.rot_ccw();
    let t = n.dot(&q.sub(&p));
    let pi = if t.is_one() {
        n
    } else {
        assert!((-&t).is_one(), "near and far corners differ by one strip width");
        n.neg()
    };
    let pi0 = pi.dot(&p);
    debug_assert_eq!(pi.dot(&x), pi0);
    debug_assert_eq!(pi.dot(&y), &pi0 + 1);
    Ok(SplitFrame { p, q, x, y, pi, pi0 })
}

pub fn tilt(c: &TranslatedCone) -> Result<TiltOutcome, TiltError> {
    let frame = parallelogram_disjunction(c)?;
    let (d, delta) = (&c.early.a, &c.early.b);

    // The gap from the pivot's outward neighbor to the early boundary
    // never exceeds the row determinant.
    let slack_q = d.dot(&frame.q) - delta;
    assert!(slack_q.is_positive(), "q lies beyond the early boundary");
    assert!(slack_q <= c.late.a.cross(d).abs(), "pivot gap exceeds the determinant");

    let (r1, r2) = cone_rays(c);
    let far_reachable =
        frame.pi.dot(&r1).is_positive() || frame.pi.dot(&r2).is_positive();
    if !far_reachable {
        // sup of pi over the cone is attained toward the apex, which
        // sits strictly inside the strip, so the far side is empty.
        let cut = HalfPlane::from_parts(frame.pi.clone(), frame.pi0.clone());
        assert!(cut.violates(&c.apex), "a tilt must cut the apex");
        return Ok(TiltOutcome::Chvatal { cut, frame });
    }

    let far_rhs = &frame.pi0 + 1;
    let (far_in, far_out) = straddle(&frame.pi, &far_rhs, &c.early);
    let slack_far = d.dot(&far_out) - delta;
    assert!(slack_far.is_positive(), "far corner lies beyond the early boundary");
    assert!(
        Int::from(2) * &slack_far <= slack_q,
        "each split tilt halves the early-boundary gap"
    );
    let far_meet = Line::new(frame.pi.clone(), far_rhs)
        .intersect(&c.early.boundary())
        .expect("the far strip boundary is not parallel to the early row");

    let dir = far_out.sub(&frame.p);
    assert!(dir.is_primitive(), "no lattice point lies between pivot and far corner");
    let n = dir.rot_ccw();
    let rhs = n.dot(&frame.p);
    let cut = if HalfPlane::from_parts(n.clone(), rhs.clone()).violates(&c.apex) {
        HalfPlane::from_parts(n, rhs)
    } else {
        let flipped = HalfPlane::from_parts(n.neg(), -rhs);
        assert!(flipped.violates(&c.apex), "a tilt must cut the apex");
        flipped
    };
    Ok(TiltOutcome::Split { cut, frame, far_in, far_out, far_meet })
}

/// The single facet of the disjunction hull that cuts the apex: the
/// strongest cut the split admits on this cone. Used by the divergence
/// regression, never by the solver.
pub fn best_split_cut(
    c: &TranslatedCone,
    pi: &IntVec,
    pi0: &Int,
) -> Result<HalfPlane, TiltError> {
    let at_apex = pi.dot_point(&c.apex);
    let lo = crate::geom::Rat::from(Int::clone(pi0));
    let hi = crate::geom::Rat::from(pi0 + 1);
    if at_apex <= lo || at_apex >= hi {
        return Err(TiltError::NotEffective);
    }
    let cone = c.to_polyhedron();
    let hull = disjunction_hull(&cone, pi, pi0);
    let fresh: Vec<&HalfPlane> =
        hull.rows().iter().filter(|r| r.violates(&c.apex)).collect();
    assert_eq!(fresh.len(), 1, "a split of a translated cone adds one facet");
    let cut = fresh[0].clone();
    let mut rows = cone.rows().to_vec();
    rows.push(cut.clone());
    assert!(canonicalize(&rows).same_set(&hull), "the cut alone carries the hull");
    Ok(cut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::int;

    fn cone(r1: (i64, i64, i64), r2: (i64, i64, i64)) -> TranslatedCone {
        TranslatedCone::from_pair(
            &HalfPlane::new(r1.0, r1.1, r1.2),
            &HalfPlane::new(r2.0, r2.1, r2.2),
        )
        .expect("rows are not parallel")
    }

    fn iv(x: i64, y: i64) -> IntVec {
        IntVec::new(x, y)
    }

    #[test]
    fn split_tilt_pivots_through_far_corner() {
        let c = cone((-5, 8, 0), (1, 0, 4));
        match tilt(&c).unwrap() {
            TiltOutcome::Split { cut, frame, far_in, far_out, far_meet } => {
                assert_eq!(cut, HalfPlane::new(-3, 5, 0));
                assert_eq!(frame.p, iv(0, 0));
                assert_eq!(frame.q, iv(8, 5));
                assert_eq!(frame.x, iv(-3, -2));
                assert_eq!(frame.y, iv(5, 3));
                assert_eq!(frame.pi, iv(2, -3));
                assert_eq!(frame.pi0, int(0));
                assert_eq!(far_in, iv(2, 1));
                assert_eq!(far_out, iv(5, 3));
                assert_eq!(far_meet, Point::new(crate::geom::rat_int(4), crate::geom::rat(7, 3)));
            }
            other => panic!("expected a split tilt, got {other:?}"),
        }
    }

    #[test]
    fn chvatal_tilt_when_cone_misses_far_side() {
        let c = cone((-3, 5, 0), (1, 0, 4));
        match tilt(&c).unwrap() {
            TiltOutcome::Chvatal { cut, frame } => {
                assert_eq!(cut, HalfPlane::new(-1, 2, 0));
                assert_eq!(frame.p, iv(0, 0));
                assert_eq!(frame.q, iv(5, 3));
                assert_eq!(frame.x, iv(2, 1));
                assert_eq!(frame.y, iv(7, 4));
                assert_eq!(frame.pi, iv(-1, 2));
                assert_eq!(frame.pi0, int(0));
            }
            other => panic!("expected a rounding tilt, got {other:?}"),
        }
    }

    #[test]
    fn integral_apex_is_rejected() {
        let c = cone((-1, 0, 0), (1, 2, 2));
        assert_eq!(c.apex, Point::from_ints(0, 1));
        assert_eq!(tilt(&c), Err(TiltError::IntegralApex));
    }

    #[test]
    fn loose_late_row_is_rejected() {
        let c = cone((2, 0, 1), (0, -1, 0));
        assert_eq!(tilt(&c), Err(TiltError::NotStrengthened));
    }

    #[test]
    fn best_cut_reproduces_next_divergence_row() {
        let c0 = cone((-5, 8, 0), (1, 0, 4));
        let f0 = parallelogram_disjunction(&c0).unwrap();
        assert_eq!(best_split_cut(&c0, &f0.pi, &f0.pi0).unwrap(), HalfPlane::new(-7, 12, 0));

        let c1 = cone((-7, 12, 0), (1, 0, 4));
        let f1 = parallelogram_disjunction(&c1).unwrap();
        assert_eq!(best_split_cut(&c1, &f1.pi, &f1.pi0).unwrap(), HalfPlane::new(-11, 20, 0));
    }

    #[test]
    fn best_cut_requires_an_effective_strip() {
        let c = cone((-5, 8, 0), (1, 0, 4));
        assert_eq!(best_split_cut(&c, &iv(1, 0), &int(4)), Err(TiltError::NotEffective));
    }

    #[cfg(feature = "oracle")]
    #[test]
    fn tilt_cuts_are_lattice_valid() {
        use crate::oracle::{lattice_points, Window};
        for rows in [
            ((-5, 8, 0), (1, 0, 4)),
            ((-3, 5, 0), (1, 0, 4)),
            ((-7, 12, 0), (1, 0, 4)),
            ((-3, -4, -5), (6, 1, 7)),
        ] {
            let c = cone(rows.0, rows.1);
            let out = tilt(&c).unwrap();
            let poly = c.to_polyhedron();
            let w = Window::around(&poly);
            for z in lattice_points(&poly, &w) {
                assert!(
                    out.cut().contains(&z.to_point()),
                    "cut {:?} drops lattice point {z:?} of {rows:?}",
                    out.cut()
                );
            }
        }
    }
}
