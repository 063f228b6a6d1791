//! Cutting-plane solver working clockwise around the fractional vertex.
//!
//! Each iteration finds the optimal vertex of the current relaxation,
//! takes the translated cone of its arriving (late) and departing
//! (early) facets, and adds one cut: the Chvatal strengthening of the
//! late row when that row is loose, otherwise the tilt of the late row
//! inside the cone. The trace records enough of every iteration to
//! replay the cut, its parallelogram, and the bookkeeping that bounds
//! the iteration count.

use crate::geom::{rat_ceil, rat_floor, HalfPlane, Int, IntVec, Point, Rat};
use crate::lattice::{chvatal_strengthen, ext_gcd, lattice_line};
use crate::poly::{canonicalize, LpOutcome, Polyhedron, Shape, TranslatedCone};
use crate::tilt::{tilt, SplitFrame, TiltOutcome};
use num::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CutKind {
    Strengthening,
    ChvatalTilt,
    SplitTilt,
}

/// Angle class of a facet normal against the objective. Orthogonal is
/// the anti-parallel caveat case; it counts as potentially early.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PotentialClass {
    PotentiallyLate,
    PotentiallyEarly,
    Orthogonal,
}

impl PotentialClass {
    pub fn is_potentially_early(self) -> bool {
        matches!(self, PotentialClass::PotentiallyEarly | PotentialClass::Orthogonal)
    }

    pub fn is_potentially_late(self) -> bool {
        matches!(self, PotentialClass::PotentiallyLate)
    }
}

/// Classification by the sign of cross(a, c): negative means the
/// objective lies clockwise of the normal within a half turn. The late
/// and early facets themselves are classified by position, not angle.
/// A normal positively parallel to the objective is tight at the
/// optimum and therefore always arrives here as late or early.
pub fn potential_class(a: &IntVec, c: &IntVec, is_late: bool, is_early: bool) -> PotentialClass {
    if is_late {
        return PotentialClass::PotentiallyLate;
    }
    if is_early {
        return PotentialClass::PotentiallyEarly;
    }
    let cr = a.cross(c);
    if cr.is_negative() {
        PotentialClass::PotentiallyLate
    } else if cr.is_positive() {
        PotentialClass::PotentiallyEarly
    } else if a.dot(c).is_negative() {
        PotentialClass::Orthogonal
    } else {
        unreachable!("a slack facet cannot have its normal along the objective")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IterationRecord {
    pub row_count: usize,
    pub vertex: Point,
    /// Late and early rows of the cone that produced the cut; absent
    /// for the degenerate one-dimensional endgame cuts.
    pub late: Option<HalfPlane>,
    pub early: Option<HalfPlane>,
    pub kind: CutKind,
    pub cut: HalfPlane,
    pub family: Option<usize>,
    pub potential_early: usize,
    pub live_families: usize,
    pub frame: Option<SplitFrame>,
    pub far_out: Option<IntVec>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SolveTrace {
    /// Max row normal norm of the canonicalized input.
    pub norm: Int,
    pub cap: u64,
    pub records: Vec<IterationRecord>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveOutcome {
    Optimal { point: IntVec, value: Int },
    Infeasible,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Solved {
    pub outcome: SolveOutcome,
    pub trace: SolveTrace,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
pub enum SolveError {
    #[error("the objective is unbounded over the feasible region")]
    Unbounded,
    #[error("the feasible region contains a line")]
    NotPointed,
    #[error("iteration cap exceeded; this flags a bug, not an input problem")]
    CapExceeded,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Caps {
    pub constant: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { constant: 64 }
    }
}

/// constant * m * (1 + floor(log2 norm))^2, never above the proved
/// constant * m * (1 + log2 norm)^2 budget.
fn iteration_cap(constant: u32, m: usize, norm: &Int) -> u64 {
    let bits = norm.bits().max(1);
    u64::from(constant) * (m as u64) * bits * bits
}

/// An integral objective bounded over the polyhedron: the sum of the
/// two inward boundary normals of the recession cone.
pub fn bounded_objective(q: &Polyhedron) -> IntVec {
    match q.rays() {
        [] => IntVec::new(0, 1),
        [r] => r.neg(),
        [r1, r2] => {
            let mut n1 = r1.rot_ccw();
            if n1.dot(r2).is_positive() {
                n1 = n1.neg();
            }
            let mut n2 = r2.rot_ccw();
            if n2.dot(r1).is_positive() {
                n2 = n2.neg();
            }
            let c = n1.add(&n2);
            assert!(!c.is_zero(), "a pointed recession cone has a full-dimensional polar");
            c
        }
        _ => unreachable!("a planar polyhedron has at most two extreme rays"),
    }
}

pub fn solve(p: &Polyhedron, c: &IntVec, caps: &Caps) -> Result<Solved, SolveError> {
    if c.is_zero() {
        if p.lineality().is_some() {
            return Err(SolveError::NotPointed);
        }
        // Any integral point is optimal; steer with a bounded objective
        // and report the zero value.
        let mut solved = solve(p, &bounded_objective(p), caps)?;
        if let SolveOutcome::Optimal { value, .. } = &mut solved.outcome {
            *value = Int::zero();
        }
        return Ok(solved);
    }
    let mut q = p.clone();
    if q.lineality().is_some() {
        return Err(SolveError::NotPointed);
    }
    let c = c.clone();
    if !q.is_empty() && matches!(q.lp_max(&c), LpOutcome::Unbounded) {
        return Err(SolveError::Unbounded);
    }
    let mut trace = SolveTrace {
        norm: q.norm_inf(),
        cap: iteration_cap(caps.constant, q.rows().len(), &q.norm_inf().max(Int::from(1))),
        records: Vec::new(),
    };
    // Family of each current row, keyed by row value; family ids are
    // row indices of the initially potentially-late facets. A family
    // counts as live while its most recent inequality is a potentially
    // late facet of the current polyhedron.
    let mut tags: Option<Vec<(HalfPlane, Option<usize>)>> = None;
    let mut last_added: Vec<(usize, HalfPlane)> = Vec::new();

    loop {
        if q.is_empty() {
            return Ok(Solved { outcome: SolveOutcome::Infeasible, trace });
        }
        if q.dim() <= 1 {
            return low_dim_resolve(&q, &c, trace);
        }
        let (vertex, k) = match q.lp_max(&c) {
            LpOutcome::Optimal { point, index, .. } => {
                (point, index.expect("full-dimensional shapes expose vertex indices"))
            }
            LpOutcome::Unbounded => unreachable!("cutting cannot grow the recession cone"),
            LpOutcome::Infeasible => unreachable!("emptiness is checked before the LP"),
        };
        if vertex.is_integral() {
            let point = vertex.to_int_vec().expect("integral vertex");
            let value = c.dot(&point);
            return Ok(Solved { outcome: SolveOutcome::Optimal { point, value }, trace });
        }
        if trace.records.len() as u64 >= trace.cap {
            return Err(SolveError::CapExceeded);
        }

        let (late_i, early_i) = q.adjacent_row_indices(k);
        let late = q.rows()[late_i].clone();
        let early = q.rows()[early_i].clone();
        debug_assert!(
            !late.a.cross(&c).is_positive() && !early.a.cross(&c).is_negative(),
            "the objective lies in the normal cone of the optimal vertex"
        );

        if tags.is_none() {
            let initial: Vec<(HalfPlane, Option<usize>)> = q
                .rows()
                .iter()
                .enumerate()
                .map(|(j, r)| {
                    let class = potential_class(&r.a, &c, j == late_i, j == early_i);
                    (r.clone(), class.is_potentially_late().then_some(j))
                })
                .collect();
            last_added = initial
                .iter()
                .filter_map(|(h, f)| f.map(|id| (id, h.clone())))
                .collect();
            tags = Some(initial);
        }
        let tags = tags.as_mut().expect("tags initialized above");
        let potential_early = q
            .rows()
            .iter()
            .enumerate()
            .filter(|(j, r)| {
                potential_class(&r.a, &c, *j == late_i, *j == early_i).is_potentially_early()
            })
            .count();
        let alive: BTreeSet<usize> = tags.iter().filter_map(|(_, f)| *f).collect();
        let live_families = alive
            .iter()
            .filter(|id| {
                last_added
                    .iter()
                    .find(|(g, _)| g == *id)
                    .and_then(|(_, h)| {
                        q.rows().iter().position(|r| r == h).map(|j| {
                            potential_class(&h.a, &c, j == late_i, j == early_i)
                                .is_potentially_late()
                        })
                    })
                    .unwrap_or(false)
            })
            .count();
        let family = tags
            .iter()
            .find(|(h, _)| *h == late)
            .and_then(|(_, f)| *f);
        assert!(
            family.is_some(),
            "the late facet always descends from an initially potentially-late facet"
        );

        let (kind, cut, frame, far_out) = if !late.is_strengthened() {
            (CutKind::Strengthening, chvatal_strengthen(&late), None, None)
        } else {
            let cone = TranslatedCone::from_pair(&late, &early)
                .expect("facets adjacent at a vertex are not parallel");
            debug_assert_eq!(cone.late, late, "the arriving facet is the late one");
            debug_assert_eq!(cone.apex, vertex);
            match tilt(&cone).expect("apex fractional and late row strengthened") {
                TiltOutcome::Chvatal { cut, frame } => {
                    (CutKind::ChvatalTilt, cut, Some(frame), None)
                }
                TiltOutcome::Split { cut, frame, far_out, .. } => {
                    (CutKind::SplitTilt, cut, Some(frame), Some(far_out))
                }
            }
        };
        assert!(cut.violates(&vertex), "every cut removes the current vertex");
        debug_assert!(cut.a.norm_inf() <= trace.norm, "cut normals stay within the input norm");
        if let Some(id) = family {
            match last_added.iter_mut().find(|(g, _)| *g == id) {
                Some(entry) => entry.1 = cut.clone(),
                None => last_added.push((id, cut.clone())),
            }
        }

        trace.records.push(IterationRecord {
            row_count: q.rows().len(),
            vertex,
            late: Some(late),
            early: Some(early),
            kind,
            cut: cut.clone(),
            family,
            potential_early,
            live_families,
            frame,
            far_out,
        });

        let mut rows = q.rows().to_vec();
        rows.push(cut.clone());
        let next = canonicalize(&rows);
        if next.is_empty() || next.dim() <= 1 {
            // Degenerate canonical forms synthesize their own rows;
            // family bookkeeping ends with the full-dimensional phase.
            q = next;
            continue;
        }
        let next_tags = next
            .rows()
            .iter()
            .map(|r| {
                let f = if *r == cut {
                    family
                } else {
                    tags.iter()
                        .find(|(h, _)| h == r)
                        .expect("canonical rows persist from the previous iteration")
                        .1
                };
                (r.clone(), f)
            })
            .collect();
        *tags = next_tags;
        q = next;
    }
}

fn rat_param(base: &IntVec, step: &IntVec, p: &Point) -> Rat {
    if !step.x.is_zero() {
        (&p.x - Rat::from(base.x.clone())) / Rat::from(step.x.clone())
    } else {
        (&p.y - Rat::from(base.y.clone())) / Rat::from(step.y.clone())
    }
}

fn endgame_record(q: &Polyhedron, vertex: Point, late: Option<HalfPlane>, cut: HalfPlane) -> IterationRecord {
    IterationRecord {
        row_count: q.rows().len(),
        vertex,
        late,
        early: None,
        kind: CutKind::Strengthening,
        cut,
        family: None,
        potential_early: 0,
        live_families: 0,
        frame: None,
        far_out: None,
    }
}

/// Direct resolution on a point, segment, or ray. At most one Chvatal
/// cut is emitted: parallel to the carrier line when that line misses
/// the lattice, orthogonal to it otherwise.
fn low_dim_resolve(q: &Polyhedron, c: &IntVec, mut trace: SolveTrace) -> Result<Solved, SolveError> {
    if q.shape() == Shape::Point {
        let z = &q.points()[0];
        let outcome = match z.to_int_vec() {
            Some(point) => {
                let value = c.dot(&point);
                SolveOutcome::Optimal { point, value }
            }
            None => SolveOutcome::Infeasible,
        };
        return Ok(Solved { outcome, trace });
    }
    assert!(matches!(q.shape(), Shape::Segment | Shape::Ray));

    let carrier = q
        .rows()
        .iter()
        .find(|r| {
            q.points().iter().all(|p| r.is_tight(p))
                && q.rays().iter().all(|d| r.a.dot(d).is_zero())
        })
        .expect("a one-dimensional polyhedron lies on one of its boundary lines")
        .clone();
    let g = carrier.a.content();
    if !(&carrier.b % &g).is_zero() {
        // The carrier line contains no lattice point; rounding it is an
        // infeasibility certificate.
        let cut = chvatal_strengthen(&carrier);
        let vertex = q.points()[0].clone();
        trace.records.push(endgame_record(q, vertex, Some(carrier), cut.clone()));
        let mut rows = q.rows().to_vec();
        rows.push(cut);
        debug_assert!(canonicalize(&rows).is_empty());
        return Ok(Solved { outcome: SolveOutcome::Infeasible, trace });
    }

    let vertex = match q.lp_max(c) {
        LpOutcome::Unbounded => return Err(SolveError::Unbounded),
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Infeasible => unreachable!("the polyhedron is not empty"),
    };
    if let Some(point) = vertex.to_int_vec() {
        let value = c.dot(&point);
        return Ok(Solved { outcome: SolveOutcome::Optimal { point, value }, trace });
    }

    let ahat = carrier.a.primitive();
    let bhat = &carrier.b / &g;
    let (base, step) = lattice_line(&ahat, &bhat);
    // w is an integral functional recovering the step parameter along
    // the carrier: w.(base + t step) = w.base + t.
    let (one, u, v) = ext_gcd(&step.x, &step.y);
    debug_assert!(one.is_one());
    let w = IntVec { x: u, y: v };
    debug_assert!(w.dot(&step).is_one());
    let offset = w.dot(&base);

    let params: Vec<Rat> = q.points().iter().map(|p| rat_param(&base, &step, p)).collect();
    let (lo, hi): (Option<Rat>, Option<Rat>) = match q.shape() {
        Shape::Segment => {
            let (a, b) = (params[0].clone(), params[1].clone());
            if a <= b {
                (Some(a), Some(b))
            } else {
                (Some(b), Some(a))
            }
        }
        Shape::Ray => {
            let d = &q.rays()[0];
            if *d == step {
                (Some(params[0].clone()), None)
            } else {
                assert_eq!(*d, step.neg(), "the ray runs along the carrier line");
                (None, Some(params[0].clone()))
            }
        }
        _ => unreachable!(),
    };
    let k_lo = lo.as_ref().map(rat_ceil);
    let k_hi = hi.as_ref().map(rat_floor);
    if let (Some(kl), Some(kh)) = (&k_lo, &k_hi) {
        if kl > kh {
            // The line holds lattice points but the piece between the
            // ends holds none.
            let cut = HalfPlane::from_parts(w, &offset + kh);
            trace.records.push(endgame_record(q, vertex, None, cut.clone()));
            let mut rows = q.rows().to_vec();
            rows.push(cut);
            debug_assert!(canonicalize(&rows).is_empty());
            return Ok(Solved { outcome: SolveOutcome::Infeasible, trace });
        }
    }

    let gamma = c.dot(&step);
    let kstar = if gamma.is_positive() {
        k_hi.clone().expect("a bounded objective has a finite upper end")
    } else if gamma.is_negative() {
        k_lo.clone().expect("a bounded objective has a finite lower end")
    } else {
        k_lo.or(k_hi).expect("a segment or ray has at least one end")
    };
    let point = base.add(&step.scale(&kstar));
    debug_assert!(q.contains(&point.to_point()));
    let value = c.dot(&point);

    if !gamma.is_zero() {
        // The optimal end is fractional here; round the parameter
        // toward it. The cut normal is orthogonal to no row of q, only
        // to the improving direction on the carrier.
        let cut = if gamma.is_positive() {
            HalfPlane::from_parts(w, &offset + &kstar)
        } else {
            HalfPlane::from_parts(w.neg(), -(&offset + &kstar))
        };
        debug_assert!(!cut.violates(&point.to_point()));
        trace.records.push(endgame_record(q, vertex, None, cut));
    }
    Ok(Solved { outcome: SolveOutcome::Optimal { point, value }, trace })
}
