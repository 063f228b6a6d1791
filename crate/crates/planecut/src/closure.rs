//! Split closures in the plane.
//!
//! The closure of a pointed full-dimensional polyhedron is assembled
//! corner by corner. For one corner cone the recipe is: take the
//! Chvatal closure, then for every hull facet whose hat line is on the
//! apex side add the two extreme interval cuts. Facets whose hat line
//! is beyond the apex contribute nothing that a Chvatal cut would not
//! dominate.
//!
//! The Chvatal closure itself is computed by separation: fractional
//! vertices of the running intersection are tested against candidate
//! cut normals enumerated along the Stern-Brocot tree, with sound
//! prunes that keep the search finite on the instances we care about.
//! A search that has to give up marks the result approximate.

use crate::geom::{rat_ceil, rat_floor, HalfPlane, Int, IntVec, Point, Rat};
use crate::hull::{cone_hull, polyhedron_hull};
use crate::lattice::{chvatal_strengthen, unit_interval_meeting};
use crate::poly::{canonicalize, LpOutcome, Polyhedron, Shape, TranslatedCone};
use crate::tilt::best_split_cut;
use num::{One, Signed, Zero};
use std::collections::HashMap;

pub const DEFAULT_DEPTH: u32 = 64;
pub const MAX_DEPTH: u32 = 4096;

/// How a hull facet of a corner cone relates to its hat line, the
/// nearest parallel lattice line on the far side of the facet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FacetClass {
    /// The apex lies strictly between the facet line and the hat line;
    /// the strip between them yields a dominating Chvatal cut.
    ChvatalDominated,
    /// The apex lies on the facet line itself; the cone never reaches
    /// the hat line and the facet contributes no split cut.
    Degenerate,
    /// The apex lies on or beyond the hat line. The facet runs from
    /// `start` in unit steps of `step`; its unit intervals are
    /// J_k = [start + k step, start + (k+1) step] for k in 0..=last.
    /// `j_hat` is the unique unit interval of the hat line meeting C.
    TypeTwo {
        start: IntVec,
        step: IntVec,
        last: u64,
        j_hat: [IntVec; 2],
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeAnalysis {
    pub hull: Polyhedron,
    /// One class per hull row, in row order.
    pub classes: Vec<FacetClass>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntervalEnd {
    First,
    Last,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RowOrigin {
    OriginalRow,
    ChvatalCut(IntVec),
    ExtremeCut { facet: usize, end: IntervalEnd },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosureResult {
    pub closure: Polyhedron,
    /// One origin per closure row, in row order.
    pub origins: Vec<RowOrigin>,
    pub approximate: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChvatalClosure {
    pub closure: Polyhedron,
    pub approximate: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitClosure {
    pub closure: Polyhedron,
    pub approximate: bool,
}

pub fn corner_relaxations(p: &Polyhedron) -> Vec<TranslatedCone> {
    let rows = p.rows();
    let mut cones = Vec::new();
    for i in 0..rows.len() {
        for j in (i + 1)..rows.len() {
            if let Some(c) = TranslatedCone::from_pair(&rows[i], &rows[j]) {
                cones.push(c);
            }
        }
    }
    cones
}

fn classify_row(c: &TranslatedCone, hull: &Polyhedron, row: &HalfPlane) -> FacetClass {
    debug_assert!(row.a.is_primitive(), "hull rows are strengthened");
    let v = &c.apex;
    let at_apex = row.a.dot_point(v);
    let beta = Rat::from(row.b.clone());
    let hat = &beta + Rat::one();
    // The apex never satisfies a hull row strictly: otherwise the row
    // would be loose over all of C, contradicting maximality over C_I.
    assert!(at_apex >= beta, "apex below a hull facet of its own cone");
    if at_apex == beta {
        return FacetClass::Degenerate;
    }
    if at_apex < hat {
        return FacetClass::ChvatalDominated;
    }

    let mut tight: Vec<IntVec> = hull
        .points()
        .iter()
        .filter(|p| row.is_tight(p))
        .map(|p| p.to_int_vec().expect("hull vertices are integral"))
        .collect();
    assert_eq!(tight.len(), 2, "a facet reaching past its hat line is bounded");
    tight.sort();
    let w0 = tight[0].clone();
    let diff = tight[1].sub(&w0);
    let step = diff.primitive();
    let count = if !step.x.is_zero() {
        &diff.x / &step.x
    } else {
        &diff.y / &step.y
    };
    assert!(count.is_positive());
    let last = u64::try_from(&count - 1).expect("facet interval count fits in u64");

    // The hat line a.x = beta + 1 meets C in a segment free of integer
    // points, hence inside a single unit interval.
    let (base, lstep) = crate::lattice::lattice_line(&row.a, &(&row.b + 1));
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for side in [&c.late, &c.early] {
        let k = side.a.dot(&lstep);
        let rhs = Rat::from(side.b.clone()) - side.a.dot_point(&base.to_point());
        if k.is_zero() {
            assert!(rhs >= Rat::zero(), "hat line misses the cone");
            continue;
        }
        let bound = rhs / Rat::from(k.clone());
        if k.is_positive() {
            hi = Some(match hi {
                Some(h) => h.min(bound),
                None => bound,
            });
        } else {
            lo = Some(match lo {
                Some(l) => l.max(bound),
                None => bound,
            });
        }
    }
    let lo = lo.expect("a bounded facet meets its hat line from below");
    let hi = hi.expect("a bounded facet meets its hat line from above");
    let k = unit_interval_meeting(&lo, &hi)
        .expect("the hat segment sits inside one unit interval");
    let j0 = base.add(&lstep.scale(&k));
    let j1 = j0.add(&lstep);
    // Both lines are orthogonal to the facet normal; list the hat
    // interval in the facet's own step direction.
    let j_hat = if lstep == step {
        [j0, j1]
    } else {
        assert_eq!(lstep, step.neg(), "hat line runs parallel to its facet");
        [j1, j0]
    };
    FacetClass::TypeTwo { start: w0, step, last, j_hat }
}

pub fn classify_facets(c: &TranslatedCone) -> ConeAnalysis {
    let hull = cone_hull(c).hull;
    let classes = hull.rows().iter().map(|row| classify_row(c, &hull, row)).collect();
    ConeAnalysis { hull, classes }
}

/// The split disjunction whose strip is spanned by the unit interval
/// `j` of a facet line and the unit interval `j_hat` of its hat line:
/// the two delimiting lines run through matching interval endpoints.
pub fn split_disjunction_for(j: &[IntVec; 2], j_hat: &[IntVec; 2]) -> (IntVec, Int) {
    let s = j[1].sub(&j[0]);
    let s_hat = j_hat[1].sub(&j_hat[0]);
    let h0 = if s_hat == s {
        &j_hat[0]
    } else {
        assert_eq!(s_hat, s.neg(), "interval steps are parallel");
        &j_hat[1]
    };
    let u = h0.sub(&j[0]);
    assert!(s.cross(&u).abs().is_one(), "interval pair spans an area-1 parallelogram");
    let mut pi = u.rot_ccw();
    if !pi.dot(&s).is_one() {
        pi = pi.neg();
    }
    assert!(pi.dot(&s).is_one());
    let pi0 = pi.dot(&j[0]);
    (pi, pi0)
}

/// The split cut H(J_k, j_hat) for interval k of a TypeTwo facet.
pub fn interval_cut(c: &TranslatedCone, class: &FacetClass, k: u64) -> HalfPlane {
    let FacetClass::TypeTwo { start, step, last, j_hat } = class else {
        panic!("interval cuts exist only for facets classified TypeTwo");
    };
    assert!(k <= *last, "interval index out of range");
    let j0 = start.add(&step.scale(&Int::from(k)));
    let j1 = j0.add(step);
    let (pi, pi0) = split_disjunction_for(&[j0, j1], j_hat);
    best_split_cut(c, &pi, &pi0).expect("interval split sets are effective")
}

struct CgSearch<'a> {
    p: &'a Polyhedron,
    /// Floor-slack and gap-sum pruning are sound only when every
    /// bounded objective attains its maximum at one point, i.e. the
    /// polyhedron has a single vertex.
    single_vertex: bool,
    dual_gens: Vec<IntVec>,
    dual_is_everything: bool,
    /// Integral points of p dominating whole sectors of cut normals.
    lattice_witnesses: Vec<IntVec>,
    ray_witnesses: Vec<(IntVec, IntVec)>,
    values: HashMap<IntVec, Option<Rat>>,
    nodes: u64,
}

impl<'a> CgSearch<'a> {
    fn new(p: &'a Polyhedron) -> Self {
        let mut rays: Vec<IntVec> = p.rays().to_vec();
        rays.sort();
        rays.dedup();
        let (dual_gens, dual_is_everything) = match rays.len() {
            0 => (Vec::new(), true),
            1 => {
                let r = &rays[0];
                (vec![r.rot_ccw(), r.neg(), r.rot_cw()], false)
            }
            2 => {
                let gen_for = |own: &IntVec, other: &IntVec| {
                    let u = own.rot_ccw();
                    if u.dot(other).is_positive() {
                        u.neg()
                    } else {
                        u
                    }
                };
                (
                    vec![gen_for(&rays[0], &rays[1]), gen_for(&rays[1], &rays[0])],
                    false,
                )
            }
            n => unreachable!("a pointed planar polyhedron has at most 2 rays, got {n}"),
        };
        let single_vertex = p.points().len() == 1;
        let mut lattice_witnesses = Vec::new();
        let mut ray_witnesses = Vec::new();
        if !single_vertex {
            let hull = polyhedron_hull(p);
            lattice_witnesses = hull
                .points()
                .iter()
                .map(|q| q.to_int_vec().expect("hull vertices are integral"))
                .collect();
            for base in &lattice_witnesses {
                for d in hull.rays() {
                    ray_witnesses.push((base.clone(), d.clone()));
                }
            }
        }
        CgSearch {
            p,
            single_vertex,
            dual_gens,
            dual_is_everything,
            lattice_witnesses,
            ray_witnesses,
            values: HashMap::new(),
            nodes: 0,
        }
    }

    /// max of u.x over p, or None when unbounded.
    fn value(&mut self, u: &IntVec) -> Option<Rat> {
        if let Some(v) = self.values.get(u) {
            return v.clone();
        }
        let v = match self.p.lp_max(u) {
            LpOutcome::Optimal { value, .. } => Some(value),
            LpOutcome::Unbounded => None,
            LpOutcome::Infeasible => unreachable!("search runs on nonempty polyhedra"),
        };
        self.values.insert(u.clone(), v.clone());
        v
    }

    fn cut_if_violated(&mut self, u: &IntVec, w: &Point) -> Option<HalfPlane> {
        let value = self.value(u)?;
        let b = rat_floor(&value);
        if u.dot_point(w) > Rat::from(b.clone()) {
            Some(HalfPlane::from_parts(u.clone(), b))
        } else {
            None
        }
    }

    /// Whether the open sector between l and r avoids the dual cone of
    /// bounded directions entirely. The dual is convex, so if it meets
    /// the open sector without containing the mediant it must have a
    /// boundary generator strictly inside.
    fn interior_misses_dual(&mut self, l: &IntVec, r: &IntVec, m: &IntVec) -> bool {
        if self.dual_is_everything || self.value(m).is_some() {
            return false;
        }
        let gens = self.dual_gens.clone();
        !gens
            .iter()
            .any(|g| l.cross(g).is_positive() && g.cross(r).is_positive())
    }

    /// Whether no candidate strictly inside the sector can be violated
    /// at w. Strict insiders are al + br with integers a, b >= 1.
    fn no_cut_inside(&mut self, l: &IntVec, r: &IntVec, w: &Point) -> bool {
        let lw = l.dot_point(w);
        let rw = r.dot_point(w);

        // An integral z in p with l(z - w) >= 0 and r(z - w) >= 0 gives
        // cw <= cz <= floor(max) for the whole closed sector.
        for z in &self.lattice_witnesses {
            let a = Rat::from(l.dot(z)) - &lw;
            let b = Rat::from(r.dot(z)) - &rw;
            if !a.is_negative() && !b.is_negative() {
                return true;
            }
        }
        for (base, d) in &self.ray_witnesses {
            if ray_family_dominates(l, r, w, base, d) {
                return true;
            }
        }

        let (Some(vl), Some(vr)) = (self.value(l), self.value(r)) else {
            return false;
        };
        let gap_l = &vl - &lw;
        let gap_r = &vr - &rw;
        debug_assert!(!gap_l.is_negative() && !gap_r.is_negative());
        if self.single_vertex {
            // The maximum of any insider sits at the one vertex, so
            // gaps add exactly and floors combine superadditively.
            let slack_l = &lw - Rat::from(rat_floor(&vl));
            let slack_r = &rw - Rat::from(rat_floor(&vr));
            if !slack_l.is_positive() && !slack_r.is_positive() {
                return true;
            }
            if gap_l + gap_r >= Rat::one() {
                return true;
            }
            return false;
        }
        // Both endpoints optimal at w: every insider c has
        // max c.x = c.w by subadditivity, and c.w is integral because
        // non-violated endpoints with zero gap have integral values.
        if gap_l.is_zero() && gap_r.is_zero() {
            debug_assert!(lw.is_integer() && rw.is_integer());
            return true;
        }
        // A vertex of p itself certifies floor(max) > c.w - 1.
        for q in self.p.points() {
            let a = l.dot_point(q) - &lw;
            let b = r.dot_point(q) - &rw;
            if !a.is_negative() && !b.is_negative() && &a + &b >= Rat::one() {
                return true;
            }
        }
        false
    }

    fn search(
        &mut self,
        l: &IntVec,
        r: &IntVec,
        w: &Point,
        depth: u32,
        truncated: &mut bool,
    ) -> Option<HalfPlane> {
        self.nodes += 1;
        assert!(self.nodes < 50_000_000, "closure separation search ran away");
        let m = l.add(r);
        if self.interior_misses_dual(l, r, &m) || self.no_cut_inside(l, r, w) {
            return None;
        }
        if depth == 0 {
            *truncated = true;
            return None;
        }
        if let Some(cut) = self.cut_if_violated(&m, w) {
            return Some(cut);
        }
        self.search(l, &m, w, depth - 1, truncated)
            .or_else(|| self.search(&m, r, w, depth - 1, truncated))
    }

    fn violated_cut(&mut self, w: &Point, depth: u32, truncated: &mut bool) -> Option<HalfPlane> {
        let e1 = IntVec::new(1, 0);
        let e2 = IntVec::new(0, 1);
        let axes = [e1.clone(), e2.clone(), e1.neg(), e2.neg()];
        for u in &axes {
            if let Some(cut) = self.cut_if_violated(u, w) {
                return Some(cut);
            }
        }
        let arcs = [
            (e1.clone(), e2.clone()),
            (e2.clone(), e1.neg()),
            (e1.neg(), e2.neg()),
            (e2.neg(), e1.clone()),
        ];
        for (l, r) in &arcs {
            if let Some(cut) = self.search(l, r, w, depth, truncated) {
                return Some(cut);
            }
        }
        None
    }
}

/// Whether some integral point base + t d, t a nonnegative integer,
/// dominates the whole sector between l and r at w.
fn ray_family_dominates(l: &IntVec, r: &IntVec, w: &Point, base: &IntVec, d: &IntVec) -> bool {
    let mut lo = Int::zero();
    let mut hi: Option<Int> = None;
    for u in [l, r] {
        let at_base = Rat::from(u.dot(base)) - u.dot_point(w);
        let slope = u.dot(d);
        if slope.is_zero() {
            if at_base.is_negative() {
                return false;
            }
        } else {
            let crossing = -at_base / Rat::from(slope.clone());
            if slope.is_positive() {
                let need = rat_ceil(&crossing);
                if need > lo {
                    lo = need;
                }
            } else {
                let cap = rat_floor(&crossing);
                hi = Some(match hi {
                    Some(h) => h.min(cap),
                    None => cap,
                });
            }
        }
    }
    match hi {
        Some(h) => lo <= h,
        None => true,
    }
}

fn cg_engine(p: &Polyhedron, depth0: u32) -> ChvatalClosure {
    debug_assert!(p.is_pointed_full_dim());
    let strengthened: Vec<HalfPlane> = p.rows().iter().map(chvatal_strengthen).collect();
    let mut q = canonicalize(&strengthened);
    let mut depth = depth0.max(1);
    let mut approximate = false;
    let mut rounds = 0u32;
    loop {
        rounds += 1;
        assert!(rounds < 10_000, "closure fixpoint failed to settle");
        let fractional: Vec<Point> = q
            .points()
            .iter()
            .filter(|w| !w.is_integral())
            .cloned()
            .collect();
        if fractional.is_empty() {
            break;
        }
        let mut search = CgSearch::new(p);
        let mut found: Vec<HalfPlane> = Vec::new();
        let mut truncated = false;
        for w in &fractional {
            if let Some(cut) = search.violated_cut(w, depth, &mut truncated) {
                found.push(cut);
            }
        }
        if !found.is_empty() {
            let mut rows = q.rows().to_vec();
            rows.extend(found);
            q = canonicalize(&rows);
            continue;
        }
        if truncated {
            if depth >= MAX_DEPTH {
                approximate = true;
                break;
            }
            depth = (depth * 2).min(MAX_DEPTH);
            continue;
        }
        break;
    }
    ChvatalClosure { closure: q, approximate }
}

pub fn chvatal_closure_cone(c: &TranslatedCone, depth: u32) -> ChvatalClosure {
    let p = canonicalize(&[c.late.clone(), c.early.clone()]);
    if c.apex.is_integral() {
        return ChvatalClosure { closure: p, approximate: false };
    }
    cg_engine(&p, depth)
}

/// Chvatal closure of an arbitrary polyhedron. Shapes of dimension at
/// most one round directly to their integer hulls; shapes with
/// lineality admit only cuts parallel to it, i.e. strengthenings.
pub fn chvatal_closure(p: &Polyhedron, depth: u32) -> ChvatalClosure {
    match p.shape() {
        Shape::Empty | Shape::Plane => {
            ChvatalClosure { closure: p.clone(), approximate: false }
        }
        Shape::Point | Shape::Segment | Shape::Ray | Shape::Line => {
            ChvatalClosure { closure: polyhedron_hull(p), approximate: false }
        }
        Shape::Half | Shape::Strip => {
            let rows: Vec<HalfPlane> = p.rows().iter().map(chvatal_strengthen).collect();
            ChvatalClosure { closure: canonicalize(&rows), approximate: false }
        }
        Shape::Polygon | Shape::Unbounded => cg_engine(p, depth),
    }
}

pub fn split_closure_cone(c: &TranslatedCone) -> ClosureResult {
    let analysis = classify_facets(c);
    let chv = chvatal_closure_cone(c, DEFAULT_DEPTH);
    let mut extreme: Vec<(HalfPlane, usize, IntervalEnd)> = Vec::new();
    for (i, class) in analysis.classes.iter().enumerate() {
        if let FacetClass::TypeTwo { last, .. } = class {
            extreme.push((interval_cut(c, class, 0), i, IntervalEnd::First));
            extreme.push((interval_cut(c, class, *last), i, IntervalEnd::Last));
        }
    }

    let mut rows = vec![c.late.clone(), c.early.clone()];
    rows.extend(chv.closure.rows().iter().cloned());
    rows.extend(extreme.iter().map(|(h, _, _)| h.clone()));
    let closure = canonicalize(&rows);
    assert!(
        closure.rows().len() <= 2 * analysis.hull.rows().len() + chv.closure.rows().len(),
        "closure row count exceeds twice the hull facets plus the Chvatal rows"
    );

    let originals = [c.late.reduced(), c.early.reduced()];
    let origins = closure
        .rows()
        .iter()
        .map(|row| {
            if originals.contains(row) {
                RowOrigin::OriginalRow
            } else if chv.closure.rows().contains(row) {
                RowOrigin::ChvatalCut(row.a.clone())
            } else {
                let (_, facet, end) = extreme
                    .iter()
                    .find(|(h, _, _)| h == row)
                    .expect("closure rows come from the three sources");
                RowOrigin::ExtremeCut { facet: *facet, end: *end }
            }
        })
        .collect();
    ClosureResult { closure, origins, approximate: chv.approximate }
}

pub fn split_closure(p: &Polyhedron) -> SplitClosure {
    if !p.is_pointed_full_dim() {
        return SplitClosure { closure: polyhedron_hull(p), approximate: false };
    }
    let mut rows: Vec<HalfPlane> = p.rows().to_vec();
    let mut approximate = false;
    for cone in corner_relaxations(p) {
        let res = split_closure_cone(&cone);
        approximate |= res.approximate;
        rows.extend(res.closure.rows().iter().cloned());
    }
    SplitClosure { closure: canonicalize(&rows), approximate }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitRank {
    Integral,
    One,
    Two,
    Failure,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankReport {
    pub rank: SplitRank,
    pub approximate: bool,
    /// For 2-row cones: whether the Chvatal closure of the first
    /// closure recovers the integer hull.
    pub cone_chvatal_recovers_hull: Option<bool>,
}

pub fn split_rank_check(p: &Polyhedron) -> RankReport {
    let hull = polyhedron_hull(p);
    let first = split_closure(p);
    let mut approximate = first.approximate;

    let cone_chvatal_recovers_hull = if p.rows().len() == 2 && p.is_pointed_full_dim() {
        let cg = chvatal_closure(&first.closure, DEFAULT_DEPTH);
        approximate |= cg.approximate;
        Some(cg.closure == hull)
    } else {
        None
    };

    let rank = if *p == hull {
        SplitRank::Integral
    } else if first.closure == hull {
        SplitRank::One
    } else {
        let second = split_closure(&first.closure);
        approximate |= second.approximate;
        if second.closure == hull {
            SplitRank::Two
        } else {
            SplitRank::Failure
        }
    };
    RankReport { rank, approximate, cone_chvatal_recovers_hull }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::int;

    fn hp(r: (i64, i64, i64)) -> HalfPlane {
        HalfPlane::new(r.0, r.1, r.2)
    }

    fn poly(rows: &[(i64, i64, i64)]) -> Polyhedron {
        canonicalize(&rows.iter().copied().map(hp).collect::<Vec<_>>())
    }

    fn cone(r1: (i64, i64, i64), r2: (i64, i64, i64)) -> TranslatedCone {
        TranslatedCone::from_pair(&hp(r1), &hp(r2)).expect("rows are not parallel")
    }

    fn iv(x: i64, y: i64) -> IntVec {
        IntVec::new(x, y)
    }

    fn assert_subset(inner: &Polyhedron, outer: &Polyhedron) {
        for row in outer.rows() {
            match inner.lp_max(&row.a) {
                LpOutcome::Infeasible => return,
                LpOutcome::Unbounded => panic!("unbounded against {row:?}"),
                LpOutcome::Optimal { value, .. } => {
                    assert!(
                        value <= Rat::from(row.b.clone()),
                        "row {row:?} cut into the inner set"
                    );
                }
            }
        }
    }

    #[test]
    fn corner_relaxation_counts() {
        let triangle = poly(&[(-1, 0, 0), (0, -1, 0), (1, 1, 5)]);
        assert_eq!(corner_relaxations(&triangle).len(), 3);
        let square = poly(&[(1, 0, 1), (-1, 0, 0), (0, 1, 1), (0, -1, 0)]);
        assert_eq!(corner_relaxations(&square).len(), 4);
        let wedge = poly(&[(-5, 8, 0), (1, 0, 4)]);
        assert_eq!(corner_relaxations(&wedge).len(), 1);
    }

    #[test]
    fn facet_classes_of_a_half_integral_apex() {
        let c = cone((-1, -1, -1), (-1, 1, 0));
        let analysis = classify_facets(&c);
        let class_of = |row: (i64, i64, i64)| {
            let idx = analysis.hull.rows().iter().position(|h| *h == hp(row));
            analysis.classes[idx.expect("row present")].clone()
        };
        assert_eq!(class_of((-1, -1, -1)), FacetClass::Degenerate);
        assert_eq!(class_of((-1, 0, -1)), FacetClass::ChvatalDominated);
        assert_eq!(class_of((-1, 1, 0)), FacetClass::Degenerate);
    }

    #[test]
    fn facet_classes_of_the_divergence_cone() {
        let c = cone((-5, 8, 0), (1, 0, 4));
        let analysis = classify_facets(&c);
        let idx = analysis
            .hull
            .rows()
            .iter()
            .position(|h| *h == hp((-1, 2, 0)))
            .expect("hull keeps the middle facet");
        assert_eq!(
            analysis.classes[idx],
            FacetClass::TypeTwo {
                start: iv(0, 0),
                step: iv(2, 1),
                last: 1,
                j_hat: [iv(3, 2), iv(5, 3)],
            }
        );
        for (i, class) in analysis.classes.iter().enumerate() {
            if i != idx {
                assert_eq!(*class, FacetClass::Degenerate);
            }
        }
    }

    #[test]
    fn extreme_cuts_of_the_divergence_facet() {
        let c = cone((-5, 8, 0), (1, 0, 4));
        let analysis = classify_facets(&c);
        let class = analysis
            .classes
            .iter()
            .find(|cl| matches!(cl, FacetClass::TypeTwo { .. }))
            .expect("one TypeTwo facet");
        assert_eq!(interval_cut(&c, class, 0), hp((-7, 12, 0)));
        assert_eq!(interval_cut(&c, class, 1), hp((-1, 4, 4)));
    }

    #[test]
    fn interior_interval_cuts_are_dominated_by_the_ends() {
        // Wedge over the facet from (0,0) to (3,0): three unit
        // intervals, apex (3/2, 4/3) above the hat line x2 = 1.
        let c = cone((-8, 9, 0), (8, 9, 24));
        let analysis = classify_facets(&c);
        let idx = analysis
            .hull
            .rows()
            .iter()
            .position(|h| *h == hp((0, 1, 0)))
            .expect("floor facet present");
        let class = &analysis.classes[idx];
        assert_eq!(
            *class,
            FacetClass::TypeTwo {
                start: iv(0, 0),
                step: iv(1, 0),
                last: 2,
                j_hat: [iv(1, 1), iv(2, 1)],
            }
        );
        let h0 = interval_cut(&c, class, 0);
        let h1 = interval_cut(&c, class, 1);
        let h2 = interval_cut(&c, class, 2);
        assert_eq!(h0, hp((-16, 33, 0)));
        assert_eq!(h1, hp((0, 9, 8)));
        assert_eq!(h2, hp((16, 33, 48)));
        for h in [&h0, &h1, &h2] {
            assert!(h.violates(&c.apex));
        }
        let ends = poly(&[(-8, 9, 0), (8, 9, 24), (-16, 33, 0), (16, 33, 48)]);
        let middle = poly(&[(-8, 9, 0), (8, 9, 24), (0, 9, 8)]);
        assert_subset(&ends, &middle);
    }

    #[test]
    fn chvatal_closure_of_an_integral_apex_cone() {
        let c = cone((-1, 0, 0), (1, 2, 2));
        let res = chvatal_closure_cone(&c, DEFAULT_DEPTH);
        assert!(!res.approximate);
        assert!(res.closure.same_set(&c.to_polyhedron()));
    }

    #[test]
    fn chvatal_closure_of_the_half_integral_apex() {
        let c = cone((-1, -1, -1), (-1, 1, 0));
        let res = chvatal_closure_cone(&c, DEFAULT_DEPTH);
        assert!(!res.approximate);
        assert_eq!(res.closure, poly(&[(-1, 0, -1), (-1, -1, -1), (-1, 1, 0)]));
    }

    #[test]
    fn chvatal_closure_of_a_fractional_triangle() {
        let p = poly(&[(-1, 0, 0), (0, -1, 0), (2, 2, 3)]);
        let res = chvatal_closure(&p, DEFAULT_DEPTH);
        assert!(!res.approximate);
        assert_eq!(res.closure, poly(&[(-1, 0, 0), (0, -1, 0), (1, 1, 1)]));
    }

    #[test]
    fn chvatal_closure_of_degenerate_shapes() {
        let strip = poly(&[(2, 0, 1), (-2, 0, 0)]);
        assert_eq!(chvatal_closure(&strip, 8).closure, poly(&[(1, 0, 0), (-1, 0, 0)]));

        let segment = poly(&[(0, 1, 0), (0, -1, 0), (-1, 0, 0), (2, 0, 7)]);
        assert_eq!(
            chvatal_closure(&segment, 8).closure,
            poly(&[(0, 1, 0), (0, -1, 0), (-1, 0, 0), (1, 0, 3)])
        );
    }

    #[test]
    fn cone_split_closure_reaches_the_hull_in_one_step() {
        let c = cone((-1, -1, -1), (-1, 1, 0));
        let res = split_closure_cone(&c);
        assert!(!res.approximate);
        assert_eq!(res.closure, cone_hull(&c).hull);
        assert_eq!(res.origins.len(), res.closure.rows().len());
        for (row, origin) in res.closure.rows().iter().zip(&res.origins) {
            match row {
                h if *h == hp((-1, 0, -1)) => {
                    assert_eq!(*origin, RowOrigin::ChvatalCut(iv(-1, 0)));
                }
                _ => assert_eq!(*origin, RowOrigin::OriginalRow),
            }
        }
    }

    #[test]
    fn divergence_cone_closure_keeps_both_extreme_cuts() {
        let c = cone((-5, 8, 0), (1, 0, 4));
        let res = split_closure_cone(&c);
        assert!(!res.approximate);
        assert!(res.closure.rows().contains(&hp((-7, 12, 0))));
        assert!(res.closure.rows().contains(&hp((-1, 4, 4))));
        assert_subset(&cone_hull(&c).hull, &res.closure);
        assert_subset(&res.closure, &c.to_polyhedron());
    }

    #[test]
    fn split_closure_of_flat_shapes() {
        let strip = poly(&[(2, 0, 1), (-2, 0, 0)]);
        let res = split_closure(&strip);
        assert!(!res.approximate);
        assert_eq!(res.closure, poly(&[(1, 0, 0), (-1, 0, 0)]));

        let point = poly(&[(-3, 0, -1), (0, -3, -1), (3, 3, 2)]);
        assert_eq!(point.shape(), Shape::Point);
        assert!(split_closure(&point).closure.is_empty());
    }

    #[test]
    fn split_closure_of_a_lattice_free_triangle_is_empty() {
        let p = poly(&[(-4, 0, -1), (0, -4, -1), (4, 4, 3)]);
        assert_eq!(p.shape(), Shape::Polygon);
        let res = split_closure(&p);
        assert!(!res.approximate);
        assert!(res.closure.is_empty());
    }

    #[test]
    fn split_closure_of_an_integral_polytope_is_itself() {
        let p = poly(&[(1, 0, 1), (-1, 0, 0), (0, 1, 1), (0, -1, 0)]);
        let res = split_closure(&p);
        assert!(!res.approximate);
        assert_eq!(res.closure, p);
    }

    #[test]
    fn rank_reports() {
        let square = poly(&[(1, 0, 1), (-1, 0, 0), (0, 1, 1), (0, -1, 0)]);
        assert_eq!(split_rank_check(&square).rank, SplitRank::Integral);

        let half_integral = poly(&[(-1, -1, -1), (-1, 1, 0)]);
        let report = split_rank_check(&half_integral);
        assert_eq!(report.rank, SplitRank::One);
        assert_eq!(report.cone_chvatal_recovers_hull, Some(true));
        assert!(!report.approximate);

        let divergence = poly(&[(-5, 8, 0), (1, 0, 4)]);
        let report = split_rank_check(&divergence);
        assert_eq!(report.rank, SplitRank::Two);
        assert_eq!(report.cone_chvatal_recovers_hull, Some(true));
        assert!(!report.approximate);
    }

    #[cfg(feature = "oracle")]
    mod randomized {
        use super::*;
        use crate::oracle::{brute_chvatal_closure, brute_split_closure};
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        #[test]
        fn divergence_cone_closures_match_brute_force() {
            let p = poly(&[(-5, 8, 0), (1, 0, 4)]);
            let c = cone((-5, 8, 0), (1, 0, 4));
            let cg = chvatal_closure_cone(&c, DEFAULT_DEPTH);
            assert!(!cg.approximate);
            assert!(cg.closure.same_set(&brute_chvatal_closure(&p, &int(24))));
            let split = split_closure_cone(&c);
            assert!(split.closure.same_set(&brute_split_closure(&p, &int(16))));
        }

        #[test]
        fn random_cones_match_brute_closures() {
            let mut rng = ChaCha8Rng::seed_from_u64(41);
            let mut done = 0;
            while done < 25 {
                let row = |rng: &mut ChaCha8Rng| loop {
                    let a1 = rng.gen_range(-6i64..=6);
                    let a2 = rng.gen_range(-6i64..=6);
                    if a1 != 0 || a2 != 0 {
                        return HalfPlane::new(a1, a2, rng.gen_range(-12i64..=12));
                    }
                };
                let (r1, r2) = (row(&mut rng), row(&mut rng));
                let Some(c) = TranslatedCone::from_pair(&r1, &r2) else { continue };
                let p = canonicalize(&[r1, r2]);
                let res = split_closure_cone(&c);
                assert!(!res.approximate, "depth cap hit on {c:?}");
                let brute = brute_split_closure(&p, &int(12));
                assert!(
                    res.closure.same_set(&brute),
                    "closure mismatch on {c:?}: got {:?}, brute {brute:?}",
                    res.closure
                );
                assert_subset(&cone_hull(&c).hull, &res.closure);
                done += 1;
            }
        }

        #[test]
        fn random_polytopes_match_brute_closures() {
            let mut rng = ChaCha8Rng::seed_from_u64(43);
            let mut done = 0;
            while done < 15 {
                let rows: Vec<HalfPlane> = (0..rng.gen_range(3..=4))
                    .map(|_| loop {
                        let a1 = rng.gen_range(-5i64..=5);
                        let a2 = rng.gen_range(-5i64..=5);
                        if a1 != 0 || a2 != 0 {
                            break HalfPlane::new(a1, a2, rng.gen_range(-10i64..=10));
                        }
                    })
                    .collect();
                let p = canonicalize(&rows);
                if !p.is_pointed_full_dim() {
                    continue;
                }
                let res = split_closure(&p);
                assert!(!res.approximate, "depth cap hit on {p:?}");
                let brute = brute_split_closure(&p, &int(10));
                assert!(
                    res.closure.same_set(&brute),
                    "closure mismatch on {p:?}: got {:?}, brute {brute:?}",
                    res.closure
                );
                assert_subset(&polyhedron_hull(&p), &res.closure);
                assert_subset(&res.closure, &p);
                done += 1;
            }
        }
    }
}
