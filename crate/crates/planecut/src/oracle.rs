//! Brute-force ground truth, computed by direct enumeration only.
//!
//! Nothing in the enumeration oracles calls the cutting-plane
//! machinery: integer programs are solved by scanning lattice columns,
//! closures by enumerating split directions up to a norm bound and
//! intersecting disjunction hulls. The results are slow but
//! independent, which is what makes them usable as test oracles for
//! the fast paths. The one exception is `verify_divergence`, a replay
//! harness that drives the production tilt machinery against frozen
//! recurrence values on purpose.

use crate::geom::{rat_floor, rat_ceil, HalfPlane, Int, IntVec, Rat};
use crate::poly::{canonicalize, disjunction_hull, LpOutcome, Polyhedron, Shape, TranslatedCone};
use crate::solver::{solve, Caps, SolveOutcome};
use crate::tilt::{best_split_cut, parallelogram_disjunction};
use num::{One, Signed, Zero};

/// Axis-aligned verification window, inclusive on both corners.
#[derive(Clone, Debug)]
pub struct Window {
    pub lo: IntVec,
    pub hi: IntVec,
}

impl Window {
    pub fn new(lo: IntVec, hi: IntVec) -> Window {
        assert!(lo.x <= hi.x && lo.y <= hi.y, "window corners out of order");
        Window { lo, hi }
    }

    /// Window guaranteed to contain every vertex of the integer hull of
    /// `p`. Every such vertex lies within one primitive recession step
    /// of the convex hull of the defining points, because stepping back
    /// along a ray from any point further out stays feasible. The
    /// resulting margin is doubled for safety.
    pub fn around(p: &Polyhedron) -> Window {
        assert!(
            !p.is_empty() && p.shape() != Shape::Plane,
            "window derivation needs defining points"
        );
        let xs: Vec<&Rat> = p.points().iter().map(|q| &q.x).collect();
        let ys: Vec<&Rat> = p.points().iter().map(|q| &q.y).collect();
        let mut lo = IntVec::new(
            rat_floor(xs.iter().min().unwrap()),
            rat_floor(ys.iter().min().unwrap()),
        );
        let mut hi = IntVec::new(
            rat_ceil(xs.iter().max().unwrap()),
            rat_ceil(ys.iter().max().unwrap()),
        );
        let mut grow_lo = IntVec::new(1, 1);
        let mut grow_hi = IntVec::new(1, 1);
        let mut absorb = |d: &IntVec| {
            if d.x.is_positive() {
                grow_hi.x += &d.x;
            } else {
                grow_lo.x += d.x.abs();
            }
            if d.y.is_positive() {
                grow_hi.y += &d.y;
            } else {
                grow_lo.y += d.y.abs();
            }
        };
        for r in p.rays() {
            absorb(r);
        }
        if let Some(e) = p.lineality() {
            absorb(e);
            absorb(&e.neg());
        }
        let two = Int::from(2);
        lo = lo.sub(&grow_lo.scale(&two));
        hi = hi.add(&grow_hi.scale(&two));
        Window::new(lo, hi)
    }

    pub fn contains(&self, z: &IntVec) -> bool {
        self.lo.x <= z.x && z.x <= self.hi.x && self.lo.y <= z.y && z.y <= self.hi.y
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum IpOutcome {
    Optimal { point: IntVec, value: Int },
    Infeasible,
}

/// Inclusive lattice range of the window column x1 = x inside `p`:
/// the rows with a2 = 0 decide feasibility of the whole column.
fn column_range(p: &Polyhedron, w: &Window, x: &Int) -> Option<(Int, Int)> {
    let mut lo = Rat::from_integer(w.lo.y.clone());
    let mut hi = Rat::from_integer(w.hi.y.clone());
    for row in p.rows() {
        let slack = Rat::from_integer(&row.b - &row.a.x * x);
        if row.a.y.is_zero() {
            if slack.is_negative() {
                return None;
            }
        } else {
            let bound = slack / Rat::from_integer(row.a.y.clone());
            if row.a.y.is_positive() {
                if bound < hi {
                    hi = bound;
                }
            } else if bound > lo {
                lo = bound;
            }
        }
    }
    let (k_lo, k_hi) = (rat_ceil(&lo), rat_floor(&hi));
    if k_lo > k_hi {
        None
    } else {
        Some((k_lo, k_hi))
    }
}

/// Exact integer program by column scan. The window must contain an
/// optimal lattice point whenever one exists; `Window::around` does.
pub fn brute_ip(p: &Polyhedron, c: &IntVec, w: &Window) -> IpOutcome {
    let mut best: Option<(Int, IntVec)> = None;
    let mut x = w.lo.x.clone();
    while x <= w.hi.x {
        if let Some((k_lo, k_hi)) = column_range(p, w, &x) {
            let k = if c.y.is_negative() { k_lo } else { k_hi };
            let value = &c.x * &x + &c.y * &k;
            if best.as_ref().map_or(true, |(v, _)| value > *v) {
                best = Some((value, IntVec::new(x.clone(), k)));
            }
        }
        x += 1;
    }
    match best {
        Some((value, point)) => IpOutcome::Optimal { point, value },
        None => IpOutcome::Infeasible,
    }
}

/// All lattice points of `p` inside the window, column by column.
pub fn lattice_points(p: &Polyhedron, w: &Window) -> Vec<IntVec> {
    let mut out = Vec::new();
    let mut x = w.lo.x.clone();
    while x <= w.hi.x {
        if let Some((k_lo, k_hi)) = column_range(p, w, &x) {
            let mut k = k_lo;
            while k <= k_hi {
                out.push(IntVec::new(x.clone(), k.clone()));
                k += 1;
            }
        }
        x += 1;
    }
    out
}

fn primitive_vectors(bound: i64) -> Vec<IntVec> {
    let mut out = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let v = IntVec::new(x, y);
            if !v.is_zero() && v.is_primitive() {
                out.push(v);
            }
        }
    }
    out
}

fn bound_as_i64(norm_bound: &Int) -> i64 {
    use num::ToPrimitive;
    let b = norm_bound.to_i64().expect("norm bound fits in i64");
    assert!(b >= 1, "norm bound must be at least 1");
    assert!(b <= 10_000, "enumeration bound out of the oracle's scale");
    b
}

/// Intersects `acc` with the rows of `q`, skipping the recanonicalization
/// when `q` adds nothing.
fn intersect_into(acc: Polyhedron, q: &Polyhedron) -> Polyhedron {
    if q.rows().iter().all(|r| acc.valid_row(r)) {
        return acc;
    }
    let mut rows = acc.rows().to_vec();
    rows.extend_from_slice(q.rows());
    canonicalize(&rows)
}

/// Chvatal closure by enumeration: every primitive c with norm up to the
/// bound whose maximum over `p` is finite contributes c.x <= floor(max).
pub fn brute_chvatal_closure(p: &Polyhedron, norm_bound: &Int) -> Polyhedron {
    if p.is_empty() || p.shape() == Shape::Plane {
        return p.clone();
    }
    let mut acc = p.clone();
    for c in primitive_vectors(bound_as_i64(norm_bound)) {
        if let LpOutcome::Optimal { value, .. } = p.lp_max(&c) {
            if !value.is_integer() {
                let cut = HalfPlane::from_parts(c, rat_floor(&value));
                if !acc.valid_row(&cut) {
                    let mut rows = acc.rows().to_vec();
                    rows.push(cut);
                    acc = canonicalize(&rows);
                }
            }
        }
    }
    acc
}

/// Split closure by enumeration, truncated to directions with norm up to
/// the bound. A split changes `p` only when the open strip contains one
/// of its defining points, so those strips are the whole candidate set.
pub fn brute_split_closure(p: &Polyhedron, norm_bound: &Int) -> Polyhedron {
    if p.is_empty() || p.shape() == Shape::Plane {
        return p.clone();
    }
    let mut candidates: Vec<(IntVec, Int)> = Vec::new();
    for pi in primitive_vectors(bound_as_i64(norm_bound)) {
        if pi.y.is_negative() || (pi.y.is_zero() && pi.x.is_negative()) {
            continue;
        }
        if let Some(e) = p.lineality() {
            if !pi.dot(e).is_zero() {
                continue;
            }
        }
        for w in p.points() {
            let t = pi.dot_point(w);
            if !t.is_integer() {
                candidates.push((pi.clone(), rat_floor(&t)));
            }
        }
    }
    candidates.sort_unstable_by(|l, r| {
        (&l.0.x, &l.0.y, &l.1).cmp(&(&r.0.x, &r.0.y, &r.1))
    });
    candidates.dedup();
    let mut acc = p.clone();
    for (pi, pi0) in &candidates {
        let hull = disjunction_hull(p, pi, pi0);
        acc = intersect_into(acc, &hull);
    }
    acc
}

/// Instance family on which the strongest split cut loops forever: the
/// feasible region shrinks toward max x2 = 2 but each best cut only
/// reproduces the next family member. c = (0, 1) throughout.
pub fn divergence_instance(i: u32) -> (Polyhedron, IntVec) {
    let p = Int::from(2).pow(i) + 2;
    let rows = [
        HalfPlane::new(1, 0, 4),
        HalfPlane::from_parts(
            IntVec::new(Int::one() - Int::from(2) * &p, Int::from(4) * &p - 4),
            Int::zero(),
        ),
        HalfPlane::new(-5, 8, 0),
    ];
    (canonicalize(&rows), IntVec::new(0, 1))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivergenceStep {
    pub index: u32,
    pub cut: HalfPlane,
    pub cut_matches_recurrence: bool,
    pub reaches_next_instance: bool,
    pub solver_finds_optimum: bool,
}

impl DivergenceStep {
    pub fn ok(&self) -> bool {
        self.cut_matches_recurrence && self.reaches_next_instance && self.solver_finds_optimum
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivergenceReport {
    pub steps: Vec<DivergenceStep>,
}

impl DivergenceReport {
    pub fn all_ok(&self) -> bool {
        self.steps.iter().all(DivergenceStep::ok)
    }
}

/// Replays the best-cut recurrence for `k` steps: the strongest split
/// cut at each instance's optimal cone merely reproduces the next
/// family member, while the clockwise solver finishes every member at
/// Optimal((4,2), 2). Each step records both facts.
pub fn verify_divergence(k: u32) -> DivergenceReport {
    assert!(k >= 1, "at least one step required");
    let mut steps = Vec::new();
    for i in 0..k {
        let (p, c) = divergence_instance(i);
        let LpOutcome::Optimal { point: vertex, .. } = p.lp_max(&c) else {
            panic!("divergence instances have an optimal vertex");
        };
        let tight: Vec<&HalfPlane> = p.rows().iter().filter(|r| r.is_tight(&vertex)).collect();
        assert_eq!(tight.len(), 2, "the optimal vertex is simple");
        let cone = TranslatedCone::from_pair(tight[0], tight[1])
            .expect("rows meeting at a vertex are not parallel");
        let frame = parallelogram_disjunction(&cone).expect("the optimal vertex is fractional");
        let cut = best_split_cut(&cone, &frame.pi, &frame.pi0).expect("the split set is effective");

        let p_next = Int::from(2).pow(i + 1) + 2;
        let expected = HalfPlane::from_parts(
            IntVec::new(Int::one() - Int::from(2) * &p_next, Int::from(4) * &p_next - 4),
            Int::zero(),
        );
        let mut rows = p.rows().to_vec();
        rows.push(cut.clone());
        let reaches_next_instance = canonicalize(&rows) == divergence_instance(i + 1).0;
        let solver_finds_optimum = solve(&p, &c, &Caps::default())
            .map(|s| {
                s.outcome
                    == SolveOutcome::Optimal { point: IntVec::new(4, 2), value: Int::from(2) }
            })
            .unwrap_or(false);
        steps.push(DivergenceStep {
            index: i,
            cut_matches_recurrence: cut == expected,
            cut,
            reaches_next_instance,
            solver_finds_optimum,
        });
    }
    DivergenceReport { steps }
}
