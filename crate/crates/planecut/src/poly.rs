//! Polyhedra in the plane as canonical intersections of half-planes,
//! together with the vertex and ray data recovered while canonicalizing.
//!
//! Canonical form is unique per point set. Rows are reduced, facet
//! defining, and sorted by descending counterclockwise normal angle,
//! which makes consecutive rows consecutive in a clockwise walk of the
//! boundary. For unbounded pointed regions the cyclic order is rotated
//! so the facet arriving from infinity comes first. Sets of dimension
//! below two get rows constructed from their geometry, independent of
//! the input representation, so equal point sets always compare equal.

use crate::geom::{ccw_cmp, cw_cmp, HalfPlane, Int, IntVec, Point, Rat};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Shape {
    Empty,
    Point,
    Segment,
    Ray,
    Line,
    /// Single half-plane.
    Half,
    /// Region between two parallel boundary lines.
    Strip,
    /// The whole plane.
    Plane,
    /// Bounded, full-dimensional.
    Polygon,
    /// Unbounded, full-dimensional, pointed (no lineality).
    Unbounded,
}

/// Generator description: convex hull of `points`, plus conic hull of
/// `rays`, plus the span of `lines`.
#[derive(Clone, Debug, Default)]
pub struct Generators {
    pub points: Vec<Point>,
    pub rays: Vec<IntVec>,
    pub lines: Vec<IntVec>,
    pub whole_plane: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polyhedron {
    rows: Vec<HalfPlane>,
    points: Vec<Point>,
    rays: Vec<IntVec>,
    lineality: Option<IntVec>,
    shape: Shape,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rat,
        point: Point,
        /// Index into `points()` when the shape is Polygon or Unbounded.
        index: Option<usize>,
    },
}

/// Direction representative in the upper half: y > 0, or y = 0 and x > 0.
pub fn canonical_dir(v: &IntVec) -> IntVec {
    let p = v.primitive();
    if p.y.is_negative() || (p.y.is_zero() && p.x.is_negative()) {
        p.neg()
    } else {
        p
    }
}

fn rat_of(i: &Int) -> Rat {
    Rat::from_integer(i.clone())
}

/// Integer row for a.x <= rhs with rational rhs.
fn scale_row(a: &IntVec, rhs: &Rat) -> HalfPlane {
    let d = rhs.denom();
    HalfPlane::from_parts(a.scale(d), rhs.numer().clone()).reduced()
}

/// The point d*(rho/|d|^2) on the line d.x = rho.
fn point_on_line(d: &IntVec, rho: &Rat) -> Point {
    let dd = rat_of(&d.dot(d));
    Point::new(
        rat_of(&d.x) * rho / dd.clone(),
        rat_of(&d.y) * rho / dd,
    )
}

fn point_add(p: &Point, t: &Rat, e: &IntVec) -> Point {
    Point::new(&p.x + t * rat_of(&e.x), &p.y + t * rat_of(&e.y))
}

impl Polyhedron {
    pub fn rows(&self) -> &[HalfPlane] {
        &self.rows
    }

    /// Vertices for Polygon/Unbounded (walk order), defining points for
    /// lower-dimensional shapes.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> Option<&IntVec> {
        self.lineality.as_ref()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dim(&self) -> i32 {
        match self.shape {
            Shape::Empty => -1,
            Shape::Point => 0,
            Shape::Segment | Shape::Ray | Shape::Line => 1,
            _ => 2,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.shape == Shape::Empty
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self.shape, Shape::Empty | Shape::Point | Shape::Segment | Shape::Polygon)
    }

    pub fn is_pointed_full_dim(&self) -> bool {
        matches!(self.shape, Shape::Polygon | Shape::Unbounded)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.shape == Shape::Plane || self.rows.iter().all(|h| h.contains(p))
    }

    /// Largest coefficient magnitude over all row normals.
    pub fn norm_inf(&self) -> Int {
        self.rows
            .iter()
            .map(|h| h.a.norm_inf())
            .max()
            .unwrap_or_else(Int::zero)
    }

    pub fn to_generators(&self) -> Generators {
        let mut g = Generators::default();
        match self.shape {
            Shape::Empty => {}
            Shape::Plane => g.whole_plane = true,
            _ => {
                g.points = self.points.clone();
                let mut rays: Vec<IntVec> = self.rays.clone();
                rays.dedup();
                g.rays = rays;
                if let Some(e) = &self.lineality {
                    g.lines.push(e.clone());
                }
            }
        }
        g
    }

    /// Whether the half-plane contains the whole set.
    pub fn valid_row(&self, h: &HalfPlane) -> bool {
        match self.shape {
            Shape::Empty => true,
            Shape::Plane => h.a.is_zero() && !h.b.is_negative(),
            _ => {
                self.points.iter().all(|p| h.contains(p))
                    && self.rays.iter().all(|r| !h.a.dot(r).is_positive())
                    && self
                        .lineality
                        .iter()
                        .all(|e| h.a.dot(e).is_zero())
            }
        }
    }

    pub fn same_set(&self, other: &Polyhedron) -> bool {
        self.shape == other.shape && self.rows == other.rows
    }

    /// Row indices of the two facets meeting at vertex `k`, as
    /// (arriving facet, departing facet) in the clockwise walk.
    pub fn adjacent_row_indices(&self, k: usize) -> (usize, usize) {
        match self.shape {
            Shape::Polygon => {
                let m = self.rows.len();
                ((k + m - 1) % m, k)
            }
            Shape::Unbounded => (k, k + 1),
            _ => panic!("adjacent_row_indices requires a full-dimensional pointed shape"),
        }
    }

    pub fn lp_max(&self, c: &IntVec) -> LpOutcome {
        if self.shape == Shape::Empty {
            return LpOutcome::Infeasible;
        }
        if c.is_zero() {
            let point = match self.shape {
                Shape::Plane => Point::from_ints(0, 0),
                _ => self.points[0].clone(),
            };
            return LpOutcome::Optimal { value: Rat::zero(), point, index: None };
        }
        if self.shape == Shape::Plane {
            return LpOutcome::Unbounded;
        }
        if let Some(e) = &self.lineality {
            if !c.dot(e).is_zero() {
                return LpOutcome::Unbounded;
            }
        }
        if self.rays.iter().any(|r| c.dot(r).is_positive()) {
            return LpOutcome::Unbounded;
        }
        match self.shape {
            Shape::Polygon | Shape::Unbounded => {
                let vals: Vec<Rat> = self.points.iter().map(|p| c.dot_point(p)).collect();
                let best = vals.iter().max().unwrap().clone();
                let arg: Vec<usize> =
                    (0..vals.len()).filter(|&i| vals[i] == best).collect();
                let idx = match arg.len() {
                    1 => arg[0],
                    2 => {
                        let m = self.points.len();
                        // Two optima lie on one facet. Take that facet's
                        // first vertex in the clockwise walk.
                        if self.shape == Shape::Polygon && arg == [0, m - 1] {
                            m - 1
                        } else {
                            assert_eq!(arg[1], arg[0] + 1, "optimal vertices must be adjacent");
                            arg[0]
                        }
                    }
                    n => panic!("{n} optimal vertices on a line"),
                };
                LpOutcome::Optimal {
                    value: best,
                    point: self.points[idx].clone(),
                    index: Some(idx),
                }
            }
            _ => {
                let (mut best, mut pt) = (None::<Rat>, None::<Point>);
                for p in &self.points {
                    let v = c.dot_point(p);
                    if best.as_ref().map_or(true, |b| v > *b) {
                        best = Some(v);
                        pt = Some(p.clone());
                    }
                }
                LpOutcome::Optimal { value: best.unwrap(), point: pt.unwrap(), index: None }
            }
        }
    }

    pub fn from_rows(raw: &[HalfPlane]) -> Polyhedron {
        canonicalize(raw)
    }
}

fn empty_poly() -> Polyhedron {
    Polyhedron {
        rows: vec![HalfPlane::new(0, 0, -1)],
        points: vec![],
        rays: vec![],
        lineality: None,
        shape: Shape::Empty,
    }
}

fn plane_poly() -> Polyhedron {
    Polyhedron {
        rows: vec![],
        points: vec![Point::from_ints(0, 0)],
        rays: vec![],
        lineality: None,
        shape: Shape::Plane,
    }
}

fn point_poly(v: Point) -> Polyhedron {
    let mut rows = vec![
        scale_row(&IntVec::new(1, 0), &v.x),
        scale_row(&IntVec::new(-1, 0), &-v.x.clone()),
        scale_row(&IntVec::new(0, 1), &v.y),
        scale_row(&IntVec::new(0, -1), &-v.y.clone()),
    ];
    rows.sort_by(|p, q| cw_cmp(&p.a, &q.a));
    Polyhedron { rows, points: vec![v], rays: vec![], lineality: None, shape: Shape::Point }
}

fn segment_poly(u: Point, v: Point) -> Polyhedron {
    debug_assert!(u != v);
    let (u, v) = if u <= v { (u, v) } else { (v, u) };
    let (dx, dy) = v.sub(&u);
    let e = IntVec::new(
        (&dx * rat_of(dx.denom()) * rat_of(dy.denom())).to_integer(),
        (&dy * rat_of(dx.denom()) * rat_of(dy.denom())).to_integer(),
    )
    .primitive();
    let n = canonical_dir(&e.rot_cw());
    let rho = n.dot_point(&u);
    let mut rows = vec![
        scale_row(&n, &rho),
        scale_row(&n.neg(), &-rho.clone()),
        scale_row(&e, &e.dot_point(&v)),
        scale_row(&e.neg(), &-e.dot_point(&u)),
    ];
    rows.sort_by(|p, q| cw_cmp(&p.a, &q.a));
    Polyhedron { rows, points: vec![u, v], rays: vec![], lineality: None, shape: Shape::Segment }
}

fn ray_poly(v: Point, r: &IntVec) -> Polyhedron {
    let r = r.primitive();
    let n = canonical_dir(&r.rot_cw());
    let rho = n.dot_point(&v);
    let mut rows = vec![
        scale_row(&n, &rho),
        scale_row(&n.neg(), &-rho.clone()),
        scale_row(&r.neg(), &-r.dot_point(&v)),
    ];
    rows.sort_by(|p, q| cw_cmp(&p.a, &q.a));
    Polyhedron { rows, points: vec![v], rays: vec![r], lineality: None, shape: Shape::Ray }
}

/// The line n.x = rho for any nonzero integer n and rational rho.
fn line_poly(n: &IntVec, rho: &Rat) -> Polyhedron {
    let nc = canonical_dir(n);
    let rho = {
        let r = rho / rat_of(&n.content());
        if nc == n.primitive() {
            r
        } else {
            -r
        }
    };
    let mut rows = vec![scale_row(&nc, &rho), scale_row(&nc.neg(), &-rho.clone())];
    rows.sort_by(|p, q| cw_cmp(&p.a, &q.a));
    Polyhedron {
        rows,
        points: vec![point_on_line(&nc, &rho)],
        rays: vec![],
        lineality: Some(canonical_dir(&nc.rot_cw())),
        shape: Shape::Line,
    }
}

fn half_poly(row: HalfPlane) -> Polyhedron {
    let row = row.reduced();
    let prim = row.a.primitive();
    let rho = Rat::new(row.b.clone(), row.a.content());
    Polyhedron {
        points: vec![point_on_line(&prim, &rho)],
        rays: vec![prim.neg()],
        lineality: Some(canonical_dir(&row.a.rot_cw())),
        rows: vec![row],
        shape: Shape::Half,
    }
}

fn strip_poly(hi: HalfPlane, lo: HalfPlane) -> Polyhedron {
    let mut rows = vec![hi.reduced(), lo.reduced()];
    rows.sort_by(|p, q| cw_cmp(&p.a, &q.a));
    let points = rows
        .iter()
        .map(|r| point_on_line(&r.a.primitive(), &Rat::new(r.b.clone(), r.a.content())))
        .collect();
    Polyhedron {
        lineality: Some(canonical_dir(&rows[0].a.rot_cw())),
        points,
        rays: vec![],
        rows,
        shape: Shape::Strip,
    }
}

/// Feasible side of the 1D set cut out of the line d.x = rho by `rows`.
fn restrict_to_line(d: &IntVec, rho: &Rat, rows: &[HalfPlane]) -> Polyhedron {
    let e = d.rot_cw();
    let p0 = point_on_line(d, rho);
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for row in rows {
        let s = row.a.dot(&e);
        let c = rat_of(&row.b) - row.a.dot_point(&p0);
        if s.is_zero() {
            if c.is_negative() {
                return empty_poly();
            }
        } else if s.is_positive() {
            let bound = c / rat_of(&s);
            if hi.as_ref().map_or(true, |h| bound < *h) {
                hi = Some(bound);
            }
        } else {
            let bound = c / rat_of(&s);
            if lo.as_ref().map_or(true, |l| bound > *l) {
                lo = Some(bound);
            }
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => match l.cmp(&h) {
            Ordering::Greater => empty_poly(),
            Ordering::Equal => point_poly(point_add(&p0, &l, &e)),
            Ordering::Less => segment_poly(point_add(&p0, &l, &e), point_add(&p0, &h, &e)),
        },
        (Some(l), None) => ray_poly(point_add(&p0, &l, &e), &e),
        (None, Some(h)) => ray_poly(point_add(&p0, &h, &e), &e.neg()),
        (None, None) => line_poly(d, rho),
    }
}

/// Canonicalizes an arbitrary list of half-planes.
pub fn canonicalize(raw: &[HalfPlane]) -> Polyhedron {
    // Tightest row per primitive normal direction.
    let mut by_dir: BTreeMap<IntVec, (HalfPlane, Rat)> = BTreeMap::new();
    for r in raw {
        if r.a.is_zero() {
            if r.b.is_negative() {
                return empty_poly();
            }
            continue;
        }
        let red = r.reduced();
        let dir = red.a.primitive();
        let rhs = Rat::new(red.b.clone(), red.a.content());
        match by_dir.get(&dir) {
            Some((_, old)) if *old <= rhs => {}
            _ => {
                by_dir.insert(dir, (red, rhs));
            }
        }
    }
    if by_dir.is_empty() {
        return plane_poly();
    }

    // Opposite-direction pairs force emptiness or collapse to a line.
    let dirs: Vec<IntVec> = by_dir.keys().cloned().collect();
    for d in &dirs {
        let nd = d.neg();
        if *d < nd {
            if let (Some((_, up)), Some((_, dn))) = (by_dir.get(d), by_dir.get(&nd)) {
                let lower = -dn.clone();
                if *up < lower {
                    return empty_poly();
                }
                if *up == lower {
                    let reduced: Vec<HalfPlane> =
                        by_dir.values().map(|(h, _)| h.clone()).collect();
                    return restrict_to_line(d, up, &reduced);
                }
            }
        }
    }

    if by_dir.len() == 1 {
        let (h, _) = by_dir.into_values().next().unwrap();
        return half_poly(h);
    }
    if by_dir.len() == 2 {
        let opposite = {
            let mut keys = by_dir.keys();
            let d1 = keys.next().unwrap();
            let d2 = keys.next().unwrap();
            *d2 == d1.neg()
        };
        if opposite {
            let mut vals = by_dir.into_values();
            let (h1, _) = vals.next().unwrap();
            let (h2, _) = vals.next().unwrap();
            return strip_poly(h1, h2);
        }
    }

    pointed_from_rows(by_dir.into_values().map(|(h, _)| h).collect())
}

/// Full-dimensional pointed case: normals span at least two lines and
/// no opposite pair is tight.
fn pointed_from_rows(rows: Vec<HalfPlane>) -> Polyhedron {
    let feasible = |p: &Point| rows.iter().all(|r| r.contains(p));

    let mut vertices: BTreeSet<Point> = BTreeSet::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if let Some(p) = rows[i].boundary().intersect(&rows[j].boundary()) {
                if feasible(&p) {
                    vertices.insert(p);
                }
            }
        }
    }
    if vertices.is_empty() {
        return empty_poly();
    }

    let mut recs: BTreeSet<IntVec> = BTreeSet::new();
    for r in &rows {
        for d in [r.a.rot_cw(), r.a.rot_ccw()] {
            if rows.iter().all(|q| !q.a.dot(&d).is_positive()) {
                recs.insert(d.primitive());
            }
        }
    }
    assert!(recs.len() <= 2, "a pointed recession cone has at most two extreme rays");

    if recs.is_empty() && vertices.len() == 1 {
        return point_poly(vertices.into_iter().next().unwrap());
    }

    let mut kept: Vec<HalfPlane> = rows
        .iter()
        .filter(|r| {
            let tight = vertices.iter().filter(|v| r.is_tight(v)).count();
            tight >= 2
                || (tight == 1 && recs.iter().any(|d| r.a.dot(d).is_zero()))
        })
        .cloned()
        .collect();
    kept.sort_by(|p, q| cw_cmp(&p.a, &q.a));

    if recs.is_empty() {
        let m = kept.len();
        assert!(m >= 3);
        let points: Vec<Point> = (0..m)
            .map(|k| {
                let p = kept[(k + m - 1) % m]
                    .boundary()
                    .intersect(&kept[k].boundary())
                    .expect("adjacent facets meet");
                assert!(vertices.contains(&p));
                p
            })
            .collect();
        assert_eq!(points.len(), vertices.len());
        return Polyhedron { rows: kept, points, rays: vec![], lineality: None, shape: Shape::Polygon };
    }

    let is_rec = |d: &IntVec| recs.contains(&d.primitive());
    let incoming: Vec<usize> =
        (0..kept.len()).filter(|&i| is_rec(&kept[i].a.rot_ccw())).collect();
    assert_eq!(incoming.len(), 1, "exactly one facet arrives from infinity");
    kept.rotate_left(incoming[0]);
    assert!(
        is_rec(&kept.last().unwrap().a.rot_cw()),
        "last facet departs to infinity"
    );

    let m = kept.len();
    let points: Vec<Point> = (0..m - 1)
        .map(|i| {
            let p = kept[i]
                .boundary()
                .intersect(&kept[i + 1].boundary())
                .expect("adjacent facets meet");
            assert!(vertices.contains(&p));
            p
        })
        .collect();
    assert_eq!(points.len(), vertices.len());
    let rays = vec![
        kept[0].a.rot_ccw().primitive(),
        kept[m - 1].a.rot_cw().primitive(),
    ];
    Polyhedron { rows: kept, points, rays, lineality: None, shape: Shape::Unbounded }
}

enum RayCone {
    Zero,
    Single(IntVec),
    Wedge(IntVec, IntVec),
    HalfCone { boundary: IntVec, inward: IntVec },
    LineCone(IntVec),
    Full,
}

fn classify_ray_cone(rays: &[IntVec]) -> RayCone {
    let set: BTreeSet<IntVec> = rays
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.primitive())
        .collect();
    let mut rs: Vec<IntVec> = set.into_iter().collect();
    rs.sort_by(|a, b| ccw_cmp(a, b));
    match rs.len() {
        0 => return RayCone::Zero,
        1 => return RayCone::Single(rs.pop().unwrap()),
        _ => {}
    }
    let k = rs.len();
    if k == 2 && rs[1] == rs[0].neg() {
        return RayCone::LineCone(rs[0].clone());
    }
    for i in 0..k {
        let u = &rs[i];
        let v = &rs[(i + 1) % k];
        let cr = u.cross(v);
        if cr.is_negative() {
            // Gap above 180 degrees: pointed wedge from v around to u.
            return RayCone::Wedge(v.clone(), u.clone());
        }
        if cr.is_zero() && u.dot(v).is_negative() {
            // Gap of exactly 180 degrees; other rays fill one side.
            let mid = &rs[(i + 2) % k];
            let mut nu = u.rot_cw();
            if nu.dot(mid).is_positive() {
                nu = nu.neg();
            }
            return RayCone::HalfCone { boundary: u.clone(), inward: nu.neg() };
        }
    }
    RayCone::Full
}

/// Canonical polyhedron generated by points, rays and lines: the closed
/// convex hull conv(points) + cone(rays) + span(lines).
pub fn vrep_to_hrep(g: &Generators) -> Polyhedron {
    if g.whole_plane {
        return plane_poly();
    }
    if g.points.is_empty() {
        return empty_poly();
    }
    let mut line_dirs: BTreeSet<IntVec> =
        g.lines.iter().filter(|e| !e.is_zero()).map(canonical_dir).collect();
    let mut rays: Vec<IntVec> = Vec::new();
    match classify_ray_cone(&g.rays) {
        RayCone::Full => return plane_poly(),
        RayCone::LineCone(e) => {
            line_dirs.insert(canonical_dir(&e));
        }
        RayCone::HalfCone { boundary, inward } => {
            line_dirs.insert(canonical_dir(&boundary));
            rays.push(inward);
        }
        RayCone::Wedge(a, b) => {
            rays.push(a);
            rays.push(b);
        }
        RayCone::Single(r) => rays.push(r),
        RayCone::Zero => {}
    }
    if line_dirs.len() >= 2 {
        return plane_poly();
    }

    let points: Vec<Point> = {
        let set: BTreeSet<Point> = g.points.iter().cloned().collect();
        set.into_iter().collect()
    };

    if let Some(e) = line_dirs.into_iter().next() {
        // Project along the lineality direction.
        let n = canonical_dir(&e.rot_cw());
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        let mut lo_inf = false;
        let mut hi_inf = false;
        for p in &points {
            let v = n.dot_point(p);
            if lo.as_ref().map_or(true, |l| v < *l) {
                lo = Some(v.clone());
            }
            if hi.as_ref().map_or(true, |h| v > *h) {
                hi = Some(v);
            }
        }
        for r in &rays {
            let s = n.dot(r);
            if s.is_positive() {
                hi_inf = true;
            } else if s.is_negative() {
                lo_inf = true;
            }
        }
        let (lo, hi) = (lo.unwrap(), hi.unwrap());
        return match (lo_inf, hi_inf) {
            (true, true) => plane_poly(),
            (false, true) => half_poly(scale_row(&n.neg(), &-lo)),
            (true, false) => half_poly(scale_row(&n, &hi)),
            (false, false) => {
                if lo == hi {
                    line_poly(&n, &hi)
                } else {
                    strip_poly(scale_row(&n, &hi), scale_row(&n.neg(), &-lo))
                }
            }
        };
    }

    // Pointed. Check the affine span of the generators.
    let base = &points[0];
    let mut span_dirs: Vec<IntVec> = Vec::new();
    for p in points.iter().skip(1) {
        let (dx, dy) = p.sub(base);
        let sc = rat_of(dx.denom()) * rat_of(dy.denom());
        let d = IntVec::new((&dx * &sc).to_integer(), (&dy * &sc).to_integer());
        span_dirs.push(d.primitive());
    }
    span_dirs.extend(rays.iter().map(|r| r.primitive()));
    let two_dim = span_dirs
        .iter()
        .any(|d| !span_dirs[0].cross(d).is_zero());

    if span_dirs.is_empty() {
        return point_poly(points.into_iter().next().unwrap());
    }

    if !two_dim {
        let e = canonical_dir(&span_dirs[0]);
        let ee = rat_of(&e.dot(&e));
        let tval = |p: &Point| {
            let (dx, dy) = p.sub(base);
            (dx * rat_of(&e.x) + dy * rat_of(&e.y)) / ee.clone()
        };
        let mut lo = Rat::zero();
        let mut hi = Rat::zero();
        for p in &points {
            let t = tval(p);
            if t < lo {
                lo = t.clone();
            }
            if t > hi {
                hi = t;
            }
        }
        let mut lo_inf = false;
        let mut hi_inf = false;
        for r in &rays {
            if e.dot(r).is_positive() {
                hi_inf = true;
            } else {
                lo_inf = true;
            }
        }
        return match (lo_inf, hi_inf) {
            (true, true) => line_poly(&canonical_dir(&e.rot_cw()), &canonical_dir(&e.rot_cw()).dot_point(base)),
            (false, true) => ray_poly(point_add(base, &lo, &e), &e),
            (true, false) => ray_poly(point_add(base, &hi, &e), &e.neg()),
            (false, false) => {
                if lo == hi {
                    point_poly(point_add(base, &lo, &e))
                } else {
                    segment_poly(point_add(base, &lo, &e), point_add(base, &hi, &e))
                }
            }
        };
    }

    // Full-dimensional pointed hull. Every facet line passes through two
    // generator points or through a point along an extreme ray.
    let mut candidates: BTreeSet<HalfPlane> = BTreeSet::new();
    let mut add_line = |n: &IntVec, through: &Point| {
        candidates.insert(scale_row(n, &n.dot_point(through)));
        candidates.insert(scale_row(&n.neg(), &n.neg().dot_point(through)));
    };
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (dx, dy) = points[j].sub(&points[i]);
            let sc = rat_of(dx.denom()) * rat_of(dy.denom());
            let d = IntVec::new((&dx * &sc).to_integer(), (&dy * &sc).to_integer());
            add_line(&d.rot_cw(), &points[i]);
        }
        for r in &rays {
            add_line(&r.rot_cw(), &points[i]);
        }
    }
    let kept: Vec<HalfPlane> = candidates
        .into_iter()
        .filter(|h| {
            points.iter().all(|p| h.contains(p))
                && rays.iter().all(|r| !h.a.dot(r).is_positive())
        })
        .collect();
    let out = canonicalize(&kept);
    assert!(
        out.is_pointed_full_dim(),
        "two-dimensional generator span must give a full-dimensional hull"
    );
    out
}

/// Closed convex hull of the union of two polyhedra.
pub fn conv_union(p: &Polyhedron, q: &Polyhedron) -> Polyhedron {
    if p.is_empty() {
        return q.clone();
    }
    if q.is_empty() {
        return p.clone();
    }
    let (gp, gq) = (p.to_generators(), q.to_generators());
    let g = Generators {
        points: gp.points.into_iter().chain(gq.points).collect(),
        rays: gp.rays.into_iter().chain(gq.rays).collect(),
        lines: gp.lines.into_iter().chain(gq.lines).collect(),
        whole_plane: gp.whole_plane || gq.whole_plane,
    };
    vrep_to_hrep(&g)
}

/// Convex hull of the split disjunction pi.x <= pi0 or pi.x >= pi0 + 1
/// applied to `p`.
pub fn disjunction_hull(p: &Polyhedron, pi: &IntVec, pi0: &Int) -> Polyhedron {
    assert!(pi.is_primitive(), "split directions must be primitive");
    let mut side0 = p.rows().to_vec();
    side0.push(HalfPlane::from_parts(pi.clone(), pi0.clone()));
    let mut side1 = p.rows().to_vec();
    side1.push(HalfPlane::from_parts(pi.neg(), -(pi0 + Int::one())));
    conv_union(&canonicalize(&side0), &canonicalize(&side1))
}

/// Corner relaxation: a cone with rational apex bounded by one arriving
/// and one departing facet of a clockwise walk, so
/// cross(late.a, early.a) < 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedCone {
    pub late: HalfPlane,
    pub early: HalfPlane,
    pub apex: Point,
}

impl TranslatedCone {
    /// Orders the two rows into a corner. None when the normals are
    /// parallel.
    pub fn from_pair(r1: &HalfPlane, r2: &HalfPlane) -> Option<TranslatedCone> {
        let c = r1.a.cross(&r2.a);
        if c.is_zero() {
            return None;
        }
        let (late, early) = if c.is_negative() { (r1, r2) } else { (r2, r1) };
        let apex = late.boundary().intersect(&early.boundary()).unwrap();
        Some(TranslatedCone { late: late.reduced(), early: early.reduced(), apex })
    }

    pub fn to_polyhedron(&self) -> Polyhedron {
        canonicalize(&[self.late.clone(), self.early.clone()])
    }
}
