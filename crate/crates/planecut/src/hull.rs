//! Integer hulls: of a translated cone by a chain of tilts, and of a
//! general polyhedron by intersecting the hulls of its corner cones.
//!
//! The chain strengthens both rows of the cone, then tilts the late row
//! repeatedly. A split tilt keeps rotating the working facet about a
//! fixed pivot and records nothing; a rounding tilt lands on a facet of
//! the hull and is recorded. The chain stops when the working facet
//! meets the strengthened early row at a lattice point.

use crate::geom::{HalfPlane, Int, IntVec, Point, Rat};
use crate::lattice::{chvatal_strengthen, lattice_line};
use crate::poly::{canonicalize, vrep_to_hrep, Generators, Polyhedron, Shape, TranslatedCone};
use crate::tilt::{tilt, TiltOutcome};
use num::{One, Signed, Zero};

/// Default multiplier for the facet-count budget K * (1 + log2 norm).
pub const FACET_BUDGET: u64 = 8;

/// Exact test of count <= k * (1 + log2 norm) for norm >= 1, as the
/// equivalent integer comparison 2^(count - k) <= norm^k.
pub fn within_log_budget(count: u64, k: u64, norm: &Int) -> bool {
    assert!(norm.is_positive());
    if count <= k {
        return true;
    }
    let lhs = Int::one() << (count - k);
    let mut rhs = Int::one();
    for _ in 0..k {
        rhs *= norm;
    }
    lhs <= rhs
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FacetWitness {
    Edge { ends: [IntVec; 2] },
    Ray { base: IntVec, ray: IntVec },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HullResult {
    pub hull: Polyhedron,
    /// One witness per hull row, in row order.
    pub witnesses: Vec<FacetWitness>,
}

fn facet_witness(hull: &Polyhedron, row: &HalfPlane) -> FacetWitness {
    let tight: Vec<IntVec> = hull
        .points()
        .iter()
        .filter(|p| row.is_tight(p))
        .map(|p| p.to_int_vec().expect("hull vertices are integral"))
        .collect();
    match tight.len() {
        2 => FacetWitness::Edge { ends: [tight[0].clone(), tight[1].clone()] },
        1 => {
            let ray = hull
                .rays()
                .iter()
                .find(|r| row.a.dot(r).is_zero())
                .expect("an unbounded facet runs along a recession ray")
                .clone();
            FacetWitness::Ray { base: tight[0].clone(), ray }
        }
        n => unreachable!("a hull facet carries one or two vertices, got {n}"),
    }
}

pub fn cone_hull(c: &TranslatedCone) -> HullResult {
    let original = c.to_polyhedron();
    let norm = c.late.a.norm_inf().max(c.early.a.norm_inf());
    let late0 = chvatal_strengthen(&c.late);
    let early0 = chvatal_strengthen(&c.early);

    let mut facets = vec![late0.clone()];
    let mut current = late0;
    let mut split_pivot: Option<IntVec> = None;
    let bits = norm.bits().max(1);
    let chain_cap = 64 * (bits + 1) * (bits + 1);
    let mut steps = 0u64;
    loop {
        let cone = TranslatedCone::from_pair(&current, &early0)
            .expect("the chain stops before the working facet reaches the early row");
        assert_eq!(cone.late, current, "the working facet stays on the late side");
        if cone.apex.is_integral() {
            break;
        }
        steps += 1;
        assert!(steps <= chain_cap, "hull chain exceeded its iteration budget");
        match tilt(&cone).expect("fractional apex with strengthened rows") {
            TiltOutcome::Chvatal { cut, .. } => {
                facets.push(cut.clone());
                current = cut;
                split_pivot = None;
            }
            TiltOutcome::Split { cut, frame, .. } => {
                // Consecutive split tilts rotate about one pivot, and
                // every pivot is a lattice point of the original cone.
                if let Some(prev) = &split_pivot {
                    assert_eq!(prev, &frame.p, "split tilts keep their pivot");
                }
                assert!(original.contains(&frame.p.to_point()), "pivots lie in the cone");
                split_pivot = Some(frame.p);
                current = cut;
            }
        }
    }
    facets.push(early0);

    let hull = canonicalize(&facets);
    assert!(!hull.is_empty(), "a full-dimensional cone contains lattice points");
    assert!(
        within_log_budget(hull.rows().len() as u64, FACET_BUDGET, &norm),
        "hull facet count exceeded its logarithmic budget"
    );
    for row in hull.rows() {
        assert!(row.a.norm_inf() <= norm, "hull normals stay within the cone norm");
    }
    let witnesses = hull.rows().iter().map(|r| facet_witness(&hull, r)).collect();
    HullResult { hull, witnesses }
}

fn empty() -> Polyhedron {
    canonicalize(&[HalfPlane::new(0, 0, -1)])
}

fn carrier_row(p: &Polyhedron) -> HalfPlane {
    p.rows()
        .iter()
        .find(|r| {
            p.points().iter().all(|z| r.is_tight(z))
                && p.rays().iter().all(|d| r.a.dot(d).is_zero())
        })
        .expect("a one-dimensional polyhedron lies on one of its boundary lines")
        .clone()
}

fn rat_param(base: &IntVec, step: &IntVec, p: &Point) -> Rat {
    if !step.x.is_zero() {
        (&p.x - Rat::from(base.x.clone())) / Rat::from(step.x.clone())
    } else {
        (&p.y - Rat::from(base.y.clone())) / Rat::from(step.y.clone())
    }
}

fn segment_or_ray_hull(p: &Polyhedron) -> Polyhedron {
    let carrier = carrier_row(p);
    let g = carrier.a.content();
    if !(&carrier.b % &g).is_zero() {
        return empty();
    }
    let (base, step) = lattice_line(&carrier.a.primitive(), &(&carrier.b / &g));
    let params: Vec<Rat> = p.points().iter().map(|z| rat_param(&base, &step, z)).collect();
    match p.shape() {
        Shape::Segment => {
            let (lo, hi) = if params[0] <= params[1] {
                (&params[0], &params[1])
            } else {
                (&params[1], &params[0])
            };
            let k_lo = crate::geom::rat_ceil(lo);
            let k_hi = crate::geom::rat_floor(hi);
            if k_lo > k_hi {
                return empty();
            }
            let a = base.add(&step.scale(&k_lo));
            let b = base.add(&step.scale(&k_hi));
            let points = if a == b {
                vec![a.to_point()]
            } else {
                vec![a.to_point(), b.to_point()]
            };
            vrep_to_hrep(&Generators { points, rays: vec![], lines: vec![], whole_plane: false })
        }
        Shape::Ray => {
            let d = &p.rays()[0];
            let (k, ray) = if *d == step {
                (crate::geom::rat_ceil(&params[0]), step.clone())
            } else {
                assert_eq!(*d, step.neg(), "the ray runs along its carrier line");
                (crate::geom::rat_floor(&params[0]), step.neg())
            };
            let anchor = base.add(&step.scale(&k));
            vrep_to_hrep(&Generators {
                points: vec![anchor.to_point()],
                rays: vec![ray],
                lines: vec![],
                whole_plane: false,
            })
        }
        _ => unreachable!(),
    }
}

/// The integer hull of a polyhedron: the set of its integral points,
/// convexified, with the original recession directions.
pub fn polyhedron_hull(p: &Polyhedron) -> Polyhedron {
    match p.shape() {
        Shape::Empty | Shape::Plane => p.clone(),
        Shape::Point => {
            if p.points()[0].is_integral() {
                p.clone()
            } else {
                empty()
            }
        }
        Shape::Segment | Shape::Ray => segment_or_ray_hull(p),
        Shape::Line => {
            let carrier = &p.rows()[0];
            if (&carrier.b % &carrier.a.content()).is_zero() {
                p.clone()
            } else {
                empty()
            }
        }
        Shape::Half => canonicalize(&[chvatal_strengthen(&p.rows()[0])]),
        Shape::Strip => {
            let rows: Vec<HalfPlane> = p.rows().iter().map(chvatal_strengthen).collect();
            canonicalize(&rows)
        }
        Shape::Polygon | Shape::Unbounded => {
            let rows = p.rows();
            let mut collected: Vec<HalfPlane> = Vec::new();
            for i in 0..rows.len() {
                for j in (i + 1)..rows.len() {
                    let Some(cone) = TranslatedCone::from_pair(&rows[i], &rows[j]) else {
                        continue;
                    };
                    collected.extend(cone_hull(&cone).hull.rows().iter().cloned());
                }
            }
            canonicalize(&collected)
        }
    }
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

    #[test]
    fn chain_hull_of_the_divergence_cone() {
        let res = cone_hull(&cone((-5, 8, 0), (1, 0, 4)));
        assert_eq!(res.hull, poly(&[(-5, 8, 0), (-1, 2, 0), (1, 0, 4)]));
        assert_eq!(
            res.hull.points(),
            &[Point::from_ints(0, 0), Point::from_ints(4, 2)]
        );
        for (row, w) in res.hull.rows().iter().zip(&res.witnesses) {
            match w {
                FacetWitness::Edge { ends } => {
                    assert!(ends.iter().all(|z| row.is_tight(&z.to_point())));
                }
                FacetWitness::Ray { base, ray } => {
                    assert!(row.is_tight(&base.to_point()));
                    assert!(row.a.dot(ray).is_zero());
                }
            }
        }
    }

    #[test]
    fn chain_hull_of_a_half_integral_apex() {
        let res = cone_hull(&cone((-1, -1, -1), (-1, 1, 0)));
        assert_eq!(res.hull, poly(&[(-1, -1, -1), (-1, 0, -1), (-1, 1, 0)]));
        assert_eq!(
            res.hull.points(),
            &[Point::from_ints(1, 0), Point::from_ints(1, 1)]
        );
    }

    #[test]
    fn integral_apex_hull_is_the_cone() {
        let c = cone((-1, 0, 0), (1, 2, 2));
        let res = cone_hull(&c);
        assert!(res.hull.same_set(&c.to_polyhedron()));
    }

    #[test]
    fn hull_of_the_divergence_wedge() {
        let p = poly(&[(1, 0, 4), (-5, 8, 0), (0, -1, 0), (-1, 0, 0)]);
        let hull = polyhedron_hull(&p);
        assert_eq!(hull, poly(&[(0, -1, 0), (1, 0, 4), (-1, 2, 0), (-1, 0, 0)]));
        assert!(hull.contains(&Point::from_ints(2, 1)));
        assert!(!hull.points().contains(&Point::from_ints(2, 1)));
    }

    #[test]
    fn hull_of_a_lattice_free_triangle_is_empty() {
        let p = poly(&[(-4, 0, -1), (0, -4, -1), (4, 4, 3)]);
        assert_eq!(p.shape(), Shape::Polygon);
        assert!(polyhedron_hull(&p).is_empty());
    }

    #[test]
    fn integral_polytope_is_its_own_hull() {
        let p = poly(&[(0, -1, 0), (-1, 0, 0), (0, 1, 1), (1, 0, 1)]);
        assert_eq!(polyhedron_hull(&p), p);
    }

    #[test]
    fn degenerate_shapes() {
        let strip = poly(&[(2, 0, 1), (-2, 0, 0)]);
        assert_eq!(strip.shape(), Shape::Strip);
        assert_eq!(polyhedron_hull(&strip), poly(&[(1, 0, 0), (-1, 0, 0)]));

        let segment = poly(&[(0, 1, 0), (0, -1, 0), (-1, 0, 0), (2, 0, 7)]);
        let hull = polyhedron_hull(&segment);
        assert_eq!(hull, poly(&[(0, 1, 0), (0, -1, 0), (-1, 0, 0), (1, 0, 3)]));

        let sliver = poly(&[(2, -4, 1), (-2, 4, -1), (-1, 0, 0), (1, 0, 2)]);
        assert!(polyhedron_hull(&sliver).is_empty());

        let frac_point = poly(&[(-3, 0, -1), (0, -3, -1), (3, 3, 2)]);
        assert_eq!(frac_point.shape(), Shape::Point);
        assert!(polyhedron_hull(&frac_point).is_empty());

        let line = poly(&[(2, -4, 1), (-2, 4, -1)]);
        assert_eq!(line.shape(), Shape::Line);
        assert!(polyhedron_hull(&line).is_empty());

        let lattice_line = poly(&[(1, -2, 1), (-1, 2, -1)]);
        assert_eq!(polyhedron_hull(&lattice_line), lattice_line);

        let half = poly(&[(2, 0, 1)]);
        assert_eq!(polyhedron_hull(&half), poly(&[(1, 0, 0)]));
    }

    #[test]
    fn budget_comparison_is_exact() {
        assert!(within_log_budget(8, 8, &int(1)));
        assert!(!within_log_budget(9, 8, &int(1)));
        assert!(within_log_budget(16, 8, &int(2)));
        assert!(!within_log_budget(17, 8, &int(2)));
        assert!(within_log_budget(20, 8, &int(5)));
        assert!(!within_log_budget(27, 8, &int(5)));
    }

    #[cfg(feature = "oracle")]
    mod randomized {
        use super::*;
        use crate::oracle::{lattice_points, Window};
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        fn random_cone(rng: &mut ChaCha8Rng, norm: i64) -> Option<TranslatedCone> {
            let row = |rng: &mut ChaCha8Rng| loop {
                let a1 = rng.gen_range(-norm..=norm);
                let a2 = rng.gen_range(-norm..=norm);
                if a1 != 0 || a2 != 0 {
                    return HalfPlane::new(a1, a2, rng.gen_range(-60i64..=60));
                }
            };
            TranslatedCone::from_pair(&row(rng), &row(rng))
        }

        #[test]
        fn cone_hull_matches_lattice_enumeration() {
            let mut rng = ChaCha8Rng::seed_from_u64(23);
            let mut done = 0;
            while done < 100 {
                let Some(c) = random_cone(&mut rng, 25) else { continue };
                let p = c.to_polyhedron();
                let res = cone_hull(&c);
                let w = Window::around(&p);
                for z in lattice_points(&p, &w) {
                    assert!(
                        res.hull.contains(&z.to_point()),
                        "hull drops lattice point {z:?} of {c:?}"
                    );
                }
                for v in res.hull.points() {
                    assert!(v.is_integral(), "fractional hull vertex {v:?} for {c:?}");
                    assert!(p.contains(v), "hull vertex {v:?} outside {c:?}");
                }
                let mut hull_rays: Vec<IntVec> = res.hull.rays().to_vec();
                let mut cone_rays: Vec<IntVec> = p.rays().to_vec();
                hull_rays.sort();
                cone_rays.sort();
                assert_eq!(hull_rays, cone_rays, "recession mismatch for {c:?}");
                done += 1;
            }
        }

        #[test]
        fn polyhedron_hull_matches_lattice_enumeration() {
            let mut rng = ChaCha8Rng::seed_from_u64(29);
            let mut done = 0;
            while done < 80 {
                let rows: Vec<HalfPlane> = (0..rng.gen_range(3..=5))
                    .map(|_| loop {
                        let a1 = rng.gen_range(-10i64..=10);
                        let a2 = rng.gen_range(-10i64..=10);
                        if a1 != 0 || a2 != 0 {
                            break HalfPlane::new(a1, a2, rng.gen_range(-25i64..=25));
                        }
                    })
                    .collect();
                let p = canonicalize(&rows);
                if !p.is_pointed_full_dim() {
                    continue;
                }
                let hull = polyhedron_hull(&p);
                let w = Window::around(&p);
                let lattice = lattice_points(&p, &w);
                // The hull is pointed, so when it is nonempty it has a
                // vertex, and that vertex is an enumerated lattice point.
                assert_eq!(hull.is_empty(), lattice.is_empty());
                for z in &lattice {
                    assert!(hull.contains(&z.to_point()), "hull drops {z:?} of {p:?}");
                }
                for v in hull.points() {
                    assert!(v.is_integral() && p.contains(v), "bad hull vertex {v:?} of {p:?}");
                }
                // Both ends of a sliver recede the same way, so compare
                // direction sets rather than the stored ray lists.
                let mut hull_rays: Vec<IntVec> = hull.rays().to_vec();
                let mut p_rays: Vec<IntVec> = p.rays().to_vec();
                hull_rays.sort();
                hull_rays.dedup();
                p_rays.sort();
                p_rays.dedup();
                if !hull.is_empty() {
                    assert_eq!(hull_rays, p_rays, "recession mismatch for {p:?}");
                }
                done += 1;
            }
        }
    }
}
