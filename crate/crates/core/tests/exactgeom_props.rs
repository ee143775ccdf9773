use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use tropvar::exactgeom::linalg::{determinant, rat, sub};
use tropvar::exactgeom::{convex_hull, minkowski_sum, volume_r, Constraint, HPolyhedron, RadVal, Rational, VPolytope};

fn pts(raw: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    raw.iter().map(|p| p.iter().map(|&x| rat(x)).collect()).collect()
}

fn points(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 1..=max).prop_map(|v| pts(&v))
}

fn cross2(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Vertices of a convex polygon in counterclockwise order around the first.
fn ccw(verts: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let o = verts[0].clone();
    let mut rest: Vec<Vec<Rational>> = verts[1..].to_vec();
    rest.sort_by(|a, b| {
        let c = cross2(&o, a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    let mut out = vec![o];
    out.extend(rest);
    out
}

/// Full-dimensional volume by fans from the first vertex: in the plane over
/// the ordered boundary, in space over fan-triangulated facets.
fn fan_volume(verts: &[Vec<Rational>], dim: usize) -> Rational {
    match dim {
        1 => (&verts[verts.len() - 1][0] - &verts[0][0]).abs(),
        2 => {
            let p = ccw(verts);
            let mut twice = Rational::zero();
            for i in 1..p.len() - 1 {
                twice += cross2(&p[0], &p[i], &p[i + 1]);
            }
            twice.abs() / rat(2)
        }
        3 => {
            let hull = convex_hull(verts).unwrap();
            let apex = &verts[0];
            let mut six = Rational::zero();
            for f in &hull.facets {
                let fv: Vec<Vec<Rational>> = f.vertices.iter().map(|&i| hull.polytope.vertices()[i].clone()).collect();
                if fv.contains(apex) {
                    continue;
                }
                // order the facet polygon in its plane: drop the coordinate
                // where the normal is largest
                let drop = (0..3).max_by_key(|&c| f.inequality.normal[c].abs()).unwrap();
                let keep: Vec<usize> = (0..3).filter(|&c| c != drop).collect();
                let flat: Vec<Vec<Rational>> = fv.iter().map(|v| keep.iter().map(|&c| v[c].clone()).collect()).collect();
                let order = ccw(&flat);
                let lift = |q: &Vec<Rational>| fv[flat.iter().position(|x| x == q).unwrap()].clone();
                for i in 1..order.len() - 1 {
                    let tri = [lift(&order[0]), lift(&order[i]), lift(&order[i + 1])];
                    let m: Vec<Vec<Rational>> = tri.iter().map(|t| sub(t, apex)).collect();
                    six += determinant(&m).abs();
                }
            }
            six / rat(6)
        }
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hull_is_idempotent(p in points(3, 7)) {
        let h = convex_hull(&p).unwrap();
        let again = convex_hull(h.polytope.vertices()).unwrap();
        prop_assert_eq!(h, again);
    }

    #[test]
    fn minkowski_commutes_and_associates(a in points(2, 4), b in points(2, 4), c in points(2, 3)) {
        let (a, b, c) = (
            VPolytope::from_points(2, &a).unwrap(),
            VPolytope::from_points(2, &b).unwrap(),
            VPolytope::from_points(2, &c).unwrap(),
        );
        let ab = minkowski_sum(&a, &b).unwrap();
        prop_assert_eq!(&ab, &minkowski_sum(&b, &a).unwrap());
        let left = minkowski_sum(&ab, &c).unwrap();
        let right = minkowski_sum(&a, &minkowski_sum(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sum_with_itself_is_dilation(a in points(3, 5)) {
        let p = VPolytope::from_points(3, &a).unwrap();
        prop_assert_eq!(minkowski_sum(&p, &p).unwrap(), p.scaled(&rat(2)));
    }

    #[test]
    fn volume_matches_fan_oracle(dim in 1usize..=3, raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=6)) {
        let p: Vec<Vec<Rational>> = pts(&raw).into_iter().map(|v| v[..dim].to_vec()).collect();
        let poly = VPolytope::from_points(dim, &p).unwrap();
        let v = volume_r(&poly).unwrap();
        if poly.affine_dim() == dim {
            prop_assert!(v.is_rational());
            prop_assert_eq!(v, RadVal::from_rational(fan_volume(poly.vertices(), dim)));
        }
    }

    #[test]
    fn tilted_polygon_picks_up_gram_factor(raw in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 3..=6)) {
        let flat = pts(&raw);
        let poly = VPolytope::from_points(2, &flat).unwrap();
        prop_assume!(poly.affine_dim() == 2);
        // (x, y) -> (x, y, x + y): Gram determinant 3
        let up: Vec<Vec<Rational>> = flat.iter().map(|p| vec![p[0].clone(), p[1].clone(), &p[0] + &p[1]]).collect();
        let v = volume_r(&VPolytope::from_points(3, &up).unwrap()).unwrap();
        let area = fan_volume(poly.vertices(), 2);
        prop_assert_eq!(v, RadVal::new(area, BigInt::from(3)));
    }

    #[test]
    fn volume_scales_by_power(a in points(3, 6), num in 1i64..=4, den in 1i64..=3) {
        let p = VPolytope::from_points(3, &a).unwrap();
        let r = p.affine_dim();
        let lambda = Rational::new(num.into(), den.into());
        let scaled = volume_r(&p.scaled(&lambda)).unwrap();
        let factor = num_traits::pow(lambda, r);
        prop_assert_eq!(scaled, volume_r(&p).unwrap().scale(&factor));
    }

    #[test]
    fn lp_witness_satisfies_everything(
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), -4i64..=4, 0u8..3), 0..8)
    ) {
        let mut p = HPolyhedron::whole_space(3);
        for (normal, off, kind) in &rows {
            if normal.iter().all(|&x| x == 0) { continue; }
            let c = Constraint::from_ints(normal, rat(*off));
            if *kind == 0 { p.add_equality(Constraint::equation(&c.normal_rational(), c.offset)) } else { p.add_inequality(c) }
        }
        match tropvar::exactgeom::lp_feasible(&p) {
            tropvar::exactgeom::Feasibility::Feasible(x) => prop_assert!(p.contains(&x)),
            tropvar::exactgeom::Feasibility::Infeasible(cert) => prop_assert!(cert.verify(&p.to_system(false))),
        }
    }

    #[test]
    fn canonical_form_is_a_fixpoint_and_preserves_points(
        rows in prop::collection::vec((prop::collection::vec(-2i64..=2, 2), -3i64..=3), 0..6),
        probe in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 10)
    ) {
        let mut p = HPolyhedron::whole_space(2);
        for (normal, off) in &rows {
            p.add_inequality(Constraint::from_ints(normal, rat(*off)));
        }
        let c = p.canonical();
        prop_assert_eq!(&c.canonical(), &c);
        for x in pts(&probe) {
            prop_assert_eq!(p.contains(&x), c.contains(&x));
        }
    }
}
