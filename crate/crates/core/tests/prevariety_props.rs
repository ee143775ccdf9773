use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tropvar::arrangement::{build_arrangement, face_count as arrangement_faces};
use tropvar::corpus::{random_system, SystemShape};
use tropvar::exactgeom::linalg::dot_int;
use tropvar::exactgeom::Rational;
use tropvar::oracle;
use tropvar::prevariety::{
    cells_via_arrangement, cells_via_duality, dual_cell, dual_subdivision, face_count, tropical_faces,
};
use tropvar::tropical::TropSystem;

fn system(seed: u64) -> TropSystem {
    random_system(&mut StdRng::seed_from_u64(seed), &SystemShape::default())
}

/// Random points, half of them moved onto one or more tie hyperplanes so
/// that lower-dimensional cells get hit.
fn probes(s: &TropSystem, seed: u64, count: usize) -> Vec<Vec<Rational>> {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    let a = build_arrangement(s);
    (0..count)
        .map(|i| {
            let mut x: Vec<Rational> = (0..s.nvars())
                .map(|_| Rational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=6).into()))
                .collect();
            if i % 2 == 1 && !a.is_empty() {
                for _ in 0..rng.gen_range(1..=s.nvars()) {
                    let h = &a.hyperplanes()[rng.gen_range(0..a.len())];
                    let c = h.normal.iter().position(|v| *v != 0.into()).unwrap();
                    let gap = &h.offset - dot_int(&h.normal, &x);
                    x[c] += gap / Rational::from_integer(h.normal[c].clone());
                }
            }
            x
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn both_constructions_agree(seed in any::<u64>()) {
        let s = system(seed);
        let direct = cells_via_arrangement(&s);
        let dual = cells_via_duality(&s).unwrap();
        prop_assert_eq!(direct.closures(), dual.closures());
        for f in tropical_faces(&dual_subdivision(&s)) {
            prop_assert_eq!(f.dim + dual_cell(&s, &f).unwrap().dim, s.nvars());
        }
    }

    #[test]
    fn cells_partition_the_prevariety(seed in any::<u64>()) {
        let s = system(seed);
        let c = cells_via_arrangement(&s);
        for cell in &c.cells {
            prop_assert!(s.is_zero(&cell.witness).unwrap());
            prop_assert!(cell.closure.relint_contains(&cell.witness));
        }
        for x in probes(&s, seed, 200) {
            let hits = c.cells.iter().filter(|cell| cell.closure.relint_contains(&x)).count();
            prop_assert_eq!(hits, usize::from(s.is_zero(&x).unwrap()));
        }
    }

    #[test]
    fn closures_meet_in_closures(seed in any::<u64>()) {
        let s = system(seed);
        let c = cells_via_arrangement(&s);
        let all = c.closures();
        for a in &c.cells {
            for b in &c.cells {
                let meet = a.closure.intersect(&b.closure).unwrap().canonical();
                prop_assert!(meet.is_empty() || all.contains(&meet));
            }
        }
    }

    #[test]
    fn no_more_cells_than_arrangement_faces(seed in any::<u64>()) {
        let s = system(seed);
        prop_assert!(face_count(&cells_via_arrangement(&s)) <= arrangement_faces(&build_arrangement(&s)));
    }

    #[test]
    fn duplicate_polynomial_is_harmless(seed in any::<u64>()) {
        let s = system(seed);
        let t = s.with_poly(s.polys()[0].clone()).unwrap();
        prop_assert_eq!(cells_via_arrangement(&s).closures(), cells_via_arrangement(&t).closures());
    }

    #[test]
    fn subdivision_matches_lower_hull(seed in any::<u64>()) {
        let s = system(seed);
        prop_assume!(s.polys().iter().map(|p| p.len()).product::<usize>() <= 48);
        let ours: BTreeSet<_> = dual_subdivision(&s).iter().map(|f| f.summed_points(&s)).collect();
        prop_assert_eq!(ours, oracle::bottom_faces(&s));
    }
}
