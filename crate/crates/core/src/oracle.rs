//! Brute-force reference computations, kept deliberately naive and
//! independent of the main code paths. Used by the test suites.

use std::collections::BTreeSet;

use crate::arrangement::{Arrangement, Sign};
use crate::exactgeom::linalg::{rank, rat};
use crate::exactgeom::{convex_hull, Feasibility, Rational};
use crate::topology::{BettiVector, SimplicialComplex};
use crate::tropical::TropSystem;

/// All sign vectors in `{-,0,+}^ℓ` whose open face is nonempty. Every
/// verdict is certified: witnesses are substituted back, infeasibility comes
/// with a checked Farkas certificate. Exponential; keep `ℓ` small.
pub fn arrangement_faces(a: &Arrangement) -> Vec<Vec<Sign>> {
    let ell = a.len();
    let mut out = Vec::new();
    let mut signs = vec![Sign::Neg; ell];
    loop {
        let sys = a.face_system(&signs);
        match sys.solve() {
            Feasibility::Feasible(x) => {
                assert!(sys.is_satisfied_by(&x), "witness fails substitution");
                assert_eq!(a.sign_vector(&x), signs);
                out.push(signs.clone());
            }
            Feasibility::Infeasible(cert) => assert!(cert.verify(&sys), "bad certificate"),
        }
        // next vector in lexicographic order
        let mut i = ell;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            match signs[i] {
                Sign::Neg => {
                    signs[i] = Sign::Zero;
                    break;
                }
                Sign::Zero => {
                    signs[i] = Sign::Pos;
                    break;
                }
                Sign::Pos => signs[i] = Sign::Neg,
            }
        }
        signs[i + 1..].iter_mut().for_each(|s| *s = Sign::Neg);
    }
}

/// Every nonempty face of `conv(points)`, as the set of input points lying
/// on it, found by recursing into facets.
pub fn polytope_faces(points: &[Vec<Rational>]) -> BTreeSet<BTreeSet<Vec<Rational>>> {
    let mut out = BTreeSet::new();
    let all: BTreeSet<Vec<Rational>> = points.iter().cloned().collect();
    collect_faces(all, &mut out);
    out
}

fn collect_faces(pts: BTreeSet<Vec<Rational>>, out: &mut BTreeSet<BTreeSet<Vec<Rational>>>) {
    if !out.insert(pts.clone()) {
        return;
    }
    let list: Vec<Vec<Rational>> = pts.iter().cloned().collect();
    let hull = convex_hull(&list).expect("nonempty");
    if hull.affine_dim == 0 {
        return;
    }
    for facet in &hull.facets {
        let on: BTreeSet<Vec<Rational>> = list
            .iter()
            .filter(|p| {
                facet.inequality.slack(p) == rat(0)
                    && hull.equalities.iter().all(|e| e.slack(p) == rat(0))
            })
            .cloned()
            .collect();
        collect_faces(on, out);
    }
}

/// Faces of the bottom of `Q_1 + ... + Q_k`, each given by the summed lifted
/// points on it. A face of `conv(S ∪ (S + e))`, `S` the summed lifted
/// points, is on the bottom exactly when it avoids `S + e` (a point of `S`
/// that is also in `S + e` is never minimal for an upward-positive slope).
pub fn bottom_faces(s: &TropSystem) -> BTreeSet<BTreeSet<Vec<Rational>>> {
    let n = s.nvars();
    let mut sums: BTreeSet<Vec<Rational>> = BTreeSet::new();
    sums.insert(vec![rat(0); n + 1]);
    for f in s.polys() {
        let mut next = BTreeSet::new();
        for p in &sums {
            for m in f.monomials() {
                next.insert(p.iter().zip(m.lifted()).map(|(a, b)| a + b).collect());
            }
        }
        sums = next;
    }
    let lifted: BTreeSet<Vec<Rational>> = sums
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q[n] += rat(1);
            q
        })
        .collect();
    let mut pts: Vec<Vec<Rational>> = sums.iter().cloned().collect();
    pts.extend(lifted.iter().cloned());
    polytope_faces(&pts)
        .into_iter()
        .filter(|face| face.iter().all(|p| !lifted.contains(p)))
        .collect()
}

/// Betti numbers from dense boundary matrices and plain row reduction.
pub fn dense_betti(sc: &SimplicialComplex) -> BettiVector {
    let simplices: Vec<&Vec<usize>> = sc.simplices.iter().collect();
    let top = simplices.iter().map(|s| s.len()).max().unwrap_or(0);
    if top == 0 {
        return BettiVector::default();
    }
    let of_dim = |p: usize| -> Vec<&Vec<usize>> { simplices.iter().copied().filter(|s| s.len() == p + 1).collect() };
    let boundary_rank = |p: usize| -> usize {
        if p == 0 || p >= top {
            return 0;
        }
        let rows = of_dim(p);
        let cols = of_dim(p - 1);
        let m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|s| {
                cols.iter()
                    .map(|f| match (0..s.len()).find(|&i| {
                        let mut t = (*s).clone();
                        t.remove(i);
                        &t == *f
                    }) {
                        Some(i) if i % 2 == 0 => rat(1),
                        Some(_) => rat(-1),
                        None => rat(0),
                    })
                    .collect()
            })
            .collect();
        rank(&m)
    };
    BettiVector::new(
        (0..top)
            .map(|p| of_dim(p).len() - boundary_rank(p) - boundary_rank(p + 1))
            .collect(),
    )
}
