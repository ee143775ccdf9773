//! Seeded random systems and polyhedral complexes for testing and
//! benchmarking.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::exactgeom::linalg::{nullspace, rat};
use crate::exactgeom::{Constraint, HPolyhedron, Rational};
use crate::realize::ComplexDescription;
use crate::tropical::{Monomial, TropPoly, TropSystem};

/// Size limits for random systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SystemShape {
    pub max_vars: usize,
    pub max_polys: usize,
    pub max_monomials: usize,
    pub max_exponent: i64,
    /// Bound on numerator and denominator of constants.
    pub max_constant: i64,
}

impl Default for SystemShape {
    fn default() -> Self {
        SystemShape {
            max_vars: 3,
            max_polys: 3,
            max_monomials: 4,
            max_exponent: 3,
            max_constant: 7,
        }
    }
}

fn random_rational(rng: &mut StdRng, bound: i64) -> Rational {
    let p = rng.gen_range(-bound..=bound);
    let q = rng.gen_range(1..=bound.max(1));
    Rational::new(p.into(), q.into())
}

pub fn random_system(rng: &mut StdRng, shape: &SystemShape) -> TropSystem {
    let n = rng.gen_range(1..=shape.max_vars);
    let k = rng.gen_range(1..=shape.max_polys);
    let polys = (0..k)
        .map(|_| {
            let m = rng.gen_range(1..=shape.max_monomials);
            let monos = (0..m)
                .map(|_| {
                    let a = (0..n).map(|_| rng.gen_range(0..=shape.max_exponent)).collect();
                    Monomial::new(a, random_rational(rng, shape.max_constant))
                })
                .collect();
            TropPoly::new(monos, false).expect("nonnegative exponents")
        })
        .collect();
    TropSystem::new(n, polys).expect("k >= 1")
}

/// `count` systems from a fixed seed.
pub fn system_corpus(seed: u64, count: usize, shape: &SystemShape) -> Vec<TropSystem> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count).map(|_| random_system(&mut rng, shape)).collect()
}

fn random_normal(rng: &mut StdRng, n: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// A nonempty polyhedron of positive codimension: one or two equations and
/// up to two inequalities, small integer data.
pub fn random_polyhedron(rng: &mut StdRng, n: usize) -> HPolyhedron {
    loop {
        let neq = rng.gen_range(1..=n.min(2));
        let eqs = (0..neq)
            .map(|_| Constraint::from_ints(&random_normal(rng, n), rat(rng.gen_range(-2..=2))))
            .map(|c| Constraint::equation(&c.normal_rational(), c.offset))
            .collect();
        let nineq = rng.gen_range(0..=2);
        let ineqs = (0..nineq)
            .map(|_| Constraint::from_ints(&random_normal(rng, n), rat(rng.gen_range(-2..=2))))
            .collect();
        let p = HPolyhedron::new(n, eqs, ineqs).expect("dimensions agree");
        if !p.is_empty() && p.affine_dim() < n as isize {
            return p;
        }
    }
}

pub fn random_complex(rng: &mut StdRng, max_vars: usize, max_polyhedra: usize) -> ComplexDescription {
    let n = rng.gen_range(1..=max_vars);
    let count = rng.gen_range(1..=max_polyhedra);
    let polyhedra = (0..count).map(|_| random_polyhedron(rng, n)).collect();
    ComplexDescription::new(n, polyhedra).expect("dimensions agree")
}

pub fn complex_corpus(seed: u64, count: usize, max_vars: usize, max_polyhedra: usize) -> Vec<ComplexDescription> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_complex(&mut rng, max_vars, max_polyhedra))
        .collect()
}

fn coordinate(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-12i64..=12).into(), rng.gen_range(1i64..=4).into())
}

/// Test points in and around the members of `c`: relative interior points,
/// vertices, vertex midpoints and barycenters, random points of each affine
/// hull, the same pushed off the hull, and random points of space, at least
/// `count` in total.
pub fn membership_probes(c: &ComplexDescription, rng: &mut StdRng, count: usize) -> Vec<Vec<Rational>> {
    let n = c.n;
    let mut out = Vec::new();
    let per_member = count / (2 * c.polyhedra.len().max(1));
    for p in &c.polyhedra {
        let canon = p.canonical();
        let Some(base) = canon.relint_point() else { continue };
        out.push(base.clone());
        if canon.is_bounded() {
            let vs = canon.vertices().expect("bounded polyhedra have vertices");
            for (i, a) in vs.iter().enumerate() {
                out.push(a.clone());
                for b in &vs[i + 1..] {
                    out.push(a.iter().zip(b).map(|(x, y)| (x + y) / rat(2)).collect());
                }
            }
            let k = rat(vs.len() as i64);
            out.push((0..n).map(|j| vs.iter().map(|v| &v[j]).sum::<Rational>() / &k).collect());
        }
        let rows: Vec<Vec<Rational>> = canon.equalities().iter().map(|e| e.normal_rational()).collect();
        let dirs = nullspace(&rows, n);
        for _ in 0..per_member {
            let mut x = base.clone();
            for d in &dirs {
                let t = coordinate(rng);
                x.iter_mut().zip(d).for_each(|(xi, di)| *xi += &t * di);
            }
            out.push(x.clone());
            let j = rng.gen_range(0..n);
            x[j] += Rational::new(1.into(), rng.gen_range(1i64..=9).into());
            out.push(x);
        }
    }
    while out.len() < count {
        out.push((0..n).map(|_| coordinate(rng)).collect());
    }
    out
}
