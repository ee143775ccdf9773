//! Rational polyhedra of positive codimension, and finite unions of them, as
//! tropical prevarieties.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::exactgeom::linalg::rat;
use crate::exactgeom::{Constraint, HPolyhedron, Rational};
use crate::tropical::{Monomial, TropPoly, TropSystem};
use crate::{Error, Result};

/// The most polyhedra [`complex_prevariety`] accepts; the polynomial count
/// grows like the product of the members' counts.
pub const MAX_POLYHEDRA: usize = 6;

/// `⟨coeffs, x⟩ + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub coeffs: Vec<i64>,
    pub constant: Rational,
}

impl AffineForm {
    pub fn new(coeffs: Vec<i64>, constant: Rational) -> Self {
        AffineForm { coeffs, constant }
    }

    /// `⟨normal, x⟩ - offset`, the form that is `>= 0` (or `= 0`) exactly
    /// where the constraint holds.
    pub fn from_constraint(c: &Constraint) -> Result<Self> {
        let coeffs = c
            .normal
            .iter()
            .map(|v| v.to_i64().ok_or_else(|| Error::CoefficientOverflow(v.to_string())))
            .collect::<Result<Vec<i64>>>()?;
        Ok(AffineForm {
            coeffs,
            constant: -c.offset.clone(),
        })
    }

    fn monomial(&self) -> Monomial {
        Monomial::new(self.coeffs.clone(), self.constant.clone())
    }
}

fn zero_monomial(n: usize) -> Monomial {
    Monomial::new(vec![0; n], Rational::zero())
}

fn normalized(monos: Vec<Monomial>) -> Result<TropPoly> {
    Ok(TropPoly::new(monos, true)?.make_coeffs_nonneg())
}

/// `{M_1 = ... = M_s = 0, L >= 0}` as the zero set of `min{M_i, 0}` and
/// `min{0, M_1, L}`, each shifted to nonnegative exponents.
pub fn halfspace_prevariety(equations: &[AffineForm], l: &AffineForm) -> Result<TropSystem> {
    let Some(m1) = equations.first() else {
        return Err(Error::NoEquations);
    };
    let n = l.coeffs.len();
    if let Some(bad) = equations.iter().find(|m| m.coeffs.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.coeffs.len(),
        });
    }
    let mut polys = equations
        .iter()
        .map(|m| normalized(vec![m.monomial(), zero_monomial(n)]))
        .collect::<Result<Vec<_>>>()?;
    polys.push(normalized(vec![zero_monomial(n), m1.monomial(), l.monomial()])?);
    TropSystem::new(n, polys)
}

fn empty_prevariety(n: usize) -> TropSystem {
    TropSystem::new(n, vec![TropPoly::new(vec![zero_monomial(n)], false).expect("one monomial")])
        .expect("one polynomial")
}

/// One half-space system per facet inequality, concatenated; only the
/// equations when there are no inequalities. The empty set maps to `{min(0)}`.
pub fn polyhedron_prevariety(p: &HPolyhedron) -> Result<TropSystem> {
    let n = p.dim();
    let c = p.canonical();
    if c.is_empty() {
        return Ok(empty_prevariety(n));
    }
    if c.equalities().is_empty() {
        return Err(Error::FullDimensional);
    }
    let eqs = c
        .equalities()
        .iter()
        .map(AffineForm::from_constraint)
        .collect::<Result<Vec<_>>>()?;
    if c.inequalities().is_empty() {
        let polys = eqs
            .iter()
            .map(|m| normalized(vec![m.monomial(), zero_monomial(n)]))
            .collect::<Result<Vec<_>>>()?;
        return TropSystem::new(n, polys);
    }
    let mut polys = Vec::new();
    for ineq in c.inequalities() {
        let l = AffineForm::from_constraint(ineq)?;
        polys.extend(halfspace_prevariety(&eqs, &l)?.polys().iter().cloned());
    }
    TropSystem::new(n, polys)
}

/// All pairwise tropical products: the zero set is the union.
pub fn union_prevarieties(a: &TropSystem, b: &TropSystem) -> Result<TropSystem> {
    if a.nvars() != b.nvars() {
        return Err(Error::DimensionMismatch {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    let mut polys = Vec::with_capacity(a.k() * b.k());
    for f in a.polys() {
        for g in b.polys() {
            polys.push(f.trop_mul(g)?);
        }
    }
    TropSystem::new(a.nvars(), polys)
}

/// Polyhedra of positive codimension in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDescription {
    pub n: usize,
    pub polyhedra: Vec<HPolyhedron>,
}

impl ComplexDescription {
    pub fn new(n: usize, polyhedra: Vec<HPolyhedron>) -> Result<Self> {
        if let Some(p) = polyhedra.iter().find(|p| p.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.dim(),
            });
        }
        Ok(ComplexDescription { n, polyhedra })
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.polyhedra.iter().any(|p| p.contains(x))
    }
}

pub fn complex_prevariety(c: &ComplexDescription) -> Result<TropSystem> {
    if c.polyhedra.len() > MAX_POLYHEDRA {
        return Err(Error::TooManyPolyhedra {
            limit: MAX_POLYHEDRA,
            got: c.polyhedra.len(),
        });
    }
    let mut parts = c.polyhedra.iter().map(polyhedron_prevariety);
    let Some(first) = parts.next() else {
        return Ok(empty_prevariety(c.n));
    };
    parts.try_fold(first?, |acc, next| union_prevarieties(&acc, &next?))
}

/// `n` univariate polynomials `min_j (j x_i + (m - j)^2)`, `0 <= j <= m`,
/// each with zeros exactly at `1, 3, ..., 2m - 1`; the prevariety is the
/// `m^n` grid of isolated points.
pub fn gen_grid_example(n: usize, m: usize) -> TropSystem {
    let polys = (0..n)
        .map(|i| {
            let monos = (0..=m)
                .map(|j| {
                    let mut a = vec![0i64; n];
                    a[i] = j as i64;
                    let c = BigInt::from(m - j);
                    Monomial::new(a, Rational::from_integer(&c * &c))
                })
                .collect();
            TropPoly::new(monos, false).expect("valid grid polynomial")
        })
        .collect();
    TropSystem::new(n, polys).expect("n >= 1")
}

/// The integer points `2j + 1` where a grid polynomial vanishes.
pub fn grid_zeros(m: usize) -> Vec<Rational> {
    (0..m).map(|j| rat(2 * j as i64 + 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::linalg::rat;

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn form(c: &[i64], k: i64) -> AffineForm {
        AffineForm::new(c.to_vec(), rat(k))
    }

    #[test]
    fn halfspace_membership() {
        let s = halfspace_prevariety(&[form(&[0, 1], 0)], &form(&[1, 0], 0)).unwrap();
        assert_eq!(s.k(), 2);
        assert!(s.is_zero(&pt(&[2, 0])).unwrap());
        assert!(!s.is_zero(&pt(&[-1, 0])).unwrap());
        assert!(!s.is_zero(&pt(&[0, 1])).unwrap());

        let diag = halfspace_prevariety(&[form(&[1, -1], 0)], &form(&[1, 1], 0)).unwrap();
        assert!(diag.is_zero(&pt(&[3, 3])).unwrap());
        assert!(diag.is_zero(&pt(&[0, 0])).unwrap());
        assert!(!diag.is_zero(&pt(&[-3, -3])).unwrap());
        assert!(!diag.is_zero(&pt(&[1, 2])).unwrap());

        let origin = halfspace_prevariety(&[form(&[1], 0)], &form(&[0], 0)).unwrap();
        assert!(origin.is_zero(&pt(&[0])).unwrap());
        assert!(!origin.is_zero(&pt(&[1])).unwrap());

        assert!(matches!(halfspace_prevariety(&[], &form(&[1], 0)), Err(Error::NoEquations)));
    }

    #[test]
    fn polyhedra() {
        let seg = HPolyhedron::new(
            2,
            vec![Constraint::from_ints(&[0, 1], rat(0))],
            vec![Constraint::from_ints(&[1, 0], rat(0)), Constraint::from_ints(&[-1, 0], rat(-1))],
        )
        .unwrap();
        let s = polyhedron_prevariety(&seg).unwrap();
        assert_eq!(s.k(), 4);
        assert!(s.is_zero(&[Rational::new(1.into(), 2.into()), rat(0)]).unwrap());
        assert!(!s.is_zero(&pt(&[2, 0])).unwrap());

        let line = HPolyhedron::new(2, vec![Constraint::from_ints(&[1, 0], rat(0))], vec![]).unwrap();
        let s = polyhedron_prevariety(&line).unwrap();
        assert_eq!(s.k(), 1);
        assert_eq!(s.polys()[0].to_string(), "min(x1, 0)");

        let square = HPolyhedron::new(2, vec![], vec![Constraint::from_ints(&[1, 0], rat(0))]).unwrap();
        assert!(matches!(polyhedron_prevariety(&square), Err(Error::FullDimensional)));
    }

    #[test]
    fn union_is_the_cross() {
        let x = TropSystem::new(2, vec![crate::tropical::poly(&[(&[1, 0], 0), (&[0, 0], 0)])]).unwrap();
        let y = TropSystem::new(2, vec![crate::tropical::poly(&[(&[0, 1], 0), (&[0, 0], 0)])]).unwrap();
        let u = union_prevarieties(&x, &y).unwrap();
        assert_eq!(u.k(), 1);
        assert!(u.is_zero(&pt(&[0, 5])).unwrap());
        assert!(u.is_zero(&pt(&[7, 0])).unwrap());
        assert!(!u.is_zero(&pt(&[1, 1])).unwrap());
    }

    #[test]
    fn grid_zeros_are_breakpoints() {
        let s = gen_grid_example(1, 2);
        for z in grid_zeros(2) {
            assert!(s.is_zero(&[z]).unwrap());
        }
        for x in [0, 2, 4] {
            assert!(!s.is_zero(&pt(&[x])).unwrap());
        }
        let one = gen_grid_example(1, 1);
        assert!(one.is_zero(&pt(&[1])).unwrap());
    }

    #[test]
    fn too_many_polyhedra() {
        let p = HPolyhedron::new(1, vec![Constraint::from_ints(&[1], rat(0))], vec![]).unwrap();
        let c = ComplexDescription::new(1, vec![p; 7]).unwrap();
        assert!(matches!(complex_prevariety(&c), Err(Error::TooManyPolyhedra { .. })));
    }
}
