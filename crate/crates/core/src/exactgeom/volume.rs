//! Exact r-dimensional Euclidean volume of rational polytopes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hull::{convex_hull, VPolytope};
use super::linalg::{determinant, dot, rref, sqrt_rational, squarefree_split, sub};
use super::{fmt_rational, Rational};
use crate::error::{Error, Result};

/// The nonnegative real `coeff * sqrt(radicand)` with a squarefree radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadVal {
    coeff: Rational,
    radicand: BigInt,
}

impl RadVal {
    /// Normalizes the radicand to be squarefree.
    ///
    /// Panics on a negative coefficient or a non-positive radicand.
    pub fn new(coeff: Rational, radicand: BigInt) -> Self {
        assert!(!coeff.is_negative(), "RadVal coefficient must be nonnegative");
        assert!(radicand.is_positive(), "RadVal radicand must be positive");
        if coeff.is_zero() {
            return RadVal::zero();
        }
        let (outer, inner) = squarefree_split(&radicand);
        RadVal {
            coeff: coeff * Rational::from_integer(outer),
            radicand: inner,
        }
    }

    pub fn zero() -> Self {
        RadVal {
            coeff: Rational::zero(),
            radicand: BigInt::one(),
        }
    }

    pub fn from_rational(q: Rational) -> Self {
        RadVal::new(q, BigInt::one())
    }

    /// Square root of a nonnegative rational.
    pub fn sqrt_of(g: &Rational) -> Self {
        if g.is_zero() {
            return RadVal::zero();
        }
        let (c, s) = sqrt_rational(g);
        RadVal { coeff: c, radicand: s }
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Multiplication by a nonnegative rational.
    pub fn scale(&self, q: &Rational) -> Self {
        RadVal::new(&self.coeff * q, self.radicand.clone())
    }

    /// The exact square `coeff^2 * radicand`.
    pub fn square(&self) -> Rational {
        &self.coeff * &self.coeff * Rational::from_integer(self.radicand.clone())
    }

    pub fn checked_add(&self, other: &RadVal) -> Result<RadVal> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.radicand != other.radicand {
            return Err(Error::RadicandMismatch(
                self.radicand.to_string(),
                other.radicand.to_string(),
            ));
        }
        Ok(RadVal::new(&self.coeff + &other.coeff, self.radicand.clone()))
    }

    /// Exact comparison with a rational, on squares.
    pub fn cmp_rational(&self, t: &Rational) -> Ordering {
        if t.is_negative() {
            return Ordering::Greater;
        }
        self.square().cmp(&(t * t))
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl PartialOrd for RadVal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RadVal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.square().cmp(&other.square())
    }
}

impl fmt::Display for RadVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", fmt_rational(&self.coeff))
        } else {
            write!(f, "{}*sqrt({})", fmt_rational(&self.coeff), self.radicand)
        }
    }
}

/// Pulling triangulation of the hull of `points`: every simplex has the
/// affine dimension of the hull and uses only hull vertices.
pub fn triangulate_points(points: &[Vec<Rational>]) -> Result<Vec<Vec<Vec<Rational>>>> {
    let hull = convex_hull(points)?;
    let verts = hull.polytope.vertices();
    if hull.affine_dim == 0 {
        return Ok(vec![vec![verts[0].clone()]]);
    }
    let apex = &verts[0];
    let mut out = Vec::new();
    for facet in hull.facets.iter().filter(|f| !f.vertices.contains(&0)) {
        let fpts: Vec<Vec<Rational>> = facet.vertices.iter().map(|&i| verts[i].clone()).collect();
        for mut simplex in triangulate_points(&fpts)? {
            simplex.insert(0, apex.clone());
            out.push(simplex);
        }
    }
    Ok(out)
}

/// Exact Euclidean volume of a bounded polytope in its own affine hull.
///
/// Coordinates are taken along the pivot columns of the direction space; the
/// local volume is a sum of simplex determinants and the metric correction is
/// the square root of the Gram determinant of the parametrization.
pub fn volume_r(p: &VPolytope) -> Result<RadVal> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    let verts = p.vertices();
    let n = p.dim();
    let base = &verts[0];
    let mut dirs: Vec<Vec<Rational>> = verts[1..].iter().map(|v| sub(v, base)).collect();
    if dirs.is_empty() {
        return Ok(RadVal::from_rational(Rational::one()));
    }
    let pivots = rref(&mut dirs, n);
    let r = pivots.len();
    if r == 0 {
        return Ok(RadVal::from_rational(Rational::one()));
    }
    let gram: Vec<Vec<Rational>> = dirs
        .iter()
        .map(|a| dirs.iter().map(|b| dot(a, b)).collect())
        .collect();
    let metric = RadVal::sqrt_of(&determinant(&gram));

    let local = |v: &Vec<Rational>| -> Vec<Rational> { pivots.iter().map(|&c| v[c].clone()).collect() };
    let mut total = Rational::zero();
    for simplex in triangulate_points(verts)? {
        let o = local(&simplex[0]);
        let m: Vec<Vec<Rational>> = simplex[1..].iter().map(|v| sub(&local(v), &o)).collect();
        total += determinant(&m).abs();
    }
    let fact: BigInt = (1..=r).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    Ok(metric.scale(&(total / Rational::from_integer(fact))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::linalg::rat;

    fn pt(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn poly(pts: &[&[i64]]) -> VPolytope {
        let pts: Vec<Vec<Rational>> = pts.iter().map(|p| pt(p)).collect();
        VPolytope::from_points(pts[0].len(), &pts).unwrap()
    }

    #[test]
    fn volume_examples() {
        let tri = volume_r(&poly(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(tri, RadVal::from_rational(Rational::new(1.into(), 2.into())));
        let seg = volume_r(&poly(&[&[0, 0], &[1, 1]])).unwrap();
        assert_eq!(seg.coeff(), &rat(1));
        assert_eq!(seg.radicand(), &BigInt::from(2));
        let sq = volume_r(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(sq, RadVal::from_rational(rat(1)));
    }

    #[test]
    fn tilted_triangle_in_space() {
        // conv{e1, e2, e3}: area sqrt(3)/2
        let v = volume_r(&poly(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(v.coeff(), &Rational::new(1.into(), 2.into()));
        assert_eq!(v.radicand(), &BigInt::from(3));
    }

    #[test]
    fn comparisons_on_squares() {
        let v = RadVal::new(rat(1), BigInt::from(2));
        assert_eq!(v.cmp_rational(&rat(1)), Ordering::Greater);
        assert_eq!(v.cmp_rational(&Rational::new(3.into(), 2.into())), Ordering::Less);
        assert_eq!(RadVal::new(rat(1), BigInt::from(8)), RadVal::new(rat(2), BigInt::from(2)));
        assert!(v.checked_add(&RadVal::from_rational(rat(1))).is_err());
    }

    #[test]
    fn unbounded_rejected() {
        let p = VPolytope::with_rays(1, &[pt(&[0])], &[pt(&[1])]).unwrap();
        assert!(matches!(volume_r(&p), Err(Error::Unbounded)));
    }
}
