//! Upper bounds on the number of faces of a prevariety — by the volume of
//! the Minkowski sum of Newton polytopes, by degree, and by sparsity — and
//! their verification against computed values.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactgeom::{minkowski_sum, volume_r, RadVal, Rational};
use crate::prevariety::{cells_via_arrangement, face_count};
use crate::topology::{betti_of_prevariety, BettiVector};
use crate::tropical::TropSystem;
use crate::Result;

fn factorial(r: usize) -> BigInt {
    (1..=r).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseBound {
    /// Affine dimension of `P_1 + ... + P_k`.
    pub r: usize,
    pub volume: RadVal,
    /// `(2^{r+1} - 1) r! Vol_r`; `None` when `r = 0`, where the volume is
    /// not positive in any meaningful sense and the bound does not apply.
    pub bound: Option<RadVal>,
}

pub fn dense_volume_bound(s: &TropSystem) -> Result<DenseBound> {
    let mut polys = s.polys().iter();
    let first = polys.next().expect("systems are nonempty").newton_polytope();
    let sum = polys.try_fold(first, |acc, f| minkowski_sum(&acc, &f.newton_polytope()))?;
    let r = sum.affine_dim();
    let volume = volume_r(&sum)?;
    let bound = (r > 0).then(|| {
        let c = (pow2(r + 1) - 1u32) * factorial(r);
        volume.scale(&Rational::from_integer(c))
    });
    Ok(DenseBound { r, volume, bound })
}

/// `(2^{n+1} - 1)(kd)^n`, with `d` the largest degree.
pub fn degree_bound(s: &TropSystem) -> Result<BigInt> {
    let d = s.max_degree()?;
    let n = s.nvars();
    let kd = BigInt::from(s.k()) * BigInt::from(d);
    Ok((pow2(n + 1) - 1u32) * num_traits::pow(kd, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBound {
    pub value: BigInt,
    /// `n > k C(m, 2)`: the bound was evaluated in the essentialization of
    /// dimension `k C(m, 2)`.
    pub essentialized: bool,
}

/// `n 2^n C(ℓ, n)` with `ℓ = k C(m, 2)`.
pub fn sparse_bound(n: usize, k: usize, m: usize) -> SparseBound {
    let ell = k * (m * m.saturating_sub(1) / 2);
    let (n_eff, essentialized) = if n > ell { (ell, true) } else { (n, false) };
    SparseBound {
        value: arrangement_face_bound(n_eff, ell),
        essentialized,
    }
}

/// `n 2^n C(ℓ, n)`, the face bound for `ℓ` hyperplanes in dimension `n`.
pub fn arrangement_face_bound(n: usize, ell: usize) -> BigInt {
    BigInt::from(n) * pow2(n) * binomial(ell, n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub phi: usize,
    pub betti: BettiVector,
    pub dense: DenseBound,
    /// `None` for Laurent systems.
    pub degree_bound: Option<BigInt>,
    pub sparse: SparseBound,
    pub betti_le_phi: bool,
    /// `None` when the dense bound is degenerate.
    pub phi_le_dense: Option<bool>,
    pub phi_le_sparse: bool,
    pub betti_le_degree: Option<bool>,
}

impl BoundReport {
    pub fn all_pass(&self) -> bool {
        self.betti_le_phi
            && self.phi_le_dense != Some(false)
            && self.phi_le_sparse
            && self.betti_le_degree != Some(false)
    }

    /// Exact square of the dense bound.
    pub fn dense_bound_sq(&self) -> Option<Rational> {
        self.dense.bound.as_ref().map(RadVal::square)
    }
}

pub fn verify_bounds(s: &TropSystem) -> Result<BoundReport> {
    let phi = face_count(&cells_via_arrangement(s));
    let betti = betti_of_prevariety(s)?;
    report_from(s, phi, betti)
}

/// The report for already computed `φ(V)` and Betti numbers.
pub fn report_from(s: &TropSystem, phi: usize, betti: BettiVector) -> Result<BoundReport> {
    let dense = dense_volume_bound(s)?;
    let degree = if s.has_laurent() { None } else { Some(degree_bound(s)?) };
    let sparse = sparse_bound(s.nvars(), s.k(), s.max_monomials());
    let phi_q = Rational::from_integer(BigInt::from(phi));
    let b = betti.total();
    Ok(BoundReport {
        betti_le_phi: b <= phi,
        phi_le_dense: dense
            .bound
            .as_ref()
            .map(|d| d.cmp_rational(&phi_q) != Ordering::Less),
        phi_le_sparse: BigInt::from(phi) <= sparse.value,
        betti_le_degree: degree.as_ref().map(|d| BigInt::from(b) <= *d),
        phi,
        betti,
        dense,
        degree_bound: degree,
        sparse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::linalg::rat;
    use crate::tropical::poly;

    fn line() -> TropSystem {
        TropSystem::new(2, vec![poly(&[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)])]).unwrap()
    }

    #[test]
    fn dense_examples() {
        let d = dense_volume_bound(&line()).unwrap();
        assert_eq!((d.r, d.bound.unwrap()), (2, RadVal::from_rational(rat(7))));
        let cross = TropSystem::new(2, vec![poly(&[(&[1, 0], 0), (&[0, 0], 0)]), poly(&[(&[0, 1], 0), (&[0, 0], 0)])])
            .unwrap();
        assert_eq!(dense_volume_bound(&cross).unwrap().bound.unwrap(), RadVal::from_rational(rat(14)));
        let uni = TropSystem::new(1, vec![poly(&[(&[2], 0), (&[1], 1), (&[0], 3)])]).unwrap();
        let d = dense_volume_bound(&uni).unwrap();
        assert_eq!((d.r, d.bound.unwrap()), (1, RadVal::from_rational(rat(6))));
        let constant = TropSystem::new(2, vec![poly(&[(&[0, 0], 5)])]).unwrap();
        assert_eq!(dense_volume_bound(&constant).unwrap().bound, None);
    }

    #[test]
    fn degree_and_sparse_arithmetic() {
        assert_eq!(degree_bound(&line()).unwrap(), BigInt::from(7));
        let cubic = TropSystem::new(1, vec![poly(&[(&[3], 0), (&[0], 0)])]).unwrap();
        assert_eq!(degree_bound(&cubic).unwrap(), BigInt::from(9));
        assert_eq!(sparse_bound(2, 1, 3).value, BigInt::from(24));
        assert_eq!(sparse_bound(1, 1, 2).value, BigInt::from(2));
        assert_eq!(sparse_bound(2, 2, 2).value, BigInt::from(8));
        assert_eq!(sparse_bound(2, 2, 4).value, BigInt::from(528));
        let flagged = sparse_bound(3, 1, 2);
        assert!(flagged.essentialized);
        assert_eq!(flagged.value, BigInt::from(2));
        let laurent = TropSystem::new(1, vec![poly(&[(&[-1], 0), (&[0], 0)])]).unwrap();
        assert!(degree_bound(&laurent).is_err());
    }

    #[test]
    fn tropical_line_report() {
        let r = verify_bounds(&line()).unwrap();
        assert_eq!(r.phi, 4);
        assert_eq!(r.betti.as_slice(), &[1]);
        assert_eq!(r.dense_bound_sq(), Some(rat(49)));
        assert_eq!(r.sparse.value, BigInt::from(24));
        assert_eq!(r.degree_bound, Some(BigInt::from(7)));
        assert!(r.all_pass());
    }

    #[test]
    fn empty_prevariety_passes() {
        let r = verify_bounds(&TropSystem::new(2, vec![poly(&[(&[0, 0], 5)])]).unwrap()).unwrap();
        assert_eq!(r.phi, 0);
        assert_eq!(r.phi_le_dense, None);
        assert!(r.all_pass());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 2), BigInt::from(66));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(6, 0), BigInt::one());
    }
}
