//! Min-plus polynomials: evaluation, zeros, degree, Newton polytopes and
//! tropical products.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactgeom::linalg::rat;
use crate::exactgeom::{fmt_rational, Rational, VPolytope};

/// A tropical monomial `⟨exponents, x⟩ + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exponents: Vec<i64>,
    pub constant: Rational,
}

impl Monomial {
    pub fn new(exponents: Vec<i64>, constant: Rational) -> Self {
        Monomial { exponents, constant }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.exponents
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (&a, xi)| if a == 0 { acc } else { acc + xi * rat(a) })
    }

    pub fn degree(&self) -> i64 {
        self.exponents.iter().sum()
    }

    pub fn exponent_point(&self) -> Vec<Rational> {
        self.exponents.iter().map(|&a| rat(a)).collect()
    }

    /// `(exponents, constant)` in one dimension more.
    pub fn lifted(&self) -> Vec<Rational> {
        let mut p = self.exponent_point();
        p.push(self.constant.clone());
        p
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            exponents: self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
        }
    }
}

/// `min` over a nonempty list of distinct monomials.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropPoly {
    nvars: usize,
    monomials: Vec<Monomial>,
    laurent: bool,
}

impl TropPoly {
    /// Identical monomials are merged, keeping first occurrences in order.
    pub fn new(monomials: Vec<Monomial>, laurent: bool) -> Result<Self> {
        let Some(first) = monomials.first() else {
            return Err(Error::EmptyPolynomial);
        };
        let nvars = first.exponents.len();
        let mut out: Vec<Monomial> = Vec::with_capacity(monomials.len());
        for (j, mono) in monomials.into_iter().enumerate() {
            if mono.exponents.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: mono.exponents.len(),
                });
            }
            if !laurent && mono.exponents.iter().any(|&a| a < 0) {
                return Err(Error::NegativeCoefficient { monomial: j });
            }
            if !out.contains(&mono) {
                out.push(mono);
            }
        }
        Ok(TropPoly {
            nvars,
            monomials: out,
            laurent,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    fn check_point(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// The minimum value and every monomial index attaining it.
    pub fn eval(&self, x: &[Rational]) -> Result<(Rational, Vec<usize>)> {
        self.check_point(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[Rational]) -> (Rational, Vec<usize>) {
        let mut best: Option<Rational> = None;
        let mut argmin = Vec::new();
        for (j, m) in self.monomials.iter().enumerate() {
            let v = m.eval(x);
            match &best {
                Some(b) if v > *b => {}
                Some(b) if v == *b => argmin.push(j),
                _ => {
                    best = Some(v);
                    argmin.clear();
                    argmin.push(j);
                }
            }
        }
        (best.expect("nonempty polynomial"), argmin)
    }

    /// A tropical zero: the minimum is attained at least twice.
    pub fn is_zero(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.eval(x)?.1.len() >= 2)
    }

    pub fn degree(&self) -> Result<i64> {
        if self.laurent {
            return Err(Error::LaurentDegree);
        }
        Ok(self.monomials.iter().map(Monomial::degree).max().unwrap_or(0))
    }

    pub fn newton_polytope(&self) -> VPolytope {
        let pts: Vec<Vec<Rational>> = self.monomials.iter().map(Monomial::exponent_point).collect();
        VPolytope::from_points(self.nvars, &pts).expect("nonempty point set")
    }

    /// Lifted points `(a_j, b_j)` plus the upward ray in the last coordinate.
    /// Only the lifted points on the bottom survive as vertices.
    pub fn extended_newton_polytope(&self) -> VPolytope {
        let pts: Vec<Vec<Rational>> = self.monomials.iter().map(Monomial::lifted).collect();
        let mut up = vec![Rational::zero(); self.nvars + 1];
        up[self.nvars] = rat(1);
        VPolytope::with_rays(self.nvars + 1, &pts, &[up]).expect("nonempty point set")
    }

    /// Tropical product: all pairwise sums of monomials. Sums with the same
    /// exponent vector keep only the smallest constant, since a larger one
    /// never attains the minimum.
    pub fn trop_mul(&self, other: &TropPoly) -> Result<TropPoly> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        let mut out: Vec<Monomial> = Vec::new();
        for f in &self.monomials {
            for g in &other.monomials {
                let h = f.times(g);
                match out.iter_mut().find(|m| m.exponents == h.exponents) {
                    Some(m) => {
                        if h.constant < m.constant {
                            m.constant = h.constant;
                        }
                    }
                    None => out.push(h),
                }
            }
        }
        TropPoly::new(out, self.laurent || other.laurent)
    }

    /// Adds the same linear form to every monomial so all exponents become
    /// nonnegative. Ties, and so zeros, are unchanged.
    pub fn make_coeffs_nonneg(&self) -> TropPoly {
        let shift: Vec<i64> = (0..self.nvars)
            .map(|i| {
                let lo = self.monomials.iter().map(|m| m.exponents[i]).min().unwrap_or(0);
                (-lo).max(0)
            })
            .collect();
        let monomials = self
            .monomials
            .iter()
            .map(|m| Monomial {
                exponents: m.exponents.iter().zip(&shift).map(|(a, s)| a + s).collect(),
                constant: m.constant.clone(),
            })
            .collect();
        TropPoly {
            nvars: self.nvars,
            monomials,
            laurent: false,
        }
    }

    /// Adds `c` to every constant term.
    pub fn shift_constants(&self, c: &Rational) -> TropPoly {
        let mut out = self.clone();
        for m in out.monomials.iter_mut() {
            m.constant += c;
        }
        out
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> TropPoly {
        let mut out = self.clone();
        for m in out.monomials.iter_mut() {
            let mut e = vec![0; self.nvars];
            for (i, &a) in m.exponents.iter().enumerate() {
                e[perm[i]] = a;
            }
            m.exponents = e;
        }
        out
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, &a) in m.exponents.iter().enumerate() {
        match a {
            0 => {}
            1 => terms.push(format!("x{}", i + 1)),
            _ => terms.push(format!("{a}*x{}", i + 1)),
        }
    }
    if !m.constant.is_zero() || terms.is_empty() {
        terms.push(fmt_rational(&m.constant));
    }
    terms.join(" + ").replace("+ -", "- ")
}

impl fmt::Display for TropPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.monomials.iter().map(fmt_monomial).collect();
        write!(f, "min({})", parts.join(", "))
    }
}

/// A finite list of tropical polynomials in a shared set of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropSystem {
    nvars: usize,
    polys: Vec<TropPoly>,
}

impl TropSystem {
    pub fn new(nvars: usize, polys: Vec<TropPoly>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::EmptySystem);
        }
        if let Some(p) = polys.iter().find(|p| p.nvars != nvars) {
            return Err(Error::DimensionMismatch {
                expected: nvars,
                found: p.nvars,
            });
        }
        Ok(TropSystem { nvars, polys })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[TropPoly] {
        &self.polys
    }

    pub fn k(&self) -> usize {
        self.polys.len()
    }

    /// Largest monomial count over the polynomials.
    pub fn max_monomials(&self) -> usize {
        self.polys.iter().map(TropPoly::len).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> Result<i64> {
        self.polys.iter().map(TropPoly::degree).try_fold(0, |acc, d| Ok(acc.max(d?)))
    }

    pub fn has_laurent(&self) -> bool {
        self.polys.iter().any(TropPoly::is_laurent)
    }

    /// Membership in the prevariety.
    pub fn is_zero(&self, x: &[Rational]) -> Result<bool> {
        for p in &self.polys {
            if !p.is_zero(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn with_poly(&self, p: TropPoly) -> Result<TropSystem> {
        let mut polys = self.polys.clone();
        polys.push(p);
        TropSystem::new(self.nvars, polys)
    }

    pub fn map_polys(&self, f: impl Fn(&TropPoly) -> TropPoly) -> TropSystem {
        TropSystem {
            nvars: self.nvars,
            polys: self.polys.iter().map(f).collect(),
        }
    }
}

impl fmt::Display for TropSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.polys.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "f{} = {p}", i + 1)?;
        }
        Ok(())
    }
}

/// Shorthand used throughout the tests: integer constants.
pub fn poly(terms: &[(&[i64], i64)]) -> TropPoly {
    let monos = terms
        .iter()
        .map(|(a, b)| Monomial::new(a.to_vec(), rat(*b)))
        .collect();
    let laurent = terms.iter().any(|(a, _)| a.iter().any(|&x| x < 0));
    TropPoly::new(monos, laurent).expect("well-formed polynomial")
}
