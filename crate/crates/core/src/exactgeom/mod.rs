//! Exact rational convex geometry: linear algebra, LP feasibility, hulls,
//! Minkowski sums, lineality spaces and r-dimensional volumes.

pub mod hull;
pub mod linalg;
pub mod lp;
pub mod volume;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use linalg::{dot_int, first_nonzero_sign, primitive, rref, to_rationals};
pub use hull::{convex_hull, minkowski_sum, Facet, Hull, VPolytope};
pub use lp::{Feasibility, FarkasCertificate, LinearSystem, Relation};
pub use volume::{volume_r, RadVal};

pub type Rational = BigRational;

/// `⟨normal, x⟩ = offset` or `⟨normal, x⟩ >= offset`, with a primitive
/// integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Constraint {
    /// Scales by a positive factor so the normal is a primitive integer vector.
    pub fn inequality(normal: &[Rational], offset: Rational) -> Self {
        let (normal, f) = primitive(normal);
        Constraint {
            normal,
            offset: offset * f,
        }
    }

    /// Like [`Constraint::inequality`], then flips the sign so the first
    /// nonzero entry of the normal is positive.
    pub fn equation(normal: &[Rational], offset: Rational) -> Self {
        let mut c = Self::inequality(normal, offset);
        if first_nonzero_sign(&c.normal) < 0 {
            c.normal.iter_mut().for_each(|x| *x = -x.clone());
            c.offset = -c.offset;
        }
        c
    }

    pub fn from_ints(normal: &[i64], offset: Rational) -> Self {
        let n: Vec<Rational> = normal.iter().map(|&x| linalg::rat(x)).collect();
        Self::inequality(&n, offset)
    }

    /// `⟨normal, x⟩ - offset`
    pub fn slack(&self, x: &[Rational]) -> Rational {
        dot_int(&self.normal, x) - &self.offset
    }

    pub fn normal_rational(&self) -> Vec<Rational> {
        to_rationals(&self.normal)
    }

    pub fn is_trivial(&self) -> bool {
        self.normal.iter().all(Zero::is_zero)
    }

    fn negated(&self) -> Self {
        Constraint {
            normal: self.normal.iter().map(|x| -x.clone()).collect(),
            offset: -self.offset.clone(),
        }
    }
}

/// A polyhedron `{ x : eqs hold, ineqs hold }` in `R^dim`.
///
/// [`HPolyhedron::canonical`] produces a unique representation per point set:
/// affine-hull equations in reduced echelon form and the irredundant facet
/// inequalities reduced modulo those equations, sorted. The empty set has its
/// own canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HPolyhedron {
    dim: usize,
    eqs: Vec<Constraint>,
    ineqs: Vec<Constraint>,
}

impl HPolyhedron {
    pub fn whole_space(dim: usize) -> Self {
        HPolyhedron {
            dim,
            eqs: Vec::new(),
            ineqs: Vec::new(),
        }
    }

    pub fn empty(dim: usize) -> Self {
        HPolyhedron {
            dim,
            eqs: Vec::new(),
            ineqs: vec![Constraint {
                normal: vec![BigInt::zero(); dim],
                offset: Rational::one(),
            }],
        }
    }

    pub fn new(dim: usize, eqs: Vec<Constraint>, ineqs: Vec<Constraint>) -> Result<Self> {
        for c in eqs.iter().chain(&ineqs) {
            if c.normal.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.normal.len(),
                });
            }
        }
        Ok(HPolyhedron { dim, eqs, ineqs })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[Constraint] {
        &self.eqs
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.ineqs
    }

    pub fn add_equality(&mut self, c: Constraint) {
        assert_eq!(c.normal.len(), self.dim);
        self.eqs.push(c);
    }

    pub fn add_inequality(&mut self, c: Constraint) {
        assert_eq!(c.normal.len(), self.dim);
        self.ineqs.push(c);
    }

    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = self.clone();
        out.eqs.extend(other.eqs.iter().cloned());
        out.ineqs.extend(other.ineqs.iter().cloned());
        Ok(out)
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.eqs.iter().all(|c| c.slack(x).is_zero())
            && self.ineqs.iter().all(|c| !c.slack(x).is_negative())
    }

    /// Membership in the relative interior. Exact only on canonical forms,
    /// where every listed inequality is facet-defining.
    pub fn relint_contains(&self, x: &[Rational]) -> bool {
        self.eqs.iter().all(|c| c.slack(x).is_zero())
            && self.ineqs.iter().all(|c| c.slack(x).is_positive())
    }

    /// The constraints as a [`LinearSystem`], with every inequality strict
    /// when `strict` is set.
    pub fn to_system(&self, strict: bool) -> LinearSystem {
        let mut sys = LinearSystem::new(self.dim);
        for c in &self.eqs {
            sys.push(c.normal_rational(), Relation::Eq, c.offset.clone());
        }
        let rel = if strict { Relation::Gt } else { Relation::Ge };
        for c in &self.ineqs {
            sys.push(c.normal_rational(), rel, c.offset.clone());
        }
        sys
    }

    pub fn find_point(&self) -> Option<Vec<Rational>> {
        self.to_system(false).find_point()
    }

    pub fn is_empty(&self) -> bool {
        self.find_point().is_none()
    }

    /// Dimension of the affine hull; `-1` for the empty set.
    pub fn affine_dim(&self) -> isize {
        if self.is_empty() {
            return -1;
        }
        let eqs = self.implicit_equalities();
        let rows: Vec<Vec<Rational>> = eqs.iter().map(Constraint::normal_rational).collect();
        (self.dim - linalg::rank(&rows)) as isize
    }

    /// All equations holding on the (nonempty) polyhedron that are listed
    /// either as equalities or as inequalities tight everywhere.
    fn implicit_equalities(&self) -> Vec<Constraint> {
        let mut eqs = self.eqs.clone();
        if self.ineqs.is_empty() || self.to_system(true).find_point().is_some() {
            return eqs;
        }
        let base = self.to_system(false);
        for c in &self.ineqs {
            let mut sys = base.clone();
            sys.push(c.normal_rational(), Relation::Gt, c.offset.clone());
            if sys.find_point().is_none() {
                eqs.push(c.clone());
            }
        }
        eqs
    }

    /// Basis of the lineality space, as primitive integer vectors.
    pub fn lineality_space(&self) -> Result<Vec<Vec<BigInt>>> {
        if self.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let rows: Vec<Vec<Rational>> = self
            .eqs
            .iter()
            .chain(&self.ineqs)
            .map(Constraint::normal_rational)
            .collect();
        Ok(linalg::nullspace(&rows, self.dim)
            .iter()
            .map(|v| primitive(v).0)
            .collect())
    }

    /// True when the recession cone is trivial. The empty set is bounded.
    pub fn is_bounded(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut cone = LinearSystem::new(self.dim);
        for c in &self.eqs {
            cone.push(c.normal_rational(), Relation::Eq, Rational::zero());
        }
        for c in &self.ineqs {
            cone.push(c.normal_rational(), Relation::Ge, Rational::zero());
        }
        for j in 0..self.dim {
            for s in [1i64, -1] {
                let mut sys = cone.clone();
                let mut e = vec![Rational::zero(); self.dim];
                e[j] = linalg::rat(s);
                sys.push(e, Relation::Ge, Rational::one());
                if sys.find_point().is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// The unique representation of this point set; see the type docs.
    pub fn canonical(&self) -> HPolyhedron {
        if self.is_empty() {
            return HPolyhedron::empty(self.dim);
        }
        let n = self.dim;
        let eqs = self.implicit_equalities();
        let mut m: Vec<Vec<Rational>> = eqs
            .iter()
            .map(|c| {
                let mut r = c.normal_rational();
                r.push(c.offset.clone());
                r
            })
            .collect();
        let pivots = rref(&mut m, n);
        let canon_eqs: Vec<Constraint> = m
            .iter()
            .map(|r| Constraint::equation(&r[..n], r[n].clone()))
            .collect();

        // reduce inequalities modulo the equation space, keep the tightest
        // offset per direction
        let mut reduced: Vec<Constraint> = Vec::new();
        for c in self.ineqs.iter().filter(|c| !eqs.contains(c)) {
            let mut normal = c.normal_rational();
            let mut offset = c.offset.clone();
            for (row, &p) in m.iter().zip(&pivots) {
                if normal[p].is_zero() {
                    continue;
                }
                let f = normal[p].clone();
                for (x, y) in normal.iter_mut().zip(row.iter()) {
                    *x -= &f * y;
                }
                offset -= &f * &row[n];
            }
            let c = Constraint::inequality(&normal, offset);
            if c.is_trivial() {
                continue;
            }
            match reduced.iter_mut().find(|d| d.normal == c.normal) {
                Some(d) => {
                    if c.offset > d.offset {
                        d.offset = c.offset;
                    }
                }
                None => reduced.push(c),
            }
        }
        reduced.sort();

        let mut keep = vec![true; reduced.len()];
        for i in 0..reduced.len() {
            let mut sys = LinearSystem::new(n);
            for c in &canon_eqs {
                sys.push(c.normal_rational(), Relation::Eq, c.offset.clone());
            }
            for (j, c) in reduced.iter().enumerate() {
                if j != i && keep[j] {
                    sys.push(c.normal_rational(), Relation::Ge, c.offset.clone());
                }
            }
            let neg = reduced[i].negated();
            sys.push(neg.normal_rational(), Relation::Gt, neg.offset.clone());
            if sys.find_point().is_none() {
                keep[i] = false;
            }
        }
        let ineqs = reduced
            .into_iter()
            .zip(keep)
            .filter_map(|(c, k)| k.then_some(c))
            .collect();
        HPolyhedron {
            dim: n,
            eqs: canon_eqs,
            ineqs,
        }
    }

    /// A point in the relative interior, if nonempty.
    pub fn relint_point(&self) -> Option<Vec<Rational>> {
        let c = self.canonical();
        if c == HPolyhedron::empty(self.dim) {
            return None;
        }
        c.to_system(true).find_point()
    }

    /// Vertices of a bounded polyhedron, by brute force over `dim`-subsets of
    /// tight constraints. Intended for small display-sized inputs.
    pub fn vertices(&self) -> Result<Vec<Vec<Rational>>> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        let c = self.canonical();
        if c.is_empty() {
            return Ok(Vec::new());
        }
        let n = self.dim;
        let eq_rows: Vec<Vec<Rational>> = c.eqs.iter().map(Constraint::normal_rational).collect();
        let eq_rhs: Vec<Rational> = c.eqs.iter().map(|e| e.offset.clone()).collect();
        let need = n - eq_rows.len();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        for subset in combinations(c.ineqs.len(), need) {
            let mut rows = eq_rows.clone();
            let mut rhs = eq_rhs.clone();
            for &i in &subset {
                rows.push(c.ineqs[i].normal_rational());
                rhs.push(c.ineqs[i].offset.clone());
            }
            if linalg::rank(&rows) < n {
                continue;
            }
            if let Some((x, dirs)) = linalg::affine_solutions(&rows, &rhs, n) {
                if dirs.is_empty() && c.contains(&x) && !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Exact feasibility of an H-polyhedron, with witness or certificate.
pub fn lp_feasible(p: &HPolyhedron) -> Feasibility {
    p.to_system(false).solve()
}

pub fn affine_dim(p: &HPolyhedron) -> isize {
    p.affine_dim()
}

pub fn lineality_space(p: &HPolyhedron) -> Result<Vec<Vec<BigInt>>> {
    p.lineality_space()
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for HPolyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &Constraint, rel: &str| {
            let mut lhs = String::new();
            for (i, a) in c.normal.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
                let sign = if a.is_negative() { "-" } else { "+" };
                if lhs.is_empty() {
                    lhs.push_str(if a.is_negative() { "-" } else { "" });
                } else {
                    lhs.push_str(&format!(" {sign} "));
                }
                if !a.abs().is_one() {
                    lhs.push_str(&format!("{}*", a.abs()));
                }
                lhs.push_str(&format!("x{}", i + 1));
            }
            if lhs.is_empty() {
                lhs.push('0');
            }
            format!("{lhs} {rel} {}", fmt_rational(&c.offset))
        };
        let parts: Vec<String> = self
            .eqs
            .iter()
            .map(|c| term(c, "="))
            .chain(self.ineqs.iter().map(|c| term(c, ">=")))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
