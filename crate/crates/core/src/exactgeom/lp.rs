//! Exact feasibility for systems of linear equations, weak and strict
//! inequalities.
//!
//! Equalities are eliminated first, so the search runs in the coordinates of
//! the solution space of the equations. One free coordinate is handled by
//! interval intersection; anything larger goes through a dense two-phase
//! simplex with Bland's rule, where strict rows share one slack `t` that is
//! maximized over `[0, 1]`.

use num_traits::{One, Signed, Zero};

use super::linalg::{affine_solutions, dot};
use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    /// `coeffs · x = rhs`
    Eq,
    /// `coeffs · x >= rhs`
    Ge,
    /// `coeffs · x > rhs`
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub relation: Relation,
}

impl LinearConstraint {
    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Gt => lhs > self.rhs,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    dim: usize,
    constraints: Vec<LinearConstraint>,
}

/// Multipliers proving that a system has no solution: one per constraint,
/// nonnegative on inequalities, combining the left-hand sides to zero while
/// the right-hand sides combine to something positive (or to zero with a
/// strict row involved).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        LinearSystem {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn push(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.dim, "constraint width");
        self.constraints.push(LinearConstraint {
            coeffs,
            rhs,
            relation,
        });
    }

    pub fn eq(mut self, coeffs: Vec<Rational>, rhs: Rational) -> Self {
        self.push(coeffs, Relation::Eq, rhs);
        self
    }

    pub fn ge(mut self, coeffs: Vec<Rational>, rhs: Rational) -> Self {
        self.push(coeffs, Relation::Ge, rhs);
        self
    }

    pub fn gt(mut self, coeffs: Vec<Rational>, rhs: Rational) -> Self {
        self.push(coeffs, Relation::Gt, rhs);
        self
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| c.holds_at(x))
    }

    /// A rational point satisfying every constraint, if there is one.
    pub fn find_point(&self) -> Option<Vec<Rational>> {
        let (eq_rows, eq_rhs): (Vec<_>, Vec<_>) = self
            .constraints
            .iter()
            .filter(|c| c.relation == Relation::Eq)
            .map(|c| (c.coeffs.clone(), c.rhs.clone()))
            .unzip();
        let (x0, dirs) = affine_solutions(&eq_rows, &eq_rhs, self.dim)?;

        let mut reduced = Vec::new();
        for c in self.constraints.iter().filter(|c| c.relation != Relation::Eq) {
            let g: Vec<Rational> = dirs.iter().map(|d| dot(&c.coeffs, d)).collect();
            let h = &c.rhs - dot(&c.coeffs, &x0);
            if g.iter().all(Zero::is_zero) {
                let ok = match c.relation {
                    Relation::Gt => h.is_negative(),
                    _ => !h.is_positive(),
                };
                if !ok {
                    return None;
                }
                continue;
            }
            reduced.push((g, h, c.relation == Relation::Gt));
        }

        let y = match dirs.len() {
            _ if reduced.is_empty() => vec![Rational::zero(); dirs.len()],
            1 => vec![interval_point(&reduced)?],
            d => simplex_point(&reduced, d)?,
        };
        let mut x = x0;
        for (yj, dir) in y.iter().zip(&dirs) {
            if yj.is_zero() {
                continue;
            }
            for (xi, di) in x.iter_mut().zip(dir) {
                *xi += yj * di;
            }
        }
        debug_assert!(self.is_satisfied_by(&x));
        Some(x)
    }

    /// Feasibility with a witness point or a Farkas certificate.
    pub fn solve(&self) -> Feasibility {
        if let Some(x) = self.find_point() {
            return Feasibility::Feasible(x);
        }
        // Alternative system in the multipliers y:
        //   sum_c y_c coeffs_c = 0,  sum_c y_c rhs_c >= 0,
        //   sum_c y_c rhs_c + sum_{c strict} y_c = 1,  y_c >= 0 off equalities.
        let m = self.constraints.len();
        let mut alt = LinearSystem::new(m);
        for col in 0..self.dim {
            let row = self.constraints.iter().map(|c| c.coeffs[col].clone()).collect();
            alt.push(row, Relation::Eq, Rational::zero());
        }
        let rhs_row: Vec<Rational> = self.constraints.iter().map(|c| c.rhs.clone()).collect();
        alt.push(rhs_row.clone(), Relation::Ge, Rational::zero());
        let norm_row = self
            .constraints
            .iter()
            .zip(rhs_row)
            .map(|(c, r)| if c.relation == Relation::Gt { r + Rational::one() } else { r })
            .collect();
        alt.push(norm_row, Relation::Eq, Rational::one());
        for (i, c) in self.constraints.iter().enumerate() {
            if c.relation != Relation::Eq {
                let mut unit = vec![Rational::zero(); m];
                unit[i] = Rational::one();
                alt.push(unit, Relation::Ge, Rational::zero());
            }
        }
        let multipliers = alt
            .find_point()
            .expect("theorem of the alternative: certificate system must be feasible");
        Feasibility::Infeasible(FarkasCertificate { multipliers })
    }
}

impl FarkasCertificate {
    /// Exact check that the multipliers prove infeasibility of `sys`.
    pub fn verify(&self, sys: &LinearSystem) -> bool {
        let cs = sys.constraints();
        if self.multipliers.len() != cs.len() {
            return false;
        }
        let mut combo = vec![Rational::zero(); sys.dim()];
        let mut rhs = Rational::zero();
        let mut strict_used = false;
        for (y, c) in self.multipliers.iter().zip(cs) {
            if c.relation != Relation::Eq && y.is_negative() {
                return false;
            }
            if c.relation == Relation::Gt && y.is_positive() {
                strict_used = true;
            }
            for (acc, a) in combo.iter_mut().zip(&c.coeffs) {
                *acc += y * a;
            }
            rhs += y * &c.rhs;
        }
        combo.iter().all(Zero::is_zero) && (rhs.is_positive() || (rhs.is_zero() && strict_used))
    }
}

/// One free coordinate: intersect the half-lines.
fn interval_point(rows: &[(Vec<Rational>, Rational, bool)]) -> Option<Rational> {
    let mut lower: Option<(Rational, bool)> = None;
    let mut upper: Option<(Rational, bool)> = None;
    for (g, h, strict) in rows {
        let bound = h / &g[0];
        if g[0].is_positive() {
            let better = match &lower {
                None => true,
                Some((v, s)) => bound > *v || (bound == *v && *strict && !s),
            };
            if better {
                lower = Some((bound, *strict));
            }
        } else {
            let better = match &upper {
                None => true,
                Some((v, s)) => bound < *v || (bound == *v && *strict && !s),
            };
            if better {
                upper = Some((bound, *strict));
            }
        }
    }
    match (lower, upper) {
        (Some((lo, ls)), Some((hi, hs))) => {
            if lo < hi {
                Some((lo + hi) / Rational::from_integer(2.into()))
            } else if lo == hi && !ls && !hs {
                Some(lo)
            } else {
                None
            }
        }
        (Some((lo, _)), None) => Some(lo + Rational::one()),
        (None, Some((hi, _))) => Some(hi - Rational::one()),
        (None, None) => Some(Rational::zero()),
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `obj · z` over columns `< allowed`; false if unbounded.
    fn maximize(&mut self, obj: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = obj[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !obj[b].is_zero() && !row[j].is_zero() {
                        rc -= &obj[b] * &row[j];
                    }
                }
                rc.is_positive()
            });
            let Some(j) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[self.ncols] / &row[j];
                let take = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if take {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, j);
        }
    }

    fn value_of(&self, col: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == col)
            .map(|i| self.rows[i][self.ncols].clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Two or more free coordinates.
fn simplex_point(rows: &[(Vec<Rational>, Rational, bool)], d: usize) -> Option<Vec<Rational>> {
    let any_strict = rows.iter().any(|r| r.2);
    let t_col = 2 * d;
    let slack0 = 2 * d + usize::from(any_strict);
    let st_col = slack0 + rows.len();
    let nstruct = st_col + usize::from(any_strict);

    let mut body: Vec<(Vec<Rational>, Option<usize>)> = Vec::new();
    for (k, (g, h, strict)) in rows.iter().enumerate() {
        let mut row = vec![Rational::zero(); nstruct + 1];
        for j in 0..d {
            row[j] = g[j].clone();
            row[d + j] = -g[j].clone();
        }
        if *strict {
            row[t_col] = -Rational::one();
        }
        row[slack0 + k] = -Rational::one();
        row[nstruct] = h.clone();
        if !h.is_positive() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            body.push((row, Some(slack0 + k)));
        } else {
            body.push((row, None));
        }
    }
    if any_strict {
        let mut row = vec![Rational::zero(); nstruct + 1];
        row[t_col] = Rational::one();
        row[st_col] = Rational::one();
        row[nstruct] = Rational::one();
        body.push((row, Some(st_col)));
    }

    let nart = body.iter().filter(|(_, b)| b.is_none()).count();
    let ncols = nstruct + nart;
    let mut tab = Tableau {
        rows: Vec::with_capacity(body.len()),
        basis: Vec::with_capacity(body.len()),
        ncols,
    };
    let mut next_art = nstruct;
    for (row, basic) in body {
        let rhs = row[nstruct].clone();
        let mut full = row;
        full.truncate(nstruct);
        full.resize(ncols, Rational::zero());
        let b = match basic {
            Some(b) => b,
            None => {
                full[next_art] = Rational::one();
                next_art += 1;
                next_art - 1
            }
        };
        full.push(rhs);
        tab.rows.push(full);
        tab.basis.push(b);
    }

    if nart > 0 {
        let mut obj = vec![Rational::zero(); ncols];
        for o in obj.iter_mut().skip(nstruct) {
            *o = -Rational::one();
        }
        tab.maximize(&obj, ncols);
        let infeasibility: Rational = (nstruct..ncols).map(|c| tab.value_of(c)).sum();
        if infeasibility.is_positive() {
            return None;
        }
        // drive zero-level artificials out of the basis
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= nstruct {
                match (0..nstruct).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    if any_strict {
        let mut obj = vec![Rational::zero(); ncols];
        obj[t_col] = Rational::one();
        let bounded = tab.maximize(&obj, nstruct);
        debug_assert!(bounded, "t is capped at one");
        if !tab.value_of(t_col).is_positive() {
            return None;
        }
    }
    Some((0..d).map(|j| tab.value_of(j) - tab.value_of(d + j)).collect())
}
