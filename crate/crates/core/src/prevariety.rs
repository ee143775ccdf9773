//! The cell complex of a prevariety, built two ways: from tie patterns on the
//! faces of the monomial-tie arrangement, and as duals of the tropical faces
//! of the regular subdivision given by the extended Newton polytopes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::arrangement::{build_arrangement, enumerate_pruned, Arrangement, ArrFace};
use crate::exactgeom::linalg::{rank, sub};
use crate::exactgeom::{Constraint, HPolyhedron, Rational};
use crate::tropical::{TropPoly, TropSystem};
use crate::{Error, Result};

/// For every polynomial, the sorted indices of the monomials attaining the
/// minimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TiePattern {
    pub rows: Vec<Vec<usize>>,
}

impl TiePattern {
    pub fn at(s: &TropSystem, x: &[Rational]) -> TiePattern {
        TiePattern {
            rows: s.polys().iter().map(|f| f.eval_unchecked(x).1).collect(),
        }
    }

    /// `(i, j)` pairs, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |&j| (i, j)))
            .collect()
    }

    /// Every polynomial has a tie.
    pub fn in_prevariety(&self) -> bool {
        self.rows.iter().all(|r| r.len() >= 2)
    }

    /// Row-wise containment `self ⊇ other`.
    pub fn contains(&self, other: &TiePattern) -> bool {
        self.rows.len() == other.rows.len()
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| b.iter().all(|j| a.contains(j)))
    }

    /// `{L_{i,j0} = L_{i,j}, j ∈ B_i} ∩ {L_{i,j} ≥ L_{i,j0}, j ∉ B_i}`,
    /// not canonicalized. This is the closure of `U_B` whenever `U_B` is
    /// nonempty; empty rows impose nothing.
    pub fn closure_in(&self, s: &TropSystem) -> HPolyhedron {
        let mut p = HPolyhedron::whole_space(s.nvars());
        let mut seen: Vec<(&TropPoly, &Vec<usize>)> = Vec::new();
        for (f, row) in s.polys().iter().zip(&self.rows) {
            if seen.contains(&(f, row)) {
                continue;
            }
            seen.push((f, row));
            let Some(&j0) = row.first() else { continue };
            let ms = f.monomials();
            for (j, m) in ms.iter().enumerate() {
                if j == j0 {
                    continue;
                }
                // L_j - L_j0 = ⟨a_j - a_j0, x⟩ + b_j - b_j0
                let normal: Vec<Rational> = m
                    .exponents
                    .iter()
                    .zip(&ms[j0].exponents)
                    .map(|(a, b)| Rational::from_integer((a - b).into()))
                    .collect();
                let offset = &ms[j0].constant - &m.constant;
                if row.contains(&j) {
                    p.add_equality(Constraint::equation(&normal, offset));
                } else {
                    p.add_inequality(Constraint::inequality(&normal, offset));
                }
            }
        }
        p
    }

    /// `U_B` itself, with strict inequalities.
    fn open_system(&self, s: &TropSystem) -> crate::exactgeom::LinearSystem {
        self.closure_in(s).to_system(true)
    }

    pub fn num_ties(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for TiePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, j)) in self.pairs().into_iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", i + 1, j + 1)?;
        }
        write!(f, "}}")
    }
}

pub fn tie_pattern(s: &TropSystem, face: &ArrFace) -> TiePattern {
    TiePattern::at(s, &face.witness)
}

/// A closed cell of the prevariety; its relative interior is `U_B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrevarietyCell {
    pub pattern: TiePattern,
    /// Canonical form.
    pub closure: HPolyhedron,
    pub dim: usize,
    pub bounded: bool,
    pub lineality_dim: usize,
    /// A point of `U_B`.
    pub witness: Vec<Rational>,
}

impl PrevarietyCell {
    fn from_pattern(s: &TropSystem, pattern: TiePattern, witness: Vec<Rational>) -> Self {
        let closure = pattern.closure_in(s).canonical();
        let dim = closure.affine_dim().max(0) as usize;
        let bounded = dim == 0 || closure.is_bounded();
        let lineality_dim = closure.lineality_space().map(|l| l.len()).unwrap_or(0);
        PrevarietyCell {
            pattern,
            closure,
            dim,
            bounded,
            lineality_dim,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrevarietyComplex {
    pub nvars: usize,
    /// Sorted by closure.
    pub cells: Vec<PrevarietyCell>,
    /// `(cell, proper face of cell)`, sorted.
    pub incidence: Vec<(usize, usize)>,
    /// Component index of every cell.
    pub component_of: Vec<usize>,
}

impl PrevarietyComplex {
    fn assemble(nvars: usize, mut cells: Vec<PrevarietyCell>) -> Self {
        cells.sort_by(|a, b| a.closure.cmp(&b.closure));
        let mut incidence = Vec::new();
        for (a, ca) in cells.iter().enumerate() {
            for (b, cb) in cells.iter().enumerate() {
                if a != b && cb.pattern.contains(&ca.pattern) {
                    incidence.push((a, b));
                }
            }
        }
        let component_of = label_components(cells.len(), &incidence);
        PrevarietyComplex {
            nvars,
            cells,
            incidence,
            component_of,
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Proper faces of `cell`.
    pub fn faces_of(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence
            .iter()
            .filter(move |(a, _)| *a == cell)
            .map(|&(_, b)| b)
    }

    /// Faces of codimension one in `cell`.
    pub fn facets_of(&self, cell: usize) -> Vec<usize> {
        let d = self.cells[cell].dim;
        self.faces_of(cell)
            .filter(|&b| self.cells[b].dim + 1 == d)
            .collect()
    }

    pub fn closures(&self) -> BTreeSet<HPolyhedron> {
        self.cells.iter().map(|c| c.closure.clone()).collect()
    }

    /// The cell whose relative interior contains `x`, if `x` lies on the
    /// prevariety.
    pub fn locate(&self, s: &TropSystem, x: &[Rational]) -> Option<usize> {
        let p = TiePattern::at(s, x);
        self.cells.iter().position(|c| c.pattern == p)
    }
}

fn label_components(n: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(a, b) in pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            // keep the smaller index as root so labels follow cell order
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|i| {
            let r = find(&mut parent, i);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect()
}

/// Distinct polynomials, fewest monomials first, and where each original
/// polynomial went. Ordering small polynomials first lets the arrangement
/// walk prune early.
fn reduced_system(s: &TropSystem) -> (TropSystem, Vec<usize>) {
    let mut uniq: Vec<TropPoly> = Vec::new();
    for p in s.polys() {
        if !uniq.contains(p) {
            uniq.push(p.clone());
        }
    }
    uniq.sort_by_key(TropPoly::len);
    let map = s
        .polys()
        .iter()
        .map(|p| uniq.iter().position(|q| q == p).expect("present"))
        .collect();
    (
        TropSystem::new(s.nvars(), uniq).expect("nonempty, same dimension"),
        map,
    )
}

/// For each depth of the arrangement walk, the polynomials whose hyperplanes
/// have all been assigned a sign by then (and not before).
fn completion_depths(s: &TropSystem, a: &Arrangement) -> Vec<Vec<usize>> {
    let mut last = vec![0usize; s.k()];
    for (h_idx, h) in a.hyperplanes().iter().enumerate() {
        for &(i, _, _) in &h.sources {
            last[i] = last[i].max(h_idx + 1);
        }
    }
    let mut at = vec![Vec::new(); a.len() + 1];
    for (i, &d) in last.iter().enumerate() {
        at[d].push(i);
    }
    at
}

/// Tie patterns and relative-interior points of all nonempty `U_B` whose
/// rows satisfy `accept(i, argmin_i)`.
fn patterns_where(
    s: &TropSystem,
    accept: &dyn Fn(usize, &[usize]) -> bool,
) -> BTreeMap<TiePattern, Vec<Rational>> {
    let (red, map) = reduced_system(s);
    let a = build_arrangement(&red);
    let done = completion_depths(&red, &a);
    // which original polynomials a reduced one stands for
    let mut originals = vec![Vec::new(); red.k()];
    for (orig, &r) in map.iter().enumerate() {
        originals[r].push(orig);
    }
    let mut keep = |depth: usize, x: &[Rational]| {
        done[depth].iter().all(|&r| {
            let argmin = red.polys()[r].eval_unchecked(x).1;
            originals[r].iter().all(|&i| accept(i, &argmin))
        })
    };
    let mut out = BTreeMap::new();
    for face in enumerate_pruned(&a, &mut keep) {
        // keep the witness of the largest face: it is generic in U_B
        let p = TiePattern::at(s, &face.witness);
        out.entry(p).or_insert((face.dim, face.witness.clone()));
        let e = out.get_mut(&TiePattern::at(s, &face.witness)).expect("inserted");
        if face.dim > e.0 {
            *e = (face.dim, face.witness);
        }
    }
    out.into_iter().map(|(p, (_, w))| (p, w)).collect()
}

/// Cells `U_B` with a tie in every polynomial, from the arrangement faces.
/// Faces sharing a tie pattern are merged: they lie in one convex `U_B`.
pub fn cells_via_arrangement(s: &TropSystem) -> PrevarietyComplex {
    let cells = patterns_where(s, &|_, argmin| argmin.len() >= 2)
        .into_iter()
        .map(|(p, w)| PrevarietyCell::from_pattern(s, p, w))
        .collect();
    PrevarietyComplex::assemble(s.nvars(), cells)
}

/// Tie patterns of the proper faces of the closure of `U_B`.
pub fn cell_closure(s: &TropSystem, b: &TiePattern) -> Result<Vec<TiePattern>> {
    if b.rows.len() != s.k() {
        return Err(Error::PatternShape);
    }
    for (f, row) in s.polys().iter().zip(&b.rows) {
        if row.iter().any(|&j| j >= f.len()) || row.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::PatternShape);
        }
    }
    if b.open_system(s).find_point().is_none() {
        return Err(Error::EmptyPolyhedron);
    }
    let found = patterns_where(s, &|i, argmin| b.rows[i].iter().all(|j| argmin.contains(j)));
    Ok(found.into_keys().filter(|p| p != b).collect())
}

/// A face `F = F_1 + ... + F_k` of the bottom of `Q_1 + ... + Q_k`; `F_i` is
/// the convex hull of the lifted monomials of `f_i` listed in `parts[i]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualFace {
    pub parts: Vec<Vec<usize>>,
    pub part_dims: Vec<usize>,
    pub dim: usize,
    pub tropical: bool,
}

impl DualFace {
    fn from_parts(s: &TropSystem, parts: Vec<Vec<usize>>) -> Self {
        let mut all_dirs = Vec::new();
        let mut part_dims = Vec::with_capacity(parts.len());
        for (f, part) in s.polys().iter().zip(&parts) {
            let pts: Vec<Vec<Rational>> = part.iter().map(|&j| f.monomials()[j].lifted()).collect();
            let dirs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
            part_dims.push(rank(&dirs));
            all_dirs.extend(dirs);
        }
        let tropical = part_dims.iter().all(|&d| d >= 1);
        DualFace {
            parts,
            part_dims,
            dim: rank(&all_dirs),
            tropical,
        }
    }

    /// The lifted points of `F`, all sums of one point from each part.
    pub fn summed_points(&self, s: &TropSystem) -> BTreeSet<Vec<Rational>> {
        let mut acc: BTreeSet<Vec<Rational>> = BTreeSet::new();
        acc.insert(vec![Rational::zero(); s.nvars() + 1]);
        for (f, part) in s.polys().iter().zip(&self.parts) {
            let mut next = BTreeSet::new();
            for p in &acc {
                for &j in part {
                    let q = f.monomials()[j].lifted();
                    next.insert(p.iter().zip(&q).map(|(a, b)| a + b).collect());
                }
            }
            acc = next;
        }
        acc
    }
}

/// Every face of the bottom of the summed extended Newton polytopes. A slope
/// `(x, 1)` selects in each `Q_i` the lifted points of the monomials minimal
/// at `x`, so the faces are read off the tie patterns of all arrangement
/// faces.
pub fn dual_subdivision(s: &TropSystem) -> Vec<DualFace> {
    let faces: BTreeSet<TiePattern> = patterns_where(s, &|_, _| true).into_keys().collect();
    let mut out: Vec<DualFace> = faces
        .into_iter()
        .map(|p| DualFace::from_parts(s, p.rows))
        .collect();
    out.sort();
    out
}

pub fn tropical_faces(subdivision: &[DualFace]) -> Vec<DualFace> {
    subdivision.iter().filter(|f| f.tropical).cloned().collect()
}

/// `G(F)`: the closed cell where exactly the monomials of each `F_i` tie at
/// the minimum. Checks `dim F + dim G(F) = n`.
pub fn dual_cell(s: &TropSystem, f: &DualFace) -> Result<PrevarietyCell> {
    if !f.tropical {
        return Err(Error::NotTropical);
    }
    let pattern = TiePattern {
        rows: f.parts.clone(),
    };
    let witness = pattern
        .open_system(s)
        .find_point()
        .ok_or(Error::EmptyPolyhedron)?;
    let cell = PrevarietyCell::from_pattern(s, pattern, witness);
    if f.dim + cell.dim != s.nvars() {
        return Err(Error::Invariant(format!(
            "dim F = {} and dim G(F) = {} do not sum to {}",
            f.dim,
            cell.dim,
            s.nvars()
        )));
    }
    Ok(cell)
}

/// The complex assembled from the duals of all tropical faces.
pub fn cells_via_duality(s: &TropSystem) -> Result<PrevarietyComplex> {
    let cells = tropical_faces(&dual_subdivision(s))
        .iter()
        .map(|f| dual_cell(s, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(PrevarietyComplex::assemble(s.nvars(), cells))
}

/// Cell indices grouped by connected component, in order of each
/// component's smallest cell.
pub fn connected_components(c: &PrevarietyComplex) -> Vec<Vec<usize>> {
    let ncomp = c.component_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); ncomp];
    for (cell, &comp) in c.component_of.iter().enumerate() {
        out[comp].push(cell);
    }
    out
}

/// `φ(V)`, the number of cells of all dimensions.
pub fn face_count(c: &PrevarietyComplex) -> usize {
    c.cells.len()
}
