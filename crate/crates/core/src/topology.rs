//! Betti numbers of a prevariety: factor out the lineality space of each
//! connected component, retract onto the bounded cells, take the order
//! complex of their face poset and compute rational homology ranks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactgeom::{Constraint, HPolyhedron, Rational};
use crate::prevariety::{cells_via_arrangement, connected_components, PrevarietyCell};
use crate::tropical::TropSystem;
use crate::{Error, Result};

/// Betti numbers `b_0, b_1, ...` with trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiVector(Vec<usize>);

impl BettiVector {
    pub fn new(mut b: Vec<usize>) -> Self {
        while b.last() == Some(&0) {
            b.pop();
        }
        BettiVector(b)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, nu: usize) -> usize {
        self.0.get(nu).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(nu, &b)| if nu % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn add(&self, other: &BettiVector) -> BettiVector {
        let n = self.0.len().max(other.0.len());
        BettiVector::new((0..n).map(|nu| self.get(nu) + other.get(nu)).collect())
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

/// Closed cells with their face relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    pub cells: Vec<PrevarietyCell>,
    /// `(cell, proper face)`.
    pub faces: Vec<(usize, usize)>,
}

impl CellComplex {
    /// Face relation by tie-pattern containment.
    pub fn from_cells(cells: Vec<PrevarietyCell>) -> Self {
        let mut faces = Vec::new();
        for (a, ca) in cells.iter().enumerate() {
            for (b, cb) in cells.iter().enumerate() {
                if a != b && cb.pattern.contains(&ca.pattern) {
                    faces.push((a, b));
                }
            }
        }
        CellComplex { cells, faces }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `Σ (-1)^dim` over cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

/// An abstract simplicial complex; simplices are sorted vertex lists and the
/// set is closed under taking faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub num_vertices: usize,
    pub simplices: BTreeSet<Vec<usize>>,
    pub coordinates: Option<Vec<Vec<Rational>>>,
}

impl SimplicialComplex {
    /// The downward closure of the given simplices.
    pub fn from_maximal(num_vertices: usize, maximal: &[Vec<usize>]) -> Self {
        let mut simplices = BTreeSet::new();
        for s in maximal {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                simplices.insert(
                    (0..k)
                        .filter(|b| mask >> b & 1 == 1)
                        .map(|b| s[b])
                        .collect(),
                );
            }
        }
        SimplicialComplex {
            num_vertices,
            simplices,
            coordinates: None,
        }
    }

    pub fn dim(&self) -> isize {
        self.simplices.iter().map(|s| s.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn count_of_dim(&self, p: usize) -> usize {
        self.simplices.iter().filter(|s| s.len() == p + 1).count()
    }

    pub fn is_closed(&self) -> bool {
        self.simplices.iter().all(|s| {
            s.len() == 1
                || (0..s.len()).all(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    self.simplices.contains(&f)
                })
        })
    }
}

fn orthogonal_complement_through_origin(basis: &[Vec<BigInt>], dim: usize) -> HPolyhedron {
    let mut t = HPolyhedron::whole_space(dim);
    for v in basis {
        let normal: Vec<Rational> = v.iter().cloned().map(Rational::from_integer).collect();
        t.add_equality(Constraint::equation(&normal, Rational::zero()));
    }
    t
}

/// Intersects every cell with the orthogonal complement `T` of the largest
/// lineality space in the component. Returns its dimension and the cut
/// cells, none of which contains a line.
pub fn reduce_lineality(component: &[PrevarietyCell]) -> (usize, Vec<PrevarietyCell>) {
    let Some(widest) = component.iter().max_by_key(|c| c.lineality_dim) else {
        return (0, Vec::new());
    };
    let d = widest.lineality_dim;
    if d == 0 {
        return (0, component.to_vec());
    }
    let basis = widest.closure.lineality_space().expect("cells are nonempty");
    let t = orthogonal_complement_through_origin(&basis, widest.closure.dim());
    let reduced = component
        .iter()
        .map(|c| {
            let closure = c.closure.intersect(&t).expect("same dimension").canonical();
            let witness = closure.relint_point().expect("cell meets T");
            let dim = closure.affine_dim().max(0) as usize;
            PrevarietyCell {
                pattern: c.pattern.clone(),
                bounded: dim == 0 || closure.is_bounded(),
                lineality_dim: closure.lineality_space().map_or(0, |l| l.len()),
                closure,
                dim,
                witness,
            }
        })
        .collect();
    (d, reduced)
}

/// The subcomplex of bounded cells, a deformation retract of a complex in
/// which no cell contains a line.
pub fn bounded_subcomplex(reduced: &[PrevarietyCell]) -> Result<CellComplex> {
    if reduced.iter().any(|c| c.lineality_dim > 0) {
        return Err(Error::ContainsLine);
    }
    Ok(CellComplex::from_cells(
        reduced.iter().filter(|c| c.bounded).cloned().collect(),
    ))
}

/// The order complex of the face poset: one vertex per cell (placed at its
/// witness point), one simplex per chain of faces.
pub fn triangulate(c: &CellComplex) -> Result<SimplicialComplex> {
    if c.cells.iter().any(|cell| !cell.bounded) {
        return Err(Error::Unbounded);
    }
    let mut below: Vec<Vec<usize>> = vec![Vec::new(); c.len()];
    for &(a, b) in &c.faces {
        below[a].push(b);
    }
    let mut simplices = BTreeSet::new();
    let mut stack: Vec<Vec<usize>> = (0..c.len()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        let top = *chain.last().expect("nonempty chain");
        for &f in &below[top] {
            let mut longer = chain.clone();
            longer.push(f);
            stack.push(longer);
        }
        let mut s = chain;
        s.sort_unstable();
        simplices.insert(s);
    }
    Ok(SimplicialComplex {
        num_vertices: c.len(),
        simplices,
        coordinates: Some(c.cells.iter().map(|cell| cell.witness.clone()).collect()),
    })
}

/// Rank of a sparse matrix given by rows, over the rationals.
fn sparse_rank(mut rows: Vec<BTreeMap<usize, Rational>>) -> usize {
    let mut rank = 0;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for row in rows.iter_mut() {
        while let Some((&col, _)) = row.iter().next() {
            match pivots.get(&col) {
                Some(p) => {
                    let f = row[&col].clone() / &p[&col];
                    for (c, v) in p {
                        let e = row.entry(*c).or_insert_with(Rational::zero);
                        *e -= &f * v;
                        if e.is_zero() {
                            row.remove(c);
                        }
                    }
                }
                None => {
                    pivots.insert(col, std::mem::take(row));
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Rational Betti numbers from boundary ranks.
pub fn betti(sc: &SimplicialComplex) -> BettiVector {
    let top = sc.dim();
    if top < 0 {
        return BettiVector::default();
    }
    let top = top as usize;
    let by_dim: Vec<Vec<&Vec<usize>>> = (0..=top)
        .map(|p| sc.simplices.iter().filter(|s| s.len() == p + 1).collect())
        .collect();
    // rank of ∂_p : C_p -> C_{p-1}, for p = 1..=top
    let mut ranks = vec![0usize; top + 2];
    for p in 1..=top {
        let index: BTreeMap<&Vec<usize>, usize> =
            by_dim[p - 1].iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let rows = by_dim[p]
            .iter()
            .map(|s| {
                let mut row = BTreeMap::new();
                for i in 0..s.len() {
                    let mut f = (*s).clone();
                    f.remove(i);
                    let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                    row.insert(index[&f], sign);
                }
                row
            })
            .collect();
        ranks[p] = sparse_rank(rows);
    }
    BettiVector::new(
        (0..=top)
            .map(|p| by_dim[p].len() - ranks[p] - ranks[p + 1])
            .collect(),
    )
}

/// The homotopy model of one connected component.
#[derive(Clone, Debug)]
pub struct ComponentModel {
    pub cells: Vec<usize>,
    pub lineality_dim: usize,
    pub retract: CellComplex,
    pub triangulation: SimplicialComplex,
    pub betti: BettiVector,
}

pub fn component_models(s: &TropSystem) -> Result<Vec<ComponentModel>> {
    let complex = cells_via_arrangement(s);
    connected_components(&complex)
        .into_iter()
        .map(|ids| {
            let cells: Vec<PrevarietyCell> = ids.iter().map(|&i| complex.cells[i].clone()).collect();
            let (d, reduced) = reduce_lineality(&cells);
            let retract = bounded_subcomplex(&reduced)?;
            if retract.is_empty() {
                return Err(Error::Invariant("component without a bounded cell".into()));
            }
            let triangulation = triangulate(&retract)?;
            let betti = betti(&triangulation);
            Ok(ComponentModel {
                cells: ids,
                lineality_dim: d,
                retract,
                triangulation,
                betti,
            })
        })
        .collect()
}

/// Betti numbers of `V`, summed over connected components.
pub fn betti_of_prevariety(s: &TropSystem) -> Result<BettiVector> {
    Ok(component_models(s)?
        .iter()
        .fold(BettiVector::default(), |acc, m| acc.add(&m.betti)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::poly;

    #[test]
    fn betti_of_small_complexes() {
        let point = SimplicialComplex::from_maximal(1, &[vec![0]]);
        assert_eq!(betti(&point).as_slice(), &[1]);
        let two = SimplicialComplex::from_maximal(2, &[vec![0], vec![1]]);
        assert_eq!(betti(&two).as_slice(), &[2]);
        let hollow = SimplicialComplex::from_maximal(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(betti(&hollow).as_slice(), &[1, 1]);
        let filled = SimplicialComplex::from_maximal(3, &[vec![0, 1, 2]]);
        assert_eq!(betti(&filled).as_slice(), &[1]);
        let empty = SimplicialComplex::from_maximal(0, &[]);
        assert_eq!(betti(&empty), BettiVector::default());
        // hollow tetrahedron: a 2-sphere
        let sphere = SimplicialComplex::from_maximal(
            4,
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        );
        assert_eq!(betti(&sphere).as_slice(), &[1, 0, 1]);
    }

    #[test]
    fn tropical_line_is_contractible() {
        let s = TropSystem::new(2, vec![poly(&[(&[1, 0], 0), (&[0, 1], 0), (&[0, 0], 0)])]).unwrap();
        let models = component_models(&s).unwrap();
        assert_eq!(models.len(), 1);
        assert_eq!(models[0].lineality_dim, 0);
        assert_eq!(models[0].retract.len(), 1);
        assert_eq!(betti_of_prevariety(&s).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn lineality_is_factored_out() {
        let line = TropSystem::new(2, vec![poly(&[(&[1, 0], 0), (&[0, 0], 0)])]).unwrap();
        let complex = cells_via_arrangement(&line);
        let (d, reduced) = reduce_lineality(&complex.cells);
        assert_eq!(d, 1);
        assert_eq!(reduced.len(), 1);
        assert_eq!(reduced[0].dim, 0);
        assert!(bounded_subcomplex(&complex.cells).is_err());

        let plane = TropSystem::new(3, vec![poly(&[(&[1, 0, 0], 0), (&[0, 0, 0], 0)])]).unwrap();
        let models = component_models(&plane).unwrap();
        assert_eq!(models[0].lineality_dim, 2);
        assert_eq!(betti_of_prevariety(&plane).unwrap().as_slice(), &[1]);
    }

    #[test]
    fn order_complex_is_closed() {
        // the line x = 0, split at the origin by y = 0 = x
        let s = TropSystem::new(
            2,
            vec![
                poly(&[(&[1, 0], 0), (&[0, 0], 0)]),
                poly(&[(&[0, 1], 0), (&[0, 0], 0), (&[1, 0], 0)]),
            ],
        )
        .unwrap();
        let models = component_models(&s).unwrap();
        assert_eq!(models.len(), 1);
        let tri = &models[0].triangulation;
        assert!(tri.is_closed());
        assert_eq!(betti(tri).as_slice(), &[1]);
    }

    #[test]
    fn empty_prevariety() {
        let s = TropSystem::new(2, vec![poly(&[(&[0, 0], 5)])]).unwrap();
        assert_eq!(betti_of_prevariety(&s).unwrap(), BettiVector::default());
    }
}
