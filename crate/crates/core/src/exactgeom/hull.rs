//! Convex hulls by incremental insertion (beneath-beyond) with exact
//! orientation tests, and Minkowski sums.
//!
//! Points are first mapped into coordinates of their affine hull: the pivot
//! coordinates of the direction space, which project the hull injectively.
//! Facets are kept as hyperplanes together with the set of inserted points on
//! them, so non-simplicial facets and coplanar insertions need no special
//! perturbation.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::linalg::{affine_solutions, dot, nullspace, rank, rref, sub};
use super::{Constraint, Rational};
use crate::error::{Error, Result};

/// A polyhedron given by vertices and (optionally) recession rays.
///
/// Vertices are irredundant and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Vec<Rational>>,
    rays: Vec<Vec<Rational>>,
}

/// A facet as an inequality `⟨normal, x⟩ >= offset` valid on the hull, with
/// the indices of the hull vertices lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub inequality: Constraint,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub polytope: VPolytope,
    /// Equations of the affine hull.
    pub equalities: Vec<Constraint>,
    /// Facets within the affine hull. Empty for a single point.
    pub facets: Vec<Facet>,
    pub affine_dim: usize,
}

impl VPolytope {
    pub fn from_points(dim: usize, points: &[Vec<Rational>]) -> Result<Self> {
        Self::with_rays(dim, points, &[])
    }

    /// `conv(points) + cone(rays)`. Zero rays are ignored.
    pub fn with_rays(dim: usize, points: &[Vec<Rational>], rays: &[Vec<Rational>]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        for p in points.iter().chain(rays) {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
        }
        let mut rays: Vec<Vec<Rational>> = rays
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        rays.sort();
        rays.dedup();
        if rays.is_empty() {
            let vertices = convex_hull(points)?.polytope.vertices;
            return Ok(VPolytope {
                dim,
                vertices,
                rays,
            });
        }
        // A point of `points` is a vertex of conv(points) + cone(rays) iff it
        // is a vertex of the finite hull of points and points shifted by rays.
        let mut cloud: Vec<Vec<Rational>> = points.to_vec();
        for p in points {
            for r in &rays {
                cloud.push(p.iter().zip(r).map(|(a, b)| a + b).collect());
            }
        }
        let hull = convex_hull(&cloud)?;
        let vertices = hull
            .polytope
            .vertices
            .into_iter()
            .filter(|v| points.contains(v))
            .collect();
        Ok(VPolytope {
            dim,
            vertices,
            rays,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Dimension of the affine hull of the vertices plus the rays' span.
    pub fn affine_dim(&self) -> usize {
        let base = &self.vertices[0];
        let mut rows: Vec<Vec<Rational>> = self.vertices[1..].iter().map(|v| sub(v, base)).collect();
        rows.extend(self.rays.iter().cloned());
        if rows.is_empty() {
            0
        } else {
            rank(&rows)
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        assert!(factor.is_positive());
        let mut vertices: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x * factor).collect())
            .collect();
        vertices.sort();
        VPolytope {
            dim: self.dim,
            vertices,
            rays: self.rays.clone(),
        }
    }

    pub fn translated(&self, shift: &[Rational]) -> Self {
        let mut vertices: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(shift).map(|(a, b)| a + b).collect())
            .collect();
        vertices.sort();
        VPolytope {
            dim: self.dim,
            vertices,
            rays: self.rays.clone(),
        }
    }

    pub fn hull(&self) -> Result<Hull> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        convex_hull(&self.vertices)
    }
}

/// Minkowski sum of two polyhedra in the same ambient space.
pub fn minkowski_sum(a: &VPolytope, b: &VPolytope) -> Result<VPolytope> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let mut sums = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for u in &a.vertices {
        for v in &b.vertices {
            sums.push(u.iter().zip(v).map(|(x, y)| x + y).collect());
        }
    }
    let rays: Vec<Vec<Rational>> = a.rays.iter().chain(&b.rays).cloned().collect();
    VPolytope::with_rays(a.dim, &sums, &rays)
}

/// Vertices and facets of the convex hull of a nonempty point set.
pub fn convex_hull(points: &[Vec<Rational>]) -> Result<Hull> {
    let Some(first) = points.first() else {
        return Err(Error::EmptyPolyhedron);
    };
    let n = first.len();
    if let Some(p) = points.iter().find(|p| p.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();

    let base = pts[0].clone();
    let mut dirs: Vec<Vec<Rational>> = pts[1..].iter().map(|p| sub(p, &base)).collect();
    let pivots = if dirs.is_empty() { Vec::new() } else { rref(&mut dirs, n) };
    let r = pivots.len();

    let equalities = {
        let normals = nullspace(&dirs, n);
        let mut m: Vec<Vec<Rational>> = normals
            .iter()
            .map(|e| {
                let mut row = e.clone();
                row.push(dot(e, &base));
                row
            })
            .collect();
        rref(&mut m, n);
        m.iter()
            .map(|row| Constraint::equation(&row[..n], row[n].clone()))
            .collect()
    };

    let local: Vec<Vec<Rational>> = pts
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();
    let (is_vertex, facets) = local_hull(&local, r);

    let vertex_ids: Vec<Option<usize>> = {
        let mut next = 0;
        is_vertex
            .iter()
            .map(|&v| {
                v.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let vertices: Vec<Vec<Rational>> = pts
        .iter()
        .zip(&is_vertex)
        .filter(|(_, &v)| v)
        .map(|(p, _)| p.clone())
        .collect();

    let mut out_facets: Vec<Facet> = facets
        .into_iter()
        .map(|f| {
            let mut normal = vec![Rational::zero(); n];
            for (k, &c) in pivots.iter().enumerate() {
                normal[c] = f.normal[k].clone();
            }
            let vertices = f.on.iter().filter_map(|&i| vertex_ids[i]).collect();
            Facet {
                inequality: Constraint::inequality(&normal, f.offset),
                vertices,
            }
        })
        .collect();
    out_facets.sort_by(|a, b| a.inequality.cmp(&b.inequality));

    Ok(Hull {
        polytope: VPolytope {
            dim: n,
            vertices,
            rays: Vec::new(),
        },
        equalities,
        facets: out_facets,
        affine_dim: r,
    })
}

struct LocalFacet {
    normal: Vec<Rational>,
    offset: Rational,
    on: BTreeSet<usize>,
}

impl LocalFacet {
    fn eval(&self, p: &[Rational]) -> Rational {
        dot(&self.normal, p) - &self.offset
    }
}

fn plane_key(normal: &[Rational], offset: &Rational) -> (Vec<num_bigint::BigInt>, Rational) {
    let (p, f) = super::linalg::primitive(normal);
    (p, offset * f)
}

fn dimension_of(pts: &[Vec<Rational>], ids: &[usize]) -> isize {
    match ids.split_first() {
        None => -1,
        Some((&b, rest)) => {
            if rest.is_empty() {
                return 0;
            }
            let rows: Vec<Vec<Rational>> = rest.iter().map(|&i| sub(&pts[i], &pts[b])).collect();
            rank(&rows) as isize
        }
    }
}

/// Hyperplane through `ids` (affine dimension r-1 in R^r), oriented so that
/// `inside` is on the positive side.
fn hyperplane_through(pts: &[Vec<Rational>], ids: &[usize], inside: &[Rational]) -> (Vec<Rational>, Rational) {
    let b = &pts[ids[0]];
    let rows: Vec<Vec<Rational>> = ids[1..].iter().map(|&i| sub(&pts[i], b)).collect();
    let ns = nullspace(&rows, b.len());
    debug_assert_eq!(ns.len(), 1, "points do not span a hyperplane");
    let mut normal = ns.into_iter().next().expect("hyperplane normal");
    let mut offset = dot(&normal, b);
    let side = dot(&normal, inside) - &offset;
    debug_assert!(!side.is_zero(), "orientation point lies on the hyperplane");
    if side.is_negative() {
        normal.iter_mut().for_each(|x| *x = -x.clone());
        offset = -offset;
    }
    (normal, offset)
}

/// Hull of full-dimensional points in R^r. Returns the vertex flags and the
/// facets with the indices of inserted points on them.
fn local_hull(pts: &[Vec<Rational>], r: usize) -> (Vec<bool>, Vec<LocalFacet>) {
    let m = pts.len();
    if r == 0 {
        return (vec![true; m], Vec::new());
    }
    if r == 1 {
        let lo = (0..m).min_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).expect("nonempty");
        let hi = (0..m).max_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).expect("nonempty");
        let mut flags = vec![false; m];
        flags[lo] = true;
        flags[hi] = true;
        let one = Rational::from_integer(1.into());
        let facets = vec![
            LocalFacet {
                normal: vec![one.clone()],
                offset: pts[lo][0].clone(),
                on: BTreeSet::from([lo]),
            },
            LocalFacet {
                normal: vec![-one],
                offset: -pts[hi][0].clone(),
                on: BTreeSet::from([hi]),
            },
        ];
        return (flags, facets);
    }

    // initial simplex
    let mut simplex = vec![0usize];
    for i in 1..m {
        if simplex.len() == r + 1 {
            break;
        }
        let mut trial = simplex.clone();
        trial.push(i);
        if dimension_of(pts, &trial) == simplex.len() as isize {
            simplex = trial;
        }
    }
    debug_assert_eq!(simplex.len(), r + 1);

    let mut facets: Vec<LocalFacet> = Vec::new();
    for (k, &omit) in simplex.iter().enumerate() {
        let ids: Vec<usize> = simplex
            .iter()
            .enumerate()
            .filter_map(|(j, &i)| (j != k).then_some(i))
            .collect();
        let (normal, offset) = hyperplane_through(pts, &ids, &pts[omit]);
        facets.push(LocalFacet {
            normal,
            offset,
            on: ids.into_iter().collect(),
        });
    }

    let mut inserted: Vec<usize> = simplex.clone();
    for p in 0..m {
        if simplex.contains(&p) {
            continue;
        }
        let vals: Vec<Rational> = facets.iter().map(|f| f.eval(&pts[p])).collect();
        if !vals.iter().any(Signed::is_negative) {
            continue;
        }
        let mut created: Vec<LocalFacet> = Vec::new();
        for (fi, f) in facets.iter().enumerate() {
            if !vals[fi].is_negative() {
                continue;
            }
            for (gi, g) in facets.iter().enumerate() {
                if vals[gi].is_negative() || vals[gi].is_zero() {
                    continue;
                }
                let ridge: Vec<usize> = f.on.intersection(&g.on).copied().collect();
                if dimension_of(pts, &ridge) != r as isize - 2 {
                    continue;
                }
                let inside = f
                    .on
                    .iter()
                    .find(|i| !g.on.contains(i))
                    .map(|&i| pts[i].clone())
                    .expect("visible facet has a point off the ridge");
                let mut ids = ridge.clone();
                ids.push(p);
                let (normal, offset) = hyperplane_through(pts, &ids, &inside);
                let key = plane_key(&normal, &offset);
                match created.iter_mut().find(|c| plane_key(&c.normal, &c.offset) == key) {
                    Some(c) => c.on.extend(ids),
                    None => created.push(LocalFacet {
                        normal,
                        offset,
                        on: ids.into_iter().collect(),
                    }),
                }
            }
        }
        let mut kept: Vec<LocalFacet> = Vec::with_capacity(facets.len() + created.len());
        for (f, v) in facets.into_iter().zip(vals) {
            if v.is_negative() {
                continue;
            }
            let mut f = f;
            if v.is_zero() {
                f.on.insert(p);
            }
            kept.push(f);
        }
        kept.extend(created);
        facets = kept;
        inserted.push(p);
    }

    let mut flags = vec![false; m];
    for &i in &inserted {
        let normals: Vec<Vec<Rational>> = facets
            .iter()
            .filter(|f| f.on.contains(&i))
            .map(|f| f.normal.clone())
            .collect();
        flags[i] = !normals.is_empty() && rank(&normals) == r;
    }
    for f in facets.iter_mut() {
        f.on.retain(|&i| flags[i]);
    }
    (flags, facets)
}

/// True when `x` lies in the convex hull of `points` (exact LP).
pub fn in_hull(points: &[Vec<Rational>], x: &[Rational]) -> bool {
    // x = sum lambda_i p_i, sum lambda_i = 1, lambda >= 0
    let m = points.len();
    let n = x.len();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|c| points.iter().map(|p| p[c].clone()).collect())
        .collect();
    let mut rhs: Vec<Rational> = x.to_vec();
    rows.push(vec![Rational::from_integer(1.into()); m]);
    rhs.push(Rational::from_integer(1.into()));
    let Some((_, _)) = affine_solutions(&rows, &rhs, m) else {
        return false;
    };
    let mut sys = super::LinearSystem::new(m);
    for (row, b) in rows.into_iter().zip(rhs) {
        sys.push(row, super::Relation::Eq, b);
    }
    for i in 0..m {
        let mut e = vec![Rational::zero(); m];
        e[i] = Rational::from_integer(1.into());
        sys.push(e, super::Relation::Ge, Rational::zero());
    }
    sys.find_point().is_some()
}
