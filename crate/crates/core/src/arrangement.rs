//! The arrangement of all pairwise monomial-tie hyperplanes of a system and
//! the enumeration of its faces by sign vectors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactgeom::linalg::{dot, dot_int, nullspace, rat, rref, to_rationals};
use crate::exactgeom::{Constraint, HPolyhedron, LinearSystem, Rational, Relation};
use crate::tropical::TropSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Pos
        } else if q.is_negative() {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// `⟨normal, x⟩ = offset`, normal primitive with a positive leading entry.
/// `sources` lists every `(i, j1, j2)` with `L_{i,j1} = L_{i,j2}` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
    pub sources: Vec<(usize, usize, usize)>,
}

impl Hyperplane {
    pub fn side(&self, x: &[Rational]) -> Sign {
        Sign::of(&(dot_int(&self.normal, x) - &self.offset))
    }

    fn slack(&self, x: &[Rational]) -> Rational {
        dot_int(&self.normal, x) - &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
    /// Pairs with equal exponent vectors and different constants: they never
    /// tie, the smaller constant always wins.
    parallel_pairs: Vec<(usize, usize, usize)>,
}

impl Arrangement {
    pub fn from_hyperplanes(dim: usize, hyperplanes: Vec<Hyperplane>) -> Self {
        Arrangement {
            dim,
            hyperplanes,
            parallel_pairs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn parallel_pairs(&self) -> &[(usize, usize, usize)] {
        &self.parallel_pairs
    }

    pub fn sign_vector(&self, x: &[Rational]) -> Vec<Sign> {
        self.hyperplanes.iter().map(|h| h.side(x)).collect()
    }

    /// The closed polyhedron of all points whose signs weakly agree with
    /// `signs` (zeros become equations).
    pub fn closure_of(&self, signs: &[Sign]) -> HPolyhedron {
        let mut p = HPolyhedron::whole_space(self.dim);
        for (h, s) in self.hyperplanes.iter().zip(signs) {
            match s {
                Sign::Zero => p.add_equality(Constraint {
                    normal: h.normal.clone(),
                    offset: h.offset.clone(),
                }),
                Sign::Pos => p.add_inequality(Constraint {
                    normal: h.normal.clone(),
                    offset: h.offset.clone(),
                }),
                Sign::Neg => p.add_inequality(Constraint {
                    normal: h.normal.iter().map(|x| -x.clone()).collect(),
                    offset: -h.offset.clone(),
                }),
            }
        }
        p
    }

    /// The open face with exactly these signs as a system with strict rows.
    pub fn face_system(&self, signs: &[Sign]) -> LinearSystem {
        let mut sys = LinearSystem::new(self.dim);
        for (h, s) in self.hyperplanes.iter().zip(signs) {
            push_sign(&mut sys, h, *s);
        }
        sys
    }
}

fn push_sign(sys: &mut LinearSystem, h: &Hyperplane, s: Sign) {
    let n = to_rationals(&h.normal);
    match s {
        Sign::Zero => sys.push(n, Relation::Eq, h.offset.clone()),
        Sign::Pos => sys.push(n, Relation::Gt, h.offset.clone()),
        Sign::Neg => sys.push(n.into_iter().map(|x| -x).collect(), Relation::Gt, -h.offset.clone()),
    }
}

/// One hyperplane per polynomial and unordered monomial pair, merged when
/// geometrically equal. Ordered by first source, so each polynomial's
/// hyperplanes appear no later than those of the polynomials after it.
pub fn build_arrangement(s: &TropSystem) -> Arrangement {
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let mut parallel_pairs = Vec::new();
    for (i, f) in s.polys().iter().enumerate() {
        let ms = f.monomials();
        for j1 in 0..ms.len() {
            for j2 in j1 + 1..ms.len() {
                let diff: Vec<Rational> = ms[j1]
                    .exponents
                    .iter()
                    .zip(&ms[j2].exponents)
                    .map(|(a, b)| rat(a - b))
                    .collect();
                if diff.iter().all(Zero::is_zero) {
                    parallel_pairs.push((i, j1, j2));
                    continue;
                }
                // L1 = L2  <=>  ⟨a1 - a2, x⟩ = b2 - b1
                let c = Constraint::equation(&diff, &ms[j2].constant - &ms[j1].constant);
                match hyperplanes
                    .iter_mut()
                    .find(|h| h.normal == c.normal && h.offset == c.offset)
                {
                    Some(h) => h.sources.push((i, j1, j2)),
                    None => hyperplanes.push(Hyperplane {
                        normal: c.normal,
                        offset: c.offset,
                        sources: vec![(i, j1, j2)],
                    }),
                }
            }
        }
    }
    Arrangement {
        dim: s.nvars(),
        hyperplanes,
        parallel_pairs,
    }
}

/// A relatively open face of an arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrFace {
    pub signs: Vec<Sign>,
    pub closure: HPolyhedron,
    pub dim: usize,
    pub bounded: bool,
    /// A point of the relative interior.
    pub witness: Vec<Rational>,
}

impl ArrFace {
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.symbol()).collect()
    }
}

impl fmt::Display for ArrFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] dim {}", self.sign_string(), self.dim)
    }
}

/// A face found during enumeration, before closure data is attached.
#[derive(Clone, Debug)]
pub(crate) struct RawFace {
    pub signs: Vec<Sign>,
    pub witness: Vec<Rational>,
    pub dim: usize,
}

struct Node {
    signs: Vec<Sign>,
    witness: Vec<Rational>,
    /// Reduced echelon rows spanning the normals of the zero-sign hyperplanes.
    zero_rows: Vec<Vec<Rational>>,
    /// Hyperplanes whose sign constraints cut out the face; the others are
    /// implied by these.
    active: Vec<usize>,
}

impl Node {
    fn in_zero_span(&self, normal: &[Rational]) -> bool {
        let mut rows = self.zero_rows.clone();
        let before = rows.len();
        rows.push(normal.to_vec());
        rref(&mut rows, normal.len()).len() == before
    }

    fn child(&self, s: Sign, witness: Vec<Rational>, h_normal: &[Rational], cuts: bool) -> Node {
        let mut signs = self.signs.clone();
        let mut active = self.active.clone();
        if cuts {
            active.push(signs.len());
        }
        signs.push(s);
        let zero_rows = if s == Sign::Zero {
            let mut rows = self.zero_rows.clone();
            rows.push(h_normal.to_vec());
            rref(&mut rows, h_normal.len());
            rows
        } else {
            self.zero_rows.clone()
        };
        Node {
            signs,
            witness,
            zero_rows,
            active,
        }
    }

    fn system(&self, a: &Arrangement) -> LinearSystem {
        let mut sys = LinearSystem::new(a.dim);
        for &i in &self.active {
            push_sign(&mut sys, &a.hyperplanes[i], self.signs[i]);
        }
        sys
    }
}

/// All faces, keeping only subtrees accepted by `keep(depth, witness)`.
/// `keep` is consulted once all of the first `depth` hyperplanes have signs.
pub(crate) fn enumerate_pruned(
    a: &Arrangement,
    keep: &mut dyn FnMut(usize, &[Rational]) -> bool,
) -> Vec<RawFace> {
    let n = a.dim;
    let root = Node {
        signs: Vec::new(),
        witness: vec![Rational::zero(); n],
        zero_rows: Vec::new(),
        active: Vec::new(),
    };
    let mut out = Vec::new();
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        let depth = node.signs.len();
        if !keep(depth, &node.witness) {
            continue;
        }
        if depth == a.hyperplanes.len() {
            out.push(RawFace {
                dim: n - node.zero_rows.len(),
                signs: node.signs,
                witness: node.witness,
            });
            continue;
        }
        let h = &a.hyperplanes[depth];
        let hn = to_rationals(&h.normal);
        let here = h.slack(&node.witness);
        let sigma = Sign::of(&here);
        let mut children: Vec<Node> = Vec::with_capacity(3);
        if node.in_zero_span(&hn) {
            // h is constant on the face
            children.push(node.child(sigma, node.witness.clone(), &hn, false));
        } else if sigma == Sign::Zero {
            let (plus, minus) = nudge(a, &node, &hn);
            children.push(node.child(Sign::Neg, minus, &hn, true));
            children.push(node.child(Sign::Zero, node.witness.clone(), &hn, true));
            children.push(node.child(Sign::Pos, plus, &hn, true));
        } else {
            let opposite = if sigma == Sign::Pos { Sign::Neg } else { Sign::Pos };
            let mut sys = node.system(a);
            push_sign(&mut sys, h, opposite);
            match sys.find_point() {
                None => children.push(node.child(sigma, node.witness.clone(), &hn, false)),
                Some(u) => {
                    let there = h.slack(&u);
                    let t = &here / (&here - &there);
                    let z: Vec<Rational> = node
                        .witness
                        .iter()
                        .zip(&u)
                        .map(|(w, ui)| w + &t * (ui - w))
                        .collect();
                    let (pos, neg) = if sigma == Sign::Pos {
                        (node.witness.clone(), u)
                    } else {
                        (u, node.witness.clone())
                    };
                    children.push(node.child(Sign::Neg, neg, &hn, true));
                    children.push(node.child(Sign::Zero, z, &hn, true));
                    children.push(node.child(Sign::Pos, pos, &hn, true));
                }
            }
        }
        // reverse so the stack pops in sign order
        stack.extend(children.into_iter().rev());
    }
    out.sort_by(|x, y| x.signs.cmp(&y.signs));
    out
}

/// Points on both sides of `h` near the witness of a face that `h` crosses
/// through its relative interior.
fn nudge(a: &Arrangement, node: &Node, hn: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dirs = nullspace(&node.zero_rows, a.dim);
    let v = dirs
        .into_iter()
        .find(|d| !dot(d, hn).is_zero())
        .expect("hyperplane is not constant on the face");
    let rate = dot(&v, hn);
    let mut eps = Rational::one();
    for (g, s) in a.hyperplanes.iter().zip(&node.signs) {
        if *s == Sign::Zero {
            continue;
        }
        let c = dot_int(&g.normal, &v);
        if c.is_zero() {
            continue;
        }
        let room = (g.slack(&node.witness) / c).abs();
        if room < eps {
            eps = room;
        }
    }
    eps /= rat(2);
    let step = if rate.is_positive() { eps } else { -eps };
    let plus = node.witness.iter().zip(&v).map(|(w, d)| w + &step * d).collect();
    let minus = node.witness.iter().zip(&v).map(|(w, d)| w - &step * d).collect();
    (plus, minus)
}

/// Every nonempty face, sorted by sign vector.
pub fn enumerate_faces(a: &Arrangement) -> Vec<ArrFace> {
    enumerate_pruned(a, &mut |_, _| true)
        .into_iter()
        .map(|f| {
            let closure = a.closure_of(&f.signs);
            let bounded = f.dim == 0 || closure.is_bounded();
            ArrFace {
                signs: f.signs,
                closure,
                dim: f.dim,
                bounded,
                witness: f.witness,
            }
        })
        .collect()
}

/// The number of faces of all dimensions.
pub fn face_count(a: &Arrangement) -> usize {
    enumerate_pruned(a, &mut |_, _| true).len()
}
