//! Dense exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[BigInt], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| {
        if x.is_zero() {
            acc
        } else {
            acc + y * x
        }
    })
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Rational], s: &Rational) -> Vec<Rational> {
    a.iter().map(|x| x * s).collect()
}

/// Brings `rows` into reduced row echelon form, pivoting only on the first
/// `pivot_cols` columns (trailing columns are carried along, e.g. a right-hand
/// side). Zero rows are dropped. Returns the pivot column of each kept row.
pub fn rref(rows: &mut Vec<Vec<Rational>>, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Basis of `{ v : row · v = 0 for every row }` in dimension `ncols`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn determinant(mat: &[Vec<Rational>]) -> Rational {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            let (top, bottom) = m.split_at_mut(i);
            for (x, p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x -= &f * p;
            }
        }
    }
    det
}

/// Solution set of `rows[i] · x = rhs[i]` as `x0 + span(directions)`, or
/// `None` when the system is inconsistent.
pub fn affine_solutions(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    ncols: usize,
) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut probe = m.clone();
    let pivots = rref(&mut m, ncols);
    // inconsistent iff the augmented matrix has larger rank
    if rref(&mut probe, ncols + 1).len() > pivots.len() {
        return None;
    }
    let mut x0 = vec![Rational::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x0[p] = row[ncols].clone();
    }
    let coeffs: Vec<Vec<Rational>> = m.iter().map(|r| r[..ncols].to_vec()).collect();
    Some((x0, nullspace(&coeffs, ncols)))
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
/// Returns the integer vector and the factor used. Zero vectors map to zero
/// with factor one.
pub fn primitive(v: &[Rational]) -> (Vec<BigInt>, Rational) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (ints, Rational::one());
    }
    let ints = ints.into_iter().map(|x| x / &g).collect();
    (ints, Rational::new(lcm, g))
}

pub fn first_nonzero_sign(v: &[BigInt]) -> i32 {
    for x in v {
        if x.is_positive() {
            return 1;
        }
        if x.is_negative() {
            return -1;
        }
    }
    0
}

/// Writes `num/den` as `coeff * sqrt(radicand)` with a squarefree radicand:
/// the square root of a positive rational.
pub fn sqrt_rational(g: &Rational) -> (Rational, BigInt) {
    assert!(g.is_positive(), "square root of a non-positive rational");
    // sqrt(p/q) = sqrt(p q) / q
    let pq = g.numer() * g.denom();
    let (outer, inner) = squarefree_split(&pq);
    (Rational::new(outer, g.denom().clone()), inner)
}

/// Splits a positive integer as `outer^2 * inner` with `inner` squarefree.
pub fn squarefree_split(v: &BigInt) -> (BigInt, BigInt) {
    let mut rest = v.clone();
    let mut outer = BigInt::one();
    let mut inner = BigInt::one();
    let mut p = BigInt::from(2u32);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            outer *= &p;
        }
        if e % 2 == 1 {
            inner *= &p;
        }
        p += 1u32;
    }
    inner *= rest;
    (outer, inner)
}
