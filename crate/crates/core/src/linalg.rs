//! Fraction-free integer linear algebra on small dense matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Vector = Vec<BigInt>;

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Determinant by Bareiss elimination. Every intermediate is a minor of the
/// input, so sizes stay bounded.
pub(crate) fn det(mut m: Vec<Vector>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Pivot columns of a row-echelon form of `rows`; their count is the rank.
pub(crate) fn pivot_columns(rows: &[Vector], ncols: usize) -> Vec<usize> {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            let reduced: Vector = m[i]
                .iter()
                .zip(&m[r])
                .map(|(x, y)| x * &a - y * &b)
                .collect();
            m[i] = primitive(reduced);
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vector], ncols: usize) -> usize {
    pivot_columns(rows, ncols).len()
}

/// Divides a vector by the gcd of its entries.
pub(crate) fn primitive(v: Vector) -> Vector {
    let g = content(&v);
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Normal of the hyperplane through `d` points in `Z^d`: the generalized
/// cross product of the `d - 1` edge vectors from the first point.
pub(crate) fn hyperplane_normal(points: &[&Vector]) -> Vector {
    let d = points[0].len();
    let edges: Vec<Vector> = points[1..].iter().map(|p| sub(p, points[0])).collect();
    (0..d)
        .map(|skip| {
            let minor: Vec<Vector> = edges
                .iter()
                .map(|e| {
                    e.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let v = det(minor);
            if skip % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// `|det|` of the simplex edge matrix `p_i - apex`.
pub(crate) fn simplex_measure(apex: &[BigInt], others: &[&Vector]) -> BigInt {
    det(others.iter().map(|p| sub(p, apex)).collect()).abs()
}
