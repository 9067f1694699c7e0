//! Lattice polytopes with exact volumes.
//!
//! Polytopes are stored by their extreme points in lexicographic order, so
//! two polytopes are equal exactly when their vertex lists are. Volumes are
//! exact rationals; nothing here touches floating point.
//!
//! A polytope whose affine hull has dimension `s` below the ambient dimension
//! reports its `s`-volume measured against the integer lattice of its affine
//! hull (for spans parallel to a coordinate subspace this is the ordinary
//! Lebesgue measure). [`LatticePolytope::full_volume`] gives the ambient
//! `n`-volume instead, which is zero for such polytopes.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::hull::{self, Analysis};
use crate::linalg::{self, Vector};
use crate::rational::{factorial, Rational};

/// Largest ambient dimension accepted anywhere in this module.
pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("dimension {0} outside 1..={MAX_DIM}")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("axis {axis} out of range for dimension {dim}")]
    InvalidAxis { axis: usize, dim: usize },
    #[error("axis {0} listed twice")]
    DuplicateAxis(usize),
    #[error("no axes given")]
    NoAxes,
    #[error("subspace dimension {s} outside 1..={n}")]
    SubspaceOutOfRange { s: usize, n: usize },
    #[error("coordinate overflow")]
    Overflow,
}

/// Integer exponent vector; negative entries are allowed (Laurent monomials).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Result<Self, PolytopeError> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(PolytopeError::DimensionOutOfRange(coords.len()));
        }
        Ok(Self(coords))
    }

    pub fn zero(dim: usize) -> Result<Self, PolytopeError> {
        Self::new(alloc::vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn to_big(&self) -> Vector {
        self.0.iter().map(|&x| BigInt::from(x)).collect()
    }
}

impl From<LatticePoint> for Vec<i64> {
    fn from(p: LatticePoint) -> Self {
        p.0
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Exact volume together with the dimension it is measured in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Volume {
    pub dim: usize,
    pub value: Rational,
}

/// Convex hull of finitely many lattice points, kept as its extreme points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    affine_dim: usize,
    vertices: Vec<LatticePoint>,
}

pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolytope, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::EmptyPointSet)?;
    let n = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(PolytopeError::DimensionMismatch {
            expected: n,
            found: p.dim(),
        });
    }
    let big: Vec<Vector> = points.iter().map(LatticePoint::to_big).collect();
    let analysis = hull::analyze(&big);
    let mut vertices: Vec<LatticePoint> = analysis
        .vertices
        .iter()
        .map(|&i| points[i].clone())
        .collect();
    vertices.sort();
    Ok(LatticePolytope {
        ambient_dim: n,
        affine_dim: analysis.affine_dim,
        vertices,
    })
}

impl LatticePolytope {
    /// The box `[0, side]^n`.
    pub fn cube(n: usize, side: i64) -> Result<Self, PolytopeError> {
        let corners: Vec<LatticePoint> = (0..1usize << n.min(MAX_DIM + 1))
            .map(|mask| {
                LatticePoint::new((0..n).map(|i| side * ((mask >> i) & 1) as i64).collect())
            })
            .collect::<Result<_, _>>()?;
        convex_hull(&corners)
    }

    /// The simplex `{α ≥ 0, |α| ≤ d}`, Newton polytope of a generic
    /// degree-`d` polynomial.
    pub fn simplex(n: usize, d: i64) -> Result<Self, PolytopeError> {
        let mut corners = alloc::vec![LatticePoint::zero(n)?];
        for i in 0..n {
            let mut c = alloc::vec![0; n];
            c[i] = d;
            corners.push(LatticePoint::new(c)?);
        }
        convex_hull(&corners)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.affine_dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn translate(&self, v: &LatticePoint) -> Result<Self, PolytopeError> {
        if v.dim() != self.ambient_dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.dim(),
            });
        }
        let vertices = self
            .vertices
            .iter()
            .map(|p| {
                p.0.iter()
                    .zip(&v.0)
                    .map(|(a, b)| a.checked_add(*b).ok_or(PolytopeError::Overflow))
                    .collect::<Result<Vec<_>, _>>()
                    .map(LatticePoint)
            })
            .collect::<Result<Vec<_>, _>>()?;
        // translation preserves lexicographic order
        Ok(Self {
            ambient_dim: self.ambient_dim,
            affine_dim: self.affine_dim,
            vertices,
        })
    }

    /// Coordinate projection onto `axes` (0-based), in the given order.
    pub fn project(&self, axes: &[usize]) -> Result<Self, PolytopeError> {
        check_axes(axes, self.ambient_dim)?;
        let projected: Vec<LatticePoint> = self
            .vertices
            .iter()
            .map(|p| LatticePoint(axes.iter().map(|&a| p.0[a]).collect()))
            .collect();
        convex_hull(&projected)
    }

    /// Exact volume in the polytope's own affine dimension.
    pub fn volume(&self) -> Volume {
        let big: Vec<Vector> = self.vertices.iter().map(LatticePoint::to_big).collect();
        let analysis = hull::analyze(&big);
        let s = analysis.affine_dim;
        let mut value = Rational::new(analysis.scaled_volume.clone(), factorial(s));
        if s > 0 && s < self.ambient_dim {
            value *= lattice_correction(&big, &analysis);
        }
        Volume { dim: s, value }
    }

    /// Volume in the ambient dimension; zero unless full-dimensional.
    pub fn full_volume(&self) -> Rational {
        if self.affine_dim == self.ambient_dim {
            self.volume().value
        } else {
            Rational::zero()
        }
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("conv{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({v})")?;
        }
        f.write_str("}")
    }
}

fn check_axes(axes: &[usize], dim: usize) -> Result<(), PolytopeError> {
    if axes.is_empty() {
        return Err(PolytopeError::NoAxes);
    }
    for (i, &a) in axes.iter().enumerate() {
        if a >= dim {
            return Err(PolytopeError::InvalidAxis { axis: a, dim });
        }
        if axes[..i].contains(&a) {
            return Err(PolytopeError::DuplicateAxis(a));
        }
    }
    Ok(())
}

/// Ratio between the lattice-normalized volume of a lower-dimensional
/// polytope and the volume of its projection onto `analysis.frame`.
///
/// With `B` an integer basis of edge vectors, the saturated lattice of the
/// span has index `g = gcd(maximal minors of B)` over `B`, so the factor is
/// `g / |det B_frame|`.
fn lattice_correction(points: &[Vector], analysis: &Analysis) -> Rational {
    let n = points[0].len();
    let s = analysis.affine_dim;
    let base = &points[analysis.vertices[0]];
    let mut basis: Vec<Vector> = Vec::with_capacity(s);
    for &i in &analysis.vertices[1..] {
        if basis.len() == s {
            break;
        }
        basis.push(linalg::sub(&points[i], base));
        if linalg::rank(&basis, n) < basis.len() {
            basis.pop();
        }
    }
    debug_assert_eq!(basis.len(), s);
    let minor = |cols: &[usize]| -> BigInt {
        linalg::det(
            basis
                .iter()
                .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
                .collect(),
        )
    };
    let mut g = BigInt::zero();
    for cols in combinations(n, s) {
        g = g.gcd(&minor(&cols));
    }
    Rational::new(g, minor(&analysis.frame).abs())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Maximum of the shifted-projection volumes over coordinate subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceProfile {
    pub value: Rational,
    /// 0-based axes of the maximizing subspace (first in lexicographic order).
    pub axes: Vec<usize>,
}

/// For every `s`-subset `P` of axes, takes the hull of the projections of `N`
/// onto `P` shifted by `-e_i` for each `i ∈ P`, optionally clipped to the
/// nonnegative orthant, and returns the largest exact `s`-volume.
pub fn shifted_projection_profile(
    newton: &LatticePolytope,
    s: usize,
    orthant_clip: bool,
) -> Result<SubspaceProfile, PolytopeError> {
    let n = newton.ambient_dim;
    if s == 0 || s > n {
        return Err(PolytopeError::SubspaceOutOfRange { s, n });
    }
    let mut best: Option<SubspaceProfile> = None;
    for axes in combinations(n, s) {
        let mut cloud: Vec<Vector> = Vec::with_capacity(s * newton.vertices.len());
        for shift in 0..s {
            for v in &newton.vertices {
                let mut p: Vector = axes.iter().map(|&a| BigInt::from(v.0[a])).collect();
                p[shift] -= 1;
                cloud.push(p);
            }
        }
        let value = if orthant_clip {
            clipped_volume(cloud)
        } else {
            full_dim_volume(&cloud)
        };
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(SubspaceProfile { value, axes });
        }
    }
    Ok(best.expect("at least one subspace"))
}

fn full_dim_volume(points: &[Vector]) -> Rational {
    let d = points[0].len();
    let a = hull::analyze(points);
    if a.affine_dim < d {
        Rational::zero()
    } else {
        Rational::new(a.scaled_volume, factorial(d))
    }
}

/// Volume of `conv(points) ∩ {x ≥ 0}`.
///
/// Cutting by one halfspace at a time: the cut polytope is the hull of the
/// kept vertices and of every crossing of the hyperplane by a segment joining
/// two vertices on opposite sides. Crossings are rational, so the working set
/// is `points / denom` with integer `points`.
fn clipped_volume(points: Vec<Vector>) -> Rational {
    let d = points[0].len();
    let mut denom = BigInt::from(1);
    let mut current = reduce_to_vertices(points);
    for axis in 0..d {
        if current.iter().all(|p| !p[axis].is_negative()) {
            continue;
        }
        let (below, above): (Vec<&Vector>, Vec<&Vector>) =
            current.iter().partition(|p| p[axis].is_negative());
        let crossers: Vec<&&Vector> = above.iter().filter(|p| p[axis].is_positive()).collect();
        if above.is_empty() {
            return Rational::zero();
        }
        let mut lcm = BigInt::from(1);
        for u in &below {
            for w in &crossers {
                lcm = lcm.lcm(&(&w[axis] - &u[axis]));
            }
        }
        let mut next: Vec<Vector> = above
            .iter()
            .map(|p| p.iter().map(|x| x * &lcm).collect())
            .collect();
        for u in &below {
            for w in &crossers {
                let gap = &w[axis] - &u[axis];
                let factor = &lcm / &gap;
                next.push(
                    u.iter()
                        .zip(w.iter())
                        .map(|(ux, wx)| (ux * &w[axis] - wx * &u[axis]) * &factor)
                        .collect(),
                );
            }
        }
        denom *= lcm;
        // keep numbers small
        let g = next.iter().fold(denom.clone(), |g, p| g.gcd(&linalg::content(p)));
        if g > BigInt::from(1) {
            denom /= &g;
            for p in &mut next {
                for x in p.iter_mut() {
                    *x /= &g;
                }
            }
        }
        current = reduce_to_vertices(next);
    }
    let scaled = full_dim_volume(&current);
    let mut den_pow = BigInt::from(1);
    for _ in 0..d {
        den_pow *= &denom;
    }
    scaled / Rational::from_integer(den_pow)
}

fn reduce_to_vertices(points: Vec<Vector>) -> Vec<Vector> {
    let a = hull::analyze(&points);
    a.vertices.iter().map(|&i| points[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::new(c.to_vec()).unwrap()
    }

    fn hull_of(raw: &[&[i64]]) -> LatticePolytope {
        convex_hull(&raw.iter().map(|c| lp(c)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hull_drops_interior_points() {
        let p = hull_of(&[&[0, 0], &[3, 0], &[0, 3], &[1, 1]]);
        assert_eq!(p.vertices(), &[lp(&[0, 0]), lp(&[0, 3]), lp(&[3, 0])]);
    }

    #[test]
    fn hull_keeps_affinely_independent_points() {
        let p = hull_of(&[&[2, 1], &[0, 3], &[0, 0]]);
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn hull_3d_drops_point_beyond_face() {
        // (1,1,1) violates x + y + z <= 2, so it is an extra vertex
        let p = hull_of(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]);
        assert_eq!(p.vertices().len(), 5);
        // a genuinely interior point is dropped
        let q = hull_of(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]);
        assert_eq!(q.vertices().len(), 4);
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(&[]), Err(PolytopeError::EmptyPointSet));
        assert!(matches!(
            convex_hull(&[lp(&[0, 0]), lp(&[1])]),
            Err(PolytopeError::DimensionMismatch { .. })
        ));
        assert!(LatticePoint::new(vec![]).is_err());
        assert!(LatticePoint::new(vec![0; 9]).is_err());
    }

    #[test]
    fn translation_examples() {
        let t = hull_of(&[&[0, 0], &[3, 0], &[0, 3]]);
        let moved = t.translate(&lp(&[-1, 0])).unwrap();
        assert_eq!(moved, hull_of(&[&[-1, 0], &[2, 0], &[-1, 3]]));
        assert_eq!(t.translate(&lp(&[0, 0])).unwrap(), t);
        let seg = hull_of(&[&[0], &[2]]).translate(&lp(&[-1])).unwrap();
        assert_eq!(seg.vertices(), &[lp(&[-1]), lp(&[1])]);
        assert!(t.translate(&lp(&[1])).is_err());
    }

    #[test]
    fn projection_examples() {
        let cube = LatticePolytope::cube(3, 2).unwrap();
        assert_eq!(cube.project(&[0, 2]).unwrap(), LatticePolytope::cube(2, 2).unwrap());
        let t = hull_of(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(t.project(&[0]).unwrap().vertices(), &[lp(&[0]), lp(&[3])]);
        let seg = hull_of(&[&[-1, 0], &[1, 1]]);
        assert_eq!(seg.project(&[1]).unwrap().vertices(), &[lp(&[0]), lp(&[1])]);
        assert!(matches!(t.project(&[2]), Err(PolytopeError::InvalidAxis { .. })));
        assert!(matches!(t.project(&[0, 0]), Err(PolytopeError::DuplicateAxis(0))));
        assert_eq!(t.project(&[]), Err(PolytopeError::NoAxes));
    }

    #[test]
    fn volume_examples() {
        let t = hull_of(&[&[0, 0], &[3, 0], &[0, 3]]);
        assert_eq!(t.volume(), Volume { dim: 2, value: ratio(9, 2) });
        assert_eq!(LatticePolytope::cube(3, 2).unwrap().volume().value, int(8));
        let hex = hull_of(&[&[-1, 0], &[-1, 2], &[1, 2], &[2, 1], &[2, -1], &[0, -1]]);
        assert_eq!(hex.volume().value, int(8));
    }

    #[test]
    fn lower_dimensional_volumes() {
        // axis-parallel segment in R^2: ordinary length
        let seg = hull_of(&[&[0, 1], &[0, 4]]);
        assert_eq!(seg.volume(), Volume { dim: 1, value: int(3) });
        assert_eq!(seg.full_volume(), int(0));
        // diagonal segment (0,0)-(2,2): two primitive lattice steps
        let diag = hull_of(&[&[0, 0], &[2, 2]]);
        assert_eq!(diag.volume(), Volume { dim: 1, value: int(2) });
        // square [0,1]^2 embedded in the plane x + y - z = 0 of R^3
        let tilted = hull_of(&[&[0, 0, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
        assert_eq!(tilted.volume(), Volume { dim: 2, value: int(1) });
        let point = hull_of(&[&[5, 5]]);
        assert_eq!(point.volume(), Volume { dim: 0, value: int(1) });
        assert_eq!(point.full_volume(), int(0));
    }

    #[test]
    fn profile_examples() {
        let sq = LatticePolytope::cube(2, 2).unwrap();
        let open = shifted_projection_profile(&sq, 2, false).unwrap();
        assert_eq!(open.value, int(8));
        assert_eq!(open.axes, vec![0, 1]);
        let clipped = shifted_projection_profile(&sq, 2, true).unwrap();
        assert_eq!(clipped.value, ratio(7, 2));
        let point = hull_of(&[&[0, 0]]);
        assert_eq!(shifted_projection_profile(&point, 1, false).unwrap().value, int(0));
        assert_eq!(shifted_projection_profile(&point, 2, true).unwrap().value, int(0));
        assert!(shifted_projection_profile(&sq, 3, false).is_err());
        assert!(shifted_projection_profile(&sq, 0, false).is_err());
    }

    #[test]
    fn clipping_produces_rational_vertices() {
        // N = segment (0,0)-(2,1): shifted hull has vertices (-1,0), (0,-1),
        // (2,0), (1,1); the edge (-1,0)-(1,1) meets x = 0 at y = 1/2 and the
        // edge (0,-1)-(2,0) meets y = 0 at x = 2. Clipped region: polygon
        // (0,0), (2,0), (1,1), (0,1/2); shoelace gives 5/4.
        let seg = hull_of(&[&[0, 0], &[2, 1]]);
        assert_eq!(shifted_projection_profile(&seg, 2, true).unwrap().value, ratio(5, 4));
        // unclipped: parallelogram with sides (1,-1), (2,1)
        assert_eq!(shifted_projection_profile(&seg, 2, false).unwrap().value, int(3));
    }

    #[test]
    fn simplex_volume_times_factorial_is_power() {
        for n in 1..=4 {
            for d in 1..=6i64 {
                let v = LatticePolytope::simplex(n, d).unwrap().volume().value;
                let expect = Rational::from_integer(BigInt::from(d).pow(n as u32));
                assert_eq!(v * Rational::from_integer(factorial(n)), expect);
            }
        }
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }
}
