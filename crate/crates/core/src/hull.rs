//! Exact incremental convex hull (beneath-beyond) over integer points.
//!
//! The boundary is kept as a triangulation: every facet is a `(d-1)`-simplex
//! carrying its supporting hyperplane. A new point only replaces facets it
//! sees strictly, so coplanar points extend faces with coplanar simplices and
//! no tolerance is ever needed.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{self, Vector};

struct Facet {
    verts: Vec<usize>,
    normal: Vector,
    offset: BigInt,
}

struct Triangulation {
    dim: usize,
    facets: Vec<Facet>,
}

/// What the hull engine reports about a finite point set.
pub(crate) struct Analysis {
    /// Dimension of the affine hull.
    pub affine_dim: usize,
    /// Indices (into the input) of the extreme points, one per distinct point.
    pub vertices: Vec<usize>,
    /// Coordinates on which the projection is injective over the affine hull.
    pub frame: Vec<usize>,
    /// `s!` times the `s`-volume of the projection onto `frame`.
    pub scaled_volume: BigInt,
}

pub(crate) fn analyze(points: &[Vector]) -> Analysis {
    debug_assert!(!points.is_empty());
    let n = points[0].len();

    // one representative index per distinct point
    let mut seen: BTreeMap<&Vector, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        seen.entry(p).or_insert(i);
    }
    let unique: Vec<usize> = seen.values().copied().collect();

    let base = &points[unique[0]];
    let diffs: Vec<Vector> = unique[1..]
        .iter()
        .map(|&i| linalg::sub(&points[i], base))
        .collect();
    let frame = linalg::pivot_columns(&diffs, n);
    let s = frame.len();

    let projected: Vec<Vector> = unique
        .iter()
        .map(|&i| frame.iter().map(|&c| points[i][c].clone()).collect())
        .collect();

    let (local_vertices, scaled_volume) = match s {
        0 => (alloc::vec![0], BigInt::from(1)),
        1 => {
            let (lo, hi) = extremes_1d(&projected);
            let len = &projected[hi][0] - &projected[lo][0];
            (alloc::vec![lo, hi], len)
        }
        _ => {
            let tri = beneath_beyond(&projected);
            let verts = extreme_points(&tri, &projected);
            let vol = scaled_volume(&tri, &projected);
            (verts, vol)
        }
    };
    let mut vertices: Vec<usize> = local_vertices.into_iter().map(|i| unique[i]).collect();
    vertices.sort_unstable();
    Analysis {
        affine_dim: s,
        vertices,
        frame,
        scaled_volume,
    }
}

fn extremes_1d(points: &[Vector]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    (lo, hi)
}

/// Hull of distinct, full-dimensional points in `Z^d`, `d >= 2`.
fn beneath_beyond(points: &[Vector]) -> Triangulation {
    let d = points[0].len();

    // initial simplex: greedily extend an affinely independent set
    let mut simplex = alloc::vec![0usize];
    let mut edges: Vec<Vector> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if simplex.len() == d + 1 {
            break;
        }
        edges.push(linalg::sub(p, &points[0]));
        if linalg::rank(&edges, d) == edges.len() {
            simplex.push(i);
        } else {
            edges.pop();
        }
    }
    debug_assert_eq!(simplex.len(), d + 1, "input must be full-dimensional");

    // (d + 1) * centroid of the initial simplex: strictly interior forever
    let mut center = alloc::vec![BigInt::zero(); d];
    for &i in &simplex {
        for (c, x) in center.iter_mut().zip(&points[i]) {
            *c += x;
        }
    }
    let scale = BigInt::from(d + 1);

    let make_facet = |verts: Vec<usize>| -> Facet {
        let refs: Vec<&Vector> = verts.iter().map(|&i| &points[i]).collect();
        let mut normal = linalg::primitive(linalg::hyperplane_normal(&refs));
        let mut offset = linalg::dot(&normal, &points[verts[0]]);
        if linalg::dot(&normal, &center) > &offset * &scale {
            normal = normal.into_iter().map(|x| -x).collect();
            offset = -offset;
        }
        Facet {
            verts,
            normal,
            offset,
        }
    };

    let mut facets: Vec<Facet> = (0..=d)
        .map(|skip| {
            let verts = simplex
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &i)| i)
                .collect();
            make_facet(verts)
        })
        .collect();

    let in_simplex: BTreeSet<usize> = simplex.iter().copied().collect();
    for (p, point) in points.iter().enumerate() {
        if in_simplex.contains(&p) {
            continue;
        }
        let visible: Vec<bool> = facets
            .iter()
            .map(|f| linalg::dot(&f.normal, point) > f.offset)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        // ridges seen once among the visible facets form the horizon
        let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for (f, _) in facets.iter().zip(&visible).filter(|(_, &v)| v) {
            for skip in 0..f.verts.len() {
                let mut ridge: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &i)| i)
                    .collect();
                ridge.sort_unstable();
                *ridges.entry(ridge).or_insert(0) += 1;
            }
        }
        let mut kept: Vec<Facet> = facets
            .into_iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| f)
            .collect();
        for (mut ridge, count) in ridges {
            if count == 1 {
                ridge.push(p);
                kept.push(make_facet(ridge));
            }
        }
        facets = kept;
    }
    Triangulation { dim: d, facets }
}

/// Points of the triangulated boundary whose tight facet hyperplanes pin
/// them down completely.
fn extreme_points(tri: &Triangulation, points: &[Vector]) -> Vec<usize> {
    let planes: BTreeSet<(&Vector, &BigInt)> =
        tri.facets.iter().map(|f| (&f.normal, &f.offset)).collect();
    let candidates: BTreeSet<usize> = tri
        .facets
        .iter()
        .flat_map(|f| f.verts.iter().copied())
        .collect();
    candidates
        .into_iter()
        .filter(|&i| {
            let tight: Vec<Vector> = planes
                .iter()
                .filter(|(n, b)| linalg::dot(n, &points[i]) == **b)
                .map(|(n, _)| (*n).clone())
                .collect();
            linalg::rank(&tight, tri.dim) == tri.dim
        })
        .collect()
}

/// `d!` times the volume, by coning every boundary simplex to one apex.
fn scaled_volume(tri: &Triangulation, points: &[Vector]) -> BigInt {
    let apex = &points[tri.facets[0].verts[0]];
    tri.facets
        .iter()
        .map(|f| {
            let refs: Vec<&Vector> = f.verts.iter().map(|&i| &points[i]).collect();
            linalg::simplex_measure(apex, &refs)
        })
        .fold(BigInt::zero(), |acc, x| acc + x.abs())
}
