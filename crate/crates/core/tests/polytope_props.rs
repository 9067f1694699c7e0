use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use vitushkin_core::polytope::{convex_hull, shifted_projection_profile, LatticePoint, LatticePolytope};
use vitushkin_core::rational::{factorial, int};
use vitushkin_core::Rational;

fn point(c: &[i64]) -> LatticePoint {
    LatticePoint::new(c.to_vec()).unwrap()
}

fn cloud(dim: usize, max_len: usize) -> impl Strategy<Value = Vec<LatticePoint>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, dim), 1..max_len)
        .prop_map(|pts| pts.into_iter().map(|c| LatticePoint::new(c).unwrap()).collect())
}

/// Twice the area of the convex hull, by gift wrapping plus shoelace.
fn shoelace_twice_area(points: &[LatticePoint]) -> i64 {
    let mut pts: Vec<(i64, i64)> = points.iter().map(|p| (p.coords()[0], p.coords()[1])).collect();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let n = lower.len();
    (0..n)
        .map(|i| {
            let (a, b) = (lower[i], lower[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum::<i64>()
        .abs()
}

#[test]
fn standard_polytopes() {
    assert_eq!(LatticePolytope::cube(3, 2).unwrap().volume().value, int(8));
    for n in 1..=4 {
        for d in 1..=6 {
            let v = LatticePolytope::simplex(n, d).unwrap().full_volume();
            assert_eq!(v * Rational::from_integer(factorial(n)), int(d.pow(n as u32)));
        }
    }
}

#[test]
fn hexagon_area() {
    let hex = convex_hull(&[
        point(&[1, 0]),
        point(&[2, 0]),
        point(&[3, 1]),
        point(&[2, 2]),
        point(&[1, 2]),
        point(&[0, 1]),
    ])
    .unwrap();
    assert_eq!(hex.vertices().len(), 6);
    assert_eq!(hex.volume().value, int(4));
}

proptest! {
    #[test]
    fn hull_is_idempotent(pts in cloud(3, 14)) {
        let hull = convex_hull(&pts).unwrap();
        let again = convex_hull(hull.vertices()).unwrap();
        prop_assert_eq!(hull, again);
    }

    #[test]
    fn hull_ignores_input_order(pts in cloud(2, 14)) {
        let mut rev = pts.clone();
        rev.reverse();
        prop_assert_eq!(convex_hull(&pts).unwrap(), convex_hull(&rev).unwrap());
    }

    #[test]
    fn planar_volume_matches_shoelace(pts in cloud(2, 14)) {
        let hull = convex_hull(&pts).unwrap();
        if hull.affine_dim() == 2 {
            let expect = Rational::new(BigInt::from(shoelace_twice_area(&pts)), BigInt::from(2));
            prop_assert_eq!(hull.volume().value, expect);
        }
        prop_assert_eq!(
            hull.full_volume() * int(2),
            int(shoelace_twice_area(&pts))
        );
    }

    #[test]
    fn volume_is_translation_invariant(pts in cloud(3, 10), shift in prop::collection::vec(-20i64..=20, 3)) {
        let hull = convex_hull(&pts).unwrap();
        let moved = hull.translate(&LatticePoint::new(shift).unwrap()).unwrap();
        prop_assert_eq!(hull.volume(), moved.volume());
    }

    #[test]
    fn adding_points_never_shrinks_volume(pts in cloud(3, 10), extra in cloud(3, 4)) {
        let small = convex_hull(&pts).unwrap();
        let mut all = pts.clone();
        all.extend(extra);
        let big = convex_hull(&all).unwrap();
        prop_assert!(big.full_volume() >= small.full_volume());
    }

    #[test]
    fn vertices_are_input_points(pts in cloud(3, 12)) {
        let hull = convex_hull(&pts).unwrap();
        for v in hull.vertices() {
            prop_assert!(pts.contains(v));
        }
    }

    #[test]
    fn clipped_profile_never_exceeds_unclipped(pts in cloud(2, 8)) {
        let hull = convex_hull(&pts).unwrap();
        for s in 1..=2 {
            let open = shifted_projection_profile(&hull, s, false).unwrap().value;
            let clip = shifted_projection_profile(&hull, s, true).unwrap().value;
            prop_assert!(clip <= open);
            prop_assert!(!clip.is_negative() && !open.is_negative());
        }
    }

    #[test]
    fn projection_volume_bounded_by_profile(pts in cloud(3, 8)) {
        let hull = convex_hull(&pts).unwrap();
        let profile = shifted_projection_profile(&hull, 3, false).unwrap();
        if hull.affine_dim() == 3 {
            prop_assert!(!profile.value.is_zero());
        }
    }
}
