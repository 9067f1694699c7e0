use num_bigint::BigInt;
use proptest::prelude::*;
use vitushkin_core::bounds::{assemble, BoundProfile};
use vitushkin_core::diagram::{
    gabrielov_bezout, gabrielov_exponential, gabrielov_multidegree, gabrielov_semialgebraic, khovanskii_bound,
    BoundPair, Diagram, ExpoPolyDiagram, MultiDegreeDiagram, PolyDiagram, SemialgebraicDiagram,
};
use vitushkin_core::rational::{binomial, int, ratio};
use vitushkin_core::Rational;

#[test]
fn bezout_paper_never_exceeds_safe() {
    for d in 1..=12 {
        for s in 1..=12usize {
            let diag = PolyDiagram::new(s, d).unwrap();
            let b = gabrielov_bezout(&diag, s).unwrap();
            assert!(b.paper <= b.safe, "d={d} s={s}");
            assert_eq!(b, gabrielov_bezout(&diag, s).unwrap());
        }
    }
}

#[test]
fn multidegree_variants_differ_by_factorial_squared() {
    for d in 1..=6 {
        for s in 1..=4usize {
            let b = gabrielov_multidegree(&MultiDegreeDiagram::new(s, d).unwrap(), s).unwrap();
            let f = vitushkin_core::rational::factorial(s);
            assert_eq!(b.safe, b.paper * Rational::from_integer(&f * &f));
        }
    }
}

#[test]
fn khovanskii_is_monotone() {
    let mut prev_k = BigInt::from(0);
    for k in 0..5 {
        let v = khovanskii_bound(&[2, 3], k, 1);
        assert!(v >= prev_k);
        prev_k = v;
    }
    let mut prev_p = BigInt::from(0);
    for p in 0..5 {
        let v = khovanskii_bound(&[2, 3], 1, p);
        assert!(v >= prev_p);
        prev_p = v;
    }
    for a in 0..5 {
        for b in 0..5 {
            assert!(khovanskii_bound(&[a + 1, b], 1, 1) >= khovanskii_bound(&[a, b], 1, 1));
        }
    }
}

#[test]
fn semialgebraic_is_monotone() {
    for d in 1..=4 {
        let diag = SemialgebraicDiagram::new(4, vec![vec![d, 1], vec![2]]).unwrap();
        let bigger = SemialgebraicDiagram::new(4, vec![vec![d + 1, 1], vec![2]]).unwrap();
        let mut prev = Rational::from_integer(BigInt::from(0));
        for l in 1..=4 {
            let v = gabrielov_semialgebraic(&diag, l).unwrap();
            assert!(v >= prev);
            assert!(gabrielov_semialgebraic(&bigger, l).unwrap() >= v);
            prev = v;
        }
    }
}

#[test]
fn exponential_safe_dominates_paper() {
    for m in 0..8 {
        for lam in [0.0, 0.5, 3.0] {
            for real in [false, true] {
                let b = gabrielov_exponential(&ExpoPolyDiagram::new(m, lam, real).unwrap(), &int(1)).unwrap();
                assert!(b.paper <= b.safe);
            }
        }
    }
}

#[test]
fn section_profile_dominates_class_constants() {
    for n in 1..=4 {
        for d in 1..=6 {
            let diag = Diagram::Polynomial(PolyDiagram::new(n, d).unwrap());
            let p = diag.section_profile(int(1)).unwrap();
            assert_eq!(p.section(0).unwrap().safe, int(1));
            for s in 1..=n {
                assert!(p.section(s).unwrap().safe > diag.gabrielov(s).unwrap().safe);
                assert_eq!(p.section(s).unwrap().paper, diag.gabrielov(s).unwrap().paper);
            }
        }
    }
}

fn pair(paper: i64, safe: i64) -> BoundPair {
    BoundPair {
        paper: int(paper),
        safe: int(safe),
        degenerate: false,
    }
}

fn profile_strategy() -> impl Strategy<Value = (usize, Vec<(i64, i64)>, i64)> {
    (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec((0i64..50, 0i64..50), n + 1), 0i64..=8))
}

proptest! {
    #[test]
    fn assembly_weights_are_exact((n, chat, mu) in profile_strategy()) {
        let pairs: Vec<BoundPair> = chat.iter().map(|&(p, s)| pair(p, s)).collect();
        let profile = BoundProfile::new(n, pairs, ratio(mu, 8)).unwrap();
        let b = assemble(&profile);
        for t in 0..n {
            let w = Rational::from_integer(binomial(n, t) << t);
            prop_assert_eq!(&b.coefficients()[t].paper, &(int(chat[n - t].0) * &w));
            prop_assert_eq!(&b.coefficients()[t].safe, &(int(chat[n - t].1) * &w));
        }
    }

    #[test]
    fn bound_grows_as_epsilon_shrinks((n, chat, mu) in profile_strategy(), k1 in 1i64..40, k2 in 1i64..40) {
        let pairs: Vec<BoundPair> = chat.iter().map(|&(p, s)| pair(p, s)).collect();
        let b = assemble(&BoundProfile::new(n, pairs, ratio(mu, 8)).unwrap());
        let (lo, hi) = (k1.min(k2), k1.max(k2));
        let coarse = b.evaluate(&ratio(1, lo)).unwrap();
        let fine = b.evaluate(&ratio(1, hi)).unwrap();
        prop_assert!(fine.paper >= coarse.paper);
        prop_assert!(fine.safe >= coarse.safe);
    }

    #[test]
    fn raising_a_constant_never_lowers_the_bound((n, chat, mu) in profile_strategy(), which in 0usize..5, k in 1i64..20) {
        let which = which % (n + 1);
        let base: Vec<BoundPair> = chat.iter().map(|&(p, s)| pair(p, s)).collect();
        let mut raised = base.clone();
        raised[which].safe += int(3);
        raised[which].paper += int(3);
        let eps = ratio(1, k);
        let a = assemble(&BoundProfile::new(n, base, ratio(mu, 8)).unwrap()).evaluate(&eps).unwrap();
        let b = assemble(&BoundProfile::new(n, raised, ratio(mu, 8)).unwrap()).evaluate(&eps).unwrap();
        prop_assert!(b.safe >= a.safe && b.paper >= a.paper);
    }
}
