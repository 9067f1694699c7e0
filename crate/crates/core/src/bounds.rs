//! Covering bound `M(ε, A) ≤ Σ_{t<n} C_t/ε^t + μ(A)/ε^n` with
//! `C_t = Ĉ_{n-t} · 2^t · binom(n, t)`, evaluated exactly at rational ε.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::diagram::BoundPair;
use crate::rational::{binomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BoundsError {
    #[error("expected {expected} Gabrielov constants (one per section dimension 0..=n), found {found}")]
    ProfileLength { expected: usize, found: usize },
    #[error("volume term must lie in [0, 1]")]
    MuOutOfRange,
    #[error("Gabrielov constants must be nonnegative")]
    NegativeConstant,
    #[error("epsilon must lie in (0, 1]")]
    EpsilonOutOfRange,
}

/// Gabrielov constants `Ĉ_0 … Ĉ_n` (indexed by section dimension) and the
/// volume term of a set inside the unit cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundProfile {
    n: usize,
    gabrielov: Vec<BoundPair>,
    mu: Rational,
}

impl BoundProfile {
    pub fn new(n: usize, gabrielov: Vec<BoundPair>, mu: Rational) -> Result<Self, BoundsError> {
        if gabrielov.len() != n + 1 {
            return Err(BoundsError::ProfileLength {
                expected: n + 1,
                found: gabrielov.len(),
            });
        }
        if gabrielov
            .iter()
            .any(|c| c.paper.is_negative() || c.safe.is_negative())
        {
            return Err(BoundsError::NegativeConstant);
        }
        check_mu(&mu)?;
        Ok(Self { n, gabrielov, mu })
    }

    /// Profile whose paper and safe variants coincide.
    pub fn exact(n: usize, constants: &[Rational], mu: Rational) -> Result<Self, BoundsError> {
        let pairs = constants
            .iter()
            .map(|c| BoundPair::exact(c.clone()))
            .collect();
        Self::new(n, pairs, mu)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gabrielov(&self) -> &[BoundPair] {
        &self.gabrielov
    }

    /// Constant for sections of dimension `s`.
    pub fn section(&self, s: usize) -> Option<&BoundPair> {
        self.gabrielov.get(s)
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    pub fn with_mu(mut self, mu: Rational) -> Result<Self, BoundsError> {
        check_mu(&mu)?;
        self.mu = mu;
        Ok(self)
    }
}

fn check_mu(mu: &Rational) -> Result<(), BoundsError> {
    if mu.is_negative() || *mu > Rational::one() {
        Err(BoundsError::MuOutOfRange)
    } else {
        Ok(())
    }
}

/// Coefficients `C_0 … C_{n-1}` in both variants plus the volume term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssembledBound {
    n: usize,
    coefficients: Vec<BoundPair>,
    mu: Rational,
}

pub fn assemble(profile: &BoundProfile) -> AssembledBound {
    let n = profile.n;
    let coefficients = (0..n)
        .map(|t| {
            let source = &profile.gabrielov[n - t];
            let weight = Rational::from_integer(binomial(n, t) << t);
            BoundPair {
                paper: &source.paper * &weight,
                safe: &source.safe * &weight,
                degenerate: source.degenerate,
            }
        })
        .collect();
    AssembledBound {
        n,
        coefficients,
        mu: profile.mu.clone(),
    }
}

impl AssembledBound {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[BoundPair] {
        &self.coefficients
    }

    pub fn mu(&self) -> &Rational {
        &self.mu
    }

    /// Exact right-hand side at `eps ∈ (0, 1]`.
    pub fn evaluate(&self, eps: &Rational) -> Result<BoundPair, BoundsError> {
        if !eps.is_positive() || *eps > Rational::one() {
            return Err(BoundsError::EpsilonOutOfRange);
        }
        let inv = eps.recip();
        let mut scale = Rational::one();
        let mut paper = Rational::zero();
        let mut safe = Rational::zero();
        let mut degenerate = false;
        for c in &self.coefficients {
            paper += &c.paper * &scale;
            safe += &c.safe * &scale;
            degenerate |= c.degenerate;
            scale *= &inv;
        }
        let volume = &self.mu * &scale;
        paper += &volume;
        safe += volume;
        Ok(BoundPair {
            paper,
            safe,
            degenerate,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub epsilon: Rational,
    pub paper: Rational,
    pub safe: Rational,
}

pub fn bound_table(bound: &AssembledBound, eps: &[Rational]) -> Result<Vec<BoundRow>, BoundsError> {
    eps.iter()
        .map(|e| {
            bound.evaluate(e).map(|v| BoundRow {
                epsilon: e.clone(),
                paper: v.paper,
                safe: v.safe,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use alloc::vec;

    fn profile(n: usize, chat: &[i64], mu: Rational) -> BoundProfile {
        let c: Vec<Rational> = chat.iter().map(|&x| int(x)).collect();
        BoundProfile::exact(n, &c, mu).unwrap()
    }

    #[test]
    fn assembly_examples() {
        let b = assemble(&profile(2, &[1, 2, 1], int(1)));
        let c: Vec<Rational> = b.coefficients().iter().map(|c| c.safe.clone()).collect();
        assert_eq!(c, vec![int(1), int(8)]);

        let b = assemble(&profile(1, &[1, 2], int(1)));
        assert_eq!(b.coefficients()[0].paper, int(2));

        let b = assemble(&profile(3, &[0, 0, 0, 0], int(0)));
        assert!(b.coefficients().iter().all(|c| c.paper.is_zero() && c.safe.is_zero()));
    }

    #[test]
    fn evaluation_examples() {
        let b = assemble(&profile(2, &[1, 2, 1], int(1)));
        assert_eq!(b.evaluate(&int(1)).unwrap().safe, int(1 + 8 + 1));
        assert_eq!(b.evaluate(&ratio(1, 2)).unwrap().paper, int(21));

        let b = assemble(&profile(1, &[1, 2], ratio(1, 2)));
        assert_eq!(b.evaluate(&ratio(1, 10)).unwrap().safe, int(7));
    }

    #[test]
    fn epsilon_range_is_enforced() {
        let b = assemble(&profile(1, &[1, 2], int(1)));
        assert_eq!(b.evaluate(&int(0)), Err(BoundsError::EpsilonOutOfRange));
        assert_eq!(b.evaluate(&ratio(3, 2)), Err(BoundsError::EpsilonOutOfRange));
        assert_eq!(b.evaluate(&ratio(-1, 2)), Err(BoundsError::EpsilonOutOfRange));
    }

    #[test]
    fn tables() {
        let b = assemble(&profile(2, &[1, 2, 1], ratio(1, 3)));
        assert!(bound_table(&b, &[]).unwrap().is_empty());
        let rows = bound_table(&b, &[int(1), ratio(1, 2), ratio(1, 4)]).unwrap();
        assert_eq!(rows[1].safe, b.evaluate(&ratio(1, 2)).unwrap().safe);
        assert!(rows.windows(2).all(|w| w[0].safe <= w[1].safe));
        assert!(bound_table(&b, &[ratio(1, 2), int(2)]).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(matches!(
            BoundProfile::exact(2, &[int(1), int(1)], int(1)),
            Err(BoundsError::ProfileLength { expected: 3, found: 2 })
        ));
        assert_eq!(
            BoundProfile::exact(1, &[int(1), int(1)], ratio(3, 2)),
            Err(BoundsError::MuOutOfRange)
        );
        assert_eq!(
            BoundProfile::exact(1, &[int(1), int(-1)], int(0)),
            Err(BoundsError::NegativeConstant)
        );
    }
}
