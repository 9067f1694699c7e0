//! Function-class diagrams and their Gabrielov constants.
//!
//! Every calculator returns a [`BoundPair`]: `paper` is the closed-form
//! constant exactly as published for the class, `safe` is the classical
//! solution count it is derived from (Bézout with degree `d - 1`,
//! Kushnirenko's `s!·Vol`, Khovanskii with a floored cover, zero counts of
//! the level equation). Small witnesses such as `x² + y²` or `xy` exceed some
//! of the published constants; those cases set `degenerate`.
//!
//! [`Diagram::section_profile`] turns critical-point counts into bounds on
//! section components (see there).

use alloc::vec::Vec;
use core::f64::consts::FRAC_2_PI;

use num_bigint::BigInt;
use num_traits::{Float, One, ToPrimitive, Zero};

use crate::bounds::{BoundProfile, BoundsError};
use crate::polytope::{shifted_projection_profile, LatticePolytope, PolytopeError};
use crate::rational::{self, factorial, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DiagramError {
    #[error("section dimension {s} outside 1..={n}")]
    SectionOutOfRange { s: usize, n: usize },
    #[error("invalid diagram: {0}")]
    Invalid(&'static str),
    #[error("cube side must be a nonnegative finite number")]
    BadCubeSide,
    #[error("interval length must be positive")]
    BadIntervalLength,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// A Gabrielov constant in two variants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundPair {
    pub paper: Rational,
    pub safe: Rational,
    /// The published constant is below a count that small witnesses attain.
    pub degenerate: bool,
}

impl BoundPair {
    pub fn exact(value: Rational) -> Self {
        Self {
            paper: value.clone(),
            safe: value,
            degenerate: false,
        }
    }

    /// Flags a published constant that rules out a single critical point
    /// while the classical count admits one.
    fn flagged(paper: Rational, safe: Rational) -> Self {
        let one = Rational::one();
        let degenerate = paper < one && safe >= one;
        Self {
            paper,
            safe,
            degenerate,
        }
    }
}

fn check_section(s: usize, n: usize) -> Result<(), DiagramError> {
    if s == 0 || s > n {
        Err(DiagramError::SectionOutOfRange { s, n })
    } else {
        Ok(())
    }
}

fn big_pow(base: u64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

/// Polynomial of total degree `d` in `n` variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyDiagram {
    pub n: usize,
    pub d: u64,
}

impl PolyDiagram {
    pub fn new(n: usize, d: u64) -> Result<Self, DiagramError> {
        if n == 0 || d == 0 {
            return Err(DiagramError::Invalid("polynomial diagram needs n >= 1 and d >= 1"));
        }
        Ok(Self { n, d })
    }
}

/// Polynomial of degree at most `d` in each variable separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiDegreeDiagram {
    pub n: usize,
    pub d: u64,
}

impl MultiDegreeDiagram {
    pub fn new(n: usize, d: u64) -> Result<Self, DiagramError> {
        if n == 0 || d == 0 {
            return Err(DiagramError::Invalid("multi-degree diagram needs n >= 1 and d >= 1"));
        }
        Ok(Self { n, d })
    }
}

/// Laurent polynomial described by its Newton polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentDiagram {
    pub n: usize,
    pub newton: LatticePolytope,
    /// Some exponent is negative.
    pub laurent: bool,
    /// Clip shifted projections to the nonnegative orthant. Defaults to
    /// `!laurent`.
    pub orthant_clip: bool,
}

impl LaurentDiagram {
    pub fn new(newton: LatticePolytope) -> Self {
        let laurent = newton
            .vertices()
            .iter()
            .any(|v| v.coords().iter().any(|&c| c < 0));
        Self {
            n: newton.ambient_dim(),
            newton,
            laurent,
            orthant_clip: !laurent,
        }
    }

    pub fn with_orthant_clip(mut self, clip: bool) -> Self {
        self.orthant_clip = clip;
        self
    }
}

/// Combinatorial data of `p = Σ_j p_j(x) e^{⟨a_j + i b_j, x⟩}` as seen
/// through `q = |p|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiPolyDiagram {
    pub n: usize,
    /// Degree of each polynomial coefficient `p_j`.
    pub degrees: Vec<u64>,
    /// Imaginary parts `b_j` of the exponents.
    pub frequencies: Vec<Vec<f64>>,
    /// Largest pairwise frequency gap `max ‖b_i − b_j‖`.
    pub lambda: f64,
    /// Per-equation degree sums used by the published constant; `None`
    /// means `2·max_j d_j` for every equation.
    pub degree_sums: Option<Vec<u64>>,
}

impl QuasiPolyDiagram {
    pub fn new(n: usize, degrees: Vec<u64>, frequencies: Vec<Vec<f64>>) -> Result<Self, DiagramError> {
        if n == 0 || degrees.is_empty() || degrees.len() != frequencies.len() {
            return Err(DiagramError::Invalid(
                "quasi-polynomial diagram needs k >= 1 terms with one frequency each",
            ));
        }
        if frequencies
            .iter()
            .any(|b| b.len() != n || b.iter().any(|x| !x.is_finite()))
        {
            return Err(DiagramError::Invalid("frequencies must be finite n-vectors"));
        }
        let mut lambda = 0.0f64;
        for (i, bi) in frequencies.iter().enumerate() {
            for bj in &frequencies[i + 1..] {
                let gap: Vec<f64> = bi.iter().zip(bj).map(|(x, y)| x - y).collect();
                lambda = lambda.max(euclidean_norm(&gap));
            }
        }
        Ok(Self {
            n,
            degrees,
            frequencies,
            lambda,
            degree_sums: None,
        })
    }

    pub fn with_degree_sums(mut self, sums: Vec<u64>) -> Self {
        self.degree_sums = Some(sums);
        self
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn kappa(&self) -> usize {
        let k = self.k();
        k * (k + 1) / 2
    }

    /// Degree of the coefficient polynomials of the `(i, j)` term of `|p|²`.
    pub fn pair_degree_sum(&self, i: usize, j: usize) -> Option<u64> {
        Some(self.degrees.get(i)? + self.degrees.get(j)?)
    }

    fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// Overflow-safe Euclidean norm.
pub(crate) fn euclidean_norm(v: &[f64]) -> f64 {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * Float::sqrt(v.iter().map(|x| (x / scale) * (x / scale)).sum::<f64>())
}

/// Univariate exponential polynomial `Σ_{k=0}^m c_k e^{λ_k t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpoPolyDiagram {
    pub m: u64,
    pub lambda_hat: f64,
    pub real_coeffs: bool,
}

impl ExpoPolyDiagram {
    pub fn new(m: u64, lambda_hat: f64, real_coeffs: bool) -> Result<Self, DiagramError> {
        if !(lambda_hat >= 0.0 && lambda_hat.is_finite()) {
            return Err(DiagramError::Invalid("exponent modulus must be finite and nonnegative"));
        }
        Ok(Self {
            m,
            lambda_hat,
            real_coeffs,
        })
    }
}

/// Semialgebraic set `⋃_i ⋂_j {p_ij ⋈ 0}` described by the degrees `d_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemialgebraicDiagram {
    pub n: usize,
    pub degrees: Vec<Vec<u64>>,
}

impl SemialgebraicDiagram {
    pub fn new(n: usize, degrees: Vec<Vec<u64>>) -> Result<Self, DiagramError> {
        if n == 0 || degrees.is_empty() || degrees.iter().any(|row| row.is_empty()) {
            return Err(DiagramError::Invalid(
                "semialgebraic diagram needs n >= 1 and a nonempty row per union member",
            ));
        }
        if degrees.iter().flatten().any(|&d| d == 0) {
            return Err(DiagramError::Invalid("semialgebraic degrees must be positive"));
        }
        Ok(Self { n, degrees })
    }

    pub fn k(&self) -> usize {
        self.degrees.len()
    }

    pub fn intersection_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }
}

/// Bézout: published `(d − s)^s` (zero when `d ≤ s`); safe `(d − 1)^s`,
/// the count for `s` partial derivatives of degree `d − 1`.
pub fn gabrielov_bezout(diag: &PolyDiagram, s: usize) -> Result<BoundPair, DiagramError> {
    check_section(s, diag.n)?;
    let d = diag.d;
    let paper = if d > s as u64 {
        big_pow(d - s as u64, s)
    } else {
        BigInt::zero()
    };
    let safe = big_pow(d - 1, s);
    Ok(BoundPair::flagged(
        Rational::from_integer(paper),
        Rational::from_integer(safe),
    ))
}

/// Multi-degree: published `d^s / s!`; safe `s!·d^s` (Kushnirenko with the
/// common polytope `[0, d]^s`).
pub fn gabrielov_multidegree(diag: &MultiDegreeDiagram, s: usize) -> Result<BoundPair, DiagramError> {
    check_section(s, diag.n)?;
    let power = big_pow(diag.d, s);
    let fact = factorial(s);
    Ok(BoundPair::flagged(
        Rational::new(power.clone(), fact.clone()),
        Rational::from_integer(power * fact),
    ))
}

/// Newton polytope: published `C_s(N) / s!`; safe `s!·C_s(N)`.
pub fn gabrielov_newton(diag: &LaurentDiagram, s: usize) -> Result<BoundPair, DiagramError> {
    check_section(s, diag.n)?;
    let profile = shifted_projection_profile(&diag.newton, s, diag.orthant_clip)?;
    let fact = Rational::from_integer(factorial(s));
    Ok(BoundPair::flagged(
        &profile.value / &fact,
        &profile.value * &fact,
    ))
}

/// `n!·Vol_n(N)`: solution count for `n` Laurent equations sharing the
/// Newton polytope `N` (zero when `N` is not full-dimensional).
pub fn bernstein_kushnirenko_bound(newton: &LatticePolytope) -> Rational {
    newton.full_volume() * Rational::from_integer(factorial(newton.ambient_dim()))
}

/// `m_1⋯m_n · (Σ m_i + p + 1)^{p+k} · 2^{p + (p+k)(p+k−1)/2}` for `n`
/// equations polynomial of degrees `m_i` in `x`, `k` exponentials and `p`
/// sine/cosine pairs.
pub fn khovanskii_bound(m: &[u64], k: u64, p: u64) -> BigInt {
    let product: BigInt = m.iter().map(|&x| BigInt::from(x)).product();
    let sum: u64 = m.iter().sum();
    let extra = (p + k) as usize;
    let base = big_pow(sum + p + 1, extra);
    let two = BigInt::one() << (p as usize + extra * extra.saturating_sub(1) / 2);
    product * base * two
}

/// Quasi-polynomial sub-level sets `{|p| ≤ ρ}` on a cube of side
/// `cube_side`.
///
/// Published: `((2/π)·√s·side·λ)^s · ∏ m_r · (Σ m_r + 2κ + 1)^{2κ} ·
/// 2^{κ + κ(2κ−1)}` with `m_r` the per-equation degree sums. The cover factor
/// is irrational, so `paper` is the exact value of its `f64` evaluation.
///
/// Safe: the cover count is rounded up to whole translates (at least one)
/// and every `m_r` becomes `2·max_j d_j + 1`.
pub fn gabrielov_quasipoly(
    diag: &QuasiPolyDiagram,
    s: usize,
    cube_side: f64,
) -> Result<BoundPair, DiagramError> {
    check_section(s, diag.n)?;
    if !(cube_side >= 0.0 && cube_side.is_finite()) {
        return Err(DiagramError::BadCubeSide);
    }
    let kappa = diag.kappa();
    let two_kappa = 2 * kappa;
    let power_of_two = BigInt::one() << (kappa + kappa * (two_kappa - 1));
    let factor = |sums: &[u64]| -> BigInt {
        let product: BigInt = sums.iter().map(|&x| BigInt::from(x)).product();
        let total: u64 = sums.iter().sum();
        product * big_pow(total + two_kappa as u64 + 1, two_kappa) * &power_of_two
    };

    let paper_sums: Vec<u64> = match &diag.degree_sums {
        Some(sums) => {
            if sums.len() < s {
                return Err(DiagramError::Invalid("fewer degree sums than equations"));
            }
            sums[..s].to_vec()
        }
        None => alloc::vec![2 * diag.max_degree(); s],
    };
    let safe_sums = alloc::vec![2 * diag.max_degree() + 1; s];

    let width = FRAC_2_PI * Float::sqrt(s as f64) * cube_side * diag.lambda;
    let cover = Float::powi(width, s as i32);
    let paper_cover = rational::from_f64(cover).ok_or(DiagramError::BadCubeSide)?;
    // nudge up so that rounding never loses a translate
    let per_axis = Float::ceil(width * (1.0 + 1e-12)).max(1.0);
    let safe_cover = big_pow(per_axis.to_u64().ok_or(DiagramError::BadCubeSide)?, s);

    let paper = paper_cover * Rational::from_integer(factor(&paper_sums));
    let safe = Rational::from_integer(safe_cover * factor(&safe_sums));
    let degenerate = diag.lambda == 0.0 || paper_sums.contains(&0);
    Ok(BoundPair {
        paper,
        safe,
        degenerate,
    })
}

/// Exponential polynomials on an interval of the given length.
///
/// Published: `m` for real data, `4m + 7·λ̂·length` otherwise.
///
/// Safe: zeros of the level equations. For real data `|p| = ρ` means
/// `p ∓ ρ = 0`, each a combination of at most `m + 2` exponentials, hence at
/// most `m + 1` zeros apiece. For complex data `|p|² − ρ²` is an exponential
/// polynomial with `(m+1)² + 1` terms and exponents of modulus `≤ 2λ̂`; a disk
/// of radius `length/2` covers the interval.
pub fn gabrielov_exponential(
    diag: &ExpoPolyDiagram,
    interval_length: &Rational,
) -> Result<BoundPair, DiagramError> {
    if *interval_length <= Rational::zero() {
        return Err(DiagramError::BadIntervalLength);
    }
    let m = Rational::from_integer(BigInt::from(diag.m));
    let spread = rational::from_f64(diag.lambda_hat)
        .ok_or(DiagramError::Invalid("exponent modulus must be finite"))?
        * interval_length
        * rational::int(7);
    let (paper, safe) = if diag.real_coeffs {
        (m.clone(), (m + rational::int(1)) * rational::int(2))
    } else {
        let terms = &m + rational::int(1);
        (
            &m * rational::int(4) + &spread,
            &terms * &terms * rational::int(4) + spread,
        )
    };
    let degenerate = paper.is_zero() && diag.lambda_hat > 0.0;
    Ok(BoundPair {
        paper,
        safe,
        degenerate,
    })
}

/// `½ Σ_i (d_i + 2)(d_i + 1)^{ℓ−1}` with `d_i = Σ_j d_ij`.
pub fn gabrielov_semialgebraic(diag: &SemialgebraicDiagram, l: usize) -> Result<Rational, DiagramError> {
    check_section(l, diag.n)?;
    let total: BigInt = diag
        .degrees
        .iter()
        .map(|row| {
            let d: u64 = row.iter().sum();
            BigInt::from(d + 2) * big_pow(d + 1, l - 1)
        })
        .sum();
    Ok(Rational::new(total, BigInt::from(2)))
}

/// Any of the supported function classes.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagram {
    Polynomial(PolyDiagram),
    MultiDegree(MultiDegreeDiagram),
    Laurent(LaurentDiagram),
    QuasiPoly(QuasiPolyDiagram),
    ExpoPoly(ExpoPolyDiagram),
    Semialgebraic(SemialgebraicDiagram),
}

impl Diagram {
    pub fn dim(&self) -> usize {
        match self {
            Self::Polynomial(d) => d.n,
            Self::MultiDegree(d) => d.n,
            Self::Laurent(d) => d.n,
            Self::QuasiPoly(d) => d.n,
            Self::ExpoPoly(_) => 1,
            Self::Semialgebraic(d) => d.n,
        }
    }

    /// Class constant for `s`-dimensional sections of the unit cube.
    pub fn gabrielov(&self, s: usize) -> Result<BoundPair, DiagramError> {
        match self {
            Self::Polynomial(d) => gabrielov_bezout(d, s),
            Self::MultiDegree(d) => gabrielov_multidegree(d, s),
            Self::Laurent(d) => gabrielov_newton(d, s),
            Self::QuasiPoly(d) => gabrielov_quasipoly(d, s, 1.0),
            Self::ExpoPoly(d) => {
                check_section(s, 1)?;
                gabrielov_exponential(d, &rational::int(1))
            }
            Self::Semialgebraic(d) => gabrielov_semialgebraic(d, s).map(BoundPair::exact),
        }
    }

    /// Gabrielov profile `Ĉ_0 … Ĉ_n` of a sub-level set in the unit cube.
    ///
    /// The paper variant takes the class constant as the component bound
    /// directly. The safe variant counts components of the level set inside an
    /// `s`-box `B`: a component avoiding `∂B` encloses a region holding a
    /// critical point, and a component meeting `∂B` contains a component of the
    /// level set on one of the `2s` facets. With `K_s` the critical-point count
    /// that gives `N_s = K_s + 2s·N_{s−1}`, and on a segment Rolle gives
    /// `N_1 = K_1 + 1`. The same recursion bounds components of the sub-level
    /// set itself. Exponential and semialgebraic constants already count
    /// components and are used as they are. `Ĉ_0 = 1`.
    pub fn section_profile(&self, mu: Rational) -> Result<BoundProfile, DiagramError> {
        let n = self.dim();
        let mut chat = Vec::with_capacity(n + 1);
        chat.push(BoundPair::exact(Rational::one()));
        let direct = matches!(self, Self::ExpoPoly(_) | Self::Semialgebraic(_));
        for s in 1..=n {
            let class = self.gabrielov(s)?;
            let safe = if direct {
                class.safe
            } else if s == 1 {
                class.safe + Rational::one()
            } else {
                let boundary = &chat[s - 1].safe * rational::int(2 * s as i64);
                class.safe + boundary
            };
            chat.push(BoundPair {
                paper: class.paper,
                safe,
                degenerate: class.degenerate,
            });
        }
        Ok(BoundProfile::new(n, chat, mu)?)
    }
}
