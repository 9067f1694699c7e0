//! Concrete functions: monomial sums (Laurent allowed), quasi-polynomials and
//! univariate exponential polynomials, evaluated in double precision.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{Float, Zero};

use crate::diagram::{euclidean_norm, QuasiPolyDiagram};
use crate::empirical::SublevelSet;
use crate::polytope::{convex_hull, MAX_DIM, LatticePoint, LatticePolytope, PolytopeError};
use crate::rational::{self, Rational};

/// Shift applied to the unit cube when negative exponents are present.
pub const LAURENT_OFFSET: f64 = 0.125;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FuncError {
    #[error("term has {found} exponents, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate exponent vector")]
    DuplicateExponent,
    #[error("zero coefficient")]
    ZeroCoefficient,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("negative exponent in a polynomial coefficient")]
    NegativeExponent,
    #[error("at least one term is required")]
    NoTerms,
    #[error("non-finite parameter")]
    NonFinite,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("point has {found} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("pole on the hyperplane x{} = 0", .axis + 1)]
    Pole { axis: usize },
    #[error("evaluation overflowed")]
    NonFinite,
}

fn powi(x: f64, e: u32) -> f64 {
    let mut base = x;
    let mut e = e;
    let mut acc = 1.0;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

fn finite(v: f64) -> Result<f64, EvalError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(EvalError::NonFinite)
    }
}

fn check_dim(x: &[f64], n: usize) -> Result<(), EvalError> {
    if x.len() == n {
        Ok(())
    } else {
        Err(EvalError::DimensionMismatch {
            expected: n,
            found: x.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    pub coef: Rational,
    pub exponents: Vec<i32>,
    approx: f64,
}

impl Monomial {
    fn new(coef: Rational, exponents: Vec<i32>) -> Self {
        let approx = rational::to_f64(&coef);
        Self {
            coef,
            exponents,
            approx,
        }
    }

    fn eval(&self, x: &[f64]) -> Result<f64, EvalError> {
        let mut v = self.approx;
        for (axis, (&e, &xi)) in self.exponents.iter().zip(x).enumerate() {
            if e < 0 {
                if xi == 0.0 {
                    return Err(EvalError::Pole { axis });
                }
                v /= powi(xi, e.unsigned_abs());
            } else {
                v *= powi(xi, e as u32);
            }
        }
        Ok(v)
    }
}

/// Finite sum of monomials with exact rational coefficients, kept in
/// lexicographic order of exponent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialSum {
    n: usize,
    terms: Vec<Monomial>,
}

impl MonomialSum {
    /// Rejects duplicate exponent vectors and zero coefficients.
    pub fn new(n: usize, terms: Vec<(Rational, Vec<i32>)>) -> Result<Self, FuncError> {
        let mut map = BTreeMap::new();
        for (coef, exps) in terms {
            if exps.len() != n {
                return Err(FuncError::DimensionMismatch {
                    expected: n,
                    found: exps.len(),
                });
            }
            if coef.is_zero() {
                return Err(FuncError::ZeroCoefficient);
            }
            if map.insert(exps, coef).is_some() {
                return Err(FuncError::DuplicateExponent);
            }
        }
        Ok(Self::from_map(n, map))
    }

    /// Merges like terms and drops cancelled ones.
    pub fn merged(n: usize, terms: Vec<(Rational, Vec<i32>)>) -> Result<Self, FuncError> {
        let mut map: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (coef, exps) in terms {
            if exps.len() != n {
                return Err(FuncError::DimensionMismatch {
                    expected: n,
                    found: exps.len(),
                });
            }
            *map.entry(exps).or_insert_with(Rational::zero) += coef;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self::from_map(n, map))
    }

    fn from_map(n: usize, map: BTreeMap<Vec<i32>, Rational>) -> Self {
        let terms = map
            .into_iter()
            .map(|(e, c)| Monomial::new(c, e))
            .collect();
        Self { n, terms }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FuncError> {
        let all = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|t| (t.coef.clone(), t.exponents.clone()))
            .collect();
        Self::merged(self.n, all)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.iter().any(|t| t.exponents.iter().any(|&e| e < 0))
    }

    /// Largest total degree among the terms.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|t| t.exponents.iter().map(|&e| i64::from(e)).sum())
            .max()
            .unwrap_or(0)
    }

    /// Largest exponent of any single variable.
    pub fn max_partial_degree(&self) -> i64 {
        self.terms
            .iter()
            .flat_map(|t| t.exponents.iter().map(|&e| i64::from(e)))
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64, EvalError> {
        check_dim(x, self.n)?;
        let mut total = 0.0;
        for t in &self.terms {
            total += t.eval(x)?;
        }
        finite(total)
    }
}

/// `N(p)`: hull of the exponent vectors of the nonzero terms.
pub fn newton_polytope(p: &MonomialSum) -> Result<LatticePolytope, FuncError> {
    if p.is_zero() {
        return Err(FuncError::ZeroPolynomial);
    }
    let points = p
        .terms
        .iter()
        .map(|t| LatticePoint::new(t.exponents.iter().map(|&e| i64::from(e)).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(convex_hull(&points)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiTerm {
    pub poly: MonomialSum,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// `p(x) = Σ_j p_j(x) e^{⟨a_j, x⟩} (cos⟨b_j, x⟩ + i sin⟨b_j, x⟩)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiPoly {
    n: usize,
    terms: Vec<QuasiTerm>,
}

impl QuasiPoly {
    pub fn new(n: usize, terms: Vec<QuasiTerm>) -> Result<Self, FuncError> {
        if terms.is_empty() {
            return Err(FuncError::NoTerms);
        }
        for t in &terms {
            if t.poly.dim() != n {
                return Err(FuncError::DimensionMismatch {
                    expected: n,
                    found: t.poly.dim(),
                });
            }
            if t.poly.has_negative_exponents() {
                return Err(FuncError::NegativeExponent);
            }
            for v in [&t.a, &t.b] {
                if v.len() != n {
                    return Err(FuncError::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(FuncError::NonFinite);
                }
            }
        }
        Ok(Self { n, terms })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[QuasiTerm] {
        &self.terms
    }

    /// `Σ_j (d_j + 1)`.
    pub fn degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|t| t.poly.total_degree().max(0) as u64 + 1)
            .sum()
    }

    pub fn eval_complex(&self, x: &[f64]) -> Result<(f64, f64), EvalError> {
        check_dim(x, self.n)?;
        let mut re = 0.0;
        let mut im = 0.0;
        for t in &self.terms {
            let amp = t.poly.eval(x)? * Float::exp(dot(&t.a, x));
            let phase = dot(&t.b, x);
            let (sin, cos) = Float::sin_cos(phase);
            re += amp * cos;
            im += amp * sin;
        }
        Ok((finite(re)?, finite(im)?))
    }

    /// `|p(x)|²` as `(Re p)² + (Im p)²`.
    pub fn squared_modulus(&self, x: &[f64]) -> Result<f64, EvalError> {
        let (re, im) = self.eval_complex(x)?;
        finite(re * re + im * im)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Combinatorial data of `q = |p|²`: per-term degrees, frequencies, `κ` and
/// the largest frequency gap `λ`.
pub fn derive_q_diagram(p: &QuasiPoly) -> QuasiPolyDiagram {
    let degrees = p
        .terms
        .iter()
        .map(|t| t.poly.total_degree().max(0) as u64)
        .collect();
    let freqs = p.terms.iter().map(|t| t.b.clone()).collect();
    QuasiPolyDiagram::new(p.n, degrees, freqs).expect("validated quasi-polynomial")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn modulus(self) -> f64 {
        euclidean_norm(&[self.re, self.im])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpoTerm {
    pub c: Complex,
    pub lambda: Complex,
}

/// `p(t) = Σ_k c_k e^{λ_k t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpoPoly {
    terms: Vec<ExpoTerm>,
}

impl ExpoPoly {
    pub fn new(terms: Vec<ExpoTerm>) -> Result<Self, FuncError> {
        if terms.is_empty() {
            return Err(FuncError::NoTerms);
        }
        if terms
            .iter()
            .flat_map(|t| [t.c.re, t.c.im, t.lambda.re, t.lambda.im])
            .any(|x| !x.is_finite())
        {
            return Err(FuncError::NonFinite);
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[ExpoTerm] {
        &self.terms
    }

    /// `(m, λ̂)` with `m + 1` terms and `λ̂ = max_k |λ_k|`.
    pub fn degree(&self) -> (u64, f64) {
        let m = self.terms.len() as u64 - 1;
        let hat = self
            .terms
            .iter()
            .map(|t| t.lambda.modulus())
            .fold(0.0, f64::max);
        (m, hat)
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|t| t.c.im == 0.0 && t.lambda.im == 0.0)
    }

    pub fn eval(&self, t: f64) -> Result<Complex, EvalError> {
        let mut re = 0.0;
        let mut im = 0.0;
        for term in &self.terms {
            let amp = Float::exp(term.lambda.re * t);
            let (s, c) = Float::sin_cos(term.lambda.im * t);
            let (er, ei) = (amp * c, amp * s);
            re += term.c.re * er - term.c.im * ei;
            im += term.c.re * ei + term.c.im * er;
        }
        Ok(Complex::new(finite(re)?, finite(im)?))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionKind {
    Monomial(MonomialSum),
    /// `|p|²` of a quasi-polynomial.
    QuasiModulusSquared(QuasiPoly),
    /// `|p|` of an exponential polynomial in one variable.
    ExpoModulus(ExpoPoly),
}

/// A function together with the threshold of its sub-level set
/// `{x : f(x) ≤ ρ}`.
///
/// The set is examined over `[δ, 1 + δ]^n`; `δ` is [`LAURENT_OFFSET`] for
/// Laurent polynomials with negative exponents and zero otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct RealFunction {
    pub kind: FunctionKind,
    pub rho: f64,
    pub offset: f64,
}

impl RealFunction {
    pub fn new(kind: FunctionKind, rho: f64) -> Self {
        let offset = match &kind {
            FunctionKind::Monomial(p) if p.has_negative_exponents() => LAURENT_OFFSET,
            _ => 0.0,
        };
        Self { kind, rho, offset }
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            FunctionKind::Monomial(p) => p.dim(),
            FunctionKind::QuasiModulusSquared(q) => q.dim(),
            FunctionKind::ExpoModulus(_) => 1,
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64, EvalError> {
        match &self.kind {
            FunctionKind::Monomial(p) => p.eval(x),
            FunctionKind::QuasiModulusSquared(q) => q.squared_modulus(x),
            FunctionKind::ExpoModulus(e) => {
                check_dim(x, 1)?;
                Ok(e.eval(x[0])?.modulus())
            }
        }
    }
}

impl SublevelSet for RealFunction {
    fn dim(&self) -> usize {
        RealFunction::dim(self)
    }

    fn contains(&self, unit_point: &[f64]) -> Result<bool, EvalError> {
        if self.offset == 0.0 {
            return Ok(self.eval(unit_point)? <= self.rho);
        }
        let n = unit_point.len();
        if n > MAX_DIM {
            let shifted: Vec<f64> = unit_point.iter().map(|u| u + self.offset).collect();
            return Ok(self.eval(&shifted)? <= self.rho);
        }
        let mut shifted = [0.0f64; MAX_DIM];
        for (s, u) in shifted.iter_mut().zip(unit_point) {
            *s = u + self.offset;
        }
        Ok(self.eval(&shifted[..n])? <= self.rho)
    }
}
