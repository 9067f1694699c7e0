//! Grid-cover counting and section component counting on sampled sub-level
//! sets of the unit cube.
//!
//! Samples live on a global half-open lattice `{j/N : 0 ≤ j < N}^n`. A cube
//! `[i/c, (i+1)/c)^n` of an `ε = 1/c` grid owns exactly the samples that fall
//! in it, so grids whose cell counts divide `N` see nested sample sets.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::bounds::{assemble, BoundProfile, BoundsError};
use crate::funceval::EvalError;
use crate::rational::{self, Rational};

/// Largest number of cubes a grid may have.
pub const MAX_CUBES: u64 = 100_000_000;
/// Largest number of samples a lattice may have.
pub const MAX_SAMPLES: u64 = 1 << 26;

/// A set `{x ∈ [0,1]^n : f(x) ≤ ρ}` that can be queried pointwise.
pub trait SublevelSet {
    fn dim(&self) -> usize;
    fn contains(&self, unit_point: &[f64]) -> Result<bool, EvalError>;
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EmpiricalError {
    #[error("epsilon must be 1/k for a positive integer k")]
    BadEpsilon,
    #[error("samples_per_axis must be at least 2")]
    BadSamples,
    #[error("resolution must be at least 4")]
    BadResolution,
    #[error("grid too large: {0} cells or samples")]
    TooLarge(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cell count {cells} does not divide the lattice size {per_axis}")]
    IncompatibleGrid { cells: u64, per_axis: u64 },
    #[error("mask has {found} entries, expected {expected}")]
    MaskLength { expected: usize, found: usize },
    #[error("invalid section: {0}")]
    BadSection(&'static str),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

fn checked_power(base: u64, n: usize, limit: u64, what: &'static str) -> Result<u64, EmpiricalError> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(base)
            .filter(|&t| t <= limit)
            .ok_or(EmpiricalError::TooLarge(what))?;
    }
    Ok(total)
}

/// `ε`-grid on `[0,1]^n` with `1/ε` cells per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    n: usize,
    cells: u64,
    samples_per_axis: u64,
}

impl GridSpec {
    pub fn new(n: usize, eps: &Rational, samples_per_axis: u64) -> Result<Self, EmpiricalError> {
        let cells = rational::reciprocal_integer(eps).ok_or(EmpiricalError::BadEpsilon)?;
        Self::with_cells(n, cells, samples_per_axis)
    }

    pub fn with_cells(n: usize, cells: u64, samples_per_axis: u64) -> Result<Self, EmpiricalError> {
        if cells == 0 {
            return Err(EmpiricalError::BadEpsilon);
        }
        if samples_per_axis < 2 {
            return Err(EmpiricalError::BadSamples);
        }
        checked_power(cells, n, MAX_CUBES, "cubes")?;
        Ok(Self {
            n,
            cells,
            samples_per_axis,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> u64 {
        self.cells
    }

    pub fn samples_per_axis(&self) -> u64 {
        self.samples_per_axis
    }

    pub fn epsilon(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.cells))
    }

    pub fn cube_count(&self) -> u64 {
        num_traits::pow(self.cells, self.n)
    }
}

/// The sample lattice `{j/N}^n`, indexed with axis 0 varying fastest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleLattice {
    n: usize,
    per_axis: u64,
    len: usize,
}

impl SampleLattice {
    pub fn new(n: usize, per_axis: u64) -> Result<Self, EmpiricalError> {
        if per_axis == 0 {
            return Err(EmpiricalError::BadSamples);
        }
        let len = checked_power(per_axis, n, MAX_SAMPLES, "samples")? as usize;
        Ok(Self { n, per_axis, len })
    }

    /// Smallest lattice refining every grid with at least its
    /// `samples_per_axis` samples per cube and axis.
    pub fn for_grids(n: usize, grids: &[GridSpec]) -> Result<Self, EmpiricalError> {
        let mut cells = 1u64;
        let mut samples = 2u64;
        for g in grids {
            if g.n != n {
                return Err(EmpiricalError::DimensionMismatch {
                    expected: n,
                    found: g.n,
                });
            }
            cells = cells.lcm(&g.cells);
            samples = samples.max(g.samples_per_axis);
        }
        let per_axis = cells
            .checked_mul(samples)
            .ok_or(EmpiricalError::TooLarge("samples"))?;
        Self::new(n, per_axis)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn per_axis(&self) -> u64 {
        self.per_axis
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinates of sample `index`.
    pub fn point(&self, index: usize, out: &mut [f64]) {
        let mut rest = index as u64;
        let scale = self.per_axis as f64;
        for x in out.iter_mut().take(self.n) {
            *x = (rest % self.per_axis) as f64 / scale;
            rest /= self.per_axis;
        }
    }

    /// Membership of the samples in `range`, in index order.
    pub fn evaluate_range<S: SublevelSet + ?Sized>(
        &self,
        set: &S,
        range: Range<usize>,
    ) -> Result<Vec<bool>, EmpiricalError> {
        if set.dim() != self.n {
            return Err(EmpiricalError::DimensionMismatch {
                expected: self.n,
                found: set.dim(),
            });
        }
        let end = range.end.min(self.len);
        let mut x = vec![0.0; self.n];
        let mut out = Vec::with_capacity(end.saturating_sub(range.start));
        for i in range.start..end {
            self.point(i, &mut x);
            out.push(set.contains(&x)?);
        }
        Ok(out)
    }

    pub fn evaluate<S: SublevelSet + ?Sized>(&self, set: &S) -> Result<Vec<bool>, EmpiricalError> {
        self.evaluate_range(set, 0..self.len)
    }
}

/// Interior, boundary and occupied cube counts; `occupied = interior + boundary`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CoverCounts {
    pub interior: u64,
    pub boundary: u64,
    pub occupied: u64,
}

/// Classifies the cubes of a `cells`-per-axis grid from a membership mask
/// over `lattice`.
pub fn classify_mask(
    lattice: &SampleLattice,
    mask: &[bool],
    cells: u64,
) -> Result<CoverCounts, EmpiricalError> {
    if mask.len() != lattice.len {
        return Err(EmpiricalError::MaskLength {
            expected: lattice.len,
            found: mask.len(),
        });
    }
    if cells == 0 || !lattice.per_axis.is_multiple_of(cells) {
        return Err(EmpiricalError::IncompatibleGrid {
            cells,
            per_axis: lattice.per_axis,
        });
    }
    let n = lattice.n;
    let cubes = checked_power(cells, n, MAX_CUBES, "cubes")? as usize;
    let per_cube = lattice.per_axis / cells;
    let mut any = vec![false; cubes];
    let mut all = vec![true; cubes];

    let mut coords = vec![0u64; n];
    for &m in mask {
        let mut cube = 0usize;
        for &j in coords.iter().rev() {
            cube = cube * cells as usize + (j / per_cube) as usize;
        }
        any[cube] |= m;
        all[cube] &= m;
        for c in coords.iter_mut() {
            *c += 1;
            if *c < lattice.per_axis {
                break;
            }
            *c = 0;
        }
    }
    let occupied = any.iter().filter(|&&a| a).count() as u64;
    let interior = all.iter().filter(|&&a| a).count() as u64;
    Ok(CoverCounts {
        interior,
        boundary: occupied - interior,
        occupied,
    })
}

/// Cover counts of one grid on its own lattice of `cells·samples_per_axis`
/// points per axis.
pub fn classify_cover<S: SublevelSet + ?Sized>(
    set: &S,
    grid: &GridSpec,
) -> Result<CoverCounts, EmpiricalError> {
    let lattice = SampleLattice::for_grids(grid.n, core::slice::from_ref(grid))?;
    let mask = lattice.evaluate(set)?;
    classify_mask(&lattice, &mask, grid.cells)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub epsilon: Rational,
    pub counts: CoverCounts,
    pub paper_bound: Rational,
    pub safe_bound: Rational,
    /// Some constant behind `paper_bound` is flagged degenerate.
    pub degenerate: bool,
    /// `interior · ε^n`, a sampled estimate of the volume from below.
    pub volume_estimate: Rational,
    pub paper_exceeded: bool,
    /// `occupied > safe_bound`.
    pub violation: bool,
}

/// Cover reports for every grid from one mask over a shared lattice.
pub fn reports_from_mask(
    lattice: &SampleLattice,
    mask: &[bool],
    grids: &[GridSpec],
    profile: &BoundProfile,
) -> Result<Vec<CoverReport>, EmpiricalError> {
    if profile.dim() != lattice.n {
        return Err(EmpiricalError::DimensionMismatch {
            expected: lattice.n,
            found: profile.dim(),
        });
    }
    let bound = assemble(profile);
    grids
        .iter()
        .map(|g| {
            let counts = classify_mask(lattice, mask, g.cells)?;
            let epsilon = g.epsilon();
            let value = bound.evaluate(&epsilon)?;
            let occupied = Rational::from_integer(BigInt::from(counts.occupied));
            let volume_estimate = Rational::new(
                BigInt::from(counts.interior),
                BigInt::from(g.cube_count()),
            );
            Ok(CoverReport {
                paper_exceeded: occupied > value.paper,
                violation: occupied > value.safe,
                epsilon,
                counts,
                paper_bound: value.paper,
                safe_bound: value.safe,
                degenerate: value.degenerate,
                volume_estimate,
            })
        })
        .collect()
}

/// Samples the set once on a lattice shared by all grids and compares each
/// cover count with the assembled bound.
pub fn verify<S: SublevelSet + ?Sized>(
    set: &S,
    profile: &BoundProfile,
    grids: &[GridSpec],
) -> Result<Vec<CoverReport>, EmpiricalError> {
    if grids.is_empty() {
        return Ok(Vec::new());
    }
    let lattice = SampleLattice::for_grids(set.dim(), grids)?;
    let mask = lattice.evaluate(set)?;
    reports_from_mask(&lattice, &mask, grids, profile)
}

/// Affine plane parallel to the free coordinate axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionSpec {
    n: usize,
    fixed: Vec<(usize, f64)>,
    free: Vec<usize>,
}

impl SectionSpec {
    /// `fixed` holds 0-based axes and their values in `[0, 1]`.
    pub fn new(n: usize, mut fixed: Vec<(usize, f64)>) -> Result<Self, EmpiricalError> {
        fixed.sort_by_key(|&(axis, _)| axis);
        if fixed.iter().any(|&(axis, _)| axis >= n) {
            return Err(EmpiricalError::BadSection("axis out of range"));
        }
        if fixed.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(EmpiricalError::BadSection("axis fixed twice"));
        }
        if fixed.iter().any(|&(_, v)| !(0.0..=1.0).contains(&v)) {
            return Err(EmpiricalError::BadSection("value outside [0, 1]"));
        }
        if fixed.len() >= n {
            return Err(EmpiricalError::BadSection("no free axis left"));
        }
        let free = (0..n).filter(|a| fixed.iter().all(|f| f.0 != *a)).collect();
        Ok(Self { n, fixed, free })
    }

    pub fn full(n: usize) -> Result<Self, EmpiricalError> {
        Self::new(n, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn fixed_axes(&self) -> &[(usize, f64)] {
        &self.fixed
    }

    pub fn free_axes(&self) -> &[usize] {
        &self.free
    }

    /// Dimension of the section.
    pub fn s(&self) -> usize {
        self.free.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionMode {
    /// Cells whose center lies in the set.
    Sublevel,
    /// Cells whose corners are split by the set.
    Boundary,
}

/// Marked cells of an `s`-dimensional section grid, first free axis fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionMask {
    pub shape: Vec<usize>,
    pub marked: Vec<bool>,
}

pub fn section_mask<S: SublevelSet + ?Sized>(
    set: &S,
    section: &SectionSpec,
    resolution: usize,
    mode: SectionMode,
) -> Result<SectionMask, EmpiricalError> {
    if set.dim() != section.n {
        return Err(EmpiricalError::DimensionMismatch {
            expected: section.n,
            found: set.dim(),
        });
    }
    if resolution < 4 {
        return Err(EmpiricalError::BadResolution);
    }
    let s = section.s();
    let (points, offset) = match mode {
        SectionMode::Sublevel => (resolution, 0.5),
        SectionMode::Boundary => (resolution + 1, 0.0),
    };
    let total = checked_power(points as u64, s, MAX_CUBES, "section cells")? as usize;

    let mut x = vec![0.0; section.n];
    for &(axis, v) in &section.fixed {
        x[axis] = v;
    }
    let mut inside = Vec::with_capacity(total);
    let mut idx = vec![0usize; s];
    for _ in 0..total {
        for (k, &axis) in section.free.iter().enumerate() {
            x[axis] = (idx[k] as f64 + offset) / resolution as f64;
        }
        inside.push(set.contains(&x)?);
        for c in idx.iter_mut() {
            *c += 1;
            if *c < points {
                break;
            }
            *c = 0;
        }
    }

    let shape = vec![resolution; s];
    let marked = match mode {
        SectionMode::Sublevel => inside,
        SectionMode::Boundary => {
            let cells = checked_power(resolution as u64, s, MAX_CUBES, "section cells")? as usize;
            let mut marked = Vec::with_capacity(cells);
            let mut cell = vec![0usize; s];
            for _ in 0..cells {
                let mut seen_in = false;
                let mut seen_out = false;
                for corner in 0..1usize << s {
                    let mut at = 0;
                    for k in (0..s).rev() {
                        at = at * points + cell[k] + ((corner >> k) & 1);
                    }
                    if inside[at] {
                        seen_in = true;
                    } else {
                        seen_out = true;
                    }
                }
                marked.push(seen_in && seen_out);
                for c in cell.iter_mut() {
                    *c += 1;
                    if *c < resolution {
                        break;
                    }
                    *c = 0;
                }
            }
            marked
        }
    };
    Ok(SectionMask { shape, marked })
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Number of distinct classes among the selected elements.
    pub fn classes(&mut self, selected: &[bool]) -> usize {
        (0..selected.len())
            .filter(|&i| selected[i] && self.find(i) == i)
            .count()
    }
}

/// Pairs of marked cells that share a facet.
pub fn face_adjacent_pairs(shape: &[usize], marked: &[bool]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    let mut stride = 1;
    for &extent in shape {
        for i in 0..marked.len() {
            if marked[i] && (i / stride) % extent + 1 < extent && marked[i + stride] {
                pairs.push((i, i + stride));
            }
        }
        stride *= extent;
    }
    pairs
}

/// Connected components of the marked cells under face adjacency.
pub fn count_components(mask: &SectionMask) -> usize {
    let mut uf = UnionFind::new(mask.marked.len());
    for (a, b) in face_adjacent_pairs(&mask.shape, &mask.marked) {
        uf.union(a, b);
    }
    uf.classes(&mask.marked)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentReport {
    pub section: SectionSpec,
    pub resolution: usize,
    pub mode: SectionMode,
    pub component_count: usize,
    pub chat_paper: Rational,
    pub chat_safe: Rational,
    pub paper_exceeded: bool,
    /// `component_count > chat_safe`.
    pub violation: bool,
}

pub fn component_report<S: SublevelSet + ?Sized>(
    set: &S,
    section: &SectionSpec,
    resolution: usize,
    mode: SectionMode,
    profile: &BoundProfile,
) -> Result<ComponentReport, EmpiricalError> {
    let mask = section_mask(set, section, resolution, mode)?;
    let count = count_components(&mask);
    let chat = profile
        .section(section.s())
        .ok_or(EmpiricalError::DimensionMismatch {
            expected: section.n,
            found: profile.dim(),
        })?;
    let c = Rational::from_integer(BigInt::from(count));
    Ok(ComponentReport {
        section: section.clone(),
        resolution,
        mode,
        component_count: count,
        paper_exceeded: c > chat.paper,
        violation: c > chat.safe,
        chat_paper: chat.paper.clone(),
        chat_safe: chat.safe.clone(),
    })
}

pub fn count_components_sublevel<S: SublevelSet + ?Sized>(
    set: &S,
    section: &SectionSpec,
    resolution: usize,
    profile: &BoundProfile,
) -> Result<ComponentReport, EmpiricalError> {
    component_report(set, section, resolution, SectionMode::Sublevel, profile)
}

pub fn count_components_boundary<S: SublevelSet + ?Sized>(
    set: &S,
    section: &SectionSpec,
    resolution: usize,
    profile: &BoundProfile,
) -> Result<ComponentReport, EmpiricalError> {
    component_report(set, section, resolution, SectionMode::Boundary, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    struct Closure<F>(usize, F);

    impl<F: Fn(&[f64]) -> bool> SublevelSet for Closure<F> {
        fn dim(&self) -> usize {
            self.0
        }
        fn contains(&self, p: &[f64]) -> Result<bool, EvalError> {
            Ok((self.1)(p))
        }
    }

    fn trivial_profile(n: usize) -> BoundProfile {
        BoundProfile::exact(n, &vec![int(1); n + 1], int(1)).unwrap()
    }

    fn grid(n: usize, cells: u64, spa: u64) -> GridSpec {
        GridSpec::with_cells(n, cells, spa).unwrap()
    }

    #[test]
    fn cover_examples() {
        let all = Closure(2, |_: &[f64]| true);
        let c = classify_cover(&all, &grid(2, 4, 4)).unwrap();
        assert_eq!((c.interior, c.boundary, c.occupied), (16, 0, 16));

        let half = Closure(2, |p: &[f64]| p[0] <= 0.5);
        let c = classify_cover(&half, &grid(2, 4, 4)).unwrap();
        assert_eq!((c.interior, c.boundary, c.occupied), (8, 4, 12));

        let disk = Closure(2, |p: &[f64]| p[0] * p[0] + p[1] * p[1] <= 1.0 / 16.0);
        let c = classify_cover(&disk, &grid(2, 4, 8)).unwrap();
        assert!((1..=3).contains(&c.occupied));
    }

    #[test]
    fn grid_validation() {
        assert_eq!(GridSpec::new(2, &ratio(2, 3), 4), Err(EmpiricalError::BadEpsilon));
        assert_eq!(GridSpec::new(2, &ratio(1, 4), 1), Err(EmpiricalError::BadSamples));
        assert!(matches!(GridSpec::with_cells(3, 1000, 2), Err(EmpiricalError::TooLarge(_))));
        assert_eq!(GridSpec::new(2, &ratio(1, 4), 2).unwrap().cells(), 4);
    }

    #[test]
    fn interval_verify() {
        let interval = Closure(1, |p: &[f64]| p[0] <= 0.5);
        let profile = BoundProfile::exact(1, &[int(1), int(2)], ratio(1, 2)).unwrap();
        let r = verify(&interval, &profile, &[grid(1, 10, 4)]).unwrap();
        assert_eq!(r[0].safe_bound, int(7));
        assert_eq!(r[0].counts.interior, 5);
        assert_eq!(r[0].counts.occupied, 6);
        assert!(!r[0].violation);
    }

    #[test]
    fn whole_cube_is_tight_on_volume_term() {
        let all = Closure(2, |_: &[f64]| true);
        let profile = BoundProfile::exact(2, &[int(0), int(0), int(0)], int(1)).unwrap();
        let grids = [grid(2, 4, 2), grid(2, 8, 2)];
        for r in verify(&all, &profile, &grids).unwrap() {
            assert_eq!(Rational::from_integer(BigInt::from(r.counts.occupied)), r.safe_bound);
            assert!(!r.violation);
            assert_eq!(r.volume_estimate, int(1));
        }
    }

    #[test]
    fn forced_violation() {
        let all = Closure(2, |_: &[f64]| true);
        let profile = BoundProfile::exact(2, &[int(0), int(0), int(0)], int(0)).unwrap();
        let r = verify(&all, &profile, &[grid(2, 4, 2)]).unwrap();
        assert!(r[0].violation && r[0].paper_exceeded);
    }

    #[test]
    fn component_examples() {
        let profile = trivial_profile(2);
        let full = SectionSpec::full(2).unwrap();
        let all = Closure(2, |_: &[f64]| true);
        assert_eq!(count_components_sublevel(&all, &full, 16, &profile).unwrap().component_count, 1);
        assert_eq!(count_components_boundary(&all, &full, 16, &profile).unwrap().component_count, 0);
        let none = Closure(2, |_: &[f64]| false);
        assert_eq!(count_components_sublevel(&none, &full, 16, &profile).unwrap().component_count, 0);

        let two = Closure(2, |p: &[f64]| {
            let a = (p[0] - 0.25).powi(2) + (p[1] - 0.5).powi(2);
            let b = (p[0] - 0.75).powi(2) + (p[1] - 0.5).powi(2);
            a.min(b) <= 1.0 / 256.0
        });
        assert_eq!(count_components_sublevel(&two, &full, 256, &profile).unwrap().component_count, 2);
        assert_eq!(count_components_boundary(&two, &full, 256, &profile).unwrap().component_count, 2);

        let disk = Closure(2, |p: &[f64]| p[0] * p[0] + p[1] * p[1] <= 1.0 / 16.0);
        assert_eq!(count_components_boundary(&disk, &full, 64, &profile).unwrap().component_count, 1);

        let centered = Closure(2, |p: &[f64]| (p[0] - 0.5).powi(2) + (p[1] - 0.5).powi(2) <= 1.0 / 16.0);
        let line = SectionSpec::new(2, vec![(1, 0.5)]).unwrap();
        let r = count_components_boundary(&centered, &line, 64, &profile).unwrap();
        assert_eq!(r.component_count, 2);
        assert!(r.violation);
    }

    #[test]
    fn section_validation() {
        assert!(SectionSpec::new(2, vec![(2, 0.5)]).is_err());
        assert!(SectionSpec::new(2, vec![(0, 0.5), (0, 0.2)]).is_err());
        assert!(SectionSpec::new(2, vec![(0, 1.5)]).is_err());
        assert!(SectionSpec::new(2, vec![(0, 0.5), (1, 0.5)]).is_err());
        let s = SectionSpec::new(3, vec![(2, 0.5), (0, 0.1)]).unwrap();
        assert_eq!(s.free_axes(), &[1]);
        assert_eq!(s.s(), 1);
        let all = Closure(2, |_: &[f64]| true);
        assert_eq!(
            section_mask(&all, &SectionSpec::full(2).unwrap(), 3, SectionMode::Sublevel),
            Err(EmpiricalError::BadResolution)
        );
    }

    #[test]
    fn nesting_on_shared_lattice() {
        let disk = Closure(2, |p: &[f64]| p[0] * p[0] + p[1] * p[1] <= 0.3);
        let grids = [grid(2, 4, 4), grid(2, 8, 4), grid(2, 16, 4)];
        let lattice = SampleLattice::for_grids(2, &grids).unwrap();
        let mask = lattice.evaluate(&disk).unwrap();
        let occ: Vec<u64> = grids
            .iter()
            .map(|g| classify_mask(&lattice, &mask, g.cells()).unwrap().occupied)
            .collect();
        for w in occ.windows(2) {
            assert!(w[0] <= w[1] && w[1] <= 4 * w[0]);
        }
    }

    #[test]
    fn chunked_evaluation_matches_serial() {
        let disk = Closure(2, |p: &[f64]| p[0] * p[0] + p[1] * p[1] <= 0.3);
        let lattice = SampleLattice::new(2, 40).unwrap();
        let full = lattice.evaluate(&disk).unwrap();
        let mut parts = lattice.evaluate_range(&disk, 0..333).unwrap();
        parts.extend(lattice.evaluate_range(&disk, 333..lattice.len()).unwrap());
        assert_eq!(full, parts);
    }
}
