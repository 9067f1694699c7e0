//! CSV reports for each mode.

use std::ops::Range;

use rayon::prelude::*;
use vitushkin_core::bounds::{assemble, bound_table};
use vitushkin_core::diagram::bernstein_kushnirenko_bound;
use vitushkin_core::empirical::{
    component_report, reports_from_mask, ComponentReport, CoverReport, EmpiricalError, SampleLattice,
    SectionMode, SublevelSet,
};
use vitushkin_core::funceval::RealFunction;
use vitushkin_core::polytope::shifted_projection_profile;
use vitushkin_core::rational::Exact;

use crate::problem::{input_error, InputError, Problem};

const CHUNK: usize = 1 << 14;

/// Rows plus whether any safe bound was exceeded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub csv: Vec<u8>,
    pub violation: bool,
}

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>, violation: bool) -> Report {
    Report {
        csv: w.into_inner().expect("in-memory writer"),
        violation,
    }
}

fn write_row<const N: usize>(w: &mut csv::Writer<Vec<u8>>, row: [&str; N]) {
    w.write_record(row).expect("in-memory writer");
}

fn flag(violation: bool, paper_exceeded: bool) -> &'static str {
    if violation {
        "violation"
    } else if paper_exceeded {
        "paper_exceeded"
    } else {
        ""
    }
}

fn require_function(problem: &Problem) -> Result<&RealFunction, InputError> {
    problem
        .function
        .as_ref()
        .ok_or_else(|| {
            let missing = if problem.doc.terms.is_none() { "terms" } else { "rho" };
            input_error(missing, "required by this mode")
        })
}

fn empirical_error(e: EmpiricalError) -> InputError {
    input_error("evaluation", e)
}

pub fn bound(problem: &Problem) -> Result<Report, InputError> {
    let assembled = assemble(&problem.profile);
    let rows = bound_table(&assembled, &problem.epsilons).map_err(|e| input_error("epsilons", e))?;
    let mut w = writer();
    write_row(&mut w, ["epsilon", "bound_paper", "bound_safe"]);
    for r in rows {
        write_row(
            &mut w,
            [
                &Exact(&r.epsilon).to_string(),
                &Exact(&r.paper).to_string(),
                &Exact(&r.safe).to_string(),
            ],
        );
    }
    Ok(finish(w, false))
}

pub fn polytope(problem: &Problem) -> Result<Report, InputError> {
    let (newton, clip) = problem
        .newton
        .as_ref()
        .ok_or_else(|| input_error("class", "polytope mode needs a polynomial, multidegree or laurent document"))?;
    let mut w = writer();
    write_row(&mut w, ["record", "key", "value", "axes"]);
    for (i, v) in newton.vertices().iter().enumerate() {
        write_row(&mut w, ["vertex", &(i + 1).to_string(), &v.to_string(), ""]);
    }
    let vol = newton.volume();
    write_row(&mut w, ["volume", &vol.dim.to_string(), &Exact(&vol.value).to_string(), ""]);
    for s in 1..=newton.ambient_dim() {
        let profile = shifted_projection_profile(newton, s, *clip).map_err(|e| input_error("newton", e))?;
        let axes: Vec<String> = profile.axes.iter().map(|a| (a + 1).to_string()).collect();
        write_row(&mut w, ["c_s", &s.to_string(), &Exact(&profile.value).to_string(), &axes.join(" ")]);
    }
    let bk = bernstein_kushnirenko_bound(newton);
    write_row(&mut w, ["bk_bound", &newton.ambient_dim().to_string(), &Exact(&bk).to_string(), ""]);
    Ok(finish(w, false))
}

/// Membership mask over the lattice, evaluated in parallel chunks and
/// assembled in index order.
pub fn evaluate_mask<S: SublevelSet + Sync + ?Sized>(
    lattice: &SampleLattice,
    set: &S,
) -> Result<Vec<bool>, EmpiricalError> {
    let ranges: Vec<Range<usize>> = (0..lattice.len())
        .step_by(CHUNK)
        .map(|start| start..(start + CHUNK).min(lattice.len()))
        .collect();
    let parts: Vec<Result<Vec<bool>, EmpiricalError>> =
        ranges.into_par_iter().map(|r| lattice.evaluate_range(set, r)).collect();
    let mut mask = Vec::with_capacity(lattice.len());
    for part in parts {
        mask.extend(part?);
    }
    Ok(mask)
}

pub fn cover_reports(problem: &Problem) -> Result<Vec<CoverReport>, InputError> {
    let f = require_function(problem)?;
    let grids = problem.grids()?;
    if grids.is_empty() {
        return Ok(Vec::new());
    }
    let lattice = SampleLattice::for_grids(problem.doc.n, &grids).map_err(empirical_error)?;
    let mask = evaluate_mask(&lattice, f).map_err(empirical_error)?;
    reports_from_mask(&lattice, &mask, &grids, &problem.profile).map_err(empirical_error)
}

pub fn verify(problem: &Problem) -> Result<Report, InputError> {
    let reports = cover_reports(problem)?;
    let mut w = writer();
    write_row(
        &mut w,
        ["epsilon", "interior", "boundary", "occupied", "bound_paper", "bound_safe", "flag"],
    );
    let mut violation = false;
    for r in &reports {
        violation |= r.violation;
        write_row(
            &mut w,
            [
                &Exact(&r.epsilon).to_string(),
                &r.counts.interior.to_string(),
                &r.counts.boundary.to_string(),
                &r.counts.occupied.to_string(),
                &Exact(&r.paper_bound).to_string(),
                &Exact(&r.safe_bound).to_string(),
                flag(r.violation, r.paper_exceeded),
            ],
        );
    }
    Ok(finish(w, violation))
}

pub fn component_reports(problem: &Problem) -> Result<Vec<ComponentReport>, InputError> {
    let f = require_function(problem)?;
    let results: Vec<_> = problem
        .sections
        .par_iter()
        .map(|s| component_report(f, &s.spec, s.resolution, s.mode, &problem.profile))
        .collect();
    results.into_iter().map(|r| r.map_err(empirical_error)).collect()
}

pub fn gabrielov(problem: &Problem) -> Result<Report, InputError> {
    let reports = component_reports(problem)?;
    let mut w = writer();
    write_row(
        &mut w,
        ["section", "s", "resolution", "mode", "components", "chat_paper", "chat_safe", "flag"],
    );
    let mut violation = false;
    for (section, r) in problem.sections.iter().zip(&reports) {
        violation |= r.violation;
        let mode = match r.mode {
            SectionMode::Boundary => "boundary",
            SectionMode::Sublevel => "sublevel",
        };
        write_row(
            &mut w,
            [
                &section.label,
                &r.section.s().to_string(),
                &r.resolution.to_string(),
                mode,
                &r.component_count.to_string(),
                &Exact(&r.chat_paper).to_string(),
                &Exact(&r.chat_safe).to_string(),
                flag(r.violation, r.paper_exceeded),
            ],
        );
    }
    Ok(finish(w, violation))
}
