//! Problem documents, CSV reports and the command runner behind the
//! `vitushkin` binary.

pub mod document;
pub mod problem;
pub mod report;

use std::fmt;

pub use document::ProblemDocument;
pub use problem::{InputError, Problem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Table of the assembled covering bound.
    Bound,
    /// Newton polytope vertices, volume and shifted-projection profile.
    Polytope,
    /// Grid-cover counts against the bound.
    Verify,
    /// Section component counts against the Gabrielov constants.
    Gabrielov,
    /// Echo the document in canonical form.
    Normalize,
}

/// Process exit status: 0 pass, 1 safe-bound violation, 2 input error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Violation = 1,
    InputError = 2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: Vec<u8>,
    pub status: Status,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Bound => "bound",
            Self::Polytope => "polytope",
            Self::Verify => "verify",
            Self::Gabrielov => "gabrielov",
            Self::Normalize => "normalize",
        };
        f.write_str(name)
    }
}

/// Runs one document. `threads = 0` lets the pool pick its size.
pub fn run(text: &str, mode: Mode, threads: usize) -> Result<Outcome, InputError> {
    let doc = problem::parse_document(text)?;
    let problem = Problem::from_document(doc)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| problem::input_error("threads", e))?;
    let report = pool.install(|| match mode {
        Mode::Bound => report::bound(&problem),
        Mode::Polytope => report::polytope(&problem),
        Mode::Verify => report::verify(&problem),
        Mode::Gabrielov => report::gabrielov(&problem),
        Mode::Normalize => Ok(report::Report {
            csv: problem.normalized().to_json().into_bytes(),
            violation: false,
        }),
    })?;
    Ok(Outcome {
        output: report.csv,
        status: if report.violation {
            Status::Violation
        } else {
            Status::Pass
        },
    })
}
