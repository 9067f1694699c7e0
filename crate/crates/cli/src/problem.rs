//! Validation of a [`ProblemDocument`] into core objects.

use num_traits::{One, ToPrimitive};
use vitushkin_core::bounds::BoundProfile;
use vitushkin_core::diagram::{
    Diagram, ExpoPolyDiagram, LaurentDiagram, MultiDegreeDiagram, PolyDiagram, SemialgebraicDiagram,
};
use vitushkin_core::empirical::{GridSpec, SectionMode, SectionSpec};
use vitushkin_core::funceval::{
    derive_q_diagram, newton_polytope, Complex, ExpoPoly, ExpoTerm, FunctionKind, MonomialSum,
    QuasiPoly, QuasiTerm, RealFunction,
};
use vitushkin_core::polytope::{convex_hull, LatticePoint, LatticePolytope};
use vitushkin_core::rational::{self, Exact};
use vitushkin_core::Rational;

use crate::document::{
    ClassTag, Degrees, ExpoTermDoc, ModeDoc, MonomialDoc, ProblemDocument, QuasiTermDoc,
};

pub const DEFAULT_SAMPLES_PER_AXIS: u64 = 4;

/// A document error, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct InputError {
    pub field: String,
    pub message: String,
}

pub(crate) fn input_error(field: impl Into<String>, message: impl ToString) -> InputError {
    InputError {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone)]
pub struct Section {
    /// `full`, or the fixed coordinates such as `x2=1/2`.
    pub label: String,
    pub spec: SectionSpec,
    pub mode: SectionMode,
    pub resolution: usize,
}

/// Validated problem: diagram, profile and optional function.
#[derive(Debug, Clone)]
pub struct Problem {
    pub doc: ProblemDocument,
    pub diagram: Diagram,
    pub profile: BoundProfile,
    pub function: Option<RealFunction>,
    /// Newton polytope and clipping used by the polytope report.
    pub newton: Option<(LatticePolytope, bool)>,
    pub epsilons: Vec<Rational>,
    pub samples_per_axis: u64,
    pub sections: Vec<Section>,
}

enum Terms {
    None,
    Monomial(MonomialSum),
    Quasi(QuasiPoly),
    Expo(ExpoPoly),
}

impl Problem {
    pub fn from_document(doc: ProblemDocument) -> Result<Self, InputError> {
        let n = doc.n;
        if n == 0 || n > vitushkin_core::polytope::MAX_DIM {
            return Err(input_error("n", format!("must lie in 1..={}", vitushkin_core::polytope::MAX_DIM)));
        }
        let terms = parse_terms(&doc)?;
        let (diagram, newton) = build_diagram(&doc, &terms)?;

        let mu = doc.mu.as_ref().map_or_else(Rational::one, |m| m.0.clone());
        let profile = match &doc.chat {
            Some(chat) => {
                let values: Vec<Rational> = chat.iter().map(|c| c.0.clone()).collect();
                BoundProfile::exact(n, &values, mu).map_err(|e| input_error("chat", e))?
            }
            None => diagram.section_profile(mu).map_err(|e| input_error("mu", e))?,
        };

        let rho = doc.rho.as_ref().map(|r| rational::to_f64(&r.0));
        let function = match (terms, rho) {
            (Terms::None, _) | (_, None) => None,
            (Terms::Monomial(p), Some(r)) => Some(RealFunction::new(FunctionKind::Monomial(p), r)),
            (Terms::Quasi(q), Some(r)) => Some(RealFunction::new(FunctionKind::QuasiModulusSquared(q), r)),
            (Terms::Expo(e), Some(r)) => Some(RealFunction::new(FunctionKind::ExpoModulus(e), r)),
        };

        let mut epsilons = Vec::with_capacity(doc.epsilons.len());
        for (i, e) in doc.epsilons.iter().enumerate() {
            if rational::reciprocal_integer(&e.0).is_none() {
                return Err(input_error(format!("epsilons[{i}]"), "must be 1/k for a positive integer k"));
            }
            epsilons.push(e.0.clone());
        }

        let samples_per_axis = doc.samples_per_axis.unwrap_or(DEFAULT_SAMPLES_PER_AXIS);
        if samples_per_axis < 2 {
            return Err(input_error("samples_per_axis", "must be at least 2"));
        }

        let sections = doc
            .sections
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let field = format!("sections[{i}]");
                let mut fixed = Vec::with_capacity(s.fixed.len());
                let mut label = Vec::with_capacity(s.fixed.len());
                for (axis, value) in &s.fixed {
                    if *axis == 0 {
                        return Err(input_error(&field, "axes are counted from 1"));
                    }
                    fixed.push((axis - 1, rational::to_f64(&value.0)));
                    label.push(format!("x{axis}={}", Exact(&value.0)));
                }
                let spec = SectionSpec::new(n, fixed).map_err(|e| input_error(&field, e))?;
                if s.resolution < 4 {
                    return Err(input_error(&field, "resolution must be at least 4"));
                }
                Ok(Section {
                    label: if label.is_empty() { "full".into() } else { label.join(";") },
                    spec,
                    mode: match s.mode {
                        ModeDoc::Boundary => SectionMode::Boundary,
                        ModeDoc::Sublevel => SectionMode::Sublevel,
                    },
                    resolution: s.resolution,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(Self {
            doc,
            diagram,
            profile,
            function,
            newton,
            epsilons,
            samples_per_axis,
            sections,
        })
    }

    pub fn grids(&self) -> Result<Vec<GridSpec>, InputError> {
        self.epsilons
            .iter()
            .map(|e| GridSpec::new(self.doc.n, e, self.samples_per_axis).map_err(|err| input_error("epsilons", err)))
            .collect()
    }

    /// The document with numbers and terms in canonical form.
    pub fn normalized(&self) -> ProblemDocument {
        let mut doc = self.doc.clone();
        if let Some(terms) = &doc.terms {
            let canonical = match doc.class {
                ClassTag::Quasipoly => terms
                    .iter()
                    .map(|t| {
                        let mut q: QuasiTermDoc = serde_json::from_value(t.clone()).expect("validated");
                        q.poly = canonical_monomials(&q.poly);
                        serde_json::to_value(q).expect("serializable")
                    })
                    .collect(),
                ClassTag::Expopoly => terms.clone(),
                _ => {
                    let m: Vec<MonomialDoc> = terms
                        .iter()
                        .map(|t| serde_json::from_value(t.clone()).expect("validated"))
                        .collect();
                    canonical_monomials(&m)
                        .into_iter()
                        .map(|t| serde_json::to_value(t).expect("serializable"))
                        .collect()
                }
            };
            doc.terms = Some(canonical);
        }
        doc
    }
}

fn canonical_monomials(terms: &[MonomialDoc]) -> Vec<MonomialDoc> {
    let mut out = terms.to_vec();
    out.sort_by(|a, b| a.exp.cmp(&b.exp));
    out
}

fn parse_monomials(field: &str, n: usize, raw: &[MonomialDoc]) -> Result<MonomialSum, InputError> {
    let terms = raw.iter().map(|t| (t.coef.0.clone(), t.exp.clone())).collect();
    MonomialSum::new(n, terms).map_err(|e| input_error(field, e))
}

fn parse_terms(doc: &ProblemDocument) -> Result<Terms, InputError> {
    let Some(raw) = &doc.terms else {
        return Ok(Terms::None);
    };
    let n = doc.n;
    match doc.class {
        ClassTag::Polynomial | ClassTag::Multidegree | ClassTag::Laurent => {
            let mut mono = Vec::with_capacity(raw.len());
            for (i, v) in raw.iter().enumerate() {
                let (field, v) = (format!("terms[{i}]"), v.clone());
                mono.push(serde_json::from_value::<MonomialDoc>(v).map_err(|e| input_error(field, e))?);
            }
            let p = parse_monomials("terms", n, &mono)?;
            if p.is_zero() {
                return Err(input_error("terms", "zero polynomial"));
            }
            if doc.class != ClassTag::Laurent && p.has_negative_exponents() {
                return Err(input_error("terms", "negative exponents need class \"laurent\""));
            }
            Ok(Terms::Monomial(p))
        }
        ClassTag::Quasipoly => {
            let mut terms = Vec::with_capacity(raw.len());
            for (i, v) in raw.iter().enumerate() {
                let (field, v) = (format!("terms[{i}]"), v.clone());
                let t: QuasiTermDoc = serde_json::from_value(v).map_err(|e| input_error(&field, e))?;
                let poly = parse_monomials(&field, n, &t.poly)?;
                terms.push(QuasiTerm { poly, a: t.a, b: t.b });
            }
            QuasiPoly::new(n, terms).map(Terms::Quasi).map_err(|e| input_error("terms", e))
        }
        ClassTag::Expopoly => {
            if n != 1 {
                return Err(input_error("n", "exponential polynomials are univariate"));
            }
            let mut terms = Vec::with_capacity(raw.len());
            for (i, v) in raw.iter().enumerate() {
                let (field, v) = (format!("terms[{i}]"), v.clone());
                let t: ExpoTermDoc = serde_json::from_value(v).map_err(|e| input_error(field, e))?;
                terms.push(ExpoTerm {
                    c: Complex::new(t.c[0], t.c[1]),
                    lambda: Complex::new(t.lambda[0], t.lambda[1]),
                });
            }
            ExpoPoly::new(terms).map(Terms::Expo).map_err(|e| input_error("terms", e))
        }
        ClassTag::Semialgebraic => Err(input_error("terms", "not supported for class \"semialgebraic\"")),
    }
}

fn unused(doc: &ProblemDocument, field: &str, present: bool) -> Result<(), InputError> {
    if present {
        Err(input_error(field, format!("not used by class \"{}\"", doc.class.name())))
    } else {
        Ok(())
    }
}

fn to_u64(v: i64) -> u64 {
    v.max(0).to_u64().unwrap_or(0)
}

fn build_diagram(doc: &ProblemDocument, terms: &Terms) -> Result<(Diagram, Option<(LatticePolytope, bool)>), InputError> {
    let n = doc.n;
    let class = doc.class;
    if class != ClassTag::Laurent && class != ClassTag::Polynomial && class != ClassTag::Multidegree {
        unused(doc, "newton", doc.newton.is_some())?;
        unused(doc, "orthant_clip", doc.orthant_clip.is_some())?;
    }
    match class {
        ClassTag::Polynomial | ClassTag::Multidegree => {
            unused(doc, "degrees", doc.degrees.is_some())?;
            unused(doc, "newton", doc.newton.is_some())?;
            let from_terms = match terms {
                Terms::Monomial(p) if class == ClassTag::Polynomial => Some(to_u64(p.total_degree())),
                Terms::Monomial(p) => Some(to_u64(p.max_partial_degree())),
                _ => None,
            };
            let d = match (doc.degree, from_terms) {
                (Some(d), Some(t)) if t > d => {
                    return Err(input_error("degree", format!("terms have degree {t} > {d}")));
                }
                (Some(d), _) => d,
                (None, Some(t)) => t.max(1),
                (None, None) => return Err(input_error("degree", "required without terms")),
            };
            let standard = if class == ClassTag::Polynomial {
                LatticePolytope::simplex(n, d as i64)
            } else {
                LatticePolytope::cube(n, d as i64)
            }
            .map_err(|e| input_error("degree", e))?;
            let newton = match terms {
                Terms::Monomial(p) => newton_polytope(p).map_err(|e| input_error("terms", e))?,
                _ => standard,
            };
            let clip = doc.orthant_clip.unwrap_or(true);
            let diagram = if class == ClassTag::Polynomial {
                Diagram::Polynomial(PolyDiagram::new(n, d).map_err(|e| input_error("degree", e))?)
            } else {
                Diagram::MultiDegree(MultiDegreeDiagram::new(n, d).map_err(|e| input_error("degree", e))?)
            };
            Ok((diagram, Some((newton, clip))))
        }
        ClassTag::Laurent => {
            unused(doc, "degree", doc.degree.is_some())?;
            unused(doc, "degrees", doc.degrees.is_some())?;
            let newton = match (&doc.newton, terms) {
                (Some(points), _) => {
                    let pts = points
                        .iter()
                        .map(|p| {
                            if p.len() != n {
                                return Err(input_error("newton", format!("point {p:?} is not in dimension {n}")));
                            }
                            LatticePoint::new(p.clone()).map_err(|e| input_error("newton", e))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    convex_hull(&pts).map_err(|e| input_error("newton", e))?
                }
                (None, Terms::Monomial(p)) => newton_polytope(p).map_err(|e| input_error("terms", e))?,
                _ => return Err(input_error("newton", "required without terms")),
            };
            let mut diag = LaurentDiagram::new(newton.clone());
            if let Some(clip) = doc.orthant_clip {
                diag = diag.with_orthant_clip(clip);
            }
            let clip = diag.orthant_clip;
            Ok((Diagram::Laurent(diag), Some((newton, clip))))
        }
        ClassTag::Quasipoly => {
            unused(doc, "degree", doc.degree.is_some())?;
            let Terms::Quasi(q) = terms else {
                return Err(input_error("terms", "required for class \"quasipoly\""));
            };
            let mut diag = derive_q_diagram(q);
            match &doc.degrees {
                Some(Degrees::Flat(sums)) => {
                    if sums.len() < n {
                        return Err(input_error("degrees", format!("need {n} degree sums")));
                    }
                    diag = diag.with_degree_sums(sums.clone());
                }
                Some(Degrees::Matrix(_)) => return Err(input_error("degrees", "expected a flat list of degree sums")),
                None => {}
            }
            Ok((Diagram::QuasiPoly(diag), None))
        }
        ClassTag::Expopoly => {
            unused(doc, "degree", doc.degree.is_some())?;
            unused(doc, "degrees", doc.degrees.is_some())?;
            let Terms::Expo(e) = terms else {
                return Err(input_error("terms", "required for class \"expopoly\""));
            };
            let (m, hat) = e.degree();
            let diag = ExpoPolyDiagram::new(m, hat, e.is_real()).map_err(|err| input_error("terms", err))?;
            Ok((Diagram::ExpoPoly(diag), None))
        }
        ClassTag::Semialgebraic => {
            unused(doc, "degree", doc.degree.is_some())?;
            let Some(Degrees::Matrix(rows)) = &doc.degrees else {
                return Err(input_error("degrees", "expected a matrix of degrees d_ij"));
            };
            let diag = SemialgebraicDiagram::new(n, rows.clone()).map_err(|e| input_error("degrees", e))?;
            Ok((Diagram::Semialgebraic(diag), None))
        }
    }
}

/// Parses a document, mapping JSON errors to field-less input errors.
pub fn parse_document(text: &str) -> Result<ProblemDocument, InputError> {
    ProblemDocument::from_json(text).map_err(|e| input_error("document", e))
}
