//! JSON problem documents.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use vitushkin_core::rational::{self, Exact};
use vitushkin_core::Rational;

/// An exact rational read from a JSON string (`"1/4"`, `"0.25"`) or number.
/// Numbers go through their shortest decimal form, so `0.1` means `1/10`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Num(pub Rational);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&Exact(&self.0))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct NumVisitor;

        impl Visitor<'_> for NumVisitor {
            type Value = Num;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number or a string such as \"1/4\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                rational::parse(v).map(Num).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(rational::int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                if !v.is_finite() {
                    return Err(E::custom("non-finite number"));
                }
                self.visit_str(&v.to_string())
            }
        }

        d.deserialize_any(NumVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassTag {
    Polynomial,
    Multidegree,
    Laurent,
    Quasipoly,
    Expopoly,
    Semialgebraic,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            Self::Polynomial => "polynomial",
            Self::Multidegree => "multidegree",
            Self::Laurent => "laurent",
            Self::Quasipoly => "quasipoly",
            Self::Expopoly => "expopoly",
            Self::Semialgebraic => "semialgebraic",
        }
    }
}

/// Per-term degrees (quasipoly) or the degree matrix `d_ij` (semialgebraic).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degrees {
    Flat(Vec<u64>),
    Matrix(Vec<Vec<u64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub coef: Num,
    pub exp: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuasiTermDoc {
    pub poly: Vec<MonomialDoc>,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpoTermDoc {
    pub c: [f64; 2],
    pub lambda: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeDoc {
    #[default]
    Boundary,
    Sublevel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionDoc {
    /// `[axis, value]` pairs, axes counted from 1.
    #[serde(default)]
    pub fixed: Vec<(usize, Num)>,
    #[serde(default)]
    pub mode: ModeDoc,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
}

fn default_resolution() -> usize {
    64
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub class: ClassTag,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Degrees>,
    /// Function terms; their shape depends on the class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<serde_json::Value>>,
    /// Lattice points whose hull is the Newton polytope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newton: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<Num>,
    #[serde(default)]
    pub epsilons: Vec<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_axis: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<SectionDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orthant_clip: Option<bool>,
    /// Explicit `Ĉ_0 … Ĉ_n`, replacing the derived constants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chat: Option<Vec<Num>>,
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vitushkin_core::rational::ratio;

    #[test]
    fn numbers_parse_exactly() {
        let v: Vec<Num> = serde_json::from_str(r#"["1/4", 0.1, 3, "2.5e-1"]"#).unwrap();
        assert_eq!(v[0].0, ratio(1, 4));
        assert_eq!(v[1].0, ratio(1, 10));
        assert_eq!(v[2].0, ratio(3, 1));
        assert_eq!(v[3].0, ratio(1, 4));
        assert!(serde_json::from_str::<Num>(r#""1/0""#).is_err());
        assert_eq!(serde_json::to_string(&v[0]).unwrap(), r#""1/4""#);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = ProblemDocument::from_json(r#"{"class":"polynomial","n":2,"degre":3}"#).unwrap_err();
        assert!(err.to_string().contains("degre"));
    }

    #[test]
    fn degrees_shapes() {
        let d: Degrees = serde_json::from_str("[1, 2]").unwrap();
        assert_eq!(d, Degrees::Flat(vec![1, 2]));
        let d: Degrees = serde_json::from_str("[[1], [2, 3]]").unwrap();
        assert_eq!(d, Degrees::Matrix(vec![vec![1], vec![2, 3]]));
    }
}
