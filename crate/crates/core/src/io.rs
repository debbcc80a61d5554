//! Operator-spec ingestion and result serialization.
//!
//! JSON floats are written with 17 significant digits, which round-trips
//! every `f64`; CSV floats use 12.

use std::io;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gsv::{DofStepFunction, SingularProfile, TruncationPoint};
use crate::norms::{Norm, NormKind};
use crate::operators::{Generator, MatrixOperator, SequenceOperator};

pub const JSON_DIGITS: usize = 17;
pub const CSV_DIGITS: usize = 12;

/// Formats `v` with `digits` significant digits, in positional notation for
/// moderate exponents and scientific notation otherwise.
pub fn format_sig(v: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if v == 0.0 || !v.is_finite() {
        return format!("{:.*}", digits - 1, if v.is_finite() { 0.0 } else { v });
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let exp: i64 = sci
        .rsplit_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .expect("scientific format has an exponent");
    if (-5..digits as i64).contains(&exp) {
        format!("{:.*}", (digits as i64 - 1 - exp) as usize, v)
    } else {
        sci
    }
}

struct SigFormatter;

impl serde_json::ser::Formatter for SigFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_sig(value, JSON_DIGITS).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(out).map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Operator description read from a spec file.
#[derive(Debug, Clone)]
pub enum OperatorSpec {
    Inline(MatrixOperator),
    Generator {
        generator: Generator,
        n: usize,
        m_rows: Option<usize>,
        domain: NormKind,
        codomain: NormKind,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InlineSpec {
    m: usize,
    n: usize,
    matrix: Vec<f64>,
    domain_norm: Norm,
    codomain_norm: Norm,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorSpec {
    generator: String,
    n: usize,
    #[serde(default)]
    m_rows: Option<usize>,
    #[serde(default)]
    domain_norm: Option<Norm>,
    #[serde(default)]
    codomain_norm: Option<Norm>,
}

fn unweighted_kind(norm: Option<Norm>) -> Result<NormKind> {
    match norm {
        None => Ok(NormKind::L1),
        Some(n) if n.is_weighted() => Err(Error::Parse(
            "generator norms are instantiated per truncation and cannot carry weights".into(),
        )),
        Some(n) => Ok(n.kind()),
    }
}

impl OperatorSpec {
    /// Parses either the inline form
    /// `{"m", "n", "matrix", "domain_norm", "codomain_norm"}` or the generator
    /// form `{"generator", "n", "m_rows"?, "domain_norm"?, "codomain_norm"?}`
    /// (generator norms default to ℓ¹).
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = from_json(text)?;
        let is_generator = value.get("generator").is_some();
        if is_generator {
            let spec: GeneratorSpec =
                serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            if spec.n == 0 || spec.m_rows == Some(0) {
                return Err(Error::Parse("generator dimensions must be positive".into()));
            }
            Ok(OperatorSpec::Generator {
                generator: Generator::from_name(&spec.generator)?,
                n: spec.n,
                m_rows: spec.m_rows,
                domain: unweighted_kind(spec.domain_norm)?,
                codomain: unweighted_kind(spec.codomain_norm)?,
            })
        } else {
            let spec: InlineSpec =
                serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            MatrixOperator::new(
                spec.m,
                spec.n,
                spec.matrix,
                spec.domain_norm,
                spec.codomain_norm,
            )
            .map(OperatorSpec::Inline)
        }
    }

    /// The matrix operator described by the spec; generators are truncated
    /// to `n` columns and `m_rows` rows (default: as many as they need).
    pub fn build(&self) -> Result<MatrixOperator> {
        match self {
            OperatorSpec::Inline(t) => Ok(t.clone()),
            OperatorSpec::Generator {
                generator,
                n,
                m_rows,
                ..
            } => self
                .sequence_operator()
                .expect("generator spec")
                .truncate(*n, m_rows.unwrap_or_else(|| generator.natural_rows(*n))),
        }
    }

    pub fn sequence_operator(&self) -> Option<SequenceOperator> {
        match self {
            OperatorSpec::Inline(_) => None,
            OperatorSpec::Generator {
                generator,
                domain,
                codomain,
                ..
            } => Some(generator.sequence_operator(*domain, *codomain)),
        }
    }
}

/// Reads a profile from either a bare `{values, provenance}` object or a
/// CLI document that wraps it under `"profile"`.
pub fn parse_profile(text: &str) -> Result<SingularProfile> {
    let value: Value = from_json(text)?;
    let inner = match value.get("profile") {
        Some(p) => p.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| Error::Parse(e.to_string()))
}

/// `m,epsilon_m,provenance` rows.
pub fn profile_csv(profile: &SingularProfile) -> String {
    let mut out = String::from("m,epsilon_m,provenance\n");
    for (i, (v, p)) in profile.values().iter().zip(profile.provenance()).enumerate() {
        out.push_str(&format!("{},{},{}\n", i + 1, format_sig(*v, CSV_DIGITS), p.name()));
    }
    out
}

/// `epsilon,N` samples of a step function.
pub fn step_csv(step: &DofStepFunction) -> String {
    let mut out = String::from("epsilon,N\n");
    for (eps, n) in step.samples() {
        out.push_str(&format!("{},{}\n", format_sig(eps, CSV_DIGITS), n));
    }
    out
}

/// `n,epsilon_m_n,provenance` rows; missing values leave the cells empty.
pub fn truncation_csv(points: &[TruncationPoint]) -> String {
    let mut out = String::from("n,epsilon_m_n,provenance\n");
    for p in points {
        let eps = p.epsilon.map(|e| format_sig(e, CSV_DIGITS)).unwrap_or_default();
        let prov = p.provenance.map(|p| p.name()).unwrap_or_default();
        out.push_str(&format!("{},{},{}\n", p.n, eps, prov));
    }
    out
}
