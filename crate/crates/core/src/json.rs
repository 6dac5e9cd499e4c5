//! JSON interchange. Rationals are serialized as strings `"p/q"` (or
//! `"p"` when the denominator is one) everywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, Rational};
use crate::gpt::{EffectSet, Measurement};
use crate::polytope::VRep;
use crate::sigdim::{ClassReport, SigDimReport, SimulationCertificate};
use crate::symmetry::Permutation;

#[derive(Serialize, Deserialize)]
struct VRepJson {
    vertices: Vec<Vec<String>>,
}

/// Parses `{"vertices": [["1", "0", "-1/2"], ...]}` with full validation
/// (rational syntax, equal lengths, duplicates, extremeness).
pub fn parse_vrep(text: &str) -> Result<VRep> {
    let raw: VRepJson = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("invalid vertex JSON: {e}")))?;
    let mut vertices = Vec::with_capacity(raw.vertices.len());
    for (i, row) in raw.vertices.iter().enumerate() {
        let mut v = Vec::with_capacity(row.len());
        for s in row {
            v.push(parse_rational(s).map_err(|e| {
                Error::Parse(format!("vertex {i}: {e}"))
            })?);
        }
        vertices.push(v);
    }
    VRep::new(vertices)
}

/// Canonical JSON form of a vertex set.
pub fn vrep_to_json(v: &VRep) -> String {
    let raw = VRepJson {
        vertices: v
            .vertices()
            .iter()
            .map(|row| row.iter().map(format_rational).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("vertex serialization cannot fail")
}

fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

#[derive(Serialize)]
struct EffectsJson {
    lin_dim: usize,
    zero_index: usize,
    unit_index: usize,
    effects: Vec<Vec<String>>,
}

/// JSON list of all extremal effect vectors, trivial ones flagged by index.
pub fn effects_to_json(effects: &EffectSet) -> String {
    let doc = EffectsJson {
        lin_dim: effects
            .effects()
            .first()
            .map_or(0, |e| e.vector.len()),
        zero_index: effects.zero_index(),
        unit_index: effects.unit_index(),
        effects: effects
            .effects()
            .iter()
            .map(|e| rationals_to_strings(&e.vector))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("effect serialization cannot fail")
}

#[derive(Serialize)]
struct OutcomeJson {
    effect: usize,
    coefficient: String,
}

#[derive(Serialize)]
struct MeasurementsJson {
    measurements: Vec<Vec<OutcomeJson>>,
}

/// JSON list of measurements as effect-index sets with coefficients.
pub fn measurements_to_json(measurements: &[Measurement]) -> String {
    let doc = MeasurementsJson {
        measurements: measurements
            .iter()
            .map(|m| {
                m.outcomes()
                    .iter()
                    .map(|(idx, alpha)| OutcomeJson {
                        effect: *idx,
                        coefficient: format_rational(alpha),
                    })
                    .collect()
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("measurement serialization cannot fail")
}

#[derive(Serialize)]
struct CertificateJson {
    assignments: Vec<Vec<usize>>,
    weights: Vec<String>,
}

#[derive(Serialize)]
struct ClassJson {
    representative: Vec<OutcomeJson>,
    class_size: usize,
    minimal_d: usize,
    reduced_rows: Vec<Vec<String>>,
    certificate: Option<CertificateJson>,
}

#[derive(Serialize)]
struct SigDimJson {
    value: usize,
    lower_bound: usize,
    upper_bound: usize,
    centrally_symmetric: bool,
    via_corollary_2d: bool,
    group_order: Option<usize>,
    num_measurements: Option<usize>,
    num_classes: Option<usize>,
    classes: Vec<ClassJson>,
}

fn certificate_json(cert: &SimulationCertificate) -> CertificateJson {
    CertificateJson {
        assignments: cert
            .vertices
            .iter()
            .map(|v| v.assignment.clone())
            .collect(),
        weights: rationals_to_strings(&cert.weights),
    }
}

fn class_json(class: &ClassReport) -> ClassJson {
    ClassJson {
        representative: class
            .representative
            .outcomes()
            .iter()
            .map(|(idx, alpha)| OutcomeJson {
                effect: *idx,
                coefficient: format_rational(alpha),
            })
            .collect(),
        class_size: class.class_size,
        minimal_d: class.minimal_d,
        reduced_rows: class
            .reduced
            .rows()
            .iter()
            .map(|r| rationals_to_strings(r))
            .collect(),
        certificate: class.certificate.as_ref().map(certificate_json),
    }
}

/// Full JSON rendering of a signaling-dimension report.
pub fn sigdim_to_json(report: &SigDimReport) -> String {
    let doc = SigDimJson {
        value: report.value,
        lower_bound: report.bounds.lower,
        upper_bound: report.bounds.upper,
        centrally_symmetric: report.bounds.cs,
        via_corollary_2d: report.via_corollary,
        group_order: report.group_order,
        num_measurements: report.num_measurements,
        num_classes: report.num_classes,
        classes: report.classes.iter().map(class_json).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("report serialization cannot fail")
}

/// Certificates only, keyed by class position.
pub fn certificates_to_json(report: &SigDimReport) -> String {
    #[derive(Serialize)]
    struct Entry {
        class: usize,
        minimal_d: usize,
        reduced_rows: Vec<Vec<String>>,
        certificate: Option<CertificateJson>,
    }
    let doc: Vec<Entry> = report
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| Entry {
            class: i,
            minimal_d: c.minimal_d,
            reduced_rows: c
                .reduced
                .rows()
                .iter()
                .map(|r| rationals_to_strings(r))
                .collect(),
            certificate: c.certificate.as_ref().map(certificate_json),
        })
        .collect();
    serde_json::to_string_pretty(&doc).expect("certificate serialization cannot fail")
}

#[derive(Serialize)]
struct MappingJson {
    images: Vec<usize>,
}

/// A label correspondence, 1-based images.
pub fn permutation_to_json(p: &Permutation) -> String {
    let doc = MappingJson {
        images: p.images().iter().map(|i| i + 1).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("permutation serialization cannot fail")
}
