//! Machine-readable reports. Key order is fixed by field order; rationals
//! are strings `num/den`, integers are decimal strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use qmdecide_core::brauer::BrauerClass;
use qmdecide_core::nf::{NfElem, NumberField};
use qmdecide_core::qm::{QmDecision, Witness};
use qmdecide_core::{IntPoly, Rat, RatPoly};

pub fn rat_str(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn int_poly_strs(f: &IntPoly) -> Vec<String> {
    f.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn rat_poly_strs(f: &RatPoly) -> Vec<String> {
    f.coeffs().iter().map(rat_str).collect()
}

fn elem_strs(k: &NumberField, a: &NfElem) -> Vec<String> {
    let mut v = rat_poly_strs(a.rep());
    v.resize(k.degree().max(1), "0/1".into());
    v
}

pub fn class_map(c: &BrauerClass) -> BTreeMap<String, String> {
    c.invariants().iter().map(|(l, v)| (l.to_string(), rat_str(v))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WitnessOut {
    Embedding {
        factor: usize,
        source: Vec<String>,
        target: Vec<String>,
        image: Vec<String>,
    },
    Extension {
        factor: usize,
        base: Vec<String>,
        relative_poly: Vec<Vec<String>>,
        absolute_poly: Vec<String>,
        pi_image: Vec<String>,
        base_image: Vec<String>,
    },
    Class {
        factor: usize,
        piece: usize,
        role: String,
        field: Vec<String>,
        invariants: BTreeMap<String, String>,
    },
    Yu {
        factor: usize,
        v_dim: u64,
        steps: Vec<u64>,
        x: Vec<u64>,
    },
}

impl WitnessOut {
    pub fn from_witness(w: &Witness) -> Self {
        match w {
            Witness::Embedding { factor, embedding } => WitnessOut::Embedding {
                factor: *factor,
                source: int_poly_strs(embedding.source.defining_poly()),
                target: int_poly_strs(embedding.target.defining_poly()),
                image: elem_strs(&embedding.target, &embedding.image),
            },
            Witness::Extension { factor, extension } => WitnessOut::Extension {
                factor: *factor,
                base: int_poly_strs(extension.base.defining_poly()),
                relative_poly: extension
                    .rel_poly
                    .coeffs()
                    .iter()
                    .map(|c| elem_strs(&extension.base, c))
                    .collect(),
                absolute_poly: int_poly_strs(extension.abs_field.defining_poly()),
                pi_image: elem_strs(&extension.abs_field, &extension.pi_image),
                base_image: elem_strs(&extension.abs_field, &extension.base_embedding.image),
            },
            Witness::Class { factor, piece, role, class } => WitnessOut::Class {
                factor: *factor,
                piece: *piece,
                role: role.as_str().into(),
                field: int_poly_strs(class.field().defining_poly()),
                invariants: class_map(class),
            },
            Witness::Yu { factor, v_dim, steps, x } => WitnessOut::Yu {
                factor: *factor,
                v_dim: *v_dim,
                steps: steps.clone(),
                x: x.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecisionOut {
    pub verdict: String,
    pub path: String,
    pub witnesses: Vec<WitnessOut>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<DecisionOut>,
}

impl DecisionOut {
    pub fn from_decision(d: &QmDecision) -> Self {
        DecisionOut {
            verdict: if d.verdict { "yes" } else { "no" }.into(),
            path: d.path.as_str().into(),
            witnesses: d.witnesses.iter().map(WitnessOut::from_witness).collect(),
            notes: d.notes.clone(),
            factors: d.factors.iter().map(DecisionOut::from_decision).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decision: Option<DecisionOut>,
    /// Command-specific payload; object keys are sorted.
    pub result: serde_json::Value,
    pub timings: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &str, result: serde_json::Value) -> Self {
        Report { command: command.into(), decision: None, result, timings: BTreeMap::new() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
