//! Code-level decision procedures: monomial equivalence by direct search
//! and through adjacency matrices, feedback-orbit equivalence of
//! realizations, and the agreement check between the two monomial tests.

mod crossval;
mod feedback;
mod monomial;

pub use crossval::{cross_validate_main_theorem, CrossValidation, PairOutcome, SampleSpec};
pub use feedback::{feedback_equivalent, FeedbackOutcome};
pub use monomial::{
    direct_search_size, encoder_wam, monomial_equivalent_direct, monomial_equivalent_wam, MonomialTransform,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polymat::{code_equal, PolyMatrix};
use crate::text::{format_elem, format_field_matrix};
use crate::wam::{RelabelWitness, Wam, DEFAULT_MAX_STATES};

/// Default ceiling on candidates examined by one search.
pub const DEFAULT_MAX_SEARCH: u128 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Allow nontrivial field automorphisms in the transform.
    pub automorphisms: bool,
    pub max_search: u128,
    pub max_states: usize,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            automorphisms: true,
            max_search: DEFAULT_MAX_SEARCH,
            max_states: DEFAULT_MAX_STATES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Direct,
    Wam,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Wam => "wam",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Monomial(MonomialTransform),
    /// State relabeling `T` together with the automorphism.
    Relabel(RelabelWitness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub verdict: bool,
    pub method: Method,
    pub witness: Option<Witness>,
    pub search_size: u128,
    pub candidates_checked: u64,
}

impl EquivalenceReport {
    /// Re-checks the witness against the inputs: code equality for a
    /// monomial transform, entrywise relabeling for an adjacency witness.
    pub fn verify(&self, g: &PolyMatrix, h: &PolyMatrix, max_states: usize) -> Result<bool> {
        match (&self.witness, self.verdict) {
            (None, verdict) => Ok(!verdict),
            (Some(_), false) => Ok(false),
            (Some(Witness::Monomial(t)), true) => code_equal(&t.apply(g)?, h),
            (Some(Witness::Relabel(w)), true) => {
                let (lg, lh): (Wam, Wam) = (encoder_wam(g, max_states)?, encoder_wam(h, max_states)?);
                Ok(lg.relabel(&w.t, &w.phi)? == lh)
            }
        }
    }

    pub fn to_json(&self) -> ReportJson {
        let witness = self.witness.as_ref().map(|w| match w {
            Witness::Monomial(t) => {
                let f = t.phi().field();
                WitnessJson::Monomial {
                    phi: t.phi().to_string(),
                    perm: t.perm().to_vec(),
                    scales: t.scales().iter().map(|&e| format_elem(f, e)).collect(),
                    matrix: format_field_matrix(&t.monomial_matrix()),
                }
            }
            Witness::Relabel(r) => WitnessJson::Relabel {
                phi: r.phi.to_string(),
                t: format_field_matrix(&r.t),
            },
        });
        ReportJson {
            verdict: self.verdict,
            method: self.method,
            witness,
            search_size: self.search_size.to_string(),
            candidates_checked: self.candidates_checked,
            timings_ms: None,
        }
    }
}

/// Serialized report. `search_size` is a decimal string since it can
/// exceed 64 bits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub verdict: bool,
    pub method: Method,
    pub witness: Option<WitnessJson>,
    pub search_size: String,
    pub candidates_checked: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessJson {
    /// `matrix` is `P·R` in the constant-matrix text format.
    Monomial {
        phi: String,
        perm: Vec<usize>,
        scales: Vec<String>,
        matrix: String,
    },
    Relabel { phi: String, t: String },
}
