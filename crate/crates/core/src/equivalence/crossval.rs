//! Sampling harness comparing the direct and adjacency-matrix verdicts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::monomial::{monomial_equivalent_direct, monomial_equivalent_wam};
use super::SearchOptions;
use crate::error::{Error, Result};
use crate::galois::Field;
use crate::polymat::PolyMatrix;
use crate::sample::{random_basic_reduced, random_degree_preserving_unimodular, random_monomial_transform};

#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub field: Field,
    pub n: usize,
    /// Forney indices of every generated encoder; `k` is their count.
    pub indices: Vec<usize>,
    pub pairs: usize,
    pub seed: u64,
    pub options: SearchOptions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairOutcome {
    pub index: usize,
    pub planted: bool,
    pub lhs: String,
    pub rhs: String,
    pub direct: bool,
    pub wam: bool,
}

impl PairOutcome {
    pub fn agrees(&self) -> bool {
        self.direct == self.wam
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub pairs: Vec<PairOutcome>,
}

impl CrossValidation {
    pub fn disagreements(&self) -> Vec<&PairOutcome> {
        self.pairs.iter().filter(|p| !p.agrees()).collect()
    }

    /// Planted pairs where either method missed the equivalence.
    pub fn planted_misses(&self) -> Vec<&PairOutcome> {
        self.pairs.iter().filter(|p| p.planted && !(p.direct && p.wam)).collect()
    }

    pub fn equivalent_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.direct).count()
    }
}

/// Runs both monomial tests on `spec.pairs` sampled pairs. Even-numbered
/// pairs are planted: the second encoder is `W·φ(G)PR` for a random
/// transform and a degree-preserving unimodular `W`. Odd-numbered pairs are
/// drawn independently with the same index profile.
pub fn cross_validate_main_theorem(spec: &SampleSpec) -> Result<CrossValidation> {
    if spec.indices.is_empty() || spec.indices.contains(&0) {
        return Err(Error::ZeroForneyIndex);
    }
    if spec.indices.len() > spec.n {
        return Err(Error::Shape(format!("k = {} exceeds n = {}", spec.indices.len(), spec.n)));
    }
    let f = &spec.field;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut pairs = Vec::with_capacity(spec.pairs);
    for index in 0..spec.pairs {
        let planted = index % 2 == 0;
        let g = random_basic_reduced(&mut rng, f, spec.n, &spec.indices);
        let h: PolyMatrix = if planted {
            let t = random_monomial_transform(&mut rng, f, spec.n, spec.options.automorphisms);
            let w = random_degree_preserving_unimodular(&mut rng, f, &spec.indices, 4);
            w.mul(&t.apply(&g)?)
        } else {
            random_basic_reduced(&mut rng, f, spec.n, &spec.indices)
        };
        let direct = monomial_equivalent_direct(&g, &h, &spec.options)?;
        let wam = monomial_equivalent_wam(&g, &h, &spec.options)?;
        for (r, name) in [(&direct, "direct"), (&wam, "wam")] {
            if !r.verify(&g, &h, spec.options.max_states)? {
                return Err(Error::Internal(format!("{name} witness failed on pair {index}")));
            }
        }
        pairs.push(PairOutcome {
            index,
            planted,
            lhs: g.to_string(),
            rhs: h.to_string(),
            direct: direct.verdict,
            wam: wam.verdict,
        });
    }
    Ok(CrossValidation { pairs })
}
