//! State-space realizations of polynomial encoders.

mod kalman;
mod state_space;

pub use kalman::{canonical_reduction, ReductionStats};
pub use state_space::{find_similarity, is_nilpotent, ConditionClause, ConditionReport, FeedbackWitness, StateSpace};

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldMatrix};
use crate::polymat::PolyMatrix;

/// Controller-form realization of a full-row-rank encoder.
///
/// Row `i` of degree `νᵢ` contributes a `νᵢ × νᵢ` shift block to `A`, a unit
/// vector at the start of that block as row `i` of `B` (a zero row when
/// `νᵢ = 0`), and the coefficients of `z, …, z^{νᵢ}` as the block's rows of
/// `C`. `D = G(0)`.
pub fn controller_form(g: &PolyMatrix) -> Result<StateSpace> {
    if !g.has_full_row_rank() {
        return Err(Error::RankDeficient);
    }
    let f = g.field();
    let degs = g.row_degrees()?;
    let delta: usize = degs.iter().sum();
    let (k, n) = (g.rows(), g.cols());
    let mut a = FieldMatrix::zeros(f, delta, delta);
    let mut b = FieldMatrix::zeros(f, k, delta);
    let mut c = FieldMatrix::zeros(f, delta, n);
    let mut offset = 0;
    for (i, &nu) in degs.iter().enumerate() {
        if nu > 0 {
            b.set(i, offset, Elem::ONE);
        }
        for r in 0..nu {
            if r + 1 < nu {
                a.set(offset + r, offset + r + 1, Elem::ONE);
            }
            for j in 0..n {
                c.set(offset + r, j, g.get(i, j).coeff(r + 1));
            }
        }
        offset += nu;
    }
    StateSpace::new(a, b, c, g.coefficient(0))
}

/// McMillan degree of `G(z⁻¹)`: the order of a canonical realization.
pub fn mcmillan_degree(g: &PolyMatrix) -> Result<usize> {
    let cf = controller_form(g)?;
    Ok(canonical_reduction(&cf).0.delta())
}

pub fn is_semi_reduced(g: &PolyMatrix) -> Result<bool> {
    Ok(mcmillan_degree(g)? == g.degree()?)
}

/// Canonical realization of `g`: its controller form, reduced.
pub fn canonical_realization(g: &PolyMatrix) -> Result<StateSpace> {
    Ok(canonical_reduction(&controller_form(g)?).0)
}
