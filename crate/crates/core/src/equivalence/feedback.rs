//! Equivalence of realizations under the full state feedback group.

use crate::error::{Error, Result};
use crate::galois::FieldMatrix;
use crate::polymat::{popov_form, right_inverse, PolyMatrix};
use crate::realization::{controller_form, find_similarity, is_semi_reduced, FeedbackWitness, StateSpace};

/// Outcome of [`feedback_equivalent`]; a witness accompanies every `true`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeedbackOutcome {
    pub equivalent: bool,
    pub witness: Option<FeedbackWitness>,
}

/// Checks the preconditions and returns the reconstructed encoder.
fn admissible_encoder(sys: &StateSpace, semi_reduced: bool) -> Result<PolyMatrix> {
    if !sys.is_canonical() {
        return Err(Error::NotCanonical);
    }
    let cond = sys.check_condition();
    if let Some(clause) = cond.failed_clause() {
        return Err(Error::ConditionViolated(clause.to_string()));
    }
    let g = sys.reconstruct_encoder()?;
    if semi_reduced {
        if !is_semi_reduced(&g)? {
            return Err(Error::NotSemiReduced);
        }
    } else if !g.is_reduced()? {
        return Err(Error::NotReduced);
    }
    Ok(g)
}

/// Feedback `w` taking the controller form of `popov(G)` to `sys`, where
/// `G` is the encoder of `sys`.
///
/// With `P = Ŵ·G`, the constant term gives `U = Ŵ(0)⁻¹` and the higher
/// coefficients of `ŴU − I` are the rows of `M`, block by block. The
/// remaining state isomorphism comes from comparing the two canonical
/// realizations of `G`.
fn witness_from_reference(sys: &StateSpace, g: &PolyMatrix) -> Result<(PolyMatrix, FeedbackWitness)> {
    let f = sys.field().clone();
    let p = popov_form(g)?;
    let w_hat = p.mul(&right_inverse(g)?);
    if w_hat.mul(g) != p {
        return Err(Error::Internal("Popov transform does not map the encoder".into()));
    }
    let nu = p.row_degrees()?;
    let k = g.rows();
    for (i, &d) in nu.iter().enumerate() {
        if w_hat.row_degree(i).is_some_and(|r| r > d) {
            return Err(Error::Internal(format!(
                "row {i} of the transform exceeds the reference row degree {d}"
            )));
        }
    }
    let u = w_hat.coefficient(0).inverse()?;
    let shifted = w_hat.mul_constant(&u)?.sub(&PolyMatrix::identity(&f, k));
    let delta: usize = nu.iter().sum();
    let mut m = FieldMatrix::zeros(&f, delta, k);
    let mut offset = 0;
    for (i, &d) in nu.iter().enumerate() {
        for j in 1..=d {
            for c in 0..k {
                m.set(offset + j - 1, c, shifted.get(i, c).coeff(j));
            }
        }
        offset += d;
    }
    let reference = controller_form(&p)?;
    let step = FeedbackWitness {
        t: FieldMatrix::identity(&f, delta),
        u,
        m,
    };
    let mid = reference.apply_feedback(&step)?;
    let s = find_similarity(&mid, sys)
        .ok_or_else(|| Error::Internal("no state isomorphism onto the given realization".into()))?;
    let w = step.then(&FeedbackWitness::from_similarity(&s, k)?);
    Ok((p, w))
}

/// Decides whether two realizations lie in one feedback orbit, i.e. whether
/// their encoders generate the same code, and builds `(T, U, M)` when so.
///
/// Both systems must be canonical, satisfy the rank condition, and have
/// reduced encoders (semi-reduced with `semi_reduced`). Returned witnesses
/// are verified by application.
pub fn feedback_equivalent(lhs: &StateSpace, rhs: &StateSpace, semi_reduced: bool) -> Result<FeedbackOutcome> {
    if lhs.field() != rhs.field() {
        return Err(Error::FieldMismatch(lhs.field().to_string(), rhs.field().to_string()));
    }
    if (lhs.delta(), lhs.k(), lhs.n()) != (rhs.delta(), rhs.k(), rhs.n()) {
        return Err(Error::Shape(format!(
            "systems of shape (delta {}, k {}, n {}) and (delta {}, k {}, n {})",
            lhs.delta(),
            lhs.k(),
            lhs.n(),
            rhs.delta(),
            rhs.k(),
            rhs.n()
        )));
    }
    let g = admissible_encoder(lhs, semi_reduced)?;
    let h = admissible_encoder(rhs, semi_reduced)?;
    if popov_form(&g)? != popov_form(&h)? {
        return Ok(FeedbackOutcome {
            equivalent: false,
            witness: None,
        });
    }
    let (_, wl) = witness_from_reference(lhs, &g)?;
    let (_, wr) = witness_from_reference(rhs, &h)?;
    let w = wl.inverse()?.then(&wr);
    if lhs.apply_feedback(&w)? != *rhs {
        return Err(Error::Internal("feedback witness failed verification".into()));
    }
    Ok(FeedbackOutcome {
        equivalent: true,
        witness: Some(w),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::Field;
    use crate::realization::canonical_realization;
    use crate::sample::{random_basic_reduced, random_degree_preserving_unimodular, random_feedback, random_invertible};
    use crate::text::parse_poly_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn orbit_of_a_random_feedback() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = Field::new(2, 1).unwrap();
        let mut found = 0;
        for _ in 0..400 {
            let g = random_basic_reduced(&mut rng, &f, 3, &[2, 1]);
            let sys = controller_form(&g).unwrap();
            let w = random_feedback(&mut rng, &f, 3, 2);
            let moved = sys.apply_feedback(&w).unwrap();
            let Ok(h) = moved.reconstruct_encoder() else { continue };
            if !h.is_reduced().unwrap() {
                continue;
            }
            let out = feedback_equivalent(&sys, &moved, false).unwrap();
            assert!(out.equivalent);
            assert_eq!(sys.apply_feedback(out.witness.as_ref().unwrap()).unwrap(), moved);
            found += 1;
        }
        assert!(found > 5);
    }

    #[test]
    fn planted_unimodular_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = Field::new(3, 1).unwrap();
        for _ in 0..10 {
            let g = random_basic_reduced(&mut rng, &f, 3, &[1, 2]);
            let w = random_degree_preserving_unimodular(&mut rng, &f, &[1, 2], 5);
            let s = random_invertible(&mut rng, &f, 3);
            let a = canonical_realization(&g).unwrap();
            let b = canonical_realization(&w.mul(&g)).unwrap().apply_similarity(&s).unwrap();
            let out = feedback_equivalent(&a, &b, false).unwrap();
            assert!(out.equivalent);
        }
    }

    #[test]
    fn different_codes() {
        let f = Field::new(2, 1).unwrap();
        let a = controller_form(&parse_poly_matrix(&f, "1; z; 1+z\n0; 1; z").unwrap()).unwrap();
        let b = controller_form(&parse_poly_matrix(&f, "1; z; z\n0; 1; 1+z").unwrap()).unwrap();
        assert_eq!(feedback_equivalent(&a, &b, false).unwrap(), FeedbackOutcome { equivalent: false, witness: None });
    }

    #[test]
    fn preconditions_are_distinct_errors() {
        let f = Field::new(2, 1).unwrap();
        let a = controller_form(&parse_poly_matrix(&f, "1; z; 1+z\n0; 1; z").unwrap()).unwrap();
        let c = controller_form(&parse_poly_matrix(&f, "1; z^2; 1+z").unwrap()).unwrap();
        assert!(matches!(feedback_equivalent(&a, &c, false), Err(Error::Shape(_))));
        // a non-reduced but semi-reduced realization of the same code
        let m = FieldMatrix::from_indices(&f, &[&[0, 0], &[1, 0]]).unwrap();
        let w = FeedbackWitness { t: FieldMatrix::identity(&f, 2), u: FieldMatrix::identity(&f, 2), m };
        let bar = a.apply_feedback(&w).unwrap();
        assert_eq!(feedback_equivalent(&a, &bar, false), Err(Error::NotReduced));
        let out = feedback_equivalent(&a, &bar, true).unwrap();
        assert!(out.equivalent);
    }
}
