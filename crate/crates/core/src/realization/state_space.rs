//! State-space systems `x_{t+1} = x_t A + u_t B`, `v_t = x_t C + u_t D`.
//!
//! States, inputs and outputs are row vectors acted on from the right.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{Field, FieldMatrix};
use crate::polymat::{smith_form, PolyMatrix};

/// A quadruple `(A, B, C, D)` with shapes `δ×δ`, `k×δ`, `δ×n`, `k×n`.
#[derive(Clone, PartialEq, Eq)]
pub struct StateSpace {
    a: FieldMatrix,
    b: FieldMatrix,
    c: FieldMatrix,
    d: FieldMatrix,
}

impl fmt::Debug for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_system(self))
    }
}

impl StateSpace {
    pub fn new(a: FieldMatrix, b: FieldMatrix, c: FieldMatrix, d: FieldMatrix) -> Result<StateSpace> {
        let f = d.field();
        for m in [&a, &b, &c] {
            if m.field() != f {
                return Err(Error::FieldMismatch(m.field().to_string(), f.to_string()));
            }
        }
        let (delta, k, n) = (a.rows(), d.rows(), d.cols());
        let ok = a.cols() == delta
            && b.rows() == k
            && b.cols() == delta
            && c.rows() == delta
            && c.cols() == n;
        if !ok {
            return Err(Error::Shape(format!(
                "A {}x{}, B {}x{}, C {}x{}, D {}x{} do not form a system",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                c.rows(),
                c.cols(),
                k,
                n
            )));
        }
        Ok(StateSpace { a, b, c, d })
    }

    /// The memoryless system `D` with no state.
    pub fn static_gain(d: FieldMatrix) -> StateSpace {
        let f = d.field().clone();
        StateSpace {
            a: FieldMatrix::zeros(&f, 0, 0),
            b: FieldMatrix::zeros(&f, d.rows(), 0),
            c: FieldMatrix::zeros(&f, 0, d.cols()),
            d,
        }
    }

    pub fn field(&self) -> &Field {
        self.d.field()
    }

    pub fn delta(&self) -> usize {
        self.a.rows()
    }

    pub fn k(&self) -> usize {
        self.d.rows()
    }

    pub fn n(&self) -> usize {
        self.d.cols()
    }

    pub fn a(&self) -> &FieldMatrix {
        &self.a
    }

    pub fn b(&self) -> &FieldMatrix {
        &self.b
    }

    pub fn c(&self) -> &FieldMatrix {
        &self.c
    }

    pub fn d(&self) -> &FieldMatrix {
        &self.d
    }

    /// `[B; BA; …; BA^{δ−1}]`
    pub fn controllability_matrix(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field(), 0, self.delta());
        let mut block = self.b.clone();
        for _ in 0..self.delta() {
            out = out.vstack(&block).unwrap();
            block = block.mul(&self.a);
        }
        out
    }

    /// `[C, AC, …, A^{δ−1}C]`
    pub fn observability_matrix(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.field(), self.delta(), 0);
        let mut block = self.c.clone();
        for _ in 0..self.delta() {
            out = out.hstack(&block).unwrap();
            block = self.a.mul(&block);
        }
        out
    }

    pub fn is_controllable(&self) -> bool {
        self.controllability_matrix().rank() == self.delta()
    }

    pub fn is_observable(&self) -> bool {
        self.observability_matrix().rank() == self.delta()
    }

    pub fn is_canonical(&self) -> bool {
        self.is_controllable() && self.is_observable()
    }

    /// `G = D + Σ_{i≥1} B A^{i−1} C z^i`, defined when `A` is nilpotent.
    pub fn reconstruct_encoder(&self) -> Result<PolyMatrix> {
        if !is_nilpotent(&self.a) {
            return Err(Error::NotNilpotent);
        }
        let mut coeffs = vec![self.d.clone()];
        let mut ba = self.b.clone();
        for _ in 0..self.delta() {
            coeffs.push(ba.mul(&self.c));
            ba = ba.mul(&self.a);
        }
        PolyMatrix::from_coefficients(self.field(), self.k(), self.n(), &coeffs)
    }

    /// `[[−A, C], [−B, D]]`, the system block matrix at `λ = 0`.
    pub fn block_matrix_at_zero(&self) -> FieldMatrix {
        let top = self.a.neg().hstack(&self.c).unwrap();
        let bottom = self.b.neg().hstack(&self.d).unwrap();
        top.vstack(&bottom).unwrap()
    }

    /// Evaluates each clause of the realization rank condition.
    pub fn check_condition(&self) -> ConditionReport {
        let nilpotent = is_nilpotent(&self.a);
        let d_full_rank = self.d.rank() == self.k();
        let rank_at_zero = self.block_matrix_at_zero().rank() == self.delta() + self.k();
        // For λ ≠ 0 the block matrix has rank δ + rk G(λ⁻¹), so the clause
        // holds iff every invariant factor of G is a monomial.
        let rank_away_from_zero = self.reconstruct_encoder().ok().map(|g| {
            g.rows() <= g.cols()
                && smith_form(&g)
                    .invariant_factors()
                    .iter()
                    .all(|d| d.is_monomial())
        });
        ConditionReport {
            nilpotent,
            d_full_rank,
            rank_at_zero,
            rank_away_from_zero,
        }
    }

    pub fn satisfies_cond(&self) -> bool {
        self.check_condition().holds()
    }

    /// `(SAS⁻¹, BS⁻¹, SC, D)`
    pub fn apply_similarity(&self, s: &FieldMatrix) -> Result<StateSpace> {
        let s_inv = s.inverse()?;
        StateSpace::new(
            s.try_mul(&self.a)?.mul(&s_inv),
            self.b.try_mul(&s_inv)?,
            s.try_mul(&self.c)?,
            self.d.clone(),
        )
    }

    /// `(T⁻¹(A−MB)T, UBT, T⁻¹(C−MD), UD)`
    pub fn apply_feedback(&self, w: &FeedbackWitness) -> Result<StateSpace> {
        let t_inv = w.t.inverse()?;
        if !w.u.is_invertible() {
            return Err(Error::Singular);
        }
        let a = t_inv.try_mul(&self.a.try_sub(&w.m.try_mul(&self.b)?)?)?.try_mul(&w.t)?;
        let b = w.u.try_mul(&self.b)?.try_mul(&w.t)?;
        let c = t_inv.try_mul(&self.c.try_sub(&w.m.try_mul(&self.d)?)?)?;
        let d = w.u.try_mul(&self.d)?;
        StateSpace::new(a, b, c, d)
    }

    /// Block-diagonal join of the state spaces; inputs and outputs shared.
    pub fn join_states(&self, extra_a: &FieldMatrix, extra_b: &FieldMatrix, extra_c: &FieldMatrix) -> Result<StateSpace> {
        StateSpace::new(
            self.a.block_diag(extra_a)?,
            self.b.hstack(extra_b)?,
            self.c.vstack(extra_c)?,
            self.d.clone(),
        )
    }
}

pub fn is_nilpotent(a: &FieldMatrix) -> bool {
    a.is_square() && a.pow(a.rows()).is_zero()
}

/// Which clause of the rank condition failed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionClause {
    Nilpotent,
    FullRankD,
    RankAtZero,
    RankAwayFromZero,
}

impl fmt::Display for ConditionClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionClause::Nilpotent => "A is not nilpotent",
            ConditionClause::FullRankD => "rank D < k",
            ConditionClause::RankAtZero => "block matrix loses rank at lambda = 0",
            ConditionClause::RankAwayFromZero => "block matrix loses rank at some lambda != 0",
        })
    }
}

/// Clause-by-clause outcome of the realization rank condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub nilpotent: bool,
    pub d_full_rank: bool,
    pub rank_at_zero: bool,
    /// `None` when `A` is not nilpotent and no polynomial encoder exists.
    pub rank_away_from_zero: Option<bool>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.failed_clause().is_none()
    }

    pub fn failed_clause(&self) -> Option<ConditionClause> {
        if !self.nilpotent {
            Some(ConditionClause::Nilpotent)
        } else if !self.d_full_rank {
            Some(ConditionClause::FullRankD)
        } else if !self.rank_at_zero {
            Some(ConditionClause::RankAtZero)
        } else if self.rank_away_from_zero != Some(true) {
            Some(ConditionClause::RankAwayFromZero)
        } else {
            None
        }
    }

    /// All failing clauses, in evaluation order.
    pub fn failed_clauses(&self) -> Vec<ConditionClause> {
        let mut out = Vec::new();
        if !self.nilpotent {
            out.push(ConditionClause::Nilpotent);
        }
        if !self.d_full_rank {
            out.push(ConditionClause::FullRankD);
        }
        if !self.rank_at_zero {
            out.push(ConditionClause::RankAtZero);
        }
        if self.rank_away_from_zero != Some(true) {
            out.push(ConditionClause::RankAwayFromZero);
        }
        out
    }
}

/// A full state feedback transformation `(T, U, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeedbackWitness {
    pub t: FieldMatrix,
    pub u: FieldMatrix,
    pub m: FieldMatrix,
}

impl FeedbackWitness {
    pub fn identity(field: &Field, delta: usize, k: usize) -> FeedbackWitness {
        FeedbackWitness {
            t: FieldMatrix::identity(field, delta),
            u: FieldMatrix::identity(field, k),
            m: FieldMatrix::zeros(field, delta, k),
        }
    }

    /// A state similarity by `S` as a feedback transformation.
    pub fn from_similarity(s: &FieldMatrix, k: usize) -> Result<FeedbackWitness> {
        let f = s.field();
        Ok(FeedbackWitness {
            t: s.inverse()?,
            u: FieldMatrix::identity(f, k),
            m: FieldMatrix::zeros(f, s.rows(), k),
        })
    }

    /// Applying `self` and then `next` equals applying the result.
    pub fn then(&self, next: &FeedbackWitness) -> FeedbackWitness {
        FeedbackWitness {
            t: self.t.mul(&next.t),
            u: next.u.mul(&self.u),
            m: self.m.add(&self.t.mul(&next.m).mul(&self.u)),
        }
    }

    pub fn inverse(&self) -> Result<FeedbackWitness> {
        let t_inv = self.t.inverse()?;
        let u_inv = self.u.inverse()?;
        Ok(FeedbackWitness {
            m: t_inv.mul(&self.m).mul(&u_inv).neg(),
            t: t_inv,
            u: u_inv,
        })
    }
}

/// `S` with `apply_similarity(from, S) == to`, assuming `from` controllable.
pub fn find_similarity(from: &StateSpace, to: &StateSpace) -> Option<FieldMatrix> {
    if from.delta() != to.delta() || from.k() != to.k() || from.n() != to.n() || from.field() != to.field() {
        return None;
    }
    if from.delta() == 0 {
        return (from.d() == to.d()).then(|| FieldMatrix::zeros(from.field(), 0, 0));
    }
    // controllability matrices satisfy K_to = K_from · S⁻¹
    let k1 = from.controllability_matrix();
    let k2 = to.controllability_matrix();
    let s_inv = k1.solve_right(&k2).ok()??;
    let s = s_inv.inverse().ok()?;
    (from.apply_similarity(&s).ok()? == *to).then_some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_poly_matrix, parse_system_file};

    fn gf(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    fn ternary_demo() -> StateSpace {
        parse_system_file("field: GF(3)\nA:\n0\nB:\n2\n1\nC:\n0; 0; 1\nD:\n0; 1; 1\n1; 0; 0\n").unwrap()
    }

    fn binary_non_basic() -> StateSpace {
        parse_system_file("field: GF(2)\nA:\n0; 1\n0; 0\nB:\n1; 0\nC:\n0; 1\n1; 0\nD:\n1; 1\n").unwrap()
    }

    #[test]
    fn ternary_system_reconstruction() {
        let sys = ternary_demo();
        let g = sys.reconstruct_encoder().unwrap();
        assert_eq!(g, parse_poly_matrix(&gf(3), "0; 1; 1+2z\n1; 0; z").unwrap());
        assert!(sys.is_canonical());
        assert!(sys.satisfies_cond());
    }

    #[test]
    fn non_basic_system_fails_away_from_zero() {
        let sys = binary_non_basic();
        assert!(sys.is_canonical());
        let g = sys.reconstruct_encoder().unwrap();
        assert_eq!(g, parse_poly_matrix(&gf(2), "1+z^2; 1+z").unwrap());
        let r = sys.check_condition();
        assert!(r.nilpotent && r.d_full_rank && r.rank_at_zero);
        assert_eq!(r.failed_clause(), Some(ConditionClause::RankAwayFromZero));
    }

    #[test]
    fn static_gain_system() {
        let d = FieldMatrix::from_indices(&gf(2), &[&[1, 0, 1], &[0, 1, 1]]).unwrap();
        let sys = StateSpace::static_gain(d.clone());
        assert_eq!(sys.reconstruct_encoder().unwrap(), PolyMatrix::from_constant(&d));
        assert!(sys.is_canonical());
        assert!(sys.satisfies_cond());
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let f = gf(2);
        let sys = StateSpace::new(
            FieldMatrix::identity(&f, 1),
            FieldMatrix::from_indices(&f, &[&[1]]).unwrap(),
            FieldMatrix::from_indices(&f, &[&[1]]).unwrap(),
            FieldMatrix::from_indices(&f, &[&[1]]).unwrap(),
        )
        .unwrap();
        assert_eq!(sys.reconstruct_encoder(), Err(Error::NotNilpotent));
        assert_eq!(sys.check_condition().failed_clause(), Some(ConditionClause::Nilpotent));
        assert_eq!(sys.check_condition().rank_away_from_zero, None);
    }

    #[test]
    fn unobservable_when_c_is_zero() {
        let f = gf(2);
        let sys = StateSpace::new(
            FieldMatrix::from_indices(&f, &[&[0, 1], &[0, 0]]).unwrap(),
            FieldMatrix::from_indices(&f, &[&[1, 0]]).unwrap(),
            FieldMatrix::zeros(&f, 2, 1),
            FieldMatrix::from_indices(&f, &[&[1]]).unwrap(),
        )
        .unwrap();
        assert!(sys.is_controllable());
        assert!(!sys.is_observable());
    }

    #[test]
    fn witness_algebra() {
        let sys = binary_non_basic();
        let f = sys.field().clone();
        let w1 = FeedbackWitness {
            t: FieldMatrix::from_indices(&f, &[&[1, 1], &[0, 1]]).unwrap(),
            u: FieldMatrix::identity(&f, 1),
            m: FieldMatrix::from_indices(&f, &[&[0], &[1]]).unwrap(),
        };
        let w2 = FeedbackWitness {
            t: FieldMatrix::from_indices(&f, &[&[0, 1], &[1, 0]]).unwrap(),
            u: FieldMatrix::identity(&f, 1),
            m: FieldMatrix::from_indices(&f, &[&[1], &[1]]).unwrap(),
        };
        let two_steps = sys.apply_feedback(&w1).unwrap().apply_feedback(&w2).unwrap();
        assert_eq!(sys.apply_feedback(&w1.then(&w2)).unwrap(), two_steps);
        let back = sys.apply_feedback(&w1).unwrap().apply_feedback(&w1.inverse().unwrap()).unwrap();
        assert_eq!(back, sys);
        assert_eq!(sys.apply_feedback(&FeedbackWitness::identity(&f, 2, 1)).unwrap(), sys);
    }

    #[test]
    fn similarity_is_recovered() {
        let sys = binary_non_basic();
        let f = sys.field().clone();
        let s = FieldMatrix::from_indices(&f, &[&[1, 1], &[0, 1]]).unwrap();
        let moved = sys.apply_similarity(&s).unwrap();
        assert_eq!(moved.reconstruct_encoder().unwrap(), sys.reconstruct_encoder().unwrap());
        assert_eq!(find_similarity(&sys, &moved), Some(s.clone()));
        let as_feedback = FeedbackWitness::from_similarity(&s, 1).unwrap();
        assert_eq!(sys.apply_feedback(&as_feedback).unwrap(), moved);
    }
}
