//! Reduction to a controllable and observable realization.

use serde::{Deserialize, Serialize};

use super::state_space::StateSpace;
use crate::galois::{Echelon, FieldMatrix};

/// State dimensions seen along the reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStats {
    pub original: usize,
    pub controllable: usize,
    pub canonical: usize,
}

/// Restricts to the reachable subspace, then passes to the observable
/// quotient. The result realizes the same transfer function.
pub fn canonical_reduction(sys: &StateSpace) -> (StateSpace, ReductionStats) {
    let reachable = restrict_to_reachable(sys);
    let canonical = observable_quotient(&reachable);
    let stats = ReductionStats {
        original: sys.delta(),
        controllable: reachable.delta(),
        canonical: canonical.delta(),
    };
    (canonical, stats)
}

/// Basis `R` of the rows of `B, BA, BA², …` chosen greedily; in the
/// coordinates `x = ξR` the system is controllable.
fn restrict_to_reachable(sys: &StateSpace) -> StateSpace {
    let f = sys.field();
    let delta = sys.delta();
    let mut span = Echelon::new(f, delta);
    let mut basis: Vec<Vec<_>> = Vec::new();
    let mut block = sys.b().clone();
    for _ in 0..delta {
        for i in 0..block.rows() {
            if span.insert(block.row(i)) {
                basis.push(block.row(i).to_vec());
            }
        }
        block = block.mul(sys.a());
    }
    if basis.len() == delta {
        return sys.clone();
    }
    let r = FieldMatrix::from_rows_with_cols(f, &basis, delta).unwrap();
    let a_r = r.solve_left(&r.mul(sys.a())).unwrap().expect("reachable subspace is A-invariant");
    let b_r = r.solve_left(sys.b()).unwrap().expect("B lies in the reachable subspace");
    let c_r = r.mul(sys.c());
    StateSpace::new(a_r, b_r, c_r, sys.d().clone()).unwrap()
}

/// Projects onto `ξ = xQ` with `Q` the pivot columns of the observability
/// matrix; the unobservable subspace is the kernel of this map.
fn observable_quotient(sys: &StateSpace) -> StateSpace {
    let obs = sys.observability_matrix();
    let (_, pivots) = obs.rref();
    if pivots.len() == sys.delta() {
        return sys.clone();
    }
    let q = obs.select_columns(&pivots);
    let a_o = q.solve_right(&sys.a().mul(&q)).unwrap().expect("unobservable subspace is A-invariant");
    let c_o = q.solve_right(sys.c()).unwrap().expect("C factors through the quotient");
    let b_o = sys.b().mul(&q);
    StateSpace::new(a_o, b_o, c_o, sys.d().clone()).unwrap()
}
