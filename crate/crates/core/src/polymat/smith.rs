//! Smith normal form over F[z] and what follows from it.

use super::matrix::PolyMatrix;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `U·G·V = S` with `U`, `V` unimodular and `S` diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub s: PolyMatrix,
    pub v: PolyMatrix,
}

impl SmithForm {
    /// Diagonal of `S`; zero entries mark rank deficiency.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Minimal-degree nonzero entry of the trailing block, ties row-major.
fn smallest_entry(s: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if let Some(d) = s.get(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

pub fn smith_form(g: &PolyMatrix) -> SmithForm {
    let f = g.field().clone();
    let (k, n) = (g.rows(), g.cols());
    let mut s = g.clone();
    let mut u = PolyMatrix::identity(&f, k);
    let mut v = PolyMatrix::identity(&f, n);

    'diag: for t in 0..k.min(n) {
        loop {
            let Some((pi, pj)) = smallest_entry(&s, t) else {
                break 'diag;
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = s.get(t, t).clone();
            let mut leftover = false;
            for i in t + 1..k {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = s.get(i, t).div_rem(&pivot, &f);
                s.row_sub_poly(i, t, &q);
                u.row_sub_poly(i, t, &q);
                leftover |= !r.is_zero();
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = s.get(t, j).div_rem(&pivot, &f);
                s.col_sub_poly(j, t, &q);
                v.col_sub_poly(j, t, &q);
                leftover |= !r.is_zero();
            }
            if leftover {
                continue;
            }

            // the pivot must divide everything below and to the right
            let bad_row = (t + 1..k).find(|&i| {
                (t + 1..n).any(|j| !s.get(i, j).div_rem(&pivot, &f).1.is_zero())
            });
            if let Some(i) = bad_row {
                let one = Poly::one().neg(&f);
                s.row_sub_poly(t, i, &one);
                u.row_sub_poly(t, i, &one);
                continue;
            }

            let inv = f.inv(pivot.lead().unwrap()).unwrap();
            s.scale_row(t, inv);
            u.scale_row(t, inv);
            break;
        }
    }
    SmithForm { u, s, v }
}

/// Full row rank with every invariant factor equal to 1.
pub fn is_basic(g: &PolyMatrix) -> bool {
    if g.rows() > g.cols() {
        return false;
    }
    smith_form(g).invariant_factors().iter().all(Poly::is_one)
}

/// A polynomial `H` with `G·H = I`, read off the Smith factors.
pub fn right_inverse(g: &PolyMatrix) -> Result<PolyMatrix> {
    if g.rows() > g.cols() {
        return Err(Error::NotBasic);
    }
    let sf = smith_form(g);
    if !sf.invariant_factors().iter().all(Poly::is_one) {
        return Err(Error::NotBasic);
    }
    let k = g.rows();
    let cols: Vec<usize> = (0..k).collect();
    Ok(sf.v.select_columns(&cols).mul(&sf.u))
}
