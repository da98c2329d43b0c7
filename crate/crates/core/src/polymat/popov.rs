//! Row Popov form.
//!
//! Convention: the pivot of a row is the rightmost entry attaining the row
//! degree. In Popov form pivots are monic, lie in strictly increasing
//! columns, and every other entry of a pivot column has smaller degree than
//! the pivot. Rows are ordered by pivot column.

use super::matrix::PolyMatrix;
use crate::error::{Error, Result};

/// Pivot column of row `i`, `None` for a zero row.
pub fn pivot_column(m: &PolyMatrix, i: usize) -> Option<usize> {
    let d = m.row_degree(i)?;
    (0..m.cols()).rev().find(|&j| m.get(i, j).degree() == Some(d))
}

/// Mulders–Storjohann reduction to weak Popov form.
///
/// Returns `(W, U)` with `U·G = W` and `U` unimodular. Nonzero rows of `W`
/// have pairwise distinct pivots, so their number is the rank of `G`.
pub fn weak_popov(g: &PolyMatrix) -> (PolyMatrix, PolyMatrix) {
    let f = g.field().clone();
    let mut w = g.clone();
    let mut u = PolyMatrix::identity(&f, g.rows());
    loop {
        let pivots: Vec<Option<usize>> = (0..w.rows()).map(|i| pivot_column(&w, i)).collect();
        let mut clash = None;
        'search: for (i, pi) in pivots.iter().enumerate() {
            let Some(pi) = pi else { continue };
            for (j, pj) in pivots.iter().enumerate().skip(i + 1) {
                if *pj == Some(*pi) {
                    clash = Some((i, j, *pi));
                    break 'search;
                }
            }
        }
        let Some((a, b, col)) = clash else {
            return (w, u);
        };
        let (da, db) = (w.row_degree(a).unwrap(), w.row_degree(b).unwrap());
        let (hi, lo) = if da >= db { (a, b) } else { (b, a) };
        let c = f.div(w.get(hi, col).lead().unwrap(), w.get(lo, col).lead().unwrap());
        let e = da.abs_diff(db);
        w.row_sub_scaled(hi, lo, c, e);
        u.row_sub_scaled(hi, lo, c, e);
    }
}

/// Popov form together with the unimodular transform `U`, `U·G = P`.
pub fn popov_with_transform(g: &PolyMatrix) -> Result<(PolyMatrix, PolyMatrix)> {
    let f = g.field().clone();
    let (mut p, mut u) = weak_popov(g);
    if p.nonzero_rows() != p.rows() {
        return Err(Error::RankDeficient);
    }
    let k = p.rows();
    let pivots: Vec<usize> = (0..k).map(|i| pivot_column(&p, i).unwrap()).collect();
    let degs: Vec<usize> = (0..k).map(|i| p.row_degree(i).unwrap()).collect();

    // Reduce every row against the others: repeatedly cancel the largest
    // term (degree first, then column) sitting in a foreign pivot column at
    // or above that pivot's degree. The row's own leading term never moves.
    for i in 0..k {
        loop {
            let mut target: Option<(usize, usize, usize)> = None; // (deg, col, pivot row)
            for l in (0..k).filter(|&l| l != i) {
                if let Some(e) = p.get(i, pivots[l]).degree() {
                    if e >= degs[l] && target.is_none_or(|(te, tc, _)| (e, pivots[l]) > (te, tc)) {
                        target = Some((e, pivots[l], l));
                    }
                }
            }
            let Some((e, col, l)) = target else { break };
            let c = f.div(p.get(i, col).coeff(e), p.get(l, col).lead().unwrap());
            p.row_sub_scaled(i, l, c, e - degs[l]);
            u.row_sub_scaled(i, l, c, e - degs[l]);
        }
    }

    for (i, &col) in pivots.iter().enumerate() {
        let inv = f.inv(p.get(i, col).lead().unwrap()).unwrap();
        p.scale_row(i, inv);
        u.scale_row(i, inv);
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| pivots[i]);
    Ok((p.select_rows(&order), u.select_rows(&order)))
}

/// Canonical generator of the row module of a full-row-rank matrix.
pub fn popov_form(g: &PolyMatrix) -> Result<PolyMatrix> {
    popov_with_transform(g).map(|(p, _)| p)
}

/// True when `g` already satisfies every Popov condition.
pub fn is_popov(g: &PolyMatrix) -> bool {
    let k = g.rows();
    let mut pivots = Vec::with_capacity(k);
    for i in 0..k {
        match pivot_column(g, i) {
            Some(c) if g.get(i, c).lead().is_some_and(|l| l.is_one()) => pivots.push(c),
            _ => return false,
        }
    }
    if pivots.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    (0..k).all(|l| {
        let d = g.get(l, pivots[l]).degree();
        (0..k).filter(|&i| i != l).all(|i| g.get(i, pivots[l]).degree() < d)
    })
}

/// Whether two full-row-rank matrices generate the same row module.
pub fn code_equal(g: &PolyMatrix, h: &PolyMatrix) -> Result<bool> {
    if g.field() != h.field() {
        return Err(Error::FieldMismatch(g.field().to_string(), h.field().to_string()));
    }
    if g.cols() != h.cols() {
        return Err(Error::Shape(format!("lengths {} and {} differ", g.cols(), h.cols())));
    }
    if g.rows() != h.rows() {
        return Ok(false);
    }
    Ok(popov_form(g)? == popov_form(h)?)
}

/// Row degrees of a reduced generator, sorted descending.
pub fn forney_indices(g: &PolyMatrix) -> Result<Vec<usize>> {
    let mut d = popov_form(g)?.row_degrees()?;
    d.sort_unstable_by(|a, b| b.cmp(a));
    Ok(d)
}
