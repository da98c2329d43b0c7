//! Enumeration of GL_d(F).

use super::field::Field;
use super::matrix::{Echelon, FieldMatrix};
use crate::error::{Error, Result};

/// |GL_d(F_q)| = ∏_{i<d} (q^d − q^i), saturating at `u128::MAX`.
pub fn gl_order(q: u32, dim: usize) -> u128 {
    let Some(qd) = (q as u128).checked_pow(dim as u32) else {
        return u128::MAX;
    };
    let mut order: u128 = 1;
    let mut qi: u128 = 1;
    for _ in 0..dim {
        order = match order.checked_mul(qd - qi) {
            Some(v) => v,
            None => return u128::MAX,
        };
        qi *= q as u128;
    }
    order
}

/// Streams every invertible `dim × dim` matrix exactly once.
///
/// Rows are chosen by backtracking over vectors in lexicographic order,
/// skipping any that fall into the span of the rows above. The first
/// matrix produced is therefore the anti-identity (rows `0..01`, `0..10`, ...).
pub struct InvertibleMatrices {
    field: Field,
    dim: usize,
    vectors: usize,
    chosen: Vec<usize>,
    spans: Vec<Echelon>,
    started: bool,
    finished: bool,
}

/// Starts the stream, refusing when |GL_dim(F)| exceeds `cap`.
pub fn enumerate_invertible(field: &Field, dim: usize, cap: u128) -> Result<InvertibleMatrices> {
    let size = gl_order(field.order(), dim);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let vectors = field
        .vector_count(dim)
        .ok_or(Error::CapExceeded { size, cap })?;
    Ok(InvertibleMatrices {
        field: field.clone(),
        dim,
        vectors,
        chosen: Vec::with_capacity(dim),
        spans: vec![Echelon::new(field, dim)],
        started: false,
        finished: false,
    })
}

impl InvertibleMatrices {
    fn vector(&self, index: usize) -> Vec<super::Elem> {
        self.field.vector_from_index(index, self.dim)
    }

    /// Smallest candidate index ≥ `from` independent of the current prefix.
    fn next_independent(&self, from: usize) -> Option<usize> {
        let span = self.spans.last().unwrap();
        (from..self.vectors).find(|&i| !span.contains(&self.vector(i)))
    }

    fn push(&mut self, index: usize) {
        let mut span = self.spans.last().unwrap().clone();
        span.insert(&self.vector(index));
        self.spans.push(span);
        self.chosen.push(index);
    }

    fn pop(&mut self) -> Option<usize> {
        self.spans.pop();
        self.chosen.pop()
    }

    /// Fills the remaining rows with their first admissible choices.
    fn fill(&mut self) -> bool {
        while self.chosen.len() < self.dim {
            match self.next_independent(0) {
                Some(i) => self.push(i),
                None => return false,
            }
        }
        true
    }

    fn current(&self) -> FieldMatrix {
        let rows: Vec<_> = self.chosen.iter().map(|&i| self.vector(i)).collect();
        FieldMatrix::from_rows_with_cols(&self.field, &rows, self.dim).unwrap()
    }
}

impl Iterator for InvertibleMatrices {
    type Item = FieldMatrix;

    fn next(&mut self) -> Option<FieldMatrix> {
        if self.finished {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.dim == 0 {
                self.finished = true;
                return Some(FieldMatrix::zeros(&self.field, 0, 0));
            }
            if !self.fill() {
                self.finished = true;
                return None;
            }
            return Some(self.current());
        }
        // advance the deepest row that still has an unused candidate
        loop {
            let Some(last) = self.pop() else {
                self.finished = true;
                return None;
            };
            if let Some(i) = self.next_independent(last + 1) {
                self.push(i);
                if self.fill() {
                    return Some(self.current());
                }
            }
        }
    }
}
