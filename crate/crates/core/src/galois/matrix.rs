//! Dense matrices over a finite field and exact Gaussian elimination.
//!
//! Vectors are rows and act from the left (`x · M`). Elimination always
//! pivots on the first nonzero entry found scanning the current column
//! top to bottom, columns left to right.

use std::fmt;

use super::field::{Automorphism, Elem, Field};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldMatrix[{}]{}x{} [", self.field, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<u32> = self.row(i).iter().map(|e| e.index()).collect();
            write!(f, "{:?}", row)?;
        }
        write!(f, "]")
    }
}

impl FieldMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> FieldMatrix {
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<FieldMatrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.index() >= field.order()) {
            return Err(Error::Shape(format!("{} is not an element of {}", bad.index(), field)));
        }
        Ok(FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<FieldMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        FieldMatrix::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from element indices, e.g. `&[&[0, 1], &[1, 0]]`.
    pub fn from_indices(field: &Field, rows: &[&[u32]]) -> Result<FieldMatrix> {
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&i| field.elem(i)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        FieldMatrix::from_rows(field, &rows)
    }

    /// Same shape, but with `cols` given explicitly so empty rows work.
    pub fn from_rows_with_cols(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Result<FieldMatrix> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        FieldMatrix::from_vec(field, rows.len(), cols, rows.concat())
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// Permutation matrix P with (xP)_j = x_{perm[j]}.
    pub fn permutation(field: &Field, perm: &[usize]) -> FieldMatrix {
        let n = perm.len();
        let mut m = FieldMatrix::zeros(field, n, n);
        for (j, &src) in perm.iter().enumerate() {
            m.set(src, j, Elem::ONE);
        }
        m
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { Elem::ONE } else { Elem::ZERO }))
    }

    fn same_field(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = FieldMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &FieldMatrix, op: impl Fn(Elem, Elem) -> Elem) -> Result<FieldMatrix> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn try_sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    /// Panicking product for internal use where shapes are known to agree.
    pub fn mul(&self, other: &FieldMatrix) -> FieldMatrix {
        self.try_mul(other).expect("matrix product shape")
    }

    pub fn add(&self, other: &FieldMatrix) -> FieldMatrix {
        self.try_add(other).expect("matrix sum shape")
    }

    pub fn sub(&self, other: &FieldMatrix) -> FieldMatrix {
        self.try_sub(other).expect("matrix difference shape")
    }

    pub fn neg(&self) -> FieldMatrix {
        self.map(|a| self.field.neg(a))
    }

    pub fn scale(&self, c: Elem) -> FieldMatrix {
        self.map(|a| self.field.mul(c, a))
    }

    pub fn map(&self, op: impl Fn(Elem) -> Elem) -> FieldMatrix {
        FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| op(a)).collect(),
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn pow(&self, e: usize) -> FieldMatrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut result = FieldMatrix::identity(&self.field, self.rows);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.rows, "vector length");
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !m.is_zero() {
                    *o = f.add(*o, f.mul(xi, m));
                }
            }
        }
        out
    }

    pub fn vstack(&self, below: &FieldMatrix) -> Result<FieldMatrix> {
        self.same_field(below)?;
        if self.cols != below.cols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(FieldMatrix {
            field: self.field.clone(),
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, right: &FieldMatrix) -> Result<FieldMatrix> {
        self.same_field(right)?;
        if self.rows != right.rows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let cols = self.cols + right.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(right.row(i));
        }
        Ok(FieldMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        })
    }

    /// `[[self, 0], [0, other]]`
    pub fn block_diag(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        let top = self.hstack(&FieldMatrix::zeros(&self.field, self.rows, other.cols))?;
        let bottom = FieldMatrix::zeros(&self.field, other.rows, self.cols).hstack(other)?;
        top.vstack(&bottom)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(&self.field, rows.len(), cols.len());
        for (ii, i) in rows.clone().enumerate() {
            for (jj, j) in cols.clone().enumerate() {
                m.set(ii, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(&self.field, rows.len(), self.cols);
        for (ii, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m.set(ii, j, self.get(i, j));
            }
        }
        m
    }

    /// Entrywise image under a field automorphism.
    pub fn map_automorphism(&self, phi: &Automorphism) -> Result<FieldMatrix> {
        if phi.field() != &self.field {
            return Err(Error::FieldMismatch(phi.field().to_string(), self.field.to_string()));
        }
        Ok(self.map(|a| phi.apply(a)))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in 0..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(inv, v));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = self.hstack(&FieldMatrix::identity(&self.field, n))?;
        let (r, pivots) = aug.rref();
        if (0..n).any(|i| pivots.get(i) != Some(&i)) {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    /// Basis (as rows) of the right null space {y : M yᵀ = 0}.
    pub fn right_kernel(&self) -> FieldMatrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = FieldMatrix::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.set(b, fc, Elem::ONE);
            for (pi, &pc) in pivots.iter().enumerate() {
                basis.set(b, pc, f.neg(r.get(pi, fc)));
            }
        }
        basis
    }

    /// Basis (as rows) of the left null space {x : x M = 0}.
    pub fn kernel(&self) -> FieldMatrix {
        self.transpose().right_kernel()
    }

    /// Some X with `X · self = rhs`, or `None` if the system is inconsistent.
    pub fn solve_left(&self, rhs: &FieldMatrix) -> Result<Option<FieldMatrix>> {
        self.same_field(rhs)?;
        if self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "X·A = B with A {}x{} and B {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        // Aᵀ Xᵀ = Bᵀ
        let at = self.transpose();
        let bt = rhs.transpose();
        Ok(solve_right(&at, &bt)?.map(|y| y.transpose()))
    }

    /// Some Y with `self · Y = rhs`, or `None` if inconsistent.
    pub fn solve_right(&self, rhs: &FieldMatrix) -> Result<Option<FieldMatrix>> {
        self.same_field(rhs)?;
        if self.rows != rhs.rows {
            return Err(Error::Shape(format!(
                "A·Y = B with A {}x{} and B {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        solve_right(self, rhs)
    }
}

fn solve_right(a: &FieldMatrix, b: &FieldMatrix) -> Result<Option<FieldMatrix>> {
    let n = a.cols;
    let aug = a.hstack(b)?;
    let (r, pivots) = aug.rref();
    if pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    let mut y = FieldMatrix::zeros(&a.field, n, b.cols);
    for (pi, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            y.set(pc, j, r.get(pi, n + j));
        }
    }
    Ok(Some(y))
}

/// Incrementally maintained echelon basis of a row space.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    len: usize,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Echelon {
    pub fn new(field: &Field, len: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            let c = v[*p];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                *x = f.sub(*x, f.mul(c, r));
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    /// Adds `v` if independent; returns whether it was.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.len);
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|e| !e.is_zero()) else {
            return false;
        };
        let inv = f.inv(r[p]).unwrap();
        for x in r.iter_mut() {
            *x = f.mul(inv, *x);
        }
        // keep existing rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if !c.is_zero() {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, s: u32) -> Field {
        Field::new(p, s).unwrap()
    }

    #[test]
    fn rank_examples() {
        let f = gf(2, 1);
        assert_eq!(FieldMatrix::from_indices(&f, &[&[0, 1], &[0, 0]]).unwrap().rank(), 1);
        assert_eq!(FieldMatrix::identity(&f, 3).rank(), 3);
        assert_eq!(FieldMatrix::zeros(&f, 0, 3).rank(), 0);
    }

    #[test]
    fn inverse_of_identity_and_singular() {
        let f = gf(3, 1);
        let i = FieldMatrix::identity(&f, 3);
        assert_eq!(i.inverse().unwrap(), i);
        let s = FieldMatrix::from_indices(&f, &[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(s.inverse().unwrap_err(), Error::Singular);
        let m = FieldMatrix::from_indices(&f, &[&[1, 2], &[0, 1]]).unwrap();
        assert!(m.inverse().unwrap().mul(&m).is_identity());
        assert_eq!(FieldMatrix::zeros(&f, 2, 3).inverse().unwrap_err(), Error::Shape("inverse of a 2x3 matrix".into()));
    }

    #[test]
    fn kernels() {
        let f = gf(2, 1);
        // {y : [1 1] yᵀ = 0} = span{(1,1)}
        let row = FieldMatrix::from_indices(&f, &[&[1, 1]]).unwrap();
        assert_eq!(row.right_kernel(), FieldMatrix::from_indices(&f, &[&[1, 1]]).unwrap());
        // left kernel of the column (1,1)ᵀ
        assert_eq!(row.transpose().kernel(), FieldMatrix::from_indices(&f, &[&[1, 1]]).unwrap());
        assert_eq!(row.kernel().rows(), 0);
    }

    #[test]
    fn solve_left_finds_witness() {
        let f = gf(3, 1);
        let a = FieldMatrix::from_indices(&f, &[&[1, 0, 2], &[0, 1, 1]]).unwrap();
        let x = FieldMatrix::from_indices(&f, &[&[2, 1]]).unwrap();
        let b = x.mul(&a);
        assert_eq!(a.solve_left(&b).unwrap().unwrap(), x);
        let bad = FieldMatrix::from_indices(&f, &[&[0, 0, 1]]).unwrap();
        assert!(a.solve_left(&bad).unwrap().is_none());
    }

    #[test]
    fn randomized_linear_algebra_contracts() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &(p, s) in &[(2u32, 1u32), (3, 1), (2, 2), (5, 1)] {
            let f = gf(p, s);
            for _ in 0..60 {
                let r = rng.gen_range(1..5);
                let c = rng.gen_range(1..5);
                let data = (0..r * c).map(|_| f.elem(rng.gen_range(0..f.order())).unwrap()).collect();
                let m = FieldMatrix::from_vec(&f, r, c, data).unwrap();
                let rank = m.rank();
                assert!(rank <= r.min(c));
                let k = m.kernel();
                assert_eq!(k.rows(), r - rank);
                assert!(k.mul(&m).is_zero());
                assert_eq!(k.rank(), k.rows());
                let rk = m.right_kernel();
                assert_eq!(rk.rows(), c - rank);
                assert!(m.mul(&rk.transpose()).is_zero());
                if m.is_invertible() {
                    assert!(m.inverse().unwrap().mul(&m).is_identity());
                }
            }
        }
    }

    #[test]
    fn echelon_tracks_span() {
        let f = gf(2, 1);
        let mut e = Echelon::new(&f, 3);
        let v = |a: &[u32]| a.iter().map(|&i| f.elem(i).unwrap()).collect::<Vec<_>>();
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(!e.insert(&v(&[1, 0, 1])));
        assert!(e.contains(&v(&[1, 0, 1])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        assert_eq!(e.dim(), 2);
    }
}
