//! Matrices over F[z].

use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::galois::{Automorphism, Elem, Field, FieldMatrix};

/// A dense `rows × cols` matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix[{}; {}x{}]\n{}", self.field, self.rows, self.cols, self)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly_matrix(self))
    }
}

impl PolyMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows have different lengths".into()));
        }
        Ok(PolyMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> PolyMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_constant(m: &FieldMatrix) -> PolyMatrix {
        PolyMatrix::from_fn(m.field(), m.rows(), m.cols(), |i, j| Poly::constant(m.get(i, j)))
    }

    /// `Σ coeffs[e] z^e`; all coefficient matrices must share one shape.
    pub fn from_coefficients(field: &Field, rows: usize, cols: usize, coeffs: &[FieldMatrix]) -> Result<PolyMatrix> {
        if coeffs.iter().any(|c| c.rows() != rows || c.cols() != cols) {
            return Err(Error::Shape("coefficient matrices differ in shape".into()));
        }
        Ok(PolyMatrix::from_fn(field, rows, cols, |i, j| {
            Poly::from_coeffs(coeffs.iter().map(|c| c.get(i, j)).collect())
        }))
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let p = self.get(i, j);
                if i == j { p.is_one() } else { p.is_zero() }
            }))
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(Poly::is_constant)
    }

    /// Degree of row `i`, `None` when the row is zero.
    pub fn row_degree(&self, i: usize) -> Option<usize> {
        self.row(i).iter().filter_map(Poly::degree).max()
    }

    /// Per-row degrees; a zero row is an error naming the row.
    pub fn row_degrees(&self) -> Result<Vec<usize>> {
        (0..self.rows)
            .map(|i| self.row_degree(i).ok_or(Error::ZeroRow(i)))
            .collect()
    }

    /// Coefficient matrix of `z^e`.
    pub fn coefficient(&self, e: usize) -> FieldMatrix {
        let data = self.data.iter().map(|p| p.coeff(e)).collect();
        FieldMatrix::from_vec(&self.field, self.rows, self.cols, data).unwrap()
    }

    /// Row `i` holds the coefficient of `z^{νᵢ}` in row `i`.
    pub fn leading_row_coefficients(&self) -> Result<FieldMatrix> {
        let degs = self.row_degrees()?;
        let mut out = FieldMatrix::zeros(&self.field, self.rows, self.cols);
        for (i, &d) in degs.iter().enumerate() {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).coeff(d));
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: Elem) -> FieldMatrix {
        let data = self.data.iter().map(|p| p.eval(x, &self.field)).collect();
        FieldMatrix::from_vec(&self.field, self.rows, self.cols, data).unwrap()
    }

    fn check_field(&self, other: &Field) -> Result<()> {
        if &self.field != other {
            return Err(Error::FieldMismatch(self.field.to_string(), other.to_string()));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check_field(&other.field)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        Ok(PolyMatrix::from_fn(f, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Poly::zero(), |acc, l| acc.add(&self.get(i, l).mul(other.get(l, j), f), f))
        }))
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.try_mul(other).expect("polynomial matrix product")
    }

    fn zip_with(&self, other: &PolyMatrix, op: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyMatrix> {
        self.check_field(&other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| a.add(b, &f))
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        let f = self.field.clone();
        self.zip_with(other, |a, b| a.sub(b, &f))
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        self.try_add(other).expect("polynomial matrix sum")
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.try_sub(other).expect("polynomial matrix difference")
    }

    /// Product with a constant matrix on the right.
    pub fn mul_constant(&self, m: &FieldMatrix) -> Result<PolyMatrix> {
        self.try_mul(&PolyMatrix::from_constant(m))
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(&self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    pub fn map_automorphism(&self, phi: &Automorphism) -> Result<PolyMatrix> {
        self.check_field(phi.field())?;
        Ok(PolyMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|p| p.map_automorphism(phi)).collect(),
        })
    }

    // --- elementary row and column operations, used by the normal forms ---

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst -= c·z^e·row_src
    pub(crate) fn row_sub_scaled(&mut self, dst: usize, src: usize, c: Elem, e: usize) {
        for j in 0..self.cols {
            let s = self.get(src, j).clone();
            let d = self.get(dst, j).sub_scaled_shift(c, e, &s, &self.field);
            self.set(dst, j, d);
        }
    }

    /// row_dst -= q·row_src
    pub(crate) fn row_sub_poly(&mut self, dst: usize, src: usize, q: &Poly) {
        for j in 0..self.cols {
            let d = self.get(dst, j).sub(&q.mul(self.get(src, j), &self.field), &self.field);
            self.set(dst, j, d);
        }
    }

    /// col_dst -= col_src·q
    pub(crate) fn col_sub_poly(&mut self, dst: usize, src: usize, q: &Poly) {
        for i in 0..self.rows {
            let d = self.get(i, dst).sub(&q.mul(self.get(i, src), &self.field), &self.field);
            self.set(i, dst, d);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: Elem) {
        for j in 0..self.cols {
            let v = self.get(i, j).scale(c, &self.field);
            self.set(i, j, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = &self.field;
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j).mul(m.get(k, k), f).sub(&m.get(i, k).mul(m.get(k, j), f), f);
                    let v = num.exact_div(&prev, f).expect("Bareiss division is exact");
                    m.set(i, j, v);
                }
                m.set(i, k, Poly::zero());
            }
            prev = m.get(k, k).clone();
        }
        let det = if n == 0 { Poly::one() } else { prev };
        Ok(if negate { det.neg(f) } else { det })
    }

    /// All `k × k` minors for `k = rows`, in lexicographic column-subset order.
    pub fn maximal_minors(&self) -> Vec<Poly> {
        let k = self.rows;
        if k > self.cols {
            return Vec::new();
        }
        combinations(self.cols, k)
            .into_iter()
            .map(|cols| self.select_columns(&cols).determinant().unwrap())
            .collect()
    }

    /// Rank over the rational function field.
    pub fn rank(&self) -> usize {
        super::popov::weak_popov(self).0.nonzero_rows()
    }

    pub(crate) fn nonzero_rows(&self) -> usize {
        (0..self.rows).filter(|&i| self.row_degree(i).is_some()).count()
    }

    pub fn has_full_row_rank(&self) -> bool {
        self.rank() == self.rows
    }

    /// Internal degree: maximal degree of a `k × k` minor.
    ///
    /// Minors are enumerated for up to 8 columns; beyond that the row
    /// degrees of the Popov form are summed.
    pub fn degree(&self) -> Result<usize> {
        if !self.has_full_row_rank() {
            return Err(Error::RankDeficient);
        }
        if self.cols <= 8 {
            Ok(self.maximal_minors().iter().filter_map(Poly::degree).max().unwrap_or(0))
        } else {
            Ok(super::popov::popov_form(self)?.row_degrees()?.iter().sum())
        }
    }

    /// Leading-row-coefficient test; agrees with `Σ νᵢ = degree`.
    pub fn is_reduced(&self) -> Result<bool> {
        if !self.has_full_row_rank() {
            return Err(Error::RankDeficient);
        }
        Ok(self.leading_row_coefficients()?.rank() == self.rows)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols
            && self
                .determinant()
                .map(|d| d.degree() == Some(0))
                .unwrap_or(false)
    }

    /// Hamming weight of all coefficient vectors, summed over entries.
    pub fn weight(&self) -> usize {
        self.data.iter().map(Poly::term_count).sum()
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly_matrix;

    fn pm(p: u32, s: u32, src: &str) -> PolyMatrix {
        let f = Field::new(p, s).unwrap();
        parse_poly_matrix(&f, src).unwrap()
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn degree_from_minors() {
        let g = pm(3, 1, "0; 1; 1+2z\n1; 0; z");
        assert_eq!(g.degree().unwrap(), 1);
        assert_eq!(g.row_degrees().unwrap(), vec![1, 1]);
        assert!(!g.is_reduced().unwrap());
        assert_eq!(PolyMatrix::identity(g.field(), 3).degree().unwrap(), 0);
    }

    #[test]
    fn reduced_encoder() {
        let g = pm(2, 1, "z; 1+z^2; 1+z; z+z^2\n1; 0; 1; 1");
        assert_eq!(g.row_degrees().unwrap(), vec![2, 0]);
        assert_eq!(g.degree().unwrap(), 2);
        assert!(g.is_reduced().unwrap());
    }

    #[test]
    fn zero_row_is_reported() {
        let g = pm(2, 1, "1; z\n0; 0");
        assert_eq!(g.row_degrees(), Err(Error::ZeroRow(1)));
        assert_eq!(g.degree(), Err(Error::RankDeficient));
        assert_eq!(g.rank(), 1);
    }

    #[test]
    fn rank_deficient_without_zero_rows() {
        let g = pm(2, 1, "1; z\n1+z; z+z^2");
        assert_eq!(g.rank(), 1);
        assert!(g.is_reduced().is_err());
    }

    #[test]
    fn unimodularity() {
        assert!(pm(2, 1, "1; 1+z\n0; 1").is_unimodular());
        assert!(!pm(2, 1, "z; 0\n0; 1").is_unimodular());
        assert!(PolyMatrix::identity(&Field::new(3, 1).unwrap(), 2).is_unimodular());
        let d = pm(3, 1, "1+z; z^2; 2\nz; 1; 0\n0; z; 1+z").determinant().unwrap();
        // direct cofactor expansion gives 1 + 2z + z^2 + z^3 ... checked via eval
        let f = Field::new(3, 1).unwrap();
        let m = pm(3, 1, "1+z; z^2; 2\nz; 1; 0\n0; z; 1+z");
        for x in f.elements() {
            let e = m.eval(x);
            let det_e = d.eval(x, &f);
            // 3x3 determinant over GF(3) by the rule of Sarrus
            let g = |i, j| e.get(i, j);
            let t = |a, b, c| f.mul(f.mul(a, b), c);
            let pos = f.add(f.add(t(g(0, 0), g(1, 1), g(2, 2)), t(g(0, 1), g(1, 2), g(2, 0))), t(g(0, 2), g(1, 0), g(2, 1)));
            let neg = f.add(f.add(t(g(0, 2), g(1, 1), g(2, 0)), t(g(0, 0), g(1, 2), g(2, 1))), t(g(0, 1), g(1, 0), g(2, 2)));
            assert_eq!(det_e, f.sub(pos, neg));
        }
    }

    #[test]
    fn coefficient_round_trip() {
        let g = pm(2, 2, "a; 1+az^3\n(a+1)z; 0");
        let coeffs: Vec<_> = (0..=3).map(|e| g.coefficient(e)).collect();
        assert_eq!(PolyMatrix::from_coefficients(g.field(), 2, 2, &coeffs).unwrap(), g);
        assert_eq!(g.weight(), 4);
    }

    #[test]
    fn automorphism_is_coefficientwise() {
        let f = Field::new(2, 2).unwrap();
        let g = pm(2, 2, "a; az");
        let sq = &f.automorphisms()[1];
        assert_eq!(g.map_automorphism(sq).unwrap(), pm(2, 2, "a+1; (a+1)z"));
    }
}
