//! Univariate polynomials over a finite field.
//!
//! `Poly` stores only coefficients; every operation takes the [`Field`]
//! explicitly. The zero polynomial has degree `None`.

use crate::galois::{Automorphism, Elem, Field};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c · z^e`
    pub fn monomial(c: Elem, e: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; e + 1];
        coeffs[e] = c;
        Poly::from_coeffs(coeffs)
    }

    /// Coefficients, constant term first. Trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    #[inline]
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Leading coefficient, `None` for zero.
    pub fn lead(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    /// True for `c · z^e` with `c ≠ 0`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs[..self.coeffs.len() - 1].iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, f: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self, f: &Field) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly, f: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: Elem, f: &Field) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|&a| f.mul(c, a)).collect(),
        }
    }

    /// Multiplication by `z^e`.
    pub fn shift(&self, e: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Elem::ZERO; e];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    /// `self - c·z^e·other`, the workhorse of row reduction.
    pub fn sub_scaled_shift(&self, c: Elem, e: usize, other: &Poly, f: &Field) -> Poly {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len().max(other.coeffs.len() + e);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n, Elem::ZERO);
        for (j, &b) in other.coeffs.iter().enumerate() {
            coeffs[j + e] = f.sub(coeffs[j + e], f.mul(c, b));
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv = f.inv(divisor.lead().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let factor = f.mul(c, inv);
            quot[top - dd] = factor;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                rem[idx] = f.sub(rem[idx], f.mul(factor, b));
            }
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly, f: &Field) -> Option<Poly> {
        let (q, r) = self.div_rem(divisor, f);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) => self.scale(f.inv(l).unwrap(), f),
        }
    }

    pub fn eval(&self, x: Elem, f: &Field) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Coefficientwise image under a field automorphism.
    pub fn map_automorphism(&self, phi: &Automorphism) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| phi.apply(c)).collect())
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(a: &Poly, b: &Poly, f: &Field) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let (_, r) = x.div_rem(&y, f);
        x = y;
        y = r;
    }
    x.monic(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(f: &Field, c: &[u32]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&i| f.elem(i).unwrap()).collect())
    }

    #[test]
    fn degrees_and_products() {
        let f = Field::new(3, 1).unwrap();
        let a = p(&f, &[1, 2]);
        let b = p(&f, &[0, 1, 1]);
        assert_eq!(a.mul(&b, &f).degree(), Some(3));
        assert_eq!(Poly::zero().degree(), None);
        assert!(Poly::zero().mul(&a, &f).is_zero());
        assert_eq!(p(&f, &[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn division_identity() {
        let f = Field::new(2, 2).unwrap();
        let a = p(&f, &[3, 1, 0, 2, 1]);
        let b = p(&f, &[1, 2, 1]);
        let (q, r) = a.div_rem(&b, &f);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_over_gf2() {
        let f = Field::new(2, 1).unwrap();
        // gcd(1+z, 1+z^2) = 1+z
        assert_eq!(gcd(&p(&f, &[1, 1]), &p(&f, &[1, 0, 1]), &f), p(&f, &[1, 1]));
        assert_eq!(gcd(&p(&f, &[1, 1]), &p(&f, &[0, 1]), &f), Poly::one());
        assert_eq!(gcd(&Poly::zero(), &Poly::zero(), &f), Poly::zero());
    }

    #[test]
    fn evaluation_and_shift() {
        let f = Field::new(3, 1).unwrap();
        let a = p(&f, &[1, 1, 1]);
        assert_eq!(a.eval(f.elem(1).unwrap(), &f), Elem::ZERO);
        assert_eq!(a.shift(2), p(&f, &[0, 0, 1, 1, 1]));
        assert!(p(&f, &[0, 0, 2]).is_monomial());
        assert!(!a.is_monomial());
    }
}
