//! Seeded random generators for encoders, transforms and systems.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::equivalence::MonomialTransform;
use crate::galois::{Elem, Field, FieldMatrix};
use crate::polymat::{is_basic, Poly, PolyMatrix};
use crate::realization::FeedbackWitness;

pub fn random_elem<R: Rng>(rng: &mut R, f: &Field) -> Elem {
    f.elem(rng.gen_range(0..f.order())).unwrap()
}

pub fn random_nonzero<R: Rng>(rng: &mut R, f: &Field) -> Elem {
    f.elem(rng.gen_range(1..f.order())).unwrap()
}

/// Uniform polynomial of degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, f: &Field, max_deg: usize) -> Poly {
    Poly::from_coeffs((0..=max_deg).map(|_| random_elem(rng, f)).collect())
}

/// Polynomial of degree exactly `deg`.
pub fn random_poly_of_degree<R: Rng>(rng: &mut R, f: &Field, deg: usize) -> Poly {
    let mut c: Vec<Elem> = (0..deg).map(|_| random_elem(rng, f)).collect();
    c.push(random_nonzero(rng, f));
    Poly::from_coeffs(c)
}

pub fn random_poly_matrix<R: Rng>(rng: &mut R, f: &Field, k: usize, n: usize, max_deg: usize) -> PolyMatrix {
    PolyMatrix::from_fn(f, k, n, |_, _| random_poly(rng, f, max_deg))
}

/// Rejection-samples a full-row-rank matrix.
pub fn random_full_rank<R: Rng>(rng: &mut R, f: &Field, k: usize, n: usize, max_deg: usize) -> PolyMatrix {
    loop {
        let g = random_poly_matrix(rng, f, k, n, max_deg);
        if g.has_full_row_rank() {
            return g;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, f: &Field, rows: usize, cols: usize) -> FieldMatrix {
    let data = (0..rows * cols).map(|_| random_elem(rng, f)).collect();
    FieldMatrix::from_vec(f, rows, cols, data).unwrap()
}

pub fn random_invertible<R: Rng>(rng: &mut R, f: &Field, dim: usize) -> FieldMatrix {
    loop {
        let m = random_matrix(rng, f, dim, dim);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Basic and reduced encoder whose row `i` has degree `indices[i]`.
pub fn random_basic_reduced<R: Rng>(rng: &mut R, f: &Field, n: usize, indices: &[usize]) -> PolyMatrix {
    loop {
        let rows: Vec<Vec<Poly>> = indices
            .iter()
            .map(|&d| {
                let mut row: Vec<Poly> = (0..n).map(|_| random_poly(rng, f, d)).collect();
                if row.iter().all(|p| p.degree() != Some(d)) {
                    let j = rng.gen_range(0..n);
                    row[j] = random_poly_of_degree(rng, f, d);
                }
                row
            })
            .collect();
        let g = PolyMatrix::from_rows(f, rows).unwrap();
        if g.is_reduced().unwrap_or(false) && is_basic(&g) {
            return g;
        }
    }
}

/// Product of `steps` random elementary operations on `I_k`, with
/// polynomial multipliers of degree at most `max_deg`.
pub fn random_unimodular<R: Rng>(rng: &mut R, f: &Field, k: usize, max_deg: usize, steps: usize) -> PolyMatrix {
    let mut u = PolyMatrix::identity(f, k);
    for _ in 0..steps {
        match rng.gen_range(0..4) {
            0 if k > 1 => {
                let (i, j) = distinct_pair(rng, k);
                u.swap_rows(i, j);
            }
            1 => {
                let i = rng.gen_range(0..k);
                u.scale_row(i, random_nonzero(rng, f));
            }
            _ if k > 1 => {
                let (i, j) = distinct_pair(rng, k);
                let q = random_poly(rng, f, max_deg).neg(f);
                u.row_sub_poly(i, j, &q);
            }
            _ => {}
        }
    }
    u
}

/// Unimodular `U` such that `U·G` stays reduced with the same row degrees
/// whenever `G` is reduced with row degrees `degs`.
///
/// Only operations `row_i += c·z^e·row_j` with `e + ν_j ≤ ν_i` are used,
/// together with row scalings.
pub fn random_degree_preserving_unimodular<R: Rng>(rng: &mut R, f: &Field, degs: &[usize], steps: usize) -> PolyMatrix {
    let k = degs.len();
    let mut u = PolyMatrix::identity(f, k);
    for _ in 0..steps {
        if k > 1 && rng.gen_bool(0.8) {
            let (i, j) = distinct_pair(rng, k);
            if degs[j] > degs[i] {
                continue;
            }
            let e = rng.gen_range(0..=degs[i] - degs[j]);
            let c = random_nonzero(rng, f);
            u.row_sub_scaled(i, j, f.neg(c), e);
        } else {
            let i = rng.gen_range(0..k);
            u.scale_row(i, random_nonzero(rng, f));
        }
    }
    u
}

fn distinct_pair<R: Rng>(rng: &mut R, k: usize) -> (usize, usize) {
    let i = rng.gen_range(0..k);
    let mut j = rng.gen_range(0..k - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

pub fn random_monomial_transform<R: Rng>(rng: &mut R, f: &Field, n: usize, automorphisms: bool) -> MonomialTransform {
    let autos = f.automorphisms();
    let phi = if automorphisms {
        autos.choose(rng).unwrap().clone()
    } else {
        f.identity_automorphism()
    };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let scales = (0..n).map(|_| random_nonzero(rng, f)).collect();
    MonomialTransform::new(phi, perm, scales).unwrap()
}

pub fn random_feedback<R: Rng>(rng: &mut R, f: &Field, delta: usize, k: usize) -> FeedbackWitness {
    FeedbackWitness {
        t: random_invertible(rng, f, delta),
        u: random_invertible(rng, f, k),
        m: random_matrix(rng, f, delta, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_meet_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3] {
            let f = Field::new(p, 1).unwrap();
            for _ in 0..20 {
                let g = random_basic_reduced(&mut rng, &f, 4, &[2, 1]);
                assert_eq!(g.row_degrees().unwrap(), vec![2, 1]);
                assert!(is_basic(&g) && g.is_reduced().unwrap());
                let u = random_unimodular(&mut rng, &f, 2, 2, 6);
                assert!(u.is_unimodular());
                let w = random_degree_preserving_unimodular(&mut rng, &f, &[2, 1], 6);
                let wg = w.mul(&g);
                assert!(wg.is_reduced().unwrap());
                assert_eq!(wg.row_degrees().unwrap(), vec![2, 1]);
                assert!(random_invertible(&mut rng, &f, 3).is_invertible());
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let f = Field::new(3, 1).unwrap();
        let a = random_full_rank(&mut ChaCha8Rng::seed_from_u64(1), &f, 2, 3, 2);
        let b = random_full_rank(&mut ChaCha8Rng::seed_from_u64(1), &f, 2, 3, 2);
        assert_eq!(a, b);
    }
}
