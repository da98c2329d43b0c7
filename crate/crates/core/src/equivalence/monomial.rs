//! Monomial equivalence: `G' = U·φ(G)·P·R` for an automorphism `φ`, a
//! permutation `P`, an invertible diagonal `R` and some unimodular `U`.

use std::fmt;

use super::{EquivalenceReport, Method, SearchOptions, Witness};
use crate::error::{Error, Result};
use crate::galois::{Automorphism, Elem, Field, FieldMatrix};
use crate::polymat::{forney_indices, is_basic, popov_form, PolyMatrix};
use crate::realization::{controller_form, StateSpace};
use crate::wam::{compute_wam, wam_search, Wam};

/// `G ↦ φ(G)·P·R`. Column `j` of the image is `scales[j]` times column
/// `perm[j]` of `φ(G)`.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialTransform {
    phi: Automorphism,
    perm: Vec<usize>,
    scales: Vec<Elem>,
}

impl fmt::Debug for MonomialTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.phi.field();
        let scales: Vec<String> = self.scales.iter().map(|&e| crate::text::format_elem(field, e)).collect();
        write!(f, "phi={} perm={:?} scales=[{}]", self.phi, self.perm, scales.join(", "))
    }
}

impl MonomialTransform {
    pub fn new(phi: Automorphism, perm: Vec<usize>, scales: Vec<Elem>) -> Result<MonomialTransform> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Shape(format!("{perm:?} is not a permutation")));
            }
        }
        if scales.len() != n || scales.iter().any(|s| s.is_zero()) {
            return Err(Error::Shape("scales must be nonzero, one per column".into()));
        }
        Ok(MonomialTransform { phi, perm, scales })
    }

    pub fn identity(field: &Field, n: usize) -> MonomialTransform {
        MonomialTransform {
            phi: field.identity_automorphism(),
            perm: (0..n).collect(),
            scales: vec![Elem::ONE; n],
        }
    }

    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scales(&self) -> &[Elem] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn permutation_matrix(&self) -> FieldMatrix {
        FieldMatrix::permutation(self.phi.field(), &self.perm)
    }

    pub fn diagonal_matrix(&self) -> FieldMatrix {
        FieldMatrix::diagonal(self.phi.field(), &self.scales)
    }

    /// The monomial matrix `P·R`.
    pub fn monomial_matrix(&self) -> FieldMatrix {
        self.permutation_matrix().mul(&self.diagonal_matrix())
    }

    /// Decomposes a monomial matrix `M = P·R` back into `(perm, scales)`.
    fn from_monomial_matrix(phi: Automorphism, m: &FieldMatrix) -> Result<MonomialTransform> {
        let n = m.cols();
        let mut perm = Vec::with_capacity(n);
        let mut scales = Vec::with_capacity(n);
        for j in 0..n {
            let nz: Vec<usize> = (0..m.rows()).filter(|&i| !m.get(i, j).is_zero()).collect();
            if nz.len() != 1 {
                return Err(Error::Internal("not a monomial matrix".into()));
            }
            perm.push(nz[0]);
            scales.push(m.get(nz[0], j));
        }
        MonomialTransform::new(phi, perm, scales)
    }

    pub fn apply(&self, g: &PolyMatrix) -> Result<PolyMatrix> {
        if g.cols() != self.len() {
            return Err(Error::Shape(format!("transform of length {} on {} columns", self.len(), g.cols())));
        }
        let f = g.field();
        let mapped = g.map_automorphism(&self.phi)?;
        Ok(PolyMatrix::from_fn(f, g.rows(), g.cols(), |i, j| {
            mapped.get(i, self.perm[j]).scale(self.scales[j], f)
        }))
    }

    /// `(φ(A), φ(B), φ(C)PR, φ(D)PR)`
    pub fn apply_to_system(&self, sys: &StateSpace) -> Result<StateSpace> {
        let pr = self.monomial_matrix();
        StateSpace::new(
            sys.a().map_automorphism(&self.phi)?,
            sys.b().map_automorphism(&self.phi)?,
            sys.c().map_automorphism(&self.phi)?.try_mul(&pr)?,
            sys.d().map_automorphism(&self.phi)?.try_mul(&pr)?,
        )
    }

    /// Applying `self` and then `next`.
    pub fn then(&self, next: &MonomialTransform) -> Result<MonomialTransform> {
        // φ₂(φ₁(G)M₁)M₂ = φ₂φ₁(G)·φ₂(M₁)M₂
        let m = self.monomial_matrix().map_automorphism(&next.phi)?.try_mul(&next.monomial_matrix())?;
        MonomialTransform::from_monomial_matrix(self.phi.then(&next.phi), &m)
    }

    pub fn inverse(&self) -> Result<MonomialTransform> {
        // G = φ⁻¹(G'·M⁻¹) = φ⁻¹(G')·φ⁻¹(M⁻¹)
        let inv = self.phi.inverse();
        let m = self.monomial_matrix().inverse()?.map_automorphism(&inv)?;
        MonomialTransform::from_monomial_matrix(inv, &m)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |a, b| a.saturating_mul(b))
}

/// `s · n! · (q−1)^n` (with `s = 1` when automorphisms are disallowed).
pub fn direct_search_size(field: &Field, n: usize, automorphisms: bool) -> u128 {
    let s = if automorphisms { field.degree() as u128 } else { 1 };
    let scalings = ((field.order() - 1) as u128).saturating_pow(n as u32);
    s.saturating_mul(factorial(n)).saturating_mul(scalings)
}

/// Advances `perm` to the next permutation in lexicographic order.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Advances a tuple of nonzero element indices in lexicographic order.
fn next_scales(scales: &mut [u32], q: u32) -> bool {
    for s in scales.iter_mut().rev() {
        if *s + 1 < q {
            *s += 1;
            return true;
        }
        *s = 1;
    }
    false
}

fn check_pair(g: &PolyMatrix, h: &PolyMatrix) -> Result<()> {
    if g.field() != h.field() {
        return Err(Error::FieldMismatch(g.field().to_string(), h.field().to_string()));
    }
    if g.cols() != h.cols() {
        return Err(Error::Shape(format!("lengths {} and {} differ", g.cols(), h.cols())));
    }
    Ok(())
}

fn automorphism_list(field: &Field, allow: bool) -> Vec<Automorphism> {
    if allow {
        field.automorphisms()
    } else {
        vec![field.identity_automorphism()]
    }
}

/// Exhaustive search over `(φ, P, R)` comparing Popov forms, which
/// absorbs the left unimodular factor.
///
/// Order: automorphisms (identity first), permutations lexicographically,
/// then diagonals lexicographically over nonzero element indices.
pub fn monomial_equivalent_direct(g: &PolyMatrix, h: &PolyMatrix, opts: &SearchOptions) -> Result<EquivalenceReport> {
    check_pair(g, h)?;
    let f = g.field();
    let n = g.cols();
    let search_size = direct_search_size(f, n, opts.automorphisms);
    if !is_basic(g) || !is_basic(h) {
        return Err(Error::NotBasic);
    }
    if search_size > opts.max_search {
        return Err(Error::CapExceeded {
            size: search_size,
            cap: opts.max_search,
        });
    }
    let mut report = EquivalenceReport {
        verdict: false,
        method: Method::Direct,
        witness: None,
        search_size,
        candidates_checked: 0,
    };
    if g.rows() != h.rows() || forney_indices(g)? != forney_indices(h)? {
        return Ok(report);
    }
    let target = popov_form(h)?;
    for phi in automorphism_list(f, opts.automorphisms) {
        let mapped = g.map_automorphism(&phi)?;
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let permuted = mapped.select_columns(&perm);
            let mut scales = vec![1u32; n];
            loop {
                report.candidates_checked += 1;
                let r: Vec<Elem> = scales.iter().map(|&s| f.elem(s).unwrap()).collect();
                let candidate = PolyMatrix::from_fn(f, g.rows(), n, |i, j| permuted.get(i, j).scale(r[j], f));
                if popov_form(&candidate)? == target {
                    let t = MonomialTransform::new(phi.clone(), perm.clone(), r)?;
                    report.verdict = true;
                    report.witness = Some(Witness::Monomial(t));
                    return Ok(report);
                }
                if !next_scales(&mut scales, f.order()) {
                    break;
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    Ok(report)
}

/// Weight adjacency matrix of the controller form, the canonical minimal
/// realization of a reduced encoder.
pub fn encoder_wam(g: &PolyMatrix, max_states: usize) -> Result<Wam> {
    compute_wam(&controller_form(g)?, max_states)
}

/// Decides monomial equivalence through the adjacency matrices.
///
/// Both encoders must be basic and reduced. A zero Forney index on either
/// side is refused: the adjacency matrix does not determine the code class
/// there.
pub fn monomial_equivalent_wam(g: &PolyMatrix, h: &PolyMatrix, opts: &SearchOptions) -> Result<EquivalenceReport> {
    check_pair(g, h)?;
    let f = g.field();
    for m in [g, h] {
        if !is_basic(m) {
            return Err(Error::NotBasic);
        }
        if !m.is_reduced()? {
            return Err(Error::NotReduced);
        }
        if m.row_degrees()?.contains(&0) {
            return Err(Error::ZeroForneyIndex);
        }
    }
    let autos = automorphism_list(f, opts.automorphisms);
    let mut report = EquivalenceReport {
        verdict: false,
        method: Method::Wam,
        witness: None,
        search_size: 0,
        candidates_checked: 0,
    };
    let (dg, dh) = (g.degree()?, h.degree()?);
    if g.rows() != h.rows() || dg != dh {
        return Ok(report);
    }
    report.search_size = crate::galois::gl_order(f.order(), dg).saturating_mul(autos.len() as u128);
    if report.search_size > opts.max_search {
        return Err(Error::CapExceeded {
            size: report.search_size,
            cap: opts.max_search,
        });
    }
    let (lg, lh) = (encoder_wam(g, opts.max_states)?, encoder_wam(h, opts.max_states)?);
    let (witness, checked) = wam_search(&lg, &lh, &autos, opts.max_search)?;
    report.candidates_checked = checked;
    if let Some(w) = witness {
        report.verdict = true;
        report.witness = Some(Witness::Relabel(w));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymat::code_equal;
    use crate::sample::{random_basic_reduced, random_monomial_transform};
    use crate::text::parse_poly_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lexicographic_permutations() {
        let mut p = vec![0, 1, 2];
        let mut all = vec![p.clone()];
        while next_permutation(&mut p) {
            all.push(p.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2, 1]);
        assert_eq!(all[5], vec![2, 1, 0]);
    }

    #[test]
    fn search_size_formula() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(direct_search_size(&f, 6, true), 720);
        let f = Field::new(2, 2).unwrap();
        assert_eq!(direct_search_size(&f, 3, true), 2 * 6 * 27);
        assert_eq!(direct_search_size(&f, 3, false), 6 * 27);
    }

    #[test]
    fn transform_algebra() {
        let f = Field::new(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = parse_poly_matrix(&f, "1; a; z; az^2\n0; 1; 1+z; a+1").unwrap();
        for _ in 0..20 {
            let t1 = random_monomial_transform(&mut rng, &f, 4, true);
            let t2 = random_monomial_transform(&mut rng, &f, 4, true);
            let two = t2.apply(&t1.apply(&g).unwrap()).unwrap();
            assert_eq!(t1.then(&t2).unwrap().apply(&g).unwrap(), two);
            assert_eq!(t1.inverse().unwrap().apply(&t1.apply(&g).unwrap()).unwrap(), g);
            // matrix form agrees with the column description
            let pr = PolyMatrix::from_constant(&t1.monomial_matrix());
            assert_eq!(g.map_automorphism(t1.phi()).unwrap().mul(&pr), t1.apply(&g).unwrap());
        }
    }

    #[test]
    fn planted_transform_is_found() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = Field::new(3, 1).unwrap();
        let opts = SearchOptions::default();
        for _ in 0..5 {
            let g = random_basic_reduced(&mut rng, &f, 3, &[1, 1]);
            let t = random_monomial_transform(&mut rng, &f, 3, true);
            let h = t.apply(&g).unwrap();
            let r = monomial_equivalent_direct(&g, &h, &opts).unwrap();
            assert!(r.verdict);
            let Some(Witness::Monomial(w)) = &r.witness else { panic!() };
            assert!(code_equal(&w.apply(&g).unwrap(), &h).unwrap());
            let r = monomial_equivalent_wam(&g, &h, &opts).unwrap();
            assert!(r.verdict);
        }
    }

    #[test]
    fn zero_index_is_refused() {
        let f = Field::new(2, 1).unwrap();
        let g = parse_poly_matrix(&f, "z; 1; 0\n0; 0; 1").unwrap();
        assert_eq!(
            monomial_equivalent_wam(&g, &g, &SearchOptions::default()).unwrap_err(),
            Error::ZeroForneyIndex
        );
        let nb = parse_poly_matrix(&f, "1+z; 1+z^2").unwrap();
        assert_eq!(monomial_equivalent_direct(&nb, &nb, &SearchOptions::default()).unwrap_err(), Error::NotBasic);
    }

    #[test]
    fn cap_refuses_large_searches() {
        let f = Field::new(2, 1).unwrap();
        let g = PolyMatrix::identity(&f, 3);
        let opts = SearchOptions { max_search: 5, ..SearchOptions::default() };
        assert_eq!(
            monomial_equivalent_direct(&g, &g, &opts).unwrap_err(),
            Error::CapExceeded { size: 6, cap: 5 }
        );
    }
}
