use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use convequiv::equivalence::{
    cross_validate_main_theorem, feedback_equivalent, monomial_equivalent_direct, monomial_equivalent_wam, ReportJson,
    SampleSpec, SearchOptions,
};
use convequiv::fixtures;
use convequiv::galois::Field;
use convequiv::polymat::{Poly, PolyMatrix};
use convequiv::realization::canonical_realization;
use convequiv::sample::{random_basic_reduced, random_monomial_transform};
use convequiv::text::parse_poly_matrix;

fn sorted_columns(m: &PolyMatrix) -> Vec<Vec<Poly>> {
    let mut cols: Vec<Vec<Poly>> = (0..m.cols()).map(|j| (0..m.rows()).map(|i| m.get(i, j).clone()).collect()).collect();
    cols.sort_by_key(|c| format!("{c:?}"));
    cols
}

#[test]
fn zero_index_pair_by_listing_unimodular_factors() {
    let f = Field::new(2, 1).unwrap();
    let (g, gbar) = fixtures::zero_index_pair();
    let options = ["1; 0\n0; 1", "1; 1\n0; 1", "1; z\n0; 1", "1; 1+z\n0; 1"];
    for u in options {
        let ug = parse_poly_matrix(&f, u).unwrap().mul(&g);
        assert!(ug.is_reduced().unwrap());
        assert_eq!(ug.row_degrees().unwrap(), vec![1, 0]);
        assert_ne!(sorted_columns(&ug), sorted_columns(&gbar), "U = {u}");
    }
    let r = monomial_equivalent_direct(&g, &gbar, &SearchOptions::default()).unwrap();
    assert!(!r.verdict);
}

#[test]
fn zero_index_codes_lie_in_different_orbits() {
    let (g, gbar) = fixtures::zero_index_pair();
    let a = canonical_realization(&g).unwrap();
    let b = canonical_realization(&gbar).unwrap();
    assert!(!feedback_equivalent(&a, &b, false).unwrap().equivalent);
}

#[test]
fn automorphism_free_mode_agrees() {
    let f = Field::new(2, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let strict = SearchOptions { automorphisms: false, ..SearchOptions::default() };
    for i in 0..12 {
        let g = random_basic_reduced(&mut rng, &f, 3, &[1, 1]);
        let h = if i % 2 == 0 {
            random_monomial_transform(&mut rng, &f, 3, true).apply(&g).unwrap()
        } else {
            random_basic_reduced(&mut rng, &f, 3, &[1, 1])
        };
        let direct = monomial_equivalent_direct(&g, &h, &strict).unwrap();
        let wam = monomial_equivalent_wam(&g, &h, &strict).unwrap();
        assert_eq!(direct.verdict, wam.verdict, "pair {i}");
        if direct.verdict {
            assert!(monomial_equivalent_direct(&g, &h, &SearchOptions::default()).unwrap().verdict);
        }
    }
}

#[test]
fn cross_validation_over_gf3() {
    let spec = SampleSpec {
        field: Field::new(3, 1).unwrap(),
        n: 3,
        indices: vec![1],
        pairs: 20,
        seed: 4,
        options: SearchOptions::default(),
    };
    let report = cross_validate_main_theorem(&spec).unwrap();
    assert!(report.disagreements().is_empty());
    assert!(report.planted_misses().is_empty());
}

#[test]
fn distinct_forney_profiles_are_inequivalent() {
    let f = Field::new(2, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let g = random_basic_reduced(&mut rng, &f, 4, &[2, 1]);
    let h = random_basic_reduced(&mut rng, &f, 4, &[3, 0]);
    assert!(!monomial_equivalent_direct(&g, &h, &SearchOptions::default()).unwrap().verdict);
    let h = random_basic_reduced(&mut rng, &f, 4, &[1, 1]);
    assert!(!monomial_equivalent_wam(&g, &h, &SearchOptions::default()).unwrap().verdict);
}

#[test]
fn report_json_round_trips() {
    let f = Field::new(3, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let g = random_basic_reduced(&mut rng, &f, 3, &[1, 1]);
    let h = random_monomial_transform(&mut rng, &f, 3, false).apply(&g).unwrap();
    for r in [
        monomial_equivalent_direct(&g, &h, &SearchOptions::default()).unwrap(),
        monomial_equivalent_wam(&g, &h, &SearchOptions::default()).unwrap(),
    ] {
        assert!(r.verdict && r.verify(&g, &h, 4096).unwrap());
        let json = serde_json::to_string(&r.to_json()).unwrap();
        assert!(!json.contains("timings_ms"));
        let back: ReportJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r.to_json());
    }
}
