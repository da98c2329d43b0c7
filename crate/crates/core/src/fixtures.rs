//! Small worked instances with known answers, and a self-check that runs
//! every one of them.

use crate::equivalence::{feedback_equivalent, monomial_equivalent_direct, monomial_equivalent_wam, SearchOptions};
use crate::error::{Error, Result};
use crate::galois::{Field, FieldMatrix};
use crate::polymat::{code_equal, is_basic, PolyMatrix};
use crate::realization::{
    canonical_realization, controller_form, is_semi_reduced, mcmillan_degree, ConditionClause, FeedbackWitness,
    StateSpace,
};
use crate::text::{parse_poly_matrix, parse_system_file};
use crate::wam::{block_weight_enumerator, compute_wam, WeightEnum, DEFAULT_MAX_STATES};

fn gf(p: u32) -> Field {
    Field::new(p, 1).unwrap()
}

fn pm(p: u32, src: &str) -> PolyMatrix {
    parse_poly_matrix(&gf(p), src).unwrap()
}

fn fm(p: u32, rows: &[&[u32]]) -> FieldMatrix {
    FieldMatrix::from_indices(&gf(p), rows).unwrap()
}

/// Basic reduced 2×4 encoder over GF(2) with row degrees (2, 0).
pub fn demo_encoder() -> PolyMatrix {
    pm(2, "z; 1+z^2; 1+z; z+z^2\n1; 0; 1; 1")
}

/// Adjacency matrix of [`demo_encoder`], rows and columns in
/// lexicographic state order.
pub fn demo_wam() -> Vec<Vec<WeightEnum>> {
    let rows = [
        ["1+W^3", "0", "W^2+W^3", "0"],
        ["W^2+W^3", "0", "W+W^2", "0"],
        ["0", "1+W^3", "0", "W^2+W^3"],
        ["0", "W^2+W^3", "0", "W+W^2"],
    ];
    rows.iter().map(|r| r.iter().map(|s| WeightEnum::parse(s).unwrap()).collect()).collect()
}

/// Controller form of [`demo_encoder`].
pub fn demo_controller_form() -> StateSpace {
    StateSpace::new(
        fm(2, &[&[0, 1], &[0, 0]]),
        fm(2, &[&[1, 0], &[0, 0]]),
        fm(2, &[&[1, 0, 1, 1], &[0, 1, 0, 1]]),
        fm(2, &[&[0, 1, 1, 0], &[1, 0, 1, 1]]),
    )
    .unwrap()
}

/// Order-one canonical system over GF(3) whose encoder is semi-reduced but
/// not reduced.
pub fn ternary_semi_reduced_system() -> StateSpace {
    parse_system_file("field: GF(3)\nA:\n0\nB:\n2\n1\nC:\n0; 0; 1\nD:\n0; 1; 1\n1; 0; 0\n").unwrap()
}

pub fn ternary_semi_reduced_encoder() -> PolyMatrix {
    pm(3, "0; 1; 1+2z\n1; 0; z")
}

/// Order-two system over GF(2) with a non-basic encoder.
pub fn non_basic_system() -> StateSpace {
    parse_system_file("field: GF(2)\nA:\n0; 1\n0; 0\nB:\n1; 0\nC:\n0; 1\n1; 0\nD:\n1; 1\n").unwrap()
}

/// Controller form of `[[1, z, 1+z], [0, 1, z]]` over GF(2).
pub fn feedback_demo_system() -> StateSpace {
    StateSpace::new(
        fm(2, &[&[0, 0], &[0, 0]]),
        fm(2, &[&[1, 0], &[0, 1]]),
        fm(2, &[&[0, 1, 1], &[0, 0, 1]]),
        fm(2, &[&[1, 0, 1], &[0, 1, 0]]),
    )
    .unwrap()
}

pub fn feedback_demo_encoder() -> PolyMatrix {
    pm(2, "1; z; 1+z\n0; 1; z")
}

/// Feedback `T = U = I`, `M = [[0, 0], [1, 0]]`.
pub fn feedback_demo_witness() -> FeedbackWitness {
    FeedbackWitness {
        t: FieldMatrix::identity(&gf(2), 2),
        u: FieldMatrix::identity(&gf(2), 2),
        m: fm(2, &[&[0, 0], &[1, 0]]),
    }
}

/// Encoder of the fed-back demo system; same code, not reduced.
pub fn feedback_demo_image() -> PolyMatrix {
    pm(2, "1; z; 1+z\nz; 1+z^2; z^2")
}

/// Two inequivalent `[6, 3]` binary block codes with one weight
/// enumerator.
pub fn isospectral_block_pair() -> (PolyMatrix, PolyMatrix) {
    (
        pm(2, "1; 1; 0; 0; 0; 0\n0; 0; 1; 1; 0; 0\n1; 1; 1; 1; 1; 1"),
        pm(2, "1; 1; 0; 0; 0; 0\n1; 0; 1; 0; 0; 0\n1; 1; 1; 1; 1; 1"),
    )
}

pub fn isospectral_block_enumerator() -> WeightEnum {
    WeightEnum::parse("1+3W^2+3W^4+W^6").unwrap()
}

/// Two inequivalent binary codes with Forney indices (1, 0) and the same
/// adjacency matrix.
pub fn zero_index_pair() -> (PolyMatrix, PolyMatrix) {
    (pm(2, "1; 1; z; z; 0; 0\n1; 1; 1; 1; 1; 1"), pm(2, "1+z; 1; z; 0; 0; 0\n1; 1; 1; 1; 1; 1"))
}

/// Shared adjacency matrix of [`zero_index_pair`].
pub fn zero_index_wam() -> Vec<Vec<WeightEnum>> {
    let e = |s: &str| WeightEnum::parse(s).unwrap();
    vec![vec![e("1+W^6"), e("W^2+W^4")], vec![e("W^2+W^4"), e("W^2+W^4")]]
}

/// One named self-check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match run() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Runs every fixture against the library and reports each outcome.
///
/// The non-basic system is checked for what it actually is: its encoder is
/// `(1+z², 1+z)` and the rank condition fails at `λ = 1`.
pub fn run_selftest() -> Vec<Check> {
    let opts = SearchOptions::default();
    vec![
        check("demo adjacency matrix", || {
            let got = compute_wam(&controller_form(&demo_encoder())?, DEFAULT_MAX_STATES)?.to_dense();
            Ok((got == demo_wam(), "4x4, lexicographic states".into()))
        }),
        check("demo controller form", || {
            let cf = controller_form(&demo_encoder())?;
            Ok((cf == demo_controller_form(), format!("delta {}", cf.delta())))
        }),
        check("ternary semi-reduced system", || {
            let sys = ternary_semi_reduced_system();
            let g = sys.reconstruct_encoder()?;
            let ok = g == ternary_semi_reduced_encoder()
                && g.degree()? == 1
                && mcmillan_degree(&g)? == 1
                && !g.is_reduced()?
                && is_semi_reduced(&g)?
                && sys.satisfies_cond();
            Ok((ok, format!("G = {g}")))
        }),
        check("non-basic system", || {
            let sys = non_basic_system();
            let g = sys.reconstruct_encoder()?;
            let report = sys.check_condition();
            let ok = g == pm(2, "1+z^2; 1+z")
                && !is_basic(&g)
                && report.failed_clause() == Some(ConditionClause::RankAwayFromZero);
            let clause = report.failed_clause().map_or("none".to_string(), |c| c.to_string());
            Ok((ok, format!("G = {g}, failing clause: {clause}")))
        }),
        check("isospectral block codes", || {
            let (g1, g2) = isospectral_block_pair();
            let same = block_weight_enumerator(&g1)? == isospectral_block_enumerator()
                && block_weight_enumerator(&g2)? == isospectral_block_enumerator();
            let r = monomial_equivalent_direct(&g1, &g2, &opts)?;
            Ok((same && !r.verdict && r.search_size == 720, format!("search size {}", r.search_size)))
        }),
        check("zero-index pair", || {
            let (g, h) = zero_index_pair();
            let lg = compute_wam(&controller_form(&g)?, DEFAULT_MAX_STATES)?.to_dense();
            let lh = compute_wam(&controller_form(&h)?, DEFAULT_MAX_STATES)?.to_dense();
            let direct = monomial_equivalent_direct(&g, &h, &opts)?;
            let refused = monomial_equivalent_wam(&g, &h, &opts) == Err(Error::ZeroForneyIndex);
            let ok = lg == zero_index_wam() && lh == zero_index_wam() && !direct.verdict && refused;
            Ok((ok, "direct false, adjacency test refused".into()))
        }),
        check("feedback demo", || {
            let sys = feedback_demo_system();
            let moved = sys.apply_feedback(&feedback_demo_witness())?;
            let gbar = moved.reconstruct_encoder()?;
            let out = feedback_equivalent(&sys, &moved, true)?;
            let verified = match &out.witness {
                Some(w) => sys.apply_feedback(w)? == moved,
                None => false,
            };
            let ok = gbar == feedback_demo_image()
                && !gbar.is_reduced()?
                && code_equal(&feedback_demo_encoder(), &gbar)?
                && out.equivalent
                && verified;
            Ok((ok, format!("G' = {gbar}")))
        }),
        check("zero-index codes are distinct", || {
            let (g, h) = zero_index_pair();
            let out = feedback_equivalent(&canonical_realization(&g)?, &canonical_realization(&h)?, false)?;
            Ok((!out.equivalent, "canonical realizations not feedback equivalent".into()))
        }),
    ]
}
