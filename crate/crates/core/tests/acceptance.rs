//! Exit criteria. Runs every criterion, prints one line each, and exits
//! nonzero if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use convequiv::equivalence::{
    cross_validate_main_theorem, feedback_equivalent, monomial_equivalent_direct, monomial_equivalent_wam, SampleSpec,
    SearchOptions,
};
use convequiv::fixtures;
use convequiv::galois::Field;
use convequiv::polymat::{code_equal, is_basic, popov_form, Poly, PolyMatrix};
use convequiv::realization::{
    canonical_realization, controller_form, is_semi_reduced, mcmillan_degree, ConditionClause,
};
use convequiv::sample::{
    random_basic_reduced, random_degree_preserving_unimodular, random_full_rank, random_invertible, random_unimodular,
};
use convequiv::text::parse_poly_matrix;
use convequiv::wam::{block_weight_enumerator, compute_wam, DEFAULT_MAX_STATES};
use convequiv::Error;

type Outcome = Result<String, String>;

/// Name, check and time limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: Error) -> String {
    format!("error: {e}")
}

fn gf(p: u32) -> Field {
    Field::new(p, 1).unwrap()
}

fn golden_wam() -> Outcome {
    let cf = controller_form(&fixtures::demo_encoder()).map_err(err)?;
    let wam = compute_wam(&cf, DEFAULT_MAX_STATES).map_err(err)?;
    let got = wam.to_dense();
    let want = fixtures::demo_wam();
    for (x, row) in want.iter().enumerate() {
        for (y, e) in row.iter().enumerate() {
            ensure(&got[x][y] == e, format!("entry ({}, {}) is {} not {}", x + 1, y + 1, got[x][y], e))?;
        }
    }
    Ok(format!("16 entries, L11 = {}, L23 = {}", got[0][0], got[1][2]))
}

fn golden_controller_form() -> Outcome {
    let cf = controller_form(&fixtures::demo_encoder()).map_err(err)?;
    ensure(cf == fixtures::demo_controller_form(), format!("got {cf:?}"))?;
    Ok("A, B, C, D match".into())
}

fn ternary_suite() -> Outcome {
    let sys = fixtures::ternary_semi_reduced_system();
    let g = sys.reconstruct_encoder().map_err(err)?;
    let want = parse_poly_matrix(&gf(3), "0; 1; 1+2z\n1; 0; z").unwrap();
    ensure(g == want, format!("encoder {g}"))?;
    ensure(g.degree().map_err(err)? == 1, "degree")?;
    ensure(mcmillan_degree(&g).map_err(err)? == 1, "McMillan degree")?;
    ensure(!g.is_reduced().map_err(err)?, "reduced")?;
    ensure(is_semi_reduced(&g).map_err(err)?, "semi-reduced")?;
    ensure(sys.satisfies_cond(), "rank condition")?;
    Ok(format!("G = {g}"))
}

/// Checked as stated: encoder `(1+z, 1+z²)` and failure at `λ = 0`.
fn non_basic_witness() -> Outcome {
    let sys = fixtures::non_basic_system();
    let g = sys.reconstruct_encoder().map_err(err)?;
    let report = sys.check_condition();
    let expected = parse_poly_matrix(&gf(2), "1+z; 1+z^2").unwrap();
    let mut problems = Vec::new();
    if g != expected {
        problems.push(format!("encoder is {g}, expected {expected}"));
    }
    if is_basic(&g) {
        problems.push("encoder is basic".into());
    }
    if sys.satisfies_cond() {
        problems.push("condition holds".into());
    }
    let failed = report.failed_clauses();
    if !failed.contains(&ConditionClause::RankAtZero) {
        problems.push(format!("failing clauses {failed:?}, rank at 0 holds"));
    }
    if problems.is_empty() {
        Ok("non-basic, fails at 0".into())
    } else {
        Err(problems.join("; "))
    }
}

fn isospectral_block_codes() -> Outcome {
    let (g1, g2) = fixtures::isospectral_block_pair();
    let e1 = block_weight_enumerator(&g1).map_err(err)?;
    let e2 = block_weight_enumerator(&g2).map_err(err)?;
    let want = fixtures::isospectral_block_enumerator();
    ensure(e1 == want && e2 == want, format!("enumerators {e1} and {e2}"))?;
    let r = monomial_equivalent_direct(&g1, &g2, &SearchOptions::default()).map_err(err)?;
    ensure(!r.verdict, "reported equivalent")?;
    ensure(r.search_size == 720, format!("search size {}", r.search_size))?;
    Ok(format!("{e1}, not equivalent after {} candidates", r.candidates_checked))
}

fn zero_index_pair() -> Outcome {
    let (g, h) = fixtures::zero_index_pair();
    let want = fixtures::zero_index_wam();
    for m in [&g, &h] {
        let l = compute_wam(&controller_form(m).map_err(err)?, DEFAULT_MAX_STATES).map_err(err)?;
        ensure(l.to_dense() == want, format!("adjacency matrix of {m} differs"))?;
    }
    let opts = SearchOptions::default();
    let direct = monomial_equivalent_direct(&g, &h, &opts).map_err(err)?;
    ensure(!direct.verdict, "direct search reported equivalent")?;
    match monomial_equivalent_wam(&g, &h, &opts) {
        Err(Error::ZeroForneyIndex) => Ok("equal matrices, direct false, adjacency test refused".into()),
        other => Err(format!("adjacency test returned {other:?}")),
    }
}

fn feedback_demo() -> Outcome {
    let sys = fixtures::feedback_demo_system();
    let moved = sys.apply_feedback(&fixtures::feedback_demo_witness()).map_err(err)?;
    let gbar = moved.reconstruct_encoder().map_err(err)?;
    let want = parse_poly_matrix(&gf(2), "1; z; 1+z\nz; 1+z^2; z^2").unwrap();
    ensure(gbar == want, format!("image encoder {gbar}"))?;
    ensure(!gbar.is_reduced().map_err(err)?, "image is reduced")?;
    let g = sys.reconstruct_encoder().map_err(err)?;
    ensure(code_equal(&g, &gbar).map_err(err)?, "codes differ")?;
    let out = feedback_equivalent(&sys, &moved, true).map_err(err)?;
    let w = out.witness.ok_or("no witness")?;
    ensure(out.equivalent && sys.apply_feedback(&w).map_err(err)? == moved, "witness does not verify")?;
    Ok(format!("G' = {gbar}"))
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut reduced = 0;
    for i in 0..500 {
        let q = if i % 2 == 0 { 2 } else { 3 };
        let f = gf(q);
        let k = rng.gen_range(1..=2);
        let n = rng.gen_range(k..=4);
        let g = random_full_rank(&mut rng, &f, k, n, 3);
        let tag = |what: &str| format!("sample {i} ({g}): {what}");
        let deg = g.degree().map_err(err)?;
        let dm = mcmillan_degree(&g).map_err(err)?;
        ensure(dm >= deg, tag("McMillan degree below degree"))?;
        if g.is_reduced().map_err(err)? {
            reduced += 1;
            ensure(dm == deg, tag("reduced but McMillan degree differs"))?;
        }
        let cf = controller_form(&g).map_err(err)?;
        ensure(cf.reconstruct_encoder().map_err(err)? == g, tag("controller form round trip"))?;
        let wam = compute_wam(&cf, DEFAULT_MAX_STATES).map_err(err)?;
        let mass = (q as u64).pow(k as u32);
        ensure((0..wam.size()).all(|x| wam.row_mass(x) == mass), tag("row mass"))?;
        let p = popov_form(&g).map_err(err)?;
        ensure(popov_form(&p).map_err(err)? == p, tag("Popov not idempotent"))?;
        let u = random_unimodular(&mut rng, &f, k, 2, 4);
        ensure(popov_form(&u.mul(&g)).map_err(err)? == p, tag("Popov not unimodular invariant"))?;
    }
    Ok(format!("500 samples, {reduced} reduced"))
}

/// Words `uG` with `deg u_i ≤ bound − ν_i`, which by the predictable degree
/// property are all code words of degree at most `bound` for reduced `G`.
fn bounded_words(g: &PolyMatrix, bound: usize) -> HashSet<Vec<Poly>> {
    let f = g.field();
    let nu = g.row_degrees().unwrap();
    let q = f.order() as usize;
    let lens: Vec<usize> = nu.iter().map(|&d| if d <= bound { bound - d + 1 } else { 0 }).collect();
    let total: usize = lens.iter().sum();
    let mut out = HashSet::new();
    for idx in 0..q.pow(total as u32) {
        let digits = f.vector_from_index(idx, total);
        let mut offset = 0;
        let mut u = Vec::new();
        for &len in &lens {
            u.push(Poly::from_coeffs(digits[offset..offset + len].to_vec()));
            offset += len;
        }
        let row = PolyMatrix::from_rows(f, vec![u]).unwrap();
        out.insert(row.mul(g).row(0).to_vec());
    }
    out
}

fn same_code_by_enumeration(g: &PolyMatrix, h: &PolyMatrix) -> bool {
    let bound = g.max_degree().max(h.max_degree()).unwrap_or(0);
    let (wg, wh) = (bounded_words(g, bound), bounded_words(h, bound));
    (0..g.rows()).all(|i| wh.contains(g.row(i))) && (0..h.rows()).all(|i| wg.contains(h.row(i)))
}

fn feedback_theorem() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let profiles: [(u32, usize, &[usize]); 4] = [(2, 3, &[1, 1]), (2, 4, &[2, 1]), (3, 3, &[1, 1]), (2, 3, &[2])];
    for i in 0..100 {
        let (q, n, nu) = profiles[i % profiles.len()];
        let f = gf(q);
        let g = random_basic_reduced(&mut rng, &f, n, nu);
        let w = random_degree_preserving_unimodular(&mut rng, &f, nu, 6);
        let h = w.mul(&g);
        let lhs = canonical_realization(&g).map_err(err)?;
        let s = random_invertible(&mut rng, &f, lhs.delta());
        let rhs = canonical_realization(&h).map_err(err)?.apply_similarity(&s).map_err(err)?;
        let out = feedback_equivalent(&lhs, &rhs, false).map_err(|e| format!("planted {i}: {e}"))?;
        let wit = out.witness.ok_or(format!("planted {i}: no witness"))?;
        ensure(out.equivalent && lhs.apply_feedback(&wit).map_err(err)? == rhs, format!("planted {i} ({g})"))?;
    }
    let mut negatives = 0;
    while negatives < 100 {
        let (q, n, nu) = profiles[negatives % profiles.len()];
        let f = gf(q);
        let g = random_basic_reduced(&mut rng, &f, n, nu);
        let h = random_basic_reduced(&mut rng, &f, n, nu);
        if same_code_by_enumeration(&g, &h) {
            continue;
        }
        let lhs = canonical_realization(&g).map_err(err)?;
        let rhs = canonical_realization(&h).map_err(err)?;
        let out = feedback_equivalent(&lhs, &rhs, false).map_err(|e| format!("negative: {e}"))?;
        ensure(!out.equivalent && out.witness.is_none(), format!("{g} and {h} reported equivalent"))?;
        negatives += 1;
    }
    Ok("100 planted true, 100 distinct false".into())
}

fn cross_validation() -> Outcome {
    let spec = SampleSpec {
        field: gf(2),
        n: 4,
        indices: vec![1, 1],
        pairs: 100,
        seed: 0x5eed_0010,
        options: SearchOptions::default(),
    };
    let report = cross_validate_main_theorem(&spec).map_err(err)?;
    let bad = report.disagreements();
    ensure(bad.is_empty(), format!("{} disagreements, first {:?}", bad.len(), bad.first()))?;
    let missed = report.planted_misses();
    ensure(missed.is_empty(), format!("{} planted pairs missed", missed.len()))?;
    Ok(format!("100 pairs, {} equivalent, 0 disagreements", report.equivalent_count()))
}

/// Codeword-set oracle: the rows of each matrix must appear among the
/// words `uH`, `deg u ≤ 4`, of the other.
fn truncated_words(h: &PolyMatrix) -> HashSet<Vec<Poly>> {
    let f = h.field();
    let k = h.rows();
    let mut out = HashSet::new();
    for idx in 0..(f.order() as usize).pow(5 * k as u32) {
        let digits = f.vector_from_index(idx, 5 * k);
        let u: Vec<Poly> = digits.chunks(5).map(|c| Poly::from_coeffs(c.to_vec())).collect();
        let row = PolyMatrix::from_rows(f, vec![u]).unwrap();
        out.insert(row.mul(h).row(0).to_vec());
    }
    out
}

fn oracle_code_equal(g: &PolyMatrix, h: &PolyMatrix) -> bool {
    let (wg, wh) = (truncated_words(g), truncated_words(h));
    (0..g.rows()).all(|i| wh.contains(g.row(i))) && (0..h.rows()).all(|i| wg.contains(h.row(i)))
}

fn code_equal_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let f = gf(2);
    let mut equal = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=n.min(2));
        let g = random_full_rank(&mut rng, &f, k, n, 2);
        let h = match i % 3 {
            0 => random_unimodular(&mut rng, &f, k, 1, 3).mul(&g),
            1 => random_full_rank(&mut rng, &f, k, n, 2),
            _ => {
                let k2 = rng.gen_range(1..=n.min(2));
                random_full_rank(&mut rng, &f, k2, n, 2)
            }
        };
        let fast = code_equal(&g, &h).map_err(err)?;
        let slow = oracle_code_equal(&g, &h);
        ensure(fast == slow, format!("pair {i}: {g} vs {h}, code_equal {fast}, oracle {slow}"))?;
        equal += fast as usize;
    }
    Ok(format!("200 pairs, {equal} equal, 0 disagreements"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("golden adjacency matrix", golden_wam, 1),
        ("golden controller form", golden_controller_form, 1),
        ("semi-reduced ternary system", ternary_suite, 1),
        ("non-basic system", non_basic_witness, 1),
        ("isospectral block codes", isospectral_block_codes, 5),
        ("zero Forney index pair", zero_index_pair, 5),
        ("feedback demo", feedback_demo, 1),
        ("property suite", property_suite, 60),
        ("feedback equivalence both ways", feedback_theorem, 120),
        ("direct vs adjacency cross-validation", cross_validation, 600),
        ("code_equal vs enumeration oracle", code_equal_oracle, 60),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("took {:.2} s, limit {limit} s", elapsed.as_secs_f64()))
            }
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        let detail = detail.replace('\n', " / ");
        println!("criterion {:>2} {tag} {name} ({:.2} s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
