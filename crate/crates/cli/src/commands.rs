use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use convequiv::equivalence::{
    cross_validate_main_theorem, monomial_equivalent_direct, monomial_equivalent_wam, EquivalenceReport, ReportJson,
    SampleSpec, SearchOptions, Witness,
};
use convequiv::galois::Field;
use convequiv::polymat::{forney_indices, is_basic, PolyMatrix};
use convequiv::realization::{
    canonical_realization, canonical_reduction, controller_form, is_semi_reduced, mcmillan_degree, ConditionClause,
    StateSpace,
};
use convequiv::text::{format_elem, format_field_matrix, format_system, parse_input, InputFile};
use convequiv::wam::{compute_wam, WamJson, WeightEnum};
use convequiv::{fixtures, Error};

use crate::{Form, MethodArg};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

pub struct Failure {
    pub message: String,
    pub code: u8,
}

impl Failure {
    fn usage(message: String) -> Failure {
        Failure { message, code: 3 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Json(_) => 3,
        _ => 2,
    }
}

fn fail<'a>(path: Option<&'a Path>, hint: Option<&'a str>) -> impl Fn(Error) -> Failure + 'a {
    move |e| {
        let mut message = match (path, &e) {
            (Some(p), Error::Parse { line, col, msg }) => format!("{}:{line}:{col}: {msg}", p.display()),
            (Some(p), _) => format!("{}: {e}", p.display()),
            (None, _) => e.to_string(),
        };
        if let (Some(h), Error::CapExceeded { .. }) = (hint, &e) {
            write!(message, " ({h})").unwrap();
        }
        Failure {
            message,
            code: exit_code(&e),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap();
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

fn read_input(path: &Path) -> Result<InputFile, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_input(&src).map_err(fail(Some(path), None))
}

/// An encoder from either kind of file, with its label if any.
fn read_encoder(path: &Path) -> Result<(PolyMatrix, Option<String>), Failure> {
    match read_input(path)? {
        InputFile::Encoder(e) => Ok((e.matrix, e.label)),
        InputFile::System(s) => Ok((s.reconstruct_encoder().map_err(fail(Some(path), None))?, None)),
    }
}

#[derive(Serialize)]
struct AnalyzeJson {
    label: Option<String>,
    field: String,
    k: usize,
    n: usize,
    degree: usize,
    row_degrees: Vec<usize>,
    forney_indices: Vec<usize>,
    basic: bool,
    reduced: bool,
    semi_reduced: bool,
    mcmillan_degree: usize,
    block_code: bool,
}

pub fn analyze(path: &Path, json: bool) -> Result<Output, Failure> {
    let (g, label) = read_encoder(path)?;
    let on_err = fail(Some(path), None);
    if !g.has_full_row_rank() {
        return Err(on_err(Error::RankDeficient));
    }
    let degree = g.degree().map_err(&on_err)?;
    let report = AnalyzeJson {
        label,
        field: g.field().to_string(),
        k: g.rows(),
        n: g.cols(),
        degree,
        row_degrees: g.row_degrees().map_err(&on_err)?,
        forney_indices: forney_indices(&g).map_err(&on_err)?,
        basic: is_basic(&g),
        reduced: g.is_reduced().map_err(&on_err)?,
        semi_reduced: is_semi_reduced(&g).map_err(&on_err)?,
        mcmillan_degree: mcmillan_degree(&g).map_err(&on_err)?,
        block_code: degree == 0,
    };
    if json {
        return Ok(Output::ok(to_json(&report)));
    }
    let mut out = String::new();
    if let Some(l) = &report.label {
        writeln!(out, "label: {l}").unwrap();
    }
    writeln!(out, "field: {}", report.field).unwrap();
    writeln!(out, "k: {}", report.k).unwrap();
    writeln!(out, "n: {}", report.n).unwrap();
    writeln!(out, "degree: {}{}", report.degree, if report.block_code { " (block code)" } else { "" }).unwrap();
    writeln!(out, "row degrees: {}", join(&report.row_degrees)).unwrap();
    writeln!(out, "Forney indices: {}", join(&report.forney_indices)).unwrap();
    writeln!(out, "basic: {}", yes_no(report.basic)).unwrap();
    writeln!(out, "reduced: {}", yes_no(report.reduced)).unwrap();
    writeln!(out, "semi-reduced: {}", yes_no(report.semi_reduced)).unwrap();
    writeln!(out, "McMillan degree: {}", report.mcmillan_degree).unwrap();
    Ok(Output::ok(out))
}

#[derive(Serialize)]
struct RealizeJson {
    form: &'static str,
    delta: usize,
    controllable: bool,
    observable: bool,
    condition: bool,
    failed_clauses: Vec<ConditionClause>,
    system: String,
}

pub fn realize(path: &Path, form: Form, json: bool) -> Result<Output, Failure> {
    let on_err = fail(Some(path), None);
    let sys: StateSpace = match (read_input(path)?, form) {
        (InputFile::Encoder(e), Form::Controller) => controller_form(&e.matrix).map_err(&on_err)?,
        (InputFile::Encoder(e), Form::Canonical) => canonical_realization(&e.matrix).map_err(&on_err)?,
        (InputFile::System(s), Form::Controller) => {
            controller_form(&s.reconstruct_encoder().map_err(&on_err)?).map_err(&on_err)?
        }
        (InputFile::System(s), Form::Canonical) => canonical_reduction(&s).0,
    };
    let cond = sys.check_condition();
    let report = RealizeJson {
        form: match form {
            Form::Controller => "controller",
            Form::Canonical => "canonical",
        },
        delta: sys.delta(),
        controllable: sys.is_controllable(),
        observable: sys.is_observable(),
        condition: cond.holds(),
        failed_clauses: cond.failed_clauses(),
        system: format_system(&sys),
    };
    if json {
        return Ok(Output::ok(to_json(&report)));
    }
    let mut out = report.system.clone();
    writeln!(out, "# controllable: {}", yes_no(report.controllable)).unwrap();
    writeln!(out, "# observable: {}", yes_no(report.observable)).unwrap();
    let clauses: Vec<String> = report.failed_clauses.iter().map(|c| c.to_string()).collect();
    if clauses.is_empty() {
        writeln!(out, "# rank condition: holds").unwrap();
    } else {
        writeln!(out, "# rank condition: fails ({})", clauses.join(", ")).unwrap();
    }
    Ok(Output::ok(out))
}

#[derive(Serialize)]
struct Truncated {
    length: usize,
    #[serde(rename = "enum")]
    enumerator: WeightEnum,
}

#[derive(Serialize)]
struct WamOutput {
    #[serde(flatten)]
    wam: WamJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncated: Option<Truncated>,
}

pub fn wam(path: &Path, json: bool, truncate: Option<usize>, max_states: usize) -> Result<Output, Failure> {
    let on_err = fail(Some(path), Some("raise the limit with --max-states"));
    let sys = match read_input(path)? {
        InputFile::Encoder(e) => controller_form(&e.matrix).map_err(&on_err)?,
        InputFile::System(s) => s,
    };
    let wam = compute_wam(&sys, max_states).map_err(&on_err)?;
    let truncated = truncate.map(|n| Truncated {
        length: n,
        enumerator: wam.truncated_enumerator(n),
    });
    if json {
        return Ok(Output::ok(to_json(&WamOutput {
            wam: wam.to_json_value(),
            truncated,
        })));
    }
    let mut out = wam.render_table();
    if let Some(t) = truncated {
        writeln!(out, "paths of length {} from state 0 to state 0: {}", t.length, t.enumerator).unwrap();
    }
    Ok(Output::ok(out))
}

/// Outcome of one method: a report or a refusal.
enum Verdict {
    Answered(EquivalenceReport, f64),
    Refused(Error),
}

fn run_method(
    method: MethodArg,
    g: &PolyMatrix,
    h: &PolyMatrix,
    opts: &SearchOptions,
) -> Result<Verdict, Failure> {
    let start = Instant::now();
    let r = match method {
        MethodArg::Direct => monomial_equivalent_direct(g, h, opts),
        _ => monomial_equivalent_wam(g, h, opts),
    };
    let ms = start.elapsed().as_secs_f64() * 1000.0;
    match r {
        Ok(report) => Ok(Verdict::Answered(report, ms)),
        Err(e @ (Error::Internal(_) | Error::FieldMismatch(..) | Error::Shape(_))) => Err(fail(None, None)(e)),
        Err(e) => Ok(Verdict::Refused(e)),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum MethodJson {
    Answered(ReportJson),
    Refused { refused: String },
}

#[derive(Serialize)]
struct EquivJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    direct: Option<MethodJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wam: Option<MethodJson>,
    /// Present with `--method both`; null when a method refused.
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<Option<bool>>,
}

fn describe_witness(w: &Witness) -> String {
    match w {
        Witness::Monomial(t) => {
            let f: &Field = t.phi().field();
            let scales: Vec<String> = t.scales().iter().map(|&e| format_elem(f, e)).collect();
            let perm: Vec<String> = t.perm().iter().map(usize::to_string).collect();
            format!(
                "automorphism {}, column j takes column perm[j] = [{}] scaled by [{}]",
                t.phi(),
                perm.join(", "),
                scales.join(", ")
            )
        }
        Witness::Relabel(r) => {
            format!("automorphism {}, state map T = {}", r.phi, format_field_matrix(&r.t).replace('\n', " / "))
        }
    }
}

fn render_verdict(out: &mut String, name: &str, v: &Verdict, timings: bool) {
    match v {
        Verdict::Answered(r, ms) => {
            let verdict = if r.verdict { "equivalent" } else { "NOT equivalent" };
            writeln!(out, "{name}: {verdict}").unwrap();
            writeln!(out, "  search size: {}", r.search_size).unwrap();
            writeln!(out, "  candidates checked: {}", r.candidates_checked).unwrap();
            if let Some(w) = &r.witness {
                writeln!(out, "  witness: {}", describe_witness(w)).unwrap();
            }
            if timings {
                writeln!(out, "  time: {ms:.3} ms").unwrap();
            }
        }
        Verdict::Refused(e) => {
            writeln!(out, "{name}: refused").unwrap();
            writeln!(out, "  reason: {e}").unwrap();
        }
    }
}

fn method_json(v: &Verdict, timings: bool) -> MethodJson {
    match v {
        Verdict::Answered(r, ms) => {
            let mut j = r.to_json();
            if timings {
                j.timings_ms = Some(*ms);
            }
            MethodJson::Answered(j)
        }
        Verdict::Refused(e) => MethodJson::Refused { refused: e.to_string() },
    }
}

pub fn equiv(
    lhs: &Path,
    rhs: &Path,
    method: MethodArg,
    opts: &SearchOptions,
    json: bool,
    timings: bool,
) -> Result<Output, Failure> {
    let (g, _) = read_encoder(lhs)?;
    let (h, _) = read_encoder(rhs)?;
    let methods: &[(MethodArg, &str)] = match method {
        MethodArg::Direct => &[(MethodArg::Direct, "direct")],
        MethodArg::Wam => &[(MethodArg::Wam, "wam")],
        MethodArg::Both => &[(MethodArg::Direct, "direct"), (MethodArg::Wam, "wam")],
    };
    let verdicts: Vec<(&str, Verdict)> = methods
        .iter()
        .map(|&(m, name)| run_method(m, &g, &h, opts).map(|v| (name, v)))
        .collect::<Result<_, _>>()?;
    let answered: Vec<bool> = verdicts
        .iter()
        .filter_map(|(_, v)| match v {
            Verdict::Answered(r, _) => Some(r.verdict),
            Verdict::Refused(_) => None,
        })
        .collect();
    let agree = (method == MethodArg::Both).then(|| (answered.len() == 2).then(|| answered[0] == answered[1]));
    let code = if answered.is_empty() {
        2
    } else if answered.iter().all(|&b| b) && agree != Some(Some(false)) {
        0
    } else {
        1
    };
    let text = if json {
        let mut j = EquivJson {
            direct: None,
            wam: None,
            agree,
        };
        for (name, v) in &verdicts {
            let slot = if *name == "direct" { &mut j.direct } else { &mut j.wam };
            *slot = Some(method_json(v, timings));
        }
        to_json(&j)
    } else {
        let mut out = String::new();
        for (name, v) in &verdicts {
            render_verdict(&mut out, name, v, timings);
        }
        match agree {
            Some(Some(true)) => writeln!(out, "methods agree").unwrap(),
            Some(Some(false)) => writeln!(out, "methods DISAGREE").unwrap(),
            Some(None) => writeln!(out, "agreement: not applicable, a method refused").unwrap(),
            None => {}
        }
        out
    };
    Ok(Output { text, code })
}

#[derive(Serialize)]
struct CheckJson {
    name: String,
    passed: bool,
    detail: String,
}

pub fn selftest(seed: u64, pairs: usize, json: bool) -> Result<Output, Failure> {
    let mut checks: Vec<CheckJson> = fixtures::run_selftest()
        .into_iter()
        .map(|c| CheckJson {
            name: c.name.to_string(),
            passed: c.passed,
            detail: c.detail.replace('\n', " / "),
        })
        .collect();
    let spec = SampleSpec {
        field: Field::new(2, 1).unwrap(),
        n: 4,
        indices: vec![1, 1],
        pairs,
        seed,
        options: SearchOptions::default(),
    };
    checks.push(match cross_validate_main_theorem(&spec) {
        Ok(r) => CheckJson {
            name: "cross-validation".into(),
            passed: r.disagreements().is_empty() && r.planted_misses().is_empty(),
            detail: format!(
                "seed {seed}, {pairs} pairs, {} equivalent, {} disagreements",
                r.equivalent_count(),
                r.disagreements().len()
            ),
        },
        Err(e) => CheckJson {
            name: "cross-validation".into(),
            passed: false,
            detail: format!("error: {e}"),
        },
    });
    let code = if checks.iter().all(|c| c.passed) { 0 } else { 1 };
    let text = if json {
        to_json(&checks)
    } else {
        let mut out = String::new();
        for c in &checks {
            writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
        }
        out
    };
    Ok(Output { text, code })
}
