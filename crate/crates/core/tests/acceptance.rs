//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every tolerance is exact: zero counterexamples and literal fixture values.
//! The only real-valued limit is the wall-clock budget for the exhaustive
//! classification run.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hibi_core::classify::{classify, CoverVariant, ShapeWitness};
use hibi_core::fixtures;
use hibi_core::ladder::build_ladder;
use hibi_core::verify::{self, checks, gen_ladders, gen_posets, Counterexample, PosetAnalysis};
use hibi_core::{ClassificationKind, Hibi};
use rayon::prelude::*;

const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(600);

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    ok: bool,
    summary: String,
}

fn from_counterexamples(checked: usize, what: &str, ces: &[Counterexample]) -> Outcome {
    let mut summary = format!("{checked} {what}, {} counterexamples", ces.len());
    if let Some(c) = ces.first() {
        summary += &format!(" (first: [{}] {} :: {})", c.check, c.instance, c.detail);
    }
    Outcome { ok: ces.is_empty(), summary }
}

fn analyses(max: usize) -> Vec<PosetAnalysis> {
    gen_posets(max).unwrap().par_iter().map(|p| PosetAnalysis::new(p).unwrap()).collect()
}

fn sweep_with(
    all: &[PosetAnalysis],
    max: usize,
    check: fn(&PosetAnalysis) -> Vec<Counterexample>,
) -> (usize, Vec<Counterexample>) {
    let subset: Vec<&PosetAnalysis> = all.iter().filter(|a| a.poset.len() <= max).collect();
    let ces = subset.par_iter().flat_map(|a| check(a)).collect();
    (subset.len(), ces)
}

fn exhaustive_classification() -> Outcome {
    let start = Instant::now();
    let all = analyses(7);
    let (n, ces) = sweep_with(&all, 7, verify::check_classification);
    let elapsed = start.elapsed();
    let mut out = from_counterexamples(n, "posets <= 7", &ces);
    out.ok &= n == 406 && elapsed < EXHAUSTIVE_BUDGET;
    out.summary += &format!(", {:.1}s (budget {}s)", elapsed.as_secs_f64(), EXHAUSTIVE_BUDGET.as_secs());
    out
}

fn fixture_values() -> Outcome {
    let mut failures = Vec::new();
    let mut expect = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };

    let a = Hibi::new(&fixtures::poset_a()).unwrap().report().unwrap();
    expect("POSET_A h", a.h_vector == [1, 2]);
    expect("POSET_A mu", a.mu_k == 2);
    expect("POSET_A degrees", a.generator_degrees == [3, 3]);
    let ca = classify(&fixtures::poset_a()).unwrap();
    expect("POSET_A class", ca.kind == ClassificationKind::LevelAlmostGorensteinNonGorenstein);

    let p3 = Hibi::new(&fixtures::p_m(3)).unwrap().report().unwrap();
    expect("P3 mu", p3.mu_k == 2);
    expect("P3 r_max", p3.r_max == 5 && p3.r_max == p3.d - 2);
    let cp = classify(&fixtures::p_m(3)).unwrap();
    expect("P3 class", cp.kind == ClassificationKind::NonLevelAlmostGorenstein);
    expect(
        "P3 pure variant",
        matches!(&cp.witness, Some(ShapeWitness::NonLevel(w)) if matches!(w.variant, CoverVariant::Pure { .. })),
    );

    let q3 = Hibi::new(&fixtures::q_m(3)).unwrap().report().unwrap();
    expect("Q3 mu", q3.mu_k == 3);
    expect("Q3 mu_C", q3.mu_c == Some(2));
    expect("Q3 e_C", q3.e_c == Some(2));

    Outcome {
        ok: failures.is_empty(),
        summary: if failures.is_empty() {
            "POSET_A, P3, Q3 exact".to_string()
        } else {
            format!("mismatches: {}", failures.join(", "))
        },
    }
}

fn ladder_criterion() -> Outcome {
    let ladders = gen_ladders(5, 5).unwrap();
    let ces: Vec<Counterexample> = ladders
        .par_iter()
        .flat_map(|l| verify::check_ladder(l).1)
        .filter(|c| c.check != checks::LADDER_TRANSPOSE)
        .collect();
    let mut out = from_counterexamples(ladders.len(), "ladders m <= n <= 5", &ces);
    let l23 = build_ladder(2, 3, &[], &[]).unwrap().classify();
    let l44 = build_ladder(4, 4, &[(3, 3)], &[(2, 2)]).unwrap().classify();
    let fixtures_ok = l23.flag && l23.case == Some(1) && l44.flag && l44.case == Some(2);
    out.ok &= fixtures_ok;
    out.summary += &format!(", L_2x3 case {:?}, L_4x4_UL case {:?}", l23.case, l44.case);
    out
}

fn main() -> ExitCode {
    let all = analyses(7);
    let criteria: Vec<Criterion> = vec![
        ("1 shape classification vs oracle, |P| <= 7", Box::new(exhaustive_classification)),
        (
            "2 generator degrees fill [r, r_max], |P| <= 6",
            Box::new(|| {
                let (n, ces) = sweep_with(&all, 6, verify::check_generator_range);
                from_counterexamples(n, "posets", &ces)
            }),
        ),
        (
            "3 Gorenstein iff pure, |P| <= 7",
            Box::new(|| {
                let (n, ces) = sweep_with(&all, 7, verify::check_gorenstein_purity);
                from_counterexamples(n, "posets", &ces)
            }),
        ),
        ("4 fixture values", Box::new(fixture_values)),
        ("5 ladder criterion vs converted poset, m <= n <= 5", Box::new(ladder_criterion)),
        (
            "6 generator degree symmetry, |P| <= 7",
            Box::new(|| {
                let (n, ces) = sweep_with(&all, 7, verify::check_symmetry);
                from_counterexamples(n, "posets", &ces)
            }),
        ),
        (
            "7 witness sequence bound, |P| <= 6",
            Box::new(|| {
                let (n, ces) = sweep_with(&all, 6, verify::check_witness_bound);
                from_counterexamples(n, "posets", &ces)
            }),
        ),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = run();
        println!("[{}] criterion {name}: {}", if outcome.ok { "PASS" } else { "FAIL" }, outcome.summary);
        failed += usize::from(!outcome.ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
