//! Exhaustive small-instance sweeps: every shape criterion is compared with
//! the homological invariants on all posets and ladders up to a size bound.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{
    classify_checked, classify_with, reduce, reduced_shape, Classification, ClassificationKind, ShapeWitness,
};
use crate::error::{Error, Result};
use crate::invariants::{HVector, Hibi, OracleVerdict, OrderReversingMap};
use crate::ladder::{build_ladder, Cell, Ladder};
use crate::lattice::{join_irreducibles, poset_ideal_lattice};
use crate::poset::Poset;

pub const MAX_POSET_SIZE: usize = 8;
pub const MAX_LADDER_SIDE: usize = 6;

pub mod checks {
    pub const CLASSIFICATION: &str = "classification_vs_oracle";
    pub const GENERATOR_RANGE: &str = "generator_degree_range";
    pub const GORENSTEIN_PURE: &str = "gorenstein_iff_pure";
    pub const SYMMETRY: &str = "generator_degree_symmetry";
    pub const WITNESS_BOUND: &str = "witness_sequence_bound";
    pub const COKERNEL_BOUND: &str = "cokernel_generator_bound";
    pub const H_VECTOR: &str = "h_vector";
    pub const BIRKHOFF: &str = "birkhoff_round_trip";
    pub const POSET: &str = "poset_invariants";
    pub const SHAPE_WITNESS: &str = "shape_witness_valid";
    pub const REDUCED_SHAPE: &str = "reduced_shape";
    pub const LADDER_CRITERION: &str = "ladder_criterion";
    pub const LADDER_CORRESPONDENCE: &str = "ladder_correspondence";
    pub const LADDER_ORACLE: &str = "ladder_oracle";
    pub const LADDER_TRANSPOSE: &str = "ladder_transpose";
    pub const INTERNAL: &str = "internal_error";
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub instance: String,
    pub detail: String,
}

impl Counterexample {
    fn new(check: &str, instance: &str, detail: impl Into<String>) -> Self {
        Self { check: check.to_string(), instance: instance.to_string(), detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub max_poset_size: usize,
    pub max_ladder_m: usize,
    pub max_ladder_n: usize,
    pub posets_checked: usize,
    pub ladders_checked: usize,
    pub class_counts: BTreeMap<String, usize>,
    pub ladder_counts: BTreeMap<String, usize>,
    pub counterexamples: Vec<Counterexample>,
    pub timings_ms: BTreeMap<String, u64>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn without_timings(&self) -> Self {
        Self { timings_ms: BTreeMap::new(), ..self.clone() }
    }
}

/// Compact description such as `x0<p1, x0<p2 | x0 p1 p2`.
pub fn describe(p: &Poset) -> String {
    let covers: Vec<String> = p.cover_pairs().iter().map(|&(a, b)| format!("{}<{}", p.label(a), p.label(b))).collect();
    format!("{} | {}", covers.join(", "), p.labels().join(" "))
}

fn describe_ladder(l: &Ladder) -> String {
    format!("{}x{} upper={:?} lower={:?}", l.m(), l.n(), l.upper_corners(), l.lower_corners())
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// One representative per isomorphism class of posets with a unique minimum
/// and exactly `size` elements.
pub fn posets_of_size(size: usize) -> Result<Vec<Poset>> {
    Ok(gen_layers(size)?.pop().unwrap_or_default())
}

/// Representatives of all unique-minimum posets with at most `max_size`
/// elements, smallest first.
pub fn gen_posets(max_size: usize) -> Result<Vec<Poset>> {
    Ok(gen_layers(max_size)?.into_iter().flatten().collect())
}

fn gen_layers(max_size: usize) -> Result<Vec<Vec<Poset>>> {
    if !(1..=MAX_POSET_SIZE).contains(&max_size) {
        return Err(Error::SizeTooLarge(format!("max_size={max_size} (allowed 1..={MAX_POSET_SIZE})")));
    }
    let root = Poset::new(["x0"], Vec::<(&str, &str)>::new())?;
    let mut layers = vec![vec![root]];
    for k in 1..max_size {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        // every poset arises by adding a maximal element above a non-empty ideal
        for q in layers.last().unwrap() {
            for ideal in q.ideals().into_iter().filter(|&d| d != 0) {
                let mut labels = q.labels().to_vec();
                labels.push(format!("p{k}"));
                let mut pairs = q.cover_pairs();
                pairs.extend(crate::poset::mask_elements(ideal).map(|x| (x, k)));
                let p = Poset::from_pairs(labels, &pairs)?;
                if seen.insert(p.canonical_form()) {
                    next.push(p);
                }
            }
        }
        layers.push(next);
    }
    Ok(layers)
}

/// Corner lists with rows strictly increasing and columns strictly decreasing.
fn corner_sets(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>) -> Vec<Vec<Cell>> {
    fn rec(cells: &[Cell], start: usize, cur: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
        out.push(cur.clone());
        for i in start..cells.len() {
            let (u, v) = cells[i];
            if let Some(&(pu, pv)) = cur.last() {
                if !(u > pu && v < pv) {
                    continue;
                }
            }
            cur.push((u, v));
            rec(cells, i + 1, cur, out);
            cur.pop();
        }
    }
    let cells: Vec<Cell> = rows.flat_map(|u| cols.clone().map(move |v| (u, v))).collect();
    let mut out = Vec::new();
    rec(&cells, 0, &mut Vec::new(), &mut out);
    out
}

/// All valid corner-encoded ladders with `2 ≤ m ≤ max_m`, `m ≤ n ≤ max_n`.
pub fn gen_ladders(max_m: usize, max_n: usize) -> Result<Vec<Ladder>> {
    if !(2 <= max_m && max_m <= max_n && max_n <= MAX_LADDER_SIDE) {
        return Err(Error::SizeTooLarge(format!(
            "ladder bound {max_m}x{max_n} (need 2 <= m <= n <= {MAX_LADDER_SIDE})"
        )));
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for m in 2..=max_m {
        for n in m..=max_n {
            let uppers = corner_sets(1..=m - 1, 1..=n - 1);
            let lowers = corner_sets(2..=m, 2..=n);
            for up in &uppers {
                for lo in &lowers {
                    if let Ok(l) = build_ladder(m, n, up, lo) {
                        if seen.insert((m, n, l.cells().clone())) {
                            out.push(l);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Per-poset checks
// ---------------------------------------------------------------------------

/// Everything the checks need for one poset, computed once.
pub struct PosetAnalysis {
    pub poset: Poset,
    pub name: String,
    pub hibi: Hibi,
    pub h: HVector,
    pub r: usize,
    pub r_max: usize,
    /// Minimal generators enumerated up to degree `d`, independent of `r_max`.
    pub generators: Vec<OrderReversingMap>,
    pub verdict: OracleVerdict,
    pub class: Classification,
}

impl PosetAnalysis {
    pub fn new(p: &Poset) -> Result<Self> {
        let hibi = Hibi::new(p)?;
        let h = hibi.h_vector()?;
        // every minimal generator of K_R has degree at most r + s = d
        let generators = hibi.minimal_generators_up_to(hibi.d() as u32);
        let verdict = Hibi::verdict_from(generators.len(), &h);
        let class = classify_with(&hibi)?;
        Ok(Self {
            poset: p.clone(),
            name: describe(p),
            r: hibi.r(),
            r_max: hibi.r_max(),
            hibi,
            h,
            generators,
            verdict,
            class,
        })
    }

    pub fn mu_k(&self) -> usize {
        self.generators.len()
    }

    /// `g_i = #{minimal ν : ν(x0) = r + i}`.
    pub fn degree_counts(&self) -> Vec<usize> {
        let top = self.generators.iter().map(|g| g.degree() as usize).max().unwrap_or(self.r);
        let mut g = vec![0; top - self.r + 1];
        for nu in &self.generators {
            g[nu.degree() as usize - self.r] += 1;
        }
        g
    }

    pub fn expected_kind(&self) -> ClassificationKind {
        if self.mu_k() == 1 {
            ClassificationKind::Gorenstein
        } else if !self.verdict.almost_gorenstein {
            ClassificationKind::NotAlmostGorenstein
        } else if self.r_max == self.r {
            ClassificationKind::LevelAlmostGorensteinNonGorenstein
        } else {
            ClassificationKind::NonLevelAlmostGorenstein
        }
    }

    fn fail(&self, check: &str, detail: impl Into<String>) -> Counterexample {
        Counterexample::new(check, &self.name, detail)
    }
}

pub fn check_classification(a: &PosetAnalysis) -> Vec<Counterexample> {
    let expected = a.expected_kind();
    let level = a.r_max == a.r;
    if a.class.kind != expected || a.class.level != level {
        vec![a.fail(
            checks::CLASSIFICATION,
            format!(
                "shape {} level={} vs oracle {} level={} (mu_K={}, h={:?})",
                a.class.kind.name(),
                a.class.level,
                expected.name(),
                level,
                a.mu_k(),
                a.h.coefficients
            ),
        )]
    } else {
        vec![]
    }
}

pub fn check_generator_range(a: &PosetAnalysis) -> Vec<Counterexample> {
    let degrees: std::collections::BTreeSet<usize> = a.generators.iter().map(|g| g.degree() as usize).collect();
    let expected: std::collections::BTreeSet<usize> = (a.r..=a.r_max).collect();
    if degrees != expected {
        vec![a.fail(checks::GENERATOR_RANGE, format!("degrees {degrees:?}, expected {}..={}", a.r, a.r_max))]
    } else {
        vec![]
    }
}

pub fn check_gorenstein_purity(a: &PosetAnalysis) -> Vec<Counterexample> {
    let pure = a.poset.is_pure().unwrap_or(false);
    if pure != (a.mu_k() == 1) {
        vec![a.fail(checks::GORENSTEIN_PURE, format!("pure={pure}, mu_K={}", a.mu_k()))]
    } else {
        vec![]
    }
}

pub fn check_symmetry(a: &PosetAnalysis) -> Vec<Counterexample> {
    let s = a.h.s;
    if !a.verdict.almost_gorenstein || s < 2 {
        return vec![];
    }
    let g = a.degree_counts();
    let at = |i: usize| g.get(i).copied().unwrap_or(0);
    let inner_ok = (1..=s - 2).all(|i| at(i) == at(s - 1 - i));
    let outer_ok = at(s - 1) + 1 == at(0);
    if inner_ok && outer_ok {
        vec![]
    } else {
        vec![a.fail(checks::SYMMETRY, format!("s={s}, generator degree counts {g:?}"))]
    }
}

pub fn check_witness_bound(a: &PosetAnalysis) -> Vec<Counterexample> {
    let mut out = Vec::new();
    for nu in &a.generators {
        match a.hibi.witness_sequence(nu) {
            Ok(seq) => {
                let r_seq = a.hibi.r_of_sequence(&seq).unwrap_or(i64::MIN);
                if i64::from(nu.degree()) > r_seq {
                    out.push(a.fail(
                        checks::WITNESS_BOUND,
                        format!(
                            "nu={:?} has degree {} > r{} = {r_seq}",
                            nu.values(),
                            nu.degree(),
                            seq.display(a.hibi.plus())
                        ),
                    ));
                }
            }
            Err(e) => out.push(a.fail(checks::WITNESS_BOUND, format!("nu={:?}: {e}", nu.values()))),
        }
    }
    let top = a.generators.iter().map(|g| g.degree() as usize).max();
    if top != Some(a.r_max) {
        out.push(a.fail(checks::WITNESS_BOUND, format!("max generator degree {top:?} != r_max {}", a.r_max)));
    }
    out
}

pub fn check_cokernel_bound(a: &PosetAnalysis) -> Vec<Counterexample> {
    if a.mu_k() == 1 || a.h.s == 0 {
        return vec![];
    }
    let c = a.hibi_cokernel();
    let g = a.degree_counts();
    let mut out = Vec::new();
    for (j, &count) in g.iter().enumerate() {
        let dim_c = count - usize::from(j == 0);
        let bound = c.get(j).copied().unwrap_or(0);
        if dim_c as i64 > bound {
            out.push(a.fail(checks::COKERNEL_BOUND, format!("dim[C/mC]_{j} = {dim_c} > c_{j} = {bound}")));
        }
    }
    out
}

impl PosetAnalysis {
    fn hibi_cokernel(&self) -> Vec<i64> {
        Hibi::cokernel_from(&self.h.coefficients)
    }
}

pub fn check_h_vector(a: &PosetAnalysis) -> Vec<Counterexample> {
    let h = &a.h.coefficients;
    let mut problems = Vec::new();
    if h.first() != Some(&1) {
        problems.push("h_0 != 1".to_string());
    }
    if h.iter().any(|&v| v < 0) {
        problems.push("negative coefficient".to_string());
    }
    if a.h.s + a.r != a.h.d {
        problems.push(format!("s={} but d-r={}", a.h.s, a.h.d as i64 - a.r as i64));
    }
    if a.h.multiplicity() < a.mu_k() as i64 {
        problems.push(format!("e(R)={} < mu_K={}", a.h.multiplicity(), a.mu_k()));
    }
    let p = &a.poset;
    if (0..p.len()).all(|x| (0..p.len()).all(|y| p.comparable(x, y))) {
        let d = p.len();
        for n in 0..6 {
            let closed: u128 = (1..d).fold(1u128, |acc, k| acc * (n + k) as u128 / k as u128);
            if a.hibi.hilbert_function(n) != closed {
                problems.push(format!("chain Hilbert function at {n}"));
            }
        }
    }
    problems.into_iter().map(|d| a.fail(checks::H_VECTOR, format!("{d}; h={h:?}"))).collect()
}

pub fn check_birkhoff(a: &PosetAnalysis) -> Vec<Counterexample> {
    if a.poset.len() > 7 {
        return vec![];
    }
    let round = poset_ideal_lattice(&a.poset).and_then(|h| join_irreducibles(&h));
    match round {
        Ok(q) if q.canonical_form() == a.poset.canonical_form() => vec![],
        Ok(q) => vec![a.fail(checks::BIRKHOFF, format!("round trip gave {}", describe(&q)))],
        Err(e) => vec![a.fail(checks::BIRKHOFF, e.to_string())],
    }
}

pub fn check_poset_invariants(a: &PosetAnalysis) -> Vec<Counterexample> {
    let mut out = Vec::new();
    let plus = a.hibi.plus();
    let n = plus.len();
    for x in 0..n {
        for y in 0..n {
            for w in 0..n {
                if let (Some(xy), Some(yw), Some(xw)) =
                    (plus.interval_rank(x, y), plus.interval_rank(y, w), plus.interval_rank(x, w))
                {
                    if xy + yw > xw {
                        out.push(a.fail(checks::POSET, format!("rank triangle fails at {x},{y},{w}")));
                    }
                }
            }
        }
    }
    if a.poset.is_pure().ok() != plus.is_pure().ok() {
        out.push(a.fail(checks::POSET, "purity of P and P+ differ"));
    }
    let reversed: Vec<usize> = (0..a.poset.len()).rev().collect();
    if a.poset.induced(&reversed).canonical_form() != a.poset.canonical_form() {
        out.push(a.fail(checks::POSET, "canonical form depends on element order"));
    }
    out
}

pub fn check_shape_witness(a: &PosetAnalysis) -> Vec<Counterexample> {
    match &a.class.witness {
        Some(w) if !w.validate(&a.poset) => vec![a.fail(checks::SHAPE_WITNESS, format!("{w:?}"))],
        _ => vec![],
    }
}

/// The reduced poset has the level shape, the non-level shape or neither,
/// matching the classification; for the non-level shape it is exactly the
/// `z ∪ z'` part of the witness.
pub fn check_reduced_shape(a: &PosetAnalysis) -> Vec<Counterexample> {
    let shape = reduced_shape(&reduce(&a.poset));
    let ok = match (a.class.kind, &shape, &a.class.witness) {
        (ClassificationKind::LevelAlmostGorensteinNonGorenstein, Some(s), _) => s.is_level_shape(),
        (ClassificationKind::NonLevelAlmostGorenstein, Some(s), Some(ShapeWitness::NonLevel(w))) => {
            !s.is_level_shape() && s.elements() == w.z.iter().chain(&w.z_prime).cloned().collect()
        }
        (ClassificationKind::Gorenstein | ClassificationKind::NotAlmostGorenstein, None, _) => true,
        _ => false,
    };
    if ok {
        vec![]
    } else {
        vec![a.fail(checks::REDUCED_SHAPE, format!("class {} but reduced shape {shape:?}", a.class.kind.name()))]
    }
}

/// All per-poset checks.
pub fn check_poset(p: &Poset) -> (Option<ClassificationKind>, Vec<Counterexample>) {
    let a = match PosetAnalysis::new(p) {
        Ok(a) => a,
        Err(e) => return (None, vec![Counterexample::new(checks::INTERNAL, &describe(p), e.to_string())]),
    };
    let mut out = Vec::new();
    out.extend(check_classification(&a));
    out.extend(check_generator_range(&a));
    out.extend(check_gorenstein_purity(&a));
    out.extend(check_symmetry(&a));
    out.extend(check_witness_bound(&a));
    out.extend(check_cokernel_bound(&a));
    out.extend(check_h_vector(&a));
    out.extend(check_birkhoff(&a));
    out.extend(check_poset_invariants(&a));
    out.extend(check_shape_witness(&a));
    out.extend(check_reduced_shape(&a));
    (Some(a.class.kind), out)
}

/// Ladder checks; returns the matched case and any counterexamples.
pub fn check_ladder(l: &Ladder) -> (Option<u8>, Vec<Counterexample>) {
    let name = describe_ladder(l);
    let lc = l.classify();
    let mut out = Vec::new();
    let p = match l.to_poset() {
        Ok(p) => p,
        Err(e) => return (lc.case, vec![Counterexample::new(checks::LADDER_CORRESPONDENCE, &name, e.to_string())]),
    };
    match classify_checked(&p) {
        Ok((class, _)) => {
            if class.kind.is_proper_almost_gorenstein() != lc.flag {
                out.push(Counterexample::new(
                    checks::LADDER_CRITERION,
                    &name,
                    format!("ladder flag {} but poset classifies as {}", lc.flag, class.kind.name()),
                ));
            }
        }
        Err(e) => out.push(Counterexample::new(checks::LADDER_ORACLE, &name, e.to_string())),
    }
    if let Some(t) = l.transpose() {
        if t.classify() != lc {
            out.push(Counterexample::new(checks::LADDER_TRANSPOSE, &name, format!("{lc:?} vs {:?}", t.classify())));
        }
    } else if l.m() == l.n() {
        out.push(Counterexample::new(checks::LADDER_TRANSPOSE, &name, "transpose is not a valid ladder"));
    }
    (lc.case, out)
}

pub fn sweep(max_poset_size: usize, max_ladder_m: usize, max_ladder_n: usize) -> Result<SweepReport> {
    let mut timings = BTreeMap::new();

    let t = Instant::now();
    let posets = gen_posets(max_poset_size)?;
    let ladders = gen_ladders(max_ladder_m, max_ladder_n)?;
    timings.insert("generate".to_string(), t.elapsed().as_millis() as u64);

    let t = Instant::now();
    let poset_results: Vec<_> = posets.par_iter().map(check_poset).collect();
    timings.insert("posets".to_string(), t.elapsed().as_millis() as u64);

    let t = Instant::now();
    let ladder_results: Vec<_> = ladders.par_iter().map(check_ladder).collect();
    timings.insert("ladders".to_string(), t.elapsed().as_millis() as u64);

    let mut class_counts: BTreeMap<String, usize> =
        ClassificationKind::ALL.iter().map(|k| (k.name().to_string(), 0)).collect();
    let mut ladder_counts: BTreeMap<String, usize> =
        ["case1", "case2", "case3", "none"].iter().map(|k| (k.to_string(), 0)).collect();
    let mut counterexamples = Vec::new();
    for (kind, ces) in poset_results {
        if let Some(k) = kind {
            *class_counts.get_mut(k.name()).unwrap() += 1;
        }
        counterexamples.extend(ces);
    }
    for (case, ces) in ladder_results {
        let key = case.map_or("none".to_string(), |c| format!("case{c}"));
        *ladder_counts.get_mut(&key).unwrap() += 1;
        counterexamples.extend(ces);
    }
    counterexamples.sort();

    Ok(SweepReport {
        max_poset_size,
        max_ladder_m,
        max_ladder_n,
        posets_checked: posets.len(),
        ladders_checked: ladders.len(),
        class_counts,
        ladder_counts,
        counterexamples,
        timings_ms: timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn poset_counts_by_size() {
        // unique-minimum posets on k elements = posets on k - 1 elements
        let counts: Vec<usize> = (1..=6).map(|k| posets_of_size(k).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        assert_eq!(gen_posets(1).unwrap().len(), 1);
        assert_eq!(gen_posets(3).unwrap().len(), 4);
    }

    #[test]
    fn size_three_by_hand() {
        // chain x0<a<b and the V shape x0<a, x0<b
        let mine: HashSet<String> = posets_of_size(3).unwrap().iter().map(Poset::canonical_form).collect();
        let hand: HashSet<String> =
            [fixtures::chain(3), fixtures::diamond()].iter().map(Poset::canonical_form).collect();
        assert_eq!(mine, hand);
    }

    #[test]
    fn gen_posets_contains_poset_a() {
        let forms: HashSet<String> = gen_posets(4).unwrap().iter().map(Poset::canonical_form).collect();
        assert!(forms.contains(&fixtures::poset_a().canonical_form()));
    }

    #[test]
    fn generator_soundness() {
        for p in gen_posets(5).unwrap() {
            assert!(p.unique_minimum().is_ok());
        }
        for l in gen_ladders(3, 4).unwrap() {
            assert!(build_ladder(l.m(), l.n(), l.upper_corners(), l.lower_corners()).is_ok());
        }
    }

    #[test]
    fn size_bounds() {
        assert!(matches!(gen_posets(0), Err(Error::SizeTooLarge(_))));
        assert!(matches!(gen_posets(9), Err(Error::SizeTooLarge(_))));
        assert!(matches!(gen_ladders(3, 2), Err(Error::SizeTooLarge(_))));
        assert!(matches!(gen_ladders(2, 7), Err(Error::SizeTooLarge(_))));
    }

    #[test]
    fn ladder_generation() {
        assert_eq!(gen_ladders(2, 2).unwrap().len(), 1);
        let l23 = gen_ladders(2, 3).unwrap();
        assert!(l23.iter().any(|l| l.m() == 2 && l.n() == 3 && l.is_full()));
        let l44 = gen_ladders(4, 4).unwrap();
        let has = |u: &[Cell], lo: &[Cell]| {
            l44.iter().any(|l| l.m() == 4 && l.upper_corners() == u && l.lower_corners() == lo)
        };
        assert!(has(&[(3, 3)], &[]));
        assert!(has(&[(3, 3)], &[(2, 2)]));
    }

    #[test]
    fn trivial_sweep() {
        let r = sweep(1, 2, 2).unwrap();
        assert_eq!((r.posets_checked, r.ladders_checked), (1, 1));
        assert!(r.passed());
    }

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let a = sweep(5, 2, 3).unwrap();
        assert!(a.passed(), "{:#?}", a.counterexamples);
        let b = sweep(5, 2, 3).unwrap();
        assert_eq!(a.without_timings(), b.without_timings());
    }
}
