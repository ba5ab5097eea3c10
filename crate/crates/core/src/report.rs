//! Serializable analysis results and their plain-text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::classify::{
    classify_checked, reduce, reduced_shape, ClassificationKind, CoverVariant, ReducedShape, ShapeWitness,
};
use crate::error::Result;
use crate::invariants::HibiReport;
use crate::ladder::{Cell, Ladder};
use crate::poset::{Poset, PosetSpec};
use crate::verify::SweepReport;

/// Full result of analysing one poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub poset: PosetSpec,
    pub canonical_hash: String,
    #[serde(flatten)]
    pub invariants: HibiReport,
    pub classification: ClassificationKind,
    pub shape_witness: Option<ShapeWitness>,
    pub reduced_shape: Option<ReducedShape>,
}

impl AnalysisReport {
    /// Classifies `p` and cross-checks the answer against the homological test.
    pub fn new(p: &Poset) -> Result<Self> {
        let (class, invariants) = classify_checked(p)?;
        Ok(Self {
            poset: p.to_spec(),
            canonical_hash: p.canonical_hash(),
            invariants,
            classification: class.kind,
            shape_witness: class.witness,
            reduced_shape: reduced_shape(&reduce(p)),
        })
    }

    pub fn to_text(&self) -> String {
        let r = &self.invariants;
        let mut out = String::new();
        let _ =
            writeln!(out, "poset          {} elements, hash {}", self.poset.elements.len(), &self.canonical_hash[..16]);
        let _ = writeln!(out, "classification {}", self.classification.name());
        let _ = writeln!(out, "d={} r={} a={} s={}", r.d, r.r, r.a, r.s);
        let _ = writeln!(out, "h-vector       {}", join(&r.h_vector));
        let _ = writeln!(out, "mu(K)          {}", r.mu_k);
        let _ = writeln!(out, "degrees        {}", join(&r.generator_degrees));
        let _ = writeln!(out, "r_max          {}", r.r_max);
        let _ =
            writeln!(out, "gorenstein={} level={} almost_gorenstein={}", r.gorenstein, r.level, r.almost_gorenstein);
        if let (Some(mu_c), Some(e_c)) = (r.mu_c, r.e_c) {
            let _ = writeln!(out, "mu(C)={mu_c} e(C)={e_c}");
        }
        if let Some(w) = &self.shape_witness {
            let _ = writeln!(out, "witness        {}", witness_text(w));
        }
        out
    }
}

/// Result of classifying one ladder.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderReport {
    pub m: usize,
    pub n: usize,
    pub upper_corners: Vec<Cell>,
    pub lower_corners: Vec<Cell>,
    pub flag: bool,
    pub case: Option<u8>,
    pub analysis: AnalysisReport,
}

impl LadderReport {
    pub fn new(l: &Ladder) -> Result<Self> {
        let lc = l.classify();
        Ok(Self {
            m: l.m(),
            n: l.n(),
            upper_corners: l.upper_corners().to_vec(),
            lower_corners: l.lower_corners().to_vec(),
            flag: lc.flag,
            case: lc.case,
            analysis: AnalysisReport::new(&l.to_poset()?)?,
        })
    }

    pub fn to_text(&self) -> String {
        let case = self.case.map_or("none".to_string(), |c| c.to_string());
        format!(
            "ladder         {}x{} upper={:?} lower={:?}\nalmost-gorenstein, non-gorenstein: {} (case {case})\n{}",
            self.m,
            self.n,
            self.upper_corners,
            self.lower_corners,
            self.flag,
            self.analysis.to_text()
        )
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn witness_text(w: &ShapeWitness) -> String {
    match w {
        ShapeWitness::Level { z } => format!("level, z={z}"),
        ShapeWitness::NonLevel(w) => {
            let variant = match &w.variant {
                CoverVariant::Symmetric => "symmetric".to_string(),
                CoverVariant::Pure { indices } => format!("pure, steps [{}]", join(indices)),
            };
            format!(
                "non-level m={} n={} n'={}, z=[{}] z'=[{}], {variant}",
                w.m,
                w.n,
                w.n_prime,
                w.z.join(" "),
                w.z_prime.join(" ")
            )
        }
    }
}

pub fn sweep_text(r: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "posets  (size <= {}): {}", r.max_poset_size, r.posets_checked);
    for (k, v) in &r.class_counts {
        let _ = writeln!(out, "  {k:<36} {v}");
    }
    let _ = writeln!(out, "ladders (<= {}x{}): {}", r.max_ladder_m, r.max_ladder_n, r.ladders_checked);
    for (k, v) in &r.ladder_counts {
        let _ = writeln!(out, "  {k:<36} {v}");
    }
    let _ = writeln!(out, "counterexamples: {}", r.counterexamples.len());
    for c in &r.counterexamples {
        let _ = writeln!(out, "  [{}] {} :: {}", c.check, c.instance, c.detail);
    }
    for (phase, ms) in &r.timings_ms {
        let _ = writeln!(out, "time {phase}: {ms} ms");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ladder::build_ladder;

    #[test]
    fn json_round_trip() {
        for p in [fixtures::poset_a(), fixtures::p_m(3), fixtures::q_m(3), fixtures::chain(4)] {
            let report = AnalysisReport::new(&p).unwrap();
            let json = serde_json::to_string(&report).unwrap();
            let back: AnalysisReport = serde_json::from_str(&json).unwrap();
            assert_eq!(back, report);
        }
    }

    #[test]
    fn flat_field_names() {
        let report = AnalysisReport::new(&fixtures::q_m(3)).unwrap();
        let v = serde_json::to_value(&report).unwrap();
        assert_eq!(v["mu_K"], 3);
        assert_eq!(v["mu_C"], 2);
        assert_eq!(v["e_C"], 2);
        assert_eq!(v["classification"], "NonLevelAlmostGorenstein");
    }

    #[test]
    fn text_mentions_key_facts() {
        let t = AnalysisReport::new(&fixtures::poset_a()).unwrap().to_text();
        assert!(t.contains("LevelAlmostGorensteinNonGorenstein"));
        assert!(t.contains("h-vector       1 2"));
        assert!(t.contains("degrees        3 3"));
    }

    #[test]
    fn ladder_report() {
        let l = build_ladder(2, 3, &[], &[]).unwrap();
        let r = LadderReport::new(&l).unwrap();
        assert_eq!((r.flag, r.case), (true, Some(1)));
        assert!(r.analysis.classification.is_proper_almost_gorenstein());
        assert!(r.to_text().contains("case 1"));
    }
}
