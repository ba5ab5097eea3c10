//! Shape criteria for the almost Gorenstein property of a Hibi ring.
//!
//! The level case is a chain with one extra element hanging off it; the
//! non-level case is two equally long chains `z` and `z'` between a bottom
//! chain `w` and a top chain `w'`, glued by `z'_1 ◁ z_m` plus either the
//! symmetric cover `z_1 ◁ z'_m` or a set of staircase covers `z_i ◁ z'_{i+1}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{Hibi, HibiReport};
use crate::poset::{AugmentedPoset, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassificationKind {
    Gorenstein,
    LevelAlmostGorensteinNonGorenstein,
    NonLevelAlmostGorenstein,
    NotAlmostGorenstein,
}

impl ClassificationKind {
    pub const ALL: [ClassificationKind; 4] = [
        ClassificationKind::Gorenstein,
        ClassificationKind::LevelAlmostGorensteinNonGorenstein,
        ClassificationKind::NonLevelAlmostGorenstein,
        ClassificationKind::NotAlmostGorenstein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassificationKind::Gorenstein => "Gorenstein",
            ClassificationKind::LevelAlmostGorensteinNonGorenstein => "LevelAlmostGorensteinNonGorenstein",
            ClassificationKind::NonLevelAlmostGorenstein => "NonLevelAlmostGorenstein",
            ClassificationKind::NotAlmostGorenstein => "NotAlmostGorenstein",
        }
    }

    /// Non-Gorenstein and almost Gorenstein.
    pub fn is_proper_almost_gorenstein(self) -> bool {
        matches!(
            self,
            ClassificationKind::LevelAlmostGorensteinNonGorenstein | ClassificationKind::NonLevelAlmostGorenstein
        )
    }

    /// The class implied by the homological invariants alone.
    pub fn from_report(report: &HibiReport) -> Self {
        if report.mu_k == 1 {
            ClassificationKind::Gorenstein
        } else if !report.almost_gorenstein {
            ClassificationKind::NotAlmostGorenstein
        } else if report.level {
            ClassificationKind::LevelAlmostGorensteinNonGorenstein
        } else {
            ClassificationKind::NonLevelAlmostGorenstein
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoverVariant {
    /// Extra cover `z_1 ◁ z'_m`.
    Symmetric,
    /// Extra covers `z_i ◁ z'_{i+1}` for the listed `i` (1-based, possibly none).
    Pure { indices: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonLevelWitness {
    pub m: usize,
    pub n: usize,
    pub n_prime: usize,
    pub z: Vec<String>,
    pub z_prime: Vec<String>,
    pub w: Vec<String>,
    pub w_prime: Vec<String>,
    pub variant: CoverVariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ShapeWitness {
    /// `P⁺ ∖ {z}` is a chain of length `rank P⁺` and `z` sits off it.
    Level {
        z: String,
    },
    NonLevel(NonLevelWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: ClassificationKind,
    pub level: bool,
    pub witness: Option<ShapeWitness>,
}

fn augmented(p: &Poset) -> Result<(AugmentedPoset, usize)> {
    let x0 = p.unique_minimum()?;
    Ok((p.augment(), x0))
}

fn level_conditions(plus: &AugmentedPoset, x0: usize, z: usize) -> bool {
    let top = plus.top();
    let r = plus.interval_rank(x0, top).unwrap();
    let rest: Vec<usize> = (0..plus.len()).filter(|&x| x != z).collect();
    let is_chain = rest.iter().all(|&a| rest.iter().all(|&b| plus.comparable(a, b)));
    let off_chain = match (plus.interval_rank(x0, z), plus.interval_rank(z, top)) {
        (Some(lo), Some(hi)) => lo + hi < r,
        _ => false,
    };
    is_chain && rest.len() == r + 1 && off_chain
}

/// An element `z` such that `P⁺ ∖ {z}` is a chain of length `rank P⁺` and
/// `rank[x0, z] + rank[z, ∞] < rank P⁺`.
pub fn level_ag_shape(p: &Poset) -> Result<Option<ShapeWitness>> {
    let (plus, x0) = augmented(p)?;
    Ok((0..p.len())
        .find(|&z| level_conditions(&plus, x0, z))
        .map(|z| ShapeWitness::Level { z: p.label(z).to_string() }))
}

/// Index form of a non-level witness; every vector lists elements of `P⁺` bottom first.
struct Roles {
    w: Vec<usize>,
    z: Vec<usize>,
    z_prime: Vec<usize>,
    w_prime: Vec<usize>,
}

impl Roles {
    fn required_covers(&self) -> BTreeSet<(usize, usize)> {
        let mut req = BTreeSet::new();
        for ch in [&self.w, &self.z, &self.z_prime, &self.w_prime] {
            req.extend(ch.windows(2).map(|w| (w[0], w[1])));
        }
        let (wn, w0p) = (*self.w.last().unwrap(), self.w_prime[0]);
        let m = self.z.len();
        req.insert((wn, self.z[0]));
        req.insert((wn, self.z_prime[0]));
        req.insert((self.z[m - 1], w0p));
        req.insert((self.z_prime[m - 1], w0p));
        req.insert((self.z_prime[0], self.z[m - 1]));
        req
    }

    /// Checks that the roles partition `P⁺` and that the covers are exactly the
    /// required ones plus one of the allowed extra families.
    fn match_variant(&self, plus: &AugmentedPoset, x0: usize) -> Option<CoverVariant> {
        let m = self.z.len();
        if m < 3 || self.z_prime.len() != m || self.w.is_empty() || self.w_prime.is_empty() {
            return None;
        }
        if self.w[0] != x0 || *self.w_prime.last().unwrap() != plus.top() {
            return None;
        }
        let all: BTreeSet<usize> =
            self.w.iter().chain(&self.z).chain(&self.z_prime).chain(&self.w_prime).copied().collect();
        let total = self.w.len() + self.w_prime.len() + 2 * m;
        if all.len() != total || total != plus.len() {
            return None;
        }
        let actual: BTreeSet<(usize, usize)> = plus.cover_pairs().into_iter().collect();
        let required = self.required_covers();
        if !required.is_subset(&actual) {
            return None;
        }
        let extra: Vec<(usize, usize)> = actual.difference(&required).copied().collect();
        if extra == [(self.z[0], self.z_prime[m - 1])] {
            return Some(CoverVariant::Symmetric);
        }
        let mut indices = Vec::new();
        for &(a, b) in &extra {
            let i = self.z.iter().position(|&x| x == a)?;
            if i + 1 >= m || self.z_prime[i + 1] != b {
                return None;
            }
            indices.push(i + 1);
        }
        indices.sort_unstable();
        Some(CoverVariant::Pure { indices })
    }

    fn witness(&self, plus: &AugmentedPoset, variant: CoverVariant) -> NonLevelWitness {
        let names = |v: &[usize]| v.iter().map(|&x| plus.label(x).to_string()).collect::<Vec<_>>();
        NonLevelWitness {
            m: self.z.len(),
            n: self.w.len() - 1,
            n_prime: self.w_prime.len() - 1,
            z: names(&self.z),
            z_prime: names(&self.z_prime),
            w: names(&self.w),
            w_prime: names(&self.w_prime),
            variant,
        }
    }
}

/// Role assignment `w / z / z' / w'` for the non-level criterion, found by
/// trying every ordered pair of maximal chains of `P⁺` as `(w z w', w z' w')`.
pub fn non_level_ag_shape(p: &Poset) -> Result<Option<ShapeWitness>> {
    let (plus, x0) = augmented(p)?;
    let chains = plus.saturated_chains(x0, plus.top());
    for c1 in &chains {
        for c2 in &chains {
            if c1 == c2 || c1.len() != c2.len() {
                continue;
            }
            let len = c1.len();
            let prefix = c1.iter().zip(c2).take_while(|(a, b)| a == b).count();
            let suffix = c1.iter().rev().zip(c2.iter().rev()).take_while(|(a, b)| a == b).count();
            if prefix + suffix + 3 > len {
                continue;
            }
            let roles = Roles {
                w: c1[..prefix].to_vec(),
                z: c1[prefix..len - suffix].to_vec(),
                z_prime: c2[prefix..len - suffix].to_vec(),
                w_prime: c1[len - suffix..].to_vec(),
            };
            if let Some(variant) = roles.match_variant(&plus, x0) {
                return Ok(Some(ShapeWitness::NonLevel(roles.witness(&plus, variant))));
            }
        }
    }
    Ok(None)
}

impl ShapeWitness {
    /// Re-checks the witness against `p` from its labels alone.
    pub fn validate(&self, p: &Poset) -> bool {
        let Ok((plus, x0)) = augmented(p) else { return false };
        match self {
            ShapeWitness::Level { z } => {
                plus.index_of(z).is_some_and(|z| z != plus.top() && level_conditions(&plus, x0, z))
            }
            ShapeWitness::NonLevel(w) => {
                let resolve = |v: &[String]| v.iter().map(|l| plus.index_of(l)).collect::<Option<Vec<_>>>();
                let (Some(wv), Some(z), Some(zp), Some(wp)) =
                    (resolve(&w.w), resolve(&w.z), resolve(&w.z_prime), resolve(&w.w_prime))
                else {
                    return false;
                };
                let roles = Roles { w: wv, z, z_prime: zp, w_prime: wp };
                w.m == roles.z.len()
                    && w.n + 1 == roles.w.len()
                    && w.n_prime + 1 == roles.w_prime.len()
                    && roles.match_variant(&plus, x0).as_ref() == Some(&w.variant)
            }
        }
    }
}

/// Shape-based four-way classification; the level flag comes from `r_max`.
pub fn classify(p: &Poset) -> Result<Classification> {
    let hibi = Hibi::new(p)?;
    classify_with(&hibi)
}

pub fn classify_with(hibi: &Hibi) -> Result<Classification> {
    let p = hibi.poset();
    let level = hibi.is_level();
    let (kind, witness) = if hibi.is_gorenstein() {
        (ClassificationKind::Gorenstein, None)
    } else if let Some(w) = level_ag_shape(p)? {
        (ClassificationKind::LevelAlmostGorensteinNonGorenstein, Some(w))
    } else if let Some(w) = non_level_ag_shape(p)? {
        (ClassificationKind::NonLevelAlmostGorenstein, Some(w))
    } else {
        (ClassificationKind::NotAlmostGorenstein, None)
    };
    Ok(Classification { kind, level, witness })
}

/// Classification together with the invariant report, failing loudly when the
/// shape criteria and the homological oracle disagree.
pub fn classify_checked(p: &Poset) -> Result<(Classification, HibiReport)> {
    let hibi = Hibi::new(p)?;
    let class = classify_with(&hibi)?;
    let report = hibi.report()?;
    let expected = ClassificationKind::from_report(&report);
    if class.kind != expected || class.level != report.level {
        return Err(Error::OracleDisagreement(format!(
            "shape says {} (level={}), invariants say {} (level={})",
            class.kind.name(),
            class.level,
            expected.name(),
            report.level
        )));
    }
    Ok((class, report))
}

/// Induced subposet on the elements not comparable to everything.
pub fn reduce(p: &Poset) -> Poset {
    let full = p.full_mask();
    let keep: Vec<usize> = (0..p.len()).filter(|&x| p.star_mask(x) != full).collect();
    p.induced(&keep)
}

/// Shapes a reduced poset takes for non-Gorenstein almost Gorenstein rings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ReducedShape {
    /// One isolated element next to a chain of length at least 1.
    ElementAndChain { element: String, chain: Vec<String> },
    /// Two chains of equal length at least 2; the bottom of each is covered by
    /// the top of the other.
    CrossedChains { first: Vec<String>, second: Vec<String> },
    /// Two chains of equal length at least 2; the bottom of `second` is covered
    /// by the top of `first`, and `first[i-1] ◁ second[i]` for each listed `i`.
    StaircaseChains { first: Vec<String>, second: Vec<String>, steps: Vec<usize> },
}

impl ReducedShape {
    pub fn is_level_shape(&self) -> bool {
        matches!(self, ReducedShape::ElementAndChain { .. })
    }

    pub fn elements(&self) -> BTreeSet<String> {
        match self {
            ReducedShape::ElementAndChain { element, chain } => {
                chain.iter().cloned().chain(std::iter::once(element.clone())).collect()
            }
            ReducedShape::CrossedChains { first, second } | ReducedShape::StaircaseChains { first, second, .. } => {
                first.iter().chain(second).cloned().collect()
            }
        }
    }
}

fn is_chain_cover_list(q: &Poset, c: &[usize]) -> bool {
    c.windows(2).all(|w| q.is_cover(w[0], w[1]))
}

/// Recognises the reduced shapes above.
pub fn reduced_shape(q: &Poset) -> Option<ReducedShape> {
    let names = |v: &[usize]| v.iter().map(|&x| q.label(x).to_string()).collect::<Vec<_>>();
    let n = q.len();
    let covers: BTreeSet<(usize, usize)> = q.cover_pairs().into_iter().collect();

    // element plus chain
    for e in 0..n {
        if q.star_mask(e) != crate::poset::bit(e) {
            continue;
        }
        let rest: Vec<usize> = q.linear_extension().iter().copied().filter(|&x| x != e).collect();
        if rest.len() >= 2 && is_chain_cover_list(q, &rest) && covers.len() == rest.len() - 1 {
            return Some(ReducedShape::ElementAndChain { element: q.label(e).to_string(), chain: names(&rest) });
        }
    }

    // two chains
    if n < 6 || !n.is_multiple_of(2) {
        return None;
    }
    let k = n / 2;
    let mins = q.minimal_elements();
    let maxs = q.maximal_elements();
    let mut chains = Vec::new();
    for &a in &mins {
        for &b in &maxs {
            chains.extend(q.saturated_chains(a, b).into_iter().filter(|c| c.len() == k));
        }
    }
    for a in &chains {
        for b in &chains {
            if a.iter().any(|x| b.contains(x)) {
                continue;
            }
            let mut req: BTreeSet<(usize, usize)> = a.windows(2).chain(b.windows(2)).map(|w| (w[0], w[1])).collect();
            req.insert((b[0], a[k - 1]));
            if !req.is_subset(&covers) {
                continue;
            }
            let extra: Vec<(usize, usize)> = covers.difference(&req).copied().collect();
            if extra == [(a[0], b[k - 1])] {
                return Some(ReducedShape::CrossedChains { first: names(a), second: names(b) });
            }
            let steps: Option<Vec<usize>> = extra
                .iter()
                .map(|&(x, y)| {
                    let i = a.iter().position(|&t| t == x)?;
                    (i + 1 < k && b[i + 1] == y).then_some(i + 1)
                })
                .collect();
            if let Some(mut steps) = steps {
                steps.sort_unstable();
                return Some(ReducedShape::StaircaseChains { first: names(a), second: names(b), steps });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn level_shape_examples() {
        assert_eq!(level_ag_shape(&fixtures::poset_a()).unwrap(), Some(ShapeWitness::Level { z: "z".into() }));
        assert_eq!(level_ag_shape(&fixtures::chain(4)).unwrap(), None);
        assert_eq!(level_ag_shape(&fixtures::p_m(3)).unwrap(), None);
    }

    #[test]
    fn non_level_shape_examples() {
        let Some(ShapeWitness::NonLevel(w)) = non_level_ag_shape(&fixtures::p_m(3)).unwrap() else {
            panic!("P3 has a non-level witness")
        };
        assert_eq!((w.m, w.n, w.n_prime), (3, 0, 0));
        assert_eq!(w.variant, CoverVariant::Pure { indices: vec![] });
        assert_eq!(w.z, ["z1", "z2", "z3"]);
        assert_eq!(w.z_prime, ["z1'", "z2'", "z3'"]);

        let Some(ShapeWitness::NonLevel(w)) = non_level_ag_shape(&fixtures::q_m(3)).unwrap() else {
            panic!("Q3 has a non-level witness")
        };
        assert_eq!(w.m, 3);
        assert_eq!(w.variant, CoverVariant::Symmetric);

        assert_eq!(non_level_ag_shape(&fixtures::poset_a()).unwrap(), None);
    }

    #[test]
    fn staircase_indices() {
        let p = fixtures::p_m_with_steps(4, &[1, 3]);
        let Some(ShapeWitness::NonLevel(w)) = non_level_ag_shape(&p).unwrap() else { panic!() };
        assert_eq!(w.variant, CoverVariant::Pure { indices: vec![1, 3] });
        assert!(ShapeWitness::NonLevel(w).validate(&p));
    }

    #[test]
    fn padded_chains_are_found() {
        // w = x0 < w1, w' = w0' < ∞
        let p = Poset::new(
            ["x0", "w1", "z1", "z2", "z3", "y1", "y2", "y3", "top"],
            [
                ("x0", "w1"),
                ("w1", "z1"),
                ("z1", "z2"),
                ("z2", "z3"),
                ("w1", "y1"),
                ("y1", "y2"),
                ("y2", "y3"),
                ("y1", "z3"),
                ("z3", "top"),
                ("y3", "top"),
            ],
        )
        .unwrap();
        let Some(ShapeWitness::NonLevel(w)) = non_level_ag_shape(&p).unwrap() else { panic!() };
        assert_eq!((w.m, w.n, w.n_prime), (3, 1, 1));
        assert_eq!(w.w, ["x0", "w1"]);
        assert_eq!(w.w_prime, ["top", "∞"]);
    }

    #[test]
    fn witnesses_validate() {
        for p in [fixtures::poset_a(), fixtures::p_m(3), fixtures::q_m(4)] {
            let c = classify(&p).unwrap();
            assert!(c.witness.unwrap().validate(&p));
        }
        let bogus = ShapeWitness::Level { z: "c1".into() };
        assert!(!bogus.validate(&fixtures::poset_a()));
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(&fixtures::chain(4)).is_empty());
        let r = reduce(&fixtures::poset_a());
        assert_eq!(r.labels(), ["c1", "c2", "z"]);
        assert_eq!(r.cover_pairs(), vec![(0, 1)]);
        let p3 = fixtures::p_m(3);
        let r = reduce(&p3);
        assert_eq!(r.len(), p3.len() - 1);
        assert!(r.index_of("x0").is_none());
        assert!(r.minimal_elements().len() == 2);
    }

    #[test]
    fn reduced_shapes() {
        let s = reduced_shape(&reduce(&fixtures::poset_a())).unwrap();
        assert!(s.is_level_shape());
        assert!(matches!(reduced_shape(&reduce(&fixtures::q_m(3))), Some(ReducedShape::CrossedChains { .. })));
        assert!(matches!(
            reduced_shape(&reduce(&fixtures::p_m_with_steps(4, &[2]))),
            Some(ReducedShape::StaircaseChains { steps, .. }) if steps == vec![2]
        ));
        assert_eq!(reduced_shape(&reduce(&fixtures::diamond())), None);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&fixtures::diamond()).unwrap().kind, ClassificationKind::Gorenstein);
        let a = classify(&fixtures::poset_a()).unwrap();
        assert_eq!(a.kind, ClassificationKind::LevelAlmostGorensteinNonGorenstein);
        assert!(a.level);
        let q = classify(&fixtures::q_m(3)).unwrap();
        assert_eq!(q.kind, ClassificationKind::NonLevelAlmostGorenstein);
        assert!(!q.level);
    }

    #[test]
    fn checked_classification_agrees() {
        for p in [fixtures::diamond(), fixtures::poset_a(), fixtures::p_m(3), fixtures::q_m(3), fixtures::chain(5)] {
            classify_checked(&p).unwrap();
        }
    }

    #[test]
    fn requires_minimum() {
        let two = Poset::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(classify(&two), Err(Error::NoUniqueMinimum));
        assert_eq!(level_ag_shape(&two), Err(Error::NoUniqueMinimum));
    }
}
