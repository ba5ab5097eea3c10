//! Finite posets stored as a transitive reduction plus a closure in bitmask form.
//!
//! Elements are addressed by dense indices `0..len()`; labels are kept only for
//! input, output and error messages. Every query after construction is a table
//! lookup, which is all the exhaustive sweeps need for posets of a dozen or so
//! elements.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Deref;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest supported poset; closures are stored as `u64` masks.
pub const MAX_ELEMENTS: usize = 64;

/// Label used for the adjoined top element of an augmented poset.
pub const TOP_LABEL: &str = "∞";

#[inline]
pub(crate) fn bit(i: usize) -> u64 {
    1u64 << i
}

pub(crate) fn mask_elements(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `down[x]` has bit `y` set iff `y <= x`.
    down: Vec<u64>,
    /// `up[x]` has bit `y` set iff `x <= y`.
    up: Vec<u64>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
    /// Linear extension, bottom first.
    topo: Vec<usize>,
    /// Row-major `len * len`; length of a longest chain from `x` to `y`, or -1.
    longest: Vec<i32>,
}

impl Poset {
    /// Builds a poset from labels and candidate cover pairs `(a, b)` meaning `a < b`.
    ///
    /// The pairs may be redundant; only their transitive reduction is kept.
    pub fn new<L, A, B>(labels: impl IntoIterator<Item = L>, covers: impl IntoIterator<Item = (A, B)>) -> Result<Self>
    where
        L: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownLabel(s.to_string()));
        let mut pairs = Vec::new();
        for (a, b) in covers {
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_pairs(labels, &pairs)
    }

    /// Index-based constructor; `pairs` are relations `a < b`, not necessarily covers.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { size: n, max: MAX_ELEMENTS });
        }
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::UnknownLabel(format!("#{}", a.max(b))));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in pairs {
            if a == b {
                return Err(Error::CycleDetected(labels[a].clone()));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }
        // Kahn's algorithm; smallest index first keeps the extension deterministic.
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).rev().collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = ready.pop() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    ready.push(y);
                    ready.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
        }
        if topo.len() < n {
            let culprit = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(Error::CycleDetected(labels[culprit].clone()));
        }

        let mut up = vec![0u64; n];
        for &x in topo.iter().rev() {
            let mut m = bit(x);
            for &y in &succ[x] {
                m |= up[y];
            }
            up[x] = m;
        }
        let mut down = vec![0u64; n];
        for (x, &ux) in up.iter().enumerate() {
            for y in mask_elements(ux) {
                down[y] |= bit(x);
            }
        }

        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for x in 0..n {
            for y in mask_elements(up[x] & !bit(x)) {
                let between = up[x] & down[y] & !bit(x) & !bit(y);
                if between == 0 {
                    upper_covers[x].push(y);
                    lower_covers[y].push(x);
                }
            }
        }

        let mut longest = vec![-1i32; n * n];
        for x in 0..n {
            longest[x * n + x] = 0;
            for &y in &topo {
                if y == x || up[x] & bit(y) == 0 {
                    continue;
                }
                let best = lower_covers[y]
                    .iter()
                    .map(|&w| longest[x * n + w])
                    .filter(|&l| l >= 0)
                    .max()
                    .expect("element above x has a lower cover above x");
                longest[x * n + y] = best + 1;
            }
        }

        Ok(Self { labels, down, up, upper_covers, lower_covers, topo, longest })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x] & bit(y) != 0
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper_covers[x].contains(&y)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// All cover pairs `(x, y)` with `x ◁ y`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.len()).flat_map(|x| self.upper_covers[x].iter().map(move |&y| (x, y))).collect();
        out.sort_unstable();
        out
    }

    pub fn down_mask(&self, x: usize) -> u64 {
        self.down[x]
    }

    pub fn up_mask(&self, x: usize) -> u64 {
        self.up[x]
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    /// A linear extension, bottom first.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper_covers[x].is_empty()).collect()
    }

    pub fn unique_minimum(&self) -> Result<usize> {
        match self.minimal_elements().as_slice() {
            [x] => Ok(*x),
            _ => Err(Error::NoUniqueMinimum),
        }
    }

    /// Rank of the interval `[x, y]`, or `None` when `x ≰ y`.
    #[inline]
    pub fn interval_rank(&self, x: usize, y: usize) -> Option<usize> {
        let l = self.longest[x * self.len() + y];
        (l >= 0).then_some(l as usize)
    }

    pub fn rank_interval(&self, x: usize, y: usize) -> Result<usize> {
        self.interval_rank(x, y).ok_or_else(|| Error::NotComparable(self.labels[x].clone(), self.labels[y].clone()))
    }

    /// Maximum length of a chain.
    pub fn rank(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        Ok(self.longest.iter().copied().max().unwrap_or(0).max(0) as usize)
    }

    /// True iff every maximal chain has length `rank()`.
    pub fn is_pure(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyPoset);
        }
        // Shortest and longest saturated chain from a minimal element to each x.
        let n = self.len();
        let mut lo = vec![0usize; n];
        let mut hi = vec![0usize; n];
        for &x in &self.topo {
            if let Some(l) = self.lower_covers[x].iter().map(|&w| lo[w] + 1).min() {
                lo[x] = l;
                hi[x] = self.lower_covers[x].iter().map(|&w| hi[w] + 1).max().unwrap();
            }
        }
        let rank = self.rank()?;
        Ok(self.maximal_elements().iter().all(|&x| lo[x] == rank && hi[x] == rank))
    }

    /// Elements comparable to `x`, including `x`.
    pub fn star(&self, x: usize) -> Vec<usize> {
        mask_elements(self.star_mask(x)).collect()
    }

    pub fn star_mask(&self, x: usize) -> u64 {
        self.down[x] | self.up[x]
    }

    /// Induced subposet on `keep`, in the given order.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let mut pairs = Vec::new();
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.lt(a, b) {
                    pairs.push((i, j));
                }
            }
        }
        Poset::from_pairs(labels, &pairs).expect("induced order of a poset is acyclic")
    }

    /// All down-sets, including the empty set and the whole poset.
    pub fn ideals(&self) -> Vec<u64> {
        fn rec(p: &Poset, pos: usize, cur: u64, out: &mut Vec<u64>) {
            if pos == p.topo.len() {
                out.push(cur);
                return;
            }
            let x = p.topo[pos];
            rec(p, pos + 1, cur, out);
            let below = p.down[x] & !bit(x);
            if below & !cur == 0 {
                rec(p, pos + 1, cur | bit(x), out);
            }
        }
        let mut out = Vec::new();
        rec(self, 0, 0, &mut out);
        out.sort_unstable();
        out
    }

    /// Saturated chains from `a` to `b`, each listed bottom first.
    pub fn saturated_chains(&self, a: usize, b: usize) -> Vec<Vec<usize>> {
        fn rec(p: &Poset, b: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let x = *path.last().unwrap();
            if x == b {
                out.push(path.clone());
                return;
            }
            for &y in &p.upper_covers[x] {
                if p.leq(y, b) {
                    path.push(y);
                    rec(p, b, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        if self.leq(a, b) {
            rec(self, b, &mut vec![a], &mut out);
        }
        out
    }

    pub fn augment(&self) -> AugmentedPoset {
        AugmentedPoset::new(self)
    }

    /// A string that is equal for two posets iff they are isomorphic.
    pub fn canonical_form(&self) -> String {
        canonical_form(self)
    }

    /// SHA-256 of [`Poset::canonical_form`], hex encoded.
    pub fn canonical_hash(&self) -> String {
        let digest = Sha256::digest(self.canonical_form().as_bytes());
        digest.iter().fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn to_spec(&self) -> PosetSpec {
        PosetSpec {
            elements: self.labels.clone(),
            covers: self
                .cover_pairs()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
            kind: None,
        }
    }

    /// Same order, labels replaced by `0..len()`.
    pub fn relabeled(&self, f: impl Fn(usize) -> String) -> Poset {
        let mut p = self.clone();
        p.labels = (0..self.len()).map(f).collect();
        p
    }
}

/// `P⁺`: the base poset with a new element strictly above everything.
///
/// Base elements keep their indices; the top is index `base_len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedPoset {
    poset: Poset,
    top: usize,
}

impl AugmentedPoset {
    pub fn new(base: &Poset) -> Self {
        let top = base.len();
        let mut top_label = TOP_LABEL.to_string();
        while base.labels.contains(&top_label) {
            top_label.push('\'');
        }
        let mut labels = base.labels.clone();
        labels.push(top_label);
        let mut pairs = base.cover_pairs();
        pairs.extend(base.maximal_elements().into_iter().map(|x| (x, top)));
        let poset = Poset::from_pairs(labels, &pairs).expect("adjoining a top keeps the order acyclic");
        Self { poset, top }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn base_len(&self) -> usize {
        self.top
    }

    pub fn as_poset(&self) -> &Poset {
        &self.poset
    }
}

impl Deref for AugmentedPoset {
    type Target = Poset;

    fn deref(&self) -> &Poset {
        &self.poset
    }
}

/// Whether a JSON poset file describes a poset or a lattice to be converted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Poset,
    Lattice,
}

/// On-disk poset format: `{"elements": [...], "covers": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<InputKind>,
}

impl PosetSpec {
    pub fn build(&self) -> Result<Poset> {
        Poset::new(self.elements.iter().cloned(), self.covers.iter().map(|(a, b)| (a, b)))
    }
}

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

/// Colour refinement on (down-set, up-set) signatures; colours are ranks of
/// sorted signatures, so they depend only on the isomorphism type.
fn refine_colours(p: &Poset) -> Vec<usize> {
    let n = p.len();
    let mut colours: Vec<usize> = vec![0; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut below: Vec<usize> = mask_elements(p.down[x] & !bit(x)).map(|y| colours[y]).collect();
                let mut above: Vec<usize> = mask_elements(p.up[x] & !bit(x)).map(|y| colours[y]).collect();
                below.sort_unstable();
                above.sort_unstable();
                (colours[x], below, above)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        let count = distinct.len();
        colours = next;
        if count == classes {
            return colours;
        }
        classes = count;
    }
}

struct CanonSearch<'a> {
    p: &'a Poset,
    slots: Vec<usize>,
    placed: Vec<usize>,
    used: u64,
    code: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl CanonSearch<'_> {
    fn run(&mut self, colours: &[usize]) {
        let k = self.placed.len();
        if k == self.slots.len() {
            self.best = Some(self.code.clone());
            return;
        }
        let want = self.slots[k];
        let mut tried: Vec<usize> = Vec::new();
        for x in 0..self.p.len() {
            if self.used & bit(x) != 0 || colours[x] != want {
                continue;
            }
            // Twins (same strict down- and up-sets) are swapped by an automorphism.
            let strict = |y: usize| (self.p.down[y] & !bit(y), self.p.up[y] & !bit(y));
            if tried.iter().any(|&t| strict(t) == strict(x)) {
                continue;
            }
            tried.push(x);

            let start = self.code.len();
            for &y in &self.placed {
                self.code.push(self.p.leq(y, x));
                self.code.push(self.p.leq(x, y));
            }
            let keep = match &self.best {
                None => true,
                Some(best) => {
                    let ord = self.code[..].cmp(&best[..self.code.len()]);
                    ord != std::cmp::Ordering::Greater
                }
            };
            if keep {
                self.placed.push(x);
                self.used |= bit(x);
                self.run(colours);
                self.used &= !bit(x);
                self.placed.pop();
            }
            self.code.truncate(start);
        }
    }
}

fn canonical_form(p: &Poset) -> String {
    let n = p.len();
    if n == 0 {
        return "0:".to_string();
    }
    let colours = refine_colours(p);
    let mut slots = colours.clone();
    slots.sort_unstable();
    let mut search = CanonSearch { p, slots, placed: Vec::new(), used: 0, code: Vec::new(), best: None };
    search.run(&colours);
    let bits = search.best.unwrap_or_default();
    let mut out = format!("{n}:");
    for chunk in bits.chunks(4) {
        let v = chunk.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (u8::from(b) << (3 - i)));
        let _ = write!(out, "{v:x}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn singleton() {
        let p = Poset::new(["a"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.rank().unwrap(), 0);
        assert!(p.is_pure().unwrap());
    }

    #[test]
    fn rejects_cycles_and_bad_labels() {
        assert_eq!(Poset::new(["a", "b"], [("a", "b"), ("b", "a")]), Err(Error::CycleDetected("a".into())));
        assert_eq!(Poset::new(["a"], [("a", "a")]), Err(Error::CycleDetected("a".into())));
        assert_eq!(Poset::new(["a", "b"], [("a", "c")]), Err(Error::UnknownLabel("c".into())));
        assert_eq!(Poset::new(["a", "a"], Vec::<(&str, &str)>::new()), Err(Error::DuplicateLabel("a".into())));
    }

    #[test]
    fn redundant_covers_are_reduced() {
        let p = Poset::new(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
        assert!(p.lt(0, 2));
        assert!(!p.is_cover(0, 2));
    }

    #[test]
    fn poset_a_construction() {
        let p = fixtures::poset_a();
        assert_eq!(p.labels(), ["x0", "c1", "c2", "z"]);
        assert_eq!(p.cover_pairs().len(), 3);
        assert_eq!(p.unique_minimum().unwrap(), 0);
    }

    #[test]
    fn ranks() {
        assert_eq!(fixtures::chain(4).rank().unwrap(), 3);
        let a = fixtures::poset_a().augment();
        assert_eq!(a.rank().unwrap(), 3);
        let z = a.element("z").unwrap();
        assert_eq!(a.rank_interval(z, a.top()).unwrap(), 1);
        let p3 = fixtures::p_m(3).augment();
        assert_eq!(p3.rank().unwrap(), 4);
        let (z1p, z3) = (p3.element("z1'").unwrap(), p3.element("z3").unwrap());
        assert_eq!(p3.rank_interval(z1p, z3).unwrap(), 1);
        let c = fixtures::chain(4);
        assert_eq!(c.rank_interval(0, 3).unwrap(), 3);
        assert!(matches!(c.rank_interval(3, 0), Err(Error::NotComparable(..))));
    }

    #[test]
    fn empty_poset_errors() {
        let e = Poset::from_pairs(vec![], &[]).unwrap();
        assert_eq!(e.rank(), Err(Error::EmptyPoset));
        assert_eq!(e.is_pure(), Err(Error::EmptyPoset));
    }

    #[test]
    fn purity() {
        assert!(fixtures::chain(4).is_pure().unwrap());
        assert!(fixtures::diamond().is_pure().unwrap());
        assert!(fixtures::diamond().augment().is_pure().unwrap());
        assert!(!fixtures::poset_a().is_pure().unwrap());
    }

    #[test]
    fn stars() {
        let c = fixtures::chain(4);
        assert_eq!(c.star(1), vec![0, 1, 2, 3]);
        let a = fixtures::poset_a();
        let z = a.element("z").unwrap();
        assert_eq!(a.star(z), vec![0, z]);
        assert_eq!(a.star(0), vec![0, 1, 2, 3]);
    }

    #[test]
    fn top_label_avoids_collisions() {
        let p = Poset::new(["∞"], Vec::<(&str, &str)>::new()).unwrap();
        let a = p.augment();
        assert_eq!(a.label(a.top()), "∞'");
    }

    #[test]
    fn canonical_form_examples() {
        let c4 = fixtures::chain(4);
        let relabeled = Poset::new(["d", "b", "c", "a"], [("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(c4.canonical_form(), relabeled.canonical_form());
        assert_ne!(fixtures::p_m(3).canonical_form(), fixtures::q_m(3).canonical_form());
        assert_ne!(fixtures::diamond().canonical_form(), fixtures::chain(3).canonical_form());
    }

    #[test]
    fn ideals_of_poset_a() {
        // x0 alone, or together with any ideal of {c1 < c2, z}
        let a = fixtures::poset_a();
        let nonempty = a.ideals().into_iter().filter(|&m| m != 0).count();
        assert_eq!(nonempty, 6);
    }
}
