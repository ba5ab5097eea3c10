//! Numerical invariants of the Hibi ring attached to a poset `P` with a unique
//! minimum `x0`.
//!
//! The ring is spanned by monomials `T^ν` for weakly order-reversing maps
//! `ν: P⁺ → ℕ` with `ν(∞) = 0`, graded by `ν(x0)`; the canonical module is
//! spanned by the strictly order-reversing ones. Everything here is counting
//! over those maps, in exact integer arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{bit, AugmentedPoset, Poset};

/// A map `P⁺ → ℕ` vanishing at `∞`, indexed like the augmented poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderReversingMap {
    // field order gives the (degree, values) sort order
    degree: u32,
    values: Vec<u32>,
    strict: bool,
}

impl OrderReversingMap {
    /// Value at `x0`, i.e. the degree of `T^ν`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, x: usize) -> u32 {
        self.values[x]
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// `self ≤ other`, i.e. `other − self` is a weakly order-reversing map into ℕ.
    pub fn precedes(&self, other: &Self, plus: &AugmentedPoset) -> bool {
        let diff = |x: usize| i64::from(other.values[x]) - i64::from(self.values[x]);
        (0..plus.len()).all(|x| diff(x) >= 0) && plus.cover_pairs().iter().all(|&(x, y)| diff(x) >= diff(y))
    }
}

/// Numerator `(h_0, …, h_s)` of the Hilbert series over `(1 − λ)^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector {
    pub coefficients: Vec<i64>,
    pub d: usize,
    pub a: i64,
    pub s: usize,
}

impl HVector {
    /// Multiplicity `e(R) = Σ h_i`.
    pub fn multiplicity(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.iter().eq(self.coefficients.iter().rev())
    }
}

/// Alternating sequence `y1 > x1 < y2 > x2 < … < yt > xt`, stored as `(y_i, x_i)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionNSequence {
    pub pairs: Vec<(usize, usize)>,
}

impl ConditionNSequence {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn display(&self, p: &Poset) -> String {
        let items: Vec<String> = self.pairs.iter().map(|&(y, x)| format!("{}>{}", p.label(y), p.label(x))).collect();
        format!("({})", items.join(", "))
    }
}

/// Verdict of the homological almost-Gorenstein test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub almost_gorenstein: bool,
    /// `μ(C)`, absent when `C = 0`.
    pub mu_c: Option<usize>,
    /// `e(C)`, absent when `C = 0`.
    pub e_c: Option<i64>,
}

/// Summary of every invariant computed for one poset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HibiReport {
    pub d: usize,
    pub r: usize,
    pub a: i64,
    pub s: usize,
    pub h_vector: Vec<i64>,
    #[serde(rename = "mu_K")]
    pub mu_k: usize,
    pub generator_degrees: Vec<u32>,
    pub r_max: usize,
    pub gorenstein: bool,
    pub level: bool,
    pub almost_gorenstein: bool,
    #[serde(rename = "mu_C")]
    pub mu_c: Option<usize>,
    #[serde(rename = "e_C")]
    pub e_c: Option<i64>,
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// A poset with unique minimum together with the derived data the counting
/// routines share.
#[derive(Clone, Debug)]
pub struct Hibi {
    base: Poset,
    plus: AugmentedPoset,
    x0: usize,
    /// Non-empty ideals of `P`; each contains `x0`.
    ideals: Vec<u64>,
    plus_covers: Vec<(usize, usize)>,
}

impl Hibi {
    pub fn new(p: &Poset) -> Result<Self> {
        let x0 = p.unique_minimum()?;
        let plus = p.augment();
        let ideals = p.ideals().into_iter().filter(|&m| m != 0).collect();
        let plus_covers = plus.cover_pairs();
        Ok(Self { base: p.clone(), plus, x0, ideals, plus_covers })
    }

    pub fn poset(&self) -> &Poset {
        &self.base
    }

    pub fn plus(&self) -> &AugmentedPoset {
        &self.plus
    }

    pub fn x0(&self) -> usize {
        self.x0
    }

    pub fn top(&self) -> usize {
        self.plus.top()
    }

    /// Krull dimension, `#P`.
    pub fn d(&self) -> usize {
        self.base.len()
    }

    /// `rank P⁺`, the least degree of the canonical module.
    pub fn r(&self) -> usize {
        self.rank(self.x0, self.top())
    }

    /// Rank of `[x, y]` in `P⁺`; panics when `x ≰ y`.
    pub fn rank(&self, x: usize, y: usize) -> usize {
        self.plus.interval_rank(x, y).expect("interval endpoints are comparable")
    }

    /// Non-empty ideals of `P`, as bitmasks.
    pub fn ideals(&self) -> &[u64] {
        &self.ideals
    }

    // -- Hilbert function and h-vector --------------------------------------

    /// `dim_k R_n`.
    ///
    /// A weakly order-reversing `ν` with `ν(x0) = n` is determined by the nested
    /// down-sets `{x ≠ x0 : ν(x) ≥ k}` for `k = 1..n`, so this counts multichains
    /// of length `n` in the ideal lattice of `P ∖ {x0}`.
    pub fn hilbert_function(&self, n: usize) -> u128 {
        self.hilbert_values(n)[n]
    }

    /// `dim_k R_i` for `i = 0..=n`.
    pub fn hilbert_values(&self, n: usize) -> Vec<u128> {
        let x0 = bit(self.x0);
        let lower: Vec<u64> = self.ideals.iter().map(|&m| m & !x0).collect();
        let subsets: Vec<Vec<usize>> =
            lower.iter().map(|&i| (0..lower.len()).filter(|&j| lower[j] & !i == 0).collect()).collect();
        let mut out = vec![1u128];
        let mut f = vec![1u128; lower.len()];
        for k in 1..=n {
            if k > 1 {
                f = subsets.iter().map(|js| js.iter().map(|&j| f[j]).sum()).collect();
            }
            out.push(f.iter().sum());
        }
        out
    }

    pub fn h_vector(&self) -> Result<HVector> {
        let d = self.d();
        let r = self.r();
        let s = d - r;
        let hf = self.hilbert_values(d);
        let mut h = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let v: i128 = (0..=i)
                .map(|j| {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d, j) * hf[i - j] as i128
                })
                .sum();
            h.push(v);
        }
        if h[s] == 0 || h[s + 1..].iter().any(|&v| v != 0) {
            return Err(Error::InternalInconsistency(format!(
                "h-vector numerator {h:?} does not end at degree d - rank(P+) = {s}"
            )));
        }
        let coefficients = h[..=s]
            .iter()
            .map(|&v| i64::try_from(v).map_err(|_| Error::InternalInconsistency("h-vector overflow".into())))
            .collect::<Result<_>>()?;
        Ok(HVector { coefficients, d, a: -(r as i64), s })
    }

    // -- order-reversing maps -------------------------------------------------

    /// Wraps `values` (indexed over `P⁺`) after checking it is order-reversing.
    pub fn order_reversing_map(&self, values: Vec<u32>, strict: bool) -> Option<OrderReversingMap> {
        if values.len() != self.plus.len() || values[self.top()] != 0 {
            return None;
        }
        let ok =
            self.plus_covers.iter().all(|&(x, y)| if strict { values[x] > values[y] } else { values[x] >= values[y] });
        ok.then(|| OrderReversingMap { degree: values[self.x0], values, strict })
    }

    /// `x ↦ rank[x, ∞]`, the unique strictly order-reversing map of least degree.
    pub fn rank_map(&self) -> OrderReversingMap {
        let values = (0..self.plus.len()).map(|x| self.rank(x, self.top()) as u32).collect();
        self.order_reversing_map(values, true).unwrap()
    }

    /// All strictly order-reversing maps with `ν(x0) ≤ bound`, sorted.
    pub fn strict_maps_up_to(&self, bound: u32) -> Vec<OrderReversingMap> {
        // top-down so every upper cover is assigned first
        let order: Vec<usize> = self.base.linear_extension().iter().rev().copied().collect();
        let mut values = vec![0u32; self.plus.len()];
        let mut out = Vec::new();
        self.extend_strict(&order, 0, bound, &mut values, &mut out);
        out.sort();
        out
    }

    fn extend_strict(
        &self,
        order: &[usize],
        pos: usize,
        bound: u32,
        values: &mut Vec<u32>,
        out: &mut Vec<OrderReversingMap>,
    ) {
        if pos == order.len() {
            out.push(OrderReversingMap { degree: values[self.x0], values: values.clone(), strict: true });
            return;
        }
        let x = order[pos];
        let lo = self.plus.upper_covers(x).iter().map(|&y| values[y] + 1).max().unwrap_or(1);
        let hi = bound.saturating_sub(self.rank(self.x0, x) as u32);
        for v in lo..=hi {
            values[x] = v;
            self.extend_strict(order, pos + 1, bound, values, out);
        }
        values[x] = 0;
    }

    /// Whether a strictly order-reversing `ν` is minimal in `T(P)`.
    ///
    /// `ν` fails to be minimal exactly when `ν − 1_D` is still strictly
    /// order-reversing for some non-empty ideal `D`, i.e. when no cover leaving
    /// `D` is tight.
    pub fn is_minimal(&self, nu: &OrderReversingMap) -> bool {
        let v = &nu.values;
        self.ideals.iter().all(|&d| {
            self.plus_covers
                .iter()
                .any(|&(x, y)| d & bit(x) != 0 && (y == self.top() || d & bit(y) == 0) && v[x] == v[y] + 1)
        })
    }

    /// Minimal elements of `T(P)` with degree at most `bound`.
    pub fn minimal_generators_up_to(&self, bound: u32) -> Vec<OrderReversingMap> {
        self.strict_maps_up_to(bound).into_iter().filter(|nu| self.is_minimal(nu)).collect()
    }

    /// Minimal generators of the canonical module; all have degree at most `r_max`.
    pub fn minimal_canonical_generators(&self) -> Vec<OrderReversingMap> {
        self.minimal_generators_up_to(self.r_max() as u32)
    }

    // -- condition N ----------------------------------------------------------

    /// Visits every condition-N sequence, the empty one first.
    pub fn for_each_condition_n(&self, mut f: impl FnMut(&[(usize, usize)])) {
        let mut seq = Vec::new();
        self.extend_condition_n(&mut seq, &mut f);
    }

    fn extend_condition_n(&self, seq: &mut Vec<(usize, usize)>, f: &mut impl FnMut(&[(usize, usize)])) {
        f(seq);
        let p = &self.base;
        let n = p.len();
        for y in 0..n {
            if let Some(&(_, x_prev)) = seq.last() {
                if !p.lt(x_prev, y) {
                    continue;
                }
            }
            for x in 0..n {
                if !p.lt(x, y) || (seq.is_empty() && x == self.x0) {
                    continue;
                }
                // later x's may not lie below earlier y's (the new y is checked later)
                if seq.iter().any(|&(yi, _)| p.leq(x, yi)) {
                    continue;
                }
                seq.push((y, x));
                self.extend_condition_n(seq, f);
                seq.pop();
            }
        }
    }

    pub fn condition_n_sequences(&self) -> Vec<ConditionNSequence> {
        let mut out = Vec::new();
        self.for_each_condition_n(|s| out.push(ConditionNSequence { pairs: s.to_vec() }));
        out
    }

    pub fn check_condition_n(&self, seq: &ConditionNSequence) -> Result<()> {
        let p = &self.base;
        let bad = |msg: String| Err(Error::InvalidSequence(msg));
        for (i, &(y, x)) in seq.pairs.iter().enumerate() {
            if y >= p.len() || x >= p.len() {
                return bad(format!("entry {i} is not an element of P"));
            }
            if !p.lt(x, y) {
                return bad(format!("y{0} > x{0} fails", i + 1));
            }
            if i == 0 && x == self.x0 {
                return bad("x1 equals the minimum".into());
            }
            if i > 0 && !p.lt(seq.pairs[i - 1].1, y) {
                return bad(format!("x{} < y{} fails", i, i + 1));
            }
            if let Some(j) = seq.pairs[..i].iter().position(|&(yj, _)| p.leq(x, yj)) {
                return bad(format!("y{} >= x{}", j + 1, i + 1));
            }
        }
        Ok(())
    }

    fn r_unchecked(&self, pairs: &[(usize, usize)]) -> i64 {
        let mut prev_x = self.x0;
        let mut total = 0i64;
        for &(y, x) in pairs {
            total += self.rank(prev_x, y) as i64 - self.rank(x, y) as i64;
            prev_x = x;
        }
        total + self.rank(prev_x, self.top()) as i64
    }

    /// `Σ (rank[x_{i−1}, y_i] − rank[x_i, y_i]) + rank[x_t, ∞]`.
    pub fn r_of_sequence(&self, seq: &ConditionNSequence) -> Result<i64> {
        self.check_condition_n(seq)?;
        Ok(self.r_unchecked(&seq.pairs))
    }

    /// Largest `r(·)` over condition-N sequences; the top generator degree.
    pub fn r_max(&self) -> usize {
        let mut best = i64::MIN;
        self.for_each_condition_n(|s| best = best.max(self.r_unchecked(s)));
        best as usize
    }

    pub fn is_gorenstein(&self) -> bool {
        self.base.is_pure().expect("poset with a minimum is non-empty")
    }

    pub fn is_level(&self) -> bool {
        self.r_max() == self.r()
    }

    // -- cokernel and the almost-Gorenstein test ------------------------------

    /// `c_j = (h_s + … + h_{s−j}) − (h_0 + … + h_j)` for `j < s`.
    pub fn cokernel_from(h: &[i64]) -> Vec<i64> {
        let s = h.len() - 1;
        (0..s)
            .map(|j| {
                let top: i64 = h[s - j..=s].iter().sum();
                let bottom: i64 = h[..=j].iter().sum();
                top - bottom
            })
            .collect()
    }

    /// Hilbert numerator of `C = K_R(−a) / R` over `(1 − λ)^{d−1}`.
    pub fn cokernel_numerator(&self) -> Result<Vec<i64>> {
        let h = self.h_vector()?;
        if h.s == 0 || self.minimal_canonical_generators().len() == 1 {
            return Err(Error::GorensteinNoCokernel);
        }
        Ok(Self::cokernel_from(&h.coefficients))
    }

    /// Decides almost-Gorensteinness from `μ(K_R)` and the h-vector alone.
    ///
    /// Any embedding `R → K_R(−a)` sends 1 to a degree-0 minimal generator, so
    /// `μ(C) = μ(K_R) − 1`, and `e(C)` is the cokernel numerator at `λ = 1`.
    pub fn almost_gorenstein_oracle(&self) -> Result<OracleVerdict> {
        let mu_k = self.minimal_canonical_generators().len();
        let h = self.h_vector()?;
        Ok(Self::verdict_from(mu_k, &h))
    }

    pub fn verdict_from(mu_k: usize, h: &HVector) -> OracleVerdict {
        if mu_k == 1 {
            return OracleVerdict { almost_gorenstein: true, mu_c: None, e_c: None };
        }
        let e_c: i64 = Self::cokernel_from(&h.coefficients).iter().sum();
        let mu_c = mu_k - 1;
        OracleVerdict { almost_gorenstein: mu_c as i64 == e_c, mu_c: Some(mu_c), e_c: Some(e_c) }
    }

    // -- witness sequences ----------------------------------------------------

    fn rank_equalities_hold(&self, nu: &OrderReversingMap, pairs: &[(usize, usize)]) -> bool {
        let v = |x: usize| i64::from(nu.values[x]);
        let xs = std::iter::once(self.x0).chain(pairs.iter().map(|&(_, x)| x));
        let ys = pairs.iter().map(|&(y, _)| y).chain(std::iter::once(self.top()));
        xs.zip(ys).all(|(x, y)| self.plus.leq(x, y) && v(x) - v(y) == self.rank(x, y) as i64)
    }

    /// First retrace in `pairs`: `(i, z, replace_x)` where pair `i` (0-based)
    /// can have its `x` (or `y`) moved to `z` without changing the rank sums.
    fn find_retrace(&self, pairs: &[(usize, usize)]) -> Option<(usize, usize, bool)> {
        let p = &self.plus;
        for i in 0..pairs.len() {
            let (y, x) = pairs[i];
            let y_next = pairs.get(i + 1).map_or(self.top(), |&(y, _)| y);
            let x_prev = if i == 0 { self.x0 } else { pairs[i - 1].1 };
            for z in 0..self.base.len() {
                if p.lt(x, z)
                    && p.leq(z, y)
                    && p.leq(z, y_next)
                    && self.rank(x, z) + self.rank(z, y_next) == self.rank(x, y_next)
                {
                    return Some((i, z, true));
                }
                if p.leq(x_prev, z)
                    && p.lt(z, y)
                    && p.leq(x, z)
                    && self.rank(x_prev, z) + self.rank(z, y) == self.rank(x_prev, y)
                {
                    return Some((i, z, false));
                }
            }
        }
        None
    }

    /// A condition-N sequence for a minimal `ν` whose consecutive rank
    /// differences are realised by `ν` and which never retraces.
    ///
    /// Starts from the shortest sequence with the rank equalities and then
    /// pushes each `x_i` up or `y_i` down along any interval that keeps the rank
    /// sums; a pair with `x_i = y_i` is dropped.
    pub fn witness_sequence(&self, nu: &OrderReversingMap) -> Result<ConditionNSequence> {
        if !nu.strict || self.order_reversing_map(nu.values.clone(), true).is_none() || !self.is_minimal(nu) {
            return Err(Error::NotMinimal);
        }
        let mut start: Option<Vec<(usize, usize)>> = None;
        self.for_each_condition_n(|s| {
            if start.as_ref().is_none_or(|b| s.len() < b.len()) && self.rank_equalities_hold(nu, s) {
                start = Some(s.to_vec());
            }
        });
        let mut pairs = start
            .ok_or_else(|| Error::InternalInconsistency("no condition-N sequence realises the minimal map".into()))?;

        let limit = 4 * self.plus.len() * self.plus.len() + 4;
        for _ in 0..limit {
            let Some((i, z, replace_x)) = self.find_retrace(&pairs) else {
                let seq = ConditionNSequence { pairs };
                self.check_condition_n(&seq)?;
                return Ok(seq);
            };
            if replace_x {
                pairs[i].1 = z;
            } else {
                pairs[i].0 = z;
            }
            if pairs[i].0 == pairs[i].1 {
                pairs.remove(i);
            }
            let seq = ConditionNSequence { pairs: pairs.clone() };
            if self.check_condition_n(&seq).is_err() || !self.rank_equalities_hold(nu, &pairs) {
                return Err(Error::InternalInconsistency(format!(
                    "retrace replacement broke the sequence: {}",
                    seq.display(&self.plus)
                )));
            }
        }
        Err(Error::InternalInconsistency("retrace replacement did not terminate".into()))
    }

    // -- report -----------------------------------------------------------------

    pub fn report(&self) -> Result<HibiReport> {
        let h = self.h_vector()?;
        let r = self.r();
        let r_max = self.r_max();
        let gens = self.minimal_generators_up_to(r_max as u32);
        let verdict = Self::verdict_from(gens.len(), &h);
        let gorenstein = self.is_gorenstein();
        Ok(HibiReport {
            d: h.d,
            r,
            a: h.a,
            s: h.s,
            h_vector: h.coefficients,
            mu_k: gens.len(),
            generator_degrees: gens.iter().map(OrderReversingMap::degree).collect(),
            r_max,
            gorenstein,
            level: r_max == r,
            almost_gorenstein: verdict.almost_gorenstein,
            mu_c: if gorenstein { None } else { verdict.mu_c },
            e_c: if gorenstein { None } else { verdict.e_c },
        })
    }
}

// Free-function entry points mirroring the operations one-to-one.

pub fn hilbert_function(p: &Poset, n: usize) -> Result<u128> {
    Ok(Hibi::new(p)?.hilbert_function(n))
}

pub fn h_vector(p: &Poset) -> Result<HVector> {
    Hibi::new(p)?.h_vector()
}

pub fn minimal_canonical_generators(p: &Poset) -> Result<Vec<OrderReversingMap>> {
    Ok(Hibi::new(p)?.minimal_canonical_generators())
}

pub fn condition_n_sequences(p: &Poset) -> Result<Vec<ConditionNSequence>> {
    Ok(Hibi::new(p)?.condition_n_sequences())
}

pub fn r_of_sequence(p: &Poset, seq: &ConditionNSequence) -> Result<i64> {
    Hibi::new(p)?.r_of_sequence(seq)
}

pub fn r_max(p: &Poset) -> Result<usize> {
    Ok(Hibi::new(p)?.r_max())
}

pub fn is_gorenstein(p: &Poset) -> Result<bool> {
    Ok(Hibi::new(p)?.is_gorenstein())
}

pub fn is_level(p: &Poset) -> Result<bool> {
    Ok(Hibi::new(p)?.is_level())
}

pub fn cokernel_numerator(p: &Poset) -> Result<Vec<i64>> {
    Hibi::new(p)?.cokernel_numerator()
}

pub fn is_almost_gorenstein_oracle(p: &Poset) -> Result<OracleVerdict> {
    Hibi::new(p)?.almost_gorenstein_oracle()
}

pub fn witness_sequence(p: &Poset, nu: &OrderReversingMap) -> Result<ConditionNSequence> {
    Hibi::new(p)?.witness_sequence(nu)
}

pub fn hibi_report(p: &Poset) -> Result<HibiReport> {
    Hibi::new(p)?.report()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn hibi(p: &Poset) -> Hibi {
        Hibi::new(p).unwrap()
    }

    /// Brute force over all functions `P ∖ {x0} → {0..n}`.
    fn hilbert_brute(p: &Poset, n: u32) -> u128 {
        let h = hibi(p);
        let others: Vec<usize> = (0..p.len()).filter(|&x| x != h.x0()).collect();
        let mut count = 0;
        let mut vals = vec![0u32; p.len() + 1];
        let total = (n as u128 + 1).pow(others.len() as u32);
        for code in 0..total {
            let mut c = code;
            for &x in &others {
                vals[x] = (c % (n as u128 + 1)) as u32;
                c /= n as u128 + 1;
            }
            vals[h.x0()] = n;
            if h.order_reversing_map(vals.clone(), false).is_some() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hilbert_function_examples() {
        for p in [fixtures::poset_a(), fixtures::chain(4), fixtures::p_m(3)] {
            assert_eq!(hibi(&p).hilbert_function(0), 1);
        }
        assert_eq!(hibi(&fixtures::poset_a()).hilbert_function(1), 6);
        let c4 = hibi(&fixtures::chain(4));
        for n in 0..8usize {
            assert_eq!(c4.hilbert_function(n), binomial(n + 3, 3) as u128);
        }
    }

    #[test]
    fn hilbert_function_matches_brute_force() {
        for p in [fixtures::poset_a(), fixtures::diamond(), fixtures::p_m(3), fixtures::q_m(3)] {
            let h = hibi(&p);
            let fast = h.hilbert_values(4);
            for n in 0..=4u32 {
                assert_eq!(fast[n as usize], hilbert_brute(&p, n), "{:?} n={n}", p.labels());
            }
        }
    }

    #[test]
    fn hilbert_requires_minimum() {
        let two = Poset::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(hilbert_function(&two, 1), Err(Error::NoUniqueMinimum));
    }

    #[test]
    fn h_vectors() {
        let c4 = h_vector(&fixtures::chain(4)).unwrap();
        assert_eq!((c4.coefficients.as_slice(), c4.d, c4.a, c4.s), (&[1][..], 4, -4, 0));
        let a = h_vector(&fixtures::poset_a()).unwrap();
        assert_eq!((a.coefficients.as_slice(), a.d, a.a, a.s), (&[1, 2][..], 4, -3, 1));
        let dia = h_vector(&fixtures::diamond()).unwrap();
        assert_eq!((dia.coefficients.as_slice(), dia.d, dia.a, dia.s), (&[1, 1][..], 3, -2, 1));
    }

    #[test]
    fn singleton_is_polynomial_ring() {
        let r = hibi_report(&fixtures::chain(1)).unwrap();
        assert_eq!(r.h_vector, vec![1]);
        assert_eq!(r.mu_k, 1);
        assert!(r.gorenstein);
    }

    #[test]
    fn canonical_generators() {
        let c4 = hibi(&fixtures::chain(4));
        let g = c4.minimal_canonical_generators();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].values(), &[4, 3, 2, 1, 0]);

        let a = hibi(&fixtures::poset_a());
        let g = a.minimal_canonical_generators();
        let vals: Vec<&[u32]> = g.iter().map(|v| v.values()).collect();
        assert_eq!(vals, vec![&[3, 2, 1, 1, 0][..], &[3, 2, 1, 2, 0][..]]);

        let p3 = hibi(&fixtures::p_m(3));
        let degs: Vec<u32> = p3.minimal_canonical_generators().iter().map(|v| v.degree()).collect();
        assert_eq!(degs, vec![4, 5]);
    }

    /// Pairwise minimality among all strict maps up to `bound`.
    fn minimal_brute(h: &Hibi, bound: u32) -> Vec<OrderReversingMap> {
        let all = h.strict_maps_up_to(bound);
        all.iter().filter(|nu| !all.iter().any(|other| other != *nu && other.precedes(nu, h.plus()))).cloned().collect()
    }

    #[test]
    fn ideal_minimality_matches_pairwise() {
        for p in [fixtures::poset_a(), fixtures::diamond(), fixtures::p_m(3), fixtures::q_m(3), fixtures::chain(3)] {
            let h = hibi(&p);
            let bound = h.d() as u32;
            assert_eq!(h.minimal_generators_up_to(bound), minimal_brute(&h, bound), "{:?}", p.labels());
        }
    }

    #[test]
    fn condition_n_examples() {
        assert_eq!(condition_n_sequences(&fixtures::chain(1)).unwrap(), vec![ConditionNSequence::empty()]);
        let a = fixtures::poset_a();
        let (c1, c2) = (a.element("c1").unwrap(), a.element("c2").unwrap());
        assert_eq!(
            condition_n_sequences(&a).unwrap(),
            vec![ConditionNSequence::empty(), ConditionNSequence { pairs: vec![(c2, c1)] }]
        );
        let p3 = fixtures::p_m(3);
        let seq = ConditionNSequence { pairs: vec![(p3.element("z3").unwrap(), p3.element("z1'").unwrap())] };
        assert!(condition_n_sequences(&p3).unwrap().contains(&seq));
    }

    #[test]
    fn r_of_sequence_examples() {
        let a = fixtures::poset_a();
        let (c1, c2) = (a.element("c1").unwrap(), a.element("c2").unwrap());
        assert_eq!(r_of_sequence(&a, &ConditionNSequence::empty()).unwrap(), 3);
        assert_eq!(r_of_sequence(&a, &ConditionNSequence { pairs: vec![(c2, c1)] }).unwrap(), 3);
        let p3 = fixtures::p_m(3);
        let seq = ConditionNSequence { pairs: vec![(p3.element("z3").unwrap(), p3.element("z1'").unwrap())] };
        assert_eq!(r_of_sequence(&p3, &seq).unwrap(), 5);
        let bad = ConditionNSequence { pairs: vec![(c1, c2)] };
        assert!(matches!(r_of_sequence(&a, &bad), Err(Error::InvalidSequence(_))));
        let from_min = ConditionNSequence { pairs: vec![(c1, 0)] };
        assert!(matches!(r_of_sequence(&a, &from_min), Err(Error::InvalidSequence(_))));
    }

    #[test]
    fn r_max_and_levels() {
        assert_eq!(r_max(&fixtures::chain(4)).unwrap(), 4);
        assert_eq!(r_max(&fixtures::poset_a()).unwrap(), 3);
        assert_eq!(r_max(&fixtures::p_m(3)).unwrap(), 5);
        assert!(is_level(&fixtures::poset_a()).unwrap());
        assert!(!is_level(&fixtures::p_m(3)).unwrap());
        assert!(is_level(&fixtures::chain(4)).unwrap());
        assert!(is_gorenstein(&fixtures::chain(4)).unwrap());
        assert!(is_gorenstein(&fixtures::diamond()).unwrap());
        assert!(!is_gorenstein(&fixtures::poset_a()).unwrap());
    }

    #[test]
    fn cokernel() {
        assert_eq!(cokernel_numerator(&fixtures::poset_a()).unwrap(), vec![1]);
        assert_eq!(cokernel_numerator(&fixtures::diamond()), Err(Error::GorensteinNoCokernel));
        assert_eq!(cokernel_numerator(&fixtures::chain(3)), Err(Error::GorensteinNoCokernel));
        let p3: i64 = cokernel_numerator(&fixtures::p_m(3)).unwrap().iter().sum();
        assert_eq!(p3, 1);
    }

    #[test]
    fn oracle() {
        let a = is_almost_gorenstein_oracle(&fixtures::poset_a()).unwrap();
        assert_eq!(a, OracleVerdict { almost_gorenstein: true, mu_c: Some(1), e_c: Some(1) });
        let q3 = is_almost_gorenstein_oracle(&fixtures::q_m(3)).unwrap();
        assert_eq!(q3, OracleVerdict { almost_gorenstein: true, mu_c: Some(2), e_c: Some(2) });
        // z-chain one longer than the z'-chain
        let lopsided = Poset::new(
            ["x0", "z1", "z2", "z3", "z4", "z1'", "z2'", "z3'"],
            [
                ("x0", "z1"),
                ("z1", "z2"),
                ("z2", "z3"),
                ("z3", "z4"),
                ("x0", "z1'"),
                ("z1'", "z2'"),
                ("z2'", "z3'"),
                ("z1'", "z4"),
            ],
        )
        .unwrap();
        assert!(!is_almost_gorenstein_oracle(&lopsided).unwrap().almost_gorenstein);
    }

    #[test]
    fn witness_sequences() {
        let c4 = hibi(&fixtures::chain(4));
        let nu = &c4.minimal_canonical_generators()[0];
        assert!(c4.witness_sequence(nu).unwrap().is_empty());

        let a = hibi(&fixtures::poset_a());
        let nu = a.order_reversing_map(vec![3, 2, 1, 2, 0], true).unwrap();
        let seq = a.witness_sequence(&nu).unwrap();
        assert!(i64::from(nu.degree()) <= a.r_of_sequence(&seq).unwrap());
        assert_eq!(a.r_of_sequence(&seq).unwrap(), 3);

        let p3 = hibi(&fixtures::p_m(3));
        let top = p3.minimal_canonical_generators().into_iter().max().unwrap();
        assert_eq!(top.degree(), 5);
        let seq = p3.witness_sequence(&top).unwrap();
        let pp = p3.poset();
        assert_eq!(seq.pairs, vec![(pp.element("z3").unwrap(), pp.element("z1'").unwrap())]);
    }

    #[test]
    fn witness_rejects_non_minimal() {
        let a = hibi(&fixtures::poset_a());
        let nu = a.order_reversing_map(vec![4, 3, 2, 2, 0], true).unwrap();
        assert_eq!(a.witness_sequence(&nu), Err(Error::NotMinimal));
    }

    #[test]
    fn report_fields() {
        let r = hibi_report(&fixtures::poset_a()).unwrap();
        assert_eq!(r.h_vector, vec![1, 2]);
        assert_eq!(r.mu_k, 2);
        assert_eq!(r.generator_degrees, vec![3, 3]);
        assert!(r.level && r.almost_gorenstein && !r.gorenstein);
        assert_eq!((r.mu_c, r.e_c), (Some(1), Some(1)));
        let g = hibi_report(&fixtures::diamond()).unwrap();
        assert_eq!((g.mu_c, g.e_c), (None, None));
    }
}
