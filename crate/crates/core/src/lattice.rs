//! Finite lattices and the correspondence between a poset with a minimum and
//! the distributive lattice of its non-empty ideals.

use crate::error::{Error, Result};
use crate::poset::{mask_elements, Poset};

/// A poset in which every pair has a meet and a join.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoset {
    poset: Poset,
    meet: Vec<usize>,
    join: Vec<usize>,
    distributive: bool,
}

impl LatticePoset {
    pub fn new(poset: Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let ub = poset.up_mask(a) & poset.up_mask(b);
                let lub = mask_elements(ub)
                    .find(|&u| ub & !poset.up_mask(u) == 0)
                    .ok_or_else(|| Error::NotALattice(poset.label(a).into(), poset.label(b).into(), "join"))?;
                let lb = poset.down_mask(a) & poset.down_mask(b);
                let glb = mask_elements(lb)
                    .find(|&l| lb & !poset.down_mask(l) == 0)
                    .ok_or_else(|| Error::NotALattice(poset.label(a).into(), poset.label(b).into(), "meet"))?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        let mut lattice = Self { poset, meet, join, distributive: false };
        lattice.distributive = lattice.distributivity_violation().is_none();
        Ok(lattice)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    /// First triple with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`.
    fn distributivity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn bottom(&self) -> usize {
        self.poset.minimal_elements()[0]
    }

    /// Join-irreducible elements, counting the bottom as one.
    pub fn join_irreducible_elements(&self) -> Vec<usize> {
        let n = self.len();
        (0..n)
            .filter(|&alpha| (0..n).all(|b| (0..n).all(|c| self.join(b, c) != alpha || b == alpha || c == alpha)))
            .collect()
    }
}

/// Lattice of non-empty ideals of `p` ordered by inclusion.
///
/// Each element is labelled by its members, e.g. `{x0,c1}`.
pub fn poset_ideal_lattice(p: &Poset) -> Result<LatticePoset> {
    p.unique_minimum()?;
    let ideals: Vec<u64> = p.ideals().into_iter().filter(|&m| m != 0).collect();
    let labels: Vec<String> = ideals
        .iter()
        .map(|&m| {
            let members: Vec<&str> = mask_elements(m).map(|x| p.label(x)).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, &a) in ideals.iter().enumerate() {
        for (j, &b) in ideals.iter().enumerate() {
            if a & !b == 0 && (b & !a).count_ones() == 1 {
                pairs.push((i, j));
            }
        }
    }
    let poset = Poset::from_pairs(labels, &pairs)?;
    let lattice = LatticePoset::new(poset)?;
    if !lattice.is_distributive() {
        return Err(Error::InternalInconsistency("ideal lattice is not distributive".into()));
    }
    Ok(lattice)
}

/// Induced subposet of join-irreducibles; the bottom is its unique minimum.
pub fn join_irreducibles(h: &LatticePoset) -> Result<Poset> {
    if let Some((a, b, c)) = h.distributivity_violation() {
        let l = |x| h.poset.label(x).to_string();
        return Err(Error::NotDistributive(l(a), l(b), l(c)));
    }
    Ok(h.poset.induced(&h.join_irreducible_elements()))
}
