//! Ladders of an `m × n` generic matrix and their Hibi posets.
//!
//! Cells are 1-based `(row, col)`. An inside upper corner `(u, v)` cuts away
//! the block `{i > u, j > v}`; an inside lower corner `(u, v)` cuts away
//! `{i < u, j < v}`. Under `(i, j) ↔ {α_1..α_{m−i}} ∪ {β_1..β_{j−1}}` the
//! full matrix is the ideal lattice of two disjoint chains, an upper corner
//! `(u, v)` is the extra relation `α_{m−u} ◁ β_v` and a lower corner `(u, v)`
//! is `β_{v−1} ◁ α_{m−u+1}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{bit, Poset};

pub type Cell = (usize, usize);

/// On-disk ladder format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub m: usize,
    pub n: usize,
    #[serde(default)]
    pub upper_corners: Vec<Cell>,
    #[serde(default)]
    pub lower_corners: Vec<Cell>,
}

impl LadderSpec {
    pub fn build(&self) -> Result<Ladder> {
        build_ladder(self.m, self.n, &self.upper_corners, &self.lower_corners)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    m: usize,
    n: usize,
    upper_corners: Vec<Cell>,
    lower_corners: Vec<Cell>,
    cells: BTreeSet<Cell>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LadderClassification {
    /// Non-Gorenstein and almost Gorenstein.
    pub flag: bool,
    /// Lowest matching case (1, 2 or 3) of the ladder criterion.
    pub case: Option<u8>,
}

/// Sorts corners by row and rejects any whose cut is contained in another's.
fn normalise_corners(side: &'static str, corners: &[Cell]) -> Result<Vec<Cell>> {
    let mut sorted = corners.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        let ((u1, v1), (u2, v2)) = (w[0], w[1]);
        if u1 == u2 || v1 <= v2 {
            let (row, col) = if side == "upper" { w[1] } else { w[0] };
            return Err(Error::RedundantCorner { side, row, col });
        }
    }
    Ok(sorted)
}

pub fn build_ladder(m: usize, n: usize, upper_corners: &[Cell], lower_corners: &[Cell]) -> Result<Ladder> {
    if m < 2 || m > n {
        return Err(Error::InvalidDimensions { m, n });
    }
    for &(row, col) in upper_corners {
        if !(1..m).contains(&row) || !(1..n).contains(&col) {
            return Err(Error::CornerOutOfRange { side: "upper", row, col });
        }
    }
    for &(row, col) in lower_corners {
        if !(2..=m).contains(&row) || !(2..=n).contains(&col) {
            return Err(Error::CornerOutOfRange { side: "lower", row, col });
        }
    }
    let upper = normalise_corners("upper", upper_corners)?;
    let lower = normalise_corners("lower", lower_corners)?;
    for &(u, v) in &upper {
        for &(lu, lv) in &lower {
            if u < lu && v < lv {
                return Err(Error::CrossingCorners(u, v, lu, lv));
            }
        }
    }

    let cells: BTreeSet<Cell> = (1..=m)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| !upper.iter().any(|&(u, v)| i > u && j > v) && !lower.iter().any(|&(u, v)| i < u && j < v))
        .collect();

    for &(i, j) in &cells {
        let in_minor = (1..=m).any(|i2| {
            i2 != i
                && cells.contains(&(i2, j))
                && (1..=n).any(|j2| j2 != j && cells.contains(&(i, j2)) && cells.contains(&(i2, j2)))
        });
        if !in_minor {
            return Err(Error::IsolatedIndeterminate { row: i, col: j });
        }
    }

    Ok(Ladder { m, n, upper_corners: upper, lower_corners: lower, cells })
}

impl Ladder {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn upper_corners(&self) -> &[Cell] {
        &self.upper_corners
    }

    pub fn lower_corners(&self) -> &[Cell] {
        &self.lower_corners
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn is_full(&self) -> bool {
        self.upper_corners.is_empty() && self.lower_corners.is_empty()
    }

    pub fn to_spec(&self) -> LadderSpec {
        LadderSpec {
            m: self.m,
            n: self.n,
            upper_corners: self.upper_corners.clone(),
            lower_corners: self.lower_corners.clone(),
        }
    }

    /// Mirror image in the main diagonal; only defined for square ladders.
    pub fn transpose(&self) -> Option<Ladder> {
        if self.m != self.n {
            return None;
        }
        let flip = |c: &[Cell]| c.iter().map(|&(u, v)| (v, u)).collect::<Vec<_>>();
        build_ladder(self.m, self.n, &flip(&self.upper_corners), &flip(&self.lower_corners)).ok()
    }

    /// Hibi poset whose non-empty ideals are the cells of the ladder.
    pub fn to_poset(&self) -> Result<Poset> {
        let (m, n) = (self.m, self.n);
        // x0 = 0, α_s = s, β_t = m - 1 + t
        let alpha = |s: usize| s;
        let beta = |t: usize| m - 1 + t;
        let mut labels = vec!["x0".to_string()];
        labels.extend((1..m).map(|s| format!("a{s}")));
        labels.extend((1..n).map(|t| format!("b{t}")));
        let mut pairs = vec![(0, alpha(1)), (0, beta(1))];
        pairs.extend((1..m - 1).map(|s| (alpha(s), alpha(s + 1))));
        pairs.extend((1..n - 1).map(|t| (beta(t), beta(t + 1))));
        pairs.extend(self.upper_corners.iter().map(|&(u, v)| (alpha(m - u), beta(v))));
        pairs.extend(self.lower_corners.iter().map(|&(u, v)| (beta(v - 1), alpha(m - u + 1))));
        let p = Poset::from_pairs(labels, &pairs)?;

        let ideals: BTreeSet<u64> = p.ideals().into_iter().filter(|&d| d != 0).collect();
        let images: BTreeSet<u64> = self
            .cells
            .iter()
            .map(|&(i, j)| {
                let a = (1..=m - i).fold(0, |acc, s| acc | bit(alpha(s)));
                let b = (1..j).fold(0, |acc, t| acc | bit(beta(t)));
                bit(0) | a | b
            })
            .collect();
        if images != ideals {
            return Err(Error::CorrespondenceMismatch { cells: self.cells.len(), ideals: ideals.len() });
        }
        Ok(p)
    }

    /// The three shapes of ladders whose ring is non-Gorenstein and almost Gorenstein.
    pub fn classify(&self) -> LadderClassification {
        let (m, n) = (self.m, self.n);
        let on_anti_diagonal = |c: &[Cell]| c.iter().all(|&(u, v)| u + v == m + 1);
        let case1 = m == 2 && n >= 3 && self.is_full();
        let square = m == n && m >= 4;
        let case2 = square
            && self.lower_corners == [(2, 2)]
            && (self.upper_corners == [(m - 1, m - 1)] || on_anti_diagonal(&self.upper_corners));
        let case3 = square
            && self.upper_corners == [(m - 1, m - 1)]
            && (self.lower_corners == [(2, 2)] || on_anti_diagonal(&self.lower_corners));
        let case = [case1, case2, case3].iter().position(|&c| c).map(|i| i as u8 + 1);
        LadderClassification { flag: case.is_some(), case }
    }
}

pub fn ladder_to_poset(l: &Ladder) -> Result<Poset> {
    l.to_poset()
}

pub fn classify_ladder(l: &Ladder) -> LadderClassification {
    l.classify()
}
