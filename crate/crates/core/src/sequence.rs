//! Basis sequences and single-exchange moves.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Infeasibility, Result};
use crate::matroid::Matroid;

/// One basis per matroid. Feasible when every set is a basis of its matroid
/// and the sets are pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BasisSequence(Vec<ElementSet>);

impl<'de> Deserialize<'de> for BasisSequence {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<ElementId>>::deserialize(d)?;
        let mut bases = Vec::with_capacity(raw.len());
        for (i, labels) in raw.into_iter().enumerate() {
            let mut set = ElementSet::new();
            for e in labels {
                if let Some(dup) = set.replace(e) {
                    return Err(serde::de::Error::custom(format!(
                        "basis {i} lists element {dup} twice"
                    )));
                }
            }
            bases.push(set);
        }
        Ok(BasisSequence(bases))
    }
}

impl From<Vec<ElementSet>> for BasisSequence {
    fn from(v: Vec<ElementSet>) -> Self {
        BasisSequence(v)
    }
}

impl BasisSequence {
    pub fn new(bases: Vec<ElementSet>) -> Self {
        BasisSequence(bases)
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.0
    }

    pub fn into_bases(self) -> Vec<ElementSet> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn basis(&self, i: usize) -> &ElementSet {
        &self.0[i]
    }

    /// Union of all bases.
    pub fn occupied(&self) -> ElementSet {
        self.0.iter().flatten().cloned().collect()
    }

    /// Index of the basis holding `e`, if any. Assumes disjointness.
    pub fn owner(&self, e: &ElementId) -> Option<usize> {
        self.0.iter().position(|b| b.contains(e))
    }

    pub fn is_occupied(&self, e: &ElementId) -> bool {
        self.0.iter().any(|b| b.contains(e))
    }

    /// Checks that this is a feasible basis sequence of `matroids`.
    pub fn check_feasible(&self, matroids: &[Matroid]) -> Result<(), Infeasibility> {
        if self.0.len() != matroids.len() {
            return Err(Infeasibility::Length { expected: matroids.len(), got: self.0.len() });
        }
        let mut owner: HashMap<&ElementId, usize> = HashMap::new();
        for (i, (b, m)) in self.0.iter().zip(matroids).enumerate() {
            if let Some(e) = b.iter().find(|e| !m.contains(e)) {
                return Err(Infeasibility::Foreign { index: i, element: e.clone() });
            }
            if !m.is_basis(b).unwrap_or(false) {
                return Err(Infeasibility::NotBasis { index: i });
            }
        }
        for (i, b) in self.0.iter().enumerate() {
            for e in b {
                if let Some(first) = owner.insert(e, i) {
                    return Err(Infeasibility::Overlap { first, second: i, element: e.clone() });
                }
            }
        }
        Ok(())
    }

    /// Sum of symmetric-difference sizes against `other`.
    pub fn distance(&self, other: &BasisSequence) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::Contract(format!(
                "cannot compare sequences of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a.symmetric_difference(b).count()).sum())
    }

    /// Applies `mv` without any legality check.
    pub fn apply_unchecked(&mut self, mv: &Move) {
        let b = &mut self.0[mv.matroid];
        b.remove(&mv.remove);
        b.insert(mv.add.clone());
    }
}

/// Exchange of `remove` for `add` in basis `matroid`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub matroid: usize,
    pub remove: ElementId,
    pub add: ElementId,
}

impl Move {
    pub fn new(matroid: usize, remove: impl Into<ElementId>, add: impl Into<ElementId>) -> Self {
        Move { matroid, remove: remove.into(), add: add.into() }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}: {} -> {}", self.matroid, self.remove, self.add)
    }
}

/// Ordered list of moves, each applied to the result of the previous one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReconfigSequence {
    pub moves: Vec<Move>,
}

impl ReconfigSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        ReconfigSequence { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.moves.iter()
    }

    /// Every intermediate state, starting with `start` itself.
    pub fn states(&self, start: &BasisSequence) -> Vec<BasisSequence> {
        let mut cur = start.clone();
        let mut out = vec![cur.clone()];
        for mv in &self.moves {
            cur.apply_unchecked(mv);
            out.push(cur.clone());
        }
        out
    }
}

impl From<Vec<Move>> for ReconfigSequence {
    fn from(moves: Vec<Move>) -> Self {
        ReconfigSequence { moves }
    }
}

impl<'a> IntoIterator for &'a ReconfigSequence {
    type Item = &'a Move;
    type IntoIter = std::slice::Iter<'a, Move>;

    fn into_iter(self) -> Self::IntoIter {
        self.moves.iter()
    }
}
