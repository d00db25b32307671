//! Deciding and constructing reconfiguration sequences.
//!
//! Two feasible sequences are reconfigurable into each other iff they place
//! every coloop of the matroid union in the same basis. When they do, the
//! solver repeatedly finds a shortcut-free tadpole walk in the current
//! union exchange graph and applies it move by move; every walk strictly
//! lowers the distance to the target.

mod walk;

use std::fmt;

use serde::Serialize;

pub use walk::{find_walk, remove_shortcuts, walk_moves, TadpoleWalk};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::exchange::{build_union, coloops_in};
use crate::matroid::Matroid;
use crate::sequence::{BasisSequence, Move, ReconfigSequence};

/// Sum of symmetric differences between corresponding bases.
pub fn distance(a: &BasisSequence, b: &BasisSequence) -> Result<usize> {
    a.distance(b)
}

/// Outcome of the reconfigurability test with its coloop certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub reconfigurable: bool,
    /// Coloops of the matroid union.
    pub coloops: ElementSet,
    /// Coloops held by each source basis.
    pub source_coloops: Vec<ElementSet>,
    /// Coloops held by each target basis.
    pub target_coloops: Vec<ElementSet>,
}

fn check_pair(matroids: &[Matroid], source: &BasisSequence, target: &BasisSequence) -> Result<()> {
    source.check_feasible(matroids).map_err(|e| e.of("source"))?;
    target.check_feasible(matroids).map_err(|e| e.of("target"))?;
    Ok(())
}

fn partition_of(coloops: &ElementSet, seq: &BasisSequence) -> Vec<ElementSet> {
    seq.bases().iter().map(|b| b.intersection(coloops).cloned().collect()).collect()
}

pub fn decide_with_certificate(
    matroids: &[Matroid],
    source: &BasisSequence,
    target: &BasisSequence,
) -> Result<Decision> {
    check_pair(matroids, source, target)?;
    let graph = build_union(matroids, source)?;
    let coloops = coloops_in(&graph);
    let source_coloops = partition_of(&coloops, source);
    let target_coloops = partition_of(&coloops, target);
    Ok(Decision {
        reconfigurable: source_coloops == target_coloops,
        coloops,
        source_coloops,
        target_coloops,
    })
}

/// Whether `source` can be reconfigured into `target`.
pub fn decide(matroids: &[Matroid], source: &BasisSequence, target: &BasisSequence) -> Result<bool> {
    Ok(decide_with_certificate(matroids, source, target)?.reconfigurable)
}

/// One walk application inside [`solve_traced`].
#[derive(Clone, Debug)]
pub struct WalkStep {
    pub start: BasisSequence,
    pub walk: TadpoleWalk,
    pub moves: Vec<Move>,
    pub distance_before: usize,
    pub distance_after: usize,
}

/// Like [`solve`], also returning every walk that was applied.
pub fn solve_traced(
    matroids: &[Matroid],
    source: &BasisSequence,
    target: &BasisSequence,
) -> Result<Option<(ReconfigSequence, Vec<WalkStep>)>> {
    check_pair(matroids, source, target)?;
    if source == target {
        return Ok(Some((ReconfigSequence::default(), Vec::new())));
    }
    if !decide(matroids, source, target)? {
        return Ok(None);
    }
    let mut current = source.clone();
    let mut dist = current.distance(target)?;
    let mut moves = Vec::new();
    let mut steps = Vec::new();
    while dist > 0 {
        let graph = build_union(matroids, &current)?;
        let walk = remove_shortcuts(find_walk(&graph, target)?, &graph);
        let (walk_moves, next) = walk_moves(&walk, &graph)?;
        let next_dist = next.distance(target)?;
        if next_dist >= dist {
            return Err(Error::Internal(format!(
                "walk did not reduce the distance ({dist} -> {next_dist})"
            )));
        }
        moves.extend(walk_moves.iter().cloned());
        steps.push(WalkStep {
            start: current,
            walk,
            moves: walk_moves,
            distance_before: dist,
            distance_after: next_dist,
        });
        current = next;
        dist = next_dist;
    }
    Ok(Some((ReconfigSequence::new(moves), steps)))
}

/// Reconfiguration sequence from `source` to `target`, or `None` if the
/// coloop placements differ.
pub fn solve(
    matroids: &[Matroid],
    source: &BasisSequence,
    target: &BasisSequence,
) -> Result<Option<ReconfigSequence>> {
    Ok(solve_traced(matroids, source, target)?.map(|(seq, _)| seq))
}

/// Why a replayed sequence was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyFailure {
    InvalidSource { detail: String },
    UnknownMatroid { matroid: usize },
    /// The removed element is not in the basis.
    Missing { element: ElementId },
    /// The added element is not in the matroid's ground set.
    Foreign { element: ElementId },
    /// The added element already sits in some basis.
    Overlap { element: ElementId, owner: usize },
    NotBasis,
    TerminalMismatch,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::InvalidSource { detail } => write!(f, "invalid source: {detail}"),
            VerifyFailure::UnknownMatroid { matroid } => write!(f, "unknown matroid {matroid}"),
            VerifyFailure::Missing { element } => write!(f, "removed element {element} not in basis"),
            VerifyFailure::Foreign { element } => {
                write!(f, "added element {element} outside ground set")
            }
            VerifyFailure::Overlap { element, owner } => {
                write!(f, "overlap: {element} already in basis {owner}")
            }
            VerifyFailure::NotBasis => f.write_str("result is not a basis"),
            VerifyFailure::TerminalMismatch => f.write_str("terminal mismatch"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    /// Index of the first bad move; equals the move count for a terminal
    /// mismatch.
    pub failed_step: Option<usize>,
    pub reason: Option<VerifyFailure>,
}

impl VerifyReport {
    fn pass() -> Self {
        VerifyReport { ok: true, failed_step: None, reason: None }
    }

    fn fail(step: Option<usize>, reason: VerifyFailure) -> Self {
        VerifyReport { ok: false, failed_step: step, reason: Some(reason) }
    }
}

/// Replays `seq` from `source` and checks each move and the final state.
pub fn verify(
    matroids: &[Matroid],
    source: &BasisSequence,
    target: &BasisSequence,
    seq: &ReconfigSequence,
) -> VerifyReport {
    if let Err(e) = source.check_feasible(matroids) {
        return VerifyReport::fail(None, VerifyFailure::InvalidSource { detail: e.to_string() });
    }
    let mut state = source.clone();
    for (t, mv) in seq.iter().enumerate() {
        let Some(m) = matroids.get(mv.matroid) else {
            return VerifyReport::fail(Some(t), VerifyFailure::UnknownMatroid { matroid: mv.matroid });
        };
        let basis = state.basis(mv.matroid);
        if !basis.contains(&mv.remove) {
            return VerifyReport::fail(Some(t), VerifyFailure::Missing { element: mv.remove.clone() });
        }
        if !m.contains(&mv.add) {
            return VerifyReport::fail(Some(t), VerifyFailure::Foreign { element: mv.add.clone() });
        }
        if let Some(owner) = state.owner(&mv.add) {
            return VerifyReport::fail(
                Some(t),
                VerifyFailure::Overlap { element: mv.add.clone(), owner },
            );
        }
        // the current basis is known to be a basis, so the exchange test
        // decides whether the new set is one
        if !m.exchange_ok(basis, &mv.remove, &mv.add) {
            return VerifyReport::fail(Some(t), VerifyFailure::NotBasis);
        }
        state.apply_unchecked(mv);
    }
    if &state != target {
        return VerifyReport::fail(Some(seq.len()), VerifyFailure::TerminalMismatch);
    }
    VerifyReport::pass()
}
