//! Set Cover gadgets: two partition matroids whose shortest reconfiguration
//! length tracks the size of a minimum set cover.
//!
//! For every universe element `u` there are three "swap" elements
//! `e:u:1..3` and one counter `c:u:i` per set containing `u`. Every set `S`
//! owns a chain `s:S:1 .. s:S:L+1` with `L = 2n²`. The only free elements
//! of the start and end sequences are the chain tails, so swapping
//! `e:u:1` and `e:u:2` means pulling a hole all the way down the chain of
//! some set containing `u`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MatroidSpec, PartitionBlock};
use crate::reconfig::verify;
use crate::sequence::{BasisSequence, Move, ReconfigSequence};

/// Family of subsets of a universe. List order is the set order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetCoverInstance {
    pub universe: Vec<ElementId>,
    pub sets: Vec<Vec<ElementId>>,
}

impl SetCoverInstance {
    pub fn new(universe: Vec<ElementId>, sets: Vec<Vec<ElementId>>) -> Result<Self> {
        let sc = SetCoverInstance { universe, sets };
        sc.validate()?;
        Ok(sc)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::SetCover(msg));
        let universe: BTreeSet<&ElementId> = self.universe.iter().collect();
        if universe.len() != self.universe.len() {
            return bad("universe lists an element twice".into());
        }
        let mut covered = BTreeSet::new();
        for (j, s) in self.sets.iter().enumerate() {
            if s.is_empty() {
                return bad(format!("set {j} is empty"));
            }
            let members: BTreeSet<&ElementId> = s.iter().collect();
            if members.len() != s.len() {
                return bad(format!("set {j} lists an element twice"));
            }
            if let Some(u) = s.iter().find(|u| !universe.contains(u)) {
                return bad(format!("set {j} contains {u}, which is not in the universe"));
            }
            covered.extend(members);
        }
        if covered.len() != universe.len() {
            return bad("the sets do not cover the universe".into());
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// Whether the chosen sets cover the universe.
    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let covered: BTreeSet<&ElementId> =
            chosen.iter().filter_map(|&j| self.sets.get(j)).flatten().collect();
        self.universe.iter().all(|u| covered.contains(u))
    }

    /// Size of a smallest cover, by enumerating subfamilies in size order.
    pub fn min_cover_size(&self) -> usize {
        (0..=self.m())
            .find(|&k| {
                itertools::Itertools::combinations(0..self.m(), k).any(|c| self.is_cover(&c))
            })
            .unwrap_or(0)
    }
}

/// The reduction output: two partition matroids with start and end
/// sequences.
#[derive(Clone, Debug)]
pub struct GadgetInstance {
    pub set_cover: SetCoverInstance,
    pub matroids: Vec<Matroid>,
    pub source: BasisSequence,
    pub target: BasisSequence,
    /// Chain length `2n²`.
    pub chain_len: usize,
    // position of u in every set that contains it, counted from 1 in set order
    occurrence: BTreeMap<(usize, usize), usize>,
}

pub fn elem_label(u: &ElementId, j: usize) -> ElementId {
    ElementId::from(format!("e:{u}:{j}"))
}

pub fn counter_label(u: &ElementId, i: usize) -> ElementId {
    ElementId::from(format!("c:{u}:{i}"))
}

pub fn chain_label(set: usize, i: usize) -> ElementId {
    ElementId::from(format!("s:{set}:{i}"))
}

fn block(elements: impl IntoIterator<Item = ElementId>, rank: usize) -> PartitionBlock {
    PartitionBlock::new(elements.into_iter().collect(), rank)
}

/// Builds the two-matroid gadget for `sc`.
pub fn build_gadget(sc: &SetCoverInstance) -> Result<GadgetInstance> {
    sc.validate()?;
    let n = sc.n();
    let half = n * n;
    let chain_len = 2 * half;
    let u_index: HashMap<&ElementId, usize> =
        sc.universe.iter().enumerate().map(|(i, u)| (u, i)).collect();

    let mut occurrence = BTreeMap::new();
    let mut seen = vec![0usize; n];
    for (j, s) in sc.sets.iter().enumerate() {
        for u in s {
            let ui = u_index[u];
            seen[ui] += 1;
            occurrence.insert((ui, j), seen[ui]);
        }
    }
    let freq = seen;

    let mut m1 = Vec::new();
    let mut m2 = Vec::new();
    let (mut b1s, mut b2s, mut b1t, mut b2t) =
        (ElementSet::new(), ElementSet::new(), ElementSet::new(), ElementSet::new());
    for u in &sc.universe {
        m1.push(block([elem_label(u, 1), elem_label(u, 2)], 1));
        m2.push(block([elem_label(u, 1), elem_label(u, 2), elem_label(u, 3)], 1));
        b1s.insert(elem_label(u, 1));
        b2s.insert(elem_label(u, 2));
        b1t.insert(elem_label(u, 2));
        b2t.insert(elem_label(u, 1));
        b1s.insert(elem_label(u, 3));
        b1t.insert(elem_label(u, 3));
    }
    for (ui, u) in sc.universe.iter().enumerate() {
        let mut e3 = vec![elem_label(u, 3)];
        e3.extend((1..=freq[ui]).map(|i| counter_label(u, i)));
        m1.push(block(e3, 1));
    }
    for (j, s) in sc.sets.iter().enumerate() {
        let counters: Vec<ElementId> =
            s.iter().map(|u| counter_label(u, occurrence[&(u_index[u], j)])).collect();
        b2s.extend(counters.iter().cloned());
        b2t.extend(counters.iter().cloned());
        let mut e0 = counters;
        e0.push(chain_label(j, 1));
        m2.push(block(e0, s.len()));
    }
    for j in 0..sc.m() {
        for i in 1..=half {
            m1.push(block([chain_label(j, 2 * i - 1), chain_label(j, 2 * i)], 1));
            m2.push(block([chain_label(j, 2 * i), chain_label(j, 2 * i + 1)], 1));
            for b1 in [&mut b1s, &mut b1t] {
                b1.insert(chain_label(j, 2 * i - 1));
            }
            for b2 in [&mut b2s, &mut b2t] {
                b2.insert(chain_label(j, 2 * i));
            }
        }
    }
    let matroids = vec![
        Matroid::new(MatroidSpec::partition(m1))?,
        Matroid::new(MatroidSpec::partition(m2))?,
    ];
    let source = BasisSequence::new(vec![b1s, b2s]);
    let target = BasisSequence::new(vec![b1t, b2t]);
    source.check_feasible(&matroids).map_err(|e| Error::Internal(format!("gadget source: {e}")))?;
    target.check_feasible(&matroids).map_err(|e| Error::Internal(format!("gadget target: {e}")))?;
    Ok(GadgetInstance { set_cover: sc.clone(), matroids, source, target, chain_len, occurrence })
}

impl GadgetInstance {
    /// Rank of `u` among the sets containing it, up to and including `set`.
    pub fn occurrence(&self, u: usize, set: usize) -> Option<usize> {
        self.occurrence.get(&(u, set)).copied()
    }

    /// Counter element `c:u:id(u, S)` that set `S` uses for `u`.
    pub fn set_counter(&self, u: usize, set: usize) -> Option<ElementId> {
        self.occurrence(u, set).map(|i| counter_label(&self.set_cover.universe[u], i))
    }

    // Chain block E_S^i sits in the first matroid for odd i.
    fn chain_matroid(i: usize) -> usize {
        if i % 2 == 1 {
            0
        } else {
            1
        }
    }

    /// Expected length of [`cover_to_sequence`] for a cover of `k` sets.
    pub fn sequence_len(&self, k: usize) -> usize {
        2 * k * self.chain_len + 7 * self.set_cover.n()
    }
}

/// Builds a reconfiguration sequence from a set cover: drain each chosen
/// chain, swap every element once through the first chosen set that
/// contains it, then refill the chains.
pub fn cover_to_sequence(g: &GadgetInstance, cover: &[usize]) -> Result<ReconfigSequence> {
    let sc = &g.set_cover;
    let mut distinct = BTreeSet::new();
    for &j in cover {
        if j >= sc.m() {
            return Err(Error::SetCover(format!("set index {j} out of range")));
        }
        if !distinct.insert(j) {
            return Err(Error::SetCover(format!("set index {j} chosen twice")));
        }
    }
    if !sc.is_cover(cover) {
        return Err(Error::SetCover("chosen sets do not cover the universe".into()));
    }
    let l = g.chain_len;
    let u_index: HashMap<&ElementId, usize> =
        sc.universe.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let mut moves = Vec::with_capacity(g.sequence_len(cover.len()));

    for &j in cover {
        for i in (1..=l).rev() {
            moves.push(Move::new(GadgetInstance::chain_matroid(i), chain_label(j, i), chain_label(j, i + 1)));
        }
    }
    let mut done = BTreeSet::new();
    for &j in cover {
        let s1 = chain_label(j, 1);
        for u in &sc.sets[j] {
            if done.contains(u) {
                continue;
            }
            let c = g.set_counter(u_index[u], j).expect("u is in set j");
            let (e1, e2, e3) = (elem_label(u, 1), elem_label(u, 2), elem_label(u, 3));
            moves.extend([
                Move::new(1, c.clone(), s1.clone()),
                Move::new(0, e3.clone(), c.clone()),
                Move::new(1, e2.clone(), e3.clone()),
                Move::new(0, e1.clone(), e2),
                Move::new(1, e3.clone(), e1),
                Move::new(0, c.clone(), e3),
                Move::new(1, s1.clone(), c),
            ]);
        }
        done.extend(sc.sets[j].iter().cloned());
    }
    for &j in cover {
        for i in 1..=l {
            moves.push(Move::new(GadgetInstance::chain_matroid(i), chain_label(j, i + 1), chain_label(j, i)));
        }
    }
    Ok(ReconfigSequence::new(moves))
}

/// Extracts a set cover from any valid sequence: every set whose chain head
/// `s:S:1` is free at some point.
pub fn sequence_to_cover(g: &GadgetInstance, seq: &ReconfigSequence) -> Result<Vec<usize>> {
    let report = verify(&g.matroids, &g.source, &g.target, seq);
    if !report.ok {
        let reason = report.reason.map(|r| r.to_string()).unwrap_or_default();
        return Err(Error::Contract(format!(
            "sequence fails verification at step {:?}: {reason}",
            report.failed_step
        )));
    }
    let heads: HashMap<ElementId, usize> =
        (0..g.set_cover.m()).map(|j| (chain_label(j, 1), j)).collect();
    // a removed element is free right after its move
    let chosen: BTreeSet<usize> = seq.iter().filter_map(|mv| heads.get(&mv.remove).copied()).collect();
    Ok(chosen.into_iter().collect())
}
