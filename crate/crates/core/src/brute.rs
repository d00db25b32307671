//! Exhaustive reference implementations for small instances.
//!
//! Nothing here uses exchange graphs or the closed-form exchange tests; the
//! only matroid access is the basis oracle, so these routines serve as
//! independent checks on the fast paths.

use std::collections::{HashMap, HashSet, VecDeque};

use itertools::Itertools;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{union_ground, Matroid};
use crate::sequence::{BasisSequence, Move, ReconfigSequence};

pub const DEFAULT_GROUND_CAP: usize = 16;
pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// All bases of `m`, in lexicographic order of their sorted element lists.
pub fn enumerate_bases(m: &Matroid, cap: usize) -> Result<Vec<ElementSet>> {
    let n = m.ground().len();
    if n > cap {
        return Err(Error::CapExceeded(format!("ground set of {n} elements exceeds cap {cap}")));
    }
    let r = m.rank()?;
    Ok(m.ground()
        .iter()
        .cloned()
        .combinations(r)
        .map(|c| c.into_iter().collect::<ElementSet>())
        .filter(|b| m.is_basis(b).unwrap_or(false))
        .collect())
}

// Elements of the union ground set as bit positions.
struct Bits {
    labels: Vec<ElementId>,
    pos: HashMap<ElementId, usize>,
}

impl Bits {
    fn new(matroids: &[Matroid]) -> Result<Self> {
        let labels: Vec<ElementId> = union_ground(matroids).into_iter().collect();
        if labels.len() > 64 {
            return Err(Error::CapExceeded(format!(
                "{} elements do not fit the 64-bit state encoding",
                labels.len()
            )));
        }
        let pos = labels.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Ok(Bits { labels, pos })
    }

    fn mask(&self, set: &ElementSet) -> u64 {
        set.iter().fold(0, |acc, e| acc | 1 << self.pos[e])
    }

    fn set(&self, mask: u64) -> ElementSet {
        (0..self.labels.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.labels[i].clone())
            .collect()
    }

    fn label(&self, bit: usize) -> ElementId {
        self.labels[bit].clone()
    }
}

fn bits_of(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

struct Enumerated {
    bits: Bits,
    grounds: Vec<u64>,
    bases: Vec<HashSet<u64>>,
}

fn enumerate_all(matroids: &[Matroid]) -> Result<Enumerated> {
    let bits = Bits::new(matroids)?;
    let grounds = matroids.iter().map(|m| bits.mask(m.ground())).collect();
    let bases = matroids
        .iter()
        .map(|m| {
            enumerate_bases(m, DEFAULT_GROUND_CAP)
                .map(|bs| bs.iter().map(|b| bits.mask(b)).collect::<HashSet<u64>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Enumerated { bits, grounds, bases })
}

/// Breadth-first search over feasible sequences. Returns the shortest move
/// count with one witness, or `None` when `target` is unreachable.
pub fn bfs_solve(
    matroids: &[Matroid],
    source: &BasisSequence,
    target: &BasisSequence,
    state_cap: usize,
) -> Result<Option<(usize, ReconfigSequence)>> {
    source.check_feasible(matroids).map_err(|e| e.of("source"))?;
    target.check_feasible(matroids).map_err(|e| e.of("target"))?;
    let en = enumerate_all(matroids)?;
    let encode = |s: &BasisSequence| s.bases().iter().map(|b| en.bits.mask(b)).collect::<Vec<u64>>();
    let start = encode(source);
    let goal = encode(target);

    // state -> (predecessor, move that led here)
    let mut parent: HashMap<Vec<u64>, Option<(Vec<u64>, Move)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut reached = false;
    while let Some(state) = queue.pop_front() {
        if state == goal {
            reached = true;
            break;
        }
        let occupied = state.iter().fold(0u64, |a, b| a | b);
        for (i, &b) in state.iter().enumerate() {
            let free = en.grounds[i] & !occupied;
            for x in bits_of(b) {
                for y in bits_of(free) {
                    let nb = (b & !(1 << x)) | 1 << y;
                    if !en.bases[i].contains(&nb) {
                        continue;
                    }
                    let mut next = state.clone();
                    next[i] = nb;
                    if parent.contains_key(&next) {
                        continue;
                    }
                    if parent.len() >= state_cap {
                        return Err(Error::CapExceeded(format!(
                            "state space exceeds {state_cap} states"
                        )));
                    }
                    let mv = Move { matroid: i, remove: en.bits.label(x), add: en.bits.label(y) };
                    parent.insert(next.clone(), Some((state.clone(), mv)));
                    queue.push_back(next);
                }
            }
        }
    }
    if !reached {
        return Ok(None);
    }
    let mut moves = Vec::new();
    let mut cur = goal;
    while let Some(Some((prev, mv))) = parent.get(&cur) {
        moves.push(mv.clone());
        cur = prev.clone();
    }
    moves.reverse();
    Ok(Some((moves.len(), ReconfigSequence::new(moves))))
}

/// Coloops of the matroid union, by enumerating all of its bases.
///
/// Every set `B_1 ∪ .. ∪ B_k` with `B_i` a basis of `M_i` is independent in
/// the union, and the largest of them are exactly its bases. The coloops
/// are the elements common to all of those.
pub fn brute_coloops(matroids: &[Matroid]) -> Result<ElementSet> {
    let en = enumerate_all(matroids)?;
    let mut unions: HashSet<u64> = HashSet::from([0]);
    for bases in &en.bases {
        unions = unions.iter().flat_map(|u| bases.iter().map(move |b| u | b)).collect();
    }
    let best = unions.iter().map(|u| u.count_ones()).max().unwrap_or(0);
    let common = unions
        .iter()
        .filter(|u| u.count_ones() == best)
        .fold(u64::MAX, |acc, u| acc & u);
    Ok(if unions.is_empty() { ElementSet::new() } else { en.bits.set(common) })
}

/// Every feasible sequence of `matroids`, in sorted order.
pub fn enumerate_feasible(matroids: &[Matroid], cap: usize) -> Result<Vec<BasisSequence>> {
    let per: Vec<Vec<ElementSet>> =
        matroids.iter().map(|m| enumerate_bases(m, DEFAULT_GROUND_CAP)).collect::<Result<_>>()?;
    let mut out: Vec<Vec<ElementSet>> = vec![Vec::new()];
    for bases in &per {
        let mut next = Vec::new();
        for partial in &out {
            for b in bases {
                if partial.iter().all(|p| p.is_disjoint(b)) {
                    let mut v = partial.clone();
                    v.push(b.clone());
                    next.push(v);
                    if next.len() > cap {
                        return Err(Error::CapExceeded(format!("more than {cap} feasible sequences")));
                    }
                }
            }
        }
        out = next;
    }
    let mut seqs: Vec<BasisSequence> = out.into_iter().map(BasisSequence::new).collect();
    seqs.sort();
    Ok(seqs)
}
