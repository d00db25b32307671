//! Tadpole walks: a directed cycle (possibly empty) followed by a directed
//! path that ends at a free element.
//!
//! Arcs are numbered `a_1 .. a_n` in walk order; the first `m` form the
//! cycle `x_0 -> .. -> x_m = x_0` and the rest the path `x_0 -> .. -> x_n`.
//! Vertices are ordered by position, with `x_0` (which is also `x_m`) first.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::exchange::{ExchangeArc, UnionExchangeGraph};
use crate::sequence::{BasisSequence, Move};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TadpoleWalk {
    /// `a_1 .. a_m`, starting and ending at `x_0`. Empty for a plain path.
    pub cycle: Vec<ExchangeArc>,
    /// `a_{m+1} .. a_n`, from `x_0` to a free element. Never empty.
    pub path: Vec<ExchangeArc>,
}

impl TadpoleWalk {
    pub fn new(cycle: Vec<ExchangeArc>, path: Vec<ExchangeArc>) -> Self {
        TadpoleWalk { cycle, path }
    }

    pub fn path_only(path: Vec<ExchangeArc>) -> Self {
        TadpoleWalk { cycle: Vec::new(), path }
    }

    /// Whether the walk carries a cycle.
    pub fn has_cycle(&self) -> bool {
        !self.cycle.is_empty()
    }

    /// Total number of arcs `n`.
    pub fn len(&self) -> usize {
        self.cycle.len() + self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Arcs `a_1 .. a_n`.
    pub fn arcs(&self) -> impl Iterator<Item = &ExchangeArc> {
        self.cycle.iter().chain(&self.path)
    }

    pub fn root(&self) -> &ElementId {
        &self.arcs().next().expect("walk has at least one arc").tail
    }

    /// `x_0 .. x_n`, with `x_m` repeating `x_0` when there is a cycle.
    pub fn vertices(&self) -> Vec<ElementId> {
        let mut v = vec![self.root().clone()];
        v.extend(self.arcs().map(|a| a.head.clone()));
        v
    }

    /// Free element the path ends at.
    pub fn end(&self) -> &ElementId {
        &self.path.last().expect("path is never empty").head
    }

    // Position of `tail(a_{l+1})` in the vertex order.
    fn tail_rank(&self, l: usize) -> usize {
        if l == self.cycle.len() {
            0
        } else {
            l
        }
    }

    /// Checks the structural invariants against `graph`.
    pub fn check(&self, graph: &UnionExchangeGraph) -> Result<(), String> {
        if self.path.is_empty() {
            return Err("path part is empty".into());
        }
        let arcs: Vec<&ExchangeArc> = self.arcs().collect();
        for a in &arcs {
            if !graph.has_arc(a.matroid, &a.tail, &a.head) {
                return Err(format!("arc {}->{} not in A_{}", a.tail, a.head, a.matroid));
            }
        }
        for w in arcs.windows(2) {
            if w[0].head != w[1].tail {
                return Err(format!("arcs do not chain at {}", w[0].head));
            }
            if w[0].matroid == w[1].matroid {
                return Err(format!("consecutive arcs share matroid {}", w[0].matroid));
            }
        }
        if let (Some(first), Some(last)) = (self.cycle.first(), self.cycle.last()) {
            if last.head != first.tail {
                return Err("cycle does not close".into());
            }
            if self.path[0].tail != first.tail {
                return Err("path does not start at the cycle root".into());
            }
        }
        let verts = self.vertices();
        let mut seen = HashSet::new();
        for (i, v) in verts.iter().enumerate() {
            if i == self.cycle.len() && self.has_cycle() {
                continue;
            }
            if !seen.insert(v) {
                return Err(format!("vertex {v} repeats"));
            }
        }
        if !graph.is_free(self.end()) {
            return Err(format!("end {} is not free", self.end()));
        }
        Ok(())
    }

    /// First shortcut `(a, a')` in scan order, as indices into `arcs()`.
    ///
    /// A shortcut is a same-matroid pair with `tail(a)` strictly before
    /// `tail(a')` such that `(tail(a), head(a'))` is also an arc.
    pub fn find_shortcut(&self, graph: &UnionExchangeGraph) -> Option<(usize, usize)> {
        let arcs: Vec<&ExchangeArc> = self.arcs().collect();
        let mut order: Vec<usize> = (0..arcs.len()).collect();
        order.sort_by_key(|&l| (self.tail_rank(l), l));
        for (pos, &s) in order.iter().enumerate() {
            for &t in &order[pos + 1..] {
                let (a, b) = (arcs[s], arcs[t]);
                if a.matroid == b.matroid
                    && self.tail_rank(s) < self.tail_rank(t)
                    && graph.has_arc(a.matroid, &a.tail, &b.head)
                {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn is_shortcut_free(&self, graph: &UnionExchangeGraph) -> bool {
        self.find_shortcut(graph).is_none()
    }

    /// Arc sets `W_1, W_2, ..` whose symmetric differences with the start
    /// are the successive states visited by [`walk_moves`].
    pub fn applied_subgraphs(&self) -> Vec<Vec<ExchangeArc>> {
        let arcs: Vec<ExchangeArc> = self.arcs().cloned().collect();
        let (n, m) = (arcs.len(), self.cycle.len());
        let mut out = Vec::new();
        // suffixes a_{n-p+1} .. a_n
        let peel_to = if m == 0 { n } else { n - 1 };
        for p in 1..=peel_to {
            out.push(arcs[n - p..].to_vec());
        }
        if m > 0 {
            // cycle plus a shrinking tail of the path, never including a_{m+1}
            for start in m + 1..=n {
                let mut w = self.cycle.clone();
                w.extend_from_slice(&arcs[start..]);
                out.push(w);
            }
        }
        out
    }
}

/// Discovers a tadpole walk that makes progress towards `target`.
///
/// Chases exchange arcs from the smallest element that sits in the wrong
/// basis, always moving to the smallest element the current basis is
/// missing. The chase ends at a free element (a path) or closes a cycle, in
/// which case the shortest route from the cycle to a free element is
/// attached and the cycle is re-rooted at the attachment point.
pub fn find_walk(graph: &UnionExchangeGraph, target: &BasisSequence) -> Result<TadpoleWalk> {
    let source = graph.snapshot();
    if source.len() != target.len() {
        return Err(Error::Contract("source and target have different lengths".into()));
    }
    let misplaced = |x: &ElementId| match source.owner(x) {
        Some(i) => !target.basis(i).contains(x),
        None => false,
    };
    let x0 = source
        .bases()
        .iter()
        .flatten()
        .filter(|x| misplaced(x))
        .min()
        .cloned()
        .ok_or_else(|| Error::Contract("source already equals target".into()))?;

    let mut chase: Vec<ExchangeArc> = Vec::new();
    let mut position: HashMap<ElementId, usize> = HashMap::from([(x0.clone(), 0)]);
    let mut cur = x0;
    loop {
        let i = source.owner(&cur).expect("chase stays inside the bases");
        let want = target.basis(i);
        let have = source.basis(i);
        let next = graph
            .out_arcs(&cur)
            .filter(|a| a.matroid == i && want.contains(&a.head) && !have.contains(&a.head))
            .map(|a| a.head.clone())
            .min()
            .ok_or_else(|| {
                Error::Internal(format!("no exchange for {cur} towards target basis {i}"))
            })?;
        chase.push(ExchangeArc { tail: cur, head: next.clone(), matroid: i });
        if graph.is_free(&next) {
            return Ok(TadpoleWalk::path_only(chase));
        }
        if let Some(&start) = position.get(&next) {
            let cycle = chase.split_off(start);
            return attach_tail(graph, cycle);
        }
        position.insert(next.clone(), chase.len());
        cur = next;
    }
}

// Shortest path from the cycle to a free element, then re-root the cycle.
fn attach_tail(graph: &UnionExchangeGraph, cycle: Vec<ExchangeArc>) -> Result<TadpoleWalk> {
    let mut sources: Vec<ElementId> = cycle.iter().map(|a| a.tail.clone()).collect();
    sources.sort();
    let mut parent: HashMap<ElementId, Option<ExchangeArc>> =
        sources.iter().map(|s| (s.clone(), None)).collect();
    let mut frontier: VecDeque<ElementId> = sources.into_iter().collect();
    let mut found: Option<ElementId> = None;
    while !frontier.is_empty() && found.is_none() {
        let mut next_layer = VecDeque::new();
        let mut free_here = ElementSet::new();
        for v in frontier.drain(..) {
            for a in graph.out_arcs(&v) {
                if parent.contains_key(&a.head) {
                    continue;
                }
                parent.insert(a.head.clone(), Some(a.clone()));
                if graph.is_free(&a.head) {
                    free_here.insert(a.head.clone());
                } else {
                    next_layer.push_back(a.head.clone());
                }
            }
        }
        found = free_here.into_iter().next();
        frontier = next_layer;
    }
    let end = found.ok_or_else(|| {
        Error::Internal("cycle cannot reach a free element although no cycle vertex is a coloop".into())
    })?;
    let mut path = Vec::new();
    let mut v = end;
    while let Some(Some(a)) = parent.get(&v) {
        v = a.tail.clone();
        path.push(a.clone());
    }
    path.reverse();
    let root = &path[0].tail;
    let k = cycle.iter().position(|a| &a.tail == root).expect("path starts on the cycle");
    let mut rooted = cycle[k..].to_vec();
    rooted.extend_from_slice(&cycle[..k]);
    Ok(TadpoleWalk::new(rooted, path))
}

/// Removes shortcuts one at a time until none is left.
///
/// Each splice replaces the stretch between a shortcut pair by the shortcut
/// arc, so the walk gets strictly shorter and the loop terminates.
pub fn remove_shortcuts(mut walk: TadpoleWalk, graph: &UnionExchangeGraph) -> TadpoleWalk {
    while let Some((s, t)) = walk.find_shortcut(graph) {
        walk = splice(walk, s, t);
    }
    walk
}

fn splice(walk: TadpoleWalk, s: usize, t: usize) -> TadpoleWalk {
    let m = walk.cycle.len();
    let TadpoleWalk { mut cycle, mut path } = walk;
    // the only way a path arc precedes a cycle arc is a = a_{m+1}, which
    // shares tail and matroid with a_1
    let s = if s >= m && t < m { 0 } else { s };
    let arc_at = |l: usize, cycle: &[ExchangeArc], path: &[ExchangeArc]| {
        if l < m {
            cycle[l].clone()
        } else {
            path[l - m].clone()
        }
    };
    let a = arc_at(s, &cycle, &path);
    let b = arc_at(t, &cycle, &path);
    let shortcut = ExchangeArc { tail: a.tail, head: b.head, matroid: a.matroid };
    match (s < m, t < m) {
        (true, true) => {
            cycle.splice(s..=t, [shortcut]);
            TadpoleWalk::new(cycle, path)
        }
        (false, false) => {
            path.splice(s - m..=t - m, [shortcut]);
            TadpoleWalk::new(cycle, path)
        }
        (true, false) => {
            cycle.rotate_left(s);
            let mut new_path = vec![shortcut];
            new_path.extend(path.drain(t - m + 1..));
            TadpoleWalk::new(cycle, new_path)
        }
        (false, true) => unreachable!("normalized above"),
    }
}

/// Expands a shortcut-free walk into single-exchange moves.
///
/// A plain path is applied back to front. With a cycle, the path and cycle
/// are first applied back to front up to `a_2`; then `a_1` replaces
/// `a_{m+1}`, and the remaining path arcs are undone front to back. The net
/// effect is the cycle alone.
pub fn walk_moves(
    walk: &TadpoleWalk,
    graph: &UnionExchangeGraph,
) -> Result<(Vec<Move>, BasisSequence)> {
    if let Err(e) = walk.check(graph) {
        return Err(Error::Contract(format!("not a tadpole walk: {e}")));
    }
    if !walk.is_shortcut_free(graph) {
        return Err(Error::Contract("walk has a shortcut".into()));
    }
    let arcs: Vec<&ExchangeArc> = walk.arcs().collect();
    let (n, m) = (arcs.len(), walk.cycle.len());
    let forward = |a: &ExchangeArc| Move { matroid: a.matroid, remove: a.tail.clone(), add: a.head.clone() };
    let mut moves = Vec::with_capacity(2 * n);
    if m == 0 {
        moves.extend(arcs.iter().rev().map(|a| forward(a)));
    } else {
        moves.extend(arcs[1..].iter().rev().map(|a| forward(a)));
        moves.push(Move {
            matroid: arcs[0].matroid,
            remove: arcs[m].head.clone(),
            add: arcs[0].head.clone(),
        });
        moves.extend(arcs[m + 1..].iter().map(|a| Move {
            matroid: a.matroid,
            remove: a.head.clone(),
            add: a.tail.clone(),
        }));
    }
    let mut state = graph.snapshot().clone();
    for mv in &moves {
        state.apply_unchecked(mv);
    }
    Ok((moves, state))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::set_of;
    use crate::exchange::build_union;
    use crate::matroid::{Matroid, MatroidSpec};

    fn seq(v: &[&[&str]]) -> BasisSequence {
        BasisSequence::new(v.iter().map(|b| set_of(b.iter().copied())).collect())
    }

    fn arc(t: &str, h: &str, i: usize) -> ExchangeArc {
        ExchangeArc::new(t, h, i)
    }

    fn u(labels: &[&str], r: usize) -> Matroid {
        Matroid::new(MatroidSpec::uniform(set_of(labels.iter().copied()), r)).unwrap()
    }

    #[test]
    fn single_exchange_path() {
        let g = build_union(&[u(&["a", "b", "c"], 2)], &seq(&[&["a", "b"]])).unwrap();
        let w = find_walk(&g, &seq(&[&["b", "c"]])).unwrap();
        assert_eq!(w, TadpoleWalk::path_only(vec![arc("a", "c", 0)]));
        let (moves, result) = walk_moves(&w, &g).unwrap();
        assert_eq!(moves, vec![Move::new(0, "a", "c")]);
        assert_eq!(result, seq(&[&["b", "c"]]));
    }

    #[test]
    fn swap_needs_a_cycle() {
        let m = u(&["a", "b", "c"], 1);
        let g = build_union(&[m.clone(), m], &seq(&[&["a"], &["b"]])).unwrap();
        let w = find_walk(&g, &seq(&[&["b"], &["a"]])).unwrap();
        assert_eq!(w.cycle, vec![arc("a", "b", 0), arc("b", "a", 1)]);
        assert_eq!(w.path, vec![arc("a", "c", 0)]);
        assert!(w.check(&g).is_ok());

        let w = remove_shortcuts(w, &g);
        let (moves, result) = walk_moves(&w, &g).unwrap();
        assert_eq!(
            moves,
            vec![Move::new(0, "a", "c"), Move::new(1, "b", "a"), Move::new(0, "c", "b")]
        );
        let states = crate::sequence::ReconfigSequence::new(moves).states(g.snapshot());
        assert_eq!(states[1], seq(&[&["c"], &["b"]]));
        assert_eq!(states[2], seq(&[&["c"], &["a"]]));
        assert_eq!(result, seq(&[&["b"], &["a"]]));
    }

    #[test]
    fn graphic_four_cycle_single_arc() {
        let m = Matroid::new(MatroidSpec::graphic(
            4,
            [(0, 1, "e1"), (1, 2, "e2"), (2, 3, "e3"), (3, 0, "e4")],
        ))
        .unwrap();
        let g = build_union(&[m], &seq(&[&["e1", "e2", "e3"]])).unwrap();
        let w = find_walk(&g, &seq(&[&["e2", "e3", "e4"]])).unwrap();
        assert_eq!(w, TadpoleWalk::path_only(vec![arc("e1", "e4", 0)]));
    }

    // x0 -(0)-> x1 -(1)-> x2 -(0)-> x3 with (x0, x3) also in A_0
    fn shortcut_instance() -> UnionExchangeGraph {
        let m0 = u(&["x0", "x1", "x2", "x3"], 2);
        let m1 = u(&["x1", "x2"], 1);
        build_union(&[m0, m1], &seq(&[&["x0", "x2"], &["x1"]])).unwrap()
    }

    #[test]
    fn path_shortcut_is_spliced() {
        let g = shortcut_instance();
        let w = TadpoleWalk::path_only(vec![arc("x0", "x1", 0), arc("x1", "x2", 1), arc("x2", "x3", 0)]);
        assert!(w.check(&g).is_ok());
        assert_eq!(w.find_shortcut(&g), Some((0, 2)));
        let fixed = remove_shortcuts(w, &g);
        assert_eq!(fixed, TadpoleWalk::path_only(vec![arc("x0", "x3", 0)]));
        assert!(fixed.is_shortcut_free(&g));
        assert!(walk_moves(
            &TadpoleWalk::path_only(vec![arc("x0", "x1", 0), arc("x1", "x2", 1), arc("x2", "x3", 0)]),
            &g
        )
        .is_err());
    }

    #[test]
    fn walks_with_one_arc_per_matroid_are_untouched() {
        let g = shortcut_instance();
        let w = TadpoleWalk::path_only(vec![arc("x1", "x2", 1), arc("x2", "x3", 0)]);
        assert_eq!(remove_shortcuts(w.clone(), &g), w);
    }

    #[test]
    fn shared_root_tail_is_exempt() {
        // cycle arc a_1 and path arc a_{m+1} both leave x_0 in matroid 0
        let m = u(&["a", "b", "c"], 1);
        let g = build_union(&[m.clone(), m], &seq(&[&["a"], &["b"]])).unwrap();
        let w = TadpoleWalk::new(vec![arc("a", "b", 0), arc("b", "a", 1)], vec![arc("a", "c", 0)]);
        assert_eq!(w.find_shortcut(&g), None);
        assert_eq!(remove_shortcuts(w.clone(), &g), w);
    }

    #[test]
    fn subgraphs_follow_the_moves() {
        let m = u(&["a", "b", "c"], 1);
        let g = build_union(&[m.clone(), m], &seq(&[&["a"], &["b"]])).unwrap();
        let w = find_walk(&g, &seq(&[&["b"], &["a"]])).unwrap();
        let subs = w.applied_subgraphs();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs[0], vec![arc("a", "c", 0)]);
        assert_eq!(subs[1], vec![arc("b", "a", 1), arc("a", "c", 0)]);
        assert_eq!(subs[2], w.cycle);
    }
}
