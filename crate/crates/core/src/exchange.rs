//! Exchangeability graphs and coloops of the matroid union.
//!
//! For a basis `B` of `M`, the exchangeability graph has an arc `(x, y)`
//! whenever `x ∈ B`, `y ∉ B` and `B - x + y` is again a basis. The union
//! graph of a feasible sequence overlays these graphs for every matroid; an
//! element of the union of the bases is a coloop of the matroid union iff
//! it cannot reach a free element in that graph.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{union_ground, Matroid};
use crate::sequence::BasisSequence;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeArc {
    /// Leaves basis `matroid`.
    pub tail: ElementId,
    /// Enters basis `matroid`.
    pub head: ElementId,
    pub matroid: usize,
}

impl ExchangeArc {
    pub fn new(tail: impl Into<ElementId>, head: impl Into<ElementId>, matroid: usize) -> Self {
        ExchangeArc { tail: tail.into(), head: head.into(), matroid }
    }
}

fn arcs_of(m: &Matroid, basis: &ElementSet, index: usize) -> Vec<ExchangeArc> {
    let mut arcs = Vec::new();
    for x in basis {
        for y in m.candidates_unchecked(basis, x) {
            arcs.push(ExchangeArc { tail: x.clone(), head: y, matroid: index });
        }
    }
    arcs
}

/// Arcs of the exchangeability graph of one matroid, tagged with index 0.
pub fn build_single(m: &Matroid, basis: &ElementSet) -> Result<Vec<ExchangeArc>> {
    if !m.is_basis(basis)? {
        return Err(Error::NotABasis(format!("{basis:?}")));
    }
    Ok(arcs_of(m, basis, 0))
}

/// Union of the per-matroid exchangeability graphs of a feasible sequence.
#[derive(Clone, Debug)]
pub struct UnionExchangeGraph {
    vertices: ElementSet,
    snapshot: BasisSequence,
    occupied: ElementSet,
    // sorted by (matroid, tail, head)
    arcs: Vec<ExchangeArc>,
    arc_sets: Vec<HashSet<(ElementId, ElementId)>>,
    out: HashMap<ElementId, Vec<usize>>,
    incoming: HashMap<ElementId, Vec<usize>>,
}

/// Builds the union exchangeability graph. Fails if `seq` is not feasible.
pub fn build_union(matroids: &[Matroid], seq: &BasisSequence) -> Result<UnionExchangeGraph> {
    seq.check_feasible(matroids)?;
    let mut arcs = Vec::new();
    let mut arc_sets = Vec::with_capacity(matroids.len());
    for (i, (m, b)) in matroids.iter().zip(seq.bases()).enumerate() {
        let single = arcs_of(m, b, i);
        arc_sets.push(single.iter().map(|a| (a.tail.clone(), a.head.clone())).collect());
        arcs.extend(single);
    }
    let mut out: HashMap<ElementId, Vec<usize>> = HashMap::new();
    let mut incoming: HashMap<ElementId, Vec<usize>> = HashMap::new();
    for (idx, a) in arcs.iter().enumerate() {
        out.entry(a.tail.clone()).or_default().push(idx);
        incoming.entry(a.head.clone()).or_default().push(idx);
    }
    // adjacency in (head, matroid) order so searches are deterministic
    for list in out.values_mut() {
        list.sort_by(|&p, &q| (&arcs[p].head, arcs[p].matroid).cmp(&(&arcs[q].head, arcs[q].matroid)));
    }
    Ok(UnionExchangeGraph {
        vertices: union_ground(matroids),
        occupied: seq.occupied(),
        snapshot: seq.clone(),
        arcs,
        arc_sets,
        out,
        incoming,
    })
}

impl UnionExchangeGraph {
    pub fn vertices(&self) -> &ElementSet {
        &self.vertices
    }

    pub fn arcs(&self) -> &[ExchangeArc] {
        &self.arcs
    }

    pub fn snapshot(&self) -> &BasisSequence {
        &self.snapshot
    }

    pub fn matroid_count(&self) -> usize {
        self.arc_sets.len()
    }

    pub fn has_arc(&self, matroid: usize, tail: &ElementId, head: &ElementId) -> bool {
        self.arc_sets
            .get(matroid)
            .is_some_and(|s| s.contains(&(tail.clone(), head.clone())))
    }

    pub fn out_arcs<'a>(&'a self, v: &ElementId) -> impl Iterator<Item = &'a ExchangeArc> + 'a {
        self.out.get(v).into_iter().flatten().map(move |&i| &self.arcs[i])
    }

    pub fn in_arcs<'a>(&'a self, v: &ElementId) -> impl Iterator<Item = &'a ExchangeArc> + 'a {
        self.incoming.get(v).into_iter().flatten().map(move |&i| &self.arcs[i])
    }

    /// Element outside every basis of the snapshot.
    pub fn is_free(&self, v: &ElementId) -> bool {
        self.vertices.contains(v) && !self.occupied.contains(v)
    }

    pub fn free_vertices(&self) -> ElementSet {
        self.vertices.difference(&self.occupied).cloned().collect()
    }

    /// Graphviz rendering, arcs colored by matroid index.
    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 8] =
            ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"];
        let mut s = String::from("digraph exchange {\n");
        for v in &self.vertices {
            let shape = match self.snapshot.owner(v) {
                Some(i) => format!("shape=box, label=\"{v}\\nB{i}\""),
                None => format!("shape=ellipse, label=\"{v}\""),
            };
            let _ = writeln!(s, "  \"{v}\" [{shape}];");
        }
        for a in &self.arcs {
            let color = COLORS[a.matroid % COLORS.len()];
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [color={color}, label=\"{}\"];",
                a.tail, a.head, a.matroid
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Every vertex with a directed path into `targets`, targets included.
pub fn coreachable(graph: &UnionExchangeGraph, targets: &ElementSet) -> Result<ElementSet> {
    if let Some(t) = targets.iter().find(|t| !graph.vertices.contains(*t)) {
        return Err(Error::NotInGround(t.clone()));
    }
    let mut seen: ElementSet = targets.clone();
    let mut queue: VecDeque<ElementId> = targets.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        for a in graph.in_arcs(&v) {
            if seen.insert(a.tail.clone()) {
                queue.push_back(a.tail.clone());
            }
        }
    }
    Ok(seen)
}

/// Coloops of the union of `matroids`, computed from one feasible sequence.
pub fn coloops(matroids: &[Matroid], seq: &BasisSequence) -> Result<ElementSet> {
    let graph = build_union(matroids, seq)?;
    Ok(coloops_in(&graph))
}

pub(crate) fn coloops_in(graph: &UnionExchangeGraph) -> ElementSet {
    let reach = coreachable(graph, &graph.free_vertices()).expect("free vertices are vertices");
    graph.occupied.difference(&reach).cloned().collect()
}
