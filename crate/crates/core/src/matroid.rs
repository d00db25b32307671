//! Matroid descriptions and their basis oracles.
//!
//! [`MatroidSpec`] is the declarative, serializable description. [`Matroid`]
//! is the validated form that answers queries; it precomputes the lookups
//! (block membership, edge endpoints, part membership) that the closed-form
//! exchange tests need.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Black-box basis predicate.
pub type BasisQuery = Arc<dyn Fn(&ElementSet) -> bool + Send + Sync>;

/// A matroid known only through a basis oracle.
///
/// Ground set and rank cannot be recovered from the predicate with a
/// polynomial number of probes, so both are stated up front.
#[derive(Clone)]
pub struct OracleHook {
    pub ground: ElementSet,
    pub rank: usize,
    pub query: BasisQuery,
}

impl OracleHook {
    pub fn new<F>(ground: ElementSet, rank: usize, query: F) -> Self
    where
        F: Fn(&ElementSet) -> bool + Send + Sync + 'static,
    {
        OracleHook { ground, rank, query: Arc::new(query) }
    }
}

impl fmt::Debug for OracleHook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OracleHook")
            .field("ground", &self.ground)
            .field("rank", &self.rank)
            .finish_non_exhaustive()
    }
}

impl PartialEq for OracleHook {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground
            && self.rank == other.rank
            && Arc::ptr_eq(&self.query, &other.query)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionBlock {
    #[serde(deserialize_with = "distinct_elements")]
    pub elements: ElementSet,
    pub rank: usize,
}

impl PartitionBlock {
    pub fn new(elements: ElementSet, rank: usize) -> Self {
        PartitionBlock { elements, rank }
    }
}

/// Edge of a (multi)graph. The label is the matroid element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, ElementId)", into = "(usize, usize, ElementId)")]
pub struct GraphEdge {
    pub u: usize,
    pub v: usize,
    pub label: ElementId,
}

impl From<(usize, usize, ElementId)> for GraphEdge {
    fn from((u, v, label): (usize, usize, ElementId)) -> Self {
        GraphEdge { u, v, label }
    }
}

impl From<GraphEdge> for (usize, usize, ElementId) {
    fn from(e: GraphEdge) -> Self {
        (e.u, e.v, e.label)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatroidSpec {
    Uniform { elements: ElementSet, rank: usize },
    Partition { blocks: Vec<PartitionBlock> },
    Graphic { vertex_count: usize, edges: Vec<GraphEdge> },
    Dual { inner: Box<MatroidSpec> },
    DirectSum { parts: Vec<MatroidSpec> },
    Oracle(OracleHook),
}

impl MatroidSpec {
    pub fn uniform(elements: ElementSet, rank: usize) -> Self {
        MatroidSpec::Uniform { elements, rank }
    }

    pub fn partition(blocks: Vec<PartitionBlock>) -> Self {
        MatroidSpec::Partition { blocks }
    }

    pub fn graphic<L: Into<ElementId>>(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize, L)>,
    ) -> Self {
        let edges = edges
            .into_iter()
            .map(|(u, v, label)| GraphEdge { u, v, label: label.into() })
            .collect();
        MatroidSpec::Graphic { vertex_count, edges }
    }

    pub fn dual(inner: MatroidSpec) -> Self {
        MatroidSpec::Dual { inner: Box::new(inner) }
    }

    pub fn direct_sum(parts: Vec<MatroidSpec>) -> Self {
        MatroidSpec::DirectSum { parts }
    }
}

// JSON mirror of `MatroidSpec`. Oracle hooks have no wire form.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum SpecRepr {
    Uniform {
        #[serde(deserialize_with = "distinct_elements")]
        elements: ElementSet,
        rank: usize,
    },
    Partition {
        blocks: Vec<PartitionBlock>,
    },
    Graphic {
        vertices: usize,
        edges: Vec<GraphEdge>,
    },
    Dual {
        inner: Box<SpecRepr>,
    },
    DirectSum {
        parts: Vec<SpecRepr>,
    },
}

/// Reads a JSON array of labels into a set, rejecting repeated labels.
pub(crate) fn distinct_elements<'de, D: Deserializer<'de>>(d: D) -> Result<ElementSet, D::Error> {
    let items = Vec::<ElementId>::deserialize(d)?;
    let mut set = ElementSet::new();
    for item in items {
        if let Some(dup) = set.replace(item) {
            return Err(serde::de::Error::custom(format!("duplicate element label {dup}")));
        }
    }
    Ok(set)
}

impl From<SpecRepr> for MatroidSpec {
    fn from(r: SpecRepr) -> Self {
        match r {
            SpecRepr::Uniform { elements, rank } => MatroidSpec::Uniform { elements, rank },
            SpecRepr::Partition { blocks } => MatroidSpec::Partition { blocks },
            SpecRepr::Graphic { vertices, edges } => {
                MatroidSpec::Graphic { vertex_count: vertices, edges }
            }
            SpecRepr::Dual { inner } => MatroidSpec::Dual { inner: Box::new((*inner).into()) },
            SpecRepr::DirectSum { parts } => {
                MatroidSpec::DirectSum { parts: parts.into_iter().map(Into::into).collect() }
            }
        }
    }
}

impl TryFrom<&MatroidSpec> for SpecRepr {
    type Error = String;

    fn try_from(s: &MatroidSpec) -> Result<Self, String> {
        Ok(match s {
            MatroidSpec::Uniform { elements, rank } => {
                SpecRepr::Uniform { elements: elements.clone(), rank: *rank }
            }
            MatroidSpec::Partition { blocks } => SpecRepr::Partition { blocks: blocks.clone() },
            MatroidSpec::Graphic { vertex_count, edges } => {
                SpecRepr::Graphic { vertices: *vertex_count, edges: edges.clone() }
            }
            MatroidSpec::Dual { inner } => {
                SpecRepr::Dual { inner: Box::new(SpecRepr::try_from(inner.as_ref())?) }
            }
            MatroidSpec::DirectSum { parts } => SpecRepr::DirectSum {
                parts: parts.iter().map(SpecRepr::try_from).collect::<Result<_, _>>()?,
            },
            MatroidSpec::Oracle(_) => {
                return Err("oracle-hook matroids cannot be serialized".to_string())
            }
        })
    }
}

impl Serialize for MatroidSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpecRepr::try_from(self).map_err(serde::ser::Error::custom)?.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MatroidSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        SpecRepr::deserialize(deserializer).map(Into::into)
    }
}

#[derive(Clone, Debug)]
enum Repr {
    Uniform,
    Partition {
        block_of: HashMap<ElementId, usize>,
        blocks: Vec<PartitionBlock>,
    },
    Graphic {
        vertex_count: usize,
        ends: HashMap<ElementId, (usize, usize)>,
        connected: bool,
    },
    Dual(Box<Matroid>),
    DirectSum {
        parts: Vec<Matroid>,
        part_of: HashMap<ElementId, usize>,
    },
    Oracle(OracleHook),
}

/// A validated matroid answering basis queries.
#[derive(Clone, Debug)]
pub struct Matroid {
    spec: MatroidSpec,
    ground: ElementSet,
    repr: Repr,
}

impl TryFrom<MatroidSpec> for Matroid {
    type Error = Error;

    fn try_from(spec: MatroidSpec) -> Result<Self> {
        Matroid::new(spec)
    }
}

impl Matroid {
    /// Validates `spec` and precomputes its lookup tables.
    pub fn new(spec: MatroidSpec) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidMatroid(msg));
        let (ground, repr) = match &spec {
            MatroidSpec::Uniform { elements, rank } => {
                if *rank > elements.len() {
                    return invalid(format!(
                        "uniform rank {rank} exceeds {} elements",
                        elements.len()
                    ));
                }
                (elements.clone(), Repr::Uniform)
            }
            MatroidSpec::Partition { blocks } => {
                let mut block_of = HashMap::new();
                for (b, block) in blocks.iter().enumerate() {
                    if block.rank > block.elements.len() {
                        return invalid(format!(
                            "partition block {b} has rank {} but only {} elements",
                            block.rank,
                            block.elements.len()
                        ));
                    }
                    for e in &block.elements {
                        if let Some(prev) = block_of.insert(e.clone(), b) {
                            return invalid(format!("element {e} in partition blocks {prev} and {b}"));
                        }
                    }
                }
                let ground = block_of.keys().cloned().collect();
                (ground, Repr::Partition { block_of, blocks: blocks.clone() })
            }
            MatroidSpec::Graphic { vertex_count, edges } => {
                let mut ends = HashMap::new();
                let mut uf = UnionFind::new(*vertex_count);
                for edge in edges {
                    if edge.u >= *vertex_count || edge.v >= *vertex_count {
                        return invalid(format!(
                            "edge {} endpoint out of range for {vertex_count} vertices",
                            edge.label
                        ));
                    }
                    if ends.insert(edge.label.clone(), (edge.u, edge.v)).is_some() {
                        return invalid(format!("duplicate edge label {}", edge.label));
                    }
                    uf.union(edge.u, edge.v);
                }
                let connected = (1..*vertex_count).all(|v| uf.same(0, v));
                let ground = ends.keys().cloned().collect();
                (ground, Repr::Graphic { vertex_count: *vertex_count, ends, connected })
            }
            MatroidSpec::Dual { inner } => {
                let inner = Matroid::new((**inner).clone())?;
                (inner.ground.clone(), Repr::Dual(Box::new(inner)))
            }
            MatroidSpec::DirectSum { parts } => {
                let parts = parts.iter().cloned().map(Matroid::new).collect::<Result<Vec<_>>>()?;
                let mut part_of = HashMap::new();
                for (p, part) in parts.iter().enumerate() {
                    for e in &part.ground {
                        if let Some(prev) = part_of.insert(e.clone(), p) {
                            return invalid(format!("element {e} in direct-sum parts {prev} and {p}"));
                        }
                    }
                }
                let ground = part_of.keys().cloned().collect();
                (ground, Repr::DirectSum { parts, part_of })
            }
            MatroidSpec::Oracle(hook) => {
                if hook.rank > hook.ground.len() {
                    return invalid(format!(
                        "oracle rank {} exceeds ground size {}",
                        hook.rank,
                        hook.ground.len()
                    ));
                }
                (hook.ground.clone(), Repr::Oracle(hook.clone()))
            }
        };
        Ok(Matroid { spec, ground, repr })
    }

    pub fn spec(&self) -> &MatroidSpec {
        &self.spec
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    pub fn contains(&self, e: &ElementId) -> bool {
        self.ground.contains(e)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(match &self.repr {
            Repr::Uniform => match &self.spec {
                MatroidSpec::Uniform { rank, .. } => *rank,
                _ => unreachable!(),
            },
            Repr::Partition { blocks, .. } => blocks.iter().map(|b| b.rank).sum(),
            Repr::Graphic { vertex_count, connected, .. } => {
                if !connected {
                    return Err(Error::NoBasis("graph is disconnected".into()));
                }
                vertex_count.saturating_sub(1)
            }
            Repr::Dual(inner) => self.ground.len() - inner.rank()?,
            Repr::DirectSum { parts, .. } => {
                parts.iter().map(Matroid::rank).collect::<Result<Vec<_>>>()?.into_iter().sum()
            }
            Repr::Oracle(hook) => hook.rank,
        })
    }

    fn check_subset(&self, x: &ElementSet) -> Result<()> {
        match x.iter().find(|e| !self.ground.contains(*e)) {
            Some(e) => Err(Error::NotInGround(e.clone())),
            None => Ok(()),
        }
    }

    /// Basis oracle.
    pub fn is_basis(&self, x: &ElementSet) -> Result<bool> {
        self.check_subset(x)?;
        Ok(self.is_basis_unchecked(x))
    }

    fn is_basis_unchecked(&self, x: &ElementSet) -> bool {
        match &self.repr {
            Repr::Uniform => self.rank().map(|r| r == x.len()).unwrap_or(false),
            Repr::Partition { block_of, blocks } => {
                let mut counts = vec![0usize; blocks.len()];
                for e in x {
                    counts[block_of[e]] += 1;
                }
                counts.iter().zip(blocks).all(|(c, b)| *c == b.rank)
            }
            Repr::Graphic { vertex_count, ends, .. } => {
                if x.len() + 1 != *vertex_count && !(*vertex_count == 0 && x.is_empty()) {
                    return false;
                }
                // n-1 edges without a cycle span the graph
                let mut uf = UnionFind::new(*vertex_count);
                x.iter().all(|e| {
                    let (u, v) = ends[e];
                    uf.union(u, v)
                })
            }
            Repr::Dual(inner) => {
                let complement = self.ground.difference(x).cloned().collect();
                inner.is_basis_unchecked(&complement)
            }
            Repr::DirectSum { parts, part_of } => {
                let mut split = vec![ElementSet::new(); parts.len()];
                for e in x {
                    split[part_of[e]].insert(e.clone());
                }
                parts.iter().zip(&split).all(|(p, s)| p.is_basis_unchecked(s))
            }
            Repr::Oracle(hook) => x.len() == hook.rank && (hook.query)(x),
        }
    }

    /// Deterministic basis built greedily along the element order.
    pub fn canonical_basis(&self) -> Result<ElementSet> {
        match &self.repr {
            Repr::Uniform => Ok(self.ground.iter().take(self.rank()?).cloned().collect()),
            Repr::Partition { blocks, .. } => Ok(blocks
                .iter()
                .flat_map(|b| b.elements.iter().take(b.rank).cloned())
                .collect()),
            Repr::Graphic { vertex_count, ends, connected } => {
                if !connected {
                    return Err(Error::NoBasis("graph is disconnected".into()));
                }
                let mut uf = UnionFind::new(*vertex_count);
                Ok(self
                    .ground
                    .iter()
                    .filter(|e| {
                        let (u, v) = ends[*e];
                        uf.union(u, v)
                    })
                    .cloned()
                    .collect())
            }
            Repr::Dual(inner) => {
                let b = inner.canonical_basis()?;
                Ok(self.ground.difference(&b).cloned().collect())
            }
            Repr::DirectSum { parts, .. } => {
                let mut out = ElementSet::new();
                for p in parts {
                    out.extend(p.canonical_basis()?);
                }
                Ok(out)
            }
            Repr::Oracle(_) => Err(Error::NoBasis(
                "oracle-hook matroids have no canonical basis; supply one".into(),
            )),
        }
    }

    /// Whether `basis - remove + add` is a basis, assuming `basis` is one and
    /// `remove` belongs to it.
    pub(crate) fn exchange_ok(&self, basis: &ElementSet, remove: &ElementId, add: &ElementId) -> bool {
        if remove == add || basis.contains(add) || !self.ground.contains(add) {
            return false;
        }
        match &self.repr {
            Repr::Uniform => true,
            Repr::Partition { block_of, .. } => block_of.get(remove) == block_of.get(add),
            Repr::Graphic { vertex_count, ends, .. } => {
                let (u, v) = ends[add];
                let mut uf = tree_without(*vertex_count, ends, basis, remove);
                !uf.same(u, v)
            }
            Repr::Dual(inner) => {
                // ground \ (B - x + y) = C - y + x where C = ground \ B
                let complement: ElementSet = self.ground.difference(basis).cloned().collect();
                inner.exchange_ok(&complement, add, remove)
            }
            Repr::DirectSum { parts, part_of } => {
                let p = part_of[remove];
                if part_of[add] != p {
                    return false;
                }
                let part = &parts[p];
                let restricted = basis.iter().filter(|e| part.contains(e)).cloned().collect();
                part.exchange_ok(&restricted, remove, add)
            }
            Repr::Oracle(hook) => {
                let mut next = basis.clone();
                next.remove(remove);
                next.insert(add.clone());
                (hook.query)(&next)
            }
        }
    }

    /// All `y` outside `basis` such that `basis - x + y` is a basis.
    pub fn exchange_candidates(&self, basis: &ElementSet, x: &ElementId) -> Result<ElementSet> {
        if !self.is_basis(basis)? {
            return Err(Error::NotABasis(format!("{basis:?}")));
        }
        if !basis.contains(x) {
            return Err(Error::NotInBasis(x.clone()));
        }
        Ok(self.candidates_unchecked(basis, x))
    }

    pub(crate) fn candidates_unchecked(&self, basis: &ElementSet, x: &ElementId) -> ElementSet {
        let outside = || self.ground.iter().filter(|y| !basis.contains(*y));
        match &self.repr {
            Repr::Uniform => outside().cloned().collect(),
            Repr::Partition { block_of, blocks } => blocks[block_of[x]]
                .elements
                .iter()
                .filter(|y| !basis.contains(*y))
                .cloned()
                .collect(),
            Repr::Graphic { vertex_count, ends, .. } => {
                let mut uf = tree_without(*vertex_count, ends, basis, x);
                outside()
                    .filter(|y| {
                        let (u, v) = ends[*y];
                        !uf.same(u, v)
                    })
                    .cloned()
                    .collect()
            }
            Repr::Dual(inner) => {
                let complement: ElementSet = outside().cloned().collect();
                complement
                    .iter()
                    .filter(|y| inner.exchange_ok(&complement, y, x))
                    .cloned()
                    .collect()
            }
            Repr::DirectSum { parts, part_of } => {
                let part = &parts[part_of[x]];
                let restricted = basis.iter().filter(|e| part.contains(e)).cloned().collect();
                part.candidates_unchecked(&restricted, x)
            }
            Repr::Oracle(_) => outside().filter(|y| self.exchange_ok(basis, x, y)).cloned().collect(),
        }
    }
}

// Union-find over the spanning tree `basis` with edge `skip` deleted.
fn tree_without(
    vertex_count: usize,
    ends: &HashMap<ElementId, (usize, usize)>,
    basis: &ElementSet,
    skip: &ElementId,
) -> UnionFind {
    let mut uf = UnionFind::new(vertex_count);
    for e in basis.iter().filter(|e| *e != skip) {
        let (u, v) = ends[e];
        uf.union(u, v);
    }
    uf
}

/// Ground-set union of several matroids.
pub fn union_ground<'a>(matroids: impl IntoIterator<Item = &'a Matroid>) -> ElementSet {
    let mut seen = HashSet::new();
    let mut out = ElementSet::new();
    for m in matroids {
        for e in m.ground() {
            if seen.insert(e) {
                out.insert(e.clone());
            }
        }
    }
    out
}
