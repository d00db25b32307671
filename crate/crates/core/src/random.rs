//! Seeded random instances for property tests and the CLI.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{union_ground, Matroid, MatroidSpec, PartitionBlock};
use crate::instance::ProblemInstance;
use crate::sequence::{BasisSequence, Move};
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Uniform,
    Partition,
    Graphic,
    Mixed,
}

impl Profile {
    pub const ALL: [Profile; 4] = [Profile::Uniform, Profile::Partition, Profile::Graphic, Profile::Mixed];
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "uniform" => Ok(Profile::Uniform),
            "partition" => Ok(Profile::Partition),
            "graphic" => Ok(Profile::Graphic),
            "mixed" => Ok(Profile::Mixed),
            other => Err(format!("unknown profile {other:?}")),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Uniform => "uniform",
            Profile::Partition => "partition",
            Profile::Graphic => "graphic",
            Profile::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RandomConfig {
    pub seed: u64,
    /// Number of matroids, 1..=8.
    pub k: usize,
    pub profile: Profile,
    /// Size of the union of the ground sets, 1..=4096.
    pub size: usize,
    /// Reach the target by a random walk of legal moves (always a
    /// yes-instance) instead of sampling it independently.
    pub target_by_walk: bool,
}

impl RandomConfig {
    pub fn new(seed: u64, k: usize, profile: Profile, size: usize) -> Self {
        RandomConfig { seed, k, profile, size, target_by_walk: false }
    }

    pub fn with_walk(mut self, walk: bool) -> Self {
        self.target_by_walk = walk;
        self
    }
}

const SAMPLE_ATTEMPTS: usize = 64;
const MATROID_ATTEMPTS: usize = 16;

/// Generates an instance deterministically from `cfg.seed`.
pub fn random_instance(cfg: &RandomConfig) -> Result<ProblemInstance> {
    if !(1..=8).contains(&cfg.k) {
        return Err(Error::Generation(format!("k = {} outside 1..=8", cfg.k)));
    }
    if !(1..=4096).contains(&cfg.size) {
        return Err(Error::Generation(format!("size = {} outside 1..=4096", cfg.size)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let universe: Vec<ElementId> = (0..cfg.size as i64).map(ElementId::Int).collect();
    for _ in 0..MATROID_ATTEMPTS {
        let matroids = (0..cfg.k)
            .map(|_| Matroid::new(random_spec(&mut rng, &universe, cfg)))
            .collect::<Result<Vec<_>>>()?;
        let Some(source) = random_feasible(&mut rng, &matroids)? else {
            continue;
        };
        let target = if cfg.target_by_walk {
            random_walk(&mut rng, &matroids, &source, 3 * cfg.size)
        } else {
            match random_feasible(&mut rng, &matroids)? {
                Some(t) => t,
                None => continue,
            }
        };
        return ProblemInstance::new(matroids, source, target);
    }
    Err(Error::Generation(format!(
        "no feasible basis sequence found for seed {} after {MATROID_ATTEMPTS} tries",
        cfg.seed
    )))
}

/// Instance from the given matroids with sampled source and target.
pub fn instance_for(
    seed: u64,
    matroids: Vec<Matroid>,
    target_by_walk: bool,
) -> Result<ProblemInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total: usize = matroids.iter().map(|m| m.rank()).collect::<Result<Vec<_>>>()?.iter().sum();
    let ground = union_ground(&matroids).len();
    if total > ground {
        return Err(Error::Generation(format!(
            "ranks sum to {total} but only {ground} elements exist"
        )));
    }
    let source = random_feasible(&mut rng, &matroids)?
        .ok_or_else(|| Error::Generation("no feasible basis sequence found".into()))?;
    let target = if target_by_walk {
        random_walk(&mut rng, &matroids, &source, 3 * ground)
    } else {
        random_feasible(&mut rng, &matroids)?
            .ok_or_else(|| Error::Generation("no feasible basis sequence found".into()))?
    };
    ProblemInstance::new(matroids, source, target)
}

fn random_spec(rng: &mut ChaCha8Rng, universe: &[ElementId], cfg: &RandomConfig) -> MatroidSpec {
    let n = universe.len();
    let lo = (n / 2).max(1);
    let size = rng.gen_range(lo..=n);
    let mut ground: Vec<ElementId> = universe.choose_multiple(rng, size).cloned().collect();
    ground.sort();
    let budget = (size / cfg.k).max(1);
    let kind = match cfg.profile {
        Profile::Mixed => Profile::ALL[rng.gen_range(0..3)],
        p => p,
    };
    let spec = match kind {
        Profile::Uniform => {
            let top = budget.min(size);
            MatroidSpec::uniform(ground.iter().cloned().collect(), rng.gen_range(top / 2..=top))
        }
        Profile::Partition => {
            let parts = rng.gen_range(1..=3.min(size));
            let mut blocks = vec![ElementSet::new(); parts];
            for (i, e) in ground.iter().enumerate() {
                // first `parts` elements seed the blocks so none is empty
                let b = if i < parts { i } else { rng.gen_range(0..parts) };
                blocks[b].insert(e.clone());
            }
            let per = budget.div_ceil(parts);
            MatroidSpec::partition(
                blocks
                    .into_iter()
                    .map(|b| {
                        let top = per.min(b.len());
                        let r = rng.gen_range(top / 2..=top);
                        PartitionBlock::new(b, r)
                    })
                    .collect(),
            )
        }
        _ => random_graph(rng, &ground, budget),
    };
    if cfg.profile == Profile::Mixed && rng.gen_bool(0.2) {
        let m = Matroid::new(spec.clone()).expect("generated specs are valid");
        if let Ok(r) = m.rank() {
            if size - r <= budget {
                return MatroidSpec::dual(spec);
            }
        }
    }
    spec
}

fn random_graph(rng: &mut ChaCha8Rng, labels: &[ElementId], budget: usize) -> MatroidSpec {
    let mut labels = labels.to_vec();
    labels.shuffle(rng);
    let top = budget.min(labels.len());
    let vertices = rng.gen_range(top / 2..=top) + 1;
    let mut edges = Vec::with_capacity(labels.len());
    for (i, label) in labels.into_iter().enumerate() {
        let (u, v) = if i + 1 < vertices {
            // spanning tree: vertex i+1 hangs off an earlier vertex
            (rng.gen_range(0..=i), i + 1)
        } else if rng.gen_bool(0.1) {
            let v = rng.gen_range(0..vertices);
            (v, v)
        } else {
            (rng.gen_range(0..vertices), rng.gen_range(0..vertices))
        };
        edges.push((u, v, label));
    }
    MatroidSpec::graphic(vertices, edges)
}

/// Random basis `X` of `m` with `required ⊆ X ⊆ allowed`.
fn sample_basis(
    rng: &mut ChaCha8Rng,
    m: &Matroid,
    allowed: &ElementSet,
    required: &ElementSet,
) -> Result<Option<ElementSet>> {
    let pick = |rng: &mut ChaCha8Rng, pool: &ElementSet, req: &ElementSet, r: usize| {
        if req.len() > r {
            return None;
        }
        let mut rest: Vec<&ElementId> = pool.iter().filter(|e| !req.contains(*e)).collect();
        if req.len() + rest.len() < r {
            return None;
        }
        rest.shuffle(rng);
        let mut out = req.clone();
        out.extend(rest.into_iter().take(r - req.len()).cloned());
        Some(out)
    };
    let within = |set: &ElementSet, pool: &ElementSet| -> ElementSet { set.intersection(pool).cloned().collect() };
    Ok(match m.spec() {
        MatroidSpec::Uniform { elements, rank } => {
            pick(rng, &within(allowed, elements), &within(required, elements), *rank)
        }
        MatroidSpec::Partition { blocks } => {
            let mut out = ElementSet::new();
            for b in blocks {
                match pick(rng, &within(allowed, &b.elements), &within(required, &b.elements), b.rank) {
                    Some(part) => out.extend(part),
                    None => return Ok(None),
                }
            }
            Some(out)
        }
        MatroidSpec::Graphic { vertex_count, edges } => {
            let mut uf = UnionFind::new(*vertex_count);
            let mut out = ElementSet::new();
            for e in edges.iter().filter(|e| required.contains(&e.label)) {
                if !uf.union(e.u, e.v) {
                    return Ok(None);
                }
                out.insert(e.label.clone());
            }
            let mut rest: Vec<_> = edges
                .iter()
                .filter(|e| allowed.contains(&e.label) && !required.contains(&e.label))
                .collect();
            rest.shuffle(rng);
            for e in rest {
                if uf.union(e.u, e.v) {
                    out.insert(e.label.clone());
                }
            }
            (out.len() + 1 == *vertex_count || *vertex_count == 0 && out.is_empty()).then_some(out)
        }
        MatroidSpec::Dual { .. } | MatroidSpec::DirectSum { .. } => {
            return sample_composite(rng, m, allowed, required)
        }
        MatroidSpec::Oracle(_) => {
            return Err(Error::Generation("cannot sample bases of an oracle-hook matroid".into()))
        }
    })
}

fn sample_composite(
    rng: &mut ChaCha8Rng,
    m: &Matroid,
    allowed: &ElementSet,
    required: &ElementSet,
) -> Result<Option<ElementSet>> {
    match m.spec() {
        MatroidSpec::Dual { inner } => {
            // X is a dual basis iff ground \ X is an inner basis
            let inner = Matroid::new((**inner).clone())?;
            let ground = inner.ground();
            let inner_allowed: ElementSet = ground.difference(required).cloned().collect();
            let inner_required: ElementSet = ground.difference(allowed).cloned().collect();
            Ok(sample_basis(rng, &inner, &inner_allowed, &inner_required)?
                .map(|y| ground.difference(&y).cloned().collect()))
        }
        MatroidSpec::DirectSum { parts } => {
            let mut out = ElementSet::new();
            for p in parts {
                let p = Matroid::new(p.clone())?;
                match sample_basis(rng, &p, allowed, required)? {
                    Some(b) => out.extend(b),
                    None => return Ok(None),
                }
            }
            Ok(Some(out))
        }
        _ => unreachable!(),
    }
}

// Greedy, matroid by matroid, with restarts.
fn random_feasible(rng: &mut ChaCha8Rng, matroids: &[Matroid]) -> Result<Option<BasisSequence>> {
    let total: usize = match matroids.iter().map(|m| m.rank()).collect::<Result<Vec<_>>>() {
        Ok(r) => r.iter().sum(),
        Err(_) => return Ok(None),
    };
    if total > union_ground(matroids).len() {
        return Ok(None);
    }
    'attempt: for _ in 0..SAMPLE_ATTEMPTS {
        let mut used = ElementSet::new();
        let mut bases = Vec::with_capacity(matroids.len());
        for m in matroids {
            let allowed: ElementSet = m.ground().difference(&used).cloned().collect();
            match sample_basis(rng, m, &allowed, &ElementSet::new())? {
                Some(b) => {
                    used.extend(b.iter().cloned());
                    bases.push(b);
                }
                None => continue 'attempt,
            }
        }
        return Ok(Some(BasisSequence::new(bases)));
    }
    Ok(None)
}

/// Applies up to `steps` uniformly chosen legal moves.
pub fn random_walk(
    rng: &mut ChaCha8Rng,
    matroids: &[Matroid],
    start: &BasisSequence,
    steps: usize,
) -> BasisSequence {
    let mut state = start.clone();
    for _ in 0..steps {
        let occupied = state.occupied();
        let mut options = Vec::new();
        for (i, m) in matroids.iter().enumerate() {
            let basis = state.basis(i);
            for x in basis {
                for y in m.ground().iter().filter(|y| !occupied.contains(*y)) {
                    if m.exchange_ok(basis, x, y) {
                        options.push(Move { matroid: i, remove: x.clone(), add: y.clone() });
                    }
                }
            }
        }
        match options.choose(rng) {
            Some(mv) => state.apply_unchecked(mv),
            None => break,
        }
    }
    state
}
