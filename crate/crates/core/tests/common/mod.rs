//! Shared seeded corpus for the integration tests.

#![allow(dead_code)]

use basis_reconfig::random::instance_for;
use basis_reconfig::{random_instance, BasisSequence, Error, ProblemInstance, Profile, RandomConfig};

/// Deterministic corpus over k in 1..=3, every profile, |E| in 3..=10,
/// half with walk-reached targets. Every fifth multi-matroid seed instead
/// uses k copies of one matroid with the source bases rotated as target,
/// which is where no-instances live. Seeds the generator cannot satisfy are
/// skipped, so the corpus may come out slightly smaller than `count`
/// candidates would suggest; callers assert the size they need.
pub fn corpus(count: usize, offset: u64) -> Vec<ProblemInstance> {
    corpus_with(count, offset, |seed| 1 + (seed % 3) as usize)
}

pub fn single_matroid_corpus(count: usize, offset: u64) -> Vec<ProblemInstance> {
    corpus_with(count, offset, |_| 1)
}

fn corpus_with(count: usize, offset: u64, k_of: impl Fn(u64) -> usize) -> Vec<ProblemInstance> {
    let mut out = Vec::with_capacity(count);
    let mut seed = offset;
    while out.len() < count {
        let profile = Profile::ALL[((seed / 3) % 4) as usize];
        let size = 3 + (seed % 8) as usize;
        let cfg = RandomConfig::new(seed, k_of(seed), profile, size).with_walk(seed.is_multiple_of(2));
        let made = if cfg.k > 1 && seed % 5 == 4 { rotated(&cfg) } else { random_instance(&cfg) };
        match made {
            Ok(inst) => out.push(inst),
            Err(Error::Generation(_)) => {}
            Err(e) => panic!("seed {seed}: {e}"),
        }
        seed += 1;
        assert!(seed - offset < 20 * count as u64 + 100, "generator keeps failing");
    }
    out
}

fn rotated(cfg: &RandomConfig) -> Result<ProblemInstance, Error> {
    let one = random_instance(cfg)?;
    let copies = vec![one.matroids[0].clone(); cfg.k];
    let inst = instance_for(cfg.seed, copies, false)?;
    let mut bases = inst.source.bases().to_vec();
    bases.rotate_left(1);
    ProblemInstance::new(inst.matroids, inst.source, BasisSequence::new(bases))
}
