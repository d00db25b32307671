//! Acceptance harness. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion failed. Runs without the libtest harness so the
//! lines are never captured.

mod common;

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use basis_reconfig::brute::{bfs_solve, brute_coloops, DEFAULT_STATE_CAP};
use basis_reconfig::gadget::{build_gadget, cover_to_sequence, sequence_to_cover};
use basis_reconfig::random::instance_for;
use basis_reconfig::{
    coloops, decide, set_of, solve, union_ground, verify, BasisSequence, ElementId, ElementSet,
    Matroid, MatroidSpec, PartitionBlock, ProblemInstance, SetCoverInstance,
};

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn report(id: usize, title: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, title, pass, detail }
}

fn ground_of(inst: &ProblemInstance) -> usize {
    union_ground(&inst.matroids).len()
}

fn coloop_partition(matroids: &[Matroid], seq: &BasisSequence) -> Vec<ElementSet> {
    let k = coloops(matroids, seq).expect("feasible state");
    seq.bases().iter().map(|b| b.intersection(&k).cloned().collect()).collect()
}

// Criteria 1, 2 and 7 share the corpus.
fn decision_and_solve(corpus: &[ProblemInstance]) -> Vec<Outcome> {
    let start = Instant::now();
    let (mut agree, mut yes, mut mismatches) = (0, 0, Vec::new());
    let (mut solved, mut verified, mut within, mut conserved, mut prefixes) = (0, 0, 0, 0, 0);
    let mut solve_issues = Vec::new();
    for (n, inst) in corpus.iter().enumerate() {
        let fast = decide(&inst.matroids, &inst.source, &inst.target).expect("decide");
        let brute = bfs_solve(&inst.matroids, &inst.source, &inst.target, DEFAULT_STATE_CAP)
            .expect("bfs within caps")
            .is_some();
        if fast == brute {
            agree += 1;
        } else {
            mismatches.push(n);
        }
        let out = solve(&inst.matroids, &inst.source, &inst.target).expect("solve");
        let Some(seq) = out else { continue };
        yes += 1;
        solved += 1;
        let r = verify(&inst.matroids, &inst.source, &inst.target, &seq);
        if r.ok {
            verified += 1;
        } else {
            solve_issues.push(format!("#{n} verify: {:?}", r.reason));
        }
        let e = ground_of(inst);
        if seq.len() <= 2 * e * e {
            within += 1;
        } else {
            solve_issues.push(format!("#{n} length {} > {}", seq.len(), 2 * e * e));
        }
        let base = coloop_partition(&inst.matroids, &inst.source);
        let states = seq.states(&inst.source);
        prefixes += states.len();
        if states.iter().all(|s| coloop_partition(&inst.matroids, s) == base) {
            conserved += 1;
        }
    }
    let elapsed = start.elapsed();
    let total = corpus.len();
    vec![
        report(
            1,
            "decide agrees with exhaustive search",
            total >= 1000 && agree == total && elapsed < Duration::from_secs(60),
            format!(
                "{agree}/{total} agree ({yes} yes-instances), mismatches {mismatches:?}, {:.1}s with solve",
                elapsed.as_secs_f64()
            ),
        ),
        report(
            2,
            "solve output verifies within 2|E|^2",
            solved > 0 && verified == solved && within == solved,
            format!("{verified}/{solved} verified, {within}/{solved} within bound {solve_issues:?}"),
        ),
        report(
            7,
            "coloop partition conserved on every prefix",
            solved > 0 && conserved == solved,
            format!("{conserved}/{solved} sequences, {prefixes} prefix states checked"),
        ),
    ]
}

fn single_matroid_exactness() -> Outcome {
    let corpus = common::single_matroid_corpus(300, 50_000);
    let mut exact = 0;
    let mut off = Vec::new();
    for (n, inst) in corpus.iter().enumerate() {
        let seq = solve(&inst.matroids, &inst.source, &inst.target)
            .expect("solve")
            .expect("one matroid is always reconfigurable");
        let d = inst.source.distance(&inst.target).unwrap();
        if seq.len() * 2 == d {
            exact += 1;
        } else {
            off.push((n, seq.len(), d));
        }
    }
    let total = corpus.len();
    report(
        3,
        "single matroid length is half the distance",
        total >= 200 && exact == total,
        format!("{exact}/{total} exact, off {off:?}"),
    )
}

fn coloop_oracle(corpus: &[ProblemInstance]) -> Outcome {
    let mut agree = 0;
    let mut off = Vec::new();
    for (n, inst) in corpus.iter().enumerate() {
        let fast = coloops(&inst.matroids, &inst.source).unwrap();
        let slow = brute_coloops(&inst.matroids).unwrap();
        if fast == slow {
            agree += 1;
        } else {
            off.push(n);
        }
    }
    let total = corpus.len();
    report(
        4,
        "coloops agree with enumeration",
        total >= 500 && agree == total,
        format!("{agree}/{total} agree, mismatches {off:?}"),
    )
}

fn k4_no_instance() -> Outcome {
    let k4 = MatroidSpec::graphic(
        4,
        [(0, 1, "01"), (0, 2, "02"), (0, 3, "03"), (1, 2, "12"), (1, 3, "13"), (2, 3, "23")],
    );
    let m = Matroid::new(k4).unwrap();
    let ms = vec![m.clone(), m];
    let path = set_of(["01", "12", "23"]);
    let claw = set_of(["02", "03", "13"]);
    let source = BasisSequence::new(vec![path.clone(), claw.clone()]);
    let target = BasisSequence::new(vec![claw, path]);
    let yes = decide(&ms, &source, &target).unwrap();
    let k = coloops(&ms, &source).unwrap();
    let all = union_ground(&ms);
    let brute = bfs_solve(&ms, &source, &target, DEFAULT_STATE_CAP).unwrap();
    report(
        5,
        "K4 two spanning trees cannot swap",
        !yes && k == all && brute.is_none(),
        format!("decide={yes}, |coloops|={} of {}, bfs reachable={}", k.len(), all.len(), brute.is_some()),
    )
}

fn random_set_cover(rng: &mut ChaCha8Rng, n: usize, m: usize) -> SetCoverInstance {
    let universe: Vec<ElementId> = (0..n).map(|i| ElementId::name(&format!("u{i}"))).collect();
    let mut sets: Vec<Vec<ElementId>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=n);
            universe.choose_multiple(rng, size).cloned().collect()
        })
        .collect();
    for u in &universe {
        if !sets.iter().any(|s| s.contains(u)) {
            let j = rng.gen_range(0..m);
            sets[j].push(u.clone());
        }
    }
    SetCoverInstance::new(universe, sets).unwrap()
}

fn gadget_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut instances, mut covers, mut good) = (0, 0, 0);
    let mut issues = Vec::new();
    for n in 4..=6 {
        for m in 1..=6 {
            for _ in 0..3 {
                let sc = random_set_cover(&mut rng, n, m);
                let g = build_gadget(&sc).unwrap();
                instances += 1;
                for mask in 1u32..1 << m {
                    let cover: Vec<usize> = (0..m).filter(|j| mask >> j & 1 == 1).collect();
                    if !sc.is_cover(&cover) {
                        continue;
                    }
                    covers += 1;
                    let seq = cover_to_sequence(&g, &cover).unwrap();
                    let len_ok = seq.len() == 2 * cover.len() * g.chain_len + 7 * n;
                    let ok = verify(&g.matroids, &g.source, &g.target, &seq).ok;
                    let back = sequence_to_cover(&g, &seq).unwrap();
                    let bound_ok = sc.is_cover(&back) && back.len() <= seq.len() / (2 * g.chain_len);
                    if len_ok && ok && bound_ok {
                        good += 1;
                    } else if issues.len() < 5 {
                        issues.push(format!("n={n} m={m} cover={cover:?}: len {len_ok} verify {ok} back {bound_ok}"));
                    }
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        6,
        "gadget length is 2|C|L + 7n",
        covers > 0 && good == covers && elapsed < Duration::from_secs(120),
        format!("{good}/{covers} covers over {instances} instances, {:.1}s {issues:?}", elapsed.as_secs_f64()),
    )
}

fn performance_smoke() -> Outcome {
    let elements: Vec<ElementId> = (0..200).map(ElementId::Int).collect();
    let partition = |shift: usize| {
        let mut blocks = vec![ElementSet::new(); 10];
        for (i, e) in elements.iter().enumerate() {
            blocks[(i + shift) % 10].insert(e.clone());
        }
        let blocks = blocks.into_iter().map(|b| PartitionBlock::new(b, 4)).collect();
        Matroid::new(MatroidSpec::partition(blocks)).unwrap()
    };
    let inst = instance_for(8, vec![partition(0), partition(3)], false).unwrap();
    let start = Instant::now();
    let out = solve(&inst.matroids, &inst.source, &inst.target).unwrap();
    let elapsed = start.elapsed();
    let ok = out
        .as_ref()
        .map(|s| verify(&inst.matroids, &inst.source, &inst.target, s).ok)
        .unwrap_or(false);
    report(
        8,
        "solve on |E| = 200, k = 2 partition",
        ok && elapsed < Duration::from_secs(5),
        format!(
            "{} moves, verified {ok}, {:.2}s",
            out.map(|s| s.len()).unwrap_or(0),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let corpus = common::corpus(1200, 0);
    let mut outcomes = decision_and_solve(&corpus);
    outcomes.push(single_matroid_exactness());
    outcomes.push(coloop_oracle(&corpus[..600]));
    outcomes.push(k4_no_instance());
    outcomes.push(gadget_identity());
    outcomes.push(performance_smoke());
    outcomes.sort_by_key(|o| o.id);
    for o in &outcomes {
        println!("criterion {} [{}] {}: {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.title, o.detail);
    }
    let failed: Vec<String> =
        outcomes.iter().filter(|o| !o.pass).map(|o| format!("{}: {}", o.id, o.detail)).collect();
    println!("acceptance: {}/{} criteria pass", outcomes.len() - failed.len(), outcomes.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

