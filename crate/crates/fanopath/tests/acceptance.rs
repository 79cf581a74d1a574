//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`). Criteria are exact; any
//! disagreement fails the test.

use fanopath::coloring::{Color, Coloring};
use fanopath::construct::{
    extended_lower_bound, gadget_fano_7, lower_bound_coloring, sharpness_coloring,
};
use fanopath::detect::{find_directed_ktt, find_mono, longest_red_tight_path};
use fanopath::graph::Digraph;
use fanopath::oracle::{count_fano_copies, exhaustive_embed, exhaustive_tight_path, OracleBudget};
use fanopath::patterns::{
    fano_lines, fano_two_colorable, h_good_bound, is_fano, p_prime, tight_cycle, tight_path,
};
use fanopath::pipeline::{run_pipeline, Outcome, PipelineParams};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, pass: bool) {
    println!(
        "criterion {id} {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({name}) failed");
}

#[test]
fn criterion_01_lower_bound_construction() {
    let mut pass = true;
    for n in 4..=12 {
        let (c, _) = lower_bound_coloring(n).unwrap();
        if c.n_vertices() != 2 * n - 2 {
            pass = false;
        }
        if count_fano_copies(&c, Color::Blue, 1) != 0 {
            pass = false;
        }
        let (len, w) = longest_red_tight_path(&c, n);
        if len != n - 1 || !w.map(|w| w.verify(&c)).unwrap_or(false) {
            pass = false;
        }
    }
    report(1, "lower_bound_construction", pass);
}

#[test]
fn criterion_02_sharpness_construction() {
    let mut pass = true;
    for n in [6, 9, 12] {
        let (c, _) = sharpness_coloring(n).unwrap();
        if count_fano_copies(&c, Color::Blue, 1) != 0 {
            pass = false;
        }
        let p = p_prime(n).unwrap();
        if find_mono(&c, &p, Color::Red, 1).is_some() {
            pass = false;
        }
    }
    report(2, "sharpness_construction", pass);
}

#[test]
fn criterion_03_fano_gadget() {
    let mut pass = true;
    // every labeling of one 7-vertex set
    let mut perm: Vec<usize> = (0..7).collect();
    let mut count = 0u32;
    permute(&mut perm, 0, &mut |p| {
        count += 1;
        let edges = gadget_fano_7([p[0], p[1], p[2], p[3], p[4], p[5], p[6]]).unwrap();
        if !is_fano(&edges).unwrap() {
            pass = false;
        }
    });
    if count != 5040 {
        pass = false;
    }
    // 200 random vertex sets
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let mut pool: Vec<usize> = (0..50).collect();
        pool.shuffle(&mut rng);
        let v: [usize; 7] = pool[..7].try_into().unwrap();
        let edges = gadget_fano_7(v).unwrap();
        if !is_fano(&edges).unwrap() {
            pass = false;
        }
    }
    report(3, "fano_gadget", pass);
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

#[test]
fn criterion_04_fano_facts() {
    let all_blue = Coloring::all_blue(7);
    let pass = count_fano_copies(&all_blue, Color::Blue, 1) == 30 && !fano_two_colorable();
    report(4, "fano_facts", pass);
}

#[test]
fn criterion_05_detector_oracle_equivalence() {
    let mut pass = true;
    let budget = OracleBudget::default();
    for seed in 0..500u64 {
        let n = 5 + (seed as usize % 6); // hosts on 5..=10 vertices
        let c = Coloring::random(n, seed);
        let mut patterns = vec![fano_lines(), p_prime(6).unwrap()];
        for k in [4, 6, 8] {
            patterns.push(tight_path(k).unwrap());
            patterns.push(tight_cycle(k).unwrap());
        }
        for p in &patterns {
            for color in [Color::Red, Color::Blue] {
                let fast = find_mono(&c, p, color, 1);
                let slow = exhaustive_embed(&c, p, color, budget).unwrap();
                match (&fast, &slow) {
                    (Some(a), Some(b)) => {
                        if a.map != b.map || !a.verify(&c) {
                            pass = false;
                        }
                    }
                    (None, None) => {}
                    _ => pass = false,
                }
            }
        }
        let (longest, w) = longest_red_tight_path(&c, n);
        if let Some(w) = &w {
            if !w.verify(&c) {
                pass = false;
            }
        }
        for k in 3..=n {
            let exists = exhaustive_tight_path(&c, k, budget).unwrap();
            if exists != (longest >= k) {
                pass = false;
            }
        }
    }
    report(5, "detector_oracle_equivalence", pass);
}

#[test]
fn criterion_06_directed_ktt_equivalence() {
    let mut pass = true;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..200 {
        let na = rng.gen_range(1..=8usize);
        let nb = rng.gen_range(1..=8usize);
        let t = 1 + case % 3;
        let a: Vec<usize> = (0..na).collect();
        let b: Vec<usize> = (na..na + nb).collect();
        let mut d = Digraph::new(&(0..na + nb).collect::<Vec<_>>());
        for &u in &a {
            for &v in &b {
                if rng.gen_bool(0.5) {
                    d.add_arc(u, v);
                }
            }
        }
        let fast = find_directed_ktt(&d, &a, &b, t).unwrap();
        let slow = exhaustive_ktt(&d, &a, &b, t);
        match (&fast, slow) {
            (Some((sa, sb)), true) => {
                // validate the witness: every arc present, correct sizes
                if sa.len() != t || sb.len() != t {
                    pass = false;
                }
                for &u in sa {
                    for &v in sb {
                        if !d.has_arc(u, v) {
                            pass = false;
                        }
                    }
                }
            }
            (None, false) => {}
            _ => pass = false,
        }
    }
    report(6, "directed_ktt_equivalence", pass);
}

/// Reference: try every t-subset of `a` against every t-subset of `b`.
fn exhaustive_ktt(d: &Digraph, a: &[usize], b: &[usize], t: usize) -> bool {
    let subs_a = subsets(a, t);
    let subs_b = subsets(b, t);
    subs_a.iter().any(|sa| {
        subs_b
            .iter()
            .any(|sb| sa.iter().all(|&u| sb.iter().all(|&v| d.has_arc(u, v))))
    })
}

fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(pool: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut cur, &mut out);
    out
}

fn corpus() -> Vec<(Coloring, usize)> {
    let mut out = Vec::new();
    for n in 4..=12 {
        out.push((lower_bound_coloring(n).unwrap().0, n));
    }
    for n in 6..=10 {
        out.push((extended_lower_bound(n).unwrap().0, n));
    }
    for n in [6, 9, 12] {
        out.push((sharpness_coloring(n).unwrap().0, n));
    }
    for seed in 0..100u64 {
        let hosts = [21, 31, 41][seed as usize % 3];
        let c = Coloring::random(hosts, seed);
        out.push((c, (hosts + 1) / 2));
    }
    out
}

#[test]
fn criterion_07_pipeline_soundness() {
    let mut pass = true;
    for (c, target) in corpus() {
        let params = PipelineParams::defaults(c.n_vertices(), target);
        let rep = run_pipeline(&c, &params);
        match &rep.outcome {
            Outcome::RedPath(w) | Outcome::BlueFano(w) => {
                if !w.verify(&c) {
                    pass = false;
                }
            }
            Outcome::Failure { stage, inequality } => {
                if stage.is_empty() || inequality.is_empty() {
                    pass = false;
                }
            }
        }
    }
    report(7, "pipeline_soundness", pass);
}

#[test]
fn criterion_08_pipeline_on_extended_lower_bound() {
    let mut pass = true;
    for n in 6..=10 {
        let (c, _) = extended_lower_bound(n).unwrap();
        let params = PipelineParams::defaults(c.n_vertices(), n);
        let rep = run_pipeline(&c, &params);
        match &rep.outcome {
            Outcome::RedPath(w) if w.map.len() == n && w.verify(&c) => {}
            _ => pass = false,
        }
    }
    report(8, "pipeline_on_extended_lower_bound", pass);
}

#[test]
fn criterion_09_determinism() {
    let mut pass = true;
    for (c, target) in [
        (extended_lower_bound(7).unwrap().0, 7),
        (sharpness_coloring(6).unwrap().0, 6),
        (Coloring::random(21, 9), 11),
    ] {
        let mut params = PipelineParams::defaults(c.n_vertices(), target);
        let first = run_pipeline(&c, &params).render();
        let second = run_pipeline(&c, &params).render();
        if first != second {
            pass = false;
        }
        params.threads = 4;
        let parallel = run_pipeline(&c, &params);
        match (run_pipeline_outcome(&c, target), parallel.outcome) {
            (Outcome::RedPath(a), Outcome::RedPath(b)) if a.map == b.map => {}
            (Outcome::BlueFano(a), Outcome::BlueFano(b)) if a.map == b.map => {}
            (
                Outcome::Failure { stage: s1, .. },
                Outcome::Failure { stage: s2, .. },
            ) if s1 == s2 => {}
            _ => pass = false,
        }
    }
    // detectors: threaded search must return the same witness
    for seed in 0..20u64 {
        let c = Coloring::random(10, seed);
        let p = fano_lines();
        if find_mono(&c, &p, Color::Blue, 1) != find_mono(&c, &p, Color::Blue, 4) {
            pass = false;
        }
        if count_fano_copies(&c, Color::Blue, 1) != count_fano_copies(&c, Color::Blue, 4) {
            pass = false;
        }
    }
    report(9, "determinism", pass);
}

fn run_pipeline_outcome(c: &Coloring, target: usize) -> Outcome {
    let params = PipelineParams::defaults(c.n_vertices(), target);
    run_pipeline(c, &params).outcome
}

#[test]
fn criterion_10_h_good_bound() {
    let mut pass = true;
    let mut grid: Vec<u64> = (1..=100).collect();
    grid.extend([1_000, 10_000, 123_457, 500_000, 999_999, 1_000_000]);
    for n in grid {
        if h_good_bound(n, 3, 1).unwrap() != 2 * n - 1 {
            pass = false;
        }
    }
    report(10, "h_good_bound", pass);
}
