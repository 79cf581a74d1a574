//! The three-path branch: block-size logging, purification of each block
//! to an entirely-red core, the cross-triple connector, junk reassignment
//! by density-graph degree, and the interleaving walk over a Hamiltonian
//! path of the density graph. Entered through `three_path_entry`, which
//! first checks for cross-path blob edges and, when possible, falls back
//! to halved blobs and the two-path branch.

use crate::coloring::{cross_count, Color, Coloring};
use crate::detect::hamiltonian_path_dense;

use super::walk::{interleave_walk, walk_groups};
use super::{
    blue_triples_in, build_blob_graph, decompose_paths, density_graph,
    extract_fano_from_blue_triple, fnum, red_path_outcome, BlobDecomposition, BlobGraph, Outcome,
    PipelineParams, PipelineReport, Stage,
};

pub fn three_path_branch(
    c: &Coloring,
    path_a: &[Vec<usize>],
    path_b: &[Vec<usize>],
    path_c: &[Vec<usize>],
    junk: &[usize],
    params: &PipelineParams,
) -> PipelineReport {
    let mut stages = Vec::new();
    let paths = [path_a.to_vec(), path_b.to_vec(), path_c.to_vec()];
    let outcome = three_path_run(c, &paths, junk, params, &mut stages);
    PipelineReport {
        n_vertices: c.n_vertices(),
        params: params.clone(),
        stages,
        outcome,
    }
}

/// Dispatch point used by run_pipeline when decompose_paths yields three
/// paths: detect cross-path blob edges and either split blobs in half and
/// re-enter the two-path branch, or run the three-path branch proper.
pub(crate) fn three_path_entry(
    c: &Coloring,
    d: &BlobDecomposition,
    g: &BlobGraph,
    index_paths: &[Vec<usize>],
    params: &PipelineParams,
    stages: &mut Vec<Stage>,
) -> Outcome {
    let path_of = |blob: usize| index_paths.iter().position(|p| p.contains(&blob));
    let cross_edges = g
        .graph
        .edges()
        .iter()
        .filter(|&&(a, b)| path_of(a) != path_of(b))
        .count();
    let mut st = Stage::new("cross_path_edges");
    st.fact("edges", cross_edges);
    let blob_paths = |ip: &[Vec<usize>], blobs: &[Vec<usize>]| -> Vec<Vec<Vec<usize>>> {
        ip.iter()
            .map(|p| p.iter().map(|&i| blobs[i].clone()).collect())
            .collect()
    };
    if cross_edges > 0 && params.m >= 6 {
        // split each blob into two halves (odd middles become junk) and
        // rebuild at a 100-fold smaller butterfly threshold
        let mut blobs = Vec::new();
        let mut junk = d.junk.clone();
        for b in &d.blobs {
            let h = b.len() / 2;
            blobs.push(b[..h].to_vec());
            blobs.push(b[b.len() - h..].to_vec());
            if b.len() % 2 == 1 {
                junk.push(b[h]);
            }
        }
        let split = BlobDecomposition { blobs, junk };
        let threshold = (params.butterfly_threshold / 100).max(1);
        let g2 = build_blob_graph(c, &split, threshold);
        st.fact("split", "halved");
        st.fact("split_threshold", threshold);
        match decompose_paths(&g2) {
            Ok(ips) if ips.len() <= 2 => {
                st.fact("split_paths", ips.len());
                stages.push(st);
                let bp = blob_paths(&ips, &split.blobs);
                let empty: Vec<Vec<usize>> = Vec::new();
                let second = bp.get(1).cloned().unwrap_or(empty);
                return super::two_path::two_path_run(
                    c,
                    &bp[0],
                    &second,
                    &split.junk,
                    params,
                    stages,
                );
            }
            Ok(ips) => {
                st.fact("split_paths", ips.len());
                stages.push(st);
                let bp = blob_paths(&ips, &split.blobs);
                let paths = [bp[0].clone(), bp[1].clone(), bp[2].clone()];
                return three_path_run(c, &paths, &split.junk, params, stages);
            }
            Err(e) => {
                st.fact("split_paths", "error");
                stages.push(st);
                return Outcome::Failure {
                    stage: "cross_path_edges".into(),
                    inequality: format!("blob split failed: {e}"),
                };
            }
        }
    }
    if cross_edges > 0 {
        st.fact("split", "skipped_m_too_small");
    }
    stages.push(st);
    let bp = blob_paths(index_paths, &d.blobs);
    let paths = [bp[0].clone(), bp[1].clone(), bp[2].clone()];
    three_path_run(c, &paths, &d.junk, params, stages)
}

pub(crate) fn three_path_run(
    c: &Coloring,
    paths: &[Vec<Vec<usize>>; 3],
    junk: &[usize],
    params: &PipelineParams,
    stages: &mut Vec<Stage>,
) -> Outcome {
    let target = params.target_n;
    let tf = target as f64;
    let mf = params.m as f64;

    // direct walk along each path first
    let mut st = Stage::new("walk_paths");
    let mut walks = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        let w = walk_groups(c, p, target, 2);
        st.fact(&format!("walk_{i}"), w.len());
        walks.push(w);
    }
    stages.push(st);
    for w in &walks {
        if w.len() >= target {
            return red_path_outcome(c, w, target);
        }
    }

    let mut blocks: Vec<Vec<usize>> = paths
        .iter()
        .map(|p| {
            let mut v: Vec<usize> = p.iter().flatten().copied().collect();
            v.sort_unstable();
            v
        })
        .collect();

    // block sizes against the equal-size window (stand-in constants)
    let mut st = Stage::new("block_sizes");
    let slack = tf * mf.powf(-1.0 / params.t_const as f64);
    st.fact("lo_nominal", fnum(2.0 / 3.0 * tf - slack));
    st.fact("hi_nominal", fnum(2.0 / 3.0 * tf + slack));
    for (i, b) in blocks.iter().enumerate() {
        st.fact(&format!("size_{i}"), b.len());
    }
    stages.push(st);

    // purify each block to an entirely-red core; each stubborn blue triple
    // is first offered the common-blue-link Fano extraction in the next block
    let mut junk: Vec<usize> = junk.to_vec();
    let mut st = Stage::new("entirely_red_blocks");
    st.fact("removed_cap_nominal", fnum(slack));
    for i in 0..3 {
        let pool = blocks[(i + 1) % 3].clone();
        let mut core = blocks[i].clone();
        let mut removed = 0usize;
        loop {
            let blues = blue_triples_in(c, &core);
            if blues.is_empty() {
                break;
            }
            for t in &blues {
                if let Some(map) = extract_fano_from_blue_triple(c, *t, &pool) {
                    st.fact(&format!("blue_in_{i}"), blues.len());
                    stages.push(st);
                    return super::blue_fano_outcome(c, map);
                }
            }
            // remove the vertex hit by the most blue triples (least label
            // on ties) and retry
            let mut worst = (0usize, core[0]);
            for &v in &core {
                let hits = blues.iter().filter(|t| t.contains(&v)).count();
                if hits > worst.0 {
                    worst = (hits, v);
                }
            }
            core.retain(|&v| v != worst.1);
            junk.push(worst.1);
            removed += 1;
        }
        st.fact(&format!("removed_{i}"), removed);
        blocks[i] = core;
    }
    stages.push(st);

    // cross triples over the cores, and the connector of Lemma structure
    let mut st = Stage::new("cross_count");
    let cross = cross_count(c, &blocks[0], &blocks[1], &blocks[2], Color::Red)
        .expect("cores are disjoint");
    st.fact("red_cross", cross);
    st.fact(
        "cap_nominal",
        fnum(7.0 * tf.powf(3.0 - 1.0 / params.t_const as f64)),
    );
    if let Some(seq) = connector_path(c, &blocks[0], &blocks[1], &blocks[2]) {
        st.fact("connector", "found");
        st.fact("connector_len", seq.len());
        stages.push(st);
        if seq.len() >= target {
            return red_path_outcome(c, &seq, target);
        }
    } else {
        st.fact("connector", "none");
        stages.push(st);
    }

    // junk reassignment by degree in the walk-density graph
    let mut st = Stage::new("junk_reassign");
    let floor = params.degree_floor * tf;
    st.fact("degree_floor", fnum(floor));
    st.fact("degree_floor_nominal", fnum(0.39 * tf));
    junk.sort_unstable();
    junk.dedup();
    let mut assigned = 0usize;
    let mut unassigned = 0usize;
    for &v in &junk {
        let mut placed = false;
        for i in 0..3 {
            let next = &blocks[(i + 1) % 3];
            if next.is_empty() || blocks[i].contains(&v) {
                continue;
            }
            let need = ((params.cutoffs.walk * next.len() as f64) - 1e-9).ceil() as usize;
            let deg = blocks[i]
                .iter()
                .filter(|&&u| {
                    u != v
                        && next
                            .iter()
                            .filter(|&&y| y != v && y != u && c.color([v, u, y]) == Color::Red)
                            .count()
                            >= need
                })
                .count();
            if deg as f64 >= floor {
                blocks[i].push(v);
                blocks[i].sort_unstable();
                placed = true;
                break;
            }
        }
        if placed {
            assigned += 1;
        } else {
            unassigned += 1;
        }
    }
    st.fact("assigned", assigned);
    st.fact("unassigned", unassigned);
    for (i, b) in blocks.iter().enumerate() {
        st.fact(&format!("block_{i}"), b.len());
    }
    stages.push(st);

    // interleaving walk: Hamiltonian path in the density graph of the best
    // consecutive block pair, one inserted vertex after every second step
    let best_i = (0..3)
        .max_by_key(|&i| (blocks[i].len() + blocks[(i + 1) % 3].len(), 2 - i))
        .unwrap();
    let spine_block = blocks[best_i].clone();
    let insert_block = blocks[(best_i + 1) % 3].clone();
    let mut st = Stage::new("structure3");
    st.fact("spine_block", best_i);
    st.fact("spine_size", spine_block.len());
    st.fact("insert_size", insert_block.len());
    let g = density_graph(c, &spine_block, &insert_block, params.cutoffs.walk);
    st.fact("min_degree", g.min_degree());
    st.fact("dirac_needed", fnum(spine_block.len() as f64 / 2.0));
    st.fact(
        "degree_nominal",
        fnum(params.cutoffs.dirac * spine_block.len() as f64),
    );
    match hamiltonian_path_dense(&g) {
        Ok(spine) => {
            let walk = interleave_walk(c, &spine, &insert_block, target);
            let inserted = walk.iter().filter(|v| insert_block.contains(v)).count();
            st.fact("walk_len", walk.len());
            st.fact("inserted", inserted);
            stages.push(st);
            if walk.len() >= target {
                return red_path_outcome(c, &walk, target);
            }
            Outcome::Failure {
                stage: "structure3".into(),
                inequality: format!("interleave walk_len={} < target={target}", walk.len()),
            }
        }
        Err(e) => {
            st.fact("hamiltonian", "none");
            stages.push(st);
            Outcome::Failure {
                stage: "structure3".into(),
                inequality: e.to_string(),
            }
        }
    }
}

/// The six-vertex connector v1,w1 in P1, v2,w2,x2 in P2, v3 in P3 with
/// {v1,w1,v2}, {v1,v2,v3}, {v2,v3,w2}, {v3,w2,x2} all red, spliced between
/// the (entirely red) first and second cores. Returns the full sequence.
fn connector_path(
    c: &Coloring,
    p1: &[usize],
    p2: &[usize],
    p3: &[usize],
) -> Option<Vec<usize>> {
    for &v1 in p1 {
        for &v2 in p2 {
            for &v3 in p3 {
                if c.color([v1, v2, v3]) != Color::Red {
                    continue;
                }
                let w1 = p1
                    .iter()
                    .copied()
                    .find(|&w| w != v1 && c.color([v1, w, v2]) == Color::Red);
                let Some(w1) = w1 else { continue };
                for &w2 in p2 {
                    if w2 == v2 || c.color([v2, v3, w2]) != Color::Red {
                        continue;
                    }
                    for &x2 in p2 {
                        if x2 == v2 || x2 == w2 || c.color([v3, w2, x2]) != Color::Red {
                            continue;
                        }
                        let mut seq: Vec<usize> = p1
                            .iter()
                            .copied()
                            .filter(|&u| u != v1 && u != w1)
                            .collect();
                        seq.extend([w1, v1, v2, v3, w2, x2]);
                        seq.extend(p2.iter().copied().filter(|&u| {
                            u != v2 && u != w2 && u != x2
                        }));
                        let valid = seq
                            .windows(3)
                            .all(|w| c.color([w[0], w[1], w[2]]) == Color::Red);
                        if valid {
                            return Some(seq);
                        }
                    }
                }
            }
        }
    }
    None
}
