//! The two-path branch: triple-triangle matching and absorption, special
//! vertices, the tuple-absorption walk, purification to entirely-red
//! cores, the junk split with its blue-Fano gadget, and the good* walk.

use std::collections::BTreeMap;

use crate::coloring::{binom, link_graph, Color, Coloring};
use crate::detect::{find_triple_triangle, TripleTriangle};
use crate::graph::Graph;

use super::walk::{patterned_walk, walk_groups};
use super::{
    blue_fano_outcome, blue_link_edges, blue_triples_in, extract_fano_from_blue_triple, fnum,
    red_link_edges, red_path_outcome, Outcome, PipelineParams, PipelineReport, Stage,
};

pub fn two_path_branch(
    c: &Coloring,
    path_a: &[Vec<usize>],
    path_b: &[Vec<usize>],
    junk: &[usize],
    params: &PipelineParams,
) -> PipelineReport {
    let mut stages = Vec::new();
    let outcome = two_path_run(c, path_a, path_b, junk, params, &mut stages);
    PipelineReport {
        n_vertices: c.n_vertices(),
        params: params.clone(),
        stages,
        outcome,
    }
}

pub(crate) fn two_path_run(
    c: &Coloring,
    path_a: &[Vec<usize>],
    path_b: &[Vec<usize>],
    junk: &[usize],
    params: &PipelineParams,
    stages: &mut Vec<Stage>,
) -> Outcome {
    let target = params.target_n;

    // direct walks along each blob path first; either may already reach n
    let walk_a = walk_groups(c, path_a, target, 2);
    let walk_b = walk_groups(c, path_b, target, 2);
    let mut st = Stage::new("walk_paths");
    st.fact("walk_a", walk_a.len());
    st.fact("walk_b", walk_b.len());
    stages.push(st);
    if walk_a.len() >= target {
        return red_path_outcome(c, &walk_a, target);
    }
    if walk_b.len() >= target {
        return red_path_outcome(c, &walk_b, target);
    }

    // triple-triangle matching between blob pairs (the graph G2)
    let na = path_a.len();
    let labels: Vec<usize> = (0..na + path_b.len()).collect();
    let mut g2 = Graph::new(&labels);
    let mut triangles: BTreeMap<(usize, usize), TripleTriangle> = BTreeMap::new();
    for (i, ba) in path_a.iter().enumerate() {
        for (j, bb) in path_b.iter().enumerate() {
            if let Some(tt) = find_triple_triangle(c, ba, bb) {
                g2.add_edge(i, na + j);
                triangles.insert((i, na + j), tt);
            }
        }
    }
    let a_labels: Vec<usize> = (0..na).collect();
    let b_labels: Vec<usize> = (na..labels.len()).collect();
    let matching = g2.max_bipartite_matching(&a_labels, &b_labels);
    let mut st = Stage::new("triple_triangle_matching");
    st.fact("g2_edges", g2.edge_count());
    st.fact("matching", matching.len());
    st.fact("cap", params.matching_cap);
    st.fact(
        "cap_nominal",
        fnum(2.0 * (target as f64).powf(params.eps.powi(4))),
    );

    let mut path_a: Vec<Vec<usize>> = path_a.to_vec();
    let mut path_b: Vec<Vec<usize>> = path_b.to_vec();
    let mut junk: Vec<usize> = junk.to_vec();

    if matching.len() > params.matching_cap {
        // large matching: absorb the apexes going in the majority direction
        let into_a: Vec<&TripleTriangle> = matching
            .iter()
            .filter_map(|&(l, r)| triangles.get(&(l, r)))
            .filter(|tt| tt.quad_in_first)
            .collect();
        let into_b: Vec<&TripleTriangle> = matching
            .iter()
            .filter_map(|&(l, r)| triangles.get(&(l, r)))
            .filter(|tt| !tt.quad_in_first)
            .collect();
        let majority_a = into_a.len() >= into_b.len();
        let (side, pre_len, absorbed) = if majority_a {
            ("a", walk_a.len(), into_a.len())
        } else {
            ("b", walk_b.len(), into_b.len())
        };
        let mut groups = if majority_a { path_a.clone() } else { path_b.clone() };
        for (l, r) in &matching {
            if let Some(tt) = triangles.get(&(*l, *r)) {
                if tt.quad_in_first == majority_a {
                    let idx = if majority_a { *l } else { r - na };
                    groups[idx].push(tt.apex);
                }
            }
        }
        let walk = walk_groups(c, &groups, target, 2);
        st.fact("absorb_side", side);
        st.fact("absorbable", absorbed);
        st.fact("pre_len", pre_len);
        st.fact("post_len", walk.len());
        stages.push(st);
        if walk.len() >= target {
            return red_path_outcome(c, &walk, target);
        }
        return Outcome::Failure {
            stage: "triple_triangle_matching".into(),
            inequality: format!(
                "absorption walk post_len={} < target={} despite matching={} > cap={}",
                walk.len(),
                target,
                matching.len(),
                params.matching_cap
            ),
        };
    }

    // small matching: matched blobs on both sides become junk
    if !matching.is_empty() {
        let matched_a: Vec<usize> = matching.iter().map(|&(l, _)| l).collect();
        let matched_b: Vec<usize> = matching.iter().map(|&(_, r)| r - na).collect();
        let mut moved = 0usize;
        for (idx, blob) in path_a.iter().enumerate() {
            if matched_a.contains(&idx) {
                moved += blob.len();
                junk.extend(blob.iter().copied());
            }
        }
        for (idx, blob) in path_b.iter().enumerate() {
            if matched_b.contains(&idx) {
                moved += blob.len();
                junk.extend(blob.iter().copied());
            }
        }
        path_a = path_a
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !matched_a.contains(i))
            .map(|(_, b)| b)
            .collect();
        path_b = path_b
            .into_iter()
            .enumerate()
            .filter(|(i, _)| !matched_b.contains(i))
            .map(|(_, b)| b)
            .collect();
        st.fact("moved_blobs", 2 * matching.len());
        st.fact("moved_vertices", moved);
    } else {
        st.fact("moved_blobs", 0);
    }
    stages.push(st);

    let a_set: Vec<usize> = flatten(&path_a);
    let b_set: Vec<usize> = flatten(&path_b);

    // special vertices: dense red link into the opposite side
    let sp_threshold =
        ((params.special_density * binom(target as u64, 2) as f64).ceil() as usize).max(1);
    let specials_b: Vec<usize> = b_set
        .iter()
        .copied()
        .filter(|&v| red_link_edges(c, v, &a_set) >= sp_threshold)
        .collect();
    let specials_a: Vec<usize> = a_set
        .iter()
        .copied()
        .filter(|&v| red_link_edges(c, v, &b_set) >= sp_threshold)
        .collect();
    let mut st = Stage::new("special_vertices");
    st.fact("threshold", sp_threshold);
    st.fact(
        "threshold_nominal",
        fnum(0.2 * params.eps.powi(5) * binom(target as u64, 2) as f64),
    );
    st.fact("specials_in_b", specials_b.len());
    st.fact("specials_in_a", specials_a.len());
    st.fact("cutoff", params.special_cutoff);
    st.fact(
        "cutoff_nominal",
        fnum(target as f64 * (params.m as f64).powf(-1.0 / 20.0)),
    );
    stages.push(st);

    if specials_a.len().max(specials_b.len()) >= params.special_cutoff {
        return embedd_walk_stage(
            c,
            &a_set,
            &b_set,
            &specials_a,
            &specials_b,
            params,
            stages,
        );
    }

    // purification: specials leave the cores
    let core_a: Vec<usize> = a_set
        .iter()
        .copied()
        .filter(|v| !specials_a.contains(v))
        .collect();
    let core_b: Vec<usize> = b_set
        .iter()
        .copied()
        .filter(|v| !specials_b.contains(v))
        .collect();
    junk.extend(specials_a.iter().copied());
    junk.extend(specials_b.iter().copied());
    junk.sort_unstable();
    junk.dedup();
    let mut st = Stage::new("purify");
    st.fact("core_a", core_a.len());
    st.fact("core_b", core_b.len());
    st.fact("junk", junk.len());
    stages.push(st);

    // entirely-red check on both cores; a blue triple either yields a blue
    // Fano through the common-blue-link K4 or the branch fails honestly
    let mut st = Stage::new("entirely_red");
    st.fact(
        "blue_cap_nominal",
        fnum(500.0 * (target as f64).powi(3) / params.m as f64),
    );
    for (name, core, other) in [("a", &core_a, &core_b), ("b", &core_b, &core_a)] {
        let blues = blue_triples_in(c, core);
        st.fact(&format!("blue_in_core_{name}"), blues.len());
        for t in &blues {
            if let Some(map) = extract_fano_from_blue_triple(c, *t, other) {
                stages.push(st);
                return blue_fano_outcome(c, map);
            }
        }
        if !blues.is_empty() {
            let t = blues[0];
            stages.push(st);
            return Outcome::Failure {
                stage: "entirely_red".into(),
                inequality: format!(
                    "core {name} has {} blue triples (first {},{},{}) and no common-blue-link K4 in the other core",
                    blues.len(),
                    t[0],
                    t[1],
                    t[2]
                ),
            };
        }
    }
    stages.push(st);

    // junk split by blue degree; a vertex dense to both sides must carry
    // a gadget blue Fano
    let cap = (params.junk_blue_cap * (target * target) as f64).ceil() as usize;
    let mut j1 = Vec::new();
    let mut j2 = Vec::new();
    let mut st = Stage::new("junk_split");
    st.fact("cap", cap);
    st.fact(
        "cap_nominal",
        fnum(params.eps * (target * target) as f64),
    );
    for &v in &junk {
        let e_a = blue_link_edges(c, v, &core_a);
        let e_b = blue_link_edges(c, v, &core_b);
        if e_a <= cap {
            j1.push(v);
        } else if e_b <= cap {
            j2.push(v);
        } else {
            st.fact("dense_junk", v);
            for (path_side, pair_side) in [(&core_a, &core_b), (&core_b, &core_a)] {
                if let Some(map) = adding_junk_gadget(c, v, path_side, pair_side) {
                    st.fact("gadget", "found");
                    stages.push(st);
                    return blue_fano_outcome(c, map);
                }
            }
            st.fact("gadget", "none");
            stages.push(st);
            return Outcome::Failure {
                stage: "adding_junk".into(),
                inequality: format!(
                    "junk vertex {v} has blue links e_a={e_a}, e_b={e_b} both > cap={cap} and no gadget Fano"
                ),
            };
        }
    }
    st.fact("j1", j1.len());
    st.fact("j2", j2.len());
    stages.push(st);

    // good* absorption walk on whichever side is large enough
    let mut st = Stage::new("adding_junk2");
    st.fact("side_a", core_a.len() + j1.len());
    st.fact("side_b", core_b.len() + j2.len());
    let mut lens = Vec::new();
    for (name, core, extras) in [("a", &core_a, &j1), ("b", &core_b, &j2)] {
        if core.len() + extras.len() < target {
            continue;
        }
        let walk = patterned_walk(c, core, extras, 3, 2, target);
        st.fact(&format!("walk_{name}"), walk.len());
        if walk.len() >= target {
            stages.push(st);
            return red_path_outcome(c, &walk, target);
        }
        lens.push((name, walk.len()));
    }
    stages.push(st);
    let detail = if lens.is_empty() {
        format!(
            "max side size {} < target={target}",
            (core_a.len() + j1.len()).max(core_b.len() + j2.len())
        )
    } else {
        let parts: Vec<String> = lens
            .iter()
            .map(|(n, l)| format!("walk_{n}={l}"))
            .collect();
        format!("{} < target={target}", parts.join(", "))
    };
    Outcome::Failure {
        stage: "adding_junk2".into(),
        inequality: detail,
    }
}

fn flatten(path: &[Vec<usize>]) -> Vec<usize> {
    let mut out: Vec<usize> = path.iter().flatten().copied().collect();
    out.sort_unstable();
    out
}

/// The open/reachable/good tuple machinery of the abundant-specials case,
/// materialized, followed by the absorption walk (specials at every fifth
/// position).
#[allow(clippy::too_many_arguments)]
fn embedd_walk_stage(
    c: &Coloring,
    a_set: &[usize],
    b_set: &[usize],
    specials_a: &[usize],
    specials_b: &[usize],
    params: &PipelineParams,
    stages: &mut Vec<Stage>,
) -> Outcome {
    let target = params.target_n;
    let (side, pool, specials) = if specials_b.len() >= specials_a.len() {
        ("a", a_set, specials_b)
    } else {
        ("b", b_set, specials_a)
    };
    let mut st = Stage::new("embedd");
    st.fact("host_side", side);
    st.fact("pool", pool.len());
    st.fact("specials", specials.len());

    // ordered tuples over the pool and their mutual reachability
    let tuples: Vec<(usize, usize)> = pool
        .iter()
        .flat_map(|&a| pool.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a != b)
        .collect();
    let reach = |(a, b): (usize, usize), (d, e): (usize, usize)| -> bool {
        a != d && a != e && b != d && b != e
            && c.color([a, b, d]) == Color::Red
            && c.color([b, d, e]) == Color::Red
    };
    let open_cap = (params.open_slack * (pool.len() * pool.len()) as f64).ceil() as usize;
    let open: Vec<(usize, usize)> = tuples
        .iter()
        .copied()
        .filter(|&t| {
            let unreachable = tuples.iter().filter(|&&u| u != t && !reach(t, u)).count();
            unreachable <= open_cap
        })
        .collect();
    st.fact("tuples", tuples.len());
    st.fact("open", open.len());
    st.fact("open_cap", open_cap);
    st.fact(
        "open_cap_nominal",
        fnum((pool.len() * pool.len()) as f64 * (params.m as f64).powf(-0.25)),
    );
    // good tuples per special: open (a,b) from which enough open tuples
    // are reachable via v
    let mut min_good = usize::MAX;
    for &v in specials {
        let good = open
            .iter()
            .filter(|&&(a, b)| {
                let via = open
                    .iter()
                    .filter(|&&(d, e)| {
                        a != d && a != e && b != d && b != e && v != d && v != e
                            && c.color([a, b, v]) == Color::Red
                            && c.color([b, v, d]) == Color::Red
                            && c.color([v, d, e]) == Color::Red
                    })
                    .count();
                via >= params.good_min
            })
            .count();
        min_good = min_good.min(good);
    }
    if specials.is_empty() {
        min_good = 0;
    }
    st.fact("min_good", min_good);
    st.fact("good_min", params.good_min);
    st.fact(
        "good_nominal",
        fnum(params.eps.powi(100) * (target * target) as f64),
    );

    let walk = patterned_walk(c, pool, specials, 5, 2, target);
    let absorbed = walk.iter().filter(|v| specials.contains(v)).count();
    st.fact("walk_len", walk.len());
    st.fact("absorbed", absorbed);
    stages.push(st);
    if walk.len() >= target {
        return red_path_outcome(c, &walk, target);
    }
    Outcome::Failure {
        stage: "embedd".into(),
        inequality: format!("walk_len={} < target={target}", walk.len()),
    }
}

/// Blue Fano gadget for a junk vertex v that is blue-dense to both cores:
/// a blue path p in v's blue link on one side, a pair {a,b} on the other
/// with {a,b,v} blue, and four cross triples
/// {a,p_i,p_j+1}, {a,p_j,p_i+1}, {b,p_i,p_j}, {b,p_j+1,p_i+1} all blue.
fn adding_junk_gadget(
    c: &Coloring,
    v: usize,
    path_side: &[usize],
    pair_side: &[usize],
) -> Option<Vec<usize>> {
    if path_side.len() < 4 || pair_side.len() < 2 {
        return None;
    }
    let lg = link_graph(c, v, path_side, Color::Blue).ok()?.graph;
    let p = lg.longest_path();
    if p.len() < 4 {
        return None;
    }
    for (ai, &a) in pair_side.iter().enumerate() {
        for &b in &pair_side[ai + 1..] {
            if c.color([a, b, v]) != Color::Blue {
                continue;
            }
            for i in 0..p.len().saturating_sub(3) {
                for j in i + 2..p.len() - 1 {
                    let (t1, t4, t3, t2) = (p[i], p[i + 1], p[j], p[j + 1]);
                    let all_blue = [[a, t1, t2], [a, t3, t4], [b, t1, t3], [b, t2, t4]]
                        .iter()
                        .all(|&t| c.color(t) == Color::Blue);
                    if all_blue {
                        return Some(vec![a, v, b, t1, t2, t4, t3]);
                    }
                }
            }
        }
    }
    None
}
