//! Search engines for monochromatic structures: a generic embedding engine,
//! the longest red tight path, red cliques, butterflies, triple triangles,
//! directed K_{t,t}, monochromatic K_{4,4} in bipartite colorings, and
//! Hamiltonian paths in dense graphs.
//!
//! All detectors are deterministic: branching is always on the smallest
//! unused vertex, so reported witnesses are lexicographically least.

use std::collections::HashMap;

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::graph::{BipartiteColoring, Digraph, Graph};
use crate::patterns::Pattern;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DetectError {
    #[error("no Hamiltonian path found (minimum degree {min_degree} < {threshold})")]
    NoHamiltonianPath { min_degree: usize, threshold: usize },
    #[error("t must be at least 1")]
    BadT,
}

/// Certificate of a monochromatic embedding: an injective map from pattern
/// vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub pattern: Pattern,
    pub color: Color,
    pub map: Vec<usize>,
}

impl Witness {
    pub fn verify(&self, host: &Coloring) -> bool {
        if self.map.len() != self.pattern.n {
            return false;
        }
        let mut sorted = self.map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.map.len() {
            return false;
        }
        self.pattern.edges.iter().all(|e| {
            let t = [self.map[e[0]], self.map[e[1]], self.map[e[2]]];
            host.color_of(t).map(|c| c == self.color).unwrap_or(false)
        })
    }

    /// Text form: `WITNESS <color> <pattern-name>` then `map i -> v` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("WITNESS {} {}\n", self.color, self.pattern.name);
        for (i, &v) in self.map.iter().enumerate() {
            out.push_str(&format!("map {i} -> {v}\n"));
        }
        out
    }
}

/// For each pattern vertex i, the pattern edges whose largest vertex is i;
/// those are checkable as soon as i is assigned.
fn edge_schedule(p: &Pattern) -> Vec<Vec<[usize; 3]>> {
    let mut sched = vec![Vec::new(); p.n];
    for e in &p.edges {
        let last = *e.iter().max().unwrap();
        sched[last].push(*e);
    }
    sched
}

/// Find a monochromatic embedding of `p` into `host`, or None. The witness
/// is the lexicographically least valid host map. `threads` partitions the
/// top-level branch set; the result is identical for any thread count.
pub fn find_mono(host: &Coloring, p: &Pattern, color: Color, threads: usize) -> Option<Witness> {
    if p.n > host.n_vertices() {
        return None;
    }
    let sched = edge_schedule(p);
    let n = host.n_vertices();
    if threads <= 1 || p.n == 0 {
        let mut map = Vec::with_capacity(p.n);
        let mut used = vec![false; n];
        if embed_from(host, p, color, &sched, &mut map, &mut used) {
            return Some(Witness {
                pattern: p.clone(),
                color,
                map,
            });
        }
        return None;
    }
    // partition on the image of pattern vertex 0; least successful branch wins
    let results: Vec<Option<Vec<usize>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..n)
            .map(|v0| {
                let sched = &sched;
                s.spawn(move || {
                    let mut map = vec![v0];
                    let mut used = vec![false; n];
                    used[v0] = true;
                    if embed_from(host, p, color, sched, &mut map, &mut used) {
                        Some(map)
                    } else {
                        None
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    results.into_iter().flatten().next().map(|map| Witness {
        pattern: p.clone(),
        color,
        map,
    })
}

fn embed_from(
    host: &Coloring,
    p: &Pattern,
    color: Color,
    sched: &[Vec<[usize; 3]>],
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let depth = map.len();
    if depth == p.n {
        return true;
    }
    'cand: for v in 0..host.n_vertices() {
        if used[v] {
            continue;
        }
        for e in &sched[depth] {
            let a = if e[0] == depth { v } else { map[e[0]] };
            let b = if e[1] == depth { v } else { map[e[1]] };
            let c = if e[2] == depth { v } else { map[e[2]] };
            if host.color([a, b, c]) != color {
                continue 'cand;
            }
        }
        map.push(v);
        used[v] = true;
        if embed_from(host, p, color, sched, map, used) {
            return true;
        }
        map.pop();
        used[v] = false;
    }
    false
}

/// Longest red tight path with default exact/branch-and-bound switchover.
pub fn longest_red_tight_path(host: &Coloring, cap: usize) -> (usize, Option<Witness>) {
    longest_red_tight_path_with(host, cap, 20)
}

/// Largest `k <= cap` such that a red tight path on k vertices embeds, with
/// a witness. Returns (2, None) when no red triple exists. Exact memoized
/// search up to `exact_max_n` host vertices, branch-and-bound above.
pub fn longest_red_tight_path_with(
    host: &Coloring,
    cap: usize,
    exact_max_n: usize,
) -> (usize, Option<Witness>) {
    let n = host.n_vertices();
    let cap = cap.min(n);
    if host.red_count() == 0 || cap < 3 {
        return (2, None);
    }
    let seq = if n <= exact_max_n {
        longest_exact(host, cap)
    } else {
        longest_bnb(host, cap)
    };
    match seq {
        Some(seq) if seq.len() >= 3 => {
            let k = seq.len();
            let pattern = crate::patterns::tight_path(k).expect("k >= 3");
            (
                k,
                Some(Witness {
                    pattern,
                    color: Color::Red,
                    map: seq,
                }),
            )
        }
        _ => (2, None),
    }
}

/// Exact: memoize the best extension length from (prev, last, visited).
fn longest_exact(host: &Coloring, cap: usize) -> Option<Vec<usize>> {
    let n = host.n_vertices();
    debug_assert!(n <= 64);
    let mut memo: HashMap<(u8, u8, u64), u32> = HashMap::new();
    let mut best: Option<Vec<usize>> = None;
    let mut best_len = 2usize;
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let visited = (1u64 << u) | (1u64 << v);
            let ext = extension_len(host, u, v, visited, cap, &mut memo);
            let total = 2 + ext as usize;
            if total > best_len {
                best_len = total;
                best = Some(rebuild_path(host, u, v, cap, &memo, total));
                if best_len >= cap {
                    return best;
                }
            }
        }
    }
    best
}

fn extension_len(
    host: &Coloring,
    u: usize,
    v: usize,
    visited: u64,
    cap: usize,
    memo: &mut HashMap<(u8, u8, u64), u32>,
) -> u32 {
    if visited.count_ones() as usize >= cap {
        return 0;
    }
    if let Some(&e) = memo.get(&(u as u8, v as u8, visited)) {
        return e;
    }
    let mut best = 0u32;
    for w in 0..host.n_vertices() {
        if visited & (1u64 << w) != 0 {
            continue;
        }
        if host.color([u, v, w]) == Color::Red {
            let e = 1 + extension_len(host, v, w, visited | (1u64 << w), cap, memo);
            if e > best {
                best = e;
                if visited.count_ones() as usize + best as usize >= cap {
                    break;
                }
            }
        }
    }
    memo.insert((u as u8, v as u8, visited), best);
    best
}

fn rebuild_path(
    host: &Coloring,
    u: usize,
    v: usize,
    cap: usize,
    memo: &HashMap<(u8, u8, u64), u32>,
    total: usize,
) -> Vec<usize> {
    let mut path = vec![u, v];
    let mut visited = (1u64 << u) | (1u64 << v);
    while path.len() < total {
        let (pu, pv) = (path[path.len() - 2], path[path.len() - 1]);
        let need = (total - path.len()) as u32;
        let mut advanced = false;
        for w in 0..host.n_vertices() {
            if visited & (1u64 << w) != 0 || host.color([pu, pv, w]) != Color::Red {
                continue;
            }
            let nv = visited | (1u64 << w);
            let rest = if path.len() + 1 == total {
                0
            } else {
                memo.get(&(pv as u8, w as u8, nv)).copied().unwrap_or(0)
            };
            if 1 + rest >= need && path.len() + 1 + rest as usize <= cap {
                path.push(w);
                visited = nv;
                advanced = true;
                break;
            }
        }
        assert!(advanced, "memo-guided reconstruction");
    }
    path
}

/// Branch and bound: exhaustive DFS over ordered start pairs with a
/// reachability-closure upper bound.
fn longest_bnb(host: &Coloring, cap: usize) -> Option<Vec<usize>> {
    let n = host.n_vertices();
    debug_assert!(n <= 64);
    let mut best: Vec<usize> = Vec::new();
    let mut stack_path: Vec<usize> = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            stack_path.clear();
            stack_path.extend([u, v]);
            let visited = (1u64 << u) | (1u64 << v);
            bnb_extend(host, cap, &mut stack_path, visited, &mut best);
            if best.len() >= cap {
                return Some(best);
            }
        }
    }
    if best.len() >= 3 {
        Some(best)
    } else {
        None
    }
}

fn bnb_extend(host: &Coloring, cap: usize, path: &mut Vec<usize>, visited: u64, best: &mut Vec<usize>) {
    if path.len() > best.len() {
        *best = path.clone();
        if best.len() >= cap {
            return;
        }
    }
    let n = host.n_vertices();
    // cheap bound first, closure bound only when the cheap one is loose
    let remaining = n - visited.count_ones() as usize;
    if path.len() + remaining <= best.len() {
        return;
    }
    let closure = red_closure(host, path[path.len() - 2], path[path.len() - 1], visited);
    if path.len() + closure <= best.len() {
        return;
    }
    let (u, v) = (path[path.len() - 2], path[path.len() - 1]);
    for w in 0..n {
        if visited & (1u64 << w) != 0 || host.color([u, v, w]) != Color::Red {
            continue;
        }
        path.push(w);
        bnb_extend(host, cap, path, visited | (1u64 << w), best);
        path.pop();
        if best.len() >= cap {
            return;
        }
    }
}

/// Upper bound on how many unvisited vertices a red tight path ending in
/// (u, v) could still collect: grow the set closed under "some pair of the
/// set forms a red triple with w".
fn red_closure(host: &Coloring, u: usize, v: usize, visited: u64) -> usize {
    let n = host.n_vertices();
    let mut set: Vec<usize> = vec![u, v];
    let mut in_set = (1u64 << u) | (1u64 << v);
    let mut added = 0usize;
    let mut changed = true;
    while changed {
        changed = false;
        for w in 0..n {
            if in_set & (1u64 << w) != 0 || visited & (1u64 << w) != 0 {
                continue;
            }
            let joins = set.iter().enumerate().any(|(i, &a)| {
                set[i + 1..]
                    .iter()
                    .any(|&b| host.color([a, b, w]) == Color::Red)
            });
            if joins {
                set.push(w);
                in_set |= 1u64 << w;
                added += 1;
                changed = true;
            }
        }
    }
    added
}

/// Lexicographically least m-vertex set spanning an all-red clique, or None.
pub fn find_red_clique(host: &Coloring, m: usize) -> Option<Vec<usize>> {
    find_red_clique_in(host, m, &(0..host.n_vertices()).collect::<Vec<_>>())
}

/// Same, restricted to candidate vertices from `pool` (ascending).
pub fn find_red_clique_in(host: &Coloring, m: usize, pool: &[usize]) -> Option<Vec<usize>> {
    assert!(m >= 3, "clique size must be at least 3");
    let mut chosen = Vec::with_capacity(m);
    if red_clique_extend(host, m, pool, 0, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn red_clique_extend(
    host: &Coloring,
    m: usize,
    pool: &[usize],
    from: usize,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == m {
        return true;
    }
    let need = m - chosen.len();
    for (i, &v) in pool.iter().enumerate().skip(from) {
        if pool.len() - i < need {
            return false;
        }
        let ok = chosen.iter().enumerate().all(|(j, &a)| {
            chosen[j + 1..]
                .iter()
                .all(|&b| host.color([a, b, v]) == Color::Red)
        });
        if ok {
            chosen.push(v);
            if red_clique_extend(host, m, pool, i + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Four vertices, two per side, with red triples `{a1,a2,spine_b}` and
/// `{spine_a,b1,b2}`; the stitch used to jump between red cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Butterfly {
    pub a: [usize; 2],
    pub b: [usize; 2],
    /// The A-side vertex shared by both triples.
    pub spine_a: usize,
    /// The B-side vertex shared by both triples.
    pub spine_b: usize,
}

impl Butterfly {
    pub fn vertices(&self) -> [usize; 4] {
        [self.a[0], self.a[1], self.b[0], self.b[1]]
    }

    pub fn verify(&self, host: &Coloring) -> bool {
        host.color([self.a[0], self.a[1], self.spine_b]) == Color::Red
            && host.color([self.spine_a, self.b[0], self.b[1]]) == Color::Red
    }
}

/// First butterfly between the two pairs in ascending orientation order.
pub fn butterfly_between(
    host: &Coloring,
    a1: usize,
    a2: usize,
    b1: usize,
    b2: usize,
) -> Option<Butterfly> {
    for spine_a in [a1, a2] {
        for spine_b in [b1, b2] {
            if host.color([a1, a2, spine_b]) == Color::Red
                && host.color([spine_a, b1, b2]) == Color::Red
            {
                return Some(Butterfly {
                    a: [a1, a2],
                    b: [b1, b2],
                    spine_a,
                    spine_b,
                });
            }
        }
    }
    None
}

/// Greedy maximal set of pairwise vertex-disjoint red butterflies between
/// A and B, scanning quadruples in ascending vertex order.
pub fn max_disjoint_butterflies(host: &Coloring, a_set: &[usize], b_set: &[usize]) -> Vec<Butterfly> {
    let mut a_sorted = a_set.to_vec();
    a_sorted.sort_unstable();
    let mut b_sorted = b_set.to_vec();
    b_sorted.sort_unstable();
    let mut used = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (i, &a1) in a_sorted.iter().enumerate() {
        if used.contains(&a1) {
            continue;
        }
        for &a2 in &a_sorted[i + 1..] {
            if used.contains(&a2) || used.contains(&a1) {
                continue;
            }
            for (j, &b1) in b_sorted.iter().enumerate() {
                if used.contains(&b1) || used.contains(&a1) || used.contains(&a2) {
                    continue;
                }
                for &b2 in &b_sorted[j + 1..] {
                    if used.contains(&b2) || used.contains(&b1) {
                        continue;
                    }
                    if used.contains(&a1) || used.contains(&a2) {
                        continue;
                    }
                    if let Some(bf) = butterfly_between(host, a1, a2, b1, b2) {
                        used.extend(bf.vertices());
                        out.push(bf);
                    }
                }
            }
        }
    }
    out
}

/// A quadruple w,x,y,z in one set and an apex v in the other with
/// `wxv`, `xyv`, `yzv` all red.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleTriangle {
    pub quad: [usize; 4],
    pub apex: usize,
    /// True when the quad lies in the first set passed to the finder.
    pub quad_in_first: bool,
}

impl TripleTriangle {
    pub fn verify(&self, host: &Coloring) -> bool {
        let [w, x, y, z] = self.quad;
        let v = self.apex;
        host.color([w, x, v]) == Color::Red
            && host.color([x, y, v]) == Color::Red
            && host.color([y, z, v]) == Color::Red
    }
}

/// A red triple triangle between the two sets in either direction, or None.
/// Equivalent criterion: some vertex whose red link graph in the opposite
/// set contains a path with 3 edges.
pub fn find_triple_triangle(
    host: &Coloring,
    a_set: &[usize],
    b_set: &[usize],
) -> Option<TripleTriangle> {
    for (quad_set, apex_set, quad_in_first) in [(a_set, b_set, true), (b_set, a_set, false)] {
        if quad_set.len() < 4 {
            continue;
        }
        let mut apexes = apex_set.to_vec();
        apexes.sort_unstable();
        for &v in &apexes {
            let link = crate::coloring::link_graph(host, v, quad_set, Color::Red)
                .expect("disjoint sets");
            if let Some(quad) = link.graph.find_p4() {
                return Some(TripleTriangle {
                    quad,
                    apex: v,
                    quad_in_first,
                });
            }
        }
    }
    None
}

/// Complete directed K_{t,t} from part A to part B in `d`: subsets S of A
/// and T of B, both of size t, with every arc s -> t present. Exact search;
/// A-candidates are tried in descending out-degree order (label ascending
/// on ties) for pruning.
pub fn find_directed_ktt(
    d: &Digraph,
    a_part: &[usize],
    b_part: &[usize],
    t: usize,
) -> Result<Option<(Vec<usize>, Vec<usize>)>, DetectError> {
    if t < 1 {
        return Err(DetectError::BadT);
    }
    if a_part.len() < t || b_part.len() < t {
        return Ok(None);
    }
    let mut order: Vec<usize> = a_part.to_vec();
    order.sort_by_key(|&v| (std::cmp::Reverse(d.out_degree_into(v, b_part)), v));
    let all_b: Vec<usize> = {
        let mut b = b_part.to_vec();
        b.sort_unstable();
        b
    };
    let mut chosen: Vec<usize> = Vec::new();
    fn search(
        d: &Digraph,
        order: &[usize],
        from: usize,
        t: usize,
        chosen: &mut Vec<usize>,
        common: &[usize],
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        if chosen.len() == t {
            return Some((
                {
                    let mut s = chosen.clone();
                    s.sort_unstable();
                    s
                },
                common[..t].to_vec(),
            ));
        }
        for (i, &v) in order.iter().enumerate().skip(from) {
            if order.len() - i < t - chosen.len() {
                return None;
            }
            let next_common: Vec<usize> = common
                .iter()
                .copied()
                .filter(|&b| d.has_arc(v, b))
                .collect();
            if next_common.len() < t {
                continue;
            }
            chosen.push(v);
            if let Some(found) = search(d, order, i + 1, t, chosen, &next_common) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    Ok(search(d, &order, 0, t, &mut chosen, &all_b))
}

/// Monochromatic K_{4,4} in a two-colored complete bipartite graph, exact.
/// Returns (color, left indices, right indices). The guarantee threshold
/// (parts of size 48) and the search are decoupled: smaller instances are
/// still searched and may return None.
pub fn find_mono_k44(bip: &BipartiteColoring) -> Option<(Color, [usize; 4], [usize; 4])> {
    if bip.left < 4 || bip.right < 4 {
        return None;
    }
    // bitset of right-neighbors per left vertex and color
    let words = bip.right.div_ceil(64);
    let mut red_nbr = vec![vec![0u64; words]; bip.left];
    let mut blue_nbr = vec![vec![0u64; words]; bip.left];
    for i in 0..bip.left {
        for j in 0..bip.right {
            if bip.is_red(i, j) {
                red_nbr[i][j / 64] |= 1u64 << (j % 64);
            } else {
                blue_nbr[i][j / 64] |= 1u64 << (j % 64);
            }
        }
    }
    let popcount = |v: &[u64]| v.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    let first4 = |v: &[u64]| {
        let mut out = [0usize; 4];
        let mut k = 0;
        for (wi, &w) in v.iter().enumerate() {
            let mut w = w;
            while w != 0 && k < 4 {
                out[k] = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                k += 1;
            }
            if k == 4 {
                break;
            }
        }
        out
    };
    for i in 0..bip.left {
        for j in i + 1..bip.left {
            for (color, nbr) in [(Color::Red, &red_nbr), (Color::Blue, &blue_nbr)] {
                let ij: Vec<u64> = nbr[i].iter().zip(&nbr[j]).map(|(a, b)| a & b).collect();
                if popcount(&ij) < 4 {
                    continue;
                }
                for k in j + 1..bip.left {
                    let ijk: Vec<u64> = ij.iter().zip(&nbr[k]).map(|(a, b)| a & b).collect();
                    if popcount(&ijk) < 4 {
                        continue;
                    }
                    for l in k + 1..bip.left {
                        let full: Vec<u64> =
                            ijk.iter().zip(&nbr[l]).map(|(a, b)| a & b).collect();
                        if popcount(&full) >= 4 {
                            return Some((color, [i, j, k, l], first4(&full)));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Hamiltonian path by rotation-extension. Always succeeds when the
/// minimum degree is at least |V|/2; below that it falls back to an
/// exhaustive search on small graphs and otherwise reports failure.
pub fn hamiltonian_path_dense(g: &Graph) -> Result<Vec<usize>, DetectError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n <= 2 {
        return Ok(g.vertices().to_vec());
    }
    if let Some(path) = rotation_extension(g) {
        return Ok(path);
    }
    if n <= 16 {
        let path = g.longest_path();
        if path.len() == n {
            return Ok(path);
        }
    }
    Err(DetectError::NoHamiltonianPath {
        min_degree: g.min_degree(),
        threshold: n.div_ceil(2),
    })
}

fn rotation_extension(g: &Graph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut path: Vec<usize> = vec![g.vertices()[0]];
    let mut used: std::collections::BTreeSet<usize> = path.iter().copied().collect();
    let mut stall = 0usize;
    while path.len() < n {
        let end = *path.last().unwrap();
        if let Some(w) = g.neighbors(end).find(|w| !used.contains(w)) {
            path.push(w);
            used.insert(w);
            stall = 0;
            continue;
        }
        // also try extending at the front
        let front = path[0];
        if let Some(w) = g.neighbors(front).find(|w| !used.contains(w)) {
            path.insert(0, w);
            used.insert(w);
            stall = 0;
            continue;
        }
        // rotate: end adjacent to path[i] turns path[i+1] into a new end
        let mut rotated = false;
        for i in 0..path.len().saturating_sub(2) {
            if g.has_edge(end, path[i]) {
                let new_end = path[i + 1];
                let extendable = g.neighbors(new_end).any(|w| !used.contains(&w));
                if extendable || stall < path.len() {
                    path[i + 1..].reverse();
                    rotated = true;
                    if !extendable {
                        stall += 1;
                    }
                    break;
                }
            }
        }
        if !rotated {
            // close into a cycle and reopen at a vertex with outside neighbors
            let reopened = reopen_via_cycle(g, &mut path, &used);
            if !reopened {
                return None;
            }
            stall = 0;
        }
        if stall > 2 * n {
            return None;
        }
    }
    Some(path)
}

/// Chvatal-style crossing: with both endpoints saturated, find i with
/// end ~ path[i] and front ~ path[i+1]; the induced cycle plus any outside
/// attachment reopens a longer path.
fn reopen_via_cycle(g: &Graph, path: &mut Vec<usize>, used: &std::collections::BTreeSet<usize>) -> bool {
    let k = path.len();
    let end = path[k - 1];
    let front = path[0];
    for i in 0..k - 1 {
        if g.has_edge(end, path[i]) && g.has_edge(front, path[i + 1]) {
            // cycle: path[0..=i], path[k-1..=i+1]
            let mut cycle: Vec<usize> = path[0..=i].to_vec();
            cycle.extend(path[i + 1..].iter().rev());
            // find a cycle vertex adjacent to an unused vertex
            for (j, &cv) in cycle.iter().enumerate() {
                if let Some(w) = g.neighbors(cv).find(|w| !used.contains(w)) {
                    // reopen: start at w's neighbor, walk the cycle
                    let mut new_path = vec![w];
                    new_path.extend(cycle[j..].iter().copied());
                    new_path.extend(cycle[..j].iter().copied());
                    *path = new_path;
                    return true;
                }
            }
            return false;
        }
    }
    false
}
