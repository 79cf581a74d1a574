//! Small deterministic graph and digraph types used by the detectors and
//! the pipeline. Vertices are arbitrary usize labels; all iteration is in
//! ascending label order so downstream greedy procedures are reproducible.

use std::collections::{BTreeMap, BTreeSet};

/// Undirected simple graph on explicit vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    verts: Vec<usize>,
    adj: BTreeMap<usize, BTreeSet<usize>>,
}

impl Graph {
    pub fn new(verts: &[usize]) -> Graph {
        let mut vs: Vec<usize> = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let adj = vs.iter().map(|&v| (v, BTreeSet::new())).collect();
        Graph { verts: vs, adj }
    }

    pub fn complete(verts: &[usize]) -> Graph {
        let mut g = Graph::new(verts);
        for (i, &a) in g.verts.clone().iter().enumerate() {
            for &b in &g.verts.clone()[i + 1..] {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn vertex_count(&self) -> usize {
        self.verts.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "no self-loops");
        self.adj.get_mut(&a).expect("vertex a").insert(b);
        self.adj.get_mut(&b).expect("vertex b").insert(a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[&v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[&v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.verts.iter().map(|&v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges as sorted pairs in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &a in &self.verts {
            for &b in &self.adj[&a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(&self.verts);
        for (i, &a) in self.verts.iter().enumerate() {
            for &b in &self.verts[i + 1..] {
                if !self.has_edge(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Edge-intersection of graphs over the same vertex set.
    pub fn intersect(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(&self.verts);
        for (a, b) in self.edges() {
            if other.has_edge(a, b) {
                g.add_edge(a, b);
            }
        }
        g
    }

    /// Lexicographically least 4-clique, if any.
    pub fn find_k4(&self) -> Option<[usize; 4]> {
        let vs = &self.verts;
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                if !self.has_edge(a, b) {
                    continue;
                }
                for (k, &c) in vs.iter().enumerate().skip(j + 1) {
                    if !(self.has_edge(a, c) && self.has_edge(b, c)) {
                        continue;
                    }
                    for &d in vs.iter().skip(k + 1) {
                        if self.has_edge(a, d) && self.has_edge(b, d) && self.has_edge(c, d) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Lexicographically least path with 3 edges (4 distinct vertices), if any.
    pub fn find_p4(&self) -> Option<[usize; 4]> {
        for &w in &self.verts {
            for x in self.neighbors(w) {
                for y in self.neighbors(x) {
                    if y == w {
                        continue;
                    }
                    for z in self.neighbors(y) {
                        if z != w && z != x {
                            return Some([w, x, y, z]);
                        }
                    }
                }
            }
        }
        None
    }

    /// A longest simple path: exact held-subset DP for up to 16 vertices,
    /// greedy DFS with 2-opt style extension above that.
    pub fn longest_path(&self) -> Vec<usize> {
        let n = self.verts.len();
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![self.verts[0]];
        }
        if n <= 16 {
            self.longest_path_exact()
        } else {
            self.longest_path_greedy()
        }
    }

    fn longest_path_exact(&self) -> Vec<usize> {
        let n = self.verts.len();
        let idx: BTreeMap<usize, usize> = self.verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<u32> = self
            .verts
            .iter()
            .map(|&v| {
                let mut m = 0u32;
                for w in self.neighbors(v) {
                    m |= 1 << idx[&w];
                }
                m
            })
            .collect();
        // dp[mask][last] = reachable
        let mut dp = vec![0u32; 1 << n];
        for i in 0..n {
            dp[1 << i] |= 1 << i;
        }
        let mut best_mask = 1usize;
        let mut best_last = 0usize;
        let mut best_len = 1u32;
        for mask in 1usize..(1 << n) {
            let ends = dp[mask];
            if ends == 0 {
                continue;
            }
            let len = (mask as u32).count_ones();
            if len > best_len {
                best_len = len;
                best_mask = mask;
                best_last = ends.trailing_zeros() as usize;
            }
            for last in 0..n {
                if ends & (1 << last) == 0 {
                    continue;
                }
                let mut next = adj[last] & !(mask as u32);
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    dp[mask | (1 << w)] |= 1 << w;
                }
            }
        }
        // reconstruct backwards
        let mut path = vec![best_last];
        let mut mask = best_mask;
        let mut last = best_last;
        while mask.count_ones() > 1 {
            let prev_mask = mask & !(1 << last);
            let mut found = false;
            for p in 0..n {
                if prev_mask & (1 << p) != 0
                    && dp[prev_mask] & (1 << p) != 0
                    && adj[p] & (1 << last) != 0
                {
                    path.push(p);
                    mask = prev_mask;
                    last = p;
                    found = true;
                    break;
                }
            }
            assert!(found, "dp reconstruction");
        }
        path.reverse();
        path.into_iter().map(|i| self.verts[i]).collect()
    }

    fn longest_path_greedy(&self) -> Vec<usize> {
        // greedy DFS from each start, keep the best; rotations extend stuck paths
        let mut best: Vec<usize> = Vec::new();
        for &start in &self.verts {
            let mut path = vec![start];
            let mut used: BTreeSet<usize> = [start].into();
            loop {
                let end = *path.last().unwrap();
                let next = self.neighbors(end).find(|w| !used.contains(w));
                match next {
                    Some(w) => {
                        path.push(w);
                        used.insert(w);
                    }
                    None => {
                        // single rotation attempt
                        let mut rotated = false;
                        for (i, &v) in path.iter().enumerate().take(path.len().saturating_sub(2)) {
                            if self.has_edge(end, v) {
                                let new_end = path[i + 1];
                                if self.neighbors(new_end).any(|w| !used.contains(&w)) {
                                    path[i + 1..].reverse();
                                    rotated = true;
                                    break;
                                }
                            }
                        }
                        if !rotated {
                            break;
                        }
                    }
                }
            }
            if path.len() > best.len() {
                best = path;
            }
        }
        best
    }

    /// Maximum matching between two vertex groups of this graph, by
    /// augmenting paths. Returns pairs (left, right).
    pub fn max_bipartite_matching(&self, left: &[usize], right: &[usize]) -> Vec<(usize, usize)> {
        let mut match_right: BTreeMap<usize, usize> = BTreeMap::new();
        for &l in left {
            let mut seen = BTreeSet::new();
            self.try_augment(l, right, &mut match_right, &mut seen);
        }
        match_right.iter().map(|(&r, &l)| (l, r)).collect()
    }

    fn try_augment(
        &self,
        l: usize,
        right: &[usize],
        match_right: &mut BTreeMap<usize, usize>,
        seen: &mut BTreeSet<usize>,
    ) -> bool {
        for &r in right {
            if self.has_edge(l, r) && seen.insert(r) {
                let prev = match_right.get(&r).copied();
                match prev {
                    None => {
                        match_right.insert(r, l);
                        return true;
                    }
                    Some(p) => {
                        if self.try_augment(p, right, match_right, seen) {
                            match_right.insert(r, l);
                            return true;
                        }
                    }
                }
            }
        }
        false
    }
}

/// Directed graph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    verts: Vec<usize>,
    arcs: BTreeMap<usize, BTreeSet<usize>>,
}

impl Digraph {
    pub fn new(verts: &[usize]) -> Digraph {
        let mut vs: Vec<usize> = verts.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let arcs = vs.iter().map(|&v| (v, BTreeSet::new())).collect();
        Digraph { verts: vs, arcs }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn add_arc(&mut self, from: usize, to: usize) {
        assert!(from != to, "no self-loops");
        self.arcs.get_mut(&from).expect("vertex").insert(to);
        assert!(self.arcs.contains_key(&to), "unknown target vertex");
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.arcs.get(&from).is_some_and(|s| s.contains(&to))
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs[&v].iter().copied()
    }

    pub fn out_degree_into(&self, v: usize, targets: &[usize]) -> usize {
        targets.iter().filter(|&&t| self.has_arc(v, t)).count()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.values().map(|s| s.len()).sum()
    }
}

/// A two-coloring of the complete bipartite graph between `left` and
/// `right` part sizes; entry (i, j) is the color of edge (i, j).
#[derive(Debug, Clone)]
pub struct BipartiteColoring {
    pub left: usize,
    pub right: usize,
    red: Vec<bool>,
}

impl BipartiteColoring {
    pub fn new(left: usize, right: usize) -> BipartiteColoring {
        BipartiteColoring {
            left,
            right,
            red: vec![false; left * right],
        }
    }

    pub fn from_rule<F: FnMut(usize, usize) -> bool>(
        left: usize,
        right: usize,
        mut is_red: F,
    ) -> BipartiteColoring {
        let mut b = BipartiteColoring::new(left, right);
        for i in 0..left {
            for j in 0..right {
                if is_red(i, j) {
                    b.set_red(i, j);
                }
            }
        }
        b
    }

    pub fn set_red(&mut self, i: usize, j: usize) {
        self.red[i * self.right + j] = true;
    }

    pub fn is_red(&self, i: usize, j: usize) -> bool {
        self.red[i * self.right + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_detection() {
        let g = Graph::complete(&[1, 2, 5, 9]);
        assert_eq!(g.find_k4(), Some([1, 2, 5, 9]));
        let mut g = Graph::complete(&[0, 1, 2, 3]);
        g = {
            let mut h = Graph::new(g.vertices());
            for (a, b) in g.edges() {
                if (a, b) != (0, 3) {
                    h.add_edge(a, b);
                }
            }
            h
        };
        assert_eq!(g.find_k4(), None);
    }

    #[test]
    fn p4_detection() {
        let mut g = Graph::new(&[0, 1, 2, 3]);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        assert_eq!(g.find_p4(), Some([0, 1, 2, 3]));
        // perfect matching has no 3-edge path
        let mut m = Graph::new(&[0, 1, 2, 3]);
        m.add_edge(0, 1);
        m.add_edge(2, 3);
        assert_eq!(m.find_p4(), None);
    }

    #[test]
    fn longest_path_exact_small() {
        let mut g = Graph::new(&[0, 1, 2, 3, 4]);
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        // isolated vertex 4
        let p = g.longest_path();
        assert_eq!(p.len(), 4);
        assert!(p.windows(2).all(|w| g.has_edge(w[0], w[1])));
        let k5 = Graph::complete(&[0, 1, 2, 3, 4]);
        assert_eq!(k5.longest_path().len(), 5);
    }

    #[test]
    fn matching_small() {
        let mut g = Graph::new(&[0, 1, 10, 11]);
        g.add_edge(0, 10);
        g.add_edge(1, 10);
        g.add_edge(1, 11);
        let m = g.max_bipartite_matching(&[0, 1], &[10, 11]);
        assert_eq!(m.len(), 2);
    }
}
