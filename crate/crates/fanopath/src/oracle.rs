//! Deliberately naive brute-force reference implementations. These are the
//! trust anchor for the detectors: no pruning beyond what is stated, no
//! symmetry reduction, mandatory budgets with loud exhaustion.

use std::sync::OnceLock;

use thiserror::Error;

use crate::coloring::{Color, Coloring};
use crate::detect::Witness;
use crate::patterns::{Pattern, FANO_EDGES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("pattern too large for exhaustive search: {0} vertices")]
    PatternTooLarge(usize),
}

/// Enumeration caps. Budgets are mandatory; exhaustion is an error, never
/// silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_nodes: u64,
}

impl OracleBudget {
    pub fn new(max_nodes: u64) -> OracleBudget {
        assert!(max_nodes > 0);
        OracleBudget { max_nodes }
    }
}

impl Default for OracleBudget {
    fn default() -> OracleBudget {
        OracleBudget {
            max_nodes: 2_000_000_000,
        }
    }
}

/// Enumerate all injective maps from pattern vertices to host vertices in
/// lexicographic order; return the least valid monochromatic witness.
pub fn exhaustive_embed(
    host: &Coloring,
    p: &Pattern,
    color: Color,
    budget: OracleBudget,
) -> Result<Option<Witness>, OracleError> {
    if p.n > 12 {
        return Err(OracleError::PatternTooLarge(p.n));
    }
    let n = host.n_vertices();
    if p.n > n {
        return Ok(None);
    }
    let mut map: Vec<usize> = Vec::with_capacity(p.n);
    let mut used = vec![false; n];
    let mut nodes = 0u64;
    if enumerate_maps(host, p, color, &mut map, &mut used, &mut nodes, budget.max_nodes)? {
        return Ok(Some(Witness {
            pattern: p.clone(),
            color,
            map,
        }));
    }
    Ok(None)
}

fn enumerate_maps(
    host: &Coloring,
    p: &Pattern,
    color: Color,
    map: &mut Vec<usize>,
    used: &mut [bool],
    nodes: &mut u64,
    max_nodes: u64,
) -> Result<bool, OracleError> {
    if map.len() == p.n {
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(OracleError::BudgetExceeded { nodes: *nodes });
        }
        let valid = p.edges.iter().all(|e| {
            host.color([map[e[0]], map[e[1]], map[e[2]]]) == color
        });
        return Ok(valid);
    }
    for v in 0..host.n_vertices() {
        if used[v] {
            continue;
        }
        map.push(v);
        used[v] = true;
        let found = enumerate_maps(host, p, color, map, used, nodes, max_nodes)?;
        if found {
            return Ok(true);
        }
        map.pop();
        used[v] = false;
    }
    Ok(false)
}

/// The 30 distinct Fano edge-sets on 7 labeled points (7!/|Aut F| =
/// 5040/168), computed once by deduplicating all relabelings of the
/// canonical lines.
pub fn fano_structures() -> &'static Vec<[[usize; 3]; 7]> {
    static STRUCTURES: OnceLock<Vec<[[usize; 3]; 7]>> = OnceLock::new();
    STRUCTURES.get_or_init(|| {
        let mut seen = std::collections::BTreeSet::new();
        let mut perm: Vec<usize> = (0..7).collect();
        let mut out = Vec::new();
        permute_collect(&mut perm, 0, &mut seen, &mut out);
        out
    })
}

fn permute_collect(
    perm: &mut Vec<usize>,
    k: usize,
    seen: &mut std::collections::BTreeSet<[[usize; 3]; 7]>,
    out: &mut Vec<[[usize; 3]; 7]>,
) {
    if k == perm.len() {
        let mut edges: Vec<[usize; 3]> = FANO_EDGES
            .iter()
            .map(|e| {
                let mut t = [perm[e[0]], perm[e[1]], perm[e[2]]];
                t.sort_unstable();
                t
            })
            .collect();
        edges.sort_unstable();
        let arr: [[usize; 3]; 7] = edges.try_into().unwrap();
        if seen.insert(arr) {
            out.push(arr);
        }
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_collect(perm, k + 1, seen, out);
        perm.swap(k, i);
    }
}

/// Number of distinct monochromatic Fano edge-sets in the coloring
/// (edge-set identity, not labeled maps). `threads` partitions the
/// 7-subset enumeration with a deterministic sum reduction.
pub fn count_fano_copies(c: &Coloring, color: Color, threads: usize) -> u64 {
    let n = c.n_vertices();
    if n < 7 {
        return 0;
    }
    let subsets = k_subsets(n, 7);
    let structures = fano_structures();
    let count_range = |range: &[Vec<usize>]| -> u64 {
        let mut count = 0u64;
        for subset in range {
            'structure: for s in structures {
                for e in s {
                    let t = [subset[e[0]], subset[e[1]], subset[e[2]]];
                    if c.color(t) != color {
                        continue 'structure;
                    }
                }
                count += 1;
            }
        }
        count
    };
    if threads <= 1 {
        return count_range(&subsets);
    }
    let chunk = subsets.len().div_ceil(threads);
    std::thread::scope(|s| {
        subsets
            .chunks(chunk.max(1))
            .map(|range| s.spawn(move || count_range(range)))
            .collect::<Vec<_>>()
            .into_iter()
            .map(|h| h.join().unwrap())
            .sum()
    })
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Depth-first search over ordered vertex sequences, pruning on non-red
/// consecutive triples: true iff a red tight path on `n` vertices exists.
pub fn exhaustive_tight_path(
    c: &Coloring,
    n: usize,
    budget: OracleBudget,
) -> Result<bool, OracleError> {
    let hosts = c.n_vertices();
    if n > hosts {
        return Ok(false);
    }
    if n <= 2 {
        return Ok(true);
    }
    let mut nodes = 0u64;
    let mut seq: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; hosts];
    fn dfs(
        c: &Coloring,
        n: usize,
        seq: &mut Vec<usize>,
        used: &mut [bool],
        nodes: &mut u64,
        max_nodes: u64,
    ) -> Result<bool, OracleError> {
        *nodes += 1;
        if *nodes > max_nodes {
            return Err(OracleError::BudgetExceeded { nodes: *nodes });
        }
        if seq.len() == n {
            return Ok(true);
        }
        for v in 0..c.n_vertices() {
            if used[v] {
                continue;
            }
            if seq.len() >= 2 {
                let t = [seq[seq.len() - 2], seq[seq.len() - 1], v];
                if c.color(t) != Color::Red {
                    continue;
                }
            }
            seq.push(v);
            used[v] = true;
            if dfs(c, n, seq, used, nodes, max_nodes)? {
                return Ok(true);
            }
            seq.pop();
            used[v] = false;
        }
        Ok(false)
    }
    dfs(c, n, &mut seq, &mut used, &mut nodes, budget.max_nodes)
}

/// Verdict of a micro-scale Ramsey check by coloring enumeration.
#[derive(Debug, Clone, PartialEq)]
pub enum RamseyVerdict {
    /// Every coloring contains a red copy of the first pattern or a blue
    /// copy of the second.
    Unavoidable,
    /// A certificate coloring avoiding both.
    Avoidable(Coloring),
    BudgetExceeded,
}

/// Pruned DFS over triple colors with early monochrome detection: decides
/// whether every red/blue coloring of K_N^(3) contains red `red_p` or blue
/// `blue_p`.
pub fn ramsey_verify_tiny(
    red_p: &Pattern,
    blue_p: &Pattern,
    n: usize,
    budget: OracleBudget,
) -> RamseyVerdict {
    let triples = crate::coloring::all_triples(n);
    let mut nodes = 0u64;
    let mut red_set: Vec<[usize; 3]> = Vec::new();
    let result = ramsey_dfs(
        red_p,
        blue_p,
        n,
        &triples,
        0,
        &mut red_set,
        &mut nodes,
        budget.max_nodes,
    );
    match result {
        None => RamseyVerdict::BudgetExceeded,
        Some(Some(coloring)) => RamseyVerdict::Avoidable(coloring),
        Some(None) => RamseyVerdict::Unavoidable,
    }
}

/// Returns None on budget exhaustion, Some(Some(c)) when an avoiding
/// coloring is found, Some(None) when the branch is exhausted.
#[allow(clippy::too_many_arguments)]
fn ramsey_dfs(
    red_p: &Pattern,
    blue_p: &Pattern,
    n: usize,
    triples: &[[usize; 3]],
    idx: usize,
    red_set: &mut Vec<[usize; 3]>,
    nodes: &mut u64,
    max_nodes: u64,
) -> Option<Option<Coloring>> {
    *nodes += 1;
    if *nodes > max_nodes {
        return None;
    }
    if idx == triples.len() {
        let mut c = Coloring::all_blue(n);
        for &t in red_set.iter() {
            c.set_red(t).expect("valid triple");
        }
        // final check: assigned-red must avoid red_p, the rest (all blue)
        // must avoid blue_p
        if contains_pattern(n, red_set, red_p) {
            return Some(None);
        }
        let blue: Vec<[usize; 3]> = triples
            .iter()
            .filter(|t| !red_set.contains(t))
            .copied()
            .collect();
        if contains_pattern(n, &blue, blue_p) {
            return Some(None);
        }
        return Some(Some(c));
    }
    // try blue (leave unassigned-as-blue), prune when blue already forced
    let blue_so_far: Vec<[usize; 3]> = triples[..=idx]
        .iter()
        .filter(|t| !red_set.contains(t))
        .copied()
        .collect();
    if !contains_pattern(n, &blue_so_far, blue_p) {
        if let Some(found) = ramsey_dfs(red_p, blue_p, n, triples, idx + 1, red_set, nodes, max_nodes)? .map(Some) {
            return Some(found);
        }
    }
    // try red
    red_set.push(triples[idx]);
    let pruned = contains_pattern(n, red_set, red_p);
    if !pruned {
        match ramsey_dfs(red_p, blue_p, n, triples, idx + 1, red_set, nodes, max_nodes) {
            None => {
                red_set.pop();
                return None;
            }
            Some(Some(c)) => {
                red_set.pop();
                return Some(Some(c));
            }
            Some(None) => {}
        }
    }
    red_set.pop();
    Some(None)
}

/// Does the edge set contain an embedding of the pattern? Used for
/// monochrome detection during coloring enumeration.
fn contains_pattern(n: usize, edges: &[[usize; 3]], p: &Pattern) -> bool {
    if edges.len() < p.edges.len() || p.n > n {
        return false;
    }
    let edge_set: std::collections::BTreeSet<[usize; 3]> = edges.iter().copied().collect();
    let mut map: Vec<usize> = Vec::with_capacity(p.n);
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        edge_set: &std::collections::BTreeSet<[usize; 3]>,
        p: &Pattern,
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let depth = map.len();
        if depth == p.n {
            return true;
        }
        'cand: for v in 0..n {
            if used[v] {
                continue;
            }
            for e in &p.edges {
                if *e.iter().max().unwrap() == depth {
                    let mut t = [
                        if e[0] == depth { v } else { map[e[0]] },
                        if e[1] == depth { v } else { map[e[1]] },
                        if e[2] == depth { v } else { map[e[2]] },
                    ];
                    t.sort_unstable();
                    if !edge_set.contains(&t) {
                        continue 'cand;
                    }
                }
            }
            map.push(v);
            used[v] = true;
            if rec(n, edge_set, p, map, used) {
                return true;
            }
            map.pop();
            used[v] = false;
        }
        false
    }
    rec(n, &edge_set, p, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::lower_bound_coloring;
    use crate::patterns::{fano_lines, tight_path};

    #[test]
    fn thirty_structures() {
        assert_eq!(fano_structures().len(), 30);
    }

    #[test]
    fn embed_identity_on_all_blue() {
        let c = Coloring::all_blue(7);
        let w = exhaustive_embed(&c, &fano_lines(), Color::Blue, OracleBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.map, vec![0, 1, 2, 3, 4, 5, 6]);
        assert!(w.verify(&c));
        let red = Coloring::all_red(7);
        assert!(
            exhaustive_embed(&red, &fano_lines(), Color::Blue, OracleBudget::default())
                .unwrap()
                .is_none()
        );
    }

    #[test]
    fn fano_count_k7() {
        let c = Coloring::all_blue(7);
        assert_eq!(count_fano_copies(&c, Color::Blue, 1), 30);
        assert_eq!(count_fano_copies(&c, Color::Red, 1), 0);
        let red = Coloring::all_red(7);
        assert_eq!(count_fano_copies(&red, Color::Blue, 1), 0);
    }

    #[test]
    fn fano_count_k8_consistency() {
        // every 7-subset of K8 contributes 30 copies
        let c = Coloring::all_blue(8);
        assert_eq!(count_fano_copies(&c, Color::Blue, 1), 30 * 8);
        assert_eq!(count_fano_copies(&c, Color::Blue, 4), 30 * 8);
    }

    #[test]
    fn lower_bound_no_blue_fano_by_count() {
        for n in 4..=7 {
            let (c, _) = lower_bound_coloring(n).unwrap();
            assert_eq!(count_fano_copies(&c, Color::Blue, 1), 0);
        }
    }

    #[test]
    fn tight_path_oracle() {
        let red = Coloring::all_red(6);
        assert!(exhaustive_tight_path(&red, 6, OracleBudget::default()).unwrap());
        let (c, _) = lower_bound_coloring(6).unwrap();
        assert!(!exhaustive_tight_path(&c, 6, OracleBudget::default()).unwrap());
        assert!(exhaustive_tight_path(&c, 5, OracleBudget::default()).unwrap());
    }

    #[test]
    fn budget_is_loud() {
        let c = Coloring::random(10, 1);
        let tiny = OracleBudget::new(5);
        assert!(matches!(
            exhaustive_embed(&c, &fano_lines(), Color::Blue, tiny),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn ramsey_single_edge() {
        let t3 = tight_path(3).unwrap();
        let v = ramsey_verify_tiny(&t3, &t3, 3, OracleBudget::default());
        assert_eq!(v, RamseyVerdict::Unavoidable);
    }

    #[test]
    fn ramsey_avoidable_small() {
        // no Fano fits in 6 vertices; a red T4 is avoidable there
        let t4 = tight_path(4).unwrap();
        let f = fano_lines();
        match ramsey_verify_tiny(&t4, &f, 6, OracleBudget::default()) {
            RamseyVerdict::Avoidable(c) => {
                assert!(
                    exhaustive_embed(&c, &t4, Color::Red, OracleBudget::default())
                        .unwrap()
                        .is_none()
                );
                assert_eq!(count_fano_copies(&c, Color::Blue, 1), 0);
            }
            other => panic!("expected avoidable, got {other:?}"),
        }
    }
}
