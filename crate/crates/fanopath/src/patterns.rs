//! Canonical target hypergraphs: the Fano plane, tight paths and cycles,
//! and the tight path extended by three chords, plus the closed-form
//! goodness bound calculator.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern needs at least {need} vertices, got {got}")]
    TooFewVertices { need: usize, got: usize },
    #[error("expected exactly 7 vertices, found {0}")]
    WrongVertexCount(usize),
    #[error("nonpositive argument: {0}")]
    NonPositive(&'static str),
}

/// A labeled 3-uniform hypergraph to embed. Vertices are `0..n`, edges are
/// sorted triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub n: usize,
    pub edges: Vec<[usize; 3]>,
}

impl Pattern {
    fn new(name: String, n: usize, mut edges: Vec<[usize; 3]>) -> Pattern {
        for e in &mut edges {
            e.sort_unstable();
            debug_assert!(e[0] < e[1] && e[1] < e[2] && e[2] < n);
        }
        debug_assert!({
            let mut seen = edges.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == edges.len()
        });
        Pattern { name, n, edges }
    }

    /// Parse a pattern spec of the form `fano`, `path:<n>`, `cycle:<n>` or
    /// `pprime:<n>`.
    pub fn parse(spec: &str) -> Result<Pattern, String> {
        if spec == "fano" {
            return Ok(fano_lines());
        }
        let (kind, arg) = spec
            .split_once(':')
            .ok_or_else(|| format!("bad pattern spec `{spec}`"))?;
        let n: usize = arg.parse().map_err(|_| format!("bad pattern size `{arg}`"))?;
        let p = match kind {
            "path" => tight_path(n),
            "cycle" => tight_cycle(n),
            "pprime" => p_prime(n),
            _ => return Err(format!("unknown pattern `{kind}`")),
        };
        p.map_err(|e| e.to_string())
    }
}

/// The canonical labeling of the Fano plane's 7 lines.
pub const FANO_EDGES: [[usize; 3]; 7] = [
    [0, 1, 2],
    [0, 3, 4],
    [0, 5, 6],
    [1, 3, 5],
    [1, 4, 6],
    [2, 3, 6],
    [2, 4, 5],
];

pub fn fano_lines() -> Pattern {
    Pattern::new("fano".into(), 7, FANO_EDGES.to_vec())
}

/// True iff the given triples are the lines of a Fano plane on the 7 vertex
/// labels appearing in them: 7 distinct edges covering each of the 21
/// vertex pairs exactly once. Errors when the label set has size != 7.
pub fn is_fano(edges: &[[usize; 3]]) -> Result<bool, PatternError> {
    let mut verts: Vec<usize> = edges.iter().flatten().copied().collect();
    verts.sort_unstable();
    verts.dedup();
    if verts.len() != 7 {
        return Err(PatternError::WrongVertexCount(verts.len()));
    }
    let mut distinct: Vec<[usize; 3]> = edges
        .iter()
        .map(|e| {
            let mut t = *e;
            t.sort_unstable();
            t
        })
        .collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != 7 || distinct.iter().any(|t| t[0] == t[1] || t[1] == t[2]) {
        return Ok(false);
    }
    // each of the 21 pairs covered exactly once
    let mut cover = std::collections::BTreeMap::new();
    for t in &distinct {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *cover.entry((a, b)).or_insert(0u32) += 1;
        }
    }
    if cover.len() != 21 || cover.values().any(|&c| c != 1) {
        return Ok(false);
    }
    Ok(true)
}

/// Tight path on `n >= 3` vertices: edges `{i, i+1, i+2}`.
pub fn tight_path(n: usize) -> Result<Pattern, PatternError> {
    if n < 3 {
        return Err(PatternError::TooFewVertices { need: 3, got: n });
    }
    let edges = (0..n - 2).map(|i| [i, i + 1, i + 2]).collect();
    Ok(Pattern::new(format!("tight_path({n})"), n, edges))
}

/// Tight cycle on `n` vertices, indices wrapping mod n. The wrap rule
/// yields repeated triples below n = 4, so that is the minimum.
pub fn tight_cycle(n: usize) -> Result<Pattern, PatternError> {
    if n < 4 {
        return Err(PatternError::TooFewVertices { need: 4, got: n });
    }
    let edges = (0..n).map(|i| [i, (i + 1) % n, (i + 2) % n]).collect();
    Ok(Pattern::new(format!("tight_cycle({n})"), n, edges))
}

/// The tight path on `n >= 6` vertices plus the three chords
/// `{1,2,5}, {0,1,4}, {0,3,5}` (0-based).
pub fn p_prime(n: usize) -> Result<Pattern, PatternError> {
    if n < 6 {
        return Err(PatternError::TooFewVertices { need: 6, got: n });
    }
    let mut edges: Vec<[usize; 3]> = (0..n - 2).map(|i| [i, i + 1, i + 2]).collect();
    edges.push([1, 2, 5]);
    edges.push([0, 1, 4]);
    edges.push([0, 3, 5]);
    Ok(Pattern::new(format!("p_prime({n})"), n, edges))
}

/// The goodness bound `(chi_H - 1)(v_G - 1) + sigma_H`.
pub fn h_good_bound(v_g: u64, chi_h: u64, sigma_h: u64) -> Result<u64, PatternError> {
    if v_g < 1 {
        return Err(PatternError::NonPositive("v_G"));
    }
    if chi_h < 2 {
        return Err(PatternError::NonPositive("chi_H"));
    }
    if sigma_h < 1 {
        return Err(PatternError::NonPositive("sigma_H"));
    }
    Ok((chi_h - 1) * (v_g - 1) + sigma_h)
}

/// Whether the Fano plane admits a proper 2-coloring of its vertices (no
/// monochromatic line), established by scanning all 2^7 bipartitions.
/// Always false; the scan is the proof.
pub fn fano_two_colorable() -> bool {
    count_fano_proper_2_colorings() > 0
}

/// Number of vertex bipartitions of the Fano plane with no monochromatic
/// line, over the full 2^7 scan.
pub fn count_fano_proper_2_colorings() -> u32 {
    let mut count = 0;
    for mask in 0u32..(1 << 7) {
        let proper = FANO_EDGES.iter().all(|e| {
            let bits = [mask >> e[0] & 1, mask >> e[1] & 1, mask >> e[2] & 1];
            bits[0] + bits[1] + bits[2] != 0 && bits[0] + bits[1] + bits[2] != 3
        });
        if proper {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_canonical() {
        let f = fano_lines();
        assert_eq!(f.n, 7);
        assert_eq!(f.edges.len(), 7);
        assert_eq!(is_fano(&f.edges), Ok(true));
        // deleting any one edge leaves a pair uncovered
        for i in 0..7 {
            let mut edges = f.edges.clone();
            edges.remove(i);
            assert_eq!(is_fano(&edges), Ok(false));
        }
    }

    #[test]
    fn is_fano_rejects() {
        // 7 triples all containing vertex 0
        let edges: Vec<[usize; 3]> = (0..7)
            .map(|i| [0, 1 + i % 6, 1 + (i + 1) % 6])
            .collect();
        assert_eq!(is_fano(&edges), Ok(false));
        // repeated edges collapse below 7
        let p = tight_path(7).unwrap();
        let mut edges = p.edges.clone();
        edges.push(edges[0]);
        edges.push(edges[1]);
        assert_eq!(is_fano(&edges), Ok(false));
        // wrong vertex count
        assert!(matches!(
            is_fano(&[[0, 1, 2]]),
            Err(PatternError::WrongVertexCount(3))
        ));
    }

    #[test]
    fn tight_path_shapes() {
        assert_eq!(tight_path(3).unwrap().edges, vec![[0, 1, 2]]);
        assert_eq!(tight_path(7).unwrap().edges.len(), 5);
        assert!(tight_path(2).is_err());
    }

    #[test]
    fn tight_cycle_shapes() {
        let c5 = tight_cycle(5).unwrap();
        assert_eq!(c5.edges.len(), 5);
        assert!(c5.edges.contains(&[0, 3, 4]));
        assert!(c5.edges.contains(&[0, 1, 4]));
        // n = 4 is the least n with 4 distinct wrap edges
        let c4 = tight_cycle(4).unwrap();
        let mut es = c4.edges.clone();
        es.sort_unstable();
        es.dedup();
        assert_eq!(es.len(), 4);
        assert!(tight_cycle(3).is_err());
    }

    #[test]
    fn cycle_contains_path() {
        // dropping the three edges through the last vertex leaves the tight path
        for n in 5..=9 {
            let c = tight_cycle(n).unwrap();
            let kept: Vec<[usize; 3]> = c
                .edges
                .iter()
                .filter(|e| !e.contains(&(n - 1)))
                .copied()
                .collect();
            let p = tight_path(n - 1).unwrap();
            let mut kept_sorted = kept;
            kept_sorted.sort_unstable();
            let mut path_sorted = p.edges.clone();
            path_sorted.sort_unstable();
            assert_eq!(kept_sorted, path_sorted);
        }
    }

    #[test]
    fn p_prime_shapes() {
        let p = p_prime(6).unwrap();
        assert_eq!(p.edges.len(), 7);
        for n in 6..=12 {
            let p = p_prime(n).unwrap();
            assert_eq!(p.edges.len(), n - 2 + 3);
            let path = tight_path(n).unwrap();
            for e in &path.edges {
                assert!(p.edges.contains(e));
            }
            // the chords join vertices at distance >= 2 along the path
            for chord in [[1, 2, 5], [0, 1, 4], [0, 3, 5]] {
                assert!(p.edges.contains(&chord));
                assert!(chord[2] - chord[0] >= 2);
            }
        }
        assert!(p_prime(5).is_err());
    }

    #[test]
    fn goodness_bound() {
        for n in [1u64, 2, 7, 10, 1000, 1_000_000] {
            assert_eq!(h_good_bound(n, 3, 1).unwrap(), 2 * n - 1);
        }
        assert_eq!(h_good_bound(1, 3, 5).unwrap(), 5);
        assert_eq!(h_good_bound(7, 3, 1).unwrap(), 13);
        assert!(h_good_bound(0, 3, 1).is_err());
        assert!(h_good_bound(3, 1, 1).is_err());
        assert!(h_good_bound(3, 3, 0).is_err());
    }

    #[test]
    fn fano_not_two_colorable() {
        assert!(!fano_two_colorable());
        assert_eq!(count_fano_proper_2_colorings(), 0);
    }

    #[test]
    fn pattern_parse() {
        assert_eq!(Pattern::parse("fano").unwrap().name, "fano");
        assert_eq!(Pattern::parse("path:5").unwrap().edges.len(), 3);
        assert_eq!(Pattern::parse("cycle:5").unwrap().edges.len(), 5);
        assert_eq!(Pattern::parse("pprime:6").unwrap().edges.len(), 7);
        assert!(Pattern::parse("blob:3").is_err());
        assert!(Pattern::parse("path:x").is_err());
    }
}
