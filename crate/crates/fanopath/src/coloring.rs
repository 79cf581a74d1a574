//! Dense red/blue colorings of the complete 3-uniform hypergraph `K_N^(3)`.
//!
//! Triples `{a<b<c}` over `[N]` are indexed by their colexicographic rank
//! `C(c,3)+C(b,2)+C(a,1)`, so the red edge set is a flat bitset and color
//! lookup is O(1). Blue is the complement of red. A `Coloring` is immutable
//! after construction; everything in this module is a pure function.

use std::fmt;

use thiserror::Error;

use crate::graph::{Digraph, Graph};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("triple has duplicate vertices: {0:?}")]
    DuplicateVertex([usize; 3]),
    #[error("vertex {vertex} out of range for N={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex sets overlap at {0}")]
    OverlappingSets(usize),
    #[error("link center {0} lies in the ground set")]
    CenterInGround(usize),
    #[error("set too small: need at least {need}, got {got}")]
    SetTooSmall { need: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Colexicographic rank of a triple `{a<b<c}`: `C(c,3)+C(b,2)+C(a,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleId(pub u64);

/// Binomial coefficient, exact in u64 for the sizes used here.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Colex rank of `triple` over `[n]`. The triple need not be sorted.
pub fn triple_rank(triple: [usize; 3], n: usize) -> Result<TripleId, ColoringError> {
    let mut t = triple;
    t.sort_unstable();
    if t[0] == t[1] || t[1] == t[2] {
        return Err(ColoringError::DuplicateVertex(triple));
    }
    if t[2] >= n {
        return Err(ColoringError::VertexOutOfRange { vertex: t[2], n });
    }
    Ok(TripleId(
        binom(t[2] as u64, 3) + binom(t[1] as u64, 2) + t[0] as u64,
    ))
}

/// Inverse of [`triple_rank`]: the triple `{a<b<c}` of the given colex rank.
pub fn triple_unrank(rank: TripleId, n: usize) -> Result<[usize; 3], ColoringError> {
    let total = binom(n as u64, 3);
    if rank.0 >= total {
        return Err(ColoringError::VertexOutOfRange {
            vertex: n,
            n,
        });
    }
    let mut r = rank.0;
    let mut c = 2u64;
    while binom(c + 1, 3) <= r {
        c += 1;
    }
    r -= binom(c, 3);
    let mut b = 1u64;
    while binom(b + 1, 2) <= r {
        b += 1;
    }
    r -= binom(b, 2);
    Ok([r as usize, b as usize, c as usize])
}

/// A red/blue coloring of all triples of `[N]`. Red is stored as a bitset
/// indexed by colex rank; blue is implicit as the complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    n: usize,
    red: Vec<u64>,
    red_count: u64,
}

impl Coloring {
    pub fn all_blue(n: usize) -> Coloring {
        let bits = binom(n as u64, 3) as usize;
        Coloring {
            n,
            red: vec![0u64; bits.div_ceil(64)],
            red_count: 0,
        }
    }

    pub fn all_red(n: usize) -> Coloring {
        let mut c = Coloring::all_blue(n);
        let bits = binom(n as u64, 3);
        for r in 0..bits {
            c.red[(r / 64) as usize] |= 1u64 << (r % 64);
        }
        c.red_count = bits;
        c
    }

    /// Build from a predicate on sorted triples.
    pub fn from_rule<F: FnMut([usize; 3]) -> Color>(n: usize, mut rule: F) -> Coloring {
        let mut c = Coloring::all_blue(n);
        for t in all_triples(n) {
            if rule(t) == Color::Red {
                c.set_red_unchecked(t);
            }
        }
        c
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn triple_count(&self) -> u64 {
        binom(self.n as u64, 3)
    }

    pub fn red_count(&self) -> u64 {
        self.red_count
    }

    pub fn blue_count(&self) -> u64 {
        self.triple_count() - self.red_count
    }

    fn set_red_unchecked(&mut self, t: [usize; 3]) {
        let rank = triple_rank(t, self.n).expect("valid triple").0;
        let w = &mut self.red[(rank / 64) as usize];
        let bit = 1u64 << (rank % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.red_count += 1;
        }
    }

    pub fn set_red(&mut self, t: [usize; 3]) -> Result<(), ColoringError> {
        triple_rank(t, self.n)?;
        self.set_red_unchecked(t);
        Ok(())
    }

    pub fn is_red_rank(&self, rank: TripleId) -> bool {
        let r = rank.0;
        self.red[(r / 64) as usize] & (1u64 << (r % 64)) != 0
    }

    pub fn color_of(&self, t: [usize; 3]) -> Result<Color, ColoringError> {
        let rank = triple_rank(t, self.n)?;
        Ok(if self.is_red_rank(rank) {
            Color::Red
        } else {
            Color::Blue
        })
    }

    /// Color lookup for a triple known to be valid. Panics on invalid input.
    pub fn color(&self, t: [usize; 3]) -> Color {
        self.color_of(t).expect("valid triple")
    }

    pub fn is_color(&self, t: [usize; 3], color: Color) -> bool {
        self.color(t) == color
    }

    /// All red triples in ascending colex order.
    pub fn red_triples(&self) -> Vec<[usize; 3]> {
        all_triples(self.n)
            .into_iter()
            .filter(|&t| self.color(t) == Color::Red)
            .collect()
    }

    /// Deterministic pseudo-random coloring, each triple red with probability 1/2.
    pub fn random(n: usize, seed: u64) -> Coloring {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Coloring::from_rule(n, |_| {
            if rng.gen_bool(0.5) {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }
}

/// All triples of `[n]` in ascending colex order.
pub fn all_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for c in 2..n {
        for b in 1..c {
            for a in 0..b {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// The link graph of `center` in `ground` for one color: vertices `ground`,
/// edge `ab` iff the triple `{center,a,b}` has that color.
#[derive(Debug, Clone)]
pub struct LinkGraph {
    pub center: usize,
    pub color: Color,
    pub graph: Graph,
}

pub fn link_graph(
    c: &Coloring,
    center: usize,
    ground: &[usize],
    color: Color,
) -> Result<LinkGraph, ColoringError> {
    if ground.contains(&center) {
        return Err(ColoringError::CenterInGround(center));
    }
    let mut g = Graph::new(ground);
    for (i, &a) in ground.iter().enumerate() {
        for &b in &ground[i + 1..] {
            if c.color_of([center, a, b])? == color {
                g.add_edge(a, b);
            }
        }
    }
    Ok(LinkGraph {
        center,
        color,
        graph: g,
    })
}

fn check_disjoint(sets: &[&[usize]]) -> Result<(), ColoringError> {
    let mut seen = std::collections::BTreeSet::new();
    for set in sets {
        for &v in *set {
            if !seen.insert(v) {
                return Err(ColoringError::OverlappingSets(v));
            }
        }
    }
    Ok(())
}

/// `|→AB|_color`: the number of hyperedges `a b1 b2` of the given color with
/// `a ∈ A` and `b1,b2 ∈ B`.
pub fn directed_count(
    c: &Coloring,
    a_set: &[usize],
    b_set: &[usize],
    color: Color,
) -> Result<u64, ColoringError> {
    check_disjoint(&[a_set, b_set])?;
    if b_set.len() < 2 {
        return Err(ColoringError::SetTooSmall {
            need: 2,
            got: b_set.len(),
        });
    }
    let mut count = 0u64;
    for &a in a_set {
        for (i, &b1) in b_set.iter().enumerate() {
            for &b2 in &b_set[i + 1..] {
                if c.color_of([a, b1, b2])? == color {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// `|ABC|_color`: hyperedges with exactly one vertex in each of three
/// pairwise disjoint sets.
pub fn cross_count(
    c: &Coloring,
    a_set: &[usize],
    b_set: &[usize],
    c_set: &[usize],
    color: Color,
) -> Result<u64, ColoringError> {
    check_disjoint(&[a_set, b_set, c_set])?;
    let mut count = 0u64;
    for &a in a_set {
        for &b in b_set {
            for &cc in c_set {
                if c.color_of([a, b, cc])? == color {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Auxiliary digraph of the butterfly-scarcity argument: arc `u -> v` when
/// `u` and `v` lie in different sets and every triple `{u,v,y}` with `y` in
/// `v`'s set is blue.
pub fn blue_fan_digraph(c: &Coloring, sets: &[&[usize]]) -> Result<Digraph, ColoringError> {
    check_disjoint(sets)?;
    let mut verts: Vec<usize> = sets.iter().flat_map(|s| s.iter().copied()).collect();
    verts.sort_unstable();
    let mut d = Digraph::new(&verts);
    for (i, si) in sets.iter().enumerate() {
        for (j, sj) in sets.iter().enumerate() {
            if i == j {
                continue;
            }
            for &u in *si {
                for &v in *sj {
                    let all_blue = sj
                        .iter()
                        .filter(|&&y| y != v)
                        .all(|&y| c.color([u, v, y]) == Color::Blue);
                    if all_blue && sj.len() > 1 {
                        d.add_arc(u, v);
                    }
                }
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(triple_rank([0, 1, 2], 5).unwrap().0, 0);
        assert_eq!(triple_rank([2, 3, 4], 5).unwrap().0, 9);
        // enumerate all triples of [5] in colex order: {0,1,3} is second
        assert_eq!(triple_rank([0, 1, 3], 5).unwrap().0, 1);
        assert_eq!(all_triples(5)[1], [0, 1, 3]);
    }

    #[test]
    fn rank_errors() {
        assert!(matches!(
            triple_rank([1, 1, 2], 5),
            Err(ColoringError::DuplicateVertex(_))
        ));
        assert!(matches!(
            triple_rank([0, 1, 5], 5),
            Err(ColoringError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn rank_bijection_small() {
        for n in 3..=12 {
            let triples = all_triples(n);
            assert_eq!(triples.len() as u64, binom(n as u64, 3));
            for (i, &t) in triples.iter().enumerate() {
                let r = triple_rank(t, n).unwrap();
                assert_eq!(r.0, i as u64, "colex ranks enumerate without gaps");
                assert_eq!(triple_unrank(r, n).unwrap(), t);
            }
        }
    }

    #[test]
    fn color_lookup() {
        let red = Coloring::all_red(6);
        let blue = Coloring::all_blue(6);
        assert_eq!(red.color([0, 1, 2]), Color::Red);
        assert_eq!(blue.color([3, 4, 5]), Color::Blue);
        assert_eq!(red.red_count() + red.blue_count(), binom(6, 3));
        assert_eq!(blue.red_count(), 0);
    }

    #[test]
    fn link_graph_extremes() {
        let red = Coloring::all_red(6);
        let w = [3, 4, 5];
        let lg = link_graph(&red, 0, &w, Color::Red).unwrap();
        assert_eq!(lg.graph.edge_count(), 3);
        let lg_blue = link_graph(&red, 0, &w, Color::Blue).unwrap();
        assert_eq!(lg_blue.graph.edge_count(), 0);
        assert!(link_graph(&red, 3, &w, Color::Red).is_err());
    }

    #[test]
    fn directed_count_partition() {
        let red = Coloring::all_red(6);
        let a = [0, 1];
        let b = [2, 3, 4];
        assert_eq!(directed_count(&red, &a, &b, Color::Red).unwrap(), 6);
        let c = Coloring::random(8, 7);
        let a = [0, 2, 5];
        let b = [1, 3, 4, 7];
        let r = directed_count(&c, &a, &b, Color::Red).unwrap();
        let bl = directed_count(&c, &a, &b, Color::Blue).unwrap();
        assert_eq!(r + bl, a.len() as u64 * binom(b.len() as u64, 2));
        assert!(directed_count(&c, &[0, 1], &[1, 2], Color::Red).is_err());
    }

    #[test]
    fn cross_count_partition() {
        let blue = Coloring::all_blue(7);
        let (a, b, c) = ([0, 1], [2, 3], [4, 5]);
        assert_eq!(cross_count(&blue, &a, &b, &c, Color::Blue).unwrap(), 8);
        assert_eq!(cross_count(&blue, &a, &b, &c, Color::Red).unwrap(), 0);
        let r = Coloring::random(9, 3);
        let (a, b, c) = ([0usize, 1, 8], [2usize, 3], [4usize, 5, 6]);
        let red = cross_count(&r, &a, &b, &c, Color::Red).unwrap();
        let bl = cross_count(&r, &a, &b, &c, Color::Blue).unwrap();
        assert_eq!(red + bl, (a.len() * b.len() * c.len()) as u64);
    }
}
