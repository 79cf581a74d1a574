//! Extremal coloring generators, the universal blue-Fano gadget, and the
//! closed-form bound calculators.

use thiserror::Error;

use crate::coloring::{binom, Color, Coloring};

#[derive(Debug, Error, PartialEq)]
pub enum ConstructError {
    #[error("n must be at least {need}, got {got}")]
    TooSmall { need: usize, got: usize },
    #[error("n must be divisible by 3, got {0}")]
    NotDivisibleBy3(usize),
    #[error("gadget vertices must be distinct")]
    DuplicateVertex,
    #[error("domain violation: {0}")]
    Domain(&'static str),
}

/// An ordered partition of `[N]` into disjoint nonempty blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpec {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSpec {
    fn contiguous(sizes: &[usize]) -> BlockSpec {
        let mut blocks = Vec::new();
        let mut next = 0;
        for &s in sizes {
            blocks.push((next..next + s).collect());
            next += s;
        }
        BlockSpec { blocks }
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&v))
    }
}

/// The folklore lower-bound coloring on `2n-2` vertices: two blocks
/// `A = {0..n-2}`, `B = {n-1..2n-3}`; a triple is red iff it lies entirely
/// inside one block.
pub fn lower_bound_coloring(n: usize) -> Result<(Coloring, BlockSpec), ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall { need: 3, got: n });
    }
    Ok(two_block_coloring(n - 1, n - 1))
}

/// Pipeline demo instance on `2n-1` vertices: same rule with `|A| = n`,
/// `|B| = n-1`. Contains a red tight path on n vertices and no blue Fano.
pub fn extended_lower_bound(n: usize) -> Result<(Coloring, BlockSpec), ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall { need: 3, got: n });
    }
    Ok(two_block_coloring(n, n - 1))
}

fn two_block_coloring(a: usize, b: usize) -> (Coloring, BlockSpec) {
    let spec = BlockSpec::contiguous(&[a, b]);
    let c = Coloring::from_rule(a + b, |t| {
        let inside_a = t[2] < a;
        let inside_b = t[0] >= a;
        if inside_a || inside_b {
            Color::Red
        } else {
            Color::Blue
        }
    });
    (c, spec)
}

/// The sharpness coloring on `2n` vertices (`3 | n`): blocks A, B, C of
/// size `2n/3`; a triple is red iff two of its vertices are in one block
/// and the third is in that block or the cyclically next one
/// (A -> B -> C -> A).
pub fn sharpness_coloring(n: usize) -> Result<(Coloring, BlockSpec), ConstructError> {
    if n < 6 {
        return Err(ConstructError::TooSmall { need: 6, got: n });
    }
    if n % 3 != 0 {
        return Err(ConstructError::NotDivisibleBy3(n));
    }
    let s = 2 * n / 3;
    let spec = BlockSpec::contiguous(&[s, s, s]);
    let block = |v: usize| v / s;
    let c = Coloring::from_rule(2 * n, |t| {
        let bs = [block(t[0]), block(t[1]), block(t[2])];
        for pair_block in 0..3 {
            let in_pair = bs.iter().filter(|&&b| b == pair_block).count();
            if in_pair >= 2 {
                let next = (pair_block + 1) % 3;
                let third_ok = bs.iter().all(|&b| b == pair_block || b == next);
                if third_ok {
                    return Color::Red;
                }
            }
        }
        Color::Blue
    });
    Ok((c, spec))
}

/// The seven triples
/// `{x s1 s2, x t1 t2, x t3 t4, s1 t1 t4, s1 t2 t3, s2 t1 t3, s2 t2 t4}`
/// on seven distinct vertices; they always form a Fano plane.
pub fn gadget_fano_7(v: [usize; 7]) -> Result<[[usize; 3]; 7], ConstructError> {
    let mut sorted = v;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ConstructError::DuplicateVertex);
    }
    let [x, s1, s2, t1, t2, t3, t4] = v;
    let mut edges = [
        [x, s1, s2],
        [x, t1, t2],
        [x, t3, t4],
        [s1, t1, t4],
        [s1, t2, t3],
        [s2, t1, t3],
        [s2, t2, t4],
    ];
    for e in &mut edges {
        e.sort_unstable();
    }
    Ok(edges)
}

/// The clique Ramsey upper-bound formula `2^(C * t^(s-2) * log t)` with
/// natural log. This is an upper-bound formula, not a Ramsey value; the
/// log base is a parameter because the source leaves it unspecified.
pub fn cfs_bound(s: u64, t: u64, c: f64) -> Result<f64, ConstructError> {
    cfs_bound_with_base(s, t, c, std::f64::consts::E)
}

pub fn cfs_bound_with_base(s: u64, t: u64, c: f64, base: f64) -> Result<f64, ConstructError> {
    if s < 4 {
        return Err(ConstructError::Domain("s must be >= 4"));
    }
    if t < 2 {
        return Err(ConstructError::Domain("t must be >= 2"));
    }
    if c <= 0.0 {
        return Err(ConstructError::Domain("C must be positive"));
    }
    if base <= 1.0 {
        return Err(ConstructError::Domain("log base must exceed 1"));
    }
    let log_t = (t as f64).ln() / base.ln();
    Ok((c * (t as f64).powi(s as i32 - 2) * log_t).exp2())
}

/// The blob-size parameter `m = ceil(eps * (ln n / ln ln n)^(1/5))`,
/// clamped below at 3, together with a flag reporting whether
/// `m^5 ln m <= (eps^5 / 5) ln n` actually holds at this n (it fails at
/// desk scale).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MEstimate {
    pub m: usize,
    pub inequality_holds: bool,
}

pub fn m_of_n(n: usize, eps: f64) -> Result<MEstimate, ConstructError> {
    if n < 3 {
        return Err(ConstructError::TooSmall { need: 3, got: n });
    }
    if !(0.0 < eps && eps < 1.0) {
        return Err(ConstructError::Domain("eps must lie in (0,1)"));
    }
    let ln_n = (n as f64).ln();
    let ln_ln_n = ln_n.ln();
    if ln_ln_n <= 0.0 {
        return Err(ConstructError::Domain("ln ln n must be positive"));
    }
    let raw = eps * (ln_n / ln_ln_n).powf(0.2);
    let m = (raw.ceil() as usize).max(3);
    let holds = (m as f64).powi(5) * (m as f64).ln() <= eps.powi(5) / 5.0 * ln_n;
    Ok(MEstimate {
        m,
        inequality_holds: holds,
    })
}

/// Total triples count helper re-exported for CLI reporting.
pub fn triples_in(n: usize) -> u64 {
    binom(n as u64, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{cross_count, directed_count, link_graph, all_triples};
    use crate::patterns::is_fano;

    #[test]
    fn lower_bound_shape() {
        let (c, spec) = lower_bound_coloring(4).unwrap();
        assert_eq!(c.n_vertices(), 6);
        assert_eq!(c.red_count(), 2); // C(3,3) per block
        assert_eq!(spec.blocks, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(c.color([0, 1, 2]), Color::Red);
        assert_eq!(c.color([3, 4, 5]), Color::Red);
        assert_eq!(c.color([0, 1, 3]), Color::Blue);
        assert!(lower_bound_coloring(2).is_err());
        // cross link graph is empty in red
        let lg = link_graph(&c, 0, &[3, 4, 5], Color::Red).unwrap();
        assert_eq!(lg.graph.edge_count(), 0);
        // no red triples point from A into B
        assert_eq!(
            directed_count(&c, &spec.blocks[0], &spec.blocks[1], Color::Red).unwrap(),
            0
        );
    }

    #[test]
    fn lower_bound_block_symmetric() {
        let (c, spec) = lower_bound_coloring(5).unwrap();
        let n = c.n_vertices();
        let half = spec.blocks[0].len();
        // swap A and B via v -> (v + half) mod n
        let swap = |v: usize| (v + half) % n;
        for t in all_triples(n) {
            let mapped = [swap(t[0]), swap(t[1]), swap(t[2])];
            assert_eq!(c.color(t), c.color(mapped));
        }
    }

    #[test]
    fn extended_shape() {
        let (c, spec) = extended_lower_bound(5).unwrap();
        assert_eq!(c.n_vertices(), 9);
        assert_eq!(spec.blocks[0].len(), 5);
        assert_eq!(spec.blocks[1].len(), 4);
        assert_eq!(
            c.red_count(),
            crate::coloring::binom(5, 3) + crate::coloring::binom(4, 3)
        );
    }

    #[test]
    fn sharpness_shape() {
        let (c, spec) = sharpness_coloring(6).unwrap();
        assert_eq!(c.n_vertices(), 12);
        assert_eq!(spec.blocks.len(), 3);
        // 3*C(4,3) block-interior + 3*C(4,2)*4 pair-into-next
        assert_eq!(c.red_count(), 84);
        // no red triple meets all three blocks
        assert_eq!(
            cross_count(&c, &spec.blocks[0], &spec.blocks[1], &spec.blocks[2], Color::Red)
                .unwrap(),
            0
        );
        assert!(sharpness_coloring(7).is_err());
        assert!(sharpness_coloring(3).is_err());
    }

    #[test]
    fn sharpness_cyclic_symmetry() {
        let (c, _) = sharpness_coloring(6).unwrap();
        let s = 4;
        let rot = |v: usize| (v + s) % 12; // A->B->C->A block rotation
        for t in all_triples(12) {
            let mapped = [rot(t[0]), rot(t[1]), rot(t[2])];
            assert_eq!(c.color(t), c.color(mapped), "triple {t:?}");
        }
    }

    #[test]
    fn gadget_is_fano() {
        let edges = gadget_fano_7([0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(is_fano(&edges), Ok(true));
        assert!(gadget_fano_7([0, 1, 2, 3, 4, 5, 5]).is_err());
        // the alternative labeling v,w1,w2,a,b,c,d reproduces the second gadget
        let edges = gadget_fano_7([10, 11, 12, 13, 14, 15, 16]).unwrap();
        let expect: Vec<[usize; 3]> = vec![
            [10, 11, 12],
            [10, 13, 14],
            [10, 15, 16],
            [11, 13, 16],
            [11, 14, 15],
            [12, 13, 15],
            [12, 14, 16],
        ];
        assert_eq!(edges.to_vec(), expect);
    }

    #[test]
    fn cfs_values() {
        let v = cfs_bound(4, 2, 1.0).unwrap();
        let expect = (4.0f64 * 2.0f64.ln()).exp2();
        assert!((v - expect).abs() < 1e-9);
        assert!((expect - 6.84).abs() < 0.01);
        // monotone in t, s, C
        assert!(cfs_bound(4, 3, 1.0).unwrap() > cfs_bound(4, 2, 1.0).unwrap());
        assert!(cfs_bound(5, 3, 1.0).unwrap() > cfs_bound(4, 3, 1.0).unwrap());
        assert!(cfs_bound(4, 2, 2.0).unwrap() > cfs_bound(4, 2, 1.0).unwrap());
        let v = cfs_bound(5, 7, 1.0).unwrap();
        assert!((v.log2() - 343.0 * 7.0f64.ln()).abs() < 1e-6);
        assert!(cfs_bound(3, 2, 1.0).is_err());
    }

    #[test]
    fn m_of_n_values() {
        let e = m_of_n(1_000_000, 0.1).unwrap();
        assert_eq!(e.m, 3); // clamped
        assert!(!e.inequality_holds, "fails at desk scale");
        // monotone nondecreasing in n
        let mut prev = 0;
        for n in [10usize, 100, 10_000, 1_000_000, 100_000_000] {
            let e = m_of_n(n, 0.9).unwrap();
            assert!(e.m >= prev);
            prev = e.m;
        }
        assert!(m_of_n(2, 0.1).is_err());
        assert!(m_of_n(100, 1.5).is_err());
    }
}
