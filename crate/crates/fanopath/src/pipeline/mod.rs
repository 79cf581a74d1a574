//! The red tight-path extraction pipeline: blob decomposition, the
//! butterfly blob graph, path decomposition, and the two- and three-path
//! branches. Given a coloring and a target length n it produces a red
//! tight-path witness, a blue Fano witness found en route, or a structured
//! failure report naming the first stage whose precondition broke.
//!
//! Every threshold is configuration; defaults are desk-scale rescalings of
//! the asymptotic constants, and each stage logs the nominal value next to
//! the one actually used. Identical inputs yield byte-identical reports.

mod three_path;
mod two_path;
pub mod walk;

pub use three_path::three_path_branch;
pub use two_path::two_path_branch;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coloring::{binom, Color, Coloring};
use crate::construct::m_of_n;
use crate::detect::{find_mono, find_red_clique_in, max_disjoint_butterflies, Witness};
use crate::graph::Graph;
use crate::patterns::{fano_lines, tight_path};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error("bad parameter: {0}")]
    BadParams(&'static str),
    #[error("complement of the blob graph contains a K4 on blobs {0:?}")]
    ComplementK4([usize; 4]),
    #[error("{count} blobs remain after extracting three paths")]
    LeftoverBlobs { count: usize },
    #[error("no red butterfly between blobs at junction {junction}")]
    MissingButterfly { junction: usize },
    #[error("blob walk found no red tight path")]
    WalkStuck,
}

/// The six density cutoffs of the structure lemmas, in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCutoffs {
    /// Blue-link density below which a vertex is purged before the
    /// entirely-red check (nominal 99/100).
    pub entirely_red: f64,
    /// Density parameter of the walk graph G(X, Y, x) (nominal 0.98).
    pub walk: f64,
    /// Upper cleaning cutoff (nominal 29/30).
    pub clean_hi: f64,
    /// Lower cleaning cutoff (nominal 27/30).
    pub clean_lo: f64,
    /// Degree fraction for dense-vertex arguments (nominal 0.9).
    pub degree: f64,
    /// Dirac fraction for the Hamiltonian-path step (nominal 0.8).
    pub dirac: f64,
}

impl Default for DensityCutoffs {
    fn default() -> Self {
        DensityCutoffs {
            entirely_red: 0.99,
            walk: 0.98,
            clean_hi: 29.0 / 30.0,
            clean_lo: 27.0 / 30.0,
            degree: 0.9,
            dirac: 0.8,
        }
    }
}

/// All tunable constants of the pipeline. `defaults` rescales the
/// asymptotic values to something meaningful at small N; every field can
/// be overridden afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineParams {
    /// Target red tight-path length n.
    pub target_n: usize,
    /// Blob (red clique) size.
    pub m: usize,
    /// Disjoint butterflies required for a blob-graph edge (nominal 1000).
    pub butterfly_threshold: usize,
    /// Triple-triangle matchings above this size trigger absorption
    /// instead of blob removal (nominal 2n^(eps^4)).
    pub matching_cap: usize,
    /// A vertex is special when its red link into the opposite core has at
    /// least special_density * C(target_n, 2) edges (nominal (1/5)eps^5).
    pub special_density: f64,
    /// Special count at which the tuple-absorption walk engages
    /// (nominal n * m^(-1/20)).
    pub special_cutoff: usize,
    pub cutoffs: DensityCutoffs,
    /// Minimum-degree fraction in the junk reassignment (nominal 0.39).
    pub degree_floor: f64,
    /// Junk split: a vertex joins a side when its blue link there has at
    /// most junk_blue_cap * target_n^2 edges (nominal eps).
    pub junk_blue_cap: f64,
    pub eps: f64,
    /// A tuple is open when all but open_slack * |A|^2 tuples are
    /// reachable from it (nominal m^(-1/4)).
    pub open_slack: f64,
    /// Tuples reachable via v required for (a,b) to count as good for v
    /// (nominal eps^100 * n^2, which rounds to zero at desk scale).
    pub good_min: usize,
    /// Stand-in for the unspecified absolute constant t of the bipartite
    /// Ramsey bound; only appears in logged inequalities.
    pub t_const: u32,
    /// Worker threads for the detector calls.
    pub threads: usize,
}

impl PipelineParams {
    pub fn defaults(n_vertices: usize, target_n: usize) -> PipelineParams {
        let eps = 0.1;
        let m = m_of_n(n_vertices.max(3), eps).map(|e| e.m).unwrap_or(3);
        let mf = m as f64;
        PipelineParams {
            target_n,
            m,
            butterfly_threshold: (m / 4).max(1),
            matching_cap: 2,
            special_density: 0.2 * eps.powi(5),
            special_cutoff: ((target_n as f64 * mf.powf(-1.0 / 20.0)).ceil() as usize).max(1),
            cutoffs: DensityCutoffs::default(),
            degree_floor: 0.39,
            junk_blue_cap: eps,
            eps,
            open_slack: mf.powf(-0.25),
            good_min: 1,
            t_const: 48,
            threads: 1,
        }
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.target_n < 3 {
            return Err(PipelineError::BadParams("target_n must be at least 3"));
        }
        if self.m < 3 {
            return Err(PipelineError::BadParams("m must be at least 3"));
        }
        if self.butterfly_threshold < 1 || self.matching_cap < 1 {
            return Err(PipelineError::BadParams("thresholds must be at least 1"));
        }
        let unit = [
            self.special_density,
            self.degree_floor,
            self.junk_blue_cap,
            self.eps,
            self.open_slack,
            self.cutoffs.entirely_red,
            self.cutoffs.walk,
            self.cutoffs.clean_hi,
            self.cutoffs.clean_lo,
            self.cutoffs.degree,
            self.cutoffs.dirac,
        ];
        if unit.iter().any(|&x| !(0.0 < x && x < 1.0)) {
            return Err(PipelineError::BadParams("real parameters must lie in (0,1)"));
        }
        if self.threads < 1 {
            return Err(PipelineError::BadParams("threads must be at least 1"));
        }
        Ok(())
    }

    fn echo(&self) -> Vec<(String, String)> {
        vec![
            ("target_n".into(), self.target_n.to_string()),
            ("m".into(), self.m.to_string()),
            ("butterfly_threshold".into(), self.butterfly_threshold.to_string()),
            ("matching_cap".into(), self.matching_cap.to_string()),
            ("special_density".into(), fnum(self.special_density)),
            ("special_cutoff".into(), self.special_cutoff.to_string()),
            ("cutoff_entirely_red".into(), fnum(self.cutoffs.entirely_red)),
            ("cutoff_walk".into(), fnum(self.cutoffs.walk)),
            ("cutoff_clean_hi".into(), fnum(self.cutoffs.clean_hi)),
            ("cutoff_clean_lo".into(), fnum(self.cutoffs.clean_lo)),
            ("cutoff_degree".into(), fnum(self.cutoffs.degree)),
            ("cutoff_dirac".into(), fnum(self.cutoffs.dirac)),
            ("degree_floor".into(), fnum(self.degree_floor)),
            ("junk_blue_cap".into(), fnum(self.junk_blue_cap)),
            ("eps".into(), fnum(self.eps)),
            ("open_slack".into(), fnum(self.open_slack)),
            ("good_min".into(), self.good_min.to_string()),
            ("t_const".into(), self.t_const.to_string()),
            ("threads".into(), self.threads.to_string()),
        ]
    }
}

pub(crate) fn fnum(x: f64) -> String {
    format!("{x:.6}")
}

/// Disjoint red K_m blobs plus the leftover vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlobDecomposition {
    pub blobs: Vec<Vec<usize>>,
    pub junk: Vec<usize>,
}

/// Blob adjacency: an edge when the greedy disjoint-butterfly count
/// reaches the threshold. Counts are kept for the report.
#[derive(Debug, Clone)]
pub struct BlobGraph {
    pub graph: Graph,
    pub butterfly_counts: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    RedPath(Witness),
    BlueFano(Witness),
    Failure { stage: String, inequality: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stage {
    pub name: String,
    pub facts: Vec<(String, String)>,
}

impl Stage {
    pub(crate) fn new(name: &str) -> Stage {
        Stage {
            name: name.to_string(),
            facts: Vec::new(),
        }
    }

    pub(crate) fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push((key.to_string(), value.to_string()));
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub n_vertices: usize,
    pub params: PipelineParams,
    pub stages: Vec<Stage>,
    pub outcome: Outcome,
}

impl PipelineReport {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::RedPath(w) | Outcome::BlueFano(w) => Some(w),
            Outcome::Failure { .. } => None,
        }
    }

    /// Deterministic plain-text stage trace.
    pub fn render(&self) -> String {
        let mut out = String::from("PIPELINE 1\n");
        out.push_str(&format!("n={}\n", self.n_vertices));
        for (k, v) in self.params.echo() {
            out.push_str(&format!("param {k}={v}\n"));
        }
        for st in &self.stages {
            out.push_str(&format!("stage {}\n", st.name));
            for (k, v) in &st.facts {
                out.push_str(&format!("  {k}={v}\n"));
            }
        }
        match &self.outcome {
            Outcome::RedPath(w) => {
                out.push_str("outcome red_path\n");
                out.push_str(&w.to_text());
            }
            Outcome::BlueFano(w) => {
                out.push_str("outcome blue_fano\n");
                out.push_str(&w.to_text());
            }
            Outcome::Failure { stage, inequality } => {
                out.push_str("outcome failure\n");
                out.push_str(&format!("  stage={stage}\n"));
                out.push_str(&format!("  inequality={inequality}\n"));
            }
        }
        out
    }
}

/// Re-verify a witness before letting it out; a witness that does not
/// check against the coloring is an internal error, downgraded to an
/// explicit Failure so it can never masquerade as success.
pub(crate) fn checked(outcome: Outcome, c: &Coloring) -> Outcome {
    match &outcome {
        Outcome::RedPath(w) | Outcome::BlueFano(w) => {
            if w.verify(c) {
                outcome
            } else {
                Outcome::Failure {
                    stage: "internal".into(),
                    inequality: "witness failed re-verification".into(),
                }
            }
        }
        Outcome::Failure { .. } => outcome,
    }
}

pub(crate) fn red_path_outcome(c: &Coloring, seq: &[usize], target: usize) -> Outcome {
    let map: Vec<usize> = seq[..target.min(seq.len())].to_vec();
    let pattern = tight_path(map.len()).expect("target >= 3");
    checked(
        Outcome::RedPath(Witness {
            pattern,
            color: Color::Red,
            map,
        }),
        c,
    )
}

pub(crate) fn blue_fano_outcome(c: &Coloring, map: Vec<usize>) -> Outcome {
    checked(
        Outcome::BlueFano(Witness {
            pattern: fano_lines(),
            color: Color::Blue,
            map,
        }),
        c,
    )
}

/// Greedily remove lexicographically least red K_m cliques until none is
/// left; the rest is junk.
pub fn extract_blobs(c: &Coloring, m: usize) -> BlobDecomposition {
    let mut pool: Vec<usize> = (0..c.n_vertices()).collect();
    let mut blobs = Vec::new();
    while let Some(blob) = find_red_clique_in(c, m, &pool) {
        pool.retain(|v| !blob.contains(v));
        blobs.push(blob);
    }
    BlobDecomposition { blobs, junk: pool }
}

pub fn build_blob_graph(c: &Coloring, d: &BlobDecomposition, threshold: usize) -> BlobGraph {
    let ids: Vec<usize> = (0..d.blobs.len()).collect();
    let mut graph = Graph::new(&ids);
    let mut butterfly_counts = BTreeMap::new();
    for i in 0..d.blobs.len() {
        for j in i + 1..d.blobs.len() {
            let k = max_disjoint_butterflies(c, &d.blobs[i], &d.blobs[j]).len();
            butterfly_counts.insert((i, j), k);
            if k >= threshold {
                graph.add_edge(i, j);
            }
        }
    }
    BlobGraph {
        graph,
        butterfly_counts,
    }
}

/// A K4 in the complement of the blob graph, if any. Per the structure
/// argument this cannot happen asymptotically; at desk scale it is a
/// diagnostic that stops the path decomposition.
pub fn check_complement_k4(g: &BlobGraph) -> Option<[usize; 4]> {
    g.graph.complement().find_k4()
}

/// Iteratively peel a longest path from the blob graph, at most three
/// times; errors if the complement has a K4 or blobs remain uncovered.
pub fn decompose_paths(g: &BlobGraph) -> Result<Vec<Vec<usize>>, PipelineError> {
    if let Some(k4) = check_complement_k4(g) {
        return Err(PipelineError::ComplementK4(k4));
    }
    let mut remaining: Vec<usize> = g.graph.vertices().to_vec();
    let mut paths = Vec::new();
    for _ in 0..3 {
        if remaining.is_empty() {
            break;
        }
        let mut sub = Graph::new(&remaining);
        for (a, b) in g.graph.edges() {
            if remaining.contains(&a) && remaining.contains(&b) {
                sub.add_edge(a, b);
            }
        }
        let path = sub.longest_path();
        remaining.retain(|v| !path.contains(v));
        paths.push(path);
    }
    if !remaining.is_empty() {
        return Err(PipelineError::LeftoverBlobs {
            count: remaining.len(),
        });
    }
    Ok(paths)
}

/// Red tight path through consecutive blobs of one blob path, sacrificing
/// at most two vertices per junction. The junctions must each carry at
/// least one red butterfly.
pub fn walk_blob_path(c: &Coloring, path: &[Vec<usize>]) -> Result<Witness, PipelineError> {
    for i in 0..path.len().saturating_sub(1) {
        if max_disjoint_butterflies(c, &path[i], &path[i + 1]).is_empty() {
            return Err(PipelineError::MissingButterfly { junction: i });
        }
    }
    let total: usize = path.iter().map(|b| b.len()).sum();
    let seq = walk::walk_groups(c, path, total, 2);
    if seq.len() < 3 {
        return Err(PipelineError::WalkStuck);
    }
    Ok(Witness {
        pattern: tight_path(seq.len()).expect("len >= 3"),
        color: Color::Red,
        map: seq,
    })
}

/// The density graph G(X, Y, x): vertex set X, edge ab when at least
/// ceil(x * |Y|) vertices y of Y make {a,b,y} red.
pub fn density_graph(c: &Coloring, x_set: &[usize], y_set: &[usize], x: f64) -> Graph {
    let mut g = Graph::new(x_set);
    if y_set.is_empty() {
        return g;
    }
    let need = (x * y_set.len() as f64 - 1e-9).ceil().max(1.0) as usize;
    let xs = g.vertices().to_vec();
    for (i, &a) in xs.iter().enumerate() {
        for &b in &xs[i + 1..] {
            let count = y_set
                .iter()
                .filter(|&&y| c.color([a, b, y]) == Color::Red)
                .count();
            if count >= need {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Blue link-graph edge count of `v` into `set`.
pub(crate) fn blue_link_edges(c: &Coloring, v: usize, set: &[usize]) -> usize {
    let mut count = 0;
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            if c.color([v, a, b]) == Color::Blue {
                count += 1;
            }
        }
    }
    count
}

/// Blue triples inside `set`, ascending.
pub(crate) fn blue_triples_in(c: &Coloring, set: &[usize]) -> Vec<[usize; 3]> {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    for (i, &a) in sorted.iter().enumerate() {
        for (j, &b) in sorted.iter().enumerate().skip(i + 1) {
            for &cc in &sorted[j + 1..] {
                if c.color([a, b, cc]) == Color::Blue {
                    out.push([a, b, cc]);
                }
            }
        }
    }
    out
}

/// Blue Fano from a blue triple {a,b,c} and a K4 {w,x,y,z} in the common
/// blue link of a, b and c over `pool`; None when no such K4 exists.
pub(crate) fn extract_fano_from_blue_triple(
    c: &Coloring,
    triple: [usize; 3],
    pool: &[usize],
) -> Option<Vec<usize>> {
    let ground: Vec<usize> = pool
        .iter()
        .copied()
        .filter(|v| !triple.contains(v))
        .collect();
    if ground.len() < 4 {
        return None;
    }
    let links: Vec<Graph> = triple
        .iter()
        .map(|&t| {
            crate::coloring::link_graph(c, t, &ground, Color::Blue)
                .expect("disjoint")
                .graph
        })
        .collect();
    let common = links[0].intersect(&links[1]).intersect(&links[2]);
    common.find_k4().map(|k4| {
        let mut map = triple.to_vec();
        map.extend(k4);
        map
    })
}

/// Number of red link-graph edges of `v` into `set`.
pub(crate) fn red_link_edges(c: &Coloring, v: usize, set: &[usize]) -> usize {
    let pairs = binom(set.len() as u64, 2) as usize;
    pairs - blue_link_edges(c, v, set)
}

/// Stage 0 of every run: a direct search for a blue Fano.
fn pre_detect(c: &Coloring, params: &PipelineParams, stages: &mut Vec<Stage>) -> Option<Outcome> {
    let mut st = Stage::new("pre_detect");
    let found = find_mono(c, &fano_lines(), Color::Blue, params.threads);
    st.fact("blue_fano", if found.is_some() { "found" } else { "none" });
    stages.push(st);
    found.map(|w| checked(Outcome::BlueFano(w), c))
}

/// Full orchestration: extract blobs, build the blob graph, decompose into
/// paths, and dispatch to the matching branch.
pub fn run_pipeline(c: &Coloring, params: &PipelineParams) -> PipelineReport {
    let mut stages = Vec::new();
    let outcome = run_stages(c, params, &mut stages);
    PipelineReport {
        n_vertices: c.n_vertices(),
        params: params.clone(),
        stages,
        outcome,
    }
}

fn run_stages(c: &Coloring, params: &PipelineParams, stages: &mut Vec<Stage>) -> Outcome {
    if let Err(e) = params.validate() {
        return Outcome::Failure {
            stage: "params".into(),
            inequality: e.to_string(),
        };
    }
    let target = params.target_n;
    if let Some(outcome) = pre_detect(c, params, stages) {
        return outcome;
    }

    let d = extract_blobs(c, params.m);
    let mut st = Stage::new("extract_blobs");
    st.fact("m", params.m);
    st.fact("blobs", d.blobs.len());
    st.fact("junk", d.junk.len());
    st.fact(
        "junk_cap_nominal",
        fnum((c.n_vertices() as f64).powf(params.eps.powi(4))),
    );
    stages.push(st);
    if d.blobs.is_empty() {
        return Outcome::Failure {
            stage: "extract_blobs".into(),
            inequality: format!("blobs=0 < 1 (no red K_{} exists)", params.m),
        };
    }

    let g = build_blob_graph(c, &d, params.butterfly_threshold);
    let mut st = Stage::new("blob_graph");
    st.fact("edges", g.graph.edge_count());
    st.fact("threshold", params.butterfly_threshold);
    st.fact("threshold_nominal", 1000);
    stages.push(st);

    let mut st = Stage::new("complement_k4");
    let k4 = check_complement_k4(&g);
    match k4 {
        Some(q) => st.fact("k4", format!("{},{},{},{}", q[0], q[1], q[2], q[3])),
        None => st.fact("k4", "none"),
    }
    stages.push(st);
    if let Some(q) = k4 {
        return Outcome::Failure {
            stage: "complement_k4".into(),
            inequality: format!(
                "blob graph complement contains K4 on blobs {},{},{},{} (paper: impossible above n0)",
                q[0], q[1], q[2], q[3]
            ),
        };
    }

    let paths = match decompose_paths(&g) {
        Ok(p) => p,
        Err(e) => {
            return Outcome::Failure {
                stage: "decompose_paths".into(),
                inequality: e.to_string(),
            }
        }
    };
    let blob_paths: Vec<Vec<Vec<usize>>> = paths
        .iter()
        .map(|p| p.iter().map(|&i| d.blobs[i].clone()).collect())
        .collect();
    let mut st = Stage::new("decompose_paths");
    st.fact("paths", paths.len());
    for (i, p) in paths.iter().enumerate() {
        st.fact(&format!("path_{i}_blobs"), p.len());
    }
    stages.push(st);

    match blob_paths.len() {
        1 => {
            let mut st = Stage::new("walk_single_path");
            let outcome = match walk_blob_path(c, &blob_paths[0]) {
                Ok(w) => {
                    st.fact("walk_len", w.map.len());
                    if w.map.len() >= target {
                        let o = red_path_outcome(c, &w.map, target);
                        stages.push(st);
                        return o;
                    }
                    Outcome::Failure {
                        stage: "walk_single_path".into(),
                        inequality: format!("walk_len={} < target={}", w.map.len(), target),
                    }
                }
                Err(e) => Outcome::Failure {
                    stage: "walk_single_path".into(),
                    inequality: e.to_string(),
                },
            };
            stages.push(st);
            outcome
        }
        2 => two_path::two_path_run(c, &blob_paths[0], &blob_paths[1], &d.junk, params, stages),
        _ => three_path::three_path_entry(c, &d, &g, &paths, params, stages),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{extended_lower_bound, lower_bound_coloring};

    #[test]
    fn extract_blobs_cases() {
        let red = Coloring::all_red(9);
        let d = extract_blobs(&red, 3);
        assert_eq!(d.blobs.len(), 3);
        assert!(d.junk.is_empty());
        let blue = Coloring::all_blue(7);
        let d = extract_blobs(&blue, 3);
        assert!(d.blobs.is_empty());
        assert_eq!(d.junk.len(), 7);
        // extended_lower_bound(6): N=11, A=6, B=5 -> 2 + 1 blobs, junk 2
        let (c, _) = extended_lower_bound(6).unwrap();
        let d = extract_blobs(&c, 3);
        assert_eq!(d.blobs.len(), 3);
        assert_eq!(d.junk.len(), 2);
        for b in &d.blobs {
            assert!(find_red_clique_in(&c, 3, b).is_some());
        }
    }

    #[test]
    fn blob_graph_cases() {
        let red = Coloring::all_red(9);
        let d = extract_blobs(&red, 3);
        let g = build_blob_graph(&red, &d, 1);
        assert_eq!(g.graph.edge_count(), 3); // complete on 3 blobs
        // different blocks of lower_bound: no cross edges at any threshold
        let (c, _) = lower_bound_coloring(4).unwrap();
        let d = extract_blobs(&c, 3);
        assert_eq!(d.blobs.len(), 2);
        let g = build_blob_graph(&c, &d, 1);
        assert_eq!(g.graph.edge_count(), 0);
        // threshold above floor(m/2) kills edges even in all-red
        let d = extract_blobs(&red, 3);
        let g = build_blob_graph(&red, &d, 2);
        assert_eq!(g.graph.edge_count(), 0);
    }

    #[test]
    fn complement_k4_cases() {
        let red = Coloring::all_red(12);
        let d = extract_blobs(&red, 3);
        let g = build_blob_graph(&red, &d, 1);
        assert_eq!(check_complement_k4(&g), None);
        let blue = Coloring::all_blue(12);
        let d = BlobDecomposition {
            blobs: vec![vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8], vec![9, 10, 11]],
            junk: vec![],
        };
        let g = build_blob_graph(&blue, &d, 1);
        assert_eq!(check_complement_k4(&g), Some([0, 1, 2, 3]));
    }

    #[test]
    fn decompose_paths_cases() {
        // path-shaped: complete graph is a fortiori one path
        let red = Coloring::all_red(9);
        let d = extract_blobs(&red, 3);
        let g = build_blob_graph(&red, &d, 1);
        let paths = decompose_paths(&g).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].len(), 3);
        // two cliques: lower_bound blocks
        let (c, _) = lower_bound_coloring(7).unwrap();
        let d = extract_blobs(&c, 3);
        let g = build_blob_graph(&c, &d, 1);
        let paths = decompose_paths(&g).unwrap();
        assert_eq!(paths.len(), 2);
        let covered: usize = paths.iter().map(|p| p.len()).sum();
        assert_eq!(covered, d.blobs.len());
    }

    #[test]
    fn walk_blob_path_cases() {
        let red = Coloring::all_red(6);
        let w = walk_blob_path(&red, &[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(w.map.len(), 6);
        assert!(w.verify(&red));
        // missing butterfly across lower_bound blocks
        let (c, _) = lower_bound_coloring(4).unwrap();
        assert_eq!(
            walk_blob_path(&c, &[vec![0, 1, 2], vec![3, 4, 5]]),
            Err(PipelineError::MissingButterfly { junction: 0 })
        );
    }

    #[test]
    fn density_graph_cases() {
        let red = Coloring::all_red(8);
        let g = density_graph(&red, &[0, 1, 2], &[3, 4, 5, 6], 0.9);
        assert_eq!(g.edge_count(), 3);
        let blue = Coloring::all_blue(8);
        let g = density_graph(&blue, &[0, 1, 2], &[3, 4, 5, 6], 0.5);
        assert_eq!(g.edge_count(), 0);
        // exactly-half fibers: edge present iff count >= ceil(0.5 * |Y|)
        let mut c = Coloring::all_blue(6);
        c.set_red([0, 1, 2]).unwrap();
        c.set_red([0, 1, 3]).unwrap();
        let g = density_graph(&c, &[0, 1], &[2, 3, 4, 5], 0.5);
        assert!(g.has_edge(0, 1));
        let g = density_graph(&c, &[0, 1], &[2, 3, 4, 5], 0.75);
        assert!(!g.has_edge(0, 1));
    }

    #[test]
    fn run_all_red_and_all_blue() {
        let red = Coloring::all_red(9);
        let params = PipelineParams::defaults(9, 5);
        let rep = run_pipeline(&red, &params);
        match &rep.outcome {
            Outcome::RedPath(w) => {
                assert_eq!(w.map.len(), 5);
                assert!(w.verify(&red));
            }
            other => panic!("expected red path, got {other:?}"),
        }
        let blue = Coloring::all_blue(9);
        let rep = run_pipeline(&blue, &params);
        match &rep.outcome {
            Outcome::BlueFano(w) => assert!(w.verify(&blue)),
            other => panic!("expected blue fano, got {other:?}"),
        }
    }

    #[test]
    fn run_extended_lower_bound() {
        for n in 6..=8 {
            let (c, _) = extended_lower_bound(n).unwrap();
            let params = PipelineParams::defaults(c.n_vertices(), n);
            let rep = run_pipeline(&c, &params);
            match &rep.outcome {
                Outcome::RedPath(w) => {
                    assert_eq!(w.map.len(), n, "n={n}");
                    assert!(w.verify(&c));
                }
                other => panic!("n={n}: expected red path, got {other:?}"),
            }
        }
    }

    #[test]
    fn report_deterministic() {
        let (c, _) = extended_lower_bound(6).unwrap();
        let params = PipelineParams::defaults(c.n_vertices(), 6);
        let a = run_pipeline(&c, &params).render();
        let b = run_pipeline(&c, &params).render();
        assert_eq!(a, b);
        assert!(a.starts_with("PIPELINE 1\n"));
        assert!(a.contains("outcome red_path"));
    }

    #[test]
    fn params_validate() {
        let mut p = PipelineParams::defaults(11, 6);
        assert!(p.validate().is_ok());
        p.eps = 1.5;
        assert!(p.validate().is_err());
        let mut p = PipelineParams::defaults(11, 2);
        assert!(p.validate().is_err());
        p.target_n = 6;
        p.m = 2;
        assert!(p.validate().is_err());
    }
}
