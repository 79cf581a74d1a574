//! The `HG3C 1` text format, bit-exact:
//!
//! ```text
//! HG3C 1
//! n=<N>
//! red=<R>
//! a b c        (R lines, a<b<c, strictly increasing colex order)
//! ```
//!
//! For colorings the listed triples are the red edges; everything else is
//! blue. Patterns use the same layout with their edge list in place of the
//! red set. Any deviation in ordering, range or duplication is a hard
//! parse error.

use thiserror::Error;

use crate::coloring::{triple_rank, Coloring};
use crate::patterns::Pattern;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Hg3cError {
    #[error("bad magic line: expected `HG3C 1`, got `{0}`")]
    Magic(String),
    #[error("bad header line `{0}`")]
    Header(String),
    #[error("line {line}: bad triple `{text}`")]
    Triple { line: usize, text: String },
    #[error("line {line}: vertex out of range or duplicate in `{text}`")]
    Range { line: usize, text: String },
    #[error("line {line}: triple not sorted a<b<c in `{text}`")]
    Unsorted { line: usize, text: String },
    #[error("line {line}: triples not in strictly increasing colex order")]
    Order { line: usize },
    #[error("expected {expected} triples, found {found}")]
    Count { expected: usize, found: usize },
}

pub fn write_coloring(c: &Coloring) -> String {
    let mut out = String::new();
    out.push_str("HG3C 1\n");
    out.push_str(&format!("n={}\n", c.n_vertices()));
    out.push_str(&format!("red={}\n", c.red_count()));
    for t in c.red_triples() {
        out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

pub fn write_pattern(p: &Pattern) -> String {
    let mut edges = p.edges.clone();
    edges.sort_by_key(|&e| triple_rank(e, p.n).expect("valid edge").0);
    let mut out = String::new();
    out.push_str("HG3C 1\n");
    out.push_str(&format!("n={}\n", p.n));
    out.push_str(&format!("red={}\n", edges.len()));
    for t in edges {
        out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

fn parse_header(text: &str) -> Result<(usize, usize, Vec<[usize; 3]>), Hg3cError> {
    let mut lines = text.lines();
    let magic = lines.next().unwrap_or("");
    if magic != "HG3C 1" {
        return Err(Hg3cError::Magic(magic.to_string()));
    }
    let n_line = lines.next().unwrap_or("");
    let n: usize = n_line
        .strip_prefix("n=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Hg3cError::Header(n_line.to_string()))?;
    let r_line = lines.next().unwrap_or("");
    let r: usize = r_line
        .strip_prefix("red=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Hg3cError::Header(r_line.to_string()))?;

    let mut triples = Vec::with_capacity(r);
    let mut prev_rank: Option<u64> = None;
    for (i, line) in lines.enumerate() {
        let lineno = i + 4;
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Hg3cError::Triple {
                line: lineno,
                text: line.to_string(),
            });
        }
        let vals: Vec<usize> = parts
            .iter()
            .map(|s| s.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| Hg3cError::Triple {
                line: lineno,
                text: line.to_string(),
            })?;
        let t = [vals[0], vals[1], vals[2]];
        if !(t[0] < t[1] && t[1] < t[2]) {
            return Err(Hg3cError::Unsorted {
                line: lineno,
                text: line.to_string(),
            });
        }
        let rank = triple_rank(t, n).map_err(|_| Hg3cError::Range {
            line: lineno,
            text: line.to_string(),
        })?;
        if let Some(p) = prev_rank {
            if rank.0 <= p {
                return Err(Hg3cError::Order { line: lineno });
            }
        }
        prev_rank = Some(rank.0);
        triples.push(t);
    }
    if triples.len() != r {
        return Err(Hg3cError::Count {
            expected: r,
            found: triples.len(),
        });
    }
    Ok((n, r, triples))
}

pub fn read_coloring(text: &str) -> Result<Coloring, Hg3cError> {
    let (n, _, triples) = parse_header(text)?;
    let mut c = Coloring::all_blue(n);
    for t in triples {
        c.set_red(t).expect("validated triple");
    }
    Ok(c)
}

pub fn read_pattern(name: &str, text: &str) -> Result<Pattern, Hg3cError> {
    let (n, _, triples) = parse_header(text)?;
    Ok(Pattern {
        name: name.to_string(),
        n,
        edges: triples,
    })
}
