//! Command-line entry point. Line-oriented key=value output; exit code 0
//! for success/found, 1 for not-found/failure, 2 for usage or input
//! errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fanopath::coloring::{Color, Coloring};
use fanopath::construct::{
    cfs_bound_with_base, extended_lower_bound, lower_bound_coloring, m_of_n, sharpness_coloring,
};
use fanopath::detect::{
    find_mono, find_red_clique, find_triple_triangle, longest_red_tight_path,
    max_disjoint_butterflies,
};
use fanopath::hg3c::{read_coloring, write_coloring};
use fanopath::oracle::{
    count_fano_copies, exhaustive_tight_path, ramsey_verify_tiny, OracleBudget, RamseyVerdict,
};
use fanopath::patterns::{fano_lines, h_good_bound, Pattern};
use fanopath::pipeline::{run_pipeline, Outcome, PipelineParams};

#[derive(Parser)]
#[command(name = "fanopath", version, about = "Two-colored 3-uniform hypergraph workbench")]
struct Cli {
    /// Worker threads honored by detector and oracle partitioning.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a coloring in HG3C format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Search for a single structure and print its witness.
    Detect {
        #[command(subcommand)]
        what: DetectKind,
    },
    /// Check structural properties of a coloring; failures print a witness.
    Verify(VerifyArgs),
    /// The red tight-path extraction pipeline.
    Pipeline {
        #[command(subcommand)]
        cmd: PipelineCmd,
    },
    /// Brute-force reference oracles.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Closed-form bound calculators.
    Bound {
        #[command(subcommand)]
        cmd: BoundCmd,
    },
}

#[derive(Args)]
struct GenCommon {
    #[arg(long)]
    n: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Two blocks of n-1 on 2n-2 vertices; red inside blocks.
    Lower(GenCommon),
    /// Blocks of n and n-1 on 2n-1 vertices; pipeline demo instance.
    Extended(GenCommon),
    /// Three blocks of 2n/3 on 2n vertices with the cyclic rule.
    Sharp(GenCommon),
    /// Uniform random coloring on n vertices, seeded by RF_SEED.
    Random(GenCommon),
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorArg {
    Red,
    Blue,
}

impl From<ColorArg> for Color {
    fn from(c: ColorArg) -> Color {
        match c {
            ColorArg::Red => Color::Red,
            ColorArg::Blue => Color::Blue,
        }
    }
}

#[derive(Subcommand)]
enum DetectKind {
    /// A monochromatic Fano plane.
    Fano {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = ColorArg::Blue)]
        color: ColorArg,
    },
    /// The longest red tight path, success when it reaches --n.
    Tightpath {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// A red clique on --m vertices.
    Clique {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Greedy maximal disjoint red butterflies between --a and --b.
    Butterflies {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        /// Comma-separated vertex list.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// A red triple triangle between --a and --b.
    Tripletriangle {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, name = "file")]
    r#in: std::path::PathBuf,
    /// Assert the coloring has no blue Fano plane.
    #[arg(long)]
    no_blue_fano: bool,
    /// Assert there is no red tight path on this many vertices.
    #[arg(long, value_name = "n")]
    no_red_tightpath: Option<usize>,
    /// Assert there is no red copy of the pattern (fano | path:n | cycle:n | pprime:n).
    #[arg(long, value_name = "name:n")]
    no_red_pattern: Option<String>,
}

#[derive(Subcommand)]
enum PipelineCmd {
    Run {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        #[arg(long)]
        target_n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        butterfly_threshold: Option<usize>,
        #[arg(long)]
        eps: Option<f64>,
        /// Write the stage trace to this file as well.
        #[arg(long)]
        report: Option<std::path::PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Count distinct monochromatic Fano edge-sets.
    CountFano {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = ColorArg::Blue)]
        color: ColorArg,
    },
    /// Exhaustive red tight-path existence.
    Tightpath {
        #[arg(long, name = "file")]
        r#in: std::path::PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Micro-scale Ramsey verdict by coloring enumeration.
    Ramsey {
        #[arg(long)]
        red: String,
        #[arg(long)]
        blue: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Subcommand)]
enum BoundCmd {
    /// The clique Ramsey upper-bound formula 2^(C t^(s-2) log t).
    Cfs {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        c: f64,
        /// Base of the logarithm (natural log when omitted).
        #[arg(long)]
        base: Option<f64>,
    },
    /// The goodness bound (chi-1)(v-1)+sigma.
    Hgood {
        #[arg(long)]
        v: u64,
        #[arg(long)]
        chi: u64,
        #[arg(long)]
        sigma: u64,
    },
    /// The blob-size estimate m(n, eps).
    Mofn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let threads = cli.threads.max(1);
    match cli.cmd {
        Cmd::Gen { kind } => gen(kind),
        Cmd::Detect { what } => detect(what, threads),
        Cmd::Verify(args) => verify(args, threads),
        Cmd::Pipeline { cmd } => pipeline(cmd, threads),
        Cmd::Oracle { cmd } => oracle(cmd, threads),
        Cmd::Bound { cmd } => bound(cmd),
    }
}

fn load(path: &std::path::Path) -> Result<Coloring, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    read_coloring(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad vertex `{p}`")))
        .collect()
}

/// Number of injective maps of a k-vertex pattern into an N-vertex host:
/// the size of the search space a successful `verify` exhausted.
fn falling_factorial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).map(|i| (n - i) as u128).product()
}

fn gen(kind: GenKind) -> Result<u8, String> {
    let (coloring, common) = match kind {
        GenKind::Lower(a) => (lower_bound_coloring(a.n).map_err(|e| e.to_string())?.0, a),
        GenKind::Extended(a) => (extended_lower_bound(a.n).map_err(|e| e.to_string())?.0, a),
        GenKind::Sharp(a) => (sharpness_coloring(a.n).map_err(|e| e.to_string())?.0, a),
        GenKind::Random(a) => {
            let seed = std::env::var("RF_SEED")
                .ok()
                .and_then(|s| s.parse::<u64>().ok())
                .unwrap_or(0);
            (Coloring::random(a.n, seed), a)
        }
    };
    let text = write_coloring(&coloring);
    match common.out {
        Some(path) => {
            std::fs::write(&path, &text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!("out={}", path.display());
            println!("n_vertices={}", coloring.n_vertices());
            println!("red={}", coloring.red_count());
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn detect(what: DetectKind, threads: usize) -> Result<u8, String> {
    match what {
        DetectKind::Fano { r#in, color } => {
            let c = load(&r#in)?;
            match find_mono(&c, &fano_lines(), color.into(), threads) {
                Some(w) => {
                    println!("found=fano");
                    print!("{}", w.to_text());
                    Ok(0)
                }
                None => {
                    println!("found=none");
                    Ok(1)
                }
            }
        }
        DetectKind::Tightpath { r#in, n } => {
            let c = load(&r#in)?;
            let (len, w) = longest_red_tight_path(&c, n);
            println!("longest={len}");
            if let Some(w) = &w {
                print!("{}", w.to_text());
            }
            Ok(if len >= n { 0 } else { 1 })
        }
        DetectKind::Clique { r#in, m } => {
            let c = load(&r#in)?;
            if m < 3 {
                return Err("m must be at least 3".into());
            }
            match find_red_clique(&c, m) {
                Some(vs) => {
                    let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    println!("clique={}", list.join(","));
                    Ok(0)
                }
                None => {
                    println!("clique=none");
                    Ok(1)
                }
            }
        }
        DetectKind::Butterflies { r#in, a, b } => {
            let c = load(&r#in)?;
            let a = parse_list(&a)?;
            let b = parse_list(&b)?;
            let found = max_disjoint_butterflies(&c, &a, &b);
            println!("count={}", found.len());
            for bf in &found {
                println!(
                    "butterfly={},{},{},{} spine_a={} spine_b={}",
                    bf.a[0], bf.a[1], bf.b[0], bf.b[1], bf.spine_a, bf.spine_b
                );
            }
            Ok(if found.is_empty() { 1 } else { 0 })
        }
        DetectKind::Tripletriangle { r#in, a, b } => {
            let c = load(&r#in)?;
            let a = parse_list(&a)?;
            let b = parse_list(&b)?;
            match find_triple_triangle(&c, &a, &b) {
                Some(tt) => {
                    println!(
                        "quad={},{},{},{} apex={} quad_in_first={}",
                        tt.quad[0], tt.quad[1], tt.quad[2], tt.quad[3], tt.apex, tt.quad_in_first
                    );
                    Ok(0)
                }
                None => {
                    println!("tripletriangle=none");
                    Ok(1)
                }
            }
        }
    }
}

fn verify(args: VerifyArgs, threads: usize) -> Result<u8, String> {
    let c = load(&args.r#in)?;
    let n = c.n_vertices();
    if !args.no_blue_fano && args.no_red_tightpath.is_none() && args.no_red_pattern.is_none() {
        return Err("nothing to verify: pass at least one --no-* check".into());
    }
    if args.no_blue_fano {
        match find_mono(&c, &fano_lines(), Color::Blue, threads) {
            Some(w) => {
                println!("check=no_blue_fano status=violated");
                print!("{}", w.to_text());
                return Ok(1);
            }
            None => println!(
                "check=no_blue_fano status=ok searched={}",
                falling_factorial(n, 7)
            ),
        }
    }
    if let Some(k) = args.no_red_tightpath {
        if k < 3 {
            return Err("--no-red-tightpath needs n >= 3".into());
        }
        let (len, w) = longest_red_tight_path(&c, k);
        if len >= k {
            println!("check=no_red_tightpath status=violated longest={len}");
            print!("{}", w.expect("len >= 3").to_text());
            return Ok(1);
        }
        println!(
            "check=no_red_tightpath status=ok longest={len} searched={}",
            falling_factorial(n, k)
        );
    }
    if let Some(spec) = &args.no_red_pattern {
        let p = Pattern::parse(spec)?;
        match find_mono(&c, &p, Color::Red, threads) {
            Some(w) => {
                println!("check=no_red_pattern pattern={} status=violated", p.name);
                print!("{}", w.to_text());
                return Ok(1);
            }
            None => println!(
                "check=no_red_pattern pattern={} status=ok searched={}",
                p.name,
                falling_factorial(n, p.n)
            ),
        }
    }
    Ok(0)
}

fn pipeline(cmd: PipelineCmd, threads: usize) -> Result<u8, String> {
    let PipelineCmd::Run {
        r#in,
        target_n,
        m,
        butterfly_threshold,
        eps,
        report,
    } = cmd;
    let c = load(&r#in)?;
    let mut params = PipelineParams::defaults(c.n_vertices(), target_n);
    if let Some(eps) = eps {
        params.eps = eps;
        params.special_density = 0.2 * eps.powi(5);
        params.junk_blue_cap = eps;
    }
    if let Some(m) = m {
        params.m = m;
        params.butterfly_threshold = (m / 4).max(1);
    }
    if let Some(t) = butterfly_threshold {
        params.butterfly_threshold = t;
    }
    params.threads = threads;
    params.validate().map_err(|e| e.to_string())?;
    let rep = run_pipeline(&c, &params);
    let text = rep.render();
    if let Some(path) = report {
        std::fs::write(&path, &text)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    print!("{text}");
    Ok(match rep.outcome {
        Outcome::RedPath(_) | Outcome::BlueFano(_) => 0,
        Outcome::Failure { .. } => 1,
    })
}

fn oracle(cmd: OracleCmd, threads: usize) -> Result<u8, String> {
    match cmd {
        OracleCmd::CountFano { r#in, color } => {
            let c = load(&r#in)?;
            let count = count_fano_copies(&c, color.into(), threads);
            println!("count={count}");
            Ok(0)
        }
        OracleCmd::Tightpath { r#in, n, budget } => {
            let c = load(&r#in)?;
            let budget = budget.map(OracleBudget::new).unwrap_or_default();
            match exhaustive_tight_path(&c, n, budget) {
                Ok(exists) => {
                    println!("exists={exists}");
                    Ok(if exists { 0 } else { 1 })
                }
                Err(e) => {
                    println!("error=budget_exceeded detail={e}");
                    Ok(1)
                }
            }
        }
        OracleCmd::Ramsey {
            red,
            blue,
            n,
            budget,
        } => {
            let red_p = Pattern::parse(&red)?;
            let blue_p = Pattern::parse(&blue)?;
            let budget = budget.map(OracleBudget::new).unwrap_or_default();
            match ramsey_verify_tiny(&red_p, &blue_p, n, budget) {
                RamseyVerdict::Unavoidable => {
                    println!("verdict=unavoidable");
                    Ok(0)
                }
                RamseyVerdict::Avoidable(cert) => {
                    println!("verdict=avoidable");
                    print!("{}", write_coloring(&cert));
                    Ok(0)
                }
                RamseyVerdict::BudgetExceeded => {
                    println!("verdict=budget_exceeded");
                    Ok(1)
                }
            }
        }
    }
}

fn bound(cmd: BoundCmd) -> Result<u8, String> {
    match cmd {
        BoundCmd::Cfs { s, t, c, base } => {
            let v = match base {
                Some(b) => cfs_bound_with_base(s, t, c, b),
                None => cfs_bound_with_base(s, t, c, std::f64::consts::E),
            }
            .map_err(|e| e.to_string())?;
            println!("value={v:.6}");
            Ok(0)
        }
        BoundCmd::Hgood { v, chi, sigma } => {
            let b = h_good_bound(v, chi, sigma).map_err(|e| e.to_string())?;
            println!("value={b}");
            Ok(0)
        }
        BoundCmd::Mofn { n, eps } => {
            let e = m_of_n(n, eps).map_err(|e| e.to_string())?;
            println!("m={}", e.m);
            println!("inequality_holds={}", e.inequality_holds);
            Ok(0)
        }
    }
}
