//! Command-line pipeline: ingestion, decomposition, budgets, construction,
//! rendering, plus the verification oracle and benchmarks.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use orthobend::format;
use orthobend::svg;
use orthobend_core::budget::{analyze, flexibility_breakpoints, Analysis};
use orthobend_core::build::build;
use orthobend_core::compact::compact;
use orthobend_core::flow::flow_min_bends;
use orthobend_core::gen::{generate_sp, GeneratorSpec};
use orthobend_core::interval::Spirality2;
use orthobend_core::spqtree::{NodeKind, PNodeType};

#[derive(Parser)]
#[command(name = "orthobend", version, about = "Bend-minimum orthogonal drawings of plane series-parallel 4-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rectilinear planarity test with per-node spirality intervals.
    Check {
        input: String,
        /// Also dump the decomposition tree as JSON.
        #[arg(long)]
        tree: bool,
    },
    /// Bend budgets per node and the total optimum.
    Budget { input: String },
    /// Compute a bend-minimum orthogonal representation.
    Minimize {
        input: String,
        /// Write the representation JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute a grid drawing and render it.
    Draw {
        input: String,
        #[arg(long, value_enum, default_value_t = DrawFormat::Svg)]
        format: DrawFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cross-check the pipeline against the min-cost-flow oracle on random
    /// instances; exits 2 on the first mismatch.
    Oracle {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 30)]
        max_n: u32,
    },
    /// Generate a random embedded SP 4-graph.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short, default_value_t = 20)]
        n: u32,
        /// Percentage of seeds that produce biconnected instances.
        #[arg(long, default_value_t = 70)]
        biconnected_pct: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the pipeline stages on generated instances of growing size.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, default_value = "1000,10000,100000,1000000")]
        sizes: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DrawFormat {
    Svg,
    Json,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn fmt_s2(v: Spirality2) -> String {
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        format!("{}/2", v)
    }
}

fn fmt_interval(iv: &orthobend_core::interval::SpiralityInterval) -> String {
    format!("[{}, {}]", fmt_s2(iv.lo()), fmt_s2(iv.hi()))
}

fn kind_name(a: &Analysis, id: u32) -> String {
    let node = a.tree.node(id);
    match node.kind {
        NodeKind::QStar => format!("Q*({})", node.qstar_len()),
        NodeKind::S => "S".into(),
        NodeKind::P => match &node.ty {
            Some(PNodeType::Pio2 { lambda, beta, .. }) => format!("Pio2({lambda},{beta})"),
            Some(PNodeType::Pio3 { d, lambda, beta, .. }) => {
                format!("Pio3{d:?}({lambda},{beta})").to_lowercase()
            }
            Some(PNodeType::Pin3 { d_u, d_v, .. }) => {
                format!("Pin3{d_u:?}{d_v:?}").to_lowercase()
            }
            None => "P3".into(),
        },
        NodeKind::PRoot => "P^r".into(),
    }
}

fn node_table(a: &Analysis, with_budgets: bool) {
    println!(
        "{:>5} {:>10} {:>12} {:>14} {}",
        "node",
        "kind",
        "poles",
        "interval",
        if with_budgets { "b    B    breakpoints" } else { "" }
    );
    for id in a.tree.post_order() {
        let node = a.tree.node(id);
        let poles = format!(
            "({},{})",
            a.graph.vertex_id(node.poles[0]),
            a.graph.vertex_id(node.poles[1])
        );
        let interval = if id == a.tree.root() {
            "-".to_string()
        } else {
            fmt_interval(a.ann.node_interval(id))
        };
        let mut extra = String::new();
        if with_budgets {
            extra = format!(
                "{:<4} {:<4}",
                a.ann.budget[id as usize], a.ann.cumulative[id as usize]
            );
            if let Some(PNodeType::Pio2 { lambda: 2, beta: 2, .. }) = node.ty {
                let (p, m) = flexibility_breakpoints(
                    a.ann.node_interval(node.children[0]),
                    a.ann.node_interval(node.children[1]),
                );
                extra.push_str(&format!(" b+={p} b-={m}"));
            }
        }
        println!("{:>5} {:>10} {:>12} {:>14} {}", id, kind_name(a, id), poles, interval, extra);
    }
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { input, tree } => {
            let g = format::parse_graph(&read_input(&input)?)?;
            let a = analyze(&g)?;
            node_table(&a, false);
            println!("rectilinear: {}", a.ann.total == 0);
            if tree {
                println!("{}", format::serialize_tree(&a));
            }
        }
        Command::Budget { input } => {
            let g = format::parse_graph(&read_input(&input)?)?;
            let a = analyze(&g)?;
            node_table(&a, true);
            println!("bends: {}", a.ann.total);
        }
        Command::Minimize { input, out } => {
            let g = format::parse_graph(&read_input(&input)?)?;
            let a = analyze(&g)?;
            let built = build(&a);
            println!("bends: {}", a.ann.total);
            let json = format::serialize_representation(&built.rep);
            match out {
                Some(path) => fs::write(&path, json)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{json}"),
            }
        }
        Command::Draw { input, format: fmt, out } => {
            let g = format::parse_graph(&read_input(&input)?)?;
            let a = analyze(&g)?;
            let built = build(&a);
            let drawing = compact(&built.rep);
            let payload = match fmt {
                DrawFormat::Svg => svg::emit_svg(built.rep.graph(), &drawing),
                DrawFormat::Json => format::serialize_drawing(built.rep.graph(), &drawing),
            };
            match out {
                Some(path) => fs::write(&path, payload)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{payload}"),
            }
        }
        Command::Oracle { seed, count, max_n } => {
            println!("# oracle comparison: seed={seed} count={count} max-n={max_n}");
            let mut checked = 0u64;
            let mut s = seed;
            while checked < count {
                let spec = GeneratorSpec {
                    target_vertices: 4 + (s % max_n.max(5) as u64) as u32,
                    seed: s,
                    ..Default::default()
                };
                s += 1;
                let g = generate_sp(&spec)?;
                if g.vertex_count() > max_n as usize {
                    continue;
                }
                checked += 1;
                let a = analyze(&g)?;
                let want = flow_min_bends(&g);
                let built = build(&a);
                let rep_ok = built.rep.is_valid();
                if a.ann.total != want || !rep_ok {
                    eprintln!(
                        "mismatch at seed {}: pipeline={} oracle={} valid={}",
                        spec.seed, a.ann.total, want, rep_ok
                    );
                    eprintln!("{}", format::serialize_graph(&g));
                    return Ok(2);
                }
            }
            println!("{checked} instances agree with the flow oracle");
        }
        Command::Gen { seed, n, biconnected_pct, out } => {
            let g = generate_sp(&GeneratorSpec {
                target_vertices: n,
                seed,
                biconnected_pct,
                ..Default::default()
            })?;
            let json = format::serialize_graph(&g);
            match out {
                Some(path) => fs::write(&path, json)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => {
                    println!("# seed: {seed}");
                    println!("{json}");
                }
            }
        }
        Command::Bench { sizes, seed } => {
            println!("# bench: seed={seed} (times exclude generation and IO)");
            println!(
                "{:>9} {:>9} {:>9} {:>11} {:>11} {:>11} {:>11}",
                "target", "V", "E", "tree+budget", "construct", "compact", "core-total"
            );
            let mut prev: Option<(usize, f64)> = None;
            for part in sizes.split(',') {
                let part = part.trim();
                // Accept plain integers and short scientific forms (1e6).
                let n: u32 = part
                    .parse::<u32>()
                    .or_else(|_| part.parse::<f64>().map(|f| f as u32))
                    .with_context(|| format!("size {part:?}"))?;
                let g = generate_sp(&GeneratorSpec {
                    target_vertices: n,
                    seed,
                    biconnected_pct: 100,
                    ..Default::default()
                })?;
                let t0 = Instant::now();
                let a = analyze(&g)?;
                let t_analyze = t0.elapsed();
                let t0 = Instant::now();
                let built = build(&a);
                let t_build = t0.elapsed();
                let t0 = Instant::now();
                // Compaction is correctness-first and superlinear; keep the
                // benched sizes small.
                let do_compact = g.vertex_count() <= 20_000;
                let t_compact = if do_compact {
                    let _ = compact(&built.rep);
                    t0.elapsed().as_secs_f64()
                } else {
                    f64::NAN
                };
                let core = t_analyze.as_secs_f64() + t_build.as_secs_f64();
                let factor = prev
                    .map(|(pv, pt)| {
                        let ratio = g.vertex_count() as f64 / pv as f64;
                        format!(
                            "  (x{:.1} time for x{:.1} size)",
                            core / pt,
                            ratio
                        )
                    })
                    .unwrap_or_default();
                println!(
                    "{:>9} {:>9} {:>9} {:>11.4} {:>11.4} {:>11.4} {:>11.4}{}",
                    n,
                    g.vertex_count(),
                    g.edge_count(),
                    t_analyze.as_secs_f64(),
                    t_build.as_secs_f64(),
                    t_compact,
                    core,
                    factor
                );
                prev = Some((g.vertex_count(), core));
            }
        }
    }
    Ok(0)
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}
