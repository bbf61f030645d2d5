use std::io::{BufRead, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flipgray::colorful::{is_colorful, parity_colors, ColoringSequence};
use flipgray::colorful_gray::{colorful_path, GenColorful};
use flipgray::dissection::Dissection;
use flipgray::gray::{verify_gray, KaryGray};
use flipgray::kary::{Direction, KAryTree, Rotation};
use flipgray::oracle;
use flipgray::tables;
use flipgray::tricolor;
use flipgray::Error;

/// Gray codes and flip-graph oracle for k-ary trees and colorful
/// triangulations.
#[derive(Parser)]
#[command(name = "flipgray", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream all n-vertex k-ary trees, consecutive ones a rotation apart
    GenKary(GenKaryArgs),
    /// Stream all colorful triangulations of the N-gon, a flip apart
    GenColorful(GenColorfulArgs),
    /// Exact counts
    #[command(subcommand)]
    Count(CountCmd),
    /// Check or replay generator output
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Brute-force flip-graph computations
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Render a triangulation as SVG
    Render(RenderArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Snapshot,
    Delta,
}

#[derive(Args)]
struct GenKaryArgs {
    /// arity (k >= 2)
    #[arg(long)]
    k: usize,
    /// vertex count (n >= 1)
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "snapshot")]
    format: Format,
    /// stop after this many trees
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(Args)]
struct GenColorfulArgs {
    /// number of polygon points
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "snapshot")]
    format: Format,
    /// stop after this many triangulations
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(Subcommand)]
enum CountCmd {
    /// k-ary trees with n vertices (equally, dissections into (k+1)-gons)
    Kary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// colorful triangulations of the N-gon, alternating coloring
    Colorful {
        #[arg(long)]
        n: usize,
    },
    /// pairs of ternary trees with n vertices in total
    TernaryPairs {
        #[arg(long)]
        n: usize,
    },
    /// three-colorful triangulations of the N-gon (N divisible by 3)
    Tricolor {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check a snapshot stream of tree encodings (stdin or --input)
    Kary {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        input: Option<std::path::PathBuf>,
    },
    /// Check a snapshot stream of triangulations against the coloring
    Colorful {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<std::path::PathBuf>,
    },
    /// Replay a delta stream (first line a snapshot) into snapshots
    Replay {
        #[arg(long, value_enum)]
        kind: ReplayKind,
        /// arity for kary streams, point count for colorful streams
        #[arg(long)]
        param: usize,
        #[arg(long)]
        input: Option<std::path::PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReplayKind {
    Kary,
    Colorful,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Decide Hamilton path/cycle existence in a flip graph
    Hamilton(HamiltonArgs),
    /// Classify every coloring sequence with up to --n-max points
    Tables(TablesArgs),
    /// Spanning tree of the tuple graph G(a,d) with maximum degree 3
    Gad {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        d: usize,
    },
    /// Connectivity of the twist graph H_N
    Twist {
        #[arg(long)]
        n: usize,
        /// also certify by normalizing every node to T_0
        #[arg(long)]
        certify: bool,
    },
    /// DOT export of a flip graph
    Graph(GraphArgs),
}

#[derive(Args)]
struct HamiltonArgs {
    /// coloring sequence, e.g. 1,1,1,1,1,1
    #[arg(long)]
    alpha: Option<String>,
    /// alternating coloring on N points (Sagan's F_N)
    #[arg(long)]
    colorful: Option<usize>,
    /// rotation graph of k-ary trees: two values k,n
    #[arg(long)]
    kary: Option<String>,
    /// search for a path
    #[arg(long)]
    path: bool,
    /// search for a cycle
    #[arg(long)]
    cycle: bool,
    /// print the walk found
    #[arg(long)]
    print: bool,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    /// extra rows, semicolon-separated sequences: 7,2;6,1,1,1
    #[arg(long)]
    spots: Option<String>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// write the CSV report here instead of stdout
    #[arg(long)]
    csv: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// coloring sequence for F_alpha
    #[arg(long)]
    alpha: Option<String>,
    /// alternating coloring on N points
    #[arg(long)]
    colorful: Option<usize>,
    /// twist graph H_N
    #[arg(long)]
    twist: Option<usize>,
    /// output path for DOT
    #[arg(long)]
    dot: std::path::PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    /// triangulation in text form; read from stdin when absent
    #[arg(long)]
    input: Option<std::path::PathBuf>,
    /// coloring sequence used for point colors
    #[arg(long)]
    alpha: Option<String>,
    /// alternating red/blue coloring
    #[arg(long)]
    colorful: bool,
    #[arg(long)]
    svg: std::path::PathBuf,
}

fn search_budget() -> u64 {
    std::env::var("FLIPGRAY_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1 << 26)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    match cli.command {
        Command::GenKary(args) => {
            let mut gen = KaryGray::new(args.k, args.n)?;
            let mut count = 1u64;
            writeln!(out, "{}", gen.tree().encode())?;
            while args.limit.map_or(true, |l| count < l) {
                match gen.next_rotation() {
                    Some(rot) => {
                        count += 1;
                        match args.format {
                            Format::Snapshot => writeln!(out, "{}", gen.tree().encode())?,
                            Format::Delta => writeln!(out, "{rot}")?,
                        }
                    }
                    None => break,
                }
            }
        }
        Command::GenColorful(args) => {
            if args.n >= 8 {
                let mut gen = GenColorful::new(args.n)?;
                let mut count = 1u64;
                writeln!(out, "{}", gen.current_triangulation().to_text())?;
                while args.limit.map_or(true, |l| count < l) {
                    match gen.next_flip() {
                        Some(flip) => {
                            count += 1;
                            match args.format {
                                Format::Snapshot => {
                                    writeln!(out, "{}", gen.current_triangulation().to_text())?
                                }
                                Format::Delta => writeln!(out, "{flip}")?,
                            }
                        }
                        None => break,
                    }
                }
            } else {
                let path = colorful_path(args.n)?;
                let limit = args.limit.unwrap_or(u64::MAX);
                match args.format {
                    Format::Snapshot => {
                        for t in path.iter().take(limit as usize) {
                            writeln!(out, "{}", t.to_text())?;
                        }
                    }
                    Format::Delta => {
                        writeln!(out, "{}", path[0].to_text())?;
                        let mut count = 1u64;
                        for w in path.windows(2) {
                            if count >= limit {
                                break;
                            }
                            count += 1;
                            let rem = w[0]
                                .diagonals()
                                .iter()
                                .find(|d| !w[1].diagonals().contains(d))
                                .unwrap();
                            let ins = w[1]
                                .diagonals()
                                .iter()
                                .find(|d| !w[0].diagonals().contains(d))
                                .unwrap();
                            writeln!(out, "flip {}-{} -> {}-{}", rem.0, rem.1, ins.0, ins.1)?;
                        }
                    }
                }
            }
        }
        Command::Count(cmd) => {
            let value = match cmd {
                CountCmd::Kary { k, n } => {
                    if k < 2 {
                        return Err(Error::Contract("arity must be at least 2".into()).into());
                    }
                    oracle::count_kary(n, k)
                }
                CountCmd::Colorful { n } => oracle::count_colorful(n),
                CountCmd::TernaryPairs { n } => oracle::count_ternary_pairs(n),
                CountCmd::Tricolor { n } => oracle::count_tricolor(n)?,
            };
            writeln!(out, "{value}")?;
        }
        Command::Verify(cmd) => return verify(cmd, &mut out),
        Command::Oracle(cmd) => return run_oracle(cmd, &mut out),
        Command::Render(args) => {
            let text = match &args.input {
                Some(path) => std::fs::read_to_string(path)?,
                None => {
                    let mut s = String::new();
                    std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
                    s
                }
            };
            let d = Dissection::from_text(text.trim(), 2)?;
            let palette = if let Some(alpha) = &args.alpha {
                let seq = ColoringSequence::parse(alpha)?;
                if seq.n_points() != d.n_points() {
                    return Err(Error::Contract("coloring does not fit the polygon".into()).into());
                }
                Some(color_names(&seq.colors()))
            } else if args.colorful {
                Some(color_names(&parity_colors(d.n_points())))
            } else {
                None
            };
            let refs: Option<Vec<&str>> = palette
                .as_ref()
                .map(|v| v.iter().map(String::as_str).collect());
            std::fs::write(&args.svg, d.to_svg(refs.as_deref()))?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn color_names(colors: &[flipgray::colorful::Color]) -> Vec<String> {
    colors
        .iter()
        .map(|c| {
            match c {
                flipgray::colorful::Color::Red => "#d62728",
                flipgray::colorful::Color::Blue => "#1f77b4",
            }
            .to_string()
        })
        .collect()
}

fn read_lines(input: &Option<std::path::PathBuf>) -> Result<Vec<String>, std::io::Error> {
    match input {
        Some(path) => Ok(std::fs::read_to_string(path)?
            .lines()
            .map(str::to_string)
            .collect()),
        None => std::io::stdin().lock().lines().collect(),
    }
}

fn verify(
    cmd: VerifyCmd,
    out: &mut impl Write,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cmd {
        VerifyCmd::Kary { k, input } => {
            let lines = read_lines(&input)?;
            let report = verify_gray(lines.iter(), k);
            for (line, msg) in &report.errors {
                writeln!(out, "line {line}: {msg}")?;
            }
            writeln!(
                out,
                "count={} distinct={} adjacent={}",
                report.count, report.distinct, report.adjacent
            )?;
            out.flush()?;
            if report.distinct && report.adjacent && report.errors.is_empty() {
                return Ok(ExitCode::SUCCESS);
            }
            return Ok(ExitCode::from(1));
        }
        VerifyCmd::Colorful { n, input } => {
            let lines = read_lines(&input)?;
            let colors = parity_colors(n);
            let mut count = 0usize;
            let mut distinct = true;
            let mut adjacent = true;
            let mut colorful = true;
            let mut seen = std::collections::HashSet::new();
            let mut prev: Option<Dissection> = None;
            for line in lines.iter().filter(|l| !l.trim().is_empty()) {
                let d = Dissection::from_text(line, 2)?;
                count += 1;
                if d.n_points() != n {
                    return Err(Error::Contract("point count mismatch".into()).into());
                }
                if !is_colorful(&d, &colors) {
                    colorful = false;
                }
                if !seen.insert(d.to_text()) {
                    distinct = false;
                }
                if let Some(p) = &prev {
                    let diff = p
                        .diagonals()
                        .iter()
                        .filter(|x| !d.diagonals().contains(x))
                        .count();
                    if diff != 1 {
                        adjacent = false;
                    }
                }
                prev = Some(d);
            }
            writeln!(
                out,
                "count={count} distinct={distinct} adjacent={adjacent} colorful={colorful}"
            )?;
            out.flush()?;
            if distinct && adjacent && colorful {
                return Ok(ExitCode::SUCCESS);
            }
            return Ok(ExitCode::from(1));
        }
        VerifyCmd::Replay { kind, param, input } => {
            let lines = read_lines(&input)?;
            let mut it = lines.iter().filter(|l| !l.trim().is_empty());
            let first = it
                .next()
                .ok_or_else(|| Error::Parse("empty delta stream".into()))?;
            match kind {
                ReplayKind::Kary => {
                    let mut tree = KAryTree::decode(first.trim(), param)?;
                    writeln!(out, "{}", tree.encode())?;
                    for line in it {
                        let rot = parse_rotation(line)?;
                        tree.rotate(rot)?;
                        writeln!(out, "{}", tree.encode())?;
                    }
                }
                ReplayKind::Colorful => {
                    let mut d = Dissection::from_text(first.trim(), 2)?;
                    if d.n_points() != param {
                        return Err(Error::Contract("point count mismatch".into()).into());
                    }
                    writeln!(out, "{}", d.to_text())?;
                    for line in it {
                        let flip = parse_flip(line)?;
                        d = d.apply_flip(&flip)?;
                        writeln!(out, "{}", d.to_text())?;
                    }
                }
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn parse_rotation(line: &str) -> Result<Rotation, Error> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("bad rotation line '{line}'")));
    }
    let pivot = parts[0]
        .parse()
        .map_err(|e| Error::Parse(format!("bad pivot: {e}")))?;
    let dir = match parts[1] {
        "up" => Direction::Up,
        "down" => Direction::Down,
        other => return Err(Error::Parse(format!("bad direction '{other}'"))),
    };
    let steps = parts[2]
        .parse()
        .map_err(|e| Error::Parse(format!("bad steps: {e}")))?;
    Ok(Rotation { pivot, dir, steps })
}

fn parse_flip(line: &str) -> Result<flipgray::dissection::DissectionFlip, Error> {
    // "flip a-b -> c-d"
    let rest = line
        .trim()
        .strip_prefix("flip")
        .ok_or_else(|| Error::Parse(format!("bad flip line '{line}'")))?;
    let (lhs, rhs) = rest
        .split_once("->")
        .ok_or_else(|| Error::Parse(format!("bad flip line '{line}'")))?;
    let parse_edge = |s: &str| -> Result<(usize, usize), Error> {
        let (a, b) = s
            .trim()
            .split_once('-')
            .ok_or_else(|| Error::Parse(format!("bad edge '{s}'")))?;
        Ok((
            a.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad point: {e}")))?,
            b.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad point: {e}")))?,
        ))
    };
    Ok(flipgray::dissection::DissectionFlip {
        remove: parse_edge(lhs)?,
        insert: parse_edge(rhs)?,
    })
}

fn parse_alpha_list(s: &str) -> Result<Vec<Vec<usize>>, Error> {
    s.split(';')
        .map(|part| {
            part.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad sequence entry: {e}")))
                })
                .collect()
        })
        .collect()
}

fn run_oracle(
    cmd: OracleCmd,
    out: &mut impl Write,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let budget = search_budget();
    match cmd {
        OracleCmd::Hamilton(args) => {
            let graph = hamilton_target(&args)?;
            let (kind, search) = if args.cycle {
                ("cycle", oracle::hamilton_cycle(&graph, budget))
            } else {
                ("path", oracle::hamilton_path(&graph, None, budget))
            };
            match search {
                oracle::Search::Found(walk) => {
                    writeln!(out, "hamilton {kind}: found ({} nodes)", walk.len())?;
                    if args.print {
                        for i in walk {
                            writeln!(out, "{}", graph.nodes[i])?;
                        }
                    }
                }
                oracle::Search::None => {
                    writeln!(out, "hamilton {kind}: none")?;
                    out.flush()?;
                    return Ok(ExitCode::from(1));
                }
                oracle::Search::Undecided => {
                    writeln!(out, "hamilton {kind}: undecided (budget exhausted)")?;
                    out.flush()?;
                    return Ok(ExitCode::from(1));
                }
            }
        }
        OracleCmd::Tables(args) => {
            let spots = match &args.spots {
                Some(s) => parse_alpha_list(s)?,
                None => Vec::new(),
            };
            let rows = tables::reproduce_tables(args.n_max, &spots, budget, args.jobs)?;
            let csv = tables::rows_to_csv(&rows);
            match &args.csv {
                Some(path) => std::fs::write(path, csv)?,
                None => write!(out, "{csv}")?,
            }
            let disagreements = rows.iter().filter(|r| !r.agrees).count();
            writeln!(out, "rows={} disagreements={}", rows.len(), disagreements)?;
        }
        OracleCmd::Gad { a, d } => {
            let graph = oracle::GadGraph::new(a, d);
            let tree = oracle::gad_spanning_tree(a, d);
            let fmt = |t: &[usize]| {
                t.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join("")
            };
            writeln!(out, "vertices={} tree-edges={}", graph.vertices.len(), tree.len())?;
            for (u, v) in &tree {
                writeln!(out, "{} -- {}", fmt(u), fmt(v))?;
            }
        }
        OracleCmd::Twist { n, certify } => {
            let h = tricolor::build_hn(n)?;
            writeln!(
                out,
                "H_{n}: nodes={} edges={} connected={}",
                h.len(),
                h.edge_count(),
                h.is_connected()
            )?;
            if certify {
                if n % 3 != 0 {
                    return Err(Error::Contract(
                        "normalization requires N divisible by 3".into(),
                    )
                    .into());
                }
                for d in tricolor::enumerate_tricolor(n) {
                    let t = tricolor::TriColorTriangulation::from_dissection(&d)?;
                    let twists = tricolor::normalize_to_t0(&t)?;
                    writeln!(out, "{} -> T0 in {} twists", t.encode(), twists.len())?;
                }
            }
            if !h.is_connected() {
                out.flush()?;
                return Ok(ExitCode::from(1));
            }
        }
        OracleCmd::Graph(args) => {
            let (name, graph) = if let Some(alpha) = &args.alpha {
                let seq = ColoringSequence::parse(alpha)?;
                ("F_alpha".to_string(), tables::alpha_flip_graph(&seq)?)
            } else if let Some(n) = args.colorful {
                let colors = parity_colors(n);
                let objects: Vec<String> = oracle::enumerate_triangulations(n)
                    .into_iter()
                    .filter(|t| is_colorful(t, &colors))
                    .map(|t| t.to_text())
                    .collect();
                let g = oracle::FlipGraph::build(objects, |s| {
                    let d = Dissection::from_text(s, 2).unwrap();
                    d.flips()
                        .into_iter()
                        .filter(|(_, x)| is_colorful(x, &colors))
                        .map(|(_, x)| x.to_text())
                        .collect()
                })?;
                (format!("F_{n}"), g)
            } else if let Some(n) = args.twist {
                (format!("H_{n}"), tricolor::build_hn(n)?)
            } else {
                return Err(Error::Contract(
                    "choose one of --alpha, --colorful, --twist".into(),
                )
                .into());
            };
            std::fs::write(&args.dot, graph.to_dot(&name))?;
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn hamilton_target(args: &HamiltonArgs) -> Result<oracle::FlipGraph, Box<dyn std::error::Error>> {
    if let Some(alpha) = &args.alpha {
        let seq = ColoringSequence::parse(alpha)?;
        return Ok(tables::alpha_flip_graph(&seq)?);
    }
    if let Some(n) = args.colorful {
        let colors = parity_colors(n);
        let objects: Vec<String> = oracle::enumerate_triangulations(n)
            .into_iter()
            .filter(|t| is_colorful(t, &colors))
            .map(|t| t.to_text())
            .collect();
        return Ok(oracle::FlipGraph::build(objects, move |s| {
            let d = Dissection::from_text(s, 2).unwrap();
            d.flips()
                .into_iter()
                .filter(|(_, x)| is_colorful(x, &colors))
                .map(|(_, x)| x.to_text())
                .collect()
        })?);
    }
    if let Some(spec) = &args.kary {
        let parts: Vec<usize> = spec
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad k,n: {e}")))?;
        if parts.len() != 2 {
            return Err(Error::Parse("--kary wants two values k,n".into()).into());
        }
        let (k, n) = (parts[0], parts[1]);
        let n_points = (k - 1) * n + 2;
        let objects: Vec<String> = oracle::enumerate_dissections(n_points, k)
            .into_iter()
            .map(|d| d.to_text())
            .collect();
        return Ok(oracle::FlipGraph::build(objects, move |s| {
            let d = Dissection::from_text(s, k).unwrap();
            d.flips().into_iter().map(|(_, x)| x.to_text()).collect()
        })?);
    }
    Err(Error::Contract("choose one of --alpha, --colorful, --kary".into()).into())
}
