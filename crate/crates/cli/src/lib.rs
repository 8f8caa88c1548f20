//! The `gem` command-line front end.
//!
//! [`run`] takes the argument vector and two output streams and returns the
//! process exit code: 0 on success, 1 when the input is mathematically
//! rejected (validation defects, failed curve selection), 2 on usage or I/O
//! errors.

pub mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use gemtopo::graph::{self, ColoredGraph, LineId, ParseError};
use gemtopo::heegaard::{self, PairPartition, PAIR_PARTITIONS};
use gemtopo::moves;
use gemtopo::subcomplex::{self, Verdict};
use gemtopo::surface::Family;
use gemtopo::trisector::{self, DiagramStatus, TrisectionChoice, TrisectionDiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(
    name = "gem",
    version,
    about = "Topology of colored graphs: bubbles, jackets, Heegaard splittings, trisection diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a .gem file and list its defects.
    Validate(FileJson),
    /// Size, degree and bubble counts.
    Info(FileJson),
    /// Every jacket with its face count and genus.
    Jackets(FileJson),
    /// Topology of every d-bubble and the manifold verdict.
    Manifold(FileJson),
    /// Heegaard splittings of a rank-3 graph.
    Heegaard {
        file: PathBuf,
        /// Color pairs as `ij,kl`; all three partitions when omitted.
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Trisection diagram of a rank-4 graph.
    Trisect {
        file: PathBuf,
        /// Special color.
        #[arg(long)]
        color: usize,
        /// Alpha and beta color pairs as `j1j2,k1k2`.
        #[arg(long)]
        pairs: String,
        /// Write the diagram JSON here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write an SVG rendering here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Print the diagram JSON instead of the summary.
        #[arg(long)]
        json: bool,
    },
    /// Summary of all 15 trisection diagrams.
    TrisectAll(FileJson),
    /// Generate a graph.
    #[command(subcommand)]
    Gen(Gen),
    /// Apply a graph surgery.
    #[command(subcommand)]
    Move(Move),
    /// Render a diagram JSON file as SVG.
    Render {
        diagram: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct FileJson {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// The 2-node graph of rank d.
    Melon { rank: usize },
    /// A uniformly random connected graph.
    Random {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        half: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Move {
    /// Insert a d-dipole on the line `c:b` (color, black node).
    Dipole {
        file: PathBuf,
        #[arg(long)]
        line: String,
    },
    /// Contract the d-dipole `a,abar` (black node, white node).
    Contract {
        file: PathBuf,
        #[arg(long)]
        pair: String,
    },
    /// Connected sum along two lines of the same color.
    Connsum {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        line1: String,
        #[arg(long)]
        line2: String,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Output streams plus the header style.
struct Ctx<'a> {
    out: &'a mut dyn Write,
    ansi: bool,
}

impl Ctx<'_> {
    fn line(&mut self, s: &str) -> Result<()> {
        writeln!(self.out, "{s}").map_err(stdout_err)
    }

    fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<()> {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        self.line(&text)
    }

    fn table(&mut self, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
        for row in rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let fmt_row = |cells: Vec<&str>| {
            let mut s = String::new();
            for (k, (cell, w)) in cells.iter().zip(&width).enumerate() {
                if k + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    s.push_str(&format!("{cell:<w$}  "));
                }
            }
            s
        };
        let head = fmt_row(header.to_vec());
        if self.ansi {
            self.line(&format!("\x1b[1m{head}\x1b[0m"))?;
        } else {
            self.line(&head)?;
        }
        for row in rows {
            self.line(&fmt_row(row.iter().map(String::as_str).collect()))?;
        }
        Ok(())
    }
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

/// Whether tables should use ANSI styling, from `GEM_COLOR` (`never` or
/// `auto`, the default) and whether stdout is a terminal.
pub fn ansi_from_env(stdout_is_terminal: bool) -> bool {
    match std::env::var("GEM_COLOR").as_deref() {
        Ok("never") => false,
        _ => stdout_is_terminal,
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, ansi: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut ctx = Ctx { out, ansi };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "gem: {e}");
            e.code()
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Result<i32> {
    match command {
        Command::Validate(a) => validate(&a, ctx),
        Command::Info(a) => info(&load(&a.file)?, a.json, ctx).map(|_| 0),
        Command::Jackets(a) => jackets(&load(&a.file)?, a.json, ctx).map(|_| 0),
        Command::Manifold(a) => manifold(&load(&a.file)?, a.json, ctx).map(|_| 0),
        Command::Heegaard { file, pairs, json } => {
            heegaard_cmd(&load(&file)?, pairs.as_deref(), json, ctx).map(|_| 0)
        }
        Command::Trisect {
            file,
            color,
            pairs,
            out,
            svg,
            json,
        } => {
            let g = load(&file)?;
            let (a, b) = parse_pairs(&pairs)?;
            let choice =
                TrisectionChoice::new(color, a, b).map_err(|e| CliError::Usage(e.to_string()))?;
            trisect_cmd(&g, choice, out.as_deref(), svg.as_deref(), json, ctx)
        }
        Command::TrisectAll(a) => trisect_all(&load(&a.file)?, a.json, ctx),
        Command::Gen(g) => {
            let graph = match g {
                Gen::Melon { rank } => {
                    graph::generate_melon(rank).map_err(|e| CliError::Usage(e.to_string()))?
                }
                Gen::Random { rank, half, seed } => {
                    if rank < 2 || half == 0 {
                        return Err(CliError::Usage(
                            "random graphs need rank >= 2 and half >= 1".into(),
                        ));
                    }
                    graph::random_connected(rank, half, &mut ChaCha8Rng::seed_from_u64(seed))
                }
            };
            write!(ctx.out, "{}", graph::serialize(&graph)).map_err(stdout_err)?;
            Ok(0)
        }
        Command::Move(m) => {
            let graph = match m {
                Move::Dipole { file, line } => {
                    let g = load(&file)?;
                    moves::insert_dipole(&g, parse_line(&line)?)
                }
                Move::Contract { file, pair } => {
                    let g = load(&file)?;
                    let (a, abar) = parse_node_pair(&pair)?;
                    moves::contract_dipole(&g, a, abar)
                }
                Move::Connsum {
                    first,
                    second,
                    line1,
                    line2,
                } => {
                    let (g1, g2) = (load(&first)?, load(&second)?);
                    moves::connected_sum(&g1, &g2, parse_line(&line1)?, parse_line(&line2)?)
                }
            }
            .map_err(|e| CliError::Domain(e.to_string()))?;
            write!(ctx.out, "{}", graph::serialize(&graph)).map_err(stdout_err)?;
            Ok(0)
        }
        Command::Render { diagram, out } => {
            let text = read(&diagram)?;
            let doc: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", diagram.display())))?;
            let svg = render::render(&doc)
                .map_err(|e| CliError::Usage(format!("{}: {e}", diagram.display())))?;
            emit(out.as_deref(), &svg, ctx)?;
            Ok(0)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(path: Option<&Path>, contents: &str, ctx: &mut Ctx) -> Result<()> {
    match path {
        Some(p) => write_file(p, contents),
        None => write!(ctx.out, "{contents}").map_err(stdout_err),
    }
}

fn load(path: &Path) -> Result<ColoredGraph> {
    let g = graph::parse(&read(path)?)
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    graph::require_valid(&g).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    Ok(g)
}

fn digit(c: char) -> Result<usize> {
    c.to_digit(10)
        .map(|d| d as usize)
        .ok_or_else(|| CliError::Usage(format!("`{c}` is not a color")))
}

/// `ij,kl` into two color pairs.
fn parse_pairs(s: &str) -> Result<PairPartition> {
    let bad = || CliError::Usage(format!("expected pairs as `ij,kl`, found `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let pair = |p: &str| -> Result<[usize; 2]> {
        let cs: Vec<char> = p.trim().chars().collect();
        match cs[..] {
            [x, y] => Ok([digit(x)?, digit(y)?]),
            _ => Err(bad()),
        }
    };
    Ok((pair(a)?, pair(b)?))
}

/// `c:b` with a 1-based black node.
fn parse_line(s: &str) -> Result<LineId> {
    let bad = || CliError::Usage(format!("expected a line as `color:black`, found `{s}`"));
    let (c, b) = s.split_once(':').ok_or_else(bad)?;
    let color: usize = c.trim().parse().map_err(|_| bad())?;
    let black: usize = b.trim().parse().map_err(|_| bad())?;
    if black == 0 {
        return Err(bad());
    }
    Ok(LineId {
        color,
        black: black - 1,
    })
}

/// `a,abar` as 1-based node numbers.
fn parse_node_pair(s: &str) -> Result<(usize, usize)> {
    let bad = || CliError::Usage(format!("expected nodes as `a,abar`, found `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let a: usize = a
        .trim()
        .trim_start_matches('+')
        .parse()
        .map_err(|_| bad())?;
    let b: usize = b
        .trim()
        .trim_start_matches('-')
        .parse()
        .map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a - 1, b - 1))
}

fn validate(a: &FileJson, ctx: &mut Ctx) -> Result<i32> {
    let text = read(&a.file)?;
    let defects: Vec<(String, String)> = match graph::parse(&text) {
        Ok(g) => graph::validate(&g)
            .defects
            .iter()
            .map(|d| (d.kind().to_string(), d.to_string()))
            .collect(),
        Err(e) => vec![(parse_kind(&e).to_string(), e.to_string())],
    };
    if a.json {
        let list: Vec<_> = defects
            .iter()
            .map(|(k, m)| json!({"kind": k, "message": m}))
            .collect();
        ctx.json(&json!({"valid": defects.is_empty(), "defects": list}))?;
    } else if defects.is_empty() {
        ctx.line("valid")?;
    } else {
        for (kind, message) in &defects {
            ctx.line(&format!("{kind}: {message}"))?;
        }
    }
    Ok(if defects.is_empty() { 0 } else { 1 })
}

fn parse_kind(e: &ParseError) -> &'static str {
    match e {
        ParseError::Syntax { .. } => "Syntax",
        ParseError::OutOfRange { .. } => "OutOfRange",
        ParseError::DuplicateLine { .. } => "DuplicateLine",
        ParseError::MissingLine { .. } => "MissingLine",
        ParseError::Semantic(d) => d.kind(),
    }
}

fn verdict_name(v: Verdict) -> String {
    match v {
        Verdict::CertifiedSphere => "sphere".into(),
        Verdict::Surface { genus } => format!("surface g={genus}"),
        Verdict::Unknown => "unknown".into(),
    }
}

fn info(g: &ColoredGraph, as_json: bool, ctx: &mut Ctx) -> Result<()> {
    let topology = subcomplex::classify_graph(g);
    let counts: Vec<usize> = g
        .colors()
        .map(|c| {
            subcomplex::bubbles(g, &graph::complement(g, &[c]))
                .expect("rank >= 2")
                .len()
        })
        .collect();
    if as_json {
        return ctx.json(&json!({
            "rank": g.rank(),
            "half": g.half_size(),
            "nodes": g.node_count(),
            "lines": g.line_count(),
            "topology": topology,
            "bubble_counts": counts,
        }));
    }
    ctx.line(&format!("rank     {}", g.rank()))?;
    ctx.line(&format!(
        "nodes    {} ({} per side)",
        g.node_count(),
        g.half_size()
    ))?;
    ctx.line(&format!("lines    {}", g.line_count()))?;
    ctx.line(&format!("degree   {}", topology.degree))?;
    ctx.line(&format!("verdict  {}", verdict_name(topology.verdict)))?;
    let counts: Vec<String> = counts
        .iter()
        .enumerate()
        .map(|(c, k)| format!("{c}^:{k}"))
        .collect();
    ctx.line(&format!("bubbles  {}", counts.join(" ")))
}

fn order_string(order: &[usize]) -> String {
    order.iter().map(ToString::to_string).collect()
}

fn jackets(g: &ColoredGraph, as_json: bool, ctx: &mut Ctx) -> Result<()> {
    let js = subcomplex::jackets(g);
    let degree: usize = js.iter().map(|j| j.genus).sum();
    if as_json {
        let list: Vec<_> = js
            .iter()
            .map(|j| json!({"order": j.order, "faces": j.faces.len(), "genus": j.genus}))
            .collect();
        return ctx.json(&json!({"jackets": list, "degree": degree}));
    }
    let rows: Vec<Vec<String>> = js
        .iter()
        .map(|j| {
            vec![
                order_string(&j.order),
                j.faces.len().to_string(),
                j.genus.to_string(),
            ]
        })
        .collect();
    ctx.table(&["order", "faces", "genus"], &rows)?;
    ctx.line(&format!("degree {degree}"))
}

fn manifold(g: &ColoredGraph, as_json: bool, ctx: &mut Ctx) -> Result<()> {
    let report = subcomplex::manifold_report(g);
    let quasi = (g.rank() == 4).then(|| trisector::quasi_check(g).expect("validated rank-4 graph"));
    if as_json {
        let mut doc = serde_json::to_value(&report).expect("serializable");
        if let Some(q) = &quasi {
            doc["quasi"] = serde_json::to_value(q).expect("serializable");
        }
        return ctx.json(&doc);
    }
    ctx.line(&format!("verdict {:?}", report.verdict))?;
    let rows: Vec<Vec<String>> = report
        .bubbles
        .iter()
        .map(|b| {
            vec![
                format!("{}^", b.missing_color),
                (b.index + 1).to_string(),
                b.nodes.to_string(),
                verdict_name(b.topology.verdict),
                b.topology.degree.to_string(),
                match b.links_certified {
                    Some(true) => "yes".into(),
                    Some(false) => "no".into(),
                    None => "-".into(),
                },
            ]
        })
        .collect();
    ctx.table(
        &["bubble", "index", "nodes", "topology", "degree", "links"],
        &rows,
    )?;
    if let Some(q) = quasi {
        for e in q {
            ctx.line(&format!("special {}: {:?}", e.special, e.class))?;
        }
    }
    Ok(())
}

fn heegaard_cmd(g: &ColoredGraph, pairs: Option<&str>, as_json: bool, ctx: &mut Ctx) -> Result<()> {
    let partitions = match pairs {
        Some(p) => vec![parse_pairs(p)?],
        None => PAIR_PARTITIONS.to_vec(),
    };
    let mut data = Vec::new();
    for p in partitions {
        data.push(heegaard::heegaard_split(g, p).map_err(|e| match e {
            heegaard::HeegaardError::BadPairPartition(..) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        })?);
    }
    if as_json {
        return ctx.json(&data);
    }
    let rows: Vec<Vec<String>> = data
        .iter()
        .map(|h| {
            vec![
                format!(
                    "{}{},{}{}",
                    h.pairs.0[0], h.pairs.0[1], h.pairs.1[0], h.pairs.1[1]
                ),
                order_string(&h.jacket_order),
                h.jacket_faces.to_string(),
                h.genus_sigma.to_string(),
                h.alpha_candidates.len().to_string(),
                h.beta_candidates.len().to_string(),
                h.skeleton_genus.to_string(),
                h.comparison.to_string(),
            ]
        })
        .collect();
    ctx.table(
        &[
            "pairs",
            "jacket",
            "faces",
            "g_sigma",
            "alpha",
            "beta",
            "skeleton",
            "difference",
        ],
        &rows,
    )
}

fn status_name(s: &DiagramStatus) -> &'static str {
    match s {
        DiagramStatus::Trisection => "Trisection",
        DiagramStatus::QuasiTrisection { .. } => "QuasiTrisection",
        DiagramStatus::Uncertified { .. } => "Uncertified",
    }
}

/// `genus 1; L=1; bubbles: 1 (g=0); status Trisection`
pub fn summary_line(d: &TrisectionDiagram) -> String {
    let genera: Vec<String> = d.bubble_genera.iter().map(ToString::to_string).collect();
    format!(
        "genus {}; L={}; bubbles: {} (g={}); status {}",
        d.genus,
        d.loop_rank,
        d.bubble_genera.len(),
        genera.join(","),
        status_name(&d.status)
    )
}

fn family_counts(d: &TrisectionDiagram, f: Family) -> String {
    format!("{}/{}", d.selected(f).count(), d.candidates(f).count())
}

fn trisect_cmd(
    g: &ColoredGraph,
    choice: TrisectionChoice,
    out: Option<&Path>,
    svg: Option<&Path>,
    as_json: bool,
    ctx: &mut Ctx,
) -> Result<i32> {
    let d = trisector::trisect(g, choice).map_err(|e| CliError::Domain(e.to_string()))?;
    let doc = serde_json::to_value(&d).expect("serializable");
    let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    if let Some(p) = out {
        write_file(p, &text)?;
    }
    if let Some(p) = svg {
        let picture = render::render(&doc).expect("diagram JSON matches the renderer");
        write_file(p, &picture)?;
    }
    if as_json {
        write!(ctx.out, "{text}").map_err(stdout_err)?;
    } else {
        ctx.line(&summary_line(&d))?;
        for f in Family::ALL {
            ctx.line(&format!("{:<6}{} selected", f.name(), family_counts(&d, f)))?;
        }
        for fail in &d.failures {
            ctx.line(&format!(
                "selection failed: {} spans {} of {}",
                fail.family.name(),
                fail.achieved,
                fail.target
            ))?;
        }
    }
    Ok(if d.failures.is_empty() { 0 } else { 1 })
}

fn trisect_all(g: &ColoredGraph, as_json: bool, ctx: &mut Ctx) -> Result<i32> {
    let all = trisector::enumerate_all(g).map_err(|e| CliError::Domain(e.to_string()))?;
    let failed = all.iter().any(|d| !d.failures.is_empty());
    if as_json {
        let list: Vec<_> = all
            .iter()
            .map(|d| {
                json!({
                    "choice": d.choice,
                    "genus": d.genus,
                    "bubble_genera": d.bubble_genera,
                    "L": d.loop_rank,
                    "status": d.status,
                    "failures": d.failures,
                })
            })
            .collect();
        ctx.json(&list)?;
    } else {
        let rows: Vec<Vec<String>> = all
            .iter()
            .map(|d| {
                let c = d.choice;
                vec![
                    c.special.to_string(),
                    format!("{}{}", c.alpha_pair[0], c.alpha_pair[1]),
                    format!("{}{}", c.beta_pair[0], c.beta_pair[1]),
                    d.genus.to_string(),
                    d.loop_rank.to_string(),
                    family_counts(d, Family::Alpha),
                    family_counts(d, Family::Beta),
                    family_counts(d, Family::Gamma),
                    status_name(&d.status).to_string(),
                ]
            })
            .collect();
        ctx.table(
            &["c", "alpha", "beta", "genus", "L", "a", "b", "g", "status"],
            &rows,
        )?;
    }
    Ok(if failed { 1 } else { 0 })
}
