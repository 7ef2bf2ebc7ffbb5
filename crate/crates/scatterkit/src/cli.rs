//! Command-line front end.
//!
//! Exit codes: 0 success, 2 bad flags (clap), 3 infeasible parameters or a
//! resource guard that --force would lift. Output is deterministic byte for
//! byte so runs can be diffed.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dyck::MaxDyckPath;
use crate::exact::{format_rational, partitions_of, CoeffRing, Partition, PolyBCG, Rational, TruncSeries};
use crate::grading::{choose_dims, lambda_table, tau_count, tight_gradings_on};
use crate::scatter::{circle_diagram, circle_diagram_symbolic, ClusterDiagram, ScatteringDiagram};
use crate::tiling::{analyze, render_ascii, render_svg_gallery, FrameTiling};
use crate::weyl::{
    e_support_shadowed, n_support_shadowed, supports_from_weights, weights_from_supports,
    weyl_map, weyl_map_conjugate,
};

#[derive(Parser)]
#[command(
    name = "scatterkit",
    version,
    about = "Exact wall-function coefficients and tight-grading enumeration"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Worker threads for library internals (default: all cores)
    #[arg(long, global = true, env = "SCATTERKIT_JOBS")]
    jobs: Option<usize>,
    /// Lift resource guards on expensive parameter ranges
    #[arg(long, global = true)]
    force: bool,
    /// Write the result to this file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Complete a scattering diagram and dump its wall functions
    Scatter(ScatterArgs),
    /// Pairwise tight-grading counts over all partition pairs of k
    Lambda(LambdaArgs),
    /// Count tight gradings with rectangular weights (i parts of b, j parts of c)
    Tau(TauArgs),
    /// Footprint tilings certifying each tight grading for a partition pair
    Tilings(TilingsArgs),
    /// Bijection table realizing a reflection symmetry between two blocks
    Weyl(WeylArgs),
}

#[derive(Args)]
struct ScatterArgs {
    /// Vertical seed exponent (omit with --symbolic)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..),
          required_unless_present = "symbolic", conflicts_with = "symbolic")]
    b: Option<u32>,
    /// Horizontal seed exponent (omit with --symbolic)
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..),
          required_unless_present = "symbolic", conflicts_with = "symbolic")]
    c: Option<u32>,
    /// Truncation: keep total (x1, x2)-degree up to this
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    order: u32,
    /// Binomial-line diagram (1+x1)^c, (1+x2)^b carrying rho instead of tau
    #[arg(long)]
    circle: bool,
    /// Keep b and c symbolic; coefficients become polynomials
    #[arg(long, requires = "circle")]
    symbolic: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct LambdaArgs {
    /// Common size of the partitions on both sides
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    k: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TauArgs {
    /// Weight of every vertical part
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    b: u32,
    /// Weight of every horizontal part
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    c: u32,
    /// Number of vertical parts
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    i: u32,
    /// Number of horizontal parts
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    j: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TilingsArgs {
    /// Vertical weight partition, e.g. 3 or 2,1
    #[arg(long, value_parser = parse_partition)]
    p1: Partition,
    /// Horizontal weight partition; see also --p2s-all
    #[arg(long, value_parser = parse_partition, required_unless_present = "p2s_all",
          conflicts_with = "p2s_all")]
    p2: Option<Partition>,
    /// Run over every partition with the same total as --p1
    #[arg(long)]
    p2s_all: bool,
    /// Path dimensions d1,d2 (default: smallest admissible pair)
    #[arg(long, value_parser = parse_dims)]
    dims: Option<(u32, u32)>,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
}

#[derive(Args)]
struct WeylArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    b: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    c: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    i: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    j: u32,
    /// Which reflection: `first` sends (i,j) to (c*j-i, j), `second` to (i, b*i-j)
    #[arg(long, value_enum, default_value_t = Symmetry::First)]
    symmetry: Symmetry,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Symmetry {
    First,
    Second,
}

enum Failure {
    /// Parameters outside the supported or guarded range; exit 3.
    Infeasible(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn infeasible(msg: impl Into<String>) -> Failure {
    Failure::Infeasible(msg.into())
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    let parts = s
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    if parts.is_empty() || parts.contains(&0) {
        return Err("partition parts must be positive".into());
    }
    Ok(Partition::new(parts))
}

fn parse_dims(s: &str) -> Result<(u32, u32), String> {
    let items: Vec<&str> = s.split(',').collect();
    if items.len() != 2 {
        return Err("expected two comma-separated dimensions, e.g. 4,3".into());
    }
    let d1 = items[0].trim().parse::<u32>().map_err(|e| e.to_string())?;
    let d2 = items[1].trim().parse::<u32>().map_err(|e| e.to_string())?;
    if d1 == 0 || d2 == 0 {
        return Err("dimensions must be positive".into());
    }
    Ok((d1, d2))
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.jobs {
        // Ignore failure: tests or a prior call may have sized the pool already.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let result = match &cli.command {
        Cmd::Scatter(a) => cmd_scatter(a, cli.force),
        Cmd::Lambda(a) => cmd_lambda(a, cli.force),
        Cmd::Tau(a) => cmd_tau(a, cli.force),
        Cmd::Tilings(a) => cmd_tilings(a, cli.force),
        Cmd::Weyl(a) => cmd_weyl(a, cli.force),
    };
    match result {
        Ok(text) => match emit(&cli.out, &text) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(Failure::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            3
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn pretty_json(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json");
    s.push('\n');
    s
}

fn cmd_lambda(args: &LambdaArgs, force: bool) -> Result<String, Failure> {
    if args.k > 6 && !force {
        return Err(infeasible(format!(
            "k={} exceeds the default cap of 6 (the table has p(k)^2 cells, each an \
             enumeration); pass --force to run anyway",
            args.k
        )));
    }
    let parts = partitions_of(args.k);
    let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
    let table = lambda_table(args.k);
    Ok(match args.format {
        Format::Json => pretty_json(json!({
            "schema": 1,
            "kind": "lambda_table",
            "k": args.k,
            "partitions": names,
            "values": table,
        })),
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&format!("p1\\p2,{}\n", names.join(",")));
            for (name, row) in names.iter().zip(&table) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("{name},{}\n", cells.join(",")));
            }
            out
        }
        Format::Text => {
            let mut widths: Vec<usize> = names.iter().map(|n| n.len()).collect();
            for row in &table {
                for (w, v) in widths.iter_mut().zip(row) {
                    *w = (*w).max(v.to_string().len());
                }
            }
            let head_w = names.iter().map(|n| n.len()).max().unwrap_or(1);
            let mut out = format!("lambda table, k = {}\n", args.k);
            out.push_str(&" ".repeat(head_w));
            for (name, w) in names.iter().zip(&widths) {
                let _ = write!(out, "  {name:>w$}");
            }
            out.push('\n');
            for (name, row) in names.iter().zip(&table) {
                let _ = write!(out, "{name:>head_w$}");
                for (v, w) in row.iter().zip(&widths) {
                    let _ = write!(out, "  {v:>w$}");
                }
                out.push('\n');
            }
            out
        }
        _ => return Err(infeasible("lambda supports text, json, or csv output")),
    })
}

fn cmd_tau(args: &TauArgs, force: bool) -> Result<String, Failure> {
    let cost = args.b as u64 * args.i as u64 + args.c as u64 * args.j as u64;
    if cost > 28 && !force {
        return Err(infeasible(format!(
            "total weight b*i + c*j = {cost} exceeds the default cap of 28; \
             pass --force to run anyway"
        )));
    }
    let value = tau_count(args.b, args.c, args.i, args.j);
    Ok(match args.format {
        Format::Json => pretty_json(json!({
            "schema": 1,
            "kind": "tau",
            "b": args.b,
            "c": args.c,
            "i": args.i,
            "j": args.j,
            "value": value,
        })),
        Format::Text => format!("{value}\n"),
        _ => return Err(infeasible("tau supports text or json output")),
    })
}

/// One wall prepared for output: each kept coefficient as its series index,
/// JSON value, display string, and whether the display needs parentheses.
struct WallDump {
    direction: (usize, usize),
    line: bool,
    coefficients: Vec<(usize, serde_json::Value, String, bool)>,
}

fn dump_series<R: CoeffRing>(
    s: &TruncSeries<R>,
    render: &dyn Fn(&R) -> (serde_json::Value, String, bool),
) -> Vec<(usize, serde_json::Value, String, bool)> {
    s.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let (value, text, parens) = render(c);
            (k, value, text, parens)
        })
        .collect()
}

fn dump_diagram<R: CoeffRing>(
    d: &ScatteringDiagram<R>,
    render: &dyn Fn(&R) -> (serde_json::Value, String, bool),
) -> Vec<WallDump> {
    let (p1, p2) = d.line_functions();
    let mut walls = vec![
        WallDump {
            direction: (1, 0),
            line: true,
            coefficients: dump_series(p1, render),
        },
        WallDump {
            direction: (0, 1),
            line: true,
            coefficients: dump_series(p2, render),
        },
    ];
    for w in d.rays() {
        walls.push(WallDump {
            direction: w.direction,
            line: false,
            coefficients: dump_series(&w.series, render),
        });
    }
    walls
}

/// x1^a x2^b with unit exponents elided; empty for the constant term.
fn monomial_string(a: usize, b: usize) -> String {
    let mut s = String::new();
    if a == 1 {
        s.push_str("x1");
    } else if a > 1 {
        let _ = write!(s, "x1^{a}");
    }
    if b > 0 {
        if !s.is_empty() {
            s.push(' ');
        }
        if b == 1 {
            s.push_str("x2");
        } else {
            let _ = write!(s, "x2^{b}");
        }
    }
    s
}

fn wall_text(w: &WallDump) -> String {
    let kind = if w.line { "line" } else { "ray" };
    let terms: Vec<String> = w
        .coefficients
        .iter()
        .map(|(k, _, txt, parens)| {
            let mono = monomial_string(k * w.direction.0, k * w.direction.1);
            if mono.is_empty() {
                txt.clone()
            } else if txt == "1" {
                mono
            } else if *parens {
                format!("({txt}) {mono}")
            } else {
                format!("{txt} {mono}")
            }
        })
        .collect();
    format!(
        "{kind} ({},{}): {}\n",
        w.direction.0,
        w.direction.1,
        terms.join(" + ")
    )
}

fn cmd_scatter(args: &ScatterArgs, force: bool) -> Result<String, Failure> {
    let order = args.order as usize;
    let cap = if args.symbolic { 8 } else { 16 };
    if args.order > cap && !force {
        return Err(infeasible(format!(
            "order {} exceeds the default cap of {cap} (completion cost grows steeply \
             with the order); pass --force to run anyway",
            args.order
        )));
    }
    let rat_render = |q: &Rational| (json!(format_rational(q)), format_rational(q), false);
    let poly_render = |p: &PolyBCG| {
        let arr: Vec<serde_json::Value> = p
            .term_list()
            .iter()
            .map(|((db, dc, dg), q)| {
                json!({"db": db, "dc": dc, "dg": dg, "coef": format_rational(q)})
            })
            .collect();
        let text = p.to_string();
        let parens = text.contains([' ', '*']);
        (json!(arr), text, parens)
    };
    let (walls, ring) = if args.symbolic {
        (dump_diagram(&circle_diagram_symbolic(order), &poly_render), "poly_bc")
    } else {
        let (b, c) = (args.b.unwrap(), args.c.unwrap());
        let d = if args.circle {
            circle_diagram(b, c, order)
        } else {
            ClusterDiagram::new(b, c, order).diagram
        };
        (dump_diagram(&d, &rat_render), "rational")
    };
    Ok(match args.format {
        Format::Json => pretty_json(json!({
            "schema": 1,
            "kind": "scatter",
            "ring": ring,
            "circle": args.circle,
            "b": args.b,
            "c": args.c,
            "order": args.order,
            "walls": walls.iter().map(|w| json!({
                "direction": [w.direction.0, w.direction.1],
                "line": w.line,
                "coefficients": w.coefficients.iter().map(|(k, v, _, _)| {
                    json!({"k": k, "value": v})
                }).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = String::new();
            for w in &walls {
                out.push_str(&wall_text(w));
            }
            out
        }
        _ => return Err(infeasible("scatter supports text or json output")),
    })
}

fn cmd_tilings(args: &TilingsArgs, force: bool) -> Result<String, Failure> {
    let p1 = &args.p1;
    let p2s: Vec<Partition> = match &args.p2 {
        Some(p2) => vec![p2.clone()],
        None => partitions_of(p1.size()),
    };
    let p = p1.size() as u64;
    let (d1, d2) = match args.dims {
        Some(dims) => dims,
        None => choose_dims(p, p2s[0].size() as u64, -1),
    };
    let det = p as i64 * d2 as i64 - p2s[0].size() as i64 * d1 as i64;
    let g = gcd_u64(p, p2s[0].size() as u64) as i64;
    if det.abs() != g {
        return Err(infeasible(format!(
            "dims ({d1},{d2}) are inadmissible for weight totals ({p},{}): \
             p*d2 - q*d1 = {det}, need +/-{g}",
            p2s[0].size()
        )));
    }
    if (p + p2s[0].size() as u64) > 24 && !force {
        return Err(infeasible(format!(
            "total weight {} exceeds the default cap of 24; pass --force to run anyway",
            p + p2s[0].size() as u64
        )));
    }
    let path = MaxDyckPath::new(d1, d2);

    struct Entry {
        p2: Partition,
        weights: Vec<u32>,
        frame_index: usize,
    }
    let mut entries: Vec<(Entry, FrameTiling)> = Vec::new();
    for p2 in &p2s {
        for w in tight_gradings_on(&path, p1, p2) {
            let analysis = analyze(&path, &w);
            let idx = analysis
                .frames
                .iter()
                .position(|f| f.certifies())
                .ok_or_else(|| {
                    infeasible(format!(
                        "internal: no frame certifies the tight grading {w:?}; this is a bug"
                    ))
                })?;
            let frame = analysis.frames.into_iter().nth(idx).unwrap();
            entries.push((
                Entry {
                    p2: p2.clone(),
                    weights: w,
                    frame_index: idx,
                },
                frame,
            ));
        }
    }

    Ok(match args.format {
        Format::Svg => {
            let items: Vec<(String, &FrameTiling)> = entries
                .iter()
                .enumerate()
                .map(|(n, (e, f))| (format!("#{} {} | {}", n + 1, p1, e.p2), f))
                .collect();
            render_svg_gallery(&items)
        }
        Format::Ascii | Format::Text => {
            let mut out = format!(
                "tight gradings on the ({d1},{d2}) path, vertical weights {p1}\n"
            );
            for (n, (e, f)) in entries.iter().enumerate() {
                let _ = write!(
                    out,
                    "\n#{} horizontal weights {} | edge weights {:?} | frame {} at ({},{})\n",
                    n + 1,
                    e.p2,
                    e.weights,
                    e.frame_index,
                    f.anchor.0,
                    f.anchor.1
                );
                out.push_str(&render_ascii(f));
            }
            out
        }
        Format::Json => {
            let gradings: Vec<serde_json::Value> = entries
                .iter()
                .map(|(e, f)| {
                    json!({
                        "p2": e.p2.to_string(),
                        "weights": e.weights,
                        "frame": e.frame_index,
                        "anchor": [f.anchor.0, f.anchor.1],
                        "rect": [f.rect.0, f.rect.1, f.rect.2, f.rect.3],
                        "tiles": f.u_tiles.len() + f.v_tiles.len(),
                    })
                })
                .collect();
            pretty_json(json!({
                "schema": 1,
                "kind": "tilings",
                "dims": [d1, d2],
                "p1": p1.to_string(),
                "count": gradings.len(),
                "gradings": gradings,
            }))
        }
        _ => return Err(infeasible("tilings supports svg, ascii, or json output")),
    })
}

fn cmd_weyl(args: &WeylArgs, force: bool) -> Result<String, Failure> {
    let (b, c, i, j) = (args.b, args.c, args.i, args.j);
    let cost = b as u64 * i as u64 + c as u64 * j as u64;
    if cost > 24 && !force {
        return Err(infeasible(format!(
            "total weight b*i + c*j = {cost} exceeds the default cap of 24; \
             pass --force to run anyway"
        )));
    }
    let (image_i, image_j, eps) = match args.symmetry {
        Symmetry::First => {
            if c * j <= i {
                return Err(infeasible(format!(
                    "first symmetry needs c*j > i, got c*j = {} and i = {i}",
                    c * j
                )));
            }
            (c * j - i, j, 1)
        }
        Symmetry::Second => {
            if b * i <= j {
                return Err(infeasible(format!(
                    "second symmetry needs b*i > j, got b*i = {} and j = {j}",
                    b * i
                )));
            }
            (i, b * i - j, -1)
        }
    };
    let (d1, d2) = choose_dims((b * i) as u64, (c * j) as u64, eps);
    let path = MaxDyckPath::new(d1, d2);
    let pt1 = Partition::rectangular(b, i);
    let pt2 = Partition::rectangular(c, j);
    let source = tight_gradings_on(&path, &pt1, &pt2);

    let (image_dims, image_p1, image_p2) = match args.symmetry {
        Symmetry::First => (
            (b * d2 - d1, d2),
            Partition::rectangular(b, image_i),
            pt2.clone(),
        ),
        Symmetry::Second => (
            (d1, c * d1 - d2),
            pt1.clone(),
            Partition::rectangular(c, image_j),
        ),
    };
    let image_path = MaxDyckPath::new(image_dims.0, image_dims.1);
    let image_block = tight_gradings_on(&image_path, &image_p1, &image_p2);
    let image_index: std::collections::BTreeMap<&Vec<u32>, usize> = image_block
        .iter()
        .enumerate()
        .map(|(n, w)| (w, n))
        .collect();

    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(source.len());
    for (n, w) in source.iter().enumerate() {
        let (s_e, s_n) = supports_from_weights(&path, w);
        let (mp, me, mn) = match args.symmetry {
            Symmetry::First => {
                if !e_support_shadowed(&path, b, &s_e, &s_n) {
                    return Err(infeasible(format!(
                        "internal: source grading {w:?} misses the shadow condition; this is a bug"
                    )));
                }
                weyl_map(&path, b, c, &s_e, &s_n)
            }
            Symmetry::Second => {
                if !n_support_shadowed(&path, c, &s_e, &s_n) {
                    return Err(infeasible(format!(
                        "internal: source grading {w:?} misses the shadow condition; this is a bug"
                    )));
                }
                weyl_map_conjugate(&path, b, c, &s_e, &s_n)
            }
        };
        let w2 = weights_from_supports(&mp, b, c, &me, &mn);
        let target = image_index.get(&w2).copied().ok_or_else(|| {
            infeasible(format!(
                "internal: image of grading {w:?} is not a tight grading of the image block; \
                 this is a bug"
            ))
        })?;
        pairs.push((n, target));
    }

    let sym_name = match args.symmetry {
        Symmetry::First => "first",
        Symmetry::Second => "second",
    };
    Ok(match args.format {
        Format::Json => pretty_json(json!({
            "schema": 1,
            "kind": "weyl",
            "symmetry": sym_name,
            "b": b,
            "c": c,
            "source": {"i": i, "j": j, "dims": [d1, d2], "count": source.len()},
            "image": {
                "i": image_i,
                "j": image_j,
                "dims": [image_dims.0, image_dims.1],
                "count": image_block.len(),
            },
            "pairs": pairs.iter().map(|&(s, t)| json!([s, t])).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut out = format!(
                "{sym_name} symmetry, b={b} c={c}: block (i={i}, j={j}) on path ({d1},{d2}) \
                 -> block (i={image_i}, j={image_j}) on path ({},{})\n",
                image_dims.0, image_dims.1
            );
            let _ = writeln!(
                out,
                "{} source gradings, {} image gradings",
                source.len(),
                image_block.len()
            );
            for &(s, t) in &pairs {
                let _ = writeln!(out, "{s} -> {t}");
            }
            out
        }
        _ => return Err(infeasible("weyl supports text or json output")),
    })
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}
