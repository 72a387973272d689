//! `shufsc`: command-line front end for the shuffle state-complexity toolkit.
//!
//! Exit status: 0 on success, 1 for rejected input, 2 when a size guard stops
//! a computation, 3 when a conjecture check fails.

mod render;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use shufsc::conjecture::{self, Conjecture, Status};
use shufsc::enumeration::{
    closed_form_coeffs, lower_bound_ie, matrix_s, r_total, series_closed, series_direct,
    succ_count, succ_count_oracle, succ_oracle_vectors,
};
use shufsc::monster::{f_bound, reachable_tableaux, state_complexity_shuffle};
use shufsc::upair::{generate_graded, unfold_path, witness_full, witness_permutation, Side};
use shufsc::{Error, Guard, Tableau, Transformation};

use render::{big, csv_header, csv_line, Format};

#[derive(Parser)]
#[command(
    name = "shufsc",
    version,
    about = "State complexity of the shuffle product"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the result to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,

    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(flatten)]
    guard: GuardArgs,
}

/// Size guards; each flag raises (or lowers) one default limit.
#[derive(Args)]
struct GuardArgs {
    /// Largest m·n for a full reachability closure.
    #[arg(long, global = true)]
    max_cells: Option<usize>,
    /// Largest graded component that may be listed.
    #[arg(long, global = true)]
    max_graded: Option<usize>,
    /// Largest number of maps tried by the successor oracle.
    #[arg(long, global = true)]
    max_oracle_maps: Option<u64>,
    /// Largest series order.
    #[arg(long, global = true)]
    max_series_order: Option<usize>,
    /// Largest permutation size for the witness sweep.
    #[arg(long, global = true)]
    max_permutation_n: Option<usize>,
}

impl GuardArgs {
    fn guard(&self) -> Guard {
        let mut g = Guard::default();
        if let Some(v) = self.max_cells {
            g.max_cells = v;
        }
        if let Some(v) = self.max_graded {
            g.max_graded = v;
        }
        if let Some(v) = self.max_oracle_maps {
            g.max_oracle_maps = v;
        }
        if let Some(v) = self.max_series_order {
            g.max_series_order = v;
        }
        if let Some(v) = self.max_permutation_n {
            g.max_permutation_n = v;
        }
        g
    }
}

#[derive(Subcommand)]
enum Command {
    /// Number of valid m×n tableaux, f(m, n).
    Bound { m: usize, n: usize },
    /// Tableaux reachable from {(0,0)}, with their depths.
    Reach {
        m: usize,
        n: usize,
        /// Stop after this many steps.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Exact state complexity of the shuffle and every maximizing pair of final sets.
    Sc { m: usize, n: usize },
    /// The graded component of valid vectors of length n and grade k.
    Graded {
        n: usize,
        k: u32,
        /// Left-valid vectors instead of right-valid ones.
        #[arg(long)]
        left: bool,
        /// Print only the counts by number of nonempty parts.
        #[arg(long)]
        count: bool,
    },
    /// The successor-count matrix S_n, or a power of it.
    Matrix {
        n: usize,
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
    /// Sizes of the graded components for k = 0..=kmax.
    Sequence { n: usize, kmax: usize },
    /// Coefficients a_i with #R_n^(k) = Σ a_i (i^i)^k.
    Coeffs { n: usize },
    /// Generating series of the B coefficients up to y-order d.
    Series { d: usize },
    /// Number of successors with l+delta nonempty parts of a vector with l.
    Succ {
        n: usize,
        l: usize,
        delta: usize,
        /// Also count by brute force.
        #[arg(long)]
        oracle: bool,
    },
    /// Check that reachable tableaux are the valid ones (or, with --dense, that dense ones are reachable).
    Conjecture {
        m: usize,
        n: usize,
        #[arg(long)]
        dense: bool,
        /// Stop the search after this many steps.
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Vector pairs for permutation and full tableaux.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Inclusion–exclusion count of tableaux with a full row and a full column.
    LowerBound { m: usize, n: usize },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Pair for the permutation tableau of σ, given as n and 0-based images, e.g. `5 2,0,1,4,3`.
    Perm { n: usize, sigma: String },
    /// Pair for the full m×n tableau.
    Full { m: usize, n: usize },
    /// Check every permutation witness of size n and the full m×n witness.
    Verify { m: usize, n: usize },
}

/// Failure of a command, carrying its exit status.
enum Failure {
    Lib(Error),
    Io(io::Error),
    Conjecture(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let (text, failure) = match run(&cli) {
        Ok(text) => (Some(text), None),
        Err(Failure::Conjecture(text)) => (Some(text), Some(3)),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            let code = if matches!(e, Error::GuardExceeded { .. }) {
                2
            } else {
                1
            };
            (None, Some(code))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            (None, Some(1))
        }
    };
    if let Some(text) = text {
        if let Err(e) = emit(&cli, &text) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(failure.unwrap_or(0))
}

fn emit(cli: &Cli, text: &str) -> io::Result<()> {
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let guard = cli.guard.guard();
    let fmt = cli.format;
    let out = match &cli.command {
        Command::Bound { m, n } => {
            let f = f_bound(*m, *n)?;
            fmt.render(
                || format!("{f}\n"),
                || csv_header(&["m", "n", "f"]) + &csv_line(&[m, n, &f]),
                || json!({"m": m, "n": n, "f": big(&f)}),
            )
        }
        Command::Reach { m, n, depth } => {
            let reach = reachable_tableaux(*m, *n, *depth, &guard)?;
            let all = reach.tableaux();
            fmt.render(
                || render::reach_text(&reach),
                || {
                    let mut s = csv_header(&["depth", "cells"]);
                    for (t, d) in &all {
                        s += &csv_line(&[d as &dyn std::fmt::Display, &render::cells(t)]);
                    }
                    s
                },
                || {
                    json!({
                        "m": m, "n": n,
                        "complete": reach.is_complete(),
                        "count": reach.len(),
                        "depth_histogram": reach.depth_histogram(),
                        "tableaux": all.iter().map(|(t, d)| json!({"depth": d, "cells": t})).collect::<Vec<_>>(),
                    })
                },
            )
        }
        Command::Sc { m, n } => {
            let sc = state_complexity_shuffle(*m, *n, &guard)?;
            fmt.render(
                || {
                    let mut s = format!(
                        "sc({m},{n}) = {}\nreachable states: {}\nmaximizing final sets: {}\n",
                        sc.value,
                        sc.reachable,
                        sc.maximizers.len()
                    );
                    for p in &sc.maximizers {
                        s += &format!("  F1={:?} F2={:?}\n", p.left, p.right);
                    }
                    s
                },
                || {
                    let mut s = csv_header(&["m", "n", "value", "reachable", "F1", "F2"]);
                    for p in &sc.maximizers {
                        s += &csv_line(&[
                            m,
                            n,
                            &sc.value,
                            &sc.reachable,
                            &render::list(&p.left),
                            &render::list(&p.right),
                        ]);
                    }
                    s
                },
                || serde_json::to_value(&sc).expect("serializable"),
            )
        }
        Command::Graded { n, k, left, count } => {
            let side = if *left { Side::Left } else { Side::Right };
            let vectors = generate_graded(*n, *k, side, &guard)?;
            let mut by_support = vec![0u64; n + 1];
            for v in &vectors {
                by_support[v.support()] += 1;
            }
            if *count {
                fmt.render(
                    || {
                        let mut s = format!("total {}\n", vectors.len());
                        for (l, c) in by_support.iter().enumerate().skip(1) {
                            s += &format!("{l} parts: {c}\n");
                        }
                        s
                    },
                    || {
                        let mut s = csv_header(&["parts", "count"]);
                        for (l, c) in by_support.iter().enumerate().skip(1) {
                            s += &csv_line(&[&l as &dyn std::fmt::Display, c]);
                        }
                        s
                    },
                    || json!({"n": n, "k": k, "total": vectors.len(), "by_parts": &by_support[1..]}),
                )
            } else {
                fmt.render(
                    || vectors.iter().map(|v| format!("{v}\n")).collect(),
                    || {
                        let mut s = csv_header(&["vector", "parts"]);
                        for v in &vectors {
                            s += &csv_line(&[v as &dyn std::fmt::Display, &v.support()]);
                        }
                        s
                    },
                    || serde_json::to_value(&vectors).expect("serializable"),
                )
            }
        }
        Command::Matrix { n, power } => {
            if *n == 0 {
                return Err(Error::InvalidInput("n must be positive".into()).into());
            }
            let s = matrix_s(*n).pow(*power)?;
            let header: Vec<String> = (1..=*n).map(|j| format!("c{j}")).collect();
            fmt.render(
                || s.to_string(),
                || header.join(",") + "\n" + &s.to_csv(),
                || serde_json::to_value(&s).expect("serializable"),
            )
        }
        Command::Sequence { n, kmax } => {
            if *n == 0 {
                return Err(Error::InvalidInput("n must be positive".into()).into());
            }
            let values: Vec<_> = (0..=*kmax).map(|k| r_total(*n, k)).collect();
            fmt.render(
                || {
                    values
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                        + "\n"
                },
                || {
                    let mut s = csv_header(&["k", "count"]);
                    for (k, v) in values.iter().enumerate() {
                        s += &csv_line(&[&k as &dyn std::fmt::Display, v]);
                    }
                    s
                },
                || json!(values.iter().map(big).collect::<Vec<_>>()),
            )
        }
        Command::Coeffs { n } => {
            let coeffs = closed_form_coeffs(*n)?;
            fmt.render(
                || {
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, a)| format!("a_{} = {a}\n", i + 1))
                        .collect()
                },
                || {
                    let mut s = csv_header(&["i", "coefficient"]);
                    for (i, a) in coeffs.iter().enumerate() {
                        s += &csv_line(&[&(i + 1) as &dyn std::fmt::Display, a]);
                    }
                    s
                },
                || json!(coeffs.iter().map(ToString::to_string).collect::<Vec<_>>()),
            )
        }
        Command::Series { d } => {
            let direct = series_direct(*d, &guard)?;
            let closed = series_closed(*d, &guard)?;
            let agree = direct == closed;
            fmt.render(
                || {
                    let mut s = format!("closed form agrees with the direct sum: {agree}\n");
                    for b in 0..=*d {
                        s += &format!("y^{b}: {}\n", render::polynomial(&direct.y_block(b)));
                    }
                    s
                },
                || {
                    let mut s = csv_header(&["x", "y", "coefficient"]);
                    for ((a, b), c) in direct.terms() {
                        if b <= *d {
                            s += &csv_line(&[&a as &dyn std::fmt::Display, &b, &c]);
                        }
                    }
                    s
                },
                || json!({"d": d, "degree": direct.degree(), "agree": agree, "coefficients": direct}),
            )
        }
        Command::Succ {
            n,
            l,
            delta,
            oracle,
        } => {
            let formula = succ_count(*n, *l, *delta);
            let brute = if *oracle {
                let vectors = succ_oracle_vectors(*n, *l, *delta, &guard)?;
                debug_assert_eq!(
                    succ_count_oracle(*n, *l, *delta, &guard)?,
                    vectors.len().into()
                );
                // successors grouped by the set of parts that became nonempty
                let mut groups = std::collections::BTreeMap::<Vec<usize>, u64>::new();
                for v in &vectors {
                    let fresh: Vec<usize> = (*l..*n).filter(|&i| !v.part(i).is_empty()).collect();
                    *groups.entry(fresh).or_default() += 1;
                }
                Some((vectors.len(), groups))
            } else {
                None
            };
            fmt.render(
                || {
                    let mut s = format!("{formula}\n");
                    if let Some((count, groups)) = &brute {
                        s += &format!("oracle: {count}\n");
                        for (fresh, c) in groups {
                            s += &format!("  new parts {}: {c}\n", render::list(fresh));
                        }
                    }
                    s
                },
                || {
                    let mut s = csv_header(&["n", "l", "delta", "formula", "oracle"]);
                    let o = brute.as_ref().map_or(String::new(), |(c, _)| c.to_string());
                    s += &csv_line(&[n, l, delta, &formula, &o]);
                    s
                },
                || {
                    let mut v = json!({"n": n, "l": l, "delta": delta, "formula": big(&formula)});
                    if let Some((count, groups)) = &brute {
                        v["oracle"] = json!(count);
                        v["oracle_by_new_parts"] = groups
                            .iter()
                            .map(|(fresh, c)| json!({"parts": fresh, "count": c}))
                            .collect();
                    }
                    v
                },
            )
        }
        Command::Conjecture { m, n, dense, depth } => {
            let which = if *dense {
                Conjecture::DenseReachable
            } else {
                Conjecture::ValidReachable
            };
            let report = conjecture::check(which, *m, *n, *depth, &guard)?;
            let text = fmt.render(
                || render::conjecture_text(&report),
                || {
                    let mut s = csv_header(&[
                        "m",
                        "n",
                        "reachable",
                        "valid",
                        "missing",
                        "dense",
                        "dense_unreached",
                        "depth",
                        "status",
                    ]);
                    let dense = report.dense_count.map_or(String::new(), |d| d.to_string());
                    s += &csv_line(&[
                        m,
                        n,
                        &report.reachable_count,
                        &report.valid_count,
                        &report.missing.len(),
                        &dense,
                        &report.dense_unreached.len(),
                        &report.saturation_depth,
                        &render::status(report.status),
                    ]);
                    s
                },
                || serde_json::to_value(&report).expect("serializable"),
            );
            if report.status == Status::Fails {
                return Err(Failure::Conjecture(text));
            }
            text
        }
        Command::Witness(cmd) => witness(cmd, fmt, &guard)?,
        Command::LowerBound { m, n } => {
            let v = lower_bound_ie(*m, *n)?;
            fmt.render(
                || format!("{v}\n"),
                || csv_header(&["m", "n", "lower_bound"]) + &csv_line(&[m, n, &v]),
                || json!({"m": m, "n": n, "lower_bound": big(&v)}),
            )
        }
    };
    Ok(out)
}

fn witness(cmd: &WitnessCommand, fmt: Format, guard: &Guard) -> Result<String, Failure> {
    let (pair, target) = match cmd {
        WitnessCommand::Perm { n, sigma } => {
            let images = sigma
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("permutation {sigma:?}: {e}")))?;
            if images.len() != *n {
                return Err(Error::SizeMismatch {
                    expected: *n,
                    found: images.len(),
                }
                .into());
            }
            let sigma = Transformation::new(images)?;
            let pair = witness_permutation(&sigma)?;
            (
                pair,
                Tableau::from_cells(*n, *n, (0..*n).map(|i| (i, sigma.apply(i))))?,
            )
        }
        WitnessCommand::Full { m, n } => (witness_full(*m, *n, guard)?, Tableau::full(*m, *n)?),
        WitnessCommand::Verify { m, n } => {
            let report = conjecture::verify_witnesses(*m, *n, guard)?;
            let text = fmt.render(
                || render::witness_report_text(&report),
                || {
                    let mut s = csv_header(&[
                        "kind",
                        "label",
                        "grade",
                        "expected_grade",
                        "depth",
                        "expected_depth",
                        "pass",
                    ]);
                    for c in &report.checks {
                        let opt = |x: Option<u32>| x.map_or(String::new(), |d| d.to_string());
                        s += &csv_line(&[
                            &render::kind(c.kind),
                            &c.label,
                            &c.grade,
                            &c.expected_grade,
                            &opt(c.depth),
                            &opt(c.expected_depth),
                            &c.pass,
                        ]);
                    }
                    s
                },
                || serde_json::to_value(&report).expect("serializable"),
            );
            if !report.all_pass {
                return Err(Failure::Conjecture(text));
            }
            return Ok(text);
        }
    };
    let projection = pair.s_projection()?;
    let letters = unfold_path(&pair)?;
    Ok(fmt.render(
        || {
            format!(
                "grade {}\nleft  {}\nright {}\nprojection matches target: {}\n{}path:\n{}",
                pair.grade(),
                pair.left(),
                pair.right(),
                projection == target,
                projection.grid(),
                letters
                    .iter()
                    .map(|l| format!("  {l}\n"))
                    .collect::<String>()
            )
        },
        || {
            csv_header(&["grade", "left", "right", "matches"])
                + &csv_line(&[
                    &pair.grade(),
                    pair.left(),
                    pair.right(),
                    &(projection == target),
                ])
        },
        || {
            json!({
                "pair": pair,
                "projection": projection,
                "matches": projection == target,
                "path": letters.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        },
    ))
}
