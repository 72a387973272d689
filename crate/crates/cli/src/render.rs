use std::fmt::{self, Display};

use clap::ValueEnum;
use serde_json::Value;
use shufsc::conjecture::{ConjectureReport, Status, WitnessKind, WitnessReport};
use shufsc::monster::Reachability;
use shufsc::Tableau;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    /// Builds only the representation that was asked for.
    pub fn render(
        self,
        text: impl FnOnce() -> String,
        csv: impl FnOnce() -> String,
        json: impl FnOnce() -> Value,
    ) -> String {
        match self {
            Format::Text => text(),
            Format::Csv => csv(),
            Format::Json => serde_json::to_string_pretty(&json()).expect("values serialize") + "\n",
        }
    }
}

/// One CSV record; fields holding commas or quotes are quoted.
pub fn csv_line(fields: &[&dyn Display]) -> String {
    let cells: Vec<String> = fields
        .iter()
        .map(|f| {
            let s = f.to_string();
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        })
        .collect();
    cells.join(",") + "\n"
}

pub fn csv_header(names: &[&str]) -> String {
    names.join(",") + "\n"
}

/// An integer as a JSON number when it fits in `u64`, as a string beyond.
pub fn big(x: &impl Display) -> Value {
    let s = x.to_string();
    s.parse::<u64>().map_or(Value::String(s), Value::from)
}

pub fn list(xs: &[usize]) -> String {
    let items: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

pub fn cells(t: &Tableau) -> String {
    t.cells()
        .map(|(i, j)| format!("({i},{j})"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `c0 + c1·x + …`, skipping zero coefficients.
pub fn polynomial(coeffs: &[impl Display]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .map(|(a, c)| (a, c.to_string()))
        .filter(|(_, c)| c != "0")
        .map(|(a, c)| match a {
            0 => c,
            1 => format!("{c}·x"),
            _ => format!("{c}·x^{a}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn status(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Incomplete => "incomplete",
    }
}

pub fn kind(k: WitnessKind) -> &'static str {
    match k {
        WitnessKind::Permutation => "permutation",
        WitnessKind::Full => "full",
    }
}

struct Grids<'a>(&'a [Tableau]);

impl Display for Grids<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.0 {
            writeln!(f, "{}", t.grid())?;
        }
        Ok(())
    }
}

pub fn reach_text(reach: &Reachability) -> String {
    let mut s = format!(
        "{} tableaux reachable in {}×{}{}\n",
        reach.len(),
        reach.rows(),
        reach.cols(),
        if reach.is_complete() {
            ""
        } else {
            " (search truncated)"
        }
    );
    for (d, count) in reach.depth_histogram() {
        let level: Vec<Tableau> = reach.level(d as usize).collect();
        s += &format!("\ndepth {d}: {count}\n{}", Grids(&level));
    }
    s
}

pub fn conjecture_text(r: &ConjectureReport) -> String {
    let mut s = format!(
        "{}×{}: reachable {} / valid {}, saturation depth {}\n",
        r.m, r.n, r.reachable_count, r.valid_count, r.saturation_depth
    );
    if let Some(d) = r.dense_count {
        s += &format!("dense {d}, unreached {}\n", r.dense_unreached.len());
    }
    s += &format!("status: {}\n", status(r.status));
    if !r.missing.is_empty() {
        s += &format!("\nvalid but unreached:\n{}", Grids(&r.missing));
    }
    if !r.invalid_reached.is_empty() {
        s += &format!("\nreached but invalid:\n{}", Grids(&r.invalid_reached));
    }
    if !r.dense_unreached.is_empty() {
        s += &format!("\ndense but unreached:\n{}", Grids(&r.dense_unreached));
    }
    s
}

pub fn witness_report_text(r: &WitnessReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let depth = c.depth.map_or("?".to_string(), |d| d.to_string());
        let expected = c.expected_depth.map_or("-".to_string(), |d| d.to_string());
        s += &format!(
            "{} {}: grade {} (expected {}), depth {depth} (expected {expected}): {}\n",
            kind(c.kind),
            c.label,
            c.grade,
            c.expected_grade,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    s += &format!("all pass: {}\n", r.all_pass);
    s
}
