//! CSV and Markdown rendering of experiment results.

use std::fmt::Write as _;

use crate::experiment::{ExperimentConfig, ResultRow};
use crate::reference::{self, ReferenceRow, TRANSCRIBED_LABEL};

/// `n,error,nco` with full round-trip precision; `nco` is empty on the first row.
pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from("n,error,nco\n");
    for r in rows {
        let order = r.nco.map(|v| v.to_string()).unwrap_or_default();
        writeln!(out, "{},{:e},{}", r.n, r.error, order).expect("writing to a String");
    }
    out
}

/// Six significant digits.
pub fn sig6(x: f64) -> String {
    format!("{x:.5e}")
}

fn published_cells(rows: &[ReferenceRow], n: usize) -> [String; 2] {
    match rows.iter().find(|r| r.n == n) {
        Some(r) => [sig6(r.error), r.nco.map(|v| format!("{v:.5}")).unwrap_or_default()],
        None => [String::new(), String::new()],
    }
}

/// Markdown table of the computed rows. When the configuration matches a
/// published table, the published columns are appended and marked as such.
pub fn to_markdown(config: &ExperimentConfig, rows: &[ResultRow]) -> String {
    let published = (config.interval == [0.0, 1.0] && config.phi.to_string() == "alternating:3,4")
        .then(|| reference::lookup(config.kind, config.function))
        .flatten();
    let mut header = vec!["n".to_string(), "E_n".into(), "NCO".into()];
    if let Some(table) = published {
        header.extend(["published E_n".into(), "published NCO".into()]);
        for c in table.comparisons {
            header.extend([format!("{} E_n", c.label), format!("{} NCO", c.label)]);
        }
    }
    let mut out = format!(
        "{} quasi-interpolant of {} on [{}, {}], phi {}, {} samples\n\n",
        config.kind, config.function, config.interval[0], config.interval[1], config.phi, config.samples
    );
    writeln!(out, "| {} |", header.join(" | ")).expect("writing to a String");
    writeln!(out, "|{}", "---|".repeat(header.len())).expect("writing to a String");
    for r in rows {
        let mut cells = vec![r.n.to_string(), sig6(r.error), r.nco.map(|v| format!("{v:.5}")).unwrap_or_default()];
        if let Some(table) = published {
            cells.extend(published_cells(table.rows, r.n));
            for c in table.comparisons {
                cells.extend(published_cells(c.rows, r.n));
            }
        }
        writeln!(out, "| {} |", cells.join(" | ")).expect("writing to a String");
    }
    if published.is_some() {
        writeln!(out, "\nColumns prefixed \"published\" or \"comparison\": {TRANSCRIBED_LABEL}.").expect("writing to a String");
    }
    out
}
