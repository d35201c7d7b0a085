//! Text tables. Pipe-separated columns, LF line endings, one header line;
//! empty cells print as `-` so every row has the full column count.

use std::fmt::Write;

use crate::doc::{Doc, FamilyDoc, OrderSetDoc, ReportDoc};

pub fn angle_list(values: &[u64]) -> String {
    format!(
        "<{}>",
        values
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

pub fn brace_list(values: &[u64]) -> String {
    format!(
        "{{{}}}",
        values
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn cell(items: &[String], sep: &str) -> String {
    if items.is_empty() {
        "-".to_string()
    } else {
        items.join(sep)
    }
}

/// The order-set table: one row per codimension present in the document.
pub fn ordersets_table(doc: &Doc) -> String {
    let mut out = String::from("tau | order sets | gap sets\n");
    let mut taus: Vec<usize> = doc.order_sets.iter().map(|o| o.codim).collect();
    taus.sort_unstable();
    taus.dedup();
    for tau in taus {
        let row: Vec<&OrderSetDoc> = doc.order_sets.iter().filter(|o| o.codim == tau).collect();
        let gens: Vec<String> = row.iter().map(|o| angle_list(&o.min_gens)).collect();
        let gaps: Vec<String> = row.iter().map(|o| brace_list(&o.gaps)).collect();
        writeln!(out, "{tau} | {} | {}", gens.join(", "), gaps.join(", ")).unwrap();
    }
    out
}

/// The family table: one row per classified family.
pub fn ideals_table(doc: &Doc, families: &[FamilyDoc]) -> String {
    let _ = doc;
    let mut out =
        String::from("tau | order set | generators | solved | residual | free | assumptions\n");
    for f in families {
        writeln!(
            out,
            "{} | {} | ({}) | {} | {} | {} | {}",
            f.order_set.codim,
            angle_list(&f.order_set.min_gens),
            f.generators.join(", "),
            cell(&f.solved_conditions, "; "),
            cell(&f.residual_conditions, "; "),
            cell(&f.free_params, ", "),
            cell(&f.assumptions, ", "),
        )
        .unwrap();
    }
    out
}

/// The verification table: one row per family, with the trial tally.
/// Skipped trials are assignments off a residual condition locus.
pub fn verify_table(doc: &Doc, report: &[ReportDoc]) -> String {
    let _ = doc;
    let mut out = String::from("tau | order set | trials | skipped | mismatches | status\n");
    for r in report {
        let mismatches = r.mismatches();
        writeln!(
            out,
            "{} | {} | {} | {} | {} | {}",
            r.order_set.codim,
            angle_list(&r.order_set.min_gens),
            r.results.len(),
            r.skipped(),
            mismatches,
            if mismatches == 0 { "ok" } else { "FAIL" },
        )
        .unwrap();
    }
    out
}

/// Renders the section the document carries: verification report, family
/// table, or order-set table.
pub fn table(doc: &Doc) -> String {
    if let Some(report) = &doc.report {
        verify_table(doc, report)
    } else if let Some(families) = &doc.families {
        ideals_table(doc, families)
    } else {
        ordersets_table(doc)
    }
}

pub fn json(doc: &Doc) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("document serializes");
    out.push('\n');
    out
}
