//! Rendering of reports as aligned text, JSON, CSV or Markdown.

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

use crate::report::{Report, Status, Tabular};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
    Markdown,
}

pub fn render<T: Serialize + Tabular>(report: &Report<T>, format: Format) -> Result<String> {
    Ok(match format {
        Format::Human => human(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)?;
            s.push('\n');
            s
        }
        Format::Csv => csv_table(report)?,
        Format::Markdown => markdown(report),
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Failed => "FAILED",
    }
}

fn human<T: Tabular>(report: &Report<T>) -> String {
    let cols = T::columns();
    let rows: Vec<Vec<String>> = report.rows.iter().map(Tabular::cells).collect();
    let mut widths: Vec<usize> = cols.iter().map(|c| c.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = format!("{}: {}\n", report.command, status_word(report.status));
    let header: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
    out.push_str(&line(&header));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    for note in &report.notes {
        out.push_str("note: ");
        out.push_str(note);
        out.push('\n');
    }
    out
}

fn csv_table<T: Tabular>(report: &Report<T>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(T::columns())?;
    for row in &report.rows {
        w.write_record(row.cells())?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn markdown<T: Tabular>(report: &Report<T>) -> String {
    let cols = T::columns();
    let mut out = format!(
        "### {} ({})\n\n",
        report.command,
        status_word(report.status)
    );
    out.push_str(&format!("| {} |\n", cols.join(" | ")));
    out.push_str(&format!("|{}\n", "---|".repeat(cols.len())));
    for row in &report.rows {
        let cells: Vec<String> = row.cells().iter().map(|c| c.replace('|', "\\|")).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    if !report.notes.is_empty() {
        out.push('\n');
        for note in &report.notes {
            out.push_str(&format!("- {note}\n"));
        }
    }
    out
}
