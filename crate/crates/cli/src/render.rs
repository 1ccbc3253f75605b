//! JSON and tab-separated output.

use serde_json::Value;

use crate::config::Format;

/// Rows for the tab-separated view of a report.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Report {
    pub json: Value,
    pub table: Table,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        // serde_json maps are ordered, so keys come out sorted
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = report.table.header.join("\t");
            s.push('\n');
            for row in &report.table.rows {
                let cells: Vec<String> = row.iter().map(|c| c.replace(['\t', '\n'], " ")).collect();
                s.push_str(&cells.join("\t"));
                s.push('\n');
            }
            s
        }
    }
}
