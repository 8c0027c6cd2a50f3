use burnside_core::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A command's result in all three output formats.
pub struct Report {
    json: String,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
    text: String,
    /// Nonzero when the command ran but found a failed check.
    pub exit_code: u8,
}

impl Report {
    pub fn new(doc: &impl Serialize) -> Result<Report> {
        let json = serde_json::to_string(doc).map_err(|e| Error::Invariant(format!("serialization failed: {e}")))?;
        Ok(Report { json, header: Vec::new(), rows: Vec::new(), text: String::new(), exit_code: 0 })
    }

    pub fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Report {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn text(mut self, text: String) -> Report {
        self.text = text;
        self
    }

    pub fn failing_if(mut self, failed: bool) -> Report {
        if failed {
            self.exit_code = 1;
        }
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(format!("{}\n", self.json)),
            Format::Text => Ok(if self.text.ends_with('\n') { self.text.clone() } else { format!("{}\n", self.text) }),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Error::Invariant(format!("csv output failed: {e}"));
                w.write_record(&self.header).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Invariant(format!("csv output failed: {e}")))?;
                String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
            }
        }
    }
}
