//! Knot and link tables: one `name | pd | signature | alternating` row per
//! line, `#` starting a comment.

use super::Diagram;
use crate::error::KhError;

/// Prime knots through ten crossings and oriented links through six,
/// bundled with the crate.
pub const BUNDLED: &str = include_str!("../../../../data/knots_upto10.pd");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub name: String,
    pub pd: String,
    pub signature: i32,
    pub alternating: bool,
}

impl TableEntry {
    pub fn diagram(&self) -> Result<Diagram, KhError> {
        Diagram::parse_pd(&self.pd)
    }
}

pub fn parse_table(text: &str) -> Result<Vec<TableEntry>, KhError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| KhError::Table { line: i + 1, msg: msg.to_string() };
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(err("expected 4 fields"));
        }
        let signature = fields[2].parse().map_err(|_| err("bad signature"))?;
        let alternating = match fields[3] {
            "Y" => true,
            "N" => false,
            _ => return Err(err("alternating flag must be Y or N")),
        };
        out.push(TableEntry { name: fields[0].to_string(), pd: fields[1].to_string(), signature, alternating });
    }
    Ok(out)
}

pub fn bundled_table() -> Vec<TableEntry> {
    parse_table(BUNDLED).expect("bundled table parses")
}
