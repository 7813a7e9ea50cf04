//! The PD text grammar.
//!
//! ```text
//! pd    := item (';' item)* ('@' label)?
//! item  := 'X(' label ',' label ',' label ',' label ')' | 'U(' count ')'
//! ```
//!
//! Whitespace is ignored. Crossing labels must be exactly `1..=m`, each used
//! twice; `U(k)` adds k crossingless circles labelled after them.

use super::build::{Orient, RawDiagram};
use super::Diagram;
use crate::error::KhError;

pub(crate) fn parse_pd(text: &str) -> Result<Diagram, KhError> {
    let clean: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (body, basepoint) = match clean.rsplit_once('@') {
        Some((b, p)) => {
            let p: u32 = p.parse().map_err(|_| KhError::MalformedPd(format!("bad basepoint '{p}'")))?;
            (b.to_string(), Some(p))
        }
        None => (clean, None),
    };
    let body = body.strip_suffix(';').unwrap_or(&body);
    if body.is_empty() {
        return Err(KhError::MalformedPd("empty diagram".into()));
    }
    let mut tuples = Vec::new();
    let mut loops = 0usize;
    for item in body.split(';') {
        let (head, args) = item
            .split_once('(')
            .and_then(|(h, rest)| rest.strip_suffix(')').map(|a| (h, a)))
            .ok_or_else(|| KhError::MalformedPd(format!("bad item '{item}'")))?;
        let nums: Vec<u32> = args
            .split(',')
            .map(|s| s.parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| KhError::MalformedPd(format!("bad numbers in '{item}'")))?;
        match (head, nums.as_slice()) {
            ("X", &[a, b, c, d]) => {
                if [a, b, c, d].contains(&0) {
                    return Err(KhError::MalformedPd("edge labels start at 1".into()));
                }
                tuples.push([a, b, c, d]);
            }
            ("U", &[k]) => loops += k as usize,
            _ => return Err(KhError::MalformedPd(format!("bad item '{item}'"))),
        }
    }
    if tuples.is_empty() && loops == 0 {
        return Err(KhError::MalformedPd("empty diagram".into()));
    }
    RawDiagram { tuples, loops }.build(Orient::Under, false, basepoint)
}
