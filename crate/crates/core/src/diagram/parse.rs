//! The line-oriented `.kvg` format.
//!
//! ```text
//! # comment
//! V 1 2 3 4    rigid vertex, edge labels on slots 0..3 counterclockwise
//! X 4 3 5 5    crossing, under-strand on slots 0 and 2
//! O 2          two free circles
//! ```

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{canonical_form, slot, Diagram, DiagramError, NodeKind};

pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
    let mut kinds = Vec::new();
    let mut labels: Vec<u64> = Vec::new();
    let mut circles: Option<u32> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let syntax = |msg: &str| DiagramError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut words = body.split_whitespace();
        let tag = words.next().unwrap();
        let args: Vec<&str> = words.collect();
        match tag {
            "V" | "X" => {
                if args.len() != 4 {
                    return Err(syntax("expected four edge labels"));
                }
                for a in args {
                    let l: u64 = a.parse().map_err(|_| syntax("edge label must be a positive integer"))?;
                    if l == 0 {
                        return Err(syntax("edge label must be a positive integer"));
                    }
                    labels.push(l);
                }
                kinds.push(if tag == "V" {
                    NodeKind::RigidVertex
                } else {
                    NodeKind::Crossing
                });
            }
            "O" => {
                if circles.is_some() {
                    return Err(syntax("at most one O line is allowed"));
                }
                if args.len() != 1 {
                    return Err(syntax("expected a circle count"));
                }
                circles = Some(args[0].parse().map_err(|_| syntax("bad circle count"))?);
            }
            _ => return Err(syntax(&format!("unknown record `{tag}`"))),
        }
    }

    let mut uses: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (s, &l) in labels.iter().enumerate() {
        uses.entry(l).or_default().push(s);
    }
    let mut pair = vec![0; labels.len()];
    for (label, slots) in uses {
        if slots.len() != 2 {
            return Err(DiagramError::Label {
                label,
                count: slots.len(),
            });
        }
        pair[slots[0]] = slots[1];
        pair[slots[1]] = slots[0];
    }
    Diagram::new(kinds, pair, circles.unwrap_or(0))
}

/// Write `d` in canonical node order with edge labels numbered by first use.
pub fn serialize(d: &Diagram) -> String {
    let c = canonical_form(d);
    let mut label = vec![0u64; 4 * c.node_count()];
    let mut next = 1;
    let mut out = String::new();
    for n in 0..c.node_count() {
        let tag = match c.kind(n) {
            NodeKind::RigidVertex => 'V',
            NodeKind::Crossing => 'X',
        };
        out.push(tag);
        for j in 0..4 {
            let s = slot(n, j);
            if label[s] == 0 {
                label[s] = next;
                label[c.partner(s)] = next;
                next += 1;
            }
            let _ = write!(out, " {}", label[s]);
        }
        out.push('\n');
    }
    if c.free_circles() > 0 {
        let _ = writeln!(out, "O {}", c.free_circles());
    }
    out
}
