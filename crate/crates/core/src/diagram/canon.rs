//! Canonical codes for diagrams up to relabeling.
//!
//! Two diagrams get the same code when they differ by renumbering nodes,
//! rotating the slots at a node (by an even amount at crossings), or by a
//! reflection of the plane combined with switching every crossing.

use super::{local_of, node_of, slot, Diagram, NodeKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(pub Vec<u32>);

/// BFS encoding of one component from `(root, base slot, orientation)`.
fn encode(d: &Diagram, root: usize, base: usize, rev: bool, size: usize) -> Vec<u32> {
    let mut index = vec![u32::MAX; d.node_count()];
    let mut frame = vec![0usize; d.node_count()];
    let mut order = Vec::with_capacity(size);
    index[root] = 0;
    frame[root] = base;
    order.push(root);
    let act = |b: usize, j: usize| if rev { (b + 4 - j) % 4 } else { (b + j) % 4 };
    let rel = |b: usize, l: usize| if rev { (b + 4 - l) % 4 } else { (l + 4 - b) % 4 };
    let mut out = Vec::with_capacity(1 + 9 * size);
    out.push(size as u32);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        out.push(match d.kind(u) {
            NodeKind::RigidVertex => 0,
            NodeKind::Crossing => 1 + ((frame[u] + rev as usize) % 2) as u32,
        });
        for j in 0..4 {
            let t = d.partner(slot(u, act(frame[u], j)));
            let v = node_of(t);
            if index[v] == u32::MAX {
                index[v] = order.len() as u32;
                frame[v] = local_of(t);
                order.push(v);
            }
            out.push(index[v]);
            out.push(rel(frame[v], local_of(t)) as u32);
        }
    }
    out
}

fn component_code(d: &Diagram, comp: &[usize]) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for &root in comp {
        for base in 0..4 {
            for rev in [false, true] {
                let c = encode(d, root, base, rev, comp.len());
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
    }
    best.unwrap_or_default()
}

pub fn canonical_code(d: &Diagram) -> CanonicalCode {
    let mut comps: Vec<Vec<u32>> = d.node_components().iter().map(|c| component_code(d, c)).collect();
    comps.sort();
    let mut out: Vec<u32> = comps.concat();
    out.push(u32::MAX);
    out.push(d.free_circles());
    CanonicalCode(out)
}

/// The representative diagram determined by the canonical code.
pub fn canonical_form(d: &Diagram) -> Diagram {
    decode(&canonical_code(d))
}

fn decode(code: &CanonicalCode) -> Diagram {
    let c = &code.0;
    let mut kinds = Vec::new();
    let mut pair = Vec::new();
    let mut i = 0;
    while c[i] != u32::MAX {
        let size = c[i] as usize;
        let off = kinds.len();
        i += 1;
        let block = &c[i..i + 9 * size];
        // crossings whose under-strand sits at odd frame slots are turned by one
        let shift: Vec<usize> = (0..size).map(|k| (block[9 * k] == 2) as usize).collect();
        for k in 0..size {
            kinds.push(if block[9 * k] == 0 {
                NodeKind::RigidVertex
            } else {
                NodeKind::Crossing
            });
            let mut row = [0usize; 4];
            for f in 0..4 {
                let v = block[9 * k + 1 + 2 * f] as usize;
                let l = block[9 * k + 2 + 2 * f] as usize;
                row[(f + 4 - shift[k]) % 4] = slot(off + v, l + 4 - shift[v]);
            }
            pair.extend_from_slice(&row);
        }
        i += 9 * size;
    }
    Diagram::from_parts_unchecked(kinds, pair, c[i + 1])
}
