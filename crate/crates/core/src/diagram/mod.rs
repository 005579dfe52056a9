//! 4-valent rigid-vertex graph diagrams as genus-0 rotation systems.
//!
//! Every node owns four slots numbered counterclockwise; slot `s` of node
//! `n` has the global index `4 * n + s`. The diagram is a perfect matching
//! on slots plus a count of free circles. At a crossing the under-strand
//! runs through slots 0 and 2 and the over-strand through 1 and 3.

mod canon;
mod cycles;
mod local;
mod moves;
mod parse;
mod query;
mod random;

use thiserror::Error;

pub use canon::{canonical_code, canonical_form, CanonicalCode};
pub use cycles::{linking_number, GraphCycle};
pub use local::{Outer, Picture, Port, Spliced};
pub use moves::{apply_move, EdgeRef, MoveSpec};
pub(crate) use moves::{triangle_at, Triangle};
pub use parse::{parse, serialize};
pub use query::{Circuit, Face};
pub use random::{random_diagram, random_planar, RandomParams};

pub type Slot = usize;

#[inline]
pub fn node_of(s: Slot) -> usize {
    s / 4
}

#[inline]
pub fn local_of(s: Slot) -> usize {
    s % 4
}

#[inline]
pub fn slot(node: usize, local: usize) -> Slot {
    4 * node + local % 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    RigidVertex,
    Crossing,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("edge label {label} used {count} times (expected 2)")]
    Label { label: u64, count: usize },
    #[error("rotation system is not planar: component with V={v}, E={e}, F={f}")]
    Genus { v: usize, e: usize, f: usize },
    #[error("slot pairing is not a perfect matching")]
    Pairing,
    #[error("move site does not match: {0}")]
    SiteMismatch(String),
}

/// A 4-valent planar map with vertex/crossing nodes and free circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    kinds: Vec<NodeKind>,
    pair: Vec<Slot>,
    free_circles: u32,
}

impl Diagram {
    /// Build and validate a diagram from raw parts.
    pub fn new(kinds: Vec<NodeKind>, pair: Vec<Slot>, free_circles: u32) -> Result<Self, DiagramError> {
        let d = Self::from_parts_unchecked(kinds, pair, free_circles);
        d.validate()?;
        Ok(d)
    }

    pub(crate) fn from_parts_unchecked(kinds: Vec<NodeKind>, pair: Vec<Slot>, free_circles: u32) -> Self {
        Self {
            kinds,
            pair,
            free_circles,
        }
    }

    /// `k` free circles and nothing else.
    pub fn circles(k: u32) -> Self {
        Self::from_parts_unchecked(Vec::new(), Vec::new(), k)
    }

    pub fn node_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, n: usize) -> NodeKind {
        self.kinds[n]
    }

    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn partner(&self, s: Slot) -> Slot {
        self.pair[s]
    }

    pub fn pairing(&self) -> &[Slot] {
        &self.pair
    }

    pub fn free_circles(&self) -> u32 {
        self.free_circles
    }

    pub fn vertex_count(&self) -> usize {
        self.kinds.iter().filter(|k| **k == NodeKind::RigidVertex).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.kinds.iter().filter(|k| **k == NodeKind::Crossing).count()
    }

    pub fn crossings(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.node_count()).filter(|&n| self.kinds[n] == NodeKind::Crossing)
    }

    pub fn is_crossing_free(&self) -> bool {
        self.crossing_count() == 0
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty() && self.free_circles == 0
    }

    pub fn with_free_circles(&self, k: u32) -> Self {
        let mut d = self.clone();
        d.free_circles = k;
        d
    }

    pub fn set_kind(&self, n: usize, kind: NodeKind) -> Self {
        let mut d = self.clone();
        d.kinds[n] = kind;
        d
    }

    /// Every node turned into a rigid vertex (the underlying shadow).
    pub fn shadow(&self) -> Self {
        let mut d = self.clone();
        d.kinds.iter_mut().for_each(|k| *k = NodeKind::RigidVertex);
        d
    }

    /// Exchange over- and under-strand at crossing `n`.
    pub fn switch_crossing(&self, n: usize) -> Self {
        debug_assert_eq!(self.kinds[n], NodeKind::Crossing);
        self.rotate_node(n, 1)
    }

    /// Relabel the slots of node `n` so that new slot `j` is old slot `j + by`.
    pub(crate) fn rotate_node(&self, n: usize, by: usize) -> Self {
        let mut d = self.clone();
        let old: Vec<Slot> = (0..4).map(|j| slot(n, j + by)).collect();
        // new slot j takes the partner of old slot j+by
        let partners: Vec<Slot> = old.iter().map(|&s| self.pair[s]).collect();
        let remap = |s: Slot| -> Slot {
            if node_of(s) == n {
                slot(n, local_of(s) + 4 - by)
            } else {
                s
            }
        };
        for (j, &q) in partners.iter().enumerate() {
            let p = remap(q);
            d.pair[slot(n, j)] = p;
            d.pair[p] = slot(n, j);
        }
        d
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &Diagram) -> Self {
        let off = 4 * self.node_count();
        let mut kinds = self.kinds.clone();
        kinds.extend_from_slice(&other.kinds);
        let mut pair = self.pair.clone();
        pair.extend(other.pair.iter().map(|s| s + off));
        Self::from_parts_unchecked(kinds, pair, self.free_circles + other.free_circles)
    }

    /// Connected components of the node structure, as sorted node lists.
    pub fn node_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for j in 0..4 {
                    let v = node_of(self.pair[slot(u, j)]);
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Number of connected components, free circles included.
    pub fn component_count(&self) -> usize {
        self.node_components().len() + self.free_circles as usize
    }

    /// Check the matching and the per-component Euler characteristic.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let m = 4 * self.node_count();
        if self.pair.len() != m {
            return Err(DiagramError::Pairing);
        }
        for s in 0..m {
            let p = self.pair[s];
            if p >= m || p == s || self.pair[p] != s {
                return Err(DiagramError::Pairing);
            }
        }
        let faces = self.faces();
        let comps = self.node_components();
        let mut comp_of = vec![0usize; self.node_count()];
        for (i, c) in comps.iter().enumerate() {
            for &n in c {
                comp_of[n] = i;
            }
        }
        let mut per_comp_faces = vec![0usize; comps.len()];
        for f in &faces {
            per_comp_faces[comp_of[node_of(f.darts[0])]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            let v = c.len();
            let e = 2 * v;
            let f = per_comp_faces[i];
            if v + f != e + 2 {
                return Err(DiagramError::Genus { v, e, f });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switch_twice_is_identity_up_to_rotation() {
        let d = parse("X 1 1 2 2").unwrap();
        let s = d.switch_crossing(0);
        assert_ne!(s, d);
        assert_eq!(s.switch_crossing(0).switch_crossing(0).switch_crossing(0), d);
        s.validate().unwrap();
    }

    #[test]
    fn components_count_circles() {
        let d = parse("V 1 1 2 2\nO 2").unwrap();
        assert_eq!(d.component_count(), 3);
    }
}
