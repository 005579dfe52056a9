//! Cycles of the underlying graph and their linking numbers.
//!
//! A pair of vertex-disjoint cycles with nonzero linking number certifies
//! that a diagram is not isotopic to a planar one.

use super::query::crossing_sign;
use super::{local_of, node_of, slot, Diagram, NodeKind, Slot};

/// A strand between two vertex slots, passing crossings on the way.
#[derive(Clone, Debug)]
struct Edge {
    from: Slot,
    to: Slot,
    /// `(crossing, entry slot)` in walking order from `from`.
    passes: Vec<(usize, usize)>,
}

/// An oriented cycle: its rigid vertices and its crossing passages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCycle {
    pub vertices: Vec<usize>,
    pub passes: Vec<(usize, usize)>,
}

const MAX_EDGES: usize = 20;

impl Diagram {
    fn graph_edges(&self) -> Vec<Edge> {
        let mut used = vec![false; 4 * self.node_count()];
        let mut out = Vec::new();
        for s in 0..4 * self.node_count() {
            if used[s] || self.kind(node_of(s)) != NodeKind::RigidVertex {
                continue;
            }
            let mut passes = Vec::new();
            let mut cur = s;
            let to = loop {
                let t = self.partner(cur);
                if self.kind(node_of(t)) == NodeKind::RigidVertex {
                    break t;
                }
                passes.push((node_of(t), local_of(t)));
                cur = slot(node_of(t), local_of(t) + 2);
            };
            used[s] = true;
            used[to] = true;
            out.push(Edge { from: s, to, passes });
        }
        out
    }

    /// Every simple cycle: vertex-free link components, and closed trails
    /// of strands meeting each vertex at most once. `None` when the graph
    /// has too many strands to enumerate.
    pub fn graph_cycles(&self) -> Option<Vec<GraphCycle>> {
        let edges = self.graph_edges();
        if edges.len() > MAX_EDGES {
            return None;
        }
        let mut out: Vec<GraphCycle> = self
            .circuits()
            .into_iter()
            .filter(|c| !c.steps.is_empty() && c.steps.iter().all(|&(n, _)| self.kind(n) == NodeKind::Crossing))
            .map(|c| GraphCycle { vertices: Vec::new(), passes: c.steps })
            .collect();
        for mask in 1u32..1 << edges.len() {
            if let Some(c) = self.trail(&edges, mask) {
                out.push(c);
            }
        }
        Some(out)
    }

    /// The cycle using exactly the strands in `mask`, if they form one.
    fn trail(&self, edges: &[Edge], mask: u32) -> Option<GraphCycle> {
        let chosen: Vec<&Edge> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| &edges[i]).collect();
        let mut degree = vec![0; self.node_count()];
        for e in &chosen {
            degree[node_of(e.from)] += 1;
            degree[node_of(e.to)] += 1;
        }
        if degree.iter().any(|&k| k != 0 && k != 2) {
            return None;
        }
        // walk from the first strand, entering each vertex and leaving by
        // the other chosen strand there
        let mut taken = vec![false; chosen.len()];
        let (mut i, mut forward) = (0, true);
        let mut vertices = Vec::new();
        let mut passes = Vec::new();
        loop {
            taken[i] = true;
            let e = chosen[i];
            if forward {
                passes.extend(e.passes.iter().copied());
            } else {
                passes.extend(e.passes.iter().rev().map(|&(n, k)| (n, (k + 2) % 4)));
            }
            let at = node_of(if forward { e.to } else { e.from });
            vertices.push(at);
            let next = (0..chosen.len()).find(|&j| !taken[j] && (node_of(chosen[j].from) == at || node_of(chosen[j].to) == at));
            match next {
                Some(j) => {
                    forward = node_of(chosen[j].from) == at;
                    i = j;
                }
                None => break,
            }
        }
        if taken.iter().any(|t| !t) {
            return None;
        }
        vertices.sort_unstable();
        Some(GraphCycle { vertices, passes })
    }

    /// Two vertex-disjoint cycles with nonzero linking number, with that
    /// number.
    pub fn linked_cycle_pair(&self) -> Option<(GraphCycle, GraphCycle, i64)> {
        let cycles = self.graph_cycles()?;
        for (i, p) in cycles.iter().enumerate() {
            for q in &cycles[i + 1..] {
                if p.vertices.iter().any(|v| q.vertices.contains(v)) {
                    continue;
                }
                let lk = linking_number(p, q);
                if lk != 0 {
                    return Some((p.clone(), q.clone(), lk));
                }
            }
        }
        None
    }
}

/// Half the signed count of crossings between two disjoint oriented cycles.
pub fn linking_number(p: &GraphCycle, q: &GraphCycle) -> i64 {
    let mut total = 0;
    for &(n, e) in &p.passes {
        for &(m, f) in &q.passes {
            if n != m {
                continue;
            }
            let (under, over) = if e % 2 == 0 { (e, f) } else { (f, e) };
            total += crossing_sign(under, over);
        }
    }
    total / 2
}

#[cfg(test)]
mod tests {
    use crate::diagram::parse;

    #[test]
    fn hopf_link_is_linked() {
        let d = parse("X 1 2 3 4\nX 2 1 4 3").unwrap();
        let (_, _, lk) = d.linked_cycle_pair().unwrap();
        assert_eq!(lk.abs(), 1);
    }

    #[test]
    fn unlink_by_two_crossings_is_not() {
        assert!(parse("X 1 2 3 4\nX 3 2 1 4").unwrap().linked_cycle_pair().is_none());
    }

    #[test]
    fn theta_cycles() {
        // two vertices joined by four strands: six 2-strand cycles
        let d = parse("V 1 2 3 4\nV 4 3 2 1").unwrap();
        let cs = d.graph_cycles().unwrap();
        assert_eq!(cs.len(), 6);
        assert!(d.linked_cycle_pair().is_none());
    }

    #[test]
    fn figure_eight_has_two_loops() {
        let d = parse("V 1 1 2 2").unwrap();
        assert_eq!(d.graph_cycles().unwrap().len(), 2);
    }
}
