//! Replacing a group of nodes by a small picture glued along its legs.

use super::{node_of, slot, Diagram, NodeKind, Slot};

/// Where the outside end of a leg goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outer {
    /// A slot of a surviving node (old numbering).
    Slot(Slot),
    /// Straight into the outside end of another leg.
    Leg(usize),
}

/// Endpoint of a picture node slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Port {
    Leg(usize),
    Node(usize, usize),
}

/// Replacement contents of the cut-out disc.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Picture {
    pub nodes: Vec<(NodeKind, [Port; 4])>,
    /// Arcs joining two legs without passing a node.
    pub arcs: Vec<(usize, usize)>,
    pub free_circles: u32,
}

impl Picture {
    pub fn node(mut self, kind: NodeKind, ports: [Port; 4]) -> Self {
        self.nodes.push((kind, ports));
        self
    }

    pub fn arc(mut self, i: usize, j: usize) -> Self {
        self.arcs.push((i, j));
        self
    }
}

/// Result of a splice with the new index of every old node and picture node.
#[derive(Clone, Debug)]
pub struct Spliced {
    pub diagram: Diagram,
    pub old_to_new: Vec<Option<usize>>,
    pub placed: Vec<usize>,
}

#[derive(Clone, Copy)]
enum Inside {
    Unset,
    Slot(Slot),
    Arc(usize),
}

impl Diagram {
    /// Remove `removed`, insert `pic`, and glue leg `j` to `legs[j]`.
    ///
    /// A surviving slot named in `legs` is detached from its old partner, so
    /// edges can be cut as well as nodes.
    pub fn splice(&self, removed: &[usize], legs: &[Outer], pic: &Picture) -> Spliced {
        let n = self.node_count();
        let mut is_removed = vec![false; n];
        for &r in removed {
            is_removed[r] = true;
        }
        let mut holes: Vec<usize> = removed.to_vec();
        holes.sort_unstable();
        holes.dedup();

        // provisional index space: old indices, picture nodes in holes then appended
        let mut placed = Vec::with_capacity(pic.nodes.len());
        let mut total = n;
        for i in 0..pic.nodes.len() {
            if i < holes.len() {
                placed.push(holes[i]);
            } else {
                placed.push(total);
                total += 1;
            }
        }
        let mut kinds: Vec<Option<NodeKind>> = self.kinds.iter().map(|&k| Some(k)).collect();
        kinds.resize(total, None);
        for &h in &holes {
            kinds[h] = None;
        }
        for (i, (k, _)) in pic.nodes.iter().enumerate() {
            kinds[placed[i]] = Some(*k);
        }
        let mut pair = vec![usize::MAX; 4 * total];

        let mut inside = vec![Inside::Unset; legs.len()];
        for (i, (_, ports)) in pic.nodes.iter().enumerate() {
            for (j, p) in ports.iter().enumerate() {
                if let Port::Leg(l) = *p {
                    inside[l] = Inside::Slot(slot(placed[i], j));
                }
            }
        }
        for &(a, b) in &pic.arcs {
            inside[a] = Inside::Arc(b);
            inside[b] = Inside::Arc(a);
        }
        let mut leg_of_slot = std::collections::HashMap::new();
        for (j, o) in legs.iter().enumerate() {
            if let Outer::Slot(s) = o {
                leg_of_slot.insert(*s, j);
            }
        }
        let mut leg_used = vec![false; legs.len()];

        // walk out of leg j until a real slot
        let go_out = |mut j: usize, used: &mut Vec<bool>| -> Slot {
            loop {
                used[j] = true;
                match legs[j] {
                    Outer::Slot(s) => return s,
                    Outer::Leg(k) => {
                        used[k] = true;
                        match inside[k] {
                            Inside::Slot(t) => return t,
                            Inside::Arc(m) => j = m,
                            Inside::Unset => panic!("leg {k} has no inside end"),
                        }
                    }
                }
            }
        };
        let go_in = |j: usize, used: &mut Vec<bool>| -> Slot {
            used[j] = true;
            match inside[j] {
                Inside::Slot(t) => t,
                Inside::Arc(m) => go_out(m, used),
                Inside::Unset => panic!("leg {j} has no inside end"),
            }
        };

        for s in 0..4 * n {
            if is_removed[node_of(s)] {
                continue;
            }
            let p = self.pair[s];
            pair[s] = match leg_of_slot.get(&s) {
                Some(&j) => go_in(j, &mut leg_used),
                None => {
                    assert!(!is_removed[node_of(p)], "surviving slot on the cut without a leg");
                    p
                }
            };
        }
        for (i, (_, ports)) in pic.nodes.iter().enumerate() {
            for (j, p) in ports.iter().enumerate() {
                let here = slot(placed[i], j);
                pair[here] = match *p {
                    Port::Node(m, k) => slot(placed[m], k),
                    Port::Leg(l) => go_out(l, &mut leg_used),
                };
            }
        }

        // whatever legs remain unvisited close up into circles
        let mut closed = 0;
        for start in 0..legs.len() {
            if leg_used[start] {
                continue;
            }
            closed += 1;
            let mut j = start;
            while !leg_used[j] {
                leg_used[j] = true;
                let Outer::Leg(k) = legs[j] else { unreachable!() };
                leg_used[k] = true;
                let Inside::Arc(m) = inside[k] else { unreachable!() };
                j = m;
            }
        }

        // compact
        let mut renum = vec![usize::MAX; total];
        let mut next = 0;
        for (i, k) in kinds.iter().enumerate() {
            if k.is_some() {
                renum[i] = next;
                next += 1;
            }
        }
        let mut new_pair = vec![0; 4 * next];
        let mut new_kinds = Vec::with_capacity(next);
        for (i, k) in kinds.iter().enumerate() {
            let Some(k) = k else { continue };
            new_kinds.push(*k);
            for j in 0..4 {
                let p = pair[slot(i, j)];
                debug_assert!(p != usize::MAX);
                new_pair[slot(renum[i], j)] = slot(renum[node_of(p)], p % 4);
            }
        }
        let diagram = Diagram::from_parts_unchecked(new_kinds, new_pair, self.free_circles + pic.free_circles + closed);
        debug_assert_eq!(diagram.validate(), Ok(()));
        Spliced {
            diagram,
            old_to_new: (0..n).map(|i| (!is_removed[i]).then(|| renum[i])).collect(),
            placed: placed.iter().map(|&p| renum[p]).collect(),
        }
    }

    /// Outer endpoints of the slots `cut` of a node group, in the given order.
    pub fn legs_for(&self, removed: &[usize], cut: &[Slot]) -> Vec<Outer> {
        cut.iter()
            .map(|&s| {
                let p = self.pair[s];
                if removed.contains(&node_of(p)) {
                    Outer::Leg(cut.iter().position(|&c| c == p).expect("inner slot not listed as a leg"))
                } else {
                    Outer::Slot(p)
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse;

    #[test]
    fn smoothing_a_curl_leaves_two_circles_or_one() {
        let d = parse("X 1 1 2 2").unwrap();
        let cut = [0, 1, 2, 3];
        let legs = d.legs_for(&[0], &cut);
        let s = d.splice(&[0], &legs, &Picture::default().arc(0, 3).arc(1, 2));
        assert_eq!(s.diagram.node_count(), 0);
        assert_eq!(s.diagram.free_circles(), 1);
        let s = d.splice(&[0], &legs, &Picture::default().arc(0, 1).arc(2, 3));
        assert_eq!(s.diagram.free_circles(), 2);
    }

    #[test]
    fn replacing_a_node_by_itself() {
        let d = parse("V 1 2 3 4\nV 4 3 2 1").unwrap();
        let legs = d.legs_for(&[1], &[4, 5, 6, 7]);
        let pic = Picture::default().node(
            NodeKind::Crossing,
            [Port::Leg(0), Port::Leg(1), Port::Leg(2), Port::Leg(3)],
        );
        let s = d.splice(&[1], &legs, &pic);
        assert_eq!(s.diagram, d.set_kind(1, NodeKind::Crossing));
        assert_eq!(s.placed, vec![1]);
    }

    #[test]
    fn removing_the_first_node_compacts() {
        let d = parse("V 1 1 2 3\nV 2 3 4 4").unwrap();
        let legs = d.legs_for(&[0], &[0, 1, 2, 3]);
        let s = d.splice(&[0], &legs, &Picture::default().arc(0, 1).arc(2, 3));
        assert_eq!(s.diagram.node_count(), 1);
        assert_eq!(s.old_to_new, vec![None, Some(0)]);
        assert_eq!(s.diagram.free_circles(), 1);
        assert_eq!(s.diagram.partner(0), 1);
    }
}
