use super::{local_of, node_of, slot, Diagram, NodeKind, Slot};

/// A face as the cyclic list of darts leaving its corners.
///
/// A dart is a slot viewed as "leave the node through this slot". The face
/// corner at `node_of(d)` lies between slots `local_of(d)` and
/// `local_of(d) + 1`; faces lie to the left of the walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Slot>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.darts.iter().map(|&d| node_of(d))
    }

    /// True when no node repeats along the boundary.
    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<usize> = self.nodes().collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}

/// A straight-ahead closed walk: a list of `(node, entry slot)` steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub steps: Vec<(usize, usize)>,
}

impl Circuit {
    pub fn reversed(&self) -> Circuit {
        let mut steps: Vec<(usize, usize)> = self.steps.iter().map(|&(n, e)| (n, (e + 2) % 4)).collect();
        steps.reverse();
        Circuit { steps }
    }
}

/// Sign of a crossing from the entry slots of its under and over passages.
pub(crate) fn crossing_sign(under_entry: usize, over_entry: usize) -> i64 {
    debug_assert!(under_entry.is_multiple_of(2) && !over_entry.is_multiple_of(2));
    if over_entry == (under_entry + 1) % 4 {
        1
    } else {
        -1
    }
}

impl Diagram {
    /// Next dart around the same face.
    #[inline]
    pub fn face_next(&self, d: Slot) -> Slot {
        let t = self.partner(d);
        slot(node_of(t), local_of(t) + 3)
    }

    /// Next dart along the straight-ahead walk.
    #[inline]
    pub fn straight_next(&self, d: Slot) -> Slot {
        let t = self.partner(d);
        slot(node_of(t), local_of(t) + 2)
    }

    pub fn faces(&self) -> Vec<Face> {
        let m = 4 * self.node_count();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                darts.push(d);
                d = self.face_next(d);
            }
            out.push(Face { darts });
        }
        out
    }

    /// Face index of every dart, alongside the faces themselves.
    pub fn face_index(&self) -> (Vec<Face>, Vec<usize>) {
        let faces = self.faces();
        let mut idx = vec![usize::MAX; 4 * self.node_count()];
        for (i, f) in faces.iter().enumerate() {
            for &d in &f.darts {
                idx[d] = i;
            }
        }
        (faces, idx)
    }

    /// Straight-ahead circuits, one per link component, free circles
    /// included as empty circuits.
    pub fn circuits(&self) -> Vec<Circuit> {
        let m = 4 * self.node_count();
        let mut used = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if used[start] {
                continue;
            }
            let mut steps = Vec::new();
            let mut d = start;
            loop {
                used[d] = true;
                let t = self.partner(d);
                used[t] = true;
                steps.push((node_of(t), local_of(t)));
                d = slot(node_of(t), local_of(t) + 2);
                if d == start {
                    break;
                }
            }
            out.push(Circuit { steps });
        }
        for _ in 0..self.free_circles() {
            out.push(Circuit { steps: Vec::new() });
        }
        out
    }

    /// Circuit index of every slot (entry or exit).
    pub fn circuit_of_slot(&self) -> (usize, Vec<usize>) {
        let circuits = self.circuits();
        let mut of = vec![usize::MAX; 4 * self.node_count()];
        let mut count = 0;
        for (i, c) in circuits.iter().enumerate() {
            for &(n, e) in &c.steps {
                of[slot(n, e)] = i;
                of[slot(n, e + 2)] = i;
            }
            count += 1;
        }
        (count, of)
    }

    /// Per-circuit writhe: sum of signs of crossings met twice by one circuit.
    pub fn circuit_writhes(&self) -> Vec<i64> {
        self.circuits().iter().map(|c| self.writhe_of(c)).collect()
    }

    pub(crate) fn writhe_of(&self, c: &Circuit) -> i64 {
        let mut under = vec![None; self.node_count()];
        let mut over = vec![None; self.node_count()];
        for &(n, e) in &c.steps {
            if self.kind(n) != NodeKind::Crossing {
                continue;
            }
            if e % 2 == 0 {
                under[n] = Some(e);
            } else {
                over[n] = Some(e);
            }
        }
        (0..self.node_count())
            .filter_map(|n| Some(crossing_sign(under[n]?, over[n]?)))
            .sum()
    }

    /// Twisting number: total self-writhe over all circuits.
    pub fn twist_number(&self) -> i64 {
        self.circuit_writhes().iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use crate::diagram::parse;

    fn face_sizes(src: &str) -> Vec<usize> {
        let mut s: Vec<usize> = parse(src).unwrap().faces().iter().map(|f| f.len()).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn figure_eight_faces() {
        assert_eq!(face_sizes("V 1 1 2 2"), vec![1, 1, 2]);
    }

    #[test]
    fn theta_like_faces() {
        assert_eq!(face_sizes("V 1 2 3 4\nV 4 3 2 1"), vec![2, 2, 2, 2]);
    }

    #[test]
    fn circles_have_no_faces() {
        assert!(face_sizes("O 1").is_empty());
    }

    #[test]
    fn circuit_counts() {
        assert_eq!(parse("V 1 1 2 2").unwrap().circuits().len(), 1);
        assert_eq!(parse("X 1 1 2 2").unwrap().circuits().len(), 1);
        assert_eq!(parse("O 3").unwrap().circuits().len(), 3);
        assert_eq!(parse("V 1 2 3 4\nV 4 3 2 1").unwrap().circuits().len(), 2);
    }

    #[test]
    fn curl_twist_numbers() {
        assert_eq!(parse("V 1 1 2 2").unwrap().twist_number(), 0);
        assert_eq!(parse("X 1 1 2 2").unwrap().twist_number(), -1);
        assert_eq!(parse("X 2 1 1 2").unwrap().twist_number(), 1);
    }

    #[test]
    fn reversal_keeps_writhe() {
        let d = parse("X 1 1 2 2").unwrap();
        for c in d.circuits() {
            assert_eq!(d.writhe_of(&c), d.writhe_of(&c.reversed()));
        }
    }
}
