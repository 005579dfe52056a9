//! Lens search and triangle-flip schedules for bigon-free diagrams.
//!
//! A lens is a disc bounded by two straight-ahead arcs leaving a node `u`
//! through neighbouring slots and meeting again at a node `w` through
//! neighbouring slots, with one corner of each node inside. Flipping
//! triangles that touch its boundary empties it until it is a bigon face.

use std::collections::{HashSet, VecDeque};

use crate::diagram::{canonical_code, local_of, node_of, slot, triangle_at, Diagram, NodeKind, Slot, Triangle};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lens {
    pub u: usize,
    pub corner: usize,
    pub w: usize,
    /// Nodes strictly between the tips on either arc.
    pub arc_nodes: Vec<usize>,
    pub faces: Vec<usize>,
    pub interior_nodes: Vec<usize>,
}

/// Straight walk from dart `s`: `(node, entry slot)` steps.
fn walk(d: &Diagram, s: Slot, limit: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut cur = s;
    for _ in 0..limit {
        let t = d.partner(cur);
        out.push((node_of(t), local_of(t)));
        cur = slot(node_of(t), local_of(t) + 2);
        if cur == s {
            break;
        }
    }
    out
}

pub fn lens_at(d: &Diagram, face_of: &[usize], u: usize, k: usize) -> Option<Lens> {
    let n = d.node_count();
    let a1 = walk(d, slot(u, k), 2 * n + 1);
    let a2 = walk(d, slot(u, k + 1), 2 * n + 1);
    // first node of arc 2 already seen on arc 1
    let mut first1 = vec![usize::MAX; n];
    for (i, &(m, _)) in a1.iter().enumerate() {
        if m == u {
            break;
        }
        if first1[m] == usize::MAX {
            first1[m] = i;
        }
    }
    let mut seen2 = vec![false; n];
    let (mut i1, mut i2) = (usize::MAX, usize::MAX);
    for (j, &(m, _)) in a2.iter().enumerate() {
        if m == u || seen2[m] {
            return None;
        }
        if first1[m] != usize::MAX {
            i1 = first1[m];
            i2 = j;
            break;
        }
        seen2[m] = true;
    }
    if i1 == usize::MAX {
        return None;
    }
    let w = a1[i1].0;
    // arc 1 must be simple up to w
    let mut seen1 = vec![false; n];
    for &(m, _) in &a1[..i1] {
        if seen1[m] {
            return None;
        }
        seen1[m] = true;
    }
    let (ea, eb) = (a1[i1].1, a2[i2].1);
    let inner_w = if eb == (ea + 1) % 4 {
        slot(w, ea)
    } else if ea == (eb + 1) % 4 {
        slot(w, eb)
    } else {
        return None;
    };

    let mut boundary = HashSet::new();
    let mut mark = |from: Slot| {
        boundary.insert(from);
        boundary.insert(d.partner(from));
    };
    mark(slot(u, k));
    for &(m, e) in &a1[..i1] {
        mark(slot(m, e + 2));
    }
    mark(slot(u, k + 1));
    for &(m, e) in &a2[..i2] {
        mark(slot(m, e + 2));
    }

    let faces = face_fill(d, face_of, face_of[slot(u, k)], &boundary);
    if !faces.contains(&face_of[inner_w]) {
        return None;
    }
    let arc_nodes: Vec<usize> = a1[..i1].iter().chain(&a2[..i2]).map(|&(m, _)| m).collect();
    let on_arc: HashSet<usize> = arc_nodes.iter().copied().chain([u, w]).collect();
    let fset: HashSet<usize> = faces.iter().copied().collect();
    let interior_nodes = (0..n)
        .filter(|&m| !on_arc.contains(&m) && (0..4).all(|j| fset.contains(&face_of[slot(m, j)])))
        .collect();
    Some(Lens {
        u,
        corner: k % 4,
        w,
        arc_nodes,
        faces,
        interior_nodes,
    })
}

fn face_fill(d: &Diagram, face_of: &[usize], start: usize, walls: &HashSet<Slot>) -> Vec<usize> {
    let nf = face_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut darts_of = vec![Vec::new(); nf];
    for (s, &f) in face_of.iter().enumerate() {
        darts_of[f].push(s);
    }
    let mut seen = vec![false; nf];
    seen[start] = true;
    let mut q = VecDeque::from([start]);
    let mut out = Vec::new();
    while let Some(f) = q.pop_front() {
        out.push(f);
        for &s in &darts_of[f] {
            if walls.contains(&s) {
                continue;
            }
            let g = face_of[d.partner(s)];
            if !seen[g] {
                seen[g] = true;
                q.push_back(g);
            }
        }
    }
    out.sort_unstable();
    out
}

/// All lenses, smallest interior first.
pub fn all_lenses(d: &Diagram) -> Vec<Lens> {
    let (_, face_of) = d.face_index();
    let mut out: Vec<Lens> = (0..4 * d.node_count())
        .filter_map(|s| lens_at(d, &face_of, node_of(s), local_of(s)))
        .collect();
    out.sort_by_key(|l| (l.faces.len(), l.u, l.corner));
    out
}

fn measure(l: &Lens) -> usize {
    l.interior_nodes.len() + l.arc_nodes.len()
}

/// A flip schedule emptying the lens at corner `(u, k)`: the darts of the
/// successive triangles, and a dart of the final bigon face.
pub fn plan_from(d: &Diagram, u: usize, k: usize) -> Option<(Vec<Slot>, Slot)> {
    let mut cur = d.shadow();
    let (mut u, mut k) = (u, k);
    let mut flips = Vec::new();
    let mut last = usize::MAX;
    loop {
        let (_, face_of) = cur.face_index();
        let lens = lens_at(&cur, &face_of, u, k)?;
        let m = measure(&lens);
        if m >= last {
            return None;
        }
        last = m;
        if lens.faces.len() == 1 {
            let dart = slot(u, k);
            if cur.face_next(cur.face_next(dart)) != dart {
                return None;
            }
            return Some((flips, dart));
        }
        let fset: HashSet<usize> = lens.faces.iter().copied().collect();
        let arc: HashSet<usize> = lens.arc_nodes.iter().copied().collect();
        let interior: HashSet<usize> = lens.interior_nodes.iter().copied().collect();
        let mut side = None;
        let mut tip = None;
        for (s, f) in face_of.iter().enumerate() {
            if !fset.contains(f) {
                continue;
            }
            let Some(t) = triangle_at(&cur, s) else { continue };
            if s == slot(u, k) {
                tip = Some(t);
                continue;
            }
            let on = t.nodes.iter().filter(|n| arc.contains(n)).count();
            let inside = t.nodes.iter().filter(|n| interior.contains(n)).count();
            if on == 2 && inside == 1 && side.is_none() {
                side = Some((s, t));
            }
        }
        if let Some((s, t)) = side {
            let spliced = t.flip(&cur, [NodeKind::RigidVertex; 3]);
            flips.push(s);
            u = spliced.old_to_new[u]?;
            cur = spliced.diagram;
        } else {
            let t = tip?;
            flips.push(slot(u, k));
            let spliced = flip_tip(&cur, &t);
            u = spliced.placed[0];
            k = 0;
            cur = spliced.diagram;
        }
    }
}

fn flip_tip(d: &Diagram, t: &Triangle) -> crate::diagram::Spliced {
    t.flip(d, [NodeKind::RigidVertex; 3])
}

/// Breadth-first search over triangle flips for a diagram with a bigon or
/// monogon face, up to `max_states` visited diagrams.
pub fn bfs_plan(d: &Diagram, max_states: usize) -> Option<(Vec<Slot>, Slot)> {
    let start = d.shadow();
    let mut seen = HashSet::from([canonical_code(&start)]);
    let mut q = VecDeque::from([(start, Vec::new())]);
    while let Some((cur, path)) = q.pop_front() {
        for f in cur.faces() {
            if f.len() <= 2 && (f.len() == 1 || node_of(f.darts[0]) != node_of(f.darts[1])) {
                return Some((path, f.darts[0]));
            }
        }
        for s in 0..4 * cur.node_count() {
            let Some(t) = triangle_at(&cur, s) else { continue };
            let next = t.flip(&cur, [NodeKind::RigidVertex; 3]).diagram;
            if seen.len() >= max_states {
                return None;
            }
            if seen.insert(canonical_code(&next)) {
                let mut p = path.clone();
                p.push(s);
                q.push_back((next, p));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse;

    /// Three great circles: six vertices, eight triangles, no bigon.
    const OCTAHEDRON: &str = "V 1 2 3 4\nV 5 6 7 8\nV 9 1 10 5\nV 11 7 12 3\nV 2 9 8 11\nV 4 12 6 10";

    #[test]
    fn octahedron_is_bigon_free() {
        let d = parse(OCTAHEDRON).unwrap();
        let mut sizes: Vec<usize> = d.faces().iter().map(|f| f.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3; 8]);
    }

    #[test]
    fn octahedron_lens_plan_reaches_a_bigon() {
        let d = parse(OCTAHEDRON).unwrap();
        let lenses = all_lenses(&d);
        assert!(!lenses.is_empty());
        let l = &lenses[0];
        let (flips, target) = plan_from(&d, l.u, l.corner).unwrap();
        assert!(!flips.is_empty());
        let mut cur = d.clone();
        for s in flips {
            cur = triangle_at(&cur, s).unwrap().flip(&cur, [NodeKind::RigidVertex; 3]).diagram;
        }
        assert_eq!(cur.face_next(cur.face_next(target)), target);
    }

    #[test]
    fn bfs_finds_a_bigon_on_the_octahedron() {
        let d = parse(OCTAHEDRON).unwrap();
        let (path, _) = bfs_plan(&d, 1000).unwrap();
        assert_eq!(path.len(), 1);
    }
}
