//! Local isotopy moves I to V.
//!
//! A dart is a slot read as "leave the node through this slot"; the face
//! named by a dart is the one on its left.

use rand::Rng;

use super::{local_of, node_of, slot, Diagram, DiagramError, NodeKind, Outer, Picture, Port, Slot, Spliced};

/// An edge side given by a dart, or a free circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeRef {
    Dart(Slot),
    Circle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSpec {
    /// Move I: a one-crossing kink of sign `sign` in the face left of `at`
    /// (or right of it when `left` is false).
    CurlInsert { at: EdgeRef, sign: i8, left: bool },
    CurlRemove { node: usize },
    /// Move II: push `a` across `b` inside their common face.
    R2Insert { a: EdgeRef, b: EdgeRef, a_over: bool },
    /// Move II inverse at the bigon face left of `dart`.
    R2Remove { dart: Slot },
    /// Move III at the triangle face left of `dart`.
    R3Slide { dart: Slot },
    /// Move IV: a strand passing a vertex, at the triangle face left of `dart`.
    VertexSlide { dart: Slot },
    /// Move V: turn the vertex disc over about the axis through corners
    /// `corner` and `corner + 2`; `sign` picks the direction of the turn.
    VertexTwist { node: usize, corner: usize, sign: i8 },
}

fn mismatch(msg: &str) -> DiagramError {
    DiagramError::SiteMismatch(msg.to_string())
}

/// A simple triangular face with darts `(nodes[i], corners[i])` in face order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Triangle {
    pub nodes: [usize; 3],
    pub corners: [usize; 3],
}

pub(crate) fn triangle_at(d: &Diagram, dart: Slot) -> Option<Triangle> {
    if dart >= 4 * d.node_count() {
        return None;
    }
    let d1 = d.face_next(dart);
    let d2 = d.face_next(d1);
    if d.face_next(d2) != dart {
        return None;
    }
    let nodes = [node_of(dart), node_of(d1), node_of(d2)];
    if nodes[0] == nodes[1] || nodes[1] == nodes[2] || nodes[0] == nodes[2] {
        return None;
    }
    Some(Triangle {
        nodes,
        corners: [local_of(dart), local_of(d1), local_of(d2)],
    })
}

impl Triangle {
    /// Leg `2i` is slot `k_i + 2` of node `i`, leg `2i + 1` is slot `k_i + 3`.
    pub fn cut(&self) -> [Slot; 6] {
        let mut out = [0; 6];
        for i in 0..3 {
            out[2 * i] = slot(self.nodes[i], self.corners[i] + 2);
            out[2 * i + 1] = slot(self.nodes[i], self.corners[i] + 3);
        }
        out
    }

    /// Strand `i` runs from leg `2i` through nodes `i`, `i + 1` to leg `2i + 3`.
    /// True when strand `i` is the over-strand at node `i`.
    pub fn first_over_at(&self, i: usize) -> bool {
        self.corners[i] % 2 == 1
    }

    /// Replace the triangle by its flip. New node `i` sits between legs
    /// `2i + 3` and `2i + 4` and meets the same two strands as node `i`.
    pub fn flip(&self, d: &Diagram, kinds: [NodeKind; 3]) -> Spliced {
        let rot: Vec<usize> = (0..3)
            .map(|i| (kinds[i] == NodeKind::Crossing && self.first_over_at(i)) as usize)
            .collect();
        let mut pic = Picture::default();
        for i in 0..3 {
            let (next, prev) = ((i + 1) % 3, (i + 2) % 3);
            let raw = [
                Port::Leg((2 * i + 3) % 6),
                Port::Leg((2 * i + 4) % 6),
                Port::Node(next, (3 + 4 - rot[next]) % 4),
                Port::Node(prev, (2 + 4 - rot[prev]) % 4),
            ];
            let ports = [0, 1, 2, 3].map(|l| raw[(l + rot[i]) % 4]);
            pic = pic.node(kinds[i], ports);
        }
        let cut = self.cut();
        let legs = d.legs_for(&self.nodes, &cut);
        d.splice(&self.nodes, &legs, &pic)
    }
}

/// Leg list for an edge cut at a dart (or a circle): `[start, end]`.
fn edge_legs(d: &Diagram, e: EdgeRef) -> [Outer; 2] {
    match e {
        EdgeRef::Dart(s) => [Outer::Slot(s), Outer::Slot(d.partner(s))],
        EdgeRef::Circle => [Outer::Leg(1), Outer::Leg(0)],
    }
}

fn check_edge(d: &Diagram, e: EdgeRef, circles_needed: u32) -> Result<(), DiagramError> {
    match e {
        EdgeRef::Dart(s) if s >= 4 * d.node_count() => Err(mismatch("dart out of range")),
        EdgeRef::Circle if d.free_circles() < circles_needed => Err(mismatch("no free circle")),
        _ => Ok(()),
    }
}

fn curl_insert(d: &Diagram, at: EdgeRef, sign: i8, left: bool) -> Result<Diagram, DiagramError> {
    check_edge(d, at, 1)?;
    let k = if sign < 0 { 0 } else { 1 };
    let (inner, outer) = if left { (2, 3) } else { (3, 2) };
    let mut ports = [Port::Leg(0); 4];
    ports[k] = Port::Node(0, (k + 1) % 4);
    ports[(k + 1) % 4] = Port::Node(0, k);
    ports[(k + inner) % 4] = Port::Leg(0);
    ports[(k + outer) % 4] = Port::Leg(1);
    let pic = Picture::default().node(NodeKind::Crossing, ports);
    let base = match at {
        EdgeRef::Circle => d.with_free_circles(d.free_circles() - 1),
        _ => d.clone(),
    };
    Ok(base.splice(&[], &edge_legs(d, at), &pic).diagram)
}

/// Loop slot `k` of a curl at `node`: slots `k` and `k + 1` are joined.
fn curl_loop(d: &Diagram, node: usize) -> Option<usize> {
    if node >= d.node_count() || d.kind(node) != NodeKind::Crossing {
        return None;
    }
    (0..4).find(|&k| d.partner(slot(node, k)) == slot(node, k + 1))
}

fn curl_remove(d: &Diagram, node: usize) -> Result<Diagram, DiagramError> {
    let k = curl_loop(d, node).ok_or_else(|| mismatch("no curl at node"))?;
    let cut = [slot(node, k + 2), slot(node, k + 3)];
    let legs = d.legs_for(&[node], &cut);
    Ok(d.splice(&[node], &legs, &Picture::default().arc(0, 1)).diagram)
}

fn r2_insert(d: &Diagram, a: EdgeRef, b: EdgeRef, a_over: bool) -> Result<Diagram, DiagramError> {
    let circles = (a == EdgeRef::Circle) as u32 + (b == EdgeRef::Circle) as u32;
    check_edge(d, a, circles)?;
    check_edge(d, b, circles)?;
    if let (EdgeRef::Dart(x), EdgeRef::Dart(y)) = (a, b) {
        if x == y || d.partner(x) == y {
            return Err(mismatch("both darts lie on one edge"));
        }
        let (_, face) = d.face_index();
        let comp = d.node_components();
        let same_comp = comp.iter().any(|c| c.contains(&node_of(x)) && c.contains(&node_of(y)));
        if same_comp && face[x] != face[y] {
            return Err(mismatch("darts do not share a face"));
        }
    }
    // legs: 0 = start of a, 1 = end of a, 2 = start of b, 3 = end of b
    let [p1, p2] = edge_legs(d, a);
    let [q1, q2] = edge_legs(d, b);
    let shift = |o: Outer| match o {
        Outer::Leg(j) => Outer::Leg(j + 2),
        s => s,
    };
    let legs = [p1, p2, shift(q1), shift(q2)];
    // slots E, N, W, S; strand a runs S to N through x and N to S through y
    let x = [Port::Node(1, 2), Port::Node(1, 1), Port::Leg(3), Port::Leg(0)];
    let y = [Port::Leg(2), Port::Node(0, 1), Port::Node(0, 0), Port::Leg(1)];
    let pic = if a_over {
        Picture::default().node(NodeKind::Crossing, x).node(NodeKind::Crossing, y)
    } else {
        let turn = |p: Port| match p {
            Port::Node(m, s) => Port::Node(m, (s + 3) % 4),
            l => l,
        };
        let r = |ports: [Port; 4]| [0, 1, 2, 3].map(|l| turn(ports[(l + 1) % 4]));
        Picture::default().node(NodeKind::Crossing, r(x)).node(NodeKind::Crossing, r(y))
    };
    let base = d.with_free_circles(d.free_circles() - circles);
    Ok(base.splice(&[], &legs, &pic).diagram)
}

/// The bigon at `dart` if it is removable by move II: `(x, kx, y, ky)`.
fn r2_site(d: &Diagram, dart: Slot) -> Option<(usize, usize, usize, usize)> {
    if dart >= 4 * d.node_count() {
        return None;
    }
    let d1 = d.face_next(dart);
    if d.face_next(d1) != dart {
        return None;
    }
    let (x, y) = (node_of(dart), node_of(d1));
    let (kx, ky) = (local_of(dart), local_of(d1));
    if x == y || d.kind(x) != NodeKind::Crossing || d.kind(y) != NodeKind::Crossing {
        return None;
    }
    (kx % 2 == (ky + 1) % 2).then_some((x, kx, y, ky))
}

fn r2_remove(d: &Diagram, dart: Slot) -> Result<Diagram, DiagramError> {
    let (x, kx, y, ky) = r2_site(d, dart).ok_or_else(|| mismatch("no removable bigon"))?;
    let cut = [slot(x, kx + 2), slot(y, ky + 3), slot(x, kx + 3), slot(y, ky + 2)];
    let legs = d.legs_for(&[x, y], &cut);
    Ok(d.splice(&[x, y], &legs, &Picture::default().arc(0, 1).arc(2, 3)).diagram)
}

/// Over-strand index at each triangle node.
fn over_strands(t: &Triangle) -> [usize; 3] {
    [0, 1, 2].map(|i| if t.first_over_at(i) { i } else { (i + 2) % 3 })
}

fn r3_site(d: &Diagram, dart: Slot) -> Option<Triangle> {
    let t = triangle_at(d, dart)?;
    if t.nodes.iter().any(|&n| d.kind(n) != NodeKind::Crossing) {
        return None;
    }
    let mut wins = [0; 3];
    for s in over_strands(&t) {
        wins[s] += 1;
    }
    (wins != [1, 1, 1]).then_some(t)
}

fn vertex_slide_site(d: &Diagram, dart: Slot) -> Option<Triangle> {
    let t = triangle_at(d, dart)?;
    let kinds = t.nodes.map(|n| d.kind(n));
    let v = (0..3).find(|&i| kinds[i] == NodeKind::RigidVertex)?;
    if kinds.iter().filter(|&&k| k == NodeKind::RigidVertex).count() != 1 {
        return None;
    }
    // strand v + 1 misses the vertex and meets nodes v + 1 and v + 2
    let (i1, i2) = ((v + 1) % 3, (v + 2) % 3);
    let over1 = t.first_over_at(i1);
    let over2 = !t.first_over_at(i2);
    (over1 == over2).then_some(t)
}

fn flip_same_kinds(d: &Diagram, t: &Triangle) -> Diagram {
    t.flip(d, t.nodes.map(|n| d.kind(n))).diagram
}

/// Existing twist at `corner` of vertex `v`: `(c1, j1, c2, j2, sign)`.
fn twist_site(d: &Diagram, v: usize, k: usize) -> Option<(usize, usize, usize, usize, i8)> {
    let side = |a: usize| -> Option<(usize, usize)> {
        let (s0, s1) = (d.partner(slot(v, a)), d.partner(slot(v, a + 1)));
        let c = node_of(s0);
        let ok = c != v && node_of(s1) == c && d.kind(c) == NodeKind::Crossing && local_of(s0) == (local_of(s1) + 1) % 4;
        ok.then_some((c, local_of(s1)))
    };
    let (c1, j1) = side(k)?;
    let (c2, j2) = side(k + 2)?;
    if c1 == c2 {
        return None;
    }
    match (j1 % 2, j2 % 2) {
        (0, 1) => Some((c1, j1, c2, j2, 1)),
        (1, 0) => Some((c1, j1, c2, j2, -1)),
        _ => None,
    }
}

fn vertex_twist(d: &Diagram, v: usize, k: usize, sign: i8) -> Result<Diagram, DiagramError> {
    if v >= d.node_count() || d.kind(v) != NodeKind::RigidVertex {
        return Err(mismatch("not a vertex"));
    }
    let k = k % 4;
    if let Some((c1, j1, c2, j2, s)) = twist_site(d, v, k) {
        if s == -sign {
            let removed = [v, c1, c2];
            let cut = [slot(c1, j1 + 2), slot(c1, j1 + 3), slot(c2, j2 + 2), slot(c2, j2 + 3)];
            let legs = d.legs_for(&removed, &cut);
            let ports = [0, 1, 2, 3].map(|s| Port::Leg((s + 4 - k) % 4));
            let pic = Picture::default().node(NodeKind::RigidVertex, ports);
            return Ok(d.splice(&removed, &legs, &pic).diagram);
        }
    }
    let cut: Vec<Slot> = (0..4).map(|i| slot(v, k + i)).collect();
    let legs = d.legs_for(&[v], &cut);
    // picture node 0 is the turned vertex, 1 and 2 the twists
    let mut vp = [Port::Leg(0); 4];
    let c1 = [Port::Leg(0), Port::Leg(1), Port::Node(0, (k + 1) % 4), Port::Node(0, k)];
    let c2 = [Port::Leg(2), Port::Leg(3), Port::Node(0, (k + 3) % 4), Port::Node(0, (k + 2) % 4)];
    let turned = |p: [Port; 4]| [p[1], p[2], p[3], p[0]];
    let unturned_slot = |c: usize, s: usize, turned_node: bool| if turned_node { Port::Node(c, (s + 3) % 4) } else { Port::Node(c, s) };
    let (t1, t2) = if sign > 0 { (false, true) } else { (true, false) };
    vp[k] = unturned_slot(1, 3, t1);
    vp[(k + 1) % 4] = unturned_slot(1, 2, t1);
    vp[(k + 2) % 4] = unturned_slot(2, 3, t2);
    vp[(k + 3) % 4] = unturned_slot(2, 2, t2);
    let pic = Picture::default()
        .node(NodeKind::RigidVertex, vp)
        .node(NodeKind::Crossing, if t1 { turned(c1) } else { c1 })
        .node(NodeKind::Crossing, if t2 { turned(c2) } else { c2 });
    Ok(d.splice(&[v], &legs, &pic).diagram)
}

pub fn apply_move(d: &Diagram, m: MoveSpec) -> Result<Diagram, DiagramError> {
    match m {
        MoveSpec::CurlInsert { at, sign, left } => curl_insert(d, at, sign, left),
        MoveSpec::CurlRemove { node } => curl_remove(d, node),
        MoveSpec::R2Insert { a, b, a_over } => r2_insert(d, a, b, a_over),
        MoveSpec::R2Remove { dart } => r2_remove(d, dart),
        MoveSpec::R3Slide { dart } => r3_site(d, dart)
            .map(|t| flip_same_kinds(d, &t))
            .ok_or_else(|| mismatch("no move III triangle")),
        MoveSpec::VertexSlide { dart } => vertex_slide_site(d, dart)
            .map(|t| flip_same_kinds(d, &t))
            .ok_or_else(|| mismatch("no move IV triangle")),
        MoveSpec::VertexTwist { node, corner, sign } => vertex_twist(d, node, corner, sign),
    }
}

impl Diagram {
    /// Every site where a regular-isotopy move (II to V) applies, plus
    /// curl insertions and removals.
    pub fn applicable_moves(&self) -> Vec<MoveSpec> {
        let m = 4 * self.node_count();
        let mut out = Vec::new();
        let mut edges: Vec<EdgeRef> = (0..m).map(EdgeRef::Dart).collect();
        if self.free_circles() > 0 {
            edges.push(EdgeRef::Circle);
        }
        for &at in &edges {
            for sign in [-1, 1] {
                for left in [true, false] {
                    out.push(MoveSpec::CurlInsert { at, sign, left });
                }
            }
        }
        for node in 0..self.node_count() {
            if curl_loop(self, node).is_some() {
                out.push(MoveSpec::CurlRemove { node });
            }
            if self.kind(node) == NodeKind::RigidVertex {
                for corner in 0..4 {
                    for sign in [-1, 1] {
                        out.push(MoveSpec::VertexTwist { node, corner, sign });
                    }
                }
            }
        }
        for (i, &a) in edges.iter().enumerate() {
            for &b in &edges[i..] {
                for a_over in [true, false] {
                    let mv = MoveSpec::R2Insert { a, b, a_over };
                    let legal = match (a, b) {
                        (EdgeRef::Circle, EdgeRef::Circle) => self.free_circles() >= 2,
                        _ => apply_move(self, mv).is_ok(),
                    };
                    if legal {
                        out.push(mv);
                    }
                }
            }
        }
        for dart in 0..m {
            if r2_site(self, dart).is_some() {
                out.push(MoveSpec::R2Remove { dart });
            }
            if r3_site(self, dart).is_some() {
                out.push(MoveSpec::R3Slide { dart });
            }
            if vertex_slide_site(self, dart).is_some() {
                out.push(MoveSpec::VertexSlide { dart });
            }
        }
        out
    }

    /// A random applicable move: first a move type, then a site.
    pub fn random_move<R: Rng>(&self, rng: &mut R) -> MoveSpec {
        let all = self.applicable_moves();
        let mut kinds = Vec::new();
        for m in &all {
            let k = std::mem::discriminant(m);
            if !kinds.contains(&k) {
                kinds.push(k);
            }
        }
        let k = kinds[rng.random_range(0..kinds.len())];
        let sites: Vec<&MoveSpec> = all.iter().filter(|m| std::mem::discriminant(*m) == k).collect();
        *sites[rng.random_range(0..sites.len())]
    }
}

impl MoveSpec {
    /// Power of `a` by which the polynomial changes under this move.
    pub fn a_shift(&self, before: &Diagram) -> i64 {
        match *self {
            MoveSpec::CurlInsert { sign, .. } => sign.signum() as i64,
            MoveSpec::CurlRemove { node } => {
                let k = curl_loop(before, node).unwrap_or(0);
                if k.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            _ => 0,
        }
    }
}
