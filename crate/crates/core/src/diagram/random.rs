//! Seeded random diagrams built by insertion moves.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_move, Diagram, EdgeRef, MoveSpec, NodeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    pub vertices: usize,
    pub crossings: usize,
    pub seed: u64,
}

fn grow_step<R: Rng>(d: &Diagram, rng: &mut R, room: usize) -> Diagram {
    let m = 4 * d.node_count();
    let pick_edge = |rng: &mut R| {
        if m == 0 || (d.free_circles() > 0 && rng.random_bool(0.2)) {
            EdgeRef::Circle
        } else {
            EdgeRef::Dart(rng.random_range(0..m))
        }
    };
    loop {
        let choice = rng.random_range(0..10);
        let mv = if room >= 2 && choice < 5 {
            let a = pick_edge(rng);
            let b = if rng.random_bool(0.7) && m > 0 {
                // another dart of the same face keeps the move legal more often
                match a {
                    EdgeRef::Dart(x) => {
                        let (faces, idx) = d.face_index();
                        *faces[idx[x]].darts.choose(rng).unwrap_or(&x)
                    }
                    EdgeRef::Circle => rng.random_range(0..m),
                }
                .into()
            } else {
                pick_edge(rng)
            };
            MoveSpec::R2Insert { a, b, a_over: rng.random() }
        } else if choice < 8 && m > 0 {
            let darts: Vec<usize> = (0..m).filter(|&s| super::moves::triangle_at(d, s).is_some()).collect();
            match darts.choose(rng) {
                Some(&dart) => {
                    let t = super::moves::triangle_at(d, dart).unwrap();
                    return t.flip(d, [NodeKind::RigidVertex; 3]).diagram;
                }
                None => continue,
            }
        } else {
            MoveSpec::CurlInsert {
                at: pick_edge(rng),
                sign: 1,
                left: rng.random(),
            }
        };
        if let Ok(next) = apply_move(d, mv) {
            return next.shadow();
        }
    }
}

impl From<usize> for EdgeRef {
    fn from(s: usize) -> Self {
        EdgeRef::Dart(s)
    }
}

/// A random crossing-free diagram with `nodes` vertices.
pub fn random_planar(nodes: usize, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    planar_with(&mut rng, nodes)
}

fn planar_with(rng: &mut ChaCha8Rng, nodes: usize) -> Diagram {
    let mut d = Diagram::circles(rng.random_range(1..=2));
    while d.node_count() < nodes {
        d = grow_step(&d, rng, nodes - d.node_count());
    }
    d
}

/// A random diagram with the requested numbers of vertices and crossings.
pub fn random_diagram(p: RandomParams) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let total = p.vertices + p.crossings;
    let mut d = planar_with(&mut rng, total);
    let mut order: Vec<usize> = (0..total).collect();
    for i in (1..total).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    for &n in &order[p.vertices..] {
        d = d.set_kind(n, NodeKind::Crossing);
        if rng.random() {
            d = d.switch_crossing(n);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_determinism() {
        for seed in 0..40 {
            for (v, c) in [(0, 0), (1, 0), (0, 3), (2, 2), (4, 4), (5, 1)] {
                let p = RandomParams { vertices: v, crossings: c, seed };
                let d = random_diagram(p);
                assert_eq!(d.vertex_count(), v);
                assert_eq!(d.crossing_count(), c);
                d.validate().unwrap();
                assert_eq!(d, random_diagram(p));
                if v + c == 0 {
                    assert!(d.free_circles() >= 1);
                }
            }
        }
    }
}
