//! Diagrams with crossings: skein expansion into planar diagrams, the
//! twist-normalized invariant, and the planarity obstruction.

use thiserror::Error;

use crate::diagram::{canonical_code, random_diagram, slot, Diagram, NodeKind, Picture, RandomParams};
use crate::planar::{eval_planar_closed_form, Evaluator, PlanarError};
use crate::ring::{specialize, RingElem, RingError, Specialization, UniLaurent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("node {0} is not a crossing")]
    NotACrossing(usize),
}

/// Leg pairs joined by the two smoothings of a crossing. The under-strand
/// runs through slots 0 and 2.
pub const A_SMOOTHING: [(usize, usize); 2] = [(0, 3), (1, 2)];
pub const B_SMOOTHING: [(usize, usize); 2] = [(0, 1), (2, 3)];

/// The three terms replacing crossing `c`: `A` times the A-smoothing, `B`
/// times the B-smoothing, and the crossing made rigid.
pub fn expand_crossing(d: &Diagram, c: usize) -> Result<[(RingElem, Diagram); 3], EvalError> {
    if d.kind(c) != NodeKind::Crossing {
        return Err(EvalError::NotACrossing(c));
    }
    let cut: Vec<usize> = (0..4).map(|j| slot(c, j)).collect();
    let legs = d.legs_for(&[c], &cut);
    let smooth = |arcs: [(usize, usize); 2]| {
        let pic = Picture::default().arc(arcs[0].0, arcs[0].1).arc(arcs[1].0, arcs[1].1);
        d.splice(&[c], &legs, &pic).diagram
    };
    Ok([
        (RingElem::constant("A")?, smooth(A_SMOOTHING)),
        (RingElem::constant("B")?, smooth(B_SMOOTHING)),
        (RingElem::one(), d.set_kind(c, NodeKind::RigidVertex)),
    ])
}

impl Evaluator {
    /// `[G]` for any diagram, sharing the memo with the planar evaluator.
    pub fn eval(&self, d: &Diagram) -> Result<RingElem, EvalError> {
        let Some(c) = d.crossings().next() else {
            return Ok(self.planar(d)?);
        };
        let key = canonical_code(d);
        if let Some(v) = self.recall(&key) {
            return Ok(v);
        }
        let mut acc = RingElem::zero();
        for (w, child) in expand_crossing(d, c)? {
            acc = acc + &w * &self.eval(&child)?;
        }
        self.store(key, &acc);
        Ok(acc)
    }

    /// `a^-t [G]` with `t` the twisting number.
    pub fn normalized(&self, d: &Diagram) -> Result<RingElem, EvalError> {
        Ok(&a_power(-d.twist_number()) * &self.eval(d)?)
    }

    pub fn specialized(&self, d: &Diagram, spec: Specialization) -> Result<UniLaurent, EvalError> {
        Ok(specialize(&self.eval(d)?, spec)?)
    }

    pub fn planarity_obstruction(&self, d: &Diagram) -> Result<Verdict, EvalError> {
        let computed = self.specialized(d, Specialization::PlanarTest)?;
        let expected = eval_planar_closed_form(d).shift(d.twist_number() as i32);
        Ok(if computed == expected {
            Verdict::PossiblyPlanar
        } else {
            Verdict::NotPlanar { computed, expected }
        })
    }
}

pub(crate) fn a_power(n: i64) -> RingElem {
    RingElem::monomial(1, [0, 0, n as i32])
}

/// Outcome of the planarity test. `PossiblyPlanar` is only a necessary
/// condition being met.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotPlanar { computed: UniLaurent, expected: UniLaurent },
    PossiblyPlanar,
}

impl Verdict {
    pub fn is_not_planar(&self) -> bool {
        matches!(self, Verdict::NotPlanar { .. })
    }
}

/// Random one-crossing diagrams whose two smoothings keep the component
/// count, drawn from consecutive seeds starting at `seed`.
pub fn one_crossing_family(count: usize, seed: u64) -> Vec<Diagram> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        let d = random_diagram(RandomParams { vertices: 1 + (s % 3) as usize, crossings: 1, seed: s });
        s += 1;
        let Some(c) = d.crossings().next() else { continue };
        let keeps = expand_crossing(&d, c)
            .map(|ex| ex[..2].iter().all(|(_, x)| x.component_count() == d.component_count()))
            .unwrap_or(false);
        if keeps {
            out.push(d);
        }
    }
    out
}

pub fn eval(d: &Diagram) -> Result<RingElem, EvalError> {
    Evaluator::new().eval(d)
}

pub fn normalized(d: &Diagram) -> Result<RingElem, EvalError> {
    Evaluator::new().normalized(d)
}

pub fn specialized_eval(d: &Diagram, spec: Specialization) -> Result<UniLaurent, EvalError> {
    Evaluator::new().specialized(d, spec)
}

pub fn planarity_obstruction(d: &Diagram) -> Result<Verdict, EvalError> {
    Evaluator::new().planarity_obstruction(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{apply_move, parse, MoveSpec};
    use crate::planar::eval_planar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn a() -> RingElem {
        a_power(1)
    }

    #[test]
    fn curls() {
        assert_eq!(eval(&parse("X 1 1 2 2").unwrap()).unwrap(), a_power(-1));
        assert_eq!(eval(&parse("X 2 1 1 2").unwrap()).unwrap(), a());
        assert!(normalized(&parse("X 2 1 1 2").unwrap()).unwrap().is_one());
    }

    #[test]
    fn crossing_free_matches_planar() {
        for src in ["V 1 1 2 2", "V 1 2 3 4\nV 4 3 2 1", "O 3"] {
            let d = parse(src).unwrap();
            assert_eq!(eval(&d).unwrap(), eval_planar(&d).unwrap());
            assert_eq!(normalized(&d).unwrap(), eval(&d).unwrap());
        }
    }

    #[test]
    fn rejects_expanding_a_vertex() {
        let d = parse("V 1 1 2 2").unwrap();
        assert_eq!(expand_crossing(&d, 0).unwrap_err(), EvalError::NotACrossing(0));
    }

    fn corpus() -> Vec<Diagram> {
        let mut out = Vec::new();
        for seed in 0..3 {
            for (v, c) in [(0, 3), (1, 2), (2, 2), (2, 1)] {
                out.push(random_diagram(RandomParams { vertices: v, crossings: c, seed }));
            }
        }
        out
    }

    #[test]
    fn skein_relation_at_a_random_crossing() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let ev = Evaluator::new();
        for d in corpus() {
            let cs: Vec<usize> = d.crossings().collect();
            if cs.is_empty() {
                continue;
            }
            let c = cs[rng.random_range(0..cs.len())];
            let fresh = Evaluator::new();
            let rhs = expand_crossing(&d, c)
                .unwrap()
                .into_iter()
                .fold(RingElem::zero(), |acc, (w, x)| acc + &w * &fresh.eval(&x).unwrap());
            assert_eq!(ev.eval(&d).unwrap(), rhs);
        }
    }

    #[test]
    fn moves_change_eval_only_by_curl_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ev = Evaluator::new();
        for d in corpus() {
            let base = ev.eval(&d).unwrap();
            let norm = ev.normalized(&d).unwrap();
            for _ in 0..4 {
                let m: MoveSpec = d.random_move(&mut rng);
                let e = apply_move(&d, m).unwrap();
                let want = &a_power(m.a_shift(&d)) * &base;
                assert_eq!(ev.eval(&e).unwrap(), want, "{m:?}");
                assert_eq!(ev.normalized(&e).unwrap(), norm, "{m:?}");
            }
        }
    }

    #[test]
    fn planar_diagrams_are_possibly_planar() {
        for seed in 0..5 {
            let d = crate::diagram::random_planar(4, seed);
            assert_eq!(planarity_obstruction(&d).unwrap(), Verdict::PossiblyPlanar);
        }
        assert_eq!(planarity_obstruction(&parse("X 2 1 1 2").unwrap()).unwrap(), Verdict::PossiblyPlanar);
        assert_eq!(specialized_eval(&parse("X 2 1 1 2").unwrap(), Specialization::PlanarTest).unwrap(), UniLaurent::monomial(1, 1));
    }

    /// Passes the test although it holds two disjoint linked cycles.
    #[test]
    fn obstruction_is_not_sufficient() {
        let d = parse(include_str!("../data/linked_but_passing.kvg")).unwrap();
        assert_eq!((d.component_count(), d.vertex_count(), d.twist_number()), (1, 4, 2));
        let (p, q, lk) = d.linked_cycle_pair().unwrap();
        assert!(p.vertices.iter().all(|v| !q.vertices.contains(v)));
        assert_eq!(lk, -1);
        assert_eq!(planarity_obstruction(&d).unwrap(), Verdict::PossiblyPlanar);
        let want = UniLaurent::vertex_factor().pow(4).shift(2);
        assert_eq!(specialized_eval(&d, Specialization::PlanarTest).unwrap(), want);
    }

    #[test]
    fn one_crossing_family_vanishes() {
        let fam = one_crossing_family(10, 0);
        assert_eq!(fam.len(), 10);
        for d in fam {
            assert_eq!(specialized_eval(&d, Specialization::PlanarTest).unwrap(), UniLaurent::zero());
            assert!(planarity_obstruction(&d).unwrap().is_not_planar());
        }
    }
}
