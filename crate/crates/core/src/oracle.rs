//! Slow reference evaluators for cross-checking on small diagrams.
//!
//! `dubrovnik` unknots link diagrams by crossing switches, `kv_statesum`
//! replaces every rigid vertex by a crossing and its two smoothings, and
//! `bracket_statesum` is the plain Kauffman bracket state sum.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{canonical_code, CanonicalCode, Diagram, NodeKind};
use crate::embedded::{expand_crossing, EvalError};
use crate::ring::{constants, LaurentPoly, RingElem, UniLaurent};

pub const MAX_LINK_CROSSINGS: usize = 8;
pub const MAX_STATESUM_VERTICES: usize = 3;
pub const MAX_STATESUM_CROSSINGS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} is {got}, above the oracle bound {limit}")]
    DepthExceeded { what: &'static str, got: usize, limit: usize },
    #[error("diagram has rigid vertices")]
    NotALink,
    #[error("marker list has {got} entries for {want} vertices")]
    Markers { got: usize, want: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn bound(what: &'static str, got: usize, limit: usize) -> Result<(), OracleError> {
    if got > limit {
        return Err(OracleError::DepthExceeded { what, got, limit });
    }
    Ok(())
}

/// The Dubrovnik polynomial at `z = A - B`.
pub fn dubrovnik(l: &Diagram) -> Result<RingElem, OracleError> {
    if l.vertex_count() > 0 {
        return Err(OracleError::NotALink);
    }
    bound("crossing count", l.crossing_count(), MAX_LINK_CROSSINGS)?;
    Ok(Skein::default().value(l))
}

#[derive(Default)]
struct Skein {
    memo: HashMap<CanonicalCode, RingElem>,
}

impl Skein {
    fn value(&mut self, l: &Diagram) -> RingElem {
        let key = canonical_code(l);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let z = RingElem::from_poly(LaurentPoly::a_minus_b());
        let mut cur = l.clone();
        let mut acc = RingElem::zero();
        // D(K) = D(K') + z (D(K_A) - D(K_B)), switching toward descending
        for c in bad_crossings(l) {
            let [(_, sa), (_, sb), _] = expand_crossing(&cur, c).expect("link crossing");
            acc = acc + &z * &(self.value(&sa) - self.value(&sb));
            cur = cur.switch_crossing(c);
        }
        acc = acc + descending_value(&cur);
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// Crossings first met on the under-strand, walking the circuits in order.
fn bad_crossings(l: &Diagram) -> Vec<usize> {
    let mut seen = vec![false; l.node_count()];
    let mut bad = Vec::new();
    for c in l.circuits() {
        for &(n, e) in &c.steps {
            if !seen[n] {
                seen[n] = true;
                if e % 2 == 0 {
                    bad.push(n);
                }
            }
        }
    }
    bad
}

/// `a^s mu^(m-1)` for a descending diagram with `m` components and total
/// self-writhe `s`.
fn descending_value(l: &Diagram) -> RingElem {
    let m = l.circuits().len() as u32;
    let s = l.twist_number() as i32;
    let mut v = RingElem::monomial(1, [0, 0, s]);
    if m > 1 {
        v = &v * &constants::mu().pow(m - 1);
    }
    v
}

/// `[G]` from the marker state sum, with every marker on the first corner.
pub fn kv_statesum(d: &Diagram) -> Result<RingElem, OracleError> {
    kv_statesum_with_markers(d, &vec![false; d.vertex_count()])
}

/// `[G]` from the marker state sum. Marker `false` at a vertex expands it
/// as the crossing with its under-strand on slots 0 and 2; `true` uses the
/// switched crossing. Markers follow vertex order.
pub fn kv_statesum_with_markers(d: &Diagram, markers: &[bool]) -> Result<RingElem, OracleError> {
    bound("vertex count", d.vertex_count(), MAX_STATESUM_VERTICES)?;
    bound("crossing count", d.crossing_count(), MAX_STATESUM_CROSSINGS)?;
    if markers.len() != d.vertex_count() {
        return Err(OracleError::Markers { got: markers.len(), want: d.vertex_count() });
    }
    let vertices: Vec<usize> = (0..d.node_count()).filter(|&n| d.kind(n) == NodeKind::RigidVertex).collect();
    let mut skein = Skein::default();
    let ma = RingElem::monomial(1, [1, 0, 0]);
    let mb = RingElem::monomial(1, [0, 1, 0]);
    // vertices become crossings one at a time; smoothings renumber nodes, so
    // expand the highest index first
    let mut terms = vec![(RingElem::one(), d.clone())];
    for (&v, &m) in vertices.iter().zip(markers).rev() {
        let mut next = Vec::with_capacity(3 * terms.len());
        for (w, g) in terms {
            let mut x = g.set_kind(v, NodeKind::Crossing);
            if m {
                x = x.switch_crossing(v);
            }
            let [(_, sa), (_, sb), _] = expand_crossing(&x, v)?;
            next.push((w.clone(), x));
            next.push((-(&w * &ma), sa));
            next.push((-(&w * &mb), sb));
        }
        terms = next;
    }
    Ok(terms.into_iter().map(|(w, g)| &w * &skein.value(&g)).sum())
}

/// Kauffman bracket, 1 on the unknot, loop value `-A^2 - A^-2`.
pub fn bracket_statesum(l: &Diagram) -> Result<UniLaurent, OracleError> {
    if l.vertex_count() > 0 {
        return Err(OracleError::NotALink);
    }
    let n = l.crossing_count();
    bound("crossing count", n, MAX_LINK_CROSSINGS)?;
    let delta = UniLaurent::from_terms([(2, -1), (-2, -1)]);
    let mut total = UniLaurent::zero();
    for state in 0..1u32 << n {
        let mut g = l.clone();
        let mut exp = 0;
        for bit in 0..n {
            // smoothing removes a node and renumbers the rest; the current
            // first crossing is always the original `bit`-th one
            let [(_, sa), (_, sb), _] = expand_crossing(&g, 0)?;
            if state >> bit & 1 == 0 {
                g = sa;
                exp += 1;
            } else {
                g = sb;
                exp -= 1;
            }
        }
        let loops = g.free_circles();
        let term = match loops {
            0 => UniLaurent::one(),
            k => delta.pow(k - 1),
        };
        total = total + term.shift(exp);
    }
    Ok(total)
}
