//! The rewrite table shipped in `data/rules.txt`.

use crate::diagram::{Diagram, NodeKind, Outer, Picture, Port};
use crate::ring::{parse_expr, RingElem};

use super::PlanarError;

const BUILTIN: &str = include_str!("../../data/rules.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Monogon,
    Bigon,
    Triangle,
}

impl Shape {
    pub fn legs(self) -> usize {
        match self {
            Shape::Monogon => 2,
            Shape::Bigon => 4,
            Shape::Triangle => 6,
        }
    }
}

/// One child of a rule, with legs numbered from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Child {
    pub arcs: Vec<(usize, usize)>,
    pub vertex: Option<[usize; 4]>,
    pub flip: bool,
    pub weight: RingElem,
}

impl Child {
    pub fn picture(&self) -> Picture {
        let mut pic = Picture::default();
        for &(a, b) in &self.arcs {
            pic = pic.arc(a, b);
        }
        if let Some(v) = self.vertex {
            pic = pic.node(NodeKind::RigidVertex, v.map(Port::Leg));
        }
        pic
    }

    /// Glue this child into `d` in place of `removed`.
    pub fn apply(&self, d: &Diagram, removed: &[usize], legs: &[Outer]) -> Diagram {
        d.splice(removed, legs, &self.picture()).diagram
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTable {
    pub monogon: Vec<Child>,
    pub bigon: Vec<Child>,
    pub triangle: Vec<Child>,
}

impl Default for RuleTable {
    fn default() -> Self {
        Self::parse(BUILTIN).expect("built-in rule table")
    }
}

impl RuleTable {
    pub fn children(&self, s: Shape) -> &[Child] {
        match s {
            Shape::Monogon => &self.monogon,
            Shape::Bigon => &self.bigon,
            Shape::Triangle => &self.triangle,
        }
    }

    pub fn parse(text: &str) -> Result<Self, PlanarError> {
        let mut t = RuleTable {
            monogon: Vec::new(),
            bigon: Vec::new(),
            triangle: Vec::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| PlanarError::Rules(format!("line {}: {msg}", i + 1));
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            let [shape, body, weight] = parts[..] else {
                return Err(bad("expected `shape | child | weight`"));
            };
            let shape = match shape {
                "monogon" => Shape::Monogon,
                "bigon" => Shape::Bigon,
                "triangle" => Shape::Triangle,
                other => return Err(bad(&format!("unknown shape `{other}`"))),
            };
            let n = shape.legs();
            let weight = parse_expr(weight).map_err(|e| bad(&e.to_string()))?;
            let leg = |s: &str| -> Result<usize, PlanarError> {
                match s.parse::<usize>() {
                    Ok(l) if (1..=n).contains(&l) => Ok(l - 1),
                    _ => Err(bad(&format!("bad leg `{s}`"))),
                }
            };
            let mut child = Child {
                arcs: Vec::new(),
                vertex: None,
                flip: false,
                weight,
            };
            let mut rest = body;
            while !rest.is_empty() {
                if let Some(r) = rest.strip_prefix("flip") {
                    if shape != Shape::Triangle {
                        return Err(bad("only triangles flip"));
                    }
                    child.flip = true;
                    rest = r.trim_start();
                } else if let Some(r) = rest.strip_prefix("V(") {
                    let end = r.find(')').ok_or_else(|| bad("unclosed V("))?;
                    let ls: Vec<usize> = r[..end].split_whitespace().map(leg).collect::<Result<_, _>>()?;
                    let v: [usize; 4] = ls.try_into().map_err(|_| bad("a vertex has four legs"))?;
                    if child.vertex.replace(v).is_some() {
                        return Err(bad("at most one vertex per child"));
                    }
                    rest = r[end + 1..].trim_start();
                } else {
                    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
                    let (a, b) = rest[..end].split_once('-').ok_or_else(|| bad("expected a-b"))?;
                    child.arcs.push((leg(a)?, leg(b)?));
                    rest = rest[end..].trim_start();
                }
            }
            let mut used = vec![0; n];
            for &(a, b) in &child.arcs {
                used[a] += 1;
                used[b] += 1;
            }
            for l in child.vertex.iter().flatten() {
                used[*l] += 1;
            }
            let want = if child.flip { 0 } else { 1 };
            if used.iter().any(|&u| u != want) {
                return Err(bad("every leg must be used exactly once"));
            }
            match shape {
                Shape::Monogon => t.monogon.push(child),
                Shape::Bigon => t.bigon.push(child),
                Shape::Triangle => t.triangle.push(child),
            }
        }
        if t.monogon.is_empty() || t.bigon.is_empty() || t.triangle.iter().filter(|c| c.flip).count() != 1 {
            return Err(PlanarError::Rules("table must define monogon, bigon and one triangle flip".into()));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    type Key = (BTreeSet<(usize, usize)>, Option<BTreeSet<usize>>, bool);

    fn key(c: &Child, g: impl Fn(usize) -> usize) -> Key {
        let arcs = c.arcs.iter().map(|&(a, b)| (g(a).min(g(b)), g(a).max(g(b)))).collect();
        let v = c.vertex.map(|v| v.iter().map(|&l| g(l)).collect());
        (arcs, v, c.flip)
    }

    #[test]
    fn builtin_table_loads() {
        let t = RuleTable::default();
        assert_eq!(t.monogon.len(), 1);
        assert_eq!(t.bigon.len(), 3);
        assert_eq!(t.triangle.len(), 9);
    }

    /// The triangle difference is invariant under the dihedral group on six
    /// legs, up to the sign change when a symmetry swaps the two triangles.
    #[test]
    fn triangle_rule_has_d6_symmetry() {
        let t = RuleTable::default();
        let diff: Vec<&Child> = t.triangle.iter().filter(|c| !c.flip).collect();
        for r in 0..6 {
            for reflect in [false, true] {
                let g = move |l: usize| if reflect { (6 + r - l) % 6 } else { (l + r) % 6 };
                // corner pairs {0,1},{2,3},{4,5} go to themselves or to the other triangle's
                let keeps = [(0, 1), (2, 3), (4, 5)].contains(&(g(0).min(g(1)), g(0).max(g(1))));
                let sign = if keeps { RingElem::one() } else { -RingElem::one() };
                for c in &diff {
                    let img = key(c, g);
                    let hit = diff.iter().find(|o| key(o, |l| l) == img).expect("image child missing");
                    assert_eq!(hit.weight, &sign * &c.weight, "r={r} reflect={reflect}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(RuleTable::parse("monogon | 1-3 | O").is_err());
        assert!(RuleTable::parse("bigon | 1-2 | 1").is_err());
        assert!(RuleTable::parse("square | 1-2 | 1").is_err());
        assert!(RuleTable::parse("monogon | 1-2 | zz").is_err());
    }
}
