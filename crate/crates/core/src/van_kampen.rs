//! Square-tiled surfaces mapped into the Salvetti complex.
//!
//! Each square has sides `0..4` in counterclockwise order, side `k` running
//! from corner `k` to corner `k + 1`. A side carries a generator and a sign:
//! `+1` when its arrow agrees with the counterclockwise traversal. Glued
//! sides must carry the same generator with opposite signs, so every
//! identification reverses the boundary orientation and the quotient is an
//! oriented closed surface.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, OrientedGraph, VertexId};
use crate::homology::HomologyClass;

/// `(square index, side index)`
pub type Slot = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("square {square} side {side}: unknown generator {generator}")]
    UnknownGenerator { square: usize, side: usize, generator: String },
    #[error("square {square} side {side}: sign must be 1 or -1, got {sign}")]
    InvalidSign { square: usize, side: usize, sign: i8 },
    #[error("square {square}: opposite sides {side} and {opposite} do not match")]
    OppositeSideMismatch { square: usize, side: usize, opposite: usize },
    #[error("square {square}: generators {first} and {second} do not commute")]
    NonCommutingLabels { square: usize, first: String, second: String },
    #[error("gluing is not a perfect matching of the sides: {0}")]
    IncompleteMatching(String),
    #[error("glued sides {a:?} and {b:?} carry different generators")]
    GeneratorMismatchAtGluing { a: Slot, b: Slot },
    #[error("glued sides {a:?} and {b:?} have equal signs; the gluing would reverse orientation")]
    OrientationIncompatibleGluing { a: Slot, b: Slot },
    #[error("diagram and class live on different graphs")]
    AmbientMismatch,
    #[error("component {component} has odd Euler characteristic {euler}")]
    OddEulerCharacteristic { component: usize, euler: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareSide {
    #[serde(rename = "gen")]
    pub generator: VertexId,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Square {
    pub sides: [SquareSide; 4],
}

impl Square {
    /// The square spelling `v^e w^f v^-e w^-f` counterclockwise from corner 0.
    pub fn commutator(v: VertexId, e: i8, w: VertexId, f: i8) -> Square {
        let side = |generator: &VertexId, sign: i8| SquareSide { generator: generator.clone(), sign };
        Square { sides: [side(&v, e), side(&w, f), side(&v, -e), side(&w, -f)] }
    }
}

/// A validated diagram: every side slot knows its partner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanKampenDiagram {
    ambient: Graph,
    squares: Vec<Square>,
    partner: Vec<[Slot; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub genus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceSummary {
    pub components: usize,
    pub per_component: Vec<ComponentSummary>,
    pub total_genus: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            x = std::mem::replace(&mut self.0[x], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

pub fn validate_diagram(ambient: Graph, squares: Vec<Square>, gluing: &[(Slot, Slot)]) -> Result<VanKampenDiagram, DiagramError> {
    for (q, sq) in squares.iter().enumerate() {
        let mut index = [0usize; 4];
        for (k, side) in sq.sides.iter().enumerate() {
            index[k] = ambient.index_of(side.generator.as_str()).ok_or_else(|| DiagramError::UnknownGenerator {
                square: q,
                side: k,
                generator: side.generator.to_string(),
            })?;
            if side.sign != 1 && side.sign != -1 {
                return Err(DiagramError::InvalidSign { square: q, side: k, sign: side.sign });
            }
        }
        for k in 0..2 {
            let (s, t) = (&sq.sides[k], &sq.sides[k + 2]);
            if s.generator != t.generator || s.sign != -t.sign {
                return Err(DiagramError::OppositeSideMismatch { square: q, side: k, opposite: k + 2 });
            }
        }
        if index[0] != index[1] && !ambient.has_edge(index[0], index[1]) {
            return Err(DiagramError::NonCommutingLabels {
                square: q,
                first: sq.sides[0].generator.to_string(),
                second: sq.sides[1].generator.to_string(),
            });
        }
    }

    let mut partner: Vec<[Option<Slot>; 4]> = vec![[None; 4]; squares.len()];
    for &(a, b) in gluing {
        for s in [a, b] {
            if s.0 >= squares.len() || s.1 >= 4 {
                return Err(DiagramError::IncompleteMatching(format!("slot {s:?} does not exist")));
            }
        }
        if a == b {
            return Err(DiagramError::IncompleteMatching(format!("slot {a:?} is glued to itself")));
        }
        for (s, t) in [(a, b), (b, a)] {
            if partner[s.0][s.1].replace(t).is_some() {
                return Err(DiagramError::IncompleteMatching(format!("slot {s:?} is glued twice")));
            }
        }
        let (sa, sb) = (&squares[a.0].sides[a.1], &squares[b.0].sides[b.1]);
        if sa.generator != sb.generator {
            return Err(DiagramError::GeneratorMismatchAtGluing { a, b });
        }
        if sa.sign == sb.sign {
            return Err(DiagramError::OrientationIncompatibleGluing { a, b });
        }
    }
    let partner = partner
        .into_iter()
        .enumerate()
        .map(|(q, sides)| {
            let mut out = [(0, 0); 4];
            for (k, p) in sides.into_iter().enumerate() {
                out[k] = p.ok_or_else(|| DiagramError::IncompleteMatching(format!("slot {:?} is not glued", (q, k))))?;
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>, DiagramError>>()?;
    Ok(VanKampenDiagram { ambient, squares, partner })
}

impl VanKampenDiagram {
    pub fn ambient(&self) -> &Graph {
        &self.ambient
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Each glued pair once, smaller slot first.
    pub fn gluing(&self) -> Vec<(Slot, Slot)> {
        let mut out = Vec::with_capacity(self.squares.len() * 2);
        for (q, sides) in self.partner.iter().enumerate() {
            for (k, &p) in sides.iter().enumerate() {
                if (q, k) < p {
                    out.push(((q, k), p));
                }
            }
        }
        out
    }

    pub fn surface_summary(&self) -> Result<SurfaceSummary, DiagramError> {
        let f = self.squares.len();
        let mut corners = UnionFind::new(4 * f);
        let mut faces = UnionFind::new(f);
        for ((qa, a), (qb, b)) in self.gluing() {
            corners.union(4 * qa + a, 4 * qb + (b + 1) % 4);
            corners.union(4 * qa + (a + 1) % 4, 4 * qb + b);
            faces.union(qa, qb);
        }
        let mut component_of = vec![usize::MAX; f];
        let mut per_component: Vec<ComponentSummary> = Vec::new();
        for q in 0..f {
            let root = faces.find(q);
            if component_of[root] == usize::MAX {
                component_of[root] = per_component.len();
                per_component.push(ComponentSummary { vertices: 0, edges: 0, faces: 0, euler: 0, genus: 0 });
            }
            let c = &mut per_component[component_of[root]];
            c.faces += 1;
            c.edges += 2;
        }
        for corner in 0..4 * f {
            if corners.find(corner) == corner {
                per_component[component_of[faces.find(corner / 4)]].vertices += 1;
            }
        }
        let mut total_genus = 0;
        for (k, c) in per_component.iter_mut().enumerate() {
            c.euler = c.vertices as i64 - c.edges as i64 + c.faces as i64;
            if c.euler % 2 != 0 || c.euler > 2 {
                return Err(DiagramError::OddEulerCharacteristic { component: k, euler: c.euler });
            }
            c.genus = ((2 - c.euler) / 2) as usize;
            total_genus += c.genus;
        }
        Ok(SurfaceSummary { components: per_component.len(), per_component, total_genus })
    }

    pub fn genus_of(&self) -> Result<usize, DiagramError> {
        Ok(self.surface_summary()?.total_genus)
    }

    /// The class of the fundamental class's image, measured against `orientation`.
    pub fn induced_class(&self, orientation: impl Into<Arc<OrientedGraph>>) -> Result<HomologyClass, DiagramError> {
        let orientation = orientation.into();
        if *orientation.graph() != self.ambient {
            return Err(DiagramError::AmbientMismatch);
        }
        let mut labels = vec![BigInt::zero(); self.ambient.edge_count()];
        for sq in &self.squares {
            let (s0, s1) = (&sq.sides[0], &sq.sides[1]);
            let i = self.ambient.index_of(s0.generator.as_str()).expect("validated");
            let j = self.ambient.index_of(s1.generator.as_str()).expect("validated");
            if i == j {
                continue;
            }
            let (e, dir) = orientation.direction(i, j).expect("validated commutation");
            labels[e] += i64::from(s0.sign) * i64::from(s1.sign) * i64::from(dir);
        }
        Ok(HomologyClass::from_edge_labels(orientation, labels))
    }

    pub fn represents(&self, alpha: &HomologyClass) -> Result<bool, DiagramError> {
        if *alpha.graph() != self.ambient {
            return Err(DiagramError::AmbientMismatch);
        }
        Ok(self.induced_class(alpha.ambient_arc().clone())?.labels() == alpha.labels())
    }

    /// Both diagrams side by side; `other`'s squares are renumbered after `self`'s.
    pub fn disjoint_union(&self, other: &VanKampenDiagram) -> Result<VanKampenDiagram, DiagramError> {
        if self.ambient != other.ambient {
            return Err(DiagramError::AmbientMismatch);
        }
        let shift = self.squares.len();
        let mut squares = self.squares.clone();
        squares.extend(other.squares.iter().cloned());
        let mut partner = self.partner.clone();
        partner.extend(other.partner.iter().map(|sides| sides.map(|(q, k)| (q + shift, k))));
        Ok(VanKampenDiagram { ambient: self.ambient.clone(), squares, partner })
    }

    /// The same surface with square `q`'s sides relabelled so that old side
    /// `k` becomes side `(k + r) % 4`.
    pub fn rotate_square(&self, q: usize, r: usize) -> VanKampenDiagram {
        let mut d = self.clone();
        let r = r % 4;
        let sides = self.squares[q].sides.clone();
        for k in 0..4 {
            d.squares[q].sides[(k + r) % 4] = sides[k].clone();
        }
        let moved = |(s, k): Slot| if s == q { (s, (k + r) % 4) } else { (s, k) };
        for (s, sides) in self.partner.iter().enumerate() {
            for (k, &p) in sides.iter().enumerate() {
                let (ns, nk) = moved((s, k));
                d.partner[ns][nk] = moved(p);
            }
        }
        d
    }
}
