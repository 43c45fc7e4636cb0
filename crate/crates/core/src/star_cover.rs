//! Star coverings of a labelled support.
//!
//! A minimum star cover is read off a minimum vertex cover of the support:
//! every support edge goes to its lexicographically smallest covering
//! endpoint, and the edges sharing a center form one star.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GraphError, VertexId};
use crate::homology::HomologyClass;
use crate::serde_int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarCoverError {
    #[error("the zero class has no star cover")]
    ZeroClass,
    #[error("exact vertex cover needs {size} vertices in one component, budget is {budget}")]
    SizeLimitExceeded { size: usize, budget: usize },
    #[error("invalid star: {0}")]
    InvalidStar(String),
}

impl From<GraphError> for StarCoverError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::SizeLimitExceeded { size, budget } => StarCoverError::SizeLimitExceeded { size, budget },
            other => StarCoverError::InvalidStar(other.to_string()),
        }
    }
}

/// One spoke of a star. `label` is the coefficient `l(center, leaf)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spoke {
    pub leaf: VertexId,
    #[serde(with = "serde_int::compact")]
    pub label: BigInt,
}

/// A labelled `K_{1,n}` with `n >= 1` and nonzero labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub center: VertexId,
    pub spokes: Vec<Spoke>,
}

impl Star {
    pub fn new(center: VertexId, spokes: Vec<Spoke>) -> Result<Self, StarCoverError> {
        let star = Star { center, spokes };
        star.check_shape().map_err(StarCoverError::InvalidStar)?;
        Ok(star)
    }

    fn check_shape(&self) -> Result<(), String> {
        if self.spokes.is_empty() {
            return Err(format!("star at {} has no spokes", self.center));
        }
        let mut leaves = BTreeSet::new();
        for s in &self.spokes {
            if s.leaf == self.center {
                return Err(format!("star at {} has itself as a leaf", self.center));
            }
            if !leaves.insert(&s.leaf) {
                return Err(format!("star at {} repeats leaf {}", self.center, s.leaf));
            }
            if s.label.is_zero() {
                return Err(format!("spoke {}-{} has label zero", self.center, s.leaf));
            }
        }
        Ok(())
    }
}

/// Stars with disjoint edge sets whose labels add up to `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCover {
    pub stars: Vec<Star>,
    pub target: HomologyClass,
}

impl StarCover {
    pub fn len(&self) -> usize {
        self.stars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }
}

pub fn min_star_cover(alpha: &HomologyClass, budget: usize) -> Result<StarCover, StarCoverError> {
    let support = alpha.support();
    if support.is_empty() {
        return Err(StarCoverError::ZeroClass);
    }
    let cover = support.graph().min_vertex_cover(budget)?;
    let mut by_center: BTreeMap<VertexId, Vec<Spoke>> = BTreeMap::new();
    for ((a, b), center) in cover.assignment {
        let leaf = if center == a { b } else { a };
        let label = alpha.label(center.as_str(), leaf.as_str()).expect("support edge is an ambient edge");
        by_center.entry(center).or_default().push(Spoke { leaf, label });
    }
    let stars = by_center
        .into_iter()
        .map(|(center, mut spokes)| {
            spokes.sort_by(|x, y| x.leaf.cmp(&y.leaf));
            Star { center, spokes }
        })
        .collect();
    Ok(StarCover { stars, target: alpha.clone() })
}

/// `sc(alpha)`: zero for the zero class, else the minimum number of stars.
pub fn sc_cardinality(alpha: &HomologyClass, budget: usize) -> Result<usize, StarCoverError> {
    match min_star_cover(alpha, budget) {
        Ok(c) => Ok(c.len()),
        Err(StarCoverError::ZeroClass) => Ok(0),
        Err(e) => Err(e),
    }
}

pub fn verify_star_cover(cover: &StarCover) -> bool {
    check_star_cover(&cover.stars, &cover.target).is_ok()
}

/// Checks the stars against `target`, explaining the first failure.
pub fn check_star_cover(stars: &[Star], target: &HomologyClass) -> Result<(), String> {
    let g = target.graph();
    let mut sums = vec![BigInt::zero(); g.edge_count()];
    let mut used = vec![false; g.edge_count()];
    for star in stars {
        star.check_shape()?;
        let c = g.index_of(star.center.as_str()).ok_or_else(|| format!("unknown vertex {}", star.center))?;
        for s in &star.spokes {
            let leaf = g.index_of(s.leaf.as_str()).ok_or_else(|| format!("unknown vertex {}", s.leaf))?;
            let (e, sign) = target
                .ambient()
                .direction(c, leaf)
                .ok_or_else(|| format!("{}-{} is not an ambient edge", star.center, s.leaf))?;
            if std::mem::replace(&mut used[e], true) {
                return Err(format!("edge {}-{} lies in two stars", star.center, s.leaf));
            }
            sums[e] = if sign > 0 { s.label.clone() } else { -&s.label };
        }
    }
    for (e, (sum, want)) in sums.iter().zip(target.labels()).enumerate() {
        if sum != want {
            let (a, b) = g.edge_names(e);
            return Err(format!("labels on {a}-{b} sum to {sum}, expected {want}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, OrientedGraph};
    use crate::homology::tests::{beta, pentagon_ones};
    use crate::vertex_cover::DEFAULT_BUDGET;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn class(vertices: &[&str], labels: &[(&str, &str, i64)]) -> HomologyClass {
        let edges: Vec<(&str, &str)> = labels.iter().map(|&(a, b, _)| (a, b)).collect();
        let g = Graph::new(vertices.iter().copied(), edges).unwrap();
        HomologyClass::new(OrientedGraph::lexicographic(g), labels.iter().copied()).unwrap()
    }

    /// Fewest distinct centers over every choice of covering endpoint per
    /// support edge.
    fn brute_force_sc(alpha: &HomologyClass) -> usize {
        let g = alpha.graph();
        let edges: Vec<(usize, usize)> = alpha.support().ambient_edges().iter().map(|&e| g.edges()[e]).collect();
        (0u32..1 << edges.len())
            .map(|mask| {
                edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(i, j))| if mask >> k & 1 == 1 { j } else { i })
                    .collect::<BTreeSet<_>>()
                    .len()
            })
            .min()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        let star = class(&["c", "x", "y", "z"], &[("c", "x", 5), ("c", "y", -2), ("c", "z", 7)]);
        let cover = min_star_cover(&star, DEFAULT_BUDGET).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover.stars[0].center.as_str(), "c");
        assert!(verify_star_cover(&cover));

        let path = class(&["v1", "v2", "v3", "v4"], &[("v1", "v2", 1), ("v2", "v3", 1), ("v3", "v4", 1)]);
        let cover = min_star_cover(&path, DEFAULT_BUDGET).unwrap();
        let centers: Vec<&str> = cover.stars.iter().map(|s| s.center.as_str()).collect();
        assert_eq!(centers, ["v2", "v3"]);
        assert_eq!(brute_force_sc(&path), 2);
        assert!(verify_star_cover(&cover));

        assert_eq!(sc_cardinality(&pentagon_ones(), DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(sc_cardinality(&beta(), DEFAULT_BUDGET).unwrap(), 2);
        let zero = HomologyClass::zero(beta().ambient_arc().clone());
        assert_eq!(sc_cardinality(&zero, DEFAULT_BUDGET).unwrap(), 0);
        assert_eq!(min_star_cover(&zero, DEFAULT_BUDGET), Err(StarCoverError::ZeroClass));
    }

    #[test]
    fn spoke_labels_point_away_from_center() {
        let c = class(&["a", "b"], &[("a", "b", 4)]);
        let cover = min_star_cover(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(cover.stars[0].center.as_str(), "a");
        assert_eq!(cover.stars[0].spokes[0].label, BigInt::from(4));

        // Centered at b the same edge carries l(b, a) = -4.
        let flipped = Star::new(
            VertexId::new("b").unwrap(),
            vec![Spoke { leaf: VertexId::new("a").unwrap(), label: BigInt::from(-4) }],
        )
        .unwrap();
        assert!(check_star_cover(&[flipped], &c).is_ok());
    }

    #[test]
    fn verification_rejects_tampering() {
        let cover = min_star_cover(&pentagon_ones(), DEFAULT_BUDGET).unwrap();
        assert!(verify_star_cover(&cover));

        let mut bumped = cover.clone();
        bumped.stars[0].spokes[0].label += 1;
        assert!(!verify_star_cover(&bumped));

        // Duplicate an edge into a second star.
        let mut shared = cover.clone();
        let s0 = shared.stars[0].clone();
        let spoke = s0.spokes[0].clone();
        shared.stars.push(Star { center: s0.center, spokes: vec![spoke] });
        assert!(!verify_star_cover(&shared));

        let mut zero = cover;
        zero.stars[0].spokes[0].label = BigInt::zero();
        assert!(!verify_star_cover(&zero));
        assert!(Star::new(VertexId::new("a").unwrap(), vec![]).is_err());
    }

    #[test]
    fn matches_brute_force_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 300 {
            let n = rng.gen_range(2..=7);
            let names: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
            let mut edges = Vec::new();
            let mut labels = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.4) && edges.len() < 7 {
                        edges.push((names[i].clone(), names[j].clone()));
                        labels.push(BigInt::from(rng.gen_range(-2..=2)));
                    }
                }
            }
            let g = Graph::new(names.clone(), edges).unwrap();
            let alpha = HomologyClass::from_edge_labels(OrientedGraph::lexicographic(g), labels);
            let sc = sc_cardinality(&alpha, DEFAULT_BUDGET).unwrap();
            assert_eq!(sc, brute_force_sc(&alpha));
            let comps: usize =
                alpha.split_components().iter().map(|c| sc_cardinality(c, DEFAULT_BUDGET).unwrap()).sum();
            assert_eq!(sc, comps);
            if !alpha.is_zero() {
                assert!(verify_star_cover(&min_star_cover(&alpha, DEFAULT_BUDGET).unwrap()));
            }
            checked += 1;
        }
    }

    #[test]
    fn trees_meet_the_cap_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(2..=12);
            let names: Vec<String> = (0..n).map(|i| format!("t{i:02}")).collect();
            let mut edges = Vec::new();
            let mut labels = Vec::new();
            for v in 1..n {
                edges.push((names[rng.gen_range(0..v)].clone(), names[v].clone()));
                labels.push(BigInt::from(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }));
            }
            let g = Graph::new(names.clone(), edges).unwrap();
            let alpha = HomologyClass::from_edge_labels(OrientedGraph::lexicographic(g), labels);
            assert_eq!(sc_cardinality(&alpha, DEFAULT_BUDGET).unwrap(), alpha.cap_bound());
        }
    }
}
