//! Finite simple graphs, orientations and the classification predicates used
//! by the genus solver.
//!
//! Vertices are stored sorted by name, so a vertex index doubles as its rank in
//! the lexicographic order. Every tie-break in the crate goes through that
//! order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vertex_cover;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid vertex name {0:?}: names must be nonempty and contain no whitespace")]
    InvalidVertexName(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("loop edge at {0}")]
    LoopEdge(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("edge {{{0}, {1}}} has an endpoint that is not a vertex")]
    UnknownEndpoint(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("({0}, {1}) is not an edge of the graph")]
    UnknownEdge(String, String),
    #[error("edge {{{0}, {1}}} is oriented more than once")]
    DuplicateOrientation(String, String),
    #[error("edge {{{0}, {1}}} has no orientation")]
    MissingOrientation(String, String),
    #[error("exact vertex cover needs {size} vertices in one component, budget is {budget}")]
    SizeLimitExceeded { size: usize, budget: usize },
}

/// Name of a vertex of the defining graph, i.e. a generator of the group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Result<Self, GraphError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(GraphError::InvalidVertexName(name));
        }
        Ok(VertexId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for VertexId {
    type Error = GraphError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        VertexId::new(value)
    }
}

impl From<VertexId> for String {
    fn from(v: VertexId) -> String {
        v.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A finite simple graph.
///
/// Edges are stored as index pairs `(i, j)` with `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates raw vertex and edge lists.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (S, S)>,
    {
        let mut names = BTreeSet::new();
        for v in vertices {
            let id = VertexId::new(v)?;
            if !names.insert(id.clone()) {
                return Err(GraphError::DuplicateVertex(id.0));
            }
        }
        let vertices: Vec<VertexId> = names.into_iter().collect();
        let lookup: HashMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();

        let mut pairs = BTreeSet::new();
        for (a, b) in edges {
            let (a, b): (String, String) = (a.into(), b.into());
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            let (Some(&i), Some(&j)) = (lookup.get(a.as_str()), lookup.get(b.as_str())) else {
                return Err(GraphError::UnknownEndpoint(a, b));
            };
            if !pairs.insert((i.min(j), i.max(j))) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Self::from_parts(vertices, pairs.into_iter().collect()))
    }

    /// Builds a graph from sorted, validated data.
    pub(crate) fn from_parts(vertices: Vec<VertexId>, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (k, &(i, j)) in edges.iter().enumerate() {
            adjacency[i].push(j);
            adjacency[j].push(i);
            edge_index.insert((i, j), k);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph { vertices, edges, edge_index, adjacency }
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Edges as sorted index pairs `(i, j)`, `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertex(&self, index: usize) -> &VertexId {
        &self.vertices[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    pub fn require_index(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name).ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edge_id(i, j).is_some()
    }

    /// Position of the edge `{i, j}` in [`Graph::edges`].
    pub fn edge_id(&self, i: usize, j: usize) -> Option<usize> {
        self.edge_index.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn has_edge_named(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    pub fn edge_names(&self, edge: usize) -> (&VertexId, &VertexId) {
        let (i, j) = self.edges[edge];
        (&self.vertices[i], &self.vertices[j])
    }

    /// Component label per vertex; labels are numbered by smallest vertex.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    /// Connected components as vertex-induced subgraphs, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Graph> {
        let (count, label) = self.component_labels();
        let mut members = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            members[c].push(v);
        }
        members.iter().map(|m| self.induced(m)).collect()
    }

    /// Full subgraph on a sorted list of vertex indices.
    pub(crate) fn induced(&self, members: &[usize]) -> Graph {
        let position: HashMap<usize, usize> =
            members.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let vertices = members.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|&(i, j)| Some((*position.get(&i)?, *position.get(&j)?)))
            .collect();
        Self::from_parts(vertices, edges)
    }

    /// The full subgraph spanned by `subset`: every edge of `self` with both
    /// endpoints in `subset`.
    pub fn full_subgraph<S: AsRef<str>>(&self, subset: &[S]) -> Result<Graph, GraphError> {
        let mut members = Vec::with_capacity(subset.len());
        for name in subset {
            members.push(self.require_index(name.as_ref())?);
        }
        members.sort_unstable();
        members.dedup();
        Ok(self.induced(&members))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    pub fn is_forest(&self) -> bool {
        let (components, _) = self.component_labels();
        self.edge_count() + components == self.vertex_count()
    }

    /// The partition into non-adjacency classes, if non-adjacency is
    /// transitive. An edgeless graph has a single part.
    pub fn complete_multipartite_parts(&self) -> Option<Vec<Vec<VertexId>>> {
        let n = self.vertex_count();
        let mut part_of = vec![usize::MAX; n];
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if part_of[v] != usize::MAX {
                continue;
            }
            let id = parts.len();
            let members: Vec<usize> =
                (v..n).filter(|&w| w == v || (part_of[w] == usize::MAX && !self.has_edge(v, w))).collect();
            for &w in &members {
                part_of[w] = id;
            }
            parts.push(members);
        }
        // Every pair must be adjacent exactly when the parts differ.
        let expected: usize = {
            let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
            let total: usize = sizes.iter().sum();
            (total * total - sizes.iter().map(|s| s * s).sum::<usize>()) / 2
        };
        if expected != self.edge_count() {
            return None;
        }
        if self.edges.iter().any(|&(i, j)| part_of[i] == part_of[j]) {
            return None;
        }
        Some(parts.into_iter().map(|p| p.into_iter().map(|v| self.vertices[v].clone()).collect()).collect())
    }

    /// Parts `(A, B)` of a complete bipartite graph with both parts nonempty.
    /// `A` holds the smallest vertex.
    pub fn complete_bipartite_parts(&self) -> Option<(Vec<VertexId>, Vec<VertexId>)> {
        let mut parts = self.complete_multipartite_parts()?;
        if parts.len() != 2 {
            return None;
        }
        let b = parts.pop()?;
        let a = parts.pop()?;
        Some((a, b))
    }

    /// Center of a star `K_{1,n}`, `n >= 1`. For a single edge this is the
    /// smaller endpoint.
    pub fn star_center(&self) -> Option<VertexId> {
        let n = self.vertex_count();
        if n < 2 || self.edge_count() != n - 1 {
            return None;
        }
        (0..n).find(|&v| self.degree(v) == n - 1).map(|v| self.vertices[v].clone())
    }

    /// Exact minimum vertex cover. `budget` bounds the vertex count of any
    /// single connected component handed to the branch-and-bound search.
    pub fn min_vertex_cover(&self, budget: usize) -> Result<VertexCover, GraphError> {
        let centers = vertex_cover::minimum_cover(self, budget)?;
        let in_cover: BTreeSet<usize> = centers.iter().copied().collect();
        let assignment = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let c = if in_cover.contains(&i) { i } else { j };
                debug_assert!(in_cover.contains(&c));
                ((self.vertices[i].clone(), self.vertices[j].clone()), self.vertices[c].clone())
            })
            .collect();
        Ok(VertexCover { centers: centers.iter().map(|&c| self.vertices[c].clone()).collect(), assignment })
    }
}

/// A vertex cover together with a covering center for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexCover {
    pub centers: BTreeSet<VertexId>,
    /// Keyed by the edge's endpoints in lexicographic order.
    pub assignment: BTreeMap<(VertexId, VertexId), VertexId>,
}

impl VertexCover {
    pub fn size(&self) -> usize {
        self.centers.len()
    }
}

/// A simple graph with a chosen direction for every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    graph: Graph,
    /// `forward[e]` is true when edge `e = (i, j)`, `i < j`, is oriented `i -> j`.
    forward: Vec<bool>,
}

impl OrientedGraph {
    /// Orients every edge from the lexicographically smaller endpoint.
    pub fn lexicographic(graph: Graph) -> Self {
        let forward = vec![true; graph.edge_count()];
        OrientedGraph { graph, forward }
    }

    /// Uses an explicit list of oriented edges covering every edge exactly once.
    pub fn with_orientation<S: AsRef<str>>(graph: Graph, oriented: &[(S, S)]) -> Result<Self, GraphError> {
        let mut forward: Vec<Option<bool>> = vec![None; graph.edge_count()];
        for (a, b) in oriented {
            let (a, b) = (a.as_ref(), b.as_ref());
            let (Some(i), Some(j)) = (graph.index_of(a), graph.index_of(b)) else {
                return Err(GraphError::UnknownEdge(a.to_string(), b.to_string()));
            };
            let e = graph.edge_id(i, j).ok_or_else(|| GraphError::UnknownEdge(a.to_string(), b.to_string()))?;
            if forward[e].replace(i < j).is_some() {
                return Err(GraphError::DuplicateOrientation(a.to_string(), b.to_string()));
            }
        }
        let forward = forward
            .into_iter()
            .enumerate()
            .map(|(e, f)| {
                f.ok_or_else(|| {
                    let (a, b) = graph.edge_names(e);
                    GraphError::MissingOrientation(a.to_string(), b.to_string())
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OrientedGraph { graph, forward })
    }

    /// Orientation given per edge as `forward[e]` (edge `(i, j)`, `i < j`, points `i -> j`).
    pub(crate) fn from_forward(graph: Graph, forward: Vec<bool>) -> Self {
        debug_assert_eq!(forward.len(), graph.edge_count());
        OrientedGraph { graph, forward }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Re-orients edge `e`.
    pub fn reversed(&self, edge: usize) -> Self {
        let mut forward = self.forward.clone();
        forward[edge] = !forward[edge];
        OrientedGraph { graph: self.graph.clone(), forward }
    }

    /// Oriented edge `e` as `(tail, head)` indices.
    pub fn oriented(&self, edge: usize) -> (usize, usize) {
        let (i, j) = self.graph.edges[edge];
        if self.forward[edge] {
            (i, j)
        } else {
            (j, i)
        }
    }

    /// All oriented edges in edge order, as index pairs.
    pub fn oriented_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.graph.edge_count()).map(move |e| self.oriented(e))
    }

    /// All oriented edges by name.
    pub fn oriented_edge_names(&self) -> Vec<(VertexId, VertexId)> {
        self.oriented_edges()
            .map(|(i, j)| (self.graph.vertices[i].clone(), self.graph.vertices[j].clone()))
            .collect()
    }

    /// `Some(+1)` if `(i, j)` is an oriented edge, `Some(-1)` if `(j, i)` is,
    /// `None` if `{i, j}` is not an edge.
    pub fn direction(&self, i: usize, j: usize) -> Option<(usize, i8)> {
        let e = self.graph.edge_id(i, j)?;
        let sign = if self.oriented(e) == (i, j) { 1 } else { -1 };
        Some((e, sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn pentagon() -> Graph {
        Graph::new(
            ["v1", "v2", "v3", "v4", "v5"],
            [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"), ("v5", "v1")],
        )
        .unwrap()
    }

    fn path4() -> Graph {
        Graph::new(["v1", "v2", "v3", "v4"], [("v1", "v2"), ("v2", "v3"), ("v3", "v4")]).unwrap()
    }

    fn square() -> Graph {
        Graph::new(
            ["v1", "v2", "w1", "w2"],
            [("v1", "w1"), ("v1", "w2"), ("v2", "w1"), ("v2", "w2")],
        )
        .unwrap()
    }

    fn complete(n: usize) -> Graph {
        let names: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
        Graph::new(names.clone(), edges).unwrap()
    }

    fn star3() -> Graph {
        Graph::new(["a", "l1", "l2", "l3"], [("a", "l1"), ("a", "l2"), ("a", "l3")]).unwrap()
    }

    #[test]
    fn validation() {
        let g = Graph::new(["v", "w"], [("v", "w")]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(Graph::new(["v"], [("v", "v")]), Err(GraphError::LoopEdge("v".into())));
        assert!(matches!(Graph::new(["v", "v"], Vec::<(&str, &str)>::new()), Err(GraphError::DuplicateVertex(_))));
        assert!(matches!(Graph::new(["v", "w"], [("v", "w"), ("w", "v")]), Err(GraphError::DuplicateEdge(..))));
        assert!(matches!(Graph::new(["v"], [("v", "x")]), Err(GraphError::UnknownEndpoint(..))));
        assert!(matches!(Graph::new(["a b"], Vec::<(&str, &str)>::new()), Err(GraphError::InvalidVertexName(_))));
        let p = pentagon();
        assert_eq!((p.vertex_count(), p.edge_count()), (5, 5));
    }

    #[test]
    fn components() {
        let g = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")]).unwrap();
        assert_eq!(g.connected_components().len(), 2);
        assert_eq!(pentagon().connected_components().len(), 1);
        let g = Graph::new(["v1", "v2", "v3", "v4", "x"], [("v1", "v2"), ("v2", "v3"), ("v3", "v4")]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].edge_count(), 3);
        assert_eq!(comps[1].vertices()[0].as_str(), "x");
    }

    #[test]
    fn classification() {
        assert!(complete(4).is_complete());
        assert!(!pentagon().is_complete());
        assert!(Graph::new(["v"], Vec::<(&str, &str)>::new()).unwrap().is_complete());

        assert!(path4().is_forest());
        assert!(!pentagon().is_forest());
        assert!(Graph::empty().is_forest());

        let (a, b) = square().complete_bipartite_parts().unwrap();
        assert_eq!(a.iter().map(VertexId::as_str).collect::<Vec<_>>(), ["v1", "v2"]);
        assert_eq!(b.iter().map(VertexId::as_str).collect::<Vec<_>>(), ["w1", "w2"]);
        assert!(pentagon().complete_bipartite_parts().is_none());
        let (a, b) = star3().complete_bipartite_parts().unwrap();
        assert_eq!((a.len(), b.len()), (1, 3));
        assert_eq!(a[0].as_str(), "a");

        assert_eq!(square().complete_multipartite_parts().unwrap().len(), 2);
        assert!(pentagon().complete_multipartite_parts().is_none());
        let k3 = complete(3).complete_multipartite_parts().unwrap();
        assert_eq!(k3.len(), 3);
        assert!(k3.iter().all(|p| p.len() == 1));
        let edgeless = Graph::new(["a", "b", "c"], Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(edgeless.complete_multipartite_parts().unwrap().len(), 1);
    }

    #[test]
    fn pentagon_nonadjacency_is_not_transitive() {
        // Oracle: brute force over triples.
        let p = pentagon();
        let n = p.vertex_count();
        let non_adj = |a: usize, b: usize| a != b && !p.has_edge(a, b);
        let mut transitive = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != c && non_adj(a, b) && non_adj(b, c) && !non_adj(a, c) {
                        transitive = false;
                    }
                }
            }
        }
        assert!(!transitive);
        assert!(p.complete_multipartite_parts().is_none());
    }

    #[test]
    fn stars() {
        assert_eq!(star3().star_center().unwrap().as_str(), "a");
        assert!(path4().star_center().is_none());
        let edge = Graph::new(["b", "a"], [("b", "a")]).unwrap();
        assert_eq!(edge.star_center().unwrap().as_str(), "a");
        assert!(Graph::new(["a"], Vec::<(&str, &str)>::new()).unwrap().star_center().is_none());
    }

    #[test]
    fn full_subgraphs() {
        let k4 = complete(4);
        let k3 = k4.full_subgraph(&["v1", "v2", "v3"]).unwrap();
        assert!(k3.is_complete());
        assert_eq!(k3.edge_count(), 3);
        let p = pentagon().full_subgraph(&["v1", "v2", "v3"]).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert!(p.is_forest());
        let e = k4.full_subgraph::<&str>(&[]).unwrap();
        assert_eq!(e.vertex_count(), 0);
        assert!(matches!(k4.full_subgraph(&["zz"]), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn vertex_cover_examples() {
        let c = path4().min_vertex_cover(64).unwrap();
        assert_eq!(c.centers.iter().map(VertexId::as_str).collect::<Vec<_>>(), ["v2", "v3"]);
        assert_eq!(pentagon().min_vertex_cover(64).unwrap().size(), 3);
        let c = star3().min_vertex_cover(64).unwrap();
        assert_eq!(c.centers.iter().map(VertexId::as_str).collect::<Vec<_>>(), ["a"]);
        for ((a, b), center) in &c.assignment {
            assert!(center == a || center == b);
        }
    }

    #[test]
    fn orientation() {
        let g = Graph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let o = OrientedGraph::with_orientation(g.clone(), &[("b", "a"), ("b", "c")]).unwrap();
        assert_eq!(o.oriented(0), (1, 0));
        assert_eq!(o.direction(0, 1), Some((0, -1)));
        assert!(matches!(
            OrientedGraph::with_orientation(g.clone(), &[("b", "a")]),
            Err(GraphError::MissingOrientation(..))
        ));
        assert!(matches!(
            OrientedGraph::with_orientation(g.clone(), &[("b", "a"), ("a", "b"), ("b", "c")]),
            Err(GraphError::DuplicateOrientation(..))
        ));
        assert!(matches!(
            OrientedGraph::with_orientation(g, &[("a", "c")]),
            Err(GraphError::UnknownEdge(..))
        ));
    }
}
