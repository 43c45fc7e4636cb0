//! Second homology classes as integer labels on the oriented edges of the
//! defining graph.
//!
//! Sign convention used throughout the crate: the label `l(v, w)` of an
//! oriented edge `(v, w)` is the coefficient of the torus cell read as the
//! commutator `v w v^-1 w^-1`, and `l(w, v) = -l(v, w)`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError, OrientedGraph, VertexId};
use crate::linalg::{self, IntMatrix, SkewIntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("({0}, {1}) is not an edge of the ambient graph")]
    UnknownEdge(String, String),
    #[error("edge {{{0}, {1}}} is labelled more than once")]
    DuplicateLabel(String, String),
    #[error("classes live on different ambient graphs")]
    AmbientMismatch,
    #[error("the given subgraph is not a connected component of the support")]
    NotAComponent,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An element of `H_2` of the graph group: one integer per ambient edge,
/// measured against the ambient orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    ambient: Arc<OrientedGraph>,
    labels: Vec<BigInt>,
}

impl HomologyClass {
    /// Builds a class from `(from, to, label)` triples. A triple given against
    /// the ambient orientation is negated; unlabelled edges are zero.
    pub fn new<S, L, I>(ambient: impl Into<Arc<OrientedGraph>>, labels: I) -> Result<Self, HomologyError>
    where
        S: AsRef<str>,
        L: Into<BigInt>,
        I: IntoIterator<Item = (S, S, L)>,
    {
        let ambient = ambient.into();
        let g = ambient.graph();
        let mut values: Vec<Option<BigInt>> = vec![None; g.edge_count()];
        for (a, b, label) in labels {
            let (a, b) = (a.as_ref(), b.as_ref());
            let unknown = || HomologyError::UnknownEdge(a.to_string(), b.to_string());
            let (i, j) = (g.index_of(a).ok_or_else(unknown)?, g.index_of(b).ok_or_else(unknown)?);
            let (e, sign) = ambient.direction(i, j).ok_or_else(unknown)?;
            let label: BigInt = label.into();
            let value = if sign > 0 { label } else { -label };
            if values[e].replace(value).is_some() {
                return Err(HomologyError::DuplicateLabel(a.to_string(), b.to_string()));
            }
        }
        let labels = values.into_iter().map(Option::unwrap_or_default).collect();
        Ok(HomologyClass { ambient, labels })
    }

    pub fn zero(ambient: impl Into<Arc<OrientedGraph>>) -> Self {
        let ambient = ambient.into();
        let labels = vec![BigInt::zero(); ambient.graph().edge_count()];
        HomologyClass { ambient, labels }
    }

    /// Labels given in ambient edge order.
    ///
    /// # Panics
    /// If the number of labels differs from the edge count.
    pub fn from_edge_labels(ambient: impl Into<Arc<OrientedGraph>>, labels: Vec<BigInt>) -> Self {
        let ambient = ambient.into();
        assert_eq!(labels.len(), ambient.graph().edge_count(), "one label per ambient edge");
        HomologyClass { ambient, labels }
    }

    pub fn ambient(&self) -> &OrientedGraph {
        &self.ambient
    }

    pub fn ambient_arc(&self) -> &Arc<OrientedGraph> {
        &self.ambient
    }

    pub fn graph(&self) -> &Graph {
        self.ambient.graph()
    }

    /// Labels in ambient edge order, against the ambient orientation.
    pub fn labels(&self) -> &[BigInt] {
        &self.labels
    }

    /// `l(from, to)`, or `None` when `{from, to}` is not an ambient edge.
    pub fn label(&self, from: &str, to: &str) -> Option<BigInt> {
        let g = self.graph();
        self.label_at(g.index_of(from)?, g.index_of(to)?)
    }

    /// `l(i, j)` by vertex index.
    pub fn label_at(&self, i: usize, j: usize) -> Option<BigInt> {
        let (e, sign) = self.ambient.direction(i, j)?;
        let l = &self.labels[e];
        Some(if sign > 0 { l.clone() } else { -l })
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(Zero::is_zero)
    }

    /// Nonzero labels as `(tail, head, label)` along the ambient orientation.
    pub fn nonzero_labels(&self) -> Vec<(VertexId, VertexId, BigInt)> {
        let g = self.graph();
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.is_zero())
            .map(|(e, l)| {
                let (t, h) = self.ambient.oriented(e);
                (g.vertex(t).clone(), g.vertex(h).clone(), l.clone())
            })
            .collect()
    }

    pub fn support(&self) -> Support {
        let edges: Vec<usize> = (0..self.labels.len()).filter(|&e| !self.labels[e].is_zero()).collect();
        Support::from_edges(self, edges)
    }

    /// The connection matrix over all ambient vertices.
    pub fn connection_matrix(&self) -> ConnectionMatrix {
        let g = self.graph();
        let n = g.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for (e, l) in self.labels.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            let (t, h) = self.ambient.oriented(e);
            m[(t, h)] = l.clone();
            m[(h, t)] = -l;
        }
        let matrix = SkewIntMatrix::new(m).expect("connection matrix is skew by construction");
        ConnectionMatrix { index: g.vertices().to_vec(), matrix }
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.connection_matrix().matrix.as_matrix())
    }

    /// Half the rank of the connection matrix, a lower bound for the genus.
    pub fn cap_bound(&self) -> usize {
        self.rank() / 2
    }

    fn check_ambient(&self, other: &HomologyClass) -> Result<(), HomologyError> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient {
            Ok(())
        } else {
            Err(HomologyError::AmbientMismatch)
        }
    }

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass, HomologyError> {
        self.check_ambient(other)?;
        let labels = self.labels.iter().zip(&other.labels).map(|(a, b)| a + b).collect();
        Ok(HomologyClass { ambient: self.ambient.clone(), labels })
    }

    pub fn scale(&self, c: &BigInt) -> HomologyClass {
        let labels = self.labels.iter().map(|a| a * c).collect();
        HomologyClass { ambient: self.ambient.clone(), labels }
    }

    /// The same class measured against another orientation of the same graph.
    pub fn reoriented(&self, ambient: impl Into<Arc<OrientedGraph>>) -> Result<HomologyClass, HomologyError> {
        let ambient = ambient.into();
        if ambient.graph() != self.graph() {
            return Err(HomologyError::AmbientMismatch);
        }
        let labels = (0..self.labels.len())
            .map(|e| {
                let (t, h) = ambient.oriented(e);
                self.label_at(t, h).expect("same edge set")
            })
            .collect();
        Ok(HomologyClass { ambient, labels })
    }

    /// The class agreeing with `self` on the edges of `component` and zero
    /// elsewhere.
    pub fn restrict_to_component(&self, component: &Support) -> Result<HomologyClass, HomologyError> {
        if !self.support().components().contains(component) {
            return Err(HomologyError::NotAComponent);
        }
        Ok(self.restrict_to_edges(component.ambient_edges()))
    }

    pub(crate) fn restrict_to_edges(&self, edges: &[usize]) -> HomologyClass {
        let mut labels = vec![BigInt::zero(); self.labels.len()];
        for &e in edges {
            labels[e] = self.labels[e].clone();
        }
        HomologyClass { ambient: self.ambient.clone(), labels }
    }

    /// One class per connected component of the support, ordered by smallest
    /// vertex. They sum to `self`.
    pub fn split_components(&self) -> Vec<HomologyClass> {
        self.support().components().iter().map(|c| self.restrict_to_edges(c.ambient_edges())).collect()
    }
}

/// The labelled subgraph spanned by nonzero-labelled edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    subgraph: OrientedGraph,
    labels: Vec<BigInt>,
    ambient_vertices: Vec<usize>,
    ambient_edges: Vec<usize>,
}

impl Support {
    fn from_edges(class: &HomologyClass, edges: Vec<usize>) -> Support {
        let g = class.graph();
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&e| [g.edges()[e].0, g.edges()[e].1]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let position = |v: usize| vertices.binary_search(&v).expect("endpoint is a support vertex");
        let sub_edges = edges.iter().map(|&e| (position(g.edges()[e].0), position(g.edges()[e].1))).collect();
        let graph = Graph::from_parts(vertices.iter().map(|&v| g.vertex(v).clone()).collect(), sub_edges);
        let forward = edges.iter().map(|&e| class.ambient.oriented(e) == g.edges()[e]).collect();
        Support {
            subgraph: OrientedGraph::from_forward(graph, forward),
            labels: edges.iter().map(|&e| class.labels[e].clone()).collect(),
            ambient_vertices: vertices,
            ambient_edges: edges,
        }
    }

    pub fn oriented(&self) -> &OrientedGraph {
        &self.subgraph
    }

    pub fn graph(&self) -> &Graph {
        self.subgraph.graph()
    }

    /// Nonzero labels in subgraph edge order, along the ambient orientation.
    pub fn labels(&self) -> &[BigInt] {
        &self.labels
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Ambient indices of the support vertices, ascending.
    pub fn ambient_vertices(&self) -> &[usize] {
        &self.ambient_vertices
    }

    /// Ambient indices of the support edges, ascending.
    pub fn ambient_edges(&self) -> &[usize] {
        &self.ambient_edges
    }

    /// Connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Support> {
        let g = self.graph();
        let (count, label) = g.component_labels();
        let mut parts: Vec<Support> = Vec::with_capacity(count);
        let mut edges_of = vec![Vec::new(); count];
        for (k, &(i, _)) in g.edges().iter().enumerate() {
            edges_of[label[i]].push(k);
        }
        for edges in edges_of {
            let mut vertices: Vec<usize> = edges.iter().flat_map(|&k| [g.edges()[k].0, g.edges()[k].1]).collect();
            vertices.sort_unstable();
            vertices.dedup();
            let position = |v: usize| vertices.binary_search(&v).unwrap();
            let sub_edges = edges.iter().map(|&k| (position(g.edges()[k].0), position(g.edges()[k].1))).collect();
            let graph = Graph::from_parts(vertices.iter().map(|&v| g.vertex(v).clone()).collect(), sub_edges);
            let forward = edges.iter().map(|&k| self.subgraph.oriented(k) == g.edges()[k]).collect();
            parts.push(Support {
                subgraph: OrientedGraph::from_forward(graph, forward),
                labels: edges.iter().map(|&k| self.labels[k].clone()).collect(),
                ambient_vertices: vertices.iter().map(|&v| self.ambient_vertices[v]).collect(),
                ambient_edges: edges.iter().map(|&k| self.ambient_edges[k]).collect(),
            });
        }
        parts
    }
}

/// `M_alpha` together with the vertex order of its rows and columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectionMatrix {
    pub index: Vec<VertexId>,
    #[serde(serialize_with = "serialize_skew")]
    pub matrix: SkewIntMatrix,
}

fn serialize_skew<S: serde::Serializer>(m: &SkewIntMatrix, s: S) -> Result<S::Ok, S::Error> {
    m.as_matrix().serialize(s)
}
