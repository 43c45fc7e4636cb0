//! JSON wire formats for graphs, orientations, classes and diagrams.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, OrientedGraph};
use crate::homology::{HomologyClass, HomologyError};
use crate::serde_int;
use crate::van_kampen::{validate_diagram, DiagramError, Square, VanKampenDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// `{"vertices": [...], "edges": [[a, b], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        Graph::new(self.vertices.iter().cloned(), self.edges.iter().cloned())
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            vertices: g.vertices().iter().map(|v| v.to_string()).collect(),
            edges: (0..g.edge_count()).map(|e| {
                let (a, b) = g.edge_names(e);
                (a.to_string(), b.to_string())
            })
            .collect(),
        }
    }
}

/// `{"oriented_edges": [[tail, head], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientationJson {
    pub oriented_edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub from: String,
    pub to: String,
    #[serde(with = "serde_int::compact")]
    pub label: BigInt,
}

/// `{"graph": ..., "labels": [{"from", "to", "label"}], "oriented_edges"?: ...}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub graph: GraphJson,
    pub labels: Vec<LabelJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oriented_edges: Option<Vec<(String, String)>>,
}

impl ClassJson {
    /// Builds the class. `orientation` overrides any orientation in the file;
    /// with neither, edges point from the lexicographically smaller end.
    pub fn to_class(&self, orientation: Option<&OrientationJson>) -> Result<HomologyClass, InputError> {
        let graph = self.graph.to_graph()?;
        let oriented = match orientation.map(|o| &o.oriented_edges).or(self.oriented_edges.as_ref()) {
            Some(edges) => OrientedGraph::with_orientation(graph, edges)?,
            None => OrientedGraph::lexicographic(graph),
        };
        let labels = self.labels.iter().map(|l| (l.from.as_str(), l.to.as_str(), l.label.clone()));
        Ok(HomologyClass::new(Arc::new(oriented), labels)?)
    }

    pub fn from_class(class: &HomologyClass) -> Self {
        let lexicographic = class.ambient().oriented_edges().all(|(t, h)| t < h);
        ClassJson {
            graph: GraphJson::from_graph(class.graph()),
            labels: labels_json(class),
            oriented_edges: (!lexicographic).then(|| {
                class.ambient().oriented_edge_names().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
            }),
        }
    }
}

/// Nonzero labels along the ambient orientation, in edge order.
pub fn labels_json(class: &HomologyClass) -> Vec<LabelJson> {
    class
        .nonzero_labels()
        .into_iter()
        .map(|(from, to, label)| LabelJson { from: from.to_string(), to: to.to_string(), label })
        .collect()
}

/// `{"graph": ..., "squares": [{"sides": [...]}], "gluing": [[[q, k], [q', k']], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub graph: GraphJson,
    pub squares: Vec<Square>,
    pub gluing: Vec<[[usize; 2]; 2]>,
}

impl DiagramJson {
    pub fn to_diagram(&self) -> Result<VanKampenDiagram, InputError> {
        let graph = self.graph.to_graph()?;
        let gluing: Vec<_> = self.gluing.iter().map(|[a, b]| ((a[0], a[1]), (b[0], b[1]))).collect();
        Ok(validate_diagram(graph, self.squares.clone(), &gluing)?)
    }

    pub fn from_diagram(d: &VanKampenDiagram) -> Self {
        DiagramJson {
            graph: GraphJson::from_graph(d.ambient()),
            squares: d.squares().to_vec(),
            gluing: d.gluing().into_iter().map(|(a, b)| [[a.0, a.1], [b.0, b.1]]).collect(),
        }
    }
}
