//! Defining graphs for right-angled Artin groups.
//!
//! A `SimplicialGraph` is a finite simplicial graph: named vertices, undirected
//! edges, no self-loops, no duplicate edges. Vertices double as the group
//! generators; an edge means the two generators commute.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Generator index into the graph's vertex order.
pub type GenId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("DuplicateVertex: vertex `{0}` is declared twice")]
    DuplicateVertex(String),
    #[error("SelfLoop: edge from `{0}` to itself is not simplicial")]
    SelfLoop(String),
    #[error("UnknownEndpoint: edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
}

/// Raw JSON shape: `{"vertices":["a","b"],"edges":[["a","b"]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

/// The defining graph Γ of a right-angled Artin group.
///
/// The declared vertex order is load-bearing: it fixes the generator order
/// used by canonical forms, ball enumeration and all deterministic searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    ids: HashMap<String, GenId>,
    adj: Vec<BTreeSet<GenId>>,
    edges: BTreeSet<(GenId, GenId)>,
}

impl SimplicialGraph {
    /// Validates a raw vertex/edge list into a graph.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut names = Vec::with_capacity(vertices.len());
        let mut ids = HashMap::new();
        for v in vertices {
            let name = v.as_ref().to_owned();
            if ids.insert(name.clone(), names.len()).is_some() {
                return Err(GraphError::DuplicateVertex(name));
            }
            names.push(name);
        }
        let mut adj = vec![BTreeSet::new(); names.len()];
        let mut edge_set = BTreeSet::new();
        for (u, v) in edges {
            let u = u.as_ref();
            let v = v.as_ref();
            let ui = *ids.get(u).ok_or_else(|| GraphError::UnknownEndpoint(u.to_owned()))?;
            let vi = *ids.get(v).ok_or_else(|| GraphError::UnknownEndpoint(v.to_owned()))?;
            if ui == vi {
                return Err(GraphError::SelfLoop(u.to_owned()));
            }
            adj[ui].insert(vi);
            adj[vi].insert(ui);
            edge_set.insert((ui.min(vi), ui.max(vi)));
        }
        Ok(Self { names, ids, adj, edges: edge_set })
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self, GraphError> {
        let edges: Vec<(&str, &str)> =
            spec.edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
        let verts: Vec<&str> = spec.vertices.iter().map(|s| s.as_str()).collect();
        Self::new(&verts, &edges)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| (self.names[u].clone(), self.names[v].clone()))
                .collect(),
        }
    }

    pub fn gen_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: GenId) -> &str {
        &self.names[g]
    }

    pub fn id(&self, name: &str) -> Option<GenId> {
        self.ids.get(name).copied()
    }

    /// Neighbors of `g`, i.e. the generators commuting with `g` other than itself.
    pub fn link(&self, g: GenId) -> &BTreeSet<GenId> {
        &self.adj[g]
    }

    pub fn adjacent(&self, a: GenId, b: GenId) -> bool {
        self.adj[a].contains(&b)
    }

    /// `b ∈ star(a)`, i.e. `b == a` or `{a,b}` is an edge.
    pub fn in_star(&self, a: GenId, b: GenId) -> bool {
        a == b || self.adjacent(a, b)
    }

    /// Group-theoretic commutation of the generators: equal or adjacent.
    pub fn commutes(&self, a: GenId, b: GenId) -> bool {
        a == b || self.adjacent(a, b)
    }

    pub fn edges(&self) -> impl Iterator<Item = (GenId, GenId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}
