//! Lattice paths on the primal or dual lattice.

use std::collections::HashSet;

use crate::connectivity::Color;
use crate::lattice::{BoxGeometry, Config, DualVertex, EdgeId, Vertex};

/// Which lattice a path lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Lattice {
    Primal,
    Dual,
}

impl From<Color> for Lattice {
    fn from(c: Color) -> Self {
        match c {
            Color::Open => Lattice::Primal,
            Color::ClosedDual => Lattice::Dual,
        }
    }
}

/// An ordered vertex sequence with the edges between consecutive vertices. On the dual
/// lattice a stored `(x, y)` denotes the dual vertex `(x + ½, y + ½)` and `edges` holds
/// the primal edges crossed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    pub lattice: Lattice,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl LatticePath {
    /// Build from primal vertices, looking up the edges.
    pub fn primal(geometry: &BoxGeometry, vertices: Vec<Vertex>) -> Option<Self> {
        let edges = vertices
            .windows(2)
            .map(|w| geometry.edge_between(w[0], w[1]))
            .collect::<Option<Vec<_>>>()?;
        Some(LatticePath { lattice: Lattice::Primal, vertices, edges })
    }

    /// Build from dual vertices, looking up the crossed primal edges.
    pub fn dual(geometry: &BoxGeometry, vertices: Vec<DualVertex>) -> Option<Self> {
        let edges = vertices
            .windows(2)
            .map(|w| geometry.dual_edge_between(w[0], w[1]))
            .collect::<Option<Vec<_>>>()?;
        Some(LatticePath {
            lattice: Lattice::Dual,
            vertices: vertices.into_iter().map(|d| Vertex::new(d.x, d.y)).collect(),
            edges,
        })
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("path has a vertex")
    }

    pub fn dual_vertices(&self) -> impl Iterator<Item = DualVertex> + '_ {
        self.vertices.iter().map(|v| DualVertex::new(v.x, v.y))
    }

    /// Consecutive vertices are nearest neighbours and `edges` matches them.
    pub fn is_well_formed(&self, geometry: &BoxGeometry) -> bool {
        if self.vertices.is_empty() || self.edges.len() + 1 != self.vertices.len() {
            return false;
        }
        self.vertices.windows(2).zip(&self.edges).all(|(w, &e)| {
            let found = match self.lattice {
                Lattice::Primal => geometry.edge_between(w[0], w[1]),
                Lattice::Dual => geometry.dual_edge_between(
                    DualVertex::new(w[0].x, w[0].y),
                    DualVertex::new(w[1].x, w[1].y),
                ),
            };
            found == Some(e)
        })
    }

    /// No vertex repeats.
    pub fn is_self_avoiding(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    /// A circuit: first = last and the vertices in between are distinct.
    pub fn is_simple_circuit(&self) -> bool {
        if self.vertices.len() < 4 || self.first() != self.last() {
            return false;
        }
        let mut seen = HashSet::new();
        self.vertices[..self.vertices.len() - 1].iter().all(|v| seen.insert(*v))
    }

    /// All edges have the state this lattice's paths need (open primal, closed dual).
    pub fn has_color(&self, config: &Config) -> bool {
        let color = self.color();
        self.edges.iter().all(|&e| color.passes(config.is_open(e)))
    }

    pub fn color(&self) -> Color {
        match self.lattice {
            Lattice::Primal => Color::Open,
            Lattice::Dual => Color::ClosedDual,
        }
    }

    pub fn reversed(&self) -> Self {
        let mut p = self.clone();
        p.vertices.reverse();
        p.edges.reverse();
        p
    }
}
