//! The path shortcuts detour around, with the side of it they live on.

use std::collections::{HashMap, VecDeque};

use super::polygon;
use crate::arms::InnerEvent;
use crate::crossings::lowest_crossing;
use crate::error::{Error, Result};
use crate::lattice::{BoxGeometry, Config, DualVertex, EdgeId, Vertex};
use crate::path::{Lattice, LatticePath};

/// What kind of path the host is. It fixes which side shortcuts use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum HostKind {
    /// Open left-right crossing of the box; shortcuts run above it.
    Crossing,
    /// Arc between the five-arm points of a U-shaped region; shortcuts run on the side
    /// away from the shield, towards the hole of the U.
    Arc,
}

/// Unit step as (dx, dy).
pub type Step = (i32, i32);

/// A host path together with the strict side its shortcuts may occupy.
#[derive(Debug, Clone)]
pub struct Host {
    path: LatticePath,
    kind: HostKind,
    geometry: BoxGeometry,
    above: Vec<bool>,
    above_dual: Vec<bool>,
    index: HashMap<Vertex, usize>,
    edge_index: HashMap<EdgeId, usize>,
}

impl Host {
    /// The lowest crossing of the configuration.
    pub fn lowest_crossing(config: &Config) -> Result<Host> {
        Host::crossing(config, lowest_crossing(config)?)
    }

    /// Any open crossing from the left side to the right side. The region below it is the
    /// part of the box reached from the bottom ring without crossing one of its edges.
    pub fn crossing(config: &Config, path: LatticePath) -> Result<Host> {
        let g = *config.geometry();
        if path.lattice != Lattice::Primal
            || !path.is_well_formed(&g)
            || !path.is_self_avoiding()
            || !g.is_left_side(path.first())
            || !g.is_right_side(path.last())
        {
            return Err(Error::PlanMismatch("host is not a self-avoiding left-right path"));
        }
        let on_path: std::collections::HashSet<EdgeId> = path.edges.iter().copied().collect();
        let mut below = vec![false; g.dual_vertex_count()];
        let mut queue = VecDeque::new();
        let n = g.n();
        for x in -n - 1..=n {
            let s = g.dual_index(DualVertex::new(x, -n - 1)).expect("bottom ring");
            below[s] = true;
            queue.push_back(DualVertex::new(x, -n - 1));
        }
        while let Some(d) = queue.pop_front() {
            for (w, e) in g.dual_neighbors(d) {
                let t = g.dual_index(w).expect("neighbour inside");
                if !below[t] && !on_path.contains(&e) {
                    below[t] = true;
                    queue.push_back(w);
                }
            }
        }
        let index = index_of(&path);
        // a vertex off the path sees the same side through all four of its faces
        let above = (0..g.vertex_count())
            .map(|i| {
                let v = g.vertex_at(i);
                !index.contains_key(&v) && !below[g.dual_index(DualVertex::new(v.x, v.y)).expect("face")]
            })
            .collect();
        let above_dual = (0..g.dual_vertex_count())
            .map(|i| !below[i] && g.is_face(g.dual_vertex_at(i)))
            .collect();
        Ok(Host::assemble(path, HostKind::Crossing, g, above, above_dual, index))
    }

    /// An open arc of a U-shaped region from ⋆₁ to ⋆₂ (usually the outermost one). Its
    /// shortcut side is cut off below the stars by vertical lines through them.
    pub fn arc(config: &Config, event: &InnerEvent, path: LatticePath) -> Result<Host> {
        let g = *config.geometry();
        if path.lattice != Lattice::Primal
            || !path.is_well_formed(&g)
            || !path.is_self_avoiding()
            || path.first() != event.star1
            || path.last() != event.star2
        {
            return Err(Error::PlanMismatch("arc does not join the two five-arm points"));
        }
        let far = -(g.n() as f64) - 2.0;
        let (s1, s2) = (event.star1, event.star2);
        let mut poly: Vec<polygon::Point> = vec![(s1.x as f64 + 0.25, far), (s1.x as f64 + 0.25, s1.y as f64)];
        poly.extend(path.vertices.iter().map(|v| (v.x as f64, v.y as f64)));
        poly.push((s2.x as f64 - 0.25, s2.y as f64));
        poly.push((s2.x as f64 - 0.25, far));
        let index = index_of(&path);
        let u = &event.region.u;
        let above = (0..g.vertex_count())
            .map(|i| {
                let v = g.vertex_at(i);
                !index.contains_key(&v)
                    && u.contains_vertex(v)
                    && polygon::contains(&poly, (v.x as f64, v.y as f64))
            })
            .collect();
        let above_dual = (0..g.dual_vertex_count())
            .map(|i| {
                let d = g.dual_vertex_at(i);
                g.is_face(d) && u.contains_dual(d) && polygon::contains(&poly, d.position())
            })
            .collect();
        Ok(Host::assemble(path, HostKind::Arc, g, above, above_dual, index))
    }

    fn assemble(
        path: LatticePath,
        kind: HostKind,
        geometry: BoxGeometry,
        above: Vec<bool>,
        above_dual: Vec<bool>,
        index: HashMap<Vertex, usize>,
    ) -> Host {
        let edge_index = path.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Host { path, kind, geometry, above, above_dual, index, edge_index }
    }

    pub fn path(&self) -> &LatticePath {
        &self.path
    }

    pub fn kind(&self) -> HostKind {
        self.kind
    }

    pub fn geometry(&self) -> &BoxGeometry {
        &self.geometry
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.path.vertices[i]
    }

    pub fn position_of(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Position of `e` along the host: it joins vertices i and i + 1.
    pub fn edge_position(&self, e: EdgeId) -> Option<usize> {
        self.edge_index.get(&e).copied()
    }

    /// Strictly on the shortcut side (never on the host itself).
    pub fn is_above(&self, v: Vertex) -> bool {
        self.geometry.vertex_index(v).is_some_and(|i| self.above[i])
    }

    /// A face strictly on the shortcut side.
    pub fn is_above_dual(&self, d: DualVertex) -> bool {
        self.geometry.dual_index(d).is_some_and(|i| self.above_dual[i])
    }

    pub(crate) fn above_flags(&self) -> &[bool] {
        &self.above
    }

    pub(crate) fn above_dual_flags(&self) -> &[bool] {
        &self.above_dual
    }

    /// Tangent and normal at host vertex i when a shortcut may start or end there: the host
    /// runs straight through i, and for a crossing it runs in the +x direction. The normal
    /// points to the shortcut side. Host endpoints never qualify.
    pub fn frame(&self, i: usize) -> Option<(Step, Step)> {
        if i == 0 || i >= self.path.len() {
            return None;
        }
        let v = &self.path.vertices;
        let t = (v[i + 1].x - v[i].x, v[i + 1].y - v[i].y);
        if t != (v[i].x - v[i - 1].x, v[i].y - v[i - 1].y) {
            return None;
        }
        match self.kind {
            HostKind::Crossing => (t == (1, 0)).then_some((t, (0, 1))),
            HostKind::Arc => Some((t, (t.1, -t.0))),
        }
    }
}

fn index_of(path: &LatticePath) -> HashMap<Vertex, usize> {
    path.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect()
}

/// The face at `v + ½(a + b)` for perpendicular unit steps a and b.
pub(crate) fn corner_face(v: Vertex, a: Step, b: Step) -> DualVertex {
    let dx = a.0 + b.0;
    let dy = a.1 + b.1;
    DualVertex::new(v.x + (dx - 1) / 2, v.y + (dy - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corner_faces() {
        let v = Vertex::new(3, 4);
        assert_eq!(corner_face(v, (-1, 0), (0, 1)), DualVertex::new(2, 4));
        assert_eq!(corner_face(v, (1, 0), (0, 1)), DualVertex::new(3, 4));
        assert_eq!(corner_face(v, (1, 0), (0, -1)), DualVertex::new(3, 3));
        assert_eq!(corner_face(v, (-1, 0), (0, -1)), DualVertex::new(2, 3));
    }

    #[test]
    fn straight_crossing_splits_the_box() {
        let g = BoxGeometry::new(3).unwrap();
        let row: Vec<Vertex> = (-3..=3).map(|x| Vertex::new(x, 0)).collect();
        let c = Config::with_open_paths(g, &[&row]).unwrap();
        let h = Host::lowest_crossing(&c).unwrap();
        assert!(h.is_above(Vertex::new(0, 1)));
        assert!(!h.is_above(Vertex::new(0, 0)));
        assert!(!h.is_above(Vertex::new(0, -1)));
        assert!(h.is_above_dual(DualVertex::new(0, 0)));
        assert!(!h.is_above_dual(DualVertex::new(0, -1)));
        assert!(!h.is_above_dual(DualVertex::new(0, 3)), "top ring is outside the box");
        assert_eq!(h.frame(0), None);
        assert_eq!(h.frame(3), Some(((1, 0), (0, 1))));
    }
}
