//! Index-level adjacency of the primal and dual lattices of a box, shared by every
//! search in the crate.

use crate::lattice::{BoxGeometry, Config, DualVertex, EdgeId, Region, Vertex};

/// Which sub-lattice a path lives on and which edge state it needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Color {
    /// Primal vertices joined by open edges.
    Open,
    /// Dual vertices joined by dual edges whose primal edge is closed.
    ClosedDual,
}

impl Color {
    /// Whether an edge with primal state `open` can be traversed by a path of this color.
    #[inline]
    pub fn passes(self, open: bool) -> bool {
        match self {
            Color::Open => open,
            Color::ClosedDual => !open,
        }
    }
}

/// Sites (primal vertices or dual vertices) of a box, addressed by dense index.
#[derive(Debug, Clone, Copy)]
pub struct Sites {
    geometry: BoxGeometry,
    color: Color,
}

impl Sites {
    pub fn new(geometry: BoxGeometry, color: Color) -> Self {
        Sites { geometry, color }
    }

    pub fn primal(geometry: BoxGeometry) -> Self {
        Sites::new(geometry, Color::Open)
    }

    pub fn dual(geometry: BoxGeometry) -> Self {
        Sites::new(geometry, Color::ClosedDual)
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn geometry(&self) -> &BoxGeometry {
        &self.geometry
    }

    pub fn count(&self) -> usize {
        match self.color {
            Color::Open => self.geometry.vertex_count(),
            Color::ClosedDual => self.geometry.dual_vertex_count(),
        }
    }

    /// Real coordinates of a site.
    pub fn point(&self, s: usize) -> (f64, f64) {
        match self.color {
            Color::Open => {
                let v = self.geometry.vertex_at(s);
                (v.x as f64, v.y as f64)
            }
            Color::ClosedDual => self.geometry.dual_vertex_at(s).position(),
        }
    }

    pub fn in_region<R: Region + ?Sized>(&self, region: &R, s: usize) -> bool {
        let (x, y) = self.point(s);
        region.contains_point(x, y)
    }

    pub fn vertex(&self, s: usize) -> Vertex {
        self.geometry.vertex_at(s)
    }

    pub fn dual_vertex(&self, s: usize) -> DualVertex {
        self.geometry.dual_vertex_at(s)
    }

    pub fn index_of_vertex(&self, v: Vertex) -> Option<usize> {
        self.geometry.vertex_index(v)
    }

    pub fn index_of_dual(&self, d: DualVertex) -> Option<usize> {
        self.geometry.dual_index(d)
    }

    /// Calls `f(neighbor, edge)` for every lattice neighbour, regardless of edge state.
    #[inline]
    pub fn for_each_neighbor(&self, s: usize, mut f: impl FnMut(usize, EdgeId)) {
        let two_n = 2 * self.geometry.half_side() as usize;
        let side = two_n + 1;
        let h = two_n * side;
        match self.color {
            Color::Open => {
                let (cx, cy) = (s % side, s / side);
                if cx < two_n {
                    f(s + 1, EdgeId((cx + cy * two_n) as u32));
                }
                if cy < two_n {
                    f(s + side, EdgeId((h + cx + cy * side) as u32));
                }
                if cx > 0 {
                    f(s - 1, EdgeId((cx - 1 + cy * two_n) as u32));
                }
                if cy > 0 {
                    f(s - side, EdgeId((h + cx + (cy - 1) * side) as u32));
                }
            }
            Color::ClosedDual => {
                let sd = side + 1;
                let (dx, dy) = (s % sd, s / sd);
                let vertical_row = (1..=two_n).contains(&dy);
                if vertical_row && dx <= two_n {
                    f(s + 1, EdgeId((h + dx + (dy - 1) * side) as u32));
                }
                if (1..=two_n).contains(&dx) && dy <= two_n {
                    f(s + sd, EdgeId((dx - 1 + dy * two_n) as u32));
                }
                if vertical_row && dx >= 1 {
                    f(s - 1, EdgeId((h + dx - 1 + (dy - 1) * side) as u32));
                }
                if (1..=two_n).contains(&dx) && dy >= 1 {
                    f(s - sd, EdgeId((dx - 1 + (dy - 1) * two_n) as u32));
                }
            }
        }
    }

    /// Neighbours reachable through an edge of this color.
    #[inline]
    pub fn for_each_passable(&self, config: &Config, s: usize, mut f: impl FnMut(usize, EdgeId)) {
        let color = self.color;
        self.for_each_neighbor(s, |t, e| {
            if color.passes(config.is_open(e)) {
                f(t, e)
            }
        })
    }

    /// Membership of every site in `region`, precomputed.
    pub fn region_flags<R: Region + ?Sized>(&self, region: &R) -> Vec<bool> {
        (0..self.count()).map(|s| self.in_region(region, s)).collect()
    }
}
