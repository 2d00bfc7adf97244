use crate::error::{Error, Result};

/// A vertex of Z².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Vertex {
    pub x: i32,
    pub y: i32,
}

impl Vertex {
    pub const fn new(x: i32, y: i32) -> Self {
        Vertex { x, y }
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Vertex::new(self.x + dx, self.y + dy)
    }

    /// ℓ∞ norm.
    pub fn sup_norm(self) -> i32 {
        self.x.abs().max(self.y.abs())
    }
}

/// A vertex of the dual lattice Z² + (½, ½), stored by its lower-left primal corner:
/// `DualVertex { x, y }` sits at `(x + ½, y + ½)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct DualVertex {
    pub x: i32,
    pub y: i32,
}

impl DualVertex {
    pub const fn new(x: i32, y: i32) -> Self {
        DualVertex { x, y }
    }

    /// The dual vertex at the centre of the unit face whose lower-left corner is `v`.
    pub fn north_east_of(v: Vertex) -> Self {
        DualVertex::new(v.x, v.y)
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        DualVertex::new(self.x + dx, self.y + dy)
    }

    /// Real coordinates of the dual vertex.
    pub fn position(self) -> (f64, f64) {
        (self.x as f64 + 0.5, self.y as f64 + 0.5)
    }

    /// ℓ∞ norm of the real position.
    pub fn sup_norm(self) -> f64 {
        let (x, y) = self.position();
        x.abs().max(y.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// Index of an edge of the box. Horizontal edges come first, row-major over their
/// lower-left endpoint, then vertical edges in the same order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The box B(n) = [-n, n]² ∩ Z² with its nearest-neighbour edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxGeometry {
    n: u32,
}

/// Largest half-side whose edge count still fits in a `u32` index.
pub const MAX_HALF_SIDE: u32 = 16_383;

impl BoxGeometry {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyBox(n));
        }
        if n > MAX_HALF_SIDE {
            return Err(Error::BoxTooLarge(n));
        }
        Ok(BoxGeometry { n })
    }

    pub fn half_side(&self) -> u32 {
        self.n
    }

    pub fn n(&self) -> i32 {
        self.n as i32
    }

    /// Number of vertices per row, 2n + 1.
    pub fn side(&self) -> usize {
        2 * self.n as usize + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.side() * self.side()
    }

    fn horizontal_count(&self) -> usize {
        2 * self.n as usize * self.side()
    }

    /// 4n(2n + 1).
    pub fn edge_count(&self) -> usize {
        2 * self.horizontal_count()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.sup_norm() <= self.n()
    }

    pub fn vertex_index(&self, v: Vertex) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        let n = self.n();
        Some((v.x + n) as usize + (v.y + n) as usize * self.side())
    }

    pub fn vertex_at(&self, index: usize) -> Vertex {
        let s = self.side();
        let n = self.n();
        Vertex::new((index % s) as i32 - n, (index / s) as i32 - n)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(move |i| self.vertex_at(i))
    }

    /// Edge with lower-left endpoint `v` and the given orientation.
    pub fn encode(&self, v: Vertex, orientation: Orientation) -> Option<EdgeId> {
        let n = self.n();
        match orientation {
            Orientation::Horizontal => {
                if v.x < -n || v.x >= n || v.y < -n || v.y > n {
                    return None;
                }
                let idx = (v.x + n) as usize + (v.y + n) as usize * (2 * self.n as usize);
                Some(EdgeId(idx as u32))
            }
            Orientation::Vertical => {
                if v.x < -n || v.x > n || v.y < -n || v.y >= n {
                    return None;
                }
                let idx = self.horizontal_count()
                    + (v.x + n) as usize
                    + (v.y + n) as usize * self.side();
                Some(EdgeId(idx as u32))
            }
        }
    }

    /// Lower-left endpoint and orientation of an edge.
    pub fn decode(&self, e: EdgeId) -> Result<(Vertex, Orientation)> {
        let idx = e.index();
        let n = self.n();
        let h = self.horizontal_count();
        if idx < h {
            let w = 2 * self.n as usize;
            Ok((
                Vertex::new((idx % w) as i32 - n, (idx / w) as i32 - n),
                Orientation::Horizontal,
            ))
        } else if idx < self.edge_count() {
            let j = idx - h;
            let s = self.side();
            Ok((
                Vertex::new((j % s) as i32 - n, (j / s) as i32 - n),
                Orientation::Vertical,
            ))
        } else {
            Err(Error::InvalidEdge(idx))
        }
    }

    /// Both endpoints, lower-left first.
    pub fn endpoints(&self, e: EdgeId) -> Result<(Vertex, Vertex)> {
        let (v, o) = self.decode(e)?;
        Ok(match o {
            Orientation::Horizontal => (v, v.offset(1, 0)),
            Orientation::Vertical => (v, v.offset(0, 1)),
        })
    }

    /// Edge joining two nearest-neighbour vertices, if both lie in the box.
    pub fn edge_between(&self, a: Vertex, b: Vertex) -> Option<EdgeId> {
        let (lo, hi) = if (a.x, a.y) <= (b.x, b.y) { (a, b) } else { (b, a) };
        match (hi.x - lo.x, hi.y - lo.y) {
            (1, 0) => self.encode(lo, Orientation::Horizontal),
            (0, 1) => self.encode(lo, Orientation::Vertical),
            _ => None,
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    /// Neighbours of `v` inside the box together with the connecting edges.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, EdgeId)> + '_ {
        const STEPS: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
        STEPS.iter().filter_map(move |&(dx, dy)| {
            let w = v.offset(dx, dy);
            self.edge_between(v, w).map(|e| (w, e))
        })
    }

    // Dual lattice: dual vertices (x + ½, y + ½) with x, y ∈ [-n-1, n].

    pub fn dual_side(&self) -> usize {
        2 * self.n as usize + 2
    }

    pub fn dual_vertex_count(&self) -> usize {
        self.dual_side() * self.dual_side()
    }

    pub fn dual_contains(&self, d: DualVertex) -> bool {
        let n = self.n();
        d.x >= -n - 1 && d.x <= n && d.y >= -n - 1 && d.y <= n
    }

    pub fn dual_index(&self, d: DualVertex) -> Option<usize> {
        if !self.dual_contains(d) {
            return None;
        }
        let n = self.n();
        Some((d.x + n + 1) as usize + (d.y + n + 1) as usize * self.dual_side())
    }

    pub fn dual_vertex_at(&self, index: usize) -> DualVertex {
        let s = self.dual_side();
        let n = self.n();
        DualVertex::new((index % s) as i32 - n - 1, (index / s) as i32 - n - 1)
    }

    /// Primal edge crossed by the dual edge between two adjacent dual vertices.
    pub fn dual_edge_between(&self, a: DualVertex, b: DualVertex) -> Option<EdgeId> {
        let (lo, hi) = if (a.x, a.y) <= (b.x, b.y) { (a, b) } else { (b, a) };
        match (hi.x - lo.x, hi.y - lo.y) {
            // horizontal dual edge crosses the vertical primal edge {(x+1, y), (x+1, y+1)}
            (1, 0) => self.encode(Vertex::new(lo.x + 1, lo.y), Orientation::Vertical),
            // vertical dual edge crosses the horizontal primal edge {(x, y+1), (x+1, y+1)}
            (0, 1) => self.encode(Vertex::new(lo.x, lo.y + 1), Orientation::Horizontal),
            _ => None,
        }
    }

    pub fn dual_neighbors(&self, d: DualVertex) -> impl Iterator<Item = (DualVertex, EdgeId)> + '_ {
        const STEPS: [(i32, i32); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
        STEPS.iter().filter_map(move |&(dx, dy)| {
            let w = d.offset(dx, dy);
            self.dual_edge_between(d, w).map(|e| (w, e))
        })
    }

    /// The dual edge e* sharing its midpoint with `e`.
    pub fn dual_of(&self, e: EdgeId) -> Result<DualEdge> {
        let (v, o) = self.decode(e)?;
        let (a, b) = match o {
            Orientation::Horizontal => (DualVertex::new(v.x, v.y - 1), DualVertex::new(v.x, v.y)),
            Orientation::Vertical => (DualVertex::new(v.x - 1, v.y), DualVertex::new(v.x, v.y)),
        };
        Ok(DualEdge { primal: e, ends: (a, b) })
    }

    /// Inverse of [`BoxGeometry::dual_of`].
    pub fn primal_of(&self, d: &DualEdge) -> Result<EdgeId> {
        self.dual_edge_between(d.ends.0, d.ends.1)
            .ok_or(Error::InvalidEdge(d.primal.index()))
    }

    pub fn is_left_side(&self, v: Vertex) -> bool {
        v.x == -self.n()
    }

    pub fn is_right_side(&self, v: Vertex) -> bool {
        v.x == self.n()
    }

    pub fn is_top_side(&self, v: Vertex) -> bool {
        v.y == self.n()
    }

    pub fn is_bottom_side(&self, v: Vertex) -> bool {
        v.y == -self.n()
    }

    /// Dual vertices at height -n - ½, just below the box.
    pub fn is_dual_bottom(&self, d: DualVertex) -> bool {
        d.y == -self.n() - 1
    }

    pub fn is_dual_top(&self, d: DualVertex) -> bool {
        d.y == self.n()
    }

    /// Dual vertices on the ring at ℓ∞ distance n + ½.
    pub fn is_dual_ring(&self, d: DualVertex) -> bool {
        let n = self.n();
        d.x == -n - 1 || d.x == n || d.y == -n - 1 || d.y == n
    }

    /// Dual vertices strictly inside the box (unit faces of B(n)).
    pub fn is_face(&self, d: DualVertex) -> bool {
        self.dual_contains(d) && !self.is_dual_ring(d)
    }
}

/// A dual edge together with the primal edge it crosses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DualEdge {
    pub primal: EdgeId,
    pub ends: (DualVertex, DualVertex),
}

impl DualEdge {
    /// Midpoint in real coordinates.
    pub fn midpoint(&self) -> (f64, f64) {
        let (a, b) = (self.ends.0.position(), self.ends.1.position());
        ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
    }
}
