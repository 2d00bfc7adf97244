use super::geometry::{BoxGeometry, DualVertex, EdgeId, Vertex};
use crate::error::{Error, Result};

/// Axis-aligned rectangle in real coordinates, either closed or open.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub open: bool,
}

impl Rect {
    pub fn closed(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0, x1, y0, y1, open: false }
    }

    pub fn open(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0, x1, y0, y1, open: true }
    }

    /// Closed square [-r, r]².
    pub fn centered(r: f64) -> Self {
        Rect::closed(-r, r, -r, r)
    }

    pub fn contains(&self, x: f64, y: f64) -> bool {
        if self.open {
            self.x0 < x && x < self.x1 && self.y0 < y && y < self.y1
        } else {
            self.x0 <= x && x <= self.x1 && self.y0 <= y && y <= self.y1
        }
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Self {
        Rect { x0: self.x0 + dx, x1: self.x1 + dx, y0: self.y0 + dy, y1: self.y1 + dy, ..*self }
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    /// Smallest and largest lattice coordinates inside the rectangle along x.
    pub fn lattice_x_range(&self) -> (i32, i32) {
        lattice_range(self.x0, self.x1, self.open)
    }

    pub fn lattice_y_range(&self) -> (i32, i32) {
        lattice_range(self.y0, self.y1, self.open)
    }
}

fn lattice_range(lo: f64, hi: f64, open: bool) -> (i32, i32) {
    let mut a = lo.ceil() as i32;
    let mut b = hi.floor() as i32;
    if open {
        if a as f64 == lo {
            a += 1;
        }
        if b as f64 == hi {
            b -= 1;
        }
    }
    (a, b)
}

/// A region of the plane given as an ordered list of rectangles with inclusion flags.
/// A point belongs to the region iff the last rectangle containing it is an inclusion.
/// Edges belong iff both endpoints do.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RegionMask {
    parts: Vec<(Rect, bool)>,
}

impl RegionMask {
    pub fn empty() -> Self {
        RegionMask { parts: Vec::new() }
    }

    pub fn from_rect(r: Rect) -> Self {
        RegionMask { parts: vec![(r, true)] }
    }

    /// The closed box [-m, m]².
    pub fn full_box(m: u32) -> Self {
        Self::from_rect(Rect::centered(m as f64))
    }

    /// [-outer, outer]² minus [-inner, inner]²; `inner = 0` removes nothing.
    pub fn annulus(inner: u32, outer: u32) -> Result<Self> {
        if inner >= outer {
            return Err(Error::InvalidAnnulus { inner, outer });
        }
        let mut m = Self::full_box(outer);
        if inner > 0 {
            m = m.minus(Rect::centered(inner as f64));
        }
        Ok(m)
    }

    pub fn union(mut self, r: Rect) -> Self {
        self.parts.push((r, true));
        self
    }

    pub fn minus(mut self, r: Rect) -> Self {
        self.parts.push((r, false));
        self
    }

    /// Union of two masks (membership in either).
    pub fn join(&self, other: &RegionMask) -> UnionMask {
        UnionMask(vec![self.clone(), other.clone()])
    }

    pub fn parts(&self) -> &[(Rect, bool)] {
        &self.parts
    }

    pub fn contains_point(&self, x: f64, y: f64) -> bool {
        self.parts
            .iter()
            .rev()
            .find(|(r, _)| r.contains(x, y))
            .is_some_and(|&(_, inc)| inc)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.contains_point(v.x as f64, v.y as f64)
    }

    pub fn contains_dual(&self, d: DualVertex) -> bool {
        let (x, y) = d.position();
        self.contains_point(x, y)
    }

    pub fn contains_edge(&self, geometry: &BoxGeometry, e: EdgeId) -> bool {
        geometry
            .endpoints(e)
            .is_ok_and(|(a, b)| self.contains_vertex(a) && self.contains_vertex(b))
    }

    /// Included rectangles all lie inside [-n, n]².
    pub fn within(&self, geometry: &BoxGeometry) -> bool {
        let n = geometry.n() as f64;
        self.parts
            .iter()
            .filter(|(_, inc)| *inc)
            .all(|(r, _)| r.x0 >= -n && r.x1 <= n && r.y0 >= -n && r.y1 <= n)
    }

    pub fn check_within(&self, geometry: &BoxGeometry) -> Result<()> {
        if self.within(geometry) {
            Ok(())
        } else {
            Err(Error::OutsideBox { n: geometry.half_side() })
        }
    }

    /// Vertices of the box that belong to the mask.
    pub fn vertices<'a>(&'a self, geometry: &'a BoxGeometry) -> impl Iterator<Item = Vertex> + 'a {
        geometry.vertices().filter(move |&v| self.contains_vertex(v))
    }
}

/// Union of several masks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct UnionMask(pub Vec<RegionMask>);

impl UnionMask {
    pub fn contains_point(&self, x: f64, y: f64) -> bool {
        self.0.iter().any(|m| m.contains_point(x, y))
    }
}

/// Anything that can answer point membership.
pub trait Region {
    fn contains_point(&self, x: f64, y: f64) -> bool;

    fn contains_vertex(&self, v: Vertex) -> bool {
        self.contains_point(v.x as f64, v.y as f64)
    }

    fn contains_dual(&self, d: DualVertex) -> bool {
        let (x, y) = d.position();
        self.contains_point(x, y)
    }
}

impl Region for RegionMask {
    fn contains_point(&self, x: f64, y: f64) -> bool {
        RegionMask::contains_point(self, x, y)
    }
}

impl Region for UnionMask {
    fn contains_point(&self, x: f64, y: f64) -> bool {
        UnionMask::contains_point(self, x, y)
    }
}

impl Region for Rect {
    fn contains_point(&self, x: f64, y: f64) -> bool {
        self.contains(x, y)
    }
}

/// Whole plane.
#[derive(Debug, Clone, Copy, Default)]
pub struct Everywhere;

impl Region for Everywhere {
    fn contains_point(&self, _: f64, _: f64) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_counts_and_membership() {
        let g = BoxGeometry::new(2).unwrap();
        let a = RegionMask::annulus(1, 2).unwrap();
        assert_eq!(a.vertices(&g).count(), 16);
        assert!(a.contains_vertex(Vertex::new(2, 0)));
        assert!(!a.contains_vertex(Vertex::new(1, 0)));
        let full = RegionMask::annulus(0, 2).unwrap();
        assert_eq!(full.vertices(&g).count(), 25);
        assert_eq!(
            RegionMask::annulus(2, 2),
            Err(Error::InvalidAnnulus { inner: 2, outer: 2 })
        );
    }

    #[test]
    fn open_rectangles_exclude_their_boundary() {
        let m = RegionMask::full_box(3).minus(Rect::open(-2.0, 2.0, -2.0, 2.0));
        assert!(m.contains_vertex(Vertex::new(2, 0)));
        assert!(!m.contains_vertex(Vertex::new(1, 1)));
        assert!(m.contains_dual(DualVertex::new(2, 0))); // (2.5, 0.5)
        assert!(!m.contains_dual(DualVertex::new(1, 0))); // (1.5, 0.5)
        assert_eq!(Rect::open(-2.0, 2.0, 0.0, 1.0).lattice_x_range(), (-1, 1));
        assert_eq!(Rect::closed(-2.5, 2.0, 0.0, 1.0).lattice_x_range(), (-2, 2));
    }

    #[test]
    fn within_box() {
        let g = BoxGeometry::new(4).unwrap();
        assert!(RegionMask::annulus(1, 4).unwrap().within(&g));
        assert!(!RegionMask::annulus(1, 5).unwrap().within(&g));
    }
}
