//! Box geometry, edge indexing, the dual lattice, configurations and region masks.

mod config;
mod geometry;
mod region;

pub use config::Config;
pub use geometry::{BoxGeometry, DualEdge, DualVertex, EdgeId, Orientation, Vertex, MAX_HALF_SIDE};
pub use region::{Everywhere, Rect, Region, RegionMask, UnionMask};

use crate::error::Result;

pub fn make_box(n: u32) -> Result<BoxGeometry> {
    BoxGeometry::new(n)
}

pub fn sample_config(geometry: BoxGeometry, p: f64, seed: u64) -> Result<Config> {
    Config::sample(geometry, p, seed)
}

pub fn dual_of(geometry: &BoxGeometry, e: EdgeId) -> Result<DualEdge> {
    geometry.dual_of(e)
}

pub fn annulus(inner: u32, outer: u32) -> Result<RegionMask> {
    RegionMask::annulus(inner, outer)
}
