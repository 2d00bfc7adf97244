//! The U-shaped region at scale s = 2ᵏ and the thinner bands inside it.

use crate::error::{Error, Result};
use crate::lattice::{Rect, Region, RegionMask, Vertex};

/// U(k) with its inner bands Ũ(k), Ṽ(k) and the five-arm search boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct URegion {
    pub k: u32,
    /// [-3s, 3s] × [-s/3, 3s] minus (-7s/3, 7s/3)².
    pub u: RegionMask,
    /// [-8s/3, 8s/3] × [-s/6, 8s/3] minus (-15s/6, 15s/6)².
    pub u_tilde: RegionMask,
    /// [-17s/6, 17s/6] × [-s/6, 17s/6] minus (-8s/3, 8s/3)².
    pub v_tilde: RegionMask,
    pub b1: Rect,
    pub b2: Rect,
}

/// Largest scale whose coordinates (3·2ᵏ) stay well inside the lattice index range.
pub const MAX_SCALE: u32 = 20;

pub fn u_region(k: u32) -> Result<URegion> {
    if k == 0 {
        return Err(Error::InvalidArmSpec("scale must be at least 1"));
    }
    if k > MAX_SCALE {
        return Err(Error::BoxTooLarge(k));
    }
    let s = (1u64 << k) as f64;
    let band = |outer: f64, bottom: f64, hole: f64| {
        RegionMask::from_rect(Rect::closed(-outer, outer, bottom, outer))
            .minus(Rect::open(-hole, hole, -hole, hole))
    };
    let b1 = Rect::closed(-17.0 * s / 6.0, -15.0 * s / 6.0, -s / 6.0, s / 6.0);
    Ok(URegion {
        k,
        u: band(3.0 * s, -s / 3.0, 7.0 * s / 3.0),
        u_tilde: band(8.0 * s / 3.0, -s / 6.0, 15.0 * s / 6.0),
        v_tilde: band(17.0 * s / 6.0, -s / 6.0, 8.0 * s / 3.0),
        b1,
        b2: Rect { x0: -b1.x1, x1: -b1.x0, ..b1 },
    })
}

impl URegion {
    pub fn scale(&self) -> f64 {
        (1u64 << self.k) as f64
    }

    /// Ũ ∪ Ṽ.
    pub fn band(&self) -> crate::lattice::UnionMask {
        self.u_tilde.join(&self.v_tilde)
    }

    /// Euclidean distance from a point of U to the boundary of U.
    pub fn distance_to_boundary(&self, x: f64, y: f64) -> f64 {
        let s = self.scale();
        let outer = (x + 3.0 * s).min(3.0 * s - x).min(y + s / 3.0).min(3.0 * s - y);
        let h = 7.0 * s / 3.0;
        let dx = (x.abs() - h).max(0.0);
        let dy = (y.abs() - h).max(0.0);
        outer.min(dx.hypot(dy))
    }

    /// Lattice vertices of Ũ ∪ Ṽ.
    pub fn band_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let r = (3 * (1i32 << self.k)) as i32;
        let band = self.band();
        (-r..=r).flat_map(move |x| (-r..=r).map(move |y| Vertex::new(x, y))).filter(move |&v| band.contains_vertex(v))
    }
}
