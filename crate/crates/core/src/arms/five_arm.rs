//! Five-arm points near the two ends of the U-shaped region at scale s = 2ᵏ.
//!
//! Around the left point the arms run clockwise as: closed from the north-west face
//! straight up, open up, open right, closed from the south-east face straight down, open
//! left. The right point uses the mirror image. Arms land on the boundary of a landing
//! rectangle ([-3s, -7s/3] × [-s/3, s/3] on the left) in fixed windows.

use super::spec::{Arm, ArmDetector, ArmSpec, Center, Start};
use crate::error::Result;
use crate::lattice::{BoxGeometry, Config, Rect, Region, Vertex};

/// Which end of the U.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum StarSide {
    Left,
    Right,
}

/// Scale and side of a five-arm search: the landing rectangle, windows and search box
/// all follow from these two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiveArmLanding {
    pub k: u32,
    pub side: StarSide,
}

fn scale(k: u32) -> f64 {
    (1u64 << k) as f64
}

impl FiveArmLanding {
    pub fn new(k: u32, side: StarSide) -> Self {
        FiveArmLanding { k, side }
    }

    /// The box the five-arm point must lie in (B₁ or B₂).
    pub fn search_box(&self) -> Rect {
        let s = scale(self.k);
        let r = Rect::closed(-17.0 * s / 6.0, -15.0 * s / 6.0, -s / 6.0, s / 6.0);
        self.orient(r)
    }

    /// The rectangle whose boundary the arms end on (B₁′ or B₂′).
    pub fn domain(&self) -> Rect {
        let s = scale(self.k);
        self.orient(Rect::closed(-3.0 * s, -7.0 * s / 3.0, -s / 3.0, s / 3.0))
    }

    fn orient(&self, r: Rect) -> Rect {
        match self.side {
            StarSide::Left => r,
            StarSide::Right => Rect { x0: -r.x1, x1: -r.x0, ..r },
        }
    }

    /// Arm spec centered at `v`.
    pub fn spec_at(&self, v: Vertex) -> ArmSpec {
        let s = scale(self.k);
        let top = s / 3.0;
        let bottom = -s / 3.0;
        let hseg = |a: f64, b: f64, y: f64| Rect::closed(a, b, y, y);
        let vseg = |x: f64| Rect::closed(x, x, -s / 3.0, s / 3.0);
        let arms = match self.side {
            StarSide::Left => vec![
                Arm::closed()
                    .landing(hseg(-17.0 * s / 6.0, -8.0 * s / 3.0, top))
                    .starting(Start::Dual { from: (-1, 0), to: Some((-1, 1)) }),
                Arm::open().landing(hseg(-8.0 * s / 3.0, -15.0 * s / 6.0, top)).starting(Start::Step(0, 1)),
                Arm::open().landing(hseg(-8.0 * s / 3.0, -7.0 * s / 3.0, bottom)).starting(Start::Step(1, 0)),
                Arm::closed()
                    .landing(hseg(-3.0 * s, -8.0 * s / 3.0, bottom))
                    .starting(Start::Dual { from: (0, -1), to: Some((0, -2)) }),
                Arm::open().landing(vseg(-3.0 * s)).starting(Start::Step(-1, 0)),
            ],
            StarSide::Right => vec![
                Arm::open().landing(hseg(15.0 * s / 6.0, 8.0 * s / 3.0, top)).starting(Start::Step(0, 1)),
                Arm::closed()
                    .landing(hseg(8.0 * s / 3.0, 17.0 * s / 6.0, top))
                    .starting(Start::Dual { from: (0, 0), to: Some((0, 1)) }),
                Arm::open().landing(vseg(3.0 * s)).starting(Start::Step(1, 0)),
                Arm::closed()
                    .landing(hseg(7.0 * s / 3.0, 3.0 * s, bottom))
                    .starting(Start::Dual { from: (-1, -1), to: Some((-1, -2)) }),
                Arm::open().landing(vseg(7.0 * s / 3.0)).starting(Start::Step(-1, 0)),
            ],
        };
        ArmSpec { center: Center::Vertex(v), domain: self.domain(), arms }
    }
}

/// Reusable scanner for one landing spec on one box geometry.
#[derive(Debug, Clone)]
pub struct FiveArmScanner {
    landing: FiveArmLanding,
    detector: ArmDetector,
}

impl FiveArmScanner {
    pub fn new(geometry: BoxGeometry, landing: FiveArmLanding) -> Result<Self> {
        let detector = ArmDetector::new(geometry, &landing.spec_at(Vertex::new(0, 0)))?;
        Ok(FiveArmScanner { landing, detector })
    }

    pub fn landing(&self) -> FiveArmLanding {
        self.landing
    }

    pub fn is_five_arm_point(&mut self, config: &Config, v: Vertex) -> Result<bool> {
        self.detector.check_at(config, Center::Vertex(v))
    }

    /// Every qualifying vertex of the box inside `search`, in (x, y) order.
    pub fn all_points<R: Region + ?Sized>(&mut self, config: &Config, search: &R) -> Result<Vec<Vertex>> {
        let g = *config.geometry();
        let mut out = Vec::new();
        let mut candidates: Vec<Vertex> = g.vertices().filter(|&v| search.contains_vertex(v)).collect();
        candidates.sort();
        for v in candidates {
            if self.is_five_arm_point(config, v)? {
                out.push(v);
            }
        }
        Ok(out)
    }
}

/// The first qualifying vertex (in (x, y) order) of `search`, if any.
pub fn detect_five_arm_point<R: Region + ?Sized>(
    config: &Config,
    search: &R,
    landing: FiveArmLanding,
) -> Result<Option<Vertex>> {
    Ok(FiveArmScanner::new(*config.geometry(), landing)?.all_points(config, search)?.into_iter().next())
}

/// All qualifying vertices of `search`.
pub fn five_arm_points<R: Region + ?Sized>(
    config: &Config,
    search: &R,
    landing: FiveArmLanding,
) -> Result<Vec<Vertex>> {
    FiveArmScanner::new(*config.geometry(), landing)?.all_points(config, search)
}
