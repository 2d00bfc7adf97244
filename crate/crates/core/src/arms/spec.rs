//! Disjoint monochromatic arms from a center to the boundary of a rectangle.
//!
//! Arms of one color are found together by a single vertex-disjoint flow, one target group
//! per arm. Open and closed-dual arms never cross each other, so the two flows are
//! independent. A path stops at the first boundary site it meets; it counts only if that
//! site lies in the arm's landing window.

use crate::connectivity::{Color, FlowQuery, FlowWorkspace, Sites};
use crate::error::{Error, Result};
use crate::lattice::{BoxGeometry, Config, DualVertex, Rect, Vertex};

/// Where the arms start.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Center {
    Vertex(Vertex),
    /// The edge between two adjacent vertices; open arms leave from its endpoints, the
    /// edge itself may be closed.
    Edge(Vertex, Vertex),
    /// The boundary of the inner box [-r, r]² (annulus events).
    Hole(u32),
}

/// Constraint on the first step of an arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    /// Any admissible first site.
    Free,
    /// Open arm from a vertex center whose first edge goes to `center + (dx, dy)`.
    Step(i32, i32),
    /// Closed arm leaving from the dual vertex at `from` (offset from the face north-east
    /// of the center vertex, or of the edge's first endpoint), optionally forced to cross
    /// into `to` first.
    Dual { from: (i32, i32), to: Option<(i32, i32)> },
}

/// One arm: its color, an optional landing window (a segment of the domain boundary)
/// and its first-step constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arm {
    pub color: Color,
    pub window: Option<Rect>,
    pub start: Start,
}

impl Arm {
    pub fn open() -> Self {
        Arm { color: Color::Open, window: None, start: Start::Free }
    }

    pub fn closed() -> Self {
        Arm { color: Color::ClosedDual, window: None, start: Start::Free }
    }

    pub fn landing(mut self, window: Rect) -> Self {
        self.window = Some(window);
        self
    }

    pub fn starting(mut self, start: Start) -> Self {
        self.start = start;
        self
    }
}

/// An arm event: arms listed in clockwise order around the center, ending on the boundary
/// of `domain`. The domain's lattice extents are rounded outward.
#[derive(Debug, Clone, PartialEq)]
pub struct ArmSpec {
    pub center: Center,
    pub domain: Rect,
    pub arms: Vec<Arm>,
}

impl ArmSpec {
    /// A₃(n) in B(n): two disjoint open arms from the edge {0, e₁} and a closed arm from
    /// (½, -½).
    pub fn three_arm(n: u32) -> Self {
        ArmSpec {
            center: Center::Edge(Vertex::new(0, 0), Vertex::new(1, 0)),
            domain: Rect::centered(n as f64),
            arms: vec![
                Arm::open(),
                Arm::open(),
                Arm::closed().starting(Start::Dual { from: (0, -1), to: None }),
            ],
        }
    }

    /// One open and one closed crossing of B(n) \ B(d).
    pub fn two_arm_annulus(d: u32, n: u32) -> Self {
        ArmSpec {
            center: Center::Hole(d),
            domain: Rect::centered(n as f64),
            arms: vec![Arm::open(), Arm::closed()],
        }
    }
}

/// Whether the arms of `spec` exist in `config`.
pub fn detect_arm_event(config: &Config, spec: &ArmSpec) -> Result<bool> {
    ArmDetector::new(*config.geometry(), spec)?.check(config)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

/// Lattice extents of the domain, rounded outward.
#[derive(Debug, Clone, Copy)]
struct Extents {
    x0: i32,
    x1: i32,
    y0: i32,
    y1: i32,
}

impl Extents {
    fn primal_sides(&self, v: Vertex) -> [Option<Side>; 2] {
        let h = if v.y == self.y1 {
            Some(Side::Top)
        } else if v.y == self.y0 {
            Some(Side::Bottom)
        } else {
            None
        };
        let w = if v.x == self.x0 {
            Some(Side::Left)
        } else if v.x == self.x1 {
            Some(Side::Right)
        } else {
            None
        };
        [h, w]
    }

    fn dual_sides(&self, d: DualVertex) -> [Option<Side>; 2] {
        let h = if d.y == self.y1 {
            Some(Side::Top)
        } else if d.y == self.y0 - 1 {
            Some(Side::Bottom)
        } else {
            None
        };
        let w = if d.x == self.x0 - 1 {
            Some(Side::Left)
        } else if d.x == self.x1 {
            Some(Side::Right)
        } else {
            None
        };
        [h, w]
    }

    fn contains(&self, v: Vertex) -> bool {
        (self.x0..=self.x1).contains(&v.x) && (self.y0..=self.y1).contains(&v.y)
    }

    fn interior(&self, v: Vertex) -> bool {
        self.x0 < v.x && v.x < self.x1 && self.y0 < v.y && v.y < self.y1
    }

    fn dual_contains(&self, d: DualVertex) -> bool {
        (self.x0 - 1..=self.x1).contains(&d.x) && (self.y0 - 1..=self.y1).contains(&d.y)
    }
}

const EPS: f64 = 1e-9;

/// A landing window: a side and a closed interval along it.
#[derive(Debug, Clone, Copy)]
struct Window {
    side: Side,
    lo: f64,
    hi: f64,
}

impl Window {
    fn locate(w: &Rect, domain: &Rect) -> Result<Self> {
        let within = |lo: f64, hi: f64, a: f64, b: f64| lo >= a - EPS && hi <= b + EPS && lo <= hi;
        let side = if (w.y0 - w.y1).abs() < EPS && within(w.x0, w.x1, domain.x0, domain.x1) {
            if (w.y1 - domain.y1).abs() < EPS {
                Some(Side::Top)
            } else if (w.y0 - domain.y0).abs() < EPS {
                Some(Side::Bottom)
            } else {
                None
            }
        } else if (w.x0 - w.x1).abs() < EPS && within(w.y0, w.y1, domain.y0, domain.y1) {
            if (w.x0 - domain.x0).abs() < EPS {
                Some(Side::Left)
            } else if (w.x1 - domain.x1).abs() < EPS {
                Some(Side::Right)
            } else {
                None
            }
        } else {
            None
        };
        let side = side.ok_or(Error::InvalidArmSpec("landing window is not on the domain boundary"))?;
        let (lo, hi) = match side {
            Side::Top | Side::Bottom => (w.x0, w.x1),
            Side::Left | Side::Right => (w.y0, w.y1),
        };
        Ok(Window { side, lo, hi })
    }

    fn takes_vertex(&self, e: &Extents, v: Vertex) -> bool {
        e.primal_sides(v).contains(&Some(self.side)) && {
            let t = match self.side {
                Side::Top | Side::Bottom => v.x,
                _ => v.y,
            } as f64;
            self.lo - EPS <= t && t <= self.hi + EPS
        }
    }

    /// A ring dual vertex lands in the window when the boundary edge it sits across
    /// meets the window.
    fn takes_dual(&self, e: &Extents, d: DualVertex) -> bool {
        e.dual_sides(d).contains(&Some(self.side)) && {
            let t = match self.side {
                Side::Top | Side::Bottom => d.x,
                _ => d.y,
            } as f64;
            t <= self.hi + EPS && t + 1.0 >= self.lo - EPS
        }
    }
}

/// Flags for one color, independent of the center.
#[derive(Debug, Clone)]
struct ColorLayer {
    sites: Sites,
    allowed: Vec<bool>,
    terminal: Vec<bool>,
    /// Indices into the spec's arm list.
    arms: Vec<usize>,
    groups: Vec<Vec<usize>>,
    workspace: FlowWorkspace,
}

/// A reusable checker for one arm spec; the center may be moved between checks (the
/// domain and windows stay put).
#[derive(Debug, Clone)]
pub struct ArmDetector {
    geometry: BoxGeometry,
    spec: ArmSpec,
    extents: Extents,
    layers: Vec<ColorLayer>,
}

impl ArmDetector {
    pub fn new(geometry: BoxGeometry, spec: &ArmSpec) -> Result<Self> {
        if spec.arms.is_empty() {
            return Err(Error::InvalidArmSpec("no arms"));
        }
        if spec.domain.open {
            return Err(Error::InvalidArmSpec("domain must be a closed rectangle"));
        }
        let d = &spec.domain;
        let extents = Extents {
            x0: d.x0.floor() as i32,
            x1: d.x1.ceil() as i32,
            y0: d.y0.floor() as i32,
            y1: d.y1.ceil() as i32,
        };
        if extents.x0 >= extents.x1 || extents.y0 >= extents.y1 {
            return Err(Error::InvalidArmSpec("domain is degenerate"));
        }
        let n = geometry.n();
        if extents.x0 < -n || extents.x1 > n || extents.y0 < -n || extents.y1 > n {
            return Err(Error::OutsideBox { n: geometry.half_side() });
        }
        let windows = spec
            .arms
            .iter()
            .map(|a| a.window.as_ref().map(|w| Window::locate(w, d)).transpose())
            .collect::<Result<Vec<_>>>()?;
        for arm in &spec.arms {
            match (arm.color, arm.start, spec.center) {
                (_, Start::Free, _) => {}
                (Color::Open, Start::Step(dx, dy), Center::Vertex(_)) if dx.abs() + dy.abs() == 1 => {}
                (Color::ClosedDual, Start::Dual { to, from }, Center::Vertex(_) | Center::Edge(..)) => {
                    if let Some(t) = to {
                        if (t.0 - from.0).abs() + (t.1 - from.1).abs() != 1 {
                            return Err(Error::InvalidArmSpec("dual first step is not a dual edge"));
                        }
                    }
                }
                _ => return Err(Error::InvalidArmSpec("start constraint does not fit the arm")),
            }
        }
        if let Center::Edge(a, b) = spec.center {
            if (a.x - b.x).abs() + (a.y - b.y).abs() != 1 {
                return Err(Error::InvalidArmSpec("center edge endpoints are not adjacent"));
            }
        }
        if let Center::Hole(r) = spec.center {
            let r = r as i32;
            if -r <= extents.x0 || r >= extents.x1 || -r <= extents.y0 || r >= extents.y1 {
                return Err(Error::InvalidArmSpec("inner box does not fit inside the domain"));
            }
        }

        let mut layers = Vec::new();
        for color in [Color::Open, Color::ClosedDual] {
            let arms: Vec<usize> = (0..spec.arms.len()).filter(|&i| spec.arms[i].color == color).collect();
            if arms.is_empty() {
                continue;
            }
            if arms.len() > 32 {
                return Err(Error::InvalidArmSpec("too many arms of one color"));
            }
            let sites = Sites::new(geometry, color);
            let count = sites.count();
            let mut allowed = vec![false; count];
            let mut terminal = vec![false; count];
            let mut groups = vec![Vec::new(); arms.len()];
            for s in 0..count {
                let (inside, on_boundary) = match color {
                    Color::Open => {
                        let v = sites.vertex(s);
                        (extents.contains(v), extents.contains(v) && !extents.interior(v))
                    }
                    Color::ClosedDual => {
                        let dv = sites.dual_vertex(s);
                        (extents.dual_contains(dv), extents.dual_sides(dv) != [None, None])
                    }
                };
                if !inside {
                    continue;
                }
                allowed[s] = true;
                terminal[s] = on_boundary;
                if !on_boundary {
                    continue;
                }
                for (g, &ai) in arms.iter().enumerate() {
                    let takes = match (&windows[ai], color) {
                        (None, _) => true,
                        (Some(w), Color::Open) => w.takes_vertex(&extents, sites.vertex(s)),
                        (Some(w), Color::ClosedDual) => w.takes_dual(&extents, sites.dual_vertex(s)),
                    };
                    if takes {
                        groups[g].push(s);
                    }
                }
            }
            let workspace = FlowWorkspace::new(sites);
            layers.push(ColorLayer { sites, allowed, terminal, arms, groups, workspace });
        }
        Ok(ArmDetector { geometry, spec: spec.clone(), extents, layers })
    }

    pub fn spec(&self) -> &ArmSpec {
        &self.spec
    }

    /// Checks the event at the spec's own center.
    pub fn check(&mut self, config: &Config) -> Result<bool> {
        let center = self.spec.center;
        self.check_at(config, center)
    }

    /// Checks the event with the arms leaving from `center` instead of the spec's center.
    /// A center on or outside the domain boundary never qualifies.
    pub fn check_at(&mut self, config: &Config, center: Center) -> Result<bool> {
        if config.geometry() != &self.geometry {
            return Err(Error::InvalidArmSpec("configuration geometry differs from the detector's"));
        }
        let ext = self.extents;
        match center {
            Center::Vertex(v) if !ext.interior(v) => return Ok(false),
            Center::Edge(a, b) if !(ext.contains(a) && ext.contains(b)) => return Ok(false),
            _ => {}
        }
        let anchor = match center {
            Center::Vertex(v) | Center::Edge(v, _) => Some(v),
            Center::Hole(_) => None,
        };
        let focus = match center {
            Center::Vertex(v) => (v.x as f64, v.y as f64),
            Center::Edge(a, b) => ((a.x + b.x) as f64 / 2.0, (a.y + b.y) as f64 / 2.0),
            Center::Hole(_) => (0.0, 0.0),
        };
        let g = self.geometry;
        let arms = &self.spec.arms;
        // (arm index, landing point)
        let mut landings: Vec<(usize, (f64, f64))> = Vec::new();

        for layer in &mut self.layers {
            let sites = layer.sites;
            let mut allowed = layer.allowed.clone();
            let mut sources: Vec<usize> = Vec::new();
            // designated first site per arm of this layer, if any
            let mut designated: Vec<Option<usize>> = vec![None; layer.arms.len()];
            let mut free_needed = false;
            for (slot, &ai) in layer.arms.iter().enumerate() {
                match arms[ai].start {
                    Start::Free => free_needed = true,
                    Start::Step(dx, dy) => {
                        let v = anchor.expect("validated");
                        let w = v.offset(dx, dy);
                        let Some(e) = g.edge_between(v, w) else { return Ok(false) };
                        if !config.is_open(e) {
                            return Ok(false);
                        }
                        let s = sites.index_of_vertex(w).expect("inside box");
                        designated[slot] = Some(s);
                    }
                    Start::Dual { from, to } => {
                        let base = DualVertex::north_east_of(anchor.expect("validated"));
                        let f = base.offset(from.0, from.1);
                        let Some(fs) = sites.index_of_dual(f) else { return Ok(false) };
                        match to {
                            None => designated[slot] = Some(fs),
                            Some(t) => {
                                let t = base.offset(t.0, t.1);
                                let Some(e) = g.dual_edge_between(f, t) else { return Ok(false) };
                                if config.is_open(e) {
                                    return Ok(false);
                                }
                                let Some(ts) = sites.index_of_dual(t) else { return Ok(false) };
                                allowed[fs] = false;
                                designated[slot] = Some(ts);
                            }
                        }
                    }
                }
            }
            match (sites.color(), center) {
                (Color::Open, Center::Vertex(v)) => {
                    let vs = sites.index_of_vertex(v).expect("inside box");
                    allowed[vs] = false;
                    if free_needed {
                        sites.for_each_passable(config, vs, |t, _| sources.push(t));
                    }
                }
                (Color::Open, Center::Edge(a, b)) => {
                    if free_needed {
                        sources.push(sites.index_of_vertex(a).expect("inside box"));
                        sources.push(sites.index_of_vertex(b).expect("inside box"));
                    }
                }
                (Color::ClosedDual, Center::Vertex(v)) => {
                    if free_needed {
                        for (dx, dy) in [(-1, -1), (0, -1), (-1, 0), (0, 0)] {
                            sources.extend(sites.index_of_dual(DualVertex::new(v.x + dx, v.y + dy)));
                        }
                    }
                }
                (Color::ClosedDual, Center::Edge(a, b)) => {
                    if free_needed {
                        let e = g.edge_between(a, b).expect("validated adjacency");
                        let de = g.dual_of(e)?;
                        sources.extend(sites.index_of_dual(de.ends.0));
                        sources.extend(sites.index_of_dual(de.ends.1));
                    }
                }
                (color, Center::Hole(r)) => {
                    let r = r as f64 + if color == Color::Open { 0.0 } else { 0.5 };
                    for s in 0..sites.count() {
                        let (x, y) = sites.point(s);
                        let norm = x.abs().max(y.abs());
                        if norm < r {
                            allowed[s] = false;
                        } else if norm == r && allowed[s] && free_needed {
                            sources.push(s);
                        }
                    }
                }
            }
            for &d in designated.iter().flatten() {
                if !allowed[d] {
                    return Ok(false);
                }
            }
            sources.retain(|s| allowed[*s] && !designated.contains(&Some(*s)));
            sources.extend(designated.iter().flatten());
            sources.sort_unstable();
            sources.dedup();

            let groups: Vec<&[usize]> = layer.groups.iter().map(|g| g.as_slice()).collect();
            let query = FlowQuery {
                allowed: &allowed,
                sources: &sources,
                groups: &groups,
                terminal: Some(&layer.terminal),
            };
            let want = layer.arms.len();
            if layer.workspace.max_paths(config, &query, want) < want {
                return Ok(false);
            }
            for (path, group) in layer.workspace.paths(&query) {
                if let Some(d) = designated[group] {
                    if path[0] != d {
                        return Ok(false);
                    }
                }
                let last = *path.last().expect("nonempty");
                landings.push((layer.arms[group], sites.point(last)));
            }
        }
        Ok(cyclic_order_holds(arms, &mut landings, focus))
    }
}

/// Landing points sorted clockwise around `focus` must follow the listed arm order, up to
/// rotation. Without windows on every arm only the color sequence is compared.
fn cyclic_order_holds(arms: &[Arm], landings: &mut [(usize, (f64, f64))], focus: (f64, f64)) -> bool {
    if arms.len() <= 2 {
        return true;
    }
    let angle = |p: (f64, f64)| (p.1 - focus.1).atan2(p.0 - focus.0);
    landings.sort_by(|a, b| angle(b.1).total_cmp(&angle(a.1)).then(a.0.cmp(&b.0)));
    let all_windowed = arms.iter().all(|a| a.window.is_some());
    let key = |i: usize| if all_windowed { i } else { arms[i].color as usize };
    let found: Vec<usize> = landings.iter().map(|l| key(l.0)).collect();
    let wanted: Vec<usize> = (0..arms.len()).map(key).collect();
    (0..wanted.len()).any(|r| found.iter().cycle().skip(r).take(wanted.len()).eq(wanted.iter()))
}
