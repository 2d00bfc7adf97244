//! κ-shortcuts around a host path and the bounded search that finds them.
//!
//! A shortcut r = (w₀, …, w_M) leaves the host at a straight spot w₀, steps to the
//! shortcut side, stays strictly there, and comes back to the host at a straight spot w_M
//! through w_M + n. The host segment τ between w₀ and w_M is the detour it replaces; a closed
//! dual arc on the shortcut side joins the outer corner faces of w₀ and w_M, leaving both
//! of them vertically. Records keep w₀ as the endpoint that comes first along the host.
//!
//! The search keeps one record per endpoint pair, with r the breadth-first shortest path
//! between them.

use std::collections::VecDeque;

use super::host::{corner_face, Host, Step};
use crate::lattice::{Config, DualVertex, EdgeId, Vertex};
use crate::path::LatticePath;

/// A κ-shortcut with its witness.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct ShortcutRecord {
    #[serde(serialize_with = "ser_path")]
    pub r: LatticePath,
    pub w0: Vertex,
    pub w_m: Vertex,
    /// Host vertex positions of w₀ and w_M; τ is the host between them.
    pub tau: (usize, usize),
    #[serde(serialize_with = "ser_path")]
    pub shield: LatticePath,
    /// Smallest l ≥ 1 such that r ∪ τ fits in a box of side 3·2ˡ.
    pub scale: u32,
    /// #r / #τ.
    pub gain: f64,
}

fn ser_path<S: serde::Serializer>(p: &LatticePath, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(p.vertices.len()))?;
    for v in &p.vertices {
        seq.serialize_element(&(v.x, v.y))?;
    }
    seq.end()
}

impl ShortcutRecord {
    pub fn tau_len(&self) -> usize {
        self.tau.1 - self.tau.0
    }

    /// Whether host edge i (joining host vertices i and i + 1) lies on τ.
    pub fn covers(&self, i: usize) -> bool {
        self.tau.0 <= i && i < self.tau.1
    }

    /// The circuit r ∪ τ as a closed vertex list (τ forward, then r backward).
    pub fn circuit(&self, host: &Host) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = host.path().vertices[self.tau.0..=self.tau.1].to_vec();
        out.extend(self.r.vertices.iter().rev().skip(1));
        out
    }
}

/// Smallest l ≥ 1 with the point set inside a box of side 3·2ˡ.
pub fn size_scale(points: impl IntoIterator<Item = Vertex>) -> u32 {
    let (mut x0, mut x1, mut y0, mut y1) = (i32::MAX, i32::MIN, i32::MAX, i32::MIN);
    for v in points {
        x0 = x0.min(v.x);
        x1 = x1.max(v.x);
        y0 = y0.min(v.y);
        y1 = y1.max(v.y);
    }
    let side = (x1 - x0).max(y1 - y0).max(0) as i64;
    let mut l = 1;
    while 3 * (1i64 << l) < side {
        l += 1;
    }
    l
}

/// Which condition a record fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Malformed,
    NotOpen,
    Interior,
    Endpoints,
    Circuit,
    Shield,
    Gain,
    Scale,
}

impl ShortcutRecord {
    /// Re-checks every defining condition against the configuration and host.
    pub fn validate(&self, config: &Config, host: &Host, kappa: f64) -> std::result::Result<(), Violation> {
        let g = config.geometry();
        let r = &self.r;
        let m = r.vertices.len();
        if m < 4 || !r.is_well_formed(g) || !r.is_self_avoiding() {
            return Err(Violation::Malformed);
        }
        if !r.has_color(config) {
            return Err(Violation::NotOpen);
        }
        if !r.vertices[1..m - 1].iter().all(|&v| host.is_above(v)) {
            return Err(Violation::Interior);
        }
        let (a, b) = self.tau;
        if a >= b || b > host.len() || host.vertex(a) != self.w0 || host.vertex(b) != self.w_m {
            return Err(Violation::Endpoints);
        }
        if r.first() != self.w0 || r.last() != self.w_m {
            return Err(Violation::Endpoints);
        }
        let (Some((t0, n0)), Some((tm, nm))) = (host.frame(a), host.frame(b)) else {
            return Err(Violation::Endpoints);
        };
        if r.vertices[1] != self.w0.offset(n0.0, n0.1) || r.vertices[m - 2] != self.w_m.offset(nm.0, nm.1) {
            return Err(Violation::Endpoints);
        }
        let circuit = self.circuit(host);
        let closed = LatticePath::primal(g, circuit.clone());
        if !closed.is_some_and(|c| c.is_simple_circuit()) {
            return Err(Violation::Circuit);
        }
        let s = &self.shield;
        let sv: Vec<DualVertex> = s.dual_vertices().collect();
        let k = sv.len();
        let (start, end) = (corner_face(self.w0, (-t0.0, -t0.1), n0), corner_face(self.w_m, tm, nm));
        if k < 2
            || !s.is_well_formed(g)
            || !s.is_self_avoiding()
            || !s.has_color(config)
            || sv[0] != start
            || sv[k - 1] != end
            || sv[1] != start.offset(n0.0, n0.1)
            || sv[k - 2] != end.offset(nm.0, nm.1)
            || !sv.iter().all(|&d| host.is_above_dual(d))
        {
            return Err(Violation::Shield);
        }
        if self.tau_len() == 0 || (r.len() as f64) > kappa * self.tau_len() as f64 {
            return Err(Violation::Gain);
        }
        if (self.gain - r.len() as f64 / self.tau_len() as f64).abs() > 1e-12 {
            return Err(Violation::Gain);
        }
        if self.scale != size_scale(circuit) {
            return Err(Violation::Scale);
        }
        Ok(())
    }
}

/// Vertex box (x0, x1, y0, y1) a search is confined to.
type Bounds = (i32, i32, i32, i32);

struct Search<'a> {
    config: &'a Config,
    host: &'a Host,
    kappa: f64,
    bounds: Option<Bounds>,
}

impl Search<'_> {
    fn in_bounds(&self, v: Vertex) -> bool {
        self.bounds.is_none_or(|(x0, x1, y0, y1)| (x0..=x1).contains(&v.x) && (y0..=y1).contains(&v.y))
    }

    /// Records with w₀ at host position a and w_M at a position in `ends`.
    fn from_start(&self, a: usize, ends: &[usize]) -> Vec<ShortcutRecord> {
        let host = self.host;
        let g = self.config.geometry();
        let Some((t0, n0)) = host.frame(a) else { return Vec::new() };
        let w0 = host.vertex(a);
        let first = w0.offset(n0.0, n0.1);
        let Some(first_edge) = g.edge_between(w0, first) else { return Vec::new() };
        if !self.config.is_open(first_edge) || !host.is_above(first) || !self.in_bounds(first) {
            return Vec::new();
        }
        let Some(&last_end) = ends.iter().max() else { return Vec::new() };
        // #r = dist + 2 ≤ κ·#τ bounds the depth
        let cap = (self.kappa * (last_end - a) as f64).floor() as i64 - 2;
        if cap < 0 {
            return Vec::new();
        }
        let above = host.above_flags();
        let mut parent = vec![usize::MAX; g.vertex_count()];
        let mut depth = vec![0u32; g.vertex_count()];
        let root = g.vertex_index(first).expect("inside");
        parent[root] = root;
        let mut queue = VecDeque::from([first]);
        while let Some(v) = queue.pop_front() {
            let i = g.vertex_index(v).expect("inside");
            if depth[i] as i64 >= cap {
                continue;
            }
            for (w, e) in g.neighbors(v) {
                let j = g.vertex_index(w).expect("inside");
                if parent[j] == usize::MAX && above[j] && self.config.is_open(e) && self.in_bounds(w) {
                    parent[j] = i;
                    depth[j] = depth[i] + 1;
                    queue.push_back(w);
                }
            }
        }

        let mut out = Vec::new();
        let shield_from = corner_face(w0, (-t0.0, -t0.1), n0);
        for &b in ends {
            let Some((tm, nm)) = host.frame(b) else { continue };
            let wm = host.vertex(b);
            let before = wm.offset(nm.0, nm.1);
            let Some(j) = g.vertex_index(before) else { continue };
            if parent[j] == usize::MAX {
                continue;
            }
            let r_len = depth[j] as usize + 2;
            if r_len as f64 > self.kappa * (b - a) as f64 {
                continue;
            }
            if !g.edge_between(before, wm).is_some_and(|e| self.config.is_open(e)) {
                continue;
            }
            let mut interior = vec![before];
            let mut u = j;
            while parent[u] != u {
                u = parent[u];
                interior.push(g.vertex_at(u));
            }
            interior.reverse();
            let mut verts = Vec::with_capacity(interior.len() + 2);
            verts.push(w0);
            verts.extend(interior);
            verts.push(wm);
            let circuit_pts = host.path().vertices[a..=b].iter().chain(verts.iter()).copied();
            if let Some((x0, x1, y0, y1)) = self.bounds {
                if !host.path().vertices[a..=b].iter().all(|&v| (x0..=x1).contains(&v.x) && (y0..=y1).contains(&v.y)) {
                    continue;
                }
            }
            let scale = size_scale(circuit_pts);
            let shield_to = corner_face(wm, tm, nm);
            let Some(shield) = self.shield(shield_from, n0, shield_to, nm) else { continue };
            let r = LatticePath::primal(g, verts).expect("bfs steps are lattice edges");
            out.push(ShortcutRecord {
                gain: r.len() as f64 / (b - a) as f64,
                r,
                w0,
                w_m: wm,
                tau: (a, b),
                shield,
                scale,
            });
        }
        out
    }

    /// Closed dual path on the shortcut side from `from` to `to`, whose first step is +n₀
    /// and whose last step arrives along -n_M.
    fn shield(&self, from: DualVertex, n0: Step, to: DualVertex, nm: Step) -> Option<LatticePath> {
        let g = self.config.geometry();
        let host = self.host;
        let second = from.offset(n0.0, n0.1);
        let penult = to.offset(nm.0, nm.1);
        let closed = |a: DualVertex, b: DualVertex| g.dual_edge_between(a, b).is_some_and(|e| !self.config.is_open(e));
        if [from, second, penult, to].iter().any(|&d| !host.is_above_dual(d))
            || !closed(from, second)
            || !closed(penult, to)
            || from == to
        {
            return None;
        }
        if second == to || penult == from {
            return None;
        }
        let above = host.above_dual_flags();
        let mut parent = vec![usize::MAX; g.dual_vertex_count()];
        let (fi, ti) = (g.dual_index(from)?, g.dual_index(to)?);
        let root = g.dual_index(second)?;
        parent[root] = root;
        let target = g.dual_index(penult)?;
        let mut queue = VecDeque::from([second]);
        while let Some(d) = queue.pop_front() {
            let i = g.dual_index(d).expect("inside");
            if i == target {
                break;
            }
            for (w, e) in g.dual_neighbors(d) {
                let j = g.dual_index(w).expect("inside");
                if parent[j] == usize::MAX && j != fi && j != ti && above[j] && !self.config.is_open(e) {
                    parent[j] = i;
                    queue.push_back(w);
                }
            }
        }
        if parent[target] == usize::MAX {
            return None;
        }
        let mut verts = vec![to, penult];
        let mut u = target;
        while parent[u] != u {
            u = parent[u];
            verts.push(g.dual_vertex_at(u));
        }
        verts.push(from);
        verts.reverse();
        LatticePath::dual(g, verts)
    }
}

/// Positions a with a straight frame.
fn frames(host: &Host) -> Vec<usize> {
    (1..host.len()).filter(|&i| host.frame(i).is_some()).collect()
}

/// Every κ-shortcut whose detour contains host edge `e` and whose circuit r ∪ τ fits in the
/// box of side 3·2ᵏ centred at the midpoint of `e`. Empty when `e` is not on the host.
pub fn find_shortcuts(config: &Config, host: &Host, e: EdgeId, kappa: f64, k: u32) -> Vec<ShortcutRecord> {
    let Some(i) = host.edge_position(e) else { return Vec::new() };
    let (a, b) = (host.vertex(i), host.vertex(i + 1));
    let half = 1.5 * (1u64 << k.min(30)) as f64;
    let (cx, cy) = ((a.x + b.x) as f64 / 2.0, (a.y + b.y) as f64 / 2.0);
    let bounds = (
        (cx - half).ceil() as i32,
        (cx + half).floor() as i32,
        (cy - half).ceil() as i32,
        (cy + half).floor() as i32,
    );
    let search = Search { config, host, kappa, bounds: Some(bounds) };
    let spots = frames(host);
    let ends: Vec<usize> = spots.iter().copied().filter(|&p| p > i).collect();
    spots
        .iter()
        .filter(|&&p| p <= i)
        .flat_map(|&p| search.from_start(p, &ends))
        .collect()
}

/// Every κ-shortcut of the host with scale at most `max_scale`, ordered by (w₀, w_M)
/// position along the host.
pub fn find_all_shortcuts(config: &Config, host: &Host, kappa: f64, max_scale: u32) -> Vec<ShortcutRecord> {
    let search = Search { config, host, kappa, bounds: None };
    let spots = frames(host);
    spots
        .iter()
        .enumerate()
        .flat_map(|(n, &p)| search.from_start(p, &spots[n + 1..]))
        .filter(|r| r.scale <= max_scale)
        .collect()
}
