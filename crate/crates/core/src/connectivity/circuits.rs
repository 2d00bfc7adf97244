//! Minimum-defect circuits winding once around the hole of an annulus.
//!
//! Circuits are found by 0-1 breadth-first search on a layered cover of the annulus: the
//! layer counts signed crossings of the ray `{y = ¼, x > 0}`, so a closed walk returning to
//! its start one layer up winds once around the origin. Edges of the circuit's color cost
//! 0 and defects cost 1.

use std::collections::{HashMap, VecDeque};

use super::sites::{Color, Sites};
use crate::error::{Error, Result};
use crate::lattice::{Config, EdgeId, Region, RegionMask};
use crate::path::{Lattice, LatticePath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CircuitKind {
    ClosedDual,
    OpenPrimal,
}

impl CircuitKind {
    pub fn color(self) -> Color {
        match self {
            CircuitKind::ClosedDual => Color::ClosedDual,
            CircuitKind::OpenPrimal => Color::Open,
        }
    }
}

/// A circuit together with the edges on it whose state disagrees with its color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectedCircuit {
    pub kind: CircuitKind,
    pub circuit: LatticePath,
    pub defects: Vec<EdgeId>,
}

impl DefectedCircuit {
    /// Signed number of crossings of the cut ray.
    pub fn winding(&self) -> i32 {
        let lattice = self.circuit.lattice;
        self.circuit
            .vertices
            .windows(2)
            .map(|w| ray_crossing(lattice, (w[0].x, w[0].y), (w[1].x, w[1].y)))
            .sum()
    }

    /// Type invariants: a simple circuit on the right lattice, defects exactly the
    /// wrongly colored edges, winding ±1, every vertex inside the annulus.
    pub fn is_valid(&self, config: &Config, inner: u32, outer: u32) -> bool {
        let g = config.geometry();
        let color = self.kind.color();
        if Lattice::from(color) != self.circuit.lattice
            || !self.circuit.is_well_formed(g)
            || !self.circuit.is_simple_circuit()
        {
            return false;
        }
        let wrong: Vec<EdgeId> = self
            .circuit
            .edges
            .iter()
            .copied()
            .filter(|&e| !color.passes(config.is_open(e)))
            .collect();
        let inside = match self.circuit.lattice {
            Lattice::Primal => self
                .circuit
                .vertices
                .iter()
                .all(|&v| in_annulus(v.sup_norm() as f64, inner, outer)),
            Lattice::Dual => self.circuit.dual_vertices().all(|d| in_annulus(d.sup_norm(), inner, outer)),
        };
        let mut defects = self.defects.clone();
        defects.sort();
        let mut wrong_sorted = wrong;
        wrong_sorted.sort();
        inside && defects == wrong_sorted && self.winding().abs() == 1
    }
}

/// Sites strictly outside the inner box and inside the outer one. With `inner = 0` the
/// origin itself is excluded, so circuits always have a hole to wind around.
fn in_annulus(norm: f64, inner: u32, outer: u32) -> bool {
    norm > inner as f64 && norm <= outer as f64
}

/// +1 for an upward step across the ray, -1 downward, 0 otherwise. Points are stored
/// lattice coordinates (dual ones offset by ½).
fn ray_crossing(lattice: Lattice, a: (i32, i32), b: (i32, i32)) -> i32 {
    if a.0 != b.0 {
        return 0;
    }
    let x_ok = match lattice {
        Lattice::Primal => a.0 > 0,
        Lattice::Dual => a.0 >= 0,
    };
    let (lo, hi) = match lattice {
        Lattice::Primal => (0, 1),
        Lattice::Dual => (-1, 0),
    };
    if !x_ok {
        0
    } else if a.1 == lo && b.1 == hi {
        1
    } else if a.1 == hi && b.1 == lo {
        -1
    } else {
        0
    }
}

const LAYER_OFFSET: i32 = 3;
const LAYERS: usize = 2 * LAYER_OFFSET as usize + 1;

struct Annulus<'a> {
    config: &'a Config,
    sites: Sites,
    inside: Vec<bool>,
    kind: CircuitKind,
    window: Option<&'a dyn Region>,
}

impl<'a> Annulus<'a> {
    fn new(
        config: &'a Config,
        inner: u32,
        outer: u32,
        kind: CircuitKind,
        window: Option<&'a dyn Region>,
    ) -> Result<Self> {
        RegionMask::annulus(inner, outer)?;
        if outer > config.geometry().half_side() {
            return Err(Error::OutsideBox { n: config.geometry().half_side() });
        }
        let sites = Sites::new(*config.geometry(), kind.color());
        let inside = (0..sites.count())
            .map(|s| {
                let (x, y) = sites.point(s);
                in_annulus(x.abs().max(y.abs()), inner, outer)
            })
            .collect();
        Ok(Annulus { config, sites, inside, kind, window })
    }

    fn lattice(&self) -> Lattice {
        self.kind.color().into()
    }

    fn coords(&self, s: usize) -> (i32, i32) {
        match self.lattice() {
            Lattice::Primal => {
                let v = self.sites.vertex(s);
                (v.x, v.y)
            }
            Lattice::Dual => {
                let d = self.sites.dual_vertex(s);
                (d.x, d.y)
            }
        }
    }

    /// Cost of traversing `e`, or `None` if the edge is a defect outside the window.
    fn cost(&self, e: EdgeId) -> Option<u32> {
        if self.kind.color().passes(self.config.is_open(e)) {
            return Some(0);
        }
        match self.window {
            None => Some(1),
            Some(w) => {
                let (a, b) = self.config.geometry().endpoints(e).ok()?;
                let mid = ((a.x + b.x) as f64 / 2.0, (a.y + b.y) as f64 / 2.0);
                w.contains_point(mid.0, mid.1).then_some(1)
            }
        }
    }

    /// Ray-crossing edges as (below, above, edge), ordered outward along the ray.
    fn ray_edges(&self) -> Vec<(usize, usize, EdgeId)> {
        let mut out = Vec::new();
        for s in 0..self.sites.count() {
            if !self.inside[s] {
                continue;
            }
            let a = self.coords(s);
            self.sites.for_each_neighbor(s, |t, e| {
                if self.inside[t] && ray_crossing(self.lattice(), a, self.coords(t)) == 1 {
                    out.push((s, t, e));
                }
            });
        }
        out.sort_by_key(|&(s, _, _)| self.coords(s).0);
        out
    }
}

/// Minimum number of defects over circuits of `kind` in annulus(inner, outer) winding
/// once around the origin, with a witness attaining it.
pub fn min_defect_circuit(
    config: &Config,
    inner: u32,
    outer: u32,
    kind: CircuitKind,
) -> Result<(usize, DefectedCircuit)> {
    min_defect_circuit_in(config, inner, outer, kind, None)?
        .ok_or(Error::EmptyMask)
}

/// As [`min_defect_circuit`], with defects restricted to edges whose midpoint lies in
/// `defect_window`. Returns `None` when no admissible circuit exists.
pub fn min_defect_circuit_in(
    config: &Config,
    inner: u32,
    outer: u32,
    kind: CircuitKind,
    defect_window: Option<&dyn Region>,
) -> Result<Option<(usize, DefectedCircuit)>> {
    let ann = Annulus::new(config, inner, outer, kind, defect_window)?;
    let count = ann.sites.count();
    let mut dist = vec![u32::MAX; count * LAYERS];
    let mut parent = vec![u32::MAX; count * LAYERS];
    let mut touched: Vec<usize> = Vec::new();
    let mut best: Option<(u32, Vec<usize>)> = None;

    let state = |s: usize, layer: i32| s * LAYERS + (layer + LAYER_OFFSET) as usize;

    for (below, above, e) in ann.ray_edges() {
        let Some(w0) = ann.cost(e) else { continue };
        if best.as_ref().is_some_and(|(b, _)| w0 >= *b) {
            continue;
        }
        for &i in &touched {
            dist[i] = u32::MAX;
            parent[i] = u32::MAX;
        }
        touched.clear();
        let start = state(above, 0);
        let target = state(below, 0);
        dist[start] = w0;
        touched.push(start);
        let mut deque = VecDeque::new();
        deque.push_back(start);
        let bound = best.as_ref().map_or(u32::MAX, |(b, _)| *b);
        while let Some(u) = deque.pop_front() {
            let du = dist[u];
            if du >= bound {
                break;
            }
            if u == target {
                break;
            }
            let (s, layer) = (u / LAYERS, (u % LAYERS) as i32 - LAYER_OFFSET);
            let cs = ann.coords(s);
            let mut relax = Vec::with_capacity(4);
            ann.sites.for_each_neighbor(s, |t, e| {
                if !ann.inside[t] {
                    return;
                }
                let Some(w) = ann.cost(e) else { return };
                let nl = layer + ray_crossing(ann.lattice(), cs, ann.coords(t));
                if nl.abs() > LAYER_OFFSET {
                    return;
                }
                relax.push((state(t, nl), w));
            });
            for (v, w) in relax {
                let nd = du + w;
                if nd < dist[v] {
                    if dist[v] == u32::MAX {
                        touched.push(v);
                    }
                    dist[v] = nd;
                    parent[v] = u as u32;
                    if w == 0 {
                        deque.push_front(v);
                    } else {
                        deque.push_back(v);
                    }
                }
            }
        }
        if dist[target] < bound {
            let mut walk = vec![below];
            let mut v = target;
            while v != start {
                v = parent[v] as usize;
                walk.push(v / LAYERS);
            }
            walk.reverse(); // above .. below
            walk.push(above);
            best = Some((dist[target], walk));
        }
    }

    let Some((weight, walk)) = best else { return Ok(None) };
    let cycle = simple_odd_cycle(&ann, &walk);
    let circuit = build_path(&ann, &cycle);
    let defects: Vec<EdgeId> = circuit
        .edges
        .iter()
        .copied()
        .filter(|&e| !kind.color().passes(config.is_open(e)))
        .collect();
    debug_assert_eq!(defects.len() as u32, weight);
    Ok(Some((defects.len(), DefectedCircuit { kind, circuit, defects })))
}

/// Extract from a closed walk a simple cycle with odd winding, rotated to start at its
/// smallest site and oriented with positive winding.
fn simple_odd_cycle(ann: &Annulus<'_>, walk: &[usize]) -> Vec<usize> {
    let lattice = ann.lattice();
    let wind = |cyc: &[usize]| -> i32 {
        cyc.windows(2)
            .map(|w| ray_crossing(lattice, ann.coords(w[0]), ann.coords(w[1])))
            .sum()
    };
    let mut stack: Vec<usize> = Vec::new();
    let mut pos: HashMap<usize, usize> = HashMap::new();
    let mut found: Option<Vec<usize>> = None;
    for &s in walk {
        if let Some(&i) = pos.get(&s) {
            let mut cyc: Vec<usize> = stack[i..].to_vec();
            cyc.push(s);
            for &r in &stack[i + 1..] {
                pos.remove(&r);
            }
            stack.truncate(i + 1);
            if wind(&cyc) % 2 != 0 {
                found = Some(cyc);
                break;
            }
        } else {
            pos.insert(s, stack.len());
            stack.push(s);
        }
    }
    let mut cyc = found.unwrap_or(stack);
    if cyc.first() != cyc.last() {
        cyc.push(cyc[0]);
    }
    // canonical form
    cyc.pop();
    let k = (0..cyc.len()).min_by_key(|&i| cyc[i]).unwrap_or(0);
    cyc.rotate_left(k);
    cyc.push(cyc[0]);
    if wind(&cyc) < 0 {
        cyc.reverse();
    }
    cyc
}

fn build_path(ann: &Annulus<'_>, cycle: &[usize]) -> LatticePath {
    let g = ann.config.geometry();
    match ann.lattice() {
        Lattice::Primal => LatticePath::primal(g, cycle.iter().map(|&s| ann.sites.vertex(s)).collect()),
        Lattice::Dual => LatticePath::dual(g, cycle.iter().map(|&s| ann.sites.dual_vertex(s)).collect()),
    }
    .expect("cycle steps are lattice edges")
}

/// Minimum defect count through the min-cut / max-flow duality: the fewest defects on a
/// circuit of `kind` equals the largest number of edge-disjoint paths of the opposite
/// color crossing the annulus. Counting stops at `limit`.
pub fn min_defect_count_by_flow(
    config: &Config,
    inner: u32,
    outer: u32,
    kind: CircuitKind,
    limit: usize,
) -> Result<usize> {
    RegionMask::annulus(inner, outer)?;
    let g = config.geometry();
    if outer > g.half_side() {
        return Err(Error::OutsideBox { n: g.half_side() });
    }
    // crossing paths live on the other lattice, between the two boundary rings
    let (sites, lo, hi) = match kind {
        CircuitKind::ClosedDual => (Sites::primal(*g), inner as f64, outer as f64),
        CircuitKind::OpenPrimal => (Sites::dual(*g), inner as f64 + 0.5, outer as f64 + 0.5),
    };
    let norm = |s: usize| {
        let (x, y) = sites.point(s);
        x.abs().max(y.abs())
    };
    let count = sites.count();
    let role: Vec<u8> = (0..count)
        .map(|s| {
            let r = norm(s);
            if r < lo || r > hi {
                0
            } else if r == lo {
                1 // source ring
            } else if r == hi {
                3 // sink ring
            } else {
                2
            }
        })
        .collect();
    let mut flow: HashMap<EdgeId, (usize, usize)> = HashMap::new(); // edge -> (from, to)
    let mut total = 0;
    let mut parent = vec![usize::MAX; count];
    while total < limit {
        parent.iter_mut().for_each(|p| *p = usize::MAX);
        let mut queue = VecDeque::new();
        for s in 0..count {
            if role[s] == 1 {
                parent[s] = s;
                queue.push_back(s);
            }
        }
        let mut reached = None;
        while let Some(u) = queue.pop_front() {
            if role[u] == 3 {
                reached = Some(u);
                break;
            }
            sites.for_each_passable(config, u, |t, e| {
                if role[t] == 0 || parent[t] != usize::MAX {
                    return;
                }
                // residual capacity of u -> t on a unit undirected edge
                if flow.get(&e).is_some_and(|&(a, _)| a == u) {
                    return;
                }
                parent[t] = u;
                queue.push_back(t);
            });
        }
        let Some(mut v) = reached else { break };
        while role[v] != 1 || parent[v] != v {
            let u = parent[v];
            let mut e_found = None;
            sites.for_each_neighbor(u, |t, e| {
                if t == v {
                    e_found = Some(e);
                }
            });
            let e = e_found.expect("adjacent");
            match flow.get(&e) {
                Some(&(a, _)) if a == v => {
                    flow.remove(&e);
                }
                _ => {
                    flow.insert(e, (u, v));
                }
            }
            v = u;
        }
        total += 1;
    }
    Ok(total)
}

/// Whether some circuit of `kind` with at most `max_defects` defects winds around the hole.
pub fn has_circuit_with_at_most(
    config: &Config,
    inner: u32,
    outer: u32,
    kind: CircuitKind,
    max_defects: usize,
) -> Result<bool> {
    Ok(min_defect_count_by_flow(config, inner, outer, kind, max_defects + 1)? <= max_defects)
}
