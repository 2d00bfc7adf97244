//! The lowest open crossing as the interface between the bottom closed cluster and the
//! faces that still see the top of the box.

use std::collections::VecDeque;

use crate::connectivity::Sites;
use crate::error::{Error, Result};
use crate::lattice::{BoxGeometry, Config, EdgeId, Vertex};
use crate::path::LatticePath;

/// Dual sites of the box split by the lowest crossing.
#[derive(Debug, Clone)]
pub struct BottomCluster {
    /// Dual sites closed-connected to the bottom ring through faces of the box.
    pub below: Vec<bool>,
    /// Whether that cluster reaches the top ring, i.e. no open crossing exists.
    pub reaches_top: bool,
}

/// Closed dual cluster of the bottom ring, never stepping onto the left or right ring.
pub fn bottom_cluster(config: &Config) -> BottomCluster {
    let g = config.geometry();
    let sites = Sites::dual(*g);
    let mut below = vec![false; sites.count()];
    let mut queue = VecDeque::new();
    let n = g.n();
    for x in -n - 1..=n {
        let s = g.dual_index(crate::lattice::DualVertex::new(x, -n - 1)).expect("ring");
        below[s] = true;
        queue.push_back(s);
    }
    let mut reaches_top = false;
    while let Some(s) = queue.pop_front() {
        sites.for_each_passable(config, s, |t, _| {
            if below[t] {
                return;
            }
            let d = g.dual_vertex_at(t);
            if g.is_dual_top(d) {
                reaches_top = true;
            } else if g.is_face(d) {
                below[t] = true;
                queue.push_back(t);
            }
        });
    }
    BottomCluster { below, reaches_top }
}

/// Dual sites reachable from the top ring without entering `below`, ignoring edge states.
fn top_side(g: &BoxGeometry, below: &[bool]) -> Vec<bool> {
    let sites = Sites::dual(*g);
    let mut above = vec![false; sites.count()];
    let mut queue = VecDeque::new();
    let n = g.n();
    for x in -n - 1..=n {
        let s = g.dual_index(crate::lattice::DualVertex::new(x, n)).expect("ring");
        above[s] = true;
        queue.push_back(s);
    }
    while let Some(s) = queue.pop_front() {
        sites.for_each_neighbor(s, |t, _| {
            if !above[t] && !below[t] && g.is_face(g.dual_vertex_at(t)) {
                above[t] = true;
                queue.push_back(t);
            }
        });
    }
    above
}

/// The lowest open horizontal crossing l_n, ordered from its left-side endpoint.
pub fn lowest_crossing(config: &Config) -> Result<LatticePath> {
    let g = config.geometry();
    let cluster = bottom_cluster(config);
    if cluster.reaches_top {
        return Err(Error::NoCrossing);
    }
    let above = top_side(g, &cluster.below);
    let sites = Sites::dual(*g);
    let mut interface: Vec<EdgeId> = Vec::new();
    for s in 0..sites.count() {
        if !cluster.below[s] {
            continue;
        }
        sites.for_each_neighbor(s, |t, e| {
            if above[t] {
                interface.push(e);
            }
        });
    }
    Ok(order_edges(g, &interface).expect("interface of the bottom cluster is a crossing"))
}

/// Orders a set of edges forming a simple path from the left side to the right side.
pub(crate) fn order_edges(g: &BoxGeometry, edges: &[EdgeId]) -> Option<LatticePath> {
    let mut incident: std::collections::HashMap<Vertex, Vec<(Vertex, EdgeId)>> = Default::default();
    for &e in edges {
        let (a, b) = g.endpoints(e).ok()?;
        incident.entry(a).or_default().push((b, e));
        incident.entry(b).or_default().push((a, e));
    }
    let mut starts: Vec<Vertex> = incident
        .iter()
        .filter(|(v, nb)| nb.len() == 1 && g.is_left_side(**v))
        .map(|(v, _)| *v)
        .collect();
    starts.sort();
    let start = *starts.first()?;
    let mut verts = vec![start];
    let mut prev_edge = None;
    let mut cur = start;
    loop {
        let next = incident[&cur].iter().find(|(_, e)| Some(*e) != prev_edge).copied();
        let Some((w, e)) = next else { break };
        if incident[&cur].len() > 2 {
            return None;
        }
        verts.push(w);
        prev_edge = Some(e);
        cur = w;
    }
    let path = LatticePath::primal(g, verts)?;
    (path.len() == edges.len() && path.is_self_avoiding() && g.is_right_side(path.last()))
        .then_some(path)
}
