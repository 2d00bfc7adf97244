//! Open arcs between the two five-arm points of a U-shaped region.
//!
//! The outermost arc is found like the lowest crossing. Take any admissible arc s₀; the
//! closed curve s₀ ∪ 𝔠 bounds a region R. The closed dual cluster of 𝔠 inside R is D, and
//! T is what the far side of s₀ reaches inside R without entering D. The open edges between
//! D and T form the arc enclosing the least area with 𝔠.

use std::collections::{HashMap, VecDeque};

use super::polygon;
use super::u_region::URegion;
use crate::arms::InnerEvent;
use crate::connectivity::{bfs_path, Sites};
use crate::error::{Error, Result};
use crate::lattice::{BoxGeometry, Config, DualVertex, EdgeId, Vertex};
use crate::path::LatticePath;

/// Fewest-edge open path from ⋆₁ to ⋆₂ through vertices of U(k).
pub fn shortest_arc(config: &Config, region: &URegion, star1: Vertex, star2: Vertex) -> Result<LatticePath> {
    let g = *config.geometry();
    let sites = Sites::primal(g);
    let allowed: Vec<bool> = (0..sites.count()).map(|s| region.u.contains_vertex(sites.vertex(s))).collect();
    let (Some(a), Some(b)) = (sites.index_of_vertex(star1), sites.index_of_vertex(star2)) else {
        return Err(Error::OutsideBox { n: g.half_side() });
    };
    let mut to = vec![false; sites.count()];
    to[b] = true;
    let path = bfs_path(config, &sites, &allowed, &[a], &to).ok_or(Error::NoArc)?;
    Ok(LatticePath::primal(&g, path.into_iter().map(|s| sites.vertex(s)).collect()).expect("bfs steps"))
}

/// Some open arc in U(k) leaving ⋆₁ upwards and entering ⋆₂ from above.
fn any_arc(config: &Config, event: &InnerEvent) -> Result<Vec<Vertex>> {
    let g = *config.geometry();
    let (s1, s2) = (event.star1, event.star2);
    let (up1, up2) = (s1.offset(0, 1), s2.offset(0, 1));
    let open = |a, b| g.edge_between(a, b).is_some_and(|e| config.is_open(e));
    if !open(s1, up1) || !open(up2, s2) {
        return Err(Error::NoArc);
    }
    let sites = Sites::primal(g);
    let allowed: Vec<bool> = (0..sites.count())
        .map(|s| {
            let v = sites.vertex(s);
            v != s1 && v != s2 && event.region.u.contains_vertex(v)
        })
        .collect();
    let (Some(a), Some(b)) = (sites.index_of_vertex(up1), sites.index_of_vertex(up2)) else {
        return Err(Error::NoArc);
    };
    let mut to = vec![false; sites.count()];
    to[b] = true;
    let mid = bfs_path(config, &sites, &allowed, &[a], &to).ok_or(Error::NoArc)?;
    let mut out = vec![s1];
    out.extend(mid.into_iter().map(|s| sites.vertex(s)));
    out.push(s2);
    Ok(out)
}

/// The two faces on either side of a primal edge.
fn sides(g: &BoxGeometry, e: EdgeId) -> (DualVertex, DualVertex) {
    g.dual_of(e).expect("edge of the box").ends
}

/// The outermost open arc ℓₖ: it starts with the edge ⋆₁ → ⋆₁ + e₂, ends with
/// ⋆₂ + e₂ → ⋆₂, stays in U(k), and together with the shield encloses the least region.
pub fn outermost_arc(config: &Config, event: &InnerEvent) -> Result<LatticePath> {
    let g = *config.geometry();
    let s0 = any_arc(config, event)?;
    let shield: Vec<DualVertex> = event.shield.dual_vertices().collect();

    let mut poly: Vec<polygon::Point> = s0.iter().map(|v| (v.x as f64, v.y as f64)).collect();
    poly.extend(shield.iter().rev().map(|d| d.position()));
    let (x0, x1, y0, y1) = polygon::bounds(&poly);

    let count = g.dual_vertex_count();
    let idx = |d: DualVertex| g.dual_index(d);
    let mut on_shield = vec![false; count];
    for &d in &shield {
        on_shield[idx(d).expect("shield inside the box")] = true;
    }
    let mut interior = vec![false; count];
    for x in x0..x1 {
        for y in y0..y1 {
            let d = DualVertex::new(x, y);
            if let Some(i) = idx(d) {
                interior[i] = !on_shield[i] && g.is_face(d) && polygon::contains(&poly, d.position());
            }
        }
    }

    // D: closed cluster of the shield inside R
    let mut in_d = on_shield.clone();
    let mut queue: VecDeque<DualVertex> = shield.iter().copied().collect();
    while let Some(d) = queue.pop_front() {
        for (w, e) in g.dual_neighbors(d) {
            let j = idx(w).expect("inside");
            if !in_d[j] && interior[j] && !config.is_open(e) {
                in_d[j] = true;
                queue.push_back(w);
            }
        }
    }

    // T: from the far side of s₀ into R, avoiding D
    let arc_edges: Vec<EdgeId> = s0.windows(2).map(|w| g.edge_between(w[0], w[1]).expect("arc step")).collect();
    let mut in_t = vec![false; count];
    let mut seeds = vec![false; count];
    for &e in &arc_edges {
        let (p, q) = sides(&g, e);
        for (d, other) in [(p, q), (q, p)] {
            let (i, j) = (idx(d).expect("inside"), idx(other).expect("inside"));
            if !interior[i] && !on_shield[i] && (interior[j] || on_shield[j]) {
                seeds[i] = true;
                if interior[j] && !in_d[j] && !in_t[j] {
                    in_t[j] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    while let Some(d) = queue.pop_front() {
        for (w, _) in g.dual_neighbors(d) {
            let j = idx(w).expect("inside");
            if !in_t[j] && interior[j] && !in_d[j] {
                in_t[j] = true;
                queue.push_back(w);
            }
        }
    }

    // interface edges; seeds only count across edges of s₀
    let mut interface = Vec::new();
    for e in g.edges() {
        let (p, q) = sides(&g, e);
        let (Some(i), Some(j)) = (idx(p), idx(q)) else { continue };
        let across = |a: usize, b: usize| in_d[a] && (in_t[b] || (seeds[b] && arc_edges.contains(&e)));
        if across(i, j) || across(j, i) {
            interface.push(e);
        }
    }
    let path = chain_from(&g, &interface, event.star1).ok_or(Error::NoArc)?;
    let v = &path.vertices;
    let ok = path.last() == event.star2
        && v.len() >= 3
        && v[1] == event.star1.offset(0, 1)
        && v[v.len() - 2] == event.star2.offset(0, 1)
        && path.has_color(config);
    ok.then_some(path).ok_or(Error::NoArc)
}

/// Orders a set of edges forming one simple path that starts at `start`.
fn chain_from(g: &BoxGeometry, edges: &[EdgeId], start: Vertex) -> Option<LatticePath> {
    let mut incident: HashMap<Vertex, Vec<(Vertex, EdgeId)>> = HashMap::new();
    for &e in edges {
        let (a, b) = g.endpoints(e).ok()?;
        incident.entry(a).or_default().push((b, e));
        incident.entry(b).or_default().push((a, e));
    }
    if incident.get(&start)?.len() != 1 || incident.values().any(|nb| nb.len() > 2) {
        return None;
    }
    let mut verts = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(&(w, e)) = incident[&cur].iter().find(|(_, e)| Some(*e) != prev) {
        verts.push(w);
        prev = Some(e);
        cur = w;
    }
    let path = LatticePath::primal(g, verts)?;
    (path.len() == edges.len() && path.is_self_avoiding()).then_some(path)
}
