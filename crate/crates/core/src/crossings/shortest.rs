//! Chemical distance across the box by breadth-first layering from the left side.

use std::collections::VecDeque;

use crate::connectivity::Sites;
use crate::error::{Error, Result};
use crate::lattice::Config;
use crate::path::LatticePath;

/// An open crossing with the fewest edges. All left-side vertices start at distance 0 in
/// index order; the path ends at the lowest-index right-side vertex at minimal distance.
pub fn shortest_crossing(config: &Config) -> Result<LatticePath> {
    let g = config.geometry();
    let sites = Sites::primal(*g);
    let count = sites.count();
    let side = g.side();
    let mut parent = vec![u32::MAX; count];
    let mut dist = vec![u32::MAX; count];
    let mut queue = VecDeque::new();
    for row in 0..side {
        let s = row * side;
        dist[s] = 0;
        parent[s] = s as u32;
        queue.push_back(s);
    }
    let mut best: Option<(u32, usize)> = None;
    while let Some(s) = queue.pop_front() {
        if best.is_some_and(|(d, _)| dist[s] >= d) {
            break;
        }
        let ds = dist[s];
        sites.for_each_passable(config, s, |t, _| {
            if dist[t] != u32::MAX || t % side == 0 {
                return;
            }
            dist[t] = ds + 1;
            parent[t] = s as u32;
            if t % side == side - 1 {
                if best.is_none_or(|(d, b)| ds + 1 < d || (ds + 1 == d && t < b)) {
                    best = Some((ds + 1, t));
                }
            } else {
                queue.push_back(t);
            }
        });
    }
    let (_, end) = best.ok_or(Error::NoCrossing)?;
    let mut verts = vec![g.vertex_at(end)];
    let mut s = end;
    while parent[s] as usize != s {
        s = parent[s] as usize;
        verts.push(g.vertex_at(s));
    }
    verts.reverse();
    Ok(LatticePath::primal(g, verts).expect("parents are neighbours"))
}
