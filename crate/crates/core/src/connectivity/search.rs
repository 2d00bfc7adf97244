use std::collections::VecDeque;

use super::sites::Sites;
use crate::lattice::Config;

/// Breadth-first path of the sites' color from any of `from` to a site flagged in `to`,
/// staying on `allowed` sites. Returns site indices, first to last.
pub(crate) fn bfs_path(
    config: &Config,
    sites: &Sites,
    allowed: &[bool],
    from: &[usize],
    to: &[bool],
) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; sites.count()];
    let mut queue = VecDeque::new();
    for &s in from {
        if allowed[s] && parent[s] == usize::MAX {
            parent[s] = s;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        if to[s] {
            let mut path = vec![s];
            let mut u = s;
            while parent[u] != u {
                u = parent[u];
                path.push(u);
            }
            path.reverse();
            return Some(path);
        }
        sites.for_each_passable(config, s, |t, _| {
            if allowed[t] && parent[t] == usize::MAX {
                parent[t] = s;
                queue.push_back(t);
            }
        });
    }
    None
}
