//! Vertex-disjoint path counting by augmenting paths on the vertex-split residual graph.
//! The residual graph is never materialised; it is walked directly from the lattice
//! adjacency and the current unit flow.

use std::collections::VecDeque;

use super::sites::Sites;
use crate::lattice::Config;

const NONE: u32 = u32::MAX;
const SOURCE: u32 = u32::MAX - 1;
const SINK_BASE: u32 = u32::MAX - 1024;

/// Description of a disjoint-paths query on one sub-lattice.
#[derive(Debug, Clone)]
pub struct FlowQuery<'a> {
    /// Sites a path may visit.
    pub allowed: &'a [bool],
    /// First sites of the paths; each carries at most one path.
    pub sources: &'a [usize],
    /// Target groups; each group absorbs at most one path.
    pub groups: &'a [&'a [usize]],
    /// Sites a path may enter but not leave except into a group (paths stop at the first
    /// such site they meet).
    pub terminal: Option<&'a [bool]>,
}

/// Reusable buffers sized for one sub-lattice.
#[derive(Debug, Clone)]
pub struct FlowWorkspace {
    sites: Sites,
    next: Vec<u32>,
    prev: Vec<u32>,
    /// Bitmask of the groups each site belongs to.
    group_of: Vec<u32>,
    stamp: Vec<u32>,
    parent: Vec<u32>,
    epoch: u32,
    touched: Vec<usize>,
    group_used: Vec<bool>,
}

impl FlowWorkspace {
    pub fn new(sites: Sites) -> Self {
        let n = sites.count();
        FlowWorkspace {
            sites,
            next: vec![NONE; n],
            prev: vec![NONE; n],
            group_of: vec![0; n],
            stamp: Vec::new(),
            parent: Vec::new(),
            epoch: 0,
            touched: Vec::new(),
            group_used: Vec::new(),
        }
    }

    pub fn sites(&self) -> &Sites {
        &self.sites
    }

    fn reset(&mut self) {
        for &s in &self.touched {
            self.next[s] = NONE;
            self.prev[s] = NONE;
            self.group_of[s] = 0;
        }
        self.touched.clear();
    }

    fn touch(&mut self, s: usize) {
        self.touched.push(s);
    }

    /// Maximum number of vertex-disjoint `color` paths, each starting at a distinct source
    /// and ending in a distinct group, stopping once `limit` paths are found.
    pub fn max_paths(&mut self, config: &Config, query: &FlowQuery<'_>, limit: usize) -> usize {
        self.reset();
        let n = self.sites.count();
        let g = query.groups.len();
        assert!(g <= 32, "at most 32 target groups");
        let nodes = 2 * n + 2 + g;
        if self.stamp.len() < nodes {
            self.stamp.resize(nodes, 0);
            self.parent.resize(nodes, NONE);
        }
        self.group_used.clear();
        self.group_used.resize(g, false);
        for (gi, group) in query.groups.iter().enumerate() {
            for &t in group.iter() {
                if query.allowed[t] {
                    self.group_of[t] |= 1 << gi;
                    self.touch(t);
                }
            }
        }
        let mut flow = 0;
        while flow < limit && self.augment(config, query) {
            flow += 1;
        }
        flow
    }

    /// Site sequences of the current paths with the group each one ends in, one per used
    /// source.
    pub fn paths(&self, query: &FlowQuery<'_>) -> Vec<(Vec<usize>, usize)> {
        let mut out = Vec::new();
        for &s in query.sources {
            if self.prev[s] != SOURCE {
                continue;
            }
            let mut path = vec![s];
            let mut u = s;
            while self.next[u] < SINK_BASE {
                u = self.next[u] as usize;
                path.push(u);
            }
            out.push((path, (self.next[u] - SINK_BASE) as usize));
        }
        out
    }

    fn augment(&mut self, config: &Config, query: &FlowQuery<'_>) -> bool {
        let n = self.sites.count();
        let source = 2 * n;
        let sink = 2 * n + 1;
        let group_node = |gi: usize| 2 * n + 2 + gi;
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let epoch = self.epoch;
        let mut queue = VecDeque::new();
        self.stamp[source] = epoch;
        queue.push_back(source);
        let mut found = false;

        macro_rules! visit {
            ($node:expr, $from:expr) => {{
                let node = $node;
                if self.stamp[node] != epoch {
                    self.stamp[node] = epoch;
                    self.parent[node] = $from as u32;
                    queue.push_back(node);
                }
            }};
        }

        'bfs: while let Some(u) = queue.pop_front() {
            if u == source {
                for &s in query.sources {
                    if query.allowed[s] && self.prev[s] != SOURCE {
                        visit!(2 * s, u);
                    }
                }
            } else if u == sink {
                found = true;
                break 'bfs;
            } else if u >= 2 * n + 2 {
                let gi = u - (2 * n + 2);
                if !self.group_used[gi] {
                    visit!(sink, u);
                    found = true;
                    break 'bfs;
                }
                for &t in query.groups[gi].iter() {
                    if self.next[t] == SINK_BASE + gi as u32 {
                        visit!(2 * t + 1, u);
                    }
                }
            } else if u % 2 == 0 {
                let s = u / 2;
                let used = self.prev[s] != NONE;
                if !used {
                    visit!(u + 1, u);
                } else if self.prev[s] != SOURCE {
                    let p = self.prev[s] as usize;
                    visit!(2 * p + 1, u);
                }
            } else {
                let s = u / 2;
                if self.prev[s] != NONE {
                    visit!(2 * s, u);
                }
                let mut gs = self.group_of[s];
                while gs != 0 {
                    let gi = gs.trailing_zeros();
                    gs &= gs - 1;
                    if self.next[s] != SINK_BASE + gi {
                        visit!(group_node(gi as usize), u);
                    }
                }
                if query.terminal.is_some_and(|t| t[s]) {
                    continue;
                }
                let next_s = self.next[s];
                let allowed = query.allowed;
                let mut pushes: [usize; 4] = [usize::MAX; 4];
                let mut k = 0;
                self.sites.for_each_passable(config, s, |t, _| {
                    if allowed[t] && next_s != t as u32 {
                        pushes[k] = t;
                        k += 1;
                    }
                });
                for &t in &pushes[..k] {
                    visit!(2 * t, u);
                }
            }
        }
        if !found {
            return false;
        }
        // walk back from the sink applying the augmentation
        let mut v = sink;
        while v != source {
            let u = self.parent[v] as usize;
            self.apply(u, v, n);
            v = u;
        }
        true
    }

    fn apply(&mut self, u: usize, v: usize, n: usize) {
        let source = 2 * n;
        let sink = 2 * n + 1;
        if u == source {
            let s = v / 2;
            self.prev[s] = SOURCE;
            self.touch(s);
        } else if v == sink {
            self.group_used[u - (2 * n + 2)] = true;
        } else if u >= 2 * n + 2 {
            // cancel t -> group
            let t = v / 2;
            if self.next[t] == SINK_BASE + (u - (2 * n + 2)) as u32 {
                self.next[t] = NONE;
            }
        } else if v >= 2 * n + 2 {
            let s = u / 2;
            self.next[s] = SINK_BASE + (v - (2 * n + 2)) as u32;
            self.touch(s);
        } else if u % 2 == 1 && v % 2 == 0 {
            // forward lattice edge out(s) -> in(t)
            let (s, t) = (u / 2, v / 2);
            self.next[s] = t as u32;
            self.prev[t] = s as u32;
            self.touch(s);
            self.touch(t);
        } else if u % 2 == 0 && v % 2 == 1 && u / 2 != v / 2 {
            // cancel lattice edge p -> s, walking in(s) -> out(p)
            let (s, p) = (u / 2, v / 2);
            if self.next[p] == s as u32 {
                self.next[p] = NONE;
            }
            if self.prev[s] == p as u32 {
                self.prev[s] = NONE;
            }
        }
        // split edges in(s) <-> out(s) carry no separate state
    }
}
