//! Brute-force oracles shared by the integration tests. They work on raw coordinates and
//! edge lookups only, without the crate's site indexing, flows or searches.
#![allow(dead_code)]

use std::collections::HashSet;

use percolab::lattice::{Config, Vertex};

pub type P = (i32, i32);

pub fn open(config: &Config, a: P, b: P) -> Option<bool> {
    let g = config.geometry();
    g.edge_between(Vertex::new(a.0, a.1), Vertex::new(b.0, b.1)).map(|e| config.is_open(e))
}

/// Primal edge crossed by the dual step a → b (dual (x, y) sits at (x + ½, y + ½)).
pub fn crossed(a: P, b: P) -> (P, P) {
    let (x, y) = (a.0.min(b.0), a.1.min(b.1));
    if a.1 == b.1 {
        ((x + 1, y), (x + 1, y + 1))
    } else {
        ((x, y + 1), (x + 1, y + 1))
    }
}

const STEPS: [P; 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

pub fn open_neighbors(config: &Config, p: P) -> Vec<P> {
    STEPS
        .iter()
        .map(|d| (p.0 + d.0, p.1 + d.1))
        .filter(|&q| open(config, p, q) == Some(true))
        .collect()
}

pub fn closed_dual_neighbors(config: &Config, p: P) -> Vec<P> {
    STEPS
        .iter()
        .map(|d| (p.0 + d.0, p.1 + d.1))
        .filter(|&q| {
            let (a, b) = crossed(p, q);
            open(config, a, b) == Some(false)
        })
        .collect()
}

/// Backtracking search for pairwise disjoint self-avoiding paths, arm `i` starting at
/// `starts[i]` and stopping at the first site where `stop` holds, which must satisfy
/// `goals[i]`. Sites in `used` are unavailable.
pub fn disjoint_arms(
    starts: &[P],
    goals: &[&dyn Fn(P) -> bool],
    inside: &dyn Fn(P) -> bool,
    stop: &dyn Fn(P) -> bool,
    neighbors: &dyn Fn(P) -> Vec<P>,
    used: &mut HashSet<P>,
) -> bool {
    fn extend(
        p: P,
        i: usize,
        starts: &[P],
        goals: &[&dyn Fn(P) -> bool],
        inside: &dyn Fn(P) -> bool,
        stop: &dyn Fn(P) -> bool,
        neighbors: &dyn Fn(P) -> Vec<P>,
        used: &mut HashSet<P>,
    ) -> bool {
        if stop(p) {
            return goals[i](p) && disjoint_arms(&starts[i + 1..], &goals[i + 1..], inside, stop, neighbors, used);
        }
        for q in neighbors(p) {
            if inside(q) && !used.contains(&q) {
                used.insert(q);
                let ok = extend(q, i, starts, goals, inside, stop, neighbors, used);
                used.remove(&q);
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let Some(&s) = starts.first() else { return true };
    if used.contains(&s) || !inside(s) {
        return false;
    }
    used.insert(s);
    let ok = extend(s, 0, starts, goals, inside, stop, neighbors, used);
    used.remove(&s);
    ok
}

/// A₃(n) in B(n): disjoint open paths from 0 and e₁ to ∂B(n), closed dual path from
/// (½, -½) to the dual boundary.
pub fn three_arm_oracle(config: &Config, n: i32) -> bool {
    let inside = |p: P| p.0.abs() <= n && p.1.abs() <= n;
    let stop = |p: P| p.0.abs() == n || p.1.abs() == n;
    let any = |_: P| true;
    let goals: [&dyn Fn(P) -> bool; 2] = [&any, &any];
    let nb = |p: P| open_neighbors(config, p);
    let open_ok = disjoint_arms(&[(0, 0), (1, 0)], &goals, &inside, &stop, &nb, &mut HashSet::new());
    if !open_ok {
        return false;
    }
    // closed arm: plain search
    let dual_inside = |p: P| (-n - 1..=n).contains(&p.0) && (-n - 1..=n).contains(&p.1);
    let mut seen = HashSet::from([(0, -1)]);
    let mut stack = vec![(0, -1)];
    while let Some(p) = stack.pop() {
        if p.0 == -n - 1 || p.0 == n || p.1 == -n - 1 || p.1 == n {
            return true;
        }
        for q in closed_dual_neighbors(config, p) {
            if dual_inside(q) && seen.insert(q) {
                stack.push(q);
            }
        }
    }
    false
}

/// A k = 3 witness of the inner event in B(24): open paths and closed dual paths (dual
/// vertex (x, y) at (x + ½, y + ½)). ⋆₁ = (-21, 0), ⋆₂ = (21, 0).
pub struct Skeleton {
    pub open: Vec<Vec<P>>,
    pub closed: Vec<Vec<P>>,
}

fn run(from: P, to: P) -> Vec<P> {
    let (dx, dy) = ((to.0 - from.0).signum(), (to.1 - from.1).signum());
    let mut out = vec![from];
    let mut p = from;
    while p != to {
        p = (p.0 + dx, p.1 + dy);
        out.push(p);
    }
    out
}

fn chain(corners: &[P]) -> Vec<P> {
    let mut out = vec![corners[0]];
    for w in corners.windows(2) {
        out.extend(run(w[0], w[1]).into_iter().skip(1));
    }
    out
}

pub fn inner_skeleton_k3() -> Skeleton {
    let open = vec![
        // ⋆₁ arms: west, north (continuing as the arc), east (continuing down through R6)
        chain(&[(-21, 0), (-24, 0)]),
        chain(&[(-21, 0), (-21, 20), (21, 20), (21, 0)]),
        chain(&[(-21, 0), (-20, 0), (-20, -24)]),
        // ⋆₂ arms: east; the west arm is part of the right crossing
        chain(&[(21, 0), (24, 0)]),
        chain(&[(8, 0), (21, 0)]),
        // left crossing and the vertical crossing through it
        chain(&[(-18, 0), (-8, 0)]),
        chain(&[(-16, -24), (-16, 2)]),
    ];
    let closed = vec![
        // shield from the north-west face of ⋆₁ to the north-east face of ⋆₂
        chain(&[(-22, 0), (-22, 21), (21, 21), (21, 0)]),
        // south-east arm of ⋆₁ down through R6
        chain(&[(-21, -1), (-21, -3), (-22, -3), (-22, -25)]),
        // south-west arm of ⋆₂ down through R7
        chain(&[(20, -1), (20, -25)]),
        // circuit of radius 8½ (its two defects are forced by the crossings)
        chain(&[(8, 8), (-9, 8), (-9, -9), (8, -9), (8, 8)]),
    ];
    Skeleton { open, closed }
}

impl Skeleton {
    /// Fixed edge states: planted open edges, and the primal edges crossed by planted
    /// closed dual paths (except where an open path needs them).
    pub fn fixed(&self, g: &percolab::lattice::BoxGeometry) -> Vec<(usize, bool)> {
        let mut out = std::collections::HashMap::new();
        for path in &self.closed {
            for w in path.windows(2) {
                let (a, b) = crossed(w[0], w[1]);
                if let Some(e) = g.edge_between(Vertex::new(a.0, a.1), Vertex::new(b.0, b.1)) {
                    out.insert(e.index(), false);
                }
            }
        }
        for path in &self.open {
            for w in path.windows(2) {
                let e = g.edge_between(Vertex::new(w[0].0, w[0].1), Vertex::new(w[1].0, w[1].1)).unwrap();
                out.insert(e.index(), true);
            }
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort();
        v
    }

    /// Skeleton edges fixed, everything else drawn at density `p`.
    pub fn fill(&self, g: percolab::lattice::BoxGeometry, p: f64, seed: u64, stream: u64) -> Config {
        let mut states = Config::sample_stream(g, p, seed, stream).unwrap().states().to_vec();
        for (e, s) in self.fixed(&g) {
            states[e] = s;
        }
        Config::from_states(g, states).unwrap()
    }

    /// Skeleton edges fixed, everything else closed.
    pub fn bare(&self, g: percolab::lattice::BoxGeometry) -> Config {
        self.fill(g, 0.0, 0, 0)
    }
}

/// Whether a site at (px, py) lies above a left-right crossing given as a vertex list:
/// an odd number of its horizontal edges pass straight below it.
fn above_crossing(host: &[P], px: f64, py: f64) -> bool {
    let mut count = 0;
    for w in host.windows(2) {
        if w[0].1 == w[1].1 {
            let (x0, x1) = (w[0].0.min(w[1].0) as f64, w[0].0.max(w[1].0) as f64);
            if x0 < px + 0.25 && px + 0.25 < x1 && (w[0].1 as f64) < py {
                count += 1;
            }
        }
    }
    count % 2 == 1
}

/// Condition-by-condition check of a shortcut record around a lowest crossing, from raw
/// coordinates only. `e` is the host edge position the detour must cover, if any.
pub fn revalidate_shortcut(
    config: &Config,
    host: &[P],
    rec: &percolab::shortcuts::ShortcutRecord,
    kappa: f64,
    e: Option<usize>,
) -> Result<(), String> {
    let n = config.geometry().n();
    let r: Vec<P> = rec.r.vertices.iter().map(|v| (v.x, v.y)).collect();
    let m = r.len();
    if m < 4 || r.iter().collect::<HashSet<_>>().len() != m {
        return Err("r not self-avoiding".into());
    }
    if r.windows(2).any(|w| open(config, w[0], w[1]) != Some(true)) {
        return Err("r not open".into());
    }
    // 1: interior strictly above the host
    let on_host: HashSet<P> = host.iter().copied().collect();
    for &p in &r[1..m - 1] {
        if on_host.contains(&p) || !above_crossing(host, p.0 as f64, p.1 as f64) {
            return Err(format!("interior vertex {p:?} not above"));
        }
    }
    // 2: straight rightward host runs at both ends, first and last steps vertical
    let (a, b) = rec.tau;
    let (w0, wm) = (r[0], r[m - 1]);
    if a == 0 || b + 1 >= host.len() || a >= b || host[a] != w0 || host[b] != wm {
        return Err("endpoints".into());
    }
    for i in [a, b] {
        let v = host[i];
        if host[i - 1] != (v.0 - 1, v.1) || host[i + 1] != (v.0 + 1, v.1) {
            return Err(format!("host not straight at {v:?}"));
        }
    }
    if r[1] != (w0.0, w0.1 + 1) || r[m - 2] != (wm.0, wm.1 + 1) {
        return Err("first or last step not vertical".into());
    }
    // 3: τ holds e; r ∪ τ closes up (interiors already off the host)
    if let Some(e) = e {
        if !(a <= e && e < b) {
            return Err("detour misses e".into());
        }
    }
    // 4: the shield
    let s: Vec<P> = rec.shield.vertices.iter().map(|v| (v.x, v.y)).collect();
    let k = s.len();
    if k < 2
        || s[0] != (w0.0 - 1, w0.1)
        || s[1] != (w0.0 - 1, w0.1 + 1)
        || s[k - 1] != (wm.0, wm.1)
        || s[k - 2] != (wm.0, wm.1 + 1)
    {
        return Err("shield endpoints".into());
    }
    if s.iter().collect::<HashSet<_>>().len() != k {
        return Err("shield not self-avoiding".into());
    }
    for w in s.windows(2) {
        if (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs() != 1 {
            return Err("shield step".into());
        }
        let (p, q) = crossed(w[0], w[1]);
        if open(config, p, q) != Some(false) {
            return Err("shield not closed".into());
        }
    }
    for &d in &s {
        let inside = (-n..n).contains(&d.0) && (-n..n).contains(&d.1);
        if !inside || !above_crossing(host, d.0 as f64 + 0.5, d.1 as f64 + 0.5) {
            return Err(format!("shield face {d:?} not above"));
        }
    }
    // 5: gain
    if (m - 1) as f64 > kappa * (b - a) as f64 {
        return Err("gain".into());
    }
    Ok(())
}

/// Largest total (b - a) over pairwise vertex-disjoint subfamilies, by enumeration.
pub fn brute_force_detour(intervals: &[(usize, usize)]) -> usize {
    let k = intervals.len();
    assert!(k <= 16);
    let mut best = 0;
    for mask in 0u32..(1 << k) {
        let chosen: Vec<(usize, usize)> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| intervals[i]).collect();
        let ok = chosen.iter().enumerate().all(|(i, x)| chosen[i + 1..].iter().all(|y| x.1 < y.0 || y.1 < x.0));
        if ok {
            best = best.max(chosen.iter().map(|x| x.1 - x.0).sum());
        }
    }
    best
}

/// Every crossing of B(n): open self-avoiding paths from x = -n to x = n whose other
/// vertices have |x| < n.
pub fn all_crossings(config: &Config, n: i32) -> Vec<Vec<P>> {
    fn go(config: &Config, n: i32, path: &mut Vec<P>, out: &mut Vec<Vec<P>>) {
        let u = *path.last().unwrap();
        if path.len() > 1 && u.0 == n {
            out.push(path.clone());
            return;
        }
        for q in open_neighbors(config, u) {
            if q.0 == -n || path.contains(&q) {
                continue;
            }
            path.push(q);
            go(config, n, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for y in -n..=n {
        go(config, n, &mut vec![(-n, y)], &mut out);
    }
    out
}

/// Faces of B(n) below a crossing: a face is below when the upward ray from its centre
/// meets the path an odd number of times.
pub fn faces_below(path: &[P], n: i32) -> usize {
    let mut count = 0;
    for fx in -n..n {
        for fy in -n..n {
            let hits = path
                .windows(2)
                .filter(|w| w[0].1 == w[1].1 && w[0].0.min(w[1].0) == fx && w[0].1 > fy)
                .count();
            count += hits % 2;
        }
    }
    count
}

/// (lowest length, shortest length) by enumeration: the lowest crossing is the one with
/// the fewest faces below it.
pub fn crossing_lengths_oracle(config: &Config, n: i32) -> Option<(usize, usize)> {
    let all = all_crossings(config, n);
    let lowest = all.iter().min_by_key(|p| faces_below(p, n))?;
    let shortest = all.iter().map(Vec::len).min()?;
    Some((lowest.len() - 1, shortest - 1))
}

/// Minimum defects over simple cycles winding once around the origin, enumerated by DFS.
/// `sites` are integer points scaled by two (so dual points sit at odd coordinates);
/// `edge_state` gives Some(is-defect) for the step between two sites, None if no step.
pub fn min_defect_cycle_oracle(sites: &[P], edge_state: &dyn Fn(P, P) -> Option<bool>) -> Option<usize> {
    fn angle(p: P) -> f64 {
        (p.1 as f64).atan2(p.0 as f64)
    }
    fn turn(a: P, b: P) -> f64 {
        let mut d = angle(b) - angle(a);
        while d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        }
        while d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        d
    }
    let set: HashSet<P> = sites.iter().copied().collect();
    let steps = [(2, 0), (-2, 0), (0, 2), (0, -2)];
    let mut best: Option<usize> = None;
    // each cycle is enumerated from its least site
    let mut order: Vec<P> = sites.to_vec();
    order.sort();
    for &start in &order {
        let mut stack: Vec<(P, usize, f64, Vec<P>)> = vec![(start, 0, 0.0, vec![start])];
        while let Some((u, cost, wind, path)) = stack.pop() {
            for d in steps {
                let q = (u.0 + d.0, u.1 + d.1);
                if !set.contains(&q) || q < start {
                    continue;
                }
                let Some(defect) = edge_state(u, q) else { continue };
                let c = cost + defect as usize;
                let w = wind + turn(u, q);
                if q == start {
                    if path.len() >= 3 && (w.abs() / (2.0 * std::f64::consts::PI) - 1.0).abs() < 1e-6 {
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                    continue;
                }
                if path.contains(&q) {
                    continue;
                }
                let mut p2 = path.clone();
                p2.push(q);
                stack.push((q, c, w, p2));
            }
        }
    }
    best
}

/// Sites of annulus(inner, outer) for the cycle oracle, primal or dual, scaled by two.
pub fn annulus_sites(inner: i32, outer: i32, n: i32, dual: bool) -> Vec<P> {
    let mut out = Vec::new();
    if dual {
        for x in -n - 1..=n {
            for y in -n - 1..=n {
                let norm = (2 * x + 1).abs().max((2 * y + 1).abs());
                if norm > 2 * inner && norm <= 2 * outer {
                    out.push((2 * x + 1, 2 * y + 1));
                }
            }
        }
    } else {
        for x in -n..=n {
            for y in -n..=n {
                let norm = x.abs().max(y.abs());
                if norm > inner && norm <= outer {
                    out.push((2 * x, 2 * y));
                }
            }
        }
    }
    out
}
