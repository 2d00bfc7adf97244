//! Horizontal crossings of the box: existence, the lowest crossing, the shortest crossing
//! and the three-arm description of the lowest one.
//!
//! A crossing is an open self-avoiding path from a left-side vertex to a right-side vertex
//! whose other vertices avoid both sides.

mod lowest;
mod shortest;
mod three_arm;

use std::collections::VecDeque;

pub use lowest::{bottom_cluster, lowest_crossing, BottomCluster};
pub use shortest::shortest_crossing;
pub use three_arm::{
    count_three_arm_edges, three_arm_characterization, three_arm_edges, ThreeArmChecker, ThreeArmTargets,
};

use crate::connectivity::Sites;
use crate::lattice::Config;
use crate::path::LatticePath;

/// Whether an open path joins the left and right sides.
pub fn has_horizontal_crossing(config: &Config) -> bool {
    let g = config.geometry();
    let sites = Sites::primal(*g);
    let side = g.side();
    let mut seen = vec![false; sites.count()];
    let mut queue: VecDeque<usize> = (0..side).map(|row| row * side).collect();
    for &s in &queue {
        seen[s] = true;
    }
    while let Some(s) = queue.pop_front() {
        if s % side == side - 1 {
            return true;
        }
        sites.for_each_passable(config, s, |t, _| {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        });
    }
    false
}

/// Whether a closed dual path joins the dual rings below and above the box.
pub fn has_dual_vertical_crossing(config: &Config) -> bool {
    bottom_cluster(config).reaches_top
}

/// Crossing statistics of one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingRecord {
    pub n: u32,
    pub seed: u64,
    pub stream: u64,
    pub has_crossing: bool,
    pub lowest: Option<LatticePath>,
    pub shortest: Option<LatticePath>,
}

impl CrossingRecord {
    pub fn of(config: &Config) -> Self {
        let lowest = lowest_crossing(config).ok();
        let shortest = lowest.as_ref().and_then(|_| shortest_crossing(config).ok());
        CrossingRecord {
            n: config.geometry().half_side(),
            seed: config.seed(),
            stream: config.stream(),
            has_crossing: lowest.is_some(),
            lowest,
            shortest,
        }
    }

    /// L_n, the edge count of the lowest crossing.
    pub fn lowest_len(&self) -> Option<usize> {
        self.lowest.as_ref().map(LatticePath::len)
    }

    /// S_n, the edge count of the shortest crossing.
    pub fn shortest_len(&self) -> Option<usize> {
        self.shortest.as_ref().map(LatticePath::len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{BoxGeometry, EdgeId, Vertex};
    use crate::seed::rng_for;
    use rand::Rng;

    /// All crossings: open self-avoiding paths left to right with interior off both sides.
    fn crossings(c: &Config) -> Vec<Vec<Vertex>> {
        fn go(c: &Config, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
            let g = c.geometry();
            let u = *path.last().unwrap();
            if path.len() > 1 && g.is_right_side(u) {
                out.push(path.clone());
                return;
            }
            for (w, e) in g.neighbors(u).collect::<Vec<_>>() {
                if c.is_open(e) && !g.is_left_side(w) && !path.contains(&w) {
                    path.push(w);
                    go(c, path, out);
                    path.pop();
                }
            }
        }
        let g = c.geometry();
        let n = g.n();
        let mut out = Vec::new();
        for y in -n..=n {
            go(c, &mut vec![Vertex::new(-n, y)], &mut out);
        }
        out
    }

    /// Faces of the box below a crossing: flood from the bottom without crossing it.
    fn faces_below(g: &BoxGeometry, path: &[Vertex]) -> usize {
        let blocked: Vec<EdgeId> = path.windows(2).map(|w| g.edge_between(w[0], w[1]).unwrap()).collect();
        let n = g.n();
        let mut seen = std::collections::HashSet::new();
        let mut stack: Vec<_> = (-n..n).map(|x| crate::lattice::DualVertex::new(x, -n)).collect();
        stack.retain(|d| {
            let e = g.dual_edge_between(*d, d.offset(0, -1)).unwrap();
            !blocked.contains(&e)
        });
        for d in &stack {
            seen.insert(*d);
        }
        while let Some(d) = stack.pop() {
            for (w, e) in g.dual_neighbors(d).collect::<Vec<_>>() {
                if g.is_face(w) && !blocked.contains(&e) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len()
    }

    struct Brute {
        crossing: bool,
        lowest: Option<Vec<Vertex>>,
        shortest: Option<usize>,
    }

    fn brute(c: &Config) -> Brute {
        let all = crossings(c);
        if all.is_empty() {
            return Brute { crossing: false, lowest: None, shortest: None };
        }
        let g = c.geometry();
        let below: Vec<usize> = all.iter().map(|p| faces_below(g, p)).collect();
        let min = *below.iter().min().unwrap();
        let minimal: Vec<&Vec<Vertex>> = all.iter().zip(&below).filter(|(_, &b)| b == min).map(|(p, _)| p).collect();
        assert_eq!(minimal.len(), 1, "lowest crossing is not unique");
        Brute {
            crossing: true,
            lowest: Some(minimal[0].clone()),
            shortest: all.iter().map(|p| p.len() - 1).min(),
        }
    }

    fn check_against_brute(c: &Config) {
        let b = brute(c);
        let rec = CrossingRecord::of(c);
        assert_eq!(has_horizontal_crossing(c), b.crossing);
        assert_eq!(rec.has_crossing, b.crossing);
        assert_eq!(has_dual_vertical_crossing(c), !b.crossing);
        if let Some(low) = b.lowest {
            let got = rec.lowest.as_ref().unwrap();
            assert_eq!(got.vertices, low);
            assert!(got.has_color(c) && got.is_self_avoiding());
            assert_eq!(rec.shortest_len(), b.shortest);
            let mut arm = three_arm_edges(c);
            arm.sort();
            let mut edges = got.edges.clone();
            edges.sort();
            assert_eq!(arm, edges);
        }
    }

    #[test]
    fn trivial_configs() {
        for n in 1..=6 {
            let g = BoxGeometry::new(n).unwrap();
            let open = Config::all_open(g);
            let rec = CrossingRecord::of(&open);
            let n = n as i32;
            let bottom: Vec<Vertex> = (-n..=n).map(|x| Vertex::new(x, -n)).collect();
            assert_eq!(rec.lowest.as_ref().unwrap().vertices, bottom);
            assert_eq!(rec.shortest_len(), Some(2 * n as usize));
            // the closed arm of a bottom-row edge has length zero
            let mut arm = three_arm_edges(&open);
            arm.sort();
            let mut low = rec.lowest.as_ref().unwrap().edges.clone();
            low.sort();
            assert_eq!(arm, low);
            let closed = Config::all_closed(g);
            assert!(!has_horizontal_crossing(&closed));
            assert_eq!(lowest_crossing(&closed), Err(crate::Error::NoCrossing));
            assert!(shortest_crossing(&closed).is_err());
        }
    }

    #[test]
    fn single_bottom_row_crossing() {
        let g = BoxGeometry::new(3).unwrap();
        let row: Vec<Vertex> = (-3..=3).map(|x| Vertex::new(x, -3)).collect();
        let c = Config::with_open_paths(g, &[&row]).unwrap();
        let low = lowest_crossing(&c).unwrap();
        assert_eq!(low.vertices, row);
        for e in g.edges() {
            assert_eq!(three_arm_characterization(&c, e), low.edges.contains(&e));
        }
    }

    #[test]
    fn snake_is_its_own_shortest_and_lowest() {
        let g = BoxGeometry::new(2).unwrap();
        let v = Vertex::new;
        let snake = [v(-2, 2), v(-1, 2), v(-1, -2), v(0, -2), v(0, 2), v(1, 2), v(1, 0), v(2, 0)];
        let mut verts = vec![snake[0]];
        for w in snake.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mut cur = a;
            while cur != b {
                cur = Vertex::new(cur.x + (b.x - cur.x).signum(), cur.y + (b.y - cur.y).signum());
                verts.push(cur);
            }
        }
        let c = Config::with_open_paths(g, &[&verts]).unwrap();
        assert_eq!(shortest_crossing(&c).unwrap().vertices, verts);
        assert_eq!(lowest_crossing(&c).unwrap().vertices, verts);
        check_against_brute(&c);
    }

    #[test]
    fn exhaustive_b1() {
        let g = BoxGeometry::new(1).unwrap();
        let mut crossing = 0;
        for bits in 0u64..(1 << 12) {
            let c = Config::from_bits(g, bits).unwrap();
            check_against_brute(&c);
            crossing += has_horizontal_crossing(&c) as u32;
        }
        // P(H_1) = 43/64, frozen from an independent enumeration
        assert_eq!(crossing, 2752);
    }

    #[test]
    fn b2_samples_against_enumeration() {
        let g = BoxGeometry::new(2).unwrap();
        for seed in 0..400 {
            check_against_brute(&Config::sample(g, 0.5, seed).unwrap());
        }
        for seed in 0..200 {
            check_against_brute(&Config::sample(g, 0.65, seed).unwrap());
        }
    }

    #[test]
    fn characterization_and_orders_on_larger_boxes() {
        for n in [4u32, 8] {
            let g = BoxGeometry::new(n).unwrap();
            let mut done = 0;
            let mut seed = 0;
            while done < 60 {
                seed += 1;
                let c = Config::sample(g, 0.5, seed).unwrap();
                let rec = CrossingRecord::of(&c);
                assert_eq!(rec.has_crossing, has_horizontal_crossing(&c));
                assert_eq!(!rec.has_crossing, has_dual_vertical_crossing(&c));
                if !rec.has_crossing {
                    continue;
                }
                done += 1;
                let low = rec.lowest.as_ref().unwrap();
                let (s, l) = (rec.shortest_len().unwrap(), rec.lowest_len().unwrap());
                assert!(2 * n as usize <= s && s <= l && l <= c.open_count());
                let mut arm = three_arm_edges(&c);
                arm.sort();
                let mut edges = low.edges.clone();
                edges.sort();
                assert_eq!(arm, edges, "n {n} seed {seed}");
                // the mirror image has the mirrored lowest crossing, walked the other way
                let m = lowest_crossing(&c.mirrored()).unwrap();
                let back: Vec<Vertex> = m.vertices.iter().rev().map(|v| Vertex::new(-v.x, v.y)).collect();
                assert_eq!(back, low.vertices);
            }
        }
    }

    #[test]
    fn count_three_arm_edges_matches_per_edge_oracle() {
        use crate::lattice::{Rect, RegionMask};

        /// Simple open paths inside `rect` from `start`, ending at the first target met.
        fn arms(c: &Config, rect: &RegionMask, start: Vertex, targets: &[Vertex]) -> Vec<Vec<Vertex>> {
            fn go(c: &Config, rect: &RegionMask, targets: &[Vertex], p: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
                let u = *p.last().unwrap();
                if targets.contains(&u) {
                    out.push(p.clone());
                    return;
                }
                for (w, e) in c.geometry().neighbors(u).collect::<Vec<_>>() {
                    if c.is_open(e) && rect.contains_vertex(w) && !p.contains(&w) {
                        p.push(w);
                        go(c, rect, targets, p, out);
                        p.pop();
                    }
                }
            }
            let mut out = Vec::new();
            go(c, rect, targets, &mut vec![start], &mut out);
            out
        }
        let g = BoxGeometry::new(3).unwrap();
        let mut rng = rng_for(5, 0);
        for seed in 0..150 {
            let c = Config::sample(g, 0.5, seed).unwrap();
            let (x0, y0) = (rng.gen_range(-3..=0), rng.gen_range(-3..=0));
            let rect = RegionMask::from_rect(Rect::closed(x0 as f64, x0 as f64 + 3.0, y0 as f64, y0 as f64 + 3.0));
            let targets = ThreeArmTargets {
                left: (y0..=y0 + 3).map(|y| Vertex::new(x0, y)).collect(),
                right: (y0..=y0 + 3).map(|y| Vertex::new(x0 + 3, y)).collect(),
                bottom: (x0..x0 + 3).map(|x| crate::lattice::DualVertex::new(x, y0)).collect(),
            };
            let got = count_three_arm_edges(&c, &rect, &targets).unwrap();
            // per-edge oracle: disjoint paths by max-flow, closed arm by plain dual search
            let mut want = 0;
            for e in g.edges().filter(|&e| rect.contains_edge(&g, e)) {
                if !c.is_open(e) {
                    continue;
                }
                let (a, b) = g.endpoints(e).unwrap();
                let both: Vec<Vertex> = targets.left.iter().chain(&targets.right).copied().collect();
                let ends_in = |p: &Vec<Vertex>, t: &[Vertex]| t.contains(p.last().unwrap());
                let mut arms_ok = false;
                for (s, t) in [(a, b), (b, a)] {
                    let ps = arms(&c, &rect, s, &both);
                    let qs = arms(&c, &rect, t, &both);
                    arms_ok |= ps.iter().filter(|p| ends_in(p, &targets.left)).any(|p| {
                        qs.iter().filter(|q| ends_in(q, &targets.right)).any(|q| p.iter().all(|x| !q.contains(x)))
                    });
                }
                let arms = arms_ok;
                let de = g.dual_of(e).unwrap();
                let mut seen = vec![de.ends.0, de.ends.1];
                seen.retain(|d| rect.contains_dual(*d));
                let mut i = 0;
                while i < seen.len() {
                    let d = seen[i];
                    i += 1;
                    for (w, f) in g.dual_neighbors(d).collect::<Vec<_>>() {
                        if !c.is_open(f) && rect.contains_dual(w) && !seen.contains(&w) {
                            seen.push(w);
                        }
                    }
                }
                let closed = seen.iter().any(|d| targets.bottom.contains(d));
                want += (arms && closed) as usize;
            }
            assert_eq!(got, want);
        }
        let rect = RegionMask::from_rect(Rect::closed(-1.0, 1.0, -1.0, 1.0));
        let bad = ThreeArmTargets { left: vec![], right: vec![Vertex::new(1, 0)], bottom: vec![] };
        assert!(count_three_arm_edges(&Config::all_open(g), &rect, &bad).is_err());
        let t = ThreeArmTargets {
            left: vec![Vertex::new(-1, 0)],
            right: vec![Vertex::new(1, 0)],
            bottom: vec![crate::lattice::DualVertex::new(0, -1)],
        };
        assert_eq!(count_three_arm_edges(&Config::all_closed(g), &rect, &t).unwrap(), 0);
    }
}
