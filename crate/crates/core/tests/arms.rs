mod common;

use std::collections::HashSet;

use common::{closed_dual_neighbors, open, open_neighbors, three_arm_oracle, P};
use percolab::arms::{
    detect_arm_event, detect_circuit_stack, detect_ek_prime_inner, detect_five_arm_point, estimate_pi3,
    five_arm_points, measure_conditional_frequency, Arm, ArmSpec, Center, FiveArmLanding, StarSide,
};
use percolab::connectivity::{min_defect_circuit, CircuitKind};
use percolab::crossings::has_horizontal_crossing;
use percolab::lattice::{BoxGeometry, Config, Rect, Vertex};
use percolab::sampling::SampleSpec;
use percolab::Error;

fn line(points: &[(i32, i32)]) -> Vec<Vertex> {
    points.iter().map(|&(x, y)| Vertex::new(x, y)).collect()
}

#[test]
fn three_arm_trivial_cases() {
    for n in 1..=4 {
        let g = BoxGeometry::new(n).unwrap();
        let spec = ArmSpec::three_arm(n);
        assert!(!detect_arm_event(&Config::all_open(g), &spec).unwrap());
        assert!(!detect_arm_event(&Config::all_closed(g), &spec).unwrap());
        // open horizontal line through the origin plus an open column up from 0;
        // the closed dual arm runs straight down from (½, -½)
        let n = n as i32;
        let row: Vec<(i32, i32)> = (-n..=n).map(|x| (x, 0)).collect();
        let col: Vec<(i32, i32)> = (0..=n).map(|y| (0, y)).collect();
        let c = Config::with_open_paths(g, &[&line(&row), &line(&col)]).unwrap();
        assert!(detect_arm_event(&c, &spec).unwrap());
        assert!(three_arm_oracle(&c, n));
    }
}

#[test]
fn pi3_of_one_by_exhaustion() {
    let g = BoxGeometry::new(1).unwrap();
    let spec = ArmSpec::three_arm(1);
    let mut hits = 0;
    for mask in 0..1u64 << 12 {
        let c = Config::from_bits(g, mask).unwrap();
        let d = detect_arm_event(&c, &spec).unwrap();
        assert_eq!(d, three_arm_oracle(&c, 1), "mask {mask:#x}");
        hits += d as u32;
    }
    // frozen from an independent enumeration: π₃(1) = 3249/4096
    assert_eq!(hits, 3249);
}

#[test]
fn three_arm_matches_oracle_on_samples() {
    for n in [2u32, 3] {
        let g = BoxGeometry::new(n).unwrap();
        let spec = ArmSpec::three_arm(n);
        for (i, p) in [0.4, 0.5, 0.6].into_iter().enumerate() {
            for s in 0..300 {
                let c = Config::sample_stream(g, p, 17 + i as u64, s).unwrap();
                assert_eq!(detect_arm_event(&c, &spec).unwrap(), three_arm_oracle(&c, n as i32), "n={n} p={p} s={s}");
            }
        }
    }
}

#[test]
fn three_arm_shrinks_with_radius() {
    let g = BoxGeometry::new(10).unwrap();
    let specs: Vec<ArmSpec> = (1..=10).map(|r| ArmSpec { domain: Rect::centered(r as f64), ..ArmSpec::three_arm(r) }).collect();
    for s in 0..200 {
        let c = Config::sample_stream(g, 0.5, 3, s).unwrap();
        let hits: Vec<bool> = specs.iter().map(|sp| detect_arm_event(&c, sp).unwrap()).collect();
        assert!(hits.windows(2).all(|w| w[0] || !w[1]), "sample {s}: {hits:?}");
    }
}

#[test]
fn two_arm_annulus_needs_both_colors() {
    let g = BoxGeometry::new(6).unwrap();
    let spec = ArmSpec::two_arm_annulus(2, 6);
    assert!(!detect_arm_event(&Config::all_open(g), &spec).unwrap());
    assert!(!detect_arm_event(&Config::all_closed(g), &spec).unwrap());
    let row: Vec<(i32, i32)> = (2..=6).map(|x| (x, 0)).collect();
    let c = Config::with_open_paths(g, &[&line(&row)]).unwrap();
    assert!(detect_arm_event(&c, &spec).unwrap());
}

#[test]
fn windows_must_sit_on_the_boundary() {
    let g = BoxGeometry::new(4).unwrap();
    let mut spec = ArmSpec::three_arm(4);
    spec.arms[0] = Arm::open().landing(Rect::closed(-1.0, 1.0, 2.0, 2.0));
    assert!(matches!(detect_arm_event(&Config::all_open(g), &spec), Err(Error::InvalidArmSpec(_))));
    spec.arms[0] = Arm::open().landing(Rect::closed(-1.0, 1.0, 4.0, 4.0));
    assert!(detect_arm_event(&Config::all_open(g), &spec).is_ok());
    let big = ArmSpec::three_arm(5);
    assert!(matches!(detect_arm_event(&Config::all_open(g), &big), Err(Error::OutsideBox { .. })));
    let empty = ArmSpec { arms: vec![], ..ArmSpec::three_arm(4) };
    assert!(detect_arm_event(&Config::all_open(g), &empty).is_err());
}

/// Independent five-arm test at `v`, with every arm tied to its own window.
fn five_arm_oracle(c: &Config, landing: FiveArmLanding, v: P) -> bool {
    let s = (1u64 << landing.k) as f64;
    let dom = landing.domain();
    let (x0, x1, y0, y1) = (dom.x0.floor() as i32, dom.x1.ceil() as i32, dom.y0.floor() as i32, dom.y1.ceil() as i32);
    if !(x0 < v.0 && v.0 < x1 && y0 < v.1 && v.1 < y1) {
        return false;
    }
    let within = |t: i32, a: f64, b: f64| a <= t as f64 && t as f64 <= b;
    let meets = |t: i32, a: f64, b: f64| t as f64 <= b && (t + 1) as f64 >= a;
    let third = s / 3.0;
    // windows
    type Pred<'a> = Box<dyn Fn(P) -> bool + 'a>;
    let top = move |a: f64, b: f64| -> Pred { Box::new(move |p: P| p.1 == y1 && within(p.0, a, b)) };
    let bottom = move |a: f64, b: f64| -> Pred { Box::new(move |p: P| p.1 == y0 && within(p.0, a, b)) };
    let left: Pred = Box::new(move |p: P| p.0 == x0 && within(p.1, -third, third));
    let right: Pred = Box::new(move |p: P| p.0 == x1 && within(p.1, -third, third));
    let dtop = move |a: f64, b: f64| -> Pred { Box::new(move |d: P| d.1 == y1 && meets(d.0, a, b)) };
    let dbottom = move |a: f64, b: f64| -> Pred { Box::new(move |d: P| d.1 == y0 - 1 && meets(d.0, a, b)) };

    // (first step, window) for open arms; (from, to, window) for closed arms
    let (opens, closeds): (Vec<(P, Pred)>, Vec<(P, P, Pred)>) = match landing.side {
        StarSide::Left => (
            vec![
                ((0, 1), top(-8.0 * s / 3.0, -15.0 * s / 6.0)),
                ((1, 0), bottom(-8.0 * s / 3.0, -7.0 * s / 3.0)),
                ((-1, 0), left),
            ],
            vec![
                ((-1, 0), (-1, 1), dtop(-17.0 * s / 6.0, -8.0 * s / 3.0)),
                ((0, -1), (0, -2), dbottom(-3.0 * s, -8.0 * s / 3.0)),
            ],
        ),
        StarSide::Right => (
            vec![
                ((0, 1), top(15.0 * s / 6.0, 8.0 * s / 3.0)),
                ((1, 0), right),
                ((-1, 0), Box::new(move |p: P| p.0 == x0 && within(p.1, -third, third))),
            ],
            vec![
                ((0, 0), (0, 1), dtop(8.0 * s / 3.0, 17.0 * s / 6.0)),
                ((-1, -1), (-1, -2), dbottom(7.0 * s / 3.0, 3.0 * s)),
            ],
        ),
    };
    for (d, _) in &opens {
        if open(c, v, (v.0 + d.0, v.1 + d.1)) != Some(true) {
            return false;
        }
    }
    for (f, t, _) in &closeds {
        let (a, b) = common::crossed((v.0 + f.0, v.1 + f.1), (v.0 + t.0, v.1 + t.1));
        if open(c, a, b) != Some(false) {
            return false;
        }
    }
    let inside = |p: P| (x0..=x1).contains(&p.0) && (y0..=y1).contains(&p.1);
    let stop = |p: P| p.0 == x0 || p.0 == x1 || p.1 == y0 || p.1 == y1;
    let starts: Vec<P> = opens.iter().map(|(d, _)| (v.0 + d.0, v.1 + d.1)).collect();
    let goals: Vec<&dyn Fn(P) -> bool> = opens.iter().map(|(_, w)| w.as_ref()).collect();
    let nb = |p: P| open_neighbors(c, p);
    if !common::disjoint_arms(&starts, &goals, &inside, &stop, &nb, &mut HashSet::from([v])) {
        return false;
    }
    let dinside = |d: P| (x0 - 1..=x1).contains(&d.0) && (y0 - 1..=y1).contains(&d.1);
    let dstop = |d: P| d.0 == x0 - 1 || d.0 == x1 || d.1 == y0 - 1 || d.1 == y1;
    let froms: HashSet<P> = closeds.iter().map(|(f, _, _)| (v.0 + f.0, v.1 + f.1)).collect();
    let dstarts: Vec<P> = closeds.iter().map(|(_, t, _)| (v.0 + t.0, v.1 + t.1)).collect();
    let dgoals: Vec<&dyn Fn(P) -> bool> = closeds.iter().map(|(_, _, w)| w.as_ref()).collect();
    let dnb = |d: P| closed_dual_neighbors(c, d);
    let mut used = froms;
    common::disjoint_arms(&dstarts, &dgoals, &dinside, &dstop, &dnb, &mut used)
}

fn planted_left_k2() -> Config {
    let g = BoxGeometry::new(12).unwrap();
    Config::with_open_paths(
        g,
        &[
            &line(&[(-11, 0), (-12, 0)]),
            &line(&[(-11, 0), (-11, 1), (-10, 1), (-10, 2)]),
            &line(&[(-11, 0), (-10, 0), (-10, -1), (-10, -2)]),
        ],
    )
    .unwrap()
}

fn planted_right_k2() -> Config {
    let g = BoxGeometry::new(12).unwrap();
    Config::with_open_paths(
        g,
        &[
            &line(&[(11, 0), (10, 0), (9, 0)]),
            &line(&[(11, 0), (11, 1), (10, 1), (10, 2)]),
            &line(&[(11, 0), (12, 0)]),
        ],
    )
    .unwrap()
}

#[test]
fn planted_five_arm_points() {
    let left = FiveArmLanding::new(2, StarSide::Left);
    let right = FiveArmLanding::new(2, StarSide::Right);
    let c = planted_left_k2();
    assert_eq!(five_arm_points(&c, &left.search_box(), left).unwrap(), vec![Vertex::new(-11, 0)]);
    assert!(five_arm_oracle(&c, left, (-11, 0)));
    let c = planted_right_k2();
    assert_eq!(five_arm_points(&c, &right.search_box(), right).unwrap(), vec![Vertex::new(11, 0)]);
    assert!(five_arm_oracle(&c, right, (11, 0)));
    // swapping the sides breaks the window pattern
    assert_eq!(detect_five_arm_point(&planted_left_k2().mirrored(), &right.search_box(), right).unwrap(), None);
}

#[test]
fn five_arm_points_need_both_colors() {
    let g = BoxGeometry::new(24).unwrap();
    for side in [StarSide::Left, StarSide::Right] {
        let l = FiveArmLanding::new(3, side);
        assert_eq!(detect_five_arm_point(&Config::all_open(g), &l.search_box(), l).unwrap(), None);
        assert_eq!(detect_five_arm_point(&Config::all_closed(g), &l.search_box(), l).unwrap(), None);
    }
}

fn scan_against_oracle(k: u32, samples: u64, seed: u64) -> usize {
    let n = 3 << k;
    let g = BoxGeometry::new(n).unwrap();
    let mut found = 0;
    for side in [StarSide::Left, StarSide::Right] {
        let l = FiveArmLanding::new(k, side);
        let b = l.search_box();
        let candidates: Vec<Vertex> = g.vertices().filter(|v| b.contains(v.x as f64, v.y as f64)).collect();
        for s in 0..samples {
            let c = Config::sample_stream(g, 0.5, seed, s).unwrap();
            let pts = five_arm_points(&c, &b, l).unwrap();
            let brute: Vec<Vertex> =
                candidates.iter().copied().filter(|v| five_arm_oracle(&c, l, (v.x, v.y))).collect();
            let mut sorted = brute.clone();
            sorted.sort();
            assert_eq!(pts, sorted, "k={k} {side:?} sample {s}");
            assert!(pts.len() <= 1, "k={k} {side:?} sample {s}: {pts:?}");
            found += pts.len();
        }
    }
    found
}

#[test]
fn five_arm_scan_matches_oracle_k2() {
    let found = scan_against_oracle(2, 3000, 5);
    assert!(found >= 5, "only {found} five-arm points seen");
}

#[test]
fn five_arm_scan_matches_oracle_k3() {
    let found = scan_against_oracle(3, 600, 6);
    assert!(found >= 1, "only {found} five-arm points seen");
}

#[test]
fn inner_event_trivial_cases() {
    for k in 2..=3 {
        let g = BoxGeometry::new(3 << k).unwrap();
        assert_eq!(detect_ek_prime_inner(&Config::all_open(g), k).unwrap(), None);
        assert_eq!(detect_ek_prime_inner(&Config::all_closed(g), k).unwrap(), None);
    }
    let g = BoxGeometry::new(11).unwrap();
    assert!(matches!(detect_ek_prime_inner(&Config::all_open(g), 2), Err(Error::OutsideBox { .. })));
}

#[test]
fn pi3_estimates() {
    let e = estimate_pi3(4, 50, 1, 1.0).unwrap();
    assert_eq!((e.mean, e.se), (0.0, 0.0));
    let e = estimate_pi3(1, 4000, 9, 0.5).unwrap();
    let exact = 3249.0 / 4096.0;
    assert!((e.mean - exact).abs() <= 3.0 * e.se, "{} vs {exact} (se {})", e.mean, e.se);
    assert_eq!(estimate_pi3(3, 200, 2, 0.5).unwrap(), estimate_pi3(3, 200, 2, 0.5).unwrap());
    let est: Vec<_> = [2, 4, 8, 16].iter().map(|&n| estimate_pi3(n, 1500, 4, 0.5).unwrap()).collect();
    for w in est.windows(2) {
        let tol = 2.0 * (w[0].se.powi(2) + w[1].se.powi(2)).sqrt();
        assert!(w[1].mean <= w[0].mean + tol, "{} then {}", w[0].mean, w[1].mean);
    }
    assert!(estimate_pi3(2, 0, 1, 0.5).is_err());
}

#[test]
fn conditional_frequency_edge_cases() {
    let spec = SampleSpec::new(4, 200, 3, 0.5, 99);
    let same = measure_conditional_frequency(|c| Ok(has_horizontal_crossing(c)), |c| Ok(has_horizontal_crossing(c)), &spec)
        .unwrap();
    assert_eq!((same.mean, same.samples), (1.0, 200));
    assert!(same.attempts >= 200);
    let never = measure_conditional_frequency(|c| Ok(!has_horizontal_crossing(c)), |c| Ok(has_horizontal_crossing(c)), &spec)
        .unwrap();
    assert_eq!(never.mean, 0.0);
    let starved = measure_conditional_frequency(|_| Ok(true), |_| Ok(false), &spec.with_budget(500));
    assert_eq!(starved, Err(Error::InsufficientConditioning { accepted: 0, attempts: 500 }));
}

#[test]
fn circuit_stack_trivial_and_cross_checked() {
    let g = BoxGeometry::new(16).unwrap();
    let closed = detect_circuit_stack(&Config::all_closed(g), 4, 1).unwrap();
    assert_eq!(closed.occurred_c, vec![true; 4]);
    assert_eq!(closed.occurred_d, vec![false; 4]);
    let open = detect_circuit_stack(&Config::all_open(g), 4, 1).unwrap();
    assert_eq!(open.occurred_c, vec![false; 4]);
    assert_eq!(open.occurred_d, vec![true; 4]);
    assert!(open.occurred_hat_c.is_empty() && open.i_count == 0 && open.j_count == 0);
    assert!(detect_circuit_stack(&Config::all_open(g), 5, 1).is_err());

    for s in 0..40 {
        let c = Config::sample_stream(g, 0.5, 12, s).unwrap();
        let r = detect_circuit_stack(&c, 4, 2).unwrap();
        for (m, (&cc, &dd)) in r.occurred_c.iter().zip(&r.occurred_d).enumerate() {
            let (inner, outer) = (1 << (2 * m), 1 << (2 * m + 2));
            let closed = min_defect_circuit(&c, inner, outer, CircuitKind::ClosedDual).unwrap().0;
            let open = min_defect_circuit(&c, inner, outer, CircuitKind::OpenPrimal).unwrap().0;
            assert_eq!(cc, closed <= 2);
            assert_eq!(dd, open <= 1);
        }
    }
}

#[test]
fn circuit_stack_blocks() {
    // ten annuli at granularity 1 need a box of half-side 1024; use the all-closed and
    // all-open extremes, whose block flags are forced
    let g = BoxGeometry::new(1024).unwrap();
    let r = detect_circuit_stack(&Config::all_closed(g), 10, 1).unwrap();
    assert_eq!(r.occurred_hat_c, vec![false]);
    assert_eq!((r.i_count, r.j_count), (0, 0));
}

#[test]
fn arm_spec_center_may_move() {
    let g = BoxGeometry::new(3).unwrap();
    let spec = ArmSpec { center: Center::Vertex(Vertex::new(0, 0)), domain: Rect::centered(3.0), arms: vec![Arm::open(); 4] };
    assert!(detect_arm_event(&Config::all_open(g), &spec).unwrap());
    let spec5 = ArmSpec { arms: vec![Arm::open(); 5], ..spec };
    assert!(!detect_arm_event(&Config::all_open(g), &spec5).unwrap());
}

#[test]
fn planted_inner_event_k3() {
    let g = BoxGeometry::new(24).unwrap();
    let sk = common::inner_skeleton_k3();
    let c = sk.bare(g);
    let event = percolab::arms::inner_event(&c, 3).unwrap().expect("planted event");
    assert_eq!((event.star1, event.star2), (Vertex::new(-21, 0), Vertex::new(21, 0)));
    assert!(event.shield.has_color(&c));
    // cutting the shield band (two dual rows wide at the top) kills item 8
    let rungs: Vec<_> = [(21, 22), (22, 23)]
        .iter()
        .map(|&(a, b)| (g.edge_between(Vertex::new(0, a), Vertex::new(0, b)).unwrap(), true))
        .collect();
    assert_eq!(detect_ek_prime_inner(&c.with_edges(&rungs[..1]), 3).unwrap().is_some(), true);
    assert_eq!(detect_ek_prime_inner(&c.with_edges(&rungs), 3).unwrap(), None);
    // closing the left crossing kills item 1
    let cut = g.edge_between(Vertex::new(-12, 0), Vertex::new(-11, 0)).unwrap();
    assert_eq!(detect_ek_prime_inner(&c.with_edges(&[(cut, false)]), 3).unwrap(), None);
}

#[test]
fn inner_event_frequency_on_random_fill_is_positive_and_stable() {
    let g = BoxGeometry::new(24).unwrap();
    let sk = common::inner_skeleton_k3();
    let freq = |seed: u64| {
        (0..300).filter(|&s| detect_ek_prime_inner(&sk.fill(g, 0.5, seed, s), 3).unwrap().is_some()).count() as f64
            / 300.0
    };
    let (a, b) = (freq(1), freq(2));
    assert!(a > 0.0 && b > 0.0);
    assert_eq!(a, freq(1));
    // two binomial frequencies from the same law
    let se = ((a * (1.0 - a) + b * (1.0 - b)) / 300.0).sqrt();
    assert!((a - b).abs() <= 4.0 * se.max(1.0 / 300.0), "{a} vs {b}");
}
