//! The inner event at scale s = 2ᵏ: crossings around the U-shaped region, two five-arm
//! points at its ends, a closed circuit with two defects around the central box, and the
//! closed shield and open arc joining the five-arm points across the top.

use super::five_arm::{FiveArmLanding, FiveArmScanner, StarSide};
use crate::connectivity::{bfs_path, label_flags, min_defect_circuit_in, CircuitKind, Color, Sites};
use crate::error::{Error, Result};
use crate::lattice::{Config, DualVertex, Rect, RegionMask, Vertex};
use crate::path::LatticePath;
use crate::shortcuts::{u_region, URegion};

/// Witness of the inner event.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerEvent {
    pub k: u32,
    pub star1: Vertex,
    pub star2: Vertex,
    /// Closed dual arc from the north-west face of ⋆₁ to the north-east face of ⋆₂.
    pub shield: LatticePath,
    pub region: URegion,
}

fn scale(k: u32) -> f64 {
    (1u64 << k) as f64
}

/// Lattice extents of a closed rectangle, rounded inward.
fn inward(r: &Rect) -> (i32, i32, i32, i32) {
    let (x0, x1) = r.lattice_x_range();
    let (y0, y1) = r.lattice_y_range();
    (x0, x1, y0, y1)
}

/// Lattice extents rounded outward, as used for landing rectangles.
fn outward(r: &Rect) -> (i32, i32, i32, i32) {
    (r.x0.floor() as i32, r.x1.ceil() as i32, r.y0.floor() as i32, r.y1.ceil() as i32)
}

fn primal_in((x0, x1, y0, y1): (i32, i32, i32, i32)) -> impl Fn(Vertex) -> bool {
    move |v| (x0..=x1).contains(&v.x) && (y0..=y1).contains(&v.y)
}

/// Dual sites of a landing rectangle: its faces plus the surrounding ring.
fn dual_ring_in((x0, x1, y0, y1): (i32, i32, i32, i32)) -> impl Fn(DualVertex) -> bool {
    move |d| (x0 - 1..=x1).contains(&d.x) && (y0 - 1..=y1).contains(&d.y)
}

/// Dual sites used by vertical closed crossings of a rectangle: the columns of faces
/// between its sides, from the row below it to the row above it.
fn dual_columns((x0, x1, y0, y1): (i32, i32, i32, i32)) -> impl Fn(DualVertex) -> bool {
    move |d| (x0..x1).contains(&d.x) && (y0 - 1..=y1).contains(&d.y)
}

fn flags<F: Fn(usize) -> bool>(sites: &Sites, f: F) -> Vec<bool> {
    (0..sites.count()).map(f).collect()
}

/// Whether an open path inside the rectangle joins its two opposite sides.
pub fn has_open_crossing(config: &Config, rect: &Rect, vertical: bool) -> bool {
    let g = config.geometry();
    let sites = Sites::primal(*g);
    let ext = inward(rect);
    let (x0, x1, y0, y1) = ext;
    if x0 > x1 || y0 > y1 {
        return false;
    }
    let inside = primal_in(ext);
    let allowed = flags(&sites, |s| inside(sites.vertex(s)));
    let coord = |s: usize| {
        let v = sites.vertex(s);
        if vertical { v.y } else { v.x }
    };
    let (lo, hi) = if vertical { (y0, y1) } else { (x0, x1) };
    let from: Vec<usize> = (0..sites.count()).filter(|&s| allowed[s] && coord(s) == lo).collect();
    let to = flags(&sites, |s| allowed[s] && coord(s) == hi);
    bfs_path(config, &sites, &allowed, &from, &to).is_some()
}

/// Whether a crossing cluster of `color` inside `rect` (vertical direction) belongs to the
/// same cluster as `anchor` once paths may also use the sites flagged in `extra`.
fn crossing_joined(
    config: &Config,
    color: Color,
    rect: &Rect,
    extra: &dyn Fn(usize) -> bool,
    anchor: usize,
) -> bool {
    let g = *config.geometry();
    let sites = Sites::new(g, color);
    let ext = inward(rect);
    let (_, _, y0, y1) = ext;
    let (in_rect, bottom, top): (Vec<bool>, i32, i32) = match color {
        Color::Open => {
            let f = primal_in(ext);
            (flags(&sites, |s| f(sites.vertex(s))), y0, y1)
        }
        Color::ClosedDual => {
            let f = dual_columns(ext);
            (flags(&sites, |s| f(sites.dual_vertex(s))), y0 - 1, y1)
        }
    };
    let row = |s: usize| match color {
        Color::Open => sites.vertex(s).y,
        Color::ClosedDual => sites.dual_vertex(s).y,
    };
    let local = label_flags(config, &sites, &in_rect);
    let mut spans = std::collections::HashMap::<u32, (bool, bool)>::new();
    for s in 0..sites.count() {
        if let Some(l) = local.label(s) {
            let e = spans.entry(l).or_default();
            e.0 |= row(s) == bottom;
            e.1 |= row(s) == top;
        }
    }
    let union = flags(&sites, |s| in_rect[s] || extra(s));
    if !union[anchor] {
        return false;
    }
    let joined = label_flags(config, &sites, &union);
    (0..sites.count()).any(|s| {
        local.label(s).is_some_and(|l| spans[&l] == (true, true)) && joined.same(s, anchor)
    })
}

/// The inner event with its witness, or `None`. The box must contain [-3s, 3s]².
pub fn inner_event(config: &Config, k: u32) -> Result<Option<InnerEvent>> {
    let g = *config.geometry();
    let s = scale(k);
    let region = u_region(k)?;
    if (g.n() as f64) < 3.0 * s {
        return Err(Error::OutsideBox { n: g.half_side() });
    }
    let third = s / 3.0;

    // 1, 2: crossings of the side rectangles
    if !has_open_crossing(config, &Rect::closed(s, 3.0 * s, -third, third), false)
        || !has_open_crossing(config, &Rect::closed(-7.0 * s / 3.0, -s, -third, third), false)
        || !has_open_crossing(config, &Rect::closed(-7.0 * s / 3.0, -5.0 * s / 3.0, -3.0 * s, third), true)
    {
        return Ok(None);
    }

    // 5: closed circuit around [-s, s]² with at most two defects, all in the side windows
    let inner = s as u32;
    let outer = (5.0 * s / 3.0).floor() as u32;
    let windows = RegionMask::from_rect(Rect::closed(-5.0 * s / 3.0, -s, -third, third))
        .union(Rect::closed(s, 5.0 * s / 3.0, -third, third));
    match min_defect_circuit_in(config, inner, outer, CircuitKind::ClosedDual, Some(&windows))? {
        Some((d, _)) if d <= 2 => {}
        _ => return Ok(None),
    }

    // 3, 4: the five-arm points
    let left = FiveArmLanding::new(k, StarSide::Left);
    let right = FiveArmLanding::new(k, StarSide::Right);
    let Some(star1) = FiveArmScanner::new(g, left)?.all_points(config, &left.search_box())?.first().copied()
    else {
        return Ok(None);
    };
    let Some(star2) = FiveArmScanner::new(g, right)?.all_points(config, &right.search_box())?.first().copied()
    else {
        return Ok(None);
    };
    let d1 = outward(&left.domain());
    let d2 = outward(&right.domain());
    let primal = Sites::primal(g);
    let dual = Sites::dual(g);

    // 6: open and closed vertical crossings below ⋆₁'s landing rectangle, tied to its arms
    let r6 = Rect::closed(-3.0 * s, -7.0 * s / 3.0, -3.0 * s, -third);
    let in_d1 = primal_in(d1);
    let star1_site = primal.index_of_vertex(star1).expect("inside box");
    if !crossing_joined(config, Color::Open, &r6, &|t| in_d1(primal.vertex(t)), star1_site) {
        return Ok(None);
    }
    let ring1 = dual_ring_in(d1);
    let se1 = dual.index_of_dual(DualVertex::new(star1.x, star1.y - 1)).expect("inside box");
    if !crossing_joined(config, Color::ClosedDual, &r6, &|t| ring1(dual.dual_vertex(t)), se1) {
        return Ok(None);
    }

    // 7: closed vertical crossing below ⋆₂'s landing rectangle, tied to its south-west arm
    let r7 = Rect::closed(7.0 * s / 3.0, 3.0 * s, -3.0 * s, -third);
    let ring2 = dual_ring_in(d2);
    let sw2 = dual.index_of_dual(DualVertex::new(star2.x - 1, star2.y - 1)).expect("inside box");
    if !crossing_joined(config, Color::ClosedDual, &r7, &|t| ring2(dual.dual_vertex(t)), sw2) {
        return Ok(None);
    }

    // 8: the closed shield in Ṽ
    let nw1 = dual.index_of_dual(DualVertex::new(star1.x - 1, star1.y)).expect("inside box");
    let ne2 = dual.index_of_dual(DualVertex::new(star2.x, star2.y)).expect("inside box");
    let allowed = flags(&dual, |t| {
        let d = dual.dual_vertex(t);
        region.v_tilde.contains_dual(d) || ring1(d) || ring2(d)
    });
    let mut target = vec![false; dual.count()];
    target[ne2] = true;
    let Some(shield) = bfs_path(config, &dual, &allowed, &[nw1], &target) else {
        return Ok(None);
    };

    // 9: the open arc in Ũ between the upward arms
    let in_d2 = primal_in(d2);
    let allowed = flags(&primal, |t| {
        let v = primal.vertex(t);
        v != star1 && v != star2 && (region.u_tilde.contains_vertex(v) || in_d1(v) || in_d2(v))
    });
    let up1 = primal.index_of_vertex(star1.offset(0, 1)).expect("inside box");
    let up2 = primal.index_of_vertex(star2.offset(0, 1)).expect("inside box");
    let mut target = vec![false; primal.count()];
    target[up2] = true;
    if bfs_path(config, &primal, &allowed, &[up1], &target).is_none() {
        return Ok(None);
    }

    let shield = LatticePath::dual(&g, shield.into_iter().map(|t| dual.dual_vertex(t)).collect())
        .expect("bfs steps are dual edges");
    Ok(Some(InnerEvent { k, star1, star2, shield, region }))
}

/// The two five-arm points when the inner event at scale k occurs.
pub fn detect_ek_prime_inner(config: &Config, k: u32) -> Result<Option<(Vertex, Vertex)>> {
    Ok(inner_event(config, k)?.map(|e| (e.star1, e.star2)))
}
