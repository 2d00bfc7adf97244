//! Edge-wise three-arm test: two disjoint open arms to given vertex targets and a closed
//! dual arm to a given dual target.
//!
//! An open arm ends at the first target vertex it meets, so an arm to the right side never
//! runs along the left side first. Without this the two arms could join into a walk that is
//! not a crossing. A closed arm may have length zero when e* already touches its target.

use crate::connectivity::{label_flags, ComponentLabels, FlowQuery, FlowWorkspace, Sites};
use crate::error::{Error, Result};
use crate::lattice::{Config, DualVertex, EdgeId, Orientation, Region, RegionMask, Vertex};

/// Targets of the three arms.
#[derive(Debug, Clone)]
pub struct ThreeArmTargets {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
    pub bottom: Vec<DualVertex>,
}

impl ThreeArmTargets {
    /// Left and right sides of the box and the dual ring below it.
    pub fn box_sides(config: &Config) -> Self {
        let g = config.geometry();
        let n = g.n();
        ThreeArmTargets {
            left: (-n..=n).map(|y| Vertex::new(-n, y)).collect(),
            right: (-n..=n).map(|y| Vertex::new(n, y)).collect(),
            bottom: (-n - 1..=n).map(|x| DualVertex::new(x, -n - 1)).collect(),
        }
    }
}

/// Precomputed state for testing many edges of one configuration.
pub struct ThreeArmChecker<'a> {
    config: &'a Config,
    primal_allowed: Vec<bool>,
    dual_inside: Vec<bool>,
    dual_labels: ComponentLabels,
    bottom_label: Vec<bool>,
    left: Vec<usize>,
    right: Vec<usize>,
    terminal: Vec<bool>,
    workspace: FlowWorkspace,
    exclude_side_verticals: bool,
}

impl<'a> ThreeArmChecker<'a> {
    /// Whole-box checker: arms to the left and right sides and the dual bottom ring. Vertical
    /// edges on the left and right sides never lie on a crossing and are rejected.
    pub fn for_box(config: &'a Config) -> Self {
        let targets = ThreeArmTargets::box_sides(config);
        let mut c = Self::build(config, &crate::lattice::Everywhere, &targets);
        c.exclude_side_verticals = true;
        c
    }

    /// Checker restricted to `region`, with arbitrary targets inside it.
    pub fn new<R: Region + ?Sized>(config: &'a Config, region: &R, targets: &ThreeArmTargets) -> Result<Self> {
        let g = config.geometry();
        if targets.left.is_empty() || targets.right.is_empty() || targets.bottom.is_empty() {
            return Err(Error::MalformedTargets("every arm needs a nonempty target"));
        }
        let primal_ok = |v: &Vertex| g.contains(*v) && region.contains_vertex(*v);
        if !targets.left.iter().chain(&targets.right).all(primal_ok) {
            return Err(Error::MalformedTargets("open target outside the region"));
        }
        if !targets.bottom.iter().all(|d| g.dual_contains(*d) && region.contains_dual(*d)) {
            return Err(Error::MalformedTargets("dual target outside the region"));
        }
        Ok(Self::build(config, region, targets))
    }

    fn build<R: Region + ?Sized>(config: &'a Config, region: &R, targets: &ThreeArmTargets) -> Self {
        let g = config.geometry();
        let primal = Sites::primal(*g);
        let dual = Sites::dual(*g);
        let primal_allowed = primal.region_flags(region);
        let dual_inside = dual.region_flags(region);
        let dual_labels = label_flags(config, &dual, &dual_inside);
        let mut bottom_label = vec![false; dual_labels.component_count()];
        for d in &targets.bottom {
            if let Some(l) = g.dual_index(*d).and_then(|s| dual_labels.label(s)) {
                bottom_label[l as usize] = true;
            }
        }
        let idx = |v: &Vertex| g.vertex_index(*v);
        let left: Vec<usize> = targets.left.iter().filter_map(idx).collect();
        let right: Vec<usize> = targets.right.iter().filter_map(idx).collect();
        let mut terminal = vec![false; primal.count()];
        for &s in left.iter().chain(&right) {
            terminal[s] = true;
        }
        ThreeArmChecker {
            config,
            primal_allowed,
            dual_inside,
            dual_labels,
            bottom_label,
            left,
            right,
            terminal,
            workspace: FlowWorkspace::new(primal),
            exclude_side_verticals: false,
        }
    }

    /// Closed dual arm from either end of e* to the dual target.
    pub fn has_closed_arm(&self, e: EdgeId) -> bool {
        let g = self.config.geometry();
        let Ok(de) = g.dual_of(e) else { return false };
        [de.ends.0, de.ends.1].iter().any(|d| {
            g.dual_index(*d)
                .filter(|&s| self.dual_inside[s])
                .and_then(|s| self.dual_labels.label(s))
                .is_some_and(|l| self.bottom_label[l as usize])
        })
    }

    /// Two vertex-disjoint open arms from the endpoints of `e` to the two targets, each
    /// stopping at the first target vertex it meets.
    pub fn has_open_arms(&mut self, e: EdgeId) -> bool {
        let g = self.config.geometry();
        let Ok((a, b)) = g.endpoints(e) else { return false };
        let (Some(sa), Some(sb)) = (g.vertex_index(a), g.vertex_index(b)) else { return false };
        if !self.primal_allowed[sa] || !self.primal_allowed[sb] {
            return false;
        }
        let groups: [&[usize]; 2] = [&self.left, &self.right];
        let sources = [sa, sb];
        let query = FlowQuery {
            allowed: &self.primal_allowed,
            sources: &sources,
            groups: &groups,
            terminal: Some(&self.terminal),
        };
        self.workspace.max_paths(self.config, &query, 2) == 2
    }

    pub fn check(&mut self, e: EdgeId) -> bool {
        let g = self.config.geometry();
        if !self.config.is_open(e) {
            return false;
        }
        if self.exclude_side_verticals {
            if let Ok((v, Orientation::Vertical)) = g.decode(e) {
                if g.is_left_side(v) || g.is_right_side(v) {
                    return false;
                }
            }
        }
        self.has_closed_arm(e) && self.has_open_arms(e)
    }
}

/// Whether `e` is open with disjoint open arms to the left and right sides and a closed
/// dual arm to the dual bottom ring.
pub fn three_arm_characterization(config: &Config, e: EdgeId) -> bool {
    ThreeArmChecker::for_box(config).check(e)
}

/// Number of edges of `rect` carrying the three arms inside `rect`.
pub fn count_three_arm_edges(config: &Config, rect: &RegionMask, targets: &ThreeArmTargets) -> Result<usize> {
    let g = config.geometry();
    rect.check_within(g)?;
    let mut checker = ThreeArmChecker::new(config, rect, targets)?;
    Ok(g.edges().filter(|&e| rect.contains_edge(g, e) && checker.check(e)).count())
}

/// Edge set of all three-arm edges of the box, in index order.
pub fn three_arm_edges(config: &Config) -> Vec<EdgeId> {
    let mut checker = ThreeArmChecker::for_box(config);
    config.geometry().edges().filter(|&e| checker.check(e)).collect()
}
