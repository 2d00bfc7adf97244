use super::sites::{Color, Sites};
use super::union_find::UnionFind;
use crate::error::{Error, Result};
use crate::lattice::{Config, Region};

/// Cluster labels of the `color` subgraph restricted to a region. Sites outside the
/// region carry no label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabels {
    pub color: Color,
    labels: Vec<u32>,
    count: usize,
}

const NONE: u32 = u32::MAX;

impl ComponentLabels {
    pub fn label(&self, site: usize) -> Option<u32> {
        match self.labels[site] {
            NONE => None,
            l => Some(l),
        }
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        matches!((self.label(a), self.label(b)), (Some(x), Some(y)) if x == y)
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }
}

/// Labels are numbered in order of their smallest site index.
pub fn components<R: Region + ?Sized>(
    config: &Config,
    color: Color,
    mask: &R,
) -> Result<ComponentLabels> {
    let sites = Sites::new(*config.geometry(), color);
    let inside = sites.region_flags(mask);
    if !inside.iter().any(|&b| b) {
        return Err(Error::EmptyMask);
    }
    Ok(label_flags(config, &sites, &inside))
}

pub(crate) fn label_flags(config: &Config, sites: &Sites, inside: &[bool]) -> ComponentLabels {
    let mut uf = UnionFind::new(sites.count());
    for s in 0..sites.count() {
        if !inside[s] {
            continue;
        }
        sites.for_each_passable(config, s, |t, _| {
            if t > s && inside[t] {
                uf.union(s, t);
            }
        });
    }
    let mut labels = vec![NONE; sites.count()];
    let mut root_label = vec![NONE; sites.count()];
    let mut count = 0usize;
    for s in 0..sites.count() {
        if !inside[s] {
            continue;
        }
        let r = uf.find(s);
        if root_label[r] == NONE {
            root_label[r] = count as u32;
            count += 1;
        }
        labels[s] = root_label[r];
    }
    ComponentLabels { color: sites.color(), labels, count }
}
