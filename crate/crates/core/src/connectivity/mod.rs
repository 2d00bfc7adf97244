//! Cluster labelling, vertex-disjoint path certification and minimum-defect circuits.

mod circuits;
mod components;
mod flow;
mod search;
mod sites;
mod union_find;

pub use circuits::{
    has_circuit_with_at_most, min_defect_circuit, min_defect_circuit_in, min_defect_count_by_flow,
    CircuitKind, DefectedCircuit,
};
pub use components::{components, ComponentLabels};
pub(crate) use components::label_flags;
pub(crate) use search::bfs_path;
pub use flow::{FlowQuery, FlowWorkspace};
pub use sites::{Color, Sites};
pub use union_find::UnionFind;

use crate::error::{Error, Result};
use crate::lattice::{Config, EdgeId, Region, Vertex};

/// Whether the endpoints of the open edge `source` start two vertex-disjoint open paths
/// inside `mask`, one ending in each of the two target sets (in either pairing).
pub fn disjoint_open_paths<R: Region + ?Sized>(
    config: &Config,
    source: EdgeId,
    targets: &[&[Vertex]],
    mask: &R,
) -> Result<bool> {
    let g = config.geometry();
    let (u, v) = g.endpoints(source)?;
    if targets.len() != 2 {
        return Err(Error::MalformedTargets("exactly two target sets are required"));
    }
    if targets.iter().any(|t| t.iter().any(|&w| !g.contains(w) || !mask.contains_vertex(w))) {
        return Err(Error::MalformedTargets("target vertex outside the mask"));
    }
    if !config.is_open(source) || !mask.contains_vertex(u) || !mask.contains_vertex(v) {
        return Ok(false);
    }
    let sites = Sites::primal(*g);
    let allowed = sites.region_flags(mask);
    let idx = |w: Vertex| g.vertex_index(w).expect("checked inside box");
    let a: Vec<usize> = targets[0].iter().map(|&w| idx(w)).collect();
    let b: Vec<usize> = targets[1].iter().map(|&w| idx(w)).collect();
    let groups: [&[usize]; 2] = [&a, &b];
    let sources = [idx(u), idx(v)];
    let query = FlowQuery { allowed: &allowed, sources: &sources, groups: &groups, terminal: None };
    let mut ws = FlowWorkspace::new(sites);
    Ok(ws.max_paths(config, &query, 2) == 2)
}
