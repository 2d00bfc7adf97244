//! Shortcuts of an open crossing: open detours above it that save length, shielded by a
//! closed dual arc, plus the U-shaped regions they are organised in.

mod arcs;
mod host;
mod polygon;
mod record;
mod select;
mod u_region;

pub use arcs::{outermost_arc, shortest_arc};
pub use host::{Host, HostKind, Step};
pub use record::{find_all_shortcuts, find_shortcuts, size_scale, ShortcutRecord, Violation};
pub use select::{
    build_sigma, comb_property_holds, enclosed_faces, max_disjoint_intervals, select_maximal,
    verify_nested_or_disjoint, ScalePass, SelectionPlan,
};
pub use u_region::{u_region, URegion, MAX_SCALE};
