//! Critical bond percolation geometry on boxes of Z²: lowest and shortest crossings,
//! arm events, circuits with defects, shortcuts of the lowest crossing, and a
//! reproducible Monte Carlo harness around them.

pub mod arms;
pub mod connectivity;
pub mod crossings;
pub mod error;
pub mod estimate;
pub mod lattice;
pub mod montecarlo;
pub mod path;
pub mod sampling;
pub mod seed;
pub mod shortcuts;

pub use error::{Error, Result};

// The book's snippets run as doc-tests so they cannot drift from the code.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/lattice.md")]
    struct Lattice;
    #[doc = include_str!("../../../book/src/crossings.md")]
    struct Crossings;
    #[doc = include_str!("../../../book/src/arms.md")]
    struct Arms;
    #[doc = include_str!("../../../book/src/circuits.md")]
    struct Circuits;
    #[doc = include_str!("../../../book/src/shortcuts.md")]
    struct Shortcuts;
    #[doc = include_str!("../../../book/src/experiments.md")]
    struct Experiments;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
