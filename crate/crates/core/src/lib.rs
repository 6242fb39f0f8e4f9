//! Exact counting and structural analysis of Gallai colorings of complete graphs.
//!
//! A *Gallai coloring* is an edge coloring of the complete graph `K_n` with no
//! rainbow triangle (a `K_3` whose three edges carry three distinct colors).
//! This crate provides:
//!
//! - [`coloring`]: edge-coloring representation, rainbow-triangle detection and
//!   the classic structural analyzers (monochromatic spanning color, maximum
//!   color degree), plus the plain-text coloring file format;
//! - [`extension`]: exact counts `w(φ,k)` of the ways to extend a Gallai
//!   coloring by one vertex, their enumeration, and the extension recurrence;
//! - [`counting`]: exact values of `c(n,k)`, the number of Gallai k-colorings
//!   of labeled `K_n`, by pruned DFS and independently by exact-color-set
//!   decomposition (which supports astronomically large k);
//! - [`structure`]: the families F and F', the extremal vertex sets A(φ) and
//!   A'(φ), the nearly-monochromatic predicate, the M1–M4 classifier, and the
//!   greedy bichromatic-triple / rainbow-claw packings;
//! - [`bounds`]: every closed-form bound as an exactly comparable value
//!   (fractional powers of two are compared by raising to integer powers;
//!   no floating point anywhere), and the named verification suites.
//!
//! All counts are exact [`BigCount`] values; all threshold comparisons are
//! cross-multiplied integer comparisons.

pub mod arith;
pub mod bitset;
pub mod bounds;
pub mod coloring;
pub mod counting;
mod error;
pub mod extension;
pub mod structure;

pub use arith::{BigCount, ExactRatio};
pub use bitset::VertexSet;
pub use coloring::{parse_coloring, write_coloring, ColorId, EdgeColoring};
pub use counting::{CountConfig, CountMethod, CountTable, DEFAULT_NODE_BUDGET};
pub use error::{Error, Result};
pub use structure::{MClass, StructureReport};

/// Default seed for every randomized suite; override with `--seed`.
pub const DEFAULT_SEED: u64 = 0x6761_6c6c_6169; // "gallai"
