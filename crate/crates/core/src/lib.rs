//! Sorting permutations by transpositions with the algebraic 1.375-approximation,
//! an exact-distance oracle, and cycle-graph cross-checks.

pub mod algebra;
pub mod bench;
pub mod cycle_graph;
pub mod error;
pub mod oracle;
pub mod perm;
pub mod search;
pub mod solver;
pub mod structures;

pub use algebra::{ExtendedCycle, SigmaPiInv, State, ThreeCycle};
pub use error::{Error, Result};
pub use perm::{CyclePerm, Parity, Permutation, TranspositionDesc};
