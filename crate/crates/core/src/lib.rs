//! Unbalanced dichromatic number `mu(D, Z1, Z2)` of arc-labelled digraphs,
//! the structural decompositions that bound it, and search for subdivisions
//! whose branching paths satisfy congruences on their `Z1` / `Z2` counts.
//!
//! Two routes to a subdivision are provided. [`constructive`] builds one
//! through the structural construction stage by stage and verifies each
//! stage. [`direct`] is an exhaustive search that is complete for small
//! instances.
//!
//! ```
//! use unbalanced_core::generate::gen_planted;
//! use unbalanced_core::{find_subdivision, mu_exact, verify_witness, Budget, SearchOutcome, SubdivisionPattern};
//!
//! # fn main() -> unbalanced_core::Result<()> {
//! let p = SubdivisionPattern::from_tuples(3, &[(0, 1, 1, 1, 1, 3), (1, 2, 1, 1, 2, 3), (2, 0, 1, 1, 0, 3)])?;
//! let f = gen_planted(&p, Default::default(), 7)?;
//! assert_eq!(mu_exact(&f.digraph, None)?.value, 2);
//! if let SearchOutcome::Found(w) = find_subdivision(&f.digraph, &p, &Budget::new(10_000_000))? {
//!     assert!(verify_witness(&f.digraph, &p, &w).ok);
//! }
//! # Ok(())
//! # }
//! ```

pub mod balance;
pub mod constructive;
pub mod decomposition;
pub mod digraph;
pub mod direct;
pub mod error;
pub mod generate;
pub mod io;
pub mod modular;
pub mod mu;
pub mod oracle;
pub mod pattern;

pub use balance::{
    disjoint_unbalanced_cycles, has_unbalanced_cycle, set_is_balanced, shortest_unbalanced_cycle, CyclePacking,
    DirectedCycle,
};
pub use digraph::{Arc, BfsTree, DirectedPath, Direction, LabeledDigraph, Leveling, Vertex, VertexSet};
pub use direct::{find_subdivision, residue_path, verify_witness, Budget, ResidueQuery, SearchOutcome};
pub use error::{Error, Result};
pub use mu::{mu_component_max, mu_exact, MuResult, VertexPartition};
pub use oracle::{CliqueOracle, ExactOracle, HintOracle, MuOracle, OracleKind};
pub use pattern::{Congruence, PatternArc, SubdivisionPattern, SubdivisionWitness};
