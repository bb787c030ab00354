//! Exhaustive search for residue-constrained paths and subdivisions, witness
//! verification, and the undirected variant.

mod residue;
mod search;
pub mod undirected;
mod verify;

pub use residue::{for_each_residue_path, residue_path, Budget, ResidueQuery, SearchOutcome, WalkTable};
pub use search::find_subdivision;
pub use undirected::{
    biorient, find_subdivision_undirected, mu_star, verify_undirected_witness, Edge, PatternEdge,
    UndirectedLabeledGraph, UndirectedMode, UndirectedPattern, UndirectedWitness,
};
pub use verify::{verify_witness, Verdict, Violation};
