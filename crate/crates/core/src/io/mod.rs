//! Text formats and DOT export.

pub mod dot;
pub mod format;

pub use dot::{instance_to_dot, witness_to_dot};
pub use format::{
    emit_hints, emit_instance, emit_pattern, emit_witness, parse_hints, parse_instance, parse_pattern, parse_witness,
    InstanceFile, FORMAT_VERSION,
};
