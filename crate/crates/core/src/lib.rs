//! Circuit generator for quantum simulated annealing.
//!
//! The crate emits gate sequences (in the English/Picture text formats of
//! [`seo_ir`]) for the fixed-point Grover annealing algorithm built on
//! Szegedy walks of Metropolis chains, expands quantum multiplexors into
//! rotations and CNOTs, and carries a small dense simulator used to check
//! every emitted circuit against its defining matrix identities.

pub mod densesim;
pub mod markov;
pub mod mux_expander;
pub mod qembed;
pub mod qsa_codegen;
pub mod seo_ir;
pub mod szegedy;
pub mod verify;

pub use seo_ir::{Circuit, CircuitBuilder, Control, Gate, Instruction, MuxControl, Operation};
