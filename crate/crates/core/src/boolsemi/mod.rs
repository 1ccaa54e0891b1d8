//! Finite semimodules over the Boolean semiring.
//!
//! A B-semimodule is a join-semilattice with a least element; finitely
//! generated ones are exactly finite join-closed subsets of some `B^n`.
//! Elements are bit vectors, join is bitwise OR, and the partial order is
//! bitwise containment.

mod bits;
mod matrix;
mod semimodule;
mod tensor;

pub use bits::Bits;
pub use matrix::BoolMatrix;
pub use semimodule::{Coevaluation, Semimodule, SnakeObstruction};
pub use tensor::{flatness_probes, is_flat, reduced_tensor, FlatnessReport, TensorSpace};
