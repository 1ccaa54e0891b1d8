//! State spaces of an evaluation: a pair of a regular interval language
//! and a circular regular language. Boundary configurations are sign
//! sequences; the space attached to a configuration is spanned by
//! diagrams pairing against the opposite configuration, with closed
//! gluings evaluated through the two languages.

mod cut;
mod eval;
mod general;
mod half;
mod pm;

pub use cut::{canonical_circular, id_decomposition, is_cuttable, tqft_check, IdDecomposition, TqftReport};
pub use eval::Evaluation;
pub use general::{
    general_gram, general_state_space, tensor_compare, GenDiagram, GeneralSpace, Sign, SignSeq,
    TensorCompare,
};
pub use half::{half_state_space, minimal_dfa_from_space, minimal_nfas, HalfSide, HalfSpace, MinimalNfas};
pub use pm::{pm_state_space, PmDiagram, PmStateSpace};
