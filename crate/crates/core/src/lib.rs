//! Regular model checking of linear temporal properties.
//!
//! States of a system are finite (or infinite) words, sets of states are
//! (ω-)automata and transition relations are structure-preserving
//! transducers. On top of the automata algebra the crate builds augmented
//! Büchi regular systems for global and local-oriented system properties and
//! decides their emptiness by loop detection or by simulation fixpoints.

pub mod acceptor;
pub mod alphabet;
pub mod augment;
pub mod cli;
pub mod error;
pub mod examples;
pub mod format;
pub mod graph;
pub mod gsp;
pub mod load;
pub mod losp;
pub mod nfa;
pub mod omega;
pub mod simulation;
pub mod system;
pub mod transducer;

pub use acceptor::{Acceptor, Mode, WordLike};
pub use alphabet::{Alphabet, Letter, Word};
pub use error::{Error, Result};
pub use graph::{Graph, State};
pub use gsp::{
    build_augmented_finite, build_augmented_omega, check_emptiness_loop, cop_of, AugmentedGsp, CopSet,
    GspLayout, NegatedGsp, StateProperty,
};
pub use losp::{
    build_augmented_losp, combine_verdicts, complement_lep, extend_with_flags, local_projection,
    AugmentedLosp, LocalExecutionProperty, LocalProjection, Losp, LospLayout, VerdictExpr,
};
pub use nfa::{BoolOp, Nfa};
pub use simulation::{
    brute_force_simulation, check_emptiness_sim, sim_equivalence, sim_fixpoint, sim_init, sim_step,
    validate_candidate, SimCandidate, SimInput, SimRelation,
};
pub use omega::{Buchi, Classification, UpWord};
pub use transducer::{
    Accelerator, ClosureKind, ClosureResult, FiniteTransducer, OmegaTransducer, Transducer,
};
pub use system::{
    BuchiRegularSystem, Diagnostics, FiniteSystem, Locality, OmegaSystem, Reach, RegularSystem,
    Status, Verdict, Witness,
};
