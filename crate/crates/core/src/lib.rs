//! Constraint engine for the Helsinki toy model.
//!
//! Edges carry one of three flavors; productions and annihilations must be
//! homogeneous or fully inhomogeneous, and no two homogeneous nodes may be
//! joined by an edge. On top of exhaustive solving the crate reproduces the
//! h-cell state table, counterfactual witnesses, consistency sweeps, causal
//! loop channels, and a uniform probability layer.

pub mod analysis;
pub mod assignment;
pub mod error;
pub mod flavor;
pub mod format;
pub mod loops;
pub mod prob;
pub mod solver;
pub mod structure;

pub use analysis::{
    canonicalize_inputs, consistency_of, consistency_sweep, hidden_state_set, input_classes,
    nonlocality_witnesses, retro_witnesses, state_table, ConsistencyReport, Counterexample,
    InputTriple, NonlocalityWitness, RetroWitness, StateTable, Transform, Wing,
};
pub use assignment::{parse_binding, Assignment, EdgeId, NodeId};
pub use error::{Error, Result};
pub use flavor::{
    annihilation_output, apply_permutation, node_admissible, production_completions, Flavor,
    FlavorPermutation, HiddenState, NodeKind,
};
pub use format::{parse_scenario, parse_scenario_document, serialize_scenario, serialize_scenario_with};
pub use loops::{loop_exclusions, loop_universality, solve_loop, Channel, LoopSolution, LoopUniversality};
pub use prob::{
    completion_distribution, epistemic_state, marginal, signalling_score, CompletionDistribution,
    EpistemicState, FlavorDistribution, Probability,
};
pub use solver::{complete, count_completions, is_admissible, SolveResult, Solver};
pub use structure::{
    build_chain, build_h_cell, reverse_time, validate_topology, Edge, Endpoint, Port, Role,
    Scenario, Side, Structure, ValidationReport, Violation,
};
