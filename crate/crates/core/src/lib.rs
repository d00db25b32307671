//! Reconfiguration of disjoint basis sequences of matroids.
//!
//! A feasible sequence picks one basis per matroid with no element shared.
//! A move swaps one element of one basis for an unused element. The crate
//! decides reachability between two feasible sequences, builds shortest
//! move sequences, and ships exhaustive checkers plus the set-cover gadget
//! that makes the multi-matroid shortest variant hard.

pub mod brute;
pub mod element;
pub mod error;
pub mod exchange;
pub mod gadget;
pub mod instance;
pub mod matroid;
pub mod random;
pub mod reconfig;
pub mod sequence;
mod union_find;

pub use element::{set_of, ElementId, ElementSet};
pub use error::{Error, Infeasibility, Result};
pub use exchange::{build_single, build_union, coloops, coreachable, ExchangeArc, UnionExchangeGraph};
pub use gadget::{build_gadget, cover_to_sequence, sequence_to_cover, GadgetInstance, SetCoverInstance};
pub use instance::{load_instance, save_instance, ProblemInstance};
pub use matroid::{union_ground, GraphEdge, Matroid, MatroidSpec, OracleHook, PartitionBlock};
pub use random::{random_instance, Profile, RandomConfig};
pub use reconfig::{
    decide, decide_with_certificate, distance, solve, solve_traced, verify, Decision, TadpoleWalk,
    VerifyFailure, VerifyReport, WalkStep,
};
pub use sequence::{BasisSequence, Move, ReconfigSequence};
