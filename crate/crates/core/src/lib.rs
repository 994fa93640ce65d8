//! Exact computations in Coxeter systems: the word problem by braid-move
//! saturation, descent sets, sphericity of generator subsets, longest
//! parabolic-coset representatives, and stabilization of coset corrections
//! along infinite reduced words.
//!
//! Every fast path has an independent brute-force counterpart in [`oracle`],
//! which grows balls of the Cayley graph without touching the word-problem
//! code.

pub mod config;
pub mod cosets;
pub mod error;
pub mod finite_type;
pub mod matrix;
pub mod oracle;
pub mod presets;
pub mod ray;
pub mod suite;
pub mod system;
pub mod word;

pub use config::{ConfigError, NamedSystem, SystemConfig};
pub use cosets::{CosetLongest, StepOutcome, StepRelation, Ws0Verdict};
pub use error::{CoxeterError, MatrixError, Result};
pub use finite_type::{Component, GroupOrder, HypothesisCheck, SphericalVerdict, TypeLabel};
pub use matrix::{CoxeterMatrix, Order};
pub use oracle::Ball;
pub use ray::{Certification, Membership, RayLetters, RaySpec, Stabilization, TraceReport, TraceStep};
pub use suite::{LemmaReport, SuiteReport, SystemReport};
pub use system::CoxeterSystem;
pub use word::{Element, GenSet, Word};
