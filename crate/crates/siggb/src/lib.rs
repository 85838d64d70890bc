//! Signature-based Groebner basis computation over prime fields.
//!
//! The crate is organized around one generic incremental engine
//! ([`engine`]) whose pruning behavior is configured by strategy presets
//! ([`strategy`]): `f5`, `f5p`, `ggv`, `arri` and `minmon`. A classical
//! Buchberger implementation ([`oracle`]) provides the independent ground
//! truth, and [`systems`]/[`runner`] supply the benchmark families and the
//! statistics front end the `siggb` CLI is built on.

pub mod engine;
pub mod error;
pub mod field;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod poly;
pub mod runner;
pub mod sig;
pub mod stats;
pub mod strategy;
pub mod systems;

pub use engine::{basis_step, certify, incremental_gb, EngineOptions, EngineStats, GbRun};
pub use error::{Error, Result};
pub use field::{Coeff, PrimeField};
pub use monomial::{Monomial, MonomialOrder};
pub use oracle::{buchberger, ideals_equal, interreduce, is_groebner, GroebnerBasis};
pub use poly::{Polynomial, Ring, Term};
pub use sig::{CriticalPair, LabeledPoly, MonSig, SyzygySet};
pub use stats::RunStats;
pub use strategy::{ReductionMode, StrategyConfig, StrategyKind};
pub use systems::SystemSpec;
