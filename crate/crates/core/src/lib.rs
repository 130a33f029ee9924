//! Exact learning of monotone DNF formulas from membership queries.
//!
//! A hidden monotone function with at most `s` terms of at most `r`
//! variables each (equivalently, a hypergraph of dimension `r` with `s`
//! edges probed through edge-detecting queries) is reconstructed
//! exactly by asking a sealed oracle for function values, with every
//! query counted. The crate provides:
//!
//! - the value types: [`Assignment`], [`Term`], [`Mdnf`],
//!   [`Substitution`];
//! - the counting [`QueryOracle`] with substitution views and budgets;
//! - cover-free families ([`CoverFreeFamily`]): random, exhaustive and
//!   greedy constructions, a brute-force verifier, and size reference
//!   formulas;
//! - [`find_term`]: minterm extraction below a positive assignment;
//! - five learners (see [`learners`]) with strict query accounting;
//! - instance generators and query-bound reference calculators
//!   ([`random_instance`], [`adversarial_pair`], [`bound_values`]);
//! - the JSON document formats shared with the CLI ([`io`]).

mod assignment;
mod cff;
mod dnf;
mod error;
mod find_term;
mod instances;
pub mod io;
pub mod learners;
mod oracle;
mod substitution;

pub use assignment::Assignment;
pub use cff::{
    cff_size_bounds, constraint_count, random_cff_size, CffMode, CffSizeBounds, CffSource,
    CffViolation, CoverFreeFamily, DEFAULT_LIMIT,
};
pub use dnf::{Mdnf, Term};
pub use error::{Error, Result};
pub use find_term::{find_term, find_term_query_bound};
pub use instances::{
    adversarial_pair, adversarial_pair_lower_bound, adversarial_pair_with_k, bound_values,
    random_instance, BoundValues, InstancePair,
};
pub use learners::{
    find_new_term_frequent, learn_cff, learn_cff_random, learn_exhaustive,
    learn_exhaustive_traced, learn_frequent, learn_frequent_random, learn_read, run_learner,
    Algorithm, ExhaustiveRound, ExhaustiveTrace, LearnerConfig, RunReport,
};
pub use oracle::QueryOracle;
pub use substitution::{Fix, Substitution};
