//! Equational reasoning over MV-algebra and BCK-algebra bases.
//!
//! The crate is split along the natural pipeline: [`term`] (syntax, matching),
//! [`theory`] (signatures and named identity sets), [`proof`] (replay of
//! rewrite chains), [`model`] (finite algebras) and [`search`] (model
//! enumeration and theory comparison). [`report`] bundles the fixed set of
//! theorem checks used by the command line tool.

pub mod error;
pub mod model;
pub mod proof;
pub mod report;
pub mod search;
pub mod term;
pub mod theory;

pub use error::{ModelError, ParseError, ProofError, SearchError, TermError, TheoryError};
pub use model::{bck_reduct, is_isomorphic, lukasiewicz_chain, parse_model, FiniteAlgebra};
pub use proof::{bundled_proofs, check_bundled, CheckReport, ProofLibrary};
pub use search::{
    compare_same_signature, compare_with_constant_expansion, enumerate_models, verify_independence,
    ComparisonReport, SearchOptions, Verdict,
};
pub use term::{match_term, parse_term, Position, Substitution, Term};
pub use theory::{builtin_theories, builtin_theory, parse_theory, Catalog, Identity, Signature, Theory};
