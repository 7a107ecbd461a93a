//! Polynomial termination gadgets for term rewriting.
//!
//! This crate implements the constructive core of the reduction from
//! Diophantine equation solving (Hilbert's tenth problem) to polynomial
//! termination of term rewrite systems:
//!
//! * exact multivariate polynomial arithmetic with sign splitting
//!   ([`poly`]),
//! * first-order terms, the number/monomial/polynomial term encodings, and
//!   the two gadget TRS constructions ([`trs`]),
//! * polynomial interpretations over ℕ and over the nonnegative rationals
//!   with a δ-margin order, orientation certificates, and witness
//!   extraction ([`interp`]),
//! * bounded witness and interpretation searches plus the end-to-end
//!   reduction pipeline ([`search`]).
//!
//! Everything is exact: coefficients are arbitrary rationals within 128-bit
//! numerator/denominator range, and every certificate or witness the crate
//! reports has been re-verified against the defining inequality before it
//! reaches the caller.

pub mod interp;
pub mod poly;
pub mod rat;
pub mod search;
pub mod trs;

pub use interp::{
    always_terminating_interpretation, extract_witness, minimal_h, qr_interpretation,
    theorem_lin_interpretation, Domain, Interpretation, MinimalHError, OrientError,
    OrientationCert, Witness,
};
pub use search::{
    cross_check, hilbert_pipeline, linear_interp_search, witness_search, CrossCheckReport,
    CrossOutcome, ReductionBranch, ReductionReport, SearchConfig, SearchError, Verdict,
};
pub use poly::{parse_poly, parse_polynomial, Degree, Monomial, Polynomial, SignVector, VarId, VarNames};
pub use rat::Rat;
pub use trs::{
    build_qr_trs, build_single_rule_trs, serialize_trs, trs_from_json_str, EncodingSig, Rule,
    Signature, Term, Trs, TrsFormat,
};
