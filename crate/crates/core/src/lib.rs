//! Independence polynomials, decycling numbers, and constructive synthesis
//! of connected graphs with prescribed decycling number `k` and prescribed
//! value `I(G; -1) = q`.

pub mod bracket;
pub mod certificate;
pub mod counting;
pub mod decycling;
pub mod edgelist;
pub mod error;
pub mod graph;
pub mod poly;
pub mod random;
pub mod synth;
pub mod verify;

pub use bracket::{extend_bracket, negate_bracket, paste_brackets, Bracket};
pub use certificate::{
    predicted_bracket, predicted_phi, realize, BaseGraph, CertKind, CertNode,
    ConstructionCertificate, Target,
};
pub use counting::{
    bracket, brute_force_census, independence_number, independence_polynomial, value_at_minus_one,
};
pub use decycling::{check_phi_certificate, is_decycling_set, min_decycling, PhiCertificate};
pub use error::{Error, Result};
pub use graph::{make_complete, make_cycle, make_path, Graph, RootedGraph};
pub use poly::IntegerPolynomial;
pub use synth::{claim_graph, connectify, synth, ClaimForm};
