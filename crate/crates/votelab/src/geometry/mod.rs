//! Hyperplane arrangements, sign signatures, polyhedra, and LP feasibility
//! over preference-model hulls — the machinery behind the asymptotic
//! classification of axiom satisfaction.

pub mod activation;
pub mod forms;
pub mod mixture;
pub mod polyhedron;

pub use activation::{activation_and_case, ActivationReport, CaseLabel, ConeWeight};
pub use forms::{
    copeland_forms, edge_order_forms, is_atomic, mrse_forms, oplus, pair_vector, refines,
    score_diff_vector, scoring_forms, sign_signature, signature_from_string,
    signature_to_string, LinearFormSet, Provenance, Sign, Signature,
};
pub use mixture::{feasible_signatures, mixture_feasibility, FormRel, MixtureWitness};
pub use polyhedron::{build_region, Polyhedron, RegionKind};
