pub mod algebra;
pub mod catalog;
pub mod cohomology;
pub mod constructions;
pub mod error;
pub mod json;
pub mod linalg;
pub mod nijenhuis;
pub mod operators;
pub mod report;
pub mod scalar;
pub mod tuples;

pub use algebra::{is_homomorphism, BracketCandidate, FundamentalObject, LinearFunctional, NLieAlgebra};
pub use catalog::{builtin, parse_call, random_map, Builtin, Params, Sampler};
pub use cohomology::{
    adjoint_rep, check_d_squared, check_representation, coboundary, nr_bracket, semidirect_product, Cochain,
    Representation,
};
pub use constructions::{
    assoc_derivation_space, bracket_d1_d2, bracket_d1_d2_d3, bracket_f_d, check_comm_assoc,
    check_nijenhuis_persistence, check_nijenhuis_persistence_assoc, commutant, det3, det3_expansion_basis,
    det3_expansion_check, extend_by_functional, is_assoc_derivation, is_nijenhuis_assoc, symmetric_functionals,
    CommAssocAlgebra, Construction,
};
pub use error::{Error, Result};
pub use linalg::{LinearMap, Matrix, Vector};
pub use nijenhuis::{
    check_deformation_conditions, check_trivial, deformed_bracket, is_nijenhuis, is_nijenhuis_unshuffle, omega_family,
    polynomial_map, power_identity, DeformationFamily,
};
pub use operators::{
    classify_map, classify_reports, is_o_operator, is_rota_baxter, is_rota_baxter_via_o_operator, lift_o_operator,
    Classification,
};
pub use report::{Report, Witness};
pub use scalar::{Field, GaussianRational, Rational, Scalar};
