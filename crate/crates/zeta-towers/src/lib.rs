//! Exact invariants of p-power voltage towers over directed graphs.
//!
//! Given a strongly connected digraph X and a voltage assignment
//! alpha: E(X) -> Z^d together with a prime p, the derived graphs
//! X_0, X_1, X_2, ... over the groups (Z/p^n)^d form a tower of covers.
//! This crate computes, in exact integer / rational arithmetic:
//!
//! - sandpile (Picard) and Bowen-Franks groups of every level,
//! - zeta functions of levels and their factorization into L-functions
//!   of characters of the voltage group,
//! - the two determinant power series det(D - A_alpha) and
//!   det(Id - A_alpha) over Z[T1^±1, ..., Td^±1] that interpolate those
//!   families p-adically,
//! - mu/lambda growth invariants of the tower in the style of Iwasawa
//!   theory, for the interpolating prime p and for auxiliary primes l,
//! - the defect series measuring where analytic and algebraic ranks of
//!   levels disagree.
//!
//! Everything is computed twice where feasible: once through the
//! determinant calculus and once through direct linear algebra on the
//! derived graphs, and the library's tests hold the two routes equal.

pub mod cli;
pub mod cyclo;
pub mod defect;
pub mod digraph;
pub mod error;
pub mod groups;
pub mod io;
pub mod iwasawa;
pub mod laurent;
pub mod linalg;
pub mod tower;
pub mod util;
pub mod zeta;

pub use cyclo::{
    char_eval, enumerate_character_orbits, enumerate_frobenius_orbits, Character, CycloElement,
    CycloPoly, FrobeniusOrbit, GaloisOrbit,
};
pub use defect::{
    algebraic_rank, analytic_rank, constant_voltage_stabilization_level, defect_series,
    per_character_ranks, CharacterRanks, DefectLevel, DefectReport,
};
pub use digraph::{ConnectivityReport, Digraph, Edge};
pub use error::{Error, Result};
pub use groups::{
    bowen_franks_group, control_descent, level_groups, picard_group, AbGroupPresentation,
    ControlReport, GroupKind, LevelGroups,
};
pub use io::{parse_graph_spec, serialize_graph_spec, EdgeMode, EdgeSpec, GraphSpecFile};
pub use iwasawa::{
    growth_experiment, interpolation_check, iwasawa_mu_lambda_d1, mu_l, nonvanishing_check,
    orbit_char_ideal, p_adic_bf, p_adic_zeta, CharIdealComponent, GrowthTable, IwasawaInvariants,
};
pub use laurent::LaurentPolyZ;
pub use linalg::{IntMatrix, IntPoly, SnfResult};
pub use tower::{derived_digraph, symbolic_adjacency, VoltageAssignment};
pub use zeta::{artin_factorization, l_function_reciprocal, zeta_reciprocal, ArtinReport};
