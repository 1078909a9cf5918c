//! Exact computations for the Hecke groups `H(λ) = ⟨z ↦ -1/z, z ↦ z + λ⟩`
//! acting on quadratic irrationals `(a + √n)/c`, stored as integer triples
//! `(a, b, c)` with `bc = a² - n`.
//!
//! For `λ ∈ {1, 2}` every orbit meets the finite set `B(n)`; [`reduction`]
//! finds a certified path into it and [`orbits`] partitions it. For `λ ≥ 3`
//! there are infinitely many orbits, witnessed by [`divergence`].

pub mod action;
pub mod arith;
pub mod bounds;
pub mod divergence;
pub mod enumeration;
pub mod error;
pub mod orbits;
pub mod par;
pub mod reduction;

pub use action::{apply_word, verify_action, word_to_matrix, GeneratorToken, GroupWord, Matrix2, Norm, Triple};
pub use arith::{cmp_eps, d_int, divisor_pairs, is_valid_n, isqrt, tau, FieldParam};
pub use bounds::{bound_report, survey, survey_seq, theorem_bound, BoundReport};
pub use divergence::{
    alpha_family, distinct_orbit_certificates, find_s0, lemma_growth_step, FamilyCertificate,
};
pub use enumeration::{a_bound, enumerate_b, split_b, BSet};
pub use error::{Error, Result};
pub use orbits::{
    export_graph, orbit_count, orbit_partition, same_orbit, ExplorationConfig, OrbitPartition,
};
pub use reduction::{in_b, reduce_to_b, translation_step, ReductionResult};
