//! Exact-arithmetic commutative algebra workbench core.
//!
//! Everything is generic over the coefficient [`Field`]; the two instances
//! used throughout are the rationals and prime fields GF(p).  Values are
//! immutable after construction and safe to share across threads; operations
//! are pure functions.

pub mod error;
pub mod ext_ann;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod loci;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod presentation;
pub mod primes;
pub mod ring;
pub mod syzygy;
pub mod text;

pub use error::{Budget, Error, Result};
pub use ext_ann::{ca_upper_bound, default_module_family, default_stability_pairs, ext_annihilator, ext_annihilator_with_resolution, free_resolution, stability_evidence, verify_resolution, ExtAnnReport, FpModule, Resolution, StabilityReport};
pub use field::{Field, PrimeField, Rationals};
pub use groebner::{buchberger, normal_form, GroebnerBasis};
pub use ideal::{ideal_op, Ideal, IdealOp};
pub use loci::{check_conditions, counterexample_builder, edd_reducer, singular_locus, square_zero_algebra, tensor_presentation, variety_contains, CounterexamplePair, LocusProvenance, LocusReport};
pub use matrix::{matrix_border_check, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use presentation::{check_generator_invariance, check_presentation_invariance, minimize_presentation, JnIdeal, Presentation};
pub use primes::{edd, edd_from_report, minimal_primes, DecompositionMethod, EddReport, MinimalPrimesReport};
pub use ring::PolyRing;
pub use syzygy::{module_groebner, syzygies, syzygies_of_polynomials, ModuleOrder, ModuleVec};

/// Concrete aliases for the two coefficient fields.
pub type QRing = PolyRing<Rationals>;
pub type QPoly = Polynomial<Rationals>;
pub type GfRing = PolyRing<PrimeField>;
pub type GfPoly = Polynomial<PrimeField>;
