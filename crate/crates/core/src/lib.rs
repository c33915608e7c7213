//! Exact computations behind simple Grassmannian flops: Borel–Weil–Bott
//! vanishing on `Gr(r,n)`, Schubert and quantum Schubert calculus,
//! projective local models, and the Γ-class Chern character extraction.
//!
//! All arithmetic is exact (big rationals); nothing here uses floating point.

pub mod ambient;
pub mod bundles;
pub mod bwb;
pub mod error;
pub mod gamma;
pub mod localmodel;
pub mod poly;
pub mod quantum;
pub mod schubert;
pub mod weights;

pub use ambient::Ambient;
pub use bundles::{normalize, sym_conormal, tensor_summands, BundleExpr, IrreducibleSummand, Summands};
pub use bwb::{
    bwb_irreducible, cohomology, cohomology_of, euler_characteristic, verify_vanishing, verify_vanishing_with, BwbResult,
    Conormal, Family, VanishingReport,
};
pub use error::{Error, Result};
pub use gamma::{extract_ch, gamma_class, psi_transform, ChVector, Monomial, SymbolicSeries};
pub use localmodel::{compare_sides, flop_datum, kirwan, poincare_polynomial_bar, presentation, EquivariantPolynomial, ProjBundleClass, Side};
pub use quantum::{associativity_check, multiplication_matrix, quantum_product, semisimplicity_certificate, QClass};
pub use schubert::{chern_character, hrr_euler, poincare_polynomial, product, CohClass, FlopDatum, Poincare};
pub use weights::{lr_coefficient, lr_coefficients, sym_power_compositions, weyl_dimension, GLWeight, Partition};

/// Exact rationals used for every cohomology coefficient.
pub type Rational = num_rational::BigRational;

/// `num / den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
