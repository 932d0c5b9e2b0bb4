//! Exact symbolic computation in the algebra of one-sided inverses of a
//! polynomial algebra: the algebra generated by x_1..x_n, y_1..y_n subject to
//! y_i x_i = 1 and all cross-coordinate commutations.
//!
//! The crate provides:
//!
//! - canonical arithmetic on the monomial basis x^alpha y^beta, the involution
//!   x_i <-> y_i, and fully expanded matrix units ([`element`]);
//! - the mixed (tensor-factor) basis and conversions both ways ([`mixed`]);
//! - decision procedures for the distinguished ideal family (height-one prime
//!   intersections, level sums, the matrix ideal) and Laurent quotients
//!   ([`ideal`], [`laurent`]);
//! - the faithful polynomial module and exact Fredholm machinery: truncated
//!   kernels with stabilization, indices, per-coordinate index homomorphisms,
//!   and kernel/cokernel matching corrections ([`action`], [`fredholm`]);
//! - explicit unit-group generators with closed-form inverses, Laurent matrix
//!   images, determinant-degree lattice homomorphisms, and the constructive
//!   top-level factorization ([`units`]);
//! - the automorphism group in factored form with composition, rigidity, and
//!   the Jacobian characters including the low-dimensional exotic ones
//!   ([`aut`]);
//! - an expression parser and the command-line front end ([`parser`], [`cli`]),
//!   plus the identity verification registry ([`verify`]).
//!
//! Everything is exact over the rationals; there is no floating point
//! anywhere. All values are immutable and all operations are pure, so types
//! can be shared freely across threads.

pub mod action;
pub mod aut;
pub mod cli;
pub mod element;
pub mod error;
pub mod fredholm;
pub mod ideal;
pub mod laurent;
pub mod linalg;
pub mod mixed;
pub mod monomial;
pub mod oracle;
pub mod parser;
pub mod scalar;
pub mod units;
pub mod verify;

pub use action::{apply, PolyElement};
pub use element::Element;
pub use error::{ParseError, Result, SnError};
pub use fredholm::{
    fredholm_correction, ind_i, ind_vector, index, index_default, kernel_basis, kernel_dim,
    perturb_invariance_check, IndexReport, Stabilization,
};
pub use ideal::{filtration_dim, filtration_dim_closed, ideal_member, IdealSpec};
pub use laurent::{laurent_image, laurent_image_full, LaurentElement, TensorLaurent};
pub use mixed::{from_mixed, to_mixed, MixedElement, MixedMonomial};
pub use monomial::{Monomial, MultiIndex};
pub use scalar::Scalar;
pub use units::{
    chi, commutator_identities_suite, det_degree, factor_ann1, invert_element, matrix_image,
    mu, mu_scalar, psi_prime, theta, FactorAnn1, LatticeVector, LaurentMatrix, Word,
};
