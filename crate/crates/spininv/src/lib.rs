//! Exact invariants of even framed links and of spin / compatibly framed
//! three-manifolds.
//!
//! The crate has three computational layers:
//!
//! * a state-sum engine over finite-dimensional quasitriangular Hopf algebras
//!   ([`hopf`], [`hennings`]), evaluating decorated link projections with
//!   quantum-character labels and, for unimodular factorizable algebras, the
//!   surgered three-manifold invariant;
//! * an abelian Gauss-sum engine ([`abelian`]) for finite groups with a
//!   quadratic form, including the Murakami–Ohtsuki–Okada sum and the
//!   Kirby–Melvin characteristic-sublink invariants;
//! * a small Kirby-calculus layer ([`diagram`], [`surgery`]) that serves both
//!   as the input language (sliced Morse diagrams, linking matrices) and as a
//!   property-testing harness ([`fuzz`]): every rewrite it implements must
//!   leave the downstream invariants exactly unchanged.
//!
//! All scalars are exact cyclotomics ([`scalar::Cyclotomic`]); floats appear
//! only in display output and in the deterministic square-root sign rule.

pub mod scalar;
pub mod surgery;
pub mod diagram;
pub mod hopf;
pub mod hennings;
pub mod abelian;
pub mod fuzz;

pub use scalar::{Cyclotomic, Rational, ScalarError};
