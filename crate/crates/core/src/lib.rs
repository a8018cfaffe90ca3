//! Exact computations with the degree-2 symplectic expansion invariant of
//! pairs of curves on a genus-g surface with one boundary component.
//!
//! Given words `a`, `b` in the symplectic generators of π₁(Σ_{g,1}), the
//! crate computes the homology classes `|a|`, `|b|`, the values ℓ(a), ℓ(b)
//! in H∧H, and the vector `ℓ(a)(|b|) + ℓ(b)(|a|)`. When `|a|·|b| = 0` and
//! that vector lies outside the lattice `ℤ|a| + ℤ|b|`, any pair of simple
//! closed curves represented by `a` and `b` must intersect. The [`tensor`]
//! module carries the truncated tensor-algebra machinery (θ₀, `L^θ`, the
//! twist automorphism `e^{−L^θ(a)}`) used to cross-check that statement.
//!
//! All arithmetic is exact over arbitrary-precision rationals.

pub mod ell;
pub mod error;
pub mod homology;
pub mod obstruction;
pub mod parse;
pub mod selftest;
pub mod tensor;
pub mod wedge;
pub mod word;

pub use ell::{ell, obstruction_vector};
pub use error::{Error, Result};
pub use homology::{abelianize, intersection, lattice_member, HVec, LatticeWitness, Rational};
pub use obstruction::{analyze, twist_consistency, Report, TwistCheck, Verdict};
pub use parse::parse_word;
pub use tensor::{johnson_twist, l_theta, theta0, TruncTensor};
pub use wedge::{act2, act3, embed2, embed3, omega, wedge, wedge3, Wedge2, Wedge3};
pub use word::{boundary_word, random_commutator_element, random_word, Letter, Word};
