//! Exact-arithmetic verification of n-ary algebras over ℚ.
//!
//! Products are multilinear maps given by structure constants
//! ([`StructureTensor`]). Every identity is checked on all basis tuples with
//! exact rational arithmetic, and a failure comes back with the first
//! counterexample tuple and both sides of the identity.
//!
//! The modules follow the layers of the library:
//!
//! * [`axioms`]: skew-symmetry, n-Jacobi, Lie, associative, pre-Lie and Lie
//!   triple system checks;
//! * [`operators`]: Rota-Baxter operators and derivations of weight λ;
//! * [`constructions`]: ternary brackets from Lie, pre-Lie and commutative
//!   associative algebras;
//! * [`inheritance`]: brackets induced by Rota-Baxter operators;
//! * [`workbench`]: files, the example catalog, search and the self-test.

pub mod algebra;
pub mod axioms;
pub mod constructions;
pub mod error;
pub mod inheritance;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod report;
pub mod scalar;
pub mod tensor;
pub mod workbench;

pub use algebra::Algebra;
pub use error::{Error, Result};
pub use linalg::{LinearForm, LinearMap, Vector};
pub use report::{CheckReport, Counterexample, Verdict};
pub use scalar::{format_scalar, parse_scalar, Scalar};
pub use tensor::{StructureTensor, Symmetry};
