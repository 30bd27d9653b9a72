//! Exact-arithmetic toolkit for primitive axial algebras of Jordan type.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod transposition;
pub mod verifier;

pub use algebra::{
    AxisReport, EigenDecomposition, Eigenvalue, FusionLaw, StructureAlgebra,
};
pub use analysis::{
    axis_closure, epsilon, frobenius_form, miyamoto, miyamoto_operator, s_chain, tau_word,
    ChainProfile, FrobeniusForm,
};
pub use error::{Error, Result};
pub use linalg::{invert, kernel, solve, Matrix, Subspace, Vector};
pub use poly::{QPoly, RationalFunction};
pub use scalar::{field_arith, ArithOp, FieldDescriptor, FieldKind, Scalar};
pub use transposition::{
    hall_set, matsuo_algebra, sym_transpositions, transposition_closure, ElementRep, PairKind,
    Permutation, TranspositionSet,
};
pub use verifier::{
    verify_gamma_theorem, GammaReport, RuleId, RuleOutcome, RuleStats, SuiteMode,
    VerificationReport, Verifier,
};
