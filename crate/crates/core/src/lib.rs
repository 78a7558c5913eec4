//! Exact symbolic toolkit for Jordanian h-deformed enveloping algebras.
//!
//! The crate builds the h-deformed U(sl(2)), U(so(4)) and their graded
//! contractions as declarative Hopf-algebra data, constructs their universal
//! R matrices, and verifies every structural claim (Hopf axioms,
//! quasitriangularity, the intertwiner identity, the quantum Yang-Baxter
//! equation, triangularity) order by order in the deformation parameter with
//! arbitrary-precision rational arithmetic. There are no tolerances anywhere:
//! a check passes exactly when its residual is the zero series.
//!
//! All values are immutable after construction and every operation is a pure
//! function; internal memoization is observationally transparent.

pub mod algebra;
pub mod analytic;
pub mod contraction;
pub mod error;
pub mod export;
pub mod expr;
pub mod hopf;
pub mod mutants;
pub mod normal;
pub mod rat;
pub mod reps;
pub mod rmatrix;
pub mod series;
pub mod tensor;
pub mod word;

pub use algebra::{lookup, registry, AlgebraDef};
pub use analytic::AnalyticFn;
pub use contraction::{classify_contracted_r, contract, contract_sl2_to_p2, ContractionOutcome, Mode, MuTriple};
pub use error::{Error, Result};
pub use hopf::{verify_hopf, HopfReport};
pub use rat::Rat;
pub use reps::{evaluate_r, fundamental_sl2, matrix_qybe, matrix_triangular, rep_so4_from_pair, PolyMatrix, Rep};
pub use rmatrix::{build_r, exponent_form, r_exponent, CheckReport, RMatrix, RSpec, Route};
pub use series::{pbw_normal_order, series_div_exact, HSeries, NCPoly, TensorSeries, TensorSeries2, TensorSeries3};
pub use word::{GenId, Word};
