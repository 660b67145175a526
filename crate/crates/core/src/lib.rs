//! Certified real-root solving for square binomial systems.
//!
//! A binomial system pairs an integer exponent matrix with one coefficient
//! pair per equation. This crate diagonalizes such systems with a Smith
//! factorization, decides real solvability from sign conditions, extracts
//! roots in log-sign arithmetic (so astronomically scaled magnitudes stay
//! exact), and certifies the result with residual, sign, and alpha-test
//! checks. Around the solver sit a seeded random-ensemble generator, a
//! Monte Carlo / quadrature harness for the distributional estimates the
//! solver's average-case analysis relies on, and an operation-counting
//! harness for scaling experiments.

pub mod bench;
pub mod ensemble;
pub mod error;
pub mod fixed;
pub mod jsonio;
pub mod linalg;
pub mod logsign;
pub mod prob;
pub mod solver;

pub use bench::{count_solve, fit_quadratic_log, run_scaling, ModelFit, OpCounter, ScalingCell, ScalingReport};
pub use ensemble::{rescale_to_unit_variance, sample_system, GaussianEnsemble, RescaledSystem};
pub use error::{Error, Result};
pub use linalg::{
    apply_exponent, smith_normal_form, verify_factorization, ExponentMatrix, IntMatrix,
    SmithFactorization,
};
pub use logsign::{precision_budget, LogSign, PrecisionBudget, Sign};
pub use solver::{
    back_substitute, certify, count_real_roots, diagonalize, has_real_root, sign_enumeration_oracle,
    solve, solve_diagonal, solve_univariate, solve_with_options, BinomialSystem, DiagonalSystem,
    ExactReal, OracleAnswer, RootCertificate, SolveOptions, SolveResult,
};
