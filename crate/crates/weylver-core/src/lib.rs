//! Exact-arithmetic verification library for the polynomial Weyl algebra:
//! the Moyal product and eps-bracket, Hochschild chains and the explicit
//! degree-2n cocycle tau_2n given by a simplex integral, its lift Theta^N_2n
//! to Lie-algebra cochains of gl_N, and the Chern-Weil side (A-roof genus
//! times Chern character) of the local Riemann-Roch-Hirzebruch identity
//! ev_1 Theta_2n = (-1)^n chi((A_eps Ch)_n), checked on special vectors.
//!
//! Everything is computed over K = Q[eps, eps^-1] with zero numerical
//! tolerance: values are equal or they are not.

pub mod chern;
pub mod eps;
pub mod error;
pub mod gen;
pub mod hochschild;
pub mod integrate;
pub mod lie;
pub mod series;
pub mod tau;
pub mod weyl;

pub use eps::{EpsScalar, Rational};
pub use error::{Result, WeylError};
pub use hochschild::{canonical_cycle, ChainTensor};
pub use lie::{GlWeylElement, WedgeTuple};
pub use tau::{tau_closed_form_n1, tau_eval, tau_sigma_eval};
pub use weyl::{SpMatrix, WeylElement};
