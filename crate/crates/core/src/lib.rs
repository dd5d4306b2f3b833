//! Jacobi expansions, Sobolev-orthogonal polynomial bases and the simultaneous
//! approximation operators in weighted `L^p` norms on `[-1, 1]`.
//!
//! Jacobi polynomials use the normalization `J_n = 2^n / (n+α+β+1)_n · P_n`,
//! whose leading coefficient is `1/n!` and which satisfies `∂J_n^{α,β} = J_{n-1}^{α+1,β+1}`.

pub mod cli;
pub mod connection;
pub mod duality;
pub mod error;
pub mod experiments;
pub mod fourier;
pub mod poly;
pub mod quadrature;
pub mod registry;
pub mod sobolev;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use poly::Poly;
pub use quadrature::{Func, QuadRule};
pub use special::Params;
