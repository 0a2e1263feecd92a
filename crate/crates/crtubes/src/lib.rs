//! Local tube realizations of CR-manifold germs.
//!
//! The library constructs and validates abelian subalgebras of
//! polynomial vector fields that realize CR-manifolds as tubes
//! ℝ^r + iF, reproduces the sphere catalog of r+2 tube realizations,
//! the involution classification on hyperquadrics, iterated Levi
//! kernels of cone tubes and Siegel models, and finite-type tests.
//!
//! All symbolic computations run over exact Gaussian rationals;
//! floating point appears only in flow integration and sampling.

pub mod rational;
pub mod poly;
pub mod linalg;
pub mod vfield;
pub mod models;
pub mod engine;
pub mod levi;
pub mod report;
pub mod svg;

pub use rational::GaussRational;
pub use poly::MPoly;
pub use linalg::ExactMatrix;
