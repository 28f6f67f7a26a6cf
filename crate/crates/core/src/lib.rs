//! Finite-N identities for characteristic polynomials of products of Wigner
//! matrices, with Monte Carlo verification, large-M zero asymptotics and
//! Lyapunov-exponent comparisons.
//!
//! The crate is organised around the pipeline
//!
//! * [`closedform`] — exact reference polynomials and kernels,
//! * [`sampling`] — reproducible Wigner-matrix sampling,
//! * [`matrix`] — per-sample numeric work (characteristic polynomials, minors),
//! * [`verifier`] — Monte Carlo estimation with statistical pass/fail gates,
//! * [`asymptotics`] — zeros of the averaged polynomials and their large-M limits,
//! * [`lyapunov`] — QR-based Lyapunov exponents and the Gaussian closed form.

pub mod asymptotics;
pub mod closedform;
pub mod combin;
pub mod logsign;
pub mod lyapunov;
pub mod matrix;
pub mod rng;
pub mod sampling;
pub mod stats;
pub mod verifier;

pub use num_complex::Complex64;
