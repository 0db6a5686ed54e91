//! Closed-form ground-state thermodynamics of the anisotropic XY chain in a
//! transverse field, together with the numerical oracles used to certify it.
//!
//! The crate is organised bottom-up:
//!
//! - [`elliptic`]: complete elliptic integrals via Carlson symmetric forms.
//! - [`closedform`]: phase classification, ground-state energy, magnetization,
//!   susceptibility, critical expansions and derivatives on the disorder circle.
//! - [`quadoracle`]: adaptive Gauss-Kronrod quadrature of the energy integral
//!   and Richardson-extrapolated finite differences.
//! - [`spectrum`]: finite-chain free-fermion spectra and gaps.
//! - [`exactspin`]: brute-force diagonalization of the 2^N spin Hamiltonian.
//! - [`analysis`]: parameter scans, gap series, finite-size fits and CSV output.
//! - [`verify`]: the oracle cross-check suite behind `xychain verify`.
//!
//! Data-parallel loops go through [`parallel::Execution`]; with the default
//! `parallel` feature they run on rayon, otherwise sequentially.

// NaN must fail every range check, so `!(x < hi)` is preferred over `x >= hi`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod closedform;
pub mod elliptic;
pub mod error;
pub mod exactspin;
pub mod parallel;
pub mod quadoracle;
pub mod spectrum;
pub mod verify;

pub use closedform::{ModelParams, PhaseRegion};
pub use error::{Error, Result};
pub use parallel::Execution;
pub use spectrum::{Boundary, ChainSpec, SpectrumResult};
