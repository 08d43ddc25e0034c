//! Numerical toolkit for discretizing Paley-Wiener spaces.
//!
//! The modules build on each other: [`grid`] carries sampled functions, [`kernels`] supplies the
//! band-limited kernels and the smooth window, [`discretization`] the dyadic atoms,
//! [`toeplitz`] the prolate matrices and their spectra, [`frames`] sampling-based reconstruction,
//! and [`pathology`] the spectra that defeat discretization.

pub mod discretization;
pub mod error;
pub mod frames;
pub mod grid;
pub mod kernels;
pub mod pathology;
pub mod special;
pub mod toeplitz;
pub mod wide;

pub use error::{Error, Result};
