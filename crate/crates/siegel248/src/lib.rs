//! Exact verification engine for the weight-3 Siegel cuspforms of level
//! Gamma(2,4,8).
//!
//! The crate expands the cuspforms `g1` and `g4` (six-tuple products of
//! Igusa theta-constants) as sparse Fourier series with coefficients in
//! Z[zeta_8], computes their Hecke eigenvalues at odd primes by explicit
//! coset operators, independently assembles the conjectured spinor Euler
//! data from Hecke characters and a weight-4 newform, and checks the
//! resulting identities prime by prime.
//!
//! Modules:
//! - [`cyclotomic`]: exact arithmetic in Z[zeta_N]
//! - [`qseries`]: sparse truncated degree-2 Fourier expansions
//! - [`theta`]: Igusa theta-constants and theta products
//! - [`hecke`]: the T(p) coset operator and eigenvalue extraction
//! - [`characters`]: Hecke characters, Euler factors, predictions
//! - [`cli`]: the command-line front end

pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod hecke;
pub mod qseries;
pub mod theta;

pub use error::Error;
