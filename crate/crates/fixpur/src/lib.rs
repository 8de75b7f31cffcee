//! # fixpur
//!
//! Uniform sampling of density matrices at an exactly prescribed purity
//! `μ = Tr ρ²`, together with the numerical machinery it needs and the
//! entanglement/correlation measures commonly evaluated on such samples.
//!
//! ## How sampling works
//!
//! The eigenvalues of a density matrix live on the probability simplex.
//! Restricting to descending order gives the *Weyl chamber*. Writing the
//! eigenvalue vector in an orthonormal basis centred on the maximally mixed
//! state turns the purity into a radius, `r = √(μ − 1/N)`, and the remaining
//! degrees of freedom into hyperspherical angles. The chamber walls become
//! coupled bounds on those angles.
//!
//! For fixed `r`, the angles are drawn top-down by inverse-CDF sampling of
//! their conditional marginals. The resulting chamber point is randomly
//! permuted and conjugated by a Haar unitary.
//!
//! ## Modules
//!
//! - [`matrixcore`]: complex matrices, Householder QR, Hermitian Jacobi
//!   eigensolver, Ginibre/Haar generators, unconstrained random states.
//! - [`chamber`]: simplex vertices, the orthonormal chamber basis, purity
//!   coordinates, angle bounds, eigenvalue ↔ polar maps.
//! - [`quad`]: adaptive Gauss–Kronrod (7/15) quadrature.
//! - [`cdf`]: closed-form CDFs for `N ≤ 4`, tabulated level functions for
//!   any `N`, monotone interpolation tables, inversion and region shares.
//! - [`sampler`]: fixed-purity sampling pipeline.
//! - [`measures`]: entropies, partial trace/transpose, concurrence,
//!   negativity, linear-entropy witnesses, mutual informations, discord,
//!   minimum-entropy bound and Werner-state analytics.
//! - [`induced`]: Hilbert–Schmidt and partial-trace induced eigenvalue
//!   measures and their purity marginals.
//! - [`stats`]: small statistical helpers (KS distance, histograms).

#![forbid(unsafe_code)]

pub mod cdf;
pub mod chamber;
mod error;
pub mod induced;
pub mod matrixcore;
pub mod measures;
pub mod quad;
pub mod rng;
pub mod sampler;
pub mod stats;

pub use error::{Error, Result};

/// Library version (embedded in run manifests).
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
