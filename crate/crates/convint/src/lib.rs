//! Convex-integration engine for constructing continuous weak solutions of
//! the incompressible Euler equations on the 2D/3D torus with a prescribed
//! kinetic-energy profile.
//!
//! The crate is organized around the pieces of the construction:
//!
//! * [`spectral`] — periodic fields and the linear operators (derivatives,
//!   Poisson solves, Leray projection, anti-divergence, norms);
//! * [`flows`] — families of stationary flows built from lattice directions
//!   (stream functions in 2D, curl eigenfields in 3D);
//! * [`geometry`] — lattice directions on circles/spheres and the positive
//!   decomposition R = Σ γ_k²(R) (Id - k̂⊗k̂) near the identity;
//! * [`partition`] — the partition of velocity space and the phase functions
//!   with their transport-defect scaling;
//! * [`iteration`] — the Euler–Reynolds step (v, p, R̊) → (v₁, p₁, R̊₁) and the
//!   schedule that drives the stress to zero while pinching the energy;
//! * [`pfield`], [`config`], [`report`] — on-disk formats for fields,
//!   run configuration, and measured reports.

pub mod config;
pub mod error;
pub mod field;
pub mod fit;
pub mod flows;
pub mod geometry;
pub mod grid;
pub mod iteration;
pub mod linalg;
pub mod partition;
pub mod pfield;
pub mod report;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use field::{EvolvingField, FieldFlags, PeriodicField, Rank};
pub use grid::{TimeGrid, TorusGrid};
