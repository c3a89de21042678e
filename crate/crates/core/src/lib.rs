//! Core algorithms for random Čech filtrations over Poisson processes on the
//! flat torus `T^d = R^d / Z^d`.
//!
//! The crate is `no_std`-compatible (with `alloc`); the `std` feature (default)
//! only switches float transcendentals to the platform implementations. It
//! provides:
//!
//! - [`geom`]: toroidal metric, local isometric lifts, circumspheres, minimal
//!   enclosing balls, simplex volumes, and spherical cap/lens volumes;
//! - [`rng`]: seeded, counter-derived random streams for reproducible trials;
//! - [`poisson`]: homogeneous Poisson sampling on the torus with grid-backed
//!   ball queries;
//! - [`cech`]: bounded Čech filtrations built from a point cloud;
//! - [`reduce`]: boundary-matrix column reduction over Z/2;
//! - [`morse`]: critical faces of the radius function, their signs, persistence
//!   pairing, counters, and hitting times (exact, for desk-scale clouds);
//! - [`survey`]: the large-cloud engine that finds every critical face by
//!   censuses and a vacancy scan instead of building the full filtration;
//! - [`trial`]: one end-to-end simulation trial with degeneracy handling;
//! - [`limit`]: the critical-window parametrization, the expected-count
//!   formula, rate constants `D_k`, and the integral-identity self-tests.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cech;
pub mod error;
pub(crate) mod fmath;
pub mod geom;
pub mod limit;
pub mod morse;
pub mod poisson;
pub mod reduce;
pub mod rng;
pub mod survey;
pub mod trial;

/// Largest supported ambient dimension of the torus.
pub const MAX_DIM: usize = 4;

/// Upper bound of the studied filtration radius. At this value every lifted
/// configuration has diameter below 1/2, so local charts stay isometric and
/// all ball intersections are convex.
pub const R_MAX: f64 = 0.125;

/// Fixed-capacity coordinate vector; only the first `d` entries are used.
pub type Coord = [f64; MAX_DIM];

pub use error::Error;
