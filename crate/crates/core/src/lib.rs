//! Toolkit for reconstructing a manifold's homology from finite samples via
//! Vietoris–Rips complexes.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! model manifold -> sample / reference net -> finite metric space
//!     -> Rips complex -> Betti numbers
//! ```
//!
//! together with the certification side: scale windows derived from the
//! model's convexity radius, curvature bound, and reach, plus numerical
//! verifiers for the geodesic-circumcenter constructions that justify those
//! windows.
//!
//! * [`metric`]: finite metric spaces, point clouds, correspondences,
//!   Hausdorff distance and correspondence distortion.
//! * [`complex`]: simplicial complexes, Rips construction, barycentric
//!   subdivision, simplicial maps and contiguity.
//! * [`homology`]: Betti numbers over GF(2) and Euler characteristics.
//! * [`models`]: the model manifolds (circle, round sphere, flat and
//!   embedded tori) with certified constants, samplers, and reference nets.
//! * [`jung`]: minimax circumcenters (Euclidean and geodesic) and the
//!   diameter/circumradius inequalities.
//! * [`conditions`]: scale windows, distortion thresholds, and the
//!   construction verifiers.
//! * [`io`]: CSV/JSON interchange for points, distance matrices, and
//!   complexes.

pub mod complex;
pub mod conditions;
pub mod homology;
pub mod io;
pub mod jung;
pub mod metric;
pub mod models;
pub mod rng;

#[cfg(feature = "oracles")]
pub mod oracles;
