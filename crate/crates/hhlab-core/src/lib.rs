//! Numerical toolkit for interior-vs-boundary mean inequalities of convex and
//! subharmonic functions on convex bodies and planar test domains.
//!
//! The crate is organized around the pipeline: geometry (bodies, measures,
//! slices, symmetrization), inscribed ellipsoids, test functions with certified
//! convexity/subharmonicity, interior/boundary quadrature and the normalized
//! ratio evaluator, chord-transport densities, closed-form constants and
//! special functions, masked-grid elliptic/parabolic solvers, walk-on-spheres
//! and survival estimators, and extremal-ratio search.

pub mod bounds;
pub mod error;
pub mod families;
pub mod functions;
pub mod geometry;
pub mod john;
pub mod opt;
pub mod pde;
pub mod quadrature;
pub mod rng;
pub mod search;
pub mod stochastic;
pub mod transport;

pub use error::{Error, Result};
pub use functions::TestFunction;
pub use geometry::{ConvexBody, Domain, PlanarDomain};
pub use quadrature::RatioReport;
