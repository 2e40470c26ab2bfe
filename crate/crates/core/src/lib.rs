//! Cusp-excursion laboratory for the modular surface.
//!
//! The crate has four layers:
//!
//! * [`hyperbolic`] — closed-form geometry of the upper half-plane:
//!   Möbius maps, geodesics, horoballs, excursion lengths and the
//!   depth observable `Ψ` with its truncations. Generic over the
//!   scalar type via [`real::Real`].
//! * [`cf`] — an exact continued-fraction engine over arbitrary-precision
//!   integers: expansions of rationals and of lazily refined random reals,
//!   convergents, trimmed-sum statistics, Lévy ratios, and `SL(2,Z)`
//!   word/translation-length computations.
//! * [`modular`] — the modular-surface specialization: fundamental-domain
//!   reduction, Ford-horoball enumeration along a geodesic, Liouville and
//!   boundary sampling, cusp-volume estimation.
//! * [`stats`] — per-geodesic excursion statistics and deterministic,
//!   seed-reproducible Monte Carlo aggregation with empirical verifiers
//!   for the strong laws the library targets.
//!
//! All floating-point work at the crate root is done at `f64`; the type
//! aliases below fix the concrete scalar once and for all.

pub mod cf;
pub mod error;
pub mod hyperbolic;
pub mod modular;
pub mod real;
pub mod rng;
pub mod stats;

/// Upper half-plane point at the crate's working precision.
pub type Point = hyperbolic::Point<f64>;
/// Boundary point (real number or `∞`) at the working precision.
pub type BoundaryPoint = hyperbolic::BoundaryPoint<f64>;
/// Real Möbius transformation with determinant one.
pub type Mobius = hyperbolic::Mobius<f64>;
/// Unit-speed geodesic at the working precision.
pub type Geodesic = hyperbolic::Geodesic<f64>;
/// Horoball at the working precision.
pub type Horoball = hyperbolic::Horoball<f64>;
/// Horoball crossing data at the working precision.
pub type Crossing = hyperbolic::Crossing<f64>;
