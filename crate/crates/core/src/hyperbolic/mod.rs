//! Closed-form hyperbolic geometry of the upper half-plane (curvature −1).
//!
//! Everything here is exact in the scalar type: no iteration, no root
//! finding. The geodesic/horoball crossing machinery reduces every case to
//! a normalizing Möbius map that sends the horoball to `{y ≥ 1}`, where the
//! geodesic becomes a Euclidean semicircle of radius `ρ` and all excursion
//! quantities are elementary functions of `ρ`.

mod geodesic;
mod horoball;
mod mobius;

pub use geodesic::{base_residual, Geodesic, GeodesicShape};
pub use horoball::{horoball_depth, Crossing, Excursion, Horoball};
pub use mobius::Mobius;

use crate::real::Real;

/// Point of the upper half-plane, `y > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<R> {
    pub x: R,
    pub y: R,
}

impl<R: Real> Point<R> {
    pub fn new(x: R, y: R) -> Self {
        debug_assert!(x.is_finite() && y.is_finite() && y > R::zero());
        Point { x, y }
    }

    /// Squared Euclidean distance to another point.
    #[inline]
    pub fn dist_sq(&self, other: &Point<R>) -> R {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// Ideal boundary point: a real number or the distinguished point `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint<R> {
    Finite(R),
    Infinity,
}

impl<R: Real> BoundaryPoint<R> {
    pub fn finite(self) -> Option<R> {
        match self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }
}

/// Hyperbolic distance `arccosh(1 + |z1−z2|² / (2 y1 y2))`.
pub fn distance<R: Real>(z1: &Point<R>, z2: &Point<R>) -> R {
    let two = R::c(2.0);
    let arg = R::one() + z1.dist_sq(z2) / (two * z1.y * z2.y);
    // Guard against arg dipping below 1 by rounding when z1 ≈ z2.
    arg.max(R::one()).acosh()
}
