//! Unit-speed geodesics of the upper half-plane.

use super::{BoundaryPoint, Mobius, Point};
use crate::real::Real;

/// Supporting curve of a geodesic: a Euclidean semicircle centered on the
/// real axis or a vertical line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeodesicShape<R> {
    Vertical { foot: R },
    Semicircle { center: R, radius: R },
}

/// Oriented unit-speed geodesic with a marked basepoint at time zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic<R> {
    pub shape: GeodesicShape<R>,
    pub base: Point<R>,
    pub forward: BoundaryPoint<R>,
}

impl<R: Real> Geodesic<R> {
    /// The unique geodesic through `x0` with forward ideal endpoint `r`.
    pub fn through(x0: Point<R>, r: BoundaryPoint<R>) -> Self {
        let shape = match r {
            BoundaryPoint::Infinity => GeodesicShape::Vertical { foot: x0.x },
            BoundaryPoint::Finite(t) if t == x0.x => GeodesicShape::Vertical { foot: t },
            BoundaryPoint::Finite(t) => {
                // Solve (x0.x − c)² + x0.y² = (t − c)² for the center.
                let two = R::c(2.0);
                let c = (t * t - x0.x * x0.x - x0.y * x0.y) / (two * (t - x0.x));
                GeodesicShape::Semicircle { center: c, radius: (t - c).abs() }
            }
        };
        Geodesic { shape, base: x0, forward: r }
    }

    /// Geodesic through `z` tangent to the Euclidean direction `θ`
    /// (angle against the positive x-axis).
    pub fn from_direction(z: Point<R>, theta: R) -> Self {
        let (sin, cos) = theta.sin_cos();
        if cos.abs() <= R::epsilon() * R::c(4.0) {
            let forward = if sin > R::zero() {
                BoundaryPoint::Infinity
            } else {
                BoundaryPoint::Finite(z.x)
            };
            return Geodesic { shape: GeodesicShape::Vertical { foot: z.x }, base: z, forward };
        }
        let c = z.x + z.y * sin / cos;
        let r = z.y / cos.abs();
        let forward = if cos > R::zero() {
            BoundaryPoint::Finite(c + r)
        } else {
            BoundaryPoint::Finite(c - r)
        };
        Geodesic { shape: GeodesicShape::Semicircle { center: c, radius: r }, base: z, forward }
    }

    /// Whether the forward endpoint is the right end of the semicircle.
    /// Decided by proximity so that rounding in reconstructed geodesics
    /// cannot flip the orientation.
    fn forward_is_right(&self) -> bool {
        match (self.shape, self.forward) {
            (GeodesicShape::Semicircle { center, radius }, BoundaryPoint::Finite(v)) => {
                (v - (center + radius)).abs() <= (v - (center - radius)).abs()
            }
            _ => true,
        }
    }

    /// Backward and forward ideal endpoints.
    pub fn endpoints(&self) -> (BoundaryPoint<R>, BoundaryPoint<R>) {
        let backward = match self.shape {
            GeodesicShape::Vertical { foot } => {
                if self.forward.is_infinity() {
                    BoundaryPoint::Finite(foot)
                } else {
                    BoundaryPoint::Infinity
                }
            }
            GeodesicShape::Semicircle { center, radius } => {
                if self.forward_is_right() {
                    BoundaryPoint::Finite(center - radius)
                } else {
                    BoundaryPoint::Finite(center + radius)
                }
            }
        };
        (backward, self.forward)
    }

    /// Signed arclength coordinate increasing toward the forward endpoint;
    /// zero point is arbitrary but fixed per geodesic.
    pub fn s_coord(&self, z: &Point<R>) -> R {
        match (self.shape, self.forward) {
            (GeodesicShape::Vertical { .. }, BoundaryPoint::Infinity) => z.y.ln(),
            (GeodesicShape::Vertical { .. }, _) => -z.y.ln(),
            (GeodesicShape::Semicircle { center, radius }, _) => {
                let (l, r) = (center - radius, center + radius);
                let (u, v) = if self.forward_is_right() { (l, r) } else { (r, l) };
                let du = ((z.x - u) * (z.x - u) + z.y * z.y).sqrt();
                let dv = ((z.x - v) * (z.x - v) + z.y * z.y).sqrt();
                (du / dv).ln()
            }
        }
    }

    /// Time of a point lying on the geodesic, relative to the basepoint.
    pub fn time_of(&self, z: &Point<R>) -> R {
        self.s_coord(z) - self.s_coord(&self.base)
    }

    /// Point at unit-speed time `t` from the basepoint.
    pub fn point_at_time(&self, t: R) -> Point<R> {
        match self.shape {
            GeodesicShape::Vertical { foot } => {
                let sign = if self.forward.is_infinity() { t } else { -t };
                Point::new(foot, self.base.y * sign.exp())
            }
            GeodesicShape::Semicircle { center, radius } => {
                let toward_right = self.forward_is_right();
                let theta0 = (self.base.y).atan2(self.base.x - center);
                let half = R::c(0.5);
                let u0 = (theta0 * half).tan();
                let u = if toward_right { u0 * (-t).exp() } else { u0 * t.exp() };
                let theta = R::c(2.0) * u.atan();
                Point::new(center + radius * theta.cos(), radius * theta.sin())
            }
        }
    }

    /// Image geodesic under a Möbius map.
    pub fn transformed(&self, m: &Mobius<R>) -> Self {
        Geodesic::through(m.apply(&self.base), m.apply_boundary(&self.forward))
    }
}

/// Basepoint consistency: distance of the basepoint from the support curve.
pub fn base_residual<R: Real>(g: &Geodesic<R>) -> R {
    match g.shape {
        GeodesicShape::Vertical { foot } => (g.base.x - foot).abs(),
        GeodesicShape::Semicircle { center, radius } => {
            let d = ((g.base.x - center) * (g.base.x - center) + g.base.y * g.base.y).sqrt();
            (d - radius).abs()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::distance;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vertical_ray_to_infinity() {
        let g = Geodesic::through(Point::new(0.0, 1.0), BoundaryPoint::Infinity);
        assert_eq!(g.shape, GeodesicShape::Vertical { foot: 0.0 });
        let p = g.point_at_time(2.0f64.ln());
        assert_abs_diff_eq!(p.x, 0.0);
        assert_abs_diff_eq!(p.y, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn symmetric_endpoint_gives_unit_circle() {
        let g = Geodesic::through(Point::new(0.0, 1.0), BoundaryPoint::Finite(1.0));
        match g.shape {
            GeodesicShape::Semicircle { center, radius } => {
                assert_abs_diff_eq!(center, 0.0);
                assert_abs_diff_eq!(radius, 1.0);
            }
            _ => panic!("expected semicircle"),
        }
    }

    #[test]
    fn two_point_circle_condition() {
        // center solves c² + 1 = (2 − c)², i.e. c = 3/4, radius 5/4
        let g = Geodesic::through(Point::new(0.0, 1.0), BoundaryPoint::Finite(2.0));
        match g.shape {
            GeodesicShape::Semicircle { center, radius } => {
                assert_abs_diff_eq!(center, 0.75, epsilon = 1e-15);
                assert_abs_diff_eq!(radius, 1.25, epsilon = 1e-15);
            }
            _ => panic!("expected semicircle"),
        }
    }

    #[test]
    fn basepoint_at_time_zero() {
        let g = Geodesic::through(Point::new(0.3, 0.8), BoundaryPoint::Finite(2.0));
        let p = g.point_at_time(0.0);
        assert_abs_diff_eq!(p.x, 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(p.y, 0.8, epsilon = 1e-12);
    }

    #[test]
    fn unit_speed_parametrization() {
        let g = Geodesic::through(Point::new(0.0, 1.0), BoundaryPoint::Finite(1.0));
        for (s, t) in [(0.0, 0.7), (-1.3, 0.4), (2.0, 2.5)] {
            let a = g.point_at_time(s);
            let b = g.point_at_time(t);
            assert_abs_diff_eq!(distance(&a, &b), (s - t as f64).abs(), epsilon = 1e-9);
        }
        // time_of inverts point_at_time
        for t in [-2.0, -0.5, 0.0, 1.0, 3.0] {
            assert_abs_diff_eq!(g.time_of(&g.point_at_time(t)), t, epsilon = 1e-10);
        }
    }

    #[test]
    fn point_at_arccosh_matches_bisection_oracle() {
        // On the unit semicircle toward +1: find the point at hyperbolic
        // distance arccosh(1.5) from (0,1) by bisection on the angle, then
        // compare with the closed-form parametrization.
        let g = Geodesic::through(Point::new(0.0, 1.0), BoundaryPoint::Finite(1.0));
        let t_star = 1.5f64.acosh();
        let base = Point::new(0.0, 1.0);
        let (mut lo, mut hi) = (0.0f64, 10.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let p = g.point_at_time(mid);
            if distance(&base, &p) < t_star {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let oracle = g.point_at_time(0.5 * (lo + hi));
        let closed = g.point_at_time(t_star);
        assert_abs_diff_eq!(oracle.x, closed.x, epsilon = 1e-9);
        assert_abs_diff_eq!(oracle.y, closed.y, epsilon = 1e-9);
        assert_abs_diff_eq!(distance(&base, &closed), t_star, epsilon = 1e-12);
    }

    #[test]
    fn direction_construction_agrees_with_endpoints() {
        // Pointing right from i gives the unit semicircle toward +1.
        let g = Geodesic::from_direction(Point::new(0.0, 1.0), 0.0);
        assert_eq!(g.forward, BoundaryPoint::Finite(1.0));
        // Straight up gives the vertical ray.
        let g = Geodesic::from_direction(Point::new(0.0, 1.0), std::f64::consts::FRAC_PI_2);
        assert!(g.forward.is_infinity());
    }
}
