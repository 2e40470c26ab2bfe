//! Horoballs, crossings, excursion lengths and the depth observable.
//!
//! A crossing is resolved by a normalizing map sending the horoball to
//! `{y ≥ 1}`; there the geodesic is a semicircle of radius `ρ` and
//!
//! * excursion length (horocyclic entry-to-exit distance): `2·√(ρ²−1)`,
//! * maximal depth: `log ρ`,
//! * time inside: `2·arccosh ρ`,
//! * `∫ Ψ_R dt` over any time window: `(2/π)·ρ·Δθ` over the angular band
//!   where the depth lies in `[0, log R]`.

use super::{BoundaryPoint, Geodesic, GeodesicShape, Mobius, Point};
use crate::error::GeomError;
use crate::real::Real;

/// Horoball: tangent disk at a finite boundary point (`size` = Euclidean
/// radius) or the halfplane `{y ≥ size}` when tangent at `∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horoball<R> {
    pub tangency: BoundaryPoint<R>,
    pub size: R,
}

impl<R: Real> Horoball<R> {
    pub fn at_infinity(height: R) -> Self {
        debug_assert!(height > R::zero());
        Horoball { tangency: BoundaryPoint::Infinity, size: height }
    }

    pub fn at(w: R, radius: R) -> Self {
        debug_assert!(radius > R::zero());
        Horoball { tangency: BoundaryPoint::Finite(w), size: radius }
    }

    /// Image horoball under a Möbius map with determinant one.
    pub fn transformed(&self, m: &Mobius<R>) -> Self {
        let two = R::c(2.0);
        match self.tangency {
            BoundaryPoint::Finite(w) => {
                let den = m.c * w + m.d;
                if den == R::zero() {
                    Horoball::at_infinity(R::one() / (two * m.c * m.c * self.size))
                } else {
                    Horoball::at((m.a * w + m.b) / den, self.size / (den * den))
                }
            }
            BoundaryPoint::Infinity => {
                if m.c == R::zero() {
                    Horoball::at_infinity(self.size * m.a * m.a)
                } else {
                    Horoball::at(m.a / m.c, R::one() / (two * m.c * m.c * self.size))
                }
            }
        }
    }
}

/// Depth of a point inside a horoball (zero outside).
pub fn horoball_depth<R: Real>(z: &Point<R>, h: &Horoball<R>) -> R {
    let img_height = match h.tangency {
        BoundaryPoint::Infinity => z.y / h.size,
        BoundaryPoint::Finite(w) => {
            let dx = z.x - w;
            R::c(2.0) * h.size * z.y / (dx * dx + z.y * z.y)
        }
    };
    img_height.ln().max(R::zero())
}

/// Crossing of a geodesic through an open horoball.
///
/// `rho` is the semicircle radius after normalizing the horoball to
/// `{y ≥ 1}`. Terminal crossings (geodesic endpoint equal to the tangency
/// point) carry an infinite `rho` and an infinite `t_in` or `t_out`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing<R> {
    pub t_in: R,
    pub t_out: R,
    pub rho: R,
}

/// Excursion data of a complete crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Excursion<R> {
    pub e: R,
    pub max_depth: R,
}

impl<R: Real> Crossing<R> {
    pub fn new(t_in: R, t_out: R, rho: R) -> Self {
        debug_assert!(t_in < t_out);
        debug_assert!(rho >= R::one());
        Crossing { t_in, t_out, rho }
    }

    /// Geodesic never exits (or never entered) the horoball.
    pub fn is_terminal(&self) -> bool {
        self.rho.is_infinite()
    }

    /// Horocyclic entry-to-exit length and maximal depth.
    pub fn length(&self) -> Excursion<R> {
        Excursion {
            e: R::c(2.0) * (self.rho * self.rho - R::one()).max(R::zero()).sqrt(),
            max_depth: self.rho.ln(),
        }
    }

    /// Time of the deepest point.
    #[inline]
    pub fn apex_time(&self) -> R {
        (self.t_in + self.t_out) * R::c(0.5)
    }

    /// Angular position along the normalized semicircle, decreasing in `t`.
    #[inline]
    fn theta_at(&self, t: R) -> R {
        R::c(2.0) * (-(t - self.apex_time())).exp().atan()
    }

    /// Depth below the horoball boundary at time `t` inside the window.
    pub fn depth_at(&self, t: R) -> R {
        (self.rho * self.theta_at(t).sin()).ln().max(R::zero())
    }

    /// Largest depth reached up to time `t`.
    pub fn max_depth_until(&self, t: R) -> R {
        if t >= self.apex_time() {
            self.rho.ln()
        } else {
            self.depth_at(t)
        }
    }

    /// Horocyclic distance from the entry point to the boundary projection
    /// of the geodesic point at time `t ∈ [t_in, t_out)`.
    pub fn partial_length(&self, t: R) -> Result<R, GeomError> {
        if !(t >= self.t_in && t < self.t_out) {
            return Err(GeomError::OutsideCrossing {
                t: t.to_f64().unwrap_or(f64::NAN),
                t_in: self.t_in.to_f64().unwrap_or(f64::NAN),
                t_out: self.t_out.to_f64().unwrap_or(f64::NAN),
            });
        }
        let x = self.rho * self.theta_at(t).cos();
        let x_in = -(self.rho * self.rho - R::one()).max(R::zero()).sqrt();
        Ok(x - x_in)
    }

    /// `∫ Ψ_R(γ_t) dt` over `[w0, w1] ∩ [t_in, t_out]`; `r_level = ∞` gives
    /// the untruncated integral.
    pub fn psi_window(&self, r_level: R, w0: R, w1: R) -> R {
        debug_assert!(r_level >= R::one());
        if self.rho <= R::one() {
            return R::zero();
        }
        let lo = w0.max(self.t_in);
        let hi = w1.min(self.t_out);
        if hi <= lo {
            return R::zero();
        }
        let pi = R::PI();
        // θ decreases with time.
        let th_hi = self.theta_at(lo);
        let th_lo = self.theta_at(hi);
        let overlap = |a0: R, a1: R, b0: R, b1: R| (a1.min(b1) - a0.max(b0)).max(R::zero());
        let th_min = (R::one() / self.rho).asin();
        let full = overlap(th_lo, th_hi, th_min, pi - th_min);
        let top = if r_level.is_finite() && self.rho > r_level {
            let tm = (r_level / self.rho).asin();
            overlap(th_lo, th_hi, tm, pi - tm)
        } else {
            R::zero()
        };
        R::c(2.0) / pi * self.rho * (full - top)
    }

    /// `∫ Ψ_R dt` over the whole crossing, in closed form.
    pub fn psi_integral(&self, r_level: R) -> R {
        self.psi_window(r_level, self.t_in, self.t_out)
    }
}

impl<R: Real> Geodesic<R> {
    /// Crossing of the full geodesic line through the open horoball, if any.
    ///
    /// Tangency (`ρ = 1`) counts as no crossing. When the geodesic's ideal
    /// endpoint coincides with the horoball's tangency point the crossing is
    /// terminal: `t_out = +∞` (forward endpoint) or `t_in = −∞` (backward).
    pub fn crossing(&self, h: &Horoball<R>) -> Option<Crossing<R>> {
        let (u, v) = self.endpoints();
        match h.tangency {
            BoundaryPoint::Infinity => self.crossing_infinity(h.size),
            BoundaryPoint::Finite(w) => {
                let r = h.size;
                if v == BoundaryPoint::Finite(w) {
                    let t = self.time_of(&terminal_entry(self, w, r));
                    return Some(Crossing { t_in: t, t_out: R::infinity(), rho: R::infinity() });
                }
                if u == BoundaryPoint::Finite(w) {
                    let t = self.time_of(&terminal_entry(self, w, r));
                    return Some(Crossing {
                        t_in: R::neg_infinity(),
                        t_out: t,
                        rho: R::infinity(),
                    });
                }
                // K(z) = −2r/(z−w) sends the horoball to {y ≥ 1}.
                let k = |p: BoundaryPoint<R>| match p {
                    BoundaryPoint::Infinity => R::zero(),
                    BoundaryPoint::Finite(t) => -(R::c(2.0) * r) / (t - w),
                };
                let ku = k(u);
                let kv = k(v);
                let rho = (ku - kv).abs() * R::c(0.5);
                if rho <= R::one() {
                    return None;
                }
                let center = (ku + kv) * R::c(0.5);
                let xoff = (rho * rho - R::one()).sqrt();
                let z1 = k_inverse(w, r, center - xoff);
                let z2 = k_inverse(w, r, center + xoff);
                let t1 = self.time_of(&z1);
                let t2 = self.time_of(&z2);
                Some(Crossing::new(t1.min(t2), t1.max(t2), rho))
            }
        }
    }

    fn crossing_infinity(&self, height: R) -> Option<Crossing<R>> {
        match self.shape {
            GeodesicShape::Vertical { .. } => {
                let t_cross = if self.forward.is_infinity() {
                    (height / self.base.y).ln()
                } else {
                    (self.base.y / height).ln()
                };
                Some(if self.forward.is_infinity() {
                    Crossing { t_in: t_cross, t_out: R::infinity(), rho: R::infinity() }
                } else {
                    Crossing { t_in: R::neg_infinity(), t_out: t_cross, rho: R::infinity() }
                })
            }
            GeodesicShape::Semicircle { center, radius } => {
                let rho = radius / height;
                if rho <= R::one() {
                    return None;
                }
                let xoff = (radius * radius - height * height).sqrt();
                let t1 = self.time_of(&Point::new(center - xoff, height));
                let t2 = self.time_of(&Point::new(center + xoff, height));
                Some(Crossing::new(t1.min(t2), t1.max(t2), rho))
            }
        }
    }
}

/// Preimage of `(x', 1)` under `K(z) = −2r/(z−w)`.
fn k_inverse<R: Real>(w: R, r: R, x_img: R) -> Point<R> {
    let den = x_img * x_img + R::one();
    let two_r = R::c(2.0) * r;
    Point::new(w - two_r * x_img / den, two_r / den)
}

/// Boundary entry point of a geodesic whose ideal endpoint is the horoball's
/// tangency point: the image geodesic is the vertical line over `K(other)`
/// and meets `{y = 1}` once.
fn terminal_entry<R: Real>(g: &Geodesic<R>, w: R, r: R) -> Point<R> {
    let (u, v) = g.endpoints();
    let other = if v == BoundaryPoint::Finite(w) { u } else { v };
    let k_other = match other {
        BoundaryPoint::Infinity => R::zero(),
        BoundaryPoint::Finite(t) => -(R::c(2.0) * r) / (t - w),
    };
    k_inverse(w, r, k_other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::distance;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ball_inf() -> Horoball<f64> {
        Horoball::at_infinity(1.0)
    }

    #[test]
    fn semicircle_radius_two_crosses_height_one() {
        let g = Geodesic::through(Point::new(0.0, 2.0), BoundaryPoint::Finite(2.0));
        let cr = g.crossing(&ball_inf()).expect("crossing");
        assert_abs_diff_eq!(cr.rho, 2.0, epsilon = 1e-12);
        let entry = g.point_at_time(cr.t_in);
        let exit = g.point_at_time(cr.t_out);
        assert_abs_diff_eq!(entry.y, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(exit.y, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(entry.x, -3.0f64.sqrt(), epsilon = 1e-10);
        assert_abs_diff_eq!(exit.x, 3.0f64.sqrt(), epsilon = 1e-10);
        let exc = cr.length();
        assert_abs_diff_eq!(exc.e, 2.0 * 3.0f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(exc.max_depth, 2.0f64.ln(), epsilon = 1e-12);
        // time inside is 2 arccosh ρ
        assert_abs_diff_eq!(cr.t_out - cr.t_in, 2.0 * 2.0f64.acosh(), epsilon = 1e-10);
    }

    #[test]
    fn low_apex_misses() {
        let g = Geodesic::through(Point::new(0.0, 0.5), BoundaryPoint::Finite(0.5));
        assert!(g.crossing(&ball_inf()).is_none());
    }

    #[test]
    fn vertical_ray_up_is_terminal() {
        let g = Geodesic::through(Point::new(0.0, 0.5), BoundaryPoint::Infinity);
        let cr = g.crossing(&ball_inf()).expect("terminal crossing");
        assert!(cr.is_terminal());
        assert!(cr.t_out.is_infinite());
        assert_abs_diff_eq!(cr.t_in, 2.0f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn excursion_closed_forms() {
        let cr = Crossing { t_in: 0.0, t_out: 1.0, rho: 1.0 };
        let exc = cr.length();
        assert_eq!(exc.e, 0.0);
        assert_eq!(exc.max_depth, 0.0);

        for d in [0.3f64, 1.0, 2.5] {
            let rho = d.cosh();
            let cr = Crossing { t_in: 0.0, t_out: 2.0 * rho.acosh(), rho };
            assert_abs_diff_eq!(cr.length().e, 2.0 * d.sinh(), epsilon = 1e-12);
            assert_abs_diff_eq!(cr.length().max_depth, rho.ln(), epsilon = 1e-12);
        }
    }

    #[test]
    fn partial_length_boundary_cases() {
        let rho: f64 = 2.0;
        let half = rho.acosh();
        let cr = Crossing { t_in: -half, t_out: half, rho };
        assert_abs_diff_eq!(cr.partial_length(cr.t_in).unwrap(), 0.0, epsilon = 1e-12);
        let near_exit = cr.partial_length(cr.t_out - 1e-9).unwrap();
        assert_abs_diff_eq!(near_exit, cr.length().e, epsilon = 1e-6);
        // apex: symmetry gives E/2 = √3
        assert_abs_diff_eq!(cr.partial_length(0.0).unwrap(), 3.0f64.sqrt(), epsilon = 1e-10);
        assert!(cr.partial_length(half + 0.1).is_err());
        // monotone in t
        let mut prev = -1.0;
        for i in 0..50 {
            let t = cr.t_in + (i as f64 / 50.0) * (cr.t_out - cr.t_in - 1e-9);
            let v = cr.partial_length(t).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn psi_integral_matches_quadrature() {
        let rho: f64 = 2.0;
        let half = rho.acosh();
        let cr = Crossing { t_in: -half, t_out: half, rho };
        let closed = cr.psi_integral(f64::INFINITY);
        assert_abs_diff_eq!(closed, 8.0 / 3.0, epsilon = 1e-12);

        // Simpson quadrature of (2/π)·e^{depth(t)} across the crossing.
        let n = 20_000;
        let h = (cr.t_out - cr.t_in) / n as f64;
        // inside the crossing the depth band is active, so Ψ = (2/π)·y
        let f = |t: f64| 2.0 / std::f64::consts::PI * rho * cr.theta_at(t).sin();
        let mut acc = f(cr.t_in) + f(cr.t_out);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(cr.t_in + i as f64 * h);
        }
        let quad = acc * h / 3.0;
        assert_abs_diff_eq!(closed, quad, epsilon = 1e-6);

        // truncation at the apex removes a zero-measure set
        assert_abs_diff_eq!(cr.psi_integral(2.0), 8.0 / 3.0, epsilon = 1e-12);
        // R = 1 kills everything
        assert_abs_diff_eq!(cr.psi_integral(1.0), 0.0, epsilon = 1e-15);
        // tangency contributes nothing
        let tangent = Crossing { t_in: 0.0, t_out: 1e-12, rho: 1.0 };
        assert_eq!(tangent.psi_integral(f64::INFINITY), 0.0);
    }

    #[test]
    fn psi_difference_approaches_four_over_pi() {
        // |∫Ψ − E| < 2 for all ρ and → 4/π as ρ → ∞.
        let mut rho = 1.0f64;
        while rho <= 1e6 {
            let cr = Crossing { t_in: 0.0, t_out: (2.0 * rho.acosh()).max(1e-12), rho };
            let diff = cr.length().e - cr.psi_integral(f64::INFINITY);
            assert!(diff.abs() < 2.0, "rho={rho} diff={diff}");
            rho *= 1.37;
        }
        let rho = 1e6f64;
        let cr = Crossing { t_in: 0.0, t_out: 2.0 * rho.acosh(), rho };
        let diff = cr.length().e - cr.psi_integral(f64::INFINITY);
        assert!((diff - 4.0 / std::f64::consts::PI).abs() < 0.01);
    }

    #[test]
    fn crossing_depth_matches_midpoint_probe() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let x0 = Point::new(rng.gen_range(-2.0f64..2.0), rng.gen_range(0.2..3.0));
            let r = BoundaryPoint::Finite(rng.gen_range(-4.0..4.0));
            if let BoundaryPoint::Finite(t) = r {
                if (t - x0.x).abs() < 1e-3 {
                    continue;
                }
            }
            let g = Geodesic::through(x0, r);
            let w = rng.gen_range(-4.0..4.0);
            let ball = Horoball::at(w, rng.gen_range(0.05..1.5));
            if let Some(cr) = g.crossing(&ball) {
                if cr.is_terminal() {
                    continue;
                }
                let mid = g.point_at_time(cr.apex_time());
                let probe = horoball_depth(&mid, &ball);
                assert_abs_diff_eq!(probe, cr.rho.ln(), epsilon = 1e-9);
                // entry and exit sit on the boundary
                for t in [cr.t_in, cr.t_out] {
                    let z = g.point_at_time(t);
                    assert_abs_diff_eq!(horoball_depth(&z, &ball), 0.0, epsilon = 1e-8);
                }
            }
        }
    }

    #[test]
    fn crossing_invariant_under_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let x0 = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..2.0));
            let g = Geodesic::through(x0, BoundaryPoint::Finite(rng.gen_range(2.0..5.0)));
            let ball = Horoball::at(rng.gen_range(-1.0..1.5), rng.gen_range(0.1..1.0));
            let m = Mobius::<f64>::random(&mut rng);
            let (g2, ball2) = (g.transformed(&m), ball.transformed(&m));
            match (g.crossing(&ball), g2.crossing(&ball2)) {
                (Some(a), Some(b)) => {
                    if a.is_terminal() || b.is_terminal() {
                        continue;
                    }
                    assert_abs_diff_eq!(a.length().e, b.length().e, epsilon = 1e-8);
                    assert_abs_diff_eq!(
                        a.length().max_depth,
                        b.length().max_depth,
                        epsilon = 1e-8
                    );
                    // times shift together: durations agree
                    assert_abs_diff_eq!(a.t_out - a.t_in, b.t_out - b.t_in, epsilon = 1e-8);
                }
                (None, None) => {}
                (a, b) => panic!("conjugation changed crossing existence: {a:?} vs {b:?}"),
            }
        }
    }

    #[test]
    fn horoball_transform_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let ball = Horoball::at(rng.gen_range(-2.0..2.0), rng.gen_range(0.05..2.0));
            let m = Mobius::<f64>::random(&mut rng);
            let back = ball.transformed(&m).transformed(&m.inverse());
            match (ball.tangency, back.tangency) {
                (BoundaryPoint::Finite(w1), BoundaryPoint::Finite(w2)) => {
                    assert_abs_diff_eq!(w1, w2, epsilon = 1e-9);
                    assert_abs_diff_eq!(ball.size, back.size, epsilon = 1e-9);
                }
                _ => panic!("tangency type changed in roundtrip"),
            }
        }
    }

    #[test]
    fn depth_probe_agrees_with_metric_distance_to_boundary() {
        // For {y ≥ 1}: depth of (x, y) with y > 1 equals d((x,y), (x,1)) = ln y.
        let z = Point::new(0.4, 3.0);
        assert_abs_diff_eq!(horoball_depth(&z, &Horoball::at_infinity(1.0)), 3.0f64.ln());
        let boundary = Point::new(0.4, 1.0);
        assert_abs_diff_eq!(distance(&z, &boundary), 3.0f64.ln(), epsilon = 1e-12);
    }
}
