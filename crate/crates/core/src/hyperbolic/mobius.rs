//! Real Möbius transformations with determinant one.

use std::ops::Mul;

use rand::Rng;

use super::{BoundaryPoint, Point};
use crate::real::Real;

/// Element of `SL(2, R)` acting on the upper half-plane by
/// `z ↦ (az + b)/(cz + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: Real> Mobius<R> {
    /// Identity map.
    pub fn identity() -> Self {
        Mobius { a: R::one(), b: R::zero(), c: R::zero(), d: R::one() }
    }

    /// Checked constructor; panics when `ad − bc` strays from one.
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        let m = Mobius { a, b, c, d };
        assert!(
            (m.det() - R::one()).abs() <= R::det_tol(),
            "determinant {} not 1 within tolerance",
            m.det()
        );
        m
    }

    /// `T^k`: horizontal translation by `k`.
    pub fn translation(k: R) -> Self {
        Mobius { a: R::one(), b: k, c: R::zero(), d: R::one() }
    }

    /// `S`: inversion `z ↦ −1/z`.
    pub fn inversion() -> Self {
        Mobius { a: R::zero(), b: -R::one(), c: R::one(), d: R::zero() }
    }

    #[inline]
    pub fn det(&self) -> R {
        self.a * self.d - self.b * self.c
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Image of an interior point; the imaginary part stays positive because
    /// the determinant is one.
    pub fn apply(&self, z: &Point<R>) -> Point<R> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let cxd = c * z.x + d;
        let axb = a * z.x + b;
        let den = cxd * cxd + c * c * z.y * z.y;
        Point::new((axb * cxd + a * c * z.y * z.y) / den, z.y / den)
    }

    /// Image of a boundary point; `∞ ↦ a/c` and the pole `−d/c ↦ ∞`.
    pub fn apply_boundary(&self, p: &BoundaryPoint<R>) -> BoundaryPoint<R> {
        match *p {
            BoundaryPoint::Infinity => {
                if self.c == R::zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(t) => {
                let den = self.c * t + self.d;
                if den == R::zero() {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * t + self.b) / den)
                }
            }
        }
    }

    /// Random element through the Iwasawa decomposition `K(φ) A(t) N(s)`,
    /// with bounded diagonal and shear so the entries stay well scaled.
    pub fn random(rng: &mut impl Rng) -> Self {
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::PI);
        let t: f64 = rng.gen_range(-1.5..1.5);
        let s: f64 = rng.gen_range(-2.0..2.0);
        let (sin, cos) = phi.sin_cos();
        let e = (t / 2.0).exp();
        // K A N multiplied out.
        let a = cos * e;
        let b = cos * e * s - sin / e;
        let c = sin * e;
        let d = sin * e * s + cos / e;
        Mobius { a: R::c(a), b: R::c(b), c: R::c(c), d: R::c(d) }
    }
}

impl<R: Real> Mul for Mobius<R> {
    type Output = Mobius<R>;

    fn mul(self, rhs: Mobius<R>) -> Mobius<R> {
        Mobius {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}
