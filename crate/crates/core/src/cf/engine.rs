//! Lazy extraction of regular continued-fraction digits.
//!
//! The extractor holds a homographic frame `x = (aξ + b)/(cξ + d)` over an
//! undetermined remainder `ξ ∈ [0,1]` and refines it from one of two
//! sources: random (or fixed) dyadic bits of a uniform real, or the
//! continued-fraction digits of another stream being pushed through an
//! integer Möbius map. A digit is emitted only once the whole remainder
//! interval agrees on it, so the output is exact.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::CfError;
use crate::rng::BitFeed;

/// Bit-budget policy guarding against silent truncation.
#[derive(Debug, Clone, Copy)]
pub enum Budget {
    /// Hard cap on consumed bits.
    Fixed(usize),
    /// Scales with emitted digits: `ceil(rate · n) + base`. The expected
    /// consumption is the Gauss-map entropy, ≈ 3.43 bits per digit.
    Auto { rate: f64, base: usize },
}

/// Default auto budget: entropy ≈ 3.43 bits/digit plus headroom.
pub const DEFAULT_BUDGET: Budget = Budget::Auto { rate: 3.8, base: 256 };

impl Budget {
    fn allowance(&self, digits_done: usize) -> usize {
        match *self {
            Budget::Fixed(n) => n,
            Budget::Auto { rate, base } => (rate * (digits_done + 1) as f64).ceil() as usize + base,
        }
    }
}

/// Digit source feeding the frame.
#[derive(Debug, Clone)]
pub enum Source {
    /// Uniform dyadic real refined bit by bit.
    Bits { feed: BitFeed, budget: Budget, consumed: usize },
    /// Digits of an inner stream (for Möbius images of streams). The inner
    /// digits are supplied by the owner through `Extractor::push_digit`.
    Digits,
}

/// Homographic frame with exact integer entries.
#[derive(Debug, Clone)]
pub struct Extractor {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
    pub source: Source,
    emitted: usize,
}

impl Extractor {
    /// Frame for the digits of `1/ξ` with `ξ` uniform dyadic in (0,1):
    /// the regular continued fraction of a random real in the unit interval.
    pub fn unit_from_bits(feed: BitFeed, budget: Budget) -> Self {
        Extractor {
            a: BigInt::zero(),
            b: BigInt::one(),
            c: BigInt::one(),
            d: BigInt::zero(),
            source: Source::Bits { feed, budget, consumed: 0 },
            emitted: 0,
        }
    }

    /// Frame for the digits of `(base_num + scale_num·ξ / 2^scale_log2) / den`
    /// — used to attach a fresh dyadic tail below a fixed dyadic prefix.
    ///
    /// Value represented: `(base_num + ξ·2^(-scale_log2)) / den` for
    /// `ξ ∈ (0,1)`; caller guarantees the value lies in `(0,1)`.
    pub fn dyadic_with_tail(base_num: BigInt, den: BigInt, scale_log2: usize, feed: BitFeed, budget: Budget) -> Self {
        // x = (ξ + base_num·2^s) / (den·2^s), then invert for unit-interval digits.
        let two_s = BigInt::one() << scale_log2;
        Extractor {
            a: BigInt::zero(),
            b: &den * &two_s,
            c: BigInt::one(),
            d: base_num * &two_s,
            source: Source::Bits { feed, budget, consumed: 0 },
            emitted: 0,
        }
    }

    /// Frame for `M(η) = (a·η + b)/(c·η + d)` where `η ∈ (0,1)` is an inner
    /// stream consumed digit by digit.
    pub fn mobius_of_stream(m: [[BigInt; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        Extractor { a, b, c, d, source: Source::Digits, emitted: 0 }
    }

    pub fn bits_consumed(&self) -> usize {
        match &self.source {
            Source::Bits { consumed, .. } => *consumed,
            Source::Digits => 0,
        }
    }

    /// Emitted digit count so far.
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Whether the frame can already decide the next digit without input.
    fn determined(&self) -> Option<BigInt> {
        // Denominator signs at ξ = 0 and ξ = 1 must agree (no pole inside).
        let d0 = &self.d;
        let d1 = &self.c + &self.d;
        if d0.is_zero() || d1.is_zero() || (d0.is_negative() != d1.is_negative()) {
            return None;
        }
        let f0 = self.b.div_floor(d0);
        let f1 = (&self.a + &self.b).div_floor(&d1);
        if f0 == f1 {
            Some(f0)
        } else {
            None
        }
    }

    /// Fold a dyadic bit into the frame: ξ ← (bit + ξ')/2.
    fn refine_bit(&mut self, bit: bool) {
        if bit {
            self.b = &self.a + (&self.b << 1);
            self.d = &self.c + (&self.d << 1);
        } else {
            self.b = &self.b << 1;
            self.d = &self.d << 1;
        }
        self.normalize();
    }

    /// Fold an inner continued-fraction digit into the frame:
    /// η ← 1/(e + η').
    pub fn push_digit(&mut self, e: &BigUint) {
        let e = BigInt::from(e.clone());
        let new_b = &self.a + &self.b * &e;
        let new_d = &self.c + &self.d * &e;
        self.a = std::mem::replace(&mut self.b, new_b);
        self.c = std::mem::replace(&mut self.d, new_d);
    }

    /// Strip common powers of two to keep entries small.
    fn normalize(&mut self) {
        let tz = [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .filter(|v| !v.is_zero())
            .map(|v| v.trailing_zeros().unwrap_or(0))
            .min()
            .unwrap_or(0);
        if tz > 0 {
            self.a = &self.a >> tz;
            self.b = &self.b >> tz;
            self.c = &self.c >> tz;
            self.d = &self.d >> tz;
        }
    }

    /// Shift the frame past an emitted digit: x ← 1/(x − k).
    fn shift(&mut self, k: &BigInt) {
        let na = std::mem::take(&mut self.c);
        let nb = std::mem::take(&mut self.d);
        let nc = &self.a - &na * k;
        let nd = &self.b - &nb * k;
        self.a = na;
        self.b = nb;
        self.c = nc;
        self.d = nd;
    }

    /// Extract the next digit, consuming bits as needed. For a `Digits`
    /// source, returns `Ok(None)` when more inner digits are required.
    pub fn next_digit(&mut self) -> Result<Option<BigInt>, CfError> {
        loop {
            if let Some(k) = self.determined() {
                self.shift(&k);
                self.emitted += 1;
                return Ok(Some(k));
            }
            match &mut self.source {
                Source::Bits { feed, budget, consumed } => {
                    let allowance = budget.allowance(self.emitted);
                    if *consumed >= allowance {
                        return Err(CfError::BitBudget {
                            produced: self.emitted,
                            consumed: *consumed,
                            budget: allowance,
                        });
                    }
                    match feed.next_bit() {
                        Some(bit) => {
                            *consumed += 1;
                            self.refine_bit(bit);
                        }
                        None => {
                            return Err(CfError::BitBudget {
                                produced: self.emitted,
                                consumed: *consumed,
                                budget: *consumed,
                            })
                        }
                    }
                }
                Source::Digits => return Ok(None),
            }
        }
    }

    /// Current value interval midpoint as `f64` (diagnostics only).
    pub fn approx_value(&self) -> f64 {
        let at = |num: &BigInt, den: &BigInt| num.to_f64().unwrap_or(0.0) / den.to_f64().unwrap_or(1.0);
        let v0 = at(&self.b, &self.d);
        let v1 = at(&(&self.a + &self.b), &(&self.c + &self.d));
        0.5 * (v0 + v1)
    }
}
