//! Continued-fraction streams with exact convergents and statistics.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::engine::{Budget, Extractor, DEFAULT_BUDGET};
use super::ln_biguint;
use crate::error::CfError;
use crate::rng::BitFeed;

/// Sentinel marking a digit that spilled into the big-digit side table.
const BIG_SENTINEL: u64 = u64::MAX;

/// One convergent `p_n / q_n` (`n ≥ 1`, `p_1/q_1 = 1/a_1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
    pub n: usize,
}

/// Trimmed-sum statistic of the first `n` partial quotients.
#[derive(Debug, Clone, PartialEq)]
pub struct TrimmedStat {
    pub n: usize,
    pub sum: BigUint,
    pub a_max: BigUint,
    /// `sum − a_max`, the largest term removed once (first occurrence).
    pub trimmed: BigUint,
    /// `(sum − a_max) / (n ln n)`.
    pub ratio: f64,
}

#[derive(Debug, Clone)]
enum StreamState {
    /// Finite expansion of a rational; no further digits exist.
    Finite,
    /// Digits extracted from a dyadic bit source.
    Bits(Extractor),
    /// Digits of `M(inner)` for an integer Möbius map `M`.
    Mobius { frame: Extractor, inner: Box<CfStream>, cursor: usize },
}

/// Lazily extensible continued-fraction stream `[a_1, a_2, …]` of a real in
/// `(0,1)`, with cached exact convergents and stable float side channels
/// (`ln q_n` and `q_{n+1}/q_n`) for the geometric layer.
#[derive(Debug, Clone)]
pub struct CfStream {
    digits: Vec<u64>,
    big: BTreeMap<usize, BigUint>,
    state: StreamState,
    // Exact convergents: p[i], q[i] hold p_{i+1}, q_{i+1}.
    p: Vec<BigInt>,
    q: Vec<BigInt>,
    // ratio[i] = q_{i+1}/q_i  (i ≥ 0, q_0 = 1).
    ratio: Vec<f64>,
    // ln_q[i] = ln q_i, compensated snapshots of the running sum below.
    ln_q: Vec<f64>,
    lnq_sum: f64,
    lnq_comp: f64,
}

impl CfStream {
    fn empty(state: StreamState) -> Self {
        CfStream {
            digits: Vec::new(),
            big: BTreeMap::new(),
            state,
            p: Vec::new(),
            q: Vec::new(),
            ratio: Vec::new(),
            ln_q: vec![0.0],
            lnq_sum: 0.0,
            lnq_comp: 0.0,
        }
    }

    /// Finite stream with prescribed coefficients, canonical or not.
    /// Intended for periodic/constructed expansions and tests.
    pub fn from_digits(digits: &[u64]) -> Self {
        let mut s = CfStream::empty(StreamState::Finite);
        for &d in digits {
            assert!(d >= 1, "coefficients must be positive");
            s.push_digit(BigUint::from(d));
        }
        s
    }

    /// Canonical finite expansion of a rational `num/den ∈ (0,1)` by
    /// Euclid's algorithm; the last coefficient is ≥ 2 when the expansion
    /// has more than one term.
    pub fn from_rational(num: &BigInt, den: &BigInt) -> Result<Self, CfError> {
        if den.is_zero() {
            return Err(CfError::ZeroDenominator);
        }
        let mut num = num.clone();
        let mut den = den.clone();
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num <= BigInt::zero() || num >= den {
            return Err(CfError::OutOfRange(format!("{num}/{den}")));
        }
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
        let mut stream = CfStream::empty(StreamState::Finite);
        // digits of den/num: a = floor(den/num), remainder swap.
        let (mut hi, mut lo) = (den, num);
        while !lo.is_zero() {
            let (a, r) = hi.div_rem(&lo);
            stream.push_digit(a.to_biguint().expect("positive quotient"));
            hi = lo;
            lo = r;
        }
        Ok(stream)
    }

    /// Stream of a uniform dyadic random real in `(0,1)`.
    pub fn from_feed(feed: BitFeed, budget: Budget) -> Self {
        CfStream::empty(StreamState::Bits(Extractor::unit_from_bits(feed, budget)))
    }

    /// Seeded stream with the default auto budget.
    pub fn from_seed(seed: u64) -> Self {
        Self::from_feed(BitFeed::from_seed(seed), DEFAULT_BUDGET)
    }

    /// The first `n` coefficients of a seeded uniform real under an explicit
    /// bit budget, extracted eagerly.
    pub fn sample(seed: u64, n: usize, budget_bits: usize) -> Result<Self, CfError> {
        let mut s = Self::from_feed(BitFeed::from_seed(seed), Budget::Fixed(budget_bits));
        s.ensure(n)?;
        Ok(s)
    }

    /// Stream of `v + 2^{-s}·ξ` for an exact dyadic `v ∈ [0,1)` and a fresh
    /// uniform tail `ξ`; `s` sits 12 bits below the precision of `v`, so the
    /// value law is a negligible mollification of the input's.
    pub fn from_f64_with_tail(v: f64, feed: BitFeed) -> Self {
        assert!((0.0..1.0).contains(&v), "fractional part expected, got {v}");
        let r = BigRational::from_float(v).expect("finite float");
        let den = r.denom().clone(); // power of two
        let base = r.numer().clone();
        let ex = Extractor::dyadic_with_tail(base, den, 12, feed, DEFAULT_BUDGET);
        CfStream::empty(StreamState::Bits(ex))
    }

    /// Digits of `(m00·η + m01)/(m10·η + m11)` for the value `η` of `inner`.
    /// Returns the integer part together with the fractional stream.
    pub fn mobius_of(inner: CfStream, m: [[BigInt; 2]; 2]) -> Result<(BigInt, CfStream), CfError> {
        let mut stream = CfStream::empty(StreamState::Mobius {
            frame: Extractor::mobius_of_stream(m),
            inner: Box::new(inner),
            cursor: 0,
        });
        let int_part = stream.pull_raw()?;
        Ok((int_part, stream))
    }

    fn push_digit(&mut self, d: BigUint) {
        debug_assert!(!d.is_zero() || self.digits.is_empty());
        match d.to_u64() {
            Some(v) if v != BIG_SENTINEL => self.digits.push(v),
            _ => {
                self.big.insert(self.digits.len(), d);
                self.digits.push(BIG_SENTINEL);
            }
        }
    }

    /// Extract one more raw emission from the underlying engine.
    fn pull_raw(&mut self) -> Result<BigInt, CfError> {
        match &mut self.state {
            StreamState::Finite => Err(CfError::InsufficientCoefficients {
                have: self.digits.len(),
                need: self.digits.len() + 1,
            }),
            StreamState::Bits(ex) => Ok(ex.next_digit()?.expect("bit source always refines")),
            StreamState::Mobius { frame, inner, cursor } => loop {
                if let Some(d) = frame.next_digit()? {
                    return Ok(d);
                }
                inner.ensure(*cursor + 1)?;
                frame.push_digit(&inner.digit_big(*cursor + 1));
                *cursor += 1;
            },
        }
    }

    /// Make at least `n` coefficients available.
    pub fn ensure(&mut self, n: usize) -> Result<(), CfError> {
        while self.digits.len() < n {
            let d = self.pull_raw()?;
            debug_assert!(d.is_positive(), "fractional digits must be positive");
            self.push_digit(d.to_biguint().expect("positive digit"));
        }
        Ok(())
    }

    /// Coefficients currently available.
    pub fn available(&self) -> usize {
        self.digits.len()
    }

    /// Whether the source is a finite (rational) expansion.
    pub fn is_finite(&self) -> bool {
        matches!(self.state, StreamState::Finite)
    }

    /// Bits consumed so far by a dyadic source (0 otherwise).
    pub fn bits_consumed(&self) -> usize {
        match &self.state {
            StreamState::Bits(ex) => ex.bits_consumed(),
            StreamState::Mobius { inner, .. } => inner.bits_consumed(),
            StreamState::Finite => 0,
        }
    }

    /// `a_n` (1-based); the caller must have ensured availability.
    pub fn digit_big(&self, n: usize) -> BigUint {
        let raw = self.digits[n - 1];
        if raw == BIG_SENTINEL {
            self.big.get(&(n - 1)).cloned().unwrap_or_else(|| BigUint::from(raw))
        } else {
            BigUint::from(raw)
        }
    }

    /// `a_n` as `f64` (saturating for outlandish digits).
    pub fn digit_f64(&self, n: usize) -> f64 {
        let raw = self.digits[n - 1];
        if raw == BIG_SENTINEL {
            self.digit_big(n).to_f64().unwrap_or(f64::INFINITY)
        } else {
            raw as f64
        }
    }

    fn extend_convergents(&mut self, n: usize) -> Result<(), CfError> {
        self.ensure(n)?;
        while self.p.len() < n {
            let i = self.p.len(); // building p_{i+1}
            let a = BigInt::from(self.digit_big(i + 1));
            let (pm2, pm1) = match i {
                0 => (BigInt::one(), BigInt::zero()),
                1 => (BigInt::zero(), self.p[0].clone()),
                _ => (self.p[i - 2].clone(), self.p[i - 1].clone()),
            };
            let (qm2, qm1) = match i {
                0 => (BigInt::zero(), BigInt::one()),
                1 => (BigInt::one(), self.q[0].clone()),
                _ => (self.q[i - 2].clone(), self.q[i - 1].clone()),
            };
            self.p.push(&a * &pm1 + &pm2);
            self.q.push(&a * &qm1 + &qm2);
        }
        Ok(())
    }

    /// Exact convergent `p_n/q_n`; `n = 0` gives the formal seed `0/1`.
    pub fn convergent(&mut self, n: usize) -> Result<Convergent, CfError> {
        if n == 0 {
            return Ok(Convergent { p: BigInt::zero(), q: BigInt::one(), n: 0 });
        }
        self.extend_convergents(n)?;
        Ok(Convergent { p: self.p[n - 1].clone(), q: self.q[n - 1].clone(), n })
    }

    /// All convergents up to index `n`.
    pub fn convergents(&mut self, n: usize) -> Result<Vec<Convergent>, CfError> {
        self.extend_convergents(n)?;
        Ok((1..=n)
            .map(|i| Convergent { p: self.p[i - 1].clone(), q: self.q[i - 1].clone(), n: i })
            .collect())
    }

    /// Exact value of the `n`-th convergent.
    pub fn value(&mut self, n: usize) -> Result<BigRational, CfError> {
        if n == 0 {
            return Err(CfError::IndexTooSmall { n: 0, min: 1 });
        }
        let c = self.convergent(n)?;
        Ok(BigRational::new_raw(c.p, c.q))
    }

    /// Float value from the first `min(n, available-after-ensure)` digits,
    /// evaluated backward (numerically stable).
    pub fn value_f64(&mut self, n: usize) -> Result<f64, CfError> {
        let n = if self.is_finite() { n.min(self.available().max(1)) } else { n };
        self.ensure(n)?;
        Ok(self.tail_value(1, n))
    }

    /// `[0; a_start, a_start+1, …]` evaluated backward over up to `terms`
    /// already-available digits.
    pub fn tail_value(&self, start: usize, terms: usize) -> f64 {
        let stop = (start + terms - 1).min(self.available());
        let mut v = 0.0;
        let mut i = stop;
        while i >= start {
            v = 1.0 / (self.digit_f64(i) + v);
            i -= 1;
        }
        v
    }

    /// `q_{n+1}/q_n` through the backward-stable float recursion.
    pub fn q_ratio(&mut self, n: usize) -> Result<f64, CfError> {
        self.ensure(n + 1)?;
        while self.ratio.len() <= n {
            let i = self.ratio.len();
            let a = self.digit_f64(i + 1);
            let r = if i == 0 { a } else { a + 1.0 / self.ratio[i - 1] };
            self.ratio.push(r);
            // extend ln q alongside: ln q_{i+1} = ln q_i + ln ratio_i,
            // Neumaier-compensated running sum
            let inc = r.ln();
            let t = self.lnq_sum + inc;
            self.lnq_comp += if self.lnq_sum.abs() >= inc.abs() {
                (self.lnq_sum - t) + inc
            } else {
                (inc - t) + self.lnq_sum
            };
            self.lnq_sum = t;
            self.ln_q.push(self.lnq_sum + self.lnq_comp);
        }
        Ok(self.ratio[n])
    }

    /// `ln q_n` via the compensated float accumulator (`n ≥ 0`).
    pub fn ln_q_float(&mut self, n: usize) -> Result<f64, CfError> {
        if n == 0 {
            return Ok(0.0);
        }
        self.q_ratio(n - 1)?;
        Ok(self.ln_q[n])
    }

    /// `(ln q_n)/n` with `q_n` exact.
    pub fn levy_ratio(&mut self, n: usize) -> Result<f64, CfError> {
        if n == 0 {
            return Err(CfError::IndexTooSmall { n: 0, min: 1 });
        }
        self.extend_convergents(n)?;
        let q = self.q[n - 1].magnitude();
        Ok(ln_biguint(q) / n as f64)
    }

    /// Trimmed-sum statistic over the first `n ≥ 2` coefficients.
    pub fn trimmed_sum(&mut self, n: usize) -> Result<TrimmedStat, CfError> {
        if n < 2 {
            return Err(CfError::IndexTooSmall { n, min: 2 });
        }
        self.ensure(n)?;
        let mut sum = BigUint::zero();
        let mut a_max = BigUint::zero();
        for i in 1..=n {
            let d = self.digit_big(i);
            if d > a_max {
                a_max = d.clone();
            }
            sum += d;
        }
        let trimmed = &sum - &a_max;
        let ratio = trimmed.to_f64().unwrap_or(f64::INFINITY) / (n as f64 * (n as f64).ln());
        Ok(TrimmedStat { n, sum, a_max, trimmed, ratio })
    }

    /// `#{i ≤ n : a_i ≥ φ(i)}`.
    pub fn threshold_census<F: Fn(usize) -> f64>(
        &mut self,
        n: usize,
        phi: F,
    ) -> Result<usize, CfError> {
        self.ensure(n)?;
        let mut count = 0;
        for i in 1..=n {
            let t = phi(i);
            let hit = if t <= 1.0 {
                true
            } else {
                match BigUint::from_f64(t.ceil()) {
                    Some(bound) => self.digit_big(i) >= bound,
                    None => false, // φ(i) = ∞ or NaN
                }
            };
            if hit {
                count += 1;
            }
        }
        Ok(count)
    }

    /// `2×2` integer matrix with columns built from consecutive convergents,
    /// transposed if needed so the determinant is `+1`.
    pub fn convergent_matrix(&mut self, n: usize) -> Result<[[BigInt; 2]; 2], CfError> {
        if n == 0 {
            return Err(CfError::IndexTooSmall { n: 0, min: 1 });
        }
        let cn = self.convergent(n)?;
        let cm = self.convergent(n - 1)?;
        // det [p_n p_{n−1}; q_n q_{n−1}] = p_n q_{n−1} − p_{n−1} q_n = (−1)^{n−1}
        if n % 2 == 1 {
            Ok([[cn.p, cm.p], [cn.q, cm.q]])
        } else {
            Ok([[cm.p, cn.p], [cm.q, cn.q]])
        }
    }
}

/// Real endpoint carried as integer part plus a fractional stream.
#[derive(Debug, Clone)]
pub struct Endpoint {
    pub int_part: i64,
    pub frac: CfStream,
}

impl Endpoint {
    pub fn from_unit(frac: CfStream) -> Self {
        Endpoint { int_part: 0, frac }
    }

    /// Float approximation from up to `digits` coefficients.
    pub fn value_f64(&mut self, digits: usize) -> Result<f64, CfError> {
        Ok(self.int_part as f64 + self.frac.value_f64(digits)?)
    }

    /// Image endpoint under an integer unimodular map.
    pub fn transformed(self, m: [[i64; 2]; 2]) -> Result<Endpoint, CfError> {
        let [[a, b], [c, d]] = m.map(|row| row.map(BigInt::from));
        let k = BigInt::from(self.int_part);
        // M · T^{int_part}
        let composed = [[a.clone(), &a * &k + &b], [c.clone(), &c * &k + &d]];
        let (int_part, frac) = CfStream::mobius_of(self.frac, composed)?;
        Ok(Endpoint {
            int_part: int_part.to_i64().expect("integer part fits i64"),
            frac,
        })
    }
}
