//! Words in the generators `S`, `T` of `SL(2,Z)` and translation lengths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ln_biguint;
use crate::error::GeomError;

/// Generator alphabet: `T = [[1,1],[0,1]]`, `S = [[0,−1],[1,0]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    T,
    TInv,
    S,
    SInv,
}

impl Letter {
    pub fn matrix(self) -> [[BigInt; 2]; 2] {
        let (o, z) = (BigInt::one(), BigInt::zero());
        match self {
            Letter::T => [[o.clone(), o], [z.clone(), BigInt::one()]],
            Letter::TInv => [[o.clone(), -o], [z.clone(), BigInt::one()]],
            Letter::S => [[z.clone(), -o], [BigInt::one(), z]],
            Letter::SInv => [[z.clone(), o], [-BigInt::one(), z]],
        }
    }
}

/// Word over the generators, stored as runs of equal letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordDecomposition {
    runs: Vec<(Letter, u64)>,
}

impl WordDecomposition {
    /// Total letter count.
    pub fn len(&self) -> u64 {
        self.runs.iter().map(|&(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn runs(&self) -> &[(Letter, u64)] {
        &self.runs
    }

    /// Letters in order (use only for short words).
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.runs.iter().flat_map(|&(l, k)| std::iter::repeat(l).take(k as usize))
    }

    fn push_run(&mut self, letter: Letter, count: u64) {
        if count > 0 {
            self.runs.push((letter, count));
        }
    }

    fn push_t_power(&mut self, k: &BigInt) -> Result<(), GeomError> {
        if k.is_zero() {
            return Ok(());
        }
        let count = k.magnitude().to_u64().ok_or(GeomError::WordOverflow)?;
        self.push_run(if k.is_positive() { Letter::T } else { Letter::TInv }, count);
        Ok(())
    }

    /// Exact integer product of the word's letters.
    pub fn evaluate(&self) -> [[BigInt; 2]; 2] {
        let mut m = [
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ];
        for &(letter, count) in &self.runs {
            let step = match letter {
                // T^k and T^{-k} in closed form
                Letter::T => {
                    [[BigInt::one(), BigInt::from(count)], [BigInt::zero(), BigInt::one()]]
                }
                Letter::TInv => {
                    [[BigInt::one(), -BigInt::from(count)], [BigInt::zero(), BigInt::one()]]
                }
                s_like => {
                    let mut acc = [
                        [BigInt::one(), BigInt::zero()],
                        [BigInt::zero(), BigInt::one()],
                    ];
                    for _ in 0..count {
                        acc = mat_mul(&acc, &s_like.matrix());
                    }
                    acc
                }
            };
            m = mat_mul(&m, &step);
        }
        m
    }
}

fn mat_mul(x: &[[BigInt; 2]; 2], y: &[[BigInt; 2]; 2]) -> [[BigInt; 2]; 2] {
    [
        [
            &x[0][0] * &y[0][0] + &x[0][1] * &y[1][0],
            &x[0][0] * &y[0][1] + &x[0][1] * &y[1][1],
        ],
        [
            &x[1][0] * &y[0][0] + &x[1][1] * &y[1][0],
            &x[1][0] * &y[0][1] + &x[1][1] * &y[1][1],
        ],
    ]
}

fn det(m: &[[BigInt; 2]; 2]) -> BigInt {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

/// `T^a S`-factorization of an integer matrix with determinant one, driven
/// by the continued fraction of the column ratio. The letters re-multiply
/// to the input exactly; the length is comparable to the coefficient sum.
pub fn word_decompose(m: &[[BigInt; 2]; 2]) -> Result<WordDecomposition, GeomError> {
    if !det(m).is_one() {
        return Err(GeomError::NotUnimodular);
    }
    let mut a = m[0][0].clone();
    let mut b = m[0][1].clone();
    let mut c = m[1][0].clone();
    let mut d = m[1][1].clone();
    let mut word = WordDecomposition { runs: Vec::new() };
    while !c.is_zero() {
        // nearest-integer quotient keeps |a − kc| ≤ |c|/2
        let two = BigInt::from(2);
        let k = (&a * &two + &c).div_floor(&(&c * &two));
        word.push_t_power(&k)?;
        a -= &k * &c;
        b -= &k * &d;
        word.push_run(Letter::S, 1);
        // strip S: M ← S^{-1} M = [[c, d], [−a, −b]]
        std::mem::swap(&mut a, &mut c);
        std::mem::swap(&mut b, &mut d);
        c = -c;
        d = -d;
    }
    // now M = ± T^{±b}
    if a.is_one() {
        word.push_t_power(&b)?;
    } else {
        word.push_run(Letter::S, 2);
        word.push_t_power(&(-b))?;
    }
    Ok(word)
}

/// Convenience wrapper for machine-word matrices.
pub fn word_decompose_i64(m: [[i64; 2]; 2]) -> Result<WordDecomposition, GeomError> {
    let mb = m.map(|row| row.map(BigInt::from));
    word_decompose(&mb)
}

/// Exact and logarithmic translation lengths of a hyperbolic element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslationLength {
    /// `2·arccosh(|tr|/2)`.
    pub exact: f64,
    /// `2·ln|tr|`; exceeds `exact` by at most `2 ln 2`.
    pub approx: f64,
}

/// Translation length from the trace; errors for `|tr| ≤ 2`.
pub fn translation_length(trace: f64) -> Result<TranslationLength, GeomError> {
    let t = trace.abs();
    if t <= 2.0 {
        return Err(GeomError::NotHyperbolic { trace });
    }
    Ok(TranslationLength { exact: 2.0 * (t / 2.0).acosh(), approx: 2.0 * t.ln() })
}

/// Translation length for arbitrary-precision traces.
pub fn translation_length_big(trace: &BigInt) -> Result<TranslationLength, GeomError> {
    let mag = trace.magnitude();
    if *mag <= 2u32.into() {
        return Err(GeomError::NotHyperbolic { trace: trace.to_f64().unwrap_or(f64::NAN) });
    }
    let ln_t = ln_biguint(mag);
    let t2 = mag.to_f64().unwrap_or(f64::INFINITY);
    let correction = ((1.0 + (1.0 - 4.0 / (t2 * t2)).sqrt()) / 2.0).ln();
    Ok(TranslationLength { exact: 2.0 * (ln_t + correction), approx: 2.0 * ln_t })
}
