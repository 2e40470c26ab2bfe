//! Exact continued-fraction engine.
//!
//! Random reals are never floats here: a stream owns a lazy dyadic bit
//! source and an exact homographic frame, and a partial quotient is emitted
//! only when the remaining bit interval fully determines it. Budgets make
//! exhaustion an explicit error instead of a silent truncation.

mod engine;
mod stream;
mod words;

pub use engine::{Budget, Extractor, DEFAULT_BUDGET};
pub use stream::{CfStream, Convergent, Endpoint, TrimmedStat};
pub use words::{
    translation_length, translation_length_big, word_decompose, word_decompose_i64, Letter,
    TranslationLength, WordDecomposition,
};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Natural logarithm of a positive big integer, accurate to ~1 ulp even far
/// beyond the `f64` range.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit window fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Default bit budget for `n` coefficients: `ceil(3.8 n) + 256`.
///
/// The Gauss-map entropy is ≈ 3.43 bits per coefficient, so this leaves
/// ~11% headroom plus a flat warm-up allowance.
pub fn default_bit_budget(n: usize) -> usize {
    (3.8 * n as f64).ceil() as usize + 256
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_bigint::BigUint;

    #[test]
    fn big_logarithm_matches_f64_in_range() {
        for v in [3u64, 1000, 123_456_789, u64::MAX] {
            let big = BigUint::from(v);
            assert_abs_diff_eq!(ln_biguint(&big), (v as f64).ln(), epsilon = 1e-12);
        }
        // 2^1000: ln = 1000 ln 2
        let big = BigUint::from(1u8) << 1000;
        assert_abs_diff_eq!(
            ln_biguint(&big),
            1000.0 * std::f64::consts::LN_2,
            epsilon = 1e-9
        );
    }
}
