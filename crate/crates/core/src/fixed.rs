//! Fixed-point decimal arithmetic on big integers, enough to evaluate
//! `e^k / 3^k` to a configurable number of decimal digits.

use num::bigint::BigInt;
use num::{One, Zero};

use crate::golden::Rat;

/// `mant / 10^scale`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FixedDec {
    pub mant: BigInt,
    pub scale: u32,
}

impl FixedDec {
    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mant.clone(), BigInt::from(10u32).pow(self.scale))
    }

    #[cfg(test)]
    pub fn to_f64(&self) -> f64 {
        self.to_rat().to_f64().unwrap_or(f64::NAN)
    }
}

/// `e^k / 3^k` truncated to `scale` decimals. Computed from the
/// exponential series at twelve guard decimals, every term floored, so
/// the absolute error stays below a few units in the last kept digit.
pub(crate) fn exp_over_3pow(k: u32, scale: u32) -> FixedDec {
    let work = scale + 12;
    let one = BigInt::from(10u32).pow(work);
    let kb = BigInt::from(k);
    // Exponential series with floored divisions.
    let mut sum = one.clone();
    let mut term = one;
    let mut i = BigInt::one();
    while !term.is_zero() {
        term = term * &kb / &i;
        sum += &term;
        i += 1;
    }
    // Divide by 3^k, then drop the guard digits.
    let divided = sum / BigInt::from(3u32).pow(k);
    FixedDec {
        mant: divided / BigInt::from(10u32).pow(12),
        scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values_match_floats() {
        // e^4 / 81
        let v = exp_over_3pow(4, 30).to_f64();
        assert!((v - 4f64.exp() / 81.0).abs() < 1e-12);
        // e^3 / 27
        let v = exp_over_3pow(3, 30).to_f64();
        assert!((v - 3f64.exp() / 27.0).abs() < 1e-12);
        // (e/3)^2 < 1
        let v = exp_over_3pow(2, 30).to_f64();
        assert!(v < 1.0 && v > 0.8);
    }

    #[test]
    fn digits_are_stable_under_extra_precision() {
        let a = exp_over_3pow(9, 40);
        let b = exp_over_3pow(9, 60);
        // truncating b to 40 decimals must reproduce a within 1 ulp
        let b_trunc = &b.mant / BigInt::from(10u32).pow(20);
        let diff: BigInt = &a.mant - &b_trunc;
        assert!(diff.magnitude() <= &num::BigUint::from(1u32));
    }

    #[test]
    fn ratio_shrinks_along_the_sequence() {
        // a_{n+1}/a_n = (e/3)^2 < 1
        let a4 = exp_over_3pow(9, 50).to_f64();
        let a5 = exp_over_3pow(11, 50).to_f64();
        assert!(a5 < a4);
        assert!((a5 / a4 - (1f64.exp() / 3.0).powi(2)).abs() < 1e-9);
    }
}
