//! Exact rational arithmetic helpers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used for all probabilities and weights.
pub type Ratio = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Ratio {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// `n` as an exact rational.
pub fn int(n: i64) -> Ratio {
    Ratio::from_integer(BigInt::from(n))
}

pub fn zero() -> Ratio {
    Ratio::zero()
}

pub fn one() -> Ratio {
    Ratio::one()
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient `C(n, k)` as a big integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Integer power of a rational with nonnegative exponent.
pub fn pow(base: &Ratio, exp: u64) -> Ratio {
    let mut acc = one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Strictly positive test (used by file validation without a `num` import).
pub fn is_positive(r: &Ratio) -> bool {
    r.is_positive()
}

/// Lossy conversion to `f64` for spectral comparisons.
pub fn to_f64(r: &Ratio) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a division of truncated parts for extreme ratios.
        let n = r.numer().to_f64().unwrap_or(if r.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Canonical `"p/q"` rendering (`q` omitted when 1, gcd 1, `q > 0`).
pub fn format(r: &Ratio) -> String {
    r.to_string()
}

/// Parses `"p/q"` or a plain integer string; rejects zero denominators.
pub fn parse(s: &str) -> Option<Ratio> {
    let s = s.trim();
    match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().ok()?;
            let d: BigInt = den.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Ratio::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Ratio::from_integer(n))
        }
    }
}
