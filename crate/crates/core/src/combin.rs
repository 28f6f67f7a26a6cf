//! Exact and log-domain factorials and binomial coefficients.

use num_bigint::BigInt;
use num_traits::One;

use crate::logsign::LogSign;

/// `ln(n!)` by direct summation. Exact enough for the tolerances used here
/// (relative error a few ulps times `n`), and the arguments never exceed a
/// few hundred.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Table of `ln(k!)` for `k = 0..=n`.
pub fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    table.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

pub fn ln_binomial(n: usize, k: usize) -> f64 {
    assert!(k <= n, "binomial index out of range: k={k} > n={n}");
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

pub fn factorial_big(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// `n! / (n-r)!` exactly.
pub fn falling_factorial_big(n: usize, r: usize) -> BigInt {
    assert!(r <= n, "falling factorial out of range: r={r} > n={n}");
    let mut acc = BigInt::one();
    for k in (n - r + 1)..=n {
        acc *= k;
    }
    acc
}

pub fn binomial_big(n: usize, k: usize) -> BigInt {
    assert!(k <= n, "binomial index out of range: k={k} > n={n}");
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sign and log-magnitude of an arbitrary-precision integer. Values beyond
/// `f64` range are handled from the top bits, so this never saturates.
pub fn logsign_from_bigint(x: &BigInt) -> LogSign {
    use num_bigint::Sign;
    use num_traits::ToPrimitive;
    let (sign, mag) = match x.sign() {
        Sign::NoSign => return LogSign::ZERO,
        Sign::Plus => (1i8, x.magnitude().clone()),
        Sign::Minus => (-1i8, x.magnitude().clone()),
    };
    let bits = mag.bits();
    if bits <= 53 {
        return LogSign::new(sign, mag.to_f64().unwrap().ln());
    }
    // Keep the top 53 bits as mantissa, track the shifted-out exponent.
    let shift = bits - 53;
    let top = (mag >> shift).to_f64().unwrap();
    LogSign::new(sign, top.ln() + shift as f64 * std::f64::consts::LN_2)
}
