//! Log-domain scalars for quantities far outside the dynamic range of `f64`.
//!
//! Coefficients like `(N!)^(M+1)` overflow doubles already at modest `(N, M)`,
//! so every evaluation path in this crate carries numbers as
//! (sign, log of absolute value) — [`LogSign`] for reals, [`LogComplex`] for
//! complex values — and sums them with max-term scaling plus compensated
//! summation.

use num_complex::Complex64;

/// A real value stored as a sign in `{-1, 0, +1}` and the natural log of its
/// absolute value. Zero is canonically `(0, -inf)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogSign {
    sign: i8,
    log_abs: f64,
}

impl LogSign {
    pub const ZERO: LogSign = LogSign {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };

    pub const ONE: LogSign = LogSign {
        sign: 1,
        log_abs: 0.0,
    };

    /// Build from an explicit sign and log-magnitude. A zero sign forces the
    /// canonical zero representation.
    pub fn new(sign: i8, log_abs: f64) -> Self {
        debug_assert!((-1..=1).contains(&sign));
        if sign == 0 {
            Self::ZERO
        } else {
            Self { sign, log_abs }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if x > 0.0 { 1 } else { -1 },
                log_abs: x.abs().ln(),
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Convert back to `f64` if the magnitude fits; `None` on over/underflow
    /// to infinity (underflow to subnormal zero is reported as `None` too,
    /// so a caller never confuses a tiny value with an exact zero).
    pub fn to_f64(&self) -> Option<f64> {
        if self.sign == 0 {
            return Some(0.0);
        }
        let mag = self.log_abs.exp();
        if mag.is_finite() && mag != 0.0 {
            Some(self.sign as f64 * mag)
        } else {
            None
        }
    }

    pub fn neg(self) -> Self {
        Self::new(-self.sign, self.log_abs)
    }

    pub fn mul(self, other: Self) -> Self {
        Self::new(self.sign * other.sign, self.log_abs + other.log_abs)
    }

    /// Multiply by `e^t` (a pure log-domain rescale).
    pub fn scale_ln(self, t: f64) -> Self {
        Self::new(self.sign, self.log_abs + t)
    }

    /// Compare absolute values.
    pub fn abs_gt(&self, other: &Self) -> bool {
        self.log_abs > other.log_abs
    }
}

/// A complex value stored as log-magnitude and phase:
/// `value = exp(log_abs) * exp(i * phase)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogComplex {
    log_abs: f64,
    phase: f64,
}

impl LogComplex {
    pub const ZERO: LogComplex = LogComplex {
        log_abs: f64::NEG_INFINITY,
        phase: 0.0,
    };

    pub fn new(log_abs: f64, phase: f64) -> Self {
        Self { log_abs, phase }
    }

    pub fn from_complex(z: Complex64) -> Self {
        if z == Complex64::new(0.0, 0.0) {
            Self::ZERO
        } else {
            Self {
                log_abs: z.norm().ln(),
                phase: z.arg(),
            }
        }
    }

    pub fn from_logsign(x: LogSign) -> Self {
        match x.sign() {
            0 => Self::ZERO,
            1 => Self::new(x.log_abs(), 0.0),
            _ => Self::new(x.log_abs(), std::f64::consts::PI),
        }
    }

    pub fn log_abs(&self) -> f64 {
        self.log_abs
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_zero(&self) -> bool {
        self.log_abs == f64::NEG_INFINITY
    }

    /// Unit-modulus complex number carrying the phase.
    pub fn unit(&self) -> Complex64 {
        Complex64::new(self.phase.cos(), self.phase.sin())
    }

    pub fn to_complex(&self) -> Option<Complex64> {
        if self.is_zero() {
            return Some(Complex64::new(0.0, 0.0));
        }
        let mag = self.log_abs.exp();
        if mag.is_finite() && mag != 0.0 {
            Some(mag * self.unit())
        } else {
            None
        }
    }

    pub fn mul(self, other: Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_abs + other.log_abs, self.phase + other.phase)
    }

    pub fn scale_ln(self, t: f64) -> Self {
        if self.is_zero() {
            return self;
        }
        Self::new(self.log_abs + t, self.phase)
    }
}

/// Neumaier-compensated sum. The running compensation also captures the case
/// where the addend dominates the partial sum.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Sum of log-domain reals: the maximum log-magnitude is factored out, the
/// remaining terms are summed in `f64` with compensation, and the result is
/// returned in log-domain form. Exact cancellation yields [`LogSign::ZERO`].
pub fn logsign_sum(terms: &[LogSign]) -> LogSign {
    let max_log = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| t.log_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    if max_log == f64::NEG_INFINITY {
        return LogSign::ZERO;
    }
    let scaled = neumaier_sum(
        terms
            .iter()
            .filter(|t| !t.is_zero())
            .map(|t| t.sign() as f64 * (t.log_abs() - max_log).exp()),
    );
    if scaled == 0.0 {
        LogSign::ZERO
    } else {
        LogSign::new(if scaled > 0.0 { 1 } else { -1 }, scaled.abs().ln() + max_log)
    }
}

/// Complex analogue of [`logsign_sum`]: real and imaginary parts of the scaled
/// terms are compensated independently.
pub fn logcomplex_sum(terms: &[LogComplex]) -> LogComplex {
    let max_log = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| t.log_abs())
        .fold(f64::NEG_INFINITY, f64::max);
    if max_log == f64::NEG_INFINITY {
        return LogComplex::ZERO;
    }
    let live: Vec<Complex64> = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| (t.log_abs() - max_log).exp() * t.unit())
        .collect();
    let re = neumaier_sum(live.iter().map(|z| z.re));
    let im = neumaier_sum(live.iter().map(|z| z.im));
    let z = Complex64::new(re, im);
    if z == Complex64::new(0.0, 0.0) {
        LogComplex::ZERO
    } else {
        LogComplex::new(z.norm().ln() + max_log, z.arg())
    }
}
