//! Exact, deterministic reference formulas: the averaged characteristic
//! polynomial `p_N^(M)` of a product of M square factors, its variance-scaled
//! form, the monic Hermite polynomial, the rank-(N+1) product kernel, and the
//! rescaled polynomials `P_N^(M)` / `Q_N^(M)` used for zero asymptotics.
//!
//! Coefficients are kept as arbitrary-precision integers wherever they are
//! exact; every evaluation path works in the log domain (see [`crate::logsign`])
//! because quantities like `(N!)^(M+1)` leave `f64` range at small `(N, M)`.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::combin::{
    binomial_big, factorial_big, ln_binomial, ln_factorial_table, logsign_from_bigint,
};
use crate::logsign::{logcomplex_sum, logsign_sum, LogComplex, LogSign};

/// Ascending-degree, monic, exact integer coefficients of a degree-N
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    coeffs: Vec<BigInt>,
}

impl CoefficientVector {
    fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty());
        assert_eq!(
            coeffs.last().unwrap(),
            &BigInt::from(1),
            "coefficient vector must be monic"
        );
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Per-coefficient (sign, log-magnitude) view for stable evaluation.
    pub fn float_view(&self) -> Vec<LogSign> {
        self.coeffs.iter().map(logsign_from_bigint).collect()
    }

    /// Lossy conversion; `None` if any coefficient is outside `f64` range.
    pub fn to_f64(&self) -> Option<Vec<f64>> {
        self.float_view().iter().map(|c| c.to_f64()).collect()
    }
}

/// Float-view polynomial: ascending coefficients in (sign, log-magnitude)
/// form. Produced by the scaled and Hermite constructors whose coefficients
/// are not integers.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatCoefficients {
    coeffs: Vec<LogSign>,
}

impl FloatCoefficients {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> LogSign {
        self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LogSign] {
        &self.coeffs
    }

    /// `None` if any coefficient overflows `f64`; overflow is reported, never
    /// returned as a silent infinity.
    pub fn to_f64(&self) -> Option<Vec<f64>> {
        self.coeffs.iter().map(|c| c.to_f64()).collect()
    }
}

/// Parameters of the product kernel `K_{N+1}^(M)` with norms
/// `h_k^(M) = pi * (k!)^M` and overall scale `tau = sigma_1 ... sigma_M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelSpec {
    n: usize,
    m: usize,
    tau: f64,
}

impl KernelSpec {
    pub fn new(n: usize, m: usize, tau: f64) -> Self {
        assert!(n >= 1 && m >= 1, "kernel requires N >= 1 and M >= 1");
        assert!(tau > 0.0, "kernel scale tau must be positive");
        Self { n, m, tau }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// `ln h_k = ln pi + M ln(k!)`, strictly increasing in k for k >= 1.
    pub fn ln_norm(&self, k: usize) -> f64 {
        assert!(k <= self.n);
        std::f64::consts::PI.ln() + self.m as f64 * ln_factorial_table(k)[k]
    }
}

/// Exact coefficients of `p_N^(M)`: the coefficient of `x^k` is
/// `(-1)^(N-k) * binom(N, k) * (N!/k!)^M`.
pub fn product_charpoly_coeffs(n: usize, m: usize) -> CoefficientVector {
    assert!(n >= 1 && m >= 1, "p_N^(M) requires N >= 1 and M >= 1");
    let n_fact = factorial_big(n);
    let mut k_fact = BigInt::from(1);
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            k_fact *= k;
        }
        let ratio = &n_fact / &k_fact; // N!/k! is an exact integer
        let mut c = binomial_big(n, k) * ratio.pow(m as u32);
        if (n - k) % 2 == 1 {
            c = -c;
        }
        coeffs.push(c);
    }
    CoefficientVector::new(coeffs)
}

/// Coefficients of `tau^(2N) p_N^(M)(x / tau^2)`: the exact coefficient of
/// `x^k` rescaled by `tau^(2(N-k))`, with `tau = sigma_1 ... sigma_M`.
pub fn scaled_product_charpoly(n: usize, m: usize, sigmas: &[f64]) -> FloatCoefficients {
    assert_eq!(sigmas.len(), m, "need one sigma per factor");
    assert!(sigmas.iter().all(|&s| s > 0.0), "sigmas must be positive");
    let ln_tau: f64 = sigmas.iter().map(|s| s.ln()).sum();
    let exact = product_charpoly_coeffs(n, m);
    let coeffs = exact
        .float_view()
        .into_iter()
        .enumerate()
        .map(|(k, c)| c.scale_ln(2.0 * (n - k) as f64 * ln_tau))
        .collect();
    FloatCoefficients { coeffs }
}

/// Monic Hermite-type polynomial of degree N for entry scale `sigma`,
/// from the three-term recurrence
/// `he_{j+1}(x) = x he_j(x) - sigma^2 j he_{j-1}(x)`.
///
/// Coefficient parity is inherited from the recurrence: the coefficient of
/// `x^k` vanishes whenever `N - k` is odd.
pub fn hermite_monic(n: usize, sigma: f64) -> FloatCoefficients {
    assert!(n >= 1, "hermite_monic requires N >= 1");
    assert!(sigma > 0.0, "sigma must be positive");
    let var = sigma * sigma;
    let mut prev = vec![1.0f64]; // he_0
    let mut cur = vec![0.0, 1.0]; // he_1
    for j in 1..n {
        let mut next = vec![0.0; j + 2];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= var * j as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    FloatCoefficients {
        coeffs: cur.into_iter().map(LogSign::from_f64).collect(),
    }
}

/// The two-polynomial average `tau^(2N) h_N^(M) K_{N+1}^(M)(z/tau, w/tau)`,
/// which collapses to `sum_k (zw)^k tau^(2(N-k)) (N!/k!)^M`. Terms are formed
/// in the log domain and summed with max-term scaling; only the final
/// conversion back to `Complex64` can saturate.
pub fn kernel_eval(spec: &KernelSpec, z: Complex64, w: Complex64) -> Complex64 {
    let lc = kernel_eval_log(spec, z, w);
    lc.to_complex().unwrap_or_else(|| {
        let mag = if lc.log_abs() > 0.0 { f64::INFINITY } else { 0.0 };
        mag * lc.unit()
    })
}

/// Log-domain variant of [`kernel_eval`] for arguments far outside `f64`
/// range.
pub fn kernel_eval_log(spec: &KernelSpec, z: Complex64, w: Complex64) -> LogComplex {
    let n = spec.n;
    let m = spec.m as f64;
    let ln_fact = ln_factorial_table(n);
    let ln_tau = spec.tau.ln();
    let zw = z * w;
    if zw == Complex64::new(0.0, 0.0) {
        // Only the k = 0 term survives: tau^(2N) (N!)^M.
        return LogComplex::new(2.0 * n as f64 * ln_tau + m * ln_fact[n], 0.0);
    }
    let ln_zw = zw.norm().ln();
    let arg_zw = zw.arg();
    let terms: Vec<LogComplex> = (0..=n)
        .map(|k| {
            let log_abs = k as f64 * ln_zw
                + 2.0 * (n - k) as f64 * ln_tau
                + m * (ln_fact[n] - ln_fact[k]);
            LogComplex::new(log_abs, k as f64 * arg_zw)
        })
        .collect();
    logcomplex_sum(&terms)
}

/// The N+1 log-domain terms of the rescaled polynomial `P_N^(M)` as a
/// function of `zeta = z^2`:
/// `term_k = binom(N, k) (-1)^k (zeta^k / k!)^M`.
pub fn rescaled_p_terms_zsq(n: usize, m: usize, zsq: Complex64) -> Vec<LogComplex> {
    assert!(n >= 1 && m >= 1);
    let ln_fact = ln_factorial_table(n);
    let mf = m as f64;
    if zsq == Complex64::new(0.0, 0.0) {
        let mut terms = vec![LogComplex::ZERO; n + 1];
        terms[0] = LogComplex::new(0.0, 0.0);
        return terms;
    }
    let ln_z = zsq.norm().ln();
    let arg_z = zsq.arg();
    (0..=n)
        .map(|k| {
            let log_abs = ln_binomial(n, k) + mf * (k as f64 * ln_z - ln_fact[k]);
            let phase = mf * k as f64 * arg_z + std::f64::consts::PI * k as f64;
            LogComplex::new(log_abs, phase)
        })
        .collect()
}

/// Real-axis variant of [`rescaled_p_terms_zsq`] (`zeta >= 0`), carrying
/// signs instead of phases. This is the form consumed by the root finder.
pub fn rescaled_p_terms_zsq_real(n: usize, m: usize, zsq: f64) -> Vec<LogSign> {
    assert!(n >= 1 && m >= 1);
    assert!(zsq >= 0.0, "real variant needs zeta = z^2 >= 0");
    let ln_fact = ln_factorial_table(n);
    let mf = m as f64;
    if zsq == 0.0 {
        let mut terms = vec![LogSign::ZERO; n + 1];
        terms[0] = LogSign::ONE;
        return terms;
    }
    let ln_z = zsq.ln();
    (0..=n)
        .map(|k| {
            let log_abs = ln_binomial(n, k) + mf * (k as f64 * ln_z - ln_fact[k]);
            let sign = if k % 2 == 0 { 1 } else { -1 };
            LogSign::new(sign, log_abs)
        })
        .collect()
}

/// `P_N^(M)(z)` for real z: max-term scaled, compensated sum of the N+1
/// alternating terms, returned as (sign, log-magnitude). Exact cancellation
/// at a zero reports sign 0.
pub fn rescaled_p_eval(n: usize, m: usize, z: f64) -> LogSign {
    logsign_sum(&rescaled_p_terms_zsq_real(n, m, z * z))
}

/// `P_N^(M)(z)` for complex z, as log-magnitude plus phase.
pub fn rescaled_p_eval_complex(n: usize, m: usize, z: Complex64) -> LogComplex {
    logcomplex_sum(&rescaled_p_terms_zsq(n, m, z * z))
}

fn q_zsq_rescale(m: usize, sigmas: &[f64]) -> f64 {
    assert_eq!(sigmas.len(), m, "need one sigma per factor");
    assert!(sigmas.iter().all(|&s| s > 0.0), "sigmas must be positive");
    let ln_tau: f64 = sigmas.iter().map(|s| s.ln()).sum();
    (-2.0 * ln_tau / m as f64).exp()
}

/// `Q_N^(M)(w) = P_N^(M)(w / tau^(1/M))` for real w.
pub fn rescaled_q_eval(n: usize, m: usize, sigmas: &[f64], w: f64) -> LogSign {
    let scale = q_zsq_rescale(m, sigmas);
    logsign_sum(&rescaled_p_terms_zsq_real(n, m, w * w * scale))
}

/// `Q_N^(M)(w)` for complex w.
pub fn rescaled_q_eval_complex(n: usize, m: usize, sigmas: &[f64], w: Complex64) -> LogComplex {
    let scale = q_zsq_rescale(m, sigmas);
    logcomplex_sum(&rescaled_p_terms_zsq(n, m, w * w * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::{One, ToPrimitive, Zero};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    /// Independent route to the p_N^(M) coefficients: the prefactor form
    /// `(-1)^N (N!)^(M+1) (-1)^k / ((N-k)! (k!)^(M+1))`, with the division
    /// done exactly.
    fn product_coeffs_prefactor_oracle(n: usize, m: usize) -> Vec<BigInt> {
        let n_fact_pow = factorial_big(n).pow(m as u32 + 1);
        (0..=n)
            .map(|k| {
                let denom = factorial_big(n - k) * factorial_big(k).pow(m as u32 + 1);
                let q = &n_fact_pow / &denom;
                assert!((&n_fact_pow % &denom).is_zero(), "prefactor form must divide exactly");
                if (n + k) % 2 == 0 {
                    q
                } else {
                    -q
                }
            })
            .collect()
    }

    /// Monic Laguerre polynomials `(-1)^n n! L_n` from the classical
    /// three-term recurrence, exact in BigInt.
    fn laguerre_monic_oracle(n: usize) -> Vec<BigInt> {
        let mut prev = vec![big(1)]; // degree 0
        if n == 0 {
            return prev;
        }
        let mut cur = vec![big(-1), big(1)]; // x - 1
        for j in 1..n {
            // Lhat_{j+1} = (x - (2j+1)) Lhat_j - j^2 Lhat_{j-1}
            let mut next = vec![BigInt::zero(); j + 2];
            for (k, c) in cur.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= big(2 * j as i64 + 1) * c;
            }
            for (k, c) in prev.iter().enumerate() {
                next[k] -= big((j * j) as i64) * c;
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Closed form for the monic Hermite coefficients:
    /// coefficient of x^(n-2t) is (-1)^t binom(n, 2t) (2t-1)!! sigma^(2t).
    fn hermite_closed_form_oracle(n: usize, sigma: f64) -> Vec<f64> {
        let mut coeffs = vec![0.0; n + 1];
        let mut double_fact = 1.0;
        for t in 0..=(n / 2) {
            if t > 0 {
                double_fact *= (2 * t - 1) as f64;
            }
            let b = binomial_big(n, 2 * t).to_f64().unwrap();
            let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
            coeffs[n - 2 * t] = sign * b * double_fact * sigma.powi(2 * t as i32);
        }
        coeffs
    }

    #[test]
    fn product_coeffs_frozen_examples() {
        // N=1, M=1: x - 1
        let p = product_charpoly_coeffs(1, 1);
        assert_eq!(p.coeffs(), &[big(-1), big(1)]);
        // N=2, M=2: x^2 - 8x + 4
        let p = product_charpoly_coeffs(2, 2);
        assert_eq!(p.coeffs(), &[big(4), big(-8), big(1)]);
        // N=2, M=1: x^2 - 4x + 2
        let p = product_charpoly_coeffs(2, 1);
        assert_eq!(p.coeffs(), &[big(2), big(-4), big(1)]);
    }

    #[test]
    fn product_coeffs_match_prefactor_route() {
        for n in 1..=8 {
            for m in [1, 2, 3, 5, 9] {
                let a = product_charpoly_coeffs(n, m);
                let b = product_coeffs_prefactor_oracle(n, m);
                assert_eq!(a.coeffs(), &b[..], "mismatch at N={n}, M={m}");
            }
        }
    }

    #[test]
    fn m1_equals_monic_laguerre() {
        for n in 1..=15 {
            let p = product_charpoly_coeffs(n, 1);
            let l = laguerre_monic_oracle(n);
            assert_eq!(p.coeffs(), &l[..], "Laguerre mismatch at N={n}");
        }
    }

    #[test]
    fn signs_alternate() {
        for n in 1..=10 {
            for m in [1, 3, 7] {
                let p = product_charpoly_coeffs(n, m);
                for k in 0..=n {
                    let expect = if (n - k) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(
                        logsign_from_bigint(p.coeff(k)).sign(),
                        expect,
                        "sign of coefficient {k} at N={n}, M={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn scaled_frozen_examples() {
        let s = scaled_product_charpoly(1, 1, &[1.0]);
        assert_eq!(s.to_f64().unwrap(), vec![-1.0, 1.0]);

        // N=1, M=2, sigma = (2, 3): tau^2 = 36, polynomial x - 36.
        let s = scaled_product_charpoly(1, 2, &[2.0, 3.0]);
        let v = s.to_f64().unwrap();
        assert!((v[0] + 36.0).abs() < 1e-12);
        assert_eq!(v[1], 1.0);

        let s = scaled_product_charpoly(2, 2, &[1.0, 1.0]);
        let v = s.to_f64().unwrap();
        for (got, want) in v.iter().zip([4.0, -8.0, 1.0]) {
            assert!((got - want).abs() < 1e-13 * want.abs());
        }
    }

    #[test]
    fn scaled_is_monic_for_any_sigma() {
        let s = scaled_product_charpoly(4, 3, &[0.5, 2.5, 7.0]);
        assert_eq!(s.coeff(4), LogSign::ONE);
    }

    #[test]
    fn scaled_overflow_is_reported() {
        // (64!)^21-scale coefficients cannot be converted to f64 ...
        let s = scaled_product_charpoly(64, 20, &vec![1.0; 20]);
        assert_eq!(s.to_f64(), None);
        // ... but the log view stays finite.
        assert!(s.coeff(0).log_abs().is_finite());
    }

    #[test]
    fn hermite_frozen_examples() {
        let h = hermite_monic(1, 1.0);
        assert_eq!(h.to_f64().unwrap(), vec![0.0, 1.0]);
        let h = hermite_monic(2, 1.0);
        assert_eq!(h.to_f64().unwrap(), vec![-1.0, 0.0, 1.0]);
        let h = hermite_monic(3, 2.0);
        assert_eq!(h.to_f64().unwrap(), vec![0.0, -12.0, 0.0, 1.0]);
    }

    #[test]
    fn hermite_matches_closed_form() {
        for n in 1..=10 {
            for sigma in [0.5, 1.0, 2.0] {
                let h = hermite_monic(n, sigma).to_f64().unwrap();
                let oracle = hermite_closed_form_oracle(n, sigma);
                for k in 0..=n {
                    assert!(
                        (h[k] - oracle[k]).abs() <= 1e-10 * oracle[k].abs().max(1.0),
                        "he_{n} coefficient {k} at sigma={sigma}: {} vs {}",
                        h[k],
                        oracle[k]
                    );
                }
            }
        }
    }

    #[test]
    fn hermite_parity() {
        let h = hermite_monic(7, 1.3);
        for k in 0..=7 {
            if (7 - k) % 2 == 1 {
                assert!(h.coeff(k).is_zero(), "odd-parity coefficient {k} nonzero");
            }
        }
    }

    #[test]
    fn kernel_frozen_examples() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let spec = KernelSpec::new(1, 1, 1.0);
        assert!((kernel_eval(&spec, zero, Complex64::new(3.0, -1.0)) - one).norm() < 1e-14);
        assert!((kernel_eval(&spec, one, one) - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        let spec = KernelSpec::new(2, 2, 1.0);
        assert!((kernel_eval(&spec, one, one) - Complex64::new(9.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn kernel_norms_increase() {
        let spec = KernelSpec::new(6, 3, 1.0);
        for k in 1..6 {
            assert!(spec.ln_norm(k + 1) > spec.ln_norm(k));
        }
        assert!(spec.ln_norm(0) > 0.0); // ln(pi)
    }

    #[test]
    fn rescaled_p_at_zero_is_one() {
        for (n, m) in [(1, 1), (3, 7), (8, 20)] {
            assert_eq!(rescaled_p_eval(n, m, 0.0), LogSign::ONE);
            let lc = rescaled_p_eval_complex(n, m, Complex64::new(0.0, 0.0));
            assert!((lc.to_complex().unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn rescaled_p_exact_cancellation_at_unit_zero() {
        // P_1^(3)(1) = 1 - 1: both terms are exactly 1 in f64.
        assert_eq!(rescaled_p_eval(1, 3, 1.0).sign(), 0);
    }

    #[test]
    fn rescaled_p_vanishes_at_quadratic_root() {
        // P_2^(1)(z) = 1 - 2 z^2 + z^4/2 has roots z^2 = 2 +/- sqrt(2).
        for zsq in [2.0 + std::f64::consts::SQRT_2, 2.0 - std::f64::consts::SQRT_2] {
            let z = zsq.sqrt();
            let v = rescaled_p_eval(2, 1, z);
            let max_term = rescaled_p_terms_zsq_real(2, 1, zsq)
                .iter()
                .map(|t| t.log_abs())
                .fold(f64::NEG_INFINITY, f64::max);
            // |P| below 1e-12 of the cancellation scale.
            assert!(
                v.is_zero() || v.log_abs() - max_term < (1e-12f64).ln(),
                "residual too large at z^2={zsq}"
            );
        }
    }

    #[test]
    fn rescaled_q_reduces_to_p() {
        assert_eq!(rescaled_q_eval(1, 1, &[1.0], 1.0).sign(), 0);
        // tau^(1/M) = 2 maps w=2 onto P_1^(2)(1) = 0.
        assert_eq!(rescaled_q_eval(1, 2, &[2.0, 2.0], 2.0).sign(), 0);
        assert_eq!(rescaled_q_eval(3, 4, &[0.5, 1.5, 2.0, 3.0], 0.0), LogSign::ONE);
    }

    /// Identity `P_N^(M)(z) = (-1)^N p_N^(M)(z^(2M)) / (N!)^M` checked in the
    /// log domain over random real points, away from zeros.
    #[test]
    fn rescaled_p_matches_product_charpoly_identity() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xC0FFEE);
        let mut checked = 0usize;
        while checked < 1000 {
            let n = rng.gen_range(1..=8usize);
            let m = rng.gen_range(1..=20usize);
            let z: f64 = rng.gen_range(0.05..3.0);
            let direct = rescaled_p_eval(n, m, z);

            let coeffs = product_charpoly_coeffs(n, m);
            let ln_fact_n = crate::combin::ln_factorial(n);
            let ln_z = z.ln();
            let terms: Vec<LogSign> = coeffs
                .float_view()
                .into_iter()
                .enumerate()
                .map(|(k, c)| c.scale_ln(2.0 * (m * k) as f64 * ln_z - m as f64 * ln_fact_n))
                .collect();
            let mut via_p = logsign_sum(&terms);
            if n % 2 == 1 {
                via_p = via_p.neg();
            }

            // Skip points in the cancellation zone of either route.
            let max_term = terms
                .iter()
                .map(|t| t.log_abs())
                .fold(f64::NEG_INFINITY, f64::max);
            if direct.is_zero() || via_p.is_zero() || via_p.log_abs() < max_term - 20.0 {
                continue;
            }
            checked += 1;
            assert_eq!(direct.sign(), via_p.sign(), "sign at N={n} M={m} z={z}");
            let denom = via_p.log_abs().abs().max(1.0);
            assert!(
                (direct.log_abs() - via_p.log_abs()).abs() / denom < 1e-10,
                "log-magnitude at N={n} M={m} z={z}: {} vs {}",
                direct.log_abs(),
                via_p.log_abs()
            );
        }
    }

    proptest! {
        // The kernel depends on (z, w) only through the product zw.
        #[test]
        fn prop_kernel_is_function_of_product(
            zr in -2.0f64..2.0, zi in -2.0f64..2.0,
            wr in -2.0f64..2.0, wi in -2.0f64..2.0,
            n in 1usize..5, m in 1usize..4,
        ) {
            let z = Complex64::new(zr, zi);
            let w = Complex64::new(wr, wi);
            let spec = KernelSpec::new(n, m, 1.0);
            let a = kernel_eval(&spec, z, w);
            let b = kernel_eval(&spec, z * w, Complex64::new(1.0, 0.0));
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }

        // tau-scaling covariance of the scaled coefficients.
        #[test]
        fn prop_scaled_coeff_matches_tau_power(
            n in 1usize..6, m in 1usize..4, sigma in 0.2f64..3.0,
        ) {
            let sigmas = vec![sigma; m];
            let scaled = scaled_product_charpoly(n, m, &sigmas);
            let exact = product_charpoly_coeffs(n, m);
            let ln_tau = (m as f64) * sigma.ln();
            for k in 0..=n {
                let expect = logsign_from_bigint(exact.coeff(k))
                    .scale_ln(2.0 * (n - k) as f64 * ln_tau);
                let got = scaled.coeff(k);
                prop_assert_eq!(got.sign(), expect.sign());
                prop_assert!((got.log_abs() - expect.log_abs()).abs() < 1e-10);
            }
        }
    }
}
