//! Dense complex matrices and the per-sample numeric operations averaged by
//! the verifier: characteristic-polynomial coefficients, product orderings,
//! sub-matrix determinants and the Cauchy-Binet identity check.

use itertools::Itertools;
use num_complex::Complex64;

/// Largest dimension accepted by [`charpoly_coeffs`]; the trace recursion is
/// O(N^4) and its conditioning degrades beyond desk scale.
pub const MAX_CHARPOLY_DIM: usize = 64;

/// Square complex matrix, dense row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl NumericMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in matrix product");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).fold(Complex64::new(0.0, 0.0), |s, i| s + self.get(i, i))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `(A + A*) / 2`, making the matrix exactly equal to its adjoint.
    pub fn hermitian_part(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out.set(i, i, Complex64::new(self.get(i, i).re, 0.0));
            for j in (i + 1)..n {
                let v = 0.5 * (self.get(i, j) + self.get(j, i).conj());
                out.set(i, j, v);
                out.set(j, i, v.conj());
            }
        }
        out
    }
}

/// Sorted, strictly increasing 0-based row/column indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSubset {
    indices: Vec<usize>,
}

impl IndexSubset {
    pub fn new(indices: Vec<usize>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "indices must be strictly increasing"
        );
        Self { indices }
    }

    pub fn full(n: usize) -> Self {
        Self {
            indices: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn max(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    /// Human-facing 1-based label, e.g. `{1,3}`.
    pub fn one_based_label(&self) -> String {
        let inner = self.indices.iter().map(|i| (i + 1).to_string()).join(",");
        format!("{{{inner}}}")
    }
}

/// All r-element subsets of `{0, .., n-1}` in lexicographic order.
pub fn all_subsets(n: usize, r: usize) -> Vec<IndexSubset> {
    (0..n).combinations(r).map(IndexSubset::new).collect()
}

/// Monic characteristic-polynomial coefficients of `det(xI - A)`, ascending
/// degree, by the Faddeev-LeVerrier trace recursion. Division-light and
/// branch-free, which is what the Monte Carlo inner loop wants; eigenvalue
/// routes exist only as test oracles.
pub fn charpoly_coeffs(a: &NumericMatrix) -> Vec<Complex64> {
    let n = a.n();
    assert!(n >= 1, "empty matrix has no characteristic polynomial");
    assert!(
        n <= MAX_CHARPOLY_DIM,
        "charpoly_coeffs guard: N={n} exceeds {MAX_CHARPOLY_DIM}"
    );
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let mut b = a.clone();
    let mut c = -b.trace();
    coeffs[n - 1] = c;
    for k in 2..=n {
        let mut shifted = b;
        for i in 0..n {
            let v = shifted.get(i, i) + c;
            shifted.set(i, i, v);
        }
        b = a.mul(&shifted);
        c = -b.trace() / k as f64;
        coeffs[n - k] = c;
    }
    coeffs
}

/// `(X_1 ... X_M)* (X_1 ... X_M)`, accumulated left to right, with an explicit
/// Hermitian symmetrization to suppress roundoff asymmetry.
pub fn hermitised_product(factors: &[NumericMatrix]) -> NumericMatrix {
    assert!(!factors.is_empty(), "need at least one factor");
    let mut p = factors[0].clone();
    for x in &factors[1..] {
        p = p.mul(x);
    }
    p.adjoint().mul(&p).hermitian_part()
}

/// `(X_1* X_1) ... (X_M* X_M)`, accumulated left to right. Not Hermitian for
/// M >= 2, but similar to a positive-semidefinite matrix, so its spectrum is
/// real nonnegative (checked in tests, not enforced here).
pub fn mixed_product(factors: &[NumericMatrix]) -> NumericMatrix {
    assert!(!factors.is_empty(), "need at least one factor");
    let mut acc: Option<NumericMatrix> = None;
    for x in factors {
        let g = x.adjoint().mul(x);
        acc = Some(match acc {
            None => g,
            Some(p) => p.mul(&g),
        });
    }
    let out = acc.unwrap();
    if factors.len() == 1 {
        // Orderings coincide at M=1; keep them bit-identical.
        out.hermitian_part()
    } else {
        out
    }
}

/// Determinant of the sub-matrix of `a` selected by `rows` x `cols`, via LU
/// with partial pivoting. A singular sub-matrix returns 0.
pub fn subdet(a: &NumericMatrix, rows: &IndexSubset, cols: &IndexSubset) -> Complex64 {
    let r = rows.len();
    assert_eq!(cols.len(), r, "row and column subsets must have equal size");
    assert!(rows.max().map_or(true, |m| m < a.n()), "row index out of range");
    assert!(cols.max().map_or(true, |m| m < a.n()), "column index out of range");
    if r == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut m: Vec<Complex64> = Vec::with_capacity(r * r);
    for &i in rows.indices() {
        for &j in cols.indices() {
            m.push(a.get(i, j));
        }
    }
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..r {
        let mut pivot_row = col;
        let mut best = m[col * r + col].norm_sqr();
        for row in (col + 1)..r {
            let mag = m[row * r + col].norm_sqr();
            if mag > best {
                best = mag;
                pivot_row = row;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != col {
            for j in 0..r {
                m.swap(col * r + j, pivot_row * r + j);
            }
            det = -det;
        }
        let pivot = m[col * r + col];
        det *= pivot;
        for row in (col + 1)..r {
            let f = m[row * r + col] / pivot;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in (col + 1)..r {
                let sub = f * m[col * r + j];
                m[row * r + j] -= sub;
            }
        }
    }
    det
}

/// Outcome of the Cauchy-Binet identity check
/// `det[(AB)_{K,L}] = sum_V det[A_{K,V}] det[B_{V,L}]` over all
/// `V in K_{r,N}`: the absolute residual and the magnitude scale of the
/// largest participating term.
#[derive(Clone, Copy, Debug)]
pub struct CauchyBinetResidual {
    pub residual: f64,
    pub scale: f64,
}

impl CauchyBinetResidual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.residual
        } else {
            self.residual / self.scale
        }
    }
}

pub fn cauchy_binet_check(
    a: &NumericMatrix,
    b: &NumericMatrix,
    rows: &IndexSubset,
    cols: &IndexSubset,
) -> CauchyBinetResidual {
    assert_eq!(a.n(), b.n(), "dimension mismatch");
    let n = a.n();
    let r = rows.len();
    let lhs = subdet(&a.mul(b), rows, cols);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = lhs.norm();
    for v in all_subsets(n, r) {
        let term = subdet(a, rows, &v) * subdet(b, &v, cols);
        scale = scale.max(term.norm());
        sum += term;
    }
    CauchyBinetResidual {
        residual: (lhs - sum).norm(),
        scale,
    }
}
