//! Small helpers for dense complex matrices used by the representation and
//! Fourier machinery.

use ndarray::Array2;
use num_complex::Complex64;

pub fn identity(d: usize) -> Array2<Complex64> {
    Array2::eye(d)
}

/// Conjugate transpose.
pub fn adjoint(a: &Array2<Complex64>) -> Array2<Complex64> {
    a.t().mapv(|z| z.conj())
}

/// Hilbert–Schmidt (Frobenius) norm: sqrt of the sum of squared moduli.
pub fn hs_norm(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(a: &Array2<Complex64>) -> Complex64 {
    a.diag().sum()
}

/// `tr(a b†)`, the inner product on matrix space.
pub fn mat_inner(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

/// Largest entry modulus of `a - b`.
pub fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Residual of unitarity, `max |(a a† - I)_{ij}|`.
pub fn unitarity_residual(a: &Array2<Complex64>) -> f64 {
    let d = a.nrows();
    max_abs_diff(&a.dot(&adjoint(a)), &identity(d))
}
