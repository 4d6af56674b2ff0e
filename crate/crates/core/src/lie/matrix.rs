//! Exponential and principal logarithm of small complex matrices, and the
//! standard bases of 𝔰𝔲(2) and 𝔲(2).

use nalgebra::{Matrix2, SMatrix};
use num_complex::Complex64;

pub type CMatrix<const D: usize> = SMatrix<Complex64, D, D>;

fn one_norm<const D: usize>(a: &CMatrix<D>) -> f64 {
    (0..D).map(|c| (0..D).map(|r| a[(r, c)].norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm<const D: usize>(a: &CMatrix<D>) -> CMatrix<D> {
    let norm = one_norm(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.unscale(2f64.powi(squarings as i32));
    let mut term = CMatrix::<D>::identity();
    let mut sum = CMatrix::<D>::identity();
    for k in 1..=30 {
        term = term * scaled / Complex64::from(k as f64);
        sum += term;
        if one_norm(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// Principal matrix logarithm by inverse scaling and squaring: repeated
/// Denman–Beavers square roots until `‖X − I‖ ≤ 0.2`, then the Gregory
/// series `2 Σ Z^{2k+1}/(2k+1)` with `Z = (X − I)(X + I)⁻¹`.
///
/// `None` when a square root iteration fails (eigenvalue on the closed
/// negative real axis).
pub fn logm<const D: usize>(x: &CMatrix<D>) -> Option<CMatrix<D>> {
    let id = CMatrix::<D>::identity();
    let mut y = *x;
    let mut roots = 0;
    while one_norm(&(y - id)) > 0.2 {
        y = sqrtm(&y)?;
        roots += 1;
        if roots > 60 {
            return None;
        }
    }
    let z = (y - id) * (y + id).try_inverse()?;
    let z2 = z * z;
    let mut power = z;
    let mut sum = z;
    for k in 1..60 {
        power *= z2;
        let term = power / Complex64::from(2.0 * k as f64 + 1.0);
        sum += term;
        if one_norm(&term) < 1e-18 {
            break;
        }
    }
    Some(sum * Complex64::from(2.0 * 2f64.powi(roots)))
}

/// Principal square root by the Denman–Beavers iteration.
fn sqrtm<const D: usize>(a: &CMatrix<D>) -> Option<CMatrix<D>> {
    let mut y = *a;
    let mut z = CMatrix::<D>::identity();
    for _ in 0..100 {
        let yi = y.try_inverse()?;
        let zi = z.try_inverse()?;
        let y_next = (y + zi) * Complex64::from(0.5);
        let z_next = (z + yi) * Complex64::from(0.5);
        let delta = one_norm(&(y_next - y));
        y = y_next;
        z = z_next;
        if delta <= 1e-16 * one_norm(&y) {
            return Some(y);
        }
    }
    (one_norm(&(y * y - a)) < 1e-12).then_some(y)
}

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [Matrix2<Complex64>; 3] {
    let (o, z, i) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0));
    [
        Matrix2::new(z, o, o, z),
        Matrix2::new(z, -i, i, z),
        Matrix2::new(o, z, z, -o),
    ]
}

/// Basis `X_k = −(i/2)σ_k` of 𝔰𝔲(2), with `[X₁, X₂] = X₃` cyclically.
pub fn su2_basis() -> [Matrix2<Complex64>; 3] {
    let h = Complex64::new(0.0, -0.5);
    pauli().map(|s| s * h)
}

/// Coordinates of a traceless anti-Hermitian `X = Σ x_k X_k`: `x_k = i·tr(X σ_k)`.
pub fn su2_coords(x: &Matrix2<Complex64>) -> [f64; 3] {
    let i = Complex64::new(0.0, 1.0);
    pauli().map(|s| (i * (x * s).trace()).re)
}

pub fn su2_from_coords(x: &[f64]) -> Matrix2<Complex64> {
    su2_basis().iter().zip(x).map(|(b, &c)| b * Complex64::from(c)).sum()
}

/// 𝔲(2) = ℝ·iI ⊕ 𝔰𝔲(2); coordinate 0 multiplies `iI`.
pub fn u2_coords(x: &Matrix2<Complex64>) -> [f64; 4] {
    let s = su2_coords(x);
    let x0 = (x.trace() / Complex64::new(0.0, 2.0)).re;
    [x0, s[0], s[1], s[2]]
}

pub fn u2_from_coords(x: &[f64]) -> Matrix2<Complex64> {
    Matrix2::identity() * Complex64::new(0.0, x[0]) + su2_from_coords(&x[1..])
}

/// Embeds a 2×2 complex matrix as 8 reals (row-major, re/im interleaved).
pub fn to_real8(m: &Matrix2<Complex64>) -> Vec<f64> {
    let mut out = Vec::with_capacity(8);
    for r in 0..2 {
        for c in 0..2 {
            out.push(m[(r, c)].re);
            out.push(m[(r, c)].im);
        }
    }
    out
}

pub fn from_real8(v: &[f64]) -> Matrix2<Complex64> {
    let e = |k: usize| Complex64::new(v[2 * k], v[2 * k + 1]);
    Matrix2::new(e(0), e(1), e(2), e(3))
}
