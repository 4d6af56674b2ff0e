//! Lie groups with a distinguished chart around the unit.
//!
//! Elements are points of an ambient `ℝ^d` (matrix entries, coordinates);
//! the chart takes values in `𝔤 ≅ ℝⁿ` with `φ(e) = 0` and `dφ(e) = id`.

use std::f64::consts::{PI, TAU};

use nalgebra::DVector;
use num_complex::Complex64;

use super::matrix::{expm, from_real8, logm, su2_coords, su2_from_coords, to_real8, u2_coords, u2_from_coords};
use super::LieError;

pub type Element = Vec<f64>;

pub trait ChartedLieGroup: Send + Sync {
    fn name(&self) -> &str;
    /// `dim 𝔤`.
    fn dim(&self) -> usize;
    fn unit(&self) -> Element;
    fn mul(&self, g: &[f64], h: &[f64]) -> Element;
    fn inv(&self, g: &[f64]) -> Element;
    /// Whether chart coordinates lie in `φ(U)`.
    fn in_domain(&self, x: &DVector<f64>) -> bool;
    /// `φ(g)`; refuses elements outside `U`.
    fn chart(&self, g: &[f64]) -> Result<DVector<f64>, LieError>;
    /// `φ⁻¹(x)`; refuses points outside `φ(U)`.
    fn chart_inverse(&self, x: &DVector<f64>) -> Result<Element, LieError>;
    /// Algebra coordinates of `p⁻¹·v` for an ambient tangent vector `v` at
    /// `p`, when an analytic left translation is available.
    fn left_pullback(&self, _p: &[f64], _v: &[f64]) -> Option<DVector<f64>> {
        None
    }
    /// Sup distance of ambient coordinates.
    fn distance(&self, g: &[f64], h: &[f64]) -> f64 {
        g.iter().zip(h).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
    /// Local chart product `x * y = φ(φ⁻¹(x)·φ⁻¹(y))`.
    fn star(&self, x: &DVector<f64>, y: &DVector<f64>) -> Result<DVector<f64>, LieError> {
        let p = self.mul(&self.chart_inverse(x)?, &self.chart_inverse(y)?);
        self.chart(&p)
    }
}

fn escape(what: &str, x: &DVector<f64>) -> LieError {
    LieError::DomainEscape {
        context: what.to_string(),
        point: x.iter().copied().collect(),
    }
}

/// Invertible chart perturbations of `ℝⁿ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AdditiveChart {
    Linear,
    /// `ψ(x)_i = x_i + c·x_i³` with `c ≥ 0`.
    Cubic(f64),
}

/// `(ℝⁿ, +)`.
#[derive(Clone, Debug)]
pub struct Additive {
    n: usize,
    chart: AdditiveChart,
    name: String,
}

impl Additive {
    pub fn new(n: usize) -> Self {
        Additive { n, chart: AdditiveChart::Linear, name: format!("r{n}") }
    }

    pub fn with_cubic_chart(n: usize, c: f64) -> Self {
        assert!(c >= 0.0, "cubic chart needs c ≥ 0 to stay invertible");
        Additive { n, chart: AdditiveChart::Cubic(c), name: format!("r{n}-cubic") }
    }
}

/// Real root of `c y³ + y = a` (unique for `c ≥ 0`).
fn cubic_inverse(c: f64, a: f64) -> f64 {
    if c == 0.0 {
        return a;
    }
    let mut y = a / (1.0 + c * a * a).cbrt().max(1.0);
    for _ in 0..60 {
        let f = c * y * y * y + y - a;
        let dy = f / (3.0 * c * y * y + 1.0);
        y -= dy;
        if dy.abs() <= 1e-17 * (1.0 + y.abs()) {
            break;
        }
    }
    y
}

impl ChartedLieGroup for Additive {
    fn name(&self) -> &str {
        &self.name
    }
    fn dim(&self) -> usize {
        self.n
    }
    fn unit(&self) -> Element {
        vec![0.0; self.n]
    }
    fn mul(&self, g: &[f64], h: &[f64]) -> Element {
        g.iter().zip(h).map(|(a, b)| a + b).collect()
    }
    fn inv(&self, g: &[f64]) -> Element {
        g.iter().map(|a| -a).collect()
    }
    fn in_domain(&self, x: &DVector<f64>) -> bool {
        x.len() == self.n && x.iter().all(|v| v.is_finite())
    }
    fn chart(&self, g: &[f64]) -> Result<DVector<f64>, LieError> {
        Ok(match self.chart {
            AdditiveChart::Linear => DVector::from_column_slice(g),
            AdditiveChart::Cubic(c) => DVector::from_iterator(self.n, g.iter().map(|&x| x + c * x * x * x)),
        })
    }
    fn chart_inverse(&self, x: &DVector<f64>) -> Result<Element, LieError> {
        if !self.in_domain(x) {
            return Err(escape("chart inverse", x));
        }
        Ok(match self.chart {
            AdditiveChart::Linear => x.iter().copied().collect(),
            AdditiveChart::Cubic(c) => x.iter().map(|&a| cubic_inverse(c, a)).collect(),
        })
    }
    fn left_pullback(&self, _p: &[f64], v: &[f64]) -> Option<DVector<f64>> {
        // The chart differential at e is the identity for both charts.
        Some(DVector::from_column_slice(v))
    }
}

/// The 3-dimensional Heisenberg group of unipotent upper-triangular
/// matrices, stored as `(a, b, c)` for `[[1, a, c], [0, 1, b], [0, 0, 1]]`,
/// with exponential coordinates `φ(a, b, c) = (a, b, c − ab/2)`.
/// In these coordinates `[e₁, e₂] = e₃`.
#[derive(Clone, Debug, Default)]
pub struct Heisenberg;

impl ChartedLieGroup for Heisenberg {
    fn name(&self) -> &str {
        "heisenberg"
    }
    fn dim(&self) -> usize {
        3
    }
    fn unit(&self) -> Element {
        vec![0.0; 3]
    }
    fn mul(&self, g: &[f64], h: &[f64]) -> Element {
        vec![g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]]
    }
    fn inv(&self, g: &[f64]) -> Element {
        vec![-g[0], -g[1], -g[2] + g[0] * g[1]]
    }
    fn in_domain(&self, x: &DVector<f64>) -> bool {
        x.len() == 3 && x.iter().all(|v| v.is_finite())
    }
    fn chart(&self, g: &[f64]) -> Result<DVector<f64>, LieError> {
        Ok(DVector::from_vec(vec![g[0], g[1], g[2] - 0.5 * g[0] * g[1]]))
    }
    fn chart_inverse(&self, x: &DVector<f64>) -> Result<Element, LieError> {
        if !self.in_domain(x) {
            return Err(escape("chart inverse", x));
        }
        Ok(vec![x[0], x[1], x[2] + 0.5 * x[0] * x[1]])
    }
    fn left_pullback(&self, p: &[f64], v: &[f64]) -> Option<DVector<f64>> {
        Some(DVector::from_vec(vec![v[0], v[1], v[2] - p[0] * v[1]]))
    }
}

/// SU(2) as 2×2 complex matrices with the principal logarithm chart in
/// the basis `X_k = −(i/2)σ_k`; `U = {|x| < π}`.
#[derive(Clone, Debug, Default)]
pub struct Su2;

/// U(2) with the principal logarithm chart in the basis `(iI, X₁, X₂, X₃)`;
/// `U = {|x₀| + |x⃗|/2 < π/2}`, i.e. eigenvalue arguments in `(−π/2, π/2)`.
#[derive(Clone, Debug, Default)]
pub struct U2;

fn matrix_mul(g: &[f64], h: &[f64]) -> Element {
    to_real8(&(from_real8(g) * from_real8(h)))
}

fn matrix_inv(g: &[f64]) -> Element {
    // Unitary: the inverse is the adjoint.
    to_real8(&from_real8(g).adjoint())
}

impl ChartedLieGroup for Su2 {
    fn name(&self) -> &str {
        "su2"
    }
    fn dim(&self) -> usize {
        3
    }
    fn unit(&self) -> Element {
        vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]
    }
    fn mul(&self, g: &[f64], h: &[f64]) -> Element {
        matrix_mul(g, h)
    }
    fn inv(&self, g: &[f64]) -> Element {
        matrix_inv(g)
    }
    fn in_domain(&self, x: &DVector<f64>) -> bool {
        x.len() == 3 && x.norm() < PI
    }
    fn chart(&self, g: &[f64]) -> Result<DVector<f64>, LieError> {
        let m = from_real8(g);
        let l = logm(&m).ok_or_else(|| LieError::DomainEscape {
            context: "logarithm".into(),
            point: g.to_vec(),
        })?;
        let x = DVector::from_row_slice(&su2_coords(&l));
        if !self.in_domain(&x) {
            return Err(escape("chart", &x));
        }
        Ok(x)
    }
    fn chart_inverse(&self, x: &DVector<f64>) -> Result<Element, LieError> {
        if !self.in_domain(x) {
            return Err(escape("chart inverse", x));
        }
        Ok(to_real8(&expm(&su2_from_coords(x.as_slice()))))
    }
    fn left_pullback(&self, p: &[f64], v: &[f64]) -> Option<DVector<f64>> {
        let x = from_real8(p).adjoint() * from_real8(v);
        Some(DVector::from_row_slice(&su2_coords(&x)))
    }
}

impl ChartedLieGroup for U2 {
    fn name(&self) -> &str {
        "u2"
    }
    fn dim(&self) -> usize {
        4
    }
    fn unit(&self) -> Element {
        Su2.unit()
    }
    fn mul(&self, g: &[f64], h: &[f64]) -> Element {
        matrix_mul(g, h)
    }
    fn inv(&self, g: &[f64]) -> Element {
        matrix_inv(g)
    }
    fn in_domain(&self, x: &DVector<f64>) -> bool {
        x.len() == 4 && x[0].abs() + 0.5 * x.rows(1, 3).norm() < PI / 2.0
    }
    fn chart(&self, g: &[f64]) -> Result<DVector<f64>, LieError> {
        let l = logm(&from_real8(g)).ok_or_else(|| LieError::DomainEscape {
            context: "logarithm".into(),
            point: g.to_vec(),
        })?;
        let x = DVector::from_row_slice(&u2_coords(&l));
        if !self.in_domain(&x) {
            return Err(escape("chart", &x));
        }
        Ok(x)
    }
    fn chart_inverse(&self, x: &DVector<f64>) -> Result<Element, LieError> {
        if !self.in_domain(x) {
            return Err(escape("chart inverse", x));
        }
        Ok(to_real8(&expm(&u2_from_coords(x.as_slice()))))
    }
    fn left_pullback(&self, p: &[f64], v: &[f64]) -> Option<DVector<f64>> {
        let x = from_real8(p).adjoint() * from_real8(v);
        Some(DVector::from_row_slice(&u2_coords(&x)))
    }
}

/// The circle `{z ∈ ℂ : |z| = 1}` stored as `(cos θ, sin θ)`, with the
/// angle chart on `(−π, π)`.
#[derive(Clone, Debug, Default)]
pub struct Circle;

impl Circle {
    pub fn from_angle(theta: f64) -> Element {
        vec![theta.cos(), theta.sin()]
    }

    /// Angle in `[0, 2π)`; values within 1e−12 of 2π snap to 0 so that
    /// products of grid points land on exact representatives.
    pub fn angle(g: &[f64]) -> f64 {
        let t = g[1].atan2(g[0]).rem_euclid(TAU);
        if TAU - t < 1e-12 {
            0.0
        } else {
            t
        }
    }

    fn to_complex(g: &[f64]) -> Complex64 {
        Complex64::new(g[0], g[1])
    }
}

impl ChartedLieGroup for Circle {
    fn name(&self) -> &str {
        "circle"
    }
    fn dim(&self) -> usize {
        1
    }
    fn unit(&self) -> Element {
        vec![1.0, 0.0]
    }
    fn mul(&self, g: &[f64], h: &[f64]) -> Element {
        let z = Circle::to_complex(g) * Circle::to_complex(h);
        vec![z.re, z.im]
    }
    fn inv(&self, g: &[f64]) -> Element {
        vec![g[0], -g[1]]
    }
    fn in_domain(&self, x: &DVector<f64>) -> bool {
        x.len() == 1 && x[0].abs() < PI
    }
    fn chart(&self, g: &[f64]) -> Result<DVector<f64>, LieError> {
        let x = DVector::from_element(1, g[1].atan2(g[0]));
        if !self.in_domain(&x) {
            return Err(escape("chart", &x));
        }
        Ok(x)
    }
    fn chart_inverse(&self, x: &DVector<f64>) -> Result<Element, LieError> {
        if !self.in_domain(x) {
            return Err(escape("chart inverse", x));
        }
        Ok(Circle::from_angle(x[0]))
    }
    fn left_pullback(&self, p: &[f64], v: &[f64]) -> Option<DVector<f64>> {
        let w = Circle::to_complex(p).conj() * Circle::to_complex(v);
        Some(DVector::from_element(1, w.im))
    }
}

/// Builtin groups by CLI name: `r<n>`, `r<n>-cubic`, `heisenberg`, `su2`, `u2`, `circle`.
pub fn builtin(name: &str) -> Option<Box<dyn ChartedLieGroup>> {
    match name {
        "heisenberg" => Some(Box::new(Heisenberg)),
        "su2" => Some(Box::new(Su2)),
        "u2" => Some(Box::new(U2)),
        "circle" => Some(Box::new(Circle)),
        _ => {
            let rest = name.strip_prefix('r')?;
            if let Some(n) = rest.strip_suffix("-cubic") {
                let n: usize = n.parse().ok().filter(|&n| n > 0)?;
                Some(Box::new(Additive::with_cubic_chart(n, 0.1)))
            } else {
                let n: usize = rest.parse().ok().filter(|&n| n > 0)?;
                Some(Box::new(Additive::new(n)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn groups() -> Vec<Box<dyn ChartedLieGroup>> {
        ["r2", "r3-cubic", "heisenberg", "su2", "u2", "circle"].iter().map(|n| builtin(n).unwrap()).collect()
    }

    #[test]
    fn chart_round_trip_and_group_laws() {
        for g in groups() {
            let n = g.dim();
            for k in 0..5 {
                let x = DVector::from_fn(n, |i, _| 0.1 * (k as f64 + 1.0) * ((i as f64 + 1.7) * (k as f64 + 0.3)).sin());
                let p = g.chart_inverse(&x).unwrap();
                assert!((g.chart(&p).unwrap() - &x).amax() < 1e-12, "{} φ∘φ⁻¹", g.name());
                let e = g.unit();
                assert!(g.distance(&g.mul(&p, &e), &p) < 1e-14);
                assert!(g.distance(&g.mul(&e, &p), &p) < 1e-14);
                assert!(g.distance(&g.mul(&p, &g.inv(&p)), &e) < 1e-14, "{}", g.name());
            }
            assert!(g.chart(&g.unit()).unwrap().amax() < 1e-15);
        }
    }

    #[test]
    fn domains_refuse() {
        let x = DVector::from_vec(vec![3.5, 0.0, 0.0]);
        assert!(matches!(Su2.chart_inverse(&x), Err(LieError::DomainEscape { .. })));
        assert!(Circle.chart(&Circle::from_angle(PI)).is_err());
        assert!(builtin("r0").is_none() && builtin("so3").is_none());
    }

    #[test]
    fn circle_angle_snaps() {
        let g = Circle.mul(&Circle::from_angle(3.0 * PI / 2.0), &Circle::from_angle(PI / 2.0));
        assert_eq!(Circle::angle(&g), 0.0);
        assert!((Circle::angle(&Circle::from_angle(3.0 * PI / 2.0)) - 3.0 * PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn cubic_inverse_is_exact() {
        for &a in &[-3.0, -0.2, 0.0, 0.7, 10.0] {
            let y = cubic_inverse(0.1, a);
            assert!((0.1 * y * y * y + y - a).abs() < 1e-14);
        }
    }
}
