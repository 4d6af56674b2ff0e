//! Gauss–Legendre rules on `[0, 1]`, the unit square and the unit triangle.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[0, 1]`.
///
/// Newton iteration on the three-term Legendre recurrence from Chebyshev
/// initial guesses; exact for polynomials of degree `2n − 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1, 1] → [0, 1]; nodes come in symmetric pairs.
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the Bonnet recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A rule `Σ w_i f(p_i)` on a reference domain.
#[derive(Clone, Debug)]
pub struct Rule {
    pub points: Vec<[f64; 2]>,
    pub weights: Vec<f64>,
}

impl Rule {
    /// Tensor Gauss rule on the unit square `[0, 1]²`.
    pub fn square(order: usize) -> Rule {
        let (x, w) = gauss_legendre(order);
        let mut points = Vec::with_capacity(order * order);
        let mut weights = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                points.push([x[i], x[j]]);
                weights.push(w[i] * w[j]);
            }
        }
        Rule { points, weights }
    }

    /// Collapsed-square rule on `{t, s ≥ 0, t + s ≤ 1}`: `t = u`,
    /// `s = v(1 − u)`, Jacobian `1 − u`. Weights sum to ½.
    pub fn triangle(order: usize) -> Rule {
        let sq = Rule::square(order);
        let points = sq.points.iter().map(|&[u, v]| [u, v * (1.0 - u)]).collect();
        let weights = sq.points.iter().zip(&sq.weights).map(|(&[u, _], &w)| w * (1.0 - u)).collect();
        Rule { points, weights }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_high_degree_polynomials() {
        for n in 1..=12 {
            let (x, w) = gauss_legendre(n);
            for deg in 0..2 * n {
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                assert!((approx - 1.0 / (deg as f64 + 1.0)).abs() < 1e-14, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn triangle_moments() {
        let r = Rule::triangle(6);
        let integral = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
            r.points.iter().zip(&r.weights).map(|(p, w)| w * f(p[0], p[1])).sum()
        };
        assert!((integral(&|_, _| 1.0) - 0.5).abs() < 1e-15);
        // ∫ t² s over the triangle = 2!·1!/5! = 1/60.
        assert!((integral(&|t, s| t * t * s) - 1.0 / 60.0).abs() < 1e-15);
    }
}
