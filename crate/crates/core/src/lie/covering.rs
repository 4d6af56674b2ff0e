//! The universal covering `ℝ → U(1)` recovered from a winding-number
//! cocycle `Θ : U(1)² → ℤ`.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::group::{ChartedLieGroup, Circle, Element};
use super::LieError;

pub const DEFAULT_RESOLUTION: usize = 64;

/// Winding number of the loop `α_g + g.α_h − α_gh` around `0 ∈ ℂ`, where
/// `α_g(t) = exp(i t θ(g))` uses the section `θ ∈ [0, 2π)`.
///
/// Each leg is sampled at `resolution + 1` points; increments are principal
/// arguments of consecutive quotients and must stay below `π/2`.
pub fn winding_cocycle(g: &[f64], h: &[f64], resolution: usize) -> Result<i64, LieError> {
    if resolution == 0 {
        return Err(LieError::ResolutionTooCoarse("resolution must be positive".into()));
    }
    let (tg, th) = (Circle::angle(g), Circle::angle(h));
    let gh = Circle.mul(g, h);
    let tgh = Circle::angle(&gh);
    let n = resolution as f64;
    let mut points: Vec<Element> = Vec::with_capacity(3 * resolution + 3);
    for k in 0..=resolution {
        points.push(Circle::from_angle(k as f64 / n * tg));
    }
    for k in 0..=resolution {
        points.push(Circle.mul(g, &Circle::from_angle(k as f64 / n * th)));
    }
    for k in (0..=resolution).rev() {
        points.push(Circle::from_angle(k as f64 / n * tgh));
    }
    let mut total = 0.0;
    for w in points.windows(2) {
        let q = Circle.mul(&w[1], &Circle.inv(&w[0]));
        let inc = q[1].atan2(q[0]);
        if inc.abs() > FRAC_PI_2 {
            return Err(LieError::ResolutionTooCoarse(format!("increment {inc:.3} exceeds π/2 at resolution {resolution}")));
        }
        total += inc;
    }
    let turns = total / TAU;
    let k = turns.round();
    if (turns - k).abs() > 1e-6 {
        return Err(LieError::NonFinite(format!("winding {turns} is not an integer")));
    }
    Ok(k as i64)
}

/// `(a, g)·(b, h) = (a + b + Θ(g,h), gh)` on `ℤ × U(1)`.
pub fn covering_mul(x: &(i64, Element), y: &(i64, Element), resolution: usize) -> Result<(i64, Element), LieError> {
    let theta = winding_cocycle(&x.1, &y.1, resolution)?;
    Ok((x.0 + y.0 + theta, Circle.mul(&x.1, &y.1)))
}

/// `(a, g) ↦ 2πa + θ(g)`.
pub fn to_real(x: &(i64, Element)) -> f64 {
    TAU * x.0 as f64 + Circle::angle(&x.1)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringReport {
    pub resolution: usize,
    pub grid: usize,
    /// Triples `(g,h,k)` on the angle grid where `dΘ ≠ 0`.
    pub cocycle_failures: usize,
    /// Pairs where `Θ(g,h) ≠ [θ(g) + θ(h) ≥ 2π]`.
    pub closed_form_mismatches: usize,
    pub pairs: usize,
    /// `max |Φ(xy) − Φ(x) − Φ(y)|` over the random pairs.
    pub max_hom_deviation: f64,
    pub associativity_failures: usize,
}

/// Checks `dΘ = 0` on the `grid³` triples of angles `2πk/grid`, then on
/// `pairs` seeded random pairs that `Φ` is a homomorphism to `(ℝ, +)` and
/// the twisted product is associative.
pub fn covering_group_check(grid: usize, pairs: usize, seed: u64, resolution: usize) -> Result<CoveringReport, LieError> {
    let angles: Vec<Element> = (0..grid).map(|k| Circle::from_angle(TAU * k as f64 / grid as f64)).collect();
    // Θ on the grid, indexed by angle index pairs; grid products stay on the grid.
    let mut table = vec![0i64; grid * grid];
    for i in 0..grid {
        for j in 0..grid {
            table[i * grid + j] = winding_cocycle(&angles[i], &angles[j], resolution)?;
        }
    }
    let t = |i: usize, j: usize| table[i * grid + j];
    let mut cocycle_failures = 0;
    for i in 0..grid {
        for j in 0..grid {
            for k in 0..grid {
                let d = t(j, k) - t((i + j) % grid, k) + t(i, (j + k) % grid) - t(i, j);
                if d != 0 {
                    cocycle_failures += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = || (rng.gen_range(-3i64..=3), Circle::from_angle(rng.gen_range(0.0..TAU)));
    let mut max_hom_deviation: f64 = 0.0;
    let mut closed_form_mismatches = 0;
    let mut associativity_failures = 0;
    for _ in 0..pairs {
        let (x, y, z) = (random(), random(), random());
        let xy = covering_mul(&x, &y, resolution)?;
        max_hom_deviation = max_hom_deviation.max((to_real(&xy) - to_real(&x) - to_real(&y)).abs());
        let expected = i64::from(Circle::angle(&x.1) + Circle::angle(&y.1) >= TAU);
        if xy.0 - x.0 - y.0 != expected {
            closed_form_mismatches += 1;
        }
        let left = covering_mul(&xy, &z, resolution)?;
        let right = covering_mul(&x, &covering_mul(&y, &z, resolution)?, resolution)?;
        if left.0 != right.0 || Circle.distance(&left.1, &right.1) > 1e-12 {
            associativity_failures += 1;
        }
    }
    Ok(CoveringReport {
        resolution,
        grid,
        cocycle_failures,
        closed_form_mismatches,
        pairs,
        max_hom_deviation,
        associativity_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn winding_counts_wraps() {
        let a = Circle::from_angle(1.5 * PI);
        let b = Circle::from_angle(0.75 * PI);
        assert_eq!(winding_cocycle(&a, &b, 64).unwrap(), 1);
        assert_eq!(winding_cocycle(&b, &b, 64).unwrap(), 0);
        assert_eq!(winding_cocycle(&a, &Circle::from_angle(PI / 2.0), 64).unwrap(), 1);
        assert_eq!(winding_cocycle(&Circle.unit(), &a, 64).unwrap(), 0);
    }

    #[test]
    fn coarse_resolution_is_refused() {
        let a = Circle::from_angle(1.9 * PI);
        assert!(matches!(winding_cocycle(&a, &a, 2), Err(LieError::ResolutionTooCoarse(_))));
    }

    #[test]
    fn small_grid_check() {
        let r = covering_group_check(8, 50, 7, DEFAULT_RESOLUTION).unwrap();
        assert_eq!(r.cocycle_failures, 0);
        assert_eq!(r.associativity_failures, 0);
        assert_eq!(r.closed_form_mismatches, 0);
        assert!(r.max_hom_deviation < 1e-12);
    }
}
