//! Brackets recovered from multiplications by second differences, the
//! Lie III pipeline for algebras with abelian `𝔤/𝔷(𝔤)`, and naturality of
//! the matrix exponential.

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::{null_space, Bilinear, LieAlgebra, LieAlgebraCocycle};
use super::group::{Additive, AdditiveChart, ChartedLieGroup};
use super::integrate::{derived_bracket_value, f_omega_beta, mixed_difference};
use super::matrix::{expm, su2_from_coords, u2_from_coords};
use super::{LieError, QuadSpec};

/// A bracket table with the rounding floor of its finite differences.
#[derive(Clone, Debug, Serialize)]
pub struct BracketEstimate {
    pub bracket: Bilinear,
    pub rounding_estimate: f64,
    pub warning: Option<String>,
}

type Mult<'a> = dyn Fn(&DVector<f64>, &DVector<f64>) -> Result<DVector<f64>, LieError> + 'a;

/// `[e_i, e_j] = b(e_i, e_j) − b(e_j, e_i)` where `b` is the mixed second
/// difference of a multiplication `m` given in chart coordinates of `ℝⁿ`.
/// Skewness is exact: only `i < j` is computed.
pub fn derive_bracket(n: usize, m: &Mult, step: f64) -> Result<BracketEstimate, LieError> {
    let basis = |i: usize| DVector::from_fn(n, |k, _| if k == i { 1.0 } else { 0.0 });
    let mut table = Bilinear::zero(n, n);
    let mut scale: f64 = 0.0;
    let mut largest = DVector::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            let (u, v) = (basis(i), basis(j));
            let c = mixed_difference(m, &u, &v, step, &mut scale)? - mixed_difference(m, &v, &u, step, &mut scale)?;
            for k in 0..n {
                table.set(k, i, j, c[k]);
                table.set(k, j, i, 0.0 - c[k]);
                largest[k] = f64::max(largest[k], c[k].abs());
            }
        }
    }
    let d = derived_bracket_value(largest, scale, step)?;
    Ok(BracketEstimate { bracket: table, rounding_estimate: d.rounding_estimate, warning: d.warning })
}

/// `derive_bracket` for the chart product `x * y` of a group.
pub fn derive_bracket_group(group: &dyn ChartedLieGroup, step: f64) -> Result<BracketEstimate, LieError> {
    derive_bracket(group.dim(), &|x, y| group.star(x, y), step)
}

/// The Lie algebra of a builtin group, in the basis of its chart.
pub fn builtin_algebra(name: &str) -> Option<LieAlgebra> {
    match name {
        "heisenberg" => Some(LieAlgebra::heisenberg()),
        "su2" => Some(LieAlgebra::su2()),
        "u2" => Some(LieAlgebra::u2()),
        "circle" => Some(LieAlgebra::abelian(1)),
        _ => {
            let rest = name.strip_prefix('r')?;
            let n = rest.strip_suffix("-cubic").unwrap_or(rest);
            n.parse().ok().filter(|&n| n > 0).map(LieAlgebra::abelian)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub quad: QuadSpec,
    pub fd_step: f64,
    /// `ω(x,y) = [x,y]` on `𝔤_ad = 𝔤/𝔷(𝔤)`, in the chosen complement basis.
    pub omega: Bilinear,
    /// Derived bracket of the objects of the integrated 2-group, expressed
    /// in the original basis of `𝔤`.
    pub derived: Bilinear,
    pub max_deviation: f64,
    pub rounding_estimate: f64,
    pub warning: Option<String>,
}

/// Integrates `𝔤` with `[𝔤,𝔤] ⊆ 𝔷(𝔤)` through the central extension
/// `𝔷 → 𝔤 → 𝔤_ad`: `ω` is the center component of the bracket of lifts,
/// `G_ad = ℝ^{n−k}` carries the given chart, objects `𝔷 × G_ad` multiply by
/// `(z,g)(w,h) = (z + w + F_{ω,β}(g,h), gh)`, and the bracket of that
/// multiplication is compared with `𝔤`.
pub fn lie3_pipeline(algebra: &LieAlgebra, chart: AdditiveChart, quad: QuadSpec, fd_step: f64) -> Result<PipelineReport, LieError> {
    let n = algebra.dim();
    let z = algebra.center();
    let k = z.ncols();
    if k == 0 {
        return Err(LieError::Unsupported("the algebra has trivial center".into()));
    }
    if k == n {
        return Err(LieError::Unsupported("abelian algebra: 𝔤_ad is zero".into()));
    }
    let w = null_space(&z.transpose(), 1e-12);
    let lift = |i: usize| w.column(i).into_owned();
    let r = n - k;
    let mut ad_defect: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            ad_defect = ad_defect.max((w.transpose() * algebra.bracket(&lift(i), &lift(j))).amax());
        }
    }
    if ad_defect > 1e-10 {
        return Err(LieError::Unsupported(format!("𝔤/𝔷(𝔤) is not abelian (defect {ad_defect:e})")));
    }
    let omega_table = Bilinear::from_fn(k, r, |c, i, j| (z.column(c).transpose() * algebra.bracket(&lift(i), &lift(j)))[0]);
    let omega = LieAlgebraCocycle::new(omega_table.clone())?;
    let g_ad = match chart {
        AdditiveChart::Linear => Additive::new(r),
        AdditiveChart::Cubic(c) => Additive::with_cubic_chart(r, c),
    };

    // Objects in coordinates (z, φ(g)).
    let m0 = |u: &DVector<f64>, v: &DVector<f64>| -> Result<DVector<f64>, LieError> {
        let (zu, xu) = (u.rows(0, k), u.rows(k, r).into_owned());
        let (zv, xv) = (v.rows(0, k), v.rows(k, r).into_owned());
        let (g, h) = (g_ad.chart_inverse(&xu)?, g_ad.chart_inverse(&xv)?);
        let f = f_omega_beta(&g_ad, &omega, &g, &h, &quad)?;
        let x = g_ad.chart(&g_ad.mul(&g, &h))?;
        let mut out = DVector::zeros(n);
        out.rows_mut(0, k).copy_from(&(zu + zv + f));
        out.rows_mut(k, r).copy_from(&x);
        Ok(out)
    };
    let est = derive_bracket(n, &m0, fd_step)?;
    let mut p = DMatrix::zeros(n, n);
    p.columns_mut(0, k).copy_from(&z);
    p.columns_mut(k, r).copy_from(&w);
    let derived = est.bracket.change_basis(&p);
    Ok(PipelineReport {
        algebra_dim: n,
        center_dim: k,
        quad,
        fd_step,
        max_deviation: derived.max_deviation(algebra.structure_constants()),
        omega: omega_table,
        derived,
        rounding_estimate: est.rounding_estimate,
        warning: est.warning,
    })
}

/// The pipeline for the Heisenberg algebra with the linear chart on `ℝ²`.
pub fn lie3_pipeline_heisenberg(quad: QuadSpec, fd_step: f64) -> Result<PipelineReport, LieError> {
    lie3_pipeline(&LieAlgebra::heisenberg(), AdditiveChart::Linear, quad, fd_step)
}

/// Homomorphisms between the matrix builtins, with their differentials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixHom {
    Su2Identity,
    U2Identity,
    Su2IntoU2,
    /// `det : U(2) → U(1)` with differential `tr`.
    DetU2,
}

impl MatrixHom {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "su2-identity" => Some(MatrixHom::Su2Identity),
            "u2-identity" => Some(MatrixHom::U2Identity),
            "su2-into-u2" => Some(MatrixHom::Su2IntoU2),
            "det-u2" => Some(MatrixHom::DetU2),
            _ => None,
        }
    }

    fn source_dim(self) -> usize {
        match self {
            MatrixHom::Su2Identity | MatrixHom::Su2IntoU2 => 3,
            MatrixHom::U2Identity | MatrixHom::DetU2 => 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalityReport {
    pub hom: MatrixHom,
    pub samples: usize,
    /// `max |α(exp x) − exp(dα x)|` over matrix entries.
    pub max_deviation: f64,
}

fn entry_distance(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `α(exp x) = exp(dα(e) x)` on seeded random `x` with `|x_i| ≤ 2`.
pub fn exp_naturality_check(hom: MatrixHom, samples: usize, seed: u64) -> NaturalityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let x: Vec<f64> = (0..hom.source_dim()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let dev = match hom {
            MatrixHom::Su2Identity => {
                let m = su2_from_coords(&x);
                entry_distance(&expm(&m), &expm(&m))
            }
            MatrixHom::U2Identity => {
                let m = u2_from_coords(&x);
                entry_distance(&expm(&m), &expm(&m))
            }
            MatrixHom::Su2IntoU2 => {
                // dα is the inclusion su(2) ⊂ u(2): coordinates (0, x).
                let image = u2_from_coords(&[0.0, x[0], x[1], x[2]]);
                entry_distance(&expm(&su2_from_coords(&x)), &expm(&image))
            }
            MatrixHom::DetU2 => {
                let m = u2_from_coords(&x);
                let lhs = expm(&m).determinant();
                let rhs = m.trace().exp();
                (lhs - rhs).norm()
            }
        };
        worst = worst.max(dev);
    }
    NaturalityReport { hom, samples, max_deviation: worst }
}

#[cfg(test)]
mod tests {
    use super::super::group::{builtin, Heisenberg, Su2};
    use super::*;

    #[test]
    fn brackets_of_builtins() {
        let est = derive_bracket_group(&Su2, 1e-3).unwrap();
        assert!(est.bracket.max_deviation(LieAlgebra::su2().structure_constants()) < 1e-4);
        assert_eq!(est.bracket.skew_defect(), 0.0);
        let est = derive_bracket_group(&Heisenberg, 1e-3).unwrap();
        assert!(est.bracket.max_deviation(LieAlgebra::heisenberg().structure_constants()) < 1e-8);
        let est = derive_bracket_group(builtin("r3").unwrap().as_ref(), 1e-3).unwrap();
        assert_eq!(est.bracket.max_deviation(&Bilinear::zero(3, 3)), 0.0);
    }

    #[test]
    fn builtin_algebras_match_their_groups() {
        for name in ["heisenberg", "su2", "u2", "circle", "r2", "r2-cubic"] {
            let g = builtin(name).unwrap();
            let a = builtin_algebra(name).unwrap();
            let est = derive_bracket_group(g.as_ref(), 1e-3).unwrap();
            assert!(est.bracket.max_deviation(a.structure_constants()) < 1e-4, "{name}");
        }
    }

    #[test]
    fn heisenberg_pipeline() {
        let r = lie3_pipeline_heisenberg(QuadSpec::default(), 1e-3).unwrap();
        assert_eq!((r.algebra_dim, r.center_dim), (3, 1));
        assert!(r.max_deviation < 1e-4);
        // With a nonlinear chart on G_ad the scheme has a visible O(step²) term.
        let coarse = lie3_pipeline(&LieAlgebra::heisenberg(), AdditiveChart::Cubic(0.1), QuadSpec::default(), 1e-2).unwrap();
        let fine = lie3_pipeline(&LieAlgebra::heisenberg(), AdditiveChart::Cubic(0.1), QuadSpec::default(), 5e-3).unwrap();
        let ratio = coarse.max_deviation / fine.max_deviation;
        assert!((3.5..4.5).contains(&ratio), "{ratio}");
    }

    #[test]
    fn pipeline_scales_with_omega() {
        let scaled = LieAlgebra::new(LieAlgebra::heisenberg().structure_constants().scaled(2.5)).unwrap();
        let r = lie3_pipeline(&scaled, AdditiveChart::Linear, QuadSpec::default(), 1e-3).unwrap();
        assert!(r.max_deviation < 1e-4);
        assert!((r.derived.get(2, 0, 1) - 2.5).abs() < 1e-4);
    }

    #[test]
    fn pipeline_refusals() {
        let q = QuadSpec::default();
        assert!(matches!(lie3_pipeline(&LieAlgebra::su2(), AdditiveChart::Linear, q, 1e-3), Err(LieError::Unsupported(_))));
        assert!(matches!(lie3_pipeline(&LieAlgebra::abelian(2), AdditiveChart::Linear, q, 1e-3), Err(LieError::Unsupported(_))));
    }

    #[test]
    fn exponential_is_natural() {
        for hom in [MatrixHom::Su2Identity, MatrixHom::U2Identity, MatrixHom::Su2IntoU2, MatrixHom::DetU2] {
            let r = exp_naturality_check(hom, 50, 1);
            assert!(r.max_deviation <= 1e-10, "{hom:?} {}", r.max_deviation);
        }
        assert_eq!(MatrixHom::parse("det-u2"), Some(MatrixHom::DetU2));
    }
}
