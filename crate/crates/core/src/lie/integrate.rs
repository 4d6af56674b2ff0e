//! Integration of left-invariant forms over parametrized simplices and
//! the smooth group cochains built from them.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::algebra::{LieAlgebra, LieAlgebraCocycle};
use super::group::{ChartedLieGroup, Element};
use super::quadrature::Rule;
use super::simplex::{alpha, beta, gamma, SimplexMap};
use super::{LieError, QuadSpec};

/// A left-invariant form given by its value at the unit: a Lie algebra
/// 2-cochain, or a linear map `b : 𝔤 → 𝔞` viewed as a 1-form.
#[derive(Clone, Copy)]
pub enum Form<'a> {
    Two(&'a LieAlgebraCocycle),
    One(&'a DMatrix<f64>),
}

/// `p⁻¹·∂σ/∂u_dir` in algebra coordinates, by central differences of `σ`
/// followed by left translation.
fn pulled_tangent(
    group: &dyn ChartedLieGroup,
    sigma: &SimplexMap,
    params: &[f64],
    base: &[f64],
    dir: usize,
    h: f64,
) -> Result<DVector<f64>, LieError> {
    let mut plus = params.to_vec();
    let mut minus = params.to_vec();
    plus[dir] += h;
    minus[dir] -= h;
    let a = sigma.eval(&plus)?;
    let b = sigma.eval(&minus)?;
    let v: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (x - y) / (2.0 * h)).collect();
    if let Some(w) = group.left_pullback(base, &v) {
        return Ok(w);
    }
    // dφ(e) = id, so the chart of p⁻¹σ differentiates to the pulled tangent.
    let pinv = group.inv(base);
    let ca = group.chart(&group.mul(&pinv, &a))?;
    let cb = group.chart(&group.mul(&pinv, &b))?;
    Ok((ca - cb) / (2.0 * h))
}

fn check_finite(v: DVector<f64>, what: &str) -> Result<DVector<f64>, LieError> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(v)
    } else {
        Err(LieError::NonFinite(what.to_string()))
    }
}

fn integrate_two_form_with(
    group: &dyn ChartedLieGroup,
    omega: &LieAlgebraCocycle,
    sigma: &SimplexMap,
    rule: &Rule,
    h: f64,
) -> Result<DVector<f64>, LieError> {
    if omega.source_dim() != group.dim() {
        return Err(LieError::Shape(format!(
            "2-form on a {}-dimensional algebra, group has dimension {}",
            omega.source_dim(),
            group.dim()
        )));
    }
    let mut acc = DVector::zeros(omega.target_dim());
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        let base = sigma.eval(p)?;
        let xt = pulled_tangent(group, sigma, p, &base, 0, h)?;
        let xs = pulled_tangent(group, sigma, p, &base, 1, h)?;
        acc += omega.eval(&xt, &xs) * *w;
    }
    check_finite(acc, "2-form integral")
}

/// `∫_σ ω^l` (for a 2-simplex parametrized by `(t, s)`, oriented by
/// `∂_t ∧ ∂_s`) or `∫_σ b^l` (for a path).
pub fn integrate_form(
    group: &dyn ChartedLieGroup,
    form: Form,
    simplex: &SimplexMap,
    quad: &QuadSpec,
) -> Result<DVector<f64>, LieError> {
    match form {
        Form::Two(omega) => {
            if simplex.arity != 2 {
                return Err(LieError::Shape("a 2-form needs a 2-simplex".into()));
            }
            integrate_two_form_with(group, omega, simplex, &Rule::triangle(quad.order), quad.tangent_step)
        }
        Form::One(b) => {
            if simplex.arity != 1 {
                return Err(LieError::Shape("a 1-form needs a path".into()));
            }
            if b.ncols() != group.dim() {
                return Err(LieError::Shape(format!("1-form has {} columns, group dimension {}", b.ncols(), group.dim())));
            }
            let (xs, ws) = super::quadrature::gauss_legendre(quad.order);
            let mut acc = DVector::zeros(b.nrows());
            for (t, w) in xs.iter().zip(&ws) {
                let base = simplex.eval(&[*t])?;
                let v = pulled_tangent(group, simplex, &[*t], &base, 0, quad.tangent_step)?;
                acc += b * v * *w;
            }
            check_finite(acc, "1-form integral")
        }
    }
}

/// `F_{ω,β}(g, h) = ∫_{β_{g,h}} ω^l`.
pub fn f_omega_beta(
    group: &dyn ChartedLieGroup,
    omega: &LieAlgebraCocycle,
    g: &[f64],
    h: &[f64],
    quad: &QuadSpec,
) -> Result<DVector<f64>, LieError> {
    integrate_form(group, Form::Two(omega), &beta(group, g, h)?, quad)
}

/// `(dF)(g,h,k) = F(h,k) − F(gh,k) + F(g,hk) − F(g,h)` for trivial action.
pub fn group_coboundary_2(
    group: &dyn ChartedLieGroup,
    f: impl Fn(&[f64], &[f64]) -> Result<DVector<f64>, LieError>,
    g: &[f64],
    h: &[f64],
    k: &[f64],
) -> Result<DVector<f64>, LieError> {
    let gh = group.mul(g, h);
    let hk = group.mul(h, k);
    Ok(f(h, k)? - f(&gh, k)? + f(g, &hk)? - f(g, h)?)
}

/// `(dφ)(g,h) = φ(h) − φ(gh) + φ(g)` for trivial action.
pub fn group_coboundary_1(
    group: &dyn ChartedLieGroup,
    phi: impl Fn(&[f64]) -> Result<DVector<f64>, LieError>,
    g: &[f64],
    h: &[f64],
) -> Result<DVector<f64>, LieError> {
    Ok(phi(h)? - phi(&group.mul(g, h))? + phi(g)?)
}

/// `F_{ω,β}` packaged with its group, form and quadrature settings.
pub struct SmoothGeneralizedCocycle<'a> {
    pub group: &'a dyn ChartedLieGroup,
    pub omega: LieAlgebraCocycle,
    pub quad: QuadSpec,
}

impl<'a> SmoothGeneralizedCocycle<'a> {
    pub fn new(group: &'a dyn ChartedLieGroup, omega: LieAlgebraCocycle, quad: QuadSpec) -> Result<Self, LieError> {
        if omega.source_dim() != group.dim() {
            return Err(LieError::Shape(format!("cocycle on dimension {}, group dimension {}", omega.source_dim(), group.dim())));
        }
        Ok(SmoothGeneralizedCocycle { group, omega, quad })
    }

    pub fn eval(&self, g: &[f64], h: &[f64]) -> Result<DVector<f64>, LieError> {
        f_omega_beta(self.group, &self.omega, g, h, &self.quad)
    }

    /// `dF(g,h,k)`; vanishes up to quadrature error for a Lie algebra cocycle.
    pub fn defect(&self, g: &[f64], h: &[f64], k: &[f64]) -> Result<DVector<f64>, LieError> {
        group_coboundary_2(self.group, |a, b| self.eval(a, b), g, h, k)
    }
}

/// `φ_b(g) = ∫_{α_g} b^l`.
pub fn coboundary_from_b(
    group: &dyn ChartedLieGroup,
    b: &DMatrix<f64>,
    g: &[f64],
    quad: &QuadSpec,
) -> Result<DVector<f64>, LieError> {
    integrate_form(group, Form::One(b), &alpha(group, g)?, quad)
}

/// `F_{b∘[,],β}(g,h)` against `(dφ_b)(g,h)`.
#[derive(Clone, Debug, Serialize)]
pub struct StokesCheck {
    pub f: Vec<f64>,
    pub d_phi: Vec<f64>,
    /// `max |F − dφ_b|`.
    pub difference: f64,
    /// `max |F + dφ_b|`.
    pub sum: f64,
}

pub fn stokes_check(
    group: &dyn ChartedLieGroup,
    algebra: &LieAlgebra,
    b: &DMatrix<f64>,
    g: &[f64],
    h: &[f64],
    quad: &QuadSpec,
) -> Result<StokesCheck, LieError> {
    let omega = LieAlgebraCocycle::coboundary(algebra, b);
    let f = f_omega_beta(group, &omega, g, h, quad)?;
    let dphi = group_coboundary_1(group, |x| coboundary_from_b(group, b, x, quad), g, h)?;
    Ok(StokesCheck {
        difference: (&f - &dphi).amax(),
        sum: (&f + &dphi).amax(),
        f: f.iter().copied().collect(),
        d_phi: dphi.iter().copied().collect(),
    })
}

/// `F_{ω,β} − F_{ω,β'}` against `dφ_γ` with `φ_γ(g) = ∫_{γ_g} ω^l`, for two
/// charts on the same group.
#[derive(Clone, Debug, Serialize)]
pub struct ChartIndependence {
    pub f_phi: Vec<f64>,
    pub f_psi: Vec<f64>,
    pub d_phi_gamma: Vec<f64>,
    /// `max |F_{ω,β} − F_{ω,β'} − dφ_γ|`.
    pub residual: f64,
}

pub fn chart_independence(
    phi: &dyn ChartedLieGroup,
    psi: &dyn ChartedLieGroup,
    omega: &LieAlgebraCocycle,
    g: &[f64],
    h: &[f64],
    quad: &QuadSpec,
) -> Result<ChartIndependence, LieError> {
    let f1 = f_omega_beta(phi, omega, g, h, quad)?;
    let f2 = f_omega_beta(psi, omega, g, h, quad)?;
    let phi_gamma = |x: &[f64]| integrate_form(phi, Form::Two(omega), &gamma(phi, psi, x)?, quad);
    let dg = group_coboundary_1(phi, phi_gamma, g, h)?;
    Ok(ChartIndependence {
        residual: (&f1 - &f2 - &dg).amax(),
        f_phi: f1.iter().copied().collect(),
        f_psi: f2.iter().copied().collect(),
        d_phi_gamma: dg.iter().copied().collect(),
    })
}

/// Edge samples per side used to confirm a sphere map is constant at `e`
/// on the boundary of the square.
const BOUNDARY_SAMPLES: usize = 17;
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// `∫_σ ω^l` for `σ : [0,1]² → G` sending the whole boundary to `e`.
pub fn period_sphere(
    group: &dyn ChartedLieGroup,
    omega: &LieAlgebraCocycle,
    sigma: &SimplexMap,
    quad: &QuadSpec,
) -> Result<DVector<f64>, LieError> {
    if sigma.arity != 2 {
        return Err(LieError::Shape("a sphere is parametrized by the square".into()));
    }
    let e = group.unit();
    let mut worst: f64 = 0.0;
    for k in 0..BOUNDARY_SAMPLES {
        let u = k as f64 / (BOUNDARY_SAMPLES - 1) as f64;
        for p in [[u, 0.0], [u, 1.0], [0.0, u], [1.0, u]] {
            worst = worst.max(group.distance(&sigma.eval(&p)?, &e));
        }
    }
    if worst > BOUNDARY_TOLERANCE {
        return Err(LieError::BoundaryNotConstant(worst));
    }
    integrate_two_form_with(group, omega, sigma, &Rule::square(quad.order), quad.tangent_step)
}

/// A finite-difference derivative with an estimate of its rounding floor.
#[derive(Clone, Debug, Serialize)]
pub struct Derived {
    pub value: Vec<f64>,
    /// Absolute error expected from cancellation alone.
    pub rounding_estimate: f64,
    pub warning: Option<String>,
}

/// Relative size of rounding error, compared with the derived value, above
/// which a result is flagged.
const CANCELLATION_RATIO: f64 = 1e-3;

fn derived(value: DVector<f64>, sample_scale: f64, divisor: f64, what: &str) -> Result<Derived, LieError> {
    let value = check_finite(value, what)?;
    let rounding_estimate = 4.0 * f64::EPSILON * sample_scale.max(f64::MIN_POSITIVE) / divisor;
    let warning = (rounding_estimate > CANCELLATION_RATIO * value.amax().max(1.0)).then(|| {
        format!("cancellation dominates {what}: rounding floor {rounding_estimate:e}; increase the step")
    });
    Ok(Derived { value: value.iter().copied().collect(), rounding_estimate, warning })
}

/// `L_F(x,y) = D(x,y) − D(y,x)` where `D` is the mixed second difference
/// of `(a, b) ↦ F(φ⁻¹(a), φ⁻¹(b))` at `(0, 0)` in directions `x` and `y`.
pub fn derive_lf(
    group: &dyn ChartedLieGroup,
    f: impl Fn(&[f64], &[f64]) -> Result<DVector<f64>, LieError>,
    x: &DVector<f64>,
    y: &DVector<f64>,
    step: f64,
) -> Result<Derived, LieError> {
    let n = group.dim();
    if x.len() != n || y.len() != n {
        return Err(LieError::Shape(format!("directions must have length {n}")));
    }
    let mut scale: f64 = 0.0;
    let mut d = |u: &DVector<f64>, v: &DVector<f64>| -> Result<DVector<f64>, LieError> {
        let pt = |a: f64, w: &DVector<f64>| group.chart_inverse(&(w * (a * step)));
        let mut acc: Option<DVector<f64>> = None;
        for (a, b, sign) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
            let val = f(&pt(a, u)?, &pt(b, v)?)?;
            scale = scale.max(val.amax());
            acc = Some(match acc {
                None => val * sign,
                Some(s) => s + val * sign,
            });
        }
        Ok(acc.unwrap_or_else(|| DVector::zeros(0)) / (4.0 * step * step))
    };
    let value = d(x, y)? - d(y, x)?;
    derived(value, scale, step * step, "L_F")
}

/// Mixed second difference at `(0,0)` of `(t, s) ↦ m(t·u, s·v)`.
pub(crate) fn mixed_difference(
    m: &dyn Fn(&DVector<f64>, &DVector<f64>) -> Result<DVector<f64>, LieError>,
    u: &DVector<f64>,
    v: &DVector<f64>,
    step: f64,
    scale: &mut f64,
) -> Result<DVector<f64>, LieError> {
    let mut acc = DVector::zeros(u.len());
    for (a, b, sign) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
        let val = m(&(u * (a * step)), &(v * (b * step)))?;
        *scale = scale.max(val.amax());
        acc += val * sign;
    }
    Ok(acc / (4.0 * step * step))
}

pub(crate) fn derived_bracket_value(value: DVector<f64>, scale: f64, step: f64) -> Result<Derived, LieError> {
    derived(value, scale, step * step, "derived bracket")
}

/// The element `φ⁻¹(x)`; convenience for callers holding chart points.
pub fn element_at(group: &dyn ChartedLieGroup, x: &[f64]) -> Result<Element, LieError> {
    group.chart_inverse(&DVector::from_row_slice(x))
}

#[cfg(test)]
mod tests {
    use super::super::group::{builtin, Additive, Heisenberg, Su2};
    use super::super::algebra::Bilinear;
    use super::super::simplex::SimplexKind;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> QuadSpec {
        QuadSpec::default()
    }

    fn su2_at(x: [f64; 3]) -> Element {
        Su2.chart_inverse(&DVector::from_row_slice(&x)).unwrap()
    }

    fn random_b(rng: &mut ChaCha8Rng) -> DMatrix<f64> {
        DMatrix::from_fn(1, 3, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn constant_form_over_unit_simplex() {
        let r2 = Additive::new(2);
        let w = LieAlgebraCocycle::symplectic_r2().scaled(3.0);
        let s = SimplexMap::new(2, SimplexKind::User, |p| Ok(p.to_vec()));
        let v = integrate_form(&r2, Form::Two(&w), &s, &q()).unwrap();
        assert!((v[0] - 1.5).abs() < 1e-10);
        // Rank-1 image.
        let line = SimplexMap::new(2, SimplexKind::User, |p| Ok(vec![p[0] + p[1], 2.0 * (p[0] + p[1])]));
        assert!(integrate_form(&r2, Form::Two(&w), &line, &q()).unwrap()[0].abs() < 1e-12);
        assert!(matches!(integrate_form(&r2, Form::Two(&w), &alpha(&r2, &[1.0, 0.0]).unwrap(), &q()), Err(LieError::Shape(_))));
    }

    #[test]
    fn symplectic_plane_gives_half_omega() {
        let r2 = Additive::new(2);
        let w = LieAlgebraCocycle::symplectic_r2();
        let f = f_omega_beta(&r2, &w, &[1.0, 0.0], &[0.0, 1.0], &QuadSpec { order: 2, ..q() }).unwrap();
        assert!((f[0] - 0.5).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g: Vec<f64> = (0..2).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let h: Vec<f64> = (0..2).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let f = f_omega_beta(&r2, &w, &g, &h, &q()).unwrap();
            let oracle = 0.5 * (g[0] * h[1] - g[1] * h[0]);
            assert!((f[0] - oracle).abs() < 1e-9 * (1.0 + oracle.abs()));
        }
    }

    #[test]
    fn normalization_at_unit() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in ["heisenberg", "su2", "u2", "r3-cubic"] {
            let g = builtin(name).unwrap();
            let n = g.dim();
            let table = Bilinear::from_fn(2, n, |_, i, j| if i < j { ((i + 2 * j) as f64).sin() } else if i > j { -((j + 2 * i) as f64).sin() } else { 0.0 });
            let w = LieAlgebraCocycle::new(table).unwrap();
            let x = g.chart_inverse(&DVector::from_fn(n, |_, _| rng.gen_range(-0.4..0.4))).unwrap();
            let e = g.unit();
            assert!(f_omega_beta(g.as_ref(), &w, &e, &x, &q()).unwrap().amax() < 1e-10, "{name}");
            assert!(f_omega_beta(g.as_ref(), &w, &x, &e, &q()).unwrap().amax() < 1e-10, "{name}");
        }
    }

    #[test]
    fn defect_vanishes() {
        let r2 = Additive::new(2);
        let f = SmoothGeneralizedCocycle::new(&r2, LieAlgebraCocycle::symplectic_r2(), q()).unwrap();
        assert!(f.defect(&[1.0, 2.0], &[-0.5, 0.3], &[2.0, -1.0]).unwrap().amax() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = random_b(&mut rng);
        let w = LieAlgebraCocycle::coboundary(&super::super::LieAlgebra::su2(), &b);
        let f = SmoothGeneralizedCocycle::new(&Su2, w, q()).unwrap();
        let d = f.defect(&su2_at([0.2, 0.1, -0.3]), &su2_at([0.0, -0.3, 0.2]), &su2_at([0.25, 0.25, 0.1])).unwrap();
        assert!(d.amax() < 1e-6);
    }

    #[test]
    fn quadrature_order_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let w = LieAlgebraCocycle::coboundary(&super::super::LieAlgebra::su2(), &random_b(&mut rng));
        let (g, h) = (su2_at([0.3, -0.2, 0.1]), su2_at([-0.1, 0.4, 0.2]));
        let a = f_omega_beta(&Su2, &w, &g, &h, &q()).unwrap();
        let b = f_omega_beta(&Su2, &w, &g, &h, &QuadSpec { order: 20, ..q() }).unwrap();
        assert!((a - b).amax() < 1e-8);
    }

    #[test]
    fn lf_recovers_omega() {
        let r2 = Additive::new(2);
        let w = LieAlgebraCocycle::symplectic_r2();
        let f = SmoothGeneralizedCocycle::new(&r2, w.clone(), q()).unwrap();
        let (x, y) = (DVector::from_vec(vec![1.0, 0.0]), DVector::from_vec(vec![0.0, 1.0]));
        let l = derive_lf(&r2, |a, b| f.eval(a, b), &x, &y, 1e-3).unwrap();
        assert!((l.value[0] - 1.0).abs() < 1e-4);
        let l = derive_lf(&r2, |a, b| f.eval(a, b), &x, &x, 1e-3).unwrap();
        assert_eq!(l.value[0], 0.0);

        let su2 = super::super::LieAlgebra::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let w = LieAlgebraCocycle::coboundary(&su2, &random_b(&mut rng));
        let f = SmoothGeneralizedCocycle::new(&Su2, w.clone(), q()).unwrap();
        let step = 1e-2;
        for _ in 0..3 {
            let x = DVector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0));
            let y = DVector::from_fn(3, |_, _| rng.gen_range(-1.0..1.0));
            let l = derive_lf(&Su2, |a, b| f.eval(a, b), &x, &y, step).unwrap();
            assert!((l.value[0] - w.eval(&x, &y)[0]).abs() < 1e-4);
            // Bilinearity: λ-scaling within 5·step².
            let l2 = derive_lf(&Su2, |a, b| f.eval(a, b), &(&x * 0.5), &y, step).unwrap();
            assert!((l2.value[0] - 0.5 * l.value[0]).abs() < 5.0 * step * step);
        }
    }

    #[test]
    fn tiny_step_warns() {
        let r2 = Additive::new(2);
        let f = SmoothGeneralizedCocycle::new(&r2, LieAlgebraCocycle::symplectic_r2(), q()).unwrap();
        let (x, y) = (DVector::from_vec(vec![1.0, 0.0]), DVector::from_vec(vec![0.0, 1.0]));
        let f_big = |a: &[f64], b: &[f64]| Ok(f.eval(a, b)? + DVector::from_element(1, 1e6));
        assert!(derive_lf(&r2, f_big, &x, &y, 1e-7).unwrap().warning.is_some());
        assert!(derive_lf(&r2, |a, b| f.eval(a, b), &x, &y, 1e-3).unwrap().warning.is_none());
    }

    #[test]
    fn line_integrals() {
        let r3 = Additive::new(3);
        let b = DMatrix::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 0.0, -1.0, 0.5]);
        let g = [0.5, -1.0, 2.0];
        let phi = coboundary_from_b(&r3, &b, &g, &q()).unwrap();
        let oracle = &b * DVector::from_row_slice(&g);
        assert!((phi - oracle).amax() < 1e-10);
        assert!(coboundary_from_b(&Heisenberg, &DMatrix::zeros(1, 3), &[0.3, 0.1, 0.2], &q()).unwrap().amax() == 0.0);
    }

    #[test]
    fn coboundary_cocycle_integrates_to_minus_d_phi() {
        // ∫_β (b∘[,])^l = −∫_∂β b^l, since d(b^l)(X,Y) = −b([X,Y]) on
        // left-invariant fields.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let su2 = super::super::LieAlgebra::su2();
        for _ in 0..3 {
            let b = random_b(&mut rng);
            let g = su2_at([0.2, -0.3, 0.1]);
            let h = su2_at([0.1, 0.2, -0.25]);
            let s = stokes_check(&Su2, &su2, &b, &g, &h, &q()).unwrap();
            assert!(s.sum < 1e-9, "{s:?}");
        }
    }

    #[test]
    fn charts_differ_by_gamma_coboundary() {
        let (phi, psi) = (Additive::new(2), Additive::with_cubic_chart(2, 0.1));
        let w = LieAlgebraCocycle::symplectic_r2();
        for (g, h) in [([0.7, -0.3], [0.2, 0.9]), ([-1.0, 0.5], [1.5, 1.0])] {
            let c = chart_independence(&phi, &psi, &w, &g, &h, &q()).unwrap();
            assert!(c.residual < 1e-5, "{c:?}");
            assert!((c.f_phi[0] - c.f_psi[0]).abs() > 1e-3);
        }
    }

    fn bump(amp: [f64; 3]) -> impl Fn(&[f64]) -> Result<Element, LieError> {
        move |p: &[f64]| {
            let s = (std::f64::consts::PI * p[0]).sin() * (std::f64::consts::PI * p[1]).sin();
            let x = DVector::from_fn(3, |i, _| s * amp[i] * (1.0 + (i as f64 + 1.0) * p[0] * p[1] - p[i % 2]));
            Su2.chart_inverse(&x)
        }
    }

    #[test]
    fn spheres() {
        let su2 = super::super::LieAlgebra::su2();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let w = LieAlgebraCocycle::coboundary(&su2, &random_b(&mut rng));
        let constant = SimplexMap::new(2, SimplexKind::User, |_| Ok(Su2.unit()));
        assert!(period_sphere(&Su2, &w, &constant, &q()).unwrap().amax() < 1e-15);
        let s = SimplexMap::new(2, SimplexKind::User, bump([1.2, -0.8, 2.0]));
        assert!(period_sphere(&Su2, &w, &s, &q()).unwrap().amax() < 1e-4);
        let open = SimplexMap::new(2, SimplexKind::User, |p| Su2.chart_inverse(&DVector::from_vec(vec![p[0], 0.0, 0.0])));
        assert!(matches!(period_sphere(&Su2, &w, &open, &q()), Err(LieError::BoundaryNotConstant(_))));
        let r2 = Additive::new(2);
        let plane = SimplexMap::new(2, SimplexKind::User, |p| {
            let s = (std::f64::consts::PI * p[0]).sin() * (std::f64::consts::PI * p[1]).sin();
            Ok(vec![s * (1.0 + p[0]), s * p[1] * p[1]])
        });
        assert!(period_sphere(&r2, &LieAlgebraCocycle::symplectic_r2(), &plane, &q()).unwrap().amax() < 1e-10);
    }
}
