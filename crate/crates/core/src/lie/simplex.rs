//! Paths and 2-simplices built from a chart: `α_g`, `β_{g,h}` and `γ_g`.

use nalgebra::DVector;
use serde::Serialize;

use super::group::{ChartedLieGroup, Element};
use super::LieError;

/// Below this value of `t + s` the removable singularity of `γ_g` is
/// replaced by its limit `e`.
pub const GAMMA_SINGULAR_CUTOFF: f64 = 1e-8;

/// `γ_g(t,s)` is Lipschitz near the origin, so at radius 1e−7 it lies
/// within a small multiple of that of `e`.
const GAMMA_LIMIT_TOLERANCE: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimplexKind {
    Alpha,
    Beta,
    Gamma,
    User,
}

type MapFn<'a> = Box<dyn Fn(&[f64]) -> Result<Element, LieError> + Send + Sync + 'a>;

/// A smooth map from `Δ⁽¹⁾ = [0, 1]` or from a 2-dimensional parameter
/// domain (triangle or square) into the group.
pub struct SimplexMap<'a> {
    pub arity: usize,
    pub kind: SimplexKind,
    map: MapFn<'a>,
}

impl<'a> SimplexMap<'a> {
    pub fn new(arity: usize, kind: SimplexKind, map: impl Fn(&[f64]) -> Result<Element, LieError> + Send + Sync + 'a) -> Self {
        assert!(arity == 1 || arity == 2, "simplices have arity 1 or 2");
        SimplexMap { arity, kind, map: Box::new(map) }
    }

    pub fn eval(&self, p: &[f64]) -> Result<Element, LieError> {
        debug_assert_eq!(p.len(), self.arity);
        (self.map)(p)
    }
}

fn at(context: &str, params: &[f64], err: LieError) -> LieError {
    match err {
        LieError::DomainEscape { point, .. } => LieError::DomainEscape {
            context: format!("{context} at {params:?}"),
            point,
        },
        other => other,
    }
}

/// `α_g(t) = φ⁻¹(t·g̃)`.
pub fn alpha<'a>(group: &'a dyn ChartedLieGroup, g: &[f64]) -> Result<SimplexMap<'a>, LieError> {
    let gt = group.chart(g)?;
    Ok(SimplexMap::new(1, SimplexKind::Alpha, move |p| {
        group.chart_inverse(&(&gt * p[0])).map_err(|e| at("α", p, e))
    }))
}

/// `β_{g,h}(t,s) = φ⁻¹(t(g̃ * s h̃) + s(g̃ * (1−t) h̃))`, parameters `(t, s)`.
pub fn beta<'a>(group: &'a dyn ChartedLieGroup, g: &[f64], h: &[f64]) -> Result<SimplexMap<'a>, LieError> {
    let gt = group.chart(g)?;
    let ht = group.chart(h)?;
    Ok(SimplexMap::new(2, SimplexKind::Beta, move |p| {
        let (t, s) = (p[0], p[1]);
        let inner = || -> Result<Element, LieError> {
            let a = group.star(&gt, &(&ht * s))?;
            let b = group.star(&gt, &(&ht * (1.0 - t)))?;
            group.chart_inverse(&(a * t + b * s))
        };
        inner().map_err(|e| at("β", p, e))
    }))
}

/// `γ_g(s,t) = φ⁻¹( s(1−t)/(t+s) · φ(ψ⁻¹((t+s)ḡ)) + t(1+s) g̃ )` for
/// charts `φ` (of `phi`) and `ψ` (of `psi`) on the same group.
///
/// Parameters are passed as `(t, s)` so that with the orientation of the
/// integrator the boundary reads `α_g + g.c_e − α'_g`.
pub fn gamma<'a>(phi: &'a dyn ChartedLieGroup, psi: &'a dyn ChartedLieGroup, g: &[f64]) -> Result<SimplexMap<'a>, LieError> {
    let gt = phi.chart(g)?;
    let gb = psi.chart(g)?;
    let unit = phi.unit();
    Ok(SimplexMap::new(2, SimplexKind::Gamma, move |p| {
        let (t, s) = (p[0], p[1]);
        if (t + s).abs() < GAMMA_SINGULAR_CUTOFF {
            return Ok(unit.clone());
        }
        let inner = || -> Result<Element, LieError> {
            let q = phi.chart(&psi.chart_inverse(&(&gb * (t + s)))?)?;
            phi.chart_inverse(&(q * (s * (1.0 - t) / (t + s)) + &gt * (t * (1.0 + s))))
        };
        inner().map_err(|e| at("γ", p, e))
    }))
}

/// The paths `α_g` for every element and `β_{g,h}` for every ordered pair.
pub struct ChartSimplices<'a> {
    pub alphas: Vec<SimplexMap<'a>>,
    /// `((i, j), β_{g_i, g_j})`.
    pub betas: Vec<((usize, usize), SimplexMap<'a>)>,
}

pub fn chart_simplices<'a>(group: &'a dyn ChartedLieGroup, elements: &[Element]) -> Result<ChartSimplices<'a>, LieError> {
    let alphas = elements.iter().map(|g| alpha(group, g)).collect::<Result<Vec<_>, _>>()?;
    let mut betas = Vec::new();
    for (i, g) in elements.iter().enumerate() {
        for (j, h) in elements.iter().enumerate() {
            betas.push(((i, j), beta(group, g, h)?));
        }
    }
    Ok(ChartSimplices { alphas, betas })
}

/// One numerically checked identity between paths.
#[derive(Clone, Debug, Serialize)]
pub struct PathCheck {
    pub name: String,
    pub max_deviation: f64,
    pub holds: bool,
}

/// Base-point, degeneracy and boundary identities of `α`, `β` (and `γ`
/// when a second chart is given), sampled on a grid of `(t, s)`.
#[derive(Clone, Debug, Serialize)]
pub struct PathReport {
    pub tolerance: f64,
    pub checks: Vec<PathCheck>,
}

impl PathReport {
    pub fn get(&self, name: &str) -> Option<&PathCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn path_conditions(
    group: &dyn ChartedLieGroup,
    second_chart: Option<&dyn ChartedLieGroup>,
    elements: &[Element],
    tolerance: f64,
) -> Result<PathReport, LieError> {
    let grid: Vec<f64> = (0..=8).map(|k| k as f64 / 8.0).collect();
    let e = group.unit();
    let mut checks = Vec::new();
    let mut push = |name: &str, dev: f64| {
        checks.push(PathCheck { name: name.into(), max_deviation: dev, holds: dev <= tolerance });
    };
    let d = |a: &[f64], b: &[f64]| group.distance(a, b);

    let ae = alpha(group, &e)?;
    let mut dev: f64 = 0.0;
    for &t in &grid {
        dev = dev.max(d(&ae.eval(&[t])?, &e));
    }
    push("alpha_e_constant", dev);

    let mut endpoint: f64 = 0.0;
    let mut deg_first: f64 = 0.0;
    let mut deg_second: f64 = 0.0;
    let mut boundary: f64 = 0.0;
    let mut diag_literal: f64 = 0.0;
    let mut diag_shifted: f64 = 0.0;
    for g in elements {
        let ag = alpha(group, g)?;
        endpoint = endpoint.max(d(&ag.eval(&[1.0])?, g));
        let bge = beta(group, g, &e)?;
        let beg = beta(group, &e, g)?;
        let bgg = beta(group, g, g)?;
        for &t in &grid {
            for &s in &grid {
                if t + s > 1.0 + 1e-12 {
                    continue;
                }
                deg_first = deg_first.max(d(&beg.eval(&[t, s])?, &ag.eval(&[s])?));
                deg_second = deg_second.max(d(&bge.eval(&[t, s])?, &ag.eval(&[t + s])?));
                let b = bgg.eval(&[t, s])?;
                diag_literal = diag_literal.max(d(&b, &ag.eval(&[t + s])?));
                diag_shifted = diag_shifted.max(d(&b, &ag.eval(&[t + 2.0 * s])?));
            }
        }
        for h in elements {
            let b = beta(group, g, h)?;
            let ah = alpha(group, h)?;
            let gh = group.mul(g, h);
            let agh = alpha(group, &gh)?;
            for &u in &grid {
                boundary = boundary.max(d(&b.eval(&[u, 0.0])?, &ag.eval(&[u])?));
                boundary = boundary.max(d(&b.eval(&[1.0 - u, u])?, &group.mul(g, &ah.eval(&[u])?)));
                boundary = boundary.max(d(&b.eval(&[0.0, u])?, &agh.eval(&[u])?));
            }
        }
    }
    push("alpha_endpoint", endpoint);
    push("beta_degenerate_unit_first", deg_first);
    push("beta_degenerate_unit_second", deg_second);
    push("beta_boundary", boundary);
    push("beta_diagonal_s_plus_t", diag_literal);
    push("beta_diagonal_t_plus_2s", diag_shifted);

    if let Some(psi) = second_chart {
        let mut with_constant: f64 = 0.0;
        let mut edges: f64 = 0.0;
        let mut limit: f64 = 0.0;
        for g in elements {
            let c = gamma(group, psi, g)?;
            let a = alpha(group, g)?;
            let a2 = alpha(psi, g)?;
            for &u in &grid {
                // Edges s = 0 and t = 0 carry α_g and α'_g; the edge t + s = 1 is constant at g.
                let e1 = d(&c.eval(&[u, 0.0])?, &a.eval(&[u])?);
                let e2 = d(&c.eval(&[0.0, u])?, &a2.eval(&[u])?);
                let e3 = d(&c.eval(&[1.0 - u, u])?, g);
                edges = edges.max(e1).max(e2);
                with_constant = with_constant.max(e1).max(e2).max(e3);
            }
            // Distance to e must shrink with (t, s) → 0; the reported value
            // is the distance at the smallest radius.
            let radii = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
            let dist = radii.iter().map(|&r| c.eval(&[r, r]).map(|p| d(&p, &e))).collect::<Result<Vec<_>, _>>()?;
            if dist.windows(2).any(|w| w[1] > w[0]) {
                limit = f64::INFINITY;
            } else {
                limit = limit.max(dist[dist.len() - 1]);
            }
        }
        push("gamma_boundary_alpha_plus_constant_minus_alpha_prime", with_constant);
        push("gamma_boundary_alpha_minus_alpha_prime", edges);
        checks.push(PathCheck {
            name: "gamma_limit_at_origin".into(),
            max_deviation: limit,
            holds: limit <= GAMMA_LIMIT_TOLERANCE,
        });
    }
    Ok(PathReport { tolerance, checks })
}

/// `max |φ(φ⁻¹(tx)·φ⁻¹(sx)) − (t+s)x|` over the given chart points and a
/// grid of `t, s ∈ [−1, 1]`.
pub fn local_group_condition(group: &dyn ChartedLieGroup, points: &[DVector<f64>]) -> Result<f64, LieError> {
    let mut worst: f64 = 0.0;
    for x in points {
        for i in 0..=4 {
            for j in 0..=4 {
                let (t, s) = (i as f64 / 2.0 - 1.0, j as f64 / 2.0 - 1.0);
                let lhs = group.star(&(x * t), &(x * s))?;
                worst = worst.max((lhs - x * (t + s)).amax());
            }
        }
    }
    Ok(worst)
}
