//! Commands on charted Lie groups.

use catext::lie::bracket::{builtin_algebra, derive_bracket_group, exp_naturality_check, lie3_pipeline, MatrixHom};
use catext::lie::covering::covering_group_check;
use catext::lie::integrate::{derive_lf, SmoothGeneralizedCocycle};
use catext::lie::{builtin, AdditiveChart, Bilinear, ChartedLieGroup, Element, LieAlgebra, LieAlgebraCocycle, QuadSpec};
use nalgebra::DVector;
use serde::Deserialize;
use serde_json::json;

use crate::input::{load, Refusal};
use crate::report::{to_value, Finding, Numeric, Report};
use crate::{ChartKind, Cli, Command, Provenance};

/// Tangent step of the quadrature integrands; independent of `--fd-step`.
const TANGENT_STEP: f64 = 1e-5;
/// Fixed bound of the covering homomorphism check.
const COVERING_TOLERANCE: f64 = 1e-9;
/// Cocycle identity residual above which an input ω is refused.
const COCYCLE_INPUT_TOLERANCE: f64 = 1e-9;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Pair {
    g: Vec<f64>,
    h: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Triple {
    g: Vec<f64>,
    h: Vec<f64>,
    k: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Directions {
    x: Vec<f64>,
    y: Vec<f64>,
}

fn group(name: &str) -> Result<Box<dyn ChartedLieGroup>, Refusal> {
    builtin(name).ok_or_else(|| Refusal(format!("unknown group {name:?}; expected r<n>, r<n>-cubic, heisenberg, su2, u2 or circle")))
}

/// ω must live on the group's algebra and satisfy the cocycle identity there.
fn omega(arg: &str, g: &dyn ChartedLieGroup, name: &str) -> Result<LieAlgebraCocycle, Refusal> {
    let w: LieAlgebraCocycle = load(arg, "omega")?;
    if w.source_dim() != g.dim() {
        return Err(Refusal(format!("omega acts on dimension {}, {name} has dimension {}", w.source_dim(), g.dim())));
    }
    let alg = builtin_algebra(name).ok_or_else(|| Refusal(format!("no algebra for {name}")))?;
    let defect = w.cocycle_defect(&alg)?;
    if defect > COCYCLE_INPUT_TOLERANCE {
        return Err(Refusal(format!("omega is not a Lie algebra cocycle on {name} (defect {defect:e})")));
    }
    Ok(w)
}

fn element(g: &dyn ChartedLieGroup, x: &[f64], what: &str) -> Result<Element, Refusal> {
    if x.len() != g.dim() {
        return Err(Refusal(format!("{what} has {} coordinates, expected {}", x.len(), g.dim())));
    }
    Ok(g.chart_inverse(&DVector::from_row_slice(x))?)
}

pub(crate) fn run(cli: &Cli, mut prov: Provenance) -> Result<Report, Refusal> {
    if cli.quad_order == 0 || !(cli.fd_step > 0.0) || !(cli.tolerance >= 0.0) {
        return Err(Refusal("quad-order and fd-step must be positive, tolerance nonnegative".into()));
    }
    let quad = QuadSpec { order: cli.quad_order, tangent_step: TANGENT_STEP };
    let fine = QuadSpec { order: 2 * cli.quad_order, ..quad };
    let numeric = |value: serde_json::Value, est: f64| Numeric { value, tolerance_estimate: est, quad_order: cli.quad_order, fd_step: cli.fd_step };
    match &cli.command {
        Command::Integrate { group: name, omega: w, pair } => {
            let g = group(name)?;
            let w = omega(w, g.as_ref(), name)?;
            let p: Pair = load(pair, "pair")?;
            prov.insert("group".into(), json!(name));
            prov.insert("omega".into(), to_value(&w));
            prov.insert("pair".into(), json!({"g": p.g, "h": p.h}));
            let (a, b) = (element(g.as_ref(), &p.g, "g")?, element(g.as_ref(), &p.h, "h")?);
            let f = SmoothGeneralizedCocycle::new(g.as_ref(), w.clone(), quad)?.eval(&a, &b)?;
            let f2 = SmoothGeneralizedCocycle::new(g.as_ref(), w, fine)?.eval(&a, &b)?;
            let est = (&f - &f2).amax();
            let mut r = Report::new(prov);
            r.push(Finding::info("F_omega_beta", f.as_slice()));
            r.push(Finding::within("quadrature_order_doubling", est, cli.tolerance));
            r.numeric = Some(numeric(json!(f.as_slice()), est));
            Ok(r)
        }
        Command::Defect { group: name, omega: w, triple } => {
            let g = group(name)?;
            let w = omega(w, g.as_ref(), name)?;
            let t: Triple = load(triple, "triple")?;
            prov.insert("group".into(), json!(name));
            prov.insert("omega".into(), to_value(&w));
            prov.insert("triple".into(), json!({"g": t.g, "h": t.h, "k": t.k}));
            let els = [element(g.as_ref(), &t.g, "g")?, element(g.as_ref(), &t.h, "h")?, element(g.as_ref(), &t.k, "k")?];
            let d = SmoothGeneralizedCocycle::new(g.as_ref(), w.clone(), quad)?.defect(&els[0], &els[1], &els[2])?;
            let d2 = SmoothGeneralizedCocycle::new(g.as_ref(), w, fine)?.defect(&els[0], &els[1], &els[2])?;
            let est = (&d - &d2).amax();
            let mut r = Report::new(prov);
            r.push(Finding::within("cocycle_defect", d.amax(), cli.tolerance).with_witness(d.as_slice()));
            r.numeric = Some(numeric(json!(d.as_slice()), est));
            Ok(r)
        }
        Command::DeriveLf { group: name, omega: w, pair } => {
            let g = group(name)?;
            let w = omega(w, g.as_ref(), name)?;
            let p: Directions = load(pair, "directions")?;
            if p.x.len() != g.dim() || p.y.len() != g.dim() {
                return Err(Refusal(format!("directions must have {} coordinates", g.dim())));
            }
            prov.insert("group".into(), json!(name));
            prov.insert("omega".into(), to_value(&w));
            prov.insert("directions".into(), json!({"x": p.x, "y": p.y}));
            let (x, y) = (DVector::from_vec(p.x), DVector::from_vec(p.y));
            let f = SmoothGeneralizedCocycle::new(g.as_ref(), w.clone(), quad)?;
            let l = derive_lf(g.as_ref(), |a, b| f.eval(a, b), &x, &y, cli.fd_step)?;
            let half = derive_lf(g.as_ref(), |a, b| f.eval(a, b), &x, &y, cli.fd_step / 2.0)?;
            let lv = DVector::from_row_slice(&l.value);
            let step_change = (&lv - DVector::from_row_slice(&half.value)).amax();
            let expected = w.eval(&x, &y);
            let mut r = Report::new(prov);
            r.push(Finding::info("L_F", &l.value));
            r.push(Finding::info("omega", expected.as_slice()));
            r.push(Finding::within("deviation_from_omega", (&lv - &expected).amax(), cli.tolerance));
            if let Some(wn) = &l.warning {
                r.push(Finding::info("warning", wn));
            }
            r.numeric = Some(numeric(json!(l.value), l.rounding_estimate + step_change));
            Ok(r)
        }
        Command::DeriveBracket { group: name } => {
            let g = group(name)?;
            prov.insert("group".into(), json!(name));
            let est = derive_bracket_group(g.as_ref(), cli.fd_step)?;
            let alg = builtin_algebra(name).ok_or_else(|| Refusal(format!("no algebra for {name}")))?;
            let dev = est.bracket.max_deviation(alg.structure_constants());
            let mut r = Report::new(prov);
            r.push(Finding::info("bracket", &est.bracket));
            r.push(Finding::within("deviation_from_algebra", dev, cli.tolerance));
            r.push(Finding::check("jacobi", LieAlgebra::new(est.bracket.clone()).is_ok(), est.bracket.skew_defect()));
            if let Some(wn) = &est.warning {
                r.push(Finding::info("warning", wn));
            }
            r.numeric = Some(numeric(to_value(&est.bracket), est.rounding_estimate));
            Ok(r)
        }
        Command::Covering { samples, grid, resolution, seed } => {
            prov.insert("samples".into(), json!(samples));
            prov.insert("grid".into(), json!(grid));
            prov.insert("resolution".into(), json!(resolution));
            prov.insert("seed".into(), json!(seed));
            if *grid == 0 {
                return Err(Refusal("grid must be positive".into()));
            }
            let c = covering_group_check(*grid, *samples, *seed, *resolution)?;
            let mut r = Report::new(prov);
            r.push(Finding::check("cocycle_identity_on_grid", c.cocycle_failures == 0, c.cocycle_failures));
            r.push(Finding::check("closed_form", c.closed_form_mismatches == 0, c.closed_form_mismatches));
            r.push(Finding::check("associativity", c.associativity_failures == 0, c.associativity_failures));
            r.push(Finding::within("homomorphism_to_reals", c.max_hom_deviation, COVERING_TOLERANCE));
            r.numeric = Some(numeric(to_value(&c), c.max_hom_deviation));
            Ok(r)
        }
        Command::Pipeline { algebra, chart } => {
            let alg = if algebra == "heisenberg" {
                LieAlgebra::heisenberg()
            } else {
                let b: Bilinear = load(algebra, "structure constants")?;
                LieAlgebra::new(b)?
            };
            let chart = match chart {
                ChartKind::Linear => AdditiveChart::Linear,
                ChartKind::Cubic => AdditiveChart::Cubic(0.1),
            };
            prov.insert("algebra".into(), to_value(&alg));
            prov.insert("chart".into(), json!(format!("{chart:?}")));
            let rep = lie3_pipeline(&alg, chart, quad, cli.fd_step)?;
            let mut r = Report::new(prov);
            r.push(Finding::info("center_dim", rep.center_dim));
            r.push(Finding::info("omega", &rep.omega));
            r.push(Finding::info("derived_bracket", &rep.derived));
            r.push(Finding::within("deviation", rep.max_deviation, cli.tolerance));
            if let Some(wn) = &rep.warning {
                r.push(Finding::info("warning", wn));
            }
            r.numeric = Some(numeric(json!(rep.max_deviation), rep.rounding_estimate));
            Ok(r)
        }
        Command::ExpCheck { hom, samples, seed } => {
            let h = MatrixHom::parse(hom).ok_or_else(|| Refusal(format!("unknown homomorphism {hom:?}; expected su2-identity, u2-identity, su2-into-u2 or det-u2")))?;
            prov.insert("hom".into(), json!(hom));
            prov.insert("samples".into(), json!(samples));
            prov.insert("seed".into(), json!(seed));
            let rep = exp_naturality_check(h, *samples, *seed);
            let mut r = Report::new(prov);
            r.push(Finding::within("max_deviation", rep.max_deviation, cli.tolerance));
            r.numeric = Some(numeric(json!(rep.max_deviation), rep.max_deviation));
            Ok(r)
        }
        _ => unreachable!("exact commands are dispatched elsewhere"),
    }
}
