//! Commands on finite groups, cochains and finite 2-groups.

use std::sync::Arc;

use catext::algebra::{AbelianHom, FgAbelianGroup, FiniteGroupSpec, GAction, HomSpec};
use catext::cohomology::{cohomology_group, cone_h2, les_exactness_check};
use catext::two_group::{
    extension_from_cocycle, skeleton_and_band, strict_2group_from_crossed_module, verify_2group, verify_crossed_module,
    CrossedModuleSpec, GeneralizedCocycleSpec, Report as Sweep, TwoGroup, TwoGroupError,
};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::input::{load, Refusal};
use crate::report::{canonical_json, Finding, Report};
use crate::{Cli, Command, Provenance};

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct CohomologyInput {
    group: Option<FiniteGroupSpec>,
    coeff: Option<FgAbelianGroup>,
    action: Option<Vec<Vec<Vec<i64>>>>,
    degree: Option<usize>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConeInput {
    group: Option<FiniteGroupSpec>,
    tau: Option<HomSpec>,
}

/// Input of `check-2group`: explicit tables or a crossed module.
#[derive(Deserialize)]
#[serde(untagged)]
enum TwoGroupInput {
    Tables(TwoGroup),
    Crossed(CrossedModuleSpec),
}

fn required<T>(v: Option<T>, what: &str) -> Result<T, Refusal> {
    v.ok_or_else(|| Refusal(format!("missing {what}")))
}

/// Violations become failed findings, notes informational ones.
fn sweep_findings(report: &mut Report, sweep: &Sweep) {
    for v in &sweep.violations {
        report.push(Finding::check(&v.rule, false, v.class).with_witness(&v.witness));
    }
    for n in &sweep.notes {
        report.push(Finding::info(&n.rule, n.class).with_witness(&n.witness));
    }
    if !sweep.counts.is_empty() {
        report.push(Finding::info("violation_counts", &sweep.counts));
    }
}

fn refuse_two_group(e: TwoGroupError) -> Refusal {
    match e {
        TwoGroupError::Invalid(r) | TwoGroupError::InvalidCrossedModule(r) => Refusal(format!("invalid input: {r}")),
        other => Refusal(other.to_string()),
    }
}

pub(crate) fn run(cli: &Cli, mut prov: Provenance) -> Result<Report, Refusal> {
    match &cli.command {
        Command::Cohomology { input, group, coeff, action, degree } => {
            let mut inp: CohomologyInput = match input {
                Some(s) => load(s, "cohomology input")?,
                None => CohomologyInput::default(),
            };
            if let Some(g) = group {
                inp.group = Some(load(g, "group")?);
            }
            if let Some(c) = coeff {
                inp.coeff = Some(load(c, "coefficient group")?);
            }
            if let Some(a) = action {
                inp.action = Some(load(a, "action")?);
            }
            inp.degree = degree.or(inp.degree);
            let gspec = required(inp.group, "group")?;
            let g = gspec.build()?;
            let m = required(inp.coeff, "coefficient group")?;
            let n = required(inp.degree, "degree")?;
            let act = match &inp.action {
                None => GAction::trivial(&g, &m),
                Some(ms) => {
                    let homs = ms.iter().map(|x| AbelianHom::new(m.clone(), m.clone(), x.clone())).collect::<Result<Vec<_>, _>>()?;
                    GAction::new(&g, &m, homs)?
                }
            };
            prov.insert("group".into(), json!(gspec));
            prov.insert("coeff".into(), json!(m));
            prov.insert("degree".into(), json!(n));
            prov.insert("trivial_action".into(), json!(act.is_trivial()));
            let res = cohomology_group(&Arc::new(act), n)?;
            let mut r = Report::new(prov);
            r.push(Finding::info("cohomology_group", &res.group_iso_class));
            r.push(Finding::info("order", res.order()));
            let reps: Vec<_> = res.representative_cocycles.iter().map(|c| c.to_spec()).collect();
            r.push(Finding::info("representative_cocycles", reps));
            Ok(r)
        }
        Command::ConeH2 { input, group, tau } => {
            let mut inp: ConeInput = match input {
                Some(s) => load(s, "cone input")?,
                None => ConeInput::default(),
            };
            if let Some(g) = group {
                inp.group = Some(load(g, "group")?);
            }
            if let Some(t) = tau {
                inp.tau = Some(load(t, "tau")?);
            }
            let gspec = required(inp.group, "group")?;
            let tspec = required(inp.tau, "tau")?;
            let g = gspec.build()?;
            let tau = tspec.build(None, None)?;
            prov.insert("group".into(), json!(gspec));
            prov.insert("tau".into(), json!(tspec));
            let cone = cone_h2(&g, &tau)?;
            let les = les_exactness_check(&g, &tau)?;
            let mut r = Report::new(prov);
            r.push(Finding::info("class_count", cone.class_count()));
            r.push(Finding::info("class_sizes", &cone.class_sizes));
            let reps: Vec<Value> = cone
                .representatives
                .iter()
                .map(|p| json!({"f": p.f.to_spec(), "theta": p.theta.to_spec()}))
                .collect();
            r.push(Finding::info("representatives", reps));
            r.push(Finding::check("representatives_are_cocycles", cone.verify(), cone.cocycle_count));
            r.push(Finding::check("exact_at_middle", les.exact, &les));
            Ok(r)
        }
        Command::Check2Group { input } => {
            prov.insert("input".into(), json!(input));
            let tg = match load::<TwoGroupInput>(input, "2-group")? {
                TwoGroupInput::Tables(tg) => tg,
                TwoGroupInput::Crossed(spec) => {
                    let cm = spec.build().map_err(refuse_two_group)?;
                    let sweep = verify_crossed_module(&cm);
                    if !sweep.is_ok() {
                        let mut r = Report::new(prov);
                        sweep_findings(&mut r, &sweep);
                        return Ok(r);
                    }
                    strict_2group_from_crossed_module(&cm).map_err(refuse_two_group)?
                }
            };
            prov.insert("objects".into(), json!(tg.objects));
            prov.insert("morphisms".into(), json!(tg.morphisms));
            let mut r = Report::new(prov);
            sweep_findings(&mut r, &verify_2group(&tg));
            Ok(r)
        }
        Command::BuildExtension { cocycle, emit } => {
            prov.insert("cocycle".into(), json!(cocycle));
            let spec: GeneralizedCocycleSpec = load(cocycle, "generalized cocycle")?;
            let gc = spec.build().map_err(refuse_two_group)?;
            let sweep = gc.verify();
            if !sweep.is_ok() {
                let mut r = Report::refused(format!("not a generalized cocycle: {sweep}"), prov);
                sweep_findings(&mut r, &sweep);
                return Ok(r);
            }
            let seq = extension_from_cocycle(&gc).map_err(refuse_two_group)?;
            if let Some(path) = emit {
                std::fs::write(path, canonical_json(&seq.total)).map_err(|e| Refusal(format!("cannot write {}: {e}", path.display())))?;
                prov.insert("emit".into(), json!(path));
            }
            let mut r = Report::new(prov);
            r.push(Finding::info("objects", seq.total.objects));
            r.push(Finding::info("morphisms", seq.total.morphisms));
            let checks = seq.verify();
            r.push(Finding::check("extension_invariants", checks.is_ok(), checks.violations.len()));
            sweep_findings(&mut r, &checks);
            Ok(r)
        }
        Command::Band { extension } => {
            prov.insert("extension".into(), json!(extension));
            let spec: GeneralizedCocycleSpec = load(extension, "generalized cocycle")?;
            let gc = spec.build().map_err(refuse_two_group)?;
            let seq = extension_from_cocycle(&gc).map_err(refuse_two_group)?;
            let band = skeleton_and_band(&seq).map_err(refuse_two_group)?;
            let mut r = Report::new(prov);
            r.push(Finding::info("skeleton_z", &band.skel_z));
            r.push(Finding::info("band", &band.band));
            r.push(Finding::info("band_order", band.band.order()));
            r.push(Finding::info("band_is_abelian", band.band.is_abelian()));
            r.push(Finding::info("band_to_base", &band.band_to_base));
            sweep_findings(&mut r, &band.report);
            let cmp = band.compare_with_twisted_product(&seq).map_err(refuse_two_group)?;
            r.push(Finding::check("isomorphic_to_twisted_product", cmp.is_ok(), cmp.violations.len()));
            sweep_findings(&mut r, &cmp);
            Ok(r)
        }
        Command::VerifyCocycle { input } => {
            prov.insert("input".into(), json!(input));
            let spec: GeneralizedCocycleSpec = load(input, "generalized cocycle")?;
            let gc = spec.build().map_err(refuse_two_group)?;
            let sweep = gc.verify();
            let mut r = Report::new(prov);
            r.push(Finding::check("generalized_cocycle", sweep.is_ok(), sweep.violations.len()));
            sweep_findings(&mut r, &sweep);
            Ok(r)
        }
        _ => unreachable!("numeric commands are dispatched elsewhere"),
    }
}
