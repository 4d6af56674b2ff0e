use serde::{Deserialize, Serialize};

use super::report::{AxiomClass::CrossedModule as Cm, Report};
use super::tables::TwoGroup;
use super::TwoGroupError;
use crate::algebra::{AbelianHom, FgAbelianGroup, FiniteGroup, FiniteGroupSpec};
use crate::cohomology::{d_gp, Cochain};

/// `τ: H → G` with an action of `G` on `H`; `action[g][h] = g.h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub h: FiniteGroup,
    pub g: FiniteGroup,
    pub tau: Vec<usize>,
    pub action: Vec<Vec<usize>>,
}

/// JSON form `{"h":…, "g":…, "tau":[…], "action":[[…]]}`; a missing action is trivial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossedModuleSpec {
    pub h: FiniteGroupSpec,
    pub g: FiniteGroupSpec,
    pub tau: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
}

impl CrossedModuleSpec {
    pub fn build(&self) -> Result<CrossedModule, TwoGroupError> {
        let h = self.h.build()?;
        let g = self.g.build()?;
        let action = self
            .action
            .clone()
            .unwrap_or_else(|| vec![(0..h.order()).collect(); g.order()]);
        Ok(CrossedModule {
            h,
            g,
            tau: self.tau.clone(),
            action,
        })
    }
}

impl From<&CrossedModule> for CrossedModuleSpec {
    fn from(cm: &CrossedModule) -> Self {
        CrossedModuleSpec {
            h: FiniteGroupSpec::Finite {
                order: cm.h.order(),
                table: cm.h.table().to_vec(),
            },
            g: FiniteGroupSpec::Finite {
                order: cm.g.order(),
                table: cm.g.table().to_vec(),
            },
            tau: cm.tau.clone(),
            action: Some(cm.action.clone()),
        }
    }
}

impl CrossedModule {
    /// `id: G → G` with the conjugation action.
    pub fn identity(g: &FiniteGroup) -> Self {
        let n = g.order();
        CrossedModule {
            h: g.clone(),
            g: g.clone(),
            tau: (0..n).collect(),
            action: (0..n).map(|x| (0..n).map(|y| g.mul(g.mul(x, y), g.inv(x))).collect()).collect(),
        }
    }

    /// The trivial map `H → G` with the trivial action.
    pub fn trivial_map(h: &FiniteGroup, g: &FiniteGroup) -> Self {
        CrossedModule {
            h: h.clone(),
            g: g.clone(),
            tau: vec![0; h.order()],
            action: vec![(0..h.order()).collect(); g.order()],
        }
    }

    pub fn act(&self, g: usize, h: usize) -> usize {
        self.action[g][h]
    }
}

/// Checks that `τ` is a homomorphism, that `G` acts by automorphisms, and
/// the equivariance and Peiffer identities at every pair.
pub fn verify_crossed_module(cm: &CrossedModule) -> Report {
    let mut r = Report::new();
    let (h, g) = (&cm.h, &cm.g);
    let (nh, ng) = (h.order(), g.order());
    if cm.tau.len() != nh || cm.tau.iter().any(|&x| x >= ng) {
        r.fail(Cm, "tau has wrong length or range", vec![cm.tau.len()]);
        return r.finish();
    }
    if cm.action.len() != ng || cm.action.iter().any(|row| row.len() != nh || row.iter().any(|&x| x >= nh)) {
        r.fail(Cm, "action table has wrong shape or range", vec![cm.action.len()]);
        return r.finish();
    }
    for a in 0..nh {
        for b in 0..nh {
            r.check(
                cm.tau[h.mul(a, b)] == g.mul(cm.tau[a], cm.tau[b]),
                Cm,
                "tau is not a homomorphism",
                || vec![a, b],
            );
        }
    }
    for x in 0..ng {
        let mut img = cm.action[x].clone();
        img.sort_unstable();
        img.dedup();
        r.check(img.len() == nh, Cm, "action is not bijective", || vec![x]);
        for a in 0..nh {
            for b in 0..nh {
                r.check(
                    cm.act(x, h.mul(a, b)) == h.mul(cm.act(x, a), cm.act(x, b)),
                    Cm,
                    "action is not by homomorphisms",
                    || vec![x, a, b],
                );
            }
        }
    }
    for a in 0..nh {
        r.check(cm.act(0, a) == a, Cm, "unit acts nontrivially", || vec![a]);
        for x in 0..ng {
            for y in 0..ng {
                r.check(
                    cm.act(g.mul(x, y), a) == cm.act(x, cm.act(y, a)),
                    Cm,
                    "action is not compatible with multiplication",
                    || vec![x, y, a],
                );
            }
        }
    }
    for x in 0..ng {
        for a in 0..nh {
            r.check(
                cm.tau[cm.act(x, a)] == g.mul(g.mul(x, cm.tau[a]), g.inv(x)),
                Cm,
                "equivariance fails",
                || vec![x, a],
            );
        }
    }
    for a in 0..nh {
        for b in 0..nh {
            r.check(
                cm.act(cm.tau[a], b) == h.mul(h.mul(a, b), h.inv(a)),
                Cm,
                "Peiffer identity fails",
                || vec![a, b],
            );
        }
    }
    r.finish()
}

/// `τ: A → Z` between finite abelian groups with trivial action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCrossedModule {
    pub tau: AbelianHom,
}

impl AbelianCrossedModule {
    pub fn new(tau: AbelianHom) -> Result<Self, TwoGroupError> {
        if !tau.source().is_finite() || !tau.target().is_finite() {
            return Err(TwoGroupError::Other("abelian crossed module must be finite".into()));
        }
        Ok(AbelianCrossedModule { tau })
    }

    pub fn a(&self) -> &FgAbelianGroup {
        self.tau.source()
    }

    pub fn z(&self) -> &FgAbelianGroup {
        self.tau.target()
    }

    /// Index form: `H = A`, `G = Z` as multiplication tables.
    pub fn to_crossed_module(&self) -> Result<CrossedModule, TwoGroupError> {
        let h = self.a().to_finite_group()?;
        let g = self.z().to_finite_group()?;
        let tau = self
            .a()
            .elements()?
            .iter()
            .map(|a| self.z().index_of(&self.tau.apply(a)))
            .collect();
        Ok(CrossedModule::trivial_map(&h, &g).with_tau(tau))
    }
}

impl CrossedModule {
    fn with_tau(mut self, tau: Vec<usize>) -> Self {
        self.tau = tau;
        self
    }
}

/// Strict 2-group of a crossed module with an optional associator cocycle
/// `f: G³ → ker τ`; morphism `(h, g)` has index `g·|H| + h`.
fn two_group_from_crossed_module(
    cm: &CrossedModule,
    f: impl Fn(usize, usize, usize) -> usize,
) -> Result<TwoGroup, TwoGroupError> {
    let (h, g) = (&cm.h, &cm.g);
    let nh = h.order();
    let mor = |hh: usize, gg: usize| gg * nh + hh;
    TwoGroup::assemble(
        g.order(),
        nh * g.order(),
        |m| m / nh,
        |m| g.mul(cm.tau[m % nh], m / nh),
        |x| mor(0, x),
        |m1, m2| mor(h.mul(m1 % nh, m2 % nh), m2 / nh),
        |x, y| g.mul(x, y),
        |m1, m2| {
            let (h1, g1, h2, g2) = (m1 % nh, m1 / nh, m2 % nh, m2 / nh);
            mor(h.mul(h1, cm.act(g1, h2)), g.mul(g1, g2))
        },
        |x| g.inv(x),
        |m| {
            let gi = g.inv(m / nh);
            mor(cm.act(gi, h.inv(m % nh)), gi)
        },
        |x, y, z| mor(f(x, y, z), g.mul(g.mul(x, y), z)),
    )
}

/// Strict 2-group with objects `G` and morphisms `H ⋊ G`.
pub fn strict_2group_from_crossed_module(cm: &CrossedModule) -> Result<TwoGroup, TwoGroupError> {
    let report = verify_crossed_module(cm);
    if !report.is_ok() {
        return Err(TwoGroupError::InvalidCrossedModule(report));
    }
    two_group_from_crossed_module(cm, |_, _, _| 0)
}

/// The discrete 2-group of a group: only identity morphisms.
pub fn discrete_2group(g: &FiniteGroup) -> TwoGroup {
    two_group_from_crossed_module(&CrossedModule::trivial_map(&FiniteGroup::trivial(), g), |_, _, _| 0)
        .expect("discrete 2-group of a finite group")
}

/// Skeletal 2-group over `A → G` (trivial map and action) with associator
/// `α(g,h,k) = (Θ(g,h,k), ghk)`, without checking `dΘ = 0`.
pub fn skeletal_2group_unchecked(theta: &Cochain) -> Result<TwoGroup, TwoGroupError> {
    if theta.degree() != 3 {
        return Err(TwoGroupError::Other("associator cochain must have degree 3".into()));
    }
    let a = theta.coefficients();
    let h = a.to_finite_group()?;
    let cm = CrossedModule::trivial_map(&h, theta.group());
    two_group_from_crossed_module(&cm, |x, y, z| a.index_of(&theta.get(&[x, y, z])))
}

/// Skeletal 2-group of a 3-cocycle; refused with the first quadruple where
/// `dΘ ≠ 0`.
pub fn skeletal_2group_from_3cocycle(theta: &Cochain) -> Result<TwoGroup, TwoGroupError> {
    if !theta.action().is_trivial() {
        return Err(TwoGroupError::Other("skeletal 2-groups need the trivial action".into()));
    }
    let d = d_gp(theta);
    if let Some(w) = d.support().into_iter().next() {
        let mut r = Report::new();
        r.fail(super::AxiomClass::Cocycle, "associator cochain is not a cocycle", w);
        return Err(TwoGroupError::Invalid(r.finish()));
    }
    skeletal_2group_unchecked(theta)
}
