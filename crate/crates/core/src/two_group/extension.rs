use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::crossed::{discrete_2group, strict_2group_from_crossed_module, AbelianCrossedModule};
use super::report::{AxiomClass, Report};
use super::tables::{TwoGroup, TwoGroupMorphism};
use super::verify::{verify_2group, verify_morphism, verify_two_morphism};
use super::TwoGroupError;
use crate::algebra::snf::{smith_normal_form, solve_with};
use crate::algebra::{hom_decompose, AbelianHom, FgAbelianGroup, FiniteGroup, FiniteGroupSpec, GAction, HomSpec};
use crate::cohomology::{d_gp, twisted_product_unchecked, Cochain, CochainSpec};

/// A generalized 2-cocycle `(F, Θ)` on `G` with values in the abelian
/// crossed module `τ: A → Z`: `F ∈ C²(G, Z)`, `Θ ∈ C³(G, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCocycle {
    pub tau: AbelianHom,
    pub f: Cochain,
    pub theta: Cochain,
}

impl GeneralizedCocycle {
    /// Checks shapes only; the defining identities are checked by [`Self::verify`].
    pub fn new(tau: AbelianHom, f: Cochain, theta: Cochain) -> Result<Self, TwoGroupError> {
        let ok = f.degree() == 2
            && theta.degree() == 3
            && f.group() == theta.group()
            && f.coefficients() == tau.target()
            && theta.coefficients() == tau.source()
            && f.action().is_trivial()
            && theta.action().is_trivial();
        if !ok {
            return Err(TwoGroupError::Other(
                "generalized cocycle needs F ∈ C²(G,Z), Θ ∈ C³(G,A) with trivial actions".into(),
            ));
        }
        Ok(GeneralizedCocycle { tau, f, theta })
    }

    /// The trivial cocycle `(0, 0)`.
    pub fn zero(g: &FiniteGroup, tau: &AbelianHom) -> Self {
        let z = Arc::new(GAction::trivial(g, tau.target()));
        let a = Arc::new(GAction::trivial(g, tau.source()));
        GeneralizedCocycle {
            tau: tau.clone(),
            f: Cochain::zero(&z, 2),
            theta: Cochain::zero(&a, 3),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.f.group()
    }

    pub fn z_action(&self) -> &Arc<GAction> {
        self.f.action()
    }

    pub fn a_action(&self) -> &Arc<GAction> {
        self.theta.action()
    }

    fn tau_of(&self, c: &Cochain) -> Cochain {
        c.push_forward(&self.tau, self.z_action()).expect("cochain valued in A")
    }

    /// `d F = τ∘Θ` at every triple and `d Θ = 0` at every quadruple.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let df = d_gp(&self.f);
        let tt = self.tau_of(&self.theta);
        for w in df.sub(&tt).expect("same module").support() {
            r.fail(AxiomClass::Cocycle, "dF differs from τ∘Θ", w);
        }
        for w in d_gp(&self.theta).support() {
            r.fail(AxiomClass::Cocycle, "dΘ is nonzero", w);
        }
        r.finish()
    }

    /// `q∘F` with values in `Z/τ(A)`, an ordinary 2-cocycle.
    pub fn band_cocycle(&self) -> Result<Cochain, TwoGroupError> {
        let dec = hom_decompose(&self.tau)?;
        let q = Arc::new(GAction::trivial(self.group(), &dec.cokernel));
        Ok(Cochain::from_fn(&q, 2, |t| dec.cokernel_class(&self.f.get(t))))
    }

    pub fn to_spec(&self) -> GeneralizedCocycleSpec {
        GeneralizedCocycleSpec {
            group: FiniteGroupSpec::from(self.group()),
            tau: HomSpec::from(&self.tau),
            f: self.f.to_spec(),
            theta: self.theta.to_spec(),
        }
    }
}

/// JSON form of a generalized cocycle. `tau` carries its source `A` and target `Z`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneralizedCocycleSpec {
    pub group: FiniteGroupSpec,
    pub tau: HomSpec,
    pub f: CochainSpec,
    pub theta: CochainSpec,
}

impl GeneralizedCocycleSpec {
    pub fn build(&self) -> Result<GeneralizedCocycle, TwoGroupError> {
        let g = self.group.build()?;
        let tau = self.tau.build(None, None)?;
        let z = Arc::new(GAction::trivial(&g, tau.target()));
        let a = Arc::new(GAction::trivial(&g, tau.source()));
        if self.f.degree != 2 || self.theta.degree != 3 {
            return Err(TwoGroupError::Other("F must have degree 2 and Θ degree 3".into()));
        }
        let f = self.f.build(&z)?;
        let theta = self.theta.build(&a)?;
        GeneralizedCocycle::new(tau, f, theta)
    }
}

/// A morphism `(φ, ψ): (F, Θ) → (F', Θ')` with `φ ∈ C¹(G, Z)`, `ψ ∈ C²(G, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleMorphism {
    pub phi: Cochain,
    pub psi: Cochain,
}

impl CocycleMorphism {
    pub fn zero(gc: &GeneralizedCocycle) -> Self {
        CocycleMorphism {
            phi: Cochain::zero(gc.z_action(), 1),
            psi: Cochain::zero(gc.a_action(), 2),
        }
    }

    /// `F = F' + dφ + τ∘ψ` and `Θ = Θ' + dψ`.
    pub fn verify(&self, source: &GeneralizedCocycle, target: &GeneralizedCocycle) -> Report {
        let mut r = Report::new();
        let rhs_f = target
            .f
            .add(&d_gp(&self.phi))
            .and_then(|c| c.add(&source.tau_of(&self.psi)));
        let rhs_t = target.theta.add(&d_gp(&self.psi));
        match (rhs_f, rhs_t) {
            (Ok(rf), Ok(rt)) => {
                for w in source.f.sub(&rf).expect("same module").support() {
                    r.fail(AxiomClass::Cocycle, "F differs from F' + dφ + τ∘ψ", w);
                }
                for w in source.theta.sub(&rt).expect("same module").support() {
                    r.fail(AxiomClass::Cocycle, "Θ differs from Θ' + dψ", w);
                }
            }
            _ => r.fail(AxiomClass::Shape, "morphism cochains do not match the cocycles", vec![]),
        }
        r.finish()
    }
}

/// `𝒵 → Ĝ → G`: the abelian 2-group of `τ`, the total 2-group of a
/// generalized cocycle, the discrete 2-group of `G`, and the strict
/// functors `ι` and `q` between them.
#[derive(Clone, Debug)]
pub struct CentralExtensionSeq {
    pub cocycle: GeneralizedCocycle,
    pub z_part: TwoGroup,
    pub total: TwoGroup,
    pub base: TwoGroup,
    pub iota: TwoGroupMorphism,
    pub q: TwoGroupMorphism,
}

struct Indexing {
    an: usize,
    zn: usize,
}

impl Indexing {
    fn obj(&self, x: usize, g: usize) -> usize {
        g * self.zn + x
    }
    fn mor(&self, a: usize, x: usize, g: usize) -> usize {
        self.obj(x, g) * self.an + a
    }
    /// `(x, g)` of an object.
    fn split_obj(&self, o: usize) -> (usize, usize) {
        (o % self.zn, o / self.zn)
    }
    /// `(a, x, g)` of a morphism.
    fn split_mor(&self, m: usize) -> (usize, usize, usize) {
        let (x, g) = self.split_obj(m / self.an);
        (m % self.an, x, g)
    }
}

struct Arith {
    a_add: Vec<Vec<usize>>,
    a_neg: Vec<usize>,
    z_add: Vec<Vec<usize>>,
    z_neg: Vec<usize>,
    tau: Vec<usize>,
}

impl Arith {
    fn new(tau: &AbelianHom) -> Result<Self, TwoGroupError> {
        let a = tau.source();
        let z = tau.target();
        let ae = a.elements()?;
        let ze = z.elements()?;
        let table = |g: &FgAbelianGroup, e: &[Vec<i64>]| -> Vec<Vec<usize>> {
            e.iter().map(|x| e.iter().map(|y| g.index_of(&g.add(x, y))).collect()).collect()
        };
        Ok(Arith {
            a_add: table(a, &ae),
            a_neg: ae.iter().map(|x| a.index_of(&a.neg(x))).collect(),
            z_add: table(z, &ze),
            z_neg: ze.iter().map(|x| z.index_of(&z.neg(x))).collect(),
            tau: ae.iter().map(|x| z.index_of(&tau.apply(x))).collect(),
        })
    }

    fn zsum(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.z_add[acc][x])
    }
}

fn z_index_table(c: &Cochain) -> impl Fn(&[usize]) -> usize + '_ {
    move |t| c.coefficients().index_of(&c.get(t))
}

/// Builds `Ĝ_(F,Θ)` and the sequence around it without checking the
/// cocycle identities.
pub fn extension_unchecked(gc: &GeneralizedCocycle) -> Result<CentralExtensionSeq, TwoGroupError> {
    let cm = AbelianCrossedModule::new(gc.tau.clone())?;
    let g = gc.group().clone();
    let ar = Arith::new(&gc.tau)?;
    let ix = Indexing {
        an: ar.a_neg.len(),
        zn: ar.z_neg.len(),
    };
    let gn = g.order();
    let fz = z_index_table(&gc.f);
    let th = z_index_table(&gc.theta);
    let f_tab: Vec<usize> = (0..gn * gn).map(|i| fz(&[i / gn, i % gn])).collect();
    let f = |a: usize, b: usize| f_tab[a * gn + b];
    let theta = |a: usize, b: usize, c: usize| th(&[a, b, c]);

    let total = TwoGroup::assemble(
        ix.zn * gn,
        ix.an * ix.zn * gn,
        |m| m / ix.an,
        |m| {
            let (a, x, g) = ix.split_mor(m);
            ix.obj(ar.z_add[ar.tau[a]][x], g)
        },
        |o| o * ix.an,
        |m, n| {
            let (a, _, _) = ix.split_mor(m);
            let (b, y, g) = ix.split_mor(n);
            ix.mor(ar.a_add[a][b], y, g)
        },
        |o1, o2| {
            let (x, g) = ix.split_obj(o1);
            let (y, h) = ix.split_obj(o2);
            ix.obj(ar.zsum(&[x, y, f(g, h)]), gc.group().mul(g, h))
        },
        |m1, m2| {
            let (a, x, g) = ix.split_mor(m1);
            let (b, y, h) = ix.split_mor(m2);
            ix.mor(ar.a_add[a][b], ar.zsum(&[x, y, f(g, h)]), gc.group().mul(g, h))
        },
        |o| {
            let (x, g) = ix.split_obj(o);
            let gi = gc.group().inv(g);
            ix.obj(ar.z_neg[ar.z_add[x][f(g, gi)]], gi)
        },
        |m| {
            let (a, x, g) = ix.split_mor(m);
            let gi = gc.group().inv(g);
            ix.mor(ar.a_neg[a], ar.z_neg[ar.z_add[x][f(g, gi)]], gi)
        },
        |o1, o2, o3| {
            let (x, g) = ix.split_obj(o1);
            let (y, h) = ix.split_obj(o2);
            let (z, k) = ix.split_obj(o3);
            let gh = gc.group().mul(g, h);
            ix.mor(theta(g, h, k), ar.zsum(&[x, y, z, f(g, h), f(gh, k)]), gc.group().mul(gh, k))
        },
    )?;

    let z_part = strict_2group_from_crossed_module(&cm.to_crossed_module()?)?;
    let base = discrete_2group(&g);
    let iota = TwoGroupMorphism::strict(
        (0..ix.zn).map(|x| ix.obj(x, 0)).collect(),
        (0..ix.zn * ix.an).map(|m| ix.mor(m % ix.an, m / ix.an, 0)).collect(),
        &total,
    );
    let q = TwoGroupMorphism::strict(
        (0..total.objects).map(|o| ix.split_obj(o).1).collect(),
        (0..total.morphisms).map(|m| ix.split_mor(m).2).collect(),
        &base,
    );
    Ok(CentralExtensionSeq {
        cocycle: gc.clone(),
        z_part,
        total,
        base,
        iota,
        q,
    })
}

/// `Ĝ_(F,Θ)` for a valid generalized cocycle; refused with witnesses otherwise.
pub fn extension_from_cocycle(gc: &GeneralizedCocycle) -> Result<CentralExtensionSeq, TwoGroupError> {
    let r = gc.verify();
    if !r.is_ok() {
        return Err(TwoGroupError::Invalid(r));
    }
    extension_unchecked(gc)
}

impl CentralExtensionSeq {
    /// All 2-group axioms of the three 2-groups, functoriality of `ι` and
    /// `q`, and exactness and centrality on morphisms.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        r.merge(verify_2group(&self.total));
        r.merge(verify_2group(&self.z_part));
        r.merge(verify_2group(&self.base));
        r.merge(verify_morphism(&self.z_part, &self.total, &self.iota));
        r.merge(verify_morphism(&self.total, &self.base, &self.q));
        r.merge(self.exactness());
        r.finish()
    }

    /// Exactness and centrality on morphisms.
    pub fn exactness(&self) -> Report {
        use AxiomClass::Extension;
        let mut r = Report::new();
        let mut seen = vec![false; self.total.morphisms];
        for (m, &im) in self.iota.morphisms.iter().enumerate() {
            r.check(!seen[im], Extension, "ι is not injective on morphisms", || vec![m]);
            seen[im] = true;
        }
        let unit_id = self.base.id(0);
        for m in 0..self.total.morphisms {
            let in_kernel = self.q.morphisms[m] == unit_id;
            r.check(in_kernel == seen[m], Extension, "image of ι differs from the kernel of q", || vec![m]);
        }
        let mut hit = vec![false; self.base.morphisms];
        for &qm in &self.q.morphisms {
            hit[qm] = true;
        }
        for (m, h) in hit.iter().enumerate() {
            r.check(*h, Extension, "q is not surjective on morphisms", || vec![m]);
        }
        for (a, &ia) in self.iota.morphisms.iter().enumerate() {
            for m in 0..self.total.morphisms {
                r.check(
                    self.total.tensor_mor(ia, m) == self.total.tensor_mor(m, ia),
                    Extension,
                    "ι is not central",
                    || vec![a, m],
                );
            }
        }
        for (z, &iz) in self.iota.objects.iter().enumerate() {
            r.check(self.q.objects[iz] == 0, Extension, "q∘ι is not trivial on objects", || vec![z]);
        }
        r.finish()
    }

    fn indexing(&self) -> Indexing {
        Indexing {
            an: self.cocycle.tau.source().order().unwrap_or(1) as usize,
            zn: self.cocycle.tau.target().order().unwrap_or(1) as usize,
        }
    }
}

/// Skeleton of the abelian part and the band of an extension.
#[derive(Clone, Debug)]
pub struct Band {
    /// `Z/τ(A)` in invariant-factor form.
    pub skel_z: FgAbelianGroup,
    /// Isomorphism classes of objects of the total 2-group.
    pub band: FiniteGroup,
    /// Class of every object of the total 2-group.
    pub object_class: Vec<usize>,
    /// Least-index object of every class.
    pub representatives: Vec<usize>,
    /// Skeleton element (by index) to band class.
    pub skel_to_band: Vec<usize>,
    /// Band class to base group element.
    pub band_to_base: Vec<usize>,
    /// Well-definedness and central-extension checks.
    pub report: Report,
}

/// Isomorphism classes of objects of a 2-group with the induced product.
fn skeleton_classes(tg: &TwoGroup) -> (Vec<usize>, Vec<usize>) {
    let mut class = vec![usize::MAX; tg.objects];
    let mut reps = Vec::new();
    for o in 0..tg.objects {
        if class[o] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(o);
        class[o] = id;
        for m in 0..tg.morphisms {
            if tg.s(m) == o {
                class[tg.t(m)] = id;
            }
        }
    }
    (class, reps)
}

pub fn skeleton_and_band(seq: &CentralExtensionSeq) -> Result<Band, TwoGroupError> {
    use AxiomClass::Extension;
    let mut r = Report::new();
    let tg = &seq.total;
    let (class, reps) = skeleton_classes(tg);
    let n = reps.len();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| reps.iter().map(|&y| class[tg.tensor_obj(x, y)]).collect())
        .collect();
    for x in 0..tg.objects {
        for y in 0..tg.objects {
            r.check(
                class[tg.tensor_obj(x, y)] == table[class[x]][class[y]],
                Extension,
                "band multiplication depends on representatives",
                || vec![x, y],
            );
        }
    }
    let band = match FiniteGroup::from_table(table.clone()) {
        Ok(b) => b,
        Err(_) => {
            r.fail(Extension, "band is not a group", vec![]);
            FiniteGroup::from_table_unchecked(table)
        }
    };

    let dec = hom_decompose(&seq.cocycle.tau)?;
    let skel_z = dec.cokernel.clone();
    let (z_class, _) = skeleton_classes(&seq.z_part);
    let z_classes = z_class.iter().max().map_or(0, |m| m + 1);
    r.check(
        skel_z.order() == Some(z_classes as u64),
        Extension,
        "cokernel of τ differs from the skeleton of the abelian part",
        || vec![z_classes],
    );

    let z = seq.cocycle.tau.target();
    let ix = seq.indexing();
    let skel_elems = skel_z.elements()?;
    let skel_to_band: Vec<usize> = skel_elems
        .iter()
        .map(|c| {
            let mut lift = z.zero();
            for (k, &ck) in c.iter().enumerate() {
                lift = z.add(&lift, &z.scale(ck, &dec.cokernel_generators[k]));
            }
            class[ix.obj(z.index_of(&lift), 0)]
        })
        .collect();
    let band_to_base: Vec<usize> = reps.iter().map(|&o| ix.split_obj(o).1).collect();

    let skel_group = skel_z.to_finite_group()?;
    let g = seq.cocycle.group();
    r.check(
        skel_group.is_homomorphism(&band, &skel_to_band),
        Extension,
        "skeleton map is not a homomorphism",
        Vec::new,
    );
    let mut inj = skel_to_band.clone();
    inj.sort_unstable();
    inj.dedup();
    r.check(inj.len() == skel_to_band.len(), Extension, "skeleton map is not injective", Vec::new);
    r.check(band.is_homomorphism(g, &band_to_base), Extension, "band projection is not a homomorphism", Vec::new);
    let mut onto = band_to_base.clone();
    onto.sort_unstable();
    onto.dedup();
    r.check(onto.len() == g.order(), Extension, "band projection is not surjective", Vec::new);
    let kernel: Vec<usize> = (0..n).filter(|&c| band_to_base[c] == 0).collect();
    r.check(kernel == inj, Extension, "band sequence is not exact in the middle", Vec::new);
    for &k in &inj {
        for c in 0..n {
            r.check(band.mul(k, c) == band.mul(c, k), Extension, "skeleton is not central in the band", || vec![k, c]);
        }
    }
    Ok(Band {
        skel_z,
        band,
        object_class: class,
        representatives: reps,
        skel_to_band,
        band_to_base,
        report: r.finish(),
    })
}

impl Band {
    /// Checks the explicit map `[(x, g)] ↦ (x mod τ(A), g)` onto the twisted
    /// product of the band cocycle `q∘F` is a group isomorphism.
    pub fn compare_with_twisted_product(&self, seq: &CentralExtensionSeq) -> Result<Report, TwoGroupError> {
        let mut r = Report::new();
        let bc = seq.cocycle.band_cocycle()?;
        let tp = twisted_product_unchecked(&bc)?;
        let dec = hom_decompose(&seq.cocycle.tau)?;
        let ix = seq.indexing();
        let z = seq.cocycle.tau.target();
        let qn = self.skel_z.order().unwrap_or(1) as usize;
        let map: Vec<usize> = self
            .representatives
            .iter()
            .map(|&o| {
                let (x, g) = ix.split_obj(o);
                g * qn + self.skel_z.index_of(&dec.cokernel_class(&z.element_at(x)))
            })
            .collect();
        let mut sorted = map.clone();
        sorted.sort_unstable();
        sorted.dedup();
        r.check(
            sorted.len() == tp.order() && map.len() == tp.order(),
            AxiomClass::Extension,
            "band and twisted product differ in size",
            || vec![map.len(), tp.order()],
        );
        r.check(
            self.band.is_homomorphism(&tp, &map),
            AxiomClass::Extension,
            "band is not isomorphic to the twisted product via the canonical map",
            Vec::new,
        );
        Ok(r.finish())
    }
}

/// The functor `𝓕_(φ,ψ): Ĝ_(F,Θ) → Ĝ_(F',Θ')` with its coherence report.
#[derive(Clone, Debug)]
pub struct PairMorphism {
    pub functor: TwoGroupMorphism,
    pub report: Report,
}

/// Functor data of `(φ, ψ)` without checking its defining identities.
pub fn morphism_unchecked(
    src: &CentralExtensionSeq,
    tgt: &CentralExtensionSeq,
    m: &CocycleMorphism,
) -> Result<TwoGroupMorphism, TwoGroupError> {
    if src.cocycle.tau != tgt.cocycle.tau || src.cocycle.group() != tgt.cocycle.group() {
        return Err(TwoGroupError::Other("extensions over different data".into()));
    }
    let ix = src.indexing();
    let ar = Arith::new(&src.cocycle.tau)?;
    let z = src.cocycle.tau.target();
    let a = src.cocycle.tau.source();
    let phi = |g: usize| z.index_of(&m.phi.get(&[g]));
    let psi = |g: usize, h: usize| a.index_of(&m.psi.get(&[g, h]));
    let fp = |g: usize, h: usize| z.index_of(&tgt.cocycle.f.get(&[g, h]));
    let g = src.cocycle.group();
    let n = src.total.objects;
    let objects = (0..n)
        .map(|o| {
            let (x, gg) = ix.split_obj(o);
            ix.obj(ar.z_add[x][phi(gg)], gg)
        })
        .collect();
    let morphisms = (0..src.total.morphisms)
        .map(|mm| {
            let (aa, x, gg) = ix.split_mor(mm);
            ix.mor(aa, ar.z_add[x][phi(gg)], gg)
        })
        .collect();
    let mut f2 = Vec::with_capacity(n * n);
    for o1 in 0..n {
        let (x, gg) = ix.split_obj(o1);
        for o2 in 0..n {
            let (y, h) = ix.split_obj(o2);
            f2.push(ix.mor(psi(gg, h), ar.zsum(&[x, phi(gg), y, phi(h), fp(gg, h)]), g.mul(gg, h)));
        }
    }
    Ok(TwoGroupMorphism { objects, morphisms, f2 })
}

/// The morphism of extensions induced by `(φ, ψ)`; refused with witnesses
/// if the defining identities fail. The report covers coherence and
/// commutation with `ι` and `q` on the nose.
pub fn morphism_from_pair(
    src: &CentralExtensionSeq,
    tgt: &CentralExtensionSeq,
    m: &CocycleMorphism,
) -> Result<PairMorphism, TwoGroupError> {
    let ids = m.verify(&src.cocycle, &tgt.cocycle);
    if !ids.is_ok() {
        return Err(TwoGroupError::Invalid(ids));
    }
    let functor = morphism_unchecked(src, tgt, m)?;
    let mut r = verify_morphism(&src.total, &tgt.total, &functor);
    use AxiomClass::Extension;
    for (k, &im) in src.iota.morphisms.iter().enumerate() {
        r.check(functor.morphisms[im] == tgt.iota.morphisms[k], Extension, "functor does not commute with ι", || vec![k]);
    }
    for (k, &io) in src.iota.objects.iter().enumerate() {
        r.check(functor.objects[io] == tgt.iota.objects[k], Extension, "functor does not commute with ι", || vec![k]);
    }
    for mm in 0..src.total.morphisms {
        r.check(
            tgt.q.morphisms[functor.morphisms[mm]] == src.q.morphisms[mm],
            Extension,
            "functor does not commute with q",
            || vec![mm],
        );
    }
    Ok(PairMorphism {
        functor,
        report: r.finish(),
    })
}

/// Components `(x, g) ↦ (γ(g), x + φ(g), g)` of the transformation induced by `γ ∈ C¹(G, A)`.
pub fn two_morphism_unchecked(
    src: &CentralExtensionSeq,
    m: &CocycleMorphism,
    gamma: &Cochain,
) -> Result<Vec<usize>, TwoGroupError> {
    let ix = src.indexing();
    let ar = Arith::new(&src.cocycle.tau)?;
    let z = src.cocycle.tau.target();
    let a = src.cocycle.tau.source();
    Ok((0..src.total.objects)
        .map(|o| {
            let (x, g) = ix.split_obj(o);
            ix.mor(a.index_of(&gamma.get(&[g])), ar.z_add[x][z.index_of(&m.phi.get(&[g]))], g)
        })
        .collect())
}

/// Verifies that `γ` induces a 2-morphism `𝓕_(φ,ψ) ⇒ 𝓕_(φ',ψ')`.
pub fn two_morphism_check(
    src: &CentralExtensionSeq,
    tgt: &CentralExtensionSeq,
    m: &CocycleMorphism,
    m2: &CocycleMorphism,
    gamma: &Cochain,
) -> Result<Report, TwoGroupError> {
    let f = morphism_unchecked(src, tgt, m)?;
    let g = morphism_unchecked(src, tgt, m2)?;
    let theta = two_morphism_unchecked(src, m, gamma)?;
    Ok(verify_two_morphism(&src.total, &tgt.total, &f, &g, &theta))
}

/// `(F♯, dF♯)` for an ordinary 2-cocycle `f` with values in `Z/Γ`, where
/// `Γ ↪ Z` is `tau` and `lift[q]` (indexed by elements of `Z/Γ`) is a set
/// theoretic section with `lift[0] = 0`. `Z/Γ` is presented by
/// [`hom_decompose`], so the section is read in its cokernel coordinates.
pub fn cocycle_from_ordinary(
    tau: &AbelianHom,
    f: &Cochain,
    lift: &[Vec<i64>],
) -> Result<GeneralizedCocycle, TwoGroupError> {
    let dec = hom_decompose(tau)?;
    if dec.kernel.order() != Some(1) {
        return Err(TwoGroupError::Other("Γ → Z must be injective".into()));
    }
    if f.coefficients() != &dec.cokernel || f.degree() != 2 || !f.action().is_trivial() {
        return Err(TwoGroupError::Other("f must be a 2-cochain valued in Z/Γ with trivial action".into()));
    }
    if let Some(w) = d_gp(f).support().into_iter().next() {
        return Err(TwoGroupError::Cohomology(crate::cohomology::CohomologyError::NotACocycle { witness: w }));
    }
    let q = &dec.cokernel;
    let z = tau.target();
    let qn = q.order().ok_or(TwoGroupError::Other("Z/Γ must be finite".into()))? as usize;
    if lift.len() != qn || lift.iter().any(|l| l.len() != z.ngens()) {
        return Err(TwoGroupError::Other(format!("lift needs one element of Z per element of Z/Γ ({qn})")));
    }
    if !z.is_zero(&{
        let mut l = lift[0].clone();
        z.normalize(&mut l);
        l
    }) {
        return Err(TwoGroupError::Other("lift must send 0 to 0".into()));
    }
    for (i, l) in lift.iter().enumerate() {
        if dec.cokernel_class(l) != q.element_at(i) {
            return Err(TwoGroupError::Other(format!("lift is not a section at element {i}")));
        }
    }
    let g = f.group();
    let z_action = Arc::new(GAction::trivial(g, z));
    let a_action = Arc::new(GAction::trivial(g, tau.source()));
    let f_sharp = Cochain::from_fn(&z_action, 2, |t| lift[q.index_of(&f.get(t))].clone());
    let df = d_gp(&f_sharp);

    let system = tau.to_int_matrix().hcat(&z.relation_matrix());
    let snf = smith_normal_form(&system);
    let a_gens = tau.source().ngens();
    let mut theta = Cochain::zero(&a_action, 3);
    for t in df.support() {
        let v: Vec<BigInt> = df.get(&t).iter().map(|&x| BigInt::from(x)).collect();
        let sol = solve_with(&snf, system.cols(), &v).ok_or_else(|| TwoGroupError::Other("dF♯ leaves Γ".into()))?;
        let coords: Option<Vec<i64>> = sol[..a_gens].iter().map(|x| x.to_i64()).collect();
        let coords = coords.ok_or(TwoGroupError::Other("overflow lifting dF♯".into()))?;
        theta.set(&t, coords)?;
    }
    GeneralizedCocycle::new(tau.clone(), f_sharp, theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::twisted_product;
    use crate::two_group::hidden_action_check;

    fn zmod(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n).unwrap()
    }

    fn cyc(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    fn doubling() -> AbelianHom {
        AbelianHom::new(zmod(2), zmod(4), vec![vec![2]]).unwrap()
    }

    fn with_f(g: &FiniteGroup, tau: &AbelianHom, f: impl FnMut(&[usize]) -> Vec<i64>) -> GeneralizedCocycle {
        let base = GeneralizedCocycle::zero(g, tau);
        let f = Cochain::from_fn(base.z_action(), 2, f);
        GeneralizedCocycle::new(tau.clone(), f, base.theta).unwrap()
    }

    #[test]
    fn product_extension() {
        let gc = GeneralizedCocycle::zero(&cyc(2), &doubling());
        let seq = extension_from_cocycle(&gc).unwrap();
        let r = seq.verify();
        assert!(r.is_ok(), "{r}");
        let band = skeleton_and_band(&seq).unwrap();
        assert!(band.report.is_ok(), "{}", band.report);
        assert_eq!(band.skel_z, zmod(2));
        assert_eq!(band.band.abelian_invariants(), Some(vec![2, 2]));
        assert!(hidden_action_check(&seq.total).is_ok());
    }

    #[test]
    fn band_of_f_equal_two_is_the_twisted_product() {
        let tau = AbelianHom::zero(&FgAbelianGroup::trivial(), &zmod(4));
        let gc = with_f(&cyc(2), &tau, |_| vec![2]);
        let seq = extension_from_cocycle(&gc).unwrap();
        assert!(seq.verify().is_ok());
        let band = skeleton_and_band(&seq).unwrap();
        assert_eq!(band.band.order(), 8);
        let tp = twisted_product(&gc.f).unwrap();
        assert_eq!(band.band.abelian_invariants(), tp.abelian_invariants());
        assert_eq!(band.band.order_statistics(), tp.order_statistics());
        assert_eq!(band.band.abelian_invariants(), Some(vec![2, 4]));
        assert!(band.compare_with_twisted_product(&seq).unwrap().is_ok());
    }

    #[test]
    fn identity_tau_gives_trivial_skeleton() {
        let gc = GeneralizedCocycle::zero(&cyc(2), &AbelianHom::identity(&zmod(2)));
        let seq = extension_from_cocycle(&gc).unwrap();
        let band = skeleton_and_band(&seq).unwrap();
        assert_eq!(band.skel_z, FgAbelianGroup::trivial());
        assert_eq!(band.band.order(), 2);
        assert!(band.report.is_ok());
    }

    #[test]
    fn abc_associator_over_zero_map() {
        let tau = AbelianHom::zero(&zmod(2), &zmod(2));
        let base = GeneralizedCocycle::zero(&cyc(2), &tau);
        let theta = Cochain::from_fn(base.a_action(), 3, |t| vec![(t[0] * t[1] * t[2]) as i64]);
        let gc = GeneralizedCocycle::new(tau, base.f, theta).unwrap();
        let seq = extension_from_cocycle(&gc).unwrap();
        let r = seq.verify();
        assert!(r.is_ok(), "{r}");
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn identity_tau_with_abc_has_no_compatible_f() {
        // Over ℤ/2 with trivial action dF(1,1,1) = 0 for every F, while τΘ(1,1,1) = 1.
        let tau = AbelianHom::identity(&zmod(2));
        let base = GeneralizedCocycle::zero(&cyc(2), &tau);
        let theta = Cochain::from_fn(base.a_action(), 3, |_| vec![1]);
        for v in 0..2 {
            let f = Cochain::from_fn(base.z_action(), 2, |_| vec![v]);
            let gc = GeneralizedCocycle::new(tau.clone(), f, theta.clone()).unwrap();
            assert!(!gc.verify().is_ok());
            assert!(matches!(extension_from_cocycle(&gc), Err(TwoGroupError::Invalid(_))));
        }
    }

    #[test]
    fn identity_morphism_is_identity_functor() {
        let gc = with_f(&cyc(2), &doubling(), |_| vec![1]);
        let seq = extension_from_cocycle(&gc).unwrap();
        let pm = morphism_from_pair(&seq, &seq, &CocycleMorphism::zero(&gc)).unwrap();
        assert!(pm.report.is_ok(), "{}", pm.report);
        assert_eq!(pm.functor.objects, (0..seq.total.objects).collect::<Vec<_>>());
        assert_eq!(pm.functor.morphisms, (0..seq.total.morphisms).collect::<Vec<_>>());
    }

    #[test]
    fn coboundary_shift_is_a_morphism() {
        let g = cyc(2);
        let tau = doubling();
        for f0 in 0..4 {
            let src = with_f(&g, &tau, |_| vec![f0]);
            for p in 0..4 {
                let phi = Cochain::from_fn(src.z_action(), 1, |_| vec![p]);
                // (F', Θ) with F' = F + dφ; the morphism (φ, 0) goes F' → F.
                let shifted = GeneralizedCocycle::new(tau.clone(), src.f.add(&d_gp(&phi)).unwrap(), src.theta.clone()).unwrap();
                let s_seq = extension_from_cocycle(&shifted).unwrap();
                let t_seq = extension_from_cocycle(&src).unwrap();
                let m = CocycleMorphism {
                    phi,
                    psi: Cochain::zero(src.a_action(), 2),
                };
                let pm = morphism_from_pair(&s_seq, &t_seq, &m).unwrap();
                assert!(pm.report.is_ok(), "{}", pm.report);
                let mut objs = pm.functor.objects.clone();
                objs.sort_unstable();
                assert_eq!(objs, (0..s_seq.total.objects).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn broken_morphism_refused() {
        let gc = with_f(&cyc(2), &doubling(), |_| vec![1]);
        let seq = extension_from_cocycle(&gc).unwrap();
        let mut m = CocycleMorphism::zero(&gc);
        m.phi.set(&[1], vec![1]).unwrap();
        // dφ(1,1) = 2 ≠ 0, so (φ, 0) is not an endomorphism of (F, 0).
        assert!(matches!(morphism_from_pair(&seq, &seq, &m), Err(TwoGroupError::Invalid(_))));
    }

    #[test]
    fn coherence_detects_wrong_psi() {
        // A = ℤ/2 → Z = ℤ/4 over ℤ/3; F = 0, Θ = 0. ψ with dψ ≠ 0 violates Θ = Θ' + dψ.
        let g = cyc(3);
        let gc = GeneralizedCocycle::zero(&g, &doubling());
        let seq = extension_from_cocycle(&gc).unwrap();
        let mut psi = Cochain::zero(gc.a_action(), 2);
        psi.set(&[1, 1], vec![1]).unwrap();
        let m = CocycleMorphism {
            phi: Cochain::zero(gc.z_action(), 1),
            psi,
        };
        assert!(!m.verify(&gc, &gc).is_ok());
        let functor = morphism_unchecked(&seq, &seq, &m).unwrap();
        let r = verify_morphism(&seq.total, &seq.total, &functor);
        assert!(!r.is_ok());
    }

    #[test]
    fn ordinary_cocycle_lift() {
        // Z = ℤ, Γ = 2ℤ, G = ℤ/2, f(1,1) = 1 mod 2, lift {0, 1}.
        let zz = FgAbelianGroup::integers();
        let tau = AbelianHom::new(zz.clone(), zz.clone(), vec![vec![2]]).unwrap();
        let q = Arc::new(GAction::trivial(&cyc(2), &zmod(2)));
        let f = Cochain::from_fn(&q, 2, |_| vec![1]);
        let gc = cocycle_from_ordinary(&tau, &f, &[vec![0], vec![1]]).unwrap();
        assert_eq!(gc.f.get(&[1, 1]), vec![1]);
        // dF♯(1,1,1) = F(1,1) − F(0,1) + F(1,0) − F(1,1) = 0.
        assert!(gc.theta.is_zero());
        assert!(gc.verify().is_ok());
        assert!(cocycle_from_ordinary(&tau, &f, &[vec![0], vec![2]]).is_err());
        assert!(cocycle_from_ordinary(&tau, &f, &[vec![2], vec![1]]).is_err());
    }

    #[test]
    fn ordinary_cocycle_lift_with_nonzero_theta() {
        // Z = ℤ, Γ = 3ℤ, G = ℤ/3 with the carry cocycle: F♯ is not a cocycle, dF♯ lands in 3ℤ.
        let zz = FgAbelianGroup::integers();
        let tau = AbelianHom::new(zz.clone(), zz.clone(), vec![vec![3]]).unwrap();
        let dec = hom_decompose(&tau).unwrap();
        let gen = dec.cokernel_generators[0][0];
        let lift: Vec<Vec<i64>> = (0..3).map(|k| vec![k * gen]).collect();
        let q = Arc::new(GAction::trivial(&cyc(3), &dec.cokernel));
        // Carry cocycle plus db with b(1) = 2, b(2) = 0: the integer values leave {0, 1, 2}.
        let b = [0i64, 2, 0];
        let f = Cochain::from_fn(&q, 2, |t| vec![(i64::from(t[0] + t[1] >= 3) + b[t[1]] - b[(t[0] + t[1]) % 3] + b[t[0]]).rem_euclid(3)]);
        let gc = cocycle_from_ordinary(&tau, &f, &lift).unwrap();
        assert!(!gc.theta.is_zero());
        assert_eq!(gc.theta.push_forward(&tau, gc.z_action()).unwrap(), d_gp(&gc.f));
        assert!(gc.verify().is_ok());
    }

    #[test]
    fn full_subgroup_lift() {
        let z4 = zmod(4);
        let tau = AbelianHom::identity(&z4);
        let q = Arc::new(GAction::trivial(&cyc(2), &FgAbelianGroup::trivial()));
        let f = Cochain::zero(&q, 2);
        let gc = cocycle_from_ordinary(&tau, &f, &[vec![0]]).unwrap();
        assert!(gc.verify().is_ok());
    }

    #[test]
    fn spec_round_trip() {
        let gc = with_f(&cyc(2), &doubling(), |_| vec![3]);
        let json = serde_json::to_string(&gc.to_spec()).unwrap();
        let back: GeneralizedCocycleSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build().unwrap(), gc);
    }
}
