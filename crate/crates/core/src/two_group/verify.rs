use super::report::{AxiomClass::*, Report};
use super::tables::{TwoGroup, TwoGroupMorphism};

fn shape(tg: &TwoGroup) -> Report {
    let mut r = Report::new();
    let (no, nm) = (tg.objects, tg.morphisms);
    let lens = [
        ("source", tg.source.len(), nm),
        ("target", tg.target.len(), nm),
        ("identity", tg.identity.len(), no),
        ("tensor_objects", tg.tensor_objects.len(), no * no),
        ("tensor_morphisms", tg.tensor_morphisms.len(), nm * nm),
        ("inverse_objects", tg.inverse_objects.len(), no),
        ("inverse_morphisms", tg.inverse_morphisms.len(), nm),
        ("associator", tg.associator.len(), no * no * no),
    ];
    for (i, (name, len, want)) in lens.iter().enumerate() {
        if len != want {
            r.fail(Shape, &format!("{name} table has wrong length"), vec![i, *len, *want]);
        }
    }
    if no == 0 {
        r.fail(Shape, "no unit object", vec![]);
    }
    if !r.is_ok() {
        return r;
    }
    let in_range = |r: &mut Report, name: &str, v: &[usize], bound: usize| {
        for (i, &x) in v.iter().enumerate() {
            r.check(x < bound, Shape, &format!("{name} entry out of range"), || vec![i, x]);
        }
    };
    in_range(&mut r, "source", &tg.source, no);
    in_range(&mut r, "target", &tg.target, no);
    in_range(&mut r, "identity", &tg.identity, nm);
    in_range(&mut r, "tensor_objects", &tg.tensor_objects, no);
    in_range(&mut r, "tensor_morphisms", &tg.tensor_morphisms, nm);
    in_range(&mut r, "inverse_objects", &tg.inverse_objects, no);
    in_range(&mut r, "inverse_morphisms", &tg.inverse_morphisms, nm);
    in_range(&mut r, "associator", &tg.associator, nm);
    for (&(m, n), &p) in &tg.compose {
        r.check(m < nm && n < nm && p < nm, Shape, "compose entry out of range", || vec![m, n, p]);
    }
    r
}

fn category(tg: &TwoGroup, r: &mut Report) {
    let nm = tg.morphisms;
    for x in 0..tg.objects {
        let i = tg.id(x);
        r.check(tg.s(i) == x && tg.t(i) == x, Category, "identity has wrong source or target", || vec![x]);
    }
    for (&(m, n), &p) in &tg.compose {
        r.check(tg.s(m) == tg.t(n), Category, "composition defined on a non-composable pair", || vec![m, n]);
        r.check(
            tg.s(p) == tg.s(n) && tg.t(p) == tg.t(m),
            Category,
            "composite has wrong source or target",
            || vec![m, n],
        );
    }
    let mut by_target: Vec<Vec<usize>> = vec![Vec::new(); tg.objects];
    for n in 0..nm {
        by_target[tg.t(n)].push(n);
    }
    for m in 0..nm {
        for &n in &by_target[tg.s(m)] {
            r.check(tg.comp_opt(m, n).is_some(), Category, "composable pair missing from composition", || vec![m, n]);
        }
        r.check(
            tg.comp_opt(m, tg.id(tg.s(m))) == Some(m) && tg.comp_opt(tg.id(tg.t(m)), m) == Some(m),
            Category,
            "identity is not a unit for composition",
            || vec![m],
        );
        let invertible = by_target[tg.s(m)].iter().any(|&n| {
            tg.comp_opt(m, n) == Some(tg.id(tg.s(n))) && tg.comp_opt(n, m) == Some(tg.id(tg.s(m)))
        });
        r.check(invertible, Category, "morphism is not invertible", || vec![m]);
    }
    for (&(m, n), &mn) in &tg.compose {
        for &k in &by_target[tg.s(n)] {
            let lhs = tg.comp_opt(mn, k);
            let rhs = tg.comp_opt(n, k).and_then(|nk| tg.comp_opt(m, nk));
            r.check(lhs.is_some() && lhs == rhs, Category, "composition is not associative", || vec![m, n, k]);
        }
    }
}

fn tensor(tg: &TwoGroup, r: &mut Report) {
    let nm = tg.morphisms;
    for m in 0..nm {
        for n in 0..nm {
            let p = tg.tensor_mor(m, n);
            r.check(
                tg.s(p) == tg.tensor_obj(tg.s(m), tg.s(n)) && tg.t(p) == tg.tensor_obj(tg.t(m), tg.t(n)),
                Tensor,
                "tensor of morphisms has wrong source or target",
                || vec![m, n],
            );
        }
    }
    for x in 0..tg.objects {
        for y in 0..tg.objects {
            r.check(
                tg.tensor_mor(tg.id(x), tg.id(y)) == tg.id(tg.tensor_obj(x, y)),
                Tensor,
                "tensor does not preserve identities",
                || vec![x, y],
            );
        }
    }
    let pairs: Vec<((usize, usize), usize)> = tg.compose.iter().map(|(&k, &v)| (k, v)).collect();
    for &((m1, n1), c1) in &pairs {
        for &((m2, n2), c2) in &pairs {
            let lhs = tg.tensor_mor(c1, c2);
            let rhs = tg.comp_opt(tg.tensor_mor(m1, m2), tg.tensor_mor(n1, n2));
            r.check(rhs == Some(lhs), Tensor, "interchange law fails", || vec![m1, n1, m2, n2]);
        }
    }
}

fn unit(tg: &TwoGroup, r: &mut Report) {
    r.check(tg.id(0) == 0, Unit, "identity of the unit is not morphism 0", || vec![tg.id(0)]);
    for x in 0..tg.objects {
        r.check(
            tg.tensor_obj(x, 0) == x && tg.tensor_obj(0, x) == x,
            Unit,
            "unit law fails on objects",
            || vec![x],
        );
    }
    let e = tg.id(0);
    for m in 0..tg.morphisms {
        r.check(
            tg.tensor_mor(m, e) == m && tg.tensor_mor(e, m) == m,
            Unit,
            "unit law fails on morphisms",
            || vec![m],
        );
    }
}

fn inversion(tg: &TwoGroup, r: &mut Report) {
    for x in 0..tg.objects {
        let xb = tg.inv_obj(x);
        r.check(
            tg.tensor_obj(x, xb) == 0 && tg.tensor_obj(xb, x) == 0,
            Inversion,
            "inverse law fails on objects",
            || vec![x],
        );
        r.check(
            tg.inv_mor(tg.id(x)) == tg.id(xb),
            Inversion,
            "inversion does not preserve identities",
            || vec![x],
        );
    }
    let e = tg.id(0);
    for m in 0..tg.morphisms {
        let mb = tg.inv_mor(m);
        r.check(
            tg.s(mb) == tg.inv_obj(tg.s(m)) && tg.t(mb) == tg.inv_obj(tg.t(m)),
            Inversion,
            "inverse morphism has wrong source or target",
            || vec![m],
        );
        r.check(
            tg.tensor_mor(m, mb) == e && tg.tensor_mor(mb, m) == e,
            Inversion,
            "inverse law fails on morphisms",
            || vec![m],
        );
    }
    for (&(m, n), &p) in &tg.compose {
        r.check(
            tg.comp_opt(tg.inv_mor(m), tg.inv_mor(n)) == Some(tg.inv_mor(p)),
            Inversion,
            "inversion does not preserve composition",
            || vec![m, n],
        );
    }
}

fn associator(tg: &TwoGroup, r: &mut Report) {
    let no = tg.objects;
    for x in 0..no {
        for y in 0..no {
            for z in 0..no {
                let a = tg.alpha(x, y, z);
                let xy_z = tg.tensor_obj(tg.tensor_obj(x, y), z);
                let x_yz = tg.tensor_obj(x, tg.tensor_obj(y, z));
                r.check(
                    tg.s(a) == xy_z && tg.t(a) == x_yz,
                    Associator,
                    "associator has wrong source or target",
                    || vec![x, y, z],
                );
                if x == 0 || y == 0 || z == 0 {
                    r.check(a == tg.id(xy_z), Associator, "associator is not trivial at the unit", || vec![x, y, z]);
                }
            }
        }
    }
    let nm = tg.morphisms;
    for m1 in 0..nm {
        for m2 in 0..nm {
            let m12 = tg.tensor_mor(m1, m2);
            for m3 in 0..nm {
                let lhs = tg.comp_opt(tg.alpha(tg.t(m1), tg.t(m2), tg.t(m3)), tg.tensor_mor(m12, m3));
                let rhs = tg.comp_opt(tg.tensor_mor(m1, tg.tensor_mor(m2, m3)), tg.alpha(tg.s(m1), tg.s(m2), tg.s(m3)));
                r.check(lhs.is_some() && lhs == rhs, Associator, "associator is not natural", || vec![m1, m2, m3]);
            }
        }
    }
}

fn associator_notes(tg: &TwoGroup, r: &mut Report) {
    for g in 0..tg.objects {
        let gb = tg.inv_obj(g);
        if tg.alpha(g, gb, g) != tg.id(g) {
            r.note(Associator, "associator at (g, g⁻¹, g) is not an identity", vec![g]);
        }
        if tg.alpha(gb, g, gb) != tg.id(gb) {
            r.note(Associator, "associator at (g⁻¹, g, g⁻¹) is not an identity", vec![g]);
        }
    }
    let units = tg.unit_class();
    let no = tg.objects;
    for x in 0..no {
        for y in 0..no {
            for z in 0..no {
                let touches = units.binary_search(&x).is_ok() || units.binary_search(&y).is_ok() || units.binary_search(&z).is_ok();
                let a = tg.alpha(x, y, z);
                if touches && tg.s(a) == tg.t(a) && a != tg.id(tg.s(a)) {
                    r.note(Associator, "associator is not trivial at an argument isomorphic to the unit", vec![x, y, z]);
                }
            }
        }
    }
}

fn pentagon(tg: &TwoGroup, r: &mut Report) {
    let no = tg.objects;
    for g in 0..no {
        for h in 0..no {
            let gh = tg.tensor_obj(g, h);
            for k in 0..no {
                let hk = tg.tensor_obj(h, k);
                for l in 0..no {
                    let kl = tg.tensor_obj(k, l);
                    let lhs = tg.comp_opt(tg.alpha(g, h, kl), tg.alpha(gh, k, l));
                    let rhs = tg
                        .comp_opt(tg.alpha(g, hk, l), tg.tensor_mor(tg.alpha(g, h, k), tg.id(l)))
                        .and_then(|p| tg.comp_opt(tg.tensor_mor(tg.id(g), tg.alpha(h, k, l)), p));
                    r.check(lhs.is_some() && lhs == rhs, Pentagon, "pentagon identity fails", || vec![g, h, k, l]);
                }
            }
        }
    }
}

/// Checks every 2-group axiom exhaustively. Structural violations stop the
/// sweep after the shape check; the remaining families are independent.
pub fn verify_2group(tg: &TwoGroup) -> Report {
    let mut r = shape(tg);
    if !r.is_ok() {
        return r.finish();
    }
    category(tg, &mut r);
    tensor(tg, &mut r);
    unit(tg, &mut r);
    inversion(tg, &mut r);
    associator(tg, &mut r);
    associator_notes(tg, &mut r);
    pentagon(tg, &mut r);
    r.finish()
}

/// Checks that `f` is a morphism of 2-groups `src → tgt`: functoriality,
/// unit constraints, naturality of `F₂` and the coherence condition with
/// the associators. `F₂(g, ḡ) = id` is reported as a note.
pub fn verify_morphism(src: &TwoGroup, tgt: &TwoGroup, f: &TwoGroupMorphism) -> Report {
    let mut r = Report::new();
    let no = src.objects;
    if f.objects.len() != no || f.morphisms.len() != src.morphisms || f.f2.len() != no * no {
        r.fail(Shape, "functor tables have wrong length", vec![f.objects.len(), f.morphisms.len(), f.f2.len()]);
        return r.finish();
    }
    if f.objects.iter().any(|&x| x >= tgt.objects) || f.morphisms.iter().chain(&f.f2).any(|&m| m >= tgt.morphisms) {
        r.fail(Shape, "functor entry out of range", vec![]);
        return r.finish();
    }
    let f0 = |x: usize| f.objects[x];
    let f1 = |m: usize| f.morphisms[m];
    let f2 = |x: usize, y: usize| f.f2[x * no + y];

    for m in 0..src.morphisms {
        r.check(
            tgt.s(f1(m)) == f0(src.s(m)) && tgt.t(f1(m)) == f0(src.t(m)),
            Functor,
            "functor does not preserve source or target",
            || vec![m],
        );
    }
    for x in 0..no {
        r.check(f1(src.id(x)) == tgt.id(f0(x)), Functor, "functor does not preserve identities", || vec![x]);
    }
    for (&(m, n), &p) in &src.compose {
        r.check(
            tgt.comp_opt(f1(m), f1(n)) == Some(f1(p)),
            Functor,
            "functor does not preserve composition",
            || vec![m, n],
        );
    }
    r.check(f0(0) == 0, Unit, "functor does not preserve the unit", Vec::new);
    for x in 0..no {
        let idfx = tgt.id(f0(x));
        r.check(f2(x, 0) == idfx && f2(0, x) == idfx, Unit, "F₂ is not trivial at the unit", || vec![x]);
        let xb = src.inv_obj(x);
        if f2(x, xb) != tgt.id(0) || f2(xb, x) != tgt.id(0) {
            r.note(Unit, "F₂(g, g⁻¹) is not the identity of the unit", vec![x]);
        }
    }
    for x in 0..no {
        for y in 0..no {
            let p = f2(x, y);
            r.check(
                tgt.s(p) == tgt.tensor_obj(f0(x), f0(y)) && tgt.t(p) == f0(src.tensor_obj(x, y)),
                Functor,
                "F₂ has wrong source or target",
                || vec![x, y],
            );
        }
    }
    for m in 0..src.morphisms {
        for n in 0..src.morphisms {
            let lhs = tgt.comp_opt(f1(src.tensor_mor(m, n)), f2(src.s(m), src.s(n)));
            let rhs = tgt.comp_opt(f2(src.t(m), src.t(n)), tgt.tensor_mor(f1(m), f1(n)));
            r.check(lhs.is_some() && lhs == rhs, Naturality, "F₂ is not natural", || vec![m, n]);
        }
    }
    for x in 0..no {
        for y in 0..no {
            let xy = src.tensor_obj(x, y);
            for z in 0..no {
                let yz = src.tensor_obj(y, z);
                let lhs = tgt
                    .comp_opt(tgt.tensor_mor(tgt.id(f0(x)), f2(y, z)), tgt.alpha(f0(x), f0(y), f0(z)))
                    .and_then(|p| tgt.comp_opt(f2(x, yz), p));
                let rhs = tgt
                    .comp_opt(f2(xy, z), tgt.tensor_mor(f2(x, y), tgt.id(f0(z))))
                    .and_then(|p| tgt.comp_opt(f1(src.alpha(x, y, z)), p));
                r.check(lhs.is_some() && lhs == rhs, Coherence, "coherence with the associators fails", || vec![x, y, z]);
            }
        }
    }
    r.finish()
}

/// Checks that `theta` (object ↦ morphism of `tgt`) is a 2-morphism `f ⇒ g`.
pub fn verify_two_morphism(
    src: &TwoGroup,
    tgt: &TwoGroup,
    f: &TwoGroupMorphism,
    g: &TwoGroupMorphism,
    theta: &[usize],
) -> Report {
    let mut r = Report::new();
    let no = src.objects;
    if theta.len() != no || theta.iter().any(|&m| m >= tgt.morphisms) {
        r.fail(Shape, "2-morphism table has wrong length or range", vec![theta.len()]);
        return r.finish();
    }
    for x in 0..no {
        r.check(
            tgt.s(theta[x]) == f.objects[x] && tgt.t(theta[x]) == g.objects[x],
            Naturality,
            "component has wrong source or target",
            || vec![x],
        );
    }
    for m in 0..src.morphisms {
        let lhs = tgt.comp_opt(theta[src.t(m)], f.morphisms[m]);
        let rhs = tgt.comp_opt(g.morphisms[m], theta[src.s(m)]);
        r.check(lhs.is_some() && lhs == rhs, Naturality, "transformation is not natural", || vec![m]);
    }
    for x in 0..no {
        for y in 0..no {
            let lhs = tgt.comp_opt(g.f2[x * no + y], tgt.tensor_mor(theta[x], theta[y]));
            let rhs = tgt.comp_opt(theta[src.tensor_obj(x, y)], f.f2[x * no + y]);
            r.check(lhs.is_some() && lhs == rhs, Coherence, "2-morphism condition fails", || vec![x, y]);
        }
    }
    r.finish()
}

/// Finite analogue of the action of the morphisms between objects
/// isomorphic to the unit on all morphisms by `(a, f) ↦ a ⊗ f`: checks that
/// it is an action, that it is free, and that `s⁻¹(𝟙)`-orbits are exactly
/// the fibres of the source map.
pub fn hidden_action_check(tg: &TwoGroup) -> Report {
    let mut r = Report::new();
    let units = tg.unit_class();
    let g_one: Vec<usize> = (0..tg.morphisms)
        .filter(|&m| units.binary_search(&tg.s(m)).is_ok() && units.binary_search(&tg.t(m)).is_ok())
        .collect();
    let s_one: Vec<usize> = (0..tg.morphisms).filter(|&m| tg.s(m) == 0).collect();
    for &a in &g_one {
        for &b in &g_one {
            for f in 0..tg.morphisms {
                r.check(
                    tg.tensor_mor(a, tg.tensor_mor(b, f)) == tg.tensor_mor(tg.tensor_mor(a, b), f),
                    Action,
                    "tensoring is not an action",
                    || vec![a, b, f],
                );
            }
        }
    }
    for f in 0..tg.morphisms {
        let mut images: Vec<usize> = g_one.iter().map(|&a| tg.tensor_mor(a, f)).collect();
        images.sort_unstable();
        let before = images.len();
        images.dedup();
        r.check(images.len() == before, Action, "action is not free", || vec![f]);
    }
    let mut orbit_of = vec![usize::MAX; tg.morphisms];
    for x in 0..tg.objects {
        let f = tg.id(x);
        for &a in &s_one {
            let af = tg.tensor_mor(a, f);
            r.check(tg.s(af) == x, Action, "action does not preserve the source", || vec![a, f]);
            orbit_of[af] = x;
        }
    }
    for m in 0..tg.morphisms {
        r.check(orbit_of[m] == tg.s(m), Action, "orbit of the source fibre misses a morphism", || vec![m]);
    }
    r.check(
        tg.morphisms == s_one.len() * tg.objects,
        Action,
        "morphism count differs from |s⁻¹(𝟙)|·|objects|",
        || vec![tg.morphisms, s_one.len(), tg.objects],
    );
    r.finish()
}
