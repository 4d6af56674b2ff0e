//! Property tests for the exact layer: group cohomology, Smith normal form,
//! twisted products and finite 2-groups.

use std::sync::Arc;

use catext::algebra::snf::{smith_normal_form, IntMatrix};
use catext::algebra::{hom_decompose, verify_finite_group, AbelianHom, FgAbelianGroup, FiniteGroup, GAction};
use catext::cohomology::{
    cocycle_failures, cohomology_group, d_gp, les_exactness_check, twisted_product, twisted_product_unchecked, Cochain,
};
use catext::two_group::{
    extension_from_cocycle, morphism_from_pair, skeletal_2group_unchecked, verify_2group, AxiomClass, CocycleMorphism,
    GeneralizedCocycle,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn group(k: usize) -> FiniteGroup {
    match k {
        0..=4 => FiniteGroup::cyclic(k + 2).unwrap(),
        5 => FiniteGroup::symmetric(3).unwrap(),
        _ => FiniteGroup::cyclic(2).unwrap().direct_product(&FiniteGroup::cyclic(2).unwrap()),
    }
}

fn module(k: usize) -> FgAbelianGroup {
    match k {
        0 => FgAbelianGroup::cyclic(2).unwrap(),
        1 => FgAbelianGroup::cyclic(3).unwrap(),
        2 => FgAbelianGroup::cyclic(4).unwrap(),
        3 => FgAbelianGroup::integers(),
        _ => FgAbelianGroup::new(1, vec![2]).unwrap(),
    }
}

/// A nontrivial character `g → ℤ/2`, found among a few candidate maps.
fn sign(g: &FiniteGroup) -> Option<Vec<bool>> {
    let n = g.order();
    let z2 = FiniteGroup::cyclic(2).unwrap();
    let candidates: [Vec<bool>; 3] = [
        (0..n).map(|i| i % 2 == 1).collect(),
        (0..n).map(|i| i >= n / 2).collect(),
        (0..n).map(|i| g.element_order(i) == 2).collect(),
    ];
    candidates.into_iter().find(|c| {
        let map: Vec<usize> = c.iter().map(|&s| usize::from(s)).collect();
        map.contains(&1) && g.is_homomorphism(&z2, &map)
    })
}

/// Trivial action, or the sign action by negation when `twist` is set and
/// `g` has a sign character.
fn action(g: &FiniteGroup, m: &FgAbelianGroup, twist: bool) -> Arc<GAction> {
    if twist {
        if let Some(signs) = sign(g) {
            let neg = AbelianHom::identity(m);
            let neg = AbelianHom::new(m.clone(), m.clone(), neg.matrix().iter().map(|r| r.iter().map(|x| -x).collect()).collect()).unwrap();
            let act = signs.iter().map(|&s| if s { neg.clone() } else { AbelianHom::identity(m) }).collect();
            return Arc::new(GAction::new(g, m, act).unwrap());
        }
    }
    Arc::new(GAction::trivial(g, m))
}

fn random_cochain(a: &Arc<GAction>, degree: usize, seed: &[i64]) -> Cochain {
    let mut i = 0;
    Cochain::from_fn(a, degree, |_| {
        let out = (0..a.module().ngens())
            .map(|_| {
                i += 1;
                seed[i % seed.len()]
            })
            .collect();
        i += 3;
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn d_squared_is_zero(gk in 0usize..7, mk in 0usize..5, twist: bool, degree in 1usize..=3, seed in prop::collection::vec(-50i64..50, 1..40)) {
        let g = group(gk);
        let a = action(&g, &module(mk), twist);
        let c = random_cochain(&a, degree, &seed);
        prop_assert!(d_gp(&d_gp(&c)).is_zero());
    }

    #[test]
    fn relabelling_commutes_with_d(gk in 0usize..7, mk in 0usize..3, degree in 1usize..=2, seed in prop::collection::vec(-9i64..9, 1..20), shuffle in any::<u64>()) {
        let g = group(gk);
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = shuffle;
        for i in (2..n).rev() {
            perm.swap(i, 1 + (s as usize) % i);
            s = s.rotate_left(7) ^ 0x9e37_79b9;
        }
        let h = g.relabel(&perm).unwrap();
        let m = module(mk);
        let a = Arc::new(GAction::trivial(&g, &m));
        let b = Arc::new(GAction::trivial(&h, &m));
        let c = random_cochain(&a, degree, &seed);
        prop_assert_eq!(d_gp(&c).relabel(&perm, &b).unwrap(), d_gp(&c.relabel(&perm, &b).unwrap()));
        for k in 1..=2 {
            prop_assert_eq!(
                cohomology_group(&a, k).unwrap().group_iso_class,
                cohomology_group(&b, k).unwrap().group_iso_class
            );
        }
    }

    #[test]
    fn twisted_product_respects_coboundaries(gk in 0usize..5, mk in 0usize..3, fseed in prop::collection::vec(-9i64..9, 1..20), bseed in prop::collection::vec(-9i64..9, 1..8)) {
        // Start from a cocycle: the lift of an ordinary extension class is f = d(u) + carry multiple.
        let g = group(gk);
        let m = module(mk);
        let a = Arc::new(GAction::trivial(&g, &m));
        let u = random_cochain(&a, 1, &fseed);
        let n = g.order();
        let carry = Cochain::from_fn(&a, 2, |t| vec![i64::from(t[0] + t[1] >= n) * fseed[0]]);
        let f = carry.add(&d_gp(&u)).unwrap();
        let b = random_cochain(&a, 1, &bseed);
        let f2 = f.add(&d_gp(&b)).unwrap();
        let e1 = twisted_product(&f).unwrap();
        let e2 = twisted_product(&f2).unwrap();
        // Φ(a, g) = (a − b(g), g) is an isomorphism from the f-product to the (f + db)-product.
        let z = m.order().unwrap() as usize;
        let map: Vec<usize> = (0..e1.order())
            .map(|i| {
                let (gi, ai) = (i / z, i % z);
                let mut x = m.sub(&m.element_at(ai), &b.get(&[gi]));
                m.normalize(&mut x);
                gi * z + m.index_of(&x)
            })
            .collect();
        prop_assert!(e1.is_homomorphism(&e2, &map));
        let mut seen = map.clone();
        seen.sort_unstable();
        seen.dedup();
        prop_assert_eq!(seen.len(), e1.order());
    }

    #[test]
    fn twisted_product_is_a_group_iff_cocycle(gk in 0usize..3, mk in 0usize..3, seed in prop::collection::vec(0i64..4, 1..12)) {
        let g = group(gk);
        let a = Arc::new(GAction::trivial(&g, &module(mk)));
        let f = random_cochain(&a, 2, &seed);
        let table = twisted_product_unchecked(&f).unwrap();
        prop_assert_eq!(verify_finite_group(&table).is_empty(), cocycle_failures(&f).is_empty());
        prop_assert_eq!(twisted_product(&f).is_ok(), d_gp(&f).is_zero());
    }

    #[test]
    fn pentagon_iff_cocycle(gk in 0usize..2, mk in 0usize..2, seed in prop::collection::vec(0i64..3, 1..16)) {
        let g = group(gk);
        let a = Arc::new(GAction::trivial(&g, &module(mk)));
        let theta = random_cochain(&a, 3, &seed);
        let r = verify_2group(&skeletal_2group_unchecked(&theta).unwrap());
        prop_assert_eq!(!r.has_class(AxiomClass::Pentagon), d_gp(&theta).is_zero());
        prop_assert_eq!(r.is_ok(), d_gp(&theta).is_zero());
    }

    #[test]
    fn equivalent_cocycles_give_connected_extensions(gk in 0usize..2, tk in 0usize..3, fseed in prop::collection::vec(0i64..4, 1..6), pseed in prop::collection::vec(0i64..4, 1..6)) {
        let g = group(gk);
        let (a, z, m) = match tk {
            0 => (2, 4, 2),
            1 => (2, 2, 0),
            _ => (2, 2, 1),
        };
        let tau = AbelianHom::new(FgAbelianGroup::cyclic(a).unwrap(), FgAbelianGroup::cyclic(z).unwrap(), vec![vec![m]]).unwrap();
        let base = GeneralizedCocycle::zero(&g, &tau);
        let n = g.order();
        // A valid (F, Θ): the carry cocycle times a constant, with Θ = 0.
        let f0 = Cochain::from_fn(base.z_action(), 2, |t| vec![i64::from(t[0] + t[1] >= n) * fseed[0]]);
        let target = GeneralizedCocycle::new(tau.clone(), f0, base.theta.clone()).unwrap();
        prop_assert!(target.verify().is_ok());
        let phi = random_cochain(base.z_action(), 1, &fseed);
        let psi = random_cochain(base.a_action(), 2, &pseed);
        let f = target.f.add(&d_gp(&phi)).unwrap().add(&psi.push_forward(&tau, base.z_action()).unwrap()).unwrap();
        let theta = target.theta.add(&d_gp(&psi)).unwrap();
        let source = GeneralizedCocycle::new(tau.clone(), f, theta).unwrap();
        prop_assert!(source.verify().is_ok());
        let s_seq = extension_from_cocycle(&source).unwrap();
        let t_seq = extension_from_cocycle(&target).unwrap();
        // Strict inversion needs F(g, ḡ) = F(ḡ, g), i.e. τΘ(g, ḡ, g) = 0; everything else must hold.
        let rep = s_seq.verify();
        let tau_theta = source.theta.push_forward(&tau, base.z_action()).unwrap();
        let symmetric = (1..n).all(|x| tau_theta.get(&[x, g.inv(x), x]).iter().all(|&v| v == 0));
        prop_assert!(rep.violations.iter().all(|v| v.class == AxiomClass::Inversion), "{}", rep);
        prop_assert_eq!(rep.is_ok(), symmetric);
        prop_assert!(s_seq.exactness().is_ok());
        let pm = morphism_from_pair(&s_seq, &t_seq, &CocycleMorphism { phi, psi }).unwrap();
        prop_assert!(pm.report.is_ok(), "{}", pm.report);
    }

    #[test]
    fn smith_normal_form_invariants(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-20i64..20, 16)) {
        let m = IntMatrix::from_rows(&(0..rows).map(|r| entries[r * 4..r * 4 + cols].to_vec()).collect::<Vec<_>>());
        let s = smith_normal_form(&m);
        prop_assert_eq!(&s.u.mul(&m).mul(&s.v), &s.d);
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(rows));
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(cols));
        for r in 0..rows {
            for c in 0..cols {
                prop_assert!(r == c || s.d.get(r, c).is_zero());
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        if rows == cols {
            let prod: BigInt = diag.iter().fold(BigInt::one(), |acc, x| acc * x);
            prop_assert_eq!(prod, m.determinant().abs());
        }
    }

    #[test]
    fn hom_decomposition_orders(s1 in 2i64..7, s2 in 1i64..4, t1 in 2i64..9, m1 in -8i64..8, m2 in -8i64..8) {
        let src = FgAbelianGroup::new(0, if s2 == 1 { vec![s1] } else { vec![s2, s2 * s1] }).unwrap();
        let tgt = FgAbelianGroup::cyclic(t1).unwrap();
        let row = if s2 == 1 { vec![m1] } else { vec![m1, m2] };
        // Scale so the map is well defined: each column c must satisfy d_c · m_c ≡ 0 mod t1.
        let row: Vec<i64> = row.iter().enumerate().map(|(c, &x)| {
            let d = src.modulus(c).unwrap();
            let step = t1 / num_integer::gcd(d, t1);
            x * step
        }).collect();
        let h = AbelianHom::new(src.clone(), tgt.clone(), vec![row]).unwrap();
        let dec = hom_decompose(&h).unwrap();
        let (k, i, c) = (dec.kernel.order().unwrap(), dec.image.order().unwrap(), dec.cokernel.order().unwrap());
        prop_assert_eq!(k * i, src.order().unwrap());
        prop_assert_eq!(i * c, tgt.order().unwrap());
        // Oracle: count the image by brute force.
        let mut image: Vec<usize> = src.elements().unwrap().iter().map(|x| tgt.index_of(&h.apply(x))).collect();
        image.sort_unstable();
        image.dedup();
        prop_assert_eq!(image.len() as u64, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cone_sequence_is_exact(gk in 0usize..2, a in 1i64..3, z in 2i64..5, m in 0i64..4) {
        let g = group(gk);
        let src = FgAbelianGroup::cyclic(a).unwrap();
        let tgt = FgAbelianGroup::cyclic(z).unwrap();
        let row = if a == 1 { vec![] } else { vec![m * (z / num_integer::gcd(a, z))] };
        let tau = AbelianHom::new(src, tgt, vec![row]).unwrap();
        let r = les_exactness_check(&g, &tau).unwrap();
        prop_assert!(r.ill_defined.is_empty());
        prop_assert!(r.exact, "{:?}", r);
    }
}

#[test]
fn cyclic_cohomology_with_integer_coefficients() {
    for n in 2..=6 {
        let g = FiniteGroup::cyclic(n).unwrap();
        let a = Arc::new(GAction::trivial(&g, &FgAbelianGroup::integers()));
        for k in 1..=4 {
            let expected = if k % 2 == 0 { FgAbelianGroup::cyclic(n as i64).unwrap() } else { FgAbelianGroup::trivial() };
            assert_eq!(cohomology_group(&a, k).unwrap().group_iso_class, expected, "H^{k}(ℤ/{n})");
        }
    }
}
