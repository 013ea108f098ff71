//! Randomized structural properties of the exact-arithmetic kernel.

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use wallkit_core::lattice::NumClass;
use wallkit_core::riemann_roch::{chi_pair, chi_rank_one};
use wallkit_core::sheaves::{make_extension, RankOneData, ZeroCycle};
use wallkit_core::uhlenbeck::bookkeeping_check;
use wallkit_core::walls::enumerate_walls;
use wallkit_core::{int, presets, rat, Int, Rat};

fn class2() -> impl Strategy<Value = NumClass> {
    (-6i64..=6, -6i64..=6).prop_map(|(a, b)| NumClass::of(&[a, b]))
}

fn models() -> impl Strategy<Value = wallkit_core::lattice::SurfaceModel> {
    prop_oneof![Just(presets::p1xp1()), Just(presets::hyperbolic())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pairing_is_symmetric_and_bilinear(
        model in models(),
        a in class2(),
        b in class2(),
        c in class2(),
        s in -4i64..=4,
    ) {
        let ab = model.pair(&a, &b).unwrap();
        let ba = model.pair(&b, &a).unwrap();
        prop_assert_eq!(&ab, &ba);
        let lhs = model.pair(&a.add(&b.scale(s)), &c).unwrap();
        let rhs = model.pair(&a, &c).unwrap() + int(s) * model.pair(&b, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orthogonal_complement_of_positive_class_is_negative(
        model in models(),
        a in class2(),
        b in class2(),
    ) {
        // Signature (1, rank-1): anything orthogonal to a class of positive
        // square has negative square unless it vanishes. Project b into the
        // orthogonal complement of a without leaving the lattice:
        // b' = (a.a) b - (a.b) a.
        prop_assume!(model.self_pair(&a).unwrap().is_positive());
        let a_sq = model.self_pair(&a).unwrap();
        let a_b = model.pair(&a, &b).unwrap();
        let mut coords = Vec::new();
        for i in 0..2 {
            coords.push(&a_sq * &b.coords()[i] - &a_b * &a.coords()[i]);
        }
        let bp = NumClass::new(coords);
        prop_assume!(!bp.is_zero());
        prop_assert!(model.pair(&a, &bp).unwrap().is_zero());
        prop_assert!(model.self_pair(&bp).unwrap().is_negative());
    }

    #[test]
    fn cone_location_is_scale_invariant(
        model in models(),
        x in -8i64..=8,
        y in -8i64..=8,
        num in 1i64..=12,
        den in 1i64..=12,
    ) {
        let h = vec![rat(x, 1), rat(y, 1)];
        let s = rat(num, den);
        let scaled: Vec<Rat> = h.iter().map(|c| c * &s).collect();
        prop_assert_eq!(
            model.locate_in_cone(&h).unwrap(),
            model.locate_in_cone(&scaled).unwrap()
        );
    }

    #[test]
    fn extension_discriminant_is_the_colength_budget(
        model in models(),
        sub_c1 in class2(),
        quot_c1 in class2(),
        ell in 0u64..=5,
        ellp in 0u64..=5,
        split in any::<bool>(),
    ) {
        let v = make_extension(
            RankOneData::new(sub_c1, ell),
            RankOneData::new(quot_c1, ellp),
            split,
            &model,
        ).unwrap();
        // 4 c2 - c1^2 + tau^2 = 4 (ell + ell'), always a non-negative
        // multiple of four.
        let c = int(4) * &v.c2v - model.self_pair(&v.c1v).unwrap();
        let tau_sq = model.self_pair(&v.tau).unwrap();
        prop_assert_eq!(c + tau_sq, int(4) * Int::from(ell + ellp));
        // The graded pieces are presentation-order independent.
        let swapped = make_extension(v.quot.clone(), v.sub.clone(), split, &model).unwrap();
        prop_assert_eq!(v.gr(), swapped.gr());
        prop_assert_eq!(&v.c1v, &swapped.c1v);
        prop_assert_eq!(&v.c2v, &swapped.c2v);
    }

    #[test]
    fn subcycle_count_is_product_of_multiplicities_plus_one(
        mults in proptest::collection::vec(1u64..=3, 0..4),
    ) {
        let names = ["p", "q", "r", "s"];
        let pairs: Vec<(&str, u64)> = mults
            .iter()
            .enumerate()
            .map(|(i, &m)| (names[i], m))
            .collect();
        let z = ZeroCycle::from_pairs(&pairs);
        let expected: u64 = mults.iter().map(|m| m + 1).product();
        prop_assert_eq!(z.sub_cycles().len() as u64, expected);
    }

    #[test]
    fn chi_pair_swaps_roles_symmetrically(
        model in models(),
        sub_c1 in class2(),
        quot_c1 in class2(),
        ell in 0u64..=4,
        ellp in 0u64..=4,
    ) {
        let l = RankOneData::new(sub_c1, ell);
        let lp = RankOneData::new(quot_c1, ellp);
        let fwd = chi_pair(&l, &lp, &model).unwrap();
        let bwd = chi_pair(&lp, &l, &model).unwrap();
        prop_assert_eq!(&fwd.chi_pair_fwd, &bwd.chi_pair_bwd);
        prop_assert_eq!(&fwd.chi_pair_bwd, &bwd.chi_pair_fwd);
        prop_assert_eq!(&fwd.tau_sq, &bwd.tau_sq);
        prop_assert_eq!(&fwd.d, &bwd.d);
        prop_assert_eq!(&fwd.ext_sum, &bwd.ext_sum);
        // The record's own parts agree with the rank-one characteristic.
        prop_assert_eq!(&fwd.chi_l, &chi_rank_one(&l, &model).unwrap());
        prop_assert_eq!(&fwd.chi_lp, &chi_rank_one(&lp, &model).unwrap());
        // 2 ext_sum = d - tau^2 - chi(O).
        prop_assert_eq!(
            int(2) * &fwd.ext_sum,
            &fwd.d - &fwd.tau_sq - model.chi_o()
        );
    }

    #[test]
    fn walls_satisfy_their_defining_window(
        model in models(),
        c1 in class2(),
        c2 in 1i64..=5,
    ) {
        let c2 = Int::from(c2);
        let c = int(4) * &c2 - model.self_pair(&c1).unwrap();
        prop_assume!(c.is_positive());
        let ws = enumerate_walls(&model, &c1, &c2).unwrap();
        for w in &ws.walls {
            prop_assert!(w.tau_sq.is_negative());
            prop_assert!(w.tau_sq >= -&c);
            prop_assert!(w.tau.sub(&c1).is_even());
            // Witness budgets: each witness m gives colengths summing to
            // (tau^2 + c) / 4 via ell + ell' with both sides realizable.
            prop_assert!(!w.witnesses.is_empty());
            for m in &w.witnesses {
                let t = m.scale(2).sub(&c1);
                prop_assert_eq!(model.self_pair(&t).unwrap(), w.tau_sq.clone());
            }
        }
    }

    #[test]
    fn bookkeeping_identity_holds_by_construction(
        m1 in proptest::collection::vec(0u64..=3, 3),
        m2 in proptest::collection::vec(0u64..=3, 3),
        keep in proptest::collection::vec(0u64..=6, 3),
    ) {
        let names = ["p", "q", "r"];
        let mut z1 = ZeroCycle::empty();
        let mut z2 = ZeroCycle::empty();
        let mut z = ZeroCycle::empty();
        let mut q = ZeroCycle::empty();
        for i in 0..3 {
            if m1[i] > 0 { z1.insert(names[i], m1[i]); }
            if m2[i] > 0 { z2.insert(names[i], m2[i]); }
            let total = m1[i] + m2[i];
            let kept = keep[i].min(total);
            if kept > 0 { z.insert(names[i], kept); }
            if total - kept > 0 { q.insert(names[i], total - kept); }
        }
        prop_assert!(bookkeeping_check(&z1, &z2, &z, &q).holds);
        // Any pointwise perturbation is detected.
        let mut bad = q.clone();
        bad.insert("p", bad.multiplicity("p") + 1);
        let report = bookkeeping_check(&z1, &z2, &z, &bad);
        prop_assert!(!report.holds);
        prop_assert_eq!(report.violation.as_deref(), Some("p"));
    }
}
