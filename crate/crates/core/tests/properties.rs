use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use pstab::constructions::Recipe;
use pstab::engine::spec::GroupSpec;
use pstab::engine::{Group, Subgroup};
use pstab::fusion::{fusion_equal, fusion_system};
use pstab::lie::{p_part, qdp_verdict, verdict_invariants_hold, ClassifierFamily, ClassifierQuery};
use pstab::stability::{involves_qdp, is_p_stable, is_section_p_stable};
use pstab::Caps;

fn ambients() -> &'static [Group] {
    static G: OnceLock<Vec<Group>> = OnceLock::new();
    G.get_or_init(|| {
        ["extraspecial-by:p=3,linear=gl2", "tilde-qdp:p=3,q=7", "affine:q=3,linear=gl2"]
            .iter()
            .map(|r| r.parse::<Recipe>().unwrap().build(Caps::default()).unwrap())
            .collect()
    })
}

/// A subgroup generated by two elements of one of the fixed ambient groups.
fn random_subgroup() -> impl Strategy<Value = Arc<Group>> {
    (0..ambients().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(i, a, b)| {
        let g = &ambients()[i];
        let h: Subgroup = g.closure(&[a.index(g.order()) as u32, b.index(g.order()) as u32]);
        Arc::new(g.subgroup_as_group(&h))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn section_stability_matches_involvement(h in random_subgroup()) {
        let section = is_section_p_stable(&h, 3).unwrap();
        prop_assert_eq!(section.stable, involves_qdp(&h, 3).unwrap().is_none());
    }

    #[test]
    fn group_and_fusion_stability_agree(h in random_subgroup()) {
        let stable = is_p_stable(&h, 3).unwrap().stable;
        let f = fusion_system(h.clone(), 3).unwrap();
        prop_assert_eq!(f.is_p_stable_fusion().stable, stable);
        if h.is_abelian(&h.sylow(3)) {
            prop_assert!(stable);
        }
        prop_assert!(f.sylow_axiom_holds());
        let op = f.op_f();
        prop_assert!(f.is_normal_in_f(&op));
        prop_assert!(f.is_strongly_closed(&op));
        prop_assert!(fusion_equal(&f, &f, None).unwrap());
    }

    #[test]
    fn classifier_invariants(
        fam in prop::sample::select(ClassifierFamily::lie_families().into_iter().collect::<Vec<_>>()),
        n in 1usize..12,
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 16, 25, 27, 32, 49, 121]),
        p in prop::sample::select(vec![3u64, 5, 7, 11, 13, 19]),
    ) {
        let n = fam.needs_n().then_some(n);
        let query = ClassifierQuery::new(fam, n, Some(q), p);
        if let Ok(v) = qdp_verdict(&query) {
            prop_assert!(verdict_invariants_hold(&v));
            let order = query.group_order().unwrap();
            let e = query.sylow_exponent().unwrap();
            prop_assert_eq!(p_part(&order, p), num_bigint::BigUint::from(p).pow(e));
            if e <= 2 {
                prop_assert!(v.sylow_abelian);
            }
        }
    }

    #[test]
    fn spec_round_trip(which in 0usize..6, q in prop::sample::select(vec![7u64, 13, 19])) {
        let recipe = match which {
            0 => Recipe::Qdp { p: 3 },
            1 => Recipe::TildeQdp { p: 3, q },
            2 => Recipe::TildeQd3Plus { q: 19 },
            3 => Recipe::Affine { q: 3, linear: "sd16".into() },
            4 => Recipe::ExtraspecialBy { p: 3, linear: "d8".into() },
            _ => Recipe::Alternating { n: 6 },
        };
        let spec = recipe.spec(Caps::default()).unwrap();
        let reparsed = GroupSpec::parse(&spec.to_json_string()).unwrap();
        prop_assert_eq!(&reparsed, &spec);
        let (a, b) = (reparsed.build(Caps::default()).unwrap(), spec.build(Caps::default()).unwrap());
        prop_assert_eq!(a.elements(), b.elements());
    }
}

#[test]
fn classifier_orders_match_constructed_groups() {
    for (fam, n, q) in [(ClassifierFamily::PSL, 3, 4), (ClassifierFamily::PSU, 3, 5), (ClassifierFamily::PSp, 4, 3)] {
        let query = ClassifierQuery::new(fam, Some(n), Some(q), 3);
        let order = query.group_order().unwrap();
        assert_eq!(order, group_order_for(&query));
    }
}

fn group_order_for(query: &ClassifierQuery) -> num_bigint::BigUint {
    let g = Recipe::Classical {
        family: match query.family {
            ClassifierFamily::PSL => pstab::constructions::ClassicalFamily::PSL,
            ClassifierFamily::PSU => pstab::constructions::ClassicalFamily::PSU,
            _ => pstab::constructions::ClassicalFamily::PSp,
        },
        n: query.n.unwrap(),
        q: query.q.unwrap(),
    }
    .build(Caps::default())
    .unwrap();
    num_bigint::BigUint::from(g.order())
}


#[test]
fn accepted_queries_have_orders() {
    let qs = [2u64, 3, 4, 8, 9, 25, 27, 32, 49, 64, 81, 121, 125, 128, 243, 256, 343, 512, 729, 1024];
    let mut accepted = 0;
    for fam in ClassifierFamily::lie_families() {
        let ns: Vec<Option<usize>> = if fam.needs_n() { (1..=16).map(Some).collect() } else { vec![None] };
        for n in ns {
            for q in qs {
                for p in [3u64, 5, 7, 11, 13, 17, 31] {
                    let query = ClassifierQuery::new(fam.clone(), n, Some(q), p);
                    if qdp_verdict(&query).is_ok() {
                        accepted += 1;
                        let order = query.group_order().unwrap_or_else(|e| panic!("{query:?}: {e}"));
                        let e = query.sylow_exponent().unwrap();
                        assert_eq!(p_part(&order, p), num_bigint::BigUint::from(p).pow(e), "{query:?}");
                    }
                }
            }
        }
    }
    assert!(accepted > 5000);
}
