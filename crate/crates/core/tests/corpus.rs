use std::collections::HashSet;

use serde_json::json;

use pstab::corpus::{run_suite, Check, Suite};
use pstab::engine::find_subgroup_isomorphic;
use pstab::engine::Group;
use pstab::Caps;

/// Group order by breadth-first closure on raw image arrays, independent of the engine.
fn naive_order(g: &Group) -> usize {
    let gens: Vec<Vec<u16>> = g.generator_perms().iter().map(|s| s.images().to_vec()).collect();
    let id: Vec<u16> = (0..g.degree() as u16).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in &gens {
            let y: Vec<u16> = x.iter().map(|&i| s[i as usize]).collect();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

#[test]
fn bundled_suite_passes() {
    let out = run_suite(&Suite::default_suite(), Caps::default(), Some(2), false).unwrap();
    let bad: Vec<_> = out.entries.iter().filter(|e| e.status != pstab::corpus::EntryStatus::Pass).map(|e| &e.name).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(out.exit_code(), 0);
}

#[test]
fn derived_values_match_independent_oracles() {
    let suite = Suite::default_suite();
    let mut checked = 0;
    for e in &suite.entries {
        let g = e.build(&suite.base, Caps::default()).unwrap();
        let p = e.p as usize;
        let order = naive_order(&g);
        for (check, exp) in &e.expected {
            let oracle = match check {
                Check::Order => json!(order),
                Check::SylowOrder => json!(p_part(order, p)),
                Check::SylowAbelian => {
                    let s = g.sylow(e.p);
                    let el = s.elements();
                    json!(el.iter().all(|&a| el.iter().all(|&b| g.mul(a, b) == g.mul(b, a))))
                }
                Check::ContainsQdpSubgroup => {
                    let target = pstab::constructions::qdp(e.p).unwrap();
                    json!(g.order() % target.order() == 0 && find_subgroup_isomorphic(&g, &target).is_some())
                }
                _ => continue,
            };
            assert_eq!(exp.value, oracle, "{} {}", e.name, check.name());
            checked += 1;
        }
    }
    assert!(checked >= 4 * suite.entries.len() - 2);
}
