//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest harness so the
//! lines are always printed; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pstab::constructions::{dual_module_factor, qdp, qdp_in_alternating, tilde_qdp, tilde_qd3_variant, Recipe};
use pstab::corpus::Suite;
use pstab::engine::iso::is_isomorphic;
use pstab::engine::quotient::quotient;
use pstab::engine::spec::GroupSpec;
use pstab::engine::{CoreMode, Group};
use pstab::fusion::{fusion_system, FusionSystem};
use pstab::lie::sporadic::SPORADIC;
use pstab::lie::{
    qdp_verdict, run_grid, sylow_abelian_verdict, verdict_crosscheck, verdict_invariants_hold, ClassifierFamily,
    ClassifierQuery,
};
use pstab::stability::{has_subgroup_qdp_like, involves_qdp, is_p_stable, is_section_p_stable, verify_section_witness, verify_witness};
use pstab::{Caps, Error, Result};

type Check = Result<(bool, String)>;
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn caps() -> Caps {
    Caps::default()
}

fn corpus() -> Result<Vec<(String, Group, u64)>> {
    let suite = Suite::default_suite();
    suite.entries.iter().map(|e| Ok((e.name.clone(), e.build(&suite.base, caps())?, e.p))).collect()
}

fn iso(a: &Group, b: &Group) -> Result<bool> {
    Ok(is_isomorphic(a, b)?.is_some())
}

fn c1() -> Check {
    let g = qdp(3)?;
    let v = g.p_core(3, CoreMode::P);
    let p = g.sylow(3);
    let verdict = is_p_stable(&g, 3)?;
    let Some(w) = &verdict.witness else { return Ok((false, "no witness".into())) };
    // [q, x, x] in R for every q in Q, one element at a time.
    let elementwise = w.q.elements().iter().all(|&q| {
        let c = g.commutator(g.commutator(q, w.x), w.x);
        w.r.contains(c)
    });
    let ok = g.order() == 216
        && v.order() == 9
        && p.order() == 27
        && !g.is_abelian(&p)
        && g.exponent(&p) == 3
        && g.center_of(&p).order() == 3
        && !verdict.stable
        && elementwise
        && verify_witness(&g, w, 3);
    Ok((ok, format!("|G|={} |O_3|={} |P|={} exp(P)={} stable={} witness re-verified={elementwise}", g.order(), v.order(), p.order(), g.exponent(&p), verdict.stable)))
}

fn c2() -> Check {
    let g = tilde_qdp(3, 13)?;
    let target = qdp(3)?;
    let z = g.center();
    let (bar, _) = quotient(&g, &z)?;
    let quotient_ok = iso(&bar, &target)?;
    let search = has_subgroup_qdp_like(&g, &target)?.is_none();
    // Second route: every conjugacy class of subgroups of order 216.
    let mut by_classes = true;
    for c in g.subgroups_up_to_conjugacy()? {
        if c.rep.order() == 216 && iso(&g.subgroup_as_group(&c.rep), &target)? {
            by_classes = false;
        }
    }
    let stable = is_p_stable(&g, 3)?.stable;
    let ok = g.order() == 648 && z.order() == 3 && quotient_ok && search && by_classes && !stable;
    Ok((ok, format!("|G|={} |Z|={} G/Z~Qd(3)={quotient_ok} no Qd(3) subgroup: search={search} classes={by_classes} stable={stable}", g.order(), z.order())))
}

fn c3() -> Check {
    let minus = tilde_qd3_variant(false, 19)?;
    let plus = tilde_qd3_variant(true, 19)?;
    let sm = minus.subgroup_as_group(&minus.sylow(3));
    let sp = plus.subgroup_as_group(&plus.sylow(3));
    let distinct = !iso(&sm, &sp)?;
    let det_one = match (Recipe::TildeQd3Minus { q: 19 }).spec(caps())? {
        GroupSpec::Matrix { field, generators, .. } => {
            let f = pstab::engine::field::FqField::new(field)?;
            generators.iter().all(|m| m.det(&f) == f.one())
        }
        GroupSpec::Perm { .. } => false,
    };
    let ok = minus.order() == 648 && plus.order() == 648 && distinct && det_one;
    Ok((ok, format!("|G-|={} |G+|={} Sylows non-isomorphic={distinct} exp {} vs {}, det 1={det_one}", minus.order(), plus.order(), minus.exponent(&minus.sylow(3)), plus.exponent(&plus.sylow(3)))))
}

fn c4() -> Check {
    let (q, image, hom) = qdp_in_alternating(3, caps())?;
    let faithful = hom.kernel_elements().len() == 1;
    let mut orbit = vec![0usize];
    let mut i = 0;
    while i < orbit.len() {
        for s in image.generator_perms() {
            let y = s.apply(orbit[i]);
            if !orbit.contains(&y) {
                orbit.push(y);
            }
        }
        i += 1;
    }
    let transitive = orbit.len() == image.degree();
    let even = image.elements().iter().all(|x| x.is_even());
    let isomorphic = iso(&image, &q)?;
    let ok = faithful && transitive && image.degree() == 9 && even && isomorphic && image.order() == 216;
    Ok((ok, format!("degree={} faithful={faithful} transitive={transitive} in A9={even} image~Qd(3)={isomorphic}", image.degree())))
}

fn c5() -> Check {
    let mut ok = true;
    let mut n = 0;
    for (name, g, p) in corpus()? {
        let section = is_section_p_stable(&g, p)?;
        let inv = involves_qdp(&g, p)?;
        let agree = section.stable == inv.is_none();
        let verified = match &inv {
            Some(w) => verify_section_witness(&g, w, &qdp(p)?),
            None => section.witness.is_none(),
        };
        if !(agree && verified) {
            println!("    {name}: section stable={} involves={}", section.stable, inv.is_some());
            ok = false;
        }
        n += 1;
    }
    Ok((ok, format!("{n} groups, exact agreement")))
}

fn c6() -> Check {
    let mut ok = true;
    let mut n = 0;
    for (name, g, p) in corpus()? {
        let stable = is_p_stable(&g, p)?.stable;
        let involves = involves_qdp(&g, p)?.is_some();
        let g = Arc::new(g);
        let f = fusion_system(g, p)?;
        let fs = f.is_p_stable_fusion().stable;
        let free = f.is_qdp_free()?;
        if fs != stable || free == involves {
            println!("    {name}: stable={stable} fusion stable={fs} involves={involves} fusion free={free}");
            ok = false;
        }
        n += 1;
    }
    Ok((ok, format!("{n} groups, exact agreement")))
}

fn c7() -> Check {
    let q = Arc::new(qdp(3)?);
    let f = fusion_system(q.clone(), 3)?;
    let sol = f.is_soluble()?;
    let chain: Vec<usize> = sol.chain.iter().map(|s| s.order()).collect();
    let v = f.op_f();
    let model = f.model_of_normalizer(&v)?;
    let model_ok = iso(&model, &q)?;
    let stable = f.is_p_stable_fusion().stable;
    let free = f.is_qdp_free()?;
    let ok = sol.soluble && chain == [1, 9, 27] && v.order() == 9 && !stable && !free && model_ok;
    Ok((ok, format!("soluble={} chain={chain:?} stable={stable} qdp-free={free} model~Qd(3)={model_ok}", sol.soluble)))
}

fn c8() -> Check {
    let g = (Recipe::Classical { family: pstab::constructions::ClassicalFamily::PSL, n: 3, q: 3 }).build(caps())?;
    let contains = has_subgroup_qdp_like(&g, &qdp(3)?)?.is_some();
    let f = fusion_system(Arc::new(g), 3)?;
    let op = f.op_f().order();
    let sol = f.is_soluble()?.soluble;
    let stable = f.is_p_stable_fusion().stable;
    let free = f.is_qdp_free()?;
    let ok = op == 1 && !sol && !stable && !free && contains;
    Ok((ok, format!("|O_3(F)|={op} soluble={sol} stable={stable} qdp-free={free} contains Qd(3)={contains}")))
}

fn c9() -> Check {
    let r = run_grid(10, 9, &[3, 5, 7, 11, 13])?;
    Ok((r.passed() && r.checked > 0 && r.e_p_checked > 0, format!("{} identity instances, {} e_p instances, {} failures", r.checked, r.e_p_checked, r.failures.len() + r.e_p_failures.len())))
}

fn random_query(rng: &mut ChaCha8Rng, lie: &[ClassifierFamily]) -> ClassifierQuery {
    const PRIMES: [u64; 10] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    const QS: [u64; 24] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 49, 64, 81, 125, 128];
    let p = *PRIMES.choose(rng).expect("non-empty");
    match rng.gen_range(0..10) {
        0 => ClassifierQuery::new(ClassifierFamily::Sporadic(SPORADIC.choose(rng).expect("non-empty").name), None, None, p),
        1 => ClassifierQuery::new(ClassifierFamily::Alternating, Some(rng.gen_range(5..400)), None, p),
        _ => {
            let fam = lie.choose(rng).expect("non-empty").clone();
            let n = fam.needs_n().then(|| rng.gen_range(1..=14));
            ClassifierQuery::new(fam, n, Some(*QS.choose(rng).expect("non-empty")), p)
        }
    }
}

fn c10() -> Check {
    let cases = [(ClassifierFamily::PSL, 3, 4, true), (ClassifierFamily::PSU, 3, 5, true), (ClassifierFamily::PSU, 3, 8, false)];
    let mut ok = true;
    let mut notes = Vec::new();
    for (fam, n, q, abelian) in cases {
        let query = ClassifierQuery::new(fam, Some(n), Some(q), 3);
        let c = verdict_crosscheck(&query, caps())?;
        let good = c.agrees && c.table_abelian == abelian && c.direct_abelian == Some(abelian);
        ok &= good;
        notes.push(format!("{}{n}({q}) abelian={abelian}{}", query.family, if c.sylow_only { " (Sylow only)" } else { "" }));
    }
    let lie: Vec<ClassifierFamily> = ClassifierFamily::lie_families().into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut valid, mut drawn, mut bad) = (0, 0, 0);
    while valid < 10_000 {
        drawn += 1;
        let q = random_query(&mut rng, &lie);
        let Ok(v) = qdp_verdict(&q) else { continue };
        valid += 1;
        if !verdict_invariants_hold(&v) || sylow_abelian_verdict(&q)? != v.sylow_abelian {
            bad += 1;
        }
    }
    ok &= bad == 0;
    Ok((ok, format!("{}; fuzz: {valid} valid of {drawn} drawn, {bad} violations", notes.join(", "))))
}

fn c11() -> Check {
    let r = dual_module_factor(5, caps())?;
    let ok = r.factor_isomorphic_to_qdp && r.factor_order == 3000 && r.projection_is_homomorphism && r.v_invariant;
    Ok((ok, format!("module dim {} factor order {} factor~Qd(5)={}", r.module_dim, r.factor_order, r.factor_isomorphic_to_qdp)))
}

/// Subgroups to sample: all classes for small groups, otherwise the `p`-local subgroups.
fn subgroup_samples(g: &Group, p: u64) -> Result<Vec<pstab::engine::Subgroup>> {
    if g.order() <= 2000 {
        return Ok(g.subgroups_up_to_conjugacy()?.into_iter().map(|c| c.rep).collect());
    }
    let data = g.p_subgroup_classes(p);
    Ok(data.classes.iter().map(|c| g.normalizer(&c.rep)).filter(|n| n.order() < g.order()).collect())
}

fn subsystem_samples(f: &FusionSystem) -> Result<Vec<FusionSystem>> {
    let mut out = Vec::new();
    for c in 0..f.class_count() {
        let q = f.class_rep(c).clone();
        if !q.is_trivial() {
            out.push(f.normalizer_system(&q)?);
        }
    }
    Ok(out)
}

fn c12() -> Check {
    let (mut subgroups, mut subsystems, mut bad) = (0, 0, 0);
    for (name, g, p) in corpus()? {
        let stable = is_p_stable(&g, p)?.stable;
        for h in subgroup_samples(&g, p)? {
            subgroups += 1;
            let hs = is_p_stable(&g.subgroup_as_group(&h), p)?.stable;
            if stable && !hs {
                println!("    {name}: subgroup of order {} is not p-stable", h.order());
                bad += 1;
            }
        }
        let f = fusion_system(Arc::new(g), p)?;
        let fs = f.is_p_stable_fusion().stable;
        for sub in subsystem_samples(&f)? {
            subsystems += 1;
            if fs && !sub.is_p_stable_fusion().stable {
                println!("    {name}: normalizer subsystem on |S|={} is not p-stable", sub.sylow().order());
                bad += 1;
            }
        }
    }
    Ok((bad == 0 && subgroups > 0 && subsystems > 0, format!("{subgroups} subgroups, {subsystems} subsystems, {bad} violations")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "Qd(3) facts and non-3-stability witness", 5, c1),
        (2, "~Qd(3) over F13", 60, c2),
        (3, "~Qd-(3) and ~Qd+(3) over F19", 60, c3),
        (4, "Qd(3) inside A9", 10, c4),
        (5, "section p-stability iff no Qd(p) section, corpus", 900, c5),
        (6, "fusion stability and Qd(p)-freeness, corpus", 900, c6),
        (7, "fusion system of Qd(3)", 30, c7),
        (8, "fusion system of PSL3(3)", 600, c8),
        (9, "arithmetic identity grids", 60, c9),
        (10, "classifier cross-checks and invariant fuzz", 600, c10),
        (11, "dual module factor is Qd(5)", 300, c11),
        (12, "hereditariness to subgroups and subsystems", 900, c12),
    ];
    let mut failed = 0;
    for (n, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (pass, detail) = match outcome {
            Ok((pass, detail)) => (pass && in_time, detail),
            Err(e @ Error::OrderCapExceeded { .. }) | Err(e @ Error::DegreeCapExceeded { .. }) | Err(e @ Error::SubgroupCapExceeded { .. }) => {
                (false, format!("cap: {e}"))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        failed += !pass as usize;
        println!(
            "{} criterion {n:>2}: {title} [{:.2}s, limit {limit}s{}] {detail}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over time" }
        );
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
