//! `p`-stability in the element form, the maximal-local form and the section form,
//! and involvement of `Qd(p)`.

mod involvement;
pub(crate) mod section;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

pub use involvement::{has_subgroup_qdp_like, involves_qdp, verify_section_witness, SectionWitness};
use section::SectionAction;

use crate::engine::quotient_of;
use crate::engine::{CoreMode, Group, Subgroup};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definition {
    /// Every `p`-subgroup `Q` of `G`.
    Def1971,
    /// `p`-subgroups `Q` of the maximal `M` with `O_p(M) != 1` and `O_p'(M)Q` normal in `M`.
    Def1968,
    /// Every section `Q/R` of `p`-subgroups.
    Section,
    /// Fully normalized subgroups of a fusion system.
    Fusion,
}

/// A failure of the stability condition: `x` normalizes `Q` and `R` in `ambient`,
/// `[Q, x, x] <= R`, and `x` acts on `Q/R` outside `O_p` of the automizer.
#[derive(Debug, Clone)]
pub struct StabilityWitness {
    pub ambient: Subgroup,
    pub q: Subgroup,
    pub r: Subgroup,
    pub x: u32,
    pub automizer_order: usize,
    pub automizer_op_order: usize,
}

#[derive(Debug, Clone)]
pub struct StabilityVerdict {
    pub definition: Definition,
    pub p: u64,
    pub stable: bool,
    pub witness: Option<StabilityWitness>,
    /// Number of sections examined.
    pub scanned: usize,
}

impl StabilityVerdict {
    fn stable(definition: Definition, p: u64, scanned: usize) -> Self {
        StabilityVerdict { definition, p, stable: true, witness: None, scanned }
    }

    pub fn to_json(&self, g: &Group) -> Value {
        let w = self.witness.as_ref().map(|w| {
            json!({
                "ambient_order": w.ambient.order(),
                "q_order": w.q.order(),
                "q_generators": gens_json(g, &w.q),
                "r_order": w.r.order(),
                "r_generators": gens_json(g, &w.r),
                "x": g.perm(w.x).to_cycle_string(),
                "x_order": g.element_order(w.x),
                "automizer_order": w.automizer_order,
                "automizer_op_order": w.automizer_op_order,
            })
        });
        json!({
            "definition": self.definition,
            "p": self.p,
            "stable": self.stable,
            "sections_scanned": self.scanned,
            "witness": w,
        })
    }
}

pub(crate) fn gens_json(g: &Group, h: &Subgroup) -> Vec<String> {
    h.generators().iter().map(|&x| g.perm(x).to_cycle_string()).collect()
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if !crate::engine::field::is_prime(p) {
        return Err(Error::bad(format!("{p} is not a prime")));
    }
    Ok(())
}

/// `p` does not divide `|G|`, or the Sylow `p`-subgroup is Abelian.
pub(crate) fn trivially_stable(g: &Group, p: u64) -> bool {
    !(g.order() as u64).is_multiple_of(p) || g.is_abelian(&g.sylow(p))
}

fn scan_section(g: &Group, h: &Subgroup, q: &Subgroup, r: &Subgroup, p: u64) -> Option<StabilityWitness> {
    let s = SectionAction::new(g, h, q, r, p);
    if s.is_cyclic() {
        return None;
    }
    let a = s.first_failure()?;
    Some(StabilityWitness {
        ambient: h.clone(),
        q: q.clone(),
        r: r.clone(),
        x: s.p_element_preimage(a),
        automizer_order: s.automizer.order(),
        automizer_op_order: s.op.order(),
    })
}

fn first_witness<T: Sync>(items: &[T], f: impl Fn(&T) -> Option<StabilityWitness> + Sync + Send) -> Option<StabilityWitness> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().next()
}

/// Every `p`-element `x` of `N_G(Q)` with `[Q, x, x] = 1` acts on `Q` inside
/// `O_p(N_G(Q)/C_G(Q))`, for every `p`-subgroup `Q`.
pub fn is_p_stable(g: &Group, p: u64) -> Result<StabilityVerdict> {
    check_prime(p)?;
    if trivially_stable(g, p) {
        return Ok(StabilityVerdict::stable(Definition::Def1971, p, 0));
    }
    let data = g.p_subgroup_classes(p);
    let reps: Vec<&Subgroup> = data.classes.iter().map(|c| &c.rep).filter(|q| !g.is_cyclic(q)).collect();
    let whole = g.whole();
    let trivial = g.trivial();
    let witness = first_witness(&reps, |q| scan_section(g, &whole, q, &trivial, p));
    Ok(StabilityVerdict { definition: Definition::Def1971, p, stable: witness.is_none(), witness, scanned: reps.len() })
}

/// The subgroups `M` maximal subject to `O_p(M) != 1`, one per conjugacy class.
pub fn maximal_p_locals(g: &Group, p: u64) -> Vec<Subgroup> {
    if !g.p_core(p, CoreMode::P).is_trivial() {
        return vec![g.whole()];
    }
    let data = g.p_subgroup_classes(p);
    let mut seen_cores: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for class in data.classes.iter().skip(1) {
        let m = g.normalizer(&class.rep);
        let core = g.p_core_in(&m, p, CoreMode::P);
        let Some(c) = g.class_of_p_subgroup(&g.whole(), &data, &core) else { continue };
        if seen_cores.contains(&c) {
            continue;
        }
        let maximal = g
            .p_subgroups_of(&core)
            .iter()
            .filter(|r| !r.is_trivial() && g.is_normal_in(r, &m))
            .all(|r| g.normalizer(r).order() == m.order());
        if maximal {
            seen_cores.push(c);
            out.push(m);
        }
    }
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// The 1968 form: the condition is imposed inside each maximal `p`-local `M` on the
/// `p`-subgroups `Q` with `O_p'(M)Q` normal in `M`.
pub fn is_p_stable_def1968(g: &Group, p: u64) -> Result<StabilityVerdict> {
    check_prime(p)?;
    if trivially_stable(g, p) {
        return Ok(StabilityVerdict::stable(Definition::Def1968, p, 0));
    }
    let mut pairs: Vec<(Subgroup, Subgroup)> = Vec::new();
    for m in maximal_p_locals(g, p) {
        let k = g.p_core_in(&m, p, CoreMode::PPrime);
        let data = g.p_subgroup_classes_in(&m, p);
        for class in &data.classes {
            let q = &class.rep;
            if g.is_cyclic(q) {
                continue;
            }
            if g.is_normal_in(&g.join(&k, q), &m) {
                pairs.push((m.clone(), q.clone()));
            }
        }
    }
    let trivial = g.trivial();
    let witness = first_witness(&pairs, |(m, q)| scan_section(g, m, q, &trivial, p));
    Ok(StabilityVerdict { definition: Definition::Def1968, p, stable: witness.is_none(), witness, scanned: pairs.len() })
}

/// Pairs `R <= Q` of `p`-subgroups with `R` normal in `Q`, up to conjugacy.
pub fn section_pairs(g: &Group, p: u64) -> Vec<(Subgroup, Subgroup)> {
    let data = g.p_subgroup_classes(p);
    let mut pairs = Vec::new();
    for class in &data.classes {
        let q = &class.rep;
        if g.is_cyclic(q) {
            continue;
        }
        let nq = g.normalizer(q);
        let normal: Vec<Subgroup> = g.p_subgroups_of(q).into_iter().filter(|r| g.is_normal_in(r, q)).collect();
        let mut done: Vec<bool> = vec![false; normal.len()];
        for i in 0..normal.len() {
            if done[i] {
                continue;
            }
            for c in g.conjugacy_orbit(&nq, &normal[i]) {
                if let Some(j) = normal.iter().position(|s| *s == c) {
                    done[j] = true;
                }
            }
            pairs.push((q.clone(), normal[i].clone()));
        }
    }
    pairs
}

/// Every `x` in `N_G(Q/R)` with `[Q, x, x] <= R` acts on `Q/R` inside `O_p` of the automizer.
pub fn is_section_p_stable(g: &Group, p: u64) -> Result<StabilityVerdict> {
    check_prime(p)?;
    if trivially_stable(g, p) {
        return Ok(StabilityVerdict::stable(Definition::Section, p, 0));
    }
    let pairs = section_pairs(g, p);
    let whole = g.whole();
    let witness = first_witness(&pairs, |(q, r)| scan_section(g, &whole, q, r, p));
    Ok(StabilityVerdict { definition: Definition::Section, p, stable: witness.is_none(), witness, scanned: pairs.len() })
}

/// Re-checks a witness by commutators in `G` and the coset quotient `N/C`.
pub fn verify_witness(g: &Group, w: &StabilityWitness, p: u64) -> bool {
    let h = &w.ambient;
    if !h.contains(w.x) || !g.normalizes(w.x, &w.q) || !g.normalizes(w.x, &w.r) {
        return false;
    }
    if !matches!(g.triple_commutator_in(&w.q, w.x, &w.r), Ok(true)) {
        return false;
    }
    let n = g.intersection(&g.normalizer_in(h, &w.q), &g.normalizer_in(h, &w.r));
    let c_elems: Vec<u32> = n
        .elements()
        .iter()
        .copied()
        .filter(|&y| w.q.elements().iter().all(|&a| w.r.contains(g.commutator(a, y))))
        .collect();
    let c = g.subgroup_from_elements(c_elems);
    let Ok((quot, proj)) = quotient_of(g, &n, &c) else { return false };
    let op = quot.sylow_intersection(&quot.whole(), p);
    proj.image_of(w.x).is_some_and(|img| !op.contains(img))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::constructions::Recipe;

    fn build(r: Recipe) -> Group {
        r.build(Caps::default()).unwrap()
    }

    #[test]
    fn qd3_is_not_stable() {
        let g = build(Recipe::Qdp { p: 3 });
        let v = is_p_stable(&g, 3).unwrap();
        assert!(!v.stable);
        let w = v.witness.as_ref().unwrap();
        assert_eq!(w.q, g.p_core(3, CoreMode::P));
        assert_eq!(w.automizer_order, 24);
        assert_eq!(w.automizer_op_order, 1);
        assert!(verify_witness(&g, w, 3));
        assert!(!is_p_stable_def1968(&g, 3).unwrap().stable);
        assert!(!is_section_p_stable(&g, 3).unwrap().stable);
    }

    #[test]
    fn abelian_sylow_is_stable() {
        let g = build(Recipe::Classical { family: crate::constructions::ClassicalFamily::SL, n: 2, q: 3 });
        assert!(is_p_stable(&g, 3).unwrap().stable);
        let s4 = build(Recipe::Symmetric { n: 4 });
        assert!(is_section_p_stable(&s4, 3).unwrap().stable);
        assert!(is_p_stable(&s4, 5).unwrap().stable);
    }

    #[test]
    fn s4_at_two_is_excluded_prime_free() {
        let s4 = build(Recipe::Symmetric { n: 4 });
        assert!(matches!(is_p_stable(&s4, 4), Err(Error::BadParameters(_))));
    }

    #[test]
    fn maximal_locals_of_qd3() {
        let g = build(Recipe::Qdp { p: 3 });
        let m = maximal_p_locals(&g, 3);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 216);
    }

    #[test]
    fn extraspecial_with_quaternion_action() {
        let g = build(Recipe::ExtraspecialBy { p: 3, linear: "q8".into() });
        let v = is_p_stable(&g, 3).unwrap();
        assert!(v.stable);
        assert!(is_section_p_stable(&g, 3).unwrap().stable);
    }
}
