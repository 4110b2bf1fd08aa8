//! Explicit search for a section `H/K` isomorphic to `Qd(p)`.

use rustc_hash::FxHashSet;
use serde_json::{json, Value};

use super::{check_prime, gens_json};
use crate::constructions::qdp_spec;
use crate::engine::{find_subgroup_isomorphic, is_isomorphic, quotient_of, Group, Hom, Subgroup};
use crate::error::{Error, Result};

/// `K` normal in `H` with `H/K` isomorphic to a target group.
#[derive(Debug)]
pub struct SectionWitness {
    pub h: Subgroup,
    pub k: Subgroup,
    /// `H/K` on the cosets of `K`.
    pub quotient: Group,
    /// `H -> H/K`.
    pub projection: Hom,
    /// `H/K -> target`.
    pub iso: Hom,
}

impl SectionWitness {
    pub fn to_json(&self, g: &Group) -> Value {
        json!({
            "h_order": self.h.order(),
            "h_generators": gens_json(g, &self.h),
            "k_order": self.k.order(),
            "k_generators": gens_json(g, &self.k),
        })
    }
}

/// Re-checks that `K` is normal in `H`, that the projection has kernel `K`, and that
/// `iso` is a bijective homomorphism onto `target`.
pub fn verify_section_witness(g: &Group, w: &SectionWitness, target: &Group) -> bool {
    if !w.k.is_subset_of(&w.h) || !g.is_normal_in(&w.k, &w.h) || w.h.order() != w.k.order() * target.order() {
        return false;
    }
    let mut kernel = w.projection.kernel_elements();
    kernel.sort_unstable();
    kernel == w.k.elements()
        && w.projection.is_homomorphism(g, &w.quotient)
        && w.iso.is_homomorphism(&w.quotient, target)
        && w.iso.image_elements().len() == target.order()
}

fn witness_for(g: &Group, h: &Subgroup, k: &Subgroup, target: &Group) -> Result<Option<SectionWitness>> {
    let (quot, proj) = quotient_of(g, h, k)?;
    Ok(is_isomorphic(&quot, target)?.map(|iso| SectionWitness { h: h.clone(), k: k.clone(), quotient: quot, projection: proj, iso }))
}

/// A section of `G` isomorphic to `Qd(p)`, or `None` if `G` does not involve it.
///
/// Any such section is already a section of `N_G(V)` for a non-cyclic `p`-subgroup `V`,
/// with `V <= H`, so `H` runs over preimages of subgroups of `N_G(V)/V`. Candidates are
/// tried by increasing `|H|`, so the witness returned has `|H|` minimal.
pub fn involves_qdp(g: &Group, p: u64) -> Result<Option<SectionWitness>> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::bad("Qd(p) is defined for odd p"));
    }
    let target = qdp_spec(p)?.build(g.caps())?;
    let t = target.order();
    if !g.order().is_multiple_of(t) {
        return Ok(None);
    }
    let sylow = g.sylow(p);
    if g.is_abelian(&sylow) {
        return Ok(None);
    }
    if g.order() == t {
        return witness_for(g, &g.whole(), &g.trivial(), &target);
    }
    let p2 = (p * p) as usize;
    let data = g.p_subgroup_classes(p);
    let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
    let mut candidates: Vec<Subgroup> = Vec::new();
    for class in &data.classes {
        let v = &class.rep;
        if v.order() < p2 || g.is_cyclic(v) {
            continue;
        }
        let l = g.normalizer(v);
        if !l.order().is_multiple_of(t) {
            continue;
        }
        let (lbar, proj) = quotient_of(g, &l, v)?;
        for sc in lbar.subgroups_up_to_conjugacy()? {
            if (sc.rep.order() * v.order()) % t != 0 {
                continue;
            }
            let h = proj.preimage(g, &sc.rep);
            if g.is_abelian(&g.sylow_in(&h, p)) {
                continue;
            }
            if seen.insert(h.elements().to_vec()) {
                candidates.push(h);
            }
        }
    }
    candidates.sort_by(|a, b| a.canonical_cmp(b));
    for h in &candidates {
        let k_order = h.order() / t;
        let ks: Vec<Subgroup> = if k_order == 1 {
            vec![g.trivial()]
        } else {
            g.normal_subgroups_in(h).into_iter().filter(|k| k.order() == k_order).collect()
        };
        for k in &ks {
            if let Some(w) = witness_for(g, h, k, &target)? {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// A subgroup of `G` isomorphic to `target`, by exhaustive embedding search.
pub fn has_subgroup_qdp_like(g: &Group, target: &Group) -> Result<Option<Subgroup>> {
    if target.order() > g.caps().order {
        return Err(Error::OrderCapExceeded { cap: g.caps().order });
    }
    Ok(find_subgroup_isomorphic(g, target).map(|(s, _)| s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::constructions::{ClassicalFamily, Recipe};

    fn build(r: Recipe) -> Group {
        r.build(Caps::default()).unwrap()
    }

    #[test]
    fn qd3_involves_itself() {
        let g = build(Recipe::Qdp { p: 3 });
        let w = involves_qdp(&g, 3).unwrap().unwrap();
        assert_eq!((w.h.order(), w.k.order()), (216, 1));
        assert!(verify_section_witness(&g, &w, &build(Recipe::Qdp { p: 3 })));
    }

    #[test]
    fn small_groups_do_not_involve_qd3() {
        let g = build(Recipe::Classical { family: ClassicalFamily::SL, n: 2, q: 3 });
        assert!(involves_qdp(&g, 3).unwrap().is_none());
        let g = build(Recipe::ExtraspecialBy { p: 3, linear: "q8".into() });
        assert!(involves_qdp(&g, 3).unwrap().is_none());
    }

    #[test]
    fn tilde_qd3_involves_through_its_center() {
        let g = build(Recipe::TildeQdp { p: 3, q: 7 });
        let w = involves_qdp(&g, 3).unwrap().unwrap();
        assert_eq!((w.h.order(), w.k.order()), (648, 3));
        assert_eq!(w.k, g.center());
        let target = build(Recipe::Qdp { p: 3 });
        assert!(verify_section_witness(&g, &w, &target));
        assert!(has_subgroup_qdp_like(&g, &target).unwrap().is_none());
    }

    #[test]
    fn affine_gl2_contains_qd3() {
        let g = build(Recipe::Affine { q: 3, linear: "gl2".into() });
        let target = build(Recipe::Qdp { p: 3 });
        let s = has_subgroup_qdp_like(&g, &target).unwrap().unwrap();
        assert_eq!(s.order(), 216);
        let w = involves_qdp(&g, 3).unwrap().unwrap();
        assert_eq!((w.h.order(), w.k.order()), (216, 1));
    }
}
