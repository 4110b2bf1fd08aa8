//! Fusion systems `F_P(G)` of finite groups.
//!
//! Every system here is realized by a subgroup `H` of a permutation group: the
//! morphisms are the conjugation maps `c_g` for `g` in `H`. Normalizer systems are
//! realized by `N_H(Q)` and quotient systems by `N_H(Q)/Q`.

use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::engine::lattice::PSubgroups;
use crate::engine::{quotient_of, CoreMode, Group, Hom, Perm, Subgroup};
use crate::error::{Error, Result};
use crate::stability::{gens_json, involves_qdp, Definition, SectionWitness, StabilityVerdict, StabilityWitness};

/// A morphism `c_g: Q -> R`, with `g` the least element of its coset of `C_H(Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionMorphism {
    pub source: Subgroup,
    pub target: Subgroup,
    pub g: u32,
}

impl FusionMorphism {
    /// Images of the elements of the source, in element order.
    pub fn images(&self, group: &Group) -> Vec<u32> {
        self.source.elements().iter().map(|&x| group.conj(x, self.g)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubgroupStatus {
    pub fully_normalized: bool,
    /// `C_P(Q') <= Q'` for every `F`-conjugate `Q'` of `Q`.
    pub centric: bool,
    /// Every `p`-element of `C_H(Q)` lies in `Q`.
    pub p_centric: bool,
    pub radical: bool,
    pub strongly_closed: bool,
    pub normal_in_f: bool,
}

/// `(Q, H/K, witness)` for a model that involves `Qd(p)`.
#[derive(Debug)]
pub struct QdpInvolvement {
    pub q: Subgroup,
    pub model: Group,
    pub witness: SectionWitness,
}

#[derive(Debug, Clone)]
pub struct Solubility {
    pub soluble: bool,
    /// `1 = Q_0 < Q_1 < ...`, each `Q_i` the preimage of `O_p(F/Q_(i-1))`, as subgroups of `P`.
    pub chain: Vec<Subgroup>,
}

#[derive(Debug, Clone)]
pub struct FusionSystem {
    group: Arc<Group>,
    ambient: Subgroup,
    p: u64,
    data: PSubgroups,
    /// Per class, the index into `data.all` of its fully normalized representative.
    fully_normalized: Vec<usize>,
    /// `|N_P(S)|` for each entry of `data.all`.
    np_orders: Vec<usize>,
}

/// `F_P(G)` for a Sylow `p`-subgroup `P` chosen deterministically.
pub fn fusion_system(g: Arc<Group>, p: u64) -> Result<FusionSystem> {
    let whole = g.whole();
    FusionSystem::realized(g, whole, p)
}

impl FusionSystem {
    /// The fusion system of `H <= G` on a Sylow `p`-subgroup of `H`.
    pub fn realized(group: Arc<Group>, ambient: Subgroup, p: u64) -> Result<FusionSystem> {
        crate::stability::check_prime(p)?;
        let sylow = group.sylow_in(&ambient, p);
        Ok(Self::on_sylow(group, ambient, sylow, p))
    }

    fn on_sylow(group: Arc<Group>, ambient: Subgroup, sylow: Subgroup, p: u64) -> FusionSystem {
        let data = group.p_subgroup_classes_on(&ambient, &sylow);
        let np_orders: Vec<usize> = data.all.iter().map(|s| group.normalizer_in(&sylow, s).order()).collect();
        let fully_normalized = data
            .classes
            .iter()
            .map(|c| {
                let best = c.members.iter().map(|&m| np_orders[m]).max().unwrap_or(0);
                *c.members.iter().find(|&&m| np_orders[m] == best).expect("classes are nonempty")
            })
            .collect();
        FusionSystem { group, ambient, p, data, fully_normalized, np_orders }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.data.sylow
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Every subgroup of `P`, in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.data.all
    }

    pub fn class_count(&self) -> usize {
        self.data.classes.len()
    }

    /// Indices into `subgroups()` of the members of class `c`.
    pub fn class_members(&self, c: usize) -> &[usize] {
        &self.data.classes[c].members
    }

    /// The fully normalized representative of class `c`.
    pub fn class_rep(&self, c: usize) -> &Subgroup {
        &self.data.all[self.fully_normalized[c]]
    }

    fn index_of(&self, q: &Subgroup) -> Result<usize> {
        self.data.position(q).ok_or_else(|| Error::bad("subgroup is not contained in the Sylow subgroup"))
    }

    /// `Hom_F(Q, R)`, one morphism per coset of `C_H(Q)` in the transporter.
    pub fn hom_set(&self, q: &Subgroup, r: &Subgroup) -> Vec<FusionMorphism> {
        let g = &*self.group;
        if q.order() > r.order() {
            return Vec::new();
        }
        let candidates: Vec<u32> = if q == r {
            g.normalizer_in(&self.ambient, q).elements().to_vec()
        } else {
            self.ambient.elements().to_vec()
        };
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        let mut out = Vec::new();
        for x in candidates {
            let key: Vec<u32> = q.generators().iter().map(|&a| g.conj(a, x)).collect();
            if !key.iter().all(|&y| r.contains(y)) {
                continue;
            }
            if seen.insert(key) {
                out.push(FusionMorphism { source: q.clone(), target: r.clone(), g: x });
            }
        }
        out
    }

    /// `|N_H(Q)| / |C_H(Q)|`.
    pub fn aut_order(&self, q: &Subgroup) -> usize {
        let g = &*self.group;
        g.normalizer_in(&self.ambient, q).order() / g.centralizer_in(&self.ambient, q).order()
    }

    /// `Aut_F(Q)` as a permutation group on the positions of `Q`'s elements, built from `hom_set(Q, Q)`.
    fn aut_group(&self, q: &Subgroup) -> (Group, Vec<(u32, Perm)>) {
        let g = &*self.group;
        let pos: FxHashMap<u32, u16> = q.elements().iter().enumerate().map(|(i, &x)| (x, i as u16)).collect();
        let maps: Vec<(u32, Perm)> = self
            .hom_set(q, q)
            .into_iter()
            .map(|m| (m.g, Perm::from_raw(m.images(g).iter().map(|y| pos[y]).collect())))
            .collect();
        let gens: Vec<Perm> = maps.iter().map(|(_, p)| p.clone()).collect();
        let caps = crate::caps::Caps { degree: usize::MAX >> 1, ..g.caps() };
        let a = Group::generate_with_caps(&gens, q.order(), caps).expect("automorphism group is within caps");
        (a, maps)
    }

    pub fn is_fully_normalized(&self, q: &Subgroup) -> Result<bool> {
        let i = self.index_of(q)?;
        let c = self.data.class_of[i];
        let best = self.data.classes[c].members.iter().map(|&m| self.np_orders[m]).max().unwrap_or(0);
        Ok(self.np_orders[i] == best)
    }

    pub fn is_centric(&self, q: &Subgroup) -> Result<bool> {
        let i = self.index_of(q)?;
        let g = &*self.group;
        let c = self.data.class_of[i];
        Ok(self.data.classes[c].members.iter().all(|&m| {
            let s = &self.data.all[m];
            g.centralizer_in(self.sylow(), s).is_subset_of(s)
        }))
    }

    pub fn is_p_centric(&self, q: &Subgroup) -> bool {
        let g = &*self.group;
        g.centralizer_in(&self.ambient, q)
            .elements()
            .iter()
            .all(|&x| !g.is_p_element(x, self.p) || q.contains(x))
    }

    /// `O_p(Aut_F(Q)) = Inn(Q)`.
    pub fn is_radical(&self, q: &Subgroup) -> bool {
        let g = &*self.group;
        let (a, _) = g.induced_automizer_in(&self.ambient, q);
        let inn = q.order() / g.center_of(q).order();
        a.p_core(self.p, CoreMode::P).order() == inn
    }

    /// No element of `Q` is `H`-conjugate to an element of `P` outside `Q`.
    pub fn is_strongly_closed(&self, q: &Subgroup) -> bool {
        let g = &*self.group;
        let p_sub = self.sylow();
        let mut done: FxHashSet<u32> = FxHashSet::default();
        for &x in q.elements() {
            if !done.insert(x) {
                continue;
            }
            let mut queue = vec![x];
            let mut head = 0;
            while head < queue.len() {
                let y = queue[head];
                head += 1;
                if p_sub.contains(y) && !q.contains(y) {
                    return false;
                }
                for &s in self.ambient.generators() {
                    let z = g.conj(y, s);
                    if done.insert(z) {
                        queue.push(z);
                    }
                }
            }
        }
        true
    }

    /// `F = N_F(Q)`, tested on the automizers of the fully normalized class representatives:
    /// each `Aut_F(R)` must be induced by `N_H(R) ∩ N_H(Q)`.
    pub fn is_normal_in_f(&self, q: &Subgroup) -> bool {
        let g = &*self.group;
        if !q.is_subset_of(self.sylow()) || !g.is_normal_in(q, self.sylow()) {
            return false;
        }
        let nq = g.normalizer_in(&self.ambient, q);
        (0..self.class_count()).all(|c| {
            let r = self.class_rep(c);
            let nr = g.normalizer_in(&self.ambient, r);
            let both = g.intersection(&nr, &nq);
            let cr = g.centralizer_in(&self.ambient, r);
            let c_both = g.intersection(&cr, &nq);
            nr.order() / cr.order() == both.order() / c_both.order()
        })
    }

    /// The definition read literally: every morphism `c_g: A -> P` extends to a morphism
    /// of `AQ` mapping `Q` to itself, i.e. `C_H(A) g` meets `N_H(Q)`.
    pub fn is_normal_in_f_by_extension(&self, q: &Subgroup) -> bool {
        let g = &*self.group;
        if !q.is_subset_of(self.sylow()) || !g.is_normal_in(q, self.sylow()) {
            return false;
        }
        let nq = g.normalizer_in(&self.ambient, q);
        self.data.all.iter().all(|a| {
            let ca = g.centralizer_in(&self.ambient, a);
            self.hom_set(a, self.sylow())
                .iter()
                .all(|m| ca.elements().iter().any(|&c| nq.contains(g.mul(c, m.g))))
        })
    }

    pub fn subgroup_status(&self, q: &Subgroup) -> Result<SubgroupStatus> {
        Ok(SubgroupStatus {
            fully_normalized: self.is_fully_normalized(q)?,
            centric: self.is_centric(q)?,
            p_centric: self.is_p_centric(q),
            radical: self.is_radical(q),
            strongly_closed: self.is_strongly_closed(q),
            normal_in_f: self.is_normal_in_f(q),
        })
    }

    /// `|Aut_P(P)|` is the `p`-part of `|Aut_F(P)|`.
    pub fn sylow_axiom_holds(&self) -> bool {
        let g = &*self.group;
        let p_sub = self.sylow();
        let inner = (p_sub.order() / g.center_of(p_sub).order()) as u64;
        inner == crate::engine::group::p_part_of(self.aut_order(p_sub) as u64, self.p)
    }

    /// `N_F(Q)`, realized by `N_H(Q)` on `N_P(Q)`.
    pub fn normalizer_system(&self, q: &Subgroup) -> Result<FusionSystem> {
        if !self.is_fully_normalized(q)? {
            return Err(Error::NotFullyNormalized);
        }
        let g = &*self.group;
        let nh = g.normalizer_in(&self.ambient, q);
        let np = g.normalizer_in(self.sylow(), q);
        Ok(Self::on_sylow(self.group.clone(), nh, np, self.p))
    }

    /// `O_p(F)`: the largest subgroup of `P` normal in `F`.
    pub fn op_f(&self) -> Subgroup {
        let g = &*self.group;
        self.data
            .all
            .iter()
            .rev()
            .filter(|s| g.is_normal_in(s, self.sylow()) && self.is_strongly_closed(s))
            .find(|s| self.is_normal_in_f(s))
            .cloned()
            .unwrap_or_else(|| g.trivial())
    }

    /// `F/Q`, realized by `N_H(Q)/Q`, with the projection from `N_H(Q)`.
    pub fn quotient_system(&self, q: &Subgroup) -> Result<(FusionSystem, Hom)> {
        if !self.is_normal_in_f(q) {
            return Err(Error::NotNormalInF);
        }
        let g = &*self.group;
        let nh = g.normalizer_in(&self.ambient, q);
        let (quot, proj) = quotient_of(g, &nh, q)?;
        let images: Vec<u32> = self.sylow().elements().iter().map(|&x| proj.image_of(x).expect("P <= N_H(Q)")).collect();
        let pbar = quot.subgroup_from_elements(images);
        let whole = quot.whole();
        Ok((Self::on_sylow(Arc::new(quot), whole, pbar, self.p), proj))
    }

    /// Greedy chain of iterated `O_p` preimages; soluble when it reaches `P`.
    pub fn is_soluble(&self) -> Result<Solubility> {
        let g = &*self.group;
        let p_elems = self.sylow().elements().to_vec();
        let mut current = self.clone();
        let mut to_current: Vec<u32> = p_elems.clone();
        let mut chain = vec![g.trivial()];
        loop {
            if current.sylow().is_trivial() {
                return Ok(Solubility { soluble: true, chain });
            }
            let o = current.op_f();
            if o.is_trivial() {
                return Ok(Solubility { soluble: false, chain });
            }
            let pre: Vec<u32> = p_elems.iter().zip(&to_current).filter(|(_, y)| o.contains(**y)).map(|(&x, _)| x).collect();
            chain.push(g.subgroup_from_elements(pre));
            let (next, proj) = current.quotient_system(&o)?;
            for y in to_current.iter_mut() {
                *y = proj.image_of(*y).expect("P lies in the normalizer");
            }
            current = next;
        }
    }

    /// For every fully normalized `Q` and `χ` in `Aut_F(Q)` with
    /// `(a^-1)^χ a (a^-1)^χ a^(χ^2) = 1` on `Q`, `χ` lies in `O_p(Aut_F(Q))`.
    pub fn is_p_stable_fusion(&self) -> StabilityVerdict {
        let g = &*self.group;
        let mut scanned = 0;
        for c in 0..self.class_count() {
            let q = self.class_rep(c);
            if q.is_trivial() {
                continue;
            }
            scanned += 1;
            let (aut, maps) = self.aut_group(q);
            let op = aut.p_core(self.p, CoreMode::P);
            for (x, perm) in &maps {
                let a = aut.index_of(perm).expect("map lies in its group");
                if op.contains(a) || !identity_on(g, q, perm) {
                    continue;
                }
                let witness = StabilityWitness {
                    ambient: self.ambient.clone(),
                    q: q.clone(),
                    r: g.trivial(),
                    x: *x,
                    automizer_order: aut.order(),
                    automizer_op_order: op.order(),
                };
                return StabilityVerdict { definition: Definition::Fusion, p: self.p, stable: false, witness: Some(witness), scanned };
            }
        }
        StabilityVerdict { definition: Definition::Fusion, p: self.p, stable: true, witness: None, scanned }
    }

    /// `N_H(Q)/O_p'(N_H(Q))`.
    pub fn model_of_normalizer(&self, q: &Subgroup) -> Result<Group> {
        if !self.is_fully_normalized(q)? {
            return Err(Error::NotFullyNormalized);
        }
        if !self.is_centric(q)? {
            return Err(Error::NotCentric);
        }
        let g = &*self.group;
        let nh = g.normalizer_in(&self.ambient, q);
        let k = g.p_core_in(&nh, self.p, CoreMode::PPrime);
        Ok(quotient_of(g, &nh, &k)?.0)
    }

    /// The first centric, fully normalized class representative whose model involves `Qd(p)`.
    pub fn qdp_involvement(&self) -> Result<Option<QdpInvolvement>> {
        for c in 0..self.class_count() {
            let q = self.class_rep(c);
            if !self.is_centric(q)? {
                continue;
            }
            let model = self.model_of_normalizer(q)?;
            if let Some(witness) = involves_qdp(&model, self.p)? {
                return Ok(Some(QdpInvolvement { q: q.clone(), model, witness }));
            }
        }
        Ok(None)
    }

    pub fn is_qdp_free(&self) -> Result<bool> {
        Ok(self.qdp_involvement()?.is_none())
    }

    /// `C_P(O_p(F)) <= O_p(F)`.
    pub fn is_constrained(&self) -> bool {
        let o = self.op_f();
        self.group.centralizer_in(self.sylow(), &o).is_subset_of(&o)
    }

    /// The first fully normalized `R` with `N_F(R)/R` not `p`-stable.
    pub fn first_unstable_section(&self) -> Result<Option<Subgroup>> {
        for c in 0..self.class_count() {
            let r = self.class_rep(c);
            let stable = if r.is_trivial() {
                self.is_p_stable_fusion().stable
            } else {
                let n = self.normalizer_system(r)?;
                n.quotient_system(r)?.0.is_p_stable_fusion().stable
            };
            if !stable {
                return Ok(Some(r.clone()));
            }
        }
        Ok(None)
    }

    pub fn section_p_stable_fusion(&self) -> Result<bool> {
        Ok(self.first_unstable_section()?.is_none())
    }

    /// Class table, `O_p(F)`, solubility, stability and `Qd(p)`-freeness.
    pub fn report(&self) -> Result<Value> {
        let g = &*self.group;
        let mut classes = Vec::new();
        for c in 0..self.class_count() {
            let q = self.class_rep(c);
            classes.push(json!({
                "order": q.order(),
                "generators": gens_json(g, q),
                "members_in_p": self.class_members(c).len(),
                "aut_order": self.aut_order(q),
                "status": self.subgroup_status(q)?,
            }));
        }
        let op = self.op_f();
        let sol = self.is_soluble()?;
        let stability = self.is_p_stable_fusion();
        let free = if self.p == 2 { Value::Null } else { json!(self.is_qdp_free()?) };
        Ok(json!({
            "p": self.p,
            "group_order": self.ambient.order(),
            "sylow_order": self.sylow().order(),
            "classes": classes,
            "op_f": { "order": op.order(), "generators": gens_json(g, &op) },
            "constrained": self.is_constrained(),
            "soluble": sol.soluble,
            "solubility_chain_orders": sol.chain.iter().map(Subgroup::order).collect::<Vec<_>>(),
            "p_stable": stability.to_json(g),
            "qdp_free": free,
        }))
    }
}

fn identity_on(g: &Group, q: &Subgroup, chi: &Perm) -> bool {
    let e = q.elements();
    let at = |a: usize| e[chi.apply(a)];
    let pos = |x: u32| e.binary_search(&x).expect("automorphism preserves Q");
    (0..e.len()).all(|i| {
        let a = e[i];
        let ai = at(pos(g.inv(a)));
        let a2 = e[chi.apply(chi.apply(i))];
        g.mul(g.mul(g.mul(ai, a), ai), a2) == 0
    })
}

/// Equality of Hom sets over all subgroups of `P`. `ident` carries `a`'s Sylow
/// subgroup into `b`'s group; without it both systems must share group and Sylow.
pub fn fusion_equal(a: &FusionSystem, b: &FusionSystem, ident: Option<&Hom>) -> Result<bool> {
    let ga = a.group();
    let gb = b.group();
    let map = |x: u32| -> Result<u32> {
        match ident {
            Some(h) => h.image_of(x).ok_or(Error::MismatchedSylow),
            None => Ok(x),
        }
    };
    if ident.is_none() && !(Arc::ptr_eq(a.group_arc(), b.group_arc()) || ga.elements() == gb.elements()) {
        return Err(Error::MismatchedSylow);
    }
    let mut image: Vec<u32> = a.sylow().elements().iter().map(|&x| map(x)).collect::<Result<_>>()?;
    image.sort_unstable();
    image.dedup();
    if image != b.sylow().elements() {
        return Err(Error::MismatchedSylow);
    }
    for s in a.subgroups() {
        let elems: Vec<u32> = s.elements().iter().map(|&x| map(x)).collect::<Result<_>>()?;
        let t = gb.subgroup_from_elements(elems.clone());
        let from_a: FxHashSet<Vec<u32>> = a
            .hom_set(s, a.sylow())
            .iter()
            .map(|m| m.images(ga).into_iter().map(map).collect::<Result<Vec<u32>>>())
            .collect::<Result<_>>()?;
        let from_b: FxHashSet<Vec<u32>> =
            b.hom_set(&t, b.sylow()).iter().map(|m| elems.iter().map(|&x| gb.conj(x, m.g)).collect()).collect();
        if from_a != from_b {
            return Ok(false);
        }
    }
    Ok(true)
}
