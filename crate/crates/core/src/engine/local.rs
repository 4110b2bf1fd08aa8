//! Local subgroup machinery: normalizers, centralizers, Sylow subgroups,
//! cores, automizers and the Thompson subgroup.

use rustc_hash::{FxHashMap, FxHashSet};

use super::group::{is_power_of, p_part_of, Group, Subgroup};
use super::perm::Perm;
use super::quotient::Hom;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreMode {
    /// Largest normal `p`-subgroup.
    P,
    /// Largest normal `p'`-subgroup.
    PPrime,
}

impl Group {
    /// `N_H(Q)` for `Q` and `H` subgroups.
    pub fn normalizer_in(&self, h: &Subgroup, q: &Subgroup) -> Subgroup {
        if q.is_trivial() {
            return h.clone();
        }
        let elems: Vec<u32> = h.elements().iter().copied().filter(|&g| self.normalizes(g, q)).collect();
        self.subgroup_from_elements(elems)
    }

    pub fn normalizer(&self, q: &Subgroup) -> Subgroup {
        self.normalizer_in(&self.whole(), q)
    }

    /// `C_H(Q)`.
    pub fn centralizer_in(&self, h: &Subgroup, q: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = h
            .elements()
            .iter()
            .copied()
            .filter(|&g| q.generators().iter().all(|&x| self.mul(x, g) == self.mul(g, x)))
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn centralizer(&self, q: &Subgroup) -> Subgroup {
        self.centralizer_in(&self.whole(), q)
    }

    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_in(h, h)
    }

    pub fn center(&self) -> Subgroup {
        self.center_of(&self.whole())
    }

    /// Smallest subgroup of `H` containing `S` and normalized by `H`.
    pub fn normal_closure_in(&self, h: &Subgroup, s: &[u32]) -> Subgroup {
        self.normal_closure_bounded(h, s, usize::MAX, |_| true)
            .expect("unbounded normal closure succeeds")
    }

    /// Normal closure that stops with `None` once it exceeds `limit` or meets an element failing `accept`.
    pub fn normal_closure_bounded(
        &self,
        h: &Subgroup,
        s: &[u32],
        limit: usize,
        accept: impl Fn(u32) -> bool + Copy,
    ) -> Option<Subgroup> {
        let mut k = self.closure_bounded(s, limit, accept)?;
        loop {
            let mut grown = false;
            'outer: for &x in k.generators().to_vec().iter() {
                for &g in h.generators() {
                    let y = self.conj(x, g);
                    if !k.contains(y) {
                        let mut gens = k.generators().to_vec();
                        gens.push(y);
                        k = self.closure_bounded(&gens, limit, accept)?;
                        grown = true;
                        break 'outer;
                    }
                }
            }
            if !grown {
                return Some(k);
            }
        }
    }

    /// Commutator subgroup `[H, H]`.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let mut comms = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                comms.push(self.commutator(a, b));
            }
        }
        self.normal_closure_in(h, &comms)
    }

    /// Orders of `H, H', H'', ..` down to the first repeat.
    pub fn derived_series_orders(&self, h: &Subgroup) -> Vec<usize> {
        let mut out = vec![h.order()];
        let mut cur = h.clone();
        loop {
            let next = self.derived_subgroup(&cur);
            if next.order() == cur.order() {
                return out;
            }
            out.push(next.order());
            cur = next;
        }
    }

    /// A Sylow `p`-subgroup of `H`, grown by normalizing `p`-elements taken in
    /// the order given by `candidates`.
    fn sylow_grow(&self, h: &Subgroup, p: u64, candidates: &[u32]) -> Subgroup {
        let target = p_part_of(h.order() as u64, p) as usize;
        let mut s = self.trivial();
        while s.order() < target {
            let x = candidates
                .iter()
                .copied()
                .find(|&x| self.is_p_element(x, p) && !s.contains(x) && self.normalizes(x, &s))
                .expect("a p-subgroup below Sylow order has a normalizing p-element outside it");
            s = self.extend(&s, x);
        }
        s
    }

    /// The Sylow `p`-subgroup of `H` with the least sorted element list.
    pub fn sylow_in(&self, h: &Subgroup, p: u64) -> Subgroup {
        let s = self.sylow_grow(h, p, h.elements());
        self.least_conjugate(h, &s)
    }

    pub fn sylow(&self, p: u64) -> Subgroup {
        self.sylow_in(&self.whole(), p)
    }

    /// A Sylow subgroup grown from a shuffled candidate order.
    pub fn sylow_seeded(&self, p: u64, seed: u64) -> Subgroup {
        let mut cand: Vec<u32> = (0..self.order() as u32).collect();
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        for i in (1..cand.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            cand.swap(i, j);
        }
        self.sylow_grow(&self.whole(), p, &cand)
    }

    /// All `H`-conjugates of `Q`.
    pub fn conjugacy_orbit(&self, h: &Subgroup, q: &Subgroup) -> Vec<Subgroup> {
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        seen.insert(q.elements().to_vec());
        let mut orbit = vec![q.clone()];
        let mut head = 0;
        while head < orbit.len() {
            let cur = orbit[head].clone();
            head += 1;
            for &g in h.generators() {
                let c = self.conjugate_subgroup(&cur, g);
                if seen.insert(c.elements().to_vec()) {
                    orbit.push(c);
                }
            }
        }
        orbit
    }

    /// The `H`-conjugate of `Q` with the least sorted element list.
    pub fn least_conjugate(&self, h: &Subgroup, q: &Subgroup) -> Subgroup {
        self.conjugacy_orbit(h, q)
            .into_iter()
            .min_by(|a, b| a.elements().cmp(b.elements()))
            .expect("orbit contains q")
    }

    /// Some `g` in `H` with `A^g = B`.
    pub fn conjugating_element(&self, h: &Subgroup, a: &Subgroup, b: &Subgroup) -> Option<u32> {
        if a.order() != b.order() {
            return None;
        }
        h.elements().iter().copied().find(|&g| {
            a.generators().iter().all(|&x| b.contains(self.conj(x, g)))
        })
    }

    /// `O_p(H)` or `O_p'(H)` as the join of normal closures of the elements
    /// whose normal closure is a `p`- (resp. `p'`-) group.
    pub fn p_core_in(&self, h: &Subgroup, p: u64, mode: CoreMode) -> Subgroup {
        let good = |x: u32| -> bool {
            let o = self.element_order(x) as u64;
            match mode {
                CoreMode::P => is_power_of(o, p),
                CoreMode::PPrime => !o.is_multiple_of(p),
            }
        };
        let bound = match mode {
            CoreMode::P => p_part_of(h.order() as u64, p) as usize,
            CoreMode::PPrime => h.order() / p_part_of(h.order() as u64, p) as usize,
        };
        let mut core = self.trivial();
        loop {
            let mut grown = false;
            for &x in &self.h_class_reps(h) {
                if x == 0 || core.contains(x) || !good(x) {
                    continue;
                }
                if let Some(ncl) = self.normal_closure_bounded(h, &[x], bound, good) {
                    core = self.join(&core, &ncl);
                    grown = true;
                }
            }
            if !grown {
                return core;
            }
        }
    }

    pub fn p_core(&self, p: u64, mode: CoreMode) -> Subgroup {
        self.p_core_in(&self.whole(), p, mode)
    }

    /// Least element of every `H`-conjugacy class of elements of `H`.
    pub fn h_class_reps(&self, h: &Subgroup) -> Vec<u32> {
        if h.order() == self.order() {
            return self.classes().reps.clone();
        }
        let mut seen: FxHashSet<u32> = FxHashSet::default();
        let mut reps = Vec::new();
        for &x in h.elements() {
            if seen.contains(&x) {
                continue;
            }
            reps.push(x);
            seen.insert(x);
            let mut queue = vec![x];
            let mut head = 0;
            while head < queue.len() {
                let y = queue[head];
                head += 1;
                for &g in h.generators() {
                    let z = self.conj(y, g);
                    if seen.insert(z) {
                        queue.push(z);
                    }
                }
            }
        }
        reps
    }

    /// `O_p(H)` computed as the intersection of all Sylow `p`-subgroups of `H`.
    pub fn sylow_intersection(&self, h: &Subgroup, p: u64) -> Subgroup {
        let s = self.sylow_in(h, p);
        let mut acc = s.clone();
        for c in self.conjugacy_orbit(h, &s) {
            acc = self.intersection(&acc, &c);
        }
        acc
    }

    /// `[[a, x], x]` lies in `R` for every `a` in `Q`.
    pub fn triple_commutator_in(&self, q: &Subgroup, x: u32, r: &Subgroup) -> Result<bool> {
        if !self.normalizes(x, q) {
            return Err(Error::NotNormalized);
        }
        Ok(q.elements().iter().all(|&a| {
            let c = self.commutator(self.commutator(a, x), x);
            r.contains(c)
        }))
    }

    /// `(a^-1)^x a (a^-1)^x a^(x^2) = 1` for every `a` in `Q`.
    pub fn triple_identity_holds(&self, q: &Subgroup, x: u32) -> bool {
        let x2 = self.mul(x, x);
        q.elements().iter().all(|&a| {
            let ai = self.conj(self.inv(a), x);
            let v = self.mul(self.mul(self.mul(ai, a), ai), self.conj(a, x2));
            v == 0
        })
    }

    /// Permutation of the positions of `Q`'s elements induced by conjugation with `g`.
    pub fn conjugation_action(&self, q: &Subgroup, g: u32) -> Perm {
        let pos: FxHashMap<u32, u16> = q.elements().iter().enumerate().map(|(i, &x)| (x, i as u16)).collect();
        Perm::from_raw(q.elements().iter().map(|&x| pos[&self.conj(x, g)]).collect())
    }

    /// `N_G(Q)/C_G(Q)` acting faithfully on the elements of `Q`, with the map from `N_G(Q)`.
    pub fn induced_automizer(&self, q: &Subgroup) -> (Group, Hom) {
        self.induced_automizer_in(&self.whole(), q)
    }

    pub fn induced_automizer_in(&self, h: &Subgroup, q: &Subgroup) -> (Group, Hom) {
        let n = self.normalizer_in(h, q);
        let pos: FxHashMap<u32, u16> = q.elements().iter().enumerate().map(|(i, &x)| (x, i as u16)).collect();
        let act = |g: u32| Perm::from_raw(q.elements().iter().map(|&x| pos[&self.conj(x, g)]).collect());
        let gens: Vec<Perm> = n.generators().iter().map(|&g| act(g)).collect();
        let a = Group::generate_with_caps(&gens, q.order(), crate::caps::Caps { degree: usize::MAX >> 1, ..self.caps() })
            .expect("automizer is a quotient of a group within caps");
        let images = n.elements().iter().map(|&g| a.index_of(&act(g)).expect("image lies in automizer")).collect();
        (a, Hom::new(n, images))
    }

    /// `Z(J(P))`, where `J(P)` is generated by the Abelian subgroups of maximal order.
    pub fn thompson_center(&self, p_sub: &Subgroup) -> (Subgroup, Subgroup) {
        let subs = self.p_subgroups_of(p_sub);
        let abelian: Vec<&Subgroup> = subs.iter().filter(|s| self.is_abelian(s)).collect();
        let max = abelian.iter().map(|s| s.order()).max().unwrap_or(1);
        let mut j = self.trivial();
        for s in abelian.into_iter().filter(|s| s.order() == max) {
            j = self.join(&j, s);
        }
        let z = self.center_of(&j);
        (j, z)
    }
}
