//! The action of `N_H(Q) ∩ N_H(R)` on a section `Q/R` of `p`-subgroups.

use rustc_hash::FxHashMap;

use crate::caps::Caps;
use crate::engine::{CoreMode, Group, Perm, Subgroup};

pub(crate) struct SectionAction<'a> {
    g: &'a Group,
    p: u64,
    pub normalizer: Subgroup,
    label: FxHashMap<u32, u16>,
    table: Vec<u16>,
    inverse: Vec<u16>,
    size: usize,
    pub automizer: Group,
    pub op: Subgroup,
}

impl<'a> SectionAction<'a> {
    /// `R` must be normal in `Q`, both `p`-subgroups of `H`.
    pub fn new(g: &'a Group, h: &Subgroup, q: &Subgroup, r: &Subgroup, p: u64) -> SectionAction<'a> {
        let nq = g.normalizer_in(h, q);
        let normalizer = if r.is_trivial() { nq } else { g.normalizer_in(&nq, r) };
        let mut label: FxHashMap<u32, u16> = FxHashMap::default();
        let mut reps: Vec<u32> = Vec::new();
        for &x in q.elements() {
            if label.contains_key(&x) {
                continue;
            }
            let c = reps.len() as u16;
            reps.push(x);
            for &y in r.elements() {
                label.insert(g.mul(y, x), c);
            }
        }
        let size = reps.len();
        let mut table = vec![0u16; size * size];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * size + j] = label[&g.mul(a, b)];
            }
        }
        let inverse = reps.iter().map(|&a| label[&g.inv(a)]).collect();
        let mut this = SectionAction {
            g,
            p,
            normalizer,
            label,
            table,
            inverse,
            size,
            automizer: Group::generate(&[], 0).expect("trivial group"),
            op: Subgroup::from_parts(vec![0], vec![]),
        };
        let reps_ref = reps;
        let gens: Vec<Perm> = this.normalizer.generators().iter().map(|&x| this.action_on(&reps_ref, x)).collect();
        let caps = Caps { degree: usize::MAX >> 1, ..g.caps() };
        this.automizer = Group::generate_with_caps(&gens, size, caps).expect("automizer is a section of a group within caps");
        this.op = this.automizer.p_core(p, CoreMode::P);
        this
    }

    fn action_on(&self, reps: &[u32], x: u32) -> Perm {
        Perm::from_raw(reps.iter().map(|&a| self.label[&self.g.conj(a, x)]).collect())
    }

    /// Permutation of the section induced by conjugation with `x`.
    pub fn action(&self, x: u32) -> Perm {
        let mut images = vec![0u16; self.size];
        let mut done = vec![false; self.size];
        for (&y, &l) in &self.label {
            if !done[l as usize] {
                done[l as usize] = true;
                images[l as usize] = self.label[&self.g.conj(y, x)];
            }
        }
        Perm::from_raw(images)
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.table[a as usize * self.size + b as usize]
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.size as u16).any(|a| {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = self.mul(x, a);
                k += 1;
            }
            k == self.size
        })
    }

    /// `(a^-1)^α a (a^-1)^α a^(α^2) = 1` for every `a` in the section.
    pub fn identity_holds(&self, alpha: &Perm) -> bool {
        (0..self.size).all(|a| {
            let img = alpha.apply(self.inverse[a] as usize) as u16;
            let a2 = alpha.apply(alpha.apply(a)) as u16;
            self.mul(self.mul(self.mul(img, a as u16), img), a2) == 0
        })
    }

    /// First automizer class representative satisfying the identity but lying outside `O_p`.
    pub fn first_failure(&self) -> Option<u32> {
        self.automizer
            .classes()
            .reps
            .iter()
            .copied()
            .find(|&a| a != 0 && !self.op.contains(a) && self.identity_holds(self.automizer.perm(a)))
    }

    /// A `p`-element of the normalizer acting as the automizer element `a`.
    pub fn p_element_preimage(&self, a: u32) -> u32 {
        let target = self.automizer.perm(a);
        let x = self
            .normalizer
            .elements()
            .iter()
            .copied()
            .find(|&x| self.action(x) == *target)
            .expect("automizer elements are induced by the normalizer");
        let xp = self.g.p_part(x, self.p);
        if self.action(xp) == *target {
            xp
        } else {
            x
        }
    }
}
