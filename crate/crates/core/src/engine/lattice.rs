//! Subgroup enumeration.

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

use super::group::{Group, Subgroup};
use crate::error::{Error, Result};

/// One conjugacy class of subgroups.
#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    pub size: usize,
}

/// A class of `p`-subgroups of `G` together with its members inside a fixed Sylow subgroup.
#[derive(Debug, Clone)]
pub struct PSubgroupClass {
    pub rep: Subgroup,
    /// Indices into `PSubgroups::all` of the class members contained in the Sylow subgroup.
    pub members: Vec<usize>,
    /// Number of `G`-conjugates.
    pub size: usize,
}

#[derive(Debug, Clone)]
pub struct PSubgroups {
    pub sylow: Subgroup,
    /// Every subgroup of the Sylow subgroup, in canonical order.
    pub all: Vec<Subgroup>,
    pub classes: Vec<PSubgroupClass>,
    /// Class index of each entry of `all`.
    pub class_of: Vec<usize>,
    lookup: FxHashMap<Vec<u32>, usize>,
}

impl PSubgroups {
    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.lookup.get(s.elements()).copied()
    }
}

impl Group {
    /// Every subgroup of the `p`-group `P`, sorted by (order, element list).
    ///
    /// Each subgroup of order `p^(k+1)` contains a normal subgroup of order `p^k`,
    /// so extending every subgroup by elements of order `p` modulo it reaches all of them.
    pub fn p_subgroups_of(&self, p_sub: &Subgroup) -> Vec<Subgroup> {
        let p = smallest_prime(p_sub.order() as u64);
        let mut found: FxHashSet<Vec<u32>> = FxHashSet::default();
        let mut level: Vec<Subgroup> = vec![self.trivial()];
        let mut all = level.clone();
        found.insert(vec![0]);
        while !level.is_empty() {
            let mut next = Vec::new();
            for h in &level {
                let mut covered = FixedBitSet::with_capacity(self.order());
                for &x in h.elements() {
                    covered.insert(x as usize);
                }
                for &x in p_sub.elements() {
                    if covered.contains(x as usize) || !self.normalizes(x, h) {
                        continue;
                    }
                    let mut y = x;
                    loop {
                        let yp = self.pow(y, p);
                        if h.contains(yp) {
                            break;
                        }
                        y = yp;
                    }
                    let s = self.extend(h, y);
                    for &z in s.elements() {
                        covered.insert(z as usize);
                    }
                    if found.insert(s.elements().to_vec()) {
                        next.push(s);
                    }
                }
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        all.sort_by(|a, b| a.canonical_cmp(b));
        all
    }

    /// Subgroups of the Sylow `p`-subgroup grouped into `G`-conjugacy classes.
    pub fn p_subgroup_classes(&self, p: u64) -> PSubgroups {
        self.p_subgroup_classes_in(&self.whole(), p)
    }

    /// As `p_subgroup_classes`, for conjugacy under `H`.
    pub fn p_subgroup_classes_in(&self, h: &Subgroup, p: u64) -> PSubgroups {
        let sylow = self.sylow_in(h, p);
        self.p_subgroup_classes_on(h, &sylow)
    }

    /// Classes of subgroups of a given Sylow subgroup `S` of `H` under `H`-conjugacy.
    pub fn p_subgroup_classes_on(&self, h: &Subgroup, sylow: &Subgroup) -> PSubgroups {
        let all = self.p_subgroups_of(sylow);
        let lookup: FxHashMap<Vec<u32>, usize> =
            all.iter().enumerate().map(|(i, s)| (s.elements().to_vec(), i)).collect();
        let mut class_of = vec![usize::MAX; all.len()];
        let mut classes = Vec::new();
        for i in 0..all.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let orbit = self.conjugacy_orbit(h, &all[i]);
            let mut members: Vec<usize> = orbit
                .iter()
                .filter_map(|s| lookup.get(s.elements()).copied())
                .collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(PSubgroupClass { rep: all[members[0]].clone(), members, size: orbit.len() });
        }
        PSubgroups { sylow: sylow.clone(), all, classes, class_of, lookup }
    }

    /// Index of the class of an arbitrary `p`-subgroup `Q` of `H`.
    pub fn class_of_p_subgroup(&self, h: &Subgroup, data: &PSubgroups, q: &Subgroup) -> Option<usize> {
        for &g in h.elements() {
            if q.generators().iter().all(|&x| data.sylow.contains(self.conj(x, g))) {
                let c = self.conjugate_subgroup(q, g);
                return data.position(&c).map(|i| data.class_of[i]);
            }
        }
        None
    }

    /// One representative per conjugacy class of subgroups of `H`, each the least
    /// conjugate, sorted by (order, element list).
    pub fn subgroups_up_to_conjugacy_in(&self, h: &Subgroup) -> Result<Vec<SubgroupClass>> {
        let cap = self.caps().subgroup;
        if h.order() > cap {
            return Err(Error::SubgroupCapExceeded { order: h.order(), cap });
        }
        // One generator per cyclic subgroup.
        let mut cyclic_gens = Vec::new();
        let mut marked: FxHashSet<u32> = FxHashSet::default();
        for &x in h.elements() {
            if x == 0 || marked.contains(&x) {
                continue;
            }
            cyclic_gens.push(x);
            let o = self.element_order(x) as u64;
            for k in 1..o {
                if num_integer::gcd(k, o) == 1 {
                    marked.insert(self.pow(x, k));
                }
            }
        }
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        let mut classes: Vec<SubgroupClass> = Vec::new();
        let add = |s: &Subgroup, seen: &mut FxHashSet<Vec<u32>>, classes: &mut Vec<SubgroupClass>| -> bool {
            if seen.contains(s.elements()) {
                return false;
            }
            let orbit = self.conjugacy_orbit(h, s);
            let rep = orbit
                .iter()
                .min_by(|a, b| a.elements().cmp(b.elements()))
                .expect("orbit is nonempty")
                .clone();
            let size = orbit.len();
            for o in orbit {
                seen.insert(o.elements().to_vec());
            }
            classes.push(SubgroupClass { rep, size });
            true
        };
        add(&self.trivial(), &mut seen, &mut classes);
        let mut head = 0;
        while head < classes.len() {
            let base = classes[head].rep.clone();
            head += 1;
            if base.order() == h.order() {
                continue;
            }
            for &x in &cyclic_gens {
                if base.contains(x) {
                    continue;
                }
                let s = self.extend(&base, x);
                add(&s, &mut seen, &mut classes);
            }
        }
        classes.sort_by(|a, b| a.rep.canonical_cmp(&b.rep));
        Ok(classes)
    }

    pub fn subgroups_up_to_conjugacy(&self) -> Result<Vec<SubgroupClass>> {
        self.subgroups_up_to_conjugacy_in(&self.whole())
    }

    /// Every normal subgroup of `H`, sorted by (order, element list).
    pub fn normal_subgroups_in(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut found: FxHashMap<Vec<u32>, Subgroup> = FxHashMap::default();
        let t = self.trivial();
        found.insert(t.elements().to_vec(), t);
        let mut basic = Vec::new();
        for x in self.h_class_reps(h) {
            if x == 0 {
                continue;
            }
            let n = self.normal_closure_in(h, &[x]);
            if !found.contains_key(n.elements()) {
                found.insert(n.elements().to_vec(), n.clone());
                basic.push(n);
            }
        }
        let mut frontier: Vec<Subgroup> = found.values().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &basic {
                    let j = self.join(a, b);
                    if !found.contains_key(j.elements()) {
                        found.insert(j.elements().to_vec(), j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = found.into_values().collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }
}

fn smallest_prime(n: u64) -> u64 {
    if n < 2 {
        return 1;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    n
}
