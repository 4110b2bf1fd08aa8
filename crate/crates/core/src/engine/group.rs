//! Finite permutation groups stored with their full, sorted element list.
//!
//! Elements are addressed by their index in the sorted list, so index 0 is
//! always the identity and index order is the lexicographic order of the
//! image vectors. Products are looked up through the images of a base.

use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

use super::perm::Perm;
use crate::caps::Caps;
use crate::error::{Error, Result};

const STACK_BASE: usize = 32;

#[derive(Debug)]
pub struct Group {
    degree: usize,
    label: String,
    caps: Caps,
    elems: Vec<Perm>,
    gens: Vec<u32>,
    base: Vec<u16>,
    index: FxHashMap<Box<[u16]>, u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    classes: OnceLock<ConjugacyClasses>,
}

/// Conjugacy classes, each listed by its least element index.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
}

/// A subgroup of some `Group`, as a sorted list of element indices plus generators.
#[derive(Debug, Clone)]
pub struct Subgroup {
    elems: Vec<u32>,
    gens: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.len() <= other.elems.len() && self.elems.iter().all(|&x| other.contains(x))
    }

    /// Order by size, then by the sorted element list.
    pub fn canonical_cmp(&self, other: &Subgroup) -> std::cmp::Ordering {
        self.elems.len().cmp(&other.elems.len()).then_with(|| self.elems.cmp(&other.elems))
    }

    pub(crate) fn from_parts(mut elems: Vec<u32>, gens: Vec<u32>) -> Subgroup {
        elems.sort_unstable();
        Subgroup { elems, gens }
    }

    pub fn bitset(&self, n: usize) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &x in &self.elems {
            b.insert(x as usize);
        }
        b
    }
}

impl Group {
    /// Closes `gens` under multiplication with the caps taken from the environment.
    pub fn generate(gens: &[Perm], degree: usize) -> Result<Group> {
        Self::generate_with_caps(gens, degree, Caps::from_env())
    }

    pub fn generate_with_caps(gens: &[Perm], degree: usize, caps: Caps) -> Result<Group> {
        if degree > caps.degree {
            return Err(Error::DegreeCapExceeded { degree, cap: caps.degree });
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::bad(format!("generator of degree {} in a group of degree {degree}", g.degree())));
        }
        let id = Perm::identity(degree);
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        let mut list = vec![id.clone()];
        seen.insert(id);
        let mut head = 0;
        while head < list.len() {
            let x = list[head].clone();
            head += 1;
            for g in gens {
                let y = x.mul(g);
                if !seen.contains(&y) {
                    if list.len() >= caps.order {
                        return Err(Error::OrderCapExceeded { cap: caps.order });
                    }
                    seen.insert(y.clone());
                    list.push(y);
                }
            }
        }
        drop(seen);
        Ok(Self::from_closed(list, gens, degree, caps))
    }

    /// Builds a group from a list already closed under multiplication.
    pub(crate) fn from_closed(mut elems: Vec<Perm>, gens: &[Perm], degree: usize, caps: Caps) -> Group {
        elems.sort_unstable();
        elems.dedup();
        let base = compute_base(&elems, gens, degree);
        let mut index = FxHashMap::default();
        index.reserve(elems.len());
        for (i, e) in elems.iter().enumerate() {
            let key: Box<[u16]> = base.iter().map(|&b| e.images()[b as usize]).collect();
            index.insert(key, i as u32);
        }
        let mut g = Group {
            degree,
            label: String::new(),
            caps,
            elems,
            gens: Vec::new(),
            base,
            index,
            inv: Vec::new(),
            orders: Vec::new(),
            classes: OnceLock::new(),
        };
        g.gens = gens
            .iter()
            .map(|p| g.index_of(p).expect("generator lies in its closure"))
            .collect();
        g.inv = g.elems.iter().map(|e| g.index_of(&e.inverse()).expect("closed")).collect();
        g.orders = g.elems.iter().map(|e| e.order() as u32).collect();
        g
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn perm(&self, x: u32) -> &Perm {
        &self.elems[x as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.gens.iter().map(|&g| self.elems[g as usize].clone()).collect()
    }

    pub fn base(&self) -> &[u16] {
        &self.base
    }

    /// Index of `p` if it lies in the group.
    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        if p.degree() != self.degree {
            return None;
        }
        let key: Vec<u16> = self.base.iter().map(|&b| p.images()[b as usize]).collect();
        let &i = self.index.get(key.as_slice())?;
        (self.elems[i as usize] == *p).then_some(i)
    }

    pub fn contains_perm(&self, p: &Perm) -> bool {
        self.index_of(p).is_some()
    }

    /// `a` followed by `b`.
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let pa = self.elems[a as usize].images();
        let pb = self.elems[b as usize].images();
        if self.base.len() <= STACK_BASE {
            let mut key = [0u16; STACK_BASE];
            for (k, &beta) in self.base.iter().enumerate() {
                key[k] = pb[pa[beta as usize] as usize];
            }
            self.index[&key[..self.base.len()]]
        } else {
            let key: Vec<u16> = self.base.iter().map(|&beta| pb[pa[beta as usize] as usize]).collect();
            self.index[key.as_slice()]
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv[g as usize], x), g)
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        let ord = self.orders[x as usize] as u64;
        let mut e = e % ord;
        let mut acc = 0;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u32 {
        self.orders[x as usize]
    }

    pub fn is_p_element(&self, x: u32, p: u64) -> bool {
        is_power_of(self.orders[x as usize] as u64, p)
    }

    /// The `p`-part of `x`: the unique `p`-element power `x^k` with `x = x_p x_p'`.
    pub fn p_part(&self, x: u32, p: u64) -> u32 {
        let ord = self.orders[x as usize] as u64;
        let mut pp = 1;
        let mut m = ord;
        while m.is_multiple_of(p) {
            m /= p;
            pp *= p;
        }
        if pp == 1 {
            return 0;
        }
        // x^(m * m^-1 mod pp) is the p-part.
        let inv_m = mod_inverse(m % pp, pp);
        self.pow(x, (m * inv_m) % ord)
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![u32::MAX; n];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            for start in 0..n as u32 {
                if class_of[start as usize] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push(start);
                class_of[start as usize] = id;
                let mut queue = vec![start];
                let mut head = 0;
                while head < queue.len() {
                    let x = queue[head];
                    head += 1;
                    for &g in &self.gens {
                        let y = self.conj(x, g);
                        if class_of[y as usize] == u32::MAX {
                            class_of[y as usize] = id;
                            queue.push(y);
                        }
                    }
                }
                sizes.push(queue.len());
            }
            ConjugacyClasses { class_of, reps, sizes }
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elems: (0..self.order() as u32).collect(), gens: self.gens.clone() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elems: vec![0], gens: vec![] }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        self.closure_bounded(gens, usize::MAX, |_| true)
            .expect("unbounded closure always succeeds")
    }

    /// Closure that gives up (returns `None`) once it exceeds `limit` elements
    /// or meets an element failing `accept`.
    pub fn closure_bounded(&self, gens: &[u32], limit: usize, accept: impl Fn(u32) -> bool) -> Option<Subgroup> {
        let gens: Vec<u32> = {
            let mut v: Vec<u32> = gens.iter().copied().filter(|&g| g != 0).collect();
            v.dedup();
            v
        };
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut list = vec![0u32];
        seen.insert(0);
        let mut head = 0;
        while head < list.len() {
            let x = list[head];
            head += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen.contains(y as usize) {
                    if list.len() >= limit || !accept(y) {
                        return None;
                    }
                    seen.insert(y as usize);
                    list.push(y);
                }
            }
        }
        Some(Subgroup::from_parts(list, gens))
    }

    /// `<H, x>`.
    pub fn extend(&self, h: &Subgroup, x: u32) -> Subgroup {
        if h.contains(x) {
            return h.clone();
        }
        let mut gens = h.gens.clone();
        gens.push(x);
        self.closure(&gens)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if b.is_subset_of(a) {
            return a.clone();
        }
        if a.is_subset_of(b) {
            return b.clone();
        }
        let mut gens = a.gens.clone();
        gens.extend(b.gens.iter().copied().filter(|&g| !a.contains(g)));
        self.closure(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
        let elems: Vec<u32> = small.elems.iter().copied().filter(|&x| large.contains(x)).collect();
        self.subgroup_from_elements(elems)
    }

    /// Wraps a closed set of elements (repeats allowed), choosing a small generating set greedily.
    pub fn subgroup_from_elements(&self, mut elems: Vec<u32>) -> Subgroup {
        elems.sort_unstable();
        elems.dedup();
        let gens = self.greedy_generators(&elems);
        Subgroup { elems, gens }
    }

    /// Generators picked in index order, each outside the span of the previous ones.
    pub fn greedy_generators(&self, elems: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        // Prefer elements of large order so fewer generators are needed.
        let mut order: Vec<u32> = elems.to_vec();
        order.sort_by_key(|&x| (std::cmp::Reverse(self.orders[x as usize]), x));
        for x in order {
            if span.order() == elems.len() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: u32) -> Subgroup {
        let elems: Vec<u32> = h.elems.iter().map(|&x| self.conj(x, g)).collect();
        let gens = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        Subgroup::from_parts(elems, gens)
    }

    /// True if every generator of `h` conjugated by `g` lies in `h`.
    pub fn normalizes(&self, g: u32, h: &Subgroup) -> bool {
        h.gens.iter().all(|&x| h.contains(self.conj(x, g)))
    }

    /// `k` normal in `h` (`k` must be a subgroup of `h`).
    pub fn is_normal_in(&self, k: &Subgroup, h: &Subgroup) -> bool {
        h.gens.iter().all(|&g| self.normalizes(g, k))
    }

    pub fn is_normal(&self, k: &Subgroup) -> bool {
        self.gens.iter().all(|&g| self.normalizes(g, k))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&a| h.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self, h: &Subgroup) -> bool {
        h.elems.iter().any(|&x| self.orders[x as usize] as usize == h.order())
    }

    pub fn exponent(&self, h: &Subgroup) -> u64 {
        h.elems
            .iter()
            .fold(1u64, |acc, &x| num_integer::lcm(acc, self.orders[x as usize] as u64))
    }

    /// Subgroup generated by the given perms, which must lie in the group.
    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let gens = perms
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::bad("permutation is not in the group")))
            .collect::<Result<Vec<u32>>>()?;
        Ok(self.closure(&gens))
    }

    /// The subgroup as a standalone group on the same points.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Group {
        let elems: Vec<Perm> = h.elems.iter().map(|&x| self.elems[x as usize].clone()).collect();
        let gens: Vec<Perm> = h.gens.iter().map(|&x| self.elems[x as usize].clone()).collect();
        Group::from_closed(elems, &gens, self.degree, self.caps)
    }

    pub fn perms_of(&self, h: &Subgroup) -> Vec<Perm> {
        h.gens.iter().map(|&x| self.elems[x as usize].clone()).collect()
    }
}

pub fn is_power_of(n: u64, p: u64) -> bool {
    let mut n = n;
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn p_part_of(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut out = 1;
    while n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(m as i64) as u64
}

/// Points whose images separate all elements, chosen greedily.
fn compute_base(elems: &[Perm], gens: &[Perm], degree: usize) -> Vec<u16> {
    let n = elems.len();
    if n <= 1 {
        return Vec::new();
    }
    let moved: Vec<usize> = (0..degree)
        .filter(|&b| gens.iter().any(|g| g.apply(b) != b))
        .collect();
    let mut label = vec![0u32; n];
    let mut classes = 1usize;
    let mut base = Vec::new();
    for &b in &moved {
        let mut ids: FxHashMap<(u32, u16), u32> = FxHashMap::default();
        let mut next = vec![0u32; n];
        for (i, e) in elems.iter().enumerate() {
            let key = (label[i], e.images()[b]);
            let len = ids.len() as u32;
            next[i] = *ids.entry(key).or_insert(len);
        }
        if ids.len() > classes {
            classes = ids.len();
            label = next;
            base.push(b as u16);
            if classes == n {
                break;
            }
        }
    }
    base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        Group::generate(
            &[Perm::from_cycles(3, "(0 1 2)").unwrap(), Perm::from_cycles(3, "(0 1)").unwrap()],
            3,
        )
        .unwrap()
    }

    #[test]
    fn generate_small_groups() {
        assert_eq!(s3().order(), 6);
        assert_eq!(Group::generate(&[], 4).unwrap().order(), 1);
        let s3 = s3();
        assert!(s3.perm(0).is_identity());
    }

    #[test]
    fn order_cap_is_reported() {
        let caps = Caps { order: 5, ..Caps::default() };
        let gens = [Perm::from_cycles(3, "(0 1 2)").unwrap(), Perm::from_cycles(3, "(0 1)").unwrap()];
        assert_eq!(
            Group::generate_with_caps(&gens, 3, caps).unwrap_err(),
            Error::OrderCapExceeded { cap: 5 }
        );
        let caps = Caps { degree: 2, ..Caps::default() };
        assert!(matches!(
            Group::generate_with_caps(&gens, 3, caps),
            Err(Error::DegreeCapExceeded { .. })
        ));
    }

    #[test]
    fn indexed_arithmetic_matches_perms() {
        let g = Group::generate(
            &[Perm::from_cycles(5, "(0 1 2 3 4)").unwrap(), Perm::from_cycles(5, "(0 1)").unwrap()],
            5,
        )
        .unwrap();
        assert_eq!(g.order(), 120);
        for a in (0..120).step_by(7) {
            for b in (0..120).step_by(11) {
                let direct = g.perm(a).mul(g.perm(b));
                assert_eq!(g.perm(g.mul(a, b)), &direct);
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
            let pp = g.p_part(a, 2);
            assert!(g.is_p_element(pp, 2));
        }
        assert_eq!(g.classes().reps.len(), 7);
    }

    #[test]
    fn subgroup_basics() {
        let g = s3();
        let a3 = g.closure(&[g.index_of(&Perm::from_cycles(3, "(0 1 2)").unwrap()).unwrap()]);
        assert_eq!(a3.order(), 3);
        assert!(g.is_normal(&a3));
        let t = g.closure(&[g.index_of(&Perm::from_cycles(3, "(0 1)").unwrap()).unwrap()]);
        assert!(!g.is_normal(&t));
        assert_eq!(g.join(&a3, &t).order(), 6);
        assert!(g.intersection(&a3, &t).is_trivial());
    }
}
