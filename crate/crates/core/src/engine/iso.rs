//! Isomorphism and embedding search by generator-image backtracking.

use std::collections::BTreeMap;

use serde::Serialize;

use super::group::{Group, Subgroup};
use super::quotient::{quotient, Hom};
use crate::error::Result;

/// Isomorphism invariants compared before any search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    /// `(element order, count)`.
    pub order_histogram: Vec<(u32, usize)>,
    /// `(element order, class size, number of classes)`.
    pub class_profile: Vec<(u32, usize, usize)>,
    pub center_order: usize,
    pub derived_series: Vec<usize>,
    /// Element-order histogram of `G/G'`, which determines the Abelianization.
    pub abelianization: Vec<(u32, usize)>,
}

pub fn fingerprint(g: &Group) -> Result<Fingerprint> {
    let mut hist: BTreeMap<u32, usize> = BTreeMap::new();
    for x in 0..g.order() as u32 {
        *hist.entry(g.element_order(x)).or_default() += 1;
    }
    let classes = g.classes();
    let mut prof: BTreeMap<(u32, usize), usize> = BTreeMap::new();
    for (i, &r) in classes.reps.iter().enumerate() {
        *prof.entry((g.element_order(r), classes.sizes[i])).or_default() += 1;
    }
    let whole = g.whole();
    let derived = g.derived_subgroup(&whole);
    let (ab, _) = quotient(g, &derived)?;
    let mut ab_hist: BTreeMap<u32, usize> = BTreeMap::new();
    for x in 0..ab.order() as u32 {
        *ab_hist.entry(ab.element_order(x)).or_default() += 1;
    }
    Ok(Fingerprint {
        order: g.order(),
        order_histogram: hist.into_iter().collect(),
        class_profile: prof.into_iter().map(|((o, s), c)| (o, s, c)).collect(),
        center_order: g.center().order(),
        derived_series: g.derived_series_orders(&whole),
        abelianization: ab_hist.into_iter().collect(),
    })
}

/// A short generating sequence, preferring two generators from small classes.
pub fn generating_sequence(g: &Group) -> Vec<u32> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    if let Some(x) = (0..n as u32).find(|&x| g.element_order(x) as usize == n) {
        return vec![x];
    }
    let classes = g.classes();
    let size = |x: u32| classes.sizes[classes.class_of[x as usize] as usize];
    let mut reps: Vec<u32> = classes.reps.iter().copied().filter(|&x| x != 0).collect();
    reps.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), size(x), x));
    let mut others: Vec<u32> = (1..n as u32).collect();
    others.sort_by_key(|&x| (size(x), std::cmp::Reverse(g.element_order(x)), x));
    let mut budget = 4000usize;
    for &a in reps.iter().take(8) {
        for &b in &others {
            if b == a {
                continue;
            }
            if budget == 0 {
                break;
            }
            budget -= 1;
            if let Some(s) = g.closure_bounded(&[a, b], n, |_| true) {
                if s.order() == n {
                    return vec![a, b];
                }
            }
        }
    }
    g.greedy_generators(g.whole().elements())
}

/// Searches for an injective homomorphism `A -> B`; `bijective` additionally requires `|A| = |B|`
/// and matches class sizes.
fn embed(a: &Group, b: &Group, bijective: bool) -> Option<Vec<u32>> {
    let gens = generating_sequence(a);
    if gens.is_empty() {
        return Some(vec![0; a.order()]);
    }
    let ca = a.classes();
    let cb = b.classes();
    let class_size_a = |x: u32| ca.sizes[ca.class_of[x as usize] as usize];
    let class_size_b = |y: u32| cb.sizes[cb.class_of[y as usize] as usize];
    let compatible = |x: u32, y: u32| {
        a.element_order(x) == b.element_order(y) && (!bijective || class_size_a(x) == class_size_b(y))
    };
    let first: Vec<u32> = cb.reps.iter().copied().filter(|&y| compatible(gens[0], y)).collect();
    let all_b: Vec<u32> = (0..b.order() as u32).collect();
    let mut chosen: Vec<u32> = Vec::with_capacity(gens.len());
    fn rec(
        a: &Group,
        b: &Group,
        gens: &[u32],
        chosen: &mut Vec<u32>,
        first: &[u32],
        all_b: &[u32],
        compatible: &dyn Fn(u32, u32) -> bool,
    ) -> Option<Vec<u32>> {
        let k = chosen.len();
        if k == gens.len() {
            return extend_to_hom(a, b, gens, chosen);
        }
        let cands: &[u32] = if k == 0 { first } else { all_b };
        for &y in cands {
            if !compatible(gens[k], y) {
                continue;
            }
            // Products with earlier generators must have matching orders.
            let ok = (0..k).all(|i| {
                a.element_order(a.mul(gens[i], gens[k])) == b.element_order(b.mul(chosen[i], y))
                    && a.element_order(a.mul(gens[i], a.inv(gens[k])))
                        == b.element_order(b.mul(chosen[i], b.inv(y)))
            });
            if !ok {
                continue;
            }
            chosen.push(y);
            if let Some(t) = rec(a, b, gens, chosen, first, all_b, compatible) {
                return Some(t);
            }
            chosen.pop();
        }
        None
    }
    rec(a, b, &gens, &mut chosen, &first, &all_b, &compatible)
}

/// Walks the Cayley graph of `A` and checks that generator images define an injective homomorphism.
fn extend_to_hom(a: &Group, b: &Group, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = a.order();
    let mut img = vec![u32::MAX; n];
    img[0] = 0;
    let mut used = fixedbitset::FixedBitSet::with_capacity(b.order());
    used.insert(0);
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (i, &s) in gens.iter().enumerate() {
            let y = a.mul(x, s);
            let z = b.mul(img[x as usize], images[i]);
            let cur = img[y as usize];
            if cur == u32::MAX {
                if used.contains(z as usize) {
                    return None;
                }
                used.insert(z as usize);
                img[y as usize] = z;
                queue.push(y);
            } else if cur != z {
                return None;
            }
        }
    }
    (queue.len() == n).then_some(img)
}

/// An isomorphism `A -> B` as a table indexed by the elements of `A`.
pub fn is_isomorphic(a: &Group, b: &Group) -> Result<Option<Hom>> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if fingerprint(a)? != fingerprint(b)? {
        return Ok(None);
    }
    Ok(embed(a, b, true).map(|t| Hom::new(a.whole(), t)))
}

/// A subgroup of `G` isomorphic to `target`, found as the image of an injective homomorphism.
pub fn find_subgroup_isomorphic(g: &Group, target: &Group) -> Option<(Subgroup, Hom)> {
    if target.order() > g.order() || !g.order().is_multiple_of(target.order()) {
        return None;
    }
    let table = embed(target, g, false)?;
    let gens: Vec<u32> = target.generators().iter().map(|&s| table[s as usize]).collect();
    let sub = g.closure(&gens);
    Some((sub, Hom::new(target.whole(), table)))
}
