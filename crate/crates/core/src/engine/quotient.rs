//! Homomorphisms given by tables, and quotients realized on right cosets.

use rustc_hash::FxHashMap;

use super::group::{Group, Subgroup};
use super::perm::Perm;
use crate::error::{Error, Result};

/// A homomorphism from a subgroup of one group into another group.
///
/// `images[i]` is the image of `domain.elements()[i]`.
#[derive(Debug, Clone)]
pub struct Hom {
    domain: Subgroup,
    images: Vec<u32>,
}

impl Hom {
    pub(crate) fn new(domain: Subgroup, images: Vec<u32>) -> Hom {
        debug_assert_eq!(domain.order(), images.len());
        Hom { domain, images }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn table(&self) -> &[u32] {
        &self.images
    }

    pub fn image_of(&self, x: u32) -> Option<u32> {
        let i = self.domain.elements().binary_search(&x).ok()?;
        Some(self.images[i])
    }

    /// Elements of the domain mapped to the identity.
    pub fn kernel_elements(&self) -> Vec<u32> {
        self.domain
            .elements()
            .iter()
            .zip(&self.images)
            .filter(|(_, &y)| y == 0)
            .map(|(&x, _)| x)
            .collect()
    }

    pub fn image_elements(&self) -> Vec<u32> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Elementwise check that the table respects products.
    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        let elems = self.domain.elements();
        self.domain.generators().iter().all(|&s| {
            let Some(is) = self.image_of(s) else { return false };
            elems.iter().zip(&self.images).all(|(&x, &ix)| {
                self.image_of(source.mul(x, s)) == Some(target.mul(ix, is))
            })
        })
    }

    /// Preimage of a set of target elements, as a subgroup of the source.
    pub fn preimage(&self, source: &Group, target_set: &Subgroup) -> Subgroup {
        let elems: Vec<u32> = self
            .domain
            .elements()
            .iter()
            .zip(&self.images)
            .filter(|(_, &y)| target_set.contains(y))
            .map(|(&x, _)| x)
            .collect();
        source.subgroup_from_elements(elems)
    }

    pub fn image_subgroup(&self, source: &Group, target: &Group, h: &Subgroup) -> Subgroup {
        let gens: Vec<u32> = h
            .generators()
            .iter()
            .map(|&x| self.image_of(x).expect("h lies in the domain"))
            .collect();
        let _ = source;
        target.closure(&gens)
    }
}

/// Right-coset labels of `k` inside `h`: returns (label per element of `h`, coset representatives).
pub(crate) fn coset_labels(g: &Group, h: &Subgroup, k: &Subgroup) -> (FxHashMap<u32, u32>, Vec<u32>) {
    let mut label: FxHashMap<u32, u32> = FxHashMap::default();
    label.reserve(h.order());
    let mut reps = Vec::new();
    for &x in h.elements() {
        if label.contains_key(&x) {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &y in k.elements() {
            label.insert(g.mul(y, x), c);
        }
    }
    (label, reps)
}

/// `h / k` realized on the right cosets of `k` in `h`, plus the projection.
pub fn quotient_of(g: &Group, h: &Subgroup, k: &Subgroup) -> Result<(Group, Hom)> {
    if !k.is_subset_of(h) || !g.is_normal_in(k, h) {
        return Err(Error::NotNormal);
    }
    let caps = g.caps();
    if k.is_trivial() {
        let q = g.subgroup_as_group(h);
        let images = h
            .elements()
            .iter()
            .map(|&x| q.index_of(g.perm(x)).expect("same element set"))
            .collect();
        return Ok((q, Hom::new(h.clone(), images)));
    }
    let index = h.order() / k.order();
    if index > caps.degree {
        return Err(Error::DegreeCapExceeded { degree: index, cap: caps.degree });
    }
    let (label, reps) = coset_labels(g, h, k);
    let coset_perm = |x: u32| -> Perm {
        Perm::from_raw(reps.iter().map(|&r| label[&g.mul(r, x)] as u16).collect())
    };
    let elems: Vec<Perm> = reps.iter().map(|&r| coset_perm(r)).collect();
    let gens: Vec<Perm> = h.generators().iter().map(|&s| coset_perm(s)).collect();
    let q = Group::from_closed(elems, &gens, index, caps);
    let rep_image: Vec<u32> = reps
        .iter()
        .map(|&r| q.index_of(&coset_perm(r)).expect("coset permutation lies in the quotient"))
        .collect();
    let images = h.elements().iter().map(|x| rep_image[label[x] as usize]).collect();
    Ok((q, Hom::new(h.clone(), images)))
}

/// The action of `h` on the right cosets of `k` (not necessarily normal), plus the action map.
pub fn coset_action(g: &Group, h: &Subgroup, k: &Subgroup) -> Result<(Group, Hom)> {
    if !k.is_subset_of(h) {
        return Err(Error::bad("coset action needs k inside h"));
    }
    let caps = g.caps();
    let index = h.order() / k.order();
    if index > caps.degree {
        return Err(Error::DegreeCapExceeded { degree: index, cap: caps.degree });
    }
    let (label, reps) = coset_labels(g, h, k);
    let coset_perm = |x: u32| -> Perm {
        Perm::from_raw(reps.iter().map(|&r| label[&g.mul(r, x)] as u16).collect())
    };
    let gens: Vec<Perm> = h.generators().iter().map(|&s| coset_perm(s)).collect();
    let image = Group::generate_with_caps(&gens, index, caps)?;
    let images = h
        .elements()
        .iter()
        .map(|&x| image.index_of(&coset_perm(x)).expect("action image lies in the generated group"))
        .collect();
    Ok((image, Hom::new(h.clone(), images)))
}

/// `G / N`.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<(Group, Hom)> {
    quotient_of(g, &g.whole(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> Group {
        Group::generate(
            &[Perm::from_cycles(4, "(0 1 2 3)").unwrap(), Perm::from_cycles(4, "(0 1)").unwrap()],
            4,
        )
        .unwrap()
    }

    #[test]
    fn s4_mod_klein_is_s3() {
        let g = s4();
        let v = g.subgroup_from_perms(&[
            Perm::from_cycles(4, "(0 1)(2 3)").unwrap(),
            Perm::from_cycles(4, "(0 2)(1 3)").unwrap(),
        ])
        .unwrap();
        let (q, hom) = quotient(&g, &v).unwrap();
        assert_eq!(q.order(), 6);
        assert!(hom.is_homomorphism(&g, &q));
        let mut ker = hom.kernel_elements();
        ker.sort_unstable();
        assert_eq!(ker, v.elements());
        assert_eq!(hom.image_elements().len(), 6);
    }

    #[test]
    fn quotient_by_whole_and_trivial() {
        let g = s4();
        let (q, _) = quotient(&g, &g.whole()).unwrap();
        assert_eq!(q.order(), 1);
        let (q, hom) = quotient(&g, &g.trivial()).unwrap();
        assert_eq!(q.order(), 24);
        assert!(hom.is_homomorphism(&g, &q));
    }

    #[test]
    fn non_normal_is_rejected() {
        let g = s4();
        let t = g.subgroup_from_perms(&[Perm::from_cycles(4, "(0 1)").unwrap()]).unwrap();
        assert_eq!(quotient(&g, &t).unwrap_err(), Error::NotNormal);
    }
}
