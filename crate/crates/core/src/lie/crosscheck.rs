//! Table verdicts against direct computation on constructed groups.

use serde::Serialize;
use serde_json::{json, Value};

use super::classify::{qdp_verdict, ClassifierFamily, ClassifierQuery, MinimalWitness};
use crate::caps::Caps;
use crate::constructions::{ClassicalFamily, Recipe};
use rustc_hash::FxHashMap;

use super::orders::{group_order, p_adic_valuation, OrderFamily};
use crate::engine::{FqField, FqMatrix, Group, Perm};
use crate::error::{Error, Result};
use crate::stability::involves_qdp;

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    /// `false` when the group could not be built or searched within the caps.
    pub tested: bool,
    pub agrees: bool,
    pub order: Option<usize>,
    pub table_abelian: bool,
    pub direct_abelian: Option<bool>,
    pub table_involves: bool,
    pub direct_involves: Option<bool>,
    /// `(|H|, |K|)` of the section found.
    pub direct_section: Option<(usize, usize)>,
    /// Set when only a Sylow subgroup was built, the whole group being over the caps.
    pub sylow_only: bool,
    pub note: Option<String>,
}

impl CrossCheck {
    pub fn to_json(&self, query: &ClassifierQuery) -> Value {
        let mut v = serde_json::to_value(self).unwrap_or(Value::Null);
        v["query"] = query.to_json();
        v
    }
}

/// The recipe building the queried simple group, if one exists.
pub fn recipe_for(query: &ClassifierQuery) -> Option<Recipe> {
    let n = query.n?;
    match (&query.family, query.q) {
        (ClassifierFamily::Alternating, _) => Some(Recipe::Alternating { n }),
        (ClassifierFamily::PSL, Some(q)) => Some(Recipe::Classical { family: ClassicalFamily::PSL, n, q }),
        (ClassifierFamily::PSU, Some(q)) if n == 3 => Some(Recipe::Classical { family: ClassicalFamily::PSU, n, q }),
        (ClassifierFamily::PSp, Some(q)) => Some(Recipe::Classical { family: ClassicalFamily::PSp, n, q }),
        (ClassifierFamily::C, Some(q)) => Some(Recipe::Classical { family: ClassicalFamily::PSp, n: 2 * n, q }),
        (ClassifierFamily::B, Some(q)) if n == 2 => Some(Recipe::Classical { family: ClassicalFamily::PSp, n: 4, q }),
        _ => None,
    }
}

/// The built group, its Sylow abelian test, and `(|H|, |K|)` of a `Qd(p)` section.
type Direct = (Group, bool, Option<(usize, usize)>);

/// Builds the group and compares the Abelian-Sylow and involvement verdicts with direct
/// computation. Cap overruns are reported as untested rather than as errors.
pub fn verdict_crosscheck(query: &ClassifierQuery, caps: Caps) -> Result<CrossCheck> {
    let verdict = qdp_verdict(query)?;
    let mut out = CrossCheck {
        tested: false,
        agrees: true,
        order: None,
        table_abelian: verdict.sylow_abelian,
        direct_abelian: None,
        table_involves: verdict.involves_qdp,
        direct_involves: None,
        direct_section: None,
        sylow_only: false,
        note: None,
    };
    let Some(recipe) = recipe_for(query) else {
        out.note = Some(format!("no construction for {}", query.family));
        return Ok(out);
    };
    let run = || -> Result<Direct> {
        let g = recipe.build(caps)?;
        let whole = g.whole();
        let sylow = g.sylow_in(&whole, query.p);
        let abelian = g.is_abelian(&sylow);
        let section = involves_qdp(&g, query.p)?.map(|w| (w.h.order(), w.k.order()));
        Ok((g, abelian, section))
    };
    match run() {
        Ok((g, abelian, section)) => {
            out.tested = true;
            out.order = Some(g.order());
            out.direct_abelian = Some(abelian);
            out.direct_involves = Some(section.is_some());
            out.direct_section = section;
            out.agrees = abelian == verdict.sylow_abelian && section.is_some() == verdict.involves_qdp;
            if let (Some((h, k)), true) = (section, out.agrees) {
                let qd = (query.p * query.p * query.p * (query.p * query.p - 1)) as usize;
                let expected = match verdict.minimal_witness {
                    MinimalWitness::Qdp => Some((qd, 1)),
                    MinimalWitness::TildeQdp => Some((qd * query.p as usize, query.p as usize)),
                    _ => None,
                };
                if let Some(exp) = expected {
                    out.agrees = (h, k) == exp;
                    if !out.agrees {
                        out.note = Some(format!("section of shape {h}/{k}, expected {}/{}", exp.0, exp.1));
                    }
                }
            }
        }
        Err(e) if e.is_cap() => {
            out.note = Some(e.to_string());
            if let (ClassifierFamily::PSU, Some(3), Some(q)) = (&query.family, query.n, query.q) {
                if let Some(sylow) = psu3_monomial_sylow(q, query.p, caps)? {
                    let whole = sylow.whole();
                    let abelian = sylow.is_abelian(&whole);
                    out.sylow_only = true;
                    out.direct_abelian = Some(abelian);
                    out.agrees = abelian == verdict.sylow_abelian;
                    out.note = Some(format!("{e}; Sylow subgroup of order {} built directly", sylow.order()));
                }
            }
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// A Sylow `p`-subgroup of `PSU3(q)` for `p | q + 1`, inside the monomial subgroup of the
/// isometry group of `x0 x0' + x1 x1' + x2 x2'` (bar is `x -> x^q`), acting on the projective
/// orbits of the basis points and `[1:1:1]`, which is faithful modulo scalars. `None` when `p`
/// does not divide `q + 1` or the order does not match.
pub fn psu3_monomial_sylow(q: u64, p: u64, caps: Caps) -> Result<Option<Group>> {
    if !(q + 1).is_multiple_of(p) {
        return Ok(None);
    }
    let field_size = q.checked_mul(q).and_then(|x| u32::try_from(x).ok()).ok_or_else(|| Error::bad("field too large"))?;
    let f = FqField::new(field_size)?;
    let mut k = 1u64;
    while (q + 1).is_multiple_of(k * p) {
        k *= p;
    }
    let zeta = f.least_of_order(k as u32).ok_or_else(|| Error::bad("no root of unity of the expected order"))?;
    let zi = f.inv(zeta).expect("nonzero");
    let one = f.one();
    let mut mats = vec![FqMatrix::diagonal(&[zeta, zi, one]), FqMatrix::diagonal(&[one, zeta, zi])];
    if p == 3 {
        mats.push(FqMatrix::from_rows(&[&[0, one, 0], &[0, 0, one], &[one, 0, 0]], &f)?);
    }
    let normalize = |mut v: Vec<u32>| {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let inv = f.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        v
    };
    let mut points = vec![vec![one, 0, 0], vec![0, one, 0], vec![0, 0, one], vec![one, one, one]];
    let mut index: FxHashMap<Vec<u32>, usize> = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let mut head = 0;
    while head < points.len() {
        let v = points[head].clone();
        head += 1;
        for m in &mats {
            let w = normalize(m.apply_row(&v, &f));
            if !index.contains_key(&w) {
                if points.len() >= caps.degree {
                    return Err(Error::DegreeCapExceeded { degree: points.len() + 1, cap: caps.degree });
                }
                index.insert(w.clone(), points.len());
                points.push(w);
            }
        }
    }
    let gens = mats
        .iter()
        .map(|m| Perm::from_images(points.iter().map(|v| index[&normalize(m.apply_row(v, &f))]).collect()))
        .collect::<Result<Vec<_>>>()?;
    let g = Group::generate_with_caps(&gens, points.len(), caps)?;
    let expected = p_adic_valuation(&group_order(OrderFamily::PSU, 3, q)?, p);
    Ok((g.order() == (p as usize).pow(expected)).then_some(g))
}

/// Fails if the check ran and disagreed.
pub fn require_agreement(query: &ClassifierQuery, caps: Caps) -> Result<CrossCheck> {
    let c = verdict_crosscheck(query, caps)?;
    if c.tested && !c.agrees {
        return Err(Error::bad(format!("table and direct verdicts differ: {}", json!(c))));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_sylow_of_psu3() {
        let caps = Caps::default();
        let s8 = psu3_monomial_sylow(8, 3, caps).unwrap().unwrap();
        assert_eq!(s8.order(), 81);
        assert!(!s8.is_abelian(&s8.whole()));
        let s5 = psu3_monomial_sylow(5, 3, caps).unwrap().unwrap();
        assert_eq!(s5.order(), 9);
        assert!(s5.is_abelian(&s5.whole()));
        assert!(psu3_monomial_sylow(7, 3, caps).unwrap().is_none());
    }
}
