//! Abelian Sylow subgroups and `Qd(p)` involvement for finite simple groups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::cyclotomic::weyl_part_exponent;
use super::orders::{alternating_order, e_p, order_shape, p_adic_valuation, OrderFamily, OrderShape};
use super::sporadic::{self, Sporadic};
use crate::engine::field::{is_prime, prime_power};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassifierFamily {
    Alternating,
    /// `n` is the dimension.
    PSL,
    PSU,
    PSp,
    OmegaPlus,
    OmegaMinus,
    /// `n` is the rank.
    B,
    C,
    D,
    TwistedD,
    E6,
    E7,
    E8,
    TwistedE6,
    F4,
    TwistedF4,
    G2,
    TwistedG2,
    Triality,
    TwistedB2,
    Sporadic(&'static str),
}

impl ClassifierFamily {
    pub fn name(&self) -> &'static str {
        use ClassifierFamily::*;
        match self {
            Alternating => "A",
            PSL => "PSL",
            PSU => "PSU",
            PSp => "PSp",
            OmegaPlus => "Omega+",
            OmegaMinus => "Omega-",
            B => "B",
            C => "C",
            D => "D",
            TwistedD => "2D",
            E6 => "E6",
            E7 => "E7",
            E8 => "E8",
            TwistedE6 => "2E6",
            F4 => "F4",
            TwistedF4 => "2F4",
            G2 => "G2",
            TwistedG2 => "2G2",
            Triality => "3D4",
            TwistedB2 => "2B2",
            Sporadic(s) => s,
        }
    }

    /// Families that take a rank or dimension.
    pub fn needs_n(&self) -> bool {
        use ClassifierFamily::*;
        matches!(self, Alternating | PSL | PSU | PSp | OmegaPlus | OmegaMinus | B | C | D | TwistedD)
    }

    pub fn needs_q(&self) -> bool {
        !matches!(self, ClassifierFamily::Alternating | ClassifierFamily::Sporadic(_))
    }

    /// Every non-sporadic family, in a fixed order.
    pub fn lie_families() -> Vec<ClassifierFamily> {
        use ClassifierFamily::*;
        vec![
            PSL, PSU, PSp, OmegaPlus, OmegaMinus, B, C, D, TwistedD, E6, E7, E8, TwistedE6, F4, TwistedF4, G2,
            TwistedG2, Triality, TwistedB2,
        ]
    }
}

impl fmt::Display for ClassifierFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassifierFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use ClassifierFamily::*;
        let key = s.trim().to_ascii_uppercase().replace(['_', ' '], "");
        Ok(match key.as_str() {
            "A" | "ALT" | "ALTERNATING" | "AN" => Alternating,
            "PSL" | "L" | "LINEAR" => PSL,
            "PSU" | "U" | "UNITARY" => PSU,
            "PSP" | "S" | "SYMPLECTIC" => PSp,
            "OMEGA+" | "OMEGAPLUS" | "O+" => OmegaPlus,
            "OMEGA-" | "OMEGAMINUS" | "O-" => OmegaMinus,
            "B" => B,
            "C" => C,
            "D" => D,
            "2D" => TwistedD,
            "E6" => E6,
            "E7" => E7,
            "E8" => E8,
            "2E6" => TwistedE6,
            "F4" => F4,
            "2F4" => TwistedF4,
            "G2" => G2,
            "2G2" => TwistedG2,
            "3D4" => Triality,
            "2B2" | "SZ" | "SUZUKI" => TwistedB2,
            _ => Sporadic(sporadic::lookup(s.trim())?.name),
        })
    }
}

impl Serialize for ClassifierFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ClassifierFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A simple group and an odd prime `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifierQuery {
    pub family: ClassifierFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub p: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalWitness {
    Qdp,
    TildeQdp,
    TildeQd3Minus,
    /// `3^2:(2^2 . SL2(3))` in `He`.
    HeType,
    None,
}

impl MinimalWitness {
    pub fn label(self, p: u64) -> String {
        match self {
            MinimalWitness::Qdp => format!("Qd({p})"),
            MinimalWitness::TildeQdp => format!("~Qd({p})"),
            MinimalWitness::TildeQd3Minus => "~Qd-(3)".into(),
            MinimalWitness::HeType => "3^2:(2^2.SL2(3))".into(),
            MinimalWitness::None => "none".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifierVerdict {
    pub sylow_abelian: bool,
    pub involves_qdp: bool,
    pub p_stable: bool,
    pub minimal_witness: MinimalWitness,
    pub rationale: &'static str,
    /// The query sits on a bound whose strictness is ambiguous in the source tables.
    pub boundary: bool,
}

/// A validated query, reduced to one of three shapes.
#[derive(Debug, Clone)]
enum Normalized {
    Alternating { n: usize },
    Sporadic(&'static Sporadic),
    Lie { family: ClassifierFamily, n: usize, q: u64, ell: u64 },
}

fn bad<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::bad(msg))
}

impl ClassifierQuery {
    pub fn new(family: ClassifierFamily, n: Option<usize>, q: Option<u64>, p: u64) -> ClassifierQuery {
        ClassifierQuery { family, n, q, p }
    }

    fn normalize(&self) -> Result<Normalized> {
        use ClassifierFamily::*;
        let p = self.p;
        if p == 2 || !is_prime(p) {
            return bad(format!("p = {p} must be an odd prime"));
        }
        match &self.family {
            Alternating => {
                let n = self.n.ok_or_else(|| Error::bad("alternating groups need n"))?;
                if n < 5 {
                    return bad("alternating groups need n >= 5");
                }
                return Ok(Normalized::Alternating { n });
            }
            Sporadic(name) => return Ok(Normalized::Sporadic(sporadic::lookup(name)?)),
            _ => {}
        }
        let q = self.q.ok_or_else(|| Error::bad(format!("{} needs q", self.family)))?;
        let (ell, f) = prime_power(q).ok_or_else(|| Error::bad(format!("q = {q} is not a prime power")))?;
        let n = if self.family.needs_n() {
            self.n.ok_or_else(|| Error::bad(format!("{} needs n", self.family)))?
        } else {
            0
        };
        let odd_power = |r: u64| ell == r && f % 2 == 1;
        let (family, n) = match &self.family {
            PSL => {
                if n < 2 || (n == 2 && q < 4) {
                    return bad("PSL_n(q) needs n >= 3, or n = 2 and q >= 4");
                }
                (PSL, n)
            }
            PSU => {
                if n < 3 || (n == 3 && q == 2) {
                    return bad("PSU_n(q) needs n >= 3, and q > 2 when n = 3");
                }
                (PSU, n)
            }
            PSp => {
                if n < 4 || n % 2 == 1 {
                    return bad("PSp_n(q) needs even n >= 4");
                }
                if n == 4 && q == 2 {
                    return bad("PSp_4(2) is not simple");
                }
                (C, n / 2)
            }
            OmegaPlus | OmegaMinus => {
                if n < 8 || n % 2 == 1 {
                    return bad("Omega±_n(q) needs even n >= 8");
                }
                (if self.family == OmegaPlus { D } else { TwistedD }, n / 2)
            }
            B => {
                if n < 2 || (n == 2 && q == 2) {
                    return bad("B_n(q) needs n >= 2, and q > 2 when n = 2");
                }
                if n >= 3 && ell == 2 {
                    return bad("B_n(q) with n >= 3 needs q odd; use C_n for even q");
                }
                (B, n)
            }
            C => {
                if n < 2 || (n == 2 && q == 2) {
                    return bad("C_n(q) needs n >= 2, and q > 2 when n = 2");
                }
                (C, n)
            }
            D | TwistedD => {
                if n < 4 {
                    return bad("D_n(q) and 2D_n(q) need n >= 4");
                }
                (self.family.clone(), n)
            }
            G2 => {
                if q == 2 {
                    return bad("G2(2) is not simple");
                }
                (G2, 0)
            }
            TwistedB2 => {
                if !odd_power(2) || q == 2 {
                    return bad("2B2(q) needs q = 2^(2m+1) > 2");
                }
                (TwistedB2, 0)
            }
            TwistedG2 => {
                if !odd_power(3) || q == 3 {
                    return bad("2G2(q) needs q = 3^(2m+1) > 3");
                }
                (TwistedG2, 0)
            }
            TwistedF4 => {
                if !odd_power(2) {
                    return bad("2F4(q) needs q = 2^(2m+1)");
                }
                (TwistedF4, 0)
            }
            fam => (fam.clone(), 0),
        };
        Ok(Normalized::Lie { family, n, q, ell })
    }

    /// The exact group order.
    pub fn group_order(&self) -> Result<BigUint> {
        Ok(match self.normalize()? {
            Normalized::Alternating { n } => alternating_order(n as u64),
            Normalized::Sporadic(s) => s.order_value(),
            Normalized::Lie { family, n, q, .. } => shape_of(&family, n, q)?.evaluate(q),
        })
    }

    pub fn sylow_exponent(&self) -> Result<u32> {
        Ok(p_adic_valuation(&self.group_order()?, self.p))
    }

    pub fn to_json(&self) -> Value {
        json!({ "family": self.family.name(), "n": self.n, "q": self.q, "p": self.p })
    }
}

/// The order shape of the simple group; `n` is the rank for `B`, `C`, `D`, `2D`.
fn shape_of(family: &ClassifierFamily, n: usize, q: u64) -> Result<OrderShape> {
    use ClassifierFamily as F;
    let of = match family {
        F::PSL => OrderFamily::PSL,
        F::PSU => OrderFamily::PSU,
        F::B => OrderFamily::B,
        F::C => OrderFamily::C,
        F::D => OrderFamily::D,
        F::TwistedD => OrderFamily::TwistedD,
        F::E6 => OrderFamily::E6,
        F::E7 => OrderFamily::E7,
        F::E8 => OrderFamily::E8,
        F::TwistedE6 => OrderFamily::TwistedE6,
        F::F4 => OrderFamily::F4,
        F::TwistedF4 => OrderFamily::TwistedF4,
        F::G2 => OrderFamily::G2,
        F::TwistedG2 => OrderFamily::Ree,
        F::Triality => OrderFamily::Triality,
        F::TwistedB2 => OrderFamily::Suzuki,
        other => return bad(format!("no order shape for {other}")),
    };
    order_shape(of, n, q)
}

/// Exponent `d` of the Weyl-group part `|P_W| = p^d` for an exceptional group in
/// non-defining characteristic.
pub fn exceptional_weyl_exponent(query: &ClassifierQuery) -> Result<Option<i32>> {
    use ClassifierFamily as F;
    match query.normalize()? {
        Normalized::Lie { family, n, q, ell } if ell != query.p => match family {
            F::E6 | F::E7 | F::E8 | F::TwistedE6 | F::F4 | F::TwistedF4 | F::G2 | F::Triality | F::TwistedB2 => {
                Ok(Some(weyl_part_exponent(&shape_of(&family, n, q)?, q, query.p)?))
            }
            _ => Ok(None),
        },
        _ => Ok(None),
    }
}

/// The table rule for non-defining characteristic. Returns `(abelian, boundary)`.
fn lie_abelian_rule(family: &ClassifierFamily, n: usize, q: u64, p: u64) -> Result<(bool, bool)> {
    use ClassifierFamily as F;
    let e = e_p(q, p)? as usize;
    let ep = e * p as usize;
    let divides = |m: u64| m.is_multiple_of(p);
    let nine_divides = |m: u64| m.is_multiple_of(9);
    Ok(match family {
        F::PSL => {
            if p == 3 && n == 3 && e == 1 {
                (!nine_divides(q - 1), false)
            } else {
                (n < ep, false)
            }
        }
        F::PSU => {
            if p == 3 && n == 3 && e == 2 {
                (!nine_divides(q + 1), false)
            } else if e % 2 == 1 {
                (n < 2 * ep, n == 2 * ep)
            } else if e.is_multiple_of(4) {
                (n < ep, n == ep)
            } else {
                (2 * n < ep, 2 * n == ep)
            }
        }
        F::B => {
            if e % 2 == 1 {
                (n < ep, n == ep)
            } else {
                (2 * n < ep, 2 * n == ep)
            }
        }
        F::C => {
            if e % 2 == 1 {
                (n < ep, n == ep)
            } else {
                (2 * n < ep, 2 * n == ep)
            }
        }
        F::D => {
            if e % 2 == 1 {
                (n < ep, n == ep)
            } else {
                (2 * n <= ep, 2 * n == ep)
            }
        }
        F::TwistedD => {
            if e % 2 == 1 {
                (n <= ep, n == ep)
            } else {
                (2 * n < ep, 2 * n == ep)
            }
        }
        F::E6 => (p > 5 || (p == 5 && !divides(q - 1)), false),
        F::TwistedE6 => (p > 5 || (p == 5 && !divides(q + 1)), false),
        F::E7 => (p > 7 || ((p == 5 || p == 7) && !divides(q * q - 1)), false),
        F::E8 => (p > 7 || (p == 7 && !divides(q * q - 1)), false),
        F::G2 | F::Triality | F::F4 | F::TwistedF4 => (p > 3, false),
        // `|2B2(q)|` is prime to 3, and Abelian for `p > 3`.
        F::TwistedB2 => (true, false),
        other => return bad(format!("{other} is not reduced to a table family")),
    })
}

/// Whether the Sylow `p`-subgroups of the queried group are Abelian.
pub fn sylow_abelian_verdict(query: &ClassifierQuery) -> Result<bool> {
    Ok(abelian_with_boundary(query)?.0)
}

fn abelian_with_boundary(query: &ClassifierQuery) -> Result<(bool, bool)> {
    let p = query.p;
    match query.normalize()? {
        Normalized::Alternating { n } => Ok(((n as u64) < p * p, false)),
        Normalized::Sporadic(s) => Ok((s.sylow_abelian(p), false)),
        Normalized::Lie { family, n, q, ell } => {
            if ell == p {
                Ok((family == ClassifierFamily::PSL && n == 2, false))
            } else {
                lie_abelian_rule(&family, n, q, p)
            }
        }
    }
}

/// Involvement of `Qd(p)`, `p`-stability and the smallest witness subgroup.
pub fn qdp_verdict(query: &ClassifierQuery) -> Result<ClassifierVerdict> {
    use ClassifierFamily as F;
    use MinimalWitness as W;
    let p = query.p;
    let (abelian, boundary) = abelian_with_boundary(query)?;
    let verdict = |witness: W, rationale: &'static str| {
        let involves = witness != W::None;
        ClassifierVerdict {
            sylow_abelian: abelian,
            involves_qdp: involves,
            p_stable: !involves,
            minimal_witness: witness,
            rationale,
            boundary,
        }
    };
    let norm = query.normalize()?;
    if let Normalized::Sporadic(s) = norm {
        return Ok(if s.he_type(p) {
            verdict(W::HeType, "sporadic-he-type-subgroup")
        } else if s.contains_qdp(p) {
            verdict(W::Qdp, "sporadic-qdp-subgroup")
        } else {
            verdict(W::None, "sporadic-stable")
        });
    }
    if abelian {
        return Ok(verdict(W::None, "abelian-sylow"));
    }
    Ok(match norm {
        Normalized::Alternating { .. } => verdict(W::Qdp, "alternating-degree-at-least-p-squared"),
        Normalized::Sporadic(_) => unreachable!(),
        Normalized::Lie { family, n, ell, .. } if ell == p => match family {
            F::PSU if n == 3 => verdict(W::None, "defining-characteristic-rank-one-local"),
            F::TwistedG2 => verdict(W::None, "defining-characteristic-rank-one-local"),
            F::PSU => verdict(W::TildeQdp, "defining-characteristic-symplectic-four"),
            F::B | F::C if n == 2 => verdict(W::TildeQdp, "defining-characteristic-symplectic-four"),
            _ => verdict(W::Qdp, "defining-characteristic-psl3-subgroup"),
        },
        Normalized::Lie { family, n, q, .. } => {
            let e = e_p(q, p)?;
            match family {
                F::PSL if n as u64 == p && e == 1 => verdict(W::Qdp, "linear-degree-p"),
                F::PSU if n as u64 == p && e == 2 => verdict(W::Qdp, "unitary-degree-p"),
                F::Triality | F::F4 | F::TwistedF4 if p == 3 => verdict(W::Qdp, "exceptional-at-three"),
                F::G2 if p == 3 => {
                    if (q * q - 1) % 9 == 0 {
                        verdict(W::TildeQd3Minus, "g2-nine-divides-q-squared-minus-one")
                    } else {
                        verdict(W::None, "g2-no-qd3-section")
                    }
                }
                _ => verdict(W::TildeQdp, "tilde-qdp-subgroup"),
            }
        }
    })
}

impl ClassifierVerdict {
    pub fn to_json(&self, query: &ClassifierQuery) -> Value {
        json!({
            "query": query.to_json(),
            "sylow_abelian": self.sylow_abelian,
            "involves_qdp": self.involves_qdp,
            "p_stable": self.p_stable,
            "minimal_witness": self.minimal_witness,
            "minimal_witness_label": self.minimal_witness.label(query.p),
            "rationale": self.rationale,
            "boundary": self.boundary,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ClassifierFamily as F;

    fn query(f: F, n: Option<usize>, q: Option<u64>, p: u64) -> ClassifierQuery {
        ClassifierQuery::new(f, n, q, p)
    }

    #[test]
    fn table_examples() {
        assert!(sylow_abelian_verdict(&query(F::PSL, Some(3), Some(4), 3)).unwrap());
        assert!(!sylow_abelian_verdict(&query(F::PSU, Some(3), Some(8), 3)).unwrap());
        assert!(sylow_abelian_verdict(&query(F::TwistedB2, None, Some(8), 5)).unwrap());
        assert!(sylow_abelian_verdict(&query(F::PSU, Some(3), Some(5), 3)).unwrap());
    }

    #[test]
    fn involvement_examples() {
        let a9 = qdp_verdict(&query(F::Alternating, Some(9), None, 3)).unwrap();
        assert!(a9.involves_qdp && a9.minimal_witness == MinimalWitness::Qdp);
        let a8 = qdp_verdict(&query(F::Alternating, Some(8), None, 3)).unwrap();
        assert!(a8.sylow_abelian && a8.p_stable);
        let he = qdp_verdict(&query("He".parse().unwrap(), None, None, 3)).unwrap();
        assert_eq!(he.minimal_witness, MinimalWitness::HeType);
        assert!(!he.p_stable);
        let m = qdp_verdict(&query("M".parse().unwrap(), None, None, 13)).unwrap();
        assert_eq!(m.minimal_witness, MinimalWitness::Qdp);
        let psl33 = qdp_verdict(&query(F::PSL, Some(3), Some(3), 3)).unwrap();
        assert!(psl33.involves_qdp && !psl33.sylow_abelian);
        let psu33 = qdp_verdict(&query(F::PSU, Some(3), Some(3), 3)).unwrap();
        assert!(!psu33.involves_qdp && !psu33.sylow_abelian);
        let g2 = qdp_verdict(&query(F::G2, None, Some(4), 3)).unwrap();
        assert_eq!(g2.minimal_witness, MinimalWitness::None);
        assert!(!g2.sylow_abelian);
        let g2 = qdp_verdict(&query(F::G2, None, Some(8), 3)).unwrap();
        assert_eq!(g2.minimal_witness, MinimalWitness::TildeQd3Minus);
    }

    #[test]
    fn non_abelian_psl3_at_three_involves_qd3() {
        let v = qdp_verdict(&query(F::PSL, Some(3), Some(19), 3)).unwrap();
        assert!(!v.sylow_abelian && v.minimal_witness == MinimalWitness::Qdp);
    }

    #[test]
    fn small_sylow_is_abelian() {
        for (f, n, q) in [(F::PSL, Some(2), Some(7u64)), (F::PSL, Some(3), Some(2)), (F::E8, None, Some(2))] {
            for p in [3u64, 5, 7, 11, 13, 17] {
                let qy = query(f.clone(), n, q, p);
                if qy.sylow_exponent().unwrap() <= 2 {
                    assert!(sylow_abelian_verdict(&qy).unwrap(), "{qy:?}");
                }
            }
        }
    }

    #[test]
    fn exceptional_rules_agree_with_weyl_part() {
        let fams = [F::E6, F::E7, F::E8, F::TwistedE6, F::F4, F::TwistedF4, F::G2, F::Triality, F::TwistedB2];
        for f in fams {
            for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19, 27, 29, 31, 32, 43, 49, 128] {
                for p in [3u64, 5, 7, 11, 13, 19, 31, 37] {
                    let qy = query(f.clone(), None, Some(q), p);
                    if q % p == 0 || qy.normalize().is_err() {
                        continue;
                    }
                    let d = exceptional_weyl_exponent(&qy).unwrap().unwrap();
                    assert_eq!(sylow_abelian_verdict(&qy).unwrap(), d == 0, "{qy:?}");
                }
            }
        }
    }

    #[test]
    fn classical_rules_agree_with_weyl_part_away_from_three() {
        for (f, ns) in [
            (F::PSL, 2..12),
            (F::PSU, 3..12),
            (F::B, 2..10),
            (F::C, 2..10),
            (F::D, 4..12),
            (F::TwistedD, 4..12),
        ] {
            for n in ns {
                for q in [3u64, 4, 5, 7, 8, 9, 11, 13, 16, 19] {
                    for p in [5u64, 7, 11, 13] {
                        let qy = query(f.clone(), Some(n), Some(q), p);
                        if q % p == 0 || qy.normalize().is_err() {
                            continue;
                        }
                        let Normalized::Lie { family, n, q, .. } = qy.normalize().unwrap() else { unreachable!() };
                        let d = weyl_part_exponent(&shape_of(&family, n, q).unwrap(), q, p).unwrap();
                        assert_eq!(sylow_abelian_verdict(&qy).unwrap(), d == 0, "{qy:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn parsing_and_validation() {
        assert_eq!("2f4".parse::<F>().unwrap(), F::TwistedF4);
        assert_eq!("Omega-".parse::<F>().unwrap(), F::OmegaMinus);
        assert_eq!("Co1".parse::<F>().unwrap(), F::Sporadic("Co1"));
        assert!("Foo".parse::<F>().is_err());
        assert!(qdp_verdict(&query(F::PSL, Some(3), Some(6), 3)).is_err());
        assert!(qdp_verdict(&query(F::PSL, Some(3), Some(4), 2)).is_err());
        assert!(qdp_verdict(&query(F::TwistedB2, None, Some(4), 5)).is_err());
        assert!(qdp_verdict(&query(F::Alternating, Some(4), None, 3)).is_err());
    }

    #[test]
    fn omega_is_an_alias_for_d() {
        let a = qdp_verdict(&query(F::OmegaPlus, Some(10), Some(4), 5)).unwrap();
        let b = qdp_verdict(&query(F::D, Some(5), Some(4), 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tits_group_order() {
        let t = query(F::TwistedF4, None, Some(2), 5);
        assert_eq!(t.group_order().unwrap(), BigUint::from(17971200u64));
    }
}
