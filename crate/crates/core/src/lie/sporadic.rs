//! The 26 sporadic groups: orders and `Qd(p)` involvement.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

#[derive(Debug)]
pub struct Sporadic {
    pub name: &'static str,
    /// `(prime, exponent)` in `|G|`.
    pub order: &'static [(u64, u32)],
}

pub const SPORADIC: [Sporadic; 26] = [
    Sporadic { name: "M11", order: &[(2, 4), (3, 2), (5, 1), (11, 1)] },
    Sporadic { name: "M12", order: &[(2, 6), (3, 3), (5, 1), (11, 1)] },
    Sporadic { name: "J1", order: &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)] },
    Sporadic { name: "M22", order: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)] },
    Sporadic { name: "J2", order: &[(2, 7), (3, 3), (5, 2), (7, 1)] },
    Sporadic { name: "M23", order: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)] },
    Sporadic { name: "HS", order: &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)] },
    Sporadic { name: "J3", order: &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)] },
    Sporadic { name: "M24", order: &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)] },
    Sporadic { name: "McL", order: &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)] },
    Sporadic { name: "He", order: &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)] },
    Sporadic { name: "Ru", order: &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)] },
    Sporadic { name: "Suz", order: &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)] },
    Sporadic { name: "O'N", order: &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)] },
    Sporadic { name: "Co3", order: &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)] },
    Sporadic { name: "Co2", order: &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)] },
    Sporadic { name: "Fi22", order: &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)] },
    Sporadic { name: "HN", order: &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)] },
    Sporadic { name: "Ly", order: &[(2, 8), (3, 7), (5, 6), (7, 1), (11, 1), (31, 1), (37, 1), (67, 1)] },
    Sporadic { name: "Th", order: &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)] },
    Sporadic { name: "Fi23", order: &[(2, 18), (3, 13), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (23, 1)] },
    Sporadic { name: "Co1", order: &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)] },
    Sporadic {
        name: "J4",
        order: &[(2, 21), (3, 3), (5, 1), (7, 1), (11, 3), (23, 1), (29, 1), (31, 1), (37, 1), (43, 1)],
    },
    Sporadic {
        name: "Fi24'",
        order: &[(2, 21), (3, 16), (5, 2), (7, 3), (11, 1), (13, 1), (17, 1), (23, 1), (29, 1)],
    },
    Sporadic {
        name: "B",
        order: &[(2, 41), (3, 13), (5, 6), (7, 2), (11, 1), (13, 1), (17, 1), (19, 1), (23, 1), (31, 1), (47, 1)],
    },
    Sporadic {
        name: "M",
        order: &[
            (2, 46),
            (3, 20),
            (5, 9),
            (7, 6),
            (11, 2),
            (13, 3),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (41, 1),
            (47, 1),
            (59, 1),
            (71, 1),
        ],
    },
];

/// `(group, p)` with a subgroup isomorphic to `Qd(p)`.
const QDP_SUBGROUP: &[(&str, u64)] = &[
    ("M12", 3),
    ("M24", 3),
    ("J4", 3),
    ("Co1", 3),
    ("Co2", 3),
    ("Co3", 3),
    ("Fi22", 3),
    ("Fi23", 3),
    ("Fi24'", 3),
    ("McL", 3),
    ("Ru", 3),
    ("Suz", 3),
    ("HN", 3),
    ("Ly", 3),
    ("Th", 3),
    ("B", 3),
    ("M", 3),
    ("Co1", 5),
    ("Ru", 5),
    ("HN", 5),
    ("Ly", 5),
    ("Th", 5),
    ("B", 5),
    ("M", 5),
    ("Fi24'", 7),
    ("He", 7),
    ("O'N", 7),
    ("M", 7),
    ("M", 13),
];

/// Sylow `p`-subgroups of order at least `p^3` that are nevertheless Abelian.
const LARGE_ABELIAN_SYLOW: &[(&str, u64)] = &[("O'N", 3)];

pub fn lookup(name: &str) -> Result<&'static Sporadic> {
    let norm = |s: &str| s.to_ascii_lowercase().replace(['\'', '_', ' '], "");
    let mut key = norm(name);
    if key == "sz" {
        key = "suz".into();
    }
    SPORADIC
        .iter()
        .find(|s| norm(s.name) == key)
        .ok_or_else(|| Error::bad(format!("unknown sporadic group {name}")))
}

impl Sporadic {
    pub fn order_value(&self) -> BigUint {
        self.order.iter().fold(BigUint::one(), |acc, &(r, e)| acc * BigUint::from(r).pow(e))
    }

    pub fn p_exponent(&self, p: u64) -> u32 {
        self.order.iter().find(|&&(r, _)| r == p).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn sylow_abelian(&self, p: u64) -> bool {
        self.p_exponent(p) <= 2 || LARGE_ABELIAN_SYLOW.contains(&(self.name, p))
    }

    pub fn contains_qdp(&self, p: u64) -> bool {
        QDP_SUBGROUP.contains(&(self.name, p))
    }

    /// `He` at `p = 3`: a non-split `2^2 . Qd(3)` rather than `Qd(3)` itself.
    pub fn he_type(&self, p: u64) -> bool {
        self.name == "He" && p == 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_decimal_values() {
        let known = [
            ("M11", "7920"),
            ("M12", "95040"),
            ("J1", "175560"),
            ("M22", "443520"),
            ("J2", "604800"),
            ("M23", "10200960"),
            ("HS", "44352000"),
            ("J3", "50232960"),
            ("M24", "244823040"),
            ("McL", "898128000"),
            ("He", "4030387200"),
            ("Ru", "145926144000"),
            ("Suz", "448345497600"),
            ("O'N", "460815505920"),
            ("Co3", "495766656000"),
            ("Co2", "42305421312000"),
            ("Fi22", "64561751654400"),
            ("HN", "273030912000000"),
            ("Ly", "51765179004000000"),
            ("Th", "90745943887872000"),
            ("Fi23", "4089470473293004800"),
            ("Co1", "4157776806543360000"),
            ("J4", "86775571046077562880"),
            ("Fi24'", "1255205709190661721292800"),
            ("B", "4154781481226426191177580544000000"),
            ("M", "808017424794512875886459904961710757005754368000000000"),
        ];
        for (name, value) in known {
            assert_eq!(lookup(name).unwrap().order_value().to_string(), value, "{name}");
        }
    }

    #[test]
    fn relevant_primes_are_those_with_cube_dividing_the_order() {
        let large: Vec<(&str, u64)> = SPORADIC
            .iter()
            .flat_map(|s| [3u64, 5, 7, 11, 13].into_iter().filter(|&p| s.p_exponent(p) >= 3).map(move |p| (s.name, p)))
            .collect();
        for &(g, p) in QDP_SUBGROUP {
            assert!(large.contains(&(g, p)), "{g} at {p}");
        }
        let count = |p: u64| large.iter().filter(|e| e.1 == p).count();
        assert_eq!((count(3), count(5), count(7), count(11), count(13)), (21, 11, 4, 1, 1));
    }

    #[test]
    fn aliases() {
        assert_eq!(lookup("Sz").unwrap().name, "Suz");
        assert_eq!(lookup("ON").unwrap().name, "O'N");
        assert_eq!(lookup("Fi24").unwrap().name, "Fi24'");
        assert!(lookup("M13").is_err());
    }
}
