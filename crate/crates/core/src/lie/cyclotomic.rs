//! Cyclotomic factorizations of the `q'`-part of group orders.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::orders::{e_p, OrderShape};
use crate::error::Result;

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(mut n: u32) -> i32 {
    let mut m = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            m = -m;
        }
        d += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// `Φ_m(q)` via `prod_(d | m) (q^d - 1)^μ(m/d)`.
pub fn cyclotomic_value(m: u32, q: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for d in divisors(m) {
        let v = BigUint::from(q).pow(d) - 1u32;
        match mobius(m / d) {
            1 => num *= v,
            -1 => den *= v,
            _ => {}
        }
    }
    let (quot, rem) = num.div_rem(&den);
    debug_assert_eq!(rem, BigUint::from(0u32));
    quot
}

/// Exponents `r_m` with `prod factors / prod denominators = prod Φ_m^(r_m)`.
pub fn cyclotomic_exponents(shape: &OrderShape) -> BTreeMap<u32, i32> {
    let mut r: BTreeMap<u32, i32> = BTreeMap::new();
    let mut add = |k: u32, plus: bool, sign: i32| {
        let ds = if plus {
            divisors(2 * k).into_iter().filter(|d| !k.is_multiple_of(*d)).collect()
        } else {
            divisors(k)
        };
        for d in ds {
            *r.entry(d).or_default() += sign;
        }
    };
    for f in &shape.factors {
        add(f.k, f.plus, 1);
    }
    for f in &shape.denominators {
        add(f.k, f.plus, -1);
    }
    r.retain(|_, v| *v != 0);
    r
}

/// `d` with `|P_W| = p^d`: the sum of `r_m` over `m = p^k m_0`, `k > 0`, where `m_0 = e_p(q)`.
pub fn weyl_part_exponent(shape: &OrderShape, q: u64, p: u64) -> Result<i32> {
    let m0 = e_p(q, p)? as u32;
    let r = cyclotomic_exponents(shape);
    let mut d = 0;
    let mut m = m0 as u64 * p;
    let max = r.keys().copied().max().unwrap_or(0) as u64;
    while m <= max {
        d += r.get(&(m as u32)).copied().unwrap_or(0);
        m *= p;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::orders::{order_shape, OrderFamily};

    #[test]
    fn small_cyclotomic_values() {
        assert_eq!(cyclotomic_value(1, 5), BigUint::from(4u32));
        assert_eq!(cyclotomic_value(3, 2), BigUint::from(7u32));
        assert_eq!(cyclotomic_value(12, 2), BigUint::from(13u32));
        assert_eq!(cyclotomic_value(6, 3), BigUint::from(7u32));
    }

    #[test]
    fn twisted_e6_matches_the_listed_product() {
        let shape = order_shape(OrderFamily::TwistedE6, 0, 2).unwrap();
        let r = cyclotomic_exponents(&shape);
        let expected: BTreeMap<u32, i32> =
            [(1, 4), (2, 6), (3, 2), (4, 2), (6, 3), (8, 1), (10, 1), (12, 1), (18, 1)].into_iter().collect();
        assert_eq!(r, expected);
    }

    #[test]
    fn products_evaluate_to_the_closed_forms() {
        for fam in [
            OrderFamily::E6,
            OrderFamily::E7,
            OrderFamily::E8,
            OrderFamily::TwistedE6,
            OrderFamily::F4,
            OrderFamily::G2,
            OrderFamily::Triality,
        ] {
            for q in [2u64, 3, 4, 5, 7] {
                let shape = order_shape(fam, 0, q).unwrap();
                let via_phi = cyclotomic_exponents(&shape)
                    .iter()
                    .fold(BigUint::one(), |acc, (&m, &e)| acc * cyclotomic_value(m, q).pow(e as u32));
                let direct = shape.factors.iter().fold(BigUint::one(), |acc, &f| acc * crate::lie::orders::eval_factor(q, f))
                    / shape.denominators.iter().fold(BigUint::one(), |acc, &f| acc * crate::lie::orders::eval_factor(q, f));
                assert_eq!(via_phi, direct, "{fam:?} at q = {q}");
            }
        }
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i32> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
