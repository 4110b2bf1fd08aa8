//! Exact orders of classical, exceptional, alternating and sporadic groups.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::engine::field::{is_prime, prime_power};
use crate::error::{Error, Result};

/// `q^k - 1` (`plus = false`) or `q^k + 1` (`plus = true`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub k: u32,
    pub plus: bool,
}

const fn minus(k: u32) -> Factor {
    Factor { k, plus: false }
}

const fn plus(k: u32) -> Factor {
    Factor { k, plus: true }
}

/// Matrix groups and simple groups whose orders are given in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderFamily {
    GL,
    SL,
    PGL,
    PSL,
    GU,
    SU,
    PGU,
    PSU,
    /// `Sp_n(q)`, `n` even.
    Sp,
    PSp,
    /// Full orthogonal group of odd dimension `n = 2m + 1`.
    O,
    /// Full orthogonal group of plus type, even dimension `n`.
    OPlus,
    OMinus,
    /// `B_m(q) = Ω_(2m+1)(q)`, with `n = m`.
    B,
    /// `C_m(q) = PSp_(2m)(q)`, with `n = m`.
    C,
    /// `D_m(q) = PΩ+_(2m)(q)`, with `n = m`.
    D,
    #[serde(rename = "2D")]
    TwistedD,
    E6,
    E7,
    E8,
    #[serde(rename = "2E6")]
    TwistedE6,
    F4,
    G2,
    #[serde(rename = "3D4")]
    Triality,
    #[serde(rename = "2B2")]
    Suzuki,
    #[serde(rename = "2G2")]
    Ree,
    #[serde(rename = "2F4")]
    TwistedF4,
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

pub fn eval_factor(q: u64, f: Factor) -> BigUint {
    let v = big(q).pow(f.k);
    if f.plus {
        v + 1u32
    } else {
        v - 1u32
    }
}

fn product(q: u64, fs: &[Factor]) -> BigUint {
    fs.iter().fold(BigUint::one(), |acc, &f| acc * eval_factor(q, f))
}

fn gcd_u(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `|G| = c q^N prod / (denominators d)`.
#[derive(Debug, Clone)]
pub struct OrderShape {
    pub q_exponent: u64,
    pub factors: Vec<Factor>,
    /// Factors dividing the product exactly.
    pub denominators: Vec<Factor>,
    pub multiplier: u64,
    pub divisor: u64,
}

impl OrderShape {
    pub fn evaluate(&self, q: u64) -> BigUint {
        let num = big(q).pow(self.q_exponent as u32) * product(q, &self.factors) * big(self.multiplier);
        let (quot, rem) = num.div_rem(&(product(q, &self.denominators) * big(self.divisor)));
        debug_assert!(rem.is_zero());
        quot
    }
}

fn check_q(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::bad(format!("{q} is not a prime power")))
}

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::bad(msg.into()))
    }
}

fn odd_power_of(q: u64, r: u64) -> bool {
    matches!(prime_power(q), Some((base, e)) if base == r && e % 2 == 1)
}

/// The shape of `|G|` for the given family, dimension or rank `n`, and field size `q`.
pub fn order_shape(family: OrderFamily, n: usize, q: u64) -> Result<OrderShape> {
    use OrderFamily::*;
    check_q(q)?;
    let n32 = n as u32;
    let nn = n as u64;
    let shape = |q_exponent: u64, factors: Vec<Factor>, multiplier: u64, divisor: u64| OrderShape {
        q_exponent,
        factors,
        denominators: Vec::new(),
        multiplier,
        divisor,
    };
    let gl = |m: u32| (1..=m).map(minus).collect::<Vec<_>>();
    let gu = |m: u32| (1..=m).map(|i| if i % 2 == 0 { minus(i) } else { plus(i) }).collect::<Vec<_>>();
    let sp = |m: u32| (1..=m).map(|i| minus(2 * i)).collect::<Vec<_>>();
    let tri = |m: u64| m * (m - 1) / 2;
    Ok(match family {
        GL | SL | PGL | PSL => {
            need(n >= 1, "dimension must be positive")?;
            let base = gl(n32);
            match family {
                GL => shape(tri(nn), base, 1, 1),
                SL | PGL => shape(tri(nn), base, 1, q - 1),
                _ => shape(tri(nn), base, 1, (q - 1) * gcd_u(nn, q - 1)),
            }
        }
        GU | SU | PGU | PSU => {
            need(n >= 1, "dimension must be positive")?;
            let base = gu(n32);
            match family {
                GU => shape(tri(nn), base, 1, 1),
                SU | PGU => shape(tri(nn), base, 1, q + 1),
                _ => shape(tri(nn), base, 1, (q + 1) * gcd_u(nn, q + 1)),
            }
        }
        Sp | PSp => {
            need(n >= 2 && n.is_multiple_of(2), "symplectic dimension must be even and positive")?;
            let m = nn / 2;
            let d = if family == PSp { gcd_u(2, q - 1) } else { 1 };
            shape(m * m, sp(m as u32), 1, d)
        }
        C => {
            need(n >= 1, "rank must be positive")?;
            shape(nn * nn, sp(n32), 1, gcd_u(2, q - 1))
        }
        O => {
            need(n % 2 == 1, "odd orthogonal dimension must be odd")?;
            let m = nn / 2;
            shape(m * m, sp(m as u32), 2, 1)
        }
        B => {
            need(n >= 1, "rank must be positive")?;
            shape(nn * nn, sp(n32), 1, gcd_u(2, q - 1))
        }
        OPlus | OMinus => {
            need(n >= 2 && n.is_multiple_of(2), "even orthogonal dimension must be even")?;
            let m = (nn / 2) as u32;
            let mut fs = sp(m - 1);
            fs.push(Factor { k: m, plus: family == OMinus });
            shape((m as u64) * (m as u64 - 1), fs, 2, 1)
        }
        D | TwistedD => {
            need(n >= 2, "rank must be at least 2")?;
            let twisted = family == TwistedD;
            let mut fs = sp(n32 - 1);
            fs.push(Factor { k: n32, plus: twisted });
            // Only q^n mod 4 matters for the divisor.
            let qn = (0..n32).fold(1, |acc, _| acc * (q % 4) % 4);
            let d = if twisted { gcd_u(4, qn + 1) } else { gcd_u(4, qn + 3) };
            shape(nn * (nn - 1), fs, 1, d)
        }
        E6 => shape(36, vec![minus(2), minus(5), minus(6), minus(8), minus(9), minus(12)], 1, gcd_u(3, q - 1)),
        TwistedE6 => shape(36, vec![minus(2), plus(5), minus(6), minus(8), plus(9), minus(12)], 1, gcd_u(3, q + 1)),
        E7 => shape(
            63,
            [2, 6, 8, 10, 12, 14, 18].into_iter().map(minus).collect(),
            1,
            gcd_u(2, q - 1),
        ),
        E8 => shape(120, [2, 8, 12, 14, 18, 20, 24, 30].into_iter().map(minus).collect(), 1, 1),
        F4 => shape(24, vec![minus(2), minus(6), minus(8), minus(12)], 1, 1),
        G2 => shape(6, vec![minus(2), minus(6)], 1, 1),
        Triality => OrderShape {
            q_exponent: 12,
            factors: vec![minus(2), minus(6), minus(12)],
            denominators: vec![minus(4)],
            multiplier: 1,
            divisor: 1,
        },
        Suzuki => {
            need(odd_power_of(q, 2) && q > 2, "Suzuki groups need q = 2^(2m+1) > 2")?;
            shape(2, vec![plus(2), minus(1)], 1, 1)
        }
        Ree => {
            need(odd_power_of(q, 3) && q > 3, "Ree groups need q = 3^(2m+1) > 3")?;
            shape(3, vec![plus(3), minus(1)], 1, 1)
        }
        TwistedF4 => {
            need(odd_power_of(q, 2), "twisted F4 needs q = 2^(2m+1)")?;
            let d = if q == 2 { 2 } else { 1 };
            shape(12, vec![plus(6), minus(4), plus(3), minus(1)], 1, d)
        }
    })
}

pub fn group_order(family: OrderFamily, n: usize, q: u64) -> Result<BigUint> {
    let s = order_shape(family, n, q)?;
    Ok(s.evaluate(q))
}

pub fn alternating_order(n: u64) -> BigUint {
    let f = (1..=n).fold(BigUint::one(), |acc, i| acc * big(i));
    if n >= 2 {
        f / 2u32
    } else {
        f
    }
}

/// Exponent of `p` in `x`.
pub fn p_adic_valuation(x: &BigUint, p: u64) -> u32 {
    if x.is_zero() {
        return 0;
    }
    let bp = big(p);
    let mut v = x.clone();
    let mut k = 0;
    loop {
        let (quot, rem) = v.div_rem(&bp);
        if !rem.is_zero() {
            return k;
        }
        v = quot;
        k += 1;
    }
}

pub fn p_part(x: &BigUint, p: u64) -> BigUint {
    big(p).pow(p_adic_valuation(x, p))
}

/// Least `i >= 1` with `p | q^i - 1`.
pub fn e_p(q: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::bad(format!("{p} is not a prime")));
    }
    if q.is_multiple_of(p) {
        return Err(Error::bad(format!("p = {p} divides q = {q}")));
    }
    let r = q % p;
    let mut x = r;
    let mut i = 1;
    while x != 1 {
        x = x * r % p;
        i += 1;
    }
    Ok(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn orthogonal_divisor_for_large_q_power() {
        for (family, q, n) in [(OrderFamily::D, 121u64, 11usize), (OrderFamily::TwistedD, 125, 13), (OrderFamily::D, 3, 4)] {
            let shape = order_shape(family, n, q).unwrap();
            let qn = BigUint::from(q).pow(n as u32);
            let shifted = if family == OrderFamily::TwistedD { qn + 1u32 } else { qn - 1u32 };
            assert_eq!(BigUint::from(shape.divisor), shifted.gcd(&BigUint::from(4u32)));
        }
    }
}
