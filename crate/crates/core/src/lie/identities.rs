//! Equalities between `p`-parts of classical group orders.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::orders::{e_p, group_order, p_adic_valuation, OrderFamily};
use crate::engine::field::{is_prime, prime_power};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `|GU_n(q)|_p` against `|GL_n(q^2)|_p` or `|GL_(n/2)(q^2)|_p`.
    UnitaryVsLinear,
    /// `|Sp_2n(q)|_p` against `|GL_n(q)|_p` or `|GL_2n(q)|_p`, and `|GU_(2n/e)(q^(e/2))|_p` when `e | 2n`.
    SymplecticVsLinear,
    /// `|O_(2n+1)(q)|_p` against `|GL_(2n+1)(q)|_p` or `|GL_n(q)|_p`.
    OddOrthogonalVsLinear,
    /// `|O±_2n(q)|_p` against `|O_(2n+1)(q)|_p` and `|O_(2n-1)(q)|_p`, for `n > 3`.
    EvenOrthogonalVsOdd,
    /// For `2n = e`: `p` divides `|GU_n(q)|` iff `n` is odd.
    UnitaryElementOfOrderP,
    /// `p` is prime to `(q^(ie) - 1)/(q^e - 1)` for `1 <= i < p`.
    QuotientCoprime,
    /// `gcd(q^m - 1, q^n - 1) = q^gcd(m, n) - 1`.
    GcdOfPowers,
    /// `p | q^n - 1` iff `e | n`.
    DivisibilityByOrder,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::UnitaryVsLinear,
        Identity::SymplecticVsLinear,
        Identity::OddOrthogonalVsLinear,
        Identity::EvenOrthogonalVsOdd,
        Identity::UnitaryElementOfOrderP,
        Identity::QuotientCoprime,
        Identity::GcdOfPowers,
        Identity::DivisibilityByOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::UnitaryVsLinear => "unitary-vs-linear",
            Identity::SymplecticVsLinear => "symplectic-vs-linear",
            Identity::OddOrthogonalVsLinear => "odd-orthogonal-vs-linear",
            Identity::EvenOrthogonalVsOdd => "even-orthogonal-vs-odd",
            Identity::UnitaryElementOfOrderP => "unitary-element-of-order-p",
            Identity::QuotientCoprime => "quotient-coprime",
            Identity::GcdOfPowers => "gcd-of-powers",
            Identity::DivisibilityByOrder => "divisibility-by-order",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityParams {
    pub n: usize,
    pub q: u64,
    pub p: u64,
    /// Second exponent for the gcd identity.
    #[serde(default)]
    pub m: usize,
}

fn vp(family: OrderFamily, n: usize, q: u64, p: u64) -> Result<u32> {
    Ok(p_adic_valuation(&group_order(family, n, q)?, p))
}

fn vp_gl(n: usize, q: u64, p: u64) -> Result<u32> {
    if n == 0 {
        return Ok(0);
    }
    vp(OrderFamily::GL, n, q, p)
}

fn pow(q: u64, k: usize) -> BigUint {
    BigUint::from(q).pow(k as u32)
}

/// Checks one instance of an identity by factoring both sides exactly.
///
/// Instances outside the range where the identity is stated are rejected with
/// `BadParameters`.
pub fn p_part_identity_check(identity: Identity, params: IdentityParams) -> Result<bool> {
    let IdentityParams { n, q, p, m } = params;
    if !is_prime(p) || p == 2 {
        return Err(Error::bad(format!("p = {p} must be an odd prime")));
    }
    if prime_power(q).is_none() {
        return Err(Error::bad(format!("q = {q} is not a prime power")));
    }
    if n == 0 {
        return Err(Error::bad("n must be positive"));
    }
    let e = e_p(q, p)? as usize;
    let q2 = q.checked_mul(q).ok_or_else(|| Error::bad("q^2 overflows"))?;
    Ok(match identity {
        Identity::UnitaryVsLinear => {
            let lhs = vp(OrderFamily::GU, n, q, p)?;
            if e % 4 == 2 {
                lhs == vp_gl(n, q2, p)?
            } else {
                lhs == vp_gl(n / 2, q2, p)?
            }
        }
        Identity::SymplecticVsLinear => {
            let lhs = vp(OrderFamily::Sp, 2 * n, q, p)?;
            if e % 2 == 1 {
                lhs == vp_gl(n, q, p)?
            } else {
                let mut ok = lhs == vp_gl(2 * n, q, p)?;
                if (2 * n) % e == 0 {
                    let qh = q.checked_pow((e / 2) as u32).ok_or_else(|| Error::bad("q^(e/2) overflows"))?;
                    ok &= lhs == vp(OrderFamily::GU, 2 * n / e, qh, p)?;
                }
                ok
            }
        }
        Identity::OddOrthogonalVsLinear => {
            let lhs = vp(OrderFamily::O, 2 * n + 1, q, p)?;
            if e.is_multiple_of(2) {
                lhs == vp_gl(2 * n + 1, q, p)?
            } else {
                lhs == vp_gl(n, q, p)?
            }
        }
        Identity::EvenOrthogonalVsOdd => {
            if n <= 3 {
                return Err(Error::bad("even orthogonal comparison needs n > 3"));
            }
            let upper = vp(OrderFamily::O, 2 * n + 1, q, p)?;
            let lower = vp(OrderFamily::O, 2 * n - 1, q, p)?;
            let mut ok = true;
            for (family, plus) in [(OrderFamily::OPlus, true), (OrderFamily::OMinus, false)] {
                let lhs = vp(family, 2 * n, q, p)?;
                ok &= lhs == upper || lhs == lower;
                let e_divides_2n = (2 * n) % e == 0;
                if !e_divides_2n {
                    ok &= lhs == upper && lhs == lower;
                }
                let stays = !e_divides_2n || (plus && n % e == 0) || (!plus && n % e != 0);
                ok &= (lhs == upper) == stays;
            }
            ok
        }
        Identity::UnitaryElementOfOrderP => {
            if 2 * n != e {
                return Err(Error::bad("needs 2n = e_p(q)"));
            }
            (vp(OrderFamily::GU, n, q, p)? >= 1) == (n % 2 == 1)
        }
        Identity::QuotientCoprime => {
            let base = pow(q, e) - 1u32;
            let bp = BigUint::from(p);
            (1..p as usize).all(|i| {
                let (quot, rem) = (pow(q, i * e) - 1u32).div_rem(&base);
                rem == BigUint::from(0u32) && (quot % &bp) != BigUint::from(0u32)
            })
        }
        Identity::GcdOfPowers => {
            if m == 0 {
                return Err(Error::bad("gcd identity needs m > 0"));
            }
            let g = (pow(q, m) - 1u32).gcd(&(pow(q, n) - 1u32));
            g == pow(q, m.gcd(&n)) - 1u32
        }
        Identity::DivisibilityByOrder => {
            let divides = (pow(q, n) - 1u32) % BigUint::from(p) == BigUint::from(0u32);
            divides == (n % e == 0)
        }
    })
}

/// One failing instance of a grid run.
#[derive(Debug, Clone, Serialize)]
pub struct GridFailure {
    pub identity: &'static str,
    pub params: IdentityParams,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridReport {
    pub checked: usize,
    pub failures: Vec<GridFailure>,
    pub e_p_checked: usize,
    pub e_p_failures: Vec<(u64, u64)>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.e_p_failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "identity_instances": self.checked,
            "identity_failures": self.failures,
            "e_p_instances": self.e_p_checked,
            "e_p_failures": self.e_p_failures,
        })
    }
}

/// `e_p(q) | p - 1`, `p | q^e - 1`, and `p` is prime to `q^i - 1` for `i < e`.
pub fn e_p_properties_hold(q: u64, p: u64) -> Result<bool> {
    let e = e_p(q, p)?;
    let bp = BigUint::from(p);
    let zero = BigUint::from(0u32);
    let divides = |i: u64| (pow(q, i as usize) - 1u32) % &bp == zero;
    Ok((p - 1).is_multiple_of(e) && divides(e) && (1..e).all(|i| !divides(i)))
}

/// Every identity over `n <= max_n`, prime powers `q <= max_q`, and the given odd primes,
/// plus the `e_p` properties over `p <= 37`, `q <= 128`.
pub fn run_grid(max_n: usize, max_q: u64, primes: &[u64]) -> Result<GridReport> {
    let mut checked = 0;
    let mut failures = Vec::new();
    let qs: Vec<u64> = (2..=max_q).filter(|&q| prime_power(q).is_some()).collect();
    for &p in primes {
        for &q in &qs {
            if q % p == 0 {
                continue;
            }
            let e = e_p(q, p)? as usize;
            for n in 1..=max_n {
                for identity in Identity::ALL {
                    let runs: Vec<IdentityParams> = match identity {
                        Identity::EvenOrthogonalVsOdd if n <= 3 => continue,
                        Identity::UnitaryElementOfOrderP if 2 * n != e => continue,
                        Identity::QuotientCoprime if n != 1 => continue,
                        Identity::GcdOfPowers => (1..=max_n).map(|m| IdentityParams { n, q, p, m }).collect(),
                        _ => vec![IdentityParams { n, q, p, m: 0 }],
                    };
                    for params in runs {
                        checked += 1;
                        if !p_part_identity_check(identity, params)? {
                            failures.push(GridFailure { identity: identity.name(), params });
                        }
                    }
                }
            }
        }
    }
    let mut e_p_checked = 0;
    let mut e_p_failures = Vec::new();
    for p in (3..=37u64).filter(|&p| is_prime(p)) {
        for q in (2..=128u64).filter(|&q| prime_power(q).is_some() && q % p != 0) {
            e_p_checked += 1;
            if !e_p_properties_hold(q, p)? {
                e_p_failures.push((q, p));
            }
        }
    }
    Ok(GridReport { checked, failures, e_p_checked, e_p_failures })
}
