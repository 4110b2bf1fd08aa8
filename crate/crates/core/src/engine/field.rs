//! Finite fields `F_q`, `q = p^s`.
//!
//! An element is stored as the integer whose base-`p` digits are its
//! coordinates in the polynomial basis, so the prime subfield is `0..p`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqField {
    p: u32,
    s: u32,
    q: u32,
    /// Coefficients `c_0..c_{s-1}` of the monic modulus `x^s + c_{s-1}x^{s-1} + .. + c_0`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, s)` with `q = p^s`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut m = q;
    let mut s = 0;
    while m.is_multiple_of(p) {
        m /= p;
        s += 1;
    }
    (m == 1).then_some((p, s))
}

impl FqField {
    pub fn new(q: u32) -> Result<FqField> {
        let (p, s) = prime_power(q as u64)
            .ok_or_else(|| Error::bad(format!("{q} is not a prime power")))?;
        if q > 1 << 16 {
            return Err(Error::bad(format!("field size {q} is too large")));
        }
        let p = p as u32;
        if s == 1 {
            let mut f = FqField { p, s, q, modulus: vec![], exp: vec![], log: vec![] };
            let g = (1..q).find(|&g| f.prime_order(g) == q - 1).unwrap_or(1);
            f.build_tables(|x| (x as u64 * g as u64 % q as u64) as u32);
            return Ok(f);
        }
        // Least primitive monic modulus in the base-p integer order of its low coefficients.
        for code in 0..q {
            let modulus: Vec<u32> = (0..s).map(|i| code / p.pow(i) % p).collect();
            if modulus[0] == 0 {
                continue;
            }
            let m = modulus.clone();
            let mut f = FqField { p, s, q, modulus, exp: vec![], log: vec![] };
            if f.build_tables(|x| f_mul_by_x(x, p, s, &m)) {
                return Ok(f);
            }
        }
        Err(Error::bad(format!("no primitive polynomial found for q = {q}")))
    }

    fn prime_order(&self, g: u32) -> u32 {
        if g == 0 {
            return 0;
        }
        let mut x = g as u64;
        let mut k = 1;
        while x != 1 {
            x = x * g as u64 % self.q as u64;
            k += 1;
        }
        k
    }

    /// Fills exp/log from a generator step; false if the step does not have order `q - 1`.
    fn build_tables(&mut self, step: impl Fn(u32) -> u32) -> bool {
        let n = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![u32::MAX; self.q as usize];
        let mut x = 1u32;
        for k in 0..n {
            if log[x as usize] != u32::MAX {
                return false;
            }
            log[x as usize] = k as u32;
            exp.push(x);
            x = step(x);
        }
        if x != 1 {
            return false;
        }
        self.exp = exp;
        self.log = log;
        true
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The fixed generator of the multiplicative group.
    pub fn generator(&self) -> u32 {
        if self.q == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.s == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.s {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.s == 1 {
            return (self.p - a) % self.p;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.s {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a as usize];
        Some(n / num_integer::gcd(n, l))
    }

    /// Least element (as an integer code) of multiplicative order `k`.
    pub fn least_of_order(&self, k: u32) -> Option<u32> {
        (1..self.q).find(|&a| self.order(a) == Some(k))
    }

    /// The image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

/// Multiplies the element with digit code `x` by the polynomial variable.
fn f_mul_by_x(x: u32, p: u32, s: u32, modulus: &[u32]) -> u32 {
    let mut digits: Vec<u32> = (0..s).map(|i| x / p.pow(i) % p).collect();
    let top = digits[(s - 1) as usize];
    for i in (1..s as usize).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    for i in 0..s as usize {
        digits[i] = (digits[i] + (p - modulus[i] % p) * top) % p;
    }
    digits.iter().enumerate().map(|(i, &d)| d * p.pow(i as u32)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FqField) {
        let q = f.q();
        for a in 0..q {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [0, 1, q - 1, q / 2] {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            check_axioms(&FqField::new(q).unwrap());
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert!(FqField::new(6).is_err());
    }

    #[test]
    fn least_roots_of_unity() {
        let f13 = FqField::new(13).unwrap();
        assert_eq!(f13.least_of_order(3), Some(3));
        let f19 = FqField::new(19).unwrap();
        let theta = f19.least_of_order(9).unwrap();
        assert_eq!(f19.order(theta), Some(9));
        assert_eq!(f19.order(f19.pow(theta, 3)), Some(3));
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = FqField::new(25).unwrap();
        for a in 0..5 {
            assert_eq!(f.frobenius(a), a);
        }
        let fixed = (0..25).filter(|&a| f.frobenius(a) == a).count();
        assert_eq!(fixed, 5);
    }
}
