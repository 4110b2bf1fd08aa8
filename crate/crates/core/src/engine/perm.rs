//! Permutations of `{0, .., n-1}` acting on the right.
//!
//! `images[i]` is the image of point `i`, and `a.mul(&b)` applies `a` first.

use std::fmt;

use crate::caps::MAX_DEGREE;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree).map(|i| i as u16).collect() }
    }

    /// Checks that `images` is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::bad(format!("degree {n} is larger than {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        for (i, &x) in images.iter().enumerate() {
            if x >= n {
                return Err(Error::bad(format!("image {x} of point {i} is out of range 0..{n}")));
            }
            if seen[x] {
                return Err(Error::bad(format!("point {x} is hit twice, not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_iter().map(|x| x as u16).collect() })
    }

    pub(crate) fn from_raw(images: Vec<u16>) -> Perm {
        Perm { images }
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` or an empty string is the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Perm> {
        if degree > MAX_DEGREE {
            return Err(Error::bad(format!("degree {degree} is larger than {MAX_DEGREE}")));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::bad(format!("expected '(' in cycle string {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::bad(format!("unclosed cycle in {text:?}")))?;
            let body = &open[..close];
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::bad(format!("bad point {s:?} in cycle string {text:?}")))
                })
                .collect::<Result<_>>()?;
            for &x in &points {
                if x >= degree {
                    return Err(Error::bad(format!("point {x} is out of range for degree {degree}")));
                }
                if touched[x] {
                    return Err(Error::bad(format!("point {x} appears twice in {text:?}")));
                }
                touched[x] = true;
            }
            for (k, &x) in points.iter().enumerate() {
                images[x] = points[(k + 1) % points.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { images: inv }
    }

    /// `other^-1 * self * other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().mul(self).mul(other)
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycles_round_trip() {
        let p = Perm::from_cycles(5, "(0 1 2)(3 4)").unwrap();
        assert_eq!(p.to_cycle_string(), "(0 1 2)(3 4)");
        assert_eq!(p.order(), 6);
        assert!(!p.is_even());
        assert_eq!(Perm::from_cycles(3, "()").unwrap(), Perm::identity(3));
    }

    #[test]
    fn right_action_convention() {
        let a = Perm::from_cycles(3, "(0 1)").unwrap();
        let b = Perm::from_cycles(3, "(1 2)").unwrap();
        // 0 -> 1 under a, then 1 -> 2 under b.
        assert_eq!(a.mul(&b).apply(0), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
        assert!(Perm::from_cycles(3, "(0 1 1)").is_err());
        assert!(Perm::from_cycles(3, "(0 5)").is_err());
        assert!(Perm::from_cycles(3, "(0 1").is_err());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn group_axioms(a in perm_strategy(7), b in perm_strategy(7), c in perm_strategy(7)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.pow(a.order()), Perm::identity(7));
            prop_assert_eq!(a.mul(&b).is_even(), a.is_even() == b.is_even());
        }

        #[test]
        fn cycle_string_parses_back(a in perm_strategy(9)) {
            prop_assert_eq!(Perm::from_cycles(9, &a.to_cycle_string()).unwrap(), a);
        }
    }
}
