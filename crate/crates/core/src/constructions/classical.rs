//! Classical groups as permutation groups on vectors or projective points.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::engine::field::FqField;
use crate::engine::matrix::{vector_from_index, FqMatrix};
use crate::engine::spec::{GroupSpec, MatrixAction};
use crate::engine::Perm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ClassicalFamily {
    GL,
    SL,
    PGL,
    PSL,
    GU,
    SU,
    PSU,
    #[serde(alias = "Sp")]
    Sp,
    #[serde(alias = "PSp")]
    PSp,
}

impl FromStr for ClassicalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "GL" => ClassicalFamily::GL,
            "SL" => ClassicalFamily::SL,
            "PGL" => ClassicalFamily::PGL,
            "PSL" | "L" => ClassicalFamily::PSL,
            "GU" => ClassicalFamily::GU,
            "SU" => ClassicalFamily::SU,
            "PSU" | "U" => ClassicalFamily::PSU,
            "SP" => ClassicalFamily::Sp,
            "PSP" | "S" => ClassicalFamily::PSp,
            _ => return Err(Error::bad(format!("unknown classical family {s:?}"))),
        })
    }
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassicalFamily::GL => "GL",
            ClassicalFamily::SL => "SL",
            ClassicalFamily::PGL => "PGL",
            ClassicalFamily::PSL => "PSL",
            ClassicalFamily::GU => "GU",
            ClassicalFamily::SU => "SU",
            ClassicalFamily::PSU => "PSU",
            ClassicalFamily::Sp => "Sp",
            ClassicalFamily::PSp => "PSp",
        };
        f.write_str(s)
    }
}

fn additive_basis(f: &FqField) -> Vec<u32> {
    (0..f.degree()).map(|k| f.pow(f.generator(), k as u64)).collect()
}

fn elementary(n: usize, i: usize, j: usize, c: u32) -> FqMatrix {
    let mut m = FqMatrix::identity(n);
    m.set(i, j, c);
    m
}

fn sl_generators(n: usize, f: &FqField) -> Vec<FqMatrix> {
    let mut out = Vec::new();
    for c in additive_basis(f) {
        for i in 0..n - 1 {
            out.push(elementary(n, i, i + 1, c));
            out.push(elementary(n, i + 1, i, c));
        }
    }
    out
}

/// Gram matrix of the symplectic form pairing coordinate `i` with `n - 1 - i`.
fn symplectic_gram(n: usize, f: &FqField) -> FqMatrix {
    let mut j = FqMatrix::new(n, vec![0; n * n], f).expect("zero matrix");
    for i in 0..n {
        let v = if i < n / 2 { f.one() } else { f.neg(f.one()) };
        j.set(i, n - 1 - i, v);
    }
    j
}

/// The transvection `x -> x + c B(x, v) v`.
#[allow(clippy::needless_range_loop)]
fn symplectic_transvection(v: &[u32], c: u32, gram: &FqMatrix, f: &FqField) -> FqMatrix {
    let n = v.len();
    let jv: Vec<u32> = (0..n).map(|i| (0..n).fold(0, |acc, k| f.add(acc, f.mul(gram.get(i, k), v[k])))).collect();
    let mut m = FqMatrix::identity(n);
    for i in 0..n {
        for k in 0..n {
            m.set(i, k, f.add(m.get(i, k), f.mul(c, f.mul(jv[i], v[k]))));
        }
    }
    m
}

fn sp_generators(n: usize, f: &FqField) -> Vec<FqMatrix> {
    let gram = symplectic_gram(n, f);
    let mut vs: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        vs.push(v);
        for j in i + 1..n {
            let mut w = vec![0; n];
            w[i] = 1;
            w[j] = 1;
            vs.push(w);
        }
    }
    let mut out = Vec::new();
    for c in additive_basis(f) {
        for v in &vs {
            out.push(symplectic_transvection(v, c, &gram, f));
        }
    }
    out
}

/// `SU3(q)` over `F_{q^2}` for the Hermitian form with antidiagonal Gram matrix: the upper
/// unitriangular root group together with the Weyl element `-J`.
fn su3_generators(q: u32, f: &FqField) -> Vec<FqMatrix> {
    let bar = |x: u32| f.pow(x, q as u64);
    let mut out = Vec::new();
    let mut push_root = |a: u32, b: u32| {
        let c = f.neg(bar(a));
        out.push(FqMatrix::new(3, vec![1, a, b, 0, 1, c, 0, 0, 1], f).expect("valid entries"));
    };
    for a in additive_basis(f) {
        let target = f.neg(f.mul(a, bar(a)));
        let b = f.elements().find(|&b| f.add(b, bar(b)) == target).expect("trace is onto");
        push_root(a, b);
    }
    for b in f.elements().filter(|&b| b != 0 && f.add(b, bar(b)) == 0) {
        push_root(0, b);
    }
    let m1 = f.neg(f.one());
    out.push(FqMatrix::new(3, vec![0, 0, m1, 0, m1, 0, m1, 0, 0], f).expect("valid entries"));
    out
}

fn projective_points(n: usize, f: &FqField, hermitian_q: Option<u32>) -> Vec<Vec<u32>> {
    let q = f.q();
    let total = (q as usize).pow(n as u32);
    (1..total)
        .map(|i| vector_from_index(i, n, q))
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .filter(|v| match hermitian_q {
            None => true,
            Some(q0) => (0..n).fold(0, |acc, i| f.add(acc, f.mul(v[i], f.pow(v[n - 1 - i], q0 as u64)))) == 0,
        })
        .collect()
}

fn normalize(v: &mut [u32], f: &FqField) {
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = f.inv(lead).expect("nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
}

fn projective_spec(name: String, mats: &[FqMatrix], n: usize, f: &FqField, hermitian_q: Option<u32>, caps: Caps) -> Result<GroupSpec> {
    let q = f.q() as usize;
    let count = (q.pow(n as u32) - 1) / (q - 1);
    if count > caps.degree {
        return Err(Error::DegreeCapExceeded { degree: count, cap: caps.degree });
    }
    let points = projective_points(n, f, hermitian_q);
    let index: FxHashMap<&[u32], usize> = points.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let generators = mats
        .iter()
        .map(|m| {
            let images = points
                .iter()
                .map(|v| {
                    let mut w = m.apply_row(v, f);
                    normalize(&mut w, f);
                    index[w.as_slice()]
                })
                .collect();
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::Perm { name, degree: points.len(), generators })
}

/// The classical group `family(n, q)`; unitary families are defined over `F_{q^2}` and need `n = 3`.
pub fn classical_spec(family: ClassicalFamily, n: usize, q: u64, caps: Caps) -> Result<GroupSpec> {
    use ClassicalFamily::*;
    if n < 2 {
        return Err(Error::bad(format!("dimension {n} is below 2")));
    }
    let unitary = matches!(family, GU | SU | PSU);
    if unitary && n != 3 {
        return Err(Error::bad("unitary groups are constructed for n = 3 only"));
    }
    if matches!(family, Sp | PSp) && !n.is_multiple_of(2) {
        return Err(Error::bad("symplectic groups need even dimension"));
    }
    let field_size = if unitary { q.checked_mul(q) } else { Some(q) };
    let field_size = field_size
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::bad(format!("field size for q = {q} is too large")))?;
    let f = FqField::new(field_size)?;
    let name = format!("{family}{n}({q})");
    let mats = match family {
        GL | PGL => {
            let mut m = sl_generators(n, &f);
            let mut d = vec![f.one(); n];
            d[0] = f.generator();
            m.push(FqMatrix::diagonal(&d));
            m
        }
        SL | PSL => sl_generators(n, &f),
        Sp | PSp => sp_generators(n, &f),
        SU | PSU => su3_generators(q as u32, &f),
        GU => {
            let mut m = su3_generators(q as u32, &f);
            let w = f.generator();
            let wbar_inv = f.inv(f.pow(w, q)).expect("nonzero");
            m.push(FqMatrix::diagonal(&[w, f.one(), wbar_inv]));
            m
        }
    };
    match family {
        GL | SL | Sp | GU | SU => {
            let degree = (field_size as usize).checked_pow(n as u32).unwrap_or(usize::MAX);
            if degree > caps.degree {
                return Err(Error::DegreeCapExceeded { degree, cap: caps.degree });
            }
            Ok(GroupSpec::Matrix { name, field: field_size, dim: n, action: MatrixAction::Vectors, generators: mats })
        }
        PGL | PSL | PSp => projective_spec(name, &mats, n, &f, None, caps),
        PSU => projective_spec(name, &mats, n, &f, Some(q as u32), caps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(family: ClassicalFamily, n: usize, q: u64) -> usize {
        let caps = Caps::default();
        classical_spec(family, n, q, caps).unwrap().build(caps).unwrap().order()
    }

    #[test]
    fn linear_orders() {
        assert_eq!(order(ClassicalFamily::SL, 2, 3), 24);
        assert_eq!(order(ClassicalFamily::GL, 2, 3), 48);
        assert_eq!(order(ClassicalFamily::PGL, 2, 5), 120);
        assert_eq!(order(ClassicalFamily::SL, 2, 4), 60);
        assert_eq!(order(ClassicalFamily::PSL, 3, 3), 5616);
        assert_eq!(order(ClassicalFamily::PSL, 3, 4), 20160);
        assert_eq!(order(ClassicalFamily::GL, 2, 9), 80 * 72);
    }

    #[test]
    fn symplectic_orders() {
        assert_eq!(order(ClassicalFamily::Sp, 2, 5), 120);
        assert_eq!(order(ClassicalFamily::Sp, 4, 3), 51840);
        assert_eq!(order(ClassicalFamily::PSp, 4, 3), 25920);
    }

    #[test]
    fn unitary_orders() {
        assert_eq!(order(ClassicalFamily::GU, 3, 2), 648);
        assert_eq!(order(ClassicalFamily::SU, 3, 2), 216);
        assert_eq!(order(ClassicalFamily::PSU, 3, 3), 6048);
    }

    #[test]
    fn bad_parameters() {
        let caps = Caps::default();
        assert!(matches!(classical_spec(ClassicalFamily::GU, 4, 2, caps), Err(Error::BadParameters(_))));
        assert!(matches!(classical_spec(ClassicalFamily::Sp, 3, 3, caps), Err(Error::BadParameters(_))));
        assert!(matches!(classical_spec(ClassicalFamily::SL, 2, 6, caps), Err(Error::BadParameters(_))));
        assert!(matches!(classical_spec(ClassicalFamily::SL, 3, 19, caps), Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn family_names_parse() {
        for fam in ["gl", "SL", "PGL", "psl", "GU", "SU", "PSU", "Sp", "PSp"] {
            let parsed: ClassicalFamily = fam.parse().unwrap();
            assert_eq!(parsed.to_string().to_ascii_uppercase(), fam.to_ascii_uppercase());
        }
    }
}
