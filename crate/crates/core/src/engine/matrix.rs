//! Square matrices over `F_q` acting on row vectors (`v -> vM`).

use rustc_hash::FxHashMap;

use super::field::FqField;
use super::perm::Perm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl FqMatrix {
    pub fn new(n: usize, entries: Vec<u32>, field: &FqField) -> Result<FqMatrix> {
        if entries.len() != n * n {
            return Err(Error::bad(format!("expected {} entries for a {n}x{n} matrix, got {}", n * n, entries.len())));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= field.q()) {
            return Err(Error::bad(format!("entry {bad} is not an element of F_{}", field.q())));
        }
        Ok(FqMatrix { n, entries })
    }

    pub fn identity(n: usize) -> FqMatrix {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, c: u32) -> FqMatrix {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = c;
        }
        FqMatrix { n, entries }
    }

    pub fn diagonal(diag: &[u32]) -> FqMatrix {
        let n = diag.len();
        let mut entries = vec![0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        FqMatrix { n, entries }
    }

    pub fn from_rows(rows: &[&[u32]], field: &FqField) -> Result<FqMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::bad("matrix rows have unequal length"));
        }
        Self::new(n, rows.concat(), field)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &FqMatrix, f: &FqField) -> FqMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                entries[i * n + j] = acc;
            }
        }
        FqMatrix { n, entries }
    }

    pub fn scale(&self, c: u32, f: &FqField) -> FqMatrix {
        FqMatrix { n: self.n, entries: self.entries.iter().map(|&x| f.mul(c, x)).collect() }
    }

    pub fn transpose(&self) -> FqMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        FqMatrix { n, entries }
    }

    /// Applies `f` to every entry.
    pub fn map_entries(&self, g: impl Fn(u32) -> u32) -> FqMatrix {
        FqMatrix { n: self.n, entries: self.entries.iter().map(|&x| g(x)).collect() }
    }

    pub fn det(&self, f: &FqField) -> u32 {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self, f: &FqField) -> Option<FqMatrix> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = FqMatrix::identity(n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                b.swap(pivot * n + j, col * n + j);
            }
            let pinv = f.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                b[col * n + j] = f.mul(b[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                }
            }
        }
        Some(FqMatrix { n, entries: b })
    }

    pub fn pow(&self, mut e: u64, f: &FqField) -> FqMatrix {
        let mut acc = FqMatrix::identity(self.n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == FqMatrix::identity(self.n)
    }

    /// `v * self` for a row vector `v`.
    pub fn apply_row(&self, v: &[u32], f: &FqField) -> Vec<u32> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).fold(0, |acc, k| f.add(acc, f.mul(v[k], self.get(k, j)))))
            .collect()
    }
}

/// Index of a vector with the first coordinate most significant.
pub fn vector_index(v: &[u32], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

pub fn vector_from_index(mut idx: usize, n: usize, q: u32) -> Vec<u32> {
    let mut v = vec![0; n];
    for i in (0..n).rev() {
        v[i] = (idx % q as usize) as u32;
        idx /= q as usize;
    }
    v
}

/// Permutation of all `q^n` vectors induced by `m`.
pub fn matrix_to_perm(m: &FqMatrix, f: &FqField) -> Perm {
    let n = m.dim();
    let q = f.q();
    let total = (q as usize).pow(n as u32);
    let images = (0..total)
        .map(|i| vector_index(&m.apply_row(&vector_from_index(i, n, q), f), q) as u16)
        .collect();
    Perm::from_raw(images)
}

/// Points of the union of the orbits of the standard basis vectors, in discovery order.
///
/// The action on this set is faithful because a matrix is determined by the images of the basis.
pub fn basis_orbit_points(mats: &[FqMatrix], f: &FqField, cap: usize) -> Result<Vec<Vec<u32>>> {
    let n = mats.first().map(|m| m.dim()).unwrap_or(0);
    let mut seen: FxHashMap<Vec<u32>, usize> = FxHashMap::default();
    let mut points: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if seen.contains_key(&e) {
            continue;
        }
        seen.insert(e.clone(), points.len());
        points.push(e);
        let mut head = points.len() - 1;
        while head < points.len() {
            let v = points[head].clone();
            head += 1;
            for m in mats {
                let w = m.apply_row(&v, f);
                if !seen.contains_key(&w) {
                    if points.len() >= cap {
                        return Err(Error::DegreeCapExceeded { degree: points.len() + 1, cap });
                    }
                    seen.insert(w.clone(), points.len());
                    points.push(w);
                }
            }
        }
    }
    Ok(points)
}

/// Permutation of `points` induced by `m`; the points must form an invariant set.
pub fn matrix_to_perm_on(m: &FqMatrix, f: &FqField, points: &[Vec<u32>], index: &FxHashMap<Vec<u32>, usize>) -> Option<Perm> {
    let images = points
        .iter()
        .map(|v| index.get(&m.apply_row(v, f)).map(|&i| i as u16))
        .collect::<Option<Vec<u16>>>()?;
    Some(Perm::from_raw(images))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let f = FqField::new(7).unwrap();
        let m = FqMatrix::from_rows(&[&[1, 2, 0], &[3, 1, 4], &[0, 5, 6]], &f).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&inv, &f).is_identity());
        let d = m.det(&f);
        assert_eq!(f.mul(d, inv.det(&f)), 1);
        let singular = FqMatrix::from_rows(&[&[1, 2], &[2, 4]], &f).unwrap();
        assert_eq!(singular.det(&f), 0);
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn det_is_multiplicative_over_f9() {
        let f = FqField::new(9).unwrap();
        let a = FqMatrix::from_rows(&[&[1, 3], &[5, 7]], &f).unwrap();
        let b = FqMatrix::from_rows(&[&[2, 8], &[4, 1]], &f).unwrap();
        assert_eq!(a.mul(&b, &f).det(&f), f.mul(a.det(&f), b.det(&f)));
    }

    #[test]
    fn perm_respects_products() {
        let f = FqField::new(3).unwrap();
        let a = FqMatrix::from_rows(&[&[1, 1], &[0, 1]], &f).unwrap();
        let b = FqMatrix::from_rows(&[&[0, 2], &[1, 0]], &f).unwrap();
        let pa = matrix_to_perm(&a, &f);
        let pb = matrix_to_perm(&b, &f);
        assert_eq!(matrix_to_perm(&a.mul(&b, &f), &f), pa.mul(&pb));
        assert_eq!(pa.apply(0), 0);
    }

    #[test]
    fn vector_index_round_trip() {
        for i in 0..125 {
            assert_eq!(vector_index(&vector_from_index(i, 3, 5), 5), i);
        }
    }
}
