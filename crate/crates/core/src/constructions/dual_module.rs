//! `W* x| SL2(p)` for the module `W` of homogeneous polynomials of degree `p` in two
//! variables, and its factor group by the annihilator of `V = <X^p, Y^p>`.
//!
//! The full group has order `p^(p+1) |SL2(p)|`, which is beyond the order cap for
//! `p >= 5`, so it is handled as pairs `(D, phi)` acting by `x -> x D + phi`.

use rustc_hash::FxHashSet;
use serde::Serialize;

use super::witness::{affine_spec, qdp_spec, sl2_generators};
use crate::caps::Caps;
use crate::engine::field::{is_prime, FqField};
use crate::engine::matrix::{vector_from_index, FqMatrix};
use crate::engine::{is_isomorphic, Group};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct DualModuleReport {
    pub p: u64,
    pub module_dim: usize,
    pub acting_group_order: usize,
    pub ambient_order: String,
    pub v_invariant: bool,
    /// Dimensions of the distinct cyclic submodules of `W`.
    pub cyclic_submodule_dims: Vec<usize>,
    pub v_is_only_proper_submodule: bool,
    pub annihilator_invariant: bool,
    pub projection_is_homomorphism: bool,
    pub factor_order: usize,
    pub factor_isomorphic_to_qdp: bool,
}

fn binomial_mod(n: u64, k: u64, f: &FqField) -> u32 {
    let mut num = f.one();
    for i in 0..k {
        num = f.mul(num, f.from_int((n - i) as i64));
        num = f.div(num, f.from_int((i + 1) as i64)).unwrap_or(0);
    }
    num
}

/// Coefficients of `(aX + bY)^m` in the monomials `X^(m-j) Y^j`.
fn linear_power(a: u32, b: u32, m: u64, f: &FqField) -> Vec<u32> {
    (0..=m)
        .map(|j| {
            if j == 0 || j == m {
                let base = if j == 0 { a } else { b };
                return f.pow(base, m);
            }
            let c = binomial_mod(m, j, f);
            f.mul(c, f.mul(f.pow(a, m - j), f.pow(b, j)))
        })
        .collect()
}

fn poly_mul(x: &[u32], y: &[u32], f: &FqField) -> Vec<u32> {
    let mut out = vec![0; x.len() + y.len() - 1];
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(a, b));
        }
    }
    out
}

/// Matrix of the substitution `X -> aX + bY`, `Y -> cX + dY` on the monomials `X^(p-i) Y^i`.
fn substitution_matrix(g: &FqMatrix, p: u64, f: &FqField) -> FqMatrix {
    let n = (p + 1) as usize;
    let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    let mut m = FqMatrix::identity(n);
    for i in 0..n as u64 {
        let row = poly_mul(&linear_power(a, b, p - i, f), &linear_power(c, d, i, f), f);
        for (j, &v) in row.iter().enumerate() {
            m.set(i as usize, j, v);
        }
    }
    m
}

fn rank_basis(rows: &[Vec<u32>], f: &FqField) -> Vec<Vec<u32>> {
    let mut basis: Vec<Vec<u32>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (b, &piv) in basis.iter().zip(&pivots) {
            if v[piv] != 0 {
                let c = v[piv];
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = f.inv(v[piv]).expect("nonzero");
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
            for (b, &bp) in basis.iter_mut().zip(&pivots) {
                let _ = bp;
                if b[piv] != 0 {
                    let c = b[piv];
                    for (x, &y) in b.iter_mut().zip(&v) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            basis.push(v);
            pivots.push(piv);
        }
    }
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    order.into_iter().map(|i| basis[i].clone()).collect()
}

/// Reduced echelon basis of the submodule generated by `v`.
fn cyclic_submodule(v: &[u32], gens: &[FqMatrix], f: &FqField) -> Vec<Vec<u32>> {
    let mut basis = rank_basis(&[v.to_vec()], f);
    loop {
        let mut rows = basis.clone();
        for b in &basis {
            for g in gens {
                rows.push(g.apply_row(b, f));
            }
        }
        let next = rank_basis(&rows, f);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

fn matrix_closure(gens: &[FqMatrix], f: &FqField, limit: usize) -> Result<Vec<FqMatrix>> {
    let n = gens.first().map(|g| g.dim()).unwrap_or(0);
    let mut seen: FxHashSet<FqMatrix> = FxHashSet::default();
    let mut list = vec![FqMatrix::identity(n)];
    seen.insert(list[0].clone());
    let mut head = 0;
    while head < list.len() {
        let x = list[head].clone();
        head += 1;
        for g in gens {
            let y = x.mul(g, f);
            if seen.insert(y.clone()) {
                if list.len() >= limit {
                    return Err(Error::OrderCapExceeded { cap: limit });
                }
                list.push(y);
            }
        }
    }
    Ok(list)
}

/// Builds `W`, checks the submodule structure, forms the dual and its factor by `V`'s
/// annihilator, and compares the resulting affine group with `Qd(p)`.
pub fn dual_module_factor(p: u64, caps: Caps) -> Result<DualModuleReport> {
    if p < 5 || !is_prime(p) {
        return Err(Error::bad(format!("p = {p} must be a prime of at least 5")));
    }
    let f = FqField::new(p as u32)?;
    let n = (p + 1) as usize;
    let sl2 = sl2_generators(&f);
    let on_w: Vec<FqMatrix> = sl2.iter().map(|g| substitution_matrix(g, p, &f)).collect();
    let h = matrix_closure(&on_w, &f, caps.order)?;

    let mut e0 = vec![0; n];
    e0[0] = 1;
    let mut ep = vec![0; n];
    ep[n - 1] = 1;
    let v_basis = rank_basis(&[e0.clone(), ep.clone()], &f);
    let in_v = |w: &[u32]| w[1..n - 1].iter().all(|&x| x == 0);
    let v_invariant = on_w.iter().all(|g| v_basis.iter().all(|b| in_v(&g.apply_row(b, &f))));

    let total = (p as usize).pow(n as u32);
    let mut seen: FxHashSet<Vec<Vec<u32>>> = FxHashSet::default();
    for i in 1..total {
        let v = vector_from_index(i, n, p as u32);
        seen.insert(cyclic_submodule(&v, &on_w, &f));
    }
    let mut dims: Vec<usize> = seen.iter().map(Vec::len).collect();
    dims.sort_unstable();
    let v_is_only_proper_submodule = seen.iter().all(|s| s.len() == n || *s == v_basis);

    let dual: Vec<FqMatrix> = on_w.iter().map(|g| g.inverse(&f).expect("invertible").transpose()).collect();
    let annihilator_invariant = dual.iter().all(|d| (1..n - 1).all(|k| d.get(k, 0) == 0 && d.get(k, n - 1) == 0));
    let reduce = |d: &FqMatrix| -> FqMatrix {
        FqMatrix::new(2, vec![d.get(0, 0), d.get(0, n - 1), d.get(n - 1, 0), d.get(n - 1, n - 1)], &f).expect("2 x 2")
    };
    let reduce_vec = |phi: &[u32]| vec![phi[0], phi[n - 1]];

    let dual_all: Vec<FqMatrix> = h.iter().map(|g| g.inverse(&f).expect("invertible").transpose()).collect();
    let basis: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let projection_is_homomorphism = annihilator_invariant
        && dual_all.iter().all(|d| {
            dual.iter().all(|e| {
                basis.iter().zip(basis.iter().rev()).all(|(phi, psi)| {
                    let prod_lin = d.mul(e, &f);
                    let prod_tr: Vec<u32> = e.apply_row(phi, &f).iter().zip(psi).map(|(&a, &b)| f.add(a, b)).collect();
                    let lhs = (reduce(&prod_lin), reduce_vec(&prod_tr));
                    let re = reduce(e);
                    let rhs_tr: Vec<u32> =
                        re.apply_row(&reduce_vec(phi), &f).iter().zip(reduce_vec(psi)).map(|(&a, b)| f.add(a, b)).collect();
                    lhs == (reduce(d).mul(&re, &f), rhs_tr)
                })
            })
        });

    let factor_linear: Vec<FqMatrix> = dual.iter().map(reduce).collect();
    let factor = affine_spec(p, 2, &factor_linear)?.build(caps)?;
    let qdp: Group = qdp_spec(p)?.build(caps)?;
    let factor_isomorphic_to_qdp = is_isomorphic(&factor, &qdp)?.is_some();
    let ambient = num_bigint::BigUint::from(p).pow(n as u32) * num_bigint::BigUint::from(h.len());

    Ok(DualModuleReport {
        p,
        module_dim: n,
        acting_group_order: h.len(),
        ambient_order: ambient.to_string(),
        v_invariant,
        cyclic_submodule_dims: dims,
        v_is_only_proper_submodule,
        annihilator_invariant,
        projection_is_homomorphism,
        factor_order: factor.order(),
        factor_isomorphic_to_qdp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_on_v() {
        let f = FqField::new(5).unwrap();
        let g = FqMatrix::from_rows(&[&[2, 3], &[1, 2]], &f).unwrap();
        let m = substitution_matrix(&g, 5, &f);
        let row0: Vec<u32> = (0..6).map(|j| m.get(0, j)).collect();
        assert_eq!(row0, vec![2, 0, 0, 0, 0, 3]);
        let row5: Vec<u32> = (0..6).map(|j| m.get(5, j)).collect();
        assert_eq!(row5, vec![1, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn echelon_basis() {
        let f = FqField::new(5).unwrap();
        let b = rank_basis(&[vec![2, 4, 0], vec![1, 2, 0], vec![0, 0, 3]], &f);
        assert_eq!(b, vec![vec![1, 2, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn rejects_small_primes() {
        assert!(matches!(dual_module_factor(3, Caps::default()), Err(Error::BadParameters(_))));
    }
}
