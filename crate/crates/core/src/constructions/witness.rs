//! The semidirect products `V x| SL2(p)`, their central extensions by an
//! extraspecial group, and the small permutation groups used as test cases.

use crate::caps::Caps;
use crate::engine::field::{is_prime, FqField};
use crate::engine::matrix::FqMatrix;
use crate::engine::spec::{GroupSpec, MatrixAction};
use crate::engine::{coset_action, Group, Hom, Perm};
use crate::error::{Error, Result};

pub(crate) fn mat(f: &FqField, rows: &[&[i64]]) -> FqMatrix {
    let n = rows.len();
    let entries = rows.iter().flat_map(|r| r.iter().map(|&x| f.from_int(x))).collect();
    FqMatrix::new(n, entries, f).expect("square matrix over the field")
}

fn odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::bad(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

fn field(q: u64) -> Result<FqField> {
    let q = u32::try_from(q).map_err(|_| Error::bad(format!("field size {q} is too large")))?;
    FqField::new(q)
}

/// Generators of `SL2(p)`: the unipotent `[[1,1],[0,1]]` and `[[0,-1],[1,0]]`.
pub fn sl2_generators(f: &FqField) -> Vec<FqMatrix> {
    vec![mat(f, &[&[1, 1], &[0, 1]]), mat(f, &[&[0, -1], &[1, 0]])]
}

/// Named subgroups of `GL2(p)` used to extend extraspecial and elementary Abelian groups.
pub fn linear_subgroup(name: &str, f: &FqField) -> Result<Vec<FqMatrix>> {
    let t = mat(f, &[&[0, -1], &[1, 0]]);
    let u = mat(f, &[&[1, 1], &[0, 1]]);
    let r = mat(f, &[&[-1, 0], &[0, 1]]);
    let q8 = mat(f, &[&[1, 1], &[1, -1]]);
    Ok(match name {
        "1" => vec![],
        "-1" => vec![mat(f, &[&[-1, 0], &[0, -1]])],
        "diag" => vec![r],
        "2x2" => vec![r, mat(f, &[&[1, 0], &[0, -1]])],
        "4" => vec![t],
        "unipotent" => vec![u],
        "d8" => vec![t, r],
        "q8" => vec![t, q8],
        "sd16" => vec![t, q8, r],
        "sl2" => vec![u, t],
        "gl2" => vec![u, t, mat(f, &[&[f.generator() as i64, 0], &[0, 1]])],
        other => return Err(Error::bad(format!("unknown linear subgroup {other:?}"))),
    })
}

fn embed_affine(f: &FqField, a: &FqMatrix) -> FqMatrix {
    let n = a.dim();
    let mut m = FqMatrix::identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, a.get(i, j));
        }
    }
    let _ = f;
    m
}

/// `Qd(p)` as matrices `[[A,0],[b,1]]` acting on row vectors of length 3.
pub fn qdp_spec(p: u64) -> Result<GroupSpec> {
    odd_prime(p)?;
    let f = field(p)?;
    let mut generators: Vec<FqMatrix> = sl2_generators(&f).iter().map(|a| embed_affine(&f, a)).collect();
    generators.push(mat(&f, &[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1]]));
    Ok(GroupSpec::Matrix { name: format!("Qd({p})"), field: p as u32, dim: 3, action: MatrixAction::Vectors, generators })
}

/// `Qd(p)` as the matrices `[[a,b,t],[c,d,u],[0,0,1]]` of `SL3(p)` with `ad - bc = 1`.
pub fn qdp_sl3_spec(p: u64) -> Result<GroupSpec> {
    odd_prime(p)?;
    let f = field(p)?;
    let generators = vec![
        mat(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        mat(&f, &[&[0, -1, 0], &[1, 0, 0], &[0, 0, 1]]),
        mat(&f, &[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]),
    ];
    Ok(GroupSpec::Matrix { name: format!("Qd({p}) in SL3({p})"), field: p as u32, dim: 3, action: MatrixAction::Vectors, generators })
}

/// The extraspecial group of order `p^3` and exponent `p`, as upper unitriangular matrices.
pub fn extraspecial_spec(p: u64) -> Result<GroupSpec> {
    odd_prime(p)?;
    let f = field(p)?;
    let generators = vec![
        mat(&f, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]),
        mat(&f, &[&[1, 0, 0], &[0, 1, 1], &[0, 0, 1]]),
    ];
    Ok(GroupSpec::Matrix { name: format!("{p}^(1+2)"), field: p as u32, dim: 3, action: MatrixAction::Vectors, generators })
}

/// Least element of order 3 in `F_q`.
pub fn least_cube_root_of_unity(f: &FqField) -> Result<u32> {
    f.least_of_order(3).ok_or_else(|| Error::bad(format!("F_{} has no primitive cube root of unity", f.q())))
}

/// Least element of order 9 whose cube is the least element of order 3.
pub fn least_ninth_root_over(f: &FqField) -> Result<u32> {
    let rho = least_cube_root_of_unity(f)?;
    f.elements()
        .find(|&x| f.order(x) == Some(9) && f.pow(x, 3) == rho)
        .ok_or_else(|| Error::bad(format!("F_{} has no primitive ninth root of unity", f.q())))
}

fn tilde_qd3_matrices(f: &FqField, x_scalar: Option<u32>) -> Result<Vec<FqMatrix>> {
    let rho = least_cube_root_of_unity(f)?;
    let rho2 = f.mul(rho, rho);
    let (o, z) = (f.one(), f.zero());
    let a = FqMatrix::diagonal(&[rho, rho2, o]);
    let b = FqMatrix::new(3, vec![z, o, z, z, z, o, o, z, z], f)?;
    let mut x = FqMatrix::diagonal(&[o, rho, o]);
    if let Some(s) = x_scalar {
        x = x.scale(s, f);
    }
    let c = f.inv(f.sub(o, rho)).expect("rho differs from 1");
    let t = FqMatrix::new(3, vec![o, o, o, rho, rho2, o, rho2, rho, o], f)?.scale(c, f);
    Ok(vec![a, b, x, t])
}

fn matrix_action(q: u64, dim: u32, caps: Caps) -> MatrixAction {
    match q.checked_pow(dim) {
        Some(d) if d as usize <= caps.degree => MatrixAction::Vectors,
        _ => MatrixAction::BasisOrbits,
    }
}

/// The central extension of `Qd(p)` by a group of order `p`.
///
/// For `p = 3` this is the group generated by the four `3 x 3` matrices over `F_q`
/// built from the least cube root of unity; for `p > 3` it is `E x| SL2(p)` with
/// `E` extraspecial of exponent `p`. In both cases `p` must divide `q - 1`.
pub fn tilde_qdp_spec(p: u64, q: u64, caps: Caps) -> Result<GroupSpec> {
    odd_prime(p)?;
    let f = field(q)?;
    if !(q - 1).is_multiple_of(p) {
        return Err(Error::bad(format!("p = {p} does not divide q - 1 = {}", q - 1)));
    }
    if p == 3 {
        let generators = tilde_qd3_matrices(&f, None)?;
        let action = matrix_action(q, 3, caps);
        return Ok(GroupSpec::Matrix { name: format!("~Qd(3) over F_{q}"), field: q as u32, dim: 3, action, generators });
    }
    let fp = field(p)?;
    let mut spec = extraspecial_extension_spec(p, &sl2_generators(&fp))?;
    if let GroupSpec::Perm { name, .. } = &mut spec {
        *name = format!("~Qd({p})");
    }
    Ok(spec)
}

/// The two twisted variants of `~Qd(3)`, with `x` multiplied by `theta^(-1)` (`minus`) or `theta` (`plus`).
pub fn tilde_qd3_variant_spec(plus: bool, q: u64, caps: Caps) -> Result<GroupSpec> {
    let f = field(q)?;
    if !(q - 1).is_multiple_of(9) {
        return Err(Error::bad(format!("9 does not divide q - 1 = {}", q - 1)));
    }
    let theta = least_ninth_root_over(&f)?;
    let s = if plus { theta } else { f.inv(theta).expect("nonzero") };
    let generators = tilde_qd3_matrices(&f, Some(s))?;
    let action = matrix_action(q, 3, caps);
    let sign = if plus { '+' } else { '-' };
    Ok(GroupSpec::Matrix { name: format!("~Qd{sign}(3) over F_{q}"), field: q as u32, dim: 3, action, generators })
}

/// Index of `(v1, v2, z)` in the extraspecial group `F_p^2 x F_p`.
fn heis_index(p: u64, v1: u64, v2: u64, z: u64) -> usize {
    ((v1 * p + v2) * p + z) as usize
}

/// `E x| H` acting on the elements of `E`, where `E = F_p^2 x F_p` with product
/// `(v, z)(w, c) = (v + w, z + c + omega(v, w) / 2)` and `A` in `H <= GL2(p)` acts by `(v, z) -> (vA, det(A) z)`.
pub fn extraspecial_extension_spec(p: u64, linear: &[FqMatrix]) -> Result<GroupSpec> {
    odd_prime(p)?;
    let f = field(p)?;
    let half = p.div_ceil(2);
    let n = (p * p * p) as usize;
    let points = || (0..p).flat_map(move |a| (0..p).flat_map(move |b| (0..p).map(move |z| (a, b, z))));
    let translate = |w1: u64, w2: u64| -> Perm {
        let mut images = vec![0usize; n];
        for (v1, v2, z) in points() {
            let omega = (v1 * w2 + p * p - v2 * w1) % p;
            let z2 = (z + half * omega) % p;
            images[heis_index(p, v1, v2, z)] = heis_index(p, (v1 + w1) % p, (v2 + w2) % p, z2);
        }
        Perm::from_images(images).expect("right translation is a bijection")
    };
    let mut generators = vec![translate(1, 0), translate(0, 1)];
    for a in linear {
        if a.dim() != 2 || a.det(&f) == 0 {
            return Err(Error::bad("linear part must consist of invertible 2 x 2 matrices"));
        }
        let d = a.det(&f) as u64;
        let mut images = vec![0usize; n];
        for (v1, v2, z) in points() {
            let w = a.apply_row(&[v1 as u32, v2 as u32], &f);
            images[heis_index(p, v1, v2, z)] = heis_index(p, w[0] as u64, w[1] as u64, d * z % p);
        }
        generators.push(Perm::from_images(images).expect("automorphism is a bijection"));
    }
    Ok(GroupSpec::Perm { name: format!("{p}^(1+2):H"), degree: n, generators })
}

/// `F_q^n x| H` acting on the `q^n` vectors, for `H` generated by `linear`.
pub fn affine_spec(q: u64, n: usize, linear: &[FqMatrix]) -> Result<GroupSpec> {
    let f = field(q)?;
    let degree = (q as usize).checked_pow(n as u32).ok_or_else(|| Error::bad("affine degree overflows"))?;
    if degree > 1 << 16 {
        return Err(Error::bad(format!("affine degree {degree} is too large")));
    }
    let vectors: Vec<Vec<u32>> = (0..degree).map(|i| crate::engine::matrix::vector_from_index(i, n, q as u32)).collect();
    let index = |v: &[u32]| crate::engine::matrix::vector_index(v, q as u32);
    let mut generators = Vec::new();
    let mut e1 = vec![0u32; n];
    if n > 0 {
        e1[0] = 1;
        generators.push(Perm::from_images(vectors.iter().map(|v| {
            let w: Vec<u32> = v.iter().zip(&e1).map(|(&a, &b)| f.add(a, b)).collect();
            index(&w)
        }).collect())?);
    }
    for a in linear {
        if a.dim() != n || a.det(&f) == 0 {
            return Err(Error::bad("linear part must consist of invertible matrices of the vector dimension"));
        }
        generators.push(Perm::from_images(vectors.iter().map(|v| index(&a.apply_row(v, &f))).collect())?);
    }
    Ok(GroupSpec::Perm { name: format!("{q}^{n}:H"), degree, generators })
}

pub fn symmetric_spec(n: usize) -> Result<GroupSpec> {
    let mut generators = Vec::new();
    if n >= 2 {
        generators.push(Perm::from_images((0..n).map(|i| (i + 1) % n).collect())?);
        generators.push(Perm::from_cycles(n, "(0 1)")?);
    }
    Ok(GroupSpec::Perm { name: format!("S{n}"), degree: n, generators })
}

pub fn alternating_spec(n: usize) -> Result<GroupSpec> {
    let generators = (2..n)
        .map(|k| Perm::from_cycles(n, &format!("(0 1 {k})")))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::Perm { name: format!("A{n}"), degree: n, generators })
}

/// `Qd(p)` acting on the right cosets of its subgroup `SL2(p)`, with the action map from `qdp(p)`.
pub fn qdp_in_alternating(p: u64, caps: Caps) -> Result<(Group, Group, Hom)> {
    let g = qdp_spec(p)?.build(caps)?;
    let linear = g.closure(&g.generators()[..2]);
    let (image, hom) = coset_action(&g, &g.whole(), &linear)?;
    Ok((g, image.with_label(format!("Qd({p}) on {} cosets", p * p)), hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{is_isomorphic, CoreMode};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn qdp3_structure() {
        let g = qdp_spec(3).unwrap().build(caps()).unwrap();
        assert_eq!(g.order(), 216);
        let v = g.p_core(3, CoreMode::P);
        assert_eq!(v.order(), 9);
        assert!(g.is_abelian(&v));
        assert!(g.p_core(3, CoreMode::PPrime).is_trivial());
        assert_eq!(g.centralizer(&v), v);
    }

    #[test]
    fn qdp_rejects_even_prime() {
        assert!(matches!(qdp_spec(2), Err(Error::BadParameters(_))));
        assert!(matches!(qdp_spec(9), Err(Error::BadParameters(_))));
    }

    #[test]
    fn qdp_models_agree() {
        let a = qdp_spec(3).unwrap().build(caps()).unwrap();
        let b = qdp_sl3_spec(3).unwrap().build(caps()).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn extraspecial_three() {
        let e = extraspecial_spec(3).unwrap().build(caps()).unwrap();
        assert_eq!(e.order(), 27);
        assert_eq!(e.exponent(&e.whole()), 3);
        let z = e.center();
        assert_eq!(z.order(), 3);
        assert_eq!(e.derived_subgroup(&e.whole()), z);
    }

    #[test]
    fn abstract_extraspecial_matches_matrix_model() {
        let f = field(3).unwrap();
        let _ = &f;
        let a = extraspecial_extension_spec(3, &[]).unwrap().build(caps()).unwrap();
        let b = extraspecial_spec(3).unwrap().build(caps()).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn tilde_qd3_order_and_center() {
        let g = tilde_qdp_spec(3, 13, caps()).unwrap().build(caps()).unwrap();
        assert_eq!(g.order(), 648);
        assert_eq!(g.center().order(), 3);
        assert!(matches!(tilde_qdp_spec(3, 5, caps()), Err(Error::BadParameters(_))));
    }

    #[test]
    fn tilde_qd3_models_agree() {
        let a = tilde_qdp_spec(3, 7, caps()).unwrap().build(caps()).unwrap();
        let f = field(3).unwrap();
        let b = extraspecial_extension_spec(3, &sl2_generators(&f)).unwrap().build(caps()).unwrap();
        assert_eq!(a.order(), 648);
        assert!(is_isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn ninth_root_choice() {
        let f = field(19).unwrap();
        let rho = least_cube_root_of_unity(&f).unwrap();
        let theta = least_ninth_root_over(&f).unwrap();
        assert_eq!(rho, 7);
        assert_eq!(f.pow(theta, 3), rho);
        assert_eq!(f.order(theta), Some(9));
        assert!(matches!(tilde_qd3_variant_spec(false, 7, caps()), Err(Error::BadParameters(_))));
    }

    #[test]
    fn minus_variant_has_determinant_one() {
        let spec = tilde_qd3_variant_spec(false, 19, caps()).unwrap();
        let GroupSpec::Matrix { generators, .. } = &spec else { panic!() };
        let f = field(19).unwrap();
        assert!(generators.iter().all(|m| m.det(&f) == 1));
        let plus = tilde_qd3_variant_spec(true, 19, caps()).unwrap();
        let GroupSpec::Matrix { generators, .. } = &plus else { panic!() };
        assert!(generators.iter().any(|m| m.det(&f) != 1));
    }

    #[test]
    fn coset_action_of_qd3() {
        let (g, image, hom) = qdp_in_alternating(3, caps()).unwrap();
        assert_eq!(image.degree(), 9);
        assert_eq!(image.order(), 216);
        assert!(image.generator_perms().iter().all(Perm::is_even));
        assert_eq!(hom.kernel_elements(), vec![0]);
        assert!(hom.is_homomorphism(&g, &image));
    }

    #[test]
    fn affine_gl2_3() {
        let f = field(3).unwrap();
        let g = affine_spec(3, 2, &linear_subgroup("gl2", &f).unwrap()).unwrap().build(caps()).unwrap();
        assert_eq!(g.order(), 432);
    }

    #[test]
    fn named_linear_subgroups() {
        let f = field(3).unwrap();
        let expected = [("1", 1), ("-1", 2), ("4", 4), ("q8", 8), ("d8", 8), ("sd16", 16), ("sl2", 24), ("gl2", 48)];
        for (name, order) in expected {
            let g = extraspecial_extension_spec(3, &linear_subgroup(name, &f).unwrap()).unwrap().build(caps()).unwrap();
            assert_eq!(g.order(), 27 * order, "{name}");
        }
    }

    #[test]
    fn symmetric_and_alternating() {
        assert_eq!(symmetric_spec(4).unwrap().build(caps()).unwrap().order(), 24);
        assert_eq!(alternating_spec(5).unwrap().build(caps()).unwrap().order(), 60);
        assert_eq!(symmetric_spec(1).unwrap().build(caps()).unwrap().order(), 1);
    }
}
