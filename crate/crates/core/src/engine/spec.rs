//! The group-spec document: a versioned JSON description of a permutation or matrix group.
//!
//! ```json
//! {"format": 1, "name": "S3", "kind": "perm", "degree": 3, "generators": ["(0 1 2)", "(0 1)"]}
//! {"format": 1, "name": "SL2(3)", "kind": "matrix", "field": 3, "dim": 2,
//!  "action": "vectors", "generators": [[1, 1, 0, 1], [0, 2, 1, 0]]}
//! ```
//!
//! Matrix entries are field element codes: the base-`p` digits of a code are
//! its coordinates in the polynomial basis of `F_q`. `action` is `vectors`
//! (all `q^n` row vectors, the default) or `basis-orbits` (the orbits of the
//! standard basis vectors).

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::field::FqField;
use super::group::Group;
use super::matrix::{basis_orbit_points, matrix_to_perm, matrix_to_perm_on, FqMatrix};
use super::perm::Perm;
use crate::caps::Caps;
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixAction {
    Vectors,
    BasisOrbits,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Perm { name: String, degree: usize, generators: Vec<Perm> },
    Matrix { name: String, field: u32, dim: usize, action: MatrixAction, generators: Vec<FqMatrix> },
}

impl GroupSpec {
    pub fn name(&self) -> &str {
        match self {
            GroupSpec::Perm { name, .. } | GroupSpec::Matrix { name, .. } => name,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupSpec::Perm { name, degree, generators } => serde_json::json!({
                "format": FORMAT_VERSION,
                "name": name,
                "kind": "perm",
                "degree": degree,
                "generators": generators.iter().map(|g| g.to_cycle_string()).collect::<Vec<_>>(),
            }),
            GroupSpec::Matrix { name, field, dim, action, generators } => serde_json::json!({
                "format": FORMAT_VERSION,
                "name": name,
                "kind": "matrix",
                "field": field,
                "dim": dim,
                "action": action,
                "generators": generators.iter().map(|m| m.entries().to_vec()).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values serialize")
    }

    pub fn parse(text: &str) -> Result<GroupSpec> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<GroupSpec> {
        let obj = v.as_object().ok_or_else(|| Error::parse("$", "expected a JSON object"))?;
        let format = obj.get("format").and_then(Value::as_u64).ok_or_else(|| Error::parse("$.format", "missing integer field"))?;
        if format != FORMAT_VERSION {
            return Err(Error::parse("$.format", format!("unsupported format {format}")));
        }
        let name = obj.get("name").and_then(Value::as_str).unwrap_or("").to_string();
        let kind = obj.get("kind").and_then(Value::as_str).ok_or_else(|| Error::parse("$.kind", "missing string field"))?;
        let gens = obj
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("$.generators", "missing array field"))?;
        let uint = |key: &str| -> Result<usize> {
            obj.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::parse(format!("$.{key}"), "missing non-negative integer field"))
        };
        match kind {
            "perm" => {
                let degree = uint("degree")?;
                let generators = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let path = format!("$.generators[{i}]");
                        match g {
                            Value::String(s) => Perm::from_cycles(degree, s).map_err(|e| Error::parse(path, e.to_string())),
                            Value::Array(a) => {
                                let images = a
                                    .iter()
                                    .map(|x| x.as_u64().map(|x| x as usize))
                                    .collect::<Option<Vec<usize>>>()
                                    .ok_or_else(|| Error::parse(path.clone(), "image list must hold integers"))?;
                                if images.len() != degree {
                                    return Err(Error::parse(path, format!("image list has length {}, expected {degree}", images.len())));
                                }
                                Perm::from_images(images).map_err(|e| Error::parse(path, e.to_string()))
                            }
                            _ => Err(Error::parse(path, "expected a cycle string or an image list")),
                        }
                    })
                    .collect::<Result<Vec<Perm>>>()?;
                Ok(GroupSpec::Perm { name, degree, generators })
            }
            "matrix" => {
                let q = uint("field")? as u32;
                let dim = uint("dim")?;
                let field = FqField::new(q).map_err(|e| Error::parse("$.field", e.to_string()))?;
                let action = match obj.get("action") {
                    None => MatrixAction::Vectors,
                    Some(a) => serde_json::from_value(a.clone())
                        .map_err(|_| Error::parse("$.action", "expected \"vectors\" or \"basis-orbits\""))?,
                };
                let generators = gens
                    .iter()
                    .enumerate()
                    .map(|(i, g)| {
                        let path = format!("$.generators[{i}]");
                        let entries = g
                            .as_array()
                            .and_then(|a| a.iter().map(|x| x.as_u64().map(|x| x as u32)).collect::<Option<Vec<u32>>>())
                            .ok_or_else(|| Error::parse(path.clone(), "expected an array of field element codes"))?;
                        let m = FqMatrix::new(dim, entries, &field).map_err(|e| Error::parse(path.clone(), e.to_string()))?;
                        if m.det(&field) == 0 {
                            return Err(Error::parse(path, "matrix is singular"));
                        }
                        Ok(m)
                    })
                    .collect::<Result<Vec<FqMatrix>>>()?;
                Ok(GroupSpec::Matrix { name, field: q, dim, action, generators })
            }
            other => Err(Error::parse("$.kind", format!("unknown kind {other:?}"))),
        }
    }

    pub fn build(&self, caps: Caps) -> Result<Group> {
        match self {
            GroupSpec::Perm { name, degree, generators } => {
                Ok(Group::generate_with_caps(generators, *degree, caps)?.with_label(name.clone()))
            }
            GroupSpec::Matrix { name, field, action, generators, dim } => {
                let f = FqField::new(*field)?;
                let g = match action {
                    MatrixAction::Vectors => as_permutation_group(generators, &f, caps)?,
                    MatrixAction::BasisOrbits => as_permutation_group_on_orbits(generators, *dim, &f, caps)?,
                };
                Ok(g.with_label(name.clone()))
            }
        }
    }
}

/// The group generated by invertible matrices, acting on all `q^n` row vectors.
pub fn as_permutation_group(mats: &[FqMatrix], f: &FqField, caps: Caps) -> Result<Group> {
    let n = mats.first().map(|m| m.dim()).unwrap_or(0);
    if let Some(m) = mats.iter().find(|m| m.dim() != n) {
        return Err(Error::bad(format!("matrix of dimension {} among dimension {n}", m.dim())));
    }
    if mats.iter().any(|m| m.det(f) == 0) {
        return Err(Error::bad("singular matrix"));
    }
    let degree = (f.q() as usize).checked_pow(n as u32).unwrap_or(usize::MAX);
    if degree > caps.degree {
        return Err(Error::DegreeCapExceeded { degree, cap: caps.degree });
    }
    let perms: Vec<Perm> = mats.iter().map(|m| matrix_to_perm(m, f)).collect();
    Group::generate_with_caps(&perms, degree, caps)
}

/// The group generated by invertible `n x n` matrices, acting on the orbits of the standard basis vectors.
pub fn as_permutation_group_on_orbits(mats: &[FqMatrix], n: usize, f: &FqField, caps: Caps) -> Result<Group> {
    if mats.iter().any(|m| m.dim() != n || m.det(f) == 0) {
        return Err(Error::bad("matrices must be invertible and of the stated dimension"));
    }
    if mats.is_empty() {
        return Group::generate_with_caps(&[], 0, caps);
    }
    let points = basis_orbit_points(mats, f, caps.degree)?;
    let index: FxHashMap<Vec<u32>, usize> = points.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    let perms: Vec<Perm> = mats
        .iter()
        .map(|m| matrix_to_perm_on(m, f, &points, &index).expect("orbit union is invariant"))
        .collect();
    Group::generate_with_caps(&perms, points.len(), caps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm_spec_round_trip() {
        let text = r#"{"format":1,"name":"S3","kind":"perm","degree":3,"generators":["(0 1 2)",[1,0,2]]}"#;
        let spec = GroupSpec::parse(text).unwrap();
        let g = spec.build(Caps::default()).unwrap();
        assert_eq!(g.order(), 6);
        let again = GroupSpec::parse(&spec.to_json_string()).unwrap();
        assert_eq!(again, spec);
    }

    #[test]
    fn positioned_errors() {
        let bad = r#"{"format":1,"kind":"perm","degree":3,"generators":["(0 1)",[0,0,1]]}"#;
        match GroupSpec::parse(bad) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "$.generators[1]"),
            other => panic!("unexpected {other:?}"),
        }
        let singular = r#"{"format":1,"kind":"matrix","field":3,"dim":2,"generators":[[1,2,2,1]]}"#;
        match GroupSpec::parse(singular) {
            Err(Error::Parse { path, message }) => {
                assert_eq!(path, "$.generators[0]");
                assert!(message.contains("singular"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(GroupSpec::parse("{\"format\":2}"), Err(Error::Parse { .. })));
        assert!(matches!(GroupSpec::parse("not json"), Err(Error::Parse { .. })));
    }

    #[test]
    fn identity_matrix_gives_trivial_group_on_nine_points() {
        let f = FqField::new(3).unwrap();
        let g = as_permutation_group(&[FqMatrix::identity(2)], &f, Caps::default()).unwrap();
        assert_eq!((g.order(), g.degree()), (1, 9));
    }

    #[test]
    fn sl2_3_from_two_matrices() {
        let f = FqField::new(3).unwrap();
        let a = FqMatrix::from_rows(&[&[1, 1], &[0, 1]], &f).unwrap();
        let b = FqMatrix::from_rows(&[&[0, 2], &[1, 0]], &f).unwrap();
        let g = as_permutation_group(&[a.clone(), b.clone()], &f, Caps::default()).unwrap();
        assert_eq!(g.order(), 24);
        let h = as_permutation_group_on_orbits(&[a, b], 2, &f, Caps::default()).unwrap();
        assert_eq!(h.order(), 24);
        assert_eq!(h.degree(), 8);
    }

    #[test]
    fn degree_cap_applies_to_vector_action() {
        let f = FqField::new(19).unwrap();
        let caps = Caps::default();
        let err = as_permutation_group(&[FqMatrix::identity(3)], &f, caps).unwrap_err();
        assert_eq!(err, Error::DegreeCapExceeded { degree: 6859, cap: caps.degree });
    }
}
