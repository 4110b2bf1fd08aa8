//! Witness groups and classical groups, each available as a group-spec document.

pub mod classical;
pub mod dual_module;
pub mod witness;

use serde::{Deserialize, Serialize};

pub use classical::{classical_spec, ClassicalFamily};
pub use dual_module::{dual_module_factor, DualModuleReport};
pub use witness::{
    affine_spec, alternating_spec, extraspecial_extension_spec, extraspecial_spec, least_cube_root_of_unity,
    least_ninth_root_over, linear_subgroup, qdp_in_alternating, qdp_sl3_spec, qdp_spec, sl2_generators,
    symmetric_spec, tilde_qd3_variant_spec, tilde_qdp_spec,
};

use crate::caps::Caps;
use crate::engine::field::FqField;
use crate::engine::spec::GroupSpec;
use crate::engine::{Group, Hom};
use crate::error::{Error, Result};

/// A named construction with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "recipe", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Recipe {
    Qdp { p: u64 },
    QdpSl3 { p: u64 },
    Extraspecial { p: u64 },
    TildeQdp { p: u64, q: u64 },
    TildeQd3Minus { q: u64 },
    TildeQd3Plus { q: u64 },
    QdpInAlternating { p: u64 },
    Classical { family: ClassicalFamily, n: usize, q: u64 },
    /// `p^(1+2) x| H` for a named subgroup `H` of `GL2(p)`.
    ExtraspecialBy { p: u64, linear: String },
    /// `F_q^2 x| H` for a named subgroup `H` of `GL2(q)`.
    Affine { q: u64, linear: String },
    Symmetric { n: usize },
    Alternating { n: usize },
}

impl Recipe {
    pub fn spec(&self, caps: Caps) -> Result<GroupSpec> {
        match self {
            Recipe::Qdp { p } => qdp_spec(*p),
            Recipe::QdpSl3 { p } => qdp_sl3_spec(*p),
            Recipe::Extraspecial { p } => extraspecial_spec(*p),
            Recipe::TildeQdp { p, q } => tilde_qdp_spec(*p, *q, caps),
            Recipe::TildeQd3Minus { q } => tilde_qd3_variant_spec(false, *q, caps),
            Recipe::TildeQd3Plus { q } => tilde_qd3_variant_spec(true, *q, caps),
            Recipe::QdpInAlternating { p } => {
                let (_, image, _) = qdp_in_alternating(*p, caps)?;
                Ok(GroupSpec::Perm { name: image.label().to_string(), degree: image.degree(), generators: image.generator_perms() })
            }
            Recipe::Classical { family, n, q } => classical_spec(*family, *n, *q, caps),
            Recipe::ExtraspecialBy { p, linear } => {
                let f = small_prime_field(*p)?;
                let mut spec = extraspecial_extension_spec(*p, &linear_subgroup(linear, &f)?)?;
                rename(&mut spec, format!("{p}^(1+2):{linear}"));
                Ok(spec)
            }
            Recipe::Affine { q, linear } => {
                let f = small_prime_field(*q)?;
                let mut spec = affine_spec(*q, 2, &linear_subgroup(linear, &f)?)?;
                rename(&mut spec, format!("{q}^2:{linear}"));
                Ok(spec)
            }
            Recipe::Symmetric { n } => symmetric_spec(*n),
            Recipe::Alternating { n } => alternating_spec(*n),
        }
    }

    pub fn build(&self, caps: Caps) -> Result<Group> {
        self.spec(caps)?.build(caps)
    }
}

impl std::str::FromStr for Recipe {
    type Err = Error;

    /// A JSON object, or `name:key=value,...` such as `tilde-qdp:p=3,q=13`.
    fn from_str(s: &str) -> Result<Recipe> {
        let s = s.trim();
        let value = if s.starts_with('{') {
            serde_json::from_str(s).map_err(|e| Error::parse("recipe", e.to_string()))?
        } else {
            let (name, rest) = s.split_once(':').unwrap_or((s, ""));
            let mut obj = serde_json::Map::new();
            obj.insert("recipe".into(), name.trim().into());
            for kv in rest.split(',').filter(|kv| !kv.trim().is_empty()) {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::parse("recipe", format!("expected key=value, got {kv:?}")))?;
                let v = v.trim();
                let v = v.parse::<u64>().map(serde_json::Value::from).unwrap_or_else(|_| v.into());
                obj.insert(k.trim().into(), v);
            }
            serde_json::Value::Object(obj)
        };
        serde_json::from_value(value).map_err(|e| Error::parse("recipe", e.to_string()))
    }
}

fn small_prime_field(q: u64) -> Result<FqField> {
    let q = u32::try_from(q).map_err(|_| Error::bad(format!("field size {q} is too large")))?;
    FqField::new(q)
}

fn rename(spec: &mut GroupSpec, new_name: String) {
    match spec {
        GroupSpec::Perm { name, .. } | GroupSpec::Matrix { name, .. } => *name = new_name,
    }
}

pub fn qdp(p: u64) -> Result<Group> {
    Recipe::Qdp { p }.build(Caps::from_env())
}

pub fn qdp_sl3(p: u64) -> Result<Group> {
    Recipe::QdpSl3 { p }.build(Caps::from_env())
}

pub fn extraspecial(p: u64) -> Result<Group> {
    Recipe::Extraspecial { p }.build(Caps::from_env())
}

pub fn tilde_qdp(p: u64, q: u64) -> Result<Group> {
    Recipe::TildeQdp { p, q }.build(Caps::from_env())
}

pub fn tilde_qd3_variant(plus: bool, q: u64) -> Result<Group> {
    let r = if plus { Recipe::TildeQd3Plus { q } } else { Recipe::TildeQd3Minus { q } };
    r.build(Caps::from_env())
}

pub fn classical_group(family: ClassicalFamily, n: usize, q: u64) -> Result<Group> {
    Recipe::Classical { family, n, q }.build(Caps::from_env())
}

/// `Qd(p)` in the alternating group of degree `p^2`: returns `(qdp(p), image, action map)`.
pub fn qdp_alternating(p: u64) -> Result<(Group, Group, Hom)> {
    qdp_in_alternating(p, Caps::from_env())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recipes_round_trip_through_json() {
        let r = Recipe::Classical { family: ClassicalFamily::PSL, n: 3, q: 3 };
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(text, r#"{"recipe":"classical","family":"PSL","n":3,"q":3}"#);
        assert_eq!(serde_json::from_str::<Recipe>(&text).unwrap(), r);
        let r: Recipe = serde_json::from_str(r#"{"recipe":"extraspecial-by","p":3,"linear":"q8"}"#).unwrap();
        assert_eq!(r.build(Caps::default()).unwrap().order(), 216);
    }

    #[test]
    fn spec_documents_rebuild_identically() {
        let caps = Caps::default();
        for r in [
            Recipe::Qdp { p: 3 },
            Recipe::TildeQdp { p: 3, q: 7 },
            Recipe::QdpInAlternating { p: 3 },
            Recipe::Affine { q: 3, linear: "sl2".into() },
        ] {
            let spec = r.spec(caps).unwrap();
            let reparsed = GroupSpec::parse(&spec.to_json_string()).unwrap();
            assert_eq!(reparsed, spec);
            assert_eq!(reparsed.build(caps).unwrap().elements(), spec.build(caps).unwrap().elements());
        }
    }

    #[test]
    fn shorthand_recipes() {
        let r: Recipe = "tilde-qdp:p=3,q=13".parse().unwrap();
        assert_eq!(r, Recipe::TildeQdp { p: 3, q: 13 });
        let r: Recipe = "classical:family=PSp,n=4,q=3".parse().unwrap();
        assert_eq!(r, Recipe::Classical { family: ClassicalFamily::PSp, n: 4, q: 3 });
        let r: Recipe = r#"{"recipe": "qdp", "p": 5}"#.parse().unwrap();
        assert_eq!(r, Recipe::Qdp { p: 5 });
        assert!("qdp".parse::<Recipe>().is_err());
        assert!("qdp:p".parse::<Recipe>().is_err());
        assert!("nonsense:p=3".parse::<Recipe>().is_err());
    }
}
