//! Size limits for exhaustive computations.

use serde::{Deserialize, Serialize};

pub const DEFAULT_ORDER_CAP: usize = 200_000;
pub const DEFAULT_DEGREE_CAP: usize = 4096;
pub const DEFAULT_SUBGROUP_CAP: usize = 200_000;

/// Permutations store points as `u16`, so no cap may exceed this.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub order: usize,
    pub degree: usize,
    pub subgroup: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            order: DEFAULT_ORDER_CAP,
            degree: DEFAULT_DEGREE_CAP,
            subgroup: DEFAULT_SUBGROUP_CAP,
        }
    }
}

impl Caps {
    /// Defaults overridden by `ORDER_CAP`, `DEGREE_CAP` and `SUBGROUP_CAP`.
    pub fn from_env() -> Self {
        Self::from_lookup(|k| std::env::var(k).ok())
    }

    pub fn from_lookup(get: impl Fn(&str) -> Option<String>) -> Self {
        let read = |key: &str, default: usize| {
            get(key)
                .and_then(|v| v.trim().parse::<usize>().ok())
                .unwrap_or(default)
        };
        Caps {
            order: read("ORDER_CAP", DEFAULT_ORDER_CAP),
            degree: read("DEGREE_CAP", DEFAULT_DEGREE_CAP).min(MAX_DEGREE),
            subgroup: read("SUBGROUP_CAP", DEFAULT_SUBGROUP_CAP),
        }
    }

    /// Explicit values win over whatever `self` holds.
    pub fn overridden(self, order: Option<usize>, degree: Option<usize>, subgroup: Option<usize>) -> Self {
        Caps {
            order: order.unwrap_or(self.order),
            degree: degree.unwrap_or(self.degree).min(MAX_DEGREE),
            subgroup: subgroup.unwrap_or(self.subgroup),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn env_then_flags() {
        let env = |k: &str| match k {
            "ORDER_CAP" => Some("1000".to_string()),
            "DEGREE_CAP" => Some("junk".to_string()),
            _ => None,
        };
        let caps = Caps::from_lookup(env);
        assert_eq!(caps.order, 1000);
        assert_eq!(caps.degree, DEFAULT_DEGREE_CAP);
        let caps = caps.overridden(Some(5), None, Some(7));
        assert_eq!((caps.order, caps.degree, caps.subgroup), (5, DEFAULT_DEGREE_CAP, 7));
    }
}
