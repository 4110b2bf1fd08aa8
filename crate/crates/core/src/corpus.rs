//! Corpus suites: named groups with expected check results, evaluated in parallel and
//! reported in entry order.
//!
//! ```json
//! {"format": 1, "name": "demo", "entries": [
//!   {"name": "Qd(3)", "recipe": {"recipe": "qdp", "p": 3}, "p": 3,
//!    "expected": {"order": {"value": 216, "tag": "[PAPER]"}}}
//! ]}
//! ```
//!
//! An entry names its group with exactly one of `recipe`, `spec` (an inline group-spec
//! document) or `group` (a path to one, relative to the suite file).

use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::caps::Caps;
use crate::constructions::Recipe;
use crate::engine::spec::{GroupSpec, FORMAT_VERSION};
use crate::engine::Group;
use crate::error::{Error, Result};
use crate::fusion::{fusion_system, FusionSystem};
use crate::stability::{has_subgroup_qdp_like, involves_qdp, is_p_stable, is_p_stable_def1968, is_section_p_stable};

pub const DEFAULT_SUITE: &str = include_str!("../data/default_corpus.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Order,
    SylowOrder,
    SylowAbelian,
    PStable,
    #[serde(rename = "p-stable-1968")]
    PStable1968,
    SectionPStable,
    InvolvesQdp,
    ContainsQdpSubgroup,
    FusionPStable,
    FusionQdpFree,
    FusionSectionPStable,
    FusionOpOrder,
    FusionSoluble,
    FusionConstrained,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Order,
        Check::SylowOrder,
        Check::SylowAbelian,
        Check::PStable,
        Check::PStable1968,
        Check::SectionPStable,
        Check::InvolvesQdp,
        Check::ContainsQdpSubgroup,
        Check::FusionPStable,
        Check::FusionQdpFree,
        Check::FusionSectionPStable,
        Check::FusionOpOrder,
        Check::FusionSoluble,
        Check::FusionConstrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Order => "order",
            Check::SylowOrder => "sylow-order",
            Check::SylowAbelian => "sylow-abelian",
            Check::PStable => "p-stable",
            Check::PStable1968 => "p-stable-1968",
            Check::SectionPStable => "section-p-stable",
            Check::InvolvesQdp => "involves-qdp",
            Check::ContainsQdpSubgroup => "contains-qdp-subgroup",
            Check::FusionPStable => "fusion-p-stable",
            Check::FusionQdpFree => "fusion-qdp-free",
            Check::FusionSectionPStable => "fusion-section-p-stable",
            Check::FusionOpOrder => "fusion-op-order",
            Check::FusionSoluble => "fusion-soluble",
            Check::FusionConstrained => "fusion-constrained",
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::bad(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "[PAPER]")]
    Literature,
    #[serde(rename = "[TRIVIAL]")]
    Trivial,
    #[serde(rename = "[DERIVED]")]
    Derived,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub value: Value,
    pub tag: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<Recipe>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<PathBuf>,
    pub p: u64,
    pub expected: std::collections::BTreeMap<Check, Expectation>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub format: u64,
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub entries: Vec<CorpusEntry>,
    /// Directory that `group` paths are relative to.
    #[serde(skip)]
    pub base: PathBuf,
}

impl Suite {
    pub fn parse(text: &str, base: impl Into<PathBuf>) -> Result<Suite> {
        let mut suite: Suite = serde_json::from_str(text)
            .map_err(|e| Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        if suite.format != FORMAT_VERSION {
            return Err(Error::parse("$.format", format!("unsupported format {}", suite.format)));
        }
        for (i, e) in suite.entries.iter().enumerate() {
            let sources = [e.recipe.is_some(), e.spec.is_some(), e.group.is_some()].iter().filter(|&&b| b).count();
            if sources != 1 {
                return Err(Error::parse(format!("$.entries[{i}]"), "exactly one of recipe, spec, group is required"));
            }
        }
        suite.base = base.into();
        Ok(suite)
    }

    pub fn default_suite() -> Suite {
        Suite::parse(DEFAULT_SUITE, ".").expect("the bundled suite parses")
    }

    /// `"default"` or a path to a suite file.
    pub fn load(name: &str) -> Result<Suite> {
        if name == "default" {
            return Ok(Self::default_suite());
        }
        let path = Path::new(name);
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{name}: {e}")))?;
        Suite::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

impl CorpusEntry {
    pub fn build(&self, base: &Path, caps: Caps) -> Result<Group> {
        let spec = if let Some(r) = &self.recipe {
            r.spec(caps)?
        } else if let Some(v) = &self.spec {
            GroupSpec::from_value(v)?
        } else {
            let path = base.join(self.group.as_ref().expect("validated on parse"));
            let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            GroupSpec::parse(&text)?
        };
        Ok(spec.build(caps)?.with_label(self.name.clone()))
    }
}

/// Lazily computed data for one group and prime, shared across checks.
pub struct Analysis {
    pub group: Arc<Group>,
    pub p: u64,
    fusion: OnceLock<std::result::Result<FusionSystem, Error>>,
    involvement: OnceLock<std::result::Result<bool, Error>>,
}

impl Analysis {
    pub fn new(group: Group, p: u64) -> Analysis {
        Analysis { group: Arc::new(group), p, fusion: OnceLock::new(), involvement: OnceLock::new() }
    }

    pub fn fusion(&self) -> Result<&FusionSystem> {
        self.fusion
            .get_or_init(|| fusion_system(self.group.clone(), self.p))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn involves(&self) -> Result<bool> {
        self.involvement
            .get_or_init(|| involves_qdp(&self.group, self.p).map(|w| w.is_some()))
            .clone()
    }

    pub fn evaluate(&self, check: Check) -> Result<Value> {
        let g = &*self.group;
        let p = self.p;
        let sylow = || g.sylow(p);
        Ok(match check {
            Check::Order => json!(g.order()),
            Check::SylowOrder => json!(sylow().order()),
            Check::SylowAbelian => json!(g.is_abelian(&sylow())),
            Check::PStable => json!(is_p_stable(g, p)?.stable),
            Check::PStable1968 => json!(is_p_stable_def1968(g, p)?.stable),
            Check::SectionPStable => json!(is_section_p_stable(g, p)?.stable),
            Check::InvolvesQdp => json!(self.involves()?),
            Check::ContainsQdpSubgroup => {
                let target = crate::constructions::qdp(p)?;
                json!(has_subgroup_qdp_like(g, &target)?.is_some())
            }
            Check::FusionPStable => json!(self.fusion()?.is_p_stable_fusion().stable),
            Check::FusionQdpFree => json!(self.fusion()?.is_qdp_free()?),
            Check::FusionSectionPStable => json!(self.fusion()?.section_p_stable_fusion()?),
            Check::FusionOpOrder => json!(self.fusion()?.op_f().order()),
            Check::FusionSoluble => json!(self.fusion()?.is_soluble()?.soluble),
            Check::FusionConstrained => json!(self.fusion()?.is_constrained()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryStatus {
    Pass,
    Mismatch,
    CapExceeded,
    Error,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: Check,
    pub expected: Value,
    pub tag: Provenance,
    pub actual: Option<Value>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryOutcome {
    pub index: usize,
    pub name: String,
    pub p: u64,
    pub status: EntryStatus,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub entries: Vec<EntryOutcome>,
    pub passed: usize,
    pub mismatched: usize,
    pub cap_exceeded: usize,
    pub errors: usize,
}

impl SuiteOutcome {
    /// 0 when every entry passed, 4 on any mismatch, otherwise 3 on cap overruns and 2 on errors.
    pub fn exit_code(&self) -> i32 {
        if self.mismatched > 0 {
            4
        } else if self.cap_exceeded > 0 {
            3
        } else if self.errors > 0 {
            2
        } else {
            0
        }
    }
}

fn run_entry(index: usize, entry: &CorpusEntry, base: &Path, caps: Caps, timings: bool) -> EntryOutcome {
    let start = Instant::now();
    let mut out = EntryOutcome {
        index,
        name: entry.name.clone(),
        p: entry.p,
        status: EntryStatus::Pass,
        checks: Vec::new(),
        error: None,
        elapsed_ms: None,
    };
    let fail = |out: &mut EntryOutcome, e: &Error| {
        let status = if e.is_cap() { EntryStatus::CapExceeded } else { EntryStatus::Error };
        out.status = out.status.max(status);
    };
    match entry.build(base, caps) {
        Err(e) => {
            fail(&mut out, &e);
            out.error = Some(e.to_string());
        }
        Ok(g) => {
            let a = Analysis::new(g, entry.p);
            for (&check, exp) in &entry.expected {
                let (actual, error) = match a.evaluate(check) {
                    Ok(v) => (Some(v), None),
                    Err(e) => {
                        fail(&mut out, &e);
                        (None, Some(e.to_string()))
                    }
                };
                let ok = actual.as_ref() == Some(&exp.value);
                if actual.is_some() && !ok {
                    out.status = out.status.max(EntryStatus::Mismatch);
                }
                out.checks.push(CheckOutcome { check, expected: exp.value.clone(), tag: exp.tag, actual, ok, error });
            }
        }
    }
    if timings {
        out.elapsed_ms = Some(start.elapsed().as_millis());
    }
    out
}

/// Evaluates every entry on `jobs` threads (the rayon default when `None`); the outcome
/// order is the entry order whatever the thread count.
pub fn run_suite(suite: &Suite, caps: Caps, jobs: Option<usize>, timings: bool) -> Result<SuiteOutcome> {
    let work = || -> Vec<EntryOutcome> {
        suite
            .entries
            .par_iter()
            .enumerate()
            .map(|(i, e)| run_entry(i, e, &suite.base, caps, timings))
            .collect()
    };
    let entries = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::bad(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };
    let count = |s: EntryStatus| entries.iter().filter(|e| e.status == s).count();
    Ok(SuiteOutcome {
        suite: suite.name.clone(),
        passed: count(EntryStatus::Pass),
        mismatched: count(EntryStatus::Mismatch),
        cap_exceeded: count(EntryStatus::CapExceeded),
        errors: count(EntryStatus::Error),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_passes() {
        let s = Suite::parse(r#"{"format": 1, "name": "empty", "entries": []}"#, ".").unwrap();
        let out = run_suite(&s, Caps::default(), Some(1), false).unwrap();
        assert_eq!((out.entries.len(), out.exit_code()), (0, 0));
    }

    #[test]
    fn wrong_expectation_is_a_mismatch() {
        let text = r#"{"format": 1, "entries": [
            {"name": "S4", "recipe": {"recipe": "symmetric", "n": 4}, "p": 3,
             "expected": {"order": {"value": 25, "tag": "[TRIVIAL]"},
                          "p-stable": {"value": true, "tag": "[TRIVIAL]"}}}]}"#;
        let out = run_suite(&Suite::parse(text, ".").unwrap(), Caps::default(), Some(2), false).unwrap();
        assert_eq!(out.exit_code(), 4);
        let e = &out.entries[0];
        assert_eq!(e.status, EntryStatus::Mismatch);
        assert!(!e.checks[0].ok && e.checks[1].ok);
    }

    #[test]
    fn tags_and_sources_are_validated() {
        let untagged = r#"{"format": 1, "entries": [{"name": "x", "recipe": {"recipe": "symmetric", "n": 3},
            "p": 3, "expected": {"order": {"value": 6}}}]}"#;
        assert!(Suite::parse(untagged, ".").is_err());
        let bad_tag = untagged.replace(r#"{"value": 6}"#, r#"{"value": 6, "tag": "[GUESS]"}"#);
        assert!(Suite::parse(&bad_tag, ".").is_err());
        let no_source = r#"{"format": 1, "entries": [{"name": "x", "p": 3, "expected": {}}]}"#;
        assert!(Suite::parse(no_source, ".").is_err());
        assert!(Suite::parse(r#"{"format": 2, "entries": []}"#, ".").is_err());
    }

    #[test]
    fn cap_overrun_is_reported() {
        let text = r#"{"format": 1, "entries": [{"name": "S7", "recipe": {"recipe": "symmetric", "n": 7},
            "p": 3, "expected": {"order": {"value": 5040, "tag": "[TRIVIAL]"}}}]}"#;
        let caps = Caps { order: 1000, ..Caps::default() };
        let out = run_suite(&Suite::parse(text, ".").unwrap(), caps, Some(1), false).unwrap();
        assert_eq!(out.entries[0].status, EntryStatus::CapExceeded);
        assert_eq!(out.exit_code(), 3);
    }

    #[test]
    fn bundled_suite_parses_and_check_names_round_trip() {
        let s = Suite::default_suite();
        assert_eq!(s.entries.len(), 19);
        for c in Check::ALL {
            assert_eq!(serde_json::to_value(c).unwrap(), c.name());
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
    }
}
