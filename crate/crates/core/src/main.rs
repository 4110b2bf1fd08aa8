use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use pstab::constructions::{qdp, Recipe};
use pstab::corpus::{run_suite, Suite};
use pstab::engine::spec::GroupSpec;
use pstab::engine::Group;
use pstab::fusion::fusion_system;
use pstab::lie::{self, ClassifierQuery};
use pstab::report::{envelope, error_envelope, exit_code};
use pstab::stability::{
    has_subgroup_qdp_like, involves_qdp, is_p_stable, is_p_stable_def1968, is_section_p_stable, verify_section_witness,
    verify_witness, StabilityVerdict,
};
use pstab::{Caps, Error, Result};

/// Exact p-stability, Qd(p) involvement and fusion-system checks for finite groups.
#[derive(Parser)]
#[command(name = "pstab", version)]
struct Cli {
    #[command(flatten)]
    caps: CapArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CapArgs {
    /// Largest group order enumerated (default from ORDER_CAP, else 200000).
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    /// Largest permutation degree (default from DEGREE_CAP, else 4096).
    #[arg(long, global = true)]
    degree_cap: Option<usize>,
    /// Largest order whose subgroups are enumerated (default from SUBGROUP_CAP, else 200000).
    #[arg(long, global = true)]
    subgroup_cap: Option<usize>,
}

#[derive(Args)]
struct GroupArgs {
    /// Group-spec document.
    #[arg(long, conflicts_with = "recipe", required_unless_present = "recipe")]
    group: Option<PathBuf>,
    /// A recipe, as `name:key=value,...` or a JSON object.
    #[arg(long)]
    recipe: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the group-spec document of a recipe.
    Construct {
        #[arg(long)]
        recipe: String,
        /// Also write the document to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stability and involvement checks on one group.
    Analyze {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: u64,
        /// p-stable, p-stable-1968, section-p-stable, involves-qdp, contains-qdp-subgroup or all.
        #[arg(long, default_value = "all")]
        check: Vec<String>,
        /// Include wall-clock timings (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// The fusion system of a group on a Sylow subgroup.
    Fusion {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        p: u64,
        /// Full report with the table of subgroup classes.
        #[arg(long)]
        report: bool,
    },
    /// Abelian-Sylow and Qd(p) verdicts for a finite simple group.
    Classify {
        /// PSL, PSU, PSp, Omega+, Omega-, B, C, D, 2D, E6, E7, E8, 2E6, F4, 2F4, G2, 2G2, 3D4, 2B2, A, or a sporadic name.
        #[arg(long, required_unless_present = "selfcheck")]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, required_unless_present = "selfcheck")]
        p: Option<u64>,
        /// Also build the group and compare with direct computation.
        #[arg(long)]
        crosscheck: bool,
        /// Run the arithmetic identity grids and the verdict sweep.
        #[arg(long, conflicts_with_all = ["family", "crosscheck"])]
        selfcheck: bool,
    },
    /// Run a corpus suite and compare against its expectations.
    Corpus {
        /// `default` or a path to a suite file.
        #[arg(long, default_value = "default")]
        suite: String,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        timings: bool,
    },
}

struct Outcome {
    result: Value,
    summary: String,
    code: i32,
}

fn ok(result: Value, summary: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { result, summary: summary.into(), code: 0 })
}

fn load_group(args: &GroupArgs, caps: Caps) -> Result<(Group, Value)> {
    let (spec, source) = match (&args.group, &args.recipe) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            (GroupSpec::parse(&text)?, json!({ "group": path }))
        }
        (None, Some(r)) => {
            let recipe: Recipe = r.parse()?;
            (recipe.spec(caps)?, json!({ "recipe": recipe }))
        }
        (None, None) => return Err(Error::bad("one of --group or --recipe is required")),
    };
    let name = spec.name().to_string();
    Ok((spec.build(caps)?.with_label(name), source))
}

fn group_json(g: &Group) -> Value {
    json!({ "name": g.label(), "order": g.order(), "degree": g.degree() })
}

fn verdict_json(g: &Group, v: &StabilityVerdict, p: u64) -> Value {
    let mut j = v.to_json(g);
    if let Some(w) = &v.witness {
        j["witness_verified"] = json!(verify_witness(g, w, p));
    }
    j
}

const ANALYZE_CHECKS: [&str; 5] = ["p-stable", "p-stable-1968", "section-p-stable", "involves-qdp", "contains-qdp-subgroup"];

fn analyze(g: &Group, p: u64, checks: &[String], timings: bool) -> Result<Outcome> {
    let mut wanted: Vec<&str> = Vec::new();
    for c in checks {
        match c.as_str() {
            "all" => wanted.extend(ANALYZE_CHECKS),
            other => wanted.push(ANALYZE_CHECKS.iter().find(|&&k| k == other).ok_or_else(|| Error::bad(format!("unknown check {other:?}")))?),
        }
    }
    wanted.sort_unstable();
    wanted.dedup();
    let mut out = Map::new();
    let mut times = Map::new();
    let mut lines = Vec::new();
    for check in wanted {
        let start = Instant::now();
        let value = match check {
            "p-stable" => verdict_json(g, &is_p_stable(g, p)?, p),
            "p-stable-1968" => verdict_json(g, &is_p_stable_def1968(g, p)?, p),
            "section-p-stable" => verdict_json(g, &is_section_p_stable(g, p)?, p),
            "involves-qdp" => match involves_qdp(g, p)? {
                Some(w) => {
                    let verified = verify_section_witness(g, &w, &qdp(p)?);
                    json!({ "involves": true, "witness": w.to_json(g), "witness_verified": verified })
                }
                None => json!({ "involves": false, "witness": null }),
            },
            "contains-qdp-subgroup" => {
                let h = has_subgroup_qdp_like(g, &qdp(p)?)?;
                json!({
                    "contains": h.is_some(),
                    "generators": h.map(|h| h.generators().iter().map(|&x| g.perm(x).to_cycle_string()).collect::<Vec<_>>()),
                })
            }
            _ => unreachable!(),
        };
        let headline = ["stable", "involves", "contains"].iter().find_map(|k| value.get(*k).map(|v| format!("{k}={v}")));
        lines.push(format!("{check}: {}", headline.unwrap_or_default()));
        out.insert(check.to_string(), value);
        times.insert(check.to_string(), json!(start.elapsed().as_millis()));
    }
    let mut result = json!({ "group": group_json(g), "p": p, "checks": out });
    if timings {
        result["timings_ms"] = Value::Object(times);
    }
    ok(result, format!("{} (order {}), p = {p}: {}", g.label(), g.order(), lines.join(", ")))
}

fn fusion(g: Group, p: u64, full: bool) -> Result<Outcome> {
    let g = Arc::new(g);
    let f = fusion_system(g.clone(), p)?;
    let stable = f.is_p_stable_fusion();
    let qdp_free = if p == 2 { Value::Null } else { json!(f.is_qdp_free()?) };
    let op = f.op_f();
    let sol = f.is_soluble()?;
    let mut result = json!({
        "group": group_json(&g),
        "p": p,
        "sylow_order": f.sylow().order(),
        "classes": f.class_count(),
        "p_stable": stable.stable,
        "qdp_free": qdp_free,
        "op_order": op.order(),
        "soluble": sol.soluble,
        "constrained": f.is_constrained(),
        "sylow_axiom": f.sylow_axiom_holds(),
    });
    if full {
        result["report"] = f.report()?;
    }
    let summary = format!(
        "{} at p = {p}: |P| = {}, {} classes, p-stable = {}, Qd(p)-free = {qdp_free}, |O_p(F)| = {}, soluble = {}",
        g.label(),
        f.sylow().order(),
        f.class_count(),
        stable.stable,
        op.order(),
        sol.soluble
    );
    ok(result, summary)
}

fn classify(family: &str, n: Option<usize>, q: Option<u64>, p: u64, crosscheck: bool, caps: Caps) -> Result<Outcome> {
    let query = ClassifierQuery::new(family.parse()?, n, q, p);
    let verdict = lie::qdp_verdict(&query)?;
    let order = query.group_order()?;
    let mut result = verdict.to_json(&query);
    result["order"] = json!(order.to_string());
    result["sylow_exponent"] = json!(query.sylow_exponent()?);
    let mut summary = format!(
        "{} p = {p}: Sylow {}, {}, witness {}, rationale {}",
        query.family,
        if verdict.sylow_abelian { "Abelian" } else { "non-Abelian" },
        if verdict.p_stable { "p-stable" } else { "not p-stable" },
        verdict.minimal_witness.label(p),
        verdict.rationale
    );
    if verdict.boundary {
        summary.push_str(" (boundary case)");
    }
    let mut code = 0;
    if crosscheck {
        let c = lie::verdict_crosscheck(&query, caps)?;
        summary.push_str(&format!("; crosscheck tested = {}, agrees = {}", c.tested || c.sylow_only, c.agrees));
        if !c.agrees {
            code = 4;
        }
        result["crosscheck"] = c.to_json(&query);
    }
    Ok(Outcome { result, summary, code })
}

fn run(cli: &Cli, caps: Caps) -> (Value, Result<Outcome>) {
    let inputs;
    let r = match &cli.command {
        Command::Construct { recipe, out } => {
            inputs = json!({ "recipe": recipe });
            (|| {
                let recipe: Recipe = recipe.parse()?;
                let spec = recipe.spec(caps)?;
                let g = spec.build(caps)?;
                let doc = spec.to_json();
                if let Some(path) = out {
                    std::fs::write(path, spec.to_json_string() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                }
                ok(doc, format!("{}: order {}, degree {}", spec.name(), g.order(), g.degree()))
            })()
        }
        Command::Analyze { group, p, check, timings } => {
            inputs = json!({ "group": group.group, "recipe": group.recipe, "p": p, "check": check });
            load_group(group, caps).and_then(|(g, _)| analyze(&g, *p, check, *timings))
        }
        Command::Fusion { group, p, report } => {
            inputs = json!({ "group": group.group, "recipe": group.recipe, "p": p, "report": report });
            load_group(group, caps).and_then(|(g, _)| fusion(g, *p, *report))
        }
        Command::Classify { selfcheck: true, .. } => {
            inputs = json!({ "selfcheck": true });
            lie::selfcheck().map(|(passed, v)| Outcome {
                result: v,
                summary: format!("selfcheck {}", if passed { "passed" } else { "FAILED" }),
                code: if passed { 0 } else { 4 },
            })
        }
        Command::Classify { family, n, q, p, crosscheck, .. } => {
            inputs = json!({ "family": family, "n": n, "q": q, "p": p, "crosscheck": crosscheck });
            let family = family.as_deref().unwrap_or_default();
            classify(family, *n, *q, p.unwrap_or_default(), *crosscheck, caps)
        }
        Command::Corpus { suite, jobs, timings } => {
            inputs = json!({ "suite": suite, "jobs": jobs, "timings": timings });
            Suite::load(suite).and_then(|s| run_suite(&s, caps, *jobs, *timings)).map(|o| {
                let mut summary = format!(
                    "suite {}: {} entries, {} passed, {} mismatched, {} over caps, {} errors",
                    o.suite,
                    o.entries.len(),
                    o.passed,
                    o.mismatched,
                    o.cap_exceeded,
                    o.errors
                );
                for e in o.entries.iter().filter(|e| e.status != pstab::corpus::EntryStatus::Pass) {
                    summary.push_str(&format!("\n  {} (p = {}): {:?}", e.name, e.p, e.status));
                    for c in e.checks.iter().filter(|c| !c.ok) {
                        summary.push_str(&format!("\n    {}: expected {}, got {}", c.check.name(), c.expected, c.actual.clone().unwrap_or(Value::Null)));
                    }
                }
                Outcome { code: o.exit_code(), result: serde_json::to_value(&o).unwrap_or(Value::Null), summary }
            })
        }
    };
    (inputs, r)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct { .. } => "construct",
        Command::Analyze { .. } => "analyze",
        Command::Fusion { .. } => "fusion",
        Command::Classify { .. } => "classify",
        Command::Corpus { .. } => "corpus",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::from_env().overridden(cli.caps.order_cap, cli.caps.degree_cap, cli.caps.subgroup_cap);
    let name = command_name(&cli.command);
    let (inputs, outcome) = run(&cli, caps);
    let (doc, summary, code) = match outcome {
        Ok(o) => {
            // Group-spec documents are printed bare so they re-parse as input.
            let doc = if name == "construct" { o.result } else { envelope(name, inputs, caps, o.result) };
            (doc, o.summary, o.code)
        }
        Err(e) => (error_envelope(name, inputs, caps, &e), format!("error: {e}"), exit_code(&e)),
    };
    println!("{}", serde_json::to_string_pretty(&doc).expect("json values serialize"));
    eprintln!("{summary}");
    ExitCode::from(code as u8)
}
