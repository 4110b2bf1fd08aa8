//! Arithmetic self-checks: identity grids, verdict invariants and the two Abelian-Sylow routes.

use serde::Serialize;
use serde_json::{json, Value};

use super::classify::{exceptional_weyl_exponent, qdp_verdict, sylow_abelian_verdict, ClassifierFamily, ClassifierQuery, ClassifierVerdict};
use super::identities::run_grid;
use super::sporadic::SPORADIC;
use crate::engine::field::prime_power;
use crate::error::Result;

/// Abelian Sylow forces stability, and stability is exactly non-involvement.
pub fn verdict_invariants_hold(v: &ClassifierVerdict) -> bool {
    (!v.sylow_abelian || (!v.involves_qdp && v.p_stable)) && v.p_stable == !v.involves_qdp
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub queries: usize,
    pub rejected: usize,
    pub invariant_violations: Vec<ClassifierQuery>,
    pub weyl_disagreements: Vec<ClassifierQuery>,
    pub boundary_queries: usize,
}

/// Every valid query over the families, `n <= max_n`, prime powers `q <= max_q`, and `primes`,
/// plus every sporadic group and alternating degrees up to `max_alt`.
pub fn sweep(max_n: usize, max_q: u64, primes: &[u64], max_alt: usize) -> Result<SweepReport> {
    let mut out = SweepReport::default();
    let mut queries = Vec::new();
    let qs: Vec<u64> = (2..=max_q).filter(|&q| prime_power(q).is_some()).collect();
    for &p in primes {
        for fam in ClassifierFamily::lie_families() {
            let ns: Vec<Option<usize>> = if fam.needs_n() { (1..=max_n).map(Some).collect() } else { vec![None] };
            for &n in &ns {
                for &q in &qs {
                    queries.push(ClassifierQuery::new(fam.clone(), n, Some(q), p));
                }
            }
        }
        for s in &SPORADIC {
            queries.push(ClassifierQuery::new(ClassifierFamily::Sporadic(s.name), None, None, p));
        }
        for n in 5..=max_alt {
            queries.push(ClassifierQuery::new(ClassifierFamily::Alternating, Some(n), None, p));
        }
    }
    for q in queries {
        let v = match qdp_verdict(&q) {
            Ok(v) => v,
            Err(_) => {
                out.rejected += 1;
                continue;
            }
        };
        out.queries += 1;
        out.boundary_queries += v.boundary as usize;
        if !verdict_invariants_hold(&v) || sylow_abelian_verdict(&q)? != v.sylow_abelian {
            out.invariant_violations.push(q.clone());
        }
        if let Some(d) = exceptional_weyl_exponent(&q)? {
            if (d == 0) != v.sylow_abelian {
                out.weyl_disagreements.push(q);
            }
        }
    }
    Ok(out)
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.invariant_violations.is_empty() && self.weyl_disagreements.is_empty()
    }
}

/// The identity grid over `n <= 10`, `q <= 9`, `p` in `{3, 5, 7, 11, 13}`, and the verdict sweep.
pub fn selfcheck() -> Result<(bool, Value)> {
    let grid = run_grid(10, 9, &[3, 5, 7, 11, 13])?;
    let sw = sweep(12, 32, &[3, 5, 7, 11, 13], 200)?;
    let passed = grid.passed() && sw.passed();
    Ok((passed, json!({ "passed": passed, "identity_grid": grid.to_json(), "verdict_sweep": sw })))
}
