//! Exhaustive sweeps over all coprime `(p, q)` with `2 ≤ p ≤ pmax`.
//!
//! Work is split by `p`; each task folds its `q` range into a partial report
//! and the partials are merged in increasing `p`, so the aggregate does not
//! depend on the number of workers. With the `parallel` feature the tasks run
//! on a rayon pool of the requested size; without it every execution mode
//! falls back to a sequential loop.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::farey::{bfs_minimal_path, minimal_path};
use crate::filling::{lisca_witness, sum_qhb_decide};
use crate::homology::chain_linking_matrix;
use crate::rational::LensSpace;
use crate::tight::{count_tight_formula, enumerate_tight, verify_no_sphere_factor, Orderings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    /// Rational ball fillings of `L(p,q) # L(p,p-q)`; any yes is a counterexample.
    SumQhb,
    /// Enumerated tight structures against `∏|aᵢ+1|`.
    TightCount,
    /// Menke candidates never hit `0` or `-p/q` and are never empty.
    MenkeNosphere,
    /// Greedy path against the BFS oracle, plus the edge-count formula.
    Geodesic,
    /// `|det|` of the chain plumbing equals `p`.
    ChainDet,
    /// Counts lens spaces passing Lisca's criterion; no counterexamples.
    Lisca,
}

impl SweepKind {
    pub const ALL: [SweepKind; 6] = [
        SweepKind::SumQhb,
        SweepKind::TightCount,
        SweepKind::MenkeNosphere,
        SweepKind::Geodesic,
        SweepKind::ChainDet,
        SweepKind::Lisca,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::SumQhb => "sum-qhb",
            SweepKind::TightCount => "tight-count",
            SweepKind::MenkeNosphere => "menke-nosphere",
            SweepKind::Geodesic => "geodesic",
            SweepKind::ChainDet => "chain-det",
            SweepKind::Lisca => "lisca",
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = SweepKind::ALL.iter().map(|k| k.name()).collect();
            invalid(format!("unknown sweep {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel { jobs: usize },
}

impl Execution {
    pub fn with_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { jobs }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    #[serde(with = "string_int")]
    pub p: i64,
    #[serde(with = "string_int")]
    pub q: i64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub counterexamples: Vec<Counterexample>,
    #[serde(with = "string_int")]
    pub instances: i64,
    pub kind: SweepKind,
    #[serde(with = "string_int")]
    pub pmax: i64,
    /// Instances answering yes (sum-qhb, lisca) or with a nonempty check
    /// (menke-nosphere: virtually overtwisted structures examined).
    #[serde(with = "string_int")]
    pub yes: i64,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sweep {} pmax={}: {} instances, {} yes, {} counterexamples",
            self.kind,
            self.pmax,
            self.instances,
            self.yes,
            self.counterexamples.len()
        )?;
        for c in &self.counterexamples {
            write!(f, "\n  counterexample L({},{}): {}", c.p, c.q, c.detail)?;
        }
        Ok(())
    }
}

mod string_int {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &i64, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<i64, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Default)]
struct Partial {
    instances: i64,
    yes: i64,
    counterexamples: Vec<Counterexample>,
}

/// Outcome of one instance: `Ok(counted)` or a counterexample description.
fn check(kind: SweepKind, p: i64, q: i64) -> std::result::Result<bool, String> {
    let lens = || LensSpace::new(p, q).map_err(|e| e.to_string());
    match kind {
        SweepKind::SumQhb => match sum_qhb_decide(p, q) {
            Ok(false) => Ok(false),
            Ok(true) => Err("both summands admit rational ball fillings".into()),
            Err(e) => Err(e.to_string()),
        },
        SweepKind::Lisca => Ok(lisca_witness(&lens()?).is_some()),
        SweepKind::TightCount => {
            let l = lens()?;
            let listed = enumerate_tight(&l).map_err(|e| e.to_string())?.len() as u64;
            let formula = count_tight_formula(&l).map_err(|e| e.to_string())?;
            if listed == formula {
                Ok(false)
            } else {
                Err(format!("enumerated {listed}, formula {formula}"))
            }
        }
        SweepKind::MenkeNosphere => {
            let l = lens()?;
            let report = verify_no_sphere_factor(&l, Orderings::Canonical).map_err(|e| e.to_string())?;
            if report.holds() {
                Ok(report.structures > 0)
            } else if let Some(w) = report.witnesses.first() {
                Err(format!(
                    "signs {} vertex {} candidate {}",
                    w.signs, w.vertex.r2, w.slope
                ))
            } else {
                Err(format!("empty candidate set at {}", report.empty_candidate_sets[0].r2))
            }
        }
        SweepKind::Geodesic => {
            let l = lens()?;
            let greedy = minimal_path(&l).map_err(|e| e.to_string())?;
            let oracle = bfs_minimal_path(&l).map_err(|e| e.to_string())?;
            if greedy != oracle {
                return Err(format!("greedy {:?} != bfs {:?}", greedy.vertices(), oracle.vertices()));
            }
            let cf = l.neg_cf().map_err(|e| e.to_string())?;
            let n = cf.len() as i64;
            let expected = cf.coeffs().iter().map(|a| a.abs()).sum::<i64>() - 2 * n + 2;
            if greedy.edge_count() as i64 != expected {
                return Err(format!("{} edges, formula {expected}", greedy.edge_count()));
            }
            Ok(false)
        }
        SweepKind::ChainDet => {
            let cf = lens()?.neg_cf().map_err(|e| e.to_string())?;
            let det = chain_linking_matrix(&cf).determinant().abs();
            if det == p.into() {
                Ok(false)
            } else {
                Err(format!("|det| = {det}"))
            }
        }
    }
}

fn sweep_p(kind: SweepKind, p: i64) -> Partial {
    let mut part = Partial::default();
    for q in (1..p).filter(|q| p.gcd(q) == 1) {
        part.instances += 1;
        match check(kind, p, q) {
            Ok(counted) => part.yes += counted as i64,
            Err(detail) => part.counterexamples.push(Counterexample { p, q, detail }),
        }
    }
    part
}

#[cfg(feature = "parallel")]
fn partials(kind: SweepKind, pmax: i64, exec: Execution) -> Result<Vec<Partial>> {
    use rayon::prelude::*;
    match exec {
        Execution::Sequential => Ok((2..=pmax).map(|p| sweep_p(kind, p)).collect()),
        Execution::Parallel { jobs } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
            Ok(pool.install(|| (2..=pmax).into_par_iter().map(|p| sweep_p(kind, p)).collect()))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn partials(kind: SweepKind, pmax: i64, _exec: Execution) -> Result<Vec<Partial>> {
    Ok((2..=pmax).map(|p| sweep_p(kind, p)).collect())
}

pub fn run_sweep(kind: SweepKind, pmax: i64, exec: Execution) -> Result<SweepReport> {
    if pmax < 2 {
        return Err(invalid(format!("pmax must be at least 2, got {pmax}")));
    }
    if let Execution::Parallel { jobs: 0 } = exec {
        return Err(invalid("jobs must be at least 1"));
    }
    let mut report = SweepReport {
        counterexamples: Vec::new(),
        instances: 0,
        kind,
        pmax,
        yes: 0,
    };
    for part in partials(kind, pmax, exec)? {
        report.instances += part.instances;
        report.yes += part.yes;
        report.counterexamples.extend(part.counterexamples);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in SweepKind::ALL {
            assert_eq!(k.name().parse::<SweepKind>().unwrap(), k);
        }
        assert!("tight".parse::<SweepKind>().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        for k in SweepKind::ALL {
            let r = run_sweep(k, 30, Execution::Sequential).unwrap();
            assert!(r.passed(), "{r}");
            // coprime pairs with 2 <= p <= 30
            let expected: i64 = (2..=30i64)
                .map(|p| (1..p).filter(|q| p.gcd(q) == 1).count() as i64)
                .sum();
            assert_eq!(r.instances, expected);
        }
    }

    #[test]
    fn lisca_sweep_counts_yes() {
        // squares 4, 9, 16, 25 with their oriented representatives
        let r = run_sweep(SweepKind::Lisca, 25, Execution::Sequential).unwrap();
        let brute = (2..=25i64)
            .flat_map(|p| (1..p).map(move |q| (p, q)))
            .filter_map(|(p, q)| LensSpace::new(p, q).ok())
            .filter(|l| lisca_witness(l).is_some())
            .count() as i64;
        assert_eq!(r.yes, brute);
        assert!(r.yes > 0);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let a = run_sweep(SweepKind::TightCount, 60, Execution::Sequential).unwrap();
        let b = run_sweep(SweepKind::TightCount, 60, Execution::Parallel { jobs: 4 }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(run_sweep(SweepKind::SumQhb, 1, Execution::Sequential).is_err());
        assert!(run_sweep(SweepKind::SumQhb, 10, Execution::Parallel { jobs: 0 }).is_err());
    }
}
