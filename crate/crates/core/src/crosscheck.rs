//! Sweep over all `(n, k)` up to a bound comparing the three computation paths.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::basis::{closed_form, StiefelIndex};
use crate::bigraded::{AtomRecord, CoeffAtom, FormalSum};
use crate::gysin::GysinTower;
use crate::motive::{motive_cohomology, stiefel_motive, Conventions};

pub const TOOL: &str = "stiefel-mw";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const K_RULE: &str = "1 <= k <= n-1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRange {
    pub n_max: u32,
    pub k_rule: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: u32,
    pub k: u32,
    pub a_eq_b: bool,
    pub a_eq_c: bool,
}

/// A disagreement at one `(n, k)`, as the two one-sided multiset differences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: u32,
    pub k: u32,
    pub only_in_a: Vec<AtomRecord>,
    pub only_in_other: Vec<AtomRecord>,
}

impl Mismatch {
    fn new(idx: StiefelIndex, a: &FormalSum, other: &FormalSum) -> Self {
        let (left, right) = a.diff(other);
        Mismatch { n: idx.n(), k: idx.k(), only_in_a: records(left), only_in_other: records(right) }
    }
}

fn records(atoms: Vec<CoeffAtom>) -> Vec<AtomRecord> {
    atoms.into_iter().collect::<FormalSum>().records()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConventionRun {
    pub conventions: Conventions,
    pub verdicts: Vec<Verdict>,
    pub all_a_eq_b: bool,
    pub all_a_eq_c: bool,
    pub a_eq_c_count: usize,
    /// Every A/B disagreement, in sweep order.
    pub a_b_mismatches: Vec<Mismatch>,
    /// Every A/C disagreement, in sweep order.
    pub a_c_mismatches: Vec<Mismatch>,
}

impl ConventionRun {
    pub fn first_a_c_mismatch(&self) -> Option<&Mismatch> {
        self.a_c_mismatches.first()
    }

    pub fn a_c_mismatch_at(&self, n: u32, k: u32) -> Option<&Mismatch> {
        self.a_c_mismatches.iter().find(|m| m.n == n && m.k == k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub range: SweepRange,
    pub pairs: usize,
    pub a_eq_b: bool,
    pub runs: Vec<ConventionRun>,
}

impl CrosscheckReport {
    /// Process exit status: 2 iff paths A and B disagree somewhere.
    pub fn exit_code(&self) -> i32 {
        if self.a_eq_b {
            0
        } else {
            2
        }
    }
}

struct PairResult {
    idx: StiefelIndex,
    a: FormalSum,
    b: FormalSum,
    c: Vec<FormalSum>,
}

fn evaluate_n(n: u32, conventions: &[Conventions]) -> Vec<PairResult> {
    let mut tower = GysinTower::new(n);
    (1..n)
        .map(|k| {
            let idx = StiefelIndex::new(n, k).expect("k in 1..n");
            PairResult {
                idx,
                a: closed_form(idx),
                b: tower.level(k).clone(),
                c: conventions.iter().map(|conv| motive_cohomology(&stiefel_motive(idx, conv))).collect(),
            }
        })
        .collect()
}

/// Runs the sweep for `2 <= n <= n_max`. The result does not depend on `parallel`.
pub fn crosscheck(n_max: u32, conventions: &[Conventions], parallel: bool) -> CrosscheckReport {
    let ns: Vec<u32> = (2..=n_max.min(crate::basis::MAX_N)).collect();
    let per_n: Vec<Vec<PairResult>> = if parallel {
        ns.par_iter().map(|&n| evaluate_n(n, conventions)).collect()
    } else {
        ns.iter().map(|&n| evaluate_n(n, conventions)).collect()
    };
    let results: Vec<PairResult> = per_n.into_iter().flatten().collect();

    let runs: Vec<ConventionRun> = conventions
        .iter()
        .enumerate()
        .map(|(ci, conv)| {
            let mut verdicts = Vec::with_capacity(results.len());
            let mut a_b_mismatches = Vec::new();
            let mut a_c_mismatches = Vec::new();
            for r in &results {
                let a_eq_b = r.a == r.b;
                let a_eq_c = r.a == r.c[ci];
                if !a_eq_b {
                    a_b_mismatches.push(Mismatch::new(r.idx, &r.a, &r.b));
                }
                if !a_eq_c {
                    a_c_mismatches.push(Mismatch::new(r.idx, &r.a, &r.c[ci]));
                }
                verdicts.push(Verdict { n: r.idx.n(), k: r.idx.k(), a_eq_b, a_eq_c });
            }
            let a_eq_c_count = verdicts.iter().filter(|v| v.a_eq_c).count();
            ConventionRun {
                conventions: *conv,
                all_a_eq_b: verdicts.iter().all(|v| v.a_eq_b),
                all_a_eq_c: a_eq_c_count == verdicts.len(),
                a_eq_c_count,
                verdicts,
                a_b_mismatches,
                a_c_mismatches,
            }
        })
        .collect();

    CrosscheckReport {
        tool: TOOL,
        version: VERSION,
        range: SweepRange { n_max, k_rule: K_RULE },
        pairs: results.len(),
        a_eq_b: results.iter().all(|r| r.a == r.b),
        runs,
    }
}

fn atom_list(records: &[AtomRecord]) -> String {
    FormalSum::from_records(records.iter().cloned()).without_labels().to_string()
}

pub fn render_plain(report: &CrosscheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} crosscheck: n <= {}, {}, {} pairs",
        report.tool, report.version, report.range.n_max, report.range.k_rule, report.pairs
    );
    for run in &report.runs {
        let _ = writeln!(out, "conventions: {}", run.conventions);
        let _ = writeln!(out, "{:>4} {:>4}  A=B    A=C", "n", "k");
        for v in &run.verdicts {
            let _ = writeln!(out, "{:>4} {:>4}  {:<5}  {}", v.n, v.k, v.a_eq_b, v.a_eq_c);
        }
        let _ = writeln!(
            out,
            "summary: A=B {} ({}/{}); A=C {} ({}/{})",
            run.all_a_eq_b,
            run.verdicts.iter().filter(|v| v.a_eq_b).count(),
            run.verdicts.len(),
            run.all_a_eq_c,
            run.a_eq_c_count,
            run.verdicts.len()
        );
        for (name, mismatches) in [("B", &run.a_b_mismatches), ("C", &run.a_c_mismatches)] {
            for m in mismatches {
                let _ = writeln!(
                    out,
                    "A!={name} at (n,k)=({},{}): only in A {}; only in {name} {}",
                    m.n,
                    m.k,
                    atom_list(&m.only_in_a),
                    atom_list(&m.only_in_other)
                );
            }
        }
    }
    let _ = writeln!(out, "verdict: {}", if report.a_eq_b { "ok" } else { "FAIL (A != B)" });
    out
}
