//! Rendering of tables and reports in plain text, JSON, CSV and LaTeX.

use std::fmt::Write as _;

use serde::Serialize;

use crate::basis::{BlockKind, Classifier, StiefelIndex, Subset, SubsetBasis};
use crate::bigraded::{Bidegree, FormalSum, RingKind};
use crate::crosscheck::{Mismatch, TOOL, VERSION};
use crate::groups::{evaluate_at, GroupExpr, VanishingFlags};
use crate::gysin::{euler_class, inductive_cohomology, EulerClass, EulerRecord};
use crate::motive::{motive_cohomology, stiefel_factors, stiefel_motive, Conventions, Factor, MotiveSum};

/// Lays out rows with every column but the last padded to a common width.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push(' ');
            }
            line.push_str(cell);
            if c + 1 < row.len() {
                let pad = widths[c] - cell.chars().count();
                line.extend(std::iter::repeat_n(' ', pad));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockRecord {
    pub kind: BlockKind,
    pub elements: Subset,
    pub label: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisRow {
    pub label: String,
    #[serde(rename = "I")]
    pub subset: Subset,
    #[serde(rename = "I_F")]
    pub free: Subset,
    #[serde(rename = "I_T")]
    pub torsion: Subset,
    pub p: i64,
    pub q: i64,
    pub braced: [i64; 2],
    pub ring: RingKind,
}

impl From<&SubsetBasis> for BasisRow {
    fn from(b: &SubsetBasis) -> Self {
        let (a, q) = b.degree.to_braced();
        BasisRow {
            label: b.label.clone(),
            subset: b.subset,
            free: b.free,
            torsion: b.torsion,
            p: b.degree.p,
            q: b.degree.q,
            braced: [a, q],
            ring: b.ring,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub n: u32,
    pub k: u32,
    pub blocks: Vec<BlockRecord>,
    pub rows: Vec<BasisRow>,
}

impl BasisReport {
    pub fn new(idx: StiefelIndex) -> Self {
        let classifier = Classifier::new(idx);
        let blocks = classifier
            .blocks()
            .iter()
            .map(|b| BlockRecord { kind: b.kind, elements: b.elements(), label: b.label() })
            .collect();
        let rows = classifier.all().iter().map(BasisRow::from).collect();
        BasisReport { tool: TOOL, version: VERSION, n: idx.n(), k: idx.k(), blocks, rows }
    }

    pub fn plain(&self) -> String {
        let mut rows = vec![["I", "I_F", "I_T", "(p,{q})", "b_I", "(p,q)", "ring"].map(String::from).to_vec()];
        for r in &self.rows {
            let d = Bidegree::new(r.p, r.q);
            rows.push(vec![
                r.subset.to_string(),
                r.free.to_string(),
                r.torsion.to_string(),
                d.braced_string(),
                r.label.clone(),
                d.to_string(),
                r.ring.to_string(),
            ]);
        }
        table(&rows)
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("label,I,I_F,I_T,p,q,braced_p,braced_q,ring\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                csv_field(&r.label),
                csv_field(&r.subset.to_string()),
                csv_field(&r.free.to_string()),
                csv_field(&r.torsion.to_string()),
                r.p,
                r.q,
                r.braced[0],
                r.braced[1],
                r.ring.tag()
            );
        }
        out
    }

    pub fn latex(&self, braced: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "% V_{}(A^{}), {} basis elements", self.k, self.n, self.rows.len());
        out.push_str("\\begin{tabular}{llll}\n");
        out.push_str("$I$ & $b_I$ & $d(I)$ & coefficients \\\\\n\\hline\n");
        for r in &self.rows {
            let degree = if braced {
                format!("({}, \\{{{}\\}})", r.braced[0], r.braced[1])
            } else {
                format!("({}, {})", r.p, r.q)
            };
            let set = if r.subset.is_empty() {
                "\\emptyset".to_string()
            } else {
                format!("\\{{{}\\}}", r.subset.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            };
            let label = if r.label == "1" { "1".to_string() } else { latex_label(&r.label) };
            let _ = writeln!(out, "${set}$ & ${label}$ & ${degree}$ & ${}^{{*,*}}(K)$ \\\\", r.ring.latex());
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    pub fn json(&self) -> String {
        to_json(self)
    }
}

fn latex_label(label: &str) -> String {
    label.replace('α', "\\alpha").replace('β', "\\beta")
}

#[derive(Debug, Clone, Serialize)]
pub struct MotiveReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub n: u32,
    pub k: u32,
    pub conventions: Conventions,
    pub factors: Vec<Factor>,
    pub motive: MotiveSum,
    pub cohomology: FormalSum,
    pub cohomology_rank: u64,
}

impl MotiveReport {
    pub fn new(idx: StiefelIndex, conventions: Conventions) -> Self {
        let motive = stiefel_motive(idx, &conventions);
        let cohomology = motive_cohomology(&motive);
        MotiveReport {
            tool: TOOL,
            version: VERSION,
            n: idx.n(),
            k: idx.k(),
            conventions,
            factors: stiefel_factors(idx),
            cohomology_rank: motive.cohomology_rank(),
            motive,
            cohomology,
        }
    }

    fn chain(&self) -> String {
        if self.factors.is_empty() {
            "T(0)[0]".to_string()
        } else {
            self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ⊗ ")
        }
    }

    pub fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "M(V_{}(A^{})) = {}", self.k, self.n, self.chain());
        let _ = writeln!(out, "conventions: {}", self.conventions);
        let _ = writeln!(out, "expansion: {}", self.motive);
        let _ = writeln!(out, "cohomology ({} atoms): {}", self.cohomology_rank, self.cohomology.without_labels());
        out
    }

    pub fn latex(&self) -> String {
        let chain = if self.factors.is_empty() {
            r"\widetilde{\mathbb{Z}}".to_string()
        } else {
            self.factors.iter().map(|f| f.latex()).collect::<Vec<_>>().join(r" \otimes ")
        };
        let terms: Vec<String> = self
            .motive
            .iter()
            .map(|(a, m)| {
                let base = match a.kind {
                    crate::motive::MotiveKind::Tate => r"\widetilde{\mathbb{Z}}",
                    crate::motive::MotiveKind::Cone => r"C_\eta",
                };
                let coeff = if m > 1 { format!("{m}") } else { String::new() };
                format!("{coeff}{base}({})[{}]", a.twist, a.shift)
            })
            .collect();
        let mut out = String::new();
        let _ = writeln!(out, "% conventions: {}", self.conventions);
        let _ = writeln!(
            out,
            "\\widetilde{{\\mathrm{{M}}}}(V_{{{}}}(\\mathbb{{A}}^{{{}}})) \\cong {chain} \\cong {}",
            self.k,
            self.n,
            terms.join(r" \oplus ")
        );
        out
    }

    pub fn json(&self) -> String {
        to_json(self)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupCell {
    pub p: i64,
    pub q: i64,
    pub text: String,
    pub group: GroupExpr,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupsReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub n: u32,
    pub k: u32,
    pub flags: VanishingFlags,
    pub cells: Vec<GroupCell>,
}

impl GroupsReport {
    /// Evaluates every `(p, q)` in the given ranges; zero cells are dropped
    /// unless `keep_zero`.
    pub fn new(
        idx: StiefelIndex,
        ps: std::ops::RangeInclusive<i64>,
        qs: std::ops::RangeInclusive<i64>,
        flags: VanishingFlags,
        keep_zero: bool,
    ) -> Self {
        let sum = crate::basis::closed_form(idx);
        let mut cells = Vec::new();
        for q in qs {
            for p in ps.clone() {
                let group = evaluate_at(&sum, Bidegree::new(p, q), &flags);
                if keep_zero || !group.is_zero() {
                    cells.push(GroupCell { p, q, text: group.to_string(), group });
                }
            }
        }
        GroupsReport { tool: TOOL, version: VERSION, n: idx.n(), k: idx.k(), flags, cells }
    }

    pub fn plain(&self, single: bool) -> String {
        if single {
            return self.cells.iter().map(|c| format!("{}\n", c.text)).collect();
        }
        let mut rows = vec![vec!["p".to_string(), "q".to_string(), "group".to_string()]];
        rows.extend(self.cells.iter().map(|c| vec![c.p.to_string(), c.q.to_string(), c.text.clone()]));
        table(&rows)
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("p,q,group\n");
        for c in &self.cells {
            let _ = writeln!(out, "{},{},{}", c.p, c.q, csv_field(&c.text));
        }
        out
    }

    pub fn latex(&self) -> String {
        let mut out = String::from("\\begin{tabular}{rrl}\n$p$ & $q$ & group \\\\\n\\hline\n");
        for c in &self.cells {
            let _ = writeln!(out, "{} & {} & ${}$ \\\\", c.p, c.q, c.group.latex());
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    pub fn json(&self) -> String {
        to_json(self)
    }
}

pub fn euler_plain(idx: StiefelIndex) -> String {
    match euler_class(idx) {
        EulerClass::Zero => format!("e(f_{{{},{}}}) = 0\n", idx.n(), idx.k()),
        EulerClass::EtaBeta { beta, degree } => {
            format!("e(f_{{{},{}}}) = eta*beta_{{{beta}}} in degree ({},{})\n", idx.n(), idx.k(), degree.p, degree.q)
        }
    }
}

pub fn euler_json(idx: StiefelIndex) -> String {
    to_json(&EulerRecord::new(idx))
}

/// Everything known about one Stiefel variety, from all three paths.
#[derive(Debug, Clone, Serialize)]
pub struct StiefelReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub n: u32,
    pub k: u32,
    pub conventions: Conventions,
    pub blocks: Vec<BlockRecord>,
    pub closed_form: FormalSum,
    pub inductive: FormalSum,
    pub motive: MotiveReport,
    pub a_eq_b: bool,
    pub a_eq_c: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_b_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_c_mismatch: Option<Mismatch>,
    pub euler: EulerRecord,
}

impl StiefelReport {
    pub fn new(idx: StiefelIndex, conventions: Conventions) -> Self {
        let basis = BasisReport::new(idx);
        let closed_form = crate::basis::closed_form(idx);
        let inductive = inductive_cohomology(idx);
        let motive = MotiveReport::new(idx, conventions);
        let mismatch = |other: &FormalSum| {
            (closed_form != *other).then(|| {
                let (a, b) = closed_form.diff(other);
                Mismatch {
                    n: idx.n(),
                    k: idx.k(),
                    only_in_a: a.into_iter().collect::<FormalSum>().records(),
                    only_in_other: b.into_iter().collect::<FormalSum>().records(),
                }
            })
        };
        let a_b_mismatch = mismatch(&inductive);
        let a_c_mismatch = mismatch(&motive.cohomology);
        StiefelReport {
            tool: TOOL,
            version: VERSION,
            n: idx.n(),
            k: idx.k(),
            conventions,
            blocks: basis.blocks,
            a_eq_b: a_b_mismatch.is_none(),
            a_eq_c: a_c_mismatch.is_none(),
            closed_form,
            inductive,
            motive,
            a_b_mismatch,
            a_c_mismatch,
            euler: EulerRecord::new(idx),
        }
    }

    pub fn plain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}: V_{}(A^{})", self.tool, self.version, self.k, self.n);
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.elements.to_string()).collect();
        let _ = writeln!(out, "free blocks: {}", blocks.join(" "));
        let _ = writeln!(out, "A closed form ({} atoms): {}", self.closed_form.atom_count(), self.closed_form);
        let _ = writeln!(out, "B Gysin induction:      {}", self.inductive);
        out.push_str(&self.motive.plain());
        let _ = writeln!(out, "A=B: {}", self.a_eq_b);
        let _ = writeln!(out, "A=C: {}", self.a_eq_c);
        let euler = match (&self.euler.expr, self.euler.degree) {
            (Some(expr), Some([p, q])) => format!("{expr} in degree ({p},{q})"),
            _ => "0".to_string(),
        };
        let _ = writeln!(out, "euler class of V_{}(A^{}) -> V_{}(A^{}): {euler}", self.k + 1, self.n, self.k, self.n);
        out
    }

    pub fn json(&self) -> String {
        to_json(self)
    }
}
