//! Bigraded bookkeeping shared by every computation path.
//!
//! A [`FormalSum`] is the additive shape of a cohomology module over a point:
//! a multiset of coefficient rings ([`RingKind`]) placed at bidegree shifts.
//! Nothing here knows about groups; reading off actual groups at a bidegree is
//! done in [`crate::groups`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A bidegree `(p, q)`: cohomological degree `p` and weight `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const ZERO: Bidegree = Bidegree { p: 0, q: 0 };

    pub const fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    /// The braced convention `(p, {q})` stands for `(p + q, q)`; this returns the
    /// braced first index, i.e. `(p - q, q)`.
    pub const fn to_braced(self) -> (i64, i64) {
        (self.p - self.q, self.q)
    }

    /// Inverse of [`Bidegree::to_braced`].
    pub const fn from_braced(p: i64, q: i64) -> Self {
        Bidegree { p: p + q, q }
    }

    /// Distance below the diagonal, `p - q`.
    pub const fn excess(self) -> i64 {
        self.p - self.q
    }

    pub fn braced_string(self) -> String {
        let (a, q) = self.to_braced();
        format!("({a},{{{q}}})")
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p + rhs.p, self.q + rhs.q)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, rhs: Bidegree) -> Bidegree {
        Bidegree::new(self.p - rhs.p, self.q - rhs.q)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.p, -self.q)
    }
}

/// Which coefficient ring a summand carries.
///
/// `Mw` is the full theory (MW-motivic cohomology, or any coconnected `E`),
/// `M` its η-cokernel (motivic cohomology, `E/η`), and `EtaM` its η-kernel.
/// The declaration order is the canonical sort order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RingKind {
    #[serde(rename = "MW")]
    Mw,
    #[serde(rename = "M")]
    M,
    #[serde(rename = "etaM")]
    EtaM,
}

impl RingKind {
    pub const ALL: [RingKind; 3] = [RingKind::Mw, RingKind::M, RingKind::EtaM];

    /// Cokernel of η: MW -> M, fixed on M and ηM.
    pub const fn coker_eta(self) -> RingKind {
        match self {
            RingKind::Mw | RingKind::M => RingKind::M,
            RingKind::EtaM => RingKind::EtaM,
        }
    }

    /// Kernel of η: MW -> ηM, fixed on M and ηM.
    pub const fn ker_eta(self) -> RingKind {
        match self {
            RingKind::Mw | RingKind::EtaM => RingKind::EtaM,
            RingKind::M => RingKind::M,
        }
    }

    /// Machine tag used in JSON and CSV.
    pub const fn tag(self) -> &'static str {
        match self {
            RingKind::Mw => "MW",
            RingKind::M => "M",
            RingKind::EtaM => "etaM",
        }
    }

    pub fn from_tag(s: &str) -> Option<RingKind> {
        match s {
            "MW" => Some(RingKind::Mw),
            "M" => Some(RingKind::M),
            "etaM" | "ηM" => Some(RingKind::EtaM),
            _ => None,
        }
    }

    /// Symbol for the coefficient ring over the base field.
    pub const fn ring_symbol(self) -> &'static str {
        match self {
            RingKind::Mw => "H_MW",
            RingKind::M => "H_M",
            RingKind::EtaM => "^ηH_M",
        }
    }

    pub const fn latex(self) -> &'static str {
        match self {
            RingKind::Mw => r"\mathrm{H}_{\mathrm{MW}}",
            RingKind::M => r"\mathrm{H}_{\mathrm{M}}",
            RingKind::EtaM => r"{^\eta\mathrm{H}_{\mathrm{M}}}",
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingKind::Mw => "MW",
            RingKind::M => "M",
            RingKind::EtaM => "ηM",
        })
    }
}

/// One summand: a coefficient ring placed at a shift. The label is diagnostic
/// and never takes part in comparisons.
#[derive(Debug, Clone)]
pub struct CoeffAtom {
    pub kind: RingKind,
    pub shift: Bidegree,
    pub label: Option<String>,
}

impl CoeffAtom {
    pub fn new(kind: RingKind, shift: Bidegree) -> Self {
        CoeffAtom { kind, shift, label: None }
    }

    pub fn labeled(kind: RingKind, shift: Bidegree, label: impl Into<String>) -> Self {
        CoeffAtom { kind, shift, label: Some(label.into()) }
    }

    pub fn key(&self) -> AtomKey {
        AtomKey { shift: self.shift, kind: self.kind }
    }
}

impl PartialEq for CoeffAtom {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CoeffAtom {}

impl fmt::Display for CoeffAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.shift)
    }
}

/// Sort key of an atom: shift first (p, then q), then kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomKey {
    pub shift: Bidegree,
    pub kind: RingKind,
}

#[derive(Debug, Clone, Default)]
struct Term {
    mult: u64,
    labels: Vec<String>,
}

/// A finite multiset of [`CoeffAtom`]s kept in canonical order.
#[derive(Debug, Clone, Default)]
pub struct FormalSum {
    terms: BTreeMap<AtomKey, Term>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    /// The unit: a single `MW@(0,0)`.
    pub fn unit() -> Self {
        let mut s = FormalSum::new();
        s.push(CoeffAtom::labeled(RingKind::Mw, Bidegree::ZERO, "1"));
        s
    }

    pub fn push(&mut self, atom: CoeffAtom) {
        let term = self.terms.entry(atom.key()).or_default();
        term.mult += 1;
        if let Some(label) = atom.label {
            insert_sorted(&mut term.labels, label);
        }
    }

    /// Adds `mult` copies of `kind@shift`.
    pub fn insert(&mut self, kind: RingKind, shift: Bidegree, mult: u64) {
        if mult == 0 {
            return;
        }
        self.terms.entry(AtomKey { shift, kind }).or_default().mult += mult;
    }

    /// Total number of atoms counted with multiplicity.
    pub fn atom_count(&self) -> u64 {
        self.terms.values().map(|t| t.mult).sum()
    }

    /// Number of distinct `(shift, kind)` entries.
    pub fn distinct_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, kind: RingKind, shift: Bidegree) -> u64 {
        self.terms.get(&AtomKey { shift, kind }).map_or(0, |t| t.mult)
    }

    /// Distinct entries in canonical order with their multiplicities.
    pub fn terms(&self) -> impl Iterator<Item = (AtomKey, u64)> + '_ {
        self.terms.iter().map(|(k, t)| (*k, t.mult))
    }

    /// Labels recorded for an entry, sorted.
    pub fn labels(&self, key: AtomKey) -> &[String] {
        self.terms.get(&key).map_or(&[], |t| t.labels.as_slice())
    }

    /// Every atom, repeated by multiplicity, in canonical order.
    pub fn atoms(&self) -> impl Iterator<Item = CoeffAtom> + '_ {
        self.terms.iter().flat_map(|(key, term)| {
            (0..term.mult).map(move |i| CoeffAtom {
                kind: key.kind,
                shift: key.shift,
                label: term.labels.get(i as usize).cloned(),
            })
        })
    }

    /// Shift every atom by `d`.
    pub fn shifted(&self, d: Bidegree) -> FormalSum {
        self.map_atoms(|key| AtomKey { shift: key.shift + d, kind: key.kind })
    }

    pub fn coker_eta(&self) -> FormalSum {
        self.map_atoms(|key| AtomKey { shift: key.shift, kind: key.kind.coker_eta() })
    }

    pub fn ker_eta(&self) -> FormalSum {
        self.map_atoms(|key| AtomKey { shift: key.shift, kind: key.kind.ker_eta() })
    }

    /// Appends `suffix` to every label (atoms without a label get `suffix` alone).
    pub fn with_label_suffix(&self, suffix: &str) -> FormalSum {
        let mut out = FormalSum::new();
        for (key, term) in &self.terms {
            let entry = out.terms.entry(*key).or_default();
            entry.mult += term.mult;
            for label in &term.labels {
                insert_sorted(&mut entry.labels, join_label(label, suffix));
            }
            for _ in term.labels.len() as u64..term.mult {
                insert_sorted(&mut entry.labels, suffix.to_string());
            }
        }
        out
    }

    pub fn without_labels(&self) -> FormalSum {
        let mut out = FormalSum::new();
        for (key, term) in &self.terms {
            out.insert(key.kind, key.shift, term.mult);
        }
        out
    }

    fn map_atoms(&self, f: impl Fn(AtomKey) -> AtomKey) -> FormalSum {
        let mut out = FormalSum::new();
        for (key, term) in &self.terms {
            let entry = out.terms.entry(f(*key)).or_default();
            entry.mult += term.mult;
            for label in &term.labels {
                insert_sorted(&mut entry.labels, label.clone());
            }
        }
        out
    }

    /// Multiset difference in both directions: `(self - other, other - self)`.
    pub fn diff(&self, other: &FormalSum) -> (Vec<CoeffAtom>, Vec<CoeffAtom>) {
        fn one_way(a: &FormalSum, b: &FormalSum) -> Vec<CoeffAtom> {
            let mut out = Vec::new();
            for (key, term) in &a.terms {
                let have = b.terms.get(key).map_or(0, |t| t.mult);
                for _ in have..term.mult {
                    out.push(CoeffAtom::new(key.kind, key.shift));
                }
            }
            out
        }
        (one_way(self, other), one_way(other, self))
    }

    /// Serialization records in canonical order.
    pub fn records(&self) -> Vec<AtomRecord> {
        self.terms
            .iter()
            .map(|(key, term)| AtomRecord {
                kind: key.kind,
                p: key.shift.p,
                q: key.shift.q,
                mult: term.mult,
                label: if term.labels.is_empty() { None } else { Some(term.labels.join(LABEL_SEPARATOR)) },
            })
            .collect()
    }

    pub fn from_records(records: impl IntoIterator<Item = AtomRecord>) -> FormalSum {
        let mut out = FormalSum::new();
        for r in records {
            let entry = out.terms.entry(AtomKey { shift: Bidegree::new(r.p, r.q), kind: r.kind }).or_default();
            entry.mult += r.mult;
            if let Some(label) = r.label {
                for part in label.split(LABEL_SEPARATOR) {
                    insert_sorted(&mut entry.labels, part.to_string());
                }
            }
        }
        out.terms.retain(|_, t| t.mult > 0);
        out
    }
}

const LABEL_SEPARATOR: &str = " + ";

fn insert_sorted(labels: &mut Vec<String>, label: String) {
    let at = labels.partition_point(|l| *l <= label);
    labels.insert(at, label);
}

fn join_label(prefix: &str, suffix: &str) -> String {
    if prefix == "1" {
        suffix.to_string()
    } else if suffix == "1" {
        prefix.to_string()
    } else {
        format!("{prefix}{suffix}")
    }
}

impl PartialEq for FormalSum {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((ka, ta), (kb, tb))| ka == kb && ta.mult == tb.mult)
    }
}

impl Eq for FormalSum {}

impl FromIterator<CoeffAtom> for FormalSum {
    fn from_iter<I: IntoIterator<Item = CoeffAtom>>(iter: I) -> Self {
        let mut s = FormalSum::new();
        for atom in iter {
            s.push(atom);
        }
        s
    }
}

impl Add<&FormalSum> for &FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for FormalSum {
    type Output = FormalSum;
    fn add(mut self, rhs: FormalSum) -> FormalSum {
        self += &rhs;
        self
    }
}

impl std::ops::AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, rhs: &FormalSum) {
        for (key, term) in &rhs.terms {
            let entry = self.terms.entry(*key).or_default();
            entry.mult += term.mult;
            for label in &term.labels {
                insert_sorted(&mut entry.labels, label.clone());
            }
        }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (key, term)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}@{}", key.kind, key.shift)?;
            if term.mult > 1 {
                write!(f, " ×{}", term.mult)?;
            }
        }
        f.write_str("}")
    }
}

/// Wire form of one `FormalSum` entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomRecord {
    pub kind: RingKind,
    pub p: i64,
    pub q: i64,
    pub mult: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Serialize for FormalSum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalSum {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<AtomRecord>::deserialize(deserializer).map(FormalSum::from_records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(atoms: &[(RingKind, i64, i64)]) -> FormalSum {
        atoms.iter().map(|&(k, p, q)| CoeffAtom::new(k, Bidegree::new(p, q))).collect()
    }

    use RingKind::{EtaM, Mw, M};

    #[test]
    fn shift_examples() {
        let s = sum(&[(Mw, 0, 0)]);
        assert_eq!(s.shifted(Bidegree::ZERO), s);

        let s = sum(&[(Mw, 0, 0), (M, 13, 7)]);
        assert_eq!(s.shifted(Bidegree::new(16, 9)), sum(&[(Mw, 16, 9), (M, 29, 16)]));

        assert_eq!(FormalSum::new().shifted(Bidegree::new(5, 3)), FormalSum::new());
    }

    #[test]
    fn add_examples() {
        let unit = sum(&[(Mw, 0, 0)]);
        assert_eq!(&unit + &FormalSum::new(), unit);

        let twice = &unit + &unit;
        assert_eq!(twice.multiplicity(Mw, Bidegree::ZERO), 2);
        assert_eq!(twice.distinct_len(), 1);

        let s = &sum(&[(M, 9, 5)]) + &sum(&[(EtaM, 7, 4)]);
        let order: Vec<String> = s.atoms().map(|a| a.to_string()).collect();
        assert_eq!(order, ["ηM@(7,4)", "M@(9,5)"]);
    }

    #[test]
    fn eta_kind_maps() {
        assert_eq!(sum(&[(Mw, 0, 0)]).coker_eta(), sum(&[(M, 0, 0)]));
        assert_eq!(sum(&[(M, 13, 7)]).coker_eta(), sum(&[(M, 13, 7)]));
        assert_eq!(sum(&[(EtaM, 11, 6)]).coker_eta(), sum(&[(EtaM, 11, 6)]));

        assert_eq!(sum(&[(Mw, 0, 0)]).ker_eta(), sum(&[(EtaM, 0, 0)]));
        assert_eq!(sum(&[(M, 13, 7)]).ker_eta(), sum(&[(M, 13, 7)]));
        assert_eq!(sum(&[(EtaM, 24, 13)]).ker_eta(), sum(&[(EtaM, 24, 13)]));
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let a: FormalSum = [CoeffAtom::labeled(Mw, Bidegree::new(5, 3), "β_{2}")].into_iter().collect();
        let b: FormalSum = [CoeffAtom::new(Mw, Bidegree::new(5, 3))].into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn diff_reports_both_sides() {
        let a = sum(&[(Mw, 0, 0), (M, 9, 5)]);
        let b = sum(&[(Mw, 0, 0), (M, 10, 5)]);
        let (left, right) = a.diff(&b);
        assert_eq!(left, vec![CoeffAtom::new(M, Bidegree::new(9, 5))]);
        assert_eq!(right, vec![CoeffAtom::new(M, Bidegree::new(10, 5))]);
    }

    #[test]
    fn json_shape() {
        let mut s = sum(&[(EtaM, 7, 4), (Mw, 0, 0), (Mw, 0, 0)]);
        s.push(CoeffAtom::labeled(M, Bidegree::new(9, 5), "α_{4}"));
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"[{"kind":"MW","p":0,"q":0,"mult":2},{"kind":"etaM","p":7,"q":4,"mult":1},{"kind":"M","p":9,"q":5,"mult":1,"label":"α_{4}"}]"#
        );
        let back: FormalSum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.records(), s.records());
    }

    #[test]
    fn braced_conversion() {
        let d = Bidegree::new(16, 9);
        assert_eq!(d.to_braced(), (7, 9));
        assert_eq!(d.braced_string(), "(7,{9})");
        let (a, q) = d.to_braced();
        assert_eq!(Bidegree::from_braced(a, q), d);
    }
}
