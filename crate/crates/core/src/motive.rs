//! Formal MW-motives built from Tate atoms `T(a)[b]` and η-cone atoms `C(a)[b]`.
//!
//! The Stiefel decomposition expresses `M(V_k(A^n))` as a tensor product of
//! half-sphere motives `HS_m` and at most one sphere motive. Expanding that
//! product needs a rule for `C ⊗ C`; the decomposition is a direct sum of Tate
//! and cone atoms, so `C ⊗ C` must split as two cones, `C ⊕ C(s)[t]`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::basis::StiefelIndex;
use crate::bigraded::{Bidegree, CoeffAtom, FormalSum, RingKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MotiveKind {
    #[serde(rename = "T")]
    Tate,
    #[serde(rename = "C")]
    Cone,
}

/// `T(twist)[shift]` or `C(twist)[shift]`. Field order gives the canonical sort
/// (shift, twist, kind).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MotiveAtom {
    pub shift: i64,
    pub twist: i64,
    pub kind: MotiveKind,
}

impl MotiveAtom {
    pub const UNIT: MotiveAtom = MotiveAtom::tate(0, 0);

    pub const fn tate(twist: i64, shift: i64) -> Self {
        MotiveAtom { shift, twist, kind: MotiveKind::Tate }
    }

    pub const fn cone(twist: i64, shift: i64) -> Self {
        MotiveAtom { shift, twist, kind: MotiveKind::Cone }
    }
}

impl fmt::Display for MotiveAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            MotiveKind::Tate => 'T',
            MotiveKind::Cone => 'C',
        };
        write!(f, "{letter}({})[{}]", self.twist, self.shift)
    }
}

/// Placement of the cone summand in `HS_{2k+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeShift {
    /// `C(2k)[4k]`, as literally displayed in the decomposition.
    Paper,
    /// `C(2k)[4k-1]`, the placement consistent with the `V_2` tables.
    Derived,
}

impl ConeShift {
    pub const fn delta(self) -> i64 {
        match self {
            ConeShift::Paper => 0,
            ConeShift::Derived => -1,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            ConeShift::Paper => "paper",
            ConeShift::Derived => "derived",
        }
    }
}

impl FromStr for ConeShift {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(ConeShift::Paper),
            "derived" => Ok(ConeShift::Derived),
            other => Err(Error::Parse(format!("unknown cone shift {other:?} (expected paper or derived)"))),
        }
    }
}

/// Extra `(twist, shift)` of the second cone in `C ⊗ C = C ⊕ C(s)[t]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", from = "[i64; 2]")]
pub struct ConeSquare {
    pub twist: i64,
    pub shift: i64,
}

impl From<ConeSquare> for [i64; 2] {
    fn from(c: ConeSquare) -> Self {
        [c.twist, c.shift]
    }
}

impl From<[i64; 2]> for ConeSquare {
    fn from([twist, shift]: [i64; 2]) -> Self {
        ConeSquare { twist, shift }
    }
}

impl Default for ConeSquare {
    fn default() -> Self {
        ConeSquare { twist: 1, shift: 2 }
    }
}

impl FromStr for ConeSquare {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cone square must be two integers 's,t', got {s:?}"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let twist = a.trim().parse().map_err(|_| bad())?;
        let shift = b.trim().parse().map_err(|_| bad())?;
        Ok(ConeSquare { twist, shift })
    }
}

impl fmt::Display for ConeSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.twist, self.shift)
    }
}

/// The two free parameters of the motive expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
pub struct Conventions {
    pub cone_shift: ConeShift,
    pub cone_square: ConeSquare,
}

impl Conventions {
    pub const fn new(cone_shift: ConeShift, cone_square: ConeSquare) -> Self {
        Conventions { cone_shift, cone_square }
    }

    pub fn paper() -> Self {
        Conventions { cone_shift: ConeShift::Paper, ..Default::default() }
    }

    pub fn derived() -> Self {
        Conventions::default()
    }

    pub fn delta(&self) -> i64 {
        self.cone_shift.delta()
    }
}

impl Serialize for Conventions {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Conventions", 3)?;
        st.serialize_field("cone_shift", &self.cone_shift)?;
        st.serialize_field("cone_shift_delta", &self.delta())?;
        st.serialize_field("cone_square", &self.cone_square)?;
        st.end()
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions { cone_shift: ConeShift::Derived, cone_square: ConeSquare::default() }
    }
}

impl fmt::Display for Conventions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone-shift={} (delta={}), cone-square={}", self.cone_shift.name(), self.delta(), self.cone_square)
    }
}

/// A formal direct sum of motive atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MotiveSum {
    atoms: BTreeMap<MotiveAtom, u64>,
}

impl MotiveSum {
    pub fn new() -> Self {
        MotiveSum::default()
    }

    pub fn unit() -> Self {
        MotiveSum::from_atoms([MotiveAtom::UNIT])
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = MotiveAtom>) -> Self {
        let mut s = MotiveSum::new();
        for a in atoms {
            s.insert(a, 1);
        }
        s
    }

    pub fn insert(&mut self, atom: MotiveAtom, mult: u64) {
        if mult > 0 {
            *self.atoms.entry(atom).or_default() += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (MotiveAtom, u64)> + '_ {
        self.atoms.iter().map(|(a, m)| (*a, *m))
    }

    pub fn atom_count(&self) -> u64 {
        self.atoms.values().sum()
    }

    pub fn distinct_len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Rank of the cohomology: one per Tate atom, two per cone atom.
    pub fn cohomology_rank(&self) -> u64 {
        self.iter()
            .map(|(a, m)| match a.kind {
                MotiveKind::Tate => m,
                MotiveKind::Cone => 2 * m,
            })
            .sum()
    }

    pub fn records(&self) -> Vec<MotiveRecord> {
        self.iter().map(|(a, mult)| MotiveRecord { kind: a.kind, twist: a.twist, shift: a.shift, mult }).collect()
    }
}

impl std::ops::Add for MotiveSum {
    type Output = MotiveSum;
    fn add(mut self, rhs: MotiveSum) -> MotiveSum {
        for (a, m) in rhs.atoms {
            self.insert(a, m);
        }
        self
    }
}

impl fmt::Display for MotiveSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, m)) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            if *m > 1 {
                write!(f, "{m}·")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Wire form of one `MotiveSum` entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotiveRecord {
    pub kind: MotiveKind,
    pub twist: i64,
    pub shift: i64,
    pub mult: u64,
}

impl Serialize for MotiveSum {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.records().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MotiveSum {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<MotiveRecord>::deserialize(deserializer)?;
        let mut s = MotiveSum::new();
        for r in records {
            s.insert(MotiveAtom { shift: r.shift, twist: r.twist, kind: r.kind }, r.mult);
        }
        Ok(s)
    }
}

/// Reduced splitting of the motive of `A^m \ 0`: `T(0)[0] ⊕ T(m)[2m-1]`.
pub fn sphere_motive(m: i64) -> Result<MotiveSum> {
    if m < 1 {
        return Err(Error::SphereDimension(m));
    }
    Ok(MotiveSum::from_atoms([MotiveAtom::UNIT, MotiveAtom::tate(m, 2 * m - 1)]))
}

/// `HS_m`: the sphere motive for `m` even; for `m = 2k + 1`,
/// `T(0)[0] ⊕ C(2k)[4k + δ] ⊕ T(4k+1)[8k]`.
pub fn hs_motive(m: i64, conv: &Conventions) -> Result<MotiveSum> {
    if m < 2 {
        return Err(Error::HsIndex(m));
    }
    if m % 2 == 0 {
        return sphere_motive(m);
    }
    let k = m / 2;
    Ok(MotiveSum::from_atoms([
        MotiveAtom::UNIT,
        MotiveAtom::cone(2 * k, 4 * k + conv.delta()),
        MotiveAtom::tate(4 * k + 1, 8 * k),
    ]))
}

fn tensor_atoms(x: MotiveAtom, y: MotiveAtom, conv: &Conventions, mult: u64, out: &mut MotiveSum) {
    use MotiveKind::{Cone, Tate};
    let (twist, shift) = (x.twist + y.twist, x.shift + y.shift);
    match (x.kind, y.kind) {
        (Tate, Tate) => out.insert(MotiveAtom::tate(twist, shift), mult),
        (Tate, Cone) | (Cone, Tate) => out.insert(MotiveAtom::cone(twist, shift), mult),
        (Cone, Cone) => {
            let sq = conv.cone_square;
            out.insert(MotiveAtom::cone(twist, shift), mult);
            out.insert(MotiveAtom::cone(twist + sq.twist, shift + sq.shift), mult);
        }
    }
}

/// Bilinear expansion of `x ⊗ y`.
pub fn tensor(x: &MotiveSum, y: &MotiveSum, conv: &Conventions) -> MotiveSum {
    let mut out = MotiveSum::new();
    for (a, ma) in x.iter() {
        for (b, mb) in y.iter() {
            tensor_atoms(a, b, conv, ma * mb, &mut out);
        }
    }
    out
}

/// A factor in the Stiefel decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "factor", content = "m", rename_all = "snake_case")]
pub enum Factor {
    Hs(i64),
    Sphere(i64),
}

impl Factor {
    pub fn motive(self, conv: &Conventions) -> Result<MotiveSum> {
        match self {
            Factor::Hs(m) => hs_motive(m, conv),
            Factor::Sphere(m) => sphere_motive(m),
        }
    }

    pub fn latex(self) -> String {
        match self {
            Factor::Hs(m) => format!(r"\widetilde{{\mathbf{{HS}}}}_{{{m}}}"),
            Factor::Sphere(m) => format!(r"\widetilde{{\mathrm{{M}}}}(\mathbb{{A}}^{{{m}}}\setminus 0)"),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Hs(m) => write!(f, "HS_{m}"),
            Factor::Sphere(m) => write!(f, "M(A^{m}\\0)"),
        }
    }
}

/// The tensor factors of `M(V_k(A^n))`, by the parities of `n` and `k`.
/// An empty list is the unit motive.
pub fn stiefel_factors(idx: StiefelIndex) -> Vec<Factor> {
    let (n, k) = (idx.n() as i64, idx.k() as i64);
    let (i, j) = (n / 2, k / 2);
    let mut chain = Vec::new();
    match (n % 2 == 0, k % 2 == 0) {
        // HS_{2i} ⊗ HS_{2i-1} ⊗ ... ⊗ HS_{2i-1-2(j-2)} ⊗ M(A^{2i+1-2j} \ 0)
        (true, true) => {
            chain.push(Factor::Hs(2 * i));
            chain.extend((0..j - 1).map(|l| Factor::Hs(2 * i - 1 - 2 * l)));
            chain.push(Factor::Sphere(2 * i + 1 - 2 * j));
        }
        // HS_{2i} ⊗ HS_{2i-1} ⊗ ... ⊗ HS_{2i-1-2(j-1)}
        (true, false) => {
            chain.push(Factor::Hs(2 * i));
            chain.extend((0..j).map(|l| Factor::Hs(2 * i - 1 - 2 * l)));
        }
        // HS_{2i+1} ⊗ HS_{2i-1} ⊗ ... ⊗ HS_{2i+1-2(j-1)}
        (false, true) => {
            chain.extend((0..j).map(|l| Factor::Hs(2 * i + 1 - 2 * l)));
        }
        // same chain ⊗ M(A^{2i+1-2j} \ 0)
        (false, false) => {
            chain.extend((0..j).map(|l| Factor::Hs(2 * i + 1 - 2 * l)));
            chain.push(Factor::Sphere(2 * i + 1 - 2 * j));
        }
    }
    chain
}

/// Fully expanded `M(V_k(A^n))`.
pub fn stiefel_motive(idx: StiefelIndex, conv: &Conventions) -> MotiveSum {
    stiefel_factors(idx).into_iter().fold(MotiveSum::unit(), |acc, factor| {
        let m = factor.motive(conv).expect("factor indices are in range for a valid StiefelIndex");
        tensor(&acc, &m, conv)
    })
}

/// MW-cohomology of a formal motive over a point:
/// `T(a)[b] ↦ MW@(b,a)`, `C(a)[b] ↦ M@(b+2,a+1) ⊕ ηM@(b,a)`.
pub fn motive_cohomology(x: &MotiveSum) -> FormalSum {
    let mut out = FormalSum::new();
    for (atom, mult) in x.iter() {
        let at = Bidegree::new(atom.shift, atom.twist);
        for _ in 0..mult {
            match atom.kind {
                MotiveKind::Tate => out.push(CoeffAtom::labeled(RingKind::Mw, at, atom.to_string())),
                MotiveKind::Cone => {
                    out.push(CoeffAtom::labeled(RingKind::M, at + Bidegree::new(2, 1), format!("θ·{atom}")));
                    out.push(CoeffAtom::labeled(RingKind::EtaM, at, atom.to_string()));
                }
            }
        }
    }
    out
}
