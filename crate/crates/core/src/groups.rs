//! Degreewise readout: the group in a single bidegree `(p, q)`.
//!
//! An atom `kind@shift` contributes the coefficient group in relative bidegree
//! `(a, b) = (p, q) - shift`. Coconnectedness kills everything with `a > b`.
//! On the diagonal the groups are Milnor-Witt and Milnor K-theory; below it
//! they stay symbolic unless a vanishing flag applies.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bigraded::{Bidegree, FormalSum, RingKind};

/// Vanishing rules beyond coconnectedness, which is always on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
pub struct VanishingFlags {
    /// `M` and `ηM` vanish in negative weight.
    pub negative_weight_motivic: bool,
    /// `MW` vanishes below the diagonal in negative weight.
    pub mw_subdiagonal_negative_weight: bool,
}

impl VanishingFlags {
    pub const fn coconnected(&self) -> bool {
        true
    }

    pub const fn none() -> Self {
        VanishingFlags { negative_weight_motivic: false, mw_subdiagonal_negative_weight: false }
    }

    /// Active rules, for reports.
    pub fn active(&self) -> Vec<&'static str> {
        let mut out = vec!["coconnected"];
        if self.negative_weight_motivic {
            out.push("negative-weight-motivic");
        }
        if self.mw_subdiagonal_negative_weight {
            out.push("mw-subdiagonal-negative-weight");
        }
        out
    }
}

impl Default for VanishingFlags {
    fn default() -> Self {
        VanishingFlags { negative_weight_motivic: true, mw_subdiagonal_negative_weight: true }
    }
}

impl Serialize for VanishingFlags {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("VanishingFlags", 3)?;
        st.serialize_field("coconnected", &self.coconnected())?;
        st.serialize_field("negative_weight_motivic", &self.negative_weight_motivic)?;
        st.serialize_field("mw_subdiagonal_negative_weight", &self.mw_subdiagonal_negative_weight)?;
        st.end()
    }
}

/// A symbolic abelian group over the base field `K`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum GroupExpr {
    Zero,
    Z,
    /// `K^MW_j(K)`
    KMW {
        j: i64,
    },
    /// `K^M_j(K)`, `j >= 1`
    KM {
        j: i64,
    },
    /// `2K^M_j(K)`, `j >= 0`
    TwoKM {
        j: i64,
    },
    /// An unevaluated `H_MW^{p,q}(K)` or `H_M^{p,q}(K)`.
    Opaque {
        kind: RingKind,
        p: i64,
        q: i64,
    },
    DirectSum {
        terms: Vec<GroupExpr>,
    },
}

impl GroupExpr {
    pub fn kmw(j: i64) -> Self {
        GroupExpr::KMW { j }
    }

    pub fn km(j: i64) -> Self {
        match j {
            j if j < 0 => GroupExpr::Zero,
            0 => GroupExpr::Z,
            j => GroupExpr::KM { j },
        }
    }

    pub fn two_km(j: i64) -> Self {
        if j < 0 {
            GroupExpr::Zero
        } else {
            GroupExpr::TwoKM { j }
        }
    }

    /// Flattened, sorted, zero-free direct sum; collapses to a single term or `Zero`.
    pub fn direct_sum(parts: impl IntoIterator<Item = GroupExpr>) -> Self {
        let mut terms = Vec::new();
        for part in parts {
            match part {
                GroupExpr::Zero => {}
                GroupExpr::DirectSum { terms: inner } => terms.extend(inner),
                other => terms.push(other),
            }
        }
        terms.sort();
        match terms.len() {
            0 => GroupExpr::Zero,
            1 => terms.pop().expect("one term"),
            _ => GroupExpr::DirectSum { terms },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GroupExpr::Zero)
    }

    pub fn latex(&self) -> String {
        match self {
            GroupExpr::Zero => "0".into(),
            GroupExpr::Z => r"\mathbb{Z}".into(),
            GroupExpr::KMW { j } => format!(r"\mathrm{{K}}^{{\mathrm{{MW}}}}_{{{j}}}(K)"),
            GroupExpr::KM { j } => format!(r"\mathrm{{K}}^{{\mathrm{{M}}}}_{{{j}}}(K)"),
            GroupExpr::TwoKM { j } => format!(r"2\mathrm{{K}}^{{\mathrm{{M}}}}_{{{j}}}(K)"),
            GroupExpr::Opaque { kind, p, q } => format!("{}^{{{p},{q}}}(K)", kind.latex()),
            GroupExpr::DirectSum { terms } => terms.iter().map(GroupExpr::latex).collect::<Vec<_>>().join(r" \oplus "),
        }
    }
}

fn subscript(j: i64) -> String {
    if (0..10).contains(&j) {
        j.to_string()
    } else {
        format!("{{{j}}}")
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Zero => f.write_str("0"),
            GroupExpr::Z => f.write_str("Z"),
            GroupExpr::KMW { j } => write!(f, "K^MW_{}(K)", subscript(*j)),
            GroupExpr::KM { j } => write!(f, "K^M_{}(K)", subscript(*j)),
            GroupExpr::TwoKM { j } => write!(f, "2K^M_{}(K)", subscript(*j)),
            GroupExpr::Opaque { kind, p, q } => {
                let symbol = match kind {
                    RingKind::Mw => "H_MW",
                    _ => "H_M",
                };
                write!(f, "{symbol}^{{{p},{q}}}(K)")
            }
            GroupExpr::DirectSum { terms } => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ⊕ ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// The group contributed by one `kind@shift` atom at `(p, q)`.
pub fn evaluate_atom_at(kind: RingKind, shift: Bidegree, at: Bidegree, flags: &VanishingFlags) -> GroupExpr {
    let Bidegree { p: a, q: b } = at - shift;
    if a > b {
        return GroupExpr::Zero;
    }
    if a == b {
        return match kind {
            RingKind::Mw => GroupExpr::kmw(b),
            RingKind::M => GroupExpr::km(b),
            RingKind::EtaM => GroupExpr::two_km(b),
        };
    }
    match kind {
        RingKind::M | RingKind::EtaM => {
            if b < 0 && flags.negative_weight_motivic {
                GroupExpr::Zero
            } else {
                // off the diagonal the η-kernel agrees with H_M
                GroupExpr::Opaque { kind: RingKind::M, p: a, q: b }
            }
        }
        RingKind::Mw => {
            if b < 0 && flags.mw_subdiagonal_negative_weight {
                GroupExpr::Zero
            } else {
                GroupExpr::Opaque { kind: RingKind::Mw, p: a, q: b }
            }
        }
    }
}

/// The group of a whole formal sum at `(p, q)`.
pub fn evaluate_at(sum: &FormalSum, at: Bidegree, flags: &VanishingFlags) -> GroupExpr {
    GroupExpr::direct_sum(sum.terms().flat_map(|(key, mult)| {
        let g = evaluate_atom_at(key.kind, key.shift, at, flags);
        std::iter::repeat_n(g, mult as usize)
    }))
}
