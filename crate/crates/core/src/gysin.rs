//! Inductive computation along the fibrations `V_{k+1}(A^n) -> V_k(A^n)`.
//!
//! Each step splits the Thom-Gysin short exact sequence. The connecting map is
//! cup product with the Euler class, which vanishes when `n - k` is odd and is
//! `η·β_{n-k}` when `n - k` is even. In the even case `η β_{n-k}^2 = 0`, so the
//! boundary only sees `η` acting on `H(V_{k-1})` and the step jumps two levels:
//!
//! ```text
//! n-k odd : H(V_{k+1}) = H(V_k) ⊕ H(V_k)·β_{n-k-1}
//! n-k even: H(V_{k+1}) = H(V_{k-1}) ⊕ Coker_η(H(V_{k-1}))·α_{n-k}
//!                        ⊕ Ker_η(H(V_{k-1}))·α_{n-k-1} ⊕ H(V_{k-1})·β_{n-k,n-k-1}
//! ```
//!
//! None of this consults the closed-form tiling in [`crate::basis`].

use std::fmt;

use serde::Serialize;

use crate::basis::{generator_degree, StiefelIndex};
use crate::bigraded::{Bidegree, CoeffAtom, FormalSum, RingKind};

/// Memoized evaluator for a fixed ambient dimension `n`.
#[derive(Debug, Clone)]
pub struct GysinTower {
    n: u32,
    memo: Vec<Option<FormalSum>>,
}

impl GysinTower {
    pub fn new(n: u32) -> Self {
        GysinTower { n, memo: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `H(V_k(A^n))` for `0 <= k <= n - 1`.
    pub fn level(&mut self, k: u32) -> &FormalSum {
        assert!(k < self.n.max(1), "level {k} outside 0..{}", self.n);
        let slot = k as usize;
        if self.memo.len() <= slot {
            self.memo.resize(slot + 1, None);
        }
        if self.memo[slot].is_none() {
            let value = self.compute(k);
            self.memo[slot] = Some(value);
        }
        self.memo[slot].as_ref().expect("filled above")
    }

    fn compute(&mut self, k: u32) -> FormalSum {
        let n = self.n;
        match k {
            0 => FormalSum::unit(),
            1 => {
                let mut s = FormalSum::unit();
                s.push(CoeffAtom::labeled(RingKind::Mw, generator_degree(n - 1), beta(n - 1)));
                s
            }
            _ => {
                // Building V_k from the fibration over V_{k-1}, fiber A^{d} \ 0.
                let d = n - (k - 1);
                if d % 2 == 1 {
                    let prev = self.level(k - 1).clone();
                    let new = prev.shifted(generator_degree(d - 1)).with_label_suffix(&beta(d - 1));
                    prev + new
                } else {
                    let base = self.level(k - 2).clone();
                    let coker = base.coker_eta().shifted(generator_degree(d)).with_label_suffix(&alpha(d));
                    let ker = base.ker_eta().shifted(generator_degree(d - 1)).with_label_suffix(&alpha(d - 1));
                    let pair_degree = generator_degree(d) + generator_degree(d - 1);
                    let pair = base.shifted(pair_degree).with_label_suffix(&beta_pair(d));
                    base + coker + ker + pair
                }
            }
        }
    }
}

fn alpha(i: u32) -> String {
    format!("α_{{{i}}}")
}

fn beta(i: u32) -> String {
    format!("β_{{{i}}}")
}

fn beta_pair(i: u32) -> String {
    format!("β_{{{},{}}}", i, i - 1)
}

/// `H(V_k(A^n))` by induction on `k`.
pub fn inductive_cohomology(idx: StiefelIndex) -> FormalSum {
    GysinTower::new(idx.n()).level(idx.k()).clone()
}

/// Euler class of the sphere bundle `V_{k+1}(A^n) -> V_k(A^n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerClass {
    Zero,
    /// `η·β_m` in bidegree `(2m, m)`, where `m = n - k`.
    EtaBeta {
        beta: u32,
        degree: Bidegree,
    },
}

impl EulerClass {
    pub fn is_zero(self) -> bool {
        matches!(self, EulerClass::Zero)
    }

    pub fn expr(self) -> Option<String> {
        match self {
            EulerClass::Zero => None,
            EulerClass::EtaBeta { beta, .. } => Some(format!("eta*beta_{{{beta}}}")),
        }
    }
}

impl fmt::Display for EulerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EulerClass::Zero => f.write_str("0"),
            EulerClass::EtaBeta { beta, degree } => write!(f, "η·β_{{{beta}}} in H^{{{},{}}}", degree.p, degree.q),
        }
    }
}

/// `e(f_{n,k})` where `idx` names the base `V_k(A^n)`.
///
/// For `k >= 2` the class is `η·β_{n-k}` when `n - k` is even and zero
/// otherwise. For `k = 1` it is `n_ε η β_{n-1}`, which vanishes for `n` even;
/// only the parity of `n_ε` matters. Both rules pick out `n - k` even.
pub fn euler_class(idx: StiefelIndex) -> EulerClass {
    let (n, k) = (idx.n(), idx.k());
    let m = n - k;
    let nonzero = if k == 1 { n % 2 == 1 } else { m % 2 == 0 };
    if nonzero {
        EulerClass::EtaBeta { beta: m, degree: Bidegree::new(2 * m as i64, m as i64) }
    } else {
        EulerClass::Zero
    }
}

/// Wire form of the `euler` report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct EulerRecord {
    pub n: u32,
    pub k: u32,
    pub zero: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<[i64; 2]>,
}

impl EulerRecord {
    pub fn new(idx: StiefelIndex) -> Self {
        let class = euler_class(idx);
        let degree = match class {
            EulerClass::Zero => None,
            EulerClass::EtaBeta { degree, .. } => Some([degree.p, degree.q]),
        };
        EulerRecord { n: idx.n(), k: idx.k(), zero: class.is_zero(), expr: class.expr(), degree }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RingKind::{EtaM, Mw, M};

    fn idx(n: u32, k: u32) -> StiefelIndex {
        StiefelIndex::new(n, k).unwrap()
    }

    fn sum(atoms: &[(RingKind, i64, i64)]) -> FormalSum {
        atoms.iter().map(|&(k, p, q)| CoeffAtom::new(k, Bidegree::new(p, q))).collect()
    }

    #[test]
    fn v2_of_a7() {
        let expected = sum(&[(Mw, 0, 0), (EtaM, 11, 6), (M, 13, 7), (Mw, 24, 13)]);
        assert_eq!(inductive_cohomology(idx(7, 2)), expected);
    }

    #[test]
    fn v4_of_a7_matches_hand_unrolled_list() {
        let expected = sum(&[
            (Mw, 0, 0),
            (EtaM, 7, 4),
            (M, 9, 5),
            (EtaM, 11, 6),
            (M, 13, 7),
            (Mw, 16, 9),
            (EtaM, 18, 10),
            (M, 20, 11),
            (EtaM, 20, 11),
            (M, 22, 12),
            (Mw, 24, 13),
            (EtaM, 27, 15),
            (M, 29, 16),
            (EtaM, 31, 17),
            (M, 33, 18),
            (Mw, 40, 22),
        ]);
        assert_eq!(inductive_cohomology(idx(7, 4)), expected);
    }

    #[test]
    fn spheres() {
        for n in 2..12 {
            let n64 = n as i64;
            assert_eq!(inductive_cohomology(idx(n, 1)), sum(&[(Mw, 0, 0), (Mw, 2 * n64 - 1, n64)]));
        }
    }

    #[test]
    fn atom_count_doubles() {
        let mut tower = GysinTower::new(13);
        for k in 0..13 {
            assert_eq!(tower.level(k).atom_count(), 1 << k);
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_class(idx(7, 3)), EulerClass::EtaBeta { beta: 4, degree: Bidegree::new(8, 4) });
        assert_eq!(euler_class(idx(7, 4)), EulerClass::Zero);
        assert_eq!(euler_class(idx(6, 1)), EulerClass::Zero);
        assert!(!euler_class(idx(7, 1)).is_zero());
    }

    #[test]
    fn euler_record_json() {
        let r = serde_json::to_string(&EulerRecord::new(idx(7, 3))).unwrap();
        assert_eq!(r, r#"{"n":7,"k":3,"zero":false,"expr":"eta*beta_{4}","degree":[8,4]}"#);
        let r = serde_json::to_string(&EulerRecord::new(idx(7, 4))).unwrap();
        assert_eq!(r, r#"{"n":7,"k":4,"zero":true}"#);
    }
}
