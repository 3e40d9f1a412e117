//! Lower-bound certificates from the generalized Heisenberg subgroup.
//!
//! A finite-index subgroup pins a triangular Mal'cev matrix whose diagonal
//! obeys: m_{1,1} divides m_{i,i}·m_{k+i−2,k+i−2} for i = 2,…,k−1, and the
//! subgroup index is the diagonal product. Missing the central element
//! E_{1,k}(L) forces m_{1,1} ∤ L, so minimizing the product subject to these
//! constraints is a lower bound for the divisibility of E_{1,k}(L).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::SlkError;

/// Diagonal of a triangular Mal'cev basis for a finite-index subgroup of the
/// Heisenberg group inside SL_k(Z); d = 2k−3 entries. Off-diagonal exponents
/// do not affect the index or membership of the central element, so the
/// canonical representative keeps them zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergBasis {
    pub k: usize,
    pub diagonal: Vec<u64>,
    pub off_diagonal: Vec<u64>,
}

impl HeisenbergBasis {
    pub fn index(&self) -> BigInt {
        self.diagonal.iter().map(|&m| BigInt::from(m)).product()
    }

    /// Checks the divisibility conditions and that the basis excludes the
    /// central element E_{1,k}(L).
    pub fn validate(&self, l: &BigInt) -> Result<(), String> {
        let d = 2 * self.k - 3;
        if self.k < 3 || self.diagonal.len() != d {
            return Err(format!("diagonal must have 2k-3 = {d} entries"));
        }
        if self.diagonal.contains(&0) {
            return Err("diagonal entries must be positive".into());
        }
        let m11 = self.diagonal[0];
        if (l % BigInt::from(m11)).is_zero() {
            return Err(format!("m11 = {m11} divides L, so the subgroup contains the target"));
        }
        for t in 0..self.k - 2 {
            let x = self.diagonal[1 + t];
            let y = self.diagonal[self.k - 1 + t];
            if !(x as u128 * y as u128).is_multiple_of(m11 as u128) {
                return Err(format!(
                    "divisibility condition fails: {m11} does not divide {x}·{y}"
                ));
            }
        }
        Ok(())
    }
}

/// Per-pair minimum of x·y subject to m11 | x·y. Any admissible product is a
/// positive multiple of m11, so the minimum is m11 itself; ties resolve to
/// the front-loaded pair (m11, 1).
fn minimal_pair(m11: u64) -> (u64, u64) {
    let mut best = (m11, 1u64);
    let mut best_prod = m11;
    for x in 1..=m11 {
        let y = m11 / x.gcd(&m11);
        let prod = x * y;
        if prod < best_prod || (prod == best_prod && x > best.0) {
            best_prod = prod;
            best = (x, y);
        }
    }
    best
}

/// Minimal index of a Heisenberg subgroup excluding E_{1,k}(L): an integer
/// program over admissible diagonals, pruned by the partial product.
pub fn heisenberg_divisibility(
    k: usize,
    l: &BigInt,
) -> Result<(BigInt, HeisenbergBasis), SlkError> {
    if k < 3 {
        return Err(SlkError::BadDimension(format!(
            "the Heisenberg construction needs k ≥ 3, got {k}"
        )));
    }
    if l.is_zero() || l.is_negative() {
        return Err(SlkError::BadDimension("L must be a positive integer".into()));
    }
    let pairs = k - 2;
    let mut best: Option<(BigInt, Vec<u64>)> = None;
    for m11 in 2u64.. {
        if (l % BigInt::from(m11)).is_zero() {
            continue; // subgroup would contain the central element
        }
        let floor = num_traits::pow::pow(BigInt::from(m11), k - 1);
        if let Some((bv, _)) = &best {
            if &floor >= bv {
                break; // every pair costs at least m11, so larger m11 cannot win
            }
        }
        let (x, y) = minimal_pair(m11);
        let mut diagonal = vec![0u64; 2 * k - 3];
        diagonal[0] = m11;
        for t in 0..pairs {
            diagonal[1 + t] = x;
            diagonal[k - 1 + t] = y;
        }
        let total: BigInt = diagonal.iter().map(|&m| BigInt::from(m)).product();
        if best.as_ref().map(|(bv, _)| &total < bv).unwrap_or(true) {
            best = Some((total, diagonal));
        }
    }
    let (value, diagonal) = best.expect("some m11 fails to divide L");
    let d = 2 * k - 3;
    let basis = HeisenbergBasis { k, diagonal, off_diagonal: vec![0; d * (d - 1) / 2] };
    debug_assert!(basis.validate(l).is_ok());
    Ok((value, basis))
}

/// An element x^a y^b z^c of the 3-dimensional integer Heisenberg group,
/// with x = E_{1,2}, y = E_{2,3} and central z = E_{1,3}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H3 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl H3 {
    pub fn new(a: i64, b: i64, c: BigInt) -> H3 {
        H3 { a: a.into(), b: b.into(), c }
    }
}

/// A canonical triangular basis of a finite-index subgroup of H3:
/// g1 = x^p y^r z^s, g2 = y^q z^t, g3 = z^m, subject to m | p·q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H3Subgroup {
    pub p: u64,
    pub q: u64,
    pub m: u64,
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl H3Subgroup {
    pub fn index(&self) -> u64 {
        self.p * self.q * self.m
    }

    /// Triangular membership solve for x^A y^B z^C via the closed form
    /// g1^α g2^β g3^γ = (αp, αr + βq, αs + pr·α(α−1)/2 + βt + αβpq + γm).
    pub fn contains(&self, target: &H3) -> bool {
        let (p, q, m) = (BigInt::from(self.p), BigInt::from(self.q), BigInt::from(self.m));
        let (r, s, t) = (BigInt::from(self.r), BigInt::from(self.s), BigInt::from(self.t));
        let (alpha, rem) = target.a.div_rem(&p);
        if !rem.is_zero() {
            return false;
        }
        let (beta, rem) = (&target.b - &alpha * &r).div_rem(&q);
        if !rem.is_zero() {
            return false;
        }
        let half = (&alpha * (&alpha - BigInt::one())) / BigInt::from(2);
        let fixed = &alpha * &s + &p * &r * half + &beta * &t + &alpha * &beta * &p * &q;
        ((&target.c - fixed) % m).is_zero()
    }
}

/// Exact divisibility of the central element z^L in H3 by explicit subgroup
/// enumeration in increasing index, including all off-diagonal exponents.
/// Returns `None` if no subgroup of index ≤ `cap` misses z^L.
pub fn h3_divisibility_by_enumeration(l: &BigInt, cap: u64) -> Option<(u64, H3Subgroup)> {
    let target = H3::new(0, 0, l.clone());
    for index in 1..=cap {
        for p in 1..=index {
            if index % p != 0 {
                continue;
            }
            let qm = index / p;
            for q in 1..=qm {
                if qm % q != 0 {
                    continue;
                }
                let m = qm / q;
                if (p * q) % m != 0 {
                    continue; // not closed under commutation
                }
                for r in 0..q {
                    for s in 0..m {
                        for t in 0..m {
                            let sub = H3Subgroup { p, q, m, r, s, t };
                            if !sub.contains(&target) {
                                return Some((index, sub));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}
