//! Congruence upper-bound witnesses: a prime p where g stays non-central and
//! a hyperplane of (Z/p)^k that g moves. The subgroup of SL_k(Z) preserving
//! that hyperplane mod p misses g and has index (p^k − 1)/(p − 1).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::SlkError;

pub const CONGRUENCE_KIND: &str = "congruence-witness";

/// Witness that D_{SL_k(Z)}(g) ≤ (p^k − 1)/(p − 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub k: usize,
    pub p: u64,
    pub alpha: BigInt,
    /// Dual vector φ over Z/p; the hyperplane is W = ker φ.
    pub dual_vector: Vec<u64>,
    pub index: BigInt,
    pub matrix: IntMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CongruenceWitnessSpec {
    pub kind: String,
    pub k: usize,
    pub p: u64,
    pub alpha: String,
    pub dual_vector: Vec<u64>,
    pub index: String,
    pub matrix: IntMatrix,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn smallest_prime_not_dividing(alpha: &BigInt) -> u64 {
    let a = alpha.abs();
    (2u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| !(&a % BigInt::from(p)).is_zero())
        .expect("some prime misses every nonzero integer")
}

fn reduce_mod(g: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    let pb = BigInt::from(p);
    g.rows()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let r = e.mod_floor(&pb);
                    u64::try_from(r).expect("residue fits")
                })
                .collect()
        })
        .collect()
}

/// φ · g over Z/p (row vector times matrix).
fn dual_image(phi: &[u64], g: &[Vec<u64>], p: u64) -> Vec<u64> {
    let k = phi.len();
    (0..k)
        .map(|j| (0..k).map(|i| phi[i] * g[i][j] % p).sum::<u64>() % p)
        .collect()
}

fn proportional(phi: &[u64], psi: &[u64], p: u64) -> bool {
    let i0 = match phi.iter().position(|&x| x != 0) {
        Some(i) => i,
        None => return psi.iter().all(|&x| x == 0),
    };
    debug_assert_eq!(phi[i0], 1, "dual vectors are normalized");
    let lambda = psi[i0];
    phi.iter().zip(psi).all(|(&a, &b)| lambda * a % p == b)
}

/// Normalized dual vectors (first nonzero coordinate 1) in lexicographic
/// order; one representative per hyperplane of (Z/p)^k.
pub(crate) fn normalized_duals(k: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let mut v = vec![0u64; k];
    let mut done = false;
    std::iter::from_fn(move || {
        while !done {
            // advance odometer
            let mut i = k;
            loop {
                if i == 0 {
                    done = true;
                    return None;
                }
                i -= 1;
                v[i] += 1;
                if v[i] < p {
                    break;
                }
                v[i] = 0;
            }
            let first_nonzero = v.iter().find(|&&x| x != 0);
            if first_nonzero == Some(&1) {
                return Some(v.clone());
            }
        }
        None
    })
}

/// Constructs the deterministic congruence witness for a non-central g.
pub fn congruence_witness(g: &IntMatrix) -> Result<CongruenceWitness, SlkError> {
    if g.is_central() {
        return Err(SlkError::CentralInput);
    }
    let k = g.k();
    // first nonzero off-diagonal entry in row-major order, else the first
    // nonzero diagonal difference
    let mut alpha: Option<BigInt> = None;
    'off: for i in 0..k {
        for j in 0..k {
            if i != j && !g.entry(i, j).is_zero() {
                alpha = Some(g.entry(i, j).clone());
                break 'off;
            }
        }
    }
    if alpha.is_none() {
        'diag: for i in 0..k {
            for j in i + 1..k {
                let diff = g.entry(i, i) - g.entry(j, j);
                if !diff.is_zero() {
                    alpha = Some(diff);
                    break 'diag;
                }
            }
        }
    }
    let alpha = alpha.expect("non-central matrices have a nonzero discriminating entry");
    let p = smallest_prime_not_dividing(&alpha);
    let gp = reduce_mod(g, p);
    let dual_vector = normalized_duals(k, p)
        .find(|phi| !proportional(phi, &dual_image(phi, &gp, p), p))
        .expect("a non-scalar matrix moves some hyperplane");
    let index = hyperplane_count(k, p);
    Ok(CongruenceWitness { k, p, alpha, dual_vector, index, matrix: g.clone() })
}

/// (p^k − 1)/(p − 1), the number of hyperplanes in (Z/p)^k and the index of
/// the witness subgroup.
pub(crate) fn hyperplane_count(k: usize, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    (num_traits::pow::pow(pb.clone(), k) - BigInt::one()) / (pb - BigInt::one())
}

impl CongruenceWitness {
    /// Membership test for the witness subgroup: h preserves W mod p.
    pub fn subgroup_contains(&self, h: &IntMatrix) -> Result<bool, SlkError> {
        if h.k() != self.k {
            return Err(SlkError::BadDimension(format!(
                "witness is for k={}, got a {}×{} matrix",
                self.k,
                h.k(),
                h.k()
            )));
        }
        let hp = reduce_mod(h, self.p);
        Ok(proportional(&self.dual_vector, &dual_image(&self.dual_vector, &hp, self.p), self.p))
    }

    /// The defining property: g itself lies outside the subgroup.
    pub fn separates(&self) -> bool {
        !self.subgroup_contains(&self.matrix).unwrap_or(true)
    }

    pub fn to_spec(&self) -> CongruenceWitnessSpec {
        CongruenceWitnessSpec {
            kind: CONGRUENCE_KIND.to_owned(),
            k: self.k,
            p: self.p,
            alpha: self.alpha.to_string(),
            dual_vector: self.dual_vector.clone(),
            index: self.index.to_string(),
            matrix: self.matrix.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("witness serializes")
    }

    pub fn from_spec(spec: &CongruenceWitnessSpec) -> Result<Self, SlkError> {
        if spec.kind != CONGRUENCE_KIND {
            return Err(SlkError::Parse(format!("unexpected kind `{}`", spec.kind)));
        }
        Ok(Self {
            k: spec.k,
            p: spec.p,
            alpha: spec.alpha.parse().map_err(|e| SlkError::Parse(format!("alpha: {e}")))?,
            dual_vector: spec.dual_vector.clone(),
            index: spec.index.parse().map_err(|e| SlkError::Parse(format!("index: {e}")))?,
            matrix: spec.matrix.clone(),
        })
    }

    /// Re-checks every invariant from the witness data alone. Returns the
    /// name of the first failed invariant.
    pub fn verify(&self) -> Result<(), String> {
        if self.matrix.k() != self.k {
            return Err("MatrixShape: stored k disagrees with the matrix".into());
        }
        if !is_prime(self.p) {
            return Err(format!("PrimeModulus: {} is not prime", self.p));
        }
        if self.alpha.is_zero() || (self.alpha.abs() % BigInt::from(self.p)).is_zero() {
            return Err("AlphaResidue: p divides alpha".into());
        }
        if self.dual_vector.len() != self.k
            || self.dual_vector.iter().all(|&x| x == 0)
            || self.dual_vector.iter().any(|&x| x >= self.p)
        {
            return Err("DualVector: not a nonzero row over Z/p".into());
        }
        if self.index != hyperplane_count(self.k, self.p) {
            return Err("IndexFormula: index is not (p^k - 1)/(p - 1)".into());
        }
        if !self.separates() {
            return Err("Separates: g mod p stabilizes the hyperplane".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slk::matrix::{elementary, g_n};

    #[test]
    fn witness_for_e13_of_60() {
        let g = g_n(3, 6).unwrap();
        let w = congruence_witness(&g).unwrap();
        assert_eq!(w.alpha, BigInt::from(60));
        assert_eq!(w.p, 7); // 2, 3, 5 divide 60
        assert_eq!(w.index, BigInt::from(57)); // (343 − 1)/6
        assert_eq!(w.dual_vector, vec![1, 0, 0]); // W = {x₁ = 0}; moved since g·e₃ = e₃ + 60e₁
        w.verify().unwrap();
    }

    #[test]
    fn witness_for_e12_of_2() {
        let g = elementary(3, 1, 2, 2).unwrap();
        let w = congruence_witness(&g).unwrap();
        assert_eq!(w.alpha, BigInt::from(2));
        assert_eq!(w.p, 3);
        assert_eq!(w.index, BigInt::from(13)); // 26/2
        w.verify().unwrap();
    }

    #[test]
    fn central_input_rejected() {
        let neg: Vec<BigInt> = (0..16)
            .map(|i| if i % 5 == 0 { BigInt::from(-1) } else { BigInt::zero() })
            .collect();
        let m = IntMatrix::new(4, neg).unwrap();
        assert_eq!(congruence_witness(&m).unwrap_err(), SlkError::CentralInput);
    }

    #[test]
    fn moved_hyperplane_confirmed_by_subspace_scan() {
        // independent check: enumerate W = ker φ pointwise and find a vector
        // whose image under g mod p leaves W
        let g = g_n(3, 4).unwrap(); // E_{1,3}(12), p = 5
        let w = congruence_witness(&g).unwrap();
        let p = w.p;
        let gp: Vec<Vec<u64>> = g
            .rows()
            .map(|r| r.iter().map(|e| u64::try_from(e.mod_floor(&BigInt::from(p))).unwrap()).collect())
            .collect();
        let k = w.k;
        let in_w = |v: &[u64]| -> bool {
            w.dual_vector.iter().zip(v).map(|(&a, &b)| a * b % p).sum::<u64>() % p == 0
        };
        let mut moved = false;
        let mut vec = vec![0u64; k];
        'outer: loop {
            if in_w(&vec) {
                let image: Vec<u64> = (0..k)
                    .map(|i| (0..k).map(|j| gp[i][j] * vec[j] % p).sum::<u64>() % p)
                    .collect();
                if !in_w(&image) {
                    moved = true;
                    break;
                }
            }
            let mut i = k;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                vec[i] += 1;
                if vec[i] < p {
                    break;
                }
                vec[i] = 0;
            }
        }
        assert!(moved, "the returned hyperplane must contain a vector that g moves out");
    }

    #[test]
    fn index_formula_matches_brute_hyperplane_count() {
        for &p in &[2u64, 3, 5, 7] {
            for k in 2..=4 {
                let brute = normalized_duals(k, p).count();
                assert_eq!(BigInt::from(brute), hyperplane_count(k, p), "p={p}, k={k}");
            }
        }
    }

    #[test]
    fn witness_membership_sanity() {
        let g = g_n(3, 6).unwrap();
        let w = congruence_witness(&g).unwrap();
        // the identity always preserves every hyperplane
        assert!(w.subgroup_contains(&IntMatrix::identity(3).unwrap()).unwrap());
        assert!(!w.subgroup_contains(&g).unwrap());
    }

    #[test]
    fn witness_json_round_trip() {
        let g = g_n(3, 6).unwrap();
        let w = congruence_witness(&g).unwrap();
        let json = w.to_json();
        let spec: CongruenceWitnessSpec = serde_json::from_str(&json).unwrap();
        let back = CongruenceWitness::from_spec(&spec).unwrap();
        assert_eq!(back, w);
        back.verify().unwrap();
    }

    #[test]
    fn corrupted_witness_rejected() {
        let g = g_n(3, 6).unwrap();
        let mut w = congruence_witness(&g).unwrap();
        w.dual_vector = vec![0, 1, 0]; // stabilized hyperplane
        assert!(w.verify().unwrap_err().starts_with("Separates"));
    }
}
