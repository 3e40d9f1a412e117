//! Exact integer matrices with determinant 1.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SlkError;

/// A k×k integer matrix of determinant 1, row-major, exact arithmetic only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    k: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(k: usize, entries: Vec<BigInt>) -> Result<Self, SlkError> {
        if k < 2 {
            return Err(SlkError::BadDimension(format!("k must be at least 2, got {k}")));
        }
        if entries.len() != k * k {
            return Err(SlkError::BadDimension(format!(
                "expected {} entries for a {k}×{k} matrix, got {}",
                k * k,
                entries.len()
            )));
        }
        let m = Self { k, entries };
        let det = m.determinant();
        if !det.is_one() {
            return Err(SlkError::NotUnimodular(det.to_string()));
        }
        Ok(m)
    }

    pub fn identity(k: usize) -> Result<Self, SlkError> {
        let mut entries = vec![BigInt::zero(); k * k];
        for i in 0..k {
            entries[i * k + i] = BigInt::one();
        }
        Self::new(k, entries)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.k + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.k)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.k).all(|i| {
            (0..self.k).all(|j| {
                if i == j {
                    self.entry(i, j).is_one()
                } else {
                    self.entry(i, j).is_zero()
                }
            })
        })
    }

    /// Central in SL_k(Z): a scalar ζI with ζ^k = 1, so I, and −I for even k.
    pub fn is_central(&self) -> bool {
        let d = self.entry(0, 0).clone();
        if !(d == BigInt::one() || d == -BigInt::one()) {
            return false;
        }
        let scalar = (0..self.k).all(|i| {
            (0..self.k).all(|j| {
                if i == j {
                    *self.entry(i, j) == d
                } else {
                    self.entry(i, j).is_zero()
                }
            })
        });
        scalar && (d.is_one() || self.k.is_multiple_of(2))
    }

    /// Fraction-free Bareiss elimination; exact at every step.
    pub fn determinant(&self) -> BigInt {
        let k = self.k;
        let mut m: Vec<Vec<BigInt>> = self.rows().map(|r| r.to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for col in 0..k {
            if m[col][col].is_zero() {
                match (col + 1..k).find(|&r| !m[r][col].is_zero()) {
                    Some(r) => {
                        m.swap(col, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for r in col + 1..k {
                for c in col + 1..k {
                    let num = &m[r][c] * &m[col][col] - &m[r][col] * &m[col][c];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division is exact");
                    m[r][c] = q;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[col][col].clone();
        }
        sign * m[k - 1][k - 1].clone()
    }

    /// 1-operator norm: the maximal column sum of absolute values.
    pub fn one_norm(&self) -> BigInt {
        (0..self.k)
            .map(|j| (0..self.k).map(|i| self.entry(i, j).abs()).sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// JSON array-of-arrays; entries accepted as numbers or decimal strings so
/// values beyond i64 stay exact.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<EntryRepr>> = self
            .rows()
            .map(|r| r.iter().map(EntryRepr::from_bigint).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<EntryRepr>> = Vec::deserialize(deserializer)?;
        let k = rows.len();
        for row in &rows {
            if row.len() != k {
                return Err(D::Error::custom("matrix rows must all have length k"));
            }
        }
        let entries: Vec<BigInt> =
            rows.into_iter().flatten().map(|e| e.into_bigint()).collect::<Result<_, _>>()
                .map_err(D::Error::custom)?;
        IntMatrix::new(k, entries).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Small(i64),
    Big(String),
}

impl EntryRepr {
    fn from_bigint(x: &BigInt) -> EntryRepr {
        match i64::try_from(x) {
            Ok(v) => EntryRepr::Small(v),
            Err(_) => EntryRepr::Big(x.to_string()),
        }
    }

    fn into_bigint(self) -> Result<BigInt, String> {
        match self {
            EntryRepr::Small(v) => Ok(BigInt::from(v)),
            EntryRepr::Big(s) => s.parse().map_err(|e| format!("bad matrix entry `{s}`: {e}")),
        }
    }
}

/// The elementary matrix E_{i,j}(α): identity plus α in row i, column j
/// (1-indexed).
pub fn elementary(
    k: usize,
    i: usize,
    j: usize,
    alpha: impl Into<BigInt>,
) -> Result<IntMatrix, SlkError> {
    if k < 2 || i == j || i == 0 || j == 0 || i > k || j > k {
        return Err(SlkError::BadIndices { k, i, j });
    }
    let mut m = IntMatrix::identity(k)?;
    m.entries[(i - 1) * k + (j - 1)] = alpha.into();
    debug_assert!(m.determinant().is_one());
    Ok(m)
}

pub fn lcm_1_to(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc = acc.lcm(&BigInt::from(i));
    }
    acc
}

/// The candidate element g_n = E_{1,k}(lcm(1..n)).
pub fn g_n(k: usize, n: u64) -> Result<IntMatrix, SlkError> {
    if n == 0 {
        return Err(SlkError::BadDimension("g_n requires n ≥ 1".into()));
    }
    elementary(k, 1, k, lcm_1_to(n))
}

/// Word-length stand-in: ⌈log₂ ‖g‖₁⌉ + 1.
pub fn size_proxy(g: &IntMatrix) -> Result<u64, SlkError> {
    if g.is_identity() {
        return Err(SlkError::IdentityInput);
    }
    let norm = g.one_norm();
    debug_assert!(norm > BigInt::zero());
    let ceil_log2 = if norm.is_one() { 0 } else { (&norm - 1u8).bits() };
    Ok(ceil_log2 + 1)
}
