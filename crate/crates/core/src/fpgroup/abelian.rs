use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use super::GroupPresentation;

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` in invariant
/// factor form (`d₁ | d₂ | …`, every `dᵢ ≥ 2`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub rank: usize,
    #[serde(serialize_with = "ser_torsion", deserialize_with = "de_torsion")]
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// Builds the canonical form from arbitrary cyclic factors: zeros count
    /// towards the rank, units are dropped, the rest is rediagonalised.
    pub fn from_cyclic(rank: usize, orders: &[u64]) -> Self {
        let m: Vec<Vec<i64>> = orders
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut row = vec![0i64; orders.len()];
                row[i] = d as i64;
                row
            })
            .collect();
        let divisors = smith_normal_form(&m);
        AbelianGroup::from_divisors(rank + orders.len(), &divisors)
    }

    /// The cokernel of a matrix with the given nonzero invariant factors and
    /// `columns` columns.
    pub fn from_divisors(columns: usize, divisors: &[BigInt]) -> Self {
        let rank = columns - divisors.len();
        let torsion = divisors.iter().filter(|d| !d.is_one()).map(|d| d.magnitude().clone()).collect();
        AbelianGroup { rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("abelian groups serialize")
    }
}

fn ser_torsion<S: Serializer>(t: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for d in t {
        match d.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

fn de_torsion<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Entry {
        Small(u64),
        Big(String),
    }
    Vec::<Entry>::deserialize(d)?
        .into_iter()
        .map(|e| match e {
            Entry::Small(v) => Ok(BigUint::from(v)),
            Entry::Big(s) => s.parse().map_err(de::Error::custom),
        })
        .collect()
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Nonzero invariant factors `d₁ | d₂ | …` of an integer matrix, computed
/// with unimodular row and column operations over arbitrary-precision
/// integers. Pivots are entries of least absolute value.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold any offending row into the pivot row
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            // move the smallest nonzero entry of row/column t onto the diagonal
            let mut small = (t, t);
            for i in t..rows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[small.0][small.1].abs() {
                    small = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[small.0][small.1].abs() {
                    small = (t, j);
                }
            }
            if small.0 != t {
                a.swap(t, small.0);
            }
            if small.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, small.1);
                }
            }
        }
        let d = a[t][t].abs();
        out.push(d);
        t += 1;
    }
    out
}

/// Rank of an integer matrix.
pub fn integer_rank(m: &[Vec<i64>]) -> usize {
    smith_normal_form(m).len()
}

/// The abelianization: cokernel of the relator exponent matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianGroup {
    let g = p.generator_count();
    let m: Vec<Vec<i64>> =
        p.relators.iter().map(|w| (0..g as u32).map(|x| w.exponent_sum(x)).collect()).collect();
    AbelianGroup::from_divisors(g, &smith_normal_form(&m))
}

/// `H₁ = ker ∂₁ / im ∂₂` of a 2-dimensional chain complex with `edges`
/// 1-cells, given `∂₁` (vertices × edges) and `∂₂` (edges × faces).
pub fn first_homology(edges: usize, d1: &[Vec<i64>], d2: &[Vec<i64>]) -> AbelianGroup {
    let r1 = integer_rank(d1);
    let divisors = smith_normal_form(d2);
    let torsion = divisors.iter().filter(|d| !d.is_one()).map(|d| d.magnitude().clone()).collect();
    AbelianGroup { rank: edges - r1 - divisors.len(), torsion }
}

/// Absolute determinant of a square matrix, as a sanity reference for
/// [`smith_normal_form`].
pub fn abs_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
    d.abs()
}
