//! Partitions, multipartitions and the dominance order on Jordan types.

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A partition stored with parts in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let top = self.parts.first().copied().unwrap_or(0);
        Partition::new((1..=top).map(|k| self.parts.iter().filter(|&&p| p >= k).count()).collect())
    }

    /// Ranks of N^i for i = 0..=total, for N nilpotent of this Jordan type.
    pub fn rank_sequence(&self) -> Vec<usize> {
        (0..=self.total()).map(|i| self.parts.iter().map(|&p| p.saturating_sub(i)).sum()).collect()
    }

    /// Recover the Jordan type from rk N^0, rk N^1, ... (must end in 0).
    pub fn from_ranks(ranks: &[usize]) -> Partition {
        // Blocks of size >= k number rk N^{k-1} - rk N^k.
        let ge: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut parts = Vec::new();
        for k in 1..=ge.len() {
            let next = ge.get(k).copied().unwrap_or(0);
            parts.extend(std::iter::repeat(k).take(ge[k - 1] - next));
        }
        Partition::new(parts)
    }

    /// Dominance: every partial sum of self is at most the matching partial sum of o.
    pub fn dominance_leq(&self, o: &Partition) -> Result<bool> {
        if self.total() != o.total() {
            return Err(Error::domain(format!(
                "dominance order needs equal totals ({} vs {})",
                self.total(),
                o.total()
            )));
        }
        let n = self.len().max(o.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += o.parts.get(i).copied().unwrap_or(0);
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All partitions of m in lexicographic order of their part vectors.
    pub fn enumerate(m: usize) -> Vec<Partition> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in 1..=rem.min(max) {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m, m, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    pub fn render(&self) -> String {
        format!("[{}]", self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Partitions indexed by atom label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPartition(pub BTreeMap<String, Partition>);

impl MultiPartition {
    pub fn get(&self, label: &str) -> Option<&Partition> {
        self.0.get(label)
    }

    pub fn dominance_leq(&self, o: &MultiPartition) -> Result<bool> {
        if self.0.keys().ne(o.0.keys()) {
            return Err(Error::domain("multipartitions have different label sets"));
        }
        for (k, p) in &self.0 {
            if !p.dominance_leq(&o.0[k])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.0.iter().map(|(k, p)| (k.clone(), serde_json::json!(p.parts()))).collect(),
        )
    }
}

/// Jordan type of a nilpotent matrix; ranks over the field of x-fractions
/// give the generic type when entries depend on x.
pub fn jordan_type(n: &Matrix) -> Result<Partition> {
    if !n.is_square() {
        return Err(Error::domain("jordan_type needs a square matrix"));
    }
    if n.entries().iter().any(|c| c.has_opaque()) {
        return Err(Error::unsupported("jordan_type of a matrix with opaque entries"));
    }
    let size = n.rows();
    let mut ranks = vec![size];
    let mut p = Matrix::identity(size);
    for _ in 0..size {
        p = p.mul(n);
        let r = p.rank()?;
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::domain("matrix is not nilpotent"));
    }
    Ok(Partition::from_ranks(&ranks))
}

/// A nilpotent matrix in Jordan form with the given type (ones on the subdiagonal).
pub fn nilpotent_of_type(t: &Partition) -> Matrix {
    use crate::algebra::Coef;
    let n = t.total();
    let mut m = Matrix::zeros(n, n);
    let mut start = 0;
    for &p in t.parts() {
        for i in 1..p {
            m.set(start + i, start + i - 1, Coef::one());
        }
        start += p;
    }
    m
}
