//! Posets on `{−n..−1, 1..n}` used for the B, C and D constructions.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Index `0..2n` runs through the labels in integer order:
/// `−n, …, −1, 1, …, n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPoset {
    half: usize,
    less: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedViolation {
    pub condition: u8,
    pub labels: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPosetJson {
    pub n: usize,
    pub covers: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

impl SignedPoset {
    pub fn index_of(&self, label: i64) -> usize {
        let n = self.half as i64;
        if label < 0 {
            (label + n) as usize
        } else {
            (label + n - 1) as usize
        }
    }

    pub fn label_of(&self, idx: usize) -> i64 {
        let n = self.half as i64;
        let i = idx as i64;
        if i < n {
            i - n
        } else {
            i - n + 1
        }
    }

    /// Builds from signed cover pairs, taking the transitive closure. Labels
    /// are kept as given.
    pub fn from_covers(half: usize, covers: &[(i64, i64)]) -> Result<SignedPoset> {
        let m = 2 * half;
        let mut p = SignedPoset { half, less: vec![false; m * m] };
        for &(a, b) in covers {
            for x in [a, b] {
                if x == 0 || x.unsigned_abs() as usize > half {
                    return Err(Error::OutOfRange { label: x, n: half });
                }
            }
            let (i, j) = (p.index_of(a), p.index_of(b));
            p.less[i * m + j] = true;
        }
        // Floyd–Warshall closure; labels need not be increasing here
        for k in 0..m {
            for i in 0..m {
                if p.less[i * m + k] {
                    for j in 0..m {
                        if p.less[k * m + j] {
                            p.less[i * m + j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..m).find(|&i| p.less[i * m + i]) {
            return Err(Error::Cycle(vec![p.label_of(i)]));
        }
        Ok(p)
    }

    pub fn from_json(j: &SignedPosetJson) -> Result<SignedPoset> {
        if j.n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        let covers: Vec<_> = j.covers.iter().map(|&[a, b]| (a, b)).collect();
        Self::from_covers(j.n, &covers)
    }

    pub fn half_size(&self) -> usize {
        self.half
    }

    /// Labels in index order.
    pub fn labels(&self) -> Vec<i64> {
        (0..2 * self.half).map(|i| self.label_of(i)).collect()
    }

    pub fn less(&self, a: i64, b: i64) -> bool {
        let m = 2 * self.half;
        self.less[self.index_of(a) * m + self.index_of(b)]
    }

    pub fn leq(&self, a: i64, b: i64) -> bool {
        a == b || self.less(a, b)
    }

    pub fn covers(&self) -> Vec<(i64, i64)> {
        let ls = self.labels();
        let mut out = vec![];
        for &a in &ls {
            for &b in &ls {
                if self.less(a, b) && !ls.iter().any(|&k| self.less(a, k) && self.less(k, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_json(&self, variant: Option<&str>) -> SignedPosetJson {
        SignedPosetJson {
            n: self.half,
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            variant: variant.map(str::to_owned),
        }
    }

    /// Checks the admissibility conditions; `orthogonal` adds the B/D
    /// condition that no `i ⪯ j` has `−j ⪯ i`.
    pub fn violations(&self, orthogonal: bool) -> Vec<SignedViolation> {
        let ls = self.labels();
        let mut out = vec![];
        for &i in &ls {
            for &j in &ls {
                if !self.less(i, j) {
                    continue;
                }
                if i > j {
                    out.push(SignedViolation { condition: 1, labels: vec![i, j] });
                }
                for &k in &ls {
                    if self.less(j, k) && !self.less(i, k) {
                        out.push(SignedViolation { condition: 2, labels: vec![i, j, k] });
                    }
                }
                if i != -j && !self.less(-j, -i) {
                    out.push(SignedViolation { condition: 3, labels: vec![i, j] });
                }
                if orthogonal && self.leq(-j, i) {
                    out.push(SignedViolation { condition: 4, labels: vec![i, j] });
                }
            }
        }
        out
    }

    /// The same relation viewed as an ordinary poset on `2n` elements
    /// (indices in label order), relabeled naturally.
    pub fn underlying(&self) -> super::Poset {
        let m = 2 * self.half;
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .filter(|&(i, j)| self.less[i * m + j])
            .collect();
        super::Poset::from_relation(m, &pairs).unwrap().0
    }
}
