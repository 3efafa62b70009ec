//! Finite posets on `{0..n}` stored as dense strict-order tables.
//!
//! Elements are 0-based internally; JSON and the `*_labels` helpers use the
//! 1-based labels `1..=n`. Every constructor leaves the poset naturally
//! labeled (`i < j` in the order implies `i < j` as integers).

mod canonical;
pub mod fixtures;
mod signed;

pub use signed::{SignedPoset, SignedPosetJson, SignedViolation};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset {
    n: usize,
    less: Vec<bool>,
}

/// A poset obtained by identifying elements of two posets, with the maps
/// from each input into the result.
#[derive(Clone, Debug)]
pub struct Glued {
    pub poset: Poset,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistics {
    pub n: usize,
    pub rel_count: usize,
    /// Extremal elements, 1-based.
    pub ext: Vec<usize>,
    pub rel_e_count: usize,
    pub components: usize,
    pub height: usize,
    pub is_pure: bool,
    pub ranks: Option<Vec<usize>>,
    pub up: Vec<usize>,
    pub down: Vec<usize>,
    pub ud: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub n: usize,
    pub covers: Vec<[i64; 2]>,
}

fn find_cycle(n: usize, succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if state[s] != 0 {
            continue;
        }
        stack.push((s, 0));
        state[s] = 1;
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if *k < succ[v].len() {
                let w = succ[v][*k];
                *k += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let start = stack.iter().position(|&(u, _)| u == w).unwrap();
                        return Some(stack[start..].iter().map(|&(u, _)| u).collect());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

impl Poset {
    /// Builds a poset from an arbitrary acyclic relation on `0..n` (not
    /// necessarily transitive or natural). Returns the poset and the map from
    /// input index to output label.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<(Poset, Vec<usize>)> {
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::OutOfRange {
                    label: a.max(b) as i64 + 1,
                    n,
                });
            }
            succ[a].push(b);
        }
        if let Some(c) = find_cycle(n, &succ) {
            return Err(Error::Cycle(c.into_iter().map(|v| v as i64 + 1).collect()));
        }
        // stable topological order: smallest available index first
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut map = vec![0; n];
        let mut next = 0;
        while let Some(v) = ready.pop_first() {
            map[v] = next;
            next += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        let mut less = vec![false; n * n];
        for &(a, b) in pairs {
            less[map[a] * n + map[b]] = true;
        }
        let mut p = Poset { n, less };
        p.close();
        Ok((p, map))
    }

    fn close(&mut self) {
        let n = self.n;
        // natural labeling lets a single pass in reverse order suffice
        for i in (0..n).rev() {
            for j in i + 1..n {
                if self.less[i * n + j] {
                    for k in j + 1..n {
                        if self.less[j * n + k] {
                            self.less[i * n + k] = true;
                        }
                    }
                }
            }
        }
    }

    /// Builds from 1-based cover pairs, relabeling naturally if needed.
    pub fn from_cover_relations(n: usize, covers: &[(usize, usize)]) -> Result<Poset> {
        for &(a, b) in covers {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::OutOfRange { label: x as i64, n });
                }
            }
        }
        let pairs: Vec<_> = covers.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
        Ok(Self::from_relation(n, &pairs)?.0)
    }

    pub fn from_json(j: &PosetJson) -> Result<Poset> {
        let mut covers = Vec::with_capacity(j.covers.len());
        for &[a, b] in &j.covers {
            for x in [a, b] {
                if x < 1 || x as usize > j.n {
                    return Err(Error::OutOfRange { label: x, n: j.n });
                }
            }
            covers.push((a as usize, b as usize));
        }
        if j.n == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        Self::from_cover_relations(j.n, &covers)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            n: self.n,
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| [a as i64 + 1, b as i64 + 1])
                .collect(),
        }
    }

    pub fn antichain(n: usize) -> Poset {
        Poset { n, less: vec![false; n * n] }
    }

    pub fn chain(n: usize) -> Poset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relation(n, &pairs).unwrap().0
    }

    /// The complete poset `P(r0, …, rt)`.
    pub fn complete(ranks: &[usize]) -> Result<Poset> {
        if ranks.is_empty() || ranks.contains(&0) {
            return Err(Error::BadRanks);
        }
        let n: usize = ranks.iter().sum();
        let level: Vec<usize> = ranks
            .iter()
            .enumerate()
            .flat_map(|(r, &k)| std::iter::repeat_n(r, k))
            .collect();
        let mut less = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                less[i * n + j] = level[i] < level[j];
            }
        }
        Ok(Poset { n, less })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i * self.n + j]
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j)
    }

    #[inline]
    pub fn related(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    pub fn covers_rel(&self, i: usize, j: usize) -> bool {
        self.less(i, j) && !(i + 1..j).any(|k| self.less(i, k) && self.less(k, j))
    }

    /// Hasse diagram edges, sorted, 0-based.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.covers_rel(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.less(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        (0..i).all(|k| !self.less(k, i))
    }

    pub fn is_maximal(&self, i: usize) -> bool {
        (i + 1..self.n).all(|k| !self.less(i, k))
    }

    pub fn is_extremal(&self, i: usize) -> bool {
        self.is_minimal(i) || self.is_maximal(i)
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_minimal(i)).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_maximal(i)).collect()
    }

    pub fn ext(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_extremal(i)).collect()
    }

    /// `U(P, j)`: number of elements strictly above `j`.
    pub fn up_count(&self, j: usize) -> usize {
        (0..self.n).filter(|&k| self.less(j, k)).count()
    }

    /// `D(P, j)`: number of elements strictly below `j`.
    pub fn down_count(&self, j: usize) -> usize {
        (0..self.n).filter(|&k| self.less(k, j)).count()
    }

    pub fn ud(&self, j: usize) -> usize {
        let (u, d) = (self.up_count(j), self.down_count(j));
        if u != d {
            u.abs_diff(d)
        } else {
            2
        }
    }

    pub fn rel_count(&self) -> usize {
        self.less.iter().filter(|&&b| b).count()
    }

    pub fn rel_e_count(&self) -> usize {
        let ext = self.ext();
        ext.iter()
            .flat_map(|&a| ext.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| self.less(a, b))
            .count()
    }

    /// Connected components of the Hasse diagram, each sorted, ordered by
    /// smallest element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut members = vec![];
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in 0..n {
                    if comp[w] == usize::MAX && self.related(v, w) {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Length of the longest chain ending at each element.
    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for j in 0..self.n {
            for i in 0..j {
                if self.less(i, j) {
                    d[j] = d[j].max(d[i] + 1);
                }
            }
        }
        d
    }

    /// Length of the longest chain starting at each element.
    pub fn heights_above(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        for i in (0..self.n).rev() {
            for j in i + 1..self.n {
                if self.less(i, j) {
                    h[i] = h[i].max(h[j] + 1);
                }
            }
        }
        h
    }

    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.depths();
        let h = d.iter().copied().max().unwrap_or(0);
        self.covers().iter().all(|&(a, b)| d[b] == d[a] + 1)
            && (0..self.n).all(|i| !self.is_maximal(i) || d[i] == h)
    }

    /// Rank function, defined only for pure posets.
    pub fn ranks(&self) -> Option<Vec<usize>> {
        self.is_pure().then(|| self.depths())
    }

    pub fn statistics(&self) -> Statistics {
        Statistics {
            n: self.n,
            rel_count: self.rel_count(),
            ext: self.ext().into_iter().map(|i| i + 1).collect(),
            rel_e_count: self.rel_e_count(),
            components: self.components().len(),
            height: self.height(),
            is_pure: self.is_pure(),
            ranks: self.ranks(),
            up: (0..self.n).map(|j| self.up_count(j)).collect(),
            down: (0..self.n).map(|j| self.down_count(j)).collect(),
            ud: (0..self.n).map(|j| self.ud(j)).collect(),
        }
    }

    pub fn dual(&self) -> Poset {
        let pairs: Vec<_> = self.relations().into_iter().map(|(a, b)| (b, a)).collect();
        Self::from_relation(self.n, &pairs).unwrap().0
    }

    pub fn disjoint_union(parts: &[Poset]) -> Poset {
        let n = parts.iter().map(|p| p.n).sum();
        let mut pairs = Vec::new();
        let mut off = 0;
        for p in parts {
            pairs.extend(p.relations().into_iter().map(|(a, b)| (a + off, b + off)));
            off += p.n;
        }
        Self::from_relation(n, &pairs).unwrap().0
    }

    /// Induced subposet on `s` (any order, duplicates ignored); elements keep
    /// their relative order.
    pub fn induced(&self, s: &[usize]) -> Result<Poset> {
        let mut s: Vec<usize> = s.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&x| x >= self.n) {
            return Err(Error::OutOfRange { label: bad as i64 + 1, n: self.n });
        }
        let m = s.len();
        let mut less = vec![false; m * m];
        for (a, &x) in s.iter().enumerate() {
            for (b, &y) in s.iter().enumerate() {
                less[a * m + b] = self.less(x, y);
            }
        }
        Ok(Poset { n: m, less })
    }

    /// `P^i`: the subposet of everything comparable to `i`.
    pub fn cone(&self, i: usize) -> Result<Poset> {
        if i >= self.n {
            return Err(Error::OutOfRange { label: i as i64 + 1, n: self.n });
        }
        if self.is_extremal(i) {
            return Err(Error::ExtremalCone(i + 1));
        }
        let s: Vec<usize> = (0..self.n).filter(|&j| j == i || self.related(i, j)).collect();
        self.induced(&s)
    }

    /// Identifies `pairs` (element of `self`, element of `other`); each pair
    /// must be two minimal or two maximal elements.
    pub fn glue(&self, other: &Poset, pairs: &[(usize, usize)]) -> Result<Glued> {
        let np = self.n;
        let mut seen_l = std::collections::HashSet::new();
        let mut seen_r = std::collections::HashSet::new();
        for &(a, b) in pairs {
            if a >= np || b >= other.n {
                return Err(Error::Glue(format!("pair ({}, {}) out of range", a + 1, b + 1)));
            }
            if !seen_l.insert(a) || !seen_r.insert(b) {
                return Err(Error::Glue(format!(
                    "pair ({}, {}) repeats an identified element",
                    a + 1,
                    b + 1
                )));
            }
            let mins = self.is_minimal(a) && other.is_minimal(b);
            let maxs = self.is_maximal(a) && other.is_maximal(b);
            if !self.is_extremal(a) || !other.is_extremal(b) {
                return Err(Error::Glue(format!(
                    "pair ({}, {}) involves a non-extremal element",
                    a + 1,
                    b + 1
                )));
            }
            if !mins && !maxs {
                return Err(Error::Glue(format!(
                    "pair ({}, {}) mixes a minimal and a maximal element",
                    a + 1,
                    b + 1
                )));
            }
        }
        let mut right = vec![usize::MAX; other.n];
        for &(a, b) in pairs {
            right[b] = a;
        }
        let mut next = np;
        for r in right.iter_mut() {
            if *r == usize::MAX {
                *r = next;
                next += 1;
            }
        }
        let total = next;
        let mut rel: Vec<(usize, usize)> = self.relations();
        rel.extend(other.relations().into_iter().map(|(a, b)| (right[a], right[b])));
        let (poset, map) = Self::from_relation(total, &rel)
            .map_err(|e| Error::Glue(format!("identification is not an order: {e}")))?;
        Ok(Glued {
            left: (0..np).map(|i| map[i]).collect(),
            right: right.iter().map(|&r| map[r]).collect(),
            poset,
        })
    }

    /// Same poset relabeled by `perm` (old index -> new index); `perm` must
    /// be a linear extension of the result.
    pub fn relabel(&self, perm: &[usize]) -> Option<Poset> {
        let n = self.n;
        let mut less = vec![false; n * n];
        for (a, b) in self.relations() {
            if perm[a] >= perm[b] {
                return None;
            }
            less[perm[a] * n + perm[b]] = true;
        }
        Some(Poset { n, less })
    }
}
