//! Canonical labeling for isomorphism dedup: colour refinement seeded with
//! chain depths, then individualization with a backtracking search for the
//! lexicographically least relation code.

use super::Poset;

struct Search<'a> {
    p: &'a Poset,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Poset {
    /// Isomorphic copy in canonical labeling. Two posets are isomorphic iff
    /// their canonical forms are equal.
    pub fn canonical_form(&self) -> Poset {
        let perm = self.canonical_perm();
        self.relabel(&perm).expect("canonical labeling is natural")
    }

    /// `(n, sorted covers)` of the canonical form, 1-based.
    pub fn canonical_key(&self) -> (usize, Vec<(usize, usize)>) {
        let c = self.canonical_form();
        (c.n, c.covers().into_iter().map(|(a, b)| (a + 1, b + 1)).collect())
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.n == other.n
            && self.rel_count() == other.rel_count()
            && self.canonical_form() == other.canonical_form()
    }

    /// Permutation old -> new of the canonical labeling.
    fn canonical_perm(&self) -> Vec<usize> {
        let n = self.n;
        if n == 0 {
            return vec![];
        }
        let d = self.depths();
        let h = self.heights_above();
        let init: Vec<(usize, usize, usize, usize)> = (0..n)
            .map(|i| (d[i], h[i], self.down_count(i), self.up_count(i)))
            .collect();
        let colors = rank_keys(&init);
        let colors = self.refine(colors);
        let mut s = Search { p: self, best: None };
        s.go(colors);
        let order = s.best.unwrap().1;
        let mut perm = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        perm
    }

    /// Iterated refinement: colour = (old colour, sorted colours below,
    /// sorted colours above). The old colour stays the leading key so the
    /// depth ordering (and hence naturality) is preserved.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = self.n;
        loop {
            let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
                .map(|i| {
                    let mut below: Vec<usize> =
                        (0..n).filter(|&k| self.less(k, i)).map(|k| colors[k]).collect();
                    let mut above: Vec<usize> =
                        (0..n).filter(|&k| self.less(i, k)).map(|k| colors[k]).collect();
                    below.sort_unstable();
                    above.sort_unstable();
                    (colors[i], below, above)
                })
                .collect();
            let next = rank_keys(&keys);
            let count = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
            if count(&next) == count(&colors) {
                return next;
            }
            colors = next;
        }
    }
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

impl Search<'_> {
    fn go(&mut self, colors: Vec<usize>) {
        let n = self.p.n;
        let ncolors = colors.iter().max().unwrap() + 1;
        if ncolors == n {
            let mut order = vec![0; n];
            for (v, &c) in colors.iter().enumerate() {
                order[c] = v;
            }
            let code = self.code(&order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        }
        // first non-singleton cell in colour order
        let mut sizes = vec![0usize; ncolors];
        for &c in &colors {
            sizes[c] += 1;
        }
        let cell = (0..ncolors).find(|&c| sizes[c] > 1).unwrap();
        let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
        // twins (same strict up- and down-sets) give identical codes
        let mut tried: Vec<usize> = Vec::new();
        for &v in &members {
            if tried.iter().any(|&t| self.twins(t, v)) {
                continue;
            }
            tried.push(v);
            // shift colours above the cell to open a slot just after it
            let next: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| {
                    if c > cell || (c == cell && u != v) {
                        c + 1
                    } else {
                        c
                    }
                })
                .collect();
            let refined = self.p.refine(next);
            self.go(refined);
        }
    }

    fn twins(&self, a: usize, b: usize) -> bool {
        let p = self.p;
        (0..p.n)
            .filter(|&k| k != a && k != b)
            .all(|k| p.less(k, a) == p.less(k, b) && p.less(a, k) == p.less(b, k))
    }

    fn code(&self, order: &[usize]) -> Vec<u64> {
        let n = self.p.n;
        let mut bits = vec![0u64; (n * n).div_ceil(64)];
        let mut idx = 0;
        for i in 0..n {
            for j in 0..n {
                if self.p.less(order[i], order[j]) {
                    bits[idx / 64] |= 1 << (63 - idx % 64);
                }
                idx += 1;
            }
        }
        bits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelings_share_canonical_form() {
        let a = Poset::from_cover_relations(5, &[(1, 3), (2, 3), (3, 4), (1, 5)]).unwrap();
        let b = Poset::from_cover_relations(5, &[(2, 4), (1, 4), (4, 5), (2, 3)]).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert!(a.is_isomorphic(&b));
        let c = Poset::complete(&[2, 1, 2]).unwrap();
        assert!(!a.is_isomorphic(&c));
    }

    #[test]
    fn canonical_is_natural_and_idempotent() {
        let p = Poset::complete(&[2, 1, 2]).unwrap();
        let c = p.canonical_form();
        assert!(c.relations().iter().all(|&(a, b)| a < b));
        assert_eq!(c.canonical_form(), c);
    }

    #[test]
    fn dual_of_dual() {
        let p = Poset::from_cover_relations(6, &[(1, 2), (2, 3), (2, 4), (3, 5), (4, 6)]).unwrap();
        assert_eq!(p.dual().dual().canonical_form(), p.canonical_form());
    }
}
