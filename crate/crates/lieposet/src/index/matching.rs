//! Maximum matching in general graphs (Edmonds' blossom algorithm).

use std::collections::VecDeque;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { n, adj: vec![vec![]; n] }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b && !self.adj[a].contains(&b) {
            self.adj[a].push(b);
            self.adj[b].push(a);
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = (0..self.n)
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        e.sort_unstable();
        e
    }
}

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.n];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> usize {
        let n = self.g.n;
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.g.adj[v].len() {
                let to = self.g.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }
}

/// Maximum matching as a mate array (`usize::MAX` for unmatched vertices).
pub fn maximum_matching(g: &Graph) -> Vec<usize> {
    let n = g.n;
    let mut st = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    // greedy start
    for v in 0..n {
        if st.mate[v] == NONE {
            if let Some(&w) = g.adj[v].iter().find(|&&w| st.mate[w] == NONE) {
                st.mate[v] = w;
                st.mate[w] = v;
            }
        }
    }
    for v in 0..n {
        if st.mate[v] != NONE {
            continue;
        }
        let mut u = st.find_path(v);
        while u != NONE {
            let pv = st.parent[u];
            let ppv = st.mate[pv];
            st.mate[u] = pv;
            st.mate[pv] = u;
            u = ppv;
        }
    }
    st.mate
}

pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).iter().filter(|&&m| m != NONE).count() / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_edges(n: usize, e: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(a, b) in e {
            g.add_edge(a, b);
        }
        g
    }

    fn brute(n: usize, edges: &[(usize, usize)]) -> usize {
        fn go(i: usize, edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let mut best = go(i + 1, edges, used);
            let (a, b) = edges[i];
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                best = best.max(1 + go(i + 1, edges, used));
                used[a] = false;
                used[b] = false;
            }
            best
        }
        go(0, edges, &mut vec![false; n])
    }

    #[test]
    fn paths_and_odd_cycles() {
        assert_eq!(matching_number(&from_edges(4, &[(0, 1), (1, 2), (2, 3)])), 2);
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert_eq!(matching_number(&from_edges(5, &c5)), 2);
        assert_eq!(matching_number(&Graph::new(3)), 0);
    }

    #[test]
    fn blossom_needed() {
        // triangle with two pendant paths: augmenting path passes through the blossom
        let g = from_edges(7, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (1, 5), (5, 6)]);
        assert_eq!(matching_number(&g), 3);
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(n in 2usize..9, raw in proptest::collection::vec((0usize..9, 0usize..9), 0..14)) {
            let edges: Vec<(usize, usize)> = {
                let mut e: Vec<_> = raw.into_iter()
                    .map(|(a, b)| (a % n, b % n))
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (a.min(b), a.max(b)))
                    .collect();
                e.sort_unstable();
                e.dedup();
                e
            };
            let g = from_edges(n, &edges);
            let mate = maximum_matching(&g);
            for v in 0..n {
                if mate[v] != NONE {
                    prop_assert_eq!(mate[mate[v]], v);
                    prop_assert!(g.adj[v].contains(&mate[v]));
                }
            }
            prop_assert_eq!(matching_number(&g), brute(n, &edges));
        }
    }
}
