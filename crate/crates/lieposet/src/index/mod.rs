//! Certified index computation and the closed-form index formulas.
//!
//! The index `dim g − max_F rank B_F` is bracketed from both sides:
//! sampled functionals give upper bounds, while the commutator-graph
//! matching, semi-invariants and parity give lower bounds. The result is
//! exact when the two meet.

mod invariants;
pub mod matching;

pub use invariants::invariant_bound;
pub use matching::{matching_number, maximum_matching, Graph};

use crate::algebra::{LiePosetAlgebra, Variant};
use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::poset::Poset;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexConfig {
    pub trials: usize,
    pub seed: u64,
    pub coeff_bound: i64,
}

impl Default for IndexConfig {
    fn default() -> Self {
        IndexConfig { trials: 8, seed: 0, coeff_bound: 65536 }
    }
}

impl IndexConfig {
    pub fn with_seed(seed: u64) -> Self {
        IndexConfig { seed, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Bracketed,
}

/// Where the lower bound came from; not part of the JSON certificate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LowerBounds {
    pub matching: usize,
    pub invariants: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexCertificate {
    pub dim: usize,
    pub lower: usize,
    pub upper: usize,
    pub formula: Option<i64>,
    pub status: Status,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip)]
    pub sources: LowerBounds,
}

impl IndexCertificate {
    pub fn index(&self) -> Option<usize> {
        (self.status == Status::Exact).then_some(self.lower)
    }

    /// A formula value contradicting the bounds.
    pub fn discrepancy(&self) -> bool {
        match self.formula {
            Some(f) => f < self.lower as i64 || f > self.upper as i64,
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KirillovEvaluation {
    pub functional: Vec<Q>,
    pub matrix: Vec<Vec<Q>>,
    pub rank: usize,
}

impl KirillovEvaluation {
    /// `B_F(i, j) = F([x_i, x_j])` and its exact rank.
    pub fn new(alg: &LiePosetAlgebra, f: &[Q]) -> Result<Self> {
        let d = alg.dim();
        if f.len() != d {
            return Err(Error::Length { found: f.len(), expected: d });
        }
        let matrix: Vec<Vec<Q>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        alg.bracket_basis(i, j)
                            .iter()
                            .fold(Q::zero(), |acc, (k, c)| acc + c * &f[*k])
                    })
                    .collect()
            })
            .collect();
        let rank = linalg::rank_q(&matrix);
        Ok(KirillovEvaluation { functional: f.to_vec(), matrix, rank })
    }

    pub fn kernel_dim(&self) -> usize {
        self.functional.len() - self.rank
    }
}

/// Vertices are basis elements, edges join pairs with nonzero bracket.
pub fn commutator_graph(alg: &LiePosetAlgebra) -> Graph {
    let d = alg.dim();
    let mut g = Graph::new(d);
    for i in 0..d {
        for j in i + 1..d {
            if !alg.bracket_basis(i, j).is_empty() {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// `dim − 2ν(G)`: rank B_F is at most twice the matching number.
///
/// For `sl` over a poset the graph is taken on `gl`, whose basis isolates
/// the central identities: `gl = sl ⊕ kI`, so both Kirillov forms have the
/// same rank and `dim sl − rank = (dim gl − rank) − 1`.
pub fn matching_lower_bound(alg: &LiePosetAlgebra) -> usize {
    if let (Variant::SlA, Some(p)) = (alg.variant, alg.poset()) {
        if p.size() > 0 {
            let gl = LiePosetAlgebra::type_a(p, false);
            return gl.dim() - 2 * matching_number(&commutator_graph(&gl)) - 1;
        }
    }
    alg.dim() - 2 * matching_number(&commutator_graph(alg))
}

/// The functionals tried by the sampler, in trial order.
pub fn sample_functionals(d: usize, trials: usize, seed: u64, coeff_bound: i64) -> Vec<Vec<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            (0..d)
                .map(|_| Q::from_integer(BigInt::from(rng.gen_range(-coeff_bound..=coeff_bound))))
                .collect()
        })
        .collect()
}

fn best_of(alg: &LiePosetAlgebra, fs: &[Vec<Q>], offset: usize) -> Option<(usize, usize)> {
    fs.par_iter()
        .enumerate()
        .map(|(t, f)| {
            let ev = KirillovEvaluation::new(alg, f).expect("length matches");
            (ev.kernel_dim(), t + offset)
        })
        .min()
}

/// Minimum kernel dimension of `B_F` over sampled `F`, with the best `F`.
pub fn sampled_index_upper(
    alg: &LiePosetAlgebra,
    trials: usize,
    seed: u64,
    coeff_bound: i64,
) -> (usize, Vec<Q>) {
    let fs = sample_functionals(alg.dim(), trials.max(1), seed, coeff_bound);
    let (u, t) = best_of(alg, &fs, 0).unwrap();
    (u, fs[t].clone())
}

/// Formula value attached to type-A certificates over height ≤ 2 posets.
fn formula_for(alg: &LiePosetAlgebra) -> Option<i64> {
    let p = alg.poset()?;
    let f = formula_index(p).ok()?;
    match alg.variant {
        crate::Variant::SlA => Some(f),
        crate::Variant::GlA => Some(f + 1),
        _ => None,
    }
}

fn round_up_parity(lower: usize, dim: usize) -> usize {
    // rank B_F is even, so the index has the parity of dim
    if (dim - lower) % 2 == 1 {
        lower + 1
    } else {
        lower
    }
}

/// Certified index. Sampling stops early once the upper bound meets the
/// lower bound; the reported values depend only on the inputs.
pub fn index(alg: &LiePosetAlgebra, cfg: &IndexConfig) -> IndexCertificate {
    let d = alg.dim();
    let trials = cfg.trials.max(1);
    let matching = matching_lower_bound(alg);
    let mut lower = round_up_parity(matching, d);
    let mut sources = LowerBounds { matching, invariants: 0 };
    let fs = sample_functionals(d, trials, cfg.seed, cfg.coeff_bound);
    let mut upper = KirillovEvaluation::new(alg, &fs[0]).unwrap().kernel_dim();
    if upper > lower {
        let inv = invariant_bound(alg, upper, cfg.seed);
        sources.invariants = inv;
        lower = lower.max(round_up_parity(inv, d));
    }
    if upper > lower && trials > 1 {
        upper = upper.min(best_of(alg, &fs[1..], 1).unwrap().0);
    }
    IndexCertificate {
        dim: d,
        lower: lower.min(upper),
        upper,
        formula: formula_for(alg),
        status: if lower >= upper { Status::Exact } else { Status::Bracketed },
        trials,
        seed: cfg.seed,
        sources,
    }
}

/// Closed-form index of `g_A(P)` for height ≤ 2.
pub fn formula_index(p: &Poset) -> Result<i64> {
    let h = p.height();
    if h > 2 {
        return Err(Error::FormulaInapplicable(h));
    }
    let n = p.size() as i64;
    if h == 0 {
        return Ok(n - 1);
    }
    let c = p.components().len() as i64;
    let ud: i64 = (0..p.size())
        .filter(|&j| !p.is_extremal(j))
        .map(|j| p.ud(j) as i64)
        .sum();
    Ok(p.rel_e_count() as i64 - n + 2 * c - 1 + ud)
}

/// Index of `g_A(P(n, 1, m))`.
pub fn cpn1m_index(n: i64, m: i64) -> i64 {
    use std::cmp::Ordering::*;
    match n.cmp(&m) {
        Equal => n * n - 2 * n + 2,
        Less => n * (m - 2),
        Greater => m * (n - 2),
    }
}

/// Entries `(i, j)` (0-based) of the explicit functional on `g(P(n, 1, m))`
/// whose kernel realizes the index. Elements `0..n` are minimal, `n` is the
/// middle element and `n+1..n+m+1` are maximal.
pub fn explicit_functional_entries(n: usize, m: usize) -> Vec<(usize, usize)> {
    assert!(n >= 1 && m >= 1);
    // shape with at most as many minima as maxima: P(a, 1, b), a ≤ b
    let (a, b) = (n.min(m), n.max(m));
    let mut e: Vec<(usize, usize)> = vec![];
    if a == b {
        for i in 1..=a {
            e.push((1, a + 1 + i));
        }
        for i in 2..=a {
            e.push((i, a + i));
        }
    } else {
        for i in 1..=b {
            e.push((1, a + 1 + i));
        }
        for i in 2..=a + 1 {
            e.push((i, a + i));
        }
    }
    let total = n + m + 1;
    e.into_iter()
        .map(|(i, j)| {
            if n > m {
                // transpose across the anti-diagonal for the dual shape
                (total - j, total - i)
            } else {
                (i - 1, j - 1)
            }
        })
        .collect()
}

/// Coordinates of the functional `Σ E*_{ij}` over the given entries.
pub fn functional_from_entries(alg: &LiePosetAlgebra, entries: &[(usize, usize)]) -> Vec<Q> {
    alg.basis
        .iter()
        .map(|m| {
            entries
                .iter()
                .filter_map(|e| m.get(e))
                .fold(Q::zero(), |acc, v| acc + v)
        })
        .collect()
}

/// The explicit functional as coordinates on the algebra of `P(n, 1, m)`.
pub fn explicit_functional(alg: &LiePosetAlgebra, n: usize, m: usize) -> Vec<Q> {
    functional_from_entries(alg, &explicit_functional_entries(n, m))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn sl(p: &Poset) -> LiePosetAlgebra {
        LiePosetAlgebra::type_a(p, true)
    }

    #[test]
    fn formula_examples() {
        assert_eq!(formula_index(&Poset::complete(&[1, 1, 2]).unwrap()), Ok(0));
        assert_eq!(formula_index(&Poset::antichain(5)), Ok(4));
        let u = Poset::disjoint_union(&[
            Poset::complete(&[1, 2]).unwrap(),
            Poset::complete(&[1, 1, 2]).unwrap(),
        ]);
        assert_eq!(formula_index(&u), Ok(1));
        assert_eq!(formula_index(&Poset::chain(4)), Err(Error::FormulaInapplicable(3)));
    }

    #[test]
    fn cpn1m_cases() {
        assert_eq!(cpn1m_index(1, 2), 0);
        assert_eq!(cpn1m_index(3, 3), 5);
        assert_eq!(cpn1m_index(4, 2), 4);
    }

    #[test]
    fn commutator_graphs() {
        let ab = sl(&Poset::antichain(3));
        assert!(commutator_graph(&ab).edges().is_empty());
        assert_eq!(commutator_graph(&sl(&Poset::chain(2))).edges(), vec![(0, 1)]);
        let gl = LiePosetAlgebra::type_a(&Poset::complete(&[1, 1, 2]).unwrap(), false);
        assert_eq!(matching_lower_bound(&gl), 1);
    }

    #[test]
    fn sampled_upper_examples() {
        let ab = sl(&Poset::antichain(4));
        assert_eq!(sampled_index_upper(&ab, 2, 1, 65536).0, 3);
        let p112 = sl(&Poset::complete(&[1, 1, 2]).unwrap());
        assert_eq!(sampled_index_upper(&p112, 4, 1, 65536).0, 0);
        let p212 = sl(&Poset::complete(&[2, 1, 2]).unwrap());
        assert_eq!(sampled_index_upper(&p212, 8, 1, 65536).0, 2);
    }

    #[test]
    fn certificates_are_exact_on_small_cases() {
        let cfg = IndexConfig::with_seed(3);
        let c = index(&sl(&Poset::complete(&[2, 1, 2]).unwrap()), &cfg);
        assert_eq!((c.status, c.lower, c.upper, c.formula), (Status::Exact, 2, 2, Some(2)));
        let c = index(&sl(&Poset::complete(&[3, 1, 3]).unwrap()), &cfg);
        assert_eq!((c.status, c.lower), (Status::Exact, 5));
        let c = index(&sl(&Poset::antichain(5)), &cfg);
        assert_eq!(c.index(), Some(4));
    }

    #[test]
    fn sl2_kirillov() {
        let a = sl(&Poset::chain(2));
        let ev = KirillovEvaluation::new(&a, &[q(0), q(1)]).unwrap();
        assert_eq!(ev.rank, 2);
        assert!(KirillovEvaluation::new(&a, &[q(1)]).is_err());
    }

    #[test]
    fn explicit_functional_kernels() {
        for n in 1..=4 {
            for m in 1..=4 {
                let p = Poset::complete(&[n, 1, m]).unwrap();
                let a = sl(&p);
                let f = explicit_functional(&a, n, m);
                let ev = KirillovEvaluation::new(&a, &f).unwrap();
                assert_eq!(ev.kernel_dim() as i64, cpn1m_index(n as i64, m as i64), "P({n},1,{m})");
            }
        }
    }
}
