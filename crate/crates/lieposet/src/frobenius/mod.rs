//! Frobenius verdicts and the combinatorial characterizations in heights
//! zero, one and two.

mod gluing;

pub use gluing::{
    apply_rule, attachments, classify, generate_pure_frobenius, replay, Attachment, Block, GenerateMode, Generated,
    GluingRule, RuleApplication, RuleTag, Trace, TraceStep,
};

use crate::algebra::LiePosetAlgebra;
use crate::error::{Error, Result};
use crate::index::{self, formula_index, IndexCertificate, IndexConfig, Status};
use crate::poset::Poset;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Frobenius,
    NotFrobenius,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusReport {
    pub variant: String,
    pub verdict: Verdict,
    pub certificate: IndexCertificate,
}

fn verdict_of(c: &IndexCertificate) -> Verdict {
    match c.status {
        Status::Exact if c.lower == 0 => Verdict::Frobenius,
        Status::Exact => Verdict::NotFrobenius,
        Status::Bracketed if c.lower > 0 => Verdict::NotFrobenius,
        Status::Bracketed => Verdict::Undetermined,
    }
}

/// Certified Frobenius test. An undetermined first pass is retried once with
/// four times as many trials.
pub fn is_frobenius(alg: &LiePosetAlgebra, cfg: &IndexConfig) -> FrobeniusReport {
    let mut cert = index::index(alg, cfg);
    if verdict_of(&cert) == Verdict::Undetermined {
        let more = IndexConfig { trials: cfg.trials.max(1) * 4, ..*cfg };
        cert = index::index(alg, &more);
    }
    FrobeniusReport {
        variant: alg.variant.name().to_string(),
        verdict: verdict_of(&cert),
        certificate: cert,
    }
}

/// Type-A (traceless) verdict for a poset.
pub fn is_frobenius_poset(p: &Poset, cfg: &IndexConfig) -> FrobeniusReport {
    is_frobenius(&LiePosetAlgebra::type_a(p, true), cfg)
}

/// Whether the Hasse diagram is a tree (connected with `n − 1` covers).
pub fn hasse_is_tree(p: &Poset) -> bool {
    p.size() > 0 && p.is_connected() && p.covers().len() == p.size() - 1
}

/// Heights zero and one: Frobenius exactly when the Hasse diagram is a tree.
pub fn characterize_h01(p: &Poset) -> Result<bool> {
    let h = p.height();
    if h > 1 {
        return Err(Error::Height { found: h, expected: "at most 1" });
    }
    Ok(hasse_is_tree(p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureDecomposition {
    /// Removed covers `(min, max)`.
    pub min_max_covers: Vec<(usize, usize)>,
    /// Element sets of the pure height-two components, sorted.
    pub pure_components: Vec<Vec<usize>>,
    pub singletons: Vec<usize>,
}

impl PureDecomposition {
    /// Component id of every element; singletons get ids after the pure
    /// components.
    pub fn component_of(&self, n: usize) -> Vec<usize> {
        let mut id = vec![usize::MAX; n];
        for (k, c) in self.pure_components.iter().enumerate() {
            for &v in c {
                id[v] = k;
            }
        }
        for (k, &s) in self.singletons.iter().enumerate() {
            id[s] = self.pure_components.len() + k;
        }
        id
    }

    /// The order on a component generated by the covers that were kept.
    pub fn component_poset(&self, p: &Poset, k: usize) -> Poset {
        let elems = &self.pure_components[k];
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let kept: Vec<(usize, usize)> = p
            .covers()
            .into_iter()
            .filter(|c| !self.min_max_covers.contains(c))
            .filter_map(|(a, b)| Some((*pos.get(&a)?, *pos.get(&b)?)))
            .collect();
        Poset::from_relation(elems.len(), &kept).expect("subrelation of an order").0
    }
}

/// Removes every cover between a minimal and a maximal element and splits
/// what is left into connected pieces.
pub fn decompose_pure(p: &Poset) -> Result<PureDecomposition> {
    let h = p.height();
    if h != 2 {
        return Err(Error::Height { found: h, expected: "exactly 2" });
    }
    let n = p.size();
    let (removed, kept): (Vec<_>, Vec<_>) = p
        .covers()
        .into_iter()
        .partition(|&(a, b)| p.is_minimal(a) && p.is_maximal(b));
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while parent[r] != r {
            r = parent[r];
        }
        parent[v] = r;
        r
    }
    for &(a, b) in &kept {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut pure_components = vec![];
    let mut singletons = vec![];
    for (_, g) in groups {
        if g.len() == 1 {
            singletons.push(g[0]);
        } else {
            pure_components.push(g);
        }
    }
    Ok(PureDecomposition { min_max_covers: removed, pure_components, singletons })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonpureReport {
    pub decomposition: PureDecomposition,
    /// (i) every pure component is a Frobenius, pure, height-two poset.
    pub components_frobenius: bool,
    /// (ii) no removed cover joins two elements of one pure component.
    pub no_internal_covers: bool,
    /// (iii) at most one removed cover from an element into a component.
    pub single_attachment: bool,
    /// (iv) contracting pure components leaves a tree.
    pub contraction_is_tree: bool,
}

impl NonpureReport {
    pub fn all(&self) -> bool {
        self.components_frobenius
            && self.no_internal_covers
            && self.single_attachment
            && self.contraction_is_tree
    }
}

/// Evaluates the four height-two conditions.
pub fn check_nonpure_conditions(p: &Poset) -> Result<NonpureReport> {
    let d = decompose_pure(p)?;
    let n = p.size();
    let comp = d.component_of(n);
    let nodes = d.pure_components.len() + d.singletons.len();

    let components_frobenius = (0..d.pure_components.len()).all(|k| {
        let c = d.component_poset(p, k);
        c.is_pure() && c.height() == 2 && formula_index(&c) == Ok(0)
    });

    let no_internal_covers = d.min_max_covers.iter().all(|&(a, b)| comp[a] != comp[b]);

    let mut per_min: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut per_max: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(a, b) in &d.min_max_covers {
        *per_min.entry((a, comp[b])).or_default() += 1;
        *per_max.entry((b, comp[a])).or_default() += 1;
    }
    let single_attachment = per_min.values().chain(per_max.values()).all(|&c| c <= 1);

    // a tree on `nodes` vertices: no loops or repeated edges, nodes − 1
    // edges, connected
    let mut edges: Vec<(usize, usize)> = d
        .min_max_covers
        .iter()
        .map(|&(a, b)| (comp[a].min(comp[b]), comp[a].max(comp[b])))
        .collect();
    let total = edges.len();
    edges.sort_unstable();
    edges.dedup();
    let simple = edges.len() == total && edges.iter().all(|&(a, b)| a != b);
    let mut parent: Vec<usize> = (0..nodes).collect();
    let mut acyclic = true;
    for &(a, b) in &edges {
        let (mut ra, mut rb) = (a, b);
        while parent[ra] != ra {
            ra = parent[ra];
        }
        while parent[rb] != rb {
            rb = parent[rb];
        }
        if ra == rb {
            acyclic = false;
        } else {
            parent[ra] = rb;
        }
    }
    let contraction_is_tree = simple && acyclic && edges.len() + 1 == nodes;

    Ok(NonpureReport {
        decomposition: d,
        components_frobenius,
        no_internal_covers,
        single_attachment,
        contraction_is_tree,
    })
}

/// Combinatorial prediction for heights ≤ 2: tree test below height two,
/// the four conditions at height two.
pub fn combinatorial_frobenius(p: &Poset) -> Result<bool> {
    match p.height() {
        0 | 1 => characterize_h01(p),
        2 => Ok(check_nonpure_conditions(p)?.all()),
        h => Err(Error::Height { found: h, expected: "at most 2" }),
    }
}

/// `(D, U)` of the cone `P^i = P(D, 1, U)` at every rank-one element of a
/// pure height-two poset.
pub fn star_shapes(p: &Poset) -> Vec<(usize, usize)> {
    (0..p.size())
        .filter(|&i| !p.is_extremal(i))
        .map(|i| (p.down_count(i), p.up_count(i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::fixtures;

    fn cfg() -> IndexConfig {
        IndexConfig::with_seed(11)
    }

    #[test]
    fn verdicts() {
        let p = Poset::complete(&[1, 1, 2]).unwrap();
        assert_eq!(is_frobenius_poset(&p, &cfg()).verdict, Verdict::Frobenius);
        let u = Poset::disjoint_union(&[p.clone(), p]);
        assert_eq!(is_frobenius_poset(&u, &cfg()).verdict, Verdict::NotFrobenius);
        assert_eq!(is_frobenius_poset(&fixtures::q(), &cfg()).verdict, Verdict::Frobenius);
    }

    #[test]
    fn h01() {
        assert_eq!(characterize_h01(&Poset::complete(&[1, 4]).unwrap()), Ok(true));
        assert_eq!(characterize_h01(&Poset::complete(&[2, 2]).unwrap()), Ok(false));
        assert_eq!(characterize_h01(&Poset::antichain(1)), Ok(true));
        assert!(characterize_h01(&Poset::chain(3)).is_err());
    }

    #[test]
    fn decomposition_extra_max() {
        // P(1,1,2) plus a maximal element covering the minimum
        let p = Poset::from_cover_relations(5, &[(1, 2), (2, 3), (2, 4), (1, 5)]).unwrap();
        let d = decompose_pure(&p).unwrap();
        assert_eq!(d.min_max_covers, vec![(0, 4)]);
        assert_eq!(d.pure_components, vec![vec![0, 1, 2, 3]]);
        assert_eq!(d.singletons, vec![4]);
        assert!(check_nonpure_conditions(&p).unwrap().all());
    }

    #[test]
    fn pure_input_is_trivial() {
        let p = Poset::complete(&[2, 1, 1]).unwrap();
        let r = check_nonpure_conditions(&p).unwrap();
        assert!(r.decomposition.min_max_covers.is_empty());
        assert!(r.all());
    }

    #[test]
    fn contracted_cycle_fails() {
        // two P(1,1,2) blocks joined by two min-max covers
        let p = Poset::from_cover_relations(
            8,
            &[(1, 2), (2, 3), (2, 4), (5, 6), (6, 7), (6, 8), (1, 7), (5, 3)],
        )
        .unwrap();
        let r = check_nonpure_conditions(&p).unwrap();
        assert!(r.no_internal_covers && r.single_attachment && r.components_frobenius);
        assert!(!r.contraction_is_tree);
        assert_eq!(formula_index(&p), Ok(1));
    }

    #[test]
    fn star_shapes_of_blocks() {
        assert_eq!(star_shapes(&Poset::complete(&[1, 1, 2]).unwrap()), vec![(1, 2)]);
    }
}
