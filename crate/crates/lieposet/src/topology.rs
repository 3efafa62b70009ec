//! Order complexes, rational homology and discrete Morse functions.

use crate::error::{Error, Result};
use crate::frobenius::{replay, Block, RuleTag, Trace};
use crate::linalg::{self, q, Q};
use crate::poset::Poset;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Faces are sorted vertex lists; `faces[p]` holds the `p`-faces in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertices: usize,
    pub faces: Vec<Vec<Vec<usize>>>,
}

/// Every chain of `p`, as a simplicial complex.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    let n = p.size();
    let mut faces: Vec<Vec<Vec<usize>>> = vec![];
    fn grow(p: &Poset, chain: &mut Vec<usize>, faces: &mut Vec<Vec<Vec<usize>>>) {
        let d = chain.len() - 1;
        if faces.len() <= d {
            faces.push(vec![]);
        }
        faces[d].push(chain.clone());
        let last = *chain.last().unwrap();
        for w in last + 1..p.size() {
            if p.less(last, w) {
                chain.push(w);
                grow(p, chain, faces);
                chain.pop();
            }
        }
    }
    for v in 0..n {
        grow(p, &mut vec![v], &mut faces);
    }
    for f in faces.iter_mut() {
        f.sort();
    }
    SimplicialComplex { vertices: n, faces }
}

impl SimplicialComplex {
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(p, f)| if p % 2 == 0 { f.len() as i64 } else { -(f.len() as i64) })
            .sum()
    }

    fn position(&self, p: usize) -> HashMap<&[usize], usize> {
        self.faces[p].iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect()
    }

    /// `∂_p` as a `|faces[p-1]| × |faces[p]|` integer matrix; column `j` is
    /// `Σ_i (−1)^i (face_j without vertex i)`.
    pub fn boundary(&self, p: usize) -> Vec<Vec<i64>> {
        if p == 0 || p >= self.faces.len() {
            let rows = if p == 0 { 0 } else { self.faces.get(p - 1).map_or(0, Vec::len) };
            let cols = self.faces.get(p).map_or(0, Vec::len);
            return vec![vec![0; cols]; rows];
        }
        let pos = self.position(p - 1);
        let mut m = vec![vec![0i64; self.faces[p].len()]; self.faces[p - 1].len()];
        for (j, f) in self.faces[p].iter().enumerate() {
            for i in 0..f.len() {
                let mut g = f.clone();
                g.remove(i);
                m[pos[g.as_slice()]][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    }

    pub fn boundary_rank(&self, p: usize) -> usize {
        let m: Vec<Vec<BigInt>> =
            self.boundary(p).into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        linalg::rank_int(m)
    }

    /// Rational Betti numbers `b_0 … b_max_degree`.
    pub fn betti(&self, max_degree: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=max_degree + 1).map(|p| self.boundary_rank(p)).collect();
        (0..=max_degree)
            .map(|p| {
                let cp = self.faces.get(p).map_or(0, Vec::len);
                cp - ranks[p] - ranks[p + 1]
            })
            .collect()
    }
}

pub fn betti(k: &SimplicialComplex, max_degree: usize) -> Vec<usize> {
    k.betti(max_degree)
}

/// Face values of a discrete Morse function candidate.
pub type MorseAssignment = BTreeMap<Vec<usize>, Q>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorseCheck {
    pub is_morse: bool,
    pub critical: Vec<Vec<usize>>,
    /// Faces of the complex without a value.
    pub missing: Vec<Vec<usize>>,
    /// Faces where one of the two counts exceeds one.
    pub violations: Vec<Vec<usize>>,
}

/// Checks both counting conditions at every face and lists critical faces.
pub fn verify_morse(k: &SimplicialComplex, f: &MorseAssignment) -> MorseCheck {
    let missing: Vec<Vec<usize>> =
        k.faces.iter().flatten().filter(|a| !f.contains_key(*a)).cloned().collect();
    if !missing.is_empty() {
        return MorseCheck { is_morse: false, critical: vec![], missing, violations: vec![] };
    }
    // up[α]: cofaces valued ≤ f(α); down[β]: faces valued ≥ f(β)
    let mut up = HashMap::<Vec<usize>, usize>::new();
    let mut down = HashMap::<Vec<usize>, usize>::new();
    for beta in k.faces.iter().skip(1).flatten() {
        for i in 0..beta.len() {
            let mut alpha = beta.clone();
            alpha.remove(i);
            if f[beta] <= f[&alpha] {
                *up.entry(alpha).or_default() += 1;
                *down.entry(beta.clone()).or_default() += 1;
            }
        }
    }
    let mut critical = vec![];
    let mut violations = vec![];
    for a in k.faces.iter().flatten() {
        let u = up.get(a).copied().unwrap_or(0);
        let d = down.get(a).copied().unwrap_or(0);
        if u > 1 || d > 1 {
            violations.push(a.clone());
        } else if u == 0 && d == 0 {
            critical.push(a.clone());
        }
    }
    MorseCheck { is_morse: violations.is_empty(), critical, missing: vec![], violations }
}

/// Faces of the complex `K` of one block: `v1 = c`, `v2 = a1`, `v3 = b`,
/// `v4 = a2`; `e1 = v1v2`, `e2 = v1v3`, `e3 = v1v4`, `e4 = v2v3`,
/// `e5 = v3v4`; `f1 = v1v2v3`, `f2 = v1v3v4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KFace {
    V1,
    V2,
    V3,
    V4,
    E1,
    E2,
    E3,
    E4,
    E5,
    F1,
    F2,
}

impl KFace {
    fn vertices(self) -> &'static [usize] {
        // indices into [v1, v2, v3, v4]
        match self {
            KFace::V1 => &[0],
            KFace::V2 => &[1],
            KFace::V3 => &[2],
            KFace::V4 => &[3],
            KFace::E1 => &[0, 1],
            KFace::E2 => &[0, 2],
            KFace::E3 => &[0, 3],
            KFace::E4 => &[1, 2],
            KFace::E5 => &[2, 3],
            KFace::F1 => &[0, 1, 2],
            KFace::F2 => &[0, 2, 3],
        }
    }

    /// The reflection exchanging `a1` and `a2`.
    fn mirror(self) -> KFace {
        match self {
            KFace::V2 => KFace::V4,
            KFace::V4 => KFace::V2,
            KFace::E1 => KFace::E3,
            KFace::E3 => KFace::E1,
            KFace::E4 => KFace::E5,
            KFace::E5 => KFace::E4,
            KFace::F1 => KFace::F2,
            KFace::F2 => KFace::F1,
            other => other,
        }
    }

    /// The face in poset labels, given `[c, b, a1, a2]`.
    pub fn face(self, roles: [usize; 4]) -> Vec<usize> {
        let [c, b, a1, a2] = roles;
        let v = [c, a1, b, a2];
        let mut f: Vec<usize> = self.vertices().iter().map(|&i| v[i]).collect();
        f.sort_unstable();
        f
    }
}

use KFace::*;

/// Values on a single block with one critical vertex `v1`.
pub const BASE_VALUES: [(KFace, i64); 11] = [
    (V1, 0),
    (E1, 1),
    (V2, 2),
    (E2, 3),
    (V3, 4),
    (E3, 5),
    (V4, 6),
    (F1, 7),
    (E4, 8),
    (F2, 9),
    (E5, 10),
];

/// Offsets above the current maximum when only `v1` is shared.
const SHARED_V1: [(KFace, i64); 10] =
    [(E1, 1), (V2, 2), (E2, 3), (V3, 4), (E3, 5), (V4, 6), (F1, 7), (E4, 8), (F2, 9), (E5, 10)];

/// Offsets when only `v2` is shared.
const SHARED_V2: [(KFace, i64); 10] =
    [(E1, 1), (V1, 2), (E4, 3), (V3, 4), (F1, 5), (E2, 6), (E5, 7), (V4, 8), (F2, 9), (E3, 10)];

/// Offsets when the edge `e1` is shared. The free vertex of the new
/// triangle is `v3`.
const SHARED_E1: [(KFace, i64); 8] =
    [(E4, 1), (V3, 2), (F1, 3), (E2, 4), (E3, 5), (V4, 6), (F2, 7), (E5, 8)];

/// Offsets when the edges `e1` and `e3` are shared.
const SHARED_E1_E3: [(KFace, i64); 6] = [(E2, 1), (V3, 2), (F1, 3), (E4, 4), (F2, 5), (E5, 6)];

/// Discrete Morse function on the order complex of a poset built by a trace
/// of index-preserving rules, with `v1` of the first block the only
/// critical face.
pub fn build_glued_morse(trace: &Trace) -> Result<(Poset, MorseAssignment)> {
    if let Some(st) = trace.steps.iter().find(|s| s.rule.raises_index()) {
        return Err(Error::IndexRaisingRule(st.rule.name().to_string()));
    }
    let r = replay(trace)?;
    let mut f = MorseAssignment::new();
    for &(face, v) in &BASE_VALUES {
        f.insert(face.face(r.blocks[0]), q(v));
    }
    let mut top = q(10);
    for (st, roles) in trace.steps.iter().zip(&r.blocks[1..]) {
        let (table, mirrored): (&[(KFace, i64)], bool) = match st.rule {
            RuleTag::C => (&SHARED_V1, false),
            RuleTag::A1 => (&SHARED_V2, false),
            RuleTag::A2 => (&SHARED_V2, true),
            RuleTag::D1 => (&SHARED_E1, false),
            RuleTag::D2 => (&SHARED_E1, true),
            RuleTag::F => (&SHARED_E1_E3, false),
            t => return Err(Error::IndexRaisingRule(t.name().to_string())),
        };
        for &(face, off) in table {
            let face = if mirrored { face.mirror() } else { face };
            f.insert(face.face(*roles), &top + q(off));
        }
        top += q(table.iter().map(|e| e.1).max().unwrap());
    }
    Ok((r.poset, f))
}

/// Example values on `Σ(P(1,1,2))`.
pub fn base_example() -> (SimplicialComplex, MorseAssignment) {
    let p = Block::P112.poset();
    let roles = Block::P112.roles();
    let f = BASE_VALUES.iter().map(|&(face, v)| (face.face(roles), q(v))).collect();
    (order_complex(&p), f)
}
