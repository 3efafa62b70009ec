//! Matrix Lie poset algebras with exact structure constants.

use crate::error::{Error, Result};
use crate::linalg::{self, Q};
use crate::poset::{Poset, SignedPoset};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "gl")]
    GlA,
    #[serde(rename = "sl")]
    SlA,
    B,
    C,
    D,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::GlA => "gl",
            Variant::SlA => "sl",
            Variant::B => "B",
            Variant::C => "C",
            Variant::D => "D",
        }
    }

    pub fn is_type_a(self) -> bool {
        matches!(self, Variant::GlA | Variant::SlA)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisKind {
    MatrixUnit(usize, usize),
    DiagDifference(usize, usize),
    /// Identity on a connected component.
    ComponentTrace(usize),
    /// A vector of the solved constraint space (types B, C, D).
    Solved,
}

pub type SparseMatrix = BTreeMap<(usize, usize), Q>;

#[derive(Clone, Debug)]
pub enum Source {
    TypeA(Poset),
    Signed(SignedPoset),
}

#[derive(Clone, Debug)]
pub struct LiePosetAlgebra {
    pub variant: Variant,
    pub matrix_dim: usize,
    pub basis: Vec<SparseMatrix>,
    pub kinds: Vec<BasisKind>,
    /// `table[i][j]` holds the nonzero coordinates of `[x_i, x_j]`.
    table: Vec<Vec<Vec<(usize, Q)>>>,
    pivots: Vec<(usize, usize)>,
    pivot_inv: Vec<Vec<Q>>,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDump {
    pub variant: Variant,
    pub matrix_dim: usize,
    /// Each basis matrix as `[row, col, numerator, denominator]` entries.
    pub basis: Vec<Vec<[i64; 4]>>,
    /// `[i, j, [[k, numerator, denominator], …]]` for `i < j` with a nonzero bracket.
    pub brackets: Vec<(usize, usize, Vec<[i64; 3]>)>,
}

fn commutator(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut out = SparseMatrix::new();
    let mut add = |x: &SparseMatrix, y: &SparseMatrix, sign: bool| {
        for (&(i, k), u) in x {
            for (&(k2, j), v) in y.range((k, 0)..(k + 1, 0)) {
                debug_assert_eq!(k, k2);
                let e = out.entry((i, j)).or_insert_with(Q::zero);
                if sign {
                    *e += u * v;
                } else {
                    *e -= u * v;
                }
            }
        }
    };
    add(a, b, true);
    add(b, a, false);
    out.retain(|_, v| !v.is_zero());
    out
}

fn unit(i: usize, j: usize) -> SparseMatrix {
    BTreeMap::from([((i, j), Q::one())])
}

fn small(x: &Q) -> (i64, i64) {
    (
        x.numer().to_i64().expect("entry fits i64"),
        x.denom().to_i64().expect("entry fits i64"),
    )
}

impl LiePosetAlgebra {
    /// Assembles an algebra from explicit basis matrices, computing the
    /// bracket table and checking closure.
    pub fn from_basis(
        variant: Variant,
        matrix_dim: usize,
        basis: Vec<SparseMatrix>,
        kinds: Vec<BasisKind>,
        source: Source,
    ) -> Result<Self> {
        let d = basis.len();
        let positions: Vec<(usize, usize)> = {
            let mut s: Vec<_> = basis.iter().flat_map(|m| m.keys().copied()).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        let mut rows: Vec<Vec<Q>> = basis
            .iter()
            .map(|m| {
                positions
                    .iter()
                    .map(|p| m.get(p).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect();
        let piv_cols = linalg::rref(&mut rows);
        if piv_cols.len() != d {
            return Err(Error::Invalid("basis matrices are linearly dependent".into()));
        }
        let pivots: Vec<(usize, usize)> = piv_cols.iter().map(|&c| positions[c]).collect();
        let sub: Vec<Vec<Q>> = basis
            .iter()
            .map(|m| {
                pivots
                    .iter()
                    .map(|p| m.get(p).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
            .collect();
        let pivot_inv = if d == 0 { vec![] } else { linalg::inverse(&sub).expect("pivot block invertible") };
        let mut alg = LiePosetAlgebra {
            variant,
            matrix_dim,
            basis,
            kinds,
            table: vec![vec![vec![]; d]; d],
            pivots,
            pivot_inv,
            source,
        };
        for i in 0..d {
            for j in i + 1..d {
                let c = commutator(&alg.basis[i], &alg.basis[j]);
                let coords = alg.coordinates(&c).ok_or(Error::NotClosed(i, j))?;
                let sparse: Vec<(usize, Q)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                alg.table[j][i] = sparse.iter().map(|(k, v)| (*k, -v.clone())).collect();
                alg.table[i][j] = sparse;
            }
        }
        Ok(alg)
    }

    /// Type-A algebra over `p`: `gl` when `traceless` is false, `sl` otherwise.
    ///
    /// The `gl` diagonal basis is one identity `I_C` per connected component
    /// plus `E_ii` for every element of `C` but its first, so the central
    /// elements are basis vectors.
    pub fn type_a(p: &Poset, traceless: bool) -> Self {
        let n = p.size();
        let mut basis = vec![];
        let mut kinds = vec![];
        if traceless {
            for j in 0..n.saturating_sub(1) {
                let mut m = unit(j, j);
                m.insert((n - 1, n - 1), -Q::one());
                basis.push(m);
                kinds.push(BasisKind::DiagDifference(j, n - 1));
            }
        } else {
            for (t, c) in p.components().iter().enumerate() {
                basis.push(c.iter().map(|&i| ((i, i), Q::one())).collect());
                kinds.push(BasisKind::ComponentTrace(t));
                for &i in &c[1..] {
                    basis.push(unit(i, i));
                    kinds.push(BasisKind::MatrixUnit(i, i));
                }
            }
        }
        for (i, j) in p.relations() {
            basis.push(unit(i, j));
            kinds.push(BasisKind::MatrixUnit(i, j));
        }
        let variant = if traceless { Variant::SlA } else { Variant::GlA };
        Self::from_basis(variant, n, basis, kinds, Source::TypeA(p.clone()))
            .expect("type-A algebras are closed")
    }

    /// The bilinear form fixed for each classical variant.
    pub fn form(variant: Variant, half: usize) -> Vec<Vec<Q>> {
        let m = match variant {
            Variant::B => 2 * half + 1,
            _ => 2 * half,
        };
        let mut j = vec![vec![Q::zero(); m]; m];
        for (i, row) in j.iter_mut().enumerate() {
            row[m - 1 - i] = if variant == Variant::C && i >= half { -Q::one() } else { Q::one() };
        }
        j
    }

    /// Row/column labels of the ambient matrices for a signed poset; the
    /// extra middle index of type B has label 0.
    pub fn signed_labels(variant: Variant, half: usize) -> Vec<i64> {
        let n = half as i64;
        let mut ls: Vec<i64> = (-n..0).collect();
        if variant == Variant::B {
            ls.push(0);
        }
        ls.extend(1..=n);
        ls
    }

    pub fn type_bcd(p: &SignedPoset, variant: Variant) -> Result<Self> {
        if variant.is_type_a() {
            return Err(Error::Invalid("type_bcd needs variant B, C or D".into()));
        }
        let v = p.violations(variant != Variant::C);
        if let Some(first) = v.first() {
            return Err(Error::Signed(format!(
                "condition {} at {:?} ({} violations)",
                first.condition,
                first.labels,
                v.len()
            )));
        }
        let half = p.half_size();
        let labels = Self::signed_labels(variant, half);
        let m = labels.len();
        let mut unknowns: Vec<(usize, usize)> = (0..m).map(|i| (i, i)).collect();
        for r in 0..m {
            for c in 0..m {
                if labels[r] != 0 && labels[c] != 0 && p.less(labels[r], labels[c]) {
                    unknowns.push((r, c));
                }
            }
        }
        let jf = Self::form(variant, half);
        // Xᵀ J + J X = 0, one equation per entry (a, b)
        let mut eqs: Vec<Vec<Q>> = vec![];
        for a in 0..m {
            for b in 0..m {
                let row: Vec<Q> = unknowns
                    .iter()
                    .map(|&(r, c)| {
                        let mut v = Q::zero();
                        if c == a {
                            v += &jf[r][b];
                        }
                        if c == b {
                            v += &jf[a][r];
                        }
                        v
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
        let ns = linalg::nullspace(&eqs, unknowns.len());
        let basis: Vec<SparseMatrix> = ns
            .iter()
            .map(|v| {
                unknowns
                    .iter()
                    .zip(v)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(&pos, x)| (pos, x.clone()))
                    .collect()
            })
            .collect();
        let kinds = vec![BasisKind::Solved; basis.len()];
        Self::from_basis(variant, m, basis, kinds, Source::Signed(p.clone()))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn poset(&self) -> Option<&Poset> {
        match &self.source {
            Source::TypeA(p) => Some(p),
            Source::Signed(_) => None,
        }
    }

    /// Nonzero coordinates of `[x_i, x_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>> {
        let d = self.dim();
        for v in [x, y] {
            if v.len() != d {
                return Err(Error::Length { found: v.len(), expected: d });
            }
        }
        let mut out = vec![Q::zero(); d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let s = &x[i] * &y[j];
                for (k, c) in &self.table[i][j] {
                    out[*k] += &s * c;
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of an ambient matrix in the basis, if it lies in the span.
    pub fn coordinates(&self, m: &SparseMatrix) -> Option<Vec<Q>> {
        let d = self.dim();
        let v: Vec<Q> = self
            .pivots
            .iter()
            .map(|p| m.get(p).cloned().unwrap_or_else(Q::zero))
            .collect();
        let mut c = vec![Q::zero(); d];
        for (p, vp) in v.iter().enumerate() {
            if vp.is_zero() {
                continue;
            }
            for k in 0..d {
                if !self.pivot_inv[p][k].is_zero() {
                    c[k] += vp * &self.pivot_inv[p][k];
                }
            }
        }
        (self.matrix_of(&c) == *m).then_some(c)
    }

    pub fn matrix_of(&self, coords: &[Q]) -> SparseMatrix {
        let mut out = SparseMatrix::new();
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (&pos, v) in &self.basis[k] {
                *out.entry(pos).or_insert_with(Q::zero) += c * v;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn dense_matrix(&self, coords: &[Q]) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.matrix_dim]; self.matrix_dim];
        for ((i, j), v) in self.matrix_of(coords) {
            out[i][j] = v;
        }
        out
    }

    /// Matrix of `v ↦ [x, v]`: column `k` holds the coordinates of `[x, x_k]`.
    pub fn ad_matrix(&self, x: &[Q]) -> Result<Vec<Vec<Q>>> {
        let d = self.dim();
        if x.len() != d {
            return Err(Error::Length { found: x.len(), expected: d });
        }
        let mut m = vec![vec![Q::zero(); d]; d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for k in 0..d {
                for (l, c) in &self.table[i][k] {
                    m[*l][k] += &x[i] * c;
                }
            }
        }
        Ok(m)
    }

    /// Coordinates of a basis of the center.
    pub fn center(&self) -> Vec<Vec<Q>> {
        let d = self.dim();
        // z is central iff Σ_j z_j c_{ij}^k = 0 for all i, k
        let mut eqs = vec![];
        for i in 0..d {
            let mut rows = vec![vec![Q::zero(); d]; d];
            for (j, row_j) in self.table[i].iter().enumerate() {
                for (k, c) in row_j {
                    rows[*k][j] += c;
                }
            }
            eqs.extend(rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
        }
        linalg::nullspace(&eqs, d)
    }

    pub fn dump(&self) -> AlgebraDump {
        let basis = self
            .basis
            .iter()
            .map(|m| {
                m.iter()
                    .map(|(&(r, c), v)| {
                        let (a, b) = small(v);
                        [r as i64, c as i64, a, b]
                    })
                    .collect()
            })
            .collect();
        let mut brackets = vec![];
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if !self.table[i][j].is_empty() {
                    let e = self.table[i][j]
                        .iter()
                        .map(|(k, v)| {
                            let (a, b) = small(v);
                            [*k as i64, a, b]
                        })
                        .collect();
                    brackets.push((i, j, e));
                }
            }
        }
        AlgebraDump { variant: self.variant, matrix_dim: self.matrix_dim, basis, brackets }
    }

    /// Checks the Jacobi identity on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        let e = |i: usize| {
            let mut v = vec![Q::zero(); d];
            v[i] = Q::one();
            v
        };
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let (x, y, z) = (e(a), e(b), e(c));
                    let t1 = self.bracket(&x, &self.bracket(&y, &z).unwrap()).unwrap();
                    let t2 = self.bracket(&y, &self.bracket(&z, &x).unwrap()).unwrap();
                    let t3 = self.bracket(&z, &self.bracket(&x, &y).unwrap()).unwrap();
                    if (0..d).any(|k| !(&t1[k] + &t2[k] + &t3[k]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether basis element `k` is a diagonal matrix.
    pub fn is_diagonal(&self, k: usize) -> bool {
        self.basis[k].keys().all(|&(i, j)| i == j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::poset::fixtures;

    #[test]
    fn sl2_borel() {
        let a = LiePosetAlgebra::type_a(&Poset::chain(2), true);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.bracket_basis(0, 1), &[(1, q(2))]);
    }

    #[test]
    fn gl_p112_has_nine_elements() {
        let p = Poset::complete(&[1, 1, 2]).unwrap();
        let gl = LiePosetAlgebra::type_a(&p, false);
        let sl = LiePosetAlgebra::type_a(&p, true);
        assert_eq!((gl.dim(), sl.dim()), (9, 8));
        assert!(gl.jacobi_holds() && sl.jacobi_holds());
        let pattern: Vec<(usize, usize)> = {
            let mut v: Vec<_> = gl.basis.iter().flat_map(|m| m.keys().copied()).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        assert_eq!(
            pattern,
            vec![(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (1, 2), (1, 3), (2, 2), (3, 3)]
        );
    }

    #[test]
    fn antichain_is_abelian() {
        let a = LiePosetAlgebra::type_a(&Poset::antichain(4), true);
        assert_eq!(a.dim(), 3);
        assert!((0..3).all(|i| (0..3).all(|j| a.bracket_basis(i, j).is_empty())));
    }

    #[test]
    fn cartan_of_sp4() {
        let p = SignedPoset::from_covers(2, &[]).unwrap();
        let a = LiePosetAlgebra::type_bcd(&p, Variant::C).unwrap();
        assert_eq!(a.dim(), 2);
        assert!((0..2).all(|k| a.is_diagonal(k)));
    }

    #[test]
    fn hexagon_classical_forms() {
        let h = fixtures::hexagon_bcd();
        for v in [Variant::B, Variant::C, Variant::D] {
            let a = LiePosetAlgebra::type_bcd(&h, v).unwrap();
            assert_eq!(a.dim(), 6, "{v:?}");
            let j = LiePosetAlgebra::form(v, 3);
            for k in 0..a.dim() {
                let x = a.dense_matrix(&{
                    let mut e = vec![Q::zero(); a.dim()];
                    e[k] = Q::one();
                    e
                });
                let xt: Vec<Vec<Q>> =
                    (0..x.len()).map(|r| (0..x.len()).map(|c| x[c][r].clone()).collect()).collect();
                let lhs = linalg::mat_mul(&xt, &j);
                let rhs = linalg::mat_mul(&j, &x);
                for r in 0..x.len() {
                    for c in 0..x.len() {
                        assert!((&lhs[r][c] + &rhs[r][c]).is_zero());
                        if r > c {
                            assert!(x[r][c].is_zero(), "lies in the Borel");
                        }
                    }
                }
            }
            assert!(a.jacobi_holds());
        }
    }

    #[test]
    fn hexagon_c_support_pattern() {
        let a = LiePosetAlgebra::type_bcd(&fixtures::hexagon_bcd(), Variant::C).unwrap();
        let mut v: Vec<(usize, usize)> = a.basis.iter().flat_map(|m| m.keys().copied()).collect();
        v.sort_unstable();
        v.dedup();
        // rows/cols −3,−2,−1,1,2,3; −i ⪯ j for i ≠ j, plus the diagonal
        let mut expect: Vec<(usize, usize)> = (0..6).map(|i| (i, i)).collect();
        for (r, c) in [(0, 3), (0, 4), (1, 3), (1, 5), (2, 4), (2, 5)] {
            expect.push((r, c));
        }
        expect.sort_unstable();
        assert_eq!(v, expect);
    }

    #[test]
    fn ad_of_cartan_in_sl2() {
        let a = LiePosetAlgebra::type_a(&Poset::chain(2), true);
        let m = a.ad_matrix(&[q(1), q(0)]).unwrap();
        assert_eq!(m, vec![vec![q(0), q(0)], vec![q(0), q(2)]]);
        assert!(a.ad_matrix(&[q(1)]).is_err());
        assert!(a.ad_matrix(&[q(0), q(0)]).unwrap().iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn center_of_disconnected() {
        let p = Poset::disjoint_union(&[Poset::chain(2), Poset::chain(2)]);
        assert_eq!(LiePosetAlgebra::type_a(&p, true).center().len(), 1);
        assert_eq!(LiePosetAlgebra::type_a(&p, false).center().len(), 2);
    }
}
