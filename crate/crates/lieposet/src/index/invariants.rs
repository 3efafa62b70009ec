//! Certified index lower bounds from semi-invariants of the coadjoint action.
//!
//! A polynomial `p` on `g*` is a semi-invariant with character `λ` when
//! `Σ_b F([x_a, x_b]) ∂_b p(F) = λ_a p(F)` holds identically for every basis
//! element `x_a`. For semi-invariants `p_1, …, p_r` the differentials
//! `dp_i / p_i` at a generic point annihilate the coadjoint tangent space
//! modulo the characters, which gives
//!
//! `ind g ≥ rank{∇p_i} − rank{λ_i}`.
//!
//! The gradient rank is taken at a single rational point (a lower bound for
//! the generic rank) and every polynomial that contributes is checked as an
//! exact polynomial identity, so the bound is rigorous.
//!
//! Candidates: central elements, coordinate functions spanning
//! one-dimensional ideals, and (type A) the minors `det Y[S, T]` of the
//! coordinate matrix `Y_{ij} = F(E_{ij})` with `S` a down-set and `T` an
//! up-set of equal size.

use crate::algebra::{LiePosetAlgebra, SparseMatrix};
use crate::linalg::{self, Q};
use crate::poly::Poly;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest poset handled by the minor search (down-sets are enumerated by bitmask).
const MAX_MINOR_POSET: usize = 16;
/// Cap on numerically tested minors per algebra.
const MAX_MINOR_TESTS: usize = 200_000;

/// Incremental row-echelon basis for rank tests.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &f * r;
                    }
                }
            }
        }
        v
    }

    fn independent(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    fn insert(&mut self, v: &[Q]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        r.iter_mut().for_each(|x| *x *= &inv);
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

struct Ctx<'a> {
    alg: &'a LiePosetAlgebra,
    pt: Vec<Q>,
    /// `cpt[a][b] = F([x_a, x_b])` at the sample point.
    cpt: Vec<Vec<Q>>,
}

impl Ctx<'_> {
    fn check_at_point(&self, grad: &[Q], lambda: &[Q], value: &Q) -> bool {
        let d = self.alg.dim();
        (0..d).all(|a| {
            let mut s = Q::zero();
            for b in 0..d {
                if !grad[b].is_zero() && !self.cpt[a][b].is_zero() {
                    s += &self.cpt[a][b] * &grad[b];
                }
            }
            s == &lambda[a] * value
        })
    }

    /// Exact polynomial identity `Σ_b L_ab ∂_b p = λ_a p` for all `a`.
    fn verify_poly(&self, p: &Poly, lambda: &[Q]) -> bool {
        let d = self.alg.dim();
        let vars = p.variables();
        let partials: Vec<(usize, Poly)> = vars.iter().map(|&b| (b, p.derivative(b))).collect();
        (0..d).all(|a| {
            let mut acc = Poly::zero();
            for (b, db) in &partials {
                let l = self.alg.bracket_basis(a, *b);
                if l.is_empty() {
                    continue;
                }
                acc = acc.add(&Poly::linear(l).mul(db));
            }
            acc == p.scale(&lambda[a])
        })
    }
}

/// A linear form on `g*` as sparse `(coordinate, coefficient)` pairs.
type LinearForm = Vec<(usize, Q)>;

/// Linear forms `F ↦ F(π(E_ij))` for the type-A coordinate matrix, where
/// `π(E_ii)` is the traceless projection in the `sl` case.
fn coordinate_matrix(alg: &LiePosetAlgebra) -> Option<Vec<Vec<LinearForm>>> {
    let p = alg.poset()?;
    let n = p.size();
    let traceless = alg.variant == crate::Variant::SlA;
    let mut y = vec![vec![vec![]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && !p.less(i, j) {
                continue;
            }
            let mut m = SparseMatrix::new();
            m.insert((i, j), Q::one());
            if i == j && traceless {
                let s = Q::new(1.into(), (n as i64).into());
                for k in 0..n {
                    *m.entry((k, k)).or_insert_with(Q::zero) -= &s;
                }
                m.retain(|_, v| !v.is_zero());
            }
            let c = alg.coordinates(&m)?;
            y[i][j] = c
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .collect();
        }
    }
    Some(y)
}

fn closed_sets(p: &crate::Poset, down: bool) -> Vec<Vec<usize>> {
    let n = p.size();
    let mut out = vec![];
    for mask in 1u32..(1u32 << n) {
        let ok = (0..n).filter(|&i| mask >> i & 1 == 1).all(|i| {
            (0..n).all(|j| {
                let needed = if down { p.less(j, i) } else { p.less(i, j) };
                !needed || mask >> j & 1 == 1
            })
        });
        if ok {
            out.push((0..n).filter(|&i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

fn eval_linear(f: &[(usize, Q)], pt: &[Q]) -> Q {
    f.iter().fold(Q::zero(), |acc, (v, c)| acc + c * &pt[*v])
}

/// Lower bound on the index; stops early once `target` is reached.
pub fn invariant_bound(alg: &LiePosetAlgebra, target: usize, seed: u64) -> usize {
    let d = alg.dim();
    if d == 0 || target == 0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e41_1a7a);
    let pt: Vec<Q> = (0..d)
        .map(|_| Q::from_integer(rng.gen_range(-1000i64..=1000).into()))
        .collect();
    let cpt: Vec<Vec<Q>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| eval_linear(alg.bracket_basis(a, b), &pt))
                .collect()
        })
        .collect();
    let ctx = Ctx { alg, pt, cpt };

    let mut st = State { grads: Echelon::default(), lambdas: Echelon::default() };

    // central elements: F ↦ F(z), invariant with constant gradient
    for z in alg.center() {
        if st.accept(&z, &vec![Q::zero(); d]) >= target {
            return target;
        }
    }
    // coordinates of basis elements spanning one-dimensional ideals
    for k in 0..d {
        let mut lambda = vec![Q::zero(); d];
        let ok = (0..d).all(|a| match alg.bracket_basis(a, k) {
            [] => true,
            [(l, c)] if *l == k => {
                lambda[a] = c.clone();
                true
            }
            _ => false,
        });
        if ok {
            let mut grad = vec![Q::zero(); d];
            grad[k] = Q::one();
            if st.accept(&grad, &lambda) >= target {
                return target;
            }
        }
    }
    let bound = st.bound();
    let Some(p) = alg.poset() else {
        return bound.min(target);
    };
    if p.size() > MAX_MINOR_POSET {
        return bound.min(target);
    }
    let Some(y) = coordinate_matrix(alg) else {
        return bound.min(target);
    };
    let n = p.size();
    let yv: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| eval_linear(&y[i][j], &ctx.pt)).collect())
        .collect();
    let downs = closed_sets(p, true);
    let ups = closed_sets(p, false);
    let diag_weight: Vec<Option<Vec<Q>>> = (0..d)
        .map(|a| {
            alg.is_diagonal(a).then(|| {
                (0..n)
                    .map(|i| alg.basis[a].get(&(i, i)).cloned().unwrap_or_else(Q::zero))
                    .collect()
            })
        })
        .collect();
    let mut tests = 0usize;
    for k in 1..=n {
        for s in downs.iter().filter(|s| s.len() == k) {
            for t in ups.iter().filter(|t| t.len() == k) {
                tests += 1;
                if tests > MAX_MINOR_TESTS {
                    return st.bound().min(target);
                }
                let m: Vec<Vec<Q>> =
                    s.iter().map(|&i| t.iter().map(|&j| yv[i][j].clone()).collect()).collect();
                let Some(inv) = linalg::inverse(&m) else {
                    continue;
                };
                let det = linalg::det(&m);
                let mut grad = vec![Q::zero(); d];
                for (a, &i) in s.iter().enumerate() {
                    for (b, &j) in t.iter().enumerate() {
                        let cof = &det * &inv[b][a];
                        for (v, c) in &y[i][j] {
                            grad[*v] += &cof * c;
                        }
                    }
                }
                let lambda: Vec<Q> = (0..d)
                    .map(|a| match &diag_weight[a] {
                        Some(h) => {
                            let up: Q = s.iter().map(|&i| h[i].clone()).sum();
                            let down: Q = t.iter().map(|&j| h[j].clone()).sum();
                            up - down
                        }
                        None => Q::zero(),
                    })
                    .collect();
                if !ctx.check_at_point(&grad, &lambda, &det) || !st.grads.independent(&grad) {
                    continue;
                }
                let poly = Poly::det(
                    &s.iter()
                        .map(|&i| t.iter().map(|&j| Poly::linear(&y[i][j])).collect())
                        .collect::<Vec<_>>(),
                );
                if ctx.verify_poly(&poly, &lambda) && st.accept(&grad, &lambda) >= target {
                    return target;
                }
            }
        }
    }
    st.bound().min(target)
}

struct State {
    grads: Echelon,
    lambdas: Echelon,
}

impl State {
    /// Adds an exactly verified semi-invariant if its gradient is new;
    /// returns the current bound (non-decreasing).
    fn accept(&mut self, grad: &[Q], lambda: &[Q]) -> usize {
        if self.grads.insert(grad) {
            self.lambdas.insert(lambda);
        }
        self.bound()
    }

    fn bound(&self) -> usize {
        self.grads.rank() - self.lambdas.rank()
    }
}
