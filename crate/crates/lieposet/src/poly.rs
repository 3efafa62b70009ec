//! Sparse multivariate polynomials with rational coefficients.

use crate::linalg::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Monomials are sorted lists of variable indices (with repetition).
pub type Monomial = Vec<u16>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(vec![], c);
        }
        p
    }

    pub fn linear(coeffs: &[(usize, Q)]) -> Self {
        let mut p = Poly::zero();
        for (v, c) in coeffs {
            p.add_term(vec![*v as u16], c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn add_assign_scaled(&mut self, o: &Poly, s: &Q) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Q) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * s);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = Vec::with_capacity(m1.len() + m2.len());
                m.extend_from_slice(m1);
                m.extend_from_slice(m2);
                m.sort_unstable();
                r.add_term(m, c1 * c2);
            }
        }
        r
    }

    pub fn derivative(&self, v: usize) -> Poly {
        let v = v as u16;
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let k = m.iter().filter(|&&x| x == v).count();
            if k == 0 {
                continue;
            }
            let mut m2 = m.clone();
            let pos = m2.iter().position(|&x| x == v).unwrap();
            m2.remove(pos);
            r.add_term(m2, c * Q::from_integer(k.into()));
        }
        r
    }

    pub fn eval(&self, pt: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m {
                t *= &pt[v as usize];
            }
            s += t;
        }
        s
    }

    /// Variables occurring in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().flatten().map(|&x| x as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Determinant of a square matrix of polynomials, by expansion over
    /// column subsets (exponential in the size, fine up to ~10).
    pub fn det(m: &[Vec<Poly>]) -> Poly {
        let k = m.len();
        if k == 0 {
            return Poly::constant(Q::from_integer(1.into()));
        }
        let mut layer: BTreeMap<u32, Poly> = BTreeMap::new();
        layer.insert(0, Poly::constant(Q::from_integer(1.into())));
        for (r, row) in m.iter().enumerate() {
            let mut next: BTreeMap<u32, Poly> = BTreeMap::new();
            for (&mask, val) in &layer {
                for (j, entry) in row.iter().enumerate() {
                    if mask >> j & 1 == 1 || entry.is_zero() {
                        continue;
                    }
                    let higher = (mask >> (j + 1)).count_ones();
                    let mut t = val.mul(entry);
                    if higher % 2 == 1 {
                        t = t.scale(&Q::from_integer((-1).into()));
                    }
                    let e = next.entry(mask | 1 << j).or_default();
                    *e = e.add(&t);
                }
            }
            next.retain(|_, p| !p.is_zero());
            layer = next;
            if layer.is_empty() {
                return Poly::zero();
            }
            debug_assert!(r < 32);
        }
        layer.into_values().next().unwrap_or_default()
    }
}
