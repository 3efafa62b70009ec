//! Frobenius functionals, principal elements and adjoint spectra.

use crate::algebra::LiePosetAlgebra;
use crate::error::{Error, Result};
use crate::index::{self, IndexConfig, KirillovEvaluation, Status};
use crate::linalg::{self, fmt_q, q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Draws before giving up on finding a full-rank functional.
pub const MAX_DRAWS: usize = 256;

/// A functional `F` with `B_F` nonsingular. The certified index must be 0.
pub fn find_frobenius_functional(alg: &LiePosetAlgebra, cfg: &IndexConfig) -> Result<Vec<Q>> {
    let cert = index::index(alg, cfg);
    if cert.status != Status::Exact || cert.lower != 0 {
        let what = match cert.status {
            Status::Exact => cert.lower.to_string(),
            Status::Bracketed => format!("in [{}, {}]", cert.lower, cert.upper),
        };
        return Err(Error::NotFrobenius(what));
    }
    draw_frobenius_functional(alg, cfg)
}

/// Samples functionals until `B_F` is nonsingular, without certifying the
/// index first.
pub fn draw_frobenius_functional(alg: &LiePosetAlgebra, cfg: &IndexConfig) -> Result<Vec<Q>> {
    let d = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let b = cfg.coeff_bound.max(1);
    for _ in 0..MAX_DRAWS {
        let f: Vec<Q> = (0..d).map(|_| q(rng.gen_range(-b..=b))).collect();
        if KirillovEvaluation::new(alg, &f)?.rank == d {
            return Ok(f);
        }
    }
    Err(Error::NoFunctional(MAX_DRAWS))
}

/// The element `F̂` with `F([F̂, x]) = F(x)` for every `x`.
pub fn principal_element(alg: &LiePosetAlgebra, f: &[Q]) -> Result<Vec<Q>> {
    let ev = KirillovEvaluation::new(alg, f)?;
    let d = alg.dim();
    if ev.rank < d {
        return Err(Error::Singular);
    }
    // F([F̂, x_k]) = Σ_i F̂_i B(i, k), so solve Bᵀ F̂ = F
    let bt: Vec<Vec<Q>> = (0..d).map(|k| (0..d).map(|i| ev.matrix[i][k].clone()).collect()).collect();
    linalg::solve(&bt, f).ok_or(Error::Singular)
}

/// `F([F̂, x_k]) − F(x_k)` for every basis element.
pub fn residual(alg: &LiePosetAlgebra, f: &[Q], fhat: &[Q]) -> Result<Vec<Q>> {
    let ad = alg.ad_matrix(fhat)?;
    let d = alg.dim();
    Ok((0..d)
        .map(|k| (0..d).fold(-f[k].clone(), |acc, l| acc + &ad[l][k] * &f[l]))
        .collect())
}

/// Coefficients `c_0 … c_d` of `det(tI − A)` (Faddeev–LeVerrier).
pub fn characteristic_polynomial(a: &[Vec<Q>]) -> Vec<Q> {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = linalg::mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = linalg::mat_mul(a, &m);
        let tr: Q = (0..n).fold(Q::zero(), |s, i| s + &am[i][i]);
        coeffs[n - k] = -tr / q(k as i64);
    }
    coeffs
}

fn eval_poly(c: &[Q], x: &Q) -> Q {
    c.iter().rev().fold(Q::zero(), |acc, a| acc * x + a)
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return Some(vec![]);
    }
    let v = n.to_u64()?;
    let mut out = vec![];
    let mut i = 1u64;
    while i * i <= v {
        if v % i == 0 {
            out.push(BigInt::from(i));
            out.push(BigInt::from(v / i));
        }
        i += 1;
        if i > limit {
            return None;
        }
    }
    Some(out)
}

/// Rational roots by the rational root theorem (skipped when the constant
/// or leading coefficient is too large to factor by trial division).
fn rational_roots(c: &[Q]) -> Vec<Q> {
    // clear denominators and strip factors of t
    let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = c.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut roots = vec![];
    if ints.iter().all(Zero::is_zero) {
        return roots;
    }
    if ints[0].is_zero() {
        roots.push(Q::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0], 1 << 20), divisors(ints.last().unwrap(), 1 << 20))
    else {
        return roots;
    };
    let cq: Vec<Q> = ints.iter().map(|x| Q::from_integer(x.clone())).collect();
    for p in &ps {
        for d in &qs {
            for s in [1, -1] {
                let r = Q::new(p * s, d.clone());
                if !roots.contains(&r) && eval_poly(&cq, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// `dim ker (A − λI)^k` once the kernel chain stabilizes.
pub fn algebraic_multiplicity(a: &[Vec<Q>], lambda: &Q) -> usize {
    let n = a.len();
    let mut m = a.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let mut power = m.clone();
    let mut last = n - linalg::rank_q(&power);
    if last == 0 {
        return 0;
    }
    loop {
        power = linalg::mat_mul(&power, &m);
        let k = n - linalg::rank_q(&power);
        if k == last {
            return k;
        }
        last = k;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdSpectrum {
    /// Eigenvalues with algebraic multiplicities, ascending.
    Rational(Vec<(Q, usize)>),
    /// Some eigenvalues are irrational; the rational part and `det(tI − A)`.
    Irrational { rational: Vec<(Q, usize)>, char_poly: Vec<Q> },
}

impl AdSpectrum {
    pub fn multiset(&self) -> Option<&[(Q, usize)]> {
        match self {
            AdSpectrum::Rational(v) => Some(v),
            AdSpectrum::Irrational { .. } => None,
        }
    }
}

/// Exact eigenvalues of `ad x`. Candidates are 0 and 1, then integers up to
/// the dimension, then rational roots of the characteristic polynomial.
pub fn ad_spectrum(alg: &LiePosetAlgebra, x: &[Q]) -> Result<AdSpectrum> {
    let a = alg.ad_matrix(x)?;
    Ok(matrix_spectrum(&a))
}

pub fn matrix_spectrum(a: &[Vec<Q>]) -> AdSpectrum {
    let n = a.len();
    let mut found: Vec<(Q, usize)> = vec![];
    let mut total = 0;
    let try_lambda = |l: Q, found: &mut Vec<(Q, usize)>, total: &mut usize| {
        if found.iter().any(|(x, _)| *x == l) {
            return;
        }
        let m = algebraic_multiplicity(a, &l);
        if m > 0 {
            found.push((l, m));
            *total += m;
        }
    };
    let mut cands: Vec<Q> = vec![q(0), q(1)];
    for k in 1..=n as i64 {
        cands.push(q(-k));
        if k > 1 {
            cands.push(q(k));
        }
    }
    for l in cands {
        if total == n {
            break;
        }
        try_lambda(l, &mut found, &mut total);
    }
    let mut char_poly = None;
    if total < n {
        let cp = characteristic_polynomial(a);
        for r in rational_roots(&cp) {
            try_lambda(r, &mut found, &mut total);
        }
        char_poly = Some(cp);
    }
    found.sort();
    match char_poly {
        Some(cp) if total < n => AdSpectrum::Irrational { rational: found, char_poly: cp },
        _ => AdSpectrum::Rational(found),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalElementJson {
    pub coefficients: Vec<String>,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub variant: String,
    pub dim: usize,
    pub functional: Vec<String>,
    pub principal_element: PrincipalElementJson,
    /// `[numerator, denominator, multiplicity]`, ascending.
    pub spectrum: Option<Vec<[i64; 3]>>,
    /// `det(tI − ad F̂)` from the constant term up, when some eigenvalue is
    /// irrational.
    pub char_poly: Option<Vec<String>>,
    pub residual_zero: bool,
    pub trace_matches: bool,
}

fn to_triples(v: &[(Q, usize)]) -> Result<Vec<[i64; 3]>> {
    v.iter()
        .map(|(l, m)| {
            let (n, d) = (l.numer().to_i64(), l.denom().to_i64());
            match (n, d) {
                (Some(n), Some(d)) => Ok([n, d, *m as i64]),
                _ => Err(Error::Invalid(format!("eigenvalue {} exceeds 64 bits", fmt_q(l)))),
            }
        })
        .collect()
}

/// Functional, principal element and spectrum with the exact checks.
pub fn spectrum_report(alg: &LiePosetAlgebra, f: &[Q]) -> Result<SpectrumReport> {
    let fhat = principal_element(alg, f)?;
    let res = residual(alg, f, &fhat)?;
    let ad = alg.ad_matrix(&fhat)?;
    let spec = matrix_spectrum(&ad);
    let trace: Q = (0..ad.len()).fold(Q::zero(), |s, i| s + &ad[i][i]);
    let (spectrum, char_poly, trace_matches) = match &spec {
        AdSpectrum::Rational(v) => {
            let sum = v.iter().fold(Q::zero(), |s, (l, m)| s + l * q(*m as i64));
            (Some(to_triples(v)?), None, sum == trace)
        }
        AdSpectrum::Irrational { char_poly, .. } => {
            // the trace is minus the subleading coefficient
            let n = char_poly.len() - 1;
            (None, Some(char_poly.iter().map(fmt_q).collect()), -&char_poly[n - 1] == trace)
        }
    };
    Ok(SpectrumReport {
        variant: alg.variant.name().to_string(),
        dim: alg.dim(),
        functional: f.iter().map(fmt_q).collect(),
        principal_element: PrincipalElementJson {
            coefficients: fhat.iter().map(fmt_q).collect(),
            matrix: alg
                .dense_matrix(&fhat)
                .iter()
                .map(|r| r.iter().map(fmt_q).collect())
                .collect(),
        },
        spectrum,
        char_poly,
        residual_zero: res.iter().all(Zero::is_zero),
        trace_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::functional_from_entries;
    use crate::linalg::q_frac;
    use crate::poset::Poset;

    fn sl(ranks: &[usize]) -> LiePosetAlgebra {
        LiePosetAlgebra::type_a(&Poset::complete(ranks).unwrap(), true)
    }

    #[test]
    fn sl2_principal() {
        let a = sl(&[1, 1]);
        let f = vec![q(0), q(1)];
        let fhat = principal_element(&a, &f).unwrap();
        assert!(residual(&a, &f, &fhat).unwrap().iter().all(Zero::is_zero));
        assert_eq!(ad_spectrum(&a, &fhat).unwrap(), AdSpectrum::Rational(vec![(q(0), 1), (q(1), 1)]));
    }

    #[test]
    fn p211_diagonal_principal_element() {
        let a = sl(&[2, 1, 1]);
        let f = functional_from_entries(&a, &[(0, 2), (0, 3), (1, 3)]);
        let fhat = principal_element(&a, &f).unwrap();
        let m = a.dense_matrix(&fhat);
        let h = q_frac(1, 2);
        let want = [h.clone(), h.clone(), -h.clone(), -h];
        for i in 0..4 {
            for j in 0..4 {
                let w = if i == j { want[i].clone() } else { Q::zero() };
                assert_eq!(m[i][j], w);
            }
        }
        let s = ad_spectrum(&a, &fhat).unwrap();
        assert_eq!(s, AdSpectrum::Rational(vec![(q(0), 4), (q(1), 4)]));
    }

    #[test]
    fn scaling_functional_keeps_principal_element() {
        let a = sl(&[1, 1, 2]);
        let f = find_frobenius_functional(&a, &IndexConfig::with_seed(5)).unwrap();
        let g: Vec<Q> = f.iter().map(|x| x * q(-7)).collect();
        assert_eq!(principal_element(&a, &f).unwrap(), principal_element(&a, &g).unwrap());
    }

    #[test]
    fn non_frobenius_rejected() {
        let a = sl(&[2, 2]);
        assert!(matches!(
            find_frobenius_functional(&a, &IndexConfig::with_seed(1)),
            Err(Error::NotFrobenius(_))
        ));
        assert_eq!(principal_element(&a, &vec![q(1); a.dim()]), Err(Error::Singular));
    }

    #[test]
    fn irrational_spectrum_reports_polynomial() {
        // t² − 2
        let m = vec![vec![q(0), q(2)], vec![q(1), q(0)]];
        match matrix_spectrum(&m) {
            AdSpectrum::Irrational { rational, char_poly } => {
                assert!(rational.is_empty());
                assert_eq!(char_poly, vec![q(-2), q(0), q(1)]);
            }
            other => panic!("{other:?}"),
        }
        let m = vec![vec![q_frac(1, 3), q(0)], vec![q(5), q_frac(1, 3)]];
        assert_eq!(matrix_spectrum(&m), AdSpectrum::Rational(vec![(q_frac(1, 3), 2)]));
    }

    #[test]
    fn report_checks() {
        let a = sl(&[1, 1, 2]);
        let f = find_frobenius_functional(&a, &IndexConfig::with_seed(2)).unwrap();
        let r = spectrum_report(&a, &f).unwrap();
        assert!(r.residual_zero && r.trace_matches);
        let total: i64 = r.spectrum.as_ref().unwrap().iter().map(|t| t[2]).sum();
        assert_eq!(total as usize, a.dim());
    }
}
