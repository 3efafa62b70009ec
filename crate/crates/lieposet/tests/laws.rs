//! Property tests for the index, Frobenius, topology and spectrum laws.

use lieposet::frobenius::{combinatorial_frobenius, is_frobenius_poset, Verdict};
use lieposet::index::{self, formula_index, sample_functionals, IndexConfig, KirillovEvaluation, Status};
use lieposet::linalg::{q, Q};
use lieposet::spectrum::{ad_spectrum, AdSpectrum, draw_frobenius_functional, principal_element, residual};
use lieposet::topology::order_complex;
use lieposet::{LiePosetAlgebra, Poset};
use num_traits::Zero;
use proptest::prelude::*;

fn cfg() -> IndexConfig {
    IndexConfig::with_seed(11)
}

/// Random naturally labeled poset: each pair `i < j` is related with
/// probability about `density`/8, then closed transitively.
fn poset(max_n: usize) -> impl Strategy<Value = Poset> {
    (1..=max_n, 1u8..8).prop_flat_map(|(n, density)| {
        proptest::collection::vec(0u8..8, n * (n - 1) / 2).prop_map(move |bits| {
            let mut pairs = vec![];
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] < density {
                        pairs.push((i, j));
                    }
                    k += 1;
                }
            }
            Poset::from_relation(n, &pairs).unwrap().0
        })
    })
}

fn low_poset(max_n: usize) -> impl Strategy<Value = Poset> {
    poset(max_n).prop_filter("height ≤ 2", |p| p.height() <= 2)
}

fn connected(max_n: usize) -> impl Strategy<Value = Poset> {
    poset(max_n).prop_filter("connected", |p| p.is_connected())
}

fn sl(p: &Poset) -> LiePosetAlgebra {
    LiePosetAlgebra::type_a(p, true)
}

fn exact(p: &Poset) -> usize {
    let c = index::index(&sl(p), &cfg());
    assert_eq!(c.status, Status::Exact, "{:?}", p.to_json());
    c.lower
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lower_bound_sources_never_exceed_sampled_rank(p in poset(7), gl in any::<bool>()) {
        let a = LiePosetAlgebra::type_a(&p, !gl);
        let c = index::index(&a, &cfg());
        prop_assert!(c.sources.matching <= c.upper);
        prop_assert!(c.sources.invariants <= c.upper);
        prop_assert!(c.lower <= c.upper);
        prop_assert_eq!((c.dim - c.upper) % 2, 0);
        prop_assert_eq!((c.dim - c.lower) % 2, 0);
    }

    #[test]
    fn gl_index_is_sl_index_plus_one(p in poset(7)) {
        let s = index::index(&sl(&p), &cfg());
        let g = index::index(&LiePosetAlgebra::type_a(&p, false), &cfg());
        prop_assert_eq!(g.dim, s.dim + 1);
        prop_assert_eq!((g.lower, g.upper), (s.lower + 1, s.upper + 1));
    }

    #[test]
    fn more_trials_never_raise_the_upper_bound(p in poset(7), seed in any::<u64>()) {
        let a = sl(&p);
        let few = index::sampled_index_upper(&a, 2, seed, 100).0;
        let many = index::sampled_index_upper(&a, 6, seed, 100).0;
        prop_assert!(many <= few);
        // the sampled functionals extend as a prefix
        prop_assert_eq!(
            &sample_functionals(a.dim(), 6, seed, 100)[..2],
            &sample_functionals(a.dim(), 2, seed, 100)[..]
        );
    }

    #[test]
    fn kirillov_rank_is_even(p in poset(7), seed in any::<u64>()) {
        let a = sl(&p);
        let f = &sample_functionals(a.dim(), 1, seed, 5)[0];
        let k = KirillovEvaluation::new(&a, f).unwrap().kernel_dim();
        prop_assert_eq!((a.dim() - k) % 2, 0);
    }

    #[test]
    fn formula_matches_certificate_in_height_two(p in low_poset(7)) {
        prop_assert_eq!(formula_index(&p).unwrap(), exact(&p) as i64);
    }

    #[test]
    fn index_is_invariant_under_duality(p in poset(7)) {
        let a = index::index(&sl(&p), &cfg());
        let b = index::index(&sl(&p.dual()), &cfg());
        prop_assert_eq!((a.lower, a.upper), (b.lower, b.upper));
    }

    #[test]
    fn disjoint_union_adds_indices_plus_components(a in connected(4), b in connected(4), c in connected(3)) {
        let u = Poset::disjoint_union(&[a.clone(), b.clone(), c.clone()]);
        prop_assert_eq!(exact(&u), exact(&a) + exact(&b) + exact(&c) + 2);
    }

    #[test]
    fn extremal_gluing_adds_indices(a in low_poset(5), b in low_poset(5), maxima in any::<bool>(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (xs, ys) = if maxima { (a.maximal(), b.maximal()) } else { (a.minimal(), b.minimal()) };
        let g = a.glue(&b, &[(*i.get(&xs), *j.get(&ys))]).unwrap().poset;
        prop_assert_eq!(exact(&g), exact(&a) + exact(&b));
    }

    #[test]
    fn combinatorial_verdict_matches_certificate(p in low_poset(7)) {
        let v = is_frobenius_poset(&p, &cfg()).verdict;
        prop_assert_ne!(v, Verdict::Undetermined);
        prop_assert_eq!(combinatorial_frobenius(&p).unwrap(), v == Verdict::Frobenius);
    }

    #[test]
    fn frobenius_posets_are_connected(p in poset(7)) {
        if is_frobenius_poset(&p, &cfg()).verdict == Verdict::Frobenius {
            prop_assert!(p.is_connected());
        }
    }

    #[test]
    fn boundary_squares_to_zero(p in poset(7)) {
        let k = order_complex(&p);
        let top = k.dimension().unwrap_or(0);
        for d in 2..=top {
            let d1 = k.boundary(d - 1);
            let d2 = k.boundary(d);
            for (r, row) in d1.iter().enumerate() {
                for c in 0..d2.first().map_or(0, Vec::len) {
                    let s: i64 = row.iter().zip(&d2).map(|(x, col)| x * col[c]).sum();
                    prop_assert_eq!(s, 0, "row {} col {}", r, c);
                }
            }
        }
    }

    #[test]
    fn betti_zero_counts_components_and_euler_agrees(p in poset(7)) {
        let k = order_complex(&p);
        let top = k.dimension().unwrap_or(0);
        let b = k.betti(top);
        prop_assert_eq!(b[0], p.components().len());
        let alt: i64 = b.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(alt, k.euler_characteristic());
    }

    #[test]
    fn principal_element_solves_and_spectrum_sums(p in connected(6), seed in 0u64..1000) {
        let a = sl(&p);
        let c = IndexConfig::with_seed(seed);
        let Ok(f) = draw_frobenius_functional(&a, &c) else {
            // not Frobenius: nothing to check
            prop_assert!(index::index(&a, &cfg()).upper > 0);
            return Ok(());
        };
        let x = principal_element(&a, &f).unwrap();
        prop_assert!(residual(&a, &f, &x).unwrap().iter().all(Zero::is_zero));
        let ad = a.ad_matrix(&x).unwrap();
        let tr: Q = (0..a.dim()).map(|i| ad[i][i].clone()).sum();
        match ad_spectrum(&a, &x).unwrap() {
            AdSpectrum::Rational(m) => {
                prop_assert_eq!(m.iter().map(|(_, k)| k).sum::<usize>(), a.dim());
                // trace of ad x equals the sum of eigenvalues
                let sum: Q = m.iter().map(|(l, k)| l * q(*k as i64)).sum();
                prop_assert_eq!(tr, sum);
            }
            AdSpectrum::Irrational { char_poly, .. } => {
                // monic of degree dim, with t^(d−1) coefficient −tr
                prop_assert_eq!(char_poly.len(), a.dim() + 1);
                prop_assert_eq!(&char_poly[a.dim() - 1], &-tr);
            }
        }
    }
}
