//! Named posets that appear throughout the test corpus.

use super::{Poset, SignedPoset};

/// `SG(n)`: the chain `1 ≺ … ≺ n` plus `⌈n/2⌉ ≺ n+1`.
pub fn sg(n: usize) -> Poset {
    assert!(n >= 2, "SG(n) needs n >= 2");
    let mut covers: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
    covers.push((n.div_ceil(2), n + 1));
    Poset::from_cover_relations(n + 1, &covers).unwrap()
}

/// `P(1, 2, …, 2)` with `twos` ranks of size two.
pub fn one_then_twos(twos: usize) -> Poset {
    let mut r = vec![1];
    r.extend(std::iter::repeat_n(2, twos));
    Poset::complete(&r).unwrap()
}

/// `P(2, …, 2, 1)` with `twos` ranks of size two.
pub fn twos_then_one(twos: usize) -> Poset {
    let mut r: Vec<usize> = std::iter::repeat_n(2, twos).collect();
    r.push(1);
    Poset::complete(&r).unwrap()
}

/// `1 ⪯ 2 ⪯ 3, 4; 3 ⪯ 5; 4 ⪯ 6`.
pub fn q() -> Poset {
    Poset::from_cover_relations(6, &[(1, 2), (2, 3), (2, 4), (3, 5), (4, 6)]).unwrap()
}

pub fn q_star() -> Poset {
    q().dual()
}

/// `−1 ⪯ 2, 3; −2 ⪯ 1, 3; −3 ⪯ 1, 2`.
pub fn hexagon_bcd() -> SignedPoset {
    SignedPoset::from_covers(
        3,
        &[(-1, 2), (-1, 3), (-2, 1), (-2, 3), (-3, 1), (-3, 2)],
    )
    .unwrap()
}

/// The type-A reading of the hexagon: a height-one poset on six elements.
pub fn hexagon_a() -> Poset {
    hexagon_bcd().underlying()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sg6_shape() {
        let p = sg(6);
        assert_eq!(p.size(), 7);
        assert_eq!(
            p.covers(),
            vec![(0, 1), (1, 2), (2, 3), (2, 6), (3, 4), (4, 5)]
        );
    }

    #[test]
    fn q_shape() {
        let p = q();
        assert_eq!((p.size(), p.height()), (6, 3));
        assert_eq!(q_star().height(), 3);
    }

    #[test]
    fn hexagon_admissible() {
        let h = hexagon_bcd();
        assert!(h.violations(false).is_empty());
        assert!(h.violations(true).is_empty());
        let a = hexagon_a();
        assert_eq!((a.size(), a.height(), a.rel_count()), (6, 1, 6));
    }
}
