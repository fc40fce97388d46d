//! Zero-product identities of the Chinese algebra and the generating pairs
//! of the first-level congruences.
//!
//! An identity `α w β = 0` with `α = s1 - s2`, `β = t1 - t2` holds in the
//! monoid algebra iff the multisets `{s1 w t1, s2 w t2}` and
//! `{s1 w t2, s2 w t1}` of monoid elements coincide, which is what gets
//! checked here through canonical forms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rewriting::CongruencePairs;
use crate::staircase::Normalizer;
use crate::word::Word;

/// Which of the three zero-product identities to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoxplusVariant {
    /// `(a_i a_j - a_j a_i) w (a_k a_l - a_l a_k) = 0` for `i > j >= k > l`.
    TwoTwo,
    /// `(a_i a_j - a_j a_i) w (a_{j+1} a_l - a_l a_{j+1}) a_m = 0` for `i >= j+1 > j >= m > l`.
    TwoThree,
    /// `a_m (a_i a_j - a_j a_i) w (a_{j+1} a_l - a_l a_{j+1}) = 0` for `i > m >= j+1 > j >= l`.
    ThreeTwo,
}

impl BoxplusVariant {
    pub const ALL: [BoxplusVariant; 3] = [BoxplusVariant::TwoTwo, BoxplusVariant::TwoThree, BoxplusVariant::ThreeTwo];
}

impl fmt::Display for BoxplusVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoxplusVariant::TwoTwo => "22",
            BoxplusVariant::TwoThree => "23",
            BoxplusVariant::ThreeTwo => "32",
        })
    }
}

impl FromStr for BoxplusVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "22" => Ok(BoxplusVariant::TwoTwo),
            "23" => Ok(BoxplusVariant::TwoThree),
            "32" => Ok(BoxplusVariant::ThreeTwo),
            _ => Err(Error::IndexConstraintViolated(format!("unknown variant {s:?}"))),
        }
    }
}

/// Index tuple of an identity. For the `23`/`32` variants `k` must be `j + 1`;
/// `m` is ignored by the `22` variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxplusIndices {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub m: usize,
}

impl fmt::Display for BoxplusIndices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={} j={} k={} l={} m={}", self.i, self.j, self.k, self.l, self.m)
    }
}

impl BoxplusIndices {
    pub fn check(&self, n: usize, variant: BoxplusVariant) -> Result<()> {
        let BoxplusIndices { i, j, k, l, m } = *self;
        let in_range = |x: usize| (1..=n).contains(&x);
        let ok = match variant {
            BoxplusVariant::TwoTwo => [i, j, k, l].into_iter().all(in_range) && i > j && j >= k && k > l,
            BoxplusVariant::TwoThree => {
                [i, j, k, l, m].into_iter().all(in_range) && k == j + 1 && i >= k && j >= m && m > l
            }
            BoxplusVariant::ThreeTwo => {
                [i, j, k, l, m].into_iter().all(in_range) && k == j + 1 && i > m && m >= k && j >= l
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::IndexConstraintViolated(format!("({variant}) with {self} for rank {n}")))
        }
    }
}

/// Every index tuple admissible for `variant` at rank `n`, in lexicographic
/// order of `(i, j, k, l, m)`.
pub fn admissible_tuples(n: usize, variant: BoxplusVariant) -> Vec<BoxplusIndices> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let ms: Vec<usize> = match variant {
                        BoxplusVariant::TwoTwo => vec![0],
                        _ => (1..=n).collect(),
                    };
                    for m in ms {
                        let idx = BoxplusIndices { i, j, k, l, m };
                        if idx.check(n, variant).is_ok() {
                            out.push(idx);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Checks one identity instance with a caller-provided normalizer.
pub fn verify_boxplus_with(
    normalizer: &mut Normalizer,
    variant: BoxplusVariant,
    idx: BoxplusIndices,
    w: &Word,
) -> Result<bool> {
    let n = normalizer.rank();
    if w.rank() != n {
        return Err(Error::RankMismatch { left: n, right: w.rank() });
    }
    idx.check(n, variant)?;
    let g = |x: usize| x as u8;
    let (left_pos, left_neg) = ([g(idx.i), g(idx.j)], [g(idx.j), g(idx.i)]);
    let (right_pos, right_neg) = ([g(idx.k), g(idx.l)], [g(idx.l), g(idx.k)]);
    let build = |left: &[u8], right: &[u8]| {
        let mut letters = Vec::with_capacity(w.len() + 5);
        if variant == BoxplusVariant::ThreeTwo {
            letters.push(g(idx.m));
        }
        letters.extend_from_slice(left);
        letters.extend_from_slice(w.letters());
        letters.extend_from_slice(right);
        if variant == BoxplusVariant::TwoThree {
            letters.push(g(idx.m));
        }
        letters
    };
    let mut nf = |letters: Vec<u8>| normalizer.normal_form_raw(&letters);
    let mut positive = [nf(build(&left_pos, &right_pos))?, nf(build(&left_neg, &right_neg))?];
    let mut negative = [nf(build(&left_pos, &right_neg))?, nf(build(&left_neg, &right_pos))?];
    positive.sort();
    negative.sort();
    Ok(positive == negative)
}

/// Checks `α w β = 0` for one identity instance at rank `n`.
pub fn verify_boxplus(n: usize, variant: BoxplusVariant, idx: BoxplusIndices, w: &Word) -> Result<bool> {
    verify_boxplus_with(&mut Normalizer::new(n), variant, idx, w)
}

/// The two families of first-level congruences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FirstLevelKind {
    /// `a_s` becomes central; `2 <= s <= n - 1`.
    Heart,
    /// `a_s a_{s-1}` becomes central; `2 <= s <= n`.
    Diamond,
}

impl fmt::Display for FirstLevelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FirstLevelKind::Heart => "heart",
            FirstLevelKind::Diamond => "diamond",
        })
    }
}

/// Generating pairs of the first-level congruence of `kind` with
/// distinguished index `s`. Trivial pairs `(x, x)` are omitted and each
/// unordered pair appears once.
pub fn first_level_pairs(kind: FirstLevelKind, s: usize, n: usize) -> Result<CongruencePairs> {
    let valid = match kind {
        FirstLevelKind::Heart => 2 <= s && s < n,
        FirstLevelKind::Diamond => 2 <= s && s <= n,
    };
    if !valid {
        return Err(Error::IndexConstraintViolated(format!("{kind} congruence with s={s} for rank {n}")));
    }
    let word = |letters: &[usize]| Word::from_indices(n, letters);
    let mut pairs = CongruencePairs::none(n);
    let commute_block = |lo: usize, hi: usize, pairs: &mut CongruencePairs| -> Result<()> {
        for x in lo..=hi {
            for y in x + 1..=hi {
                pairs.push(word(&[y, x])?, word(&[x, y])?)?;
            }
        }
        Ok(())
    };
    match kind {
        FirstLevelKind::Heart => {
            commute_block(s, n, &mut pairs)?;
            commute_block(1, s, &mut pairs)?;
        }
        FirstLevelKind::Diamond => {
            commute_block(s, n, &mut pairs)?;
            for i in s..=n {
                for m in i + 1..=n {
                    pairs.push(word(&[i, s - 1, m])?, word(&[m, s - 1, i])?)?;
                }
            }
            commute_block(1, s - 1, &mut pairs)?;
            for l in 1..s {
                for m in l + 1..s {
                    pairs.push(word(&[l, s, m])?, word(&[m, s, l])?)?;
                }
            }
        }
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn idx(i: usize, j: usize, k: usize, l: usize, m: usize) -> BoxplusIndices {
        BoxplusIndices { i, j, k, l, m }
    }

    fn pair_set(p: &CongruencePairs) -> BTreeSet<(String, String)> {
        p.pairs().map(|(s, t)| (s.to_string(), t.to_string())).collect()
    }

    #[test]
    fn boxplus_examples() {
        assert!(verify_boxplus(4, BoxplusVariant::TwoTwo, idx(4, 3, 2, 1, 0), &Word::empty(4)).unwrap());
        let w = Word::parse(4, "2").unwrap();
        assert!(verify_boxplus(4, BoxplusVariant::TwoThree, idx(4, 2, 3, 1, 2), &w).unwrap());
        let w = Word::parse(3, "1 3").unwrap();
        assert!(verify_boxplus(3, BoxplusVariant::TwoTwo, idx(3, 2, 2, 1, 0), &w).unwrap());
    }

    #[test]
    fn boxplus_rejects_bad_indices() {
        let e = Word::empty(4);
        for (variant, bad) in [
            (BoxplusVariant::TwoTwo, idx(3, 3, 2, 1, 0)),
            (BoxplusVariant::TwoTwo, idx(4, 2, 3, 1, 0)),
            (BoxplusVariant::TwoThree, idx(4, 2, 4, 1, 2)),
            (BoxplusVariant::TwoThree, idx(4, 2, 3, 2, 2)),
            (BoxplusVariant::ThreeTwo, idx(4, 1, 2, 1, 1)),
            (BoxplusVariant::TwoTwo, idx(5, 3, 2, 1, 0)),
        ] {
            assert!(matches!(
                verify_boxplus(4, variant, bad, &e),
                Err(Error::IndexConstraintViolated(_))
            ));
        }
    }

    #[test]
    fn non_identity_is_detected() {
        // (a2a1 - a1a2)(a2a1 - a1a2) is nonzero at rank 2: the multiset check has teeth.
        let mut nf = Normalizer::new(2);
        let mut form = |letters: &[u8]| nf.normal_form_raw(letters).unwrap();
        let mut positive = vec![form(&[2, 1, 2, 1]), form(&[1, 2, 1, 2])];
        let mut negative = vec![form(&[2, 1, 1, 2]), form(&[1, 2, 2, 1])];
        positive.sort();
        negative.sort();
        assert_ne!(positive, negative);
    }

    #[test]
    fn admissible_tuple_lists() {
        assert_eq!(admissible_tuples(3, BoxplusVariant::TwoTwo), vec![idx(3, 2, 2, 1, 0)]);
        assert_eq!(admissible_tuples(3, BoxplusVariant::TwoThree), vec![idx(3, 2, 3, 1, 2)]);
        assert_eq!(admissible_tuples(3, BoxplusVariant::ThreeTwo), vec![idx(3, 1, 2, 1, 2)]);
        assert_eq!(
            admissible_tuples(4, BoxplusVariant::TwoThree),
            vec![idx(3, 2, 3, 1, 2), idx(4, 2, 3, 1, 2), idx(4, 3, 4, 1, 2), idx(4, 3, 4, 1, 3), idx(4, 3, 4, 2, 3)]
        );
        assert_eq!(
            admissible_tuples(4, BoxplusVariant::ThreeTwo),
            vec![idx(3, 1, 2, 1, 2), idx(4, 1, 2, 1, 2), idx(4, 1, 2, 1, 3), idx(4, 2, 3, 1, 3), idx(4, 2, 3, 2, 3)]
        );
    }

    #[test]
    fn heart_pairs_for_rank_3() {
        let p = first_level_pairs(FirstLevelKind::Heart, 2, 3).unwrap();
        let expected: BTreeSet<_> =
            [("3 2", "2 3"), ("2 1", "1 2")].iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        assert_eq!(pair_set(&p), expected);
    }

    #[test]
    fn diamond_pairs_for_rank_3() {
        let p = first_level_pairs(FirstLevelKind::Diamond, 2, 3).unwrap();
        let expected: BTreeSet<_> = [("3 2", "2 3"), ("2 1 3", "3 1 2")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(pair_set(&p), expected);
        let p = first_level_pairs(FirstLevelKind::Diamond, 3, 3).unwrap();
        let expected: BTreeSet<_> = [("2 1", "1 2"), ("1 3 2", "2 3 1")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(pair_set(&p), expected);
    }

    #[test]
    fn first_level_range_checks() {
        assert!(first_level_pairs(FirstLevelKind::Heart, 1, 3).is_err());
        assert!(first_level_pairs(FirstLevelKind::Heart, 3, 3).is_err());
        assert!(first_level_pairs(FirstLevelKind::Diamond, 1, 3).is_err());
        assert!(first_level_pairs(FirstLevelKind::Diamond, 4, 3).is_err());
        assert!(first_level_pairs(FirstLevelKind::Diamond, 3, 3).is_ok());
    }
}
