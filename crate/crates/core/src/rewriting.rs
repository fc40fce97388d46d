//! The defining relations `a_j a_i a_k = a_j a_k a_i = a_k a_j a_i`
//! (`i <= k <= j`) and a breadth-first congruence oracle built on them.
//!
//! The oracle explores the whole congruence class of a word. All relations
//! involved are length-preserving, so classes are finite and the oracle is
//! a decision procedure; the cap only bounds memory.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::word::{all_words, Word};

/// Default bound on the number of words a single class may contain.
pub const DEFAULT_CLASS_CAP: usize = 200_000;

/// Length-3 words equivalent to `t` in one application of the relations,
/// excluding `t` itself.
fn triple_neighbors(t: [u8; 3]) -> impl Iterator<Item = [u8; 3]> {
    let [x, y, z] = t;
    let mut out: [Option<[u8; 3]>; 6] = [None; 6];
    // t = a_j a_i a_k with i <= k <= j
    if y <= z && z <= x {
        out[0] = Some([x, z, y]);
        out[1] = Some([z, x, y]);
    }
    // t = a_j a_k a_i
    if z <= y && y <= x {
        out[2] = Some([x, z, y]);
        out[3] = Some([y, x, z]);
    }
    // t = a_k a_j a_i
    if z <= x && x <= y {
        out[4] = Some([y, z, x]);
        out[5] = Some([y, x, z]);
    }
    out.into_iter().flatten().filter(move |&r| r != t)
}

/// Calls `f` with every word reachable from `letters` by a single
/// application of the defining relations (duplicates possible).
pub(crate) fn for_each_relation_neighbor(letters: &[u8], mut f: impl FnMut(Vec<u8>)) {
    for pos in 0..letters.len().saturating_sub(2) {
        let t = [letters[pos], letters[pos + 1], letters[pos + 2]];
        for r in triple_neighbors(t) {
            let mut next = letters.to_vec();
            next[pos..pos + 3].copy_from_slice(&r);
            f(next);
        }
    }
}

/// Every word obtained from `w` by rewriting one length-3 factor.
pub fn rewrite_neighbors(w: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for_each_relation_neighbor(w.letters(), |next| {
        out.insert(Word::from_raw(w.rank(), next));
    });
    out.remove(w);
    out
}

/// Extra generating pairs of a congruence imposed on top of the defining
/// relations. Every pair relates words of equal length.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CongruencePairs {
    rank: usize,
    pairs: Vec<(Vec<u8>, Vec<u8>)>,
}

impl CongruencePairs {
    /// The empty set of extra pairs.
    pub fn none(rank: usize) -> Self {
        CongruencePairs { rank, pairs: Vec::new() }
    }

    pub fn new(rank: usize, pairs: impl IntoIterator<Item = (Word, Word)>) -> Result<Self> {
        let mut out = CongruencePairs::none(rank);
        for (s, t) in pairs {
            out.push(s, t)?;
        }
        Ok(out)
    }

    pub fn push(&mut self, s: Word, t: Word) -> Result<()> {
        for w in [&s, &t] {
            if w.rank() != self.rank {
                return Err(Error::RankMismatch { left: self.rank, right: w.rank() });
            }
        }
        if s.len() != t.len() {
            return Err(Error::InhomogeneousPair { left: s.to_string(), right: t.to_string() });
        }
        if s != t {
            let pair = (s.letters().to_vec(), t.letters().to_vec());
            if !self.pairs.contains(&pair) {
                self.pairs.push(pair);
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        self.pairs
            .iter()
            .map(|(s, t)| (Word::from_raw(self.rank, s.clone()), Word::from_raw(self.rank, t.clone())))
    }

    pub(crate) fn raw(&self) -> &[(Vec<u8>, Vec<u8>)] {
        &self.pairs
    }
}

fn for_each_pair_neighbor(letters: &[u8], pairs: &[(Vec<u8>, Vec<u8>)], mut f: impl FnMut(Vec<u8>)) {
    for (s, t) in pairs {
        for (from, to) in [(s, t), (t, s)] {
            if from.len() > letters.len() || from.is_empty() {
                continue;
            }
            for pos in 0..=letters.len() - from.len() {
                if &letters[pos..pos + from.len()] == from.as_slice() {
                    let mut next = letters.to_vec();
                    next[pos..pos + to.len()].copy_from_slice(to);
                    f(next);
                }
            }
        }
    }
}

/// Breadth-first closure of `start` under the relations plus `extra`.
/// With `target` set, returns as soon as the target word is reached.
pub(crate) fn raw_class(
    start: &[u8],
    extra: &[(Vec<u8>, Vec<u8>)],
    cap: usize,
    target: Option<&[u8]>,
) -> Result<HashSet<Vec<u8>>> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    let mut overflow = false;
    let mut found = target == Some(start);
    while let Some(cur) = queue.pop_front() {
        if found {
            break;
        }
        let mut visit = |next: Vec<u8>| {
            if overflow || found || seen.contains(&next) {
                return;
            }
            if seen.len() >= cap {
                overflow = true;
                return;
            }
            found = target == Some(next.as_slice());
            seen.insert(next.clone());
            queue.push_back(next);
        };
        for_each_relation_neighbor(&cur, &mut visit);
        for_each_pair_neighbor(&cur, extra, &mut visit);
        if overflow {
            return Err(Error::ClassCapExceeded { cap });
        }
    }
    Ok(seen)
}

/// The full congruence class of `w` under the relations plus `extra`.
pub fn congruence_class(w: &Word, extra: &CongruencePairs, cap: usize) -> Result<BTreeSet<Word>> {
    if extra.rank() != w.rank() && !extra.is_empty() {
        return Err(Error::RankMismatch { left: w.rank(), right: extra.rank() });
    }
    let class = raw_class(w.letters(), extra.raw(), cap.max(1), None)?;
    Ok(class.into_iter().map(|l| Word::from_raw(w.rank(), l)).collect())
}

/// Decides `w = v` modulo the relations plus `extra`, with the default cap.
pub fn eq_oracle(w: &Word, v: &Word, extra: &CongruencePairs) -> Result<bool> {
    eq_oracle_with_cap(w, v, extra, DEFAULT_CLASS_CAP)
}

pub fn eq_oracle_with_cap(w: &Word, v: &Word, extra: &CongruencePairs, cap: usize) -> Result<bool> {
    if w.rank() != v.rank() {
        return Err(Error::RankMismatch { left: w.rank(), right: v.rank() });
    }
    if !extra.is_empty() && extra.rank() != w.rank() {
        return Err(Error::RankMismatch { left: w.rank(), right: extra.rank() });
    }
    if w.len() != v.len() {
        return Ok(false);
    }
    if w == v {
        return Ok(true);
    }
    let class = raw_class(w.letters(), extra.raw(), cap.max(1), Some(v.letters()))?;
    Ok(class.contains(v.letters()))
}

/// Partition of all words of length `len` over rank `n` into congruence
/// classes. Returns a class id per word (indexed like [`all_words`]) and
/// the number of classes.
pub fn partition_words(n: usize, len: usize, extra: &CongruencePairs, cap: usize) -> Result<(Vec<usize>, usize)> {
    let words: Vec<Vec<u8>> = all_words(n, len).collect();
    let index: HashMap<&[u8], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut class_of = vec![usize::MAX; words.len()];
    let mut classes = 0;
    for (i, w) in words.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        for member in raw_class(w, extra.raw(), cap, None)? {
            class_of[index[member.as_slice()]] = classes;
        }
        classes += 1;
    }
    Ok((class_of, classes))
}
