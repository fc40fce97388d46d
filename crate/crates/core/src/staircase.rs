//! Canonical (staircase) form of elements of the Chinese monoid.
//!
//! Every element has exactly one expression `b_1 b_2 ... b_n` with
//! `b_r = (a_r a_1)^{k_r1} (a_r a_2)^{k_r2} ... (a_r a_{r-1})^{k_r,r-1} a_r^{k_rr}`.
//! Normalization picks that expression out of the breadth-first congruence
//! class and fails loudly if the class holds zero or several candidates.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewriting::{raw_class, DEFAULT_CLASS_CAP};
use crate::word::{check_rank, Word};

/// Triangular exponent array `k[i][j]`, `1 <= j <= i <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawStaircase")]
pub struct StaircaseForm {
    n: usize,
    /// Row `i - 1` lists `k[i][1..=i]`.
    k: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct RawStaircase {
    n: usize,
    k: Vec<Vec<u64>>,
}

impl TryFrom<RawStaircase> for StaircaseForm {
    type Error = Error;

    fn try_from(raw: RawStaircase) -> Result<Self> {
        StaircaseForm::from_rows(raw.n, raw.k)
    }
}

impl StaircaseForm {
    /// The identity element (all exponents zero).
    pub fn identity(n: usize) -> Self {
        StaircaseForm { n, k: (1..=n).map(|i| vec![0; i]).collect() }
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        check_rank(n)?;
        if rows.len() != n {
            return Err(Error::MalformedStaircase(format!("expected {n} rows, got {}", rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::MalformedStaircase(format!(
                    "row {} must have {} entries, got {}",
                    i + 1,
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(StaircaseForm { n, k: rows })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Exponent `k[i][j]`, 1-indexed with `j <= i`.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(1 <= j && j <= i && i <= self.n, "exponent index ({i},{j}) out of range");
        self.k[i - 1][j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        assert!(1 <= j && j <= i && i <= self.n, "exponent index ({i},{j}) out of range");
        self.k[i - 1][j - 1] = value;
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.k
    }

    /// Length of the expanded word: `2 k[i][j]` for `i > j`, `k[i][i]` on the diagonal.
    pub fn degree(&self) -> u64 {
        self.k
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &e)| if i == j { e } else { 2 * e }))
            .sum()
    }

    /// The word `b_1 b_2 ... b_n`.
    pub fn expand(&self) -> Word {
        let mut letters = Vec::with_capacity(self.degree() as usize);
        for (i, row) in self.k.iter().enumerate() {
            let r = (i + 1) as u8;
            for (j, &e) in row.iter().enumerate() {
                for _ in 0..e {
                    if j == i {
                        letters.push(r);
                    } else {
                        letters.push(r);
                        letters.push((j + 1) as u8);
                    }
                }
            }
        }
        Word::from_raw(self.n, letters)
    }

    /// Decodes `letters` if it is literally in staircase form.
    pub fn match_pattern(n: usize, letters: &[u8]) -> Option<StaircaseForm> {
        let mut form = StaircaseForm::identity(n);
        // Current block as (row, column); blocks must be visited in order.
        let mut cursor = (0u8, 0u8);
        let mut pos = 0;
        while pos < letters.len() {
            let x = letters[pos];
            let block = match letters.get(pos + 1) {
                Some(&y) if y < x => {
                    pos += 2;
                    (x, y)
                }
                _ => {
                    pos += 1;
                    (x, x)
                }
            };
            if block < cursor {
                return None;
            }
            cursor = block;
            form.k[usize::from(block.0) - 1][usize::from(block.1) - 1] += 1;
        }
        Some(form)
    }
}

impl fmt::Display for StaircaseForm {
    /// Lists the nonzero exponents, e.g. `k22=1 k31=1`; `1` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, row) in self.k.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                if self.n < 10 {
                    write!(f, "k{}{}={e}", i + 1, j + 1)?;
                } else {
                    write!(f, "k{},{}={e}", i + 1, j + 1)?;
                }
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Normalizer that remembers the normal form of every word it has seen.
///
/// A class is explored once; all of its members are then answered from the
/// cache. Useful for exhaustive sweeps.
#[derive(Debug)]
pub struct Normalizer {
    n: usize,
    cap: usize,
    cache: HashMap<Vec<u8>, StaircaseForm>,
}

impl Normalizer {
    pub fn new(n: usize) -> Self {
        Normalizer::with_cap(n, DEFAULT_CLASS_CAP)
    }

    pub fn with_cap(n: usize, cap: usize) -> Self {
        Normalizer { n, cap: cap.max(1), cache: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn normal_form(&mut self, w: &Word) -> Result<StaircaseForm> {
        if w.rank() != self.n {
            return Err(Error::RankMismatch { left: self.n, right: w.rank() });
        }
        self.normal_form_raw(w.letters())
    }

    pub(crate) fn normal_form_raw(&mut self, letters: &[u8]) -> Result<StaircaseForm> {
        if let Some(form) = self.cache.get(letters) {
            return Ok(form.clone());
        }
        let class = raw_class(letters, &[], self.cap, None)?;
        let mut matches = class.iter().filter_map(|m| StaircaseForm::match_pattern(self.n, m));
        let describe = || Word::from_raw(self.n, letters.to_vec()).to_string();
        let form = match (matches.next(), matches.next()) {
            (Some(form), None) => form,
            (None, _) => return Err(Error::NoStaircaseMember { word: describe() }),
            (Some(_), Some(_)) => {
                let count = 2 + matches.count();
                return Err(Error::MultipleStaircaseMembers { word: describe(), count });
            }
        };
        for member in class {
            self.cache.insert(member, form.clone());
        }
        Ok(form)
    }

    pub fn cached_words(&self) -> usize {
        self.cache.len()
    }
}

/// Canonical form of `w`, computed from its full congruence class.
pub fn to_staircase(w: &Word) -> Result<StaircaseForm> {
    Normalizer::new(w.rank()).normal_form(w)
}

/// Product of two canonical forms.
pub fn multiply(f: &StaircaseForm, g: &StaircaseForm) -> Result<StaircaseForm> {
    if f.n != g.n {
        return Err(Error::RankMismatch { left: f.n, right: g.n });
    }
    to_staircase(&f.expand().concat(&g.expand())?)
}

/// Number of canonical forms of weighted degree `len`, i.e. the number of
/// elements of length `len` in the monoid of rank `n`.
pub fn count_classes(n: usize, len: usize) -> u128 {
    assert!(n >= 1, "rank must be positive");
    // n diagonal exponents of weight 1, n(n-1)/2 off-diagonal of weight 2.
    let mut ways = vec![0u128; len + 1];
    ways[0] = 1;
    let weights = std::iter::repeat_n(1, n).chain(std::iter::repeat_n(2, n * (n - 1) / 2));
    for weight in weights {
        for total in weight..=len {
            ways[total] = ways[total]
                .checked_add(ways[total - weight])
                .expect("class count overflows u128");
        }
    }
    ways[len]
}
