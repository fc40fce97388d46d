//! Words over the generators `a_1, ..., a_n`.
//!
//! Letters are stored 1-indexed, so the letter `3` stands for `a_3`. The
//! empty word is the identity of the monoid.

use std::fmt;

use crate::error::{Error, Result};

/// Largest rank supported by the compact letter syntax (`a` = 1 ... `z` = 26).
pub const MAX_LETTER_RANK: usize = 26;

/// A finite word over `a_1, ..., a_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<u8>,
}

impl Word {
    /// Builds a word, checking every letter against the rank.
    pub fn new(rank: usize, letters: Vec<u8>) -> Result<Self> {
        check_rank(rank)?;
        for &l in &letters {
            if l == 0 || usize::from(l) > rank {
                return Err(Error::LetterOutOfRange { letter: l.into(), rank });
            }
        }
        Ok(Word { rank, letters })
    }

    /// Builds a word from `usize` letters.
    pub fn from_indices(rank: usize, letters: &[usize]) -> Result<Self> {
        check_rank(rank)?;
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l > rank {
                return Err(Error::LetterOutOfRange { letter: l, rank });
            }
            out.push(l as u8);
        }
        Ok(Word { rank, letters: out })
    }

    pub(crate) fn from_raw(rank: usize, letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1 && usize::from(l) <= rank));
        Word { rank, letters }
    }

    pub fn empty(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The single-letter word `a_i`.
    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        Word::from_indices(rank, &[i])
    }

    /// Parses either the numeric syntax (`"3 2 1"`, commas allowed) or the
    /// compact letter syntax (`"cba"`). `""`, `"-"` and `"ε"` denote the
    /// empty word.
    pub fn parse(rank: usize, input: &str) -> Result<Self> {
        check_rank(rank)?;
        let trimmed = input.trim();
        if trimmed.is_empty() || trimmed == "-" || trimmed == "ε" {
            return Ok(Word::empty(rank));
        }
        let syntax_err = |reason: &str| Error::WordSyntax {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if trimmed.chars().any(|c| c.is_ascii_digit()) {
            let mut letters = Vec::new();
            for tok in trimmed.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let tok = tok.strip_prefix('a').unwrap_or(tok);
                let idx: usize = tok
                    .parse()
                    .map_err(|_| syntax_err(&format!("bad index token {tok:?}")))?;
                letters.push(idx);
            }
            Word::from_indices(rank, &letters)
        } else if trimmed.chars().all(|c| c.is_ascii_lowercase()) {
            if rank > MAX_LETTER_RANK {
                return Err(syntax_err("letter syntax needs rank <= 26"));
            }
            let letters: Vec<usize> = trimmed.bytes().map(|b| usize::from(b - b'a') + 1).collect();
            Word::from_indices(rank, &letters)
        } else {
            Err(syntax_err("expected indices like \"3 2 1\" or letters like \"cba\""))
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { rank: self.rank, letters })
    }

    /// Letter-syntax rendering (`"cba"`), when the rank allows it.
    pub fn to_letter_string(&self) -> Option<String> {
        if self.rank > MAX_LETTER_RANK {
            return None;
        }
        Some(self.letters.iter().map(|&l| char::from(b'a' + l - 1)).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for (pos, l) in self.letters.iter().enumerate() {
            if pos > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub(crate) fn check_rank(rank: usize) -> Result<()> {
    if rank == 0 {
        return Err(Error::ZeroRank);
    }
    if rank > usize::from(u8::MAX) {
        return Err(Error::LetterOutOfRange { letter: rank, rank: usize::from(u8::MAX) });
    }
    Ok(())
}

/// All words of exactly `len` letters over rank `n`, in lexicographic order.
pub fn all_words(n: usize, len: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (n as u64).checked_pow(len as u32).expect("word count overflows u64");
    (0..total).map(move |mut code| {
        let mut letters = vec![0u8; len];
        for slot in letters.iter_mut().rev() {
            *slot = (code % n as u64) as u8 + 1;
            code /= n as u64;
        }
        letters
    })
}

/// All words of length at most `max_len`, shortest first.
pub fn words_up_to(n: usize, max_len: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..=max_len).flat_map(move |len| all_words(n, len))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_syntaxes() {
        let a = Word::parse(3, "3 2 1").unwrap();
        let b = Word::parse(3, "cba").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.letters(), &[3, 2, 1]);
        assert_eq!(Word::parse(3, "3,2,1").unwrap(), a);
        assert_eq!(Word::parse(3, "a3 a2 a1").unwrap(), a);
        assert_eq!(a.to_string(), "3 2 1");
        assert_eq!(a.to_letter_string().unwrap(), "cba");
    }

    #[test]
    fn empty_word_forms() {
        for s in ["", "  ", "-", "ε"] {
            assert!(Word::parse(4, s).unwrap().is_empty());
        }
        assert_eq!(Word::empty(2).to_string(), "ε");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(Word::parse(3, "4"), Err(Error::LetterOutOfRange { letter: 4, rank: 3 })));
        assert!(matches!(Word::parse(2, "abc"), Err(Error::LetterOutOfRange { .. })));
        assert!(matches!(Word::parse(3, "0"), Err(Error::LetterOutOfRange { .. })));
        assert!(matches!(Word::parse(0, "1"), Err(Error::ZeroRank)));
        assert!(matches!(Word::parse(3, "A B"), Err(Error::WordSyntax { .. })));
    }

    #[test]
    fn enumerates_words_in_order() {
        let words: Vec<_> = all_words(2, 2).collect();
        assert_eq!(words, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert_eq!(all_words(3, 0).count(), 1);
        assert_eq!(words_up_to(3, 5).count(), 364);
    }
}
