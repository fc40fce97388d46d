//! The bicyclic monoid `B = <p, q | qp = 1>`.
//!
//! Every element is `p^i q^j` for a unique pair of naturals. Arithmetic is
//! checked: an overflowing exponent panics instead of wrapping.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The element `p^p q^q` of the bicyclic monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Bicyclic {
    pub p: u64,
    pub q: u64,
}

impl Bicyclic {
    pub const IDENTITY: Bicyclic = Bicyclic { p: 0, q: 0 };
    pub const P: Bicyclic = Bicyclic { p: 1, q: 0 };
    pub const Q: Bicyclic = Bicyclic { p: 0, q: 1 };

    pub const fn new(p: u64, q: u64) -> Self {
        Bicyclic { p, q }
    }

    pub fn is_identity(self) -> bool {
        self == Bicyclic::IDENTITY
    }

    /// `p^i q^j · p^k q^l = p^{i + max(0, k - j)} q^{l + max(0, j - k)}`.
    pub fn checked_mul(self, rhs: Bicyclic) -> Option<Bicyclic> {
        let p = self.p.checked_add(rhs.p.saturating_sub(self.q))?;
        let q = rhs.q.checked_add(self.q.saturating_sub(rhs.p))?;
        Some(Bicyclic { p, q })
    }

    /// `self^k`, by repeated squaring.
    pub fn pow(self, mut k: u64) -> Bicyclic {
        let mut acc = Bicyclic::IDENTITY;
        let mut base = self;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Compact rendering used inside image tuples: `p^1q^0`.
    pub fn compact(self) -> String {
        format!("p^{}q^{}", self.p, self.q)
    }
}

/// Canonical product in `B`.
pub fn bmul(x: Bicyclic, y: Bicyclic) -> Bicyclic {
    x * y
}

impl Mul for Bicyclic {
    type Output = Bicyclic;

    fn mul(self, rhs: Bicyclic) -> Bicyclic {
        self.checked_mul(rhs)
            .unwrap_or_else(|| panic!("bicyclic exponent overflow in {self} * {rhs}"))
    }
}

impl fmt::Display for Bicyclic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p^{} q^{}", self.p, self.q)
    }
}

impl FromStr for Bicyclic {
    type Err = Error;

    /// Accepts `p^i q^j` (space optional), `e`/`1` for the identity, and
    /// plain `p`, `q`, `pq`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::BicyclicSyntax(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "e" || compact == "1" {
            return Ok(Bicyclic::IDENTITY);
        }
        let mut acc = Bicyclic::IDENTITY;
        let mut rest = compact.as_str();
        if rest.is_empty() {
            return Err(err());
        }
        while let Some(c) = rest.chars().next() {
            let base = match c {
                'p' => Bicyclic::P,
                'q' => Bicyclic::Q,
                _ => return Err(err()),
            };
            rest = &rest[1..];
            let mut exp = 1;
            if let Some(tail) = rest.strip_prefix('^') {
                let digits = tail.bytes().take_while(u8::is_ascii_digit).count();
                exp = tail[..digits].parse().map_err(|_| err())?;
                rest = &tail[digits..];
            }
            acc = acc.checked_mul(base.pow(exp)).ok_or_else(err)?;
        }
        Ok(acc)
    }
}

/// Evaluates both sides of `xy²x·xy·xy²x = xy²x·yx·xy²x` in `B`.
pub fn adjan_check(x: Bicyclic, y: Bicyclic) -> bool {
    let frame = x * y * y * x;
    let left = frame * x * y * frame;
    let right = frame * y * x * frame;
    left == right
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reduces a p/q string by deleting `qp` factors until none is left.
    fn reduce(s: &str) -> Bicyclic {
        let mut stack: Vec<char> = Vec::new();
        for c in s.chars() {
            if c == 'p' && stack.last() == Some(&'q') {
                stack.pop();
            } else {
                stack.push(c);
            }
        }
        let p = stack.iter().take_while(|&&c| c == 'p').count();
        assert!(stack[p..].iter().all(|&c| c == 'q'));
        Bicyclic::new(p as u64, (stack.len() - p) as u64)
    }

    fn spell(x: Bicyclic) -> String {
        "p".repeat(x.p as usize) + &"q".repeat(x.q as usize)
    }

    #[test]
    fn defining_relation() {
        assert_eq!(bmul(Bicyclic::Q, Bicyclic::P), Bicyclic::IDENTITY);
        assert_eq!(bmul(Bicyclic::P, Bicyclic::Q), Bicyclic::new(1, 1));
        let x = Bicyclic::new(4, 7);
        assert_eq!(bmul(Bicyclic::IDENTITY, x), x);
        assert_eq!(bmul(x, Bicyclic::IDENTITY), x);
        assert_eq!(bmul(Bicyclic::new(1, 2), Bicyclic::new(3, 1)), Bicyclic::new(2, 1));
    }

    #[test]
    fn agrees_with_string_reduction() {
        for i in 0..=6 {
            for j in 0..=6 {
                for k in 0..=6 {
                    for l in 0..=6 {
                        let (x, y) = (Bicyclic::new(i, j), Bicyclic::new(k, l));
                        assert_eq!(bmul(x, y), reduce(&(spell(x) + &spell(y))), "{x} * {y}");
                    }
                }
            }
        }
    }

    #[test]
    fn adjan_examples() {
        assert!(adjan_check(Bicyclic::IDENTITY, Bicyclic::IDENTITY));
        assert!(adjan_check(Bicyclic::P, Bicyclic::Q));
        assert!(adjan_check(Bicyclic::new(2, 3), Bicyclic::new(5, 1)));
    }

    #[test]
    fn adjan_grid() {
        for i in 0..=5 {
            for j in 0..=5 {
                for k in 0..=5 {
                    for l in 0..=5 {
                        assert!(adjan_check(Bicyclic::new(i, j), Bicyclic::new(k, l)));
                    }
                }
            }
        }
    }

    #[test]
    fn text_and_json_forms() {
        let x = Bicyclic::new(2, 1);
        assert_eq!(x.to_string(), "p^2 q^1");
        assert_eq!(x.compact(), "p^2q^1");
        assert_eq!("p^2 q^1".parse::<Bicyclic>().unwrap(), x);
        assert_eq!("p^2q".parse::<Bicyclic>().unwrap(), x);
        assert_eq!("qp".parse::<Bicyclic>().unwrap(), Bicyclic::IDENTITY);
        assert_eq!("e".parse::<Bicyclic>().unwrap(), Bicyclic::IDENTITY);
        assert!("r".parse::<Bicyclic>().is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), r#"{"p":2,"q":1}"#);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_loud() {
        let _ = Bicyclic::new(u64::MAX, 0) * Bicyclic::new(1, 0);
    }
}
