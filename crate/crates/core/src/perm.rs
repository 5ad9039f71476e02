use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A bijection of the vertex labels `{0, 1, 2, 3}`.
///
/// Stored as the ordered tuple of images, which is also its textual form:
/// `"1023"` swaps 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation4 {
    images: [u8; 4],
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermutationError {
    #[error("permutation `{0}` must be exactly four digits")]
    BadLength(String),
    #[error("permutation `{0}` is not a bijection on 0..3")]
    NotBijective(String),
}

impl Permutation4 {
    pub const IDENTITY: Permutation4 = Permutation4 {
        images: [0, 1, 2, 3],
    };

    pub fn new(images: [u8; 4]) -> Result<Self, PermutationError> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                let text: String = images.iter().map(|d| d.to_string()).collect();
                return Err(PermutationError::NotBijective(text));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation4 { images })
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    pub fn inverse(&self) -> Permutation4 {
        let mut inv = [0u8; 4];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Permutation4 { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation4) -> Permutation4 {
        let mut out = [0u8; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.images[other.apply(i)];
        }
        Permutation4 { images: out }
    }

    pub fn sign(&self) -> i8 {
        crate::tetra::orientation_sign(self.images.map(|x| x as usize))
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> impl Iterator<Item = Permutation4> {
        (0..4u8).flat_map(|a| {
            (0..4u8).flat_map(move |b| {
                (0..4u8).flat_map(move |c| {
                    (0..4u8).filter_map(move |d| Permutation4::new([a, b, c, d]).ok())
                })
            })
        })
    }
}

impl fmt::Display for Permutation4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.images {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation4 {
    type Err = PermutationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| PermutationError::NotBijective(s.to_string()))?;
        let images: [u8; 4] = digits
            .try_into()
            .map_err(|_| PermutationError::BadLength(s.to_string()))?;
        Permutation4::new(images).map_err(|_| PermutationError::NotBijective(s.to_string()))
    }
}

impl TryFrom<String> for Permutation4 {
    type Error = PermutationError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<Permutation4> for String {
    fn from(p: Permutation4) -> String {
        p.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: Permutation4 = "2310".parse().unwrap();
        assert_eq!(p.to_string(), "2310");
        assert_eq!(p.apply(0), 2);
        assert!("0012".parse::<Permutation4>().is_err());
        assert!("012".parse::<Permutation4>().is_err());
        assert!("01234".parse::<Permutation4>().is_err());
        assert!("01x3".parse::<Permutation4>().is_err());
    }

    #[test]
    fn inverse_and_compose() {
        assert_eq!(Permutation4::all().count(), 24);
        for p in Permutation4::all() {
            assert_eq!(p.compose(&p.inverse()), Permutation4::IDENTITY);
            assert_eq!(p.inverse().inverse(), p);
            for q in Permutation4::all() {
                assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
            }
        }
    }
}
