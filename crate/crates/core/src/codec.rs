//! Candidate names as strings: the i-th string of the alphabet's
//! length-then-lexicographic enumeration is the natural number i - 1.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NameCodec {
    alphabet: Vec<char>,
}

impl Default for NameCodec {
    /// ASCII `a..=z`.
    fn default() -> Self {
        NameCodec { alphabet: ('a'..='z').collect() }
    }
}

impl NameCodec {
    /// The alphabet order is the symbol order. Duplicate or missing symbols are rejected.
    pub fn new(alphabet: impl IntoIterator<Item = char>) -> Result<Self> {
        let alphabet: Vec<char> = alphabet.into_iter().collect();
        if alphabet.is_empty() {
            return Err(Error::InvariantViolation("codec alphabet is empty".into()));
        }
        for (i, c) in alphabet.iter().enumerate() {
            if alphabet[..i].contains(c) {
                return Err(Error::InvariantViolation(format!("symbol {c:?} repeated in codec alphabet")));
            }
        }
        Ok(NameCodec { alphabet })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// Position of `name` in the enumeration, starting at 0 for the empty string.
    pub fn encode(&self, name: &str) -> Result<u64> {
        let base = self.alphabet.len() as u64;
        let invalid = || Error::InvalidName { name: name.to_string() };
        let mut n: u64 = 0;
        for ch in name.chars() {
            let digit = self.alphabet.iter().position(|&a| a == ch).ok_or_else(invalid)? as u64;
            n = n
                .checked_mul(base)
                .and_then(|v| v.checked_add(digit + 1))
                .ok_or_else(invalid)?;
        }
        Ok(n)
    }

    /// Inverse of [`NameCodec::encode`] (bijective base-k numeration).
    pub fn decode(&self, mut n: u64) -> String {
        let base = self.alphabet.len() as u64;
        let mut out = Vec::new();
        while n > 0 {
            n -= 1;
            out.push(self.alphabet[(n % base) as usize]);
            n /= base;
        }
        out.iter().rev().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Strings over `alphabet` in length-then-lexicographic order, by explicit enumeration.
    fn enumerate_names(alphabet: &[char], count: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        let mut layer = vec![String::new()];
        while out.len() < count {
            let mut next = Vec::new();
            for prefix in &layer {
                for &c in alphabet {
                    let mut s = prefix.clone();
                    s.push(c);
                    next.push(s);
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.truncate(count);
        out
    }

    #[test]
    fn two_letter_examples() {
        let codec = NameCodec::new(['a', 'b']).unwrap();
        assert_eq!(codec.encode("").unwrap(), 0);
        assert_eq!(codec.encode("a").unwrap(), 1);
        assert_eq!(codec.encode("b").unwrap(), 2);
        assert_eq!(codec.encode("aa").unwrap(), 3);
    }

    #[test]
    fn matches_enumeration_oracle() {
        for alphabet in [vec!['a', 'b'], vec!['x'], ('a'..='e').collect::<Vec<_>>()] {
            let codec = NameCodec::new(alphabet.iter().copied()).unwrap();
            for (i, name) in enumerate_names(&alphabet, 400).iter().enumerate() {
                assert_eq!(codec.encode(name).unwrap(), i as u64, "{name}");
                assert_eq!(&codec.decode(i as u64), name);
            }
        }
    }

    #[test]
    fn roundtrip_default_alphabet() {
        let codec = NameCodec::default();
        for n in 0..=10_000u64 {
            assert_eq!(codec.encode(&codec.decode(n)).unwrap(), n);
        }
    }

    #[test]
    fn rejects_foreign_symbols() {
        let codec = NameCodec::new(['a', 'b']).unwrap();
        assert!(matches!(codec.encode("abc"), Err(Error::InvalidName { .. })));
        assert!(NameCodec::new([]).is_err());
        assert!(NameCodec::new(['a', 'a']).is_err());
    }
}
