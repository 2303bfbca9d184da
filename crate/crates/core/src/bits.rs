//! Finite binary strings and the cylinder sets they name.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A binary digit. `Zero < One`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Bit {
    Zero = 0,
    One = 1,
}

impl Bit {
    pub fn flip(self) -> Bit {
        match self {
            Bit::Zero => Bit::One,
            Bit::One => Bit::Zero,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Bit::Zero => '0',
            Bit::One => '1',
        }
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        if b {
            Bit::One
        } else {
            Bit::Zero
        }
    }
}

/// A finite binary string, first-observed bit first. The empty string is ε.
///
/// The derived order is lexicographic with `0 < 1` and a proper prefix sorting
/// before its extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<Bit>);

impl BitString {
    pub fn empty() -> Self {
        BitString(Vec::new())
    }

    pub fn from_bits(bits: Vec<Bit>) -> Self {
        BitString(bits)
    }

    /// `n` copies of `bit`.
    pub fn repeat(bit: Bit, n: usize) -> Self {
        BitString(alloc::vec![bit; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[Bit] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<Bit> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, bit: Bit) {
        self.0.push(bit);
    }

    pub fn pop_bit(&mut self) -> Option<Bit> {
        self.0.pop()
    }

    /// `self` followed by `bit`.
    pub fn with(&self, bit: Bit) -> BitString {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(bit);
        BitString(v)
    }

    /// The first `n` bits (all of them if `n` exceeds the length).
    pub fn prefix(&self, n: usize) -> BitString {
        BitString(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == Bit::One).count()
    }

    /// True iff `self` is a (not necessarily proper) prefix of `other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Bit> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Bit> for BitString {
    fn from_iter<I: IntoIterator<Item = Bit>>(iter: I) -> Self {
        BitString(iter.into_iter().collect())
    }
}

/// `x` followed by `y`.
pub fn concat(x: &BitString, y: &BitString) -> BitString {
    let mut v = Vec::with_capacity(x.len() + y.len());
    v.extend_from_slice(&x.0);
    v.extend_from_slice(&y.0);
    BitString(v)
}

/// True iff `y = xz` for some nonempty `z`.
pub fn is_proper_prefix(x: &BitString, y: &BitString) -> bool {
    x.len() < y.len() && x.is_prefix_of(y)
}

/// All `2^k` strings of length `k` in lexicographic order.
pub fn strings_of_length(k: usize) -> Vec<BitString> {
    assert!(
        k < usize::BITS as usize,
        "2^{k} strings cannot be enumerated"
    );
    (0..1usize << k)
        .map(|index| {
            (0..k)
                .map(|i| Bit::from(index >> (k - 1 - i) & 1 == 1))
                .collect()
        })
        .collect()
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use fmt::Write;
        for b in &self.0 {
            f.write_char(b.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Bit::Zero),
                '1' => Ok(Bit::One),
                _ => Err(Error::Parse(alloc::format!("not a bit string: {s:?}"))),
            })
            .collect()
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// The cylinder Γ_x: every infinite sequence beginning with `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cylinder {
    prefix: BitString,
}

impl Cylinder {
    pub fn new(prefix: BitString) -> Self {
        Cylinder { prefix }
    }

    /// Γ_ε.
    pub fn whole_space() -> Self {
        Cylinder::new(BitString::empty())
    }

    pub fn prefix(&self) -> &BitString {
        &self.prefix
    }

    pub fn is_whole_space(&self) -> bool {
        self.prefix.is_empty()
    }

    /// Γ_x0 and Γ_x1, which partition Γ_x.
    pub fn children(&self) -> [Cylinder; 2] {
        [
            Cylinder::new(self.prefix.with(Bit::Zero)),
            Cylinder::new(self.prefix.with(Bit::One)),
        ]
    }

    /// Γ_y ⊆ Γ_x iff x is a prefix of y.
    pub fn contains(&self, other: &Cylinder) -> bool {
        self.prefix.is_prefix_of(&other.prefix)
    }

    /// Two cylinders are either nested or disjoint.
    pub fn is_disjoint(&self, other: &Cylinder) -> bool {
        !self.contains(other) && !other.contains(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&bs(""), &bs("101")), bs("101"));
        assert_eq!(concat(&bs("10"), &bs("1")), bs("101"));
        assert_eq!(concat(&bs("0"), &bs("")), bs("0"));
    }

    #[test]
    fn proper_prefix_examples() {
        assert!(is_proper_prefix(&bs("0"), &bs("01")));
        assert!(!is_proper_prefix(&bs("01"), &bs("01")));
        assert!(!is_proper_prefix(&bs("1"), &bs("01")));
        assert!(is_proper_prefix(&bs(""), &bs("1")));
    }

    #[test]
    fn strings_of_length_examples() {
        assert_eq!(strings_of_length(0), vec![bs("")]);
        assert_eq!(strings_of_length(1), vec![bs("0"), bs("1")]);
        assert_eq!(
            strings_of_length(2),
            vec![bs("00"), bs("01"), bs("10"), bs("11")]
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(bs("").to_string(), "");
        assert_eq!(bs("0110").to_string(), "0110");
        assert!("01x".parse::<BitString>().is_err());
    }

    #[test]
    fn lexicographic_order() {
        assert!(bs("0") < bs("1"));
        assert!(bs("0") < bs("00"));
        assert!(bs("011") < bs("1"));
    }

    #[test]
    fn cylinder_nesting() {
        let whole = Cylinder::whole_space();
        let [c0, c1] = whole.children();
        assert!(whole.is_whole_space());
        assert!(whole.contains(&c0) && whole.contains(&c1));
        assert!(c0.is_disjoint(&c1));
        assert!(!c0.contains(&whole));
        assert_eq!(c1.children()[0].prefix(), &bs("10"));
    }
}
