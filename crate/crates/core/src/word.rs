//! Signed words over integer generator (or edge) ids.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One oriented letter `x^{±1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub id: u32,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(id: u32) -> Self {
        Letter { id, inverse: false }
    }

    pub const fn neg(id: u32) -> Self {
        Letter { id, inverse: true }
    }

    pub const fn new(id: u32, sign: i8) -> Self {
        Letter { id, inverse: sign < 0 }
    }

    pub const fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    #[must_use]
    pub const fn inv(self) -> Self {
        Letter { id: self.id, inverse: !self.inverse }
    }

    /// Signed 1-based encoding used by the JSON forms: `g_k^{±1} ↦ ±(k+1)`.
    pub fn to_signed(self) -> i64 {
        let v = i64::from(self.id) + 1;
        if self.inverse {
            -v
        } else {
            v
        }
    }

    pub fn from_signed(v: i64) -> Option<Self> {
        if v == 0 || v.unsigned_abs() > u64::from(u32::MAX) {
            return None;
        }
        let id = (v.unsigned_abs() - 1) as u32;
        Some(Letter { id, inverse: v < 0 })
    }
}

/// A word in the free group, stored as a sequence of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a word from the signed 1-based encoding (`[1, -2]` is `g0 g1⁻¹`).
    ///
    /// Panics on a zero entry; intended for literals.
    pub fn from_signed(values: &[i64]) -> Self {
        Word(values.iter().map(|&v| Letter::from_signed(v).expect("zero letter")).collect())
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|l| l.to_signed()).collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    /// Reverses the order and flips every sign.
    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `self^e` for a sign `e ∈ {+1, -1}`.
    #[must_use]
    pub fn signed_power(&self, sign: i64) -> Word {
        if sign < 0 {
            self.inverse()
        } else {
            self.clone()
        }
    }

    pub fn occurrences(&self, id: u32) -> usize {
        self.0.iter().filter(|l| l.id == id).count()
    }

    pub fn contains(&self, id: u32) -> bool {
        self.0.iter().any(|l| l.id == id)
    }

    pub fn exponent_sum(&self, id: u32) -> i64 {
        self.0.iter().filter(|l| l.id == id).map(|l| l.sign()).sum()
    }

    pub fn rotate_left(&mut self, k: usize) {
        if !self.0.is_empty() {
            let k = k % self.0.len();
            self.0.rotate_left(k);
        }
    }

    /// Cancels adjacent `x x⁻¹` pairs.
    pub fn free_reduce(&mut self) {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        self.0 = out;
    }

    /// Free reduction followed by cancellation across the ends, treating the
    /// word as a cyclic word.
    pub fn cyclic_reduce(&mut self) {
        self.free_reduce();
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k] == self.0[n - 1 - k].inv() {
            k += 1;
        }
        if k > 0 {
            self.0.truncate(n - k);
            self.0.drain(..k);
        }
    }

    #[must_use]
    pub fn reduced(mut self) -> Word {
        self.free_reduce();
        self
    }

    #[must_use]
    pub fn cyclically_reduced(mut self) -> Word {
        self.cyclic_reduce();
        self
    }

    /// The `(z, ζ)`-substitution: every `z` becomes `ζ` and every `z⁻¹`
    /// becomes `ζ⁻¹`.
    pub fn substitute(&self, z: u32, zeta: &Word) -> Result<Word> {
        if zeta.contains(z) {
            return Err(Error::SelfSubstitution(z));
        }
        Ok(self.substitute_unchecked(z, zeta))
    }

    pub(crate) fn substitute_unchecked(&self, z: u32, zeta: &Word) -> Word {
        if !self.contains(z) {
            return self.clone();
        }
        let zeta_inv = zeta.inverse();
        let mut out = Vec::with_capacity(self.0.len() + zeta.len());
        for &l in &self.0 {
            if l.id == z {
                out.extend_from_slice(if l.inverse { &zeta_inv.0 } else { &zeta.0 });
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Removes every occurrence of `id` (substitution by the empty word).
    pub fn delete(&mut self, id: u32) {
        self.0.retain(|l| l.id != id);
    }

    #[must_use]
    pub fn map_ids(&self, f: impl Fn(u32) -> u32) -> Word {
        Word(self.0.iter().map(|l| Letter { id: f(l.id), inverse: l.inverse }).collect())
    }

    /// Lexicographically least representative among all cyclic rotations of
    /// the word and of its inverse.
    pub fn cyclic_canonical(&self) -> Word {
        let mut best = self.clone();
        for base in [self.clone(), self.inverse()] {
            for k in 0..base.len().max(1) {
                let mut w = base.clone();
                w.rotate_left(k);
                if w < best {
                    best = w;
                }
            }
        }
        best
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "g{}", l.id + 1)?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_signed().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<i64>::deserialize(d)?;
        raw.into_iter()
            .map(|v| Letter::from_signed(v).ok_or_else(|| serde::de::Error::custom("zero is not a letter")))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec((0u32..4, any::<bool>()), 0..24)
            .prop_map(|v| v.into_iter().map(|(id, inverse)| Letter { id, inverse }).collect())
    }

    #[test]
    fn substitution_examples() {
        let h = 0;
        let g = 1;
        let zeta = Word::from_letters(vec![Letter::pos(g)]);
        let w = Word::from_letters(vec![Letter::pos(h)]);
        assert_eq!(w.substitute(h, &zeta).unwrap(), zeta);

        let w = Word::from_letters(vec![Letter::pos(h), Letter::pos(g), Letter::neg(h)]);
        assert_eq!(
            w.substitute(h, &zeta).unwrap(),
            Word::from_letters(vec![Letter::pos(g), Letter::pos(g), Letter::neg(g)])
        );

        let (a, b, c) = (2, 3, 4);
        let w = Word::from_letters(vec![Letter::pos(a), Letter::pos(b)]);
        assert_eq!(w.substitute(c, &zeta).unwrap(), w);
    }

    #[test]
    fn substitution_rejects_self_reference() {
        let w = Word::from_signed(&[1, 2]);
        let zeta = Word::from_signed(&[1, 3]);
        assert!(matches!(w.substitute(0, &zeta), Err(Error::SelfSubstitution(0))));
    }

    #[test]
    fn cyclic_reduction() {
        let mut w = Word::from_signed(&[2, 1, 3, -3, -2]);
        w.cyclic_reduce();
        assert_eq!(w, Word::from_signed(&[1]));
        let mut w = Word::from_signed(&[1, 2, -1, -2]);
        w.cyclic_reduce();
        assert_eq!(w.len(), 4);
        let mut w = Word::from_signed(&[1, -1]);
        w.cyclic_reduce();
        assert!(w.is_empty());
    }

    proptest! {
        #[test]
        fn inverse_is_involution_and_flips(w in arb_word()) {
            let inv = w.inverse();
            prop_assert_eq!(inv.inverse(), w.clone());
            for (a, b) in w.iter().zip(inv.iter().rev()) {
                prop_assert_eq!(a.id, b.id);
                prop_assert_ne!(a.inverse, b.inverse);
            }
        }

        #[test]
        fn reduction_preserves_exponent_sums(w in arb_word()) {
            let r = w.clone().cyclically_reduced();
            for id in 0..4 {
                prop_assert_eq!(r.exponent_sum(id), w.exponent_sum(id));
            }
            let mut again = r.clone();
            again.cyclic_reduce();
            prop_assert_eq!(again, r);
        }
    }
}
