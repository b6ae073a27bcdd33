//! Reduced words in a free group `F_k`.

use std::fmt;

use crate::error::{Error, Result};

/// A generator `x_i` or its inverse. Generator indices are 1-based.
///
/// The derived ordering is `(generator, inverse)`, so `x_1 < x_1⁻¹ < x_2 < …`.
/// Traversals that need a deterministic letter order use this one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: usize,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        debug_assert!(generator >= 1);
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    /// `+i` for `x_i`, `-i` for `x_i⁻¹`.
    pub fn from_signed(index: i64) -> Option<Self> {
        match index {
            0 => None,
            i if i > 0 => Some(Letter::pos(i as usize)),
            i => Some(Letter::neg(i.unsigned_abs() as usize)),
        }
    }

    pub fn to_signed(self) -> i64 {
        if self.inverse {
            -(self.generator as i64)
        } else {
            self.generator as i64
        }
    }

    pub fn generator(self) -> usize {
        self.generator
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// All `2k` letters of `F_k` in letter order.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (1..=rank).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }
}

/// A freely reduced word over the generators of `F_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, generator: usize) -> Result<Self> {
        Word::reduce([Letter::pos(generator)], rank)
    }

    /// Freely reduces `letters`, checking every index lies in `1..=rank`.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Self> {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if l.generator == 0 || l.generator > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: l.to_signed(),
                    rank,
                });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    /// Same as [`Word::reduce`] but from signed indices (`-i` is `x_i⁻¹`).
    pub fn from_signed(indices: &[i64], rank: usize) -> Result<Self> {
        let letters = indices
            .iter()
            .map(|&i| Letter::from_signed(i).ok_or(Error::GeneratorOutOfRange { index: i, rank }))
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(letters, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    pub fn mul(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn inv(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Right multiplication by a single letter.
    pub fn push(&self, l: Letter) -> Word {
        let mut letters = self.letters.clone();
        push_reduced(&mut letters, l);
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inv() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// Length of the longest common prefix with `other`.
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        self.letters
            .iter()
            .zip(&other.letters)
            .take_while(|(a, b)| a == b)
            .count()
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters[..len].to_vec(),
        }
    }

    /// Sum of the exponents of generator `g`.
    pub fn exponent_sum(&self, generator: usize) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }

    /// Every reduced word of length at most `max_len` in `F_rank`, shortest first.
    pub fn all_up_to(rank: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::identity(rank)];
        let mut frontier = 0;
        for _ in 0..max_len {
            let end = out.len();
            for i in frontier..end {
                let w = out[i].clone();
                for l in Letter::all(rank) {
                    if w.letters.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    out.push(Word { rank, letters });
                }
            }
            frontier = end;
        }
        out
    }
}

fn push_reduced(letters: &mut Vec<Letter>, l: Letter) {
    if letters.last() == Some(&l.inverse()) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

/// Debug-friendly rendering in indexed syntax (`x1 X2`); `1` for the identity.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let c = if l.inverse { 'X' } else { 'x' };
            write!(f, "{c}{}", l.generator)?;
        }
        Ok(())
    }
}
