//! The integer group ring `Z[F]` of a free group.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freegroup::FreeWord;

/// A finite `Z`-linear combination of reduced words. Zero coefficients are
/// never stored, and terms iterate in shortlex order of their words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElt {
    rank: usize,
    terms: BTreeMap<FreeWord, BigInt>,
}

impl RingElt {
    pub fn zero(rank: usize) -> Self {
        RingElt {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_word(FreeWord::identity(rank))
    }

    pub fn from_word(word: FreeWord) -> Self {
        Self::monomial(BigInt::one(), word)
    }

    pub fn monomial(coeff: BigInt, word: FreeWord) -> Self {
        let mut out = RingElt::zero(word.rank());
        out.add_term(word, coeff);
        out
    }

    /// Sums the given terms; all words must share one rank.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, FreeWord)>,
    {
        let mut out = RingElt::zero(rank);
        for (c, w) in terms {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in shortlex order of their words.
    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, word: &FreeWord) -> BigInt {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, word: FreeWord, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &RingElt) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RingElt) -> Result<RingElt> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &RingElt) -> Result<RingElt> {
        self.try_add(&other.negate())
    }

    pub fn try_mul(&self, other: &RingElt) -> Result<RingElt> {
        self.check_rank(other)?;
        let mut out = RingElt::zero(self.rank);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u * v, a * b);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> RingElt {
        RingElt {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scalar_mul(&self, k: &BigInt) -> RingElt {
        if k.is_zero() {
            return RingElt::zero(self.rank);
        }
        RingElt {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    /// Right multiplication by a single group element.
    pub fn mul_word(&self, word: &FreeWord) -> RingElt {
        let mut out = RingElt::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w * word, c.clone());
        }
        out
    }

    /// The augmentation: sum of all coefficients.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl From<FreeWord> for RingElt {
    fn from(word: FreeWord) -> Self {
        RingElt::from_word(word)
    }
}

// The operator impls panic on rank mismatch; the `try_*` methods report it.

impl Add for &RingElt {
    type Output = RingElt;
    fn add(self, rhs: &RingElt) -> RingElt {
        self.try_add(rhs).expect("rank mismatch in ring sum")
    }
}

impl Sub for &RingElt {
    type Output = RingElt;
    fn sub(self, rhs: &RingElt) -> RingElt {
        self.try_sub(rhs).expect("rank mismatch in ring difference")
    }
}

impl Mul for &RingElt {
    type Output = RingElt;
    fn mul(self, rhs: &RingElt) -> RingElt {
        self.try_mul(rhs).expect("rank mismatch in ring product")
    }
}

impl Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        self.negate()
    }
}

/// Renders `c*word` terms in shortlex order joined by ` + ` / ` - `. A unit
/// coefficient is omitted, the identity word prints as `e` and zero as `0`.
impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            if magnitude.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{magnitude}*{w}")?;
            }
        }
        Ok(())
    }
}
