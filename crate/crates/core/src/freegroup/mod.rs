//! Free groups of finite rank.
//!
//! Words are stored in run-length form as a list of syllables `x_g^e`. Every
//! constructor freely reduces, so two words are equal exactly when their
//! syllable lists are equal. Words are totally ordered by shortlex: first by
//! letter length, then lexicographically with the letter order
//! `x1 < x1^-1 < x2 < x2^-1 < ...`.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use rand::Rng;

use crate::error::{Error, Result};

pub use parse::parse_word;

/// A 1-based generator index `k` of a free group of rank `n`, `1 <= k <= n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenIndex(usize);

impl GenIndex {
    pub fn new(value: usize, rank: usize) -> Result<Self> {
        if value == 0 || value > rank {
            return Err(Error::GeneratorOutOfRange { index: value, rank });
        }
        Ok(GenIndex(value))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub(crate) fn zero_based(self) -> usize {
        self.0 - 1
    }

    /// All generators `1..=rank` in order.
    pub fn all(rank: usize) -> impl Iterator<Item = GenIndex> {
        (1..=rank).map(GenIndex)
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset `K` of the generator indices.
pub type GenSet = BTreeSet<GenIndex>;

/// Parses a comma separated list such as `"1,3"`; the empty string is the
/// empty set.
pub fn parse_gen_set(text: &str, rank: usize) -> Result<GenSet> {
    let mut set = GenSet::new();
    for (pos, part) in text.split(',').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let value: usize = part.parse().map_err(|_| Error::Syntax {
            pos,
            msg: format!("expected generator index, found {part:?}"),
        })?;
        set.insert(GenIndex::new(value, rank)?);
    }
    Ok(set)
}

/// Renders a generator set as `{1,3}`.
pub fn format_gen_set(gens: &GenSet) -> String {
    let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// All subsets of `{1..rank}`, ordered by size and then lexicographically.
pub fn all_gen_sets(rank: usize) -> Vec<GenSet> {
    let mut sets: Vec<GenSet> = (0u32..1 << rank)
        .map(|mask| {
            GenIndex::all(rank)
                .filter(|g| mask & (1 << g.zero_based()) != 0)
                .collect()
        })
        .collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    sets
}

/// One syllable `x_gen^exp` with `exp != 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: GenIndex,
    pub exp: i64,
}

/// A single letter `x_gen` or `x_gen^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: GenIndex,
    pub inverse: bool,
}

impl Letter {
    /// Position of the letter in the shortlex alphabet.
    pub fn code(self) -> usize {
        2 * self.gen.zero_based() + usize::from(self.inverse)
    }

    pub fn from_code(code: usize) -> Letter {
        Letter {
            gen: GenIndex(code / 2 + 1),
            inverse: code % 2 == 1,
        }
    }

    pub fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// The alphabet `x1, x1^-1, x2, x2^-1, ...` in shortlex order.
    pub fn alphabet(rank: usize) -> impl Iterator<Item = Letter> {
        (0..2 * rank).map(Letter::from_code)
    }

    pub fn restricted_alphabet(gens: &GenSet) -> Vec<Letter> {
        gens.iter()
            .flat_map(|&gen| {
                [false, true]
                    .into_iter()
                    .map(move |inverse| Letter { gen, inverse })
            })
            .collect()
    }
}

/// A freely reduced word of a free group of rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    syllables: Vec<Syllable>,
}

fn push_reduced(syllables: &mut Vec<Syllable>, gen: GenIndex, exp: i64) {
    if exp == 0 {
        return;
    }
    if let Some(last) = syllables.last_mut() {
        if last.gen == gen {
            last.exp += exp;
            if last.exp == 0 {
                syllables.pop();
            }
            return;
        }
    }
    syllables.push(Syllable { gen, exp });
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            syllables: Vec::new(),
        }
    }

    pub fn generator(rank: usize, gen: GenIndex) -> Result<Self> {
        Self::syllable(rank, gen, 1)
    }

    pub fn syllable(rank: usize, gen: GenIndex, exp: i64) -> Result<Self> {
        GenIndex::new(gen.get(), rank)?;
        let mut syllables = Vec::new();
        push_reduced(&mut syllables, gen, exp);
        Ok(FreeWord { rank, syllables })
    }

    /// Builds the reduced word from raw `(generator, exponent)` pairs.
    pub fn from_pairs(rank: usize, pairs: &[(usize, i64)]) -> Result<Self> {
        let mut syllables = Vec::with_capacity(pairs.len());
        for &(gen, exp) in pairs {
            push_reduced(&mut syllables, GenIndex::new(gen, rank)?, exp);
        }
        Ok(FreeWord { rank, syllables })
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(rank: usize, letters: I) -> Self {
        let mut syllables = Vec::new();
        for letter in letters {
            debug_assert!(letter.gen.get() <= rank);
            push_reduced(
                &mut syllables,
                letter.gen,
                if letter.inverse { -1 } else { 1 },
            );
        }
        FreeWord { rank, syllables }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `x_gen^exp * self`.
    pub(crate) fn prefixed(&self, gen: GenIndex, exp: i64) -> FreeWord {
        let mut syllables = Vec::with_capacity(self.syllables.len() + 1);
        push_reduced(&mut syllables, gen, exp);
        for s in &self.syllables {
            push_reduced(&mut syllables, s.gen, s.exp);
        }
        FreeWord {
            rank: self.rank,
            syllables,
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.syllables.iter().flat_map(|s| {
            let letter = Letter {
                gen: s.gen,
                inverse: s.exp < 0,
            };
            std::iter::repeat_n(letter, s.exp.unsigned_abs() as usize)
        })
    }

    fn check_rank(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        let mut syllables = Vec::with_capacity(self.syllables.len() + other.syllables.len());
        syllables.extend_from_slice(&self.syllables);
        for s in &other.syllables {
            push_reduced(&mut syllables, s.gen, s.exp);
        }
        Ok(FreeWord {
            rank: self.rank,
            syllables,
        })
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    pub fn power(&self, m: i64) -> FreeWord {
        let base = if m < 0 { self.invert() } else { self.clone() };
        let count = m.unsigned_abs();
        let (conjugator, core) = base.cyclic_reduce();
        let core_power = match core.syllables.as_slice() {
            [] => core.clone(),
            [single] => {
                let mut syllables = Vec::new();
                push_reduced(&mut syllables, single.gen, single.exp * count as i64);
                FreeWord {
                    rank: self.rank,
                    syllables,
                }
            }
            _ => {
                let mut acc = FreeWord::identity(self.rank);
                for _ in 0..count {
                    acc = &acc * &core;
                }
                acc
            }
        };
        &(&conjugator * &core_power) * &conjugator.invert()
    }

    /// `b^-1 a b`
    pub fn conjugate(&self, by: &FreeWord) -> Result<FreeWord> {
        by.invert().multiply(self)?.multiply(by)
    }

    /// `[a, b] = a^-1 b^-1 a b`
    pub fn commutator(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        Ok(&(&(&self.invert() * &other.invert()) * self) * other)
    }

    /// Splits the word as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced and `conjugator` maximal.
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let mut conj = Vec::new();
        let mut core: std::collections::VecDeque<Syllable> =
            self.syllables.iter().copied().collect();
        while core.len() >= 2 {
            let first = core[0];
            let last = core[core.len() - 1];
            if first.gen != last.gen || (first.exp > 0) == (last.exp > 0) {
                break;
            }
            // Opposite signs: peel off the common part.
            let t = first.exp.abs().min(last.exp.abs()) * first.exp.signum();
            conj.push(Syllable {
                gen: first.gen,
                exp: t,
            });
            core[0].exp -= t;
            let n = core.len();
            core[n - 1].exp += t;
            if core[n - 1].exp == 0 {
                core.pop_back();
            }
            if core[0].exp == 0 {
                core.pop_front();
            }
        }
        let mut conjugator = Vec::new();
        for s in conj {
            push_reduced(&mut conjugator, s.gen, s.exp);
        }
        (
            FreeWord {
                rank: self.rank,
                syllables: conjugator,
            },
            FreeWord {
                rank: self.rank,
                syllables: core.into_iter().collect(),
            },
        )
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.cyclic_reduce().0.is_identity()
    }

    pub fn occurs(&self, gen: GenIndex) -> bool {
        self.syllables.iter().any(|s| s.gen == gen)
    }

    /// Whether every letter comes from `gens`, i.e. the word lies in `F_K`.
    pub fn in_subgroup(&self, gens: &GenSet) -> bool {
        self.syllables.iter().all(|s| gens.contains(&s.gen))
    }

    /// Exponent sum of generator `gen`.
    pub fn exponent_sum(&self, gen: GenIndex) -> i64 {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| s.exp)
            .sum()
    }

    /// Reduced word of exactly `len` letters, uniformly among reduced words.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, rank: usize, len: usize) -> FreeWord {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let letter = Letter::from_code(rng.gen_range(0..2 * rank));
            if letters.last().is_some_and(|l| l.inv() == letter) {
                continue;
            }
            letters.push(letter);
        }
        FreeWord::from_letters(rank, letters)
    }

    /// All reduced words with at most `max_len` letters, in shortlex order.
    pub fn enumerate(rank: usize, max_len: usize) -> Vec<FreeWord> {
        let mut all = vec![FreeWord::identity(rank)];
        let mut level: Vec<(FreeWord, Option<Letter>)> = vec![(FreeWord::identity(rank), None)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (word, last) in &level {
                for letter in Letter::alphabet(rank) {
                    if *last == Some(letter.inv()) {
                        continue;
                    }
                    let extended = word * &FreeWord::from_letters(rank, [letter]);
                    next.push((extended, Some(letter)));
                }
            }
            all.extend(next.iter().map(|(w, _)| w.clone()));
            level = next;
        }
        all
    }
}

impl Mul for &FreeWord {
    type Output = FreeWord;

    /// Panics on rank mismatch; use [`FreeWord::multiply`] for a checked product.
    fn mul(self, rhs: &FreeWord) -> FreeWord {
        self.multiply(rhs).expect("rank mismatch in word product")
    }
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| {
                self.letters()
                    .map(Letter::code)
                    .cmp(other.letters().map(Letter::code))
            })
            .then_with(|| self.rank.cmp(&other.rank))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "x{}", s.gen)?;
            if s.exp != 1 {
                write!(f, "^{}", s.exp)?;
            }
        }
        Ok(())
    }
}
