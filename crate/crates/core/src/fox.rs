//! Fox derivatives on `Z[F]`.
//!
//! `D_k` is the derivation with `D_k(x_k) = 1`, `D_k(x_j) = 0` for `j != k`,
//! and product rule `D(uv) = D(u) v + eps(u) D(v)`. On a word this unwinds to
//! a sum over the letters `x_k^(+-1)` of the word: a letter `x_k` contributes
//! the suffix after it, a letter `x_k^-1` contributes minus the suffix
//! starting at it.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::finquot::{pi_reduce, GroupHom, Modulus};
use crate::freegroup::{FreeWord, GenIndex};
use crate::groupring::RingElt;

/// `D_k(w)` for a single word, using closed forms per syllable: for a
/// syllable `x_k^m` followed by suffix `S`,
/// `D_k` picks up `(1 + x_k + ... + x_k^(m-1)) S` when `m > 0` and
/// `-(x_k^-1 + ... + x_k^m) S` when `m < 0`.
pub fn fox_derive_word(k: GenIndex, w: &FreeWord) -> RingElt {
    let mut out = RingElt::zero(w.rank());
    let mut suffix = FreeWord::identity(w.rank());
    for s in w.syllables().iter().rev() {
        if s.gen == k {
            if s.exp > 0 {
                for t in 0..s.exp {
                    out.add_term(suffix.prefixed(k, t), BigInt::from(1));
                }
            } else {
                for t in 1..=-s.exp {
                    out.add_term(suffix.prefixed(k, -t), BigInt::from(-1));
                }
            }
        }
        suffix = suffix.prefixed(s.gen, s.exp);
    }
    out
}

/// `D_k(u)`, extended additively over the terms of `u`.
pub fn fox_derive(k: GenIndex, u: &RingElt) -> Result<RingElt> {
    if k.get() > u.rank() {
        return Err(Error::GeneratorOutOfRange {
            index: k.get(),
            rank: u.rank(),
        });
    }
    let mut out = RingElt::zero(u.rank());
    for (w, c) in u.terms() {
        for (dw, dc) in fox_derive_word(k, w).terms() {
            out.add_term(dw.clone(), c * dc);
        }
    }
    Ok(out)
}

/// `[D_1(u), ..., D_n(u)]`, after checking
/// `u - eps(u) = sum_j (x_j - 1) D_j(u)` exactly.
pub fn fundamental_decomposition(u: &RingElt) -> Result<Vec<RingElt>> {
    let rank = u.rank();
    let derivatives = GenIndex::all(rank)
        .map(|k| fox_derive(k, u))
        .collect::<Result<Vec<_>>>()?;
    let mut rhs = RingElt::zero(rank);
    for (k, dk) in GenIndex::all(rank).zip(&derivatives) {
        let x_minus_one = &RingElt::from_word(FreeWord::generator(rank, k)?) - &RingElt::one(rank);
        rhs = &rhs + &(&x_minus_one * dk);
    }
    let lhs = &u.clone() - &RingElt::one(rank).scalar_mul(&u.augment());
    if lhs != rhs {
        return Err(Error::Internal(format!(
            "fundamental identity fails for {u}: left {lhs}, right {rhs}"
        )));
    }
    Ok(derivatives)
}

/// Checks `D_k(f^-1 n f) = D_k(n) f` modulo `Z[F](N-1)` for `n` in the kernel
/// `N` of `hom`, by projecting the difference to `Z[G]`.
pub fn conjugation_formula_check(
    k: GenIndex,
    f: &FreeWord,
    n: &FreeWord,
    hom: &GroupHom,
) -> Result<bool> {
    hom.require_kernel(n)?;
    let conjugated = n.conjugate(f)?;
    let lhs = fox_derive_word(k, &conjugated);
    let rhs = fox_derive_word(k, n).mul_word(f);
    Ok(pi_reduce(&(&lhs - &rhs), hom, Modulus::INTEGERS)?.is_zero())
}
