//! Schreier transversals and Reidemeister–Schreier rewriting for kernels of
//! homomorphisms onto finite groups.
//!
//! Cosets `N f` of `N = ker(phi)` are identified with elements `phi(f)` of the
//! image subgroup. A breadth-first search from the identity, trying letters in
//! shortlex order, picks the shortlex-least word in each coset, which makes
//! the transversal prefix-closed. For each coset representative `s` and
//! generator `x` the Schreier generator is `s x (rep(s x))^-1`; the `m - 1`
//! pairs that are edges of the search tree give the identity, and the rest
//! form a free basis of `N` with `m (rank - 1) + 1` elements.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::finquot::{GroupHom, Modulus};
use crate::freegroup::{FreeWord, GenIndex, GenSet, Letter};

/// One pair `(s, x)` with its Schreier generator `s x (rep(s x))^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierPair {
    pub coset: usize,
    pub gen: GenIndex,
    pub word: FreeWord,
    /// Position in the free basis, `None` for the spanning-tree pairs.
    pub free_index: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SchreierSystem {
    hom: GroupHom,
    gens: GenSet,
    cosets: Vec<usize>,
    transversal: Vec<Option<FreeWord>>,
    pairs: Vec<SchreierPair>,
    // (element, generator) -> pair index
    pair_of: Vec<Option<usize>>,
    basis: Vec<usize>,
}

impl SchreierSystem {
    /// The Schreier system of `ker(hom)` in the whole free group.
    pub fn build(hom: &GroupHom) -> SchreierSystem {
        Self::build_on(hom, GenIndex::all(hom.rank()).collect())
    }

    /// The Schreier system of `F_K ∩ ker(hom)` inside `F_K`, the subgroup
    /// generated by `gens`. For empty `gens` the subgroup is trivial and the
    /// system has a single coset and no generators.
    pub fn subgroup(hom: &GroupHom, gens: &GenSet) -> SchreierSystem {
        Self::build_on(hom, gens.clone())
    }

    fn build_on(hom: &GroupHom, gens: GenSet) -> SchreierSystem {
        let rank = hom.rank();
        let group = hom.target().clone();
        let alphabet = Letter::restricted_alphabet(&gens);
        let letter_image = |l: Letter| {
            let g = hom.image_of(l.gen);
            if l.inverse {
                group.inv(g)
            } else {
                g
            }
        };

        let mut transversal: Vec<Option<FreeWord>> = vec![None; group.order()];
        transversal[0] = Some(FreeWord::identity(rank));
        let mut cosets = vec![0];
        let mut next = 0;
        while next < cosets.len() {
            let s = cosets[next];
            for &letter in &alphabet {
                let t = group.mul(s, letter_image(letter));
                if transversal[t].is_none() {
                    let rep = transversal[s].as_ref().expect("visited coset")
                        * &FreeWord::from_letters(rank, [letter]);
                    transversal[t] = Some(rep);
                    cosets.push(t);
                }
            }
            next += 1;
        }

        let mut pairs = Vec::with_capacity(cosets.len() * gens.len());
        let mut pair_of = vec![None; group.order() * rank];
        for &s in &cosets {
            let rep = transversal[s].as_ref().expect("coset representative");
            for &gen in &gens {
                let t = group.mul(s, hom.image_of(gen));
                let target_rep = transversal[t].as_ref().expect("closed under generators");
                let word = &(rep * &FreeWord::generator(rank, gen).expect("gen in range"))
                    * &target_rep.invert();
                pair_of[s * rank + gen.zero_based()] = Some(pairs.len());
                pairs.push(SchreierPair {
                    coset: s,
                    gen,
                    word,
                    free_index: None,
                });
            }
        }
        let mut basis: Vec<usize> = (0..pairs.len())
            .filter(|&i| !pairs[i].word.is_identity())
            .collect();
        basis.sort_by(|&a, &b| pairs[a].word.cmp(&pairs[b].word));
        for (position, &i) in basis.iter().enumerate() {
            pairs[i].free_index = Some(position);
        }
        SchreierSystem {
            hom: hom.clone(),
            gens,
            cosets,
            transversal,
            pairs,
            pair_of,
            basis,
        }
    }

    pub fn hom(&self) -> &GroupHom {
        &self.hom
    }

    pub fn generators_used(&self) -> &GenSet {
        &self.gens
    }

    /// Number of cosets `m`.
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    /// Coset elements in discovery order.
    pub fn cosets(&self) -> &[usize] {
        &self.cosets
    }

    /// The representative of the coset with image `element`, if that element
    /// is reached.
    pub fn representative(&self, element: usize) -> Option<&FreeWord> {
        self.transversal.get(element).and_then(Option::as_ref)
    }

    /// Representatives in discovery order.
    pub fn representatives(&self) -> impl Iterator<Item = &FreeWord> {
        self.cosets
            .iter()
            .map(|&c| self.transversal[c].as_ref().expect("coset representative"))
    }

    pub fn pairs(&self) -> &[SchreierPair] {
        &self.pairs
    }

    /// The free basis, in shortlex order of the generator words.
    pub fn free_generators(&self) -> impl Iterator<Item = &FreeWord> {
        self.basis.iter().map(|&i| &self.pairs[i].word)
    }

    pub fn free_rank(&self) -> usize {
        self.basis.len()
    }

    /// Expresses `w` over the free basis: a list of `(basis position, ±1)`
    /// whose product reproduces `w` exactly.
    pub fn rewrite(&self, w: &FreeWord) -> Result<Vec<(usize, i32)>> {
        let steps = self.scan(w)?;
        let mut product = FreeWord::identity(w.rank());
        for &(i, sign) in &steps {
            let g = &self.pairs[self.basis[i]].word;
            product = if sign > 0 {
                &product * g
            } else {
                &product * &g.invert()
            };
        }
        if &product != w {
            return Err(Error::Internal(format!(
                "rewriting {w} reproduced {product}"
            )));
        }
        Ok(steps)
    }

    fn scan(&self, w: &FreeWord) -> Result<Vec<(usize, i32)>> {
        if w.rank() != self.hom.rank() {
            return Err(Error::RankMismatch {
                left: self.hom.rank(),
                right: w.rank(),
            });
        }
        if !w.in_subgroup(&self.gens) {
            return Err(Error::NotInSubgroup(w.to_string()));
        }
        self.hom.require_kernel(w)?;
        let group = self.hom.target();
        let rank = self.hom.rank();
        let mut coset = 0;
        let mut steps = Vec::new();
        for letter in w.letters() {
            let image = self.hom.image_of(letter.gen);
            let (source, sign) = if letter.inverse {
                coset = group.mul(coset, group.inv(image));
                (coset, -1)
            } else {
                let source = coset;
                coset = group.mul(coset, image);
                (source, 1)
            };
            let pair = self.pair_of[source * rank + letter.gen.zero_based()]
                .expect("pair exists for reachable coset");
            if let Some(i) = self.pairs[pair].free_index {
                steps.push((i, sign));
            }
        }
        debug_assert_eq!(coset, 0);
        Ok(steps)
    }

    /// Image of `w` in `N / [N,N] N^d`: exponent sums over the free basis,
    /// reduced mod `d`.
    pub fn abelianized_vector(&self, w: &FreeWord, d: Modulus) -> Result<Vec<BigInt>> {
        let mut sums = vec![0i64; self.basis.len()];
        for (i, sign) in self.scan(w)? {
            sums[i] += i64::from(sign);
        }
        Ok(sums
            .into_iter()
            .map(|x| d.reduce(&BigInt::from(x)))
            .collect())
    }
}

impl fmt::Display for SchreierSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "index {}", self.index())?;
        writeln!(f, "transversal")?;
        for &c in &self.cosets {
            writeln!(
                f,
                "  [{c}] {}",
                self.transversal[c].as_ref().expect("coset representative")
            )?;
        }
        writeln!(f, "free generators {}", self.free_rank())?;
        for (i, &p) in self.basis.iter().enumerate() {
            let pair = &self.pairs[p];
            let rep = self.transversal[pair.coset]
                .as_ref()
                .expect("coset representative");
            writeln!(f, "  g{i} = {}  (s = {rep}, x = x{})", pair.word, pair.gen)?;
        }
        Ok(())
    }
}
