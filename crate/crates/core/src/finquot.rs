//! Homomorphisms `F -> G` onto finite groups and the induced projection
//! `Z[F] -> (Z/d)[G]`.
//!
//! For `N = ker(F -> G)` the quotient `Z[F] / (Z[F](N-1) + dZ[F])` embeds in
//! `(Z/d)[G]`, so a group ring element vanishes modulo that ideal exactly when
//! its projection here is zero.

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::catalog::FiniteGroup;
use crate::error::{Error, Result};
use crate::fox::fox_derive_word;
use crate::freegroup::{FreeWord, GenIndex, GenSet};
use crate::groupring::RingElt;

/// Coefficient modulus `d`; `0` means integer coefficients. `d = 1` is
/// rejected and negative values are replaced by their absolute value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub const INTEGERS: Modulus = Modulus(0);

    pub fn new(d: i64) -> Result<Self> {
        match d.unsigned_abs() {
            1 => Err(Error::UnitModulus),
            m => Ok(Modulus(m)),
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn is_integers(self) -> bool {
        self.0 == 0
    }

    /// Canonical residue in `[0, d)`, or `x` itself when `d = 0`.
    pub fn reduce(self, x: &BigInt) -> BigInt {
        if self.0 == 0 {
            x.clone()
        } else {
            x.mod_floor(&BigInt::from(self.0))
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A homomorphism from the free group of rank `rank` to `target`, fixed by
/// the images of the generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    rank: usize,
    target: Arc<FiniteGroup>,
    images: Vec<usize>,
    image_subgroup: Vec<usize>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.images == other.images && self.target == other.target
    }
}

impl Eq for GroupHom {}

impl GroupHom {
    pub fn new(target: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::ZeroRank);
        }
        if let Some(&bad) = images.iter().find(|&&i| i >= target.order()) {
            return Err(Error::ElementOutOfRange {
                index: bad,
                order: target.order(),
            });
        }
        let image_subgroup = target.subgroup(&images);
        Ok(GroupHom {
            rank: images.len(),
            target,
            images,
            image_subgroup,
        })
    }

    /// The hom sending every generator to the identity.
    pub fn trivial(target: Arc<FiniteGroup>, rank: usize) -> Result<Self> {
        Self::new(target, vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image_of(&self, gen: GenIndex) -> usize {
        self.images[gen.zero_based()]
    }

    /// The image subgroup, sorted. Its order is the index of the kernel.
    pub fn image_subgroup(&self) -> &[usize] {
        &self.image_subgroup
    }

    pub fn kernel_index(&self) -> usize {
        self.image_subgroup.len()
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if rank != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: rank,
            });
        }
        Ok(())
    }

    pub fn apply(&self, word: &FreeWord) -> Result<usize> {
        self.check_rank(word.rank())?;
        Ok(self.apply_unchecked(word))
    }

    pub(crate) fn apply_unchecked(&self, word: &FreeWord) -> usize {
        word.syllables().iter().fold(0, |acc, s| {
            let g = self.target.pow(self.images[s.gen.zero_based()], s.exp);
            self.target.mul(acc, g)
        })
    }

    pub fn in_kernel(&self, word: &FreeWord) -> Result<bool> {
        Ok(self.apply(word)? == 0)
    }

    pub(crate) fn require_kernel(&self, word: &FreeWord) -> Result<()> {
        if !self.in_kernel(word)? {
            return Err(Error::NotInKernel(word.to_string()));
        }
        Ok(())
    }

    /// Images of the generators in `gens`.
    pub fn images_of(&self, gens: &GenSet) -> Vec<usize> {
        gens.iter().map(|&g| self.image_of(g)).collect()
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        write!(f, "{}[{}]", self.target.name(), images.join(","))
    }
}

/// All `|G|^rank` homomorphisms `F(rank) -> G`, with image tuples in
/// lexicographic order.
pub fn enumerate_homs(
    rank: usize,
    target: &Arc<FiniteGroup>,
) -> impl Iterator<Item = GroupHom> + '_ {
    let order = target.order();
    let total = order.pow(rank as u32);
    (0..total).map(move |mut code| {
        let mut images = vec![0; rank];
        for slot in images.iter_mut().rev() {
            *slot = code % order;
            code /= order;
        }
        GroupHom::new(target.clone(), images).expect("images are in range")
    })
}

/// An element of `(Z/d)[G]`, stored as one coefficient per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotRingElt {
    modulus: Modulus,
    target: Arc<FiniteGroup>,
    coeffs: Vec<BigInt>,
}

impl QuotRingElt {
    pub fn zero(target: Arc<FiniteGroup>, modulus: Modulus) -> Self {
        QuotRingElt {
            modulus,
            coeffs: vec![BigInt::zero(); target.order()],
            target,
        }
    }

    pub fn basis(target: Arc<FiniteGroup>, modulus: Modulus, element: usize) -> Self {
        let mut out = Self::zero(target, modulus);
        out.add_at(element, &BigInt::from(1));
        out
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, element: usize) -> &BigInt {
        &self.coeffs[element]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn add_at(&mut self, element: usize, c: &BigInt) {
        let slot = &mut self.coeffs[element];
        *slot += c;
        if !self.modulus.is_integers() {
            *slot = self.modulus.reduce(slot);
        }
    }

    fn compatible(&self, other: &QuotRingElt) {
        assert!(
            self.modulus == other.modulus && self.target == other.target,
            "quotient ring elements over different rings"
        );
    }
}

impl Add for &QuotRingElt {
    type Output = QuotRingElt;
    fn add(self, rhs: &QuotRingElt) -> QuotRingElt {
        self.compatible(rhs);
        let mut out = self.clone();
        for (g, c) in rhs.coeffs.iter().enumerate() {
            out.add_at(g, c);
        }
        out
    }
}

impl Mul for &QuotRingElt {
    type Output = QuotRingElt;
    fn mul(self, rhs: &QuotRingElt) -> QuotRingElt {
        self.compatible(rhs);
        let mut out = QuotRingElt::zero(self.target.clone(), self.modulus);
        for (a, ca) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in rhs.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out.add_at(self.target.mul(a, b), &(ca * cb));
            }
        }
        out
    }
}

/// Lists nonzero coefficients as `c*[g]`, where `g` is the element index.
impl fmt::Display for QuotRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = c.sign() == num_bigint::Sign::Minus;
            match (first, sign) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            write!(f, "{}*[{g}]", c.magnitude())?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        if !self.modulus.is_integers() {
            write!(f, " (mod {})", self.modulus)?;
        }
        Ok(())
    }
}

/// Projects `u` to `(Z/d)[G]`: each word goes to its image, coefficients
/// are summed and reduced mod `d`.
pub fn pi_reduce(u: &RingElt, hom: &GroupHom, d: Modulus) -> Result<QuotRingElt> {
    hom.check_rank(u.rank())?;
    let mut out = QuotRingElt::zero(hom.target.clone(), d);
    for (w, c) in u.terms() {
        out.coeffs[hom.apply_unchecked(w)] += c;
    }
    if !d.is_integers() {
        for c in &mut out.coeffs {
            *c = d.reduce(c);
        }
    }
    Ok(out)
}

/// Whether `D_k(v)` vanishes modulo `Z[F](N-1) + dZ[F]` for every generator
/// `k` outside `gens`.
pub fn criterion_holds(v: &FreeWord, gens: &GenSet, hom: &GroupHom, d: Modulus) -> Result<bool> {
    hom.check_rank(v.rank())?;
    for k in GenIndex::all(v.rank()).filter(|k| !gens.contains(k)) {
        if !pi_reduce(&fox_derive_word(k, v), hom, d)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::freegroup::parse_word;
    use proptest::prelude::*;

    #[test]
    fn quot_rendering() {
        let z3 = lookup("Z/3").unwrap();
        let mut u = QuotRingElt::zero(z3.clone(), Modulus::INTEGERS);
        assert_eq!(u.to_string(), "0");
        u.coeffs[1] = BigInt::from(-2);
        u.coeffs[2] = BigInt::from(1);
        assert_eq!(u.to_string(), "-2*[1] + 1*[2]");
        u.coeffs[0] = BigInt::from(3);
        assert_eq!(u.to_string(), "3*[0] - 2*[1] + 1*[2]");
        let e = QuotRingElt::basis(z3, Modulus::new(4).unwrap(), 0);
        assert_eq!(e.to_string(), "1*[0] (mod 4)");
    }

    fn word(text: &str) -> FreeWord {
        parse_word(text, 2).unwrap()
    }

    fn z2_hom(a: usize, b: usize) -> GroupHom {
        GroupHom::new(lookup("Z/2").unwrap(), vec![a, b]).unwrap()
    }

    fn int_elt(terms: &[(i64, &str)]) -> RingElt {
        RingElt::from_terms(2, terms.iter().map(|&(c, w)| (BigInt::from(c), word(w)))).unwrap()
    }

    #[test]
    fn modulus_rules() {
        assert_eq!(Modulus::new(1), Err(Error::UnitModulus));
        assert_eq!(Modulus::new(-1), Err(Error::UnitModulus));
        assert_eq!(Modulus::new(-4).unwrap().get(), 4);
        assert!(Modulus::new(0).unwrap().is_integers());
        assert_eq!(
            Modulus::new(3).unwrap().reduce(&BigInt::from(-1)),
            BigInt::from(2)
        );
    }

    #[test]
    fn hom_apply_examples() {
        let hom = z2_hom(1, 0);
        assert_eq!(hom.apply(&word("x1^2")).unwrap(), 0);
        assert_eq!(hom.apply(&FreeWord::identity(2)).unwrap(), 0);
        let s3 = lookup("S3").unwrap();
        let transposition = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let to_s3 = GroupHom::new(s3, vec![transposition, 0]).unwrap();
        assert_eq!(to_s3.apply(&word("x1^3")).unwrap(), transposition);
        assert!(hom.apply(&parse_word("x1", 3).unwrap()).is_err());
    }

    #[test]
    fn in_kernel_examples() {
        let hom = z2_hom(1, 0);
        assert!(hom.in_kernel(&word("x1^2")).unwrap());
        assert!(!hom.in_kernel(&word("x1")).unwrap());
        assert!(hom.in_kernel(&FreeWord::identity(2)).unwrap());
    }

    #[test]
    fn pi_reduce_examples() {
        let hom = z2_hom(1, 0);
        let r = pi_reduce(&int_elt(&[(1, "x1"), (-1, "e")]), &hom, Modulus::INTEGERS).unwrap();
        assert_eq!(r.coeffs(), [BigInt::from(-1), BigInt::from(1)]);
        let r = pi_reduce(&int_elt(&[(1, "x1^2"), (-1, "e")]), &hom, Modulus::INTEGERS).unwrap();
        assert!(r.is_zero());
        // D_2(x2^2) = e + x2 under x1 -> 0, x2 -> 1, d = 2.
        let hom = z2_hom(0, 1);
        let d2 = fox_derive_word(GenIndex::new(2, 2).unwrap(), &word("x2^2"));
        assert_eq!(d2, int_elt(&[(1, "e"), (1, "x2")]));
        let r = pi_reduce(&d2, &hom, Modulus::new(2).unwrap()).unwrap();
        assert_eq!(r.coeffs(), [BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn criterion_examples() {
        let k1: GenSet = [GenIndex::new(1, 2).unwrap()].into();
        let d2 = Modulus::new(2).unwrap();
        for hom in enumerate_homs(2, &lookup("S3").unwrap()) {
            assert!(criterion_holds(&word("x1"), &k1, &hom, d2).unwrap());
        }
        assert!(!criterion_holds(&word("x2^2"), &k1, &z2_hom(0, 1), d2).unwrap());
        // [x1, x2^2] lies in [N, N] for N = ker(x1 -> 0, x2 -> 1).
        let v = word("[x1, x2^2]");
        for d in [0, 2, 3, 5] {
            for gens in crate::freegroup::all_gen_sets(2) {
                assert!(
                    criterion_holds(&v, &gens, &z2_hom(0, 1), Modulus::new(d).unwrap()).unwrap()
                );
            }
        }
    }

    #[test]
    fn enumerate_counts_and_order() {
        assert_eq!(enumerate_homs(2, &lookup("Z/2").unwrap()).count(), 4);
        assert_eq!(enumerate_homs(2, &lookup("S3").unwrap()).count(), 36);
        assert_eq!(enumerate_homs(1, &lookup("Z/3").unwrap()).count(), 3);
        let z3 = lookup("Z/3").unwrap();
        let images: Vec<Vec<usize>> = enumerate_homs(2, &z3)
            .map(|h| h.images().to_vec())
            .collect();
        assert_eq!(images[0], [0, 0]);
        assert_eq!(images[1], [0, 1]);
        assert_eq!(images[3], [1, 0]);
    }

    #[test]
    fn image_subgroup_and_index() {
        let z4 = lookup("Z/4").unwrap();
        let hom = GroupHom::new(z4.clone(), vec![2, 0]).unwrap();
        assert_eq!(hom.image_subgroup(), [0, 2]);
        assert_eq!(hom.kernel_index(), 2);
        assert!(GroupHom::new(z4, vec![4, 0]).is_err());
    }

    fn arb_elt() -> impl Strategy<Value = RingElt> {
        prop::collection::vec(
            (
                -3i64..=3,
                prop::collection::vec((1usize..=2, -3i64..=3), 0..5),
            ),
            0..4,
        )
        .prop_map(|terms| {
            RingElt::from_terms(
                2,
                terms
                    .into_iter()
                    .map(|(c, p)| (BigInt::from(c), FreeWord::from_pairs(2, &p).unwrap())),
            )
            .unwrap()
        })
    }

    fn arb_hom() -> impl Strategy<Value = GroupHom> {
        (0usize..4, 0usize..64).prop_map(|(gi, code)| {
            let target = lookup(["S3", "Q8", "Z/4", "D4"][gi]).unwrap();
            let n = target.order();
            GroupHom::new(target, vec![code % n, (code / n) % n]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn projection_is_a_ring_map(a in arb_elt(), b in arb_elt(), hom in arb_hom(), d in prop::sample::select(vec![0i64, 2, 3, 4, 6])) {
            let d = Modulus::new(d).unwrap();
            let pa = pi_reduce(&a, &hom, d).unwrap();
            let pb = pi_reduce(&b, &hom, d).unwrap();
            prop_assert_eq!(pi_reduce(&(&a * &b), &hom, d).unwrap(), &pa * &pb);
            prop_assert_eq!(pi_reduce(&(&a + &b), &hom, d).unwrap(), &pa + &pb);
            if !d.is_integers() {
                let scaled = a.scalar_mul(&BigInt::from(d.get()));
                prop_assert!(pi_reduce(&scaled, &hom, d).unwrap().is_zero());
            }
        }

        #[test]
        fn kernel_ideal_is_annihilated(u in arb_elt(), raw in prop::collection::vec((1usize..=2, -3i64..=3), 0..6), hom in arb_hom()) {
            // Push an arbitrary word into the kernel by multiplying with the
            // inverse of a word with the same image.
            let w = FreeWord::from_pairs(2, &raw).unwrap();
            let image = hom.apply(&w).unwrap();
            let fixer = FreeWord::enumerate(2, 6).into_iter().find(|f| hom.apply(f).unwrap() == image).unwrap();
            let n = &w * &fixer.invert();
            prop_assert!(hom.in_kernel(&n).unwrap());
            let n_minus_one = &RingElt::from_word(n) - &RingElt::one(2);
            let product = &u * &n_minus_one;
            prop_assert!(pi_reduce(&product, &hom, Modulus::INTEGERS).unwrap().is_zero());
        }
    }
}
