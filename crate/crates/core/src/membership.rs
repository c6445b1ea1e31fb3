//! Membership in `P = F_K (F_K ∩ N)^F [N,N] N^d` for `N = ker(hom)` of
//! finite index, and comparison with the Fox-derivative criterion.
//!
//! A word `v` with `phi(v)` in `phi(F_K)` is written `v = w h` with `h` in
//! `F_K` and `w` in `N`. Then `v` lies in `P` exactly when the image of `w`
//! in the free `Z/d`-module `N / [N,N] N^d` lies in the submodule spanned by
//! the images of the conjugates of `F_K ∩ N`.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::FiniteGroup;
use crate::error::{Error, Result};
use crate::finquot::{criterion_holds, enumerate_homs, GroupHom, Modulus};
use crate::freegroup::{format_gen_set, FreeWord, GenSet};
use crate::linalg::{EchelonForm, ModMatrix};
use crate::schreier::SchreierSystem;

/// The data `(v, K, hom, d)` of one membership question.
#[derive(Clone, Debug)]
pub struct MembershipInstance {
    pub word: FreeWord,
    pub gens: GenSet,
    pub hom: GroupHom,
    pub modulus: Modulus,
}

impl MembershipInstance {
    pub fn new(word: FreeWord, gens: GenSet, hom: GroupHom, modulus: Modulus) -> Result<Self> {
        if word.rank() != hom.rank() {
            return Err(Error::RankMismatch {
                left: hom.rank(),
                right: word.rank(),
            });
        }
        if let Some(bad) = gens.iter().find(|g| g.get() > hom.rank()) {
            return Err(Error::GeneratorOutOfRange {
                index: bad.get(),
                rank: hom.rank(),
            });
        }
        Ok(MembershipInstance {
            word,
            gens,
            hom,
            modulus,
        })
    }
}

/// Everything about `P` that does not depend on the word: the Schreier
/// systems of `N` and `F_K ∩ N` and the echelon form of the submodule
/// spanned by `F_K ∩ N` and its conjugates.
#[derive(Clone, Debug)]
pub struct MembershipContext {
    modulus: Modulus,
    kernel: SchreierSystem,
    subgroup: SchreierSystem,
    span: EchelonForm,
}

impl MembershipContext {
    pub fn new(hom: &GroupHom, gens: &GenSet, modulus: Modulus) -> Result<Self> {
        let kernel = SchreierSystem::build(hom);
        let subgroup = SchreierSystem::subgroup(hom, gens);
        let mut matrix = ModMatrix::new(modulus, kernel.free_rank());
        for t in kernel.representatives() {
            let t_inv = t.invert();
            for g in subgroup.free_generators() {
                let conjugate = &(t * g) * &t_inv;
                matrix.push_row(kernel.abelianized_vector(&conjugate, modulus)?);
            }
        }
        Ok(MembershipContext {
            modulus,
            kernel,
            span: matrix.echelon(),
            subgroup,
        })
    }

    pub fn hom(&self) -> &GroupHom {
        self.kernel.hom()
    }

    pub fn gens(&self) -> &GenSet {
        self.subgroup.generators_used()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn kernel_system(&self) -> &SchreierSystem {
        &self.kernel
    }

    pub fn subgroup_system(&self) -> &SchreierSystem {
        &self.subgroup
    }

    /// Echelon form of the submodule `S`.
    pub fn span(&self) -> &EchelonForm {
        &self.span
    }

    /// The shortlex-least word of `F_K` with the same image as `v`, or `None`
    /// when `phi(v)` is outside `phi(F_K)`.
    pub fn subgroup_representative(&self, v: &FreeWord) -> Result<Option<&FreeWord>> {
        let image = self.hom().apply(v)?;
        Ok(self.subgroup.representative(image))
    }

    pub fn contains(&self, v: &FreeWord) -> Result<bool> {
        match self.subgroup_representative(v)? {
            None => Ok(false),
            Some(h) => self.contains_with(v, h),
        }
    }

    /// Decides membership using the given `h` in `F_K` with
    /// `phi(h) = phi(v)` in place of the shortlex-least one.
    pub fn contains_with(&self, v: &FreeWord, h: &FreeWord) -> Result<bool> {
        if !h.in_subgroup(self.gens()) {
            return Err(Error::NotInSubgroup(h.to_string()));
        }
        let w = v * &h.invert();
        let vector = self.kernel.abelianized_vector(&w, self.modulus)?;
        Ok(self.span.contains(&vector))
    }

    /// The Fox-derivative side for the same `(K, hom, d)`.
    pub fn criterion(&self, v: &FreeWord) -> Result<bool> {
        criterion_holds(v, self.gens(), self.hom(), self.modulus)
    }

    pub fn check(&self, v: &FreeWord) -> Result<Verdict> {
        Ok(Verdict::from_sides(self.criterion(v)?, self.contains(v)?))
    }
}

/// Outcome of comparing both sides of the biconditional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    AgreeIn,
    AgreeOut,
    Disagree { criterion: bool, member: bool },
}

impl Verdict {
    fn from_sides(criterion: bool, member: bool) -> Verdict {
        match (criterion, member) {
            (true, true) => Verdict::AgreeIn,
            (false, false) => Verdict::AgreeOut,
            _ => Verdict::Disagree { criterion, member },
        }
    }

    pub fn is_disagreement(self) -> bool {
        matches!(self, Verdict::Disagree { .. })
    }

    pub fn criterion(self) -> bool {
        match self {
            Verdict::AgreeIn => true,
            Verdict::AgreeOut => false,
            Verdict::Disagree { criterion, .. } => criterion,
        }
    }

    pub fn member(self) -> bool {
        match self {
            Verdict::AgreeIn => true,
            Verdict::AgreeOut => false,
            Verdict::Disagree { member, .. } => member,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |b: bool| if b { "IN" } else { "OUT" };
        let verdict = if self.is_disagreement() {
            "DISAGREE"
        } else {
            "AGREE"
        };
        write!(
            f,
            "criterion={} member={} verdict={verdict}",
            side(self.criterion()),
            side(self.member())
        )
    }
}

pub fn member_side(inst: &MembershipInstance) -> Result<bool> {
    MembershipContext::new(&inst.hom, &inst.gens, inst.modulus)?.contains(&inst.word)
}

pub fn criterion_side(inst: &MembershipInstance) -> Result<bool> {
    criterion_holds(&inst.word, &inst.gens, &inst.hom, inst.modulus)
}

pub fn theorem2_check(inst: &MembershipInstance) -> Result<Verdict> {
    MembershipContext::new(&inst.hom, &inst.gens, inst.modulus)?.check(&inst.word)
}

/// The case `K = ∅`, `d = 0`: all derivatives vanish modulo `Z[F](N-1)`
/// exactly when `v` lies in `[N,N]`. Returns whether the two sides agree.
pub fn commutator_corollary_check(v: &FreeWord, hom: &GroupHom) -> Result<bool> {
    hom.require_kernel(v)?;
    let inst = MembershipInstance::new(v.clone(), GenSet::new(), hom.clone(), Modulus::INTEGERS)?;
    Ok(!theorem2_check(&inst)?.is_disagreement())
}

/// Parameters of an exhaustive sweep over homs, subsets `K`, moduli and words.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub rank: usize,
    pub groups: Vec<Arc<FiniteGroup>>,
    pub gen_sets: Vec<GenSet>,
    pub moduli: Vec<Modulus>,
    /// All reduced words up to this length are tested.
    pub max_len: usize,
    /// Extra random words per `(hom, K, d)`, with lengths drawn from
    /// `0..=random_max_len`.
    pub random_words: usize,
    pub random_max_len: usize,
    pub seed: u64,
}

/// Counts for one `(hom, K, d)` configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigOutcome {
    pub hom: GroupHom,
    pub gens: GenSet,
    pub modulus: Modulus,
    pub agree_in: usize,
    pub agree_out: usize,
    pub disagreements: Vec<(FreeWord, Verdict)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub outcomes: Vec<ConfigOutcome>,
}

impl SweepReport {
    pub fn instances(&self) -> usize {
        self.outcomes
            .iter()
            .map(|o| o.agree_in + o.agree_out + o.disagreements.len())
            .sum()
    }

    pub fn agree_in(&self) -> usize {
        self.outcomes.iter().map(|o| o.agree_in).sum()
    }

    pub fn agree_out(&self) -> usize {
        self.outcomes.iter().map(|o| o.agree_out).sum()
    }

    pub fn disagreements(&self) -> usize {
        self.outcomes.iter().map(|o| o.disagreements.len()).sum()
    }

    pub fn summary(&self) -> String {
        format!(
            "configurations={} instances={} agree_in={} agree_out={} disagree={}",
            self.outcomes.len(),
            self.instances(),
            self.agree_in(),
            self.agree_out(),
            self.disagreements()
        )
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(
                f,
                "{} K={} d={} in={} out={} disagree={}",
                o.hom,
                format_gen_set(&o.gens),
                o.modulus,
                o.agree_in,
                o.agree_out,
                o.disagreements.len()
            )?;
            for (w, v) in &o.disagreements {
                writeln!(f, "  {w}: {v}")?;
            }
        }
        writeln!(f, "{}", self.summary())
    }
}

/// Runs `theorem2_check` on every configured instance. Configurations are
/// processed in parallel and reported in the fixed order group, hom, `K`,
/// `d`; random words are seeded per configuration, so the report does not
/// depend on scheduling.
pub fn theorem2_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let words = FreeWord::enumerate(config.rank, config.max_len);
    let mut jobs = Vec::new();
    for group in &config.groups {
        for hom in enumerate_homs(config.rank, group) {
            for gens in &config.gen_sets {
                for &d in &config.moduli {
                    jobs.push((hom.clone(), gens.clone(), d));
                }
            }
        }
    }
    let outcomes = jobs
        .into_par_iter()
        .enumerate()
        .map(|(index, (hom, gens, d))| {
            let ctx = MembershipContext::new(&hom, &gens, d)?;
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(index as u64);
            let random: Vec<FreeWord> = (0..config.random_words)
                .map(|_| {
                    let len = rng.gen_range(0..=config.random_max_len);
                    FreeWord::random(&mut rng, config.rank, len)
                })
                .collect();
            let mut outcome = ConfigOutcome {
                hom,
                gens,
                modulus: d,
                agree_in: 0,
                agree_out: 0,
                disagreements: Vec::new(),
            };
            for w in words.iter().chain(&random) {
                match ctx.check(w)? {
                    Verdict::AgreeIn => outcome.agree_in += 1,
                    Verdict::AgreeOut => outcome.agree_out += 1,
                    v => outcome.disagreements.push((w.clone(), v)),
                }
            }
            Ok(outcome)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport { outcomes })
}
