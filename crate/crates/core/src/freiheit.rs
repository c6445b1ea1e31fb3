//! Certificates for whether `D_n(r)` vanishes modulo `Z[F](R-1)`, where `R`
//! is the normal closure of a single relator `r`.
//!
//! If the cyclic core of `r` omits `x_n`, an exact ring identity shows that
//! `D_n(r)` lies in `Z[F](R-1)`. Otherwise the tool looks for a finite
//! quotient `psi` killing `r` in which `D_n(r)` projects to a nonzero element
//! of `Z[G]`; since `Z[F](R-1)` maps to zero there, that proves `D_n(r)` is
//! not in `Z[F](R-1)`. The search is bounded by the catalog, so it can end
//! without an answer.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::catalog::{catalog_up_to, FiniteGroup};
use crate::error::{Error, Result};
use crate::finquot::{enumerate_homs, pi_reduce, GroupHom, Modulus, QuotRingElt};
use crate::fox::fox_derive_word;
use crate::freegroup::{FreeWord, GenIndex};
use crate::groupring::RingElt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `r = conjugator * core * conjugator^-1` with `core` free of `x_n`, so
    /// `D_n(r) = D_n(conjugator) (core - 1) conjugator^-1`.
    ZeroIdentity {
        conjugator: FreeWord,
        core: FreeWord,
    },
    /// `hom` kills `r` and `D_n(r)` projects to the nonzero `residue` in `Z[G]`.
    NonzeroWitness { hom: GroupHom, residue: QuotRingElt },
    /// No witness among the catalog groups searched.
    Unknown,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::ZeroIdentity { .. } => "ZeroIdentity",
            Certificate::NonzeroWitness { .. } => "NonzeroWitness",
            Certificate::Unknown => "Unknown",
        }
    }

    /// Rechecks the certificate from scratch against `r` and `n`. `Unknown`
    /// certifies nothing and never verifies.
    pub fn verify(&self, r: &FreeWord, n: GenIndex) -> Result<bool> {
        GenIndex::new(n.get(), r.rank())?;
        match self {
            Certificate::ZeroIdentity { conjugator, core } => {
                if core.occurs(n) || &(&(conjugator * core) * &conjugator.invert()) != r {
                    return Ok(false);
                }
                let rank = r.rank();
                let core_minus_one = &RingElt::from_word(core.clone()) - &RingElt::one(rank);
                let rhs = (&fox_derive_word(n, conjugator) * &core_minus_one)
                    .mul_word(&conjugator.invert());
                Ok((&fox_derive_word(n, r) - &rhs).is_zero())
            }
            Certificate::NonzeroWitness { hom, residue } => {
                if !hom.in_kernel(r)? {
                    return Ok(false);
                }
                let projected = pi_reduce(&fox_derive_word(n, r), hom, Modulus::INTEGERS)?;
                Ok(!projected.is_zero() && &projected == residue)
            }
            Certificate::Unknown => Ok(false),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::ZeroIdentity { conjugator, core } => {
                write!(f, "ZeroIdentity conjugator={conjugator} core={core}")
            }
            Certificate::NonzeroWitness { hom, residue } => {
                write!(f, "NonzeroWitness hom={hom} residue={residue}")
            }
            Certificate::Unknown => write!(f, "Unknown"),
        }
    }
}

fn require_relator(r: &FreeWord, n: GenIndex) -> Result<()> {
    GenIndex::new(n.get(), r.rank())?;
    if r.is_identity() {
        return Err(Error::IdentityRelator);
    }
    Ok(())
}

/// Whether the cyclically reduced form of `r` contains `x_n`.
pub fn magnus_syntactic(r: &FreeWord, n: GenIndex) -> Result<bool> {
    require_relator(r, n)?;
    Ok(r.cyclic_reduce().1.occurs(n))
}

/// The first hom into `group`, in lexicographic order of images, that kills
/// `r` and leaves `D_n(r)` nonzero in `Z[group]`.
fn witness_in(
    group: &std::sync::Arc<FiniteGroup>,
    r: &FreeWord,
    derivative: &RingElt,
) -> Option<Certificate> {
    enumerate_homs(r.rank(), group).find_map(|hom| {
        if hom.apply_unchecked(r) != 0 {
            return None;
        }
        let residue = pi_reduce(derivative, &hom, Modulus::INTEGERS).expect("ranks agree");
        (!residue.is_zero()).then_some(Certificate::NonzeroWitness { hom, residue })
    })
}

/// Classifies `r`. Witnesses are searched over catalog groups of order at
/// most `catalog_limit`, by ascending order and then lexicographically by
/// images; the first one in that order is returned.
pub fn certify(r: &FreeWord, n: GenIndex, catalog_limit: usize) -> Result<Certificate> {
    require_relator(r, n)?;
    let (conjugator, core) = r.cyclic_reduce();
    let certificate = if !core.occurs(n) {
        Certificate::ZeroIdentity { conjugator, core }
    } else {
        let derivative = fox_derive_word(n, r);
        let groups: Vec<_> = catalog_up_to(catalog_limit).collect();
        groups
            .par_iter()
            .find_map_first(|group| witness_in(group, r, &derivative))
            .unwrap_or(Certificate::Unknown)
    };
    if certificate != Certificate::Unknown && !certificate.verify(r, n)? {
        return Err(Error::Internal(format!(
            "certificate for {r} does not verify: {certificate}"
        )));
    }
    Ok(certificate)
}

/// `x1^p [x2, x1^p]` in the free group of rank 2.
pub fn gildenhuys_relator(p: u64) -> FreeWord {
    let a = FreeWord::from_pairs(2, &[(1, p as i64)]).expect("rank 2");
    let x2 = FreeWord::from_pairs(2, &[(2, 1)]).expect("rank 2");
    &a * &x2.commutator(&a).expect("same rank")
}

/// `-x2^-1 x1^-p x2 x1^p + x1^p`, the expected `D_2` of the relator above.
pub fn gildenhuys_expected_derivative(p: u64) -> RingElt {
    let p = p as i64;
    let long = FreeWord::from_pairs(2, &[(2, -1), (1, -p), (2, 1), (1, p)]).expect("rank 2");
    let short = FreeWord::from_pairs(2, &[(1, p)]).expect("rank 2");
    RingElt::from_terms(2, [(BigInt::from(-1), long), (BigInt::from(1), short)]).expect("rank 2")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GildenhuysReport {
    pub p: u64,
    pub catalog_limit: usize,
    pub derivative: RingElt,
    pub derivative_matches: bool,
    pub groups: Vec<String>,
    pub homs_examined: usize,
    pub homs_killing_relator: usize,
    /// Homs killing `r` for which `x1^p` survives or `D_2(r)` does not vanish.
    pub exceptions: Vec<GroupHom>,
    /// Homs killing `r` with `x1` not in the kernel.
    pub x1_survivors: Vec<GroupHom>,
}

impl GildenhuysReport {
    /// The exact derivative formula and the finite-level vanishing claims.
    pub fn assertions_hold(&self) -> bool {
        self.derivative_matches && self.exceptions.is_empty()
    }
}

impl fmt::Display for GildenhuysReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relator r = {}", gildenhuys_relator(self.p))?;
        writeln!(f, "D_2(r) = {}", self.derivative)?;
        writeln!(
            f,
            "derivative formula: {}",
            if self.derivative_matches {
                "ok"
            } else {
                "MISMATCH"
            }
        )?;
        writeln!(
            f,
            "{}-groups of order <= {}: {}",
            self.p,
            self.catalog_limit,
            self.groups.join(", ")
        )?;
        writeln!(
            f,
            "homs examined={} killing r={} exceptions={}",
            self.homs_examined,
            self.homs_killing_relator,
            self.exceptions.len()
        )?;
        for hom in &self.exceptions {
            writeln!(f, "  exception {hom}")?;
        }
        match self.x1_survivors.first() {
            Some(hom) => writeln!(
                f,
                "x1 survives in {} homs killing r, first {hom}",
                self.x1_survivors.len()
            ),
            None => writeln!(f, "x1 dies in every hom killing r"),
        }
    }
}

/// Checks the relator `x1^p [x2, x1^p]` against every hom into a catalog
/// `p`-group (the trivial group included) of order at most `catalog_limit`.
pub fn gildenhuys_check(p: u64, catalog_limit: usize) -> Result<GildenhuysReport> {
    if p != 2 && p != 3 {
        return Err(Error::UnsupportedPrime(p));
    }
    let r = gildenhuys_relator(p);
    let x1 = FreeWord::from_pairs(2, &[(1, 1)])?;
    let x1p = x1.power(p as i64);
    let n = GenIndex::new(2, 2)?;
    let derivative = fox_derive_word(n, &r);
    let mut report = GildenhuysReport {
        p,
        catalog_limit,
        derivative_matches: derivative == gildenhuys_expected_derivative(p),
        derivative,
        groups: Vec::new(),
        homs_examined: 0,
        homs_killing_relator: 0,
        exceptions: Vec::new(),
        x1_survivors: Vec::new(),
    };
    for group in catalog_up_to(catalog_limit).filter(|g| g.order() == 1 || g.is_p_group(p)) {
        report.groups.push(group.name().to_string());
        for hom in enumerate_homs(2, group) {
            report.homs_examined += 1;
            if !hom.in_kernel(&r)? {
                continue;
            }
            report.homs_killing_relator += 1;
            let vanishes = pi_reduce(&report.derivative, &hom, Modulus::INTEGERS)?.is_zero();
            if !hom.in_kernel(&x1p)? || !vanishes {
                report.exceptions.push(hom.clone());
            }
            if !hom.in_kernel(&x1)? {
                report.x1_survivors.push(hom);
            }
        }
    }
    Ok(report)
}

/// One relator's outcome in [`freiheitssatz_equiv_sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorOutcome {
    pub relator: FreeWord,
    pub syntactic: bool,
    pub certificate: Certificate,
}

impl RelatorOutcome {
    /// Whether the certificate kind is the one the syntactic test predicts.
    pub fn consistent(&self) -> bool {
        matches!(
            (self.syntactic, &self.certificate),
            (
                true,
                Certificate::NonzeroWitness { .. } | Certificate::Unknown
            ) | (false, Certificate::ZeroIdentity { .. })
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreiheitReport {
    pub rank: usize,
    pub max_len: usize,
    pub catalog_limit: usize,
    pub outcomes: Vec<RelatorOutcome>,
}

impl FreiheitReport {
    fn count(&self, pred: impl Fn(&RelatorOutcome) -> bool) -> usize {
        self.outcomes.iter().filter(|o| pred(o)).count()
    }

    pub fn zero_identities(&self) -> usize {
        self.count(|o| matches!(o.certificate, Certificate::ZeroIdentity { .. }))
    }

    pub fn witnesses(&self) -> usize {
        self.count(|o| matches!(o.certificate, Certificate::NonzeroWitness { .. }))
    }

    pub fn unknowns(&self) -> usize {
        self.count(|o| o.certificate == Certificate::Unknown)
    }

    pub fn inconsistencies(&self) -> usize {
        self.count(|o| !o.consistent())
    }

    pub fn summary(&self) -> String {
        format!(
            "relators={} zero_identity={} nonzero_witness={} unknown={} inconsistent={}",
            self.outcomes.len(),
            self.zero_identities(),
            self.witnesses(),
            self.unknowns(),
            self.inconsistencies()
        )
    }
}

impl fmt::Display for FreiheitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "rank={} n={} max_len={} catalog_limit={}",
            self.rank, self.rank, self.max_len, self.catalog_limit
        )?;
        for o in &self.outcomes {
            writeln!(f, "{}: {}", o.relator, o.certificate)?;
        }
        writeln!(f, "{}", self.summary())
    }
}

/// Certifies every cyclically reduced relator of length at most `max_len`
/// with respect to the last generator `x_rank`.
pub fn freiheitssatz_equiv_sweep(
    rank: usize,
    max_len: usize,
    catalog_limit: usize,
) -> Result<FreiheitReport> {
    if rank < 2 {
        return Err(Error::RankMismatch {
            left: 2,
            right: rank,
        });
    }
    let n = GenIndex::new(rank, rank)?;
    let relators: Vec<FreeWord> = FreeWord::enumerate(rank, max_len)
        .into_iter()
        .filter(|w| !w.is_identity() && w.is_cyclically_reduced())
        .collect();
    let outcomes = relators
        .into_par_iter()
        .map(|relator| {
            Ok(RelatorOutcome {
                syntactic: magnus_syntactic(&relator, n)?,
                certificate: certify(&relator, n, catalog_limit)?,
                relator,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FreiheitReport {
        rank,
        max_len,
        catalog_limit,
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::freegroup::parse_word;

    fn word(text: &str) -> FreeWord {
        parse_word(text, 2).unwrap()
    }

    fn g(k: usize) -> GenIndex {
        GenIndex::new(k, 2).unwrap()
    }

    #[test]
    fn syntactic_examples() {
        assert!(magnus_syntactic(&word("x1*x2*x1^-1"), g(2)).unwrap());
        assert!(!magnus_syntactic(&word("x1*x2*x1^-1"), g(1)).unwrap());
        assert!(magnus_syntactic(&gildenhuys_relator(3), g(2)).unwrap());
        assert_eq!(
            magnus_syntactic(&FreeWord::identity(2), g(1)),
            Err(Error::IdentityRelator)
        );
    }

    #[test]
    fn zero_identity_example() {
        let r = word("x1*x2*x1^-1");
        let cert = certify(&r, g(1), 16).unwrap();
        assert_eq!(
            cert,
            Certificate::ZeroIdentity {
                conjugator: word("x1"),
                core: word("x2")
            }
        );
        assert!(cert.verify(&r, g(1)).unwrap());
        // D_1(r) = x2 x1^-1 - x1^-1 = (x2 - 1) x1^-1
        let expected = &RingElt::from_word(word("x2*x1^-1")) - &RingElt::from_word(word("x1^-1"));
        assert_eq!(fox_derive_word(g(1), &r), expected);
        let absent = word("x1^3");
        assert_eq!(
            certify(&absent, g(2), 16).unwrap(),
            Certificate::ZeroIdentity {
                conjugator: FreeWord::identity(2),
                core: absent.clone()
            }
        );
    }

    #[test]
    fn witness_examples() {
        let r = word("x2");
        let cert = certify(&r, g(2), 16).unwrap();
        assert!(
            matches!(&cert, Certificate::NonzeroWitness { hom, .. } if hom.target().order() == 1)
        );
        assert!(cert.verify(&r, g(2)).unwrap());
        let z2 = GroupHom::new(lookup("Z/2").unwrap(), vec![1, 0]).unwrap();
        let residue = pi_reduce(&RingElt::one(2), &z2, Modulus::INTEGERS).unwrap();
        let manual = Certificate::NonzeroWitness { hom: z2, residue };
        assert!(manual.verify(&r, g(2)).unwrap());

        let r = word("x1^2*x2^2");
        let cert = certify(&r, g(2), 16).unwrap();
        assert!(cert.verify(&r, g(2)).unwrap());
    }

    #[test]
    fn forged_certificates_fail() {
        let r = word("x1*x2*x1^-1");
        let wrong_core = Certificate::ZeroIdentity {
            conjugator: FreeWord::identity(2),
            core: r.clone(),
        };
        assert!(!wrong_core.verify(&r, g(2)).unwrap());
        let not_killing = GroupHom::new(lookup("Z/2").unwrap(), vec![0, 1]).unwrap();
        let residue =
            pi_reduce(&fox_derive_word(g(2), &r), &not_killing, Modulus::INTEGERS).unwrap();
        let cert = Certificate::NonzeroWitness {
            hom: not_killing,
            residue,
        };
        assert!(!cert.verify(&r, g(2)).unwrap());
        assert!(!Certificate::Unknown.verify(&r, g(2)).unwrap());
    }

    #[test]
    fn commutator_needs_a_nontrivial_quotient() {
        let r = word("[x1,x2]");
        let Certificate::NonzeroWitness { hom, .. } = certify(&r, g(2), 16).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(hom.to_string(), "Z/2[1,0]");
    }

    #[test]
    fn gildenhuys_examples() {
        assert_eq!(
            fox_derive_word(g(2), &gildenhuys_relator(2)),
            gildenhuys_expected_derivative(2)
        );
        let z4 = GroupHom::new(lookup("Z/4").unwrap(), vec![1, 0]).unwrap();
        assert!(!z4.in_kernel(&gildenhuys_relator(2)).unwrap());
        let report = gildenhuys_check(2, 8).unwrap();
        assert!(report.assertions_hold(), "{report}");
        assert!(!report.x1_survivors.is_empty());
        assert_eq!(
            gildenhuys_check(5, 8).unwrap_err(),
            Error::UnsupportedPrime(5)
        );
    }

    #[test]
    fn small_sweep() {
        let report = freiheitssatz_equiv_sweep(2, 3, 16).unwrap();
        assert_eq!(report.unknowns(), 0, "{report}");
        assert_eq!(report.inconsistencies(), 0);
        assert_eq!(report.zero_identities(), 6);
        assert_eq!(
            report.to_string(),
            freiheitssatz_equiv_sweep(2, 3, 16).unwrap().to_string()
        );
    }
}
