//! Row spaces over `Z/d` and `Z`.
//!
//! [`ModMatrix::echelon`] returns the Howell form when `d > 0` and the
//! Hermite normal form when `d = 0`. Both are canonical for the row space
//! (pivots are normalized and entries above a pivot are reduced into
//! `[0, pivot)`), and both support a membership test by straightforward
//! reduction. Plain Gaussian elimination is not enough for composite `d`:
//! a row like `(2, 1)` over `Z/4` also spans `(0, 2)`, which has no pivot in
//! the first column. The Howell form records such rows explicitly.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::finquot::Modulus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    modulus: Modulus,
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
}

impl ModMatrix {
    pub fn new(modulus: Modulus, ncols: usize) -> Self {
        ModMatrix {
            modulus,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(modulus: Modulus, ncols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let mut m = Self::new(modulus, ncols);
        for row in rows {
            m.push_row(row);
        }
        m
    }

    /// Panics if the row length differs from `ncols`.
    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.ncols, "row length");
        let row: Vec<BigInt> = row.iter().map(|x| self.modulus.reduce(x)).collect();
        self.rows.push(row);
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn echelon(&self) -> EchelonForm {
        let d = self.modulus;
        let modulus = BigInt::from(d.get());
        let mut a: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.ncols {
            if r >= a.len() {
                break;
            }
            for i in r + 1..a.len() {
                if a[i][j].is_zero() {
                    continue;
                }
                if a[r][j].is_zero() {
                    a.swap(r, i);
                    continue;
                }
                // Unimodular 2x2 step: row r gets gcd, row i gets 0 in column j.
                let ext = a[r][j].extended_gcd(&a[i][j]);
                let (s, t) = (ext.x, ext.y);
                let u = -(&a[i][j] / &ext.gcd);
                let v = &a[r][j] / &ext.gcd;
                let (top, bottom) = (&a[r], &a[i]);
                let new_top: Vec<BigInt> = top
                    .iter()
                    .zip(bottom)
                    .map(|(x, y)| d.reduce(&(&s * x + &t * y)))
                    .collect();
                let new_bottom: Vec<BigInt> = top
                    .iter()
                    .zip(bottom)
                    .map(|(x, y)| d.reduce(&(&u * x + &v * y)))
                    .collect();
                a[r] = new_top;
                a[i] = new_bottom;
            }
            if a[r][j].is_zero() {
                continue;
            }
            if d.is_integers() {
                if a[r][j].is_negative() {
                    for x in &mut a[r] {
                        *x = -&*x;
                    }
                }
            } else {
                let unit = normalizing_unit(&a[r][j], &modulus);
                for x in &mut a[r] {
                    *x = d.reduce(&(&unit * &*x));
                }
            }
            let pivot = a[r][j].clone();
            for i in 0..r {
                let q = a[i][j].div_floor(&pivot);
                if q.is_zero() {
                    continue;
                }
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = d.reduce(&(&*x - &q * y));
                }
            }
            if !d.is_integers() {
                // The annihilator multiple of the pivot row vanishes in column
                // j but may carry information for later columns.
                let ann = &modulus / &pivot;
                let extra: Vec<BigInt> = a[r].iter().map(|x| d.reduce(&(&ann * x))).collect();
                if extra.iter().any(|x| !x.is_zero()) {
                    a.push(extra);
                }
            }
            pivots.push(j);
            r += 1;
        }
        a.truncate(r);
        debug_assert_eq!(a.len(), pivots.len());
        EchelonForm {
            modulus: d,
            ncols: self.ncols,
            rows: a,
            pivots,
        }
    }
}

/// A unit `u` mod `n` with `u * a = gcd(a, n) (mod n)`.
fn normalizing_unit(a: &BigInt, n: &BigInt) -> BigInt {
    let g = a.gcd(n);
    let a1 = a / &g;
    let n1 = n / &g;
    let base = if n1.is_one() {
        BigInt::zero()
    } else {
        a1.extended_gcd(&n1).x.mod_floor(&n1)
    };
    // Some lift base + k*n1 is coprime to n.
    let mut u = base;
    while !u.gcd(n).is_one() {
        u += &n1;
    }
    u
}

/// Canonical echelon form of a row space, see [`ModMatrix::echelon`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonForm {
    modulus: Modulus,
    ncols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl EchelonForm {
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length");
        let d = self.modulus;
        let mut v: Vec<BigInt> = v.iter().map(|x| d.reduce(x)).collect();
        for (row, &j) in self.rows.iter().zip(&self.pivots) {
            if v[..j].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, rem) = v[j].div_mod_floor(&row[j]);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = d.reduce(&(&*x - &q * y));
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for EchelonForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{BTreeSet, VecDeque};

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn matrix(d: i64, rows: &[&[i64]]) -> ModMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        ModMatrix::from_rows(
            Modulus::new(d).unwrap(),
            ncols,
            rows.iter().map(|r| big(r)).collect(),
        )
    }

    /// Breadth-first closure of the row span inside `(Z/d)^n`.
    fn brute_span(d: i64, ncols: usize, rows: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        let zero = vec![0; ncols];
        let mut seen = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(v) = queue.pop_front() {
            for r in rows {
                let w: Vec<i64> = v
                    .iter()
                    .zip(r)
                    .map(|(a, b)| (a + b).rem_euclid(d))
                    .collect();
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn all_vectors(d: i64, ncols: usize) -> Vec<Vec<i64>> {
        (0..d.pow(ncols as u32))
            .map(|mut code| {
                (0..ncols)
                    .map(|_| {
                        let x = code % d;
                        code /= d;
                        x
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn composite_modulus_needs_howell_rows() {
        let h = matrix(4, &[&[2, 1]]).echelon();
        assert_eq!(h.rows(), [big(&[2, 1]), big(&[0, 2])]);
        assert!(h.contains(&big(&[0, 2])));
        assert!(!h.contains(&big(&[0, 1])));
        assert!(!h.contains(&big(&[1, 0])));
    }

    #[test]
    fn worked_span() {
        let h = matrix(2, &[&[1, 0, 0], &[0, 0, 1]]).echelon();
        assert!(!h.contains(&big(&[0, 1, 0])));
        assert!(h.contains(&big(&[1, 0, 1])));
    }

    #[test]
    fn hermite_over_integers() {
        let h = matrix(0, &[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).echelon();
        assert_eq!(
            h.rows(),
            [big(&[2, 4, 4]), big(&[0, 6, 0]), big(&[0, 0, 12])]
        );
        assert!(h.contains(&big(&[2, 10, 16])));
        assert!(!h.contains(&big(&[1, 0, 0])));
        assert!(!h.contains(&big(&[0, 0, 6])));
    }

    #[test]
    fn empty_and_zero_rows() {
        let h = ModMatrix::new(Modulus::new(6).unwrap(), 3).echelon();
        assert!(h.contains(&big(&[0, 6, -12])));
        assert!(!h.contains(&big(&[0, 1, 0])));
        let h = matrix(5, &[&[0, 0], &[5, 10]]).echelon();
        assert!(h.rows().is_empty());
    }

    #[test]
    fn unit_normalization() {
        let n = BigInt::from(12);
        for a in 1..12 {
            let a = BigInt::from(a);
            let u = normalizing_unit(&a, &n);
            assert!(u.gcd(&n).is_one());
            assert_eq!((&u * &a).mod_floor(&n), a.gcd(&n));
        }
    }

    fn arb_system() -> impl Strategy<Value = (i64, usize, Vec<Vec<i64>>)> {
        (
            prop::sample::select(vec![2i64, 3, 4, 6, 8, 9, 12]),
            1usize..4,
        )
            .prop_flat_map(|(d, n)| {
                let cap = if d.pow(n as u32) > 800 { 2 } else { n };
                (
                    Just(d),
                    Just(cap),
                    prop::collection::vec(prop::collection::vec(-20i64..20, cap), 0..5),
                )
            })
    }

    proptest! {
        #[test]
        fn membership_matches_brute_force((d, n, rows) in arb_system()) {
            let h = ModMatrix::from_rows(Modulus::new(d).unwrap(), n, rows.iter().map(|r| big(r)).collect()).echelon();
            let span = brute_span(d, n, &rows);
            for v in all_vectors(d, n) {
                prop_assert_eq!(h.contains(&big(&v)), span.contains(&v), "v = {:?}", v);
            }
        }

        #[test]
        fn form_is_canonical((d, n, rows) in arb_system(), seed in any::<u64>()) {
            let m = Modulus::new(d).unwrap();
            let h = ModMatrix::from_rows(m, n, rows.iter().map(|r| big(r)).collect()).echelon();
            let mut shuffled = rows.clone();
            if !shuffled.is_empty() {
                let shift = (seed as usize) % shuffled.len();
                shuffled.rotate_left(shift);
                // Adding one row to another keeps the row space.
                let last = shuffled.len() - 1;
                let extra = shuffled[0].clone();
                for (x, y) in shuffled[last].iter_mut().zip(&extra) {
                    *x += y * ((seed % 5) as i64);
                }
            }
            let h2 = ModMatrix::from_rows(m, n, shuffled.iter().map(|r| big(r)).collect()).echelon();
            if rows.len() > 1 || seed % 5 == 0 {
                prop_assert_eq!(h, h2);
            }
        }

        #[test]
        fn integer_combinations_are_members(rows in prop::collection::vec(prop::collection::vec(-9i64..9, 3), 1..5),
                                            coeffs in prop::collection::vec(-5i64..5, 5)) {
            let h = ModMatrix::from_rows(Modulus::INTEGERS, 3, rows.iter().map(|r| big(r)).collect()).echelon();
            let mut v = vec![0i64; 3];
            for (r, c) in rows.iter().zip(&coeffs) {
                for (x, y) in v.iter_mut().zip(r) {
                    *x += c * y;
                }
            }
            prop_assert!(h.contains(&big(&v)));
            let mut shuffled = rows.clone();
            shuffled.reverse();
            let h2 = ModMatrix::from_rows(Modulus::INTEGERS, 3, shuffled.iter().map(|r| big(r)).collect()).echelon();
            prop_assert_eq!(h, h2);
        }

        #[test]
        fn integer_non_members_fail_modulo_some_m(rows in prop::collection::vec(prop::collection::vec(-4i64..4, 2), 1..3),
                                                   v in prop::collection::vec(-6i64..6, 2)) {
            let h = ModMatrix::from_rows(Modulus::INTEGERS, 2, rows.iter().map(|r| big(r)).collect()).echelon();
            // Membership over Z implies membership modulo every m; with entries
            // this small the converse is witnessed by some m <= 64.
            let mod_m = |m: i64| {
                let reduced: Vec<i64> = v.iter().map(|x| x.rem_euclid(m)).collect();
                brute_span(m, 2, &rows).contains(&reduced)
            };
            let all_m = (2..=64).all(mod_m);
            prop_assert_eq!(h.contains(&big(&v)), all_m);
        }
    }
}
