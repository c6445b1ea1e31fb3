//! Small finite groups given by multiplication tables.
//!
//! Element `0` is always the identity. Tables are validated on construction
//! (identity, Latin square, associativity), so every [`FiniteGroup`] value is
//! a genuine group.
//!
//! Text format, one item per line:
//!
//! ```text
//! order N
//! <N rows of N space-separated element indices>
//! name STRING      (optional)
//! pgroup P         (optional)
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::hash::Hash;
use std::sync::{Arc, LazyLock};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::MalformedTable(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &entry in row {
                if entry >= order {
                    return Err(Error::ElementOutOfRange {
                        index: entry,
                        order,
                    });
                }
            }
            table.extend_from_slice(row);
        }
        let at = |a: usize, b: usize| table[a * order + b];
        if (0..order).any(|a| at(0, a) != a || at(a, 0) != a) {
            return Err(Error::IdentityNotFirst);
        }
        for a in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for b in 0..order {
                if std::mem::replace(&mut row_seen[at(a, b)], true)
                    || std::mem::replace(&mut col_seen[at(b, a)], true)
                {
                    return Err(Error::NotLatinSquare(a));
                }
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverses = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| at(a, b) == 0)
                    .expect("Latin square has an identity in every row")
            })
            .collect();
        Ok(FiniteGroup {
            name: name.into(),
            order,
            table,
            inverses,
        })
    }

    /// The group generated by `gens` under `op`, elements numbered in
    /// breadth-first order from `identity`.
    pub fn generated<T, F>(name: impl Into<String>, identity: T, gens: &[T], op: F) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for g in gens {
                let product = op(&elements[next], g);
                if !index.contains_key(&product) {
                    index.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
            next += 1;
        }
        let rows = elements
            .iter()
            .map(|a| elements.iter().map(|b| index[&op(a, b)]).collect())
            .collect();
        Self::from_table(name, rows)
    }

    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_table(format!("Z/{n}"), rows).expect("cyclic table is a group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, name: impl Into<String>) -> Self {
        let n = a.order * b.order;
        let rows = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        a.mul(x / b.order, y / b.order) * b.order + b.mul(x % b.order, y % b.order)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(name, rows).expect("direct product of groups is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, exp: i64) -> usize {
        let base = if exp < 0 { self.inv(a) } else { a };
        let mut e = exp.unsigned_abs() % self.element_order(a) as u64;
        let (mut acc, mut sq) = (0, base);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The prime `p` when the order is a positive power of `p`.
    pub fn p_group_prime(&self) -> Option<u64> {
        if self.order == 1 {
            return None;
        }
        let n = self.order as u64;
        let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
        is_power_of(n, p).then_some(p)
    }

    /// Whether the order is a power of `p` (the trivial group counts).
    pub fn is_p_group(&self, p: u64) -> bool {
        is_power_of(self.order as u64, p)
    }

    /// The subgroup generated by `gens`, as a sorted list of elements.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    queue.push(b);
                }
            }
            i += 1;
        }
        queue.sort_unstable();
        queue
    }

    pub fn save(&self) -> String {
        let mut out = format!("order {}\n", self.order);
        for row in self.table.chunks(self.order) {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        if !self.name.is_empty() {
            let _ = writeln!(out, "name {}", self.name);
        }
        if let Some(p) = self.p_group_prime() {
            let _ = writeln!(out, "pgroup {p}");
        }
        out
    }

    pub fn load(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedTable("empty input".into()))?;
        let order: usize = header
            .strip_prefix("order")
            .map(str::trim)
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| {
                Error::MalformedTable(format!("expected \"order N\", found {header:?}"))
            })?;
        let mut rows = Vec::with_capacity(order);
        for i in 0..order {
            let line = lines
                .next()
                .ok_or_else(|| Error::MalformedTable(format!("missing row {i}")))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| {
                    Error::MalformedTable(format!("row {i} is not a list of integers: {line:?}"))
                })?;
            rows.push(row);
        }
        let mut name = String::new();
        let mut pgroup = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix("name ") {
                name = rest.trim().to_string();
            } else if let Some(rest) = line.strip_prefix("pgroup ") {
                let p: u64 = rest
                    .trim()
                    .parse()
                    .map_err(|_| Error::MalformedTable(format!("bad pgroup line {line:?}")))?;
                pgroup = Some(p);
            } else {
                return Err(Error::MalformedTable(format!("unexpected line {line:?}")));
            }
        }
        let group = FiniteGroup::from_table(name, rows)?;
        if let Some(p) = pgroup {
            if group.p_group_prime() != Some(p) {
                return Err(Error::MalformedTable(format!(
                    "pgroup {p} does not match order {}",
                    group.order
                )));
            }
        }
        Ok(group)
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if p < 2 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn permutation_group(name: &str, degree: usize, gens: &[&[u8]]) -> FiniteGroup {
    let identity: Vec<u8> = (0..degree as u8).collect();
    let gens: Vec<Vec<u8>> = gens.iter().map(|g| g.to_vec()).collect();
    FiniteGroup::generated(name, identity, &gens, |a, b| {
        a.iter().map(|&i| b[i as usize]).collect()
    })
    .expect("permutation group")
}

fn quaternion_group() -> FiniteGroup {
    // Unit quaternions (a, b, c, d) = a + bi + cj + dk.
    fn hamilton(p: &[i8; 4], q: &[i8; 4]) -> [i8; 4] {
        [
            p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
            p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
            p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
            p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
        ]
    }
    FiniteGroup::generated("Q8", [1, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], hamilton).expect("Q8")
}

fn heisenberg_27() -> FiniteGroup {
    // Upper unitriangular 3x3 matrices over F_3, as (a, b, c).
    FiniteGroup::generated("Heis27", [0u8; 3], &[[1, 0, 0], [0, 1, 0]], |x, y| {
        [
            (x[0] + y[0]) % 3,
            (x[1] + y[1]) % 3,
            (x[2] + y[2] + x[0] * y[1]) % 3,
        ]
    })
    .expect("Heisenberg group")
}

fn build_catalog() -> Vec<Arc<FiniteGroup>> {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let z4 = FiniteGroup::cyclic(4);
    let mut groups = vec![
        FiniteGroup::from_table("trivial", vec![vec![0]]).expect("trivial group"),
        z2.clone(),
        z3.clone(),
        z4.clone(),
        FiniteGroup::direct_product(&z2, &z2, "Z/2xZ/2"),
        FiniteGroup::cyclic(5),
        permutation_group("S3", 3, &[&[1, 0, 2], &[1, 2, 0]]),
        FiniteGroup::cyclic(6),
        FiniteGroup::cyclic(7),
        FiniteGroup::cyclic(8),
        FiniteGroup::direct_product(&z2, &z4, "Z/2xZ/4"),
        permutation_group("D4", 4, &[&[1, 2, 3, 0], &[0, 3, 2, 1]]),
        quaternion_group(),
        FiniteGroup::direct_product(
            &FiniteGroup::direct_product(&z2, &z2, "Z/2xZ/2"),
            &z2,
            "Z/2^3",
        ),
        FiniteGroup::cyclic(9),
        FiniteGroup::direct_product(&z3, &z3, "Z/3xZ/3"),
        permutation_group("D5", 5, &[&[1, 2, 3, 4, 0], &[0, 4, 3, 2, 1]]),
        permutation_group("A4", 4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]]),
        FiniteGroup::cyclic(16),
        permutation_group(
            "D8",
            8,
            &[&[1, 2, 3, 4, 5, 6, 7, 0], &[0, 7, 6, 5, 4, 3, 2, 1]],
        ),
        heisenberg_27(),
        FiniteGroup::cyclic(27),
    ];
    groups.sort_by_key(FiniteGroup::order);
    groups.into_iter().map(Arc::new).collect()
}

static CATALOG: LazyLock<Vec<Arc<FiniteGroup>>> = LazyLock::new(build_catalog);

/// The built-in groups, in ascending order of order.
pub fn builtin_catalog() -> &'static [Arc<FiniteGroup>] {
    &CATALOG
}

/// Catalog groups of order at most `limit`.
pub fn catalog_up_to(limit: usize) -> impl Iterator<Item = &'static Arc<FiniteGroup>> {
    CATALOG.iter().filter(move |g| g.order() <= limit)
}

/// Looks a group up by name. `×` is accepted for `x` and matching ignores
/// case, so `"z/2×z/2"` finds `Z/2xZ/2`.
pub fn lookup(name: &str) -> Result<Arc<FiniteGroup>> {
    let key = normalize(name);
    CATALOG
        .iter()
        .find(|g| normalize(g.name()) == key)
        .cloned()
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

fn normalize(name: &str) -> String {
    name.trim()
        .replace('×', "x")
        .replace('³', "^3")
        .replace(' ', "")
        .to_ascii_lowercase()
}
