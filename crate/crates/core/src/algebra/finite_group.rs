use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A finite group given by its multiplication table. Elements are dense
/// indices `0..order`; index 0 is always the unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

/// One violated group axiom, with the offending indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GroupViolation {
    Shape { row: usize },
    OutOfRange { i: usize, j: usize },
    UnitLaw { element: usize },
    Associativity { i: usize, j: usize, k: usize },
    Inverse { element: usize },
}

impl FiniteGroup {
    /// Wraps a table without checking the group axioms; see [`verify_finite_group`].
    /// Inverses are taken as the first right inverse found (or 0 if none).
    pub fn from_table_unchecked(table: Vec<Vec<usize>>) -> Self {
        let inverse = table
            .iter()
            .map(|row| row.iter().position(|&x| x == 0).unwrap_or(0))
            .collect();
        FiniteGroup { table, inverse }
    }

    /// Builds a group from a table, rejecting anything that fails [`verify_finite_group`].
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        if table.is_empty() {
            return Err(AlgebraError::EmptyGroup);
        }
        let g = Self::from_table_unchecked(table);
        let report = verify_finite_group(&g);
        if report.is_empty() {
            Ok(g)
        } else {
            Err(AlgebraError::NotAGroup(report))
        }
    }

    pub fn cyclic(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::EmptyGroup);
        }
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Ok(Self::from_table_unchecked(table))
    }

    pub fn trivial() -> Self {
        Self::from_table_unchecked(vec![vec![0]])
    }

    /// Symmetric group on `n` letters (n ≤ 5), elements in lexicographic
    /// permutation order so the identity is index 0. Product is composition
    /// `(p·q)(x) = p(q(x))`.
    pub fn symmetric(n: usize) -> Result<Self, AlgebraError> {
        if n == 0 || n > 5 {
            return Err(AlgebraError::TooLarge(format!("symmetric group on {n} letters")));
        }
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        let index: BTreeMap<Vec<usize>, usize> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index[&q.iter().map(|&x| p[x]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        Ok(Self::from_table_unchecked(table))
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table_unchecked(table)
    }

    /// Relabels elements by `perm` (old index `i` becomes `perm[i]`); `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, AlgebraError> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.first() != Some(&0) {
            return Err(AlgebraError::InvalidPermutation);
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(AlgebraError::InvalidPermutation);
            }
            seen[p] = true;
        }
        let mut table = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                table[perm[i]][perm[j]] = perm[self.table[i][j]];
            }
        }
        Ok(Self::from_table_unchecked(table))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn unit(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
            if k > self.order() {
                break;
            }
        }
        k
    }

    /// Whether `map` (indexed by element of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        map.len() == self.order()
            && map.iter().all(|&x| x < target.order())
            && (0..self.order()).all(|i| {
                (0..self.order())
                    .all(|j| map[self.mul(i, j)] == target.mul(map[i], map[j]))
            })
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_statistics(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Invariant factors of an abelian group, read off from element-order
    /// statistics (`None` for non-abelian groups).
    pub fn abelian_invariants(&self) -> Option<Vec<u64>> {
        if !self.is_abelian() {
            return None;
        }
        let n = self.order() as u64;
        let orders: Vec<u64> = (0..self.order()).map(|a| self.element_order(a) as u64).collect();
        // For each prime p | n: c_k = #{x : x^{p^k} = 1} = p^{sum_i min(e_i, k)}.
        let mut primary: Vec<(u64, Vec<u32>)> = Vec::new();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m.is_multiple_of(p) {
                let mut e = 0;
                while m.is_multiple_of(p) {
                    m /= p;
                    e += 1;
                }
                let mut exponents = Vec::new();
                let mut prev_log = 0u32;
                for k in 1..=e {
                    let pk = p.pow(k);
                    let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                    let log = ilog(count, p);
                    // log - prev_log = number of cyclic p-factors of exponent >= k
                    let parts = log - prev_log;
                    exponents.push(parts);
                    prev_log = log;
                }
                // exponents[k-1] = #factors with exponent >= k; convert to factor list
                let mut factors = Vec::new();
                for k in 1..=e as usize {
                    let ge_k = exponents[k - 1];
                    let ge_next = exponents.get(k).copied().unwrap_or(0);
                    for _ in 0..(ge_k - ge_next) {
                        factors.push(k as u32);
                    }
                }
                primary.push((p, factors));
            }
            p += 1;
        }
        // Combine primary parts into invariant factors, largest last.
        let len = primary.iter().map(|(_, f)| f.len()).max().unwrap_or(0);
        let mut invariants = vec![1u64; len];
        for (p, mut factors) in primary {
            factors.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, e) in factors.into_iter().enumerate() {
                invariants[len - 1 - slot] *= p.pow(e);
            }
        }
        Some(invariants)
    }
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Lists every violated group axiom; empty iff the table is a group with unit 0.
pub fn verify_finite_group(g: &FiniteGroup) -> Vec<GroupViolation> {
    let n = g.table.len();
    let mut out = Vec::new();
    for (row, r) in g.table.iter().enumerate() {
        if r.len() != n {
            out.push(GroupViolation::Shape { row });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        for j in 0..n {
            if g.table[i][j] >= n {
                out.push(GroupViolation::OutOfRange { i, j });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        if g.table[0][i] != i || g.table[i][0] != i {
            out.push(GroupViolation::UnitLaw { element: i });
        }
    }
    for i in 0..n {
        for j in 0..n {
            let ij = g.table[i][j];
            for k in 0..n {
                if g.table[ij][k] != g.table[i][g.table[j][k]] {
                    out.push(GroupViolation::Associativity { i, j, k });
                }
            }
        }
    }
    for i in 0..n {
        let v = g.inverse[i];
        if v >= n || g.table[i][v] != 0 || g.table[v][i] != 0 {
            out.push(GroupViolation::Inverse { element: i });
        }
    }
    out
}

/// JSON form: `{"type":"finite","order":n,"table":[[...]]}` or `{"type":"cyclic","n":k}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FiniteGroupSpec {
    Finite { order: usize, table: Vec<Vec<usize>> },
    Cyclic { n: usize },
    Symmetric { n: usize },
}

impl FiniteGroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, AlgebraError> {
        match self {
            FiniteGroupSpec::Finite { order, table } => {
                if table.len() != *order {
                    return Err(AlgebraError::Shape(format!(
                        "declared order {order} but table has {} rows",
                        table.len()
                    )));
                }
                FiniteGroup::from_table(table.clone())
            }
            FiniteGroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
            FiniteGroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n),
        }
    }
}

impl From<&FiniteGroup> for FiniteGroupSpec {
    fn from(g: &FiniteGroup) -> Self {
        FiniteGroupSpec::Finite {
            order: g.order(),
            table: g.table.clone(),
        }
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FiniteGroupSpec::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FiniteGroupSpec::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_small_cases() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().table(), &[vec![0]]);
        assert_eq!(FiniteGroup::cyclic(2).unwrap().table(), &[vec![0, 1], vec![1, 0]]);
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(z4.inv(1), 3);
        assert!(FiniteGroup::cyclic(0).is_err());
        assert!(verify_finite_group(&FiniteGroup::cyclic(3).unwrap()).is_empty());
    }

    #[test]
    fn unit_law_violation_reported() {
        let g = FiniteGroup::from_table_unchecked(vec![vec![0, 0], vec![1, 1]]);
        let report = verify_finite_group(&g);
        assert!(report.contains(&GroupViolation::UnitLaw { element: 1 }));
    }

    #[test]
    fn symmetric_group_is_nonabelian_group() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(verify_finite_group(&s3).is_empty());
        assert!(!s3.is_abelian());
        assert_eq!(s3.abelian_invariants(), None);
    }

    #[test]
    fn invariants_from_order_statistics() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z4.direct_product(&z2).abelian_invariants(), Some(vec![2, 4]));
        assert_eq!(z2.direct_product(&FiniteGroup::cyclic(3).unwrap()).abelian_invariants(), Some(vec![6]));
        assert_eq!(z6.direct_product(&z4).abelian_invariants(), Some(vec![2, 12]));
        assert_eq!(FiniteGroup::trivial().abelian_invariants(), Some(vec![]));
    }

    #[test]
    fn relabel_preserves_axioms() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let h = g.relabel(&[0, 3, 5, 1, 2, 4]).unwrap();
        assert!(verify_finite_group(&h).is_empty());
        assert!(g.relabel(&[1, 0, 2, 3, 4, 5]).is_err());
    }

    #[test]
    fn json_forms() {
        let g: FiniteGroup = serde_json::from_str(r#"{"type":"cyclic","n":3}"#).unwrap();
        assert_eq!(g.order(), 3);
        let g: FiniteGroup =
            serde_json::from_str(r#"{"type":"finite","order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.mul(1, 1), 0);
        assert!(serde_json::from_str::<FiniteGroup>(
            r#"{"type":"finite","order":2,"table":[[0,0],[1,1]]}"#
        )
        .is_err());
    }
}
