//! Normalized bar-complex cochains on finite groups, the group differential,
//! cohomology via Smith normal form, twisted products and the degree-two
//! cohomology of the cone of an abelian crossed module.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::snf::{kernel_basis, smith_normal_form, solve_with, Subquotient};
use crate::algebra::{AbelianHom, AlgebraError, FgAbelianGroup, FiniteGroup, GAction, IntMatrix};

/// Highest supported cochain degree.
pub const MAX_DEGREE: usize = 4;
/// Largest bar-complex matrix (rows × columns) fed to Smith normal form.
pub const MAX_MATRIX_ENTRIES: usize = 4_000_000;
/// Largest number of candidates enumerated by the brute-force cone routines.
pub const MAX_CANDIDATES: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("degree {0} is not valid here")]
    InvalidDegree(usize),
    #[error("cochains live over different groups or coefficient modules")]
    Mismatch,
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("coefficients must be finite")]
    InfiniteCoefficients,
    #[error("operation requires the trivial action")]
    NontrivialAction,
    #[error("not a cocycle: the differential is nonzero at {witness:?}")]
    NotACocycle { witness: Vec<usize> },
    #[error("value at {tuple:?} is invalid: {reason}")]
    InvalidValue { tuple: Vec<usize>, reason: String },
}

/// Number of normalized tuples of length `degree` over a group of order `n`.
pub fn normalized_count(n: usize, degree: usize) -> usize {
    n.saturating_sub(1).pow(degree as u32)
}

fn tuple_index(n: usize, args: &[usize]) -> Option<usize> {
    let mut idx = 0;
    for &g in args {
        if g == 0 {
            return None;
        }
        idx = idx * (n - 1) + (g - 1);
    }
    Some(idx)
}

fn tuple_at(n: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; degree];
    for slot in out.iter_mut().rev() {
        *slot = idx % (n - 1) + 1;
        idx /= n - 1;
    }
    out
}

/// All normalized tuples of the given length in index order.
pub fn normalized_tuples(n: usize, degree: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..normalized_count(n, degree)).map(move |i| tuple_at(n, degree, i))
}

/// All tuples of the given length (including unit entries), lexicographic.
pub fn all_tuples(n: usize, degree: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n.pow(degree as u32)).map(move |mut i| {
        let mut out = vec![0; degree];
        for slot in out.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        out
    })
}

/// A normalized `A`-valued cochain of degree `n` on a finite group `G`.
/// Only tuples with every argument different from the unit are stored.
#[derive(Clone, Debug)]
pub struct Cochain {
    action: Arc<GAction>,
    degree: usize,
    values: Vec<Vec<i64>>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && same_module(&self.action, &other.action) && self.values == other.values
    }
}

impl Eq for Cochain {}

fn same_module(a: &Arc<GAction>, b: &Arc<GAction>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Cochain {
    pub fn zero(action: &Arc<GAction>, degree: usize) -> Self {
        let n = action.group().order();
        Cochain {
            action: action.clone(),
            degree,
            values: vec![action.module().zero(); normalized_count(n, degree)],
        }
    }

    /// Builds a cochain from its values on normalized tuples; `f` is never
    /// called on tuples containing the unit.
    pub fn from_fn(action: &Arc<GAction>, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<i64>) -> Self {
        let n = action.group().order();
        let m = action.module();
        let values = normalized_tuples(n, degree)
            .map(|t| {
                let mut v = f(&t);
                m.normalize(&mut v);
                v
            })
            .collect();
        Cochain {
            action: action.clone(),
            degree,
            values,
        }
    }

    /// Builds a cochain from a function on all tuples, rejecting nonzero
    /// values on tuples that contain the unit.
    pub fn from_total_fn(
        action: &Arc<GAction>,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Vec<i64>,
    ) -> Result<Self, CohomologyError> {
        let n = action.group().order();
        let m = action.module();
        for t in all_tuples(n, degree).filter(|t| t.contains(&0)) {
            let mut v = f(&t);
            m.normalize(&mut v);
            if !m.is_zero(&v) {
                return Err(CohomologyError::InvalidValue {
                    tuple: t,
                    reason: "cochain is not normalized".into(),
                });
            }
        }
        Ok(Self::from_fn(action, degree, f))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn action(&self) -> &Arc<GAction> {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    pub fn coefficients(&self) -> &FgAbelianGroup {
        self.action.module()
    }

    /// Stored values in normalized-tuple order.
    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    /// Value at an arbitrary tuple; zero when any argument is the unit.
    pub fn get(&self, args: &[usize]) -> Vec<i64> {
        debug_assert_eq!(args.len(), self.degree);
        match tuple_index(self.group().order(), args) {
            Some(i) => self.values[i].clone(),
            None => self.coefficients().zero(),
        }
    }

    pub fn set(&mut self, args: &[usize], value: Vec<i64>) -> Result<(), CohomologyError> {
        let m = self.action.module();
        let mut value = value;
        if value.len() != m.ngens() {
            return Err(CohomologyError::InvalidValue {
                tuple: args.to_vec(),
                reason: format!("expected {} coordinates", m.ngens()),
            });
        }
        m.normalize(&mut value);
        match tuple_index(self.group().order(), args) {
            Some(i) => {
                self.values[i] = value;
                Ok(())
            }
            None if m.is_zero(&value) => Ok(()),
            None => Err(CohomologyError::InvalidValue {
                tuple: args.to_vec(),
                reason: "cochains vanish on tuples containing the unit".into(),
            }),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.coefficients().is_zero(v))
    }

    fn check_compatible(&self, other: &Cochain) -> Result<(), CohomologyError> {
        if self.degree != other.degree || !same_module(&self.action, &other.action) {
            return Err(CohomologyError::Mismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        self.check_compatible(other)?;
        let m = self.coefficients();
        Ok(Cochain {
            action: self.action.clone(),
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| m.add(a, b)).collect(),
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        self.check_compatible(other)?;
        let m = self.coefficients();
        Ok(Cochain {
            action: self.action.clone(),
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| m.sub(a, b)).collect(),
        })
    }

    /// Pushes the values forward along a homomorphism of trivial modules.
    pub fn push_forward(&self, h: &AbelianHom, target: &Arc<GAction>) -> Result<Cochain, CohomologyError> {
        if h.source() != self.coefficients() || h.target() != target.module() || target.group() != self.group() {
            return Err(CohomologyError::Mismatch);
        }
        Ok(Cochain {
            action: target.clone(),
            degree: self.degree,
            values: self.values.iter().map(|v| h.apply(v)).collect(),
        })
    }

    /// Tuples (in index order) where the value is nonzero.
    pub fn support(&self) -> Vec<Vec<usize>> {
        let n = self.group().order();
        let m = self.coefficients();
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !m.is_zero(v))
            .map(|(i, _)| tuple_at(n, self.degree, i))
            .collect()
    }

    /// Same cochain on a group relabelled by `perm` (old index `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[usize], action: &Arc<GAction>) -> Result<Cochain, CohomologyError> {
        if action.module() != self.coefficients() || action.group().order() != self.group().order() {
            return Err(CohomologyError::Mismatch);
        }
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        Ok(Cochain::from_fn(action, self.degree, |t| {
            let old: Vec<usize> = t.iter().map(|&g| inv[g]).collect();
            self.get(&old)
        }))
    }

    /// Flat integer coordinate vector (tuple-major, module coordinate minor).
    pub fn to_coordinates(&self) -> Vec<BigInt> {
        self.values.iter().flatten().map(|&x| BigInt::from(x)).collect()
    }

    pub fn from_coordinates(action: &Arc<GAction>, degree: usize, coords: &[BigInt]) -> Result<Cochain, CohomologyError> {
        let m = action.module();
        let k = m.ngens();
        let count = normalized_count(action.group().order(), degree);
        if coords.len() != count * k {
            return Err(CohomologyError::Mismatch);
        }
        let mut values = Vec::with_capacity(count);
        for i in 0..count {
            let mut v = Vec::with_capacity(k);
            for (c, x) in coords[i * k..(i + 1) * k].iter().enumerate() {
                let reduced = match m.modulus(c) {
                    Some(d) => x.mod_floor_i64(d),
                    None => x.to_i64().ok_or(AlgebraError::Overflow)?,
                };
                v.push(reduced);
            }
            values.push(v);
        }
        Ok(Cochain {
            action: action.clone(),
            degree,
            values,
        })
    }

    pub fn to_spec(&self) -> CochainSpec {
        let n = self.group().order();
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !self.coefficients().is_zero(v))
            .map(|(i, v)| (format_tuple(&tuple_at(n, self.degree, i)), v.clone()))
            .collect();
        CochainSpec {
            degree: self.degree,
            values,
        }
    }
}

trait ModFloorI64 {
    fn mod_floor_i64(&self, d: i64) -> i64;
}

impl ModFloorI64 for BigInt {
    fn mod_floor_i64(&self, d: i64) -> i64 {
        use num_integer::Integer;
        self.mod_floor(&BigInt::from(d)).to_i64().expect("residue fits in i64")
    }
}

fn format_tuple(t: &[usize]) -> String {
    let inner: Vec<String> = t.iter().map(|g| g.to_string()).collect();
    format!("({})", inner.join(","))
}

fn parse_tuple(s: &str) -> Option<Vec<usize>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?.trim();
    if inner.is_empty() {
        return Some(vec![]);
    }
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

/// JSON form of a cochain: `{"degree":n,"values":{"(i,j)":[coords]}}`;
/// omitted tuples are zero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CochainSpec {
    pub degree: usize,
    #[serde(default)]
    pub values: BTreeMap<String, Vec<i64>>,
}

impl CochainSpec {
    pub fn build(&self, action: &Arc<GAction>) -> Result<Cochain, CohomologyError> {
        let n = action.group().order();
        let mut c = Cochain::zero(action, self.degree);
        for (key, v) in &self.values {
            let t = parse_tuple(key).ok_or_else(|| CohomologyError::InvalidValue {
                tuple: vec![],
                reason: format!("malformed tuple key {key:?}"),
            })?;
            if t.len() != self.degree || t.iter().any(|&g| g >= n) {
                return Err(CohomologyError::InvalidValue {
                    tuple: t,
                    reason: "tuple has wrong length or an out-of-range element".into(),
                });
            }
            c.set(&t, v.clone())?;
        }
        Ok(c)
    }
}

/// The group differential
/// `d f(g0..gn) = g0.f(g1..gn) + Σ_{i<n} (-1)^{i+1} f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g0..g_{n-1})`.
pub fn d_gp(c: &Cochain) -> Cochain {
    let g = c.group();
    let m = c.coefficients();
    let n = c.degree;
    Cochain::from_fn(&c.action, n + 1, |t| {
        let mut acc = c.action.apply(t[0], &c.get(&t[1..]));
        let mut args = Vec::with_capacity(n);
        for i in 0..n {
            args.clear();
            args.extend_from_slice(&t[..i]);
            args.push(g.mul(t[i], t[i + 1]));
            args.extend_from_slice(&t[i + 2..]);
            let v = c.get(&args);
            acc = if i % 2 == 0 { m.sub(&acc, &v) } else { m.add(&acc, &v) };
        }
        let last = c.get(&t[..n]);
        if n.is_multiple_of(2) {
            m.sub(&acc, &last)
        } else {
            m.add(&acc, &last)
        }
    })
}

/// Integer matrix of the differential `C^n → C^{n+1}` on lifted coordinates.
pub fn differential_matrix(action: &GAction, degree: usize) -> Result<IntMatrix, CohomologyError> {
    let g = action.group();
    let order = g.order();
    let k = action.module().ngens();
    let rows = normalized_count(order, degree + 1) * k;
    let cols = normalized_count(order, degree) * k;
    guard_matrix(rows, cols)?;
    let mut mat = IntMatrix::zeros(rows, cols);
    let add_block = |mat: &mut IntMatrix, r: usize, c: usize, sign: i64, block: Option<&[Vec<i64>]>| {
        for a in 0..k {
            for b in 0..k {
                let v = match block {
                    Some(bl) => bl[a][b],
                    None => i64::from(a == b),
                };
                if v != 0 {
                    mat.add_to(r * k + a, c * k + b, sign * v);
                }
            }
        }
    };
    for (r, t) in normalized_tuples(order, degree + 1).enumerate() {
        if let Some(c) = tuple_index(order, &t[1..]) {
            let block = if action.is_trivial() { None } else { Some(action.matrix(t[0])) };
            add_block(&mut mat, r, c, 1, block);
        }
        for i in 0..degree {
            let mut args = t[..i].to_vec();
            args.push(g.mul(t[i], t[i + 1]));
            args.extend_from_slice(&t[i + 2..]);
            if let Some(c) = tuple_index(order, &args) {
                add_block(&mut mat, r, c, if i % 2 == 0 { -1 } else { 1 }, None);
            }
        }
        if let Some(c) = tuple_index(order, &t[..degree]) {
            add_block(&mut mat, r, c, if degree.is_multiple_of(2) { -1 } else { 1 }, None);
        }
    }
    Ok(mat)
}

fn guard_matrix(rows: usize, cols: usize) -> Result<(), CohomologyError> {
    if rows.saturating_mul(cols) > MAX_MATRIX_ENTRIES {
        return Err(CohomologyError::TooLarge(format!(
            "bar-complex matrix of size {rows}x{cols}"
        )));
    }
    Ok(())
}

/// Block-diagonal relation lattice of `C^n`: the torsion relations of the
/// module repeated for every normalized tuple.
fn torsion_relations(action: &GAction, degree: usize) -> IntMatrix {
    let m = action.module();
    let k = m.ngens();
    let count = normalized_count(action.group().order(), degree);
    let mut cols = Vec::new();
    for t in 0..count {
        for (j, &d) in m.torsion().iter().enumerate() {
            let mut c = vec![BigInt::zero(); count * k];
            c[t * k + m.rank() + j] = BigInt::from(d);
            cols.push(c);
        }
    }
    IntMatrix::from_columns(count * k, &cols)
}

/// `H^n(G, A)` in invariant-factor form together with cocycles representing
/// the canonical generators.
#[derive(Clone, Debug)]
pub struct CohomologyResult {
    pub degree: usize,
    pub group_iso_class: FgAbelianGroup,
    pub representative_cocycles: Vec<Cochain>,
    quotient: Subquotient,
    action: Arc<GAction>,
}

impl CohomologyResult {
    /// Order of the cohomology group, `None` if it has a free part.
    pub fn order(&self) -> Option<u64> {
        self.group_iso_class.order()
    }

    /// Class of a cocycle in canonical coordinates.
    pub fn class_of(&self, c: &Cochain) -> Result<Vec<i64>, CohomologyError> {
        if c.degree != self.degree || !same_module(&c.action, &self.action) {
            return Err(CohomologyError::Mismatch);
        }
        let dc = d_gp(c);
        if let Some(w) = dc.support().into_iter().next() {
            return Err(CohomologyError::NotACocycle { witness: w });
        }
        let coords = self
            .quotient
            .coordinates(&c.to_coordinates())
            .expect("cocycles lie in the cocycle lattice");
        coords
            .iter()
            .map(|x| x.to_i64().ok_or(CohomologyError::Algebra(AlgebraError::Overflow)))
            .collect()
    }
}

fn check_degree(n: usize) -> Result<(), CohomologyError> {
    if n > MAX_DEGREE {
        return Err(CohomologyError::DegreeTooLarge(n));
    }
    Ok(())
}

/// `H^n(G, A) = Z^n / B^n` on normalized cochains, via Smith normal forms
/// of the lifted bar-complex differentials.
pub fn cohomology_group(action: &Arc<GAction>, n: usize) -> Result<CohomologyResult, CohomologyError> {
    check_degree(n)?;
    let dn = differential_matrix(action, n)?;
    let t_next = torsion_relations(action, n + 1);
    let t_n = torsion_relations(action, n);
    let width = dn.cols();
    guard_matrix(dn.rows(), dn.cols() + t_next.cols())?;

    // Cocycle lattice: x with D_n x ∈ span(T_{n+1}).
    let ker = kernel_basis(&dn.hcat(&t_next));
    let cols: Vec<Vec<BigInt>> = (0..ker.cols())
        .map(|j| (0..width).map(|i| ker.get(i, j).clone()).collect())
        .collect();
    let cocycles = IntMatrix::from_columns(width, &cols);

    let boundaries = if n == 0 {
        t_n
    } else {
        differential_matrix(action, n - 1)?.hcat(&t_n)
    };
    let quotient = Subquotient::compute(&cocycles, &boundaries);
    let group_iso_class = FgAbelianGroup::from_subquotient(&quotient)?;
    let representative_cocycles = quotient
        .lifts
        .iter()
        .map(|l| Cochain::from_coordinates(action, n, l))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CohomologyResult {
        degree: n,
        group_iso_class,
        representative_cocycles,
        quotient,
        action: action.clone(),
    })
}

/// Solves `d b = c`; `Ok(None)` certifies that `c` is not a coboundary.
pub fn is_coboundary(c: &Cochain) -> Result<Option<Cochain>, CohomologyError> {
    if c.degree == 0 {
        return Err(CohomologyError::InvalidDegree(0));
    }
    check_degree(c.degree)?;
    if let Some(w) = d_gp(c).support().into_iter().next() {
        return Err(CohomologyError::NotACocycle { witness: w });
    }
    let d = differential_matrix(&c.action, c.degree - 1)?;
    let system = d.hcat(&torsion_relations(&c.action, c.degree));
    let snf = smith_normal_form(&system);
    let sol = match solve_with(&snf, system.cols(), &c.to_coordinates()) {
        Some(s) => s,
        None => return Ok(None),
    };
    let b = Cochain::from_coordinates(&c.action, c.degree - 1, &sol[..d.cols()])?;
    debug_assert_eq!(d_gp(&b), *c);
    Ok(Some(b))
}

/// Triples where `d f` is nonzero.
pub fn cocycle_failures(f: &Cochain) -> Vec<Vec<usize>> {
    d_gp(f).support()
}

/// Multiplication table of `Z ×_f G` with `(a,g)(b,h) = (a+b+f(g,h), gh)`,
/// element `(a, g)` at index `g·|Z| + index(a)`. No cocycle check.
pub fn twisted_product_unchecked(f: &Cochain) -> Result<FiniteGroup, CohomologyError> {
    if !f.action.is_trivial() {
        return Err(CohomologyError::NontrivialAction);
    }
    if f.degree != 2 {
        return Err(CohomologyError::InvalidDegree(f.degree));
    }
    let z = f.coefficients();
    let g = f.group();
    let zn = z.order().ok_or(CohomologyError::InfiniteCoefficients)? as usize;
    let total = zn * g.order();
    if total > 4096 {
        return Err(CohomologyError::TooLarge(format!("twisted product of order {total}")));
    }
    let elems = z.elements()?;
    let mut table = vec![vec![0; total]; total];
    for (gi, row_block) in table.chunks_mut(zn).enumerate() {
        for (ai, row) in row_block.iter_mut().enumerate() {
            for hi in 0..g.order() {
                let fgh = f.get(&[gi, hi]);
                let gh = g.mul(gi, hi);
                for (bi, b) in elems.iter().enumerate() {
                    let sum = z.add(&z.add(&elems[ai], b), &fgh);
                    row[hi * zn + bi] = gh * zn + z.index_of(&sum);
                }
            }
        }
    }
    Ok(FiniteGroup::from_table_unchecked(table))
}

/// The twisted product of a 2-cocycle; refused with the first failing
/// triple when `d f ≠ 0`.
pub fn twisted_product(f: &Cochain) -> Result<FiniteGroup, CohomologyError> {
    if let Some(w) = cocycle_failures(f).into_iter().next() {
        return Err(CohomologyError::NotACocycle { witness: w });
    }
    twisted_product_unchecked(f)
}

fn enumerate_cochains(action: &Arc<GAction>, degree: usize) -> Result<Vec<Cochain>, CohomologyError> {
    let m = action.module();
    let per = m.order().ok_or(CohomologyError::InfiniteCoefficients)?;
    let slots = normalized_count(action.group().order(), degree);
    let total = (per as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if total > MAX_CANDIDATES as u128 {
        return Err(CohomologyError::TooLarge(format!(
            "{total} candidate {degree}-cochains exceed the limit of {MAX_CANDIDATES}"
        )));
    }
    let elems = m.elements()?;
    let mut out = Vec::with_capacity(total as usize);
    for mut code in 0..total as usize {
        let mut values = vec![Vec::new(); slots];
        for v in values.iter_mut().rev() {
            *v = elems[code % per as usize].clone();
            code /= per as usize;
        }
        out.push(Cochain {
            action: action.clone(),
            degree,
            values,
        });
    }
    Ok(out)
}

fn cochain_key(c: &Cochain) -> Vec<u32> {
    let m = c.coefficients();
    c.values.iter().map(|v| m.index_of(v) as u32).collect()
}

/// A generalized 2-cocycle `(F, Θ)` with `d F = τ∘Θ` and `d Θ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePair {
    pub f: Cochain,
    pub theta: Cochain,
}

/// Degree-two cone cohomology: the generalized cocycles for `τ: A → Z`
/// modulo `(F, Θ) ~ (F + dφ + τψ, Θ + dψ)`.
#[derive(Clone, Debug)]
pub struct ConeClassSet {
    pub tau: AbelianHom,
    /// Least-index representative of each class, in increasing index order.
    pub representatives: Vec<ConePair>,
    pub class_sizes: Vec<usize>,
    /// Number of generalized cocycles enumerated.
    pub cocycle_count: usize,
    /// Size of the subgroup `{(dφ + τψ, dψ)}`.
    pub boundary_count: usize,
    z_action: Arc<GAction>,
    a_action: Arc<GAction>,
    class_index: HashMap<(Vec<u32>, Vec<u32>), usize>,
}

impl ConeClassSet {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Class of a generalized cocycle, `None` if the pair is not one.
    pub fn class_of(&self, pair: &ConePair) -> Option<usize> {
        self.class_index
            .get(&(cochain_key(&pair.f), cochain_key(&pair.theta)))
            .copied()
    }

    pub fn z_action(&self) -> &Arc<GAction> {
        &self.z_action
    }

    pub fn a_action(&self) -> &Arc<GAction> {
        &self.a_action
    }

    /// Every representative satisfies both defining identities.
    pub fn verify(&self) -> bool {
        self.representatives.iter().all(|p| {
            let tau_theta = p.theta.push_forward(&self.tau, &self.z_action);
            matches!(tau_theta, Ok(t) if d_gp(&p.f) == t) && d_gp(&p.theta).is_zero()
        })
    }
}

/// Enumerates `H^2(G, cone τ)` by brute force for finite `A` and `Z`.
pub fn cone_h2(g: &FiniteGroup, tau: &AbelianHom) -> Result<ConeClassSet, CohomologyError> {
    let a = tau.source();
    let z = tau.target();
    if !a.is_finite() || !z.is_finite() {
        return Err(CohomologyError::InfiniteCoefficients);
    }
    let a_action = Arc::new(GAction::trivial(g, a));
    let z_action = Arc::new(GAction::trivial(g, z));

    let thetas: Vec<Cochain> = enumerate_cochains(&a_action, 3)?
        .into_iter()
        .filter(|t| d_gp(t).is_zero())
        .collect();
    let fs = enumerate_cochains(&z_action, 2)?;
    let f_by_boundary: HashMap<Vec<u32>, Vec<usize>> = {
        let mut map: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for (i, f) in fs.iter().enumerate() {
            map.entry(cochain_key(&d_gp(f))).or_default().push(i);
        }
        map
    };

    let mut pairs = Vec::new();
    for theta in &thetas {
        let target = cochain_key(&theta.push_forward(tau, &z_action)?);
        for &i in f_by_boundary.get(&target).map(Vec::as_slice).unwrap_or(&[]) {
            pairs.push(ConePair {
                f: fs[i].clone(),
                theta: theta.clone(),
            });
        }
    }
    // Increasing pair index: Θ major, F minor.
    pairs.sort_by_key(|p| (cochain_key(&p.theta), cochain_key(&p.f)));

    let phis = enumerate_cochains(&z_action, 1)?;
    let psis = enumerate_cochains(&a_action, 2)?;
    if (phis.len() as u64).saturating_mul(psis.len() as u64) > MAX_CANDIDATES {
        return Err(CohomologyError::TooLarge("boundary subgroup enumeration".into()));
    }
    let mut boundary = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for phi in &phis {
        let dphi = d_gp(phi);
        for psi in &psis {
            let bf = dphi.add(&psi.push_forward(tau, &z_action)?)?;
            let bt = d_gp(psi);
            if seen.insert((cochain_key(&bf), cochain_key(&bt))) {
                boundary.push((bf, bt));
            }
        }
    }

    let mut class_index = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();
    for p in &pairs {
        let key = (cochain_key(&p.f), cochain_key(&p.theta));
        if class_index.contains_key(&key) {
            continue;
        }
        let id = representatives.len();
        let mut size = 0;
        for (bf, bt) in &boundary {
            let k = (cochain_key(&p.f.add(bf)?), cochain_key(&p.theta.add(bt)?));
            if class_index.insert(k, id).is_none() {
                size += 1;
            }
        }
        representatives.push(p.clone());
        class_sizes.push(size);
    }

    Ok(ConeClassSet {
        tau: tau.clone(),
        representatives,
        class_sizes,
        cocycle_count: pairs.len(),
        boundary_count: boundary.len(),
        z_action,
        a_action,
        class_index,
    })
}

/// Exactness of `H²(G,Z) → H²(G, cone τ) → H³(G,A)` at the middle term,
/// where the maps are `F ↦ (F, 0)` and `(F, Θ) ↦ Θ`.
#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub h2_z_order: u64,
    pub cone_class_count: usize,
    pub h3_a_order: u64,
    /// Cone classes hit by `H²(G,Z)`.
    pub image_of_first: Vec<usize>,
    /// Cone classes whose `Θ` is a coboundary.
    pub kernel_of_second: Vec<usize>,
    /// Classes on which the second map is not constant on the class (should be empty).
    pub ill_defined: Vec<usize>,
    pub exact: bool,
}

pub fn les_exactness_check(g: &FiniteGroup, tau: &AbelianHom) -> Result<LesReport, CohomologyError> {
    let cone = cone_h2(g, tau)?;
    let z_action = cone.z_action.clone();
    let a_action = cone.a_action.clone();
    let h2 = cohomology_group(&z_action, 2)?;
    let h3 = cohomology_group(&a_action, 3)?;

    let mut image = std::collections::BTreeSet::new();
    for f in enumerate_cochains(&z_action, 2)? {
        if d_gp(&f).is_zero() {
            let pair = ConePair {
                f,
                theta: Cochain::zero(&a_action, 3),
            };
            image.insert(cone.class_of(&pair).expect("(F, 0) is a generalized cocycle"));
        }
    }

    let mut third: HashMap<usize, Vec<i64>> = HashMap::new();
    let mut ill_defined = std::collections::BTreeSet::new();
    for (key, &class) in &cone.class_index {
        let theta = Cochain {
            action: a_action.clone(),
            degree: 3,
            values: key.1.iter().map(|&i| a_action.module().element_at(i as usize)).collect(),
        };
        let c = h3.class_of(&theta)?;
        match third.get(&class) {
            Some(prev) if *prev != c => {
                ill_defined.insert(class);
            }
            Some(_) => {}
            None => {
                third.insert(class, c);
            }
        }
    }
    let kernel: std::collections::BTreeSet<usize> = third
        .iter()
        .filter(|(_, c)| c.iter().all(|&x| x == 0))
        .map(|(&k, _)| k)
        .collect();

    Ok(LesReport {
        h2_z_order: h2.order().unwrap_or(0),
        cone_class_count: cone.class_count(),
        h3_a_order: h3.order().unwrap_or(0),
        exact: image == kernel && ill_defined.is_empty(),
        image_of_first: image.into_iter().collect(),
        kernel_of_second: kernel.into_iter().collect(),
        ill_defined: ill_defined.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial(g: &FiniteGroup, a: &FgAbelianGroup) -> Arc<GAction> {
        Arc::new(GAction::trivial(g, a))
    }

    fn zmod(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n).unwrap()
    }

    fn cyc(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    /// |Z^n| / |B^n| by enumerating all normalized cochains.
    fn brute_force_order(action: &Arc<GAction>, n: usize) -> usize {
        let cocycles = enumerate_cochains(action, n).unwrap().into_iter().filter(|c| d_gp(c).is_zero()).count();
        let boundaries: std::collections::HashSet<Vec<u32>> = if n == 0 {
            [cochain_key(&Cochain::zero(action, 0))].into_iter().collect()
        } else {
            enumerate_cochains(action, n - 1).unwrap().iter().map(|b| cochain_key(&d_gp(b))).collect()
        };
        cocycles / boundaries.len()
    }

    fn abc(action: &Arc<GAction>) -> Cochain {
        Cochain::from_fn(action, 3, |t| vec![(t[0] * t[1] * t[2]) as i64])
    }

    #[test]
    fn homomorphism_has_zero_differential() {
        let a = trivial(&cyc(2), &zmod(2));
        let f = Cochain::from_fn(&a, 1, |_| vec![1]);
        assert!(d_gp(&f).is_zero());
    }

    #[test]
    fn abc_is_a_cocycle() {
        let a = trivial(&cyc(2), &zmod(2));
        let theta = abc(&a);
        let d = d_gp(&theta);
        for t in all_tuples(2, 4) {
            assert_eq!(d.get(&t), vec![0]);
        }
    }

    #[test]
    fn differential_matches_matrix() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let a = trivial(&g, &FgAbelianGroup::new(1, vec![2]).unwrap());
        let f = Cochain::from_fn(&a, 1, |t| vec![t[0] as i64 * 3 - 4, t[0] as i64]);
        let m = differential_matrix(&a, 1).unwrap();
        let img = Cochain::from_coordinates(&a, 2, &m.mul_vec(&f.to_coordinates())).unwrap();
        assert_eq!(img, d_gp(&f));
    }

    #[test]
    fn small_cohomology_matches_enumeration() {
        for (g, m, n) in [(cyc(2), zmod(2), 2), (cyc(2), zmod(2), 3), (cyc(4), zmod(2), 2), (cyc(3), zmod(3), 1), (cyc(2), zmod(4), 2)] {
            let a = trivial(&g, &m);
            let h = cohomology_group(&a, n).unwrap();
            assert_eq!(h.order().unwrap() as usize, brute_force_order(&a, n), "H^{n}");
        }
    }

    #[test]
    fn h2_of_cyclic_with_integer_coefficients() {
        for n in 2..=4 {
            let a = trivial(&cyc(n), &FgAbelianGroup::integers());
            let h = cohomology_group(&a, 2).unwrap();
            assert_eq!(h.group_iso_class, zmod(n as i64));
            // The carry cocycle has order exactly n.
            let carry = Cochain::from_fn(&a, 2, |t| vec![i64::from(t[0] + t[1] >= n)]);
            for k in 1..=n as i64 {
                let multiple = Cochain::from_fn(&a, 2, |t| vec![k * carry.get(t)[0]]);
                assert_eq!(is_coboundary(&multiple).unwrap().is_some(), k == n as i64);
            }
            let h1 = cohomology_group(&a, 1).unwrap();
            assert_eq!(h1.group_iso_class, FgAbelianGroup::trivial());
        }
    }

    #[test]
    fn degree_zero_is_invariants() {
        let a = trivial(&cyc(3), &FgAbelianGroup::integers());
        assert_eq!(cohomology_group(&a, 0).unwrap().group_iso_class, FgAbelianGroup::integers());
    }

    #[test]
    fn abc_is_not_a_coboundary() {
        let a = trivial(&cyc(2), &zmod(2));
        assert!(is_coboundary(&abc(&a)).unwrap().is_none());
        let h3 = cohomology_group(&a, 3).unwrap();
        assert_eq!(h3.group_iso_class, zmod(2));
        assert_eq!(h3.class_of(&abc(&a)).unwrap(), vec![1]);
    }

    #[test]
    fn constructed_coboundary_has_witness() {
        let a = trivial(&cyc(4), &zmod(4));
        let b = Cochain::from_fn(&a, 1, |t| vec![(t[0] * t[0]) as i64]);
        let c = d_gp(&b);
        let w = is_coboundary(&c).unwrap().unwrap();
        assert_eq!(d_gp(&w), c);
        assert!(is_coboundary(&Cochain::zero(&a, 2)).unwrap().unwrap().is_zero());
    }

    #[test]
    fn degree_cap_and_non_cocycle_rejected() {
        let a = trivial(&cyc(2), &zmod(2));
        assert!(matches!(cohomology_group(&a, 5), Err(CohomologyError::DegreeTooLarge(5))));
        let c = Cochain::from_fn(&a, 2, |_| vec![1]);
        let mut c2 = Cochain::zero(&trivial(&cyc(3), &zmod(2)), 2);
        c2.set(&[1, 1], vec![1]).unwrap();
        assert!(d_gp(&c).is_zero());
        assert!(matches!(is_coboundary(&c2), Err(CohomologyError::NotACocycle { .. })));
    }

    #[test]
    fn twisted_product_of_carry_is_cyclic() {
        let a = trivial(&cyc(2), &zmod(2));
        let f = Cochain::from_fn(&a, 2, |_| vec![1]);
        let g = twisted_product(&f).unwrap();
        assert!(crate::algebra::verify_finite_group(&g).is_empty());
        // (0, 1) sits at index 2.
        assert_eq!(g.element_order(2), 4);
        assert_eq!(g.mul(2, 2), 1);
        let direct = twisted_product(&Cochain::zero(&a, 2)).unwrap();
        assert_eq!(direct.abelian_invariants(), Some(vec![2, 2]));
    }

    #[test]
    fn twisted_product_refuses_non_cocycle() {
        let a = trivial(&cyc(3), &zmod(2));
        let mut f = Cochain::zero(&a, 2);
        f.set(&[1, 1], vec![1]).unwrap();
        assert!(matches!(twisted_product(&f), Err(CohomologyError::NotACocycle { .. })));
    }

    #[test]
    fn cochain_json_round_trip() {
        let a = trivial(&cyc(3), &zmod(4));
        let f = Cochain::from_fn(&a, 2, |t| vec![(t[0] + 2 * t[1]) as i64]);
        let spec = f.to_spec();
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"(1,2)\""));
        let back: CochainSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build(&a).unwrap(), f);
        let bad = CochainSpec {
            degree: 2,
            values: [("(0,1)".to_string(), vec![1])].into_iter().collect(),
        };
        assert!(bad.build(&a).is_err());
    }

    #[test]
    fn cone_of_identity_is_trivial() {
        let id = AbelianHom::identity(&zmod(2));
        let cone = cone_h2(&cyc(2), &id).unwrap();
        assert!(cone.verify());
        assert_eq!(cone.class_count(), 1);
    }

    #[test]
    fn cone_of_zero_map_is_h3() {
        let zero = AbelianHom::zero(&zmod(2), &FgAbelianGroup::trivial());
        let cone = cone_h2(&cyc(2), &zero).unwrap();
        assert!(cone.verify());
        assert_eq!(cone.class_count(), 2);
    }

    #[test]
    fn cone_over_trivial_group_has_one_class() {
        let tau = AbelianHom::new(zmod(2), zmod(4), vec![vec![2]]).unwrap();
        assert_eq!(cone_h2(&FiniteGroup::trivial(), &tau).unwrap().class_count(), 1);
    }

    #[test]
    fn cone_size_guard() {
        let tau = AbelianHom::identity(&zmod(4));
        assert!(matches!(cone_h2(&cyc(4), &tau), Err(CohomologyError::TooLarge(_))));
    }

    #[test]
    fn les_is_exact_on_small_instances() {
        let doubling = AbelianHom::new(zmod(2), zmod(4), vec![vec![2]]).unwrap();
        for (g, tau) in [
            (cyc(2), doubling),
            (cyc(2), AbelianHom::identity(&zmod(2))),
            (FiniteGroup::trivial(), AbelianHom::identity(&zmod(2))),
        ] {
            let r = les_exactness_check(&g, &tau).unwrap();
            assert!(r.exact, "{r:?}");
            assert!(r.ill_defined.is_empty());
        }
    }
}
