//! Dense integer matrices over arbitrary-precision integers and the Smith
//! normal form, together with the lattice routines built on it (kernels,
//! integer linear systems, subquotients of free abelian groups).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Row-major dense matrix of `BigInt`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(x);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = IntMatrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[r * cols + c] = self.get(r, c).clone();
            }
            for c in 0..other.cols {
                out.data[r * cols + self.cols + c] = other.get(r, c).clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let x = &self.data[src * self.cols + c];
            if !x.is_zero() {
                let v = x * k;
                self.data[dst * self.cols + c] += v;
            }
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let x = &self.data[r * self.cols + src];
            if !x.is_zero() {
                let v = x * k;
                self.data[r * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }

    /// Determinant by fraction-free Bareiss elimination. Square matrices only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1)
    }
}

/// `u * m * v = d` with `d` diagonal, nonnegative, and each diagonal entry
/// dividing the next; `u` and `v` are unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries of `d` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Computes the Smith normal form of `m` with exact integer arithmetic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row op R: u <- R u, u_inv <- u_inv R^{-1}. Column op C: v <- v C, v_inv <- C^{-1} v_inv.
    let row_swap = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, a: usize, b: usize| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        ui.swap_cols(a, b);
    };
    let col_swap = |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, a: usize, b: usize| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        vi.swap_rows(a, b);
    };
    // row[dst] += k row[src]
    let row_add = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        d.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        ui.add_col_multiple(src, dst, &-k);
    };
    // col[dst] += k col[src]
    let col_add = |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst: usize, src: usize, k: &BigInt| {
        d.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
        vi.add_row_multiple(src, dst, &-k);
    };

    let steps = rows.min(cols);
    for t in 0..steps {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let x = d.get(r, c);
                if !x.is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pr, pc)) => x.magnitude() < d.get(pr, pc).magnitude(),
                    };
                    if better {
                        pivot = Some((r, c));
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        row_swap(&mut d, &mut u, &mut u_inv, t, pr);
        col_swap(&mut d, &mut v, &mut v_inv, t, pc);

        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for r in t + 1..rows {
                if d.get(r, t).is_zero() {
                    continue;
                }
                let q = d.get(r, t).div_floor(d.get(t, t));
                row_add(&mut d, &mut u, &mut u_inv, r, t, &-q);
                if !d.get(r, t).is_zero() {
                    // Remainder smaller than the pivot: swap it in.
                    row_swap(&mut d, &mut u, &mut u_inv, t, r);
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for c in t + 1..cols {
                if d.get(t, c).is_zero() {
                    continue;
                }
                let q = d.get(t, c).div_floor(d.get(t, t));
                col_add(&mut d, &mut v, &mut v_inv, c, t, &-q);
                if !d.get(t, c).is_zero() {
                    col_swap(&mut d, &mut v, &mut v_inv, t, c);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Divisibility: pivot must divide every trailing entry.
            let p = d.get(t, t).clone();
            let mut offender = None;
            'search: for r in t + 1..rows {
                for c in t + 1..cols {
                    if !(d.get(r, c) % &p).is_zero() {
                        offender = Some(r);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(r) => {
                    row_add(&mut d, &mut u, &mut u_inv, t, r, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            // u_inv column t negates
            for r in 0..u_inv.rows() {
                let x = -u_inv.get(r, t).clone();
                u_inv.set(r, t, x);
            }
        }
    }

    SmithForm { u, d, v, u_inv, v_inv }
}

/// Basis of the integer kernel `{x : m x = 0}`, one vector per column of the result.
///
/// Column echelon form only: `m v = [E | 0]` with `v` unimodular and `E` of
/// full column rank, so the trailing columns of `v` span the kernel. This
/// never forms the row transform, which dominates for tall matrices.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut v = IntMatrix::identity(cols);
    let mut rank = 0;
    for r in 0..rows {
        if rank == cols {
            break;
        }
        loop {
            let mut pivot: Option<usize> = None;
            for c in rank..cols {
                let x = a.get(r, c);
                if !x.is_zero() && pivot.is_none_or(|p| x.magnitude() < a.get(r, p).magnitude()) {
                    pivot = Some(c);
                }
            }
            let Some(p) = pivot else { break };
            a.swap_cols(rank, p);
            v.swap_cols(rank, p);
            let mut done = true;
            for c in rank + 1..cols {
                if a.get(r, c).is_zero() {
                    continue;
                }
                let q = -a.get(r, c).div_floor(a.get(r, rank));
                a.add_col_multiple(c, rank, &q);
                v.add_col_multiple(c, rank, &q);
                done &= a.get(r, c).is_zero();
            }
            if done {
                rank += 1;
                break;
            }
        }
    }
    let kernel: Vec<Vec<BigInt>> = (rank..cols).map(|j| v.column(j)).collect();
    IntMatrix::from_columns(cols, &kernel)
}

/// Solves `m x = b` over the integers, returning one solution if any exists.
pub fn solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    solve_with(&smith_normal_form(m), m.cols(), b)
}

/// Same as [`solve`] reusing a precomputed Smith form of the system matrix.
pub fn solve_with(snf: &SmithForm, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let ub = snf.u.mul_vec(b);
    let diag = snf.diagonal();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ubi) in ub.iter().enumerate() {
        let di = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if di.is_zero() {
            if !ubi.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = ubi.div_rem(&di);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// The subquotient `span(gens) / (span(gens) ∩ span(rels))` of a free abelian
/// group `Z^ambient`, in invariant-factor form, with explicit generator lifts.
#[derive(Clone, Debug)]
pub struct Subquotient {
    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub torsion: Vec<BigInt>,
    /// Number of free summands.
    pub rank: usize,
    /// Ambient lifts of the canonical generators: free generators first,
    /// then one per torsion factor.
    pub lifts: Vec<Vec<BigInt>>,
    gens: IntMatrix,
    gens_snf: SmithForm,
    /// Maps gens-coordinates to canonical coordinates (rows of `U`).
    coord_map: IntMatrix,
    free_rows: Vec<usize>,
    torsion_rows: Vec<usize>,
}

impl Subquotient {
    pub fn compute(gens: &IntMatrix, rels: &IntMatrix) -> Subquotient {
        assert_eq!(gens.rows(), rels.rows());
        let p = gens.cols();
        // c in Z^p with gens c in span(rels): kernel of [gens | rels], first p coords.
        let joint = gens.hcat(rels);
        let ker = kernel_basis(&joint);
        let mut relation_cols = Vec::with_capacity(ker.cols());
        for j in 0..ker.cols() {
            relation_cols.push((0..p).map(|i| ker.get(i, j).clone()).collect::<Vec<_>>());
        }
        let relations = IntMatrix::from_columns(p, &relation_cols);
        let snf = smith_normal_form(&relations);
        let diag = snf.diagonal();
        let mut torsion = Vec::new();
        let mut torsion_rows = Vec::new();
        let mut free_rows = Vec::new();
        for i in 0..p {
            match diag.get(i) {
                Some(d) if !d.is_zero() => {
                    if !d.is_one() {
                        torsion.push(d.clone());
                        torsion_rows.push(i);
                    }
                }
                _ => free_rows.push(i),
            }
        }
        let mut lifts = Vec::new();
        for &i in free_rows.iter().chain(torsion_rows.iter()) {
            let col = snf.u_inv.column(i);
            lifts.push(gens.mul_vec(&col));
        }
        Subquotient {
            rank: free_rows.len(),
            torsion,
            lifts,
            gens_snf: smith_normal_form(gens),
            gens: gens.clone(),
            coord_map: snf.u,
            free_rows,
            torsion_rows,
        }
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Canonical coordinates of an ambient vector lying in `span(gens)`;
    /// `None` if it does not.
    pub fn coordinates(&self, ambient: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = solve_with(&self.gens_snf, self.gens.cols(), ambient)?;
        let y = self.coord_map.mul_vec(&c);
        let mut out = Vec::with_capacity(self.rank + self.torsion.len());
        for &i in &self.free_rows {
            out.push(y[i].clone());
        }
        for (k, &i) in self.torsion_rows.iter().enumerate() {
            out.push(y[i].mod_floor(&self.torsion[k]));
        }
        Some(out)
    }
}
