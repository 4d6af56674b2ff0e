//! Finite-dimensional real Lie algebras and `𝔷`-valued bilinear forms,
//! both stored as structure-constant arrays `c[k][i][j]`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::LieError;

/// Bilinear map `ℝⁿ × ℝⁿ → ℝᵐ`, `out_k = Σ c[k][i][j] x_i y_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Vec<f64>>>", into = "Vec<Vec<Vec<f64>>>")]
pub struct Bilinear {
    m: usize,
    n: usize,
    c: Vec<f64>,
}

impl TryFrom<Vec<Vec<Vec<f64>>>> for Bilinear {
    type Error = LieError;

    fn try_from(t: Vec<Vec<Vec<f64>>>) -> Result<Self, LieError> {
        let m = t.len();
        let n = t.first().map_or(0, |s| s.len());
        if m == 0 || n == 0 || t.iter().any(|s| s.len() != n || s.iter().any(|r| r.len() != n)) {
            return Err(LieError::Shape("structure constants must be an m×n×n array".into()));
        }
        let c: Vec<f64> = t.into_iter().flatten().flatten().collect();
        if c.iter().any(|x| !x.is_finite()) {
            return Err(LieError::Shape("structure constants must be finite".into()));
        }
        Ok(Bilinear { m, n, c })
    }
}

impl From<Bilinear> for Vec<Vec<Vec<f64>>> {
    fn from(b: Bilinear) -> Self {
        (0..b.m).map(|k| (0..b.n).map(|i| (0..b.n).map(|j| b.get(k, i, j)).collect()).collect()).collect()
    }
}

impl Bilinear {
    pub fn zero(m: usize, n: usize) -> Self {
        Bilinear { m, n, c: vec![0.0; m * n * n] }
    }

    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut b = Bilinear::zero(m, n);
        for k in 0..m {
            for i in 0..n {
                for j in 0..n {
                    b.c[(k * n + i) * n + j] = f(k, i, j);
                }
            }
        }
        b
    }

    pub fn target_dim(&self) -> usize {
        self.m
    }

    pub fn source_dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.c[(k * self.n + i) * self.n + j]
    }

    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.n;
        DVector::from_fn(self.m, |k, _| {
            let mut s = 0.0;
            for i in 0..n {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    s += self.c[(k * n + i) * n + j] * x[i] * y[j];
                }
            }
            s
        })
    }

    /// `max |c[k][i][j] + c[k][j][i]|`.
    pub fn skew_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for k in 0..self.m {
            for i in 0..self.n {
                for j in 0..self.n {
                    worst = worst.max((self.get(k, i, j) + self.get(k, j, i)).abs());
                }
            }
        }
        worst
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Bilinear { m: self.m, n: self.n, c: self.c.iter().map(|x| x * factor).collect() }
    }

    /// `max |self − other|` over structure constants.
    pub fn max_deviation(&self, other: &Bilinear) -> f64 {
        assert_eq!((self.m, self.n), (other.m, other.n));
        self.c.iter().zip(&other.c).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn set(&mut self, k: usize, i: usize, j: usize, value: f64) {
        self.c[(k * self.n + i) * self.n + j] = value;
    }

    /// For a bracket-like table (`m = n`) written in coordinates `c` with
    /// `u = P c`, the same map in the standard coordinates:
    /// `B(u, v) = P·D(P⁻¹u, P⁻¹v)`.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Bilinear {
        assert_eq!(self.m, self.n);
        assert_eq!((p.nrows(), p.ncols()), (self.n, self.n));
        let q = p.clone().try_inverse().expect("basis change must be invertible");
        let n = self.n;
        Bilinear::from_fn(n, n, |k, i, j| {
            let mut s = 0.0;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        s += p[(k, a)] * self.get(a, b, c) * q[(b, i)] * q[(c, j)];
                    }
                }
            }
            s
        })
    }

    /// `L ∘ self` for a linear `L: ℝᵐ → ℝᵖ`.
    pub fn compose_left(&self, l: &DMatrix<f64>) -> Bilinear {
        assert_eq!(l.ncols(), self.m);
        Bilinear::from_fn(l.nrows(), self.n, |p, i, j| (0..self.m).map(|k| l[(p, k)] * self.get(k, i, j)).sum())
    }
}

/// A Lie algebra `𝔤 ≅ ℝⁿ` given by its bracket.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Bilinear", into = "Bilinear")]
pub struct LieAlgebra {
    bracket: Bilinear,
}

impl LieAlgebra {
    /// Validates skewness and the Jacobi identity on basis triples.
    pub fn new(bracket: Bilinear) -> Result<Self, LieError> {
        if bracket.m != bracket.n {
            return Err(LieError::Shape("a bracket maps 𝔤 × 𝔤 → 𝔤".into()));
        }
        let a = LieAlgebra { bracket };
        let skew = a.bracket.skew_defect();
        if skew > 1e-12 {
            return Err(LieError::NotALieAlgebra(format!("bracket not skew (defect {skew:e})")));
        }
        let jacobi = a.jacobi_defect();
        if jacobi > 1e-9 {
            return Err(LieError::NotALieAlgebra(format!("Jacobi identity fails (defect {jacobi:e})")));
        }
        Ok(a)
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra { bracket: Bilinear::zero(n, n) }
    }

    /// Heisenberg algebra: `[e₁, e₂] = e₃`, `e₃` central.
    pub fn heisenberg() -> Self {
        let mut b = Bilinear::zero(3, 3);
        b.c[(2 * 3) * 3 + 1] = 1.0;
        b.c[(2 * 3 + 1) * 3] = -1.0;
        LieAlgebra { bracket: b }
    }

    /// 𝔰𝔲(2) in the basis `X_k = −(i/2)σ_k`: `[X_i, X_j] = ε_{ijk} X_k`.
    pub fn su2() -> Self {
        LieAlgebra { bracket: Bilinear::from_fn(3, 3, |k, i, j| levi_civita(i, j, k)) }
    }

    /// 𝔲(2) = ℝ ⊕ 𝔰𝔲(2) with coordinate 0 central.
    pub fn u2() -> Self {
        LieAlgebra {
            bracket: Bilinear::from_fn(4, 4, |k, i, j| if i == 0 || j == 0 || k == 0 { 0.0 } else { levi_civita(i - 1, j - 1, k - 1) }),
        }
    }

    pub fn dim(&self) -> usize {
        self.bracket.n
    }

    pub fn structure_constants(&self) -> &Bilinear {
        &self.bracket
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.bracket.eval(x, y)
    }

    /// Largest Jacobi defect over basis triples.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim();
        let e = |i: usize| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let s = self.bracket(&self.bracket(&x, &y), &z)
                        + self.bracket(&self.bracket(&y, &z), &x)
                        + self.bracket(&self.bracket(&z, &x), &y);
                    worst = worst.max(s.amax());
                }
            }
        }
        worst
    }

    /// Orthonormal basis of the center (columns), from the null space of
    /// `x ↦ ad x` stacked over the basis.
    pub fn center(&self) -> DMatrix<f64> {
        let n = self.dim();
        // Row block j, column i: coefficient vector of [e_i, e_j].
        let ad = DMatrix::from_fn(n * n, n, |r, i| self.bracket.get(r % n, i, r / n));
        null_space(&ad, 1e-10)
    }
}

impl TryFrom<Bilinear> for LieAlgebra {
    type Error = LieError;
    fn try_from(b: Bilinear) -> Result<Self, LieError> {
        LieAlgebra::new(b)
    }
}

impl From<LieAlgebra> for Bilinear {
    fn from(a: LieAlgebra) -> Self {
        a.bracket
    }
}

impl TryFrom<Bilinear> for LieAlgebraCocycle {
    type Error = LieError;
    fn try_from(b: Bilinear) -> Result<Self, LieError> {
        LieAlgebraCocycle::new(b)
    }
}

impl From<LieAlgebraCocycle> for Bilinear {
    fn from(w: LieAlgebraCocycle) -> Self {
        w.table
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Orthonormal basis of `{x : A x = 0}` via the SVD of `AᵀA`.
pub(crate) fn null_space(a: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let n = a.ncols();
    let ata = a.transpose() * a;
    let eig = nalgebra::SymmetricEigen::new(ata);
    let scale = eig.eigenvalues.amax().max(1.0);
    let cols: Vec<DVector<f64>> = (0..n)
        .filter(|&i| eig.eigenvalues[i].abs() <= tol * scale)
        .map(|i| eig.eigenvectors.column(i).into_owned())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// A continuous skew bilinear `ω: 𝔤 × 𝔤 → 𝔷`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Bilinear", into = "Bilinear")]
pub struct LieAlgebraCocycle {
    table: Bilinear,
}

impl LieAlgebraCocycle {
    /// Validates skewness.
    pub fn new(table: Bilinear) -> Result<Self, LieError> {
        let skew = table.skew_defect();
        if skew > 1e-12 {
            return Err(LieError::NotACocycle(format!("ω not skew (defect {skew:e})")));
        }
        Ok(LieAlgebraCocycle { table })
    }

    /// `ω((x₁, x₂), (y₁, y₂)) = x₁y₂ − x₂y₁` on ℝ².
    pub fn symplectic_r2() -> Self {
        LieAlgebraCocycle { table: Bilinear::from_fn(1, 2, |_, i, j| levi_civita(i, j, 2)) }
    }

    /// `ω = b ∘ [·,·]` for linear `b: 𝔤 → 𝔷` (an `m×n` matrix).
    pub fn coboundary(algebra: &LieAlgebra, b: &DMatrix<f64>) -> Self {
        LieAlgebraCocycle { table: algebra.bracket.compose_left(b) }
    }

    pub fn table(&self) -> &Bilinear {
        &self.table
    }

    pub fn source_dim(&self) -> usize {
        self.table.n
    }

    pub fn target_dim(&self) -> usize {
        self.table.m
    }

    pub fn eval(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.table.eval(x, y)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        LieAlgebraCocycle { table: self.table.scaled(factor) }
    }

    /// Largest `|ω([x,y],z) + ω([y,z],x) + ω([z,x],y)|` over basis triples.
    pub fn cocycle_defect(&self, algebra: &LieAlgebra) -> Result<f64, LieError> {
        let n = algebra.dim();
        if n != self.source_dim() {
            return Err(LieError::Shape("ω and 𝔤 have different dimensions".into()));
        }
        let e = |i: usize| DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 });
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let s = self.eval(&algebra.bracket(&x, &y), &z)
                        + self.eval(&algebra.bracket(&y, &z), &x)
                        + self.eval(&algebra.bracket(&z, &x), &y);
                    worst = worst.max(s.amax());
                }
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_algebras_are_lie() {
        for a in [LieAlgebra::heisenberg(), LieAlgebra::su2(), LieAlgebra::u2(), LieAlgebra::abelian(2)] {
            assert!(LieAlgebra::new(a.structure_constants().clone()).is_ok());
        }
        let bad = Bilinear::from_fn(2, 2, |_, i, j| if i == j { 1.0 } else { 0.0 });
        assert!(LieAlgebra::new(bad).is_err());
    }

    #[test]
    fn centers() {
        let z = LieAlgebra::heisenberg().center();
        assert_eq!(z.ncols(), 1);
        assert!((z[(2, 0)].abs() - 1.0).abs() < 1e-12);
        assert_eq!(LieAlgebra::su2().center().ncols(), 0);
        assert_eq!(LieAlgebra::u2().center().ncols(), 1);
        assert_eq!(LieAlgebra::abelian(3).center().ncols(), 3);
    }

    #[test]
    fn cocycles() {
        let w = LieAlgebraCocycle::symplectic_r2();
        let x = DVector::from_vec(vec![1.0, 0.0]);
        let y = DVector::from_vec(vec![0.0, 1.0]);
        assert_eq!(w.eval(&x, &y)[0], 1.0);
        assert_eq!(w.cocycle_defect(&LieAlgebra::abelian(2)).unwrap(), 0.0);
        let b = DMatrix::from_row_slice(1, 3, &[0.3, -1.0, 2.0]);
        let cob = LieAlgebraCocycle::coboundary(&LieAlgebra::su2(), &b);
        assert!(cob.cocycle_defect(&LieAlgebra::su2()).unwrap() < 1e-15);
        assert!(LieAlgebraCocycle::new(Bilinear::from_fn(1, 2, |_, _, _| 1.0)).is_err());
    }

    #[test]
    fn json_shape() {
        let w = LieAlgebraCocycle::symplectic_r2();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "[[[0.0,1.0],[-1.0,0.0]]]");
        let back: LieAlgebraCocycle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Bilinear>("[[[0.0,1.0],[1.0]]]").is_err());
    }
}
