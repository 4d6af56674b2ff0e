use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::snf::{IntMatrix, Subquotient};
use super::{AlgebraError, FiniteGroup};

/// A finitely generated abelian group `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` in
/// invariant-factor form. Elements are coordinate vectors: the free
/// coordinates first, then one coordinate per torsion factor reduced into
/// `[0, d_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AbelianSpec", into = "AbelianSpec")]
pub struct FgAbelianGroup {
    rank: usize,
    torsion: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct AbelianSpec {
    #[serde(default)]
    rank: usize,
    #[serde(default)]
    torsion: Vec<i64>,
}

impl TryFrom<AbelianSpec> for FgAbelianGroup {
    type Error = AlgebraError;
    fn try_from(s: AbelianSpec) -> Result<Self, Self::Error> {
        FgAbelianGroup::new(s.rank, s.torsion)
    }
}

impl From<FgAbelianGroup> for AbelianSpec {
    fn from(g: FgAbelianGroup) -> Self {
        AbelianSpec {
            rank: g.rank,
            torsion: g.torsion,
        }
    }
}

pub type Element = Vec<i64>;

impl FgAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<i64>) -> Result<Self, AlgebraError> {
        if let Some(&d) = torsion.iter().find(|&&d| d < 2) {
            return Err(AlgebraError::InvalidInvariantFactor(d));
        }
        for w in torsion.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(AlgebraError::DivisibilityChain(w[0], w[1]));
            }
        }
        Ok(FgAbelianGroup { rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup { rank: 0, torsion: vec![] }
    }

    pub fn integers() -> Self {
        FgAbelianGroup { rank: 1, torsion: vec![] }
    }

    /// `Z/n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: i64) -> Result<Self, AlgebraError> {
        match n {
            1 => Ok(Self::trivial()),
            n => Self::new(0, vec![n]),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    /// Number of coordinates of an element.
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Modulus of coordinate `i`, `None` for free coordinates.
    pub fn modulus(&self, i: usize) -> Option<i64> {
        if i < self.rank {
            None
        } else {
            Some(self.torsion[i - self.rank])
        }
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|&d| d as u64).product())
    }

    pub fn zero(&self) -> Element {
        vec![0; self.ngens()]
    }

    pub fn normalize(&self, x: &mut [i64]) {
        for (i, xi) in x.iter_mut().enumerate().skip(self.rank) {
            *xi = xi.rem_euclid(self.torsion[i - self.rank]);
        }
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Element {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&mut out);
        out
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Element {
        let mut out: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        self.normalize(&mut out);
        out
    }

    pub fn neg(&self, a: &[i64]) -> Element {
        let mut out: Vec<i64> = a.iter().map(|x| -x).collect();
        self.normalize(&mut out);
        out
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Element {
        let mut out: Vec<i64> = a.iter().map(|x| k * x).collect();
        self.normalize(&mut out);
        out
    }

    pub fn is_zero(&self, a: &[i64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn is_normalized(&self, a: &[i64]) -> bool {
        a.len() == self.ngens()
            && a.iter()
                .enumerate()
                .skip(self.rank)
                .all(|(i, &x)| (0..self.torsion[i - self.rank]).contains(&x))
    }

    /// Dense index of an element of a finite group (mixed radix, last coordinate fastest).
    pub fn index_of(&self, a: &[i64]) -> usize {
        debug_assert!(self.is_finite());
        a.iter()
            .zip(&self.torsion)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x.rem_euclid(d) as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        debug_assert!(self.is_finite());
        let mut out = vec![0; self.torsion.len()];
        for (slot, &d) in out.iter_mut().zip(&self.torsion).rev() {
            *slot = (index % d as usize) as i64;
            index /= d as usize;
        }
        out
    }

    /// All elements of a finite group in index order.
    pub fn elements(&self) -> Result<Vec<Element>, AlgebraError> {
        let n = self.order().ok_or(AlgebraError::Infinite)? as usize;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Multiplication table of a finite group; index 0 is the zero element.
    pub fn to_finite_group(&self) -> Result<FiniteGroup, AlgebraError> {
        let elems = self.elements()?;
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| self.index_of(&self.add(a, b))).collect())
            .collect();
        Ok(FiniteGroup::from_table_unchecked(table))
    }

    /// Relation lattice of the presentation: one column `d_j e_j` per torsion coordinate.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.ngens();
        let cols: Vec<Vec<BigInt>> = self
            .torsion
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let mut c = vec![BigInt::zero(); n];
                c[self.rank + j] = BigInt::from(d);
                c
            })
            .collect();
        IntMatrix::from_columns(n, &cols)
    }

    /// Builds the canonical form of `Z^n / span(relations)`.
    pub fn from_relations(n: usize, relations: &IntMatrix) -> Result<Self, AlgebraError> {
        let sq = Subquotient::compute(&IntMatrix::identity(n), relations);
        Self::from_subquotient(&sq)
    }

    pub(crate) fn from_subquotient(sq: &Subquotient) -> Result<Self, AlgebraError> {
        let torsion = sq
            .torsion
            .iter()
            .map(|d| d.to_i64().ok_or(AlgebraError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(sq.rank, torsion)
    }
}

/// A homomorphism of finitely generated abelian groups; column `j` of
/// `matrix` is the image of the `j`-th source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianHom {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: Vec<Vec<i64>>,
}

impl AbelianHom {
    /// `matrix` has `target.ngens()` rows and `source.ngens()` columns.
    pub fn new(
        source: FgAbelianGroup,
        target: FgAbelianGroup,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self, AlgebraError> {
        if matrix.len() != target.ngens() || matrix.iter().any(|r| r.len() != source.ngens()) {
            return Err(AlgebraError::Shape(format!(
                "homomorphism matrix must be {}x{}",
                target.ngens(),
                source.ngens()
            )));
        }
        let h = AbelianHom { source, target, matrix };
        if let Some(j) = h.ill_defined_generator() {
            return Err(AlgebraError::IllDefinedHom(j));
        }
        Ok(h)
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        let n = g.ngens();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        AbelianHom {
            source: g.clone(),
            target: g.clone(),
            matrix,
        }
    }

    pub fn zero(source: &FgAbelianGroup, target: &FgAbelianGroup) -> Self {
        AbelianHom {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![vec![0; source.ngens()]; target.ngens()],
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// First torsion generator whose order does not kill its image.
    fn ill_defined_generator(&self) -> Option<usize> {
        (self.source.rank..self.source.ngens()).find(|&j| {
            let d = self.source.torsion[j - self.source.rank];
            let img: Vec<i64> = self.matrix.iter().map(|row| d * row[j]).collect();
            let mut img = img;
            self.target.normalize(&mut img);
            !self.target.is_zero(&img)
        })
    }

    pub fn apply(&self, x: &[i64]) -> Element {
        let mut out: Vec<i64> = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        self.target.normalize(&mut out);
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AbelianHom) -> Result<AbelianHom, AlgebraError> {
        if other.target != self.source {
            return Err(AlgebraError::Mismatch("composition of homomorphisms"));
        }
        let cols = other.source.ngens();
        let matrix = self
            .matrix
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|j| row.iter().zip(&other.matrix).map(|(a, r)| a * r[j]).sum())
                    .collect()
            })
            .collect();
        AbelianHom::new(other.source.clone(), self.target.clone(), matrix)
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.matrix)
    }
}

/// JSON form of a homomorphism: `{"matrix":[[...]]}`, optionally carrying
/// its source and target.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<FgAbelianGroup>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<FgAbelianGroup>,
    pub matrix: Vec<Vec<i64>>,
}

impl HomSpec {
    pub fn build(
        &self,
        source: Option<&FgAbelianGroup>,
        target: Option<&FgAbelianGroup>,
    ) -> Result<AbelianHom, AlgebraError> {
        let s = source
            .or(self.source.as_ref())
            .ok_or(AlgebraError::Missing("homomorphism source"))?;
        let t = target
            .or(self.target.as_ref())
            .ok_or(AlgebraError::Missing("homomorphism target"))?;
        AbelianHom::new(s.clone(), t.clone(), self.matrix.clone())
    }
}

impl From<&AbelianHom> for HomSpec {
    fn from(h: &AbelianHom) -> Self {
        HomSpec {
            source: Some(h.source.clone()),
            target: Some(h.target.clone()),
            matrix: h.matrix.clone(),
        }
    }
}

/// An action of a finite group on a finitely generated abelian group by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GAction {
    group: FiniteGroup,
    module: FgAbelianGroup,
    act: Vec<AbelianHom>,
    trivial: bool,
}

impl GAction {
    pub fn trivial(group: &FiniteGroup, module: &FgAbelianGroup) -> Self {
        GAction {
            group: group.clone(),
            module: module.clone(),
            act: vec![AbelianHom::identity(module); group.order()],
            trivial: true,
        }
    }

    pub fn new(
        group: &FiniteGroup,
        module: &FgAbelianGroup,
        act: Vec<AbelianHom>,
    ) -> Result<Self, AlgebraError> {
        if act.len() != group.order() {
            return Err(AlgebraError::Shape("one automorphism per group element".into()));
        }
        if act.iter().any(|h| h.source != *module || h.target != *module) {
            return Err(AlgebraError::Mismatch("action must be by endomorphisms of the module"));
        }
        let trivial = act.iter().all(|h| *h == AbelianHom::identity(module));
        let a = GAction {
            group: group.clone(),
            module: module.clone(),
            act,
            trivial,
        };
        if let Some(v) = a.violations().into_iter().next() {
            return Err(AlgebraError::InvalidAction(v));
        }
        Ok(a)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &FgAbelianGroup {
        &self.module
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn matrix(&self, g: usize) -> &[Vec<i64>] {
        self.act[g].matrix()
    }

    pub fn apply(&self, g: usize, a: &[i64]) -> Element {
        if self.trivial {
            return a.to_vec();
        }
        self.act[g].apply(a)
    }

    /// Checks `act[0] = id` and `act[i] ∘ act[j] = act[ij]` on generators.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.module.ngens();
        let basis: Vec<Element> = (0..n)
            .map(|k| {
                let mut e = self.module.zero();
                e[k] = 1;
                self.module.normalize(&mut e);
                e
            })
            .collect();
        if basis.iter().any(|e| self.act[0].apply(e) != *e) {
            out.push("unit acts nontrivially".to_string());
        }
        let g = &self.group;
        for i in 0..g.order() {
            for j in 0..g.order() {
                let ij = g.mul(i, j);
                if basis
                    .iter()
                    .any(|e| self.act[i].apply(&self.act[j].apply(e)) != self.act[ij].apply(e))
                {
                    out.push(format!("act[{i}]∘act[{j}] ≠ act[{ij}]"));
                }
            }
        }
        out
    }
}

/// Kernel, image and cokernel of a homomorphism, each in invariant-factor
/// form with explicit lifts of the canonical generators.
#[derive(Clone, Debug)]
pub struct HomDecomposition {
    pub kernel: FgAbelianGroup,
    pub image: FgAbelianGroup,
    pub cokernel: FgAbelianGroup,
    /// Source-coordinate lifts of the kernel generators.
    pub kernel_generators: Vec<Vec<i64>>,
    /// Target-coordinate lifts of the image generators.
    pub image_generators: Vec<Vec<i64>>,
    /// Target-coordinate lifts of the cokernel generators.
    pub cokernel_generators: Vec<Vec<i64>>,
    cokernel_sq: Subquotient,
}

impl HomDecomposition {
    /// Class of a target element in the cokernel, in canonical coordinates.
    pub fn cokernel_class(&self, z: &[i64]) -> Element {
        let v: Vec<BigInt> = z.iter().map(|&x| BigInt::from(x)).collect();
        self.cokernel_sq
            .coordinates(&v)
            .expect("every target element lies in the ambient lattice")
            .iter()
            .map(|x| x.to_i64().expect("cokernel coordinate fits in i64"))
            .collect()
    }
}

fn lifts_to_i64(sq: &Subquotient) -> Result<Vec<Vec<i64>>, AlgebraError> {
    sq.lifts
        .iter()
        .map(|l| l.iter().map(|x| x.to_i64().ok_or(AlgebraError::Overflow)).collect())
        .collect()
}

/// Kernel, image and cokernel via Smith normal forms of relation matrices.
pub fn hom_decompose(h: &AbelianHom) -> Result<HomDecomposition, AlgebraError> {
    let m = h.to_int_matrix();
    let target_rel = h.target.relation_matrix();
    let source_rel = h.source.relation_matrix();
    let n = h.source.ngens();
    let t = h.target.ngens();

    // Preimage lattice of ker: x with M x ∈ span(target relations).
    let joint = m.hcat(&target_rel);
    let ker = super::snf::kernel_basis(&joint);
    let cols: Vec<Vec<BigInt>> = (0..ker.cols())
        .map(|j| (0..n).map(|i| ker.get(i, j).clone()).collect())
        .collect();
    let kernel_lattice = IntMatrix::from_columns(n, &cols);
    let kernel_sq = Subquotient::compute(&kernel_lattice, &source_rel);

    let image_sq = Subquotient::compute(&joint, &target_rel);
    let cokernel_sq = Subquotient::compute(&IntMatrix::identity(t), &joint);

    Ok(HomDecomposition {
        kernel: FgAbelianGroup::from_subquotient(&kernel_sq)?,
        image: FgAbelianGroup::from_subquotient(&image_sq)?,
        cokernel: FgAbelianGroup::from_subquotient(&cokernel_sq)?,
        kernel_generators: lifts_to_i64(&kernel_sq)?,
        image_generators: lifts_to_i64(&image_sq)?,
        cokernel_generators: lifts_to_i64(&cokernel_sq)?,
        cokernel_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> FgAbelianGroup {
        FgAbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn invariant_factor_validation() {
        assert!(FgAbelianGroup::new(0, vec![2, 4]).is_ok());
        assert!(FgAbelianGroup::new(0, vec![4, 2]).is_err());
        assert!(FgAbelianGroup::new(0, vec![1]).is_err());
    }

    #[test]
    fn element_indexing_round_trips() {
        let g = FgAbelianGroup::new(0, vec![2, 6]).unwrap();
        for i in 0..12 {
            assert_eq!(g.index_of(&g.element_at(i)), i);
        }
        assert_eq!(g.element_at(0), vec![0, 0]);
    }

    #[test]
    fn ill_defined_hom_rejected() {
        // Z/2 -> Z/4, 1 ↦ 1 is not well defined.
        assert!(AbelianHom::new(z(2), z(4), vec![vec![1]]).is_err());
        assert!(AbelianHom::new(z(2), z(4), vec![vec![2]]).is_ok());
        // Z/2 -> Z must be zero.
        assert!(AbelianHom::new(z(2), FgAbelianGroup::integers(), vec![vec![1]]).is_err());
    }

    #[test]
    fn decompose_z2_into_z4() {
        let h = AbelianHom::new(z(2), z(4), vec![vec![2]]).unwrap();
        let d = hom_decompose(&h).unwrap();
        assert_eq!(d.kernel, FgAbelianGroup::trivial());
        assert_eq!(d.image, z(2));
        assert_eq!(d.cokernel, z(2));
        assert_eq!(d.cokernel_class(&[2]), vec![0]);
        assert_eq!(d.cokernel_class(&[3]), vec![1]);
    }

    #[test]
    fn decompose_identity_on_z6() {
        let d = hom_decompose(&AbelianHom::identity(&z(6))).unwrap();
        assert_eq!(d.kernel, FgAbelianGroup::trivial());
        assert_eq!(d.cokernel, FgAbelianGroup::trivial());
        assert_eq!(d.image, z(6));
    }

    #[test]
    fn decompose_doubling_on_integers() {
        let zz = FgAbelianGroup::integers();
        let h = AbelianHom::new(zz.clone(), zz.clone(), vec![vec![2]]).unwrap();
        let d = hom_decompose(&h).unwrap();
        assert_eq!(d.kernel, FgAbelianGroup::trivial());
        assert_eq!(d.image, zz);
        assert_eq!(d.cokernel, z(2));
    }

    #[test]
    fn decompose_zero_map_has_full_kernel() {
        let s = FgAbelianGroup::new(1, vec![2]).unwrap();
        let h = AbelianHom::zero(&s, &z(3));
        let d = hom_decompose(&h).unwrap();
        assert_eq!(d.kernel, s);
        assert_eq!(d.image, FgAbelianGroup::trivial());
        assert_eq!(d.cokernel, z(3));
    }

    #[test]
    fn action_checks_composition() {
        // Z/2 acting on Z by negation.
        let g = FiniteGroup::cyclic(2).unwrap();
        let zz = FgAbelianGroup::integers();
        let neg = AbelianHom::new(zz.clone(), zz.clone(), vec![vec![-1]]).unwrap();
        let act = GAction::new(&g, &zz, vec![AbelianHom::identity(&zz), neg.clone()]).unwrap();
        assert_eq!(act.apply(1, &[5]), vec![-5]);
        // Z/3 cannot act by negation.
        let g3 = FiniteGroup::cyclic(3).unwrap();
        assert!(GAction::new(&g3, &zz, vec![AbelianHom::identity(&zz), neg.clone(), neg]).is_err());
    }
}
