use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{TwoGroupError, MAX_MORPHISMS};

/// A finite 2-group given by all of its structure tables. Objects and
/// morphisms are dense indices; object 0 is the unit and morphism 0 its
/// identity. Binary tables are row-major, the associator is indexed by
/// `(x·n + y)·n + z` over object triples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGroup {
    pub objects: usize,
    pub morphisms: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub identity: Vec<usize>,
    /// `(m, n) ↦ m ∘ n`, defined exactly on pairs with `s(m) = t(n)`.
    #[serde(with = "compose_serde")]
    pub compose: BTreeMap<(usize, usize), usize>,
    pub tensor_objects: Vec<usize>,
    pub tensor_morphisms: Vec<usize>,
    pub inverse_objects: Vec<usize>,
    pub inverse_morphisms: Vec<usize>,
    pub associator: Vec<usize>,
}

mod compose_serde {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, usize), usize>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[usize; 3]> = m.iter().map(|(&(a, b), &c)| [a, b, c]).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, usize), usize>, D::Error> {
        let v: Vec<[usize; 3]> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|[a, b, c]| ((a, b), c)).collect())
    }
}

/// Names of the structure tables, for targeted mutation and reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table {
    Source,
    Target,
    Identity,
    Compose,
    TensorObjects,
    TensorMorphisms,
    InverseObjects,
    InverseMorphisms,
    Associator,
}

impl Table {
    pub const ALL: [Table; 9] = [
        Table::Source,
        Table::Target,
        Table::Identity,
        Table::Compose,
        Table::TensorObjects,
        Table::TensorMorphisms,
        Table::InverseObjects,
        Table::InverseMorphisms,
        Table::Associator,
    ];

    /// Axiom class whose checks govern this table.
    pub fn axiom_class(self) -> super::AxiomClass {
        use super::AxiomClass::*;
        match self {
            Table::Source | Table::Target | Table::Identity | Table::Compose => Category,
            Table::TensorObjects | Table::TensorMorphisms => Tensor,
            Table::InverseObjects | Table::InverseMorphisms => Inversion,
            Table::Associator => Associator,
        }
    }

    /// Whether entries of this table are objects (otherwise morphisms).
    pub fn holds_objects(self) -> bool {
        matches!(self, Table::Source | Table::Target | Table::TensorObjects | Table::InverseObjects)
    }
}

/// A morphism of 2-groups: a functor on objects and morphisms together
/// with `F₂(x, y): F(x) ⊗ F(y) → F(x ⊗ y)` indexed by `x·n + y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGroupMorphism {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
    pub f2: Vec<usize>,
}

impl TwoGroupMorphism {
    /// A strict monoidal functor (`F₂` identities in the target).
    pub fn strict(objects: Vec<usize>, morphisms: Vec<usize>, target: &TwoGroup) -> Self {
        let n = objects.len();
        let mut f2 = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let fx = objects[x];
                let fy = objects[y];
                f2.push(target.identity[target.tensor_obj(fx, fy)]);
            }
        }
        TwoGroupMorphism { objects, morphisms, f2 }
    }
}

impl TwoGroup {
    /// Assembles a 2-group from structure maps. The composition table is
    /// filled on every pair with `s(m) = t(n)`.
    #[allow(clippy::too_many_arguments)]
    pub fn assemble(
        objects: usize,
        morphisms: usize,
        source: impl Fn(usize) -> usize,
        target: impl Fn(usize) -> usize,
        identity: impl Fn(usize) -> usize,
        compose: impl Fn(usize, usize) -> usize,
        tensor_objects: impl Fn(usize, usize) -> usize,
        tensor_morphisms: impl Fn(usize, usize) -> usize,
        inverse_objects: impl Fn(usize) -> usize,
        inverse_morphisms: impl Fn(usize) -> usize,
        associator: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<TwoGroup, TwoGroupError> {
        if morphisms > MAX_MORPHISMS {
            return Err(TwoGroupError::TooLarge(morphisms));
        }
        let source: Vec<usize> = (0..morphisms).map(&source).collect();
        let target: Vec<usize> = (0..morphisms).map(&target).collect();
        let mut by_target: Vec<Vec<usize>> = vec![Vec::new(); objects];
        for (n, &t) in target.iter().enumerate() {
            by_target[t].push(n);
        }
        let mut table = BTreeMap::new();
        for m in 0..morphisms {
            for &n in &by_target[source[m]] {
                table.insert((m, n), compose(m, n));
            }
        }
        let mut tensor_o = Vec::with_capacity(objects * objects);
        for x in 0..objects {
            for y in 0..objects {
                tensor_o.push(tensor_objects(x, y));
            }
        }
        let mut tensor_m = Vec::with_capacity(morphisms * morphisms);
        for m in 0..morphisms {
            for n in 0..morphisms {
                tensor_m.push(tensor_morphisms(m, n));
            }
        }
        let mut assoc = Vec::with_capacity(objects.pow(3));
        for x in 0..objects {
            for y in 0..objects {
                for z in 0..objects {
                    assoc.push(associator(x, y, z));
                }
            }
        }
        Ok(TwoGroup {
            objects,
            morphisms,
            source,
            target,
            identity: (0..objects).map(identity).collect(),
            compose: table,
            tensor_objects: tensor_o,
            tensor_morphisms: tensor_m,
            inverse_objects: (0..objects).map(inverse_objects).collect(),
            inverse_morphisms: (0..morphisms).map(inverse_morphisms).collect(),
            associator: assoc,
        })
    }

    pub fn s(&self, m: usize) -> usize {
        self.source[m]
    }

    pub fn t(&self, m: usize) -> usize {
        self.target[m]
    }

    pub fn id(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn tensor_obj(&self, x: usize, y: usize) -> usize {
        self.tensor_objects[x * self.objects + y]
    }

    pub fn tensor_mor(&self, m: usize, n: usize) -> usize {
        self.tensor_morphisms[m * self.morphisms + n]
    }

    pub fn inv_obj(&self, x: usize) -> usize {
        self.inverse_objects[x]
    }

    pub fn inv_mor(&self, m: usize) -> usize {
        self.inverse_morphisms[m]
    }

    pub fn alpha(&self, x: usize, y: usize, z: usize) -> usize {
        self.associator[(x * self.objects + y) * self.objects + z]
    }

    /// `m ∘ n`; a structured error when the pair is not composable.
    pub fn comp(&self, m: usize, n: usize) -> Result<usize, TwoGroupError> {
        self.compose.get(&(m, n)).copied().ok_or(TwoGroupError::NotComposable(m, n))
    }

    pub(crate) fn comp_opt(&self, m: usize, n: usize) -> Option<usize> {
        self.compose.get(&(m, n)).copied()
    }

    /// Objects isomorphic to the unit.
    pub fn unit_class(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.morphisms).filter(|&m| self.source[m] == 0).map(|m| self.target[m]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn table_len(&self, table: Table) -> usize {
        match table {
            Table::Source => self.source.len(),
            Table::Target => self.target.len(),
            Table::Identity => self.identity.len(),
            Table::Compose => self.compose.len(),
            Table::TensorObjects => self.tensor_objects.len(),
            Table::TensorMorphisms => self.tensor_morphisms.len(),
            Table::InverseObjects => self.inverse_objects.len(),
            Table::InverseMorphisms => self.inverse_morphisms.len(),
            Table::Associator => self.associator.len(),
        }
    }

    /// Number of admissible values for entries of `table`.
    pub fn table_range(&self, table: Table) -> usize {
        if table.holds_objects() {
            self.objects
        } else {
            self.morphisms
        }
    }

    pub fn entry(&self, table: Table, i: usize) -> usize {
        match table {
            Table::Compose => *self.compose.values().nth(i).expect("entry index in range"),
            _ => self.table_slice(table)[i],
        }
    }

    pub fn set_entry(&mut self, table: Table, i: usize, value: usize) {
        match table {
            Table::Compose => *self.compose.values_mut().nth(i).expect("entry index in range") = value,
            Table::Source => self.source[i] = value,
            Table::Target => self.target[i] = value,
            Table::Identity => self.identity[i] = value,
            Table::TensorObjects => self.tensor_objects[i] = value,
            Table::TensorMorphisms => self.tensor_morphisms[i] = value,
            Table::InverseObjects => self.inverse_objects[i] = value,
            Table::InverseMorphisms => self.inverse_morphisms[i] = value,
            Table::Associator => self.associator[i] = value,
        }
    }

    fn table_slice(&self, table: Table) -> &[usize] {
        match table {
            Table::Source => &self.source,
            Table::Target => &self.target,
            Table::Identity => &self.identity,
            Table::TensorObjects => &self.tensor_objects,
            Table::TensorMorphisms => &self.tensor_morphisms,
            Table::InverseObjects => &self.inverse_objects,
            Table::InverseMorphisms => &self.inverse_morphisms,
            Table::Associator => &self.associator,
            Table::Compose => unreachable!("composition is keyed by pairs"),
        }
    }
}
