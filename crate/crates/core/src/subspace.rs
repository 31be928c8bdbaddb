use std::sync::Arc;

use crate::field::PrimeField;
use crate::linalg::VecSpace;

/// A graded subspace of a module with homogeneous basis: one echelon basis
/// per degree, each made of full-length vectors supported on that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    field: PrimeField,
    degrees: Arc<Vec<usize>>,
    parts: Vec<VecSpace>,
}

impl GradedSubspace {
    pub fn zero(field: PrimeField, degrees: Arc<Vec<usize>>, group_order: usize) -> Self {
        let n = degrees.len();
        GradedSubspace { field, degrees, parts: vec![VecSpace::zero(n); group_order] }
    }

    pub fn full(field: PrimeField, degrees: Arc<Vec<usize>>, group_order: usize) -> Self {
        let mut s = Self::zero(field, degrees, group_order);
        let n = s.ambient();
        for i in 0..n {
            let mut v = vec![0; n];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }

    /// The smallest graded subspace containing every homogeneous component
    /// of every vector.
    pub fn hull<I, V>(field: PrimeField, degrees: Arc<Vec<usize>>, group_order: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[u32]>,
    {
        let mut s = Self::zero(field, degrees, group_order);
        for v in vectors {
            s.insert(v.as_ref());
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.degrees.len()
    }

    pub fn ambient_degrees(&self) -> &Arc<Vec<usize>> {
        &self.degrees
    }

    pub fn group_order(&self) -> usize {
        self.parts.len()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(VecSpace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(VecSpace::is_zero)
    }

    pub fn part(&self, g: usize) -> &VecSpace {
        &self.parts[g]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(VecSpace::dim).collect()
    }

    /// Splits `v` into homogeneous components (indexed by degree).
    pub fn components(&self, v: &[u32]) -> Vec<(usize, Vec<u32>)> {
        split_components(&self.degrees, self.parts.len(), v)
    }

    /// Inserts every homogeneous component of `v`; returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut grew = false;
        for (g, c) in self.components(v) {
            grew |= self.parts[g].insert(&c, self.field);
        }
        grew
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.components(v).iter().all(|(g, c)| self.parts[*g].contains(c, self.field))
    }

    /// Homogeneous basis in degree order, with degrees.
    pub fn basis(&self) -> Vec<(usize, Vec<u32>)> {
        let mut out = Vec::with_capacity(self.dim());
        for (g, part) in self.parts.iter().enumerate() {
            for v in part.basis() {
                out.push((g, v.clone()));
            }
        }
        out
    }

    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis().into_iter().map(|(_, v)| v).collect()
    }

    pub fn total(&self) -> VecSpace {
        let mut s = VecSpace::zero(self.ambient());
        for part in &self.parts {
            for v in part.basis() {
                s.insert(v, self.field);
            }
        }
        s
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        let mut s = self.clone();
        for (g, part) in other.parts.iter().enumerate() {
            for v in part.basis() {
                s.parts[g].insert(v, self.field);
            }
        }
        s
    }

    pub fn intersect(&self, other: &GradedSubspace) -> GradedSubspace {
        let parts = self
            .parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.intersect(b, self.field))
            .collect();
        GradedSubspace { field: self.field, degrees: self.degrees.clone(), parts }
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subspace_of(b, self.field))
    }

    pub fn from_parts(field: PrimeField, degrees: Arc<Vec<usize>>, parts: Vec<VecSpace>) -> Self {
        GradedSubspace { field, degrees, parts }
    }
}

pub(crate) fn split_components(degrees: &[usize], group_order: usize, v: &[u32]) -> Vec<(usize, Vec<u32>)> {
    let mut comps: Vec<Option<Vec<u32>>> = vec![None; group_order];
    for (i, &x) in v.iter().enumerate() {
        if x != 0 {
            let c = comps[degrees[i]].get_or_insert_with(|| vec![0; v.len()]);
            c[i] = x;
        }
    }
    comps.into_iter().enumerate().filter_map(|(g, c)| c.map(|c| (g, c))).collect()
}
