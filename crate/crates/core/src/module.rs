//! Graded left modules with homogeneous bases.
//!
//! Right modules over `A` are modelled as left modules over `A^op`: a
//! homogeneous vector of degree `d` in the right module has degree `d^{-1}`
//! in the corresponding left `A^op`-module, and the right shift `(σ)M`
//! corresponds to the left shift by `σ^{-1}`.

use std::sync::{Arc, OnceLock};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::FiniteGroup;
use crate::hom::Presentation;
use crate::linalg::{unit_vector, Matrix, SparseMatrix};
use crate::subspace::GradedSubspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    degrees: Arc<Vec<usize>>,
    // action[r] has row m equal to b_r . v_m
    action: Arc<Vec<SparseMatrix>>,
    presentation: Arc<OnceLock<Presentation>>,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule").field("dim", &self.dim()).field("degrees", &self.degrees).finish()
    }
}

impl GradedModule {
    /// Builds and validates a module from dense action matrices, one per
    /// basis element of the algebra.
    pub fn new(algebra: Arc<GradedAlgebra>, degrees: Vec<usize>, action: &[Matrix]) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::Validation("need one action matrix per algebra basis element".into()));
        }
        let n = degrees.len();
        if action.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::Validation("action matrix has the wrong size".into()));
        }
        let m = Self::from_sparse(algebra, degrees, action.iter().map(SparseMatrix::from_dense).collect());
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn from_sparse(algebra: Arc<GradedAlgebra>, degrees: Vec<usize>, action: Vec<SparseMatrix>) -> Self {
        GradedModule {
            algebra,
            degrees: Arc::new(degrees),
            action: Arc::new(action),
            presentation: Arc::new(OnceLock::new()),
        }
    }

    /// Checks grading compatibility, the unit axiom and associativity on
    /// basis pairs.
    pub fn validate(&self) -> Result<()> {
        let a = &self.algebra;
        let g = a.group();
        let n = self.dim();
        for r in 0..a.dim() {
            for m in 0..n {
                for &(k, _) in self.action[r].row(m) {
                    if self.degrees[k as usize] != g.mul(a.degrees()[r], self.degrees[m]) {
                        return Err(Error::Validation(format!("module grading violated by b{r} on v{m}")));
                    }
                }
            }
        }
        for m in 0..n {
            let v = unit_vector(n, m);
            if self.act(a.unit(), &v) != v {
                return Err(Error::Validation("unit does not act as identity".into()));
            }
        }
        for r in 0..a.dim() {
            for s in 0..a.dim() {
                let mut rs = vec![0; a.dim()];
                for &(k, c) in a.product_row(r, s) {
                    rs[k as usize] = c;
                }
                for m in 0..n {
                    let v = unit_vector(n, m);
                    let lhs = self.act(&rs, &v);
                    let rhs = self.act_basis(r, &self.act_basis(s, &v));
                    if lhs != rhs {
                        return Err(Error::Validation(format!("module associativity fails at (b{r}, b{s}, v{m})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn left_regular(algebra: &Arc<GradedAlgebra>) -> Self {
        let n = algebra.dim();
        let action = (0..n)
            .map(|r| {
                let rows = (0..n).map(|m| algebra.product_row(r, m).to_vec()).collect();
                SparseMatrix::from_rows(n, rows)
            })
            .collect();
        Self::from_sparse(algebra.clone(), algebra.degrees().to_vec(), action)
    }

    /// The right regular module, as the left regular module of `A^op`.
    pub fn right_regular(algebra: &Arc<GradedAlgebra>) -> Self {
        Self::left_regular(&algebra.opposite())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.algebra.group()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub(crate) fn degrees_arc(&self) -> &Arc<Vec<usize>> {
        &self.degrees
    }

    pub fn basis_of_degree(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == g).collect()
    }

    /// Dimension of each homogeneous component, indexed by degree.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.group().order()];
        for &g in self.degrees.iter() {
            d[g] += 1;
        }
        d
    }

    pub(crate) fn presentation_cell(&self) -> &OnceLock<Presentation> {
        &self.presentation
    }

    /// `b_r . v`.
    pub fn act_basis(&self, r: usize, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim()];
        self.action[r].apply_into(1, v, &mut out, self.field());
        out
    }

    /// `x . v` for an arbitrary algebra element `x`.
    pub fn act(&self, x: &[u32], v: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim()];
        for (r, &c) in x.iter().enumerate() {
            if c != 0 {
                self.action[r].apply_into(c, v, &mut out, self.field());
            }
        }
        out
    }

    /// Matrix of `v -> x . v`.
    pub fn action_matrix(&self, x: &[u32]) -> Matrix {
        let n = self.dim();
        let rows: Vec<Vec<u32>> = (0..n).map(|m| self.act(x, &unit_vector(n, m))).collect();
        Matrix::from_rows(n, &rows)
    }

    /// The shift `M(σ)` with `M(σ)_g = M_{gσ}`: a vector of degree `d`
    /// moves to degree `d σ^{-1}`. Shares action and presentation.
    pub fn shift(&self, sigma: usize) -> GradedModule {
        let g = self.group();
        let s_inv = g.inv(sigma);
        let degrees = self.degrees.iter().map(|&d| g.mul(d, s_inv)).collect();
        GradedModule {
            algebra: self.algebra.clone(),
            degrees: Arc::new(degrees),
            action: self.action.clone(),
            presentation: self.presentation.clone(),
        }
    }

    pub fn zero_subspace(&self) -> GradedSubspace {
        GradedSubspace::zero(self.field(), self.degrees.clone(), self.group().order())
    }

    pub fn full_subspace(&self) -> GradedSubspace {
        GradedSubspace::full(self.field(), self.degrees.clone(), self.group().order())
    }

    /// Graded submodule generated by (the homogeneous components of) `gens`.
    pub fn submodule_generated<V: AsRef<[u32]>>(&self, gens: &[V]) -> GradedSubspace {
        let mut w = self.zero_subspace();
        let mut frontier = Vec::new();
        for v in gens {
            for (_, c) in w.components(v.as_ref()) {
                if w.insert(&c) {
                    frontier.push(c);
                }
            }
        }
        self.close(&mut w, frontier);
        w
    }

    /// Smallest submodule containing `w`.
    pub fn submodule_closure(&self, w: &GradedSubspace) -> GradedSubspace {
        let mut w = w.clone();
        let frontier = w.vectors();
        self.close(&mut w, frontier);
        w
    }

    fn close(&self, w: &mut GradedSubspace, mut frontier: Vec<Vec<u32>>) {
        let gens = self.algebra.generators().to_vec();
        while let Some(v) = frontier.pop() {
            for &r in &gens {
                let u = self.act_basis(r, &v);
                if w.insert(&u) {
                    frontier.push(u);
                }
            }
        }
    }

    pub fn is_submodule(&self, w: &GradedSubspace) -> bool {
        let gens = self.algebra.generators();
        w.vectors().iter().all(|v| gens.iter().all(|&r| w.contains(&self.act_basis(r, v))))
    }

    /// `{m : x . m = 0 for all x in xs}` as a graded subspace (the `xs` are
    /// expected to span a graded subspace of the algebra).
    pub fn annihilated_by<V: AsRef<[u32]>>(&self, xs: &[V]) -> GradedSubspace {
        let f = self.field();
        let n = self.dim();
        let mut out = self.zero_subspace();
        for g in 0..self.group().order() {
            let idx = self.basis_of_degree(g);
            if idx.is_empty() {
                continue;
            }
            // rows: unknown basis vectors; columns: concatenated images
            let width = xs.len() * n;
            let mut m = Matrix::zeros(idx.len(), width.max(1));
            for (a, &i) in idx.iter().enumerate() {
                let e = unit_vector(n, i);
                for (b, x) in xs.iter().enumerate() {
                    let img = self.act(x.as_ref(), &e);
                    m.row_mut(a)[b * n..(b + 1) * n].copy_from_slice(&img);
                }
            }
            for coeffs in m.left_kernel(f) {
                let mut v = vec![0; n];
                for (a, &i) in idx.iter().enumerate() {
                    v[i] = coeffs[a];
                }
                out.insert(&v);
            }
        }
        out
    }

    /// The submodule `w` as a module in its own right, with the inclusion
    /// (rows are the chosen basis vectors of `w`).
    pub fn submodule(&self, w: &GradedSubspace) -> (GradedModule, Matrix) {
        let f = self.field();
        let basis = w.basis();
        let k = basis.len();
        let mut offset = vec![0; w.group_order() + 1];
        for g in 0..w.group_order() {
            offset[g + 1] = offset[g] + w.part(g).dim();
        }
        let action = (0..self.algebra.dim())
            .map(|r| {
                let rows = basis
                    .iter()
                    .map(|(_, v)| {
                        let img = self.act_basis(r, v);
                        let mut out = Vec::new();
                        for (g, c) in w.components(&img) {
                            let coords = w.part(g).coords(&c, f).expect("w is a submodule");
                            for (a, x) in coords.into_iter().enumerate() {
                                out.push(((offset[g] + a) as u32, x));
                            }
                        }
                        out
                    })
                    .collect();
                SparseMatrix::from_rows(k, rows)
            })
            .collect();
        let degrees = basis.iter().map(|(g, _)| *g).collect();
        let emb = Matrix::from_rows(self.dim(), &basis.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
        (GradedModule::from_sparse(self.algebra.clone(), degrees, action), emb)
    }

    /// `M / w`; the quotient basis is the image of the standard basis vectors
    /// at the returned indices.
    pub fn quotient(&self, w: &GradedSubspace) -> (GradedModule, Vec<usize>) {
        let f = self.field();
        let n = self.dim();
        let mut is_pivot = vec![false; n];
        for g in 0..w.group_order() {
            for &p in w.part(g).pivots() {
                is_pivot[p] = true;
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let mut pos = vec![usize::MAX; n];
        for (a, &i) in keep.iter().enumerate() {
            pos[i] = a;
        }
        let reduce = |v: &mut Vec<u32>| {
            for g in 0..w.group_order() {
                w.part(g).reduce(v, f);
            }
        };
        let action = (0..self.algebra.dim())
            .map(|r| {
                let rows = keep
                    .iter()
                    .map(|&i| {
                        let mut img = self.act_basis(r, &unit_vector(n, i));
                        reduce(&mut img);
                        img.iter()
                            .enumerate()
                            .filter(|(_, &x)| x != 0)
                            .map(|(j, &x)| (pos[j] as u32, x))
                            .collect()
                    })
                    .collect();
                SparseMatrix::from_rows(keep.len(), rows)
            })
            .collect();
        let degrees = keep.iter().map(|&i| self.degrees[i]).collect();
        (GradedModule::from_sparse(self.algebra.clone(), degrees, action), keep)
    }

    /// Image of a vector of `M` in the quotient returned by `quotient`.
    pub fn project_to_quotient(&self, w: &GradedSubspace, keep: &[usize], v: &[u32]) -> Vec<u32> {
        let mut v = v.to_vec();
        for g in 0..w.group_order() {
            w.part(g).reduce(&mut v, self.field());
        }
        keep.iter().map(|&i| v[i]).collect()
    }

    pub fn direct_sum(mods: &[GradedModule]) -> Result<GradedModule> {
        let first = mods.first().ok_or_else(|| Error::Precondition("empty direct sum".into()))?;
        let alg = first.algebra.clone();
        if mods.iter().any(|m| !same_algebra(&m.algebra, &alg)) {
            return Err(Error::Precondition("direct sum over different algebras".into()));
        }
        let total: usize = mods.iter().map(GradedModule::dim).sum();
        let mut degrees = Vec::with_capacity(total);
        for m in mods {
            degrees.extend_from_slice(&m.degrees);
        }
        let action = (0..alg.dim())
            .map(|r| {
                let mut rows = Vec::with_capacity(total);
                let mut off = 0u32;
                for m in mods {
                    for i in 0..m.dim() {
                        rows.push(m.action[r].row(i).iter().map(|&(j, c)| (j + off, c)).collect());
                    }
                    off += m.dim() as u32;
                }
                SparseMatrix::from_rows(total, rows)
            })
            .collect();
        Ok(GradedModule::from_sparse(alg, degrees, action))
    }

    /// Restricts scalars to a subalgebra and keeps a subset of basis vectors
    /// that the subalgebra preserves. `embed[a]` is the algebra basis index
    /// of subalgebra basis element `a` (the subalgebra basis must be a subset
    /// of the standard basis).
    pub fn restrict(
        &self,
        sub: &Arc<GradedAlgebra>,
        embed: &[usize],
        keep: &[usize],
        degrees: Vec<usize>,
    ) -> Result<GradedModule> {
        let mut pos = vec![usize::MAX; self.dim()];
        for (a, &i) in keep.iter().enumerate() {
            pos[i] = a;
        }
        let mut action = Vec::with_capacity(embed.len());
        for &r in embed {
            let mut rows = Vec::with_capacity(keep.len());
            for &i in keep {
                let mut row = Vec::new();
                for &(j, c) in self.action[r].row(i) {
                    let pj = pos[j as usize];
                    if pj == usize::MAX {
                        return Err(Error::Precondition("kept basis is not preserved by the subalgebra".into()));
                    }
                    row.push((pj as u32, c));
                }
                rows.push(row);
            }
            action.push(SparseMatrix::from_rows(keep.len(), rows));
        }
        Ok(GradedModule::from_sparse(sub.clone(), degrees, action))
    }

    /// Is every nonzero homogeneous `m` of degree `g` moved into degree `σ`
    /// by some homogeneous algebra element, i.e. `A_{σ g^{-1}} m ≠ 0`?
    pub fn is_faithful_at(&self, sigma: usize) -> bool {
        let f = self.field();
        let g = self.group();
        let n = self.dim();
        (0..g.order()).all(|d| {
            let idx = self.basis_of_degree(d);
            if idx.is_empty() {
                return true;
            }
            let h = g.mul(sigma, g.inv(d));
            let rs = self.algebra.basis_of_degree(h);
            if rs.is_empty() {
                return false;
            }
            let mut m = Matrix::zeros(idx.len(), rs.len() * n);
            for (a, &i) in idx.iter().enumerate() {
                let e = unit_vector(n, i);
                for (b, &r) in rs.iter().enumerate() {
                    m.row_mut(a)[b * n..(b + 1) * n].copy_from_slice(&self.act_basis(r, &e));
                }
            }
            m.rank(f) == idx.len()
        })
    }
}

pub fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;

    fn dual_numbers() -> Arc<GradedAlgebra> {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let f = PrimeField::new(5).unwrap();
        Arc::new(
            GradedAlgebra::new(
                f,
                g,
                vec!["1".into(), "x".into()],
                vec![0, 1],
                &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)],
                vec![1, 0],
            )
            .unwrap(),
        )
    }

    #[test]
    fn regular_module_validates() {
        let a = dual_numbers();
        let m = GradedModule::left_regular(&a);
        m.validate().unwrap();
        GradedModule::right_regular(&a).validate().unwrap();
    }

    #[test]
    fn shift_composition_law() {
        // M(σ)(τ) = M(τσ)
        let a = Arc::new(
            GradedAlgebra::new(
                PrimeField::new(3).unwrap(),
                Arc::new(FiniteGroup::s3()),
                vec!["1".into()],
                vec![0],
                &[(0, 0, 0, 1)],
                vec![1],
            )
            .unwrap(),
        );
        let m = GradedModule::left_regular(&a);
        let g = a.group().clone();
        for s in 0..6 {
            for t in 0..6 {
                assert_eq!(m.shift(s).shift(t).degrees(), m.shift(g.mul(t, s)).degrees());
            }
        }
    }

    #[test]
    fn quotient_and_submodule_dimensions() {
        let a = dual_numbers();
        let m = GradedModule::left_regular(&a);
        let w = m.submodule_generated(&[vec![0, 1]]);
        assert_eq!(w.dim(), 1);
        let (q, _) = m.quotient(&w);
        let (s, _) = m.submodule(&w);
        assert_eq!(q.dim() + s.dim(), 2);
        q.validate().unwrap();
        s.validate().unwrap();
    }
}
