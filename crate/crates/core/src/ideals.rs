//! One- and two-sided graded ideals, products and annihilators.

use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::linalg::{unit_vector, Matrix};
use crate::module::GradedModule;
use crate::subspace::GradedSubspace;

pub fn zero_ideal(a: &GradedAlgebra) -> GradedSubspace {
    GradedSubspace::zero(a.field(), Arc::new(a.degrees().to_vec()), a.group().order())
}

pub fn whole(a: &GradedAlgebra) -> GradedSubspace {
    GradedSubspace::full(a.field(), Arc::new(a.degrees().to_vec()), a.group().order())
}

/// Graded hull (in the degrees of `a`) of a set of vectors.
pub fn hull<V: AsRef<[u32]>>(a: &GradedAlgebra, vs: &[V]) -> GradedSubspace {
    GradedSubspace::hull(a.field(), Arc::new(a.degrees().to_vec()), a.group().order(), vs)
}

pub fn left_ideal_generated<V: AsRef<[u32]>>(a: &Arc<GradedAlgebra>, gens: &[V]) -> GradedSubspace {
    rebase(a, &GradedModule::left_regular(a).submodule_generated(gens))
}

pub fn right_ideal_generated<V: AsRef<[u32]>>(a: &Arc<GradedAlgebra>, gens: &[V]) -> GradedSubspace {
    rebase(a, &GradedModule::right_regular(a).submodule_generated(gens))
}

pub fn two_sided_ideal_generated<V: AsRef<[u32]>>(a: &Arc<GradedAlgebra>, gens: &[V]) -> GradedSubspace {
    let left = left_ideal_generated(a, gens);
    right_ideal_generated(a, &left.vectors())
}

/// Re-homes a subspace (for instance one computed inside `A^op`, whose
/// degrees are inverted) onto the degrees of `a`.
pub fn rebase(a: &GradedAlgebra, s: &GradedSubspace) -> GradedSubspace {
    hull(a, &s.vectors())
}

/// `span{x y : x ∈ X, y ∈ Y}`.
pub fn product(a: &GradedAlgebra, x: &GradedSubspace, y: &GradedSubspace) -> GradedSubspace {
    let mut out = zero_ideal(a);
    let ys = y.vectors();
    for u in x.vectors() {
        for v in &ys {
            out.insert(&a.mul(&u, v));
        }
    }
    out
}

/// `{r : r X = 0}` computed degree by degree.
pub fn left_annihilator(a: &GradedAlgebra, x: &GradedSubspace) -> GradedSubspace {
    annihilator(a, x, true)
}

/// `{r : X r = 0}` computed degree by degree.
pub fn right_annihilator(a: &GradedAlgebra, x: &GradedSubspace) -> GradedSubspace {
    annihilator(a, x, false)
}

fn annihilator(a: &GradedAlgebra, x: &GradedSubspace, left: bool) -> GradedSubspace {
    let f = a.field();
    let n = a.dim();
    let xs = x.vectors();
    let mut out = zero_ideal(a);
    for g in 0..a.group().order() {
        let idx = a.basis_of_degree(g);
        if idx.is_empty() {
            continue;
        }
        if xs.is_empty() {
            for &i in idx {
                out.insert(&unit_vector(n, i));
            }
            continue;
        }
        let mut m = Matrix::zeros(idx.len(), xs.len() * n);
        for (r, &i) in idx.iter().enumerate() {
            let e = unit_vector(n, i);
            for (b, xv) in xs.iter().enumerate() {
                let prod = if left { a.mul(&e, xv) } else { a.mul(xv, &e) };
                m.row_mut(r)[b * n..(b + 1) * n].copy_from_slice(&prod);
            }
        }
        for c in m.left_kernel(f) {
            let mut v = vec![0; n];
            for (r, &i) in idx.iter().enumerate() {
                v[i] = c[r];
            }
            out.insert(&v);
        }
    }
    out
}

/// The same annihilator computed without splitting by degree.
pub fn left_annihilator_ungraded(a: &GradedAlgebra, x: &GradedSubspace) -> crate::linalg::VecSpace {
    let f = a.field();
    let n = a.dim();
    let xs = x.vectors();
    let mut m = Matrix::zeros(n, (xs.len() * n).max(1));
    for i in 0..n {
        let e = unit_vector(n, i);
        for (b, xv) in xs.iter().enumerate() {
            m.row_mut(i)[b * n..(b + 1) * n].copy_from_slice(&a.mul(&e, xv));
        }
    }
    crate::linalg::VecSpace::span(n, m.left_kernel(f), f)
}

pub fn is_left_ideal(a: &Arc<GradedAlgebra>, x: &GradedSubspace) -> bool {
    GradedModule::left_regular(a).is_submodule(x)
}

pub fn is_right_ideal(a: &Arc<GradedAlgebra>, x: &GradedSubspace) -> bool {
    let op = a.opposite();
    let moved = hull(&op, &x.vectors());
    GradedModule::left_regular(&op).is_submodule(&moved)
}
