//! Primitive idempotents, principal indecomposables and the isoshift
//! classification of graded simple modules.
//!
//! Idempotents of `A_e` are found in the semisimple quotient `A_e / J`:
//! a corner `eSe` that is not a field is split with an idempotent taken
//! from the Berlekamp subalgebra `{z : z^p = z}` of a commutative
//! subalgebra (the corner itself, or `F_p[x]` for a random `x` when the
//! corner is not commutative). Idempotents are then lifted over `J` by
//! `a -> 3a^2 - 2a^3`, one corner at a time, which keeps them orthogonal.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::hom::{hom_dim, hom_space, is_graded_iso, IsoResult};
use crate::ideals;
use crate::linalg::{unit_vector, Matrix, VecSpace};
use crate::module::GradedModule;
use crate::radicals::{is_semisimple_module, radical, radical_of_module};
use crate::subspace::GradedSubspace;

const SPLIT_ATTEMPTS: usize = 400;

fn pow_with_unit(a: &GradedAlgebra, x: &[u32], unit: &[u32], mut e: u64) -> Vec<u32> {
    let mut base = x.to_vec();
    let mut acc = unit.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = a.mul(&base, &base);
        }
    }
    acc
}

/// Fixed space of `z -> z^p` on a commutative subalgebra spanned by `space`
/// (with identity `unit`), as vectors of the ambient algebra.
pub fn berlekamp_fixed_space(a: &GradedAlgebra, space: &VecSpace, unit: &[u32]) -> Vec<Vec<u32>> {
    let f = a.field();
    let basis = space.basis();
    let k = basis.len();
    let mut m = Matrix::zeros(k, k);
    for (i, b) in basis.iter().enumerate() {
        let bp = pow_with_unit(a, b, unit, f.p() as u64);
        let c = space.coords(&bp, f).expect("closed subalgebra");
        for j in 0..k {
            let v = if i == j { f.sub(c[j], 1) } else { c[j] };
            m.set(i, j, v);
        }
    }
    m.left_kernel(f).iter().map(|c| space.combine(c, f)).collect()
}

fn corner_space(a: &GradedAlgebra, e: &[u32]) -> VecSpace {
    let n = a.dim();
    let f = a.field();
    VecSpace::span(n, (0..n).map(|i| a.mul(&a.mul(e, &unit_vector(n, i)), e)), f)
}

fn span_commutes(a: &GradedAlgebra, s: &VecSpace) -> bool {
    let b = s.basis();
    b.iter().all(|x| b.iter().all(|y| a.mul(x, y) == a.mul(y, x)))
}

fn powers_space(a: &GradedAlgebra, x: &[u32], unit: &[u32]) -> VecSpace {
    let f = a.field();
    let mut s = VecSpace::zero(a.dim());
    let mut cur = unit.to_vec();
    while s.insert(&cur, f) {
        cur = a.mul(&cur, x);
    }
    s
}

/// Idempotent from `z` with `z^p = z` in a commutative algebra with unit `e`.
fn idempotent_from_fixed(a: &GradedAlgebra, z: &[u32], e: &[u32], rng: &mut ChaCha8Rng) -> Vec<u32> {
    let f = a.field();
    let p = f.p();
    if p == 2 {
        return z.to_vec();
    }
    let c = rng.gen_range(0..p);
    let mut y = z.to_vec();
    f.axpy(c, e, &mut y);
    let w = pow_with_unit(a, &y, e, ((p - 1) / 2) as u64);
    let mut u = a.mul(&w, &w);
    f.axpy(1, &w, &mut u);
    f.scale(f.inv(2), &mut u);
    u
}

fn nontrivial_idempotent(a: &GradedAlgebra, u: &[u32], e: &[u32]) -> bool {
    u.iter().any(|&x| x != 0) && u != e && a.mul(u, u) == u
}

fn split_from_commutative(
    a: &GradedAlgebra,
    space: &VecSpace,
    e: &[u32],
    rng: &mut ChaCha8Rng,
) -> Option<Vec<u32>> {
    let f = a.field();
    let fixed = berlekamp_fixed_space(a, space, e);
    if fixed.len() <= 1 {
        return None;
    }
    for _ in 0..64 {
        let mut z = vec![0u32; a.dim()];
        for v in &fixed {
            f.axpy(rng.gen_range(0..f.p()), v, &mut z);
        }
        let u = idempotent_from_fixed(a, &z, e, rng);
        if nontrivial_idempotent(a, &u, e) {
            return Some(u);
        }
    }
    None
}

/// Splits `e` into two nonzero orthogonal idempotents of the semisimple
/// algebra `s`, or returns `None` when `e s e` is a field.
fn split_idempotent(s: &GradedAlgebra, e: &[u32], rng: &mut ChaCha8Rng) -> Result<Option<Vec<u32>>> {
    let f = s.field();
    let corner = corner_space(s, e);
    if corner.dim() <= 1 {
        return Ok(None);
    }
    if span_commutes(s, &corner) {
        return Ok(split_from_commutative(s, &corner, e, rng));
    }
    for _ in 0..SPLIT_ATTEMPTS {
        let mut x = vec![0u32; s.dim()];
        for v in corner.basis() {
            f.axpy(rng.gen_range(0..f.p()), v, &mut x);
        }
        let b = powers_space(s, &x, e);
        if let Some(u) = split_from_commutative(s, &b, e, rng) {
            return Ok(Some(u));
        }
    }
    Err(Error::Exhausted("could not split a noncommutative corner".into()))
}

/// Is the (ungraded) algebra local, i.e. `A / J(A)` a field?
pub fn is_local_algebra(a: &GradedAlgebra) -> bool {
    let j = radical(a);
    if j.dim() == a.dim() {
        return false;
    }
    let (q, _) = a.quotient(j).expect("radical is an ideal");
    q.is_commutative() && berlekamp_fixed_space(&q, &VecSpace::full(q.dim()), q.unit()).len() == 1
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimitivityCertificate {
    /// `dim e A e`.
    pub corner_dim: usize,
    /// `dim e J e`.
    pub corner_radical_dim: usize,
    /// `e A e / e J e` is commutative with one-dimensional Berlekamp
    /// subalgebra, hence a field.
    pub residue_is_field: bool,
}

/// Complete set of primitive orthogonal idempotents of an ungraded algebra.
pub fn primitive_idempotents_ungraded(a: &GradedAlgebra, seed: u64) -> Result<Vec<Vec<u32>>> {
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j = radical(a).clone();
    let (s, keep) = a.quotient(&j)?;
    let mut done = Vec::new();
    let mut stack = vec![s.unit().to_vec()];
    while let Some(e) = stack.pop() {
        match split_idempotent(&s, &e, &mut rng)? {
            None => done.push(e),
            Some(u) => {
                let mut rest = e.clone();
                f.axpy(f.neg(1), &u, &mut rest);
                stack.push(rest);
                stack.push(u);
            }
        }
    }
    // deterministic order: by first nonzero coordinate
    done.sort();
    let n = a.dim();
    let mut lifted = Vec::with_capacity(done.len());
    let mut remaining = a.unit().to_vec();
    for (k, eb) in done.iter().enumerate() {
        if k + 1 == done.len() {
            lifted.push(remaining.clone());
            break;
        }
        let mut pre = vec![0u32; n];
        for (t, &i) in keep.iter().enumerate() {
            pre[i] = eb[t];
        }
        let b = a.mul(&a.mul(&remaining, &pre), &remaining);
        let e = lift_idempotent(a, &b)?;
        f.axpy(f.neg(1), &e, &mut remaining);
        lifted.push(e);
    }
    Ok(lifted)
}

fn lift_idempotent(a: &GradedAlgebra, b: &[u32]) -> Result<Vec<u32>> {
    let f = a.field();
    let mut x = b.to_vec();
    for _ in 0..2 * a.dim() + 8 {
        let x2 = a.mul(&x, &x);
        if x2 == x {
            return Ok(x);
        }
        let x3 = a.mul(&x2, &x);
        let mut next = vec![0u32; a.dim()];
        f.axpy(3, &x2, &mut next);
        f.axpy(f.neg(2), &x3, &mut next);
        x = next;
    }
    Err(Error::Exhausted("idempotent lifting did not converge".into()))
}

pub fn primitivity_certificate(a: &GradedAlgebra, e: &[u32]) -> Result<PrimitivityCertificate> {
    let corner = corner_space(a, e);
    let c = a.subalgebra(&corner, e)?;
    let jc = radical(&c).dim();
    let residue_is_field = is_local_algebra(&c);
    Ok(PrimitivityCertificate { corner_dim: corner.dim(), corner_radical_dim: jc, residue_is_field })
}

/// The degree-e component as an ungraded algebra, with the embedding of its
/// basis into the basis of `a`.
pub fn identity_component(a: &GradedAlgebra) -> Result<(Arc<GradedAlgebra>, Vec<usize>)> {
    let e = a.group().identity();
    let space = a.component(e);
    let sub = a.subalgebra(&space, a.unit())?;
    Ok((Arc::new(sub), a.basis_of_degree(e).to_vec()))
}

/// Complete set of primitive orthogonal idempotents of `A_e`, as vectors of
/// `A`, each with its primitivity certificate.
pub fn primitive_idempotents(
    a: &GradedAlgebra,
    seed: u64,
) -> Result<Vec<(Vec<u32>, PrimitivityCertificate)>> {
    let (ae, embed) = identity_component(a)?;
    let local = primitive_idempotents_ungraded(&ae, seed)?;
    let n = a.dim();
    local
        .into_iter()
        .map(|v| {
            let cert = primitivity_certificate(&ae, &v)?;
            let mut w = vec![0u32; n];
            for (t, &i) in embed.iter().enumerate() {
                w[i] = v[t];
            }
            Ok((w, cert))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct PrincipalIndecomposable {
    pub idempotent: Vec<u32>,
    /// `A e` as a graded left ideal.
    pub ideal: GradedSubspace,
    pub module: GradedModule,
    /// `A e / J^gr e`.
    pub top: GradedModule,
}

/// `A e` for a homogeneous degree-e idempotent `e`.
pub fn principal_module(a: &Arc<GradedAlgebra>, e: &[u32]) -> PrincipalIndecomposable {
    let n = a.dim();
    let regular = GradedModule::left_regular(a);
    let ideal = ideals::hull(a, &(0..n).map(|i| a.mul(&unit_vector(n, i), e)).collect::<Vec<_>>());
    debug_assert!(regular.is_submodule(&ideal));
    let (module, _) = regular.submodule(&ideal);
    let top = top_of(&module);
    PrincipalIndecomposable { idempotent: e.to_vec(), ideal, module, top }
}

/// `M / J^gr M`.
pub fn top_of(m: &GradedModule) -> GradedModule {
    m.quotient(&radical_of_module(m)).0
}

pub fn principal_indecomposables(a: &Arc<GradedAlgebra>, seed: u64) -> Result<Vec<PrincipalIndecomposable>> {
    Ok(primitive_idempotents(a, seed)?.into_iter().map(|(e, _)| principal_module(a, &e)).collect())
}

/// Graded simplicity: `J^gr M = 0` and `END(M)_e` local. A graded
/// semisimple module is a sum of graded simples, and it is indecomposable
/// exactly when its degree-e endomorphism ring is local.
pub fn is_graded_simple(m: &GradedModule) -> Result<bool> {
    if m.dim() == 0 || !is_semisimple_module(m) {
        return Ok(false);
    }
    let e = m.group().identity();
    let end = hom_space(m, m, e)?;
    if end.len() == 1 {
        return Ok(true);
    }
    let alg = crate::hom::endomorphism_algebra(m, &end)?;
    Ok(is_local_algebra(&alg))
}

/// `{σ : S ≅ T(σ)}` for graded simple `S`, `T`; empty or a left coset of
/// the inertia group of `T`.
pub fn simple_iso_shift(s: &GradedModule, t: &GradedModule) -> Result<Vec<usize>> {
    let g = s.group();
    let e = g.identity();
    let mut out = Vec::new();
    for sigma in 0..g.order() {
        let ts = t.shift(sigma);
        if ts.graded_dims() != s.graded_dims() {
            continue;
        }
        if hom_dim(s, &ts, e)? > 0 {
            out.push(sigma);
        }
    }
    Ok(out)
}

/// `Σ(M) = {g : M(g) ≅ M}`.
pub fn inertia_group(m: &GradedModule) -> Result<Vec<usize>> {
    let g = m.group();
    let mut out = Vec::new();
    for x in 0..g.order() {
        match is_graded_iso(&m.shift(x), m)? {
            IsoResult::Iso(_) => out.push(x),
            IsoResult::NotIso => {}
            IsoResult::Undetermined => {
                return Err(Error::Exhausted("isomorphism undetermined while computing inertia".into()))
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct IsoshiftClass {
    /// Indices into `principal`; the first is the representative.
    pub members: Vec<usize>,
    /// `g_ij` with `A e_ij ≅ P_i(g_ij)`; `g_i1 = e`.
    pub shifts: Vec<usize>,
    /// `Σ(S_i)`.
    pub inertia: Vec<usize>,
    /// `dim END(S_i)_e`.
    pub end_dim: usize,
}

#[derive(Clone, Debug)]
pub struct IsoshiftClassification {
    pub principal: Vec<PrincipalIndecomposable>,
    pub certificates: Vec<PrimitivityCertificate>,
    pub classes: Vec<IsoshiftClass>,
    /// Every `A e_ij ≅ P_i(g_ij)` confirmed by a graded isomorphism.
    pub verified: bool,
}

impl IsoshiftClassification {
    pub fn t(&self) -> usize {
        self.classes.len()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    pub fn representative(&self, i: usize) -> &PrincipalIndecomposable {
        &self.principal[self.classes[i].members[0]]
    }

    pub fn top(&self, i: usize) -> &GradedModule {
        &self.representative(i).top
    }

    /// Class and shift `(i, g)` with `S_k ≅ S_i(g)` for principal index `k`.
    pub fn locate(&self, k: usize) -> (usize, usize) {
        for (i, c) in self.classes.iter().enumerate() {
            if let Some(pos) = c.members.iter().position(|&m| m == k) {
                return (i, c.shifts[pos]);
            }
        }
        unreachable!("every principal indecomposable is classified")
    }
}

/// Groups the principal indecomposables `A e` of a primitive decomposition
/// of `1 ∈ A_e` by isoshift type of their tops.
pub fn classify_isoshift(a: &Arc<GradedAlgebra>, seed: u64) -> Result<IsoshiftClassification> {
    let g = a.group().clone();
    let idem = primitive_idempotents(a, seed)?;
    let certificates = idem.iter().map(|(_, c)| c.clone()).collect();
    let principal: Vec<PrincipalIndecomposable> = idem.iter().map(|(e, _)| principal_module(a, e)).collect();
    let mut classes: Vec<IsoshiftClass> = Vec::new();
    for (k, pi) in principal.iter().enumerate() {
        let mut placed = false;
        for c in classes.iter_mut() {
            let rep = &principal[c.members[0]];
            let shifts = simple_iso_shift(&pi.top, &rep.top)?;
            if let Some(&gk) = shifts.iter().min() {
                c.members.push(k);
                c.shifts.push(gk);
                placed = true;
                break;
            }
        }
        if !placed {
            let inertia = simple_iso_shift(&pi.top, &pi.top)?;
            let end_dim = hom_dim(&pi.top, &pi.top, g.identity())?;
            classes.push(IsoshiftClass { members: vec![k], shifts: vec![g.identity()], inertia, end_dim });
        }
    }
    let mut verified = true;
    for c in &classes {
        let rep = &principal[c.members[0]].module;
        for (&k, &s) in c.members.iter().zip(&c.shifts).skip(1) {
            verified &= is_graded_iso(&principal[k].module, &rep.shift(s))?.is_iso();
        }
    }
    Ok(IsoshiftClassification { principal, certificates, classes, verified })
}

/// Multiset `{(i, g)}` with `Q ≅ ⊕ P_i(g)`, `g` a lowest-index
/// representative of `g Σ(S_i)`. Rejects modules that are not graded
/// projective.
pub fn decompose_projective(q: &GradedModule, cls: &IsoshiftClassification) -> Result<Vec<(usize, usize)>> {
    let g = q.group();
    let e = g.identity();
    let mut out = Vec::new();
    let mut dim_sum = 0;
    let mut top_sum = 0;
    for (i, c) in cls.classes.iter().enumerate() {
        let s = cls.top(i);
        for shift in g.left_transversal(&c.inertia) {
            let d = hom_dim(q, &s.shift(shift), e)?;
            if d % c.end_dim != 0 {
                return Err(Error::Precondition("top is not semisimple-decomposable".into()));
            }
            for _ in 0..d / c.end_dim {
                out.push((i, shift));
                dim_sum += cls.representative(i).module.dim();
                top_sum += s.dim();
            }
        }
    }
    if top_sum != top_of(q).dim() {
        return Err(Error::Precondition("top is not semisimple-decomposable".into()));
    }
    if dim_sum != q.dim() {
        return Err(Error::Precondition("module is not graded projective".into()));
    }
    Ok(out)
}

/// Graded simple left modules that embed in `A` up to isomorphism (not up
/// to shift): `(class, shift, multiplicity)` with `S_i(g)` occurring
/// `multiplicity` times in `soc^gr(A)`.
pub fn embedded_simple_types(
    a: &Arc<GradedAlgebra>,
    cls: &IsoshiftClassification,
) -> Result<Vec<(usize, usize, usize)>> {
    let g = a.group();
    let regular = GradedModule::left_regular(a);
    let mut out = Vec::new();
    for (i, c) in cls.classes.iter().enumerate() {
        let s = cls.top(i);
        for shift in g.left_transversal(&c.inertia) {
            let d = hom_dim(&s.shift(shift), &regular, g.identity())?;
            if d > 0 {
                out.push((i, shift, d / c.end_dim));
            }
        }
    }
    Ok(out)
}

/// Number of isomorphism classes of graded simple left modules.
pub fn simple_type_count(cls: &IsoshiftClassification, group_order: usize) -> usize {
    cls.classes.iter().map(|c| group_order / c.inertia.len()).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingCriteria {
    /// Some shift of `S` embeds in `A`.
    pub shift_embeds: bool,
    /// The maximal graded left ideal `M = ann(x)` is a left annihilator of a
    /// homogeneous element.
    pub is_annihilator_of_element: bool,
    /// `ann_r(M) ≠ 0`.
    pub right_annihilator_nonzero: bool,
    /// `ann_l(ann_r(M)) = M`.
    pub double_annihilator: bool,
    pub agree: bool,
}

/// Evaluates four equivalent conditions for a graded simple `S` and the
/// maximal graded left ideal `M` annihilating a homogeneous `x ∈ S`.
pub fn simple_embedding_criteria(s: &GradedModule) -> Result<EmbeddingCriteria> {
    let a = s.algebra().clone();
    let grp = a.group().clone();
    let n = a.dim();
    let x_index = (0..s.dim()).next().ok_or_else(|| Error::Precondition("zero module".into()))?;
    let x = unit_vector(s.dim(), x_index);
    let regular = GradedModule::left_regular(&a);
    // M = {r : r x = 0}
    let mut mm = ideals::zero_ideal(&a);
    for gdeg in 0..grp.order() {
        let idx = a.basis_of_degree(gdeg);
        if idx.is_empty() {
            continue;
        }
        let rows: Vec<Vec<u32>> = idx.iter().map(|&r| s.act_basis(r, &x)).collect();
        for c in Matrix::from_rows(s.dim(), &rows).left_kernel(a.field()) {
            let mut v = vec![0u32; n];
            for (t, &r) in idx.iter().enumerate() {
                v[r] = c[t];
            }
            mm.insert(&v);
        }
    }
    debug_assert!(regular.is_submodule(&mm));
    let shift_embeds = (0..grp.order()).any(|sg| hom_dim(s, &regular, sg).map(|d| d > 0).unwrap_or(false));
    let ann_r = ideals::right_annihilator(&a, &mm);
    let right_annihilator_nonzero = !ann_r.is_zero();
    let is_annihilator_of_element = ann_r.basis().iter().any(|(_, y)| {
        let single = ideals::hull(&a, std::slice::from_ref(y));
        ideals::left_annihilator(&a, &single) == mm
    });
    let double_annihilator = ideals::left_annihilator(&a, &ann_r) == mm;
    let vals = [shift_embeds, is_annihilator_of_element, right_annihilator_nonzero, double_annihilator];
    Ok(EmbeddingCriteria {
        shift_embeds,
        is_annihilator_of_element,
        right_annihilator_nonzero,
        double_annihilator,
        agree: vals.iter().all(|&v| v == vals[0]),
    })
}

/// The graded radical as intersection of annihilators of the graded simple
/// tops (all shifts share annihilators).
pub fn radical_from_simples(a: &Arc<GradedAlgebra>, cls: &IsoshiftClassification) -> GradedSubspace {
    let n = a.dim();
    let mut acc = ideals::whole(a);
    for i in 0..cls.t() {
        let s = cls.top(i);
        let mut ann = ideals::zero_ideal(a);
        for gdeg in 0..a.group().order() {
            let idx = a.basis_of_degree(gdeg);
            if idx.is_empty() {
                continue;
            }
            let mut m = Matrix::zeros(idx.len(), (s.dim() * s.dim()).max(1));
            for (t, &r) in idx.iter().enumerate() {
                for v in 0..s.dim() {
                    let img = s.act_basis(r, &unit_vector(s.dim(), v));
                    m.row_mut(t)[v * s.dim()..(v + 1) * s.dim()].copy_from_slice(&img);
                }
            }
            for c in m.left_kernel(a.field()) {
                let mut w = vec![0u32; n];
                for (t, &r) in idx.iter().enumerate() {
                    w[r] = c[t];
                }
                ann.insert(&w);
            }
        }
        acc = acc.intersect(&ann);
    }
    acc
}
