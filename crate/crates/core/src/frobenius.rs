//! Nakayama data, the graded quasi-Frobenius decision and σ-graded
//! Frobenius checks by independent routes.
//!
//! Right modules are left modules over `A^op`. A right module `N` with
//! components `N_g` is the `A^op`-module with `n ∈ N_g` placed in degree
//! `g^{-1}`; under this dictionary the right shift `(σ)N` is the left shift
//! by `σ^{-1}`, and right σ-faithfulness is left σ^{-1}-faithfulness.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::decomp::{
    classify_isoshift, identity_component, is_graded_simple, principal_module, simple_iso_shift, top_of,
    IsoshiftClassification,
};
use crate::error::{Error, Result};
use crate::hom::{hom_space, is_graded_iso, is_homomorphism, IsoResult};
use crate::ideals;
use crate::linalg::{unit_vector, Matrix, SparseMatrix, VecSpace};
use crate::module::{GradedModule, Side};
use crate::par::{par_map, ExecMode};
use crate::radicals::{graded_radical, graded_socle, left_socle, random_homogeneous};
use crate::subspace::GradedSubspace;

/// `(π, σ_i)` with `soc(P_i) ≅ S_{π(i)}(σ_i)`, with the right-hand data.
#[derive(Clone, Debug, Serialize)]
pub struct NakayamaData {
    pub pi: Vec<usize>,
    /// Lowest-index representative of the coset `σ_i Σ(S_{π(i)})`.
    pub sigmas: Vec<usize>,
    pub sigma_cosets: Vec<Vec<usize>>,
    /// `soc(e_{π(i)} A) ≅ (σ_i) S'_i`.
    pub right_pairing: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaFailure {
    pub index: usize,
    pub side: Side,
    pub reason: String,
}

/// Socles and tops of the principal indecomposables on both sides.
#[derive(Clone, Debug)]
pub struct QfAnalysis {
    pub classification: IsoshiftClassification,
    pub left_socles: Vec<GradedModule>,
    /// `S'_i = e_i A / e_i J^gr` over `A^op`.
    pub right_tops: Vec<GradedModule>,
    pub right_socles: Vec<GradedModule>,
    pub socle_simple_left: Vec<bool>,
    pub socle_simple_right: Vec<bool>,
    pub nakayama: std::result::Result<NakayamaData, NakayamaFailure>,
}

impl QfAnalysis {
    pub fn is_qf(&self) -> bool {
        self.nakayama.is_ok()
    }
}

fn socle_module(m: &GradedModule) -> GradedModule {
    m.submodule(&graded_socle(m)).0
}

/// Matches each socle against the tops: `Some((k, coset))` with
/// `soc ≅ top_k(σ)` for `σ` in `coset`.
fn match_socle(soc: &GradedModule, tops: &[GradedModule]) -> Result<Option<(usize, Vec<usize>)>> {
    for (k, t) in tops.iter().enumerate() {
        if t.dim() != soc.dim() {
            continue;
        }
        let shifts = simple_iso_shift(soc, t)?;
        if !shifts.is_empty() {
            return Ok(Some((k, shifts)));
        }
    }
    Ok(None)
}

fn side_permutation(
    socles: &[GradedModule],
    simple: &[bool],
    tops: &[GradedModule],
    side: Side,
) -> Result<std::result::Result<Vec<(usize, Vec<usize>)>, NakayamaFailure>> {
    let mut out = Vec::new();
    let mut seen = vec![false; tops.len()];
    for (i, soc) in socles.iter().enumerate() {
        if !simple[i] {
            let reason = if soc.dim() == 0 { "zero socle" } else { "socle is not graded simple" };
            return Ok(Err(NakayamaFailure { index: i, side, reason: reason.into() }));
        }
        match match_socle(soc, tops)? {
            None => return Err(Error::Validation("graded simple socle matches no top".into())),
            Some((k, coset)) => {
                if seen[k] {
                    return Ok(Err(NakayamaFailure {
                        index: i,
                        side,
                        reason: format!("socle has the isoshift type of another socle (type {})", k + 1),
                    }));
                }
                seen[k] = true;
                out.push((k, coset));
            }
        }
    }
    Ok(Ok(out))
}

/// Socles of the principal indecomposables on both sides and the Nakayama
/// data when the algebra is graded quasi-Frobenius: every such socle is
/// graded simple and socle types are pairwise distinct on each side.
pub fn analyze_qf(a: &Arc<GradedAlgebra>, seed: u64) -> Result<QfAnalysis> {
    let classification = classify_isoshift(a, seed)?;
    let op = a.opposite();
    let t = classification.t();
    let mut left_socles = Vec::with_capacity(t);
    let mut right_tops = Vec::with_capacity(t);
    let mut right_socles = Vec::with_capacity(t);
    let mut socle_simple_left = Vec::with_capacity(t);
    let mut socle_simple_right = Vec::with_capacity(t);
    for i in 0..t {
        let rep = classification.representative(i);
        let soc = socle_module(&rep.module);
        socle_simple_left.push(is_graded_simple(&soc)?);
        left_socles.push(soc);
        let right = principal_module(&op, &rep.idempotent);
        let rsoc = socle_module(&right.module);
        socle_simple_right.push(is_graded_simple(&rsoc)?);
        right_socles.push(rsoc);
        right_tops.push(right.top);
    }
    let left_tops: Vec<GradedModule> = (0..t).map(|i| classification.top(i).clone()).collect();
    let nakayama = (|| -> Result<std::result::Result<NakayamaData, NakayamaFailure>> {
        let left = match side_permutation(&left_socles, &socle_simple_left, &left_tops, Side::Left)? {
            Ok(v) => v,
            Err(e) => return Ok(Err(e)),
        };
        if let Err(e) = side_permutation(&right_socles, &socle_simple_right, &right_tops, Side::Right)? {
            return Ok(Err(e));
        }
        let g = a.group();
        let pi: Vec<usize> = left.iter().map(|(k, _)| *k).collect();
        let sigma_cosets: Vec<Vec<usize>> = left.iter().map(|(_, c)| c.clone()).collect();
        let sigmas: Vec<usize> = sigma_cosets.iter().map(|c| *c.iter().min().expect("nonempty")).collect();
        let mut right_pairing = Vec::with_capacity(t);
        for i in 0..t {
            let shifted = right_tops[i].shift(g.inv(sigmas[i]));
            right_pairing.push(is_graded_iso(&right_socles[pi[i]], &shifted)?.is_iso());
        }
        Ok(Ok(NakayamaData { pi, sigmas, sigma_cosets, right_pairing }))
    })()?;
    Ok(QfAnalysis {
        classification,
        left_socles,
        right_tops,
        right_socles,
        socle_simple_left,
        socle_simple_right,
        nakayama,
    })
}

pub fn is_graded_qf(a: &Arc<GradedAlgebra>) -> Result<bool> {
    Ok(analyze_qf(a, 0)?.is_qf())
}

/// The same decision for the underlying ungraded algebra.
pub fn is_qf_ungraded(a: &GradedAlgebra) -> Result<bool> {
    is_graded_qf(&Arc::new(a.ungraded()))
}

/// `{σ : n_i = n_{π(i)} and {σ g_ij σ_i Σ_{π(i)}}_j = {g_{π(i)j} Σ_{π(i)}}_j}`.
pub fn sigma_set_combinatorial(cls: &IsoshiftClassification, nak: &NakayamaData, a: &GradedAlgebra) -> Vec<usize> {
    let g = a.group();
    (0..g.order()).filter(|&s| sigma_condition(cls, nak, a, s)).collect()
}

pub fn sigma_condition(cls: &IsoshiftClassification, nak: &NakayamaData, a: &GradedAlgebra, sigma: usize) -> bool {
    let g = a.group();
    (0..cls.t()).all(|i| {
        let k = nak.pi[i];
        let ci = &cls.classes[i];
        let ck = &cls.classes[k];
        if ci.members.len() != ck.members.len() {
            return false;
        }
        let h = &ck.inertia;
        let mut lhs: Vec<usize> = ci.shifts.iter().map(|&x| g.left_coset_rep(g.mul3(sigma, x, nak.sigmas[i]), h)).collect();
        let mut rhs: Vec<usize> = ck.shifts.iter().map(|&x| g.left_coset_rep(x, h)).collect();
        lhs.sort_unstable();
        rhs.sort_unstable();
        lhs == rhs
    })
}

/// `soc^gr_l(A)` and `A / J^gr` as graded left modules.
pub fn socle_and_top(a: &Arc<GradedAlgebra>) -> (GradedModule, GradedModule) {
    let reg = GradedModule::left_regular(a);
    let soc = reg.submodule(&graded_socle(&reg)).0;
    let top = reg.quotient(&graded_radical(a)).0;
    (soc, top)
}

fn decided(r: IsoResult) -> Result<bool> {
    r.decided().ok_or_else(|| Error::Exhausted("isomorphism undetermined".into()))
}

/// `soc^gr_l(A)(σ) ≅ A / J^gr(A)` without the QF hypothesis.
pub fn socle_shift_matches(a: &Arc<GradedAlgebra>, sigma: usize) -> Result<bool> {
    let (soc, top) = socle_and_top(a);
    decided(is_graded_iso(&soc.shift(sigma), &top)?)
}

/// QF together with the socle condition `soc(A)(σ) ≅ A/J^gr`
/// on the left, respectively on the right.
pub fn sigma_frobenius_check_direct(a: &Arc<GradedAlgebra>, sigma: usize, side: Side) -> Result<bool> {
    if !is_graded_qf(a)? {
        return Err(Error::Precondition("algebra is not graded quasi-Frobenius".into()));
    }
    match side {
        Side::Left => socle_shift_matches(a, sigma),
        Side::Right => socle_shift_matches(&a.opposite(), a.group().inv(sigma)),
    }
}

/// σ-faithfulness of the regular module, on either side.
pub fn is_sigma_faithful(a: &Arc<GradedAlgebra>, sigma: usize, side: Side) -> bool {
    match side {
        Side::Left => GradedModule::left_regular(a).is_faithful_at(sigma),
        Side::Right => GradedModule::left_regular(&a.opposite()).is_faithful_at(a.group().inv(sigma)),
    }
}

/// `A_σ` as an (ungraded) left module over `A_e`.
pub fn component_module(a: &GradedAlgebra, ae: &Arc<GradedAlgebra>, embed: &[usize], sigma: usize) -> GradedModule {
    let idx = a.basis_of_degree(sigma);
    let mut pos = vec![usize::MAX; a.dim()];
    for (t, &i) in idx.iter().enumerate() {
        pos[i] = t;
    }
    let action = embed
        .iter()
        .map(|&s| {
            let rows = idx
                .iter()
                .map(|&i| a.product_row(s, i).iter().map(|&(k, c)| (pos[k as usize] as u32, c)).collect())
                .collect();
            SparseMatrix::from_rows(idx.len(), rows)
        })
        .collect();
    GradedModule::from_sparse(ae.clone(), vec![0; idx.len()], action)
}

/// `soc(_{A_e} A_σ) ≅ A_e / J(A_e)` as left `A_e`-modules.
fn component_socle_condition(a: &Arc<GradedAlgebra>, sigma: usize) -> Result<bool> {
    let (ae, embed) = identity_component(a)?;
    let comp = component_module(a, &ae, &embed, sigma);
    let soc = socle_module(&comp);
    let reg = GradedModule::left_regular(&ae);
    let top = reg.quotient(&graded_radical(&ae)).0;
    decided(is_graded_iso(&soc, &top)?)
}

/// σ-faithful on both sides and both component-socle conditions.
pub fn thm78_check(a: &Arc<GradedAlgebra>, sigma: usize) -> Result<bool> {
    let op = a.opposite();
    let s_inv = a.group().inv(sigma);
    Ok(is_sigma_faithful(a, sigma, Side::Left)
        && is_sigma_faithful(a, sigma, Side::Right)
        && component_socle_condition(a, sigma)?
        && component_socle_condition(&op, s_inv)?)
}

/// `R_g R_{g^{-1}} = R_e` for every `g`.
pub fn is_strongly_graded(a: &GradedAlgebra) -> bool {
    let f = a.field();
    let g = a.group();
    let n = a.dim();
    let e_dim = a.basis_of_degree(g.identity()).len();
    (0..g.order()).all(|x| {
        let mut s = VecSpace::zero(n);
        for &i in a.basis_of_degree(x) {
            for &j in a.basis_of_degree(g.inv(x)) {
                s.insert(&a.mul(&unit_vector(n, i), &unit_vector(n, j)), f);
            }
        }
        s.dim() == e_dim
    })
}

/// The graded dual `M^ = HOM(M, A)` as a left `A^op`-module (a right
/// `A`-module) together with the chosen homogeneous basis maps.
#[derive(Clone, Debug)]
pub struct Dual {
    pub module: GradedModule,
    /// Basis map `k` as a `dim M × dim A` matrix.
    pub maps: Vec<Matrix>,
    /// Degree of basis map `k` as a morphism (its op-degree is the inverse).
    pub hom_degrees: Vec<usize>,
}

pub fn dual_module(m: &GradedModule) -> Result<Dual> {
    let a = m.algebra().clone();
    let f = a.field();
    let g = a.group().clone();
    let op = a.opposite();
    let reg = GradedModule::left_regular(&a);
    let width = m.dim() * a.dim();
    // per-degree canonical bases of HOM(M, A)_σ
    let mut spaces = Vec::with_capacity(g.order());
    for s in 0..g.order() {
        let hs = hom_space(m, &reg, s)?;
        spaces.push(VecSpace::span(width, hs.iter().map(|h| h.matrix.data().to_vec()), f));
    }
    let mut offset = vec![0; g.order() + 1];
    for s in 0..g.order() {
        offset[s + 1] = offset[s] + spaces[s].dim();
    }
    let total = offset[g.order()];
    let mut maps = Vec::with_capacity(total);
    let mut hom_degrees = Vec::with_capacity(total);
    for (s, sp) in spaces.iter().enumerate() {
        for v in sp.basis() {
            maps.push(Matrix::from_flat(m.dim(), a.dim(), v.clone()));
            hom_degrees.push(s);
        }
    }
    let right: Vec<Matrix> = (0..a.dim()).map(|r| a.right_mult_matrix(&unit_vector(a.dim(), r))).collect();
    let action = (0..a.dim())
        .map(|r| {
            let h = a.degrees()[r];
            let rows = maps
                .iter()
                .zip(&hom_degrees)
                .map(|(fm, &s)| {
                    let target = g.mul(s, h);
                    let prod = fm.mul(&right[r], f);
                    let c = spaces[target].coords(prod.data(), f).expect("f·r is a homomorphism");
                    c.into_iter()
                        .enumerate()
                        .filter(|(_, x)| *x != 0)
                        .map(|(t, x)| ((offset[target] + t) as u32, x))
                        .collect()
                })
                .collect();
            SparseMatrix::from_rows(total, rows)
        })
        .collect();
    let degrees = hom_degrees.iter().map(|&s| g.inv(s)).collect();
    Ok(Dual { module: GradedModule::from_sparse(op, degrees, action), maps, hom_degrees })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Biduality {
    pub homomorphism: bool,
    pub bijective: bool,
}

/// `φ_M : M -> M^^`, `φ(m)(f) = f(m)`.
pub fn biduality_check(m: &GradedModule) -> Result<Biduality> {
    let f = m.field();
    let d1 = dual_module(m)?;
    let d2 = dual_module(&d1.module)?;
    let k1 = d1.maps.len();
    let na = m.algebra().dim();
    if k1 == 0 {
        return Ok(Biduality { homomorphism: true, bijective: m.dim() == 0 && d2.maps.is_empty() });
    }
    let all = Matrix::from_rows(k1 * na, &d2.maps.iter().map(|x| x.data().to_vec()).collect::<Vec<_>>());
    let mut phi = Matrix::zeros(m.dim(), d2.maps.len());
    for v in 0..m.dim() {
        let mut flat = Vec::with_capacity(k1 * na);
        for fm in &d1.maps {
            flat.extend_from_slice(fm.row(v));
        }
        match all.solve_left(&flat, f) {
            Some(c) => phi.row_mut(v).copy_from_slice(&c),
            None => return Ok(Biduality { homomorphism: false, bijective: false }),
        }
    }
    let homomorphism = is_homomorphism(m, &d2.module, &phi, m.group().identity());
    Ok(Biduality { homomorphism, bijective: phi.rows() == phi.cols() && phi.is_invertible(f) })
}

/// `Coind(N)` for a left `A_e`-module `N`: `Coind(N)_g` is the space of
/// `A_e`-maps `A_{g^{-1}} -> N`, with `(r f)(a) = f(a r)`.
#[derive(Clone, Debug)]
pub struct Coinduced {
    pub module: GradedModule,
    pub maps: Vec<Matrix>,
    spaces: Vec<VecSpace>,
    offset: Vec<usize>,
}

impl Coinduced {
    /// Basis coordinates (in the whole module) of a degree-`g` map.
    pub fn coords(&self, g: usize, map: &Matrix) -> Option<Vec<u32>> {
        let f = self.module.field();
        let c = self.spaces[g].coords(map.data(), f)?;
        let mut out = vec![0u32; self.module.dim()];
        out[self.offset[g]..self.offset[g] + c.len()].copy_from_slice(&c);
        Some(out)
    }
}

pub fn coinduced(a: &Arc<GradedAlgebra>, n: &GradedModule) -> Result<Coinduced> {
    let f = a.field();
    let g = a.group().clone();
    let (ae, embed) = identity_component(a)?;
    if !crate::module::same_algebra(n.algebra(), &ae) {
        return Err(Error::Precondition("module is not over the degree-e component".into()));
    }
    let mut spaces = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let comp = component_module(a, &ae, &embed, g.inv(x));
        let width = comp.dim() * n.dim();
        let hs = if width == 0 { Vec::new() } else { hom_space(&comp, n, 0)? };
        spaces.push(VecSpace::span(width, hs.iter().map(|h| h.matrix.data().to_vec()), f));
    }
    let mut offset = vec![0; g.order() + 1];
    for x in 0..g.order() {
        offset[x + 1] = offset[x] + spaces[x].dim();
    }
    let total = offset[g.order()];
    let mut maps = Vec::with_capacity(total);
    let mut degrees = Vec::with_capacity(total);
    for (x, sp) in spaces.iter().enumerate() {
        let rows = a.basis_of_degree(g.inv(x)).len();
        for v in sp.basis() {
            maps.push(Matrix::from_flat(rows, n.dim(), v.clone()));
            degrees.push(x);
        }
    }
    let mut pos = vec![usize::MAX; a.dim()];
    for x in 0..g.order() {
        for (t, &i) in a.basis_of_degree(x).iter().enumerate() {
            pos[i] = t;
        }
    }
    let action = (0..a.dim())
        .map(|s| {
            let h = a.degrees()[s];
            let rows = maps
                .iter()
                .zip(&degrees)
                .map(|(fm, &x)| {
                    // new map lives in degree h x, defined on A_{(hx)^{-1}}
                    let y = g.mul(h, x);
                    let dom = a.basis_of_degree(g.inv(y));
                    let mut nm = Matrix::zeros(dom.len(), n.dim());
                    for (k, &ai) in dom.iter().enumerate() {
                        let mut row = vec![0u32; n.dim()];
                        for &(c, v) in a.product_row(ai, s) {
                            f.axpy(v, fm.row(pos[c as usize]), &mut row);
                        }
                        nm.row_mut(k).copy_from_slice(&row);
                    }
                    let c = spaces[y].coords(nm.data(), f).expect("r·f is A_e-linear");
                    c.into_iter()
                        .enumerate()
                        .filter(|(_, v)| *v != 0)
                        .map(|(t, v)| ((offset[y] + t) as u32, v))
                        .collect()
                })
                .collect();
            SparseMatrix::from_rows(total, rows)
        })
        .collect();
    Ok(Coinduced { module: GradedModule::from_sparse(a.clone(), degrees, action), maps, spaces, offset })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct NuCheck {
    pub faithful: bool,
    pub homomorphism: bool,
    pub injective: bool,
    pub essential_image: bool,
}

/// `ν_M : M -> Coind(M_σ)(σ^{-1})`, `ν(m_g)(a) = a_{σ g^{-1}} m_g`.
pub fn nu_map(m: &GradedModule, sigma: usize) -> Result<(Matrix, NuCheck)> {
    let a = m.algebra().clone();
    let f = a.field();
    let g = a.group().clone();
    let (ae, embed) = identity_component(&a)?;
    let keep = m.basis_of_degree(sigma);
    let m_sigma = m.restrict(&ae, &embed, &keep, vec![0; keep.len()])?;
    let co = coinduced(&a, &m_sigma)?;
    let target = co.module.shift(g.inv(sigma));
    let mut pos = vec![usize::MAX; m.dim()];
    for (t, &i) in keep.iter().enumerate() {
        pos[i] = t;
    }
    let mut nu = Matrix::zeros(m.dim(), target.dim());
    for v in 0..m.dim() {
        let d = m.degrees()[v];
        let dom = a.basis_of_degree(g.mul(sigma, g.inv(d)));
        if dom.is_empty() {
            continue;
        }
        let mut fm = Matrix::zeros(dom.len(), keep.len());
        for (k, &ai) in dom.iter().enumerate() {
            let img = m.act_basis(ai, &unit_vector(m.dim(), v));
            for (j, &x) in img.iter().enumerate() {
                if x != 0 {
                    fm.set(k, pos[j], x);
                }
            }
        }
        let c = co.coords(g.mul(d, g.inv(sigma)), &fm).expect("ν(m) is A_e-linear");
        nu.row_mut(v).copy_from_slice(&c);
    }
    let homomorphism = is_homomorphism(m, &target, &nu, g.identity());
    let injective = nu.rank(f) == m.dim();
    let image = GradedSubspace::hull(f, target.degrees_arc().clone(), g.order(), nu.to_rows());
    let essential_image = graded_socle(&target).is_subspace_of(&image);
    Ok((nu, NuCheck { faithful: m.is_faithful_at(sigma), homomorphism, injective, essential_image }))
}

/// `A*` as a graded left `A`-module: `(r f)(x) = f(x r)`, `deg b_i^* = deg(b_i)^{-1}`.
pub fn linear_dual_module(a: &Arc<GradedAlgebra>) -> GradedModule {
    let n = a.dim();
    let g = a.group();
    let mut rows: Vec<Vec<Vec<(u32, u32)>>> = vec![vec![Vec::new(); n]; n];
    // b_j b_r = c b_i  gives  b_r · b_i^* ∋ c b_j^*
    for (j, r, i, c) in a.entries() {
        rows[r][i].push((j as u32, c));
    }
    let action = rows
        .into_iter()
        .map(|mut rs| {
            for row in rs.iter_mut() {
                row.sort_unstable();
            }
            SparseMatrix::from_rows(n, rs)
        })
        .collect();
    let degrees = a.degrees().iter().map(|&d| g.inv(d)).collect();
    GradedModule::from_sparse(a.clone(), degrees, action)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct AlgebraDualCheck {
    /// `A(σ) ≅ A*`, decided through `top(A*) ≅ (A/J^gr)(σ)`: `A(σ)` is the
    /// projective cover of its top and `dim A* = dim A`.
    pub iso: bool,
    /// The direct isomorphism search, when it reached a decision.
    pub direct: Option<bool>,
}

pub fn graded_frobenius_algebra_check(a: &Arc<GradedAlgebra>, sigma: usize) -> Result<AlgebraDualCheck> {
    let star = linear_dual_module(a);
    let reg = GradedModule::left_regular(a);
    let top_star = top_of(&star);
    let top_reg = top_of(&reg);
    let iso = decided(is_graded_iso(&top_star, &top_reg.shift(sigma))?)?;
    let direct = is_graded_iso(&reg.shift(sigma), &star)?.decided();
    Ok(AlgebraDualCheck { iso, direct })
}

/// Every route at one σ.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaRow {
    pub sigma: usize,
    /// Coset-multiset condition on the Nakayama data.
    pub combinatorial: bool,
    /// QF and `soc(A)(σ) ≅ A/J^gr` on the left.
    pub socle_left: bool,
    /// QF and `(σ)soc(A) ≅ A/J^gr` on the right.
    pub socle_right: bool,
    /// Both socle conditions, without assuming QF.
    pub socle_both: bool,
    /// QF and `(A/J^gr)^(σ) ≅ A/J^gr` on the left.
    pub dual_top_left: bool,
    /// QF and `(σ)(A/J^gr)^ ≅ A/J^gr` on the right.
    pub dual_top_right: bool,
    /// σ-faithful both sides with component socle conditions.
    pub component_socles: bool,
    /// `A(σ) ≅ A*`.
    pub algebra_dual: bool,
    pub algebra_dual_direct: Option<bool>,
    pub faithful_left: bool,
    pub faithful_right: bool,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub graded_qf: bool,
    pub failure: Option<NakayamaFailure>,
    pub sigma_set: Vec<usize>,
    pub rows: Vec<SigmaRow>,
    pub strongly_graded: bool,
    pub all_agree: bool,
}

struct Shared {
    soc_l: GradedModule,
    top_l: GradedModule,
    soc_r: GradedModule,
    top_r: GradedModule,
    /// `(A/J^gr as right module)^`, a left module.
    dual_of_right_top: GradedModule,
    /// `(A/J^gr as left module)^`, a right module.
    dual_of_left_top: GradedModule,
}

fn shared(a: &Arc<GradedAlgebra>) -> Result<Shared> {
    let op = a.opposite();
    let (soc_l, top_l) = socle_and_top(a);
    let (soc_r, top_r) = socle_and_top(&op);
    let dual_of_right_top = dual_module(&top_r)?.module;
    let dual_of_left_top = dual_module(&top_l)?.module;
    Ok(Shared { soc_l, top_l, soc_r, top_r, dual_of_right_top, dual_of_left_top })
}

fn sigma_row(
    a: &Arc<GradedAlgebra>,
    qf: &QfAnalysis,
    sh: &Shared,
    sigma: usize,
) -> Result<SigmaRow> {
    let g = a.group();
    let s_inv = g.inv(sigma);
    let is_qf = qf.is_qf();
    let combinatorial = match &qf.nakayama {
        Ok(nak) => sigma_condition(&qf.classification, nak, a, sigma),
        Err(_) => false,
    };
    let left = decided(is_graded_iso(&sh.soc_l.shift(sigma), &sh.top_l)?)?;
    let right = decided(is_graded_iso(&sh.soc_r.shift(s_inv), &sh.top_r)?)?;
    let dual_left = decided(is_graded_iso(&sh.dual_of_right_top.shift(sigma), &sh.top_l)?)?;
    let dual_right = decided(is_graded_iso(&sh.dual_of_left_top.shift(s_inv), &sh.top_r)?)?;
    let component_socles = thm78_check(a, sigma)?;
    let alg = graded_frobenius_algebra_check(a, sigma)?;
    let row = SigmaRow {
        sigma,
        combinatorial,
        socle_left: is_qf && left,
        socle_right: is_qf && right,
        socle_both: left && right,
        dual_top_left: is_qf && dual_left,
        dual_top_right: is_qf && dual_right,
        component_socles,
        algebra_dual: alg.iso,
        algebra_dual_direct: alg.direct,
        faithful_left: is_sigma_faithful(a, sigma, Side::Left),
        faithful_right: is_sigma_faithful(a, sigma, Side::Right),
        agree: false,
    };
    let vals = [
        row.combinatorial,
        row.socle_left,
        row.socle_right,
        row.socle_both,
        row.dual_top_left,
        row.dual_top_right,
        row.component_socles,
        row.algebra_dual,
    ];
    let agree = vals.iter().all(|&v| v == vals[0]) && row.algebra_dual_direct.is_none_or(|d| d == row.algebra_dual);
    Ok(SigmaRow { agree, ..row })
}

/// Runs every σ-Frobenius route for every σ.
pub fn frobenius_report(a: &Arc<GradedAlgebra>, qf: &QfAnalysis, mode: ExecMode) -> Result<FrobeniusReport> {
    let sh = shared(a)?;
    let sigmas = a.group().all();
    let rows = par_map(mode, &sigmas, |&s| sigma_row(a, qf, &sh, s)).into_iter().collect::<Result<Vec<_>>>()?;
    let sigma_set = rows.iter().filter(|r| r.combinatorial).map(|r| r.sigma).collect();
    let all_agree = rows.iter().all(|r| r.agree);
    Ok(FrobeniusReport {
        graded_qf: qf.is_qf(),
        failure: qf.nakayama.as_ref().err().cloned(),
        sigma_set,
        rows,
        strongly_graded: is_strongly_graded(a),
        all_agree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorOracle {
    pub trials_left: usize,
    pub trials_right: usize,
    pub passed: bool,
    /// Side and graded dimensions of the first ideal violating the double
    /// annihilator identity.
    pub counterexample: Option<(Side, Vec<usize>)>,
}

fn targeted_left_ideals(a: &Arc<GradedAlgebra>, idempotents: &[Vec<u32>]) -> Vec<GradedSubspace> {
    let j = graded_radical(a);
    let soc = left_socle(a);
    let mut out = vec![ideals::whole(a), j.clone(), soc.clone()];
    for e in idempotents {
        let re = ideals::left_ideal_generated(a, std::slice::from_ref(e));
        let mut one_minus = a.unit().to_vec();
        a.field().axpy(a.field().neg(1), e, &mut one_minus);
        let mut gens: Vec<Vec<u32>> = vec![one_minus];
        gens.extend(j.vectors().iter().map(|x| a.mul(x, e)));
        out.push(ideals::left_ideal_generated(a, &gens));
        out.push(re);
    }
    for (_, s) in soc.basis() {
        out.push(ideals::left_ideal_generated(a, std::slice::from_ref(&s)));
        // also inside the socle of each principal indecomposable
        for e in idempotents {
            let se = a.mul(&s, e);
            if se.iter().any(|&x| x != 0) {
                out.push(ideals::left_ideal_generated(a, &[se]));
            }
        }
    }
    out
}

fn oracle_side(a: &Arc<GradedAlgebra>, idempotents: &[Vec<u32>], trials: usize, rng: &mut ChaCha8Rng) -> (usize, Option<Vec<usize>>) {
    let support = a.support();
    let check = |u: &GradedSubspace| ideals::left_annihilator(a, &ideals::right_annihilator(a, u)) == *u;
    let mut count = 0;
    for u in targeted_left_ideals(a, idempotents) {
        count += 1;
        if !check(&u) {
            return (count, Some(u.dims()));
        }
    }
    while count < trials {
        count += 1;
        let k = rng.gen_range(1..=3);
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|_| {
                let d = support[rng.gen_range(0..support.len())];
                random_homogeneous(a, d, rng)
            })
            .collect();
        let u = ideals::left_ideal_generated(a, &gens);
        if !check(&u) {
            return (count, Some(u.dims()));
        }
    }
    (count, None)
}

/// Double annihilator identities for graded left ideals (`ann_l ann_r U =
/// U`) and, through `A^op`, for graded right ideals. Targeted ideals (the
/// whole ring, `J^gr`, the socle, principal and maximal ideals, ideals
/// generated by socle elements) come first, then random ones.
pub fn qf_annihilator_oracle(a: &Arc<GradedAlgebra>, trials: usize, seed: u64) -> Result<AnnihilatorOracle> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idempotents: Vec<Vec<u32>> =
        crate::decomp::primitive_idempotents(a, seed)?.into_iter().map(|(e, _)| e).collect();
    let (trials_left, bad_left) = oracle_side(a, &idempotents, trials, &mut rng);
    if let Some(d) = bad_left {
        return Ok(AnnihilatorOracle { trials_left, trials_right: 0, passed: false, counterexample: Some((Side::Left, d)) });
    }
    let op = a.opposite();
    let (trials_right, bad_right) = oracle_side(&op, &idempotents, trials, &mut rng);
    Ok(AnnihilatorOracle {
        trials_left,
        trials_right,
        passed: bad_right.is_none(),
        counterexample: bad_right.map(|d| (Side::Right, d)),
    })
}
