//! Graded Jacobson radical, socles, singular ideal and the ring-theoretic
//! checks built on them.
//!
//! The ungraded radical uses the characteristic-p trace method: with
//! `l = floor(log_p n)` for the regular representation of dimension `n`,
//! `I_{-1} = A` and `I_i = {x ∈ I_{i-1} : g_i(x y) = 0 ∀ y}` where
//! `g_i(x) = Tr(L~_x^{p^i}) / p^i mod p` for an integer lift `L~_x` of the
//! left multiplication matrix. Each `g_i` is linear on `I_{i-1}`, and
//! `I_l = J(A)`. The graded radical is `J^gr = ⊕_g (J(A) ∩ A_g)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::hom::{hom_space, random_combination};
use crate::ideals;
use crate::linalg::{unit_vector, Matrix, VecSpace};
use crate::module::GradedModule;
use crate::subspace::GradedSubspace;

/// Ungraded Jacobson radical `J(A)`.
pub fn radical(a: &GradedAlgebra) -> &VecSpace {
    a.radical_cache().get_or_init(|| trace_radical(a))
}

fn trace_radical(a: &GradedAlgebra) -> VecSpace {
    let f = a.field();
    let n = a.dim();
    let p = f.p() as u64;
    let mut levels = 0u32;
    while p.checked_pow(levels + 1).is_some_and(|q| q <= n as u64) {
        levels += 1;
    }
    let mut current = VecSpace::full(n);
    for i in 0..=levels {
        if current.is_zero() {
            break;
        }
        let basis = current.basis().to_vec();
        let phi: Vec<u32> = basis.iter().map(|x| trace_functional(a, x, i)).collect();
        // M[r][b] = phi(x_r b_b), evaluated through coordinates in I_{i-1}
        let mut m = Matrix::zeros(basis.len(), n);
        for (r, x) in basis.iter().enumerate() {
            for b in 0..n {
                let prod = a.mul(x, &unit_vector(n, b));
                let c = current.coords(&prod, f).expect("I_i is a right ideal");
                let mut acc = 0u32;
                for (t, &ct) in c.iter().enumerate() {
                    acc = f.add(acc, f.mul(ct, phi[t]));
                }
                m.set(r, b, acc);
            }
        }
        let kernel = m.left_kernel(f);
        current = VecSpace::span(
            n,
            kernel.iter().map(|c| current.combine(c, f)),
            f,
        );
    }
    current
}

/// `g_i(x) = (Tr(L~_x^{p^i}) mod p^{i+1}) / p^i`.
fn trace_functional(a: &GradedAlgebra, x: &[u32], i: u32) -> u32 {
    let f = a.field();
    let p = f.p() as u64;
    let l = a.left_mult_matrix(x);
    if i == 0 {
        let mut t = 0u32;
        for k in 0..a.dim() {
            t = f.add(t, l.get(k, k));
        }
        return t;
    }
    let q = p.pow(i + 1);
    let n = a.dim();
    let mut m: Vec<u64> = l.data().iter().map(|&v| v as u64).collect();
    for _ in 0..i {
        m = int_mat_pow(&m, n, p, q);
    }
    let tr = (0..n).map(|k| m[k * n + k]).sum::<u64>() % q;
    let pi = p.pow(i);
    debug_assert_eq!(tr % pi, 0, "trace congruence failed");
    ((tr / pi) % p) as u32
}

fn int_mat_mul(a: &[u64], b: &[u64], n: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            let row = &b[k * n..(k + 1) * n];
            let o = &mut out[i * n..(i + 1) * n];
            for j in 0..n {
                o[j] = (o[j] + aik * row[j]) % q;
            }
        }
    }
    out
}

fn int_mat_pow(a: &[u64], n: usize, mut e: u64, q: u64) -> Vec<u64> {
    let mut base = a.to_vec();
    let mut acc: Vec<u64> = (0..n * n).map(|k| u64::from(k / n == k % n)).collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mat_mul(&acc, &base, n, q);
        }
        e >>= 1;
        if e > 0 {
            base = int_mat_mul(&base, &base, n, q);
        }
    }
    acc
}

/// `J^gr(A) = ⊕_g (J(A) ∩ A_g)`.
pub fn graded_radical(a: &GradedAlgebra) -> GradedSubspace {
    let f = a.field();
    let j = radical(a);
    let parts = (0..a.group().order()).map(|g| j.intersect(&a.component(g), f)).collect();
    GradedSubspace::from_parts(f, Arc::new(a.degrees().to_vec()), parts)
}

pub fn is_graded_semisimple(a: &GradedAlgebra) -> bool {
    graded_radical(a).is_zero()
}

/// `J^gr M = 0`.
pub fn is_semisimple_module(m: &GradedModule) -> bool {
    let j = graded_radical(m.algebra());
    let n = m.dim();
    j.vectors().iter().all(|x| (0..n).all(|i| m.act(x, &unit_vector(n, i)).iter().all(|&c| c == 0)))
}

/// `soc^gr(M) = {m : J^gr m = 0}`.
pub fn graded_socle(m: &GradedModule) -> GradedSubspace {
    let j = graded_radical(m.algebra());
    m.annihilated_by(&j.vectors())
}

/// `J^gr M`.
pub fn radical_of_module(m: &GradedModule) -> GradedSubspace {
    let j = graded_radical(m.algebra()).vectors();
    let n = m.dim();
    let mut out = m.zero_subspace();
    for x in &j {
        for i in 0..n {
            out.insert(&m.act(x, &unit_vector(n, i)));
        }
    }
    out
}

/// Left socle of the algebra as a graded left ideal.
pub fn left_socle(a: &Arc<GradedAlgebra>) -> GradedSubspace {
    ideals::rebase(a, &graded_socle(&GradedModule::left_regular(a)))
}

/// Right socle `{x : x J^gr = 0}`.
pub fn right_socle(a: &Arc<GradedAlgebra>) -> GradedSubspace {
    ideals::rebase(a, &graded_socle(&GradedModule::right_regular(a)))
}

/// A graded submodule is essential iff it contains the graded socle.
pub fn is_essential(sub: &GradedSubspace, m: &GradedModule) -> bool {
    graded_socle(m).is_subspace_of(sub)
}

/// `Z^gr(A)_g = {x ∈ A_g : soc_l(A) x = 0}`.
pub fn graded_singular(a: &Arc<GradedAlgebra>) -> GradedSubspace {
    ideals::right_annihilator(a, &left_socle(a))
}

/// Least `m` with `I^m = 0`, searched up to `dim + 1`.
pub fn nilpotency_index(a: &GradedAlgebra, i: &GradedSubspace) -> Option<usize> {
    let mut power = i.clone();
    for k in 1..=a.dim() + 1 {
        if power.is_zero() {
            return Some(k);
        }
        power = ideals::product(a, &power, i);
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    True,
    False,
    Indeterminate,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Tri::True => Some(true),
            Tri::False => Some(false),
            Tri::Indeterminate => None,
        }
    }
}

fn regular_witness(a: &GradedAlgebra, x: &[u32], g: usize) -> bool {
    let f = a.field();
    let grp = a.group();
    let n = a.dim();
    let cand = a.basis_of_degree(grp.inv(g));
    if cand.is_empty() {
        return false;
    }
    let rows: Vec<Vec<u32>> = cand.iter().map(|&b| a.mul(&a.mul(x, &unit_vector(n, b)), x)).collect();
    Matrix::from_rows(n, &rows).solve_left(x, f).is_some()
}

/// Graded von Neumann regularity: every homogeneous `a ∈ A_g` has some
/// `b ∈ A_{g^{-1}}` with `a = a b a`. Exhaustive while the total number of
/// homogeneous elements is at most `cap`; a counterexample among basis
/// vectors or radical elements decides `False` regardless of the cap.
pub fn is_vn_regular(a: &GradedAlgebra, cap: u64) -> Tri {
    let f = a.field();
    let j = graded_radical(a);
    if let Some((_, x)) = j.basis().into_iter().next() {
        debug_assert!(!regular_witness(a, &x, a.homogeneous_degree(&x).unwrap()));
        return Tri::False;
    }
    let n = a.dim();
    for i in 0..n {
        if !regular_witness(a, &unit_vector(n, i), a.degrees()[i]) {
            return Tri::False;
        }
    }
    let p = f.p() as u64;
    let mut total = 0u64;
    for g in a.support() {
        let d = a.basis_of_degree(g).len() as u32;
        match p.checked_pow(d) {
            Some(c) => total = total.saturating_add(c),
            None => return Tri::Indeterminate,
        }
    }
    if total > cap {
        return Tri::Indeterminate;
    }
    for g in a.support() {
        let idx = a.basis_of_degree(g);
        let count = p.pow(idx.len() as u32);
        for code in 1..count {
            let mut x = vec![0u32; n];
            let mut c = code;
            for &i in idx {
                x[i] = (c % p) as u32;
                c /= p;
            }
            if !regular_witness(a, &x, g) {
                return Tri::False;
            }
        }
    }
    Tri::True
}

#[derive(Clone, Debug, Serialize)]
pub struct BaerCounterexample {
    /// Homogeneous generators of the left ideal.
    pub generators: Vec<Vec<u32>>,
    pub degree: usize,
    /// Images of the ideal's basis vectors.
    pub basis: Vec<Vec<u32>>,
    pub images: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaerResult {
    pub trials: usize,
    pub passed: usize,
    pub counterexample: Option<BaerCounterexample>,
}

impl BaerResult {
    pub fn all_passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub(crate) fn random_homogeneous(a: &GradedAlgebra, g: usize, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let f = a.field();
    let n = a.dim();
    let idx = a.basis_of_degree(g);
    let mut v = vec![0u32; n];
    if idx.is_empty() {
        return v;
    }
    if rng.gen_bool(0.5) {
        let i = idx[rng.gen_range(0..idx.len())];
        v[i] = rng.gen_range(1..f.p());
    } else {
        for &i in idx {
            v[i] = rng.gen_range(0..f.p());
        }
    }
    v
}

/// Randomized graded Baer test: random graded left ideals `I` (one to three
/// homogeneous generators) and random degree-σ maps `I -> A`; each map must
/// be right multiplication by some `m ∈ A_σ`.
pub fn baer_randomized(a: &Arc<GradedAlgebra>, trials: usize, seed: u64) -> BaerResult {
    let f = a.field();
    let n = a.dim();
    let grp = a.group().clone();
    let support = a.support();
    let regular = GradedModule::left_regular(a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..trials {
        let k = rng.gen_range(1..=3);
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|_| random_homogeneous(a, support[rng.gen_range(0..support.len())], &mut rng))
            .collect();
        let sigma = rng.gen_range(0..grp.order());
        let ideal = regular.submodule_generated(&gens);
        if ideal.is_zero() {
            passed += 1;
            continue;
        }
        let (imod, emb) = regular.submodule(&ideal);
        let hs = hom_space(&imod, &regular, sigma).expect("same algebra");
        if hs.is_empty() {
            passed += 1;
            continue;
        }
        let h = random_combination(&hs, &mut rng, f);
        // solve x_a m = h(x_a) for m in A_σ
        let cand = a.basis_of_degree(sigma);
        let dim_i = emb.rows();
        let mut sys = Matrix::zeros(cand.len(), dim_i * n);
        let mut target = vec![0u32; dim_i * n];
        for r in 0..dim_i {
            let x = emb.row(r);
            for (t, &b) in cand.iter().enumerate() {
                sys.row_mut(t)[r * n..(r + 1) * n].copy_from_slice(&a.mul(x, &unit_vector(n, b)));
            }
            target[r * n..(r + 1) * n].copy_from_slice(h.matrix.row(r));
        }
        let extends = if cand.is_empty() {
            target.iter().all(|&x| x == 0)
        } else {
            sys.solve_left(&target, f).is_some()
        };
        if extends {
            passed += 1;
        } else {
            return BaerResult {
                trials,
                passed,
                counterexample: Some(BaerCounterexample {
                    generators: gens,
                    degree: sigma,
                    basis: emb.to_rows(),
                    images: h.matrix.to_rows(),
                }),
            };
        }
    }
    BaerResult { trials, passed, counterexample: None }
}


/// The radical-layer data of one algebra.
#[derive(Clone, Debug)]
pub struct RadicalReport {
    pub jgr: GradedSubspace,
    pub nilpotency_index: Option<usize>,
    /// `J(A_e)` in coordinates of `A`.
    pub j_epsilon: VecSpace,
    pub socle_left: GradedSubspace,
    pub socle_right: GradedSubspace,
    pub zgr_left: GradedSubspace,
}

pub fn radical_report(a: &Arc<GradedAlgebra>) -> crate::error::Result<RadicalReport> {
    let jgr = graded_radical(a);
    let (ae, embed) = crate::decomp::identity_component(a)?;
    let n = a.dim();
    let j_epsilon = VecSpace::span(
        n,
        radical(&ae).basis().iter().map(|v| {
            let mut w = vec![0u32; n];
            for (t, &i) in embed.iter().enumerate() {
                w[i] = v[t];
            }
            w
        }),
        a.field(),
    );
    Ok(RadicalReport {
        nilpotency_index: nilpotency_index(a, &jgr),
        jgr,
        j_epsilon,
        socle_left: left_socle(a),
        socle_right: right_socle(a),
        zgr_left: graded_singular(a),
    })
}
