//! Factories for graded algebras and the recovery of `M_n(Δ)(g_1..g_n)`
//! from a graded simple algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Entry, GradedAlgebra};
use crate::decomp::primitive_idempotents;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::group::FiniteGroup;
use crate::hom::hom_space;
use crate::ideals;
use crate::linalg::{unit_vector, Matrix, VecSpace};
use crate::module::GradedModule;
use crate::radicals::is_graded_semisimple;

/// A 2-cocycle `α : H × H -> GF(p)^×` on a subgroup, indexed by positions
/// in the subgroup's element list.
#[derive(Clone, Debug)]
pub struct GradedDivisionSpec {
    pub group: Arc<FiniteGroup>,
    pub support: Vec<usize>,
    pub cocycle: Option<Vec<Vec<u32>>>,
}

impl GradedDivisionSpec {
    pub fn untwisted(group: Arc<FiniteGroup>, support: Vec<usize>) -> Self {
        GradedDivisionSpec { group, support, cocycle: None }
    }
}

fn cocycle_value(spec: &GradedDivisionSpec, pos: &HashMap<usize, usize>, x: usize, y: usize) -> u32 {
    match &spec.cocycle {
        None => 1,
        Some(t) => t[pos[&x]][pos[&y]],
    }
}

/// Checks normalization and `α(x,y)α(xy,z) = α(x,yz)α(y,z)`.
pub fn check_cocycle(spec: &GradedDivisionSpec, f: PrimeField) -> Result<()> {
    let g = &spec.group;
    if !g.is_subgroup(&spec.support) {
        return Err(Error::Validation("support is not a subgroup".into()));
    }
    let pos: HashMap<usize, usize> = spec.support.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let Some(t) = &spec.cocycle else { return Ok(()) };
    let k = spec.support.len();
    if t.len() != k || t.iter().any(|r| r.len() != k) {
        return Err(Error::Validation("cocycle table has the wrong shape".into()));
    }
    let a = |x, y| f.reduce(cocycle_value(spec, &pos, x, y) as u64);
    let e = g.identity();
    for &h in &spec.support {
        if a(e, h) != 1 || a(h, e) != 1 {
            return Err(Error::Validation("cocycle is not normalized".into()));
        }
    }
    for &x in &spec.support {
        for &y in &spec.support {
            if a(x, y) == 0 {
                return Err(Error::Validation("cocycle takes the value 0".into()));
            }
            for &z in &spec.support {
                let lhs = f.mul(a(x, y), a(g.mul(x, y), z));
                let rhs = f.mul(a(x, g.mul(y, z)), a(y, z));
                if lhs != rhs {
                    return Err(Error::Validation(format!(
                        "cocycle identity fails at ({}, {}, {})",
                        g.label(x),
                        g.label(y),
                        g.label(z)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// `α(x,y) = (-1)^{x1 y1 + x2 y2 + x2 y1}` on the Klein group with elements
/// `e, a, b, ab` read as vectors of `F_2^2`. Over odd `p` the twisted group
/// algebra is a graded quaternion algebra.
pub fn quaternion_cocycle(f: PrimeField) -> Vec<Vec<u32>> {
    let v = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let mut t = vec![vec![1u32; 4]; 4];
    for (i, &(x1, x2)) in v.iter().enumerate() {
        for (j, &(y1, y2)) in v.iter().enumerate() {
            if (x1 * y1 + x2 * y2 + x2 * y1) % 2 == 1 {
                t[i][j] = f.neg(1);
            }
        }
    }
    t
}

/// Twisted group algebra `k^α[H]` graded by `G ⊇ H`, with basis `u_h`.
/// Every homogeneous component is one-dimensional and spanned by a unit,
/// which is checked.
pub fn graded_division_ring(f: PrimeField, spec: &GradedDivisionSpec) -> Result<GradedAlgebra> {
    check_cocycle(spec, f)?;
    let g = &spec.group;
    let mut support = spec.support.clone();
    support.sort_unstable();
    let pos: HashMap<usize, usize> = spec.support.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let idx: HashMap<usize, usize> = support.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let mut entries = Vec::new();
    for (i, &x) in support.iter().enumerate() {
        for (j, &y) in support.iter().enumerate() {
            entries.push((i, j, idx[&g.mul(x, y)], f.reduce(cocycle_value(spec, &pos, x, y) as u64)));
        }
    }
    let names = support.iter().map(|&h| format!("u_{}", g.label(h))).collect();
    let unit = unit_vector(support.len(), idx[&g.identity()]);
    let alg = GradedAlgebra::new(f, g.clone(), names, support.clone(), &entries, unit)?;
    for (i, &x) in support.iter().enumerate() {
        let inv = unit_vector(support.len(), idx[&g.inv(x)]);
        let prod = alg.mul(&unit_vector(support.len(), i), &inv);
        if prod.iter().enumerate().any(|(k, &c)| (c != 0) != (k == idx[&g.identity()])) {
            return Err(Error::Validation("homogeneous element is not invertible".into()));
        }
    }
    Ok(alg)
}

/// `k[G]` with `deg u_g = g`.
pub fn group_algebra(group: Arc<FiniteGroup>, f: PrimeField) -> Result<GradedAlgebra> {
    let all = group.all();
    graded_division_ring(f, &GradedDivisionSpec::untwisted(group, all))
}

/// `GF(p)` concentrated in degree e.
pub fn ground_field(group: Arc<FiniteGroup>, f: PrimeField) -> GradedAlgebra {
    let e = group.identity();
    GradedAlgebra::new_trusted(f, group, vec!["1".into()], vec![e], &[(0, 0, 0, 1)], vec![1]).expect("field")
}

/// Basis index of `e_ij ⊗ b_t` in [`matrix_over`].
pub fn matrix_index(n: usize, d: usize, i: usize, j: usize, t: usize) -> usize {
    (i * n + j) * d + t
}

/// `M_n(B)` with `deg(e_ij ⊗ b) = g_i^{-1} deg(b) g_j`, so that the
/// degree-σ component has entries from `B_{g_i σ g_j^{-1}}`.
pub fn matrix_over(b: &GradedAlgebra, shifts: &[usize]) -> Result<GradedAlgebra> {
    let n = shifts.len();
    if n == 0 {
        return Err(Error::Validation("matrix size must be positive".into()));
    }
    let g = b.group();
    let d = b.dim();
    let mut degrees = vec![0; n * n * d];
    let mut names = vec![String::new(); n * n * d];
    for i in 0..n {
        for j in 0..n {
            for t in 0..d {
                let k = matrix_index(n, d, i, j, t);
                degrees[k] = g.mul3(g.inv(shifts[i]), b.degrees()[t], shifts[j]);
                names[k] = format!("e{}{}.{}", i + 1, j + 1, b.names()[t]);
            }
        }
    }
    let base = b.entries();
    let mut entries = Vec::with_capacity(base.len() * n * n * n);
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                for &(s, t, u, c) in &base {
                    entries.push((matrix_index(n, d, i, j, s), matrix_index(n, d, j, l, t), matrix_index(n, d, i, l, u), c));
                }
            }
        }
    }
    let mut unit = vec![0u32; n * n * d];
    for i in 0..n {
        for t in 0..d {
            unit[matrix_index(n, d, i, i, t)] = b.unit()[t];
        }
    }
    GradedAlgebra::new_trusted(b.field(), g.clone(), names, degrees, &entries, unit)
}

/// `M_n(Δ)(g_1..g_n)` for a graded division ring `Δ`.
pub fn graded_matrix_algebra(delta: &GradedAlgebra, shifts: &[usize]) -> Result<GradedAlgebra> {
    matrix_over(delta, shifts)
}

/// The column module `Σ_j = A e_jj` of `A = M_n(Δ)(g)`.
pub fn sigma_column_module(a: &Arc<GradedAlgebra>, n: usize, j: usize) -> GradedModule {
    let d = a.dim() / (n * n);
    let vs: Vec<Vec<u32>> =
        (0..n).flat_map(|i| (0..d).map(move |t| (i, t))).map(|(i, t)| unit_vector(a.dim(), matrix_index(n, d, i, j, t))).collect();
    let sub = ideals::hull(a, &vs);
    GradedModule::left_regular(a).submodule(&sub).0
}

/// The row module `Γ_i = e_ii A` as a left module over `A^op`.
pub fn gamma_row_module(a: &Arc<GradedAlgebra>, n: usize, i: usize) -> GradedModule {
    let d = a.dim() / (n * n);
    let op = a.opposite();
    let vs: Vec<Vec<u32>> =
        (0..n).flat_map(|j| (0..d).map(move |t| (j, t))).map(|(j, t)| unit_vector(a.dim(), matrix_index(n, d, i, j, t))).collect();
    let sub = ideals::hull(&op, &vs);
    GradedModule::left_regular(&op).submodule(&sub).0
}

/// `E(A) = A ⊕ A*` with `(a, f)(b, g) = (ab, a g + f b)`, graded by `C_2`
/// with `A` in degree e and `A*` in degree c. The input grading is ignored.
pub fn trivial_extension(a: &GradedAlgebra) -> Result<GradedAlgebra> {
    let f = a.field();
    let n = a.dim();
    let c2 = Arc::new(FiniteGroup::cyclic(2));
    let mut entries: Vec<Entry> = Vec::new();
    for (i, j, k, c) in a.entries() {
        entries.push((i, j, k, c));
        // b_j b_k^* = sum_i c[i][j][k] b_i^*  and  b_k^* b_i = sum_j c[i][j][k] b_j^*
        entries.push((j, n + k, n + i, c));
        entries.push((n + k, i, n + j, c));
    }
    let mut names: Vec<String> = a.names().to_vec();
    names.extend(a.names().iter().map(|s| format!("{s}*")));
    let mut degrees = vec![0; n];
    degrees.extend(std::iter::repeat_n(1, n));
    let mut unit = a.unit().to_vec();
    unit.extend(std::iter::repeat_n(0, n));
    GradedAlgebra::new_trusted(f, c2, names, degrees, &entries, unit)
}

/// Direct product with componentwise grading.
pub fn product_algebra(factors: &[&GradedAlgebra]) -> Result<GradedAlgebra> {
    let first = factors.first().ok_or_else(|| Error::Validation("product of no factors".into()))?;
    let f = first.field();
    let g = first.group().clone();
    let mut entries = Vec::new();
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut unit = Vec::new();
    let mut off = 0;
    for (r, a) in factors.iter().enumerate() {
        if a.field() != f || **a.group() != *g {
            return Err(Error::Validation("factors differ in field or group".into()));
        }
        for (i, j, k, c) in a.entries() {
            entries.push((off + i, off + j, off + k, c));
        }
        names.extend(a.names().iter().map(|s| format!("{s}#{}", r + 1)));
        degrees.extend_from_slice(a.degrees());
        unit.extend_from_slice(a.unit());
        off += a.dim();
    }
    GradedAlgebra::new_trusted(f, g, names, degrees, &entries, unit)
}

/// An arrow of a graded quiver.
#[derive(Clone, Copy, Debug)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub degree: usize,
}

/// Monomial quotient `kQ / I` where `I` kills every path longer than
/// `max_len` and every path containing one of `zero_relations` (sequences
/// of arrow indices). Paths compose left to right: `p q` follows `p` and
/// then `q`, and is zero unless `target(p) = source(q)`.
pub fn quiver_algebra(
    f: PrimeField,
    group: Arc<FiniteGroup>,
    vertices: usize,
    arrows: &[Arrow],
    max_len: usize,
    zero_relations: &[Vec<usize>],
) -> Result<GradedAlgebra> {
    let killed = |p: &[usize]| zero_relations.iter().any(|r| !r.is_empty() && p.windows(r.len()).any(|w| w == r.as_slice()));
    // paths as (source, target, arrows)
    let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..vertices).map(|v| (v, v, Vec::new())).collect();
    let mut frontier: Vec<usize> = Vec::new();
    for (a, ar) in arrows.iter().enumerate() {
        if ar.source >= vertices || ar.target >= vertices {
            return Err(Error::Validation("arrow endpoint out of range".into()));
        }
        if max_len >= 1 && !killed(&[a]) {
            paths.push((ar.source, ar.target, vec![a]));
            frontier.push(paths.len() - 1);
        }
    }
    let mut len = 1;
    while !frontier.is_empty() && len < max_len {
        let mut next = Vec::new();
        for &pi in &frontier {
            let (s, t, ref p) = paths[pi].clone();
            for (a, ar) in arrows.iter().enumerate() {
                if ar.source == t {
                    let mut q = p.clone();
                    q.push(a);
                    if !killed(&q) {
                        paths.push((s, ar.target, q));
                        next.push(paths.len() - 1);
                    }
                }
            }
        }
        frontier = next;
        len += 1;
        if paths.len() > 4096 {
            return Err(Error::CapExceeded("quiver algebra too large".into()));
        }
    }
    let index: HashMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, (s, _, p))| ((*s, p.clone()), i)).collect();
    let degree_of = |p: &[usize]| p.iter().fold(group.identity(), |acc, &a| group.mul(acc, arrows[a].degree));
    let mut entries = Vec::new();
    for (i, (s1, t1, p1)) in paths.iter().enumerate() {
        for (j, (s2, _, p2)) in paths.iter().enumerate() {
            if t1 != s2 {
                continue;
            }
            let mut q = p1.clone();
            q.extend_from_slice(p2);
            if let Some(&k) = index.get(&(*s1, q)) {
                entries.push((i, j, k, 1));
            }
        }
    }
    let names = paths
        .iter()
        .map(|(s, _, p)| {
            if p.is_empty() {
                format!("e{}", s + 1)
            } else {
                p.iter().map(|a| format!("a{}", a + 1)).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    let degrees = paths.iter().map(|(_, _, p)| degree_of(p)).collect();
    let mut unit = vec![0u32; paths.len()];
    for u in unit.iter_mut().take(vertices) {
        *u = 1;
    }
    GradedAlgebra::new_trusted(f, group, names, degrees, &entries, unit)
}

/// `k[x]/(x^m)` with `deg x = g`.
pub fn truncated_polynomial(f: PrimeField, group: Arc<FiniteGroup>, g: usize, m: usize) -> Result<GradedAlgebra> {
    quiver_algebra(f, group, 1, &[Arrow { source: 0, target: 0, degree: g }], m.saturating_sub(1), &[])
}

/// Upper-triangular `n × n` matrices (the path algebra of a linear quiver),
/// with arrow degrees `degrees[i]` for `e_i -> e_{i+1}`.
pub fn upper_triangular(f: PrimeField, group: Arc<FiniteGroup>, degrees: &[usize]) -> Result<GradedAlgebra> {
    let n = degrees.len() + 1;
    let arrows: Vec<Arrow> = degrees.iter().enumerate().map(|(i, &d)| Arrow { source: i, target: i + 1, degree: d }).collect();
    quiver_algebra(f, group, n, &arrows, n - 1, &[])
}

/// Cyclic Nakayama algebra on `n` vertices with all paths of length
/// `loewy` set to zero; self-injective.
pub fn cyclic_nakayama(f: PrimeField, group: Arc<FiniteGroup>, degrees: &[usize], loewy: usize) -> Result<GradedAlgebra> {
    let n = degrees.len();
    let arrows: Vec<Arrow> =
        degrees.iter().enumerate().map(|(i, &d)| Arrow { source: i, target: (i + 1) % n, degree: d }).collect();
    quiver_algebra(f, group, n, &arrows, loewy - 1, &[])
}

/// `k[x_1..x_m] / (x_i^{b_i})`, commutative, `deg x_i = degrees[i]`.
pub fn commutative_monomial(f: PrimeField, group: Arc<FiniteGroup>, degrees: &[usize], bounds: &[usize]) -> Result<GradedAlgebra> {
    if degrees.len() != bounds.len() || bounds.contains(&0) {
        return Err(Error::Validation("variable degrees and bounds must match".into()));
    }
    let mut monos: Vec<Vec<usize>> = vec![Vec::new()];
    for &b in bounds {
        monos = monos.into_iter().flat_map(|m| (0..b).map(move |e| [m.clone(), vec![e]].concat())).collect();
    }
    let index: BTreeMap<Vec<usize>, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let mut entries = Vec::new();
    for (i, a) in monos.iter().enumerate() {
        for (j, b) in monos.iter().enumerate() {
            let s: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(&k) = index.get(&s) {
                entries.push((i, j, k, 1));
            }
        }
    }
    let deg = |m: &[usize]| {
        m.iter().zip(degrees).fold(group.identity(), |acc, (&e, &d)| (0..e).fold(acc, |x, _| group.mul(x, d)))
    };
    let names = monos
        .iter()
        .map(|m| {
            let s: String = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, e) })
                .collect();
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        })
        .collect();
    let degs = monos.iter().map(|m| deg(m)).collect();
    let unit = unit_vector(monos.len(), 0);
    GradedAlgebra::new_trusted(f, group, names, degs, &entries, unit)
}

/// `e A e` for a homogeneous degree-e idempotent, with inherited grading.
pub fn graded_corner(a: &GradedAlgebra, e: &[u32]) -> Result<GradedAlgebra> {
    let f = a.field();
    let n = a.dim();
    if a.homogeneous_degree(e) != Some(a.group().identity()) || a.mul(e, e) != e {
        return Err(Error::Precondition("corner needs a degree-e idempotent".into()));
    }
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for g in 0..a.group().order() {
        let space = VecSpace::span(
            n,
            a.basis_of_degree(g).iter().map(|&i| a.mul(&a.mul(e, &unit_vector(n, i)), e)),
            f,
        );
        for v in space.basis() {
            basis.push(v.clone());
            degrees.push(g);
        }
    }
    let m = basis.len();
    let all = Matrix::from_rows(n, &basis);
    let coords = |v: &[u32]| all.solve_left(v, f).expect("corner is closed");
    let mut entries = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for (k, c) in coords(&a.mul(&basis[i], &basis[j])).into_iter().enumerate() {
                if c != 0 {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    let unit = coords(e);
    let names = (0..m).map(|i| format!("c{i}")).collect();
    GradedAlgebra::new_trusted(f, a.group().clone(), names, degrees, &entries, unit)
}

/// Inner algebras accepted by name (used by the CLI and the corpus).
pub fn named_inner(name: &str, f: PrimeField) -> Result<GradedAlgebra> {
    let t = Arc::new(FiniteGroup::trivial());
    match name {
        "field" => Ok(ground_field(t, f)),
        "dual-numbers" => truncated_polynomial(f, t, 0, 2),
        "upper-triangular-2" => upper_triangular(f, t, &[0]),
        "upper-triangular-3" => upper_triangular(f, t, &[0, 0]),
        "square-zero-2" => quiver_algebra(
            f,
            t,
            1,
            &[Arrow { source: 0, target: 0, degree: 0 }, Arrow { source: 0, target: 0, degree: 0 }],
            1,
            &[],
        ),
        "matrix-2" => matrix_over(&ground_field(t, f), &[0, 0]),
        "kronecker" => quiver_algebra(
            f,
            t,
            2,
            &[Arrow { source: 0, target: 1, degree: 0 }, Arrow { source: 0, target: 1, degree: 0 }],
            1,
            &[],
        ),
        _ => {
            if let Some(m) = name.strip_prefix("truncated-") {
                let m: usize = m.parse().map_err(|_| Error::Validation(format!("bad inner algebra {name}")))?;
                truncated_polynomial(f, t, 0, m)
            } else {
                Err(Error::Validation(format!("unknown inner algebra {name}")))
            }
        }
    }
}

/// Output of [`structure_recovery`].
#[derive(Clone, Debug)]
pub struct StructureRecovery {
    /// `END_R(V)` for a minimal graded left ideal `V`, product `f*g = g∘f`.
    pub delta: GradedAlgebra,
    pub support: Vec<usize>,
    pub n: usize,
    pub shifts: Vec<usize>,
    /// `M_n(Δ)(g_1..g_n)`.
    pub matrix_algebra: GradedAlgebra,
    /// Row `k` is the image of `b_k` under the isomorphism `R -> M_n(Δ)(g)`.
    pub witness: Matrix,
    pub witness_verified: bool,
}

/// Recovers `R ≅ M_n(Δ)(g_1..g_n)` for a graded simple `R`.
///
/// `V = R e` for a primitive idempotent `e ∈ R_e` is a minimal graded left
/// ideal. `V` is a free graded right module over `Δ = END_R(V)` with a
/// homogeneous basis `v_i`; writing `r v_j = Σ_i v_i δ_ij` identifies `R`
/// with matrices whose `(i,j)` entry has degree `deg(v_i)^{-1} σ deg(v_j)`,
/// which is the grading with `g_i = deg(v_i)^{-1}`.
pub fn structure_recovery(r: &Arc<GradedAlgebra>) -> Result<StructureRecovery> {
    let f = r.field();
    let g = r.group().clone();
    if !is_graded_semisimple(r) {
        return Err(Error::Precondition("algebra is not graded semisimple".into()));
    }
    let idem = primitive_idempotents(r, 0x5eed)?;
    let e = &idem[0].0;
    let n_r = r.dim();
    let v_sub = ideals::hull(r, &(0..n_r).map(|i| r.mul(&unit_vector(n_r, i), e)).collect::<Vec<_>>());
    if ideals::two_sided_ideal_generated(r, &v_sub.vectors()).dim() != n_r {
        return Err(Error::Precondition("algebra is not graded simple".into()));
    }
    let (v, _) = GradedModule::left_regular(r).submodule(&v_sub);
    let dv = v.dim();

    // Δ = END(V), homogeneous basis across degrees
    let mut homs = Vec::new();
    for sigma in 0..g.order() {
        homs.extend(hom_space(&v, &v, sigma)?);
    }
    let k = homs.len();
    let flat = Matrix::from_rows(dv * dv, &homs.iter().map(|h| h.matrix.data().to_vec()).collect::<Vec<_>>());
    let mut entries = Vec::new();
    for (i, a) in homs.iter().enumerate() {
        for (j, b) in homs.iter().enumerate() {
            let prod = a.matrix.mul(&b.matrix, f);
            let c = flat.solve_left(prod.data(), f).ok_or_else(|| Error::Validation("END(V) not closed".into()))?;
            for (t, &x) in c.iter().enumerate() {
                if x != 0 {
                    entries.push((i, j, t, x));
                }
            }
        }
    }
    let unit = flat
        .solve_left(Matrix::identity(dv).data(), f)
        .ok_or_else(|| Error::Validation("identity missing from END(V)".into()))?;
    let names = (0..k).map(|i| format!("d{i}")).collect();
    let delta = GradedAlgebra::new_trusted(f, g.clone(), names, homs.iter().map(|h| h.degree).collect(), &entries, unit)?;
    let mut support: Vec<usize> = delta.support();
    support.sort_unstable();

    // homogeneous right Δ-basis of V
    let mut span = VecSpace::zero(dv);
    let mut basis_vectors: Vec<Vec<u32>> = Vec::new();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    let mut basis_degrees = Vec::new();
    for m in 0..dv {
        let x = unit_vector(dv, m);
        if span.contains(&x, f) {
            continue;
        }
        for h in &homs {
            let y = h.matrix.apply(&x, f);
            span.insert(&y, f);
            cols.push(y);
        }
        basis_vectors.push(x);
        basis_degrees.push(v.degrees()[m]);
    }
    let n = basis_vectors.len();
    if n * k != dv || span.dim() != dv {
        return Err(Error::Validation("V is not free over END(V)".into()));
    }
    let shifts: Vec<usize> = basis_degrees.iter().map(|&d| g.inv(d)).collect();
    let mat = graded_matrix_algebra(&delta, &shifts)?;
    let coord_matrix = Matrix::from_rows(dv, &cols);

    // witness: r ↦ (δ_ij)
    let mut witness = Matrix::zeros(n_r, mat.dim());
    for b in 0..n_r {
        for (j, vj) in basis_vectors.iter().enumerate() {
            let img = v.act_basis(b, vj);
            let c = coord_matrix.solve_left(&img, f).expect("basis spans V");
            for i in 0..n {
                for t in 0..k {
                    witness.set(b, matrix_index(n, k, i, j, t), c[i * k + t]);
                }
            }
        }
    }
    let witness_verified = verify_algebra_iso(r, &mat, &witness);
    Ok(StructureRecovery { delta, support, n, shifts, matrix_algebra: mat, witness, witness_verified })
}

/// Is `w` (row `k` = image of `b_k`) a degree-preserving algebra isomorphism?
pub fn verify_algebra_iso(a: &GradedAlgebra, b: &GradedAlgebra, w: &Matrix) -> bool {
    let f = a.field();
    if a.dim() != b.dim() || !w.is_invertible(f) {
        return false;
    }
    if w.apply(a.unit(), f) != b.unit() {
        return false;
    }
    for i in 0..a.dim() {
        if b.homogeneous_degree(w.row(i)) != Some(a.degrees()[i]) {
            return false;
        }
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = w.apply(&a.mul(&unit_vector(a.dim(), i), &unit_vector(a.dim(), j)), f);
            if lhs != b.mul(w.row(i), w.row(j)) {
                return false;
            }
        }
    }
    true
}

/// `M_n(Δ)(g) ≅ M_n(Δ')(r)` data comparison: is there `τ` with
/// `τ H' τ^{-1} = H` and `{H τ r_i} = {H g_i}` as multisets of right cosets?
pub fn shifts_equivalent(g: &FiniteGroup, h: &[usize], gs: &[usize], h2: &[usize], rs: &[usize]) -> Option<usize> {
    if gs.len() != rs.len() {
        return None;
    }
    let mut hs: Vec<usize> = h.to_vec();
    hs.sort_unstable();
    let cosets = |xs: Vec<usize>| {
        let mut v: Vec<usize> = xs.into_iter().map(|x| g.right_coset_rep(&hs, x)).collect();
        v.sort_unstable();
        v
    };
    let target = cosets(gs.to_vec());
    (0..g.order()).find(|&tau| {
        let mut conj = g.conjugate(tau, h2);
        conj.sort_unstable();
        conj == hs && cosets(rs.iter().map(|&r| g.mul(tau, r)).collect()) == target
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalIdealWitness {
    pub degree: usize,
    pub element: Vec<u32>,
}

/// For minimal graded left ideals `S ≅ S'(g)` of a graded semisimple
/// algebra, finds homogeneous `r ∈ R_g` with `S' = S r`.
pub fn right_translate_witness(
    a: &GradedAlgebra,
    s: &crate::subspace::GradedSubspace,
    s2: &crate::subspace::GradedSubspace,
    g: usize,
) -> Option<MinimalIdealWitness> {
    let f = a.field();
    let n = a.dim();
    let idx = a.basis_of_degree(g);
    if idx.is_empty() {
        return None;
    }
    let svecs = s.vectors();
    let target = s2.total();
    // {r ∈ R_g : S r ⊆ S'}
    let complement: Vec<usize> = target.non_pivots();
    let mut m2 = Matrix::zeros(idx.len(), (svecs.len() * complement.len()).max(1));
    for (row, &i) in idx.iter().enumerate() {
        for (b, x) in svecs.iter().enumerate() {
            let mut y = a.mul(x, &unit_vector(n, i));
            target.reduce(&mut y, f);
            for (c, &col) in complement.iter().enumerate() {
                m2.set(row, b * complement.len() + c, y[col]);
            }
        }
    }
    let candidates = m2.left_kernel(f);
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0x38);
    for attempt in 0..(candidates.len() + 64) {
        let coeffs: Vec<u32> = if attempt < candidates.len() {
            candidates[attempt].clone()
        } else {
            let mut c = vec![0u32; idx.len()];
            for v in &candidates {
                f.axpy(rand::Rng::gen_range(&mut rng, 0..f.p()), v, &mut c);
            }
            c
        };
        let mut r = vec![0u32; n];
        for (t, &i) in idx.iter().enumerate() {
            r[i] = coeffs[t];
        }
        let image = VecSpace::span(n, svecs.iter().map(|x| a.mul(x, &r)), f);
        if image.dim() == target.dim() && image.dim() > 0 {
            return Some(MinimalIdealWitness { degree: g, element: r });
        }
    }
    None
}
