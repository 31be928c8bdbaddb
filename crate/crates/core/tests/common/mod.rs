//! Test-side oracles. They use only the structure constants (via `mul`),
//! the degree map and module actions, together with a small elimination
//! routine of their own, so they share no algorithm with the library.
#![allow(dead_code)]

use grfrob::{GradedAlgebra, GradedModule};

/// Arithmetic-only echelon form over GF(p); returns the nonzero reduced rows.
pub fn echelon(rows: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let p = p as u64;
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x as u64 % p).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = modpow(m[rank][c], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let t = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] + p * p - t * m[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m.into_iter().map(|r| r.into_iter().map(|x| x as u32).collect()).collect()
}

fn modpow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    echelon(rows, p).len()
}

pub fn in_span(rows: &[Vec<u32>], v: &[u32], p: u32) -> bool {
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    rank(&ext, p) == rank(rows, p)
}

pub fn same_span(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> bool {
    let ra = rank(a, p);
    ra == rank(b, p) && ra == rank(&[a, b].concat(), p)
}

/// `{x : Σ x_i rows_i = 0}`.
pub fn left_kernel(rows: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let n = rows.len();
    let w = rows.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<u32>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| u32::from(i == j)));
            v
        })
        .collect();
    echelon(&aug, p)
        .into_iter()
        .filter(|r| r[..w].iter().all(|&x| x == 0))
        .map(|r| r[w..].to_vec())
        .collect()
}

pub fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

pub fn combine(basis: &[Vec<u32>], coeffs: &[u32], p: u32) -> Vec<u32> {
    let n = basis.first().map_or(0, |b| b.len());
    let mut out = vec![0u64; n];
    for (b, &c) in basis.iter().zip(coeffs) {
        for (o, &x) in out.iter_mut().zip(b) {
            *o = (*o + c as u64 * x as u64) % p as u64;
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

/// All nonzero coefficient vectors of length `d` whose first nonzero entry is 1,
/// or `None` if there are more than `cap`.
pub fn projective_points(d: usize, p: u32, cap: usize) -> Option<Vec<Vec<u32>>> {
    let total = (p as f64).powi(d as i32);
    if total > cap as f64 {
        return None;
    }
    let mut out = Vec::new();
    let mut v = vec![0u32; d];
    loop {
        if let Some(first) = v.iter().find(|&&x| x != 0) {
            if *first == 1 {
                out.push(v.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == d {
                return Some(out);
            }
            v[i] += 1;
            if v[i] < p {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Basis indices of degree `g`.
pub fn basis_in(a: &GradedAlgebra, g: usize) -> Vec<usize> {
    (0..a.dim()).filter(|&i| a.degrees()[i] == g).collect()
}

/// `span{x y : x ∈ xs, y ∈ ys}`.
pub fn products(a: &GradedAlgebra, xs: &[Vec<u32>], ys: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let p = a.field().p();
    let all: Vec<Vec<u32>> = xs.iter().flat_map(|x| ys.iter().map(move |y| a.mul(x, y))).collect();
    echelon(&all, p)
}

/// Smallest `k` with `I^k = 0` for the span `I` of `ideal`, or `None` if the
/// powers stabilise above zero.
pub fn nilpotency(a: &GradedAlgebra, ideal: &[Vec<u32>]) -> Option<usize> {
    let p = a.field().p();
    let mut cur = echelon(ideal, p);
    let mut k = 1;
    while !cur.is_empty() {
        let next = products(a, &cur, ideal);
        if next.len() == cur.len() {
            return None;
        }
        cur = next;
        k += 1;
    }
    Some(k)
}

/// Certifies that `j` is the Jacobson radical of the subalgebra spanned by
/// `sub`: `j` is a nilpotent two-sided ideal of it and no nonzero cyclic left
/// ideal of the quotient is nilpotent. `None` when the quotient is too large
/// to enumerate.
pub fn radical_certificate(a: &GradedAlgebra, sub: &[Vec<u32>], j: &[Vec<u32>]) -> Option<bool> {
    let p = a.field().p();
    let j = echelon(j, p);
    if !j.iter().all(|x| in_span(sub, x, p)) {
        return Some(false);
    }
    for x in &j {
        for s in sub {
            if !in_span(&j, &a.mul(s, x), p) || !in_span(&j, &a.mul(x, s), p) {
                return Some(false);
            }
        }
    }
    if !j.is_empty() && nilpotency(a, &j).is_none() {
        return Some(false);
    }
    let mut complement = Vec::new();
    let mut acc = j.clone();
    for s in sub {
        if !in_span(&acc, s, p) {
            acc.push(s.clone());
            complement.push(s.clone());
        }
    }
    let points = projective_points(complement.len(), p, 20_000)?;
    for c in points {
        let x = combine(&complement, &c, p);
        let mut left: Vec<Vec<u32>> = sub.iter().map(|s| a.mul(s, &x)).collect();
        left.extend(j.iter().cloned());
        if nilpotency(a, &left).is_some() {
            return Some(false);
        }
    }
    Some(true)
}

/// `{x : y x = 0 for y ∈ ys}` (right annihilator) or `{x : x y = 0}`.
pub fn annihilator(a: &GradedAlgebra, ys: &[Vec<u32>], right: bool) -> Vec<Vec<u32>> {
    let n = a.dim();
    let p = a.field().p();
    let rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let x = unit(n, i);
            ys.iter().flat_map(|y| if right { a.mul(y, &x) } else { a.mul(&x, y) }).collect()
        })
        .collect();
    if ys.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    left_kernel(&rows, p)
}

/// Homogeneous vectors of degree `g` in `A`, up to scalars.
pub fn homogeneous_points(a: &GradedAlgebra, g: usize, cap: usize) -> Option<Vec<Vec<u32>>> {
    let idx = basis_in(a, g);
    let n = a.dim();
    let p = a.field().p();
    Some(
        projective_points(idx.len(), p, cap)?
            .into_iter()
            .map(|c| {
                let mut v = vec![0; n];
                for (&i, &x) in idx.iter().zip(&c) {
                    v[i] = x;
                }
                v
            })
            .collect(),
    )
}

/// Degree-σ faithfulness by definition: every nonzero homogeneous `v` has
/// `(A v)_σ ≠ 0` (left) or `(v A)_σ ≠ 0` (right). Every nonzero graded
/// one-sided ideal contains such a cyclic ideal.
pub fn sigma_faithful_oracle(a: &GradedAlgebra, sigma: usize, left: bool, cap: usize) -> Option<bool> {
    let g = a.group();
    let n = a.dim();
    for h in 0..g.order() {
        let need = if left { g.mul(sigma, g.inv(h)) } else { g.mul(g.inv(h), sigma) };
        let others = basis_in(a, need);
        for v in homogeneous_points(a, h, cap)? {
            let hit = others.iter().any(|&b| {
                let e = unit(n, b);
                let w = if left { a.mul(&e, &v) } else { a.mul(&v, &e) };
                w.iter().any(|&x| x != 0)
            });
            if !hit {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Whether `A(σ) ≅ A*` as graded left modules, by searching for the image
/// `λ ∈ (A_σ)^*` of `1`: the map `a ↦ (b ↦ λ(b a))` must be injective on
/// every component and the graded dimensions must match.
pub fn sigma_frobenius_oracle(a: &GradedAlgebra, sigma: usize, cap: usize) -> Option<bool> {
    let g = a.group();
    let p = a.field().p();
    let n = a.dim();
    for h in 0..g.order() {
        if basis_in(a, g.mul(h, sigma)).len() != basis_in(a, g.inv(h)).len() {
            return Some(false);
        }
    }
    let target = basis_in(a, sigma);
    'lambda: for lam in projective_points(target.len(), p, cap)? {
        let eval = |w: &[u32]| -> u32 {
            let s: u64 = target.iter().zip(&lam).map(|(&i, &l)| w[i] as u64 * l as u64).sum();
            (s % p as u64) as u32
        };
        for h in 0..g.order() {
            let src = basis_in(a, h);
            let others = basis_in(a, g.mul(sigma, g.inv(h)));
            let rows: Vec<Vec<u32>> = src
                .iter()
                .map(|&i| others.iter().map(|&b| eval(&a.mul(&unit(n, b), &unit(n, i)))).collect())
                .collect();
            if rank(&rows, p) < src.len() {
                continue 'lambda;
            }
        }
        return Some(true);
    }
    Some(false)
}

/// Graded simplicity by definition: some nonzero module and every nonzero
/// homogeneous vector generates everything.
pub fn graded_simple_oracle(m: &GradedModule, cap: usize) -> Option<bool> {
    let n = m.dim();
    if n == 0 {
        return Some(false);
    }
    let p = m.field().p();
    let r = m.algebra().dim();
    for h in 0..m.group().order() {
        let idx: Vec<usize> = (0..n).filter(|&i| m.degrees()[i] == h).collect();
        for c in projective_points(idx.len(), p, cap)? {
            let mut v = vec![0; n];
            for (&i, &x) in idx.iter().zip(&c) {
                v[i] = x;
            }
            let gen: Vec<Vec<u32>> = (0..r).map(|b| m.act_basis(b, &v)).collect();
            if rank(&gen, p) < n {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// The graded singular ideal by definition, component by component: a
/// homogeneous `x` lies in it when its left annihilator meets every nonzero
/// cyclic graded left ideal `A y`.
pub fn singular_oracle(a: &GradedAlgebra, cap: usize) -> Option<Vec<Vec<Vec<u32>>>> {
    let p = a.field().p();
    let n = a.dim();
    let all: Vec<usize> = (0..n).collect();
    let basis: Vec<Vec<u32>> = all.iter().map(|&i| unit(n, i)).collect();
    let g = a.group();
    let mut ys = Vec::new();
    for h in 0..g.order() {
        ys.extend(homogeneous_points(a, h, cap)?);
    }
    let mut parts = Vec::new();
    for h in 0..g.order() {
        let mut members = Vec::new();
        for x in homogeneous_points(a, h, cap)? {
            let ann = annihilator(a, std::slice::from_ref(&x), false);
            let essential = ys.iter().all(|y| {
                let cyc: Vec<Vec<u32>> = basis.iter().map(|b| a.mul(b, y)).collect();
                let cyc = echelon(&cyc, p);
                rank(&cyc, p) + rank(&ann, p) > rank(&[cyc.clone(), ann.clone()].concat(), p)
            });
            if essential {
                members.push(x);
            }
        }
        parts.push(echelon(&members, p));
    }
    Some(parts)
}

/// Expected graded dimensions of `M_n(k[H])(g_1..g_n)`: the `(i,j)` entry of
/// degree `t ∈ H` sits in degree `g_i^{-1} t g_j`.
pub fn matrix_graded_dims(g: &grfrob::FiniteGroup, h: &[usize], shifts: &[usize]) -> Vec<usize> {
    let mut dims = vec![0; g.order()];
    for &gi in shifts {
        for &gj in shifts {
            for &t in h {
                dims[g.mul3(g.inv(gi), t, gj)] += 1;
            }
        }
    }
    dims
}

/// Is there `τ` with `τ^{-1} H τ = H'` and `{H g_i} = {H τ r_i}` as multisets?
pub fn coset_data_equivalent(g: &grfrob::FiniteGroup, h: &[usize], gs: &[usize], h2: &[usize], rs: &[usize]) -> bool {
    let set = |xs: Vec<usize>| {
        let mut v = xs;
        v.sort_unstable();
        v.dedup();
        v
    };
    let coset = |x: usize| set(h.iter().map(|&t| g.mul(t, x)).collect());
    let mut want: Vec<Vec<usize>> = gs.iter().map(|&x| coset(x)).collect();
    want.sort();
    let h2s = set(h2.to_vec());
    (0..g.order()).any(|tau| {
        let conj = set(h.iter().map(|&t| g.mul3(g.inv(tau), t, tau)).collect());
        if conj != h2s {
            return false;
        }
        let mut got: Vec<Vec<usize>> = rs.iter().map(|&r| coset(g.mul(tau, r))).collect();
        got.sort();
        got == want
    })
}

/// Certifies that `j` is the graded radical: a nilpotent graded two-sided
/// ideal such that no homogeneous `x ∉ j` makes `A x + j` nilpotent. `None`
/// when some graded component of the quotient is too large to enumerate.
pub fn graded_radical_certificate(a: &GradedAlgebra, j: &[Vec<u32>], cap: usize) -> Option<bool> {
    let p = a.field().p();
    let n = a.dim();
    let j = echelon(j, p);
    let basis: Vec<Vec<u32>> = (0..n).map(|i| unit(n, i)).collect();
    for x in &j {
        for s in &basis {
            if !in_span(&j, &a.mul(s, x), p) || !in_span(&j, &a.mul(x, s), p) {
                return Some(false);
            }
        }
    }
    if !j.is_empty() && nilpotency(a, &j).is_none() {
        return Some(false);
    }
    for h in 0..a.group().order() {
        let mut acc = j.clone();
        let mut complement = Vec::new();
        for i in basis_in(a, h) {
            if !in_span(&acc, &basis[i], p) {
                acc.push(basis[i].clone());
                complement.push(basis[i].clone());
            }
        }
        for c in projective_points(complement.len(), p, cap)? {
            let x = combine(&complement, &c, p);
            let mut left: Vec<Vec<u32>> = basis.iter().map(|s| a.mul(s, &x)).collect();
            left.extend(j.iter().cloned());
            if nilpotency(a, &left).is_some() {
                return Some(false);
            }
        }
    }
    Some(true)
}
