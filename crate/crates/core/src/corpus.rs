//! Built-in corpus of small graded algebras used by the verification
//! suites, plus seeded random members.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::constructions::{
    commutative_monomial, cyclic_nakayama, graded_corner, graded_division_ring, group_algebra, ground_field,
    matrix_index, matrix_over, named_inner, product_algebra, quaternion_cocycle, quiver_algebra, trivial_extension,
    truncated_polynomial, upper_triangular, Arrow, GradedDivisionSpec,
};
use crate::error::Result;
use crate::field::PrimeField;
use crate::group::FiniteGroup;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub algebra: Arc<GradedAlgebra>,
    /// Known answer to the graded QF question, when the family settles it.
    pub expect_qf: Option<bool>,
    /// Graded simple, usable for structure recovery.
    pub graded_simple: bool,
}

fn entry(name: &str, a: GradedAlgebra, expect_qf: Option<bool>) -> CorpusEntry {
    CorpusEntry { name: name.into(), algebra: Arc::new(a), expect_qf, graded_simple: false }
}

fn simple(name: &str, a: GradedAlgebra) -> CorpusEntry {
    CorpusEntry { name: name.into(), algebra: Arc::new(a), expect_qf: Some(true), graded_simple: true }
}

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::named(name).expect("built-in group"))
}

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).expect("built-in prime")
}

/// `diag(e_{k_1}, .., e_{k_n}) M_n(B)(g) diag(..)` for vertex idempotents
/// `e_k` of a quiver algebra (basis index `k`).
pub fn corner_expansion(b: &GradedAlgebra, shifts: &[usize], vertices: &[usize]) -> Result<GradedAlgebra> {
    let m = matrix_over(b, shifts)?;
    let n = shifts.len();
    let mut e = vec![0u32; m.dim()];
    for (i, &k) in vertices.iter().enumerate() {
        e[matrix_index(n, b.dim(), i, i, k)] = 1;
    }
    graded_corner(&m, &e)
}

/// Division ring `k^α[H]` with `H` given by labels, then `M_n` with shifts.
fn matrix_division(p: u32, g: &Arc<FiniteGroup>, support: &[&str], shifts: &[&str], quaternion: bool) -> Result<GradedAlgebra> {
    let f = field(p);
    let support: Vec<usize> = support.iter().map(|s| g.parse_element(s)).collect::<Result<_>>()?;
    let cocycle = quaternion.then(|| quaternion_cocycle(f));
    let d = graded_division_ring(f, &GradedDivisionSpec { group: g.clone(), support, cocycle })?;
    let shifts: Vec<usize> = shifts.iter().map(|s| g.parse_element(s)).collect::<Result<_>>()?;
    matrix_over(&d, &shifts)
}

fn regraded_trivial_extension(inner: &str, p: u32) -> Result<GradedAlgebra> {
    trivial_extension(&named_inner(inner, field(p))?)
}

/// The fixed corpus: at least thirty instances, every dimension at most 64
/// and every group of order at most 8.
pub fn builtin() -> Vec<CorpusEntry> {
    build().expect("built-in corpus")
}

fn build() -> Result<Vec<CorpusEntry>> {
    let c2 = group("C2");
    let c3 = group("C3");
    let c4 = group("C4");
    let v4 = group("V4");
    let s3 = group("S3");
    let c2c4 = group("C2xC4");
    let t = group("trivial");
    let (f2, f3, f5, f7) = (field(2), field(3), field(5), field(7));
    let mut out = vec![
        simple("group-algebra C2 GF(3)", group_algebra(c2.clone(), f3)?),
        simple("group-algebra C2 GF(2)", group_algebra(c2.clone(), f2)?),
        simple("group-algebra C4 GF(5)", group_algebra(c4.clone(), f5)?),
        simple("group-algebra V4 GF(2)", group_algebra(v4.clone(), f2)?),
        simple("group-algebra S3 GF(3)", group_algebra(s3.clone(), f3)?),
        simple("group-algebra S3 GF(7)", group_algebra(s3.clone(), f7)?),
        simple("quaternion V4 GF(3)", matrix_division(3, &v4, &["e", "a", "b", "ab"], &["e"], true)?),
        simple("quaternion M2 V4 GF(3)", matrix_division(3, &v4, &["e", "a", "b", "ab"], &["e", "a"], true)?),
        simple("matrix C4 <c2> (e,c,c2) GF(3)", matrix_division(3, &c4, &["e", "c2"], &["e", "c", "c2"], false)?),
        simple("matrix C4 (e,c) GF(3)", matrix_division(3, &c4, &["e"], &["e", "c"], false)?),
        simple("matrix S3 <r> (e,s) GF(2)", matrix_division(2, &s3, &["e", "r", "r2"], &["e", "s"], false)?),
        simple("matrix S3 <s> (e,r) GF(5)", matrix_division(5, &s3, &["e", "s"], &["e", "r"], false)?),
        simple("matrix C2xC4 <a> (e,b,b2) GF(3)", matrix_division(3, &c2c4, &["e", "a"], &["e", "b", "b2"], false)?),
        entry("dual numbers C2 GF(3)", truncated_polynomial(f3, c2.clone(), 1, 2)?, Some(true)),
        entry("dual numbers C2 GF(5)", truncated_polynomial(f5, c2.clone(), 1, 2)?, Some(true)),
        entry("dual numbers trivial-degree C2 GF(5)", truncated_polynomial(f5, c2.clone(), 0, 2)?, Some(true)),
        entry("truncated x^3 C3 GF(3)", truncated_polynomial(f3, c3.clone(), 1, 3)?, Some(true)),
        entry("truncated x^4 C4 GF(2)", truncated_polynomial(f2, c4.clone(), 1, 4)?, Some(true)),
        entry("trivial extension upper-triangular-2 GF(3)", regraded_trivial_extension("upper-triangular-2", 3)?, Some(true)),
        entry("trivial extension dual-numbers GF(3)", regraded_trivial_extension("dual-numbers", 3)?, Some(true)),
        entry("trivial extension kronecker GF(2)", regraded_trivial_extension("kronecker", 2)?, Some(true)),
        entry("trivial extension upper-triangular-3 GF(5)", regraded_trivial_extension("upper-triangular-3", 5)?, Some(true)),
        entry("upper-triangular-2 C2 GF(3)", upper_triangular(f3, c2.clone(), &[1])?, Some(false)),
        entry("upper-triangular-3 trivial GF(5)", upper_triangular(f5, t.clone(), &[0, 0])?, Some(false)),
        entry("kronecker C2 GF(3)", quiver_algebra(f3, c2.clone(), 2, &[
            Arrow { source: 0, target: 1, degree: 0 },
            Arrow { source: 0, target: 1, degree: 1 },
        ], 1, &[])?, Some(false)),
        entry("square-zero x,y V4 GF(3)", quiver_algebra(f3, v4.clone(), 1, &[
            Arrow { source: 0, target: 0, degree: 1 },
            Arrow { source: 0, target: 0, degree: 2 },
        ], 1, &[])?, Some(false)),
        entry("x^2=y^2=0 V4 GF(3)", commutative_monomial(f3, v4.clone(), &[1, 2], &[2, 2])?, Some(true)),
        entry("x^2=y^3=0 C2xC4 GF(2)", commutative_monomial(f2, c2c4.clone(), &[1, 2], &[2, 3])?, Some(true)),
        entry("cyclic nakayama 2x2 C2 GF(3)", cyclic_nakayama(f3, c2.clone(), &[1, 0], 2)?, Some(true)),
        entry("cyclic nakayama 2x3 C4 GF(5)", cyclic_nakayama(f5, c4.clone(), &[1, 1], 3)?, Some(true)),
        entry("cyclic nakayama 3x2 C3 GF(2)", cyclic_nakayama(f2, c3.clone(), &[1, 1, 1], 2)?, Some(true)),
        entry("cyclic nakayama 3x4 S3 GF(3)", cyclic_nakayama(f3, s3.clone(), &[1, 3, 0], 4)?, Some(true)),
        entry(
            "corner expansion nakayama (e1,e1,e2) C2 GF(3)",
            corner_expansion(&cyclic_nakayama(f3, c2.clone(), &[1, 1], 2)?, &[0, 1, 0], &[0, 0, 1])?,
            Some(true),
        ),
        entry("matrix over dual numbers (e,c) C2 GF(3)", matrix_over(&truncated_polynomial(f3, c2.clone(), 1, 2)?, &[0, 1])?, Some(true)),
        entry(
            "product dual numbers x group algebra C2 GF(3)",
            product_algebra(&[&truncated_polynomial(f3, c2.clone(), 1, 2)?, &group_algebra(c2.clone(), f3)?])?,
            Some(true),
        ),
        entry(
            "product upper-triangular x field C2 GF(5)",
            product_algebra(&[&upper_triangular(f5, c2.clone(), &[1])?, &ground_field(c2.clone(), f5)])?,
            Some(false),
        ),
        entry(
            "product truncated x^3 x x^2 C3 GF(2)",
            product_algebra(&[&truncated_polynomial(f2, c3.clone(), 1, 3)?, &truncated_polynomial(f2, c3.clone(), 2, 2)?])?,
            Some(true),
        ),
    ];
    out.push(entry("field trivial GF(7)", ground_field(t, f7), Some(true)));
    Ok(out)
}

/// QF members of the built-in corpus.
pub fn qf_instances() -> Vec<CorpusEntry> {
    builtin().into_iter().filter(|e| e.expect_qf == Some(true)).collect()
}

/// Random algebras: cyclic Nakayama algebras, truncated polynomials and
/// matrix algebras over group algebras of subgroups, with random degrees.
pub fn random_members(count: usize, seed: u64) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = ["C2", "C3", "C4", "V4", "S3"];
    let primes = [2u32, 3, 5, 7];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = group(groups[rng.gen_range(0..groups.len())]);
        let p = primes[rng.gen_range(0..primes.len())];
        let f = field(p);
        let n = g.order();
        let k = out.len();
        let made = match rng.gen_range(0..3) {
            0 => {
                let verts = rng.gen_range(1..=3);
                let degrees: Vec<usize> = (0..verts).map(|_| rng.gen_range(0..n)).collect();
                let loewy = rng.gen_range(2..=3);
                cyclic_nakayama(f, g.clone(), &degrees, loewy).map(|a| entry(&format!("random nakayama #{k}"), a, Some(true)))
            }
            1 => {
                let d = rng.gen_range(0..n);
                let m = rng.gen_range(2..=4);
                truncated_polynomial(f, g.clone(), d, m).map(|a| entry(&format!("random truncated #{k}"), a, Some(true)))
            }
            _ => {
                let size = rng.gen_range(1..=3);
                let shifts: Vec<usize> = (0..size).map(|_| rng.gen_range(0..n)).collect();
                let h = g.subgroup_generated(&[rng.gen_range(0..n)]);
                graded_division_ring(f, &GradedDivisionSpec::untwisted(g.clone(), h))
                    .and_then(|d| matrix_over(&d, &shifts))
                    .map(|a| simple(&format!("random matrix #{k}"), a))
            }
        };
        if let Ok(e) = made {
            if e.algebra.dim() <= 64 {
                out.push(e);
            }
        }
    }
    out
}

/// A generated `M_n(k[H])(g_1..g_n)` with its defining data.
#[derive(Clone, Debug)]
pub struct MatrixInstance {
    pub name: String,
    pub support: Vec<usize>,
    pub shifts: Vec<usize>,
    pub algebra: Arc<GradedAlgebra>,
}

/// Seeded matrix algebras over graded division rings: random group,
/// cyclic subgroup `H` (the quaternion twist on V4 when `H` is everything),
/// `1 <= n <= 3` random shifts.
pub fn matrix_instances(count: usize, seed: u64) -> Vec<MatrixInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups = ["C2", "C4", "V4", "S3", "C2xC4"];
    let primes = [3u32, 5];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let g = group(groups[rng.gen_range(0..groups.len())]);
        let p = primes[rng.gen_range(0..primes.len())];
        let f = field(p);
        let order = g.order();
        let (support, cocycle) = if g.labels().iter().any(|l| l == "ab") && rng.gen_bool(0.3) {
            (g.all(), Some(quaternion_cocycle(f)))
        } else {
            (g.subgroup_generated(&[rng.gen_range(0..order)]), None)
        };
        let n = rng.gen_range(1..=3);
        let shifts: Vec<usize> = (0..n).map(|_| rng.gen_range(0..order)).collect();
        let spec = GradedDivisionSpec { group: g.clone(), support: support.clone(), cocycle };
        let Ok(a) = graded_division_ring(f, &spec).and_then(|d| matrix_over(&d, &shifts)) else { continue };
        if a.dim() > 64 {
            continue;
        }
        let name = format!(
            "M{}(GF({})[{{{}}}]) over order-{} group, shifts ({})",
            n,
            p,
            g.labels_of(&support).join(","),
            order,
            g.labels_of(&shifts).join(",")
        );
        out.push(MatrixInstance { name, support, shifts, algebra: Arc::new(a) });
    }
    out
}

/// Size budget for [`corpus_generate`].
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_dim: usize,
    pub max_group_order: usize,
    /// Seeded random members added to the fixed list.
    pub random: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_dim: 64, max_group_order: 8, random: 6 }
    }
}

/// The fixed corpus followed by `budget.random` seeded members, filtered by
/// the budget. Deterministic per seed.
pub fn corpus_generate(seed: u64, budget: Budget) -> Vec<CorpusEntry> {
    builtin()
        .into_iter()
        .chain(random_members(budget.random, seed))
        .filter(|e| e.algebra.dim() <= budget.max_dim && e.algebra.group().order() <= budget.max_group_order)
        .collect()
}
