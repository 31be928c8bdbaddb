//! Verification suites over a corpus. Each check is an executable
//! equivalence or identity; a failure records the instance, the σ involved
//! (if any) and the statement that was violated.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::config::Limits;
use crate::constructions::{product_algebra, right_translate_witness, shifts_equivalent, structure_recovery};
use crate::corpus::{matrix_instances, CorpusEntry};
use crate::decomp::{
    classify_isoshift, embedded_simple_types, identity_component, inertia_group, is_graded_simple, radical_from_simples,
    simple_embedding_criteria, simple_type_count, top_of,
};
use crate::error::Result;
use crate::format::{read_algebra, write_algebra};
use crate::frobenius::{
    analyze_qf, biduality_check, dual_module, frobenius_report, is_qf_ungraded, nu_map, qf_annihilator_oracle,
    socle_and_top, FrobeniusReport, QfAnalysis,
};
use crate::hom::is_graded_iso;
use crate::ideals;
use crate::module::GradedModule;
use crate::par::{par_map, ExecMode};
use crate::radicals::{
    baer_randomized, graded_socle, is_graded_semisimple, is_semisimple_module, is_vn_regular, radical_report,
    random_homogeneous, Tri,
};
use crate::report::{cycle_notation, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Radicals,
    Qf,
    Frobenius,
    Structure,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Radicals, Suite::Qf, Suite::Frobenius, Suite::Structure];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Radicals => "radicals",
            Suite::Qf => "qf",
            Suite::Frobenius => "frobenius",
            Suite::Structure => "structure",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub instance: String,
    pub sigma: Option<String>,
    pub statement: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub instances: usize,
    pub checks: usize,
    /// Number of checks run per statement.
    pub statements: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

/// One line of the per-σ route-agreement table.
#[derive(Clone, Debug, Serialize)]
pub struct RouteLine {
    pub instance: String,
    pub sigma: String,
    /// Route outcomes in the order combinatorial, socle left, socle right,
    /// both socles, dual top left, dual top right, component socles,
    /// algebra dual.
    pub routes: [bool; 8],
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub schema_version: u32,
    pub seed: u64,
    pub instances: usize,
    pub suites: Vec<SuiteSummary>,
    pub route_table: Vec<RouteLine>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub mode: ExecMode,
    pub limits: Limits,
    /// Generated matrix algebras for structure recovery.
    pub matrix_instances: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, trials: 200, mode: ExecMode::Parallel, limits: Limits::default(), matrix_instances: 10 }
    }
}

fn tally(into: &mut BTreeMap<String, usize>, log: &Log) {
    for (k, v) in &log.statements {
        *into.entry(k.clone()).or_default() += v;
    }
}

/// Collects check outcomes for one instance.
struct Log {
    instance: String,
    checks: usize,
    statements: BTreeMap<String, usize>,
    failures: Vec<Failure>,
}

impl Log {
    fn new(instance: &str) -> Self {
        Log { instance: instance.into(), checks: 0, statements: BTreeMap::new(), failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, sigma: Option<&str>, statement: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        *self.statements.entry(statement.to_string()).or_default() += 1;
        if !ok {
            self.failures.push(Failure {
                instance: self.instance.clone(),
                sigma: sigma.map(str::to_string),
                statement: statement.into(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, statement: &str, e: crate::error::Error) {
        self.check(false, None, statement, || format!("computation failed: {e}"));
    }
}

fn instance_seed(seed: u64, k: usize) -> u64 {
    seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn random_left_ideal(a: &Arc<GradedAlgebra>, rng: &mut ChaCha8Rng) -> crate::subspace::GradedSubspace {
    let support = a.support();
    let k = rng.gen_range(1..=3);
    let gens: Vec<Vec<u32>> =
        (0..k).map(|_| random_homogeneous(a, support[rng.gen_range(0..support.len())], rng)).collect();
    ideals::left_ideal_generated(a, &gens)
}

fn radicals_suite(e: &CorpusEntry, qf: &QfAnalysis, opts: &VerifyOptions, seed: u64, log: &mut Log) -> Result<()> {
    let a = &e.algebra;
    let f = a.field();
    let g = a.group();
    let r = radical_report(a)?;
    let je = r.jgr.part(g.identity());
    log.check(
        je.is_subspace_of(&r.j_epsilon, f) && r.j_epsilon.is_subspace_of(je, f),
        None,
        "graded radical meets the identity component in its Jacobson radical",
        || format!("dim J^gr_e = {}, dim J(A_e) = {}", je.dim(), r.j_epsilon.dim()),
    );
    log.check(r.nilpotency_index.is_some(), None, "the graded radical is nilpotent", String::new);
    let (quotient, _) = a.quotient(&r.jgr.total())?;
    log.check(is_graded_semisimple(&quotient), None, "A / J^gr is graded semisimple", String::new);
    log.check(
        radical_from_simples(a, &qf.classification) == r.jgr,
        None,
        "J^gr is the intersection of the annihilators of the graded simples",
        String::new,
    );
    log.check(
        crate::radicals::nilpotency_index(a, &r.zgr_left).is_some(),
        None,
        "the graded singular ideal is nilpotent",
        String::new,
    );
    match is_vn_regular(a, opts.limits.vn_cap) {
        Tri::Indeterminate => {}
        t => log.check(
            t.as_bool() == Some(is_graded_semisimple(a)),
            None,
            "graded von Neumann regular iff graded semisimple",
            || format!("regular = {t:?}"),
        ),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let x = random_homogeneous(a, a.support()[rng.gen_range(0..a.support().len())], &mut rng);
        let i = ideals::two_sided_ideal_generated(a, &[x]);
        if !i.is_zero() {
            log.check(
                !i.intersect(&r.socle_left).is_zero(),
                None,
                "a nonzero graded ideal contains a minimal graded left ideal",
                || format!("ideal dims {:?}", i.dims()),
            );
        }
    }
    if qf.is_qf() {
        log.check(r.zgr_left == r.jgr, None, "graded self-injective: Z^gr = J^gr", || {
            format!("Z^gr {:?}, J^gr {:?}", r.zgr_left.dims(), r.jgr.dims())
        });
        let ann_r = ideals::right_annihilator(a, &r.jgr);
        let ann_l = ideals::left_annihilator(a, &r.jgr);
        log.check(
            r.socle_left == r.socle_right && r.socle_left == ann_r && r.socle_left == ann_l,
            None,
            "QF: left socle = right socle = ann_r(J^gr) = ann_l(J^gr)",
            || format!("soc_l {:?}, soc_r {:?}", r.socle_left.dims(), r.socle_right.dims()),
        );
        for _ in 0..8 {
            let u = random_left_ideal(a, &mut rng);
            let v = random_left_ideal(a, &mut rng);
            let lhs = ideals::right_annihilator(a, &u).sum(&ideals::right_annihilator(a, &v));
            let rhs = ideals::right_annihilator(a, &u.intersect(&v));
            log.check(lhs == rhs, None, "self-injective: ann_r(U) + ann_r(V) = ann_r(U ∩ V)", || {
                format!("U {:?}, V {:?}", u.dims(), v.dims())
            });
        }
        let baer = baer_randomized(a, opts.trials, seed);
        log.check(baer.all_passed(), None, "graded Baer criterion on a self-injective algebra", || {
            format!("{} of {} trials passed", baer.passed, baer.trials)
        });
    }
    Ok(())
}

fn qf_suite(e: &CorpusEntry, qf: &QfAnalysis, opts: &VerifyOptions, seed: u64, log: &mut Log) -> Result<()> {
    let a = &e.algebra;
    let g = a.group();
    let is_qf = qf.is_qf();
    let ungraded = is_qf_ungraded(a)?;
    log.check(is_qf == ungraded, None, "graded QF iff QF", || format!("graded {is_qf}, ungraded {ungraded}"));
    let ann = qf_annihilator_oracle(a, opts.trials, seed)?;
    log.check(ann.passed == is_qf, None, "graded QF iff double annihilator conditions", || {
        format!("oracle passed = {}, counterexample {:?}", ann.passed, ann.counterexample)
    });
    if let Some(x) = e.expect_qf {
        log.check(x == is_qf, None, "known QF status of the family", || format!("expected {x}, got {is_qf}"));
    }
    let cls = &qf.classification;
    let t = cls.t();
    let mut ok_duals = true;
    let mut bad_dual_or_embedding = false;
    for i in 0..t {
        let s = cls.top(i);
        let d = dual_module(s)?.module;
        let simple = d.dim() > 0 && is_graded_simple(&d)?;
        ok_duals &= simple;
        let crit = simple_embedding_criteria(s)?;
        log.check(crit.agree, None, "embedding of a graded simple: four equivalent conditions", || format!("{crit:?}"));
        if !simple && d.dim() > 0 || !crit.shift_embeds {
            bad_dual_or_embedding = true;
        }
        for tau in 0..g.order() {
            let lhs = dual_module(&s.shift(tau))?.module;
            let rhs = d.shift(tau);
            log.check(
                is_graded_iso(&lhs, &rhs)?.is_iso(),
                Some(g.label(tau)),
                "dual of a shift: M(τ)^ = (τ^{-1})M^",
                String::new,
            );
        }
    }
    if is_qf {
        log.check(ok_duals, None, "QF: duals of graded simples are graded simple", String::new);
        let nak = qf.nakayama.as_ref().expect("QF has Nakayama data");
        log.check(nak.right_pairing.iter().all(|&x| x), None, "Nakayama pairing of left and right socles", || {
            format!("pairing {:?}, pi = {}", nak.right_pairing, cycle_notation(&nak.pi))
        });
        for i in 0..t {
            let si = &cls.classes[i].inertia;
            let sk = &cls.classes[nak.pi[i]].inertia;
            let mut conj = g.conjugate(nak.sigmas[i], sk);
            conj.sort_unstable();
            log.check(&conj == si, None, "inertia of S_i is the σ_i-conjugate of the inertia of S_π(i)", || {
                format!("class {}", i + 1)
            });
            let right = inertia_group(&qf.right_tops[i])?;
            let p = inertia_group(&cls.representative(i).module)?;
            log.check(&right == si && &p == si, None, "inertia agrees for S_i, P_i and their right analogues", || {
                format!("class {}: left {:?}, right {:?}, projective {:?}", i + 1, si, right, p)
            });
            let bd = biduality_check(cls.top(i))?;
            log.check(bd.homomorphism && bd.bijective, None, "QF: M -> M^^ is an isomorphism", || format!("{bd:?}"));
        }
        let bd = biduality_check(&GradedModule::left_regular(a))?;
        log.check(bd.homomorphism && bd.bijective, None, "QF: A -> A^^ is an isomorphism", || format!("{bd:?}"));
    } else {
        log.check(bad_dual_or_embedding, None, "non-QF: some graded simple has a non-simple dual or does not embed", String::new);
    }
    if crate::frobenius::is_strongly_graded(a) {
        let (ae, _) = identity_component(a)?;
        let qe = crate::frobenius::is_graded_qf(&ae)?;
        log.check(qe == is_qf, None, "strongly graded: graded QF iff A_e QF", || format!("A_e QF = {qe}"));
    }
    Ok(())
}

fn frobenius_suite(e: &CorpusEntry, qf: &QfAnalysis, fr: &FrobeniusReport, seed: u64, log: &mut Log) -> Result<()> {
    let a = &e.algebra;
    let g = a.group();
    let eps = g.identity();
    for r in &fr.rows {
        log.check(r.agree, Some(g.label(r.sigma)), "σ-graded Frobenius routes agree", || format!("{r:?}"));
    }
    if !fr.sigma_set.is_empty() {
        log.check(fr.graded_qf, None, "σ-graded Frobenius implies graded QF", String::new);
    }
    if is_graded_semisimple(a) {
        log.check(fr.sigma_set.contains(&eps), None, "graded semisimple algebras are graded Frobenius", String::new);
    }
    let (_, top) = socle_and_top(a);
    log.check(top.is_faithful_at(eps), None, "A / J^gr is ε-faithful", String::new);
    let reg = GradedModule::left_regular(a);
    for sigma in 0..g.order() {
        for (name, m) in [("A", &reg), ("A/J^gr", &top)] {
            let (_, nu) = nu_map(m, sigma)?;
            log.check(nu.homomorphism, Some(g.label(sigma)), "ν is a graded morphism", || name.to_string());
            log.check(!nu.faithful || nu.injective, Some(g.label(sigma)), "ν is injective on σ-faithful modules", || {
                name.to_string()
            });
            log.check(nu.essential_image, Some(g.label(sigma)), "ν has essential image", || name.to_string());
        }
    }
    let (ae, _) = identity_component(a)?;
    let qe = analyze_qf(&ae, seed)?;
    let fe = frobenius_report(&ae, &qe, ExecMode::Sequential)?;
    let ae_frobenius = fe.sigma_set.contains(&ae.group().identity());
    let graded_frobenius = fr.sigma_set.contains(&eps);
    let row = &fr.rows[eps];
    log.check(
        graded_frobenius == (row.faithful_left && row.faithful_right && ae_frobenius),
        Some(g.label(eps)),
        "graded Frobenius iff ε-faithful on both sides and A_e Frobenius",
        || format!("faithful {}/{}, A_e Frobenius {}", row.faithful_left, row.faithful_right, ae_frobenius),
    );
    if fr.strongly_graded {
        log.check(graded_frobenius == ae_frobenius, None, "strongly graded: graded Frobenius iff A_e Frobenius", String::new);
    }
    // submodule transfer of σ-faithfulness and essential semisimple submodules
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let soc = graded_socle(&reg);
    for _ in 0..6 {
        let n = random_left_ideal(a, &mut rng);
        if n.is_zero() {
            continue;
        }
        let (sub, _) = reg.submodule(&n);
        let essential = soc.is_subspace_of(&n);
        for sigma in 0..g.order() {
            let (mf, nf) = (reg.is_faithful_at(sigma), sub.is_faithful_at(sigma));
            log.check(!mf || nf, Some(g.label(sigma)), "submodules of σ-faithful modules are σ-faithful", String::new);
            log.check(
                !(essential && nf) || mf,
                Some(g.label(sigma)),
                "an essential σ-faithful submodule makes the module σ-faithful",
                String::new,
            );
        }
        if essential && is_semisimple_module(&sub) {
            log.check(n == soc, None, "an essential graded semisimple submodule is the socle", String::new);
        }
    }
    let _ = qf;
    Ok(())
}

fn structure_suite(e: &CorpusEntry, qf: &QfAnalysis, opts: &VerifyOptions, seed: u64, log: &mut Log) -> Result<()> {
    let a = &e.algebra;
    let g = a.group();
    let text = write_algebra(a);
    match read_algebra(&text, &opts.limits) {
        Ok(b) => log.check(b == **a && write_algebra(&b) == text, None, "file format round trip", String::new),
        Err(err) => log.error("file format round trip", err),
    }
    let cls = &qf.classification;
    log.check(cls.verified, None, "A is the sum of the shifted principal indecomposables", String::new);
    let other = classify_isoshift(a, seed ^ 0xabcdef)?;
    let key = |c: &crate::decomp::IsoshiftClassification| {
        let mut v: Vec<(usize, usize, usize)> =
            (0..c.t()).map(|i| (c.classes[i].members.len(), c.classes[i].inertia.len(), c.top(i).dim())).collect();
        v.sort_unstable();
        v
    };
    log.check(key(cls) == key(&other), None, "Krull-Schmidt: classification independent of the splitting", String::new);
    let op_t = classify_isoshift(&a.opposite(), seed)?.t();
    log.check(op_t == cls.t(), None, "same number of isoshift types on both sides", || {
        format!("left {}, right {}", cls.t(), op_t)
    });
    if a.dim() <= 32 {
        let ps = &cls.principal;
        for (k, p) in ps.iter().enumerate() {
            for q in ps.iter().skip(k) {
                for sigma in 0..g.order() {
                    let qs = q.module.shift(sigma);
                    let lhs = is_graded_iso(&p.module, &qs)?.is_iso();
                    let rhs = is_graded_iso(&p.top, &top_of(&qs))?.is_iso();
                    log.check(lhs == rhs, Some(g.label(sigma)), "projectives are isomorphic iff their tops are", String::new);
                }
            }
        }
    }
    if e.graded_simple {
        let rec = structure_recovery(a)?;
        log.check(rec.witness_verified, None, "graded simple algebras are graded matrix rings", String::new);
        log.check(classify_isoshift(a, seed)?.t() == 1, None, "graded matrix rings have one isoshift type", String::new);
    }
    if is_graded_semisimple(a) {
        for (i, c) in cls.classes.iter().enumerate() {
            let base = &cls.principal[c.members[0]].ideal;
            for (j, &m) in c.members.iter().enumerate() {
                let s = &cls.principal[m].ideal;
                log.check(
                    right_translate_witness(a, s, base, c.shifts[j]).is_some(),
                    Some(g.label(c.shifts[j])),
                    "isomorphic minimal graded left ideals differ by a homogeneous right translate",
                    || format!("class {} member {}", i + 1, j + 1),
                );
            }
        }
    }
    Ok(())
}

fn matrix_round_trips(opts: &VerifyOptions) -> Vec<Log> {
    let instances = matrix_instances(opts.matrix_instances, opts.seed);
    par_map(opts.mode, &instances, |m| {
        let mut log = Log::new(&m.name);
        let a = &m.algebra;
        let g = a.group();
        let mut run = || -> Result<()> {
            let rec = structure_recovery(a)?;
            log.check(rec.witness_verified, None, "graded simple algebras are graded matrix rings", String::new);
            log.check(rec.n == m.shifts.len(), None, "recovered size n", || format!("{} vs {}", rec.n, m.shifts.len()));
            let mut sup = m.support.clone();
            sup.sort_unstable();
            let mut rsup = rec.support.clone();
            rsup.sort_unstable();
            let conj = (0..g.order()).any(|t| {
                let mut c = g.conjugate(t, &rsup);
                c.sort_unstable();
                c == sup
            });
            log.check(conj, None, "recovered support of Δ", || format!("{rsup:?} vs {sup:?}"));
            log.check(
                shifts_equivalent(g, &sup, &m.shifts, &rsup, &rec.shifts).is_some(),
                None,
                "recovered shifts up to coset translation and permutation",
                || format!("{:?} vs {:?}", g.labels_of(&rec.shifts), g.labels_of(&m.shifts)),
            );
            let cls = classify_isoshift(a, opts.seed)?;
            log.check(cls.t() == 1, None, "graded matrix rings have one isoshift type", String::new);
            log.check(simple_type_count(&cls, g.order()) == g.order() / sup.len(), None, "number of graded simple types is [G : supp Δ]", String::new);
            let mut counts: Vec<usize> = {
                let mut reps: Vec<usize> = m.shifts.iter().map(|&x| g.right_coset_rep(&sup, x)).collect();
                reps.sort_unstable();
                let mut c = Vec::new();
                let mut k = 0;
                while k < reps.len() {
                    let l = reps[k..].iter().take_while(|&&r| r == reps[k]).count();
                    c.push(l);
                    k += l;
                }
                c
            };
            counts.sort_unstable();
            let mut mults: Vec<usize> = embedded_simple_types(a, &cls)?.into_iter().map(|(_, _, m)| m).collect();
            mults.sort_unstable();
            log.check(mults == counts, None, "embedded simple types match right cosets of the shifts", || {
                format!("{mults:?} vs {counts:?}")
            });
            Ok(())
        };
        if let Err(err) = run() {
            log.error("structure recovery", err);
        }
        log
    })
}

fn product_checks(entries: &[CorpusEntry], reports: &[Option<(QfAnalysis, FrobeniusReport)>], opts: &VerifyOptions) -> Vec<Log> {
    // pairs and one triple sharing field and group, small enough to multiply
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            let (a, b) = (&entries[i].algebra, &entries[j].algebra);
            if a.field() == b.field() && a.group() == b.group() && a.dim() + b.dim() <= 16 && reports[i].is_some() && reports[j].is_some() {
                groups.push(vec![i, j]);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x73);
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    while chosen.len() < 6 && !groups.is_empty() {
        chosen.push(groups.swap_remove(rng.gen_range(0..groups.len())));
    }
    if let Some(first) = chosen.first().cloned() {
        let a = &entries[first[0]].algebra;
        if let Some(k) = (0..entries.len()).find(|&k| {
            !first.contains(&k)
                && reports[k].is_some()
                && entries[k].algebra.field() == a.field()
                && entries[k].algebra.group() == a.group()
                && entries[k].algebra.dim() <= 6
        }) {
            chosen.push(vec![first[0], first[1], k]);
        }
    }
    par_map(opts.mode, &chosen, |ix| {
        let name = ix.iter().map(|&i| entries[i].name.as_str()).collect::<Vec<_>>().join(" × ");
        let mut log = Log::new(&name);
        let mut run = || -> Result<()> {
            let factors: Vec<&GradedAlgebra> = ix.iter().map(|&i| &*entries[i].algebra).collect();
            let p = Arc::new(product_algebra(&factors)?);
            let pq = analyze_qf(&p, opts.seed)?;
            let pr = frobenius_report(&p, &pq, ExecMode::Sequential)?;
            let all_qf = ix.iter().all(|&i| reports[i].as_ref().unwrap().1.graded_qf);
            log.check(pr.graded_qf == all_qf, None, "a product is graded QF iff every factor is", String::new);
            let mut inter: Vec<usize> = p.group().all();
            for &i in ix {
                let s = &reports[i].as_ref().unwrap().1.sigma_set;
                inter.retain(|x| s.contains(x));
            }
            log.check(pr.sigma_set == inter, None, "a product is σ-graded Frobenius iff every factor is", || {
                format!("{:?} vs {:?}", pr.sigma_set, inter)
            });
            Ok(())
        };
        if let Err(err) = run() {
            log.error("product algebras", err);
        }
        log
    })
}

/// Runs the requested suites over the corpus.
pub fn run(entries: &[CorpusEntry], suites: &[Suite], opts: &VerifyOptions) -> VerifySummary {
    let indexed: Vec<(usize, &CorpusEntry)> = entries.iter().enumerate().collect();
    let per_instance = par_map(opts.mode, &indexed, |&(k, e)| {
        let seed = instance_seed(opts.seed, k);
        let mut logs: Vec<Log> = suites.iter().map(|_| Log::new(&e.name)).collect();
        let analysis = analyze_qf(&e.algebra, seed).and_then(|q| {
            let fr = frobenius_report(&e.algebra, &q, ExecMode::Sequential)?;
            Ok((q, fr))
        });
        let (qf, fr) = match analysis {
            Ok(x) => x,
            Err(err) => {
                for l in logs.iter_mut() {
                    l.error("analysis", err.clone());
                }
                return (logs, None);
            }
        };
        for (s, log) in suites.iter().zip(logs.iter_mut()) {
            let res = match s {
                Suite::Radicals => radicals_suite(e, &qf, opts, seed, log),
                Suite::Qf => qf_suite(e, &qf, opts, seed, log),
                Suite::Frobenius => frobenius_suite(e, &qf, &fr, seed, log),
                Suite::Structure => structure_suite(e, &qf, opts, seed, log),
            };
            if let Err(err) = res {
                log.error(s.name(), err);
            }
        }
        (logs, Some((qf, fr)))
    });
    let reports: Vec<Option<(QfAnalysis, FrobeniusReport)>> = per_instance.iter().map(|(_, r)| r.clone()).collect();
    let mut summaries: Vec<SuiteSummary> = suites
        .iter()
        .enumerate()
        .map(|(si, &s)| {
            let logs: Vec<&Log> = per_instance.iter().map(|(l, _)| &l[si]).collect();
            SuiteSummary {
                suite: s,
                instances: logs.len(),
                checks: logs.iter().map(|l| l.checks).sum(),
                statements: BTreeMap::new(),
                failures: logs.iter().flat_map(|l| l.failures.iter().cloned()).collect(),
                passed: false,
            }
        })
        .collect();
    for (si, s) in summaries.iter_mut().enumerate() {
        for (l, _) in &per_instance {
            tally(&mut s.statements, &l[si]);
        }
        let extra = match s.suite {
            Suite::Structure => matrix_round_trips(opts),
            Suite::Frobenius => product_checks(entries, &reports, opts),
            _ => Vec::new(),
        };
        s.instances += extra.len();
        for l in extra {
            tally(&mut s.statements, &l);
            s.checks += l.checks;
            s.failures.extend(l.failures);
        }
        s.passed = s.failures.is_empty();
    }
    let route_table = if suites.contains(&Suite::Frobenius) {
        entries
            .iter()
            .zip(&reports)
            .filter_map(|(e, r)| r.as_ref().map(|(_, fr)| (e, fr)))
            .flat_map(|(e, fr)| {
                let g = e.algebra.group().clone();
                fr.rows.iter().map(move |r| RouteLine {
                    instance: e.name.clone(),
                    sigma: g.label(r.sigma).to_string(),
                    routes: [
                        r.combinatorial,
                        r.socle_left,
                        r.socle_right,
                        r.socle_both,
                        r.dual_top_left,
                        r.dual_top_right,
                        r.component_socles,
                        r.algebra_dual,
                    ],
                    agree: r.agree,
                })
            })
            .collect()
    } else {
        Vec::new()
    };
    let passed = summaries.iter().all(|s| s.passed);
    VerifySummary { schema_version: SCHEMA_VERSION, seed: opts.seed, instances: entries.len(), suites: summaries, route_table, passed }
}
