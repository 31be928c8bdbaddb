//! The acceptance gate: one PASS/FAIL line per criterion.
//!
//! Time limits are pinned per criterion and measured in the test profile
//! (opt-level 3). Values taken from worked examples are literal constants
//! below; everything else is compared against the oracles in `common`.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use grfrob::config::Limits;
use grfrob::constructions::{
    graded_division_ring, matrix_over, named_inner, structure_recovery, trivial_extension, truncated_polynomial,
    GradedDivisionSpec,
};
use grfrob::corpus::{corpus_generate, matrix_instances, Budget, CorpusEntry};
use grfrob::decomp::{classify_isoshift, identity_component};
use grfrob::frobenius::{analyze_qf, frobenius_report, is_graded_qf, is_qf_ungraded, is_sigma_faithful};
use grfrob::par::ExecMode;
use grfrob::radicals::{baer_randomized, graded_radical, left_socle, radical, radical_report, right_socle};
use grfrob::report::classification_block;
use grfrob::verify::{run, Suite, VerifyOptions, VerifySummary};
use grfrob::{FiniteGroup, GradedAlgebra, PrimeField, Side};

use common::*;

const TRIALS: usize = 200;
const SEED: u64 = 0;
/// Enumeration bound for the brute-force oracles.
const CAP: usize = 4096;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn group(name: &str) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::named(name).unwrap())
}

fn label_set(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = xs.iter().map(|&x| g.label(x).to_string()).collect();
    v.sort();
    v
}

fn counting() -> Outcome {
    let g = group("C4");
    let f = field(3);
    let c2 = g.parse_element("c2").unwrap();
    let delta = graded_division_ring(f, &GradedDivisionSpec::untwisted(g.clone(), g.subgroup_generated(&[c2]))).unwrap();
    let shifts: Vec<usize> = ["e", "c", "c2"].iter().map(|s| g.parse_element(s).unwrap()).collect();
    let a = Arc::new(matrix_over(&delta, &shifts).unwrap());
    let cls = classify_isoshift(&a, SEED).map_err(|e| e.to_string())?;
    let block = classification_block(&a, &cls).map_err(|e| e.to_string())?;
    let mut mults: Vec<usize> = block.embedded_types.iter().map(|t| t.multiplicity).collect();
    mults.sort_unstable_by(|x, y| y.cmp(x));
    ensure(block.simple_types == 2, || format!("simple types {}", block.simple_types))?;
    ensure(block.embedded_types.len() == 2, || format!("embedded types {}", block.embedded_types.len()))?;
    ensure(mults == vec![2, 1], || format!("multiplicities {mults:?}"))?;
    ensure(!block.gr_uniform, || "reported gr-uniform".into())?;
    Ok(format!("types 2, embedded multiplicities {mults:?}, gr-uniform false"))
}

fn flagship() -> Outcome {
    let g = group("C2");
    let c = g.parse_element("c").unwrap();
    let a = Arc::new(truncated_polynomial(field(5), g.clone(), c, 2).unwrap());
    let qf = analyze_qf(&a, SEED).map_err(|e| e.to_string())?;
    let fr = frobenius_report(&a, &qf, ExecMode::Parallel).map_err(|e| e.to_string())?;
    ensure(label_set(&g, &fr.sigma_set) == ["c"], || format!("sigma_set {:?}", label_set(&g, &fr.sigma_set)))?;
    for row in &fr.rows {
        let want = row.sigma == c;
        let routes = [
            row.combinatorial,
            row.socle_left,
            row.socle_right,
            row.socle_both,
            row.dual_top_left,
            row.dual_top_right,
            row.component_socles,
            row.algebra_dual,
        ];
        ensure(routes.iter().all(|&r| r == want), || format!("σ = {}: routes {routes:?}", g.label(row.sigma)))?;
        ensure(row.algebra_dual_direct.unwrap_or(want) == want, || "direct dual check disagrees".into())?;
        let oracle = sigma_frobenius_oracle(&a, row.sigma, CAP);
        ensure(oracle == Some(want), || format!("σ = {}: oracle {oracle:?}", g.label(row.sigma)))?;
    }
    Ok("sigma_set = {c} by 8 routes and the linear-form oracle".into())
}

fn trivial_extensions() -> Outcome {
    let f = field(3);
    let e_ut = Arc::new(trivial_extension(&named_inner("upper-triangular-2", f).unwrap()).unwrap());
    let g = e_ut.group().clone();
    let c = g.parse_element("c").unwrap();
    ensure(is_graded_qf(&e_ut).map_err(|e| e.to_string())?, || "E(UT2) not graded QF".into())?;
    ensure(sigma_frobenius_oracle(&e_ut, c, CAP) == Some(true), || "E(UT2): no linear form witnessing A(c) ≅ A*".into())?;
    let (ae, _) = identity_component(&e_ut).map_err(|e| e.to_string())?;
    ensure(ae.dim() == 3, || format!("E(UT2)_e has dim {}", ae.dim()))?;
    ensure(!is_qf_ungraded(&ae).map_err(|e| e.to_string())?, || "E(UT2)_e reported QF".into())?;
    // Oracle: the left and right socles of a QF algebra coincide. Here they do not.
    let sub: Vec<Vec<u32>> = (0..ae.dim()).map(|i| unit(ae.dim(), i)).collect();
    let j: Vec<Vec<u32>> = radical(&ae).basis().to_vec();
    ensure(radical_certificate(&ae, &sub, &j) == Some(true), || "radical of E(UT2)_e not certified".into())?;
    let soc_l = annihilator(&ae, &j, true);
    let soc_r = annihilator(&ae, &j, false);
    ensure(!same_span(&soc_l, &soc_r, 3), || "E(UT2)_e has equal socles".into())?;

    let e_dn = Arc::new(trivial_extension(&named_inner("dual-numbers", f).unwrap()).unwrap());
    let eps = e_dn.group().identity();
    ensure(is_graded_qf(&e_dn).map_err(|e| e.to_string())?, || "E(k[x]/x²) not graded QF".into())?;
    ensure(!is_sigma_faithful(&e_dn, eps, Side::Left), || "E(k[x]/x²) reported ε-faithful".into())?;
    ensure(sigma_faithful_oracle(&e_dn, eps, true, CAP) == Some(false), || "oracle finds ε-faithfulness".into())?;
    let qf = analyze_qf(&e_dn, SEED).map_err(|e| e.to_string())?;
    let fr = frobenius_report(&e_dn, &qf, ExecMode::Parallel).map_err(|e| e.to_string())?;
    ensure(!fr.sigma_set.contains(&eps), || "ε in sigma_set".into())?;
    ensure(sigma_frobenius_oracle(&e_dn, eps, CAP) == Some(false), || "oracle: ε-Frobenius".into())?;
    Ok("E(UT2) graded QF, E(UT2)_e not QF; E(k[x]/x²) graded QF, not ε-faithful, ε ∉ sigma_set".into())
}

fn statement_clean(summary: &VerifySummary, suite: Suite, statement: &str) -> Result<usize, String> {
    let s = summary.suites.iter().find(|s| s.suite == suite).ok_or("suite missing")?;
    let n = s.statements.get(statement).copied().unwrap_or(0);
    ensure(n > 0, || format!("`{statement}` never checked"))?;
    let bad: Vec<_> = s.failures.iter().filter(|f| f.statement == statement).collect();
    ensure(bad.is_empty(), || format!("`{statement}`: {:?}", bad.first()))?;
    Ok(n)
}

fn route_agreement(corpus: &[CorpusEntry], summary: &VerifySummary) -> Outcome {
    ensure(corpus.len() >= 30, || format!("corpus has {} instances", corpus.len()))?;
    ensure(corpus.iter().all(|e| e.algebra.dim() <= 64 && e.algebra.group().order() <= 8), || "corpus exceeds budget".into())?;
    let rows = statement_clean(summary, Suite::Frobenius, "σ-graded Frobenius routes agree")?;
    statement_clean(summary, Suite::Qf, "graded QF iff QF")?;
    let oracle = statement_clean(summary, Suite::Qf, "graded QF iff double annihilator conditions")?;
    ensure(oracle >= corpus.len(), || "annihilator oracle skipped instances".into())?;
    let bad_lines = summary.route_table.iter().filter(|l| !l.agree).count();
    ensure(bad_lines == 0, || format!("{bad_lines} route-table lines disagree"))?;
    // Independent oracle for the sigma-set wherever the search is small.
    let mut decided = 0;
    for e in corpus {
        let a = &e.algebra;
        let qf = analyze_qf(a, SEED).map_err(|x| x.to_string())?;
        let fr = frobenius_report(a, &qf, ExecMode::Parallel).map_err(|x| x.to_string())?;
        for s in 0..a.group().order() {
            if let Some(o) = sigma_frobenius_oracle(a, s, CAP) {
                decided += 1;
                ensure(o == fr.sigma_set.contains(&s), || format!("{} σ = {}: oracle {o}", e.name, a.group().label(s)))?;
            }
        }
    }
    Ok(format!(
        "{} instances, {} route rows, {} σ decided by the linear-form oracle, {} annihilator trials each",
        corpus.len(),
        rows,
        decided,
        TRIALS
    ))
}

/// Outcome of criterion 5. `conjugate_only` lists instances whose support was
/// recovered only up to conjugacy together with a certificate that the exact
/// support is not determined by the algebra.
struct RecoveryOutcome {
    result: Outcome,
    conjugate_only: Vec<String>,
}

/// `M_n(Δ)(g)` equals `M_n(Δ^x)(x^{-1} g)` where `Δ^x_σ = Δ_{x σ x^{-1}}`: same
/// structure constants and degrees, support `x^{-1} H x`. Returns whether
/// such an `x` turns the generated data into data with support `h2`.
fn same_algebra_from(m: &grfrob::corpus::MatrixInstance, h2: &[usize]) -> bool {
    let g = m.algebra.group();
    let mut want = h2.to_vec();
    want.sort_unstable();
    (0..g.order()).any(|x| {
        let conj: Vec<usize> = m.support.iter().map(|&t| g.mul3(g.inv(x), t, x)).collect();
        let mut sorted = conj.clone();
        sorted.sort_unstable();
        if sorted != want {
            return false;
        }
        let spec = GradedDivisionSpec::untwisted(g.clone(), conj);
        let shifts: Vec<usize> = m.shifts.iter().map(|&s| g.mul(g.inv(x), s)).collect();
        let Ok(b) = graded_division_ring(m.algebra.field(), &spec).and_then(|d| matrix_over(&d, &shifts)) else {
            return false;
        };
        format!("{:?}", b.entries()) == format!("{:?}", m.algebra.entries())
            && b.degrees() == m.algebra.degrees()
            && b.unit() == m.algebra.unit()
    })
}

fn recovery() -> RecoveryOutcome {
    let mut conjugate_only = Vec::new();
    let result = (|| {
        let instances = matrix_instances(10, SEED);
        ensure(instances.len() == 10, || "fewer than 10 instances".into())?;
        for m in &instances {
            let g = m.algebra.group();
            let r = structure_recovery(&m.algebra).map_err(|e| format!("{}: {e}", m.name))?;
            ensure(r.n == m.shifts.len(), || format!("{}: n = {}", m.name, r.n))?;
            ensure(coset_data_equivalent(g, &m.support, &m.shifts, &r.support, &r.shifts), || {
                format!("{}: shifts {:?}", m.name, g.labels_of(&r.shifts))
            })?;
            let dims = |a: &GradedAlgebra| (0..g.order()).map(|h| basis_in(a, h).len()).collect::<Vec<_>>();
            ensure(matrix_graded_dims(g, &r.support, &r.shifts) == dims(&m.algebra), || format!("{}: graded dims", m.name))?;
            ensure(r.witness_verified, || format!("{}: witness", m.name))?;
            let mut want = m.support.clone();
            want.sort_unstable();
            let mut got = r.support.clone();
            got.sort_unstable();
            if got != want {
                ensure(same_algebra_from(m, &r.support), || format!("{}: support {:?}", m.name, g.labels_of(&got)))?;
                conjugate_only.push(format!(
                    "{}: recovered {{{}}}",
                    m.name,
                    g.labels_of(&got).join(",")
                ));
            }
        }
        if conjugate_only.is_empty() {
            Ok("10 of 10 recovered exactly (n, support, shifts up to coset translation)".into())
        } else {
            Err(format!(
                "support recovered only up to conjugacy on {} of 10 (the algebra is identical for the conjugate data, \
                 so the exact support is not determined by it): {}; n, shifts and witnesses exact on all 10",
                conjugate_only.len(),
                conjugate_only.join("; ")
            ))
        }
    })();
    RecoveryOutcome { result, conjugate_only }
}

fn lemma_identities(corpus: &[CorpusEntry], summary: &VerifySummary) -> Outcome {
    let statements = [
        (Suite::Qf, "dual of a shift: M(τ)^ = (τ^{-1})M^"),
        (Suite::Qf, "inertia of S_i is the σ_i-conjugate of the inertia of S_π(i)"),
        (Suite::Qf, "Nakayama pairing of left and right socles"),
        (Suite::Frobenius, "A / J^gr is ε-faithful"),
        (Suite::Radicals, "QF: left socle = right socle = ann_r(J^gr) = ann_l(J^gr)"),
    ];
    let mut total = 0;
    for (suite, st) in statements {
        total += statement_clean(summary, suite, st)?;
    }
    let mut oracle_checks = 0;
    for e in corpus {
        let a = &e.algebra;
        let p = a.field().p();
        let jgr = graded_radical(a);
        let (quot, _) = a.quotient(&jgr.total()).map_err(|x| x.to_string())?;
        if let Some(ok) = sigma_faithful_oracle(&quot, a.group().identity(), true, CAP) {
            oracle_checks += 1;
            ensure(ok, || format!("{}: A/J^gr not ε-faithful by enumeration", e.name))?;
        }
        if !is_graded_qf(a).map_err(|x| x.to_string())? {
            continue;
        }
        let j = jgr.vectors();
        let ann_r = annihilator(a, &j, true);
        let ann_l = annihilator(a, &j, false);
        let sl = left_socle(a).vectors();
        let sr = right_socle(a).vectors();
        oracle_checks += 1;
        ensure(same_span(&ann_r, &ann_l, p) && same_span(&ann_r, &sl, p) && same_span(&sl, &sr, p), || {
            format!("{}: socle identities", e.name)
        })?;
    }
    Ok(format!("{total} library checks, {oracle_checks} oracle checks"))
}

fn radical_suite(corpus: &[CorpusEntry], summary: &VerifySummary) -> Outcome {
    let s = summary.suites.iter().find(|s| s.suite == Suite::Radicals).ok_or("suite missing")?;
    ensure(s.passed, || format!("{:?}", s.failures.first()))?;
    for st in [
        "graded radical meets the identity component in its Jacobson radical",
        "the graded radical is nilpotent",
        "A / J^gr is graded semisimple",
        "graded self-injective: Z^gr = J^gr",
        "the graded singular ideal is nilpotent",
        "graded von Neumann regular iff graded semisimple",
    ] {
        statement_clean(summary, Suite::Radicals, st)?;
    }
    let mut certified = 0;
    let mut singular = 0;
    for e in corpus {
        let a = &e.algebra;
        let p = a.field().p();
        let eps = a.group().identity();
        let rr = radical_report(a).map_err(|x| x.to_string())?;
        let sub: Vec<Vec<u32>> = basis_in(a, eps).into_iter().map(|i| unit(a.dim(), i)).collect();
        let j_eps = rr.jgr.part(eps).basis().to_vec();
        ensure(same_span(&j_eps, rr.j_epsilon.basis(), p), || format!("{}: J^gr_e ≠ J(A_e)", e.name))?;
        if let Some(ok) = radical_certificate(a, &sub, &j_eps) {
            certified += 1;
            ensure(ok, || format!("{}: J(A_e) not certified", e.name))?;
        }
        let idx = nilpotency(a, &rr.jgr.vectors());
        ensure(idx == rr.nilpotency_index, || format!("{}: nilpotency {idx:?} vs {:?}", e.name, rr.nilpotency_index))?;
        if a.dim() <= 16 {
            if let Some(parts) = singular_oracle(a, 256) {
                singular += 1;
                for (h, part) in parts.iter().enumerate() {
                    ensure(same_span(part, rr.zgr_left.part(h).basis(), p), || format!("{}: Z^gr component {h}", e.name))?;
                }
            }
        }
    }
    Ok(format!("{} checks, J(A_e) certified on {certified}, Z^gr by definition on {singular}", s.checks))
}

fn baer(corpus: &[CorpusEntry]) -> Outcome {
    let mut qf_count = 0;
    for e in corpus {
        if !is_graded_qf(&e.algebra).map_err(|x| x.to_string())? {
            continue;
        }
        qf_count += 1;
        let r = baer_randomized(&e.algebra, TRIALS, SEED);
        ensure(r.trials == TRIALS && r.all_passed(), || format!("{}: {} of {} passed", e.name, r.passed, r.trials))?;
    }
    let control = corpus.iter().find(|e| e.name == "upper-triangular-2 C2 GF(3)").ok_or("control missing")?;
    ensure(!is_graded_qf(&control.algebra).map_err(|x| x.to_string())?, || "control reported QF".into())?;
    let r1 = baer_randomized(&control.algebra, TRIALS, SEED);
    let r2 = baer_randomized(&control.algebra, TRIALS, SEED);
    ensure(r1.counterexample.is_some(), || "no counterexample on the control".into())?;
    ensure(serde_json::to_string(&r1).unwrap() == serde_json::to_string(&r2).unwrap(), || "not deterministic".into())?;
    Ok(format!("{qf_count} QF instances pass {TRIALS} trials, control fails after {} trials", r1.passed + 1))
}

fn main() {
    let corpus = corpus_generate(SEED, Budget::default());
    let opts = VerifyOptions { seed: SEED, trials: TRIALS, limits: Limits::default(), ..VerifyOptions::default() };
    let mut lines = Vec::new();
    let mut record = |id: usize, name: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let out = out.and_then(|m| {
            if dt <= limit {
                Ok(m)
            } else {
                Err(format!("took {dt:.2?}, limit {limit:?}"))
            }
        });
        let line = match &out {
            Ok(m) => format!("PASS {id} {name} ({dt:.2?}): {m}"),
            Err(m) => format!("FAIL {id} {name} ({dt:.2?}): {m}"),
        };
        println!("{line}");
        lines.push((out.is_ok(), line));
    };
    let sec = Duration::from_secs;
    record(1, "counting", sec(1), &mut counting);
    record(2, "sigma-frobenius flagship", sec(1), &mut flagship);
    record(3, "trivial extensions", sec(1), &mut trivial_extensions);
    let mut summary = None;
    record(4, "route agreement", sec(300), &mut || {
        let s = run(&corpus, &Suite::ALL, &opts);
        let out = route_agreement(&corpus, &s);
        summary = Some(s);
        out
    });
    let summary = summary.unwrap();
    let mut certified_red = false;
    record(5, "structure recovery", sec(60), &mut || {
        let out = recovery();
        certified_red = out.result.is_err() && !out.conjugate_only.is_empty();
        out.result
    });
    record(6, "lemma-level identities", sec(60), &mut || lemma_identities(&corpus, &summary));
    record(7, "radical suite", sec(120), &mut || radical_suite(&corpus, &summary));
    record(8, "baer fallback", sec(120), &mut || baer(&corpus));
    // Criterion 5 may stay red only for the certified reason above; any other
    // failure fails the test.
    let failed: Vec<&String> = lines
        .iter()
        .enumerate()
        .filter(|(i, (ok, _))| !ok && !(*i == 4 && certified_red))
        .map(|(_, (_, l))| l)
        .collect();
    if !failed.is_empty() {
        eprintln!("acceptance failed: {failed:#?}");
        std::process::exit(1);
    }
}
