//! The analysis report written by the command line tool.
//!
//! Every group element is written by label and every block has a fixed
//! field order, so a report is byte-identical for a fixed input and seed.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::GradedAlgebra;
use crate::config::Limits;
use crate::decomp::{embedded_simple_types, simple_type_count, IsoshiftClassification};
use crate::error::Result;
use crate::frobenius::{analyze_qf, frobenius_report, is_qf_ungraded, qf_annihilator_oracle, FrobeniusReport, QfAnalysis};
use crate::group::FiniteGroup;
use crate::module::Side;
use crate::par::ExecMode;
use crate::radicals::{baer_randomized, is_graded_semisimple, is_vn_regular, radical, radical_report, Tri};
use crate::subspace::GradedSubspace;

/// Bumped whenever the report layout or the built-in corpus changes.
pub const SCHEMA_VERSION: u32 = 1;

/// Trials used by the randomized checks embedded in a report.
pub const REPORT_TRIALS: usize = 200;

/// `π` in cycle notation on `1..t`, fixed points omitted, `()` for the
/// identity.
pub fn cycle_notation(pi: &[usize]) -> String {
    let mut seen = vec![false; pi.len()];
    let mut out = String::new();
    for start in 0..pi.len() {
        if seen[start] || pi[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = pi[i];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn labels(g: &FiniteGroup, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| g.label(x).to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraBlock {
    pub p: u32,
    pub group_order: usize,
    pub dim: usize,
    /// `(degree, dim A_g)` over the support.
    pub graded_dims: Vec<(String, usize)>,
    pub strongly_graded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassBlock {
    pub n: usize,
    pub shifts: Vec<String>,
    pub inertia: Vec<String>,
    pub end_dim: usize,
    pub top_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddedType {
    pub class: usize,
    pub shift: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationBlock {
    pub t: usize,
    pub multiplicities: Vec<usize>,
    pub classes: Vec<ClassBlock>,
    pub verified: bool,
    /// Isomorphism types of graded simple left modules.
    pub simple_types: usize,
    /// Types embedding in the algebra, with multiplicities in the socle.
    pub embedded_types: Vec<EmbeddedType>,
    /// All graded simple left ideals are isomorphic.
    pub gr_uniform: bool,
}

pub fn classification_block(a: &Arc<GradedAlgebra>, cls: &IsoshiftClassification) -> Result<ClassificationBlock> {
    let g = a.group();
    let embedded = embedded_simple_types(a, cls)?;
    Ok(ClassificationBlock {
        t: cls.t(),
        multiplicities: cls.multiplicities(),
        classes: cls
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| ClassBlock {
                n: c.members.len(),
                shifts: labels(g, &c.shifts),
                inertia: labels(g, &c.inertia),
                end_dim: c.end_dim,
                top_dim: cls.top(i).dim(),
            })
            .collect(),
        verified: cls.verified,
        simple_types: simple_type_count(cls, g.order()),
        gr_uniform: embedded.len() == 1,
        embedded_types: embedded
            .into_iter()
            .map(|(i, s, m)| EmbeddedType { class: i + 1, shift: g.label(s).to_string(), multiplicity: m })
            .collect(),
    })
}

fn graded_dims(g: &FiniteGroup, s: &GradedSubspace) -> Vec<(String, usize)> {
    s.dims().into_iter().enumerate().filter(|(_, d)| *d > 0).map(|(x, d)| (g.label(x).to_string(), d)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalBlock {
    pub radical_dim: usize,
    pub graded_radical: Vec<(String, usize)>,
    pub graded_radical_dim: usize,
    pub identity_component_radical_dim: usize,
    pub nilpotency_index: Option<usize>,
    pub graded_semisimple: bool,
    pub socle_left: Vec<(String, usize)>,
    pub socle_right: Vec<(String, usize)>,
    pub singular_left: Vec<(String, usize)>,
    pub vn_regular: Tri,
    pub baer_trials: usize,
    pub baer_passed: bool,
}

pub fn radical_block(a: &Arc<GradedAlgebra>, limits: &Limits, seed: u64) -> Result<RadicalBlock> {
    let g = a.group();
    let r = radical_report(a)?;
    let baer = baer_randomized(a, REPORT_TRIALS, seed);
    Ok(RadicalBlock {
        radical_dim: radical(a).dim(),
        graded_radical: graded_dims(g, &r.jgr),
        graded_radical_dim: r.jgr.dim(),
        identity_component_radical_dim: r.j_epsilon.dim(),
        nilpotency_index: r.nilpotency_index,
        graded_semisimple: is_graded_semisimple(a),
        socle_left: graded_dims(g, &r.socle_left),
        socle_right: graded_dims(g, &r.socle_right),
        singular_left: graded_dims(g, &r.zgr_left),
        vn_regular: is_vn_regular(a, limits.vn_cap),
        baer_trials: baer.trials,
        baer_passed: baer.all_passed(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaBlock {
    pub pi: String,
    pub sigmas: Vec<String>,
    pub sigma_cosets: Vec<Vec<String>>,
    pub right_pairing: Vec<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NakayamaFailureBlock {
    /// 1-based index of the principal indecomposable.
    pub indecomposable: usize,
    pub side: Side,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulnessRow {
    pub sigma: String,
    pub left: bool,
    pub right: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusBlock {
    pub graded_qf: bool,
    pub sigma_set: Vec<String>,
    pub graded_frobenius: bool,
    pub faithfulness: Vec<FaithfulnessRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RouteRow {
    pub sigma: String,
    pub combinatorial: bool,
    pub socle_left: bool,
    pub socle_right: bool,
    pub socle_both: bool,
    pub dual_top_left: bool,
    pub dual_top_right: bool,
    pub component_socles: bool,
    pub algebra_dual: bool,
    pub algebra_dual_direct: Option<bool>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckBlock {
    pub routes: Vec<RouteRow>,
    pub routes_agree: bool,
    pub ungraded_qf: bool,
    pub qf_agrees_with_ungraded: bool,
    pub annihilator_trials: usize,
    pub annihilator_passed: bool,
    pub qf_agrees_with_annihilators: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub seed: u64,
    pub algebra: AlgebraBlock,
    pub classification: ClassificationBlock,
    pub radical: RadicalBlock,
    pub nakayama: Option<NakayamaBlock>,
    pub nakayama_failure: Option<NakayamaFailureBlock>,
    pub frobenius: FrobeniusBlock,
    pub cross_check: CrossCheckBlock,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyFile {
    pub schema_version: u32,
    pub seed: u64,
    pub classification: ClassificationBlock,
}

pub fn classify(a: &Arc<GradedAlgebra>, seed: u64) -> Result<ClassifyFile> {
    let cls = crate::decomp::classify_isoshift(a, seed)?;
    Ok(ClassifyFile { schema_version: SCHEMA_VERSION, seed, classification: classification_block(a, &cls)? })
}

fn nakayama_blocks(a: &GradedAlgebra, qf: &QfAnalysis) -> (Option<NakayamaBlock>, Option<NakayamaFailureBlock>) {
    let g = a.group();
    match &qf.nakayama {
        Ok(n) => (
            Some(NakayamaBlock {
                pi: cycle_notation(&n.pi),
                sigmas: labels(g, &n.sigmas),
                sigma_cosets: n.sigma_cosets.iter().map(|c| labels(g, c)).collect(),
                right_pairing: n.right_pairing.clone(),
            }),
            None,
        ),
        Err(e) => (None, Some(NakayamaFailureBlock { indecomposable: e.index + 1, side: e.side, reason: e.reason.clone() })),
    }
}

fn frobenius_blocks(a: &GradedAlgebra, fr: &FrobeniusReport) -> (FrobeniusBlock, Vec<RouteRow>) {
    let g = a.group();
    let block = FrobeniusBlock {
        graded_qf: fr.graded_qf,
        sigma_set: labels(g, &fr.sigma_set),
        graded_frobenius: fr.sigma_set.contains(&g.identity()),
        faithfulness: fr
            .rows
            .iter()
            .map(|r| FaithfulnessRow { sigma: g.label(r.sigma).to_string(), left: r.faithful_left, right: r.faithful_right })
            .collect(),
    };
    let routes = fr
        .rows
        .iter()
        .map(|r| RouteRow {
            sigma: g.label(r.sigma).to_string(),
            combinatorial: r.combinatorial,
            socle_left: r.socle_left,
            socle_right: r.socle_right,
            socle_both: r.socle_both,
            dual_top_left: r.dual_top_left,
            dual_top_right: r.dual_top_right,
            component_socles: r.component_socles,
            algebra_dual: r.algebra_dual,
            algebra_dual_direct: r.algebra_dual_direct,
            agree: r.agree,
        })
        .collect();
    (block, routes)
}

/// Full analysis: classification, radicals, Nakayama data, σ-Frobenius set
/// and every cross-check.
pub fn analyze(a: &Arc<GradedAlgebra>, limits: &Limits, seed: u64, mode: ExecMode) -> Result<ReportFile> {
    let g = a.group();
    let qf = analyze_qf(a, seed)?;
    let fr = frobenius_report(a, &qf, mode)?;
    let ungraded_qf = is_qf_ungraded(a)?;
    let ann = qf_annihilator_oracle(a, REPORT_TRIALS, seed)?;
    let (nakayama, nakayama_failure) = nakayama_blocks(a, &qf);
    let (frobenius, routes) = frobenius_blocks(a, &fr);
    let support_dims = (0..g.order())
        .map(|x| (g.label(x).to_string(), a.basis_of_degree(x).len()))
        .filter(|(_, d)| *d > 0)
        .collect();
    Ok(ReportFile {
        schema_version: SCHEMA_VERSION,
        seed,
        algebra: AlgebraBlock {
            p: a.field().p(),
            group_order: g.order(),
            dim: a.dim(),
            graded_dims: support_dims,
            strongly_graded: fr.strongly_graded,
        },
        classification: classification_block(a, &qf.classification)?,
        radical: radical_block(a, limits, seed)?,
        nakayama,
        nakayama_failure,
        frobenius,
        cross_check: CrossCheckBlock {
            routes_agree: fr.all_agree,
            routes,
            qf_agrees_with_ungraded: ungraded_qf == fr.graded_qf,
            ungraded_qf,
            annihilator_trials: ann.trials_left + ann.trials_right,
            qf_agrees_with_annihilators: ann.passed == fr.graded_qf,
            annihilator_passed: ann.passed,
        },
    })
}

/// Plain-text rendering of a report.
pub fn render_text(r: &ReportFile) -> String {
    let mut s = String::new();
    let b = |x: bool| if x { "yes" } else { "no" };
    s.push_str(&format!(
        "algebra: p = {}, |G| = {}, dim = {}, graded dims {}\n",
        r.algebra.p,
        r.algebra.group_order,
        r.algebra.dim,
        r.algebra.graded_dims.iter().map(|(g, d)| format!("{g}:{d}")).collect::<Vec<_>>().join(" ")
    ));
    let c = &r.classification;
    s.push_str(&format!("isoshift types: t = {}, multiplicities {:?}\n", c.t, c.multiplicities));
    for (i, k) in c.classes.iter().enumerate() {
        s.push_str(&format!(
            "  P{}: shifts [{}], inertia {{{}}}, dim End(S) = {}\n",
            i + 1,
            k.shifts.join(", "),
            k.inertia.join(", "),
            k.end_dim
        ));
    }
    s.push_str(&format!(
        "graded simple types: {} total, {} embedded ({}), gr-uniform {}\n",
        c.simple_types,
        c.embedded_types.len(),
        c.embedded_types.iter().map(|e| format!("S{}({}) x{}", e.class, e.shift, e.multiplicity)).collect::<Vec<_>>().join(", "),
        b(c.gr_uniform)
    ));
    let rd = &r.radical;
    s.push_str(&format!(
        "radical: dim J = {}, dim J^gr = {}, nilpotency index {}, graded semisimple {}\n",
        rd.radical_dim,
        rd.graded_radical_dim,
        rd.nilpotency_index.map_or("none".to_string(), |k| k.to_string()),
        b(rd.graded_semisimple)
    ));
    match (&r.nakayama, &r.nakayama_failure) {
        (Some(n), _) => s.push_str(&format!("nakayama: pi = {}, sigma = [{}]\n", n.pi, n.sigmas.join(", "))),
        (_, Some(f)) => s.push_str(&format!(
            "nakayama: none (P{} on the {:?} side: {})\n",
            f.indecomposable, f.side, f.reason
        )),
        _ => {}
    }
    let fb = &r.frobenius;
    s.push_str(&format!(
        "graded QF {}, sigma-Frobenius set {{{}}}, graded Frobenius {}\n",
        b(fb.graded_qf),
        fb.sigma_set.join(", "),
        b(fb.graded_frobenius)
    ));
    for f in &fb.faithfulness {
        s.push_str(&format!("  sigma = {}: faithful left {}, right {}\n", f.sigma, b(f.left), b(f.right)));
    }
    let x = &r.cross_check;
    s.push_str(&format!(
        "cross-check: routes agree {}, ungraded QF {} (agrees {}), annihilator oracle {} (agrees {})\n",
        b(x.routes_agree),
        b(x.ungraded_qf),
        b(x.qf_agrees_with_ungraded),
        b(x.annihilator_passed),
        b(x.qf_agrees_with_annihilators)
    ));
    s
}
