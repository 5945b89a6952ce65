use hecklab::classifier::{
    averaging_norm_estimate, character_certificate, ching_inequality_test, classify_nuclearity, classify_simplicity,
    find_powers_elements, parallelogram_identity_test, powers_decay_experiment, ChingReport, PowersDecay,
    PowersElements, SimplicityVerdict, Verdict,
};
use hecklab::coxeter::{
    summand_indices, Component, CoxeterSystem, CoxeterType, FreeAbelianProduct, GroupElement, Letter,
};
use hecklab::fock::{norm_lower_bound, represent_element, BallBasis, FockSpace, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use hecklab::hecke::{
    format_element, format_element_exact, parse_element, to_json, to_json_exact, HeckeAlgebra, HeckeElement,
    MultiParameter,
};
use hecklab::khintchine::{
    haagerup_experiment, intertwiner_check_all, orthogonality_residual, reconstruction_check, verify_decomposition,
    HaagerupConfig, HaagerupReport, ReducedOperator,
};
use hecklab::scalar::{parse_rational, Scalar};
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::report::Outcome;
use crate::{CliError, Ctx};

/// Caveat printed with every averaging-operator norm.
pub const COMPRESSION_CAVEAT: &str = "lower bound (compression)";
/// Tolerance for identities checked in floating point.
pub const FLOAT_TOLERANCE: f64 = 1e-9;
pub const CHARACTER_TOLERANCE: f64 = 1e-10;
pub const PARALLELOGRAM_TOLERANCE: f64 = 1e-10;

pub fn dispatch(name: &str, ctx: &Ctx) -> Result<Outcome, CliError> {
    match name {
        "info" => info(ctx),
        "ball" => ball(ctx),
        "growth" => growth(ctx),
        "hecke-mul" => hecke_mul(ctx),
        "norm" => norm(ctx),
        "haagerup" => haagerup(ctx),
        "khintchine-verify" => khintchine_verify(ctx),
        "simplicity" => simplicity(ctx),
        "nuclearity" => nuclearity(ctx),
        "powers" => powers(ctx),
        "ching" => ching(ctx),
        other => Err(CliError::Config(format!("unknown command {other}"))),
    }
}

/// Exact arithmetic when requested, or when `prefer` is set and every
/// `sqrt(q_s)` is rational.
fn exact_mode(ctx: &Ctx, prefer: bool) -> Result<bool, CliError> {
    let possible = ctx.q.has_rational_roots();
    if ctx.opts.exact && !possible {
        let q: Vec<String> = ctx.q.values().iter().map(ToString::to_string).collect();
        return Err(hecklab::Error::InexactParameter(q.join(",")).into());
    }
    Ok(ctx.opts.exact || (prefer && possible))
}

fn mode_name(exact: bool) -> &'static str {
    if exact {
        "rational"
    } else {
        "float"
    }
}

fn names(system: &CoxeterSystem, gens: &[usize]) -> Vec<String> {
    gens.iter().map(|&s| system.name(s as Letter).to_string()).collect()
}

fn word(system: &CoxeterSystem, g: &GroupElement) -> String {
    system.format_word(g.word())
}

fn require<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    value
        .as_deref()
        .ok_or_else(|| CliError::Config(format!("--{flag} is required")))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ComponentView {
    generators: Vec<String>,
    kind: CoxeterType,
    gram_eigenvalues: Vec<f64>,
}

fn components(sys: &CoxeterSystem, list: &[Component]) -> Vec<ComponentView> {
    list.iter()
        .map(|c| ComponentView {
            generators: names(sys, &c.generators),
            kind: c.kind,
            gram_eigenvalues: c.gram_eigenvalues.clone(),
        })
        .collect()
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct InfoReport {
    generators: Vec<String>,
    exponents: Vec<Vec<i64>>,
    rank: usize,
    right_angled: bool,
    irreducible: bool,
    #[serde(rename = "type")]
    kind: CoxeterType,
    nuclear: bool,
    components: Vec<ComponentView>,
    conjugacy_classes: Vec<Vec<String>>,
    clique_count: Option<usize>,
    free_abelian_product: Option<Vec<Vec<String>>>,
}

fn info(ctx: &Ctx) -> Result<Outcome, CliError> {
    let sys = &ctx.system;
    let nuclearity = classify_nuclearity(sys);
    let kind = if nuclearity.components.iter().any(|c| c.kind == CoxeterType::NonAffine) {
        CoxeterType::NonAffine
    } else if nuclearity.components.iter().any(|c| c.kind == CoxeterType::Affine) {
        CoxeterType::Affine
    } else {
        CoxeterType::Spherical
    };
    let report = InfoReport {
        generators: sys.names().to_vec(),
        exponents: sys.to_file().exponents,
        rank: sys.rank(),
        right_angled: sys.is_right_angled(),
        irreducible: sys.is_irreducible(),
        kind,
        nuclear: nuclearity.nuclear,
        components: components(sys, &nuclearity.components),
        conjugacy_classes: sys.conjugacy_classes().iter().map(|c| names(sys, c)).collect(),
        clique_count: sys.is_right_angled().then(|| sys.graph().clique_count()),
        free_abelian_product: FreeAbelianProduct::detect(sys)
            .map(|(_, groups)| groups.iter().map(|g| names(sys, g)).collect()),
    };
    Ok(Outcome::new(&report))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BallReport {
    radius: usize,
    size: usize,
    elements: Vec<String>,
}

fn ball(ctx: &Ctx) -> Result<Outcome, CliError> {
    let radius = ctx.opts.n.unwrap_or(3);
    let ball = ctx.system.enumerate_ball(radius, ctx.cap)?;
    let mut csv = String::from("length,word\n");
    for g in &ball {
        csv.push_str(&format!("{},{}\n", g.len(), word(&ctx.system, g)));
    }
    let report = BallReport {
        radius,
        size: ball.len(),
        elements: ball.iter().map(|g| word(&ctx.system, g)).collect(),
    };
    Ok(Outcome::new(&report).csv(csv))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Coefficient {
    multidegree: Vec<u32>,
    count: u64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ClosedForm {
    blocks: Vec<Vec<String>>,
    matches: bool,
    mismatches: Vec<Coefficient>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct GrowthReport {
    max_degree: usize,
    by_length: Vec<u64>,
    coefficients: Vec<Coefficient>,
    radius_estimate: Option<f64>,
    radius_estimate_kind: &'static str,
    closed_form: Option<ClosedForm>,
}

fn growth(ctx: &Ctx) -> Result<Outcome, CliError> {
    let sys = &ctx.system;
    let degree = ctx.opts.n.unwrap_or(8);
    let series = sys.growth_coefficients(degree, ctx.cap)?;
    let closed_form = FreeAbelianProduct::detect(sys).map(|(fap, groups)| {
        let order: Vec<usize> = groups.iter().flatten().copied().collect();
        let mut mismatches = Vec::new();
        let taylor = fap.taylor_coefficients(degree);
        let mut seen = std::collections::BTreeSet::new();
        for (alpha, &c) in &taylor.coefficients {
            let mut original = vec![0u32; sys.rank()];
            for (p, &s) in order.iter().enumerate() {
                original[s] = alpha[p];
            }
            if series.coefficient(&original) != c {
                mismatches.push(Coefficient {
                    multidegree: original.clone(),
                    count: c,
                });
            }
            seen.insert(original);
        }
        for (alpha, &c) in &series.coefficients {
            if c != 0 && !seen.contains(alpha) {
                mismatches.push(Coefficient {
                    multidegree: alpha.clone(),
                    count: 0,
                });
            }
        }
        ClosedForm {
            blocks: groups.iter().map(|g| names(sys, g)).collect(),
            matches: mismatches.is_empty(),
            mismatches,
        }
    });
    let mut csv = String::from("multidegree,count\n");
    for (alpha, c) in &series.coefficients {
        let a: Vec<String> = alpha.iter().map(ToString::to_string).collect();
        csv.push_str(&format!("{},{c}\n", a.join(" ")));
    }
    let passed = closed_form.as_ref().is_none_or(|c| c.matches);
    let report = GrowthReport {
        max_degree: degree,
        by_length: series.by_length(),
        coefficients: series
            .coefficients
            .iter()
            .map(|(a, &c)| Coefficient {
                multidegree: a.clone(),
                count: c,
            })
            .collect(),
        radius_estimate: series.radius_estimate(),
        radius_estimate_kind: "heuristic root test",
        closed_form,
    };
    Ok(Outcome::new(&report).csv(csv).passed(passed))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MulReport {
    mode: &'static str,
    x: Value,
    y: Value,
    product: Value,
    literal: String,
}

fn multiply<S: Scalar>(
    ctx: &Ctx,
    json: fn(&HeckeElement<S>) -> Value,
    format: fn(&HeckeElement<S>) -> String,
) -> Result<(Value, Value, Value, String), CliError> {
    let algebra = HeckeAlgebra::<S>::new(ctx.system.clone(), ctx.q.clone())?;
    let x = parse_element(&algebra, require(&ctx.opts.x, "x")?)?;
    let y = parse_element(&algebra, require(&ctx.opts.y, "y")?)?;
    let p = x.checked_mul(&y)?;
    Ok((json(&x), json(&y), json(&p), format(&p)))
}

fn hecke_mul(ctx: &Ctx) -> Result<Outcome, CliError> {
    let exact = exact_mode(ctx, true)?;
    let (x, y, product, literal) = if exact {
        multiply::<BigRational>(ctx, to_json_exact, format_element_exact)?
    } else {
        multiply::<Complex64>(ctx, to_json, format_element)?
    };
    Ok(Outcome::new(&MulReport {
        mode: mode_name(exact),
        x,
        y,
        product,
        literal,
    }))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct NormReport {
    op: String,
    n: usize,
    estimate: f64,
    iterations: usize,
    converged: bool,
    l2_norm: f64,
    kind: &'static str,
}

fn norm(ctx: &Ctx) -> Result<Outcome, CliError> {
    let n = ctx.opts.n.unwrap_or(6);
    let algebra = HeckeAlgebra::<Complex64>::new(ctx.system.clone(), ctx.q.clone())?;
    let literal = require(&ctx.opts.x, "x")?;
    let x = parse_element(&algebra, literal)?;
    let basis = BallBasis::new(ctx.system.clone(), n, ctx.cap)?;
    let op = represent_element(&x, &basis)?;
    if let Some(path) = &ctx.opts.matrix {
        crate::report::write(path, &op.to_matrix_market())?;
    }
    let est = norm_lower_bound(&op, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER);
    let report = NormReport {
        op: literal.to_string(),
        n,
        estimate: est.estimate,
        iterations: est.iterations,
        converged: est.converged,
        l2_norm: x.l2_norm(),
        kind: COMPRESSION_CAVEAT,
    };
    Ok(Outcome::new(&report).note(format!("operator norm >= {}: {COMPRESSION_CAVEAT}", est.estimate)))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct HaagerupView {
    #[serde(flatten)]
    report: HaagerupReport,
    open_question: Option<String>,
}

fn haagerup(ctx: &Ctx) -> Result<Outcome, CliError> {
    let cfg = HaagerupConfig {
        q: ctx.q.clone(),
        d: ctx.opts.d.unwrap_or(2),
        n: ctx.opts.n.unwrap_or(8),
        samples: ctx.opts.samples.unwrap_or(50),
        seed: ctx.opts.seed,
        cap: ctx.cap,
    };
    let report = haagerup_experiment(&ctx.system, &cfg)?;
    let open_question = report.degenerate.then(|| {
        "the constant vanishes at this parameter (some q_s = 1); the bound is not informative here".to_string()
    });
    let passed = report.flagged_samples.is_empty();
    let csv = report.to_csv();
    let mut out = Outcome::new(&HaagerupView {
        report,
        open_question: open_question.clone(),
    })
    .csv(csv)
    .passed(passed)
    .note(format!("norm estimates are a {COMPRESSION_CAVEAT}"));
    if let Some(q) = open_question {
        out = out.note(format!("open question: {q}"));
    }
    Ok(out)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MaxErrors {
    decomposition: f64,
    intertwiner: f64,
    reconstruction: f64,
    orthogonality: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct KhintchineReport {
    mode: &'static str,
    d: usize,
    n: usize,
    words: usize,
    intertwiner_checks: usize,
    orthogonality_pairs: usize,
    tolerance: f64,
    max_errors: MaxErrors,
}

fn khintchine_suites<S: Scalar>(ctx: &Ctx, d: usize, n: usize) -> Result<(usize, usize, usize, MaxErrors), CliError> {
    let sys = &ctx.system;
    if !sys.is_right_angled() {
        return Err(hecklab::Error::NotRightAngled.into());
    }
    let algebra = HeckeAlgebra::<S>::new(sys.clone(), ctx.q.clone())?;
    let graph = sys.graph();
    let space = FockSpace::hecke(graph.clone());
    let words: Vec<GroupElement> = sys
        .enumerate_ball(d, ctx.cap)?
        .into_iter()
        .filter(|g| !g.is_identity())
        .collect();
    let per_word = words
        .par_iter()
        .map(|w| -> hecklab::Result<(f64, f64, f64, usize)> {
            let op = ReducedOperator::hecke(&space, &algebra, w.word())?;
            let dec = verify_decomposition(&space, &op, n, ctx.cap)?;
            let indices = summand_indices(graph, w.len());
            let inter = intertwiner_check_all(&space, &op, &indices, n, ctx.cap)?;
            let rec = reconstruction_check(&space, &op, n, ctx.cap)?;
            Ok((dec, inter, rec, indices.len()))
        })
        .collect::<hecklab::Result<Vec<_>>>()?;
    let orth = words
        .par_iter()
        .map(|v| -> hecklab::Result<(f64, usize)> {
            let mut worst = 0.0f64;
            let mut pairs = 0;
            for w in words.iter().filter(|w| w.len() == v.len()) {
                worst = worst.max(orthogonality_residual(&space, &algebra, v.word(), w.word())?);
                pairs += 1;
            }
            Ok((worst, pairs))
        })
        .collect::<hecklab::Result<Vec<_>>>()?;
    let errors = MaxErrors {
        decomposition: per_word.iter().map(|r| r.0).fold(0.0, f64::max),
        intertwiner: per_word.iter().map(|r| r.1).fold(0.0, f64::max),
        reconstruction: per_word.iter().map(|r| r.2).fold(0.0, f64::max),
        orthogonality: orth.iter().map(|r| r.0).fold(0.0, f64::max),
    };
    Ok((
        words.len(),
        per_word.iter().map(|r| r.3).sum(),
        orth.iter().map(|r| r.1).sum(),
        errors,
    ))
}

fn khintchine_verify(ctx: &Ctx) -> Result<Outcome, CliError> {
    let d = ctx.opts.d.unwrap_or(3);
    let n = ctx.opts.n.unwrap_or(d + 2);
    if n < d {
        return Err(CliError::Config(format!("--n {n} is smaller than --d {d}")));
    }
    let exact = exact_mode(ctx, true)?;
    let (words, checks, pairs, errors) = if exact {
        khintchine_suites::<BigRational>(ctx, d, n)?
    } else {
        khintchine_suites::<Complex64>(ctx, d, n)?
    };
    let tolerance = if exact { 0.0 } else { FLOAT_TOLERANCE };
    let worst = [
        errors.decomposition,
        errors.intertwiner,
        errors.reconstruction,
        errors.orthogonality,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let report = KhintchineReport {
        mode: mode_name(exact),
        d,
        n,
        words,
        intertwiner_checks: checks,
        orthogonality_pairs: pairs,
        tolerance,
        max_errors: errors,
    };
    Ok(Outcome::new(&report).passed(worst <= tolerance))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimplicityView {
    #[serde(flatten)]
    verdict: SimplicityVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    character_residual: Option<f64>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SimplicityGrid {
    grid: String,
    points: Vec<SimplicityVerdict>,
}

fn parse_grid(text: &str) -> Result<Vec<BigRational>, CliError> {
    let bad = || CliError::Config(format!("--grid expects lo:hi:count, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo = parse_rational(parts[0]).ok_or_else(bad)?;
    let hi = parse_rational(parts[1]).ok_or_else(bad)?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(bad());
    }
    if count == 1 {
        return Ok(vec![lo]);
    }
    let step = (hi - lo.clone()) / BigRational::from_integer((count as i64 - 1).into());
    Ok((0..count)
        .map(|i| lo.clone() + step.clone() * BigRational::from_integer((i as i64).into()))
        .collect())
}

fn simplicity_csv(points: &[SimplicityVerdict]) -> String {
    let mut csv = String::from("q,verdict,region_value,threshold\n");
    for v in points {
        let verdict = serde_json::to_value(v.verdict).expect("verdict serializes");
        csv.push_str(&format!(
            "{},{},{},{}\n",
            v.q.join(" "),
            verdict.as_str().unwrap_or_default(),
            v.region_value.map(|r| format!("{r:.17e}")).unwrap_or_default(),
            v.threshold.map(|t| t.to_string()).unwrap_or_default()
        ));
    }
    csv
}

fn simplicity(ctx: &Ctx) -> Result<Outcome, CliError> {
    let sys = &ctx.system;
    if let Some(grid) = &ctx.opts.grid {
        let points = parse_grid(grid)?
            .into_iter()
            .map(|q| Ok(classify_simplicity(sys, &MultiParameter::uniform(sys, q)?)?))
            .collect::<Result<Vec<_>, CliError>>()?;
        let csv = simplicity_csv(&points);
        return Ok(Outcome::new(&SimplicityGrid {
            grid: grid.clone(),
            points,
        })
        .csv(csv));
    }
    let verdict = classify_simplicity(sys, &ctx.q)?;
    let character_residual = if verdict.verdict == Verdict::NotSimple && verdict.certificate.is_some() {
        let pairs = ctx.opts.samples.unwrap_or(100);
        Some(character_certificate(sys, &ctx.q, pairs, 2, ctx.opts.seed)?.max_residual)
    } else {
        None
    };
    let passed = character_residual.is_none_or(|r| r < CHARACTER_TOLERANCE);
    let csv = simplicity_csv(std::slice::from_ref(&verdict));
    Ok(Outcome::new(&SimplicityView {
        verdict,
        character_residual,
    })
    .csv(csv)
    .passed(passed))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct NuclearityView {
    components: Vec<ComponentView>,
    nuclear: bool,
}

fn nuclearity(ctx: &Ctx) -> Result<Outcome, CliError> {
    let sys = &ctx.system;
    let report = classify_nuclearity(sys);
    Ok(Outcome::new(&NuclearityView {
        components: components(sys, &report.components),
        nuclear: report.nuclear,
    }))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ElementsView {
    s: String,
    chain: Vec<String>,
    w1: String,
    w2: String,
    w3: String,
    validated_radius: usize,
}

impl ElementsView {
    fn new(sys: &CoxeterSystem, pe: &PowersElements) -> Self {
        ElementsView {
            s: sys.name(pe.s).to_string(),
            chain: pe.chain.iter().map(|&t| sys.name(t).to_string()).collect(),
            w1: word(sys, &pe.w1),
            w2: word(sys, &pe.w2),
            w3: word(sys, &pe.w3),
            validated_radius: pe.validated_radius,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AveragingNorm {
    n: usize,
    estimate: f64,
    iterations: usize,
    converged: bool,
    kind: &'static str,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PowersReport {
    elements: ElementsView,
    averaging_norm: AveragingNorm,
    x: String,
    mode: &'static str,
    levels: usize,
    decay: PowersDecay,
}

fn decay<S: Scalar + std::fmt::Display>(
    ctx: &Ctx,
    literal: &str,
    set: &[GroupElement],
    levels: usize,
) -> Result<PowersDecay, CliError> {
    let algebra = HeckeAlgebra::<S>::new(ctx.system.clone(), ctx.q.clone())?;
    let x = parse_element(&algebra, literal)?;
    Ok(powers_decay_experiment(&x, set, levels)?)
}

fn powers(ctx: &Ctx) -> Result<Outcome, CliError> {
    let sys = &ctx.system;
    let pe = find_powers_elements(sys)?;
    let set = pe.averaging_set();
    let n = ctx.opts.n.unwrap_or(8);
    let levels = ctx.opts.levels.unwrap_or(6);
    let float = HeckeAlgebra::<Complex64>::new(sys.clone(), ctx.q.clone())?;
    let est = averaging_norm_estimate(&float, &set, n, ctx.cap)?;
    let literal = ctx.opts.x.clone().unwrap_or_else(|| format!("T[{}]", sys.name(0)));
    let exact = exact_mode(ctx, true)?;
    let decay = if exact {
        decay::<BigRational>(ctx, &literal, &set, levels)?
    } else {
        decay::<Complex64>(ctx, &literal, &set, levels)?
    };
    let mut csv = String::from("l,l2_distance,support\n");
    for (l, (dist, support)) in decay.l2_distances.iter().zip(&decay.support_sizes).enumerate() {
        csv.push_str(&format!("{},{dist:.17e},{support}\n", l + 1));
    }
    let report = PowersReport {
        elements: ElementsView::new(sys, &pe),
        averaging_norm: AveragingNorm {
            n,
            estimate: est.estimate,
            iterations: est.iterations,
            converged: est.converged,
            kind: COMPRESSION_CAVEAT,
        },
        x: literal,
        mode: mode_name(exact),
        levels,
        decay,
    };
    Ok(Outcome::new(&report).csv(csv).note(format!(
        "averaging operator norm >= {}: {COMPRESSION_CAVEAT}",
        est.estimate
    )))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ChingView {
    elements: ElementsView,
    radius: usize,
    #[serde(flatten)]
    inequality: ChingReport,
    parallelogram_tuples: usize,
    parallelogram_residual: f64,
}

fn ching(ctx: &Ctx) -> Result<Outcome, CliError> {
    let sys = &ctx.system;
    if !ctx.q.is_one() {
        return Err(CliError::Config("ching is defined for the group case q = 1".into()));
    }
    let pe = find_powers_elements(sys)?;
    let radius = ctx.opts.n.unwrap_or(4);
    let samples = ctx.opts.samples.unwrap_or(1000);
    let elements = [pe.w1.clone(), pe.w2.clone(), pe.w3.clone()];
    let inequality = ching_inequality_test(sys, &elements, radius, samples, ctx.opts.seed)?;
    let tuples = 100;
    let residual = parallelogram_identity_test(tuples, 4, 16, ctx.opts.seed);
    let passed = inequality.max_ratio <= 1.0 && residual < PARALLELOGRAM_TOLERANCE;
    let mut csv = String::from("sample,ratio\n");
    for (i, r) in inequality.ratios.iter().enumerate() {
        csv.push_str(&format!("{i},{r:.17e}\n"));
    }
    let view = ChingView {
        elements: ElementsView::new(sys, &pe),
        radius,
        inequality,
        parallelogram_tuples: tuples,
        parallelogram_residual: residual,
    };
    Ok(Outcome::new(&view).csv(csv).passed(passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hecklab::scalar::ratio;

    #[test]
    fn grid_endpoints() {
        let g = parse_grid("1/4:4:5").unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], ratio(1, 4));
        assert_eq!(g[4], ratio(4, 1));
        assert_eq!(parse_grid("2:3:1").unwrap(), vec![ratio(2, 1)]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("1:2:0").is_err());
    }
}
