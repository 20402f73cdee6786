use std::fmt;

use deephole_core::bounds::{self, BoundReport, BoundsError, CsmBound, Epsilon, Surd, Verdict};
use deephole_core::gf::{prime_power_parts, Felt, Field, GfError};
use deephole_core::poly::{PolyError, UPoly};
use deephole_core::rscode::{RSCode, RsError, Word};
use deephole_core::symmetric::{
    eval_hf, expand_hf, grad_hf, grad_hf_lemma, h_basis_explicit, h_basis_recursive, jacobian_identities, SymPoly,
    SymmetricError, TopPoly,
};
use deephole_core::witness::{
    artin_schreier_witness, distinct_count, flag_linear_families, scan_infinity_singular,
    scan_rational_singular_points, search_good_point, SearchOptions, SearchOutcome, SingularPoint, WitnessCert,
    WitnessError,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::{BoundKind, Cli, Command, FieldArgs, HdMethod, TopArgs};

/// Failures that end a run without a result envelope.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Invalid(String),
    /// Exit 3: a size guard refused the computation.
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Guard(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid parameters: {m}"),
            CliError::Guard(m) => write!(f, "guard tripped: {m}"),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<RsError> for CliError {
    fn from(e: RsError) -> Self {
        match e {
            RsError::TooLargeForBruteForce { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SymmetricError> for CliError {
    fn from(e: SymmetricError) -> Self {
        match e {
            SymmetricError::TooManyVariables { .. } => CliError::Guard(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::TooLargeForExhaustive { .. } => CliError::Guard(e.to_string()),
            WitnessError::Code(inner) => inner.into(),
            WitnessError::Symmetric(inner) => inner.into(),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

pub struct Outcome {
    pub name: &'static str,
    pub params: Value,
    pub result: Value,
    /// CSV rows; one per entry of the result's primary array, or one summary row.
    pub rows: Vec<Map<String, Value>>,
    pub exit: u8,
}

fn obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("rows are built from json! objects"),
    }
}

// ---------------------------------------------------------------- parsing

fn parse_list(s: &str, what: &str) -> Result<Vec<u64>, CliError> {
    let t = s.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Invalid(format!("{what}: {c:?} is not a nonnegative integer rep")))
        })
        .collect()
}

fn parse_elems(field: &Field, s: &str, what: &str) -> Result<Vec<Felt>, CliError> {
    parse_list(s, what)?
        .into_iter()
        .map(|r| field.elem(r).map_err(CliError::from))
        .collect()
}

pub fn build_field(a: &FieldArgs) -> Result<Field, CliError> {
    let modulus = match a.modulus.as_deref() {
        Some(m) => Some(
            parse_list(m, "--modulus")?
                .into_iter()
                .map(|c| u32::try_from(c).map_err(|_| CliError::Invalid(format!("modulus coefficient {c} too large"))))
                .collect::<Result<Vec<u32>, _>>()?,
        ),
        None => None,
    };
    let (p, s) = match (a.q, a.p) {
        (Some(q), given_p) => {
            let (p, s) = prime_power_parts(q)?;
            if given_p.is_some_and(|g| g != p as u64) {
                return Err(CliError::Invalid(format!("--p does not match the characteristic of q = {q}")));
            }
            if a.s.is_some_and(|g| g != s) {
                return Err(CliError::Invalid(format!("--s does not match q = {q}")));
            }
            (p as u64, s)
        }
        (None, Some(p)) => (p, a.s.unwrap_or(1)),
        (None, None) => return Err(CliError::Invalid("one of --q or --p is required".into())),
    };
    Ok(Field::new(p, s, modulus.as_deref())?)
}

fn field_json(field: &Field) -> Value {
    json!({
        "p": field.p(),
        "s": field.s(),
        "q": field.q(),
        "modulus": field.modulus().map(|m| m.to_vec()),
    })
}

fn build_top(field: &Field, a: &TopArgs) -> Result<TopPoly, CliError> {
    let lows = match (&a.f, a.d) {
        (Some(f), d) => {
            let lows = parse_elems(field, f, "--f")?;
            if d.is_some_and(|d| d != lows.len()) {
                return Err(CliError::Invalid(format!(
                    "--d = {} but --f lists {} coefficients",
                    d.unwrap_or_default(),
                    lows.len()
                )));
            }
            lows
        }
        (None, Some(d)) => vec![Felt::ZERO; d],
        (None, None) => return Err(CliError::Invalid("one of --f or --d is required".into())),
    };
    Ok(TopPoly::new(a.k, lows))
}

fn felts(xs: &[Felt]) -> Value {
    Value::Array(xs.iter().map(|x| Value::from(x.rep())).collect())
}

fn top_json(f: &TopPoly) -> Value {
    json!({"k": f.k(), "d": f.d(), "lows": felts(f.lows())})
}

fn surd_json(s: &Surd) -> Value {
    let sign = match s.signum() {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    };
    json!({
        "exact": s.to_string(),
        "rational": s.rational_part().to_string(),
        "sqrt_coeff": s.sqrt_coeff().to_string(),
        "radicand": s.radicand().to_string(),
        "floor": s.floor().to_string(),
        "approx": s.approx(),
        "sign": sign,
    })
}

fn cert_json(c: &WitnessCert) -> Value {
    json!({
        "point": felts(&c.point),
        "r": felts(c.r.coeffs()),
        "agreements": c.agreements,
        "distance_bound": c.distance_bound,
    })
}

fn point_json(p: &SingularPoint) -> Value {
    json!({"point": felts(&p.point), "distinct": p.distinct})
}

// ---------------------------------------------------------------- dispatch

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Field(a) => cmd_field(a),
        Command::Hd { field, d, method } => cmd_hd(field, *d, *method),
        Command::HfEval { field, top, x } => cmd_hf_eval(field, top, x),
        Command::Search { field, top, budget } => cmd_search(cli, field, top, *budget),
        Command::Deephole { field, k, f } => cmd_deephole(cli, field, *k, f),
        Command::VerifyIdentities { field, max_kplus1 } => cmd_verify(cli, field, *max_kplus1),
        Command::SingularScan { field, top } => cmd_scan(field, top, false),
        Command::InfinityScan { field, top } => cmd_scan(field, top, true),
        Command::ArtinSchreier { field, k, d } => cmd_artin_schreier(field, *k, *d),
        Command::Bounds { q, k, d, m, s, kind } => cmd_bounds(*q, *k, *d, *m, *s, *kind),
        Command::Thresholds {
            q,
            k,
            d,
            epsilon,
            large_char,
            p,
        } => cmd_thresholds(*q, *k, *d, epsilon, *large_char, *p),
        Command::EquivalenceSweep { field, k, d, limit } => cmd_sweep(cli, field, *k, *d, *limit),
    }
}

fn cmd_field(a: &FieldArgs) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let trace_zero_units = field
        .elements()
        .filter(|&x| !x.is_zero() && field.trace(x).is_zero())
        .count();
    let result = json!({
        "p": field.p(),
        "s": field.s(),
        "q": field.q(),
        "modulus": field.modulus().map(|m| m.to_vec()),
        "units": field.q() - 1,
        "trace_zero_units": trace_zero_units,
    });
    Ok(Outcome {
        name: "field",
        params: json!({"field": field_json(&field)}),
        rows: vec![obj(result.clone())],
        result,
        exit: 0,
    })
}

fn cmd_hd(a: &FieldArgs, d: usize, method: HdMethod) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let h: SymPoly = match method {
        HdMethod::Recursive => h_basis_recursive(d, &field),
        HdMethod::Explicit => h_basis_explicit(d, &field),
    };
    let mut map = Map::new();
    let mut rows = Vec::new();
    for (tuple, c) in h.terms() {
        let key = SymPoly::tuple_key(tuple);
        map.insert(key.clone(), Value::from(c.rep()));
        rows.push(obj(json!({"tuple": key, "coeff": c.rep()})));
    }
    let method = match method {
        HdMethod::Recursive => "recursive",
        HdMethod::Explicit => "explicit",
    };
    Ok(Outcome {
        name: "hd",
        params: json!({"field": field_json(&field), "d": d, "method": method}),
        result: Value::Object(map),
        rows,
        exit: 0,
    })
}

fn cmd_hf_eval(a: &FieldArgs, t: &TopArgs, x: &str) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let f = build_top(&field, t)?;
    let x = parse_elems(&field, x, "--x")?;
    let value = eval_hf(&f, &field, &x)?;
    let grad = grad_hf(&f, &field, &x)?;
    let lemma = grad_hf_lemma(&f, &field, &x)?;
    let good = x.iter().all(|c| !c.is_zero()) && distinct_count(&x) == x.len();
    let result = json!({
        "value": value.rep(),
        "gradient": felts(&grad),
        "gradient_routes_agree": grad == lemma,
        "good_point": good,
        "witness": value.is_zero() && good,
    });
    let rows = grad
        .iter()
        .enumerate()
        .map(|(i, g)| obj(json!({"index": i, "x": x[i].rep(), "partial": g.rep(), "value": value.rep()})))
        .collect();
    Ok(Outcome {
        name: "hf-eval",
        params: json!({"field": field_json(&field), "f": top_json(&f), "x": felts(&x)}),
        result,
        rows,
        exit: 0,
    })
}

fn search_json(outcome: &SearchOutcome) -> (Value, u8) {
    match outcome {
        SearchOutcome::Found(c) => (json!({"outcome": "found", "certificate": cert_json(c)}), 0),
        SearchOutcome::Exhausted { evaluated } => (
            json!({"outcome": "exhausted", "evaluated": evaluated, "certificate": null}),
            1,
        ),
        SearchOutcome::BudgetExceeded { evaluated } => (
            json!({"outcome": "budget_exceeded", "evaluated": evaluated, "certificate": null}),
            3,
        ),
    }
}

fn cmd_search(cli: &Cli, a: &FieldArgs, t: &TopArgs, budget: Option<u64>) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let f = build_top(&field, t)?;
    let code = RSCode::new(&field, f.k())?;
    let options = SearchOptions {
        budget,
        deterministic: cli.deterministic,
    };
    let outcome = search_good_point(&f, &code, options)?;
    let (result, exit) = search_json(&outcome);
    Ok(Outcome {
        name: "search",
        params: json!({
            "field": field_json(&field),
            "f": top_json(&f),
            "budget": budget,
            "deterministic": cli.deterministic,
        }),
        rows: vec![obj(result.clone())],
        result,
        exit,
    })
}

fn cmd_deephole(cli: &Cli, a: &FieldArgs, k: usize, f: &str) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let poly = UPoly::new(parse_elems(&field, f, "--f")?);
    let code = RSCode::new(&field, k)?;
    let word: Word = code.word_from_poly(&poly)?;
    let distance = code.distance_to_code(&word)?;
    let n = code.n();
    let verdict = if distance == n - k {
        "deep_hole"
    } else if distance == 0 {
        "codeword"
    } else {
        "not_deep_hole"
    };
    // Words of degree >= k reduce to a top polynomial; a witness for it must
    // exist exactly when the word is not a deep hole.
    let (top, witness) = match poly.degree() {
        Some(deg) if deg >= k => {
            let top = code.canonical_top(&poly)?;
            let w = if k < n {
                let out = search_good_point(
                    &top,
                    &code,
                    SearchOptions {
                        budget: None,
                        deterministic: cli.deterministic,
                    },
                )?;
                out.cert().map(cert_json)
            } else {
                None
            };
            (Some(top), w)
        }
        _ => (None, None),
    };
    let criterion_consistent = match &top {
        Some(_) => witness.is_some() == (verdict != "deep_hole"),
        None => true,
    };
    let result = json!({
        "verdict": verdict,
        "distance": distance,
        "covering_radius": code.covering_radius(),
        "top": top.as_ref().map(top_json),
        "witness": witness,
        "criterion_consistent": criterion_consistent,
    });
    Ok(Outcome {
        name: "deephole",
        params: json!({"field": field_json(&field), "k": k, "f": felts(poly.coeffs())}),
        rows: vec![obj(json!({
            "verdict": verdict,
            "distance": distance,
            "covering_radius": code.covering_radius(),
            "criterion_consistent": criterion_consistent,
        }))],
        result,
        exit: 0,
    })
}

/// Seeded cross-checks of evaluation routes on random points and top parts.
fn randomized_routes(field: &Field, max_kplus1: usize, seed: u64, trials: usize) -> Result<Value, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.q() as u64;
    let mut configs = Vec::new();
    let mut total_mismatches = 0u64;
    for kplus1 in 2..=max_kplus1 {
        for d in 1..=4usize {
            let lows: Vec<Felt> = (0..d).map(|_| field.elem(rng.gen_range(0..q)).expect("rep < q")).collect();
            let f = TopPoly::new(kplus1 - 1, lows);
            let expanded = expand_hf(&f, field)?;
            let partials: Vec<_> = (0..kplus1)
                .map(|i| expanded.partial(field, i))
                .collect::<Result<_, _>>()?;
            let mut mismatches = 0u64;
            for _ in 0..trials {
                let x: Vec<Felt> = (0..kplus1)
                    .map(|_| field.elem(rng.gen_range(0..q)).expect("rep < q"))
                    .collect();
                let value = eval_hf(&f, field, &x)?;
                let mut perm = x.clone();
                perm.shuffle(&mut rng);
                let chain = grad_hf(&f, field, &x)?;
                let lemma = grad_hf_lemma(&f, field, &x)?;
                let symbolic: Vec<Felt> = partials
                    .iter()
                    .map(|p| p.eval(field, &x))
                    .collect::<Result<_, _>>()?;
                let ok = value == expanded.eval(field, &x)?
                    && value == eval_hf(&f, field, &perm)?
                    && chain == lemma
                    && chain == symbolic;
                mismatches += (!ok) as u64;
            }
            total_mismatches += mismatches;
            configs.push(json!({"kplus1": kplus1, "d": d, "lows": felts(f.lows()), "mismatches": mismatches}));
        }
    }
    Ok(json!({"configs": configs, "mismatches": total_mismatches}))
}

fn cmd_verify(cli: &Cli, a: &FieldArgs, max_kplus1: usize) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    if !(2..=6).contains(&max_kplus1) {
        return Err(CliError::Invalid(format!("--max-kplus1 = {max_kplus1} must lie in 2..=6")));
    }
    let mut identities = Vec::new();
    let mut rows = Vec::new();
    let mut all_hold = true;
    for kplus1 in 2..=max_kplus1 {
        let report = jacobian_identities(kplus1, &field)?;
        all_hold &= report.all_hold();
        for c in &report.checks {
            let row = json!({"kplus1": kplus1, "name": c.name, "holds": c.holds});
            rows.push(obj(row.clone()));
            identities.push(row);
        }
        let row = json!({
            "kplus1": kplus1,
            "name": "determinant_with_reversed_orientation",
            "holds": report.determinant_with_reversed_orientation,
            "informational": true,
        });
        rows.push(obj(row.clone()));
        identities.push(row);
    }
    let randomized = randomized_routes(&field, max_kplus1, cli.seed, cli.trials)?;
    all_hold &= randomized["mismatches"] == json!(0);
    Ok(Outcome {
        name: "verify-identities",
        params: json!({
            "field": field_json(&field),
            "max_kplus1": max_kplus1,
            "seed": cli.seed,
            "trials": cli.trials,
        }),
        result: json!({"identities": identities, "randomized": randomized, "all_hold": all_hold}),
        rows,
        exit: if all_hold { 0 } else { 1 },
    })
}

fn cmd_scan(a: &FieldArgs, t: &TopArgs, infinity: bool) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let f = build_top(&field, t)?;
    let code = RSCode::new(&field, f.k())?;
    let points = if infinity {
        scan_infinity_singular(&f, &code)?
    } else {
        scan_rational_singular_points(&f, &code)?
    };
    let d = f.d();
    let max_distinct = points.iter().map(|p| p.distinct).max();
    // Affine singular points have at most d-1 distinct coordinates.
    let property_holds = points.iter().all(|p| p.distinct < d.max(1));
    let families: Vec<Value> = flag_linear_families(&field, f.k() + 1, d, &points)
        .into_iter()
        .map(|fam| json!(fam.blocks))
        .collect();
    let name = if infinity { "infinity-scan" } else { "singular-scan" };
    let result = json!({
        "points": points.iter().map(point_json).collect::<Vec<_>>(),
        "count": points.len(),
        "max_distinct": max_distinct,
        "distinct_bound": d.saturating_sub(1),
        "property_holds": property_holds,
        "linear_families": families,
    });
    let rows = points.iter().map(|p| obj(point_json(p))).collect();
    Ok(Outcome {
        name,
        params: json!({"field": field_json(&field), "f": top_json(&f)}),
        result,
        rows,
        exit: if property_holds || infinity { 0 } else { 1 },
    })
}

fn cmd_artin_schreier(a: &FieldArgs, k: usize, d: usize) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let w = artin_schreier_witness(&field, k, d)?;
    let n = field.q() as usize - 1;
    let roots: Vec<Felt> = w.roots.iter().copied().collect();
    let result = json!({
        "b_list": felts(&w.b_list),
        "g": felts(w.g.coeffs()),
        "h": felts(w.h.coeffs()),
        "deg_h": w.h.degree(),
        "roots": felts(&roots),
        "root_count": w.root_count,
        "agreements": w.agreements,
        "distance": w.distance,
        "n_minus_k": n - k,
        "not_deep_hole": w.distance < n - k,
    });
    let row = json!({
        "root_count": w.root_count,
        "agreements": w.agreements,
        "distance": w.distance,
        "n_minus_k": n - k,
        "not_deep_hole": w.distance < n - k,
    });
    Ok(Outcome {
        name: "artin-schreier",
        params: json!({"field": field_json(&field), "k": k, "d": d}),
        result,
        rows: vec![obj(row)],
        exit: 0,
    })
}

fn report_json(r: &BoundReport) -> Value {
    let terms: Map<String, Value> = r.terms.iter().map(|(k, v)| (k.clone(), surd_json(v))).collect();
    let checks: Map<String, Value> = r.checks.iter().map(|c| (c.name.clone(), Value::Bool(c.holds))).collect();
    json!({
        "name": r.name,
        "terms": terms,
        "checks": checks,
        "value": r.value.as_ref().map(surd_json),
        "verdict": r.verdict.label(),
        "reasons": r.verdict.reasons(),
    })
}

fn report_row(r: &BoundReport) -> Map<String, Value> {
    obj(json!({
        "name": r.name,
        "value": r.value.as_ref().map(|v| v.to_string()),
        "approx": r.value.as_ref().map(|v| v.approx()),
        "verdict": r.verdict.label(),
    }))
}

fn csm_json(c: &CsmBound) -> Value {
    let s = |v: &[num_bigint::BigUint]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    json!({
        "name": "c_sm_bound",
        "m": c.m,
        "d": c.d,
        "e_values": s(&c.e_values),
        "a_values": s(&c.a_values),
        "katz_sum": c.katz_sum.to_string(),
        "closed_form": c.closed_form.to_string(),
        "holds": c.holds,
    })
}

fn need<T: Copy>(v: Option<T>, flag: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("--kind {kind} requires {flag}")))
}

fn cmd_bounds(
    q: u64,
    k: Option<u64>,
    d: u64,
    m: Option<u64>,
    s: Option<u64>,
    kind: BoundKind,
) -> Result<Outcome, CliError> {
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut csm: Option<CsmBound> = None;
    match kind {
        BoundKind::Gl => reports.push(bounds::gl_estimate_terms(need(m, "--m", "gl")?, need(s, "--s", "gl")?, d, q)?),
        BoundKind::Csm => csm = Some(bounds::c_sm_bound(need(m, "--m", "csm")?, d)?),
        BoundKind::Affine => reports.push(bounds::affine_lower_bound(q, need(k, "--k", "affine")?, d)?),
        BoundKind::N1 => reports.push(bounds::n1_bound(q, need(k, "--k", "n1")?, d)?),
        BoundKind::N2 => reports.push(bounds::n2_bound(q, need(k, "--k", "n2")?, d)?),
        BoundKind::Useful => reports.push(bounds::useful_points_lower_bound(q, need(k, "--k", "useful")?, d, false)?),
        BoundKind::LargeChar => {
            let k = need(k, "--k", "large-char")?;
            reports.push(bounds::affine_lower_bound_large_char(q, k, d)?);
            reports.push(bounds::exceptional_bound_large_char(q, k, d)?);
            reports.push(bounds::useful_points_lower_bound(q, k, d, true)?);
        }
        BoundKind::All => {
            let k = need(k, "--k", "all")?;
            reports.push(bounds::affine_lower_bound(q, k, d)?);
            reports.push(bounds::n1_bound(q, k, d)?);
            reports.push(bounds::n2_bound(q, k, d)?);
            reports.push(bounds::useful_points_lower_bound(q, k, d, false)?);
            reports.push(bounds::affine_lower_bound_large_char(q, k, d)?);
            reports.push(bounds::exceptional_bound_large_char(q, k, d)?);
            reports.push(bounds::useful_points_lower_bound(q, k, d, true)?);
            if let Some(m) = m {
                if let Some(s) = s {
                    reports.push(bounds::gl_estimate_terms(m, s, d, q)?);
                }
                csm = Some(bounds::c_sm_bound(m, d)?);
            }
        }
    }
    let mut rows: Vec<Map<String, Value>> = reports.iter().map(report_row).collect();
    if let Some(c) = &csm {
        rows.push(obj(json!({
            "name": "c_sm_bound",
            "value": c.closed_form.to_string(),
            "approx": null,
            "verdict": if c.holds { "conditions_met" } else { "conditions_not_met" },
        })));
    }
    let mut list: Vec<Value> = reports.iter().map(report_json).collect();
    if let Some(c) = &csm {
        list.push(csm_json(c));
    }
    let kind = format!("{kind:?}").to_lowercase();
    Ok(Outcome {
        name: "bounds",
        params: json!({"q": q, "k": k, "d": d, "m": m, "s": s, "kind": kind}),
        result: json!({"reports": list}),
        rows,
        exit: 0,
    })
}

fn cmd_thresholds(q: u64, k: u64, d: u64, epsilon: &str, large_char: bool, p: Option<u64>) -> Result<Outcome, CliError> {
    let eps: Epsilon = epsilon.parse()?;
    let report = bounds::theorem_conditions(q, k, d, eps, large_char, p)?;
    // The useful-point bound exists whenever k > d >= 2 and q - 1 > k + d.
    let useful = bounds::useful_points_lower_bound(q, k, d, large_char).ok();
    let useful_value = useful.as_ref().and_then(|r| r.value.clone());
    let mut result = report_json(&report);
    let m = result.as_object_mut().expect("report is an object");
    m.insert("useful_points_lower_bound".into(), json!(useful_value.as_ref().map(surd_json)));
    m.insert("useful_bound_positive".into(), json!(useful_value.as_ref().map(|v| v.is_positive())));
    let met = report.verdict == Verdict::ConditionsMet;
    let mut rows: Vec<Map<String, Value>> = report
        .checks
        .iter()
        .map(|c| obj(json!({"check": c.name, "holds": c.holds, "verdict": report.verdict.label()})))
        .collect();
    if rows.is_empty() {
        rows.push(obj(json!({"check": null, "holds": null, "verdict": report.verdict.label()})));
    }
    Ok(Outcome {
        name: "thresholds",
        params: json!({
            "q": q,
            "k": k,
            "d": d,
            "epsilon": eps.to_string(),
            "large_char": large_char,
            "p": p,
        }),
        result,
        rows,
        exit: if met { 0 } else { 1 },
    })
}

fn cmd_sweep(cli: &Cli, a: &FieldArgs, k: usize, d: usize, limit: Option<usize>) -> Result<Outcome, CliError> {
    let field = build_field(a)?;
    let code = RSCode::new(&field, k)?;
    let mut tops: Vec<TopPoly> = TopPoly::all(&field, k, d).collect();
    if let Some(l) = limit {
        tops.truncate(l);
    }
    let options = SearchOptions {
        budget: None,
        deterministic: cli.deterministic,
    };
    let entries: Vec<Result<Value, CliError>> = tops
        .par_iter()
        .map(|f| {
            let word = code.word_from_top(f)?;
            let deep = code.is_deep_hole(&word)?;
            let outcome = search_good_point(f, &code, options)?;
            let witness = outcome.cert().is_some();
            Ok(json!({
                "lows": felts(f.lows()),
                "deep_hole": deep,
                "witness_found": witness,
                "agree": deep != witness,
            }))
        })
        .collect();
    let entries: Vec<Value> = entries.into_iter().collect::<Result<_, _>>()?;
    let count = |key: &str| entries.iter().filter(|e| e[key] == json!(true)).count();
    let deep_holes = count("deep_hole");
    let witnesses = count("witness_found");
    let agreeing = count("agree");
    let equivalent = agreeing == entries.len();
    let rows = entries.iter().cloned().map(obj).collect();
    Ok(Outcome {
        name: "equivalence-sweep",
        params: json!({"field": field_json(&field), "k": k, "d": d, "limit": limit}),
        result: json!({
            "instances": entries.len(),
            "deep_holes": deep_holes,
            "witnesses": witnesses,
            "mismatches": entries.len() - agreeing,
            "equivalent": equivalent,
            "results": entries,
        }),
        rows,
        exit: if equivalent { 0 } else { 1 },
    })
}
