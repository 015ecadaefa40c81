use std::sync::Arc;

use serde_json::{json, Value};

use detlab_core::casebook::{list_scenarios, run_scenario, scenarios, FactReport, ScenarioVerdict};
use detlab_core::groebner::{DiskCache, Ideal};
use detlab_core::hankelplucker::{golberg_delta_check, integrality_check, reduction_conjecture_check, star_expansion, top_plucker_instance, ReductionOutcome};
use detlab_core::polar::{
    factor_multiplicity, hessian_det_status, homaloidal_verdict, linear_type_check, totally_hessian_check, HessianOptions, LinearType, Target,
    VerdictOptions,
};
use detlab_core::polyring::parse::max_x_index;
use detlab_core::polyring::{PolyRing, QPoly, Rationals};
use detlab_core::structmat::{MatrixSpec, PolyMatrix};
use detlab_core::subhankel;
use detlab_core::syzygy::{fitting_condition_f1, graded_betti, linear_rank};
use detlab_core::{AlgebraError, Budget, Result};

use crate::{CacheAction, CasebookAction, Cli, Command, Global, MatrixArgs, Outcome};

type Reply = (Outcome, Option<Value>);

pub fn dispatch(cli: &Cli) -> Result<Reply> {
    let g = &cli.global;
    match &cli.command {
        Command::Matrix { matrix, det, minors, adjugate } => matrix_cmd(g, matrix, *det, *minors, *adjugate),
        Command::Ideal { gens, vars, gb, hilbert, contains, radical_contains, saturate } => {
            ideal_cmd(g, gens, *vars, *gb, *hilbert, contains, radical_contains, *saturate)
        }
        Command::Syz { matrix, gens, linear, betti, fitting, hom_cap } => syz_cmd(g, matrix, gens, *linear, *betti, *fitting, *hom_cap),
        Command::Polar { matrix, poly, verdict, hessian, multiplicity, totally_hessian, linear_type } => {
            polar_cmd(g, matrix, poly.as_deref(), *verdict, *hessian, *multiplicity, *totally_hessian, *linear_type)
        }
        Command::Hankel { m, star, golberg, plucker, integrality, reduction } => hankel_cmd(g, *m, *star, *golberg, *plucker, *integrality, *reduction),
        Command::Subhankel { n, recurrences, hilbert_burch, multiplicities, colon, resolution, linear_type } => {
            let flags = [*recurrences, *hilbert_burch, *multiplicities, *colon, *resolution, *linear_type];
            subhankel_cmd(g, *n, flags)
        }
        Command::Casebook { action } => casebook_cmd(g, action),
        Command::Cache { action } => cache_cmd(g, action),
    }
}

fn budget(g: &Global) -> Budget {
    Budget::seconds(g.timeout_secs).step_cap(g.gb_step_cap)
}

fn envelope(g: &Global, command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": detlab_core::casebook::SCHEMA, "command": command, "config": g.run_config(false) });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn build_matrix(args: &MatrixArgs) -> Result<PolyMatrix<Rationals>> {
    let spec = match (&args.spec, &args.kind) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| AlgebraError::Io(format!("{path}: {e}")))?;
            MatrixSpec::parse(&text)?
        }
        (None, Some(kind)) => {
            let mut s = MatrixSpec::new(kind.parse()?);
            s.m = args.m;
            s.r = args.r;
            s.n = args.n;
            s
        }
        (None, None) => return Err(AlgebraError::Invalid("give --kind or --spec".into())),
    };
    spec.build(Rationals)
}

fn rows_json(m: &PolyMatrix<Rationals>) -> Value {
    json!((0..m.rows()).map(|i| m.row(i).iter().map(|p| p.to_text()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix_cmd(g: &Global, args: &MatrixArgs, det: bool, minors: Option<usize>, adjugate: bool) -> Result<Reply> {
    let m = build_matrix(args)?;
    let mut body = json!({ "provenance": m.provenance().to_string(), "rows": rows_json(&m) });
    if det {
        let d = m.determinant()?;
        body["determinant"] = json!(d.to_text());
        body["terms"] = json!(d.len());
        body["terms"] = json!(d.len());
    }
    if let Some(t) = minors {
        body["minors"] = json!(m.minors(t)?.iter().map(|p| p.to_text()).collect::<Vec<_>>());
    }
    if adjugate {
        body["adjugate"] = rows_json(&m.adjugate()?);
    }
    Ok((Outcome::Ok, Some(envelope(g, "matrix", body))))
}

#[allow(clippy::too_many_arguments)]
fn ideal_cmd(
    g: &Global,
    gens: &[String],
    vars: Option<usize>,
    gb: bool,
    hilbert: bool,
    contains: &[String],
    radical_contains: &[String],
    saturate: bool,
) -> Result<Reply> {
    let texts: Vec<&str> = gens.iter().chain(contains).chain(radical_contains).map(|s| s.as_str()).collect();
    let ring = PolyRing::xs(Rationals, vars.unwrap_or(max_x_index(&texts) + 1));
    let polys: Vec<QPoly> = gens.iter().map(|s| ring.parse(s)).collect::<Result<_>>()?;
    let disk = match &g.cache_dir {
        Some(d) => Some(Arc::new(DiskCache::new(d)?)),
        None => None,
    };
    let ideal = Ideal::new(&ring, polys).with_disk_cache(disk);
    let b = budget(g);
    let nothing = !(gb || hilbert || saturate) && contains.is_empty() && radical_contains.is_empty();
    let mut body = json!({ "nvars": ring.nvars() });
    if gb || nothing {
        let basis = ideal.gb(&b)?;
        body["groebner_basis"] = json!(basis.polys().iter().map(|p| p.to_text()).collect::<Vec<_>>());
    }
    if hilbert || nothing {
        body["hilbert"] = json!(ideal.hilbert_data(&b)?);
    }
    if !contains.is_empty() {
        let mut out = Vec::new();
        for s in contains {
            out.push(json!({ "poly": s, "member": ideal.contains(&ring.parse(s)?, &b)? }));
        }
        body["contains"] = json!(out);
    }
    if !radical_contains.is_empty() {
        let mut out = Vec::new();
        for s in radical_contains {
            out.push(json!({ "poly": s, "member": ideal.radical_contains(&ring.parse(s)?, &b)? }));
        }
        body["radical_contains"] = json!(out);
    }
    if saturate {
        let (sat, k) = ideal.saturation(&Ideal::maximal(&ring), &b)?;
        body["saturation"] = json!({ "generators": sat.gens().iter().map(|p| p.to_text()).collect::<Vec<_>>(), "exponent": k });
    }
    Ok((Outcome::Ok, Some(envelope(g, "ideal", body))))
}

fn forms_of(args: &MatrixArgs, gens: &[String]) -> Result<Vec<QPoly>> {
    if gens.is_empty() {
        return Ok(build_matrix(args)?.determinant()?.gradient());
    }
    let texts: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    let ring = PolyRing::xs(Rationals, max_x_index(&texts) + 1);
    gens.iter().map(|s| ring.parse(s)).collect()
}

fn rng(g: &Global) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(g.seed)
}

fn syz_cmd(g: &Global, args: &MatrixArgs, gens: &[String], linear: bool, betti: bool, fitting: bool, hom_cap: usize) -> Result<Reply> {
    let forms = forms_of(args, gens)?;
    let b = budget(g);
    let mut body = json!({ "forms": forms.len() });
    let mut outcome = Outcome::Ok;
    if linear || !(betti || fitting) {
        let lr = linear_rank(&forms, &mut rng(g), &b)?;
        let rows: Vec<Vec<String>> = lr.syzygies.as_rows().iter().map(|r| r.iter().map(|p| p.to_text()).collect()).collect();
        body["linear"] = json!({ "columns": lr.syzygies.ncols(), "rank": lr.certificate.rank, "certificate": lr.certificate, "matrix": rows });
    }
    if betti {
        let ring = forms[0].ring().clone();
        let t = graded_betti(&Ideal::new(&ring, forms.clone()), hom_cap, &b)?;
        let entries: Vec<Value> = t.entries.iter().map(|((i, j), c)| json!({ "i": i, "j": j, "count": c })).collect();
        body["betti"] = json!({ "entries": entries, "truncated": t.truncated });
    }
    if fitting {
        let r = fitting_condition_f1(&forms, &b)?;
        if r.pass.is_none() {
            outcome = Outcome::Timeout;
        }
        body["fitting"] = json!(r);
    }
    Ok((outcome, Some(envelope(g, "syz", body))))
}

#[allow(clippy::too_many_arguments)]
fn polar_cmd(
    g: &Global,
    args: &MatrixArgs,
    poly: Option<&str>,
    verdict: bool,
    hessian: bool,
    multiplicity: bool,
    totally_hessian: bool,
    linear_type: bool,
) -> Result<Reply> {
    let f = match poly {
        Some(text) => PolyRing::xs(Rationals, max_x_index(&[text]) + 1).parse(text)?,
        None => build_matrix(args)?.determinant()?,
    };
    let b = budget(g);
    let mut r = rng(g);
    let mut body = json!({ "form": f.to_text() });
    let mut outcome = Outcome::Ok;
    if verdict || !(hessian || multiplicity || totally_hessian || linear_type) {
        let opts = VerdictOptions { budget: b.clone(), ..VerdictOptions::default() };
        let v = homaloidal_verdict(&f, &opts, g.seed)?;
        let mut vj = json!(v);
        if g.no_timings {
            vj.as_object_mut().unwrap().remove("timings");
        }
        body["status"] = json!(v.status);
        body["verdict"] = vj;
    }
    if hessian {
        body["hessian"] = json!(hessian_det_status(&f, &HessianOptions::default(), &mut r, &b)?);
    }
    if multiplicity {
        body["multiplicity"] = json!(factor_multiplicity(&f, Target::HessianOf(&f), &mut r)?);
    }
    if totally_hessian {
        body["totally_hessian"] = json!(totally_hessian_check(&f, &mut r)?);
    }
    if linear_type {
        let rep = linear_type_check(&f.gradient(), false, &b);
        if matches!(rep.status, LinearType::Timeout { .. }) {
            outcome = Outcome::Timeout;
        }
        body["linear_type"] = json!(rep.status);
    }
    Ok((outcome, Some(envelope(g, "polar", body))))
}

fn hankel_cmd(g: &Global, m: usize, star: Option<usize>, golberg: bool, plucker: bool, integrality: bool, reduction: Option<usize>) -> Result<Reply> {
    let b = budget(g);
    let mut body = json!({ "m": m });
    let mut outcome = Outcome::Ok;
    if let Some(j) = star {
        body["star"] = json!(star_expansion(m, j)?);
    }
    if golberg || !(star.is_some() || plucker || integrality || reduction.is_some()) {
        let r = golberg_delta_check(m)?;
        if !r.pass {
            outcome = combine(outcome, Outcome::Contradiction);
        }
        body["golberg"] = json!(r);
    }
    if plucker {
        body["plucker"] = json!(top_plucker_instance(m)?);
    }
    if integrality {
        let r = integrality_check(m, &b)?;
        match r.pass {
            Some(false) => outcome = combine(outcome, Outcome::Contradiction),
            None => outcome = combine(outcome, Outcome::Timeout),
            _ => {}
        }
        body["integrality"] = json!(r);
    }
    if let Some(i) = reduction {
        let r = reduction_conjecture_check(m, i, &b)?;
        match r {
            ReductionOutcome::NotEqual { .. } => outcome = combine(outcome, Outcome::Contradiction),
            ReductionOutcome::Timeout { .. } => outcome = combine(outcome, Outcome::Timeout),
            ReductionOutcome::Equal => {}
        }
        body["reduction"] = json!({ "i": i, "outcome": r });
    }
    Ok((outcome, Some(envelope(g, "hankel", body))))
}

/// Contradictions dominate timeouts, which dominate success.
fn combine(a: Outcome, b: Outcome) -> Outcome {
    let rank = |o: Outcome| match o {
        Outcome::Ok => 0,
        Outcome::Timeout => 1,
        Outcome::Contradiction => 2,
        Outcome::Usage => 3,
    };
    if rank(a) >= rank(b) {
        a
    } else {
        b
    }
}

fn subhankel_cmd(g: &Global, n: usize, flags: [bool; 6]) -> Result<Reply> {
    let b = budget(g);
    let all = !flags.iter().any(|&f| f);
    let want = |i: usize| flags[i] || all;
    let mut body = json!({ "n": n });
    let mut ok = true;
    let mut timeout = false;
    if want(0) {
        let r = subhankel::recurrence_check(n)?;
        ok &= r.pass;
        body["recurrences"] = json!(r);
    }
    if want(1) {
        let r = subhankel::hilbert_burch_check(n, &b)?;
        match r.pass {
            Some(p) => ok &= p,
            None => timeout = true,
        }
        body["hilbert_burch"] = json!(r);
    }
    if want(2) {
        let r = subhankel::multiplicity_filtration_check(n, &b)?;
        ok &= r.pass;
        body["multiplicities"] = json!(r);
    }
    if want(3) && (flags[3] || n <= 5) {
        let r = subhankel::colon_claim_check(n, &b)?;
        ok &= r.pass;
        body["colon"] = json!(r);
    }
    if want(4) && (flags[4] || (3..=5).contains(&n)) {
        let r = subhankel::resolution_and_ass_check(n, &b)?;
        ok &= r.pass;
        body["resolution"] = json!(r);
    }
    if want(5) && (flags[5] || n <= 4) {
        let r = subhankel::subhankel_linear_type_check(n, &b)?;
        match r.status {
            LinearType::Timeout { .. } => timeout = true,
            LinearType::LinearType => ok &= r.linear_forms_match && r.last_generator_shape,
            LinearType::NotLinearType { .. } => ok = false,
        }
        body["linear_type"] = json!(r);
    }
    let outcome = if !ok {
        Outcome::Contradiction
    } else if timeout {
        Outcome::Timeout
    } else {
        Outcome::Ok
    };
    Ok((outcome, Some(envelope(g, "subhankel", body))))
}

fn report_outcome(r: &FactReport) -> Outcome {
    match r.verdict {
        ScenarioVerdict::Pass => Outcome::Ok,
        ScenarioVerdict::Contradiction => Outcome::Contradiction,
        ScenarioVerdict::Incomplete => Outcome::Timeout,
    }
}

fn casebook_cmd(g: &Global, action: &CasebookAction) -> Result<Reply> {
    match action {
        CasebookAction::List => {
            let list = list_scenarios()?;
            Ok((Outcome::Ok, Some(json!({ "schema": detlab_core::casebook::SCHEMA, "scenarios": list }))))
        }
        CasebookAction::Run { id, all, long, json: path } => {
            let cfg = g.run_config(*long);
            let (outcome, value) = if *all {
                let ids: Vec<&str> = scenarios().iter().map(|s| s.id).collect();
                let results: Vec<Result<FactReport>> = std::thread::scope(|s| {
                    let handles: Vec<_> = ids.iter().map(|id| s.spawn(|| run_scenario(id, &cfg))).collect();
                    handles.into_iter().map(|h| h.join().expect("scenario thread panicked")).collect()
                });
                let reports: Vec<FactReport> = results.into_iter().collect::<Result<_>>()?;
                let outcome = reports.iter().map(report_outcome).fold(Outcome::Ok, combine);
                (outcome, json!({ "schema": detlab_core::casebook::SCHEMA, "config": cfg, "reports": reports }))
            } else {
                let r = run_scenario(id.as_deref().unwrap_or_default(), &cfg)?;
                (report_outcome(&r), json!(r))
            };
            if let Some(p) = path {
                let text = serde_json::to_string_pretty(&value)?;
                std::fs::write(p, text + "\n").map_err(|e| AlgebraError::Io(format!("{p}: {e}")))?;
            }
            Ok((outcome, Some(value)))
        }
    }
}

fn cache_cmd(g: &Global, action: &CacheAction) -> Result<Reply> {
    let dir = g.cache_dir.as_ref().ok_or_else(|| AlgebraError::Invalid("no cache directory: set --cache-dir or DETLAB_CACHE_DIR".into()))?;
    let cache = DiskCache::new(dir)?;
    let body = match action {
        CacheAction::Stats => {
            let (entries, bytes) = cache.stats()?;
            json!({ "dir": dir, "entries": entries, "bytes": bytes })
        }
        CacheAction::Clear => json!({ "dir": dir, "removed": cache.clear()? }),
    };
    Ok((Outcome::Ok, Some(body)))
}

/// Flattens JSON into `path: value` lines.
pub fn text_lines(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                text_lines(&key(k), x, out);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push(format!("{prefix}: [{}]", items.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                text_lines(&key(&i.to_string()), x, out);
            }
        }
        other => out.push(format!("{prefix}: {}", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
