//! Registry of worked scenarios. Each scenario re-derives a list of facts and
//! compares them with the recorded values.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::groebner::{DiskCache, Ideal};
use crate::hankelplucker::{integrality_check, reduction_conjecture_check, ReductionOutcome};
use crate::linalg::DenseMatrix;
use crate::polar::{
    det_mod, expected_multiplicity, factor_multiplicity, hessian, hessian_det_at, hessian_det_status, homaloidal_verdict,
    inversion_check, jacobian_dual_rank_mod, linear_type_check, minimal_rees_12, rees_component, totally_hessian_check, Certainty, HessianDetStatus,
    HessianOptions, Inversion, LinearType, Status, Target, TotallyHessian, VerdictOptions,
};
use crate::polyring::coeff::{mulmod, powmod};
use crate::polyring::{identity_prime, Monomial, QPoly, Rationals, Ring, DEFAULT_PRIME, Q};
use crate::structmat::{PolyMatrix, Provenance};
use crate::subhankel;
use crate::syzygy::{fitting_condition_f1, is_syzygy, linear_rank, linear_syzygies, same_k_span};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub prime: u64,
    pub timeout_secs: u64,
    pub long_timeout_secs: u64,
    pub gb_step_cap: Option<u64>,
    pub cache_dir: Option<String>,
    pub long: bool,
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            prime: DEFAULT_PRIME,
            timeout_secs: 600,
            long_timeout_secs: 7200,
            gb_step_cap: None,
            cache_dir: None,
            long: false,
            timings: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Reference,
    Trivial,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Required {
    Exact,
    Probabilistic,
    ReportOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Match {
    Yes,
    No,
    Timeout,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub anchor: String,
    pub description: String,
    pub source: Source,
    pub expected: Value,
    pub required: Required,
    pub long: bool,
}

impl Fact {
    fn new(source: Source, anchor: &str, description: &str, expected: Value) -> Fact {
        Fact { anchor: anchor.into(), description: description.into(), source, expected, required: Required::Exact, long: false }
    }
    fn reference(anchor: &str, description: &str, expected: Value) -> Fact {
        Fact::new(Source::Reference, anchor, description, expected)
    }
    fn derived(anchor: &str, description: &str, expected: Value) -> Fact {
        Fact::new(Source::Derived, anchor, description, expected)
    }
    fn trivial(anchor: &str, description: &str, expected: Value) -> Fact {
        Fact::new(Source::Trivial, anchor, description, expected)
    }
    fn long(mut self) -> Fact {
        self.long = true;
        self
    }
    fn probabilistic(mut self) -> Fact {
        self.required = Required::Probabilistic;
        self
    }
    fn report_only(mut self) -> Fact {
        self.required = Required::ReportOnly;
        self
    }
}

/// What a check produced. `ok = None` means "compare with the expected value".
pub struct Checked {
    computed: Value,
    ok: Option<bool>,
    certainty: Certainty,
}

fn exact(computed: Value) -> Result<Checked> {
    Ok(Checked { computed, ok: None, certainty: Certainty::Proved })
}

fn exact_if(computed: Value, ok: bool) -> Result<Checked> {
    Ok(Checked { computed, ok: Some(ok), certainty: Certainty::Proved })
}

fn probable(computed: Value) -> Result<Checked> {
    Ok(Checked { computed, ok: None, certainty: Certainty::Probabilistic })
}

fn probable_if(computed: Value, ok: bool) -> Result<Checked> {
    Ok(Checked { computed, ok: Some(ok), certainty: Certainty::Probabilistic })
}

#[derive(Clone, Debug, Serialize)]
pub struct FactResult {
    pub anchor: String,
    pub description: String,
    pub source: Source,
    pub required: Required,
    pub expected: Value,
    pub computed: Value,
    #[serde(rename = "match")]
    pub matched: Match,
    pub certainty: Option<Certainty>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioVerdict {
    Pass,
    Contradiction,
    Incomplete,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactReport {
    pub schema: u32,
    pub config: RunConfig,
    pub scenario: String,
    pub matrix: String,
    pub facts: Vec<FactResult>,
    pub verdict: ScenarioVerdict,
}

impl FactReport {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            ScenarioVerdict::Pass => 0,
            ScenarioVerdict::Contradiction => 1,
            ScenarioVerdict::Incomplete => 3,
        }
    }

    pub fn fact(&self, anchor: &str) -> Option<&FactResult> {
        self.facts.iter().find(|f| f.anchor == anchor)
    }
}

/// Per-fact state handed to a check.
pub struct Env {
    pub budget: Budget,
    pub rng: ChaCha8Rng,
    pub seed: u64,
    pub prime: u64,
}

pub struct Runner {
    cfg: RunConfig,
    listing: bool,
    disk: Option<Arc<DiskCache>>,
    facts: Vec<Fact>,
    results: Vec<FactResult>,
}

fn fact_seed(seed: u64, anchor: &str) -> u64 {
    let h = Sha256::digest(format!("{seed}:{anchor}").as_bytes());
    u64::from_le_bytes(h[..8].try_into().unwrap())
}

impl Runner {
    fn new(cfg: RunConfig, listing: bool) -> Result<Runner> {
        let disk = match (&cfg.cache_dir, listing) {
            (Some(d), false) => Some(Arc::new(DiskCache::new(d)?)),
            _ => None,
        };
        Ok(Runner { cfg, listing, disk, facts: Vec::new(), results: Vec::new() })
    }

    pub fn ideal(&self, ring: &Ring<Rationals>, gens: Vec<QPoly>) -> Ideal<Rationals> {
        Ideal::new(ring, gens).with_disk_cache(self.disk.clone())
    }

    pub fn fact(&mut self, fact: Fact, check: impl FnOnce(&mut Env) -> Result<Checked>) {
        if self.listing {
            self.facts.push(fact);
            return;
        }
        let mut result = FactResult {
            anchor: fact.anchor.clone(),
            description: fact.description.clone(),
            source: fact.source,
            required: fact.required,
            expected: fact.expected.clone(),
            computed: Value::Null,
            matched: Match::Skipped,
            certainty: None,
            millis: None,
        };
        if fact.long && !self.cfg.long {
            result.computed = json!("skipped: needs --long");
            self.results.push(result);
            return;
        }
        let secs = if fact.long { self.cfg.long_timeout_secs } else { self.cfg.timeout_secs };
        let seed = fact_seed(self.cfg.seed, &fact.anchor);
        let mut env = Env {
            budget: Budget::seconds(secs).step_cap(self.cfg.gb_step_cap),
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            prime: self.cfg.prime,
        };
        let t0 = Instant::now();
        match check(&mut env) {
            Ok(c) => {
                let ok = c.ok.unwrap_or_else(|| c.computed == fact.expected);
                result.computed = c.computed;
                result.matched = if ok { Match::Yes } else { Match::No };
                result.certainty = Some(c.certainty);
            }
            Err(e) if e.is_timeout() => {
                result.computed = json!({ "timeout": e.to_string() });
                result.matched = Match::Timeout;
                result.certainty = Some(Certainty::Timeout);
            }
            Err(e) => {
                result.computed = json!({ "error": e.to_string() });
                result.matched = Match::No;
            }
        }
        if self.cfg.timings {
            result.millis = Some(t0.elapsed().as_millis() as u64);
        }
        self.results.push(result);
    }
}

fn verdict_of(results: &[FactResult]) -> ScenarioVerdict {
    let contradiction = results.iter().any(|r| {
        r.matched == Match::No && (r.required != Required::ReportOnly || r.certainty == Some(Certainty::Proved))
    });
    if contradiction {
        return ScenarioVerdict::Contradiction;
    }
    if results.iter().any(|r| r.matched == Match::Timeout && r.required != Required::ReportOnly) {
        return ScenarioVerdict::Incomplete;
    }
    ScenarioVerdict::Pass
}

type ScenarioFn = fn(&mut Runner) -> Result<()>;

pub struct Scenario {
    pub id: &'static str,
    pub matrix: &'static str,
    pub summary: &'static str,
    run: ScenarioFn,
}

pub fn scenarios() -> Vec<Scenario> {
    let s = |id, matrix, summary, run| Scenario { id, matrix, summary, run };
    vec![
        s("hankel-3", "kind = hankel, m = 3", "3 x 3 Hankel determinant: radical, colon and reduction structure, linear type", hankel3 as ScenarioFn),
        s("hankel-4", "kind = hankel, m = 4", "4 x 4 Hankel determinant: multiplicities and the reduction relation", hankel4),
        s("cat-3-2", "kind = catalecticant, m = 3, r = 2", "2-leap 3 x 3 catalecticant: embedded prime and homaloidal verdict", cat32),
        s("cat-4-3", "kind = catalecticant, m = 4, r = 3", "3-leap 4 x 4 catalecticant: Hessian factorization, Rees data, homaloidal verdict", cat43),
        s("cat-4-2", "kind = catalecticant, m = 4, r = 2", "2-leap 4 x 4 catalecticant: Rees data and an open verdict", cat42),
        s("generic-3", "kind = generic, m = 3", "generic 3 x 3 determinant: cofactor inversion and totally Hessian", generic3),
        s("symmetric-3", "kind = symmetric, m = 3", "symmetric 3 x 3 determinant: partials against cofactors, totally Hessian", symmetric3),
        s("subhankel-3", "kind = sub-hankel, n = 3", "sub-Hankel n = 3: filtration, resolution, linear type", |r| subhankel_scenario(r, 3)),
        s("subhankel-4", "kind = sub-hankel, n = 4", "sub-Hankel n = 4: filtration, resolution, linear type", |r| subhankel_scenario(r, 4)),
        s("subhankel-5", "kind = sub-hankel, n = 5", "sub-Hankel n = 5: filtration and resolution", |r| subhankel_scenario(r, 5)),
        s("subhankel-6", "kind = sub-hankel, n = 6", "sub-Hankel n = 6: recurrences and filtration", |r| subhankel_scenario(r, 6)),
        s("dg-3", "kind = degenerate-generic, m = 3", "generic 3 x 3 with a zero corner: vanishing Hessian", dg3),
        s("sc-3", "kind = sc3", "2-leap 3 x 3 catalecticant with a zero corner: linear syzygies and verdict", sc3),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioListing {
    pub id: String,
    pub matrix: String,
    pub summary: String,
    pub facts: Vec<Fact>,
}

pub fn list_scenarios() -> Result<Vec<ScenarioListing>> {
    let mut out = Vec::new();
    for s in scenarios() {
        let mut r = Runner::new(RunConfig::default(), true)?;
        (s.run)(&mut r)?;
        out.push(ScenarioListing { id: s.id.into(), matrix: s.matrix.into(), summary: s.summary.into(), facts: r.facts });
    }
    Ok(out)
}

pub fn run_scenario(id: &str, cfg: &RunConfig) -> Result<FactReport> {
    let s = scenarios()
        .into_iter()
        .find(|s| s.id == id)
        .ok_or_else(|| AlgebraError::Invalid(format!("unknown scenario '{id}'")))?;
    let mut r = Runner::new(cfg.clone(), false)?;
    (s.run)(&mut r)?;
    let verdict = verdict_of(&r.results);
    Ok(FactReport { schema: SCHEMA, config: cfg.clone(), scenario: id.into(), matrix: s.matrix.into(), facts: r.results, verdict })
}

fn leading_monomial(p: &QPoly) -> String {
    match p.leading() {
        Some((m, _)) => p.ring().monomial(*m, Q::one()).to_text(),
        None => "0".into(),
    }
}

fn multiplicity_fact(run: &mut Runner, id: &str, f: &QPoly, e: u32, residual: u32) {
    run.fact(
        Fact::reference(&format!("{id}/hessian-multiplicity"), "exponent of f in H(f) and degree of the residual factor", json!({"e": e, "residual_degree": residual}))
            .probabilistic(),
        |env| {
            let m = factor_multiplicity(f, Target::HessianOf(f), &mut env.rng)?;
            let certainty = if m.exact == Some(true) { Certainty::Proved } else { Certainty::Probabilistic };
            Ok(Checked {
                computed: json!({"e": m.e, "residual_degree": m.residual_degree, "lines": m.line_values.len(), "line_error_log2": m.line_error_log2}),
                ok: Some(m.e == e && m.residual_degree == residual && m.exact != Some(false)),
                certainty,
            })
        },
    );
}

fn expected_multiplicity_fact(run: &mut Runner, id: &str, n: usize, dual_dim: usize, e: usize) {
    run.fact(
        Fact::reference(&format!("{id}/expected-multiplicity"), "n - 1 - dim of the dual variety, with the recorded dual dimension", json!(e)),
        |_| exact(json!(expected_multiplicity(n, dual_dim)?)),
    );
}

fn verdict_json(f: &QPoly, opts: &VerdictOptions, seed: u64) -> Result<(Value, Status, Certainty)> {
    let v = homaloidal_verdict(f, opts, seed)?;
    let last = v.evidence.last().map(|e| e.certainty).unwrap_or(Certainty::Proved);
    let criteria: Vec<&str> = v.evidence.iter().map(|e| e.criterion.as_str()).collect();
    Ok((json!({"status": v.status, "criteria": criteria}), v.status, last))
}

fn verdict_fact(run: &mut Runner, fact: Fact, f: &QPoly, tweak: impl FnOnce(&mut VerdictOptions)) {
    let want = fact.expected.clone();
    run.fact(fact, |env| {
        let mut opts = VerdictOptions { budget: env.budget.clone(), ..VerdictOptions::default() };
        tweak(&mut opts);
        let (computed, status, certainty) = verdict_json(f, &opts, env.seed)?;
        let ok = json!(status) == want;
        Ok(Checked { computed, ok: Some(ok), certainty })
    });
}

fn linear_rank_fact(run: &mut Runner, id: &str, grad: &[QPoly], rank: usize) {
    run.fact(Fact::reference(&format!("{id}/linear-rank"), "rank of the linear part of the syzygy matrix", json!(rank)).probabilistic(), |env| {
        let lr = linear_rank(grad, &mut env.rng, &env.budget)?;
        let c = lr.certificate;
        Ok(Checked {
            computed: json!(c.rank),
            ok: None,
            certainty: if c.exact { Certainty::Proved } else { Certainty::Probabilistic },
        })
    });
}

fn linear_type_fact(run: &mut Runner, fact: Fact, grad: &[QPoly]) {
    run.fact(fact, |env| {
        let r = linear_type_check(grad, false, &env.budget);
        match r.status {
            LinearType::Timeout { reason } => Err(AlgebraError::Timeout(reason)),
            LinearType::LinearType => exact(json!("linear-type")),
            LinearType::NotLinearType { witness } => exact(json!({ "not-linear-type": witness })),
        }
    });
}

/// Random-point test of lhs = c·rhs mod p, with c fixed at the first point
/// where rhs is nonzero.
fn proportional_mod(
    nvars: usize,
    p: u64,
    points: usize,
    rng: &mut dyn RngCore,
    mut lhs: impl FnMut(&[u64]) -> Result<u64>,
    mut rhs: impl FnMut(&[u64]) -> Result<u64>,
) -> Result<Option<u64>> {
    let mut c = None;
    let mut tried = 0;
    while c.is_none() {
        tried += 1;
        if tried > 50 {
            return Ok(None);
        }
        let pt: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..p)).collect();
        let r = rhs(&pt)?;
        if r != 0 {
            c = Some(mulmod(lhs(&pt)?, crate::polyring::coeff::invmod(r, p).unwrap(), p));
        }
    }
    let c = c.unwrap();
    if c == 0 {
        return Ok(None);
    }
    for _ in 0..points {
        let pt: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..p)).collect();
        if lhs(&pt)? != mulmod(c, rhs(&pt)?, p) {
            return Ok(None);
        }
    }
    Ok(Some(c))
}

fn vars(ring: &Ring<Rationals>, idx: &[usize]) -> Vec<QPoly> {
    idx.iter().map(|&i| ring.var(i)).collect()
}

fn hankel3(run: &mut Runner) -> Result<()> {
    let h = PolyMatrix::hankel(Rationals, 3)?;
    let ring = h.ring().clone();
    let f = h.determinant()?;
    let grad = f.gradient();
    let j = run.ideal(&ring, grad.clone());
    let p = run.ideal(&ring, h.minors(2)?);

    run.fact(Fact::derived("hankel-3/determinant", "cofactor expansion and fraction-free elimination agree; number of terms", json!(5)), |_| {
        let a = h.det_cofactor();
        let b = h.det_bareiss()?;
        exact_if(json!(a.len()), a == b && a.len() == 5)
    });
    run.fact(Fact::reference("hankel-3/prime-P", "multiplicity and codimension of R/P, P the 2-minors", json!({"e": 4, "codim": 3})), |env| {
        let hd = p.hilbert_data(&env.budget)?;
        exact(json!({"e": hd.multiplicity, "codim": hd.codimension}))
    });
    run.fact(
        Fact::reference(
            "hankel-3/initial-terms",
            "reverse-lex leading monomials of f0, f2, f4 and the size of the f2 coefficient",
            json!({"monomials": ["x3^2", "x2^2", "x1^2"], "f2_coefficient": "3"}),
        ),
        |_| {
            let mons: Vec<String> = [0, 2, 4].iter().map(|&i| leading_monomial(&grad[i])).collect();
            let c = grad[2].leading().map(|(_, c)| c.abs().to_string()).unwrap_or_default();
            exact(json!({"monomials": mons, "f2_coefficient": c}))
        },
    );
    run.fact(Fact::reference("hankel-3/initial-length", "length of S/J'' for the ideal of leading monomials of the partials", json!(5)), |env| {
        let lead: Vec<QPoly> = grad.iter().map(|g| {
            let (m, _) = g.leading().unwrap();
            ring.monomial(*m, Q::one())
        }).collect();
        let in_vars = lead.iter().all(|g| g.support_vars().iter().all(|&v| (1..=3).contains(&v)));
        let hd = Ideal::new(&ring, lead).hilbert_data(&env.budget)?;
        exact_if(json!(hd.multiplicity), in_vars && hd.multiplicity == 5)
    });
    run.fact(Fact::reference("hankel-3/radical", "every 2-minor lies in the radical of J, and J lies in P", json!({"certified": 6, "j_in_p": true})), |env| {
        let r = integrality_check(3, &env.budget)?;
        if r.pass.is_none() {
            return Err(AlgebraError::Timeout("radical membership undecided".into()));
        }
        let certified = r.brackets_in_radical.iter().filter(|(_, v)| *v == Some(true)).count();
        exact(json!({"certified": certified, "j_in_p": r.j_in_p}))
    });
    run.fact(Fact::reference("hankel-3/colon-by-P", "J : P is the irrelevant ideal", json!("equal")), |env| {
        reduction_json(reduction_conjecture_check(3, 0, &env.budget)?)
    });
    run.fact(Fact::reference("hankel-3/reduction-number", "JP : P^2 is the unit ideal", json!("equal")), |env| {
        reduction_json(reduction_conjecture_check(3, 1, &env.budget)?)
    });
    run.fact(Fact::reference("hankel-3/saturation", "saturation of J by the irrelevant ideal equals P", json!(true)), |env| {
        let (sat, _) = j.saturation(&Ideal::maximal(&ring), &env.budget)?;
        exact(json!(sat.equals(&p, &env.budget)?))
    });
    run.fact(Fact::reference("hankel-3/multiplicity-J", "e(R/J) = e(R/P)", json!(4)), |env| exact(json!(j.hilbert_data(&env.budget)?.multiplicity)));
    run.fact(
        Fact::reference(
            "hankel-3/linear-syzygies",
            "the recorded 5 x 3 linear matrix consists of syzygies, spans all linear syzygies and has rank 3",
            json!({"rank": 3, "columns_are_syzygies": true, "span_all_linear": true}),
        ),
        |env| {
            let x = |i: usize, c: i64| ring.var(i).scale(&Q::int(c));
            let z = ring.zero();
            let rows = [vec![z.clone(), x(0, -2), x(1, 4)],
                vec![x(0, 1), x(1, -1), x(2, 3)],
                vec![x(1, 2), z.clone(), x(3, 2)],
                vec![x(2, 3), x(3, 1), x(4, 1)],
                vec![x(3, 4), x(4, 2), z.clone()]];
            let cols: Vec<Vec<QPoly>> = (0..3).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect();
            let syz = cols.iter().all(|c| is_syzygy(c, &grad));
            let lr = linear_rank(&grad, &mut env.rng, &env.budget)?;
            let span = same_k_span(&cols, &lr.syzygies.columns);
            exact(json!({"rank": lr.certificate.rank, "columns_are_syzygies": syz, "span_all_linear": span}))
        },
    );
    run.fact(Fact::reference("hankel-3/fitting", "the presentation of J satisfies the Fitting height condition", json!(true)), |env| {
        let r = fitting_condition_f1(&grad, &env.budget)?;
        match r.pass {
            None => Err(AlgebraError::Timeout("Fitting heights undecided".into())),
            Some(v) => exact(json!(v)),
        }
    });
    linear_type_fact(run, Fact::reference("hankel-3/linear-type", "J is of linear type", json!("linear-type")), &grad);
    multiplicity_fact(run, "hankel-3", &f, 1, 2);
    expected_multiplicity_fact(run, "hankel-3", 4, 2, 1);
    verdict_fact(run, Fact::reference("hankel-3/verdict", "polar map verdict", json!(Status::NotHomaloidal)), &f, |_| {});
    Ok(())
}

fn reduction_json(o: ReductionOutcome) -> Result<Checked> {
    match o {
        ReductionOutcome::Equal => exact(json!("equal")),
        ReductionOutcome::NotEqual { witness } => exact(json!({ "not-equal": witness })),
        ReductionOutcome::Timeout { reason } => Err(AlgebraError::Timeout(reason)),
    }
}

fn hankel4(run: &mut Runner) -> Result<()> {
    let h = PolyMatrix::hankel(Rationals, 4)?;
    let ring = h.ring().clone();
    let f = h.determinant()?;
    let p = run.ideal(&ring, h.minors(3)?);
    run.fact(Fact::reference("hankel-4/prime-P", "e(R/P) for P the 3-minors: (m-1)m(m+1)/6", json!(10)), |env| {
        exact(json!(p.hilbert_data(&env.budget)?.multiplicity))
    });
    multiplicity_fact(run, "hankel-4", &f, 2, 6);
    expected_multiplicity_fact(run, "hankel-4", 6, 3, 2);
    run.fact(Fact::reference("hankel-4/radical", "every 3-minor lies in the radical of J", json!({"certified": 10, "j_in_p": true})), |env| {
        let r = integrality_check(4, &env.budget)?;
        if r.pass.is_none() {
            return Err(AlgebraError::Timeout("radical membership undecided".into()));
        }
        let certified = r.brackets_in_radical.iter().filter(|(_, v)| *v == Some(true)).count();
        exact(json!({"certified": certified, "j_in_p": r.j_in_p}))
    });
    run.fact(
        Fact::reference("hankel-4/reduction-0", "J : P equals the ideal of 2-minors (conjectural)", json!("equal")).report_only(),
        |env| reduction_json(reduction_conjecture_check(4, 0, &env.budget)?),
    );
    Ok(())
}

fn cat32(run: &mut Runner) -> Result<()> {
    let c = PolyMatrix::catalecticant(Rationals, 3, 2)?;
    let ring = c.ring().clone();
    let f = c.determinant()?;
    let grad = f.gradient();
    let j = run.ideal(&ring, grad.clone());
    let i = run.ideal(&ring, c.minors(2)?);
    run.fact(Fact::reference("cat-3-2/hessian-point", "det H(f) at (0,0,1,0,0,1,1)", json!("8")), |_| {
        let pt: Vec<Q> = [0, 0, 1, 0, 0, 1, 1].iter().map(|&v| Q::int(v)).collect();
        exact(json!(hessian_det_at(&f, &pt)?.to_string()))
    });
    run.fact(Fact::reference("cat-3-2/gp-decomposition", "I_2(C) = I_2(GP) ∩ (x0, x2, x4, x6)", json!(true)), |env| {
        let gp = PolyMatrix::gp_associated(Rationals, 3, 2)?;
        let q = Ideal::new(&ring, vars(&ring, &[0, 2, 4, 6]));
        let inter = gp.minors_ideal(2)?.intersect(&q, &env.budget)?;
        exact(json!(inter.equals(&i, &env.budget)?))
    });
    run.fact(Fact::reference("cat-3-2/embedded-prime", "J : I_2(C) = (x0, x2, x4, x6, x1 x5 - x3^2)", json!(true)), |env| {
        let mut g = vars(&ring, &[0, 2, 4, 6]);
        g.push(ring.parse("x1*x5 - x3^2")?);
        let target = Ideal::new(&ring, g);
        exact(json!(j.colon(&i, &env.budget)?.equals(&target, &env.budget)?))
    });
    run.fact(Fact::reference("cat-3-2/multiplicity-J", "e(R/J)", json!(6)), |env| exact(json!(j.hilbert_data(&env.budget)?.multiplicity)));
    linear_rank_fact(run, "cat-3-2", &grad, 6);
    verdict_fact(run, Fact::reference("cat-3-2/verdict", "polar map verdict", json!(Status::Homaloidal)), &f, |_| {});
    linear_type_fact(run, Fact::reference("cat-3-2/linear-type", "J is of linear type", json!("linear-type")), &grad);
    multiplicity_fact(run, "cat-3-2", &f, 1, 4);
    expected_multiplicity_fact(run, "cat-3-2", 6, 4, 1);
    Ok(())
}

fn rees_data(grad: &[QPoly], env: &mut Env) -> Result<(usize, usize)> {
    let k11 = rees_component(grad, 1, 1, &mut env.rng, &env.budget)?;
    let k02 = rees_component(grad, 0, 2, &mut env.rng, &env.budget)?;
    let k12 = rees_component(grad, 1, 2, &mut env.rng, &env.budget)?;
    let minimal = minimal_rees_12(grad, &k11, &k02, &k12)?;
    let rank = jacobian_dual_rank_mod(&[&k11, &k12], &mut env.rng)?;
    Ok((minimal, rank))
}

fn cat43(run: &mut Runner) -> Result<()> {
    let c = PolyMatrix::catalecticant(Rationals, 4, 3)?;
    let ring = c.ring().clone();
    let f = c.determinant()?;
    let grad = f.gradient();
    multiplicity_fact(run, "cat-4-3", &f, 5, 6);
    expected_multiplicity_fact(run, "cat-4-3", 12, 6, 5);
    run.fact(
        Fact::reference("cat-4-3/hessian-residual", "H(f) = c·f^5·(det H3)^2, H3 the Hankel matrix on x0, x3, x6, x9, x12", json!(true)).probabilistic(),
        |env| {
            let h3 = PolyMatrix::new(&ring, 3, 3, [0, 3, 6, 3, 6, 9, 6, 9, 12].iter().map(|&k| ring.var(k)).collect(), Provenance::Custom)?
                .determinant()?;
            let hm = hessian(&f)?;
            let p = identity_prime();
            let points = 20;
            let c = proportional_mod(
                ring.nvars(),
                p,
                points,
                &mut env.rng,
                |pt| det_mod(&hm, p, pt),
                |pt| Ok(mulmod(powmod(f.eval_mod(p, pt)?, 5, p), powmod(h3.eval_mod(p, pt)?, 2, p), p)),
            )?;
            let bound = points as f64 * (26.0 / p as f64).log2();
            probable_if(json!({"holds": c.is_some(), "points": points, "error_bound_log2": bound}), c.is_some())
        },
    );
    run.fact(Fact::reference("cat-4-3/partials-as-minors", "partials that are 3-minors up to sign; those from columns {1,2,4} or {1,3,4}", json!({"all": 10, "two_submatrices": 8})), |_| {
        let minors_of = |cols: &[usize]| -> Vec<QPoly> {
            let mut out = Vec::new();
            for rows in crate::structmat::combinations(4, 3) {
                for cs in crate::structmat::combinations(cols.len(), 3) {
                    let cc: Vec<usize> = cs.iter().map(|&k| cols[k]).collect();
                    out.push(c.minor(&rows, &cc));
                }
            }
            out
        };
        let all = minors_of(&[0, 1, 2, 3]);
        let sub: Vec<QPoly> = [vec![0, 1, 3], vec![0, 2, 3]].iter().flat_map(|c| minors_of(c)).collect();
        let hits = |set: &[QPoly]| grad.iter().filter(|g| set.iter().any(|m| *m == **g || *m == -*g)).count();
        exact(json!({"all": hits(&all), "two_submatrices": hits(&sub)}))
    });
    linear_rank_fact(run, "cat-4-3", &grad, 11);
    run.fact(
        Fact::reference("cat-4-3/rees-data", "minimal bidegree (1,2) Rees generators and Jacobian dual rank", json!({"minimal_12": 4, "jacobian_dual_rank": 12}))
            .probabilistic(),
        |env| {
            let (minimal, rank) = rees_data(&grad, env)?;
            probable(json!({"minimal_12": minimal, "jacobian_dual_rank": rank}))
        },
    );
    verdict_fact(run, Fact::reference("cat-4-3/verdict", "polar map verdict", json!(Status::Homaloidal)).probabilistic(), &f, |o| {
        o.linear_type = false;
        o.saturation_obstruction = false;
    });
    run.fact(Fact::reference("cat-4-3/colon", "I_3(C) = J : I_3 of the 3 x 7 associated matrix", json!("equal")).long(), |env| {
        let j = Ideal::new(&ring, grad.clone());
        let i = c.minors_ideal(3)?;
        let p = PolyMatrix::gp_associated(Rationals, 4, 3)?.minors_ideal(3)?;
        let colon = j.colon(&p, &env.budget)?;
        exact(json!(if colon.equals(&i, &env.budget)? { "equal" } else { "not-equal" }))
    });
    Ok(())
}

fn cat42(run: &mut Runner) -> Result<()> {
    let c = PolyMatrix::catalecticant(Rationals, 4, 2)?;
    let f = c.determinant()?;
    let grad = f.gradient();
    multiplicity_fact(run, "cat-4-2", &f, 2, 12);
    expected_multiplicity_fact(run, "cat-4-2", 9, 6, 2);
    linear_rank_fact(run, "cat-4-2", &grad, 6);
    run.fact(
        Fact::reference("cat-4-2/rees-data", "minimal bidegree (1,2) Rees generators; Jacobian dual rank from bidegrees (1,1), (1,2)", json!({"minimal_12": 2, "jacobian_dual_rank": 8}))
            .probabilistic(),
        |env| {
            let (minimal, rank) = rees_data(&grad, env)?;
            probable(json!({"minimal_12": minimal, "jacobian_dual_rank": rank}))
        },
    );
    run.fact(
        Fact::reference("cat-4-2/verdict", "polar map verdict; suspected not homaloidal, never promoted to a proof", json!("not-proved-homaloidal"))
            .long()
            .report_only(),
        |env| {
            let opts = VerdictOptions { budget: env.budget.clone(), ..VerdictOptions::default() };
            let (computed, status, certainty) = verdict_json(&f, &opts, env.seed)?;
            Ok(Checked { computed, ok: Some(status != Status::Homaloidal), certainty })
        },
    );
    Ok(())
}

fn generic3(run: &mut Runner) -> Result<()> {
    let g = PolyMatrix::generic(Rationals, 3)?;
    let f = g.determinant()?;
    let grad = f.gradient();
    run.fact(Fact::reference("generic-3/inversion", "the polar map is its own inverse up to the factor D = f", json!(true)), |_| match inversion_check(&grad, &grad)? {
        Inversion::IsInverse { factor } => exact_if(json!({"factor": factor.to_text()}), factor == f),
        Inversion::NotInverse { coordinate } => exact_if(json!({ "fails_at": coordinate }), false),
    });
    run.fact(Fact::trivial("generic-3/adjugate", "M·adj(M) = det(M)·Id", json!(true)), |_| {
        let prod = g.mul(&g.adjugate()?)?;
        let ok = (0..3).all(|i| (0..3).all(|k| *prod.get(i, k) == if i == k { f.clone() } else { f.ring().zero() }));
        exact(json!(ok))
    });
    run.fact(Fact::reference("generic-3/cauchy", "det(adj M) = det(M)^2", json!(true)), |_| {
        exact(json!(g.adjugate()?.determinant()? == f.pow(2)?))
    });
    totally_hessian_fact(run, "generic-3", &f, 3);
    Ok(())
}

fn totally_hessian_fact(run: &mut Runner, id: &str, f: &QPoly, k: u32) {
    run.fact(
        Fact::reference(&format!("{id}/totally-hessian"), "H(f) = c·f^k at 20 random points", json!({ "exponent": k })).probabilistic(),
        |env| match totally_hessian_check(f, &mut env.rng)? {
            TotallyHessian::Holds { exponent, points, error_bound_log2, c } => {
                Ok(Checked { computed: json!({"exponent": exponent, "c": c, "points": points, "error_bound_log2": error_bound_log2}), ok: Some(exponent == k), certainty: Certainty::Probabilistic })
            }
            TotallyHessian::Fails { reason } => probable_if(json!({ "fails": reason }), false),
        },
    );
}

fn symmetric3(run: &mut Runner) -> Result<()> {
    let s = PolyMatrix::symmetric(Rationals, 3)?;
    let ring = s.ring().clone();
    let f = s.determinant()?;
    let grad = f.gradient();
    run.fact(Fact::reference("symmetric-3/partials", "off-diagonal partials are twice the cofactor, diagonal ones equal it", json!(true)), |_| {
        let mut ok = true;
        for k in 0..ring.nvars() {
            let xk = ring.var(k);
            let (i, j) = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).find(|&(i, j)| *s.get(i, j) == xk && i <= j).unwrap();
            let cof = s.signed_cofactor(i, j);
            let want = if i == j { cof } else { cof.scale(&Q::int(2)) };
            ok &= grad[k] == want;
        }
        exact(json!(ok))
    });
    totally_hessian_fact(run, "symmetric-3", &f, 2);
    verdict_fact(run, Fact::reference("symmetric-3/verdict", "polar map verdict", json!(Status::Homaloidal)), &f, |_| {});
    Ok(())
}

fn subhankel_scenario(run: &mut Runner, n: usize) -> Result<()> {
    let id = format!("subhankel-{n}");
    let a = |s: &str| format!("{id}/{s}");
    run.fact(Fact::reference(&a("recurrences"), "basic and perfect linear relations among the partials", json!(true)), |_| {
        exact(json!(subhankel::recurrence_check(n)?.pass))
    });
    run.fact(Fact::reference(&a("gcd-powers"), "x_n^(n-i-1) divides f_0..f_i and the quotients have height >= 2", json!(true)), |env| {
        let mut ok = true;
        for i in 0..n {
            ok &= subhankel::gcd_power_check(n, i, &env.budget)?.pass;
        }
        exact(json!(ok))
    });
    run.fact(Fact::reference(&a("hilbert-burch"), "recursive linear Hilbert-Burch matrices present each J_i", json!(true)), |env| {
        match subhankel::hilbert_burch_check(n, &env.budget)?.pass {
            None => Err(AlgebraError::Timeout("ideal comparison undecided".into())),
            Some(v) => exact(json!(v)),
        }
    });
    run.fact(
        Fact::reference(&a("filtration-multiplicities"), "e(R/J_i) = C(i+1, 2), the top quotient length and J_(n-1) : x_n = J_(n-2)", json!(true)),
        |env| {
            let r = subhankel::multiplicity_filtration_check(n, &env.budget)?;
            exact_if(json!({"filtration": r.filtration, "quotient_length": r.quotient_length, "colon_by_xn": r.colon_by_xn}), r.pass)
        },
    );
    if n <= 5 {
        run.fact(Fact::reference(&a("colon"), "(J_(n-1) : f_n) = (x_n, x_(n-1)^(n-1)) = (x_n, J_(n-1))", json!(true)), |env| {
            exact(json!(subhankel::colon_claim_check(n, &env.budget)?.pass))
        });
        let numerator = subhankel::expected_numerator(n);
        let e = (n - 1) * (n - 2) / 2;
        run.fact(
            Fact::reference(
                &a("resolution"),
                "graded Betti numbers, Hilbert numerator, multiplicity, radical, embedded prime and primary component of J",
                json!({"betti": true, "numerator": numerator, "multiplicity": e, "radical": true, "embedded_prime": true, "tail_radical": true, "primary_component": true}),
            ),
            |env| {
                let r = subhankel::resolution_and_ass_check(n, &env.budget)?;
                exact(json!({
                    "betti": r.betti_expected,
                    "numerator": r.numerator,
                    "multiplicity": r.multiplicity.0,
                    "radical": r.radical_is_p,
                    "embedded_prime": r.embedded_witness.is_some(),
                    "tail_radical": r.tail_radical,
                    "primary_component": r.primary_component,
                }))
            },
        );
    }
    if n <= 4 {
        run.fact(
            Fact::reference(&a("linear-type"), "J is of linear type; recorded 1-forms span the linear syzygies; shape of the remaining generator", json!({"status": "linear-type", "forms": true, "last_generator": true})),
            |env| {
                let r = subhankel::subhankel_linear_type_check(n, &env.budget)?;
                let status = match r.status {
                    LinearType::Timeout { reason } => return Err(AlgebraError::Timeout(reason)),
                    LinearType::LinearType => json!("linear-type"),
                    LinearType::NotLinearType { witness } => json!({ "not-linear-type": witness }),
                };
                exact(json!({"status": status, "forms": r.linear_forms_match, "last_generator": r.last_generator_shape}))
            },
        );
    }
    let f = subhankel::subhankel_case(n)?.f;
    let fact = Fact::reference(&a("verdict"), "polar map verdict", json!(Status::Homaloidal));
    verdict_fact(run, fact, &f, |_| {});
    Ok(())
}

/// Dimension of the space of linear forms vanishing on `forms` when each
/// coordinate is replaced by the corresponding product.
fn relation_count(products: &[QPoly]) -> usize {
    let mut index = std::collections::HashMap::<Monomial, usize>::new();
    for p in products {
        for (m, _) in p.terms() {
            let k = index.len();
            index.entry(*m).or_insert(k);
        }
    }
    let rows: Vec<Vec<Q>> = products
        .iter()
        .map(|p| {
            let mut row = vec![Q::zero(); index.len()];
            for (m, c) in p.terms() {
                row[index[m]] = c.clone();
            }
            row
        })
        .collect();
    products.len() - DenseMatrix::from_rows(Rationals, rows).rank()
}

fn dg3(run: &mut Runner) -> Result<()> {
    let d = PolyMatrix::degenerate_generic(Rationals, 3)?;
    let f = d.determinant()?;
    let grad = f.gradient();
    run.fact(
        Fact::reference("dg-3/hessian", "Hessian determinant vanishes (8 x 8 symbolic, else 50 zero points over two primes)", json!("zero")),
        |env| {
            let opts = HessianOptions { trials: 25, symbolic_limit: 8, exact_points: 6 };
            match hessian_det_status(&f, &opts, &mut env.rng, &env.budget)? {
                HessianDetStatus::ZeroCertificate => exact(json!("zero")),
                HessianDetStatus::ProbablyZero { trials, error_bound_log2, .. } => {
                    probable_if(json!({"status": "zero", "trials": trials, "error_bound_log2": error_bound_log2}), trials >= 50)
                }
                other => exact_if(json!(other), false),
            }
        },
    );
    run.fact(
        Fact::reference("dg-3/image-relations", "no linear relation among the partials, and a nonzero quadratic one", json!({"linear": 0, "quadratic_nonzero": true})),
        |_| {
            let lin = relation_count(&grad);
            let mut prods = Vec::new();
            for i in 0..grad.len() {
                for j in i..grad.len() {
                    prods.push(&grad[i] * &grad[j]);
                }
            }
            let quad = relation_count(&prods);
            exact(json!({"linear": lin, "quadratic_nonzero": quad > 0}))
        },
    );
    Ok(())
}

fn sc3(run: &mut Runner) -> Result<()> {
    let m = PolyMatrix::sc3(Rationals)?;
    let ring = m.ring().clone();
    let f = m.determinant()?;
    let grad = f.gradient();
    run.fact(Fact::reference("sc-3/linear-syzygies", "basis size and rank of the linear syzygies", json!({"columns": 7, "rank": 5})).probabilistic(), |env| {
        let cols = linear_syzygies(&grad)?.ncols();
        let lr = linear_rank(&grad, &mut env.rng, &env.budget)?;
        let c = if lr.certificate.exact { Certainty::Proved } else { Certainty::Probabilistic };
        Ok(Checked { computed: json!({"columns": cols, "rank": lr.certificate.rank}), ok: None, certainty: c })
    });
    run.fact(Fact::reference("sc-3/hessian", "H(f) is a constant times a pure power of x4", json!(true)).probabilistic(), |env| {
        let hm = hessian(&f)?;
        let p = env.prime;
        let k = (ring.nvars() as u64) * (f.degree().unwrap_or(2) as u64 - 2);
        let c = proportional_mod(ring.nvars(), p, 20, &mut env.rng, |pt| det_mod(&hm, p, pt), |pt| Ok(powmod(pt[4], k, p)))?;
        probable_if(json!(c.is_some()), c.is_some())
    });
    verdict_fact(run, Fact::reference("sc-3/verdict", "polar map verdict", json!(Status::Homaloidal)), &f, |_| {});
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_complete() {
        let list = list_scenarios().unwrap();
        let ids: Vec<&str> = list.iter().map(|s| s.id.as_str()).collect();
        for id in ["hankel-3", "hankel-4", "cat-3-2", "cat-4-3", "cat-4-2", "generic-3", "symmetric-3", "subhankel-3", "subhankel-6", "dg-3", "sc-3"] {
            assert!(ids.contains(&id), "{id}");
        }
        assert!(list.len() >= 11);
        assert!(list.iter().all(|s| !s.facts.is_empty() && s.facts.iter().all(|f| f.anchor.starts_with(&s.id))));
    }

    #[test]
    fn unknown_scenario() {
        assert!(run_scenario("nope", &RunConfig::default()).is_err());
    }

    #[test]
    fn fact_seeds_are_stable() {
        assert_eq!(fact_seed(1, "a"), fact_seed(1, "a"));
        assert_ne!(fact_seed(1, "a"), fact_seed(2, "a"));
    }

    #[test]
    fn verdict_rules() {
        let r = |m, req, cert| FactResult {
            anchor: String::new(),
            description: String::new(),
            source: Source::Trivial,
            required: req,
            expected: Value::Null,
            computed: Value::Null,
            matched: m,
            certainty: cert,
            millis: None,
        };
        assert_eq!(verdict_of(&[r(Match::Yes, Required::Exact, None)]), ScenarioVerdict::Pass);
        assert_eq!(verdict_of(&[r(Match::Timeout, Required::ReportOnly, None)]), ScenarioVerdict::Pass);
        assert_eq!(verdict_of(&[r(Match::Timeout, Required::Exact, None)]), ScenarioVerdict::Incomplete);
        assert_eq!(verdict_of(&[r(Match::No, Required::ReportOnly, Some(Certainty::Probabilistic))]), ScenarioVerdict::Pass);
        assert_eq!(verdict_of(&[r(Match::No, Required::ReportOnly, Some(Certainty::Proved))]), ScenarioVerdict::Contradiction);
        assert_eq!(verdict_of(&[r(Match::No, Required::Exact, None)]), ScenarioVerdict::Contradiction);
    }

    #[test]
    fn generic_three_runs() {
        let cfg = RunConfig { timings: false, ..RunConfig::default() };
        let a = run_scenario("generic-3", &cfg).unwrap();
        assert_eq!(a.verdict, ScenarioVerdict::Pass, "{:#?}", a.facts);
        let b = run_scenario("generic-3", &cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
