//! Polar maps of forms: gradients, Hessians, the multiplicity of f in its
//! Hessian, inversion factors, linear type and homaloidal verdicts.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use rand::{Rng, RngCore};
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::groebner::{compute_gb, rees_ideal, xy_ring, Ideal};
use crate::linalg::DenseMatrix;
use crate::polyring::coeff::powmod;
use crate::polyring::{
    identity_prime, Field, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, QPoly, Rationals, UniPoly, DEFAULT_PRIME, Q,
};
use crate::structmat::{hessian_matrix, PolyMatrix, GENERAL_DET_LIMIT};
use crate::syzygy::{first_syzygy_module, linear_rank, monomials_of_degree, RankCertificate};

/// A form together with its partials and Hessian.
#[derive(Clone, Debug)]
pub struct PolarMapData<F: Field> {
    pub f: Polynomial<F>,
    pub partials: Vec<Polynomial<F>>,
    pub hessian: PolyMatrix<F>,
    /// Dimension of the ambient projective space.
    pub n: usize,
    pub d: u32,
}

impl<F: Field> PolarMapData<F> {
    pub fn new(f: &Polynomial<F>) -> Result<Self> {
        let d = check_form(f)?;
        Ok(PolarMapData {
            f: f.clone(),
            partials: f.gradient(),
            hessian: hessian_matrix(f)?,
            n: f.ring().nvars() - 1,
            d,
        })
    }

    /// Σ x_i ∂f/∂x_i = d·f.
    pub fn euler_holds(&self) -> bool {
        let ring = self.f.ring();
        let mut acc = ring.zero();
        for (i, p) in self.partials.iter().enumerate() {
            acc = &acc + &(&ring.var(i) * p);
        }
        acc == self.f.scale(&self.f.field().from_q(&Q::int(self.d as i64)).unwrap())
    }
}

fn check_form<F: Field>(f: &Polynomial<F>) -> Result<u32> {
    if !f.is_homogeneous() {
        return Err(AlgebraError::Invalid("form must be homogeneous".into()));
    }
    match f.degree() {
        Some(d) if d >= 2 => Ok(d),
        _ => Err(AlgebraError::Invalid("form must have degree at least 2".into())),
    }
}

/// Gradient ideal with a record of the partials that vanish identically.
#[derive(Clone, Debug)]
pub struct GradientIdeal<F: Field> {
    pub partials: Vec<Polynomial<F>>,
    pub zero_partials: Vec<usize>,
    pub ideal: Ideal<F>,
}

pub fn gradient_ideal<F: Field>(f: &Polynomial<F>) -> Result<GradientIdeal<F>> {
    check_form(f)?;
    let partials = f.gradient();
    let zero_partials = partials.iter().enumerate().filter(|(_, p)| p.is_zero()).map(|(i, _)| i).collect();
    let ideal = Ideal::new(f.ring(), partials.clone());
    Ok(GradientIdeal { partials, zero_partials, ideal })
}

pub fn hessian<F: Field>(f: &Polynomial<F>) -> Result<PolyMatrix<F>> {
    hessian_matrix(f)
}

/// Determinant of a polynomial matrix evaluated mod p.
pub fn det_mod(m: &PolyMatrix<Rationals>, p: u64, point: &[u64]) -> Result<u64> {
    let field = PrimeField::new(p)?;
    let vals = (0..m.rows())
        .map(|i| m.row(i).iter().map(|e| e.eval_mod(p, point)).collect::<Result<Vec<u64>>>())
        .collect::<Result<Vec<_>>>()?;
    DenseMatrix::from_rows(field, vals).det().ok_or(AlgebraError::NotSquare(m.rows(), m.cols()))
}

/// Exact determinant of a polynomial matrix at a rational point.
pub fn det_at(m: &PolyMatrix<Rationals>, point: &[Q]) -> Result<Q> {
    let vals = m.evaluate(point)?;
    DenseMatrix::from_rows(Rationals, vals).det().ok_or(AlgebraError::NotSquare(m.rows(), m.cols()))
}

/// The Hessian determinant of f at a rational point.
pub fn hessian_det_at(f: &QPoly, point: &[Q]) -> Result<Q> {
    det_at(&hessian_matrix(f)?, point)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HessianDetStatus {
    /// det H(f) is nonzero at `point`; `modulus` is set when the value was
    /// computed mod a prime (still a proof over Q for an integer point).
    NonzeroCertificate { point: Vec<i64>, modulus: Option<u64>, value: String },
    ProbablyZero { trials: usize, primes: Vec<u64>, error_bound_log2: f64 },
    ZeroCertificate,
}

impl HessianDetStatus {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, HessianDetStatus::NonzeroCertificate { .. })
    }
}

#[derive(Clone, Debug)]
pub struct HessianOptions {
    /// Zero evaluations required per prime before reporting ProbablyZero.
    pub trials: usize,
    /// Largest Hessian size attempted symbolically.
    pub symbolic_limit: usize,
    /// Small-integer points tried with exact arithmetic first.
    pub exact_points: usize,
}

impl Default for HessianOptions {
    fn default() -> Self {
        HessianOptions { trials: 25, symbolic_limit: GENERAL_DET_LIMIT, exact_points: 6 }
    }
}

pub fn hessian_det_status(f: &QPoly, opts: &HessianOptions, rng: &mut dyn RngCore, budget: &Budget) -> Result<HessianDetStatus> {
    let h = hessian_matrix(f)?;
    let n = f.ring().nvars();
    for _ in 0..opts.exact_points {
        let pt: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let q: Vec<Q> = pt.iter().map(|&v| Q::int(v)).collect();
        let v = det_at(&h, &q)?;
        if !v.is_zero() {
            return Ok(HessianDetStatus::NonzeroCertificate { point: pt, modulus: None, value: v.to_string() });
        }
    }
    let primes = vec![identity_prime(), DEFAULT_PRIME];
    for &p in &primes {
        for _ in 0..opts.trials {
            budget.check_time()?;
            let pt: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let v = det_mod(&h, p, &pt)?;
            if v != 0 {
                return Ok(HessianDetStatus::NonzeroCertificate {
                    point: pt.iter().map(|&x| x as i64).collect(),
                    modulus: Some(p),
                    value: v.to_string(),
                });
            }
        }
    }
    if n <= opts.symbolic_limit {
        let d = h.determinant_with_limit(opts.symbolic_limit)?;
        if d.is_zero() {
            return Ok(HessianDetStatus::ZeroCertificate);
        }
        return Err(AlgebraError::Invalid("symbolic Hessian determinant nonzero after zero evaluations".into()));
    }
    let deg = f.degree().unwrap_or(2).saturating_sub(2) as f64 * n as f64;
    let bound = opts.trials as f64 * (deg / DEFAULT_PRIME as f64).log2();
    Ok(HessianDetStatus::ProbablyZero { trials: opts.trials * primes.len(), primes, error_bound_log2: bound })
}

/// Black-box description of the polynomial whose f-adic valuation is wanted.
pub enum Target<'a> {
    Poly(&'a QPoly),
    /// det of the Hessian of f, evaluated numerically.
    HessianOf(&'a QPoly),
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Multiplicity {
    pub e: u32,
    pub deg_f: u32,
    pub deg_g: u32,
    /// deg g - e·deg f, checked to be the degree of a nonzero residual.
    pub residual_degree: u32,
    /// Multiplicity seen on each accepted line.
    pub line_values: Vec<u32>,
    pub lines_tried: usize,
    pub prime: u64,
    /// log2 of the chance that a single line over-reports the multiplicity.
    pub line_error_log2: f64,
    /// Some(true) when confirmed by exact multivariate division.
    pub exact: Option<bool>,
}

const GOOD_LINES: usize = 3;
const LINE_CAP: usize = 10;

/// Largest e with f^e | g, by restriction to random lines over a 60-bit prime.
pub fn factor_multiplicity(f: &QPoly, g: Target<'_>, rng: &mut dyn RngCore) -> Result<Multiplicity> {
    let deg_f = f.degree().filter(|&d| d > 0).ok_or_else(|| AlgebraError::Invalid("f must be nonconstant".into()))?;
    let p = identity_prime();
    let field = PrimeField::new(p)?;
    let n = f.ring().nvars();
    let (deg_g, hess) = match &g {
        Target::Poly(gp) => (gp.degree().ok_or_else(|| AlgebraError::Invalid("g must be nonzero".into()))?, None),
        Target::HessianOf(h) => {
            let d = check_form(h)?;
            ((d - 2) * n as u32, Some(hessian_matrix(h)?))
        }
    };
    let eval_g = |pt: &[u64]| -> Result<u64> {
        match (&g, &hess) {
            (Target::Poly(gp), _) => gp.eval_mod(p, pt),
            (_, Some(h)) => det_mod(h, p, pt),
            _ => unreachable!(),
        }
    };
    let restrict = |base: &[u64], dir: &[u64], deg: u32, ev: &dyn Fn(&[u64]) -> Result<u64>| -> Result<UniPoly<PrimeField>> {
        let mut ts = Vec::new();
        let mut ys = Vec::new();
        for t in 0..=deg as u64 {
            let pt: Vec<u64> = base.iter().zip(dir).map(|(&b, &v)| field.add(&b, &field.mul(&t, &v))).collect();
            ts.push(t);
            ys.push(ev(&pt)?);
        }
        Ok(UniPoly::interpolate(field, &ts, &ys))
    };
    let mut values = Vec::new();
    let mut tried = 0;
    while values.len() < GOOD_LINES && tried < LINE_CAP {
        tried += 1;
        let base: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let dir: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let fl = restrict(&base, &dir, deg_f, &|pt| f.eval_mod(p, pt))?;
        if fl.degree() != Some(deg_f as usize) || !fl.is_squarefree() {
            continue;
        }
        let gl = restrict(&base, &dir, deg_g, &eval_g)?;
        if gl.is_zero() {
            return Err(AlgebraError::Invalid("g vanishes identically".into()));
        }
        if gl.degree() != Some(deg_g as usize) {
            continue;
        }
        values.push(fl.multiplicity_in(&gl));
    }
    if values.len() < GOOD_LINES {
        return Err(AlgebraError::Invalid(format!("only {} usable lines out of {tried}", values.len())));
    }
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in &values {
        *counts.entry(v).or_default() += 1;
    }
    let e = counts.iter().max_by_key(|(v, c)| (**c, std::cmp::Reverse(**v))).map(|(v, _)| *v).unwrap();
    let exact = match &g {
        Target::Poly(gp) if gp.len() <= 5000 => Some(exact_multiplicity(f, gp)? == e),
        _ => None,
    };
    Ok(Multiplicity {
        e,
        deg_f,
        deg_g,
        residual_degree: deg_g - e * deg_f,
        line_values: values,
        lines_tried: tried,
        prime: p,
        line_error_log2: (2.0 * deg_f as f64 * deg_g as f64 + (deg_f * deg_f) as f64).log2() - (p as f64).log2(),
        exact,
    })
}

/// Largest e with f^e | g by repeated exact division.
pub fn exact_multiplicity(f: &QPoly, g: &QPoly) -> Result<u32> {
    let mut e = 0;
    let mut cur = g.clone();
    while let Some(q) = cur.exact_divide(f)? {
        cur = q;
        e += 1;
    }
    Ok(e)
}

/// n - 1 - dim of the dual variety.
pub fn expected_multiplicity(n: usize, dual_dim: usize) -> Result<usize> {
    if n == 0 || dual_dim > n - 1 {
        return Err(AlgebraError::Invalid(format!("dual dimension {dual_dim} out of range for n = {n}")));
    }
    Ok(n - 1 - dual_dim)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum TotallyHessian {
    Holds { c: String, exponent: u32, points: usize, error_bound_log2: f64 },
    Fails { reason: String },
}

/// Tests H(f) = c·f^k with k = (d-2)(n+1)/d.
pub fn totally_hessian_check(f: &QPoly, rng: &mut dyn RngCore) -> Result<TotallyHessian> {
    let d = check_form(f)?;
    let nv = f.ring().nvars() as u32;
    if !((d - 2) * nv).is_multiple_of(d) {
        return Ok(TotallyHessian::Fails { reason: format!("exponent ({}-2)·{nv}/{d} is not an integer", d) });
    }
    let k = (d - 2) * nv / d;
    let h = hessian_matrix(f)?;
    let mut anchor = None;
    for _ in 0..50 {
        let pt: Vec<Q> = (0..nv).map(|_| Q::int(rng.gen_range(-5..=5))).collect();
        let fv = f.evaluate(&pt)?;
        if !fv.is_zero() {
            anchor = Some((pt, fv));
            break;
        }
    }
    let (pt, fv) = anchor.ok_or_else(|| AlgebraError::Invalid("no point with f != 0".into()))?;
    let hv = det_at(&h, &pt)?;
    let c = hv.div(&fv.pow(k)).unwrap();
    if c.is_zero() {
        return Ok(TotallyHessian::Fails { reason: "Hessian vanishes at a point where f does not".into() });
    }
    let p = identity_prime();
    let cp = c.mod_p(p).ok_or(AlgebraError::BadPrime(p))?;
    let points = 20;
    for _ in 0..points {
        let q: Vec<u64> = (0..nv).map(|_| rng.gen_range(0..p)).collect();
        let lhs = det_mod(&h, p, &q)?;
        let rhs = crate::polyring::coeff::mulmod(cp, powmod(f.eval_mod(p, &q)?, k as u64, p), p);
        if lhs != rhs {
            return Ok(TotallyHessian::Fails { reason: format!("H(f) != c·f^{k} at a random point") });
        }
    }
    let deg = ((d - 2) * nv) as f64;
    Ok(TotallyHessian::Holds { c: c.to_string(), exponent: k, points, error_bound_log2: points as f64 * (deg / p as f64).log2() })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Inversion<F: Field> {
    IsInverse { factor: Polynomial<F> },
    NotInverse { coordinate: usize },
}

/// Checks g(f(x)) = D·x for a common factor D.
pub fn inversion_check<F: Field>(fs: &[Polynomial<F>], gs: &[Polynomial<F>]) -> Result<Inversion<F>> {
    if fs.len() != gs.len() || fs.is_empty() {
        return Err(AlgebraError::Length { expected: fs.len(), got: gs.len() });
    }
    let ring = fs[0].ring().clone();
    if ring.nvars() != fs.len() {
        return Err(AlgebraError::Length { expected: ring.nvars(), got: fs.len() });
    }
    let ring_g = gs[0].ring().clone();
    let gs: Vec<Polynomial<F>> = gs.iter().map(|g| g.remap(&ring, &(0..ring_g.nvars()).collect::<Vec<_>>())).collect();
    let comp0 = gs[0].compose(fs)?;
    let Some(factor) = comp0.exact_divide(&ring.var(0))? else { return Ok(Inversion::NotInverse { coordinate: 0 }) };
    for (j, g) in gs.iter().enumerate().skip(1) {
        if g.compose(fs)? != &factor * &ring.var(j) {
            return Ok(Inversion::NotInverse { coordinate: j });
        }
    }
    if factor.is_zero() {
        return Ok(Inversion::NotInverse { coordinate: 0 });
    }
    Ok(Inversion::IsInverse { factor })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum LinearType {
    LinearType,
    NotLinearType { witness: String },
    Timeout { reason: String },
}

#[derive(Clone, Debug)]
pub struct LinearTypeReport {
    pub status: LinearType,
    /// Generators Σ s_i y_i of the symmetric algebra ideal, in k[x, y].
    pub symmetric_gens: Vec<QPoly>,
    /// Set when the Rees ideal by elimination was compared too.
    pub elimination_agrees: Option<bool>,
    pub millis: u128,
}

/// Compares the Rees ideal with the symmetric algebra ideal. The Rees ideal
/// is L : a^∞ for a nonzero form a of the ideal; the saturation comes from a
/// weighted reverse-lex basis of L + (v - a) with v last.
pub fn linear_type_check(forms: &[QPoly], cross_check: bool, budget: &Budget) -> LinearTypeReport {
    let t0 = Instant::now();
    let mut sym = Vec::new();
    let mut agrees = None;
    let status = (|| -> Result<LinearType> {
        let ring = forms.first().ok_or_else(|| AlgebraError::Invalid("no forms".into()))?.ring().clone();
        let d = forms.iter().filter_map(|f| f.degree()).max().unwrap_or(0);
        if forms.iter().any(|f| !f.is_homogeneous() || f.degree() != Some(d)) {
            return Err(AlgebraError::Invalid("forms must be homogeneous of equal degree".into()));
        }
        let nx = ring.nvars();
        let ny = forms.len();
        let xy = xy_ring(&ring, ny)?;
        let syz = first_syzygy_module(forms, budget)?;
        let xmap: Vec<usize> = (0..nx).collect();
        for col in &syz.columns {
            let mut acc = xy.zero();
            for (i, c) in col.iter().enumerate() {
                acc = &acc + &(&c.remap(&xy, &xmap) * &xy.var(nx + i));
            }
            sym.push(acc);
        }
        let l = Ideal::new(&xy, sym.clone());
        let mut names = xy.names().to_vec();
        names.push("v".into());
        let xyv = PolyRing::new(Rationals, names)?;
        let a = forms.iter().filter(|f| !f.is_zero()).min_by_key(|f| f.len()).unwrap();
        let vi = nx + ny;
        let mut gens: Vec<QPoly> = sym.iter().map(|s| s.remap(&xyv, &(0..vi).collect::<Vec<_>>())).collect();
        gens.push(&xyv.var(vi) - &a.remap(&xyv, &xmap));
        let mut w = vec![1u32; nx];
        w.extend(std::iter::repeat_n(d, ny + 1));
        let gb = compute_gb(&xyv, &gens, &MonomialOrder::weighted(w), budget)?;
        let mut subst: Vec<QPoly> = xy.vars();
        subst.push(a.remap(&xy, &xmap));
        let lgb = l.gb(budget)?;
        let mut sat = Vec::new();
        for g in gb.polys() {
            let k = g.var_power_dividing(vi);
            let stripped = g.exact_divide(&xyv.var(vi).pow(k as i64)?)?.unwrap();
            let back = stripped.compose(&subst)?;
            if !lgb.reduces_to_zero(&back)? {
                return Ok(LinearType::NotLinearType { witness: back.to_text() });
            }
            sat.push(back);
        }
        if cross_check {
            let rees = rees_ideal(forms, budget)?;
            let mut ok = true;
            for g in rees.ideal.gens() {
                ok &= lgb.reduces_to_zero(&g.remap(&xy, &(0..nx + ny).collect::<Vec<_>>()))?;
            }
            agrees = Some(ok);
        }
        Ok(LinearType::LinearType)
    })();
    let status = match status {
        Ok(s) => s,
        Err(e) if e.is_timeout() => LinearType::Timeout { reason: e.to_string() },
        Err(e) => LinearType::Timeout { reason: format!("failed: {e}") },
    };
    LinearTypeReport { status, symmetric_gens: sym, elimination_agrees: agrees, millis: t0.elapsed().as_millis() }
}

/// The bidegree (a, s) component of the Rees ideal of `forms`, computed mod p
/// as the kernel of c ↦ Σ c_{αβ} x^α f^β evaluated at random points.
#[derive(Clone, Debug)]
pub struct ReesComponent {
    pub a: u32,
    pub s: u32,
    pub prime: u64,
    pub x_monos: Vec<Monomial>,
    pub y_monos: Vec<Monomial>,
    /// Kernel basis; coordinate index = ix * y_monos.len() + iy.
    pub basis: Vec<Vec<u64>>,
}

impl ReesComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn rees_component(forms: &[QPoly], a: u32, s: u32, rng: &mut dyn RngCore, budget: &Budget) -> Result<ReesComponent> {
    let p = identity_prime();
    let field = PrimeField::new(p)?;
    let nx = forms.first().ok_or_else(|| AlgebraError::Invalid("no forms".into()))?.ring().nvars();
    let x_monos = monomials_of_degree(nx, a);
    let y_monos = monomials_of_degree(forms.len(), s);
    let unknowns = x_monos.len() * y_monos.len();
    let mut rows = Vec::with_capacity(unknowns + 10);
    for _ in 0..unknowns + 10 {
        budget.check_time()?;
        let pt: Vec<u64> = (0..nx).map(|_| rng.gen_range(0..p)).collect();
        let fv: Vec<u64> = forms.iter().map(|f| f.eval_mod(p, &pt)).collect::<Result<_>>()?;
        let xv: Vec<u64> = x_monos.iter().map(|m| mono_mod(m, &pt, p)).collect();
        let yv: Vec<u64> = y_monos.iter().map(|m| mono_mod(m, &fv, p)).collect();
        let mut row = Vec::with_capacity(unknowns);
        for &u in &xv {
            for &w in &yv {
                row.push(field.mul(&u, &w));
            }
        }
        rows.push(row);
    }
    let basis = DenseMatrix::from_rows(field, rows).kernel();
    Ok(ReesComponent { a, s, prime: p, x_monos, y_monos, basis })
}

fn mono_mod(m: &Monomial, vals: &[u64], p: u64) -> u64 {
    let mut acc = 1u64;
    for (i, &v) in vals.iter().enumerate() {
        let e = m.exp(i);
        if e > 0 {
            acc = crate::polyring::coeff::mulmod(acc, powmod(v, e as u64, p), p);
        }
    }
    acc
}

/// Number of minimal Rees generators of bidegree (1, 2): the part of K(1,2)
/// not generated by y·K(1,1) and x·K(0,2).
pub fn minimal_rees_12(forms: &[QPoly], k11: &ReesComponent, k02: &ReesComponent, k12: &ReesComponent) -> Result<usize> {
    let field = PrimeField::new(k12.prime)?;
    let ny = k12.y_monos.len();
    let yidx: HashMap<Monomial, usize> = k12.y_monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let xidx: HashMap<Monomial, usize> = k12.x_monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for v in &k11.basis {
        for j in 0..forms.len() {
            let yj = Monomial::var(forms.len(), j, 1);
            let mut out = vec![0u64; k12.x_monos.len() * ny];
            for (ix, xm) in k11.x_monos.iter().enumerate() {
                for (iy, ym) in k11.y_monos.iter().enumerate() {
                    let c = v[ix * k11.y_monos.len() + iy];
                    if c != 0 {
                        let t = xidx[xm] * ny + yidx[&ym.mul(&yj)];
                        out[t] = field.add(&out[t], &c);
                    }
                }
            }
            gens.push(out);
        }
    }
    let nx = k12.x_monos.first().map_or(0, |m| m.nvars());
    for v in &k02.basis {
        for i in 0..nx {
            let xi = Monomial::var(nx, i, 1);
            let mut out = vec![0u64; k12.x_monos.len() * ny];
            for (iy, ym) in k02.y_monos.iter().enumerate() {
                let c = v[iy];
                if c != 0 {
                    out[xidx[&xi] * ny + yidx[ym]] = c;
                }
            }
            gens.push(out);
        }
    }
    let spanned = if gens.is_empty() { 0 } else { DenseMatrix::from_rows(field, gens).rank() };
    Ok(k12.dim() - spanned)
}

/// Rank over k(y) of the matrix of x-coefficients of Rees generators linear
/// in x, by evaluation at random y mod p.
pub fn jacobian_dual_rank_mod(components: &[&ReesComponent], rng: &mut dyn RngCore) -> Result<usize> {
    let Some(first) = components.first() else { return Ok(0) };
    let p = first.prime;
    let field = PrimeField::new(p)?;
    let ny = first.y_monos.first().map_or(0, |m| m.nvars());
    let nx = first.x_monos.first().map_or(0, |m| m.nvars());
    let y: Vec<u64> = (0..ny).map(|_| rng.gen_range(0..p)).collect();
    let mut rows = Vec::new();
    for comp in components {
        if comp.a != 1 {
            return Err(AlgebraError::Invalid("Jacobian dual needs generators linear in x".into()));
        }
        let yv: Vec<u64> = comp.y_monos.iter().map(|m| mono_mod(m, &y, p)).collect();
        for v in &comp.basis {
            let mut row = vec![0u64; nx];
            for (ix, xm) in comp.x_monos.iter().enumerate() {
                let k = (0..nx).find(|&k| xm.exp(k) == 1).unwrap();
                for (iy, w) in yv.iter().enumerate() {
                    let c = v[ix * yv.len() + iy];
                    if c != 0 {
                        row[k] = field.add(&row[k], &field.mul(&c, w));
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(if rows.is_empty() { 0 } else { DenseMatrix::from_rows(field, rows).rank() })
}

/// Same rank for explicit generators in k[x, y] (x = the first `nx` variables).
pub fn jacobian_dual_rank(gens: &[QPoly], nx: usize, rng: &mut dyn RngCore) -> Result<RankCertificate> {
    for g in gens {
        if g.terms().iter().any(|(m, _)| (0..nx).map(|i| m.exp(i) as u32).sum::<u32>() != 1) {
            return Err(AlgebraError::Invalid(format!("generator not linear in x: {}", g.to_text())));
        }
    }
    let rows: Vec<Vec<QPoly>> = gens.iter().map(|g| (0..nx).map(|k| g.differentiate(k)).collect::<Result<_>>()).collect::<Result<_>>()?;
    crate::syzygy::rank_by_evaluation(&rows, 3, rng)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    Proved,
    Probabilistic,
    Timeout,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    Homaloidal,
    NotHomaloidal,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Evidence {
    pub criterion: String,
    pub result: String,
    pub certainty: Certainty,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Vec<Evidence>,
    pub seed: u64,
    pub timings: BTreeMap<String, u64>,
}

impl Verdict {
    pub fn evidence_for(&self, criterion: &str) -> Option<&Evidence> {
        self.evidence.iter().find(|e| e.criterion == criterion)
    }
}

#[derive(Clone, Debug)]
pub struct VerdictOptions {
    pub hessian: HessianOptions,
    /// Candidate inverse map, in the same number of variables.
    pub inverse_candidate: Option<Vec<QPoly>>,
    /// Try the polar map itself as its own inverse.
    pub try_self_inverse: bool,
    /// Compare the Rees and symmetric algebras when the linear rank is not maximal.
    pub linear_type: bool,
    /// Bidegree (1,1)+(1,2) Jacobian dual rank mod p.
    pub jacobian_dual: bool,
    pub saturation_obstruction: bool,
    pub budget: Budget,
}

impl Default for VerdictOptions {
    fn default() -> Self {
        VerdictOptions {
            hessian: HessianOptions::default(),
            inverse_candidate: None,
            try_self_inverse: true,
            linear_type: true,
            jacobian_dual: true,
            saturation_obstruction: true,
            budget: Budget::seconds(120),
        }
    }
}

fn ev(criterion: &str, result: impl Into<String>, certainty: Certainty, witness: Value) -> Evidence {
    Evidence { criterion: criterion.into(), result: result.into(), certainty, witness }
}

pub fn homaloidal_verdict(f: &QPoly, opts: &VerdictOptions, seed: u64) -> Result<Verdict> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d = check_form(f)?;
    let n = f.ring().nvars() - 1;
    let budget = &opts.budget;
    let mut evidence = Vec::new();
    let mut timings = BTreeMap::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut BTreeMap<String, u64>| {
        timings.insert(name.to_string(), clock.elapsed().as_millis() as u64);
        clock = Instant::now();
    };
    let done = |status, evidence, timings| Ok(Verdict { status, evidence, seed, timings });

    let dom = hessian_det_status(f, &opts.hessian, &mut rng, budget)?;
    lap("dominance", &mut timings);
    match &dom {
        HessianDetStatus::NonzeroCertificate { .. } => {
            evidence.push(ev("dominance", "Hessian determinant nonzero", Certainty::Proved, serde_json::to_value(&dom)?))
        }
        HessianDetStatus::ZeroCertificate => {
            evidence.push(ev("dominance", "Hessian determinant is zero", Certainty::Proved, serde_json::to_value(&dom)?));
            return done(Status::NotHomaloidal, evidence, timings);
        }
        HessianDetStatus::ProbablyZero { .. } => {
            evidence.push(ev("dominance", "Hessian determinant vanishes at all sampled points", Certainty::Probabilistic, serde_json::to_value(&dom)?));
            return done(Status::Inconclusive, evidence, timings);
        }
    }

    let grad = f.gradient();
    let lr = linear_rank(&grad, &mut rng, budget)?;
    lap("linear-rank", &mut timings);
    let rank = lr.certificate.rank;
    let rank_ok = rank == n;
    evidence.push(ev(
        "linear-rank",
        format!("linear rank {rank} (maximal {n})"),
        if rank_ok || lr.certificate.exact { Certainty::Proved } else { Certainty::Probabilistic },
        serde_json::to_value(&lr.certificate)?,
    ));
    if rank_ok {
        return done(Status::Homaloidal, evidence, timings);
    }

    if opts.linear_type {
        let lt = linear_type_check(&grad, false, budget);
        lap("linear-type", &mut timings);
        match &lt.status {
            LinearType::LinearType if lr.certificate.exact => {
                evidence.push(ev("linear-type", "gradient ideal is of linear type", Certainty::Proved, json!({"sym_gens": lt.symmetric_gens.len()})));
                return done(Status::NotHomaloidal, evidence, timings);
            }
            LinearType::LinearType => {
                evidence.push(ev("linear-type", "gradient ideal is of linear type", Certainty::Proved, json!({"sym_gens": lt.symmetric_gens.len()})));
            }
            LinearType::NotLinearType { witness } => {
                evidence.push(ev("linear-type", "not of linear type", Certainty::Proved, json!({ "witness": witness })));
            }
            LinearType::Timeout { reason } => {
                evidence.push(ev("linear-type", "undecided", Certainty::Timeout, json!({ "reason": reason })));
            }
        }
    }

    let mut candidates: Vec<Vec<QPoly>> = opts.inverse_candidate.iter().cloned().collect();
    if opts.try_self_inverse && n < 10 && d <= 3 {
        candidates.push(grad.clone());
    }
    for (k, cand) in candidates.iter().enumerate() {
        if let Inversion::IsInverse { factor } = inversion_check(&grad, cand)? {
            lap("inversion", &mut timings);
            evidence.push(ev("inversion", "composition is a multiple of the identity", Certainty::Proved, json!({"candidate": k, "factor": factor.to_text()})));
            return done(Status::Homaloidal, evidence, timings);
        }
    }
    if !candidates.is_empty() {
        evidence.push(ev("inversion", "no candidate inverts the polar map", Certainty::Proved, json!({"candidates": candidates.len()})));
    }

    if opts.jacobian_dual {
        let sub = budget.sub_budget(std::time::Duration::from_secs(60));
        let mut run = || -> Result<usize> {
            let k11 = rees_component(&grad, 1, 1, &mut rng, &sub)?;
            let k12 = rees_component(&grad, 1, 2, &mut rng, &sub)?;
            jacobian_dual_rank_mod(&[&k11, &k12], &mut rng)
        };
        match run() {
            Ok(r) if r == n => {
                lap("jacobian-dual", &mut timings);
                evidence.push(ev("jacobian-dual", format!("Jacobian dual rank {r}"), Certainty::Probabilistic, json!({ "rank": r })));
                return done(Status::Homaloidal, evidence, timings);
            }
            Ok(r) => evidence.push(ev("jacobian-dual", format!("Jacobian dual rank {r} from bidegrees (1,1),(1,2)"), Certainty::Probabilistic, json!({ "rank": r }))),
            Err(e) => evidence.push(ev("jacobian-dual", "undecided", Certainty::Timeout, json!({"reason": e.to_string()}))),
        }
        lap("jacobian-dual", &mut timings);
    }

    if opts.saturation_obstruction {
        match saturation_obstruction(f, budget) {
            Ok(Some(w)) => {
                lap("saturation", &mut timings);
                evidence.push(ev("saturation", "saturation has a new element below the initial-degree bound", Certainty::Proved, json!({ "witness": w })));
                return done(Status::NotHomaloidal, evidence, timings);
            }
            Ok(None) => evidence.push(ev("saturation", "no obstruction", Certainty::Proved, Value::Null)),
            Err(e) => evidence.push(ev("saturation", "undecided", Certainty::Timeout, json!({"reason": e.to_string()}))),
        }
        lap("saturation", &mut timings);
    }
    done(Status::Inconclusive, evidence, timings)
}

/// An element of J : m^∞ outside J of degree below d, if any.
pub fn saturation_obstruction(f: &QPoly, budget: &Budget) -> Result<Option<String>> {
    let d = check_form(f)?;
    let j = gradient_ideal(f)?.ideal;
    let (sat, _) = j.saturation(&Ideal::maximal(f.ring()), budget)?;
    for g in sat.gens() {
        if g.degree().is_some_and(|e| e < d) && !j.contains(g, budget)? {
            return Ok(Some(g.to_text()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn quadric_gradient_and_hessian() {
        let r = PolyRing::xs(Rationals, 3);
        let f = r.parse("x0*x2 - x1^2").unwrap();
        let g = gradient_ideal(&f).unwrap();
        assert!(g.zero_partials.is_empty());
        assert!(g.ideal.equals(&Ideal::maximal(&r), &Budget::unlimited()).unwrap());
        let data = PolarMapData::new(&f).unwrap();
        assert!(data.euler_holds());
        match totally_hessian_check(&f, &mut rng()).unwrap() {
            TotallyHessian::Holds { exponent, .. } => assert_eq!(exponent, 0),
            other => panic!("{other:?}"),
        }
        assert!(gradient_ideal(&r.parse("x0 + x1^2").unwrap()).is_err());
    }

    #[test]
    fn hessian_of_two_leap_cat() {
        let m = PolyMatrix::catalecticant(Rationals, 3, 2).unwrap();
        let f = m.determinant().unwrap();
        let pt: Vec<Q> = [0, 0, 1, 0, 0, 1, 1].iter().map(|&v| Q::int(v)).collect();
        assert_eq!(hessian_det_at(&f, &pt).unwrap(), Q::int(8));
        let st = hessian_det_status(&f, &HessianOptions::default(), &mut rng(), &Budget::unlimited()).unwrap();
        assert!(st.is_nonzero());
    }

    #[test]
    fn multiplicities() {
        let m = PolyMatrix::hankel(Rationals, 3).unwrap();
        let f = m.determinant().unwrap();
        let f3 = f.pow(3).unwrap();
        let e = factor_multiplicity(&f, Target::Poly(&f3), &mut rng()).unwrap();
        assert_eq!((e.e, e.exact), (3, Some(true)));
        let e = factor_multiplicity(&f, Target::HessianOf(&f), &mut rng()).unwrap();
        assert_eq!((e.e, e.residual_degree), (1, 2));
        assert_eq!(e.line_values, vec![1, 1, 1]);
        assert_eq!(expected_multiplicity(4, 2).unwrap(), 1);
        assert!(expected_multiplicity(4, 4).is_err());
    }

    #[test]
    fn generic_three_is_totally_hessian_and_self_inverse() {
        let m = PolyMatrix::generic(Rationals, 3).unwrap();
        let f = m.determinant().unwrap();
        match totally_hessian_check(&f, &mut rng()).unwrap() {
            TotallyHessian::Holds { exponent, .. } => assert_eq!(exponent, 3),
            other => panic!("{other:?}"),
        }
        let g = f.gradient();
        match inversion_check(&g, &g).unwrap() {
            Inversion::IsInverse { factor } => assert_eq!(factor, f),
            other => panic!("{other:?}"),
        }
        let h = PolyMatrix::hankel(Rationals, 3).unwrap().determinant().unwrap();
        assert!(matches!(totally_hessian_check(&h, &mut rng()).unwrap(), TotallyHessian::Fails { .. }));
    }

    #[test]
    fn adjugate_of_two_by_two() {
        let m = PolyMatrix::generic(Rationals, 2).unwrap();
        let g = m.determinant().unwrap().gradient();
        match inversion_check(&g, &g).unwrap() {
            Inversion::IsInverse { factor } => assert!(factor.is_constant()),
            other => panic!("{other:?}"),
        }
        let r = m.ring();
        let bad = vec![r.var(0), r.var(0), r.var(2), r.var(3)];
        assert_eq!(inversion_check(&r.vars(), &bad).unwrap(), Inversion::NotInverse { coordinate: 1 });
    }

    #[test]
    fn linear_type_small() {
        let r = PolyRing::xs(Rationals, 2);
        let rep = linear_type_check(&r.vars(), true, &Budget::unlimited());
        assert_eq!(rep.status, LinearType::LinearType);
        assert_eq!(rep.elimination_agrees, Some(true));
        // (x0^2, x0 x1, x1^2) is not of linear type.
        let forms = vec![r.parse("x0^2").unwrap(), r.parse("x0*x1").unwrap(), r.parse("x1^2").unwrap()];
        assert!(matches!(linear_type_check(&forms, false, &Budget::unlimited()).status, LinearType::NotLinearType { .. }));
    }

    #[test]
    fn hankel3_linear_type() {
        let f = PolyMatrix::hankel(Rationals, 3).unwrap().determinant().unwrap();
        let rep = linear_type_check(&f.gradient(), true, &Budget::seconds(120));
        assert_eq!(rep.status, LinearType::LinearType);
        assert_eq!(rep.elimination_agrees, Some(true));
    }

    #[test]
    fn rees_components_of_conic_map() {
        let r = PolyRing::xs(Rationals, 2);
        let forms = vec![r.parse("x0^2").unwrap(), r.parse("x0*x1").unwrap(), r.parse("x1^2").unwrap()];
        let k11 = rees_component(&forms, 1, 1, &mut rng(), &Budget::unlimited()).unwrap();
        let k02 = rees_component(&forms, 0, 2, &mut rng(), &Budget::unlimited()).unwrap();
        let k12 = rees_component(&forms, 1, 2, &mut rng(), &Budget::unlimited()).unwrap();
        assert_eq!((k11.dim(), k02.dim()), (2, 1));
        assert_eq!(minimal_rees_12(&forms, &k11, &k02, &k12).unwrap(), 0);
        assert_eq!(jacobian_dual_rank_mod(&[&k11], &mut rng()).unwrap(), 2);
    }

    #[test]
    fn jacobian_dual_of_single_relation() {
        let r = PolyRing::new(Rationals, ["x0", "x1", "y0", "y1"]).unwrap();
        let g = r.parse("x0*y1 - x1*y0").unwrap();
        assert_eq!(jacobian_dual_rank(&[g], 2, &mut rng()).unwrap().rank, 1);
        assert!(jacobian_dual_rank(&[r.parse("x0^2").unwrap()], 2, &mut rng()).is_err());
    }

    #[test]
    fn verdicts() {
        let opts = VerdictOptions::default();
        let h3 = PolyMatrix::hankel(Rationals, 3).unwrap().determinant().unwrap();
        let v = homaloidal_verdict(&h3, &opts, 1).unwrap();
        assert_eq!(v.status, Status::NotHomaloidal, "{v:?}");
        let c32 = PolyMatrix::catalecticant(Rationals, 3, 2).unwrap().determinant().unwrap();
        let v = homaloidal_verdict(&c32, &opts, 1).unwrap();
        assert_eq!(v.status, Status::Homaloidal);
        assert!(v.evidence_for("dominance").is_some());
        let sc = PolyMatrix::sc3(Rationals).unwrap().determinant().unwrap();
        assert_eq!(homaloidal_verdict(&sc, &opts, 1).unwrap().status, Status::Homaloidal);
        let g3 = PolyMatrix::generic(Rationals, 3).unwrap().determinant().unwrap();
        assert_eq!(homaloidal_verdict(&g3, &opts, 1).unwrap().status, Status::Homaloidal);
    }

    #[test]
    fn saturation_obstruction_for_hankel3() {
        let h3 = PolyMatrix::hankel(Rationals, 3).unwrap().determinant().unwrap();
        assert!(saturation_obstruction(&h3, &Budget::seconds(60)).unwrap().is_some());
    }
}
