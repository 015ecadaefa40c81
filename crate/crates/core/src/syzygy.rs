//! Graded syzygies: linear syzygies by linear algebra, full syzygy modules by
//! module Groebner bases, minimal generators, Betti tables, Fitting heights
//! and ranks of polynomial matrices.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::groebner::engine::{internal_to_vector, vector_to_internal, Engine, TermOrder};
use crate::groebner::{HilbertData, Ideal};
use crate::linalg::DenseMatrix;
use crate::polyring::{identity_prime, Field, Monomial, MonomialOrder, PrimeField, Polynomial, Rationals, Ring};
use crate::structmat::combinations;

/// Columns (a_0, ..., a_s) with sum a_i f_i = 0, graded by total degree.
#[derive(Clone, Debug)]
pub struct GradedSyzygyMatrix<F: Field> {
    pub ring: Ring<F>,
    /// Degree of each target basis element (the degree of each input form).
    pub target_degrees: Vec<u32>,
    pub columns: Vec<Vec<Polynomial<F>>>,
    /// Total degree of each column: deg a_i + target_degrees[i].
    pub column_degrees: Vec<u32>,
}

impl<F: Field> GradedSyzygyMatrix<F> {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    /// Entries of column j have degree at most 1.
    pub fn is_linear(&self, j: usize) -> bool {
        self.columns[j].iter().all(|a| a.degree().is_none_or(|d| d <= 1))
    }

    pub fn linear_part(&self) -> GradedSyzygyMatrix<F> {
        let keep: Vec<usize> = (0..self.ncols()).filter(|&j| self.is_linear(j)).collect();
        GradedSyzygyMatrix {
            ring: self.ring.clone(),
            target_degrees: self.target_degrees.clone(),
            columns: keep.iter().map(|&j| self.columns[j].clone()).collect(),
            column_degrees: keep.iter().map(|&j| self.column_degrees[j]).collect(),
        }
    }

    /// Entry (i, j) as a row-major matrix: rows index the forms.
    pub fn as_rows(&self) -> Vec<Vec<Polynomial<F>>> {
        (0..self.target_degrees.len()).map(|i| self.columns.iter().map(|c| c[i].clone()).collect()).collect()
    }

    /// Every column is an exact syzygy of the forms.
    pub fn verify(&self, forms: &[Polynomial<F>]) -> bool {
        self.columns.iter().all(|c| is_syzygy(c, forms))
    }
}

pub fn is_syzygy<F: Field>(col: &[Polynomial<F>], forms: &[Polynomial<F>]) -> bool {
    let mut acc = forms[0].ring().zero();
    for (a, f) in col.iter().zip(forms) {
        acc = &acc + &(a * f);
    }
    acc.is_zero() && col.len() == forms.len()
}

/// The two column sets span the same k-vector space.
pub fn same_k_span<F: Field>(a: &[Vec<Polynomial<F>>], b: &[Vec<Polynomial<F>>]) -> bool {
    let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
    for col in a.iter().chain(b) {
        for (i, p) in col.iter().enumerate() {
            for (m, _) in p.terms() {
                let k = index.len();
                index.entry((i, *m)).or_insert(k);
            }
        }
    }
    let Some(field) = a.iter().chain(b).flatten().next().map(|p| p.field().clone()) else { return true };
    let dense = |cols: &[&Vec<Polynomial<F>>]| {
        let rows = cols
            .iter()
            .map(|col| {
                let mut row = vec![field.zero(); index.len()];
                for (i, p) in col.iter().enumerate() {
                    for (m, c) in p.terms() {
                        row[index[&(i, *m)]] = c.clone();
                    }
                }
                row
            })
            .collect();
        DenseMatrix::from_rows(field.clone(), rows).rank()
    };
    let ra = dense(&a.iter().collect::<Vec<_>>());
    let rb = dense(&b.iter().collect::<Vec<_>>());
    let rab = dense(&a.iter().chain(b).collect::<Vec<_>>());
    ra == rb && rb == rab
}

/// Same-degree homogeneous check; returns the common degree.
fn common_degree<F: Field>(forms: &[Polynomial<F>]) -> Result<u32> {
    let mut d = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        if !f.is_homogeneous() {
            return Err(AlgebraError::Invalid("forms must be homogeneous".into()));
        }
        match d {
            None => d = f.degree(),
            Some(e) if Some(e) != f.degree() => return Err(AlgebraError::Invalid("forms have mixed degrees".into())),
            _ => {}
        }
    }
    d.ok_or_else(|| AlgebraError::Invalid("all forms are zero".into()))
}

/// Basis of the linear syzygies of equal-degree forms, by solving the linear
/// system on the coefficients of degree d+1.
pub fn linear_syzygies<F: Field>(forms: &[Polynomial<F>]) -> Result<GradedSyzygyMatrix<F>> {
    let d = common_degree(forms)?;
    let ring = forms[0].ring().clone();
    let n = ring.nvars();
    let s = forms.len();
    let mut rows: HashMap<Monomial, usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, F::Elem)> = Vec::new();
    for (i, f) in forms.iter().enumerate() {
        for k in 0..n {
            let xk = Monomial::var(n, k, 1);
            for (m, c) in f.terms() {
                let next = rows.len();
                let r = *rows.entry(xk.mul(m)).or_insert(next);
                entries.push((r, i * n + k, c.clone()));
            }
        }
    }
    let field = ring.field().clone();
    let mut mat = DenseMatrix::zeros(field.clone(), rows.len(), s * n);
    for (r, c, v) in entries {
        let cur = mat.get(r, c).clone();
        mat.set(r, c, field.add(&cur, &v));
    }
    let kernel = mat.kernel();
    let mut columns = Vec::with_capacity(kernel.len());
    for v in kernel {
        let col: Vec<Polynomial<F>> = (0..s)
            .map(|i| ring.from_terms((0..n).map(|k| (Monomial::var(n, k, 1), v[i * n + k].clone()))))
            .collect();
        debug_assert!(is_syzygy(&col, forms));
        columns.push(col);
    }
    let ncols = columns.len();
    Ok(GradedSyzygyMatrix { ring, target_degrees: vec![d; s], columns, column_degrees: vec![d + 1; ncols] })
}

/// Degree of a homogeneous vector with the given target shifts.
fn vector_degree<F: Field>(v: &[Polynomial<F>], shifts: &[u32]) -> Option<u32> {
    v.iter().zip(shifts).filter(|(p, _)| !p.is_zero()).map(|(p, s)| p.degree().unwrap() + s).max()
}

/// Generators of the syzygies of columns `cols` of a graded free module with
/// target shifts `shifts`, via a position-over-term Groebner basis of
/// (col_j, e_j).
pub fn module_syzygies<F: Field>(
    ring: &Ring<F>,
    shifts: &[u32],
    cols: &[Vec<Polynomial<F>>],
    budget: &Budget,
) -> Result<GradedSyzygyMatrix<F>> {
    let r = shifts.len();
    let s = cols.len();
    let col_degrees: Vec<u32> = cols
        .iter()
        .map(|c| vector_degree(c, shifts).ok_or_else(|| AlgebraError::Invalid("zero column".into())))
        .collect::<Result<_>>()?;
    let mut all_shifts = shifts.to_vec();
    all_shifts.extend(&col_degrees);
    let ord = TermOrder { mono: MonomialOrder::grevlex(), shifts: all_shifts };
    let gens = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut v = c.clone();
            v.extend((0..s).map(|k| if k == j { ring.one() } else { ring.zero() }));
            vector_to_internal(&v, &ord)
        })
        .collect();
    let mut eng = Engine::new(ring.field(), &ord, budget);
    let gb = eng.groebner(gens)?;
    let mut columns = Vec::new();
    let mut degrees = Vec::new();
    for g in gb {
        if (g.last().unwrap().0 as usize) < r {
            continue;
        }
        let v = internal_to_vector(&g, ring, r + s);
        let syz: Vec<Polynomial<F>> = v[r..].to_vec();
        degrees.push(vector_degree(&syz, &col_degrees).unwrap());
        columns.push(syz);
    }
    Ok(GradedSyzygyMatrix { ring: ring.clone(), target_degrees: col_degrees, columns, column_degrees: degrees })
}

/// Full first syzygy module of forms (any degrees), minimalized.
pub fn first_syzygy_module<F: Field>(forms: &[Polynomial<F>], budget: &Budget) -> Result<GradedSyzygyMatrix<F>> {
    let ring = forms[0].ring().clone();
    if forms.iter().any(|f| f.is_zero() || !f.is_homogeneous()) {
        return Err(AlgebraError::Invalid("forms must be nonzero and homogeneous".into()));
    }
    let cols: Vec<Vec<Polynomial<F>>> = forms.iter().map(|f| vec![f.clone()]).collect();
    let syz = module_syzygies(&ring, &[0], &cols, budget)?;
    minimalize(&syz, budget)
}

/// Sparse echelon form keyed by pivot coordinate.
struct Echelon<F: Field> {
    field: F,
    rows: HashMap<usize, BTreeMap<usize, F::Elem>>,
}

impl<F: Field> Echelon<F> {
    fn new(field: F) -> Self {
        Echelon { field, rows: HashMap::new() }
    }

    /// Inserts v; returns false when v was already in the span.
    fn insert(&mut self, mut v: BTreeMap<usize, F::Elem>) -> bool {
        let f = &self.field;
        let mut cursor = 0;
        loop {
            let Some((&k, c)) = v.range(cursor..).next() else { return false };
            let c = c.clone();
            match self.rows.get(&k) {
                Some(row) => {
                    for (&j, a) in row {
                        let t = f.mul(&c, a);
                        let e = v.entry(j).or_insert_with(|| f.zero());
                        *e = f.sub(e, &t);
                        if f.is_zero(e) {
                            v.remove(&j);
                        }
                    }
                }
                None => {
                    let inv = f.inv(&c).unwrap();
                    let row = v.into_iter().map(|(j, a)| (j, f.mul(&a, &inv))).collect();
                    self.rows.insert(k, row);
                    return true;
                }
            }
            cursor = k + 1;
        }
    }
}

/// Coordinates of homogeneous vectors in a fixed graded basis.
struct Coords {
    index: HashMap<(usize, Monomial), usize>,
}

impl Coords {
    fn vector<F: Field>(&mut self, v: &[Polynomial<F>], mult: &Monomial) -> BTreeMap<usize, F::Elem> {
        let mut out = BTreeMap::new();
        for (i, p) in v.iter().enumerate() {
            for (m, c) in p.terms() {
                let next = self.index.len();
                let k = *self.index.entry((i, m.mul(mult))).or_insert(next);
                out.insert(k, c.clone());
            }
        }
        out
    }
}

pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left as u16;
            out.push(Monomial::from_exps(exps).unwrap());
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        return out;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

/// Indices of a minimal homogeneous generating subset, by degree-wise linear
/// algebra over the field.
pub fn minimal_subset<F: Field>(ring: &Ring<F>, shifts: &[u32], cols: &[Vec<Polynomial<F>>], budget: &Budget) -> Result<Vec<usize>> {
    let n = ring.nvars();
    let degs: Vec<Option<u32>> = cols.iter().map(|c| vector_degree(c, shifts)).collect();
    let mut order: Vec<usize> = (0..cols.len()).filter(|&j| degs[j].is_some()).collect();
    order.sort_by_key(|&j| (degs[j], j));
    let mut chosen: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let d = degs[order[k]].unwrap();
        let mut coords = Coords { index: HashMap::new() };
        let mut ech = Echelon::new(ring.field().clone());
        for &j in &chosen {
            for m in monomials_of_degree(n, d - degs[j].unwrap()) {
                budget.check_time()?;
                ech.insert(coords.vector(&cols[j], &m));
            }
        }
        let one = Monomial::one(n);
        while k < order.len() && degs[order[k]] == Some(d) {
            let j = order[k];
            if ech.insert(coords.vector(&cols[j], &one)) {
                chosen.push(j);
            }
            k += 1;
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Keeps a minimal generating set of the columns.
pub fn minimalize<F: Field>(m: &GradedSyzygyMatrix<F>, budget: &Budget) -> Result<GradedSyzygyMatrix<F>> {
    let keep = minimal_subset(&m.ring, &m.target_degrees, &m.columns, budget)?;
    let mut idx = keep;
    idx.sort_by_key(|&j| (m.column_degrees[j], j));
    Ok(GradedSyzygyMatrix {
        ring: m.ring.clone(),
        target_degrees: m.target_degrees.clone(),
        columns: idx.iter().map(|&j| m.columns[j].clone()).collect(),
        column_degrees: idx.iter().map(|&j| m.column_degrees[j]).collect(),
    })
}

/// Minimal homogeneous generators of an ideal.
pub fn minimal_generators<F: Field>(gens: &[Polynomial<F>], budget: &Budget) -> Result<Vec<Polynomial<F>>> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else { return Ok(Vec::new()) };
    let ring = first.ring().clone();
    let cols: Vec<Vec<Polynomial<F>>> = gens.iter().map(|g| vec![g.clone()]).collect();
    let keep = minimal_subset(&ring, &[0], &cols, budget)?;
    let mut out: Vec<Polynomial<F>> = keep.into_iter().map(|j| gens[j].clone()).collect();
    out.sort_by_key(|g| g.degree());
    Ok(out)
}

/// Graded Betti numbers beta_{i,j}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// (homological index, internal degree) -> rank.
    #[serde(serialize_with = "betti_triples")]
    pub entries: BTreeMap<(usize, u32), usize>,
    /// Resolution was cut at the homological cap before reaching zero.
    pub truncated: bool,
}

fn betti_triples<S: serde::Serializer>(m: &BTreeMap<(usize, u32), usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|(&(i, j), &v)| (i, j, v)))
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((h, _), _)| *h == i).map(|(_, v)| v).sum()
    }

    /// Shifts at homological index i, e.g. [(3, 5)] for R(-3)^5.
    pub fn shifts(&self, i: usize) -> Vec<(u32, usize)> {
        self.entries.iter().filter(|((h, _), _)| *h == i).map(|((_, j), v)| (*j, *v)).collect()
    }

    /// sum_i (-1)^i sum_j beta_{i,j} t^j.
    pub fn alternating_numerator(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|(_, j)| *j as usize).max().unwrap_or(0);
        let mut out = vec![0i64; top + 1];
        for (&(i, j), &v) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            out[j as usize] += s * v as i64;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

/// Minimal graded free resolution of R/I up to `hom_cap`.
pub fn graded_betti<F: Field>(ideal: &Ideal<F>, hom_cap: usize, budget: &Budget) -> Result<BettiTable> {
    let mut entries = BTreeMap::new();
    entries.insert((0, 0), 1);
    let gens = minimal_generators(ideal.gens(), budget)?;
    if gens.is_empty() {
        return Ok(BettiTable { entries, truncated: false });
    }
    let ring = ideal.ring().clone();
    for g in &gens {
        *entries.entry((1, g.degree().unwrap())).or_insert(0) += 1;
    }
    let mut shifts: Vec<u32> = vec![0];
    let mut cols: Vec<Vec<Polynomial<F>>> = gens.iter().map(|g| vec![g.clone()]).collect();
    let mut i = 1;
    loop {
        if i >= hom_cap {
            return Ok(BettiTable { entries, truncated: true });
        }
        let syz = module_syzygies(&ring, &shifts, &cols, budget)?;
        let syz = minimalize(&syz, budget)?;
        if syz.columns.is_empty() {
            return Ok(BettiTable { entries, truncated: false });
        }
        i += 1;
        for &d in &syz.column_degrees {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
        shifts = syz.target_degrees.clone();
        cols = syz.columns;
    }
}

/// Betti table and Hilbert numerator agree.
pub fn betti_matches_hilbert(b: &BettiTable, h: &HilbertData) -> bool {
    !b.truncated && b.alternating_numerator() == h.numerator
}

/// Rank of a polynomial matrix over the fraction field.
#[derive(Clone, Debug, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    /// Prime used for the evaluations.
    pub prime: u64,
    /// Point (mod prime) where the witness minor is nonzero.
    pub point: Vec<u64>,
    pub witness_rows: Vec<usize>,
    pub witness_cols: Vec<usize>,
    /// Independent evaluation ranks (the certificate uses the maximum).
    pub trial_ranks: Vec<usize>,
    /// The upper bound rank <= `rank` was proved (symbolically or by shape).
    pub exact: bool,
    /// log2 of a bound on the probability that `rank` underestimates the true rank.
    pub error_bound_log2: f64,
}

/// Lower-bounds the rank by evaluation at random points mod a 60-bit prime;
/// the witness minor is nonzero, so `rank` is a proved lower bound.
pub fn rank_by_evaluation(rows: &[Vec<Polynomial<Rationals>>], trials: usize, rng: &mut dyn RngCore) -> Result<RankCertificate> {
    let p = identity_prime();
    let field = PrimeField::new(p)?;
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let nvars = rows.iter().flatten().next().map_or(0, |e| e.ring().nvars());
    let max_deg = rows.iter().flatten().filter_map(|e| e.degree()).max().unwrap_or(0) as f64;
    let mut best: Option<(usize, Vec<u64>, Vec<usize>, Vec<usize>)> = None;
    let mut trial_ranks = Vec::new();
    for _ in 0..trials.max(1) {
        let point: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..p)).collect();
        let vals: Vec<Vec<u64>> =
            rows.iter().map(|r| r.iter().map(|e| e.eval_mod(p, &point)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let m = DenseMatrix::from_rows(field, vals);
        let (wr, wc) = if nrows == 0 || ncols == 0 { (Vec::new(), Vec::new()) } else { m.rank_witness() };
        trial_ranks.push(wr.len());
        if best.as_ref().is_none_or(|b| wr.len() > b.0) {
            best = Some((wr.len(), point, wr, wc));
        }
    }
    let (rank, point, witness_rows, witness_cols) = best.unwrap();
    let shape_bound = nrows.min(ncols);
    let full = (rank + 1) as f64 * max_deg.max(1.0) / p as f64;
    Ok(RankCertificate {
        rank,
        prime: p,
        point,
        witness_rows,
        witness_cols,
        exact: rank == shape_bound,
        error_bound_log2: trial_ranks.len() as f64 * full.log2(),
        trial_ranks,
    })
}

/// Exact rank by fraction-free elimination over the polynomial ring; gives
/// up (Timeout) when an entry exceeds `term_cap` terms.
pub fn symbolic_rank<F: Field>(rows: &[Vec<Polynomial<F>>], term_cap: usize, budget: &Budget) -> Result<usize> {
    let mut a: Vec<Vec<Polynomial<F>>> = rows.to_vec();
    let Some(ring) = a.iter().flatten().next().map(|e| e.ring().clone()) else { return Ok(0) };
    let ncols = a[0].len();
    let mut prev = ring.one();
    let mut rank = 0;
    let mut col = 0;
    while rank < a.len() && col < ncols {
        budget.check_time()?;
        let Some(p) = (rank..a.len()).filter(|&i| !a[i][col].is_zero()).min_by_key(|&i| a[i][col].len()) else {
            col += 1;
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            for j in col + 1..ncols {
                let num = &(&a[rank][col] * &a[i][j]) - &(&a[i][col] * &a[rank][j]);
                let q = num.exact_divide(&prev)?.ok_or_else(|| AlgebraError::Invalid("fraction-free step not exact".into()))?;
                if q.len() > term_cap {
                    return Err(AlgebraError::Timeout(format!("symbolic rank: entry with {} terms", q.len())));
                }
                a[i][j] = q;
            }
            a[i][col] = ring.zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        col += 1;
    }
    Ok(rank)
}

/// Linear syzygies together with the rank of their matrix.
#[derive(Clone, Debug)]
pub struct LinearRank {
    pub syzygies: GradedSyzygyMatrix<Rationals>,
    pub certificate: RankCertificate,
}

/// Linear syzygies and their rank; the upper bound is confirmed
/// symbolically when affordable.
pub fn linear_rank(forms: &[Polynomial<Rationals>], rng: &mut dyn RngCore, budget: &Budget) -> Result<LinearRank> {
    let syz = linear_syzygies(forms)?;
    let rows = syz.as_rows();
    let mut cert = rank_by_evaluation(&rows, 3, rng)?;
    // The forms themselves lie in the left kernel, so rank <= #forms - 1.
    if cert.rank + 1 == forms.len() {
        cert.exact = true;
    }
    if !cert.exact && syz.ncols() > 0 {
        let sub = budget.sub_budget(std::time::Duration::from_secs(30));
        if let Ok(r) = symbolic_rank(&rows, 4000, &sub) {
            cert.exact = r == cert.rank;
        }
    }
    Ok(LinearRank { syzygies: syz, certificate: cert })
}

/// Per-t outcome of the Fitting condition ht I_t(phi) >= rank(phi) - t + 2.
#[derive(Clone, Debug, Serialize)]
pub struct FittingEntry {
    pub t: usize,
    pub required: i64,
    /// Height established (a lower bound when `pass` came from a subset of minors).
    pub height: Option<i64>,
    pub pass: Option<bool>,
    pub minors_used: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FittingReport {
    pub rank: usize,
    pub entries: Vec<FittingEntry>,
    pub pass: Option<bool>,
}

/// Checks property F1 for the forms' minimal presentation matrix. Heights are
/// lower-bounded by sub-ideals of the minors, so a pass needs only enough
/// minors and a failure needs all of them.
pub fn fitting_condition_f1<F: Field>(forms: &[Polynomial<F>], budget: &Budget) -> Result<FittingReport> {
    let ring = forms[0].ring().clone();
    let syz = first_syzygy_module(forms, budget)?;
    let rows = syz.as_rows();
    let rank = forms.len() - 1;
    let mut entries = Vec::new();
    let mut all = Some(true);
    for t in 1..=rank {
        let required = (rank - t + 2) as i64;
        let entry = match fitting_height(&ring, &rows, t, required, budget) {
            Ok((h, used, pass)) => FittingEntry { t, required, height: Some(h), pass: Some(pass), minors_used: used },
            Err(e) if e.is_timeout() => FittingEntry { t, required, height: None, pass: None, minors_used: 0 },
            Err(e) => return Err(e),
        };
        all = match (all, entry.pass) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        };
        entries.push(entry);
    }
    Ok(FittingReport { rank, entries, pass: all })
}

fn fitting_height<F: Field>(
    ring: &Ring<F>,
    rows: &[Vec<Polynomial<F>>],
    t: usize,
    required: i64,
    budget: &Budget,
) -> Result<(i64, usize, bool)> {
    let nr = rows.len();
    let nc = rows.first().map_or(0, |r| r.len());
    if t > nr.min(nc) {
        return Ok((0, 0, required <= 0));
    }
    let mut minors = Vec::new();
    for rs in combinations(nr, t) {
        for cs in combinations(nc, t) {
            let m = crate::structmat::PolyMatrix::new(
                ring,
                t,
                t,
                rs.iter().flat_map(|&i| cs.iter().map(move |&j| rows[i][j].clone())).collect(),
                crate::structmat::Provenance::Custom,
            )?
            .det_cofactor();
            if !m.is_zero() {
                minors.push(m);
            }
        }
    }
    minors.sort_by_key(|m| (m.degree(), m.len()));
    let mut used = 0;
    let mut step = 1;
    let mut height = 0;
    while used < minors.len() {
        used = (used + step).min(minors.len());
        step *= 2;
        let ideal = Ideal::new(ring, minors[..used].to_vec());
        height = ideal.height(budget)?;
        if height >= required {
            return Ok((height, used, true));
        }
    }
    Ok((height, used, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PolyRing;
    use crate::structmat::PolyMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn b() -> Budget {
        Budget::unlimited()
    }

    #[test]
    fn koszul_linear() {
        let r = PolyRing::xs(Rationals, 2);
        let syz = linear_syzygies(&r.vars()).unwrap();
        assert_eq!(syz.ncols(), 1);
        let c = &syz.columns[0];
        assert_eq!(c[0].monic(), r.var(1));
        assert_eq!(c[1].monic(), r.var(0));
        assert_eq!(c[0].leading().unwrap().1, Rationals.neg(&c[1].leading().unwrap().1));
        assert!(syz.verify(&r.vars()));
    }

    #[test]
    fn koszul_full_and_betti() {
        let r = PolyRing::xs(Rationals, 3);
        let syz = first_syzygy_module(&r.vars(), &b()).unwrap();
        assert_eq!(syz.ncols(), 3);
        assert!(syz.verify(&r.vars()));
        let i = Ideal::new(&r, r.vars()[..2].to_vec());
        let bt = graded_betti(&i, 5, &b()).unwrap();
        assert_eq!((bt.get(0, 0), bt.get(1, 1), bt.get(2, 2)), (1, 2, 1));
        assert!(betti_matches_hilbert(&bt, &i.hilbert_data(&b()).unwrap()));
        let m = Ideal::new(&r, r.vars());
        let bt = graded_betti(&m, 5, &b()).unwrap();
        assert_eq!((bt.get(1, 1), bt.get(2, 2), bt.get(3, 3)), (3, 3, 1));
        assert!(betti_matches_hilbert(&bt, &m.hilbert_data(&b()).unwrap()));
    }

    #[test]
    fn hankel3_linear_rank() {
        let h = PolyMatrix::hankel(Rationals, 3).unwrap();
        let f = h.determinant().unwrap();
        let grad = f.gradient();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let lr = linear_rank(&grad, &mut rng, &b()).unwrap();
        assert_eq!(lr.syzygies.ncols(), 3);
        assert_eq!(lr.certificate.rank, 3);
        assert!(lr.certificate.exact);
        let r = h.ring();
        let col: Vec<_> = ["0", "x0", "2*x1", "3*x2", "4*x3"].iter().map(|t| r.parse(t).unwrap()).collect();
        assert!(is_syzygy(&col, &grad));
    }

    #[test]
    fn eagon_northcott_presentation() {
        let gp = PolyMatrix::gp_associated(Rationals, 3, 1).unwrap();
        let mins = gp.minors(2).unwrap();
        let syz = first_syzygy_module(&mins, &b()).unwrap();
        assert!(syz.verify(&mins));
        assert_eq!(syz.ncols(), 8);
        assert!(syz.column_degrees.iter().all(|&d| d == 3));
    }

    #[test]
    fn fitting_examples() {
        let r = PolyRing::xs(Rationals, 2);
        let rep = fitting_condition_f1(&r.vars(), &b()).unwrap();
        assert_eq!(rep.pass, Some(true));
        let f = Ideal::parse(&r, &["x0^2", "x0*x1", "x1^2"]).unwrap();
        let rep = fitting_condition_f1(f.gens(), &b()).unwrap();
        assert_eq!(rep.pass, Some(false));
        assert_eq!(rep.entries[0].pass, Some(false));
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let r = PolyRing::xs(Rationals, 2);
        let g: Vec<_> = ["x0", "x1", "x0*x1 + x1^2", "x0 + x1"].iter().map(|t| r.parse(t).unwrap()).collect();
        assert_eq!(minimal_generators(&g, &b()).unwrap().len(), 2);
    }

    #[test]
    fn symbolic_rank_matches() {
        let g = PolyMatrix::generic(Rationals, 3).unwrap();
        let rows: Vec<Vec<_>> = (0..3).map(|i| g.row(i).to_vec()).collect();
        assert_eq!(symbolic_rank(&rows, 1000, &b()).unwrap(), 3);
        let h = PolyMatrix::gp_associated(Rationals, 3, 1).unwrap();
        let mut rows: Vec<Vec<_>> = (0..2).map(|i| h.row(i).to_vec()).collect();
        rows.push(rows[0].iter().zip(&rows[1]).map(|(a, c)| a + c).collect());
        assert_eq!(symbolic_rank(&rows, 1000, &b()).unwrap(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(rank_by_evaluation(&rows, 3, &mut rng).unwrap().rank, 2);
    }
}
