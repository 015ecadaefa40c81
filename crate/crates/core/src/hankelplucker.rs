//! Bracket calculus for Hankel determinants.
//!
//! A bracket `[c1, ..., c_{m-1}]` (1-based, increasing) is the maximal minor on
//! those columns of the (m-1) x (m+r) matrix with entries x_{ri+j}. For r = 1
//! these are the submaximal minors of the m x m Hankel matrix.

use std::collections::HashMap;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::linalg::DenseMatrix;
use crate::polyring::{Monomial, QPoly, Rationals, Ring, Q};
use crate::structmat::{combinations, PolyMatrix};

pub type Bracket = Vec<usize>;

/// The bracket omitting the given 1-based columns out of 1..=total.
pub fn omit(total: usize, gone: &[usize]) -> Bracket {
    (1..=total).filter(|c| !gone.contains(c)).collect()
}

pub fn bracket_text(b: &[usize]) -> String {
    format!("[{}]", b.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

/// Maximal minors of one (m, r) matrix, memoized.
pub struct Brackets {
    pub m: usize,
    pub r: usize,
    matrix: PolyMatrix<Rationals>,
    memo: HashMap<Bracket, QPoly>,
}

impl Brackets {
    pub fn new(m: usize, r: usize) -> Result<Self> {
        Ok(Brackets { m, r, matrix: PolyMatrix::gp_associated(Rationals, m, r)?, memo: HashMap::new() })
    }

    pub fn ring(&self) -> &Ring<Rationals> {
        self.matrix.ring()
    }

    pub fn matrix(&self) -> &PolyMatrix<Rationals> {
        &self.matrix
    }

    pub fn columns(&self) -> usize {
        self.matrix.cols()
    }

    pub fn get(&mut self, b: &[usize]) -> Result<QPoly> {
        let (rows, cols) = (self.matrix.rows(), self.matrix.cols());
        if b.len() != rows || b.windows(2).any(|w| w[0] >= w[1]) || b.iter().any(|&c| c == 0 || c > cols) {
            return Err(AlgebraError::Invalid(format!("bad bracket {} for {rows} x {cols}", bracket_text(b))));
        }
        if let Some(p) = self.memo.get(b) {
            return Ok(p.clone());
        }
        let zero_based: Vec<usize> = b.iter().map(|c| c - 1).collect();
        let p = self.matrix.minor(&(0..rows).collect::<Vec<_>>(), &zero_based);
        self.memo.insert(b.to_vec(), p.clone());
        Ok(p)
    }

    /// All brackets in lexicographic order.
    pub fn all(&self) -> Vec<Bracket> {
        combinations(self.columns(), self.matrix.rows()).into_iter().map(|c| c.into_iter().map(|x| x + 1).collect()).collect()
    }
}

pub fn bracket_minor(m: usize, r: usize, b: &[usize]) -> Result<QPoly> {
    Brackets::new(m, r)?.get(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketOrder {
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Componentwise comparison of brackets.
pub fn bracket_compare(a: &[usize], b: &[usize]) -> Result<BracketOrder> {
    if a.len() != b.len() {
        return Err(AlgebraError::Length { expected: a.len(), got: b.len() });
    }
    let le = a.iter().zip(b).all(|(x, y)| x <= y);
    let ge = a.iter().zip(b).all(|(x, y)| x >= y);
    Ok(match (le, ge) {
        (true, true) => BracketOrder::Equal,
        (true, false) => BracketOrder::Less,
        (false, true) => BracketOrder::Greater,
        (false, false) => BracketOrder::Incomparable,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BracketExpansion {
    pub terms: Vec<(i64, Bracket)>,
    /// Global sign with f = epsilon · Σ coeff·bracket (0 if no sign works).
    pub epsilon: i64,
}

impl BracketExpansion {
    pub fn evaluate(&self, br: &mut Brackets) -> Result<QPoly> {
        let mut acc = br.ring().zero();
        for (c, b) in &self.terms {
            acc = &acc + &br.get(b)?.scale(&Q::int(*c));
        }
        Ok(acc)
    }

    pub fn pairwise_incomparable(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, (_, a))| {
            self.terms[i + 1..].iter().all(|(_, b)| bracket_compare(a, b) == Ok(BracketOrder::Incomparable))
        })
    }
}

/// The bracket combination for ∂(det H_m)/∂x_j, m x m Hankel.
pub fn star_terms(m: usize, j: usize) -> Vec<(i64, Bracket)> {
    let n = m as i64;
    let j = j as i64;
    let total = m + 1;
    let mut out = Vec::new();
    if j < n {
        for i in 0..=j / 2 {
            out.push((j + 1 - 2 * i, omit(total, &[(i + 1) as usize, (j + 2 - i) as usize])));
        }
    } else {
        for i in 1..=(2 * n - j) / 2 {
            out.push((2 * n + 1 - j - 2 * i, omit(total, &[(i + 1 + j - n) as usize, (n + 2 - i) as usize])));
        }
    }
    out
}

pub fn star_expansion(m: usize, j: usize) -> Result<BracketExpansion> {
    if m < 2 || j > 2 * m - 2 {
        return Err(AlgebraError::Invalid(format!("need m >= 2 and j <= {}", 2 * m.max(1) - 2)));
    }
    let mut br = Brackets::new(m, 1)?;
    let f = PolyMatrix::hankel(Rationals, m)?.determinant()?;
    let mut exp = BracketExpansion { terms: star_terms(m, j), epsilon: 0 };
    let fj = f.differentiate(j)?;
    let s = exp.evaluate(&mut br)?;
    exp.epsilon = if s == fj {
        1
    } else if s == -&fj {
        -1
    } else {
        0
    };
    Ok(exp)
}

/// Submaximal minor of H_m omitting row l and column k (1-based), as brackets.
pub fn delta_terms(m: usize, k: usize, l: usize) -> Vec<Bracket> {
    (1..=k.min(l)).filter(|&s| k + l + 1 - s <= m + 1).map(|s| omit(m + 1, &[s, k + l + 1 - s])).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GolbergReport {
    pub m: usize,
    /// Per partial: the global sign ε_i with f_i = ε_i Σ Δ^k_l (0 = failure).
    pub partial_signs: Vec<i64>,
    /// Pairs (k, l) whose bracket expansion failed, with the sign found otherwise.
    pub delta_failures: Vec<(usize, usize)>,
    pub delta_checked: usize,
    pub pass: bool,
}

/// f_i = ± Σ_{k+l=i+2} Δ^k_l, and each Δ^k_l as a bracket sum.
pub fn golberg_delta_check(m: usize) -> Result<GolbergReport> {
    if !(2..=5).contains(&m) {
        return Err(AlgebraError::Invalid("golberg check supports 2 <= m <= 5".into()));
    }
    let h = PolyMatrix::hankel(Rationals, m)?;
    let f = h.determinant()?;
    let mut br = Brackets::new(m, 1)?;
    let minor = |k: usize, l: usize| {
        let rows: Vec<usize> = (0..m).filter(|&i| i != l - 1).collect();
        let cols: Vec<usize> = (0..m).filter(|&i| i != k - 1).collect();
        h.minor(&rows, &cols)
    };
    let mut signs = Vec::new();
    for i in 0..=2 * m - 2 {
        let mut acc = h.ring().zero();
        for k in 1..=m {
            if i + 2 > k && i + 2 - k <= m {
                acc = &acc + &minor(k, i + 2 - k);
            }
        }
        let fi = f.differentiate(i)?;
        signs.push(if acc == fi {
            1
        } else if acc == -&fi {
            -1
        } else {
            0
        });
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 1..=m {
        for l in 1..=m {
            checked += 1;
            let mut acc = br.ring().zero();
            for b in delta_terms(m, k, l) {
                acc = &acc + &br.get(&b)?;
            }
            let direct = minor(k, l);
            if acc != direct && acc != -&direct {
                failures.push((k, l));
            }
        }
    }
    let pass = signs.iter().all(|&s| s != 0) && failures.is_empty();
    Ok(GolbergReport { m, partial_signs: signs, delta_failures: failures, delta_checked: checked, pass })
}

/// A factor in a formal product: a bracket or a partial derivative of det H_m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Factor {
    Bracket(Bracket),
    Partial(usize),
}

pub type Product = Vec<Factor>;

pub struct Evaluator {
    pub brackets: Brackets,
    partials: Vec<QPoly>,
}

impl Evaluator {
    /// Brackets of the (m, r) matrix; partials are those of det of the m x m
    /// catalecticant with the same leap.
    pub fn new(m: usize, r: usize) -> Result<Self> {
        let brackets = Brackets::new(m, r)?;
        let f = PolyMatrix::catalecticant(Rationals, m, r)?.determinant()?;
        let partials = f.gradient().into_iter().map(|p| p.remap(brackets.ring(), &(0..p.ring().nvars()).collect::<Vec<_>>())).collect();
        Ok(Evaluator { brackets, partials })
    }

    pub fn product(&mut self, p: &[Factor]) -> Result<QPoly> {
        let mut acc = self.brackets.ring().one();
        for f in p {
            let v = match f {
                Factor::Bracket(b) => self.brackets.get(b)?,
                Factor::Partial(j) => self.partials.get(*j).cloned().ok_or(AlgebraError::VarIndex(*j))?,
            };
            acc = &acc * &v;
        }
        Ok(acc)
    }

    pub fn partial(&self, j: usize) -> &QPoly {
        &self.partials[j]
    }

    pub fn sum(&mut self, terms: &[(Q, Product)]) -> Result<QPoly> {
        let mut acc = self.brackets.ring().zero();
        for (c, p) in terms {
            acc = &acc + &self.product(p)?.scale(c);
        }
        Ok(acc)
    }
}

/// Σ c·Π factors == 0 exactly.
pub fn plucker_verify(ev: &mut Evaluator, relation: &[(Q, Product)]) -> Result<bool> {
    Ok(ev.sum(relation)?.is_zero())
}

/// The three-term relations [ab][cd] - [ac][bd] + [ad][bc] of a two-row matrix.
pub fn three_term_relations(matrix: &PolyMatrix<Rationals>) -> Result<Vec<(Vec<usize>, bool)>> {
    if matrix.rows() != 2 {
        return Err(AlgebraError::Shape("three-term relations need two rows".into()));
    }
    let mn = |a: usize, b: usize| matrix.minor(&[0, 1], &[a, b]);
    let mut out = Vec::new();
    for q in combinations(matrix.cols(), 4) {
        let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
        let v = &(&(&mn(a, b) * &mn(c, d)) - &(&mn(a, c) * &mn(b, d))) + &(&mn(a, d) * &mn(b, c));
        out.push((q.iter().map(|x| x + 1).collect(), v.is_zero()));
    }
    Ok(out)
}

/// Solves target = Σ c_i terms_i over Q, if possible.
pub fn solve_coefficients(target: &QPoly, terms: &[QPoly]) -> Option<Vec<Q>> {
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for p in terms.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            let k = index.len();
            index.entry(*m).or_insert(k);
        }
    }
    let rows = index.len();
    let mut data = vec![vec![Q::zero(); terms.len() + 1]; rows];
    for (j, p) in terms.iter().chain(std::iter::once(target)).enumerate() {
        for (m, c) in p.terms() {
            data[index[m]][j] = c.clone();
        }
    }
    let mut a = DenseMatrix::from_rows(Rationals, data);
    let pivots = a.rref();
    if pivots.contains(&terms.len()) {
        return None;
    }
    let mut sol = vec![Q::zero(); terms.len()];
    for (r, &c) in pivots.iter().enumerate() {
        sol[c] = a.data[r][terms.len()].clone();
    }
    Some(sol)
}

/// The relation [1..n-3,n-1,n][1..n-2,n+1] = a·[1..n-3,n-1,n+1]·f_{2n-3} + b·f_{2n-2}·[1..n-3,n,n+1]
/// for the m x m Hankel matrix (n = m), with a and b solved for.
#[derive(Clone, Debug, Serialize)]
pub struct PluckerInstance {
    pub m: usize,
    pub lhs: (Bracket, Bracket),
    pub coefficients: Option<(String, String)>,
}

pub fn top_plucker_instance(m: usize) -> Result<PluckerInstance> {
    if m < 3 {
        return Err(AlgebraError::Invalid("needs m >= 3".into()));
    }
    let n = m;
    let head: Vec<usize> = (1..=n - 3).collect();
    let cat = |tail: &[usize]| -> Bracket { head.iter().chain(tail).copied().collect() };
    let b1 = cat(&[n - 1, n]);
    let b2: Bracket = (1..=n - 2).chain([n + 1]).collect();
    let b3 = cat(&[n - 1, n + 1]);
    let b4 = cat(&[n, n + 1]);
    let mut ev = Evaluator::new(m, 1)?;
    let lhs = ev.product(&[Factor::Bracket(b1.clone()), Factor::Bracket(b2.clone())])?;
    let t1 = ev.product(&[Factor::Bracket(b3), Factor::Partial(2 * n - 3)])?;
    let t2 = ev.product(&[Factor::Partial(2 * n - 2), Factor::Bracket(b4)])?;
    let coefficients = solve_coefficients(&lhs, &[t1, t2]).map(|s| (s[0].to_string(), s[1].to_string()));
    Ok(PluckerInstance { m, lhs: (b1, b2), coefficients })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuadraticWitness {
    pub j: usize,
    pub bracket: Bracket,
    pub coefficient: i64,
    /// X² - (1/c)·ε f_j·X + (1/c)·g vanishes at X = bracket.
    pub identity: bool,
    /// g lies in the radical of J (None: not attempted or undecided).
    pub g_in_radical: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub m: usize,
    pub brackets_in_radical: Vec<(Bracket, Option<bool>)>,
    pub j_in_p: bool,
    pub dimensions_agree: Option<bool>,
    pub witnesses: Vec<QuadraticWitness>,
    pub pass: Option<bool>,
}

/// √J = P for the Hankel gradient ideal, with the quadratic equations
/// satisfied by each bracket of each partial.
pub fn integrality_check(m: usize, budget: &Budget) -> Result<IntegralityReport> {
    if !(2..=4).contains(&m) {
        return Err(AlgebraError::Invalid("integrality check supports 2 <= m <= 4".into()));
    }
    let f = PolyMatrix::hankel(Rationals, m)?.determinant()?;
    let mut ev = Evaluator::new(m, 1)?;
    let ring = ev.brackets.ring().clone();
    let j_ideal = Ideal::new(&ring, (0..=2 * m - 2).map(|j| ev.partial(j).clone()).collect());
    let all = ev.brackets.all();
    let minors: Vec<QPoly> = all.iter().map(|b| ev.brackets.get(b)).collect::<Result<_>>()?;
    let p_ideal = Ideal::new(&ring, minors.clone());
    let j_in_p = p_ideal.contains_ideal(&j_ideal, budget)?;
    let mut in_rad = Vec::new();
    for (b, p) in all.iter().zip(&minors) {
        let r = match j_ideal.radical_contains(p, budget) {
            Ok(v) => Some(v),
            Err(e) if e.is_timeout() => None,
            Err(e) => return Err(e),
        };
        in_rad.push((b.clone(), r));
    }
    let mut witnesses = Vec::new();
    for j in 0..=2 * m - 2 {
        let exp = star_expansion(m, j)?;
        let fj = f.differentiate(j)?.remap(&ring, &(0..ring.nvars()).collect::<Vec<_>>());
        let eps_f = fj.scale(&Q::int(exp.epsilon));
        for (i, (c, b)) in exp.terms.iter().enumerate() {
            if exp.terms.len() == 1 {
                continue;
            }
            let x = ev.brackets.get(b)?;
            let mut g = ring.zero();
            for (l, (cl, bl)) in exp.terms.iter().enumerate() {
                if l != i {
                    g = &g + &(&x * &ev.brackets.get(bl)?).scale(&Q::int(*cl));
                }
            }
            let inv_c = Q::new(1, *c);
            let quad = &(&(&x * &x) - &(&eps_f * &x).scale(&inv_c)) + &g.scale(&inv_c);
            let g_in = match j_ideal.radical_contains(&g, budget) {
                Ok(v) => Some(v),
                Err(e) if e.is_timeout() => None,
                Err(e) => return Err(e),
            };
            witnesses.push(QuadraticWitness { j, bracket: b.clone(), coefficient: *c, identity: quad.is_zero(), g_in_radical: g_in });
        }
    }
    let dimensions_agree = match (j_ideal.dimension(budget), p_ideal.dimension(budget)) {
        (Ok(a), Ok(b)) => Some(a == b),
        _ => None,
    };
    let pass = if in_rad.iter().any(|(_, r)| r.is_none()) {
        None
    } else {
        Some(j_in_p && in_rad.iter().all(|(_, r)| *r == Some(true)) && witnesses.iter().all(|w| w.identity))
    };
    Ok(IntegralityReport { m, brackets_in_radical: in_rad, j_in_p, dimensions_agree, witnesses, pass })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum ReductionOutcome {
    Equal,
    NotEqual { witness: String },
    Timeout { reason: String },
}

/// Compares J·P^i : P^{i+1} with I_{m-2-i}(H_m), where I_0 is the unit ideal.
pub fn reduction_conjecture_check(m: usize, i: usize, budget: &Budget) -> Result<ReductionOutcome> {
    if !(2..=4).contains(&m) || i > m - 2 {
        return Err(AlgebraError::Invalid("needs 2 <= m <= 4 and 0 <= i <= m-2".into()));
    }
    let h = PolyMatrix::hankel(Rationals, m)?;
    let ring = h.ring().clone();
    let f = h.determinant()?;
    let j = Ideal::new(&ring, f.gradient());
    let p = h.minors_ideal(m - 1)?;
    let t = m - 2 - i;
    let rhs = if t == 0 { Ideal::unit(&ring) } else { h.minors_ideal(t)? };
    let run = || -> Result<ReductionOutcome> {
        let lhs = j.product(&p.power(i as u32)).colon(&p.power(i as u32 + 1), budget)?;
        for g in rhs.gens() {
            if !lhs.contains(g, budget)? {
                return Ok(ReductionOutcome::NotEqual { witness: format!("{} not in the colon", g.to_text()) });
            }
        }
        for g in lhs.gens() {
            if !rhs.contains(g, budget)? {
                return Ok(ReductionOutcome::NotEqual { witness: format!("{} not in I_{t}", g.to_text()) });
            }
        }
        Ok(ReductionOutcome::Equal)
    };
    match run() {
        Err(e) if e.is_timeout() => Ok(ReductionOutcome::Timeout { reason: e.to_string() }),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_of_small_matrices() {
        let b12 = bracket_minor(3, 1, &[1, 2]).unwrap();
        assert_eq!(b12, b12.ring().parse("x0*x2 - x1^2").unwrap());
        let b14 = bracket_minor(3, 1, &[1, 4]).unwrap();
        assert_eq!(b14, b14.ring().parse("x0*x4 - x1*x3").unwrap());
        assert_eq!(bracket_minor(4, 1, &[1, 2, 3]).unwrap().degree(), Some(3));
        assert!(bracket_minor(3, 1, &[2, 1]).is_err());
        assert!(bracket_minor(3, 1, &[1, 5]).is_err());
    }

    #[test]
    fn comparisons() {
        assert_eq!(bracket_compare(&[1, 2, 3], &[1, 2, 4]).unwrap(), BracketOrder::Less);
        assert_eq!(bracket_compare(&[1, 2, 5], &[1, 3, 4]).unwrap(), BracketOrder::Incomparable);
        assert_eq!(bracket_compare(&[1, 4, 5], &[2, 3, 5]).unwrap(), BracketOrder::Incomparable);
        assert_eq!(bracket_compare(&[2, 3], &[2, 3]).unwrap(), BracketOrder::Equal);
        assert!(bracket_compare(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn star_for_three() {
        let e = star_expansion(3, 2).unwrap();
        assert_eq!(e.terms, vec![(3, vec![2, 3]), (1, vec![1, 4])]);
        assert_ne!(e.epsilon, 0);
        assert_eq!(star_expansion(3, 4).unwrap().terms, vec![(1, vec![1, 2])]);
        let e3 = star_expansion(3, 3).unwrap();
        assert_eq!((e3.terms.clone(), e3.epsilon), (vec![(2, vec![1, 3])], -1));
        for m in 2..=5 {
            for j in 0..=2 * m - 2 {
                let e = star_expansion(m, j).unwrap();
                assert_ne!(e.epsilon, 0, "m={m} j={j}");
                assert!(e.pairwise_incomparable(), "m={m} j={j}");
            }
        }
    }

    #[test]
    fn golberg_and_delta() {
        assert_eq!(delta_terms(3, 2, 2), vec![vec![2, 3], vec![1, 4]]);
        for m in 2..=4 {
            let r = golberg_delta_check(m).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn plucker_relations() {
        let mut ev = Evaluator::new(3, 1).unwrap();
        let b = |v: &[usize]| Factor::Bracket(v.to_vec());
        let rel = vec![
            (Q::int(1), vec![b(&[1, 2]), b(&[3, 4])]),
            (Q::int(-1), vec![b(&[1, 3]), b(&[2, 4])]),
            (Q::int(1), vec![b(&[1, 4]), b(&[2, 3])]),
        ];
        assert!(plucker_verify(&mut ev, &rel).unwrap());
        assert!(!plucker_verify(&mut ev, &rel[..2]).unwrap());
        let g = PolyMatrix::<Rationals>::generic(Rationals, 4).unwrap().submatrix(&[0, 1], &[0, 1, 2, 3]);
        assert!(three_term_relations(&g).unwrap().iter().all(|(_, ok)| *ok));
        for inst in [top_plucker_instance(3).unwrap(), top_plucker_instance(4).unwrap()] {
            assert!(inst.coefficients.is_some(), "{inst:?}");
        }
    }

    #[test]
    fn integrality_three() {
        let r = integrality_check(3, &Budget::seconds(60)).unwrap();
        assert_eq!(r.pass, Some(true), "{r:?}");
        assert_eq!(r.brackets_in_radical.len(), 6);
        assert_eq!(r.dimensions_agree, Some(true));
        let r2 = integrality_check(2, &Budget::seconds(60)).unwrap();
        assert_eq!(r2.pass, Some(true));
    }

    #[test]
    fn reduction_small() {
        let b = Budget::seconds(120);
        assert_eq!(reduction_conjecture_check(3, 0, &b).unwrap(), ReductionOutcome::Equal);
        assert_eq!(reduction_conjecture_check(3, 1, &b).unwrap(), ReductionOutcome::Equal);
        assert_eq!(reduction_conjecture_check(2, 0, &b).unwrap(), ReductionOutcome::Equal);
    }
}
