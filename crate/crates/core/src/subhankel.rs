//! Sub-Hankel determinants: the matrix with entry x_{i+j} when i+j <= n and 0
//! below the antidiagonal, the filtration J_i of its gradient ideal, and the
//! homological facts built on it.

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polar::{linear_type_check, LinearType};
use crate::polyring::{Monomial, QPoly, Rationals, Ring, Q};
use crate::structmat::{PolyMatrix, Provenance};
use crate::syzygy::{first_syzygy_module, graded_betti, is_syzygy, minimalize, module_syzygies, same_k_span, BettiTable};

fn binom2(n: usize, k: usize) -> usize {
    crate::groebner::hilbert::binom(n as i64, k as i64) as usize
}

pub struct SubHankelCase {
    pub n: usize,
    pub matrix: PolyMatrix<Rationals>,
    pub f: QPoly,
    pub partials: Vec<QPoly>,
    /// Generators of J_i: f_0..f_i divided by x_n^{n-i-1}, for i = 0..n-1.
    pub j_gens: Vec<Vec<QPoly>>,
}

impl SubHankelCase {
    pub fn ring(&self) -> &Ring<Rationals> {
        self.matrix.ring()
    }

    pub fn x(&self, i: usize) -> QPoly {
        self.ring().var(i)
    }

    pub fn j_ideal(&self, i: usize) -> Ideal<Rationals> {
        Ideal::new(self.ring(), self.j_gens[i].clone())
    }

    pub fn gradient_ideal(&self) -> Ideal<Rationals> {
        Ideal::new(self.ring(), self.partials.clone())
    }
}

pub fn subhankel_case(n: usize) -> Result<SubHankelCase> {
    if !(2..=6).contains(&n) {
        return Err(AlgebraError::Invalid("sub-Hankel cases need 2 <= n <= 6".into()));
    }
    let matrix = PolyMatrix::sub_hankel(Rationals, n)?;
    let f = matrix.determinant()?;
    let partials = f.gradient();
    let ring = matrix.ring().clone();
    let mut j_gens = Vec::new();
    for i in 0..n {
        let g = ring.var(n).pow((n - i - 1) as i64)?;
        let gens = partials[..=i]
            .iter()
            .map(|p| p.exact_divide(&g)?.ok_or_else(|| AlgebraError::Invalid(format!("x_n^{} does not divide f_{i}", n - i - 1))))
            .collect::<Result<Vec<_>>>()?;
        j_gens.push(gens);
    }
    Ok(SubHankelCase { n, matrix, f, partials, j_gens })
}

#[derive(Clone, Debug, Serialize)]
pub struct RecurrenceReport {
    pub n: usize,
    /// Indices i where x_n f_i = -Σ_k (2i-k)/i x_{n-i+k} f_k holds.
    pub basic: Vec<(usize, bool)>,
    pub perfect: bool,
    pub pass: bool,
}

/// Right side of the basic linear relation for f_i.
fn basic_rhs(c: &SubHankelCase, i: usize) -> QPoly {
    let n = c.n;
    let mut acc = c.ring().zero();
    for k in 0..i {
        let coeff = Q::new(-((2 * i - k) as i64), i as i64);
        acc = &acc + &(&c.x(n - i + k) * &c.partials[k]).scale(&coeff);
    }
    acc
}

pub fn recurrence_check(n: usize) -> Result<RecurrenceReport> {
    let c = subhankel_case(n)?;
    let xn = c.x(n);
    let basic: Vec<(usize, bool)> = (1..n).map(|i| (i, &xn * &c.partials[i] == basic_rhs(&c, i))).collect();
    let mut rhs = c.ring().zero();
    for k in 0..n - 1 {
        rhs = &rhs + &(&c.x(k) * &c.partials[k]).scale(&Q::int((n - 1 - k) as i64));
    }
    let perfect = &xn * &c.partials[n] == rhs;
    let pass = perfect && basic.iter().all(|(_, ok)| *ok);
    Ok(RecurrenceReport { n, basic, perfect, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct GcdReport {
    pub n: usize,
    pub i: usize,
    pub exponent: usize,
    pub divides: bool,
    /// f_0..f_i involve only x_{n-i}..x_n.
    pub support_ok: bool,
    /// Height of the quotient ideal (>= 2 means no further common factor).
    pub quotient_height: i64,
    pub pass: bool,
}

pub fn gcd_power_check(n: usize, i: usize, budget: &Budget) -> Result<GcdReport> {
    let c = subhankel_case(n)?;
    if i >= n {
        return Err(AlgebraError::Invalid(format!("need 0 <= i <= {}", n - 1)));
    }
    let support_ok = c.partials[..=i].iter().all(|p| p.support_vars().iter().all(|&v| v >= n - i));
    let height = c.j_ideal(i).height(budget)?;
    // j_gens exist only if the division was exact.
    let pass = support_ok && height >= 2;
    Ok(GcdReport { n, i, exponent: n - i - 1, divides: true, support_ok, quotient_height: height, pass })
}

/// φ(J_i): (i+1) x i, first column (2i-k)/i · x_{n-i+k} for k < i and x_n
/// last, followed by φ(J_{i-1}) over a zero row.
pub fn hilbert_burch_matrix(c: &SubHankelCase, i: usize) -> Vec<Vec<QPoly>> {
    let n = c.n;
    let ring = c.ring();
    let mut first: Vec<QPoly> = (0..i).map(|k| c.x(n - i + k).scale(&Q::new((2 * i - k) as i64, i as i64))).collect();
    first.push(c.x(n));
    let mut cols = vec![first];
    if i >= 2 {
        for col in hilbert_burch_matrix(c, i - 1) {
            let mut v = col;
            v.push(ring.zero());
            cols.push(v);
        }
    }
    cols
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertBurchEntry {
    pub i: usize,
    pub columns_are_syzygies: bool,
    pub minors_generate: Option<bool>,
    pub linear: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertBurchReport {
    pub n: usize,
    pub entries: Vec<HilbertBurchEntry>,
    pub pass: Option<bool>,
}

pub fn hilbert_burch_check(n: usize, budget: &Budget) -> Result<HilbertBurchReport> {
    let c = subhankel_case(n)?;
    let mut entries = Vec::new();
    for i in 1..n {
        let cols = hilbert_burch_matrix(&c, i);
        let gens = &c.j_gens[i];
        let syz = cols.iter().all(|col| is_syzygy(col, gens));
        let linear = cols.iter().flatten().all(|e| e.is_zero() || e.degree() == Some(1));
        let entries_flat: Vec<QPoly> = (0..=i).flat_map(|r| cols.iter().map(move |col| col[r].clone())).collect();
        let phi = PolyMatrix::new(c.ring(), i + 1, i, entries_flat, Provenance::Custom)?;
        let minors = phi.minors(i)?;
        let gen = match Ideal::new(c.ring(), minors).equals(&c.j_ideal(i), budget) {
            Ok(v) => Some(v),
            Err(e) if e.is_timeout() => None,
            Err(e) => return Err(e),
        };
        entries.push(HilbertBurchEntry { i, columns_are_syzygies: syz, minors_generate: gen, linear });
    }
    let pass = if entries.iter().any(|e| e.minors_generate.is_none()) {
        None
    } else {
        Some(entries.iter().all(|e| e.columns_are_syzygies && e.linear && e.minors_generate == Some(true)))
    };
    Ok(HilbertBurchReport { n, entries, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub n: usize,
    /// (i, e(R/J_i), C(i+1, 2)).
    pub filtration: Vec<(usize, i64, i64)>,
    /// ℓ((x_n, x_{n-1}^{n-1})/J_{n-1}) at the prime (x_{n-1}, x_n), against C(n-1, 2).
    pub quotient_length: (i64, i64),
    pub colon_by_xn: bool,
    pub pass: bool,
}

pub fn multiplicity_filtration_check(n: usize, budget: &Budget) -> Result<MultiplicityReport> {
    let c = subhankel_case(n)?;
    let mut filtration = Vec::new();
    for i in 1..n {
        let e = c.j_ideal(i).hilbert_data(budget)?.multiplicity;
        filtration.push((i, e, binom2(i + 1, 2) as i64));
    }
    let top = c.j_ideal(n - 1);
    let e_top = top.hilbert_data(budget)?.multiplicity;
    let k = Ideal::new(c.ring(), vec![c.x(n), c.x(n - 1).pow((n - 1) as i64)?]);
    let e_k = k.hilbert_data(budget)?.multiplicity;
    let quotient_length = (e_top - e_k, binom2(n - 1, 2) as i64);
    let colon_by_xn = if n >= 3 { top.colon_principal(&c.x(n), budget)?.equals(&c.j_ideal(n - 2), budget)? } else { true };
    let pass = filtration.iter().all(|(_, a, b)| a == b) && quotient_length.0 == quotient_length.1 && colon_by_xn;
    Ok(MultiplicityReport { n, filtration, quotient_length, colon_by_xn, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct ColonReport {
    pub n: usize,
    /// (J_{n-1} : f_n) = (x_n, x_{n-1}^{n-1}).
    pub colon_equal: bool,
    /// (x_n, J_{n-1}) = (x_n, x_{n-1}^{n-1}).
    pub sum_equal: bool,
    /// (x_n, x_{n-1}^{n-1}) ⊆ (J_{n-1} : f_n) from the displayed relation.
    pub containment: bool,
    pub pass: bool,
}

pub fn colon_claim_check(n: usize, budget: &Budget) -> Result<ColonReport> {
    if n > 5 {
        return Err(AlgebraError::Invalid("colon check supports n <= 5".into()));
    }
    let c = subhankel_case(n)?;
    let top = c.j_ideal(n - 1);
    let target = Ideal::new(c.ring(), vec![c.x(n), c.x(n - 1).pow((n - 1) as i64)?]);
    let colon = top.colon_principal(&c.partials[n], budget)?;
    let colon_equal = colon.equals(&target, budget)?;
    let mut g = top.gens().to_vec();
    g.push(c.x(n));
    let sum_equal = Ideal::new(c.ring(), g).equals(&target, budget)?;
    let containment = colon.contains_ideal(&target, budget)?;
    Ok(ColonReport { n, colon_equal, sum_equal, containment, pass: colon_equal && sum_equal && containment })
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub n: usize,
    pub betti: BettiTable,
    pub betti_expected: bool,
    pub numerator: Vec<i64>,
    pub numerator_expected: Vec<i64>,
    pub multiplicity: (i64, i64),
    pub radical_is_p: bool,
    /// A form h with (J : h) = (x_{n-2}, x_{n-1}, x_n).
    pub embedded_witness: Option<String>,
    /// Radical of the ideal of entries of the last differential contains (x_{n-2}, x_{n-1}, x_n).
    pub tail_radical: bool,
    pub primary_component: bool,
    pub pass: bool,
}

/// Betti numbers 1; (n-1)^{n+1}; n^n, 2(n-1); 2n-1.
pub fn expected_betti(n: usize) -> BettiTable {
    let mut t = BettiTable { entries: Default::default(), truncated: false };
    let n32 = n as u32;
    for (k, v) in [((0, 0), 1), ((1, n32 - 1), n + 1), ((2, n32), n), ((3, 2 * n32 - 1), 1)] {
        *t.entries.entry(k).or_insert(0) += v;
    }
    *t.entries.entry((2, 2 * n32 - 2)).or_insert(0) += 1;
    t
}

/// 1 - (n+1)t^{n-1} + t^{2n-2} + n t^n - t^{2n-1}.
pub fn expected_numerator(n: usize) -> Vec<i64> {
    let mut s = vec![0i64; 2 * n];
    s[0] += 1;
    s[n - 1] -= (n + 1) as i64;
    s[2 * n - 2] += 1;
    s[n] += n as i64;
    s[2 * n - 1] -= 1;
    s
}

pub fn resolution_and_ass_check(n: usize, budget: &Budget) -> Result<ResolutionReport> {
    if !(3..=5).contains(&n) {
        return Err(AlgebraError::Invalid("resolution check supports 3 <= n <= 5".into()));
    }
    let c = subhankel_case(n)?;
    let ring = c.ring().clone();
    let j = c.gradient_ideal();
    let betti = graded_betti(&j, 6, budget)?;
    let betti_expected = betti == expected_betti(n);
    let h = j.hilbert_data(budget)?;
    let numerator_expected = expected_numerator(n);
    let multiplicity = (h.multiplicity, binom2(n - 1, 2) as i64);

    let p = Ideal::new(&ring, vec![c.x(n - 1), c.x(n)]);
    let radical_is_p =
        j.radical_contains(&c.x(n - 1), budget)? && j.radical_contains(&c.x(n), budget)? && p.contains_ideal(&j, budget)?;

    let q = Ideal::new(&ring, vec![c.x(n - 2), c.x(n - 1), c.x(n)]);
    let candidates = j.colon(&q, budget)?;
    let mut witness = None;
    for g in candidates.gens() {
        if g.degree().is_none_or(|d| d as usize > 2 * n) || j.contains(g, budget)? {
            continue;
        }
        if j.colon_principal(g, budget)?.equals(&q, budget)? {
            witness = Some(g.to_text());
            break;
        }
    }

    let tail = tail_entries(&c, budget)?;
    let tail_ideal = Ideal::new(&ring, tail);
    let mut tail_radical = true;
    for v in [n - 2, n - 1, n] {
        tail_radical &= tail_ideal.radical_contains(&c.x(v), budget)?;
    }

    let jn2 = c.j_ideal(n - 2);
    let primary_component = jn2.contains_ideal(&j, budget)? && jn2.hilbert_data(budget)?.multiplicity == h.multiplicity;

    let pass = betti_expected
        && h.numerator == numerator_expected
        && multiplicity.0 == multiplicity.1
        && radical_is_p
        && witness.is_some()
        && tail_radical
        && primary_component;
    Ok(ResolutionReport {
        n,
        betti,
        betti_expected,
        numerator: h.numerator,
        numerator_expected,
        multiplicity,
        radical_is_p,
        embedded_witness: witness,
        tail_radical,
        primary_component,
        pass,
    })
}

/// Entries of the last map of the minimal resolution of R/J.
pub fn tail_entries(c: &SubHankelCase, budget: &Budget) -> Result<Vec<QPoly>> {
    let first = first_syzygy_module(&c.partials, budget)?;
    let second = minimalize(&module_syzygies(c.ring(), &first.target_degrees, &first.columns, budget)?, budget)?;
    Ok(second.columns.iter().flatten().filter(|e| !e.is_zero()).cloned().collect())
}

/// The 1-forms g_1..g_n of the symmetric algebra and their sign convention.
pub fn symmetric_linear_forms(c: &SubHankelCase) -> Vec<Vec<QPoly>> {
    let n = c.n;
    let ring = c.ring();
    let mut out = Vec::new();
    for i in 1..n {
        let col = hilbert_burch_matrix(c, i).swap_remove(0);
        let mut v: Vec<QPoly> = col;
        v.resize(n + 1, ring.zero());
        out.push(v);
    }
    let mut g: Vec<QPoly> = (0..n - 1).map(|k| c.x(k).scale(&Q::int((n - 1 - k) as i64))).collect();
    g.push(ring.zero());
    g.push(-&c.x(n));
    out.push(g);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SubHankelLinearType {
    pub n: usize,
    pub status: LinearType,
    /// The forms g_1..g_n are syzygies and span the linear syzygies.
    pub linear_forms_match: bool,
    /// The remaining generator has y_n-coefficient c·x_{n-1}^{n-1} modulo x_n.
    pub last_generator_shape: bool,
    pub millis: u128,
}

pub fn subhankel_linear_type_check(n: usize, budget: &Budget) -> Result<SubHankelLinearType> {
    if !(2..=5).contains(&n) {
        return Err(AlgebraError::Invalid("linear type check supports n <= 5".into()));
    }
    let c = subhankel_case(n)?;
    let rep = linear_type_check(&c.partials, false, budget);
    let syz = first_syzygy_module(&c.partials, budget)?;
    let mine = symmetric_linear_forms(&c);
    let lin = syz.linear_part();
    let all_syz = mine.iter().all(|g| is_syzygy(g, &c.partials));
    let linear_forms_match = all_syz && lin.ncols() == n && same_k_span(&lin.columns, &mine);
    let last_generator_shape = syz
        .columns
        .iter()
        .zip(&syz.column_degrees)
        .filter(|(_, &d)| d == syz.target_degrees[0] + n as u32 - 1)
        .any(|(col, _)| {
            let lead = &col[n];
            let xn1 = Monomial::var(n + 1, n - 1, (n - 1) as u16);
            let reduced: Vec<_> = lead.terms().iter().filter(|(m, _)| m.exp(n) == 0).collect();
            reduced.len() == 1 && reduced[0].0 == xn1
        });
    Ok(SubHankelLinearType { n, status: rep.status, linear_forms_match, last_generator_shape, millis: rep.millis })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_shapes() {
        let c = subhankel_case(3).unwrap();
        assert_eq!(c.partials.len(), 4);
        assert_eq!(c.partials[0], c.x(3).pow(2).unwrap().scale(&Q::int(-1)));
        let c4 = subhankel_case(4).unwrap();
        assert!(c4.partials[0].support_vars().iter().all(|&v| v >= 3));
        assert!(subhankel_case(7).is_err());
    }

    #[test]
    fn recurrences() {
        for n in 2..=5 {
            let r = recurrence_check(n).unwrap();
            assert!(r.pass, "{r:?}");
        }
        let c = subhankel_case(3).unwrap();
        assert_eq!(&c.x(3) * &c.partials[1], (&c.x(2) * &c.partials[0]).scale(&Q::int(-2)));
    }

    #[test]
    fn gcd_powers() {
        let b = Budget::seconds(60);
        assert!(gcd_power_check(3, 0, &b).unwrap().pass);
        let r = gcd_power_check(4, 2, &b).unwrap();
        assert_eq!((r.exponent, r.pass), (1, true));
        let r = gcd_power_check(4, 3, &b).unwrap();
        assert_eq!((r.exponent, r.pass), (0, true));
    }

    #[test]
    fn hilbert_burch() {
        let b = Budget::seconds(60);
        for n in 3..=4 {
            assert_eq!(hilbert_burch_check(n, &b).unwrap().pass, Some(true));
        }
        let c = subhankel_case(4).unwrap();
        let phi = hilbert_burch_matrix(&c, 3);
        assert_eq!(phi.len(), 3);
        assert_eq!(phi[0][3], c.x(4));
        assert!(phi[1][3].is_zero() && phi[2][3].is_zero());
    }

    #[test]
    fn multiplicities_and_colons() {
        let b = Budget::seconds(60);
        let r = multiplicity_filtration_check(4, &b).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(r.filtration.contains(&(2, 3, 3)));
        assert!(colon_claim_check(3, &b).unwrap().pass);
        assert!(colon_claim_check(4, &b).unwrap().pass);
    }

    #[test]
    fn resolution_four() {
        let r = resolution_and_ass_check(4, &Budget::seconds(120)).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.numerator, vec![1, 0, 0, -5, 4, 0, 1, -1]);
    }

    #[test]
    fn linear_type_small() {
        for n in 3..=4 {
            let r = subhankel_linear_type_check(n, &Budget::seconds(120)).unwrap();
            assert_eq!(r.status, LinearType::LinearType);
            assert!(r.linear_forms_match && r.last_generator_shape, "{r:?}");
        }
    }
}
