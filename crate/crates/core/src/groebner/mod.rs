//! Ideals and the queries answered through Groebner bases.

pub mod cache;
pub mod engine;
pub mod hilbert;

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use crate::budget::Budget;
use crate::error::{AlgebraError, Result};
use crate::polyring::{Field, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};

pub use cache::DiskCache;
pub use engine::TermOrder;
pub use hilbert::{hilbert_numerator, HilbertData};

use engine::{internal_to_poly, to_internal, Engine, Prepared, Term};

/// Reduced Groebner basis for one monomial order.
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    order: TermOrder,
    internal: Vec<Vec<Term<F::Elem>>>,
    prepared: Prepared<F::Elem>,
    polys: Vec<Polynomial<F>>,
    steps: u64,
}

impl<F: Field> GroebnerBasis<F> {
    fn from_internal(ring: Ring<F>, order: TermOrder, internal: Vec<Vec<Term<F::Elem>>>, steps: u64) -> Self {
        let polys = internal.iter().map(|v| internal_to_poly(v, &ring)).collect();
        let prepared = Prepared::new(&internal);
        GroebnerBasis { ring, order, internal, prepared, polys, steps }
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }
    pub fn order(&self) -> &MonomialOrder {
        &self.order.mono
    }
    pub fn steps(&self) -> u64 {
        self.steps
    }
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|v| v.last().unwrap().1).collect()
    }
    pub fn is_unit(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].len() == 1 && self.internal[0][0].1.is_one()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if f.ring() != &self.ring {
            return Err(AlgebraError::MixedRings);
        }
        let budget = Budget::unlimited();
        let mut eng = Engine::new(self.ring.field(), &self.order, &budget);
        let r = eng.normal_form(to_internal(f, 0, &self.order), &self.prepared)?;
        Ok(internal_to_poly(&r, &self.ring))
    }

    pub fn reduces_to_zero(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Certificate independent of the run: every S-polynomial of the basis
    /// reduces to zero.
    pub fn verify(&self) -> Result<bool> {
        let n = self.internal.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (&self.polys[i], &self.polys[j]);
                let (la, lb) = (self.internal[i].last().unwrap(), self.internal[j].last().unwrap());
                let l = la.1.lcm(&lb.1);
                let f = self.ring.field();
                let qa = la.1.quotient_of(&l).unwrap();
                let qb = lb.1.quotient_of(&l).unwrap();
                let s = &a.mul_term(&qa, &f.inv(&la.2).unwrap()) - &b.mul_term(&qb, &f.inv(&lb.2).unwrap());
                if !self.reduces_to_zero(&s)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Runs Buchberger on polynomials for a monomial order.
pub fn compute_gb<F: Field>(
    ring: &Ring<F>,
    gens: &[Polynomial<F>],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis<F>> {
    let tord = TermOrder::ideal(order.clone());
    let internal: Vec<_> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_internal(g, 0, &tord)).collect();
    let mut eng = Engine::new(ring.field(), &tord, budget);
    let gb = eng.groebner(internal)?;
    let steps = eng.steps();
    Ok(GroebnerBasis::from_internal(ring.clone(), tord, gb, steps))
}

/// Generators plus Groebner bases cached per order (in memory and,
/// optionally, on disk).
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
    disk: Option<Arc<DiskCache>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
            disk: self.disk.clone(),
        }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped; duplicates (up to scalars) are kept once.
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Self {
        let mut seen = HashSet::new();
        let gens = gens.into_iter().filter(|g| !g.is_zero() && seen.insert(g.monic())).collect();
        Ideal { ring: ring.clone(), gens, cache: Mutex::new(HashMap::new()), disk: None }
    }

    pub fn parse(ring: &Ring<F>, texts: &[&str]) -> Result<Self> {
        let gens = texts.iter().map(|t| ring.parse(t)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens))
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Ideal::new(ring, vec![ring.one()])
    }

    /// The ideal of all variables.
    pub fn maximal(ring: &Ring<F>) -> Self {
        Ideal::new(ring, ring.vars())
    }

    pub fn with_disk_cache(mut self, disk: Option<Arc<DiskCache>>) -> Self {
        self.disk = disk;
        self
    }
    pub fn disk_cache(&self) -> Option<&Arc<DiskCache>> {
        self.disk.as_ref()
    }

    fn derived(&self, gens: Vec<Polynomial<F>>) -> Self {
        Ideal::new(&self.ring, gens).with_disk_cache(self.disk.clone())
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }
    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    fn cache_key(&self, order: &MonomialOrder) -> Option<String> {
        let names_ok = self.ring.names().iter().all(|n| {
            n == "t" || (n.len() > 1 && (n.starts_with('x') || n.starts_with('y')) && n[1..].bytes().all(|b| b.is_ascii_digit()))
        });
        if !names_ok {
            return None;
        }
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_text()).collect();
        Some(format!(
            "{:?}|{}|{}|{}",
            self.ring.field(),
            self.ring.names().join(","),
            order.label(),
            gens.join(";")
        ))
    }

    pub fn groebner_basis(&self, order: &MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.cache.lock().unwrap().get(order) {
            return Ok(gb.clone());
        }
        let key = self.disk.as_ref().and_then(|_| self.cache_key(order));
        if let (Some(disk), Some(key)) = (&self.disk, &key) {
            if let Some(lines) = disk.load(key) {
                let polys: Result<Vec<_>> = lines.iter().map(|l| self.ring.parse(l)).collect();
                if let Ok(polys) = polys {
                    let tord = TermOrder::ideal(order.clone());
                    let mut internal: Vec<_> = polys.iter().map(|p| to_internal(p, 0, &tord)).collect();
                    for v in internal.iter_mut() {
                        let lc = v.last().unwrap().2.clone();
                        let inv = self.ring.field().inv(&lc).unwrap();
                        for t in v.iter_mut() {
                            t.2 = self.ring.field().mul(&t.2, &inv);
                        }
                    }
                    let gb = Arc::new(GroebnerBasis::from_internal(self.ring.clone(), tord, internal, 0));
                    self.cache.lock().unwrap().insert(order.clone(), gb.clone());
                    return Ok(gb);
                }
            }
        }
        let gb = Arc::new(compute_gb(&self.ring, &self.gens, order, budget)?);
        if let (Some(disk), Some(key)) = (&self.disk, &key) {
            let lines: Vec<String> = gb.polys().iter().map(|p| p.to_text()).collect();
            disk.store(key, &lines)?;
        }
        self.cache.lock().unwrap().insert(order.clone(), gb.clone());
        Ok(gb)
    }

    /// Basis for the default grevlex order.
    pub fn gb(&self, budget: &Budget) -> Result<Arc<GroebnerBasis<F>>> {
        self.groebner_basis(&MonomialOrder::grevlex(), budget)
    }

    pub fn normal_form(&self, f: &Polynomial<F>, order: &MonomialOrder, budget: &Budget) -> Result<Polynomial<F>> {
        self.groebner_basis(order, budget)?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial<F>, budget: &Budget) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        self.gb(budget)?.reduces_to_zero(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        let gb = self.gb(budget)?;
        for g in &other.gens {
            if !gb.reduces_to_zero(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        Ok(self.contains_ideal(other, budget)? && other.contains_ideal(self, budget)?)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.gens.is_empty() {
            return Ok(false);
        }
        Ok(self.gb(budget)?.is_unit())
    }

    /// Leading monomials of the reduced basis for `order`.
    pub fn initial_ideal(&self, order: &MonomialOrder, budget: &Budget) -> Result<Vec<Monomial>> {
        if self.gens.is_empty() {
            return Ok(Vec::new());
        }
        Ok(self.groebner_basis(order, budget)?.leading_monomials())
    }

    pub fn hilbert_data(&self, budget: &Budget) -> Result<HilbertData> {
        self.hilbert_data_for(&MonomialOrder::grevlex(), budget)
    }

    pub fn hilbert_data_for(&self, order: &MonomialOrder, budget: &Budget) -> Result<HilbertData> {
        let lm = self.initial_ideal(order, budget)?;
        Ok(HilbertData::from_numerator(self.ring.nvars(), hilbert_numerator(&lm)))
    }

    /// Krull dimension of R/I.
    pub fn dimension(&self, budget: &Budget) -> Result<i64> {
        Ok(self.hilbert_data(budget)?.dimension)
    }

    pub fn height(&self, budget: &Budget) -> Result<i64> {
        Ok(self.ring.nvars() as i64 - self.dimension(budget)?)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        self.derived(g)
    }

    pub fn product(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        self.derived(g)
    }

    pub fn power(&self, k: u32) -> Ideal<F> {
        let mut acc = Ideal::unit(&self.ring).with_disk_cache(self.disk.clone());
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// I ∩ k[vars not in `vars`], returned in the same ring.
    pub fn eliminate(&self, vars: &[usize], budget: &Budget) -> Result<Ideal<F>> {
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = vars.to_vec();
        perm.extend((0..n).filter(|i| !vars.contains(i)));
        let order = MonomialOrder::elimination(vars.len()).with_perm(perm);
        let gb = compute_gb(&self.ring, &self.gens, &order, budget)?;
        let mask: u32 = vars.iter().fold(0, |a, &v| a | 1 << v);
        let kept = gb.polys().iter().filter(|p| p.terms().iter().all(|(m, _)| m.support_mask() & mask == 0)).cloned();
        Ok(self.derived(kept.collect()))
    }

    /// Ring with one extra variable placed first, and the embedding map.
    fn tag_ring(&self) -> (Ring<F>, Vec<usize>) {
        let mut name = "t".to_string();
        while self.ring.index_of(&name).is_some() {
            name.push('_');
        }
        let mut names = vec![name];
        names.extend(self.ring.names().iter().cloned());
        let r = PolyRing::new(self.ring.field().clone(), names).expect("too many variables for a tag");
        let map: Vec<usize> = (1..=self.ring.nvars()).collect();
        (r, map)
    }

    pub fn intersect(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(self.derived(Vec::new()));
        }
        let (tr, map) = self.tag_ring();
        let t = tr.var(0);
        let one_minus_t = &tr.one() - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.remap(&tr, &map));
        }
        for h in &other.gens {
            gens.push(&one_minus_t * &h.remap(&tr, &map));
        }
        let gb = compute_gb(&tr, &gens, &MonomialOrder::elimination(1), budget)?;
        let keep: Vec<usize> = (1..=self.ring.nvars()).collect();
        let out = gb.polys().iter().filter_map(|p| p.restrict_vars(&self.ring, &keep)).collect();
        Ok(self.derived(out))
    }

    /// I : (f).
    pub fn colon_principal(&self, f: &Polynomial<F>, budget: &Budget) -> Result<Ideal<F>> {
        if f.is_zero() {
            return Err(AlgebraError::Invalid("colon by the zero ideal".into()));
        }
        if self.contains(f, budget)? {
            return Ok(Ideal::unit(&self.ring).with_disk_cache(self.disk.clone()));
        }
        let inter = self.intersect(&self.derived(vec![f.clone()]), budget)?;
        let mut out = Vec::with_capacity(inter.gens.len());
        for g in &inter.gens {
            out.push(g.exact_divide(f)?.ok_or_else(|| AlgebraError::Invalid("intersection element not divisible".into()))?);
        }
        Ok(self.derived(out))
    }

    /// I : J as the intersection of the colons by the generators of J.
    pub fn colon(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
        if other.gens.is_empty() {
            return Err(AlgebraError::Invalid("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let c = self.colon_principal(g, budget)?;
            acc = Some(match acc {
                None => c,
                Some(a) if a.is_unit(budget)? => c,
                Some(a) if c.is_unit(budget)? => a,
                Some(a) => a.intersect(&c, budget)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// I : J^∞ by iterating the colon until it stabilizes; also returns the
    /// number of colon steps taken.
    pub fn saturation(&self, other: &Ideal<F>, budget: &Budget) -> Result<(Ideal<F>, usize)> {
        let mut cur = self.clone();
        let mut steps = 0;
        loop {
            let next = cur.colon(other, budget)?;
            steps += 1;
            if cur.contains_ideal(&next, budget)? {
                return Ok((cur, steps));
            }
            cur = next;
        }
    }

    /// f ∈ √I, decided by 1 ∈ I + (1 - w f).
    pub fn radical_contains(&self, f: &Polynomial<F>, budget: &Budget) -> Result<bool> {
        let (tr, map) = self.tag_ring();
        let w = tr.var(0);
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| g.remap(&tr, &map)).collect();
        gens.push(&tr.one() - &(&w * &f.remap(&tr, &map)));
        Ok(compute_gb(&tr, &gens, &MonomialOrder::grevlex(), budget)?.is_unit())
    }

    /// Generators that are not redundant given the others (greedy, by membership).
    pub fn prune_generators(&self, budget: &Budget) -> Result<Ideal<F>> {
        let mut keep: Vec<Polynomial<F>> = self.gens.clone();
        keep.sort_by_key(|g| std::cmp::Reverse(g.degree()));
        let mut i = 0;
        while i < keep.len() {
            let rest: Vec<_> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            if Ideal::new(&self.ring, rest.clone()).contains(&keep[i], budget)? {
                keep = rest;
            } else {
                i += 1;
            }
        }
        keep.sort_by_key(|g| g.degree());
        Ok(self.derived(keep))
    }
}

/// Rees ideal of forms f0..fn, in variables x (the ring of the forms) and y0..yn.
pub struct ReesIdeal<F: Field> {
    pub ideal: Ideal<F>,
    /// Number of x variables; y_i sits at position nx + i.
    pub nx: usize,
    pub ny: usize,
}

impl<F: Field> ReesIdeal<F> {
    pub fn y_degree(&self, p: &Polynomial<F>) -> Option<u32> {
        let degs: HashSet<u32> =
            p.terms().iter().map(|(m, _)| (self.nx..self.nx + self.ny).map(|i| m.exp(i) as u32).sum()).collect();
        (degs.len() == 1).then(|| *degs.iter().next().unwrap())
    }
    pub fn x_degree(&self, p: &Polynomial<F>) -> Option<u32> {
        let degs: HashSet<u32> =
            p.terms().iter().map(|(m, _)| (0..self.nx).map(|i| m.exp(i) as u32).sum()).collect();
        (degs.len() == 1).then(|| *degs.iter().next().unwrap())
    }
    /// Generators of y-degree s.
    pub fn of_y_degree(&self, s: u32) -> Vec<Polynomial<F>> {
        self.ideal.gens().iter().filter(|g| self.y_degree(g) == Some(s)).cloned().collect()
    }
}

/// Ring k[x.., y0..yn] for forms in `ring`.
pub fn xy_ring<F: Field>(ring: &Ring<F>, ny: usize) -> Result<Ring<F>> {
    let mut names: Vec<String> = ring.names().to_vec();
    names.extend((0..ny).map(|i| format!("y{i}")));
    PolyRing::new(ring.field().clone(), names)
}

/// Kernel of y_i ↦ t·f_i, by eliminating t from (y_i - t f_i) with t first.
pub fn rees_ideal<F: Field>(forms: &[Polynomial<F>], budget: &Budget) -> Result<ReesIdeal<F>> {
    let ring = forms.first().ok_or_else(|| AlgebraError::Invalid("no forms".into()))?.ring().clone();
    let nx = ring.nvars();
    let ny = forms.len();
    let xy = xy_ring(&ring, ny)?;
    let mut names = vec!["t".to_string()];
    names.extend(xy.names().iter().cloned());
    let tr = PolyRing::new(ring.field().clone(), names)?;
    let map_x: Vec<usize> = (1..=nx).collect();
    let t = tr.var(0);
    let gens: Vec<Polynomial<F>> =
        forms.iter().enumerate().map(|(i, f)| &tr.var(1 + nx + i) - &(&t * &f.remap(&tr, &map_x))).collect();
    let gb = compute_gb(&tr, &gens, &MonomialOrder::elimination(1), budget)?;
    let keep: Vec<usize> = (1..=nx + ny).collect();
    let out: Vec<Polynomial<F>> = gb.polys().iter().filter_map(|p| p.restrict_vars(&xy, &keep)).collect();
    Ok(ReesIdeal { ideal: Ideal::new(&xy, out), nx, ny })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PolyRing, Rationals};

    fn ring(n: usize) -> Ring<Rationals> {
        PolyRing::xs(Rationals, n)
    }

    fn hankel3_gradient(r: &Ring<Rationals>) -> Ideal<Rationals> {
        let f = r.parse("x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3").unwrap();
        Ideal::new(r, f.gradient())
    }

    #[test]
    fn principal_and_linear() {
        let r = ring(3);
        let b = Budget::unlimited();
        let i = Ideal::parse(&r, &["x0*x2 - x1^2"]).unwrap();
        assert_eq!(i.gb(&b).unwrap().polys(), &[r.parse("x1^2 - x0*x2").unwrap()]);
        let j = Ideal::parse(&r, &["x0 + x1", "x0 - x1"]).unwrap();
        let gb = j.gb(&b).unwrap();
        assert!(gb.polys().contains(&r.var(0)) && gb.polys().contains(&r.var(1)));
    }

    #[test]
    fn hankel_memberships() {
        let r = ring(5);
        let b = Budget::unlimited();
        let j = hankel3_gradient(&r);
        let f = r.parse("x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3").unwrap();
        assert!(j.contains(&f, &b).unwrap());
        assert!(!j.contains(&r.parse("x2^2 - x1*x3").unwrap(), &b).unwrap());
        // Δ14 = x0x4 - x1x3 (columns 1 and 4 of the 2x4 Hankel matrix)
        assert!(j.contains(&r.parse("x2*x0*x4 - x2*x1*x3").unwrap(), &b).unwrap());
        assert!(j.gb(&b).unwrap().verify().unwrap());
    }

    #[test]
    fn elimination_of_parabola() {
        let r = PolyRing::new(Rationals, ["t", "x0", "x1"]).unwrap();
        let b = Budget::unlimited();
        let i = Ideal::parse(&r, &["x0 - t", "x1 - t^2"]).unwrap();
        let e = i.eliminate(&[0], &b).unwrap();
        assert!(e.equals(&Ideal::parse(&r, &["x1 - x0^2"]).unwrap(), &b).unwrap());
    }

    #[test]
    fn intersection_and_colon() {
        let r = ring(2);
        let b = Budget::unlimited();
        let i = Ideal::parse(&r, &["x0"]).unwrap();
        let j = Ideal::parse(&r, &["x1"]).unwrap();
        let k = i.intersect(&j, &b).unwrap();
        assert!(k.equals(&Ideal::parse(&r, &["x0*x1"]).unwrap(), &b).unwrap());
        let c = k.colon_principal(&r.var(1), &b).unwrap();
        assert!(c.equals(&i, &b).unwrap());
        let sq = Ideal::parse(&r, &["x0^3", "x0^2*x1"]).unwrap();
        let (sat, _) = sq.saturation(&Ideal::maximal(&r), &b).unwrap();
        assert!(sat.equals(&Ideal::parse(&r, &["x0^2"]).unwrap(), &b).unwrap());
    }

    #[test]
    fn radical_membership_basics() {
        let r = ring(2);
        let b = Budget::unlimited();
        let i = Ideal::parse(&r, &["x1^2"]).unwrap();
        assert!(i.radical_contains(&r.var(1), &b).unwrap());
        let i = Ideal::parse(&r, &["x1"]).unwrap();
        assert!(!i.radical_contains(&r.var(0), &b).unwrap());
    }

    #[test]
    fn rees_of_two_variables() {
        let r = ring(2);
        let b = Budget::unlimited();
        let rees = rees_ideal(&r.vars(), &b).unwrap();
        let xy = rees.ideal.ring().clone();
        let expect = Ideal::parse(&xy, &["x0*y1 - x1*y0"]).unwrap();
        assert!(rees.ideal.equals(&expect, &b).unwrap());
    }

    #[test]
    fn hankel_quotient_multiplicities() {
        let r = ring(5);
        let b = Budget::unlimited();
        let p = Ideal::parse(
            &r,
            &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x0*x4 - x1*x3", "x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"],
        )
        .unwrap();
        let h = p.hilbert_data(&b).unwrap();
        assert_eq!((h.codimension, h.multiplicity), (3, 4));
        let hl = p.hilbert_data_for(&MonomialOrder::lex(), &b).unwrap();
        assert_eq!((hl.dimension, hl.multiplicity), (h.dimension, h.multiplicity));
    }

    #[test]
    fn timeout_is_reported() {
        let r = ring(5);
        let j = hankel3_gradient(&r);
        let b = Budget::unlimited().step_cap(Some(1));
        let err = compute_gb(&r, j.gens(), &MonomialOrder::lex(), &b).err().unwrap();
        assert!(err.is_timeout());
    }
}
