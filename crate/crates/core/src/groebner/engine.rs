//! Buchberger's algorithm on vectors of polynomials (ideals are the rank-1
//! case), with the Gebauer-Moeller pair criteria, sugar-first pair selection
//! and geobucket reduction.
//!
//! Internal vectors keep their terms in ascending order so the leading term
//! is the last element.

use std::cmp::Ordering;

use crate::budget::Budget;
use crate::error::Result;
use crate::polyring::{Field, Monomial, MonomialOrder, OrderKind, Polynomial, Ring};

pub type Term<E> = (u32, Monomial, E);

/// Position-over-term order: component 0 is the largest component, and
/// monomials inside a component are compared with `mono`.
#[derive(Clone, Debug)]
pub struct TermOrder {
    pub mono: MonomialOrder,
    /// Degree shift of each component, used for sugar.
    pub shifts: Vec<u32>,
}

impl TermOrder {
    pub fn ideal(mono: MonomialOrder) -> Self {
        TermOrder { mono, shifts: vec![0] }
    }

    #[inline]
    pub fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.mono.cmp(a.1, b.1))
    }

    fn mdeg(&self, m: &Monomial) -> u64 {
        match &self.mono.kind {
            OrderKind::WeightedGRevLex(w) => match &self.mono.perm {
                None => m.weighted_degree(w),
                Some(p) => p.iter().zip(w).map(|(&v, &wi)| m.exp(v) as u64 * wi as u64).sum(),
            },
            _ => m.degree() as u64,
        }
    }

    fn tdeg(&self, comp: u32, m: &Monomial) -> u64 {
        self.shifts.get(comp as usize).copied().unwrap_or(0) as u64 + self.mdeg(m)
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }
}

/// Converts a polynomial into ascending internal form in component `comp`.
pub fn to_internal<F: Field>(p: &Polynomial<F>, comp: u32, ord: &TermOrder) -> Vec<Term<F::Elem>> {
    let mut v: Vec<Term<F::Elem>> = p.terms().iter().map(|(m, c)| (comp, *m, c.clone())).collect();
    if !ord.mono.is_default() {
        v.sort_unstable_by(|a, b| ord.cmp((a.0, &a.1), (b.0, &b.1)));
    } else {
        v.reverse();
    }
    v
}

/// Converts a vector of polynomials (one per component) into internal form.
pub fn vector_to_internal<F: Field>(v: &[Polynomial<F>], ord: &TermOrder) -> Vec<Term<F::Elem>> {
    let mut out: Vec<Term<F::Elem>> = Vec::new();
    for (c, p) in v.iter().enumerate() {
        out.extend(p.terms().iter().map(|(m, e)| (c as u32, *m, e.clone())));
    }
    out.sort_unstable_by(|a, b| ord.cmp((a.0, &a.1), (b.0, &b.1)));
    out
}

/// Splits internal form back into `rank` polynomials.
pub fn internal_to_vector<F: Field>(v: &[Term<F::Elem>], ring: &Ring<F>, rank: usize) -> Vec<Polynomial<F>> {
    let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); rank];
    for (c, m, e) in v {
        parts[*c as usize].push((*m, e.clone()));
    }
    parts.into_iter().map(|t| ring.from_terms(t)).collect()
}

pub fn internal_to_poly<F: Field>(v: &[Term<F::Elem>], ring: &Ring<F>) -> Polynomial<F> {
    ring.from_terms(v.iter().map(|(_, m, e)| (*m, e.clone())))
}

struct GeoBucket<'a, F: Field> {
    buckets: Vec<Vec<Term<F::Elem>>>,
    ord: &'a TermOrder,
    field: &'a F,
}

impl<'a, F: Field> GeoBucket<'a, F> {
    fn new(ord: &'a TermOrder, field: &'a F) -> Self {
        GeoBucket { buckets: Vec::new(), ord, field }
    }

    fn merge(&self, a: Vec<Term<F::Elem>>, b: Vec<Term<F::Elem>>) -> Vec<Term<F::Elem>> {
        if a.is_empty() {
            return b;
        }
        if b.is_empty() {
            return a;
        }
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = b.into_iter().peekable();
        loop {
            let o = match (ia.peek(), ib.peek()) {
                (Some(x), Some(y)) => self.ord.cmp((x.0, &x.1), (y.0, &y.1)),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match o {
                Ordering::Less => out.push(ia.next().unwrap()),
                Ordering::Greater => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let x = ia.next().unwrap();
                    let y = ib.next().unwrap();
                    let s = self.field.add(&x.2, &y.2);
                    if !self.field.is_zero(&s) {
                        out.push((x.0, x.1, s));
                    }
                }
            }
        }
        out
    }

    fn add(&mut self, v: Vec<Term<F::Elem>>) {
        if v.is_empty() {
            return;
        }
        let mut i = 0;
        let mut cap = 8usize;
        while v.len() > cap {
            i += 1;
            cap *= 4;
        }
        let mut cur = v;
        loop {
            if self.buckets.len() <= i {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            let existing = std::mem::take(&mut self.buckets[i]);
            cur = self.merge(existing, cur);
            if cur.len() <= cap {
                self.buckets[i] = cur;
                return;
            }
            i += 1;
            cap *= 4;
        }
    }

    fn pop_leading(&mut self) -> Option<Term<F::Elem>> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                if let Some(t) = b.last() {
                    best = match best {
                        None => Some(i),
                        Some(j) => {
                            let u = self.buckets[j].last().unwrap();
                            if self.ord.cmp((t.0, &t.1), (u.0, &u.1)) == Ordering::Greater {
                                Some(i)
                            } else {
                                Some(j)
                            }
                        }
                    };
                }
            }
            let j = best?;
            let mut lead = self.buckets[j].pop().unwrap();
            for i in 0..self.buckets.len() {
                if i == j {
                    continue;
                }
                if let Some(t) = self.buckets[i].last() {
                    if t.0 == lead.0 && t.1 == lead.1 {
                        let t = self.buckets[i].pop().unwrap();
                        lead.2 = self.field.add(&lead.2, &t.2);
                    }
                }
            }
            if !self.field.is_zero(&lead.2) {
                return Some(lead);
            }
        }
    }

    /// Remaining terms in ascending order.
    fn into_sorted(self) -> Vec<Term<F::Elem>> {
        let mut acc: Vec<Term<F::Elem>> = Vec::new();
        let ord = self.ord;
        let field = self.field;
        let helper = GeoBucket::<F> { buckets: Vec::new(), ord, field };
        for b in self.buckets {
            acc = helper.merge(acc, b);
        }
        acc
    }
}

struct Elem<E> {
    terms: Vec<Term<E>>,
    comp: u32,
    lm: Monomial,
    sugar: u64,
    active: bool,
}

struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    sugar: u64,
}

/// One Groebner computation.
pub struct Engine<'a, F: Field> {
    field: &'a F,
    ord: &'a TermOrder,
    budget: &'a Budget,
    steps: u64,
    reductions: u64,
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(field: &'a F, ord: &'a TermOrder, budget: &'a Budget) -> Self {
        Engine { field, ord, budget, steps: 0, reductions: 0 }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    fn lead(v: &[Term<F::Elem>]) -> &Term<F::Elem> {
        v.last().unwrap()
    }

    fn make_monic(&self, v: &mut [Term<F::Elem>]) {
        let lc = Self::lead(v).2.clone();
        if self.field.is_one(&lc) {
            return;
        }
        let inv = self.field.inv(&lc).unwrap();
        for t in v.iter_mut() {
            t.2 = self.field.mul(&t.2, &inv);
        }
    }

    fn find_divisor(&self, comp: u32, m: &Monomial, basis: &[Elem<F::Elem>]) -> Option<usize> {
        basis.iter().position(|g| g.active && g.comp == comp && g.lm.divides(m))
    }

    /// Reduces `p` by the active elements of `basis`. With `full` every term
    /// is reduced, otherwise only the leading one.
    fn reduce(&mut self, p: Vec<Term<F::Elem>>, basis: &[Elem<F::Elem>], full: bool) -> Result<Vec<Term<F::Elem>>> {
        let mut bucket = GeoBucket::new(self.ord, self.field);
        bucket.add(p);
        let mut done_desc: Vec<Term<F::Elem>> = Vec::new();
        while let Some((c, m, a)) = bucket.pop_leading() {
            self.reductions += 1;
            if self.reductions.is_multiple_of(16) {
                self.budget.check_time()?;
            }
            match self.find_divisor(c, &m, basis) {
                Some(k) => {
                    let g = &basis[k];
                    let q = g.lm.quotient_of(&m).unwrap();
                    let na = self.field.neg(&a);
                    let tail = &g.terms[..g.terms.len() - 1];
                    let add: Vec<Term<F::Elem>> =
                        tail.iter().map(|(gc, gm, ge)| (*gc, gm.mul(&q), self.field.mul(ge, &na))).collect();
                    bucket.add(add);
                }
                None => {
                    done_desc.push((c, m, a));
                    if !full {
                        let mut rest = bucket.into_sorted();
                        done_desc.reverse();
                        rest.extend(done_desc);
                        return Ok(rest);
                    }
                }
            }
        }
        done_desc.reverse();
        Ok(done_desc)
    }

    fn spoly(&self, a: &Elem<F::Elem>, b: &Elem<F::Elem>, lcm: &Monomial) -> Vec<Term<F::Elem>> {
        let qa = a.lm.quotient_of(lcm).unwrap();
        let qb = b.lm.quotient_of(lcm).unwrap();
        let ta: Vec<_> = a.terms[..a.terms.len() - 1].iter().map(|(c, m, e)| (*c, m.mul(&qa), e.clone())).collect();
        let tb: Vec<_> = b.terms[..b.terms.len() - 1]
            .iter()
            .map(|(c, m, e)| (*c, m.mul(&qb), self.field.neg(e)))
            .collect();
        let helper = GeoBucket::<F>::new(self.ord, self.field);
        helper.merge(ta, tb)
    }

    fn update(&self, basis: &mut [Elem<F::Elem>], pairs: &mut Vec<Pair>, h: usize) {
        let ideal_mode = self.ord.rank() == 1;
        let (hc, hlm, hs) = (basis[h].comp, basis[h].lm, basis[h].sugar);
        let cand: Vec<(usize, Monomial, bool)> = basis
            .iter()
            .enumerate()
            .filter(|(k, g)| *k != h && g.active && g.comp == hc)
            .map(|(k, g)| (k, g.lm.lcm(&hlm), g.lm.is_coprime(&hlm)))
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, c) in cand.iter().enumerate() {
            if ideal_mode && c.2 {
                kept.push(*c);
                continue;
            }
            let dominated =
                cand[idx + 1..].iter().any(|o| o.1.divides(&c.1)) || kept.iter().any(|o| o.1.divides(&c.1));
            if !dominated {
                kept.push(*c);
            }
        }
        pairs.retain(|p| {
            if p.comp != hc || !hlm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lm.lcm(&hlm);
            let lj = basis[p.j].lm.lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });
        for (k, lcm, coprime) in kept {
            if ideal_mode && coprime {
                continue;
            }
            let g = &basis[k];
            let sugar = (hs + self.ord.mdeg(&lcm) - self.ord.mdeg(&hlm))
                .max(g.sugar + self.ord.mdeg(&lcm) - self.ord.mdeg(&g.lm));
            pairs.push(Pair { i: k, j: h, comp: hc, lcm, sugar });
        }
        for (k, g) in basis.iter_mut().enumerate() {
            if k != h && g.active && g.comp == hc && hlm.divides(&g.lm) {
                g.active = false;
            }
        }
    }

    fn select(&self, pairs: &mut Vec<Pair>) -> Option<Pair> {
        if pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.ord.cmp((a.comp, &a.lcm), (b.comp, &b.lcm)) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(pairs.swap_remove(best))
    }

    fn is_unit(&self, v: &[Term<F::Elem>]) -> bool {
        self.ord.rank() == 1 && Self::lead(v).1.is_one()
    }

    /// Reduced Groebner basis of the given elements (internal form, any order).
    pub fn groebner(&mut self, gens: Vec<Vec<Term<F::Elem>>>) -> Result<Vec<Vec<Term<F::Elem>>>> {
        let mut gens: Vec<Vec<Term<F::Elem>>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        for g in gens.iter_mut() {
            g.sort_unstable_by(|a, b| self.ord.cmp((a.0, &a.1), (b.0, &b.1)));
        }
        gens.sort_by(|a, b| {
            let (x, y) = (Self::lead(a), Self::lead(b));
            self.ord.cmp((x.0, &x.1), (y.0, &y.1)).then(a.len().cmp(&b.len()))
        });
        let mut basis: Vec<Elem<F::Elem>> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        for g in gens {
            let sugar = g.iter().map(|t| self.ord.tdeg(t.0, &t.1)).max().unwrap();
            let mut r = self.reduce(g, &basis, true)?;
            if r.is_empty() {
                continue;
            }
            if self.is_unit(&r) {
                return Ok(vec![vec![(0, r[0].1, self.field.one())]]);
            }
            self.make_monic(&mut r);
            self.insert(&mut basis, &mut pairs, r, sugar);
        }
        while let Some(pair) = self.select(&mut pairs) {
            self.steps += 1;
            self.budget.check_steps(self.steps)?;
            let s = self.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm);
            if s.is_empty() {
                continue;
            }
            let mut r = self.reduce(s, &basis, true)?;
            if r.is_empty() {
                continue;
            }
            if self.is_unit(&r) {
                return Ok(vec![vec![(0, r[0].1, self.field.one())]]);
            }
            self.make_monic(&mut r);
            let sugar = pair.sugar.max(r.iter().map(|t| self.ord.tdeg(t.0, &t.1)).max().unwrap());
            self.insert(&mut basis, &mut pairs, r, sugar);
        }
        self.finish(basis)
    }

    fn insert(&self, basis: &mut Vec<Elem<F::Elem>>, pairs: &mut Vec<Pair>, r: Vec<Term<F::Elem>>, sugar: u64) {
        let (comp, lm, _) = *Self::lead(&r);
        basis.push(Elem { terms: r, comp, lm, sugar, active: true });
        let h = basis.len() - 1;
        self.update(basis, pairs, h);
    }

    fn finish(&mut self, mut basis: Vec<Elem<F::Elem>>) -> Result<Vec<Vec<Term<F::Elem>>>> {
        basis.retain(|g| g.active);
        basis.sort_by(|a, b| self.ord.cmp((a.comp, &a.lm), (b.comp, &b.lm)));
        let mut out = Vec::with_capacity(basis.len());
        for k in 0..basis.len() {
            let mut terms = basis[k].terms.clone();
            let lead = terms.pop().unwrap();
            let mut tail = self.reduce(terms, &basis, true)?;
            tail.push(lead);
            out.push(tail);
        }
        Ok(out)
    }

    /// Fully reduces `p` (any term order) by a prepared basis.
    pub fn normal_form(&mut self, p: Vec<Term<F::Elem>>, gb: &Prepared<F::Elem>) -> Result<Vec<Term<F::Elem>>> {
        let mut p = p;
        p.sort_unstable_by(|a, b| self.ord.cmp((a.0, &a.1), (b.0, &b.1)));
        self.reduce(p, &gb.elems, true)
    }
}

/// A finished basis arranged for repeated reduction.
pub struct Prepared<E> {
    elems: Vec<Elem<E>>,
}

impl<E: Clone> Prepared<E> {
    pub fn new(gb: &[Vec<Term<E>>]) -> Self {
        let elems = gb
            .iter()
            .map(|g| {
                let (comp, lm, _) = g.last().unwrap().clone();
                Elem { terms: g.clone(), comp, lm, sugar: 0, active: true }
            })
            .collect();
        Prepared { elems }
    }
}
