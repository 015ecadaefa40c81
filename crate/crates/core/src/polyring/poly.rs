use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::coeff::{Field, PrimeField, Rationals, Q};
use super::monomial::{Monomial, MAX_VARS};
use super::order::grevlex_cmp;
use super::univariate::UniPoly;
use crate::error::{AlgebraError, Result};

/// Variable names plus coefficient field. Shared between polynomials by `Arc`.
#[derive(Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

pub type Ring<F> = Arc<PolyRing<F>>;

impl<F: Field> PartialEq for PolyRing<F> {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.names == o.names
    }
}
impl<F: Field> Eq for PolyRing<F> {}

impl<F: Field> PolyRing<F> {
    pub fn new<S: Into<String>>(field: F, names: impl IntoIterator<Item = S>) -> Result<Ring<F>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVars(names.len(), MAX_VARS));
        }
        let index: HashMap<String, usize> = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        if index.len() != names.len() {
            return Err(AlgebraError::Invalid("duplicate variable name".into()));
        }
        Ok(Arc::new(PolyRing { field, names, index }))
    }

    /// Ring with variables x0..x{n-1}.
    pub fn xs(field: F, n: usize) -> Ring<F> {
        PolyRing::new(field, (0..n).map(|i| format!("x{i}"))).expect("too many variables")
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }
    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }
    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        self.monomial(Monomial::one(self.nvars()), c)
    }
    pub fn int(self: &Arc<Self>, c: i64) -> Polynomial<F> {
        self.constant(self.field.from_i64(c))
    }
    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars(), "variable index {i} out of range");
        self.monomial(Monomial::var(self.nvars(), i, 1), self.field.one())
    }
    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }
    pub fn monomial(self: &Arc<Self>, m: Monomial, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            return self.zero();
        }
        Polynomial { ring: self.clone(), terms: vec![(m, c)] }
    }
    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Polynomial<F> {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = self.field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_map(self.clone(), acc)
    }
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<Polynomial<F>> {
        super::parse::parse_poly(self, s)
    }
}

/// Sparse polynomial; terms are nonzero and sorted by descending grevlex.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

pub type QPoly = Polynomial<Rationals>;
pub type FpPoly = Polynomial<PrimeField>;

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.terms == o.terms
    }
}
impl<F: Field> Eq for Polynomial<F> {}
impl<F: Field> Hash for Polynomial<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

impl<F: Field> Polynomial<F> {
    fn from_map(ring: Ring<F>, acc: HashMap<Monomial, F::Elem>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !ring.field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| grevlex_cmp(&b.0, &a.0));
        Polynomial { ring, terms }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }
    pub fn field(&self) -> &F {
        &self.ring.field
    }
    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }
    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }
    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }
    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms
            .binary_search_by(|(t, _)| grevlex_cmp(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }
    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mask = self.terms.iter().fold(0u32, |a, (m, _)| a | m.support_mask());
        (0..self.ring.nvars()).filter(|i| mask >> i & 1 == 1).collect()
    }

    fn check_ring(&self, o: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring {
            Ok(())
        } else {
            Err(AlgebraError::MixedRings)
        }
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        let f = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match grevlex_cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((*mb, if negate { f.neg(cb) } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { f.sub(ca, cb) } else { f.add(ca, cb) };
                    if !f.is_zero(&c) {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (*m, if negate { f.neg(c) } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_ring(o)?;
        Ok(self.merge(o, false))
    }
    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check_ring(o)?;
        Ok(self.merge(o, true))
    }
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check_ring(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return self.ring.zero();
        }
        let (a, b) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if a.len() == 1 {
            return b.mul_term(&a.terms[0].0, &a.terms[0].1);
        }
        let f = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = f.add(v, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(self.ring.clone(), acc)
    }

    /// Multiplication by c·m; order is preserved, so no re-sorting.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), f.mul(d, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.mul_term(&Monomial::one(self.ring.nvars()), c)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            return Err(AlgebraError::NegativeExponent(k));
        }
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Quotient `q` with `q * den == self`, or `None` when den does not divide.
    pub fn exact_divide(&self, den: &Self) -> Result<Option<Self>> {
        self.check_ring(den)?;
        let Some((ld, cd)) = den.terms.first() else {
            return Err(AlgebraError::DivisionByZero);
        };
        let f = self.field();
        let cd_inv = f.inv(cd).ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, F::Elem)> = Vec::new();
        while let Some((lr, cr)) = rem.terms.first() {
            let Some(m) = ld.quotient_of(lr) else {
                return Ok(None);
            };
            let c = f.mul(cr, &cd_inv);
            rem = rem.merge(&den.mul_term(&m, &c), true);
            quot.push((m, c));
        }
        Ok(Some(Polynomial { ring: self.ring.clone(), terms: quot }))
    }

    pub fn differentiate(&self, i: usize) -> Result<Self> {
        if i >= self.ring.nvars() {
            return Err(AlgebraError::VarIndex(i));
        }
        let f = self.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let c2 = f.mul(c, &f.from_i64(e as i64));
            if f.is_zero(&c2) {
                continue;
            }
            let mut m2 = *m;
            m2.set(i, e - 1);
            terms.push((m2, c2));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.ring.nvars()).map(|i| self.differentiate(i).unwrap()).collect()
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(AlgebraError::Length { expected: n, got: point.len() });
        }
        let f = self.field();
        let maxe: Vec<u16> = (0..n).map(|i| self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut v = vec![f.one()];
                for k in 0..maxe[i] as usize {
                    let next = f.mul(&v[k], &point[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// f(base + t·dir) as a univariate polynomial in t.
    pub fn restrict_to_line(&self, base: &[F::Elem], dir: &[F::Elem]) -> Result<UniPoly<F>> {
        let n = self.ring.nvars();
        if base.len() != n || dir.len() != n {
            return Err(AlgebraError::Length { expected: n, got: base.len().min(dir.len()) });
        }
        let f = self.field().clone();
        if dir.iter().all(|d| f.is_zero(d)) {
            return Err(AlgebraError::ZeroDirection);
        }
        let lines: Vec<UniPoly<F>> =
            (0..n).map(|i| UniPoly::new(f.clone(), vec![base[i].clone(), dir[i].clone()])).collect();
        let mut acc = UniPoly::zero(f.clone());
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(f.clone(), c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&lines[i]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Embeds into `target`, sending variable i to `map[i]`.
    pub fn remap(&self, target: &Ring<F>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        target.from_terms(self.terms.iter().map(|(m, c)| (m.remap(target.nvars(), map), c.clone())))
    }

    /// Moves to a ring with the same variables, keeping the given ones; fails
    /// if a dropped variable occurs.
    pub fn restrict_vars(&self, target: &Ring<F>, keep: &[usize]) -> Option<Self> {
        let mut inv = vec![usize::MAX; self.ring.nvars()];
        for (j, &i) in keep.iter().enumerate() {
            inv[i] = j;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = Monomial::one(target.nvars());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    if inv[i] == usize::MAX {
                        return None;
                    }
                    t.set(inv[i], e);
                }
            }
            terms.push((t, c.clone()));
        }
        Some(target.from_terms(terms))
    }

    /// Substitutes `vals[i]` for variable i; the values live in any common ring.
    pub fn compose(&self, vals: &[Polynomial<F>]) -> Result<Polynomial<F>> {
        let n = self.ring.nvars();
        if vals.len() != n {
            return Err(AlgebraError::Length { expected: n, got: vals.len() });
        }
        let Some(target) = vals.first().map(|v| v.ring.clone()) else {
            return Err(AlgebraError::Invalid("empty substitution".into()));
        };
        let mut cache: HashMap<(usize, u16), Polynomial<F>> = HashMap::new();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((i, e)).or_insert_with(|| vals[i].pow(e as i64).unwrap());
                    t = t.try_mul(p)?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Degree-d homogeneous component.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.field().inv(c).unwrap()),
        }
    }

    /// Largest power of variable i dividing every term.
    pub fn var_power_dividing(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).min().unwrap_or(0)
    }

    /// Evaluates every coefficient mapping into another field.
    pub fn map_field<G: Field>(&self, target: &Ring<G>, map: impl Fn(&F::Elem) -> Option<G::Elem>) -> Option<Polynomial<G>> {
        assert_eq!(target.nvars(), self.ring.nvars());
        let g = target.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = map(c)?;
            if !g.is_zero(&d) {
                terms.push((*m, d));
            }
        }
        Some(Polynomial { ring: target.clone(), terms })
    }

    pub fn to_text(&self) -> String {
        super::parse::format_poly(self)
    }
}

impl Polynomial<Rationals> {
    /// Image modulo p; `None` when some denominator vanishes mod p.
    pub fn reduce_mod(&self, target: &Ring<PrimeField>) -> Option<Polynomial<PrimeField>> {
        let p = target.field().modulus();
        self.map_field(target, |q| q.mod_p(p))
    }

    /// Evaluates at a point of F_p, after reduction.
    pub fn eval_mod(&self, p: u64, point: &[u64]) -> Result<u64> {
        let n = self.ring.nvars();
        if point.len() != n {
            return Err(AlgebraError::Length { expected: n, got: point.len() });
        }
        let fp = PrimeField::new(p)?;
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut t = c.mod_p(p).ok_or(AlgebraError::DivisionByZero)?;
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = fp.mul(&t, &fp.pow(&point[i], e as u64));
                }
            }
            acc = fp.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Multiplies by the lcm of denominators and divides by the content so the
    /// coefficients are coprime integers with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        use num_traits::{One, Signed, Zero};
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(&c.denom());
        }
        let mut g = num_bigint::BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(&(c.numer() * (&l / c.denom())));
        }
        if self.terms[0].1.is_negative() {
            g = -g.abs();
        }
        let s = Q::from_big(num_rational::BigRational::new(l, g));
        self.scale(&s)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: Self) -> Polynomial<F> {
        self.try_add(o).expect("mixed rings")
    }
}
impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: Self) -> Polynomial<F> {
        self.try_sub(o).expect("mixed rings")
    }
}
impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: Self) -> Polynomial<F> {
        self.try_mul(o).expect("mixed rings")
    }
}
impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        let f = self.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}
impl<F: Field> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, o: Self) -> Polynomial<F> {
        &self + &o
    }
}
impl<F: Field> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, o: Self) -> Polynomial<F> {
        &self - &o
    }
}
impl<F: Field> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, o: Self) -> Polynomial<F> {
        &self * &o
    }
}
impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Ring<Rationals> {
        PolyRing::xs(Rationals, n)
    }

    fn hankel3_det(r: &Ring<Rationals>) -> QPoly {
        r.parse("x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3").unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(2);
        let (a, b) = (r.var(0), r.var(1));
        assert_eq!(&(&a + &b) * &(&a - &b), r.parse("x0^2 - x1^2").unwrap());
        assert!((&a * &r.zero()).is_zero());
    }

    #[test]
    fn square_of_binomial() {
        let r = ring(3);
        let p = r.parse("x0*x2 - x1^2").unwrap();
        assert_eq!(p.pow(2).unwrap(), r.parse("x0^2*x2^2 - 2*x0*x1^2*x2 + x1^4").unwrap());
        assert!(p.pow(-1).is_err());
    }

    #[test]
    fn exact_division() {
        let r = ring(3);
        let num = r.parse("x0^2*x2 - x0*x1^2").unwrap();
        let q = num.exact_divide(&r.var(0)).unwrap().unwrap();
        assert_eq!(q, r.parse("x0*x2 - x1^2").unwrap());
        assert_eq!(r.parse("x1^2").unwrap().exact_divide(&r.var(0)).unwrap(), None);
        assert!(num.exact_divide(&r.zero()).is_err());
    }

    #[test]
    fn hankel_partial_and_euler() {
        let r = ring(5);
        let f = hankel3_det(&r);
        assert_eq!(f.differentiate(2).unwrap(), r.parse("x0*x4 + 2*x1*x3 - 3*x2^2").unwrap());
        let mut euler = r.zero();
        for i in 0..5 {
            euler = &euler + &(&r.var(i) * &f.differentiate(i).unwrap());
        }
        assert_eq!(euler, f.scale(&Q::int(3)));
        assert!(r.parse("x0^2").unwrap().differentiate(1).unwrap().is_zero());
    }

    #[test]
    fn evaluation() {
        let r = ring(3);
        let p = r.parse("x0*x2 - x1^2").unwrap();
        assert_eq!(p.evaluate(&[Q::int(1), Q::int(0), Q::int(1)]).unwrap(), Q::int(1));
        let r2 = ring(2);
        let s = r2.parse("(x0+x1)").err();
        assert!(s.is_some());
        let s = r2.parse("x0 + x1").unwrap().pow(2).unwrap();
        assert_eq!(s.evaluate(&[Q::int(2), Q::int(3)]).unwrap(), Q::int(25));
        assert!(s.evaluate(&[Q::int(2)]).is_err());
    }

    #[test]
    fn line_restriction() {
        let r = ring(2);
        let p = r.parse("x0*x1").unwrap();
        let u = p.restrict_to_line(&[Q::zero(), Q::zero()], &[Q::one(), Q::one()]).unwrap();
        assert_eq!(u.coeffs(), &[Q::zero(), Q::zero(), Q::one()]);
        assert!(p.restrict_to_line(&[Q::zero(), Q::zero()], &[Q::zero(), Q::zero()]).is_err());
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = ring(2).var(0);
        let b = ring(3).var(0);
        assert_eq!(a.try_add(&b), Err(AlgebraError::MixedRings));
    }

    #[test]
    fn compose_and_remap() {
        let r = ring(2);
        let p = r.parse("x0^2 - x1").unwrap();
        let q = p.compose(&[r.parse("x0 + x1").unwrap(), r.parse("2*x0*x1").unwrap()]).unwrap();
        assert_eq!(q, r.parse("x0^2 + x1^2").unwrap());
        let big = ring(3);
        assert_eq!(p.remap(&big, &[2, 0]), big.parse("x2^2 - x0").unwrap());
    }

    #[test]
    fn primitive_part() {
        let r = ring(2);
        let p = r.parse("-2/3*x0 + 4/9*x1").unwrap();
        assert_eq!(p.primitive(), r.parse("3*x0 - 2*x1").unwrap());
    }
}
