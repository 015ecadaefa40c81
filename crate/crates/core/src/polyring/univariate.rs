use super::coeff::Field;

/// Dense univariate polynomial, coefficients from low to high degree, with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    field: F,
    c: Vec<F::Elem>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: F, c: Vec<F::Elem>) -> Self {
        let mut p = UniPoly { field, c };
        p.trim();
        p
    }
    pub fn zero(field: F) -> Self {
        UniPoly { field, c: Vec::new() }
    }
    pub fn constant(field: F, a: F::Elem) -> Self {
        UniPoly::new(field, vec![a])
    }
    /// The monomial t.
    pub fn t(field: F) -> Self {
        let c = vec![field.zero(), field.one()];
        UniPoly { field, c }
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|x| self.field.is_zero(x)) {
            self.c.pop();
        }
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> Option<&F::Elem> {
        self.c.last()
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UniPoly::new(f.clone(), c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { field: self.field.clone(), c: self.c.iter().map(|a| self.field.neg(a)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![f.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(a, b));
            }
        }
        UniPoly::new(f.clone(), c)
    }

    pub fn scale(&self, a: &F::Elem) -> Self {
        UniPoly::new(self.field.clone(), self.c.iter().map(|x| self.field.mul(x, a)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UniPoly::constant(self.field.clone(), self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead().unwrap()).unwrap();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UniPoly::zero(f.clone()), self.clone());
        }
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let coef = f.mul(&r[k + dd], &inv);
            if !f.is_zero(&coef) {
                for (j, dj) in d.c.iter().enumerate() {
                    r[k + j] = f.sub(&r[k + j], &f.mul(&coef, dj));
                }
            }
            q[k] = coef;
        }
        r.truncate(dd);
        (UniPoly::new(f.clone(), q), UniPoly::new(f.clone(), r))
    }

    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
        }
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self.c.iter().enumerate().skip(1).map(|(i, a)| f.mul(a, &f.from_i64(i as i64))).collect();
        UniPoly::new(f.clone(), c)
    }

    pub fn eval(&self, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for a in self.c.iter().rev() {
            acc = f.add(&f.mul(&acc, t), a);
        }
        acc
    }

    /// Squarefree in the sense gcd(p, p') = 1.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Largest e with self^e | g (g nonzero, self of positive degree).
    pub fn multiplicity_in(&self, g: &Self) -> u32 {
        assert!(self.degree().unwrap_or(0) > 0 && !g.is_zero());
        let mut e = 0;
        let mut cur = g.clone();
        while let Some(q) = cur.exact_div(self) {
            cur = q;
            e += 1;
        }
        e
    }

    /// Interpolation through (xs[i], ys[i]) with distinct nodes (Newton form).
    pub fn interpolate(field: F, xs: &[F::Elem], ys: &[F::Elem]) -> Self {
        let f = &field;
        let n = xs.len();
        let mut dd: Vec<F::Elem> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = f.sub(&dd[i], &dd[i - 1]);
                let den = f.sub(&xs[i], &xs[i - j]);
                dd[i] = f.div(&num, &den).expect("repeated interpolation node");
            }
        }
        let mut acc = UniPoly::zero(field.clone());
        for i in (0..n).rev() {
            let lin = UniPoly::new(field.clone(), vec![f.neg(&xs[i]), f.one()]);
            acc = acc.mul(&lin).add(&UniPoly::constant(field.clone(), dd[i].clone()));
        }
        acc
    }
}
