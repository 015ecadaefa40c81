//! Hilbert series of monomial quotients by pivot splitting.

use serde::{Deserialize, Serialize};

use crate::polyring::Monomial;

/// Integer polynomial in t, coefficients from degree 0 upwards.
pub type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect())
}

fn shift(a: &IntPoly, k: usize) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0; k];
    v.extend_from_slice(a);
    v
}

fn mul_one_minus_tk(a: &IntPoly, k: usize) -> IntPoly {
    add(a, &shift(a, k).iter().map(|x| -x).collect())
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator N(t) with H(R/I, t) = N(t)/(1-t)^n for the monomial ideal I.
pub fn hilbert_numerator(gens: &[Monomial]) -> IntPoly {
    numerator(minimalize(gens.to_vec()))
}

fn numerator(gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1];
        for g in &gens {
            acc = mul_one_minus_tk(&acc, g.degree() as usize);
        }
        return acc;
    }
    // Pivot on the variable occurring in most generators.
    let n = gens[0].nvars();
    let mut best = (0usize, 0usize);
    for v in 0..n {
        let c = gens.iter().filter(|g| g.exp(v) > 0).count();
        if c > best.1 {
            best = (v, c);
        }
    }
    let v = best.0;
    let mut es: Vec<u16> = gens.iter().map(|g| g.exp(v)).filter(|&e| e > 0).collect();
    es.sort_unstable();
    // The pivot must stay outside I, so stay below a pure power of v.
    let pure = gens.iter().filter(|g| g.degree() == g.exp(v) as u32).map(|g| g.exp(v)).min();
    let mut e = es[es.len() / 2].max(1);
    if let Some(a) = pure {
        e = e.min(a - 1);
    }
    let pivot = Monomial::var(n, v, e);
    // I + (p)
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| !pivot.divides(g)).copied().collect();
    plus.push(pivot);
    // I : p
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut h = *g;
            h.set(v, g.exp(v).saturating_sub(e));
            h
        })
        .collect();
    add(&numerator(minimalize(plus)), &shift(&numerator(minimalize(colon)), e as usize))
}

/// Dimension, multiplicity and numerator data of a graded quotient R/I.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// Krull dimension of R/I; -1 for the zero ring.
    pub dimension: i64,
    pub codimension: i64,
    /// Degree (multiplicity); 0 for the zero ring.
    pub multiplicity: i64,
    pub numerator: IntPoly,
    /// Numerator after cancelling (1-t)^codim.
    pub reduced_numerator: IntPoly,
}

impl HilbertData {
    pub fn from_numerator(nvars: usize, numerator: IntPoly) -> Self {
        if numerator.is_empty() {
            return HilbertData {
                nvars,
                dimension: -1,
                codimension: nvars as i64 + 1,
                multiplicity: 0,
                numerator,
                reduced_numerator: Vec::new(),
            };
        }
        let mut q = numerator.clone();
        let mut c = 0;
        while q.iter().sum::<i64>() == 0 {
            // divide by (1 - t): q = (1-t) r, r_k = q_0 + ... + q_k
            let mut r = Vec::with_capacity(q.len() - 1);
            let mut acc = 0;
            for &x in &q[..q.len() - 1] {
                acc += x;
                r.push(acc);
            }
            q = trim(r);
            c += 1;
        }
        HilbertData {
            nvars,
            dimension: nvars as i64 - c,
            codimension: c,
            multiplicity: q.iter().sum(),
            numerator,
            reduced_numerator: q,
        }
    }

    /// Value of the Hilbert function in degree d.
    pub fn hilbert_function(&self, d: usize) -> i64 {
        // coefficient of t^d in N(t) / (1-t)^n
        let n = self.nvars as i64;
        let mut total = 0i64;
        for (k, &a) in self.numerator.iter().enumerate() {
            if k > d {
                break;
            }
            total += a * binom(d as i64 - k as i64 + n - 1, n - 1);
        }
        total
    }
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e).unwrap()
    }

    #[test]
    fn complete_intersection() {
        let d = HilbertData::from_numerator(3, hilbert_numerator(&[m(&[2, 0, 0]), m(&[0, 3, 0])]));
        assert_eq!(d.dimension, 1);
        assert_eq!(d.multiplicity, 6);
    }

    #[test]
    fn non_coprime_pivoting() {
        // (x^2, xy, y^2) in k[x,y]: finite length 3
        let d = HilbertData::from_numerator(2, hilbert_numerator(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]));
        assert_eq!(d.dimension, 0);
        assert_eq!(d.multiplicity, 3);
        assert_eq!(d.numerator, vec![1, 0, -3, 2]);
        assert_eq!(d.hilbert_function(1), 2);
        assert_eq!(d.hilbert_function(2), 0);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let d = HilbertData::from_numerator(2, hilbert_numerator(&[m(&[0, 0])]));
        assert_eq!(d.dimension, -1);
        let z = HilbertData::from_numerator(2, hilbert_numerator(&[]));
        assert_eq!(z.dimension, 2);
        assert_eq!(z.multiplicity, 1);
    }
}
