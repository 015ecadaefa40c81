//! Frozen values checked against a small independent integer-polynomial
//! implementation that shares no code with the library.

use std::collections::BTreeMap;

use detlab_core::polar::hessian_det_at;
use detlab_core::polyring::{Rationals, Q};
use detlab_core::structmat::PolyMatrix;

type IntPoly = BTreeMap<Vec<u32>, i64>;

const HANKEL3_DET_TERMS: usize = 5;
const CAT32_HESSIAN_AT_POINT: i64 = 8;
const CAT32_POINT: [i64; 7] = [0, 0, 1, 0, 0, 1, 1];

fn var(n: usize, i: usize) -> IntPoly {
    let mut e = vec![0; n];
    e[i] = 1;
    BTreeMap::from([(e, 1)])
}

fn mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add_scaled(acc: &mut IntPoly, p: &IntPoly, s: i64) {
    for (e, c) in p {
        *acc.entry(e.clone()).or_insert(0) += s * c;
    }
    acc.retain(|_, c| *c != 0);
}

fn diff(p: &IntPoly, i: usize) -> IntPoly {
    let mut out = IntPoly::new();
    for (e, c) in p {
        if e[i] > 0 {
            let mut f = e.clone();
            f[i] -= 1;
            *out.entry(f).or_insert(0) += c * e[i] as i64;
        }
    }
    out
}

fn eval(p: &IntPoly, pt: &[i64]) -> i64 {
    p.iter().map(|(e, c)| c * e.iter().zip(pt).map(|(&k, &x)| x.pow(k)).product::<i64>()).sum()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((q, sign));
        }
    }
    out
}

/// Leibniz expansion over polynomial entries.
fn leibniz(m: &[Vec<IntPoly>], nvars: usize) -> IntPoly {
    let mut det = IntPoly::new();
    for (p, s) in permutations(m.len()) {
        let mut term = BTreeMap::from([(vec![0; nvars], 1)]);
        for (r, &c) in p.iter().enumerate() {
            term = mul(&term, &m[r][c]);
        }
        add_scaled(&mut det, &term, s);
    }
    det
}

fn leibniz_int(m: &[Vec<i64>]) -> i64 {
    permutations(m.len()).iter().map(|(p, s)| s * p.iter().enumerate().map(|(r, &c)| m[r][c]).product::<i64>()).sum()
}

fn catalecticant(m: usize, r: usize) -> (Vec<Vec<IntPoly>>, usize) {
    let nvars = (m - 1) * (r + 1) + 1;
    ((0..m).map(|i| (0..m).map(|j| var(nvars, r * i + j)).collect()).collect(), nvars)
}

fn to_q(p: &IntPoly) -> BTreeMap<Vec<u32>, Q> {
    p.iter().map(|(e, c)| (e.clone(), Q::int(*c))).collect()
}

fn library_terms(m: &PolyMatrix<Rationals>) -> BTreeMap<Vec<u32>, Q> {
    let d = m.determinant().unwrap();
    d.terms().iter().map(|(mono, c)| (mono.exps().iter().map(|&e| e as u32).collect(), c.clone())).collect()
}

#[test]
fn hankel_three_determinant() {
    let (m, n) = catalecticant(3, 1);
    let det = leibniz(&m, n);
    assert_eq!(det.len(), HANKEL3_DET_TERMS);
    assert_eq!(to_q(&det), library_terms(&PolyMatrix::hankel(Rationals, 3).unwrap()));
}

#[test]
fn catalecticant_determinants_agree() {
    for (mm, r) in [(3, 2), (3, 3), (4, 1)] {
        let (m, n) = catalecticant(mm, r);
        assert_eq!(to_q(&leibniz(&m, n)), library_terms(&PolyMatrix::catalecticant(Rationals, mm, r).unwrap()), "C({mm},{r})");
    }
}

#[test]
fn catalecticant_hessian_at_point() {
    let (m, n) = catalecticant(3, 2);
    let f = leibniz(&m, n);
    let h: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| eval(&diff(&diff(&f, i), j), &CAT32_POINT)).collect()).collect();
    assert_eq!(leibniz_int(&h), CAT32_HESSIAN_AT_POINT);
    let lib_f = PolyMatrix::catalecticant(Rationals, 3, 2).unwrap().determinant().unwrap();
    let pt: Vec<Q> = CAT32_POINT.iter().map(|&x| Q::int(x)).collect();
    assert_eq!(hessian_det_at(&lib_f, &pt).unwrap(), Q::int(CAT32_HESSIAN_AT_POINT));
}
