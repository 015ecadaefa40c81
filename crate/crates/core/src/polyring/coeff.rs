//! Coefficient fields: exact rationals with a machine-word fast path, and
//! prime fields with a runtime modulus.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::AlgebraError;

/// A field whose elements are plain values and whose operations need the
/// field object as context (the modulus of a prime field lives here).
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator vanishes.
    fn from_q(&self, q: &Q) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn random(&self, rng: &mut dyn rand::RngCore) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn is_exact(&self) -> bool {
        self.characteristic() == 0
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem, AlgebraError> {
        let q: Q = s.parse()?;
        self.from_q(&q)
            .ok_or_else(|| AlgebraError::Parse(format!("coefficient {s} not defined in {self:?}")))
    }
    /// Negative for display purposes (rationals only; modular values never are).
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
    fn pow(&self, a: &Self::Elem, mut k: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }
}

/// Exact rational number in lowest terms with positive denominator.
/// Values whose numerator and denominator fit in an `i64` are always stored
/// in the `Small` form, so derived equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(0, 1)
    }
    pub fn one() -> Q {
        Q::Small(1, 1)
    }
    pub fn int(v: i64) -> Q {
        Q::Small(v, 1)
    }
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128(n as i128, d as i128)
    }

    fn from_i128(n: i128, d: i128) -> Q {
        let (mut n, mut d) = (n, d);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(r: BigRational) -> Q {
        // BigRational::new reduces; new_raw callers already reduced.
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }
    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }
    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(b) => b.is_negative(),
        }
    }
    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(b) => b.is_integer(),
        }
    }
    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(b) => b.numer().clone(),
        }
    }
    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(b) => b.denom().clone(),
        }
    }

    pub fn add(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Q::Small(s, 1),
                        None => Q::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Q::from_i128(a * d + c * b, b * d)
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }
    pub fn neg(&self) -> Q {
        match self {
            Q::Small(a, b) => match a.checked_neg() {
                Some(n) => Q::Small(n, *b),
                None => Q::from_big(-self.to_big()),
            },
            Q::Big(r) => Q::from_big(-(**r).clone()),
        }
    }
    pub fn sub(&self, o: &Q) -> Q {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(p) => Q::Small(p, 1),
                        None => Q::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                let g1 = a.gcd(&d).max(1);
                let g2 = c.gcd(&b).max(1);
                Q::from_i128((a / g1) * (c / g2), (b / g2) * (d / g1))
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }
    pub fn inv(&self) -> Option<Q> {
        match self {
            Q::Small(0, _) => None,
            Q::Small(a, b) => Some(Q::from_i128(*b as i128, *a as i128)),
            Q::Big(r) => Some(Q::from_big(r.recip())),
        }
    }
    pub fn div(&self, o: &Q) -> Option<Q> {
        o.inv().map(|i| self.mul(&i))
    }
    pub fn abs(&self) -> Q {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }
    pub fn pow(&self, k: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Residue modulo a prime, `None` when p divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let (n, d) = match self {
            Q::Small(n, d) => (
                (*n as i128).rem_euclid(p as i128) as u64,
                (*d as i128).rem_euclid(p as i128) as u64,
            ),
            Q::Big(r) => {
                let pb = BigInt::from(p);
                let n = r.numer().mod_floor(&pb).to_u64().unwrap();
                let d = r.denom().mod_floor(&pb).to_u64().unwrap();
                (n, d)
            }
        };
        if d == 0 {
            return None;
        }
        Some(mulmod(n, invmod(d, p)?, p))
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Q {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Q::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}
impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Q {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Q, AlgebraError> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("bad rational '{s}'"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Q {
        Q::int(v)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn from_i64(&self, v: i64) -> Q {
        Q::int(v)
    }
    fn from_q(&self, q: &Q) -> Option<Q> {
        Some(q.clone())
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &Q) -> bool {
        a.is_one()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a.add(b)
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a.sub(b)
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a.mul(b)
    }
    fn neg(&self, a: &Q) -> Q {
        a.neg()
    }
    fn inv(&self, a: &Q) -> Option<Q> {
        a.inv()
    }
    fn random(&self, rng: &mut dyn rand::RngCore) -> Q {
        Q::int(rng.gen_range(-50..=50))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn fmt_elem(&self, a: &Q) -> String {
        a.to_string()
    }
    fn is_negative(&self, a: &Q) -> bool {
        a.is_negative()
    }
}

/// Z/pZ for a prime p < 2^63.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, AlgebraError> {
        if !(3..(1 << 63)).contains(&p) || !is_prime_u64(p) {
            return Err(AlgebraError::BadPrime(p));
        }
        Ok(PrimeField { p })
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn from_q(&self, q: &Q) -> Option<u64> {
        q.mod_p(self.p)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        invmod(*a, self.p)
    }
    fn random(&self, rng: &mut dyn rand::RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime strictly below `bound`.
pub fn prev_prime(bound: u64) -> u64 {
    let mut c = bound - 1;
    while !is_prime_u64(c) {
        c -= 1;
    }
    c
}

/// Default modulus for modular coefficient arithmetic (2^31 - 1).
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Largest prime below 2^60, used for identity testing.
pub fn identity_prime() -> u64 {
    prev_prime(1 << 60)
}

pub fn big_to_q(n: &BigInt) -> Q {
    Q::from_big(BigRational::from_integer(n.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rationals_stay_canonical() {
        let a = Q::new(6, -4);
        assert_eq!(a, Q::Small(-3, 2));
        assert_eq!(a.add(&Q::new(3, 2)), Q::zero());
        assert_eq!(Q::new(2, 3).mul(&Q::new(3, 2)), Q::one());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::int(i64::MAX).add(&Q::int(i64::MAX));
        assert!(matches!(big, Q::Big(_)));
        let back = big.sub(&Q::int(i64::MAX));
        assert_eq!(back, Q::int(i64::MAX));
        let m = Q::int(i64::MIN).neg();
        assert!(matches!(m, Q::Big(_)));
        assert_eq!(m.add(&Q::int(-1)), Q::int(i64::MAX));
    }

    #[test]
    fn parse_and_print() {
        let q: Q = "-10/4".parse().unwrap();
        assert_eq!(q.to_string(), "-5/2");
        let b: Q = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(b.to_string(), "123456789012345678901234567890");
        assert!("1/0".parse::<Q>().is_err());
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        let a = f.from_i64(-5);
        assert_eq!(f.add(&a, &5), 0);
        let i = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &i), 1);
        assert!(PrimeField::new(1 << 31).is_err());
        assert_eq!(Q::new(1, 2).mod_p(7), Some(4));
        assert_eq!(Q::new(1, 7).mod_p(7), None);
    }

    #[test]
    fn identity_prime_is_prime_and_large() {
        let p = identity_prime();
        assert!(p > (1 << 59));
        assert!(is_prime_u64(p));
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(!is_prime_u64(561));
    }
}
