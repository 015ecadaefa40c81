use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{AlgebraError, Result};

pub const MAX_VARS: usize = 32;

/// Exponent vector stored inline. Entries past `nvars` are always zero, so
/// comparisons and hashing can look at the whole array.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    nvars: u8,
    deg: u32,
    mask: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        assert!(nvars <= MAX_VARS);
        Monomial { exps: [0; MAX_VARS], nvars: nvars as u8, deg: 0, mask: 0 }
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.set(i, e);
        m
    }

    pub fn from_exps(exps: &[u16]) -> Result<Monomial> {
        if exps.len() > MAX_VARS {
            return Err(AlgebraError::TooManyVars(exps.len(), MAX_VARS));
        }
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.set(i, e);
        }
        Ok(m)
    }

    pub fn set(&mut self, i: usize, e: u16) {
        assert!(i < self.nvars as usize);
        self.deg = self.deg - self.exps[i] as u32 + e as u32;
        self.exps[i] = e;
        if e > 0 {
            self.mask |= 1 << i;
        } else {
            self.mask &= !(1 << i);
        }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }
    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps[..self.nvars as usize]
    }
    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }
    #[inline]
    pub fn support_mask(&self) -> u32 {
        self.mask
    }
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars, o.nvars);
        let mut r = *self;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i].checked_add(o.exps[i]).expect("exponent overflow");
        }
        r.deg += o.deg;
        r.mask |= o.mask;
        r
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        if self.mask & !o.mask != 0 || self.deg > o.deg {
            return false;
        }
        (0..self.nvars as usize).all(|i| self.exps[i] <= o.exps[i])
    }

    /// `o / self` when self divides o.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if !self.divides(o) {
            return None;
        }
        let mut r = *o;
        let mut mask = 0;
        for i in 0..self.nvars as usize {
            r.exps[i] = o.exps[i] - self.exps[i];
            if r.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        r.deg = o.deg - self.deg;
        r.mask = mask;
        Some(r)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i].max(o.exps[i]);
            deg += r.exps[i] as u32;
        }
        r.deg = deg;
        r.mask = self.mask | o.mask;
        r
    }

    pub fn gcd(&self, o: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0;
        let mut mask = 0;
        for i in 0..self.nvars as usize {
            r.exps[i] = self.exps[i].min(o.exps[i]);
            deg += r.exps[i] as u32;
            if r.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        r.deg = deg;
        r.mask = mask;
        r
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.mask & o.mask == 0
    }

    pub fn pow(&self, k: u32) -> Result<Monomial> {
        let mut r = *self;
        for i in 0..self.nvars as usize {
            let e = self.exps[i] as u32 * k;
            r.exps[i] = u16::try_from(e).map_err(|_| AlgebraError::ExponentOverflow)?;
        }
        r.deg = self.deg * k;
        if k == 0 {
            r.mask = 0;
        }
        Ok(r)
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.exps().iter().zip(w).map(|(&e, &wi)| e as u64 * wi as u64).sum()
    }

    /// Re-embed into a ring with `nvars` variables, sending variable i to `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut r = Monomial::one(nvars);
        for (i, &e) in self.exps().iter().enumerate() {
            if e > 0 {
                let j = map[i];
                r.set(j, r.exps[j] + e);
            }
        }
        r
    }
}

impl PartialEq for Monomial {
    #[inline]
    fn eq(&self, o: &Self) -> bool {
        self.mask == o.mask && self.deg == o.deg && self.exps == o.exps
    }
}
impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps[..self.nvars as usize].hash(state);
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exps(&[2, 0, 1]).unwrap();
        let b = Monomial::from_exps(&[3, 1, 1]).unwrap();
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        let q = a.quotient_of(&b).unwrap();
        assert_eq!(q.exps(), &[1, 1, 0]);
        assert_eq!(q.degree(), 2);
        assert_eq!(a.mul(&q), b);
        let c = Monomial::from_exps(&[0, 4, 0]).unwrap();
        assert_eq!(a.lcm(&c).exps(), &[2, 4, 1]);
        assert!(a.gcd(&c).is_one());
        assert!(a.is_coprime(&c));
    }

    #[test]
    fn remap_embeds() {
        let a = Monomial::from_exps(&[1, 2]).unwrap();
        let r = a.remap(4, &[3, 1]);
        assert_eq!(r.exps(), &[0, 2, 0, 1]);
        assert_eq!(r.degree(), 3);
    }
}
