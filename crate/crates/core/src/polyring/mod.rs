//! Exact coefficients, monomials, monomial orders and sparse polynomials.

pub mod coeff;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod univariate;

pub use coeff::{identity_prime, is_prime_u64, Field, PrimeField, Rationals, DEFAULT_PRIME, Q};
pub use monomial::{Monomial, MAX_VARS};
pub use order::{MonomialOrder, OrderKind};
pub use parse::{format_poly, parse_in_x_ring, parse_poly};
pub use poly::{FpPoly, PolyRing, Polynomial, QPoly, Ring};
pub use univariate::UniPoly;

use std::cmp::Ordering;

/// Compares two monomials under `ord`.
pub fn monomial_compare(u: &Monomial, v: &Monomial, ord: &MonomialOrder) -> Ordering {
    ord.cmp(u, v)
}
