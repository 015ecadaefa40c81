//! Text form of polynomials.
//!
//! ```text
//! poly  := term (('+'|'-') term)*
//! term  := coeff? ('*'? var ('^' uint)?)*
//! coeff := int ('/' uint)?
//! var   := 'x' uint | 'y' uint | 't'
//! ```
//!
//! Whitespace is ignored. Output lists terms by descending grevlex, so
//! `format_poly(parse_poly(s)) == s` for canonical strings.

use std::fmt::Write;

use super::coeff::Field;
use super::monomial::Monomial;
use super::poly::{Polynomial, Ring};
use crate::error::{AlgebraError, Result};

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }
    fn digits(&mut self) -> Option<&'a str> {
        let start = self.i;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        (self.i > start).then(|| std::str::from_utf8(&self.s[start..self.i]).unwrap())
    }
    fn err(&self, msg: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{msg} at offset {}", self.i))
    }
}

pub fn parse_poly<F: Field>(ring: &Ring<F>, text: &str) -> Result<Polynomial<F>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(AlgebraError::Parse("empty polynomial".into()));
    }
    let field = ring.field();
    let mut cur = Cursor { s: compact.as_bytes(), i: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some(b'+') => cur.i += 1,
            Some(b'-') => {
                negative = true;
                cur.i += 1;
            }
            _ if first => {}
            _ => return Err(cur.err("expected '+' or '-'")),
        }
        first = false;
        let (m, c) = parse_term(ring, &mut cur)?;
        terms.push((m, if negative { field.neg(&c) } else { c }));
    }
    Ok(ring.from_terms(terms))
}

fn parse_term<F: Field>(ring: &Ring<F>, cur: &mut Cursor) -> Result<(Monomial, F::Elem)> {
    let field = ring.field();
    let mut coeff = field.one();
    let mut saw_any = false;
    if let Some(num) = cur.digits() {
        let mut text = num.to_string();
        if cur.peek() == Some(b'/') {
            cur.i += 1;
            let den = cur.digits().ok_or_else(|| cur.err("expected denominator"))?;
            text = format!("{num}/{den}");
        }
        coeff = field.parse_elem(&text)?;
        saw_any = true;
    }
    let mut m = Monomial::one(ring.nvars());
    loop {
        let save = cur.i;
        if cur.peek() == Some(b'*') {
            cur.i += 1;
        }
        let name = match cur.peek() {
            Some(c @ (b'x' | b'y')) => {
                cur.i += 1;
                let idx = cur.digits().ok_or_else(|| cur.err("expected variable index"))?;
                format!("{}{}", c as char, idx)
            }
            Some(b't') => {
                cur.i += 1;
                "t".to_string()
            }
            _ => {
                if cur.i != save {
                    return Err(cur.err("expected variable after '*'"));
                }
                break;
            }
        };
        let v = ring.index_of(&name).ok_or_else(|| AlgebraError::Parse(format!("unknown variable {name}")))?;
        let mut e: u16 = 1;
        if cur.peek() == Some(b'^') {
            cur.i += 1;
            let d = cur.digits().ok_or_else(|| cur.err("expected exponent"))?;
            e = d.parse().map_err(|_| cur.err("exponent too large"))?;
        }
        let total = m.exp(v).checked_add(e).ok_or(AlgebraError::ExponentOverflow)?;
        m.set(v, total);
        saw_any = true;
    }
    if !saw_any {
        return Err(cur.err("empty term"));
    }
    Ok((m, coeff))
}

pub fn format_poly<F: Field>(p: &Polynomial<F>) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let field = p.field();
    let names = p.ring().names();
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let neg = field.is_negative(c);
        let abs = if neg { field.neg(c) } else { c.clone() };
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mut parts: Vec<String> = Vec::new();
        if m.is_one() || !field.is_one(&abs) {
            parts.push(field.fmt_elem(&abs));
        }
        for (i, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        let _ = write!(out, "{}", parts.join("*"));
    }
    out
}

/// Parses into the smallest ring x0..xN holding every variable in the text.
pub fn parse_in_x_ring<F: Field>(field: F, text: &str) -> Result<Polynomial<F>> {
    let ring = super::poly::PolyRing::xs(field, max_x_index(&[text]) + 1);
    parse_poly(&ring, text)
}

/// Largest index i such that `xi` occurs in one of the texts (0 if none).
pub fn max_x_index(texts: &[&str]) -> usize {
    let mut best = 0;
    for t in texts {
        let b = t.as_bytes();
        let mut i = 0;
        while i < b.len() {
            if b[i] == b'x' {
                let mut j = i + 1;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                if let Ok(v) = t[i + 1..j].parse::<usize>() {
                    best = best.max(v);
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff::{PrimeField, Rationals};
    use crate::polyring::poly::PolyRing;

    #[test]
    fn round_trip_canonical() {
        let r = PolyRing::xs(Rationals, 5);
        for s in [
            "-x2^3 + 2*x1*x2*x3 - x0*x3^2 - x1^2*x4 + x0*x2*x4",
            "x0^2 - 1/2*x1 + 3",
            "-7/3",
            "0",
        ] {
            let p = r.parse(s).unwrap();
            assert_eq!(format_poly(&p), s);
        }
    }

    #[test]
    fn tolerant_input_forms() {
        let r = PolyRing::xs(Rationals, 3);
        let a = r.parse(" 3 x0 x1^2 - x2 ").unwrap();
        let b = r.parse("3*x0*x1^2-x2").unwrap();
        assert_eq!(a, b);
        assert_eq!(r.parse("x0x0").unwrap(), r.parse("x0^2").unwrap());
        assert!(r.parse("x0 +").is_err());
        assert!(r.parse("x7").is_err());
        assert!(r.parse("2/0*x1").is_err());
    }

    #[test]
    fn y_and_t_variables() {
        let r = PolyRing::new(Rationals, ["x0", "y0", "t"]).unwrap();
        let p = r.parse("t*y0 - x0^2").unwrap();
        assert_eq!(format_poly(&p), "-x0^2 + y0*t");
    }

    #[test]
    fn modular_coefficients() {
        let r = PolyRing::xs(PrimeField::new(7).unwrap(), 1);
        assert_eq!(format_poly(&r.parse("1/2*x0 - 1").unwrap()), "4*x0 + 6");
    }

    #[test]
    fn max_index_scan() {
        assert_eq!(max_x_index(&["x3 + x12*y2", "x4"]), 12);
        assert_eq!(parse_in_x_ring(Rationals, "x2").unwrap().ring().nvars(), 3);
    }
}
