use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    GrLex,
    GRevLex,
    /// Reverse lex refined by a positive weight vector instead of total degree.
    WeightedGRevLex(Vec<u32>),
    /// Variables at positions `< split` are compared first with `first`; ties
    /// are broken on the remaining positions with `second`.
    Block { split: usize, first: Box<OrderKind>, second: Box<OrderKind> },
}

/// A monomial order. Position `i` of the order refers to variable `perm[i]`
/// (identity when `perm` is `None`); position 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub perm: Option<Vec<usize>>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}

impl MonomialOrder {
    pub fn lex() -> Self {
        MonomialOrder { kind: OrderKind::Lex, perm: None }
    }
    pub fn grlex() -> Self {
        MonomialOrder { kind: OrderKind::GrLex, perm: None }
    }
    pub fn grevlex() -> Self {
        MonomialOrder { kind: OrderKind::GRevLex, perm: None }
    }
    pub fn weighted(w: Vec<u32>) -> Self {
        MonomialOrder { kind: OrderKind::WeightedGRevLex(w), perm: None }
    }
    /// Eliminates the first `split` variables; both blocks use grevlex.
    pub fn elimination(split: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Block {
                split,
                first: Box::new(OrderKind::GRevLex),
                second: Box::new(OrderKind::GRevLex),
            },
            perm: None,
        }
    }
    pub fn with_perm(mut self, perm: Vec<usize>) -> Self {
        self.perm = Some(perm);
        self
    }

    pub fn is_default(&self) -> bool {
        self.kind == OrderKind::GRevLex && self.perm.is_none()
    }

    /// True when the order refines total degree (or a positive weighting).
    pub fn is_graded(&self) -> bool {
        matches!(self.kind, OrderKind::GrLex | OrderKind::GRevLex | OrderKind::WeightedGRevLex(_))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match (&self.kind, &self.perm) {
            (OrderKind::GRevLex, None) => grevlex_cmp(a, b),
            (kind, None) => {
                let n = a.nvars();
                cmp_kind(kind, a, b, &|i| i, 0, n)
            }
            (kind, Some(p)) => cmp_kind(kind, a, b, &|i| p[i], 0, p.len()),
        }
    }

    pub fn label(&self) -> String {
        let base = kind_label(&self.kind);
        match &self.perm {
            None => base,
            Some(p) => format!("{base}/perm{p:?}"),
        }
    }
}

fn kind_label(k: &OrderKind) -> String {
    match k {
        OrderKind::Lex => "lex".into(),
        OrderKind::GrLex => "grlex".into(),
        OrderKind::GRevLex => "grevlex".into(),
        OrderKind::WeightedGRevLex(w) => format!("wgrevlex{w:?}"),
        OrderKind::Block { split, first, second } => {
            format!("block({split}:{},{})", kind_label(first), kind_label(second))
        }
    }
}

/// Graded reverse lex with x0 > x1 > ... > xn.
#[inline]
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    let (ea, eb) = (a.exps(), b.exps());
    for i in (0..ea.len()).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

fn cmp_kind(
    kind: &OrderKind,
    a: &Monomial,
    b: &Monomial,
    var: &dyn Fn(usize) -> usize,
    lo: usize,
    hi: usize,
) -> Ordering {
    let ea = |i: usize| a.exp(var(i));
    let eb = |i: usize| b.exp(var(i));
    let deg = |f: &dyn Fn(usize) -> u16| (lo..hi).map(|i| f(i) as u64).sum::<u64>();
    match kind {
        OrderKind::Lex => {
            for i in lo..hi {
                if ea(i) != eb(i) {
                    return ea(i).cmp(&eb(i));
                }
            }
            Ordering::Equal
        }
        OrderKind::GrLex => deg(&ea).cmp(&deg(&eb)).then_with(|| cmp_kind(&OrderKind::Lex, a, b, var, lo, hi)),
        OrderKind::GRevLex => deg(&ea).cmp(&deg(&eb)).then_with(|| revlex(&ea, &eb, lo, hi)),
        OrderKind::WeightedGRevLex(w) => {
            let wd = |f: &dyn Fn(usize) -> u16| (lo..hi).map(|i| f(i) as u64 * w[i - lo] as u64).sum::<u64>();
            wd(&ea).cmp(&wd(&eb)).then_with(|| revlex(&ea, &eb, lo, hi))
        }
        OrderKind::Block { split, first, second } => {
            let mid = lo + split;
            cmp_kind(first, a, b, var, lo, mid).then_with(|| cmp_kind(second, a, b, var, mid, hi))
        }
    }
}

fn revlex(ea: &dyn Fn(usize) -> u16, eb: &dyn Fn(usize) -> u16, lo: usize, hi: usize) -> Ordering {
    for i in (lo..hi).rev() {
        if ea(i) != eb(i) {
            return eb(i).cmp(&ea(i));
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::grevlex();
        assert_eq!(o.cmp(&m(&[0, 0, 1, 0, 1]), &m(&[0, 0, 0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[1, 0, 0, 1, 0]), &m(&[0, 1, 1, 0, 0])), Ordering::Less);
    }

    #[test]
    fn lex_example() {
        let o = MonomialOrder::lex();
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 100])), Ordering::Greater);
    }

    #[test]
    fn generic_path_matches_fast_path() {
        let fast = MonomialOrder::grevlex();
        let slow = MonomialOrder::grevlex().with_perm(vec![0, 1, 2]);
        let mons = [m(&[1, 2, 0]), m(&[0, 3, 0]), m(&[2, 0, 1]), m(&[0, 0, 3]), m(&[1, 1, 1])];
        for a in &mons {
            for b in &mons {
                assert_eq!(fast.cmp(a, b), slow.cmp(a, b));
            }
        }
    }

    #[test]
    fn elimination_puts_first_block_first() {
        let o = MonomialOrder::elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn permutation_reorders_variables() {
        let o = MonomialOrder::lex().with_perm(vec![1, 0]);
        assert_eq!(o.cmp(&m(&[5, 0]), &m(&[0, 1])), Ordering::Less);
    }
}
