//! Structured polynomial matrices and exact determinants, cofactors and minors.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::polyring::{Field, PolyRing, Polynomial, Rationals, Ring};

/// Which constructor produced a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Generic { m: usize },
    Symmetric { m: usize },
    Catalecticant { m: usize, r: usize },
    Hankel { m: usize },
    GpAssociated { m: usize, r: usize },
    SubHankel { n: usize },
    DegenerateGeneric { m: usize },
    Sc3,
    Hessian,
    Custom,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Generic { m } => write!(f, "generic({m})"),
            Provenance::Symmetric { m } => write!(f, "symmetric({m})"),
            Provenance::Catalecticant { m, r } => write!(f, "catalecticant({m},{r})"),
            Provenance::Hankel { m } => write!(f, "hankel({m})"),
            Provenance::GpAssociated { m, r } => write!(f, "gp-associated({m},{r})"),
            Provenance::SubHankel { n } => write!(f, "sub-hankel({n})"),
            Provenance::DegenerateGeneric { m } => write!(f, "degenerate-generic({m})"),
            Provenance::Sc3 => write!(f, "sc3"),
            Provenance::Hessian => write!(f, "hessian"),
            Provenance::Custom => write!(f, "custom"),
        }
    }
}

/// Largest symbolic determinant attempted for general polynomial entries.
pub const GENERAL_DET_LIMIT: usize = 5;
/// Largest symbolic determinant attempted when every entry is a variable or 0.
pub const VARIABLE_DET_LIMIT: usize = 7;

#[derive(Clone)]
pub struct PolyMatrix<F: Field> {
    ring: Ring<F>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
    provenance: Provenance,
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}x{}", self.provenance, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_text()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_text()).collect();
            writeln!(f, "{}", row.join(" | "))?;
        }
        Ok(())
    }
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(AlgebraError::Invalid(msg.to_string()))
    }
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(ring: &Ring<F>, rows: usize, cols: usize, entries: Vec<Polynomial<F>>, provenance: Provenance) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::Shape("empty matrix".into()));
        }
        if entries.len() != rows * cols {
            return Err(AlgebraError::Length { expected: rows * cols, got: entries.len() });
        }
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(AlgebraError::MixedRings);
        }
        Ok(PolyMatrix { ring: ring.clone(), rows, cols, entries, provenance })
    }

    /// Matrix whose entry (i, j) is x_{idx(i,j)} or 0 when `idx` returns None.
    fn from_index(ring: &Ring<F>, rows: usize, cols: usize, provenance: Provenance, idx: impl Fn(usize, usize) -> Option<usize>) -> Self {
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| idx(i, j).map_or_else(|| ring.zero(), |k| ring.var(k)))
            .collect();
        PolyMatrix { ring: ring.clone(), rows, cols, entries, provenance }
    }

    /// m x m matrix with entry (i, j) = x_{ri+j}.
    pub fn catalecticant(field: F, m: usize, r: usize) -> Result<Self> {
        check(m >= 2 && (1..=m).contains(&r), "catalecticant needs m >= 2 and 1 <= r <= m")?;
        let ring = PolyRing::xs(field, (m - 1) * (r + 1) + 1);
        let prov = if r == 1 { Provenance::Hankel { m } } else { Provenance::Catalecticant { m, r } };
        Ok(Self::from_index(&ring, m, m, prov, |i, j| Some(r * i + j)))
    }

    pub fn hankel(field: F, m: usize) -> Result<Self> {
        Self::catalecticant(field, m, 1)
    }

    pub fn generic(field: F, m: usize) -> Result<Self> {
        check(m >= 1, "generic needs m >= 1")?;
        let ring = PolyRing::new(field, (0..m * m).map(|i| format!("x{i}")))?;
        Ok(Self::from_index(&ring, m, m, Provenance::Generic { m }, |i, j| Some(m * i + j)))
    }

    /// Symmetric matrix numbering the upper triangle row by row.
    pub fn symmetric(field: F, m: usize) -> Result<Self> {
        check(m >= 1, "symmetric needs m >= 1")?;
        let ring = PolyRing::new(field, (0..m * (m + 1) / 2).map(|i| format!("x{i}")))?;
        let idx = move |i: usize, j: usize| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            Some(a * m + b - a - a * a.saturating_sub(1) / 2)
        };
        Ok(Self::from_index(&ring, m, m, Provenance::Symmetric { m }, idx))
    }

    /// (m-1) x (m+r) matrix with entry (i, j) = x_{ri+j}.
    pub fn gp_associated(field: F, m: usize, r: usize) -> Result<Self> {
        check(m >= 2 && r >= 1 && r < m, "gp-associated needs m >= 2 and 1 <= r <= m-1")?;
        let ring = PolyRing::xs(field, (m - 1) * (r + 1) + 1);
        Ok(Self::from_index(&ring, m - 1, m + r, Provenance::GpAssociated { m, r }, |i, j| Some(r * i + j)))
    }

    /// n x n, entry (i, j) = x_{i+j} if i+j <= n, else 0.
    pub fn sub_hankel(field: F, n: usize) -> Result<Self> {
        check(n >= 2, "sub-hankel needs n >= 2")?;
        let ring = PolyRing::xs(field, n + 1);
        Ok(Self::from_index(&ring, n, n, Provenance::SubHankel { n }, |i, j| (i + j <= n).then_some(i + j)))
    }

    /// Generic m x m matrix with its last entry replaced by 0.
    pub fn degenerate_generic(field: F, m: usize) -> Result<Self> {
        check(m >= 2, "degenerate-generic needs m >= 2")?;
        let ring = PolyRing::xs(field, m * m - 1);
        let last = m * m - 1;
        Ok(Self::from_index(&ring, m, m, Provenance::DegenerateGeneric { m }, |i, j| {
            (m * i + j != last).then_some(m * i + j)
        }))
    }

    /// The 2-leap 3 x 3 catalecticant with its last entry replaced by 0.
    pub fn sc3(field: F) -> Result<Self> {
        let ring = PolyRing::xs(field, 6);
        Ok(Self::from_index(&ring, 3, 3, Provenance::Sc3, |i, j| (2 * i + j != 6).then_some(2 * i + j)))
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }
    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }
    pub fn row(&self, i: usize) -> &[Polynomial<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn with_entry(mut self, i: usize, j: usize, p: Polynomial<F>) -> Result<Self> {
        if i >= self.rows || j >= self.cols {
            return Err(AlgebraError::Shape(format!("entry ({i},{j}) outside {}x{}", self.rows, self.cols)));
        }
        if p.ring() != &self.ring {
            return Err(AlgebraError::MixedRings);
        }
        self.entries[i * self.cols + j] = p;
        self.provenance = Provenance::Custom;
        Ok(self)
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix { ring: self.ring.clone(), rows: self.cols, cols: self.rows, entries, provenance: Provenance::Custom }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        PolyMatrix { ring: self.ring.clone(), rows: rows.len(), cols: cols.len(), entries, provenance: Provenance::Custom }
    }

    pub fn swap_rows(&self, a: usize, b: usize) -> Self {
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.swap(a, b);
        self.submatrix(&order, &(0..self.cols).collect::<Vec<_>>())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(AlgebraError::Shape(format!("{}x{} times {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut entries = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { ring: self.ring.clone(), rows: self.rows, cols: o.cols, entries, provenance: Provenance::Custom })
    }

    /// Every entry is 0 or a single variable with coefficient 1.
    pub fn is_variable_entry(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || (e.len() == 1 && e.degree() == Some(1) && self.ring.field().is_one(&e.terms()[0].1)))
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare(self.rows, self.cols))
        }
    }

    /// Symbolic size limit that applies to this matrix.
    pub fn det_limit(&self) -> usize {
        if self.is_variable_entry() {
            VARIABLE_DET_LIMIT
        } else {
            GENERAL_DET_LIMIT
        }
    }

    /// Exact determinant within the default size limits.
    pub fn determinant(&self) -> Result<Polynomial<F>> {
        self.determinant_with_limit(self.det_limit())
    }

    pub fn determinant_with_limit(&self, limit: usize) -> Result<Polynomial<F>> {
        self.require_square()?;
        if self.rows > limit {
            return Err(AlgebraError::Invalid(format!("symbolic determinant of size {} exceeds limit {limit}", self.rows)));
        }
        Ok(self.det_cofactor())
    }

    /// Laplace expansion down the rows, memoized on the set of remaining columns.
    pub fn det_cofactor(&self) -> Polynomial<F> {
        assert!(self.is_square() && self.rows <= 63);
        let mut memo: HashMap<u64, Polynomial<F>> = HashMap::new();
        self.cofactor_rec(0, (1u64 << self.cols) - 1, &mut memo)
    }

    fn cofactor_rec(&self, row: usize, cols: u64, memo: &mut HashMap<u64, Polynomial<F>>) -> Polynomial<F> {
        if row == self.rows {
            return self.ring.one();
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = self.ring.zero();
        let mut sign_neg = false;
        for j in 0..self.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let e = self.get(row, j);
            if !e.is_zero() {
                let sub = self.cofactor_rec(row + 1, cols & !(1 << j), memo);
                if !sub.is_zero() {
                    let t = e * &sub;
                    acc = if sign_neg { &acc - &t } else { &acc + &t };
                }
            }
            sign_neg = !sign_neg;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// Fraction-free (Bareiss) elimination.
    pub fn det_bareiss(&self) -> Result<Polynomial<F>> {
        self.require_square()?;
        let n = self.rows;
        let mut a: Vec<Vec<Polynomial<F>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = self.ring.one();
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        negate = !negate;
                    }
                    None => return Ok(self.ring.zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_divide(&prev)?.ok_or_else(|| AlgebraError::Invalid("Bareiss division failed".into()))?;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -&d } else { d })
    }

    /// Determinant of the submatrix on the given rows and columns.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
        self.submatrix(rows, cols).det_cofactor()
    }

    /// (-1)^{i+j} times the minor deleting row i and column j.
    pub fn signed_cofactor(&self, i: usize, j: usize) -> Polynomial<F> {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        let m = if rows.is_empty() { self.ring.one() } else { self.minor(&rows, &cols) };
        if (i + j) % 2 == 1 {
            -&m
        } else {
            m
        }
    }

    /// Adjugate: entry (i, j) is the signed cofactor of (j, i), so M adj(M) = det(M) Id.
    pub fn adjugate(&self) -> Result<Self> {
        self.require_square()?;
        if self.rows < 2 {
            return Err(AlgebraError::Shape("adjugate needs size >= 2".into()));
        }
        let n = self.rows;
        let entries = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| self.signed_cofactor(j, i)).collect();
        Ok(PolyMatrix { ring: self.ring.clone(), rows: n, cols: n, entries, provenance: Provenance::Custom })
    }

    /// All t x t minors, deduplicated up to scalars; zero minors dropped.
    pub fn minors(&self, t: usize) -> Result<Vec<Polynomial<F>>> {
        if t == 0 || t > self.rows.min(self.cols) {
            return Err(AlgebraError::Invalid(format!("minor size {t} out of range")));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for rs in combinations(self.rows, t) {
            for cs in combinations(self.cols, t) {
                let m = self.minor(&rs, &cs);
                if !m.is_zero() && seen.insert(m.monic()) {
                    out.push(m);
                }
            }
        }
        Ok(out)
    }

    pub fn minors_ideal(&self, t: usize) -> Result<Ideal<F>> {
        Ok(Ideal::new(&self.ring, self.minors(t)?))
    }

    /// Sum of the signed cofactors at every position holding variable `var`.
    pub fn partials_as_cofactor_sums(&self, var: usize) -> Result<Polynomial<F>> {
        self.require_square()?;
        if !self.is_variable_entry() {
            return Err(AlgebraError::Invalid("entries must be variables or 0".into()));
        }
        let x = self.ring.var(var);
        let mut positions = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) == &x {
                    positions.push((i, j));
                }
            }
        }
        for (a, &(i, j)) in positions.iter().enumerate() {
            if positions[a + 1..].iter().any(|&(k, l)| k == i || l == j) {
                return Err(AlgebraError::Invalid(format!("variable {var} repeats in a row or column")));
            }
        }
        let mut acc = self.ring.zero();
        for (i, j) in positions {
            acc = &acc + &self.signed_cofactor(i, j);
        }
        Ok(acc)
    }

    /// Entrywise image in another ring (e.g. after reduction mod p).
    pub fn map_entries<G: Field>(&self, ring: &Ring<G>, f: impl Fn(&Polynomial<F>) -> Polynomial<G>) -> PolyMatrix<G> {
        PolyMatrix {
            ring: ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn evaluate(&self, point: &[F::Elem]) -> Result<Vec<Vec<F::Elem>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|e| e.evaluate(point)).collect()).collect()
    }
}

/// Hessian matrix of second partial derivatives.
pub fn hessian_matrix<F: Field>(f: &Polynomial<F>) -> Result<PolyMatrix<F>> {
    let n = f.ring().nvars();
    let grad = f.gradient();
    let mut entries: Vec<Polynomial<F>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(if j < i { entries[j * n + i].clone() } else { grad[i].differentiate(j)? });
        }
    }
    PolyMatrix::new(f.ring(), n, n, entries, Provenance::Hessian)
}

/// k-subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Matrix families addressable by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    Generic,
    Symmetric,
    Catalecticant,
    Hankel,
    GpAssociated,
    SubHankel,
    DegenerateGeneric,
    Sc3,
}

impl std::str::FromStr for Kind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Kind> {
        Ok(match s {
            "generic" => Kind::Generic,
            "symmetric" => Kind::Symmetric,
            "catalecticant" | "cat" => Kind::Catalecticant,
            "hankel" => Kind::Hankel,
            "gp-associated" | "gp" => Kind::GpAssociated,
            "sub-hankel" | "subhankel" => Kind::SubHankel,
            "degenerate-generic" | "dg" => Kind::DegenerateGeneric,
            "sc3" => Kind::Sc3,
            other => return Err(AlgebraError::Parse(format!("unknown matrix kind '{other}'"))),
        })
    }
}

/// A matrix request: family, parameters and entry overrides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixSpec {
    pub kind: Kind,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub n: Option<usize>,
    /// (row, col, Some(variable) or None for 0), 0-based.
    pub overrides: Vec<(usize, usize, Option<usize>)>,
}

impl MatrixSpec {
    pub fn new(kind: Kind) -> Self {
        MatrixSpec { kind, m: None, r: None, n: None, overrides: Vec::new() }
    }

    /// Parses lines `key = value`; keys are kind, m, r, n and
    /// `entry <i> <j>` with value `x<k>` or `0`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kind = None;
        let mut spec = MatrixSpec::new(Kind::Generic);
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| AlgebraError::Parse(format!("expected key = value: {line}")))?;
            let (k, v) = (k.trim(), v.trim());
            let num = |v: &str| v.parse::<usize>().map_err(|_| AlgebraError::Parse(format!("bad integer '{v}'")));
            match k {
                "kind" => kind = Some(v.parse::<Kind>()?),
                "m" => spec.m = Some(num(v)?),
                "r" => spec.r = Some(num(v)?),
                "n" => spec.n = Some(num(v)?),
                _ if k.starts_with("entry") => {
                    let idx: Vec<&str> = k.split_whitespace().skip(1).collect();
                    if idx.len() != 2 {
                        return Err(AlgebraError::Parse(format!("expected 'entry i j': {k}")));
                    }
                    let target = if v == "0" {
                        None
                    } else {
                        Some(v.strip_prefix('x').map(num).ok_or_else(|| AlgebraError::Parse(format!("bad entry '{v}'")))??)
                    };
                    spec.overrides.push((num(idx[0])?, num(idx[1])?, target));
                }
                _ => return Err(AlgebraError::Parse(format!("unknown key '{k}'"))),
            }
        }
        spec.kind = kind.ok_or_else(|| AlgebraError::Parse("missing kind".into()))?;
        Ok(spec)
    }

    pub fn build<F: Field>(&self, field: F) -> Result<PolyMatrix<F>> {
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| AlgebraError::Invalid(format!("parameter {name} required")));
        let mut mat = match self.kind {
            Kind::Generic => PolyMatrix::generic(field, need(self.m, "m")?)?,
            Kind::Symmetric => PolyMatrix::symmetric(field, need(self.m, "m")?)?,
            Kind::Catalecticant => PolyMatrix::catalecticant(field, need(self.m, "m")?, need(self.r, "r")?)?,
            Kind::Hankel => PolyMatrix::hankel(field, need(self.m, "m")?)?,
            Kind::GpAssociated => PolyMatrix::gp_associated(field, need(self.m, "m")?, need(self.r, "r")?)?,
            Kind::SubHankel => PolyMatrix::sub_hankel(field, need(self.n.or(self.m), "n")?)?,
            Kind::DegenerateGeneric => PolyMatrix::degenerate_generic(field, need(self.m, "m")?)?,
            Kind::Sc3 => PolyMatrix::sc3(field)?,
        };
        for &(i, j, v) in &self.overrides {
            let p = match v {
                None => mat.ring().zero(),
                Some(k) if k < mat.ring().nvars() => mat.ring().var(k),
                Some(k) => return Err(AlgebraError::VarIndex(k)),
            };
            mat = mat.with_entry(i, j, p)?;
        }
        Ok(mat)
    }
}

/// Shorthand for rational matrices.
pub type QMatrix = PolyMatrix<Rationals>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    fn rows_text(m: &QMatrix) -> Vec<String> {
        (0..m.rows()).map(|i| m.row(i).iter().map(|p| p.to_text()).collect::<Vec<_>>().join(" ")).collect()
    }

    #[test]
    fn constructor_shapes() {
        let h = PolyMatrix::hankel(Rationals, 3).unwrap();
        assert_eq!(rows_text(&h), ["x0 x1 x2", "x1 x2 x3", "x2 x3 x4"]);
        let c = PolyMatrix::catalecticant(Rationals, 3, 2).unwrap();
        assert_eq!(rows_text(&c), ["x0 x1 x2", "x2 x3 x4", "x4 x5 x6"]);
        let s = PolyMatrix::sub_hankel(Rationals, 3).unwrap();
        assert_eq!(rows_text(&s), ["x0 x1 x2", "x1 x2 x3", "x2 x3 0"]);
        let gp = PolyMatrix::gp_associated(Rationals, 3, 1).unwrap();
        assert_eq!(rows_text(&gp), ["x0 x1 x2 x3", "x1 x2 x3 x4"]);
        let gp = PolyMatrix::gp_associated(Rationals, 3, 2).unwrap();
        assert_eq!(rows_text(&gp), ["x0 x1 x2 x3 x4", "x2 x3 x4 x5 x6"]);
        let gp = PolyMatrix::gp_associated(Rationals, 4, 3).unwrap();
        assert_eq!((gp.rows(), gp.cols()), (3, 7));
        assert_eq!([gp.get(0, 0), gp.get(1, 0), gp.get(2, 0)].map(|p| p.to_text()), ["x0", "x3", "x6"]);
        let sym = PolyMatrix::symmetric(Rationals, 3).unwrap();
        assert_eq!(rows_text(&sym), ["x0 x1 x2", "x1 x3 x4", "x2 x4 x5"]);
        let dg = PolyMatrix::degenerate_generic(Rationals, 3).unwrap();
        assert_eq!(dg.ring().nvars(), 8);
        assert!(dg.get(2, 2).is_zero());
        let sc = PolyMatrix::sc3(Rationals).unwrap();
        assert_eq!(rows_text(&sc), ["x0 x1 x2", "x2 x3 x4", "x4 x5 0"]);
        assert!(PolyMatrix::catalecticant(Rationals, 1, 1).is_err());
        assert!(PolyMatrix::gp_associated(Rationals, 3, 3).is_err());
    }

    #[test]
    fn variable_counts() {
        for m in 2..=4 {
            for r in 1..=m {
                let c = PolyMatrix::catalecticant(Rationals, m, r).unwrap();
                assert_eq!(c.ring().nvars(), (m - 1) * (r + 1) + 1);
                let d = c.determinant().unwrap();
                assert!(d.is_homogeneous());
                assert_eq!(d.degree(), Some(m as u32));
            }
        }
    }

    #[test]
    fn small_determinants() {
        let h2 = PolyMatrix::hankel(Rationals, 2).unwrap();
        assert_eq!(h2.determinant().unwrap().to_text(), "-x1^2 + x0*x2");
        let h3 = PolyMatrix::hankel(Rationals, 3).unwrap();
        let f = h3.determinant().unwrap();
        let r = h3.ring();
        assert_eq!(f, r.parse("x0*x2*x4 - x0*x3^2 - x1^2*x4 + 2*x1*x2*x3 - x2^3").unwrap());
        assert_eq!(h3.det_bareiss().unwrap(), f);
        assert_eq!(h3.swap_rows(0, 2).determinant().unwrap(), -&f);
    }

    #[test]
    fn adjugate_identities() {
        let g2 = PolyMatrix::generic(Rationals, 2).unwrap();
        assert_eq!(rows_text(&g2.adjugate().unwrap()), ["x3 -x1", "-x2 x0"]);
        let g = PolyMatrix::generic(Rationals, 3).unwrap();
        let f = g.determinant().unwrap();
        let adj = g.adjugate().unwrap();
        let prod = g.mul(&adj).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(prod.get(i, j), &if i == j { f.clone() } else { g.ring().zero() });
            }
        }
        assert_eq!(adj.det_bareiss().unwrap(), f.pow(2).unwrap());
    }

    #[test]
    fn minors_and_cofactor_sums() {
        let h = PolyMatrix::hankel(Rationals, 3).unwrap();
        assert_eq!(h.minors(1).unwrap().len(), 5);
        let gp = PolyMatrix::gp_associated(Rationals, 3, 1).unwrap();
        assert_eq!(gp.minors(2).unwrap().len(), 6);
        let f = h.determinant().unwrap();
        for v in 0..5 {
            assert_eq!(h.partials_as_cofactor_sums(v).unwrap(), f.differentiate(v).unwrap());
        }
        assert_eq!(f.differentiate(2).unwrap(), h.ring().parse("x0*x4 + 2*x1*x3 - 3*x2^2").unwrap());
        let s = PolyMatrix::sub_hankel(Rationals, 3).unwrap();
        let fs = s.determinant().unwrap();
        assert_eq!(s.partials_as_cofactor_sums(3).unwrap(), fs.differentiate(3).unwrap());
    }

    #[test]
    fn two_leap_minor_relation() {
        let b = Budget::unlimited();
        let c = PolyMatrix::catalecticant(Rationals, 3, 2).unwrap();
        let gp = PolyMatrix::gp_associated(Rationals, 3, 2).unwrap();
        let r = c.ring();
        let excluded = gp.minor(&[0, 1], &[1, 3]);
        assert_eq!(excluded.monic(), r.parse("x1*x5 - x3^2").unwrap().monic());
        let mut expect: Vec<_> = gp.minors(2).unwrap().into_iter().filter(|m| m.monic() != excluded.monic()).collect();
        let ic = c.minors_ideal(2).unwrap();
        expect.retain(|m| !m.is_zero());
        assert!(ic.equals(&Ideal::new(r, expect), &b).unwrap());
    }

    #[test]
    fn gp_matches_hankel_submaximal() {
        let b = Budget::unlimited();
        for m in 3..=4 {
            let h = PolyMatrix::hankel(Rationals, m).unwrap();
            let gp = PolyMatrix::gp_associated(Rationals, m, 1).unwrap();
            assert!(h.minors_ideal(m - 1).unwrap().equals(&gp.minors_ideal(m - 1).unwrap(), &b).unwrap());
        }
    }

    #[test]
    fn spec_text() {
        let s = MatrixSpec::parse("kind = catalecticant\nm = 3\nr = 2\nentry 2 2 = 0 # sc3\n").unwrap();
        let a = s.build(Rationals).unwrap();
        let b = PolyMatrix::sc3(Rationals).unwrap();
        assert_eq!(a.determinant().unwrap().to_text(), b.determinant().unwrap().to_text());
        assert!(MatrixSpec::parse("m = 3").is_err());
    }

    #[test]
    fn hessian_symmetry() {
        let h = PolyMatrix::hankel(Rationals, 3).unwrap();
        let hm = hessian_matrix(&h.determinant().unwrap()).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(hm.get(i, j), hm.get(j, i));
            }
        }
    }
}
