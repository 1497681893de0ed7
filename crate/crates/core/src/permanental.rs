//! Generic, symmetric and Hankel matrices of indeterminates, their minors
//! and the ideals those minors generate.
//!
//! Variable names follow one scheme per family:
//!
//! | family    | entry `(i, j)`                | variables            |
//! |-----------|-------------------------------|----------------------|
//! | generic   | `x_i_j`                       | `m·n`                |
//! | symmetric | `y_a_b`, `a = min`, `b = max` | `n(n+1)/2`           |
//! | Hankel    | `x_k`, `k = i + j − 1`        | `m + n − 1`          |
//!
//! Indices are 1-based in names and 0-based in the API.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::ring::{Polynomial, Ring, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    Generic { m: usize, n: usize },
    Symmetric { n: usize },
    Hankel { m: usize, n: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Generic { .. } => "generic",
            Family::Symmetric { .. } => "symmetric",
            Family::Hankel { .. } => "hankel",
        }
    }

    /// `(rows, columns)`.
    pub fn dims(&self) -> (usize, usize) {
        match *self {
            Family::Generic { m, n } | Family::Hankel { m, n } => (m, n),
            Family::Symmetric { n } => (n, n),
        }
    }
}

/// A matrix family, a minor size and a coefficient field.
///
/// Rectangular shapes are normalized to `m ≤ n`; both generic and Hankel
/// ideals of minors are invariant under transposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub family: Family,
    pub t: usize,
    pub field: FieldSpec,
}

impl ShapeSpec {
    pub fn new(family: Family, t: usize, field: FieldSpec) -> Result<Self> {
        let family = match family {
            Family::Generic { m, n } if m > n => Family::Generic { m: n, n: m },
            Family::Hankel { m, n } if m > n => Family::Hankel { m: n, n: m },
            f => f,
        };
        let (m, n) = family.dims();
        if m < 2 || n < 2 {
            return Err(Error::InvalidShape(format!(
                "{} needs at least two rows and columns, got {m}x{n}",
                family.name()
            )));
        }
        if t == 0 || t > m {
            return Err(Error::InvalidShape(format!("minor size {t} does not fit a {m}x{n} matrix")));
        }
        Ok(ShapeSpec { family, t, field })
    }

    pub fn generic(m: usize, n: usize) -> Result<Self> {
        Self::new(Family::Generic { m, n }, 2, FieldSpec::RATIONALS)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        Self::new(Family::Symmetric { n }, 2, FieldSpec::RATIONALS)
    }

    pub fn hankel(m: usize, n: usize) -> Result<Self> {
        Self::new(Family::Hankel { m, n }, 2, FieldSpec::RATIONALS)
    }

    pub fn with_field(self, field: FieldSpec) -> Self {
        ShapeSpec { field, ..self }
    }

    pub fn with_minor_size(self, t: usize) -> Result<Self> {
        Self::new(self.family, t, self.field)
    }

    /// Parses `generic:MxN`, `symmetric:N` or `hankel:MxN`, each with an
    /// optional `:t=T` suffix (default 2).
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        let bad = |why: &str| Error::InvalidShape(format!("{text:?}: {why}"));
        let mut parts = text.trim().split(':');
        let family = parts.next().unwrap_or_default().to_ascii_lowercase();
        let dims = parts.next().ok_or_else(|| bad("missing dimensions"))?;
        let mut t = 2;
        for extra in parts {
            let value = extra
                .strip_prefix("t=")
                .ok_or_else(|| bad("expected `t=T` after the dimensions"))?;
            t = value.parse().map_err(|_| bad("minor size is not a number"))?;
        }
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad("dimension is not a number"));
        let pair = |s: &str| -> Result<(usize, usize)> {
            let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| bad("expected MxN"))?;
            Ok((num(a)?, num(b)?))
        };
        let fam = match family.as_str() {
            "generic" => {
                let (m, n) = pair(dims)?;
                Family::Generic { m, n }
            }
            "hankel" => {
                let (m, n) = pair(dims)?;
                Family::Hankel { m, n }
            }
            "symmetric" => Family::Symmetric { n: num(dims)? },
            _ => return Err(bad("family must be generic, symmetric or hankel")),
        };
        Self::new(fam, t, field)
    }

    pub fn dims(&self) -> (usize, usize) {
        self.family.dims()
    }

    /// Ring variables in declaration order, which is also the order's
    /// priority.
    pub fn variables(&self) -> Vec<String> {
        match self.family {
            Family::Generic { m, n } => (1..=m)
                .flat_map(|i| (1..=n).map(move |j| generic_var(i, j)))
                .collect(),
            Family::Symmetric { n } => (1..=n)
                .flat_map(|i| (i..=n).map(move |j| symmetric_var(i, j)))
                .collect(),
            Family::Hankel { m, n } => (1..m + n).map(hankel_var).collect(),
        }
    }

    /// Name of entry `(i, j)`, 0-based.
    pub fn entry_name(&self, i: usize, j: usize) -> String {
        match self.family {
            Family::Generic { .. } => generic_var(i + 1, j + 1),
            Family::Symmetric { .. } => symmetric_var(i + 1, j + 1),
            Family::Hankel { .. } => hankel_var(i + j + 1),
        }
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Generic { m, n } => write!(f, "generic:{m}x{n}")?,
            Family::Symmetric { n } => write!(f, "symmetric:{n}")?,
            Family::Hankel { m, n } => write!(f, "hankel:{m}x{n}")?,
        }
        if self.t != 2 {
            write!(f, ":t={}", self.t)?;
        }
        Ok(())
    }
}

impl FromStr for ShapeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, FieldSpec::RATIONALS)
    }
}

pub fn generic_var(i: usize, j: usize) -> String {
    format!("x_{i}_{j}")
}

pub fn symmetric_var(i: usize, j: usize) -> String {
    format!("y_{}_{}", i.min(j), i.max(j))
}

pub fn hankel_var(k: usize) -> String {
    format!("x_{k}")
}

/// The lex order of the family: row-major for generic, upper-triangular
/// row-major for symmetric, `x_1 > x_2 > …` for Hankel.
pub fn shape_order(shape: &ShapeSpec) -> MonomialOrder {
    MonomialOrder::lex(&shape.variables()).expect("shape variables are distinct")
}

/// A grid of ring variables, stored as slots of its ring.
#[derive(Clone, Debug)]
pub struct SymbolicMatrix<F: Field> {
    ring: Arc<Ring<F>>,
    rows: usize,
    cols: usize,
    slots: Vec<usize>,
}

impl<F: Field> SymbolicMatrix<F> {
    /// A matrix whose entries are the named variables of `ring`, row-major.
    pub fn from_names<S: AsRef<str>>(ring: &Arc<Ring<F>>, rows: usize, cols: usize, names: &[S]) -> Result<Self> {
        if names.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                names.len()
            )));
        }
        let slots = names
            .iter()
            .map(|n| ring.slot(n.as_ref()).ok_or_else(|| Error::UnknownVariable(n.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolicMatrix {
            ring: ring.clone(),
            rows,
            cols,
            slots,
        })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &str {
        self.ring.slot_name(self.slots[i * self.cols + j])
    }

    pub fn entry_poly(&self, i: usize, j: usize) -> Polynomial<F> {
        self.ring
            .monomial(Monomial::variable(self.ring.nvars(), self.slots[i * self.cols + j]))
    }

    /// Distinct entry names in first-occurrence row-major order.
    pub fn variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for &s in &self.slots {
            let name = self.ring.slot_name(s);
            if !out.iter().any(|o| o == name) {
                out.push(name.to_string());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        self.check_indices(rows, cols)?;
        let slots = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.slots[i * self.cols + j])
            .collect();
        Ok(SymbolicMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            slots,
        })
    }

    fn check_indices(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(Error::InvalidArgument("row or column index out of range".into()));
        }
        let distinct = |v: &[usize]| v.iter().enumerate().all(|(k, a)| !v[..k].contains(a));
        if !distinct(rows) || !distinct(cols) {
            return Err(Error::InvalidArgument("repeated row or column index".into()));
        }
        Ok(())
    }

    fn minor(&self, rows: &[usize], cols: &[usize], signed: bool) -> Result<Polynomial<F>> {
        if rows.len() != cols.len() {
            return Err(Error::InvalidArgument(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        self.check_indices(rows, cols)?;
        let field = self.ring.field();
        let nvars = self.ring.nvars();
        let mut terms = Vec::new();
        for_each_permutation(cols.len(), |perm, odd| {
            let mut m = Monomial::one(nvars);
            for (k, &p) in perm.iter().enumerate() {
                m.exps_mut()[self.slots[rows[k] * self.cols + cols[p]]] += 1;
            }
            let coeff = if signed && odd { field.from_i64(-1) } else { field.one() };
            terms.push(Term { coeff, monomial: m });
        });
        Ok(self.ring.from_terms(terms))
    }

    /// Sum over bijections `rows → cols` of the entry products, every
    /// coefficient `+1`.
    pub fn subpermanent(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial<F>> {
        self.minor(rows, cols, false)
    }

    /// The signed expansion.
    pub fn subdeterminant(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial<F>> {
        self.minor(rows, cols, true)
    }

    /// The ideal of all `t×t` subpermanents, duplicates removed, in the
    /// order of (row subset, column subset) lexicographically.
    pub fn permanental_ideal(&self, t: usize) -> Result<Ideal<F>> {
        self.minors_ideal(t, false)
    }

    pub fn determinantal_ideal(&self, t: usize) -> Result<Ideal<F>> {
        self.minors_ideal(t, true)
    }

    fn minors_ideal(&self, t: usize, signed: bool) -> Result<Ideal<F>> {
        if t == 0 || t > self.rows.min(self.cols) {
            return Err(Error::InvalidShape(format!(
                "minor size {t} does not fit a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut gens = Vec::new();
        for rows in subsets(self.rows, t) {
            for cols in subsets(self.cols, t) {
                gens.push(self.minor(&rows, &cols, signed)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }
}

/// The matrix of a shape over the shape's ring and order.
pub fn build_matrix<F: Field>(shape: &ShapeSpec, field: F) -> Result<SymbolicMatrix<F>> {
    if field.spec() != shape.field {
        return Err(Error::InvalidArgument(format!(
            "shape is over {} but the field is {}",
            shape.field,
            field.spec()
        )));
    }
    let vars = shape.variables();
    let ring = Ring::new(field, &vars, shape_order(shape))?;
    let (m, n) = shape.dims();
    let names: Vec<String> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| shape.entry_name(i, j))
        .collect();
    SymbolicMatrix::from_names(&ring, m, n, &names)
}

/// `P_t` of the shape, in the ring of [`build_matrix`].
pub fn permanental_ideal<F: Field>(shape: &ShapeSpec, field: F) -> Result<Ideal<F>> {
    build_matrix(shape, field)?.permanental_ideal(shape.t)
}

pub fn determinantal_ideal<F: Field>(shape: &ShapeSpec, field: F) -> Result<Ideal<F>> {
    build_matrix(shape, field)?.determinantal_ideal(shape.t)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Visits every permutation of `0..n` with its parity (`true` if odd).
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize], bool)) {
    fn go(k: usize, perm: &mut Vec<usize>, odd: bool, visit: &mut dyn FnMut(&[usize], bool)) {
        if k == perm.len() {
            visit(perm, odd);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            go(k + 1, perm, odd ^ (i != k), visit);
            perm.swap(k, i);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    go(0, &mut perm, false, &mut visit);
}
