//! Imported facts about the ideals of 2×2 subpermanents: which primes cover
//! the minimal primes, which associated primes are known, which colon
//! identities serve as witnesses, and the expected v-number of every
//! shape.
//!
//! Nothing here is trusted blindly downstream. Colon identities are
//! recomputed by [`crate::vnum::verify_witness`]; primality is only ever
//! asserted through [`is_recognized_prime`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::ops::colon_poly;
use crate::permanental::{generic_var, hankel_var, symmetric_var, Family, ShapeSpec};
use crate::ring::{Polynomial, Ring};

/// Prime data for one shape, in the ring of its permanental ideal.
#[derive(Clone, Debug)]
pub struct KnownPrimeSet<F: Field> {
    pub shape: ShapeSpec,
    /// The ideal itself is prime (2×2 shapes).
    pub is_prime: bool,
    /// Ideals such that every minimal prime contains one of them.
    pub covers: Vec<Ideal<F>>,
    /// The complete list of minimal primes, when known.
    pub minimal_primes: Vec<Ideal<F>>,
    /// The complete list of associated primes, when known.
    pub ass_primes: Option<Vec<Ideal<F>>>,
    pub provenance: String,
}

impl<F: Field> KnownPrimeSet<F> {
    /// The ideals a lower bound is taken over, with a label: the full
    /// associated-prime list if known, else the minimal primes, else the
    /// covers.
    pub fn lower_bound_ideals(&self) -> (&'static str, &[Ideal<F>]) {
        if let Some(ass) = &self.ass_primes {
            ("associated primes", ass)
        } else if !self.minimal_primes.is_empty() {
            ("minimal primes", &self.minimal_primes)
        } else {
            ("minimal-prime covers", &self.covers)
        }
    }

    /// Every listed ideal, deduplicated by generator list.
    pub fn all_primes(&self) -> Vec<Ideal<F>> {
        let mut out: Vec<Ideal<F>> = Vec::new();
        let lists = self
            .ass_primes
            .iter()
            .flatten()
            .chain(&self.minimal_primes)
            .chain(&self.covers);
        for p in lists {
            if !out.iter().any(|q| q.generators() == p.generators()) {
                out.push(p.clone());
            }
        }
        out
    }
}

/// A polynomial `f` and the prime `I : f` is expected to equal.
#[derive(Clone, Debug)]
pub struct Witness<F: Field> {
    pub f: Polynomial<F>,
    pub expected_colon: Ideal<F>,
    pub provenance: String,
}

impl<F: Field> Witness<F> {
    pub fn degree(&self) -> u32 {
        self.f.degree().expect("witness is nonzero")
    }
}

/// The v-number of `P_2` for a shape, from the classification table.
/// `None` for minor sizes other than 2.
pub fn expected_v(shape: &ShapeSpec) -> Option<u32> {
    if shape.t != 2 {
        return None;
    }
    if shape.field.is_char_two() {
        return Some(0);
    }
    Some(match shape.family {
        Family::Generic { m: 2, n: 2 } | Family::Symmetric { n: 2 } | Family::Hankel { m: 2, n: 2 } => 0,
        Family::Generic { m: 2, .. } => 2,
        Family::Generic { .. } => 3,
        Family::Symmetric { .. } => 3,
        Family::Hankel { m, n } => match (m, n) {
            (2, 3) | (3, 3) => 3,
            (2, _) | (3, 4) | (3, 5) | (4, 4) => 2,
            _ => 1,
        },
    })
}

/// The ideal of all 2×2 subpermanents is prime for every 2×2 shape.
pub fn is_prime_shape(shape: &ShapeSpec) -> bool {
    shape.t == 2 && shape.dims() == (2, 2)
}

fn check_classified(shape: &ShapeSpec) -> Result<()> {
    if shape.t != 2 {
        return Err(Error::Unclassified(shape.to_string()));
    }
    if shape.field.is_char_two() {
        return Err(Error::CharacteristicTwo(
            "subpermanents are subdeterminants there; use the lookup path".into(),
        ));
    }
    Ok(())
}

fn vars<F: Field>(ring: &Arc<Ring<F>>, names: impl IntoIterator<Item = String>) -> Result<Ideal<F>> {
    let names: Vec<String> = names.into_iter().collect();
    Ideal::variables(ring, &names)
}

fn hankel_range<F: Field>(ring: &Arc<Ring<F>>, a: usize, b: usize) -> Result<Ideal<F>> {
    vars(ring, (a..=b).map(hankel_var))
}

/// `𝔮_rs = (y_rr·y_ss + y_rs², all other y_ij)`.
pub fn symmetric_q<F: Field>(ring: &Arc<Ring<F>>, n: usize, r: usize, s: usize) -> Result<Ideal<F>> {
    let keep = [symmetric_var(r, r), symmetric_var(s, s), symmetric_var(r, s)];
    let quadric = ring.parse(&format!("{}*{} + {}^2", keep[0], keep[1], keep[2]))?;
    let mut gens = vec![quadric];
    for i in 1..=n {
        for j in i..=n {
            let v = symmetric_var(i, j);
            if !keep.contains(&v) {
                gens.push(ring.var(&v)?);
            }
        }
    }
    Ideal::new(ring, gens)
}

/// The reduced Gröbner basis of the 2×2 subpermanents of a symmetric
/// `n×n` matrix under any diagonal order, listed family by family and
/// deduplicated.
pub fn symmetric_basis_families<F: Field>(ring: &Arc<Ring<F>>, n: usize) -> Result<Vec<Polynomial<F>>> {
    let y = |a: usize, b: usize| symmetric_var(a, b);
    let mut out: Vec<String> = Vec::new();
    let r = 1..=n;
    // quadrics
    for i in r.clone() {
        for j in i + 1..=n {
            out.push(format!("{}*{} + {}^2", y(i, i), y(j, j), y(i, j)));
        }
    }
    for i in r.clone() {
        for j in r.clone() {
            for k in j + 1..=n {
                if i != j && i != k {
                    out.push(format!("{}*{} + {}*{}", y(i, i), y(j, k), y(i, j), y(i, k)));
                }
            }
        }
    }
    for i in r.clone() {
        for j in i + 1..=n {
            for k in r.clone() {
                for l in k + 1..=n {
                    if [i, j].iter().all(|a| *a != k && *a != l) {
                        out.push(format!("{}*{}", y(i, j), y(k, l)));
                    }
                }
            }
        }
    }
    // cubics
    for i in r.clone() {
        for j in i + 1..=n {
            for l in j + 1..=n {
                for k in r.clone() {
                    if k == i || k == j || (j < k && k < l) {
                        out.push(format!("{}*{}*{}", y(i, l), y(j, l), y(k, l)));
                    }
                }
                for k in j + 1..l {
                    out.push(format!("{}*{}*{}", y(i, l), y(j, l), y(k, k)));
                }
            }
            for k in j + 1..=n {
                out.push(format!("{}*{}*{}", y(i, j), y(i, k), y(j, j)));
                out.push(format!("{}*{}*{}", y(i, k), y(j, k), y(j, j)));
                for l in k + 1..=n {
                    out.push(format!("{}*{}*{}", y(i, k), y(i, l), y(j, j)));
                }
            }
        }
        for k in i + 1..=n {
            for l in k + 1..=n {
                for j in r.clone() {
                    if j == l || j == k || (i < j && j < k) {
                        out.push(format!("{}*{}*{}", y(i, j), y(i, k), y(i, l)));
                    }
                }
            }
        }
    }
    // quartics
    for i in r.clone() {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push(format!("{}^3*{}", y(i, k), y(j, j)));
                out.push(format!("{}^2*{}^2", y(i, k), y(j, j)));
            }
        }
    }
    let mut polys: Vec<Polynomial<F>> = Vec::new();
    for text in out {
        let p = ring.parse(&text)?;
        if !polys.contains(&p) {
            polys.push(p);
        }
    }
    Ok(polys)
}

/// The prime `(x_1_3, …, x_1_n, x_2_3, …, x_2_n, x_1_1·x_2_2 + x_1_2·x_2_1)`
/// of a generic 2×n matrix.
pub fn generic_two_row_prime<F: Field>(ring: &Arc<Ring<F>>, n: usize) -> Result<Ideal<F>> {
    let mut gens: Vec<Polynomial<F>> = Vec::new();
    for i in 1..=2 {
        for j in 3..=n {
            gens.push(ring.var(&generic_var(i, j))?);
        }
    }
    gens.push(ring.parse("x_1_1*x_2_2 + x_1_2*x_2_1")?);
    Ideal::new(ring, gens)
}

/// Prime data for a shape with `t = 2` over a field of characteristic not
/// 2. `ring` must be the ring of the shape's matrix.
pub fn known_data<F: Field>(shape: &ShapeSpec, ring: &Arc<Ring<F>>) -> Result<KnownPrimeSet<F>> {
    check_classified(shape)?;
    let mut data = KnownPrimeSet {
        shape: *shape,
        is_prime: false,
        covers: Vec::new(),
        minimal_primes: Vec::new(),
        ass_primes: None,
        provenance: String::new(),
    };
    if is_prime_shape(shape) {
        data.is_prime = true;
        data.provenance = "the single 2x2 permanent generates a prime ideal".into();
        return Ok(data);
    }
    match shape.family {
        Family::Generic { m: 2, n } => {
            for i in 1..=2 {
                for j in 1..=n {
                    data.covers.push(vars(ring, [generic_var(i, j)])?);
                }
            }
            data.provenance = "every associated prime contains a variable".into();
        }
        Family::Generic { m, n } => {
            for i in 1..=m {
                data.covers.push(vars(ring, (1..=n).map(|j| generic_var(i, j)))?);
            }
            for j in 1..=n {
                data.covers.push(vars(ring, (1..=m).map(|i| generic_var(i, j)))?);
            }
            data.provenance = "every minimal prime contains all variables of a row or of a column".into();
        }
        Family::Symmetric { n } => {
            for r in 1..=n {
                for s in r + 1..=n {
                    data.minimal_primes.push(symmetric_q(ring, n, r, s)?);
                }
            }
            data.provenance = "the minimal primes are exactly the ideals q_rs, r < s".into();
        }
        Family::Hankel { m, n } => {
            let h = |a, b| hankel_range(ring, a, b);
            let ass = match (m, n) {
                (2, 3) => Some(vec![h(1, 3)?, h(2, 4)?]),
                (2, _) => Some(vec![h(1, n)?, h(2, n + 1)?, h(1, n + 1)?]),
                (3, 3) => Some(vec![h(1, 4)?, h(2, 5)?, h(1, 5)?]),
                (3, 4) => Some(vec![h(1, 5)?, h(2, 6)?, h(1, 6)?]),
                (3, 5) => Some(vec![h(1, 6)?, h(2, 7)?]),
                (4, 4) => Some(vec![h(1, 6)?, h(2, 7)?, h(1, 7)?]),
                _ => None,
            };
            data.provenance = match ass {
                Some(_) => "complete list of associated primes of the Hankel ideal".into(),
                None => "associated primes not listed; non-primality certified by the probe x_5".into(),
            };
            data.ass_primes = ass;
        }
    }
    Ok(data)
}

/// Witness data for a shape, to be verified, not trusted. The symmetric
/// witness `y_ij·y_kk²` has no fixed indices, so triples are tried in
/// lexicographic order and the first whose colon is a recognized prime is
/// used.
pub fn listed_witnesses<F: Field>(shape: &ShapeSpec, ideal: &Ideal<F>) -> Result<Vec<Witness<F>>> {
    if check_classified(shape).is_err() || is_prime_shape(shape) {
        return Ok(Vec::new());
    }
    let ring = ideal.ring();
    let w = |f: &str, colon: Ideal<F>, provenance: &str| -> Result<Witness<F>> {
        Ok(Witness {
            f: ring.parse(f)?,
            expected_colon: colon,
            provenance: provenance.to_string(),
        })
    };
    let h = |a, b| hankel_range(ring, a, b);
    let out = match shape.family {
        Family::Generic { m: 2, n } => vec![w(
            "x_1_1*x_2_2",
            generic_two_row_prime(ring, n)?,
            "colon by x_1_1*x_2_2 is the prime of the first two columns",
        )?],
        Family::Generic { m, n } => vec![w(
            "x_1_1*x_1_2*x_1_3",
            vars(ring, (2..=m).flat_map(|i| (1..=n).map(move |j| generic_var(i, j))))?,
            "colon by x_1_1*x_1_2*x_1_3 is generated by rows 2..m",
        )?],
        Family::Symmetric { n } => symmetric_witness(ideal, n)?.into_iter().collect(),
        Family::Hankel { m, n } => match (m, n) {
            (2, 3) => vec![w("x_1*x_2*x_3", h(2, 4)?, "colon by x_1*x_2*x_3 is (x_2, x_3, x_4)")?],
            (3, 3) => vec![w("x_1*x_3*x_5", h(1, 5)?, "colon by x_1*x_3*x_5 is (x_1, ..., x_5)")?],
            (2, _) => vec![w(
                &format!("x_2*x_{n}"),
                h(1, n + 1)?,
                "colon by x_2*x_n is (x_1, ..., x_(n+1))",
            )?],
            (3, 4) => vec![w("x_2*x_5", h(1, 6)?, "colon by x_2*x_5 is (x_1, ..., x_6)")?],
            (3, 5) => vec![w("x_2*x_3", h(2, 7)?, "colon by x_2*x_3 is (x_2, ..., x_7)")?],
            (4, 4) => vec![w("x_2*x_5", h(1, 7)?, "colon by x_2*x_5 is (x_1, ..., x_7)")?],
            (3, 6) | (4, 5) => vec![w("x_5", h(1, 7)?, "colon by x_5 is (x_1, ..., x_7)")?],
            _ => vec![w(
                "x_5",
                h(1, m + n - 1)?,
                "colon by x_5 is the ideal of all variables",
            )?],
        },
    };
    Ok(out)
}

fn symmetric_witness<F: Field>(ideal: &Ideal<F>, n: usize) -> Result<Option<Witness<F>>> {
    let ring = ideal.ring();
    for i in 1..=n {
        for j in i..=n {
            for k in 1..=n {
                let f = ring.parse(&format!("{}*{}^2", symmetric_var(i, j), symmetric_var(k, k)))?;
                if ideal.contains(&f)? {
                    continue;
                }
                let colon = colon_poly(ideal, &f)?;
                if is_recognized_prime(&colon)? {
                    return Ok(Some(Witness {
                        f,
                        expected_colon: colon,
                        provenance: format!(
                            "colon by y_ij*y_kk^2 is an associated prime; (i, j, k) = ({i}, {j}, {k}) is the first triple found"
                        ),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The polynomial whose colon certifies that `P_2` is not prime.
pub fn non_primality_probe<F: Field>(shape: &ShapeSpec, witnesses: &[Witness<F>], ring: &Arc<Ring<F>>) -> Result<Option<Polynomial<F>>> {
    if is_prime_shape(shape) {
        return Ok(None);
    }
    Ok(match shape.family {
        Family::Generic { m: 2, .. } => Some(ring.parse("x_1_1*x_2_2")?),
        Family::Generic { .. } => Some(ring.parse("x_1_1*x_1_2*x_1_3")?),
        Family::Hankel { m, n } if m >= 3 && m + n >= 9 => Some(ring.parse("x_5")?),
        _ => witnesses.first().map(|w| w.f.clone()),
    })
}

/// Decides membership in a restricted class of primes: the reduced basis
/// is a set of variables, possibly with one quadric `c·u·v + d·w·z` or
/// `c·u·v + d·w²` in distinct variables outside that set. Such a quadric
/// has rank at least 3 when the characteristic is not 2, so the quotient
/// is a domain.
///
/// The zero ideal is prime; the unit ideal is not.
pub fn is_recognized_prime<F: Field>(ideal: &Ideal<F>) -> Result<bool> {
    if ideal.ring().field().spec().is_char_two() {
        return Err(Error::CharacteristicTwo(
            "quadrics can be squares of linear forms in characteristic 2".into(),
        ));
    }
    let gb = ideal.groebner_basis()?;
    if gb.is_unit() {
        return Ok(false);
    }
    let mut linear: Vec<usize> = Vec::new();
    let mut quadrics = Vec::new();
    for g in gb.basis() {
        if g.is_monomial() && g.degree() == Some(1) {
            linear.push(g.terms()[0].monomial.support().next().expect("degree one"));
        } else {
            quadrics.push(g);
        }
    }
    match quadrics.as_slice() {
        [] => Ok(true),
        [q] => Ok(is_prime_quadric(q, &linear)),
        _ => Ok(false),
    }
}

fn is_prime_quadric<F: Field>(q: &Polynomial<F>, linear: &[usize]) -> bool {
    if q.len() != 2 || !q.is_homogeneous() || q.degree() != Some(2) {
        return false;
    }
    let mut slots: Vec<usize> = Vec::new();
    for t in q.terms() {
        for s in t.monomial.support() {
            slots.push(s);
        }
    }
    // uv + wz or uv + w², never u² + w²
    let squarefree = |m: &Monomial| m.support().count() == 2;
    if !squarefree(&q.terms()[0].monomial) && !squarefree(&q.terms()[1].monomial) {
        return false;
    }
    let distinct = {
        let mut s = slots.clone();
        s.sort_unstable();
        s.dedup();
        s.len() == slots.len()
    };
    distinct && slots.iter().all(|s| !linear.contains(s))
}
