//! Ideal-level operations: intersection, elimination, colon ideals, degree
//! truncation and degree-slice linear algebra.
//!
//! Intersection, contraction and colon all run through one engine:
//! Buchberger under a lex order whose leading block holds the variables to
//! eliminate.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, Selection};
use crate::ideal::Ideal;
use crate::monomial::{count_monomials, monomials_of_degree, Monomial, MonomialOrder};
use crate::ring::{Polynomial, Ring};

fn same_ring<F: Field>(a: &Ideal<F>, b: &Ideal<F>) -> Result<()> {
    if Ring::same(a.ring(), b.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn fresh_name<F: Field>(ring: &Ring<F>, base: &str) -> String {
    let mut name = base.to_string();
    while ring.slot(&name).is_some() {
        name.push('_');
    }
    name
}

/// `I ∩ J`, by eliminating `t` from `t·I + (1 − t)·J`.
pub fn intersect<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    same_ring(i, j)?;
    let ring = i.ring();
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return i.derive(Vec::new());
    }
    let t = fresh_name(ring, "t");
    let mut vars = vec![t.clone()];
    vars.extend(ring.order().priority().iter().cloned());
    let order = MonomialOrder::elimination(&vars, 1)?;
    let big = Ring::new(ring.field().clone(), &vars, order)?;
    let tv = big.var(&t)?;
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(tv.mul_unchecked(&g.map_to(&big)?));
    }
    for h in j.generators() {
        let h = h.map_to(&big)?;
        gens.push(h.sub_unchecked(&tv.mul_unchecked(&h)));
    }
    let gb = buchberger(&big, &gens, i.limits(), Selection::Normal)?;
    let t_slot = big.slot(&t).expect("present");
    let kept = gb
        .basis()
        .iter()
        .filter(|g| g.terms().iter().all(|term| term.monomial.exponents()[t_slot] == 0))
        .map(|g| g.map_to(ring))
        .collect::<Result<Vec<_>>>()?;
    i.derive(kept)
}

/// `I ∩ K[keep]`, computed with an elimination order that puts the
/// discarded variables first. The result lives in the ring of `I`.
pub fn contract_to_subring<F: Field, S: AsRef<str>>(i: &Ideal<F>, keep: &[S]) -> Result<Ideal<F>> {
    let ring = i.ring();
    if keep.is_empty() {
        return Err(Error::InvalidArgument("empty variable set for contraction".into()));
    }
    for k in keep {
        if ring.slot(k.as_ref()).is_none() {
            return Err(Error::UnknownVariable(k.as_ref().to_string()));
        }
    }
    let is_kept = |v: &String| keep.iter().any(|k| k.as_ref() == v);
    let mut priority: Vec<String> = ring.order().priority().iter().filter(|v| !is_kept(v)).cloned().collect();
    let block = priority.len();
    priority.extend(ring.order().priority().iter().filter(|v| is_kept(v)).cloned());
    let gb = i.groebner_basis_under(MonomialOrder::elimination(&priority, block)?)?;
    let elim_ring = gb.ring().clone();
    let kept = gb
        .basis()
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|t| t.monomial.exponents()[..block].iter().all(|&e| e == 0))
        })
        .map(|g| g.map_to(ring))
        .collect::<Result<Vec<_>>>()?;
    drop(elim_ring);
    i.derive(kept)
}

/// `I : f = {g : g·f ∈ I}`, as `(I ∩ (f)) / f`.
pub fn colon_poly<F: Field>(i: &Ideal<F>, f: &Polynomial<F>) -> Result<Ideal<F>> {
    if !Ring::same(i.ring(), f.ring()) {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_unit() {
        return Ok(i.clone());
    }
    let principal = i.derive(vec![f.clone()])?;
    let meet = intersect(i, &principal)?;
    let gens = meet
        .generators()
        .iter()
        .map(|g| g.exact_div(f))
        .collect::<Result<Vec<_>>>()?;
    i.derive(gens)
}

/// `I : J`, the intersection of `I : g` over the generators `g` of `J`.
pub fn colon_ideal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<Ideal<F>> {
    same_ring(i, j)?;
    if j.is_zero_ideal() {
        return Err(Error::InvalidArgument("colon by the zero ideal".into()));
    }
    let mut acc: Option<Ideal<F>> = None;
    for g in j.generators() {
        let c = colon_poly(i, g)?;
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c)?,
        });
    }
    Ok(acc.expect("J has a generator"))
}

/// Equality of ideals by mutual normal-form membership.
pub fn ideal_equal<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
    i.equals(j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncateMode {
    /// Generated by `⊕_{d ≤ k} I_d`.
    AtMost,
    /// Generated by `I_k`.
    Exactly,
}

/// A basis of the homogeneous component `I_d`.
#[derive(Clone, Debug)]
pub struct DegreeSlice<F: Field> {
    pub degree: u32,
    pub basis: Vec<Polynomial<F>>,
}

fn require_homogeneous<F: Field>(i: &Ideal<F>) -> Result<()> {
    if i.is_homogeneous() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// `{m − NF(m) : m ∈ in(I) of degree d}`, a basis of `I_d` with pairwise
/// distinct leading monomials.
pub fn degree_slice<F: Field>(i: &Ideal<F>, d: u32) -> Result<DegreeSlice<F>> {
    require_homogeneous(i)?;
    let gb = i.groebner_basis()?;
    let ring = i.ring();
    let mut basis = Vec::new();
    for m in monomials_of_degree(ring.nvars(), d) {
        if gb.is_standard(&m) {
            continue;
        }
        let p = ring.monomial(m);
        let nf = gb.normal_form(&p)?;
        basis.push(p.sub_unchecked(&nf));
    }
    Ok(DegreeSlice { degree: d, basis })
}

/// `I_{≤k}` or `I_{⟨k⟩}` for a homogeneous ideal.
pub fn truncate<F: Field>(i: &Ideal<F>, k: u32, mode: TruncateMode) -> Result<Ideal<F>> {
    require_homogeneous(i)?;
    match mode {
        TruncateMode::Exactly => i.derive(degree_slice(i, k)?.basis),
        TruncateMode::AtMost => {
            let mut gens: Vec<Polynomial<F>> = Vec::new();
            for d in 0..=k {
                for p in degree_slice(i, d)?.basis {
                    let lm = p.leading_monomial().expect("nonzero");
                    let redundant = gens
                        .iter()
                        .any(|g| g.leading_monomial().expect("nonzero").divides(lm));
                    if !redundant {
                        gens.push(p);
                    }
                }
            }
            i.derive(gens)
        }
    }
}

/// Monomials outside `in(I)`, listed per degree up to a cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardMonomialTable {
    pub nvars: usize,
    pub per_degree: Vec<Vec<Monomial>>,
}

impl StandardMonomialTable {
    pub fn build<F: Field>(i: &Ideal<F>, cap: u32) -> Result<Self> {
        let gb = i.groebner_basis()?;
        let nvars = i.ring().nvars();
        let per_degree = (0..=cap)
            .map(|d| {
                monomials_of_degree(nvars, d)
                    .into_iter()
                    .filter(|m| gb.is_standard(m))
                    .collect()
            })
            .collect();
        Ok(StandardMonomialTable { nvars, per_degree })
    }

    pub fn cap(&self) -> u32 {
        self.per_degree.len() as u32 - 1
    }

    pub fn at(&self, d: u32) -> &[Monomial] {
        &self.per_degree[d as usize]
    }

    /// `dim I_d = dim R_d − #standard monomials of degree d`.
    pub fn ideal_dim(&self, d: u32) -> u64 {
        count_monomials(self.nvars, d) - self.at(d).len() as u64
    }
}

/// `dim_K I_d` for a homogeneous ideal.
pub fn ideal_degree_dim<F: Field>(i: &Ideal<F>, d: u32) -> Result<u64> {
    require_homogeneous(i)?;
    let gb = i.groebner_basis()?;
    let standard = monomials_of_degree(i.ring().nvars(), d)
        .into_iter()
        .filter(|m| gb.is_standard(m))
        .count() as u64;
    Ok(count_monomials(i.ring().nvars(), d) - standard)
}

pub fn is_monomial_ideal<F: Field>(i: &Ideal<F>) -> bool {
    i.generators().iter().all(Polynomial::is_monomial)
}

/// Degree-`d` monomials of `M : in(J)` for a monomial ideal `M`, where the
/// leading monomials of `J`'s Gröbner basis share one degree. Sorted
/// decreasingly.
pub fn monomial_colon_slice<F: Field>(m: &Ideal<F>, j: &Ideal<F>, d: u32) -> Result<Vec<Monomial>> {
    same_ring(m, j)?;
    if !is_monomial_ideal(m) {
        return Err(Error::InvalidArgument("first argument must be a monomial ideal".into()));
    }
    let in_j = j.groebner_basis()?.leading_monomials();
    if let Some(first) = in_j.first() {
        if in_j.iter().any(|g| g.degree() != first.degree()) {
            return Err(Error::DegreeMismatch);
        }
    }
    let gens: Vec<&Monomial> = m
        .generators()
        .iter()
        .map(|g| g.leading_monomial().expect("nonzero"))
        .collect();
    let in_m = |u: &Monomial| gens.iter().any(|g| g.divides(u));
    Ok(monomials_of_degree(m.ring().nvars(), d)
        .into_iter()
        .filter(|u| in_j.iter().all(|g| in_m(&u.mul(g))))
        .collect())
}

/// Pretty names for a monomial list.
pub fn format_monomials<F: Field>(ring: &Arc<Ring<F>>, ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| ring.format_monomial(m)).collect()
}
