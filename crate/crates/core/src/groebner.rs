//! Buchberger's algorithm with Gebauer–Möller pair pruning.
//!
//! Every choice point is deterministic: S-pairs are selected by the normal
//! strategy (smallest lcm degree, then smallest lcm in the ring order, then
//! creation index), and reduction always rewrites the largest reducible
//! term with the first applicable divisor.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::ring::{Polynomial, Ring, Term};

/// Resource caps for a Buchberger run. Exceeding either one aborts the run
/// with [`Error::CapExceeded`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_pair_reductions: u64,
    /// Estimated working-set size (basis plus pending pairs) in bytes.
    pub max_bytes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pair_reductions: 200_000,
            max_bytes: 64 << 20,
        }
    }
}

/// S-pair selection strategy. The reduced basis does not depend on it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    #[default]
    Normal,
    Fifo,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub pairs_pruned: u64,
}

/// A reduced, monic Gröbner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<Ring<F>>,
    basis: Vec<Polynomial<F>>,
    source: Vec<Polynomial<F>>,
    stats: Stats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial<F>] {
        &self.basis
    }

    pub fn source(&self) -> &[Polynomial<F>] {
        &self.source
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(Polynomial::is_unit)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements are nonzero").clone())
            .collect()
    }

    /// The remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !Ring::same(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(reduce(f, &self.basis))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Is `m` outside the initial ideal?
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self
            .basis
            .iter()
            .any(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
    }

    /// Canonical strings of the basis elements, in basis order.
    pub fn to_strings(&self) -> Vec<String> {
        self.basis.iter().map(Polynomial::to_canonical_string).collect()
    }
}

/// `lcm/lt(f) * f - lcm/lt(g) * g`, with leading coefficients normalized so
/// the leading terms cancel.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    if !Ring::same(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    let (fc, fm) = f.leading()?;
    let (gc, gm) = g.leading()?;
    let field = f.field();
    let lcm = fm.lcm(&gm);
    let a = f.mul_term(&field.inv(&fc).expect("nonzero"), &lcm.div(&fm).expect("divides"));
    let b = g.mul_term(&field.inv(&gc).expect("nonzero"), &lcm.div(&gm).expect("divides"));
    Ok(a.sub_unchecked(&b))
}

struct Divisor<'a, F: Field> {
    mask: u128,
    lm: &'a Monomial,
    lc_inv: F::Elem,
    tail: &'a [Term<F>],
}

/// Bit `s mod 128` set for every slot `s` in the support; `a | b` implies
/// `mask(a) ⊆ mask(b)`.
fn support_mask(m: &Monomial) -> u128 {
    m.support().fold(0u128, |acc, s| acc | (1u128 << (s % 128)))
}

/// Whether `lcm(a, b) == target`, without building the lcm.
fn lcm_is(a: &Monomial, b: &Monomial, target: &Monomial) -> bool {
    a.exponents()
        .iter()
        .zip(b.exponents())
        .zip(target.exponents())
        .all(|((x, y), t)| x.max(y) == t)
}

fn divisors<'a, F: Field>(field: &F, polys: impl Iterator<Item = &'a Polynomial<F>>) -> Vec<Divisor<'a, F>> {
    polys
        .filter(|g| !g.is_zero())
        .map(|g| {
            let t = &g.terms()[0];
            Divisor {
                mask: support_mask(&t.monomial),
                lm: &t.monomial,
                lc_inv: field.inv(&t.coeff).expect("nonzero"),
                tail: &g.terms()[1..],
            }
        })
        .collect()
}

/// `a - c * m * b`, merging two sorted term lists.
fn merge_sub<F: Field>(field: &F, a: &[Term<F>], c: &F::Elem, m: &Monomial, b: &[Term<F>], out: &mut Vec<Term<F>>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    let mut shifted: Option<Monomial> = b.first().map(|t| t.monomial.mul(m));
    while i < a.len() {
        let Some(bm) = &shifted else { break };
        match a[i].monomial.cmp(bm) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push(Term {
                    coeff: field.neg(&field.mul(c, &b[j].coeff)),
                    monomial: shifted.take().expect("present"),
                });
                j += 1;
                shifted = b.get(j).map(|t| t.monomial.mul(m));
            }
            std::cmp::Ordering::Equal => {
                let v = field.sub_mul(&a[i].coeff, c, &b[j].coeff);
                if !field.is_zero(&v) {
                    out.push(Term {
                        coeff: v,
                        monomial: a[i].monomial.clone(),
                    });
                }
                i += 1;
                j += 1;
                shifted = b.get(j).map(|t| t.monomial.mul(m));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while let Some(bm) = shifted.take() {
        out.push(Term {
            coeff: field.neg(&field.mul(c, &b[j].coeff)),
            monomial: bm,
        });
        j += 1;
        shifted = b.get(j).map(|t| t.monomial.mul(m));
    }
}

fn reduce_with<F: Field>(field: &F, f: Vec<Term<F>>, divs: &[Divisor<'_, F>]) -> Vec<Term<F>> {
    let mut work = f;
    let mut scratch = Vec::new();
    let mut rem = Vec::new();
    let mut start = 0;
    while start < work.len() {
        let lead = &work[start];
        let lmask = support_mask(&lead.monomial);
        let hit = divs
            .iter()
            .find(|d| d.mask & !lmask == 0 && d.lm.divides(&lead.monomial));
        match hit {
            Some(d) => {
                let m = lead.monomial.div(d.lm).expect("divides");
                let c = field.mul(&lead.coeff, &d.lc_inv);
                merge_sub(field, &work[start + 1..], &c, &m, d.tail, &mut scratch);
                std::mem::swap(&mut work, &mut scratch);
                start = 0;
            }
            None => {
                rem.push(lead.clone());
                start += 1;
            }
        }
    }
    rem
}

/// Full reduction of `f` by `divisors` (which need not be a Gröbner basis).
pub fn reduce<F: Field>(f: &Polynomial<F>, divisors_list: &[Polynomial<F>]) -> Polynomial<F> {
    let field = f.field();
    let divs = divisors(field, divisors_list.iter());
    let rem = reduce_with(field, f.terms().to_vec(), &divs);
    Polynomial::from_sorted(f.ring().clone(), rem)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    mask: u128,
}

/// Pairs are popped in key order: `(degree, lcm, seq)` for the normal
/// strategy, `seq` alone for FIFO.
type PairKey = (u32, Monomial, u64);

struct Engine<F: Field> {
    ring: Arc<Ring<F>>,
    limits: Limits,
    selection: Selection,
    polys: Vec<Polynomial<F>>,
    masks: Vec<u128>,
    active: Vec<bool>,
    pairs: BTreeMap<PairKey, Pair>,
    next_seq: u64,
    stats: Stats,
    poly_bytes: u64,
}

struct Candidate {
    g: usize,
    lcm: Monomial,
    mask: u128,
    degree: u32,
    coprime: bool,
}

impl<F: Field> Engine<F> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("stored polynomials are nonzero")
    }

    fn check_size(&self) -> Result<()> {
        let nv = self.ring.nvars() as u64;
        let pair_bytes = self.pairs.len() as u64 * (4 * nv + 96);
        if self.poly_bytes + pair_bytes > self.limits.max_bytes {
            return Err(Error::CapExceeded {
                what: "Gröbner working-set size (bytes)",
                limit: self.limits.max_bytes,
            });
        }
        Ok(())
    }

    /// Gebauer–Möller update with the new element `h` (already pushed at
    /// index `hi`).
    fn update(&mut self, hi: usize) {
        let lm_h = self.lm(hi).clone();
        let mask_h = self.masks[hi];
        let mut candidates: Vec<Candidate> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lcm = lm_h.lcm(self.lm(g));
                Candidate {
                    g,
                    mask: support_mask(&lcm),
                    degree: lcm.degree(),
                    coprime: lm_h.is_coprime(self.lm(g)),
                    lcm,
                }
            })
            .collect();
        candidates.sort_by(|a, b| (a.degree, &a.lcm, a.g).cmp(&(b.degree, &b.lcm, b.g)));

        // Chain criterion: drop a pair whose lcm is a proper multiple of
        // another new pair's lcm. Checking against the survivors suffices.
        let mut minimal: Vec<Candidate> = Vec::new();
        for c in candidates {
            let shadowed = minimal.iter().any(|d| {
                d.degree < c.degree && d.mask & !c.mask == 0 && d.lcm.divides(&c.lcm)
            });
            if shadowed {
                self.stats.pairs_pruned += 1;
            } else {
                minimal.push(c);
            }
        }

        // One pair per lcm class; none if the class has a coprime pair.
        let mut k = 0;
        while k < minimal.len() {
            let mut end = k + 1;
            while end < minimal.len() && minimal[end].lcm == minimal[k].lcm {
                end += 1;
            }
            let class = &minimal[k..end];
            self.stats.pairs_pruned += (class.len() - 1) as u64;
            if class.iter().any(|c| c.coprime) {
                self.stats.pairs_pruned += 1;
            } else {
                let c = &class[0];
                let key = self.key(c.degree, &c.lcm);
                self.pairs.insert(
                    key,
                    Pair {
                        i: c.g,
                        j: hi,
                        lcm: c.lcm.clone(),
                        mask: c.mask,
                    },
                );
            }
            k = end;
        }

        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|_, p| {
            if p.j == hi || mask_h & !p.mask != 0 || !lm_h.divides(&p.lcm) {
                return true;
            }
            let lm_i = polys[p.i].leading_monomial().expect("nonzero");
            let lm_j = polys[p.j].leading_monomial().expect("nonzero");
            lcm_is(lm_i, &lm_h, &p.lcm) || lcm_is(lm_j, &lm_h, &p.lcm)
        });
        self.stats.pairs_pruned += (before - self.pairs.len()) as u64;

        for g in 0..hi {
            if self.active[g] && mask_h & !self.masks[g] == 0 && lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn key(&mut self, degree: u32, lcm: &Monomial) -> PairKey {
        let seq = self.next_seq;
        self.next_seq += 1;
        match self.selection {
            Selection::Normal => (degree, lcm.clone(), seq),
            Selection::Fifo => (0, Monomial::one(0), seq),
        }
    }

    fn push(&mut self, h: Polynomial<F>) -> usize {
        let nv = self.ring.nvars() as u64;
        self.poly_bytes += h.len() as u64 * (2 * nv + 48);
        self.masks.push(support_mask(h.leading_monomial().expect("nonzero")));
        self.polys.push(h);
        self.active.push(true);
        self.polys.len() - 1
    }

    fn select(&mut self) -> Option<Pair> {
        self.pairs.pop_first().map(|(_, p)| p)
    }

    fn reduce_active(&self, f: Vec<Term<F>>) -> Vec<Term<F>> {
        let field = self.ring.field();
        let divs = divisors(
            field,
            self.polys
                .iter()
                .enumerate()
                .filter(|(i, _)| self.active[*i])
                .map(|(_, p)| p),
        );
        reduce_with(field, f, &divs)
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`
/// under the order of `ring`.
pub fn buchberger<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Polynomial<F>],
    limits: Limits,
    selection: Selection,
) -> Result<GroebnerBasis<F>> {
    for g in gens {
        if !Ring::same(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let source: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let unit = |stats| GroebnerBasis {
        ring: ring.clone(),
        basis: vec![ring.one()],
        source: source.clone(),
        stats,
    };

    let mut engine = Engine {
        ring: ring.clone(),
        limits,
        selection,
        polys: Vec::new(),
        masks: Vec::new(),
        active: Vec::new(),
        pairs: BTreeMap::new(),
        next_seq: 0,
        stats: Stats::default(),
        poly_bytes: 0,
    };

    let mut inputs: Vec<Polynomial<F>> = source.iter().map(Polynomial::monic).collect();
    inputs.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for f in inputs {
        let rem = engine.reduce_active(f.into_terms());
        if rem.is_empty() {
            continue;
        }
        let h = Polynomial::from_sorted(ring.clone(), rem).monic();
        if h.is_unit() {
            return Ok(unit(engine.stats));
        }
        let hi = engine.push(h);
        engine.update(hi);
        engine.check_size()?;
    }

    while let Some(pair) = engine.select() {
        if engine.stats.pairs_reduced >= limits.max_pair_reductions {
            return Err(Error::CapExceeded {
                what: "S-pair reductions",
                limit: limits.max_pair_reductions,
            });
        }
        engine.stats.pairs_reduced += 1;
        let s = s_polynomial(&engine.polys[pair.i], &engine.polys[pair.j])?;
        let rem = engine.reduce_active(s.into_terms());
        if rem.is_empty() {
            engine.stats.zero_reductions += 1;
            continue;
        }
        let h = Polynomial::from_sorted(ring.clone(), rem).monic();
        if h.is_unit() {
            return Ok(unit(engine.stats));
        }
        let hi = engine.push(h);
        engine.update(hi);
        engine.check_size()?;
    }

    let minimal: Vec<Polynomial<F>> = engine
        .polys
        .iter()
        .zip(&engine.active)
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect();
    let mut basis = interreduce(ring, minimal);
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(GroebnerBasis {
        ring: ring.clone(),
        basis,
        source,
        stats: engine.stats,
    })
}

/// Tail-reduces a minimal Gröbner basis into the reduced one.
fn interreduce<F: Field>(ring: &Arc<Ring<F>>, minimal: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let field = ring.field();
    let mut out = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let divs = divisors(
            field,
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p),
        );
        let mut terms = g.terms().to_vec();
        let tail = terms.split_off(1);
        let mut reduced = reduce_with(field, tail, &divs);
        terms.append(&mut reduced);
        out.push(Polynomial::from_sorted(ring.clone(), terms).monic());
    }
    out
}

/// The reduced Gröbner basis of a set that already is a Gröbner basis:
/// elements whose leading monomial is divisible by an earlier kept one
/// are dropped, the rest tail-reduced, made monic and sorted.
pub fn reduce_basis<F: Field>(gens: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(Vec::new());
    };
    let ring = first.ring().clone();
    let mut sorted: Vec<&Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    if sorted.iter().any(|g| !Ring::same(g.ring(), &ring)) {
        return Err(Error::RingMismatch);
    }
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for g in sorted {
        let lm = g.leading_monomial().expect("nonzero");
        if !minimal.iter().any(|h| h.leading_monomial().expect("nonzero").divides(lm)) {
            minimal.push(g.clone());
        }
    }
    let mut basis = interreduce(&ring, minimal);
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(basis)
}

/// Outcome of the Buchberger criterion on a generating set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub is_groebner_basis: bool,
    pub pairs_checked: usize,
    /// First pair (by index) whose S-polynomial does not reduce to zero,
    /// together with the remainder.
    pub failing_pair: Option<(usize, usize, String)>,
}

/// Checks the Buchberger criterion directly: every S-polynomial of every
/// pair must reduce to zero. No pair is skipped.
pub fn is_groebner_basis<F: Field>(gens: &[Polynomial<F>]) -> Certificate {
    let gens: Vec<&Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    let owned: Vec<Polynomial<F>> = gens.iter().map(|g| (*g).clone()).collect();
    let mut checked = 0;
    for j in 0..owned.len() {
        for i in 0..j {
            checked += 1;
            let s = s_polynomial(&owned[i], &owned[j]).expect("same ring, nonzero");
            let r = reduce(&s, &owned);
            if !r.is_zero() {
                return Certificate {
                    is_groebner_basis: false,
                    pairs_checked: checked,
                    failing_pair: Some((i, j, r.to_string())),
                };
            }
        }
    }
    Certificate {
        is_groebner_basis: true,
        pairs_checked: checked,
        failing_pair: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::parse::parse_list;

    fn hankel_ring(n: usize) -> Arc<Ring<Rationals>> {
        let vars: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
        Ring::lex(Rationals, &vars).unwrap()
    }

    #[test]
    fn trivial_s_polynomials() {
        let r = hankel_ring(4);
        let a = r.parse("x_1*x_2").unwrap();
        let b = r.parse("x_2*x_3").unwrap();
        assert!(s_polynomial(&a, &b).unwrap().is_zero());
        let f = r.parse("x_1*x_3 + x_2^2").unwrap();
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        assert_eq!(s_polynomial(&f, &r.zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn hankel_2x3_basis() {
        let r = hankel_ring(4);
        let gens = parse_list("x_1*x_3 + x_2^2, x_1*x_4 + x_2*x_3, x_2*x_4 + x_3^2", &r).unwrap();
        let gb = buchberger(&r, &gens, Limits::default(), Selection::Normal).unwrap();
        let mut got = gb.to_strings();
        got.sort();
        let mut want = vec![
            "x_1*x_3 + x_2^2",
            "x_1*x_4 + x_2*x_3",
            "x_2*x_4 + x_3^2",
            "x_2^2*x_3",
            "x_2*x_3^2",
            "x_2^4",
            "x_3^4",
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(is_groebner_basis(gb.basis()).is_groebner_basis);
        let fifo = buchberger(&r, &gens, Limits::default(), Selection::Fifo).unwrap();
        assert_eq!(fifo.basis(), gb.basis());
    }

    #[test]
    fn unit_ideal_detected() {
        let r = hankel_ring(2);
        let gens = parse_list("x_1 - 1, x_1", &r).unwrap();
        let gb = buchberger(&r, &gens, Limits::default(), Selection::Normal).unwrap();
        assert!(gb.is_unit());
        assert_eq!(gb.basis(), &[r.one()]);
    }

    #[test]
    fn single_monomial_is_a_basis() {
        let r = hankel_ring(1);
        let cert = is_groebner_basis(&[r.var("x_1").unwrap()]);
        assert!(cert.is_groebner_basis);
        assert_eq!(cert.failing_pair, None);
    }

    #[test]
    fn cap_is_reported() {
        let r = hankel_ring(4);
        let gens = parse_list("x_1*x_3 + x_2^2, x_1*x_4 + x_2*x_3, x_2*x_4 + x_3^2", &r).unwrap();
        let limits = Limits {
            max_pair_reductions: 1,
            ..Limits::default()
        };
        let err = buchberger(&r, &gens, limits, Selection::Normal).unwrap_err();
        assert!(err.is_cap());
    }

    #[test]
    fn prime_field_basis() {
        let f = PrimeField::new(5).unwrap();
        let r = Ring::lex(f, &["x_1", "x_2", "x_3", "x_4"]).unwrap();
        let gens = parse_list("x_1*x_3 + x_2^2, x_1*x_4 + x_2*x_3, x_2*x_4 + x_3^2", &r).unwrap();
        let gb = buchberger(&r, &gens, Limits::default(), Selection::Normal).unwrap();
        assert_eq!(gb.len(), 7);
    }
}
