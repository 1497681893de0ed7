//! Polynomial rings and sparse polynomials.

use std::collections::HashMap;
use std::fmt;
use std::ops;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial ring `K[x_1, ..., x_n]` together with the monomial order
/// its polynomials are sorted by.
///
/// Rings are shared behind `Arc`; two rings are the same ring when they
/// agree on field, variables and order.
#[derive(Debug)]
pub struct Ring<F: Field> {
    field: F,
    variables: Vec<String>,
    order: MonomialOrder,
    lookup: HashMap<String, usize>,
}

impl<F: Field> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.variables == other.variables && self.order == other.order
    }
}

impl<F: Field> Ring<F> {
    /// A ring over `variables` with the order `order`, whose priority must be
    /// a permutation of `variables`.
    pub fn new<S: AsRef<str>>(field: F, variables: &[S], order: MonomialOrder) -> Result<Arc<Self>> {
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_string()).collect();
        let mut declared = HashMap::new();
        for v in &variables {
            if declared.insert(v.clone(), ()).is_some() {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if order.priority().len() != variables.len()
            || order.priority().iter().any(|v| !declared.contains_key(v))
        {
            return Err(Error::InvalidOrder(
                "priority is not a permutation of the ring variables".into(),
            ));
        }
        let lookup = order
            .priority()
            .iter()
            .enumerate()
            .map(|(slot, v)| (v.clone(), slot))
            .collect();
        Ok(Arc::new(Ring {
            field,
            variables,
            order,
            lookup,
        }))
    }

    /// Lex order with the variables in their declared sequence, highest first.
    pub fn lex<S: AsRef<str>>(field: F, variables: &[S]) -> Result<Arc<Self>> {
        let order = MonomialOrder::lex(variables)?;
        Self::new(field, variables, order)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.field.clone(), &self.variables, order)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Variables in declaration order.
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Position of `name` in the priority sequence.
    pub fn slot(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn slot_name(&self, slot: usize) -> &str {
        &self.order.priority()[slot]
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn term(self: &Arc<Self>, coeff: F::Elem, monomial: Monomial) -> Polynomial<F> {
        let terms = if self.field.is_zero(&coeff) {
            Vec::new()
        } else {
            vec![Term { coeff, monomial }]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn monomial(self: &Arc<Self>, monomial: Monomial) -> Polynomial<F> {
        self.term(self.field.one(), monomial)
    }

    pub fn var(self: &Arc<Self>, name: &str) -> Result<Polynomial<F>> {
        let slot = self
            .slot(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.monomial(Monomial::variable(self.nvars(), slot)))
    }

    /// Product of the named variables (with multiplicity).
    pub fn monomial_of<S: AsRef<str>>(self: &Arc<Self>, names: &[S]) -> Result<Monomial> {
        let mut m = Monomial::one(self.nvars());
        for n in names {
            let slot = self
                .slot(n.as_ref())
                .ok_or_else(|| Error::UnknownVariable(n.as_ref().to_string()))?;
            m.exps_mut()[slot] += 1;
        }
        Ok(m)
    }

    /// Builds a polynomial from unsorted terms, combining duplicates.
    pub fn from_terms(self: &Arc<Self>, mut terms: Vec<Term<F>>) -> Polynomial<F> {
        terms.sort_by(|a, b| b.monomial.cmp(&a.monomial));
        let mut out: Vec<Term<F>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff = self.field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coeff));
        Polynomial {
            ring: self.clone(),
            terms: out,
        }
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial<F>> {
        crate::parse::parse_polynomial(text, self)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (slot, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.slot_name(slot).to_string()),
                e => parts.push(format!("{}^{}", self.slot_name(slot), e)),
            }
        }
        parts.join("*")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub monomial: Monomial,
}

/// A polynomial in canonical form: terms strictly decreasing under the
/// ring's order, no zero coefficients. Zero is the empty term list.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        Ring::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Which binary operation [`Polynomial::arithmetic`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Subtract,
    Multiply,
}

impl<F: Field> Polynomial<F> {
    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    /// Nonzero constant, i.e. a unit of the ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.monomial)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// The order-maximal term as `(coefficient, monomial)`.
    pub fn leading(&self) -> Result<(F::Elem, Monomial)> {
        self.terms
            .first()
            .map(|t| (t.coeff.clone(), t.monomial.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.monomial.degree();
                self.terms.iter().all(|s| s.monomial.degree() == d)
            }
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Names of the variables that occur in some term.
    pub fn support(&self) -> Vec<String> {
        let mut used = vec![false; self.ring.nvars()];
        for t in &self.terms {
            for s in t.monomial.support() {
                used[s] = true;
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(s, _)| self.ring.slot_name(s).to_string())
            .collect()
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .binary_search_by(|t| m.cmp(&t.monomial))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Exact arithmetic with ring checking.
    pub fn arithmetic(&self, other: &Self, op: ArithOp) -> Result<Self> {
        self.check_ring(other)?;
        Ok(match op {
            ArithOp::Add => self.add_unchecked(other),
            ArithOp::Subtract => self.sub_unchecked(other),
            ArithOp::Multiply => self.mul_unchecked(other),
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.arithmetic(other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.arithmetic(other, ArithOp::Subtract)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.arithmetic(other, ArithOp::Multiply)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    /// `c * m * self`
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    monomial: t.monomial.mul(m),
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Scales so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// The normalized associate used for display: over the rationals the
    /// integer-primitive multiple with positive leading coefficient, over a
    /// prime field the monic multiple.
    pub fn canonical(&self) -> Self {
        let field = self.field();
        if self.is_zero() {
            return self.clone();
        }
        if field.characteristic() != 0 {
            return self.monic();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for t in &self.terms {
            let (n, d) = field.to_ratio(&t.coeff);
            den_lcm = den_lcm.lcm(&d);
            num_gcd = num_gcd.gcd(&n);
        }
        let (lead_num, _) = field.to_ratio(&self.terms[0].coeff);
        let mut num = den_lcm;
        let mut den = num_gcd;
        if lead_num.is_negative() {
            num = -num;
        }
        if den.is_zero() {
            den = BigInt::one();
        }
        let factor = field.from_ratio(&num, &den).expect("nonzero denominator");
        self.scale(&factor)
    }

    pub fn to_canonical_string(&self) -> String {
        self.canonical().to_string()
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let field = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].monomial.cmp(&b[j].monomial) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = field.add(&a[i].coeff, &b[j].coeff);
                    if !field.is_zero(&c) {
                        out.push(Term {
                            coeff: c,
                            monomial: a[i].monomial.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub(crate) fn neg_unchecked(&self) -> Self {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.neg(&t.coeff),
                    monomial: t.monomial.clone(),
                })
                .collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        self.add_unchecked(&other.neg_unchecked())
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for t in &other.terms {
                terms.push(Term {
                    coeff: field.mul(&s.coeff, &t.coeff),
                    monomial: s.monomial.mul(&t.monomial),
                });
            }
        }
        self.ring.from_terms(terms)
    }

    /// Substitutes field values for some variables; the rest stay symbolic.
    pub fn specialize<S: AsRef<str>>(&self, assignment: &[(S, F::Elem)]) -> Result<Self> {
        let field = self.field();
        let mut values: Vec<Option<F::Elem>> = vec![None; self.ring.nvars()];
        for (name, value) in assignment {
            let slot = self
                .ring
                .slot(name.as_ref())
                .ok_or_else(|| Error::UnknownVariable(name.as_ref().to_string()))?;
            values[slot] = Some(value.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        'terms: for t in &self.terms {
            let mut coeff = t.coeff.clone();
            let mut mono = t.monomial.clone();
            for (slot, v) in values.iter().enumerate() {
                let Some(v) = v else { continue };
                let e = mono.exponents()[slot];
                if e == 0 {
                    continue;
                }
                if field.is_zero(v) {
                    continue 'terms;
                }
                for _ in 0..e {
                    coeff = field.mul(&coeff, v);
                }
                mono.exps_mut()[slot] = 0;
            }
            terms.push(Term {
                coeff,
                monomial: mono,
            });
        }
        Ok(self.ring.from_terms(terms))
    }

    /// Exact quotient `self / divisor`; fails when the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor)?;
        let (dc, dm) = divisor.leading()?;
        let field = self.field();
        let dinv = field.inv(&dc).expect("nonzero");
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some(lead) = rest.terms.first() {
            let Some(m) = lead.monomial.div(&dm) else {
                return Err(Error::DivisionFailed(format!("{self} by {divisor}")));
            };
            let c = field.mul(&lead.coeff, &dinv);
            rest = rest.sub_unchecked(&divisor.mul_term(&c, &m));
            quotient.push(Term { coeff: c, monomial: m });
        }
        Ok(self.ring.from_terms(quotient))
    }

    /// Re-expresses this polynomial in another ring by variable name.
    pub fn map_to(&self, target: &Arc<Ring<F>>) -> Result<Polynomial<F>> {
        if Ring::same(&self.ring, target) {
            return Ok(Polynomial {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let slot_map: Vec<Option<usize>> = (0..self.ring.nvars())
            .map(|s| target.slot(self.ring.slot_name(s)))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut m = Monomial::one(target.nvars());
            for (s, &e) in t.monomial.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let ts = slot_map[s]
                    .ok_or_else(|| Error::UnknownVariable(self.ring.slot_name(s).to_string()))?;
                m.exps_mut()[ts] += e;
            }
            terms.push(Term {
                coeff: t.coeff.clone(),
                monomial: m,
            });
        }
        Ok(target.from_terms(terms))
    }

    /// Renames variables (`old -> new`) while moving into `target`.
    pub fn rename_into(
        &self,
        target: &Arc<Ring<F>>,
        rename: impl Fn(&str) -> String,
    ) -> Result<Polynomial<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut m = Monomial::one(target.nvars());
            for s in t.monomial.support() {
                let name = rename(self.ring.slot_name(s));
                let ts = target.slot(&name).ok_or(Error::UnknownVariable(name))?;
                m.exps_mut()[ts] += t.monomial.exponents()[s];
            }
            terms.push(Term {
                coeff: t.coeff.clone(),
                monomial: m,
            });
        }
        Ok(target.from_terms(terms))
    }

    pub(crate) fn from_sorted(ring: Arc<Ring<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].monomial > w[1].monomial));
        Polynomial { ring, terms }
    }

    pub(crate) fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (i, t) in self.terms.iter().enumerate() {
            let (num, den) = field.to_ratio(&t.coeff);
            let negative = num.is_negative();
            let abs = num.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = abs.is_one() && den.is_one();
            let coeff = if den.is_one() {
                abs.to_string()
            } else {
                format!("{abs}/{den}")
            };
            if t.monomial.is_one() {
                write!(f, "{coeff}")?;
            } else if unit {
                write!(f, "{}", self.ring.format_monomial(&t.monomial))?;
            } else {
                write!(f, "{coeff}*{}", self.ring.format_monomial(&t.monomial))?;
            }
        }
        Ok(())
    }
}

impl<'a, F: Field> ops::Add<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a, F: Field> ops::Sub<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a, F: Field> ops::Mul<&'a Polynomial<F>> for &'a Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: &'a Polynomial<F>) -> Polynomial<F> {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl<F: Field> ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.neg_unchecked()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn hankel8() -> Arc<Ring<Rationals>> {
        let vars: Vec<String> = (1..=8).map(|i| format!("x_{i}")).collect();
        Ring::lex(Rationals, &vars).unwrap()
    }

    #[test]
    fn combination_from_the_membership_proof() {
        let r = hankel8();
        let a = r.parse("x_1*x_5 + x_3^2").unwrap();
        let b = r.parse("x_1*x_5 + x_2*x_4").unwrap();
        let c = r.parse("x_2*x_4 + x_3^2").unwrap();
        let sum = &(&a + &b) - &c;
        assert_eq!(sum.to_string(), "2*x_1*x_5");
    }

    #[test]
    fn identity_and_distributivity() {
        let r = hankel8();
        let f = r.parse("x_2*x_4 - x_3^2").unwrap();
        assert_eq!(&f + &r.zero(), f);
        let g = &f * &r.var("x_2").unwrap();
        assert_eq!(g.to_string(), "x_2^2*x_4 - x_2*x_3^2");
        assert_eq!(g.degree(), Some(3));
    }

    #[test]
    fn leading_term_under_lex() {
        let r = hankel8();
        let f = r.parse("x_3^2 + x_1*x_5").unwrap();
        let (c, m) = f.leading().unwrap();
        assert!(Rationals.is_one(&c));
        assert_eq!(r.format_monomial(&m), "x_1*x_5");
        assert_eq!(r.zero().leading(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = hankel8();
        let s = Ring::lex(Rationals, &["x_1", "x_2"]).unwrap();
        let f = r.var("x_1").unwrap();
        let g = s.var("x_1").unwrap();
        assert_eq!(f.try_add(&g), Err(Error::RingMismatch));
    }

    #[test]
    fn specialize_kills_terms() {
        let r = Ring::lex(Rationals, &["x_1_1", "x_1_2", "x_2_1", "x_2_2"]).unwrap();
        let f = r.parse("x_1_1*x_2_2 + x_1_2*x_2_1").unwrap();
        let zero = Rationals.zero();
        let g = f.specialize(&[("x_1_1", zero.clone())]).unwrap();
        assert_eq!(g.to_string(), "x_1_2*x_2_1");
        assert_eq!(f.specialize::<&str>(&[]).unwrap(), f);
        let h = f
            .specialize(&[("x_1_2", zero.clone()), ("x_2_1", zero)])
            .unwrap();
        assert_eq!(h.to_string(), "x_1_1*x_2_2");
        assert!(f.specialize(&[("z", Rationals.one())]).is_err());
    }

    #[test]
    fn canonical_form_is_primitive_with_positive_lead() {
        let r = hankel8();
        let f = r.parse("-2/3*x_1 + 4/3*x_2").unwrap();
        assert_eq!(f.to_canonical_string(), "x_1 - 2*x_2");
        let p = Ring::lex(PrimeField::new(5).unwrap(), &["x_1", "x_2"]).unwrap();
        let g = p.parse("2*x_1 + x_2").unwrap();
        assert_eq!(g.to_canonical_string(), "x_1 - 2*x_2");
    }

    #[test]
    fn exact_division() {
        let r = hankel8();
        let f = r.parse("x_1^2*x_2 - x_1*x_3*x_2").unwrap();
        let d = r.parse("x_1 - x_3").unwrap();
        assert_eq!(f.exact_div(&d).unwrap().to_string(), "x_1*x_2");
        assert!(matches!(
            r.parse("x_1 + 1").unwrap().exact_div(&r.var("x_2").unwrap()),
            Err(Error::DivisionFailed(_))
        ));
    }
}
