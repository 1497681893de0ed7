use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{buchberger, GroebnerBasis, Limits, Selection};
use crate::monomial::MonomialOrder;
use crate::parse::parse_list;
use crate::ring::{Polynomial, Ring};

/// An ideal given by generators, with its reduced Gröbner basis (under the
/// ring's order) computed on first use and cached.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Arc<Ring<F>>,
    generators: Vec<Polynomial<F>>,
    limits: Limits,
    gb: OnceLock<Arc<GroebnerBasis<F>>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped and associates deduplicated.
    pub fn new(ring: &Arc<Ring<F>>, generators: Vec<Polynomial<F>>) -> Result<Self> {
        let mut seen: Vec<Polynomial<F>> = Vec::new();
        let mut gens = Vec::new();
        for g in generators {
            if !Ring::same(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            let c = g.canonical();
            if seen.contains(&c) {
                continue;
            }
            seen.push(c);
            gens.push(g);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens,
            limits: Limits::default(),
            gb: OnceLock::new(),
        })
    }

    /// Parses a comma-separated generator list.
    pub fn parse(ring: &Arc<Ring<F>>, text: &str) -> Result<Self> {
        Self::new(ring, parse_list(text, ring)?)
    }

    /// The ideal generated by the named variables.
    pub fn variables<S: AsRef<str>>(ring: &Arc<Ring<F>>, names: &[S]) -> Result<Self> {
        let gens = names
            .iter()
            .map(|n| ring.var(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn unit(ring: &Arc<Ring<F>>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("same ring")
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        if limits != self.limits {
            self.limits = limits;
            self.gb = OnceLock::new();
        }
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// A new ideal in the same ring sharing these limits.
    pub fn derive(&self, generators: Vec<Polynomial<F>>) -> Result<Self> {
        Ok(Self::new(&self.ring, generators)?.with_limits(self.limits))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn groebner_basis(&self) -> Result<Arc<GroebnerBasis<F>>> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(
            &self.ring,
            &self.generators,
            self.limits,
            Selection::Normal,
        )?);
        Ok(self.gb.get_or_init(|| gb).clone())
    }

    /// Reduced basis under another order (uncached).
    pub fn groebner_basis_under(&self, order: MonomialOrder) -> Result<GroebnerBasis<F>> {
        let ring = self.ring.with_order(order)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.map_to(&ring))
            .collect::<Result<Vec<_>>>()?;
        buchberger(&ring, &gens, self.limits, Selection::Normal)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner_basis()?.is_unit())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        self.groebner_basis()?.normal_form(f)
    }

    /// Ideal membership: `f` reduces to zero against the Gröbner basis.
    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        if f.is_zero() {
            if !Ring::same(f.ring(), &self.ring) {
                return Err(Error::RingMismatch);
            }
            return Ok(true);
        }
        self.groebner_basis()?.contains(f)
    }

    /// `self ⊆ other`
    pub fn is_subset_of(&self, other: &Ideal<F>) -> Result<bool> {
        if !Ring::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals: each generating set reduces to zero against the
    /// other's Gröbner basis.
    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// The monomial ideal generated by the leading monomials of the basis.
    pub fn initial_ideal(&self) -> Result<Ideal<F>> {
        let gb = self.groebner_basis()?;
        let gens = gb
            .leading_monomials()
            .into_iter()
            .map(|m| self.ring.monomial(m))
            .collect();
        self.derive(gens)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !Ring::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        self.derive(gens)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if !Ring::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.mul_unchecked(b));
            }
        }
        self.derive(gens)
    }

    /// Re-expresses the generators in another ring by variable name.
    pub fn map_to(&self, ring: &Arc<Ring<F>>) -> Result<Ideal<F>> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.map_to(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens)?.with_limits(self.limits))
    }

    /// Canonical generator strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(Polynomial::to_canonical_string).collect()
    }
}

/// `f ∈ I`, decided by normal form against the reduced Gröbner basis.
pub fn member<F: Field>(f: &Polynomial<F>, ideal: &Ideal<F>) -> Result<bool> {
    ideal.contains(f)
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g.canonical())?;
        }
        write!(f, ")")
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn membership_basics() {
        let r = Ring::lex(Rationals, &["x_1", "x_2", "x_3", "x_4"]).unwrap();
        let i = Ideal::parse(&r, "x_1*x_3 + x_2^2, x_1*x_4 + x_2*x_3, x_2*x_4 + x_3^2").unwrap();
        assert!(i.contains(&r.zero()).unwrap());
        assert!(i.contains(&r.parse("x_2^2*x_3").unwrap()).unwrap());
        assert!(!i.contains(&r.parse("x_2").unwrap()).unwrap());
        let j = Ideal::parse(&r, "x_2, x_3, x_4").unwrap();
        assert!(!i.equals(&j).unwrap());
        assert!(i.is_subset_of(&j).unwrap());
        assert!(i.equals(&i.clone()).unwrap());
    }

    #[test]
    fn dedupes_associates() {
        let r = Ring::lex(Rationals, &["x", "y"]).unwrap();
        let i = Ideal::parse(&r, "x + y, -2*x - 2*y, 0").unwrap();
        assert_eq!(i.generators().len(), 1);
    }
}
