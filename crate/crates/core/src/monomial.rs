//! Monomials and lexicographic monomial orders.
//!
//! A [`Monomial`] stores its exponents in the *priority sequence* of the
//! ring it lives in: slot 0 is the highest variable of the ring's order.
//! Pure lexicographic comparison is then plain slice comparison, which is
//! what the derived `Ord` does.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 16]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn variable(nvars: usize, slot: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[slot] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Does `self` divide `other`?
    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Slots with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn exps_mut(&mut self) -> &mut Exponents {
        &mut self.exps
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// decreasing lexicographic order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    let mut current = Monomial::one(nvars);
    fill(&mut out, &mut current, 0, degree);
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Monomial, slot: usize, remaining: u32) {
    let n = current.nvars();
    if slot == n - 1 {
        current.exps[slot] = remaining as u16;
        out.push(current.clone());
        current.exps[slot] = 0;
        return;
    }
    for e in (0..=remaining).rev() {
        current.exps[slot] = e as u16;
        fill(out, current, slot + 1, remaining - e);
    }
    current.exps[slot] = 0;
}

/// Number of monomials of degree `d` in `n` variables, `C(d + n - 1, n - 1)`.
pub fn count_monomials(nvars: usize, degree: u32) -> u64 {
    if nvars == 0 {
        return u64::from(degree == 0);
    }
    let n = nvars as u64 - 1;
    let mut acc: u64 = 1;
    for i in 1..=n {
        acc = acc * (degree as u64 + i) / i;
    }
    acc
}

/// A lexicographic order given by a variable-priority sequence (highest
/// first). The first `block` variables form an elimination block: under
/// pure lex every monomial involving one of them already dominates every
/// monomial that does not.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    priority: Vec<String>,
    block: usize,
}

impl MonomialOrder {
    pub fn lex<S: AsRef<str>>(priority: &[S]) -> Result<Self> {
        Self::elimination(priority, 0)
    }

    pub fn elimination<S: AsRef<str>>(priority: &[S], block: usize) -> Result<Self> {
        let priority: Vec<String> = priority.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &priority {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidOrder(format!("variable `{v}` repeated")));
            }
        }
        if block > priority.len() {
            return Err(Error::InvalidOrder(format!(
                "elimination block of {block} exceeds {} variables",
                priority.len()
            )));
        }
        Ok(MonomialOrder { priority, block })
    }

    /// Parses `lex:v1,v2,...` (the CLI spelling).
    pub fn parse(text: &str) -> Result<Self> {
        let rest = text
            .strip_prefix("lex:")
            .ok_or_else(|| Error::InvalidOrder(format!("expected `lex:<vars>`, got {text:?}")))?;
        let vars: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if vars.is_empty() {
            return Err(Error::InvalidOrder("empty variable list".into()));
        }
        Self::lex(&vars)
    }

    pub fn priority(&self) -> &[String] {
        &self.priority
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn eliminated(&self) -> &[String] {
        &self.priority[..self.block]
    }
}
