//! The v-number pipeline.
//!
//! The pipeline brackets `v(I)` between two certified bounds:
//!
//! * **upper**: a polynomial `f` of degree `d` whose colon `I : f` is
//!   recomputed and recognized as prime gives `v(I) ≤ d`;
//! * **lower**: if every minimal prime of `I` contains one of the ideals
//!   `J_1, …, J_k`, then `v(I) ≥ min_i α((I : J_i) / I)`, and a probe `g ∉ I`
//!   with `I : g ≠ I` shows `I` is not prime, so `v(I) ≥ 1`.
//!
//! A value is reported only when the two bounds meet.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classification::{
    expected_v, is_prime_shape, is_recognized_prime, known_data, non_primality_probe, listed_witnesses, KnownPrimeSet,
    Witness,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::Limits;
use crate::ideal::Ideal;
use crate::linalg::Echelon;
use crate::monomial::{count_monomials, monomials_of_degree, Monomial};
use crate::ops::colon_poly;
use crate::permanental::{permanental_ideal, ShapeSpec};
use crate::ring::{Polynomial, Term};
use crate::with_field;

type Coordinates<F> = std::collections::BTreeMap<(usize, Monomial), Vec<(usize, <F as Field>::Elem)>>;

/// One degree of an α computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub degree: u32,
    /// `dim {f ∈ R_d : f·J ⊆ I}`
    pub solution_dim: u64,
    /// `dim I_d`
    pub ideal_dim: u64,
}

/// `α((I : J) / I)` up to a degree cap.
#[derive(Clone, Debug)]
pub struct AlphaResult<F: Field> {
    /// `None` when no degree up to `cap` qualifies.
    pub value: Option<u32>,
    pub cap: u32,
    pub degrees: Vec<DegreeDims>,
    /// A basis of the solutions modulo `I` at degree `value`, as
    /// combinations of standard monomials.
    pub solutions: Vec<Polynomial<F>>,
}

impl<F: Field> AlphaResult<F> {
    /// Whether `α ≥ k` is established.
    pub fn at_least(&self, k: u32) -> bool {
        match self.value {
            Some(v) => v >= k,
            None => k <= self.cap + 1,
        }
    }

    /// The certified lower bound: the value, or `cap + 1`.
    pub fn lower_bound(&self) -> u32 {
        self.value.unwrap_or(self.cap + 1)
    }

    /// Rechecks every stored solution without the linear algebra:
    /// `NF(f·g) = 0` for each generator `g` of `J` and `NF(f) ≠ 0`.
    pub fn verify(&self, i: &Ideal<F>, j: &Ideal<F>) -> Result<bool> {
        for f in &self.solutions {
            if i.contains(f)? {
                return Ok(false);
            }
            for g in j.generators() {
                if !i.contains(&f.try_mul(g)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn require_graded<F: Field>(i: &Ideal<F>, j: &Ideal<F>) -> Result<()> {
    if !i.is_homogeneous() || !j.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if j.is_zero_ideal() {
        return Err(Error::InvalidArgument("the divisor ideal is zero".into()));
    }
    if !crate::ring::Ring::same(i.ring(), j.ring()) {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// Solutions of `f·J ⊆ I` in degree `d`, modulo `I`: returns
/// `(dim I_d, basis)` with basis elements supported on standard monomials.
pub fn colon_solutions<F: Field>(i: &Ideal<F>, j: &Ideal<F>, d: u32) -> Result<(u64, Vec<Polynomial<F>>)> {
    require_graded(i, j)?;
    let gb = i.groebner_basis()?;
    let ring = i.ring();
    let field = ring.field();
    let standard: Vec<Monomial> = monomials_of_degree(ring.nvars(), d)
        .into_iter()
        .filter(|m| gb.is_standard(m))
        .collect();
    let ideal_dim = count_monomials(ring.nvars(), d) - standard.len() as u64;
    if standard.is_empty() {
        return Ok((ideal_dim, Vec::new()));
    }
    // one matrix row per (generator, monomial) coordinate of NF(s·g)
    let mut coords: Coordinates<F> = Default::default();
    for (col, s) in standard.iter().enumerate() {
        for (k, g) in j.generators().iter().enumerate() {
            let nf = gb.normal_form(&g.mul_term(&field.one(), s))?;
            for t in nf.terms() {
                coords
                    .entry((k, t.monomial.clone()))
                    .or_default()
                    .push((col, t.coeff.clone()));
            }
        }
    }
    let mut ech = Echelon::new(field.clone(), standard.len());
    for entries in coords.into_values() {
        let mut row = vec![field.zero(); standard.len()];
        for (c, v) in entries {
            row[c] = v;
        }
        ech.insert(row);
        if ech.is_full() {
            break;
        }
    }
    let basis = ech
        .nullspace()
        .into_iter()
        .map(|v| {
            let terms = v
                .into_iter()
                .zip(&standard)
                .filter(|(c, _)| !field.is_zero(c))
                .map(|(coeff, m)| Term {
                    coeff,
                    monomial: m.clone(),
                })
                .collect();
            ring.from_terms(terms)
        })
        .collect();
    Ok((ideal_dim, basis))
}

/// The least degree `d ≤ cap` with a homogeneous `f ∉ I` of degree `d`
/// such that `f·J ⊆ I`.
pub fn alpha_quotient<F: Field>(i: &Ideal<F>, j: &Ideal<F>, cap: u32) -> Result<AlphaResult<F>> {
    require_graded(i, j)?;
    let mut degrees = Vec::new();
    for d in 0..=cap {
        let (ideal_dim, basis) = colon_solutions(i, j, d)?;
        degrees.push(DegreeDims {
            degree: d,
            solution_dim: ideal_dim + basis.len() as u64,
            ideal_dim,
        });
        if !basis.is_empty() {
            return Ok(AlphaResult {
                value: Some(d),
                cap,
                degrees,
                solutions: basis,
            });
        }
    }
    Ok(AlphaResult {
        value: None,
        cap,
        degrees,
        solutions: Vec::new(),
    })
}

/// `I : probe ∉ {I, (1)}`, which shows `I` is not prime.
pub fn certify_not_prime<F: Field>(i: &Ideal<F>, probe: &Polynomial<F>) -> Result<bool> {
    if i.contains(probe)? {
        return Err(Error::ProbeInIdeal);
    }
    let colon = colon_poly(i, probe)?;
    Ok(!colon.is_unit()? && !colon.equals(i)?)
}

/// `I : f` equals the expected colon, and that colon is a recognized
/// prime. Then `v(I) ≤ deg f`.
pub fn verify_witness<F: Field>(i: &Ideal<F>, w: &Witness<F>) -> Result<bool> {
    if !is_recognized_prime(&w.expected_colon)? {
        return Ok(false);
    }
    colon_poly(i, &w.f)?.equals(&w.expected_colon)
}

/// `in(f) ∈ in(I) : in(J)` for `f ∈ I : J`.
pub fn initial_colon_holds<F: Field>(i: &Ideal<F>, j: &Ideal<F>, f: &Polynomial<F>) -> Result<bool> {
    let lm = f.leading_monomial().ok_or(Error::ZeroPolynomial)?;
    let in_i = i.groebner_basis()?;
    let in_j = j.groebner_basis()?.leading_monomials();
    Ok(in_j.iter().all(|u| !in_i.is_standard(&lm.mul(u))))
}

/// A lower bound on `v(I)` from the α-invariants over the known primes or
/// covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBound {
    /// Which list the minimum runs over.
    pub over: String,
    pub value: u32,
    pub entries: Vec<AlphaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaEntry {
    pub ideal: String,
    /// `None` when `α` exceeds the cap.
    pub alpha: Option<u32>,
    pub cap: u32,
}

pub fn v_lower_bound<F: Field>(i: &Ideal<F>, data: &KnownPrimeSet<F>, cap: u32) -> Result<AlphaBound> {
    let (over, ideals) = data.lower_bound_ideals();
    if ideals.is_empty() {
        return Err(Error::Unclassified(format!("{}: no primes or covers known", data.shape)));
    }
    let results = ideals
        .par_iter()
        .map(|j| alpha_quotient(i, j, cap))
        .collect::<Result<Vec<_>>>()?;
    let entries: Vec<AlphaEntry> = ideals
        .iter()
        .zip(&results)
        .map(|(j, a)| AlphaEntry {
            ideal: j.to_string(),
            alpha: a.value,
            cap,
        })
        .collect();
    let value = results.iter().map(AlphaResult::lower_bound).min().expect("nonempty");
    Ok(AlphaBound {
        over: over.to_string(),
        value,
        entries,
    })
}

/// Knobs for [`v_number`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VConfig {
    pub alpha_cap: u32,
    pub search_cap: u32,
    pub seed: u64,
    pub random_budget: usize,
    pub search: bool,
    pub timings: bool,
    pub limits: Limits,
}

impl Default for VConfig {
    fn default() -> Self {
        VConfig {
            alpha_cap: 6,
            search_cap: 4,
            seed: 0,
            random_budget: 64,
            search: true,
            timings: false,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    BoundsOnly,
    PrimeLookup,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Exact => "exact",
            Status::BoundsOnly => "bounds-only",
            Status::PrimeLookup => "prime-lookup",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSource {
    Literature,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub f: String,
    pub degree: u32,
    pub colon: String,
    pub verified: bool,
    pub initial_colon_audit: bool,
    pub source: WitnessSource,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VNumberReport {
    pub shape: String,
    pub field: String,
    pub status: Status,
    pub v: Option<u32>,
    pub lower: u32,
    pub upper: Option<u32>,
    pub expected: Option<u32>,
    pub non_prime_probe: Option<String>,
    pub non_prime_certified: bool,
    pub alpha_bound: Option<AlphaBound>,
    pub witness: Option<WitnessReport>,
    pub classification: String,
    pub warnings: Vec<String>,
    /// A resource cap cut the bound computation short.
    pub cap_hit: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VNumberReport {
    pub fn matches_expected(&self) -> bool {
        self.v.is_some() && self.v == self.expected
    }
}

/// Runs the pipeline for one shape over its own field.
pub fn v_number(shape: &ShapeSpec, cfg: &VConfig) -> Result<VNumberReport> {
    let start = Instant::now();
    let mut report = with_field!(shape.field, field => v_number_over(shape, field, cfg))?;
    if cfg.timings {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

fn base_report(shape: &ShapeSpec) -> VNumberReport {
    VNumberReport {
        shape: shape.to_string(),
        field: shape.field.to_string(),
        status: Status::BoundsOnly,
        v: None,
        lower: 0,
        upper: None,
        expected: expected_v(shape),
        non_prime_probe: None,
        non_prime_certified: false,
        alpha_bound: None,
        witness: None,
        classification: String::new(),
        warnings: Vec::new(),
        cap_hit: false,
        elapsed_ms: None,
    }
}

fn v_number_over<F: Field>(shape: &ShapeSpec, field: F, cfg: &VConfig) -> Result<VNumberReport> {
    if shape.t != 2 {
        return Err(Error::Unclassified(shape.to_string()));
    }
    let mut report = base_report(shape);
    if shape.field.is_char_two() {
        report.status = Status::PrimeLookup;
        report.v = Some(0);
        report.upper = Some(0);
        report.classification = "characteristic 2: permanental and determinantal ideals coincide".into();
        report.warnings.push(
            "characteristic 2: subpermanents equal subdeterminants, so the ideal is a determinantal \
             ideal, which is prime; v = 0 is looked up, not computed"
                .into(),
        );
        return Ok(report);
    }
    let ideal = permanental_ideal(shape, field)?.with_limits(cfg.limits);
    let data = known_data(shape, ideal.ring())?;
    report.classification = data.provenance.clone();
    if data.is_prime {
        report.status = Status::PrimeLookup;
        report.v = Some(0);
        report.upper = Some(0);
        if !is_recognized_prime(&ideal)? {
            report.warnings.push("ideal is listed as prime but not recognized as such".into());
        }
        return Ok(report);
    }
    ideal.groebner_basis()?;

    let witnesses = listed_witnesses(shape, &ideal)?;
    if let Some(probe) = non_primality_probe(shape, &witnesses, ideal.ring())? {
        report.non_prime_probe = Some(probe.to_string());
        report.non_prime_certified = certify_not_prime(&ideal, &probe)?;
    }
    let mut lower = u32::from(report.non_prime_certified);
    match v_lower_bound(&ideal, &data, cfg.alpha_cap) {
        Ok(bound) => {
            lower = lower.max(bound.value);
            report.alpha_bound = Some(bound);
        }
        Err(Error::Unclassified(_)) => {}
        Err(e) if e.is_cap() => {
            report.cap_hit = true;
            report.warnings.push(format!("lower bound: {e}"));
        }
        Err(e) => return Err(e),
    }
    report.lower = lower;

    let mut best: Option<(Witness<F>, WitnessSource)> = None;
    for w in witnesses {
        if verify_witness(&ideal, &w)? {
            if best.as_ref().is_none_or(|(b, _)| w.degree() < b.degree()) {
                best = Some((w, WitnessSource::Literature));
            }
        } else {
            report
                .warnings
                .push(format!("witness {} did not verify: {}", w.f, w.provenance));
        }
    }
    let need_search = best.as_ref().is_none_or(|(b, _)| b.degree() > lower);
    if cfg.search && need_search {
        let ceiling = best.as_ref().map_or(cfg.search_cap, |(b, _)| cfg.search_cap.min(b.degree() - 1));
        match search_witness(&ideal, &data, lower, ceiling, cfg) {
            Ok(Some(w)) => best = Some((w, WitnessSource::Search)),
            Ok(None) => {}
            Err(e) if e.is_cap() => {
                report.cap_hit = true;
                report.warnings.push(format!("witness search: {e}"));
            }
            Err(e) => return Err(e),
        }
    }

    if let Some((w, source)) = best {
        let audit = initial_colon_holds(&ideal, &w.expected_colon, &w.f)?;
        report.upper = Some(w.degree());
        report.witness = Some(WitnessReport {
            f: w.f.to_string(),
            degree: w.degree(),
            colon: w.expected_colon.to_string(),
            verified: true,
            initial_colon_audit: audit,
            source,
            provenance: w.provenance,
        });
    }
    match report.upper {
        Some(u) if u == lower => {
            report.status = Status::Exact;
            report.v = Some(u);
        }
        Some(u) if u < lower => report
            .warnings
            .push(format!("lower bound {lower} exceeds verified upper bound {u}")),
        _ => {}
    }
    Ok(report)
}

/// Looks for `f` of degree `d ∈ [lower, ceiling]` with `I : f = P` for a
/// known prime `P`, trying the reduced-echelon solution basis first and
/// then seeded random combinations of it.
fn search_witness<F: Field>(
    ideal: &Ideal<F>,
    data: &KnownPrimeSet<F>,
    lower: u32,
    ceiling: u32,
    cfg: &VConfig,
) -> Result<Option<Witness<F>>> {
    let mut primes = Vec::new();
    for p in data.all_primes() {
        if is_recognized_prime(&p)? {
            primes.push(p);
        }
    }
    let field = ideal.ring().field().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for d in lower..=ceiling {
        for p in &primes {
            let (_, basis) = colon_solutions(ideal, p, d)?;
            if basis.is_empty() {
                continue;
            }
            let mut candidates = basis.clone();
            for _ in 0..cfg.random_budget {
                let mut f = ideal.ring().zero();
                for b in &basis {
                    let c = field.from_i64(rng.gen_range(-5..=5));
                    f = f.try_add(&b.scale(&c))?;
                }
                if !f.is_zero() {
                    candidates.push(f);
                }
            }
            for f in candidates {
                if colon_poly(ideal, &f)?.equals(p)? {
                    return Ok(Some(Witness {
                        f,
                        expected_colon: p.clone(),
                        provenance: format!("found by search at degree {d}"),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// One row of the summary table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub family: String,
    pub m: usize,
    pub n: usize,
    pub field: String,
    pub v: Option<u32>,
    pub expected: Option<u32>,
    pub matches: bool,
    pub status: Status,
    pub lower: u32,
    pub upper: Option<u32>,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub details: Vec<VNumberReport>,
    pub pass: bool,
}

/// The v-numbers of many shapes, computed concurrently and reported in
/// input order.
pub fn table_report(shapes: &[ShapeSpec], cfg: &VConfig) -> Result<TableReport> {
    let details = shapes
        .par_iter()
        .map(|s| v_number(s, cfg))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<TableRow> = shapes
        .iter()
        .zip(&details)
        .map(|(s, r)| {
            let (m, n) = s.dims();
            TableRow {
                family: s.family.name().to_string(),
                m,
                n,
                field: s.field.to_string(),
                v: r.v,
                expected: r.expected,
                matches: r.matches_expected(),
                status: r.status,
                lower: r.lower,
                upper: r.upper,
                witness: r.witness.as_ref().map(|w| w.f.clone()),
                elapsed_ms: r.elapsed_ms,
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.matches);
    Ok(TableReport { rows, details, pass })
}

/// The shapes of the summary table exercised by default.
pub fn default_suite(field: FieldSpec) -> Vec<ShapeSpec> {
    let specs = [
        "generic:2x2",
        "generic:2x3",
        "generic:2x5",
        "generic:3x3",
        "generic:3x4",
        "symmetric:2",
        "symmetric:3",
        "symmetric:4",
        "hankel:2x2",
        "hankel:2x3",
        "hankel:2x4",
        "hankel:2x6",
        "hankel:3x3",
        "hankel:3x4",
        "hankel:3x5",
        "hankel:4x4",
        "hankel:3x6",
        "hankel:4x5",
        "hankel:3x7",
    ];
    specs
        .iter()
        .map(|s| ShapeSpec::parse(s, field).expect("valid suite shape"))
        .collect()
}

/// Whether a shape's ideal is prime by classification alone.
pub fn is_prime_by_lookup(shape: &ShapeSpec) -> bool {
    shape.field.is_char_two() || is_prime_shape(shape)
}
