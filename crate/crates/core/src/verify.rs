//! Replays a corpus of identities against the engine.
//!
//! Each check is data: a construction recipe, the expected object and a
//! provenance note. The built-in corpus lives in `data/identities.toml`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classification::symmetric_basis_families;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::groebner::{is_groebner_basis, reduce_basis};
use crate::ideal::Ideal;
use crate::linalg;
use crate::ops::{colon_poly, contract_to_subring, ideal_degree_dim};
use crate::permanental::{build_matrix, permanental_ideal, ShapeSpec};
use crate::ring::Polynomial;
use crate::vnum::{alpha_quotient, initial_colon_holds};
use crate::with_field;

const BUILTIN: &str = include_str!("../data/identities.toml");

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct Check {
    pub id: String,
    pub provenance: String,
    #[serde(flatten)]
    pub body: CheckBody,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckBody {
    Membership { shape: String, poly: String, member: bool },
    NormalForm { shape: String, poly: String, expected: String },
    /// `reduced = false` accepts any Gröbner basis of the ideal and compares
    /// its reduction.
    GroebnerBasis { shape: String, expected: Vec<String>, reduced: bool },
    SymmetricFamilies { n: usize },
    /// The polynomials span the degree-`degree` component.
    DegreeSpan { shape: String, degree: u32, polys: Vec<String> },
    Colon { shape: String, f: String, expected: Vec<String> },
    AlphaAtLeast { shape: String, ideal: Vec<String>, bound: u32 },
    IdealEqual { shape: String, other: String },
    /// Contraction of the symmetric `n×n` ideal to the variables of the
    /// lower-right `(n−1)×(n−1)` block.
    Retraction { n: usize },
}

impl CheckBody {
    pub fn kind(&self) -> &'static str {
        match self {
            CheckBody::Membership { .. } => "membership",
            CheckBody::NormalForm { .. } => "normal_form",
            CheckBody::GroebnerBasis { .. } => "groebner_basis",
            CheckBody::SymmetricFamilies { .. } => "symmetric_families",
            CheckBody::DegreeSpan { .. } => "degree_span",
            CheckBody::Colon { .. } => "colon",
            CheckBody::AlphaAtLeast { .. } => "alpha_at_least",
            CheckBody::IdealEqual { .. } => "ideal_equal",
            CheckBody::Retraction { .. } => "retraction",
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Corpus {
    pub check: Vec<Check>,
}

impl Corpus {
    pub fn builtin() -> Self {
        Self::from_toml(BUILTIN).expect("built-in corpus parses")
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let corpus: Corpus =
            toml::from_str(text).map_err(|e| Error::InvalidArgument(format!("corpus: {e}")))?;
        let mut seen = std::collections::BTreeSet::new();
        for c in &corpus.check {
            if !seen.insert(c.id.as_str()) {
                return Err(Error::InvalidArgument(format!("corpus: duplicate id {}", c.id)));
            }
        }
        Ok(corpus)
    }

    /// Checks whose id equals `filter` or extends it by `:`-separated parts.
    pub fn select(&self, filter: Option<&str>) -> Vec<&Check> {
        self.check
            .iter()
            .filter(|c| match filter {
                None => true,
                Some(f) => c.id == f || c.id.starts_with(&format!("{f}:")),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub kind: String,
    pub passed: bool,
    pub detail: String,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub field: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

/// Runs checks concurrently; results keep the corpus order.
pub fn run_checks(checks: &[&Check], field: FieldSpec, alpha_cap: u32) -> Result<VerifyReport> {
    if field.is_char_two() {
        return Err(Error::CharacteristicTwo(
            "the identities are stated away from characteristic 2".into(),
        ));
    }
    let results = checks
        .par_iter()
        .map(|c| {
            let (passed, detail) = with_field!(field, f => run_one(&c.body, f, field, alpha_cap))?;
            Ok(CheckResult {
                id: c.id.clone(),
                kind: c.body.kind().to_string(),
                passed,
                detail,
                provenance: c.provenance.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = results.iter().all(|r| r.passed);
    Ok(VerifyReport {
        field: field.to_string(),
        checks: results,
        pass,
    })
}

fn p2<F: Field>(shape: &str, field: F, spec: FieldSpec) -> Result<Ideal<F>> {
    permanental_ideal(&ShapeSpec::parse(shape, spec)?, field)
}

fn parse_all<F: Field>(ideal: &Ideal<F>, texts: &[String]) -> Result<Vec<Polynomial<F>>> {
    texts.iter().map(|t| ideal.ring().parse(t)).collect()
}

fn monic_strings<F: Field>(polys: &[Polynomial<F>]) -> Vec<String> {
    let mut v: Vec<String> = polys.iter().map(|p| p.monic().to_string()).collect();
    v.sort();
    v
}

fn set_diff(a: &[String], b: &[String]) -> String {
    let missing: Vec<&String> = a.iter().filter(|x| !b.contains(x)).collect();
    let extra: Vec<&String> = b.iter().filter(|x| !a.contains(x)).collect();
    format!("missing {missing:?}, unexpected {extra:?}")
}

fn run_one<F: Field>(body: &CheckBody, field: F, spec: FieldSpec, alpha_cap: u32) -> Result<(bool, String)> {
    match body {
        CheckBody::Membership { shape, poly, member } => {
            let i = p2(shape, field, spec)?;
            let got = i.contains(&i.ring().parse(poly)?)?;
            Ok((got == *member, format!("member = {got}")))
        }
        CheckBody::NormalForm { shape, poly, expected } => {
            let i = p2(shape, field, spec)?;
            let nf = i.normal_form(&i.ring().parse(poly)?)?;
            let want = i.ring().parse(expected)?;
            Ok((nf == want, format!("NF = {nf}")))
        }
        CheckBody::GroebnerBasis { shape, expected, reduced } => {
            let i = p2(shape, field, spec)?;
            let quoted = parse_all(&i, expected)?;
            let cert = is_groebner_basis(&quoted);
            let computed = i.groebner_basis()?;
            let ours = monic_strings(computed.basis());
            let theirs = if *reduced {
                monic_strings(&quoted)
            } else {
                monic_strings(&reduce_basis(&quoted)?)
            };
            let same_ideal = i.equals(&i.derive(quoted)?)?;
            let passed = cert.is_groebner_basis && same_ideal && ours == theirs;
            let detail = if passed {
                format!(
                    "{} elements; criterion holds on {} pairs",
                    ours.len(),
                    cert.pairs_checked
                )
            } else {
                format!(
                    "criterion {:?}, same ideal {same_ideal}, {}",
                    cert.failing_pair,
                    set_diff(&theirs, &ours)
                )
            };
            Ok((passed, detail))
        }
        CheckBody::SymmetricFamilies { n } => {
            let i = p2(&format!("symmetric:{n}"), field, spec)?;
            let fam = symmetric_basis_families(i.ring(), *n)?;
            let cert = is_groebner_basis(&fam);
            let ours = monic_strings(i.groebner_basis()?.basis());
            let theirs = monic_strings(&fam);
            let passed = cert.is_groebner_basis && ours == theirs;
            Ok((passed, format!("{} family members; {}", theirs.len(), set_diff(&theirs, &ours))))
        }
        CheckBody::DegreeSpan { shape, degree, polys } => {
            let i = p2(shape, field.clone(), spec)?;
            let ps = parse_all(&i, polys)?;
            let mut inside = true;
            for p in &ps {
                inside &= p.is_homogeneous() && p.degree() == Some(*degree) && i.contains(p)?;
            }
            let mut cols: BTreeMap<crate::monomial::Monomial, usize> = BTreeMap::new();
            for p in &ps {
                for t in p.terms() {
                    let k = cols.len();
                    cols.entry(t.monomial.clone()).or_insert(k);
                }
            }
            let rows: Vec<Vec<F::Elem>> = ps
                .iter()
                .map(|p| {
                    let mut row = vec![field.zero(); cols.len()];
                    for t in p.terms() {
                        row[cols[&t.monomial]] = t.coeff.clone();
                    }
                    row
                })
                .collect();
            let rank = linalg::rank(&field, &rows, cols.len()) as u64;
            let dim = ideal_degree_dim(&i, *degree)?;
            Ok((inside && rank == dim, format!("rank {rank}, dim I_{degree} = {dim}, all members {inside}")))
        }
        CheckBody::Colon { shape, f, expected } => {
            let i = p2(shape, field, spec)?;
            let f = i.ring().parse(f)?;
            let colon = colon_poly(&i, &f)?;
            let want = i.derive(parse_all(&i, expected)?)?;
            let equal = colon.equals(&want)?;
            let mut contained = true;
            for g in colon.generators() {
                contained &= i.contains(&f.try_mul(g)?)?;
            }
            let audit = initial_colon_holds(&i, &colon, &f)?;
            Ok((
                equal && contained && audit,
                format!("colon = {colon}; f*(I:f) in I: {contained}; initial-colon audit: {audit}"),
            ))
        }
        CheckBody::AlphaAtLeast { shape, ideal, bound } => {
            let i = p2(shape, field, spec)?;
            let j = i.derive(parse_all(&i, ideal)?)?;
            let a = alpha_quotient(&i, &j, alpha_cap.max(*bound))?;
            let sound = a.verify(&i, &j)?;
            let value = a.value.map_or(format!("> {}", a.cap), |v| v.to_string());
            Ok((a.at_least(*bound) && sound, format!("alpha = {value} (engine-derived)")))
        }
        CheckBody::IdealEqual { shape, other } => {
            let a = p2(shape, field.clone(), spec)?;
            let b = p2(other, field, spec)?.map_to(a.ring())?;
            let eq = a.equals(&b)?;
            Ok((eq, format!("equal = {eq}")))
        }
        CheckBody::Retraction { n } => {
            let shape = ShapeSpec::symmetric(*n)?.with_field(spec);
            let y = build_matrix(&shape, field)?;
            let big = y.permanental_ideal(2)?;
            let rest: Vec<usize> = (1..*n).collect();
            let hat = y.submatrix(&rest, &rest)?;
            let small = hat.permanental_ideal(2)?;
            let contracted = contract_to_subring(&big, &hat.variables())?;
            let eq = contracted.equals(&small)?;
            Ok((eq, format!("contraction has {} generators; equal = {eq}", contracted.generators().len())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_parses_and_filters() {
        let c = Corpus::builtin();
        assert!(c.check.len() > 50);
        assert_eq!(c.select(Some("colon:hankel:3x6:x5")).len(), 1);
        assert!(c.select(Some("colon:hankel")).len() > 5);
        assert!(c.select(Some("colon:hank")).is_empty());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = r#"
[[check]]
id = "a"
provenance = "p"
kind = "retraction"
n = 3

[[check]]
id = "a"
provenance = "p"
kind = "retraction"
n = 4
"#;
        assert!(Corpus::from_toml(text).is_err());
    }

    #[test]
    fn char_two_refused() {
        let c = Corpus::builtin();
        let sel = c.select(Some("retraction"));
        assert!(run_checks(&sel, FieldSpec::new(2).unwrap(), 6).is_err());
    }
}
