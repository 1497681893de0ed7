use std::path::Path;
use std::time::Instant;

use permv::classification::is_recognized_prime;
use permv::ops::{colon_ideal, colon_poly};
use permv::parse::parse_list;
use permv::verify::{run_checks, Corpus};
use permv::vnum::{alpha_quotient, default_suite, initial_colon_holds, table_report, v_number, Status, VConfig};
use permv::{is_groebner_basis, permanental_ideal, with_field, Error, Field, Ideal, ShapeSpec};
use serde_json::json;

use crate::args::Command;
use crate::config::Config;
use crate::report::{ReportDocument, Tabular, Timings};
use crate::{EXIT_CAP, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

/// A failure that produced no report.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::DivisionFailed(_) => EXIT_MISMATCH,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(ReportDocument, i32), Failure>;

pub fn execute(cmd: &Command, cfg: &Config) -> Outcome {
    let start = Instant::now();
    let (mut doc, code) = match cmd {
        Command::Ideal(s) => shape_command(cfg, "ideal", &s.shape, ideal_cmd),
        Command::Gb(s) => shape_command(cfg, "gb", &s.shape, |i, d| i.gb(d)),
        Command::Nf { shape, poly } => shape_command(cfg, "nf", &shape.shape, |i, d| i.nf(poly, d)),
        Command::Colon { shape, poly, ideal } => shape_command(cfg, "colon", &shape.shape, |i, d| {
            i.colon(poly.as_deref(), ideal.as_deref(), d)
        }),
        Command::Alpha { shape, ideal } => {
            shape_command(cfg, "alpha", &shape.shape, |i, d| i.alpha(ideal, cfg.alpha_cap, d))
        }
        Command::Vnumber { shape, no_search } => vnumber_cmd(cfg, &shape.shape, !no_search),
        Command::Table { shape } => table_cmd(cfg, shape),
        Command::Verify { check, corpus } => verify_cmd(cfg, check.as_deref(), corpus.as_deref()),
    }?;
    if cfg.timings {
        doc.timings = Some(Timings {
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok((doc, code))
}

fn verdict(doc: &ReportDocument) -> i32 {
    if doc.pass {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn common_inputs(doc: &mut ReportDocument, cfg: &Config) {
    doc.input("field", cfg.field.to_string());
    doc.input(
        "order",
        cfg.order
            .as_ref()
            .map_or_else(|| "shape-default".to_string(), |o| format!("lex:{}", o.priority().join(","))),
    );
}

/// Builds the shape's ideal (in the requested order) and hands it to `body`
/// together with a document that already records the common inputs.
fn shape_command<G>(cfg: &Config, command: &str, shape_text: &str, body: G) -> Outcome
where
    G: FnOnce(&dyn ShapeIdeal, &mut ReportDocument) -> Result<(), Error>,
{
    let shape = ShapeSpec::parse(shape_text, cfg.field)?;
    let mut doc = ReportDocument::new(command);
    doc.input("shape", shape.to_string());
    common_inputs(&mut doc, cfg);
    doc.summarize("shape", shape);
    doc.summarize("field", cfg.field);
    with_field!(cfg.field, field => {
        let mut ideal = permanental_ideal(&shape, field)?.with_limits(cfg.limits);
        if let Some(order) = &cfg.order {
            let ring = ideal.ring().with_order(order.clone())?;
            ideal = ideal.map_to(&ring)?;
        }
        body(&ideal, &mut doc)?;
    });
    let code = verdict(&doc);
    Ok((doc, code))
}

/// The operations the shape-level subcommands need, erased over the field.
pub trait ShapeIdeal {
    fn generators(&self) -> Vec<String>;
    fn variables(&self) -> Vec<String>;
    fn order(&self) -> Vec<String>;
    fn gb(&self, doc: &mut ReportDocument) -> Result<(), Error>;
    fn nf(&self, poly: &str, doc: &mut ReportDocument) -> Result<(), Error>;
    fn colon(&self, poly: Option<&str>, ideal: Option<&str>, doc: &mut ReportDocument) -> Result<(), Error>;
    fn alpha(&self, ideal: &str, cap: u32, doc: &mut ReportDocument) -> Result<(), Error>;
}

impl<F: Field> ShapeIdeal for Ideal<F> {
    fn generators(&self) -> Vec<String> {
        self.to_strings()
    }

    fn variables(&self) -> Vec<String> {
        self.ring().variables().to_vec()
    }

    fn order(&self) -> Vec<String> {
        self.ring().order().priority().to_vec()
    }

    fn gb(&self, doc: &mut ReportDocument) -> Result<(), Error> {
        let gb = self.groebner_basis()?;
        let cert = is_groebner_basis(gb.basis());
        let basis = gb.to_strings();
        doc.pass = cert.is_groebner_basis;
        doc.summarize("elements", basis.len());
        doc.summarize("certificate", if cert.is_groebner_basis { "holds" } else { "FAILS" });
        doc.results = json!({
            "order": self.order(),
            "basis": basis,
            "certificate": cert,
            "stats": gb.stats(),
        });
        doc.table = numbered("element", &basis);
        doc.note("basis", "engine-computed reduced basis, shown in integer-primitive form");
        Ok(())
    }

    fn nf(&self, poly: &str, doc: &mut ReportDocument) -> Result<(), Error> {
        let f = self.ring().parse(poly)?;
        let nf = self.normal_form(&f)?;
        let member = nf.is_zero();
        doc.input("poly", f.to_string());
        doc.summarize("poly", &f);
        doc.summarize("normal form", &nf);
        doc.summarize("member", member);
        doc.results = json!({ "poly": f.to_string(), "normal_form": nf.to_string(), "member": member });
        let mut t = Tabular::new(&["poly", "normal_form", "member"]);
        t.push([f.to_string(), nf.to_string(), member.to_string()]);
        doc.table = t;
        Ok(())
    }

    fn colon(&self, poly: Option<&str>, ideal: Option<&str>, doc: &mut ReportDocument) -> Result<(), Error> {
        let (colon, contained, audit) = match (poly, ideal) {
            (Some(p), _) => {
                let f = self.ring().parse(p)?;
                doc.input("poly", f.to_string());
                doc.summarize("f", &f);
                let colon = colon_poly(self, &f)?;
                let mut contained = true;
                for g in colon.generators() {
                    contained &= self.contains(&f.try_mul(g)?)?;
                }
                let audit = initial_colon_holds(self, &colon, &f)?;
                (colon, contained, Some(audit))
            }
            (None, Some(text)) => {
                let j = self.derive(parse_list(text, self.ring())?)?;
                doc.input("ideal", j.to_strings());
                doc.summarize("J", &j);
                let colon = colon_ideal(self, &j)?;
                let mut contained = true;
                for g in colon.generators() {
                    for h in j.generators() {
                        contained &= self.contains(&g.try_mul(h)?)?;
                    }
                }
                (colon, contained, None)
            }
            (None, None) => return Err(Error::InvalidArgument("colon needs --poly or --ideal".into())),
        };
        let basis = colon.groebner_basis()?.to_strings();
        let prime = is_recognized_prime(&colon)?;
        let equals_self = colon.equals(self)?;
        doc.pass = contained && audit.unwrap_or(true);
        doc.summarize("colon", format!("({})", basis.join(", ")));
        doc.summarize("recognized prime", prime);
        doc.summarize("equals I", equals_self);
        doc.summarize("containment", contained);
        doc.results = json!({
            "colon_basis": basis,
            "recognized_prime": prime,
            "equals_ideal": equals_self,
            "containment": contained,
            "initial_colon_audit": audit,
        });
        doc.table = numbered("colon_element", &basis);
        Ok(())
    }

    fn alpha(&self, ideal: &str, cap: u32, doc: &mut ReportDocument) -> Result<(), Error> {
        let j = self.derive(parse_list(ideal, self.ring())?)?;
        doc.input("ideal", j.to_strings());
        doc.input("max_degree", cap);
        let a = alpha_quotient(self, &j, cap)?;
        let verified = a.verify(self, &j)?;
        let value = a.value.map_or_else(|| format!("> {cap}"), |v| v.to_string());
        let solutions: Vec<String> = a.solutions.iter().map(|s| s.to_canonical_string()).collect();
        doc.pass = verified;
        doc.summarize("J", &j);
        doc.summarize("alpha", &value);
        doc.summarize("solutions verified", verified);
        doc.results = json!({
            "alpha": a.value,
            "cap": a.cap,
            "lower_bound": a.lower_bound(),
            "degrees": a.degrees,
            "solutions": solutions,
            "verified": verified,
        });
        let mut t = Tabular::new(&["degree", "solution_dim", "ideal_dim"]);
        for d in &a.degrees {
            t.push([d.degree.to_string(), d.solution_dim.to_string(), d.ideal_dim.to_string()]);
        }
        doc.table = t;
        doc.note("alpha", "engine-derived by per-degree linear algebra, not a tabulated value");
        Ok(())
    }
}

fn numbered(header: &str, items: &[String]) -> Tabular {
    let mut t = Tabular::new(&["index", header]);
    for (k, s) in items.iter().enumerate() {
        t.push([(k + 1).to_string(), s.clone()]);
    }
    t
}

fn ideal_cmd(i: &dyn ShapeIdeal, doc: &mut ReportDocument) -> Result<(), Error> {
    let gens = i.generators();
    doc.summarize("generators", gens.len());
    doc.results = json!({ "variables": i.variables(), "generators": gens });
    doc.table = numbered("generator", &gens);
    Ok(())
}

fn vconfig(cfg: &Config, search: bool) -> VConfig {
    VConfig {
        alpha_cap: cfg.alpha_cap,
        search_cap: cfg.search_cap,
        seed: cfg.seed,
        random_budget: cfg.random_budget,
        search,
        timings: cfg.timings,
        limits: cfg.limits,
    }
}

fn vnumber_inputs(doc: &mut ReportDocument, cfg: &Config, search: bool) {
    doc.input("field", cfg.field.to_string());
    doc.input("max_degree", cfg.alpha_cap);
    doc.input("search_cap", cfg.search_cap);
    doc.input("seed", cfg.seed);
    doc.input("search", search);
    if cfg.order.is_some() {
        doc.warnings.push("--order does not affect v-numbers and was ignored".into());
    }
}

fn vnumber_cmd(cfg: &Config, shape_text: &str, search: bool) -> Outcome {
    let shape = ShapeSpec::parse(shape_text, cfg.field)?;
    let report = v_number(&shape, &vconfig(cfg, search))?;
    let mut doc = ReportDocument::new("vnumber");
    doc.input("shape", shape.to_string());
    vnumber_inputs(&mut doc, cfg, search);
    let v = report.v.map_or_else(|| "undetermined".to_string(), |v| v.to_string());
    doc.summarize("shape", shape);
    doc.summarize("field", cfg.field);
    doc.summarize("v", &v);
    doc.summarize("status", report.status.as_str());
    doc.summarize("bounds", bounds(report.lower, report.upper));
    if let Some(e) = report.expected {
        doc.summarize("expected", e);
    }
    if let Some(w) = &report.witness {
        doc.summarize("witness", format!("{} (degree {}), colon {}", w.f, w.degree, w.colon));
    }
    doc.note("classification", &report.classification);
    if let Some(b) = &report.alpha_bound {
        doc.note("lower bound", format!("minimum of α over the {}", b.over));
    }
    if let Some(w) = &report.witness {
        doc.note("witness", &w.provenance);
    }
    doc.warnings.extend(report.warnings.iter().cloned());
    doc.pass = report.matches_expected();
    let mut t = Tabular::new(&["shape", "field", "v", "expected", "status", "lower", "upper", "witness"]);
    t.push([
        report.shape.clone(),
        report.field.clone(),
        v,
        report.expected.map(|e| e.to_string()).unwrap_or_default(),
        report.status.as_str().to_string(),
        report.lower.to_string(),
        report.upper.map(|u| u.to_string()).unwrap_or_default(),
        report.witness.as_ref().map(|w| w.f.clone()).unwrap_or_default(),
    ]);
    doc.table = t;
    // Every classified shape is decidable; bounds-only means a cap stopped it.
    let code = if report.status == Status::BoundsOnly {
        EXIT_CAP
    } else {
        verdict(&doc)
    };
    doc.results = serde_json::to_value(&report).expect("report serializes");
    Ok((doc, code))
}

fn bounds(lower: u32, upper: Option<u32>) -> String {
    match upper {
        Some(u) => format!("{lower} ≤ v ≤ {u}"),
        None => format!("v ≥ {lower}"),
    }
}

fn table_cmd(cfg: &Config, shapes: &[String]) -> Outcome {
    let suite = if shapes.is_empty() {
        default_suite(cfg.field)
    } else {
        shapes
            .iter()
            .map(|s| ShapeSpec::parse(s, cfg.field))
            .collect::<Result<Vec<_>, _>>()?
    };
    let report = table_report(&suite, &vconfig(cfg, true))?;
    let mut doc = ReportDocument::new("table");
    doc.input("shapes", suite.iter().map(ToString::to_string).collect::<Vec<_>>());
    vnumber_inputs(&mut doc, cfg, true);
    let matched = report.rows.iter().filter(|r| r.matches).count();
    doc.summarize("field", cfg.field);
    doc.summarize("rows", report.rows.len());
    doc.summarize("matching", matched);
    let mut t = Tabular::new(&["family", "m", "n", "v", "expected", "match", "status", "witness"]);
    for r in &report.rows {
        t.push([
            r.family.clone(),
            r.m.to_string(),
            r.n.to_string(),
            r.v.map(|v| v.to_string()).unwrap_or_default(),
            r.expected.map(|e| e.to_string()).unwrap_or_default(),
            r.matches.to_string(),
            r.status.as_str().to_string(),
            r.witness.clone().unwrap_or_default(),
        ]);
    }
    doc.table = t;
    for d in &report.details {
        doc.note(d.shape.clone(), &d.classification);
        for w in &d.warnings {
            doc.warnings.push(format!("{}: {w}", d.shape));
        }
    }
    doc.pass = report.pass;
    let capped = report.details.iter().any(|d| d.status == Status::BoundsOnly);
    let code = if capped { EXIT_CAP } else { verdict(&doc) };
    doc.results = serde_json::to_value(&report).expect("report serializes");
    Ok((doc, code))
}

fn verify_cmd(cfg: &Config, filter: Option<&str>, extra: Option<&Path>) -> Outcome {
    let corpus = match extra {
        None => Corpus::builtin(),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("corpus {}: {e}", path.display()),
            })?;
            Corpus::from_toml(&text)?
        }
    };
    let selected = corpus.select(filter);
    if selected.is_empty() {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!("no check matches {:?}", filter.unwrap_or("")),
        });
    }
    let report = run_checks(&selected, cfg.field, cfg.alpha_cap)?;
    let mut doc = ReportDocument::new("verify");
    doc.input("field", cfg.field.to_string());
    doc.input("check", filter);
    doc.input("corpus", extra.map_or_else(|| "built-in".to_string(), |p| p.display().to_string()));
    doc.input("max_degree", cfg.alpha_cap);
    let passed = report.checks.iter().filter(|c| c.passed).count();
    doc.summarize("field", cfg.field);
    doc.summarize("checks", report.checks.len());
    doc.summarize("passed", passed);
    let mut t = Tabular::new(&["id", "kind", "passed", "detail"]);
    for c in &report.checks {
        t.push([c.id.clone(), c.kind.clone(), c.passed.to_string(), c.detail.clone()]);
        doc.note(c.id.clone(), &c.provenance);
    }
    doc.table = t;
    doc.pass = report.pass;
    doc.results = serde_json::to_value(&report).expect("report serializes");
    let code = verdict(&doc);
    Ok((doc, code))
}
