//! Brute-force oracle for degree-wise ideal dimensions and α-invariants.
//!
//! Everything here is plain linear algebra on Macaulay matrices over
//! GF(32003): the ideal's degree-d slice is spanned by all monomial
//! multiples of its generators, and `(I : J)_d / I_d` is the kernel of
//! `f ↦ (f·g mod I)_{g ∈ J}` modulo `I_d`. No Gröbner basis, normal form or
//! subpermanent code from the library is used. The frozen tables below were
//! produced by this oracle; each test checks the oracle, the engine over
//! GF(32003) and the engine over the rationals against them.

use std::collections::HashMap;

use permv::vnum::alpha_quotient;
use permv::{Field, FieldSpec, Ideal, PrimeField, Rationals, Ring};

const P: u64 = 32003;

type Exps = Vec<u16>;

/// A polynomial as `(exponents, coefficient mod P)` pairs.
#[derive(Clone, Debug)]
struct Poly {
    terms: Vec<(Exps, u64)>,
}

impl Poly {
    fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    fn shifted(&self, m: &[u16]) -> Vec<(Exps, u64)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), *c))
            .collect()
    }
}

/// Textual form in the library's syntax, used to hand the same ideal to
/// the engine.
fn to_text(p: &Poly, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, c) in &p.terms {
        let mut factors = Vec::new();
        for (k, &x) in e.iter().enumerate() {
            match x {
                0 => {}
                1 => factors.push(names[k].clone()),
                _ => factors.push(format!("{}^{x}", names[k])),
            }
        }
        let mono = factors.join("*");
        parts.push(match (*c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    parts.join(" + ")
}

fn var(nvars: usize, k: usize) -> Exps {
    let mut e = vec![0; nvars];
    e[k] = 1;
    e
}

/// `a·b + c·d` for variable indices, merging equal monomials.
fn binomial(nvars: usize, a: usize, b: usize, c: usize, d: usize) -> Poly {
    let mono = |x: usize, y: usize| {
        let mut e = vec![0u16; nvars];
        e[x] += 1;
        e[y] += 1;
        e
    };
    let (m1, m2) = (mono(a, b), mono(c, d));
    if m1 == m2 {
        Poly { terms: vec![(m1, 2)] }
    } else {
        Poly {
            terms: vec![(m1, 1), (m2, 1)],
        }
    }
}

/// All 2×2 subpermanents of a matrix of variable indices.
fn subpermanents(entries: &[Vec<usize>], nvars: usize) -> Vec<Poly> {
    let (m, n) = (entries.len(), entries[0].len());
    let mut out = Vec::new();
    for r1 in 0..m {
        for r2 in r1 + 1..m {
            for c1 in 0..n {
                for c2 in c1 + 1..n {
                    out.push(binomial(
                        nvars,
                        entries[r1][c1],
                        entries[r2][c2],
                        entries[r1][c2],
                        entries[r2][c1],
                    ));
                }
            }
        }
    }
    out
}

struct Shape {
    names: Vec<String>,
    gens: Vec<Poly>,
}

fn generic(m: usize, n: usize) -> Shape {
    let names = (1..=m).flat_map(|i| (1..=n).map(move |j| format!("x_{i}_{j}"))).collect();
    let entries: Vec<Vec<usize>> = (0..m).map(|i| (0..n).map(|j| i * n + j).collect()).collect();
    Shape {
        gens: subpermanents(&entries, m * n),
        names,
    }
}

fn symmetric(n: usize) -> Shape {
    let mut names = Vec::new();
    let mut index = HashMap::new();
    for i in 1..=n {
        for j in i..=n {
            index.insert((i, j), names.len());
            names.push(format!("y_{i}_{j}"));
        }
    }
    let entries: Vec<Vec<usize>> = (1..=n)
        .map(|i| (1..=n).map(|j| index[&(i.min(j), i.max(j))]).collect())
        .collect();
    Shape {
        gens: subpermanents(&entries, names.len()),
        names,
    }
}

fn hankel(m: usize, n: usize) -> Shape {
    let names: Vec<String> = (1..m + n).map(|k| format!("x_{k}")).collect();
    let entries: Vec<Vec<usize>> = (0..m).map(|i| (0..n).map(|j| i + j).collect()).collect();
    Shape {
        gens: subpermanents(&entries, names.len()),
        names,
    }
}

impl Shape {
    fn slot(&self, name: &str) -> usize {
        self.names.iter().position(|n| n == name).expect("known variable")
    }

    fn vars(&self, names: &[&str]) -> Vec<Poly> {
        names
            .iter()
            .map(|n| Poly {
                terms: vec![(var(self.names.len(), self.slot(n)), 1)],
            })
            .collect()
    }
}

fn monomials(nvars: usize, d: u32) -> Vec<Exps> {
    fn rec(k: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if k + 1 == cur.len() {
            cur[k] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e as u16;
            rec(k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(0, d, &mut vec![0; nvars], &mut out);
    }
    out
}

fn inv(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % P, P - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % P;
        }
        base = base * base % P;
        exp >>= 1;
    }
    acc
}

type SVec = Vec<(usize, u64)>;

/// Row echelon form over GF(P) with sparse rows, keyed by pivot column.
#[derive(Default)]
struct Echelon {
    pivots: HashMap<usize, SVec>,
}

fn axpy(v: &SVec, c: u64, w: &SVec) -> SVec {
    // v - c·w
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j >= w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i >= v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i]);
            i += 1;
        } else if take_w {
            out.push((w[j].0, (P - c * w[j].1 % P) % P));
            j += 1;
        } else {
            let x = (v[i].1 + P - c * w[j].1 % P) % P;
            if x != 0 {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Echelon {
    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates every pivot column from `v`, lowest column first.
    fn reduce(&self, mut v: SVec) -> SVec {
        let mut k = 0;
        while k < v.len() {
            let (col, c) = v[k];
            match self.pivots.get(&col) {
                Some(row) => v = axpy(&v, c, row),
                None => k += 1,
            }
        }
        v
    }

    fn insert(&mut self, v: SVec) -> bool {
        let r = self.reduce(v);
        let Some(&(col, lead)) = r.first() else {
            return false;
        };
        let s = inv(lead);
        self.pivots.insert(col, r.into_iter().map(|(c, x)| (c, x * s % P)).collect());
        true
    }
}

struct Oracle<'a> {
    nvars: usize,
    gens: &'a [Poly],
    index: HashMap<u32, HashMap<Exps, usize>>,
    slices: HashMap<u32, Echelon>,
}

impl<'a> Oracle<'a> {
    fn new(shape: &'a Shape) -> Self {
        Oracle {
            nvars: shape.names.len(),
            gens: &shape.gens,
            index: HashMap::new(),
            slices: HashMap::new(),
        }
    }

    fn column(&mut self, d: u32, m: &Exps) -> usize {
        let nvars = self.nvars;
        let idx = self.index.entry(d).or_insert_with(|| {
            monomials(nvars, d).into_iter().enumerate().map(|(k, m)| (m, k)).collect()
        });
        idx[m]
    }

    fn vector(&mut self, d: u32, terms: &[(Exps, u64)], offset: usize) -> SVec {
        let mut v: SVec = terms.iter().map(|(e, c)| (offset + self.column(d, e), *c)).collect();
        v.sort_unstable();
        v
    }

    /// The degree-`d` slice of the ideal, spanned by monomial multiples.
    fn slice(&mut self, d: u32) -> &Echelon {
        if !self.slices.contains_key(&d) {
            let mut ech = Echelon::default();
            for g in self.gens {
                let e = g.degree();
                if e > d {
                    continue;
                }
                for m in monomials(self.nvars, d - e) {
                    let v = self.vector(d, &g.shifted(&m), 0);
                    ech.insert(v);
                }
            }
            self.slices.insert(d, ech);
        }
        &self.slices[&d]
    }

    fn ideal_dim(&mut self, d: u32) -> usize {
        self.slice(d).rank()
    }

    /// `dim (I : J)_d / I_d`.
    fn solution_dim(&mut self, j: &[Poly], d: u32) -> usize {
        let degrees: Vec<u32> = j.iter().map(|g| d + g.degree()).collect();
        for &e in &degrees {
            self.slice(e);
        }
        let width = |o: &mut Self, e: u32| monomials(o.nvars, e).len();
        let mut offsets = Vec::new();
        let mut total = 0;
        for &e in &degrees {
            offsets.push(total);
            total += width(self, e);
        }
        let mut image = Echelon::default();
        let domain = monomials(self.nvars, d);
        for m in &domain {
            let mut row: SVec = Vec::new();
            for (k, g) in j.iter().enumerate() {
                let e = degrees[k];
                let local = self.vector(e, &g.shifted(m), 0);
                let reduced = self.slices[&e].reduce(local);
                row.extend(reduced.into_iter().map(|(c, x)| (c + offsets[k], x)));
            }
            image.insert(row);
        }
        let kernel = domain.len() - image.rank();
        kernel - self.ideal_dim(d)
    }

    fn alpha(&mut self, j: &[Poly], cap: u32) -> Option<u32> {
        (0..=cap).find(|&d| self.solution_dim(j, d) > 0)
    }
}

/// The engine's α over `field`, on the ideal and divisor written out as
/// text in the oracle's variables.
fn engine_alpha<F: Field>(field: F, shape: &Shape, j: &[Poly], cap: u32) -> Option<u32> {
    let ring = Ring::lex(field, &shape.names).unwrap();
    let text = |ps: &[Poly]| ps.iter().map(|p| to_text(p, &shape.names)).collect::<Vec<_>>().join(", ");
    let i = Ideal::parse(&ring, &text(&shape.gens)).unwrap();
    let jj = Ideal::parse(&ring, &text(j)).unwrap();
    let a = alpha_quotient(&i, &jj, cap).unwrap();
    assert!(a.verify(&i, &jj).unwrap());
    a.value
}

fn engine_dims<F: Field>(field: F, shape: &Shape, top: u32) -> Vec<u64> {
    let ring = Ring::lex(field, &shape.names).unwrap();
    let text: Vec<String> = shape.gens.iter().map(|p| to_text(p, &shape.names)).collect();
    let i = Ideal::parse(&ring, &text.join(", ")).unwrap();
    (0..=top).map(|d| permv::ops::ideal_degree_dim(&i, d).unwrap()).collect()
}

fn gf() -> PrimeField {
    PrimeField::new(P).unwrap()
}

/// Checks a frozen α against the oracle and both engine fields.
fn check_alpha(label: &str, shape: &Shape, j: &[Poly], cap: u32, frozen: Option<u32>) {
    let oracle = Oracle::new(shape).alpha(j, cap);
    assert_eq!(oracle, frozen, "{label}: oracle");
    assert_eq!(engine_alpha(gf(), shape, j, cap), frozen, "{label}: engine over GF({P})");
    assert_eq!(engine_alpha(Rationals, shape, j, cap), frozen, "{label}: engine over QQ");
}

#[test]
fn oracle_self_check_on_a_principal_ideal() {
    // (x^2) in two variables: dim I_d = d - 1 for d ≥ 2, and (x^2 : x)/(x^2)
    // starts in degree 1 with the class of x.
    let shape = Shape {
        names: vec!["x".into(), "y".into()],
        gens: vec![Poly {
            terms: vec![(vec![2, 0], 1)],
        }],
    };
    let mut o = Oracle::new(&shape);
    assert_eq!((0..5).map(|d| o.ideal_dim(d)).collect::<Vec<_>>(), vec![0, 0, 1, 2, 3]);
    let j = shape.vars(&["x"]);
    assert_eq!(o.solution_dim(&j, 0), 0);
    assert_eq!(o.solution_dim(&j, 1), 1);
    assert!(FieldSpec::new(P).is_ok());
}

const DIMS: &[(&str, &[u64])] = &[
    ("generic:2x3", &[0, 0, 3, 18, 60]),
    ("generic:3x3", &[0, 0, 9, 77, 333]),
    ("symmetric:3", &[0, 0, 6, 34, 99]),
    ("hankel:2x3", &[0, 0, 3, 12, 27]),
    ("hankel:3x4", &[0, 0, 12, 48, 118]),
    ("hankel:3x6", &[0, 0, 28, 112, 322]),
];

fn shape_by_name(name: &str) -> Shape {
    let (family, dims) = name.split_once(':').unwrap();
    let pair = || {
        let (a, b) = dims.split_once('x').unwrap();
        (a.parse().unwrap(), b.parse().unwrap())
    };
    match family {
        "generic" => {
            let (m, n) = pair();
            generic(m, n)
        }
        "hankel" => {
            let (m, n) = pair();
            hankel(m, n)
        }
        _ => symmetric(dims.parse().unwrap()),
    }
}

#[test]
fn ideal_dimensions_match_the_engine() {
    for (name, frozen) in DIMS {
        let shape = shape_by_name(name);
        let top = frozen.len() as u32 - 1;
        let mut o = Oracle::new(&shape);
        let oracle: Vec<u64> = (0..=top).map(|d| o.ideal_dim(d) as u64).collect();
        assert_eq!(&oracle, frozen, "{name}: oracle");
        assert_eq!(&engine_dims(gf(), &shape, top), frozen, "{name}: engine over GF({P})");
        assert_eq!(&engine_dims(Rationals, &shape, top), frozen, "{name}: engine over QQ");
    }
}

#[test]
fn alpha_generic_two_rows_single_variables() {
    for n in 3..=5 {
        let shape = generic(2, n);
        for v in shape.names.clone() {
            let j = shape.vars(&[v.as_str()]);
            check_alpha(&format!("generic 2x{n}, ({v})"), &shape, &j, 4, Some(2));
        }
    }
}

#[test]
fn alpha_generic_three_by_three_first_column() {
    let shape = generic(3, 3);
    let j = shape.vars(&["x_1_1", "x_2_1", "x_3_1"]);
    check_alpha("generic 3x3, column 1", &shape, &j, 4, Some(3));
}

#[test]
fn alpha_symmetric_q_ideals() {
    for n in 3..=4 {
        let shape = symmetric(n);
        for r in 1..=n {
            for s in r + 1..=n {
                let keep = [format!("y_{r}_{r}"), format!("y_{s}_{s}"), format!("y_{r}_{s}")];
                let nv = shape.names.len();
                let (a, b, c) = (shape.slot(&keep[0]), shape.slot(&keep[1]), shape.slot(&keep[2]));
                let mut j = vec![binomial(nv, a, b, c, c)];
                let rest: Vec<&str> = shape
                    .names
                    .iter()
                    .filter(|v| !keep.contains(v))
                    .map(String::as_str)
                    .collect();
                j.extend(shape.vars(&rest));
                check_alpha(&format!("symmetric {n}, q_{r}{s}"), &shape, &j, 4, Some(3));
            }
        }
    }
}

#[test]
fn alpha_hankel_small() {
    let shape = hankel(2, 3);
    check_alpha("hankel 2x3", &shape, &shape.vars(&["x_1", "x_2", "x_3"]), 4, Some(3));
    let shape = hankel(3, 3);
    check_alpha("hankel 3x3", &shape, &shape.vars(&["x_1", "x_2", "x_3", "x_4"]), 4, Some(3));
}

#[test]
fn alpha_unit_divisor_exceeds_any_cap() {
    // (I : R)/I = 0.
    let shape = generic(2, 3);
    let one = Poly {
        terms: vec![(vec![0; 6], 1)],
    };
    check_alpha("generic 2x3, unit", &shape, &[one], 3, None);
}
