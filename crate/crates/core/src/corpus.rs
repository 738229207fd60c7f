//! Fixture varieties and the ideal-document file format.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_CHAR};
use crate::groebner::Ideal;
use crate::monomial::{Monomial, MAX_VARS};
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledPoint {
    pub label: String,
    pub coords: Vec<u32>,
    /// Advertised smoothness; `None` when not claimed.
    pub smooth: Option<bool>,
}

/// An ideal with its ring, sample points and free-form notes.
///
/// Text form:
///
/// ```text
/// char: 32003
/// vars: x0 x1 x2
/// meta: conic
/// point e0 smooth: 1 0 0
/// gens:
/// x0*x2 - x1^2
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealDocument {
    pub char: u32,
    pub vars: Vec<String>,
    pub gens: Vec<String>,
    #[serde(default)]
    pub points: Vec<LabeledPoint>,
    #[serde(default)]
    pub meta: Vec<String>,
}

impl IdealDocument {
    pub fn from_ideal(ideal: &Ideal, points: Vec<LabeledPoint>, meta: Vec<String>) -> Self {
        IdealDocument {
            char: ideal.field().characteristic(),
            vars: ideal.ring().names().to_vec(),
            gens: ideal.generators().iter().map(|g| g.to_string()).collect(),
            points,
            meta,
        }
    }

    pub fn ring(&self) -> Result<Arc<Ring>> {
        Ring::new(self.vars.clone(), PrimeField::new(self.char)?)
    }

    pub fn ideal(&self) -> Result<Ideal> {
        let ring = self.ring()?;
        let gens = self.gens.iter().map(|g| parse_polynomial(g, &ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }

    pub fn point(&self, label: &str) -> Option<&LabeledPoint> {
        self.points.iter().find(|p| p.label == label)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let err = |line: usize, msg: &str| Error::Document { line, msg: msg.into() };
        let mut char = None;
        let mut vars = None;
        let mut points = Vec::new();
        let mut meta = Vec::new();
        let mut gens = Vec::new();
        let mut in_gens = false;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if in_gens {
                gens.push(line.to_string());
                continue;
            }
            let (key, value) = line.split_once(':').ok_or_else(|| err(line_no, "expected `key: value`"))?;
            let value = value.trim();
            let mut words = key.split_whitespace();
            match words.next() {
                Some("char") => char = Some(value.parse::<u32>().map_err(|_| err(line_no, "bad characteristic"))?),
                Some("vars") => vars = Some(value.split_whitespace().map(String::from).collect::<Vec<_>>()),
                Some("meta") => meta.push(value.to_string()),
                Some("gens") => {
                    if !value.is_empty() {
                        return Err(err(line_no, "generators go on the following lines"));
                    }
                    in_gens = true;
                }
                Some("point") => {
                    let label = words.next().ok_or_else(|| err(line_no, "point needs a label"))?.to_string();
                    let smooth = match words.next() {
                        None => None,
                        Some("smooth") => Some(true),
                        Some("singular") => Some(false),
                        Some(_) => return Err(err(line_no, "expected `smooth` or `singular`")),
                    };
                    if words.next().is_some() {
                        return Err(err(line_no, "trailing words in point header"));
                    }
                    let coords = value
                        .split_whitespace()
                        .map(|c| c.parse::<u32>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| err(line_no, "bad coordinate"))?;
                    points.push(LabeledPoint { label, coords, smooth });
                }
                _ => return Err(err(line_no, "unknown key")),
            }
        }
        let doc = IdealDocument {
            char: char.ok_or_else(|| err(0, "missing `char`"))?,
            vars: vars.ok_or_else(|| err(0, "missing `vars`"))?,
            gens,
            points,
            meta,
        };
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: IdealDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    /// Reads either form; JSON is recognized by a leading `{`.
    pub fn parse_any(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            Self::parse_text(text)
        }
    }

    fn validate(&self) -> Result<()> {
        let ring = self.ring()?;
        for g in &self.gens {
            parse_polynomial(g, &ring)?;
        }
        for p in &self.points {
            if p.coords.len() != self.vars.len() {
                return Err(Error::Document { line: 0, msg: format!("point {} has the wrong length", p.label) });
            }
        }
        Ok(())
    }
}

impl fmt::Display for IdealDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "char: {}", self.char)?;
        writeln!(f, "vars: {}", self.vars.join(" "))?;
        for m in &self.meta {
            writeln!(f, "meta: {m}")?;
        }
        for p in &self.points {
            let tag = match p.smooth {
                Some(true) => " smooth",
                Some(false) => " singular",
                None => "",
            };
            let coords: Vec<String> = p.coords.iter().map(|c| c.to_string()).collect();
            writeln!(f, "point {}{}: {}", p.label, tag, coords.join(" "))?;
        }
        writeln!(f, "gens:")?;
        for g in &self.gens {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureKind {
    Rnc(u32),
    Scroll(Vec<u32>),
    Veronese(u32, u32),
    Segre(u32, u32),
    Plucker24,
    TwoPlanesP4,
}

impl FromStr for FixtureKind {
    type Err = Error;

    /// `rnc:6`, `scroll:2,3`, `veronese:2,3`, `segre:2,4`, `plucker24`,
    /// `two_planes_p4`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = || -> Result<Vec<u32>> {
            args.split(',')
                .filter(|a| !a.is_empty())
                .map(|a| a.trim().parse::<u32>().map_err(|_| Error::InvalidParameter(format!("bad parameter `{a}`"))))
                .collect()
        };
        let n = nums()?;
        let arity = |k: usize| -> Result<()> {
            if n.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("`{name}` takes {k} parameter(s)")))
            }
        };
        match name {
            "rnc" => arity(1).map(|_| FixtureKind::Rnc(n[0])),
            "scroll" => Ok(FixtureKind::Scroll(n)),
            "veronese" => arity(2).map(|_| FixtureKind::Veronese(n[0], n[1])),
            "segre" => arity(2).map(|_| FixtureKind::Segre(n[0], n[1])),
            "plucker24" => arity(0).map(|_| FixtureKind::Plucker24),
            "two_planes_p4" => arity(0).map(|_| FixtureKind::TwoPlanesP4),
            _ => Err(Error::InvalidParameter(format!("unknown fixture `{name}`"))),
        }
    }
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureKind::Rnc(d) => write!(f, "rnc:{d}"),
            FixtureKind::Scroll(a) => {
                let a: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "scroll:{}", a.join(","))
            }
            FixtureKind::Veronese(n, d) => write!(f, "veronese:{n},{d}"),
            FixtureKind::Segre(m, n) => write!(f, "segre:{m},{n}"),
            FixtureKind::Plucker24 => write!(f, "plucker24"),
            FixtureKind::TwoPlanesP4 => write!(f, "two_planes_p4"),
        }
    }
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::BudgetExceeded(format!("{n} variables exceed the limit of {MAX_VARS}")));
    }
    Ok(())
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

fn smooth_point(label: &str, coords: Vec<u32>) -> LabeledPoint {
    LabeledPoint { label: label.into(), coords, smooth: Some(true) }
}

/// `x_a x_d - x_b x_c`.
fn minor(ring: &Arc<Ring>, a: usize, b: usize, c: usize, d: usize) -> Polynomial {
    let n = ring.nvars();
    let f = ring.field();
    let ad = Monomial::var(n, a).mul(&Monomial::var(n, d));
    let bc = Monomial::var(n, b).mul(&Monomial::var(n, c));
    Polynomial::from_terms(ring, vec![(ad, 1), (bc, f.neg(1))])
}

/// 2x2 minors of a matrix whose entries are variable indices.
fn two_by_two_minors(ring: &Arc<Ring>, rows: &[Vec<usize>]) -> Vec<Polynomial> {
    let mut out = Vec::new();
    let cols = rows[0].len();
    for r1 in 0..rows.len() {
        for r2 in r1 + 1..rows.len() {
            for c1 in 0..cols {
                for c2 in c1 + 1..cols {
                    let p = minor(ring, rows[r1][c1], rows[r1][c2], rows[r2][c1], rows[r2][c2]);
                    if !p.is_zero() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Exponent vectors of degree `d` in `k` variables, lexicographically
/// descending.
fn exponents_lex(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for mut rest in exponents_lex(k - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn gen_variety(kind: &FixtureKind) -> Result<IdealDocument> {
    gen_variety_with(kind, PrimeField::new(DEFAULT_CHAR)?)
}

pub fn gen_variety_with(kind: &FixtureKind, field: PrimeField) -> Result<IdealDocument> {
    let meta = vec![format!("fixture {kind}")];
    let (ideal, points, mut notes) = match kind {
        FixtureKind::Rnc(d) => {
            let d = *d as usize;
            if d < 2 {
                return Err(Error::InvalidParameter("rnc needs d >= 2".into()));
            }
            check_size(d + 1)?;
            let ring = Ring::standard(d + 1, field);
            let rows = vec![(0..d).collect::<Vec<_>>(), (1..=d).collect()];
            let ideal = Ideal::new(&ring, two_by_two_minors(&ring, &rows))?;
            let points = vec![
                smooth_point("e0", unit(d + 1, 0)),
                smooth_point("t1", vec![1; d + 1]),
                smooth_point("t2", (0..=d).map(|k| field.pow(2, k as u64)).collect()),
                smooth_point("end", unit(d + 1, d)),
            ];
            (ideal, points, vec!["points (1:t:...:t^d)".to_string()])
        }
        FixtureKind::Scroll(a) => {
            if a.is_empty() || a.iter().any(|&x| x == 0) {
                return Err(Error::InvalidParameter("scroll needs positive block sizes".into()));
            }
            let n: usize = a.iter().map(|&x| x as usize + 1).sum();
            check_size(n)?;
            let ring = Ring::standard(n, field);
            let mut top = Vec::new();
            let mut bottom = Vec::new();
            let mut start = 0;
            for &x in a {
                for s in 0..x as usize {
                    top.push(start + s);
                    bottom.push(start + s + 1);
                }
                start += x as usize + 1;
            }
            let ideal = Ideal::new(&ring, two_by_two_minors(&ring, &[top, bottom]))?;
            (ideal, vec![smooth_point("e0", unit(n, 0))], vec![])
        }
        FixtureKind::Segre(m, n) => {
            let (r, c) = (*m as usize + 1, *n as usize + 1);
            if r < 2 || c < 2 {
                return Err(Error::InvalidParameter("segre needs m, n >= 1".into()));
            }
            check_size(r * c)?;
            let ring = Ring::standard(r * c, field);
            let rows: Vec<Vec<usize>> = (0..r).map(|i| (0..c).map(|j| i * c + j).collect()).collect();
            let ideal = Ideal::new(&ring, two_by_two_minors(&ring, &rows))?;
            (ideal, vec![smooth_point("e0", unit(r * c, 0))], vec!["x(i*(n+1)+j) = y_i z_j".to_string()])
        }
        FixtureKind::Veronese(n, d) => {
            let k = *n as usize + 1;
            if *d < 2 || k < 2 {
                return Err(Error::InvalidParameter("veronese needs n >= 1, d >= 2".into()));
            }
            let monos = exponents_lex(k, *d);
            check_size(monos.len())?;
            let nv = monos.len();
            let ring = Ring::standard(nv, field);
            // degree-2 kernel of the monomial map: differences within fibers
            let mut fibers: std::collections::BTreeMap<Vec<u32>, Vec<(usize, usize)>> = Default::default();
            for a in 0..nv {
                for b in a..nv {
                    let img: Vec<u32> = monos[a].iter().zip(&monos[b]).map(|(x, y)| x + y).collect();
                    fibers.entry(img).or_default().push((a, b));
                }
            }
            let mut gens = Vec::new();
            for members in fibers.values() {
                let (a0, b0) = members[0];
                for &(a, b) in &members[1..] {
                    let p = Monomial::var(nv, a0).mul(&Monomial::var(nv, b0));
                    let q = Monomial::var(nv, a).mul(&Monomial::var(nv, b));
                    gens.push(Polynomial::from_terms(&ring, vec![(p, 1), (q, field.neg(1))]));
                }
            }
            let ideal = Ideal::new(&ring, gens)?;
            let points = vec![smooth_point("e0", unit(nv, 0)), smooth_point("ones", vec![1; nv])];
            (ideal, points, vec!["variables are degree-d monomials in lex order".to_string()])
        }
        FixtureKind::Plucker24 => {
            let ring = Ring::standard(10, field);
            let pairs: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
            let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair");
            let mut gens = Vec::new();
            for i in 0..5 {
                for j in i + 1..5 {
                    for k in j + 1..5 {
                        for l in k + 1..5 {
                            let t = |a: usize, b: usize, c: usize, d: usize| {
                                Monomial::var(10, idx(a, b)).mul(&Monomial::var(10, idx(c, d)))
                            };
                            gens.push(Polynomial::from_terms(
                                &ring,
                                vec![(t(i, j, k, l), 1), (t(i, k, j, l), field.neg(1)), (t(i, l, j, k), 1)],
                            ));
                        }
                    }
                }
            }
            let ideal = Ideal::new(&ring, gens)?;
            let points = vec![
                smooth_point("p01", unit(10, idx(0, 1))),
                smooth_point("p13", unit(10, idx(1, 3))),
                smooth_point("p24", unit(10, idx(2, 4))),
            ];
            let order: Vec<String> = pairs.iter().map(|(i, j)| format!("p{i}{j}")).collect();
            (ideal, points, vec![format!("variables {}", order.join(" "))])
        }
        FixtureKind::TwoPlanesP4 => {
            let ring = Ring::standard(5, field);
            let gens = ["x0*x2", "x0*x3", "x1*x2", "x1*x3"]
                .iter()
                .map(|g| parse_polynomial(g, &ring))
                .collect::<Result<Vec<_>>>()?;
            let ideal = Ideal::new(&ring, gens)?;
            let points = vec![
                smooth_point("e0", unit(5, 0)),
                smooth_point("e2", unit(5, 2)),
                LabeledPoint { label: "vertex".into(), coords: unit(5, 4), smooth: Some(false) },
            ];
            (ideal, points, vec!["planes x0=x1=0 and x2=x3=0 meeting at the vertex".to_string()])
        }
    };
    let mut all = meta;
    all.append(&mut notes);
    Ok(IdealDocument::from_ideal(&ideal, points, all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::tangent_at;
    use crate::hilbert::hilbert;
    use crate::linalg::rank;
    use proptest::prelude::*;

    #[test]
    fn rnc3_minors() {
        let doc = gen_variety(&FixtureKind::Rnc(3)).unwrap();
        let i = doc.ideal().unwrap();
        let r = i.ring();
        let expected = Ideal::new(
            r,
            ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"].iter().map(|g| parse_polynomial(g, r).unwrap()).collect(),
        )
        .unwrap();
        assert!(i.same_ideal(&expected).unwrap());
        let f = i.field();
        for t in [2u32, 7, 100] {
            let p: Vec<u32> = (0..4).map(|k| f.pow(t, k)).collect();
            assert!(i.generators().iter().all(|g| g.evaluate(&p) == 0));
        }
    }

    #[test]
    fn plucker_shape() {
        let doc = gen_variety(&FixtureKind::Plucker24).unwrap();
        let i = doc.ideal().unwrap();
        assert_eq!(i.generators().len(), 5);
        let h = hilbert(&i, 2).unwrap();
        assert_eq!((h.degree, h.codim), (5, 3));
        // the quadrics span the whole degree-2 kernel of the minor map
        assert_eq!(h.hilbert_function[2], 50);
    }

    #[test]
    fn plucker_vanishes_on_minors() {
        let doc = gen_variety(&FixtureKind::Plucker24).unwrap();
        let i = doc.ideal().unwrap();
        let f = i.field();
        let a = [[3u32, 1, 4, 1, 5], [9, 2, 6, 5, 3]];
        let p: Vec<u32> = (0..5)
            .flat_map(|x| (x + 1..5).map(move |y| (x, y)))
            .map(|(x, y)| f.sub(f.mul(a[0][x], a[1][y]), f.mul(a[0][y], a[1][x])))
            .collect();
        assert!(i.generators().iter().all(|g| g.evaluate(&p) == 0));
    }

    #[test]
    fn veronese_quadric_counts() {
        for (n, d, q) in [(2u32, 3u32, 27usize), (3, 2, 20), (1, 3, 3)] {
            let i = gen_variety(&FixtureKind::Veronese(n, d)).unwrap().ideal().unwrap();
            let rows: Vec<_> = i.generators().iter().map(|g| g.terms().to_vec()).collect();
            let m = Monomial::all_of_degree(i.ring().nvars(), 2);
            let idx: std::collections::HashMap<_, _> = m.iter().enumerate().map(|(k, m)| (*m, k as u32)).collect();
            let vecs: Vec<_> = rows
                .iter()
                .map(|t| {
                    let mut v: Vec<(u32, u32)> = t.iter().map(|(m, c)| (idx[m], *c)).collect();
                    v.sort();
                    v
                })
                .collect();
            assert_eq!(rank(i.field(), m.len(), vecs), q, "v{d}(P^{n})");
        }
    }

    #[test]
    fn veronese_too_large() {
        assert!(matches!(gen_variety(&FixtureKind::Veronese(3, 4)), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn labeled_points_are_honest() {
        for k in ["rnc:4", "scroll:1,2", "segre:1,2", "veronese:2,2", "plucker24", "two_planes_p4"] {
            let doc = gen_variety(&k.parse().unwrap()).unwrap();
            let i = doc.ideal().unwrap();
            assert!(doc.points.iter().any(|p| p.smooth == Some(true)));
            for p in &doc.points {
                let t = tangent_at(&i, &p.coords).unwrap();
                assert_eq!(Some(t.smooth), p.smooth, "{k} {}", p.label);
            }
        }
    }

    #[test]
    fn fixture_names_round_trip() {
        for k in ["rnc:6", "scroll:2,3", "veronese:2,3", "segre:2,4", "plucker24", "two_planes_p4"] {
            assert_eq!(k.parse::<FixtureKind>().unwrap().to_string(), k);
        }
        assert!("rnc".parse::<FixtureKind>().is_err());
        assert!("cubic:3".parse::<FixtureKind>().is_err());
    }

    #[test]
    fn document_text_and_json() {
        let doc = gen_variety(&FixtureKind::TwoPlanesP4).unwrap();
        let text = doc.to_text();
        assert!(text.contains("point vertex singular: 0 0 0 0 1"));
        assert_eq!(IdealDocument::parse_text(&text).unwrap(), doc);
        let json = serde_json::to_string(&doc.to_json()).unwrap();
        assert_eq!(IdealDocument::parse_any(&json).unwrap(), doc);
    }

    #[test]
    fn document_errors() {
        let e = IdealDocument::parse_text("char: 7\nvars: x y\nbogus: 1\n").unwrap_err();
        assert!(matches!(e, Error::Document { line: 3, .. }));
        assert!(IdealDocument::parse_text("vars: x\ngens:\nx\n").is_err());
        assert!(IdealDocument::parse_text("char: 7\nvars: x\ngens:\nz\n").is_err());
        assert!(IdealDocument::parse_text("char: 7\nvars: x y\npoint p: 1\ngens:\n").is_err());
    }

    fn arb_document() -> impl Strategy<Value = IdealDocument> {
        (1usize..5, proptest::collection::vec(proptest::collection::vec((0u32..3, 0u32..3, 1u32..50), 1..4), 0..4))
            .prop_flat_map(|(n, polys)| {
                let pts = proptest::collection::vec((proptest::collection::vec(0u32..100, n), 0u8..3), 0..3);
                let meta = proptest::collection::vec("[a-z0-9 ]{0,12}", 0..3);
                (Just(n), Just(polys), pts, meta)
            })
            .prop_map(|(n, polys, pts, meta)| {
                let ring = Ring::standard(n, PrimeField::new(101).unwrap());
                let gens = polys
                    .iter()
                    .map(|terms| {
                        let t = terms
                            .iter()
                            .map(|&(a, b, c)| {
                                let mut e = vec![0; n];
                                e[0] = a;
                                e[n - 1] += b;
                                (Monomial::from_exponents(&e).unwrap(), c)
                            })
                            .collect();
                        Polynomial::from_terms(&ring, t).to_string()
                    })
                    .collect();
                let points = pts
                    .into_iter()
                    .enumerate()
                    .map(|(k, (coords, s))| LabeledPoint {
                        label: format!("q{k}"),
                        coords,
                        smooth: [None, Some(true), Some(false)][s as usize],
                    })
                    .collect();
                let meta = meta.into_iter().map(|m| m.trim().to_string()).collect();
                IdealDocument { char: 101, vars: ring.names().to_vec(), gens, points, meta }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn document_round_trip(doc in arb_document()) {
            prop_assert_eq!(IdealDocument::parse_text(&doc.to_text()).unwrap(), doc.clone());
            let json = serde_json::to_string(&doc.to_json()).unwrap();
            prop_assert_eq!(IdealDocument::from_json(&json).unwrap(), doc);
        }
    }
}
