//! End-to-end checks over the fixture corpus.

use std::collections::{BTreeMap, HashSet};
use std::sync::{mpsc, Arc};
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::corpus::{gen_variety_with, FixtureKind, IdealDocument, LabeledPoint};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::geometry::{classify, hoa_betti, lb_quadrics, resolve, successive_project, transform, Centers, Verdict};
use crate::groebner::{eliminate, Ideal};
use crate::hilbert::hilbert;
use crate::linear_change::LinearChange;
use crate::module::{GradedModuleSpec, ModuleKind, Structure};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_polynomial;
use crate::pei::{max_d0, projected_ideal_spec, subquotient_spec};
use crate::poly::{Polynomial, Ring};
use crate::tor::{betti_window, check_n2p, mapping_cone_identity, pd_depth, tor_inclusion_map, tor_x0_map, TorEngine};

pub const CHECK_NAMES: [&str; 11] = [
    "example-3.3",
    "g24-chain",
    "rnc-chain",
    "lb-veronese",
    "nonacm-depth",
    "mapping-cone",
    "thm21b-flags",
    "embedded-syzygies",
    "pei-shape",
    "segre-strand",
    "property-suite",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    pub summary: String,
    pub details: Value,
    /// Set when the check stopped on a computation budget.
    pub budget_exceeded: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            out.push_str(&format!("{tag} {}: {}\n", c.name, c.summary));
        }
        out.push_str(&format!("{} passed, {} failed, {} skipped\n", self.passed, self.failed, self.skipped));
        out
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub characteristic: u32,
    /// Wall-clock budget of the Segre strand; exceeding it skips the check.
    pub segre_budget: Duration,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { characteristic: crate::field::DEFAULT_CHAR, segre_budget: Duration::from_secs(600), seed: 20 }
    }
}

/// Outcome of one check body: pass flag, summary and details.
type Outcome = (bool, String, Value);

pub fn verify_suite(selection: &[String], config: &VerifyConfig) -> Result<SuiteReport> {
    let names: Vec<String> = if selection.is_empty() || selection.iter().any(|s| s == "all") {
        CHECK_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        for s in selection {
            if !CHECK_NAMES.contains(&s.as_str()) {
                return Err(Error::UnknownCheck(s.clone()));
            }
        }
        let wanted: HashSet<&String> = selection.iter().collect();
        CHECK_NAMES.iter().map(|s| s.to_string()).filter(|s| wanted.contains(s)).collect()
    };
    let mut checks = Vec::new();
    for name in names {
        checks.push(run_check(&name, config)?);
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Ok(SuiteReport { passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skipped), checks })
}

pub fn run_check(name: &str, config: &VerifyConfig) -> Result<CheckReport> {
    let field = PrimeField::new(config.characteristic)?;
    if name == "segre-strand" {
        return Ok(segre_with_budget(field, config.segre_budget));
    }
    let body: fn(PrimeField, &VerifyConfig) -> Result<Outcome> = match name {
        "example-3.3" => |f, _| example_3_3(f),
        "g24-chain" => |f, _| g24_chain(f),
        "rnc-chain" => |f, _| rnc_chain(f),
        "lb-veronese" => |f, _| lb_veronese(f),
        "nonacm-depth" => |f, _| nonacm_depth(f),
        "mapping-cone" => |f, _| mapping_cone(f),
        "thm21b-flags" => |f, _| thm21b_flags(f),
        "embedded-syzygies" => |f, _| embedded_syzygies(f),
        "pei-shape" => |f, _| pei_shape(f),
        "property-suite" => property_suite,
        _ => return Err(Error::UnknownCheck(name.into())),
    };
    Ok(finish(name, body(field, config)))
}

fn finish(name: &str, r: Result<Outcome>) -> CheckReport {
    match r {
        Ok((ok, summary, details)) => CheckReport {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            summary,
            details,
            budget_exceeded: false,
        },
        Err(e) => CheckReport {
            name: name.into(),
            status: Status::Fail,
            summary: format!("error: {e}"),
            details: Value::Null,
            budget_exceeded: matches!(e, Error::BudgetExceeded(_)),
        },
    }
}

fn fixture(kind: FixtureKind, field: PrimeField) -> Result<(IdealDocument, Ideal)> {
    let doc = gen_variety_with(&kind, field)?;
    let ideal = doc.ideal()?;
    Ok((doc, ideal))
}

fn point(doc: &IdealDocument, label: &str) -> Result<Vec<u32>> {
    doc.point(label)
        .map(|p| p.coords.clone())
        .ok_or_else(|| Error::InvalidParameter(format!("fixture has no point `{label}`")))
}

fn ideal_from(ring: &Arc<Ring>, gens: &[&str]) -> Result<Ideal> {
    Ideal::new(ring, gens.iter().map(|g| parse_polynomial(g, ring)).collect::<Result<Vec<_>>>()?)
}

fn example_3_3(field: PrimeField) -> Result<Outcome> {
    let ring = Ring::standard(4, field);
    let i = ideal_from(&ring, &["x0*x2 - x1^2", "x0*x1 - x1*x3 - x2^2", "x0^2 - x0*x3 - x1*x2"])?;
    let k = eliminate(&i, 1)?;
    let expected = ideal_from(k.ring(), &["x1^3 - x1*x2*x3 - x2^3"])?;
    let gens: Vec<String> = k.generators().iter().map(|g| g.to_string()).collect();
    let ok = k.generators().len() == 1 && k.same_ideal(&expected)?;
    Ok((ok, format!("eliminated ideal ({})", gens.join(", ")), json!({ "generators": gens })))
}

fn g24_chain(field: PrimeField) -> Result<Outcome> {
    let (doc, i) = fixture(FixtureKind::Plucker24, field)?;
    let res = resolve(&i)?;
    let mut window_ok = true;
    for a in 0..=4 {
        for j in 0..=4 {
            let want = match (a, j) {
                (0, 2) | (1, 2) => 5,
                (2, 3) => 1,
                _ => 0,
            };
            window_ok &= res.ideal.get(a, j) == want;
        }
    }
    let level = check_n2p(&res.ideal)?;
    let pdd = pd_depth(&res.quotient, 10)?;
    let chain = successive_project(&i, &Centers::Auto(vec![point(&doc, "p01")?, point(&doc, "p13")?]), 2, false)?;
    let (r0, r1) = (&chain.reports[0], &chain.reports[1]);
    let last = &chain.ideals[2];
    let single_quadric = last.generators().len() == 1 && last.generators()[0].degree() == Some(2);
    let step0 = r0.smooth
        && r0.beta02_before == 5
        && r0.tangent_dim == 6
        && r0.beta02_after == 2
        && r0.quadric_identity_ok
        && r0.pd_before == 3
        && r0.pd_after == 2
        && r0.depth_before == 7
        && r0.depth_after == 7;
    let step1 = single_quadric && r1.beta02_after == 1 && r1.quadric_identity_ok;
    let ok = window_ok && level == 2 && pdd.pd == 3 && step0 && step1;
    Ok((
        ok,
        format!(
            "table 5,5;1, N_(2,{level}), pd {}; projection: beta02 {} = 5 - 9 + {}, pd {}, depth {}; second step: {} generator(s), beta02 {}",
            pdd.pd,
            r0.beta02_after,
            r0.tangent_dim,
            r0.pd_after,
            r0.depth_after,
            last.generators().len(),
            r1.beta02_after
        ),
        json!({
            "betti": res.ideal.to_string(),
            "n2p": level,
            "pd": pdd.pd,
            "depth": pdd.depth,
            "reports": chain.reports,
            "final_generators": last.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
    ))
}

/// The same polynomial over a ring with as many variables.
fn rebase(p: &Polynomial, ring: &Arc<Ring>) -> Polynomial {
    Polynomial::from_terms(ring, p.terms().to_vec())
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rnc_chain(field: PrimeField) -> Result<Outcome> {
    let (_, i) = fixture(FixtureKind::Rnc(6), field)?;
    let centers: Vec<Vec<u32>> = (0..3).map(|k| { let mut v = vec![0; 7 - k]; v[0] = 1; v }).collect();
    let chain = successive_project(&i, &Centers::Explicit(centers), 3, true)?;
    let mut ok = chain.delta_constant && chain.quadric_recursion_ok;
    let mut stages = Vec::new();
    for (k, stage) in chain.ideals.iter().enumerate() {
        let d = 6 - k as u64;
        let (_, standard) = fixture(FixtureKind::Rnc(d as u32), field)?;
        let renamed = Ideal::new(stage.ring(), standard.generators().iter().map(|g| rebase(g, stage.ring())).collect())?;
        let same = stage.same_ideal(&renamed)?;
        let c = classify(stage)?;
        let res = resolve(stage)?;
        let beta = res.ideal.get(0, 2);
        let stage_ok = same
            && beta == binom(d, 2)
            && c.n2p_level as u64 == d - 1
            && c.delta == 1
            && c.verdict == Verdict::MinimalDegree;
        ok &= stage_ok;
        stages.push(json!({ "d": d, "is_rnc": same, "beta02": beta, "n2p": c.n2p_level, "delta": c.delta, "verdict": c.verdict }));
    }
    let betas: Vec<String> = stages.iter().map(|s| s["beta02"].to_string()).collect();
    Ok((ok, format!("beta02 {} along rnc(6) -> rnc(3)", betas.join(", ")), json!({ "stages": stages })))
}

/// `dim` of the degree-2 kernel of the Veronese monomial map.
fn veronese_beta02(n: usize, d: u32) -> u64 {
    let monos: Vec<Monomial> = Monomial::all_of_degree(n + 1, d);
    let mut images = HashSet::new();
    let mut pairs = 0u64;
    for a in 0..monos.len() {
        for b in a..monos.len() {
            images.insert(monos[a].mul(&monos[b]));
            pairs += 1;
        }
    }
    pairs - images.len() as u64
}

fn lb_veronese(field: PrimeField) -> Result<Outcome> {
    let mut ok = true;
    let mut rows = Vec::new();
    for (n, d) in [(2u32, 3u32), (3, 2)] {
        let beta = veronese_beta02(n as usize, d);
        let (_, i) = fixture(FixtureKind::Veronese(n, d), field)?;
        let nvars = i.ring().nvars() as u64;
        let e = nvars - 1 - n as u64;
        let lb = lb_quadrics(e, e)?;
        let gens_match = i.generators().len() as u64 == beta;
        ok &= beta < lb && gens_match;
        rows.push(json!({ "n": n, "d": d, "beta02": beta, "e": e, "lb": lb, "fails_n2e": beta < lb }));
    }
    let s = format!(
        "v3(P^2): {} < {}; v2(P^3): {} < {}",
        rows[0]["beta02"], rows[0]["lb"], rows[1]["beta02"], rows[1]["lb"]
    );
    Ok((ok, s, json!({ "cases": rows })))
}

fn nonacm_depth(field: PrimeField) -> Result<Outcome> {
    let (doc, i) = fixture(FixtureKind::TwoPlanesP4, field)?;
    let res = resolve(&i)?;
    let pdd = pd_depth(&res.quotient, 5)?;
    let h = hilbert(&i, 0)?;
    let chain = successive_project(&i, &Centers::Explicit(vec![point(&doc, "e0")?]), 1, true)?;
    let r = &chain.reports[0];
    let ok = pdd.pd == 3
        && pdd.depth == 2
        && pdd.krull_dim == 3
        && !pdd.is_acm
        && r.pd_after == 2
        && r.depth_after == 2
        && r.depth_identity_ok == Some(true);
    Ok((
        ok,
        format!(
            "pd {}, depth {}, dim {}, ACM {}; after projection pd {}, depth {}",
            pdd.pd, pdd.depth, pdd.krull_dim, pdd.is_acm, r.pd_after, r.depth_after
        ),
        json!({ "pd": pdd.pd, "depth": pdd.depth, "krull_dim": pdd.krull_dim, "delta": h.delta, "report": r }),
    ))
}

fn mapping_cone(field: PrimeField) -> Result<Outcome> {
    let mut ok = true;
    let mut per = BTreeMap::new();
    for kind in [FixtureKind::Rnc(4), FixtureKind::Plucker24, FixtureKind::TwoPlanesP4] {
        let (_, i) = fixture(kind.clone(), field)?;
        for (label, quotient) in [("quotient", true), ("ideal", false)] {
            let mk = |s| if quotient { GradedModuleSpec::quotient(&i, s) } else { GradedModuleSpec::ideal(&i, s) };
            let r = TorEngine::new(Arc::new(mk(Structure::OverR)?));
            let s = TorEngine::new(Arc::new(mk(Structure::OverS)?));
            let mut slots = 0;
            let mut failures = Vec::new();
            for a in 0..=5 {
                for j in 0..=5 {
                    let v = mapping_cone_identity(&r, &s, a, j)?;
                    slots += 1;
                    if !v.holds {
                        failures.push(v);
                    }
                }
            }
            ok &= failures.is_empty();
            per.insert(format!("{kind} {label}"), json!({ "slots": slots, "failures": failures }));
        }
    }
    let s = format!("{} module specs, 36 slots each", per.len());
    Ok((ok, s, json!(per)))
}

fn thm21b_flags(field: PrimeField) -> Result<Outcome> {
    let (_, i) = fixture(FixtureKind::Rnc(4), field)?;
    let e = TorEngine::new(Arc::new(GradedModuleSpec::ideal(&i, Structure::OverS)?));
    let mut ok = true;
    let mut maps = Vec::new();
    for a in 0..=2 {
        for j in 2..=4 {
            let m = tor_x0_map(&e, a, j)?;
            let want = if a <= 1 && j >= 3 { m.isomorphism } else { m.surjective };
            ok &= want;
            maps.push(m);
        }
    }
    Ok((ok, "x0 surjective at j = 2, isomorphisms at j = 3, 4 for i <= 1, surjective for i = 2".into(), json!({ "maps": maps })))
}

fn embedded_syzygies(field: PrimeField) -> Result<Outcome> {
    let mut ok = true;
    let mut cases = Vec::new();
    for (kind, p) in [(FixtureKind::Plucker24, 2usize), (FixtureKind::Rnc(5), 4)] {
        let (_, i) = fixture(kind.clone(), field)?;
        let (iq, src_spec) = projected_ideal_spec(&i)?;
        let src = TorEngine::new(src_spec);
        let dst = TorEngine::new(Arc::new(GradedModuleSpec::ideal(&i, Structure::OverR)?));
        let mut maps = Vec::new();
        for a in 0..=p - 2 {
            for j in 2..=3 {
                let m = tor_inclusion_map(&src, &dst, a, j)?;
                ok &= m.injective;
                maps.push(m);
            }
        }
        let level = check_n2p(&resolve(&iq)?.ideal)?;
        ok &= level + 1 >= p;
        cases.push(json!({ "fixture": kind.to_string(), "p": p, "projected_n2p": level, "maps": maps }));
    }
    Ok((ok, "inclusion maps injective for i <= p - 2; projected level >= p - 1".into(), json!({ "cases": cases })))
}

fn pei_shape(field: PrimeField) -> Result<Outcome> {
    let conic = ideal_from(&Ring::standard(3, field), &["x0*x2 - x1^2"])?;
    let (_, quartic) = fixture(FixtureKind::Rnc(4), field)?;
    let mut ok = true;
    let mut cases = Vec::new();
    for (name, i, e) in [("conic", conic, 1u64), ("rnc:4", quartic, 3)] {
        let eng = TorEngine::new(Arc::new(subquotient_spec(ModuleKind::Subquotient, &i, Structure::OverS)?));
        let mut shape_ok = true;
        for a in 0..=e as usize {
            for j in 2..=6 {
                shape_ok &= eng.betti(a, j) as u64 == binom(e, a as u64 + 1);
            }
        }
        let top = max_d0(&i)?;
        let mut dims_ok = true;
        for step in 1..=top.max(1) {
            let cur = subquotient_spec(ModuleKind::FiltrationStep(step), &i, Structure::OverS)?;
            let prev = subquotient_spec(ModuleKind::FiltrationStep(step - 1), &i, Structure::OverS)?;
            let k = subquotient_spec(ModuleKind::ShiftedIdeal(step), &i, Structure::OverS)?;
            for m in 0..=8 {
                dims_ok &= cur.dim(m) == prev.dim(m) + k.dim(m);
            }
        }
        ok &= shape_ok && dims_ok;
        cases.push(json!({ "fixture": name, "e": e, "betti_shape": shape_ok, "dimension_identity": dims_ok }));
    }
    Ok((ok, "beta(I/I') = C(e, i+1) for 2 <= j <= 6; filtration dimensions add up to m = 8".into(), json!({ "cases": cases })))
}

fn segre_strand(field: PrimeField) -> Result<Outcome> {
    let (_, i) = fixture(FixtureKind::Segre(2, 4), field)?;
    let e = TorEngine::new(Arc::new(GradedModuleSpec::ideal(&i, Structure::OverR)?));
    let strand: Vec<usize> = (0..=2).map(|a| e.betti(a, 2)).collect();
    let ok = i.generators().len() == 30 && strand == [30, 120, 210];
    Ok((ok, format!("quadric strand {strand:?}"), json!({ "strand": strand })))
}

fn segre_with_budget(field: PrimeField, budget: Duration) -> CheckReport {
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(segre_strand(field));
    });
    match rx.recv_timeout(budget) {
        Ok(r) => finish("segre-strand", r),
        Err(_) => CheckReport {
            name: "segre-strand".into(),
            status: Status::Skipped,
            summary: format!("warning: skipped, exceeded the {} s budget", budget.as_secs()),
            details: Value::Null,
            budget_exceeded: true,
        },
    }
}

fn random_poly(ring: &Arc<Ring>, deg: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let f = ring.field();
    let all = Monomial::all_of_degree(ring.nvars(), deg);
    let terms = (0..4).map(|_| (all[rng.gen_range(0..all.len())], rng.gen_range(1..f.characteristic()))).collect();
    Polynomial::from_terms(ring, terms)
}

fn random_document(rng: &mut ChaCha8Rng) -> IdealDocument {
    let n = rng.gen_range(1..5);
    let ring = Ring::standard(n, PrimeField::new(101).expect("prime"));
    let gens = (0..rng.gen_range(0..4)).map(|_| random_poly(&ring, rng.gen_range(0..3), rng).to_string()).collect();
    let points = (0..rng.gen_range(0..3))
        .map(|k| LabeledPoint {
            label: format!("q{k}"),
            coords: (0..n).map(|_| rng.gen_range(0..101)).collect(),
            smooth: [None, Some(true), Some(false)][rng.gen_range(0..3)],
        })
        .collect();
    let meta = (0..rng.gen_range(0..3)).map(|k| format!("note {k} {}", rng.gen_range(0..1000))).collect();
    IdealDocument { char: 101, vars: ring.names().to_vec(), gens, points, meta }
}

fn property_suite(field: PrimeField, config: &VerifyConfig) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let conic = ideal_from(&Ring::standard(3, field), &["x0*x2 - x1^2"])?;
    let ex33 = ideal_from(&Ring::standard(4, field), &["x0*x2 - x1^2", "x0*x1 - x1*x3 - x2^2", "x0^2 - x0*x3 - x1*x2"])?;
    let mut fixtures: Vec<(String, Ideal, (usize, i64))> = vec![("conic".into(), conic, (3, 2)), ("example".into(), ex33, (4, 3))];
    for (kind, window) in [
        (FixtureKind::Rnc(4), (3, 2)),
        (FixtureKind::TwoPlanesP4, (4, 2)),
        (FixtureKind::Plucker24, (3, 2)),
        (FixtureKind::Veronese(2, 2), (2, 1)),
    ] {
        let (_, i) = fixture(kind.clone(), field)?;
        fixtures.push((kind.to_string(), i, window));
    }
    let mut gb_ok = true;
    let mut nf_ok = true;
    let mut hf_ok = true;
    let mut betti_ok = true;
    for (_, i, window) in &fixtures {
        for order in [MonomialOrder::GrevLex, MonomialOrder::BLOCK_X0] {
            let gb = i.groebner(order)?;
            gb_ok &= gb.s_pairs_reduce_to_zero() && gb.is_reduced();
        }
        let gb = i.groebner(MonomialOrder::GrevLex)?;
        for _ in 0..5 {
            let f = random_poly(i.ring(), rng.gen_range(1..5), &mut rng);
            let r = gb.normal_form(&f)?;
            nf_ok &= gb.normal_form(&r)? == r && i.contains(&f.sub(&r))?;
        }
        let h = hilbert(i, 6)?;
        for d in 0..=6u32 {
            let count = Monomial::all_of_degree(i.ring().nvars(), d).iter().filter(|m| gb.is_standard(m)).count() as u64;
            hf_ok &= h.hilbert_function[d as usize] == count;
        }
        let base = betti_window(&TorEngine::new(Arc::new(GradedModuleSpec::quotient(i, Structure::OverR)?)), window.0, window.1);
        for _ in 0..5 {
            let change = LinearChange::random(field, i.ring().nvars(), &mut rng);
            let moved = transform(i, &change)?;
            let t = betti_window(
                &TorEngine::new(Arc::new(GradedModuleSpec::quotient(&moved, Structure::OverR)?)),
                window.0,
                window.1,
            );
            betti_ok &= t.entries == base.entries;
        }
    }
    let mut serial_ok = true;
    for kind in ["rnc:3", "scroll:1,2", "segre:1,2", "veronese:2,2", "plucker24", "two_planes_p4"] {
        let doc = gen_variety_with(&kind.parse()?, field)?;
        serial_ok &= IdealDocument::parse_text(&doc.to_text())? == doc;
        serial_ok &= IdealDocument::from_json(&doc.to_json().to_string())? == doc;
    }
    for _ in 0..100 {
        let doc = random_document(&mut rng);
        serial_ok &= IdealDocument::parse_text(&doc.to_text())? == doc;
        serial_ok &= IdealDocument::from_json(&doc.to_json().to_string())? == doc;
    }
    let hoa_ok = hoa_betti(3, 0)? == 5 && hoa_betti(3, 1)? == 5;
    let ok = gb_ok && nf_ok && hf_ok && betti_ok && serial_ok && hoa_ok;
    let flags = json!({
        "s_pairs": gb_ok,
        "normal_form": nf_ok,
        "hilbert_function": hf_ok,
        "betti_invariance": betti_ok,
        "serialization": serial_ok,
        "fixtures": fixtures.iter().map(|f| f.0.clone()).collect::<Vec<_>>(),
    });
    let summary = format!(
        "s-pairs {gb_ok}, normal forms {nf_ok}, Hilbert function {hf_ok}, Betti invariance {betti_ok}, round trips {serial_ok}"
    );
    Ok((ok, summary, flags))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> VerifyConfig {
        VerifyConfig::default()
    }

    #[test]
    fn unknown_check_is_rejected() {
        assert!(matches!(verify_suite(&["nope".into()], &cfg()), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn selection_keeps_canonical_order() {
        let r = verify_suite(&["nonacm-depth".into(), "example-3.3".into()], &cfg()).unwrap();
        let names: Vec<_> = r.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["example-3.3", "nonacm-depth"]);
        assert!(r.all_passed(), "{}", r.render());
    }

    #[test]
    fn veronese_kernel_counts() {
        assert_eq!(veronese_beta02(2, 3), 27);
        assert_eq!(veronese_beta02(3, 2), 20);
        assert_eq!(veronese_beta02(1, 2), 1);
    }
}
