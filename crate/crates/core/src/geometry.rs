//! Tangent spaces, coordinate moves, inner projections and the numeric
//! laws attached to them.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{eliminate, Ideal};
use crate::hilbert::hilbert;
use crate::linalg::{rank, SparseVec};
use crate::linear_change::LinearChange;
use crate::module::{GradedModuleSpec, Structure};
use crate::tor::{betti_auto, check_n2p, pd_depth, BettiTable, TorEngine};

/// Largest `j` tried when certifying a Betti table.
pub const J_CAP: i64 = 12;

#[derive(Clone, Debug)]
pub struct PointedIdeal {
    pub ideal: Ideal,
    pub point: Vec<u32>,
}

impl PointedIdeal {
    pub fn new(ideal: Ideal, point: Vec<u32>) -> Result<Self> {
        if point.len() != ideal.ring().nvars() {
            return Err(Error::InvalidParameter(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                ideal.ring().nvars()
            )));
        }
        let f = ideal.field();
        let point: Vec<u32> = point.into_iter().map(|c| c % f.characteristic()).collect();
        if point.iter().all(|&c| c == 0) {
            return Err(Error::ZeroPoint);
        }
        Ok(PointedIdeal { ideal, point })
    }

    pub fn is_moved(&self) -> bool {
        self.point[0] == 1 && self.point[1..].iter().all(|&c| c == 0)
    }

    pub fn on_variety(&self) -> bool {
        self.ideal.generators().iter().all(|g| g.evaluate(&self.point) == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TangentInfo {
    pub jacobian_rank: usize,
    pub tangent_dim: usize,
    pub smooth: bool,
}

/// Jacobian rank of the generators at `q`; `tangent_dim = N - rank`.
pub fn tangent_at(ideal: &Ideal, q: &[u32]) -> Result<TangentInfo> {
    let pi = PointedIdeal::new(ideal.clone(), q.to_vec())?;
    if !pi.on_variety() {
        return Err(Error::NotOnVariety(format!("{q:?}")));
    }
    let n = ideal.ring().nvars();
    let rows: Vec<SparseVec> = ideal
        .generators()
        .iter()
        .map(|g| (0..n).filter_map(|v| Some((v as u32, g.derivative(v).evaluate(&pi.point))).filter(|t| t.1 != 0)).collect())
        .collect();
    let r = rank(ideal.field(), n, rows);
    let codim = hilbert(ideal, 0)?.codim;
    Ok(TangentInfo { jacobian_rank: r, tangent_dim: n - 1 - r, smooth: r as i64 == codim })
}

/// Moves the point to `(1:0:...:0)`. The change sends `e0` to the point
/// scaled so that its first nonzero coordinate is 1.
pub fn move_point(pi: &PointedIdeal) -> Result<(PointedIdeal, LinearChange)> {
    let f = pi.ideal.field();
    let n = pi.point.len();
    let r = pi.point.iter().position(|&c| c != 0).ok_or(Error::ZeroPoint)?;
    let s = f.inv(pi.point[r]);
    let mut m = vec![vec![0u32; n]; n];
    for k in 0..n {
        m[k][0] = f.mul(pi.point[k], s);
    }
    for c in 1..n {
        if c == r {
            m[0][c] = 1;
        } else {
            m[c][c] = 1;
        }
    }
    let change = LinearChange::new(f, m)?;
    let ideal = transform(&pi.ideal, &change)?;
    let mut point = vec![0; n];
    point[0] = 1;
    Ok((PointedIdeal { ideal, point }, change))
}

/// `I` with every generator replaced by `f(Bx)`.
pub fn transform(ideal: &Ideal, change: &LinearChange) -> Result<Ideal> {
    let gens = ideal.generators().iter().map(|g| change.substitute(g)).collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)
}

/// Betti tables of `R/I` and of `I` over `R`, certified complete.
#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub quotient: BettiTable,
    pub ideal: BettiTable,
}

pub fn resolve(ideal: &Ideal) -> Result<Resolution> {
    let spec = GradedModuleSpec::quotient(ideal, Structure::OverR)?;
    let quotient = betti_auto(&TorEngine::new(Arc::new(spec)), J_CAP)?;
    let ideal = ideal_table(&quotient);
    Ok(Resolution { quotient, ideal })
}

/// `β_{i,j}(I) = β_{i+1,j-1}(R/I)`.
pub fn ideal_table(quotient: &BettiTable) -> BettiTable {
    let i_max = quotient.i_max.saturating_sub(1);
    let j_max = quotient.j_max + 1;
    let entries = (0..=i_max)
        .map(|i| (0..=j_max).map(|j| quotient.get(i + 1, j - 1)).collect())
        .collect();
    BettiTable {
        module_label: "I".into(),
        ring_roster: quotient.ring_roster.clone(),
        i_max,
        j_max,
        entries,
        truncated: quotient.truncated,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub tangent_dim: usize,
    pub smooth: bool,
    pub n_before: usize,
    pub n_after: usize,
    pub beta02_before: u64,
    pub beta02_after: u64,
    pub delta_before: i64,
    pub delta_after: i64,
    pub pd_before: usize,
    pub pd_after: usize,
    pub depth_before: usize,
    pub depth_after: usize,
    pub n2p_before: usize,
    pub n2p_after: usize,
    pub quadric_identity_ok: bool,
    /// `None` unless the ideal is quadratic and the center smooth.
    pub depth_identity_ok: Option<bool>,
    pub degenerate_image: bool,
}

/// Invariants of one side of a projection.
struct Side {
    beta02: u64,
    delta: i64,
    pd: usize,
    depth: usize,
    n2p: usize,
}

fn side(ideal: &Ideal) -> Result<Side> {
    let res = resolve(ideal)?;
    let pdd = pd_depth(&res.quotient, ideal.ring().nvars())?;
    Ok(Side {
        beta02: res.ideal.get(0, 2),
        delta: hilbert(ideal, 0)?.delta,
        pd: pdd.pd,
        depth: pdd.depth,
        n2p: check_n2p(&res.ideal)?,
    })
}

/// Inner projection from the marked point: moves it to `e0` and eliminates
/// `x0`.
pub fn inner_project(pi: &PointedIdeal) -> Result<(Ideal, ProjectionReport)> {
    if !pi.on_variety() {
        return Err(Error::NotOnVariety(
            "the center is not on the variety; use plain elimination for an outer projection".into(),
        ));
    }
    if pi.ideal.ring().nvars() < 2 {
        return Err(Error::InvalidParameter("nothing to project".into()));
    }
    let tangent = tangent_at(&pi.ideal, &pi.point)?;
    let moved = if pi.is_moved() { pi.clone() } else { move_point(pi)?.0 };
    let image = eliminate(&moved.ideal, 1)?;
    let before = side(&moved.ideal)?;
    let after = side(&image)?;
    let n_before = pi.ideal.ring().nvars() - 1;
    let quadric_identity_ok = after.beta02 as i64 == before.beta02 as i64 - n_before as i64 + tangent.tangent_dim as i64;
    let quadratic = pi.ideal.generators().iter().all(|g| g.degree() == Some(2));
    let depth_identity_ok = (quadratic && tangent.smooth)
        .then(|| after.pd + 1 == before.pd && after.depth == before.depth);
    let report = ProjectionReport {
        tangent_dim: tangent.tangent_dim,
        smooth: tangent.smooth,
        n_before,
        n_after: n_before - 1,
        beta02_before: before.beta02,
        beta02_after: after.beta02,
        delta_before: before.delta,
        delta_after: after.delta,
        pd_before: before.pd,
        pd_after: after.pd,
        depth_before: before.depth,
        depth_after: after.depth,
        n2p_before: before.n2p,
        n2p_after: after.n2p,
        quadric_identity_ok,
        depth_identity_ok,
        degenerate_image: image.is_zero(),
    };
    Ok((image, report))
}

/// Centers for a chain of projections.
#[derive(Clone, Debug)]
pub enum Centers {
    /// One point per step, each in the coordinates of the current image.
    Explicit(Vec<Vec<u32>>),
    /// Points of the original space, carried forward through each
    /// projection; step `t` uses the `t`-th seed.
    Auto(Vec<Vec<u32>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionChain {
    pub reports: Vec<ProjectionReport>,
    #[serde(skip)]
    pub ideals: Vec<Ideal>,
    pub delta_constant: bool,
    pub n2p_steps_ok: bool,
    pub quadric_recursion_ok: bool,
}

/// Projects `k` times. In strict mode a singular center is an error.
pub fn successive_project(ideal: &Ideal, centers: &Centers, k: usize, strict: bool) -> Result<ProjectionChain> {
    let pts = match centers {
        Centers::Explicit(p) | Centers::Auto(p) => p,
    };
    if pts.len() < k {
        return Err(Error::InvalidParameter(format!("{k} steps need {k} centers, got {}", pts.len())));
    }
    let mut seeds: Vec<Vec<u32>> = pts.clone();
    let mut cur = ideal.clone();
    let mut reports: Vec<ProjectionReport> = Vec::new();
    let mut ideals = vec![cur.clone()];
    for step in 0..k {
        let pi = PointedIdeal::new(cur.clone(), seeds[step].clone())?;
        if strict && !tangent_at(&cur, &pi.point)?.smooth {
            return Err(Error::Precondition(format!("center of step {step} is singular")));
        }
        let (change, moved) = if pi.is_moved() {
            (None, pi.clone())
        } else {
            let (m, c) = move_point(&pi)?;
            (Some(c), m)
        };
        let (image, report) = inner_project(&moved)?;
        if matches!(centers, Centers::Auto(_)) {
            for s in seeds.iter_mut().skip(step + 1) {
                let moved = match &change {
                    Some(c) => c.move_point(s),
                    None => s.clone(),
                };
                *s = moved[1..].to_vec();
                if s.iter().all(|&c| c == 0) {
                    return Err(Error::Precondition(format!("a later seed coincides with the center of step {step}")));
                }
            }
        }
        cur = image;
        ideals.push(cur.clone());
        reports.push(report);
    }
    let smooth_steps = reports.iter().filter(|r| r.smooth);
    Ok(ProjectionChain {
        delta_constant: smooth_steps.clone().all(|r| r.delta_after == r.delta_before),
        n2p_steps_ok: reports.iter().all(|r| r.n2p_before == 0 || r.n2p_after + 1 >= r.n2p_before),
        quadric_recursion_ok: reports.iter().all(|r| r.quadric_identity_ok),
        reports,
        ideals,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    MinimalDegree,
    NextToMinimalDelPezzoClass,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub delta: i64,
    pub acm: bool,
    pub n2p_level: usize,
    pub codim: i64,
    pub verdict: Verdict,
    /// `(i, β_{i,2})` predicted for `0 <= i <= e - 2`.
    pub expected_betti_row: Option<Vec<(usize, i64)>>,
    pub expected_row_matches: Option<bool>,
    pub level_matches: bool,
    pub note: String,
}

/// Numeric classification by `δ`, depth and the `N_{2,p}` level.
pub fn classify(ideal: &Ideal) -> Result<ClassificationReport> {
    if ideal.generators().iter().any(|g| g.degree() == Some(1)) {
        return Err(Error::Degenerate("linear forms present; restrict to the smallest ambient space first".into()));
    }
    let h = hilbert(ideal, 0)?;
    let res = resolve(ideal)?;
    let pdd = pd_depth(&res.quotient, ideal.ring().nvars())?;
    let level = check_n2p(&res.ideal)?;
    let e = h.codim;
    let (verdict, level_matches) = match (h.delta, pdd.is_acm) {
        (1, _) => (Verdict::MinimalDegree, level as i64 == e),
        (2, true) => (Verdict::NextToMinimalDelPezzoClass, level as i64 == e - 1),
        _ => (Verdict::Other, true),
    };
    let mut expected = None;
    let mut matches = None;
    if verdict == Verdict::NextToMinimalDelPezzoClass && e >= 2 {
        let row: Vec<(usize, i64)> =
            (0..=(e - 2) as usize).map(|i| hoa_betti(e as u64, i as u64).map(|b| (i, b))).collect::<Result<_>>()?;
        matches = Some(row.iter().all(|&(i, b)| res.ideal.get(i, 2) as i64 == b));
        expected = Some(row);
    }
    Ok(ClassificationReport {
        delta: h.delta,
        acm: pdd.is_acm,
        n2p_level: level,
        codim: e,
        verdict,
        expected_betti_row: expected,
        expected_row_matches: matches,
        level_matches,
        note: "verdict uses numeric invariants only; irreducibility is not checked".into(),
    })
}

pub fn lb_quadrics(e: u64, p: u64) -> Result<u64> {
    if p < 1 || p > e {
        return Err(Error::InvalidParameter(format!("need 1 <= p <= e, got p = {p}, e = {e}")));
    }
    Ok(e * p - p * (p - 1) / 2)
}

fn binom(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(r)
}

/// `C(d + 2 - p, 2) <= C(2e + 3 - 2p, e + 1 - p)`.
pub fn degree_bound_check(e: u64, p: u64, d: u64) -> Result<bool> {
    if p < 2 || e < p {
        return Err(Error::InvalidParameter(format!("need 2 <= p <= e, got p = {p}, e = {e}")));
    }
    let lhs = binom((d + 2).saturating_sub(p), 2);
    let rhs = binom(2 * e + 3 - 2 * p, e + 1 - p);
    match (lhs, rhs) {
        (Some(l), Some(r)) => Ok(l <= r),
        (None, Some(_)) => Ok(false),
        (_, None) => Err(Error::InvalidParameter("binomial overflow".into())),
    }
}

/// `(i + 1) C(e + 1, i + 2) - C(e, i)`.
pub fn hoa_betti(e: u64, i: u64) -> Result<i64> {
    if e < 2 || i > e - 2 {
        return Err(Error::InvalidParameter(format!("need 0 <= i <= e - 2, got i = {i}, e = {e}")));
    }
    let a = (i as u128 + 1) * binom(e + 1, i + 2).expect("small");
    Ok(a as i64 - binom(e, i).expect("small") as i64)
}
