//! Graded Betti numbers through Koszul homology, and maps induced on Tor.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::Ideal;
use crate::hilbert::hilbert_from_leads;
use crate::linalg::{normalize, rank_and_kernel, Echelon, SparseVec};
use crate::module::{GradedModuleSpec, ModuleKind, Structure};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

/// Basis of `∧^i W ⊗ M_j`, ordered mask-major, split into weight blocks.
pub struct ChainSpace {
    pub i: usize,
    pub j: i64,
    pub masks: Vec<u32>,
    mask_pos: HashMap<u32, u32>,
    pub piece_dim: usize,
    block_of: Vec<u32>,
    local: Vec<u32>,
    blocks: Vec<Vec<u32>>,
    block_keys: Vec<Vec<i64>>,
    block_by_key: HashMap<Vec<i64>, u32>,
}

impl ChainSpace {
    pub fn dim(&self) -> usize {
        self.masks.len() * self.piece_dim
    }

    pub fn index(&self, mask: u32, label: u32) -> Option<u32> {
        self.mask_pos.get(&mask).map(|&p| p * self.piece_dim as u32 + label)
    }

    pub fn element(&self, k: u32) -> (u32, u32) {
        let d = self.piece_dim as u32;
        (self.masks[(k / d) as usize], k % d)
    }
}

fn masks_of_size(m: usize, i: usize) -> Vec<u32> {
    if i > m {
        return Vec::new();
    }
    if i == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let mut x: u64 = (1u64 << i) - 1;
    let limit = 1u64 << m;
    while x < limit {
        out.push(x as u32);
        // next integer with the same popcount
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

/// Homology classes of one slot, as cycles over the global chain basis.
pub struct Homology {
    pub reps: Vec<SparseVec>,
}

/// Koszul-homology engine over one module spec, caching chain spaces,
/// differential ranks and homology bases.
pub struct TorEngine {
    spec: Arc<GradedModuleSpec>,
    chains: Mutex<HashMap<(usize, i64), Arc<ChainSpace>>>,
    ranks: Mutex<HashMap<(usize, i64), usize>>,
    homology: Mutex<HashMap<(usize, i64), Arc<Homology>>>,
    companion: OnceLock<Arc<TorEngine>>,
}

impl TorEngine {
    pub fn new(spec: Arc<GradedModuleSpec>) -> Self {
        TorEngine {
            spec,
            chains: Mutex::new(HashMap::new()),
            ranks: Mutex::new(HashMap::new()),
            homology: Mutex::new(HashMap::new()),
            companion: OnceLock::new(),
        }
    }

    pub fn spec(&self) -> &Arc<GradedModuleSpec> {
        &self.spec
    }

    fn field(&self) -> PrimeField {
        self.spec.field()
    }

    pub fn n_acting(&self) -> usize {
        self.spec.acting().len()
    }

    /// Engine of `I` over `S` on the same block basis, for a subquotient.
    fn companion(&self) -> Result<Arc<TorEngine>> {
        if self.spec.kind() != ModuleKind::Subquotient {
            return Err(Error::X0Unavailable(self.spec.label()));
        }
        if let Some(c) = self.companion.get() {
            return Ok(c.clone());
        }
        let spec = GradedModuleSpec::from_parts(
            ModuleKind::IdealModule,
            Structure::OverS,
            self.spec.groebner().clone(),
            0,
            self.spec.grading().clone(),
        )?;
        Ok(self.companion.get_or_init(|| Arc::new(TorEngine::new(Arc::new(spec)))).clone())
    }

    pub fn chain(&self, i: usize, j: i64) -> Arc<ChainSpace> {
        if let Some(c) = self.chains.lock().unwrap().get(&(i, j)) {
            return c.clone();
        }
        let piece = self.spec.piece(j);
        let masks = if piece.dim() == 0 { Vec::new() } else { masks_of_size(self.n_acting(), i) };
        let mask_pos = masks.iter().enumerate().map(|(p, &m)| (m, p as u32)).collect();
        let grading = self.spec.grading();
        let var_w: Vec<Vec<i64>> = self.spec.acting().iter().map(|&v| grading.var_weight(v)).collect();
        let mut block_by_key: HashMap<Vec<i64>, u32> = HashMap::new();
        let mut blocks: Vec<Vec<u32>> = Vec::new();
        let mut block_keys = Vec::new();
        let total = masks.len() * piece.dim();
        let mut block_of = Vec::with_capacity(total);
        let mut local = Vec::with_capacity(total);
        for &m in &masks {
            let mut mw = vec![0i64; grading.rank()];
            for (a, w) in var_w.iter().enumerate() {
                if m >> a & 1 == 1 {
                    for (x, y) in mw.iter_mut().zip(w) {
                        *x += y;
                    }
                }
            }
            for lw in &piece.weights {
                let key: Vec<i64> = mw.iter().zip(lw).map(|(a, b)| a + b).collect();
                let b = *block_by_key.entry(key.clone()).or_insert_with(|| {
                    blocks.push(Vec::new());
                    block_keys.push(key);
                    (blocks.len() - 1) as u32
                });
                local.push(blocks[b as usize].len() as u32);
                blocks[b as usize].push(block_of.len() as u32);
                block_of.push(b);
            }
        }
        let c = Arc::new(ChainSpace {
            i,
            j,
            masks,
            mask_pos,
            piece_dim: piece.dim(),
            block_of,
            local,
            blocks,
            block_keys,
            block_by_key,
        });
        self.chains.lock().unwrap().insert((i, j), c.clone());
        c
    }

    /// Koszul differential of basis element `k` of slot `(i, j)`, over the
    /// basis of slot `(i - 1, j + 1)`.
    fn differential(&self, src: &ChainSpace, dst: &ChainSpace, k: u32) -> SparseVec {
        let f = self.field();
        let (mask, label) = src.element(k);
        let mut out = Vec::new();
        let mut below = 0;
        for a in 0..self.n_acting() {
            if mask >> a & 1 == 0 {
                continue;
            }
            let sign_neg = below % 2 == 1;
            below += 1;
            let mult = self.spec.mult(self.spec.acting()[a], src.j);
            let rest = mask & !(1 << a);
            for &(l, c) in &mult[label as usize] {
                let idx = dst.index(rest, l).expect("target chain element");
                out.push((idx, if sign_neg { f.neg(c) } else { c }));
            }
        }
        normalize(f, out)
    }

    fn apply_differential(&self, i: usize, j: i64, v: &SparseVec) -> SparseVec {
        if i == 0 {
            return Vec::new();
        }
        let src = self.chain(i, j);
        let dst = self.chain(i - 1, j + 1);
        let f = self.field();
        let mut out = Vec::new();
        for &(k, c) in v {
            for (l, x) in self.differential(&src, &dst, k) {
                out.push((l, f.mul(c, x)));
            }
        }
        normalize(f, out)
    }

    /// Images of the members of one block, in local coordinates of the
    /// matching target block.
    fn block_images(&self, src: &ChainSpace, dst: &ChainSpace, b: usize) -> (usize, Vec<SparseVec>) {
        let key = &src.block_keys[b];
        let Some(&tb) = dst.block_by_key.get(key) else {
            return (0, vec![Vec::new(); src.blocks[b].len()]);
        };
        let ncols = dst.blocks[tb as usize].len();
        let images = src.blocks[b]
            .iter()
            .map(|&k| {
                let mut v: SparseVec = self
                    .differential(src, dst, k)
                    .into_iter()
                    .map(|(l, c)| {
                        debug_assert_eq!(dst.block_of[l as usize], tb);
                        (dst.local[l as usize], c)
                    })
                    .collect();
                v.sort_unstable_by_key(|t| t.0);
                v
            })
            .collect();
        (ncols, images)
    }

    /// Rank of the differential leaving slot `(i, j)`.
    pub fn rank_out(&self, i: usize, j: i64) -> usize {
        if i == 0 || j < -1 {
            return 0;
        }
        if let Some(&r) = self.ranks.lock().unwrap().get(&(i, j)) {
            return r;
        }
        let src = self.chain(i, j);
        let mut total = 0;
        if src.dim() > 0 {
            let dst = self.chain(i - 1, j + 1);
            for b in 0..src.blocks.len() {
                let (ncols, images) = self.block_images(&src, &dst, b);
                if ncols == 0 {
                    continue;
                }
                let mut e = Echelon::new(self.field(), ncols);
                for v in images {
                    e.insert(&v);
                }
                total += e.rank();
            }
        }
        self.ranks.lock().unwrap().insert((i, j), total);
        total
    }

    /// `dim Tor_i(M)_{i+j}`.
    pub fn betti(&self, i: usize, j: i64) -> usize {
        if i > self.n_acting() || j < 0 {
            return 0;
        }
        let c = self.chain(i, j).dim();
        if c == 0 {
            return 0;
        }
        c - self.rank_out(i, j) - self.rank_out(i + 1, j - 1)
    }

    /// Boundary echelon of one block of slot `(i, j)`.
    fn boundary_echelon(&self, i: usize, j: i64, block: u32) -> Echelon {
        let cur = self.chain(i, j);
        let mut e = Echelon::new(self.field(), cur.blocks[block as usize].len());
        if i + 1 > self.n_acting() {
            return e;
        }
        let src = self.chain(i + 1, j - 1);
        if let Some(&sb) = src.block_by_key.get(&cur.block_keys[block as usize]) {
            let (_, images) = self.block_images(&src, &cur, sb as usize);
            for v in images {
                e.insert(&v);
            }
        }
        e
    }

    pub fn homology(&self, i: usize, j: i64) -> Arc<Homology> {
        if let Some(h) = self.homology.lock().unwrap().get(&(i, j)) {
            return h.clone();
        }
        let cur = self.chain(i, j);
        let mut reps = Vec::new();
        if cur.dim() > 0 {
            let dst = if i > 0 { Some(self.chain(i - 1, j + 1)) } else { None };
            for b in 0..cur.blocks.len() {
                let members = &cur.blocks[b];
                let kernel: Vec<SparseVec> = match &dst {
                    Some(dst) => {
                        let (ncols, images) = self.block_images(&cur, dst, b);
                        rank_and_kernel(self.field(), ncols, &images).1
                    }
                    None => (0..members.len() as u32).map(|k| vec![(k, 1)]).collect(),
                };
                let mut e = self.boundary_echelon(i, j, b as u32);
                for v in kernel {
                    if e.insert(&v) {
                        let mut g: SparseVec = v.iter().map(|&(l, c)| (members[l as usize], c)).collect();
                        g.sort_unstable_by_key(|t| t.0);
                        reps.push(g);
                    }
                }
            }
        }
        let h = Arc::new(Homology { reps });
        self.homology.lock().unwrap().insert((i, j), h.clone());
        h
    }
}

/// A linear map between chain spaces of two engines, given on basis
/// elements as `(target mask, target label vector)`.
pub struct ChainMap<'a> {
    pub mask: &'a dyn Fn(u32) -> u32,
    pub label: &'a dyn Fn(u32) -> SparseVec,
}

/// Rank of the map induced on homology by `map` from slot `s` of `src` to
/// slot `t` of `dst`. With `check_boundaries` the map is also verified to
/// send boundaries to boundaries; failures of either check are errors.
pub fn induced_rank(
    src: &TorEngine,
    s: (usize, i64),
    dst: &TorEngine,
    t: (usize, i64),
    map: &ChainMap<'_>,
    check_boundaries: bool,
) -> Result<usize> {
    let f = src.field();
    let hs = src.homology(s.0, s.1);
    if hs.reps.is_empty() {
        return Ok(0);
    }
    let sc = src.chain(s.0, s.1);
    let tc = dst.chain(t.0, t.1);
    let push = |v: &SparseVec| push_chain(f, &sc, &tc, map, v);
    let mut echelons: HashMap<u32, Echelon> = HashMap::new();
    let localize = |v: &SparseVec, echelons: &mut HashMap<u32, Echelon>| -> Result<Option<(u32, SparseVec)>> {
        let Some(&(first, _)) = v.first() else { return Ok(None) };
        let b = tc.block_of[first as usize];
        let mut loc = Vec::with_capacity(v.len());
        for &(k, c) in v {
            if tc.block_of[k as usize] != b {
                return Err(Error::Degenerate("induced map does not respect the grading".into()));
            }
            loc.push((tc.local[k as usize], c));
        }
        loc.sort_unstable_by_key(|x| x.0);
        echelons.entry(b).or_insert_with(|| dst.boundary_echelon(t.0, t.1, b));
        Ok(Some((b, loc)))
    };
    let mut images = Vec::with_capacity(hs.reps.len());
    for r in &hs.reps {
        let img = push(r)?;
        if !dst.apply_differential(t.0, t.1, &img).is_empty() {
            return Err(Error::X0Unavailable("image of a cycle is not a cycle".into()));
        }
        images.push(img);
    }
    if check_boundaries && s.0 + 1 <= src.n_acting() {
        let bc = src.chain(s.0 + 1, s.1 - 1);
        for k in 0..bc.dim() as u32 {
            let b = src.apply_differential(s.0 + 1, s.1 - 1, &vec![(k, 1)]);
            if let Some((blk, loc)) = localize(&push(&b)?, &mut echelons)? {
                if !echelons.get_mut(&blk).unwrap().contains(&loc) {
                    return Err(Error::X0Unavailable("boundaries are not sent to boundaries".into()));
                }
            }
        }
    }
    let mut rank = 0;
    for img in &images {
        if let Some((blk, loc)) = localize(img, &mut echelons)? {
            if echelons.get_mut(&blk).unwrap().insert(&loc) {
                rank += 1;
            }
        }
    }
    Ok(rank)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapLabel {
    X0Multiplication,
    InclusionPhi,
    EmbeddedF,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorMapReport {
    pub map_label: MapLabel,
    pub source_slot: (usize, i64),
    pub target_slot: (usize, i64),
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
    /// False when preconditions of the underlying statement failed.
    pub asserted: bool,
}

impl TorMapReport {
    fn new(label: MapLabel, s: (usize, i64), t: (usize, i64), sd: usize, td: usize, rank: usize) -> Self {
        TorMapReport {
            map_label: label,
            source_slot: s,
            target_slot: t,
            source_dim: sd,
            target_dim: td,
            rank,
            injective: rank == sd,
            surjective: rank == td,
            isomorphism: rank == sd && rank == td,
            asserted: true,
        }
    }
}

/// `× x0 : Tor_i(M)_{i+j} → Tor_i(M)_{i+j+1}`. On `I/I'` the map is
/// defined through the surjection `φ` from `Tor(I)` by `x0 φ(a) = φ(x0 a)`;
/// surjectivity of `φ` and `ker φ ⊆ ker φ x0` are checked.
pub fn tor_x0_map(engine: &TorEngine, i: usize, j: i64) -> Result<TorMapReport> {
    let spec = engine.spec();
    if !spec.has_x0_action() || spec.structure() != Structure::OverS || matches!(spec.kind(), ModuleKind::FiltrationStep(_)) {
        return Err(Error::X0Unavailable(spec.label()));
    }
    let sd = engine.betti(i, j);
    let td = engine.betti(i, j + 1);
    if sd == 0 || td == 0 {
        return Ok(TorMapReport::new(MapLabel::X0Multiplication, (i, j), (i, j + 1), sd, td, 0));
    }
    let id = |m: u32| m;
    let rank = if spec.kind() == ModuleKind::Subquotient {
        let comp = engine.companion()?;
        let cs = comp.spec();
        let project = |d: i64| {
            let (from, to) = (cs.piece(d), spec.piece(d));
            from.labels.iter().map(|m| to.index.get(m).copied()).collect::<Vec<_>>()
        };
        let (p0, p1) = (project(j), project(j + 1));
        let mult = cs.x0_mult(j)?;
        let phi = |l: u32| p0[l as usize].map(|k| vec![(k, 1)]).unwrap_or_default();
        let phi_x0 = |l: u32| -> SparseVec {
            mult[l as usize].iter().filter_map(|&(k, c)| p1[k as usize].map(|k2| (k2, c))).collect()
        };
        let phi_map = ChainMap { mask: &id, label: &phi };
        let phi_x0_map = ChainMap { mask: &id, label: &phi_x0 };
        let r_phi = induced_rank(&comp, (i, j), engine, (i, j), &phi_map, false)?;
        if r_phi != sd {
            return Err(Error::X0Unavailable(format!("projection onto Tor_{i} at {j} is not surjective")));
        }
        let joint = joint_rank(&comp, (i, j), &[(engine, (i, j), &phi_map), (engine, (i, j + 1), &phi_x0_map)])?;
        if joint != r_phi {
            return Err(Error::X0Unavailable(format!("x0 is not well defined on Tor_{i} at {j}")));
        }
        induced_rank(&comp, (i, j), engine, (i, j + 1), &phi_x0_map, false)?
    } else {
        let mult = spec.x0_mult(j)?;
        let lab = |l: u32| mult[l as usize].clone();
        let map = ChainMap { mask: &id, label: &lab };
        induced_rank(engine, (i, j), engine, (i, j + 1), &map, false)?
    };
    Ok(TorMapReport::new(MapLabel::X0Multiplication, (i, j), (i, j + 1), sd, td, rank))
}

/// Rank on homology of `a ↦ (f_1(a), ..., f_k(a))` for chain maps `f_k`
/// out of one slot, in global coordinates.
pub fn joint_rank(src: &TorEngine, s: (usize, i64), targets: &[(&TorEngine, (usize, i64), &ChainMap<'_>)]) -> Result<usize> {
    let f = src.field();
    let hs = src.homology(s.0, s.1);
    let sc = src.chain(s.0, s.1);
    let mut offsets = Vec::new();
    let mut total = 0u32;
    for (dst, t, _) in targets {
        offsets.push(total);
        total += dst.chain(t.0, t.1).dim() as u32;
    }
    let mut e = Echelon::new(f, total as usize);
    for ((dst, t, _), &off) in targets.iter().zip(&offsets) {
        if t.0 < dst.n_acting() {
            let bc = dst.chain(t.0 + 1, t.1 - 1);
            for k in 0..bc.dim() as u32 {
                let b = dst.apply_differential(t.0 + 1, t.1 - 1, &vec![(k, 1)]);
                e.insert(&b.into_iter().map(|(l, c)| (l + off, c)).collect::<SparseVec>());
            }
        }
    }
    let mut rank = 0;
    for r in &hs.reps {
        let mut v = Vec::new();
        for ((dst, t, map), &off) in targets.iter().zip(&offsets) {
            let tc = dst.chain(t.0, t.1);
            v.extend(push_chain(f, &sc, &tc, map, r)?.into_iter().map(|(l, c)| (l + off, c)));
        }
        if e.insert(&v) {
            rank += 1;
        }
    }
    Ok(rank)
}

fn push_chain(f: PrimeField, sc: &ChainSpace, tc: &ChainSpace, map: &ChainMap<'_>, v: &SparseVec) -> Result<SparseVec> {
    let mut out = Vec::new();
    for &(k, c) in v {
        let (mask, label) = sc.element(k);
        let m2 = (map.mask)(mask);
        for (l, x) in (map.label)(label) {
            let idx = tc
                .index(m2, l)
                .ok_or_else(|| Error::Degenerate("map leaves the target chain space".into()))?;
            out.push((idx, f.mul(c, x)));
        }
    }
    Ok(normalize(f, out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingConeVerdict {
    pub i: usize,
    pub j: i64,
    pub tor_r: usize,
    pub coker: usize,
    pub ker: usize,
    pub holds: bool,
}

/// Checks `dim Tor_i^R(M)_{i+j} = dim coker(x0 on Tor_i^S at j-1) +
/// dim ker(x0 on Tor_{i-1}^S at j)` for engines over the same module.
pub fn mapping_cone_identity(over_r: &TorEngine, over_s: &TorEngine, i: usize, j: i64) -> Result<MappingConeVerdict> {
    if over_r.spec().structure() != Structure::OverR || over_s.spec().structure() != Structure::OverS {
        return Err(Error::InvalidParameter("need an R-engine and an S-engine".into()));
    }
    let tor_r = over_r.betti(i, j);
    let coker = if j >= 1 {
        let m = tor_x0_map(over_s, i, j - 1)?;
        m.target_dim - m.rank
    } else {
        over_s.betti(i, j)
    };
    let ker = if i >= 1 {
        let m = tor_x0_map(over_s, i - 1, j)?;
        m.source_dim - m.rank
    } else {
        0
    };
    Ok(MappingConeVerdict { i, j, tor_r, coker, ker, holds: tor_r == coker + ker })
}

/// `f : Tor_i^S(I ∩ S)_{i+j} → Tor_i^R(I)_{i+j}` induced by inclusion.
/// `target` must be the ideal module of `I` over `R`; `source` the ideal
/// module of `I ∩ S` graded compatibly.
pub fn tor_inclusion_map(source: &TorEngine, target: &TorEngine, i: usize, j: i64) -> Result<TorMapReport> {
    let ss = source.spec();
    let ts = target.spec();
    if ss.kind() != ModuleKind::IdealModule
        || ts.kind() != ModuleKind::IdealModule
        || ts.structure() != Structure::OverR
        || ss.ring().nvars() + 1 != ts.ring().nvars()
        || ss.acting().len() != ss.ring().nvars()
    {
        return Err(Error::InvalidParameter("inclusion map needs ideal modules over S and R".into()));
    }
    let sd = source.betti(i, j);
    let td = target.betti(i, j);
    let rank = if sd == 0 || td == 0 {
        0
    } else {
        let table = ss.groebner().degree_table(j as u32);
        let piece = ss.piece(j);
        let field = ss.field();
        let images: Vec<SparseVec> = piece
            .labels
            .iter()
            .map(|m| {
                let k = table.index[m] as usize;
                let mut terms = vec![(*m, 1)];
                for &(s, c) in &table.nf[k] {
                    terms.push((table.monomials[table.standard[s as usize] as usize], field.neg(c)));
                }
                let p = Polynomial::from_terms(ss.ring(), terms).prepend_vars(ts.ring());
                ts.coordinates(&p)
            })
            .collect::<Result<_>>()?;
        let shift = |m: u32| m << 1;
        let lab = |l: u32| images[l as usize].clone();
        let map = ChainMap { mask: &shift, label: &lab };
        induced_rank(source, (i, j), target, (i, j), &map, false)?
    };
    Ok(TorMapReport::new(MapLabel::EmbeddedF, (i, j), (i, j), sd, td, rank))
}

/// `φ : Tor_i^S(I)_{i+j} → Tor_i^S(I/I')_{i+j}` from the projection, for
/// two specs sharing a block basis.
pub fn tor_projection_map(ideal: &TorEngine, quotient: &TorEngine, i: usize, j: i64) -> Result<TorMapReport> {
    let (a, b) = (ideal.spec(), quotient.spec());
    if a.kind() != ModuleKind::IdealModule || b.kind() != ModuleKind::Subquotient || !Arc::ptr_eq(a.groebner(), b.groebner()) {
        return Err(Error::InvalidParameter("projection needs I and I/I' over one block basis".into()));
    }
    let sd = ideal.betti(i, j);
    let td = quotient.betti(i, j);
    let src = a.piece(j);
    let dst = b.piece(j);
    let images: Vec<SparseVec> =
        src.labels.iter().map(|m| dst.index.get(m).map(|&l| vec![(l, 1)]).unwrap_or_default()).collect();
    let id = |m: u32| m;
    let lab = |l: u32| images[l as usize].clone();
    let map = ChainMap { mask: &id, label: &lab };
    let rank = if sd == 0 || td == 0 { 0 } else { induced_rank(ideal, (i, j), quotient, (i, j), &map, false)? };
    Ok(TorMapReport::new(MapLabel::InclusionPhi, (i, j), (i, j), sd, td, rank))
}

/// `I` over `S` sharing the block basis used by the `I/I'` spec.
pub fn block_ideal_spec(ideal: &Ideal) -> Result<(Arc<GradedModuleSpec>, Arc<GradedModuleSpec>)> {
    let gb = ideal.groebner(MonomialOrder::BLOCK_X0)?;
    let grading = crate::grading::Grading::detect(ideal.ring().nvars(), ideal.generators());
    let i = GradedModuleSpec::from_parts(ModuleKind::IdealModule, Structure::OverS, gb.clone(), 0, grading.clone())?;
    let q = GradedModuleSpec::from_parts(ModuleKind::Subquotient, Structure::OverS, gb, 0, grading)?;
    Ok((Arc::new(i), Arc::new(q)))
}

/// Betti numbers `β_{i,j} = dim Tor_i(M)_{i+j}` over a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub module_label: String,
    pub ring_roster: Vec<String>,
    pub i_max: usize,
    pub j_max: i64,
    /// `entries[i][j]` for `0 <= i <= i_max`, `0 <= j <= j_max`.
    pub entries: Vec<Vec<u64>>,
    pub truncated: bool,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> u64 {
        if j < 0 {
            return 0;
        }
        self.entries.get(i).and_then(|r| r.get(j as usize)).copied().unwrap_or(0)
    }

    /// Nonzero entries as `(i, j, β)`.
    pub fn nonzero(&self) -> Vec<(usize, i64, u64)> {
        let mut out = Vec::new();
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    out.push((i, j as i64, b));
                }
            }
        }
        out
    }

    /// Largest homological index with a nonzero entry.
    pub fn last_column(&self) -> Option<usize> {
        self.nonzero().iter().map(|t| t.0).max()
    }

    /// `Σ (-1)^i β_{i,j} t^{i+j}`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let mut k = vec![0i64; self.i_max + self.j_max.max(0) as usize + 1];
        for (i, j, b) in self.nonzero() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            k[i + j as usize] += s * b as i64;
        }
        while k.len() > 1 && *k.last().unwrap() == 0 {
            k.pop();
        }
        k
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.i_max + 1;
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|b| b.to_string().len())
            .max()
            .unwrap_or(1)
            .max(cols.to_string().len())
            .max(1);
        let rows: Vec<i64> = (0..=self.j_max).filter(|&j| (0..cols).any(|i| self.get(i, j) != 0)).collect();
        let label_w = self.j_max.to_string().len().max(1);
        write!(f, "{:>label_w$} |", "")?;
        for i in 0..cols {
            write!(f, " {:>width$}", i)?;
        }
        writeln!(f)?;
        for j in rows {
            write!(f, "{:>label_w$} |", j)?;
            for i in 0..cols {
                let b = self.get(i, j);
                if b == 0 {
                    write!(f, " {:>width$}", "-")?;
                } else {
                    write!(f, " {:>width$}", b)?;
                }
            }
            writeln!(f)?;
        }
        if self.truncated {
            writeln!(f, "(window i <= {}, j <= {} may be incomplete)", self.i_max, self.j_max)?;
        }
        Ok(())
    }
}

/// Expected `Σ (-1)^i β_{i,j} t^{i+j}` from the Hilbert series, for modules
/// finitely generated over the acting ring.
fn expected_k_polynomial(spec: &GradedModuleSpec) -> Option<Vec<i64>> {
    if !spec.finitely_generated() {
        return None;
    }
    let gb = spec.groebner();
    let n = gb.ring().nvars();
    let h = hilbert_from_leads(gb.leading_monomials(), n, 0);
    let mut num = h.numerator;
    let mut k = match spec.kind() {
        ModuleKind::QuotientRing => num,
        ModuleKind::IdealModule | ModuleKind::ShiftedIdeal(_) => {
            for c in num.iter_mut() {
                *c = -*c;
            }
            num[0] += 1;
            num
        }
        _ => return None,
    };
    if let ModuleKind::ShiftedIdeal(i) = spec.kind() {
        let mut shifted = vec![0; i as usize];
        shifted.extend(k);
        k = shifted;
    }
    while k.len() > 1 && *k.last().unwrap() == 0 {
        k.pop();
    }
    Some(k)
}

pub fn betti_window(engine: &TorEngine, i_max: usize, j_max: i64) -> BettiTable {
    let spec = engine.spec();
    let entries: Vec<Vec<u64>> = (0..=i_max)
        .map(|i| (0..=j_max.max(0)).map(|j| engine.betti(i, j) as u64).collect())
        .collect();
    let mut t = BettiTable {
        module_label: spec.label(),
        ring_roster: spec.acting_names(),
        i_max,
        j_max,
        entries,
        truncated: false,
    };
    let row_hit = (0..=i_max).any(|i| t.get(i, j_max) != 0);
    let col_hit = i_max < engine.n_acting() && (0..=j_max).any(|j| t.get(i_max, j) != 0);
    let k_mismatch = match expected_k_polynomial(spec) {
        Some(k) => k != t.k_polynomial(),
        None => false,
    };
    t.truncated = row_hit || col_hit || k_mismatch;
    t
}

/// Smallest complete window: all homological degrees, `j` grown until the
/// table is certified complete or `j_cap` is reached.
pub fn betti_auto(engine: &TorEngine, j_cap: i64) -> Result<BettiTable> {
    if !engine.spec().finitely_generated() {
        return Err(Error::WindowTooSmall("module is not finitely generated; pick an explicit window".into()));
    }
    let i_max = engine.n_acting();
    let start = engine.spec().groebner().leading_monomials().iter().map(|m| m.degree()).max().unwrap_or(0) as i64;
    let mut j = start.max(1);
    loop {
        let t = betti_window(engine, i_max, j);
        if !t.truncated {
            return Ok(t);
        }
        if j >= j_cap {
            return Err(Error::WindowTooSmall(format!("no complete table with j <= {j_cap}")));
        }
        j += 1;
    }
}

/// Largest `p` with `β_{i,j}(I) = 0` for `i < p`, `j >= 3`, capped by the
/// length of the resolution; 0 unless `I` is generated by quadrics.
pub fn check_n2p(table: &BettiTable) -> Result<usize> {
    if table.truncated {
        return Err(Error::WindowTooSmall("Betti table is truncated".into()));
    }
    let nz = table.nonzero();
    if nz.iter().any(|&(i, j, _)| i == 0 && j != 2) || !nz.iter().any(|&(i, j, _)| i == 0 && j == 2) {
        return Ok(0);
    }
    let columns = table.last_column().map_or(0, |c| c + 1);
    let first_bad = nz.iter().filter(|&&(_, j, _)| j >= 3).map(|t| t.0).min().unwrap_or(columns);
    Ok(first_bad.min(columns))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PdDepth {
    pub pd: usize,
    pub depth: usize,
    pub krull_dim: i64,
    pub is_acm: bool,
}

/// Projective dimension and depth of `R/I` from its complete Betti table;
/// the Krull dimension is read off the same Hilbert series.
pub fn pd_depth(table: &BettiTable, numvars: usize) -> Result<PdDepth> {
    if table.truncated {
        return Err(Error::WindowTooSmall("Betti table is truncated".into()));
    }
    let pd = table.last_column().unwrap_or(0);
    let depth = numvars.saturating_sub(pd);
    let mut k = table.k_polynomial();
    let mut ord = 0;
    if k.iter().all(|&c| c == 0) {
        return Ok(PdDepth { pd, depth, krull_dim: -1, is_acm: false });
    }
    while k.iter().sum::<i64>() == 0 {
        let mut q = Vec::new();
        let mut acc = 0;
        for &c in &k[..k.len() - 1] {
            acc += c;
            q.push(acc);
        }
        k = q;
        ord += 1;
    }
    let krull = numvars as i64 - ord;
    Ok(PdDepth { pd, depth, krull_dim: krull, is_acm: depth as i64 == krull })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_CHAR;
    use crate::parse::parse_polynomial;
    use crate::pei::subquotient_spec;
    use crate::poly::Ring;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        let r = Ring::standard(n, crate::field::PrimeField::new(DEFAULT_CHAR).unwrap());
        Ideal::new(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect()).unwrap()
    }

    fn engine(spec: GradedModuleSpec) -> TorEngine {
        TorEngine::new(Arc::new(spec))
    }

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    const RNC4: [&str; 6] =
        ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x0*x4 - x1*x3", "x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"];

    #[test]
    fn gosper_masks() {
        assert_eq!(masks_of_size(4, 2).len(), 6);
        assert_eq!(masks_of_size(3, 0), vec![0]);
        assert!(masks_of_size(2, 3).is_empty());
    }

    #[test]
    fn residue_field_is_koszul() {
        let i = ideal(3, &["x0", "x1", "x2"]);
        let e = engine(GradedModuleSpec::quotient(&i, Structure::OverR).unwrap());
        let t = betti_window(&e, 3, 2);
        for i in 0..=3 {
            assert_eq!(t.get(i, 0), binom(3, i as u64));
            assert_eq!(t.get(i, 1), 0);
        }
        assert!(!t.truncated);
        let pdd = pd_depth(&t, 3).unwrap();
        assert_eq!((pdd.pd, pdd.depth), (3, 0));
    }

    #[test]
    fn rational_normal_quartic() {
        let i = ideal(5, &RNC4);
        let e = engine(GradedModuleSpec::ideal(&i, Structure::OverR).unwrap());
        let t = betti_auto(&e, 8).unwrap();
        assert_eq!((t.get(0, 2), t.get(1, 2), t.get(2, 2)), (6, 8, 3));
        assert_eq!(t.nonzero().len(), 3);
        assert_eq!(check_n2p(&t).unwrap(), 3);
    }

    #[test]
    fn convention_shift() {
        let i = ideal(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let q = engine(GradedModuleSpec::quotient(&i, Structure::OverR).unwrap());
        let m = engine(GradedModuleSpec::ideal(&i, Structure::OverR).unwrap());
        for a in 1..4 {
            for j in 0..4 {
                assert_eq!(q.betti(a, j), m.betti(a - 1, j + 1));
            }
        }
    }

    #[test]
    fn cubic_generator_gives_level_zero() {
        let i = ideal(3, &["x0*x1*x2"]);
        let e = engine(GradedModuleSpec::ideal(&i, Structure::OverR).unwrap());
        assert_eq!(check_n2p(&betti_auto(&e, 6).unwrap()).unwrap(), 0);
    }

    #[test]
    fn conic_subquotient_x0_isomorphisms() {
        let i = ideal(3, &["x0*x2 - x1^2"]);
        let e = engine(subquotient_spec(ModuleKind::Subquotient, &i, Structure::OverS).unwrap());
        for j in 2..6 {
            assert_eq!(e.betti(0, j), 1);
            let m = tor_x0_map(&e, 0, j).unwrap();
            assert!(m.isomorphism);
        }
    }

    #[test]
    fn zero_module_map() {
        let i = ideal(3, &["x0", "x1", "x2"]);
        let e = engine(GradedModuleSpec::quotient(&i, Structure::OverS).unwrap());
        let m = tor_x0_map(&e, 1, 3).unwrap();
        assert_eq!((m.source_dim, m.target_dim, m.rank), (0, 0, 0));
        assert!(m.isomorphism);
    }

    #[test]
    fn mapping_cone_on_conic() {
        let i = ideal(3, &["x0*x2 - x1^2"]);
        let r = engine(GradedModuleSpec::quotient(&i, Structure::OverR).unwrap());
        let s = engine(GradedModuleSpec::quotient(&i, Structure::OverS).unwrap());
        for a in 0..=2 {
            for j in 0..=4 {
                let v = mapping_cone_identity(&r, &s, a, j).unwrap();
                assert!(v.holds, "{v:?}");
            }
        }
    }

    #[test]
    fn mapping_cone_on_free_ring() {
        let i = ideal(3, &[]);
        let r = engine(GradedModuleSpec::quotient(&i, Structure::OverR).unwrap());
        let s = engine(GradedModuleSpec::quotient(&i, Structure::OverS).unwrap());
        for a in 0..=3 {
            for j in 0..=3 {
                let v = mapping_cone_identity(&r, &s, a, j).unwrap();
                assert!(v.holds);
                if a + j as usize > 0 {
                    assert_eq!(v.tor_r, 0);
                }
            }
        }
    }

    #[test]
    fn quartic_x0_flags() {
        let i = ideal(5, &RNC4);
        let s = engine(GradedModuleSpec::ideal(&i, Structure::OverS).unwrap());
        for a in 0..=1 {
            assert!(tor_x0_map(&s, a, 2).unwrap().surjective);
            for j in 3..=4 {
                assert!(tor_x0_map(&s, a, j).unwrap().isomorphism);
            }
        }
        for j in 2..=4 {
            assert!(tor_x0_map(&s, 2, j).unwrap().surjective);
        }
    }

    #[test]
    fn square_zero() {
        let i = ideal(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let e = engine(GradedModuleSpec::ideal(&i, Structure::OverR).unwrap());
        for a in 2..=4 {
            for j in 2..=4 {
                let c = e.chain(a, j);
                for k in 0..c.dim() as u32 {
                    let d1 = e.apply_differential(a, j, &vec![(k, 1)]);
                    assert!(e.apply_differential(a - 1, j + 1, &d1).is_empty());
                }
            }
        }
    }

    #[test]
    fn pei_shape_on_conic() {
        let i = ideal(3, &["x0*x2 - x1^2"]);
        let e = engine(subquotient_spec(ModuleKind::Subquotient, &i, Structure::OverS).unwrap());
        for j in 2..=6 {
            assert_eq!(e.betti(0, j), 1);
            assert_eq!(e.betti(1, j), 0);
        }
    }

    #[test]
    fn subquotient_x0_through_projection() {
        let i = ideal(5, &RNC4);
        let (a, b) = block_ideal_spec(&i).unwrap();
        let (ea, eb) = (TorEngine::new(a), TorEngine::new(b));
        for t in 0..=2 {
            for j in 2..=4 {
                let p = tor_projection_map(&ea, &eb, t, j).unwrap();
                assert!(p.surjective);
                let m = tor_x0_map(&eb, t, j).unwrap();
                assert_eq!(m.source_dim, binom(3, t as u64 + 1) as usize);
                assert!(m.rank <= m.source_dim.min(m.target_dim));
            }
        }
    }

    #[test]
    fn lifted_x0_is_not_a_chain_map() {
        let i = ideal(5, &RNC4);
        let (_, b) = block_ideal_spec(&i).unwrap();
        let e = TorEngine::new(b.clone());
        let mult = b.x0_mult(2).unwrap();
        let id = |m: u32| m;
        let lab = |l: u32| mult[l as usize].clone();
        let map = ChainMap { mask: &id, label: &lab };
        assert!(induced_rank(&e, (1, 2), &e, (1, 3), &map, true).is_err());
    }
}
