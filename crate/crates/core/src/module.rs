//! Graded modules given degree by degree: finite pieces plus the action
//! of variables between consecutive pieces.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::grading::Grading;
use crate::groebner::{DegreeTable, GroebnerBasis, Ideal};
use crate::linalg::{normalize, SparseVec};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleKind {
    /// `R/I`, spanned by standard monomials.
    QuotientRing,
    /// `I`, with basis `m - NF(m)` over nonstandard monomials `m`.
    IdealModule,
    /// `I / (I ∩ S)` for `S` the subring without `x0`.
    Subquotient,
    /// Elements of `I` of `x0`-degree at most `i`, modulo those of degree 0.
    FiltrationStep(u32),
    /// The partial elimination ideal `K_i` shifted by `i`.
    ShiftedIdeal(u32),
}

/// Which variables act.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Structure {
    /// Every variable of the ambient ring.
    OverR,
    /// Every variable but `x0`.
    OverS,
}

/// Basis of one graded piece.
pub struct Piece {
    pub degree: i64,
    pub labels: Vec<Monomial>,
    pub index: HashMap<Monomial, u32>,
    pub weights: Vec<Vec<i64>>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// Degree-indexed description of a graded module used by the Tor engine.
pub struct GradedModuleSpec {
    kind: ModuleKind,
    structure: Structure,
    gb: Arc<GroebnerBasis>,
    shift: u32,
    grading: Grading,
    acting: Vec<usize>,
    x0: Option<usize>,
    pieces: Mutex<HashMap<i64, Arc<Piece>>>,
    mults: Mutex<HashMap<(i64, usize), Arc<Vec<SparseVec>>>>,
}

impl GradedModuleSpec {
    pub fn from_parts(
        kind: ModuleKind,
        structure: Structure,
        gb: Arc<GroebnerBasis>,
        shift: u32,
        grading: Grading,
    ) -> Result<Self> {
        let n = gb.ring().nvars();
        let needs_x0 = matches!(kind, ModuleKind::Subquotient | ModuleKind::FiltrationStep(_));
        if needs_x0 && gb.order() != MonomialOrder::BLOCK_X0 {
            return Err(Error::InvalidParameter("x0-filtered modules need a block basis".into()));
        }
        if n == 0 && structure == Structure::OverS {
            return Err(Error::RosterMismatch("no x0 to drop from an empty roster".into()));
        }
        if grading.nvars() != n {
            return Err(Error::RosterMismatch("grading and ring differ in size".into()));
        }
        let (acting, x0) = match (kind, structure) {
            (ModuleKind::ShiftedIdeal(_), _) => ((0..n).collect(), None),
            (_, Structure::OverR) => ((0..n).collect(), Some(0).filter(|_| n > 0)),
            (_, Structure::OverS) => ((1..n).collect(), Some(0)),
        };
        Ok(GradedModuleSpec {
            kind,
            structure,
            gb,
            shift,
            grading,
            acting,
            x0,
            pieces: Mutex::new(HashMap::new()),
            mults: Mutex::new(HashMap::new()),
        })
    }

    /// `R/I` with the given action.
    pub fn quotient(ideal: &Ideal, structure: Structure) -> Result<Self> {
        let gb = ideal.groebner(MonomialOrder::GrevLex)?;
        let grading = Grading::detect(ideal.ring().nvars(), ideal.generators());
        Self::from_parts(ModuleKind::QuotientRing, structure, gb, 0, grading)
    }

    /// `I` with the given action.
    pub fn ideal(ideal: &Ideal, structure: Structure) -> Result<Self> {
        let gb = ideal.groebner(MonomialOrder::GrevLex)?;
        let grading = Grading::detect(ideal.ring().nvars(), ideal.generators());
        Self::from_parts(ModuleKind::IdealModule, structure, gb, 0, grading)
    }

    /// `I` with an explicitly chosen grading, which must make `I` homogeneous.
    pub fn ideal_with_grading(ideal: &Ideal, structure: Structure, grading: Grading) -> Result<Self> {
        let gb = ideal.groebner(MonomialOrder::GrevLex)?;
        Self::from_parts(ModuleKind::IdealModule, structure, gb, 0, grading)
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn structure(&self) -> Structure {
        self.structure
    }

    pub fn label(&self) -> String {
        let k = match self.kind {
            ModuleKind::QuotientRing => "R/I".to_string(),
            ModuleKind::IdealModule => "I".to_string(),
            ModuleKind::Subquotient => "I/I'".to_string(),
            ModuleKind::FiltrationStep(i) => format!("K~{i}/K~0"),
            ModuleKind::ShiftedIdeal(i) => format!("K{i}(-{i})"),
        };
        let s = match (self.kind, self.structure) {
            (ModuleKind::ShiftedIdeal(_), _) | (_, Structure::OverS) => "S",
            _ => "R",
        };
        format!("{k} over {s}")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.gb.ring()
    }

    pub fn field(&self) -> PrimeField {
        self.gb.ring().field()
    }

    pub fn groebner(&self) -> &Arc<GroebnerBasis> {
        &self.gb
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// Variables acting, as indices into the ambient roster.
    pub fn acting(&self) -> &[usize] {
        &self.acting
    }

    pub fn acting_names(&self) -> Vec<String> {
        self.acting.iter().map(|&v| self.ring().names()[v].clone()).collect()
    }

    pub fn has_x0_action(&self) -> bool {
        self.x0.is_some() && !matches!(self.kind, ModuleKind::ShiftedIdeal(_))
    }

    /// Whether `x0` times the lift of a basis element is projected back;
    /// the result need not be a module map.
    pub fn x0_is_lifted(&self) -> bool {
        matches!(self.kind, ModuleKind::Subquotient | ModuleKind::FiltrationStep(_))
    }

    /// Finitely generated over the acting ring. Over `S` this is treated as
    /// false even when it holds, which only weakens truncation checks.
    pub fn finitely_generated(&self) -> bool {
        matches!(self.kind, ModuleKind::ShiftedIdeal(_))
            || (self.structure == Structure::OverR
                && matches!(self.kind, ModuleKind::QuotientRing | ModuleKind::IdealModule))
    }

    fn keep(&self, table: &DegreeTable, k: usize) -> bool {
        let m = &table.monomials[k];
        let standard = table.std_pos[k] != u32::MAX;
        match self.kind {
            ModuleKind::QuotientRing => standard,
            ModuleKind::IdealModule | ModuleKind::ShiftedIdeal(_) => !standard,
            ModuleKind::Subquotient => !standard && m.exp(0) >= 1,
            ModuleKind::FiltrationStep(i) => !standard && (1..=i).contains(&m.exp(0)),
        }
    }

    pub fn piece(&self, d: i64) -> Arc<Piece> {
        if let Some(p) = self.pieces.lock().unwrap().get(&d) {
            return p.clone();
        }
        let e = d - self.shift as i64;
        let labels: Vec<Monomial> = if e < 0 {
            Vec::new()
        } else {
            let t = self.gb.degree_table(e as u32);
            let order: &[u32] = match self.kind {
                ModuleKind::QuotientRing => &t.standard,
                _ => &t.nonstandard,
            };
            order
                .iter()
                .filter(|&&k| self.keep(&t, k as usize))
                .map(|&k| t.monomials[k as usize])
                .collect()
        };
        let index = labels.iter().enumerate().map(|(k, m)| (*m, k as u32)).collect();
        let weights = labels.iter().map(|m| self.grading.weight(m)).collect();
        let p = Arc::new(Piece { degree: d, labels, index, weights });
        self.pieces.lock().unwrap().insert(d, p.clone());
        p
    }

    pub fn dim(&self, d: i64) -> usize {
        self.piece(d).dim()
    }

    /// Images of the basis of piece `d` under multiplication by variable
    /// `v`, as vectors over the basis of piece `d + 1`.
    pub fn mult(&self, v: usize, d: i64) -> Arc<Vec<SparseVec>> {
        if let Some(m) = self.mults.lock().unwrap().get(&(d, v)) {
            return m.clone();
        }
        let m = Arc::new(self.compute_mult(v, d));
        self.mults.lock().unwrap().insert((d, v), m.clone());
        m
    }

    /// Multiplication by `x0`; for filtered subquotients this lifts, multiplies
    /// and projects.
    pub fn x0_mult(&self, d: i64) -> Result<Arc<Vec<SparseVec>>> {
        match self.x0 {
            Some(v) if self.has_x0_action() => Ok(self.mult(v, d)),
            _ => Err(Error::X0Unavailable(self.label())),
        }
    }

    pub fn x0_weight(&self) -> Option<Vec<i64>> {
        self.x0.map(|v| self.grading.var_weight(v))
    }

    fn compute_mult(&self, v: usize, d: i64) -> Vec<SparseVec> {
        let src = self.piece(d);
        let dst = self.piece(d + 1);
        if src.dim() == 0 {
            return Vec::new();
        }
        let f = self.field();
        let e = (d - self.shift as i64) as u32;
        let t1 = self.gb.degree_table(e + 1);
        match self.kind {
            ModuleKind::QuotientRing => src
                .labels
                .iter()
                .map(|m| {
                    let k = t1.index[&m.mul_var(v)] as usize;
                    // std positions coincide with quotient labels
                    t1.nf[k].clone()
                })
                .collect(),
            _ => {
                let t0 = self.gb.degree_table(e);
                src.labels
                    .iter()
                    .map(|m| {
                        let mut out: Vec<(u32, u32)> = Vec::new();
                        if let Some(&l) = dst.index.get(&m.mul_var(v)) {
                            out.push((l, 1));
                        }
                        let k = t0.index[m] as usize;
                        for &(s, c) in &t0.nf[k] {
                            let sm = t0.monomials[t0.standard[s as usize] as usize].mul_var(v);
                            if let Some(&l) = dst.index.get(&sm) {
                                out.push((l, f.neg(c)));
                            }
                        }
                        normalize(f, out)
                    })
                    .collect()
            }
        }
    }

    /// Coordinates in piece `deg(f)` of a homogeneous element of the ambient
    /// ring, read as an element of the module.
    pub fn coordinates(&self, f: &Polynomial) -> Result<SparseVec> {
        self.ring().check_same(f.ring())?;
        let Some(deg) = f.degree() else { return Ok(Vec::new()) };
        let d = deg as i64 + self.shift as i64;
        let piece = self.piece(d);
        let field = self.field();
        match self.kind {
            ModuleKind::QuotientRing => {
                let t = self.gb.degree_table(deg);
                let mut out = Vec::new();
                for &(m, c) in f.terms() {
                    for &(s, x) in &t.nf[t.index[&m] as usize] {
                        out.push((s, field.mul(c, x)));
                    }
                }
                Ok(normalize(field, out))
            }
            _ => {
                if !self.gb.normal_form(f)?.is_zero() {
                    return Err(Error::InvalidParameter(format!("`{f}` is not in the ideal")));
                }
                let out = f
                    .terms()
                    .iter()
                    .filter_map(|&(m, c)| piece.index.get(&m).map(|&l| (l, c)))
                    .collect();
                Ok(normalize(field, out))
            }
        }
    }
}
