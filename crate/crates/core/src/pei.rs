//! Partial elimination ideals with respect to `x0`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::groebner::{eliminate, Ideal};
use crate::module::{GradedModuleSpec, ModuleKind, Structure};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

/// Largest exponent of `x0` in `f`; for homogeneous `f` this is the
/// `x0`-exponent of the leading term under any `x0`-first order.
pub fn d0(f: &Polynomial) -> u32 {
    f.max_exp(0)
}

/// Coefficient of `x0^{d0(f)}`, presented over the roster without `x0`.
pub fn leading_x0_coefficient(f: &Polynomial) -> Polynomial {
    let k = d0(f);
    let target = f.ring().drop_front(1);
    let terms = f
        .terms()
        .iter()
        .filter(|t| t.0.exp(0) == k)
        .map(|&(m, c)| (m.without_var(0).drop_front(1), c))
        .collect();
    Polynomial::from_terms(&target, terms)
}

/// `K_i(I)`: leading `x0`-coefficients of the elements of `I` with
/// `d0 <= i`, computed from a block basis.
pub fn partial_elim(ideal: &Ideal, i: u32) -> Result<Ideal> {
    if ideal.ring().nvars() < 2 {
        return Err(Error::InvalidParameter("partial elimination needs at least two variables".into()));
    }
    if i == 0 {
        return eliminate(ideal, 1);
    }
    let gb = ideal.groebner(MonomialOrder::BLOCK_X0)?;
    let target = ideal.ring().drop_front(1);
    let gens = gb
        .polynomials()
        .iter()
        .filter(|g| d0(g) <= i)
        .map(leading_x0_coefficient)
        .collect();
    Ideal::new(&target, gens)
}

/// Maximal `d0` over the block basis; beyond it the filtration is constant.
pub fn max_d0(ideal: &Ideal) -> Result<u32> {
    let gb = ideal.groebner(MonomialOrder::BLOCK_X0)?;
    Ok(gb.polynomials().iter().map(d0).max().unwrap_or(0))
}

#[derive(Debug, Clone)]
pub struct PeiFiltration {
    pub ideals: Vec<Ideal>,
    pub stabilization_index: u32,
}

impl PeiFiltration {
    pub fn stable_ideal(&self) -> &Ideal {
        &self.ideals[self.stabilization_index as usize]
    }
}

/// `K_0 ⊆ K_1 ⊆ ... ⊆ K_D` with `D` the maximal `d0`, and the least `s`
/// from which the chain is constant.
pub fn filtration(ideal: &Ideal) -> Result<PeiFiltration> {
    let top = max_d0(ideal)?;
    let ideals = (0..=top).map(|i| partial_elim(ideal, i)).collect::<Result<Vec<_>>>()?;
    let last = &ideals[top as usize];
    let mut s = top;
    while s > 0 && ideals[s as usize - 1].same_ideal(last)? {
        s -= 1;
    }
    Ok(PeiFiltration { ideals, stabilization_index: s })
}

pub fn stabilization(ideal: &Ideal) -> Result<(u32, Ideal)> {
    let f = filtration(ideal)?;
    let s = f.stabilization_index;
    Ok((s, f.ideals[s as usize].clone()))
}

/// Module specification of the requested kind. `Subquotient`,
/// `FiltrationStep` and `ShiftedIdeal` carry only the `S`-structure.
pub fn subquotient_spec(kind: ModuleKind, ideal: &Ideal, structure: Structure) -> Result<GradedModuleSpec> {
    let n = ideal.ring().nvars();
    let grading = Grading::detect(n, ideal.generators());
    match kind {
        ModuleKind::QuotientRing => GradedModuleSpec::quotient(ideal, structure),
        ModuleKind::IdealModule => GradedModuleSpec::ideal(ideal, structure),
        ModuleKind::Subquotient | ModuleKind::FiltrationStep(_) => {
            if structure == Structure::OverR {
                return Err(Error::X0Unavailable(format!("{kind:?} is only an S-module")));
            }
            if n < 2 {
                return Err(Error::InvalidParameter("need at least two variables".into()));
            }
            let gb = ideal.groebner(MonomialOrder::BLOCK_X0)?;
            GradedModuleSpec::from_parts(kind, Structure::OverS, gb, 0, grading)
        }
        ModuleKind::ShiftedIdeal(i) => {
            let k = partial_elim(ideal, i)?;
            let gb = k.groebner(MonomialOrder::GrevLex)?;
            GradedModuleSpec::from_parts(kind, Structure::OverS, gb, i, grading.drop_front(1))
        }
    }
}

/// Spec for `I ∩ S` graded compatibly with `I`, for comparison maps.
pub fn projected_ideal_spec(ideal: &Ideal) -> Result<(Ideal, Arc<GradedModuleSpec>)> {
    let n = ideal.ring().nvars();
    let grading = Grading::detect(n, ideal.generators()).drop_front(1);
    let iq = eliminate(ideal, 1)?;
    let spec = GradedModuleSpec::ideal_with_grading(&iq, Structure::OverR, grading)?;
    Ok((iq, Arc::new(spec)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, DEFAULT_CHAR};
    use crate::parse::parse_polynomial;
    use crate::poly::Ring;

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        let r = Ring::standard(n, PrimeField::new(DEFAULT_CHAR).unwrap());
        Ideal::new(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect()).unwrap()
    }

    fn s_ideal(n: usize, gens: &[&str]) -> Ideal {
        let r = Ring::new((1..n).map(|i| format!("x{i}")), PrimeField::new(DEFAULT_CHAR).unwrap()).unwrap();
        Ideal::new(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap()).collect()).unwrap()
    }

    #[test]
    fn k0_is_elimination() {
        let i = ideal(4, &["x0*x2 - x1^2", "x0*x1 - x1*x3 - x2^2", "x0^2 - x0*x3 - x1*x2"]);
        let k0 = partial_elim(&i, 0).unwrap();
        assert!(k0.same_ideal(&s_ideal(4, &["x1^3 - x1*x2*x3 - x2^3"])).unwrap());
    }

    #[test]
    fn conic_tangent_line() {
        let i = ideal(3, &["x0*x2 - x1^2"]);
        let k1 = partial_elim(&i, 1).unwrap();
        assert!(k1.same_ideal(&s_ideal(3, &["x2"])).unwrap());
        let (s, stable) = stabilization(&i).unwrap();
        assert_eq!(s, 1);
        assert!(stable.same_ideal(&s_ideal(3, &["x2"])).unwrap());
    }

    #[test]
    fn outer_center_reaches_unit() {
        let i = ideal(4, &["x0*x2 - x1^2", "x0*x1 - x1*x3 - x2^2", "x0^2 - x0*x3 - x1*x2"]);
        let k1 = partial_elim(&i, 1).unwrap();
        assert!(k1.same_ideal(&s_ideal(4, &["x1", "x2"])).unwrap());
        let k2 = partial_elim(&i, 2).unwrap();
        assert!(k2.is_unit().unwrap());
        let (_, stable) = stabilization(&i).unwrap();
        assert!(stable.is_unit().unwrap());
    }

    #[test]
    fn rational_normal_quartic_stabilizes_linearly() {
        let i = ideal(
            5,
            &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x0*x4 - x1*x3", "x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"],
        );
        let (s, stable) = stabilization(&i).unwrap();
        assert_eq!(s, 1);
        assert!(stable.same_ideal(&s_ideal(5, &["x2", "x3", "x4"])).unwrap());
        let f = filtration(&i).unwrap();
        for w in f.ideals.windows(2) {
            assert!(w[1].contains_ideal(&w[0]).unwrap());
        }
    }

    #[test]
    fn free_of_x0_stabilizes_at_zero() {
        let i = ideal(3, &["x1*x2"]);
        let (s, stable) = stabilization(&i).unwrap();
        assert_eq!(s, 0);
        assert!(stable.same_ideal(&s_ideal(3, &["x1*x2"])).unwrap());
    }

    #[test]
    fn conic_subquotient_dims() {
        let i = ideal(3, &["x0*x2 - x1^2"]);
        let m = subquotient_spec(ModuleKind::Subquotient, &i, Structure::OverS).unwrap();
        assert_eq!(m.dim(2), 1);
        assert_eq!(m.dim(3), 3);
        assert!(subquotient_spec(ModuleKind::Subquotient, &i, Structure::OverR).is_err());
    }

    #[test]
    fn residue_field_quotient() {
        let i = ideal(3, &["x0", "x1", "x2"]);
        let m = subquotient_spec(ModuleKind::QuotientRing, &i, Structure::OverR).unwrap();
        assert_eq!((m.dim(0), m.dim(1), m.dim(4)), (1, 0, 0));
    }

    #[test]
    fn filtration_dimension_identity() {
        let i = ideal(
            5,
            &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x0*x4 - x1*x3", "x1*x3 - x2^2", "x1*x4 - x2*x3", "x2*x4 - x3^2"],
        );
        let (s, _) = stabilization(&i).unwrap();
        for step in 1..=s.max(2) {
            let cur = subquotient_spec(ModuleKind::FiltrationStep(step), &i, Structure::OverS).unwrap();
            let prev = subquotient_spec(ModuleKind::FiltrationStep(step - 1), &i, Structure::OverS).unwrap();
            let k = subquotient_spec(ModuleKind::ShiftedIdeal(step), &i, Structure::OverS).unwrap();
            for m in 0..=8 {
                assert_eq!(cur.dim(m), prev.dim(m) + k.dim(m), "step {step} degree {m}");
            }
        }
    }
}
