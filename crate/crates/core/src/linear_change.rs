//! Invertible linear coordinate changes.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::{Polynomial, Ring};

/// An invertible square matrix `B`. Substitution sends `f(x)` to `f(B x)`,
/// so variable `k` is replaced by row `k` of `B`; points move by `B^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearChange {
    field: PrimeField,
    matrix: Vec<Vec<u32>>,
    inverse: Vec<Vec<u32>>,
}

impl LinearChange {
    pub fn new(field: PrimeField, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("linear change must be square".into()));
        }
        let matrix: Vec<Vec<u32>> = matrix
            .into_iter()
            .map(|r| r.into_iter().map(|v| v % field.characteristic()).collect())
            .collect();
        let inverse = invert(field, &matrix)
            .ok_or_else(|| Error::SingularMatrix(format!("{n}x{n} coordinate change")))?;
        Ok(LinearChange { field, matrix, inverse })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let m: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
        LinearChange { field, matrix: m.clone(), inverse: m }
    }

    /// Uniformly random invertible matrix.
    pub fn random<R: rand::Rng>(field: PrimeField, n: usize, rng: &mut R) -> Self {
        loop {
            let m: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0..field.characteristic())).collect())
                .collect();
            if let Ok(c) = Self::new(field, m) {
                return c;
            }
        }
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == (i == j) as u32))
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange { field: self.field, matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    /// Images of the variables as linear forms.
    pub fn images(&self, ring: &Arc<Ring>) -> Vec<Polynomial> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .fold(Polynomial::zero(ring), |acc, (j, &c)| acc.add_scaled(&Polynomial::var(ring, j), c))
            })
            .collect()
    }

    pub fn substitute(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring().nvars() != self.size() {
            return Err(Error::RosterMismatch(format!(
                "change of size {} on a roster of {}",
                self.size(),
                f.ring().nvars()
            )));
        }
        if f.field() != self.field {
            return Err(Error::RosterMismatch("characteristic differs from coordinate change".into()));
        }
        Ok(f.substitute(&self.images(f.ring())))
    }

    /// `B^-1 p`: where a point of `V(f)` lands on `V(f(Bx))`.
    pub fn move_point(&self, p: &[u32]) -> Vec<u32> {
        mat_vec(self.field, &self.inverse, p)
    }
}

pub(crate) fn mat_vec(field: PrimeField, m: &[Vec<u32>], v: &[u32]) -> Vec<u32> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
        .collect()
}

fn invert(field: PrimeField, m: &[Vec<u32>]) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| (i == j) as u32));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = field.inv(a[col][col]);
        for v in a[col].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_CHAR;
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup() -> (PrimeField, Arc<Ring>) {
        let f = PrimeField::new(DEFAULT_CHAR).unwrap();
        (f, Ring::standard(3, f))
    }

    #[test]
    fn identity_is_noop() {
        let (f, r) = setup();
        let p = parse_polynomial("x0*x2 - x1^2 + 3*x0^2", &r).unwrap();
        assert_eq!(LinearChange::identity(f, 3).substitute(&p).unwrap(), p);
    }

    #[test]
    fn hand_expansion() {
        let (f, r) = setup();
        let m = LinearChange::new(f, vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        let p = parse_polynomial("x0*x2 - x1^2", &r).unwrap();
        let want = parse_polynomial("x0*x2 - 2*x0*x1 - x1^2", &r).unwrap();
        assert_eq!(m.substitute(&p).unwrap(), want);
    }

    #[test]
    fn singular_rejected() {
        let (f, _) = setup();
        let e = LinearChange::new(f, vec![vec![1, 2], vec![2, 4]]);
        assert!(matches!(e, Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let (f, r) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = parse_polynomial("x0*x2 - x1^2 + 5*x1*x2 - x2^2", &r).unwrap();
        for _ in 0..10 {
            let m = LinearChange::random(f, 3, &mut rng);
            let q = m.substitute(&p).unwrap();
            assert_eq!(m.inverse().substitute(&q).unwrap(), p);
        }
    }

    #[test]
    fn points_follow() {
        let (f, r) = setup();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = parse_polynomial("x0*x2 - x1^2", &r).unwrap();
        let pt = [1, 3, 9];
        assert_eq!(p.evaluate(&pt), 0);
        let m = LinearChange::random(f, 3, &mut rng);
        assert_eq!(m.substitute(&p).unwrap().evaluate(&m.move_point(&pt)), 0);
    }

    proptest! {
        #[test]
        fn substitution_is_homomorphism(seed in 0u64..1000, a in proptest::collection::vec(0u32..100, 4), b in proptest::collection::vec(0u32..100, 4)) {
            let (f, r) = setup();
            let m = LinearChange::random(f, 3, &mut ChaCha8Rng::seed_from_u64(seed));
            let p = parse_polynomial(&format!("{}*x0^2 + {}*x1*x2 + {}*x2 + {}", a[0], a[1], a[2], a[3]), &r).unwrap();
            let q = parse_polynomial(&format!("{}*x0 + {}*x1^2 + {}*x0*x2 + {}", b[0], b[1], b[2], b[3]), &r).unwrap();
            prop_assert_eq!(m.substitute(&p.mul(&q)).unwrap(), m.substitute(&p).unwrap().mul(&m.substitute(&q).unwrap()));
            prop_assert_eq!(m.substitute(&p.add(&q)).unwrap(), m.substitute(&p).unwrap().add(&m.substitute(&q).unwrap()));
        }
    }
}
