//! Sparse polynomials over a prime field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// Variable roster plus coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: PrimeField,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, field: PrimeField) -> Result<Arc<Ring>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_VARS {
            return Err(Error::InvalidParameter(format!("at most {MAX_VARS} variables supported")));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidParameter(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidParameter(format!("duplicate variable name `{n}`")));
            }
        }
        Ok(Arc::new(Ring { names, field }))
    }

    /// Roster `x0, ..., x{n-1}`.
    pub fn standard(n: usize, field: PrimeField) -> Arc<Ring> {
        Ring::new((0..n).map(|i| format!("x{i}")), field).expect("standard roster is valid")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same field, roster with the first `k` variables removed.
    pub fn drop_front(&self, k: usize) -> Arc<Ring> {
        Arc::new(Ring { names: self.names[k..].to_vec(), field: self.field })
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self.field != other.field {
            return Err(Error::RosterMismatch(format!(
                "characteristic {} vs {}",
                self.field.characteristic(),
                other.field.characteristic()
            )));
        }
        if self.names != other.names {
            return Err(Error::RosterMismatch(format!("{:?} vs {:?}", self.names, other.names)));
        }
        Ok(())
    }
}

/// A polynomial stored as terms sorted descending in grevlex.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && *self.ring == *other.ring
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: u32) -> Self {
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn var(ring: &Arc<Ring>, v: usize) -> Self {
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), v), 1)] }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u32) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and
    /// dropping zero coefficients.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field();
        terms.sort_by(|a, b| MonomialOrder::GrevLex.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|t| t.0 == *m).map_or(0, |t| t.1)
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, u32)> {
        if order == MonomialOrder::GrevLex {
            return self.terms.first().copied();
        }
        self.terms.iter().copied().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    /// Maximal exponent of variable `v` among the terms.
    pub fn max_exp(&self, v: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, 1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, self.field().neg(1))
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Polynomial, c: u32) -> Polynomial {
        debug_assert_eq!(*self.ring, *other.ring);
        let f = self.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                MonomialOrder::GrevLex.cmp(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0, v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.field();
        if c % f.characteristic() == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplication by a monomial preserves term order.
    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.field();
        if c % f.characteristic() == 0 {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|&(t, a)| (t.mul(m), f.mul(a, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(*self.ring, *other.ring);
        let f = self.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(&mb)).or_insert(0);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        Polynomial::from_terms(&self.ring, acc.into_iter().collect())
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::constant(&self.ring, 1);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Scales so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field().inv(c)),
        }
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.field();
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = f.mul(v, f.pow(point[i], e as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        let f = self.field();
        let mut terms = Vec::new();
        for &(m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut nm = m.without_var(v);
            for _ in 0..e - 1 {
                nm = nm.mul_var(v);
            }
            terms.push((nm, f.mul(c, f.from_i64(e as i64))));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Replaces variable `k` by `images[k]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let n = self.ring.nvars();
        assert_eq!(images.len(), n);
        let target = images.first().map_or_else(|| self.ring.clone(), |p| p.ring.clone());
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::constant(&target, 1)]; n];
        let mut out = Polynomial::zero(&target);
        for &(m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c);
            for (v, &e) in m.exponents().iter().enumerate() {
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap().mul(&images[v]);
                    powers[v].push(next);
                }
                if e > 0 {
                    t = t.mul(&powers[v][e as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Rewrites an x-front-free polynomial over the ring with the first `k`
    /// variables removed.
    pub fn drop_front(&self, k: usize, target: &Arc<Ring>) -> Result<Polynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            if (0..k).any(|v| m.exp(v) > 0) {
                return Err(Error::InvalidParameter("polynomial involves eliminated variables".into()));
            }
            terms.push((m.drop_front(k), c));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Embeds into a ring with `k` extra variables prepended.
    pub fn prepend_vars(&self, target: &Arc<Ring>) -> Polynomial {
        let k = target.nvars() - self.ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut e = vec![0u32; k];
                e.extend(m.exponents().iter().map(|&x| x as u32));
                (Monomial::from_exponents(&e).expect("fits"), c)
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = f.to_signed(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    write!(out, "-")?;
                }
            } else if s < 0 {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let mut factors = Vec::new();
            if mag != 1 || m.is_one() {
                factors.push(mag.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[v], e)),
                }
            }
            write!(out, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_CHAR;
    use proptest::prelude::*;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::standard(n, PrimeField::new(DEFAULT_CHAR).unwrap())
    }

    pub(crate) fn arb_poly(r: Arc<Ring>, deg: u32) -> impl Strategy<Value = Polynomial> {
        let n = r.nvars();
        proptest::collection::vec((proptest::collection::vec(0u32..=deg, n), 0u32..DEFAULT_CHAR), 0..6)
            .prop_map(move |ts| {
                let terms = ts
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e).unwrap(), c))
                    .collect();
                Polynomial::from_terms(&r, terms)
            })
    }

    #[test]
    fn display_and_degree() {
        let r = ring(3);
        let x = |i| Polynomial::var(&r, i);
        let f = x(0).mul(&x(2)).sub(&x(1).pow(2));
        assert_eq!(f.to_string(), "-x1^2 + x0*x2");
        assert_eq!(f.degree(), Some(2));
        assert!(f.is_homogeneous());
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn derivative_and_eval() {
        let r = ring(2);
        let x = |i| Polynomial::var(&r, i);
        let f = x(0).pow(3).add(&x(0).mul(&x(1)));
        let d = f.derivative(0);
        assert_eq!(d.evaluate(&[2, 5]), 3 * 4 + 5);
    }

    proptest! {
        #[test]
        fn ring_axioms(f in arb_poly(ring(3), 3), g in arb_poly(ring(3), 3), h in arb_poly(ring(3), 3)) {
            prop_assert_eq!(f.add(&g).mul(&h), f.mul(&h).add(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert!(f.sub(&f).is_zero());
        }

        #[test]
        fn degree_additive(a in proptest::collection::vec(0u32..3, 3), b in proptest::collection::vec(0u32..3, 3), c in 1u32..100) {
            let r = ring(3);
            let ma = Monomial::from_exponents(&a).unwrap();
            let mb = Monomial::from_exponents(&b).unwrap();
            let f = Polynomial::monomial(&r, ma, c).add(&Polynomial::monomial(&r, Monomial::all_of_degree(3, ma.degree())[0], 1));
            let g = Polynomial::monomial(&r, mb, 1);
            if !f.is_zero() {
                prop_assert_eq!(f.mul(&g).degree(), Some(ma.degree() + mb.degree()));
            }
        }
    }
}
