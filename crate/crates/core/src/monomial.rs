//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximal roster size supported by the dense exponent representation.
pub const MAX_VARS: usize = 32;

/// Dense exponent vector with a cached total degree.
///
/// Exponents are stored in a fixed array so monomials are `Copy` and hash
/// cheaply; only the first `len` slots are meaningful.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    len: u8,
    deg: u16,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Monomial { exps: [0; MAX_VARS], len: nvars as u8, deg: 0 }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[v] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::InvalidParameter(format!("at most {MAX_VARS} variables supported")));
        }
        let mut m = Self::one(exps.len());
        let mut deg = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            if e > u8::MAX as u32 {
                return Err(Error::InvalidParameter(format!("exponent {e} exceeds {}", u8::MAX)));
            }
            m.exps[i] = e as u8;
            deg += e;
        }
        m.deg = deg as u16;
        Ok(m)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    #[inline]
    pub fn exp(&self, v: usize) -> u32 {
        self.exps[v] as u32
    }

    #[inline]
    pub fn exponents(&self) -> &[u8] {
        &self.exps[..self.len as usize]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len, other.len);
        let mut r = *self;
        for i in 0..self.len as usize {
            r.exps[i] = self.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        r.deg = self.deg + other.deg;
        r
    }

    #[inline]
    pub fn mul_var(&self, v: usize) -> Monomial {
        let mut r = *self;
        r.exps[v] = r.exps[v].checked_add(1).expect("exponent overflow");
        r.deg += 1;
        r
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg
            && (0..self.len as usize).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut r = *other;
        for i in 0..self.len as usize {
            r.exps[i] -= self.exps[i];
        }
        r.deg = other.deg - self.deg;
        r
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        let mut deg = 0u16;
        for i in 0..self.len as usize {
            r.exps[i] = self.exps[i].max(other.exps[i]);
            deg += r.exps[i] as u16;
        }
        r.deg = deg;
        r
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..self.len as usize).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Removes the first `k` variables (which must have exponent zero).
    pub fn drop_front(&self, k: usize) -> Monomial {
        let n = self.len as usize - k;
        let mut r = Monomial::one(n);
        r.exps[..n].copy_from_slice(&self.exps[k..self.len as usize]);
        r.deg = r.exps[..n].iter().map(|&e| e as u16).sum();
        r
    }

    /// Sets the exponent of `v` to zero.
    pub fn without_var(&self, v: usize) -> Monomial {
        let mut r = *self;
        r.deg -= r.exps[v] as u16;
        r.exps[v] = 0;
        r
    }

    /// Enumerates all monomials of degree `d` in `n` variables, in
    /// descending lexicographic order of exponent vectors.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Monomial::one(0));
                }
                return;
            }
            if v == n - 1 {
                cur[v] = left;
                out.push(Monomial::from_exponents(cur).expect("degree fits"));
                cur[v] = 0;
                return;
            }
            for e in (0..=left).rev() {
                cur[v] = e;
                rec(v + 1, left - e, cur, out);
            }
            cur[v] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// A monomial order on a fixed roster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// The first `front` variables form a block compared by grevlex before
    /// the remaining variables are compared by grevlex.
    Block { front: usize },
}

impl MonomialOrder {
    /// The x0-elimination order used for projections from `(1:0:...:0)`.
    pub const BLOCK_X0: MonomialOrder = MonomialOrder::Block { front: 1 };

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::GrevLex => grevlex(a.exponents(), b.exponents(), a.deg as u32, b.deg as u32),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Block { front } => {
                let (af, ar) = a.exponents().split_at(front);
                let (bf, br) = b.exponents().split_at(front);
                let daf: u32 = af.iter().map(|&e| e as u32).sum();
                let dbf: u32 = bf.iter().map(|&e| e as u32).sum();
                grevlex(af, bf, daf, dbf).then_with(|| {
                    grevlex(ar, br, a.deg as u32 - daf, b.deg as u32 - dbf)
                })
            }
        }
    }

    /// Checked comparison used by the public API.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::RosterMismatch(format!(
                "monomials over {} and {} variables",
                a.nvars(),
                b.nvars()
            )));
        }
        if let MonomialOrder::Block { front } = *self {
            if front > a.nvars() {
                return Err(Error::RosterMismatch(format!(
                    "block of {front} variables on a roster of {}",
                    a.nvars()
                )));
            }
        }
        Ok(self.cmp(a, b))
    }
}

#[inline]
fn grevlex(a: &[u8], b: &[u8], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn grevlex_example() {
        // x1^2 vs x0*x2
        let o = MonomialOrder::GrevLex;
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn block_front_dominates() {
        let o = MonomialOrder::BLOCK_X0;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn reflexive() {
        for o in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::BLOCK_X0] {
            let a = m(&[1, 2, 3]);
            assert_eq!(o.cmp(&a, &a), Ordering::Equal);
        }
    }

    #[test]
    fn roster_mismatch() {
        assert!(MonomialOrder::GrevLex.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn enumerate_degree() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(4, 0).len(), 1);
        assert_eq!(Monomial::all_of_degree(10, 3).len(), 220);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 4).prop_map(|v| m(&v))
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::GrevLex),
            Just(MonomialOrder::Lex),
            (0usize..=4).prop_map(|front| MonomialOrder::Block { front }),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(o in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
            }
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert!(o.cmp(&Monomial::one(4), &a) != Ordering::Greater);
        }
    }
}
