//! Prime-field arithmetic on `u32` residues.

use crate::error::{Error, Result};

/// Default characteristic used throughout the crate.
pub const DEFAULT_CHAR: u32 = 32003;

/// The prime field GF(p). Scalars are plain `u32` residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("characteristic {p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidParameter(format!("characteristic {p} exceeds 2^31")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, mut a: u32, mut e: u64) -> u32 {
        let mut r = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        // extended Euclid on i64
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn div(self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub fn to_signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_composite() {
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn signed_representative() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.to_signed(6), -1);
        assert_eq!(f.to_signed(3), 3);
        assert_eq!(f.from_i64(-2), 5);
    }

    proptest! {
        #[test]
        fn inverse_law(a in 1u32..32003) {
            let f = PrimeField::new(DEFAULT_CHAR).unwrap();
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }

        #[test]
        fn distributive(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::new(DEFAULT_CHAR).unwrap();
            prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
            prop_assert_eq!(f.add(f.sub(a, b), b), a);
        }
    }
}
