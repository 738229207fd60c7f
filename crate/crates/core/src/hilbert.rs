//! Hilbert series of quotients by homogeneous ideals.

use serde::Serialize;

use crate::error::Result;
use crate::groebner::Ideal;
use crate::monomial::{Monomial, MonomialOrder};

/// Numeric data read off `HS(R/I) = numerator(t) / (1 - t)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub numerator: Vec<i64>,
    /// Krull dimension of `R/I`; `-1` for the unit ideal.
    pub krull_dim: i64,
    pub dim_proj: i64,
    pub degree: i64,
    pub codim: i64,
    pub delta: i64,
    pub hilbert_function: Vec<u64>,
}

/// Hilbert data of `R/I`, with the Hilbert function tabulated for degrees
/// `0..=up_to`.
pub fn hilbert(ideal: &Ideal, up_to: u32) -> Result<HilbertData> {
    let gb = ideal.groebner(MonomialOrder::GrevLex)?;
    Ok(hilbert_from_leads(gb.leading_monomials(), ideal.ring().nvars(), up_to))
}

pub fn hilbert_from_leads(leads: &[Monomial], n: usize, up_to: u32) -> HilbertData {
    let numerator = trim(numerator(leads.to_vec()));
    let hf = (0..=up_to).map(|d| hilbert_function_value(&numerator, n, d)).collect();
    if numerator.iter().all(|&c| c == 0) {
        return HilbertData {
            numerator: vec![0],
            krull_dim: -1,
            dim_proj: -2,
            degree: 0,
            codim: n as i64 + 1,
            delta: -(n as i64) - 1,
            hilbert_function: hf,
        };
    }
    let mut q = numerator.clone();
    let mut k = 0;
    while q.iter().sum::<i64>() == 0 {
        q = divide_one_minus_t(&q);
        k += 1;
    }
    let krull = n as i64 - k;
    let degree: i64 = q.iter().sum();
    let codim = n as i64 - krull;
    HilbertData {
        numerator,
        krull_dim: krull,
        dim_proj: krull - 1,
        degree,
        codim,
        delta: degree - codim,
        hilbert_function: hf,
    }
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

/// Exact division of a polynomial vanishing at 1 by `1 - t`.
fn divide_one_minus_t(p: &[i64]) -> Vec<i64> {
    // p = (1 - t) q  =>  q_k = sum_{i <= k} p_i
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for &c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    if q.is_empty() {
        q.push(0);
    }
    q
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

fn hilbert_function_value(num: &[i64], n: usize, d: u32) -> u64 {
    let mut s: i64 = 0;
    for (k, &c) in num.iter().enumerate() {
        let e = d as i64 - k as i64;
        if e < 0 {
            break;
        }
        s += c * if n == 0 { (e == 0) as i64 } else { binom(e + n as i64 - 1, n as i64 - 1) };
    }
    s.max(0) as u64
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn mul_poly(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn add_poly(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = vec![0; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        r[i] += x;
    }
    r
}

/// Numerator of the Hilbert series of `k[x]/(gens)` by pivot splitting.
fn numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(vec![1], |acc, m| {
            let mut f = vec![0; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] = -1;
            mul_poly(&acc, &f)
        });
    }
    let n = gens[0].nvars();
    let pivot = (0..n)
        .max_by_key(|&v| (gens.iter().filter(|m| m.exp(v) > 0 && m.degree() > 1).count(), std::cmp::Reverse(v)))
        .expect("nonempty roster");
    let x = Monomial::var(n, pivot);
    let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exp(pivot) == 0).copied().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| if m.exp(pivot) > 0 { x.quotient_of(m) } else { *m })
        .collect();
    let a = numerator(plus);
    let b = numerator(colon);
    let mut tb = vec![0];
    tb.extend(b);
    add_poly(&a, &tb)
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

    /// Counts standard monomials directly.
    fn count_standard(i: &Ideal, d: u32) -> u64 {
        let g = i.groebner(MonomialOrder::GrevLex).unwrap();
        Monomial::all_of_degree(i.ring().nvars(), d).iter().filter(|m| g.is_standard(m)).count() as u64
    }

    #[test]
    fn free_ring() {
        let h = hilbert(&ideal(4, &[]), 3).unwrap();
        assert_eq!(h.numerator, vec![1]);
        assert_eq!(h.dim_proj, 3);
        assert_eq!(h.degree, 1);
        assert_eq!(h.hilbert_function, vec![1, 4, 10, 20]);
    }

    #[test]
    fn twisted_cubic() {
        let i = ideal(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let h = hilbert(&i, 6).unwrap();
        assert_eq!((h.dim_proj, h.degree, h.codim, h.delta), (1, 3, 2, 1));
        for d in 0..=6 {
            assert_eq!(h.hilbert_function[d as usize], count_standard(&i, d));
        }
    }

    #[test]
    fn unit_ideal() {
        let h = hilbert(&ideal(3, &["1"]), 2).unwrap();
        assert_eq!(h.krull_dim, -1);
        assert_eq!(h.hilbert_function, vec![0, 0, 0]);
    }

    #[test]
    fn two_planes() {
        let i = ideal(5, &["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
        let h = hilbert(&i, 6).unwrap();
        assert_eq!(h.krull_dim, 3);
        assert_eq!(h.degree, 2);
        assert_eq!(h.codim, 2);
        for d in 0..=6 {
            assert_eq!(h.hilbert_function[d as usize], count_standard(&i, d));
        }
    }
}
