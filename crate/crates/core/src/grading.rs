//! Fine multigradings compatible with a set of generators.
//!
//! Every weight vector `w` with `w . (a - b) = 0` for all pairs of
//! exponents `a`, `b` occurring in one generator makes the ideal
//! homogeneous. Koszul complexes then split into weight blocks.

use num_rational::Ratio;

use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    /// One row per independent weight, one column per variable.
    rows: Vec<Vec<i64>>,
    nvars: usize,
}

impl Grading {
    pub fn standard(nvars: usize) -> Self {
        Grading { rows: vec![vec![1; nvars]], nvars }
    }

    /// The finest grading making every polynomial homogeneous.
    pub fn detect(nvars: usize, polys: &[Polynomial]) -> Self {
        let mut diffs: Vec<Vec<Ratio<i64>>> = Vec::new();
        for p in polys {
            let t = p.terms();
            for k in 1..t.len() {
                diffs.push(
                    (0..nvars)
                        .map(|v| Ratio::from_integer(t[k].0.exp(v) as i64 - t[0].0.exp(v) as i64))
                        .collect(),
                );
            }
        }
        let null = nullspace(diffs, nvars);
        let rows: Vec<Vec<i64>> = null.into_iter().map(integerize).collect();
        if rows.is_empty() {
            return Grading::standard(nvars);
        }
        Grading { rows, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn weight(&self, m: &Monomial) -> Vec<i64> {
        self.rows
            .iter()
            .map(|r| r.iter().zip(m.exponents()).map(|(&w, &e)| w * e as i64).sum())
            .collect()
    }

    pub fn var_weight(&self, v: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[v]).collect()
    }

    /// Restriction to the variables after the first `k`.
    pub fn drop_front(&self, k: usize) -> Self {
        Grading { rows: self.rows.iter().map(|r| r[k..].to_vec()).collect(), nvars: self.nvars - k }
    }

    /// Extension by `k` leading variables of weight zero in every row
    /// plus standard degree.
    pub fn prepend(&self, k: usize) -> Self {
        let mut rows: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = vec![0; k];
                v.extend_from_slice(r);
                v
            })
            .collect();
        rows.push(vec![1; self.nvars + k]);
        Grading { rows, nvars: self.nvars + k }
    }
}

fn nullspace(mut m: Vec<Vec<Ratio<i64>>>, n: usize) -> Vec<Vec<Ratio<i64>>> {
    let zero = Ratio::from_integer(0);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != zero) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != zero {
                let k = m[i][c];
                let pr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= k * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![zero; n];
            v[f] = Ratio::from_integer(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][f];
            }
            v
        })
        .collect()
}

fn integerize(v: Vec<Ratio<i64>>) -> Vec<i64> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let l = v.iter().fold(1i64, |acc, x| acc / gcd(acc, *x.denom()) * *x.denom());
    let ints: Vec<i64> = v.iter().map(|x| (x * l).to_integer()).collect();
    let g = ints.iter().fold(0, |acc, &x| gcd(acc, x)).max(1);
    ints.into_iter().map(|x| x / g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, DEFAULT_CHAR};
    use crate::parse::parse_polynomial;
    use crate::poly::Ring;

    #[test]
    fn twisted_cubic_has_two_weights() {
        let r = Ring::standard(4, PrimeField::new(DEFAULT_CHAR).unwrap());
        let gens: Vec<Polynomial> = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]
            .iter()
            .map(|g| parse_polynomial(g, &r).unwrap())
            .collect();
        let g = Grading::detect(4, &gens);
        assert_eq!(g.rank(), 2);
        for p in &gens {
            let w0 = g.weight(&p.terms()[0].0);
            assert!(p.terms().iter().all(|t| g.weight(&t.0) == w0));
        }
    }

    #[test]
    fn generic_form_gives_standard_grading() {
        let r = Ring::standard(3, PrimeField::new(DEFAULT_CHAR).unwrap());
        let p = parse_polynomial("x0^2 + x1^2 + x2^2 + x0*x1", &r).unwrap();
        let g = Grading::detect(3, &[p]);
        assert_eq!(g.rank(), 1);
        assert_eq!(g.var_weight(0), g.var_weight(2));
    }

    #[test]
    fn free_ring_is_finely_graded() {
        assert_eq!(Grading::detect(4, &[]).rank(), 4);
    }
}
