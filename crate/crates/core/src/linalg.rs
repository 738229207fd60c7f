//! Sparse row echelon forms over GF(p).

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::PrimeField;

/// Sparse vector: `(column, value)` pairs sorted by column, values nonzero.
pub type SparseVec = Vec<(u32, u32)>;

const NO_PIVOT: u32 = u32::MAX;

/// Incremental row echelon form. Each stored row has its first entry equal
/// to 1 in a column that no other row leads with.
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    scratch: Vec<u32>,
    queued: Vec<bool>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_PIVOT; ncols],
            scratch: vec![0; ncols],
            queued: vec![false; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_PIVOT
    }

    /// Eliminates pivot columns from `v`. With `full` false only the
    /// leading part is cleared: the result is zero iff `v` lies in the span.
    pub fn reduce(&mut self, v: &[(u32, u32)], full: bool) -> SparseVec {
        let f = self.field;
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::with_capacity(v.len() * 2);
        for &(c, x) in v {
            self.scratch[c as usize] = f.add(self.scratch[c as usize], x);
            if !self.queued[c as usize] {
                self.queued[c as usize] = true;
                heap.push(Reverse(c));
            }
        }
        let mut out = SparseVec::new();
        while let Some(Reverse(c)) = heap.pop() {
            let cu = c as usize;
            self.queued[cu] = false;
            let x = std::mem::take(&mut self.scratch[cu]);
            if x == 0 {
                continue;
            }
            let r = self.pivot_row[cu];
            if r == NO_PIVOT {
                out.push((c, x));
                if !full {
                    while let Some(Reverse(c2)) = heap.pop() {
                        let c2u = c2 as usize;
                        self.queued[c2u] = false;
                        let y = std::mem::take(&mut self.scratch[c2u]);
                        if y != 0 {
                            out.push((c2, y));
                        }
                    }
                    break;
                }
                continue;
            }
            let neg = f.neg(x);
            for &(c2, y) in &self.rows[r as usize][1..] {
                let c2u = c2 as usize;
                self.scratch[c2u] = f.add(self.scratch[c2u], f.mul(neg, y));
                if !self.queued[c2u] {
                    self.queued[c2u] = true;
                    heap.push(Reverse(c2));
                }
            }
        }
        out
    }

    /// Adds `v` to the row space. Returns true if the rank grew.
    pub fn insert(&mut self, v: &[(u32, u32)]) -> bool {
        let r = self.reduce(v, false);
        self.push_reduced(r)
    }

    /// Stores a vector already reduced by [`Echelon::reduce`].
    pub fn push_reduced(&mut self, mut r: SparseVec) -> bool {
        let Some(&(lead, x)) = r.first() else {
            return false;
        };
        if x != 1 {
            let inv = self.field.inv(x);
            for t in r.iter_mut() {
                t.1 = self.field.mul(t.1, inv);
            }
        }
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    pub fn contains(&mut self, v: &[(u32, u32)]) -> bool {
        self.reduce(v, false).is_empty()
    }
}

/// Rank of the matrix with the given rows.
pub fn rank(field: PrimeField, ncols: usize, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(&r);
    }
    e.rank()
}

/// Rank and a kernel basis of the map sending source basis vector `k` to
/// `images[k]` (a vector with `ntarget` columns). Kernel vectors are
/// sparse vectors over the source basis.
pub fn rank_and_kernel(field: PrimeField, ntarget: usize, images: &[SparseVec]) -> (usize, Vec<SparseVec>) {
    let nsrc = images.len();
    let mut e = Echelon::new(field, ntarget + nsrc);
    let mut kernel = Vec::new();
    for (k, img) in images.iter().enumerate() {
        let mut v = img.clone();
        v.push(((ntarget + k) as u32, 1));
        let r = e.reduce(&v, false);
        match r.first() {
            Some(&(lead, _)) if (lead as usize) < ntarget => {
                e.push_reduced(r);
            }
            Some(_) => kernel.push(r.into_iter().map(|(c, x)| (c - ntarget as u32, x)).collect()),
            None => unreachable!("tag column keeps the vector nonzero"),
        }
    }
    (e.rank(), kernel)
}

pub fn to_dense(field: PrimeField, v: &[(u32, u32)], n: usize) -> Vec<u32> {
    let mut d = vec![0; n];
    for &(c, x) in v {
        d[c as usize] = field.add(d[c as usize], x);
    }
    d
}

pub fn from_dense(v: &[u32]) -> SparseVec {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c as u32, x)).collect()
}

/// Sorts and merges a vector with possibly repeated columns.
pub fn normalize(field: PrimeField, mut v: Vec<(u32, u32)>) -> SparseVec {
    v.sort_unstable_by_key(|t| t.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (c, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = field.add(last.1, x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    /// Dense Gaussian elimination used as an oracle.
    fn dense_rank(field: PrimeField, mut m: Vec<Vec<u32>>) -> usize {
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, p);
            let inv = field.inv(m[rank][c]);
            let pr: Vec<u32> = m[rank].iter().map(|&x| field.mul(x, inv)).collect();
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let k = m[r][c];
                    for j in 0..ncols {
                        m[r][j] = field.sub(m[r][j], field.mul(k, pr[j]));
                    }
                }
            }
            m[rank] = pr;
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_rank() {
        let f = gf();
        let rows = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)], vec![(2, 5)]];
        assert_eq!(rank(f, 3, rows), 2);
    }

    #[test]
    fn kernel_of_projection() {
        let f = gf();
        let images = vec![vec![(0, 1)], vec![(0, 1)], vec![]];
        let (r, k) = rank_and_kernel(f, 1, &images);
        assert_eq!(r, 1);
        assert_eq!(k.len(), 2);
    }

    proptest! {
        #[test]
        fn matches_dense(m in proptest::collection::vec(proptest::collection::vec(prop_oneof![Just(0u32), 0u32..101], 6), 1..8)) {
            let f = gf();
            let sparse: Vec<SparseVec> = m.iter().map(|r| from_dense(r)).collect();
            let r = rank(f, 6, sparse.clone());
            prop_assert_eq!(r, dense_rank(f, m.clone()));
            let (r2, ker) = rank_and_kernel(f, 6, &sparse);
            prop_assert_eq!(r2, r);
            prop_assert_eq!(ker.len(), m.len() - r);
            for kv in &ker {
                let mut acc = vec![0u32; 6];
                for &(k, x) in kv {
                    for j in 0..6 {
                        acc[j] = f.add(acc[j], f.mul(x, m[k as usize][j]));
                    }
                }
                prop_assert!(acc.iter().all(|&x| x == 0));
            }
        }
    }
}
