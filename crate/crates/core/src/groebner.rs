//! Ideals, Buchberger's algorithm, normal forms and elimination.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::SparseVec;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

/// Default cap on the number of S-pairs reduced by one Buchberger run.
pub const DEFAULT_PAIR_BUDGET: usize = 500_000;

/// A homogeneous ideal given by generators.
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    bases: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            bases: Mutex::new(self.bases.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl Ideal {
    /// Drops zero generators and exact duplicates. Generators must be
    /// homogeneous.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            ring.check_same(g.ring())?;
            if g.is_zero() || out.contains(&g) {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::InvalidParameter(format!("generator `{g}` is not homogeneous")));
            }
            out.push(g);
        }
        Ok(Ideal { ring: ring.clone(), gens: out, bases: Mutex::new(HashMap::new()) })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new(), bases: Mutex::new(HashMap::new()) }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    /// Cached reduced Groebner basis.
    pub fn groebner(&self, order: MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        self.groebner_with_budget(order, DEFAULT_PAIR_BUDGET)
    }

    pub fn groebner_with_budget(&self, order: MonomialOrder, budget: usize) -> Result<Arc<GroebnerBasis>> {
        if let Some(g) = self.bases.lock().unwrap().get(&order) {
            return Ok(g.clone());
        }
        let g = Arc::new(buchberger_with_budget(self, order, budget)?);
        self.bases.lock().unwrap().insert(order, g.clone());
        Ok(g)
    }

    /// Membership of every generator of `other`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        let g = self.groebner(MonomialOrder::GrevLex)?;
        for f in &other.gens {
            if !g.normal_form(f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.groebner(MonomialOrder::GrevLex)?.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let g = self.groebner(MonomialOrder::GrevLex)?;
        Ok(g.leading_monomials().iter().any(|m| m.is_one()))
    }
}

/// Reduced monic Groebner basis.
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    /// Each element sorted descending in `order`, monic.
    elems: Vec<Vec<(Monomial, u32)>>,
    leads: Vec<Monomial>,
    tables: Mutex<HashMap<u32, Arc<DegreeTable>>>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("basis", &self.polynomials().iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elems.iter().map(|e| Polynomial::from_terms(&self.ring, e.clone())).collect()
    }

    /// Terms of element `k`, sorted descending in the basis order.
    pub fn terms(&self, k: usize) -> &[(Monomial, u32)] {
        &self.elems[k]
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads.iter().any(|l| l.divides(m))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(f.ring())?;
        let sorted = sort_terms(self.order, f.terms().to_vec());
        let r = reduce_full(self.ring.field(), self.order, sorted, &self.elems, &self.leads);
        Ok(Polynomial::from_terms(&self.ring, r))
    }

    /// Reduces every S-polynomial; true when all vanish.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let f = self.ring.field();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let s = s_polynomial(f, self.order, &self.elems[i], &self.elems[j]);
                if !reduce_full(f, self.order, s, &self.elems, &self.leads).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Checks the reduced-basis conditions.
    pub fn is_reduced(&self) -> bool {
        for (k, e) in self.elems.iter().enumerate() {
            if e.first().map(|t| t.1) != Some(1) {
                return false;
            }
            for (l, lead) in self.leads.iter().enumerate() {
                if l != k && e.iter().any(|t| lead.divides(&t.0)) {
                    return false;
                }
            }
        }
        true
    }

    /// Normal-form data for all monomials of degree `d`.
    pub fn degree_table(&self, d: u32) -> Arc<DegreeTable> {
        if let Some(t) = self.tables.lock().unwrap().get(&d) {
            return t.clone();
        }
        let t = Arc::new(DegreeTable::build(self, d));
        self.tables.lock().unwrap().insert(d, t.clone());
        t
    }
}

/// All monomials of one degree with their normal forms, expressed over the
/// standard monomials of that degree.
pub struct DegreeTable {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub index: HashMap<Monomial, u32>,
    /// Monomial index of each standard monomial.
    pub standard: Vec<u32>,
    /// Position among standard monomials, or `u32::MAX`.
    pub std_pos: Vec<u32>,
    /// Position among nonstandard monomials, or `u32::MAX`.
    pub nonstd_pos: Vec<u32>,
    pub nonstandard: Vec<u32>,
    /// Normal form of every monomial over standard positions.
    pub nf: Vec<SparseVec>,
}

impl DegreeTable {
    fn build(gb: &GroebnerBasis, d: u32) -> Self {
        let field = gb.ring.field();
        let n = gb.ring.nvars();
        let mut monomials = Monomial::all_of_degree(n, d);
        monomials.sort_by(|a, b| gb.order.cmp(a, b));
        let index: HashMap<Monomial, u32> =
            monomials.iter().enumerate().map(|(k, m)| (*m, k as u32)).collect();
        let mut std_pos = vec![u32::MAX; monomials.len()];
        let mut nonstd_pos = vec![u32::MAX; monomials.len()];
        let mut standard = Vec::new();
        let mut nonstandard = Vec::new();
        let mut divisor = vec![usize::MAX; monomials.len()];
        for (k, m) in monomials.iter().enumerate() {
            match gb.leads.iter().position(|l| l.divides(m)) {
                None => {
                    std_pos[k] = standard.len() as u32;
                    standard.push(k as u32);
                }
                Some(g) => {
                    nonstd_pos[k] = nonstandard.len() as u32;
                    nonstandard.push(k as u32);
                    divisor[k] = g;
                }
            }
        }
        let mut nf: Vec<SparseVec> = Vec::with_capacity(monomials.len());
        let mut acc = vec![0u32; standard.len()];
        let mut touched: Vec<u32> = Vec::new();
        for (k, m) in monomials.iter().enumerate() {
            if std_pos[k] != u32::MAX {
                nf.push(vec![(std_pos[k], 1)]);
                continue;
            }
            let g = &gb.elems[divisor[k]];
            let tau = gb.leads[divisor[k]].quotient_of(m);
            for &(t, c) in &g[1..] {
                let idx = index[&t.mul(&tau)] as usize;
                debug_assert!(idx < k);
                let neg = field.neg(c);
                for &(s, x) in &nf[idx] {
                    if acc[s as usize] == 0 {
                        touched.push(s);
                    }
                    acc[s as usize] = field.add(acc[s as usize], field.mul(neg, x));
                }
            }
            touched.sort_unstable();
            let mut v = SparseVec::with_capacity(touched.len());
            for &s in &touched {
                let x = std::mem::take(&mut acc[s as usize]);
                if x != 0 {
                    v.push((s, x));
                }
            }
            touched.clear();
            nf.push(v);
        }
        DegreeTable { degree: d, monomials, index, standard, std_pos, nonstd_pos, nonstandard, nf }
    }

    pub fn n_standard(&self) -> usize {
        self.standard.len()
    }

    pub fn n_nonstandard(&self) -> usize {
        self.nonstandard.len()
    }
}

fn sort_terms(order: MonomialOrder, mut t: Vec<(Monomial, u32)>) -> Vec<(Monomial, u32)> {
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

/// `a + c * m * b` for order-sorted term lists.
fn add_mul(
    field: PrimeField,
    order: MonomialOrder,
    a: &[(Monomial, u32)],
    b: &[(Monomial, u32)],
    m: &Monomial,
    c: u32,
) -> Vec<(Monomial, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let bm = if j < b.len() { Some(b[j].0.mul(m)) } else { None };
        let ord = match (i < a.len(), bm) {
            (true, Some(bm)) => order.cmp(&a[i].0, &bm),
            (true, None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((bm.unwrap(), field.mul(c, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = field.add(a[i].1, field.mul(c, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn reduce_full(
    field: PrimeField,
    order: MonomialOrder,
    mut f: Vec<(Monomial, u32)>,
    basis: &[Vec<(Monomial, u32)>],
    leads: &[Monomial],
) -> Vec<(Monomial, u32)> {
    let mut done: Vec<(Monomial, u32)> = Vec::new();
    let mut start = 0;
    loop {
        // find the first term at or after `start` divisible by a lead
        let mut hit = None;
        for (k, t) in f.iter().enumerate().skip(start) {
            if let Some(g) = leads.iter().position(|l| l.divides(&t.0)) {
                hit = Some((k, g));
                break;
            }
        }
        let Some((k, g)) = hit else {
            done.extend_from_slice(&f[start..]);
            return done;
        };
        done.extend_from_slice(&f[start..k]);
        let (m, c) = f[k];
        let tau = leads[g].quotient_of(&m);
        f = add_mul(field, order, &f[k..], &basis[g], &tau, field.neg(c));
        start = 0;
    }
}

fn s_polynomial(
    field: PrimeField,
    order: MonomialOrder,
    a: &[(Monomial, u32)],
    b: &[(Monomial, u32)],
) -> Vec<(Monomial, u32)> {
    let l = a[0].0.lcm(&b[0].0);
    let ta = a[0].0.quotient_of(&l);
    let tb = b[0].0.quotient_of(&l);
    let sa: Vec<(Monomial, u32)> = a[1..].iter().map(|&(m, c)| (m.mul(&ta), c)).collect();
    add_mul(field, order, &sa, &b[1..], &tb, field.neg(1))
}

fn make_monic(field: PrimeField, mut f: Vec<(Monomial, u32)>) -> Vec<(Monomial, u32)> {
    if let Some(&(_, c)) = f.first() {
        if c != 1 {
            let inv = field.inv(c);
            for t in f.iter_mut() {
                t.1 = field.mul(t.1, inv);
            }
        }
    }
    f
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with_budget(ideal, order, DEFAULT_PAIR_BUDGET)
}

/// Buchberger's algorithm with the normal selection strategy, the coprime
/// criterion and the chain criterion.
pub fn buchberger_with_budget(ideal: &Ideal, order: MonomialOrder, budget: usize) -> Result<GroebnerBasis> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    if let MonomialOrder::Block { front } = order {
        if front > n {
            return Err(Error::RosterMismatch(format!("block of {front} on {n} variables")));
        }
    }
    let field = ring.field();
    let mut basis: Vec<Vec<(Monomial, u32)>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    // pending pairs keyed by (degree, position in order of lcm)
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: Vec<Vec<(Monomial, u32)>> = ideal
        .generators()
        .iter()
        .map(|g| sort_terms(order, g.terms().to_vec()))
        .collect();
    pending.sort_by_key(|g| g[0].0.degree());
    let mut pi = 0;
    let mut reductions = 0usize;

    loop {
        let next_gen_deg = pending.get(pi).map(|g| g[0].0.degree());
        let next_pair_deg = pairs.iter().next().map(|p| p.0);
        let deg = match (next_gen_deg, next_pair_deg) {
            (None, None) => break,
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
        };
        let mut todo: Vec<Vec<(Monomial, u32)>> = Vec::new();
        while pi < pending.len() && pending[pi][0].0.degree() == deg {
            todo.push(pending[pi].clone());
            pi += 1;
        }
        let mut batch: Vec<(usize, usize)> =
            pairs.iter().take_while(|p| p.0 == deg).map(|p| (p.1, p.2)).collect();
        batch.sort_by(|&(a, b), &(c, d)| {
            let l1 = leads[a].lcm(&leads[b]);
            let l2 = leads[c].lcm(&leads[d]);
            order.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
        });
        for (a, b) in batch {
            pairs.remove(&pair_key(&leads, a, b));
            let l = leads[a].lcm(&leads[b]);
            let chain = (0..leads.len()).any(|k| {
                k != a
                    && k != b
                    && leads[k].divides(&l)
                    && !pairs.contains(&pair_key(&leads, k, a))
                    && !pairs.contains(&pair_key(&leads, k, b))
            });
            if chain {
                continue;
            }
            todo.push(s_polynomial(field, order, &basis[a], &basis[b]));
        }
        for f in todo {
            reductions += 1;
            if reductions > budget {
                return Err(Error::BudgetExceeded(format!("more than {budget} S-pair reductions")));
            }
            let r = reduce_full(field, order, f, &basis, &leads);
            if r.is_empty() {
                continue;
            }
            let r = make_monic(field, r);
            let t = basis.len();
            let lt = r[0].0;
            basis.push(r);
            leads.push(lt);
            for k in 0..t {
                if leads[k].is_coprime(&lt) {
                    continue;
                }
                pairs.insert(pair_key(&leads, k, t));
            }
        }
    }

    // minimalize then interreduce
    let mut keep: Vec<usize> = Vec::new();
    for k in 0..basis.len() {
        let redundant = (0..basis.len()).any(|l| {
            l != k && leads[l].divides(&leads[k]) && (leads[l] != leads[k] || l < k)
        });
        if !redundant {
            keep.push(k);
        }
    }
    keep.sort_by(|&a, &b| order.cmp(&leads[a], &leads[b]));
    let min_basis: Vec<Vec<(Monomial, u32)>> = keep.iter().map(|&k| basis[k].clone()).collect();
    let min_leads: Vec<Monomial> = keep.iter().map(|&k| leads[k]).collect();
    let mut elems = Vec::with_capacity(min_basis.len());
    for (k, g) in min_basis.iter().enumerate() {
        let others: Vec<Vec<(Monomial, u32)>> =
            min_basis.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, e)| e.clone()).collect();
        let other_leads: Vec<Monomial> =
            min_leads.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, e)| *e).collect();
        let tail = reduce_full(field, order, g[1..].to_vec(), &others, &other_leads);
        let mut e = vec![g[0]];
        e.extend(tail);
        elems.push(e);
    }
    Ok(GroebnerBasis { ring, order, elems, leads: min_leads, tables: Mutex::new(HashMap::new()) })
}

fn pair_key(leads: &[Monomial], a: usize, b: usize) -> (u32, usize, usize) {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (leads[a].lcm(&leads[b]).degree(), a, b)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

/// `I ∩ k[x_front..]` presented over the roster without the first `front`
/// variables.
pub fn eliminate(ideal: &Ideal, front: usize) -> Result<Ideal> {
    let n = ideal.ring().nvars();
    if front >= n {
        return Err(Error::InvalidParameter("cannot eliminate every variable".into()));
    }
    if front == 0 {
        return Ok(ideal.clone());
    }
    let gb = ideal.groebner(MonomialOrder::Block { front })?;
    let target = ideal.ring().drop_front(front);
    let gens = gb
        .polynomials()
        .into_iter()
        .filter(|g| g.terms().iter().all(|t| (0..front).all(|v| t.0.exp(v) == 0)))
        .map(|g| g.drop_front(front, &target))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(&target, gens)
}

/// A minimal homogeneous generating set, extracted degree by degree.
pub fn minimal_generators(ideal: &Ideal) -> Result<Ideal> {
    let mut gens: Vec<Polynomial> = ideal.generators().to_vec();
    gens.sort_by_key(|g| g.degree());
    let mut chosen: Vec<Polynomial> = Vec::new();
    for g in gens {
        let partial = Ideal::new(ideal.ring(), chosen.clone())?;
        let gb = partial.groebner(MonomialOrder::GrevLex)?;
        if !gb.normal_form(&g)?.is_zero() {
            chosen.push(g.monic(MonomialOrder::GrevLex));
        }
    }
    Ideal::new(ideal.ring(), chosen)
}
