//! Buchberger's algorithm, normal forms, elimination, Krull dimension and
//! degrees of zero-dimensional ideals.

use crate::field::Elem;
use crate::poly::{grevlex_cmp, Exponents, PolyError, Polynomial, Ring};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum IdealError {
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("all generators are zero")]
    ZeroIdeal,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("positive-dimensional locus detected in affine cell {0}")]
    PositiveDimensionalCell(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminate the named variables first: degrees in the elimination block
    /// dominate, grevlex within each block.
    Block { elim: Vec<String> },
}

impl MonomialOrder {
    /// Compare exponent vectors in `ring`'s variable order.
    pub fn cmp(&self, ring: &Ring, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_cmp(a, b),
            MonomialOrder::Lex => {
                for i in 0..a.len() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { elim } => {
                let mask: Vec<bool> = ring.vars.iter().map(|v| elim.contains(v)).collect();
                let (pa, ra): (Vec<u32>, Vec<u32>) = split(a, &mask);
                let (pb, rb): (Vec<u32>, Vec<u32>) = split(b, &mask);
                match grevlex_cmp(&pa, &pb) {
                    Ordering::Equal => grevlex_cmp(&ra, &rb),
                    o => o,
                }
            }
        }
    }
}

fn split(e: &[u32], mask: &[bool]) -> (Vec<u32>, Vec<u32>) {
    let mut first = vec![];
    let mut rest = vec![];
    for (x, m) in e.iter().zip(mask) {
        if *m {
            first.push(*x);
        } else {
            rest.push(*x);
        }
    }
    (first, rest)
}

/// Budgets for Gröbner runs; exceeding them is a clean error.
#[derive(Debug, Clone, Copy)]
pub struct GbBudget {
    pub max_pairs: usize,
    pub degree_cap: u32,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget { max_pairs: 2_000_000, degree_cap: 40 }
    }
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ring: Arc<Ring>,
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

fn leading_under<'a>(p: &'a Polynomial, order: &MonomialOrder) -> (&'a Exponents, &'a Elem) {
    p.terms
        .iter()
        .max_by(|(a, _), (b, _)| order.cmp(&p.ring, a, b))
        .expect("nonzero polynomial")
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm_exp(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Remainder of multivariate division of `p` by `divisors` under `order`.
pub fn reduce(p: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let ring = p.ring.clone();
    let f = &ring.field;
    let lt: Vec<(Exponents, Elem)> = divisors
        .iter()
        .map(|d| {
            let (e, c) = leading_under(d, order);
            (e.clone(), c.clone())
        })
        .collect();
    let mut work = p.clone();
    let mut remainder = Polynomial::zero(&ring);
    while !work.is_zero() {
        let (le, lc) = {
            let (e, c) = leading_under(&work, order);
            (e.clone(), c.clone())
        };
        let mut reduced_once = false;
        for (i, (de, dc)) in lt.iter().enumerate() {
            if divides(de, &le) {
                let shift: Exponents = le.iter().zip(de).map(|(x, y)| x - y).collect();
                let coeff = f.div(&lc, dc).expect("leading coefficient nonzero");
                let sub = Polynomial::monomial(&ring, shift, coeff);
                work = work.sub(&sub.mul(&divisors[i]).expect("same ring")).expect("same ring");
                reduced_once = true;
                break;
            }
        }
        if !reduced_once {
            let mut t = Polynomial::zero(&ring);
            t.terms.insert(le.clone(), lc.clone());
            remainder = remainder.add(&t).expect("same ring");
            work.terms.remove(&le);
        }
    }
    remainder
}

/// Buchberger's algorithm with the normal selection strategy and both
/// pair-pruning criteria; output is the reduced Gröbner basis, sorted by
/// descending leading term for determinism.
pub fn buchberger(
    gens: &[Polynomial],
    order: MonomialOrder,
    budget: GbBudget,
) -> Result<GroebnerBasis, IdealError> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Err(IdealError::ZeroIdeal);
    }
    let ring = basis[0].ring.clone();
    for p in &basis {
        if p.ring.vars != ring.vars || p.ring.field != ring.field {
            return Err(IdealError::Poly(PolyError::RingMismatch));
        }
    }
    let f = ring.field.clone();

    let mut pairs: Vec<(usize, usize)> = vec![];
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    let mut processed = 0usize;

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let lcm_of = |&(i, j): &(usize, usize), basis: &[Polynomial]| -> Exponents {
            lcm_exp(leading_under(&basis[i], &order).0, leading_under(&basis[j], &order).0)
        };
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| order.cmp(&ring, &lcm_of(a, &basis), &lcm_of(b, &basis)))
            .map(|(k, _)| k)
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        processed += 1;
        if processed > budget.max_pairs {
            return Err(IdealError::Budget(format!("pair budget {} exhausted", budget.max_pairs)));
        }

        let (ei, ci) = {
            let (e, c) = leading_under(&basis[i], &order);
            (e.clone(), c.clone())
        };
        let (ej, cj) = {
            let (e, c) = leading_under(&basis[j], &order);
            (e.clone(), c.clone())
        };
        let lcm = lcm_exp(&ei, &ej);
        // first Buchberger criterion: coprime leading terms
        if lcm.iter().zip(ei.iter().zip(&ej)).all(|(l, (a, b))| *l == a + b) {
            continue;
        }
        // chain criterion: some other basis element divides the lcm and both
        // companion pairs were already treated (not pending)
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(leading_under(&basis[k], &order).0, &lcm)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if lcm.iter().map(|&e| e as u64).sum::<u64>() > budget.degree_cap as u64 {
            return Err(IdealError::Budget(format!(
                "S-polynomial degree exceeds cap {}",
                budget.degree_cap
            )));
        }

        let shift_i: Exponents = lcm.iter().zip(&ei).map(|(l, e)| l - e).collect();
        let shift_j: Exponents = lcm.iter().zip(&ej).map(|(l, e)| l - e).collect();
        let mi = Polynomial::monomial(&ring, shift_i, f.inv(&ci).expect("nonzero"));
        let mj = Polynomial::monomial(&ring, shift_j, f.inv(&cj).expect("nonzero"));
        let spoly = mi
            .mul(&basis[i])
            .expect("same ring")
            .sub(&mj.mul(&basis[j]).expect("same ring"))
            .expect("same ring");
        let rem = reduce(&spoly, &basis, &order);
        if !rem.is_zero() {
            let idx = basis.len();
            for k in 0..idx {
                pairs.push((k, idx));
            }
            basis.push(rem);
        }
    }

    // minimalize: drop generators whose leading term is divisible by another's
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j
                && keep[i]
                && keep[j]
                && divides(leading_under(&basis[j], &order).0, leading_under(&basis[i], &order).0)
            {
                // break ties deterministically on equal leading terms
                if leading_under(&basis[j], &order).0 == leading_under(&basis[i], &order).0 && j > i
                {
                    continue;
                }
                keep[i] = false;
            }
        }
    }
    let minimal: Vec<Polynomial> =
        basis.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| p.clone()).collect();
    // tail-reduce each against the others and make monic
    let mut reduced_basis = vec![];
    for (i, p) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
        let r = if others.is_empty() { p.clone() } else { reduce(p, &others, &order) };
        if r.is_zero() {
            continue;
        }
        let lc = leading_under(&r, &order).1.clone();
        reduced_basis.push(r.scale(&f.inv(&lc).expect("nonzero")));
    }
    reduced_basis.sort_by(|a, b| {
        order.cmp(&ring, leading_under(b, &order).0, leading_under(a, &order).0)
    });
    Ok(GroebnerBasis { ring, generators: reduced_basis, order, reduced: true })
}

/// Normal form of `p` modulo a Gröbner basis; zero iff `p` is in the ideal.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, IdealError> {
    if p.ring.vars != gb.ring.vars || p.ring.field != gb.ring.field {
        return Err(IdealError::Poly(PolyError::RingMismatch));
    }
    Ok(reduce(p, &gb.generators, &gb.order))
}

pub fn ideal_member(
    p: &Polynomial,
    gens: &[Polynomial],
    budget: GbBudget,
) -> Result<bool, IdealError> {
    let gb = buchberger(gens, MonomialOrder::Grevlex, budget)?;
    Ok(normal_form(p, &gb)?.is_zero())
}

/// Generators of the elimination ideal obtained by dropping `drop`.
pub fn eliminate(
    gens: &[Polynomial],
    drop: &[String],
    budget: GbBudget,
) -> Result<Vec<Polynomial>, IdealError> {
    if drop.is_empty() {
        return Ok(buchberger(gens, MonomialOrder::Grevlex, budget)?.generators);
    }
    let gb = buchberger(gens, MonomialOrder::Block { elim: drop.to_vec() }, budget)?;
    let ring = gb.ring.clone();
    let drop_idx: Vec<usize> =
        drop.iter().filter_map(|v| ring.var_index(v)).collect();
    Ok(gb
        .generators
        .into_iter()
        .filter(|p| p.terms.keys().all(|e| drop_idx.iter().all(|&i| e[i] == 0)))
        .collect())
}

/// Krull dimension of the affine variety, from maximal independent variable
/// sets modulo the leading-term ideal. Returns -1 for the unit ideal.
pub fn krull_dimension(gb: &GroebnerBasis) -> i64 {
    let lts: Vec<Exponents> =
        gb.generators.iter().map(|p| leading_under(p, &gb.order).0.clone()).collect();
    if lts.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return -1;
    }
    let n = gb.ring.nvars();
    let mut best = 0i64;
    for subset in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| subset >> i & 1 == 1).collect();
        // independent iff no leading term is supported entirely inside the set
        let independent = lts.iter().all(|e| {
            !(0..n).filter(|&i| e[i] > 0).all(|i| members.contains(&i))
        });
        if independent {
            best = best.max(members.len() as i64);
        }
    }
    best
}

/// Vector-space dimension of the quotient ring for a zero-dimensional ideal
/// (number of standard monomials under the staircase).
pub fn zero_dim_degree(gb: &GroebnerBasis) -> Result<u64, IdealError> {
    let lts: Vec<Exponents> =
        gb.generators.iter().map(|p| leading_under(p, &gb.order).0.clone()).collect();
    if lts.iter().any(|e| e.iter().all(|&x| x == 0)) {
        return Ok(0); // unit ideal: empty variety
    }
    let n = gb.ring.nvars();
    // bound in each variable from pure powers in the leading-term ideal
    let mut bounds = vec![None; n];
    for e in &lts {
        if let Some(i) = single_support(e) {
            let b = bounds[i].get_or_insert(e[i]);
            *b = (*b).min(e[i]);
        }
    }
    let bounds: Vec<u32> = bounds
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(IdealError::NotZeroDimensional)?;
    let mut count = 0u64;
    let mut cursor = vec![0u32; n];
    'outer: loop {
        if !lts.iter().any(|e| divides(e, &cursor)) {
            count += 1;
        }
        for i in 0..n {
            cursor[i] += 1;
            if cursor[i] < bounds[i] {
                continue 'outer;
            }
            cursor[i] = 0;
        }
        break;
    }
    Ok(count)
}

fn single_support(e: &[u32]) -> Option<usize> {
    let mut support = e.iter().enumerate().filter(|(_, &x)| x > 0);
    let first = support.next()?;
    if support.next().is_some() {
        None
    } else {
        Some(first.0)
    }
}

/// Degree of a zero-dimensional projective scheme cut out by homogeneous
/// `gens`, via the disjoint affine cells {x_i = 1, x_j = 0 for j < i}.
pub fn projective_point_count(gens: &[Polynomial], budget: GbBudget) -> Result<u64, IdealError> {
    let cells = projective_cell_degrees(gens, budget)?;
    Ok(cells.iter().sum())
}

/// Per-cell degrees; errors if any cell is positive-dimensional.
pub fn projective_cell_degrees(
    gens: &[Polynomial],
    budget: GbBudget,
) -> Result<Vec<u64>, IdealError> {
    let live: Vec<&Polynomial> = gens.iter().filter(|p| !p.is_zero()).collect();
    if live.is_empty() {
        return Err(IdealError::ZeroIdeal);
    }
    let ring = live[0].ring.clone();
    let n = ring.nvars();
    let mut out = vec![];
    for i in 0..n {
        let cell_vars: Vec<&str> =
            ring.vars.iter().skip(i + 1).map(|s| s.as_str()).collect();
        let cell_ring = Ring::from_names(
            ring.field.clone(),
            cell_vars.iter().map(|s| s.to_string()).collect(),
        );
        let mut images: BTreeMap<String, Polynomial> = BTreeMap::new();
        for (j, v) in ring.vars.iter().enumerate() {
            match j.cmp(&i) {
                Ordering::Less => {
                    images.insert(v.clone(), Polynomial::zero(&cell_ring));
                }
                Ordering::Equal => {
                    images.insert(v.clone(), Polynomial::one(&cell_ring));
                }
                Ordering::Greater => {}
            }
        }
        let cell_gens: Vec<Polynomial> = live
            .iter()
            .map(|p| p.substitute(&images, &cell_ring))
            .collect::<Result<_, _>>()?;
        if cell_ring.nvars() == 0 {
            // last cell is the single point (0:...:0:1)
            out.push(if cell_gens.iter().all(|p| p.is_zero()) { 1 } else { 0 });
            continue;
        }
        if cell_gens.iter().all(|p| p.is_zero()) {
            return Err(IdealError::PositiveDimensionalCell(i));
        }
        let gb = buchberger(&cell_gens, MonomialOrder::Grevlex, budget)?;
        match zero_dim_degree(&gb) {
            Ok(d) => out.push(d),
            Err(IdealError::NotZeroDimensional) => {
                return Err(IdealError::PositiveDimensionalCell(i))
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Check that every S-polynomial of the basis reduces to zero.
pub fn verify_spolys_reduce(gb: &GroebnerBasis) -> bool {
    let f = &gb.ring.field;
    for i in 0..gb.generators.len() {
        for j in 0..i {
            let (ei, ci) = leading_under(&gb.generators[i], &gb.order);
            let (ej, cj) = leading_under(&gb.generators[j], &gb.order);
            let lcm = lcm_exp(ei, ej);
            let shift_i: Exponents = lcm.iter().zip(ei).map(|(l, e)| l - e).collect();
            let shift_j: Exponents = lcm.iter().zip(ej).map(|(l, e)| l - e).collect();
            let mi = Polynomial::monomial(&gb.ring, shift_i, f.inv(ci).expect("nonzero"));
            let mj = Polynomial::monomial(&gb.ring, shift_j, f.inv(cj).expect("nonzero"));
            let s = mi
                .mul(&gb.generators[i])
                .expect("same ring")
                .sub(&mj.mul(&gb.generators[j]).expect("same ring"))
                .expect("same ring");
            if !reduce(&s, &gb.generators, &gb.order).is_zero() {
                return false;
            }
        }
    }
    true
}
