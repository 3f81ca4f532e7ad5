//! Root finding and small solving utilities on top of the field tower:
//! univariate arithmetic over any `FieldDescriptor`, rational roots,
//! squarefree factorization over ℚ (Kronecker's method for the hard part),
//! roots in extensions, point extraction from zero-dimensional systems, and
//! square-root adjunction.

use crate::field::{Elem, FieldDescriptor, FieldError};
use crate::ideals::{buchberger, eliminate, GbBudget, IdealError, MonomialOrder};
use crate::poly::{PolyError, Polynomial, Ring};
use crate::univar::*;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum RootsError {
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

// ---- univariate polynomials over an arbitrary FieldDescriptor ----
// Represented as coefficient vectors, lowest degree first, no trailing zeros.

pub fn e_trim(f: &FieldDescriptor, mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().map(|c| f.is_zero(c)).unwrap_or(false) {
        v.pop();
    }
    v
}

pub fn e_deg(v: &[Elem]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn e_add(f: &FieldDescriptor, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(|| f.zero());
        let y = b.get(i).cloned().unwrap_or_else(|| f.zero());
        out.push(f.add(&x, &y));
    }
    e_trim(f, out)
}

pub fn e_sub(f: &FieldDescriptor, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let neg: Vec<Elem> = b.iter().map(|c| f.neg(c)).collect();
    e_add(f, a, &neg)
}

pub fn e_mul(f: &FieldDescriptor, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    e_trim(f, out)
}

pub fn e_scale(f: &FieldDescriptor, a: &[Elem], c: &Elem) -> Vec<Elem> {
    e_trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn e_divrem(
    f: &FieldDescriptor,
    a: &[Elem],
    b: &[Elem],
) -> Result<(Vec<Elem>, Vec<Elem>), FieldError> {
    let db = e_deg(b).ok_or(FieldError::DivisionByZero)?;
    let lb_inv = f.inv(&b[db])?;
    let mut rem: Vec<Elem> = a.to_vec();
    let mut quo = vec![f.zero(); a.len().saturating_sub(db)];
    while let Some(dr) = e_deg(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul(&rem[dr], &lb_inv);
        quo[dr - db] = c.clone();
        for i in 0..=db {
            let t = f.mul(&b[i], &c);
            rem[dr - db + i] = f.sub(&rem[dr - db + i], &t);
        }
        rem = e_trim(f, rem);
    }
    Ok((e_trim(f, quo), rem))
}

pub fn e_monic(f: &FieldDescriptor, a: &[Elem]) -> Vec<Elem> {
    match e_deg(a) {
        None => vec![],
        Some(d) => {
            let inv = f.inv(&a[d]).expect("leading coefficient nonzero");
            e_scale(f, a, &inv)
        }
    }
}

pub fn e_gcd(f: &FieldDescriptor, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = e_divrem(f, &x, &y).expect("nonzero divisor");
        x = y;
        y = r;
    }
    e_monic(f, &x)
}

pub fn e_eval(f: &FieldDescriptor, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

pub fn e_derivative(f: &FieldDescriptor, a: &[Elem]) -> Vec<Elem> {
    let mut out = vec![];
    for (i, c) in a.iter().enumerate().skip(1) {
        out.push(f.mul(c, &f.from_i64(i as i64)));
    }
    e_trim(f, out)
}

// ---- rational roots and factorization over ℚ ----

const DIVISOR_BOUND: i128 = 1_000_000_000_000_000;
const KRONECKER_COMBOS: u64 = 200_000;

fn divisors_of(n: &BigInt) -> Result<Vec<i128>, RootsError> {
    let n = n
        .abs()
        .to_i128()
        .filter(|&v| v <= DIVISOR_BOUND)
        .ok_or_else(|| RootsError::Budget("integer too large for divisor enumeration".into()))?;
    if n == 0 {
        return Err(RootsError::Budget("divisor enumeration of zero".into()));
    }
    let mut out = vec![];
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort();
    Ok(out)
}

/// All rational roots of a nonzero polynomial over ℚ, without multiplicity.
pub fn rational_roots(p: &[Rat]) -> Result<Vec<Rat>, RootsError> {
    let mut p = q_trim(p.to_vec());
    assert!(!p.is_empty(), "zero polynomial has every root");
    let mut roots = vec![];
    if p[0].is_zero() {
        roots.push(Rat::zero());
        while p[0].is_zero() && p.len() > 1 {
            p.remove(0);
        }
    }
    if p.len() == 1 {
        return Ok(roots);
    }
    let z = q_to_primitive_int(&p);
    let lead = z.last().unwrap().clone();
    let cons = z[0].clone();
    for num in divisors_of(&cons)? {
        for den in divisors_of(&lead)? {
            for sign in [1i128, -1] {
                let cand = Rat::new(BigInt::from(sign * num), BigInt::from(den));
                if q_eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

pub fn q_squarefree_part(p: &[Rat]) -> Vec<Rat> {
    let p = q_trim(p.to_vec());
    if p.len() <= 1 {
        return p;
    }
    let g = q_gcd(&p, &q_derivative(&p));
    let (q, _) = q_divrem(&p, &g);
    q_monic(&q)
}

fn lagrange_interpolate(points: &[(Rat, Rat)]) -> Vec<Rat> {
    let mut acc: Vec<Rat> = vec![];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![yi.clone()];
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let scale = (xi - xj).recip();
            // multiply by (x - xj) * scale
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c * &scale;
                next[k] -= c * &scale * xj;
            }
            basis = next;
        }
        acc = q_add(&acc, &basis);
    }
    q_trim(acc)
}

fn is_integral(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_integer())
}

/// Split off one nontrivial factor of a primitive squarefree integer
/// polynomial with no rational roots, by Kronecker's interpolation method.
fn kronecker_split(p: &[Rat], budget: &mut u64) -> Result<Option<Vec<Rat>>, RootsError> {
    let n = e_len_deg(p);
    for k in 2..=n / 2 {
        // evaluation points 0, 1, -1, 2, -2, ...
        let xs: Vec<Rat> = (0..=k)
            .map(|i| {
                let m = (i as i64 + 1) / 2 * if i % 2 == 1 { 1 } else { -1 };
                Rat::from_integer(BigInt::from(m))
            })
            .collect();
        let value_divs: Vec<Vec<i128>> = xs
            .iter()
            .map(|x| {
                let v = q_eval(p, x);
                divisors_of(v.numer())
            })
            .collect::<Result<_, _>>()?;
        // odometer over signed divisor choices; slot 0's sign stays positive
        // to cut the ±q symmetry
        let radix: Vec<usize> = value_divs
            .iter()
            .enumerate()
            .map(|(slot, d)| if slot == 0 { d.len() } else { d.len() * 2 })
            .collect();
        let mut idx = vec![0usize; radix.len()];
        'combos: loop {
            *budget = budget
                .checked_sub(1)
                .ok_or_else(|| RootsError::Budget("Kronecker combination budget".into()))?;
            let pts: Vec<(Rat, Rat)> = xs
                .iter()
                .enumerate()
                .map(|(slot, x)| {
                    let i = idx[slot];
                    let (div_i, neg) =
                        if slot == 0 { (i, false) } else { (i / 2, i % 2 == 1) };
                    let mut v = value_divs[slot][div_i];
                    if neg {
                        v = -v;
                    }
                    (x.clone(), Rat::from_integer(BigInt::from(v)))
                })
                .collect();
            let cand = lagrange_interpolate(&pts);
            if cand.len() >= 2 && cand.len() <= k + 1 && is_integral(&cand) {
                let (_, r) = q_divrem(p, &cand);
                if r.is_empty() {
                    return Ok(Some(q_monic(&cand)));
                }
            }
            // advance odometer (slot 0 steps by raw divisor index; others carry
            // a sign bit in the low position)
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break 'combos;
                }
                idx[pos] += 1;
                if idx[pos] < radix[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
    Ok(None)
}

fn e_len_deg(p: &[Rat]) -> usize {
    p.len().saturating_sub(1)
}

/// Monic irreducible factors of a squarefree polynomial over ℚ, ascending by
/// degree then coefficient order; deterministic.
pub fn factor_squarefree_q(p: &[Rat]) -> Result<Vec<Vec<Rat>>, RootsError> {
    let p = q_monic(&q_trim(p.to_vec()));
    assert!(!p.is_empty(), "cannot factor the zero polynomial");
    let mut out: Vec<Vec<Rat>> = vec![];
    let mut rest = p;
    // strip rational roots first: linear factors, and they keep Kronecker's
    // evaluation values nonzero
    for r in rational_roots(&rest)? {
        let lin = vec![-r.clone(), Rat::from_integer(BigInt::from(1))];
        let (q, rem) = q_divrem(&rest, &lin);
        assert!(rem.is_empty());
        out.push(lin);
        rest = q;
    }
    let mut stack = vec![rest];
    let mut budget = KRONECKER_COMBOS;
    while let Some(f) = stack.pop() {
        match e_len_deg(&f) {
            0 => {}
            1..=3 => out.push(q_monic(&f)), // no rational roots => irreducible
            _ => match kronecker_split(&f, &mut budget)? {
                None => out.push(q_monic(&f)),
                Some(g) => {
                    let (q, rem) = q_divrem(&f, &g);
                    assert!(rem.is_empty());
                    stack.push(g);
                    stack.push(q);
                }
            },
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp(y) {
                std::cmp::Ordering::Equal => {}
                o => return o,
            }
        }
        std::cmp::Ordering::Equal
    }));
    Ok(out)
}

// ---- roots in arbitrary fields ----

const FP_SCAN_CAP: u64 = 1_000_000;
const FPK_SCAN_CAP: u64 = 1 << 20;

/// All roots of a nonzero univariate polynomial in the given field.
pub fn roots_in_field(f: &FieldDescriptor, p: &[Elem]) -> Result<Vec<Elem>, RootsError> {
    let p = e_trim(f, p.to_vec());
    assert!(!p.is_empty(), "zero polynomial has every root");
    if p.len() == 1 {
        return Ok(vec![]);
    }
    match f {
        FieldDescriptor::Rational => {
            let q: Vec<Rat> = p
                .iter()
                .map(|c| match c {
                    Elem::Rat(r) => r.clone(),
                    _ => unreachable!("element/field mismatch"),
                })
                .collect();
            Ok(rational_roots(&q)?.into_iter().map(Elem::Rat).collect())
        }
        FieldDescriptor::PrimeField { p: ch } => {
            if *ch > FP_SCAN_CAP {
                return Err(RootsError::Budget(format!(
                    "root scan over F_{ch} exceeds cap {FP_SCAN_CAP}"
                )));
            }
            scan_roots(f, &p, *ch)
        }
        FieldDescriptor::PrimeExtension { p: ch, minpoly, .. } => {
            let size = (*ch as u128).pow((minpoly.len() - 1) as u32);
            if size > FPK_SCAN_CAP as u128 {
                return Err(RootsError::Budget(format!(
                    "root scan over field of size {size} exceeds cap {FPK_SCAN_CAP}"
                )));
            }
            scan_roots(f, &p, size as u64)
        }
        FieldDescriptor::RationalExtension { .. } => roots_in_rational_extension(f, &p),
    }
}

fn scan_roots(f: &FieldDescriptor, p: &[Elem], cap: u64) -> Result<Vec<Elem>, RootsError> {
    let mut out = vec![];
    for x in f.enumerate(cap + 1)? {
        if f.is_zero(&e_eval(f, p, &x)) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Roots over K = ℚ[u]/(m) by writing the unknown in the power basis and
/// solving the resulting rational system coordinate-wise.
fn roots_in_rational_extension(f: &FieldDescriptor, p: &[Elem]) -> Result<Vec<Elem>, RootsError> {
    let (minpoly, d) = match f {
        FieldDescriptor::RationalExtension { minpoly, .. } => (minpoly.clone(), minpoly.len() - 1),
        _ => unreachable!(),
    };
    let names: Vec<String> = (0..d).map(|i| format!("c{i}")).collect();
    let ring = Ring::from_names(FieldDescriptor::Rational, names.clone());
    // the unknown root z = c0 + c1 u + ... in (ℚ[c])[u] mod m
    let z: Vec<Polynomial> = (0..d).map(|i| Polynomial::var(&ring, &names[i]).unwrap()).collect();
    let zero_vec = || vec![Polynomial::zero(&ring); d];
    let add_vec = |a: &Vec<Polynomial>, b: &Vec<Polynomial>| -> Vec<Polynomial> {
        a.iter().zip(b).map(|(x, y)| x.add(y).unwrap()).collect()
    };
    let mul_z = |a: &Vec<Polynomial>| -> Vec<Polynomial> {
        // multiply by u and reduce mod the monic minimal polynomial
        let mut shifted = vec![Polynomial::zero(&ring)];
        shifted.extend(a.iter().cloned());
        let top = shifted.pop().unwrap();
        for (i, s) in shifted.iter_mut().enumerate() {
            let c = Polynomial::constant(&ring, Elem::Rat(-minpoly[i].clone()));
            *s = s.add(&c.mul(&top).unwrap()).unwrap();
        }
        shifted
    };
    // Horner: acc = acc * z + coeff, with acc a vector in the power basis
    let mul_by_root = |acc: &Vec<Polynomial>| -> Vec<Polynomial> {
        let mut out = zero_vec();
        let mut shifted = acc.clone();
        for zi in z.iter() {
            let scaled: Vec<Polynomial> =
                shifted.iter().map(|s| s.mul(zi).unwrap()).collect();
            out = add_vec(&out, &scaled);
            shifted = mul_z(&shifted);
        }
        // the loop above multiplies by (c0 + c1 u + ...) using repeated u-shifts
        out
    };
    let mut acc = zero_vec();
    for coeff in p.iter().rev() {
        acc = mul_by_root(&acc);
        let v = match coeff {
            Elem::RatExt(v) => v.clone(),
            _ => unreachable!("element/field mismatch"),
        };
        for (i, c) in v.iter().enumerate() {
            let cp = Polynomial::constant(&ring, Elem::Rat(c.clone()));
            acc[i] = acc[i].add(&cp).unwrap();
        }
    }
    let gens: Vec<Polynomial> = acc.into_iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Err(RootsError::Budget("degenerate root system".into()));
    }
    let mut roots = vec![];
    for pt in points_in_field(&gens)? {
        let coords: Vec<Rat> = pt
            .iter()
            .map(|e| match e {
                Elem::Rat(r) => r.clone(),
                _ => unreachable!(),
            })
            .collect();
        let cand = Elem::RatExt(q_trim(coords));
        if f.is_zero(&e_eval(f, p, &cand)) && !roots.contains(&cand) {
            roots.push(cand);
        }
    }
    roots.sort();
    Ok(roots)
}

/// All K-rational points of a zero-dimensional system over K, by iterated
/// elimination: solve for the first variable, substitute, recurse.
pub fn points_in_field(gens: &[Polynomial]) -> Result<Vec<Vec<Elem>>, RootsError> {
    let live: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let ring = gens
        .first()
        .map(|g| g.ring.clone())
        .expect("points_in_field needs at least one generator");
    if live.iter().any(|g| g.total_degree() == Some(0)) {
        return Ok(vec![]);
    }
    if ring.nvars() == 0 {
        return Ok(vec![vec![]]);
    }
    if live.is_empty() {
        return Err(RootsError::Budget("system is not zero-dimensional".into()));
    }
    let field = ring.field.clone();
    let first = ring.vars[0].clone();
    let tail: Vec<String> = ring.vars[1..].to_vec();
    let projected = eliminate(&live, &tail, GbBudget::default())?;
    let uni: Vec<Vec<Elem>> = projected.iter().map(|p| to_univariate(p, 0)).collect();
    let mut acc: Vec<Elem> = vec![];
    for u in &uni {
        if acc.is_empty() {
            acc = u.clone();
        } else {
            acc = e_gcd(&field, &acc, u);
        }
    }
    if acc.is_empty() || acc.len() == 1 {
        if acc.len() == 1 {
            return Ok(vec![]);
        }
        return Err(RootsError::Budget("system is not zero-dimensional".into()));
    }
    let tail_ring = Ring::from_names(field.clone(), tail.clone());
    let mut out = vec![];
    for root in roots_in_field(&field, &acc)? {
        let mut images: BTreeMap<String, Polynomial> = BTreeMap::new();
        images.insert(first.clone(), Polynomial::constant(&tail_ring, root.clone()));
        let reduced: Vec<Polynomial> = live
            .iter()
            .map(|g| g.substitute(&images, &tail_ring))
            .collect::<Result<_, _>>()?;
        if tail.is_empty() {
            if reduced.iter().all(|g| g.is_zero()) {
                out.push(vec![root.clone()]);
            }
            continue;
        }
        let nonzero: Vec<Polynomial> = reduced.into_iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Err(RootsError::Budget("system is not zero-dimensional".into()));
        }
        for rest in points_in_field(&nonzero)? {
            let mut pt = vec![root.clone()];
            pt.extend(rest);
            out.push(pt);
        }
    }
    Ok(out)
}

fn to_univariate(p: &Polynomial, var: usize) -> Vec<Elem> {
    let f = &p.ring.field;
    let deg = p.terms.keys().map(|e| e[var]).max().unwrap_or(0) as usize;
    let mut out = vec![f.zero(); deg + 1];
    for (e, c) in &p.terms {
        assert!(
            e.iter().enumerate().all(|(i, &x)| i == var || x == 0),
            "polynomial is not univariate in the requested variable"
        );
        out[e[var] as usize] = f.add(&out[e[var] as usize], c);
    }
    e_trim(f, out)
}

// ---- square roots and quadratic extensions ----

/// A square root of `a` in the field, if one exists.
pub fn sqrt_in(f: &FieldDescriptor, a: &Elem) -> Result<Option<Elem>, RootsError> {
    if f.is_zero(a) {
        return Ok(Some(f.zero()));
    }
    let poly = vec![f.neg(a), f.zero(), f.from_i64(1)];
    let mut roots = roots_in_field(f, &poly)?;
    roots.sort();
    Ok(roots.into_iter().next())
}

/// Result of adjoining a square root: the (possibly unchanged) field, the
/// image of the old generator there, and the square root itself.
pub struct SqrtAdjunction {
    pub field: FieldDescriptor,
    pub gen_image: Elem,
    pub sqrt: Elem,
    pub extended: bool,
}

impl SqrtAdjunction {
    /// Map an element of the base field into the adjunction field.
    pub fn lift(&self, base: &FieldDescriptor, a: &Elem) -> Result<Elem, RootsError> {
        Ok(base.embed(&self.field, &self.gen_image, a)?)
    }
}

/// Characteristic-zero square-root adjunction: returns K itself when √a ∈ K,
/// otherwise a single extension of ℚ containing both K and √a (primitive
/// element when K is already an extension).
pub fn adjoin_sqrt(f: &FieldDescriptor, a: &Elem) -> Result<SqrtAdjunction, RootsError> {
    assert_eq!(f.characteristic(), 0, "adjoin_sqrt is a characteristic-zero tool");
    if let Some(s) = sqrt_in(f, a)? {
        let gen_image = f.generator().unwrap_or_else(|| f.zero());
        return Ok(SqrtAdjunction { field: f.clone(), gen_image, sqrt: s, extended: false });
    }
    match f {
        FieldDescriptor::Rational => {
            let r = match a {
                Elem::Rat(r) => r.clone(),
                _ => unreachable!("element/field mismatch"),
            };
            let k = FieldDescriptor::rational_extension(
                "sq",
                vec![-r, Rat::zero(), Rat::from_integer(BigInt::from(1))],
            )?;
            let sqrt = k.generator().unwrap();
            let gen_image = k.zero();
            Ok(SqrtAdjunction { field: k, gen_image, sqrt, extended: true })
        }
        FieldDescriptor::RationalExtension { minpoly, .. } => {
            adjoin_sqrt_over_extension(f, minpoly, a)
        }
        _ => unreachable!("characteristic zero"),
    }
}

fn adjoin_sqrt_over_extension(
    f: &FieldDescriptor,
    minpoly: &[Rat],
    a: &Elem,
) -> Result<SqrtAdjunction, RootsError> {
    let a_lift = match a {
        Elem::RatExt(v) => v.clone(),
        _ => unreachable!("element/field mismatch"),
    };
    let qring = Ring::new(FieldDescriptor::Rational, &["g", "u"]);
    let uvar = Polynomial::var(&qring, "u").unwrap();
    let gvar = Polynomial::var(&qring, "g").unwrap();
    let m_poly = univar_to_poly(minpoly, &qring, &uvar);
    let a_poly = univar_to_poly(&a_lift, &qring, &uvar);
    for t in 1i64..=8 {
        // γ = √a + t·u: eliminate u from {m(u), (γ − t·u)² = a(u)}
        let shift =
            gvar.sub(&uvar.scale(&Elem::Rat(Rat::from_integer(BigInt::from(t))))).unwrap();
        let rel = shift.mul(&shift).unwrap().sub(&a_poly).unwrap();
        let elim = eliminate(
            &[m_poly.clone(), rel.clone()],
            &["u".to_string()],
            GbBudget::default(),
        )?;
        let Some(char_poly) = elim.iter().find(|p| !p.is_zero()) else { continue };
        let char_uni: Vec<Rat> = to_univariate(char_poly, 0)
            .iter()
            .map(|e| match e {
                Elem::Rat(r) => r.clone(),
                _ => unreachable!(),
            })
            .collect();
        let sf = q_squarefree_part(&char_uni);
        for factor in factor_squarefree_q(&sf)? {
            if factor.len() - 1 < minpoly.len() - 1 {
                continue; // too small to contain K
            }
            let cand = match FieldDescriptor::rational_extension("g", factor.clone()) {
                Ok(k) => k,
                Err(_) => continue,
            };
            let w = cand.generator().unwrap();
            // find u's image: common root of m(z) and (w − t·z)² − a(z) in L
            let m_l: Vec<Elem> = minpoly
                .iter()
                .map(|c| cand.from_rat(c).expect("char 0"))
                .collect();
            let te = cand.from_i64(t);
            // (w − t z)² − a(z) as a polynomial in z over L
            let lin = vec![w.clone(), cand.neg(&te)];
            let mut rel_l = e_mul(&cand, &lin, &lin);
            let a_l: Vec<Elem> =
                a_lift.iter().map(|c| cand.from_rat(c).expect("char 0")).collect();
            rel_l = e_sub(&cand, &rel_l, &a_l);
            let g = e_gcd(&cand, &m_l, &rel_l);
            if g.len() != 2 {
                continue;
            }
            let u_img = cand.neg(&cand.div(&g[0], &g[1]).expect("monic gcd"));
            let sqrt = cand.sub(&w, &cand.mul(&te, &u_img));
            // verify: sqrt² = a and m(u_img) = 0
            let a_img = f.embed(&cand, &u_img, a)?;
            if cand.mul(&sqrt, &sqrt) == a_img {
                return Ok(SqrtAdjunction {
                    field: cand,
                    gen_image: u_img,
                    sqrt,
                    extended: true,
                });
            }
        }
    }
    Err(RootsError::Budget("no primitive element found for square-root adjunction".into()))
}

fn univar_to_poly(coeffs: &[Rat], ring: &Arc<Ring>, var: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero(ring);
    for c in coeffs.iter().rev() {
        acc = acc
            .mul(var)
            .unwrap()
            .add(&Polynomial::constant(ring, Elem::Rat(c.clone())))
            .unwrap();
    }
    acc
}

/// Nonzero generators with the unit-ideal fast path used by callers that
/// only care whether a GB is trivial.
pub fn is_unit_ideal(gens: &[Polynomial]) -> Result<bool, RootsError> {
    let gb = buchberger(gens, MonomialOrder::Grevlex, GbBudget::default())?;
    Ok(gb.generators.iter().any(|g| g.total_degree() == Some(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(BigInt::from(n), BigInt::from(d))
    }
    fn qi(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn rational_roots_basic() {
        // 6x^2 - 5x + 1 = (2x-1)(3x-1)
        let p = vec![qi(1), qi(-5), qi(6)];
        assert_eq!(rational_roots(&p).unwrap(), vec![q(1, 3), q(1, 2)]);
        // x^2 + 1: none
        assert!(rational_roots(&[qi(1), qi(0), qi(1)]).unwrap().is_empty());
        // x^2 - 2: none (irrational)
        assert!(rational_roots(&[qi(-2), qi(0), qi(1)]).unwrap().is_empty());
        // t(t^3 - 1): 0 and 1
        let p = vec![qi(0), qi(-1), qi(0), qi(0), qi(1)];
        assert_eq!(rational_roots(&p).unwrap(), vec![qi(0), qi(1)]);
    }

    #[test]
    fn factoring_locus_polynomial() {
        // t^4 - t = t (t-1) (t^2+t+1)
        let p = vec![qi(0), qi(-1), qi(0), qi(0), qi(1)];
        let fs = factor_squarefree_q(&p).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0], vec![qi(-1), qi(1)]);
        assert_eq!(fs[1], vec![qi(0), qi(1)]);
        assert_eq!(fs[2], vec![qi(1), qi(1), qi(1)]);
        // product reassembles
        let mut prod = vec![qi(1)];
        for f in &fs {
            prod = q_mul(&prod, f);
        }
        assert_eq!(prod, q_monic(&p));
    }

    #[test]
    fn kronecker_quartic() {
        // (x^2+1)(x^2+x+1)
        let p = q_mul(&[qi(1), qi(0), qi(1)], &[qi(1), qi(1), qi(1)]);
        let fs = factor_squarefree_q(&p).unwrap();
        assert_eq!(fs, vec![vec![qi(1), qi(0), qi(1)], vec![qi(1), qi(1), qi(1)]]);
        // irreducible quartic stays whole
        let p = vec![qi(2), qi(0), qi(0), qi(0), qi(1)]; // x^4 + 2 (Eisenstein)
        assert_eq!(factor_squarefree_q(&p).unwrap().len(), 1);
    }

    #[test]
    fn roots_in_prime_field() {
        let f = FieldDescriptor::prime_field(7).unwrap();
        // x^3 - 1 over F_7: 1, 2, 4
        let p = vec![f.from_i64(-1), f.zero(), f.zero(), f.one()];
        let roots = roots_in_field(&f, &p).unwrap();
        assert_eq!(roots, vec![Elem::Fp(1), Elem::Fp(2), Elem::Fp(4)]);
    }

    #[test]
    fn roots_in_cyclotomic_extension() {
        // K = Q[w]/(w^2+w+1); z^3 - 1 has roots 1, w, w^2 = -1-w
        let k = FieldDescriptor::rational_extension("w", vec![qi(1), qi(1), qi(1)]).unwrap();
        let p = vec![k.from_i64(-1), k.zero(), k.zero(), k.one()];
        let roots = roots_in_field(&k, &p).unwrap();
        assert_eq!(roots.len(), 3);
        let w = k.generator().unwrap();
        assert!(roots.contains(&k.one()));
        assert!(roots.contains(&w));
        assert!(roots.contains(&k.mul(&w, &w)));
        // w is a square in K: w = (w^2)^2
        let p2 = vec![k.neg(&w), k.zero(), k.one()];
        let sq = roots_in_field(&k, &p2).unwrap();
        assert!(sq.contains(&k.mul(&w, &w)));
        // 2 is not a square in K
        let p3 = vec![k.from_i64(-2), k.zero(), k.one()];
        assert!(roots_in_field(&k, &p3).unwrap().is_empty());
    }

    #[test]
    fn sqrt_and_adjunction_over_q() {
        let f = FieldDescriptor::Rational;
        assert_eq!(sqrt_in(&f, &Elem::Rat(q(9, 4))).unwrap(), Some(Elem::Rat(q(-3, 2))));
        assert!(sqrt_in(&f, &Elem::Rat(qi(2))).unwrap().is_none());
        let adj = adjoin_sqrt(&f, &Elem::Rat(qi(2))).unwrap();
        assert!(adj.extended);
        let s2 = adj.sqrt.clone();
        assert_eq!(adj.field.mul(&s2, &s2), adj.field.from_i64(2));
    }

    #[test]
    fn sqrt_adjunction_over_extension() {
        // K = Q(w), w^2+w+1 = 0; -3 = (1+2w)^2 is already a square in K
        let k = FieldDescriptor::rational_extension("w", vec![qi(1), qi(1), qi(1)]).unwrap();
        let m3 = k.from_i64(-3);
        let adj = adjoin_sqrt(&k, &m3).unwrap();
        assert!(!adj.extended);
        assert_eq!(adj.field.mul(&adj.sqrt, &adj.sqrt), m3);
        // 2 is not a square in Q(w): a genuine degree-4 extension appears
        let adj2 = adjoin_sqrt(&k, &k.from_i64(2)).unwrap();
        assert!(adj2.extended);
        assert_eq!(adj2.field.extension_degree(), 4);
        assert_eq!(adj2.field.mul(&adj2.sqrt, &adj2.sqrt), adj2.field.from_i64(2));
        // the embedding respects the defining relation of K
        let w_img = adj2.gen_image.clone();
        let one = adj2.field.one();
        let rel = adj2.field.add(
            &adj2.field.add(&adj2.field.mul(&w_img, &w_img), &w_img),
            &one,
        );
        assert!(adj2.field.is_zero(&rel));
    }

    #[test]
    fn zero_dimensional_point_extraction() {
        let r = Ring::new(FieldDescriptor::Rational, &["a", "b"]);
        let gens = vec![parse("a^2-1", &r).unwrap(), parse("b-a", &r).unwrap()];
        let mut pts = points_in_field(&gens).unwrap();
        pts.sort();
        assert_eq!(
            pts,
            vec![
                vec![Elem::Rat(qi(-1)), Elem::Rat(qi(-1))],
                vec![Elem::Rat(qi(1)), Elem::Rat(qi(1))],
            ]
        );
        // inconsistent system: no points
        let bad = vec![parse("a", &r).unwrap(), parse("a-1", &r).unwrap()];
        assert!(points_in_field(&bad).unwrap().is_empty());
    }

    #[test]
    fn univariate_helpers() {
        let f = FieldDescriptor::prime_field(13).unwrap();
        let a = vec![f.from_i64(2), f.from_i64(0), f.one()]; // x^2+2
        let b = vec![f.from_i64(1), f.one()]; // x+1
        let (q, r) = e_divrem(&f, &a, &b).unwrap();
        let back = e_add(&f, &e_mul(&f, &q, &b), &r);
        assert_eq!(back, a);
        let g = e_gcd(&f, &e_mul(&f, &a, &b), &b);
        assert_eq!(g, b);
    }
}
