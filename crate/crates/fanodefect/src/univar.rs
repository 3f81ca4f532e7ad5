//! Univariate polynomial helpers over Q and over prime fields.
//!
//! Polynomials are coefficient vectors, index = exponent, trailing zeros
//! trimmed. These back the extension-field arithmetic in `field` and the
//! root-finding / factorization routines in `roots`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

// ---------------------------------------------------------------------------
// u64 modular arithmetic
// ---------------------------------------------------------------------------

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

#[inline]
pub fn negmod(a: u64, p: u64) -> u64 {
    (p - a % p) % p
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo prime `p`; `a` must be nonzero mod `p`.
pub fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i128 % p as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "invmod of non-unit");
    (((s0 % p as i128) + p as i128) % p as i128) as u64
}

// ---------------------------------------------------------------------------
// Univariate polynomials over F_p: Vec<u64>, coefficients reduced mod p
// ---------------------------------------------------------------------------

pub fn fp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn fp_deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn fp_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = addmod(x, y, p);
    }
    fp_trim(out)
}

pub fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = submod(x, y, p);
    }
    fp_trim(out)
}

pub fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    fp_trim(out)
}

pub fn fp_scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    fp_trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

/// Remainder of `a` modulo `b` (any nonzero `b`).
pub fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = invmod(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mulmod(r[dr], lead_inv, p);
        if c != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[dr - db + i] = submod(r[dr - db + i], mulmod(c, bc, p), p);
            }
        }
        r = fp_trim(r);
        if r.len() <= db {
            break;
        }
        // guard against no-progress (cannot happen with field coefficients)
        if r.len() - 1 == dr {
            r.pop();
            r = fp_trim(r);
        }
    }
    r
}

pub fn fp_monic(a: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() {
        return vec![];
    }
    fp_scale(a, invmod(*a.last().unwrap(), p), p)
}

pub fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Inverse of `a` mod monic `m`, for `gcd(a, m) = 1`.
pub fn fp_inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (m.to_vec(), fp_rem(a, m, p));
    let (mut s0, mut s1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    Some(fp_scale(&s0, invmod(r0[0], p), p))
}

pub fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![], fp_trim(r));
    }
    let lead_inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mulmod(*r.last().unwrap(), lead_inv, p);
        q[dr - db] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[dr - db + i] = submod(r[dr - db + i], mulmod(c, bc, p), p);
        }
        r = fp_trim(r);
    }
    (fp_trim(q), r)
}

pub fn fp_pow_mod(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = fp_rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility over F_p via the Frobenius criterion:
/// x^(p^d) = x mod m and gcd(x^(p^(d/q)) - x, m) = 1 for each prime q | d.
pub fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let d = match fp_deg(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1u64];
    let frob = |e: usize| -> Vec<u64> {
        let mut acc = x.clone();
        for _ in 0..e {
            acc = fp_pow_mod(&acc, p as u128, m, p);
        }
        acc
    };
    if fp_sub(&frob(d), &x, p) != Vec::<u64>::new() {
        return false;
    }
    let mut n = d;
    let mut qs = vec![];
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            qs.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        qs.push(n);
    }
    for q in qs {
        let g = fp_gcd(&fp_sub(&frob(d / q), &x, p), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

pub fn fp_eval(a: &[u64], x: u64, p: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = addmod(mulmod(acc, x, p), c, p);
    }
    acc
}

// ---------------------------------------------------------------------------
// Univariate polynomials over Q: Vec<Rat>
// ---------------------------------------------------------------------------

pub fn q_trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().map(|c| c.is_zero()) == Some(true) {
        v.pop();
    }
    v
}

pub fn q_deg(v: &[Rat]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

pub fn q_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rat::zero);
        *o = x + y;
    }
    q_trim(out)
}

pub fn q_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rat::zero);
        *o = x - y;
    }
    q_trim(out)
}

pub fn q_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(out)
}

pub fn q_scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
    q_trim(a.iter().map(|x| x * c).collect())
}

pub fn q_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (vec![], q_trim(r));
    }
    let lead = b[db].clone();
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r.last().unwrap() / &lead;
        q[dr - db] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[dr - db + i] -= t;
        }
        r = q_trim(r);
    }
    (q_trim(q), r)
}

pub fn q_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    q_divrem(a, b).1
}

pub fn q_monic(a: &[Rat]) -> Vec<Rat> {
    if a.is_empty() {
        return vec![];
    }
    let inv = a.last().unwrap().recip();
    q_scale(a, &inv)
}

pub fn q_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = q_rem(&x, &y);
        x = y;
        y = r;
    }
    q_monic(&x)
}

/// Inverse of `a` mod monic `m` over Q, for `gcd(a, m) = 1`.
pub fn q_inv_mod(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
    let (mut r0, mut r1) = (m.to_vec(), q_rem(a, m));
    let (mut s0, mut s1) = (vec![], vec![Rat::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv = r0[0].recip();
    Some(q_scale(&s0, &inv))
}

pub fn q_derivative(a: &[Rat]) -> Vec<Rat> {
    if a.len() <= 1 {
        return vec![];
    }
    q_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
            .collect(),
    )
}

pub fn q_eval(a: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Resultant of two univariate polynomials over Q (Euclidean recursion).
pub fn q_resultant(f: &[Rat], g: &[Rat]) -> Rat {
    let f = q_trim(f.to_vec());
    let g = q_trim(g.to_vec());
    if f.is_empty() || g.is_empty() {
        return Rat::zero();
    }
    let (df, dg) = (f.len() - 1, g.len() - 1);
    if dg == 0 {
        return pow_rat(&g[0], df as u32);
    }
    let r = q_rem(&f, &g);
    if r.is_empty() {
        return Rat::zero();
    }
    let dr = r.len() - 1;
    let sign = if (df * dg) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    sign * pow_rat(g.last().unwrap(), (df - dr) as u32) * q_resultant(&g, &r)
}

fn pow_rat(x: &Rat, n: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Clear denominators and content: returns primitive integer coefficients
/// with positive leading coefficient, a rational multiple of the input.
pub fn q_to_primitive_int(a: &[Rat]) -> Vec<BigInt> {
    if a.is_empty() {
        return vec![];
    }
    let mut den = BigInt::one();
    for c in a {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = a.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() {
        return ints;
    }
    for c in ints.iter_mut() {
        *c = &*c / &content;
    }
    if ints.last().unwrap().is_negative() {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}
