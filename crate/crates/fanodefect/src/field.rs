//! Coefficient fields: Q, Q[u]/(m), F_p and F_p[u]/(m).
//!
//! A `FieldDescriptor` carries everything needed to compute with elements;
//! `Elem` values are plain data and only make sense relative to a
//! descriptor. Extension elements are reduced representatives (degree below
//! the minimal polynomial, trailing zeros trimmed), so structural equality
//! is field equality.

use crate::univar::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("minimal polynomial must be monic")]
    NotMonic,
    #[error("minimal polynomial must have degree >= 2")]
    DegreeTooSmall,
    #[error("minimal polynomial is reducible over F_{0}")]
    Reducible(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator divisible by {0}")]
    DenominatorDivisibleByP(u64),
    #[error("no canonical coefficient map between the given fields")]
    NoCanonicalMap,
    #[error("element does not belong to this field")]
    WrongField,
    #[error("root search budget exceeded ({0})")]
    Budget(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldDescriptor {
    Rational,
    /// Q[u]/(minpoly); `minpoly` is monic with rational coefficients,
    /// irreducibility over Q is trusted (see `unverified_irreducibility`).
    RationalExtension { var: String, minpoly: Vec<Rat> },
    PrimeField { p: u64 },
    PrimeExtension { p: u64, var: String, minpoly: Vec<u64> },
}

/// A field element. Representation matches the descriptor variant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Rat(Rat),
    RatExt(Vec<Rat>),
    Fp(u64),
    FpExt(Vec<u64>),
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor::Rational
    }

    pub fn rational_extension(var: &str, minpoly: Vec<Rat>) -> Result<Self, FieldError> {
        let minpoly = q_trim(minpoly);
        if q_deg(&minpoly).unwrap_or(0) < 2 {
            return Err(FieldError::DegreeTooSmall);
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(FieldError::NotMonic);
        }
        Ok(FieldDescriptor::RationalExtension { var: var.to_string(), minpoly })
    }

    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        if p <= 2 || !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDescriptor::PrimeField { p })
    }

    pub fn prime_extension(p: u64, var: &str, minpoly: Vec<u64>) -> Result<Self, FieldError> {
        if p <= 2 || !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        let minpoly = fp_trim(minpoly.into_iter().map(|c| c % p).collect());
        if fp_deg(&minpoly).unwrap_or(0) < 2 {
            return Err(FieldError::DegreeTooSmall);
        }
        if *minpoly.last().unwrap() != 1 {
            return Err(FieldError::NotMonic);
        }
        if !fp_is_irreducible(&minpoly, p) {
            return Err(FieldError::Reducible(p));
        }
        Ok(FieldDescriptor::PrimeExtension { p, var: var.to_string(), minpoly })
    }

    /// Q-irreducibility of rational-extension minimal polynomials is not
    /// verified at construction time; callers surface a warning.
    pub fn unverified_irreducibility(&self) -> bool {
        matches!(self, FieldDescriptor::RationalExtension { .. })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rational | FieldDescriptor::RationalExtension { .. } => 0,
            FieldDescriptor::PrimeField { p } | FieldDescriptor::PrimeExtension { p, .. } => *p,
        }
    }

    pub fn extension_degree(&self) -> usize {
        match self {
            FieldDescriptor::Rational | FieldDescriptor::PrimeField { .. } => 1,
            FieldDescriptor::RationalExtension { minpoly, .. } => minpoly.len() - 1,
            FieldDescriptor::PrimeExtension { minpoly, .. } => minpoly.len() - 1,
        }
    }

    pub fn generator_name(&self) -> Option<&str> {
        match self {
            FieldDescriptor::RationalExtension { var, .. } => Some(var),
            FieldDescriptor::PrimeExtension { var, .. } => Some(var),
            _ => None,
        }
    }

    /// The class of the auxiliary variable, for extension fields.
    pub fn generator(&self) -> Option<Elem> {
        match self {
            FieldDescriptor::RationalExtension { .. } => {
                Some(Elem::RatExt(vec![Rat::zero(), Rat::one()]))
            }
            FieldDescriptor::PrimeExtension { .. } => Some(Elem::FpExt(vec![0, 1])),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            FieldDescriptor::Rational => Elem::Rat(Rat::zero()),
            FieldDescriptor::RationalExtension { .. } => Elem::RatExt(vec![]),
            FieldDescriptor::PrimeField { .. } => Elem::Fp(0),
            FieldDescriptor::PrimeExtension { .. } => Elem::FpExt(vec![]),
        }
    }

    pub fn one(&self) -> Elem {
        match self {
            FieldDescriptor::Rational => Elem::Rat(Rat::one()),
            FieldDescriptor::RationalExtension { .. } => Elem::RatExt(vec![Rat::one()]),
            FieldDescriptor::PrimeField { .. } => Elem::Fp(1),
            FieldDescriptor::PrimeExtension { .. } => Elem::FpExt(vec![1]),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::RatExt(v) => v.is_empty(),
            Elem::Fp(x) => *x == 0,
            Elem::FpExt(v) => v.is_empty(),
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_rat(&Rat::from_integer(BigInt::from(n)))
            .expect("integer image always exists in characteristic 0; reduced mod p otherwise")
    }

    /// Canonical image of a rational number, when it exists.
    pub fn from_rat(&self, r: &Rat) -> Result<Elem, FieldError> {
        match self {
            FieldDescriptor::Rational => Ok(Elem::Rat(r.clone())),
            FieldDescriptor::RationalExtension { .. } => Ok(Elem::RatExt(q_trim(vec![r.clone()]))),
            FieldDescriptor::PrimeField { p } | FieldDescriptor::PrimeExtension { p, .. } => {
                let fp = rat_mod_p(r, *p)?;
                match self {
                    FieldDescriptor::PrimeField { .. } => Ok(Elem::Fp(fp)),
                    _ => Ok(Elem::FpExt(fp_trim(vec![fp]))),
                }
            }
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (FieldDescriptor::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (FieldDescriptor::RationalExtension { .. }, Elem::RatExt(x), Elem::RatExt(y)) => {
                Elem::RatExt(q_add(x, y))
            }
            (FieldDescriptor::PrimeField { p }, Elem::Fp(x), Elem::Fp(y)) => {
                Elem::Fp(addmod(*x, *y, *p))
            }
            (FieldDescriptor::PrimeExtension { p, .. }, Elem::FpExt(x), Elem::FpExt(y)) => {
                Elem::FpExt(fp_add(x, y, *p))
            }
            _ => panic!("element/field mismatch"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (FieldDescriptor::Rational, Elem::Rat(x)) => Elem::Rat(-x),
            (FieldDescriptor::RationalExtension { .. }, Elem::RatExt(x)) => {
                Elem::RatExt(x.iter().map(|c| -c).collect())
            }
            (FieldDescriptor::PrimeField { p }, Elem::Fp(x)) => Elem::Fp(negmod(*x, *p)),
            (FieldDescriptor::PrimeExtension { p, .. }, Elem::FpExt(x)) => {
                Elem::FpExt(x.iter().map(|&c| negmod(c, *p)).collect())
            }
            _ => panic!("element/field mismatch"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (FieldDescriptor::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (FieldDescriptor::RationalExtension { minpoly, .. }, Elem::RatExt(x), Elem::RatExt(y)) => {
                Elem::RatExt(q_rem(&q_mul(x, y), minpoly))
            }
            (FieldDescriptor::PrimeField { p }, Elem::Fp(x), Elem::Fp(y)) => {
                Elem::Fp(mulmod(*x, *y, *p))
            }
            (FieldDescriptor::PrimeExtension { p, minpoly, .. }, Elem::FpExt(x), Elem::FpExt(y)) => {
                Elem::FpExt(fp_rem(&fp_mul(x, y, *p), minpoly, *p))
            }
            _ => panic!("element/field mismatch"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldDescriptor::Rational, Elem::Rat(x)) => Elem::Rat(x.recip()),
            (FieldDescriptor::RationalExtension { minpoly, .. }, Elem::RatExt(x)) => Elem::RatExt(
                q_inv_mod(x, minpoly).expect("minimal polynomial reducible over Q: non-invertible element encountered"),
            ),
            (FieldDescriptor::PrimeField { p }, Elem::Fp(x)) => Elem::Fp(invmod(*x, *p)),
            (FieldDescriptor::PrimeExtension { p, minpoly, .. }, Elem::FpExt(x)) => {
                Elem::FpExt(fp_inv_mod(x, minpoly, *p).expect("irreducibility was verified"))
            }
            _ => panic!("element/field mismatch"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, n: u32) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Canonical coefficient map from `from` into `self`, when one exists.
    pub fn convert(&self, from: &FieldDescriptor, a: &Elem) -> Result<Elem, FieldError> {
        if self == from {
            return Ok(a.clone());
        }
        match (from, self, a) {
            (FieldDescriptor::Rational, _, Elem::Rat(r)) => self.from_rat(r),
            (
                FieldDescriptor::PrimeField { p },
                FieldDescriptor::PrimeExtension { p: q, .. },
                Elem::Fp(x),
            ) if p == q => Ok(Elem::FpExt(fp_trim(vec![*x]))),
            _ => Err(FieldError::NoCanonicalMap),
        }
    }

    /// Image of `a` (an element of `self`) in `target` under the map sending
    /// the generator to `gen_image` and fixing the prime field / Q.
    pub fn embed(
        &self,
        target: &FieldDescriptor,
        gen_image: &Elem,
        a: &Elem,
    ) -> Result<Elem, FieldError> {
        match (self, a) {
            (FieldDescriptor::Rational, Elem::Rat(r)) => target.from_rat(r),
            (FieldDescriptor::PrimeField { .. }, Elem::Fp(x)) => {
                target.from_rat(&Rat::from_integer(BigInt::from(*x)))
            }
            (FieldDescriptor::RationalExtension { .. }, Elem::RatExt(v)) => {
                let mut acc = target.zero();
                for c in v.iter().rev() {
                    acc = target.mul(&acc, gen_image);
                    acc = target.add(&acc, &target.from_rat(c)?);
                }
                Ok(acc)
            }
            (FieldDescriptor::PrimeExtension { .. }, Elem::FpExt(v)) => {
                let mut acc = target.zero();
                for c in v.iter().rev() {
                    acc = target.mul(&acc, gen_image);
                    acc = target.add(&acc, &target.from_rat(&Rat::from_integer(BigInt::from(*c)))?);
                }
                Ok(acc)
            }
            _ => Err(FieldError::WrongField),
        }
    }

    pub fn render(&self, a: &Elem) -> String {
        match (self, a) {
            (_, Elem::Rat(r)) => render_rat(r),
            (_, Elem::Fp(x)) => format!("{x}"),
            (FieldDescriptor::RationalExtension { var, .. }, Elem::RatExt(v)) => {
                render_ext(v.iter().map(render_rat), var, |s| s.starts_with('-'))
            }
            (FieldDescriptor::PrimeExtension { var, .. }, Elem::FpExt(v)) => {
                render_ext(v.iter().map(|c| format!("{c}")), var, |_| false)
            }
            _ => panic!("element/field mismatch"),
        }
    }

    /// True when the rendered form needs parentheses as a coefficient.
    pub fn is_composite(&self, a: &Elem) -> bool {
        match a {
            Elem::RatExt(v) => v.iter().filter(|c| !c.is_zero()).count() > 1 || v.len() > 1,
            Elem::FpExt(v) => v.iter().filter(|&&c| c != 0).count() > 1 || v.len() > 1,
            Elem::Rat(r) => r.is_negative(),
            Elem::Fp(_) => false,
        }
    }

    /// Deterministic pseudo-random nonzero-biased element for property tests.
    pub fn sample(&self, rng: &mut impl rand::Rng) -> Elem {
        let small = |rng: &mut dyn rand::RngCore| -> i64 { (rng.next_u32() % 9) as i64 - 4 };
        match self {
            FieldDescriptor::Rational => Elem::Rat(Rat::from_integer(BigInt::from(small(rng)))),
            FieldDescriptor::RationalExtension { minpoly, .. } => {
                let d = minpoly.len() - 1;
                Elem::RatExt(q_trim(
                    (0..d).map(|_| Rat::from_integer(BigInt::from(small(rng)))).collect(),
                ))
            }
            FieldDescriptor::PrimeField { p } => Elem::Fp(rng.next_u64() % p),
            FieldDescriptor::PrimeExtension { p, minpoly, .. } => {
                let d = minpoly.len() - 1;
                Elem::FpExt(fp_trim((0..d).map(|_| rng.next_u64() % p).collect()))
            }
        }
    }

    /// All elements, for small prime fields / extensions (scan-based roots).
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Elem>, FieldError> {
        match self {
            FieldDescriptor::PrimeField { p } => {
                if *p > cap {
                    return Err(FieldError::Budget(format!("field size {p} exceeds scan cap {cap}")));
                }
                Ok((0..*p).map(Elem::Fp).collect())
            }
            FieldDescriptor::PrimeExtension { p, minpoly, .. } => {
                let d = (minpoly.len() - 1) as u32;
                let size = (*p as u128).checked_pow(d).unwrap_or(u128::MAX);
                if size > cap as u128 {
                    return Err(FieldError::Budget(format!(
                        "field size {size} exceeds scan cap {cap}"
                    )));
                }
                let mut out = vec![];
                let mut digits = vec![0u64; d as usize];
                loop {
                    out.push(Elem::FpExt(fp_trim(digits.clone())));
                    let mut i = 0;
                    loop {
                        if i == digits.len() {
                            return Ok(out);
                        }
                        digits[i] += 1;
                        if digits[i] < *p {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                }
            }
            _ => Err(FieldError::Budget("enumerate only applies to finite fields".into())),
        }
    }
}

fn rat_mod_p(r: &Rat, p: u64) -> Result<u64, FieldError> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(FieldError::DenominatorDivisibleByP(p));
    }
    let num = r.numer().mod_floor(&pb);
    let num_u = num.to_u64().expect("residue fits in u64");
    let den_u = den.to_u64().expect("residue fits in u64");
    Ok(mulmod(num_u, invmod(den_u, p), p))
}

fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_ext<I: Iterator<Item = String>>(
    coeffs: I,
    var: &str,
    is_neg: impl Fn(&str) -> bool,
) -> String {
    let mut parts: Vec<String> = vec![];
    for (i, c) in coeffs.enumerate() {
        if c == "0" {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let body = if mono.is_empty() {
            c.clone()
        } else if c == "1" {
            mono
        } else if c == "-1" {
            format!("-{mono}")
        } else {
            format!("{c}*{mono}")
        };
        parts.push(body);
    }
    if parts.is_empty() {
        return "0".to_string();
    }
    parts.reverse();
    let mut out = parts[0].clone();
    for part in &parts[1..] {
        if is_neg(part) {
            out.push_str(&format!(" - {}", &part[1..]));
        } else {
            out.push_str(&format!(" + {part}"));
        }
    }
    out
}

/// Serializable summary of a field, for reports.
#[derive(Debug, Clone, Serialize)]
pub struct FieldSummary {
    pub kind: String,
    pub detail: String,
}

impl FieldDescriptor {
    pub fn summary(&self) -> FieldSummary {
        match self {
            FieldDescriptor::Rational => FieldSummary { kind: "rational".into(), detail: "Q".into() },
            FieldDescriptor::RationalExtension { var, minpoly } => FieldSummary {
                kind: "rational_extension".into(),
                detail: format!(
                    "Q[{var}]/({})",
                    render_ext(minpoly.iter().map(render_rat), var, |s| s.starts_with('-'))
                ),
            },
            FieldDescriptor::PrimeField { p } => {
                FieldSummary { kind: "prime_field".into(), detail: format!("F_{p}") }
            }
            FieldDescriptor::PrimeExtension { p, var, minpoly } => FieldSummary {
                kind: "prime_extension".into(),
                detail: format!(
                    "F_{p}[{var}]/({})",
                    render_ext(minpoly.iter().map(|c| format!("{c}")), var, |_| false)
                ),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn r(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    #[test]
    fn descriptor_validation() {
        assert!(FieldDescriptor::prime_field(2).is_err());
        assert!(FieldDescriptor::prime_field(9).is_err());
        assert!(FieldDescriptor::prime_field(10007).is_ok());
        // reducible minpoly over F_7 rejected
        assert!(FieldDescriptor::prime_extension(7, "u", vec![5, 0, 1]).is_err());
        assert!(FieldDescriptor::prime_extension(7, "u", vec![1, 0, 1]).is_ok());
        // degree-1 minpoly rejected
        assert!(FieldDescriptor::rational_extension("u", vec![r(1), r(1)]).is_err());
    }

    #[test]
    fn cyclotomic_cube_root() {
        // Q[w]/(w^2 + w + 1): w^3 = 1
        let k = FieldDescriptor::rational_extension("w", vec![r(1), r(1), r(1)]).unwrap();
        let w = k.generator().unwrap();
        assert_eq!(k.pow(&w, 3), k.one());
        assert!(k.pow(&w, 2) != k.one());
    }

    #[test]
    fn field_axioms_random_extension() {
        let k = FieldDescriptor::prime_extension(11, "u", vec![1, 0, 1]).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let a = k.sample(&mut rng);
            let b = k.sample(&mut rng);
            let c = k.sample(&mut rng);
            assert_eq!(k.add(&a, &b), k.add(&b, &a));
            assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
            assert_eq!(
                k.mul(&a, &k.add(&b, &c)),
                k.add(&k.mul(&a, &b), &k.mul(&a, &c))
            );
            if !k.is_zero(&a) {
                assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
            }
        }
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let ok = f7.from_rat(&Rat::new(BigInt::from(1), BigInt::from(3))).unwrap();
        assert_eq!(ok, Elem::Fp(5)); // 3 * 5 = 15 = 1 mod 7
        assert!(f7.from_rat(&Rat::new(BigInt::from(1), BigInt::from(7))).is_err());
    }

    #[test]
    fn embed_between_extensions() {
        // Q[w]/(w^2+w+1) into Q[v]/(v^2+3) via w -> (-1+v)/2
        let k = FieldDescriptor::rational_extension("w", vec![r(1), r(1), r(1)]).unwrap();
        let l = FieldDescriptor::rational_extension("v", vec![r(3), r(0), r(1)]).unwrap();
        let half = Rat::new(BigInt::from(1), BigInt::from(2));
        let image = Elem::RatExt(vec![-&half * r(1), half]);
        let w = k.generator().unwrap();
        let img = k.embed(&l, &image, &w).unwrap();
        // image satisfies z^2 + z + 1 = 0 in L
        let check = l.add(&l.add(&l.mul(&img, &img), &img), &l.one());
        assert!(l.is_zero(&check));
    }
}
