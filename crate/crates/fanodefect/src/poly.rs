//! Sparse exact multivariate polynomials over a pluggable coefficient field.

use crate::field::{Elem, FieldDescriptor, FieldError};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Exponents = Vec<u32>;

#[derive(Debug, thiserror::Error)]
pub enum PolyError {
    #[error("ring or field mismatch")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("linear change of coordinates is singular")]
    SingularMatrix,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// An ordered variable list together with the coefficient field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    pub field: FieldDescriptor,
    pub vars: Vec<String>,
}

impl Ring {
    pub fn new(field: FieldDescriptor, vars: &[&str]) -> Arc<Ring> {
        Arc::new(Ring { field, vars: vars.iter().map(|s| s.to_string()).collect() })
    }

    pub fn from_names(field: FieldDescriptor, vars: Vec<String>) -> Arc<Ring> {
        Arc::new(Ring { field, vars })
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
}

/// Graded reverse lexicographic comparison on exponent vectors, with respect
/// to the declared variable order.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    // ties: the monomial with the smaller exponent in the last variable
    // where they differ is the larger one
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

/// Canonical sparse polynomial: no zero coefficients are stored and the
/// exponent-vector map itself is the identity of the polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub ring: Arc<Ring>,
    pub terms: BTreeMap<Exponents, Elem>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Elem) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !ring.field.is_zero(&c) {
            p.terms.insert(vec![0; ring.nvars()], c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<Ring>, name: &str) -> Result<Polynomial, PolyError> {
        let i = ring.var_index(name).ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        let mut e = vec![0u32; ring.nvars()];
        e[i] = 1;
        let mut p = Polynomial::zero(ring);
        p.terms.insert(e, ring.field.one());
        Ok(p)
    }

    pub fn monomial(ring: &Arc<Ring>, exps: Exponents, c: Elem) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        if !ring.field.is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.ring.vars != other.ring.vars || self.ring.field != other.ring.field {
            return Err(PolyError::RingMismatch);
        }
        Ok(())
    }

    fn add_term(&mut self, exps: Exponents, c: Elem) {
        let f = &self.ring.field;
        match self.terms.remove(&exps) {
            Some(old) => {
                let s = f.add(&old, &c);
                if !f.is_zero(&s) {
                    self.terms.insert(exps, s);
                }
            }
            None => {
                if !f.is_zero(&c) {
                    self.terms.insert(exps, c);
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.ring.field;
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), f.neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.same_ring(other)?;
        let f = &self.ring.field;
        let mut out = Polynomial::zero(&self.ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, f.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            base = base.mul(&base).expect("same ring");
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &Elem) -> Polynomial {
        let f = &self.ring.field;
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), f.mul(k, c))).collect(),
        }
    }

    /// Total degree of each term must agree; `None` for mixed or zero input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Common bidegree with respect to a split of the variables, when all
    /// terms agree; the first component is the degree in `first_block`.
    pub fn bihomogeneous_degrees(&self, first_block: &[String]) -> Option<(u32, u32)> {
        let mask: Vec<bool> =
            self.ring.vars.iter().map(|v| first_block.contains(v)).collect();
        let mut deg = None;
        for e in self.terms.keys() {
            let d1: u32 = e.iter().zip(&mask).filter(|(_, m)| **m).map(|(x, _)| x).sum();
            let d2: u32 = e.iter().zip(&mask).filter(|(_, m)| !**m).map(|(x, _)| x).sum();
            match deg {
                None => deg = Some((d1, d2)),
                Some(x) if x != (d1, d2) => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Formal partial derivative with respect to `name`.
    pub fn partial(&self, name: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .ring
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        let f = &self.ring.field;
        let mut out = Polynomial::zero(&self.ring);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, f.mul(c, &f.from_i64(e[i] as i64)));
        }
        Ok(out)
    }

    /// Ring homomorphism defined by variable images in a common target ring.
    /// Variables without an image must exist in the target and map to
    /// themselves.
    pub fn substitute(
        &self,
        images: &BTreeMap<String, Polynomial>,
        target: &Arc<Ring>,
    ) -> Result<Polynomial, PolyError> {
        if target.field != self.ring.field {
            return Err(PolyError::RingMismatch);
        }
        for img in images.values() {
            if img.ring.vars != target.vars || img.ring.field != target.field {
                return Err(PolyError::RingMismatch);
            }
        }
        let mut var_images = Vec::with_capacity(self.ring.nvars());
        for v in &self.ring.vars {
            match images.get(v) {
                Some(img) => var_images.push(img.clone()),
                None => var_images.push(Polynomial::var(target, v)?),
            }
        }
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&var_images[i].pow(exp))?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Coefficient-wise image in a target field (e.g. reduction mod p, or
    /// inclusion into an extension).
    pub fn map_field(&self, target: &FieldDescriptor) -> Result<Polynomial, PolyError> {
        let ring = Ring::from_names(target.clone(), self.ring.vars.clone());
        let mut out = Polynomial::zero(&ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), target.convert(&self.ring.field, c)?);
        }
        Ok(out)
    }

    /// Image under a field embedding sending the generator of the current
    /// coefficient field to `gen_image` in `target`.
    pub fn embed_coeffs(
        &self,
        target: &FieldDescriptor,
        gen_image: &Elem,
    ) -> Result<Polynomial, PolyError> {
        let ring = Ring::from_names(target.clone(), self.ring.vars.clone());
        let mut out = Polynomial::zero(&ring);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), self.ring.field.embed(target, gen_image, c)?);
        }
        Ok(out)
    }

    /// Restrict to a subring: the dropped variables must not occur.
    pub fn restrict(&self, target: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        if target.field != self.ring.field {
            return Err(PolyError::RingMismatch);
        }
        let idx: Vec<Option<usize>> =
            self.ring.vars.iter().map(|v| target.var_index(v)).collect();
        let mut out = Polynomial::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; target.nvars()];
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match idx[i] {
                    Some(j) => e2[j] = exp,
                    None => return Err(PolyError::UnknownVariable(self.ring.vars[i].clone())),
                }
            }
            out.add_term(e2, c.clone());
        }
        Ok(out)
    }

    /// Leading components under grevlex.
    pub fn leading(&self) -> Option<(&Exponents, &Elem)> {
        self.terms.iter().max_by(|(a, _), (b, _)| grevlex_cmp(a, b)).map(|(e, c)| (e, c))
    }

    /// Monic normalization by the grevlex leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.ring.field.inv(c).expect("leading coefficient nonzero");
                self.scale(&inv)
            }
        }
    }

    /// Terms in descending grevlex order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Elem)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| grevlex_cmp(b, a));
        v
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.ring.field;
        let mut out = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &exp)| exp > 0)
                .map(|(j, &exp)| {
                    if exp == 1 {
                        self.ring.vars[j].clone()
                    } else {
                        format!("{}^{}", self.ring.vars[j], exp)
                    }
                })
                .collect();
            let cs = f.render(c);
            let composite = f.is_composite(c);
            let (sign, body) = if mono.is_empty() {
                if composite && self.num_terms() > 1 {
                    (false, format!("({cs})"))
                } else if let Some(stripped) = cs.strip_prefix('-') {
                    (true, stripped.to_string())
                } else {
                    (false, cs)
                }
            } else if cs == "1" {
                (false, mono.join("*"))
            } else if cs == "-1" {
                (true, mono.join("*"))
            } else if composite {
                (false, format!("({cs})*{}", mono.join("*")))
            } else if let Some(stripped) = cs.strip_prefix('-') {
                (true, format!("{stripped}*{}", mono.join("*")))
            } else {
                (false, format!("{cs}*{}", mono.join("*")))
            };
            if i == 0 {
                if sign {
                    out.push('-');
                }
            } else if sign {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

/// An invertible linear change of coordinates; row `i` is the image of the
/// `i`-th variable.
#[derive(Debug, Clone)]
pub struct LinearChange {
    pub ring: Arc<Ring>,
    pub matrix: Vec<Vec<Elem>>,
}

impl LinearChange {
    pub fn new(ring: &Arc<Ring>, matrix: Vec<Vec<Elem>>) -> Result<LinearChange, PolyError> {
        let n = ring.nvars();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(PolyError::RingMismatch);
        }
        let t = LinearChange { ring: ring.clone(), matrix };
        if t.inverse_matrix().is_none() {
            return Err(PolyError::SingularMatrix);
        }
        Ok(t)
    }

    pub fn identity(ring: &Arc<Ring>) -> LinearChange {
        let n = ring.nvars();
        let f = &ring.field;
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        LinearChange { ring: ring.clone(), matrix }
    }

    fn inverse_matrix(&self) -> Option<Vec<Vec<Elem>>> {
        let f = &self.ring.field;
        let n = self.matrix.len();
        let mut a = self.matrix.clone();
        let mut inv: Vec<Vec<Elem>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !f.is_zero(&a[r][col]))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let pinv = f.inv(&a[col][col]).ok()?;
            for j in 0..n {
                a[col][j] = f.mul(&a[col][j], &pinv);
                inv[col][j] = f.mul(&inv[col][j], &pinv);
            }
            for r in 0..n {
                if r == col || f.is_zero(&a[r][col]) {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = f.mul(&factor, &a[col][j]);
                    a[r][j] = f.sub(&a[r][j], &t);
                    let t = f.mul(&factor, &inv[col][j]);
                    inv[r][j] = f.sub(&inv[r][j], &t);
                }
            }
        }
        Some(inv)
    }

    pub fn inverse(&self) -> LinearChange {
        LinearChange {
            ring: self.ring.clone(),
            matrix: self.inverse_matrix().expect("validated invertible"),
        }
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if p.ring.vars != self.ring.vars || p.ring.field != self.ring.field {
            return Err(PolyError::RingMismatch);
        }
        let mut images = BTreeMap::new();
        for (i, v) in self.ring.vars.iter().enumerate() {
            let mut img = Polynomial::zero(&self.ring);
            for (j, w) in self.ring.vars.iter().enumerate() {
                if !self.ring.field.is_zero(&self.matrix[i][j]) {
                    let t = Polynomial::var(&self.ring, w)?.scale(&self.matrix[i][j]);
                    img = img.add(&t)?;
                }
            }
            images.insert(v.clone(), img);
        }
        p.substitute(&images, &self.ring)
    }
}

/// Convenience: a rational constant.
pub fn qelem(n: i64, d: i64) -> Elem {
    Elem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn qring() -> Arc<Ring> {
        Ring::new(FieldDescriptor::Rational, &["x0", "x1", "x2", "x3", "x4"])
    }

    #[test]
    fn grevlex_order_basics() {
        // x0^2 > x0*x1 > x1^2 > x0 in grevlex with x0 > x1
        assert_eq!(grevlex_cmp(&[2, 0], &[1, 1]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[1, 1], &[0, 2]), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[0, 2], &[1, 0]), Ordering::Greater);
    }

    #[test]
    fn binomial_cube() {
        let r = qring();
        let p = parse("x0+1", &r).unwrap().pow(3);
        let q = parse("x0^3+3*x0^2+3*x0+1", &r).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn difference_of_squares() {
        let r = qring();
        let p = parse("x0+x1", &r).unwrap();
        let q = parse("x0-x1", &r).unwrap();
        assert_eq!(p.mul(&q).unwrap(), parse("x0^2-x1^2", &r).unwrap());
    }

    #[test]
    fn partial_derivative_burkhardt() {
        let r = qring();
        let b =
            parse("x0^4 - x0*(x1^3+x2^3+x3^3+x4^3) + 3*x1*x2*x3*x4", &r).unwrap();
        assert_eq!(b.num_terms(), 6);
        assert_eq!(b.homogeneous_degree(), Some(4));
        let d1 = b.partial("x1").unwrap();
        assert_eq!(d1, parse("-3*x0*x1^2 + 3*x2*x3*x4", &r).unwrap());
    }

    #[test]
    fn substitution_is_evaluation() {
        let r = qring();
        let p = parse("x0^2+x1", &r).unwrap();
        let mut images = BTreeMap::new();
        images.insert("x0".into(), parse("x1", &r).unwrap());
        images.insert("x1".into(), Polynomial::zero(&r));
        let s = p.substitute(&images, &r).unwrap();
        assert_eq!(s, parse("x1^2", &r).unwrap());
    }

    #[test]
    fn zero_degree_absent() {
        let r = qring();
        assert_eq!(Polynomial::zero(&r).homogeneous_degree(), None);
        assert_eq!(Polynomial::zero(&r).bihomogeneous_degrees(&["x0".into()]), None);
    }

    #[test]
    fn apply_change_round_trip() {
        let r = qring();
        let b = parse("x0^4 - x0*(x1^3+x2^3+x3^3+x4^3) + 3*x1*x2*x3*x4", &r).unwrap();
        let f = &r.field;
        // swap x0 <-> x1, shear x2 -> x2 + x3
        let mut m = LinearChange::identity(&r).matrix;
        m[0][0] = f.zero();
        m[0][1] = f.one();
        m[1][1] = f.zero();
        m[1][0] = f.one();
        m[2][3] = f.one();
        let t = LinearChange::new(&r, m).unwrap();
        let moved = t.apply(&b).unwrap();
        assert_ne!(moved, b);
        assert_eq!(t.inverse().apply(&moved).unwrap(), b);
        assert_eq!(moved.homogeneous_degree(), Some(4));
    }

    #[test]
    fn map_field_reduction() {
        let r = qring();
        let b = parse("x0^4 - x0*(x1^3+x2^3+x3^3+x4^3) + 3*x1*x2*x3*x4", &r).unwrap();
        let fp = FieldDescriptor::prime_field(10007).unwrap();
        let reduced = b.map_field(&fp).unwrap();
        assert_eq!(reduced.num_terms(), 6);
        // coefficient 1/7 has no image in F_7
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        let bad = Polynomial::constant(&r, qelem(1, 7));
        assert!(bad.map_field(&f7).is_err());
    }
}
