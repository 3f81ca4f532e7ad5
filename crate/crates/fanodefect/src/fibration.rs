//! The quartic-with-a-plane pipeline: plane containment and normalization,
//! the blowup to a cubic del Pezzo fibration, reducible-fibre detection and
//! classification, the 8+2N+M class-group bound, the three combinatorial
//! terminality checks, and modular singular-point counting.

use crate::field::{Elem, FieldDescriptor, FieldError, FieldSummary};
use crate::ideals::{
    buchberger, eliminate, ideal_member, projective_cell_degrees, GbBudget, IdealError,
    MonomialOrder,
};
use crate::poly::{LinearChange, PolyError, Polynomial, Ring};
use crate::roots::{
    adjoin_sqrt, factor_squarefree_q, points_in_field, q_squarefree_part, sqrt_in,
    RootsError,
};
use crate::univar::{fp_trim, q_mul, q_trim, Rat};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

pub const DEFAULT_PRIMES: [u64; 3] = [10007, 10009, 10037];

#[derive(Debug, thiserror::Error)]
pub enum FibError {
    #[error("expected a homogeneous form of degree {expected}")]
    WrongDegree { expected: u32 },
    #[error("the plane's linear forms are dependent")]
    PlaneDependent,
    #[error("quartic does not lie in the ideal of the plane")]
    MembershipFailed,
    #[error("characteristic {0} is too small for fibre classification")]
    SmallCharacteristic(u64),
    #[error("the generic fibre is already reducible; input is out of scope")]
    GenericFibreReducible,
    #[error("fibre parameter (0:0) rejected")]
    ZeroParameter,
    #[error("fibre vanishes identically at the requested parameter")]
    ZeroFibre,
    #[error("no configured prime splits every fibre field")]
    NoSplittingPrime,
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone)]
pub struct PlaneInP4 {
    pub l1: Polynomial,
    pub l2: Polynomial,
}

impl PlaneInP4 {
    pub fn new(l1: Polynomial, l2: Polynomial) -> Result<PlaneInP4, FibError> {
        for l in [&l1, &l2] {
            if l.homogeneous_degree() != Some(1) {
                return Err(FibError::WrongDegree { expected: 1 });
            }
        }
        let f = &l1.ring.field;
        let a = linear_coeffs(&l1);
        let b = linear_coeffs(&l2);
        let independent = (0..a.len()).any(|i| {
            (0..a.len()).any(|j| {
                i != j
                    && f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i])) != f.zero()
            })
        });
        if !independent {
            return Err(FibError::PlaneDependent);
        }
        Ok(PlaneInP4 { l1, l2 })
    }

    /// The standard plane {x0 = x1 = 0}.
    pub fn standard(ring: &Arc<Ring>) -> PlaneInP4 {
        PlaneInP4 {
            l1: Polynomial::var(ring, &ring.vars[0]).unwrap(),
            l2: Polynomial::var(ring, &ring.vars[1]).unwrap(),
        }
    }
}

fn linear_coeffs(l: &Polynomial) -> Vec<Elem> {
    let n = l.ring.nvars();
    let f = &l.ring.field;
    let mut out = vec![f.zero(); n];
    for (e, c) in &l.terms {
        let i = e.iter().position(|&x| x == 1).unwrap();
        out[i] = c.clone();
    }
    out
}

#[derive(Debug, Clone)]
pub struct CubicFibration {
    /// Bigraded total form in the ring (t0, t1, x, x2, x3, x4).
    pub total_form: Polynomial,
    pub a3: Polynomial,
    pub b3: Polynomial,
    pub quartic: Polynomial,
    pub change: LinearChange,
}

pub fn contains_plane(quartic: &Polynomial, plane: &PlaneInP4) -> Result<bool, FibError> {
    if quartic.homogeneous_degree() != Some(4) {
        return Err(FibError::WrongDegree { expected: 4 });
    }
    Ok(ideal_member(
        quartic,
        &[plane.l1.clone(), plane.l2.clone()],
        GbBudget::default(),
    )?)
}

/// A coordinate change moving the plane to {x0 = x1 = 0}, and the quartic in
/// the new coordinates.
pub fn normalize_plane(
    quartic: &Polynomial,
    plane: &PlaneInP4,
) -> Result<(Polynomial, LinearChange), FibError> {
    let ring = quartic.ring.clone();
    let f = ring.field.clone();
    let n = ring.nvars();
    let mut rows = vec![linear_coeffs(&plane.l1), linear_coeffs(&plane.l2)];
    // complete to an invertible matrix with standard basis vectors
    for j in 0..n {
        if rows.len() == n {
            break;
        }
        let mut cand = vec![f.zero(); n];
        cand[j] = f.one();
        let mut trial = rows.clone();
        trial.push(cand);
        if matrix_rank(&f, &trial) == trial.len() {
            rows = trial;
        }
    }
    if rows.len() != n || matrix_rank(&f, &rows) != n {
        return Err(FibError::PlaneDependent);
    }
    let m = LinearChange::new(&ring, rows)?;
    let t = m.inverse();
    let q2 = t.apply(quartic)?;
    Ok((q2, t))
}

fn matrix_rank(f: &FieldDescriptor, rows: &[Vec<Elem>]) -> usize {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !f.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = f.inv(&m[rank][col]).expect("nonzero pivot");
        for c in 0..ncols {
            m[rank][c] = f.mul(&m[rank][c], &inv);
        }
        for r in 0..m.len() {
            if r != rank && !f.is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let s = f.mul(&m[rank][c], &factor);
                    m[r][c] = f.sub(&m[r][c], &s);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The canonical split quartic′ = x0·a3 + x1·b3: b3 collects the x0-free
/// terms (divided by x1), a3 the rest (divided by x0).
pub fn split_ab(quartic: &Polynomial) -> Result<(Polynomial, Polynomial), FibError> {
    if quartic.homogeneous_degree() != Some(4) {
        return Err(FibError::WrongDegree { expected: 4 });
    }
    let ring = quartic.ring.clone();
    let mut a3 = Polynomial::zero(&ring);
    let mut b3 = Polynomial::zero(&ring);
    for (e, c) in &quartic.terms {
        let mut e2 = e.clone();
        if e[0] > 0 {
            e2[0] -= 1;
            a3.terms.insert(e2, c.clone());
        } else if e[1] > 0 {
            e2[1] -= 1;
            b3.terms.insert(e2, c.clone());
        } else {
            return Err(FibError::MembershipFailed);
        }
    }
    Ok((a3, b3))
}

/// The fibration ring (t0, t1, x, x2, x3, x4) matching a base ring's field.
pub fn fibration_ring(base: &Ring) -> Arc<Ring> {
    Ring::new(base.field.clone(), &["t0", "t1", "x", "x2", "x3", "x4"])
}

/// Eq. (4): total form t0·a3(t0x, t1x, x2, x3, x4) + t1·b3(same).
pub fn build_fibration(
    quartic: &Polynomial,
    change: LinearChange,
    a3: &Polynomial,
    b3: &Polynomial,
) -> Result<CubicFibration, FibError> {
    for p in [a3, b3] {
        if !p.is_zero() && p.homogeneous_degree() != Some(3) {
            return Err(FibError::WrongDegree { expected: 3 });
        }
    }
    let base = a3.ring.clone();
    let rt = fibration_ring(&base);
    let t0 = Polynomial::var(&rt, "t0")?;
    let t1 = Polynomial::var(&rt, "t1")?;
    let x = Polynomial::var(&rt, "x")?;
    let mut images: BTreeMap<String, Polynomial> = BTreeMap::new();
    images.insert(base.vars[0].clone(), t0.mul(&x)?);
    images.insert(base.vars[1].clone(), t1.mul(&x)?);
    for (old, new) in base.vars[2..].iter().zip(["x2", "x3", "x4"]) {
        images.insert(old.clone(), Polynomial::var(&rt, new)?);
    }
    let total_form = t0
        .mul(&a3.substitute(&images, &rt)?)?
        .add(&t1.mul(&b3.substitute(&images, &rt)?)?)?;
    Ok(CubicFibration {
        total_form,
        a3: a3.clone(),
        b3: b3.clone(),
        quartic: quartic.clone(),
        change,
    })
}

/// The ring of fibre cubics (x, x2, x3, x4) over a coefficient field.
pub fn fibre_ring(field: FieldDescriptor) -> Arc<Ring> {
    Ring::new(field, &["x", "x2", "x3", "x4"])
}

/// The fibre cubic at (t0:t1) = (lambda:mu) over the field K, scaled monic.
pub fn fibre_at(
    fib: &CubicFibration,
    field: &FieldDescriptor,
    lambda: &Elem,
    mu: &Elem,
) -> Result<Polynomial, FibError> {
    if field.is_zero(lambda) && field.is_zero(mu) {
        return Err(FibError::ZeroParameter);
    }
    let total = fib.total_form.map_field(field)?;
    let rf = fibre_ring(field.clone());
    let mut images: BTreeMap<String, Polynomial> = BTreeMap::new();
    images.insert("t0".into(), Polynomial::constant(&rf, lambda.clone()));
    images.insert("t1".into(), Polynomial::constant(&rf, mu.clone()));
    for v in ["x", "x2", "x3", "x4"] {
        images.insert(v.into(), Polynomial::var(&rf, v)?);
    }
    let fibre = total.substitute(&images, &rf)?;
    if fibre.is_zero() {
        return Err(FibError::ZeroFibre);
    }
    Ok(fibre.monic())
}

/// Group the terms of `p` by their monomials in the variables `group`,
/// returning each coefficient as a polynomial in the remaining variables.
fn coefficients_wrt(p: &Polynomial, group: &[usize]) -> Vec<Polynomial> {
    let ring = &p.ring;
    let rest_names: Vec<String> = ring
        .vars
        .iter()
        .enumerate()
        .filter(|(i, _)| !group.contains(i))
        .map(|(_, v)| v.clone())
        .collect();
    let rest_idx: Vec<usize> =
        (0..ring.nvars()).filter(|i| !group.contains(i)).collect();
    let rest_ring = Ring::from_names(ring.field.clone(), rest_names);
    let mut buckets: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (e, c) in &p.terms {
        let key: Vec<u32> = group.iter().map(|&i| e[i]).collect();
        let rest_exp: Vec<u32> = rest_idx.iter().map(|&i| e[i]).collect();
        let entry =
            buckets.entry(key).or_insert_with(|| Polynomial::zero(&rest_ring));
        let mono = Polynomial::monomial(&rest_ring, rest_exp, c.clone());
        *entry = entry.add(&mono).expect("same ring");
    }
    buckets.into_values().collect()
}

/// Exact division of `p` by `d`, if `d` divides `p`.
pub fn divide_exact(p: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    let ring = p.ring.clone();
    let f = &ring.field;
    let (de, dc) = d.leading()?;
    let (de, dc) = (de.clone(), dc.clone());
    let mut rem = p.clone();
    let mut quo = Polynomial::zero(&ring);
    while let Some((re, rc)) = rem.leading() {
        if !de.iter().zip(re).all(|(a, b)| a <= b) {
            return None;
        }
        let shift: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
        let c = f.div(rc, &dc).expect("leading coefficient nonzero");
        let m = Polynomial::monomial(&ring, shift, c);
        rem = rem.sub(&m.mul(d).expect("same ring")).expect("same ring");
        quo = quo.add(&m).expect("same ring");
    }
    Some(quo)
}

/// Search for a monic linear factor of a cubic in 4 variables over its
/// field, by 4 pivot trials; the first pivot that admits a solution wins.
pub fn find_linear_factor(cubic: &Polynomial) -> Result<Option<Polynomial>, FibError> {
    let rf = cubic.ring.clone();
    let f = rf.field.clone();
    let n = rf.nvars();
    for pivot in 0..n {
        let others: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
        let unknowns = ["al", "be", "ga"];
        let mut names: Vec<String> = unknowns.iter().map(|s| s.to_string()).collect();
        names.extend(others.iter().map(|&i| rf.vars[i].clone()));
        let rs = Ring::from_names(f.clone(), names);
        let mut pivot_image = Polynomial::zero(&rs);
        for (u, &i) in unknowns.iter().zip(&others) {
            let prod = Polynomial::var(&rs, u)?.mul(&Polynomial::var(&rs, &rf.vars[i])?)?;
            pivot_image = pivot_image.add(&prod)?;
        }
        pivot_image = pivot_image.neg();
        let mut images: BTreeMap<String, Polynomial> = BTreeMap::new();
        images.insert(rf.vars[pivot].clone(), pivot_image);
        for &i in &others {
            images.insert(rf.vars[i].clone(), Polynomial::var(&rs, &rf.vars[i])?);
        }
        let image = cubic.substitute(&images, &rs)?;
        if image.is_zero() {
            // the cubic is the pivot variable times a form independent of it
            let mut exps = vec![0u32; n];
            exps[pivot] = 1;
            return Ok(Some(Polynomial::monomial(&rf, exps, f.one())));
        }
        let group: Vec<usize> = (3..3 + others.len()).collect();
        let gens = coefficients_wrt(&image, &group);
        let pts = match points_in_field(&gens) {
            Ok(p) => p,
            Err(RootsError::Budget(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        let mut pts = pts;
        pts.sort();
        // take the lexicographically largest solution for determinism
        if let Some(pt) = pts.last() {
            let mut l = Polynomial::zero(&rf);
            let mut exps = vec![0u32; n];
            exps[pivot] = 1;
            l = l.add(&Polynomial::monomial(&rf, exps, f.one()))?;
            for (c, &i) in pt.iter().zip(&others) {
                let mut e = vec![0u32; n];
                e[i] = 1;
                l = l.add(&Polynomial::monomial(&rf, e, c.clone()))?;
            }
            return Ok(Some(l));
        }
    }
    Ok(None)
}

/// Gram matrix of a quadratic form in the ring's variables.
fn gram_matrix(q: &Polynomial) -> Result<Vec<Vec<Elem>>, FibError> {
    let f = q.ring.field.clone();
    let ch = f.characteristic();
    if ch == 2 || ch == 3 || ch == 5 {
        return Err(FibError::SmallCharacteristic(ch));
    }
    let n = q.ring.nvars();
    let half = f.inv(&f.from_i64(2)).expect("char != 2");
    let mut g = vec![vec![f.zero(); n]; n];
    for (e, c) in &q.terms {
        let support: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
        match support.as_slice() {
            [i] if e[*i] == 2 => g[*i][*i] = c.clone(),
            [i, j] if e[*i] == 1 && e[*j] == 1 => {
                let h = f.mul(c, &half);
                g[*i][*j] = h.clone();
                g[*j][*i] = h;
            }
            _ => unreachable!("form is not quadratic"),
        }
    }
    Ok(g)
}

/// Congruent diagonalization: returns pairs (lambda_k, z_k) with z_k linear
/// forms such that q = sum lambda_k z_k^2.
fn diagonalize_quadric(q: &Polynomial) -> Result<Vec<(Elem, Polynomial)>, FibError> {
    let f = q.ring.field.clone();
    let ring = q.ring.clone();
    let n = ring.nvars();
    let mut g = gram_matrix(q)?;
    // rows of `forms` express the new coordinates z_k in the old variables
    let mut forms: Vec<Vec<Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
        .collect();
    for k in 0..n {
        if f.is_zero(&g[k][k]) {
            if let Some(l) = (k + 1..n).find(|&l| !f.is_zero(&g[l][l])) {
                g.swap(k, l);
                for row in g.iter_mut() {
                    row.swap(k, l);
                }
                forms.swap(k, l);
            } else if let Some(l) = (k + 1..n).find(|&l| !f.is_zero(&g[k][l])) {
                // no nonzero diagonal: mix in row l to create one
                for j in 0..n {
                    let s = g[l][j].clone();
                    g[k][j] = f.add(&g[k][j], &s);
                }
                for i in 0..n {
                    let s = g[i][l].clone();
                    g[i][k] = f.add(&g[i][k], &s);
                }
                // (row_k of E += row_l) corresponds to z_l -= z_k downstream
                let fk = forms[k].clone();
                for (a, b) in forms[l].iter_mut().zip(&fk) {
                    *a = f.sub(a, b);
                }
            } else {
                continue;
            }
        }
        let pk = g[k][k].clone();
        for l in k + 1..n {
            if f.is_zero(&g[l][k]) {
                continue;
            }
            let factor = f.div(&g[l][k], &pk).expect("nonzero diagonal");
            for j in 0..n {
                let s = f.mul(&g[k][j], &factor);
                g[l][j] = f.sub(&g[l][j], &s);
            }
            for i in 0..n {
                let s = f.mul(&g[i][k], &factor);
                g[i][l] = f.sub(&g[i][l], &s);
            }
            // row_l of E -= factor * row_k  =>  z_k += factor * z_l
            let fl = forms[l].clone();
            for (a, b) in forms[k].iter_mut().zip(&fl) {
                *a = f.add(a, &f.mul(&factor, b));
            }
        }
    }
    let mut out = vec![];
    for k in 0..n {
        if f.is_zero(&g[k][k]) {
            continue;
        }
        let mut z = Polynomial::zero(&ring);
        for (j, c) in forms[k].iter().enumerate() {
            if !f.is_zero(c) {
                let mut e = vec![0u32; n];
                e[j] = 1;
                z = z.add(&Polynomial::monomial(&ring, e, c.clone()))?;
            }
        }
        out.push((g[k][k].clone(), z));
    }
    // sanity: the diagonal forms reconstruct q
    let mut acc = Polynomial::zero(&ring);
    for (lam, z) in &out {
        acc = acc.add(&z.mul(z)?.scale(lam))?;
    }
    debug_assert_eq!(acc, *q, "congruent diagonalization is exact");
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct FibreReport {
    pub component_count: u32,
    pub reduced: bool,
    pub quadric_rank: Option<u32>,
    /// Irreducible components with multiplicities, over the splitting field.
    #[serde(skip)]
    pub components: Vec<(Polynomial, u32)>,
    pub splitting_field: FieldSummary,
    /// Image of the coefficient field's generator inside the splitting
    /// field, when the latter is a proper extension; used to restrict
    /// embeddings back to the parameter field.
    #[serde(skip)]
    pub base_gen_image: Option<Elem>,
}

impl FibreReport {
    pub fn rendered_components(&self) -> Vec<(String, u32)> {
        self.components.iter().map(|(p, m)| (p.render(), *m)).collect()
    }
}

fn aggregate(parts: Vec<Polynomial>) -> (Vec<(Polynomial, u32)>, u32, bool) {
    let mut out: Vec<(Polynomial, u32)> = vec![];
    for p in parts {
        let p = p.monic();
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, m)) => *m += 1,
            None => out.push((p, 1)),
        }
    }
    let count = out.len() as u32;
    let reduced = out.iter().all(|(_, m)| *m == 1);
    (out, count, reduced)
}

/// Component structure of a cubic surface form over an exact field.
pub fn classify_fibre(cubic: &Polynomial) -> Result<FibreReport, FibError> {
    let f = cubic.ring.field.clone();
    let ch = f.characteristic();
    if ch == 2 || ch == 3 || ch == 5 {
        return Err(FibError::SmallCharacteristic(ch));
    }
    if cubic.homogeneous_degree() != Some(3) {
        return Err(FibError::WrongDegree { expected: 3 });
    }
    let Some(l) = find_linear_factor(cubic)? else {
        return Ok(FibreReport {
            component_count: 1,
            reduced: true,
            quadric_rank: None,
            components: vec![(cubic.monic(), 1)],
            splitting_field: f.summary(),
            base_gen_image: f.generator(),
        });
    };
    let q2 = divide_exact(cubic, &l).expect("found factor divides");
    let diag = diagonalize_quadric(&q2)?;
    let rank = diag.len() as u32;
    match rank {
        3 | 4 => {
            let (components, component_count, reduced) = aggregate(vec![l, q2]);
            Ok(FibreReport {
                component_count,
                reduced,
                quadric_rank: Some(rank),
                components,
                splitting_field: f.summary(),
                base_gen_image: f.generator(),
            })
        }
        2 => {
            let (la, za) = diag[0].clone();
            let (lb, zb) = diag[1].clone();
            // q2 = la*(za + s*zb)(za - s*zb) with s^2 = -lb/la
            let s2 = f.neg(&f.div(&lb, &la).expect("nonzero"));
            if ch == 0 {
                let adj = adjoin_sqrt(&f, &s2)?;
                let k2 = adj.field.clone();
                let lift = |p: &Polynomial| -> Result<Polynomial, FibError> {
                    Ok(p.embed_coeffs(&k2, &adj.gen_image)?)
                };
                let ring2 = fibre_ring(k2.clone());
                let za2 = lift(&za)?.restrict(&ring2)?;
                let zb2 = lift(&zb)?.restrict(&ring2)?;
                let l2 = lift(&l)?.restrict(&ring2)?;
                let szb = za2.add(&zb2.scale(&adj.sqrt))?;
                let szb2 = za2.sub(&zb2.scale(&adj.sqrt))?;
                let (components, component_count, reduced) = aggregate(vec![l2, szb, szb2]);
                Ok(FibreReport {
                    component_count,
                    reduced,
                    quadric_rank: Some(2),
                    components,
                    splitting_field: k2.summary(),
                    base_gen_image: f.generator().map(|_| adj.gen_image.clone()),
                })
            } else {
                let s = match sqrt_in(&f, &s2)? {
                    Some(s) => s,
                    None => {
                        let ext = quadratic_extension_with_sqrt(&f, &s2)?;
                        let ring2 = fibre_ring(ext.0.clone());
                        let conv = |p: &Polynomial| -> Result<Polynomial, FibError> {
                            Ok(p.map_field(&ext.0)?.restrict(&ring2)?)
                        };
                        let za2 = conv(&za)?;
                        let zb2 = conv(&zb)?;
                        let l2 = conv(&l)?;
                        let plus = za2.add(&zb2.scale(&ext.1))?;
                        let minus = za2.sub(&zb2.scale(&ext.1))?;
                        let (components, component_count, reduced) =
                            aggregate(vec![l2, plus, minus]);
                        return Ok(FibreReport {
                            component_count,
                            reduced,
                            quadric_rank: Some(2),
                            components,
                            splitting_field: ext.0.summary(),
                            base_gen_image: None,
                        });
                    }
                };
                let plus = za.add(&zb.scale(&s))?;
                let minus = za.sub(&zb.scale(&s))?;
                let (components, component_count, reduced) = aggregate(vec![l, plus, minus]);
                Ok(FibreReport {
                    component_count,
                    reduced,
                    quadric_rank: Some(2),
                    components,
                    splitting_field: f.summary(),
                    base_gen_image: f.generator(),
                })
            }
        }
        1 => {
            let (_, z) = diag[0].clone();
            let (components, component_count, _) = aggregate(vec![l, z.clone(), z]);
            Ok(FibreReport {
                component_count,
                reduced: false,
                quadric_rank: Some(1),
                components,
                splitting_field: f.summary(),
                base_gen_image: f.generator(),
            })
        }
        _ => unreachable!("nonzero quadric has positive rank"),
    }
}

/// F_p(sqrt(a)) for a non-square a: the minimal polynomial z^2 - a is
/// automatically irreducible.
fn quadratic_extension_with_sqrt(
    f: &FieldDescriptor,
    a: &Elem,
) -> Result<(FieldDescriptor, Elem), FibError> {
    match (f, a) {
        (FieldDescriptor::PrimeField { p }, Elem::Fp(v)) => {
            let k = FieldDescriptor::prime_extension(*p, "s", fp_trim(vec![(p - v) % p, 0, 1]))?;
            let s = k.generator().unwrap();
            Ok((k, s))
        }
        _ => Err(FibError::Budget(
            "square-root extension of a composite finite field is not supported".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    /// Affine chart t1 = 1; the parameter is a root of the minimal polynomial.
    Affine,
    /// The single point (1:0).
    Infinity,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocusPoint {
    pub chart: Chart,
    /// Square-free minimal polynomial over Q (ascending coefficients);
    /// empty for the point at infinity.
    #[serde(serialize_with = "ser_rats")]
    pub minpoly: Vec<Rat>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Candidate degeneration parameters of a cone family: restrict the chart
/// cubic to two fixed lines, take the gcd of the binary-cubic
/// discriminants as polynomials in T. A repeated factor of the fibre
/// forces a repeated root on every line.
fn degeneration_candidates(chart_cubic: &Polynomial) -> Result<Vec<Rat>, FibError> {
    let base = chart_cubic.ring.clone();
    let rsw = Ring::new(base.field.clone(), &["T", "s", "w"]);
    let lines: [[(i64, i64); 4]; 2] = [
        [(1, 7), (2, 11), (3, 13), (5, 17)],
        [(1, 5), (3, 1), (7, 11), (2, 4)],
    ];
    let mut discs: Vec<Vec<Rat>> = vec![];
    for line in lines {
        let mut images: BTreeMap<String, Polynomial> = BTreeMap::new();
        images.insert("T".into(), Polynomial::var(&rsw, "T")?);
        let s = Polynomial::var(&rsw, "s")?;
        let w = Polynomial::var(&rsw, "w")?;
        for (v, (a, b)) in base.vars[1..].iter().zip(line) {
            let f = &rsw.field;
            let img = s.scale(&f.from_i64(a)).add(&w.scale(&f.from_i64(b)))?;
            images.insert(v.clone(), img);
        }
        let restricted = chart_cubic.substitute(&images, &rsw)?;
        // binary cubic coefficients c_k(T) of s^k w^(3-k)
        let mut c: Vec<Vec<Rat>> = vec![vec![]; 4];
        for (e, coeff) in &restricted.terms {
            let (et, es) = (e[0] as usize, e[1] as usize);
            if c[es].len() <= et {
                c[es].resize(et + 1, Rat::zero());
            }
            if let Elem::Rat(r) = coeff {
                c[es][et] += r;
            }
        }
        let c: Vec<Vec<Rat>> = c.into_iter().map(q_trim).collect();
        let sc = |k: i64, p: &[Rat]| crate::univar::q_scale(p, &Rat::from_integer(k.into()));
        let disc = crate::univar::q_add(
            &crate::univar::q_sub(
                &crate::univar::q_add(
                    &sc(18, &q_mul(&q_mul(&c[3], &c[2]), &q_mul(&c[1], &c[0]))),
                    &q_mul(&q_mul(&c[2], &c[2]), &q_mul(&c[1], &c[1])),
                ),
                &crate::univar::q_add(
                    &sc(4, &q_mul(&q_mul(&c[2], &c[2]), &q_mul(&c[2], &c[0]))),
                    &sc(4, &q_mul(&q_mul(&c[3], &c[1]), &q_mul(&c[1], &c[1]))),
                ),
            ),
            &sc(-27, &q_mul(&q_mul(&c[3], &c[3]), &q_mul(&c[0], &c[0]))),
        );
        discs.push(q_trim(disc));
    }
    if discs[0].is_empty() {
        return Ok(discs[1].clone());
    }
    if discs[1].is_empty() {
        return Ok(discs[0].clone());
    }
    Ok(crate::univar::q_gcd(&discs[0], &discs[1]))
}

/// Whether the fibre at a root of `minpoly` is singular along a curve or
/// worse: its affine singular cone has dimension at least 2.
fn fibre_has_positive_dim_singularity(
    fib: &CubicFibration,
    minpoly: &[Rat],
) -> Result<bool, FibError> {
    let (field, lambda) = if minpoly.len() == 2 {
        (FieldDescriptor::Rational, Elem::Rat(-minpoly[0].clone()))
    } else {
        let k = FieldDescriptor::rational_extension("u", minpoly.to_vec())?;
        let u = k.generator().unwrap();
        (k, u)
    };
    let fibre = fibre_at(fib, &field, &lambda, &field.one())?;
    let mut gens = vec![fibre.clone()];
    for v in &fibre.ring.vars.clone() {
        let d = fibre.partial(v)?;
        if !d.is_zero() {
            gens.push(d);
        }
    }
    let gb = buchberger(&gens, MonomialOrder::Grevlex, GbBudget::default())?;
    Ok(crate::ideals::krull_dimension(&gb) >= 2)
}

const GENERIC_PARAMS: [(i64, i64); 3] = [(7, 11), (13, 4), (23, 6)];

/// Parameters over which the fibre cubic acquires a linear factor, as
/// irreducible minimal polynomials in the chart t1 = 1 plus an explicit
/// check at (1:0).
pub fn reducibility_locus(fib: &CubicFibration) -> Result<Vec<LocusPoint>, FibError> {
    let q = FieldDescriptor::Rational;
    // generic-fibre probe: at least one test parameter must be irreducible
    let mut generic_ok = false;
    for (n, d) in GENERIC_PARAMS {
        let lam = Elem::Rat(Rat::new(BigInt::from(n), BigInt::from(d)));
        let fibre = fibre_at(fib, &q, &lam, &q.one())?;
        if classify_fibre(&fibre)?.component_count == 1 {
            generic_ok = true;
            break;
        }
    }
    if !generic_ok {
        return Err(FibError::GenericFibreReducible);
    }

    // chart t1 = 1: carry the parameter T as an extra ring variable
    let base = fib.total_form.ring.clone();
    let rt = Ring::new(base.field.clone(), &["T", "x", "x2", "x3", "x4"]);
    let mut images: BTreeMap<String, Polynomial> = BTreeMap::new();
    images.insert("t0".into(), Polynomial::var(&rt, "T")?);
    images.insert("t1".into(), Polynomial::one(&rt));
    for v in ["x", "x2", "x3", "x4"] {
        images.insert(v.into(), Polynomial::var(&rt, v)?);
    }
    let chart_cubic = fib.total_form.substitute(&images, &rt)?;

    let mut locus: Vec<Rat> = vec![Rat::one()];
    let mut dominant = false;
    for pivot in 1..=4usize {
        let others: Vec<usize> = (1..=4).filter(|&i| i != pivot).collect();
        let unknowns = ["al", "be", "ga"];
        let mut names = vec!["T".to_string()];
        names.extend(unknowns.iter().map(|s| s.to_string()));
        names.extend(others.iter().map(|&i| rt.vars[i].clone()));
        let rs = Ring::from_names(base.field.clone(), names);
        let mut pivot_image = Polynomial::zero(&rs);
        for (u, &i) in unknowns.iter().zip(&others) {
            pivot_image = pivot_image
                .add(&Polynomial::var(&rs, u)?.mul(&Polynomial::var(&rs, &rt.vars[i])?)?)?;
        }
        pivot_image = pivot_image.neg();
        let mut im: BTreeMap<String, Polynomial> = BTreeMap::new();
        im.insert("T".into(), Polynomial::var(&rs, "T")?);
        im.insert(rt.vars[pivot].clone(), pivot_image);
        for &i in &others {
            im.insert(rt.vars[i].clone(), Polynomial::var(&rs, &rt.vars[i])?);
        }
        let image = chart_cubic.substitute(&im, &rs)?;
        let group: Vec<usize> = (4..4 + others.len()).collect();
        let gens = coefficients_wrt(&image, &group);
        let elim_vars: Vec<String> = unknowns.iter().map(|s| s.to_string()).collect();
        let projected = eliminate(&gens, &elim_vars, GbBudget::default())?;
        let univ: Vec<Vec<Rat>> = projected
            .iter()
            .map(|p| {
                p.terms
                    .iter()
                    .fold(vec![], |acc: Vec<Rat>, (e, c)| {
                        let mut acc = acc;
                        let d = e[0] as usize;
                        if acc.len() <= d {
                            acc.resize(d + 1, Rat::zero());
                        }
                        if let Elem::Rat(r) = c {
                            acc[d] += r;
                        }
                        acc
                    })
            })
            .map(q_trim)
            .collect();
        let mut pivot_poly: Vec<Rat> = vec![];
        for u in &univ {
            if u.is_empty() {
                continue;
            }
            pivot_poly = if pivot_poly.is_empty() {
                u.clone()
            } else {
                crate::univar::q_gcd(&pivot_poly, u)
            };
        }
        if pivot_poly.is_empty() {
            // zero elimination ideal: the incidence system is dominant, so
            // every fibre carries a geometric linear factor (a cone family);
            // only degenerations can be reported
            dominant = true;
            continue;
        }
        if pivot_poly.len() == 1 {
            continue; // unit ideal: this pivot never yields a factor
        }
        locus = q_mul(&locus, &pivot_poly);
    }
    if dominant {
        // every fibre is geometrically reducible; report the parameters
        // where the fibre degenerates further (extra or non-reduced
        // components), detected as a positive-dimensional singular locus
        let candidates = degeneration_candidates(&chart_cubic)?;
        if candidates.is_empty() {
            return Err(FibError::GenericFibreReducible);
        }
        for m in factor_squarefree_q(&q_squarefree_part(&candidates))? {
            if fibre_has_positive_dim_singularity(fib, &m)? {
                locus = q_mul(&locus, &m);
            }
        }
    }
    let sf = q_squarefree_part(&locus);
    let mut out = vec![];
    if sf.len() > 1 {
        for m in factor_squarefree_q(&sf)? {
            out.push(LocusPoint { chart: Chart::Affine, minpoly: m });
        }
    }
    // the point (1:0), missed by the affine chart
    let inf = fibre_at(fib, &q, &q.one(), &q.zero())?;
    let inf_report = classify_fibre(&inf)?;
    if inf_report.component_count >= 2 || !inf_report.reduced {
        out.push(LocusPoint { chart: Chart::Infinity, minpoly: vec![] });
    }
    Ok(out)
}

/// A classified locus point: the parameter's field, the fibre and its
/// report, and how many geometric fibres it accounts for (the degree of
/// the minimal polynomial).
#[derive(Debug, Clone)]
pub struct FibreAnalysis {
    pub point: LocusPoint,
    pub field: FieldDescriptor,
    pub lambda: Elem,
    pub mu: Elem,
    pub multiplicity: u32,
    pub report: FibreReport,
}

pub fn analyze_locus(fib: &CubicFibration) -> Result<Vec<FibreAnalysis>, FibError> {
    let locus = reducibility_locus(fib)?;
    let mut out = vec![];
    for point in locus {
        let (field, lambda, mu, multiplicity) = match point.chart {
            Chart::Infinity => {
                let q = FieldDescriptor::Rational;
                (q.clone(), q.one(), q.zero(), 1)
            }
            Chart::Affine => {
                let deg = point.minpoly.len() - 1;
                if deg == 1 {
                    let q = FieldDescriptor::Rational;
                    let root = Elem::Rat(-point.minpoly[0].clone());
                    (q.clone(), root, q.one(), 1)
                } else {
                    let k = FieldDescriptor::rational_extension("u", point.minpoly.clone())?;
                    let u = k.generator().unwrap();
                    (k.clone(), u, k.one(), deg as u32)
                }
            }
        };
        let fibre = fibre_at(fib, &field, &lambda, &mu)?;
        let report = classify_fibre(&fibre)?;
        out.push(FibreAnalysis { point, field, lambda, mu, multiplicity, report });
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectBound {
    /// Reducible fibres with 3 components (counted with conjugates).
    pub n3: u32,
    /// Reducible fibres with 2 components.
    pub m2: u32,
    /// Non-reduced fibres, reported but excluded from the bound.
    pub non_reduced: u32,
    pub cl_rank_bound: i64,
    pub defect_bound: i64,
}

/// Lemma 13: rk Cl is bounded by 8 + 2N + M over the reduced reducible
/// fibres; each minimal polynomial accounts for one fibre per conjugate.
pub fn defect_bound(analyses: &[FibreAnalysis]) -> DefectBound {
    let mut n3 = 0u32;
    let mut m2 = 0u32;
    let mut non_reduced = 0u32;
    for a in analyses {
        if !a.report.reduced {
            non_reduced += a.multiplicity;
        } else {
            match a.report.component_count {
                3 => n3 += a.multiplicity,
                2 => m2 += a.multiplicity,
                _ => {}
            }
        }
    }
    let cl = 8 + 2 * n3 as i64 + m2 as i64;
    DefectBound { n3, m2, non_reduced, cl_rank_bound: cl, defect_bound: cl - 1 }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// (a) no fibre's linear factor is the variable x (tangent-plane case).
    pub no_tangent_plane: bool,
    /// (b) the lines cut on the plane are pairwise distinct.
    pub lines_distinct: bool,
    /// (c) no three of the lines are concurrent.
    pub no_three_concurrent: bool,
    pub fibre_count: u32,
    pub witness_prime: u64,
}

/// Theorem 14 Steps 1-3, checked on the lines cut on the plane by the
/// fibre planes. Extension coordinates are compared after reduction at a
/// prime where every splitting field splits completely; the checks are
/// conservative in the pass direction.
pub fn theorem14_checks(
    analyses: &[FibreAnalysis],
    primes: &[u64],
) -> Result<CheckReport, FibError> {
    let fibre_count: u32 = analyses.iter().map(|a| a.multiplicity).sum();
    assert!(fibre_count <= 4, "Theorem 14 allows at most 4 reducible fibres");
    let mut no_tangent_plane = true;
    // one canonical plane per fibre report: the distinguished linear
    // factor, as coefficient rows [c_x, c2, c3, c4] over its field
    let mut factor_rows: Vec<(FieldDescriptor, Vec<Elem>)> = vec![];
    for a in analyses {
        let mut first_line: Option<(FieldDescriptor, Vec<Elem>)> = None;
        for (comp, _) in &a.report.components {
            if comp.homogeneous_degree() != Some(1) {
                continue;
            }
            let coeffs = linear_coeffs(comp);
            let f = &comp.ring.field;
            if coeffs[1..].iter().all(|c| f.is_zero(c)) {
                no_tangent_plane = false;
                continue;
            }
            if first_line.is_none() {
                first_line = Some((f.clone(), coeffs));
            }
        }
        if let Some(line) = first_line {
            factor_rows.push(line);
        }
    }
    // pick a prime where every involved extension splits, and reduce each
    // line there under one fixed embedding
    let mut chosen: Option<(u64, Vec<[u64; 3]>)> = None;
    'primes: for &p in primes {
        let fp = FieldDescriptor::prime_field(p)?;
        let mut lines: Vec<[u64; 3]> = vec![];
        for (field, row) in &factor_rows {
            let root = match field {
                FieldDescriptor::RationalExtension { minpoly, .. } => {
                    let m: Result<Vec<Elem>, _> =
                        minpoly.iter().map(|c| fp.from_rat(c)).collect();
                    let Ok(m) = m else { continue 'primes };
                    let roots = crate::roots::roots_in_field(&fp, &m)?;
                    if roots.len() != minpoly.len() - 1 {
                        continue 'primes;
                    }
                    roots[0].clone()
                }
                _ => fp.zero(),
            };
            let img: Result<Vec<Elem>, _> =
                row.iter().map(|c| field.embed(&fp, &root, c)).collect();
            let Ok(img) = img else { continue 'primes };
            let mut v = [0u64; 3];
            for (slot, e) in v.iter_mut().zip(&img[1..]) {
                *slot = match e {
                    Elem::Fp(x) => *x,
                    _ => unreachable!(),
                };
            }
            if v != [0, 0, 0] {
                lines.push(v);
            }
        }
        chosen = Some((p, lines));
        break;
    }
    let Some((witness_prime, lines)) = chosen else {
        return Err(FibError::NoSplittingPrime);
    };
    let p = witness_prime;
    let proportional = |a: &[u64; 3], b: &[u64; 3]| -> bool {
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let left = (a[i] as u128 * b[j] as u128) % p as u128;
                    let right = (a[j] as u128 * b[i] as u128) % p as u128;
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    };
    let mut lines_distinct = true;
    for i in 0..lines.len() {
        for j in 0..i {
            if proportional(&lines[i], &lines[j]) {
                lines_distinct = false;
            }
        }
    }
    let det3 = |a: &[u64; 3], b: &[u64; 3], c: &[u64; 3]| -> u64 {
        let m = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
        let add = |x: u64, y: u64| (x + y) % p;
        let sub = |x: u64, y: u64| (x + p - y % p) % p;
        let t1 = m(a[0], sub(m(b[1], c[2]), m(b[2], c[1])));
        let t2 = m(a[1], sub(m(b[0], c[2]), m(b[2], c[0])));
        let t3 = m(a[2], sub(m(b[0], c[1]), m(b[1], c[0])));
        add(sub(t1, t2), t3)
    };
    let mut no_three_concurrent = true;
    for i in 0..lines.len() {
        for j in 0..i {
            for k in 0..j {
                if det3(&lines[i], &lines[j], &lines[k]) == 0 {
                    no_three_concurrent = false;
                }
            }
        }
    }
    Ok(CheckReport {
        no_tangent_plane,
        lines_distinct,
        no_three_concurrent,
        fibre_count,
        witness_prime,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularScan {
    pub isolated: bool,
    /// (prime, projective degree of the singular scheme); None when a cell
    /// is positive-dimensional at that prime.
    pub degrees: Vec<(u64, Option<u64>)>,
    pub agree: bool,
}

/// Modular singular-point count of a quartic: Jacobian ideal degree per
/// prime via the disjoint-cell partition.
pub fn singular_scan(quartic: &Polynomial, primes: &[u64]) -> Result<SingularScan, FibError> {
    if quartic.homogeneous_degree() != Some(4) {
        return Err(FibError::WrongDegree { expected: 4 });
    }
    let ring = quartic.ring.clone();
    let mut degrees = vec![];
    let mut isolated = true;
    for &p in primes {
        if 4 % p == 0 {
            return Err(FibError::SmallCharacteristic(p));
        }
        let fp = FieldDescriptor::prime_field(p)?;
        let qp = quartic.map_field(&fp)?;
        let partials: Vec<Polynomial> = ring
            .vars
            .iter()
            .map(|v| qp.partial(v))
            .collect::<Result<_, _>>()?;
        match projective_cell_degrees(&partials, GbBudget::default()) {
            Ok(cells) => degrees.push((p, Some(cells.iter().sum()))),
            Err(IdealError::PositiveDimensionalCell(_)) => {
                isolated = false;
                degrees.push((p, None));
            }
            Err(IdealError::ZeroIdeal) => degrees.push((p, Some(0))),
            Err(e) => return Err(e.into()),
        }
    }
    let values: Vec<Option<u64>> = degrees.iter().map(|(_, d)| *d).collect();
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    Ok(SingularScan { isolated, degrees, agree })
}

/// Normal form of a GB computation for the CLI: reduced basis and
/// dimension data.
pub fn gb_report(
    gens: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<String>, i64), FibError> {
    let gb = buchberger(gens, order, GbBudget::default())?;
    let dim = crate::ideals::krull_dimension(&gb);
    Ok((gb.generators.iter().map(|g| g.render()).collect(), dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn ring5() -> Arc<Ring> {
        Ring::new(FieldDescriptor::Rational, &["x0", "x1", "x2", "x3", "x4"])
    }

    pub fn burkhardt(ring: &Arc<Ring>) -> Polynomial {
        parse(
            "x0^4 - x0*x1^3 - x0*x2^3 - x0*x3^3 - x0*x4^3 + 3*x1*x2*x3*x4",
            ring,
        )
        .unwrap()
    }

    #[test]
    fn plane_containment() {
        let r = ring5();
        let b = burkhardt(&r);
        let plane = PlaneInP4::standard(&r);
        assert!(contains_plane(&b, &plane).unwrap());
        let fermat = parse("x0^4+x1^4+x2^4+x3^4+x4^4", &r).unwrap();
        assert!(!contains_plane(&fermat, &plane).unwrap());
        let f = parse("x0*x2^3 + x1*x3^3", &r).unwrap();
        assert!(contains_plane(&f, &plane).unwrap());
    }

    #[test]
    fn normalization_round_trip() {
        let r = ring5();
        let b = burkhardt(&r);
        let plane = PlaneInP4::new(
            parse("x0+x1", &r).unwrap(),
            parse("x2", &r).unwrap(),
        )
        .unwrap();
        let quartic = {
            // manufacture a quartic through that plane
            let c1 = parse("x3^3 - x0*x4^2", &r).unwrap();
            let c2 = parse("x4^3 + x1^2*x3", &r).unwrap();
            plane.l1.mul(&c1).unwrap().add(&plane.l2.mul(&c2).unwrap()).unwrap()
        };
        let (q2, t) = normalize_plane(&quartic, &plane).unwrap();
        assert!(contains_plane(&q2, &PlaneInP4::standard(&r)).unwrap());
        let back = t.inverse().apply(&q2).unwrap();
        assert_eq!(back, quartic);
        // identity on the standard plane
        let (qb, tb) = normalize_plane(&b, &PlaneInP4::standard(&r)).unwrap();
        assert_eq!(qb, b);
        assert_eq!(tb.apply(&b).unwrap(), b);
    }

    #[test]
    fn split_of_burkhardt() {
        let r = ring5();
        let (a3, b3) = split_ab(&burkhardt(&r)).unwrap();
        assert_eq!(a3, parse("x0^3 - x1^3 - x2^3 - x3^3 - x4^3", &r).unwrap());
        assert_eq!(b3, parse("3*x2*x3*x4", &r).unwrap());
        let (a, b) = split_ab(&parse("x0*x2^3", &r).unwrap()).unwrap();
        assert_eq!(a, parse("x2^3", &r).unwrap());
        assert!(b.is_zero());
        let (a, b) = split_ab(&parse("x1*x2^3", &r).unwrap()).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, parse("x2^3", &r).unwrap());
        assert!(split_ab(&parse("x2^4", &r).unwrap()).is_err());
    }

    fn burkhardt_fibration() -> CubicFibration {
        let r = ring5();
        let b = burkhardt(&r);
        let (a3, b3) = split_ab(&b).unwrap();
        let t = LinearChange::identity(&r);
        build_fibration(&b, t, &a3, &b3).unwrap()
    }

    #[test]
    fn burkhardt_total_form() {
        let fib = burkhardt_fibration();
        let rt = fib.total_form.ring.clone();
        let expect = parse(
            "t0^4*x^3 - t0*t1^3*x^3 - t0*x2^3 - t0*x3^3 - t0*x4^3 + 3*t1*x2*x3*x4",
            &rt,
        )
        .unwrap();
        assert_eq!(fib.total_form, expect);
    }

    #[test]
    fn central_fibres_of_burkhardt() {
        let fib = burkhardt_fibration();
        let q = FieldDescriptor::Rational;
        let f0 = fibre_at(&fib, &q, &q.zero(), &q.one()).unwrap();
        assert_eq!(f0, parse("x2*x3*x4", &f0.ring).unwrap());
        let f11 = fibre_at(&fib, &q, &q.one(), &q.one()).unwrap();
        let expect = parse("x2^3 + x3^3 + x4^3 - 3*x2*x3*x4", &f11.ring).unwrap().monic();
        assert_eq!(f11, expect);
        assert!(fibre_at(&fib, &q, &q.zero(), &q.zero()).is_err());
    }

    #[test]
    fn classify_three_planes() {
        let q = FieldDescriptor::Rational;
        let rf = fibre_ring(q);
        let c = parse("x2*x3*x4", &rf).unwrap();
        let rep = classify_fibre(&c).unwrap();
        assert_eq!(rep.component_count, 3);
        assert!(rep.reduced);
    }

    #[test]
    fn classify_cone_cubic() {
        let q = FieldDescriptor::Rational;
        let rf = fibre_ring(q);
        // x2 * (x2*x3 - x4^2 + x*x3): linear times rank-3-or-4 quadric
        let c = parse("x2*(x2*x3 - x4^2 + x*x3)", &rf).unwrap();
        let rep = classify_fibre(&c).unwrap();
        assert_eq!(rep.component_count, 2);
        assert!(rep.reduced);
        assert!(rep.quadric_rank.unwrap() >= 3);
    }

    #[test]
    fn classify_sum_of_cubes_over_cyclotomic_field() {
        let w = FieldDescriptor::rational_extension(
            "w",
            vec![Rat::one(), Rat::one(), Rat::one()],
        )
        .unwrap();
        let rf = fibre_ring(w);
        let c = parse("x2^3 + x3^3 + x4^3 - 3*x2*x3*x4", &rf).unwrap();
        let rep = classify_fibre(&c).unwrap();
        assert_eq!(rep.component_count, 3);
        assert!(rep.reduced);
        // product of components reassembles the cubic up to scalar
        let mut prod = Polynomial::one(&rep.components[0].0.ring);
        for (comp, m) in &rep.components {
            prod = prod.mul(&comp.pow(*m)).unwrap();
        }
        let target = c.map_field(&prod.ring.field).unwrap().restrict(&prod.ring).unwrap();
        assert_eq!(prod.monic(), target.monic());
    }

    #[test]
    fn classify_irreducible_cubic() {
        let q = FieldDescriptor::Rational;
        let rf = fibre_ring(q);
        let c = parse("x^3 + x2^3 + x3^3 + x4^3 + x*x2*x3", &rf).unwrap();
        let rep = classify_fibre(&c).unwrap();
        assert_eq!(rep.component_count, 1);
        assert!(rep.reduced);
    }

    #[test]
    fn classify_double_plane() {
        let q = FieldDescriptor::Rational;
        let rf = fibre_ring(q);
        let c = parse("x*x3^2", &rf).unwrap();
        let rep = classify_fibre(&c).unwrap();
        assert!(!rep.reduced);
        assert_eq!(rep.quadric_rank, Some(1));
        assert_eq!(rep.component_count, 2);
        // when the doubled factor is peeled off first the rank-2 path
        // reports the same non-reducedness
        let c2 = parse("x2^2*x3", &rf).unwrap();
        let rep2 = classify_fibre(&c2).unwrap();
        assert!(!rep2.reduced);
        assert_eq!(rep2.component_count, 2);
    }

    #[test]
    fn burkhardt_locus() {
        let fib = burkhardt_fibration();
        let locus = reducibility_locus(&fib).unwrap();
        let affine: Vec<&LocusPoint> =
            locus.iter().filter(|p| p.chart == Chart::Affine).collect();
        // roots of t(t^3-1): factors t, t-1, t^2+t+1
        assert_eq!(affine.len(), 3);
        let degrees: Vec<usize> = affine.iter().map(|p| p.minpoly.len() - 1).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        assert!(locus.iter().all(|p| p.chart != Chart::Infinity));
    }

    #[test]
    fn burkhardt_defect() {
        let fib = burkhardt_fibration();
        let analyses = analyze_locus(&fib).unwrap();
        let bound = defect_bound(&analyses);
        assert_eq!(bound.n3, 4);
        assert_eq!(bound.m2, 0);
        assert_eq!(bound.non_reduced, 0);
        assert_eq!(bound.cl_rank_bound, 16);
        assert_eq!(bound.defect_bound, 15);
    }

    #[test]
    fn burkhardt_theorem14() {
        let fib = burkhardt_fibration();
        let analyses = analyze_locus(&fib).unwrap();
        let checks = theorem14_checks(&analyses, &DEFAULT_PRIMES).unwrap();
        assert!(checks.no_tangent_plane);
        assert!(checks.lines_distinct);
        assert!(checks.no_three_concurrent);
        assert_eq!(checks.fibre_count, 4);
    }

    #[test]
    fn simple_locus_from_monomial_quartic() {
        let r = ring5();
        let q = parse("x0*x2^3 + x1*x3^3", &r).unwrap();
        let (a3, b3) = split_ab(&q).unwrap();
        let fib = build_fibration(&q, LinearChange::identity(&r), &a3, &b3).unwrap();
        let locus = reducibility_locus(&fib).unwrap();
        // reducible exactly at (0:1) and (1:0)
        let affine: Vec<&LocusPoint> =
            locus.iter().filter(|p| p.chart == Chart::Affine).collect();
        assert_eq!(affine.len(), 1);
        assert_eq!(affine[0].minpoly, vec![Rat::zero(), Rat::one()]);
        assert!(locus.iter().any(|p| p.chart == Chart::Infinity));
    }

    #[test]
    fn burkhardt_singular_scan() {
        let r = ring5();
        let scan = singular_scan(&burkhardt(&r), &DEFAULT_PRIMES).unwrap();
        assert!(scan.isolated);
        assert!(scan.agree);
        for (_, d) in &scan.degrees {
            assert_eq!(*d, Some(45));
        }
    }

    #[test]
    fn fermat_is_smooth() {
        let r = ring5();
        let fermat = parse("x0^4+x1^4+x2^4+x3^4+x4^4", &r).unwrap();
        let scan = singular_scan(&fermat, &DEFAULT_PRIMES).unwrap();
        assert!(scan.isolated);
        for (_, d) in &scan.degrees {
            assert_eq!(*d, Some(0));
        }
    }
}
