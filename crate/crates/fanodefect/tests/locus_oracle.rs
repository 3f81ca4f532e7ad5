//! Brute-force cross-checks of the reducibility locus over F_7: enumerate
//! every linear form in the fibre coordinates and test divisibility
//! directly, with no Groebner elimination involved.

use fanodefect::field::{Elem, FieldDescriptor};
use fanodefect::fibration::{
    build_fibration, contains_plane, fibre_at, normalize_plane, split_ab, CubicFibration,
};
use fanodefect::fixture::Fixture;
use fanodefect::ideals::{reduce, MonomialOrder};
use fanodefect::poly::Polynomial;
use std::path::PathBuf;

fn fixture(name: &str) -> Fixture {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    Fixture::load(&path).unwrap()
}

fn fibration_of(f: &Fixture) -> CubicFibration {
    let quartic = f.quartic.as_ref().unwrap();
    let plane = f.plane_or_default();
    assert!(contains_plane(quartic, &plane).unwrap());
    let (q, t) = normalize_plane(quartic, &plane).unwrap();
    let (a3, b3) = split_ab(&q).unwrap();
    build_fibration(&q, t, &a3, &b3).unwrap()
}

/// All nonzero linear forms up to scaling: monic in their first nonzero
/// coordinate, (7^4 - 1)/6 = 400 of them.
fn linear_forms(ring: &std::sync::Arc<fanodefect::poly::Ring>, p: u64) -> Vec<Polynomial> {
    let f = &ring.field;
    let n = ring.nvars();
    let mut out = vec![];
    for pivot in 0..n {
        let mut tail = vec![0u64; n - pivot - 1];
        loop {
            let mut form = Polynomial::var(ring, &ring.vars[pivot]).unwrap();
            for (j, &c) in tail.iter().enumerate() {
                let mut e = vec![0u32; n];
                e[pivot + 1 + j] = 1;
                form = form.add(&Polynomial::monomial(ring, e, f.from_i64(c as i64))).unwrap();
            }
            out.push(form);
            let mut done = true;
            for slot in tail.iter_mut() {
                *slot += 1;
                if *slot < p {
                    done = false;
                    break;
                }
                *slot = 0;
            }
            if done {
                break;
            }
        }
    }
    out
}

fn divides(d: &Polynomial, f: &Polynomial) -> bool {
    reduce(f, &[d.clone()], &MonomialOrder::Grevlex).is_zero()
}

fn projective_params(field: &FieldDescriptor, p: u64) -> Vec<(Elem, Elem)> {
    let mut out: Vec<(Elem, Elem)> =
        (0..p).map(|t| (field.from_i64(t as i64), field.one())).collect();
    out.push((field.one(), field.zero()));
    out
}

#[test]
fn burkhardt_locus_matches_brute_force_over_f7() {
    let fib = fibration_of(&fixture("burkhardt.fx"));
    let f7 = FieldDescriptor::prime_field(7).unwrap();
    let mut reducible = vec![];
    for (lambda, mu) in projective_params(&f7, 7) {
        let fibre = fibre_at(&fib, &f7, &lambda, &mu).unwrap();
        let forms = linear_forms(&fibre.ring, 7);
        if forms.iter().any(|l| divides(l, &fibre)) {
            reducible.push((lambda, mu));
        }
    }
    // The locus polynomial t*(t^3 - 1) has roots {0, 1, 2, 4} mod 7
    // (2 and 4 are the primitive cube roots of unity), and the fibre at
    // (1:0) stays irreducible.
    let expected: Vec<(Elem, Elem)> =
        [0, 1, 2, 4].iter().map(|&t| (f7.from_i64(t), f7.one())).collect();
    assert_eq!(reducible, expected);
}

#[test]
fn cone_family_degenerate_fibres_over_f7() {
    // Every fibre of the x0*x2^3 + x1*x3^3 family is geometrically three
    // planes through a line; the *degenerate* members are the ones with a
    // repeated linear factor, and brute force must find them exactly at
    // (0:1) and (1:0).
    let fib = fibration_of(&fixture("monomial.fx"));
    let f7 = FieldDescriptor::prime_field(7).unwrap();
    let mut degenerate = vec![];
    for (lambda, mu) in projective_params(&f7, 7) {
        let fibre = fibre_at(&fib, &f7, &lambda, &mu).unwrap();
        let forms = linear_forms(&fibre.ring, 7);
        if forms.iter().any(|l| divides(&l.pow(2), &fibre)) {
            degenerate.push((lambda, mu));
        }
    }
    let expected = vec![(f7.zero(), f7.one()), (f7.one(), f7.zero())];
    assert_eq!(degenerate, expected);
}
