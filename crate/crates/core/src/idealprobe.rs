//! Degree-bounded probes of the forms vanishing on `kappa(O)` over `Q`.
//!
//! Forms of degree `d` in `Y01..Y23` are coefficient vectors over a monomial
//! basis; the forms vanishing on a finite sample of `kappa(O)` are the exact
//! nullspace of the evaluation matrix. Results hold at the sampled points
//! only: they are evidence about the vanishing ideal, not a computation of it.

use std::collections::HashSet;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::klein::{in_kappa_o, kappa_osculating};
use crate::linalg::{self, Matrix, Vector};
use crate::projspace::KleinPoint;

pub const MAX_DEGREE: u32 = 3;
pub const PENCIL_SAMPLES: usize = 20;
const HEIGHT: i64 = 50;

pub type Exponents = [u32; 6];

/// Monomials of degree exactly `d` in six variables, graded-lex with `Y01`
/// highest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub degree: u32,
    pub exponents: Vec<Exponents>,
}

impl MonomialBasis {
    pub fn new(degree: u32) -> Self {
        let mut exponents = Vec::new();
        let mut cur = [0u32; 6];
        fill(degree, 0, &mut cur, &mut exponents);
        MonomialBasis { degree, exponents }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn index_of(&self, e: &Exponents) -> Option<usize> {
        self.exponents.iter().position(|x| x == e)
    }

    /// Values of every monomial at `y`.
    pub fn evaluate_all(&self, y: &[FieldElement]) -> Vector {
        self.exponents.iter().map(|e| monomial(e, y)).collect()
    }
}

fn fill(left: u32, pos: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
    if pos == 5 {
        cur[5] = left;
        out.push(*cur);
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill(left - k, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

fn monomial(e: &Exponents, y: &[FieldElement]) -> FieldElement {
    let mut acc = y[0].one_like();
    for (x, &k) in y.iter().zip(e) {
        if k > 0 {
            acc = &acc * &x.pow(k as u64);
        }
    }
    acc
}

pub fn evaluate_form(basis: &MonomialBasis, coeffs: &[FieldElement], y: &[FieldElement]) -> FieldElement {
    linalg::dot(coeffs, &basis.evaluate_all(y))
}

/// `n` distinct points `kappa_osculating(u1,u2)` with rational parameters of
/// height at most 50. A longer sample extends a shorter one with the same
/// seed.
pub fn sample_kappa_o(n: usize, seed: u64) -> Vec<KleinPoint> {
    let q = FieldSpec::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let u1 = q.sample(&mut rng, HEIGHT);
        let u2 = q.sample(&mut rng, HEIGHT);
        let y = kappa_osculating(&u1, &u2);
        if seen.insert(y.clone()) {
            out.push(y);
        }
    }
    out
}

/// Points `(0,0,0,0,1,m)` of the pencil image with random `m`, followed by
/// the two endpoints `(0,0,0,0,1,0)` and `(0,0,0,0,0,1)`. Drawn from a
/// stream separate from the `kappa(O)` samples.
pub fn sample_pencil(seed: u64) -> Vec<KleinPoint> {
    let q = FieldSpec::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut out: Vec<KleinPoint> = (0..PENCIL_SAMPLES)
        .map(|_| {
            let m = q.sample(&mut rng, HEIGHT);
            KleinPoint::new([q.zero(), q.zero(), q.zero(), q.zero(), q.one(), m]).expect("nonzero")
        })
        .collect();
    out.push(KleinPoint::from_ints(q, [0, 0, 0, 0, 1, 0]).expect("nonzero"));
    out.push(KleinPoint::from_ints(q, [0, 0, 0, 0, 0, 1]).expect("nonzero"));
    out
}

/// Basis of the degree-`d` forms vanishing on every point.
pub fn vanishing_space(points: &[KleinPoint], d: u32) -> Matrix {
    let basis = MonomialBasis::new(d);
    let field = points.first().map_or(FieldSpec::rationals(), KleinPoint::field);
    let rows: Matrix = points.par_iter().map(|y| basis.evaluate_all(y.coords())).collect();
    if !field.is_finite() {
        return rational_nullspace(&rows, basis.len());
    }
    let forms = linalg::nullspace(&rows, basis.len(), field);
    assert!(annihilates(&rows, &forms), "a nullspace form fails to vanish on the sample");
    forms
}

fn annihilates(rows: &[Vector], forms: &[Vector]) -> bool {
    forms
        .par_iter()
        .all(|v| rows.iter().all(|r| linalg::dot(r, v).is_zero()))
}

const LIFT_PRIMES: [u64; 3] = [4_294_967_291, 4_294_967_279, 4_294_967_231];

/// Exact nullspace of a rational matrix. The reduced basis is computed mod a
/// large prime, lifted by rational reconstruction and accepted only if it
/// annihilates every row over `Q`; the nullity over `Q` never exceeds the
/// nullity mod `p`, so an accepted lift is the exact basis. Falls back to
/// elimination over `Q`. Every returned form is checked against every row.
pub fn rational_nullspace(rows: &[Vector], ncols: usize) -> Matrix {
    if let Some(forms) = LIFT_PRIMES
        .iter()
        .filter_map(|&p| lifted_nullspace(rows, ncols, p))
        .find(|cand| annihilates(rows, cand))
    {
        return forms;
    }
    let forms = linalg::nullspace(rows, ncols, FieldSpec::rationals());
    assert!(annihilates(rows, &forms), "a nullspace form fails to vanish on the sample");
    forms
}

fn lifted_nullspace(rows: &[Vector], ncols: usize, p: u64) -> Option<Matrix> {
    let fp = FieldSpec::prime(p).ok()?;
    let q = FieldSpec::rationals();
    let reduced = rows
        .iter()
        .map(|r| r.iter().map(|x| fp.from_rational(x.as_rational()?).ok()).collect())
        .collect::<Option<Matrix>>()?;
    linalg::nullspace(&reduced, ncols, fp)
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| reconstruct(x.residue()?, p).map(|r| q.from_rational(&r).expect("Q")))
                .collect()
        })
        .collect()
}

/// The fraction `n/d` with `|n|, d <= sqrt(p/2)` congruent to `a` mod `p`.
fn reconstruct(a: u64, p: u64) -> Option<BigRational> {
    let bound = ((p / 2) as f64).sqrt() as i128;
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 > bound {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    if t1 == 0 || t1.abs() > bound || num_integer::gcd(r1, t1) != 1 {
        return None;
    }
    Some(BigRational::new(r1.into(), t1.into()))
}

/// `k`, `h1`, `h2`, `h3` as lists of `(exponents, coefficient)`.
pub fn known_quadrics() -> [Vec<(Exponents, i64)>; 4] {
    const Y01: usize = 0;
    const Y02: usize = 1;
    const Y03: usize = 2;
    const Y12: usize = 3;
    const Y13: usize = 4;
    const Y23: usize = 5;
    let m = |a: usize, b: usize| {
        let mut e = [0u32; 6];
        e[a] += 1;
        e[b] += 1;
        e
    };
    [
        vec![(m(Y01, Y23), 1), (m(Y02, Y13), -1), (m(Y03, Y12), 1)],
        vec![(m(Y01, Y12), 3), (m(Y01, Y03), 3), (m(Y02, Y02), -1)],
        vec![(m(Y02, Y13), 3), (m(Y12, Y12), -1), (m(Y03, Y12), -2), (m(Y03, Y03), -1)],
        vec![(m(Y01, Y13), 9), (m(Y02, Y12), -1), (m(Y02, Y03), -1)],
    ]
}

fn to_coeffs(basis: &MonomialBasis, terms: &[(Exponents, i64)], field: FieldSpec) -> Vector {
    let mut v = vec![field.zero(); basis.len()];
    for (e, c) in terms {
        let i = basis.index_of(e).expect("monomial of the basis degree");
        v[i] = &v[i] + &field.int(*c);
    }
    v
}

/// Degree-`d` multiples of the known quadrics: the quadrics themselves for
/// `d = 2`, their products with each `Y_ij` for `d = 3`, none below 2.
pub fn known_forms(d: u32, field: FieldSpec) -> Matrix {
    let basis = MonomialBasis::new(d);
    let quadrics = known_quadrics();
    match d {
        2 => quadrics.iter().map(|t| to_coeffs(&basis, t, field)).collect(),
        3 => {
            let mut out = Vec::new();
            for t in &quadrics {
                for var in 0..6 {
                    let shifted: Vec<(Exponents, i64)> = t
                        .iter()
                        .map(|(e, c)| {
                            let mut e = *e;
                            e[var] += 1;
                            (e, *c)
                        })
                        .collect();
                    out.push(to_coeffs(&basis, &shifted, field));
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub degree: u32,
    pub samples: usize,
    pub nullspace_dimension: usize,
    pub known_forms_rank: usize,
    pub contains_known_forms: bool,
    pub pencil_points_checked: usize,
    pub pencil_vanishing: bool,
    pub pencil_witness: Option<KleinPoint>,
    pub seed: u64,
}

fn check_degree(d: u32) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&d) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(d))
    }
}

/// Forms of degree `d` vanishing on `n_samples` points of `kappa(O)`, and
/// whether they all vanish on the pencil image as well.
pub fn abgeschlossen_probe(d: u32, n_samples: usize, seed: u64) -> Result<ProbeReport> {
    check_degree(d)?;
    let q = FieldSpec::rationals();
    let basis = MonomialBasis::new(d);
    let points = sample_kappa_o(n_samples.max(1), seed);
    let forms = vanishing_space(&points, d);
    let known = known_forms(d, q);
    let contains_known_forms = known.iter().all(|k| linalg::in_span(&forms, k));
    let pencil = sample_pencil(seed);
    let pencil_witness = pencil
        .iter()
        .find(|y| forms.iter().any(|f| !evaluate_form(&basis, f, y.coords()).is_zero()))
        .cloned();
    Ok(ProbeReport {
        degree: d,
        samples: points.len(),
        nullspace_dimension: forms.len(),
        known_forms_rank: linalg::rank(&known),
        contains_known_forms,
        pencil_points_checked: pencil.len(),
        pencil_vanishing: pencil_witness.is_none(),
        pencil_witness,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonAlgebraicityReport {
    pub degree: u32,
    pub passed: bool,
    pub forms_checked: usize,
    pub witness: Option<KleinPoint>,
    pub witness_in_kappa_o: Option<bool>,
}

/// The common zeros of all vanishing forms of degree at most `d` contain
/// `(0,0,0,0,1,0)`, which is not the image of a line of `O`. Degree 0 passes
/// vacuously: no nonzero constant vanishes anywhere.
pub fn nonalgebraicity_evidence(d: u32, n_samples: usize, seed: u64) -> Result<NonAlgebraicityReport> {
    if d == 0 {
        return Ok(NonAlgebraicityReport {
            degree: 0,
            passed: true,
            forms_checked: 0,
            witness: None,
            witness_in_kappa_o: None,
        });
    }
    check_degree(d)?;
    let q = FieldSpec::rationals();
    let points = sample_kappa_o(n_samples.max(1), seed);
    let witness = KleinPoint::from_ints(q, [0, 0, 0, 0, 1, 0]).expect("nonzero");
    let mut forms_checked = 0;
    let mut all_vanish = true;
    for deg in 1..=d {
        let basis = MonomialBasis::new(deg);
        for f in vanishing_space(&points, deg) {
            forms_checked += 1;
            all_vanish &= evaluate_form(&basis, &f, witness.coords()).is_zero();
        }
    }
    let in_o = in_kappa_o(&witness);
    Ok(NonAlgebraicityReport {
        degree: d,
        passed: all_vanish && !in_o,
        forms_checked,
        witness: Some(witness),
        witness_in_kappa_o: Some(in_o),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kp(c: [i64; 6]) -> KleinPoint {
        KleinPoint::from_ints(FieldSpec::rationals(), c).unwrap()
    }

    #[test]
    fn basis_sizes_and_order() {
        for (d, n) in [(0u32, 1usize), (1, 6), (2, 21), (3, 56)] {
            assert_eq!(MonomialBasis::new(d).len(), n);
        }
        let b = MonomialBasis::new(2);
        assert_eq!(b.exponents[0], [2, 0, 0, 0, 0, 0]);
        assert_eq!(b.exponents[1], [1, 1, 0, 0, 0, 0]);
        assert_eq!(b.exponents[20], [0, 0, 0, 0, 0, 2]);
    }

    #[test]
    fn sample_examples() {
        let q = FieldSpec::rationals();
        let s = sample_kappa_o(1, 1);
        assert_eq!(s.len(), 1);
        assert!(crate::klein::KleinForms::all_vanish(s[0].coords()));
        assert_eq!(kappa_osculating(&q.int(0), &q.int(0)), kp([1, 0, 0, 0, 0, 0]));
        assert_eq!(kappa_osculating(&q.int(1), &q.int(0)), kp([1, 3, 0, 3, 1, 3]));
        let long = sample_kappa_o(30, 9);
        assert_eq!(&long[..10], &sample_kappa_o(10, 9)[..]);
        assert_eq!(long.iter().collect::<HashSet<_>>().len(), 30);
    }

    #[test]
    fn vanishing_space_examples() {
        assert!(vanishing_space(&sample_kappa_o(30, 1), 1).is_empty());
        let few = vanishing_space(&sample_kappa_o(3, 1), 2);
        assert!(few.len() >= 18);
        let q = FieldSpec::rationals();
        let forms = vanishing_space(&sample_kappa_o(60, 1), 2);
        let known = known_forms(2, q);
        assert_eq!(linalg::rank(&known), 4);
        assert!(known.iter().all(|k| linalg::in_span(&forms, k)));
    }

    #[test]
    fn probe_examples() {
        let r = abgeschlossen_probe(2, 60, 7).unwrap();
        assert!(r.pencil_vanishing && r.contains_known_forms);
        assert_eq!(r.pencil_points_checked, PENCIL_SAMPLES + 2);
        let r = abgeschlossen_probe(3, 120, 7).unwrap();
        assert!(r.pencil_vanishing && r.contains_known_forms);
        assert_eq!(abgeschlossen_probe(0, 10, 7), Err(Error::DegreeOutOfRange(0)));
        assert_eq!(abgeschlossen_probe(4, 10, 7), Err(Error::DegreeOutOfRange(4)));
    }

    #[test]
    fn pencil_points_satisfy_degree_two_forms() {
        let basis = MonomialBasis::new(2);
        let forms = vanishing_space(&sample_kappa_o(60, 3), 2);
        for m in [-4, -1, 0, 2, 17] {
            let y = kp([0, 0, 0, 0, 1, m]);
            assert!(forms.iter().all(|f| evaluate_form(&basis, f, y.coords()).is_zero()));
        }
    }

    #[test]
    fn nonalgebraicity_examples() {
        for d in [2u32, 3] {
            let r = nonalgebraicity_evidence(d, 40 * d as usize, 7).unwrap();
            assert!(r.passed);
            assert_eq!(r.witness, Some(kp([0, 0, 0, 0, 1, 0])));
            assert_eq!(r.witness_in_kappa_o, Some(false));
        }
        assert!(nonalgebraicity_evidence(0, 10, 7).unwrap().passed);
    }

    #[test]
    fn lifted_nullspace_matches_rational_elimination() {
        let q = FieldSpec::rationals();
        for (d, n) in [(1u32, 10usize), (2, 30), (2, 12), (3, 25)] {
            let basis = MonomialBasis::new(d);
            let rows: Matrix = sample_kappa_o(n, 5)
                .iter()
                .map(|y| basis.evaluate_all(y.coords()))
                .collect();
            assert_eq!(
                rational_nullspace(&rows, basis.len()),
                linalg::nullspace(&rows, basis.len(), q),
                "d={d} n={n}"
            );
        }
    }

    #[test]
    fn reconstruction_round_trips() {
        let p = LIFT_PRIMES[0];
        let fp = FieldSpec::prime(p).unwrap();
        for (n, d) in [(3i64, 1i64), (-9, 1), (2, 3), (-7, 12), (0, 1)] {
            let r = BigRational::new(n.into(), d.into());
            let a = fp.from_rational(&r).unwrap().residue().unwrap();
            assert_eq!(reconstruct(a, p), Some(r));
        }
    }

    #[test]
    fn probe_is_reproducible() {
        assert_eq!(abgeschlossen_probe(2, 40, 11).unwrap(), abgeschlossen_probe(2, 40, 11).unwrap());
    }
}
