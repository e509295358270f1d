//! Independent recomputations: plain `u64` modular arithmetic for the finite
//! geometry, and polynomials in `(u1, u2)` with rational coefficients for the
//! closed forms.

use std::collections::{BTreeMap, HashMap, HashSet};

use bwcert_core::bwspread::{self, LineParam};
use bwcert_core::field::{FieldElement, FieldSpec};
use bwcert_core::idealprobe::{sample_kappa_o, vanishing_space, MonomialBasis};
use bwcert_core::klein;
use num_rational::BigRational;
use num_traits::Zero;

// ---------- plain modular geometry ----------

type V = Vec<u64>;

fn normalize(mut v: V, p: u64) -> Option<V> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = pow_mod(lead, p - 2, p);
    for x in v.iter_mut() {
        *x = *x * inv % p;
    }
    Some(v)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn all_points(n: usize, p: u64) -> Vec<V> {
    let total = p.pow(n as u32);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for i in 1..total {
        let mut r = i;
        let v: V = (0..n)
            .map(|_| {
                let d = r % p;
                r /= p;
                d
            })
            .collect();
        let v = normalize(v, p).unwrap();
        if seen.insert(v.clone()) {
            out.push(v);
        }
    }
    out
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn plucker(a: &[u64], b: &[u64], p: u64) -> V {
    let m = |i: usize, j: usize| sub(a[i] * b[j] % p, a[j] * b[i] % p, p);
    normalize(vec![m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)], p).unwrap()
}

fn points_of_line(a: &[u64], b: &[u64], p: u64) -> Vec<V> {
    let mut out = vec![normalize(b.to_vec(), p).unwrap()];
    for t in 0..p {
        let v: V = a.iter().zip(b).map(|(x, y)| (x + t * y) % p).collect();
        out.push(normalize(v, p).unwrap());
    }
    out
}

fn res(x: &FieldElement) -> u64 {
    x.residue().unwrap()
}

/// Tangent at `P(u1,u2)` as a pair of `u64` vectors.
fn tangent(u1: u64, u2: u64, p: u64) -> (V, V) {
    let x3 = sub(u1 * u2 % p, pow_mod(u1, 3, p), p);
    (vec![1, u1, u2, x3], vec![0, 1, 3 * u1 % p, u2])
}

fn directrix() -> (V, V) {
    (vec![0, 0, 1, 0], vec![0, 0, 0, 1])
}

fn o_lines(p: u64) -> Vec<(V, V)> {
    let mut out = Vec::new();
    for u1 in 0..p {
        for u2 in 0..p {
            out.push(tangent(u1, u2, p));
        }
    }
    out.push(directrix());
    out
}

fn meet(a: &(V, V), b: &(V, V), p: u64) -> bool {
    let pa: HashSet<V> = points_of_line(&a.0, &a.1, p).into_iter().collect();
    points_of_line(&b.0, &b.1, p).iter().any(|x| pa.contains(x))
}

fn point_multiplicities(p: u64) -> HashMap<V, usize> {
    let mut m = HashMap::new();
    for l in o_lines(p) {
        for x in points_of_line(&l.0, &l.1, p) {
            *m.entry(x).or_insert(0) += 1;
        }
    }
    m
}

#[test]
fn first_meeting_pair_matches_brute_force() {
    for p in [7u64, 13] {
        let lines = o_lines(p);
        let mut first = None;
        'outer: for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if meet(&lines[i], &lines[j], p) {
                    first = Some((i, j));
                    break 'outer;
                }
            }
        }
        let (i, j) = first.expect("some pair meets");
        let f = FieldSpec::prime(p).unwrap();
        let cert = bwspread::certify_partial_spread(f, 0, 0);
        let w = cert.witness.unwrap();
        let idx = |param: &LineParam| match param {
            LineParam::Tangent { u1, u2 } => (res(u1) * p + res(u2)) as usize,
            LineParam::Directrix => (p * p) as usize,
        };
        assert_eq!((idx(&w.first), idx(&w.second)), (i, j), "p={p}");
        assert!(w.determinant.is_zero());
        assert!(w.criterion.unwrap().is_zero());
    }
    // the pairs named in the documentation
    assert_eq!(o_lines(7)[..].len(), 50);
    assert!(meet(&tangent(0, 0, 7), &tangent(1, 4, 7), 7));
    assert!(meet(&tangent(0, 0, 13), &tangent(1, 5, 13), 13));
}

#[test]
fn meeting_pair_count_matches_brute_force() {
    for p in [5u64, 7] {
        let lines = o_lines(p);
        let mut count = 0;
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                count += meet(&lines[i], &lines[j], p) as u64;
            }
        }
        let cert = bwspread::certify_partial_spread(FieldSpec::prime(p).unwrap(), 0, 0);
        assert_eq!(cert.meeting_pairs, count, "p={p}");
    }
}

#[test]
fn covering_counts_match_brute_force() {
    for p in [2u64, 3, 5, 7, 11] {
        let mult = point_multiplicities(p);
        let points = all_points(4, p);
        let uncovered = points.iter().filter(|x| !mult.contains_key(*x)).count() as u64;
        let multiple = points.iter().filter(|x| mult.get(*x).copied().unwrap_or(0) > 1).count() as u64;
        let cert = bwspread::certify_covering(FieldSpec::prime(p).unwrap());
        assert_eq!(cert.points_total, Some(points.len() as u64));
        assert_eq!(cert.uncovered, Some(uncovered), "p={p}");
        assert_eq!(cert.multiply_covered, Some(multiple), "p={p}");
    }
}

#[test]
fn dual_spread_counts_match_brute_force() {
    for p in [2u64, 3, 5, 7] {
        let lines = o_lines(p);
        let planes = all_points(4, p);
        let dot = |e: &V, x: &V| e.iter().zip(x).map(|(a, b)| a * b).sum::<u64>() % p;
        let exactly_one = planes
            .iter()
            .filter(|e| lines.iter().filter(|l| dot(e, &l.0) == 0 && dot(e, &l.1) == 0).count() == 1)
            .count() as u64;
        let cert = bwspread::certify_dual_spread(FieldSpec::prime(p).unwrap()).unwrap();
        assert_eq!(cert.planes_with_exactly_one, exactly_one, "p={p}");
        assert_eq!(cert.planes_total, planes.len() as u64);
    }
}

fn forms_mod(y: &[u64], p: u64) -> [u64; 4] {
    let [a, b, c, d, e, f] = [y[0], y[1], y[2], y[3], y[4], y[5]];
    let k = (a * f + c * d + p * p - b * e % p) % p;
    let s = (d + c) % p;
    let h1 = sub(3 * a % p * s % p, b * b % p, p);
    let h2 = sub(3 * b % p * e % p, s * s % p, p);
    let h3 = sub(9 * a % p * e % p, b * s % p, p);
    [k, h1, h2, h3]
}

#[test]
fn variety_matches_brute_force() {
    for p in [2u64, 5, 7] {
        let variety: HashSet<V> = all_points(6, p)
            .into_iter()
            .filter(|y| forms_mod(y, p).iter().all(|&v| v == 0))
            .collect();
        let mut image: HashSet<V> = o_lines(p).iter().map(|l| plucker(&l.0, &l.1, p)).collect();
        for a in 0..p {
            image.insert(plucker(&[0, 1, a, 0], &[0, 0, 0, 1], p));
        }
        assert_eq!(variety, image, "p={p}");
        assert_eq!(variety.len() as u64, p * p + p + 1);
        let cert = klein::verify_variety_equality(FieldSpec::prime(p).unwrap()).unwrap();
        assert_eq!(cert.variety_points, variety.len() as u64);
    }
}

#[test]
fn char3_congruence_matches_brute_force() {
    let p = 3;
    let lines: HashSet<V> = {
        let pts = all_points(4, p);
        let mut s = HashSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                s.insert(plucker(&pts[i], &pts[j], p));
            }
        }
        s
    };
    assert_eq!(lines.len(), 130);
    let in_qd = |y: &V| y[1] == 0 && (y[2] + y[3]).is_multiple_of(p) && forms_mod(y, p)[0] == 0;
    let congruence: HashSet<V> = lines.iter().filter(|y| in_qd(y)).cloned().collect();
    assert_eq!(congruence.len(), 13);
    let n = plucker(&[0, 1, 0, 0], &[0, 0, 0, 1], p);
    assert_eq!(n, vec![0, 0, 0, 0, 1, 0]);
    let polar = |y: &V, z: &V| {
        (y[0] * z[5] + y[5] * z[0] + y[2] * z[3] + y[3] * z[2] + 2 * p * p - y[1] * z[4] - y[4] * z[1]) % p
    };
    assert!(congruence.iter().all(|y| polar(y, &n) == 0));
    let cert = klein::char3_congruence_check(FieldSpec::prime(3).unwrap()).unwrap();
    let got: HashSet<V> = cert
        .congruence
        .iter()
        .map(|l| l.plucker().coords().iter().map(res).collect())
        .collect();
    assert_eq!(got, congruence);
}

// ---------- polynomials in (u1, u2) ----------

#[derive(Clone, Debug, PartialEq)]
struct Poly(BTreeMap<(u32, u32), BigRational>);

impl Poly {
    fn c(v: i64) -> Self {
        Poly::term(v, 0, 0)
    }

    fn term(v: i64, i: u32, j: u32) -> Self {
        let mut m = BTreeMap::new();
        if v != 0 {
            m.insert((i, j), BigRational::from_integer(v.into()));
        }
        Poly(m)
    }

    fn from_rat(r: &BigRational) -> Self {
        let mut m = BTreeMap::new();
        if !r.is_zero() {
            m.insert((0, 0), r.clone());
        }
        Poly(m)
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                m.remove(k);
            }
        }
        Poly(m)
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(k, v)| (*k, -v.clone())).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly(BTreeMap::new());
        for ((a, b), x) in &self.0 {
            for ((c, d), y) in &o.0 {
                let mut t = BTreeMap::new();
                t.insert((a + c, b + d), x * y);
                out = out.add(&Poly(t));
            }
        }
        out
    }

    fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::c(1), |acc, _| acc.mul(self))
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

fn minors(a: &[Poly; 4], b: &[Poly; 4]) -> [Poly; 6] {
    let m = |i: usize, j: usize| a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
    [m(0, 1), m(0, 2), m(0, 3), m(1, 2), m(1, 3), m(2, 3)]
}

fn symbolic_tangent_image() -> [Poly; 6] {
    let u1 = Poly::term(1, 1, 0);
    let u2 = Poly::term(1, 0, 1);
    let point = [Poly::c(1), u1.clone(), u2.clone(), u1.mul(&u2).sub(&u1.pow(3))];
    let dir = [Poly::c(0), Poly::c(1), Poly::c(3).mul(&u1), u2.clone()];
    minors(&point, &dir)
}

fn sym_forms(y: &[Poly; 6]) -> [Poly; 4] {
    let s = y[3].add(&y[2]);
    [
        y[0].mul(&y[5]).sub(&y[1].mul(&y[4])).add(&y[2].mul(&y[3])),
        Poly::c(3).mul(&y[0]).mul(&s).sub(&y[1].pow(2)),
        Poly::c(3).mul(&y[1]).mul(&y[4]).sub(&s.pow(2)),
        Poly::c(9).mul(&y[0]).mul(&y[4]).sub(&y[1].mul(&s)),
    ]
}

#[test]
fn closed_form_plucker_coordinates() {
    let y = symbolic_tangent_image();
    let u1 = Poly::term(1, 1, 0);
    let u2 = Poly::term(1, 0, 1);
    let want = [
        Poly::c(1),
        Poly::c(3).mul(&u1),
        u2.clone(),
        Poly::c(3).mul(&u1.pow(2)).sub(&u2),
        u1.pow(3),
        Poly::c(3)
            .mul(&u1.pow(4))
            .sub(&Poly::c(3).mul(&u1.pow(2)).mul(&u2))
            .add(&u2.pow(2)),
    ];
    assert_eq!(y, want);
    for f in sym_forms(&y) {
        assert!(f.is_zero());
    }
    // the crate's closed form agrees at scattered rational points
    let q = FieldSpec::rationals();
    for (a, b) in [(1, 0), (2, -3), (-5, 7)] {
        let got = klein::kappa_osculating(&q.int(a), &q.int(b));
        for (i, p) in want.iter().enumerate() {
            let mut v = BigRational::zero();
            for ((e1, e2), c) in &p.0 {
                v += c * BigRational::from_integer(a.into()).pow(*e1 as i32)
                    * BigRational::from_integer(b.into()).pow(*e2 as i32);
            }
            assert_eq!(got.coords()[i].as_rational().unwrap(), &v);
        }
    }
}

fn substitute(basis: &MonomialBasis, coeffs: &[FieldElement], y: &[Poly; 6]) -> Poly {
    let mut acc = Poly(BTreeMap::new());
    for (e, c) in basis.exponents.iter().zip(coeffs) {
        let r = c.as_rational().unwrap();
        if r.is_zero() {
            continue;
        }
        let mut m = Poly::from_rat(r);
        for (var, &k) in e.iter().enumerate() {
            m = m.mul(&y[var].pow(k));
        }
        acc = acc.add(&m);
    }
    acc
}

#[test]
fn sampled_vanishing_forms_vanish_identically() {
    let tangent_image = symbolic_tangent_image();
    // pencil image (0,0,0,0,1,m), with m in the u1 slot
    let pencil = [
        Poly::c(0),
        Poly::c(0),
        Poly::c(0),
        Poly::c(0),
        Poly::c(1),
        Poly::term(1, 1, 0),
    ];
    for (d, n) in [(2u32, 60usize), (3, 120)] {
        let basis = MonomialBasis::new(d);
        let forms = vanishing_space(&sample_kappa_o(n, 7), d);
        assert!(!forms.is_empty());
        for f in &forms {
            assert!(substitute(&basis, f, &tangent_image).is_zero(), "d={d}");
            assert!(substitute(&basis, f, &pencil).is_zero(), "d={d}");
        }
    }
}

#[test]
fn degree_one_space_is_trivial() {
    // 1, 3u1, u2, 3u1^2-u2, u1^3, ... are linearly independent functions
    assert!(vanishing_space(&sample_kappa_o(30, 7), 1).is_empty());
}
