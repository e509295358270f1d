//! The set `O` of proper osculating tangents of the Cayley surface together
//! with the directrix `g_inf`, and certificates for its spread properties.
//!
//! The proper osculating tangent at `P(u1,u2)` joins that point with
//! `(0, 1, 3u1, u2)`. Whether `O` is a partial spread, a covering, maximal,
//! or a dual spread is decided both by exhaustive geometry over `GF(q)` and
//! by the cube-root structure of the field; certificates record which.

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{self, surface_point};
use crate::error::{Error, Result};
use crate::field::{self, classify_field, cube_roots, FieldElement, FieldSpec, SpreadRegime};
use crate::linalg;
use crate::projspace::{
    enumerate_lines, enumerate_planes, enumerate_points, incidence, line_in_plane, lines_skew,
    lines_skew_polar, skew_determinant, Line, LineSet, ProjPlane, ProjPoint,
};

/// Rational parameters are drawn with numerator and denominator at most this.
pub const SAMPLE_HEIGHT: i64 = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OsculatingTangent {
    pub u1: FieldElement,
    pub u2: FieldElement,
    pub line: Line,
}

/// The point at infinity `(0, 1, 3u1, u2)` of the tangent at `P(u1,u2)`.
pub fn tangent_direction(u1: &FieldElement, u2: &FieldElement) -> ProjPoint {
    let field = u1.field();
    ProjPoint::new([field.zero(), field.one(), &field.int(3) * u1, u2.clone()])
        .expect("second coordinate is 1")
}

pub fn osculating_tangent(u1: &FieldElement, u2: &FieldElement) -> OsculatingTangent {
    let line = Line::through(surface_point(u1, u2), tangent_direction(u1, u2))
        .expect("affine point and point at infinity differ");
    OsculatingTangent { u1: u1.clone(), u2: u2.clone(), line }
}

/// Names a line of `O` by its parameters; witnesses store these.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineParam {
    Tangent { u1: FieldElement, u2: FieldElement },
    Directrix,
}

impl LineParam {
    pub fn tangent(u1: &FieldElement, u2: &FieldElement) -> Self {
        LineParam::Tangent { u1: u1.clone(), u2: u2.clone() }
    }

    pub fn line(&self, field: FieldSpec) -> Line {
        match self {
            LineParam::Tangent { u1, u2 } => osculating_tangent(u1, u2).line,
            LineParam::Directrix => cayley::directrix(field),
        }
    }
}

/// The lines of `O` with their parameters: tangents in lexicographic order
/// of `(u1, u2)`, then `g_inf`.
pub fn osculating_family(field: FieldSpec) -> Result<Vec<(LineParam, Line)>> {
    let elems: Vec<FieldElement> = field.elements()?.collect();
    let mut out = Vec::with_capacity(elems.len() * elems.len() + 1);
    for u1 in &elems {
        for u2 in &elems {
            out.push((LineParam::tangent(u1, u2), osculating_tangent(u1, u2).line));
        }
    }
    out.push((LineParam::Directrix, cayley::directrix(field)));
    Ok(out)
}

/// `O` over a finite field: `q^2` tangents and `g_inf`.
pub fn build_o(field: FieldSpec) -> Result<LineSet> {
    Ok(osculating_family(field)?.into_iter().map(|(_, l)| l).collect())
}

/// `D2^2 - 3 D1^2 D2 + 3 D1^4` with `D1 = u1 - v1`,
/// `D2 = u2 - v2 - 3 v1 (u1 - v1)`: the group element translating `P(v1,v2)`
/// to `P(0,0)` sends `P(u1,u2)` to `P(D1,D2)`. Nonzero iff the tangents at the
/// two points are skew.
pub fn skew_criterion(
    v1: &FieldElement,
    v2: &FieldElement,
    u1: &FieldElement,
    u2: &FieldElement,
) -> Result<FieldElement> {
    if v1 == u1 && v2 == u2 {
        return Err(Error::SamePoint);
    }
    let field = u1.field();
    let three = field.int(3);
    let d1 = u1 - v1;
    let d2 = &(u2 - v2) - &(&(&three * v1) * &d1);
    let d1sq = d1.square();
    Ok(&(&d2.square() - &(&(&three * &d1sq) * &d2)) + &(&three * &d1sq.square()))
}

/// `n` parameter pairs drawn from a seeded stream, rationals of height at
/// most [`SAMPLE_HEIGHT`].
pub fn sample_parameters(field: FieldSpec, n: usize, seed: u64) -> Vec<(FieldElement, FieldElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (field.sample(&mut rng, SAMPLE_HEIGHT), field.sample(&mut rng, SAMPLE_HEIGHT)))
        .collect()
}

/// A pair of lines of `O` that meet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewWitness {
    pub first: LineParam,
    pub second: LineParam,
    pub determinant: FieldElement,
    /// Present when both lines are tangents.
    pub criterion: Option<FieldElement>,
}

impl SkewWitness {
    fn build(field: FieldSpec, first: LineParam, second: LineParam) -> Self {
        let determinant = skew_determinant(&first.line(field), &second.line(field));
        let criterion = match (&first, &second) {
            (LineParam::Tangent { u1: v1, u2: v2 }, LineParam::Tangent { u1, u2 }) => {
                skew_criterion(v1, v2, u1, u2).ok()
            }
            _ => None,
        };
        SkewWitness { first, second, determinant, criterion }
    }

    /// Recomputes both routes; true iff the lines still meet by each.
    pub fn replay(&self, field: FieldSpec) -> bool {
        let again = SkewWitness::build(field, self.first.clone(), self.second.clone());
        let det_meets = again.determinant.is_zero();
        let crit_meets = again.criterion.as_ref().is_none_or(FieldElement::is_zero);
        again == *self && det_meets && crit_meets
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Symbolic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSpreadCert {
    pub passed: bool,
    pub method: Method,
    pub lines: Option<u64>,
    pub pairs_checked: u64,
    pub meeting_pairs: u64,
    /// Randomized cross-checks of determinant against criterion (over `Q`).
    pub spot_checks: u64,
    pub witness: Option<SkewWitness>,
}

/// Pairwise skewness of `O`. Exhaustive over `GF(q)`; over `Q` the verdict
/// is the absence of a rational root of `X^2 + X + 1`, backed by
/// `spot_checks` random pairs on which determinant and criterion must agree.
pub fn certify_partial_spread(field: FieldSpec, seed: u64, spot_checks: u64) -> PartialSpreadCert {
    if field.is_finite() {
        certify_partial_spread_exhaustive(field)
    } else {
        certify_partial_spread_symbolic(field, seed, spot_checks)
    }
}

fn certify_partial_spread_exhaustive(field: FieldSpec) -> PartialSpreadCert {
    let family = osculating_family(field).expect("finite");
    let n = family.len();
    let per_row: Vec<(u64, Option<usize>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut meets = 0;
            let mut first = None;
            for j in i + 1..n {
                if !lines_skew(&family[i].1, &family[j].1) {
                    meets += 1;
                    first.get_or_insert(j);
                }
            }
            (meets, first)
        })
        .collect();
    let meeting_pairs = per_row.iter().map(|r| r.0).sum();
    let witness = per_row.iter().enumerate().find_map(|(i, r)| {
        r.1.map(|j| SkewWitness::build(field, family[i].0.clone(), family[j].0.clone()))
    });
    PartialSpreadCert {
        passed: meeting_pairs == 0,
        method: Method::Exhaustive,
        lines: Some(n as u64),
        pairs_checked: (n * (n - 1) / 2) as u64,
        meeting_pairs,
        spot_checks: 0,
        witness,
    }
}

fn certify_partial_spread_symbolic(field: FieldSpec, seed: u64, spot_checks: u64) -> PartialSpreadCert {
    let unity = field::nontrivial_cube_root_of_unity(field);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g_inf = cayley::directrix(field);
    let mut witness = None;
    let mut meeting = 0;
    let mut checked = 0;
    while checked < spot_checks {
        let v = (field.sample(&mut rng, SAMPLE_HEIGHT), field.sample(&mut rng, SAMPLE_HEIGHT));
        let u = (field.sample(&mut rng, SAMPLE_HEIGHT), field.sample(&mut rng, SAMPLE_HEIGHT));
        if v == u {
            continue;
        }
        checked += 1;
        let a = osculating_tangent(&v.0, &v.1).line;
        let b = osculating_tangent(&u.0, &u.1).line;
        let det_skew = lines_skew(&a, &b);
        let crit_skew = !skew_criterion(&v.0, &v.1, &u.0, &u.1).expect("distinct").is_zero();
        let with_directrix = lines_skew(&a, &g_inf);
        if !(det_skew && crit_skew && with_directrix) {
            meeting += 1;
            witness.get_or_insert_with(|| {
                SkewWitness::build(field, LineParam::tangent(&v.0, &v.1), LineParam::tangent(&u.0, &u.1))
            });
        }
    }
    PartialSpreadCert {
        passed: unity.is_none() && meeting == 0,
        method: Method::Symbolic,
        lines: None,
        pairs_checked: checked,
        meeting_pairs: meeting,
        spot_checks: checked,
        witness,
    }
}

/// The `(u1, u2, s)` with `x = P(u1,u2) + s (0,1,3u1,u2)` for an affine point
/// `x = (1,p1,p2,p3)`: `s^3 = p3 - (p1 p2 - p1^3)`, `u1 = p1 - s`,
/// `u2 = p2 - 3 s u1`.
pub fn covering_solutions(x: &ProjPoint) -> Result<Vec<(FieldElement, FieldElement, FieldElement)>> {
    let c = x.coords();
    if !c[0].is_one() {
        return Err(Error::NotAffine);
    }
    let (p1, p2, p3) = (&c[1], &c[2], &c[3]);
    let three = x.field().int(3);
    let rhs = p3 - &(&(p1 * p2) - &p1.cube());
    Ok(cube_roots(&rhs)
        .into_iter()
        .map(|s| {
            let u1 = p1 - &s;
            let u2 = p2 - &(&(&three * &s) * &u1);
            (u1, u2, s)
        })
        .collect())
}

/// Lines of `O` through a point of the plane at infinity.
fn lines_through_point_at_infinity(x: &ProjPoint) -> Vec<LineParam> {
    let c = x.coords();
    let field = x.field();
    if c[1].is_zero() {
        return vec![LineParam::Directrix];
    }
    // canonical, so c[1] = 1: direction (0, 1, 3u1, u2)
    let three = field.int(3);
    match three.inv() {
        Some(inv3) => vec![LineParam::tangent(&(&c[2] * &inv3), &c[3])],
        None if c[2].is_zero() => field
            .elements()
            .map(|it| it.map(|u1| LineParam::tangent(&u1, &c[3])).collect())
            .unwrap_or_default(),
        None => Vec::new(),
    }
}

/// Lines of `O` through `x`, solved from the parametrization.
pub fn lines_of_o_through(x: &ProjPoint) -> Result<Vec<LineParam>> {
    if x.coords()[0].is_zero() {
        Ok(lines_through_point_at_infinity(x))
    } else {
        Ok(covering_solutions(x)?
            .into_iter()
            .map(|(u1, u2, _)| LineParam::tangent(&u1, &u2))
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoveringCert {
    pub passed: bool,
    pub method: Method,
    pub points_total: Option<u64>,
    pub covered: Option<u64>,
    pub uncovered: Option<u64>,
    pub multiply_covered: Option<u64>,
    /// Every point lies on exactly one line of `O`.
    pub exact_partition: Option<bool>,
    /// Solved counts agree with direct point-on-line incidence counts.
    pub incidence_agrees: Option<bool>,
    pub witness: Option<ProjPoint>,
}

/// Covering of `PG(3,K)` by `O`. Over `GF(q)` every point is solved for
/// (points at infinity by direction, affine points by cube roots) and the
/// counts are compared with incidence counts from the lines themselves.
/// Over `Q` a small-height uncovered point is searched for.
pub fn certify_covering(field: FieldSpec) -> CoveringCert {
    if !field.is_finite() {
        let witness = uncovered_witness_rational(2);
        return CoveringCert {
            passed: witness.is_none(),
            method: Method::Symbolic,
            points_total: None,
            covered: None,
            uncovered: None,
            multiply_covered: None,
            exact_partition: None,
            incidence_agrees: None,
            witness,
        };
    }
    let points = enumerate_points(field).expect("finite");
    let solved: Vec<usize> = points
        .par_iter()
        .map(|x| lines_of_o_through(x).expect("canonical point").len())
        .collect();
    let by_incidence = point_multiplicities_by_incidence(field).expect("finite");
    let incidence_agrees = points
        .iter()
        .zip(&solved)
        .all(|(x, &n)| by_incidence.get(x).copied().unwrap_or(0) == n);
    let uncovered = solved.iter().filter(|&&n| n == 0).count() as u64;
    let multiply = solved.iter().filter(|&&n| n > 1).count() as u64;
    let witness = points.iter().zip(&solved).find(|(_, &n)| n == 0).map(|(x, _)| x.clone());
    CoveringCert {
        passed: uncovered == 0,
        method: Method::Exhaustive,
        points_total: Some(points.len() as u64),
        covered: Some(points.len() as u64 - uncovered),
        uncovered: Some(uncovered),
        multiply_covered: Some(multiply),
        exact_partition: Some(uncovered == 0 && multiply == 0),
        incidence_agrees: Some(incidence_agrees),
        witness,
    }
}

/// How many lines of `O` pass through each point, from the lines' own point
/// lists.
pub fn point_multiplicities_by_incidence(field: FieldSpec) -> Result<HashMap<ProjPoint, usize>> {
    let mut counts = HashMap::new();
    for l in build_o(field)?.iter() {
        for x in l.points()? {
            *counts.entry(x).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

fn small_integers(bound: i64) -> Vec<i64> {
    let mut v = vec![0];
    for k in 1..=bound {
        v.push(k);
        v.push(-k);
    }
    v
}

/// First affine point `(1,p1,p2,p3)` with integer coordinates in
/// `[-bound, bound]` (ordered 0, 1, -1, 2, -2, ...) that lies on no line of
/// `O` over `Q`.
pub fn uncovered_witness_rational(bound: i64) -> Option<ProjPoint> {
    let q = FieldSpec::rationals();
    let vals = small_integers(bound);
    for &p1 in &vals {
        for &p2 in &vals {
            for &p3 in &vals {
                let x = ProjPoint::from_ints(q, [1, p1, p2, p3]).expect("affine");
                if covering_solutions(&x).expect("affine").is_empty() {
                    return Some(x);
                }
            }
        }
    }
    None
}

/// The line of `O` through a point of the plane at infinity, constructed
/// directly: `g_inf` if `x1 = 0`, else the tangent with `u1 = x2/3`,
/// `u2 = x3` (after scaling `x1` to 1).
pub fn omega_cover(x: &ProjPoint) -> Result<LineParam> {
    if !x.coords()[0].is_zero() {
        return Err(Error::NotAtInfinity);
    }
    if x.field().characteristic() == 3 {
        return Err(Error::Char3Unsupported);
    }
    Ok(lines_through_point_at_infinity(x)
        .into_iter()
        .next()
        .expect("3 invertible: exactly one line"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityCert {
    pub passed: bool,
    pub omega_points_checked: u64,
    pub witness: Option<ProjPoint>,
}

/// Every point of `omega` lies on a line of `O`, shown by constructing the
/// line and checking incidence. All of `omega` over `GF(q)`; over `Q` the
/// points `(0,a,b,c)` with integer coordinates in `[-3, 3]`.
pub fn certify_maximality(field: FieldSpec) -> Result<MaximalityCert> {
    if field.characteristic() == 3 {
        return Err(Error::Char3Unsupported);
    }
    let points: Vec<ProjPoint> = if field.is_finite() {
        enumerate_points(field)?
            .into_iter()
            .filter(|x| x.coords()[0].is_zero())
            .collect()
    } else {
        let vals = small_integers(3);
        let mut pts = Vec::new();
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    if let Ok(x) = ProjPoint::from_ints(field, [0, a, b, c]) {
                        if !pts.contains(&x) {
                            pts.push(x);
                        }
                    }
                }
            }
        }
        pts
    };
    let mut witness = None;
    for x in &points {
        let l = omega_cover(x)?.line(field);
        if !incidence(x, &l) {
            witness.get_or_insert_with(|| x.clone());
        }
    }
    Ok(MaximalityCert {
        passed: witness.is_none(),
        omega_points_checked: points.len() as u64,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualSpreadCert {
    pub passed: bool,
    pub planes_total: u64,
    pub planes_with_exactly_one: u64,
    pub planes_with_none: u64,
    pub planes_with_several: u64,
    pub witness_plane: Option<ProjPlane>,
    /// Planes through `Z` (the dual of `omega`) each contain a line of `O`.
    pub z_planes_total: u64,
    pub z_planes_covered: u64,
    pub z_surrogate_passed: bool,
}

/// Counts the lines of `O` in every plane of `PG(3,q)`.
pub fn certify_dual_spread(field: FieldSpec) -> Result<DualSpreadCert> {
    let o = build_o(field)?;
    let planes = enumerate_planes(field)?;
    let counts: Vec<usize> = planes
        .par_iter()
        .map(|e| o.iter().filter(|l| line_in_plane(l, e)).count())
        .collect();
    let z = cayley::pinch_point(field);
    let mut z_total = 0;
    let mut z_covered = 0;
    for (e, &n) in planes.iter().zip(&counts) {
        if e.contains(&z) {
            z_total += 1;
            if n >= 1 {
                z_covered += 1;
            }
        }
    }
    let exactly_one = counts.iter().filter(|&&n| n == 1).count() as u64;
    let none = counts.iter().filter(|&&n| n == 0).count() as u64;
    let witness_plane = planes.iter().zip(&counts).find(|(_, &n)| n != 1).map(|(e, _)| e.clone());
    Ok(DualSpreadCert {
        passed: exactly_one == planes.len() as u64,
        planes_total: planes.len() as u64,
        planes_with_exactly_one: exactly_one,
        planes_with_none: none,
        planes_with_several: planes.len() as u64 - exactly_one - none,
        witness_plane,
        z_planes_total: z_total,
        z_planes_covered: z_covered,
        z_surrogate_passed: z_total == z_covered,
    })
}

/// Image of a line under the duality `x -> (x3,x2,x1,x0)`: the common line
/// of the image planes of its points.
pub fn dual_line(l: &Line) -> Line {
    let field = l.field();
    let (p, q) = l.span();
    let rows = vec![
        cayley::duality(p).coords().to_vec(),
        cayley::duality(q).coords().to_vec(),
    ];
    let ns = linalg::nullspace(&rows, 4, field);
    Line::through(
        ProjPoint::from_slice(&ns[0]).expect("basis vector"),
        ProjPoint::from_slice(&ns[1]).expect("basis vector"),
    )
    .expect("independent")
}

/// The duality maps `O` onto itself (finite fields, exhaustive).
pub fn duality_fixes_o(field: FieldSpec) -> Result<bool> {
    let o = build_o(field)?;
    let image: LineSet = o.iter().map(dual_line).collect();
    Ok(image.same_lines(&o))
}

/// The affine chart used to compare `O` with the classical description:
/// `s = u1`, `t = u2/3 - u1^2`, and the planes `u = t x + s y`,
/// `v = -(s^3/3) x + (s^2 + t) y` in coordinates `(x,y,u,v) = (x0..x3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalChart {
    pub t: FieldElement,
    pub s: FieldElement,
    pub plane_u: ProjPlane,
    pub plane_v: ProjPlane,
}

pub fn classical_chart(u1: &FieldElement, u2: &FieldElement) -> Result<ClassicalChart> {
    let field = u1.field();
    let inv3 = field.int(3).inv().ok_or(Error::Char3Unsupported)?;
    let s = u1.clone();
    let t = &(u2 * &inv3) - &u1.square();
    let (vx, vy) = chart_transversal(&t, &s)?;
    let plane_u = ProjPlane::new([t.clone(), s.clone(), -field.one(), field.zero()])?;
    let plane_v = ProjPlane::new([vx, vy, field.zero(), -field.one()])?;
    Ok(ClassicalChart { t, s, plane_u, plane_v })
}

/// `(t, s) -> (-s^3/3, s^2 + t)`.
pub fn chart_transversal(t: &FieldElement, s: &FieldElement) -> Result<(FieldElement, FieldElement)> {
    let inv3 = t.field().int(3).inv().ok_or(Error::Char3Unsupported)?;
    Ok((-(&s.cube() * &inv3), &s.square() + t))
}

/// The collineation `(x0,x1,x2,x3) -> (x0, x1, x2/3, x3/3)`.
pub fn alpha(x: &ProjPoint) -> Result<ProjPoint> {
    let inv3 = x.field().int(3).inv().ok_or(Error::Char3Unsupported)?;
    let c = x.coords();
    ProjPoint::new([c[0].clone(), c[1].clone(), &c[2] * &inv3, &c[3] * &inv3])
}

/// Tangents at the points `P(s, s^2 + t)` of the generator `g(1,s)`, plus
/// `g_inf`.
pub fn regulus_minus(s: &FieldElement) -> Result<LineSet> {
    let field = s.field();
    let mut out = LineSet::new();
    for t in field.elements()? {
        out.insert(osculating_tangent(s, &(&s.square() + &t)).line);
    }
    out.insert(cayley::directrix(field));
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct RegulusCheck {
    pub opposite: LineSet,
}

/// Checks that `ls` is a regulus of `PG(3,q)`: `q+1` pairwise skew lines
/// whose transversals form `q+1` pairwise skew lines, whose own transversals
/// give back `ls`.
pub fn verify_regulus(ls: &LineSet) -> Result<RegulusCheck> {
    let first = ls.iter().next().ok_or_else(|| Error::NotARegulus("empty".into()))?;
    let field = first.field();
    let q = field.require_finite()? as usize;
    if ls.len() != q + 1 {
        return Err(Error::NotARegulus(format!("{} lines, expected {}", ls.len(), q + 1)));
    }
    pairwise_skew(ls)?;
    let all = enumerate_lines(field)?;
    let transversals = |set: &LineSet| -> LineSet {
        all.iter()
            .filter(|l| set.iter().all(|m| !lines_skew_polar(l, m)))
            .cloned()
            .collect()
    };
    let opposite = transversals(ls);
    if opposite.len() != q + 1 {
        return Err(Error::NotARegulus(format!(
            "{} transversals, expected {}",
            opposite.len(),
            q + 1
        )));
    }
    pairwise_skew(&opposite)?;
    if !transversals(&opposite).same_lines(ls) {
        return Err(Error::NotARegulus("transversals of the transversals differ".into()));
    }
    Ok(RegulusCheck { opposite })
}

fn pairwise_skew(ls: &LineSet) -> Result<()> {
    let v = ls.as_slice();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if !lines_skew(&v[i], &v[j]) {
                return Err(Error::NotARegulus(format!("{} meets {}", v[i], v[j])));
            }
        }
    }
    Ok(())
}

/// Sends `x` in `omega \ g_inf` along its line of `O` to `V(X1)`: for
/// `x = (0,1,c,d)`, `u1 = c/3`, `u2 = d`, image `(1, 0, u2 - 3u1^2, -u1^3)`.
pub fn transversal_map(x: &ProjPoint) -> Result<ProjPoint> {
    let c = x.coords();
    if !c[0].is_zero() {
        return Err(Error::NotAtInfinity);
    }
    if c[1].is_zero() {
        return Err(Error::PointOnGInf);
    }
    let field = x.field();
    let inv3 = field.int(3).inv().ok_or(Error::Char3Unsupported)?;
    let three = field.int(3);
    let u1 = &c[2] * &inv3;
    let u2 = c[3].clone();
    ProjPoint::new([
        field.one(),
        field.zero(),
        &u2 - &(&three * &u1.square()),
        -u1.cube(),
    ])
}

/// Aggregate certificate for one field.
#[derive(Clone, Debug, Serialize)]
pub struct SpreadCert {
    pub field: FieldSpec,
    pub regime: SpreadRegime,
    pub pairwise_skew: PartialSpreadCert,
    pub covers_all: CoveringCert,
    /// `None` in characteristic 3.
    pub maximal: Option<MaximalityCert>,
    /// `None` over `Q`.
    pub dual_spread: Option<DualSpreadCert>,
}

impl SpreadCert {
    /// Each verdict matches what the regime predicts.
    pub fn consistent_with_regime(&self) -> bool {
        let r = self.regime;
        let mut ok = self.pairwise_skew.passed == r.is_partial_spread()
            && self.covers_all.passed == r.is_covering();
        if let Some(m) = &self.maximal {
            ok &= m.passed;
        }
        if let Some(d) = &self.dual_spread {
            ok &= d.passed == r.is_covering();
            if r != SpreadRegime::Char3 {
                ok &= d.z_surrogate_passed;
            }
        }
        ok
    }
}

pub fn certify_spread(field: FieldSpec, seed: u64, spot_checks: u64) -> SpreadCert {
    SpreadCert {
        field,
        regime: classify_field(field),
        pairwise_skew: certify_partial_spread(field, seed, spot_checks),
        covers_all: certify_covering(field),
        maximal: certify_maximality(field).ok(),
        dual_spread: certify_dual_spread(field).ok(),
    }
}
