//! Cayley's ruled cubic surface `F = V(X0 X1 X2 - X1^3 - X0^2 X3)`.
//!
//! Covers membership, the singular structure (double line `g_inf`, pinch
//! point `Z`, and in characteristic 3 the line of nuclei), tangent planes and
//! cones, generators, line/surface intersection multiplicities, the
//! automorphism group `G = { M_{a,b,c} }`, and the duality onto tangent planes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::binform::BinaryForm;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::projspace::{Line, ProjPlane, ProjPoint};

/// The pinch point `Z = (0,0,0,1)`.
pub fn pinch_point(field: FieldSpec) -> ProjPoint {
    ProjPoint::from_ints(field, [0, 0, 0, 1]).expect("nonzero")
}

/// The plane at infinity `omega = V(X0)`.
pub fn plane_at_infinity(field: FieldSpec) -> ProjPlane {
    ProjPlane::from_ints(field, [1, 0, 0, 0]).expect("nonzero")
}

/// The directrix `g_inf = V(X0, X1)`, the double line of `F`.
pub fn directrix(field: FieldSpec) -> Line {
    Line::through(
        ProjPoint::from_ints(field, [0, 0, 1, 0]).expect("nonzero"),
        pinch_point(field),
    )
    .expect("distinct points")
}

/// The line `n = V(X0, X2)`; in characteristic 3 its points other than `Z`
/// are nuclei.
pub fn nuclei_line(field: FieldSpec) -> Line {
    Line::through(
        ProjPoint::from_ints(field, [0, 1, 0, 0]).expect("nonzero"),
        pinch_point(field),
    )
    .expect("distinct points")
}

pub fn f_value(x: &ProjPoint) -> FieldElement {
    f_raw(x.coords())
}

fn f_raw(x: &[FieldElement]) -> FieldElement {
    let t1 = &(&x[0] * &x[1]) * &x[2];
    let t2 = x[1].cube();
    let t3 = &x[0].square() * &x[3];
    &(&t1 - &t2) - &t3
}

pub fn on_surface(x: &ProjPoint) -> bool {
    f_value(x).is_zero()
}

/// The four partial derivatives of `f` at `x`.
pub fn gradient(x: &ProjPoint) -> [FieldElement; 4] {
    let c = x.coords();
    let field = x.field();
    let two = field.int(2);
    let three = field.int(3);
    [
        &(&c[1] * &c[2]) - &(&two * &(&c[0] * &c[3])),
        &(&c[0] * &c[2]) - &(&three * &c[1].square()),
        &c[0] * &c[1],
        -c[0].square(),
    ]
}

/// The affine parametrization `P(u1,u2) = (1, u1, u2, u1 u2 - u1^3)`.
pub fn surface_point(u1: &FieldElement, u2: &FieldElement) -> ProjPoint {
    let one = u1.one_like();
    let x3 = &(u1 * u2) - &u1.cube();
    ProjPoint::new([one, u1.clone(), u2.clone(), x3]).expect("first coordinate is 1")
}

/// Recovers `(u1, u2)` from an affine point of `F`.
pub fn surface_parameters(x: &ProjPoint) -> Option<(FieldElement, FieldElement)> {
    let c = x.coords();
    (c[0].is_one() && on_surface(x)).then(|| (c[1].clone(), c[2].clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointClass {
    SimpleOnF,
    DoubleOnGInf,
    PinchPointZ,
    /// Off the surface with vanishing gradient (characteristic 3 only).
    Nucleus,
    OffSurface,
}

pub fn classify_point(x: &ProjPoint) -> PointClass {
    let singular = gradient(x).iter().all(FieldElement::is_zero);
    match (on_surface(x), singular) {
        (true, false) => PointClass::SimpleOnF,
        (true, true) if *x == pinch_point(x.field()) => PointClass::PinchPointZ,
        (true, true) => PointClass::DoubleOnGInf,
        (false, true) => PointClass::Nucleus,
        (false, false) => PointClass::OffSurface,
    }
}

/// Tangent plane at `P(u1,u2)`:
/// `(2u1^3 - u1 u2) X0 + (u2 - 3u1^2) X1 + u1 X2 - X3`.
pub fn tangent_plane(u1: &FieldElement, u2: &FieldElement) -> ProjPlane {
    let field = u1.field();
    let e0 = &(&field.int(2) * &u1.cube()) - &(u1 * u2);
    let e1 = u2 - &(&field.int(3) * &u1.square());
    ProjPlane::new([e0, e1, u1.clone(), -field.one()]).expect("X3 coefficient is -1")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TangentCone {
    /// At `Z` the cone degenerates to the plane `omega` counted twice.
    Repeated(ProjPlane),
    Pair(ProjPlane, ProjPlane),
}

/// Tangent cone `V(X0 (s2 X1 - s3 X0))` at `U = (0,0,s2,s3)` on `g_inf`.
pub fn tangent_cone_at_infinity(u: &ProjPoint) -> Result<TangentCone> {
    let c = u.coords();
    if !(c[0].is_zero() && c[1].is_zero()) {
        return Err(Error::NotOnGInf);
    }
    let field = u.field();
    let omega = plane_at_infinity(field);
    let other = ProjPlane::new([-&c[3], c[2].clone(), field.zero(), field.zero()])?;
    Ok(if other == omega {
        TangentCone::Repeated(omega)
    } else {
        TangentCone::Pair(omega, other)
    })
}

/// The generator `g(s0,s1)` spanned by `(s0^2, s0 s1, s1^2, 0)` and
/// `(0, 0, s0, s1)`.
pub fn generator(s0: &FieldElement, s1: &FieldElement) -> Result<Line> {
    if s0.is_zero() && s1.is_zero() {
        return Err(Error::ZeroParameters);
    }
    let zero = s0.zero_like();
    let p = ProjPoint::new([s0.square(), s0 * s1, s1.square(), zero.clone()])?;
    let q = ProjPoint::new([zero.clone(), zero, s0.clone(), s1.clone()])?;
    Line::through(p, q)
}

/// Canonical representatives of `PG(1,q)`: `(0,1)` then `(1,s)` for each `s`.
pub fn generator_parameters(field: FieldSpec) -> Result<Vec<(FieldElement, FieldElement)>> {
    let mut out = vec![(field.zero(), field.one())];
    out.extend(field.elements()?.map(|s| (field.one(), s)));
    Ok(out)
}

/// How a line meets `F`: contained in it, or a list of rational intersection
/// points with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IntersectionProfile {
    ContainedInLine,
    Points(Vec<(ProjPoint, u32)>),
}

/// Restricts `f` to `lambda p + mu q`; coefficients of `lambda^(3-k) mu^k`.
fn restrict_to_line(line: &Line) -> BinaryForm {
    let (p, q) = line.span();
    let x: Vec<BinaryForm> = (0..4)
        .map(|i| BinaryForm::linear(p.coords()[i].clone(), q.coords()[i].clone()))
        .collect();
    let t1 = x[0].mul(&x[1]).mul(&x[2]);
    let t2 = x[1].mul(&x[1]).mul(&x[1]);
    let t3 = x[0].mul(&x[0]).mul(&x[3]);
    t1.add(&t2.neg()).add(&t3.neg())
}

/// Intersection of a line with `F`. Only `K`-rational points are reported;
/// over `Q` irrational roots of the restricted cubic are ignored.
pub fn intersect_line_surface(line: &Line) -> IntersectionProfile {
    let form = restrict_to_line(line);
    if form.is_zero() {
        return IntersectionProfile::ContainedInLine;
    }
    let (p, q) = line.span();
    // g(t) = form(1, t) describes the point p + t q; the point q is the root
    // (0:1), whose multiplicity is 3 - deg g.
    let mut poly = form.coeffs.clone();
    while poly.last().is_some_and(FieldElement::is_zero) {
        poly.pop();
    }
    let mut out = Vec::new();
    let at_q = 3 - (poly.len() as u32 - 1);
    if at_q > 0 {
        out.push((q.clone(), at_q));
    }
    for (t, m) in roots_with_multiplicity(&poly) {
        let c: [FieldElement; 4] = std::array::from_fn(|i| &p.coords()[i] + &(&t * &q.coords()[i]));
        out.push((ProjPoint::new(c).expect("p and q independent"), m));
    }
    out.sort();
    IntersectionProfile::Points(out)
}

/// Distinct roots of a univariate polynomial (ascending coefficients) in its
/// field, each with multiplicity.
fn roots_with_multiplicity(poly: &[FieldElement]) -> Vec<(FieldElement, u32)> {
    if poly.len() <= 1 {
        return Vec::new();
    }
    let field = poly[0].field();
    let candidates: Vec<FieldElement> = match field.modulus() {
        Some(_) => field
            .elements()
            .expect("finite")
            .filter(|t| eval(poly, t).is_zero())
            .collect(),
        None => {
            let coeffs: Vec<BigRational> = poly
                .iter()
                .map(|c| c.as_rational().expect("rational").clone())
                .collect();
            rational_roots(&coeffs)
                .into_iter()
                .map(|r| field.from_rational(&r).expect("rational"))
                .collect()
        }
    };
    candidates
        .into_iter()
        .map(|t| {
            let mut m = 0;
            let mut cur = poly.to_vec();
            while cur.len() > 1 && eval(&cur, &t).is_zero() {
                cur = divide_linear(&cur, &t);
                m += 1;
            }
            (t, m)
        })
        .collect()
}

fn eval(poly: &[FieldElement], t: &FieldElement) -> FieldElement {
    let mut acc = t.zero_like();
    for c in poly.iter().rev() {
        acc = &(&acc * t) + c;
    }
    acc
}

/// Quotient of `poly` by `(x - t)`, assuming `t` is a root.
fn divide_linear(poly: &[FieldElement], t: &FieldElement) -> Vec<FieldElement> {
    let n = poly.len() - 1;
    let mut q = vec![t.zero_like(); n];
    let mut carry = t.zero_like();
    for k in (0..n).rev() {
        carry = &poly[k + 1] + &(&carry * t);
        q[k] = carry.clone();
    }
    q
}

/// Rational roots by the rational root theorem on the cleared polynomial.
fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    let lcm = poly
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = poly.iter().map(|c| (c * &lcm).to_integer()).collect();
    while ints.last().is_some_and(Zero::is_zero) {
        ints.pop();
    }
    let mut roots = Vec::new();
    if ints.iter().take_while(|c| c.is_zero()).count() > 0 {
        roots.push(BigRational::zero());
    }
    let ints: Vec<BigInt> = ints.into_iter().skip_while(Zero::is_zero).collect();
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    let eval_int = |r: &BigRational| {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * r + BigRational::from_integer(c.clone());
        }
        acc.is_zero()
    };
    let dens = divisors(&an);
    for num in divisors(&a0) {
        for den in &dens {
            for sign in [1, -1] {
                let r = BigRational::new(&num * BigInt::from(sign), den.clone());
                if !roots.contains(&r) && eval_int(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// An element `M_{a,b,c}` of the automorphism group `G` of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GMatrix {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
    entries: [[FieldElement; 4]; 4],
}

impl GMatrix {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroScale);
        }
        let field = a.field();
        let z = field.zero();
        let three = field.int(3);
        let entries = [
            [field.one(), z.clone(), z.clone(), z.clone()],
            [a.clone(), c.clone(), z.clone(), z.clone()],
            [b.clone(), &three * &(&a * &c), c.square(), z],
            [&(&a * &b) - &a.cube(), &b * &c, &a * &c.square(), c.cube()],
        ];
        Ok(GMatrix { a, b, c, entries })
    }

    pub fn entries(&self) -> &[[FieldElement; 4]; 4] {
        &self.entries
    }

    pub fn apply(&self, x: &ProjPoint) -> ProjPoint {
        let c = x.coords();
        let y: [FieldElement; 4] = std::array::from_fn(|i| crate::linalg::dot(&self.entries[i], c));
        ProjPoint::new(y).expect("invertible matrix")
    }

    pub fn apply_line(&self, l: &Line) -> Line {
        let (p, q) = l.span();
        Line::through(self.apply(p), self.apply(q)).expect("invertible matrix")
    }

    /// The product `self * other`, re-validated as a group element.
    pub fn compose(&self, other: &GMatrix) -> Result<GMatrix> {
        let prod: [[FieldElement; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = self.a.zero_like();
                for k in 0..4 {
                    acc = &acc + &(&self.entries[i][k] * &other.entries[k][j]);
                }
                acc
            })
        });
        let m = GMatrix::new(prod[1][0].clone(), prod[2][0].clone(), prod[1][1].clone())
            .map_err(|_| Error::NotInGroup("vanishing scale".into()))?;
        if m.entries != prod {
            return Err(Error::NotInGroup(format!(
                "product with a={}, b={}, c={} does not have group shape",
                m.a, m.b, m.c
            )));
        }
        Ok(m)
    }

    /// Induced map on chart parameters:
    /// `(u1,u2) -> (a + c u1, b + 3ac u1 + c^2 u2)`.
    pub fn affine_action(&self, u1: &FieldElement, u2: &FieldElement) -> (FieldElement, FieldElement) {
        let three = self.a.field().int(3);
        let v1 = &self.a + &(&self.c * u1);
        let v2 = &(&self.b + &(&three * &(&(&self.a * &self.c) * u1))) + &(&self.c.square() * u2);
        (v1, v2)
    }

    pub fn determinant(&self) -> FieldElement {
        self.c.pow(6)
    }
}

pub fn group_matrix(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<GMatrix> {
    GMatrix::new(a, b, c)
}

pub fn group_apply(m: &GMatrix, x: &ProjPoint) -> ProjPoint {
    m.apply(x)
}

pub fn group_compose(m: &GMatrix, n: &GMatrix) -> Result<GMatrix> {
    m.compose(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orbit {
    AffineSurfaceOrbit,
    GInfMinusZ,
    ZOrbit,
    NotOnSurface,
}

pub fn orbit_of(x: &ProjPoint) -> Orbit {
    if !on_surface(x) {
        Orbit::NotOnSurface
    } else if !x.coords()[0].is_zero() {
        Orbit::AffineSurfaceOrbit
    } else if *x == pinch_point(x.field()) {
        Orbit::ZOrbit
    } else {
        Orbit::GInfMinusZ
    }
}

/// The duality `(x0,x1,x2,x3)^T -> (x3,x2,x1,x0)`, taking points of `F` to
/// tangent planes of `F`.
pub fn duality(x: &ProjPoint) -> ProjPlane {
    let c = x.coords();
    ProjPlane::new([c[3].clone(), c[2].clone(), c[1].clone(), c[0].clone()]).expect("nonzero")
}

/// Whether `V(a0 X0 + ... + a3 X3)` is a tangent plane of `F`:
/// `a1 a2 a3 - a2^3 - a0 a3^2 = 0`.
pub fn tangency_test(e: &ProjPlane) -> bool {
    let a = e.coords();
    let v = &(&(&(&a[1] * &a[2]) * &a[3]) - &a[2].cube()) - &(&a[0] * &a[3].square());
    v.is_zero()
}

/// All points of `F` over a finite field.
pub fn surface_points(field: FieldSpec) -> Result<Vec<ProjPoint>> {
    Ok(crate::projspace::enumerate_points(field)?
        .into_iter()
        .filter(on_surface)
        .collect())
}
