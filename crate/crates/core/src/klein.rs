//! Klein images of the lines in play, in Plücker coordinates
//! `(Y01, Y02, Y03, Y12, Y13, Y23)`.
//!
//! The images of `O` and of the pencil `L[Z, omega]` together are cut out of
//! `PG(5,q)` by the Klein form `k` and three further quadrics `h1, h2, h3`.
//! In characteristic 3 they fill the cone `Q ∩ D` instead.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::binform::BinaryForm;
use crate::cayley;
use crate::error::{Error, Result};
use crate::field::{cube_roots, CubeRootProfile, FieldElement, FieldSpec};
use crate::linalg::{self, Matrix, Vector};
use crate::projspace::{
    enumerate_lines, klein_form, projective_point_at, projective_point_count, KleinPoint, Line,
    LineSet, ProjPoint,
};

pub fn kappa(l: &Line) -> KleinPoint {
    l.plucker().clone()
}

fn yij(y: &[FieldElement]) -> [&FieldElement; 6] {
    [&y[0], &y[1], &y[2], &y[3], &y[4], &y[5]]
}

pub fn form_k(y: &[FieldElement]) -> FieldElement {
    klein_form(y)
}

/// `3 Y01 (Y12 + Y03) - Y02^2`
pub fn form_h1(y: &[FieldElement]) -> FieldElement {
    let [y01, y02, y03, y12, _, _] = yij(y);
    let three = y01.field().int(3);
    &(&(&three * y01) * &(y12 + y03)) - &y02.square()
}

/// `3 Y02 Y13 - (Y12 + Y03)^2`
pub fn form_h2(y: &[FieldElement]) -> FieldElement {
    let [_, y02, y03, y12, y13, _] = yij(y);
    let three = y02.field().int(3);
    &(&(&three * y02) * y13) - &(y12 + y03).square()
}

/// `9 Y01 Y13 - Y02 (Y12 + Y03)`
pub fn form_h3(y: &[FieldElement]) -> FieldElement {
    let [y01, y02, y03, y12, y13, _] = yij(y);
    let nine = y01.field().int(9);
    &(&(&nine * y01) * y13) - &(y02 * &(y12 + y03))
}

#[derive(Clone, Copy, Debug)]
pub struct KleinForms;

impl KleinForms {
    pub const NAMES: [&'static str; 4] = ["k", "h1", "h2", "h3"];

    pub fn evaluate(y: &[FieldElement]) -> [FieldElement; 4] {
        [form_k(y), form_h1(y), form_h2(y), form_h3(y)]
    }

    pub fn all_vanish(y: &[FieldElement]) -> bool {
        Self::evaluate(y).iter().all(FieldElement::is_zero)
    }
}

/// Closed form of the Klein image of the osculating tangent at `P(u1,u2)`.
pub fn kappa_osculating(u1: &FieldElement, u2: &FieldElement) -> KleinPoint {
    let field = u1.field();
    let coords = if field.characteristic() == 3 {
        [field.one(), field.zero(), u2.clone(), -u2, u1.cube(), u2.square()]
    } else {
        let three = field.int(3);
        let u1sq = u1.square();
        let y12 = &(&three * &u1sq) - u2;
        let y23 = &(&(&three * &u1sq.square()) - &(&(&three * &u1sq) * u2)) + &u2.square();
        [field.one(), &three * u1, u2.clone(), y12, u1.cube(), y23]
    };
    KleinPoint::new(coords).expect("Y01 = 1")
}

/// `kappa(g(s0,s1))` as a point of the twisted cubic.
pub fn generator_cubic(s0: &FieldElement, s1: &FieldElement) -> Result<KleinPoint> {
    Ok(kappa(&cayley::generator(s0, s1)?))
}

/// The four Plücker minors of `g(L,M)` as cubic binary forms.
fn generator_plucker_forms(field: FieldSpec) -> [BinaryForm; 6] {
    let (one, zero) = (field.one(), field.zero());
    let l = BinaryForm::linear(one.clone(), zero.clone());
    let m = BinaryForm::linear(zero.clone(), one.clone());
    let p = [l.mul(&l), l.mul(&m), m.mul(&m), BinaryForm::zero(field, 2)];
    let q = [BinaryForm::zero(field, 1), BinaryForm::zero(field, 1), l.clone(), m.clone()];
    let minor = |i: usize, j: usize| p[i].mul(&q[j]).add(&p[j].mul(&q[i]).neg());
    [minor(0, 1), minor(0, 2), minor(0, 3), minor(1, 2), minor(1, 3), minor(2, 3)]
}

/// `v0..v3` with `kappa(g(s0,s1)) = sum s0^(3-k) s1^k v_k`, read off the
/// coefficients of the symbolic Plücker minors.
pub fn twisted_cubic_basis(field: FieldSpec) -> [Vector; 4] {
    let forms = generator_plucker_forms(field);
    std::array::from_fn(|k| forms.iter().map(|f| f.coeffs[k].clone()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SubspaceName {
    C,
    Cperp,
    B,
    D,
    Dperp,
    PencilLine,
}

/// A subspace of `PG(5,K)`, held both by linear equations and by a basis.
#[derive(Clone, Debug)]
pub struct KleinSubspace {
    pub name: SubspaceName,
    pub equations: Matrix,
    pub basis: Matrix,
}

fn unit(field: FieldSpec, i: usize) -> Vector {
    let mut v = vec![field.zero(); 6];
    v[i] = field.one();
    v
}

fn ints(field: FieldSpec, c: [i64; 6]) -> Vector {
    c.iter().map(|&x| field.int(x)).collect()
}

/// Row of the polar form: `polar_row(b) . z = polar(b, z)`.
fn polar_row(b: &[FieldElement]) -> Vector {
    vec![b[5].clone(), -&b[4], b[3].clone(), b[2].clone(), -&b[1], b[0].clone()]
}

impl KleinSubspace {
    pub fn from_equations(name: SubspaceName, field: FieldSpec, equations: Matrix) -> Self {
        let basis = linalg::nullspace(&equations, 6, field);
        KleinSubspace { name, equations, basis }
    }

    pub fn from_basis(name: SubspaceName, field: FieldSpec, basis: Matrix) -> Self {
        let equations = linalg::nullspace(&basis, 6, field);
        KleinSubspace { name, equations, basis }
    }

    /// Projective dimension.
    pub fn dimension(&self) -> isize {
        linalg::rank(&self.basis) as isize - 1
    }

    pub fn contains(&self, y: &[FieldElement]) -> bool {
        self.equations.iter().all(|e| linalg::dot(e, y).is_zero())
    }

    pub fn same_as(&self, other: &KleinSubspace) -> bool {
        self.dimension() == other.dimension() && self.basis.iter().all(|b| other.contains(b))
    }

    /// Polar subspace with respect to the Klein quadric.
    pub fn perp(&self, name: SubspaceName) -> KleinSubspace {
        let field = self.basis.first().or(self.equations.first()).expect("nonempty")[0].field();
        let eqs = self.basis.iter().map(|b| polar_row(b)).collect();
        KleinSubspace::from_equations(name, field, eqs)
    }

    /// `C = V(Y01, Y03 - Y12)`.
    pub fn c(field: FieldSpec) -> Self {
        Self::from_equations(
            SubspaceName::C,
            field,
            vec![ints(field, [1, 0, 0, 0, 0, 0]), ints(field, [0, 0, 1, -1, 0, 0])],
        )
    }

    /// `C-perp = span{w_inf, w}`, `w_inf = (0,0,0,0,0,1)`, `w = (0,0,1,-1,0,0)`.
    pub fn c_perp(field: FieldSpec) -> Self {
        Self::from_basis(SubspaceName::Cperp, field, vec![w_inf(field), w(field)])
    }

    /// `B = V(Y03, Y23)`.
    pub fn b(field: FieldSpec) -> Self {
        Self::from_equations(SubspaceName::B, field, vec![unit(field, 2), unit(field, 5)])
    }

    /// `D = V(Y02, Y03 + Y12)`.
    pub fn d(field: FieldSpec) -> Self {
        Self::from_equations(
            SubspaceName::D,
            field,
            vec![unit(field, 1), ints(field, [0, 0, 1, 1, 0, 0])],
        )
    }

    /// `D-perp = span{(0,0,0,0,1,0), (0,0,1,1,0,0)}`.
    pub fn d_perp(field: FieldSpec) -> Self {
        Self::from_basis(
            SubspaceName::Dperp,
            field,
            vec![unit(field, 4), ints(field, [0, 0, 1, 1, 0, 0])],
        )
    }

    /// Klein image of the pencil `L[Z, omega]`: `span{(0,0,0,0,1,0), w_inf}`.
    pub fn pencil_line(field: FieldSpec) -> Self {
        Self::from_basis(SubspaceName::PencilLine, field, vec![unit(field, 4), w_inf(field)])
    }
}

pub fn w_inf(field: FieldSpec) -> Vector {
    unit(field, 5)
}

pub fn w(field: FieldSpec) -> Vector {
    ints(field, [0, 0, 1, -1, 0, 0])
}

/// The line of the pencil `L[Z, omega]` through `(0,1,a,0)`.
pub fn pencil_member(a: &FieldElement) -> Line {
    let field = a.field();
    let x = ProjPoint::new([field.zero(), field.one(), a.clone(), field.zero()]).expect("nonzero");
    Line::through(x, cayley::pinch_point(field)).expect("distinct")
}

/// `L[Z, omega]`: `g_inf`, then the lines through `(0,1,a,0)`.
pub fn pencil_lzomega(field: FieldSpec) -> Result<LineSet> {
    let mut out = LineSet::new();
    out.insert(cayley::directrix(field));
    for a in field.elements()? {
        out.insert(pencil_member(&a));
    }
    Ok(out)
}

/// Whether `y` is the Klein image of a line of `O`.
pub fn in_kappa_o(y: &KleinPoint) -> bool {
    let c = y.coords();
    let field = y.field();
    if c[..5].iter().all(FieldElement::is_zero) {
        return true; // w_inf = kappa(g_inf)
    }
    if !c[0].is_one() {
        return false;
    }
    let u2 = c[2].clone();
    let candidates = match field.int(3).inv() {
        Some(inv3) => vec![&c[1] * &inv3],
        None => cube_roots(&c[4]),
    };
    candidates.iter().any(|u1| kappa_osculating(u1, &u2) == *y)
}

/// `kappa(O ∪ L[Z, omega])` over a finite field.
pub fn kappa_o_union_pencil(field: FieldSpec) -> Result<HashSet<KleinPoint>> {
    let mut out: HashSet<KleinPoint> = crate::bwspread::build_o(field)?.iter().map(kappa).collect();
    out.extend(pencil_lzomega(field)?.iter().map(kappa));
    Ok(out)
}

/// Canonical points of `PG(5,q)` satisfying `pred`, in enumeration order.
pub fn scan_pg5<P>(field: FieldSpec, pred: P) -> Result<Vec<KleinPoint>>
where
    P: Fn(&[FieldElement]) -> bool + Sync,
{
    let q = field.require_finite()?;
    let total = projective_point_count(q, 6);
    Ok((0..total)
        .into_par_iter()
        .filter_map(|i| {
            let v = projective_point_at(field, 6, i);
            pred(&v).then(|| KleinPoint::from_slice(&v).expect("canonical"))
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarietyCert {
    pub passed: bool,
    pub candidates_scanned: u64,
    pub variety_points: u64,
    pub image_points: u64,
    pub expected: u64,
    pub only_in_variety: Option<KleinPoint>,
    pub only_in_image: Option<KleinPoint>,
}

/// Compares `V(k, h1, h2, h3)` with `kappa(O ∪ L[Z, omega])` as point sets.
pub fn verify_variety_equality(field: FieldSpec) -> Result<VarietyCert> {
    let q = field.require_finite()?;
    if field.characteristic() == 3 {
        return Err(Error::Char3Unsupported);
    }
    let variety = scan_pg5(field, KleinForms::all_vanish)?;
    let image = kappa_o_union_pencil(field)?;
    let variety_set: HashSet<&KleinPoint> = variety.iter().collect();
    let only_in_variety = variety.iter().find(|y| !image.contains(y)).cloned();
    let mut only_in_image: Vec<&KleinPoint> =
        image.iter().filter(|y| !variety_set.contains(y)).collect();
    only_in_image.sort();
    let expected = q * q + q + 1;
    Ok(VarietyCert {
        passed: only_in_variety.is_none()
            && only_in_image.is_empty()
            && variety.len() as u64 == expected,
        candidates_scanned: projective_point_count(q, 6),
        variety_points: variety.len() as u64,
        image_points: image.len() as u64,
        expected,
        only_in_variety,
        only_in_image: only_in_image.first().map(|y| (*y).clone()),
    })
}

/// Projects `y` from the line `C-perp` onto the 3-space `B`: the point of
/// `span{y, w, w_inf}` in `B`.
pub fn project_through_cperp(y: &KleinPoint) -> Result<KleinPoint> {
    let field = y.field();
    let b = KleinSubspace::b(field);
    let gens = [y.coords().to_vec(), w(field), w_inf(field)];
    // unknowns (lambda, alpha, beta): equations of B applied to the combination
    let rows: Matrix = b
        .equations
        .iter()
        .map(|e| gens.iter().map(|g| linalg::dot(e, g)).collect())
        .collect();
    let sol = linalg::nullspace(&rows, 3, field);
    if sol.len() != 1 {
        return Err(Error::ProjectionDegenerate);
    }
    let s = &sol[0];
    let combo: Vector = (0..6)
        .map(|i| {
            let mut acc = field.zero();
            for (coef, g) in s.iter().zip(&gens) {
                acc = &acc + &(coef * &g[i]);
            }
            acc
        })
        .collect();
    KleinPoint::from_slice(&combo).map_err(|_| Error::ProjectionDegenerate)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Char3Cert {
    pub passed: bool,
    /// Every point of `kappa(O ∪ L[Z, omega])` lies in `Q ∩ D`.
    pub images_in_q_cap_d: bool,
    pub q_cap_d_points: u64,
    pub expected: u64,
    /// Lines whose Klein image lies in `Q ∩ D`.
    pub congruence: Vec<Line>,
    pub congruence_size: u64,
    pub all_meet_n: bool,
    pub cubing_surjective: bool,
    pub congruence_equals_o_union_pencil: bool,
    pub vertex: KleinPoint,
    /// `kappa(n)` lies in `Q ∩ D` and is polar to all of `D`.
    pub vertex_is_cone_vertex: bool,
    pub witness_line: Option<Line>,
}

fn require_char3(field: FieldSpec) -> Result<()> {
    if field.characteristic() == 3 {
        Ok(())
    } else {
        Err(Error::WrongCharacteristic { expected: 3, found: field })
    }
}

/// The parabolic congruence `N` of characteristic 3.
pub fn char3_congruence_check(field: FieldSpec) -> Result<Char3Cert> {
    require_char3(field)?;
    let q = field.require_finite()?;
    let d = KleinSubspace::d(field);
    let in_qd = |y: &[FieldElement]| d.contains(y) && klein_form(y).is_zero();
    let image = kappa_o_union_pencil(field)?;
    let images_in_q_cap_d = image.iter().all(|y| in_qd(y.coords()));
    let qd_points = scan_pg5(field, in_qd)?;
    let congruence: Vec<Line> = enumerate_lines(field)?
        .into_iter()
        .filter(|l| in_qd(l.plucker().coords()))
        .collect();
    let n = cayley::nuclei_line(field);
    let witness_line = congruence
        .iter()
        .find(|l| crate::projspace::lines_skew_polar(l, &n))
        .cloned();
    let congruence_set: HashSet<KleinPoint> = congruence.iter().map(kappa).collect();
    let vertex = kappa(&n);
    let vertex_is_cone_vertex = in_qd(vertex.coords())
        && d.basis
            .iter()
            .all(|b| crate::projspace::klein_polar(vertex.coords(), b).is_zero());
    let cubing_surjective = CubeRootProfile::of(field).cubing_surjective;
    let expected = q * q + q + 1;
    let equals = congruence_set == image;
    let cert = Char3Cert {
        passed: images_in_q_cap_d
            && witness_line.is_none()
            && equals == cubing_surjective
            && qd_points.len() as u64 == expected
            && vertex_is_cone_vertex,
        images_in_q_cap_d,
        q_cap_d_points: qd_points.len() as u64,
        expected,
        congruence_size: congruence.len() as u64,
        congruence,
        all_meet_n: witness_line.is_none(),
        cubing_surjective,
        congruence_equals_o_union_pencil: equals,
        vertex,
        vertex_is_cone_vertex,
        witness_line,
    };
    Ok(cert)
}

/// The osculating plane of the twisted cubic at `(s0 : s1)` from formal
/// derivatives: in the chart `s0 = 1` with parameter `s = s1`, or in the
/// chart `s1 = 1` with parameter `s0` when `s0 = 0`.
pub fn osculating_plane(s0: &FieldElement, s1: &FieldElement) -> Result<Matrix> {
    let field = s0.field();
    if s0.is_zero() && s1.is_zero() {
        return Err(Error::ZeroParameters);
    }
    let mut v = twisted_cubic_basis(field);
    let s = if s0.is_zero() {
        v.reverse();
        field.zero()
    } else {
        s1 * &s0.inv().expect("nonzero")
    };
    // c(s) = sum s^k v_k, c' = sum k s^(k-1) v_k, c'' = sum k(k-1) s^(k-2) v_k
    let combo = |coef: &dyn Fn(usize) -> FieldElement| -> Vector {
        (0..6)
            .map(|i| {
                let mut acc = field.zero();
                for (k, vk) in v.iter().enumerate() {
                    acc = &acc + &(&coef(k) * &vk[i]);
                }
                acc
            })
            .collect()
    };
    let pow = |e: isize| if e < 0 { field.zero() } else { s.pow(e as u64) };
    let point = combo(&|k| pow(k as isize));
    let first = combo(&|k| &field.int(k as i64) * &pow(k as isize - 1));
    let second = combo(&|k| &field.int((k * k.saturating_sub(1)) as i64) * &pow(k as isize - 2));
    Ok(vec![point, first, second])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OsculatingPencilCert {
    pub passed: bool,
    pub parameters_checked: u64,
    pub dperp_is_axis_span: bool,
    pub witness: Option<(FieldElement, FieldElement)>,
}

/// Every osculating plane of the twisted cubic contains `span{v1, v2}`, and
/// that line is `D-perp`.
pub fn osculating_plane_pencil_check(field: FieldSpec) -> Result<OsculatingPencilCert> {
    require_char3(field)?;
    let v = twisted_cubic_basis(field);
    let axis = vec![v[1].clone(), v[2].clone()];
    let mut witness = None;
    let params = cayley::generator_parameters(field)?;
    for (s0, s1) in &params {
        let plane = osculating_plane(s0, s1)?;
        let ok = linalg::rank(&plane) == 3 && axis.iter().all(|a| linalg::in_span(&plane, a));
        if !ok && witness.is_none() {
            witness = Some((s0.clone(), s1.clone()));
        }
    }
    let axis_space = KleinSubspace::from_basis(SubspaceName::Dperp, field, axis);
    let dperp = KleinSubspace::d(field).perp(SubspaceName::Dperp);
    let dperp_is_axis_span =
        axis_space.same_as(&dperp) && dperp.same_as(&KleinSubspace::d_perp(field));
    Ok(OsculatingPencilCert {
        passed: witness.is_none() && dperp_is_axis_span,
        parameters_checked: params.len() as u64,
        dperp_is_axis_span,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bwspread::{build_o, osculating_tangent};
    use crate::projspace::enumerate_lines;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn kp(f: FieldSpec, c: [i64; 6]) -> KleinPoint {
        KleinPoint::from_ints(f, c).unwrap()
    }

    #[test]
    fn kappa_examples() {
        let f = q();
        assert_eq!(kappa(&cayley::directrix(f)), kp(f, [0, 0, 0, 0, 0, 1]));
        let g = cayley::generator(&f.int(1), &f.int(1)).unwrap();
        assert_eq!(kappa(&g), kp(f, [0, 1, 1, 1, 1, 1]));
        let t = osculating_tangent(&f.int(1), &f.int(1)).line;
        assert_eq!(kappa(&t), kp(f, [1, 3, 1, 2, 1, 1]));
    }

    #[test]
    fn kappa_osculating_examples() {
        let f = q();
        assert_eq!(kappa_osculating(&f.int(0), &f.int(0)), kp(f, [1, 0, 0, 0, 0, 0]));
        let y = kappa_osculating(&f.int(1), &f.int(0));
        assert_eq!(y, kp(f, [1, 3, 0, 3, 1, 3]));
        assert!(KleinForms::all_vanish(y.coords()));
        let f3 = gf(3);
        let y = kappa_osculating(&f3.int(1), &f3.int(1));
        assert_eq!(y, kp(f3, [1, 0, 1, 2, 1, 1]));
        assert!(KleinSubspace::d(f3).contains(y.coords()));
        assert!(y.on_klein_quadric());
    }

    #[test]
    fn kappa_osculating_matches_plucker_exhaustive() {
        for p in [2u64, 3, 5, 7] {
            let f = gf(p);
            for u1 in f.elements().unwrap() {
                for u2 in f.elements().unwrap() {
                    let y = kappa_osculating(&u1, &u2);
                    assert_eq!(y, kappa(&osculating_tangent(&u1, &u2).line));
                    assert!(KleinForms::all_vanish(y.coords()));
                    assert!(in_kappa_o(&y));
                }
            }
        }
    }

    #[test]
    fn twisted_cubic_examples() {
        let f = q();
        let v = twisted_cubic_basis(f);
        assert_eq!(v[0], ints(f, [0, 1, 0, 0, 0, 0]));
        assert_eq!(v[1], ints(f, [0, 0, 1, 1, 0, 0]));
        assert_eq!(v[2], ints(f, [0, 0, 0, 0, 1, 0]));
        assert_eq!(v[3], ints(f, [0, 0, 0, 0, 0, 1]));
        assert_eq!(generator_cubic(&f.int(1), &f.int(0)).unwrap(), kp(f, [0, 1, 0, 0, 0, 0]));
        assert_eq!(generator_cubic(&f.int(0), &f.int(1)).unwrap(), kp(f, [0, 0, 0, 0, 0, 1]));
        assert_eq!(generator_cubic(&f.int(1), &f.int(1)).unwrap(), kp(f, [0, 1, 1, 1, 1, 1]));
        assert_eq!(generator_cubic(&f.int(0), &f.int(0)), Err(Error::ZeroParameters));
    }

    #[test]
    fn generator_images_form_cone_over_cubic() {
        let f = gf(5);
        let c = KleinSubspace::c(f);
        for (s0, s1) in cayley::generator_parameters(f).unwrap() {
            let y = generator_cubic(&s0, &s1).unwrap();
            for lam in f.elements().unwrap() {
                let z: Vector = y
                    .coords()
                    .iter()
                    .zip(w_inf(f))
                    .map(|(a, b)| a + &(&lam * &b))
                    .collect();
                assert!(c.contains(&z));
                assert!(klein_form(&z).is_zero());
            }
        }
    }

    #[test]
    fn subspace_dimensions_and_polarity() {
        for p in [2u64, 3, 5, 7] {
            let f = gf(p);
            let c = KleinSubspace::c(f);
            assert_eq!(c.dimension(), 3);
            assert!(c.perp(SubspaceName::Cperp).same_as(&KleinSubspace::c_perp(f)));
            let d = KleinSubspace::d(f);
            assert!(d.perp(SubspaceName::Dperp).same_as(&KleinSubspace::d_perp(f)));
            assert_eq!(KleinSubspace::b(f).dimension(), 3);
            assert_eq!(KleinSubspace::pencil_line(f).dimension(), 1);
            let cperp = KleinSubspace::c_perp(f);
            let inside = cperp.basis.iter().all(|b| c.contains(b));
            assert_eq!(inside, p == 2, "p={p}");
            let on_q = scan_pg5(f, |y| cperp.contains(y) && klein_form(y).is_zero()).unwrap();
            assert_eq!(on_q, vec![KleinPoint::from_slice(&w_inf(f)).unwrap()]);
        }
    }

    #[test]
    fn pencil_examples() {
        let f3 = gf(3);
        let pencil = pencil_lzomega(f3).unwrap();
        assert_eq!(pencil.len(), 4);
        assert!(pencil.contains(&cayley::directrix(f3)));
        let f = q();
        let l = Line::through(
            cayley::pinch_point(f),
            ProjPoint::from_ints(f, [0, 1, 0, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(kappa(&l), kp(f, [0, 0, 0, 0, 1, 0]));
        let pl = KleinSubspace::pencil_line(f3);
        for l in pencil.iter() {
            assert!(pl.contains(l.plucker().coords()));
        }
    }

    #[test]
    fn variety_equality_small() {
        for (p, n) in [(2u64, 7u64), (5, 31)] {
            let cert = verify_variety_equality(gf(p)).unwrap();
            assert!(cert.passed, "{cert:?}");
            assert_eq!((cert.variety_points, cert.image_points), (n, n));
        }
        assert_eq!(verify_variety_equality(gf(3)).unwrap_err(), Error::Char3Unsupported);
        assert_eq!(verify_variety_equality(q()).unwrap_err(), Error::InfiniteField);
    }

    #[test]
    fn projection_examples() {
        let f = q();
        let y = kappa_osculating(&f.int(0), &f.int(5));
        assert_eq!(project_through_cperp(&y).unwrap(), kp(f, [1, 0, 0, 0, 0, 0]));
        let y = kappa_osculating(&f.int(1), &f.int(1));
        assert_eq!(project_through_cperp(&y).unwrap(), kp(f, [1, 3, 0, 3, 1, 0]));
        let y = kappa_osculating(&f.int(1), &f.int(7));
        assert_eq!(project_through_cperp(&y).unwrap(), kp(f, [1, 3, 0, 3, 1, 0]));
        let y = KleinPoint::from_slice(&w(f)).unwrap();
        assert_eq!(project_through_cperp(&y), Err(Error::ProjectionDegenerate));
    }

    #[test]
    fn projection_is_closed_form_gf7() {
        let f = gf(7);
        for s in f.elements().unwrap() {
            for u2 in f.elements().unwrap() {
                let got = project_through_cperp(&kappa_osculating(&s, &u2)).unwrap();
                let three = f.int(3);
                let want = KleinPoint::new([
                    f.one(),
                    &three * &s,
                    f.zero(),
                    &three * &s.square(),
                    s.cube(),
                    f.zero(),
                ])
                .unwrap();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn char3_examples() {
        let f3 = gf(3);
        let cert = char3_congruence_check(f3).unwrap();
        assert!(cert.passed, "{cert:?}");
        assert_eq!(cert.congruence_size, 13);
        assert_eq!(cert.q_cap_d_points, 13);
        assert_eq!(cert.vertex, kp(f3, [0, 0, 0, 0, 1, 0]));
        assert!(cert.congruence_equals_o_union_pencil);
        let o = build_o(f3).unwrap();
        assert_eq!(cert.congruence.iter().filter(|l| o.contains(l)).count(), 10);
        assert!(matches!(
            char3_congruence_check(gf(5)),
            Err(Error::WrongCharacteristic { expected: 3, .. })
        ));
    }

    #[test]
    fn osculating_pencil_examples() {
        let f3 = gf(3);
        let cert = osculating_plane_pencil_check(f3).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.parameters_checked, 4);
        let v = twisted_cubic_basis(f3);
        let plane = osculating_plane(&f3.int(1), &f3.int(0)).unwrap();
        assert_eq!(plane, vec![v[0].clone(), v[1].clone(), linalg_scale(&v[2], &f3.int(2))]);
        let plane = osculating_plane(&f3.int(1), &f3.int(1)).unwrap();
        let d1: Vector = v[1].iter().zip(&v[2]).map(|(a, b)| a + &(&f3.int(2) * b)).collect();
        assert_eq!(plane[1], d1);
        assert_eq!(plane[2], linalg_scale(&v[2], &f3.int(2)));
        assert!(osculating_plane_pencil_check(gf(5)).is_err());
    }

    #[test]
    fn osculating_planes_share_no_axis_outside_char3() {
        let f = gf(5);
        let v = twisted_cubic_basis(f);
        let plane = osculating_plane(&f.int(1), &f.int(1)).unwrap();
        assert!(!(linalg::in_span(&plane, &v[1]) && linalg::in_span(&plane, &v[2])));
    }

    fn linalg_scale(v: &Vector, k: &FieldElement) -> Vector {
        v.iter().map(|x| x * k).collect()
    }

    #[test]
    fn klein_form_vanishes_on_all_lines() {
        for p in [2u64, 3] {
            for l in enumerate_lines(gf(p)).unwrap() {
                assert!(kappa(&l).on_klein_quadric());
            }
        }
    }

    #[test]
    fn membership_rejects_pencil_points() {
        let f = q();
        assert!(!in_kappa_o(&kp(f, [0, 0, 0, 0, 1, 0])));
        assert!(in_kappa_o(&kp(f, [0, 0, 0, 0, 0, 1])));
        assert!(!in_kappa_o(&kp(f, [1, 3, 0, 3, 2, 3])));
    }
}
